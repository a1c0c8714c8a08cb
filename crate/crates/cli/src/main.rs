//! `bilattice` — exact computations with classical orthogonal polynomials
//! on the bi-lattice `x(s) = s + γ(1 + (-1)^s)`.
//!
//! Every number printed by this tool is an exact rational/surd string,
//! never a float. Exit codes: 0 = success/verified, 1 = usage or parse
//! error, 2 = mathematical failure (non-regular input, failed identity,
//! failed self test).

mod config;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use config::{Cli, JobConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    let job = match cli.into_job() {
        Ok(job) => job,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    match run(&job) {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(RunError::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

pub enum RunError {
    /// Malformed input: exit 1.
    Usage(String),
    /// A well-posed computation that fails mathematically: exit 2.
    Math(String),
}

fn run(job: &JobConfig) -> Result<(), RunError> {
    use config::Command::*;
    match &job.command {
        Regularity => commands::regularity(job),
        Recurrence => commands::recurrence(job),
        Moments => commands::moments(job),
        Rodrigues => commands::rodrigues(job),
        Classify => commands::classify(job),
        Family(f) => commands::family(job, f),
        VerifyIdentity(check) => commands::verify_identity(job, check),
        Selftest => commands::selftest(job),
    }
}

mod commands {
    use bilattice_core::classifier::ClassificationRepr;
    use bilattice_core::functional::MomentRepr;
    use bilattice_core::selftest;
    use bilattice_core::sigma::SigmaScalar;
    use bilattice_core::{
        classify as classify_pair, verify_identity as check_identity, FamilyDescriptor,
        IdentityCheck,
    };

    use super::config::{Format, JobConfig};
    use super::output;
    use super::RunError;

    pub fn regularity(job: &JobConfig) -> Result<(), RunError> {
        let pair = job.pearson_pair()?;
        let verdict = pair.regular(job.order);
        match job.format {
            Format::Json => println!(
                "{}",
                serde_json::json!({
                    "verdict": verdict,
                    "regular": verdict.is_regular(),
                    "checked_to": job.order,
                })
            ),
            _ => println!("{verdict}"),
        }
        if verdict.is_regular() {
            Ok(())
        } else {
            Err(RunError::Math(verdict.to_string()))
        }
    }

    pub fn recurrence(job: &JobConfig) -> Result<(), RunError> {
        let pair = job.pearson_pair()?;
        let table = pair
            .recurrence_coeffs(job.order)
            .map_err(|e| RunError::Math(e.to_string()))?;
        output::recurrence_table(&table, job.format);
        Ok(())
    }

    pub fn moments(job: &JobConfig) -> Result<(), RunError> {
        let pair = job.pearson_pair()?;
        let m0 = SigmaScalar::from_plain(job.m0.clone());
        let u = pair
            .pearson_moments(m0, job.order)
            .map_err(|e| RunError::Math(e.to_string()))?;
        match job.format {
            Format::Json => {
                println!("{}", serde_json::to_string(&MomentRepr::from(&u)).unwrap())
            }
            Format::Csv => {
                println!("k,plain,sigma");
                for (k, m) in u.moments().iter().enumerate() {
                    println!("{k},{},{}", m.plain, m.sigma);
                }
            }
            Format::Pretty => {
                for (k, m) in u.moments().iter().enumerate() {
                    println!("m_{k} = {}  [sigma residue: {}]", m.plain, m.sigma);
                }
            }
        }
        Ok(())
    }

    pub fn rodrigues(job: &JobConfig) -> Result<(), RunError> {
        let pair = job.pearson_pair()?;
        let data = pair
            .rodrigues(job.order)
            .map_err(|e| RunError::Math(e.to_string()))?;
        // the defining check P_n = k_n R_n against the recurrence route
        let polys = pair
            .recurrence_coeffs(job.order)
            .map_err(|e| RunError::Math(e.to_string()))?
            .polynomials();
        let verified = (0..=job.order).all(|n| data.r[n].scale(&data.k[n]) == polys[n]);
        output::rodrigues_data(&data, verified, job.format);
        if verified {
            Ok(())
        } else {
            Err(RunError::Math("P_n != k_n R_n".into()))
        }
    }

    pub fn classify(job: &JobConfig) -> Result<(), RunError> {
        let pair = job.pearson_pair()?;
        let classification = classify_pair(&pair).map_err(|e| RunError::Math(e.to_string()))?;
        match job.format {
            Format::Json => println!(
                "{}",
                serde_json::to_string(&ClassificationRepr::from(&classification)).unwrap()
            ),
            _ => output::classification_pretty(&classification),
        }
        Ok(())
    }

    pub fn family(job: &JobConfig, desc: &FamilyDescriptor) -> Result<(), RunError> {
        let order = match desc.cutoff() {
            Some(cutoff) => job.order.min(cutoff),
            None => job.order,
        };
        let table = desc
            .recurrence(order, None)
            .map_err(|e| RunError::Math(e.to_string()))?;
        output::recurrence_table(&table, job.format);
        Ok(())
    }

    pub fn verify_identity(job: &JobConfig, check: &IdentityCheck) -> Result<(), RunError> {
        let report = check_identity(check, job.order).map_err(|e| RunError::Math(e.to_string()))?;
        output::identity_report(&report, job.format);
        if report.passed() {
            Ok(())
        } else {
            Err(RunError::Math(format!(
                "{} fails at n ∈ {:?}",
                report.identity,
                report.failures()
            )))
        }
    }

    pub fn selftest(job: &JobConfig) -> Result<(), RunError> {
        let outcomes = selftest::run_all(job.seed);
        let mut all_ok = true;
        for o in &outcomes {
            match job.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "id": o.id,
                        "label": o.label,
                        "passed": o.passed,
                        "details": o.details,
                    })
                ),
                _ => println!(
                    "{} {:4} {} — {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.id,
                    o.label,
                    o.details
                ),
            }
            all_ok &= o.passed;
        }
        if all_ok {
            Ok(())
        } else {
            Err(RunError::Math("self test failed".into()))
        }
    }
}
