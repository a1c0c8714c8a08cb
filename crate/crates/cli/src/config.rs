//! Argument parsing and the job configuration.
//!
//! A job can come from command-line flags or from a JSON config file
//! (`--config job.json`) holding the same fields.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use bilattice_core::scalar::ExactScalar;
use bilattice_core::sigma::LatticeContext;
use bilattice_core::{FamilyDescriptor, IdentityCheck, PearsonPair, Poly};

use crate::RunError;

#[derive(Parser)]
#[command(
    name = "bilattice",
    about = "Exact classical orthogonal polynomials on the bi-lattice x(s) = s + γ(1+(-1)^s)",
    version
)]
pub struct Cli {
    /// Read the whole job from a JSON config file instead of flags.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Option<CliCommand>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Pretty,
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct PearsonArgs {
    /// φ as polynomial text, degree ≤ 2 (e.g. "z^2 - 1" or "(1+i)*z + 1/2")
    #[arg(long)]
    phi: String,
    /// ψ as polynomial text, degree ≤ 1
    #[arg(long)]
    psi: String,
    /// lattice parameter γ as an exact scalar (e.g. "1/3" or "1/2i")
    #[arg(long, default_value = "0")]
    gamma: String,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// table/check horizon N
    #[arg(short = 'N', long = "order", default_value_t = 8)]
    order: usize,
    /// output format
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(Subcommand, Clone)]
enum CliCommand {
    /// Regularity verdict for a Pearson pair
    Regularity {
        #[command(flatten)]
        pearson: PearsonArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Closed-form recurrence table B_n, C_n, h_n
    Recurrence {
        #[command(flatten)]
        pearson: PearsonArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Pearson moment table with σ-residue column
    Moments {
        #[command(flatten)]
        pearson: PearsonArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// normalization m_0
        #[arg(long, default_value = "1")]
        m0: String,
    },
    /// Rodrigues data a_n, s_n, t_n, k_n, R_n and the P_n = k_n R_n check
    Rodrigues {
        #[command(flatten)]
        pearson: PearsonArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Classify a Pearson pair into the H/Q families
    Classify {
        #[command(flatten)]
        pearson: PearsonArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Recurrence table of a named family
    Family {
        /// one of: h, q, meixner, charlier, krawtchouk, hahn, para-krawtchouk
        kind: String,
        /// family parameters as name=value (repeatable), e.g. -p a=1/2
        #[arg(short = 'p', long = "param")]
        params: Vec<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Verify one of the catalog identities exactly
    #[command(name = "verify-identity")]
    VerifyIdentity {
        /// one of: meixner, charlier, krawtchouk, hahn, para-krawtchouk
        name: String,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        /// family size N (finite families)
        #[arg(long = "N")]
        n: Option<u64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the aggregated property suite
    Selftest {
        /// seed for the randomized checks (BILATTICE_SEED overrides)
        #[arg(long, default_value_t = 0x0B5E55ED)]
        seed: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
}

/// A fully resolved job, independent of where it was parsed from.
pub struct JobConfig {
    pub command: Command,
    pub phi: Option<Poly>,
    pub psi: Option<Poly>,
    pub gamma: ExactScalar,
    pub order: usize,
    pub m0: ExactScalar,
    pub format: Format,
    pub seed: u64,
}

pub enum Command {
    Regularity,
    Recurrence,
    Moments,
    Rodrigues,
    Classify,
    Family(FamilyDescriptor),
    VerifyIdentity(IdentityCheck),
    Selftest,
}

impl JobConfig {
    pub fn pearson_pair(&self) -> Result<PearsonPair, RunError> {
        let phi = self
            .phi
            .clone()
            .ok_or_else(|| RunError::Usage("missing --phi".into()))?;
        let psi = self
            .psi
            .clone()
            .ok_or_else(|| RunError::Usage("missing --psi".into()))?;
        if phi.degree().map_or(false, |d| d > 2) {
            return Err(RunError::Usage("phi must have degree at most 2".into()));
        }
        if psi.degree().map_or(false, |d| d > 1) {
            return Err(RunError::Usage("psi must have degree at most 1".into()));
        }
        if phi.is_zero() && psi.is_zero() {
            return Err(RunError::Usage("phi and psi must not both be zero".into()));
        }
        Ok(PearsonPair::new(
            phi,
            psi,
            LatticeContext::new(self.gamma.clone()),
        ))
    }
}

fn parse_scalar(what: &str, text: &str) -> Result<ExactScalar, String> {
    text.parse()
        .map_err(|e| format!("invalid {what} \"{text}\": {e}"))
}

fn parse_poly(what: &str, text: &str) -> Result<Poly, String> {
    text.parse()
        .map_err(|e| format!("invalid {what} \"{text}\": {e}"))
}

type ParamMap = std::collections::BTreeMap<String, String>;

fn take_scalar(map: &mut ParamMap, name: &str) -> Result<ExactScalar, String> {
    let v = map
        .remove(name)
        .ok_or_else(|| format!("missing parameter {name}"))?;
    parse_scalar(name, &v)
}

fn take_int(map: &mut ParamMap, name: &str) -> Result<u64, String> {
    let v = map
        .remove(name)
        .ok_or_else(|| format!("missing parameter {name}"))?;
    v.parse().map_err(|_| format!("invalid integer {name}"))
}

fn family_descriptor(kind: &str, params: &[String]) -> Result<FamilyDescriptor, String> {
    let mut map = ParamMap::new();
    for p in params {
        let Some((name, value)) = p.split_once('=') else {
            return Err(format!("parameter \"{p}\" is not name=value"));
        };
        map.insert(name.trim().to_string(), value.trim().to_string());
    }
    let m = &mut map;
    let desc = match kind.to_ascii_lowercase().as_str() {
        "h" => FamilyDescriptor::H {
            a: take_scalar(m, "a")?,
            b: take_scalar(m, "b")?,
        },
        "q" => FamilyDescriptor::Q {
            a: take_scalar(m, "a")?,
            b: take_scalar(m, "b")?,
            c: take_scalar(m, "c")?,
        },
        "meixner" => FamilyDescriptor::Meixner {
            beta: take_scalar(m, "beta")?,
            c: take_scalar(m, "c")?,
        },
        "charlier" => FamilyDescriptor::Charlier {
            a: take_scalar(m, "a")?,
        },
        "krawtchouk" => FamilyDescriptor::Krawtchouk {
            p: take_scalar(m, "p")?,
            n: take_int(m, "N")?,
        },
        "hahn" => FamilyDescriptor::Hahn {
            alpha: take_scalar(m, "alpha")?,
            beta: take_scalar(m, "beta")?,
            n: take_int(m, "N")?,
        },
        "para-krawtchouk" | "parakrawtchouk" => FamilyDescriptor::ParaKrawtchouk {
            mu: take_scalar(m, "mu")?,
            n: take_int(m, "N")?,
        },
        other => return Err(format!("unknown family \"{other}\"")),
    };
    if let Some(extra) = map.keys().next() {
        return Err(format!("unexpected parameter {extra}"));
    }
    Ok(desc)
}

struct IdentityParams<'a> {
    beta: Option<&'a str>,
    c: Option<&'a str>,
    a: Option<&'a str>,
    p: Option<&'a str>,
    alpha: Option<&'a str>,
    mu: Option<&'a str>,
    n: Option<u64>,
}

fn identity_check(name: &str, params: IdentityParams<'_>) -> Result<IdentityCheck, String> {
    let need = |what: &str, v: Option<&str>| -> Result<ExactScalar, String> {
        let v = v.ok_or_else(|| format!("identity {name} needs --{what}"))?;
        parse_scalar(what, v)
    };
    let need_n = || params.n.ok_or_else(|| format!("identity {name} needs --N"));
    match name.to_ascii_lowercase().as_str() {
        "meixner" => Ok(IdentityCheck::MeixnerH {
            beta: need("beta", params.beta)?,
            c: need("c", params.c)?,
        }),
        "charlier" => Ok(IdentityCheck::CharlierH {
            a: need("a", params.a)?,
        }),
        "krawtchouk" => Ok(IdentityCheck::KrawtchoukH {
            p: need("p", params.p)?,
            n: need_n()?,
        }),
        "hahn" => Ok(IdentityCheck::HahnQ {
            alpha: need("alpha", params.alpha)?,
            beta: need("beta", params.beta)?,
            n: need_n()?,
        }),
        "para-krawtchouk" | "parakrawtchouk" => Ok(IdentityCheck::ParaKrawtchoukQ {
            mu: need("mu", params.mu)?,
            n: need_n()?,
        }),
        other => Err(format!("unknown identity \"{other}\"")),
    }
}

/// JSON mirror of the job for `--config`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    command: String,
    #[serde(default)]
    phi: Option<String>,
    #[serde(default)]
    psi: Option<String>,
    #[serde(default)]
    gamma: Option<String>,
    #[serde(default)]
    order: Option<usize>,
    #[serde(default)]
    m0: Option<String>,
    #[serde(default)]
    format: Option<Format>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    family: Option<String>,
    #[serde(default)]
    params: Option<Vec<String>>,
    #[serde(default)]
    identity: Option<String>,
}

impl Cli {
    pub fn into_job(self) -> Result<JobConfig, String> {
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let file: FileConfig =
                serde_json::from_str(&text).map_err(|e| format!("bad config: {e}"))?;
            return file.into_job();
        }
        let Some(command) = self.command else {
            return Err("missing subcommand (try --help)".into());
        };
        let mut job = JobConfig {
            command: Command::Selftest,
            phi: None,
            psi: None,
            gamma: ExactScalar::zero(),
            order: 8,
            m0: ExactScalar::one(),
            format: Format::Pretty,
            seed: 0x0B5E55ED,
        };
        let fill_pearson = |job: &mut JobConfig, p: &PearsonArgs| -> Result<(), String> {
            job.phi = Some(parse_poly("phi", &p.phi)?);
            job.psi = Some(parse_poly("psi", &p.psi)?);
            job.gamma = parse_scalar("gamma", &p.gamma)?;
            Ok(())
        };
        match command {
            CliCommand::Regularity { pearson, common } => {
                fill_pearson(&mut job, &pearson)?;
                job.command = Command::Regularity;
                job.order = common.order;
                job.format = common.format;
            }
            CliCommand::Recurrence { pearson, common } => {
                fill_pearson(&mut job, &pearson)?;
                job.command = Command::Recurrence;
                job.order = common.order;
                job.format = common.format;
            }
            CliCommand::Moments {
                pearson,
                common,
                m0,
            } => {
                fill_pearson(&mut job, &pearson)?;
                job.command = Command::Moments;
                job.order = common.order;
                job.format = common.format;
                job.m0 = parse_scalar("m0", &m0)?;
            }
            CliCommand::Rodrigues { pearson, common } => {
                fill_pearson(&mut job, &pearson)?;
                job.command = Command::Rodrigues;
                job.order = common.order;
                job.format = common.format;
            }
            CliCommand::Classify { pearson, common } => {
                fill_pearson(&mut job, &pearson)?;
                job.command = Command::Classify;
                job.order = common.order;
                job.format = common.format;
            }
            CliCommand::Family {
                kind,
                params,
                common,
            } => {
                job.command = Command::Family(family_descriptor(&kind, &params)?);
                job.order = common.order;
                job.format = common.format;
            }
            CliCommand::VerifyIdentity {
                name,
                beta,
                c,
                a,
                p,
                alpha,
                mu,
                n,
                common,
            } => {
                let check = identity_check(
                    &name,
                    IdentityParams {
                        beta: beta.as_deref(),
                        c: c.as_deref(),
                        a: a.as_deref(),
                        p: p.as_deref(),
                        alpha: alpha.as_deref(),
                        mu: mu.as_deref(),
                        n,
                    },
                )?;
                job.command = Command::VerifyIdentity(check);
                job.order = if common.order == 8 { 10 } else { common.order };
                job.format = common.format;
            }
            CliCommand::Selftest { seed, common } => {
                job.command = Command::Selftest;
                job.format = common.format;
                job.seed = seed;
            }
        }
        if let Ok(seed) = std::env::var("BILATTICE_SEED") {
            job.seed = seed
                .parse()
                .map_err(|_| "BILATTICE_SEED must be an integer".to_string())?;
        }
        Ok(job)
    }
}

impl FileConfig {
    fn into_job(self) -> Result<JobConfig, String> {
        let mut job = JobConfig {
            command: Command::Selftest,
            phi: match &self.phi {
                Some(t) => Some(parse_poly("phi", t)?),
                None => None,
            },
            psi: match &self.psi {
                Some(t) => Some(parse_poly("psi", t)?),
                None => None,
            },
            gamma: match &self.gamma {
                Some(t) => parse_scalar("gamma", t)?,
                None => ExactScalar::zero(),
            },
            order: self.order.unwrap_or(8),
            m0: match &self.m0 {
                Some(t) => parse_scalar("m0", t)?,
                None => ExactScalar::one(),
            },
            format: self.format.unwrap_or_default(),
            seed: self.seed.unwrap_or(0x0B5E55ED),
        };
        job.command = match self.command.as_str() {
            "regularity" => Command::Regularity,
            "recurrence" => Command::Recurrence,
            "moments" => Command::Moments,
            "rodrigues" => Command::Rodrigues,
            "classify" => Command::Classify,
            "family" => {
                let kind = self.family.ok_or("family command needs \"family\"")?;
                Command::Family(family_descriptor(&kind, &self.params.unwrap_or_default())?)
            }
            "verify-identity" => {
                let name = self.identity.ok_or("verify-identity needs \"identity\"")?;
                let params = self.params.unwrap_or_default();
                let mut map = std::collections::BTreeMap::new();
                for p in &params {
                    let Some((k, v)) = p.split_once('=') else {
                        return Err(format!("parameter \"{p}\" is not name=value"));
                    };
                    map.insert(k.trim().to_string(), v.trim().to_string());
                }
                let check = identity_check(
                    &name,
                    IdentityParams {
                        beta: map.get("beta").map(|s| s.as_str()),
                        c: map.get("c").map(|s| s.as_str()),
                        a: map.get("a").map(|s| s.as_str()),
                        p: map.get("p").map(|s| s.as_str()),
                        alpha: map.get("alpha").map(|s| s.as_str()),
                        mu: map.get("mu").map(|s| s.as_str()),
                        n: match map.get("N") {
                            Some(v) => {
                                Some(v.parse().map_err(|_| "invalid integer N".to_string())?)
                            }
                            None => None,
                        },
                    },
                )?;
                Command::VerifyIdentity(check)
            }
            "selftest" => Command::Selftest,
            other => return Err(format!("unknown command \"{other}\"")),
        };
        if let Ok(seed) = std::env::var("BILATTICE_SEED") {
            job.seed = seed
                .parse()
                .map_err(|_| "BILATTICE_SEED must be an integer".to_string())?;
        }
        Ok(job)
    }
}
