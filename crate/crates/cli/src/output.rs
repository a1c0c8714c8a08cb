//! Rendering of reports in the three output formats.

use bilattice_core::classical::RodriguesData;
use bilattice_core::classifier::{Classification, ClassifiedFamily};
use bilattice_core::families::IdentityReport;
use bilattice_core::RecurrenceTable;

use crate::config::Format;

pub fn recurrence_table(table: &RecurrenceTable, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(table).unwrap()),
        Format::Csv => {
            println!("n,B,C,h");
            for n in 0..=table.order() {
                let c = if n >= 1 {
                    table.c(n).to_string()
                } else {
                    String::new()
                };
                println!("{n},{},{c},{}", table.b(n), table.h(n));
            }
        }
        Format::Pretty => {
            for n in 0..=table.order() {
                let c = if n >= 1 {
                    format!("  C_{n} = {}", table.c(n))
                } else {
                    String::new()
                };
                println!("B_{n} = {}{c}  h_{n} = {}", table.b(n), table.h(n));
            }
        }
    }
}

pub fn rodrigues_data(data: &RodriguesData, verified: bool, format: Format) {
    match format {
        Format::Json => {
            let mut value = serde_json::to_value(data).unwrap();
            value["checked"] = serde_json::json!(verified);
            println!("{value}");
        }
        Format::Csv => {
            println!("n,a,s,t,k,R");
            for n in 0..data.a.len() {
                let t = if n >= 1 {
                    data.t[n - 1].to_string()
                } else {
                    String::new()
                };
                println!(
                    "{n},{},{},{t},{},\"{}\"",
                    data.a[n], data.s[n], data.k[n], data.r[n]
                );
            }
        }
        Format::Pretty => {
            for n in 0..data.a.len() {
                let t = if n >= 1 {
                    format!("  t_{n} = {}", data.t[n - 1])
                } else {
                    String::new()
                };
                println!("a_{n} = {}  s_{n} = {}{t}", data.a[n], data.s[n]);
            }
            for n in 0..data.r.len() {
                println!("k_{n} = {}  R_{n} = {}", data.k[n], data.r[n]);
            }
            println!(
                "P_n = k_n R_n check: {}",
                if verified { "verified" } else { "FAILED" }
            );
        }
    }
}

pub fn classification_pretty(c: &Classification) {
    let case = match c.case {
        bilattice_core::classifier::CaseKind::DegPhi0 => "deg φ = 0",
        bilattice_core::classifier::CaseKind::DegPhi1 => "deg φ = 1",
        bilattice_core::classifier::CaseKind::DegPhi2 => "deg φ = 2",
    };
    println!("case: {case}");
    match &c.family {
        ClassifiedFamily::H { a, b } => println!("family: H(a = {a}, b = {b})"),
        ClassifiedFamily::Q { a, b, c: cc } => {
            println!("family: Q(a = {a}, b = {b}, c = {cc})")
        }
        ClassifiedFamily::QSymmetric {
            a,
            r1r2,
            r1sq_plus_r2sq,
        } => {
            println!("family: Q(a = {a}) with symbolic roots:");
            println!("  r1·r2 = {r1r2}");
            println!("  r1² + r2² = {r1sq_plus_r2sq}");
        }
    }
    println!("map: {}", c.map);
    println!("normalization: divided by d = {}", c.normalization);
    if let Some((r1, r2)) = &c.roots {
        println!("roots: r1 = {r1}, r2 = {r2}");
    }
    if let Some(q) = &c.quartic {
        let poly = bilattice_core::Poly::from_coeffs(q.to_vec());
        println!("phi4(n) = {}", poly.to_string().replace('z', "n"));
    }
}

pub fn identity_report(report: &IdentityReport, format: Format) {
    match format {
        Format::Json => {
            let failures = report.failures();
            println!(
                "{}",
                serde_json::json!({
                    "identity": report.identity,
                    "params": report
                        .params
                        .iter()
                        .map(|(k, v)| (k.to_string(), v.to_string()))
                        .collect::<std::collections::BTreeMap<_, _>>(),
                    "checked_to": report.checked_to,
                    "failures": failures,
                    "branches": report.branches,
                })
            );
        }
        _ => {
            let params = report
                .params
                .iter()
                .map(|(k, v)| format!("{k} = {v}"))
                .collect::<Vec<_>>()
                .join(", ");
            println!("identity: {} ({params})", report.identity);
            for branch in &report.branches {
                if branch.failures.is_empty() {
                    println!("  root sign {}: all n ≤ {} pass", branch.sign, report.checked_to);
                } else {
                    println!(
                        "  root sign {}: fails at n ∈ {:?}",
                        branch.sign, branch.failures
                    );
                }
            }
            println!(
                "verdict: {}",
                if report.passed() { "verified" } else { "FAILED" }
            );
        }
    }
}
