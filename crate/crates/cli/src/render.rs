//! Plain-text rendering. Carries the same numbers as the JSON form.

use std::fmt::Write;

use crate::document::{GeneratorDoc, OutputDocument, VerificationDoc};
use crate::sweep::SweepRow;

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

pub fn generator_line(g: &GeneratorDoc) -> String {
    let body = if g.coeffs.is_empty() {
        "0".to_string()
    } else {
        g.coeffs
            .iter()
            .map(|c| format!("{}*v({},{})", c.value, c.row, c.col))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    format!(
        "y_{} = {body}    [lambda {}, socle x_{}, {}]",
        g.i, g.lambda, g.socle_index, g.case
    )
}

fn verification(out: &mut String, v: &VerificationDoc) {
    let status = if v.total_ok { "OK" } else { "FAILED" };
    let _ = writeln!(out, "verification: {status}");
    let _ = writeln!(out, "  socle permutation: {}", v.socle_permutation);
    match v.direct_sum_rank {
        Some(r) => {
            let _ = writeln!(out, "  direct sum rank: {r}");
        }
        None => {
            let _ = writeln!(out, "  full-space checks skipped (size guard)");
        }
    }
    if let Some(e) = &v.decomposition_error {
        let _ = writeln!(out, "  decomposition: {e}");
    }
    if !v.failed_generators.is_empty() {
        let _ = writeln!(out, "  failed generators: {}", join(&v.failed_generators, " "));
    }
}

pub fn document(doc: &OutputDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p = {}, m = {}, n = {}, min exponent {}", doc.p, doc.m, doc.n, doc.min_exponent);
    let _ = writeln!(out, "lambda: {}", join(&doc.lambda, " "));
    let _ = writeln!(out, "blocks:");
    for b in &doc.blocks {
        let _ = writeln!(out, "  [{}, {}] lambda {}", b.a + 1, b.b, b.lambda);
    }
    if !doc.generators.is_empty() {
        let _ = writeln!(out, "generators:");
        for g in &doc.generators {
            let _ = writeln!(out, "  {}", generator_line(g));
        }
    }
    if let Some(v) = &doc.verification {
        verification(&mut out, v);
    }
    let _ = writeln!(out, "version {}", doc.version);
    out
}

pub fn sweep(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>5} {:>3} {:>3}  {:<8} {:>9}  detail", "p", "m", "n", "status", "ms");
    for r in rows {
        let _ = writeln!(
            out,
            "{:>5} {:>3} {:>3}  {:<8} {:>9.3}  {}",
            r.p,
            r.m,
            r.n,
            r.status(),
            r.millis,
            r.detail.as_deref().unwrap_or("")
        );
    }
    let bad = rows.iter().filter(|r| r.is_failure()).count();
    let _ = writeln!(out, "{} rows, {bad} failing", rows.len());
    out
}
