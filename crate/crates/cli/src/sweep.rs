//! Batch comparison of the determinant route against the rank oracle.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use jordan_tensor::decomp::{decompose, rank_profile_lambda_with_guard};
use jordan_tensor::verify::verify_all_with_guard;
use jordan_tensor::{build_generators, Error, FpElem, Params};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: u64,
    pub m: usize,
    pub n: usize,
    /// `None` when the oracle was skipped by the size guard.
    pub lambda_agrees: Option<bool>,
    pub verified: Option<bool>,
    pub detail: Option<String>,
    pub millis: f64,
}

impl SweepRow {
    pub fn is_failure(&self) -> bool {
        self.lambda_agrees == Some(false) || self.verified != Some(true)
    }

    pub fn status(&self) -> &'static str {
        match (self.lambda_agrees, self.verified) {
            (Some(false), _) => "MISMATCH",
            (_, Some(false)) => "FAILED",
            (_, None) => "ERROR",
            (None, Some(true)) => "GUARD",
            (Some(true), Some(true)) => "OK",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub primes: Vec<u64>,
    pub max_n: usize,
    pub guard: usize,
    /// Corrupt one coefficient of `y_1` in every row before verifying.
    pub inject_fault: bool,
}

fn run_row(cfg: &SweepConfig, p: u64, m: usize, n: usize) -> SweepRow {
    let start = Instant::now();
    let mut row = SweepRow { p, m, n, lambda_agrees: None, verified: None, detail: None, millis: 0.0 };
    let outcome = (|| -> Result<(), Error> {
        let params = Params::new(p, m, n)?;
        let dec = decompose(&params)?;
        match rank_profile_lambda_with_guard(&params, cfg.guard) {
            Ok(oracle) => row.lambda_agrees = Some(oracle == dec),
            Err(Error::SizeGuard { .. }) => row.detail = Some("oracle skipped by size guard".into()),
            Err(e) => return Err(e),
        }
        let mut gens = build_generators(&params)?;
        if cfg.inject_fault {
            if let Some(g) = gens.get_mut(1) {
                let f = params.field();
                let c = &mut g.vector.coeffs_mut()[0];
                *c = f.add(*c, FpElem::ONE);
            }
        }
        let report = verify_all_with_guard(&params, &dec, &gens, cfg.guard);
        row.verified = Some(report.total_ok);
        if !report.total_ok {
            let failed: Vec<String> = report.failures().map(|c| c.i.to_string()).collect();
            row.detail = Some(format!("failed generators: {}", failed.join(" ")));
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        row.detail = Some(e.to_string());
    }
    row.millis = start.elapsed().as_secs_f64() * 1e3;
    row
}

/// Rows sorted by `(p, m, n)`, independent of scheduling.
pub fn run_sweep(cfg: &SweepConfig) -> Vec<SweepRow> {
    let mut primes = cfg.primes.clone();
    primes.sort_unstable();
    primes.dedup();
    let cases: Vec<(u64, usize, usize)> = primes
        .iter()
        .flat_map(|&p| (1..=cfg.max_n).flat_map(move |m| (m..=cfg.max_n).map(move |n| (p, m, n))))
        .collect();
    cases.par_iter().map(|&(p, m, n)| run_row(cfg, p, m, n)).collect()
}
