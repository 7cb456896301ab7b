//! The serialized form of a decomposition and its generators.

use serde::{Deserialize, Serialize};

use jordan_tensor::{
    Decomposition, DiagVector, Error, GenCase, Generator, GeneratorSet, Params, VerifyReport,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDoc {
    pub a: usize,
    pub b: usize,
    pub lambda: usize,
}

/// One coefficient of `v_{row, col}`; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffDoc {
    pub row: usize,
    pub col: usize,
    pub value: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub i: usize,
    pub lambda: usize,
    pub socle_index: usize,
    pub case: String,
    pub coeffs: Vec<CoeffDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationDoc {
    pub total_ok: bool,
    pub socle_permutation: bool,
    pub direct_sum_rank: Option<usize>,
    pub full_checks_skipped: bool,
    pub decomposition_error: Option<String>,
    pub failed_generators: Vec<usize>,
}

impl From<&VerifyReport> for VerificationDoc {
    fn from(r: &VerifyReport) -> Self {
        VerificationDoc {
            total_ok: r.total_ok,
            socle_permutation: r.socle_permutation,
            direct_sum_rank: r.direct_sum_rank,
            full_checks_skipped: r.full_checks_skipped,
            decomposition_error: r.decomposition_error.clone(),
            failed_generators: r.failures().map(|c| c.i).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub p: u64,
    pub m: usize,
    pub n: usize,
    /// Smallest `a` with `n <= p^a`.
    pub min_exponent: u32,
    pub lambda: Vec<usize>,
    pub blocks: Vec<BlockDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorDoc>,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationDoc>,
    pub version: String,
}

impl OutputDocument {
    pub fn new(params: &Params, dec: &Decomposition) -> Self {
        OutputDocument {
            p: params.p().into(),
            m: params.m(),
            n: params.n(),
            min_exponent: params.min_group_exponent(),
            lambda: dec.lambda().to_vec(),
            blocks: dec
                .blocks()
                .iter()
                .map(|b| BlockDoc { a: b.a, b: b.b, lambda: b.lambda })
                .collect(),
            generators: Vec::new(),
            verified: false,
            verification: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn with_generators(mut self, params: &Params, gens: &GeneratorSet) -> Self {
        self.generators = gens
            .iter()
            .map(|g| GeneratorDoc {
                i: g.i,
                lambda: g.lambda,
                socle_index: g.socle_index,
                case: g.case.to_string(),
                coeffs: g
                    .vector
                    .terms(params)
                    .into_iter()
                    .map(|((row, col), c)| CoeffDoc { row, col, value: c.value() })
                    .collect(),
            })
            .collect();
        self
    }

    pub fn with_report(mut self, report: &VerifyReport) -> Self {
        self.verified = report.total_ok;
        self.verification = Some(report.into());
        self
    }

    pub fn params(&self) -> Result<Params, Error> {
        Params::new(self.p, self.m, self.n)
    }

    /// The stored `λ`, taken as is so that a tampered document can be audited.
    pub fn decomposition(&self) -> Decomposition {
        Decomposition::from_lambda_unchecked(self.lambda.clone())
    }

    /// Rebuilds the generators; fails on coefficients that cannot belong to
    /// the stated diagonal or field.
    pub fn generator_set(&self, params: &Params) -> Result<GeneratorSet, String> {
        let f = params.field();
        let top = params.m() + params.n();
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let case = GenCase::parse(&g.case).ok_or_else(|| format!("y_{}: unknown case {:?}", g.i, g.case))?;
            if g.i == 0 || g.i >= top {
                return Err(format!("generator index {} out of range", g.i));
            }
            let mut terms = Vec::with_capacity(g.coeffs.len());
            for c in &g.coeffs {
                let value = f
                    .checked_elem(c.value.into())
                    .ok_or_else(|| format!("y_{}: coefficient {} is not reduced mod {}", g.i, c.value, params.p()))?;
                terms.push(((c.row, c.col), value));
            }
            let vector = DiagVector::from_terms(params, top - g.i, terms).map_err(|e| format!("y_{}: {e}", g.i))?;
            gens.push(Generator {
                i: g.i,
                vector,
                lambda: g.lambda,
                socle_index: g.socle_index,
                case,
            });
        }
        Ok(GeneratorSet::new(gens))
    }
}
