//! Brute-force certification of a decomposition and its generators.
//!
//! Cheap checks run in diagonal coordinates: for each `i`,
//! `(g - 1)^{λ_i - 1} y_i = x_{m+n+1-i-λ_i}` and `(g - 1)^{λ_i} y_i = 0`.
//! When `mn` is within the size guard, the generators are also expanded into
//! the standard basis `u_i ⊗ w_j`, where `g` acts as `J_m ⊗ J_n`, and the
//! cyclic submodules and their sum are measured by rank computations.

use std::collections::BTreeSet;

use crate::decomp::Decomposition;
use crate::exactnum::binom_mod_p;
use crate::gens::GeneratorSet;
use crate::gfp::{FpElem, FpMatrix};
use crate::tensorspace::{DiagVector, Params};

/// Largest `mn` for which dense full-space checks run by default.
pub const DEFAULT_SIZE_GUARD: usize = 4096;

/// Coordinates over `u_i ⊗ w_j`, row-major in `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullVector {
    n: usize,
    coords: Vec<FpElem>,
}

impl FullVector {
    pub fn zero(params: &Params) -> Self {
        FullVector {
            n: params.n(),
            coords: vec![FpElem::ZERO; params.dim()],
        }
    }

    pub fn coords(&self) -> &[FpElem] {
        &self.coords
    }

    /// Coefficient of `u_i ⊗ w_j`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> FpElem {
        self.coords[(i - 1) * self.n + (j - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// `v_{i,j} = u_i ⊗ g^{n-i} w_j = Σ_t C(n-i, t) u_i ⊗ w_{j-t}`.
pub fn expand_to_standard(params: &Params, v: &DiagVector) -> FullVector {
    let f = params.field();
    let n = params.n();
    let mut out = FullVector::zero(params);
    for ((i, j), c) in v.terms(params) {
        let e = (n - i) as u64;
        for t in 0..j {
            let coef = binom_mod_p(e, t as i64, f);
            if coef.is_zero() {
                continue;
            }
            let slot = &mut out.coords[(i - 1) * n + (j - 1 - t)];
            *slot = f.mul_add(*slot, c, coef);
        }
    }
    out
}

/// `(g - 1)` on the standard basis:
/// `u_i ⊗ w_j ↦ u_{i-1} ⊗ w_{j-1} + u_{i-1} ⊗ w_j + u_i ⊗ w_{j-1}`.
pub fn apply_full_nilpotent(params: &Params, v: &FullVector) -> FullVector {
    let f = params.field();
    let (m, n) = (params.m(), params.n());
    let mut out = FullVector::zero(params);
    for i in 1..=m {
        for j in 1..=n {
            let c = v.get(i, j);
            if c.is_zero() {
                continue;
            }
            let mut bump = |ii: usize, jj: usize| {
                let slot = &mut out.coords[(ii - 1) * n + (jj - 1)];
                *slot = f.add(*slot, c);
            };
            if i > 1 && j > 1 {
                bump(i - 1, j - 1);
            }
            if i > 1 {
                bump(i - 1, j);
            }
            if j > 1 {
                bump(i, j - 1);
            }
        }
    }
    out
}

/// `J_m ⊗ J_n - I` as an `mn x mn` matrix.
pub fn nilpotent_full_matrix(params: &Params) -> FpMatrix {
    let f = params.field();
    let n = params.n();
    let jordan = |r: usize, c: usize| r == c || r + 1 == c;
    FpMatrix::from_fn(f, params.dim(), params.dim(), |r, c| {
        let (i1, j1, i2, j2) = (r / n, r % n, c / n, c % n);
        let g = jordan(i1, i2) && jordan(j1, j2);
        match (g, r == c) {
            (true, false) => FpElem::ONE,
            _ => FpElem::ZERO,
        }
    })
}

/// Columns are the expansions of `v_{i,j}`, ordered like the standard basis.
pub fn basis_change_matrix(params: &Params) -> FpMatrix {
    let columns: Vec<Vec<FpElem>> = (1..=params.m())
        .flat_map(|i| (1..=params.n()).map(move |j| (i, j)))
        .map(|(i, j)| {
            let v = DiagVector::basis_vector(params, i, j).expect("within the grid");
            expand_to_standard(params, &v).coords
        })
        .collect();
    FpMatrix::from_columns(params.field(), params.dim(), &columns).expect("square")
}

/// `y, N y, N^2 y, ...` up to the first zero.
pub fn krylov_vectors(params: &Params, y: &FullVector) -> Vec<FullVector> {
    let mut out = Vec::new();
    let mut cur = y.clone();
    while !cur.is_zero() && out.len() <= params.dim() {
        let next = apply_full_nilpotent(params, &cur);
        out.push(cur);
        cur = next;
    }
    out
}

fn rank_of(params: &Params, vectors: &[FullVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols: Vec<Vec<FpElem>> = vectors.iter().map(|v| v.coords.clone()).collect();
    FpMatrix::from_columns(params.field(), params.dim(), &cols)
        .expect("uniform length")
        .rank()
}

/// `dim F G y`: the rank of the Krylov matrix of `g - 1` on `y`.
pub fn cyclic_dim(params: &Params, y: &FullVector) -> usize {
    rank_of(params, &krylov_vectors(params, y))
}

/// Per-generator outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCheck {
    pub i: usize,
    /// A generator for `i` exists, lies in `D_{m+n-i}`, and its recorded
    /// `λ` and socle index agree with the decomposition.
    pub well_formed: bool,
    /// `(g - 1)^{λ_i - 1} y_i = x_{m+n+1-i-λ_i}`.
    pub socle_check: bool,
    /// `(g - 1)^{λ_i} y_i = 0`.
    pub nilpotency_check: bool,
    /// `None` when the full-space checks were skipped.
    pub cyclic_dim: Option<usize>,
    pub expected_lambda: Option<usize>,
}

impl GeneratorCheck {
    pub fn ok(&self) -> bool {
        self.well_formed
            && self.socle_check
            && self.nilpotency_check
            && match (self.cyclic_dim, self.expected_lambda) {
                (Some(d), Some(l)) => d == l,
                (None, Some(_)) => true,
                _ => false,
            }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<GeneratorCheck>,
    /// Why the decomposition itself is invalid, if it is.
    pub decomposition_error: Option<String>,
    /// The socle indices form a permutation of `[m]`.
    pub socle_permutation: bool,
    /// Rank of the union of all Krylov bases; `None` when skipped.
    pub direct_sum_rank: Option<usize>,
    pub full_checks_skipped: bool,
    pub total_ok: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &GeneratorCheck> {
        self.checks.iter().filter(|c| !c.ok())
    }
}

pub fn verify_all(params: &Params, dec: &Decomposition, gens: &GeneratorSet) -> VerifyReport {
    verify_all_with_guard(params, dec, gens, DEFAULT_SIZE_GUARD)
}

/// Never fails: problems with the inputs show up as failing checks.
pub fn verify_all_with_guard(
    params: &Params,
    dec: &Decomposition,
    gens: &GeneratorSet,
    guard: usize,
) -> VerifyReport {
    let (m, n) = (params.m(), params.n());
    let full = params.dim() <= guard;
    let decomposition_error = dec.check(params).err().map(|e| e.to_string());

    let mut checks = Vec::with_capacity(m);
    let mut socles = BTreeSet::new();
    let mut krylov = Vec::new();
    for i in 1..=m {
        let lambda = dec.get(i);
        let socle = lambda.and_then(|l| (m + n + 1).checked_sub(i + l)).filter(|&s| (1..=m).contains(&s));
        let Some(g) = gens.get(i) else {
            checks.push(GeneratorCheck {
                i,
                well_formed: false,
                socle_check: false,
                nilpotency_check: false,
                cyclic_dim: None,
                expected_lambda: lambda,
            });
            continue;
        };
        let y = &g.vector;
        let well_formed = y.k() == m + n - i
            && y.coeffs().len() == params.diag_len(m + n - i)
            && lambda == Some(g.lambda)
            && socle == Some(g.socle_index);
        let (socle_check, nilpotency_check) = match (lambda, socle) {
            (Some(l), Some(s)) if l >= 1 && y.k() <= params.top() => {
                let before = params.apply_nilpotent_pow(y, l - 1);
                let target = params.socle_vector(s).expect("s within [1, m]");
                let killed = params.apply_nilpotent_pow(&before, 1).is_zero()
                    && y.k() >= l.saturating_sub(1);
                (before == target, killed)
            }
            _ => (false, false),
        };
        if let Some(s) = socle {
            socles.insert(s);
        }
        let cyclic_dim = full.then(|| {
            let basis = krylov_vectors(params, &expand_to_standard(params, y));
            let d = rank_of(params, &basis);
            krylov.extend(basis);
            d
        });
        checks.push(GeneratorCheck {
            i,
            well_formed,
            socle_check,
            nilpotency_check,
            cyclic_dim,
            expected_lambda: lambda,
        });
    }
    let socle_permutation = socles.len() == m;
    let direct_sum_rank = full.then(|| rank_of(params, &krylov));
    let total_ok = decomposition_error.is_none()
        && gens.len() == m
        && socle_permutation
        && checks.iter().all(GeneratorCheck::ok)
        && direct_sum_rank.is_none_or(|r| r == params.dim());
    VerifyReport {
        checks,
        decomposition_error,
        socle_permutation,
        direct_sum_rank,
        full_checks_skipped: !full,
        total_ok,
    }
}
