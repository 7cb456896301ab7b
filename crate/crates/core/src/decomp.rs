//! The multiset `λ_1 >= ... >= λ_m` with `V_m ⊗ V_n ≅ ⊕ V_{λ_i}`.
//!
//! The production route reads the block right-endpoints `b_i` off the
//! criterion `det A_k ≠ 0 (mod p)`, evaluated through the valuation of the
//! closed-form determinant. A dense rank-profile computation serves as the
//! independent oracle.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::roberts_dk_unit_mod_p;
use crate::gfp::FpMatrix;
use crate::tensorspace::{DiagVector, Params};
use crate::verify::DEFAULT_SIZE_GUARD;

/// A maximal run `[a + 1, b]` of equal `λ`. On a valid decomposition
/// `lambda = m + n - a - b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub a: usize,
    pub b: usize,
    pub lambda: usize,
}

impl Block {
    pub fn leader(&self) -> usize {
        self.a + 1
    }

    pub fn len(&self) -> usize {
        self.b - self.a
    }

    pub fn is_empty(&self) -> bool {
        self.b == self.a
    }

    pub fn is_singleton(&self) -> bool {
        self.len() == 1
    }

    pub fn contains(&self, i: usize) -> bool {
        self.a < i && i <= self.b
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    lambda: Vec<usize>,
    blocks: Vec<Block>,
}

impl Decomposition {
    /// Groups `lambda` into runs without checking anything else. Use
    /// [`Decomposition::check`] or [`validate_lambda`] before trusting it.
    pub fn from_lambda_unchecked(lambda: Vec<usize>) -> Self {
        let mut blocks = Vec::new();
        let mut start = 0;
        for i in 1..=lambda.len() {
            if i == lambda.len() || lambda[i] != lambda[start] {
                blocks.push(Block {
                    a: start,
                    b: i,
                    lambda: lambda[start],
                });
                start = i;
            }
        }
        Decomposition { lambda, blocks }
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// `λ_i`, 1-based.
    pub fn get(&self, i: usize) -> Option<usize> {
        i.checked_sub(1).and_then(|t| self.lambda.get(t).copied())
    }

    pub fn block_of(&self, i: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| b.contains(i))
    }

    /// The right endpoints `b_i`, ascending.
    pub fn endpoints(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.b).collect()
    }

    /// Checks the structural invariants against `params`: `m` positive
    /// non-increasing parts summing to `mn`, and `λ = m + n - a - b` on every
    /// block.
    pub fn check(&self, params: &Params) -> Result<()> {
        let (m, n) = (params.m(), params.n());
        if self.lambda.len() != m {
            return Err(Error::ConsistencyViolation(format!(
                "{} parts, expected {m}",
                self.lambda.len()
            )));
        }
        if self.lambda.iter().any(|&l| l == 0 || l > m + n - 1) {
            return Err(Error::ConsistencyViolation(format!(
                "parts must lie in [1, {}]",
                m + n - 1
            )));
        }
        if self.lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::ConsistencyViolation("lambda is not non-increasing".into()));
        }
        let total: usize = self.lambda.iter().sum();
        if total != params.dim() {
            return Err(Error::ConsistencyViolation(format!(
                "parts sum to {total}, expected {}",
                params.dim()
            )));
        }
        for blk in &self.blocks {
            if blk.a + blk.b >= m + n || blk.lambda != m + n - blk.a - blk.b {
                return Err(Error::ConsistencyViolation(format!(
                    "block [{}, {}] has lambda {}, expected m + n - a - b",
                    blk.a + 1,
                    blk.b,
                    blk.lambda
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Decomposition {
    /// `4·V21 ⊕ V16 ⊕ ...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, blk) in self.blocks.iter().enumerate() {
            if t > 0 {
                write!(f, " ⊕ ")?;
            }
            if blk.len() > 1 {
                write!(f, "{}·", blk.len())?;
            }
            write!(f, "V{}", blk.lambda)?;
        }
        Ok(())
    }
}

/// Whether `det A_k ≠ 0 (mod p)`, from the valuation of `d_k` with
/// `a = m + n - 2k`, `b = m - k`.
pub fn is_endpoint(params: &Params, k: usize) -> Result<bool> {
    crate::error::check_range("k", k, 1, params.m())?;
    let (m, n) = (params.m() as u64, params.n() as u64);
    let k = k as u64;
    let d = roberts_dk_unit_mod_p(m + n - 2 * k, m - k, k, params.field())?;
    Ok(d.valuation == 0)
}

/// `{k in [1, m] : det A_k ≠ 0 mod p}`, ascending. Always ends with `m`.
pub fn leading_endpoints(params: &Params) -> Vec<usize> {
    (1..=params.m())
        .filter(|&k| is_endpoint(params, k).expect("k within [1, m] and b <= a"))
        .collect()
}

/// Rebuilds `λ` from the block endpoints: consecutive endpoints bound the
/// blocks, and a block `[a + 1, b]` has `λ = m + n - a - b`.
pub fn lambda_from_endpoints(params: &Params, endpoints: &[usize]) -> Result<Decomposition> {
    let (m, n) = (params.m(), params.n());
    if endpoints.last() != Some(&m) {
        return Err(Error::ConsistencyViolation(format!(
            "endpoints must end with m = {m}"
        )));
    }
    if endpoints.windows(2).any(|w| w[0] >= w[1]) || endpoints[0] == 0 {
        return Err(Error::ConsistencyViolation(
            "endpoints must be strictly increasing and positive".into(),
        ));
    }
    let mut lambda = Vec::with_capacity(m);
    let mut prev = 0;
    for &b in endpoints {
        let value = m + n - prev - b;
        lambda.extend(std::iter::repeat_n(value, b - prev));
        prev = b;
    }
    let dec = Decomposition::from_lambda_unchecked(lambda);
    dec.check(params)?;
    if dec.endpoints() != endpoints {
        return Err(Error::ConsistencyViolation(
            "adjacent blocks share a dimension".into(),
        ));
    }
    Ok(dec)
}

/// The decomposition by the determinant criterion.
pub fn decompose(params: &Params) -> Result<Decomposition> {
    lambda_from_endpoints(params, &leading_endpoints(params))
}

/// Accepts a caller-supplied `λ` only if it is structurally sound and agrees
/// with the determinant criterion.
pub fn validate_lambda(params: &Params, lambda: &[usize]) -> Result<Decomposition> {
    let dec = Decomposition::from_lambda_unchecked(lambda.to_vec());
    dec.check(params)?;
    let expected = leading_endpoints(params);
    if dec.endpoints() != expected {
        return Err(Error::ConsistencyViolation(format!(
            "block endpoints {:?} disagree with the determinant criterion {:?}",
            dec.endpoints(),
            expected
        )));
    }
    Ok(dec)
}

/// Jordan type of `g - 1` from the ranks of its powers: the number of blocks
/// of size at least `t` is `rank N^{t-1} - rank N^t`.
pub fn rank_profile_lambda(params: &Params) -> Result<Decomposition> {
    rank_profile_lambda_with_guard(params, DEFAULT_SIZE_GUARD)
}

pub fn rank_profile_lambda_with_guard(params: &Params, guard: usize) -> Result<Decomposition> {
    let size = params.dim();
    if size > guard {
        return Err(Error::SizeGuard { size, guard });
    }
    let f = params.field();
    // images[k] holds N^t applied to the basis of D_k; N^t maps D_k into
    // D_{k-t}, so rank N^t is the sum of the per-diagonal ranks
    let mut images: Vec<Vec<DiagVector>> = (1..=params.top())
        .map(|k| {
            let len = params.diag_len(k);
            (0..len)
                .map(|t| {
                    let mut v = DiagVector::zero(params, k);
                    v.coeffs_mut()[t] = crate::gfp::FpElem::ONE;
                    v
                })
                .collect()
        })
        .collect();
    let mut ranks = vec![size];
    while *ranks.last().unwrap() > 0 {
        let mut rank = 0;
        for group in images.iter_mut() {
            for v in group.iter_mut() {
                *v = params.apply_nilpotent(v);
            }
            let Some(first) = group.first() else { continue };
            let rows = params.diag_len(first.k());
            if rows == 0 {
                continue;
            }
            let cols: Vec<_> = group.iter().map(|v| v.coeffs().to_vec()).collect();
            rank += FpMatrix::from_columns(f, rows, &cols)?.rank();
        }
        ranks.push(rank);
    }
    // at_least[t] = #blocks of size >= t + 1
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut lambda = Vec::new();
    for (t, &count) in at_least.iter().enumerate() {
        let next = at_least.get(t + 1).copied().unwrap_or(0);
        lambda.extend(std::iter::repeat_n(t + 1, count - next));
    }
    lambda.reverse();
    let dec = Decomposition::from_lambda_unchecked(lambda);
    if dec.lambda().len() != params.m() {
        return Err(Error::ConsistencyViolation(format!(
            "rank profile gives {} blocks, expected {}",
            dec.lambda().len(),
            params.m()
        )));
    }
    Ok(dec)
}
