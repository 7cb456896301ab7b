//! Explicit generators `y_i ∈ D_{m+n-i}` with `F G y_i ≅ V_{λ_i}` and
//! `V_m ⊗ V_n = ⊕ F G y_i`.
//!
//! For a block `[a + 1, b]`:
//! * singleton (`a + 1 = b`): `y_b = S_b^{-1}(x_b)`;
//! * leader of a longer block: `y_{a+1} = U(S_b^{-1}(x_b))`, with `U` the
//!   left inverse of `(g - 1)^{b-a-1}`;
//! * every other member: the leader's coefficients shifted into the longer
//!   basis of `D_{m+n-i}` with sign `(-1)^{i-a-1}`.
//!
//! `S_b^{-1}` comes from a closed-form integer adjugate of the binomial matrix
//! `(C(a, b + j - i))`, reduced mod p.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::decomp::{decompose, is_endpoint, Decomposition};
use crate::error::{check_range, Error, Result};
use crate::exactnum::{binom_exact, binom_general, roberts_dk, roberts_dk_unit_mod_p};
use crate::gfp::{FpElem, FpMatrix};
use crate::tensorspace::{DiagVector, Params};

/// Which construction produced a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenCase {
    LeadingSingleton,
    LeadingBlock,
    Shifted,
}

impl GenCase {
    pub fn as_str(self) -> &'static str {
        match self {
            GenCase::LeadingSingleton => "leading-singleton",
            GenCase::LeadingBlock => "leading-block",
            GenCase::Shifted => "shifted",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "leading-singleton" => Some(GenCase::LeadingSingleton),
            "leading-block" => Some(GenCase::LeadingBlock),
            "shifted" => Some(GenCase::Shifted),
            _ => None,
        }
    }
}

impl fmt::Display for GenCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub i: usize,
    pub vector: DiagVector,
    pub lambda: usize,
    /// `m + n + 1 - i - λ_i`: `(g - 1)^{λ_i - 1} y_i = x_{socle_index}`.
    pub socle_index: usize,
    pub case: GenCase,
}

/// One generator per `i in [m]`, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(mut gens: Vec<Generator>) -> Self {
        gens.sort_by_key(|g| g.i);
        GeneratorSet { gens }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// `y_i`, 1-based.
    pub fn get(&self, i: usize) -> Option<&Generator> {
        self.gens.iter().find(|g| g.i == i)
    }

    pub fn get_mut(&mut self, i: usize) -> Option<&mut Generator> {
        self.gens.iter_mut().find(|g| g.i == i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Generator> {
        self.gens.iter()
    }

    pub fn as_slice(&self) -> &[Generator] {
        &self.gens
    }
}

impl<'a> IntoIterator for &'a GeneratorSet {
    type Item = &'a Generator;
    type IntoIter = std::slice::Iter<'a, Generator>;

    fn into_iter(self) -> Self::IntoIter {
        self.gens.iter()
    }
}

/// `A_k^{-1} = det(A_k)^{-1} · N` with `N` the reduced integer adjugate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NyInverse {
    pub k: usize,
    pub det_unit: FpElem,
    pub adjugate: FpMatrix,
}

impl NyInverse {
    pub fn inverse(&self) -> FpMatrix {
        let f = self.adjugate.field();
        let inv = f.inv(self.det_unit).expect("det_unit is nonzero");
        self.adjugate.scale(inv)
    }
}

fn check_nondegenerate(a: u64, b: u64, k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    if b > a {
        return Err(Error::DegenerateFormula { a, b, k });
    }
    Ok(())
}

fn to_integer(v: BigRational, what: impl FnOnce() -> String) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::IntegralityViolation(what()))
    }
}

/// Entry `(i, j)` (1-based) of the adjugate of the `k x k` matrix
/// `M = (C(a, b + j - i))`:
///
/// `z_{i,j} = d_k / C(a+k-1, b+i-1) · Σ_{ℓ=1}^{j} (-1)^{ℓ+j} C(a+k-1, ℓ-1)
///            C(a+j-ℓ-1, j-ℓ) ∏_{r≠i} (ℓ-b-r)/(i-r)`
///
/// evaluated over the rationals. Requires `a >= b`, where the leading
/// denominator is nonzero.
pub fn ny_adjugate_entry(a: u64, b: u64, k: u64, i: u64, j: u64) -> Result<BigInt> {
    check_nondegenerate(a, b, k)?;
    check_range("i", i as usize, 1, k as usize)?;
    check_range("j", j as usize, 1, k as usize)?;
    let d = BigRational::from_integer(roberts_dk(a, b, k)?);
    let lead = binom_exact(a + k - 1, (b + i - 1) as i64);
    let (a_, b_, i_, j_) = (a as i64, b as i64, i as i64, j as i64);
    let mut sum = BigRational::zero();
    for l in 1..=j_ {
        let mut term = BigRational::from_integer(
            binom_exact(a + k - 1, l - 1) * binom_general(a_ + j_ - l - 1, j_ - l),
        );
        for r in 1..=k as i64 {
            if r != i_ {
                term *= BigRational::new(BigInt::from(l - b_ - r), BigInt::from(i_ - r));
            }
        }
        if (l + j_) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let z = d / BigRational::from_integer(lead) * sum;
    to_integer(z, || format!("z_({i},{j}) for a={a}, b={b}, k={k}"))
}

/// The whole adjugate of `(C(a, b + j - i))`, row-major, plus `d_k`.
///
/// Same closed form as [`ny_adjugate_entry`], reorganised so that the
/// Lagrange-type products `∏_{r≠i} (ℓ-b-r)` are obtained by one exact
/// division each and the inner sums stay in the integers.
pub fn ny_adjugate(a: u64, b: u64, k: u64) -> Result<(BigInt, Vec<Vec<BigInt>>)> {
    check_nondegenerate(a, b, k)?;
    let d = roberts_dk(a, b, k)?;
    let kk = k as usize;
    let (a_, b_, k_) = (a as i64, b as i64, k as i64);

    let fact: Vec<BigInt> = std::iter::once(BigInt::one())
        .chain((1..=kk).scan(BigInt::one(), |acc, t| {
            *acc *= t;
            Some(acc.clone())
        }))
        .collect();
    // ∏_{r≠i} (i - r) = (-1)^{k-i} (i-1)! (k-i)!
    let vandermonde: Vec<BigInt> = (1..=kk)
        .map(|i| {
            let v = &fact[i - 1] * &fact[kk - i];
            if (kk - i).is_multiple_of(2) {
                v
            } else {
                -v
            }
        })
        .collect();

    // numer[l-1][i-1] = ∏_{r≠i} (ℓ - b - r)
    let mut numer = vec![vec![BigInt::zero(); kk]; kk];
    for l in 1..=k_ {
        let full: BigInt = (1..=k_).map(|r| BigInt::from(l - b_ - r)).product();
        for i in 1..=k_ {
            let skip = l - b_ - i;
            numer[(l - 1) as usize][(i - 1) as usize] = if skip != 0 {
                &full / skip
            } else {
                // every other factor ℓ - b - r = i - r
                vandermonde[(i - 1) as usize].clone()
            };
        }
    }

    // weight[l-1][j-1] = (-1)^{ℓ+j} C(a+k-1, ℓ-1) C(a+j-ℓ-1, j-ℓ), zero for ℓ > j
    let mut weight = vec![vec![BigInt::zero(); kk]; kk];
    for j in 1..=k_ {
        for l in 1..=j {
            let w = binom_exact(a + k - 1, l - 1) * binom_general(a_ + j - l - 1, j - l);
            weight[(l - 1) as usize][(j - 1) as usize] = if (l + j) % 2 == 0 { w } else { -w };
        }
    }

    let mut adj = vec![vec![BigInt::zero(); kk]; kk];
    for i in 0..kk {
        let den = binom_exact(a + k - 1, b_ + i as i64) * &vandermonde[i];
        for j in 0..kk {
            let s: BigInt = (0..=j).map(|l| &weight[l][j] * &numer[l][i]).sum();
            let z = BigRational::new(&d * s, den.clone());
            adj[i][j] = to_integer(z, || {
                format!("z_({},{}) for a={a}, b={b}, k={k}", i + 1, j + 1)
            })?;
        }
    }
    Ok((d, adj))
}

/// `A_k^{-1}` mod p from the closed-form adjugate, with `a = m + n - 2k` and
/// `b = m - k`. Fails with [`Error::Singular`] when `det A_k = 0 (mod p)`.
pub fn ny_inverse(params: &Params, k: usize) -> Result<NyInverse> {
    check_range("k", k, 1, params.m())?;
    let f = params.field();
    let (m, n) = (params.m() as u64, params.n() as u64);
    let (a, b, kk) = (m + n - 2 * k as u64, m - k as u64, k as u64);
    let det = roberts_dk_unit_mod_p(a, b, kk, f)?;
    if det.valuation > 0 {
        return Err(Error::Singular);
    }
    let (d, adj) = ny_adjugate(a, b, kk)?;
    if f.from_bigint(&d) != det.unit {
        return Err(Error::ConsistencyViolation(format!(
            "exact and mod-p determinants of A_{k} disagree"
        )));
    }
    let adjugate = FpMatrix::from_fn(f, k, k, |i, j| f.from_bigint(&adj[i][j]));
    Ok(NyInverse {
        k,
        det_unit: det.unit,
        adjugate,
    })
}

/// `S_b^{-1}(x_b) ∈ D_{m+n-b}`.
pub fn socle_preimage(params: &Params, b: usize) -> Result<DiagVector> {
    let inv = ny_inverse(params, b)?.inverse();
    let x = params.socle_vector(b)?;
    params.apply_matrix(&inv, &x, params.m() + params.n() - b)
}

fn require_endpoint(params: &Params, k: usize) -> Result<()> {
    if is_endpoint(params, k)? {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{k} is not a block endpoint")))
    }
}

/// Generator of a singleton block `{b}`.
pub fn gen_case1(params: &Params, b: usize) -> Result<DiagVector> {
    check_range("b", b, 1, params.m())?;
    require_endpoint(params, b)?;
    if b > 1 {
        require_endpoint(params, b - 1)
            .map_err(|_| Error::Precondition(format!("{b} does not form a singleton block")))?;
    }
    socle_preimage(params, b)
}

/// Generator `y_{a+1}` for the leader of the block `[a + 1, b]`, `a + 1 < b`.
pub fn gen_case2(params: &Params, a: usize, b: usize) -> Result<DiagVector> {
    if !(a + 1 < b && b <= params.m()) {
        return Err(Error::Precondition(format!(
            "case 2 needs a + 1 < b <= m, got a={a}, b={b}"
        )));
    }
    require_endpoint(params, b)?;
    if a > 0 {
        require_endpoint(params, a)?;
    }
    for k in a + 1..b {
        if is_endpoint(params, k)? {
            return Err(Error::Precondition(format!(
                "[{}, {b}] is not a block: {k} is an endpoint",
                a + 1
            )));
        }
    }
    leader_of_block(params, a, b)
}

fn leader_of_block(params: &Params, a: usize, b: usize) -> Result<DiagVector> {
    let pre = socle_preimage(params, b)?;
    let u = params.u_matrix(a, b)?;
    params.apply_matrix(&u, &pre, params.m() + params.n() - a - 1)
}

/// Generator `y_i` for a non-leading member `a + 2 <= i` of a block, from the
/// leader's coefficients: `(-1)^{i-a-1} (α_{m-a}, ..., α_m, 0, ..., 0)`.
pub fn gen_case3(params: &Params, leader: &DiagVector, a: usize, i: usize) -> Result<DiagVector> {
    let (m, n) = (params.m(), params.n());
    if !(a + 2 <= i && i <= m) {
        return Err(Error::Precondition(format!(
            "case 3 needs a + 2 <= i <= m, got a={a}, i={i}"
        )));
    }
    if leader.k() != m + n - a - 1 {
        return Err(Error::Precondition(format!(
            "leader lies in D_{}, expected D_{}",
            leader.k(),
            m + n - a - 1
        )));
    }
    let f = params.field();
    let sign = f.sign((i - a - 1) as u64);
    let mut coeffs: Vec<FpElem> = leader.coeffs().iter().map(|&c| f.mul(c, sign)).collect();
    coeffs.resize(params.diag_len(m + n - i), FpElem::ZERO);
    DiagVector::from_coeffs(params, m + n - i, coeffs)
}

/// All `m` generators, dispatching on the block structure.
pub fn build_generators(params: &Params) -> Result<GeneratorSet> {
    let dec = decompose(params)?;
    build_generators_for(params, &dec)
}

/// Generators for an already computed decomposition, which must be valid.
pub fn build_generators_for(params: &Params, dec: &Decomposition) -> Result<GeneratorSet> {
    dec.check(params)?;
    let (m, n) = (params.m(), params.n());
    let mut gens = Vec::with_capacity(m);
    for blk in dec.blocks() {
        let lambda = blk.lambda;
        let socle = |i: usize| m + n + 1 - i - lambda;
        if blk.is_singleton() {
            gens.push(Generator {
                i: blk.b,
                vector: socle_preimage(params, blk.b)?,
                lambda,
                socle_index: socle(blk.b),
                case: GenCase::LeadingSingleton,
            });
            continue;
        }
        let leader = leader_of_block(params, blk.a, blk.b)?;
        for i in blk.a + 2..=blk.b {
            gens.push(Generator {
                i,
                vector: gen_case3(params, &leader, blk.a, i)?,
                lambda,
                socle_index: socle(i),
                case: GenCase::Shifted,
            });
        }
        gens.push(Generator {
            i: blk.leader(),
            vector: leader,
            lambda,
            socle_index: socle(blk.leader()),
            case: GenCase::LeadingBlock,
        });
    }
    Ok(GeneratorSet::new(gens))
}
