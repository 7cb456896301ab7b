//! Combinatorics of `V_m ⊗ V_n` in the diagonal basis.
//!
//! `v_{i,j} = u_i ⊗ g^{n-i} w_j` for `1 <= i <= m`, `1 <= j <= n`. The span
//! `D_k` of the `v_{i,j}` with `i + j = k + 1` is ordered by ascending first
//! index, and `g - 1` sends `v_{i,j}` to `v_{i-1,j} + v_{i,j-1}`, dropping
//! terms that leave the grid. `D_0` is the zero space.

use crate::error::{check_range, Error, Result};
use crate::exactnum::{binom_exact, binom_mod_p};
use crate::gfp::{FpElem, FpMatrix, PrimeField};

/// A prime and two Jordan block sizes `1 <= m <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    field: PrimeField,
    m: usize,
    n: usize,
}

impl Params {
    pub fn new(p: u64, m: usize, n: usize) -> Result<Self> {
        Self::with_field(PrimeField::new(p)?, m, n)
    }

    pub fn with_field(field: PrimeField, m: usize, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("m must be at least 1".into()));
        }
        if m > n {
            return Err(Error::InvalidParams(format!("need m <= n, got m={m}, n={n}")));
        }
        Ok(Params { field, m, n })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `m * n`.
    pub fn dim(&self) -> usize {
        self.m * self.n
    }

    /// Index of the top diagonal, `m + n - 1`.
    pub fn top(&self) -> usize {
        self.m + self.n - 1
    }

    /// Smallest `a` with `p^a >= n`, i.e. the least group order `p^a` for
    /// which `V_n` is an indecomposable module.
    pub fn min_group_exponent(&self) -> u32 {
        let p = self.p() as u128;
        let mut q = 1u128;
        let mut a = 0;
        while q < self.n as u128 {
            q *= p;
            a += 1;
        }
        a
    }

    /// Range of first indices on diagonal `k`; empty for `k = 0`.
    fn bounds(&self, k: usize) -> (usize, usize) {
        if k == 0 {
            return (1, 0);
        }
        let lo = if k + 1 > self.n { k + 1 - self.n } else { 1 };
        (lo, k.min(self.m))
    }

    fn diag(&self, k: usize) -> DiagIndex {
        let (lo, hi) = self.bounds(k);
        DiagIndex { k, lo, hi }
    }

    /// The ordered basis of `D_k`, `1 <= k <= m + n - 1`.
    pub fn basis(&self, k: usize) -> Result<DiagIndex> {
        check_range("k", k, 1, self.top())?;
        Ok(self.diag(k))
    }

    /// `dim D_k`, zero outside `[1, m + n - 1]`.
    pub fn diag_len(&self, k: usize) -> usize {
        if k > self.top() {
            0
        } else {
            self.diag(k).len()
        }
    }

    /// `x_i = Σ_j (-1)^{j-1} v_{j, i+1-j}`, spanning `ker(g - 1) ∩ D_i`.
    pub fn socle_vector(&self, i: usize) -> Result<DiagVector> {
        check_range("i", i, 1, self.m)?;
        let coeffs = (0..i).map(|t| self.field.sign(t as u64)).collect();
        Ok(DiagVector { k: i, coeffs })
    }

    /// Matrix of `(g - 1)^{s-r} : D_s -> D_r`, with `(i, j)` entry
    /// `C(s - r, m_s - m_r + j - i)`.
    pub fn power_matrix(&self, s: usize, r: usize) -> Result<FpMatrix> {
        check_range("s", s, 2, self.top())?;
        check_range("r", r, 1, s - 1)?;
        let (ds, dr) = (self.diag(s), self.diag(r));
        let shift = (ds.lo - dr.lo) as i64;
        let e = (s - r) as u64;
        Ok(FpMatrix::from_fn(self.field, dr.len(), ds.len(), |i, j| {
            binom_mod_p(e, shift + j as i64 - i as i64, self.field)
        }))
    }

    /// `A_k`, the `k x k` matrix of `S_k = (g - 1)^{m+n-2k} : D_{m+n-k} -> D_k`.
    pub fn a_matrix(&self, k: usize) -> Result<FpMatrix> {
        check_range("k", k, 1, self.m)?;
        let s = self.m + self.n - k;
        if s == k {
            Ok(FpMatrix::identity(self.field, k))
        } else {
            self.power_matrix(s, k)
        }
    }

    /// Matrix of `U : D_{m+n-b} -> D_{m+n-a-1}`, the left inverse of
    /// `T = (g - 1)^{b-a-1}` on `D_{m+n-a-1}`: `b - a - 1` zero columns
    /// followed by `B(a + 1, b - a - 1)`.
    pub fn u_matrix(&self, a: usize, b: usize) -> Result<FpMatrix> {
        if !(a + 1 < b && b <= self.m) {
            return Err(Error::Precondition(format!(
                "U needs a + 1 < b <= m, got a={a}, b={b}, m={}",
                self.m
            )));
        }
        let zeros = b - a - 1;
        let block = b_struct_matrix(a + 1, zeros, self.field);
        Ok(FpMatrix::from_fn(self.field, a + 1, b, |i, j| {
            if j < zeros {
                FpElem::ZERO
            } else {
                block.get(i, j - zeros)
            }
        }))
    }

    /// Matrix of `T = (g - 1)^{b-a-1} : D_{m+n-a-1} -> D_{m+n-b}`.
    pub fn t_matrix(&self, a: usize, b: usize) -> Result<FpMatrix> {
        if !(a + 1 < b && b <= self.m) {
            return Err(Error::Precondition(format!(
                "T needs a + 1 < b <= m, got a={a}, b={b}"
            )));
        }
        self.power_matrix(self.m + self.n - a - 1, self.m + self.n - b)
    }

    /// `g - 1 : D_k -> D_{k-1}`.
    pub fn apply_nilpotent(&self, v: &DiagVector) -> DiagVector {
        let h1 = self.apply_h1(v);
        let h2 = self.apply_h2(v);
        let f = self.field;
        DiagVector {
            k: h1.k,
            coeffs: h1
                .coeffs
                .iter()
                .zip(&h2.coeffs)
                .map(|(&x, &y)| f.add(x, y))
                .collect(),
        }
    }

    /// `(g - 1)^t`.
    pub fn apply_nilpotent_pow(&self, v: &DiagVector, t: usize) -> DiagVector {
        let mut out = v.clone();
        for _ in 0..t {
            if out.k == 0 {
                break;
            }
            out = self.apply_nilpotent(&out);
        }
        out
    }

    /// `h_1(v_{i,j}) = v_{i-1,j}`.
    pub fn apply_h1(&self, v: &DiagVector) -> DiagVector {
        self.shift(v, true)
    }

    /// `h_2(v_{i,j}) = v_{i,j-1}`.
    pub fn apply_h2(&self, v: &DiagVector) -> DiagVector {
        self.shift(v, false)
    }

    fn shift(&self, v: &DiagVector, first: bool) -> DiagVector {
        if v.k == 0 {
            return v.clone();
        }
        let src = self.diag(v.k);
        let dst = self.diag(v.k - 1);
        let mut out = vec![FpElem::ZERO; dst.len()];
        for (t, &c) in v.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let i = src.lo + t;
            // both shifts land on the same diagonal; h_1 lowers the first index
            let target = if first { i - 1 } else { i };
            if let Some(pos) = dst.offset_of(target) {
                out[pos] = c;
            }
        }
        DiagVector {
            k: v.k - 1,
            coeffs: out,
        }
    }

    /// Applies a matrix written against `B_k` to a vector of `D_k`, landing
    /// in `D_target`.
    pub fn apply_matrix(&self, mat: &FpMatrix, v: &DiagVector, target: usize) -> Result<DiagVector> {
        let coeffs = mat.mul_vec(&v.coeffs)?;
        DiagVector::from_coeffs(self, target, coeffs)
    }
}

/// `A(r, s)`: `r x r`, entries `C(s, j - i)`.
pub fn a_struct_matrix(r: usize, s: usize, field: PrimeField) -> FpMatrix {
    FpMatrix::from_fn(field, r, r, |i, j| {
        binom_mod_p(s as u64, j as i64 - i as i64, field)
    })
}

/// `B(r, s)`: `r x r`, entries `(-1)^{j-i} C(s - 1 + j - i, s - 1)`; the
/// inverse of `A(r, s)`.
pub fn b_struct_matrix(r: usize, s: usize, field: PrimeField) -> FpMatrix {
    FpMatrix::from_fn(field, r, r, |i, j| {
        if j < i {
            return FpElem::ZERO;
        }
        let d = j - i;
        let c = if s == 0 {
            // C(d - 1, -1) = 0
            binom_exact(0, -1)
        } else {
            binom_exact((s - 1 + d) as u64, s as i64 - 1)
        };
        let v = field.from_bigint(&c);
        field.mul(v, field.sign(d as u64))
    })
}

/// Ordered basis of one diagonal `D_k`: positions `(i, k + 1 - i)` for `i` in
/// `lo..=hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagIndex {
    k: usize,
    lo: usize,
    hi: usize,
}

impl DiagIndex {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Smallest first index, `max(1, k + 1 - n)`.
    pub fn first(&self) -> usize {
        self.lo
    }

    /// Largest first index, `min(k, m)`.
    pub fn last(&self) -> usize {
        self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi + 1).saturating_sub(self.lo)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (self.lo..=self.hi).map(move |i| (i, self.k + 1 - i))
    }

    pub fn offset_of(&self, i: usize) -> Option<usize> {
        (self.lo..=self.hi).contains(&i).then(|| i - self.lo)
    }

    pub fn position(&self, offset: usize) -> Option<(usize, usize)> {
        let i = self.lo + offset;
        (i <= self.hi).then(|| (i, self.k + 1 - i))
    }
}

/// An element of `D_k` as coefficients over its ordered basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagVector {
    k: usize,
    coeffs: Vec<FpElem>,
}

impl DiagVector {
    pub fn zero(params: &Params, k: usize) -> Self {
        DiagVector {
            k,
            coeffs: vec![FpElem::ZERO; params.diag_len(k)],
        }
    }

    pub fn from_coeffs(params: &Params, k: usize, coeffs: Vec<FpElem>) -> Result<Self> {
        if k > params.top() {
            check_range("k", k, 0, params.top())?;
        }
        if coeffs.len() != params.diag_len(k) {
            return Err(Error::DimensionMismatch(format!(
                "D_{k} has dimension {}, got {} coefficients",
                params.diag_len(k),
                coeffs.len()
            )));
        }
        Ok(DiagVector { k, coeffs })
    }

    /// Builds a vector from `((i, j), value)` terms, which must all lie on
    /// diagonal `k`. Repeated positions accumulate.
    pub fn from_terms(
        params: &Params,
        k: usize,
        terms: impl IntoIterator<Item = ((usize, usize), FpElem)>,
    ) -> Result<Self> {
        let mut v = DiagVector::zero(params, k);
        let idx = params.diag(k);
        for ((i, j), c) in terms {
            let pos = (i + j == k + 1 && j >= 1 && j <= params.n)
                .then(|| idx.offset_of(i))
                .flatten()
                .ok_or_else(|| {
                    Error::InvalidParams(format!("v_({i},{j}) is not a basis vector of D_{k}"))
                })?;
            v.coeffs[pos] = params.field.add(v.coeffs[pos], c);
        }
        Ok(v)
    }

    /// `v_{i,j}` itself.
    pub fn basis_vector(params: &Params, i: usize, j: usize) -> Result<Self> {
        check_range("i", i, 1, params.m)?;
        check_range("j", j, 1, params.n)?;
        Self::from_terms(params, i + j - 1, [((i, j), FpElem::ONE)])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[FpElem] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [FpElem] {
        &mut self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero terms as `((i, j), coefficient)`, ascending in `i`.
    pub fn terms(&self, params: &Params) -> Vec<((usize, usize), FpElem)> {
        let idx = params.diag(self.k);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, &c)| (idx.position(t).expect("offset within diagonal"), c))
            .collect()
    }

    pub fn scale(&self, field: PrimeField, c: FpElem) -> Self {
        DiagVector {
            k: self.k,
            coeffs: self.coeffs.iter().map(|&x| field.mul(x, c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ex6() -> Params {
        Params::new(7, 12, 13).unwrap()
    }

    fn values(v: &[FpElem]) -> Vec<u32> {
        v.iter().map(|e| e.value()).collect()
    }

    #[test]
    fn basis_examples() {
        let p = ex6();
        let b5: Vec<_> = p.basis(5).unwrap().positions().collect();
        assert_eq!(b5, vec![(1, 5), (2, 4), (3, 3), (4, 2), (5, 1)]);
        let b20: Vec<_> = p.basis(20).unwrap().positions().collect();
        assert_eq!(b20, vec![(8, 13), (9, 12), (10, 11), (11, 10), (12, 9)]);
        let single = Params::new(3, 1, 6).unwrap();
        for k in 1..=6 {
            let b: Vec<_> = single.basis(k).unwrap().positions().collect();
            assert_eq!(b, vec![(1, k)]);
        }
        assert!(p.basis(0).is_err());
        assert!(p.basis(25).is_err());
    }

    #[test]
    fn middle_diagonals_have_m_entries() {
        let p = ex6();
        for k in 12..=13 {
            assert_eq!(p.basis(k).unwrap().len(), 12);
        }
        let b13: Vec<_> = p.basis(13).unwrap().positions().collect();
        assert_eq!(b13.first(), Some(&(1, 13)));
        assert_eq!(b13.last(), Some(&(12, 2)));
    }

    #[test]
    fn socle_examples() {
        let p = ex6();
        assert_eq!(values(p.socle_vector(5).unwrap().coeffs()), vec![1, 6, 1, 6, 1]);
        assert_eq!(values(p.socle_vector(1).unwrap().coeffs()), vec![1]);
        assert_eq!(
            values(p.socle_vector(11).unwrap().coeffs()),
            vec![1, 6, 1, 6, 1, 6, 1, 6, 1, 6, 1]
        );
        assert!(p.socle_vector(13).is_err());
        assert!(p.socle_vector(0).is_err());
    }

    #[test]
    fn power_matrix_examples() {
        let p = ex6();
        let f = p.field();
        let m = p.power_matrix(20, 5).unwrap();
        assert_eq!((m.rows(), m.cols()), (5, 5));
        for i in 0..5 {
            for j in 0..5 {
                let e = binom_exact(15, 7 + j as i64 - i as i64);
                assert_eq!(m.get(i, j), f.from_bigint(&e));
            }
        }
        let m = p.power_matrix(14, 11).unwrap();
        assert_eq!((m.rows(), m.cols()), (11, 11));
        for i in 0..11 {
            for j in 0..11 {
                let e = binom_exact(3, 1 + j as i64 - i as i64);
                assert_eq!(m.get(i, j), f.from_bigint(&e));
            }
        }
        assert!(p.power_matrix(5, 5).is_err());
        assert!(p.power_matrix(25, 3).is_err());
    }

    #[test]
    fn a_matrix_of_square_case_is_identity() {
        let p = Params::new(3, 4, 4).unwrap();
        assert!(p.a_matrix(4).unwrap().is_identity());
        assert!(p.a_matrix(5).is_err());
    }

    #[test]
    fn b_matrix_shapes() {
        let f = PrimeField::new(7).unwrap();
        for r in 1..=6 {
            for s in 1..=6 {
                let b = b_struct_matrix(r, s, f);
                for i in 0..r {
                    assert_eq!(b.get(i, i), FpElem::ONE);
                    for j in 0..i {
                        assert!(b.get(i, j).is_zero());
                    }
                }
            }
        }
        let b = b_struct_matrix(4, 1, f);
        for i in 0..4 {
            for j in i..4 {
                assert_eq!(b.get(i, j), f.sign((j - i) as u64));
            }
        }
    }

    #[test]
    fn u_matrix_with_one_zero_column() {
        let p = Params::new(5, 6, 8).unwrap();
        let f = p.field();
        // a = b - 2: one zero column, then B(a + 1, 1)
        let u = p.u_matrix(2, 4).unwrap();
        assert_eq!((u.rows(), u.cols()), (3, 4));
        for i in 0..3 {
            assert!(u.get(i, 0).is_zero());
            for j in 0..3 {
                let expected = if j >= i { f.sign((j - i) as u64) } else { FpElem::ZERO };
                assert_eq!(u.get(i, j + 1), expected);
            }
        }
        assert!(p.u_matrix(3, 4).is_err());
        assert!(p.u_matrix(2, 7).is_err());
    }

    #[test]
    fn u_left_inverts_t() {
        for prime in [2u64, 3, 5, 7] {
            for m in 3..=10 {
                let p = Params::new(prime, m, m + 1).unwrap();
                for b in 2..=m {
                    for a in 0..b - 1 {
                        let u = p.u_matrix(a, b).unwrap();
                        let t = p.t_matrix(a, b).unwrap();
                        assert!(u.mul(&t).unwrap().is_identity(), "p={prime} m={m} a={a} b={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn a_times_b_is_identity() {
        // exact integers first, then every residue field
        for r in 1..=12usize {
            for s in 1..=12usize {
                for i in 0..r {
                    for j in 0..r {
                        let mut acc = num_bigint::BigInt::from(0);
                        for t in 0..r {
                            if t < i || j < t {
                                continue;
                            }
                            let a = binom_exact(s as u64, (t - i) as i64);
                            let b = binom_exact((s - 1 + j - t) as u64, s as i64 - 1);
                            if (j - t) % 2 == 0 {
                                acc += a * b;
                            } else {
                                acc -= a * b;
                            }
                        }
                        assert_eq!(acc, num_bigint::BigInt::from(u8::from(i == j)));
                    }
                }
                for prime in [2u64, 3, 5, 7, 11, 13] {
                    let f = PrimeField::new(prime).unwrap();
                    let prod = a_struct_matrix(r, s, f).mul(&b_struct_matrix(r, s, f)).unwrap();
                    assert!(prod.is_identity());
                }
            }
        }
    }

    #[test]
    fn socle_vectors_are_killed() {
        for prime in [2u64, 3, 7] {
            let p = Params::new(prime, 6, 9).unwrap();
            for i in 1..=6 {
                let x = p.socle_vector(i).unwrap();
                assert!(p.apply_nilpotent(&x).is_zero());
            }
        }
    }

    #[test]
    fn corner_vector_vanishes() {
        let p = ex6();
        let v = DiagVector::basis_vector(&p, 1, 1).unwrap();
        let w = p.apply_nilpotent(&v);
        assert_eq!(w.k(), 0);
        assert!(w.coeffs().is_empty());
        assert!(p.apply_nilpotent(&w).coeffs().is_empty());
    }

    #[test]
    fn h1_on_socle_and_first_row() {
        let p = ex6();
        let f = p.field();
        for i in 2..=12 {
            let h = p.apply_h1(&p.socle_vector(i).unwrap());
            let expected = p.socle_vector(i - 1).unwrap().scale(f, f.elem(-1));
            assert_eq!(h, expected);
        }
        for j in 1..=13 {
            assert!(p.apply_h1(&DiagVector::basis_vector(&p, 1, j).unwrap()).is_zero());
        }
    }

    #[test]
    fn nilpotent_is_sum_of_shifts() {
        let p = Params::new(5, 4, 7).unwrap();
        let f = p.field();
        for i in 1..=4 {
            for j in 1..=7 {
                let v = DiagVector::basis_vector(&p, i, j).unwrap();
                let (h1, h2) = (p.apply_h1(&v), p.apply_h2(&v));
                let sum: Vec<_> = h1.coeffs().iter().zip(h2.coeffs()).map(|(&a, &b)| f.add(a, b)).collect();
                assert_eq!(p.apply_nilpotent(&v).coeffs(), &sum[..]);
            }
        }
    }

    #[test]
    fn superdiagonal_step_matrix() {
        let p = Params::new(3, 5, 8).unwrap();
        for s in 2..=5 {
            let m = p.power_matrix(s, s - 1).unwrap();
            for j in 0..m.cols() {
                let v = DiagVector::from_coeffs(
                    &p,
                    s,
                    (0..m.cols()).map(|t| if t == j { FpElem::ONE } else { FpElem::ZERO }).collect(),
                )
                .unwrap();
                assert_eq!(p.apply_nilpotent(&v).coeffs(), &m.column(j)[..]);
                for i in 0..m.rows() {
                    assert!(m.get(i, j).value() <= 1);
                }
            }
        }
    }

    #[test]
    fn from_terms_rejects_off_diagonal() {
        let p = ex6();
        assert!(DiagVector::from_terms(&p, 5, [((2, 2), FpElem::ONE)]).is_err());
        assert!(DiagVector::from_terms(&p, 20, [((7, 14), FpElem::ONE)]).is_err());
        assert!(DiagVector::from_coeffs(&p, 5, vec![FpElem::ONE; 4]).is_err());
    }

    #[test]
    fn group_exponent() {
        assert_eq!(ex6().min_group_exponent(), 2);
        assert_eq!(Params::new(2, 1, 1).unwrap().min_group_exponent(), 0);
        assert_eq!(Params::new(2, 3, 8).unwrap().min_group_exponent(), 3);
        assert_eq!(Params::new(2, 3, 9).unwrap().min_group_exponent(), 4);
    }

    fn arb_params() -> impl Strategy<Value = Params> {
        (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..=10)
            .prop_flat_map(|(p, n)| (Just(p), 1..=n, Just(n)))
            .prop_map(|(p, m, n)| Params::new(p, m, n).unwrap())
    }

    proptest! {
        #[test]
        fn diagonals_partition_the_basis(p in arb_params()) {
            let total: usize = (1..=p.top()).map(|k| p.basis(k).unwrap().len()).sum();
            prop_assert_eq!(total, p.dim());
        }

        #[test]
        fn powers_compose(p in arb_params(), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
            prop_assume!(p.top() >= 3);
            let mut ks: Vec<usize> = picks.iter().map(|ix| 1 + ix.index(p.top())).collect();
            ks.sort();
            ks.dedup();
            prop_assume!(ks.len() == 3);
            let (r, mid, s) = (ks[0], ks[1], ks[2]);
            let direct = p.power_matrix(s, r).unwrap();
            let composed = p.power_matrix(mid, r).unwrap().mul(&p.power_matrix(s, mid).unwrap()).unwrap();
            prop_assert_eq!(direct, composed);
        }

        #[test]
        fn iterated_action_matches_binomial_expansion(p in arb_params(), ij in any::<(prop::sample::Index, prop::sample::Index)>(), r in 0usize..12) {
            let i = 1 + ij.0.index(p.m());
            let j = 1 + ij.1.index(p.n());
            let v = DiagVector::basis_vector(&p, i, j).unwrap();
            let k = i + j - 1;
            prop_assume!(r < k);
            let got = p.apply_nilpotent_pow(&v, r);
            let f = p.field();
            let terms = (0..=r).filter_map(|t| {
                let (ii, jj) = ((i + t) as i64 - r as i64, j as i64 - t as i64);
                (ii >= 1 && jj >= 1).then(|| {
                    ((ii as usize, jj as usize), f.from_bigint(&binom_exact(r as u64, t as i64)))
                })
            });
            let expected = DiagVector::from_terms(&p, k - r, terms).unwrap();
            prop_assert_eq!(got, expected);
        }

        #[test]
        fn power_matrix_columns_match_iteration(p in arb_params(), pick in any::<(prop::sample::Index, prop::sample::Index)>()) {
            prop_assume!(p.top() >= 2);
            let s = 2 + pick.0.index(p.top() - 1);
            let r = 1 + pick.1.index(s - 1);
            let mat = p.power_matrix(s, r).unwrap();
            for j in 0..mat.cols() {
                let mut coeffs = vec![FpElem::ZERO; mat.cols()];
                coeffs[j] = FpElem::ONE;
                let v = DiagVector::from_coeffs(&p, s, coeffs).unwrap();
                let image = p.apply_nilpotent_pow(&v, s - r);
                prop_assert_eq!(image.coeffs(), &mat.column(j)[..]);
            }
        }
    }

    #[test]
    fn kernel_of_each_step() {
        for prime in [2u64, 3, 5, 7] {
            for n in 1..=8 {
                for m in 1..=n {
                    let p = Params::new(prime, m, n).unwrap();
                    for k in 2..=p.top() {
                        let t = p.power_matrix(k, k - 1).unwrap();
                        if k <= m {
                            assert_eq!(t.rank(), p.diag_len(k - 1));
                            assert_eq!(t.cols() - t.rank(), 1);
                            let x = p.socle_vector(k).unwrap();
                            assert!(t.mul_vec(x.coeffs()).unwrap().iter().all(|c| c.is_zero()));
                        } else {
                            assert_eq!(t.rank(), t.cols());
                        }
                    }
                }
            }
        }
    }
}
