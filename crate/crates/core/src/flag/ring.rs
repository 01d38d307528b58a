use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::exact::{IntMatrix, Integer, SparsePoly};
use crate::{Error, Result};

/// The Chow ring of the complete flag variety of an `n`-space,
/// `Z[x_0..x_{n-1}] / (e_1, .., e_n)`, with the staircase monomial basis
/// `x^α`, `α_i ≤ n - 1 - i`.
///
/// Variables are indexed from 0. The top staircase monomial
/// `x_0^{n-1} x_1^{n-2} .. x_{n-2}` is the class of a point.
pub struct FlagRing {
    n: usize,
    radix: Vec<usize>,
    stride: Vec<usize>,
    basis: Vec<Vec<u32>>,
    codims: Vec<u32>,
    by_codim: Vec<Vec<usize>>,
    position: Vec<usize>,
    top: usize,
    // mul_x[v][b]: normal form of x_v times basis element b.
    mul_x: Vec<Vec<Vec<(u32, Integer)>>>,
}

impl fmt::Debug for FlagRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FlagRing").field("n", &self.n).finish()
    }
}

/// All exponent vectors of length `len` with entries summing to `d`.
pub(crate) fn compositions(len: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(len: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == len {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=d).rev() {
            cur.push(e);
            go(len, d - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(len, d, &mut Vec::with_capacity(len), &mut out);
    out
}

struct Reducer<'a> {
    ring: &'a FlagRing,
    memo: BTreeMap<Vec<u32>, Vec<(u32, Integer)>>,
    h_cache: BTreeMap<(usize, u32), Vec<Vec<u32>>>,
}

impl Reducer<'_> {
    fn h_monomials(&mut self, len: usize, d: u32) -> Vec<Vec<u32>> {
        self.h_cache.entry((len, d)).or_insert_with(|| compositions(len, d)).clone()
    }

    // Normal form of x^beta as a sparse vector over the basis.
    fn reduce(&mut self, beta: &[u32]) -> Vec<(u32, Integer)> {
        let n = self.ring.n;
        let total: u32 = beta.iter().sum();
        if total as usize > self.ring.dim() {
            return Vec::new();
        }
        let Some(i) = (0..n).find(|&i| beta[i] as usize > n - 1 - i) else {
            return vec![(self.ring.index_unchecked(beta) as u32, Integer::one())];
        };
        if let Some(hit) = self.memo.get(beta) {
            return hit.clone();
        }
        // h_m(x_0, .., x_i) = 0 for m = n - i, so
        // x_i^m = -sum_{j<m} x_i^j h_{m-j}(x_0, .., x_{i-1}).
        // Each step lowers beta in reverse lexicographic order.
        let m = (n - i) as u32;
        let mut acc: BTreeMap<u32, Integer> = BTreeMap::new();
        for j in 0..m {
            for gamma in self.h_monomials(i, m - j) {
                let mut next = beta.to_vec();
                next[i] = beta[i] - m + j;
                for (t, g) in gamma.iter().enumerate() {
                    next[t] += g;
                }
                for (idx, c) in self.reduce(&next) {
                    *acc.entry(idx).or_insert_with(Integer::zero) -= c;
                }
            }
        }
        let out: Vec<(u32, Integer)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.memo.insert(beta.to_vec(), out.clone());
        out
    }
}

impl FlagRing {
    pub fn new(n: usize) -> Result<Arc<Self>> {
        if n < 2 {
            return Err(Error::OutOfRange { what: "n", detail: alloc::format!("n = {n}, need n >= 2") });
        }
        let radix: Vec<usize> = (0..n).map(|i| n - i).collect();
        let mut stride = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            stride[i] = stride[i + 1] * radix[i + 1];
        }
        let size = stride[0] * radix[0];
        let mut basis = Vec::with_capacity(size);
        for idx in 0..size {
            let mut rem = idx;
            let mut exps = vec![0u32; n];
            for i in 0..n {
                exps[i] = (rem / stride[i]) as u32;
                rem %= stride[i];
            }
            basis.push(exps);
        }
        let codims: Vec<u32> = basis.iter().map(|e| e.iter().sum()).collect();
        let dim = n * (n - 1) / 2;
        let mut by_codim = vec![Vec::new(); dim + 1];
        let mut position = vec![0; size];
        for (idx, &c) in codims.iter().enumerate() {
            position[idx] = by_codim[c as usize].len();
            by_codim[c as usize].push(idx);
        }
        let top = size - 1;
        let mut ring = FlagRing { n, radix, stride, basis, codims, by_codim, position, top, mul_x: Vec::new() };
        let mut tables = Vec::with_capacity(n);
        {
            let mut red = Reducer { ring: &ring, memo: BTreeMap::new(), h_cache: BTreeMap::new() };
            for v in 0..n {
                let mut table = Vec::with_capacity(size);
                for idx in 0..size {
                    let mut beta = red.ring.basis[idx].clone();
                    beta[v] += 1;
                    table.push(red.reduce(&beta));
                }
                tables.push(table);
            }
        }
        ring.mul_x = tables;
        Ok(Arc::new(ring))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Complex dimension `n(n-1)/2` of the flag variety.
    pub fn dim(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Number of basis monomials, `n!`.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn codim_of(&self, idx: usize) -> u32 {
        self.codims[idx]
    }

    /// Basis indices of codimension `d`, in increasing order.
    pub fn indices_in_codim(&self, d: usize) -> &[usize] {
        self.by_codim.get(d).map_or(&[], |v| v.as_slice())
    }

    /// Position of a basis index inside its codimension block.
    pub fn position_in_codim(&self, idx: usize) -> usize {
        self.position[idx]
    }

    pub fn top_index(&self) -> usize {
        self.top
    }

    fn index_unchecked(&self, exps: &[u32]) -> usize {
        exps.iter().zip(&self.stride).map(|(&e, &s)| e as usize * s).sum()
    }

    /// Basis index of a staircase exponent vector.
    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        if exps.len() != self.n || exps.iter().zip(&self.radix).any(|(&e, &r)| e as usize >= r) {
            return None;
        }
        Some(self.index_unchecked(exps))
    }

    pub(crate) fn mul_var(&self, v: usize, src: &[Integer]) -> Vec<Integer> {
        let mut out = vec![Integer::zero(); src.len()];
        for (idx, c) in src.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, t) in &self.mul_x[v][idx] {
                let slot = &mut out[*j as usize];
                if t.is_one() {
                    *slot += c;
                } else if (-t).is_one() {
                    *slot -= c;
                } else {
                    *slot += c * t;
                }
            }
        }
        out
    }

    // Evaluates sum_t coeff_t * prod_v op_v^{e_{t,v}} applied to `start`,
    // sharing partial products along a trie over the exponent vectors.
    pub(crate) fn horner<F>(&self, terms: &[(&[u32], &Integer)], start: Vec<Integer>, op: &F) -> Vec<Integer>
    where
        F: Fn(usize, &[Integer]) -> Vec<Integer>,
    {
        let mut acc = vec![Integer::zero(); self.rank()];
        let mut sorted: Vec<(&[u32], &Integer)> = terms.to_vec();
        sorted.sort();
        self.horner_rec(&sorted, 0, start, op, &mut acc);
        acc
    }

    fn horner_rec<F>(&self, terms: &[(&[u32], &Integer)], var: usize, start: Vec<Integer>, op: &F, acc: &mut [Integer])
    where
        F: Fn(usize, &[Integer]) -> Vec<Integer>,
    {
        if start.iter().all(Zero::is_zero) {
            return;
        }
        if var == self.n {
            let total: Integer = terms.iter().map(|(_, c)| (*c).clone()).sum();
            if !total.is_zero() {
                for (a, s) in acc.iter_mut().zip(&start) {
                    if !s.is_zero() {
                        *a += s * &total;
                    }
                }
            }
            return;
        }
        let mut power = start;
        let mut e = 0u32;
        let mut lo = 0;
        while lo < terms.len() {
            let g = terms[lo].0[var];
            let mut hi = lo;
            while hi < terms.len() && terms[hi].0[var] == g {
                hi += 1;
            }
            while e < g {
                power = op(var, &power);
                e += 1;
            }
            if power.iter().all(Zero::is_zero) {
                return;
            }
            let next = if hi == terms.len() { core::mem::take(&mut power) } else { power.clone() };
            self.horner_rec(&terms[lo..hi], var + 1, next, op, acc);
            lo = hi;
        }
    }
}

/// An element of a [`FlagRing`], stored densely over the staircase basis.
#[derive(Clone)]
pub struct FlagClass {
    ring: Arc<FlagRing>,
    coeffs: Vec<Integer>,
}

impl PartialEq for FlagClass {
    fn eq(&self, other: &Self) -> bool {
        self.ring.n == other.ring.n && self.coeffs == other.coeffs
    }
}

impl Eq for FlagClass {}

impl fmt::Debug for FlagClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (exps, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*x^{exps:?}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FlagRing {
    /// `deg(u v)` for basis classes `u` of codimension `d` and `v` of
    /// codimension `dim - d`.
    pub fn pairing_matrix(self: &Arc<Self>, d: usize) -> IntMatrix {
        let lo = self.indices_in_codim(d);
        let hi = self.indices_in_codim(self.dim() - d);
        let rows = lo
            .iter()
            .map(|&u| hi.iter().map(|&v| (&self.basis_class(u) * &self.basis_class(v)).degree()).collect())
            .collect();
        IntMatrix::new(hi.len(), rows)
    }

    pub fn pairing_is_unimodular(self: &Arc<Self>) -> bool {
        (0..=self.dim()).all(|d| self.pairing_matrix(d).smith_invariants().iter().all(|s| s.is_one()))
    }

    pub fn zero(self: &Arc<Self>) -> FlagClass {
        FlagClass { ring: self.clone(), coeffs: vec![Integer::zero(); self.rank()] }
    }

    pub fn one(self: &Arc<Self>) -> FlagClass {
        self.basis_class(0)
    }

    pub fn constant(self: &Arc<Self>, c: Integer) -> FlagClass {
        let mut z = self.zero();
        z.coeffs[0] = c;
        z
    }

    pub fn basis_class(self: &Arc<Self>, idx: usize) -> FlagClass {
        let mut z = self.zero();
        z.coeffs[idx] = Integer::one();
        z
    }

    /// The variable `x_v`.
    pub fn x(self: &Arc<Self>, v: usize) -> FlagClass {
        assert!(v < self.n, "variable index out of range");
        FlagClass { ring: self.clone(), coeffs: self.mul_var(v, &self.one().coeffs) }
    }

    /// The point class `x_0^{n-1} x_1^{n-2} .. x_{n-2}`.
    pub fn point(self: &Arc<Self>) -> FlagClass {
        self.basis_class(self.top)
    }

    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<Integer>) -> Result<FlagClass> {
        if coeffs.len() != self.rank() {
            return Err(Error::LengthMismatch { expected: self.rank(), got: coeffs.len() });
        }
        Ok(FlagClass { ring: self.clone(), coeffs })
    }

    /// Assembles a homogeneous class from coordinates in the codimension-`d`
    /// block of the basis.
    pub fn from_codim_coords(self: &Arc<Self>, d: usize, coords: &[Integer]) -> FlagClass {
        let idxs = self.indices_in_codim(d);
        assert_eq!(idxs.len(), coords.len(), "coordinate length");
        let mut z = self.zero();
        for (&i, c) in idxs.iter().zip(coords) {
            z.coeffs[i] = c.clone();
        }
        z
    }

    /// Normal form of a polynomial in `x_0..x_{n-1}`.
    pub fn normal_form(self: &Arc<Self>, p: &SparsePoly<Integer>) -> Result<FlagClass> {
        if p.arity() != self.n {
            return Err(Error::ArityMismatch { left: self.n, right: p.arity() });
        }
        let terms: Vec<(&[u32], &Integer)> = p.terms().map(|(e, c)| (e.as_slice(), c)).collect();
        let coeffs = self.horner(&terms, self.one().coeffs, &|v, src| self.mul_var(v, src));
        Ok(FlagClass { ring: self.clone(), coeffs })
    }

    /// The image of `c` under the ring endomorphism `x_v ↦ images[v]`.
    pub fn substitute(self: &Arc<Self>, c: &FlagClass, images: &[FlagClass]) -> FlagClass {
        assert_eq!(images.len(), self.n, "one image per variable");
        let terms: Vec<(Vec<u32>, Integer)> = c.terms().map(|(e, v)| (e.to_vec(), v.clone())).collect();
        let refs: Vec<(&[u32], &Integer)> = terms.iter().map(|(e, v)| (e.as_slice(), v)).collect();
        let coeffs = self.horner(&refs, self.one().coeffs, &|v, src| {
            let cls = FlagClass { ring: self.clone(), coeffs: src.to_vec() };
            (&cls * &images[v]).coeffs
        });
        FlagClass { ring: self.clone(), coeffs }
    }
}

impl FlagClass {
    pub fn ring(&self) -> &Arc<FlagRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn coefficient(&self, exps: &[u32]) -> Integer {
        self.ring.index_of(exps).map_or_else(Integer::zero, |i| self.coeffs[i].clone())
    }

    /// Nonzero terms as (staircase exponents, coefficient), in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Integer)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.ring.basis[i].as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Codimensions carrying a nonzero coefficient, ascending.
    pub fn codims(&self) -> Vec<u32> {
        let mut seen: Vec<u32> = self.terms().map(|(e, _)| e.iter().sum()).collect();
        seen.sort_unstable();
        seen.dedup();
        seen
    }

    pub fn is_homogeneous(&self) -> bool {
        self.codims().len() <= 1
    }

    pub fn component(&self, d: usize) -> FlagClass {
        let mut z = self.ring.zero();
        for &i in self.ring.indices_in_codim(d) {
            z.coeffs[i] = self.coeffs[i].clone();
        }
        z
    }

    /// Coordinates of the codimension-`d` component in the block basis.
    pub fn codim_coords(&self, d: usize) -> Vec<Integer> {
        self.ring.indices_in_codim(d).iter().map(|&i| self.coeffs[i].clone()).collect()
    }

    /// Coefficient of the point class.
    pub fn degree(&self) -> Integer {
        self.coeffs[self.ring.top].clone()
    }

    pub fn scale(&self, k: &Integer) -> FlagClass {
        FlagClass { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn mul_x(&self, v: usize) -> FlagClass {
        FlagClass { ring: self.ring.clone(), coeffs: self.ring.mul_var(v, &self.coeffs) }
    }

    pub fn pow(&self, e: u32) -> FlagClass {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients reduced into `{0, 1}`.
    pub fn mod2(&self) -> FlagClass {
        FlagClass {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c.mod_floor(&Integer::from(2))).collect(),
        }
    }

    pub fn eq_mod2(&self, other: &FlagClass) -> bool {
        (self - other).is_even()
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_even())
    }

    /// Exact division by `k`.
    pub fn div_exact(&self, k: &Integer) -> Result<FlagClass> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(Error::NotDivisible(alloc::format!("coefficient {c} by {k}")));
            }
            coeffs.push(q);
        }
        Ok(FlagClass { ring: self.ring.clone(), coeffs })
    }

    pub fn max_abs_coefficient(&self) -> Integer {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(Integer::zero)
    }

    pub fn to_poly(&self) -> SparsePoly<Integer> {
        let mut p = SparsePoly::zero_standard(self.ring.n);
        for (e, c) in self.terms() {
            p.add_term(e.to_vec(), c.clone());
        }
        p
    }

    fn check_same(&self, other: &FlagClass) {
        assert_eq!(self.ring.n, other.ring.n, "classes from different flag rings");
    }
}

impl Add for &FlagClass {
    type Output = FlagClass;
    fn add(self, rhs: &FlagClass) -> FlagClass {
        self.check_same(rhs);
        FlagClass { ring: self.ring.clone(), coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &FlagClass {
    type Output = FlagClass;
    fn sub(self, rhs: &FlagClass) -> FlagClass {
        self.check_same(rhs);
        FlagClass { ring: self.ring.clone(), coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &FlagClass {
    type Output = FlagClass;
    fn neg(self) -> FlagClass {
        FlagClass { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &FlagClass {
    type Output = FlagClass;
    fn mul(self, rhs: &FlagClass) -> FlagClass {
        self.check_same(rhs);
        let nz = |c: &FlagClass| c.coeffs.iter().filter(|x| !x.is_zero()).count();
        let (sparse, dense) = if nz(self) <= nz(rhs) { (self, rhs) } else { (rhs, self) };
        let terms: Vec<(&[u32], &Integer)> = sparse.terms().collect();
        let ring = &self.ring;
        let coeffs = ring.horner(&terms, dense.coeffs.clone(), &|v, src| ring.mul_var(v, src));
        FlagClass { ring: ring.clone(), coeffs }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FlagClass {
            type Output = FlagClass;
            fn $m(self, rhs: FlagClass) -> FlagClass { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for FlagClass {
    type Output = FlagClass;
    fn neg(self) -> FlagClass {
        -&self
    }
}

impl crate::exact::CommRing for Arc<FlagRing> {
    type Elem = FlagClass;

    fn zero(&self) -> FlagClass {
        FlagRing::zero(self)
    }
    fn one(&self) -> FlagClass {
        FlagRing::one(self)
    }
    fn add(&self, a: &FlagClass, b: &FlagClass) -> FlagClass {
        a + b
    }
    fn neg(&self, a: &FlagClass) -> FlagClass {
        -a
    }
    fn mul(&self, a: &FlagClass, b: &FlagClass) -> FlagClass {
        a * b
    }
    fn scale(&self, a: &FlagClass, k: &Integer) -> FlagClass {
        a.scale(k)
    }
    fn is_zero(&self, a: &FlagClass) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Lattice;
    use num_bigint::BigInt;

    fn poly(n: usize, terms: &[(&[u32], i64)]) -> SparsePoly<Integer> {
        let mut p = SparsePoly::zero_standard(n);
        for (e, c) in terms {
            p.add_term(e.to_vec(), BigInt::from(*c));
        }
        p
    }

    #[test]
    fn basis_has_n_factorial_elements() {
        for (n, f) in [(2, 2), (3, 6), (4, 24), (5, 120)] {
            assert_eq!(FlagRing::new(n).unwrap().rank(), f);
        }
        assert!(FlagRing::new(1).is_err());
    }

    #[test]
    fn elementary_symmetric_relations_vanish() {
        let r = FlagRing::new(4).unwrap();
        for i in 1..=4 {
            let mut e = r.zero();
            for subset in compositions(4, i as u32).into_iter().filter(|c| c.iter().all(|&x| x <= 1)) {
                e = &e + &r.normal_form(&poly(4, &[(&subset, 1)])).unwrap();
            }
            assert!(e.is_zero(), "e_{i}");
        }
    }

    #[test]
    fn rank_two_reduction() {
        let r = FlagRing::new(2).unwrap();
        assert!(r.normal_form(&poly(2, &[(&[2, 0], 1)])).unwrap().is_zero());
        assert_eq!(r.normal_form(&poly(2, &[(&[0, 1], 1)])).unwrap(), -&r.x(0));
    }

    #[test]
    fn top_staircase_is_normal() {
        let r = FlagRing::new(4).unwrap();
        let top = r.normal_form(&poly(4, &[(&[3, 2, 1, 0], 1)])).unwrap();
        assert_eq!(top, r.point());
        assert_eq!(top.degree(), BigInt::from(1));
        assert_eq!(r.x(2).degree(), BigInt::from(0));
    }

    #[test]
    fn normal_form_is_idempotent_and_multiplicative() {
        let r = FlagRing::new(4).unwrap();
        let p = poly(4, &[(&[0, 3, 1, 2], 3), (&[1, 0, 0, 4], -2), (&[2, 2, 0, 0], 1)]);
        let q = poly(4, &[(&[1, 1, 1, 1], 1), (&[0, 0, 3, 0], 5)]);
        let np = r.normal_form(&p).unwrap();
        assert_eq!(r.normal_form(&np.to_poly()).unwrap(), np);
        let pq = r.normal_form(&p.mul(&q).unwrap()).unwrap();
        assert_eq!(pq, &np * &r.normal_form(&q).unwrap());
    }

    #[test]
    fn poincare_pairing_is_unimodular() {
        for n in 2..=4 {
            let r = FlagRing::new(n).unwrap();
            for d in 0..=r.dim() {
                let lo = r.indices_in_codim(d);
                let hi = r.indices_in_codim(r.dim() - d);
                assert_eq!(lo.len(), hi.len());
                let m = r.pairing_matrix(d);
                assert!(m.smith_invariants().iter().all(|s| s.is_one()), "n={n} d={d}");
                assert!(Lattice::from_generators(hi.len(), m.rows().to_vec()).unwrap().is_saturated());
            }
        }
    }
}
