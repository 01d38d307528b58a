//! Chow rings of projective bundles `P(E)` and fibre products
//! `P(E_1) ×_X P(E_2)` over an arbitrary base ring.
//!
//! `ξ` satisfies `sum_i c_i(E) ξ^{r-i} = 0` and `π_*(ξ^{r-1+m}) = s_m(E)`,
//! where `s(E) c(E) = 1`.

use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::exact::{CommRing, Integer, SparsePoly};
use crate::{Error, Result};

/// A vector bundle on the base: its rank and Chern classes `c_0 = 1, .., c_r`.
#[derive(Clone, Debug)]
pub struct Bundle<E> {
    pub rank: usize,
    pub chern: Vec<E>,
}

impl<E> Bundle<E> {
    pub fn new(rank: usize, chern: Vec<E>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::OutOfRange { what: "rank", detail: "bundle rank must be positive".into() });
        }
        if chern.len() != rank + 1 {
            return Err(Error::LengthMismatch { expected: rank + 1, got: chern.len() });
        }
        Ok(Bundle { rank, chern })
    }
}

/// Coefficients of `1 / c` up to degree `top`, for `c_0 = 1`.
pub fn inverse_series<R: CommRing>(ring: &R, c: &[R::Elem], top: usize) -> Vec<R::Elem> {
    let mut s = vec![ring.one()];
    for m in 1..=top {
        let mut acc = ring.zero();
        for j in 1..=m.min(c.len().saturating_sub(1)) {
            acc = ring.sub(&acc, &ring.mul(&c[j], &s[m - j]));
        }
        s.push(acc);
    }
    s
}

/// An element of the relative algebra: coefficients of `ξ_1^p ξ_2^q` with
/// `p < r_1`, `q < r_2`, stored at `p * r_2 + q`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelElement<E> {
    coeffs: Vec<E>,
}

impl<E> RelElement<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }
}

pub struct RelBundleAlgebra<R: CommRing> {
    base: R,
    bundles: Vec<Bundle<R::Elem>>,
    // powers[t][p]: normal form of ξ_t^p in the basis 1, ξ_t, .., ξ_t^{r_t-1}.
    powers: Vec<RefCell<Vec<Vec<R::Elem>>>>,
}

impl<R: CommRing> RelBundleAlgebra<R> {
    /// One or two bundles; with two the algebra is that of the fibre product.
    pub fn new(base: R, bundles: Vec<Bundle<R::Elem>>) -> Result<Self> {
        if bundles.is_empty() || bundles.len() > 2 {
            return Err(Error::OutOfRange { what: "bundles", detail: alloc::format!("{} bundles", bundles.len()) });
        }
        let powers = bundles.iter().map(|_| RefCell::new(Vec::new())).collect();
        Ok(RelBundleAlgebra { base, bundles, powers })
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn bundles(&self) -> &[Bundle<R::Elem>] {
        &self.bundles
    }

    fn ranks(&self) -> (usize, usize) {
        (self.bundles[0].rank, self.bundles.get(1).map_or(1, |b| b.rank))
    }

    fn size(&self) -> usize {
        let (r1, r2) = self.ranks();
        r1 * r2
    }

    fn power(&self, t: usize, p: usize) -> Vec<R::Elem> {
        let b = &self.bundles[t];
        let r = b.rank;
        let mut cache = self.powers[t].borrow_mut();
        while cache.len() <= p {
            let next = match cache.len() {
                q if q < r => {
                    let mut v = vec![self.base.zero(); r];
                    v[q] = self.base.one();
                    v
                }
                _ => {
                    let prev = cache.last().expect("nonempty");
                    let mut v = vec![self.base.zero(); r];
                    v[1..r].clone_from_slice(&prev[..r - 1]);
                    let top = &prev[r - 1];
                    // ξ^r = -sum_{i ≥ 1} c_i ξ^{r-i}
                    for i in 1..=r {
                        v[r - i] = self.base.sub(&v[r - i], &self.base.mul(top, &b.chern[i]));
                    }
                    v
                }
            };
            cache.push(next);
        }
        cache[p].clone()
    }

    pub fn zero(&self) -> RelElement<R::Elem> {
        RelElement { coeffs: vec![self.base.zero(); self.size()] }
    }

    pub fn one(&self) -> RelElement<R::Elem> {
        self.pullback(&self.base.one())
    }

    pub fn pullback(&self, beta: &R::Elem) -> RelElement<R::Elem> {
        let mut e = self.zero();
        e.coeffs[0] = beta.clone();
        e
    }

    /// Normal form of `β ξ_1^p ξ_2^q`.
    pub fn monomial(&self, beta: &R::Elem, p: usize, q: usize) -> RelElement<R::Elem> {
        let (_, r2) = self.ranks();
        let u = self.power(0, p);
        let v = if self.bundles.len() == 2 {
            self.power(1, q)
        } else {
            assert_eq!(q, 0, "second variable in a one-bundle algebra");
            vec![self.base.one()]
        };
        let mut e = self.zero();
        for (i, ui) in u.iter().enumerate() {
            if self.base.is_zero(ui) {
                continue;
            }
            let bu = self.base.mul(beta, ui);
            for (j, vj) in v.iter().enumerate() {
                if !self.base.is_zero(vj) {
                    e.coeffs[i * r2 + j] = self.base.mul(&bu, vj);
                }
            }
        }
        e
    }

    pub fn xi(&self, t: usize) -> RelElement<R::Elem> {
        let one = self.base.one();
        if t == 0 {
            self.monomial(&one, 1, 0)
        } else {
            self.monomial(&one, 0, 1)
        }
    }

    pub fn add(&self, a: &RelElement<R::Elem>, b: &RelElement<R::Elem>) -> RelElement<R::Elem> {
        RelElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| self.base.add(x, y)).collect() }
    }

    pub fn sub(&self, a: &RelElement<R::Elem>, b: &RelElement<R::Elem>) -> RelElement<R::Elem> {
        RelElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| self.base.sub(x, y)).collect() }
    }

    pub fn mul(&self, a: &RelElement<R::Elem>, b: &RelElement<R::Elem>) -> RelElement<R::Elem> {
        let (_, r2) = self.ranks();
        let mut acc = self.zero();
        for (u, au) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(au) {
                continue;
            }
            for (v, bv) in b.coeffs.iter().enumerate() {
                if self.base.is_zero(bv) {
                    continue;
                }
                let m = self.monomial(&self.base.mul(au, bv), u / r2 + v / r2, u % r2 + v % r2);
                acc = self.add(&acc, &m);
            }
        }
        acc
    }

    /// Normal form of a polynomial in `ξ_1` (and `ξ_2`) with integer
    /// coefficients.
    pub fn from_poly(&self, p: &SparsePoly<Integer>) -> Result<RelElement<R::Elem>> {
        if p.arity() != self.bundles.len() {
            return Err(Error::ArityMismatch { left: self.bundles.len(), right: p.arity() });
        }
        let mut acc = self.zero();
        for (e, c) in p.terms() {
            let q = e.get(1).copied().unwrap_or(0) as usize;
            acc = self.add(&acc, &self.monomial(&self.base.from_integer(c), e[0] as usize, q));
        }
        Ok(acc)
    }

    /// `π_*`: the coefficient of `ξ_1^{r_1-1} ξ_2^{r_2-1}`.
    pub fn pushforward(&self, e: &RelElement<R::Elem>) -> R::Elem {
        e.coeffs[self.size() - 1].clone()
    }

    /// Push forward along the `t`-th factor only, leaving the coefficients of
    /// the powers of the other `ξ`.
    pub fn pushforward_factor(&self, e: &RelElement<R::Elem>, t: usize) -> Vec<R::Elem> {
        let (r1, r2) = self.ranks();
        if t == 0 {
            (0..r2).map(|q| e.coeffs[(r1 - 1) * r2 + q].clone()).collect()
        } else {
            (0..r1).map(|p| e.coeffs[p * r2 + r2 - 1].clone()).collect()
        }
    }

    /// `s_m(E_t)`, computed by series inversion in the base.
    pub fn segre(&self, t: usize, m: usize) -> R::Elem {
        inverse_series(&self.base, &self.bundles[t].chern, m).swap_remove(m)
    }

    /// `c_i(-E_t) = π_*(ξ_t^{r-1+i})`, through the Grothendieck relation.
    pub fn chern_of_minus_bundle_via_pushforward(&self, t: usize, i: usize) -> R::Elem {
        let r = self.bundles[t].rank;
        self.power(t, r - 1 + i)[r - 1].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::PolyRing;
    use num_bigint::BigInt;

    type P = SparsePoly<Integer>;

    // Free base on Chern symbols c_1..c_r of degrees 1..r, then d_1..d_s.
    fn symbolic(r: usize, s: usize) -> (PolyRing, Bundle<P>, Option<Bundle<P>>) {
        let grading: Vec<u32> = (1..=r as u32).chain(1..=s as u32).collect();
        let ring = PolyRing { grading: grading.clone() };
        let mut c = vec![ring.one()];
        c.extend((0..r).map(|i| P::var(grading.clone(), i)));
        let e = Bundle::new(r, c).unwrap();
        let f = (s > 0).then(|| {
            let mut d = vec![ring.one()];
            d.extend((0..s).map(|i| P::var(grading.clone(), r + i)));
            Bundle::new(s, d).unwrap()
        });
        (ring, e, f)
    }

    #[test]
    fn low_order_pushforwards() {
        let (ring, e, _) = symbolic(3, 0);
        let c1 = e.chern[1].clone();
        let alg = RelBundleAlgebra::new(ring.clone(), vec![e]).unwrap();
        let one = ring.one();
        assert_eq!(alg.pushforward(&alg.monomial(&one, 2, 0)), ring.one());
        assert!(ring.is_zero(&alg.pushforward(&alg.monomial(&one, 1, 0))));
        assert_eq!(alg.pushforward(&alg.monomial(&one, 3, 0)), ring.neg(&c1));
    }

    #[test]
    fn minus_chern_matches_series_inversion() {
        for r in 1..=4 {
            let (ring, e, _) = symbolic(r, 0);
            let direct = inverse_series(&ring, &e.chern, 8);
            let alg = RelBundleAlgebra::new(ring, vec![e]).unwrap();
            for (i, d) in direct.iter().enumerate() {
                assert_eq!(&alg.chern_of_minus_bundle_via_pushforward(0, i), d, "r={r} i={i}");
            }
        }
        let (ring, e, _) = symbolic(2, 0);
        let g = ring.grading.clone();
        let alg = RelBundleAlgebra::new(ring.clone(), vec![e]).unwrap();
        let c1 = P::var(g.clone(), 0);
        let c2 = P::var(g, 1);
        assert_eq!(alg.chern_of_minus_bundle_via_pushforward(0, 2), c1.pow(2).sub(&c2).unwrap());
        assert_eq!(alg.chern_of_minus_bundle_via_pushforward(0, 0), ring.one());
    }

    #[test]
    fn line_bundle_case() {
        let ring = PolyRing { grading: vec![1] };
        let t = P::var(vec![1], 0);
        let alg = RelBundleAlgebra::new(ring.clone(), vec![Bundle::new(1, vec![ring.one(), t.clone()]).unwrap()]).unwrap();
        for i in 0..5 {
            assert_eq!(alg.chern_of_minus_bundle_via_pushforward(0, i), t.neg().pow(i as u32));
        }
        let beta = t.pow(2).scale(&BigInt::from(3));
        assert_eq!(alg.pushforward(&alg.pullback(&beta)), beta);
    }

    #[test]
    fn projection_formula() {
        let (ring, e, _) = symbolic(3, 0);
        let g = ring.grading.clone();
        let alg = RelBundleAlgebra::new(ring.clone(), vec![e]).unwrap();
        let beta = P::var(g.clone(), 0).mul(&P::var(g.clone(), 2)).unwrap().add(&P::var(g, 1)).unwrap();
        let x = alg.add(&alg.monomial(&ring.one(), 4, 0), &alg.monomial(&beta, 2, 0));
        let lhs = alg.pushforward(&alg.mul(&alg.pullback(&beta), &x));
        assert_eq!(lhs, ring.mul(&beta, &alg.pushforward(&x)));
    }

    #[test]
    fn two_bundle_pushforward_is_iterated() {
        let (ring, e, f) = symbolic(2, 3);
        let f = f.unwrap();
        let single_e = RelBundleAlgebra::new(ring.clone(), vec![e.clone()]).unwrap();
        let single_f = RelBundleAlgebra::new(ring.clone(), vec![f.clone()]).unwrap();
        let alg = RelBundleAlgebra::new(ring.clone(), vec![e, f]).unwrap();
        let one = ring.one();
        for p in 0..6 {
            for q in 0..6 {
                let m = alg.monomial(&one, p, q);
                let both = alg.pushforward(&m);
                let iterated = ring.mul(
                    &single_e.pushforward(&single_e.monomial(&one, p, 0)),
                    &single_f.pushforward(&single_f.monomial(&one, q, 0)),
                );
                assert_eq!(both, iterated, "p={p} q={q}");
                let first = alg.pushforward_factor(&m, 0);
                let other = alg.pushforward_factor(&m, 1);
                assert_eq!(first[2], both);
                assert_eq!(other[1], both);
                let seg = if p >= 1 && q >= 2 { ring.mul(&alg.segre(0, p - 1), &alg.segre(1, q - 2)) } else { ring.zero() };
                assert_eq!(both, seg);
            }
        }
    }
}
