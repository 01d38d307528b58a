use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;


use super::{CommRing, Coefficient, Integer};
use crate::{Error, Result};

/// A multivariate polynomial with dense exponent vectors and a positive
/// weight attached to every variable.
///
/// Terms are kept in lexicographic order of exponent vectors and never carry
/// a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly<C: Coefficient> {
    grading: Vec<u32>,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coefficient> SparsePoly<C> {
    pub fn zero(grading: Vec<u32>) -> Self {
        assert!(grading.iter().all(|&w| w > 0), "variable weights must be positive");
        Self { grading, terms: BTreeMap::new() }
    }

    /// Polynomial ring in `arity` variables of weight one.
    pub fn zero_standard(arity: usize) -> Self {
        Self::zero(vec![1; arity])
    }

    pub fn constant(grading: Vec<u32>, c: C) -> Self {
        let arity = grading.len();
        Self::zero(grading).with_term(vec![0; arity], c)
    }

    pub fn one(grading: Vec<u32>) -> Self {
        Self::constant(grading, C::one())
    }

    pub fn var(grading: Vec<u32>, i: usize) -> Self {
        let mut e = vec![0; grading.len()];
        e[i] = 1;
        Self::zero(grading).with_term(e, C::one())
    }

    pub fn monomial(grading: Vec<u32>, exps: Vec<u32>, c: C) -> Self {
        Self::zero(grading).with_term(exps, c)
    }

    fn with_term(mut self, exps: Vec<u32>, c: C) -> Self {
        self.add_term(exps, c);
        self
    }

    /// Adds `c * x^exps`, purging the term if it cancels.
    pub fn add_term(&mut self, exps: Vec<u32>, c: C) {
        assert_eq!(exps.len(), self.arity(), "exponent vector has wrong arity");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.grading.len()
    }

    pub fn grading(&self) -> &[u32] {
        &self.grading
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    /// Weighted degree of a monomial.
    pub fn weight(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.grading).map(|(e, w)| e * w).sum()
    }

    /// Largest weighted degree of a term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| self.weight(e)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| self.weight(e));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Terms of weighted degree exactly `d`.
    pub fn homogeneous_component(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| self.weight(e) == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Self { grading: self.grading.clone(), terms }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch { left: self.arity(), right: other.arity() });
        }
        if self.grading != other.grading {
            return Err(Error::GradingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| -c.clone())
    }

    pub fn scale(&self, k: &C) -> Self {
        self.map_coefficients(|c| c.clone() * k.clone())
    }

    /// Product with zero terms purged.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.grading.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.grading.clone());
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> SparsePoly<D> {
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let d = f(c);
                (!d.is_zero()).then(|| (e.clone(), d))
            })
            .collect();
        SparsePoly { grading: self.grading.clone(), terms }
    }

    /// Evaluates the polynomial at `images` in the ring `R`.
    pub fn eval<R: CommRing>(&self, ring: &R, images: &[R::Elem]) -> R::Elem {
        assert_eq!(images.len(), self.arity());
        let mut acc = ring.zero();
        for (e, c) in &self.terms {
            let mut t = ring.from_integer(&c.lift());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = ring.mul(&t, &ring.pow(img, k));
                }
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }
}

/// Polynomial rings over `Z` as a [`CommRing`]; used as symbolic bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub grading: Vec<u32>,
}

impl CommRing for PolyRing {
    type Elem = SparsePoly<Integer>;

    fn zero(&self) -> Self::Elem {
        SparsePoly::zero(self.grading.clone())
    }
    fn one(&self) -> Self::Elem {
        SparsePoly::one(self.grading.clone())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b).expect("same ring")
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b).expect("same ring")
    }
    fn scale(&self, a: &Self::Elem, k: &Integer) -> Self::Elem {
        a.scale(k)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Mod2;
    use num_bigint::BigInt;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn z(v: i64) -> Integer {
        BigInt::from(v)
    }

    fn xy() -> (SparsePoly<Integer>, SparsePoly<Integer>) {
        let g = vec![1, 1];
        (SparsePoly::var(g.clone(), 0), SparsePoly::var(g, 1))
    }

    #[test]
    fn difference_of_squares() {
        let (x, y) = xy();
        let p = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        let expected = x.pow(2).sub(&y.pow(2)).unwrap();
        assert_eq!(p, expected);
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn multiplying_by_one() {
        let (x, y) = xy();
        let p = x.pow(3).add(&y.scale(&z(-7))).unwrap();
        assert_eq!(p.mul(&SparsePoly::one(vec![1, 1])).unwrap(), p);
    }

    #[test]
    fn frobenius_over_f2() {
        let g = vec![1, 1];
        let x: SparsePoly<Mod2> = SparsePoly::var(g.clone(), 0);
        let y: SparsePoly<Mod2> = SparsePoly::var(g, 1);
        let s = x.add(&y).unwrap().pow(2);
        assert_eq!(s, x.pow(2).add(&y.pow(2)).unwrap());
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let p: SparsePoly<Integer> = SparsePoly::var(vec![1, 1], 0);
        let q: SparsePoly<Integer> = SparsePoly::var(vec![1, 1, 1], 0);
        assert_eq!(p.mul(&q), Err(Error::ArityMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn weighted_components() {
        let g = vec![1, 2];
        let x: SparsePoly<Integer> = SparsePoly::var(g.clone(), 0);
        let c: SparsePoly<Integer> = SparsePoly::var(g, 1);
        let p = x.pow(2).add(&c).unwrap().add(&x).unwrap();
        let h = p.homogeneous_component(2);
        assert!(h.is_homogeneous());
        assert_eq!(h.num_terms(), 2);
        assert_eq!(p.homogeneous_component(1), x);
    }

    fn arb_poly() -> impl Strategy<Value = SparsePoly<Integer>> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..5), 0..6).prop_map(|ts| {
            let mut p = SparsePoly::zero(vec![1, 2, 1]);
            for ((a, b, c), k) in ts {
                p.add_term(vec![a, b, c], z(k));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn no_zero_terms_and_degree_additivity(p in arb_poly(), q in arb_poly()) {
            let r = p.mul(&q).unwrap();
            prop_assert!(r.terms().all(|(_, c)| !c.is_zero()));
            if !r.is_zero() {
                prop_assert_eq!(r.degree(), Some(p.degree().unwrap() + q.degree().unwrap()));
            }
        }

        #[test]
        fn components_have_exact_degree(p in arb_poly(), d in 0u32..8) {
            let h = p.homogeneous_component(d);
            prop_assert!(h.terms().all(|(e, _)| h.weight(e) == d));
        }

        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(p.mul(&q).unwrap().mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
            prop_assert_eq!(
                p.mul(&q.add(&r).unwrap()).unwrap(),
                p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap()
            );
            prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        }
    }
}
