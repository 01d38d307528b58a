use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::One;

use super::ring::compositions;
use super::{FlagClass, FlagRing};
use crate::exact::Integer;
use crate::{Error, Result};

/// A ring map `x_v ↦ sign_v * x_{perm_v}` validated against the relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    negate: Vec<bool>,
}

impl SignedPermutation {
    /// Checks that `perm` is a bijection and that the induced map sends every
    /// `e_i(x_0..x_{n-1})` into the relation ideal.
    pub fn new(ring: &Arc<FlagRing>, perm: Vec<usize>, negate: Vec<bool>) -> Result<Self> {
        let n = ring.n();
        if perm.len() != n || negate.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: perm.len().max(negate.len()) });
        }
        let mut seen = alloc::vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidAutomorphism);
            }
            seen[p] = true;
        }
        let s = SignedPermutation { perm, negate };
        for i in 1..=n as u32 {
            let e: Vec<Vec<u32>> = compositions(n, i).into_iter().filter(|c| c.iter().all(|&x| x <= 1)).collect();
            let one = Integer::one();
            let terms: Vec<(&[u32], &Integer)> = e.iter().map(|m| (m.as_slice(), &one)).collect();
            if !s.eval(ring, &terms).is_zero() {
                return Err(Error::InvalidAutomorphism);
            }
        }
        Ok(s)
    }

    /// `x_v ↦ -x_{n-1-v}`.
    pub fn sigma(ring: &Arc<FlagRing>) -> Self {
        let n = ring.n();
        Self::new(ring, (0..n).rev().collect(), alloc::vec![true; n]).expect("sigma preserves the relations")
    }

    pub fn identity(ring: &Arc<FlagRing>) -> Self {
        let n = ring.n();
        Self::new(ring, (0..n).collect(), alloc::vec![false; n]).expect("identity")
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn negated(&self) -> &[bool] {
        &self.negate
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        // other sends x_v to ±x_{p(v)}, then self sends that to ±±x_{q(p(v))}.
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let negate = other.perm.iter().zip(&other.negate).map(|(&p, &s)| s ^ self.negate[p]).collect();
        SignedPermutation { perm, negate }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.negate.iter().all(|s| !s)
    }

    fn eval(&self, ring: &Arc<FlagRing>, terms: &[(&[u32], &Integer)]) -> FlagClass {
        let coeffs = ring.horner(terms, ring.one().coeffs().to_vec(), &|v, src| {
            let mut out = ring.mul_var(self.perm[v], src);
            if self.negate[v] {
                out.iter_mut().for_each(|c| *c = -core::mem::take(c));
            }
            out
        });
        ring.from_coeffs(coeffs).expect("length")
    }

    pub fn apply(&self, c: &FlagClass) -> FlagClass {
        let ring = c.ring();
        assert_eq!(ring.n(), self.perm.len(), "automorphism of a different flag ring");
        let terms: Vec<(&[u32], &Integer)> = c.terms().collect();
        self.eval(ring, &terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn sigma_is_an_involution_preserving_degree() {
        for n in 2..=5 {
            let r = FlagRing::new(n).unwrap();
            let s = SignedPermutation::sigma(&r);
            assert!(s.compose(&s).is_identity());
            for idx in 0..r.rank() {
                let b = r.basis_class(idx);
                let sb = s.apply(&b);
                assert_eq!(s.apply(&sb), b);
                assert_eq!(sb.degree(), b.degree());
            }
            assert_eq!(s.apply(&r.point()), r.point());
        }
    }

    #[test]
    fn mixed_signs_are_rejected() {
        let r = FlagRing::new(3).unwrap();
        assert!(SignedPermutation::new(&r, vec![0, 1, 2], vec![true, false, false]).is_err());
        assert!(SignedPermutation::new(&r, vec![0, 0, 2], vec![false; 3]).is_err());
        let swap = SignedPermutation::new(&r, vec![1, 0, 2], vec![false; 3]).unwrap();
        assert_eq!(swap.apply(&r.x(0)), r.x(1));
        let neg = SignedPermutation::new(&r, vec![0, 1, 2], vec![true; 3]).unwrap();
        assert_eq!(neg.apply(&r.point()).degree(), BigInt::from(-1));
    }
}
