use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{FlagClass, FlagRing};
use crate::{Error, Result};

/// The two tautological subquotients on the unitary Grassmannian `H_k`:
/// `A_k` spanned by the first `k` lines and `B_k` by the last `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChernKind {
    A,
    B,
}

/// Validated dimension steps of a partial flag type, zero steps removed.
pub fn flag_type(n: usize, steps: &[usize]) -> Result<Vec<usize>> {
    if steps.iter().sum::<usize>() != n {
        return Err(Error::InvalidFlagType(alloc::format!("steps {steps:?} do not sum to {n}")));
    }
    Ok(steps.iter().copied().filter(|&s| s > 0).collect())
}

fn blocks(steps: &[usize]) -> Vec<core::ops::Range<usize>> {
    let mut start = 0;
    steps
        .iter()
        .map(|&s| {
            start += s;
            start - s..start
        })
        .collect()
}

impl FlagRing {
    /// `e_0, .., e_m` of the variables in `vars`.
    pub fn elementary_all(self: &Arc<Self>, vars: core::ops::Range<usize>) -> Vec<FlagClass> {
        let mut e = alloc::vec![self.one()];
        for v in vars {
            e.push(self.zero());
            for i in (1..e.len()).rev() {
                let t = e[i - 1].mul_x(v);
                e[i] = &e[i] + &t;
            }
        }
        e
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || 2 * k > self.n() {
            return Err(Error::OutOfRange { what: "k", detail: alloc::format!("k = {k}, n = {}", self.n()) });
        }
        Ok(())
    }

    /// All Chern classes `c_0..c_k` of `A_k` or `B_k`.
    ///
    /// With `x_v = -c_1(L_v)` for the line subquotients `L_v`,
    /// `c_i(A_k) = (-1)^i e_i(x_0..x_{k-1})` and
    /// `c_i(B_k) = e_i(x_{n-k}..x_{n-1})`.
    pub fn chern_classes(self: &Arc<Self>, kind: ChernKind, k: usize) -> Result<Vec<FlagClass>> {
        self.check_k(k)?;
        let n = self.n();
        Ok(match kind {
            ChernKind::A => self
                .elementary_all(0..k)
                .into_iter()
                .enumerate()
                .map(|(i, e)| if i % 2 == 1 { -e } else { e })
                .collect(),
            ChernKind::B => self.elementary_all(n - k..n),
        })
    }

    pub fn chern_symbol(self: &Arc<Self>, kind: ChernKind, k: usize, i: usize) -> Result<FlagClass> {
        if i > k {
            return Err(Error::OutOfRange { what: "i", detail: alloc::format!("i = {i} > k = {k}") });
        }
        Ok(self.chern_classes(kind, k)?.swap_remove(i))
    }

    /// `c_0(-T_k), .., c_D(-T_k)` with `T_k = A_k ⊕ B_k` and `D` the
    /// dimension of the flag variety.
    pub fn total_chern_minus_t(self: &Arc<Self>, k: usize) -> Result<Vec<FlagClass>> {
        let a = self.chern_classes(ChernKind::A, k)?;
        let b = self.chern_classes(ChernKind::B, k)?;
        let mut c = alloc::vec![self.zero(); 2 * k + 1];
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                c[i + j] = &c[i + j] + &(ai * bj);
            }
        }
        Ok(crate::bundle::inverse_series(self, &c, self.dim()))
    }

    /// Total Chern class of the tangent bundle of the partial flag variety
    /// of the given type, `prod (1 + x_i - x_j)` over `i` in an earlier block
    /// than `j`.
    pub fn tangent_chern(self: &Arc<Self>, steps: &[usize]) -> Result<FlagClass> {
        let steps = flag_type(self.n(), steps)?;
        let bl = blocks(&steps);
        let mut c = self.one();
        for (p, bi) in bl.iter().enumerate() {
            for bj in &bl[p + 1..] {
                for i in bi.clone() {
                    for j in bj.clone() {
                        c = &(&c + &c.mul_x(i)) - &c.mul_x(j);
                    }
                }
            }
        }
        Ok(c)
    }

    /// Product over blocks of the relative staircase monomials; it pushes
    /// forward to 1 on the partial flag variety.
    pub fn relative_top(self: &Arc<Self>, steps: &[usize]) -> Result<FlagClass> {
        let steps = flag_type(self.n(), steps)?;
        let mut c = self.one();
        for b in blocks(&steps) {
            let m = b.len();
            for (t, v) in b.enumerate() {
                for _ in 0..m - 1 - t {
                    c = c.mul_x(v);
                }
            }
        }
        Ok(c)
    }

    /// Generators of the subring of classes pulled back from the partial
    /// flag variety: the elementary symmetric functions of each block.
    pub fn block_generators(self: &Arc<Self>, steps: &[usize]) -> Result<Vec<FlagClass>> {
        let steps = flag_type(self.n(), steps)?;
        let mut out = Vec::new();
        for b in blocks(&steps) {
            out.extend(self.elementary_all(b).into_iter().skip(1));
        }
        Ok(out)
    }

    /// Steenrod total operation lifted to the integral endomorphism
    /// `x_v ↦ x_v + x_v^2`; reduce mod 2 for the operation on `Ch`.
    pub fn steenrod_lift(self: &Arc<Self>, c: &FlagClass) -> FlagClass {
        let terms: Vec<_> = c.terms().collect();
        let coeffs = self.horner(&terms, self.one().coeffs().to_vec(), &|v, src| {
            let once = self.mul_var(v, src);
            let twice = self.mul_var(v, &once);
            once.into_iter().zip(twice).map(|(a, b)| a + b).collect()
        });
        self.from_coeffs(coeffs).expect("length")
    }

    /// Total Steenrod operation on `Ch = CH / 2`, coefficients in `{0, 1}`.
    pub fn steenrod_total(self: &Arc<Self>, c: &FlagClass) -> FlagClass {
        self.steenrod_lift(c).mod2()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::SignedPermutation;
    use num_bigint::BigInt;

    #[test]
    fn projective_line_tangent() {
        let r = FlagRing::new(2).unwrap();
        let c = r.tangent_chern(&[1, 1]).unwrap();
        assert_eq!(c, &r.one() + &r.x(0).scale(&BigInt::from(2)));
        assert_eq!(c.degree(), BigInt::from(2));
    }

    #[test]
    fn euler_characteristics() {
        let r3 = FlagRing::new(3).unwrap();
        assert_eq!(r3.tangent_chern(&[1, 1, 1]).unwrap().degree(), BigInt::from(6));
        let r4 = FlagRing::new(4).unwrap();
        for (steps, chi) in [(&[1, 2, 1][..], 12), (&[2, 0, 2][..], 6), (&[1, 1, 1, 1][..], 24)] {
            let t = r4.tangent_chern(steps).unwrap();
            let mu = r4.relative_top(steps).unwrap();
            assert_eq!((&t * &mu).degree(), BigInt::from(chi), "{steps:?}");
        }
        assert!(r4.tangent_chern(&[1, 1]).is_err());
    }

    #[test]
    fn sigma_swaps_chern_families() {
        let r = FlagRing::new(5).unwrap();
        let s = SignedPermutation::sigma(&r);
        for k in 1..=2 {
            let a = r.chern_classes(ChernKind::A, k).unwrap();
            let b = r.chern_classes(ChernKind::B, k).unwrap();
            for i in 0..=k {
                assert_eq!(s.apply(&a[i]), b[i]);
                assert_eq!(s.apply(&b[i]), a[i]);
            }
        }
        assert!(r.chern_symbol(ChernKind::A, 3, 1).is_err());
        assert!(r.chern_symbol(ChernKind::A, 2, 3).is_err());
        assert_eq!(r.chern_symbol(ChernKind::B, 2, 0).unwrap(), r.one());
    }

    #[test]
    fn steenrod_is_multiplicative_and_squares_top_piece() {
        let r = FlagRing::new(4).unwrap();
        let s = SignedPermutation::sigma(&r);
        let u = &r.x(0) + &(&r.x(1) * &r.x(3));
        let v = &(&r.x(2) * &r.x(2)) - &r.x(1);
        let lhs = r.steenrod_total(&(&u * &v));
        let rhs = (&r.steenrod_lift(&u) * &r.steenrod_lift(&v)).mod2();
        assert_eq!(lhs, rhs);
        let w = &r.x(1) * &r.x(3);
        assert!(r.steenrod_lift(&w).component(4).eq_mod2(&(&w * &w)));
        assert!(r.steenrod_total(&s.apply(&v)).eq_mod2(&s.apply(&r.steenrod_lift(&v))));
    }

    #[test]
    fn minus_tangent_chern_classes_are_even_in_the_range() {
        let r = FlagRing::new(4).unwrap();
        let c = r.total_chern_minus_t(1).unwrap();
        assert_eq!(c[0], r.one());
        for i in 3..=5 {
            assert!(c[i].is_even() && !c[i].is_zero(), "c_{i}");
        }
        assert!(!c[2].is_even());
    }
}
