use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{ChernKind, FlagClass, FlagRing, SignedPermutation};
use crate::exact::{CommRing, IntMatrix, Integer, InvolutionQuotient, Lattice};
use crate::{Error, Result};

/// A graded subring of a [`FlagRing`] given by homogeneous generators,
/// computed one codimension at a time.
///
/// When a fundamental class `μ` is attached (a class pushing forward to 1
/// along the projection to a partial flag variety), `degree(y)` is
/// `deg(y μ)`.
#[derive(Clone, Debug)]
pub struct FlagSubring {
    ring: Arc<FlagRing>,
    generators: Vec<FlagClass>,
    pieces: Vec<Lattice>,
    basis: Vec<Vec<FlagClass>>,
    mu: FlagClass,
}

fn generator_codims(generators: &[FlagClass]) -> Result<Vec<usize>> {
    generators
        .iter()
        .map(|g| match g.codims().as_slice() {
            [] => Ok(0),
            [d] => Ok(*d as usize),
            _ => Err(Error::GradingMismatch),
        })
        .collect()
}

impl FlagSubring {
    /// The subring generated by `generators`, with `mu` as fundamental class.
    pub fn with_fundamental(ring: &Arc<FlagRing>, generators: Vec<FlagClass>, mu: FlagClass) -> Result<Self> {
        let codims = generator_codims(&generators)?;
        let mut pieces = Vec::with_capacity(ring.dim() + 1);
        let mut basis: Vec<Vec<FlagClass>> = Vec::with_capacity(ring.dim() + 1);
        pieces.push(Lattice::from_generators(1, [alloc::vec![Integer::from(1)]])?);
        basis.push(alloc::vec![ring.one()]);
        for d in 1..=ring.dim() {
            let width = ring.indices_in_codim(d).len();
            let mut lat = Lattice::zero(width);
            for (g, &w) in generators.iter().zip(&codims) {
                if w == 0 || w > d || g.is_zero() {
                    continue;
                }
                for b in &basis[d - w] {
                    lat.insert((b * g).codim_coords(d))?;
                }
            }
            lat.normalize();
            basis.push(lat.rows().iter().map(|row| ring.from_codim_coords(d, row)).collect());
            pieces.push(lat);
        }
        Ok(FlagSubring { ring: ring.clone(), generators, pieces, basis, mu })
    }

    /// The subring generated by `generators` with the point class of the
    /// complete flag variety as fundamental class.
    pub fn new(ring: &Arc<FlagRing>, generators: Vec<FlagClass>) -> Result<Self> {
        Self::with_fundamental(ring, generators, ring.one())
    }

    /// Classes pulled back from the partial flag variety of the given type.
    pub fn partial_flag(ring: &Arc<FlagRing>, steps: &[usize]) -> Result<Self> {
        let gens = ring.block_generators(steps)?;
        let mu = ring.relative_top(steps)?;
        Self::with_fundamental(ring, gens, mu)
    }

    /// The unitary Grassmannian `H_k` of isotropic `k`-planes, modelled as
    /// flags of type `(k, n-2k, k)` and generated by the Chern classes of
    /// `A_k` and `B_k`.
    pub fn unitary(ring: &Arc<FlagRing>, k: usize) -> Result<Self> {
        let mut gens = ring.chern_classes(ChernKind::A, k)?;
        gens.extend(ring.chern_classes(ChernKind::B, k)?);
        gens.retain(|g| !g.codims().is_empty() && g.codims() != [0]);
        let n = ring.n();
        let mu = ring.relative_top(&[k, n - 2 * k, k])?;
        Self::with_fundamental(ring, gens, mu)
    }

    pub fn ring(&self) -> &Arc<FlagRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[FlagClass] {
        &self.generators
    }

    pub fn fundamental(&self) -> &FlagClass {
        &self.mu
    }

    /// HNF lattice of the codimension-`d` piece in the block coordinates of
    /// the ambient basis.
    pub fn piece(&self, d: usize) -> Option<&Lattice> {
        self.pieces.get(d)
    }

    pub fn basis(&self, d: usize) -> &[FlagClass] {
        self.basis.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn rank(&self, d: usize) -> usize {
        self.pieces.get(d).map_or(0, Lattice::rank)
    }

    pub fn graded_ranks(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.pieces.iter().map(Lattice::rank).collect();
        while r.last() == Some(&0) {
            r.pop();
        }
        r
    }

    pub fn total_rank(&self) -> usize {
        self.pieces.iter().map(Lattice::rank).sum()
    }

    /// Highest codimension with a nonzero piece.
    pub fn top_codim(&self) -> usize {
        self.graded_ranks().len().saturating_sub(1)
    }

    pub fn degree(&self, y: &FlagClass) -> Integer {
        (y * &self.mu).degree()
    }

    /// Coordinates of a homogeneous class of codimension `d` in the basis of
    /// the piece, or `None` if it is not in the subring.
    pub fn coords(&self, y: &FlagClass, d: usize) -> Option<Vec<Integer>> {
        if y.codims().iter().any(|&c| c as usize != d) {
            return None;
        }
        self.pieces.get(d)?.coords(&y.codim_coords(d))
    }

    pub fn contains(&self, y: &FlagClass) -> bool {
        y.codims().into_iter().all(|d| self.coords(&y.component(d as usize), d as usize).is_some())
    }

    /// `deg(b_u b_v)` for the bases in codimensions `d` and `top - d`.
    pub fn pairing_matrix(&self, d: usize) -> IntMatrix {
        let top = self.top_codim();
        let other = self.basis(top.saturating_sub(d));
        let rows = self.basis(d).iter().map(|u| other.iter().map(|v| self.degree(&(u * v))).collect()).collect();
        IntMatrix::new(other.len(), rows)
    }

    /// Matrix of `s` on the codimension-`d` piece, acting on row vectors.
    pub fn action_matrix(&self, s: &SignedPermutation, d: usize) -> Result<IntMatrix> {
        let rows = self
            .basis(d)
            .iter()
            .map(|b| self.coords(&s.apply(b), d).ok_or(Error::SubringNotStable { codim: d }))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::new(self.rank(d), rows))
    }

    /// `(S^σ / (1 + σ) S)` in codimension `d`.
    pub fn invariants_mod_norms(&self, s: &SignedPermutation, d: usize) -> Result<InvariantPiece> {
        let quotient = InvolutionQuotient::new(self.action_matrix(s, d)?);
        Ok(InvariantPiece { codim: d, basis: self.basis(d).to_vec(), quotient, lattice: self.pieces[d].clone() })
    }
}

/// One graded piece of the invariants modulo norms of an involution.
#[derive(Clone, Debug)]
pub struct InvariantPiece {
    codim: usize,
    basis: Vec<FlagClass>,
    quotient: InvolutionQuotient,
    lattice: Lattice,
}

impl InvariantPiece {
    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn quotient(&self) -> &InvolutionQuotient {
        &self.quotient
    }

    /// `dim_{F_2}` of the piece.
    pub fn rank(&self) -> usize {
        self.quotient.quotient_rank()
    }

    fn to_class(&self, coords: &[Integer]) -> FlagClass {
        let ring = self.basis.first().map(FlagClass::ring).cloned();
        let mut acc = ring.as_ref().map(|r| r.zero());
        for (b, c) in self.basis.iter().zip(coords) {
            if !c.is_zero() {
                acc = acc.map(|a| &a + &b.scale(c));
            }
        }
        acc.expect("nonempty basis")
    }

    fn coords(&self, y: &FlagClass) -> Option<Vec<Integer>> {
        if y.codims().iter().any(|&c| c as usize != self.codim) {
            return None;
        }
        self.lattice.coords(&y.codim_coords(self.codim))
    }

    /// Integral invariant classes whose images form a basis.
    pub fn representatives(&self) -> Vec<FlagClass> {
        self.quotient.representatives().iter().map(|v| self.to_class(v)).collect()
    }

    pub fn is_invariant(&self, y: &FlagClass) -> bool {
        self.coords(y).is_some_and(|v| self.quotient.is_invariant(&v))
    }

    pub fn is_norm(&self, y: &FlagClass) -> bool {
        self.coords(y).is_some_and(|v| self.quotient.is_norm(&v))
    }

    /// Dimension of the span of the images of `ys`; `None` if some class is
    /// not an invariant of the piece.
    pub fn span_rank(&self, ys: &[FlagClass]) -> Option<usize> {
        let vs = ys.iter().map(|y| self.coords(y)).collect::<Option<Vec<_>>>()?;
        self.quotient.span_rank(&vs)
    }
}

/// HNF basis of the codimension-`d` part of the subring generated by
/// homogeneous `generators`.
pub fn subring_graded_basis(ring: &Arc<FlagRing>, generators: &[FlagClass], d: usize) -> Result<Lattice> {
    let s = FlagSubring::new(ring, generators.to_vec())?;
    Ok(s.piece(d).cloned().unwrap_or_else(|| Lattice::zero(0)))
}

impl CommRing for FlagSubring {
    type Elem = FlagClass;

    fn zero(&self) -> FlagClass {
        self.ring.zero()
    }
    fn one(&self) -> FlagClass {
        self.ring.one()
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
    use num_bigint::BigInt;
    use num_traits::{One, Signed};

    #[test]
    fn unitary_grassmannian_ranks() {
        let r = FlagRing::new(4).unwrap();
        let h1 = FlagSubring::unitary(&r, 1).unwrap();
        assert_eq!(h1.rank(0), 1);
        assert_eq!(h1.rank(1), 2);
        assert_eq!(h1.top_codim(), 5);
        assert_eq!(h1.rank(5), 1);
        assert_eq!(h1.total_rank(), 12);
        let h2 = FlagSubring::unitary(&r, 2).unwrap();
        assert_eq!(h2.total_rank(), 6);
        assert_eq!(h2.top_codim(), 4);
        let full = FlagSubring::partial_flag(&r, &[1, 2, 1]).unwrap();
        assert_eq!(full.graded_ranks(), h1.graded_ranks());
    }

    #[test]
    fn subring_pairing_is_unimodular() {
        let r = FlagRing::new(5).unwrap();
        for k in 1..=2 {
            let h = FlagSubring::unitary(&r, k).unwrap();
            for d in 0..=h.top_codim() {
                let inv = h.pairing_matrix(d).smith_invariants();
                assert!(inv.iter().all(|s| s.is_one()), "k={k} d={d}");
            }
            let top = &h.basis(h.top_codim())[0];
            assert_eq!(h.degree(top).abs(), BigInt::one());
        }
    }

    #[test]
    fn invariants_mod_norms_on_h1() {
        let r = FlagRing::new(4).unwrap();
        let h = FlagSubring::unitary(&r, 1).unwrap();
        let s = SignedPermutation::sigma(&r);
        let ranks: Vec<usize> = (0..=5).map(|d| h.invariants_mod_norms(&s, d).unwrap().rank()).collect();
        assert_eq!(ranks, vec![1, 0, 1, 1, 0, 1]);
        let p = h.invariants_mod_norms(&s, 1).unwrap();
        let y = &h.basis(1)[0];
        assert!(p.is_norm(&(y + &s.apply(y))));
    }

    #[test]
    fn graded_basis_function() {
        let r = FlagRing::new(3).unwrap();
        let gens = vec![r.x(0), -&r.x(2)];
        assert_eq!(subring_graded_basis(&r, &gens, 0).unwrap().rank(), 1);
        assert_eq!(subring_graded_basis(&r, &gens, 1).unwrap().rank(), 2);
    }
}
