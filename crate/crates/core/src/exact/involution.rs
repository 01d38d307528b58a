use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{rank_mod2, span_membership, Integer, IntMatrix, Lattice, Membership};

/// The quotient `K / N` of the invariants `K = ker(σ - 1)` of an involution
/// `σ` on `Z^r` by the norms `N = (1 + σ) Z^r`.
///
/// Vectors are row vectors and `σ` acts on the right: `v ↦ v * sigma`.
/// `K / N` is killed by 2, so it is an `F_2`-vector space.
#[derive(Clone, Debug)]
pub struct InvolutionQuotient {
    sigma: IntMatrix,
    invariants: Lattice,
    norm_gens: Vec<Vec<Integer>>,
    norms: Lattice,
    norm_coords: Vec<Vec<Integer>>,
    norm_rank2: usize,
}

impl InvolutionQuotient {
    pub fn new(sigma: IntMatrix) -> Self {
        let r = sigma.nrows();
        assert_eq!(r, sigma.ncols(), "involution must be square");
        let mut shifted = sigma.clone();
        let mut norm = sigma.clone();
        for i in 0..r {
            shifted.set(i, i, sigma.get(i, i) - Integer::one());
            norm.set(i, i, sigma.get(i, i) + Integer::one());
        }
        let kernel = shifted.left_kernel();
        let invariants = Lattice::from_generators(r, kernel.into_rows()).expect("same length");
        let norm_gens = norm.into_rows();
        let norms = Lattice::from_generators(r, norm_gens.iter().cloned()).expect("same length");
        let norm_coords: Vec<Vec<Integer>> = norms
            .rows()
            .iter()
            .map(|v| invariants.coords(v).expect("norms are invariant"))
            .collect();
        let norm_rank2 = rank_mod2(&norm_coords);
        Self { sigma, invariants, norm_gens, norms, norm_coords, norm_rank2 }
    }

    pub fn ambient_rank(&self) -> usize {
        self.sigma.nrows()
    }

    pub fn sigma(&self) -> &IntMatrix {
        &self.sigma
    }

    pub fn invariants(&self) -> &Lattice {
        &self.invariants
    }

    pub fn norms(&self) -> &Lattice {
        &self.norms
    }

    /// `dim_{F_2} K / N`.
    pub fn quotient_rank(&self) -> usize {
        self.invariants.rank() - self.norm_rank2
    }

    pub fn apply(&self, v: &[Integer]) -> Vec<Integer> {
        self.sigma.left_apply(v)
    }

    pub fn is_involution(&self) -> bool {
        self.sigma.mul(&self.sigma) == IntMatrix::identity(self.ambient_rank())
    }

    pub fn is_invariant(&self, v: &[Integer]) -> bool {
        self.apply(v) == v
    }

    pub fn is_norm(&self, v: &[Integer]) -> bool {
        self.norms.contains(v)
    }

    /// A `y` with `v = y + σ(y)`, when one exists.
    pub fn norm_witness(&self, v: &[Integer]) -> Option<Vec<Integer>> {
        match span_membership(&self.norm_gens, v).expect("same length") {
            Membership::Member { witness } => Some(witness),
            Membership::NotMember => None,
        }
    }

    /// Dimension of the span of the classes of `vs` in `K / N`; `None` if
    /// some vector is not invariant.
    pub fn span_rank(&self, vs: &[Vec<Integer>]) -> Option<usize> {
        let mut rows = self.norm_coords.clone();
        for v in vs {
            rows.push(self.invariants.coords(v)?);
        }
        Some(rank_mod2(&rows) - self.norm_rank2)
    }

    /// Integral invariant vectors whose classes form a basis of `K / N`.
    pub fn representatives(&self) -> Vec<Vec<Integer>> {
        let mut rows = self.norm_coords.clone();
        let mut current = self.norm_rank2;
        let mut reps = Vec::new();
        for (i, b) in self.invariants.rows().iter().enumerate() {
            let mut e = alloc::vec![Integer::zero(); self.invariants.rank()];
            e[i] = Integer::one();
            rows.push(e);
            let r = rank_mod2(&rows);
            if r > current {
                current = r;
                reps.push(b.clone());
            } else {
                rows.pop();
            }
        }
        reps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn v(xs: &[i64]) -> Vec<Integer> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn swap_has_trivial_quotient() {
        let q = InvolutionQuotient::new(IntMatrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert!(q.is_involution());
        assert_eq!(q.invariants().rank(), 1);
        assert_eq!(q.quotient_rank(), 0);
        assert_eq!(q.norm_witness(&v(&[1, 1])), Some(v(&[1, 0])).or(q.norm_witness(&v(&[1, 1]))));
    }

    #[test]
    fn identity_quotient_is_mod_two() {
        let q = InvolutionQuotient::new(IntMatrix::identity(3));
        assert_eq!(q.quotient_rank(), 3);
        assert!(q.is_norm(&v(&[2, 0, 4])));
        assert!(!q.is_norm(&v(&[1, 0, 0])));
        assert_eq!(q.span_rank(&[v(&[1, 0, 0]), v(&[3, 0, 2])]), Some(1));
        assert_eq!(q.representatives().len(), 3);
    }

    #[test]
    fn negation_has_no_invariants() {
        let q = InvolutionQuotient::new(IntMatrix::from_i64(&[&[-1]]));
        assert_eq!(q.invariants().rank(), 0);
        assert_eq!(q.quotient_rank(), 0);
        assert_eq!(q.span_rank(&[v(&[1])]), None);
    }
}
