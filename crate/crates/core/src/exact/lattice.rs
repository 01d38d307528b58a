use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use super::Integer;
use crate::{Error, Result};

/// A sublattice of `Z^dim` kept as a basis in Hermite normal form.
///
/// Rows are ordered by strictly increasing pivot column, pivots are positive
/// and entries above a pivot are reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<Integer>>,
    pivots: Vec<usize>,
}

fn leading(v: &[Integer]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

fn axpy(y: &mut [Integer], a: &Integer, x: &[Integer]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Self { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_generators<I>(dim: usize, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Integer>>,
    {
        let mut l = Self::zero(dim);
        for g in gens {
            l.insert(g)?;
        }
        l.normalize();
        Ok(l)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Integer>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Adds a generator. The basis stays echelon but is only fully reduced
    /// by [`Lattice::normalize`].
    pub fn insert(&mut self, mut v: Vec<Integer>) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::LengthMismatch { expected: self.dim, got: v.len() });
        }
        let mut j = 0;
        while let Some(l) = leading(&v) {
            while j < self.pivots.len() && self.pivots[j] < l {
                j += 1;
            }
            if j == self.pivots.len() || self.pivots[j] != l {
                if v[l].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                self.rows.insert(j, v);
                self.pivots.insert(j, l);
                return Ok(());
            }
            let b = &self.rows[j];
            let (q, r) = v[l].div_rem(&b[l]);
            if r.is_zero() {
                let q = -q;
                let b = b.clone();
                axpy(&mut v, &q, &b);
            } else {
                let eg = b[l].extended_gcd(&v[l]);
                let (bl, vl) = (b[l].clone(), v[l].clone());
                let mut nb: Vec<Integer> = b.iter().map(|x| x * &eg.x).collect();
                axpy(&mut nb, &eg.y, &v);
                let bq = &vl / &eg.gcd;
                let vq = -(&bl / &eg.gcd);
                let mut nv: Vec<Integer> = b.iter().map(|x| x * &bq).collect();
                axpy(&mut nv, &vq, &v);
                self.rows[j] = nb;
                v = nv;
            }
        }
        Ok(())
    }

    /// Brings the basis into Hermite normal form.
    pub fn normalize(&mut self) {
        for j in 0..self.rows.len() {
            let p = self.pivots[j];
            if self.rows[j][p].is_negative() {
                self.rows[j].iter_mut().for_each(|x| *x = -&*x);
            }
            let (above, rest) = self.rows.split_at_mut(j);
            let row = &rest[0];
            for r in above.iter_mut() {
                let q = r[p].div_floor(&row[p]);
                if !q.is_zero() {
                    axpy(r, &-q, row);
                }
            }
        }
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is not in the lattice.
    pub fn coords(&self, v: &[Integer]) -> Option<Vec<Integer>> {
        assert_eq!(v.len(), self.dim);
        let mut rest = v.to_vec();
        let mut out = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(l) = leading(&rest) {
                if l < p {
                    return None;
                }
            }
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            axpy(&mut rest, &-&q, row);
            out.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(out)
    }

    pub fn contains(&self, v: &[Integer]) -> bool {
        self.coords(v).is_some()
    }

    /// `true` iff every basis row of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// The element with the given coordinates.
    pub fn combine(&self, coords: &[Integer]) -> Vec<Integer> {
        let mut out = alloc::vec![BigInt::zero(); self.dim];
        for (c, row) in coords.iter().zip(&self.rows) {
            axpy(&mut out, c, row);
        }
        out
    }

    /// Sum of two lattices in the same ambient space.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut l = self.clone();
        for r in &other.rows {
            l.insert(r.clone()).expect("same ambient dimension");
        }
        l.normalize();
        l
    }

    /// Index-free check that the lattice is saturated in its rational span,
    /// i.e. `Z^dim / L` is torsion-free.
    pub fn is_saturated(&self) -> bool {
        let m = super::IntMatrix::new(self.dim, self.rows.clone());
        m.smith_invariants().iter().all(|d| d.abs() == BigInt::from(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(xs: &[i64]) -> Vec<Integer> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_basis_of_small_lattice() {
        let l = Lattice::from_generators(2, vec![v(&[2, 4]), v(&[1, 3])]).unwrap();
        assert_eq!(l.rows(), &[v(&[1, 1]), v(&[0, 2])]);
        assert!(l.contains(&v(&[2, 4])));
        assert!(!l.contains(&v(&[0, 1])));
        assert_eq!(l.coords(&v(&[1, 3])), Some(v(&[1, 1])));
    }

    #[test]
    fn dependent_generators_collapse() {
        let l = Lattice::from_generators(3, vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 0, 0])]).unwrap();
        assert_eq!(l.rank(), 1);
        assert!(l.is_saturated());
        let l2 = Lattice::from_generators(3, vec![v(&[2, 4, 6])]).unwrap();
        assert!(!l2.is_saturated());
    }

    #[test]
    fn wrong_length_rejected() {
        let mut l = Lattice::zero(2);
        assert!(l.insert(v(&[1, 2, 3])).is_err());
    }
}
