use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::coeff::{abs, is_even};
use super::{Integer, Lattice};
use crate::{Error, Result};

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    cols: usize,
    data: Vec<Vec<Integer>>,
}

impl IntMatrix {
    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn new(cols: usize, data: Vec<Vec<Integer>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Self { cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::new(cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.data.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Integer>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<Integer>> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Integer {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Integer) {
        self.data[i][j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.nrows());
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                t.data[j][i] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.nrows(), "dimension mismatch");
        let mut out = Self::zeros(self.nrows(), other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.data[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Integer]) -> Vec<Integer> {
        assert_eq!(v.len(), self.nrows());
        let mut out = vec![BigInt::zero(); self.cols];
        for (c, row) in v.iter().zip(&self.data) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o += c * x;
            }
        }
        out
    }

    fn row_axpy(&mut self, dst: usize, q: &Integer, src: usize) {
        if q.is_zero() {
            return;
        }
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src);
            (&mut lo[dst], &hi[0])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst);
            (&mut hi[0], &lo[src])
        };
        for (x, y) in a.iter_mut().zip(b) {
            if !y.is_zero() {
                *x += q * y;
            }
        }
    }

    /// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular and
    /// `H = U * self`.
    ///
    /// Nonzero rows of `H` come first, have strictly increasing pivot columns
    /// and positive pivots, and entries above each pivot lie in `[0, pivot)`.
    /// Elimination always pivots on the entry of least absolute value, which
    /// keeps intermediate entries small.
    pub fn hnf(&self) -> (IntMatrix, IntMatrix) {
        let m = self.nrows();
        let mut h = self.clone();
        let mut u = IntMatrix::identity(m);
        let mut r = 0;
        for col in 0..self.cols {
            if r == m {
                break;
            }
            loop {
                let best = (r..m)
                    .filter(|&i| !h.data[i][col].is_zero())
                    .min_by(|&a, &b| abs(&h.data[a][col]).cmp(&abs(&h.data[b][col])));
                let Some(p) = best else { break };
                h.data.swap(r, p);
                u.data.swap(r, p);
                let mut done = true;
                for i in r + 1..m {
                    if h.data[i][col].is_zero() {
                        continue;
                    }
                    let q = -(&h.data[i][col] / &h.data[r][col]);
                    h.row_axpy(i, &q, r);
                    u.row_axpy(i, &q, r);
                    if !h.data[i][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h.data[r][col].is_zero() {
                continue;
            }
            if h.data[r][col].is_negative() {
                let neg = -BigInt::one();
                h.data[r].iter_mut().for_each(|x| *x = &*x * &neg);
                u.data[r].iter_mut().for_each(|x| *x = &*x * &neg);
            }
            for i in 0..r {
                let q = -h.data[i][col].div_floor(&h.data[r][col]);
                h.row_axpy(i, &q, r);
                u.row_axpy(i, &q, r);
            }
            r += 1;
        }
        (h, u)
    }

    /// Rank over `Q`.
    /// Inverse of a square matrix with determinant `±1`.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if self.nrows() != self.cols {
            return None;
        }
        let (h, u) = self.hnf();
        (h == IntMatrix::identity(self.cols)).then_some(u)
    }

    /// Entries reduced into `{0, 1}`.
    pub fn mod2(&self) -> IntMatrix {
        let two = BigInt::from(2);
        IntMatrix { cols: self.cols, data: self.data.iter().map(|r| r.iter().map(|x| x.mod_floor(&two)).collect()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows(), self.cols), (other.nrows(), other.cols), "shape mismatch");
        IntMatrix {
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect(),
        }
    }

    pub fn scale(&self, k: &Integer) -> Self {
        IntMatrix { cols: self.cols, data: self.data.iter().map(|r| r.iter().map(|x| x * k).collect()).collect() }
    }

    pub fn is_even(&self) -> bool {
        self.data.iter().flatten().all(is_even)
    }

    pub fn rank(&self) -> usize {
        let (h, _) = self.hnf();
        h.data.iter().filter(|r| r.iter().any(|x| !x.is_zero())).count()
    }

    /// Basis of the left kernel `{ y : y * self = 0 }`, as rows.
    pub fn left_kernel(&self) -> IntMatrix {
        let (h, u) = self.hnf();
        let rows = h
            .data
            .iter()
            .zip(u.data)
            .filter(|(hr, _)| hr.iter().all(Zero::is_zero))
            .map(|(_, ur)| ur)
            .collect();
        IntMatrix::new(self.nrows(), rows)
    }

    /// Invariant factors `d_1 | d_2 | ...` of the Smith normal form
    /// (nonzero ones only).
    pub fn smith_invariants(&self) -> Vec<Integer> {
        let mut a = self.clone();
        loop {
            let (h, _) = a.hnf();
            let h = IntMatrix::new(
                h.cols,
                h.data.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect(),
            );
            let diagonal = h
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
            if diagonal {
                let mut d: Vec<Integer> = (0..h.nrows()).map(|i| h.data[i][i].abs()).collect();
                for i in 0..d.len() {
                    for j in i + 1..d.len() {
                        let g = d[i].gcd(&d[j]);
                        let l = d[i].lcm(&d[j]);
                        d[i] = g;
                        d[j] = l;
                    }
                }
                return d;
            }
            a = h.transpose();
        }
    }
}

/// Outcome of [`span_membership`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `candidate = sum witness[i] * vectors[i]`.
    Member { witness: Vec<Integer> },
    NotMember,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// Decides whether `candidate` lies in the integer row span of `vectors`,
/// producing an exact witness combination when it does.
pub fn span_membership(vectors: &[Vec<Integer>], candidate: &[Integer]) -> Result<Membership> {
    let len = candidate.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != len) {
        return Err(Error::LengthMismatch { expected: len, got: bad.len() });
    }
    if vectors.is_empty() {
        return Ok(if candidate.iter().all(Zero::is_zero) {
            Membership::Member { witness: Vec::new() }
        } else {
            Membership::NotMember
        });
    }
    let a = IntMatrix::new(len, vectors.to_vec());
    let (h, u) = a.hnf();
    let mut rest = candidate.to_vec();
    let mut y = vec![BigInt::zero(); vectors.len()];
    for (i, row) in h.data.iter().enumerate() {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else { break };
        if rest[..p].iter().any(|x| !x.is_zero()) {
            return Ok(Membership::NotMember);
        }
        let (q, r) = rest[p].div_rem(&row[p]);
        if !r.is_zero() {
            return Ok(Membership::NotMember);
        }
        for (x, hx) in rest.iter_mut().zip(row) {
            *x -= &q * hx;
        }
        y[i] = q;
    }
    if rest.iter().any(|x| !x.is_zero()) {
        return Ok(Membership::NotMember);
    }
    let witness = u.left_apply(&y);
    debug_assert_eq!(a.left_apply(&witness), candidate);
    Ok(Membership::Member { witness })
}

/// Rank over `F_2` of the reductions of the given rows.
pub fn rank_mod2(rows: &[Vec<Integer>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let words = first.len().div_ceil(64);
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for row in rows {
        let mut bits = vec![0u64; words];
        for (j, x) in row.iter().enumerate() {
            if !is_even(x) {
                bits[j / 64] |= 1 << (j % 64);
            }
        }
        for (p, b) in &basis {
            if bits[p / 64] >> (p % 64) & 1 == 1 {
                bits.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
            }
        }
        if let Some(w) = bits.iter().position(|&w| w != 0) {
            let p = w * 64 + bits[w].trailing_zeros() as usize;
            for (_, b) in basis.iter_mut() {
                if b[p / 64] >> (p % 64) & 1 == 1 {
                    b.iter_mut().zip(&bits).for_each(|(x, y)| *x ^= y);
                }
            }
            basis.push((p, bits));
        }
    }
    basis.len()
}

/// Inverse over `F_2` of a square matrix, with entries in `{0, 1}`.
pub fn inverse_mod2(m: &IntMatrix) -> Option<IntMatrix> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "square matrix");
    let mut a: Vec<Vec<bool>> = m.data.iter().map(|r| r.iter().map(|x| !is_even(x)).collect()).collect();
    let mut inv: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col])?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..n {
            if r != col && a[r][col] {
                let (src_a, src_i) = (a[col].clone(), inv[col].clone());
                a[r].iter_mut().zip(&src_a).for_each(|(x, y)| *x ^= y);
                inv[r].iter_mut().zip(&src_i).for_each(|(x, y)| *x ^= y);
            }
        }
    }
    let data = inv.into_iter().map(|r| r.into_iter().map(|b| BigInt::from(b as u8)).collect()).collect();
    Some(IntMatrix { cols: n, data })
}

/// `dim_{F_2} (L / S) ⊗ Z/2` for `S ⊆ L`, both given by generators.
pub fn quotient_rank_mod2(lattice_gens: &[Vec<Integer>], sublattice_gens: &[Vec<Integer>]) -> Result<usize> {
    let dim = lattice_gens
        .first()
        .or(sublattice_gens.first())
        .map_or(0, |r| r.len());
    let lattice = Lattice::from_generators(dim, lattice_gens.iter().cloned())?;
    let mut coords = Vec::with_capacity(sublattice_gens.len());
    for s in sublattice_gens {
        if s.len() != dim {
            return Err(Error::LengthMismatch { expected: dim, got: s.len() });
        }
        coords.push(lattice.coords(s).ok_or(Error::NotContained)?);
    }
    Ok(lattice.rank() - rank_mod2(&coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Integer> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn inverses() {
        let m = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse_unimodular().unwrap();
        assert_eq!(m.mul(&inv), IntMatrix::identity(2));
        assert!(IntMatrix::from_i64(&[&[2, 0], &[0, 1]]).inverse_unimodular().is_none());
        let m2 = IntMatrix::from_i64(&[&[1, 1, 0], &[0, 3, 1], &[1, 0, 0]]);
        let i2 = inverse_mod2(&m2).unwrap();
        assert_eq!(m2.mul(&i2).mod2(), IntMatrix::identity(3));
        assert!(inverse_mod2(&IntMatrix::from_i64(&[&[2, 1], &[0, 1]])).is_none());
    }

    #[test]
    fn identity_is_its_own_hnf() {
        let i = IntMatrix::identity(3);
        let (h, u) = i.hnf();
        assert_eq!(h, i);
        assert_eq!(u, i);
    }

    #[test]
    fn span_membership_examples() {
        let parity = span_membership(&[v(&[2, 0]), v(&[0, 2])], &v(&[1, 1])).unwrap();
        assert_eq!(parity, Membership::NotMember);
        let m = span_membership(&[v(&[1, 1]), v(&[0, 2])], &v(&[1, 3])).unwrap();
        assert_eq!(m, Membership::Member { witness: v(&[1, 1]) });
    }

    #[test]
    fn quotient_rank_examples() {
        let z2 = [v(&[1, 0]), v(&[0, 1])];
        assert_eq!(quotient_rank_mod2(&z2, &[v(&[2, 0]), v(&[0, 2])]), Ok(2));
        assert_eq!(quotient_rank_mod2(&z2, &[v(&[1, 0]), v(&[0, 2])]), Ok(1));
        assert_eq!(
            quotient_rank_mod2(&[v(&[2, 0]), v(&[0, 1])], &[v(&[1, 0])]),
            Err(Error::NotContained)
        );
    }

    #[test]
    fn left_kernel_annihilates() {
        let a = IntMatrix::from_i64(&[&[1, 2], &[2, 4], &[3, 7]]);
        let k = a.left_kernel();
        assert_eq!(k.nrows(), 1);
        assert!(a.transpose().mul(&k.transpose()).rows().iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn rank_mod2_counts_independent_rows() {
        assert_eq!(rank_mod2(&[v(&[1, 1, 0]), v(&[0, 1, 1]), v(&[1, 0, 1])]), 2);
        assert_eq!(rank_mod2(&[v(&[2, 4])]), 0);
    }
}
