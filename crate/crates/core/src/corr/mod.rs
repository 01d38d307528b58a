//! Correspondences on cellular varieties, in Künneth coordinates.
//!
//! A class on `X × X` is a matrix `A` with `α = Σ A[u][v] b_u × b_v` for the
//! chosen graded basis `b` of `CH(X)`. With `P[u][v] = deg(b_u b_v)` the
//! composition is `β ∘ α = A P B` and the diagonal is `P^{-1}`.

mod random;
mod suite;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::{rank_mod2, CommRing, IntMatrix, Integer, Mod2, Mod4};
use crate::flag::{FlagClass, FlagRing, FlagSubring};
use crate::unitary::UnitaryGrassmannian;
use crate::{Error, Result};

pub use random::{random_class, random_correspondence, random_lift, random_orthogonal_pair, random_projector, ProjectorKind};
pub use suite::{
    st_vanishing_mechanism, verify_correspondence_suite, Counterexample, IdentityTally, MechanismReport, RankMod4Row,
    CorrespondenceSuiteReport,
};

/// Coefficient domain of a correspondence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Coefficients {
    Integral,
    Mod2,
}

/// A class on `X × X`. Mod-2 classes keep entries in `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    matrix: IntMatrix,
    coefficients: Coefficients,
}

impl Correspondence {
    pub fn integral(matrix: IntMatrix) -> Self {
        Correspondence { matrix, coefficients: Coefficients::Integral }
    }

    pub fn mod2(matrix: IntMatrix) -> Self {
        Correspondence { matrix: matrix.mod2(), coefficients: Coefficients::Mod2 }
    }

    /// `u × v`.
    pub fn rank_one(u: &[Integer], v: &[Integer]) -> Self {
        let rows = u.iter().map(|a| v.iter().map(|b| a * b).collect()).collect();
        Self::integral(IntMatrix::new(v.len(), rows))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn is_mod2(&self) -> bool {
        self.coefficients == Coefficients::Mod2
    }

    pub fn reduce(&self) -> Self {
        Self::mod2(self.matrix.clone())
    }

    pub fn transpose(&self) -> Self {
        self.with(self.matrix.transpose())
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.matrix.add(&other.matrix);
        if self.is_mod2() || other.is_mod2() {
            Self::mod2(m)
        } else {
            Self::integral(m)
        }
    }

    /// The integral class `a + 2r`, where `a` is the stored representative.
    pub fn lift(&self, r: &IntMatrix) -> Self {
        Self::integral(self.matrix.add(&r.scale(&BigInt::from(2))))
    }

    pub fn eq_mod2(&self, other: &Self) -> bool {
        self.matrix.mod2() == other.matrix.mod2()
    }

    pub fn is_zero(&self) -> bool {
        match self.coefficients {
            Coefficients::Integral => self.matrix.rows().iter().flatten().all(Zero::is_zero),
            Coefficients::Mod2 => self.matrix.is_even(),
        }
    }

    fn with(&self, matrix: IntMatrix) -> Self {
        match self.coefficients {
            Coefficients::Integral => Self::integral(matrix),
            Coefficients::Mod2 => Self::mod2(matrix),
        }
    }
}

/// The Chow ring of a cellular variety with a graded basis, its intersection
/// pairing, tangent Chern class and an integral lift of the total Steenrod
/// operation.
#[derive(Clone, Debug)]
pub struct CorrRing {
    name: String,
    dim: usize,
    codims: Vec<usize>,
    table: Vec<Vec<Vec<Integer>>>,
    degrees: Vec<Integer>,
    pairing: IntMatrix,
    diagonal: IntMatrix,
    tangent: Vec<Integer>,
    minus_tangent: Vec<Integer>,
    steenrod: IntMatrix,
}

impl CorrRing {
    /// Builds the ring from structure constants. The basis must be sorted by
    /// codimension and start with the unit. Row `u` of `steenrod` is a lift of
    /// `S(b_u)`.
    pub fn from_tables(
        name: impl Into<String>,
        dim: usize,
        codims: Vec<usize>,
        table: Vec<Vec<Vec<Integer>>>,
        degrees: Vec<Integer>,
        tangent: Vec<Integer>,
        steenrod: IntMatrix,
    ) -> Result<Self> {
        let name = name.into();
        let r = codims.len();
        for len in [table.len(), degrees.len(), tangent.len(), steenrod.nrows(), steenrod.ncols()] {
            if len != r {
                return Err(Error::LengthMismatch { expected: r, got: len });
            }
        }
        if codims.first() != Some(&0) || codims.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::OutOfRange { what: "basis", detail: format!("{name}: not sorted by codimension") });
        }
        let mut pairing = IntMatrix::zeros(r, r);
        for u in 0..r {
            for v in 0..r {
                let d: Integer = table[u][v].iter().zip(&degrees).map(|(a, g)| a * g).sum();
                pairing.set(u, v, d);
            }
        }
        let diagonal = pairing.inverse_unimodular().ok_or_else(|| Error::NotCellular(name.clone()))?;
        let mut ring = CorrRing {
            name,
            dim,
            codims,
            table,
            degrees,
            pairing,
            diagonal,
            tangent,
            minus_tangent: Vec::new(),
            steenrod,
        };
        if (0..r).any(|v| ring.table[0][v] != unit_vector(r, v)) {
            return Err(Error::OutOfRange { what: "basis", detail: format!("{}: first element is not the unit", ring.name) });
        }
        ring.minus_tangent = ring.invert(&ring.tangent);
        Ok(ring)
    }

    /// `P^d` with basis `1, h, ..., h^d`.
    pub fn projective_space(d: usize) -> Result<Self> {
        let r = d + 1;
        let binom = |a: usize, b: usize| -> Integer { num_integer::binomial(BigInt::from(a), BigInt::from(b)) };
        let table = (0..r).map(|i| (0..r).map(|j| if i + j <= d { unit_vector(r, i + j) } else { vec![BigInt::zero(); r] }).collect()).collect();
        let steenrod = (0..r)
            .map(|i| (0..r).map(|j| if j >= i && j - i <= i { binom(i, j - i) } else { BigInt::zero() }).collect())
            .collect();
        CorrRing::from_tables(
            format!("P{d}"),
            d,
            (0..r).collect(),
            table,
            unit_vector(r, d),
            (0..r).map(|i| binom(d + 1, i)).collect(),
            IntMatrix::new(r, steenrod),
        )
    }

    /// The ring of a subring of the flag model, with `c(T)` given as a class
    /// of the subring.
    pub fn from_subring(name: impl Into<String>, sub: &FlagSubring, tangent: &FlagClass) -> Result<Self> {
        let top = sub.top_codim();
        let ring: &alloc::sync::Arc<FlagRing> = sub.ring();
        let mut basis = Vec::new();
        let mut codims = Vec::new();
        for d in 0..=top {
            for b in sub.basis(d) {
                basis.push(b.clone());
                codims.push(d);
            }
        }
        let coords = |y: &FlagClass| -> Result<Vec<Integer>> {
            if y.codims().iter().any(|&c| c as usize > top) {
                return Err(Error::NotContained);
            }
            let mut out = Vec::with_capacity(basis.len());
            for d in 0..=top {
                out.extend(sub.coords(&y.component(d), d).ok_or(Error::NotContained)?);
            }
            Ok(out)
        };
        let table = basis
            .iter()
            .map(|a| basis.iter().map(|b| coords(&(a * b))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let degrees = basis.iter().map(|b| sub.degree(b)).collect();
        let steenrod = basis.iter().map(|b| coords(&ring.steenrod_lift(b))).collect::<Result<Vec<_>>>()?;
        CorrRing::from_tables(name, top, codims, table, degrees, coords(tangent)?, IntMatrix::new(basis.len(), steenrod))
    }

    /// `H_k` for an `n`-space.
    pub fn unitary(n: usize, k: usize) -> Result<Self> {
        Self::from_unitary(&UnitaryGrassmannian::new(n, k)?)
    }

    pub fn from_unitary(h: &UnitaryGrassmannian) -> Result<Self> {
        let tangent = h.ring().tangent_chern(&h.steps())?;
        Self::from_subring(format!("H{}({})", h.k(), h.n()), h.subring(), &tangent)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Size of the basis.
    pub fn rank(&self) -> usize {
        self.codims.len()
    }

    pub fn codims(&self) -> &[usize] {
        &self.codims
    }

    pub fn rank_in_codim(&self, c: usize) -> usize {
        self.codims.iter().filter(|&&x| x == c).count()
    }

    /// Index of the first basis element of codimension `c`.
    pub fn block_offset(&self, c: usize) -> usize {
        self.codims.iter().take_while(|&&x| x < c).count()
    }

    /// A class of codimension `c` from coordinates in its block.
    pub fn embed_block(&self, c: usize, coords: &[Integer]) -> Vec<Integer> {
        let mut out = vec![BigInt::zero(); self.rank()];
        let off = self.block_offset(c);
        out[off..off + coords.len()].clone_from_slice(coords);
        out
    }

    pub fn pairing(&self) -> &IntMatrix {
        &self.pairing
    }

    pub fn degrees(&self) -> &[Integer] {
        &self.degrees
    }

    pub fn tangent(&self) -> &[Integer] {
        &self.tangent
    }

    /// `c(-T_X)`, integral.
    pub fn minus_tangent(&self) -> &[Integer] {
        &self.minus_tangent
    }

    /// Rows are the integral lifts of `S(b_u)`.
    pub fn steenrod_matrix(&self) -> &IntMatrix {
        &self.steenrod
    }

    pub fn product(&self, x: &[Integer], y: &[Integer]) -> Vec<Integer> {
        let mut out = vec![BigInt::zero(); self.rank()];
        for (u, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (v, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (o, t) in out.iter_mut().zip(&self.table[u][v]) {
                    if !t.is_zero() {
                        *o += &ab * t;
                    }
                }
            }
        }
        out
    }

    pub fn degree(&self, x: &[Integer]) -> Integer {
        x.iter().zip(&self.degrees).map(|(a, g)| a * g).sum()
    }

    pub fn steenrod_lift(&self, x: &[Integer]) -> Vec<Integer> {
        self.steenrod.left_apply(x)
    }

    /// `1 / c` for a class with constant term one.
    pub fn invert(&self, c: &[Integer]) -> Vec<Integer> {
        let one = self.one();
        let t: Vec<Integer> = c.iter().zip(&one).map(|(a, b)| b - a).collect();
        let mut acc = one.clone();
        let mut power = one;
        for _ in 0..self.dim {
            power = self.product(&power, &t);
            acc = acc.iter().zip(&power).map(|(a, b)| a + b).collect();
        }
        acc
    }

    /// `deg c_top(T_X)`.
    pub fn euler_characteristic(&self) -> Integer {
        self.degree(&self.tangent)
    }

    pub fn diagonal(&self) -> Correspondence {
        Correspondence::integral(self.diagonal.clone())
    }

    fn check_shape(&self, a: &Correspondence) -> Result<()> {
        let m = a.matrix();
        for len in [m.nrows(), m.ncols()] {
            if len != self.rank() {
                return Err(Error::LengthMismatch { expected: self.rank(), got: len });
            }
        }
        Ok(())
    }

    /// `β ∘ α`.
    pub fn compose(&self, beta: &Correspondence, alpha: &Correspondence) -> Result<Correspondence> {
        self.check_shape(alpha)?;
        self.check_shape(beta)?;
        let m = alpha.matrix().mul(&self.pairing).mul(beta.matrix());
        Ok(if alpha.is_mod2() || beta.is_mod2() { Correspondence::mod2(m) } else { Correspondence::integral(m) })
    }

    /// Codimension of a homogeneous class, `None` for zero or mixed classes.
    pub fn codim_of(&self, a: &Correspondence) -> Option<usize> {
        let m = if a.is_mod2() { a.matrix().mod2() } else { a.matrix().clone() };
        let mut found = None;
        for (u, row) in m.rows().iter().enumerate() {
            for (v, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    let c = self.codims[u] + self.codims[v];
                    if found.is_some_and(|f| f != c) {
                        return None;
                    }
                    found = Some(c);
                }
            }
        }
        found
    }

    /// The product on `X × X`.
    pub fn cross_product(&self, a: &Correspondence, b: &Correspondence) -> Correspondence {
        let r = self.rank();
        let mut out = IntMatrix::zeros(r, r);
        for (u, ra) in a.matrix().rows().iter().enumerate() {
            for (v, x) in ra.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (u2, rb) in b.matrix().rows().iter().enumerate() {
                    for (v2, y) in rb.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        let xy = x * y;
                        for (i, s) in self.table[u][u2].iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                            for (j, t) in self.table[v][v2].iter().enumerate().filter(|(_, t)| !t.is_zero()) {
                                let cur = out.get(i, j) + &xy * s * t;
                                out.set(i, j, cur);
                            }
                        }
                    }
                }
            }
        }
        if a.is_mod2() || b.is_mod2() {
            Correspondence::mod2(out)
        } else {
            Correspondence::integral(out)
        }
    }

    /// `deg(a · b)` on `X × X`.
    pub fn intersection_degree(&self, a: &Correspondence, b: &Correspondence) -> Integer {
        let m = a.matrix().transpose().mul(&self.pairing).mul(b.matrix());
        frobenius(&m, &self.pairing)
    }

    /// `deg δ^*(γ)`.
    pub fn diagonal_pullback_degree(&self, g: &Correspondence) -> Integer {
        frobenius(g.matrix(), &self.pairing)
    }

    /// Degree of a class on `X × X`.
    pub fn degree_on_product(&self, g: &Correspondence) -> Integer {
        self.degree(&g.matrix().left_apply(&self.degrees))
    }

    /// `pr_{2*}`.
    pub fn pr2(&self, a: &Correspondence) -> Vec<Integer> {
        a.matrix().left_apply(&self.degrees)
    }

    /// An integral lift of `S(α)`, computed factorwise.
    pub fn steenrod(&self, a: &Correspondence) -> Correspondence {
        let m = self.steenrod.transpose().mul(a.matrix()).mul(&self.steenrod);
        a.with(m)
    }

    /// `deg S(γ) mod 2` on `X × X`.
    pub fn steenrod_degree(&self, g: &Correspondence) -> Mod2 {
        Mod2::reduce(&self.degree_on_product(&self.steenrod(g)))
    }

    pub fn sq(&self, a: &Correspondence) -> Mod4 {
        Mod4::reduce(&self.intersection_degree(a, a))
    }

    pub fn sq_prime(&self, a: &Correspondence) -> Mod4 {
        Mod4::reduce(&self.intersection_degree(&a.transpose(), a))
    }

    pub fn st(&self, a: &Correspondence) -> Mod4 {
        self.st_of_steenrod_lift(&self.steenrod(a))
    }

    /// `deg(pr_{2*}(s)^2 c(-T_X)) mod 4` for an integral lift `s` of `S(α)`.
    pub fn st_of_steenrod_lift(&self, s: &Correspondence) -> Mod4 {
        let p = self.pr2(s);
        let sq = self.product(&p, &p);
        Mod4::reduce(&self.degree(&self.product(&sq, &self.minus_tangent)))
    }

    /// `α_*` on `CH(X)`: row coordinates are mapped by right multiplication.
    pub fn action(&self, a: &Correspondence) -> IntMatrix {
        self.pairing.mul(a.matrix())
    }

    pub fn is_projector(&self, a: &Correspondence) -> bool {
        let m = a.matrix();
        m.mul(&self.pairing).mul(m).add(&m.scale(&BigInt::from(-1))).is_even()
    }

    pub fn is_symmetric(&self, a: &Correspondence) -> bool {
        a.eq_mod2(&a.transpose())
    }

    /// Rank of the image of `α_*` on `Ch(X)`.
    pub fn rank_of_projector(&self, a: &Correspondence) -> Result<usize> {
        if !self.is_projector(a) {
            return Err(Error::NotProjector);
        }
        Ok(rank_mod2(self.action(a).rows()))
    }
}

impl CommRing for CorrRing {
    type Elem = Vec<Integer>;

    fn zero(&self) -> Self::Elem {
        vec![BigInt::zero(); self.rank()]
    }
    fn one(&self) -> Self::Elem {
        unit_vector(self.rank(), 0)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.product(a, b)
    }
    fn scale(&self, a: &Self::Elem, k: &Integer) -> Self::Elem {
        a.iter().map(|x| x * k).collect()
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(Zero::is_zero)
    }
}

fn unit_vector(r: usize, i: usize) -> Vec<Integer> {
    let mut v = vec![BigInt::zero(); r];
    v[i] = BigInt::one();
    v
}

/// `Σ a[u][v] b[u][v]`.
fn frobenius(a: &IntMatrix, b: &IntMatrix) -> Integer {
    a.rows().iter().zip(b.rows()).flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| p * q)).sum()
}

pub(crate) fn is_odd(x: &Integer) -> bool {
    x.is_odd()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> Integer {
        BigInt::from(v)
    }

    fn zs(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| z(x)).collect()
    }

    #[test]
    fn diagonal_of_p1() {
        let p1 = CorrRing::projective_space(1).unwrap();
        let delta = p1.diagonal();
        assert_eq!(delta, Correspondence::integral(IntMatrix::from_i64(&[&[0, 1], &[1, 0]])));
        assert_eq!(p1.intersection_degree(&delta, &delta), z(2));
        assert_eq!(p1.sq(&delta.reduce()), Mod4::new(2));
        assert_eq!(p1.st(&delta.reduce()), Mod4::new(2));
        assert_eq!(p1.minus_tangent(), zs(&[1, -2]).as_slice());
        assert_eq!(p1.rank_of_projector(&delta.reduce()), Ok(2));
    }

    #[test]
    fn diagonal_of_p2() {
        let p2 = CorrRing::projective_space(2).unwrap();
        let delta = p2.diagonal().reduce();
        assert_eq!(p2.sq_prime(&delta), Mod4::new(3));
        assert_eq!(p2.rank_of_projector(&delta), Ok(3));
        assert_eq!(p2.euler_characteristic(), z(3));
    }

    #[test]
    fn rank_one_rule() {
        let p1 = CorrRing::projective_space(1).unwrap();
        let one = zs(&[1, 0]);
        let h = zs(&[0, 1]);
        let a = Correspondence::rank_one(&one, &h);
        let b = Correspondence::rank_one(&h, &one);
        assert!(p1.compose(&b, &a).unwrap().is_zero());
        let p = Correspondence::rank_one(&h, &one);
        assert_eq!(p1.compose(&a, &a).unwrap(), a);
        assert_eq!(p1.compose(&p, &p).unwrap(), p);
        assert!(p1.is_projector(&p));
        assert_eq!(p1.rank_of_projector(&p), Ok(1));
    }

    #[test]
    fn diagonal_is_a_unit() {
        let p2 = CorrRing::projective_space(2).unwrap();
        let a = Correspondence::integral(IntMatrix::from_i64(&[&[1, 2, 0], &[0, -1, 3], &[5, 0, 1]]));
        let d = p2.diagonal();
        assert_eq!(p2.compose(&d, &a).unwrap(), a);
        assert_eq!(p2.compose(&a, &d).unwrap(), a);
    }

    #[test]
    fn not_a_projector() {
        let p1 = CorrRing::projective_space(1).unwrap();
        let a = Correspondence::mod2(IntMatrix::from_i64(&[&[1, 0], &[0, 0]]));
        assert_eq!(p1.rank_of_projector(&a), Err(Error::NotProjector));
    }

    #[test]
    fn zero_has_zero_operations() {
        let p2 = CorrRing::projective_space(2).unwrap();
        let zero = Correspondence::mod2(IntMatrix::zeros(3, 3));
        assert_eq!((p2.sq(&zero), p2.sq_prime(&zero), p2.st(&zero)), (Mod4::new(0), Mod4::new(0), Mod4::new(0)));
    }

    #[test]
    fn unitary_model_has_multinomial_euler_characteristic() {
        let h1 = CorrRing::unitary(4, 1).unwrap();
        assert_eq!((h1.rank(), h1.dim()), (12, 5));
        assert_eq!(h1.euler_characteristic(), z(12));
        let h2 = CorrRing::unitary(4, 2).unwrap();
        assert_eq!((h2.rank(), h2.dim(), h2.euler_characteristic()), (6, 4, z(6)));
        assert_eq!(h2.rank_of_projector(&h2.diagonal().reduce()), Ok(6));
    }
}
