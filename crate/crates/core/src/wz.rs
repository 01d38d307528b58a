//! Mod-2 polynomials in the generators `w_i` (`1 ≤ i ≤ n - 2k`) and `z_i`
//! (`n - 2k ≤ i ≤ 2n - 2k - 1`) of the Chow ring of the grassmannian of
//! isotropic `2k`-planes in a `2n`-dimensional quadratic space, rewritten with
//!
//! `z_i^2 = z_i c_i - z_{i+1} c_{i-1} + z_{i+2} c_{i-2} - ...`, `c_j = c_j(-T)`.
//!
//! This is a formal system: it uses no other relation, so it does not decide
//! equality in the Chow ring. `w_0 = 1` is not stored. For `n = 2k` the
//! variety has two components and `z_0` is the class of one of them.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::Serialize;

use crate::report::{all_passed, Check};
use crate::{Error, Result};

/// A monomial `Π w_i^{a_i} Π z_j^{b_j}`, stored as exponent vectors indexed
/// from `w_1` and from the lowest `z`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WZMonomial {
    pub w: Vec<u32>,
    pub z: Vec<u32>,
}

/// A polynomial over `F_2`, as a set of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WZPoly {
    terms: BTreeSet<WZMonomial>,
}

impl WZPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: WZMonomial) -> Self {
        WZPoly { terms: BTreeSet::from([m]) }
    }

    pub fn terms(&self) -> impl Iterator<Item = &WZMonomial> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds a monomial mod 2.
    pub fn toggle(&mut self, m: WZMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for m in &other.terms {
            out.toggle(m.clone());
        }
        out
    }

    /// Product without rewriting.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = WZPoly::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.times(b));
            }
        }
        out
    }
}

impl WZMonomial {
    pub fn times(&self, other: &Self) -> Self {
        WZMonomial {
            w: self.w.iter().zip(&other.w).map(|(a, b)| a + b).collect(),
            z: self.z.iter().zip(&other.z).map(|(a, b)| a + b).collect(),
        }
    }

    /// Total `z`-degree.
    pub fn z_degree(&self) -> u32 {
        self.z.iter().sum()
    }

    pub fn is_standard(&self) -> bool {
        self.z.iter().all(|&e| e <= 1)
    }
}

/// The generators and the classes `c_i(-T) mod 2` for given `(n, k)`.
#[derive(Clone, Debug)]
pub struct WZSystem {
    n: usize,
    k: usize,
    chern: Vec<WZPoly>,
}

impl WZSystem {
    /// `c_i = w_i` for `i ≤ n - 2k`; the others are twice `z_i` and vanish.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || 2 * k > n {
            return Err(Error::OutOfRange { what: "k", detail: format!("need 1 <= k <= n/2, got n = {n}, k = {k}") });
        }
        let mut sys = WZSystem { n, k, chern: Vec::new() };
        sys.chern = (0..=sys.top_z()).map(|i| if i <= sys.w_max() { sys.w(i) } else { WZPoly::zero() }).collect();
        Ok(sys)
    }

    /// Uses the given `c_i(-T) mod 2`, `0 ≤ i ≤ 2n - 2k - 1`; each must be
    /// homogeneous of codimension `i`, with `c_0 = 1`.
    pub fn with_chern_classes(n: usize, k: usize, chern: Vec<WZPoly>) -> Result<Self> {
        let mut sys = Self::new(n, k)?;
        if chern.len() != sys.chern.len() {
            return Err(Error::LengthMismatch { expected: sys.chern.len(), got: chern.len() });
        }
        if chern[0] != sys.one() {
            return Err(Error::OutOfRange { what: "c_0", detail: "must be 1".into() });
        }
        for (i, c) in chern.iter().enumerate() {
            if c.terms().any(|m| sys.codim(m) != i) {
                return Err(Error::OutOfRange { what: "chern class", detail: format!("c_{i} is not of codimension {i}") });
            }
        }
        sys.chern = chern;
        Ok(sys)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `n - 2k`: the largest `w` index and the smallest `z` index.
    pub fn w_max(&self) -> usize {
        self.n - 2 * self.k
    }

    /// Index of the lowest `z` generator.
    pub fn z_min(&self) -> usize {
        self.w_max()
    }

    pub fn top_z(&self) -> usize {
        2 * self.n - 2 * self.k - 1
    }

    fn empty(&self) -> WZMonomial {
        WZMonomial { w: vec![0; self.w_max()], z: vec![0; self.top_z() - self.z_min() + 1] }
    }

    pub fn one(&self) -> WZPoly {
        WZPoly::monomial(self.empty())
    }

    /// `w_i`, with `w_0 = 1`.
    pub fn w(&self, i: usize) -> WZPoly {
        assert!(i <= self.w_max(), "w index out of range");
        let mut m = self.empty();
        if i > 0 {
            m.w[i - 1] = 1;
        }
        WZPoly::monomial(m)
    }

    pub fn z(&self, i: usize) -> WZPoly {
        assert!((self.z_min()..=self.top_z()).contains(&i), "z index out of range");
        let mut m = self.empty();
        m.z[i - self.z_min()] = 1;
        WZPoly::monomial(m)
    }

    pub fn codim(&self, m: &WZMonomial) -> usize {
        let w: usize = m.w.iter().enumerate().map(|(i, &e)| (i + 1) * e as usize).sum();
        let z: usize = m.z.iter().enumerate().map(|(i, &e)| (i + self.z_min()) * e as usize).sum();
        w + z
    }

    /// Rewrites until every monomial has `z`-exponents at most one.
    ///
    /// The lowest squared `z_i` is replaced first; this lowers the exponent
    /// vector of `z` lexicographically, so the process terminates.
    pub fn standardize(&self, p: &WZPoly) -> WZPoly {
        let mut out = WZPoly::zero();
        let mut pending = p.clone();
        while let Some(m) = pending.terms.pop_first() {
            let Some(pos) = m.z.iter().position(|&e| e >= 2) else {
                out.toggle(m);
                continue;
            };
            let i = pos + self.z_min();
            let mut rest = m.clone();
            rest.z[pos] -= 2;
            for j in 0..=i {
                if i + j > self.top_z() {
                    break;
                }
                let mut base = rest.clone();
                base.z[pos + j] += 1;
                for c in self.chern[i - j].terms() {
                    pending.toggle(base.times(c));
                }
            }
        }
        out
    }

    /// Largest `z`-degree of a monomial of the standard form.
    pub fn level(&self, p: &WZPoly) -> u32 {
        self.standardize(p).terms().map(WZMonomial::z_degree).max().unwrap_or(0)
    }

    /// All standard monomials of codimension `d`.
    pub fn standard_monomials(&self, d: usize) -> Vec<WZMonomial> {
        let mut out = Vec::new();
        let mut m = self.empty();
        self.enumerate(d, 0, &mut m, &mut out);
        out
    }

    fn enumerate(&self, left: usize, slot: usize, m: &mut WZMonomial, out: &mut Vec<WZMonomial>) {
        let nw = self.w_max();
        let nz = m.z.len();
        if slot == nw + nz {
            if left == 0 {
                out.push(m.clone());
            }
            return;
        }
        let (weight, cap) = if slot < nw { (slot + 1, usize::MAX) } else { (slot - nw + self.z_min(), 1) };
        let cap = if weight == 0 { cap } else { cap.min(left / weight) };
        for e in 0..=cap {
            if slot < nw {
                m.w[slot] = e as u32;
            } else {
                m.z[slot - nw] = e as u32;
            }
            self.enumerate(left - e * weight, slot + 1, m, out);
        }
        if slot < nw {
            m.w[slot] = 0;
        } else {
            m.z[slot - nw] = 0;
        }
    }

    /// `z_{n-2k+1} z_{n-2k+3} ... z_{n-1}`.
    pub fn odd_level_k_monomial(&self) -> WZPoly {
        (0..self.k).fold(self.one(), |acc, j| acc.mul(&self.z(self.w_max() + 1 + 2 * j)))
    }

    pub fn format(&self, p: &WZPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = p.terms().map(|m| format!("{}", Shown(self, m))).collect();
        parts.join(" + ")
    }
}

struct Shown<'a>(&'a WZSystem, &'a WZMonomial);

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (i, &e) in self.1.w.iter().enumerate().filter(|(_, e)| **e > 0) {
            factors.push(if e == 1 { format!("w{}", i + 1) } else { format!("w{}^{e}", i + 1) });
        }
        for (i, &e) in self.1.z.iter().enumerate().filter(|(_, e)| **e > 0) {
            let idx = i + self.0.z_min();
            factors.push(if e == 1 { format!("z{idx}") } else { format!("z{idx}^{e}") });
        }
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub n: usize,
    pub k: usize,
    pub checks: Vec<Check>,
    /// Standard monomials whose square has larger level; exploratory only.
    pub squaring_raises_level: usize,
    pub squares_tested: usize,
    pub passed: bool,
}

/// Rewriting and level checks for `(n, k)` over all standard monomials of
/// codimension at most `max_codim`.
pub fn verify_levels(n: usize, k: usize, max_codim: usize) -> Result<LevelReport> {
    let sys = WZSystem::new(n, k)?;
    let mut checks = Vec::new();
    let top = sys.z(sys.top_z());
    checks.push(Check::new("top z squared vanishes", sys.standardize(&top.mul(&top)).is_zero(), ""));

    let (mut idempotent, mut graded, mut bounded, mut raised, mut tested) = (true, true, true, 0, 0);
    for d in 0..=max_codim {
        for m in sys.standard_monomials(d) {
            let p = WZPoly::monomial(m.clone());
            idempotent &= sys.standardize(&p) == p;
            for i in sys.z_min()..=sys.top_z() {
                let raw = p.mul(&sys.z(i)).mul(&sys.z(i));
                let s = sys.standardize(&raw);
                graded &= s.terms().all(|t| sys.codim(t) == d + 2 * i);
                bounded &= s.terms().all(|t| t.z_degree() <= m.z_degree() + 2);
                idempotent &= sys.standardize(&s) == s;
            }
            let sq = sys.standardize(&p.mul(&p));
            tested += 1;
            if sys.level(&sq) > m.z_degree() {
                raised += 1;
            }
        }
    }
    checks.push(Check::new("standard forms are fixed", idempotent, ""));
    checks.push(Check::new("rewriting preserves codimension", graded, ""));
    checks.push(Check::new("rewriting does not raise z-degree", bounded, ""));
    let odd = sys.odd_level_k_monomial();
    let codim = odd.terms().next().map(|m| sys.codim(m)).unwrap_or(0);
    checks.push(Check::new(
        "codimension of z_{n-2k+1} z_{n-2k+3} ... z_{n-1}",
        codim == k * (n - k) && sys.level(&odd) == k as u32,
        format!("{codim}"),
    ));
    let consecutive: usize = (n - 2 * k..=n - k).sum();
    let lowest = (0..=consecutive).find(|&d| sys.standard_monomials(d).iter().any(|m| m.z_degree() as usize > k));
    checks.push(Check::new(
        "lowest codimension of z-degree k + 1",
        lowest == Some(consecutive),
        format!("{lowest:?}, (n-2k) + ... + (n-k) = {consecutive}"),
    ));
    checks.push(Check::recorded(
        "squaring preserves the level",
        raised == 0,
        format!("{raised} of {tested} squares of standard monomials have larger level in the formal system"),
    ));
    let passed = all_passed(&checks);
    Ok(LevelReport { n, k, checks, squaring_raises_level: raised, squares_tested: tested, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_monomials_are_fixed() {
        let s = WZSystem::new(6, 2).unwrap();
        let p = s.w(1).mul(&s.z(3)).mul(&s.z(5));
        assert_eq!(s.standardize(&p), p);
        assert_eq!(s.level(&p), 2);
        assert_eq!(s.level(&s.w(2).mul(&s.w(1))), 0);
        assert_eq!(s.level(&s.z(4)), 1);
    }

    #[test]
    fn top_square_vanishes() {
        let s = WZSystem::new(4, 1).unwrap();
        let z = s.z(5);
        assert!(s.standardize(&z.mul(&z)).is_zero());
    }

    #[test]
    fn relation_at_the_bottom() {
        // n = 4, k = 1: z_2^2 = z_2 w_2 + z_3 w_1 + z_4.
        let s = WZSystem::new(4, 1).unwrap();
        let z2 = s.z(2);
        let expected = z2.mul(&s.w(2)).add(&s.z(3).mul(&s.w(1))).add(&s.z(4));
        assert_eq!(s.standardize(&z2.mul(&z2)), expected);
        assert_eq!(s.format(&expected), "z4 + w2*z2 + w1*z3");
    }

    #[test]
    fn level_reports() {
        for (n, k) in [(4, 1), (4, 2), (6, 1), (6, 2), (6, 3)] {
            let r = verify_levels(n, k, 8).unwrap();
            assert!(r.passed, "{r:#?}");
        }
    }

    #[test]
    fn enumeration_counts() {
        let s = WZSystem::new(4, 2).unwrap();
        // No w's; z_0, ..., z_3 with z_0 of codimension zero.
        assert_eq!(s.standard_monomials(0).len(), 2);
        assert_eq!(s.standard_monomials(3).len(), 4);
        assert_eq!(s.standard_monomials(6).len(), 2);
        let z0 = s.z(0);
        assert_eq!(s.standardize(&z0.mul(&z0)), z0);
    }

    #[test]
    fn custom_chern_classes_are_validated() {
        let s = WZSystem::new(4, 1).unwrap();
        let mut c: Vec<WZPoly> = (0..=5).map(|_| WZPoly::zero()).collect();
        c[0] = s.one();
        c[1] = s.w(2);
        assert!(WZSystem::with_chern_classes(4, 1, c).is_err());
    }
}
