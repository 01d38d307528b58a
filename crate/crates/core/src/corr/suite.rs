//! Randomized checks of the identities between `sq`, `sq'`, `st`, ranks of
//! projectors and Steenrod operations, and the vanishing mechanism for `st`
//! on unitary grassmannians.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::random::{random_class, random_correspondence, random_lift, random_orthogonal_pair, random_projector, ProjectorKind};
use super::{Coefficients, CorrRing, Correspondence};
use crate::exact::{IntMatrix, Integer, Mod2, Mod4};
use crate::report::{all_passed, Check};
use crate::unitary::UnitaryGrassmannian;
use crate::{Error, Result};

/// Number of integral lifts compared per class.
pub const LIFTS: usize = 16;

/// Minimum number of projectors in the rank check.
pub const MIN_RANK_SAMPLES: usize = 20;

/// A failing input, reduced by zeroing entries while it keeps failing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub matrices: Vec<Vec<Vec<String>>>,
}

/// Trials and failures of one identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityTally {
    pub name: String,
    pub statement: String,
    pub trials: usize,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
}

impl IdentityTally {
    fn new(name: &str, statement: &str) -> Self {
        IdentityTally { name: name.into(), statement: statement.into(), trials: 0, failures: 0, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.trials > 0 && self.failures == 0
    }

    /// `fails` must return false whenever a precondition is violated, so that
    /// minimization stays within the hypotheses.
    fn trial(&mut self, mats: Vec<IntMatrix>, fails: impl Fn(&[IntMatrix]) -> bool) {
        self.trials += 1;
        if fails(&mats) {
            self.failures += 1;
            if self.counterexample.is_none() {
                let m = minimize(mats, &fails);
                self.counterexample = Some(Counterexample {
                    matrices: m.iter().map(|a| a.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()).collect(),
                });
            }
        }
    }
}

fn minimize(mut mats: Vec<IntMatrix>, fails: &impl Fn(&[IntMatrix]) -> bool) -> Vec<IntMatrix> {
    for k in 0..mats.len() {
        for i in 0..mats[k].nrows() {
            for j in 0..mats[k].ncols() {
                let old = mats[k].get(i, j).clone();
                if old.is_zero() {
                    continue;
                }
                mats[k].set(i, j, BigInt::zero());
                if !fails(&mats) {
                    mats[k].set(i, j, old);
                }
            }
        }
    }
    mats
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceSuiteReport {
    pub variety: String,
    pub dim: usize,
    pub rank: usize,
    pub seed: u64,
    pub samples: usize,
    pub tallies: Vec<IdentityTally>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn m2(m: &IntMatrix) -> Correspondence {
    Correspondence::mod2(m.clone())
}

fn z(m: &IntMatrix) -> Correspondence {
    Correspondence::integral(m.clone())
}

fn kind_of(i: usize) -> ProjectorKind {
    if i % 2 == 0 {
        ProjectorKind::General
    } else {
        ProjectorKind::Symmetric
    }
}

fn any_correspondence(x: &CorrRing, rng: &mut ChaCha8Rng, coefficients: Coefficients) -> Correspondence {
    let c = rng.gen_range(0..=2 * x.dim());
    random_correspondence(x, rng, c, coefficients)
}

fn any_class(x: &CorrRing, rng: &mut ChaCha8Rng) -> Vec<Integer> {
    let c = rng.gen_range(0..=x.dim());
    random_class(x, rng, c, 3)
}

/// `deg(pr_{2*}(S α) pr_{2*}(S β) c(-T_X)) mod 2`.
fn steenrod_pairing(x: &CorrRing, a: &Correspondence, b: &Correspondence) -> Mod2 {
    let pa = x.pr2(&x.steenrod(a));
    let pb = x.pr2(&x.steenrod(b));
    Mod2::reduce(&x.degree(&x.product(&x.product(&pa, &pb), x.minus_tangent())))
}

/// Runs every identity on `samples` random inputs drawn from `seed`.
pub fn verify_correspondence_suite(x: &CorrRing, seed: u64, samples: usize) -> Result<CorrespondenceSuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = x.dim();
    let mut tallies = Vec::new();

    let mut t = IdentityTally::new("transpose-composition", "(b o a)^t = a^t o b^t");
    let mut u = IdentityTally::new("diagonal-unit", "D o a = a o D = a");
    for _ in 0..samples {
        let a = any_correspondence(x, &mut rng, Coefficients::Integral);
        let b = any_correspondence(x, &mut rng, Coefficients::Integral);
        t.trial(vec![a.matrix().clone(), b.matrix().clone()], |m| {
            let (a, b) = (z(&m[0]), z(&m[1]));
            x.compose(&b, &a).map(|c| c.transpose()) != x.compose(&a.transpose(), &b.transpose())
        });
        u.trial(vec![a.matrix().clone()], |m| {
            let a = z(&m[0]);
            let delta = x.diagonal();
            x.compose(&delta, &a).as_ref() != Ok(&a) || x.compose(&a, &delta).as_ref() != Ok(&a)
        });
    }
    tallies.extend([t, u]);

    let mut cartan = IdentityTally::new("cartan", "S(a b) = S(a) S(b) mod 2 on X and on X x X");
    let mut kunneth = IdentityTally::new("kunneth", "deg(a . b) agrees with the degree of the product on X x X");
    for _ in 0..samples {
        let p = any_class(x, &mut rng);
        let q = any_class(x, &mut rng);
        let lhs = x.steenrod_lift(&x.product(&p, &q));
        let rhs = x.product(&x.steenrod_lift(&p), &x.steenrod_lift(&q));
        let col = |v: &[Integer]| IntMatrix::new(1, v.iter().map(|e| vec![e.clone()]).collect());
        cartan.trial(vec![col(&lhs).add(&col(&rhs).scale(&BigInt::from(-1)))], |m| !m[0].is_even());
        let a = any_correspondence(x, &mut rng, Coefficients::Integral);
        let b = any_correspondence(x, &mut rng, Coefficients::Integral);
        cartan.trial(vec![a.matrix().clone(), b.matrix().clone()], |m| {
            let (a, b) = (z(&m[0]), z(&m[1]));
            !x.steenrod(&x.cross_product(&a, &b)).eq_mod2(&x.cross_product(&x.steenrod(&a), &x.steenrod(&b)))
        });
        kunneth.trial(vec![a.matrix().clone(), b.matrix().clone()], |m| {
            let (a, b) = (z(&m[0]), z(&m[1]));
            x.intersection_degree(&a, &b) != x.degree_on_product(&x.cross_product(&a, &b))
        });
    }
    tallies.extend([cartan, kunneth]);

    let mut am = IdentityTally::new("degree-adjunction", "deg(b^t . a) = deg delta^*(b o a)");
    for _ in 0..samples {
        let c = rng.gen_range(0..=2 * d);
        let a = random_correspondence(x, &mut rng, c, Coefficients::Integral);
        let b = random_correspondence(x, &mut rng, 2 * d - c, Coefficients::Integral);
        am.trial(vec![a.matrix().clone(), b.matrix().clone()], |m| {
            let (a, b) = (z(&m[0]), z(&m[1]));
            x.compose(&b, &a).map(|ba| x.diagonal_pullback_degree(&ba)) != Ok(x.intersection_degree(&b.transpose(), &a))
        });
    }
    tallies.push(am);

    let mut sym = IdentityTally::new("sq-symmetric", "sq'(a) = sq(a) for symmetric projectors");
    let mut symmop = IdentityTally::new("sq-st-parity", "sq(a) = st(a) mod 2 for symmetric projectors of codimension dim X");
    let mut st_sym = IdentityTally::new("st-symmetric-projector", "st(a) mod 2 = deg S(a) for symmetric projectors");
    let symmetric_projector = |m: &IntMatrix| {
        let a = m2(m);
        x.is_projector(&a) && x.is_symmetric(&a) && !a.is_zero()
    };
    for _ in 0..samples {
        let a = random_projector(x, &mut rng, ProjectorKind::Symmetric, None)?;
        sym.trial(vec![a.matrix().clone()], |m| symmetric_projector(&m[0]) && x.sq_prime(&m2(&m[0])) != x.sq(&m2(&m[0])));
        symmop.trial(vec![a.matrix().clone()], |m| {
            let a = m2(&m[0]);
            symmetric_projector(&m[0]) && x.codim_of(&a) == Some(d) && x.sq(&a).to_mod2() != x.st(&a).to_mod2()
        });
        st_sym.trial(vec![a.matrix().clone()], |m| {
            let a = m2(&m[0]);
            symmetric_projector(&m[0]) && x.st(&a).to_mod2() != x.steenrod_degree(&a)
        });
    }

    let mut add = IdentityTally::new("sq-prime-additivity", "sq'(a + b) = sq'(a) + sq'(b) for orthogonal a, b");
    let mut st_add = IdentityTally::new("st-additivity", "st(a + b) = st(a) + st(b) when deg S(b^t o a) = 0");
    let orthogonal = |a: &Correspondence, b: &Correspondence| x.compose(b, a).is_ok_and(|c| c.is_zero());
    let st_additive = |a: &Correspondence, b: &Correspondence| x.st(&a.add(b)) == x.st(a) + x.st(b);
    let st_precondition = |a: &Correspondence, b: &Correspondence| {
        x.compose(&b.transpose(), a).is_ok_and(|c| x.steenrod_degree(&c) == Mod2::new(0))
    };
    let mut outside = 0;
    let mut symmetric_pairs = true;
    for i in 0..samples {
        let mut kind = kind_of(i);
        if kind == ProjectorKind::Symmetric && !symmetric_pairs {
            kind = ProjectorKind::General;
        }
        let (a, b) = match random_orthogonal_pair(x, &mut rng, kind) {
            Err(Error::SamplingFailed(_)) if kind == ProjectorKind::Symmetric => {
                symmetric_pairs = false;
                random_orthogonal_pair(x, &mut rng, ProjectorKind::General)?
            }
            r => r?,
        };
        add.trial(vec![a.matrix().clone(), b.matrix().clone()], |m| {
            let (a, b) = (m2(&m[0]), m2(&m[1]));
            orthogonal(&a, &b) && x.sq_prime(&a.add(&b)) != x.sq_prime(&a) + x.sq_prime(&b)
        });
        if x.is_symmetric(&a) && x.is_symmetric(&b) {
            st_add.trial(vec![a.matrix().clone(), b.matrix().clone()], |m| {
                let (a, b) = (m2(&m[0]), m2(&m[1]));
                st_precondition(&a, &b) && !st_additive(&a, &b)
            });
        }
        let a = any_correspondence(x, &mut rng, Coefficients::Mod2);
        let b = any_correspondence(x, &mut rng, Coefficients::Mod2);
        if st_precondition(&a, &b) {
            st_add.trial(vec![a.matrix().clone(), b.matrix().clone()], |m| {
                let (a, b) = (m2(&m[0]), m2(&m[1]));
                st_precondition(&a, &b) && !st_additive(&a, &b)
            });
        } else if !st_additive(&a, &b) {
            outside += 1;
        }
    }

    let mut rank = IdentityTally::new("sq-prime-rank", "sq'(a) = rk(a) mod 4 for projectors");
    for i in 0..samples.max(MIN_RANK_SAMPLES) {
        let a = random_projector(x, &mut rng, kind_of(i), None)?;
        rank.trial(vec![a.matrix().clone()], |m| {
            let a = m2(&m[0]);
            x.rank_of_projector(&a).is_ok_and(|r| x.sq_prime(&a) != Mod4::new(r as i64))
        });
    }
    tallies.extend([sym, add, rank]);

    let mut nk = IdentityTally::new("steenrod-degree", "deg S(b^t o a) = deg(pr2 S(a) . pr2 S(b) . c(-T)) mod 2");
    let mut st1 = IdentityTally::new("st-parity", "st(a) mod 2 = deg S(a^t o a)");
    for _ in 0..samples {
        let a = any_correspondence(x, &mut rng, Coefficients::Mod2);
        let b = any_correspondence(x, &mut rng, Coefficients::Mod2);
        nk.trial(vec![a.matrix().clone(), b.matrix().clone()], |m| {
            let (a, b) = (m2(&m[0]), m2(&m[1]));
            x.compose(&b.transpose(), &a).map(|c| x.steenrod_degree(&c)) != Ok(steenrod_pairing(x, &a, &b))
        });
        st1.trial(vec![a.matrix().clone()], |m| {
            let a = m2(&m[0]);
            x.compose(&a.transpose(), &a).map(|c| x.steenrod_degree(&c)) != Ok(x.st(&a).to_mod2())
        });
    }
    tallies.extend([nk, st1, st_sym, st_add, symmop]);

    let mut lifts = IdentityTally::new("lift-independence", "sq, sq', st do not depend on the integral lift");
    for i in 0..samples {
        let a = if i % 2 == 0 {
            any_correspondence(x, &mut rng, Coefficients::Mod2)
        } else {
            random_projector(x, &mut rng, kind_of(i / 2), None)?
        };
        let reference = (x.sq(&a), x.sq_prime(&a), x.st(&a));
        let s = x.steenrod(&a);
        for _ in 0..LIFTS {
            let r = random_lift(x, &mut rng, &a);
            let rs = random_lift(x, &mut rng, &s);
            lifts.trial(vec![a.matrix().clone(), r, rs], |m| {
                let lifted = m2(&m[0]).lift(&m[1]);
                let s_lift = x.steenrod(&m2(&m[0])).lift(&m[2]);
                let base = (x.sq(&m2(&m[0])), x.sq_prime(&m2(&m[0])), x.st(&m2(&m[0])));
                (x.sq(&lifted), x.sq_prime(&lifted), x.st(&lifted)) != base || x.st_of_steenrod_lift(&s_lift) != base.2
            });
        }
        debug_assert_eq!(reference, (x.sq(&a), x.sq_prime(&a), x.st(&a)));
    }
    tallies.push(lifts);

    let delta = x.diagonal();
    let delta2 = delta.reduce();
    let rk = x.rank_of_projector(&delta2)?;
    let checks = vec![
        Check::new("diagonal rank", rk == x.rank(), format!("rank {rk}, basis size {}", x.rank())),
        Check::new(
            "diagonal self-intersection",
            x.intersection_degree(&delta, &delta) == x.euler_characteristic(),
            format!("deg(D . D) = {}", x.intersection_degree(&delta, &delta)),
        ),
        Check::new(
            "sq' of the diagonal",
            x.sq_prime(&delta2) == Mod4::new(rk as i64),
            format!("sq' = {}, rank {rk}", x.sq_prime(&delta2)),
        ),
        Check::recorded(
            "sq = st on the diagonal",
            x.sq(&delta2) == x.st(&delta2),
            format!("sq = {}, st = {}; equality is only claimed without closed points of odd degree", x.sq(&delta2), x.st(&delta2)),
        ),
        Check::recorded(
            "orthogonal symmetric projectors",
            symmetric_pairs,
            if symmetric_pairs { "sampled" } else { "none exist; general pairs used" },
        ),
        Check::recorded(
            "st additivity outside the hypothesis",
            true,
            format!("{outside} sampled pairs violate the hypothesis and additivity"),
        ),
    ];
    let passed = all_passed(&checks) && tallies.iter().all(IdentityTally::passed);
    Ok(CorrespondenceSuiteReport { variety: x.name().into(), dim: d, rank: x.rank(), seed, samples, tallies, checks, passed })
}

/// `sq'` of a projector whose rank is `2 mod 4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankMod4Row {
    pub rank: usize,
    pub symmetric: bool,
    pub sq_prime: u8,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MechanismReport {
    pub n: usize,
    pub k: usize,
    pub threshold: usize,
    /// `k(n - 2k)`.
    pub bound: usize,
    pub seed: u64,
    pub trials: usize,
    pub nonzero_st: usize,
    /// Invariant classes of dimension at least the threshold with odd
    /// `deg S(a)`.
    pub odd_steenrod_degrees: usize,
    pub rank_rows: Vec<RankMod4Row>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Checks `st(α) = 0` for sums of products of invariant classes of dimension
/// at least `threshold > k(n - 2k)` on `H_k`, and `sq' = 2` on projectors of
/// rank `2 mod 4`.
pub fn st_vanishing_mechanism(n: usize, k: usize, threshold: usize, seed: u64, samples: usize) -> Result<MechanismReport> {
    if n % 2 != 0 {
        return Err(Error::OutOfRange { what: "n", detail: format!("{n} is odd") });
    }
    let h = UnitaryGrassmannian::new(n, k)?;
    let x = CorrRing::from_unitary(&h)?;
    let dim = x.dim();
    let bound = k * (n - 2 * k);
    if threshold <= bound || threshold > dim {
        return Err(Error::OutOfRange { what: "threshold", detail: format!("need {bound} < threshold <= {dim}, got {threshold}") });
    }
    let invariants = |c: usize| -> Result<Vec<Vec<Integer>>> {
        let piece = h.subring().invariants_mod_norms(h.sigma(), c)?;
        Ok(piece.quotient().invariants().rows().iter().map(|r| x.embed_block(c, r)).collect())
    };
    let high: Vec<(usize, Vec<Vec<Integer>>)> =
        (0..=dim - threshold).map(|c| Ok((c, invariants(c)?))).collect::<Result<Vec<_>>>()?.into_iter().filter(|(_, g)| !g.is_empty()).collect();
    let low: Vec<(usize, Vec<Vec<Integer>>)> =
        (dim - bound..=dim).map(|c| Ok((c, invariants(c)?))).collect::<Result<Vec<_>>>()?.into_iter().filter(|(_, g)| !g.is_empty()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let combine = |rng: &mut ChaCha8Rng, pool: &[(usize, Vec<Vec<Integer>>)]| -> Vec<Integer> {
        let (_, gens) = &pool[rng.gen_range(0..pool.len())];
        let mut v = vec![BigInt::zero(); x.rank()];
        for g in gens {
            let c = BigInt::from(rng.gen_range(-2..=2));
            v.iter_mut().zip(g).for_each(|(a, b)| *a += &c * b);
        }
        v
    };
    let (mut nonzero_st, mut odd) = (0, 0);
    for _ in 0..samples {
        let mut alpha = Correspondence::integral(IntMatrix::zeros(x.rank(), x.rank()));
        for _ in 0..rng.gen_range(1..=3) {
            let (a, b) = (combine(&mut rng, &high), combine(&mut rng, &high));
            odd += [&a, &b].iter().filter(|c| super::is_odd(&x.degree(&x.steenrod_lift(c)))).count();
            alpha = alpha.add(&Correspondence::rank_one(&a, &b));
        }
        if x.st(&alpha) != Mod4::new(0) {
            nonzero_st += 1;
        }
    }

    let (mut low_nonzero, mut low_odd) = (0, 0);
    if !low.is_empty() {
        for _ in 0..samples {
            let (a, b) = (combine(&mut rng, &low), combine(&mut rng, &low));
            low_odd += usize::from(super::is_odd(&x.degree(&x.steenrod_lift(&a))));
            if x.st(&Correspondence::rank_one(&a, &b)) != Mod4::new(0) {
                low_nonzero += 1;
            }
        }
    }

    let mut rank_rows = Vec::new();
    for rank in (2..=x.rank()).step_by(4) {
        for kind in [ProjectorKind::General, ProjectorKind::Symmetric] {
            for _ in 0..3 {
                match random_projector(&x, &mut rng, kind, Some(rank)) {
                    Ok(p) => {
                        let sq_prime = x.sq_prime(&p);
                        let ok = x.rank_of_projector(&p) == Ok(rank) && sq_prime == Mod4::new(2);
                        rank_rows.push(RankMod4Row { rank, symmetric: kind == ProjectorKind::Symmetric, sq_prime: sq_prime.value(), passed: ok });
                    }
                    Err(Error::SamplingFailed(_)) if kind == ProjectorKind::Symmetric => break,
                    Err(e) => return Err(e),
                }
            }
        }
    }

    let zero = Correspondence::mod2(IntMatrix::zeros(x.rank(), x.rank()));
    let checks = vec![
        Check::new("st vanishes", nonzero_st == 0, format!("{nonzero_st} of {samples} sums have st != 0")),
        Check::new("invariant classes have even deg S", odd == 0, format!("{odd} odd degrees")),
        Check::recorded(
            "classes of dimension at most k(n - 2k)",
            true,
            format!(
                "{low_nonzero} of {n_low} products have st != 0; {low_odd} of {n_low} classes have odd deg S",
                n_low = if low.is_empty() { 0 } else { samples }
            ),
        ),
        Check::new("st(0) = 0", x.st(&zero) == Mod4::new(0), ""),
        Check::new(
            "sq' = 2 for rank 2 mod 4",
            !rank_rows.is_empty() && rank_rows.iter().all(|r| r.passed),
            format!("{} projectors", rank_rows.len()),
        ),
    ];
    let passed = all_passed(&checks);
    Ok(MechanismReport { n, k, threshold, bound, seed, trials: samples, nonzero_st, odd_steenrod_degrees: odd, rank_rows, checks, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_on_projective_line() {
        let x = CorrRing::projective_space(1).unwrap();
        let r = verify_correspondence_suite(&x, 0, 16).unwrap();
        assert!(r.passed, "{r:#?}");
    }

    #[test]
    fn suite_is_deterministic() {
        let x = CorrRing::projective_space(2).unwrap();
        assert_eq!(verify_correspondence_suite(&x, 5, 8).unwrap(), verify_correspondence_suite(&x, 5, 8).unwrap());
    }

    #[test]
    fn minimization_keeps_failures() {
        let m = IntMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let out = minimize(vec![m], &|m: &[IntMatrix]| m[0].get(1, 1) == &BigInt::from(4));
        assert_eq!(out[0], IntMatrix::from_i64(&[&[0, 0], &[0, 4]]));
    }

    #[test]
    fn mechanism_rejects_low_threshold() {
        assert!(st_vanishing_mechanism(4, 1, 2, 0, 4).is_err());
    }
}
