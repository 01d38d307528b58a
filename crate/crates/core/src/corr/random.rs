//! Seeded samplers for classes, correspondences and split projectors.
//!
//! Projectors are built as `W G^{-1} Z^T` with `G = Z^T P W` invertible mod 2,
//! where the columns of `W` and `Z` are homogeneous of complementary
//! codimensions. Such an `α` satisfies `α ∘ α = α` and has rank `rk W`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use super::{CorrRing, Correspondence, Coefficients};
use crate::exact::{inverse_mod2, IntMatrix, Integer};
use crate::{Error, Result};

const ATTEMPTS: usize = 512;

/// Shape of a sampled projector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectorKind {
    General,
    Symmetric,
}

/// A homogeneous class of codimension `c` with entries in `[-bound, bound]`.
pub fn random_class<R: Rng + ?Sized>(ring: &CorrRing, rng: &mut R, c: usize, bound: i64) -> Vec<Integer> {
    ring.codims().iter().map(|&x| if x == c { BigInt::from(rng.gen_range(-bound..=bound)) } else { BigInt::zero() }).collect()
}

/// A homogeneous correspondence of codimension `c` on `X × X`.
pub fn random_correspondence<R: Rng + ?Sized>(ring: &CorrRing, rng: &mut R, c: usize, coefficients: Coefficients) -> Correspondence {
    let cd = ring.codims();
    let rows = cd
        .iter()
        .map(|&a| {
            cd.iter()
                .map(|&b| {
                    if a + b != c {
                        BigInt::zero()
                    } else if coefficients == Coefficients::Mod2 {
                        BigInt::from(rng.gen_range(0..2))
                    } else {
                        BigInt::from(rng.gen_range(-3..=3))
                    }
                })
                .collect()
        })
        .collect();
    let m = IntMatrix::new(cd.len(), rows);
    match coefficients {
        Coefficients::Integral => Correspondence::integral(m),
        Coefficients::Mod2 => Correspondence::mod2(m),
    }
}

/// A random `r` with `α + 2r` another integral lift of `α`. It is
/// homogeneous of the codimension of `α` when `α` is homogeneous.
pub fn random_lift<R: Rng + ?Sized>(ring: &CorrRing, rng: &mut R, a: &Correspondence) -> IntMatrix {
    let cd = ring.codims();
    let c = ring.codim_of(a);
    let rows = cd
        .iter()
        .map(|&x| cd.iter().map(|&y| if c.is_none_or(|c| x + y == c) { BigInt::from(rng.gen_range(-2..=2)) } else { BigInt::zero() }).collect())
        .collect();
    IntMatrix::new(cd.len(), rows)
}

/// A mod-2 projector of the given kind; of rank `rank` when given.
pub fn random_projector<R: Rng + ?Sized>(
    ring: &CorrRing,
    rng: &mut R,
    kind: ProjectorKind,
    rank: Option<usize>,
) -> Result<Correspondence> {
    for _ in 0..ATTEMPTS {
        let Some(counts) = random_counts(ring, rng, kind, rank) else { continue };
        let Some((w, z)) = blocks(ring, rng, kind, &counts) else { continue };
        if let Some(a) = split(ring, &w, &z, None) {
            return Ok(a);
        }
    }
    Err(Error::SamplingFailed(ATTEMPTS))
}

/// Two nonzero mod-2 projectors `α, β` with `α ∘ β = β ∘ α = 0`.
pub fn random_orthogonal_pair<R: Rng + ?Sized>(
    ring: &CorrRing,
    rng: &mut R,
    kind: ProjectorKind,
) -> Result<(Correspondence, Correspondence)> {
    let d = ring.dim();
    let units: usize = (0..=d).filter(|&c| 2 * c <= d).map(|c| ring.rank_in_codim(c)).sum();
    if kind == ProjectorKind::Symmetric && units < 2 {
        return Err(Error::SamplingFailed(0));
    }
    for _ in 0..ATTEMPTS {
        let Some(counts) = random_counts(ring, rng, kind, None) else { continue };
        if counts.iter().sum::<usize>() < 2 {
            continue;
        }
        match kind {
            ProjectorKind::General => {
                let Some((w, z)) = blocks(ring, rng, kind, &counts) else { continue };
                let mask: Vec<bool> = (0..w.ncols()).map(|_| rng.gen()).collect();
                if mask.iter().all(|&b| b) || mask.iter().all(|&b| !b) {
                    continue;
                }
                let inverted: Vec<bool> = mask.iter().map(|b| !b).collect();
                if let (Some(a), Some(b)) = (split(ring, &w, &z, Some(&mask)), split(ring, &w, &z, Some(&inverted))) {
                    return Ok((a, b));
                }
            }
            ProjectorKind::Symmetric => {
                let (first, second) = split_counts(ring.dim(), &counts, rng);
                if first.iter().all(|&m| m == 0) || second.iter().all(|&m| m == 0) {
                    continue;
                }
                let Some((w1, _)) = blocks(ring, rng, kind, &first) else { continue };
                let Some((w2, _)) = blocks(ring, rng, kind, &second) else { continue };
                let p = ring.pairing();
                let Some(h11) = inverse_mod2(&w1.transpose().mul(p).mul(&w1).mod2()) else { continue };
                let shift = w1.mul(&h11).mul(&w1.transpose()).mul(p).mul(&w2);
                let w2 = w2.add(&shift.scale(&BigInt::from(-1))).mod2();
                if let (Some(a), Some(b)) = (split(ring, &w1, &w1, None), split(ring, &w2, &w2, None)) {
                    return Ok((a, b));
                }
            }
        }
    }
    Err(Error::SamplingFailed(ATTEMPTS))
}

/// `W G^{-1} D Z^T` with `D` the diagonal of `mask`, or `None` when `G` is
/// singular mod 2.
fn split(ring: &CorrRing, w: &IntMatrix, z: &IntMatrix, mask: Option<&[bool]>) -> Option<Correspondence> {
    let g = z.transpose().mul(ring.pairing()).mul(w).mod2();
    let mut h = inverse_mod2(&g)?;
    if let Some(mask) = mask {
        for (j, &keep) in mask.iter().enumerate() {
            if !keep {
                for i in 0..h.nrows() {
                    h.set(i, j, BigInt::zero());
                }
            }
        }
    }
    Some(Correspondence::mod2(w.mul(&h).mul(&z.transpose())))
}

/// Number of columns of each codimension. Symmetric shapes pair codimension
/// `c` with `d - c`, so `counts[c] == counts[d - c]`.
fn random_counts<R: Rng + ?Sized>(ring: &CorrRing, rng: &mut R, kind: ProjectorKind, target: Option<usize>) -> Option<Vec<usize>> {
    let d = ring.dim();
    let caps: Vec<usize> = (0..=d).map(|c| ring.rank_in_codim(c)).collect();
    let mut counts = vec![0; d + 1];
    let slots: Vec<usize> = match kind {
        ProjectorKind::General => (0..=d).filter(|&c| caps[c] > 0).collect(),
        ProjectorKind::Symmetric => (0..=d).filter(|&c| 2 * c <= d && caps[c] > 0).collect(),
    };
    let weight = |c: usize| if kind == ProjectorKind::Symmetric && 2 * c != d { 2 } else { 1 };
    match target {
        None => {
            for &c in &slots {
                counts[c] = rng.gen_range(0..=caps[c]);
            }
        }
        Some(t) => {
            let mut total = 0;
            while total < t {
                let open: Vec<usize> = slots.iter().copied().filter(|&c| counts[c] < caps[c] && total + weight(c) <= t).collect();
                if open.is_empty() {
                    return None;
                }
                let c = open[rng.gen_range(0..open.len())];
                counts[c] += 1;
                total += weight(c);
            }
        }
    }
    if kind == ProjectorKind::Symmetric {
        for c in 0..=d {
            if 2 * c > d {
                counts[c] = counts[d - c];
            }
        }
    }
    (counts.iter().sum::<usize>() > 0).then_some(counts)
}

/// Splits symmetric counts into two symmetric parts.
fn split_counts<R: Rng + ?Sized>(d: usize, counts: &[usize], rng: &mut R) -> (Vec<usize>, Vec<usize>) {
    let mut first = vec![0; d + 1];
    for c in 0..=d {
        if 2 * c <= d {
            first[c] = (0..counts[c]).filter(|_| rng.gen()).count();
        } else {
            first[c] = first[d - c];
        }
    }
    let second = counts.iter().zip(&first).map(|(a, b)| a - b).collect();
    (first, second)
}

/// Columns `W, Z` with `Z^T P W` invertible mod 2, drawn one codimension
/// block at a time. For symmetric shapes `Z = W`.
fn blocks<R: Rng + ?Sized>(ring: &CorrRing, rng: &mut R, kind: ProjectorKind, counts: &[usize]) -> Option<(IntMatrix, IntMatrix)> {
    let d = ring.dim();
    let p = ring.pairing();
    let mut w = Vec::new();
    let mut z = Vec::new();
    for (c, &m) in counts.iter().enumerate() {
        if m == 0 || (kind == ProjectorKind::Symmetric && 2 * c > d) {
            continue;
        }
        let found = (0..ATTEMPTS).find_map(|_| {
            let wc = columns(ring, rng, m, c);
            let zc = match kind {
                ProjectorKind::General => columns(ring, rng, m, d - c),
                ProjectorKind::Symmetric if 2 * c == d => wc.clone(),
                ProjectorKind::Symmetric => columns(ring, rng, m, d - c),
            };
            inverse_mod2(&as_matrix(ring, &zc).transpose().mul(p).mul(&as_matrix(ring, &wc)).mod2()).map(|_| (wc, zc))
        })?;
        match kind {
            ProjectorKind::General => {
                w.extend(found.0);
                z.extend(found.1);
            }
            ProjectorKind::Symmetric if 2 * c == d => w.extend(found.0),
            ProjectorKind::Symmetric => {
                w.extend(found.0);
                w.extend(found.1);
            }
        }
    }
    let wm = as_matrix(ring, &w);
    let zm = if kind == ProjectorKind::Symmetric { wm.clone() } else { as_matrix(ring, &z) };
    Some((wm, zm))
}

/// `m` random 0/1 columns of codimension `c`.
fn columns<R: Rng + ?Sized>(ring: &CorrRing, rng: &mut R, m: usize, c: usize) -> Vec<Vec<Integer>> {
    (0..m).map(|_| ring.codims().iter().map(|&x| BigInt::from(u8::from(x == c && rng.gen()))).collect()).collect()
}

fn as_matrix(ring: &CorrRing, cols: &[Vec<Integer>]) -> IntMatrix {
    let rows = (0..ring.rank()).map(|i| cols.iter().map(|col| col[i].clone()).collect()).collect();
    IntMatrix::new(cols.len(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sampled_projectors_are_projectors() {
        let x = CorrRing::unitary(4, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for kind in [ProjectorKind::General, ProjectorKind::Symmetric] {
            for _ in 0..10 {
                let a = random_projector(&x, &mut rng, kind, None).unwrap();
                assert!(x.is_projector(&a));
                assert_eq!(x.codim_of(&a), Some(x.dim()));
                if kind == ProjectorKind::Symmetric {
                    assert!(x.is_symmetric(&a));
                }
            }
        }
    }

    #[test]
    fn prescribed_rank() {
        let x = CorrRing::unitary(4, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for r in [1, 2, 5, 6, 12] {
            let a = random_projector(&x, &mut rng, ProjectorKind::General, Some(r)).unwrap();
            assert_eq!(x.rank_of_projector(&a), Ok(r));
        }
    }

    #[test]
    fn orthogonal_pairs() {
        let x = CorrRing::projective_space(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for kind in [ProjectorKind::General, ProjectorKind::Symmetric] {
            for _ in 0..10 {
                let (a, b) = random_orthogonal_pair(&x, &mut rng, kind).unwrap();
                assert!(x.compose(&b, &a).unwrap().is_zero());
                assert!(x.compose(&a, &b).unwrap().is_zero());
                let ra = x.rank_of_projector(&a).unwrap();
                let rb = x.rank_of_projector(&b).unwrap();
                assert_eq!(x.rank_of_projector(&a.add(&b)), Ok(ra + rb));
            }
        }
    }
}
