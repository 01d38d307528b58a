use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use unitary_chow_core::corr::{random_correspondence, random_projector, Coefficients, CorrRing, ProjectorKind};

#[test]
fn composition_is_associative_and_unital() {
    let x = CorrRing::unitary(4, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let d = x.dim();
    for _ in 0..8 {
        let a = random_correspondence(&x, &mut rng, d, Coefficients::Integral);
        let b = random_correspondence(&x, &mut rng, d, Coefficients::Integral);
        let c = random_correspondence(&x, &mut rng, d, Coefficients::Integral);
        let left = x.compose(&c, &x.compose(&b, &a).unwrap()).unwrap();
        let right = x.compose(&x.compose(&c, &b).unwrap(), &a).unwrap();
        assert_eq!(left.matrix(), right.matrix());
        assert_eq!(x.compose(&x.diagonal(), &a).unwrap().matrix(), a.matrix());
    }
}

#[test]
fn projector_ranks_are_additive_under_complement() {
    for x in [CorrRing::projective_space(3).unwrap(), CorrRing::unitary(4, 2).unwrap()] {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for kind in [ProjectorKind::General, ProjectorKind::Symmetric] {
            let p = random_projector(&x, &mut rng, kind, None).unwrap();
            let q = x.diagonal().add(&p.reduce()).reduce();
            assert!(x.is_projector(&q));
            assert_eq!(x.rank_of_projector(&p).unwrap() + x.rank_of_projector(&q).unwrap(), x.rank());
        }
    }
}

#[test]
fn sq_prime_of_the_diagonal_is_the_rank() {
    for x in [CorrRing::projective_space(1).unwrap(), CorrRing::projective_space(2).unwrap(), CorrRing::unitary(4, 1).unwrap()] {
        let sq = x.sq_prime(&x.diagonal());
        assert_eq!(sq.value() as usize, x.rank() % 4, "{}", x.name());
    }
}
