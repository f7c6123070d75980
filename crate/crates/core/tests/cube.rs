mod common;

use cube2_core::cube::{
    format_moves, inverse_seq, parse_moves, reduce_move, rotations, CanonicalState, CubeletState,
    FaceletState, GeneralizedMove, Move, STATE_COUNT,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn moves() -> impl Strategy<Value = Vec<Move>> {
    prop::collection::vec((0..12usize).prop_map(|i| Move::ALL[i]), 0..40)
}

proptest! {
    #[test]
    fn sequence_then_inverse_is_identity(seq in moves()) {
        let s = CubeletState::SOLVED.apply_seq(&seq);
        prop_assert!(s.apply_seq(&inverse_seq(&seq)).is_solved());
        prop_assert_eq!(s.then(&s.inverse()), CubeletState::SOLVED);
    }

    #[test]
    fn facelets_round_trip(seq in moves()) {
        let s = CubeletState::SOLVED.apply_seq(&seq);
        let text = s.to_facelets().to_string();
        let back: FaceletState = text.parse().unwrap();
        prop_assert_eq!(back.to_cubelets().unwrap(), s);
    }

    #[test]
    fn notation_round_trip(seq in moves()) {
        prop_assert_eq!(parse_moves(&format_moves(&seq)).unwrap(), seq);
    }

    #[test]
    fn whole_cube_rotations_share_a_canonical_form(seq in moves(), r in 0..24usize) {
        let s = CubeletState::SOLVED.apply_seq(&seq);
        let turned = s.then(&rotations()[r]);
        prop_assert_eq!(turned.canonicalize(), s.canonicalize());
        prop_assert!(s.canonicalize().cubelets().is_canonical());
    }

    #[test]
    fn canonical_moves_follow_cubelet_moves(seq in moves(), g in 0..6usize) {
        let g = GeneralizedMove::ALL[g];
        let s = CubeletState::SOLVED.apply_seq(&seq).canonicalize();
        let raw = s.cubelets().apply(g.to_move());
        prop_assert_eq!(CanonicalState::new(raw).unwrap(), s.apply(g));
    }
}

#[test]
fn rotation_orbits_have_24_distinct_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let s = *common::random_canonical(&mut rng).cubelets();
        let mut orbit: Vec<_> = rotations().iter().map(|r| s.then(r)).collect();
        orbit.sort_by_key(|c| (*c.perm(), *c.ori()));
        orbit.dedup();
        assert_eq!(orbit.len(), 24);
    }
}

#[test]
fn reduced_moves_satisfy_the_canonical_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for m in Move::ALL {
        let g = reduce_move(m);
        for _ in 0..100 {
            let s = common::random_canonical(&mut rng);
            assert_eq!(
                s.cubelets().apply(m).canonicalize(),
                s.apply(g),
                "{m} -> {g}"
            );
        }
    }
}

#[test]
fn reduction_holds_for_any_orientation_in_the_weak_form() {
    // For raw states, m and its reduction differ by a whole-cube rotation
    // only up to canonicalization after the move.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in Move::ALL {
        let m_star = reduce_move(m).to_move();
        for _ in 0..100 {
            let r = rotations()[rand::Rng::gen_range(&mut rng, 0..24)];
            let s = common::random_canonical(&mut rng).cubelets().then(&r);
            assert_eq!(s.apply(m).canonicalize(), s.apply(m_star).canonicalize());
        }
    }
}

#[test]
fn rank_round_trip_is_exhaustive() {
    for rank in 0..STATE_COUNT as u32 {
        let s = CanonicalState::unrank(rank).unwrap();
        assert_eq!(s.rank(), rank);
    }
    assert!(CanonicalState::unrank(STATE_COUNT as u32).is_err());
}
