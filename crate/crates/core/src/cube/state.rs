use std::sync::OnceLock;

use super::facelets::FaceletState;
use super::geometry::{face_normal, turn_map};
use super::moves::{GeneralizedMove, Move};
use super::CubeError;

/// Slot of the anchor cubelet (DBL) and its id.
pub const ANCHOR: usize = 7;

/// Corner cubelets by slot.
///
/// `perm[slot]` is the id of the cubelet sitting in `slot` (ids are named by
/// home slot: URF, UFL, ULB, UBR, DFR, DLF, DRB, DBL). `ori[slot]` counts
/// clockwise twists of that cubelet, read off where its U/D sticker sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CubeletState {
    perm: [u8; 8],
    ori: [u8; 8],
}

impl CubeletState {
    pub const SOLVED: CubeletState = CubeletState {
        perm: [0, 1, 2, 3, 4, 5, 6, 7],
        ori: [0; 8],
    };

    pub fn new(perm: [u8; 8], ori: [u8; 8]) -> Result<Self, CubeError> {
        let mut seen = [false; 8];
        for &p in &perm {
            if p > 7 || std::mem::replace(&mut seen[p as usize], true) {
                return Err(CubeError::InvalidPermutation);
            }
        }
        if ori.iter().any(|&o| o > 2) {
            return Err(CubeError::InvalidOrientation);
        }
        if ori.iter().map(|&o| o as u32).sum::<u32>() % 3 != 0 {
            return Err(CubeError::IllegalTwist);
        }
        Ok(CubeletState { perm, ori })
    }

    pub(crate) const fn from_parts_unchecked(perm: [u8; 8], ori: [u8; 8]) -> Self {
        CubeletState { perm, ori }
    }

    pub fn perm(&self) -> &[u8; 8] {
        &self.perm
    }

    pub fn ori(&self) -> &[u8; 8] {
        &self.ori
    }

    /// Group product: the state reached by doing `self`, then `other`.
    pub fn then(&self, other: &CubeletState) -> CubeletState {
        let mut perm = [0; 8];
        let mut ori = [0; 8];
        for i in 0..8 {
            let from = other.perm[i] as usize;
            perm[i] = self.perm[from];
            ori[i] = (self.ori[from] + other.ori[i]) % 3;
        }
        CubeletState { perm, ori }
    }

    pub fn inverse(&self) -> CubeletState {
        let mut perm = [0; 8];
        let mut ori = [0; 8];
        for i in 0..8 {
            let p = self.perm[i] as usize;
            perm[p] = i as u8;
            ori[p] = (3 - self.ori[i]) % 3;
        }
        CubeletState { perm, ori }
    }

    pub fn apply(&self, m: Move) -> CubeletState {
        self.then(&move_cubes()[m.index()])
    }

    pub fn apply_seq(&self, seq: &[Move]) -> CubeletState {
        seq.iter().fold(*self, |s, &m| s.apply(m))
    }

    /// Anchored representative of this state's whole-cube-rotation orbit.
    pub fn canonicalize(&self) -> CanonicalState {
        let slot = self
            .perm
            .iter()
            .position(|&p| p as usize == ANCHOR)
            .unwrap();
        let need = (3 - self.ori[slot]) % 3;
        let rot = &rotations()[anchor_rotation()[slot][need as usize]];
        CanonicalState(self.then(rot))
    }

    pub fn is_solved(&self) -> bool {
        self.canonicalize().is_solved()
    }

    pub fn is_canonical(&self) -> bool {
        self.perm[ANCHOR] as usize == ANCHOR && self.ori[ANCHOR] == 0
    }
}

impl Default for CubeletState {
    fn default() -> Self {
        Self::SOLVED
    }
}

/// A state with the anchor cubelet home and untwisted. One per orbit of the
/// 24 whole-cube rotations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalState(CubeletState);

impl CanonicalState {
    pub const SOLVED: CanonicalState = CanonicalState(CubeletState::SOLVED);

    pub fn new(state: CubeletState) -> Result<Self, CubeError> {
        if state.is_canonical() {
            Ok(CanonicalState(state))
        } else {
            Err(CubeError::NotCanonical)
        }
    }

    pub(crate) const fn new_unchecked(state: CubeletState) -> Self {
        CanonicalState(state)
    }

    pub fn cubelets(&self) -> &CubeletState {
        &self.0
    }

    pub fn apply(&self, m: GeneralizedMove) -> CanonicalState {
        CanonicalState(self.0.apply(m.to_move()))
    }

    pub fn apply_seq(&self, seq: &[GeneralizedMove]) -> CanonicalState {
        seq.iter().fold(*self, |s, &m| s.apply(m))
    }

    pub fn is_solved(&self) -> bool {
        self.0 == CubeletState::SOLVED
    }
}

impl From<CanonicalState> for CubeletState {
    fn from(s: CanonicalState) -> Self {
        s.0
    }
}

pub fn inverse_seq(seq: &[Move]) -> Vec<Move> {
    seq.iter().rev().map(|m| m.inverse()).collect()
}

/// Effect of each of the 12 moves on the solved cube, traced sticker by
/// sticker from the layer geometry.
pub(crate) fn move_cubes() -> &'static [CubeletState; 12] {
    static TABLE: OnceLock<[CubeletState; 12]> = OnceLock::new();
    TABLE.get_or_init(|| {
        Move::ALL.map(|m| {
            let map = turn_map(face_normal(m.face), !m.prime, true);
            FaceletState::solved()
                .permuted(&map)
                .to_cubelets()
                .expect("a layer turn yields a legal cube")
        })
    })
}

/// The 24 whole-cube rotations as cubelet states, identity first.
pub fn rotations() -> &'static [CubeletState; 24] {
    static TABLE: OnceLock<[CubeletState; 24]> = OnceLock::new();
    TABLE.get_or_init(|| {
        use super::moves::Face;
        let pair = |a: Face| {
            let m = Move::new(a, false);
            move_cubes()[m.index()].then(&move_cubes()[Move::new(a.opposite(), true).index()])
        };
        let gens = [pair(Face::R), pair(Face::U), pair(Face::F)];
        let mut group = vec![CubeletState::SOLVED];
        let mut next = 0;
        while next < group.len() {
            let r = group[next];
            for g in &gens {
                let p = r.then(g);
                if !group.contains(&p) {
                    group.push(p);
                }
            }
            next += 1;
        }
        group.try_into().expect("rotation group has 24 elements")
    })
}

/// `[slot][twist]` -> index into [`rotations`] of the rotation that brings
/// the cubelet at `slot` home with the given extra twist.
fn anchor_rotation() -> &'static [[usize; 3]; 8] {
    static TABLE: OnceLock<[[usize; 3]; 8]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [[usize::MAX; 3]; 8];
        for (i, r) in rotations().iter().enumerate() {
            let cell = &mut table[r.perm[ANCHOR] as usize][r.ori[ANCHOR] as usize];
            assert_eq!(*cell, usize::MAX, "rotation flags must be distinct");
            *cell = i;
        }
        table
    })
}

/// The generalized move with the same effect as `m` once whole-cube
/// rotations are factored out. The pairing is found by search: the unique
/// `g` with `canonicalize(solved * m) == solved * g`.
pub fn reduce_move(m: Move) -> GeneralizedMove {
    reduction_table()[m.index()]
}

fn reduction_table() -> &'static [GeneralizedMove; 12] {
    static TABLE: OnceLock<[GeneralizedMove; 12]> = OnceLock::new();
    TABLE.get_or_init(|| {
        Move::ALL.map(|m| {
            let target = CubeletState::SOLVED.apply(m).canonicalize();
            let mut hits = GeneralizedMove::ALL
                .into_iter()
                .filter(|&g| CanonicalState::SOLVED.apply(g) == target);
            let g = hits.next().expect("every move reduces");
            assert!(hits.next().is_none());
            g
        })
    })
}
