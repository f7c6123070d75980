//! Dense indexing of anchored states.
//!
//! rank = lehmer(perm[0..7]) * 729 + Σ_{i<6} ori[i] * 3^i. The anchor slot
//! is fixed and ori[6] follows from the twist-sum rule, so both parts are
//! independent coordinates under generalized moves.

use std::sync::OnceLock;

use super::moves::GeneralizedMove;
use super::state::{CanonicalState, CubeletState};
use super::CubeError;

pub const PERM_COUNT: usize = 5040;
pub const ORI_COUNT: usize = 729;
pub const STATE_COUNT: usize = PERM_COUNT * ORI_COUNT;

/// Lehmer rank of the first seven entries (a permutation of 0..7).
pub fn perm_coord(perm: &[u8; 8]) -> u16 {
    let mut rank = 0u16;
    for i in 0..7 {
        let smaller = perm[i + 1..7].iter().filter(|&&p| p < perm[i]).count() as u16;
        rank = rank * (7 - i as u16) + smaller;
    }
    rank
}

pub fn perm_from_coord(coord: u16) -> [u8; 8] {
    let mut digits = [0u16; 7];
    let mut c = coord;
    for i in (0..7).rev() {
        let radix = 7 - i as u16;
        digits[i] = c % radix;
        c /= radix;
    }
    let mut pool: Vec<u8> = (0..7).collect();
    let mut perm = [7u8; 8];
    for (slot, &d) in digits.iter().enumerate() {
        perm[slot] = pool.remove(d as usize);
    }
    perm
}

pub fn ori_coord(ori: &[u8; 8]) -> u16 {
    ori[..6].iter().rev().fold(0, |acc, &o| acc * 3 + o as u16)
}

pub fn ori_from_coord(coord: u16) -> [u8; 8] {
    let mut ori = [0u8; 8];
    let mut c = coord;
    let mut sum = 0;
    for o in ori.iter_mut().take(6) {
        *o = (c % 3) as u8;
        sum += *o;
        c /= 3;
    }
    ori[6] = (3 - sum % 3) % 3;
    ori
}

impl CanonicalState {
    pub fn rank(&self) -> u32 {
        let s = self.cubelets();
        perm_coord(s.perm()) as u32 * ORI_COUNT as u32 + ori_coord(s.ori()) as u32
    }

    pub fn unrank(index: u32) -> Result<CanonicalState, CubeError> {
        if index as usize >= STATE_COUNT {
            return Err(CubeError::RankOutOfRange(index));
        }
        Ok(Self::from_coords(
            (index / ORI_COUNT as u32) as u16,
            (index % ORI_COUNT as u32) as u16,
        ))
    }

    pub(crate) fn from_coords(perm: u16, ori: u16) -> CanonicalState {
        CanonicalState::new_unchecked(CubeletState::from_parts_unchecked(
            perm_from_coord(perm),
            ori_from_coord(ori),
        ))
    }
}

/// Per-move transition tables on the two coordinates.
pub struct CoordMoves {
    pub perm: Vec<[u16; 6]>,
    pub ori: Vec<[u16; 6]>,
}

impl CoordMoves {
    pub fn get() -> &'static CoordMoves {
        static TABLE: OnceLock<CoordMoves> = OnceLock::new();
        TABLE.get_or_init(|| {
            let step = |s: CanonicalState, g: GeneralizedMove| *s.apply(g).cubelets();
            let perm = (0..PERM_COUNT as u16)
                .map(|p| {
                    let s = CanonicalState::from_coords(p, 0);
                    GeneralizedMove::ALL.map(|g| perm_coord(step(s, g).perm()))
                })
                .collect();
            let ori = (0..ORI_COUNT as u16)
                .map(|o| {
                    let s = CanonicalState::from_coords(0, o);
                    GeneralizedMove::ALL.map(|g| ori_coord(step(s, g).ori()))
                })
                .collect();
            CoordMoves { perm, ori }
        })
    }

    /// Rank of the neighbour of `rank` under `g`.
    #[inline]
    pub fn step_rank(&self, rank: u32, g: GeneralizedMove) -> u32 {
        let p = (rank / ORI_COUNT as u32) as usize;
        let o = (rank % ORI_COUNT as u32) as usize;
        self.perm[p][g.index()] as u32 * ORI_COUNT as u32 + self.ori[o][g.index()] as u32
    }
}
