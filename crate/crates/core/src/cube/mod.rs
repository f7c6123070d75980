//! The 2x2x2 cube: cubelet and sticker representations, the quarter-turn
//! move algebra, the quotient by whole-cube rotations, and state ranking.

mod coords;
mod facelets;
mod geometry;
mod moves;
mod state;

use std::fmt;

use thiserror::Error;

pub use coords::{
    ori_coord, ori_from_coord, perm_coord, perm_from_coord, CoordMoves, ORI_COUNT, PERM_COUNT,
    STATE_COUNT,
};
pub use facelets::{Color, FaceletState};
pub use moves::{Face, GeneralizedMove, Move};
pub use state::{inverse_seq, reduce_move, rotations, CanonicalState, CubeletState, ANCHOR};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("permutation is not a bijection on 0..8")]
    InvalidPermutation,
    #[error("orientation values must be 0, 1 or 2")]
    InvalidOrientation,
    #[error("color {color:?} appears {count} times, expected 4")]
    IllegalColoring { color: Color, count: usize },
    #[error("stickers at corner slot {slot} do not form a real cubelet")]
    IllegalCubelet { slot: usize },
    #[error("corner twist sum is not a multiple of 3")]
    IllegalTwist,
    #[error("facelet string has {0} letters, expected 24")]
    FaceletLength(usize),
    #[error("unknown color letter {letter:?} at position {position}")]
    UnknownColor { position: usize, letter: char },
    #[error("state does not have the anchor cubelet at home")]
    NotCanonical,
    #[error("rank {0} is outside 0..3674160")]
    RankOutOfRange(u32),
    #[error("unknown move {token:?} at token {position}")]
    Parse { position: usize, token: String },
}

/// Parses whitespace-separated quarter turns. Token positions in errors
/// are 1-based.
pub fn parse_moves(text: &str) -> Result<Vec<Move>, CubeError> {
    text.split_whitespace()
        .enumerate()
        .map(|(i, tok)| {
            tok.parse::<Move>().map_err(|_| CubeError::Parse {
                position: i + 1,
                token: tok.to_string(),
            })
        })
        .collect()
}

pub fn parse_generalized(text: &str) -> Result<Vec<GeneralizedMove>, CubeError> {
    text.split_whitespace()
        .enumerate()
        .map(|(i, tok)| {
            tok.parse::<GeneralizedMove>()
                .map_err(|_| CubeError::Parse {
                    position: i + 1,
                    token: tok.to_string(),
                })
        })
        .collect()
}

pub fn format_moves<M: fmt::Display>(seq: &[M]) -> String {
    seq.iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
