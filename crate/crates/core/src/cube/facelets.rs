use std::fmt;
use std::str::FromStr;

use super::geometry::CORNER_FACELETS;
use super::{CubeError, CubeletState};

/// Sticker colors. Each is bound to the home face with the same index
/// (U, D, R, L, F, B).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Yellow,
    Red,
    Orange,
    Green,
    Blue,
}

impl Color {
    pub const ALL: [Color; 6] = [
        Color::White,
        Color::Yellow,
        Color::Red,
        Color::Orange,
        Color::Green,
        Color::Blue,
    ];

    pub fn letter(self) -> char {
        b"WYROGB"[self as usize] as char
    }

    pub fn from_letter(c: char) -> Option<Color> {
        "WYROGB".find(c).map(|i| Color::ALL[i])
    }

    fn is_up_down(self) -> bool {
        matches!(self, Color::White | Color::Yellow)
    }
}

/// Colors of each cubelet in the sticker order of its home slot.
const CUBELET_COLORS: [[Color; 3]; 8] = {
    let mut colors = [[Color::White; 3]; 8];
    let mut i = 0;
    while i < 8 {
        let mut n = 0;
        while n < 3 {
            colors[i][n] = Color::ALL[CORNER_FACELETS[i][n] / 4];
            n += 1;
        }
        i += 1;
    }
    colors
};

/// The 24 stickers, in facelet order (see the layout in `geometry`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaceletState(pub [Color; 24]);

impl FaceletState {
    pub fn solved() -> Self {
        FaceletState(std::array::from_fn(|i| Color::ALL[i / 4]))
    }

    /// Recovers the cubelet description, rejecting colorings that no real
    /// cube can show.
    pub fn to_cubelets(&self) -> Result<CubeletState, CubeError> {
        let f = &self.0;
        for color in Color::ALL {
            let count = f.iter().filter(|&&c| c == color).count();
            if count != 4 {
                return Err(CubeError::IllegalColoring { color, count });
            }
        }

        let mut perm = [0u8; 8];
        let mut ori = [0u8; 8];
        let mut used = [false; 8];
        for (slot, stickers) in CORNER_FACELETS.iter().enumerate() {
            let colors = stickers.map(|i| f[i]);
            let mut up_down = (0..3).filter(|&n| colors[n].is_up_down());
            let (Some(o), None) = (up_down.next(), up_down.next()) else {
                return Err(CubeError::IllegalCubelet { slot });
            };
            let c1 = colors[(o + 1) % 3];
            let c2 = colors[(o + 2) % 3];
            let id = CUBELET_COLORS
                .iter()
                .position(|home| home[0] == colors[o] && home[1] == c1 && home[2] == c2)
                .ok_or(CubeError::IllegalCubelet { slot })?;
            if std::mem::replace(&mut used[id], true) {
                return Err(CubeError::IllegalCubelet { slot });
            }
            perm[slot] = id as u8;
            ori[slot] = o as u8;
        }
        if ori.iter().map(|&o| o as u32).sum::<u32>() % 3 != 0 {
            return Err(CubeError::IllegalTwist);
        }
        Ok(CubeletState::from_parts_unchecked(perm, ori))
    }

    /// Sticker destination map applied: the sticker at `i` moves to `map[i]`.
    pub(crate) fn permuted(&self, map: &[usize; 24]) -> Self {
        let mut out = self.0;
        for (i, &dest) in map.iter().enumerate() {
            out[dest] = self.0[i];
        }
        FaceletState(out)
    }
}

impl CubeletState {
    pub fn to_facelets(&self) -> FaceletState {
        let mut f = [Color::White; 24];
        for (slot, stickers) in CORNER_FACELETS.iter().enumerate() {
            let id = self.perm()[slot] as usize;
            let o = self.ori()[slot] as usize;
            for n in 0..3 {
                f[stickers[(n + o) % 3]] = CUBELET_COLORS[id][n];
            }
        }
        FaceletState(f)
    }
}

impl fmt::Display for FaceletState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.0 {
            write!(f, "{}", c.letter())?;
        }
        Ok(())
    }
}

impl FromStr for FaceletState {
    type Err = CubeError;

    /// Parses 24 letters from `WYROGB`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if letters.len() != 24 {
            return Err(CubeError::FaceletLength(letters.len()));
        }
        let mut out = [Color::White; 24];
        for (i, (slot, &ch)) in out.iter_mut().zip(&letters).enumerate() {
            *slot = Color::from_letter(ch).ok_or(CubeError::UnknownColor {
                position: i,
                letter: ch,
            })?;
        }
        Ok(FaceletState(out))
    }
}
