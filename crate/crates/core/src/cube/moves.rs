use std::fmt;
use std::str::FromStr;

use super::CubeError;

/// The six faces, in the fixed order U, D, R, L, F, B.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    U,
    D,
    R,
    L,
    F,
    B,
}

impl Face {
    pub const ALL: [Face; 6] = [Face::U, Face::D, Face::R, Face::L, Face::F, Face::B];

    pub fn opposite(self) -> Face {
        match self {
            Face::U => Face::D,
            Face::D => Face::U,
            Face::R => Face::L,
            Face::L => Face::R,
            Face::F => Face::B,
            Face::B => Face::F,
        }
    }

    fn letter(self) -> char {
        match self {
            Face::U => 'U',
            Face::D => 'D',
            Face::R => 'R',
            Face::L => 'L',
            Face::F => 'F',
            Face::B => 'B',
        }
    }
}

/// A quarter turn of one layer. `prime` is the counterclockwise direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub face: Face,
    pub prime: bool,
}

impl Move {
    /// All twelve quarter turns: U, U', D, D', R, R', L, L', F, F', B, B'.
    pub const ALL: [Move; 12] = {
        let mut all = [Move {
            face: Face::U,
            prime: false,
        }; 12];
        let mut i = 0;
        while i < 12 {
            all[i] = Move {
                face: Face::ALL[i / 2],
                prime: i % 2 == 1,
            };
            i += 1;
        }
        all
    };

    pub const fn new(face: Face, prime: bool) -> Self {
        Move { face, prime }
    }

    pub fn inverse(self) -> Move {
        Move {
            face: self.face,
            prime: !self.prime,
        }
    }

    /// Position in [`Move::ALL`].
    pub fn index(self) -> usize {
        self.face as usize * 2 + self.prime as usize
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            self.face.letter(),
            if self.prime { "'" } else { "" }
        )
    }
}

impl FromStr for Move {
    type Err = CubeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CubeError::Parse {
            position: 1,
            token: s.to_string(),
        };
        let mut chars = s.chars();
        let face = match chars.next().ok_or_else(bad)? {
            'U' => Face::U,
            'D' => Face::D,
            'R' => Face::R,
            'L' => Face::L,
            'F' => Face::F,
            'B' => Face::B,
            _ => return Err(bad()),
        };
        let prime = match chars.as_str() {
            "" => false,
            "'" => true,
            _ => return Err(bad()),
        };
        Ok(Move { face, prime })
    }
}

/// The reduced move set acting on anchored states. None of these layers
/// contains the DBL anchor cubelet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneralizedMove {
    U,
    UPrime,
    R,
    RPrime,
    F,
    FPrime,
}

impl GeneralizedMove {
    /// Fixed child order used by the solvers.
    pub const ALL: [GeneralizedMove; 6] = [
        GeneralizedMove::U,
        GeneralizedMove::UPrime,
        GeneralizedMove::R,
        GeneralizedMove::RPrime,
        GeneralizedMove::F,
        GeneralizedMove::FPrime,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_prime(self) -> bool {
        matches!(self, Self::UPrime | Self::RPrime | Self::FPrime)
    }

    pub fn inverse(self) -> Self {
        Self::ALL[self.index() ^ 1]
    }

    pub fn face(self) -> Face {
        match self {
            Self::U | Self::UPrime => Face::U,
            Self::R | Self::RPrime => Face::R,
            Self::F | Self::FPrime => Face::F,
        }
    }

    pub fn to_move(self) -> Move {
        Move::new(self.face(), self.is_prime())
    }

    /// `Some` when `m` is already in the reduced set.
    pub fn from_move(m: Move) -> Option<Self> {
        let base = match m.face {
            Face::U => 0,
            Face::R => 2,
            Face::F => 4,
            _ => return None,
        };
        Some(Self::ALL[base + m.prime as usize])
    }
}

impl fmt::Display for GeneralizedMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_move().fmt(f)
    }
}

impl FromStr for GeneralizedMove {
    type Err = CubeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let m: Move = s.parse()?;
        Self::from_move(m).ok_or(CubeError::Parse {
            position: 1,
            token: s.to_string(),
        })
    }
}
