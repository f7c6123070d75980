//! Exact distance table over all anchored states, pattern databases for the
//! heuristic search, and their on-disk form.

mod store;

use std::path::Path;

use crate::cube::{
    CanonicalState, CoordMoves, GeneralizedMove, ORI_COUNT, PERM_COUNT, STATE_COUNT,
};

pub use store::{decode, encode, StoreError, TableKind, MAGIC, VERSION};

const UNSEEN: u8 = u8::MAX;

pub const DISTANCE_FILE: &str = "distance.bin";
pub const ORI_PDB_FILE: &str = "ori_pdb.bin";
pub const PERM_PDB_FILE: &str = "perm_pdb.bin";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    QuarterTurn,
}

/// Exact quarter-turn distance to solved, one byte per rank.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceTable {
    metric: Metric,
    dist: Vec<u8>,
    histogram: Vec<u64>,
}

impl std::fmt::Debug for DistanceTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DistanceTable")
            .field("metric", &self.metric)
            .field("histogram", &self.histogram)
            .finish()
    }
}

struct BitSet(Vec<u64>);

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet(vec![0; len.div_ceil(64)])
    }

    #[inline]
    fn insert(&mut self, i: u32) -> bool {
        let (w, b) = ((i / 64) as usize, i % 64);
        let fresh = self.0[w] & (1 << b) == 0;
        self.0[w] |= 1 << b;
        fresh
    }

    fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                (bits != 0).then(|| {
                    let b = bits.trailing_zeros();
                    bits &= bits - 1;
                    w as u32 * 64 + b
                })
            })
        })
    }
}

impl DistanceTable {
    /// Breadth-first expansion from solved under the six generalized moves.
    pub fn build() -> DistanceTable {
        let moves = CoordMoves::get();
        let mut dist = vec![UNSEEN; STATE_COUNT];
        let mut visited = BitSet::new(STATE_COUNT);
        let mut frontier = BitSet::new(STATE_COUNT);
        visited.insert(0);
        frontier.insert(0);
        dist[0] = 0;
        let mut depth = 0u8;
        loop {
            let mut next = BitSet::new(STATE_COUNT);
            let mut reached = 0usize;
            for rank in frontier.iter() {
                for g in GeneralizedMove::ALL {
                    let child = moves.step_rank(rank, g);
                    if visited.insert(child) {
                        next.insert(child);
                        dist[child as usize] = depth + 1;
                        reached += 1;
                    }
                }
            }
            if reached == 0 {
                break;
            }
            frontier = next;
            depth += 1;
        }
        Self::from_entries(dist).expect("BFS reaches every state")
    }

    fn from_entries(dist: Vec<u8>) -> Result<DistanceTable, StoreError> {
        if let Some(index) = dist.iter().position(|&d| d == UNSEEN) {
            return Err(StoreError::BadEntry {
                index,
                value: UNSEEN,
            });
        }
        let max = dist.iter().copied().max().unwrap_or(0) as usize;
        let mut histogram = vec![0u64; max + 1];
        for &d in &dist {
            histogram[d as usize] += 1;
        }
        Ok(DistanceTable {
            metric: Metric::QuarterTurn,
            dist,
            histogram,
        })
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn distance(&self, state: &CanonicalState) -> u8 {
        self.dist[state.rank() as usize]
    }

    pub fn distance_of_rank(&self, rank: u32) -> u8 {
        self.dist[rank as usize]
    }

    pub fn entries(&self) -> &[u8] {
        &self.dist
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    /// `histogram()[d]` is the number of states at distance `d`.
    pub fn histogram(&self) -> &[u64] {
        &self.histogram
    }

    pub fn max_depth(&self) -> u8 {
        (self.histogram.len() - 1) as u8
    }

    pub fn save(&self, path: &Path) -> Result<(), StoreError> {
        store::write_file(path, TableKind::Full, &self.dist)
    }

    pub fn load(path: &Path) -> Result<DistanceTable, StoreError> {
        Self::from_entries(store::read_file(path, TableKind::Full, STATE_COUNT)?)
    }
}

/// Exact distances in the orientation-only and permutation-only
/// abstractions. Either one alone never overestimates the true distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternDb {
    ori: Vec<u8>,
    perm: Vec<u8>,
}

fn coordinate_bfs(size: usize, table: &[[u16; 6]]) -> Vec<u8> {
    let mut dist = vec![UNSEEN; size];
    dist[0] = 0;
    let mut frontier = vec![0u16];
    let mut depth = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in frontier {
            for &n in &table[c as usize] {
                if dist[n as usize] == UNSEEN {
                    dist[n as usize] = depth + 1;
                    next.push(n);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    dist
}

impl PatternDb {
    pub fn build() -> PatternDb {
        let moves = CoordMoves::get();
        PatternDb {
            ori: coordinate_bfs(ORI_COUNT, &moves.ori),
            perm: coordinate_bfs(PERM_COUNT, &moves.perm),
        }
    }

    pub fn ori_entries(&self) -> &[u8] {
        &self.ori
    }

    pub fn perm_entries(&self) -> &[u8] {
        &self.perm
    }

    #[inline]
    pub fn heuristic_coords(&self, perm: u16, ori: u16) -> u8 {
        self.ori[ori as usize].max(self.perm[perm as usize])
    }

    pub fn heuristic_rank(&self, rank: u32) -> u8 {
        let perm = (rank / ORI_COUNT as u32) as u16;
        let ori = (rank % ORI_COUNT as u32) as u16;
        self.heuristic_coords(perm, ori)
    }

    pub fn heuristic(&self, state: &CanonicalState) -> u8 {
        self.heuristic_rank(state.rank())
    }

    pub fn save(&self, ori_path: &Path, perm_path: &Path) -> Result<(), StoreError> {
        store::write_file(ori_path, TableKind::OriPdb, &self.ori)?;
        store::write_file(perm_path, TableKind::PermPdb, &self.perm)
    }

    pub fn load(ori_path: &Path, perm_path: &Path) -> Result<PatternDb, StoreError> {
        let ori = store::read_file(ori_path, TableKind::OriPdb, ORI_COUNT)?;
        let perm = store::read_file(perm_path, TableKind::PermPdb, PERM_COUNT)?;
        for (index, &value) in ori.iter().chain(&perm).enumerate() {
            if value == UNSEEN {
                return Err(StoreError::BadEntry { index, value });
            }
        }
        Ok(PatternDb { ori, perm })
    }
}

/// Full table plus heuristic databases.
#[derive(Debug, Clone)]
pub struct TableSet {
    pub distance: DistanceTable,
    pub pdb: PatternDb,
}

impl TableSet {
    pub fn build() -> TableSet {
        TableSet {
            distance: DistanceTable::build(),
            pdb: PatternDb::build(),
        }
    }

    pub fn save_dir(&self, dir: &Path) -> Result<(), StoreError> {
        std::fs::create_dir_all(dir).map_err(|source| StoreError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        self.distance.save(&dir.join(DISTANCE_FILE))?;
        self.pdb
            .save(&dir.join(ORI_PDB_FILE), &dir.join(PERM_PDB_FILE))
    }

    pub fn load_dir(dir: &Path) -> Result<TableSet, StoreError> {
        Ok(TableSet {
            distance: DistanceTable::load(&dir.join(DISTANCE_FILE))?,
            pdb: PatternDb::load(&dir.join(ORI_PDB_FILE), &dir.join(PERM_PDB_FILE))?,
        })
    }
}
