//! Optimal planners: IDA* guided by the pattern databases, and a greedy
//! descent over the exact distance table used as its oracle.

use crate::cube::{CanonicalState, CoordMoves, GeneralizedMove, ORI_COUNT};
use crate::tables::{DistanceTable, PatternDb};

/// No anchored state is further than this from solved.
pub const MAX_SOLUTION_LENGTH: u8 = 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub solution: Vec<GeneralizedMove>,
    pub nodes_expanded: u64,
    /// Number of depth-first rounds run (0 when the root is solved).
    pub iterations: u32,
    /// f-bound used by each round, in order.
    pub bounds: Vec<u8>,
}

struct Search<'a> {
    moves: &'a CoordMoves,
    pdb: &'a PatternDb,
    path: Vec<GeneralizedMove>,
    nodes: u64,
    next_bound: u8,
}

impl Search<'_> {
    /// Depth-first probe below `bound`. Returns true once the path solves.
    fn probe(&mut self, perm: u16, ori: u16, g: u8, bound: u8) -> bool {
        let f = g + self.pdb.heuristic_coords(perm, ori);
        if f > bound {
            self.next_bound = self.next_bound.min(f);
            return false;
        }
        if perm == 0 && ori == 0 {
            return true;
        }
        self.nodes += 1;
        let last = self.path.last().copied();
        let repeated = self.path.len() >= 2 && self.path[self.path.len() - 2] == last.unwrap();
        for m in GeneralizedMove::ALL {
            if let Some(prev) = last {
                if m == prev.inverse() || (m == prev && repeated) {
                    continue;
                }
            }
            let i = m.index();
            self.path.push(m);
            if self.probe(
                self.moves.perm[perm as usize][i],
                self.moves.ori[ori as usize][i],
                g + 1,
                bound,
            ) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

/// Iterative-deepening A*. Children are tried in the order U, U', R, R', F,
/// F'; a move is never followed by its inverse, and no move appears three
/// times in a row. Returns the first optimal solution in that order.
pub fn ida_star(state: &CanonicalState, pdb: &PatternDb) -> SolveResult {
    let rank = state.rank();
    let perm = (rank / ORI_COUNT as u32) as u16;
    let ori = (rank % ORI_COUNT as u32) as u16;
    let mut search = Search {
        moves: CoordMoves::get(),
        pdb,
        path: Vec::with_capacity(MAX_SOLUTION_LENGTH as usize),
        nodes: 0,
        next_bound: u8::MAX,
    };
    let mut result = SolveResult {
        solution: Vec::new(),
        nodes_expanded: 0,
        iterations: 0,
        bounds: Vec::new(),
    };
    if rank == 0 {
        return result;
    }
    let mut bound = pdb.heuristic_coords(perm, ori);
    loop {
        assert!(
            bound <= MAX_SOLUTION_LENGTH,
            "search bound exceeded {MAX_SOLUTION_LENGTH}"
        );
        result.iterations += 1;
        result.bounds.push(bound);
        search.next_bound = u8::MAX;
        if search.probe(perm, ori, 0, bound) {
            break;
        }
        bound = search.next_bound;
    }
    result.solution = search.path;
    result.nodes_expanded = search.nodes;
    result
}

/// Walks downhill in the exact table, taking the first generalized move (in
/// the fixed order) that lowers the distance by one.
pub fn oracle_solve(state: &CanonicalState, table: &DistanceTable) -> Vec<GeneralizedMove> {
    let moves = CoordMoves::get();
    let mut rank = state.rank();
    let mut d = table.distance_of_rank(rank);
    let mut solution = Vec::with_capacity(d as usize);
    while d > 0 {
        let (g, next) = GeneralizedMove::ALL
            .into_iter()
            .map(|g| (g, moves.step_rank(rank, g)))
            .find(|&(_, n)| table.distance_of_rank(n) + 1 == d)
            .expect("a state at distance d has a neighbour at d - 1");
        solution.push(g);
        rank = next;
        d -= 1;
    }
    solution
}

/// Source of move sequences for the executor.
pub trait Planner: Sync {
    fn plan(&self, state: &CanonicalState) -> Vec<GeneralizedMove>;
}

pub struct OraclePlanner<'a>(pub &'a DistanceTable);

impl Planner for OraclePlanner<'_> {
    fn plan(&self, state: &CanonicalState) -> Vec<GeneralizedMove> {
        oracle_solve(state, self.0)
    }
}

pub struct IdaPlanner<'a>(pub &'a PatternDb);

impl Planner for IdaPlanner<'_> {
    fn plan(&self, state: &CanonicalState) -> Vec<GeneralizedMove> {
        ida_star(state, self.0).solution
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solved_needs_nothing() {
        let pdb = PatternDb::build();
        let r = ida_star(&CanonicalState::SOLVED, &pdb);
        assert!(r.solution.is_empty());
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn single_turn_is_undone() {
        let pdb = PatternDb::build();
        let s = CanonicalState::SOLVED.apply(GeneralizedMove::U);
        let r = ida_star(&s, &pdb);
        assert_eq!(r.solution, vec![GeneralizedMove::UPrime]);
        assert_eq!(r.bounds, vec![1]);
    }

    #[test]
    fn short_scrambles_solve() {
        use GeneralizedMove::*;
        let pdb = PatternDb::build();
        for seq in [
            vec![R, U],
            vec![F, F],
            vec![R, U, F, R],
            vec![F, U, R, RPrime, UPrime],
        ] {
            let s = CanonicalState::SOLVED.apply_seq(&seq);
            let r = ida_star(&s, &pdb);
            assert!(s.apply_seq(&r.solution).is_solved());
            assert!(r.solution.len() <= seq.len());
            assert!(r.bounds.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(r.bounds[0], pdb.heuristic(&s));
        }
    }
}
