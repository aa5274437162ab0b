//! Exhaustive breadth-first search over the full reachable state space.
//!
//! States pack into a single word: the empty-hole index in the high bits,
//! then a `2n+1`-bit mask marking red holes. A perfect rank (empty index
//! times C(2n, n) red-mask combination ranks) indexes a visited bit array,
//! so the search needs no hashing. The state count is (2n+1)·C(2n, n):
//!
//! ```text
//!   n      4       6        8          10           12
//!   states 630     12_012   218_790    3_879_876    67_603_900
//! ```
//!
//! Search results are deterministic for a fixed `n`: frontier expansion may
//! be partitioned across workers, but candidate layers are merged in frontier
//! order, so every field (including the witness path) is bit-identical to a
//! sequential run.

use thiserror::Error;

use crate::board::{Board, BoardError, Cell, Color, Move, MoveKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("n={n} exceeds the feasibility bound {max_n}; raise the bound explicitly to proceed")]
    FeasibilityExceeded { n: usize, max_n: usize },
    #[error("search for n={n} needs an estimated {required} bytes, over the {budget}-byte budget")]
    MemoryBudgetExceeded { n: usize, required: u64, budget: u64 },
    #[error("invalid packed state: {reason}")]
    InvalidPackedState { reason: &'static str },
    #[error(transparent)]
    Board(#[from] BoardError),
}

/// Tunable limits for the search. Bounds are configuration, not constants.
#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Largest n the full search will attempt (default 12, ~67.6M states).
    pub max_n: usize,
    /// Largest n for the all-states increasing-jump scan (default 5).
    pub scan_max_n: usize,
    /// Worker threads for frontier expansion. Results are identical for any
    /// worker count; 1 runs fully sequentially.
    pub workers: usize,
    /// Refuse searches whose estimated footprint exceeds this many bytes.
    pub memory_budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_n: 12, scan_max_n: 5, workers: 1, memory_budget: 4 << 30 }
    }
}

/// A board packed as `empty_index << (2n+1) | red_mask`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PackedState(u64);

impl PackedState {
    pub fn raw(self) -> u64 {
        self.0
    }
}

/// Number of distinct valid boards for size n.
pub fn state_space_size(n: usize) -> u64 {
    (2 * n as u64 + 1) * binomial(2 * n as u64, n as u64)
}

fn binomial(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut result = 1u64;
    for i in 0..b {
        result = result * (a - i) / (i + 1);
    }
    result
}

/// C(i, j) for i <= holes, j <= picks.
fn binomial_table(holes: usize, picks: usize) -> Vec<Vec<u64>> {
    let mut table = vec![vec![0u64; picks + 1]; holes + 1];
    for (i, row) in table.iter_mut().enumerate() {
        row[0] = 1;
        for (j, slot) in row.iter_mut().enumerate().skip(1).take(picks.min(i)) {
            *slot = binomial(i as u64, j as u64);
        }
    }
    table
}

pub fn encode_state(board: &Board) -> PackedState {
    let holes = board.hole_count();
    let mut mask = 0u64;
    for (i, cell) in board.cells().iter().enumerate() {
        if *cell == Cell::Peg(Color::Red) {
            mask |= 1 << i;
        }
    }
    PackedState(((board.empty_index() as u64) << holes) | mask)
}

pub fn decode_state(state: PackedState, n: usize) -> Result<Board, OracleError> {
    if n < 1 {
        return Err(BoardError::InvalidSize.into());
    }
    let holes = 2 * n + 1;
    let mask = state.0 & ((1u64 << holes) - 1);
    let empty = (state.0 >> holes) as usize;
    if empty >= holes {
        return Err(OracleError::InvalidPackedState { reason: "empty index out of range" });
    }
    if mask.count_ones() as usize != n {
        return Err(OracleError::InvalidPackedState { reason: "red mask population is not n" });
    }
    if mask & (1 << empty) != 0 {
        return Err(OracleError::InvalidPackedState { reason: "red mask marks the empty hole" });
    }
    let cells = (0..holes)
        .map(|i| {
            if i == empty {
                Cell::Empty
            } else if mask & (1 << i) != 0 {
                Cell::Peg(Color::Red)
            } else {
                Cell::Peg(Color::Blue)
            }
        })
        .collect();
    Ok(Board::from_cells(n, cells)?)
}

/// Outcome of the exhaustive search for one n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    /// Exact shortest distance from the start to the goal position, or None
    /// if the goal was never reached.
    pub min_moves: Option<u32>,
    pub reachable_states: u64,
    /// One shortest start-to-goal move sequence, when requested.
    pub witness: Option<Vec<Move>>,
    pub peak_frontier: usize,
    /// States whose neighbors were generated (equals `reachable_states` for
    /// a run-to-exhaustion search).
    pub expanded: u64,
}

struct SearchOutput {
    min_moves: Option<u32>,
    reachable: u64,
    peak_frontier: usize,
    expanded: u64,
    arrived_via: Option<Vec<u8>>,
    states: Option<Vec<u64>>,
    distances: Option<Vec<u32>>,
}

struct Packing {
    holes: usize,
    comb: u64,
    table: Vec<Vec<u64>>,
}

impl Packing {
    fn new(n: usize) -> Packing {
        let holes = 2 * n + 1;
        Packing { holes, comb: binomial(2 * n as u64, n as u64), table: binomial_table(holes, n) }
    }

    fn empty_of(&self, state: u64) -> usize {
        (state >> self.holes) as usize
    }

    fn mask_of(&self, state: u64) -> u64 {
        state & ((1u64 << self.holes) - 1)
    }

    fn pack(&self, empty: usize, mask: u64) -> u64 {
        ((empty as u64) << self.holes) | mask
    }

    /// Perfect rank: empty index times the red-combination count, plus the
    /// colex rank of the red positions among the 2n occupied holes.
    fn rank(&self, state: u64) -> usize {
        let empty = self.empty_of(state);
        let mask = self.mask_of(state);
        let low = mask & ((1u64 << empty) - 1);
        let high = mask >> (empty + 1);
        let mut squeezed = low | (high << empty);
        let mut rank = 0u64;
        let mut picked = 0usize;
        while squeezed != 0 {
            let position = squeezed.trailing_zeros() as usize;
            picked += 1;
            rank += self.table[position][picked];
            squeezed &= squeezed - 1;
        }
        (self.empty_of(state) as u64 * self.comb + rank) as usize
    }

    /// All states one move away, paired with the empty index of the source
    /// state (enough to reconstruct the arriving move later).
    fn neighbors(&self, state: u64, out: &mut Vec<(u64, u8)>) {
        let empty = self.empty_of(state) as isize;
        let mask = self.mask_of(state);
        for offset in [-2isize, -1, 1, 2] {
            let from = empty + offset;
            if from < 0 || from >= self.holes as isize {
                continue;
            }
            let from_bit = 1u64 << from;
            let next_mask =
                if mask & from_bit != 0 { (mask & !from_bit) | (1 << empty) } else { mask };
            out.push((self.pack(from as usize, next_mask), empty as u8));
        }
    }
}

struct BitSet(Vec<u64>);

impl BitSet {
    fn new(bits: usize) -> BitSet {
        BitSet(vec![0u64; bits.div_ceil(64)])
    }

    fn test(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
}

fn check_feasibility(
    n: usize,
    bound: usize,
    config: &OracleConfig,
    want_path: bool,
    collect: bool,
) -> Result<(), OracleError> {
    if n < 1 {
        return Err(BoardError::InvalidSize.into());
    }
    if n > bound {
        return Err(OracleError::FeasibilityExceeded { n, max_n: bound });
    }
    let states = state_space_size(n);
    // Rough ceiling: visited bits, frontier words, plus optional per-state
    // bookkeeping. Frontiers never hold the whole space; 3 bytes per state
    // over-approximates the observed peaks comfortably.
    let mut required = states / 8 + states * 3;
    if want_path {
        required += states;
    }
    if collect {
        required += states * 8;
    }
    if required > config.memory_budget {
        return Err(OracleError::MemoryBudgetExceeded {
            n,
            required,
            budget: config.memory_budget,
        });
    }
    Ok(())
}

fn expand_chunk(packing: &Packing, visited: &BitSet, chunk: &[u64]) -> Vec<(u64, u8)> {
    let mut out = Vec::with_capacity(chunk.len() * 4);
    let mut scratch = Vec::with_capacity(4);
    for &state in chunk {
        scratch.clear();
        packing.neighbors(state, &mut scratch);
        for &(next, via) in &scratch {
            // Filter against the frozen previous layers; the merge step
            // re-checks against states discovered this layer.
            if !visited.test(packing.rank(next)) {
                out.push((next, via));
            }
        }
    }
    out
}

fn run_search(
    n: usize,
    config: &OracleConfig,
    want_path: bool,
    collect_states: bool,
    record_distances: bool,
) -> (Packing, u64, u64, SearchOutput) {
    let packing = Packing::new(n);
    let size = state_space_size(n) as usize;
    let start = packing.pack(n, ((1u64 << n) - 1) << (n + 1));
    let goal = packing.pack(n, (1u64 << n) - 1);

    let mut visited = BitSet::new(size);
    let mut arrived_via = want_path.then(|| vec![0u8; size]);
    let mut states = collect_states.then(|| Vec::with_capacity(1024));
    let mut distances = record_distances.then(|| vec![u32::MAX; size]);

    visited.set(packing.rank(start));
    if let Some(s) = states.as_mut() {
        s.push(start);
    }
    if let Some(d) = distances.as_mut() {
        d[packing.rank(start)] = 0;
    }

    let mut frontier = vec![start];
    let mut reachable = 1u64;
    let mut peak_frontier = 1usize;
    let mut expanded = 0u64;
    let mut min_moves = None;
    let mut depth = 0u32;

    while !frontier.is_empty() {
        expanded += frontier.len() as u64;
        depth += 1;
        let workers = config.workers.max(1).min(frontier.len());
        let candidates: Vec<Vec<(u64, u8)>> = if workers <= 1 {
            vec![expand_chunk(&packing, &visited, &frontier)]
        } else {
            let chunk_len = frontier.len().div_ceil(workers);
            std::thread::scope(|scope| {
                let handles: Vec<_> = frontier
                    .chunks(chunk_len)
                    .map(|chunk| scope.spawn(|| expand_chunk(&packing, &visited, chunk)))
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            })
        };

        let mut next = Vec::new();
        for batch in candidates {
            for (state, via) in batch {
                let rank = packing.rank(state);
                if visited.test(rank) {
                    continue;
                }
                visited.set(rank);
                if let Some(a) = arrived_via.as_mut() {
                    a[rank] = via;
                }
                if let Some(d) = distances.as_mut() {
                    d[rank] = depth;
                }
                if state == goal && min_moves.is_none() {
                    min_moves = Some(depth);
                }
                next.push(state);
            }
        }
        reachable += next.len() as u64;
        peak_frontier = peak_frontier.max(next.len());
        if let Some(s) = states.as_mut() {
            s.extend_from_slice(&next);
        }
        frontier = next;
    }

    (
        packing,
        start,
        goal,
        SearchOutput {
            min_moves,
            reachable,
            peak_frontier,
            expanded,
            arrived_via,
            states,
            distances,
        },
    )
}

/// Exact shortest solution length for size n, measured by exhaustive BFS
/// (the search also reports the total reachable-state count).
pub fn bfs_min_moves(
    n: usize,
    want_path: bool,
    config: &OracleConfig,
) -> Result<SearchResult, OracleError> {
    check_feasibility(n, config.max_n, config, want_path, false)?;
    let (packing, start, goal, output) = run_search(n, config, want_path, false, false);
    let witness = match (want_path, output.min_moves) {
        (true, Some(_)) => {
            let arrived = output.arrived_via.as_ref().expect("path recording was on");
            let mut moves = Vec::new();
            let mut current = goal;
            while current != start {
                let empty = packing.empty_of(current);
                let to = arrived[packing.rank(current)] as usize;
                let to_bit = 1u64 << to;
                let mask = packing.mask_of(current);
                let color = if mask & to_bit != 0 { Color::Red } else { Color::Blue };
                let kind = if empty.abs_diff(to) == 2 { MoveKind::Jump } else { MoveKind::Step };
                moves.push(Move { kind, from: empty, to, color });
                let prev_mask =
                    if mask & to_bit != 0 { (mask & !to_bit) | (1 << empty) } else { mask };
                current = packing.pack(to, prev_mask);
            }
            moves.reverse();
            Some(moves)
        }
        _ => None,
    };
    Ok(SearchResult {
        n,
        min_moves: output.min_moves,
        reachable_states: output.reachable,
        witness,
        peak_frontier: output.peak_frontier,
        expanded: output.expanded,
    })
}

/// Every state reachable from the start position, in BFS discovery order.
pub struct Reachable {
    n: usize,
    states: Vec<u64>,
}

impl Reachable {
    pub fn count(&self) -> u64 {
        self.states.len() as u64
    }

    pub fn packed(&self) -> impl Iterator<Item = PackedState> + '_ {
        self.states.iter().map(|s| PackedState(*s))
    }

    pub fn boards(&self) -> impl Iterator<Item = Board> + '_ {
        self.states
            .iter()
            .map(|s| decode_state(PackedState(*s), self.n).expect("search emits valid states"))
    }

    pub fn contains(&self, board: &Board) -> bool {
        let packed = encode_state(board);
        self.states.contains(&packed.raw())
    }
}

pub fn enumerate_reachable(n: usize, config: &OracleConfig) -> Result<Reachable, OracleError> {
    check_feasibility(n, config.max_n, config, false, true)?;
    let (_, _, _, output) = run_search(n, config, false, true, false);
    Ok(Reachable { n, states: output.states.expect("state collection was on") })
}

/// Maximum, over all reachable states, of the longest chain of consecutive
/// weight-increasing jumps playable from that state.
pub fn max_increasing_jump_run(n: usize, config: &OracleConfig) -> Result<u32, OracleError> {
    check_feasibility(n, config.scan_max_n, config, false, true)?;
    let (packing, _, _, output) = run_search(n, config, false, true, false);
    let states = output.states.expect("state collection was on");
    let size = state_space_size(n) as usize;
    let mut memo = vec![u32::MAX; size];

    // A weight-increasing jump is a red peg two right of the hole jumping
    // left, or a blue peg two left of the hole jumping right. The chain
    // length is finite because every such jump adds 2 to a bounded weight.
    fn increasing_jump_targets(packing: &Packing, state: u64, out: &mut Vec<u64>) {
        out.clear();
        let empty = packing.empty_of(state) as isize;
        let mask = packing.mask_of(state);
        let right = empty + 2;
        if right < packing.holes as isize && mask & (1 << right) != 0 {
            let next_mask = (mask & !(1 << right)) | (1 << empty);
            out.push(packing.pack(right as usize, next_mask));
        }
        let left = empty - 2;
        if left >= 0 && mask & (1 << left) == 0 {
            out.push(packing.pack(left as usize, mask));
        }
    }

    fn chain(packing: &Packing, memo: &mut [u32], state: u64) -> u32 {
        let rank = packing.rank(state);
        if memo[rank] != u32::MAX {
            return memo[rank];
        }
        let mut targets = Vec::with_capacity(2);
        increasing_jump_targets(packing, state, &mut targets);
        let mut best = 0;
        for next in targets {
            best = best.max(1 + chain(packing, memo, next));
        }
        memo[rank] = best;
        best
    }

    let mut best = 0;
    for state in states {
        best = best.max(chain(&packing, &mut memo, state));
    }
    Ok(best)
}

/// Whether every prefix of the generated solution is itself a shortest path
/// to its endpoint. Exploratory: callers report the outcome, they do not
/// assume it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicReport {
    pub n: usize,
    pub holds: bool,
    /// First prefix length whose endpoint sits closer to the start than the
    /// prefix is long, with the BFS distance found.
    pub first_violation: Option<(usize, u32)>,
    pub min_moves: u32,
}

pub fn geodesic_prefix_check(
    n: usize,
    config: &OracleConfig,
) -> Result<GeodesicReport, OracleError> {
    check_feasibility(n, config.max_n, config, false, false)?;
    let (packing, _, _, output) = run_search(n, config, false, false, true);
    let distances = output.distances.expect("distance recording was on");
    let script = crate::solver::solution_sequence(n, crate::solver::SolutionForm::Direct)
        .map_err(|_| OracleError::Board(BoardError::InvalidSize))?;
    let trace = crate::notation::replay(n, &script).expect("the generated solution always replays");
    let mut first_violation = None;
    for (step, board) in trace.boards.iter().enumerate() {
        let distance = distances[packing.rank(encode_state(board).raw())];
        if distance as usize != step {
            first_violation = Some((step, distance));
            break;
        }
    }
    Ok(GeodesicReport {
        n,
        holds: first_violation.is_none(),
        first_violation,
        min_moves: output.min_moves.expect("the generated solution reaches the goal"),
    })
}

/// Deterministic SplitMix64 stream; used for randomized walks so frozen test
/// expectations never depend on an external generator's stream stability.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: usize) -> usize {
        ((self.next_u64() as u128 * bound as u128) >> 64) as usize
    }
}

/// Play uniformly random legal moves from the start position until the goal
/// appears, or give up after `max_moves`. Returns the move list on success.
pub fn random_solved_walk(
    n: usize,
    seed: u64,
    max_moves: usize,
) -> Result<Option<Vec<Move>>, BoardError> {
    let goal = Board::goal(n)?;
    let mut board = Board::initial(n)?;
    let mut rng = SplitMix64::new(seed);
    let mut moves = Vec::new();
    for _ in 0..max_moves {
        if board == goal {
            return Ok(Some(moves));
        }
        let legal = board.legal_moves();
        let mv = legal[rng.below(legal.len())];
        board = board.apply_move(mv)?;
        moves.push(mv);
    }
    Ok((board == goal).then_some(moves))
}

/// Play a random legal walk of exactly `length` moves (not necessarily a
/// solution); useful for property checks over arbitrary legal traces.
pub fn random_walk(n: usize, seed: u64, length: usize) -> Result<Vec<Move>, BoardError> {
    let mut board = Board::initial(n)?;
    let mut rng = SplitMix64::new(seed);
    let mut moves = Vec::with_capacity(length);
    for _ in 0..length {
        let legal = board.legal_moves();
        let mv = legal[rng.below(legal.len())];
        board = board.apply_move(mv)?;
        moves.push(mv);
    }
    Ok(moves)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_round_trip_exhaustive_small() {
        for n in 1..=3 {
            for board in crate::test_support::all_valid_boards(n) {
                let packed = encode_state(&board);
                let decoded = decode_state(packed, n).unwrap();
                assert_eq!(decoded, board);
                assert_eq!(encode_state(&decoded), packed);
            }
        }
        let packed = encode_state(&Board::initial(2).unwrap());
        assert_eq!(decode_state(packed, 2).unwrap().render(), "BBORR");
    }

    #[test]
    fn decode_rejects_invalid_states() {
        // n+1 red bits.
        let bad = PackedState((2u64 << 5) | 0b11011);
        assert_eq!(
            decode_state(bad, 2),
            Err(OracleError::InvalidPackedState { reason: "red mask population is not n" })
        );
        // Red bit on the empty hole.
        let bad = PackedState((2u64 << 5) | 0b00110);
        assert_eq!(
            decode_state(bad, 2),
            Err(OracleError::InvalidPackedState { reason: "red mask marks the empty hole" })
        );
        // Empty index out of range.
        let bad = PackedState((9u64 << 5) | 0b11000);
        assert_eq!(
            decode_state(bad, 2),
            Err(OracleError::InvalidPackedState { reason: "empty index out of range" })
        );
    }

    #[test]
    fn min_moves_matches_formula_small() {
        let config = OracleConfig::default();
        for n in 1..=4usize {
            let result = bfs_min_moves(n, false, &config).unwrap();
            assert_eq!(result.min_moves, Some((n * n + 2 * n) as u32), "n={n}");
        }
    }

    #[test]
    fn witness_path_replays_to_goal() {
        let config = OracleConfig::default();
        let result = bfs_min_moves(2, true, &config).unwrap();
        let witness = result.witness.unwrap();
        assert_eq!(witness.len(), 8);
        let trace = crate::notation::replay_moves(2, &witness).unwrap();
        assert!(trace.solved);
        assert_eq!(trace.final_board().render(), "RROBB");
    }

    #[test]
    fn feasibility_bound_is_enforced() {
        let config = OracleConfig::default();
        assert_eq!(
            bfs_min_moves(99, false, &config),
            Err(OracleError::FeasibilityExceeded { n: 99, max_n: 12 })
        );
        let tight = OracleConfig { memory_budget: 16, ..config };
        assert!(matches!(
            bfs_min_moves(4, false, &tight),
            Err(OracleError::MemoryBudgetExceeded { .. })
        ));
    }

    #[test]
    fn search_is_deterministic_across_worker_counts() {
        let base = bfs_min_moves(4, true, &OracleConfig::default()).unwrap();
        for workers in [2, 3, 7] {
            let config = OracleConfig { workers, ..OracleConfig::default() };
            assert_eq!(bfs_min_moves(4, true, &config).unwrap(), base);
        }
        assert_eq!(bfs_min_moves(4, true, &OracleConfig::default()).unwrap(), base);
    }

    #[test]
    fn reachable_states_satisfy_invariants() {
        let config = OracleConfig::default();
        for n in 1..=4 {
            let reachable = enumerate_reachable(n, &config).unwrap();
            assert!(reachable.contains(&Board::goal(n).unwrap()), "goal reachable n={n}");
            for board in reachable.boards() {
                // from_cells inside decode enforces the invariants; spot the counts.
                assert_eq!(board.n(), n);
                assert_eq!(board.cells().iter().filter(|c| c.is_empty()).count(), 1);
            }
        }
    }

    #[test]
    fn random_walks_are_deterministic_per_seed() {
        let a = random_walk(3, 17, 40).unwrap();
        let b = random_walk(3, 17, 40).unwrap();
        assert_eq!(a, b);
        let c = random_walk(3, 18, 40).unwrap();
        assert_ne!(a, c);
    }
}
