//! Independent reference oracles for the integration suites. These share no
//! code with the library's packed-state search: boards are keyed by their
//! rendered text and explored with a plain hash-map BFS, so agreement between
//! the two is meaningful.

#![allow(dead_code)]

use std::collections::HashMap;
use std::collections::hash_map::Entry;

use pegswap_core::board::{Board, Cell, Color, MoveKind};

/// Hash-map BFS from the start position: distance per rendered board.
pub fn naive_distances(n: usize) -> HashMap<String, u32> {
    let start = Board::initial(n).unwrap();
    let mut dist = HashMap::new();
    dist.insert(start.render(), 0u32);
    let mut frontier = vec![start];
    let mut depth = 0u32;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for board in frontier {
            for mv in board.legal_moves() {
                let after = board.apply_move(mv).unwrap();
                if let Entry::Vacant(slot) = dist.entry(after.render()) {
                    slot.insert(depth);
                    next.push(after);
                }
            }
        }
        frontier = next;
    }
    dist
}

pub fn naive_min_moves(n: usize) -> Option<u32> {
    naive_distances(n).get(&Board::goal(n).unwrap().render()).copied()
}

pub fn naive_reachable_count(n: usize) -> u64 {
    naive_distances(n).len() as u64
}

/// Longest chain of consecutive weight-increasing jumps from `board`,
/// by direct recursion over legal moves.
pub fn naive_jump_run(board: &Board) -> u32 {
    let mut best = 0;
    for mv in board.legal_moves() {
        if mv.kind == MoveKind::Jump && mv.weight_delta().value() > 0 {
            let after = board.apply_move(mv).unwrap();
            best = best.max(1 + naive_jump_run(&after));
        }
    }
    best
}

pub fn naive_max_jump_run(n: usize) -> u32 {
    let start = Board::initial(n).unwrap();
    let mut seen = std::collections::HashSet::new();
    seen.insert(start.render());
    let mut stack = vec![start];
    let mut best = 0;
    while let Some(board) = stack.pop() {
        best = best.max(naive_jump_run(&board));
        for mv in board.legal_moves() {
            let after = board.apply_move(mv).unwrap();
            if seen.insert(after.render()) {
                stack.push(after);
            }
        }
    }
    best
}

/// Every valid board of size n (all placements, reachable or not).
pub fn all_valid_boards(n: usize) -> Vec<Board> {
    let holes = 2 * n + 1;
    let mut boards = Vec::new();
    for empty in 0..holes {
        for mask in 0u32..(1 << holes) {
            if mask & (1 << empty) != 0 || mask.count_ones() as usize != n {
                continue;
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
            boards.push(Board::from_cells(n, cells).unwrap());
        }
    }
    boards
}
