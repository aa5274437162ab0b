//! Closed-form optimal solutions of length n² + 2n.
//!
//! Two printed forms of the same token sequence exist: the direct form and a
//! symmetric re-bracketing that makes the palindromic structure explicit.
//! Both are generated independently and must agree tokenwise for every n.

use thiserror::Error;

use crate::board::{Board, Cell, Color, MoveKind};
use crate::notation::{MoveScript, Token};

const S: Token = Token { color: Color::Blue, kind: MoveKind::Step };
const LITTLE_S: Token = Token { color: Color::Red, kind: MoveKind::Step };
const J: Token = Token { color: Color::Blue, kind: MoveKind::Jump };
const LITTLE_J: Token = Token { color: Color::Red, kind: MoveKind::Jump };

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("puzzle size must be at least 1")]
    InvalidSize,
    #[error("pattern index m={m} out of range for n={n} (need 2m <= n)")]
    PatternIndexOutOfRange { n: usize, m: usize },
}

/// Which printed form of the solution to emit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionForm {
    Direct,
    Symmetric,
}

/// Move-class counts of the generated solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoveCounts {
    pub total: u64,
    pub jumps: u64,
    pub steps: u64,
}

/// total = n² + 2n, split into n² jumps and 2n steps.
pub fn expected_counts(n: usize) -> Result<MoveCounts, SolverError> {
    if n < 1 {
        return Err(SolverError::InvalidSize);
    }
    let n = n as u64;
    Ok(MoveCounts { total: n * n + 2 * n, jumps: n * n, steps: 2 * n })
}

/// The solution script for size `n` in the requested form.
pub fn solution_sequence(n: usize, form: SolutionForm) -> Result<MoveScript, SolverError> {
    if n < 1 {
        return Err(SolverError::InvalidSize);
    }
    let mut script = MoveScript::default();
    if n.is_multiple_of(2) {
        let half = n / 2;
        match form {
            SolutionForm::Direct => {
                // (prod_{k=1..half} S j^{2k-1} s J^{2k})
                // (prod_{k=1..half} s j^{2(half-k)+1} S J^{2(half-k)})
                for k in 1..=half {
                    opening_term(&mut script, k);
                }
                for k in 1..=half {
                    script.push(LITTLE_S);
                    script.push_repeated(LITTLE_J, 2 * (half - k) + 1);
                    script.push(S);
                    script.push_repeated(J, 2 * (half - k));
                }
            }
            SolutionForm::Symmetric => {
                // Re-bracketed: the k=half opening term fuses with the first
                // closing term into an explicit palindrome core, and the rest
                // of the closing product runs k from half-1 down to 1.
                for k in 1..half {
                    opening_term(&mut script, k);
                }
                script.push(S);
                script.push_repeated(LITTLE_J, n - 1);
                script.push(LITTLE_S);
                script.push_repeated(J, n);
                script.push(LITTLE_S);
                script.push_repeated(LITTLE_J, n - 1);
                script.push(S);
                for k in (1..half).rev() {
                    closing_term(&mut script, k);
                }
            }
        }
    } else {
        let half = n.div_ceil(2);
        match form {
            SolutionForm::Direct => {
                // (prod_{k=1..half-1} S j^{2k-1} s J^{2k}) S j^n S
                // (prod_{k=1..half-1} J^{2(half-k)} s j^{2(half-k)-1} S)
                for k in 1..half {
                    opening_term(&mut script, k);
                }
                middle_segment(&mut script, n);
                for k in 1..half {
                    closing_term(&mut script, half - k);
                }
            }
            SolutionForm::Symmetric => {
                // Identical sequence with the closing product indexed in
                // descending order.
                for k in 1..half {
                    opening_term(&mut script, k);
                }
                middle_segment(&mut script, n);
                for k in (1..half).rev() {
                    closing_term(&mut script, k);
                }
            }
        }
    }
    Ok(script)
}

/// Opening product term k: `S j^{2k-1} s J^{2k}`.
fn opening_term(script: &mut MoveScript, k: usize) {
    script.push(S);
    script.push_repeated(LITTLE_J, 2 * k - 1);
    script.push(LITTLE_S);
    script.push_repeated(J, 2 * k);
}

/// Closing product term k: `J^{2k} s j^{2k-1} S`.
fn closing_term(script: &mut MoveScript, k: usize) {
    script.push_repeated(J, 2 * k);
    script.push(LITTLE_S);
    script.push_repeated(LITTLE_J, 2 * k - 1);
    script.push(S);
}

/// The odd-case pivot `S j^n S` that reverses the interleaved pattern.
fn middle_segment(script: &mut MoveScript, n: usize) {
    script.push(S);
    script.push_repeated(LITTLE_J, n);
    script.push(S);
}

/// Number of tokens in the first `m` opening terms: sum of (4k+1).
pub fn opening_prefix_len(m: usize) -> usize {
    2 * m * (m + 1) + m
}

/// The board `B^{n-2m} O (RB)^{2m} R^{n-2m}` reached after the first `m`
/// opening terms of the solution.
pub fn intermediate_pattern(n: usize, m: usize) -> Result<Board, SolverError> {
    if n < 1 {
        return Err(SolverError::InvalidSize);
    }
    if 2 * m > n {
        return Err(SolverError::PatternIndexOutOfRange { n, m });
    }
    let mut cells = Vec::with_capacity(2 * n + 1);
    cells.extend(std::iter::repeat_n(Cell::Peg(Color::Blue), n - 2 * m));
    cells.push(Cell::Empty);
    for _ in 0..2 * m {
        cells.push(Cell::Peg(Color::Red));
        cells.push(Cell::Peg(Color::Blue));
    }
    cells.extend(std::iter::repeat_n(Cell::Peg(Color::Red), n - 2 * m));
    Ok(Board::from_cells(n, cells).expect("pattern satisfies the board invariants"))
}
