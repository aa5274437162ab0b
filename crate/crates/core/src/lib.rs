//! Solver, search oracle and proof-accounting auditor for the one-dimensional
//! red/blue peg-swap puzzle.
//!
//! A row of `2n+1` holes starts as `B^n O R^n` and must become `R^n O B^n`
//! using steps (one hole into the empty hole) and jumps (over one adjacent
//! peg into the empty hole). The crate provides:
//!
//! - [`board`]: the puzzle state, legal moves and the weight function;
//! - [`notation`]: the `S`/`s`/`J`/`j` move-script language and replay;
//! - [`solver`]: the explicit optimal solution of n² + 2n moves;
//! - [`oracle`]: exhaustive BFS that independently measures the exact
//!   minimum and enumerates the reachable state space at small n;
//! - [`audit`]: mechanical bookkeeping of the lower-bound argument
//!   (crossings, per-peg event alternation, move grouping) on any concrete
//!   solution;
//! - [`doc`]: the stable structured-text serialization of traces and audits.

pub mod audit;
pub mod board;
pub mod doc;
pub mod notation;
pub mod oracle;
pub mod solver;

pub use board::{Board, BoardError, Cell, Color, Direction, Move, MoveKind, PegId, WeightDelta};
pub use notation::{MoveScript, ReplayError, ScriptParseError, SolutionTrace, Token};
pub use oracle::{OracleConfig, OracleError, SearchResult};
pub use solver::{MoveCounts, SolutionForm, SolverError};
