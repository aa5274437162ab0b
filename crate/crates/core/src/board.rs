//! Puzzle state and move rules.
//!
//! A board is a single row of `2n+1` holes. Holes are indexed 0-based from
//! the left. Initially the `n` blue pegs occupy the leftmost holes, the `n`
//! red pegs the rightmost, and the center hole is empty; the goal position is
//! the color-swapped mirror. A move slides a peg one hole into the empty hole
//! (a step) or jumps it over a single adjacent peg into the empty hole (a
//! jump). Since there is exactly one empty hole, a jump's intermediate hole
//! is always occupied.

use std::fmt;

use thiserror::Error;

/// Peg color. Blue travels right, red travels left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    /// The direction (as a sign on hole indices) this color must travel to
    /// reach its side of the goal position: +1 for blue, -1 for red.
    pub fn forward(self) -> isize {
        match self {
            Color::Red => -1,
            Color::Blue => 1,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Red => write!(f, "red"),
            Color::Blue => write!(f, "blue"),
        }
    }
}

/// Contents of one hole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Empty,
    Peg(Color),
}

impl Cell {
    pub fn is_empty(self) -> bool {
        self == Cell::Empty
    }

    pub fn color(self) -> Option<Color> {
        match self {
            Cell::Empty => None,
            Cell::Peg(c) => Some(c),
        }
    }

    fn symbol(self) -> char {
        match self {
            Cell::Empty => 'O',
            Cell::Peg(Color::Red) => 'R',
            Cell::Peg(Color::Blue) => 'B',
        }
    }
}

/// Stable identity of a peg: its color and 1-based ordinal, numbered
/// left-to-right within each color on the board the ids were assigned on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PegId {
    pub color: Color,
    pub ordinal: u16,
}

impl fmt::Display for PegId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.color {
            Color::Red => 'R',
            Color::Blue => 'B',
        };
        write!(f, "{}{}", letter, self.ordinal)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Step,
    Jump,
}

impl MoveKind {
    pub fn distance(self) -> usize {
        match self {
            MoveKind::Step => 1,
            MoveKind::Jump => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

/// One atomic legal action: the peg at `from` moves into the empty hole at
/// `to`. Steps cover distance 1, jumps distance 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub from: usize,
    pub to: usize,
    pub color: Color,
}

impl Move {
    pub fn direction(self) -> Direction {
        if self.to > self.from { Direction::Right } else { Direction::Left }
    }

    /// The move that undoes this one on the board it produced.
    pub fn reversed(self) -> Move {
        Move { kind: self.kind, from: self.to, to: self.from, color: self.color }
    }

    /// Weight change caused by this move, determined entirely by the mover's
    /// color, direction and distance: positive when the mover travels in its
    /// color's forward direction.
    pub fn weight_delta(self) -> WeightDelta {
        let signed = self.to as isize - self.from as isize;
        let sign: i8 = if signed.signum() == self.color.forward() { 1 } else { -1 };
        WeightDelta(sign * self.kind.distance() as i8)
    }

    /// Index of the hole jumped over, for jumps.
    pub fn jumped_index(self) -> Option<usize> {
        match self.kind {
            MoveKind::Step => None,
            MoveKind::Jump => Some((self.from + self.to) / 2),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            MoveKind::Step => "step",
            MoveKind::Jump => "jump",
        };
        write!(f, "{} {} {}->{}", self.color, kind, self.from, self.to)
    }
}

/// Weight change of a single move: always one of -2, -1, +1, +2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightDelta(i8);

impl WeightDelta {
    pub fn value(self) -> i64 {
        self.0 as i64
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoardError {
    #[error("puzzle size must be at least 1")]
    InvalidSize,
    #[error("board text has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("unknown board symbol {found:?} at position {position}")]
    BadSymbol { position: usize, found: char },
    #[error(
        "board must hold {n} red, {n} blue and one empty hole (got {reds} red, {blues} blue, {empties} empty)"
    )]
    BadMultiset { n: usize, reds: usize, blues: usize, empties: usize },
    #[error("illegal move {mv}: {reason}")]
    IllegalMove { mv: Move, reason: &'static str },
    #[error("peg id assignment is not a bijection matching the board's colors")]
    BadIdAssignment,
}

/// The row of `2n+1` holes. Peg identities are optional; they matter only to
/// the audit machinery and never affect equality or hashing, which compare
/// positions alone.
#[derive(Clone, Debug)]
pub struct Board {
    n: usize,
    cells: Vec<Cell>,
    ids: Option<Vec<Option<PegId>>>,
}

impl PartialEq for Board {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.cells == other.cells
    }
}

impl Eq for Board {}

impl std::hash::Hash for Board {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.cells.hash(state);
    }
}

impl fmt::Display for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Board {
    /// The start position `B^n O R^n`.
    pub fn initial(n: usize) -> Result<Board, BoardError> {
        if n < 1 {
            return Err(BoardError::InvalidSize);
        }
        let mut cells = Vec::with_capacity(2 * n + 1);
        cells.extend(std::iter::repeat_n(Cell::Peg(Color::Blue), n));
        cells.push(Cell::Empty);
        cells.extend(std::iter::repeat_n(Cell::Peg(Color::Red), n));
        Ok(Board { n, cells, ids: None })
    }

    /// The goal position `R^n O B^n`.
    pub fn goal(n: usize) -> Result<Board, BoardError> {
        if n < 1 {
            return Err(BoardError::InvalidSize);
        }
        let mut cells = Vec::with_capacity(2 * n + 1);
        cells.extend(std::iter::repeat_n(Cell::Peg(Color::Red), n));
        cells.push(Cell::Empty);
        cells.extend(std::iter::repeat_n(Cell::Peg(Color::Blue), n));
        Ok(Board { n, cells, ids: None })
    }

    /// Build a board from raw cells, validating the one-empty/n-of-each invariant.
    pub fn from_cells(n: usize, cells: Vec<Cell>) -> Result<Board, BoardError> {
        if n < 1 {
            return Err(BoardError::InvalidSize);
        }
        if cells.len() != 2 * n + 1 {
            return Err(BoardError::BadLength { expected: 2 * n + 1, got: cells.len() });
        }
        let reds = cells.iter().filter(|c| **c == Cell::Peg(Color::Red)).count();
        let blues = cells.iter().filter(|c| **c == Cell::Peg(Color::Blue)).count();
        let empties = cells.len() - reds - blues;
        if reds != n || blues != n || empties != 1 {
            return Err(BoardError::BadMultiset { n, reds, blues, empties });
        }
        Ok(Board { n, cells, ids: None })
    }

    /// Parse the canonical text form: one of `B`/`R`/`O` per hole, length `2n+1`.
    pub fn parse(text: &str, n: usize) -> Result<Board, BoardError> {
        if n < 1 {
            return Err(BoardError::InvalidSize);
        }
        let expected = 2 * n + 1;
        if text.chars().count() != expected {
            return Err(BoardError::BadLength { expected, got: text.chars().count() });
        }
        let mut cells = Vec::with_capacity(expected);
        for (i, ch) in text.chars().enumerate() {
            cells.push(match ch {
                'B' => Cell::Peg(Color::Blue),
                'R' => Cell::Peg(Color::Red),
                'O' => Cell::Empty,
                other => {
                    return Err(BoardError::BadSymbol { position: i + 1, found: other });
                }
            });
        }
        Board::from_cells(n, cells)
    }

    /// Canonical text form, the inverse of [`Board::parse`].
    pub fn render(&self) -> String {
        self.cells.iter().map(|c| c.symbol()).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hole_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, index: usize) -> Cell {
        self.cells[index]
    }

    pub fn empty_index(&self) -> usize {
        self.cells
            .iter()
            .position(|c| c.is_empty())
            .expect("a valid board has exactly one empty hole")
    }

    pub fn is_tracked(&self) -> bool {
        self.ids.is_some()
    }

    pub fn id_at(&self, index: usize) -> Option<PegId> {
        self.ids.as_ref().and_then(|ids| ids[index])
    }

    /// Assign peg identities left-to-right within each color.
    pub fn with_tracked_ids(mut self) -> Board {
        let mut next_red = 1u16;
        let mut next_blue = 1u16;
        let ids = self
            .cells
            .iter()
            .map(|cell| match cell {
                Cell::Empty => None,
                Cell::Peg(Color::Red) => {
                    let id = PegId { color: Color::Red, ordinal: next_red };
                    next_red += 1;
                    Some(id)
                }
                Cell::Peg(Color::Blue) => {
                    let id = PegId { color: Color::Blue, ordinal: next_blue };
                    next_blue += 1;
                    Some(id)
                }
            })
            .collect();
        self.ids = Some(ids);
        self
    }

    /// Install an explicit identity assignment. It must be a bijection onto
    /// {red 1..n} ∪ {blue 1..n} whose colors match the cells.
    pub fn with_ids(mut self, ids: Vec<Option<PegId>>) -> Result<Board, BoardError> {
        if ids.len() != self.cells.len() {
            return Err(BoardError::BadIdAssignment);
        }
        let mut seen = std::collections::HashSet::new();
        for (cell, id) in self.cells.iter().zip(ids.iter()) {
            match (cell, id) {
                (Cell::Empty, None) => {}
                (Cell::Peg(color), Some(id))
                    if id.color == *color && (1..=self.n as u16).contains(&id.ordinal) =>
                {
                    if !seen.insert(*id) {
                        return Err(BoardError::BadIdAssignment);
                    }
                }
                _ => return Err(BoardError::BadIdAssignment),
            }
        }
        self.ids = Some(ids);
        Ok(self)
    }

    /// All moves into the unique empty hole, ordered by source index. Pegs at
    /// distance 1 step; pegs at distance 2 jump (their intermediate hole is
    /// necessarily occupied). Between 2 and 4 moves exist on any valid board.
    pub fn legal_moves(&self) -> Vec<Move> {
        let e = self.empty_index() as isize;
        let mut moves = Vec::with_capacity(4);
        for (offset, kind) in [
            (-2isize, MoveKind::Jump),
            (-1, MoveKind::Step),
            (1, MoveKind::Step),
            (2, MoveKind::Jump),
        ] {
            let from = e + offset;
            if from < 0 || from >= self.cells.len() as isize {
                continue;
            }
            if let Cell::Peg(color) = self.cells[from as usize] {
                moves.push(Move { kind, from: from as usize, to: e as usize, color });
            }
        }
        moves
    }

    fn check_move(&self, mv: Move) -> Result<(), BoardError> {
        let len = self.cells.len();
        if mv.from >= len || mv.to >= len {
            return Err(BoardError::IllegalMove { mv, reason: "hole index out of range" });
        }
        let distance = mv.from.abs_diff(mv.to);
        if distance != mv.kind.distance() {
            return Err(BoardError::IllegalMove {
                mv,
                reason: "distance does not match move kind",
            });
        }
        match self.cells[mv.from] {
            Cell::Empty => {
                return Err(BoardError::IllegalMove { mv, reason: "source hole is empty" });
            }
            Cell::Peg(color) if color != mv.color => {
                return Err(BoardError::IllegalMove { mv, reason: "mover color mismatch" });
            }
            Cell::Peg(_) => {}
        }
        if !self.cells[mv.to].is_empty() {
            return Err(BoardError::IllegalMove { mv, reason: "destination hole is occupied" });
        }
        if let Some(mid) = mv.jumped_index()
            && self.cells[mid].is_empty()
        {
            return Err(BoardError::IllegalMove { mv, reason: "jump over an empty hole" });
        }
        Ok(())
    }

    /// Apply a legal move, relocating the mover (and its identity, when
    /// tracked) into the empty hole.
    pub fn apply_move(&self, mv: Move) -> Result<Board, BoardError> {
        self.check_move(mv)?;
        let mut next = self.clone();
        next.cells[mv.to] = next.cells[mv.from];
        next.cells[mv.from] = Cell::Empty;
        if let Some(ids) = next.ids.as_mut() {
            ids[mv.to] = ids[mv.from].take();
        }
        Ok(next)
    }

    /// Total distance the blue pegs have moved right plus the total distance
    /// the red pegs have moved left, relative to the start position. Computed
    /// positionally; identity tracking never changes the value because index
    /// sums are permutation-invariant within a color.
    pub fn weight(&self) -> u64 {
        let mut blue_sum = 0i64;
        let mut red_sum = 0i64;
        for (i, cell) in self.cells.iter().enumerate() {
            match cell {
                Cell::Peg(Color::Blue) => blue_sum += i as i64,
                Cell::Peg(Color::Red) => red_sum += i as i64,
                Cell::Empty => {}
            }
        }
        let n = self.n as i64;
        // Initial index sums: blues fill 0..n, reds fill n+1..2n.
        let blue_initial = n * (n - 1) / 2;
        let red_initial = n * (3 * n + 1) / 2;
        ((blue_sum - blue_initial) + (red_initial - red_sum)) as u64
    }

    /// Weight change of `mv` on this board, after validating legality.
    pub fn move_weight_delta(&self, mv: Move) -> Result<WeightDelta, BoardError> {
        self.check_move(mv)?;
        Ok(mv.weight_delta())
    }
}
