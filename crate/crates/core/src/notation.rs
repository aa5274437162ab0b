//! The four-letter move encoding and script replay.
//!
//! `S` is a blue step right, `s` a red step left, `J` a blue jump right and
//! `j` a red jump left — exactly the four weight-increasing move classes.
//! Scripts support a compact form where a token followed by a decimal count
//! expands to that many copies (`j3` = `jjj`). Arbitrary solutions that use
//! weight-decreasing moves cannot be written as scripts; they are handled as
//! [`Move`] lists, with [`classify_move`] as the lossy display mapping.

use std::fmt;

use thiserror::Error;

use crate::board::{Board, BoardError, Cell, Color, Move, MoveKind};

/// One script letter: the (color, kind) of a productive move. The direction
/// is implied — blue moves right, red moves left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    pub color: Color,
    pub kind: MoveKind,
}

pub const ALL_TOKENS: [Token; 4] = [
    Token { color: Color::Blue, kind: MoveKind::Step },
    Token { color: Color::Red, kind: MoveKind::Step },
    Token { color: Color::Blue, kind: MoveKind::Jump },
    Token { color: Color::Red, kind: MoveKind::Jump },
];

impl Token {
    pub fn from_char(ch: char) -> Option<Token> {
        match ch {
            'S' => Some(Token { color: Color::Blue, kind: MoveKind::Step }),
            's' => Some(Token { color: Color::Red, kind: MoveKind::Step }),
            'J' => Some(Token { color: Color::Blue, kind: MoveKind::Jump }),
            'j' => Some(Token { color: Color::Red, kind: MoveKind::Jump }),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match (self.color, self.kind) {
            (Color::Blue, MoveKind::Step) => 'S',
            (Color::Red, MoveKind::Step) => 's',
            (Color::Blue, MoveKind::Jump) => 'J',
            (Color::Red, MoveKind::Jump) => 'j',
        }
    }

    /// Position of this token in [`ALL_TOKENS`] (S, s, J, j).
    pub fn index(self) -> usize {
        match (self.color, self.kind) {
            (Color::Blue, MoveKind::Step) => 0,
            (Color::Red, MoveKind::Step) => 1,
            (Color::Blue, MoveKind::Jump) => 2,
            (Color::Red, MoveKind::Jump) => 3,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// The productive token a move would print as, if any. Weight-decreasing
/// moves have no token.
pub fn classify_move(mv: Move) -> Option<Token> {
    if mv.weight_delta().value() > 0 {
        Some(Token { color: mv.color, kind: mv.kind })
    } else {
        None
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScriptParseError {
    #[error("unknown character {found:?} at position {position}")]
    UnknownCharacter { position: usize, found: char },
    #[error("repetition count 0 at position {position}")]
    ZeroCount { position: usize },
    #[error("count at position {position} has no preceding token")]
    DanglingCount { position: usize },
    #[error("repetition count at position {position} is out of range")]
    CountOutOfRange { position: usize },
}

/// A parsed sequence of tokens.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MoveScript {
    tokens: Vec<Token>,
}

impl MoveScript {
    pub fn new(tokens: Vec<Token>) -> MoveScript {
        MoveScript { tokens }
    }

    /// Parse script text. Whitespace is insignificant; a decimal count after
    /// a token repeats it (`Sj3s` = `Sjjjs`); a token carries at most one
    /// count. Positions in errors are 1-based character offsets.
    pub fn parse(text: &str) -> Result<MoveScript, ScriptParseError> {
        let mut tokens = Vec::new();
        // Set while the last pushed token may still take a repetition count.
        let mut repeatable: Option<Token> = None;
        let mut chars = text.chars().enumerate().peekable();
        while let Some((i, ch)) = chars.next() {
            let position = i + 1;
            if ch.is_whitespace() {
                continue;
            }
            if let Some(token) = Token::from_char(ch) {
                tokens.push(token);
                repeatable = Some(token);
                continue;
            }
            if ch.is_ascii_digit() {
                let mut count = Some(ch.to_digit(10).unwrap() as usize);
                while let Some((_, d)) = chars.peek() {
                    match d.to_digit(10) {
                        Some(d) => {
                            count = count
                                .and_then(|c| c.checked_mul(10))
                                .and_then(|c| c.checked_add(d as usize));
                            chars.next();
                        }
                        None => break,
                    }
                }
                let Some(token) = repeatable.take() else {
                    return Err(ScriptParseError::DanglingCount { position });
                };
                let Some(count) = count else {
                    return Err(ScriptParseError::CountOutOfRange { position });
                };
                if count == 0 {
                    return Err(ScriptParseError::ZeroCount { position });
                }
                // One copy is already in the buffer.
                tokens.extend(std::iter::repeat_n(token, count - 1));
                continue;
            }
            return Err(ScriptParseError::UnknownCharacter { position, found: ch });
        }
        Ok(MoveScript { tokens })
    }

    /// One character per token.
    pub fn format_plain(&self) -> String {
        self.tokens.iter().map(|t| t.to_char()).collect()
    }

    /// Run-length encode maximal repeats of length 2 or more.
    pub fn format_compact(&self) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < self.tokens.len() {
            let token = self.tokens[i];
            let mut run = 1;
            while i + run < self.tokens.len() && self.tokens[i + run] == token {
                run += 1;
            }
            out.push(token.to_char());
            if run > 1 {
                out.push_str(&run.to_string());
            }
            i += run;
        }
        out
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn push(&mut self, token: Token) {
        self.tokens.push(token);
    }

    pub fn push_repeated(&mut self, token: Token, count: usize) {
        self.tokens.extend(std::iter::repeat_n(token, count));
    }
}

impl fmt::Display for MoveScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_plain())
    }
}

impl std::str::FromStr for MoveScript {
    type Err = ScriptParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MoveScript::parse(s)
    }
}

impl From<Vec<Token>> for MoveScript {
    fn from(tokens: Vec<Token>) -> Self {
        MoveScript { tokens }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolveError {
    #[error("token {token} needs a hole at index {required} but the board ends at {max}")]
    OutOfRange { token: Token, required: isize, max: usize },
    #[error("token {token} needs a {expected} peg at index {index}, found {found}")]
    WrongCell { token: Token, index: usize, expected: Color, found: &'static str },
}

/// Resolve a token on a board to the unique move it denotes, if it applies.
/// `S` needs a blue peg immediately left of the empty hole, `s` a red peg
/// immediately right, `J` a blue peg two holes left, `j` a red peg two right.
pub fn resolve_token(board: &Board, token: Token) -> Result<Move, ResolveError> {
    let e = board.empty_index() as isize;
    let distance = token.kind.distance() as isize;
    // Blue approaches the empty hole from the left, red from the right.
    let from = e - token.color.forward() * distance;
    if from < 0 || from >= board.hole_count() as isize {
        return Err(ResolveError::OutOfRange {
            token,
            required: from,
            max: board.hole_count() - 1,
        });
    }
    match board.cell(from as usize) {
        Cell::Peg(color) if color == token.color => {
            Ok(Move { kind: token.kind, from: from as usize, to: e as usize, color })
        }
        Cell::Peg(_) => Err(ResolveError::WrongCell {
            token,
            index: from as usize,
            expected: token.color,
            found: if token.color == Color::Blue { "red" } else { "blue" },
        }),
        Cell::Empty => Err(ResolveError::WrongCell {
            token,
            index: from as usize,
            expected: token.color,
            found: "empty",
        }),
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error("invalid puzzle size: {0}")]
    Board(#[from] BoardError),
    #[error("token {position} ({token}) inapplicable on {board}: {source}")]
    Inapplicable { position: usize, token: Token, board: String, source: ResolveError },
}

/// Move-class tallies of a trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct MoveTally {
    pub total: usize,
    pub steps: usize,
    pub jumps: usize,
    /// Counts of productive classes in S, s, J, j order; unproductive moves
    /// are tallied in `total`/`steps`/`jumps` only.
    pub per_token: [usize; 4],
}

impl MoveTally {
    pub fn record(&mut self, mv: Move) {
        self.total += 1;
        match mv.kind {
            MoveKind::Step => self.steps += 1,
            MoveKind::Jump => self.jumps += 1,
        }
        if let Some(token) = classify_move(mv) {
            self.per_token[token.index()] += 1;
        }
    }

    pub fn count_of(&self, token: Token) -> usize {
        self.per_token[token.index()]
    }
}

/// A fully replayed move sequence: every intermediate board, the resolved
/// moves, and the weight after each move.
#[derive(Clone, Debug)]
pub struct SolutionTrace {
    pub n: usize,
    pub boards: Vec<Board>,
    pub moves: Vec<Move>,
    pub weight_trace: Vec<u64>,
    pub counts: MoveTally,
    pub solved: bool,
}

impl SolutionTrace {
    pub fn final_board(&self) -> &Board {
        self.boards.last().expect("trace holds at least the start board")
    }

    /// Lossy script form: token characters for productive moves, `-` otherwise.
    pub fn classified_text(&self) -> String {
        self.moves.iter().map(|mv| classify_move(*mv).map_or('-', |t| t.to_char())).collect()
    }
}

/// Replay a script from the start position, failing on the first token that
/// does not resolve.
pub fn replay(n: usize, script: &MoveScript) -> Result<SolutionTrace, ReplayError> {
    let start = Board::initial(n)?;
    let mut trace =
        replay_moves_from(start, script.tokens().iter().enumerate().map(|(i, t)| (i, *t)))?;
    trace.solved = *trace.final_board() == Board::goal(n)?;
    Ok(trace)
}

fn replay_moves_from(
    start: Board,
    tokens: impl Iterator<Item = (usize, Token)>,
) -> Result<SolutionTrace, ReplayError> {
    let n = start.n();
    let mut boards = vec![start];
    let mut moves = Vec::new();
    let mut weight_trace = Vec::new();
    let mut counts = MoveTally::default();
    for (i, token) in tokens {
        let board = boards.last().unwrap();
        let mv = resolve_token(board, token).map_err(|source| ReplayError::Inapplicable {
            position: i + 1,
            token,
            board: board.render(),
            source,
        })?;
        let next = board.apply_move(mv).expect("a resolved token is always a legal move");
        counts.record(mv);
        weight_trace.push(next.weight());
        moves.push(mv);
        boards.push(next);
    }
    Ok(SolutionTrace { n, boards, moves, weight_trace, counts, solved: false })
}

/// Replay an explicit move list (which may contain weight-decreasing moves)
/// from the start position.
pub fn replay_moves(n: usize, moves: &[Move]) -> Result<SolutionTrace, BoardError> {
    let start = Board::initial(n)?;
    let goal = Board::goal(n)?;
    let mut boards = vec![start];
    let mut out_moves = Vec::with_capacity(moves.len());
    let mut weight_trace = Vec::with_capacity(moves.len());
    let mut counts = MoveTally::default();
    for mv in moves {
        let next = boards.last().unwrap().apply_move(*mv)?;
        counts.record(*mv);
        weight_trace.push(next.weight());
        out_moves.push(*mv);
        boards.push(next);
    }
    let solved = *boards.last().unwrap() == goal;
    Ok(SolutionTrace { n, boards, moves: out_moves, weight_trace, counts, solved })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn token(ch: char) -> Token {
        Token::from_char(ch).unwrap()
    }

    fn script(text: &str) -> MoveScript {
        MoveScript::parse(text).unwrap()
    }

    #[test]
    fn parse_plain_and_compact() {
        assert_eq!(script("SjS").tokens(), &[token('S'), token('j'), token('S')]);
        assert_eq!(script("Sj3sJ2").format_plain(), "SjjjsJJ");
        assert_eq!(script(" S j3\n sJ2 ").format_plain(), "SjjjsJJ");
        assert_eq!(script("").tokens(), &[]);
    }

    #[test]
    fn parse_rejects_bad_text() {
        assert_eq!(
            MoveScript::parse("SxJ"),
            Err(ScriptParseError::UnknownCharacter { position: 2, found: 'x' })
        );
        assert_eq!(MoveScript::parse("S0"), Err(ScriptParseError::ZeroCount { position: 2 }));
        assert_eq!(MoveScript::parse("3S"), Err(ScriptParseError::DanglingCount { position: 1 }));
        // A token takes at most one count.
        assert_eq!(MoveScript::parse("S3 4"), Err(ScriptParseError::DanglingCount { position: 4 }));
        // Counts that do not fit in usize are rejected, not truncated.
        assert_eq!(
            MoveScript::parse("S99999999999999999999999"),
            Err(ScriptParseError::CountOutOfRange { position: 2 })
        );
    }

    #[test]
    fn format_plain_and_compact_forms() {
        let s = MoveScript::new("SjsJJsjS".chars().map(token).collect::<Vec<_>>());
        assert_eq!(s.format_plain(), "SjsJJsjS");
        assert_eq!(s.format_compact(), "SjsJ2sjS");
        let s = MoveScript::new("Sjjjs".chars().map(token).collect::<Vec<_>>());
        assert_eq!(s.format_compact(), "Sj3s");
        assert_eq!(MoveScript::default().format_plain(), "");
        assert_eq!(MoveScript::default().format_compact(), "");
    }

    #[test]
    fn resolve_follows_required_cells() {
        let b = Board::initial(2).unwrap();
        let mv = resolve_token(&b, token('S')).unwrap();
        assert_eq!((mv.from, mv.to, mv.kind), (1, 2, MoveKind::Step));

        let b = Board::parse("BOBRR", 2).unwrap();
        let mv = resolve_token(&b, token('j')).unwrap();
        assert_eq!((mv.from, mv.to, mv.kind), (3, 1, MoveKind::Jump));

        // ROB: the hole left of the empty hole holds a red peg, so S fails.
        let b = Board::parse("ROB", 1).unwrap();
        assert_eq!(
            resolve_token(&b, token('S')),
            Err(ResolveError::WrongCell {
                token: token('S'),
                index: 0,
                expected: Color::Blue,
                found: "red",
            })
        );
    }

    #[test]
    fn replay_n1_golden_trace() {
        let trace = replay(1, &script("SjS")).unwrap();
        assert!(trace.solved);
        assert_eq!(trace.final_board().render(), "ROB");
        assert_eq!(trace.weight_trace, vec![1, 3, 4]);
        let rendered: Vec<_> = trace.boards.iter().map(|b| b.render()).collect();
        assert_eq!(rendered, vec!["BOR", "OBR", "RBO", "ROB"]);
    }

    #[test]
    fn replay_n2_reaches_goal_weight() {
        let trace = replay(2, &script("SjsJJsjS")).unwrap();
        assert!(trace.solved);
        assert_eq!(trace.final_board().render(), "RROBB");
        assert_eq!(trace.counts.total, 8);
        assert_eq!(trace.weight_trace, vec![1, 3, 4, 6, 8, 9, 11, 12]);
    }

    #[test]
    fn replay_reports_first_inapplicable_token() {
        // On BOR, S moves the only blue peg to the wall; a second S runs off
        // the board.
        let err = replay(1, &script("SS")).unwrap_err();
        match err {
            ReplayError::Inapplicable { position, board, .. } => {
                assert_eq!(position, 2);
                assert_eq!(board, "OBR");
            }
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn replay_n2_ss_is_legal_but_unsolved() {
        // Both blue pegs can step right in turn; the script replays fine and
        // simply does not solve.
        let trace = replay(2, &script("SS")).unwrap();
        assert!(!trace.solved);
        assert_eq!(trace.final_board().render(), "OBBRR");
    }

    #[test]
    fn tokens_always_increase_weight() {
        // Over every board of size n <= 3 and every token that resolves, the
        // delta is +1 for steps and +2 for jumps.
        for n in 1..=3usize {
            for board in crate::test_support::all_valid_boards(n) {
                for tk in ALL_TOKENS {
                    if let Ok(mv) = resolve_token(&board, tk) {
                        let delta = board.move_weight_delta(mv).unwrap().value();
                        let expected = match tk.kind {
                            MoveKind::Step => 1,
                            MoveKind::Jump => 2,
                        };
                        assert_eq!(delta, expected, "token {tk} on {}", board.render());
                        // Determinism: the resolved move is among the legal
                        // moves and is the only one classifying as `tk`.
                        let matching: Vec<_> = board
                            .legal_moves()
                            .into_iter()
                            .filter(|m| classify_move(*m) == Some(tk))
                            .collect();
                        assert_eq!(matching, vec![mv]);
                    }
                }
            }
        }
    }

    #[test]
    fn classified_text_marks_unproductive_moves() {
        let s = Move { kind: MoveKind::Step, from: 1, to: 2, color: Color::Blue };
        let back = Move { kind: MoveKind::Step, from: 2, to: 1, color: Color::Blue };
        let trace = replay_moves(2, &[s, back]).unwrap();
        assert_eq!(trace.classified_text(), "S-");
    }
}
