//! Python bindings for the peg-swap puzzle library.
//!
//! Exposes the board, the generated optimal solutions, script replay, the
//! exhaustive search oracle and the solution auditor. Build as a cdylib and
//! import as `pegswap`; see python/smoke_test.py for a usage tour.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use pegswap_core::audit::audit_solution;
use pegswap_core::board;
use pegswap_core::doc::{audit_document, trace_document};
use pegswap_core::notation::{MoveScript, classify_move, replay};
use pegswap_core::oracle;
use pegswap_core::solver::{
    SolutionForm, expected_counts, intermediate_pattern, solution_sequence,
};

fn value_error(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn parse_form(form: &str) -> PyResult<SolutionForm> {
    match form {
        "direct" => Ok(SolutionForm::Direct),
        "symmetric" => Ok(SolutionForm::Symmetric),
        other => Err(value_error(format!("unknown form {other:?}; use 'direct' or 'symmetric'"))),
    }
}

/// One legal move: the peg at `from_index` enters the empty hole at `to_index`.
#[pyclass(name = "Move", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMove {
    inner: board::Move,
}

#[pymethods]
impl PyMove {
    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner.kind {
            board::MoveKind::Step => "step",
            board::MoveKind::Jump => "jump",
        }
    }

    #[getter]
    fn color(&self) -> &'static str {
        match self.inner.color {
            board::Color::Red => "red",
            board::Color::Blue => "blue",
        }
    }

    // `from` is a Python keyword, hence the suffixed getter names.
    #[getter]
    #[allow(clippy::wrong_self_convention)]
    fn from_index(&self) -> usize {
        self.inner.from
    }

    #[getter]
    fn to_index(&self) -> usize {
        self.inner.to
    }

    #[getter]
    fn weight_delta(&self) -> i64 {
        self.inner.weight_delta().value()
    }

    /// The script letter for weight-increasing moves, None otherwise.
    #[getter]
    fn token(&self) -> Option<String> {
        classify_move(self.inner).map(|t| t.to_char().to_string())
    }

    fn __repr__(&self) -> String {
        format!("Move({})", self.inner)
    }
}

/// A row of 2n+1 holes rendered as B/R/O text.
#[pyclass(name = "Board", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyBoard {
    inner: board::Board,
}

#[pymethods]
impl PyBoard {
    /// The start position B^n O R^n.
    #[staticmethod]
    fn initial(n: usize) -> PyResult<PyBoard> {
        Ok(PyBoard { inner: board::Board::initial(n).map_err(value_error)? })
    }

    /// The goal position R^n O B^n.
    #[staticmethod]
    fn goal(n: usize) -> PyResult<PyBoard> {
        Ok(PyBoard { inner: board::Board::goal(n).map_err(value_error)? })
    }

    #[staticmethod]
    fn parse(text: &str, n: usize) -> PyResult<PyBoard> {
        Ok(PyBoard { inner: board::Board::parse(text, n).map_err(value_error)? })
    }

    fn render(&self) -> String {
        self.inner.render()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn empty_index(&self) -> usize {
        self.inner.empty_index()
    }

    fn weight(&self) -> u64 {
        self.inner.weight()
    }

    fn is_goal(&self) -> bool {
        self.inner == board::Board::goal(self.inner.n()).expect("board sizes are valid")
    }

    fn legal_moves(&self) -> Vec<PyMove> {
        self.inner.legal_moves().into_iter().map(|inner| PyMove { inner }).collect()
    }

    fn apply(&self, mv: &PyMove) -> PyResult<PyBoard> {
        Ok(PyBoard { inner: self.inner.apply_move(mv.inner).map_err(value_error)? })
    }

    fn __eq__(&self, other: &PyBoard) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.render()
    }

    fn __repr__(&self) -> String {
        format!("Board({:?})", self.inner.render())
    }
}

/// A replayed script: boards, weights and tallies.
#[pyclass(name = "Trace", frozen)]
struct PyTrace {
    inner: pegswap_core::notation::SolutionTrace,
}

#[pymethods]
impl PyTrace {
    #[getter]
    fn solved(&self) -> bool {
        self.inner.solved
    }

    #[getter]
    fn final_board(&self) -> String {
        self.inner.final_board().render()
    }

    #[getter]
    fn move_count(&self) -> usize {
        self.inner.counts.total
    }

    #[getter]
    fn steps(&self) -> usize {
        self.inner.counts.steps
    }

    #[getter]
    fn jumps(&self) -> usize {
        self.inner.counts.jumps
    }

    #[getter]
    fn weights(&self) -> Vec<u64> {
        self.inner.weight_trace.clone()
    }

    #[getter]
    fn final_weight(&self) -> u64 {
        self.inner.weight_trace.last().copied().unwrap_or(0)
    }

    #[getter]
    fn boards(&self) -> Vec<String> {
        self.inner.boards.iter().map(|b| b.render()).collect()
    }

    #[getter]
    fn moves(&self) -> Vec<PyMove> {
        self.inner.moves.iter().map(|mv| PyMove { inner: *mv }).collect()
    }

    /// The stable structured-text document for this trace.
    fn document(&self) -> String {
        trace_document(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Trace(n={}, moves={}, solved={})",
            self.inner.n, self.inner.counts.total, self.inner.solved
        )
    }
}

/// Outcome of the exhaustive breadth-first search.
#[pyclass(name = "SearchOutcome", frozen)]
struct PySearchOutcome {
    inner: oracle::SearchResult,
}

#[pymethods]
impl PySearchOutcome {
    #[getter]
    fn min_moves(&self) -> Option<u32> {
        self.inner.min_moves
    }

    #[getter]
    fn reachable_states(&self) -> u64 {
        self.inner.reachable_states
    }

    #[getter]
    fn peak_frontier(&self) -> usize {
        self.inner.peak_frontier
    }

    #[getter]
    fn expanded(&self) -> u64 {
        self.inner.expanded
    }

    #[getter]
    fn witness(&self) -> Option<Vec<PyMove>> {
        self.inner
            .witness
            .as_ref()
            .map(|moves| moves.iter().map(|mv| PyMove { inner: *mv }).collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "SearchOutcome(n={}, min_moves={:?}, reachable_states={})",
            self.inner.n, self.inner.min_moves, self.inner.reachable_states
        )
    }
}

/// Outcome of the lower-bound accounting audit.
#[pyclass(name = "AuditOutcome", frozen)]
struct PyAuditOutcome {
    passed: bool,
    solved: bool,
    first_crosses: usize,
    final_weight: u64,
    move_count: usize,
    implied_min_moves: u64,
    failures: Vec<String>,
    document: String,
}

#[pymethods]
impl PyAuditOutcome {
    #[getter]
    fn passed(&self) -> bool {
        self.passed
    }

    #[getter]
    fn solved(&self) -> bool {
        self.solved
    }

    #[getter]
    fn first_crosses(&self) -> usize {
        self.first_crosses
    }

    #[getter]
    fn final_weight(&self) -> u64 {
        self.final_weight
    }

    #[getter]
    fn move_count(&self) -> usize {
        self.move_count
    }

    #[getter]
    fn implied_min_moves(&self) -> u64 {
        self.implied_min_moves
    }

    #[getter]
    fn failures(&self) -> Vec<String> {
        self.failures.clone()
    }

    fn document(&self) -> String {
        self.document.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "AuditOutcome(passed={}, solved={}, first_crosses={})",
            self.passed, self.solved, self.first_crosses
        )
    }
}

/// The generated optimal solution of n^2 + 2n moves.
#[pyfunction]
#[pyo3(signature = (n, form = "direct", compact = false))]
fn solve(n: usize, form: &str, compact: bool) -> PyResult<String> {
    let script = solution_sequence(n, parse_form(form)?).map_err(value_error)?;
    Ok(if compact { script.format_compact() } else { script.format_plain() })
}

/// (total, jumps, steps) = (n^2 + 2n, n^2, 2n).
#[pyfunction]
#[pyo3(name = "expected_counts")]
fn expected_counts_py(n: usize) -> PyResult<(u64, u64, u64)> {
    let counts = expected_counts(n).map_err(value_error)?;
    Ok((counts.total, counts.jumps, counts.steps))
}

/// Replay a script (S/s/J/j with optional repeat counts) from the start.
#[pyfunction]
#[pyo3(name = "replay")]
fn replay_py(n: usize, script: &str) -> PyResult<PyTrace> {
    let script = MoveScript::parse(script).map_err(value_error)?;
    Ok(PyTrace { inner: replay(n, &script).map_err(value_error)? })
}

/// Exact optimum by exhaustive search; wants n at most max_n (default 12).
#[pyfunction]
#[pyo3(signature = (n, want_path = false, max_n = None, workers = 1))]
fn bfs_min_moves(
    n: usize,
    want_path: bool,
    max_n: Option<usize>,
    workers: usize,
) -> PyResult<PySearchOutcome> {
    let mut config = oracle::OracleConfig { workers, ..oracle::OracleConfig::default() };
    if let Some(max_n) = max_n {
        config.max_n = max_n;
    }
    let inner = oracle::bfs_min_moves(n, want_path, &config).map_err(value_error)?;
    Ok(PySearchOutcome { inner })
}

/// Audit the lower-bound accounting of a solution script.
#[pyfunction]
fn audit(n: usize, script: &str) -> PyResult<PyAuditOutcome> {
    let script = MoveScript::parse(script).map_err(value_error)?;
    let trace = replay(n, &script).map_err(value_error)?;
    let report = audit_solution(n, &trace.moves).map_err(value_error)?;
    Ok(PyAuditOutcome {
        passed: report.passed,
        solved: report.solved,
        first_crosses: report.first_cross_count,
        final_weight: report.final_weight,
        move_count: report.move_count,
        implied_min_moves: report.arithmetic.implied_min_moves,
        failures: report.failures.iter().map(|f| f.to_string()).collect(),
        document: audit_document(&trace, &report),
    })
}

/// Longest chain of consecutive weight-increasing jumps over all reachable
/// states (scan bound: n <= 5).
#[pyfunction]
#[pyo3(name = "max_increasing_jump_run")]
fn max_increasing_jump_run_py(n: usize) -> PyResult<u32> {
    oracle::max_increasing_jump_run(n, &oracle::OracleConfig::default()).map_err(value_error)
}

/// The board B^{n-2m} O (RB)^{2m} R^{n-2m} reached after m opening terms.
#[pyfunction]
#[pyo3(name = "intermediate_pattern")]
fn intermediate_pattern_py(n: usize, m: usize) -> PyResult<String> {
    Ok(intermediate_pattern(n, m).map_err(value_error)?.render())
}

/// Number of distinct valid boards: (2n+1) * C(2n, n).
#[pyfunction]
#[pyo3(name = "state_space_size")]
fn state_space_size_py(n: usize) -> u64 {
    oracle::state_space_size(n)
}

#[pymodule]
fn pegswap(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyBoard>()?;
    m.add_class::<PyMove>()?;
    m.add_class::<PyTrace>()?;
    m.add_class::<PySearchOutcome>()?;
    m.add_class::<PyAuditOutcome>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(expected_counts_py, m)?)?;
    m.add_function(wrap_pyfunction!(replay_py, m)?)?;
    m.add_function(wrap_pyfunction!(bfs_min_moves, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(max_increasing_jump_run_py, m)?)?;
    m.add_function(wrap_pyfunction!(intermediate_pattern_py, m)?)?;
    m.add_function(wrap_pyfunction!(state_space_size_py, m)?)?;
    Ok(())
}
