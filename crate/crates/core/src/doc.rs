//! Structured-text documents for traces and audits.
//!
//! The format is line-oriented and versioned (`format: 1`): scalar fields as
//! `name: value`, lists as an indented block of `  - key=value ...` lines.
//! Field names and ordering are fixed, so re-serializing the same input is
//! byte-identical — documents double as golden-test fixtures. Move indices
//! and hole indices in documents are 1-based and 0-based respectively,
//! matching replay error positions and board indexing.

use std::fmt::Write;

use crate::audit::{AuditReport, GroupClass};
use crate::board::MoveKind;
use crate::notation::{SolutionTrace, classify_move};

/// Serialize a replayed trace.
pub fn trace_document(trace: &SolutionTrace) -> String {
    let mut out = String::new();
    write_trace_fields(&mut out, trace);
    out
}

/// Serialize a trace together with its audit report.
pub fn audit_document(trace: &SolutionTrace, report: &AuditReport) -> String {
    let mut out = String::new();
    write_trace_fields(&mut out, trace);
    write_audit_fields(&mut out, report);
    out
}

fn write_trace_fields(out: &mut String, trace: &SolutionTrace) {
    let _ = writeln!(out, "format: 1");
    let _ = writeln!(out, "n: {}", trace.n);
    let _ = writeln!(out, "script: {}", trace.classified_text());
    let _ = writeln!(out, "solved: {}", trace.solved);
    let _ = writeln!(
        out,
        "counts: total={} steps={} jumps={}",
        trace.counts.total, trace.counts.steps, trace.counts.jumps
    );
    let weights: Vec<String> = trace.weight_trace.iter().map(|w| w.to_string()).collect();
    let _ = writeln!(out, "weight_trace: {}", weights.join(" "));
    let _ = writeln!(out, "final_board: {}", trace.final_board().render());
    let _ = writeln!(out, "moves:");
    for (i, mv) in trace.moves.iter().enumerate() {
        let label = match classify_move(*mv) {
            Some(token) => token.to_char().to_string(),
            None => match mv.kind {
                MoveKind::Step => "step".to_string(),
                MoveKind::Jump => "jump".to_string(),
            },
        };
        let _ = writeln!(
            out,
            "  - index={} move={} from={} to={} delta={:+}",
            i + 1,
            label,
            mv.from,
            mv.to,
            mv.weight_delta().value()
        );
    }
}

fn write_audit_fields(out: &mut String, report: &AuditReport) {
    let n = report.n as u64;
    let _ = writeln!(out, "audit:");
    let _ = writeln!(out, "  final_weight: {}", report.final_weight);
    let _ = writeln!(out, "  expected_final_weight: {}", 2 * n * (n + 1));
    let _ = writeln!(out, "  first_crosses: {}", report.first_cross_count);
    let _ = writeln!(out, "  expected_first_crosses: {}", n * n);
    let _ = writeln!(out, "  pair_crossings:");
    for pair in &report.crossings.red_blue {
        let first =
            pair.first_cross().map(|i| (i + 1).to_string()).unwrap_or_else(|| "-".to_string());
        let _ = writeln!(
            out,
            "    - pair={}-{} crossings={} first={}",
            pair.red,
            pair.blue,
            pair.count(),
            first
        );
    }
    if report.crossings.same_color.is_empty() {
        let _ = writeln!(out, "  same_color_crossings: none");
    } else {
        let _ = writeln!(out, "  same_color_crossings:");
        for pair in &report.crossings.same_color {
            let _ = writeln!(
                out,
                "    - pair={}-{} crossings={}",
                pair.a,
                pair.b,
                pair.move_indices.len()
            );
        }
    }
    let _ = writeln!(out, "  alternation:");
    for verdict in &report.alternation {
        match verdict.first_violation {
            None => {
                let _ = writeln!(out, "    - peg={} ok=true", verdict.peg);
            }
            Some(i) => {
                let _ = writeln!(out, "    - peg={} ok=false violation_at={}", verdict.peg, i);
            }
        }
    }
    let _ = writeln!(out, "  groups:");
    for group in &report.groups {
        let members: Vec<String> = group.members.iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(
            out,
            "    - class={} gain={:+} members={}",
            group.class.label(),
            group.weight_gain,
            members.join(",")
        );
    }
    let count = |class: GroupClass| report.groups.iter().filter(|g| g.class == class).count();
    let _ = writeln!(
        out,
        "  group_counts: first_cross={} repeat_cross_pair={} productive_step={} \
         same_color_jump_pair={} residual={}",
        count(GroupClass::FirstCross),
        count(GroupClass::RepeatCrossPair),
        count(GroupClass::ProductiveStep),
        count(GroupClass::SameColorJumpPair),
        count(GroupClass::Residual)
    );
    let a = &report.arithmetic;
    let _ = writeln!(
        out,
        "  arithmetic: first_cross_gain={} other_gain={} other_moves={} \
         implied_min_moves={} actual_moves={}",
        a.first_cross_gain, a.other_gain, a.other_moves, a.implied_min_moves, a.actual_moves
    );
    if report.skipped.is_empty() {
        let _ = writeln!(out, "  skipped: none");
    } else {
        let _ = writeln!(out, "  skipped: {}", report.skipped.join(" "));
    }
    if report.failures.is_empty() {
        let _ = writeln!(out, "  failures: none");
    } else {
        let _ = writeln!(out, "  failures:");
        for failure in &report.failures {
            let _ = writeln!(out, "    - {failure}");
        }
    }
    let _ = writeln!(out, "  verdict: {}", if report.passed { "pass" } else { "fail" });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::audit_solution;
    use crate::notation::{MoveScript, replay};

    #[test]
    fn trace_document_golden() {
        let trace = replay(1, &MoveScript::parse("SjS").unwrap()).unwrap();
        let doc = trace_document(&trace);
        let expected = "\
format: 1
n: 1
script: SjS
solved: true
counts: total=3 steps=2 jumps=1
weight_trace: 1 3 4
final_board: ROB
moves:
  - index=1 move=S from=0 to=1 delta=+1
  - index=2 move=j from=2 to=0 delta=+2
  - index=3 move=S from=1 to=2 delta=+1
";
        assert_eq!(doc, expected);
    }

    #[test]
    fn documents_are_byte_stable() {
        let trace = replay(2, &MoveScript::parse("SjsJJsjS").unwrap()).unwrap();
        assert_eq!(trace_document(&trace), trace_document(&trace));
        let report = audit_solution(2, &trace.moves).unwrap();
        let doc = audit_document(&trace, &report);
        assert_eq!(doc, audit_document(&trace, &report));
        assert!(doc.contains("weight_trace: 1 3 4 6 8 9 11 12"));
        assert!(doc.contains("  first_crosses: 4"));
        assert!(doc.contains("  verdict: pass"));
        assert!(doc.contains("  group_counts: first_cross=4 repeat_cross_pair=0 productive_step=4 same_color_jump_pair=0 residual=0"));
    }

    #[test]
    fn audit_document_marks_skipped_checks() {
        let trace = replay(2, &MoveScript::parse("SS").unwrap()).unwrap();
        let report = audit_solution(2, &trace.moves).unwrap();
        let doc = audit_document(&trace, &report);
        assert!(doc.contains("solved: false"));
        assert!(doc.contains(
            "  skipped: final-weight pair-parity first-cross-count average-gain-bound implied-bound"
        ));
    }
}
