//! Plain-text problem instances.
//!
//! ```text
//! # name: fig1
//! # free-form comments
//! n m k
//! <m rows of n integers>    constraint matrix A
//! <m integers>              right-hand side b
//! <k rows of n integers>    objective matrix C
//! ```
//!
//! The instance is `max Cx` over `{x >= 0 integer : Ax <= b}`: variables are
//! implicitly nonnegative, so the loader appends one `-x_i <= 0` row per
//! variable and the writer strips them again.

use crate::exactmath::{Int, IntVec};
use crate::moilp::{MoilpError, MoilpProblem};
use crate::polytope::HPolytope;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProblemFileError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Problem(#[from] MoilpError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub name: Option<String>,
    pub problem: MoilpProblem,
}

fn parse_row(line: usize, text: &str, expected: usize) -> Result<IntVec, ProblemFileError> {
    let entries: Vec<Int> = text
        .split_whitespace()
        .map(|tok| {
            tok.parse().map_err(|_| ProblemFileError::Parse {
                line,
                message: format!("bad integer {tok:?}"),
            })
        })
        .collect::<Result<_, _>>()?;
    if entries.len() != expected {
        return Err(ProblemFileError::Parse {
            line,
            message: format!("expected {expected} integers, found {}", entries.len()),
        });
    }
    Ok(IntVec(entries))
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemFileError> {
    let mut name = None;
    let mut data: Vec<(usize, &str)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(n) = comment.trim().strip_prefix("name:") {
                name = Some(n.trim().to_string());
            }
            continue;
        }
        data.push((line, trimmed));
    }
    let mut it = data.into_iter();
    let (header_line, header) = it.next().ok_or(ProblemFileError::Parse {
        line: 1,
        message: "missing `n m k` header".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|tok| tok.parse().ok())
        .collect::<Option<_>>()
        .filter(|d: &Vec<usize>| d.len() == 3)
        .ok_or(ProblemFileError::Parse {
            line: header_line,
            message: format!("header must be `n m k`, found {header:?}"),
        })?;
    let (n, m, k) = (dims[0], dims[1], dims[2]);
    let mut next_row = |expected: usize, what: &str| -> Result<IntVec, ProblemFileError> {
        let (line, text) = it.next().ok_or(ProblemFileError::Parse {
            line: header_line,
            message: format!("missing {what} row"),
        })?;
        parse_row(line, text, expected)
    };
    let mut rows = Vec::with_capacity(m + n);
    for i in 0..m {
        rows.push(next_row(n, &format!("constraint {i}"))?);
    }
    let rhs_row = next_row(m, "right-hand side")?;
    let mut objectives = Vec::with_capacity(k);
    for s in 0..k {
        objectives.push(next_row(n, &format!("objective {s}"))?);
    }
    if let Some((line, _)) = it.next() {
        return Err(ProblemFileError::Parse { line, message: "unexpected trailing data".into() });
    }
    let mut rhs = rhs_row.0;
    for i in 0..n {
        rows.push(IntVec::unit(n, i).neg());
        rhs.push(Int::from(0));
    }
    let constraints = HPolytope::new(n, rows, rhs).map_err(MoilpError::from)?;
    let problem = MoilpProblem::new(constraints, objectives)?;
    Ok(ProblemFile { name, problem })
}

fn push_row(out: &mut String, row: &[Int]) {
    for (i, e) in row.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{e}");
    }
    out.push('\n');
}

pub fn serialize_problem(file: &ProblemFile) -> String {
    let problem = &file.problem;
    let p = problem.constraints();
    let n = p.dim();
    let m = p.rows().len() - n;
    for (i, row) in p.rows()[m..].iter().enumerate() {
        debug_assert_eq!(*row, IntVec::unit(n, i).neg(), "nonnegativity rows must come last");
        debug_assert_eq!(p.rhs()[m + i], Int::from(0));
    }
    let mut out = String::new();
    if let Some(name) = &file.name {
        let _ = writeln!(out, "# name: {name}");
    }
    let _ = writeln!(out, "{n} {m} {}", problem.num_objectives());
    for row in &p.rows()[..m] {
        push_row(&mut out, &row.0);
    }
    push_row(&mut out, &p.rhs()[..m]);
    for c in problem.objectives() {
        push_row(&mut out, &c.0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const PENTAGON: &str = "\
# name: pentagon
# five facets, two objectives
2 5 2
-1 0
0 1
1 1
1 -2
-1 -1
-1 3 5 2 -2
1 0
0 1
";

    #[test]
    fn parses_the_pentagon_instance() {
        let file = parse_problem(PENTAGON).unwrap();
        assert_eq!(file.name.as_deref(), Some("pentagon"));
        assert_eq!(file.problem.dim(), 2);
        assert_eq!(file.problem.num_objectives(), 2);
        // Five stated rows plus two nonnegativity rows.
        assert_eq!(file.problem.constraints().rows().len(), 7);
        assert!(file.problem.constraints().contains_int(&IntVec::from_i64(&[2, 3])));
        assert!(!file.problem.constraints().contains_int(&IntVec::from_i64(&[0, 0])));
    }

    #[test]
    fn roundtrips_through_text() {
        let file = parse_problem(PENTAGON).unwrap();
        let text = serialize_problem(&file);
        let again = parse_problem(&text).unwrap();
        assert_eq!(file, again);
        assert_eq!(text, serialize_problem(&again));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(
            parse_problem(""),
            Err(ProblemFileError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_problem("2 1\n1 0\n4\n1 0\n"),
            Err(ProblemFileError::Parse { .. })
        ));
        let bad_arity = "1 1 1\n1 1\n4\n1\n";
        assert!(matches!(
            parse_problem(bad_arity),
            Err(ProblemFileError::Parse { line: 2, .. })
        ));
        let trailing = "1 1 1\n1\n4\n1\n9\n";
        assert!(matches!(
            parse_problem(trailing),
            Err(ProblemFileError::Parse { line: 5, .. })
        ));
    }

    #[test]
    fn unbounded_instance_names_a_direction() {
        // x - y <= 0 leaves the diagonal free.
        let text = "2 1 1\n1 -1\n0\n1 1\n";
        let err = parse_problem(text).unwrap_err();
        let message = err.to_string();
        assert!(
            message.contains("unbounded along direction ("),
            "unexpected message: {message}"
        );
    }
}
