//! DIMACS cnf reading and writing.
//!
//! Format, exactly: optional comment lines `c ...`, a header
//! `p cnf <vars> <clauses>`, then clauses as whitespace-separated signed
//! integers terminated by 0 (clauses may span lines). The writer emits LF
//! line endings and puts comments before the header.

use std::fmt;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::cnf::{Clause, Cnf, CnfError, Lit};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct DimacsError {
    pub line: usize,
    pub kind: DimacsErrorKind,
}

impl fmt::Display for DimacsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.kind)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimacsErrorKind {
    #[error("missing 'p cnf <vars> <clauses>' header")]
    MissingHeader,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("unexpected token {0:?}")]
    BadToken(String),
    #[error("literal {lit} out of range: formula declares {num_vars} variables")]
    LiteralOutOfRange { lit: i32, num_vars: u32 },
    #[error("unterminated clause at end of input")]
    UnterminatedClause,
    #[error("header declares {declared} clauses but input has {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("clause appears before the header")]
    ClauseBeforeHeader,
    #[error("{0}")]
    Clause(CnfError),
    #[error("io error: {0}")]
    Io(String),
}

fn err(line: usize, kind: DimacsErrorKind) -> DimacsError {
    DimacsError { line, kind }
}

/// Parses a DIMACS cnf byte stream.
pub fn parse(reader: impl BufRead) -> Result<Cnf, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut cnf = Cnf::new(0);
    let mut current: Vec<Lit> = Vec::new();
    let mut in_clause = false;
    let mut clauses_seen = 0usize;
    let mut line_no = 0usize;

    for line in reader.lines() {
        line_no += 1;
        let line = line.map_err(|e| err(line_no, DimacsErrorKind::Io(e.to_string())))?;
        let trimmed = line.trim_start();
        if let Some(rest) = strip_comment(trimmed) {
            cnf.push_comment(rest);
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(err(line_no, DimacsErrorKind::BadHeader("duplicate header".into())));
            }
            let (vars, clauses) = parse_header(trimmed).map_err(|kind| err(line_no, kind))?;
            header = Some((vars, clauses));
            let comments = cnf.comments().to_vec();
            cnf = Cnf::new(vars);
            for c in comments {
                cnf.push_comment(c);
            }
            continue;
        }
        let (num_vars, declared) = match header {
            Some(h) => h,
            None => return Err(err(line_no, DimacsErrorKind::ClauseBeforeHeader)),
        };
        for tok in trimmed.split_whitespace() {
            let val: i32 = tok
                .parse()
                .map_err(|_| err(line_no, DimacsErrorKind::BadToken(tok.to_string())))?;
            if val == 0 {
                clauses_seen += 1;
                if clauses_seen > declared {
                    return Err(err(
                        line_no,
                        DimacsErrorKind::ClauseCountMismatch { declared, found: clauses_seen },
                    ));
                }
                let clause = Clause::new(current.drain(..))
                    .map_err(|e| err(line_no, DimacsErrorKind::Clause(e)))?;
                cnf.add_clause(clause)
                    .map_err(|e| err(line_no, DimacsErrorKind::Clause(e)))?;
                in_clause = false;
            } else {
                if val.unsigned_abs() > num_vars {
                    return Err(err(
                        line_no,
                        DimacsErrorKind::LiteralOutOfRange { lit: val, num_vars },
                    ));
                }
                current.push(Lit::from_dimacs(val).unwrap());
                in_clause = true;
            }
        }
    }

    let (_, declared) = header.ok_or_else(|| err(line_no, DimacsErrorKind::MissingHeader))?;
    if in_clause {
        return Err(err(line_no, DimacsErrorKind::UnterminatedClause));
    }
    if clauses_seen != declared {
        return Err(err(
            line_no,
            DimacsErrorKind::ClauseCountMismatch { declared, found: clauses_seen },
        ));
    }
    Ok(cnf)
}

pub fn parse_str(input: &str) -> Result<Cnf, DimacsError> {
    parse(input.as_bytes())
}

/// `c` comment line -> comment body ("c" prefix and one following space
/// stripped), anything else -> None.
fn strip_comment(line: &str) -> Option<String> {
    let rest = line.strip_prefix('c')?;
    if !rest.is_empty() && !rest.starts_with(|ch: char| ch.is_whitespace()) {
        // "cnf..." is not a comment; but bare "c" is.
        return Some(rest.to_string());
    }
    Some(rest.strip_prefix(' ').unwrap_or(rest).to_string())
}

fn parse_header(line: &str) -> Result<(u32, usize), DimacsErrorKind> {
    let mut toks = line.split_whitespace();
    let bad = |msg: &str| DimacsErrorKind::BadHeader(msg.to_string());
    if toks.next() != Some("p") {
        return Err(bad("expected 'p'"));
    }
    if toks.next() != Some("cnf") {
        return Err(bad("expected format 'cnf'"));
    }
    let vars: u32 = toks
        .next()
        .ok_or_else(|| bad("missing variable count"))?
        .parse()
        .map_err(|_| bad("variable count is not a number"))?;
    let clauses: usize = toks
        .next()
        .ok_or_else(|| bad("missing clause count"))?
        .parse()
        .map_err(|_| bad("clause count is not a number"))?;
    if toks.next().is_some() {
        return Err(bad("trailing tokens"));
    }
    Ok((vars, clauses))
}

/// Writes `cnf` in DIMACS form with LF line endings.
pub fn write(cnf: &Cnf, mut w: impl Write) -> io::Result<()> {
    for comment in cnf.comments() {
        if comment.is_empty() {
            writeln!(w, "c")?;
        } else {
            writeln!(w, "c {comment}")?;
        }
    }
    writeln!(w, "p cnf {} {}", cnf.num_vars(), cnf.num_clauses())?;
    for clause in cnf.clauses() {
        for lit in clause.iter() {
            write!(w, "{} ", lit.to_dimacs())?;
        }
        writeln!(w, "0")?;
    }
    Ok(())
}

pub fn write_string(cnf: &Cnf) -> String {
    let mut buf = Vec::new();
    write(cnf, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("DIMACS output is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_minimal() {
        let cnf = parse_str("p cnf 2 1\n1 -2 0\n").unwrap();
        assert_eq!(cnf.num_vars(), 2);
        assert_eq!(cnf.num_clauses(), 1);
        assert_eq!(cnf.clauses()[0].lits()[0], Lit::positive(1));
        assert_eq!(cnf.clauses()[0].lits()[1], Lit::negative(2));
    }

    #[test]
    fn parse_empty_formula() {
        let cnf = parse_str("p cnf 1 0\n").unwrap();
        assert_eq!(cnf.num_vars(), 1);
        assert_eq!(cnf.num_clauses(), 0);
        // vacuously satisfiable
        assert!(cnf.evaluate(&crate::cnf::Assignment::new(vec![false])).unwrap());
    }

    #[test]
    fn parse_comments_and_multiline_clause() {
        let cnf = parse_str("c hello\nc\np cnf 3 1\n1 2\n-3 0\n").unwrap();
        assert_eq!(cnf.comments(), &["hello".to_string(), String::new()]);
        assert_eq!(cnf.num_clauses(), 1);
        assert_eq!(cnf.clauses()[0].len(), 3);
    }

    #[test]
    fn error_positions() {
        let e = parse_str("p cnf x 1\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(matches!(e.kind, DimacsErrorKind::BadHeader(_)));

        let e = parse_str("p cnf 2 1\n1 -3 0\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.kind, DimacsErrorKind::LiteralOutOfRange { lit: -3, num_vars: 2 });

        let e = parse_str("p cnf 2 1\n1 -2\n").unwrap_err();
        assert_eq!(e.kind, DimacsErrorKind::UnterminatedClause);

        let e = parse_str("p cnf 2 2\n1 0\n").unwrap_err();
        assert_eq!(e.kind, DimacsErrorKind::ClauseCountMismatch { declared: 2, found: 1 });

        let e = parse_str("1 0\np cnf 1 1\n").unwrap_err();
        assert_eq!(e.kind, DimacsErrorKind::ClauseBeforeHeader);

        let e = parse_str("").unwrap_err();
        assert_eq!(e.kind, DimacsErrorKind::MissingHeader);
    }

    #[test]
    fn write_exact_format() {
        let mut cnf = Cnf::new(2);
        cnf.push_comment("note");
        cnf.add_clause_dimacs(&[1, -2]).unwrap();
        assert_eq!(write_string(&cnf), "c note\np cnf 2 1\n1 -2 0\n");
    }
}
