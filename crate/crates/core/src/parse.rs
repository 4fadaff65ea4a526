//! The line-oriented `.bq` bound-quiver format.
//!
//! ```text
//! quiver <name>
//! vertex <id> [<id> ...]
//! arrow <id> <src> <tgt>
//! rel <arrow> <arrow> [<arrow> ...]
//! ```
//!
//! `#` starts a comment. Declaration order fixes the canonical ordering.

use crate::error::QuiverError;
use crate::quiver::{BoundQuiver, Quiver};

#[derive(Debug)]
pub struct Parsed {
    pub bound_quiver: BoundQuiver,
    /// Relations dropped because they contain another relation.
    pub warnings: Vec<String>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> QuiverError {
    QuiverError::Syntax { line, column, message: message.into() }
}

/// Splits a line into (column, token) pairs, columns 1-based.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn check_ident(line: usize, column: usize, tok: &str) -> Result<(), QuiverError> {
    if tok.is_ascii() {
        Ok(())
    } else {
        Err(syntax(line, column, format!("identifier `{tok}` is not ASCII")))
    }
}

pub fn parse_bound_quiver(text: &str) -> Result<Parsed, QuiverError> {
    let mut name: Option<String> = None;
    let mut quiver = Quiver::new();
    let mut relations = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(&(col, keyword)) = toks.first() else { continue };
        if name.is_none() && keyword != "quiver" {
            return Err(syntax(line_no, col, "expected `quiver <name>` header"));
        }
        match keyword {
            "quiver" => {
                if name.is_some() {
                    return Err(syntax(line_no, col, "duplicate `quiver` header"));
                }
                if toks.len() != 2 {
                    return Err(syntax(line_no, col, "expected `quiver <name>`"));
                }
                check_ident(line_no, toks[1].0, toks[1].1)?;
                name = Some(toks[1].1.to_string());
            }
            "vertex" => {
                if toks.len() < 2 {
                    return Err(syntax(line_no, col, "expected at least one vertex id"));
                }
                for &(c, t) in &toks[1..] {
                    check_ident(line_no, c, t)?;
                    quiver.add_vertex(t)?;
                }
            }
            "arrow" => {
                if toks.len() != 4 {
                    return Err(syntax(line_no, col, "expected `arrow <id> <src> <tgt>`"));
                }
                check_ident(line_no, toks[1].0, toks[1].1)?;
                let s = quiver
                    .vertex_by_name(toks[2].1)
                    .ok_or_else(|| syntax(line_no, toks[2].0, format!("unknown vertex `{}`", toks[2].1)))?;
                let t = quiver
                    .vertex_by_name(toks[3].1)
                    .ok_or_else(|| syntax(line_no, toks[3].0, format!("unknown vertex `{}`", toks[3].1)))?;
                quiver.add_arrow(toks[1].1, s, t)?;
            }
            "rel" => {
                if toks.len() < 3 {
                    return Err(QuiverError::RelationTooShort(toks[1..].iter().map(|t| t.1.to_string()).collect()));
                }
                let mut path = Vec::new();
                for &(c, t) in &toks[1..] {
                    path.push(quiver.arrow_by_name(t).ok_or_else(|| syntax(line_no, c, format!("unknown arrow `{t}`")))?);
                }
                relations.push(path);
            }
            other => return Err(syntax(line_no, col, format!("unknown keyword `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| syntax(1, 1, "empty input"))?;
    let (bound_quiver, dropped) = BoundQuiver::new(&name, quiver, relations)?;
    let warnings = dropped
        .iter()
        .map(|p| format!("relation `{}` contains another relation and was dropped", p.display(bound_quiver.quiver())))
        .collect();
    Ok(Parsed { bound_quiver, warnings })
}

/// Serializes a bound quiver in `.bq` form. Parsing the output yields the
/// same quiver with the same declaration order.
pub fn write_bound_quiver(bq: &BoundQuiver) -> String {
    let q = bq.quiver();
    let mut out = format!("quiver {}\n", bq.name);
    if q.vertex_count() > 0 {
        let names: Vec<&str> = q.vertices().map(|v| q.vertex_name(v)).collect();
        out.push_str(&format!("vertex {}\n", names.join(" ")));
    }
    for a in q.arrows() {
        out.push_str(&format!("arrow {} {} {}\n", q.arrow_name(a), q.vertex_name(q.source(a)), q.vertex_name(q.target(a))));
    }
    for r in bq.relations() {
        out.push_str(&format!("rel {}\n", r.display(q)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_lin3() {
        let p = parse_bound_quiver("quiver lin3\nvertex 1 2 3\narrow a 1 2\narrow b 2 3\n").unwrap();
        let bq = p.bound_quiver;
        assert_eq!(bq.vertex_count(), 3);
        assert_eq!(bq.arrow_count(), 2);
        assert!(bq.relations().is_empty());
    }

    #[test]
    fn parses_d6_source() {
        let bq = parse_bound_quiver(fixtures::D6_SOURCE).unwrap().bound_quiver;
        assert_eq!(bq.vertex_count(), 6);
        assert_eq!(bq.arrow_count(), 6);
        let mut lens: Vec<usize> = bq.relations().iter().map(|r| r.len()).collect();
        lens.sort();
        assert_eq!(lens, vec![2, 2, 3, 3]);
    }

    #[test]
    fn composability_error() {
        let err = parse_bound_quiver("quiver x\nvertex 1 2 3\narrow a 1 2\narrow c 3 1\nrel a c\n").unwrap_err();
        assert!(matches!(err, QuiverError::NotComposable { .. }), "{err:?}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_bound_quiver("quiver x\nvertex 1\narrow a 1 9\n").unwrap_err();
        assert_eq!(err, QuiverError::Syntax { line: 3, column: 11, message: "unknown vertex `9`".into() });
        let err = parse_bound_quiver("vertex 1\n").unwrap_err();
        assert!(matches!(err, QuiverError::Syntax { line: 1, column: 1, .. }));
        let err = parse_bound_quiver("quiver x\nvertex 1\nfoo\n").unwrap_err();
        assert!(matches!(err, QuiverError::Syntax { line: 3, .. }));
    }

    #[test]
    fn short_relation_and_duplicates() {
        assert!(matches!(
            parse_bound_quiver("quiver x\nvertex 1 2\narrow a 1 2\nrel a\n").unwrap_err(),
            QuiverError::RelationTooShort(_)
        ));
        assert!(matches!(parse_bound_quiver("quiver x\nvertex 1 1\n").unwrap_err(), QuiverError::DuplicateVertex(_)));
        assert!(matches!(
            parse_bound_quiver("quiver x\nvertex 1 2\narrow a 1 2\narrow a 2 1\n").unwrap_err(),
            QuiverError::DuplicateArrow(_)
        ));
    }

    #[test]
    fn redundant_relation_warns() {
        let p =
            parse_bound_quiver("quiver x\nvertex 1 2 3 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\nrel a b\nrel a b c\n").unwrap();
        assert_eq!(p.bound_quiver.relations().len(), 1);
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn writer_round_trips_fixtures() {
        for bq in fixtures::all() {
            let text = write_bound_quiver(&bq);
            let back = parse_bound_quiver(&text).unwrap().bound_quiver;
            assert_eq!(write_bound_quiver(&back), text);
        }
    }
}
