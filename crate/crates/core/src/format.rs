//! The `ground v1` text format.
//!
//! ```text
//! ground v1
//! dims <rows> <cols>
//! arc <row> <col> <dx> <dy>
//! zeta <row> <col> <actions>
//! ```
//!
//! `#` starts a comment. Arcs are written in row-major origin order. Reading
//! accepts files whose arcs violate slot, degree or crossing rules so that the
//! verifier can report on them; only malformed lines are errors.

use std::fmt::Write as _;

use crate::braid::ActionSequence;
use crate::embedding::GroundEmbedding;
use crate::error::{LaceError, ParseError, ParseErrorKind};
use crate::geometry::{Arc, GridPos, StepVector, TorusDims};

pub fn serialize(e: &GroundEmbedding) -> String {
    let dims = e.dims();
    let mut out = String::from("ground v1\n");
    writeln!(out, "dims {} {}", dims.rows(), dims.cols()).unwrap();
    for a in e.arcs() {
        writeln!(
            out,
            "arc {} {} {} {}",
            a.origin.row,
            a.origin.col,
            a.step.dx(),
            a.step.dy()
        )
        .unwrap();
    }
    for (v, z) in e.zeta() {
        writeln!(out, "zeta {} {} {}", v.row, v.col, z).unwrap();
    }
    out
}

pub fn deserialize(text: &str) -> Result<GroundEmbedding, ParseError> {
    let mut embedding: Option<GroundEmbedding> = None;
    let mut seen_header = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |kind| ParseError { line, kind };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if !seen_header {
            if fields != ["ground", "v1"] {
                return Err(err(ParseErrorKind::MissingHeader));
            }
            seen_header = true;
            continue;
        }
        match fields[0] {
            "dims" => {
                if embedding.is_some() {
                    return Err(err(ParseErrorKind::DuplicateDims));
                }
                let [r, c] = numbers::<2>(&fields[1..]).map_err(err)?;
                let dims = TorusDims::new(to_u32(r).map_err(err)?, to_u32(c).map_err(err)?)
                    .map_err(|e| err(ParseErrorKind::Lace(e)))?;
                embedding = Some(GroundEmbedding::new(dims));
            }
            "arc" => {
                let e = embedding
                    .as_mut()
                    .ok_or_else(|| err(ParseErrorKind::MissingDims))?;
                let [r, c, dx, dy] = numbers::<4>(&fields[1..]).map_err(err)?;
                let origin = position(r, c, e.dims()).map_err(err)?;
                let step = step(dx, dy).map_err(err)?;
                let arc = Arc::new(origin, step);
                e.insert_arc(arc)
                    .map_err(|a| err(ParseErrorKind::DuplicateArc(a.to_string())))?;
            }
            "zeta" => {
                let e = embedding
                    .as_mut()
                    .ok_or_else(|| err(ParseErrorKind::MissingDims))?;
                if fields.len() != 4 {
                    return Err(err(ParseErrorKind::Syntax(
                        "expected `zeta <row> <col> <actions>`".into(),
                    )));
                }
                let [r, c] = numbers::<2>(&fields[1..3]).map_err(err)?;
                let v = position(r, c, e.dims()).map_err(err)?;
                let actions: ActionSequence = fields[3]
                    .parse()
                    .map_err(|e| err(ParseErrorKind::Lace(e)))?;
                e.set_zeta(v, actions);
            }
            other => {
                return Err(err(ParseErrorKind::Syntax(format!(
                    "unknown directive `{other}`"
                ))))
            }
        }
    }
    if !seen_header {
        return Err(ParseError {
            line: 1,
            kind: ParseErrorKind::MissingHeader,
        });
    }
    embedding.ok_or(ParseError {
        line: text.lines().count().max(1),
        kind: ParseErrorKind::MissingDims,
    })
}

fn numbers<const N: usize>(fields: &[&str]) -> Result<[i64; N], ParseErrorKind> {
    if fields.len() != N {
        return Err(ParseErrorKind::Syntax(format!(
            "expected {N} integers, found {}",
            fields.len()
        )));
    }
    let mut out = [0i64; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f
            .parse()
            .map_err(|_| ParseErrorKind::Syntax(format!("`{f}` is not an integer")))?;
    }
    Ok(out)
}

fn to_u32(x: i64) -> Result<u32, ParseErrorKind> {
    u32::try_from(x).map_err(|_| ParseErrorKind::Syntax(format!("`{x}` is not a valid dimension")))
}

fn position(row: i64, col: i64, dims: TorusDims) -> Result<GridPos, ParseErrorKind> {
    let inside = (0..dims.rows() as i64).contains(&row) && (0..dims.cols() as i64).contains(&col);
    if !inside {
        return Err(ParseErrorKind::OutOfRange {
            row,
            col,
            rows: dims.rows(),
            cols: dims.cols(),
        });
    }
    Ok(GridPos {
        row: row as u32,
        col: col as u32,
    })
}

fn step(dx: i64, dy: i64) -> Result<StepVector, ParseErrorKind> {
    let bad = || {
        ParseErrorKind::Lace(LaceError::InvalidStep {
            dx: dx.clamp(i32::MIN as i64, i32::MAX as i64) as i32,
            dy: dy.clamp(i32::MIN as i64, i32::MAX as i64) as i32,
        })
    };
    let dx = i32::try_from(dx).map_err(|_| bad())?;
    let dy = i32::try_from(dy).map_err(|_| bad())?;
    StepVector::new(dx, dy).map_err(|_| bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE: &str = "ground v1\ndims 1 1\narc 0 0 -1 1\narc 0 0 1 0\n";

    #[test]
    fn empty_is_header_only() {
        let e = GroundEmbedding::new(TorusDims::new(1, 1).unwrap());
        assert_eq!(serialize(&e), "ground v1\ndims 1 1\n");
    }

    #[test]
    fn round_trip() {
        let e = deserialize(ONE).unwrap();
        assert_eq!(serialize(&e), ONE);
        assert_eq!(deserialize(&serialize(&e)).unwrap(), e);
    }

    #[test]
    fn zeta_round_trip() {
        let text = format!("{ONE}zeta 0 0 CTpL\n");
        let e = deserialize(&text).unwrap();
        assert_eq!(serialize(&e), text);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a ground\n\nground v1   # header\ndims 1 1\n  arc 0 0 1 0 # east\n";
        assert_eq!(deserialize(text).unwrap().arc_count(), 1);
    }

    #[test]
    fn bad_step_is_reported_with_line() {
        let err = deserialize("ground v1\ndims 1 1\narc 0 0 3 0\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(matches!(
            err.kind,
            ParseErrorKind::Lace(LaceError::InvalidStep { dx: 3, dy: 0 })
        ));
    }

    #[test]
    fn other_errors() {
        let kind = |t: &str| deserialize(t).unwrap_err().kind;
        assert_eq!(kind("dims 1 1\n"), ParseErrorKind::MissingHeader);
        assert_eq!(kind(""), ParseErrorKind::MissingHeader);
        assert_eq!(kind("ground v1\n"), ParseErrorKind::MissingDims);
        assert_eq!(
            kind("ground v1\narc 0 0 0 1\n"),
            ParseErrorKind::MissingDims
        );
        assert!(matches!(
            kind("ground v1\ndims 1 1\narc 0 1 0 1\n"),
            ParseErrorKind::OutOfRange { .. }
        ));
        assert!(matches!(
            kind("ground v1\ndims 1 1\narc 0 0 0 1\narc 0 0 0 1\n"),
            ParseErrorKind::DuplicateArc(_)
        ));
        assert!(matches!(
            kind("ground v1\ndims 1 1\narc 0 0 x 1\n"),
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            kind("ground v1\ndims 0 1\n"),
            ParseErrorKind::Lace(_)
        ));
        assert_eq!(
            kind("ground v1\ndims 1 1\ndims 1 1\n"),
            ParseErrorKind::DuplicateDims
        );
    }

    #[test]
    fn property_violations_are_admitted() {
        // both arcs use the W slot of (0,1)
        let e = deserialize("ground v1\ndims 1 2\narc 0 0 1 0\narc 0 1 -1 0\n").unwrap();
        assert_eq!(e.arc_count(), 2);
    }
}
