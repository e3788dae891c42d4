//! Input file parsing.
//!
//! The format is line oriented.  `#` starts a comment.  The ambient
//! dimension must be declared before any matrix block:
//!
//! ```text
//! amb_space 2
//! cone 2
//! 0 1
//! 2 1
//! grading
//! 1 1
//! Automorphisms
//! HilbertBasis
//! ```
//!
//! Matrix blocks are `cone <m>`, `polytope <m>` and `inequalities <m>`,
//! each followed by `m` rows of `amb_space` whitespace-separated entries;
//! entries are integers or rationals `p/q`.  `grading` and
//! `dehomogenization` are followed by a single integer row.  Every other
//! non-comment line is a computation goal.

use std::str::FromStr;

use num_traits::Zero;

use crate::cone::ConeInput;
use crate::error::{Error, Result};
use crate::linalg::{Int, Rat, RatMat};

/// A computation goal, in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Goal {
    /// Keyword `Automorphisms`.
    IntegralAutomorphisms,
    RationalAutomorphisms,
    EuclideanAutomorphisms,
    CombinatorialAutomorphisms,
    InputAutomorphisms,
    AmbientAutomorphisms,
    HilbertBasis,
    NormalForm,
    /// `IsoCheck <path>`: compare against the cone parsed from a second
    /// input file (resolved relative to the referring file).
    IsoCheck(String),
}

impl Goal {
    pub fn keyword(&self) -> &'static str {
        match self {
            Goal::IntegralAutomorphisms => "Automorphisms",
            Goal::RationalAutomorphisms => "RationalAutomorphisms",
            Goal::EuclideanAutomorphisms => "EuclideanAutomorphisms",
            Goal::CombinatorialAutomorphisms => "CombinatorialAutomorphisms",
            Goal::InputAutomorphisms => "InputAutomorphisms",
            Goal::AmbientAutomorphisms => "AmbientAutomorphisms",
            Goal::HilbertBasis => "HilbertBasis",
            Goal::NormalForm => "NormalForm",
            Goal::IsoCheck(_) => "IsoCheck",
        }
    }
}

/// A parsed job: the cone input and the goals in declaration order.
#[derive(Debug, Clone)]
pub struct JobSpec {
    pub input: ConeInput,
    pub goals: Vec<Goal>,
}

/// One meaningful line: 1-based line number and its tokens with 1-based
/// column positions.
struct Line {
    number: usize,
    tokens: Vec<(usize, String)>,
}

fn tokenize(text: &str) -> Vec<Line> {
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut start: Option<usize> = None;
        for (i, ch) in content.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s + 1, content[s..i].to_string()));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            tokens.push((s + 1, content[s..].to_string()));
        }
        if !tokens.is_empty() {
            lines.push(Line { number: idx + 1, tokens });
        }
    }
    lines
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_count(line: &Line) -> Result<usize> {
    if line.tokens.len() != 2 {
        return Err(err(
            line.number,
            format!("`{}` expects exactly one count argument", line.tokens[0].1),
        ));
    }
    let (col, ref tok) = line.tokens[1];
    tok.parse::<usize>()
        .map_err(|_| err(line.number, format!("column {}: invalid count `{}`", col, tok)))
}

fn parse_rat(line: usize, col: usize, tok: &str) -> Result<Rat> {
    let bad = || err(line, format!("column {}: malformed number `{}`", col, tok));
    match tok.split_once('/') {
        None => Ok(Rat::from_integer(Int::from_str(tok).map_err(|_| bad())?)),
        Some((p, q)) => {
            let numer = Int::from_str(p).map_err(|_| bad())?;
            let denom = Int::from_str(q).map_err(|_| bad())?;
            if denom.is_zero() {
                return Err(err(line, format!("column {}: zero denominator in `{}`", col, tok)));
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

fn parse_int(line: usize, col: usize, tok: &str) -> Result<Int> {
    Int::from_str(tok)
        .map_err(|_| err(line, format!("column {}: expected an integer, got `{}`", col, tok)))
}

fn row_of<T>(
    line: &Line,
    dim: usize,
    parse: impl Fn(usize, usize, &str) -> Result<T>,
) -> Result<Vec<T>> {
    if line.tokens.len() != dim {
        let col = line
            .tokens
            .get(dim)
            .map(|(c, _)| *c)
            .unwrap_or_else(|| line.tokens.last().map(|(c, t)| c + t.len()).unwrap_or(1));
        return Err(err(
            line.number,
            format!(
                "column {}: row has {} entries, ambient dimension is {}",
                col,
                line.tokens.len(),
                dim
            ),
        ));
    }
    line.tokens.iter().map(|(col, tok)| parse(line.number, *col, tok)).collect()
}

/// Parse an input file into a job.
pub fn parse_input(text: &str) -> Result<JobSpec> {
    parse_job(text, true)
}

/// Parse a file that only has to describe a cone, such as the comparison
/// target of an isomorphism check.  Goals are allowed but not required.
pub fn parse_cone_only(text: &str) -> Result<ConeInput> {
    parse_job(text, false).map(|job| job.input)
}

fn parse_job(text: &str, require_goal: bool) -> Result<JobSpec> {
    let lines = tokenize(text);
    let mut pos = 0usize;
    let mut amb: Option<usize> = None;
    let mut input = ConeInput::new(0);
    let mut goals: Vec<Goal> = Vec::new();
    let last_line = lines.last().map(|l| l.number).unwrap_or(1);

    let matrix_rows = |pos: &mut usize,
                           lines: &[Line],
                           m: usize,
                           dim: usize,
                           after: usize|
     -> Result<RatMat> {
        let mut rows = Vec::with_capacity(m);
        for _ in 0..m {
            let line = lines
                .get(*pos)
                .ok_or_else(|| err(after, format!("expected {} matrix rows", m)))?;
            rows.push(row_of(line, dim, parse_rat)?);
            *pos += 1;
        }
        Ok(if rows.is_empty() { RatMat::empty(0, dim) } else { RatMat::from_rows(rows) })
    };

    while pos < lines.len() {
        let line = &lines[pos];
        pos += 1;
        let keyword = line.tokens[0].1.as_str();
        let need_amb = |amb: &Option<usize>| -> Result<usize> {
            amb.ok_or_else(|| {
                err(line.number, format!("`{}` requires amb_space to be declared first", keyword))
            })
        };
        let sole_keyword = || -> Result<()> {
            if line.tokens.len() != 1 {
                let (col, ref tok) = line.tokens[1];
                return Err(err(
                    line.number,
                    format!("column {}: unexpected token `{}` after `{}`", col, tok, keyword),
                ));
            }
            Ok(())
        };
        match keyword {
            "amb_space" => {
                if amb.is_some() {
                    return Err(err(line.number, "duplicate amb_space declaration"));
                }
                let d = parse_count(line)?;
                if d == 0 {
                    return Err(err(line.number, "ambient dimension must be positive"));
                }
                amb = Some(d);
                input.amb_dim = d;
            }
            "cone" | "polytope" | "inequalities" => {
                let d = need_amb(&amb)?;
                let m = parse_count(line)?;
                let matrix = matrix_rows(&mut pos, &lines, m, d, line.number)?;
                let slot = match keyword {
                    "cone" => &mut input.generators,
                    "polytope" => &mut input.polytope_points,
                    _ => &mut input.inequalities,
                };
                if slot.is_some() {
                    return Err(err(line.number, format!("duplicate `{}` block", keyword)));
                }
                *slot = Some(matrix);
            }
            "grading" | "dehomogenization" => {
                let d = need_amb(&amb)?;
                sole_keyword()?;
                let row_line = lines
                    .get(pos)
                    .ok_or_else(|| err(line.number, format!("expected a row after `{}`", keyword)))?;
                let row = row_of(row_line, d, parse_int)?;
                pos += 1;
                let slot = if keyword == "grading" {
                    &mut input.grading
                } else {
                    &mut input.dehomogenization
                };
                if slot.is_some() {
                    return Err(err(line.number, format!("duplicate `{}` block", keyword)));
                }
                *slot = Some(row);
            }
            "Automorphisms" => {
                sole_keyword()?;
                goals.push(Goal::IntegralAutomorphisms);
            }
            "RationalAutomorphisms" => {
                sole_keyword()?;
                goals.push(Goal::RationalAutomorphisms);
            }
            "EuclideanAutomorphisms" => {
                sole_keyword()?;
                goals.push(Goal::EuclideanAutomorphisms);
            }
            "CombinatorialAutomorphisms" => {
                sole_keyword()?;
                goals.push(Goal::CombinatorialAutomorphisms);
            }
            "InputAutomorphisms" => {
                sole_keyword()?;
                goals.push(Goal::InputAutomorphisms);
            }
            "AmbientAutomorphisms" => {
                sole_keyword()?;
                goals.push(Goal::AmbientAutomorphisms);
            }
            "HilbertBasis" => {
                sole_keyword()?;
                goals.push(Goal::HilbertBasis);
            }
            "NormalForm" => {
                sole_keyword()?;
                goals.push(Goal::NormalForm);
            }
            "IsoCheck" => {
                if line.tokens.len() != 2 {
                    return Err(err(line.number, "`IsoCheck` expects exactly one path argument"));
                }
                goals.push(Goal::IsoCheck(line.tokens[1].1.clone()));
            }
            other => {
                return Err(err(
                    line.number,
                    format!("column {}: unknown keyword `{}`", line.tokens[0].0, other),
                ));
            }
        }
    }

    if amb.is_none() {
        return Err(err(last_line, "missing amb_space declaration"));
    }
    if require_goal && goals.is_empty() {
        return Err(err(last_line, "no computation goal given"));
    }
    Ok(JobSpec { input, goals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    #[test]
    fn cone_with_goal_parses() {
        let job = parse_input("amb_space 2\ncone 2\n0 1\n2 1\nHilbertBasis\n").unwrap();
        assert_eq!(job.input.amb_dim, 2);
        let gens = job.input.generators.unwrap();
        assert_eq!(gens.rows(), 2);
        assert_eq!(gens.row(1)[0], rat(2, 1));
        assert_eq!(job.goals, vec![Goal::HilbertBasis]);
    }

    #[test]
    fn polytope_with_rational_entries() {
        let job = parse_input(
            "amb_space 2\npolytope 3\n0 0\n1/2 0\n0 1/3\nEuclideanAutomorphisms\n",
        )
        .unwrap();
        let pts = job.input.polytope_points.unwrap();
        assert_eq!(pts.row(1)[0], rat(1, 2));
        assert_eq!(pts.row(2)[1], rat(1, 3));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored()  {
        let job = parse_input(
            "# a square\namb_space 2\n\ncone 2 # two generators\n1 0 # x axis\n0 1\n\nAutomorphisms\n",
        )
        .unwrap();
        assert_eq!(job.goals, vec![Goal::IntegralAutomorphisms]);
    }

    #[test]
    fn grading_and_dehomogenization_rows() {
        let job = parse_input(
            "amb_space 2\ncone 2\n1 0\n1 2\ngrading\n1 1\ndehomogenization\n0 1\nAutomorphisms\n",
        )
        .unwrap();
        assert_eq!(job.input.grading, Some(vec![int(1), int(1)]));
        assert_eq!(job.input.dehomogenization, Some(vec![int(0), int(1)]));
    }

    #[test]
    fn iso_check_carries_its_path() {
        let job = parse_input("amb_space 2\ncone 1\n1 0\nIsoCheck other.in\n").unwrap();
        assert_eq!(job.goals, vec![Goal::IsoCheck("other.in".into())]);
    }

    #[test]
    fn goal_order_is_declaration_order() {
        let job =
            parse_input("amb_space 2\ncone 1\n1 0\nHilbertBasis\nAutomorphisms\nNormalForm\n")
                .unwrap();
        assert_eq!(
            job.goals,
            vec![Goal::HilbertBasis, Goal::IntegralAutomorphisms, Goal::NormalForm]
        );
    }

    #[test]
    fn wrong_row_width_reports_line_and_column() {
        let e = parse_input("amb_space 2\ncone 1\n1 0 3\nAutomorphisms\n").unwrap_err();
        match e {
            Error::Parse { line, msg } => {
                assert_eq!(line, 3);
                assert!(msg.contains("column 5"), "{}", msg);
                assert!(msg.contains("3 entries"), "{}", msg);
            }
            other => panic!("unexpected error {:?}", other),
        }
    }

    #[test]
    fn malformed_number_reports_position() {
        let e = parse_input("amb_space 2\ncone 1\n1 x\nAutomorphisms\n").unwrap_err();
        match e {
            Error::Parse { line, msg } => {
                assert_eq!(line, 3);
                assert!(msg.contains("column 3"), "{}", msg);
            }
            other => panic!("unexpected error {:?}", other),
        }
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let e = parse_input("amb_space 1\ncone 1\n1/0\nAutomorphisms\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn unknown_keyword_is_rejected() {
        let e = parse_input("amb_space 2\nfacets 1\n1 0\n").unwrap_err();
        match e {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("unknown keyword `facets`"), "{}", msg);
            }
            other => panic!("unexpected error {:?}", other),
        }
    }

    #[test]
    fn structural_mistakes_are_rejected() {
        assert!(matches!(
            parse_input("cone 1\n1 0\nAutomorphisms\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_input("amb_space 2\ncone 2\n1 0\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_input("amb_space 2\ncone 1\n1 0\ncone 1\n0 1\nAutomorphisms\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(
            parse_input("amb_space 2\ncone 1\n1 0\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_input("amb_space 2\ngrading 1\n1 1\nAutomorphisms\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_input("amb_space 0\ncone 1\n1\nAutomorphisms\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn grading_entries_must_be_integers() {
        let e = parse_input("amb_space 2\ncone 1\n1 0\ngrading\n1 1/2\nAutomorphisms\n")
            .unwrap_err();
        match e {
            Error::Parse { line, msg } => {
                assert_eq!(line, 5);
                assert!(msg.contains("expected an integer"), "{}", msg);
            }
            other => panic!("unexpected error {:?}", other),
        }
    }
}
