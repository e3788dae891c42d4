//! Plain-text reports for computation goals.
//!
//! An automorphism report names the flavor and the group order, states
//! whether integrality of the generators was verified, and then lists the
//! generating permutations, their cycle decompositions and the orbits.  When
//! the reduction also yields the induced action on the support hyperplanes,
//! a second block reports it with the generators in the same order, so the
//! i-th permutation of both blocks belongs to the same transformation.  All
//! indices in reports are 1-based.

use std::fmt::Write as _;

use crate::cone::Cone;
use crate::engines::{
    ambient_automorphisms, combinatorial_automorphisms, euclidean_automorphisms,
    input_automorphisms, integral_automorphisms, rational_automorphisms, AutoResult, Flavor,
};
use crate::error::Result;
use crate::hilbert::hilbert_basis;
use crate::io::{parse_cone_only, Goal, JobSpec};
use crate::linalg::{Int, IntMat};
use crate::normal_form::{canonical_type, is_isomorphic, TypeLevel};
use crate::perm::{Permutation, PermutationGroup};

const SEPARATOR: &str =
    "************************************************************************";

fn int_row(row: &[Int]) -> String {
    row.iter().map(Int::to_string).collect::<Vec<_>>().join(" ")
}

fn one_based(indices: &[usize]) -> String {
    indices.iter().map(|&i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")
}

/// The permutation listing of one block: the generators, their cycle
/// decompositions (cycles of length one are suppressed) and the orbits of
/// the generated group.
fn permutation_block(
    out: &mut String,
    perms: &[Permutation],
    group: &PermutationGroup,
    label: &str,
) {
    writeln!(out, "{} permutations of {} {}", perms.len(), group.degree(), label).unwrap();
    writeln!(out).unwrap();
    for (i, p) in perms.iter().enumerate() {
        writeln!(out, "Perm {}: {}", i + 1, one_based(p.images())).unwrap();
    }
    writeln!(out).unwrap();
    // the trailing space is part of the report format
    writeln!(out, "Cycle decompositions ").unwrap();
    writeln!(out).unwrap();
    for (i, p) in perms.iter().enumerate() {
        let cycles: Vec<String> =
            p.cycles().iter().map(|c| format!("({})", one_based(c))).collect();
        if cycles.is_empty() {
            writeln!(out, "Perm {}: --", i + 1).unwrap();
        } else {
            writeln!(out, "Perm {}: {} --", i + 1, cycles.join(" ")).unwrap();
        }
    }
    writeln!(out).unwrap();
    let orbits = group.orbits();
    writeln!(out, "{} orbits of {}", orbits.len(), label).unwrap();
    writeln!(out).unwrap();
    for (k, orbit) in orbits.iter().enumerate() {
        writeln!(out, "Orbit {} , length {}:  {}", k + 1, orbit.len(), one_based(orbit)).unwrap();
    }
}

/// Render a computed automorphism group.
pub fn automorphism_report(result: &AutoResult) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{} automorphism group of order {}",
        result.flavor.label(),
        result.group.order()
    )
    .unwrap();
    writeln!(
        out,
        "{}",
        if result.integrality_verified { "Integrality verified" } else { "Integrality not known" }
    )
    .unwrap();
    writeln!(out, "{}", SEPARATOR).unwrap();
    // when the generators come in (object, hyperplane) pairs, print the
    // object halves so the two blocks stay in step; the generated group is
    // the same either way
    let primal: Vec<Permutation> = if result.paired_generators.is_empty() {
        result.group.generators().to_vec()
    } else {
        result.paired_generators.iter().map(|(p, _)| p.clone()).collect()
    };
    permutation_block(&mut out, &primal, &result.group, result.object.label());
    if let Some((dual_object, dual_group)) = &result.dual {
        let duals: Vec<Permutation> =
            result.paired_generators.iter().map(|(_, q)| q.clone()).collect();
        writeln!(out).unwrap();
        writeln!(out, "{}", SEPARATOR).unwrap();
        permutation_block(&mut out, &duals, dual_group, dual_object.label());
    }
    out
}

/// Render a Hilbert basis in working coordinates.
pub fn hilbert_basis_report(basis: &IntMat) -> String {
    let mut out = String::new();
    writeln!(out, "{} Hilbert basis elements:", basis.rows()).unwrap();
    for row in basis.iter_rows() {
        writeln!(out, "{}", int_row(row)).unwrap();
    }
    out
}

/// Render the outcome of an isomorphism check.
pub fn isomorphism_report(witness: Option<&IntMat>) -> String {
    match witness {
        None => "isomorphic: false\n".to_string(),
        Some(m) => {
            let mut out = String::from("isomorphic: true\nwitness:\n");
            for row in m.iter_rows() {
                writeln!(out, "{}", int_row(row)).unwrap();
            }
            out
        }
    }
}

/// The rendered report of a whole job and the number of goals that failed.
pub struct JobOutcome {
    pub text: String,
    pub failed_goals: usize,
}

/// Run every goal of a job in declaration order and collect the report.
///
/// A failing goal contributes an error paragraph, and the remaining goals
/// still run.  The cone is built once, lazily: goals that act on the raw
/// input do not require the construction to succeed.  `load_iso_target`
/// maps the path argument of an `IsoCheck` goal to the text of the
/// referenced file.
pub fn run_job(job: &JobSpec, load_iso_target: impl Fn(&str) -> Result<String>) -> JobOutcome {
    let needs_cone = job
        .goals
        .iter()
        .any(|goal| !matches!(goal, Goal::InputAutomorphisms | Goal::AmbientAutomorphisms));
    let cone: Option<Result<Cone>> = if needs_cone { Some(Cone::from_input(&job.input)) } else { None };
    let get_cone = || -> Result<&Cone> {
        match cone.as_ref().expect("cone construction was requested") {
            Ok(c) => Ok(c),
            Err(e) => Err(e.clone()),
        }
    };

    let mut sections: Vec<String> = Vec::new();
    let mut failed_goals = 0usize;
    for goal in &job.goals {
        let (prefix, outcome): (String, Result<String>) = match goal {
            Goal::IntegralAutomorphisms
            | Goal::RationalAutomorphisms
            | Goal::EuclideanAutomorphisms
            | Goal::CombinatorialAutomorphisms
            | Goal::InputAutomorphisms
            | Goal::AmbientAutomorphisms => {
                let (flavor, run): (Flavor, Result<AutoResult>) = match goal {
                    Goal::IntegralAutomorphisms => {
                        (Flavor::Integral, get_cone().and_then(integral_automorphisms))
                    }
                    Goal::RationalAutomorphisms => {
                        (Flavor::Rational, get_cone().and_then(rational_automorphisms))
                    }
                    Goal::EuclideanAutomorphisms => {
                        (Flavor::Euclidean, get_cone().and_then(euclidean_automorphisms))
                    }
                    Goal::CombinatorialAutomorphisms => {
                        (Flavor::Combinatorial, get_cone().and_then(combinatorial_automorphisms))
                    }
                    Goal::InputAutomorphisms => {
                        (Flavor::Input, input_automorphisms(&job.input))
                    }
                    Goal::AmbientAutomorphisms => {
                        (Flavor::Ambient, ambient_automorphisms(&job.input))
                    }
                    _ => unreachable!(),
                };
                (
                    format!("{} automorphism group", flavor.label()),
                    run.map(|r| automorphism_report(&r)),
                )
            }
            Goal::HilbertBasis => (
                "Hilbert basis".to_string(),
                get_cone().and_then(hilbert_basis).map(|b| hilbert_basis_report(&b)),
            ),
            Goal::NormalForm => (
                "canonical type".to_string(),
                get_cone().and_then(|c| canonical_type(c, TypeLevel::Full)).map(|t| t.to_text()),
            ),
            Goal::IsoCheck(path) => (
                "isomorphism check".to_string(),
                (|| {
                    let text = load_iso_target(path)?;
                    let other = Cone::from_input(&parse_cone_only(&text)?)?;
                    let witness = is_isomorphic(get_cone()?, &other)?;
                    Ok(isomorphism_report(witness.as_ref()))
                })(),
            ),
        };
        match outcome {
            Ok(text) => sections.push(text),
            Err(e) => {
                failed_goals += 1;
                sections.push(format!("{}: error: {}\n", prefix, e));
            }
        }
    }
    JobOutcome { text: sections.join("\n"), failed_goals }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::ConeInput;
    use crate::engines::{Method, ObjectKind};
    use crate::io::parse_input;
    use crate::linalg::int;

    fn quadrant_job(goals: &str) -> JobSpec {
        parse_input(&format!("amb_space 2\ncone 2\n0 1\n1 0\n{}", goals)).unwrap()
    }

    fn no_iso(_: &str) -> Result<String> {
        panic!("no isomorphism target expected")
    }

    // frozen report texts are written as line arrays because the cycle
    // decomposition header ends in a significant trailing space
    fn lines(parts: &[&str]) -> String {
        let mut s = parts.join("\n");
        s.push('\n');
        s
    }

    #[test]
    fn quadrant_integral_report_is_frozen() {
        let cone = Cone::from_input(&quadrant_job("Automorphisms\n").input).unwrap();
        let report = automorphism_report(&integral_automorphisms(&cone).unwrap());
        let expected = lines(&[
            "Integral automorphism group of order 2",
            "Integrality verified",
            SEPARATOR,
            "1 permutations of 2 extreme rays of cone",
            "",
            "Perm 1: 2 1",
            "",
            "Cycle decompositions ",
            "",
            "Perm 1: (1 2) --",
            "",
            "1 orbits of extreme rays of cone",
            "",
            "Orbit 1 , length 2:  1 2",
            "",
            SEPARATOR,
            "1 permutations of 2 support hyperplanes",
            "",
            "Perm 1: 2 1",
            "",
            "Cycle decompositions ",
            "",
            "Perm 1: (1 2) --",
            "",
            "1 orbits of support hyperplanes",
            "",
            "Orbit 1 , length 2:  1 2",
        ]);
        assert_eq!(report, expected);
    }

    #[test]
    fn separator_is_72_asterisks() {
        assert_eq!(SEPARATOR.len(), 72);
        assert!(SEPARATOR.bytes().all(|b| b == b'*'));
    }

    #[test]
    fn trivial_group_report_keeps_the_structural_blank_lines() {
        let result = AutoResult {
            flavor: Flavor::Euclidean,
            method: Method::SquaredDistances,
            object: ObjectKind::Vertices,
            group: PermutationGroup::new(2, Vec::new()),
            dual: None,
            paired_generators: Vec::new(),
            integrality_verified: false,
        };
        let expected = lines(&[
            "Euclidean automorphism group of order 1",
            "Integrality not known",
            SEPARATOR,
            "0 permutations of 2 vertices of polyhedron",
            "",
            "",
            "Cycle decompositions ",
            "",
            "",
            "2 orbits of vertices of polyhedron",
            "",
            "Orbit 1 , length 1:  1",
            "Orbit 2 , length 1:  2",
        ]);
        assert_eq!(automorphism_report(&result), expected);
    }

    #[test]
    fn identity_generator_prints_a_bare_dash_line() {
        let result = AutoResult {
            flavor: Flavor::Input,
            method: Method::InputMatrix,
            object: ObjectKind::InputVectors,
            group: PermutationGroup::new(3, Vec::new()),
            dual: None,
            paired_generators: vec![(
                Permutation::identity(3),
                Permutation::identity(0),
            )],
            integrality_verified: false,
        };
        let report = automorphism_report(&result);
        assert!(report.contains("Perm 1: 1 2 3\n"));
        assert!(report.contains("Perm 1: --\n"));
    }

    #[test]
    fn hilbert_basis_rows_are_listed() {
        let m = IntMat::from_rows(vec![
            vec![int(0), int(1)],
            vec![int(1), int(1)],
            vec![int(2), int(1)],
        ]);
        assert_eq!(hilbert_basis_report(&m), "3 Hilbert basis elements:\n0 1\n1 1\n2 1\n");
    }

    #[test]
    fn isomorphism_outcomes_are_frozen() {
        assert_eq!(isomorphism_report(None), "isomorphic: false\n");
        let w = IntMat::from_rows(vec![vec![int(1), int(0)], vec![int(1), int(1)]]);
        assert_eq!(isomorphism_report(Some(&w)), "isomorphic: true\nwitness:\n1 0\n1 1\n");
        assert_eq!(isomorphism_report(Some(&IntMat::empty(0, 0))), "isomorphic: true\nwitness:\n");
    }

    #[test]
    fn goals_run_in_declaration_order_and_are_blank_line_separated() {
        let outcome = run_job(&quadrant_job("HilbertBasis\nNormalForm\n"), no_iso);
        assert_eq!(outcome.failed_goals, 0);
        let hb = "2 Hilbert basis elements:\n0 1\n1 0\n";
        assert!(outcome.text.starts_with(hb));
        let rest = &outcome.text[hb.len()..];
        assert!(rest.starts_with("\ncanonical type 2 2 0\n"));
        assert!(outcome.text.ends_with('\n'));
        assert!(!outcome.text.ends_with("\n\n"));
    }

    #[test]
    fn failing_goal_reports_an_error_and_later_goals_still_run() {
        // the quadrant is not a polyhedron, so the euclidean flavor errors out
        let outcome = run_job(&quadrant_job("EuclideanAutomorphisms\nHilbertBasis\n"), no_iso);
        assert_eq!(outcome.failed_goals, 1);
        assert!(outcome.text.starts_with(
            "Euclidean automorphism group: error: no dehomogenization present; \
             input does not define a polyhedron\n"
        ));
        assert!(outcome.text.contains("2 Hilbert basis elements:"));
    }

    #[test]
    fn input_goals_do_not_need_a_buildable_cone() {
        // a grading that is negative on a generator breaks cone
        // construction but leaves the raw input goals meaningful
        let job = parse_input(
            "amb_space 2\ncone 2\n0 1\n1 0\ngrading\n1 -1\nInputAutomorphisms\nHilbertBasis\n",
        )
        .unwrap();
        let outcome = run_job(&job, no_iso);
        assert_eq!(outcome.failed_goals, 1);
        assert!(outcome.text.starts_with("Input automorphism group of order"));
        assert!(outcome.text.contains("Hilbert basis: error:"));
    }

    #[test]
    fn iso_check_loads_the_target_through_the_callback() {
        let job = quadrant_job("IsoCheck other.in\n");
        let outcome = run_job(&job, |path| {
            assert_eq!(path, "other.in");
            Ok("amb_space 2\ncone 2\n1 0\n1 1\n".to_string())
        });
        assert_eq!(outcome.failed_goals, 0);
        assert!(outcome.text.starts_with("isomorphic: true\nwitness:\n"));
    }

    #[test]
    fn iso_check_with_unreadable_target_is_a_goal_error() {
        let job = quadrant_job("IsoCheck missing.in\nHilbertBasis\n");
        let outcome =
            run_job(&job, |path| Err(crate::error::Error::Io(format!("cannot read {}", path))));
        assert_eq!(outcome.failed_goals, 1);
        assert!(outcome
            .text
            .starts_with("isomorphism check: error: io error: cannot read missing.in\n"));
        assert!(outcome.text.contains("2 Hilbert basis elements:"));
    }

    #[test]
    fn duplicate_goals_run_twice() {
        let outcome = run_job(&quadrant_job("HilbertBasis\nHilbertBasis\n"), no_iso);
        assert_eq!(outcome.failed_goals, 0);
        assert_eq!(outcome.text.matches("2 Hilbert basis elements:").count(), 2);
    }

    #[test]
    fn ambient_goal_skips_cone_construction_entirely() {
        let job = parse_input("amb_space 2\ncone 2\n0 1\n1 0\nAmbientAutomorphisms\n").unwrap();
        let outcome = run_job(&job, no_iso);
        assert_eq!(outcome.failed_goals, 0);
        assert!(outcome.text.starts_with("Ambient automorphism group of order 2"));
        assert!(outcome.text.contains("permutations of 2 coordinates"));
    }

    #[test]
    fn unbuildable_input_still_reports_every_cone_goal() {
        let mut input = ConeInput::new(2);
        input.generators = Some(crate::linalg::RatMat::from_rows(vec![vec![
            crate::linalg::rat(1, 1),
            crate::linalg::rat(0, 1),
        ]]));
        input.grading = Some(vec![int(-1), int(0)]);
        let job = JobSpec {
            input,
            goals: vec![Goal::IntegralAutomorphisms, Goal::NormalForm],
        };
        let outcome = run_job(&job, no_iso);
        assert_eq!(outcome.failed_goals, 2);
        assert!(outcome.text.starts_with("Integral automorphism group: error:"));
        assert!(outcome.text.contains("\ncanonical type: error:"));
    }
}
