use quintic_lines::arrangement::conflict_graph;
use quintic_lines::linalg::{cokernel_torsion, CokernelOrder};
use quintic_lines::multiplicity::{incidence_multiplicity, multiplicity, planes_of, tuple_cech_matrix};
use quintic_lines::polytope::{induced_subdivision, Face, HeightFunction};
use quintic_lines::search::check_tropical_axioms;
use quintic_lines::tropical::{build_curve_set, EdgeKind, QuinticCurveSet};
use quintic_lines::{Heights, Rat, Scalar};
use serde::Serialize;

use crate::census::{run_census, Census};
use crate::config::{Provenance, RunConfig};

/// Weighted line count of a generic facet.
pub const FACET_WEIGHTED: u64 = 575;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerifyReport {
    #[serde(flatten)]
    pub provenance: Provenance,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    /// Reported, not gated.
    pub informational: Vec<Check>,
    pub passed: bool,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

fn first_failure<T: std::fmt::Debug>(bad: &[T], total: usize) -> String {
    match bad.first() {
        None => format!("{total}/{total} ok"),
        Some(b) => format!("{} of {total} fail, first {b:?}", bad.len()),
    }
}

fn curve_structure(curves: &QuinticCurveSet<Rat>) -> Check {
    let bad: Vec<(usize, usize)> = curves
        .instances()
        .iter()
        .filter(|c| {
            let internal = c.curve.edges.iter().filter(|e| e.kind == EdgeKind::Internal).count();
            c.curve.vertices.len() != 25 || c.curve.edges.len() != 45 || internal != 30
        })
        .map(|c| (c.facet, c.leg))
        .collect();
    check("curve_structure", bad.is_empty(), format!("25 vertices, 30 + 15 edges: {}", first_failure(&bad, 20)))
}

fn face_pairing(curves: &QuinticCurveSet<Rat>) -> Check {
    let bad: Vec<(usize, usize)> = curves
        .instances()
        .iter()
        .filter(|c| {
            let face = curves.face_curve(&c.face).expect("curve of a 2-face");
            let mut mine: Vec<[Rat; 2]> = c.curve.vertices.iter().map(|v| c.to_face_point(&v.position)).collect();
            let mut theirs: Vec<[Rat; 2]> = face.vertices.iter().map(|v| v.position.clone()).collect();
            mine.sort();
            theirs.sort();
            mine != theirs
        })
        .map(|c| (c.facet, c.leg))
        .collect();
    check(
        "face_pairing",
        bad.is_empty(),
        format!("instances agree with their 2-face curve: {}", first_failure(&bad, 20)),
    )
}

fn facet_triangulations(h: &Heights, name: &str) -> Check {
    let mut bad = Vec::new();
    for i in 1..=5 {
        let face = Face::facet(i).expect("facet");
        if let Err(e) = induced_subdivision(h, &face).and_then(|s| s.require_unimodular()) {
            bad.push(format!("facet {i}: {e}"));
        }
    }
    check(name, bad.is_empty(), bad.first().cloned().unwrap_or_else(|| "5/5 unimodular".into()))
}

fn census_checks(census: &Census, config: &RunConfig, checks: &mut Vec<Check>, info: &mut Vec<Check>) {
    let s = &census.summary;
    let per_facet: Vec<(usize, u64)> = s.facets.iter().map(|f| (f.facet, f.weighted)).collect();
    let all = config.facets.len() == 5;
    let weighted_ok =
        per_facet.iter().all(|&(_, w)| w == FACET_WEIGHTED) && (!all || s.weighted_total == 5 * FACET_WEIGHTED);
    checks.push(check("weighted_count", weighted_ok, format!("per facet {per_facet:?}, total {}", s.weighted_total)));
    let ties: Vec<(usize, u64)> = s.facets.iter().map(|f| (f.facet, f.ties)).collect();
    checks.push(check("genericity", s.generic, format!("ties per facet {ties:?}")));
    let unaccounted: Vec<usize> =
        s.facets.iter().filter(|f| f.classified != f.expected_classified).map(|f| f.facet).collect();
    checks.push(check(
        "search_accounting",
        unaccounted.is_empty(),
        format!("every (tuple, type) pair classified: {}", first_failure(&unaccounted, s.facets.len())),
    ));

    let n = census.lines.len();
    let axioms: Vec<usize> = (0..n).filter(|&i| !check_tropical_axioms(&census.lines[i]).passed()).collect();
    checks.push(check("axioms", axioms.is_empty(), first_failure(&axioms, n)));
    let mut singular = Vec::new();
    let mut mismatch = Vec::new();
    for (i, l) in census.lines.iter().enumerate() {
        let det = incidence_multiplicity(l);
        match multiplicity(l, &planes_of(l)) {
            Ok(m) if det.bits() != 0 => {
                if det != m.value.into() {
                    mismatch.push(i);
                }
            }
            _ => singular.push(i),
        }
    }
    checks.push(check("rigidity", singular.is_empty(), first_failure(&singular, n)));
    checks.push(check(
        "multiplicity_oracle",
        mismatch.is_empty(),
        format!("|det| = cokernel torsion: {}", first_failure(&mismatch, n)),
    ));
    let odd: Vec<usize> = (0..n).filter(|&i| !(1..=2).contains(&census.records[i].mult)).collect();
    checks.push(check(
        "multiplicity_values",
        odd.is_empty(),
        format!("multiplicities in {{1, 2}}: {}", first_failure(&odd, n)),
    ));
    let samples: Vec<_> = census.runs.iter().flat_map(|r| r.family_samples.iter().copied()).collect();
    let nonsingular: Vec<_> = samples
        .iter()
        .filter(|(ty, tuple)| {
            !matches!(
                tuple_cech_matrix(tuple, *ty, &census.curves).map(|m| cokernel_torsion(&m)),
                Ok(CokernelOrder::Infinite { .. })
            )
        })
        .collect();
    checks.push(check("family_cech_singular", nonsingular.is_empty(), first_failure(&nonsingular, samples.len())));
    let round_trip: Vec<usize> =
        (0..n).filter(|&i| census.records[i].line::<Rat>().ok().as_ref() != Some(&census.lines[i])).collect();
    checks.push(check("record_round_trip", round_trip.is_empty(), first_failure(&round_trip, n)));

    let g = conflict_graph(&census.lines, &census.curves);
    let isolated = g.isolated();
    checks.push(check(
        "no_isolated_lines",
        isolated.is_empty(),
        format!("{} lines, {} edges, isolated {:?}", n, g.edge_count(), isolated),
    ));

    info.push(check(
        "multiplicity_split",
        s.mult_counts.get(&1) == Some(&2695) && s.mult_counts.get(&2) == Some(&90),
        format!("{:?} (reference 1: 2695, 2: 90)", s.mult_counts),
    ));
    info.push(check(
        "admissible",
        true,
        format!(
            "{} admissible, by multiplicity {:?} (reference 1451 with 45 of multiplicity 2)",
            s.admissible, s.admissible_mult_counts
        ),
    ));
}

/// Runs the invariant suite on `h`; the census-level part only with
/// `config.full`.
pub fn verify(config: &RunConfig, h: Heights) -> anyhow::Result<VerifyReport> {
    let mut checks = Vec::new();
    let mut info = Vec::new();
    let negative = h.values().iter().filter(|v| **v < Rat::from_i64(0)).count();
    checks.push(check("heights_nonnegative", negative == 0, format!("{negative} negative of {}", h.values().len())));
    checks.push(facet_triangulations(&HeightFunction::symmetric(), "symmetric_facets_unimodular"));
    checks.push(facet_triangulations(&h, "facets_unimodular"));
    match build_curve_set(&h) {
        Err(e) => checks.push(check("curves", false, e.to_string())),
        Ok(curves) => {
            checks.push(check("curves", true, "every 2-face triangulation is unimodular"));
            checks.push(curve_structure(&curves));
            checks.push(face_pairing(&curves));
            if config.full {
                let census = run_census(config, h.clone())?;
                census_checks(&census, config, &mut checks, &mut info);
            }
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { provenance: Provenance::of(&h), config: config.clone(), checks, informational: info, passed })
}
