mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{cofactor_det, curves, facet, to_i64, toy_line};
use quintic_lines::linalg::{solve_rational, LinearSolution, Matrix};
use quintic_lines::multiplicity::{incidence_matrix, incidence_multiplicity};
use quintic_lines::search::{
    check_tropical_axioms, enumerate_facet, solve_line, CombinatorialType, ConstraintTuple, LineOutcome, CURVE_EDGES,
};
use quintic_lines::tropical::FacetFrame;
use quintic_lines::{Rat, Scalar};
use rand::{Rng, SeedableRng};

const TUPLES: u64 = (CURVE_EDGES as u64).pow(4);

fn key(line: &quintic_lines::search::TropicalLine<Rat>) -> (CombinatorialType, ConstraintTuple) {
    (line.ctype, line.tuple())
}

#[test]
fn toy_line_is_the_unique_solution_of_its_system() {
    let line = toy_line();
    let m = to_i64(&incidence_matrix(&line));
    assert_eq!(cofactor_det(&m).abs(), 1);
    let rhs: Vec<Rat> = (0..4)
        .map(|j| {
            let d = line.legs[j].direction;
            let l = &line.legs[j].landing;
            Rat::from_i64(-d[1]) * &l[0] + Rat::from_i64(d[0]) * &l[1]
        })
        .collect();
    let a = Matrix::from_rows(m.iter().map(|r| r.iter().map(|&x| Rat::from_i64(x)).collect()).collect(), 4);
    let LinearSolution::Unique(z) = solve_rational(&a, &rhs) else { panic!("not unique") };
    assert_eq!(z, [0, 0, 0, 1].map(Rat::from_i64).to_vec());
    assert!(check_tropical_axioms(&line).passed());
    for (j, leg) in line.legs.iter().enumerate() {
        assert_eq!(leg.landing, FacetFrame::project(j, line.vertex_of_leg(j)));
    }

    // The same planes admit no line of another type with t > 0.
    for ctype in [CombinatorialType::T13x24, CombinatorialType::T14x23] {
        let mut other = toy_line();
        other.ctype = ctype;
        let m: Vec<Vec<Rat>> =
            to_i64(&incidence_matrix(&other)).iter().map(|r| r.iter().map(|&x| Rat::from_i64(x)).collect()).collect();
        if let LinearSolution::Unique(z) = solve_rational(&Matrix::from_rows(m, 4), &rhs) {
            assert!(z[3] <= Rat::from_i64(0), "{ctype}: t = {}", z[3]);
        }
    }
}

#[test]
fn solver_agrees_with_enumerator_on_random_tuples() {
    let (set, census) = facet(1, 2);
    let found: BTreeMap<_, _> = census.lines.iter().map(|l| (key(l), l)).collect();
    for line in &census.lines {
        match solve_line(&line.tuple(), line.ctype, &set) {
            LineOutcome::Line(l) => assert_eq!(&l, line),
            other => panic!("{:?}: {other:?}", key(line)),
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut valid = 0;
    for _ in 0..20_000 {
        let ctype = CombinatorialType::ALL[rng.gen_range(0..3)];
        let tuple = ConstraintTuple { facet: 2, edges: [0; 4].map(|_| rng.gen_range(0..CURVE_EDGES)) };
        if let LineOutcome::Line(l) = solve_line(&tuple, ctype, &set) {
            if l.is_valid() {
                valid += 1;
                let same_geometry = census.lines.iter().any(|c| (&c.v1, &c.v2, c.ctype) == (&l.v1, &l.v2, l.ctype));
                assert!(
                    found.get(&(ctype, tuple)) == Some(&&l) || (census.collisions > 0 && same_geometry),
                    "{ctype} {tuple:?}"
                );
            }
        }
    }
    assert!(valid > 0);
}

#[test]
fn census_of_one_facet_is_consistent() {
    let (_, census) = facet(1, 1);
    assert!(census.is_generic());
    assert_eq!(census.accounting.len(), 3);
    for a in &census.accounting {
        assert_eq!(a.total(), TUPLES, "{}", a.ctype);
        assert_eq!(a.ties, 0);
    }
    let produced: u64 = census.accounting.iter().map(|a| a.lines).sum();
    assert_eq!(produced as usize, census.lines.len() + census.collisions);
    let distinct: BTreeSet<_> = census.lines.iter().map(|l| (l.v1.clone(), l.v2.clone(), l.ctype)).collect();
    assert_eq!(distinct.len(), census.lines.len());
    for pair in census.lines.windows(2) {
        assert!((&pair[0].v1, &pair[0].v2, pair[0].ctype) < (&pair[1].v1, &pair[1].v2, pair[1].ctype));
    }
    for line in &census.lines {
        assert!(line.is_valid());
        assert!(line.t > Rat::from_i64(0));
        assert!(check_tropical_axioms(line).passed());
        assert_ne!(cofactor_det(&to_i64(&incidence_matrix(line))), 0);
    }
}

#[test]
fn enumeration_does_not_depend_on_thread_count() {
    let set = curves(2);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| enumerate_facet(3, &set).unwrap())
    };
    let (a, b) = (run(1), run(3));
    assert_eq!(a.lines, b.lines);
    assert_eq!(a.accounting, b.accounting);
    assert_eq!(a.family_samples, b.family_samples);
    assert_eq!(a.collisions, b.collisions);
}

#[test]
fn every_facet_has_weighted_count_575() {
    let set = curves(1);
    for f in 1..=5 {
        let census = enumerate_facet(f, &set).unwrap();
        let weighted: u64 = census.lines.iter().map(|l| u64::try_from(incidence_multiplicity(l)).unwrap()).sum();
        assert_eq!(weighted, 575, "facet {f}");
    }
}
