mod common;

use common::{cofactor_det, facet, to_i64, toy_line};
use num_bigint::BigInt;
use proptest::prelude::*;
use quintic_lines::linalg::{cokernel_torsion, smith_normal_form, CokernelOrder, IntMatrix};
use quintic_lines::multiplicity::{
    build_cech_matrix, cech_matrix, incidence_matrix, incidence_multiplicity, is_unimodular_matrix, multiplicity,
    planes_of, tuple_cech_matrix, CechLeg, Topology,
};
use quintic_lines::search::TropicalLine;
use quintic_lines::Rat;
use rand::{Rng, SeedableRng};

/// Multiplicity of the toy line, from its 4x4 incidence determinant.
const TOY_MULTIPLICITY: i128 = 1;

fn torsion(m: &IntMatrix) -> Option<BigInt> {
    match cokernel_torsion(m) {
        CokernelOrder::Finite(n) => Some(n),
        CokernelOrder::Infinite { .. } => None,
    }
}

fn legs_of(line: &TropicalLine<Rat>) -> [CechLeg; 4] {
    let planes = planes_of(line);
    [0, 1, 2, 3].map(|j| CechLeg { at_second: line.ctype.at_second(j), plane: planes[j].clone() })
}

fn delta_of(line: &TropicalLine<Rat>) -> Vec<BigInt> {
    line.ctype.bounded_direction().iter().map(|&x| BigInt::from(x)).collect()
}

// Product of random elementary integer matrices and a signed permutation.
fn random_unimodular(rng: &mut impl Rng) -> IntMatrix {
    let mut m = IntMatrix::identity(3);
    for _ in 0..6 {
        let (a, b) = (rng.gen_range(0..3), rng.gen_range(0..3));
        if a != b {
            let k = BigInt::from(rng.gen_range(-3i64..=3));
            m.add_row_multiple(a, b, &k);
        }
    }
    if rng.gen_bool(0.5) {
        m.swap_rows(0, 2);
    }
    if rng.gen_bool(0.5) {
        for k in 0..3 {
            m[(1, k)] = -&m[(1, k)];
        }
    }
    m
}

#[test]
fn toy_line_golden_multiplicity() {
    let line = toy_line();
    let det = cofactor_det(&to_i64(&incidence_matrix(&line)));
    assert_eq!(det.abs(), TOY_MULTIPLICITY);
    let cech = build_cech_matrix(&line, &planes_of(&line)).unwrap();
    assert_eq!(cech.rows(), 10);
    assert_eq!(cofactor_det(&to_i64(&cech)).abs(), TOY_MULTIPLICITY);
    let m = multiplicity(&line, &planes_of(&line)).unwrap();
    assert_eq!(i128::from(m.value), TOY_MULTIPLICITY);
    assert_eq!(m.topology, Topology::S3);
}

#[test]
fn census_lines_have_matching_multiplicities() {
    let (set, census) = facet(1, 4);
    let mut seen = [0usize; 3];
    for line in &census.lines {
        let det = cofactor_det(&to_i64(&incidence_matrix(line))).abs();
        let cech = build_cech_matrix(line, &planes_of(line)).unwrap();
        let snf = smith_normal_form(&cech);
        assert_eq!(snf.rank(), 10);
        let order: BigInt = snf.diag.iter().product();
        assert_eq!(order, BigInt::from(det));
        assert_eq!(cofactor_det(&to_i64(&cech)).abs(), det);
        assert_eq!(incidence_multiplicity(line), BigInt::from(det));
        assert_eq!(tuple_cech_matrix(&line.tuple(), line.ctype, &set).unwrap(), cech);
        assert!(det == 1 || det == 2, "multiplicity {det}");
        seen[det as usize] += 1;
    }
    assert!(seen[1] > 0);
}

#[test]
fn family_tuples_have_singular_cech_matrices() {
    let (set, census) = facet(1, 1);
    assert!(!census.family_samples.is_empty());
    for (ctype, tuple) in &census.family_samples {
        let m = tuple_cech_matrix(tuple, *ctype, &set).unwrap();
        assert_eq!(torsion(&m), None, "{ctype} {tuple:?}");
        assert_eq!(cofactor_det(&to_i64(&m)), 0);
    }
}

#[test]
fn multiplicity_is_invariant_under_integral_change_of_basis() {
    let (_, census) = facet(1, 5);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    let step = (census.lines.len() / 40).max(1);
    let sample =
        census.lines.iter().enumerate().filter(|(i, l)| i % step == 0 || incidence_multiplicity(l) == BigInt::from(2));
    let mut doubled = 0;
    for (_, line) in sample {
        let base = torsion(&cech_matrix(&delta_of(line), &legs_of(line), [1; 5]).unwrap()).unwrap();
        for _ in 0..20 {
            let g = random_unimodular(&mut rng);
            assert!(is_unimodular_matrix(&g));
            let delta = g.mul_vec(&delta_of(line));
            let legs = legs_of(line).map(|l| CechLeg { at_second: l.at_second, plane: l.plane.transformed(&g) });
            assert_eq!(torsion(&cech_matrix(&delta, &legs, [1; 5]).unwrap()).as_ref(), Some(&base));
        }
        if base == BigInt::from(2) {
            doubled += 1;
        }
    }
    assert!(doubled > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // Overlap signs, the order of the two legs at a vertex and which vertex
    // is called first do not change the multiplicity.
    #[test]
    fn cover_conventions_do_not_matter(idx in 0usize..10_000, signs in prop::array::uniform5(prop::bool::ANY), swap in prop::array::uniform2(prop::bool::ANY), flip in prop::bool::ANY) {
        let (_, census) = cached();
        let line = &census.lines[idx % census.lines.len()];
        let base = torsion(&cech_matrix(&delta_of(line), &legs_of(line), [1; 5]).unwrap());
        let signs = signs.map(|s| if s { -1 } else { 1 });
        prop_assert_eq!(&torsion(&cech_matrix(&delta_of(line), &legs_of(line), signs).unwrap()), &base);

        let mut legs = legs_of(line).to_vec();
        let (p, q) = line.ctype.pairs();
        if swap[0] {
            legs.swap(p[0], p[1]);
        }
        if swap[1] {
            legs.swap(q[0], q[1]);
        }
        let mut delta = delta_of(line);
        if flip {
            for l in &mut legs {
                l.at_second = !l.at_second;
            }
            delta = delta.into_iter().map(|x| -x).collect();
        }
        let legs: [CechLeg; 4] = legs.try_into().unwrap();
        prop_assert_eq!(torsion(&cech_matrix(&delta, &legs, signs).unwrap()), base);
    }
}

fn cached() -> &'static (quintic_lines::tropical::QuinticCurveSet<Rat>, quintic_lines::search::FacetCensus<Rat>) {
    static CELL: std::sync::OnceLock<(
        quintic_lines::tropical::QuinticCurveSet<Rat>,
        quintic_lines::search::FacetCensus<Rat>,
    )> = std::sync::OnceLock::new();
    CELL.get_or_init(|| facet(1, 3))
}
