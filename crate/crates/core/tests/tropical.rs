use proptest::prelude::*;
use quintic_lines::polytope::{make_heights, LatticeSimplexConfig};
use quintic_lines::tropical::{build_curve_set, EdgeKind, FacetFrame, QuinticCurveSet, TropicalPlaneCurve, RAYS};
use quintic_lines::{Rat, Scalar};

fn curves(seed: u64, mag: i64) -> QuinticCurveSet<Rat> {
    build_curve_set(&make_heights(seed, &Rat::from_frac(mag, 1_000_000)).unwrap()).unwrap()
}

fn sorted_vertices(c: &TropicalPlaneCurve<Rat>) -> Vec<([usize; 3], [Rat; 2])> {
    let mut v: Vec<_> = c.vertices.iter().map(|v| (v.triangle, v.position.clone())).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn curves_are_balanced_smooth_quintics(seed in 0u64..100_000, mag in prop::sample::select(vec![1i64, 1_000, 10_000, 100_000])) {
        let set = curves(seed, mag);
        for inst in set.instances() {
            let c = &inst.curve;
            prop_assert!(c.is_balanced());
            prop_assert_eq!(c.vertices.len(), 25);
            prop_assert_eq!(c.count(EdgeKind::Internal), 30);
            prop_assert_eq!(c.count(EdgeKind::Outer), 15);
            for e in 0..c.edges.len() {
                if let Some(len) = c.edge_length(e) {
                    prop_assert!(len > Rat::from_i64(0));
                }
            }
        }
    }

    // Each vertex is where exactly its three dual monomials attain the
    // minimum of the tropical polynomial.
    #[test]
    fn vertices_are_exact_triple_minima(seed in 0u64..100_000) {
        let h = make_heights::<Rat>(seed, &Rat::from_frac(1, 100)).unwrap();
        let set = build_curve_set(&h).unwrap();
        let cfg = LatticeSimplexConfig::get();
        for inst in set.instances() {
            let frame = FacetFrame::new(inst.facet).unwrap();
            let pts = inst.face.point_indices();
            for v in &inst.curve.vertices {
                let values: Vec<(usize, Rat)> = pts
                    .iter()
                    .map(|&g| {
                        let m = frame.face_coords(inst.leg, &cfg.points()[g]);
                        let x = &v.position;
                        (g, h.at_index(g) + Rat::from_i64(m[0]) * &x[0] + Rat::from_i64(m[1]) * &x[1])
                    })
                    .collect();
                let min = values.iter().map(|(_, a)| a.clone()).min().unwrap();
                let mut argmin: Vec<usize> = values.iter().filter(|(_, a)| *a == min).map(|(g, _)| *g).collect();
                argmin.sort_unstable();
                prop_assert_eq!(argmin, v.triangle.to_vec());
            }
        }
    }

    #[test]
    fn instances_agree_with_their_face_curve(seed in 0u64..100_000) {
        let set = curves(seed, 10_000);
        for inst in set.instances() {
            let face = set.face_curve(&inst.face).unwrap();
            let moved = inst.curve.transformed(&inst.to_face);
            prop_assert_eq!(sorted_vertices(&moved), sorted_vertices(face));
            for (a, b) in moved.edges.iter().zip(&face.edges) {
                prop_assert_eq!(a.dual, b.dual);
                prop_assert_eq!(a.kind, b.kind);
                prop_assert_eq!(a.direction, b.direction);
            }
            let (f, j) = set.partner(inst.facet, inst.leg);
            prop_assert_ne!(f, inst.facet);
            prop_assert_eq!(&set.get(f, j).face, &inst.face);
        }
    }
}

#[test]
fn pairing_covers_every_instance_once() {
    let set = curves(1, 10_000);
    let pairing = set.pairing();
    assert_eq!(pairing.len(), 10);
    let mut seen: Vec<(usize, usize)> = pairing.iter().flat_map(|(_, a, b)| [*a, *b]).collect();
    seen.sort_unstable();
    let all: Vec<(usize, usize)> = (1..=5).flat_map(|f| (0..4).map(move |j| (f, j))).collect();
    assert_eq!(seen, all);
}

#[test]
fn projections_kill_their_ray_and_lift_back() {
    for (j, ray) in RAYS.iter().enumerate() {
        assert_eq!(FacetFrame::project_int(j, ray), [0, 0]);
        for d in [[1, 0], [0, 1], [2, -3]] {
            assert_eq!(FacetFrame::project_int(j, &FacetFrame::lift(j, d)), d);
        }
    }
}

#[test]
fn vertex_positions_reproduce_the_curve() {
    let h = make_heights::<Rat>(3, &Rat::from_frac(1, 100)).unwrap();
    let set = build_curve_set(&h).unwrap();
    for inst in set.instances() {
        let p = inst.vertex_positions(h.values()).unwrap();
        let q: Vec<[Rat; 2]> = inst.curve.vertices.iter().map(|v| v.position.clone()).collect();
        assert_eq!(p, q);
    }
}
