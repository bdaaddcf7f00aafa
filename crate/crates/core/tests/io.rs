mod common;

use common::{curves, facet, heights, toy_line};
use quintic_lines::arrangement::ConflictGraph;
use quintic_lines::io::{facet_obj, matrix_market, CurvesFile, HeightsFile, LineRecord};
use quintic_lines::Rat;

fn counts(text: &str, prefix: &str) -> usize {
    text.lines().filter(|l| l.starts_with(prefix)).count()
}

#[test]
fn records_round_trip_through_jsonl() {
    let (set, census) = facet(2, 5);
    let mut text = String::new();
    for line in &census.lines {
        let r = LineRecord::new(line, &set).unwrap();
        assert!(r.matches_curves(&set));
        text.push_str(&serde_json::to_string(&r).unwrap());
        text.push('\n');
    }
    let back: Vec<LineRecord> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(back.len(), census.lines.len());
    for (r, line) in back.iter().zip(&census.lines) {
        assert_eq!(&r.line::<Rat>().unwrap(), line);
        assert_eq!(r.admissible, quintic_lines::multiplicity::is_admissible(line));
    }
}

#[test]
fn tampered_records_are_rejected() {
    let (set, census) = facet(1, 1);
    let good = LineRecord::new(&census.lines[0], &set).unwrap();
    let mut moved = good.clone();
    moved.v2[0] = "12345/7".into();
    assert!(moved.line::<Rat>().is_err());
    let mut wrong_edge = good.clone();
    wrong_edge.legs[0].edge = (good.legs[0].edge + 1) % 45;
    assert!(!wrong_edge.matches_curves(&set));
    let mut wrong_facet = good;
    wrong_facet.facet = 9;
    assert!(!wrong_facet.matches_curves(&set));
    assert!(!LineRecord::new(&toy_line(), &set).unwrap().matches_curves(&set));
}

#[test]
fn heights_and_curves_files_round_trip() {
    let h = heights(4);
    let file = HeightsFile::new(&h);
    let text = file.to_json();
    let back = HeightsFile::from_json(&text).unwrap();
    assert_eq!(back, file);
    assert_eq!(back.heights::<Rat>().unwrap(), h);
    let c = CurvesFile::new(&h, &curves(4));
    assert_eq!(c.curves.len(), 20);
    let json = serde_json::to_string(&c).unwrap();
    assert_eq!(serde_json::from_str::<CurvesFile>(&json).unwrap(), c);
}

#[test]
fn toy_line_is_five_segments() {
    let set = curves(1);
    let (with, a) = facet_obj(1, &set, &[toy_line()], 20.0);
    let (without, b) = facet_obj(1, &set, &[], 20.0);
    assert_eq!(a.vertices - b.vertices, 6);
    assert_eq!(a.elements - b.elements, 5);
    assert_eq!(counts(&with, "v "), a.vertices);
    assert_eq!(counts(&with, "l "), a.elements);
    assert_eq!(counts(&with, "o line_"), 1);
    assert_eq!(counts(&without, "o curve_"), 4);
    assert_eq!(counts(&without, "o line_"), 0);
    // Each curve: 25 vertices, 15 ray ends, 45 segments.
    assert_eq!((b.vertices, b.elements), (4 * 40, 4 * 45));
    let max_index = with
        .lines()
        .filter(|l| l.starts_with("l "))
        .flat_map(|l| l[2..].split(' ').map(|x| x.parse::<usize>().unwrap()).collect::<Vec<_>>())
        .max()
        .unwrap();
    assert_eq!(max_index, a.vertices);
}

#[test]
fn matrix_market_lists_each_edge_once() {
    let g = ConflictGraph::from_edges(5, [(0, 4), (1, 2), (2, 4), (4, 0)]);
    let text = matrix_market(&g, &[]);
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('%')).collect();
    assert_eq!(body[0], "5 5 3");
    for entry in &body[1..] {
        let v: Vec<usize> = entry.split(' ').map(|x| x.parse().unwrap()).collect();
        assert!(v[0] > v[1] && v[1] >= 1 && v[0] <= 5);
        assert!(g.has_edge(v[0] - 1, v[1] - 1));
    }
    assert_eq!(body.len() - 1, g.edge_count());
}
