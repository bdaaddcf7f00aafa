use std::path::{Path, PathBuf};

use quintic_lines::io::{facet_obj, ObjCounts};
use quintic_lines::scalar::parse_ratio;
use quintic_lines::search::TropicalLine;
use quintic_lines::tropical::QuinticCurveSet;
use quintic_lines::{Rat, Scalar};
use serde::Serialize;

use crate::config::{Provenance, RunConfig};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ObjFile {
    pub facet: usize,
    pub path: PathBuf,
    pub lines: usize,
    pub vertices: usize,
    pub elements: usize,
    pub expected_vertices: usize,
    pub expected_elements: usize,
}

impl ObjFile {
    pub fn reconciled(&self) -> bool {
        self.vertices == self.expected_vertices && self.elements == self.expected_elements
    }
}

/// Per curve: its vertices plus one endpoint per ray, and one element per
/// edge; per line: two vertices and four leg endpoints, five segments.
pub fn expected_counts(curves: &QuinticCurveSet<Rat>, facet: usize, lines: usize) -> ObjCounts {
    let mut c = ObjCounts { vertices: 6 * lines, elements: 5 * lines };
    for j in 0..4 {
        let curve = &curves.get(facet, j).curve;
        c.vertices += curve.vertices.len() + curve.edges.iter().filter(|e| e.head.is_none()).count();
        c.elements += curve.edges.len();
    }
    c
}

// Twice the largest coordinate of anything drawn, so that every leg ends
// beyond its vertex.
fn auto_radius(curves: &QuinticCurveSet<Rat>, facet: usize, lines: &[&TropicalLine<Rat>]) -> f64 {
    let mut m: f64 = 1.0;
    for j in 0..4 {
        for v in &curves.get(facet, j).curve.vertices {
            m = v.position.iter().fold(m, |m, x| m.max(x.to_f64_lossy().abs()));
        }
    }
    for l in lines {
        m = l.v1.iter().chain(&l.v2).fold(m, |m, x| m.max(x.to_f64_lossy().abs()));
    }
    2.0 * m.ceil()
}

pub fn export_viz(
    config: &RunConfig,
    provenance: &Provenance,
    curves: &QuinticCurveSet<Rat>,
    lines: &[TropicalLine<Rat>],
    dir: &Path,
) -> anyhow::Result<Vec<ObjFile>> {
    std::fs::create_dir_all(dir)?;
    let fixed: Option<f64> = config.radius.as_deref().map(parse_ratio::<Rat>).transpose()?.map(|r| r.to_f64_lossy());
    let mut out = Vec::new();
    for &f in &config.facets {
        let ls: Vec<&TropicalLine<Rat>> = lines.iter().filter(|l| l.facet == f).collect();
        let owned: Vec<TropicalLine<Rat>> = ls.iter().map(|&l| l.clone()).collect();
        let radius = fixed.unwrap_or_else(|| auto_radius(curves, f, &ls));
        let (text, counts) = facet_obj(f, curves, &owned, radius);
        let path = dir.join(format!("facet_{f}.obj"));
        std::fs::write(&path, format!("# {} radius={radius}\n{text}", provenance.comment()))?;
        let exp = expected_counts(curves, f, owned.len());
        out.push(ObjFile {
            facet: f,
            path,
            lines: owned.len(),
            vertices: counts.vertices,
            elements: counts.elements,
            expected_vertices: exp.vertices,
            expected_elements: exp.elements,
        });
    }
    Ok(out)
}
