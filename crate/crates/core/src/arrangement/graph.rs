use std::collections::BTreeMap;

use rayon::prelude::*;

use super::intersect::{cross_facet_intersect, LineImage};
use crate::polytope::Face;
use crate::search::TropicalLine;
use crate::tropical::{EdgeKind, QuinticCurveSet};
use crate::Scalar;

/// Undirected simple graph on `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConflictGraph {
    adjacency: Vec<Vec<usize>>,
}

impl ConflictGraph {
    pub fn new(n: usize) -> Self {
        ConflictGraph { adjacency: vec![Vec::new(); n] }
    }

    /// Self-loops and repeated edges are dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = ConflictGraph::new(n);
        for (a, b) in edges {
            if a != b {
                g.adjacency[a].push(b);
                g.adjacency[b].push(a);
            }
        }
        for row in &mut g.adjacency {
            row.sort_unstable();
            row.dedup();
        }
        g
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(a, row)| row.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn isolated(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.degree(v) == 0).collect()
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| a != b && !self.has_edge(a, b)))
    }

    /// The subgraph on `nodes`, relabeled by position in `nodes`.
    pub fn induced(&self, nodes: &[usize]) -> ConflictGraph {
        let mut index = vec![usize::MAX; self.len()];
        for (i, &v) in nodes.iter().enumerate() {
            index[v] = i;
        }
        let edges = nodes.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.adjacency[v].iter().filter(move |&&w| index[w] != usize::MAX).map(move |&w| (i, index[w]))
        });
        ConflictGraph::from_edges(nodes.len(), edges.collect::<Vec<_>>())
    }

    /// Dense 0/1 adjacency matrix.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.len();
        let mut m = vec![vec![0u8; n]; n];
        for (a, b) in self.edges() {
            m[a][b] = 1;
            m[b][a] = 1;
        }
        m
    }
}

/// Whether two census lines meet, in one facet chart or across a 2-face.
pub fn lines_intersect<S: Scalar>(a: &TropicalLine<S>, b: &TropicalLine<S>, curves: &QuinticCurveSet<S>) -> bool {
    if a.facet == b.facet {
        super::same_facet_intersect(a, b)
    } else {
        cross_facet_intersect(a, b, curves)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Meeting<S> {
    Point(Face, [S; 2]),
    Ray(Face, [usize; 2]),
}

// Where the legs of `line` meet the 2-faces; two lines of different facets
// meet across a 2-face exactly when they share a key.
fn meetings<S: Scalar>(line: &TropicalLine<S>, curves: &QuinticCurveSet<S>) -> Vec<Meeting<S>> {
    let mut out = Vec::new();
    for (j, leg) in line.legs.iter().enumerate() {
        let inst = curves.get(line.facet, j);
        out.push(Meeting::Point(inst.face.clone(), inst.to_face_point(&leg.landing)));
        let edge = &inst.curve.edges[leg.edge];
        if edge.kind == EdgeKind::Outer {
            out.push(Meeting::Ray(inst.face.clone(), edge.dual));
        }
    }
    out
}

/// The conflict graph of a census; node `i` is `lines[i]`.
pub fn conflict_graph<S: Scalar>(lines: &[TropicalLine<S>], curves: &QuinticCurveSet<S>) -> ConflictGraph {
    let images: Vec<LineImage<S>> = lines.par_iter().map(LineImage::new).collect();
    let mut edges: Vec<(usize, usize)> = (0..lines.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let (lines, images) = (&lines, &images);
            (a + 1..lines.len())
                .filter(move |&b| lines[a].facet == lines[b].facet && images[a].meets(&images[b]))
                .map(move |b| (a, b))
        })
        .collect();
    let mut groups: BTreeMap<Meeting<S>, Vec<usize>> = BTreeMap::new();
    for (i, line) in lines.iter().enumerate() {
        for key in meetings(line, curves) {
            groups.entry(key).or_default().push(i);
        }
    }
    for members in groups.values() {
        for (x, &a) in members.iter().enumerate() {
            edges.extend(members[x + 1..].iter().filter(|&&b| lines[a].facet != lines[b].facet).map(|&b| (a, b)));
        }
    }
    ConflictGraph::from_edges(lines.len(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_basics() {
        let g = ConflictGraph::from_edges(4, [(0, 1), (1, 0), (2, 2), (1, 3)]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 3)]);
        assert_eq!(g.isolated(), vec![2]);
        assert!(g.is_independent(&[0, 2, 3]));
        assert!(!g.is_independent(&[0, 1]));
        let h = g.induced(&[3, 1, 2]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let m = g.matrix();
        assert!((0..4).all(|i| m[i][i] == 0 && (0..4).all(|j| m[i][j] == m[j][i])));
    }
}
