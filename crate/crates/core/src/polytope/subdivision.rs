use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Face, HeightFunction, LatticeSimplexConfig};
use crate::linalg::{determinant, integer_kernel, rank, IntMatrix};
use crate::{Error, Result, Scalar};

/// Two cells sharing a common codimension-one face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellAdjacency {
    pub cells: (usize, usize),
    pub ridge: Vec<usize>,
}

/// Lower faces of a lifted point configuration, in local point indices.
#[derive(Clone, Debug)]
pub struct LowerHull {
    pub cells: Vec<Vec<usize>>,
    pub adjacency: Vec<CellAdjacency>,
}

type Affine<S> = Vec<S>;

fn eval<S: Scalar>(f: &Affine<S>, p: &[i64]) -> S {
    let d = p.len();
    let mut acc = f[d].clone();
    for k in 0..d {
        if p[k] != 0 {
            acc = acc + f[k].clone() * S::from_i64(p[k]);
        }
    }
    acc
}

fn eval_int(l: &[i64], p: &[i64]) -> i64 {
    let d = p.len();
    l[d] + (0..d).map(|k| l[k] * p[k]).sum::<i64>()
}

fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small lattice data")).collect()
}

fn int_rows(rows: Vec<Vec<i64>>, cols: usize) -> IntMatrix {
    IntMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect(), cols)
}

// Integer affine functional vanishing on the given points, when they span a hyperplane.
fn hyperplane_through(points: &[&[i64]], d: usize) -> Option<Vec<i64>> {
    let rows = points.iter().map(|p| p.iter().copied().chain([1]).collect()).collect();
    let k = integer_kernel(&int_rows(rows, d + 1));
    (k.len() == 1).then(|| to_i64(&k[0]))
}

fn affine_rank(points: &[&[i64]]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let d = first.len();
    let rows = points[1..].iter().map(|p| (0..d).map(|k| p[k] - first[k]).collect()).collect();
    rank(&int_rows(rows, d))
}

fn touching<S: Scalar>(f: &Affine<S>, coords: &[Vec<i64>], heights: &[S]) -> Vec<usize> {
    (0..coords.len()).filter(|&i| eval(f, &coords[i]) == heights[i]).collect()
}

// Tilt `f` around the zero set of `l` until it touches a point with `l > 0`.
fn tilt<S: Scalar>(f: &Affine<S>, l: &[i64], coords: &[Vec<i64>], heights: &[S]) -> Option<Affine<S>> {
    let mut best: Option<S> = None;
    for (p, h) in coords.iter().zip(heights) {
        let lp = eval_int(l, p);
        if lp <= 0 {
            continue;
        }
        let lambda = (h.clone() - eval(f, p)) / S::from_i64(lp);
        if best.as_ref().is_none_or(|b| lambda < *b) {
            best = Some(lambda);
        }
    }
    let lambda = best?;
    Some(f.iter().zip(l).map(|(a, &b)| a.clone() + lambda.clone() * S::from_i64(b)).collect())
}

fn initial_cell<S: Scalar>(coords: &[Vec<i64>], heights: &[S]) -> Affine<S> {
    let d = coords[0].len();
    let p0 = (0..coords.len()).min_by(|&a, &b| heights[a].cmp(&heights[b])).unwrap();
    let mut f: Affine<S> = vec![S::zero(); d + 1];
    f[d] = heights[p0].clone();
    loop {
        let t = touching(&f, coords, heights);
        let dirs: Vec<Vec<i64>> = t.iter().map(|&i| (0..d).map(|k| coords[i][k] - coords[p0][k]).collect()).collect();
        let kernel: Vec<Vec<i64>> = if dirs.is_empty() {
            (0..d).map(|k| (0..d).map(|j| i64::from(j == k)).collect()).collect()
        } else {
            integer_kernel(&int_rows(dirs, d)).iter().map(|v| to_i64(v)).collect()
        };
        if kernel.is_empty() {
            return f;
        }
        let (c, q) = kernel
            .iter()
            .find_map(|c| {
                coords.iter().find_map(|q| {
                    let v: i64 = (0..d).map(|k| c[k] * (q[k] - coords[p0][k])).sum();
                    (v != 0).then(|| (c.clone(), v))
                })
            })
            .expect("point configuration is not full-dimensional");
        let sign = q.signum();
        let mut l: Vec<i64> = c.iter().map(|x| x * sign).collect();
        l.push(-(0..d).map(|k| l[k] * coords[p0][k]).sum::<i64>());
        f = tilt(&f, &l, coords, heights).expect("tilting direction has a point on its positive side");
    }
}

// Facets of conv(cell): (outward functional, points on it).
fn cell_ridges(cell: &[usize], coords: &[Vec<i64>]) -> Vec<(Vec<i64>, Vec<usize>)> {
    let d = coords[0].len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..d).collect();
    loop {
        let pts: Vec<&[i64]> = combo.iter().map(|&i| coords[cell[i]].as_slice()).collect();
        if let Some(mut l) = hyperplane_through(&pts, d) {
            let vals: Vec<i64> = cell.iter().map(|&i| eval_int(&l, &coords[i])).collect();
            let pos = vals.iter().any(|&v| v > 0);
            let neg = vals.iter().any(|&v| v < 0);
            if pos != neg {
                if pos {
                    l.iter_mut().for_each(|x| *x = -*x);
                }
                let ridge: Vec<usize> = cell.iter().zip(&vals).filter(|(_, &v)| v == 0).map(|(&i, _)| i).collect();
                if affine_rank(&ridge.iter().map(|&i| coords[i].as_slice()).collect::<Vec<_>>()) == d - 1
                    && seen.insert(ridge.clone())
                {
                    out.push((l, ridge));
                }
            }
        }
        // Next d-combination of 0..cell.len().
        let n = cell.len();
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if combo[i] < n - d + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        combo[i] += 1;
        for j in i + 1..d {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// Lower hull of `(coords[i], heights[i])`; `coords` must affinely span.
pub fn lower_hull<S: Scalar>(coords: &[Vec<i64>], heights: &[S]) -> LowerHull {
    assert_eq!(coords.len(), heights.len());
    let d = coords[0].len();
    if d == 0 {
        return LowerHull { cells: vec![vec![0]], adjacency: Vec::new() };
    }
    let f0 = initial_cell(coords, heights);
    let first = touching(&f0, coords, heights);
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut cells = vec![first.clone()];
    let mut functions = vec![f0];
    ids.insert(first, 0);
    let mut adjacency = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let cell = cells[c].clone();
        for (l, ridge) in cell_ridges(&cell, coords) {
            // `l` is positive beyond the ridge.
            let Some(g) = tilt(&functions[c], &l, coords, heights) else {
                continue;
            };
            let next = touching(&g, coords, heights);
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    let id = cells.len();
                    ids.insert(next.clone(), id);
                    cells.push(next);
                    functions.push(g);
                    queue.push_back(id);
                    id
                }
            };
            if c < id {
                adjacency.push(CellAdjacency { cells: (c, id), ridge });
            }
        }
    }
    // Canonical order: sorted cells.
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by(|&a, &b| cells[a].cmp(&cells[b]));
    let mut rank_of = vec![0; cells.len()];
    for (r, &c) in order.iter().enumerate() {
        rank_of[c] = r;
    }
    let sorted_cells = order.iter().map(|&c| cells[c].clone()).collect();
    let mut adjacency: Vec<CellAdjacency> = adjacency
        .into_iter()
        .map(|a| {
            let (x, y) = (rank_of[a.cells.0], rank_of[a.cells.1]);
            CellAdjacency { cells: (x.min(y), x.max(y)), ridge: a.ridge }
        })
        .collect();
    adjacency.sort_by_key(|a| a.cells);
    LowerHull { cells: sorted_cells, adjacency }
}

/// Regular subdivision of a point configuration; cells and ridges hold
/// indices into `points`.
#[derive(Clone, Debug)]
pub struct RegularSubdivision {
    pub face: Option<Face>,
    /// Global boundary point index of each local point, when known.
    pub points: Vec<usize>,
    pub coords: Vec<Vec<i64>>,
    pub cells: Vec<Vec<usize>>,
    pub adjacency: Vec<CellAdjacency>,
}

impl RegularSubdivision {
    pub fn from_configuration<S: Scalar>(coords: Vec<Vec<i64>>, heights: &[S]) -> Self {
        let hull = lower_hull(&coords, heights);
        RegularSubdivision {
            face: None,
            points: (0..coords.len()).collect(),
            coords,
            cells: hull.cells,
            adjacency: hull.adjacency,
        }
    }

    /// A subdivision given by explicit cells, without a height function.
    pub fn from_cells(coords: Vec<Vec<i64>>, cells: Vec<Vec<usize>>) -> Self {
        RegularSubdivision { face: None, points: (0..coords.len()).collect(), coords, cells, adjacency: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.coords.first().map_or(0, |c| c.len())
    }

    pub fn is_triangulation(&self) -> bool {
        let d = self.dim();
        self.cells.iter().all(|c| c.len() == d + 1)
    }

    pub fn require_triangulation(&self) -> Result<()> {
        let d = self.dim();
        match self.cells.iter().find(|c| c.len() != d + 1) {
            None => Ok(()),
            Some(c) => Err(Error::DegenerateHeights {
                face: self.face.as_ref().map_or_else(|| "configuration".into(), |f| f.to_string()),
                detail: format!(
                    "cell with {} points {:?} is not a simplex",
                    c.len(),
                    c.iter().map(|&i| self.points[i]).collect::<Vec<_>>()
                ),
            }),
        }
    }

    /// [`RegularSubdivision::require_triangulation`], and every cell has
    /// normalized volume 1.
    pub fn require_unimodular(&self) -> Result<()> {
        self.require_triangulation()?;
        match self.cells.iter().find(|c| self.cell_volume(c) != BigInt::from(1)) {
            None => Ok(()),
            Some(c) => Err(Error::DegenerateHeights {
                face: self.face.as_ref().map_or_else(|| "configuration".into(), |f| f.to_string()),
                detail: format!(
                    "cell {:?} has normalized volume {}",
                    c.iter().map(|&i| self.points[i]).collect::<Vec<_>>(),
                    self.cell_volume(c)
                ),
            }),
        }
    }

    /// Cells as sorted lists of global point indices.
    pub fn global_cells(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .cells
            .iter()
            .map(|c| {
                let mut g: Vec<usize> = c.iter().map(|&i| self.points[i]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        out.sort();
        out
    }

    /// Normalized volume `|det|` of a simplicial cell.
    pub fn cell_volume(&self, cell: &[usize]) -> BigInt {
        let d = self.dim();
        let base = &self.coords[cell[0]];
        let rows = cell[1..].iter().map(|&i| (0..d).map(|k| self.coords[i][k] - base[k]).collect()).collect();
        let det = determinant(&int_rows(rows, d));
        if det < BigInt::from(0) {
            -det
        } else {
            det
        }
    }

    /// Ridges lying on only one cell.
    pub fn boundary_ridges(&self) -> Vec<Vec<usize>> {
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        for cell in &self.cells {
            for (_, r) in cell_ridges(cell, &self.coords) {
                *counts.entry(r).or_default() += 1;
            }
        }
        let mut out: Vec<Vec<usize>> = counts.into_iter().filter(|(_, n)| *n == 1).map(|(r, _)| r).collect();
        out.sort();
        out
    }
}

/// The subdivision of `face` induced by lifting its lattice points by `h`.
pub fn induced_subdivision<S: Scalar>(h: &HeightFunction<S>, face: &Face) -> Result<RegularSubdivision> {
    let cfg = LatticeSimplexConfig::get();
    let points = face.point_indices();
    let coords: Vec<Vec<i64>> = points.iter().map(|&i| face.local_coords(&cfg.points()[i])).collect();
    let heights: Vec<S> = points.iter().map(|&i| h.at_index(i).clone()).collect();
    let hull = lower_hull(&coords, &heights);
    Ok(RegularSubdivision { face: Some(face.clone()), points, coords, cells: hull.cells, adjacency: hull.adjacency })
}

/// Whether every maximal cell is a unimodular simplex.
pub fn is_unimodular(s: &RegularSubdivision) -> Result<bool> {
    if !s.is_triangulation() {
        return Err(Error::NotATriangulation);
    }
    Ok(s.cells.iter().all(|c| s.cell_volume(c) == BigInt::from(1)))
}

/// Maximal cells (global indices) of the subdivision that `s` induces on a
/// lower-dimensional `face`: the intersections of cells with the face that
/// have full dimension there.
pub fn restrict_to_face(s: &RegularSubdivision, face: &Face) -> Vec<Vec<usize>> {
    let cfg = LatticeSimplexConfig::get();
    let d = face.dim();
    let mut out = BTreeSet::new();
    for cell in &s.cells {
        let on: Vec<usize> =
            cell.iter().map(|&i| s.points[i]).filter(|&g| face.contains_point(&cfg.points()[g])).collect();
        if on.len() < d + 1 {
            continue;
        }
        let local: Vec<Vec<i64>> = on.iter().map(|&g| face.local_coords(&cfg.points()[g])).collect();
        if affine_rank(&local.iter().map(|v| v.as_slice()).collect::<Vec<_>>()) == d {
            let mut sorted = on;
            sorted.sort_unstable();
            out.insert(sorted);
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::make_heights;
    use crate::Rat;

    #[test]
    fn unit_segment_is_one_cell() {
        let s = RegularSubdivision::from_configuration(vec![vec![0], vec![1]], &[Rat::from_i64(3), Rat::from_i64(-2)]);
        assert_eq!(s.cells, vec![vec![0, 1]]);
        assert!(is_unimodular(&s).unwrap());
    }

    #[test]
    fn convex_heights_split_a_segment() {
        let heights: Vec<Rat> = [4, 1, 0, 1].iter().map(|&v| Rat::from_i64(v)).collect();
        let s = RegularSubdivision::from_configuration(vec![vec![0], vec![1], vec![2], vec![3]], &heights);
        assert_eq!(s.cells, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert_eq!(s.adjacency.len(), 2);
        // Collinear lifted points merge into one cell.
        let flat = vec![Rat::from_i64(0); 3];
        let s = RegularSubdivision::from_configuration(vec![vec![0], vec![1], vec![2]], &flat);
        assert_eq!(s.cells, vec![vec![0, 1, 2]]);
        assert!(is_unimodular(&s).is_err());
    }

    #[test]
    fn unimodularity_of_explicit_cells() {
        let fat = RegularSubdivision::from_cells(vec![vec![0, 0], vec![2, 0], vec![0, 1]], vec![vec![0, 1, 2]]);
        assert!(!is_unimodular(&fat).unwrap());
        let unit = RegularSubdivision::from_cells(
            vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![0, 1, 2, 3]],
        );
        assert!(is_unimodular(&unit).unwrap());
    }

    #[test]
    fn symmetric_two_face_has_25_unimodular_triangles() {
        let h = HeightFunction::<Rat>::symmetric();
        for face in Face::two_faces() {
            let s = induced_subdivision(&h, &face).unwrap();
            assert_eq!(s.cells.len(), 25, "{face}");
            assert!(is_unimodular(&s).unwrap());
            // Interior edges are shared by two triangles, boundary edges by one.
            assert_eq!(s.adjacency.len(), 30);
            assert_eq!(s.boundary_ridges().len(), 15);
        }
    }

    #[test]
    fn symmetric_facet_is_unimodular_triangulation() {
        let h = HeightFunction::<Rat>::symmetric();
        for i in 1..=5 {
            let s = induced_subdivision(&h, &Face::facet(i).unwrap()).unwrap();
            s.require_triangulation().unwrap();
            assert_eq!(s.cells.len(), 125);
            assert!(is_unimodular(&s).unwrap());
        }
    }

    // Any two cells meet in a common face: the lattice points of their
    // intersection span exactly conv(A) ∩ conv(B). For unimodular
    // triangulations of lattice polygons this reduces to: the shared point
    // set is a face of both simplices and no cell contains another's point
    // in its relative interior, which holds iff the areas add up.
    #[test]
    fn two_face_cells_tile_the_triangle() {
        let h = make_heights::<Rat>(3, &Rat::from_frac(1, 1000)).unwrap();
        for face in Face::two_faces() {
            let s = induced_subdivision(&h, &face).unwrap();
            let total: BigInt = s.cells.iter().map(|c| s.cell_volume(c)).sum();
            assert_eq!(total, BigInt::from(25));
            for (a, ca) in s.cells.iter().enumerate() {
                for cb in &s.cells[a + 1..] {
                    let shared: Vec<usize> = ca.iter().filter(|x| cb.contains(x)).copied().collect();
                    assert!(shared.len() <= 2);
                }
            }
        }
    }

    #[test]
    fn restriction_matches_direct_subdivision() {
        let h = make_heights::<Rat>(11, &Rat::from_frac(1, 1000)).unwrap();
        for i in 1..=5 {
            let facet = Face::facet(i).unwrap();
            let s = induced_subdivision(&h, &facet).unwrap();
            for face in Face::two_faces().into_iter().filter(|f| facet.contains_face(f)) {
                let direct = induced_subdivision(&h, &face).unwrap().global_cells();
                assert_eq!(restrict_to_face(&s, &face), direct);
            }
        }
    }
}
