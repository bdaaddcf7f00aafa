use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{HeightFunction, LatticePoint, LatticeSimplexConfig};
use crate::linalg::{integer_kernel, rank, IntMatrix};
use crate::{Error, Result, Scalar};

/// `{n : <n, m> >= -a_m for every boundary point m}` with its vertices.
#[derive(Clone, Debug)]
pub struct DualPolytope<S> {
    pub normals: Vec<LatticePoint>,
    /// Right-hand sides `-a_m`.
    pub bounds: Vec<S>,
    /// Lexicographically sorted.
    pub vertices: Vec<[S; 4]>,
}

impl<S: Scalar> DualPolytope<S> {
    /// Indices of the inequalities that `n` satisfies with equality.
    pub fn tight(&self, n: &[S; 4]) -> Vec<usize> {
        (0..self.normals.len()).filter(|&i| self.value(i, n) == self.bounds[i]).collect()
    }

    pub fn contains(&self, n: &[S; 4]) -> bool {
        (0..self.normals.len()).all(|i| self.value(i, n) >= self.bounds[i])
    }

    fn value(&self, i: usize, n: &[S; 4]) -> S {
        crate::scalar::dot(&self.normals[i], n)
    }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

fn dot_big(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        v.iter_mut().for_each(|x| *x = &*x / &g);
    }
    v
}

// Extreme rays of the pointed cone {y : row . y >= 0} by double description.
fn cone_rays(rows: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let d = rows[0].len();
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<BigInt>> = basis.iter().map(|&j| rows[j].clone()).collect();
        trial.push(rows[i].clone());
        if rank(&IntMatrix::from_rows(trial, d)) == basis.len() + 1 {
            basis.push(i);
            if basis.len() == d {
                break;
            }
        }
    }
    if basis.len() < d {
        return Err(Error::Unbounded);
    }
    let mut rays: Vec<(Vec<BigInt>, Bits)> = Vec::new();
    for k in 0..d {
        let others: Vec<Vec<BigInt>> = basis.iter().filter(|&&j| j != basis[k]).map(|&j| rows[j].clone()).collect();
        let mut r = integer_kernel(&IntMatrix::from_rows(others, d)).remove(0);
        if dot_big(&rows[basis[k]], &r).is_negative() {
            r.iter_mut().for_each(|x| *x = -&*x);
        }
        let mut z = Bits::new(rows.len());
        for &j in &basis {
            if j != basis[k] {
                z.set(j);
            }
        }
        rays.push((r, z));
    }
    for (i, row) in rows.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|(r, _)| dot_big(row, r)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.1.set(i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut next = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let z = rays[p].1.and(&rays[n].1);
                if (z.count() as usize) + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|q| q == p || q == n || !z.subset_of(&rays[q].1));
                if !adjacent {
                    continue;
                }
                let v: Vec<BigInt> =
                    rays[n].0.iter().zip(&rays[p].0).map(|(a, b)| &vals[p] * a - &vals[n] * b).collect();
                let mut z = z;
                z.set(i);
                next.push((primitive(v), z));
            }
        }
        for (k, (r, mut z)) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                z.set(i);
            }
            next.push((r, z));
        }
        rays = next;
    }
    Ok(rays.into_iter().map(|(r, _)| r).collect())
}

/// Vertices of `{x : <normals_i, x> >= bounds_i}`, lexicographically sorted.
///
/// Fails with [`Error::Unbounded`] when the polyhedron has a recession
/// direction.
pub fn halfspace_vertices<S: Scalar>(normals: &[Vec<i64>], bounds: &[S]) -> Result<Vec<Vec<S>>> {
    assert_eq!(normals.len(), bounds.len());
    let Some(d) = normals.first().map(Vec::len) else {
        return Err(Error::Unbounded);
    };
    // Homogenize: <a, y> - b s >= 0, s >= 0, cleared of denominators.
    let mut rows: Vec<Vec<BigInt>> = vec![(0..=d).map(|k| BigInt::from(i64::from(k == d))).collect()];
    for (a, b) in normals.iter().zip(bounds) {
        let b = b.to_big();
        let den = b.denom().clone();
        let mut row: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x) * &den).collect();
        row.push(-b.numer().clone());
        rows.push(primitive(row));
    }
    let rays = cone_rays(&rows)?;
    let mut out = Vec::new();
    for r in rays {
        if !r[d].is_positive() {
            return Err(Error::Unbounded);
        }
        let v: Option<Vec<S>> =
            r[..d].iter().map(|x| S::from_big(&BigRational::new(x.clone(), r[d].clone()))).collect();
        out.push(v.ok_or_else(|| Error::Parse("vertex coordinate out of range".into()))?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn dual_polytope<S: Scalar>(h: &HeightFunction<S>) -> Result<DualPolytope<S>> {
    let cfg = LatticeSimplexConfig::get();
    let normals: Vec<LatticePoint> = cfg.points().to_vec();
    let bounds: Vec<S> = h.values().iter().map(|a| -a.clone()).collect();
    let rows: Vec<Vec<i64>> = normals.iter().map(|m| m.to_vec()).collect();
    let vertices = halfspace_vertices(&rows, &bounds)?
        .into_iter()
        .map(|v| [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
        .collect();
    Ok(DualPolytope { normals, bounds, vertices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{solve_rational, LinearSolution, Matrix};
    use crate::polytope::{lower_hull, make_heights};
    use crate::Rat;

    // Every 4-subset of inequalities, solved and filtered for feasibility.
    fn brute_force(normals: &[Vec<i64>], bounds: &[Rat]) -> Vec<Vec<Rat>> {
        let n = normals.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for e in c + 1..n {
                        let idx = [a, b, c, e];
                        let m = Matrix::from_rows(
                            idx.iter().map(|&i| normals[i].iter().map(|&x| Rat::from_i64(x)).collect()).collect(),
                            4,
                        );
                        let rhs: Vec<Rat> = idx.iter().map(|&i| bounds[i].clone()).collect();
                        if let LinearSolution::Unique(x) = solve_rational(&m, &rhs) {
                            let ok = normals.iter().zip(bounds).all(|(row, bd)| crate::scalar::dot(row, &x) >= *bd);
                            if ok {
                                out.push(x);
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn unit_heights_give_the_polar_simplex() {
        let cfg = LatticeSimplexConfig::get();
        let ones = vec![Rat::from_i64(1); cfg.points().len()];
        let h = HeightFunction::from_values(0, Rat::from_i64(0), ones).unwrap();
        let dual = dual_polytope(&h).unwrap();
        let mut expected: Vec<[Rat; 4]> =
            vec![[Rat::from_i64(-1), Rat::from_i64(-1), Rat::from_i64(-1), Rat::from_i64(-1)]];
        for k in 0..4 {
            let mut e = [Rat::from_i64(0), Rat::from_i64(0), Rat::from_i64(0), Rat::from_i64(0)];
            e[k] = Rat::from_i64(1);
            expected.push(e);
        }
        expected.sort();
        assert_eq!(dual.vertices, expected);
        // Only the vertices of the simplex matter; brute force over them.
        let verts: Vec<Vec<i64>> = cfg.vertices().iter().map(|v| v.to_vec()).collect();
        let bf = brute_force(&verts, &vec![Rat::from_i64(-1); 5]);
        let got: Vec<Vec<Rat>> = dual.vertices.iter().map(|v| v.to_vec()).collect();
        assert_eq!(bf, got);
    }

    #[test]
    fn small_polytope_matches_brute_force() {
        // A cube with one corner cut off.
        let mut normals = Vec::new();
        let mut bounds = Vec::new();
        for k in 0..4 {
            let mut e = vec![0; 4];
            e[k] = 1;
            normals.push(e.clone());
            bounds.push(Rat::from_i64(0));
            normals.push(e.iter().map(|x| -x).collect());
            bounds.push(Rat::from_i64(-2));
        }
        normals.push(vec![-1, -1, -1, -1]);
        bounds.push(Rat::from_frac(-15, 2));
        let dd = halfspace_vertices(&normals, &bounds).unwrap();
        assert_eq!(dd, brute_force(&normals, &bounds));
        assert_eq!(dd.len(), 16 - 1 + 4);
    }

    #[test]
    fn unbounded_is_reported() {
        let normals = vec![vec![1, 0], vec![0, 1]];
        let bounds = vec![Rat::from_i64(0), Rat::from_i64(0)];
        assert!(matches!(halfspace_vertices(&normals, &bounds), Err(Error::Unbounded)));
    }

    // Maximal cones of the fan of the convex function whose graph bounds the
    // cone over the lifted boundary points: lower-hull cells through the
    // origin once the origin is added at height 0.
    fn fan_cones(h: &HeightFunction<Rat>) -> Vec<Vec<usize>> {
        let cfg = LatticeSimplexConfig::get();
        let mut coords: Vec<Vec<i64>> = cfg.points().iter().map(|m| m.to_vec()).collect();
        let mut heights = h.values().to_vec();
        coords.push(vec![0; 4]);
        heights.push(Rat::from_i64(0));
        let origin = coords.len() - 1;
        let hull = lower_hull(&coords, &heights);
        hull.cells
            .into_iter()
            .filter(|c| c.contains(&origin))
            .map(|c| c.into_iter().filter(|&i| i != origin).collect())
            .collect()
    }

    #[test]
    fn vertices_match_fan_cones() {
        for h in [HeightFunction::<Rat>::symmetric(), make_heights::<Rat>(2, &Rat::from_frac(1, 1000)).unwrap()] {
            let dual = dual_polytope(&h).unwrap();
            let mut cones = fan_cones(&h);
            cones.sort();
            let mut tight: Vec<Vec<usize>> = dual.vertices.iter().map(|v| dual.tight(v)).collect();
            tight.sort();
            assert_eq!(tight, cones);
            for v in &dual.vertices {
                assert!(dual.contains(v));
                assert!(dual.tight(v).len() >= 4);
            }
        }
        // The star of the origin in the alcove triangulation.
        assert_eq!(dual_polytope(&HeightFunction::<Rat>::symmetric()).unwrap().vertices.len(), 120);
    }

    #[test]
    fn constant_shift_keeps_combinatorics() {
        let h = make_heights::<Rat>(5, &Rat::from_frac(1, 1000)).unwrap();
        let a = dual_polytope(&h).unwrap();
        let b = dual_polytope(&h.shifted(&Rat::from_frac(1, 3))).unwrap();
        assert_eq!(a.vertices.len(), b.vertices.len());
        let mut ta: Vec<Vec<usize>> = a.vertices.iter().map(|v| a.tight(v)).collect();
        let mut tb: Vec<Vec<usize>> = b.vertices.iter().map(|v| b.tight(v)).collect();
        ta.sort();
        tb.sort();
        assert_eq!(ta, tb);
    }
}
