use num_bigint::BigInt;
use serde::Serialize;

use super::TropicalLine;
use crate::linalg::{is_saturated, IntMatrix};
use crate::multiplicity::planes_of;
use crate::tropical::RAYS;
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCheck {
    pub balanced: bool,
    pub primitive: bool,
    pub saturated: bool,
}

impl VertexCheck {
    pub fn passed(&self) -> bool {
        self.balanced && self.primitive && self.saturated
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// The bounded edge `V2 - V1` is `t` times an integer vector.
    pub integral_edge: bool,
    pub first: VertexCheck,
    pub second: VertexCheck,
    /// Every leg direction generates the image of `T - id` and lies in
    /// the constraint plane of its end.
    pub monodromy: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.integral_edge && self.first.passed() && self.second.passed() && self.monodromy
    }
}

fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| num_integer::gcd(g, x))
}

/// Balancing, primitivity and saturation of the outgoing directions at a
/// trivalent vertex.
pub fn check_vertex(dirs: &[[i64; 3]; 3]) -> VertexCheck {
    let balanced = (0..3).all(|k| dirs.iter().map(|d| d[k]).sum::<i64>() == 0);
    let primitive = dirs.iter().all(|d| gcd_vec(d) == 1);
    let pair: Vec<Vec<BigInt>> = dirs[..2].iter().map(|d| d.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let saturated = is_saturated(&pair) && crate::linalg::rank(&IntMatrix::from_rows(pair, 3)) == 2;
    VertexCheck { balanced, primitive, saturated }
}

pub fn check_tropical_axioms<S: Scalar>(line: &TropicalLine<S>) -> AxiomReport {
    let ([a, b], [c, d]) = line.ctype.pairs();
    // Edge direction recovered from the vertices, not from the type.
    let edge: Option<[i64; 3]> = if line.t.is_zero() {
        None
    } else {
        let v: Vec<S> = (0..3).map(|k| (line.v2[k].clone() - line.v1[k].clone()) / line.t.clone()).collect();
        v.iter()
            .all(|x| x.is_integral())
            .then(|| [0, 1, 2].map(|k| v[k].to_big().to_integer().try_into().unwrap_or(i64::MAX)))
    };
    let e = edge.unwrap_or([0, 0, 0]);
    let first = check_vertex(&[RAYS[a], RAYS[b], e]);
    let second = check_vertex(&[RAYS[c], RAYS[d], e.map(|x| -x)]);
    let monodromy = planes_of(line).iter().all(|p| {
        let t = p.monodromy();
        let image: Vec<Vec<BigInt>> =
            (0..3).map(|k| (0..3).map(|i| &t[(i, k)] - BigInt::from(i64::from(i == k))).collect()).collect();
        // (T - id) x = <lambda, x> ray with lambda primitive: the image is exactly Z ray.
        let generated = image.iter().all(|col| {
            let s = col.iter().zip(&p.ray).find(|(_, r)| **r != BigInt::from(0)).map(|(x, r)| x / r);
            s.is_some_and(|s| col.iter().zip(&p.ray).all(|(x, r)| *x == &s * r))
        }) && is_saturated(&[p.normal()]);
        p.contains(&p.ray) && generated
    });
    AxiomReport { integral_edge: edge.is_some(), first, second, monodromy }
}
