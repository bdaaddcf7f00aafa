use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{CombinatorialType, ConstraintTuple, LegIncidence, LineFlags, TropicalLine, CURVE_EDGES};
use crate::polytope::LatticeSimplexConfig;
use crate::tropical::{FacetFrame, QuinticCurveSet};
use crate::{Error, Result, Scalar};

/// Family tuples kept per combinatorial type and facet for cross-checks.
pub const FAMILY_SAMPLES: usize = 16;

// Scaled values must stay below this so every product below fits in i128.
const SCALED_BOUND: i128 = 1 << 48;

const PROBE_SEED: u64 = 0x5e_ed0f_7135;
const PROBE_RANGE: i64 = 1 << 20;

/// How every `(tuple, type)` pair of one type was classified.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TypeAccounting {
    #[serde(rename = "type")]
    pub ctype: String,
    /// A vertex pair admits no point landing in both closed edges.
    pub pruned: u64,
    /// Inconsistent incidence system.
    pub none: u64,
    /// Positive-dimensional solution set.
    pub family: u64,
    /// Unique solution missing a closed landing edge.
    pub outside: u64,
    /// Unique solution with `t < 0`.
    pub bad_orientation: u64,
    /// Unique solution with `t = 0`.
    pub degenerate: u64,
    /// Unique solution with `t > 0` and a leg on a curve vertex.
    pub special: u64,
    pub lines: u64,
    /// Tuples whose class changes under an infinitesimal generic change of
    /// the heights; not part of [`TypeAccounting::total`].
    pub ties: u64,
}

impl TypeAccounting {
    pub fn total(&self) -> u64 {
        self.pruned
            + self.none
            + self.family
            + self.outside
            + self.bad_orientation
            + self.degenerate
            + self.special
            + self.lines
    }

    fn add(&mut self, o: &TypeAccounting) {
        self.pruned += o.pruned;
        self.none += o.none;
        self.family += o.family;
        self.ties += o.ties;
        self.outside += o.outside;
        self.bad_orientation += o.bad_orientation;
        self.degenerate += o.degenerate;
        self.special += o.special;
        self.lines += o.lines;
    }
}

/// Lines of one facet with the accounting of the search.
#[derive(Clone, Debug)]
pub struct FacetCensus<S> {
    pub facet: usize,
    /// Rigid, non-special lines with `t > 0`, sorted by `(V1, V2, type)`.
    pub lines: Vec<TropicalLine<S>>,
    pub accounting: Vec<TypeAccounting>,
    pub family_samples: Vec<(CombinatorialType, ConstraintTuple)>,
    /// Tuples counted in [`TypeAccounting::ties`], at most
    /// [`FAMILY_SAMPLES`] per type.
    pub tie_samples: Vec<(CombinatorialType, ConstraintTuple)>,
    /// Geometrically identical lines produced by distinct tuples.
    pub collisions: usize,
}

impl<S> FacetCensus<S> {
    /// No classification of the search sits on a wall of the space of
    /// heights.
    pub fn is_generic(&self) -> bool {
        self.accounting.iter().all(|a| a.ties == 0)
    }
}

// One curve edge in integer form, with every rational scaled by `scale`.
#[derive(Clone, Copy)]
struct EdgeData {
    // <normal, pi_j(V)> * scale = c
    normal: [i128; 3],
    c: i128,
    // <d, pi_j(V)> * scale - a0 is the position along the edge times |d|^2
    along: [i128; 3],
    a0: i128,
    len: Option<i128>,
    // First-order terms of c, a0 and len along the probe direction, in
    // their own common scale.
    dc: i128,
    da0: i128,
    dlen: Option<i128>,
}

fn dot3(a: &[i128; 3], b: &[i128; 3]) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[i128; 3], b: &[i128; 3]) -> [i128; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn det3(m: &[[i128; 3]; 3]) -> i128 {
    dot3(&m[0], &cross(&m[1], &m[2]))
}

fn det4(m: &[[i128; 4]; 4]) -> i128 {
    let mut total = 0;
    for c in 0..4 {
        if m[0][c] == 0 {
            continue;
        }
        let mut minor = [[0i128; 3]; 3];
        for r in 1..4 {
            for (k, &x) in m[r].iter().enumerate().filter(|&(cc, _)| cc != c).map(|(_, x)| x).enumerate() {
                minor[r - 1][k] = x;
            }
        }
        let sign = if c % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][c] * det3(&minor);
    }
    total
}

// Rank of an integer matrix by fraction-free elimination.
fn rank_small<const C: usize>(mut m: [[i128; C]; 4]) -> usize {
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..C {
        let Some(p) = (rank..4).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, p);
        for r in rank + 1..4 {
            for k in col + 1..C {
                m[r][k] = (m[rank][col] * m[r][k] - m[r][col] * m[rank][k]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == 4 {
            break;
        }
    }
    rank
}

// Closed interval of a real parameter, endpoints as fractions with positive denominators.
#[derive(Clone, Copy, Debug)]
struct Interval {
    lo: Option<(i128, i128)>,
    hi: Option<(i128, i128)>,
}

fn frac_cmp(a: (i128, i128), b: (i128, i128)) -> std::cmp::Ordering {
    (a.0 * b.1).cmp(&(b.0 * a.1))
}

fn frac(n: i128, d: i128) -> (i128, i128) {
    if d < 0 {
        (-n, -d)
    } else {
        (n, d)
    }
}

impl Interval {
    const ALL: Interval = Interval { lo: None, hi: None };

    fn meet(self, o: Interval) -> Interval {
        let lo = match (self.lo, o.lo) {
            (Some(a), Some(b)) => Some(if frac_cmp(a, b).is_ge() { a } else { b }),
            (a, b) => a.or(b),
        };
        let hi = match (self.hi, o.hi) {
            (Some(a), Some(b)) => Some(if frac_cmp(a, b).is_le() { a } else { b }),
            (a, b) => a.or(b),
        };
        Interval { lo, hi }
    }

    fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(a), Some(b)) if frac_cmp(a, b).is_gt())
    }
}

// Parameters `s` with `0 <= alpha + s beta <= len` (no upper bound for rays).
fn landing_interval(alpha: i128, beta: i128, len: Option<i128>) -> Option<Interval> {
    if beta == 0 {
        let ok = alpha >= 0 && len.is_none_or(|l| alpha <= l);
        return ok.then_some(Interval::ALL);
    }
    let at_zero = frac(-alpha, beta);
    let at_len = len.map(|l| frac(l - alpha, beta));
    Some(if beta > 0 { Interval { lo: Some(at_zero), hi: at_len } } else { Interval { lo: at_len, hi: Some(at_zero) } })
}

// Whether some point with legs `a`, `b` on edges `ea`, `eb` lands in both
// closed edges; pairs with parallel conditions are never pruned.
fn pair_feasible(ea: &EdgeData, eb: &EdgeData) -> bool {
    let u = cross(&ea.normal, &eb.normal);
    if u == [0, 0, 0] {
        return true;
    }
    // P solves normal_a . P = c_a, normal_b . P = c_b, u . P = 0, scaled by |u|^2.
    let m = [ea.normal, eb.normal, u];
    let d2 = det3(&m);
    let rhs = [ea.c, eb.c, 0];
    let col = |k: usize| {
        let mut mm = m;
        for r in 0..3 {
            mm[r][k] = rhs[r];
        }
        det3(&mm)
    };
    let p = [col(0), col(1), col(2)];
    // Along the line V = P + s u, scaled by d2 (sign of d2 is positive).
    let interval = |e: &EdgeData| {
        let alpha = dot3(&e.along, &p) - d2 * e.a0;
        let beta = dot3(&e.along, &u);
        landing_interval(alpha, beta, e.len.map(|l| l * d2))
    };
    match (interval(ea), interval(eb)) {
        (Some(x), Some(y)) => !x.meet(y).is_empty(),
        _ => false,
    }
}

// Unique solution, scaled: V1 = v1 / (det * scale), t = t / (det * scale).
struct RawLine {
    p1: usize,
    p2: usize,
    det: i128,
    v1: [i128; 3],
    t: i128,
}

enum Classified {
    None,
    Family,
    Outside,
    BadOrientation,
    Degenerate,
    Special,
    Line(RawLine),
}

struct Prepared {
    edges: [Vec<EdgeData>; 4],
    scale: BigInt,
}

/// Direction in the space of heights along which ties are probed, indexed
/// by global point.
pub fn probe_direction() -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    (0..LatticeSimplexConfig::get().points().len()).map(|_| rng.gen_range(-PROBE_RANGE..=PROBE_RANGE)).collect()
}

fn lcm_of_denominators<'a>(xs: impl Iterator<Item = &'a BigRational>) -> BigInt {
    xs.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn fitter(scale: BigInt, what: &'static str, facet: usize) -> impl Fn(&BigRational) -> Result<i128> {
    let scale = BigRational::from_integer(scale);
    move |x| {
        let v = (x * &scale).to_integer().to_i128().filter(|v| v.abs() < SCALED_BOUND);
        v.ok_or_else(|| Error::Overflow(format!("facet {facet}: {what} too large for the fast search")))
    }
}

fn prepare<S: Scalar>(facet: usize, curves: &QuinticCurveSet<S>) -> Result<Prepared> {
    let probe: Vec<S> = probe_direction().into_iter().map(S::from_i64).collect();
    let mut positions = Vec::with_capacity(4);
    let mut moved = Vec::with_capacity(4);
    for j in 0..4 {
        let inst = curves.get(facet, j);
        positions.push(inst.curve.vertices.iter().map(|v| v.position.clone().map(|x| x.to_big())).collect::<Vec<_>>());
        moved.push(inst.vertex_positions(&probe)?.into_iter().map(|p| p.map(|x| x.to_big())).collect::<Vec<_>>());
    }
    let scale = lcm_of_denominators(positions.iter().flatten().flatten());
    let fit = fitter(scale.clone(), "curve coordinates", facet);
    let dfit = fitter(lcm_of_denominators(moved.iter().flatten().flatten()), "probe coordinates", facet);
    let mut edges: [Vec<EdgeData>; 4] = Default::default();
    for j in 0..4 {
        let curve = &curves.get(facet, j).curve;
        for (e, edge) in curve.edges.iter().enumerate() {
            let d = edge.direction.map(i128::from);
            let n = [-d[1], d[0]];
            let affine = |pos: &[[BigRational; 2]],
                          fit: &dyn Fn(&BigRational) -> Result<i128>|
             -> Result<(i128, i128, Option<i128>)> {
                let b = [fit(&pos[edge.tail][0])?, fit(&pos[edge.tail][1])?];
                let len = match edge.head {
                    None => None,
                    Some(h) => Some(d[0] * (fit(&pos[h][0])? - b[0]) + d[1] * (fit(&pos[h][1])? - b[1])),
                };
                Ok((n[0] * b[0] + n[1] * b[1], d[0] * b[0] + d[1] * b[1], len))
            };
            let (c, a0, len) = affine(&positions[j], &fit)?;
            let (dc, da0, dlen) = affine(&moved[j], &dfit)?;
            debug_assert_eq!(curve.base(e).clone().map(|x| x.to_big()), positions[j][edge.tail]);
            edges[j].push(EdgeData {
                normal: FacetFrame::pullback(j, [-edge.direction[1], edge.direction[0]]).map(i128::from),
                c,
                along: FacetFrame::pullback(j, edge.direction).map(i128::from),
                a0,
                len,
                dc,
                da0,
                dlen,
            });
        }
    }
    Ok(Prepared { edges, scale })
}

// Lexicographic sign of `a + eps * b` for infinitesimal `eps > 0`.
fn lex_sign(a: i128, b: i128) -> i128 {
    if a != 0 {
        a.signum()
    } else {
        b.signum()
    }
}

fn position(on_edge: i128, beyond_end: Option<i128>) -> u8 {
    if on_edge < 0 {
        return 0;
    }
    if on_edge == 0 {
        return 1;
    }
    match beyond_end.map(i128::signum) {
        None | Some(-1) => 2,
        Some(0) => 1,
        _ => 0,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Outside,
    BadOrientation,
    Degenerate,
    Special,
    Line,
}

fn kind_of(locations: [u8; 4], t_sign: i128) -> Kind {
    if locations.contains(&0) {
        return Kind::Outside;
    }
    match t_sign {
        -1 => Kind::BadOrientation,
        0 => Kind::Degenerate,
        _ if locations.contains(&1) => Kind::Special,
        _ => Kind::Line,
    }
}

fn cramer(m: &[[i128; 4]; 4], rhs: &[i128; 4]) -> [i128; 4] {
    [0, 1, 2, 3].map(|k| {
        let mut mm = *m;
        for r in 0..4 {
            mm[r][k] = rhs[r];
        }
        det4(&mm)
    })
}

// Returns the class for the given heights and whether it differs from the
// class after moving the heights infinitesimally along the probe direction.
fn classify(
    first: [&EdgeData; 2],
    second: [&EdgeData; 2],
    delta: &[i128; 3],
    p1: usize,
    p2: usize,
) -> (Classified, bool) {
    let row = |e: &EdgeData, shifted: bool| {
        let s = if shifted { dot3(&e.normal, delta) } else { 0 };
        [e.normal[0], e.normal[1], e.normal[2], s]
    };
    let legs = [(first[0], false), (first[1], false), (second[0], true), (second[1], true)];
    let m = legs.map(|(e, s)| row(e, s));
    let rhs = legs.map(|(e, _)| e.c);
    let drhs = legs.map(|(e, _)| e.dc);
    let det = det4(&m);
    if det == 0 {
        let aug: [[i128; 5]; 4] = [0, 1, 2, 3].map(|r| [m[r][0], m[r][1], m[r][2], m[r][3], rhs[r]]);
        let both: [[i128; 6]; 4] = [0, 1, 2, 3].map(|r| [m[r][0], m[r][1], m[r][2], m[r][3], rhs[r], drhs[r]]);
        let rank = rank_small(m);
        let here = rank_small(aug) == rank;
        let moved = rank_small(both) == rank;
        let class = if here { Classified::Family } else { Classified::None };
        return (class, here != moved);
    }
    let z = cramer(&m, &rhs);
    let dz = cramer(&m, &drhs);
    let v1 = [z[0], z[1], z[2]];
    let dv1 = [dz[0], dz[1], dz[2]];
    let sign = det.signum();
    let mut here = [0u8; 4];
    let mut moved = [0u8; 4];
    for (k, (e, shifted)) in legs.iter().enumerate() {
        let s = if *shifted { 1 } else { 0 };
        let v = [0, 1, 2].map(|i| v1[i] + s * z[3] * delta[i]);
        let dv = [0, 1, 2].map(|i| dv1[i] + s * dz[3] * delta[i]);
        let q = (dot3(&e.along, &v) - det * e.a0) * sign;
        let dq = (dot3(&e.along, &dv) - det * e.da0) * sign;
        here[k] = position(q, e.len.map(|l| q - l * det.abs()));
        let beyond = e.len.zip(e.dlen).map(|(l, dl)| lex_sign(q - l * det.abs(), dq - dl * det.abs()));
        moved[k] = position(lex_sign(q, dq), beyond);
    }
    let kind = kind_of(here, (z[3] * sign).signum());
    let tie = kind != kind_of(moved, lex_sign(z[3] * sign, dz[3] * sign));
    let class = match kind {
        Kind::Outside => Classified::Outside,
        Kind::BadOrientation => Classified::BadOrientation,
        Kind::Degenerate => Classified::Degenerate,
        Kind::Special => Classified::Special,
        Kind::Line => Classified::Line(RawLine { p1, p2, det, v1, t: z[3] }),
    };
    (class, tie)
}

struct Chunk {
    counts: TypeAccounting,
    lines: Vec<RawLine>,
    families: Vec<(usize, usize)>,
    ties: Vec<(usize, usize)>,
}

struct TypeResult {
    counts: TypeAccounting,
    lines: Vec<RawLine>,
    families: Vec<(usize, usize)>,
    ties: Vec<(usize, usize)>,
}

fn search_type(prep: &Prepared, ctype: CombinatorialType) -> TypeResult {
    let ([a, b], [c, d]) = ctype.pairs();
    let n = CURVE_EDGES;
    let pairs = |x: usize, y: usize| -> Vec<usize> {
        (0..n * n).filter(|&p| pair_feasible(&prep.edges[x][p / n], &prep.edges[y][p % n])).collect()
    };
    let first = pairs(a, b);
    let second = pairs(c, d);
    let delta = ctype.bounded_direction().map(i128::from);
    let chunks: Vec<Chunk> = first
        .par_iter()
        .map(|&p1| {
            let mut chunk =
                Chunk { counts: TypeAccounting::default(), lines: Vec::new(), families: Vec::new(), ties: Vec::new() };
            let f = [&prep.edges[a][p1 / n], &prep.edges[b][p1 % n]];
            for &p2 in &second {
                let s = [&prep.edges[c][p2 / n], &prep.edges[d][p2 % n]];
                let (class, tie) = classify(f, s, &delta, p1, p2);
                if tie {
                    chunk.counts.ties += 1;
                    if chunk.ties.len() < FAMILY_SAMPLES {
                        chunk.ties.push((p1, p2));
                    }
                }
                match class {
                    Classified::None => chunk.counts.none += 1,
                    Classified::Family => {
                        chunk.counts.family += 1;
                        if chunk.families.len() < FAMILY_SAMPLES {
                            chunk.families.push((p1, p2));
                        }
                    }
                    Classified::Outside => chunk.counts.outside += 1,
                    Classified::BadOrientation => chunk.counts.bad_orientation += 1,
                    Classified::Degenerate => chunk.counts.degenerate += 1,
                    Classified::Special => chunk.counts.special += 1,
                    Classified::Line(raw) => {
                        chunk.counts.lines += 1;
                        chunk.lines.push(raw);
                    }
                }
            }
            chunk
        })
        .collect();
    let mut counts = TypeAccounting { ctype: ctype.name().to_string(), ..Default::default() };
    let total = (n * n * n * n) as u64;
    counts.pruned = total - (first.len() * second.len()) as u64;
    let mut lines = Vec::new();
    let mut families = Vec::new();
    let mut ties = Vec::new();
    for chunk in chunks {
        counts.add(&chunk.counts);
        lines.extend(chunk.lines);
        families.extend(chunk.families);
        ties.extend(chunk.ties);
    }
    families.truncate(FAMILY_SAMPLES);
    ties.truncate(FAMILY_SAMPLES);
    TypeResult { counts, lines, families, ties }
}

fn to_scalar<S: Scalar>(num: i128, den: &BigInt) -> Result<S> {
    S::from_big(&BigRational::new(BigInt::from(num), den.clone()))
        .ok_or_else(|| Error::Overflow("line coordinate does not fit the scalar type".into()))
}

fn edges_of(ctype: CombinatorialType, p1: usize, p2: usize) -> [usize; 4] {
    let ([a, b], [c, d]) = ctype.pairs();
    let mut edges = [0; 4];
    edges[a] = p1 / CURVE_EDGES;
    edges[b] = p1 % CURVE_EDGES;
    edges[c] = p2 / CURVE_EDGES;
    edges[d] = p2 % CURVE_EDGES;
    edges
}

fn build_line<S: Scalar>(
    facet: usize,
    ctype: CombinatorialType,
    raw: &RawLine,
    scale: &BigInt,
    curves: &QuinticCurveSet<S>,
) -> Result<TropicalLine<S>> {
    let den = scale * BigInt::from(raw.det);
    let v1 = [to_scalar::<S>(raw.v1[0], &den)?, to_scalar(raw.v1[1], &den)?, to_scalar(raw.v1[2], &den)?];
    let t: S = to_scalar(raw.t, &den)?;
    let delta = ctype.bounded_direction();
    let v2 = [0, 1, 2].map(|k| v1[k].clone() + t.clone() * S::from_i64(delta[k]));
    let edges = edges_of(ctype, raw.p1, raw.p2);
    let legs = [0, 1, 2, 3].map(|j| {
        let curve = &curves.get(facet, j).curve;
        let edge = &curve.edges[edges[j]];
        let v = if ctype.at_second(j) { &v2 } else { &v1 };
        LegIncidence {
            leg: j,
            edge: edges[j],
            kind: edge.kind,
            direction: edge.direction,
            landing: FacetFrame::project(j, v),
        }
    });
    Ok(TropicalLine { facet, ctype, v1, v2, t, legs, flags: LineFlags::default() })
}

/// All rigid, non-special lines of positive edge length in facet `facet`
/// over every combinatorial type and every edge tuple.
pub fn enumerate_facet<S: Scalar>(facet: usize, curves: &QuinticCurveSet<S>) -> Result<FacetCensus<S>> {
    let prep = prepare(facet, curves)?;
    let mut accounting = Vec::new();
    let mut lines = Vec::new();
    let mut family_samples = Vec::new();
    let mut tie_samples = Vec::new();
    for ctype in CombinatorialType::ALL {
        let r = search_type(&prep, ctype);
        accounting.push(r.counts);
        for raw in &r.lines {
            lines.push(build_line(facet, ctype, raw, &prep.scale, curves)?);
        }
        let tuple = |(p1, p2): (usize, usize)| (ctype, ConstraintTuple { facet, edges: edges_of(ctype, p1, p2) });
        family_samples.extend(r.families.into_iter().map(tuple));
        tie_samples.extend(r.ties.into_iter().map(tuple));
    }
    lines.sort_by(|x, y| (&x.v1, &x.v2, x.ctype).cmp(&(&y.v1, &y.v2, y.ctype)));
    let before = lines.len();
    lines.dedup_by(|x, y| x.v1 == y.v1 && x.v2 == y.v2 && x.ctype == y.ctype);
    Ok(FacetCensus { facet, collisions: before - lines.len(), lines, accounting, family_samples, tie_samples })
}
