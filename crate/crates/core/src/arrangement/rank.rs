use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::ConflictGraph;

const PRIMES: [u64; 4] = [2147483647, 2147483629, 2147483587, 2147483579];

/// Ranks of the adjacency matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ranks {
    pub nodes: usize,
    /// Rank over `Q`. Always a lower bound; exact when `rational_exact`.
    pub rational: usize,
    /// Full rank modulo a prime, or a kernel basis of matching dimension
    /// verified over `Z`.
    pub rational_exact: bool,
    pub gf2: usize,
}

impl Ranks {
    pub fn full_rational(&self) -> bool {
        self.rational_exact && self.rational == self.nodes
    }

    pub fn full_gf2(&self) -> bool {
        self.gf2 == self.nodes
    }
}

fn components(g: &ConflictGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.len()];
    let mut out = Vec::new();
    for s in 0..g.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            for &w in g.neighbors(comp[k]) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Rank of a dense 0/1 matrix over GF(2).
pub fn rank_gf2(rows: &[Vec<u8>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else { return 0 };
    let words = width.div_ceil(64);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut bits = vec![0u64; words];
            for (c, &x) in r.iter().enumerate() {
                if x & 1 == 1 {
                    bits[c / 64] |= 1 << (c % 64);
                }
            }
            bits
        })
        .collect();
    let mut rank = 0;
    for c in 0..width {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..m.len()).find(|&r| m[r][w] & bit != 0) else { continue };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[w] & bit != 0 {
                for (x, y) in row.iter_mut().zip(&pivot).skip(w) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank modulo the prime `P < 2^32` by forward elimination.
pub fn rank_mod<const P: u64>(rows: &[Vec<u8>]) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| u64::from(x) % P).collect()).collect();
    let mut rank = 0;
    for c in 0..width {
        let Some(r) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, r);
        let inv = pow_mod(m[rank][c], P - 2, P);
        let pivot = std::mem::take(&mut m[rank]);
        for row in m.iter_mut().skip(rank + 1) {
            if row[c] == 0 {
                continue;
            }
            let f = (P - row[c]) * inv % P;
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                *x = (*x + f * y) % P;
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Reduced row echelon form modulo the prime `P < 2^32`: pivot columns and
/// the rows of the reduced matrix.
pub fn rref_mod<const P: u64>(rows: &[Vec<u8>]) -> (Vec<usize>, Vec<Vec<u64>>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| u64::from(x) % P).collect()).collect();
    let mut pivots = Vec::new();
    for c in 0..width {
        let rank = pivots.len();
        let Some(r) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, r);
        let inv = pow_mod(m[rank][c], P - 2, P);
        for x in m[rank].iter_mut().skip(c) {
            *x = *x * inv % P;
        }
        let pivot = std::mem::take(&mut m[rank]);
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank || row[c] == 0 {
                continue;
            }
            let f = P - row[c];
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                *x = (*x + f * y) % P;
            }
        }
        m[rank] = pivot;
        pivots.push(c);
    }
    m.truncate(pivots.len());
    (pivots, m)
}

fn rref_any(rows: &[Vec<u8>], p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    match p {
        2147483647 => rref_mod::<2147483647>(rows),
        2147483629 => rref_mod::<2147483629>(rows),
        2147483587 => rref_mod::<2147483587>(rows),
        _ => rref_mod::<2147483579>(rows),
    }
}

// Smallest-denominator rational congruent to `a` modulo `m`, when one with
// numerator and denominator below sqrt(m / 2) exists.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    (!t1.is_zero() && t1.abs() <= bound).then(|| BigRational::new(r1, t1))
}

fn crt(residues: &[u64], primes: &[u64]) -> (BigInt, BigInt) {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (&r, &p) in residues.iter().zip(primes) {
        let p_big = BigInt::from(p);
        // x + m * k = r (mod p)
        let m_mod = (&m % &p_big).iter_u64_digits().next().unwrap_or(0);
        let x_mod = (&x % &p_big).iter_u64_digits().next().unwrap_or(0);
        let k = (r + p - x_mod) % p * pow_mod(m_mod, p - 2, p) % p;
        x += &m * BigInt::from(k);
        m *= p_big;
    }
    (x, m)
}

// Rational kernel basis from the common echelon form modulo several primes,
// verified exactly against the matrix.
fn certify_kernel(rows: &[Vec<u8>], pivots: &[usize], forms: &[Vec<Vec<u64>>], primes: &[u64]) -> bool {
    let width = rows[0].len();
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    for &f in &free {
        let mut x = vec![BigRational::zero(); width];
        x[f] = BigRational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            let residues: Vec<u64> = forms.iter().map(|form| form[i][f]).collect();
            let (a, m) = crt(&residues, primes);
            let Some(q) = rational_reconstruction(&a, &m) else { return false };
            x[pc] = -q;
        }
        let zero = rows.iter().all(|r| {
            r.iter()
                .zip(&x)
                .filter(|(a, _)| **a != 0)
                .fold(BigRational::zero(), |acc, (a, v)| acc + v * BigInt::from(*a))
                .is_zero()
        });
        if !zero {
            return false;
        }
    }
    true
}

/// Rank of a dense 0/1 matrix over `Q`, and whether it is certified exact.
pub fn rank_rational(rows: &[Vec<u8>]) -> (usize, bool) {
    let Some(width) = rows.first().map(Vec::len) else { return (0, true) };
    let full = rows.len().min(width);
    let quick = rank_mod::<{ PRIMES[0] }>(rows);
    if quick == full {
        return (quick, true);
    }
    let forms: Vec<(Vec<usize>, Vec<Vec<u64>>)> = PRIMES.iter().map(|&p| rref_any(rows, p)).collect();
    let best = forms.iter().map(|(piv, _)| piv.len()).max().unwrap_or(0);
    if best == full {
        return (best, true);
    }
    let reference = forms.iter().find(|(piv, _)| piv.len() == best).map(|(piv, _)| piv.clone()).unwrap_or_default();
    let (primes, reduced): (Vec<u64>, Vec<Vec<Vec<u64>>>) =
        PRIMES.iter().zip(forms).filter(|(_, (piv, _))| *piv == reference).map(|(&p, (_, m))| (p, m)).unzip();
    (best, certify_kernel(rows, &reference, &reduced, &primes))
}

/// Ranks of the adjacency matrix over `Q` and GF(2), computed per
/// connected component.
pub fn adjacency_rank(g: &ConflictGraph) -> Ranks {
    let mut ranks = Ranks { nodes: g.len(), rational: 0, rational_exact: true, gf2: 0 };
    for comp in components(g) {
        if comp.len() == 1 {
            continue;
        }
        let m = g.induced(&comp).matrix();
        let (q, exact) = rank_rational(&m);
        ranks.rational += q;
        ranks.rational_exact &= exact;
        ranks.gf2 += rank_gf2(&m);
    }
    ranks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        assert_eq!(
            adjacency_rank(&ConflictGraph::new(5)),
            Ranks { nodes: 5, rational: 0, rational_exact: true, gf2: 0 }
        );
        let edge = adjacency_rank(&ConflictGraph::from_edges(2, [(0, 1)]));
        assert_eq!((edge.rational, edge.gf2), (2, 2));
        // Triangle: det = 2, so full over Q and rank 2 over GF(2).
        let tri = adjacency_rank(&ConflictGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]));
        assert_eq!((tri.rational, tri.rational_exact, tri.gf2), (3, true, 2));
        // 4-cycle: rank 2 over both fields.
        let c4 = adjacency_rank(&ConflictGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]));
        assert_eq!((c4.rational, c4.rational_exact, c4.gf2), (2, true, 2));
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(PRIMES[0]) * BigInt::from(PRIMES[1]);
        let q = BigRational::new(BigInt::from(-7), BigInt::from(12));
        let a = (q.numer() * BigInt::from(12).modinv(&m).unwrap()).mod_floor(&m);
        assert_eq!(rational_reconstruction(&a, &m), Some(q));
        let (x, mm) = crt(&[3, 5], &PRIMES[..2]);
        assert_eq!(&x % BigInt::from(PRIMES[0]), BigInt::from(3));
        assert_eq!(&x % BigInt::from(PRIMES[1]), BigInt::from(5));
        assert_eq!(mm, m);
    }
}
