use super::ConflictGraph;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndependentSetMode {
    /// Repeatedly take a vertex of minimum remaining degree, lowest id first.
    Greedy,
    /// Maximum independent set by branch and bound, for graphs with at most
    /// `limit` nodes.
    Exact { limit: usize },
}

/// An independent set, sorted and verified against the graph.
pub fn independent_set(g: &ConflictGraph, mode: IndependentSetMode) -> Result<Vec<usize>> {
    let mut set = match mode {
        IndependentSetMode::Greedy => greedy(g),
        IndependentSetMode::Exact { limit } => {
            if g.len() > limit {
                return Err(Error::LimitExceeded { size: g.len(), limit });
            }
            exact(g)
        }
    };
    set.sort_unstable();
    assert!(g.is_independent(&set), "independent set contains an edge");
    Ok(set)
}

fn greedy(g: &ConflictGraph) -> Vec<usize> {
    let n = g.len();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<(usize, usize)>> =
        (0..n).map(|v| std::cmp::Reverse((degree[v], v))).collect();
    let mut out = Vec::new();
    while let Some(std::cmp::Reverse((d, v))) = heap.pop() {
        if !alive[v] || d != degree[v] {
            continue;
        }
        out.push(v);
        alive[v] = false;
        for &u in g.neighbors(v) {
            if !alive[u] {
                continue;
            }
            alive[u] = false;
            for &w in g.neighbors(u) {
                if alive[w] {
                    degree[w] -= 1;
                    heap.push(std::cmp::Reverse((degree[w], w)));
                }
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        for v in 0..n {
            b.insert(v);
        }
        b
    }

    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn minus(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }

    fn and_count(&self, o: &Bits) -> usize {
        self.0.iter().zip(&o.0).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b))
    }
}

struct Search {
    closed: Vec<Bits>,
    best: Vec<usize>,
}

impl Search {
    fn run(&mut self, cand: Bits, chosen: &mut Vec<usize>) {
        if chosen.len() + cand.count() <= self.best.len() {
            return;
        }
        // Vertex of minimum degree among the candidates; some maximum set
        // contains it or one of its neighbours.
        let Some(v) = cand.iter().min_by_key(|&v| (self.closed[v].and_count(&cand), v)) else {
            self.best = chosen.clone();
            return;
        };
        let branch: Vec<usize> = if self.closed[v].and_count(&cand) <= 2 {
            vec![v]
        } else {
            cand.iter().filter(|&u| self.closed[v].0[u / 64] >> (u % 64) & 1 == 1).collect()
        };
        for u in branch {
            chosen.push(u);
            let next = cand.minus(&self.closed[u]);
            self.run(next, chosen);
            chosen.pop();
        }
    }
}

fn exact(g: &ConflictGraph) -> Vec<usize> {
    let n = g.len();
    let closed = (0..n)
        .map(|v| {
            let mut b = Bits::empty(n);
            b.insert(v);
            for &u in g.neighbors(v) {
                b.insert(u);
            }
            b
        })
        .collect();
    let mut search = Search { closed, best: greedy(g) };
    search.run(Bits::full(n), &mut Vec::new());
    search.best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(g: &ConflictGraph) -> usize {
        let n = g.len();
        (0u32..1 << n)
            .filter(|mask| {
                let set: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                g.is_independent(&set)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn small_cases() {
        let empty = ConflictGraph::new(4);
        assert_eq!(independent_set(&empty, IndependentSetMode::Greedy).unwrap(), vec![0, 1, 2, 3]);
        let tri = ConflictGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        assert_eq!(independent_set(&tri, IndependentSetMode::Greedy).unwrap(), vec![0]);
        assert_eq!(independent_set(&tri, IndependentSetMode::Exact { limit: 10 }).unwrap().len(), 1);
        assert!(matches!(
            independent_set(&tri, IndependentSetMode::Exact { limit: 2 }),
            Err(Error::LimitExceeded { size: 3, limit: 2 })
        ));
    }

    #[test]
    fn exact_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(1..=14);
            let p = rng.gen_range(0.1..0.7);
            let edges: Vec<(usize, usize)> =
                (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(p)).collect();
            let g = ConflictGraph::from_edges(n, edges);
            let set = independent_set(&g, IndependentSetMode::Exact { limit: 64 }).unwrap();
            assert_eq!(set.len(), brute_force(&g));
            let greedy = independent_set(&g, IndependentSetMode::Greedy).unwrap();
            assert!(greedy.len() <= set.len());
        }
    }
}
