//! Maximum cycle mean by Karp's algorithm, in O(V) memory.

use std::cmp::Ordering;

use super::entropy::strong_components;

/// Nonnegative rational `num / den` with `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub fn new(num: i64, den: i64) -> Ratio {
        assert!(den > 0, "denominator must be positive");
        let g = gcd(num.unsigned_abs(), den as u64).max(1) as i64;
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        ((self.num as i128) * (other.den as i128)).cmp(&((other.num as i128) * (self.den as i128)))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

const NONE: i64 = i64::MIN;

/// Largest mean edge weight over all cycles of the graph on `n` vertices, or
/// `None` if the graph is acyclic.
pub fn max_cycle_mean(n: usize, edges: &[(usize, usize, i64)]) -> Option<Ratio> {
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v, _) in edges {
        succ[u].push(v);
    }
    let mut best: Option<Ratio> = None;
    for comp in strong_components(&succ) {
        let mut local = vec![usize::MAX; n];
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
        let inner: Vec<(usize, usize, i64)> = edges
            .iter()
            .filter(|&&(u, v, _)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v, w)| (local[u], local[v], w))
            .collect();
        if inner.is_empty() {
            continue;
        }
        let r = karp(comp.len(), &inner);
        best = Some(best.map_or(r, |b| b.max(r)));
    }
    best
}

fn relax(prev: &[i64], edges: &[(usize, usize, i64)], next: &mut [i64]) {
    next.iter_mut().for_each(|x| *x = NONE);
    for &(u, v, w) in edges {
        if prev[u] != NONE {
            next[v] = next[v].max(prev[u] + w);
        }
    }
}

/// Karp on a strongly connected graph: two sweeps, the first computing the
/// length-n row, the second folding in each earlier row.
fn karp(n: usize, edges: &[(usize, usize, i64)]) -> Ratio {
    let mut row = vec![NONE; n];
    row[0] = 0;
    let mut next = vec![NONE; n];
    for _ in 0..n {
        relax(&row, edges, &mut next);
        std::mem::swap(&mut row, &mut next);
    }
    let last = row;
    // min over k of (D_n(v) - D_k(v)) / (n - k), per v
    let mut worst: Vec<Option<Ratio>> = vec![None; n];
    let mut row = vec![NONE; n];
    row[0] = 0;
    for k in 0..n {
        for v in 0..n {
            if last[v] != NONE && row[v] != NONE {
                let r = Ratio::new(last[v] - row[v], (n - k) as i64);
                worst[v] = Some(worst[v].map_or(r, |w| w.min(r)));
            }
        }
        relax(&row, edges, &mut next);
        std::mem::swap(&mut row, &mut next);
    }
    worst
        .into_iter()
        .flatten()
        .max()
        .expect("strongly connected graph with an edge has a cycle")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_loop() {
        assert_eq!(max_cycle_mean(1, &[(0, 0, 3)]), Some(Ratio::new(3, 1)));
    }

    #[test]
    fn two_cycles() {
        // cycle 0-1-0 mean 1/2, loop at 2 mean 0, joined one way
        let e = [(0, 1, 1), (1, 0, 0), (1, 2, 5), (2, 2, 0)];
        assert_eq!(max_cycle_mean(3, &e), Some(Ratio::new(1, 2)));
    }

    #[test]
    fn acyclic() {
        assert_eq!(max_cycle_mean(2, &[(0, 1, 1)]), None);
    }

    #[test]
    fn indicator_extremes() {
        let e: Vec<(usize, usize, i64)> = vec![(0, 1, 1), (1, 2, 1), (2, 0, 1), (1, 1, 1)];
        assert_eq!(max_cycle_mean(3, &e), Some(Ratio::new(1, 1)));
        let z: Vec<(usize, usize, i64)> = e.iter().map(|&(u, v, _)| (u, v, 0)).collect();
        assert_eq!(max_cycle_mean(3, &z), Some(Ratio::new(0, 1)));
    }

    #[test]
    fn flower_petals() {
        // petals of length 3 (weight 2) and 5 (weight 1) through vertex 0
        let mut e = vec![(0, 1, 1), (1, 2, 1), (2, 0, 0)];
        e.extend([(0, 3, 1), (3, 4, 0), (4, 5, 0), (5, 6, 0), (6, 0, 0)]);
        assert_eq!(max_cycle_mean(7, &e), Some(Ratio::new(2, 3)));
    }
}
