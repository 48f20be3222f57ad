//! Largest frequency of a marker neighbourhood over invariant measures.
//!
//! On the flower graph of a specification, invariant measures are carried
//! by cycles, so `sup_mu mu(G)` is the maximum cycle mean of the indicator
//! of `G` on vertices.

use crate::metric::cycle_mean::{max_cycle_mean, Ratio};

/// Maximum cycle mean of a vertex indicator over a graph given by successor
/// lists.
pub fn ocap(succ: &[Vec<usize>], indicator: &[bool]) -> Option<Ratio> {
    let edges: Vec<(usize, usize, i64)> = succ
        .iter()
        .enumerate()
        .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v, indicator[u] as i64)))
        .collect();
    max_cycle_mean(succ.len(), &edges)
}

/// Flower with one petal per length in `lens`; vertex `i` of a petal of
/// length `n` lies in `G` iff a marker start (at `0` or `n`) is within
/// `radius`.
pub fn flower_graph(lens: &[usize], radius: usize) -> (Vec<Vec<usize>>, Vec<bool>) {
    let mut succ: Vec<Vec<usize>> = vec![Vec::new()];
    let mut ind = vec![true];
    for &n in lens {
        let mut prev = 0;
        for i in 1..n {
            let v = succ.len();
            succ.push(Vec::new());
            ind.push(i.min(n - i) <= radius);
            succ[prev].push(v);
            prev = v;
        }
        succ[prev].push(0);
    }
    (succ, ind)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OcapReport {
    pub ratio: Ratio,
    /// `6 P / N_min`.
    pub bound: f64,
    pub lens: Vec<usize>,
}

impl OcapReport {
    pub fn holds(&self) -> bool {
        self.ratio.value() <= self.bound && self.bound < 0.5
    }
}

/// `ocap(G)` for `G` the points within `3P` of a marker, on the flower of
/// the shortest and longest generating words (the mean of a petal only
/// falls as it lengthens).
pub fn ocap_bound(lens: &[usize], big_p: usize, n_min: usize) -> Option<OcapReport> {
    let lo = *lens.iter().min()?;
    let hi = *lens.iter().max()?;
    let extremes: Vec<usize> = if lo == hi { vec![lo] } else { vec![lo, hi] };
    let (succ, ind) = flower_graph(&extremes, 3 * big_p);
    let ratio = ocap(&succ, &ind)?;
    Some(OcapReport {
        ratio,
        bound: 6.0 * big_p as f64 / n_min as f64,
        lens: extremes,
    })
}
