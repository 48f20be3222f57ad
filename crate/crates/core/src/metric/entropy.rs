use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::shift::Sft;

const TOLERANCE: f64 = 1e-13;
const MAX_ITERATIONS: usize = 1_000_000;

/// Natural logarithm of a big integer; `-inf` for zero.
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    top.to_f64().expect("64 bits fit").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Strongly connected components (Tarjan, iterative).
pub fn strong_components(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0usize;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < succ[v].len() {
                let w = succ[v][*i];
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("component on stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// Spectral radius of a nonnegative matrix given by weighted successor lists,
/// bracketed by Collatz-Wielandt bounds on each strong component.
pub fn spectral_radius(succ: &[Vec<(usize, f64)>]) -> f64 {
    let plain: Vec<Vec<usize>> = succ.iter().map(|es| es.iter().map(|&(j, _)| j).collect()).collect();
    let mut best = 0.0f64;
    for comp in strong_components(&plain) {
        let mut local = vec![usize::MAX; succ.len()];
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
        let edges: Vec<Vec<(usize, f64)>> = comp
            .iter()
            .map(|&v| {
                succ[v]
                    .iter()
                    .filter(|&&(j, _)| local[j] != usize::MAX)
                    .map(|&(j, w)| (local[j], w))
                    .collect()
            })
            .collect();
        if edges.iter().all(Vec::is_empty) {
            continue;
        }
        best = best.max(irreducible_radius(&edges));
    }
    best
}

/// Power iteration on `A + I` (primitive whenever `A` is irreducible).
fn irreducible_radius(edges: &[Vec<(usize, f64)>]) -> f64 {
    let n = edges.len();
    let mut x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    for _ in 0..MAX_ITERATIONS {
        for (i, es) in edges.iter().enumerate() {
            y[i] = x[i] + es.iter().map(|&(j, w)| w * x[j]).sum::<f64>();
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let q = y[i] / x[i];
            lo = lo.min(q);
            hi = hi.max(q);
        }
        let top = y.iter().cloned().fold(0.0, f64::max);
        for i in 0..n {
            x[i] = y[i] / top;
        }
        if hi - lo <= TOLERANCE * hi {
            return (lo + hi) / 2.0 - 1.0;
        }
    }
    panic!("power iteration did not converge");
}

/// Topological entropy: log of the Perron root of the presentation graph.
pub fn entropy(x: &Sft) -> f64 {
    let succ: Vec<Vec<(usize, f64)>> = (0..x.vertex_count())
        .map(|v| x.successors(v).iter().map(|&(_, j)| (j, 1.0)).collect())
        .collect();
    spectral_radius(&succ).ln()
}

/// `(1/n) log #L_n(X)`.
pub fn growth_entropy(x: &Sft, n: usize) -> f64 {
    assert!(n >= 1, "growth entropy needs n >= 1");
    ln_big(&x.count_words(n)) / n as f64
}

/// Entropy of the free concatenation shift of a uniquely decodable set of
/// words, `count` of them of each length: the root `h` of
/// `sum count * e^{-length h} = 1`.
pub fn flower_entropy(counts: &[(usize, BigUint)]) -> f64 {
    let terms: Vec<(f64, f64)> = counts
        .iter()
        .filter(|(len, c)| *len > 0 && !c.is_zero())
        .map(|(len, c)| (*len as f64, ln_big(c)))
        .collect();
    if terms.is_empty() {
        return 0.0;
    }
    let f = |h: f64| terms.iter().map(|&(n, lc)| (lc - n * h).exp()).sum::<f64>();
    if f(0.0) <= 1.0 {
        return 0.0;
    }
    let total = terms
        .iter()
        .map(|&(_, lc)| lc)
        .fold(f64::NEG_INFINITY, |a, b| a.max(b))
        + (terms.len() as f64).ln();
    let min_len = terms.iter().map(|&(n, _)| n).fold(f64::INFINITY, f64::min);
    let (mut lo, mut hi) = (0.0f64, total / min_len + 1e-9);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
