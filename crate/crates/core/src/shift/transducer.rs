//! Letter-to-letter transducers and the pair-graph injectivity decision.
//!
//! A transducer reads a bi-infinite input sequence along a labelled graph and
//! emits one output letter per edge. When the input determines the state
//! sequence, the induced point map is injective iff every bi-infinite path in
//! the pair graph (pairs of states fed equal outputs) carries equal inputs.

use std::collections::{HashMap, VecDeque};

use super::word::Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub input: Symbol,
    pub output: Symbol,
    pub target: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Transducer {
    pub edges: Vec<Vec<Edge>>,
}

/// Two finite input words with identical outputs along a non-diagonal
/// bi-infinite pair path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWitness {
    pub left: Vec<Symbol>,
    pub right: Vec<Symbol>,
    pub output: Vec<Symbol>,
}

#[derive(Clone, Debug)]
pub struct InjectivityReport {
    pub injective: bool,
    pub pair_states: usize,
    pub core_states: usize,
    pub witness: Option<PairWitness>,
}

impl Transducer {
    pub fn with_states(n: usize) -> Self {
        Transducer {
            edges: vec![Vec::new(); n],
        }
    }

    pub fn state_count(&self) -> usize {
        self.edges.len()
    }

    pub fn add_edge(&mut self, from: usize, input: Symbol, output: Symbol, target: usize) {
        self.edges[from].push(Edge {
            input,
            output,
            target,
        });
    }

    /// Decides injectivity on bi-infinite inputs over every state pair.
    pub fn check_injective(&self) -> InjectivityReport {
        let n = self.state_count();
        let seeds: Vec<(usize, usize)> = (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).collect();
        self.check_injective_from(&seeds)
    }

    /// Same decision restricted to pair paths through the forward closure of
    /// `seeds`; the caller guarantees every non-diagonal pair path visits it.
    pub fn check_injective_from(&self, seeds: &[(usize, usize)]) -> InjectivityReport {
        self.pair_decision(seeds, |e, f| (e.output == f.output).then_some((e.input, f.input, e.output)))
    }

    /// Decides whether equal bi-infinite inputs always give equal outputs.
    /// In the report, `left`/`right` of a witness are the two outputs and
    /// `output` the shared input.
    pub fn check_functional_from(&self, seeds: &[(usize, usize)]) -> InjectivityReport {
        self.pair_decision(seeds, |e, f| (e.input == f.input).then_some((e.output, f.output, e.input)))
    }

    fn pair_decision(
        &self,
        seeds: &[(usize, usize)],
        label: impl Fn(&Edge, &Edge) -> Option<(Symbol, Symbol, Symbol)>,
    ) -> InjectivityReport {
        let mut id: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        // (compared_p, compared_q, shared, target pair id)
        let mut out: PairEdges = Vec::new();
        let mut queue = VecDeque::new();
        for &s in seeds {
            if let std::collections::hash_map::Entry::Vacant(v) = id.entry(s) {
                v.insert(pairs.len());
                pairs.push(s);
                out.push(Vec::new());
                queue.push_back(s);
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let here = id[&(p, q)];
            for e in &self.edges[p] {
                for f in &self.edges[q] {
                    let Some((a, b, o)) = label(e, f) else { continue };
                    let t = (e.target, f.target);
                    let tid = match id.get(&t) {
                        Some(&i) => i,
                        None => {
                            let i = pairs.len();
                            id.insert(t, i);
                            pairs.push(t);
                            out.push(Vec::new());
                            queue.push_back(t);
                            i
                        }
                    };
                    out[here].push((a, b, o, tid));
                }
            }
        }
        let total = pairs.len();
        let alive = bi_infinite_core(&out);
        let core_states = alive.iter().filter(|&&b| b).count();
        for v in 0..total {
            if !alive[v] {
                continue;
            }
            for (k, &(a, b, _, t)) in out[v].iter().enumerate() {
                if alive[t] && a != b {
                    return InjectivityReport {
                        injective: false,
                        pair_states: total,
                        core_states,
                        witness: Some(witness_through(&out, &alive, v, k)),
                    };
                }
            }
        }
        InjectivityReport {
            injective: true,
            pair_states: total,
            core_states,
            witness: None,
        }
    }
}

type PairEdges = Vec<Vec<(Symbol, Symbol, Symbol, usize)>>;

/// Vertices lying on bi-infinite paths.
fn bi_infinite_core(out: &PairEdges) -> Vec<bool> {
    let n = out.len();
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, es) in out.iter().enumerate() {
        outdeg[v] = es.len();
        for &(_, _, _, t) in es {
            indeg[t] += 1;
            pred[t].push(v);
        }
    }
    let mut alive = vec![true; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0 || outdeg[v] == 0).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &(_, _, _, t) in &out[v] {
            if alive[t] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
        for &p in &pred[v] {
            if alive[p] {
                outdeg[p] -= 1;
                if outdeg[p] == 0 {
                    queue.push_back(p);
                }
            }
        }
    }
    alive
}

fn witness_through(out: &PairEdges, alive: &[bool], v: usize, k: usize) -> PairWitness {
    const REACH: usize = 8;
    let n = out.len();
    let mut pred: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (u, es) in out.iter().enumerate() {
        if !alive[u] {
            continue;
        }
        for (i, &(_, _, _, t)) in es.iter().enumerate() {
            if alive[t] {
                pred[t].push((u, i));
            }
        }
    }
    let mut back = Vec::new();
    let mut cur = v;
    for _ in 0..REACH {
        let Some(&(u, i)) = pred[cur].first() else { break };
        back.push((u, i));
        cur = u;
    }
    back.reverse();
    let mut path = back;
    path.push((v, k));
    let mut cur = out[v][k].3;
    for _ in 0..REACH {
        let Some(i) = out[cur].iter().position(|&(_, _, _, t)| alive[t]) else { break };
        path.push((cur, i));
        cur = out[cur][i].3;
    }
    let mut w = PairWitness {
        left: Vec::new(),
        right: Vec::new(),
        output: Vec::new(),
    };
    for (u, i) in path {
        let (a, b, o, _) = out[u][i];
        w.left.push(a);
        w.right.push(b);
        w.output.push(o);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full_shift_code(k: u16, map: impl Fn(u16) -> u16) -> Transducer {
        let mut t = Transducer::with_states(1);
        for s in 0..k {
            t.add_edge(0, Symbol(s), Symbol(map(s)), 0);
        }
        t
    }

    #[test]
    fn identity_is_injective() {
        let r = full_shift_code(2, |s| s).check_injective();
        assert!(r.injective);
        assert!(r.witness.is_none());
    }

    #[test]
    fn collapse_is_not_injective() {
        let r = full_shift_code(2, |_| 0).check_injective();
        assert!(!r.injective);
        let w = r.witness.unwrap();
        assert_ne!(w.left, w.right);
        assert!(w.left.contains(&Symbol(0)) || w.right.contains(&Symbol(0)));
    }

    #[test]
    fn transient_difference_is_injective() {
        // Two states that merge: differing inputs only on a non-recurrent path.
        // State 0 loops on 0/0; state 1 -> 0 on 1/0. Pair (1,0) never recurs.
        let mut t = Transducer::with_states(2);
        t.add_edge(0, Symbol(0), Symbol(0), 0);
        t.add_edge(1, Symbol(1), Symbol(0), 0);
        assert!(t.check_injective().injective);
    }

    #[test]
    fn shift_by_one_code_is_injective() {
        // Output the previous input letter: state = last letter.
        let mut t = Transducer::with_states(2);
        for p in 0..2u16 {
            for s in 0..2u16 {
                t.add_edge(p as usize, Symbol(s), Symbol(p), s as usize);
            }
        }
        assert!(t.check_injective().injective);
    }

    #[test]
    fn xor_code_is_not_injective() {
        // x_i xor x_{i-1}: 2-to-1 on points.
        let mut t = Transducer::with_states(2);
        for p in 0..2u16 {
            for s in 0..2u16 {
                t.add_edge(p as usize, Symbol(s), Symbol(p ^ s), s as usize);
            }
        }
        assert!(!t.check_injective().injective);
    }

    #[test]
    fn functional_decision() {
        let id = full_shift_code(2, |s| s);
        assert!(id.check_functional_from(&[(0, 0)]).injective);
        // two loops reading 0, one writing 0 and one writing 1
        let mut t = Transducer::with_states(2);
        t.add_edge(0, Symbol(0), Symbol(0), 0);
        t.add_edge(1, Symbol(0), Symbol(1), 1);
        let r = t.check_functional_from(&[(0, 1)]);
        assert!(!r.injective);
        assert_ne!(r.witness.unwrap().left, vec![]);
    }
}
