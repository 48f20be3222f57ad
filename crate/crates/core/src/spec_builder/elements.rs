//! Automata accepting canonical element windows that avoid a list of
//! forbidden placements.

use std::collections::HashMap;

use super::dfa::LayeredDfa;
use crate::error::{Error, Result};
use crate::shift::{Sft, Symbol};

/// Placements a window must avoid. Indices are window indices, so index
/// `reach` is coordinate 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Exclusions {
    /// `(start, w)`: the window must not carry `w` at `start`.
    pub fixed: Vec<(usize, Vec<Symbol>)>,
    /// `(w, lo, hi)`: `w` must not occur starting anywhere in `lo..=hi`.
    pub occurrences: Vec<(Vec<Symbol>, usize, usize)>,
}

impl Exclusions {
    pub fn extend(&mut self, other: Exclusions) {
        self.fixed.extend(other.fixed);
        self.occurrences.extend(other.occurrences);
    }

    /// First violated placement in a concrete window, as a start index.
    pub fn first_hit(&self, window: &[Symbol]) -> Option<usize> {
        let fixed = self
            .fixed
            .iter()
            .filter(|(s, w)| window.get(*s..*s + w.len()) == Some(w.as_slice()))
            .map(|(s, _)| *s);
        let occ = self.occurrences.iter().flat_map(|(w, lo, hi)| {
            (*lo..=*hi).filter(move |&s| window.get(s..s + w.len()) == Some(w.as_slice()))
        });
        fixed.chain(occ).min()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Cursor {
    /// Letters read before the left margin could be checked.
    Head(Vec<Symbol>),
    /// Current vertex of the target presentation.
    At(u32),
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    cursor: Cursor,
    alive: Vec<u64>,
    kmp: Vec<u16>,
}

/// Failure-function automaton for one pattern.
struct Kmp {
    len: usize,
    /// `delta[j][a]` for `j` matched letters; `j = len` behaves as its border.
    delta: Vec<Vec<u16>>,
}

impl Kmp {
    fn new(w: &[Symbol], k: usize) -> Kmp {
        let n = w.len();
        let mut fail = vec![0usize; n + 1];
        let mut j = 0;
        for i in 1..n {
            while j > 0 && w[i] != w[j] {
                j = fail[j];
            }
            if w[i] == w[j] {
                j += 1;
            }
            fail[i + 1] = j;
        }
        let mut delta = vec![vec![0u16; k]; n + 1];
        for j in 0..=n {
            for a in 0..k {
                let s = Symbol(a as u16);
                delta[j][a] = if j < n && w[j] == s {
                    (j + 1) as u16
                } else if j == 0 {
                    0
                } else {
                    delta[fail[j]][a]
                };
            }
        }
        Kmp { len: n, delta }
    }
}

/// Canonical windows of length `n + 2 reach + 1` whose coordinates
/// `0 .. n-1` form an allowed word: the left margin is the least left
/// extension and the last `reach + 1` letters the least right extension.
/// Windows hitting an exclusion are rejected.
pub fn element_automaton(
    x: &Sft,
    n: usize,
    reach: usize,
    exclusions: &Exclusions,
    cap: usize,
) -> Result<LayeredDfa> {
    let mem = x.memory();
    if n < mem.max(1) {
        return Err(Error::OutOfRange(format!("N = {n} below the memory {mem}")));
    }
    let len = n + 2 * reach + 1;
    let head_len = reach + mem.max(1);
    let k = x.alphabet().len();

    // least left margins, keyed by the first letters of the key
    let mut left: HashMap<Vec<Symbol>, Vec<Symbol>> = HashMap::new();
    for w in x.enumerate_words(mem.max(1))? {
        let mut p = vec![None; reach];
        p.extend(w.symbols.iter().map(|&a| Some(a)));
        if let Some(full) = x.least_matching(&p) {
            left.insert(w.symbols.clone(), full[..reach].to_vec());
        }
    }
    // least right tails, keyed by vertex
    let tails: Vec<Vec<Symbol>> = (0..x.vertex_count())
        .map(|v| {
            let mut p: Vec<Option<Symbol>> = x.vertex_word(v).iter().map(|&a| Some(a)).collect();
            p.extend(std::iter::repeat_n(None, reach + 1));
            x.least_matching(&p).map(|w| w[mem..].to_vec()).unwrap_or_default()
        })
        .collect();
    let kmps: Vec<Kmp> = exclusions.occurrences.iter().map(|(w, _, _)| Kmp::new(w, k)).collect();
    let nfixed = exclusions.fixed.len();
    let init = State {
        cursor: Cursor::Head(Vec::new()),
        alive: vec![0; nfixed.div_ceil(64)],
        kmp: vec![0; kmps.len()],
    };
    let key_end = reach + n;

    let step = |s: &State, t: usize, a: Symbol| -> Option<State> {
        let cursor = match &s.cursor {
            Cursor::Head(h) => {
                let mut h = h.clone();
                h.push(a);
                if h.len() < head_len {
                    if !x.is_allowed(&h) {
                        return None;
                    }
                    Cursor::Head(h)
                } else {
                    if left.get(&h[reach..])? != &h[..reach] {
                        return None;
                    }
                    Cursor::At(x.terminal_vertex(&h)? as u32)
                }
            }
            Cursor::At(v) => {
                if t < key_end {
                    Cursor::At(x.step(*v as usize, a)? as u32)
                } else {
                    // tail letters are forced by the vertex at the key end
                    if tails[*v as usize].get(t - key_end) != Some(&a) {
                        return None;
                    }
                    Cursor::At(*v)
                }
            }
        };
        let mut alive = s.alive.clone();
        for (i, (start, w)) in exclusions.fixed.iter().enumerate() {
            if t < *start || t >= start + w.len() {
                continue;
            }
            let bit = 1u64 << (i % 64);
            let on = if t == *start { true } else { alive[i / 64] & bit != 0 };
            if on && w[t - start] == a {
                if t + 1 == start + w.len() {
                    return None;
                }
                alive[i / 64] |= bit;
            } else {
                alive[i / 64] &= !bit;
            }
        }
        let mut kmp = s.kmp.clone();
        for (i, ((_, lo, hi), m)) in exclusions.occurrences.iter().zip(&kmps).enumerate() {
            if t < *lo || t >= hi + m.len {
                kmp[i] = 0;
                continue;
            }
            let j = m.delta[kmp[i] as usize][a.index()] as usize;
            if j == m.len {
                let begin = t + 1 - m.len;
                if begin >= *lo && begin <= *hi {
                    return None;
                }
            }
            kmp[i] = j as u16;
        }
        Some(State { cursor, alive, kmp })
    };
    LayeredDfa::build(len, k, init, step, |_| true, cap)
}
