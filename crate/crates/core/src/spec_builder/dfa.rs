//! Layered deterministic automata accepting words of one fixed length.
//!
//! Used for separated sets far too large to list: words are counted, ranked
//! and searched by dynamic programming over the layers.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::shift::Symbol;

#[derive(Clone, Debug)]
pub struct LayeredDfa {
    len: usize,
    /// `edges[t][s]`: transitions from state `s` of layer `t`, sorted by symbol.
    edges: Vec<Vec<Vec<(Symbol, u32)>>>,
    /// `counts[t][s]`: accepted completions from state `s` of layer `t`.
    counts: Vec<Vec<BigUint>>,
}

impl LayeredDfa {
    /// Explores `step` forward from `init` for `len` letters. States with no
    /// accepted completion are pruned. Fails with `TooLarge` once a layer
    /// exceeds `cap` states.
    pub fn build<S, F, A>(
        len: usize,
        alphabet: usize,
        init: S,
        step: F,
        accept: A,
        cap: usize,
    ) -> Result<LayeredDfa>
    where
        S: Clone + Eq + Hash,
        F: Fn(&S, usize, Symbol) -> Option<S>,
        A: Fn(&S) -> bool,
    {
        let mut layer: Vec<S> = vec![init];
        let mut edges: Vec<Vec<Vec<(Symbol, u32)>>> = Vec::with_capacity(len);
        for t in 0..len {
            let mut next: Vec<S> = Vec::new();
            let mut index: HashMap<S, u32> = HashMap::new();
            let mut row = Vec::with_capacity(layer.len());
            for s in &layer {
                let mut out = Vec::new();
                for a in 0..alphabet {
                    let sym = Symbol(a as u16);
                    if let Some(n) = step(s, t, sym) {
                        let id = *index.entry(n.clone()).or_insert_with(|| {
                            next.push(n);
                            (next.len() - 1) as u32
                        });
                        out.push((sym, id));
                    }
                }
                row.push(out);
            }
            if next.len() > cap {
                return Err(Error::TooLarge(format!(
                    "automaton layer {} has more than {cap} states",
                    t + 1
                )));
            }
            edges.push(row);
            layer = next;
        }
        let finals: Vec<bool> = layer.iter().map(&accept).collect();
        Ok(LayeredDfa::from_parts(len, edges, finals))
    }

    /// Single-word-per-path automaton accepting exactly `words`, all of the
    /// same length.
    pub fn from_words(len: usize, words: &[Vec<Symbol>]) -> Result<LayeredDfa> {
        if let Some(w) = words.iter().find(|w| w.len() != len) {
            return Err(Error::LengthMismatch(format!(
                "word of length {} in a set of length {len}",
                w.len()
            )));
        }
        let mut sorted: Vec<&Vec<Symbol>> = words.iter().collect();
        sorted.sort();
        sorted.dedup();
        // trie layers keyed by prefix
        let mut edges = Vec::with_capacity(len);
        let mut layer: Vec<&[Symbol]> = vec![&[]];
        for t in 0..len {
            let mut next: Vec<&[Symbol]> = Vec::new();
            let mut row = Vec::new();
            for prefix in &layer {
                let mut out: Vec<(Symbol, u32)> = Vec::new();
                for w in &sorted {
                    if w.starts_with(prefix) {
                        let p = &w[..t + 1];
                        if next.last() != Some(&p) {
                            next.push(p);
                            out.push((w[t], (next.len() - 1) as u32));
                        }
                    }
                }
                row.push(out);
            }
            edges.push(row);
            layer = next;
        }
        let finals = vec![true; layer.len()];
        Ok(LayeredDfa::from_parts(len, edges, finals))
    }

    fn from_parts(len: usize, mut edges: Vec<Vec<Vec<(Symbol, u32)>>>, finals: Vec<bool>) -> LayeredDfa {
        let mut counts: Vec<Vec<BigUint>> = vec![Vec::new(); len + 1];
        counts[len] = finals
            .iter()
            .map(|&f| if f { BigUint::one() } else { BigUint::zero() })
            .collect();
        for t in (0..len).rev() {
            counts[t] = edges[t]
                .iter()
                .map(|out| {
                    out.iter()
                        .fold(BigUint::zero(), |acc, &(_, j)| acc + &counts[t + 1][j as usize])
                })
                .collect();
        }
        // prune dead states and renumber layer by layer
        let mut keep: Vec<Vec<u32>> = Vec::with_capacity(len + 1);
        for t in 0..=len {
            let mut ids = vec![u32::MAX; counts[t].len()];
            let mut k = 0u32;
            for (s, c) in counts[t].iter().enumerate() {
                if !c.is_zero() {
                    ids[s] = k;
                    k += 1;
                }
            }
            keep.push(ids);
        }
        let mut new_edges = Vec::with_capacity(len);
        let mut new_counts = Vec::with_capacity(len + 1);
        for t in 0..=len {
            new_counts.push(
                counts[t]
                    .iter()
                    .filter(|c| !c.is_zero())
                    .cloned()
                    .collect::<Vec<_>>(),
            );
            if t < len {
                let row: Vec<Vec<(Symbol, u32)>> = std::mem::take(&mut edges[t])
                    .into_iter()
                    .enumerate()
                    .filter(|(s, _)| keep[t][*s] != u32::MAX)
                    .map(|(_, out)| {
                        out.into_iter()
                            .filter(|&(_, j)| keep[t + 1][j as usize] != u32::MAX)
                            .map(|(a, j)| (a, keep[t + 1][j as usize]))
                            .collect()
                    })
                    .collect();
                new_edges.push(row);
            }
        }
        LayeredDfa {
            len,
            edges: new_edges,
            counts: new_counts,
        }
    }

    pub fn word_len(&self) -> usize {
        self.len
    }

    pub fn count(&self) -> BigUint {
        self.counts[0].first().cloned().unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.counts[0].is_empty()
    }

    pub fn state_count(&self) -> usize {
        self.counts.iter().map(Vec::len).sum()
    }

    pub fn layer_width(&self, t: usize) -> usize {
        self.counts[t].len()
    }

    /// Transitions out of state `s` of layer `t`.
    pub fn transitions(&self, t: usize, s: u32) -> &[(Symbol, u32)] {
        &self.edges[t][s as usize]
    }

    /// Accepted completions from state `s` of layer `t`.
    pub fn completions(&self, t: usize, s: u32) -> &BigUint {
        &self.counts[t][s as usize]
    }

    pub fn step(&self, t: usize, s: u32, a: Symbol) -> Option<u32> {
        self.edges[t][s as usize]
            .iter()
            .find(|&&(b, _)| b == a)
            .map(|&(_, j)| j)
    }

    /// State reached after reading `prefix`, if any accepted word starts so.
    pub fn run(&self, prefix: &[Symbol]) -> Option<u32> {
        if self.is_empty() || prefix.len() > self.len {
            return None;
        }
        let mut s = 0u32;
        for (t, &a) in prefix.iter().enumerate() {
            s = self.step(t, s, a)?;
        }
        Some(s)
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        word.len() == self.len && self.run(word).is_some()
    }

    pub fn rank(&self, word: &[Symbol]) -> Result<BigUint> {
        if !self.accepts(word) {
            return Err(Error::NotAWord);
        }
        let mut r = BigUint::zero();
        let mut s = 0u32;
        for (t, &a) in word.iter().enumerate() {
            for &(b, j) in self.transitions(t, s) {
                if b < a {
                    r += &self.counts[t + 1][j as usize];
                }
            }
            s = self.step(t, s, a).ok_or(Error::NotAWord)?;
        }
        Ok(r)
    }

    pub fn unrank(&self, rank: &BigUint) -> Result<Vec<Symbol>> {
        if *rank >= self.count() {
            return Err(Error::RankOutOfRange);
        }
        let mut r = rank.clone();
        let mut s = 0u32;
        let mut word = Vec::with_capacity(self.len);
        for t in 0..self.len {
            let mut chosen = None;
            for &(a, j) in self.transitions(t, s) {
                let c = &self.counts[t + 1][j as usize];
                if r < *c {
                    chosen = Some((a, j));
                    break;
                }
                r -= c;
            }
            let (a, j) = chosen.ok_or(Error::RankOutOfRange)?;
            word.push(a);
            s = j;
        }
        Ok(word)
    }

    pub fn least(&self) -> Option<Vec<Symbol>> {
        self.unrank(&BigUint::zero()).ok()
    }

    pub fn words(&self, limit: u64) -> Result<Vec<Vec<Symbol>>> {
        let count = self.count();
        if count > BigUint::from(limit) {
            return Err(Error::ExplosionLimit {
                count: count.to_string(),
                limit,
            });
        }
        let n = count.to_u64().expect("below limit");
        (0..n).map(|r| self.unrank(&BigUint::from(r))).collect()
    }

    /// Least accepted word whose run visits state `s` of layer `t`.
    pub fn least_through(&self, t: usize, s: u32) -> Option<Vec<Symbol>> {
        if self.is_empty() || t > self.len || s as usize >= self.counts[t].len() {
            return None;
        }
        // parents[k][j]: predecessor on the least prefix reaching state j of
        // layer k + 1; visiting parents in order of their own least prefix
        // makes the first assignment the least
        let mut parents: Vec<Vec<Option<(u32, Symbol)>>> = Vec::with_capacity(t);
        let mut order: Vec<u32> = vec![0];
        for layer in 0..t {
            let mut par = vec![None; self.counts[layer + 1].len()];
            let mut next = Vec::new();
            for &p in &order {
                for &(a, j) in self.transitions(layer, p) {
                    if par[j as usize].is_none() {
                        par[j as usize] = Some((p, a));
                        next.push(j);
                    }
                }
            }
            parents.push(par);
            order = next;
        }
        let mut word = Vec::with_capacity(self.len);
        let mut cur = s;
        for layer in (0..t).rev() {
            let (p, a) = parents[layer][cur as usize]?;
            word.push(a);
            cur = p;
        }
        word.reverse();
        let mut cur = s;
        for layer in t..self.len {
            let &(a, j) = self.transitions(layer, cur).first()?;
            word.push(a);
            cur = j;
        }
        Some(word)
    }

    /// Lexicographically least accepted word agreeing with every `Some`
    /// entry of `pattern` (shorter patterns leave the tail free).
    pub fn least_matching(&self, pattern: &[Option<Symbol>]) -> Option<Vec<Symbol>> {
        if self.is_empty() || pattern.len() > self.len {
            return None;
        }
        let fits = |t: usize, a: Symbol| pattern.get(t).copied().flatten().is_none_or(|p| p == a);
        let mut ok: Vec<Vec<bool>> = vec![Vec::new(); self.len + 1];
        ok[self.len] = vec![true; self.counts[self.len].len()];
        let depth = pattern.len();
        for t in (0..depth).rev() {
            ok[t] = self.edges[t]
                .iter()
                .map(|out| {
                    out.iter()
                        .any(|&(a, j)| fits(t, a) && (t + 1 >= depth || ok[t + 1][j as usize]))
                })
                .collect();
        }
        if depth > 0 && !ok[0][0] {
            return None;
        }
        let mut word = Vec::with_capacity(self.len);
        let mut s = 0u32;
        for t in 0..self.len {
            let &(a, j) = self.transitions(t, s).iter().find(|&&(a, j)| {
                fits(t, a) && (t + 1 >= depth || ok[t + 1][j as usize])
            })?;
            word.push(a);
            s = j;
        }
        Some(word)
    }
}
