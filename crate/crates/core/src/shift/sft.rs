use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::word::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// Default cap on explicit enumeration of a language.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1_000_000;

const MAX_VERTEX_CANDIDATES: f64 = 4.0e6;

/// Classification of a nonempty SFT by its graph presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixingStatus {
    /// Primitive adjacency matrix; `gap` is the least N with A^N > 0.
    Mixing { gap: usize },
    /// Irreducible with the given period (> 1).
    Irreducible { period: usize },
    Reducible,
}

/// A subshift of finite type, normalized to its higher-block vertex presentation.
///
/// Vertices are the allowed words of length `memory`, sorted lexicographically;
/// an edge `u -> v` labelled `s` is the allowed word `u s` whose suffix is `v`.
/// Only vertices lying on bi-infinite paths are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sft {
    alphabet: Alphabet,
    forbidden: Vec<Vec<Symbol>>,
    memory: usize,
    vertices: Vec<Vec<Symbol>>,
    index: HashMap<Vec<Symbol>, usize>,
    succ: Vec<Vec<(Symbol, usize)>>,
}

fn has_forbidden_suffix(word: &[Symbol], forbidden: &[Vec<Symbol>]) -> bool {
    forbidden.iter().any(|f| word.ends_with(f))
}

impl Sft {
    pub fn new(alphabet: Alphabet, forbidden: Vec<Word>) -> Result<Sft> {
        let forbidden: Vec<Vec<Symbol>> = forbidden.into_iter().map(|w| w.symbols).collect();
        Sft::from_forbidden(alphabet, forbidden)
    }

    pub fn from_forbidden(alphabet: Alphabet, mut forbidden: Vec<Vec<Symbol>>) -> Result<Sft> {
        if alphabet.is_empty() {
            return Err(Error::EmptyLanguage);
        }
        for f in &forbidden {
            if f.is_empty() {
                return Err(Error::EmptyForbiddenWord);
            }
            if let Some(s) = f.iter().find(|s| s.index() >= alphabet.len()) {
                return Err(Error::UnknownSymbol(format!("#{}", s.0)));
            }
        }
        forbidden.sort();
        forbidden.dedup();
        let memory = forbidden.iter().map(Vec::len).max().unwrap_or(1).max(2) - 1;
        let k = alphabet.len();
        if (k as f64).powi(memory as i32 + 1) > MAX_VERTEX_CANDIDATES {
            return Err(Error::TooLarge(format!(
                "{k} symbols with memory {memory}"
            )));
        }

        // Allowed words of length `memory`, generated in lexicographic order.
        let mut words: Vec<Vec<Symbol>> = Vec::new();
        let mut stack: Vec<Vec<Symbol>> = vec![Vec::new()];
        while let Some(w) = stack.pop() {
            if w.len() == memory {
                words.push(w);
                continue;
            }
            for s in alphabet.symbols().rev() {
                let mut next = w.clone();
                next.push(s);
                if !has_forbidden_suffix(&next, &forbidden) {
                    stack.push(next);
                }
            }
        }
        let index: HashMap<Vec<Symbol>, usize> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut succ: Vec<Vec<(Symbol, usize)>> = vec![Vec::new(); words.len()];
        for (i, w) in words.iter().enumerate() {
            for s in alphabet.symbols() {
                let mut ext = w.clone();
                ext.push(s);
                if has_forbidden_suffix(&ext, &forbidden) {
                    continue;
                }
                if let Some(&j) = index.get(&ext[1..]) {
                    succ[i].push((s, j));
                }
            }
        }

        // Trim vertices that cannot be extended in both directions.
        let n = words.len();
        let mut alive = vec![true; n];
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, es) in succ.iter().enumerate() {
            outdeg[i] = es.len();
            for &(_, j) in es {
                indeg[j] += 1;
                pred[j].push(i);
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0 || outdeg[i] == 0).collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &(_, j) in &succ[v] {
                if alive[j] {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        queue.push_back(j);
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
        let mut remap = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        for i in 0..n {
            if alive[i] {
                remap[i] = vertices.len();
                vertices.push(words[i].clone());
            }
        }
        if vertices.is_empty() {
            return Err(Error::EmptyLanguage);
        }
        let succ = (0..n)
            .filter(|&i| alive[i])
            .map(|i| {
                succ[i]
                    .iter()
                    .filter(|&&(_, j)| alive[j])
                    .map(|&(s, j)| (s, remap[j]))
                    .collect()
            })
            .collect();
        let index = vertices
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Ok(Sft {
            alphabet,
            forbidden,
            memory,
            vertices,
            index,
            succ,
        })
    }

    /// Full shift on `k` symbols named `0..k`.
    pub fn full_shift(k: usize) -> Sft {
        Sft::from_forbidden(Alphabet::numeric(k), Vec::new()).expect("full shift is nonempty")
    }

    /// Binary shift forbidding `11`.
    pub fn golden_mean() -> Sft {
        Sft::from_forbidden(Alphabet::numeric(2), vec![vec![Symbol(1), Symbol(1)]])
            .expect("golden mean shift is nonempty")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &[Vec<Symbol>] {
        &self.forbidden
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_word(&self, v: usize) -> &[Symbol] {
        &self.vertices[v]
    }

    pub fn vertex_of(&self, word: &[Symbol]) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// Outgoing edges of `v` as `(label, target)`, sorted by label.
    pub fn successors(&self, v: usize) -> &[(Symbol, usize)] {
        &self.succ[v]
    }

    pub fn step(&self, v: usize, s: Symbol) -> Option<usize> {
        self.succ[v].iter().find(|&&(t, _)| t == s).map(|&(_, j)| j)
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let n = self.vertex_count();
        let mut a = vec![vec![0u32; n]; n];
        for (i, es) in self.succ.iter().enumerate() {
            for &(_, j) in es {
                a[i][j] += 1;
            }
        }
        a
    }

    /// Decides membership of a finite word in the language of the shift.
    pub fn is_allowed(&self, word: &[Symbol]) -> bool {
        let m = self.memory;
        if word.len() < m {
            let pos = self.vertices.partition_point(|v| v.as_slice() < word);
            return pos < self.vertices.len() && self.vertices[pos].starts_with(word);
        }
        let Some(mut v) = self.vertex_of(&word[..m]) else {
            return false;
        };
        for &s in &word[m..] {
            match self.step(v, s) {
                Some(j) => v = j,
                None => return false,
            }
        }
        true
    }

    /// Vertex reached after reading an allowed word of length >= memory.
    pub fn terminal_vertex(&self, word: &[Symbol]) -> Option<usize> {
        if word.len() < self.memory || !self.is_allowed(word) {
            return None;
        }
        self.vertex_of(&word[word.len() - self.memory..])
    }

    pub fn initial_vertex(&self, word: &[Symbol]) -> Option<usize> {
        if word.len() < self.memory || !self.is_allowed(word) {
            return None;
        }
        self.vertex_of(&word[..self.memory])
    }

    /// `table[k][v]` = number of paths with `k` edges starting at `v`.
    fn path_counts(&self, max_len: usize) -> Vec<Vec<BigUint>> {
        let n = self.vertex_count();
        let mut table = vec![vec![BigUint::one(); n]];
        for k in 1..=max_len {
            let prev = &table[k - 1];
            let row = (0..n)
                .map(|v| {
                    self.succ[v]
                        .iter()
                        .fold(BigUint::zero(), |acc, &(_, j)| acc + &prev[j])
                })
                .collect();
            table.push(row);
        }
        table
    }

    fn short_words(&self, n: usize) -> Vec<Vec<Symbol>> {
        let mut out: Vec<Vec<Symbol>> = self.vertices.iter().map(|v| v[..n].to_vec()).collect();
        out.dedup();
        out
    }

    /// Exact number of allowed words of length `n`.
    pub fn count_words(&self, n: usize) -> BigUint {
        if n < self.memory {
            return BigUint::from(self.short_words(n).len());
        }
        let mut counts = vec![BigUint::one(); self.vertex_count()];
        for _ in 0..n - self.memory {
            counts = (0..self.vertex_count())
                .map(|v| {
                    self.succ[v]
                        .iter()
                        .fold(BigUint::zero(), |acc, &(_, j)| acc + &counts[j])
                })
                .collect();
        }
        counts.into_iter().sum()
    }

    pub fn enumerate_words(&self, n: usize) -> Result<Vec<Word>> {
        self.enumerate_words_limited(n, DEFAULT_ENUMERATION_LIMIT)
    }

    /// Allowed words of length `n` in lexicographic order.
    pub fn enumerate_words_limited(&self, n: usize, limit: u64) -> Result<Vec<Word>> {
        let count = self.count_words(n);
        if count > BigUint::from(limit) {
            return Err(Error::ExplosionLimit {
                count: count.to_string(),
                limit,
            });
        }
        if n < self.memory {
            return Ok(self.short_words(n).into_iter().map(Word::new).collect());
        }
        let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
        let mut buf = Vec::with_capacity(n);
        for v in 0..self.vertex_count() {
            buf.clear();
            buf.extend_from_slice(&self.vertices[v]);
            self.extend_words(v, n, &mut buf, &mut out);
        }
        Ok(out)
    }

    fn extend_words(&self, v: usize, n: usize, buf: &mut Vec<Symbol>, out: &mut Vec<Word>) {
        if buf.len() == n {
            out.push(Word::new(buf.clone()));
            return;
        }
        for &(s, j) in &self.succ[v] {
            buf.push(s);
            self.extend_words(j, n, buf, out);
            buf.pop();
        }
    }

    /// Position of an allowed word among allowed words of the same length,
    /// in lexicographic order.
    pub fn rank_word(&self, w: &Word) -> Result<BigUint> {
        let word = &w.symbols;
        let n = word.len();
        if !self.is_allowed(word) {
            return Err(Error::NotAWord);
        }
        if n < self.memory {
            let list = self.short_words(n);
            let pos = list.partition_point(|v| v.as_slice() < word.as_slice());
            return Ok(BigUint::from(pos));
        }
        let m = self.memory;
        let table = self.path_counts(n - m);
        let v0 = self.vertex_of(&word[..m]).ok_or(Error::NotAWord)?;
        let mut rank: BigUint = (0..v0).map(|u| table[n - m][u].clone()).sum();
        let mut v = v0;
        for (i, &s) in word[m..].iter().enumerate() {
            let remaining = n - m - i - 1;
            for &(t, j) in &self.succ[v] {
                if t < s {
                    rank += &table[remaining][j];
                }
            }
            v = self.step(v, s).ok_or(Error::NotAWord)?;
        }
        Ok(rank)
    }

    pub fn unrank_word(&self, n: usize, rank: &BigUint) -> Result<Word> {
        if n < self.memory {
            let list = self.short_words(n);
            let r = rank.to_usize().ok_or(Error::RankOutOfRange)?;
            return list.get(r).cloned().map(Word::new).ok_or(Error::RankOutOfRange);
        }
        let m = self.memory;
        let table = self.path_counts(n - m);
        let mut r = rank.clone();
        let mut v = None;
        for u in 0..self.vertex_count() {
            if r < table[n - m][u] {
                v = Some(u);
                break;
            }
            r -= &table[n - m][u];
        }
        let mut v = v.ok_or(Error::RankOutOfRange)?;
        let mut word = self.vertices[v].clone();
        for i in 0..n - m {
            let remaining = n - m - i - 1;
            let mut next = None;
            for &(s, j) in &self.succ[v] {
                if r < table[remaining][j] {
                    next = Some((s, j));
                    break;
                }
                r -= &table[remaining][j];
            }
            let (s, j) = next.ok_or(Error::RankOutOfRange)?;
            word.push(s);
            v = j;
        }
        Ok(Word::new(word))
    }

    fn reachable(&self, from: usize, forward: bool) -> Vec<bool> {
        let n = self.vertex_count();
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
        if !forward {
            for (i, es) in self.succ.iter().enumerate() {
                for &(_, j) in es {
                    pred[j].push(i);
                }
            }
        }
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            let next: Vec<usize> = if forward {
                self.succ[v].iter().map(|&(_, j)| j).collect()
            } else {
                pred[v].clone()
            };
            for j in next {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen
    }

    pub fn is_irreducible(&self) -> bool {
        self.reachable(0, true).iter().all(|&b| b) && self.reachable(0, false).iter().all(|&b| b)
    }

    /// gcd of cycle lengths; meaningful for irreducible shifts.
    pub fn period(&self) -> usize {
        let n = self.vertex_count();
        let mut level = vec![usize::MAX; n];
        level[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        let mut g = 0usize;
        while let Some(v) = queue.pop_front() {
            for &(_, j) in &self.succ[v] {
                if level[j] == usize::MAX {
                    level[j] = level[v] + 1;
                    queue.push_back(j);
                } else {
                    let d = (level[v] + 1).abs_diff(level[j]);
                    g = gcd(g, d);
                }
            }
        }
        g
    }

    pub fn mixing_status(&self) -> MixingStatus {
        if !self.is_irreducible() {
            return MixingStatus::Reducible;
        }
        let p = self.period();
        if p != 1 {
            return MixingStatus::Irreducible { period: p };
        }
        let n = self.vertex_count();
        let bound = (n - 1) * (n - 1) + 1;
        // reach[i][j]: a path of exactly `len` edges from i to j
        let mut reach: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                let mut row = vec![false; n];
                for &(_, j) in &self.succ[i] {
                    row[j] = true;
                }
                row
            })
            .collect();
        for len in 1..=bound.max(1) {
            if reach.iter().all(|row| row.iter().all(|&b| b)) {
                return MixingStatus::Mixing { gap: len };
            }
            reach = reach
                .iter()
                .map(|row| {
                    let mut next = vec![false; n];
                    for (i, &b) in row.iter().enumerate() {
                        if b {
                            for &(_, j) in &self.succ[i] {
                                next[j] = true;
                            }
                        }
                    }
                    next
                })
                .collect();
        }
        unreachable!("primitive matrix reaches positivity within Wielandt's bound")
    }

    /// Forbidden words of length `memory + 1` that induce the same presentation.
    pub fn induced_forbidden(&self) -> Vec<Vec<Symbol>> {
        let m = self.memory;
        let mut out = Vec::new();
        let mut stack: Vec<Vec<Symbol>> = vec![Vec::new()];
        while let Some(w) = stack.pop() {
            if w.len() == m + 1 {
                let ok = self
                    .vertex_of(&w[..m])
                    .is_some_and(|v| self.step(v, w[m]).is_some());
                if !ok {
                    out.push(w);
                }
                continue;
            }
            for s in self.alphabet.symbols() {
                let mut next = w.clone();
                next.push(s);
                stack.push(next);
            }
        }
        out.sort();
        out
    }

    /// Lexicographically least path word of exactly `len` letters leading from
    /// vertex `from` (after its word) into vertex `to`, i.e. `w` with
    /// `vertex(from) w` ending in `vertex(to)`.
    pub fn connecting_word(&self, from: usize, to: usize, len: usize) -> Option<Vec<Symbol>> {
        let n = self.vertex_count();
        // can[k][v]: `to` reachable from v in exactly k edges
        let mut can = vec![vec![false; n]];
        can[0][to] = true;
        for k in 1..=len {
            let row = (0..n)
                .map(|v| self.succ[v].iter().any(|&(_, j)| can[k - 1][j]))
                .collect();
            can.push(row);
        }
        if !can[len][from] {
            return None;
        }
        let mut v = from;
        let mut out = Vec::with_capacity(len);
        for k in (0..len).rev() {
            let &(s, j) = self.succ[v].iter().find(|&&(_, j)| can[k][j])?;
            out.push(s);
            v = j;
        }
        Some(out)
    }

    /// Lexicographically least allowed word agreeing with every `Some`
    /// entry of `pattern`; `None` entries are free.
    pub fn least_matching(&self, pattern: &[Option<Symbol>]) -> Option<Vec<Symbol>> {
        let m = self.memory;
        if pattern.len() < m {
            let mut padded = pattern.to_vec();
            padded.resize(m, None);
            return self.least_matching(&padded).map(|mut w| {
                w.truncate(pattern.len());
                w
            });
        }
        let fits = |k: usize, s: Symbol| pattern[k].is_none_or(|p| p == s);
        let n = self.vertex_count();
        let steps = pattern.len() - m;
        // ok[k][v]: from v, the letters at m+k.. can be completed
        let mut ok = vec![vec![true; n]; steps + 1];
        for k in (0..steps).rev() {
            for v in 0..n {
                ok[k][v] = self.succ[v]
                    .iter()
                    .any(|&(s, j)| fits(m + k, s) && ok[k + 1][j]);
            }
        }
        let start = (0..n).find(|&v| {
            ok[0][v] && self.vertices[v].iter().enumerate().all(|(i, &s)| fits(i, s))
        })?;
        let mut word = self.vertices[start].clone();
        let mut v = start;
        for k in 0..steps {
            let &(s, j) = self.succ[v]
                .iter()
                .find(|&&(s, j)| fits(m + k, s) && ok[k + 1][j])?;
            word.push(s);
            v = j;
        }
        Some(word)
    }

    /// Plain-text serialization; see [`crate::shift::text`].
    pub fn to_text(&self) -> String {
        let mut out = format!("alphabet: {}\n", self.alphabet.names().join(" "));
        for f in &self.forbidden {
            out.push_str(&format!("forbid: {}\n", self.alphabet.format(f)));
        }
        out
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
