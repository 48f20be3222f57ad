use super::sublinear::SublinearL;
use crate::error::{Error, Result};
use crate::metric::Pattern;
use crate::shift::{MixingStatus, Sft, Symbol};

/// Least `t` such that any two allowed words can be joined by a connecting
/// word of every length `>= t`.
pub fn weak_spec_gap(x: &Sft) -> Result<usize> {
    match x.mixing_status() {
        MixingStatus::Mixing { gap } => Ok(gap.saturating_sub(x.memory())),
        MixingStatus::Irreducible { period } => Err(Error::NotMixing(format!("period {period}"))),
        MixingStatus::Reducible => Err(Error::NotMixing("reducible".into())),
    }
}

/// Checks `v u` and `u w` allowed implies `v u w` allowed, for all `v`, `w`
/// up to length `reach`. Returns a counterexample `(v, w)`.
pub fn synchronizer_counterexample(
    x: &Sft,
    u: &[Symbol],
    reach: usize,
) -> Option<(Vec<Symbol>, Vec<Symbol>)> {
    let mut lefts = Vec::new();
    let mut rights = Vec::new();
    for len in 0..=reach {
        let words = x.enumerate_words(len).ok()?;
        for w in words {
            let mut vu = w.symbols.clone();
            vu.extend_from_slice(u);
            if x.is_allowed(&vu) {
                lefts.push(w.symbols.clone());
            }
            let mut uw = u.to_vec();
            uw.extend_from_slice(&w.symbols);
            if x.is_allowed(&uw) {
                rights.push(w.symbols);
            }
        }
    }
    for v in &lefts {
        for w in &rights {
            let mut vuw = v.clone();
            vuw.extend_from_slice(u);
            vuw.extend_from_slice(w);
            if !x.is_allowed(&vuw) {
                return Some((v.clone(), w.clone()));
            }
        }
    }
    None
}

/// A shortest synchronizing word. Among equal lengths the one with the
/// fewest one-letter right extensions wins, then the lexicographically least.
pub fn find_synchronizer(x: &Sft) -> Result<Vec<Symbol>> {
    if !x.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let reach = x.memory() + 1;
    for len in 1..=x.memory() {
        let mut found: Vec<(usize, Vec<Symbol>)> = x
            .enumerate_words(len)?
            .into_iter()
            .filter(|u| synchronizer_counterexample(x, &u.symbols, reach).is_none())
            .map(|u| {
                let ext = x
                    .alphabet()
                    .symbols()
                    .filter(|&s| {
                        let mut e = u.symbols.clone();
                        e.push(s);
                        x.is_allowed(&e)
                    })
                    .count();
                (ext, u.symbols)
            })
            .collect();
        found.sort();
        if let Some((_, u)) = found.into_iter().next() {
            return Ok(u);
        }
    }
    Err(Error::NoneFound(x.memory()))
}

/// Coded weak specification `w -> u a_w w b_w`, with `|a_w| = |b_w| = g`.
///
/// `c = |u| + g` and `L = |u| + 2g`, so the right decoration `b_w` has length
/// `L - c = g`.
#[derive(Clone, Debug)]
pub struct CodedSpec {
    target: Sft,
    sync: Vec<Symbol>,
    glue: usize,
    l: SublinearL,
}

impl CodedSpec {
    pub fn target(&self) -> &Sft {
        &self.target
    }

    pub fn synchronizer(&self) -> &[Symbol] {
        &self.sync
    }

    pub fn glue_len(&self) -> usize {
        self.glue
    }

    pub fn c(&self) -> usize {
        self.sync.len() + self.glue
    }

    pub fn l(&self) -> &SublinearL {
        &self.l
    }

    fn free(n: usize) -> Vec<Option<Symbol>> {
        vec![None; n]
    }

    fn fixed(w: &[Symbol]) -> Vec<Option<Symbol>> {
        w.iter().map(|&s| Some(s)).collect()
    }

    /// Least `a` with `u a w` allowed, where `w` starts with `prefix`.
    pub fn left_glue(&self, prefix: &[Symbol]) -> Option<Vec<Symbol>> {
        let mut p = Self::fixed(&self.sync);
        p.extend(Self::free(self.glue));
        p.extend(Self::fixed(prefix));
        let w = Pattern::new(0, p).realize(&self.target)?;
        let k = self.sync.len();
        Some(w.symbols[k..k + self.glue].to_vec())
    }

    /// Least `b` with `w b u` allowed, where `w` ends with `suffix`.
    pub fn right_glue(&self, suffix: &[Symbol]) -> Option<Vec<Symbol>> {
        let mut p = Self::fixed(suffix);
        p.extend(Self::free(self.glue));
        p.extend(Self::fixed(&self.sync));
        let w = Pattern::new(0, p).realize(&self.target)?;
        Some(w.symbols[suffix.len()..suffix.len() + self.glue].to_vec())
    }

    /// Returns `(u_w, v_w) = (u a_w, b_w)`.
    pub fn decorate(&self, w: &[Symbol]) -> Result<(Vec<Symbol>, Vec<Symbol>)> {
        if !self.target.is_allowed(w) {
            return Err(Error::NotAWord);
        }
        let m = self.target.memory();
        let (a, b) = if w.len() >= m {
            let a = self.left_glue(&w[..m]).ok_or(Error::NotAWord)?;
            let b = self.right_glue(&w[w.len() - m..]).ok_or(Error::NotAWord)?;
            (a, b)
        } else {
            // short words do not synchronize; choose both gluings jointly
            let mut p = Self::fixed(&self.sync);
            p.extend(Self::free(self.glue));
            p.extend(Self::fixed(w));
            p.extend(Self::free(self.glue));
            p.extend(Self::fixed(&self.sync));
            let full = Pattern::new(0, p).realize(&self.target).ok_or(Error::NotAWord)?.symbols;
            let k = self.sync.len();
            let j = k + self.glue + w.len();
            (full[k..k + self.glue].to_vec(), full[j..j + self.glue].to_vec())
        };
        let mut uw = self.sync.clone();
        uw.extend(a);
        Ok((uw, b))
    }

    /// `u_w w v_w`.
    pub fn decorated(&self, w: &[Symbol]) -> Result<Vec<Symbol>> {
        let (uw, vw) = self.decorate(w)?;
        let mut out = uw;
        out.extend_from_slice(w);
        out.extend(vw);
        Ok(out)
    }

    /// First tuple of at most `arity` words of length at most `max_len` whose
    /// decorated concatenation is not allowed.
    pub fn closure_counterexample(&self, max_len: usize, arity: usize) -> Result<Option<Vec<Vec<Symbol>>>> {
        let mut words = Vec::new();
        for len in 0..=max_len {
            for w in self.target.enumerate_words(len)? {
                let d = self.decorated(&w.symbols)?;
                words.push((w.symbols, d));
            }
        }
        let mut stack: Vec<Vec<usize>> = (0..words.len()).map(|i| vec![i]).collect();
        while let Some(t) = stack.pop() {
            let concat: Vec<Symbol> = t.iter().flat_map(|&i| words[i].1.clone()).collect();
            if !self.target.is_allowed(&concat) {
                return Ok(Some(t.iter().map(|&i| words[i].0.clone()).collect()));
            }
            if t.len() < arity {
                for i in 0..words.len() {
                    let mut next = t.clone();
                    next.push(i);
                    stack.push(next);
                }
            }
        }
        Ok(None)
    }
}

const CLOSURE_BUDGET: usize = 400;

/// Builds the coded specification from a synchronizer and gluing words of
/// length `weak_spec_gap`, then verifies concatenation closure on pairs of
/// short words.
pub fn build_coded_spec(x: &Sft) -> Result<CodedSpec> {
    let glue = weak_spec_gap(x)?;
    let sync = find_synchronizer(x)?;
    let l = SublinearL::constant(sync.len() + 2 * glue)?;
    let cs = CodedSpec {
        target: x.clone(),
        sync,
        glue,
        l,
    };
    // largest word length with a manageable number of pairs
    let mut max_len = 0;
    let mut total = 1usize;
    while max_len < 6 {
        let next: usize = x.count_words(max_len + 1).try_into().unwrap_or(usize::MAX);
        if total.saturating_add(next) > CLOSURE_BUDGET {
            break;
        }
        total += next;
        max_len += 1;
    }
    if let Some(t) = cs.closure_counterexample(max_len, 2)? {
        return Err(Error::NotMixing(format!(
            "decorated concatenation of {} words not allowed",
            t.len()
        )));
    }
    Ok(cs)
}
