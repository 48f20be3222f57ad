use std::collections::HashMap;

use super::sft::{Sft, DEFAULT_ENUMERATION_LIMIT};
use super::transducer::{InjectivityReport, Transducer};
use super::word::{Symbol, Word};
use crate::error::{Error, Result};

/// Sliding block code `y_{i+shift} = rule(x_{i-a} .. x_{i+a})`.
#[derive(Clone, Debug)]
pub struct BlockCode {
    source: Sft,
    target: Sft,
    radius: usize,
    shift: i64,
    rule: HashMap<Vec<Symbol>, Symbol>,
}

impl BlockCode {
    /// Tabulates `f` on every allowed source word of length `2a+1` and checks
    /// that images of allowed words are allowed in the target.
    pub fn from_fn(
        source: Sft,
        target: Sft,
        radius: usize,
        shift: i64,
        f: impl Fn(&[Symbol]) -> Symbol,
    ) -> Result<BlockCode> {
        let words = source.enumerate_words_limited(2 * radius + 1, DEFAULT_ENUMERATION_LIMIT)?;
        let rule = words
            .into_iter()
            .map(|w| {
                let s = f(&w.symbols);
                (w.symbols, s)
            })
            .collect();
        BlockCode::from_table(source, target, radius, shift, rule)
    }

    pub fn from_table(
        source: Sft,
        target: Sft,
        radius: usize,
        shift: i64,
        rule: HashMap<Vec<Symbol>, Symbol>,
    ) -> Result<BlockCode> {
        let code = BlockCode {
            source,
            target,
            radius,
            shift,
            rule,
        };
        let window = 2 * radius + 1;
        for w in code.source.enumerate_words(window)? {
            match code.rule.get(&w.symbols) {
                Some(s) if s.index() < code.target.alphabet().len() => {}
                _ => return Err(Error::ImageNotAllowed),
            }
        }
        let span = window + code.target.memory();
        for w in code.source.enumerate_words(span)? {
            let image = code.image(&w.symbols);
            if !code.target.is_allowed(&image) {
                return Err(Error::ImageNotAllowed);
            }
        }
        Ok(code)
    }

    /// Letter-to-letter substitution (radius 0).
    pub fn letter_map(source: Sft, target: Sft, f: impl Fn(Symbol) -> Symbol) -> Result<BlockCode> {
        BlockCode::from_fn(source, target, 0, 0, |w| f(w[0]))
    }

    pub fn identity(x: Sft) -> BlockCode {
        BlockCode::letter_map(x.clone(), x, |s| s).expect("identity is a valid code")
    }

    pub fn source(&self) -> &Sft {
        &self.source
    }

    pub fn target(&self) -> &Sft {
        &self.target
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    fn image(&self, symbols: &[Symbol]) -> Vec<Symbol> {
        symbols
            .windows(2 * self.radius + 1)
            .map(|b| self.rule[b])
            .collect()
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        let window = 2 * self.radius + 1;
        if w.len() < window {
            return Err(Error::WordTooShort {
                len: w.len(),
                window,
            });
        }
        if !self.source.is_allowed(&w.symbols) {
            return Err(Error::NotAWord);
        }
        let image = self.image(&w.symbols);
        if !self.target.is_allowed(&image) {
            return Err(Error::ImageNotAllowed);
        }
        Ok(Word::at(image, w.offset + self.radius as i64 + self.shift))
    }

    /// Transducer whose states are the allowed source words of length
    /// `max(memory, 2a)`; the input sequence determines the state sequence.
    pub fn to_transducer(&self) -> Result<Transducer> {
        let k = self.source.memory().max(2 * self.radius);
        let states = self.source.enumerate_words(k)?;
        let index: HashMap<&[Symbol], usize> = states
            .iter()
            .enumerate()
            .map(|(i, w)| (w.symbols.as_slice(), i))
            .collect();
        let mut t = Transducer::with_states(states.len());
        for (i, w) in states.iter().enumerate() {
            for s in self.source.alphabet().symbols() {
                let mut ext = w.symbols.clone();
                ext.push(s);
                if !self.source.is_allowed(&ext) {
                    continue;
                }
                let out = self.rule[&ext[ext.len() - (2 * self.radius + 1)..]];
                if let Some(&j) = index.get(&ext[1..]) {
                    t.add_edge(i, s, out, j);
                }
            }
        }
        Ok(t)
    }

    /// Injectivity on bi-infinite points via the pair graph.
    pub fn check_injective(&self) -> Result<InjectivityReport> {
        Ok(self.to_transducer()?.check_injective())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::word::Alphabet;

    #[test]
    fn identity_round_trip() {
        let g = Sft::golden_mean();
        let id = BlockCode::identity(g.clone());
        for w in g.enumerate_words(6).unwrap() {
            assert_eq!(id.apply(&w).unwrap(), w);
        }
        assert!(id.check_injective().unwrap().injective);
    }

    #[test]
    fn eta_style_letter_map() {
        let src = Sft::full_shift(3);
        let dst = Sft::full_shift(2);
        let eta = BlockCode::letter_map(src, dst, |s| Symbol(s.0.min(1))).unwrap();
        let w = Word::from_indices(&[0, 2, 1, 2, 0]);
        assert_eq!(eta.apply(&w).unwrap().symbols, Word::from_indices(&[0, 1, 1, 1, 0]).symbols);
    }

    #[test]
    fn collapse_is_not_injective() {
        let x = Sft::full_shift(2);
        let c = BlockCode::letter_map(x.clone(), x, |_| Symbol(0)).unwrap();
        let r = c.check_injective().unwrap();
        assert!(!r.injective);
        assert!(r.witness.is_some());
    }

    #[test]
    fn invalid_image_rejected() {
        let x = Sft::full_shift(2);
        let g = Sft::golden_mean();
        assert_eq!(
            BlockCode::letter_map(x, g, |s| s).unwrap_err(),
            Error::ImageNotAllowed
        );
    }

    #[test]
    fn too_short_word() {
        let x = Sft::full_shift(2);
        let c = BlockCode::from_fn(x.clone(), x, 1, 0, |w| w[1]).unwrap();
        assert!(matches!(
            c.apply(&Word::from_indices(&[0, 1])),
            Err(Error::WordTooShort { len: 2, window: 3 })
        ));
    }

    #[test]
    fn radius_one_shift_commutes() {
        let x = Sft::full_shift(2);
        let c = BlockCode::from_fn(x.clone(), x, 1, 0, |w| Symbol(w[0].0 & w[2].0)).unwrap();
        let w = Word::at(Word::from_indices(&[1, 0, 1, 1, 1, 0]).symbols, -3);
        let a = c.apply(&w.shifted(5)).unwrap();
        let b = c.apply(&w).unwrap().shifted(5);
        assert_eq!(a, b);
        assert_eq!(a.offset, 3);
    }

    #[test]
    fn golden_mean_to_full_shift_injective() {
        // Inclusion of the golden mean into the full shift.
        let g = Sft::golden_mean();
        let x = Sft::from_forbidden(Alphabet::numeric(2), vec![]).unwrap();
        let inc = BlockCode::letter_map(g, x, |s| s).unwrap();
        assert!(inc.check_injective().unwrap().injective);
    }
}
