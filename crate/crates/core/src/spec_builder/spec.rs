//! Simple specifications: a marker, a two-length family of words and the
//! star padding between them.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::dfa::LayeredDfa;
use crate::error::{Error, Result};
use crate::metric::{flower_entropy, Scale};
use crate::metric::entropy::spectral_radius;
use crate::shift::{Alphabet, Sft, Symbol, Word};
use crate::spec_props::SublinearL;

pub const STAR: &str = "*";

/// A letter of a specification word: a target letter or `*`.
pub type SpecLetter = Option<Symbol>;

/// `x` with `N(x) = n`, stored as its window on `⟦-reach, n + reach⟧`.
///
/// The first `n + 2 reach` letters form the ball window of `B(x, n, eps)`;
/// the letter `n` is the last orbit letter carried by the generating word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    pub n: usize,
    pub window: Vec<Symbol>,
}

impl Element {
    pub fn new(n: usize, window: Vec<Symbol>, reach: usize) -> Result<Element> {
        if window.len() != n + 2 * reach + 1 {
            return Err(Error::LengthMismatch(format!(
                "window of {} letters for N = {n} at reach {reach}",
                window.len()
            )));
        }
        Ok(Element { n, window })
    }

    /// Canonical element with the given first `n` orbit letters: margins and
    /// the remaining letters are the lexicographically least completions.
    pub fn canonical(x: &Sft, key: &[Symbol], reach: usize) -> Option<Element> {
        let mut pattern = vec![None; reach];
        pattern.extend(key.iter().map(|&a| Some(a)));
        pattern.extend(std::iter::repeat_n(None, reach + 1));
        let window = x.least_matching(&pattern)?;
        Some(Element { n: key.len(), window })
    }

    /// The `n + 1` letters `x_0 .. x_n`.
    pub fn core(&self, reach: usize) -> &[Symbol] {
        &self.window[reach..reach + self.n + 1]
    }

    pub fn ball_window(&self) -> &[Symbol] {
        &self.window[..self.window.len() - 1]
    }

    pub fn as_word(&self, reach: usize) -> Word {
        Word::at(self.window.clone(), -(reach as i64))
    }
}

/// Elements of one `N` described by an automaton over their windows.
#[derive(Clone, Debug)]
pub struct RegularPart {
    pub dfa: LayeredDfa,
    pub n: usize,
    /// Ranks (in the automaton) removed from the set, ascending.
    pub excluded: Vec<BigUint>,
}

impl RegularPart {
    pub fn count(&self) -> BigUint {
        self.dfa.count() - BigUint::from(self.excluded.len())
    }

    /// The `i`-th member in lexicographic order.
    pub fn nth(&self, i: &BigUint) -> Result<Vec<Symbol>> {
        let mut r = i.clone();
        for e in &self.excluded {
            if *e <= r {
                r += 1u32;
            } else {
                break;
            }
        }
        self.dfa.unrank(&r)
    }

    pub fn contains(&self, window: &[Symbol]) -> bool {
        match self.dfa.rank(window) {
            Ok(r) => self.excluded.binary_search(&r).is_err(),
            Err(_) => false,
        }
    }
}

/// The set `E` with its length function `N`.
#[derive(Clone, Debug)]
pub struct ElementSet {
    pub reach: usize,
    pub regular: Option<RegularPart>,
    pub explicit: Vec<Element>,
}

impl ElementSet {
    pub fn explicit(reach: usize, elements: Vec<Element>) -> ElementSet {
        ElementSet {
            reach,
            regular: None,
            explicit: elements,
        }
    }

    pub fn count(&self) -> BigUint {
        let r = self.regular.as_ref().map(RegularPart::count).unwrap_or_default();
        r + BigUint::from(self.explicit.len())
    }

    /// `(n, #{x : N(x) = n})` for every occurring `n`, ascending.
    pub fn length_classes(&self) -> Vec<(usize, BigUint)> {
        let mut out: Vec<(usize, BigUint)> = Vec::new();
        let mut add = |n: usize, c: BigUint| {
            if c.is_zero() {
                return;
            }
            match out.iter_mut().find(|(m, _)| *m == n) {
                Some((_, d)) => *d += c,
                None => out.push((n, c)),
            }
        };
        if let Some(r) = &self.regular {
            add(r.n, r.count());
        }
        for e in &self.explicit {
            add(e.n, BigUint::one());
        }
        out.sort();
        out
    }

    pub fn n_min(&self) -> Option<usize> {
        self.length_classes().first().map(|c| c.0)
    }

    pub fn n_max(&self) -> Option<usize> {
        self.length_classes().last().map(|c| c.0)
    }

    /// Member `i`: regular members first (lexicographically), then the
    /// explicit list.
    pub fn get(&self, i: &BigUint) -> Result<Element> {
        let rc = self.regular.as_ref().map(RegularPart::count).unwrap_or_default();
        if *i < rc {
            let r = self.regular.as_ref().expect("nonzero count");
            return Ok(Element {
                n: r.n,
                window: r.nth(i)?,
            });
        }
        let j = (i - rc).to_usize().ok_or(Error::RankOutOfRange)?;
        self.explicit.get(j).cloned().ok_or(Error::RankOutOfRange)
    }

    pub fn all(&self, limit: u64) -> Result<Vec<Element>> {
        let count = self.count();
        if count > BigUint::from(limit) {
            return Err(Error::ExplosionLimit {
                count: count.to_string(),
                limit,
            });
        }
        let n = count.to_u64().expect("below limit");
        (0..n).map(|i| self.get(&BigUint::from(i))).collect()
    }
}

/// A simple `L`-specification over `target`.
#[derive(Clone, Debug)]
pub struct Specification {
    pub target: Sft,
    pub scale: Scale,
    /// The marker point `o` with `N(o) = m`.
    pub marker: Element,
    pub l: usize,
    pub big_l: SublinearL,
    pub elements: ElementSet,
    /// Segment inserted after the final padding of every generating word.
    pub dense: Option<Element>,
}

impl Specification {
    pub fn m(&self) -> usize {
        self.marker.n
    }

    pub fn reach(&self) -> usize {
        self.scale.reach()
    }

    pub fn marker_word(&self) -> Word {
        self.marker.as_word(self.reach())
    }

    /// Letters of a generating word besides the `N(x) + 1` letters of `x`.
    pub fn q(&self) -> usize {
        let m = self.m();
        let dense = self
            .dense
            .as_ref()
            .map(|z| z.n + 1 + self.big_l.at(z.n + 1))
            .unwrap_or(0);
        m + 1 + self.big_l.at(m) + 1 + self.l + dense
    }

    pub fn generating_len(&self, n: usize) -> usize {
        n + self.q()
    }

    /// Start of the `x` block inside a generating word.
    pub fn core_start(&self) -> usize {
        self.m() + 1 + self.big_l.at(self.m())
    }

    /// Start of the inserted segment, if any.
    pub fn dense_start(&self, n: usize) -> Option<usize> {
        self.dense.as_ref().map(|_| self.core_start() + n + 1 + self.l)
    }

    /// The word `w_x`.
    pub fn generating_word(&self, x: &Element) -> Vec<SpecLetter> {
        let r = self.reach();
        let mut w: Vec<SpecLetter> = self.marker.core(r).iter().map(|&a| Some(a)).collect();
        w.extend(std::iter::repeat_n(None, self.big_l.at(self.m())));
        w.extend(x.core(r).iter().map(|&a| Some(a)));
        w.extend(std::iter::repeat_n(None, self.l));
        if let Some(z) = &self.dense {
            w.extend(z.core(r).iter().map(|&a| Some(a)));
            w.extend(std::iter::repeat_n(None, self.big_l.at(z.n + 1)));
        }
        w
    }

    /// Points whose balls the generating word of `x` pins down, with the
    /// position of their coordinate 0 in the word.
    pub fn anchors<'a>(&'a self, x: &'a Element) -> Vec<(usize, &'a Element)> {
        let mut out = vec![(0, &self.marker), (self.core_start(), x)];
        if let (Some(z), Some(p)) = (&self.dense, self.dense_start(x.n)) {
            out.push((p, z));
        }
        out
    }

    /// `(length, count)` of generating words.
    pub fn length_classes(&self) -> Vec<(usize, BigUint)> {
        self.elements
            .length_classes()
            .into_iter()
            .map(|(n, c)| (self.generating_len(n), c))
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        let c = self.elements.length_classes();
        c.len() == 2 && c[1].0 == c[0].0 + 1
    }

    /// Entropy of the free concatenation shift of the generating words.
    pub fn entropy(&self) -> f64 {
        flower_entropy(&self.length_classes())
    }

    /// Entropy from the Perron root of the presentation graph, for
    /// specifications small enough to list.
    pub fn spectral_entropy(&self, limit: u64) -> Result<f64> {
        let words: Vec<Vec<SpecLetter>> = self
            .elements
            .all(limit)?
            .iter()
            .map(|x| self.generating_word(x))
            .collect();
        let graph = flower_graph(&words);
        let rho = spectral_radius(&graph);
        Ok(if rho > 0.0 { rho.ln() } else { 0.0 })
    }

    pub fn alphabet(&self) -> Alphabet {
        let mut names: Vec<String> = self.target.alphabet().names().to_vec();
        names.push(STAR.to_string());
        Alphabet::new(names)
    }

    pub fn format(&self, w: &[SpecLetter]) -> String {
        self.target.alphabet().format_ext(w)
    }
}

/// Hub-and-petal graph: one loop through a shared hub per word, petals
/// sharing common prefixes.
fn flower_graph(words: &[Vec<SpecLetter>]) -> Vec<Vec<(usize, f64)>> {
    use std::collections::HashMap;
    let mut succ: Vec<Vec<(usize, f64)>> = vec![Vec::new()];
    let mut trie: HashMap<(usize, SpecLetter), usize> = HashMap::new();
    for w in words {
        let mut at = 0usize;
        for (i, &a) in w.iter().enumerate() {
            if i + 1 == w.len() {
                succ[at].push((0, 1.0));
                break;
            }
            at = *trie.entry((at, a)).or_insert_with(|| {
                succ.push(Vec::new());
                let id = succ.len() - 1;
                succ[at].push((id, 1.0));
                id
            });
        }
    }
    succ
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<Symbol> {
        s.bytes().map(|b| Symbol((b - b'0') as u16)).collect()
    }

    fn tiny() -> Specification {
        let x = Sft::full_shift(2);
        let marker = Element::new(4, w("10000"), 0).unwrap();
        let elements = vec![
            Element::new(2, w("011"), 0).unwrap(),
            Element::new(2, w("111"), 0).unwrap(),
            Element::new(3, w("0111"), 0).unwrap(),
        ];
        Specification {
            target: x,
            scale: Scale::new(1).unwrap(),
            marker,
            l: 1,
            big_l: SublinearL::constant(1).unwrap(),
            elements: ElementSet::explicit(0, elements),
            dense: None,
        }
    }

    #[test]
    fn generating_word_layout() {
        let s = tiny();
        let x = s.elements.get(&BigUint::zero()).unwrap();
        assert_eq!(s.format(&s.generating_word(&x)), "10000*011*");
        assert_eq!(s.q(), 8);
        assert_eq!(s.generating_len(2), 10);
        assert_eq!(s.core_start(), 6);
        assert!(s.is_simple());
    }

    #[test]
    fn flower_and_spectral_agree() {
        let s = tiny();
        let a = s.entropy();
        let b = s.spectral_entropy(100).unwrap();
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        // 2 words of length 10, 1 of length 11
        let f = |h: f64| 2.0 * (-10.0 * h).exp() + (-11.0 * h).exp();
        assert!((f(a) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn concatenation_growth_matches() {
        // a_n = sum over classes of count * a_{n - len}
        let s = tiny();
        let classes = s.length_classes();
        let mut a = vec![0f64; 4001];
        a[0] = 1.0;
        for n in 1..a.len() {
            for (len, c) in &classes {
                if *len <= n {
                    a[n] += c.to_f64().unwrap() * a[n - len];
                }
            }
        }
        let ratio = (a[4000] / a[3000]).ln() / 1000.0;
        assert!((ratio - s.entropy()).abs() < 1e-6);
    }

    #[test]
    fn canonical_elements() {
        let g = Sft::golden_mean();
        let e = Element::canonical(&g, &w("101"), 2).unwrap();
        assert_eq!(e.window, w("00101000"));
        assert_eq!(e.core(2), w("1010"));
        assert_eq!(e.ball_window(), &w("0010100")[..]);
    }

    #[test]
    fn regular_part_skips_exclusions() {
        let words = vec![w("00"), w("01"), w("10"), w("11")];
        let dfa = LayeredDfa::from_words(2, &words).unwrap();
        let r = RegularPart {
            dfa,
            n: 1,
            excluded: vec![BigUint::zero(), BigUint::from(2u32)],
        };
        assert_eq!(r.count(), BigUint::from(2u32));
        assert_eq!(r.nth(&BigUint::zero()).unwrap(), w("01"));
        assert_eq!(r.nth(&BigUint::one()).unwrap(), w("11"));
        assert!(!r.contains(&w("00")));
        assert!(r.contains(&w("11")));
    }
}
