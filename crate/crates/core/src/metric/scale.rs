use std::fmt;

use crate::error::{Error, Result};
use crate::shift::{Sft, Symbol, Word};

/// Dyadic radius `eps = 2^-r`.
///
/// Under `d(x, y) = 2^-min{|k| : x_k != y_k}` the closed ball of radius
/// `2^-r` is the cylinder fixing coordinates `-(r-1) ..= r-1`. `r = 0` is the
/// whole space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scale {
    pub r: u32,
}

impl Scale {
    pub fn new(r: u32) -> Result<Scale> {
        if r == 0 {
            return Err(Error::OutOfRange("scale index must be at least 1".into()));
        }
        Ok(Scale { r })
    }

    pub fn epsilon(self) -> f64 {
        0.5f64.powi(self.r as i32)
    }

    /// Radius of the cylinder window around one coordinate.
    pub fn reach(self) -> usize {
        self.r.saturating_sub(1) as usize
    }

    /// The largest dyadic radius not exceeding `rho * 2^-r`.
    pub fn times(self, rho: u32) -> Scale {
        assert!(rho >= 1, "multiplier must be positive");
        let k = 31 - rho.leading_zeros();
        Scale {
            r: self.r.saturating_sub(k),
        }
    }

    /// `times(rho)` clamped to a genuine ball (r >= 1).
    pub fn times_clamped(self, rho: u32) -> Scale {
        Scale {
            r: self.times(rho).r.max(1),
        }
    }

    pub fn finer(self, by: u32) -> Scale {
        Scale { r: self.r + by }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^-{}", self.r)
    }
}

/// Distance between two partially known points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    /// `d = 2^-m`.
    Exact(u32),
    /// Equal on `-(m-1) ..= m-1`, unknown beyond: `d <= 2^-m`.
    AtMost(u32),
}

impl Distance {
    pub fn value(self) -> f64 {
        match self {
            Distance::Exact(m) | Distance::AtMost(m) => 0.5f64.powi(m as i32),
        }
    }

    /// True when `d <= eps` is certain.
    pub fn within(self, scale: Scale) -> bool {
        match self {
            Distance::Exact(m) | Distance::AtMost(m) => m >= scale.r,
        }
    }
}

pub fn metric_dist(x: &Word, y: &Word) -> Result<Distance> {
    if !x.contains_coord(0) || !y.contains_coord(0) {
        return Err(Error::NoCommonCoordinate);
    }
    let lo = x.offset.max(y.offset);
    let hi = x.end().min(y.end());
    let known = (-lo).min(hi) as u32;
    let mut k = 0i64;
    loop {
        for c in [k, -k] {
            if c >= lo && c <= hi && x.get(c) != y.get(c) {
                return Ok(if k as u32 <= known {
                    Distance::Exact(k as u32)
                } else {
                    Distance::AtMost(known + 1)
                });
            }
        }
        if k >= (-lo).max(hi) {
            return Ok(Distance::AtMost(known + 1));
        }
        k += 1;
    }
}

/// Positioned word over the alphabet extended by a free letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub offset: i64,
    pub letters: Vec<Option<Symbol>>,
}

impl Pattern {
    pub fn new(offset: i64, letters: Vec<Option<Symbol>>) -> Self {
        Pattern { offset, letters }
    }

    pub fn from_word(w: &Word) -> Self {
        Pattern::new(w.offset, w.symbols.iter().map(|&s| Some(s)).collect())
    }

    pub fn end(&self) -> i64 {
        self.offset + self.letters.len() as i64
    }

    pub fn get(&self, k: i64) -> Option<Symbol> {
        if k < self.offset || k >= self.end() {
            return None;
        }
        self.letters[(k - self.offset) as usize]
    }

    pub fn shifted(&self, by: i64) -> Pattern {
        Pattern::new(self.offset + by, self.letters.clone())
    }

    /// Conjunction of two patterns, or `None` on a letter clash.
    pub fn meet(&self, other: &Pattern) -> Option<Pattern> {
        if self.letters.is_empty() {
            return Some(other.clone());
        }
        if other.letters.is_empty() {
            return Some(self.clone());
        }
        let lo = self.offset.min(other.offset);
        let hi = self.end().max(other.end());
        let mut letters = Vec::with_capacity((hi - lo) as usize);
        for k in lo..hi {
            letters.push(match (self.get(k), other.get(k)) {
                (Some(a), Some(b)) if a != b => return None,
                (Some(a), _) | (_, Some(a)) => Some(a),
                (None, None) => None,
            });
        }
        Some(Pattern::new(lo, letters))
    }

    /// First coordinate where both patterns force different letters.
    pub fn clash(&self, other: &Pattern) -> Option<i64> {
        let lo = self.offset.max(other.offset);
        let hi = self.end().min(other.end());
        (lo..hi).find(|&k| matches!((self.get(k), other.get(k)), (Some(a), Some(b)) if a != b))
    }

    /// Lexicographically least target word realizing the pattern.
    pub fn realize(&self, x: &Sft) -> Option<Word> {
        x.least_matching(&self.letters)
            .map(|s| Word::at(s, self.offset))
    }
}

/// Dynamical ball `B(x, n, eps)`, realized as the cylinder fixing
/// `-(r-1) ..= n-1+(r-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynBall {
    pub cylinder: Word,
    pub n: usize,
    pub scale: Scale,
}

impl DynBall {
    pub fn window(n: usize, scale: Scale) -> (i64, i64) {
        let reach = scale.reach() as i64;
        (-reach, n as i64 - 1 + reach)
    }

    pub fn new(center: &Word, n: usize, scale: Scale) -> Result<DynBall> {
        let (lo, hi) = DynBall::window(n, scale);
        if !center.contains_coord(lo) || !center.contains_coord(hi) {
            return Err(Error::WindowTooShort(format!(
                "center covers {}..={} but the ball needs {lo}..={hi}",
                center.offset,
                center.end()
            )));
        }
        let start = (lo - center.offset) as usize;
        let symbols = center.symbols[start..start + (hi - lo + 1) as usize].to_vec();
        Ok(DynBall {
            cylinder: Word::at(symbols, lo),
            n,
            scale,
        })
    }

    pub fn pattern(&self) -> Pattern {
        Pattern::from_word(&self.cylinder)
    }

    /// `S^k` image of the ball: the same constraints moved to `-k`.
    pub fn shifted_pattern(&self, k: i64) -> Pattern {
        self.pattern().shifted(-k)
    }

    pub fn contains(&self, point: &Word) -> bool {
        (self.cylinder.offset..=self.cylinder.end())
            .all(|k| point.get(k) == self.cylinder.get(k))
    }

    /// Disjointness of two balls inside the subshift `x`.
    pub fn disjoint_in(&self, other: &DynBall, x: &Sft) -> bool {
        match self.pattern().meet(&other.pattern()) {
            None => true,
            Some(p) => p.realize(x).is_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str, offset: i64) -> Word {
        Word::at(s.bytes().map(|b| Symbol((b - b'0') as u16)).collect(), offset)
    }

    #[test]
    fn distance_examples() {
        let x = word("0101010", -3);
        assert_eq!(metric_dist(&x, &x).unwrap(), Distance::AtMost(4));
        assert!(metric_dist(&x, &x).unwrap().value() <= 0.5f64.powi(4));
        let y = word("0100010", -3);
        assert_eq!(metric_dist(&x, &y).unwrap(), Distance::Exact(0));
        assert_eq!(metric_dist(&x, &y).unwrap().value(), 1.0);
        let z = word("0101011", -3);
        assert_eq!(metric_dist(&x, &z).unwrap(), Distance::Exact(3));
        let a = word("00000", -2);
        let b = word("00001", -2);
        assert_eq!(metric_dist(&a, &b).unwrap(), Distance::Exact(2));
        assert_eq!(metric_dist(&a, &b).unwrap().value(), 0.25);
    }

    #[test]
    fn distance_needs_origin() {
        assert_eq!(
            metric_dist(&word("01", 1), &word("01", 0)),
            Err(Error::NoCommonCoordinate)
        );
    }

    #[test]
    fn dyadic_rounding() {
        let s = Scale::new(5).unwrap();
        assert_eq!(s.times(2).r, 4);
        assert_eq!(s.times(3).r, 4);
        assert_eq!(s.times(6).r, 3);
        assert_eq!(s.times(1), s);
        assert_eq!(Scale::new(1).unwrap().times(6).r, 0);
        assert_eq!(Scale::new(1).unwrap().times_clamped(6).r, 1);
    }

    #[test]
    fn ball_window() {
        let s = Scale::new(3).unwrap();
        assert_eq!(DynBall::window(4, s), (-2, 5));
        let c = word("0123456789", -4);
        let b = DynBall::new(&c, 4, s).unwrap();
        assert_eq!(b.cylinder, word("23456789", -2));
        assert!(DynBall::new(&c, 5, s).is_err());
    }

    #[test]
    fn ball_disjointness_uses_language() {
        let g = Sft::golden_mean();
        let s = Scale::new(1).unwrap();
        let a = DynBall::new(&word("1", 0), 1, s).unwrap();
        let b = DynBall::new(&word("01", -1), 1, s).unwrap();
        assert!(!a.disjoint_in(&b, &g));
        // 1 at coordinate 0 and 1 at coordinate 1 cannot coexist
        let c = Pattern::new(1, vec![Some(Symbol(1))]);
        assert!(a.pattern().meet(&c).unwrap().realize(&g).is_none());
    }

    #[test]
    fn pattern_meet_and_clash() {
        let p = Pattern::new(0, vec![Some(Symbol(0)), None]);
        let q = Pattern::new(1, vec![Some(Symbol(1)), Some(Symbol(0))]);
        let m = p.meet(&q).unwrap();
        assert_eq!(m.letters, vec![Some(Symbol(0)), Some(Symbol(1)), Some(Symbol(0))]);
        let r = Pattern::new(0, vec![Some(Symbol(1))]);
        assert_eq!(p.clash(&r), Some(0));
        assert!(p.meet(&r).is_none());
    }
}
