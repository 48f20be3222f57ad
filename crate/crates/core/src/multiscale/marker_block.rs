//! Marker blocks `C_k = A^q B^q` and constraint patterns of level words.

use super::stage0::{Base, Letter};
use crate::error::{Error, Result};
use crate::metric::Pattern;

/// Pattern fixing, for every orbit letter `S^j p` of `word` placed at
/// `origin`, the letters `p_{j-r} .. p_{j+r}`. `None` when two windows clash.
pub fn delta_pattern(base: &Base, word: &[Letter], origin: i64, reach: usize) -> Option<Pattern> {
    assert!(reach <= base.margin, "reach beyond the stored margin");
    let r = reach as i64;
    let mut letters = vec![None; word.len() + 2 * reach];
    for (t, c) in word.iter().enumerate() {
        let Letter::Orbit { point, j } = *c else { continue };
        for u in -r..=r {
            let a = base.letter(point, j as i64 + u);
            let slot = &mut letters[(t as i64 + u + r) as usize];
            match slot {
                Some(b) if *b != a => return None,
                _ => *slot = Some(a),
            }
        }
    }
    Some(Pattern::new(origin - r, letters))
}

#[derive(Clone, Debug)]
pub struct MarkerBlock {
    pub word: Vec<Letter>,
    pub q: usize,
}

impl MarkerBlock {
    pub fn m(&self) -> usize {
        self.word.len()
    }
}

/// Least `0 < l <= max_shift` with the constraint sets of `word` and of its
/// shift by `l` meeting.
pub fn block_overlap(base: &Base, word: &[Letter], reach: usize, max_shift: usize) -> Option<usize> {
    let p = delta_pattern(base, word, 0, reach)?;
    (1..=max_shift).find(|&l| {
        let q = p.shifted(l as i64);
        p.clash(&q).is_none() && p.meet(&q).and_then(|m| m.realize(&base.spec.target)).is_some()
    })
}

/// `C = A^q B^q` for the generating words of points `a`, `b`, rejected when
/// it overlaps a shift of itself by at most `3m/4` at the base scale.
pub fn build_marker_block(base: &Base, a: u32, b: u32, q: usize) -> Result<MarkerBlock> {
    if q == 0 {
        return Err(Error::OutOfRange("q must be positive".into()));
    }
    let mut word = Vec::new();
    for _ in 0..q {
        word.extend(base.word(a));
    }
    for _ in 0..q {
        word.extend(base.word(b));
    }
    let reach = base.spec.reach();
    if delta_pattern(base, &word, 0, reach).is_none() {
        return Err(Error::AdmissibilityFailure("marker block has no realization".into()));
    }
    let max_shift = 3 * word.len() / 4;
    if let Some(l) = block_overlap(base, &word, reach, max_shift) {
        return Err(Error::AdmissibilityFailure(format!(
            "marker block overlaps its shift by {l} (m = {})",
            word.len()
        )));
    }
    Ok(MarkerBlock { word, q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiscale::{ScaleBudget, StageZeroOptions};
    use crate::shift::Sft;

    fn small_base() -> Base {
        let opts = StageZeroOptions {
            e2: (1, 1),
            ..StageZeroOptions::default()
        };
        Base::build(&Sft::full_shift(2), ScaleBudget::new(1, 1).unwrap(), &opts).unwrap()
    }

    #[test]
    fn repeated_word_overlaps_at_its_length() {
        let base = small_base();
        let len = base.len(base.a);
        match build_marker_block(&base, base.a, base.a, 1) {
            Err(Error::AdmissibilityFailure(msg)) => assert!(msg.contains(&format!("by {len} ")), "{msg}"),
            other => panic!("{other:?}"),
        }
        let c = build_marker_block(&base, base.a, base.b, 1).unwrap();
        assert_eq!(c.m(), len + base.len(base.b));
        assert!(build_marker_block(&base, base.a, base.b, 0).is_err());
    }

    #[test]
    fn pattern_of_a_generating_word() {
        let base = small_base();
        let w = base.word(base.a);
        let p = delta_pattern(&base, &w, 0, 1).unwrap();
        assert!(p.realize(&base.spec.target).is_some());
        assert_eq!(block_overlap(&base, &w, 1, 3 * w.len() / 4), None);
    }
}
