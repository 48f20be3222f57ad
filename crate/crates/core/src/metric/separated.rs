use num_bigint::BigUint;

use super::scale::{DynBall, Scale};
use crate::error::{Error, Result};
use crate::shift::{Sft, Word};

/// Elements `(x, N(x))`, each `x` a positioned word covering the ball
/// window of `B(x, N(x), eps)`.
#[derive(Clone, Debug)]
pub struct SeparatedSet {
    pub elements: Vec<(Word, usize)>,
    pub scale: Scale,
}

impl SeparatedSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// First pair with equal `N` whose balls intersect inside `x`.
    pub fn violation(&self, x: &Sft) -> Result<Option<(usize, usize)>> {
        let balls = self
            .elements
            .iter()
            .map(|(w, n)| DynBall::new(w, *n, self.scale))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..balls.len() {
            for j in i + 1..balls.len() {
                if balls[i].n == balls[j].n && !balls[i].disjoint_in(&balls[j], x) {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }
}

/// Minimal number of `(n, eps)`-balls covering `x`: the number of allowed
/// words on the ball window.
pub fn covering_number(x: &Sft, n: usize, scale: Scale) -> BigUint {
    x.count_words(n + 2 * scale.reach())
}

/// Greedy maximal `(n, eps)`-separated set in lexicographic order. Distinct
/// window words give disjoint balls, so greedy keeps the first `capacity`
/// allowed window words. With `exact`, fewer than `capacity` is an error.
pub fn extract_separated(
    x: &Sft,
    n: usize,
    scale: Scale,
    capacity: usize,
    exact: bool,
) -> Result<SeparatedSet> {
    let len = n + 2 * scale.reach();
    let available = x.count_words(len);
    if exact && available < BigUint::from(capacity) {
        return Err(Error::InsufficientWords {
            found: available.try_into().unwrap_or(usize::MAX),
            wanted: capacity,
        });
    }
    let take = available.min(BigUint::from(capacity));
    let take: usize = take.try_into().expect("bounded by capacity");
    let offset = -(scale.reach() as i64);
    let elements = (0..take)
        .map(|r| {
            x.unrank_word(len, &BigUint::from(r))
                .map(|w| (Word::at(w.symbols, offset), n))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SeparatedSet {
        elements,
        scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covering_examples() {
        let s1 = Scale::new(1).unwrap();
        let s2 = Scale::new(2).unwrap();
        assert_eq!(covering_number(&Sft::full_shift(2), 3, s1), BigUint::from(8u32));
        assert_eq!(covering_number(&Sft::golden_mean(), 3, s1), BigUint::from(5u32));
        assert_eq!(covering_number(&Sft::golden_mean(), 3, s2), BigUint::from(13u32));
    }

    #[test]
    fn extraction_examples() {
        let s1 = Scale::new(1).unwrap();
        let full = extract_separated(&Sft::full_shift(2), 4, s1, usize::MAX, false).unwrap();
        assert_eq!(full.len(), 16);
        let g = Sft::golden_mean();
        let gm = extract_separated(&g, 3, s1, 100, false).unwrap();
        assert_eq!(gm.len(), 5);
        assert_eq!(gm.violation(&g).unwrap(), None);
        let two = extract_separated(&Sft::full_shift(2), 4, s1, 2, true).unwrap();
        assert_eq!(two.len(), 2);
        assert!(matches!(
            extract_separated(&g, 3, s1, 6, true),
            Err(Error::InsufficientWords { found: 5, wanted: 6 })
        ));
    }

    #[test]
    fn separation_at_finer_scale() {
        let g = Sft::golden_mean();
        let s = Scale::new(3).unwrap();
        let set = extract_separated(&g, 4, s, 1000, false).unwrap();
        assert_eq!(set.len(), 55); // |L_8| for the golden mean
        assert_eq!(set.violation(&g).unwrap(), None);
    }

    #[test]
    fn duplicate_is_a_violation() {
        let g = Sft::golden_mean();
        let s = Scale::new(1).unwrap();
        let mut set = extract_separated(&g, 3, s, 3, true).unwrap();
        set.elements.push(set.elements[1].clone());
        assert_eq!(set.violation(&g).unwrap(), Some((1, 3)));
    }
}
