use crate::metric::Pattern;
use crate::shift::{Sft, Word};
use crate::spec_builder::{Element, SpecLetter, Specification};

/// Target points agreeing with fixed letters at fixed coordinates; all
/// other coordinates are free up to the target language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaConstraint {
    pub pattern: Pattern,
}

impl DeltaConstraint {
    /// `z_k = v_k` wherever `v_k` is not `*`.
    pub fn from_letters(offset: i64, letters: &[SpecLetter]) -> Self {
        DeltaConstraint {
            pattern: Pattern::new(offset, letters.to_vec()),
        }
    }

    /// The balls of the marker, the element and the inserted segment of
    /// `w_x`, placed at their coordinates in the generating word.
    ///
    /// Returns `None` when two balls force different letters somewhere.
    pub fn generating(spec: &Specification, x: &Element, at: i64) -> Option<Self> {
        let reach = spec.reach() as i64;
        let len = spec.generating_len(x.n) as i64;
        let mut p = Pattern::new(at, vec![None; len as usize]);
        for (pos, e) in spec.anchors(x) {
            let ball = Pattern::new(at + pos as i64 - reach, e.window.iter().map(|&a| Some(a)).collect());
            p = p.meet(&ball)?;
        }
        Some(DeltaConstraint { pattern: p })
    }

    pub fn meet(&self, other: &DeltaConstraint) -> Option<DeltaConstraint> {
        self.pattern.meet(&other.pattern).map(|pattern| DeltaConstraint { pattern })
    }
}

/// The lexicographically least point window satisfying `c`, if any.
pub fn delta_nonempty(x: &Sft, c: &DeltaConstraint) -> Option<Word> {
    c.pattern.realize(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Scale;
    use crate::shift::Symbol;
    use crate::spec_builder::{build_simple_spec, BuildOptions};
    use crate::spec_props::SublinearL;

    #[test]
    fn all_free_window() {
        let x = Sft::golden_mean();
        let c = DeltaConstraint::from_letters(0, &[None; 5]);
        let w = delta_nonempty(&x, &c).unwrap();
        assert_eq!(x.alphabet().format(&w.symbols), "00000");
    }

    #[test]
    fn forced_forbidden_word() {
        let x = Sft::golden_mean();
        let one = Some(Symbol(1));
        let c = DeltaConstraint::from_letters(3, &[None, one, one, None]);
        assert!(delta_nonempty(&x, &c).is_none());
        let c = DeltaConstraint::from_letters(3, &[None, one, None, one]);
        assert_eq!(delta_nonempty(&x, &c).unwrap().offset, 3);
    }

    #[test]
    fn generating_word_constraint() {
        let x = Sft::golden_mean();
        let opts = BuildOptions {
            max_elements: Some(6),
            ..BuildOptions::default()
        };
        let b = build_simple_spec(&x, 0.005, &SublinearL::Const(3), Scale::new(1).unwrap(), &opts).unwrap();
        for e in b.spec.elements.all(16).unwrap() {
            let c = DeltaConstraint::generating(&b.spec, &e, 0).unwrap();
            let w = delta_nonempty(&x, &c).unwrap();
            assert_eq!(w.len(), b.spec.generating_len(e.n));
            // every non-star letter of w_x is kept
            for (k, a) in b.spec.generating_word(&e).iter().enumerate() {
                if let Some(a) = a {
                    assert_eq!(w.symbols[k], *a);
                }
            }
        }
    }

    #[test]
    fn fewer_constraints_stay_nonempty() {
        let x = Sft::golden_mean();
        let one = Some(Symbol(1));
        let zero = Some(Symbol(0));
        let full = [one, zero, one, zero, zero, one];
        assert!(delta_nonempty(&x, &DeltaConstraint::from_letters(0, &full)).is_some());
        for k in 0..full.len() {
            let mut v = full;
            v[k] = None;
            assert!(delta_nonempty(&x, &DeltaConstraint::from_letters(0, &v)).is_some());
        }
    }
}
