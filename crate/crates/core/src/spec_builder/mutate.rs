//! Targeted corruptions of a specification, one per admissibility item.

use num_bigint::BigUint;

use super::spec::{Element, Specification};
use crate::error::{Error, Result};
use crate::shift::Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Padding `l` raised until `12 l >= m`.
    WidePadding,
    /// A member of `E` listed twice.
    Duplicate,
    /// Marker replaced by a word of period at most 2.
    PeriodicMarker,
    /// An element starting with the marker ball.
    MarkerInside,
}

impl Mutation {
    pub const ALL: [Mutation; 4] = [
        Mutation::WidePadding,
        Mutation::Duplicate,
        Mutation::PeriodicMarker,
        Mutation::MarkerInside,
    ];

    /// The admissibility check this mutation breaks.
    pub fn item(self) -> &'static str {
        match self {
            Mutation::WidePadding => "item1",
            Mutation::Duplicate => "item2",
            Mutation::PeriodicMarker => "item3",
            Mutation::MarkerInside => "item4",
        }
    }

    pub fn apply(self, spec: &Specification) -> Result<Specification> {
        let mut s = spec.clone();
        let x = &spec.target;
        let reach = spec.reach();
        match self {
            Mutation::WidePadding => {
                s.l = spec.m() / 12 + 1;
            }
            Mutation::Duplicate => {
                let first = spec.elements.get(&BigUint::from(0u32))?;
                s.elements.explicit.push(first);
            }
            Mutation::PeriodicMarker => {
                let len = spec.marker.window.len();
                let periodic = |a: Symbol, b: Symbol| -> Vec<Symbol> {
                    (0..len).map(|i| if i % 2 == 0 { a } else { b }).collect()
                };
                let syms: Vec<Symbol> = x.alphabet().symbols().collect();
                let window = syms
                    .iter()
                    .flat_map(|&a| syms.iter().map(move |&b| (a, b)))
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| periodic(a, b))
                    .chain(syms.iter().map(|&a| vec![a; len]))
                    .find(|w| x.is_allowed(w))
                    .ok_or(Error::EmptyLanguage)?;
                s.marker = Element::new(spec.m(), window, reach)?;
            }
            Mutation::MarkerInside => {
                let n = spec.elements.n_min().ok_or(Error::EmptyLanguage)?;
                let ball = spec.marker.ball_window();
                let total = n + 2 * reach + 1;
                if ball.len() > total {
                    return Err(Error::MarkerTooShort(format!("N = {n} shorter than the marker")));
                }
                let mut pattern: Vec<Option<Symbol>> = ball.iter().map(|&a| Some(a)).collect();
                pattern.resize(total, None);
                let window = x.least_matching(&pattern).ok_or(Error::NotAWord)?;
                s.elements.explicit.push(Element::new(n, window, reach)?);
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Scale;
    use crate::shift::Sft;
    use crate::spec_builder::admissible::verify_admissible;
    use crate::spec_builder::builder::{build_simple_spec, BuildOptions};
    use crate::spec_props::SublinearL;

    #[test]
    fn each_mutation_breaks_its_item() {
        let cases = [
            (Sft::full_shift(2), 1u32, None),
            (Sft::golden_mean(), 2, Some(12)),
            (Sft::golden_mean(), 3, None),
        ];
        for (x, r, cap) in cases {
            let opts = BuildOptions {
                max_elements: cap,
                ..BuildOptions::default()
            };
            let b = build_simple_spec(&x, 0.01, &SublinearL::Const(1), Scale::new(r).unwrap(), &opts).unwrap();
            assert!(b.admissibility.passed());
            for mu in Mutation::ALL {
                let bad = mu.apply(&b.spec).unwrap();
                let c = verify_admissible(&bad);
                let check = c.get(mu.item()).unwrap();
                assert!(!check.pass, "{mu:?} at r={r}: {c}");
                assert!(!check.witness.is_empty());
            }
        }
    }

    #[test]
    fn periodic_marker_fails_at_shift_two() {
        let x = Sft::full_shift(2);
        let b = build_simple_spec(&x, 0.3, &SublinearL::Const(1), Scale::new(1).unwrap(), &BuildOptions::default()).unwrap();
        let bad = Mutation::PeriodicMarker.apply(&b.spec).unwrap();
        assert_eq!(x.alphabet().format(&bad.marker.window[..4]), "0101");
        let c = verify_admissible(&bad);
        assert_eq!(c.get("item3").unwrap().witness, "marker overlaps its shift by 2");
    }
}
