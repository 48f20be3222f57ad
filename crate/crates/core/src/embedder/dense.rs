use crate::error::{Error, Result};
use crate::shift::Symbol;
use crate::spec_builder::{verify_admissible, Certificate, Element, Specification};

/// Appends `z` and a padding of `L(|z|)` stars to every generating word.
///
/// Requires `m >= 4 |z|`. An empty `z` leaves the specification unchanged.
pub fn insert_dense_segment(spec: &Specification, z: &[Symbol]) -> Result<(Specification, Certificate)> {
    let mut out = spec.clone();
    if z.is_empty() {
        let cert = verify_admissible(&out);
        return Ok((out, cert));
    }
    let m = spec.m();
    if m < 4 * z.len() {
        return Err(Error::MarkerTooShort(format!("m = {m} below 4 |z| = {}", 4 * z.len())));
    }
    let x = &spec.target;
    let reach = spec.reach();
    let mut pattern = vec![None; reach];
    pattern.extend(z.iter().map(|&a| Some(a)));
    pattern.extend(std::iter::repeat_n(None, reach));
    let window = x.least_matching(&pattern).ok_or(Error::NotAWord)?;
    out.dense = Some(Element::new(z.len() - 1, window, reach)?);
    let cert = verify_admissible(&out);
    Ok((out, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedder::find_covering_word;
    use crate::metric::Scale;
    use crate::shift::Sft;
    use crate::spec_builder::{build_simple_spec, BuildOptions, SpecLetter};
    use crate::spec_props::SublinearL;

    fn runs(w: &[SpecLetter]) -> Vec<Vec<Symbol>> {
        w.split(Option::is_none)
            .map(|r| r.iter().map(|a| a.unwrap()).collect())
            .collect()
    }

    #[test]
    fn covering_segment_keeps_admissibility() {
        let x = Sft::full_shift(2);
        let opts = BuildOptions {
            n0_min: 140,
            ..BuildOptions::default()
        };
        let b = build_simple_spec(&x, 0.3, &SublinearL::Const(1), Scale::new(1).unwrap(), &opts).unwrap();
        let z = find_covering_word(&x, 2).unwrap().symbols;
        let (s, cert) = insert_dense_segment(&b.spec, &z).unwrap();
        assert!(cert.passed(), "{cert}");
        assert_eq!(s.q(), b.spec.q() + z.len() + 1);
        let words = x.enumerate_words(2).unwrap();
        for i in 0..8u32 {
            let e = s.elements.get(&i.into()).unwrap();
            let segs = runs(&s.generating_word(&e));
            for v in &words {
                assert!(segs.iter().any(|r| r.windows(2).any(|u| u == v.symbols.as_slice())));
            }
        }
    }

    #[test]
    fn empty_segment_is_identity() {
        let x = Sft::golden_mean();
        let opts = BuildOptions {
            max_elements: Some(4),
            ..BuildOptions::default()
        };
        let b = build_simple_spec(&x, 0.005, &SublinearL::Const(1), Scale::new(1).unwrap(), &opts).unwrap();
        let (s, cert) = insert_dense_segment(&b.spec, &[]).unwrap();
        assert!(s.dense.is_none());
        assert_eq!(s.q(), b.spec.q());
        assert!(cert.passed());
    }

    #[test]
    fn long_segment_rejected() {
        let x = Sft::full_shift(2);
        let b = build_simple_spec(&x, 0.3, &SublinearL::Const(1), Scale::new(1).unwrap(), &BuildOptions::default()).unwrap();
        let z = vec![Symbol(0); b.spec.m()];
        assert!(matches!(insert_dense_segment(&b.spec, &z), Err(Error::MarkerTooShort(_))));
    }
}
