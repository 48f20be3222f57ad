use num_bigint::BigUint;

use super::delta::{delta_nonempty, DeltaConstraint};
use crate::spec_builder::{Certificate, CertificateKind, Specification};

/// Largest `#E` for the exhaustive pair check.
pub const PAIR_LIMIT: u64 = 64;

/// Exhaustive check that `Δ(A1 B1)` and `Δ(A2 B2)` only meet when `A1` and
/// `A2` are the same generating word at the same position, over all
/// generating words and all shifts with overlapping `A`-intervals.
pub fn verify_injectivity_pairs(spec: &Specification) -> Certificate {
    let mut cert = Certificate::new(CertificateKind::Injectivity);
    let x = &spec.target;
    cert.param("#E", spec.elements.count());
    if spec.elements.count() > BigUint::from(PAIR_LIMIT) {
        cert.check("pairs", false, format!("#E exceeds {PAIR_LIMIT}"));
        return cert;
    }
    let elements = match spec.elements.all(PAIR_LIMIT) {
        Ok(v) => v,
        Err(e) => {
            cert.check("pairs", false, e.to_string());
            return cert;
        }
    };
    let mut deltas = Vec::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        match DeltaConstraint::generating(spec, e, 0) {
            Some(d) => deltas.push(d),
            None => {
                cert.check("pairs", false, format!("balls of generating word #{i} clash"));
                return cert;
            }
        }
    }
    let lens: Vec<i64> = elements.iter().map(|e| spec.generating_len(e.n) as i64).collect();
    let shifted = |i: usize, by: i64| DeltaConstraint {
        pattern: deltas[i].pattern.shifted(by),
    };
    let mut a_pairs = 0u64;
    let mut tested = 0u64;
    for i in 0..elements.len() {
        for j in 0..elements.len() {
            for t in (1 - lens[j])..lens[i] {
                if i == j && t == 0 {
                    continue;
                }
                a_pairs += 1;
                let Some(aa) = deltas[i].meet(&shifted(j, t)) else { continue };
                if delta_nonempty(x, &aa).is_none() {
                    continue;
                }
                for k in 0..elements.len() {
                    let Some(left) = aa.meet(&shifted(k, lens[i])) else { continue };
                    for l in 0..elements.len() {
                        tested += 1;
                        let Some(both) = left.meet(&shifted(l, t + lens[j])) else { continue };
                        if let Some(w) = delta_nonempty(x, &both) {
                            cert.param("A-pairs", a_pairs);
                            cert.param("quadruples", tested);
                            cert.check(
                                "pairs",
                                false,
                                format!(
                                    "A1=#{i} at 0, A2=#{j} at {t}, B1=#{k}, B2=#{l}: common point {} at {}",
                                    x.alphabet().format(&w.symbols),
                                    w.offset
                                ),
                            );
                            return cert;
                        }
                    }
                }
            }
        }
    }
    cert.param("A-pairs", a_pairs);
    cert.param("quadruples", tested);
    cert.check("pairs", true, format!("no counterexample among {} generating words", elements.len()));
    cert
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Scale;
    use crate::shift::Sft;
    use crate::spec_builder::{build_simple_spec, BuildOptions, Mutation};
    use crate::spec_props::SublinearL;

    fn capped(x: &Sft, r: u32, cap: usize) -> Specification {
        let opts = BuildOptions {
            max_elements: Some(cap),
            ..BuildOptions::default()
        };
        build_simple_spec(x, 0.005, &SublinearL::Const(1), Scale::new(r).unwrap(), &opts)
            .unwrap()
            .spec
    }

    #[test]
    fn admissible_specs_pass() {
        for (x, r, cap) in [(Sft::full_shift(2), 1, 16), (Sft::golden_mean(), 2, 12)] {
            let spec = capped(&x, r, cap);
            let c = verify_injectivity_pairs(&spec);
            assert!(c.passed(), "{c}");
        }
    }

    #[test]
    fn single_element() {
        let mut spec = capped(&Sft::full_shift(2), 1, 2);
        spec.elements.explicit.truncate(1);
        assert!(verify_injectivity_pairs(&spec).passed());
    }

    /// `E = {x, x'}` with `x'` the shift of `x` by two: harmless until the
    /// marker gets period two.
    #[test]
    fn periodic_marker_fails() {
        let x = Sft::full_shift(2);
        let mut spec = capped(&x, 1, 2);
        let mut e = spec.elements.explicit[1].clone();
        let n = e.n;
        let bad = Mutation::PeriodicMarker.apply(&spec).unwrap();
        // under the shifted marker's last letter
        e.window[0] = bad.marker.window[bad.m()];
        let mut shifted = e.window[2..].to_vec();
        shifted.push(crate::shift::Symbol(0));
        shifted.push(bad.marker.window[0]);
        let pair = vec![e, crate::spec_builder::Element { n, window: shifted }];
        spec.elements = crate::spec_builder::ElementSet::explicit(0, pair.clone());
        assert!(verify_injectivity_pairs(&spec).passed());
        let mut bad = bad;
        bad.elements = crate::spec_builder::ElementSet::explicit(0, pair);
        let c = verify_injectivity_pairs(&bad);
        assert!(!c.passed(), "{c}");
        assert!(c.get("pairs").unwrap().witness.contains("common point"), "{c}");
    }
}
