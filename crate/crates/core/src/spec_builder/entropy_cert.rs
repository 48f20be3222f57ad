use num_traits::ToPrimitive;

use super::certificate::{Certificate, CertificateKind};
use super::spec::Specification;
use crate::metric::ln_big;

/// Threshold on `min(m/N_max, l/N_max)` below which the bracket is asserted.
pub const BRACKET_RATIO: f64 = 0.05;

/// Largest element set for which the Perron root of the presentation
/// graph is computed alongside the length equation.
pub const SPECTRAL_LIMIT: u64 = 4096;

/// Entropy bounds for a specification.
///
/// The entropy is the root of `sum #{x : N(x) = n} e^{-(n + q) h} = 1`,
/// cross-checked against the Perron root when `E` is small. The bracket
/// `[ln #E / N_max (1 - gamma), ln #E / N_min]` is asserted whenever
/// `min(m, l) / N_max <= 0.05`; `h >= ln #E / (N_max + q)` and
/// `h <= ln #E / N_min` always.
pub fn entropy_certificate(spec: &Specification, gamma: f64) -> Certificate {
    let mut cert = Certificate::new(CertificateKind::Entropy);
    let count = spec.elements.count();
    let (n_lo, n_hi) = match (spec.elements.n_min(), spec.elements.n_max()) {
        (Some(a), Some(b)) => (a as f64, b as f64),
        _ => {
            cert.check("nonempty", false, "E is empty");
            return cert;
        }
    };
    let ln_e = count.to_f64().map(f64::ln).filter(|v| v.is_finite()).unwrap_or_else(|| ln_big(&count));
    let q = spec.q() as f64;
    let h = spec.entropy();
    let ratio = (spec.m() as f64 / n_hi).min(spec.l as f64 / n_hi);
    cert.param("#E", &count);
    cert.param("q", spec.q());
    cert.param("gamma", gamma);
    cert.param("h", format!("{h:.9}"));
    cert.param("min(m,l)/N_max", format!("{ratio:.6}"));

    if count <= num_bigint::BigUint::from(SPECTRAL_LIMIT) {
        match spec.spectral_entropy(SPECTRAL_LIMIT) {
            Ok(hs) => cert.check(
                "spectral",
                (hs - h).abs() <= 1e-9,
                format!("Perron {hs:.12} vs length equation {h:.12}"),
            ),
            Err(e) => cert.check("spectral", false, e.to_string()),
        }
    }
    let lo = ln_e / n_hi * (1.0 - gamma);
    let hi = ln_e / n_lo;
    if ratio <= BRACKET_RATIO {
        cert.check(
            "bracket",
            lo <= h && h <= hi,
            format!("{lo:.9} <= {h:.9} <= {hi:.9}"),
        );
    } else {
        cert.check(
            "bracket",
            true,
            format!("not asserted: ratio {ratio:.4} > {BRACKET_RATIO}; h = {h:.9}, bracket [{lo:.9}, {hi:.9}]"),
        );
    }
    let floor = ln_e / (n_hi + q);
    cert.check("lower", h >= floor - 1e-12, format!("h = {h:.9} >= ln#E/(N_max+q) = {floor:.9}"));
    cert.check("upper", h <= hi + 1e-12, format!("h = {h:.9} <= ln#E/N_min = {hi:.9}"));
    cert
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Scale;
    use crate::shift::{Sft, Symbol};
    use crate::spec_builder::spec::{Element, ElementSet};
    use crate::spec_props::SublinearL;

    /// `#E = 16`, `n_0 = 32`, `q = 6` (m = 2, L = 1, l = 1).
    fn sixteen() -> Specification {
        let x = Sft::full_shift(2);
        let word = |i: usize, n: usize| -> Vec<Symbol> {
            (0..=n).map(|k| Symbol(((i >> (k % 4)) & 1) as u16)).collect()
        };
        let mut elements: Vec<Element> = (0..15).map(|i| Element { n: 32, window: word(i, 32) }).collect();
        elements.push(Element { n: 33, window: word(15, 33) });
        Specification {
            target: x,
            scale: Scale::new(1).unwrap(),
            marker: Element { n: 2, window: vec![Symbol(1), Symbol(0), Symbol(0)] },
            l: 1,
            big_l: SublinearL::Const(1),
            elements: ElementSet::explicit(0, elements),
            dense: None,
        }
    }

    #[test]
    fn sixteen_elements() {
        let s = sixteen();
        assert_eq!(s.q(), 6);
        let c = entropy_certificate(&s, 0.2);
        assert!(c.passed(), "{c}");
        let h = s.entropy();
        let ln16 = 16f64.ln();
        assert!(h >= ln16 / 39.0 && h <= ln16 / 32.0);
        assert!(h >= ln16 / 33.0 * 0.8);
    }

    #[test]
    fn single_element_has_zero_entropy() {
        let mut s = sixteen();
        s.elements.explicit.truncate(1);
        assert_eq!(s.entropy(), 0.0);
        let c = entropy_certificate(&s, 0.2);
        assert!(c.passed(), "{c}");
    }

    #[test]
    fn small_l_alone_does_not_give_the_bracket() {
        // m/N_max large, l/N_max small: the lower end of the bracket fails
        let mut s = sixteen();
        let mut w = vec![Symbol(1)];
        w.extend(std::iter::repeat_n(Symbol(0), 20));
        s.marker = Element { n: 20, window: w };
        let c = entropy_certificate(&s, 0.2);
        assert!(!c.get("bracket").unwrap().pass, "{c}");
        assert!(c.get("lower").unwrap().pass);
    }
}
