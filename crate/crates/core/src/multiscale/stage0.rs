//! The base level: one admissible specification split into `E_0`, `E''_0`
//! and the two marker-block elements `a_0`, `b_0`.

use num_bigint::BigUint;

use super::budget::ScaleBudget;
use super::flower::Family;
use crate::embedder::verify_injectivity_pairs;
use crate::error::{Error, Result};
use crate::metric::flower_entropy;
use crate::shift::{Sft, Symbol};
use crate::spec_builder::{
    build_at, choose_parameters, marker_meets, verify_admissible, BuildOptions, Certificate, Element, ElementSet,
    Specification,
};
use crate::spec_props::SublinearL;

/// A letter of a level word: a star or an orbit letter `S^j p` of a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Star,
    Orbit { point: u32, j: u32 },
}

#[derive(Clone, Debug)]
pub struct StageZeroOptions {
    pub delta: f64,
    pub n0_min: usize,
    /// `(short, long)` counts in `E_0`.
    pub e: (usize, usize),
    /// `(short, long)` counts in `E''_0`.
    pub e2: (usize, usize),
}

impl Default for StageZeroOptions {
    fn default() -> Self {
        StageZeroOptions {
            delta: 0.25,
            n0_min: 16,
            e: (1, 1),
            e2: (16, 16),
        }
    }
}

/// `Lambda'_0` with its parts and every point extended to a common margin.
#[derive(Clone, Debug)]
pub struct Base {
    pub spec: Specification,
    pub budget: ScaleBudget,
    pub margin: usize,
    /// Point 0 is the marker, point `i + 1` is explicit element `i`.
    pub points: Vec<Vec<Symbol>>,
    pub ns: Vec<usize>,
    pub e: Vec<u32>,
    pub e2: Vec<u32>,
    pub a: u32,
    pub b: u32,
    pub admissibility: Certificate,
    pub pairs: Certificate,
    /// `P_0 = m_0 + 1 + L(m_0) + l_0`.
    pub p0: usize,
}

fn extend(x: &Sft, window: &[Symbol], reach: usize, margin: usize) -> Result<Vec<Symbol>> {
    let pad = margin - reach;
    let mut pat = vec![None; pad];
    pat.extend(window.iter().map(|&a| Some(a)));
    pat.extend(std::iter::repeat_n(None, pad));
    x.least_matching(&pat).ok_or(Error::NotAWord)
}

impl Base {
    pub fn build(x: &Sft, budget: ScaleBudget, opts: &StageZeroOptions) -> Result<Base> {
        let scale = budget.eps(0);
        let reach = scale.reach();
        let big_l = SublinearL::Const(ScaleBudget::gap_for(x, budget.eps(1))?);
        let mut n0_min = opts.n0_min;
        let params = loop {
            let p = choose_parameters(&big_l, opts.delta, n0_min, 1 << 14)?;
            let p0 = p.m + 1 + big_l.at(p.m) + p.l;
            if 2 * p0 < p.n0 {
                break p;
            }
            n0_min = p.n0 + 1;
        };
        let bopts = BuildOptions {
            delta: opts.delta,
            ..BuildOptions::default()
        };
        let (built, _) = build_at(x, &big_l, scale, params, &bopts)?;
        let part = built.elements.regular.as_ref().ok_or(Error::EmptyLanguage)?;
        let n0 = params.n0;
        let shorts_needed = opts.e.0 + opts.e2.0 + 2;
        let longs_needed = opts.e.1 + opts.e2.1;
        let total = part.count();
        let mut shorts = Vec::new();
        let mut longs = Vec::new();
        let mut r = 0u64;
        let ball = built.marker.ball_window().to_vec();
        while shorts.len() < shorts_needed || longs.len() < longs_needed {
            if BigUint::from(r) >= total {
                return Err(Error::EntropyShortfall(format!(
                    "{total} elements at n0 = {n0}, {} wanted",
                    shorts_needed + longs_needed
                )));
            }
            let w = part.nth(&BigUint::from(r))?;
            r += 1;
            if shorts.len() < shorts_needed {
                shorts.push(Element { n: n0, window: w });
                continue;
            }
            if let Some(e) = Element::canonical(x, &w[reach..reach + n0 + 1], reach) {
                if marker_meets(x, &ball, params.m, &e, reach).is_none() {
                    longs.push(e);
                }
            }
        }
        let mut list = Vec::new();
        let mut take = |from: &mut Vec<Element>, k: usize| -> Vec<u32> {
            let first = list.len();
            list.extend(from.drain(..k));
            (first..list.len()).map(|i| i as u32 + 1).collect()
        };
        let mut e = take(&mut shorts, opts.e.0);
        e.extend(take(&mut longs, opts.e.1));
        let mut e2 = take(&mut shorts, opts.e2.0);
        e2.extend(take(&mut longs, opts.e2.1));
        let ab = take(&mut shorts, 2);
        let spec = Specification {
            elements: ElementSet::explicit(reach, list),
            ..built
        };
        let admissibility = verify_admissible(&spec);
        let pairs = verify_injectivity_pairs(&spec);
        let margin = budget.eps(1).reach().max(reach);
        let mut points = vec![extend(x, &spec.marker.window, reach, margin)?];
        let mut ns = vec![spec.m()];
        for el in &spec.elements.explicit {
            points.push(extend(x, &el.window, reach, margin)?);
            ns.push(el.n);
        }
        let p0 = spec.m() + 1 + spec.big_l.at(spec.m()) + spec.l;
        Ok(Base {
            spec,
            budget,
            margin,
            points,
            ns,
            e,
            e2,
            a: ab[0],
            b: ab[1],
            admissibility,
            pairs,
            p0,
        })
    }

    pub fn n0(&self) -> usize {
        self.ns[self.e[0] as usize]
    }

    /// Letter of point `p` at coordinate `j + t`.
    pub fn letter(&self, point: u32, j: i64) -> Symbol {
        self.points[point as usize][(self.margin as i64 + j) as usize]
    }

    pub fn len(&self, point: u32) -> usize {
        self.spec.generating_len(self.ns[point as usize])
    }

    /// The generating word of element point `p` as level letters.
    pub fn word(&self, point: u32) -> Vec<Letter> {
        let m = self.spec.m();
        let mut w: Vec<Letter> = (0..=m as u32).map(|j| Letter::Orbit { point: 0, j }).collect();
        w.extend(std::iter::repeat_n(Letter::Star, self.spec.big_l.at(m)));
        w.extend((0..=self.ns[point as usize] as u32).map(|j| Letter::Orbit { point, j }));
        w.extend(std::iter::repeat_n(Letter::Star, self.spec.l));
        w
    }

    /// Target letter carried by a level letter.
    pub fn target_letter(&self, c: Letter) -> Option<Symbol> {
        match c {
            Letter::Star => None,
            Letter::Orbit { point, j } => Some(self.letter(point, j as i64)),
        }
    }

    pub fn family(&self, ids: &[u32], horizon: usize) -> Family {
        Family::new(ids.iter().map(|&p| self.len(p)).collect(), horizon)
    }

    pub fn entropy_of(&self, ids: &[u32]) -> f64 {
        let mut classes: Vec<(usize, BigUint)> = Vec::new();
        for &p in ids {
            let n = self.len(p);
            match classes.iter_mut().find(|c| c.0 == n) {
                Some(c) => c.1 += 1u32,
                None => classes.push((n, BigUint::from(1u32))),
            }
        }
        classes.sort();
        flower_entropy(&classes)
    }

    /// `N` of the elements `ids`, as (min, max).
    pub fn n_range(&self, ids: &[u32]) -> (usize, usize) {
        let it = ids.iter().map(|&p| self.ns[p as usize]);
        (it.clone().min().unwrap_or(0), it.max().unwrap_or(0))
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn describe(&self) -> String {
        format!(
            "n0={} m0={} L={} l0={} #E0={} #E''0={} margin={} P0={}",
            self.n0(),
            self.spec.m(),
            self.spec.big_l,
            self.spec.l,
            self.e.len(),
            self.e2.len(),
            self.margin,
            self.p0
        )
    }
}

/// Generating length classes of `ids` as `(len, count)`.
pub fn length_counts(base: &Base, ids: &[u32]) -> Vec<(usize, u64)> {
    let mut out: Vec<(usize, u64)> = Vec::new();
    for &p in ids {
        let n = base.len(p);
        match out.iter_mut().find(|c| c.0 == n) {
            Some(c) => c.1 += 1,
            None => out.push((n, 1)),
        }
    }
    out.sort();
    out
}
