//! Stage 1: the specification `Lambda_1` built from blocks of `Lambda_0`.
//!
//! `E_1` has one element per block of `n_1` or `n_1 + 1` generating words of
//! `Lambda_0`. It is never listed: elements are computed from their block,
//! and checks run on a deterministic sample.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::budget::ScaleBudget;
use super::marker_block::{build_marker_block, delta_pattern, MarkerBlock};
use super::plan::{plan_stage, PlanInput, StagePlan};
use super::stage0::{Base, Letter};
use super::theta::{Theta, UWord};
use crate::error::{Error, Result};
use crate::metric::{flower_entropy, Pattern, Scale};
use crate::shift::Symbol;
use crate::spec_builder::{verify_admissible, Certificate, CertificateKind, Element, ElementSet, Specification};
use crate::spec_props::SublinearL;

#[derive(Clone, Debug)]
pub struct StageOptions {
    pub q: usize,
    pub p_cap: usize,
    pub n_cap: usize,
    /// Random blocks checked besides the extreme ranks.
    pub samples: usize,
    pub seed: u64,
}

impl Default for StageOptions {
    fn default() -> Self {
        StageOptions {
            q: 1,
            p_cap: 20_000,
            n_cap: 10_000,
            samples: 6,
            seed: 1,
        }
    }
}

/// A point of `Lambda_1` given on `[-margin, n + margin]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelElement {
    pub n: usize,
    pub window: Vec<Symbol>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyChain {
    pub h0: f64,
    pub h1: f64,
    /// Bounds on `h(Lambda''_1)`.
    pub h2_lo: f64,
    pub h2_hi: f64,
    pub h2_prev: f64,
}

impl EntropyChain {
    pub fn holds(&self) -> bool {
        self.h0 <= self.h1 + 1e-12 && self.h1 < self.h2_lo && self.h2_hi <= self.h2_prev + 1e-12
    }
}

#[derive(Clone, Debug)]
pub struct Stage {
    pub base: Base,
    pub plan: StagePlan,
    pub theta: Theta,
    pub block: MarkerBlock,
    /// `o_1` on `[-margin, m_1 + margin]`.
    pub marker: Vec<Symbol>,
    pub margin: usize,
    /// `eps'_1`.
    pub scale: Scale,
    pub entropy: EntropyChain,
    pub certificate: Certificate,
}

/// Sequences of exactly `n` words by total length, for words of lengths `lens`.
pub fn exact_counts(lens: &[usize], n: usize) -> Vec<(usize, BigUint)> {
    let lo = lens.iter().copied().min().unwrap_or(0);
    let hi = lens.iter().copied().max().unwrap_or(0);
    let mut poly = vec![BigUint::one()];
    for k in 1..=n {
        let mut next = vec![BigUint::zero(); k * (hi - lo) + 1];
        for (d, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &w in lens {
                next[d + w - lo] += c;
            }
        }
        poly = next;
    }
    poly.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(d, c)| (n * lo + d, c))
        .collect()
}

fn merge(mut a: Vec<(usize, BigUint)>, b: Vec<(usize, BigUint)>) -> Vec<(usize, BigUint)> {
    for (t, c) in b {
        match a.iter_mut().find(|x| x.0 == t) {
            Some(x) => x.1 += c,
            None => a.push((t, c)),
        }
    }
    a.sort();
    a
}

fn matches(base: &Base, word: &[Letter], y: &[Symbol], at: usize) -> bool {
    at + word.len() <= y.len()
        && word
            .iter()
            .enumerate()
            .all(|(i, &c)| base.target_letter(c).is_none_or(|a| a == y[at + i]))
}

/// All ways (up to `cap`) to cut `y[from..to]` into whole words of `ids`.
fn parse(base: &Base, ids: &[u32], y: &[Symbol], from: usize, to: usize, cap: usize) -> Vec<Vec<usize>> {
    let words: Vec<Vec<Letter>> = ids.iter().map(|&p| base.word(p)).collect();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(from, Vec::new())];
    while let Some((at, path)) = stack.pop() {
        if at == to {
            out.push(path);
            if out.len() >= cap {
                break;
            }
            continue;
        }
        for (i, w) in words.iter().enumerate().rev() {
            if at + w.len() <= to && matches(base, w, y, at) {
                let mut next = path.clone();
                next.push(i);
                stack.push((at + w.len(), next));
            }
        }
    }
    out
}

impl Stage {
    pub fn build(base: Base, opts: &StageOptions) -> Result<Stage> {
        let x = base.spec.target.clone();
        let budget = base.budget.clone();
        let big_l = ScaleBudget::gap_for(&x, budget.eps(2))?;
        let block = build_marker_block(&base, base.a, base.b, opts.q)?;
        let m = block.m();
        let horizon = opts.p_cap + m + 1 + big_l + 1;
        let e = base.family(&base.e, horizon);
        let e2 = base.family(&base.e2, horizon);
        let plan = plan_stage(
            &e,
            &e2,
            &PlanInput {
                k: 1,
                m,
                big_l,
                l: big_l,
                n_prev_max: base.n_range(&base.e).1,
                p_cap: opts.p_cap,
                n_cap: opts.n_cap,
            },
        )?;
        let theta = Theta::new(e, e2, plan.p, plan.head(), plan.l);
        let r1 = budget.eps(1).reach();
        let margin = budget.eps(2).reach().max(r1);
        let scale = budget.eps_prime(1);
        let cpat = delta_pattern(&base, &block.word, 0, r1).ok_or(Error::NotAWord)?;
        let marker = realize_on(&base, &cpat, m, margin)?;
        let mut stage = Stage {
            base,
            plan,
            theta,
            block,
            marker,
            margin,
            scale,
            entropy: EntropyChain { h0: 0.0, h1: 0.0, h2_lo: 0.0, h2_hi: 0.0, h2_prev: 0.0 },
            certificate: Certificate::new(CertificateKind::Stage),
        };
        stage.entropy = stage.entropy_chain();
        stage.certificate = stage.certify(opts);
        Ok(stage)
    }

    pub fn m(&self) -> usize {
        self.block.m()
    }

    /// Level letters of a block of `ids` words.
    pub fn block_letters(&self, ids: &[u32], block: &[usize]) -> Vec<Letter> {
        block.iter().flat_map(|&w| self.base.word(ids[w])).collect()
    }

    pub fn block_len(&self, ids: &[u32], block: &[usize]) -> usize {
        block.iter().map(|&w| self.base.len(ids[w])).sum()
    }

    fn lens(&self, ids: &[u32]) -> Vec<usize> {
        ids.iter().map(|&p| self.base.len(p)).collect()
    }

    /// Hub path covering the first `t` letters and, read backwards, the
    /// path covering the last `s`.
    pub fn cut_paths(&self, block: &[usize], t: usize, s: usize) -> (Vec<usize>, Vec<usize>) {
        let lens = self.lens(&self.base.e);
        let mut head = Vec::new();
        let mut acc = 0;
        for &w in block {
            if acc >= t {
                break;
            }
            head.push(w);
            acc += lens[w];
        }
        let mut tail = Vec::new();
        let mut acc = 0;
        for &w in block.iter().rev() {
            if acc >= s {
                break;
            }
            tail.push(w);
            acc += lens[w];
        }
        (head, tail)
    }

    /// `D'' = Theta^{-1}(D_1 D_2, D_4) D_3`.
    pub fn recode(&self, block: &[usize]) -> Result<Vec<Letter>> {
        self.check_block(block)?;
        let letters = self.block_letters(&self.base.e, block);
        let (head, tail) = self.cut_paths(block, self.plan.head(), self.plan.l);
        let u = self.theta.encode(&head, &tail)?;
        let mut out = self.u_letters(&u);
        out.extend_from_slice(&letters[self.plan.head()..letters.len() - self.plan.l]);
        Ok(out)
    }

    fn u_letters(&self, u: &UWord) -> Vec<Letter> {
        let fixed = self.base.word(self.base.e2[0]);
        let mut out = fixed[fixed.len() - u.j..].to_vec();
        out.extend(self.block_letters(&self.base.e2, &u.words));
        out
    }

    fn check_block(&self, block: &[usize]) -> Result<()> {
        let n = self.plan.n;
        if block.len() != n && block.len() != n + 1 {
            return Err(Error::LengthMismatch(format!("block of {} words, n_1 = {n}", block.len())));
        }
        Ok(())
    }

    fn realize(&self, recoded: &[Letter]) -> Result<LevelElement> {
        let r1 = self.base.budget.eps(1).reach();
        let pat = delta_pattern(&self.base, recoded, 0, r1)
            .ok_or_else(|| Error::AdmissibilityFailure("constraint windows clash".into()))?;
        let n = recoded.len() - 1;
        Ok(LevelElement {
            n,
            window: realize_on(&self.base, &pat, n, self.margin)?,
        })
    }

    /// The element `x(D)` of `E_1`.
    pub fn element(&self, block: &[usize]) -> Result<LevelElement> {
        self.realize(&self.recode(block)?)
    }

    /// The element of `E''_1` for a block of `E''_0` words: `D'` unchanged.
    pub fn element2(&self, block: &[usize]) -> Result<LevelElement> {
        self.check_block(block)?;
        let letters = self.block_letters(&self.base.e2, block);
        self.realize(&letters[self.plan.head()..letters.len() - self.plan.l])
    }

    /// `pi_0` on a generating word of `Lambda_1`: the block it came from,
    /// recovered from the letters of the element alone.
    pub fn decode(&self, el: &LevelElement) -> Result<Vec<usize>> {
        let base = &self.base;
        let y = &el.window[self.margin..self.margin + el.n + 1];
        let p = self.plan.p;
        let lens = self.lens(&base.e);
        let fixed = base.word(base.e2[0]);
        let mut found: Vec<Vec<usize>> = Vec::new();
        for j in 0..self.theta.e2.min_len().min(p + 1) {
            if !matches(base, &fixed[fixed.len() - j..], y, 0) {
                continue;
            }
            for words in parse(base, &base.e2, y, j, p, 4) {
                let Ok((head, tail)) = self.theta.decode(&UWord { j, words }) else {
                    continue;
                };
                let Some(last) = head.last().copied() else { continue };
                let head_len: usize = head.iter().map(|&w| lens[w]).sum();
                let rest = head_len - self.plan.head();
                let word = base.word(base.e[last]);
                if !matches(base, &word[word.len() - rest..], y, p) {
                    continue;
                }
                let Some(first) = tail.last().copied() else { continue };
                let tail_len: usize = tail.iter().map(|&w| lens[w]).sum();
                let keep = tail_len - self.plan.l;
                let end = y.len().checked_sub(keep);
                let Some(end) = end.filter(|&e| e >= p + rest) else { continue };
                let fword = base.word(base.e[first]);
                if !matches(base, &fword[..keep], y, end) {
                    continue;
                }
                for middle in parse(base, &base.e, y, p + rest, end, 4) {
                    let mut block = head.clone();
                    block.extend(middle);
                    block.extend(tail.iter().rev());
                    if self.check_block(&block).is_ok() && !found.contains(&block) {
                        found.push(block);
                    }
                }
            }
        }
        let good: Vec<Vec<usize>> = found
            .into_iter()
            .filter(|b| self.element(b).is_ok_and(|e| &e == el))
            .collect();
        match good.len() {
            1 => Ok(good.into_iter().next().expect("one")),
            0 => Err(Error::AdmissibilityFailure("element does not decode to a block".into())),
            k => Err(Error::AdmissibilityFailure(format!("element decodes to {k} blocks"))),
        }
    }

    /// Generating word of `x(D)` in `Lambda_1`: marker run, `L` stars, core,
    /// `l` stars.
    pub fn generating_word(&self, el: &LevelElement) -> Vec<Option<Symbol>> {
        let m = self.m();
        let mut w: Vec<Option<Symbol>> = self.marker[self.margin..=self.margin + m].iter().map(|&a| Some(a)).collect();
        w.extend(std::iter::repeat_n(None, self.plan.big_l));
        w.extend(el.window[self.margin..=self.margin + el.n].iter().map(|&a| Some(a)));
        w.extend(std::iter::repeat_n(None, self.plan.l));
        w
    }

    /// A deterministic sample of blocks: extreme ranks and seeded random ones.
    pub fn sample_blocks(&self, family: usize, opts: &StageOptions) -> Vec<Vec<usize>> {
        let n = self.plan.n;
        let top = family - 1;
        let mut out = vec![vec![0; n], vec![top; n], vec![0; n + 1], vec![top; n + 1]];
        let mut alt = vec![0; n];
        alt[n - 1] = 1.min(top);
        out.push(alt);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.samples {
            let k = n + rng.gen_range(0..2);
            out.push((0..k).map(|_| rng.gen_range(0..family)).collect());
        }
        out
    }

    fn sample_spec(&self, elements: Vec<LevelElement>) -> Result<Specification> {
        let reach = self.scale.reach();
        let cut = |w: &[Symbol], n: usize| w[self.margin - reach..=self.margin + n + reach].to_vec();
        let marker = Element::new(self.m(), cut(&self.marker, self.m()), reach)?;
        let list = elements
            .iter()
            .map(|e| Element::new(e.n, cut(&e.window, e.n), reach))
            .collect::<Result<Vec<_>>>()?;
        Ok(Specification {
            target: self.base.spec.target.clone(),
            scale: self.scale,
            marker,
            l: self.plan.l,
            big_l: SublinearL::Const(self.plan.big_l),
            elements: ElementSet::explicit(reach, list),
            dense: None,
        })
    }

    /// Generating lengths of `Lambda_1` (blocks of `E_0` words) with counts.
    pub fn block_counts(&self, ids: &[u32]) -> Vec<(usize, BigUint)> {
        let lens = self.lens(ids);
        merge(exact_counts(&lens, self.plan.n), exact_counts(&lens, self.plan.n + 1))
    }

    fn entropy_chain(&self) -> EntropyChain {
        let base = &self.base;
        let h0 = base.entropy_of(&base.e);
        let h2_prev = base.entropy_of(&base.e2);
        let h1 = flower_entropy(&self.block_counts(&base.e));
        // D' forgets at most the head and tail paths of a block, and at
        // least every word lying inside the head
        let e2 = &self.theta.e2;
        let k_max = e2.hub(self.plan.head()) * e2.hub(self.plan.l);
        let classes = base.e2.iter().fold(Vec::<(usize, u64)>::new(), |mut acc, &p| {
            let n = base.len(p);
            match acc.iter_mut().find(|c| c.0 == n) {
                Some(c) => c.1 += 1,
                None => acc.push((n, 1)),
            }
            acc
        });
        let least = classes.iter().map(|c| c.1).min().unwrap_or(1);
        let inside = self.plan.head() / e2.max_len() + self.plan.l / e2.max_len();
        let k_min = BigUint::from(least).pow(inside as u32);
        let counts = self.block_counts(&base.e2);
        let two = BigUint::from(2u32);
        let mut removed = false;
        let lo: Vec<(usize, BigUint)> = counts
            .iter()
            .map(|(t, c)| {
                let mut v = c / &k_max;
                if !removed && v >= two {
                    v -= &two;
                    removed = true;
                }
                (*t, v)
            })
            .collect();
        let hi: Vec<(usize, BigUint)> = counts.iter().map(|(t, c)| (*t, (c + &k_min - 1u32) / &k_min)).collect();
        EntropyChain {
            h0,
            h1,
            h2_lo: flower_entropy(&lo),
            h2_hi: flower_entropy(&hi),
            h2_prev,
        }
    }

    fn certify(&self, opts: &StageOptions) -> Certificate {
        let mut c = Certificate::new(CertificateKind::Stage);
        let plan = &self.plan;
        let base = &self.base;
        c.param("base", base.describe());
        c.param("m1", self.m());
        c.param("q", self.block.q);
        c.param("L1", plan.big_l);
        c.param("l1", plan.l);
        c.param("p1", plan.p);
        c.param("n1", plan.n);
        c.param("P1", plan.big_p);
        c.param("N1_min", plan.n_lo);
        c.param("N1_max", plan.n_hi);
        c.param("scale", self.scale);
        c.check("base", base.admissibility.passed() && base.pairs.passed(), format!(
            "admissibility {}, pairs {}",
            base.admissibility.passed(),
            base.pairs.passed()
        ));
        c.check("budget", base.budget.consistent(), "eps''_k <= eps'_k and sum_{k>0} eps_k < eps_0/2");
        let n_prev = base.n_range(&base.e).1;
        let need = self.m() + plan.big_l + plan.l + n_prev;
        c.check(
            "item5",
            plan.big_p >= need && 4 * plan.big_p < plan.n_lo,
            format!("P1 = {} >= m1+L+l1+N0_max = {need}; P1/N1_min = {:.5} < 1/4", plan.big_p, plan.big_p as f64 / plan.n_lo as f64),
        );
        c.check(
            "ocap_budget",
            12 * plan.big_p < plan.n_lo,
            format!("6 P1/N1_min = {:.5} < 1/2", 6.0 * plan.big_p as f64 / plan.n_lo as f64),
        );
        c.check(
            "item1",
            12 * plan.l < self.m() && self.m() < plan.n_lo,
            format!("12 l1 = {} < m1 = {} < N1_min = {}", 12 * plan.l, self.m(), plan.n_lo),
        );
        c.check(
            "counting",
            plan.u_count >= plan.w_count,
            format!("ln #U''(p) = {:.4} >= ln #W(a)#W(l) = {:.4}, slack {:.4}", plan.u_ln, plan.w_ln, plan.slack_ln()),
        );
        c.check("marker_block", true, format!("C1 = A^{q} B^{q}, no overlap for 0 < l <= {}", 3 * self.m() / 4, q = self.block.q));
        let ch = &self.entropy;
        c.check(
            "entropy",
            ch.holds(),
            format!(
                "h(L0) = {:.7} <= h(L1) = {:.7} < {:.7} <= h(L''1) <= {:.7} <= h(L''0) = {:.7}",
                ch.h0, ch.h1, ch.h2_lo, ch.h2_hi, ch.h2_prev
            ),
        );
        // pi_0 and admissibility on samples
        let mut pi_fail = None;
        let mut els = Vec::new();
        for b in self.sample_blocks(base.e.len(), opts) {
            let res = self.element(&b).and_then(|el| {
                let back = self.decode(&el)?;
                let len = self.generating_word(&el).len();
                Ok((el, back, len))
            });
            match res {
                Ok((el, back, len)) if back == b && len == self.block_len(&base.e, &b) => els.push(el),
                Ok(_) => pi_fail = Some(format!("block {b:?} decodes to another block")),
                Err(e) => pi_fail = Some(format!("block of {} words: {e}", b.len())),
            }
            if pi_fail.is_some() {
                break;
            }
        }
        match pi_fail {
            Some(w) => c.check("pi", false, w),
            None => c.check("pi", true, format!("{} sampled blocks decoded, lengths preserved", els.len())),
        }
        let verdict = |spec: Result<Specification>| match spec {
            Ok(s) => {
                let a = verify_admissible(&s);
                let fails: Vec<String> = a.failures().map(|f| format!("{}: {}", f.id, f.witness)).collect();
                (a.passed(), if fails.is_empty() { format!("{} sampled elements", s.elements.explicit.len()) } else { fails.join("; ") })
            }
            Err(e) => (false, e.to_string()),
        };
        let (ok, w) = verdict(self.sample_spec(els));
        c.check("admissible", ok, w);
        let others: Result<Vec<LevelElement>> = self
            .sample_blocks(base.e2.len(), opts)
            .iter()
            .skip(2)
            .map(|b| self.element2(b))
            .collect();
        let (ok, w) = verdict(others.and_then(|v| self.sample_spec(v)));
        c.check("admissible2", ok, w);
        c
    }
}

/// Least realization of `pat` on `[-margin, n + margin]`.
fn realize_on(base: &Base, pat: &Pattern, n: usize, margin: usize) -> Result<Vec<Symbol>> {
    let frame = Pattern::new(-(margin as i64), vec![None; n + 2 * margin + 1]);
    let joint = frame.meet(pat).ok_or(Error::NotAWord)?;
    let w = joint.realize(&base.spec.target).ok_or(Error::NotAWord)?;
    let from = (-(margin as i64) - w.offset) as usize;
    Ok(w.symbols[from..from + n + 2 * margin + 1].to_vec())
}
