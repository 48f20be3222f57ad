//! The selector `w_x -> σ^{-c}(ṽ_o ṽ_x)` as a letter-to-letter transducer on
//! specification points.
//!
//! States follow the layout of a generating word. The left decoration of an
//! element depends on its first letters, which are read only after the gap
//! in front of it; the gap states therefore guess it and the core states
//! check the guess.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::shift::transducer::Transducer;
use crate::shift::{Alphabet, BlockCode, Sft, Symbol};
use crate::spec_builder::{Certificate, CertificateKind, Element, Specification};
use crate::spec_props::CodedSpec;

/// Largest transducer built.
const STATE_CAP: usize = 2_000_000;

#[derive(Clone, Debug)]
pub struct SelectorCode {
    pub transducer: Transducer,
    /// The state reading the first marker letter.
    pub start: usize,
    /// Input alphabet: target letters, then `*`.
    pub source: Alphabet,
    pub target: Sft,
    /// Shift `c` between a generating word and its image.
    pub c: usize,
}

impl SelectorCode {
    pub fn star(&self) -> Symbol {
        Symbol((self.source.len() - 1) as u16)
    }

    /// Image of a word read from `start`, or `None` if the word is not a
    /// concatenation of generating words.
    pub fn run(&self, input: &[Symbol]) -> Option<Vec<Symbol>> {
        let mut states = vec![(self.start, Vec::new())];
        for &a in input {
            let mut next = Vec::new();
            for (s, out) in &states {
                for e in &self.transducer.edges[*s] {
                    if e.input == a {
                        let mut o: Vec<Symbol> = out.clone();
                        o.push(e.output);
                        next.push((e.target, o));
                    }
                }
            }
            next.sort();
            next.dedup();
            if next.is_empty() {
                return None;
            }
            states = next;
        }
        states
            .into_iter()
            .find(|(s, _)| *s == self.start)
            .map(|(_, o)| o)
    }

    /// Some output window of a bi-infinite run that is not allowed in the
    /// target. Every cycle passes through `start`, so runs from `start`
    /// over states that return to it see every such window.
    pub fn image_violation(&self) -> Option<Vec<Symbol>> {
        let t = &self.transducer;
        let n = t.state_count();
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (s, es) in t.edges.iter().enumerate() {
            for e in es {
                pred[e.target].push(s);
            }
        }
        let mut back = vec![false; n];
        let mut stack = vec![self.start];
        back[self.start] = true;
        while let Some(s) = stack.pop() {
            for &p in &pred[s] {
                if !back[p] {
                    back[p] = true;
                    stack.push(p);
                }
            }
        }
        let memory = self.target.memory();
        let mut seen: HashSet<(usize, Vec<Symbol>)> = HashSet::new();
        let mut queue = VecDeque::from([(self.start, Vec::new())]);
        while let Some((s, hist)) = queue.pop_front() {
            for e in &t.edges[s] {
                if !back[e.target] {
                    continue;
                }
                let mut h: Vec<Symbol> = hist.clone();
                h.push(e.output);
                if !self.target.is_allowed(&h) {
                    return Some(h);
                }
                if h.len() > memory {
                    h.remove(0);
                }
                if seen.insert((e.target, h.clone())) {
                    queue.push_back((e.target, h));
                }
            }
        }
        None
    }

    /// Pairs with `start` on one side meet every bi-infinite pair path.
    fn seeds(&self) -> Vec<(usize, usize)> {
        let n = self.transducer.state_count();
        (0..n).flat_map(|s| [(self.start, s), (s, self.start)]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Key {
    Fixed { seg: usize, i: usize },
    Gap { gap: usize, j: usize, glue: Vec<Symbol> },
    Core(CoreKey),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct CoreKey {
    t: usize,
    reg: Option<u32>,
    /// Listed words still agreeing with the letters read.
    alive: Vec<u32>,
    /// Guessed left glue, until the first `memory` letters are read.
    guess: Option<Vec<Symbol>>,
    /// Last `memory` letters.
    tail: Vec<Symbol>,
}

enum Segment {
    Fixed { word: Vec<Symbol>, left: Vec<Symbol>, right: Vec<Symbol> },
    Core,
}

struct Listed {
    word: Vec<Symbol>,
    /// A member of `E`; otherwise a regular word left out of `E`.
    member: bool,
}

struct Builder<'a> {
    spec: &'a Specification,
    cs: &'a CodedSpec,
    segments: Vec<Segment>,
    gap_len: usize,
    memory: usize,
    listed: Vec<Listed>,
    max_core: usize,
    left_glue: BTreeMap<Vec<Symbol>, Vec<Symbol>>,
    right_glue: BTreeMap<Vec<Symbol>, Vec<Symbol>>,
    ids: HashMap<Key, usize>,
    keys: Vec<Key>,
    queue: VecDeque<usize>,
    t: Transducer,
}

impl Builder<'_> {
    fn id(&mut self, k: Key) -> Result<usize> {
        if let Some(&i) = self.ids.get(&k) {
            return Ok(i);
        }
        let i = self.keys.len();
        if i >= STATE_CAP {
            return Err(Error::TooLarge(format!("selector exceeds {STATE_CAP} states")));
        }
        self.ids.insert(k.clone(), i);
        self.keys.push(k);
        self.t.edges.push(Vec::new());
        self.queue.push_back(i);
        Ok(i)
    }

    fn glue(&self) -> usize {
        self.cs.glue_len()
    }

    fn next_seg(&self, seg: usize) -> usize {
        (seg + 1) % self.segments.len()
    }

    /// Entry states of segment `seg`, with the glue the preceding gap emits.
    fn entries(&self, seg: usize) -> Vec<Vec<Symbol>> {
        match &self.segments[seg] {
            Segment::Fixed { left, .. } => vec![left.clone()],
            Segment::Core => {
                let mut v: Vec<Vec<Symbol>> = self.left_glue.values().cloned().collect();
                v.sort();
                v.dedup();
                v
            }
        }
    }

    fn core_start(&mut self, glue: Vec<Symbol>) -> Result<usize> {
        let reg = self.spec.elements.regular.as_ref().and_then(|p| p.dfa.run(&[]));
        self.id(Key::Core(CoreKey {
            t: 0,
            reg,
            alive: (0..self.listed.len() as u32).collect(),
            guess: Some(glue),
            tail: Vec::new(),
        }))
    }

    fn enter(&mut self, seg: usize, glue: Vec<Symbol>) -> Result<usize> {
        match self.segments[seg] {
            Segment::Fixed { .. } => self.id(Key::Fixed { seg, i: 0 }),
            Segment::Core => self.core_start(glue),
        }
    }

    fn expand(&mut self, s: usize) -> Result<()> {
        let star = Symbol(self.spec.target.alphabet().len() as u16);
        match self.keys[s].clone() {
            Key::Fixed { seg, i } => {
                let Segment::Fixed { word, .. } = &self.segments[seg] else { unreachable!() };
                let a = word[i];
                if i + 1 < word.len() {
                    let t = self.id(Key::Fixed { seg, i: i + 1 })?;
                    self.t.add_edge(s, a, a, t);
                } else {
                    for glue in self.entries(self.next_seg(seg)) {
                        let t = self.id(Key::Gap { gap: seg, j: 0, glue })?;
                        self.t.add_edge(s, a, a, t);
                    }
                }
            }
            Key::Gap { gap, j, glue } => {
                let g = self.glue();
                let next = self.next_seg(gap);
                let (right, left) = match (&self.segments[gap], &self.segments[next]) {
                    (Segment::Fixed { right, .. }, _) => (right.clone(), glue.clone()),
                    (Segment::Core, Segment::Fixed { left, .. }) => (glue.clone(), left.clone()),
                    (Segment::Core, Segment::Core) => unreachable!(),
                };
                let out = if j < g {
                    right[j]
                } else {
                    let k = j - g;
                    let u = self.cs.synchronizer();
                    if k < u.len() { u[k] } else { left[k - u.len()] }
                };
                let t = if j + 1 < self.gap_len {
                    self.id(Key::Gap { gap, j: j + 1, glue })?
                } else {
                    self.enter(next, left)?
                };
                self.t.add_edge(s, star, out, t);
            }
            Key::Core(k) => self.expand_core(s, k)?,
        }
        Ok(())
    }

    fn expand_core(&mut self, s: usize, k: CoreKey) -> Result<()> {
        let spec = self.spec;
        let x = &spec.target;
        let t1 = k.t + 1;
        let core_seg = self
            .segments
            .iter()
            .position(|g| matches!(g, Segment::Core))
            .unwrap_or(0);
        let (reg_len, dfa) = match &spec.elements.regular {
            Some(p) => (p.n + 1, Some(&p.dfa)),
            None => (0, None),
        };
        for a in x.alphabet().symbols() {
            let reg = match (k.reg, dfa) {
                (Some(r), Some(d)) if k.t < reg_len => d.step(k.t, r, a),
                _ => None,
            };
            let alive: Vec<u32> = k
                .alive
                .iter()
                .copied()
                .filter(|&i| self.listed[i as usize].word.get(k.t) == Some(&a))
                .collect();
            let mut tail = k.tail.clone();
            tail.push(a);
            if tail.len() > self.memory {
                tail.remove(0);
            }
            if !x.is_allowed(&tail) {
                continue;
            }
            let mut guess = k.guess.clone();
            if t1 == self.memory {
                if self.left_glue.get(&tail) != guess.as_ref() {
                    continue;
                }
                guess = None;
            }
            let blocked = alive
                .iter()
                .any(|&i| !self.listed[i as usize].member && self.listed[i as usize].word.len() == t1);
            let member_ends = alive
                .iter()
                .any(|&i| self.listed[i as usize].member && self.listed[i as usize].word.len() == t1);
            let accept = guess.is_none() && ((reg.is_some() && t1 == reg_len && !blocked) || member_ends);
            let goes_on = t1 < self.max_core
                && ((reg.is_some() && t1 < reg_len)
                    || alive.iter().any(|&i| self.listed[i as usize].member && self.listed[i as usize].word.len() > t1));
            if accept {
                let b = self.right_glue.get(&tail).cloned().ok_or(Error::NotAWord)?;
                let target = self.id(Key::Gap { gap: core_seg, j: 0, glue: b })?;
                self.t.add_edge(s, a, a, target);
            }
            if goes_on {
                let alive = alive
                    .into_iter()
                    .filter(|&i| self.listed[i as usize].word.len() > t1)
                    .collect();
                let target = self.id(Key::Core(CoreKey {
                    t: t1,
                    reg: if t1 < reg_len { reg } else { None },
                    alive,
                    guess,
                    tail,
                }))?;
                self.t.add_edge(s, a, a, target);
            }
        }
        Ok(())
    }
}

/// The selector of `spec` through the coded specification `cs`.
///
/// Needs scale 1 (elements are their own cores) and every star gap of length
/// exactly `|u| + 2g`.
pub fn build_selector(spec: &Specification, cs: &CodedSpec) -> Result<SelectorCode> {
    let x = &spec.target;
    if cs.target() != x {
        return Err(Error::LengthMismatch("coded specification over another target".into()));
    }
    if spec.reach() != 0 {
        return Err(Error::LengthMismatch(format!(
            "the selector reads elements at scale 1, not {}",
            spec.scale
        )));
    }
    let gap_len = cs.c() + cs.glue_len();
    let mut gaps = vec![("L(m)", spec.big_l.at(spec.m())), ("l", spec.l)];
    if let Some(z) = &spec.dense {
        gaps.push(("L(|z|)", spec.big_l.at(z.n + 1)));
    }
    for (name, len) in &gaps {
        if *len != gap_len {
            return Err(Error::LengthMismatch(format!(
                "{name} = {len} but the decorations need {gap_len}; set L to const:{gap_len}"
            )));
        }
    }
    let memory = x.memory();
    let fixed = |w: &[Symbol]| -> Result<Segment> {
        let (ua, b) = cs.decorate(w)?;
        Ok(Segment::Fixed {
            word: w.to_vec(),
            left: ua[cs.synchronizer().len()..].to_vec(),
            right: b,
        })
    };
    let mut segments = vec![fixed(spec.marker.core(0))?, Segment::Core];
    if let Some(z) = &spec.dense {
        segments.push(fixed(z.core(0))?);
    }
    let mut listed: Vec<Listed> = spec
        .elements
        .explicit
        .iter()
        .map(|e| Listed {
            word: e.core(0).to_vec(),
            member: true,
        })
        .collect();
    if let Some(p) = &spec.elements.regular {
        for r in &p.excluded {
            listed.push(Listed {
                word: p.dfa.unrank(r)?,
                member: false,
            });
        }
    }
    let max_core = spec.elements.n_max().ok_or(Error::EmptyLanguage)? + 1;
    if spec.elements.n_min().is_some_and(|n| n + 1 < memory) {
        return Err(Error::LengthMismatch("elements shorter than the memory".into()));
    }
    let mut left_glue = BTreeMap::new();
    let mut right_glue = BTreeMap::new();
    for v in 0..x.vertex_count() {
        let w = x.vertex_word(v).to_vec();
        if let Some(a) = cs.left_glue(&w) {
            left_glue.insert(w.clone(), a);
        }
        if let Some(b) = cs.right_glue(&w) {
            right_glue.insert(w, b);
        }
    }
    let mut b = Builder {
        spec,
        cs,
        segments,
        gap_len,
        memory,
        listed,
        max_core,
        left_glue,
        right_glue,
        ids: HashMap::new(),
        keys: Vec::new(),
        queue: VecDeque::new(),
        t: Transducer::default(),
    };
    let start = b.id(Key::Fixed { seg: 0, i: 0 })?;
    while let Some(s) = b.queue.pop_front() {
        b.expand(s)?;
    }
    Ok(SelectorCode {
        transducer: b.t,
        start,
        source: spec.alphabet(),
        target: x.clone(),
        c: cs.c(),
    })
}

/// Image of `w_x` under the selector, computed from the decorations.
pub fn selector_image(spec: &Specification, cs: &CodedSpec, x: &Element) -> Result<Vec<Symbol>> {
    let mut parts = vec![spec.marker.core(0).to_vec(), x.core(0).to_vec()];
    if let Some(z) = &spec.dense {
        parts.push(z.core(0).to_vec());
    }
    let decorated: Vec<(Vec<Symbol>, Vec<Symbol>)> = parts.iter().map(|w| cs.decorate(w)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (i, w) in parts.iter().enumerate() {
        out.extend_from_slice(w);
        out.extend_from_slice(&decorated[i].1);
        out.extend_from_slice(&decorated[(i + 1) % parts.len()].0);
    }
    Ok(out)
}

/// Functionality, injectivity on points, and the selector property: every
/// edge reading a target letter writes it.
pub fn verify_selector(code: &SelectorCode) -> Certificate {
    let mut cert = Certificate::new(CertificateKind::Injectivity);
    let t = &code.transducer;
    cert.param("states", t.state_count());
    cert.param("edges", t.edges.iter().map(Vec::len).sum::<usize>());
    cert.param("c", code.c);
    let star = code.star();
    let bad = t
        .edges
        .iter()
        .enumerate()
        .find_map(|(s, es)| es.iter().find(|e| e.input != star && e.input != e.output).map(|e| (s, *e)));
    match bad {
        Some((s, e)) => cert.check(
            "selector",
            false,
            format!("state {s} reads {} writes {}", code.source.name(e.input), code.target.alphabet().name(e.output)),
        ),
        None => cert.check("selector", true, "target letters are copied"),
    }
    match code.image_violation() {
        Some(w) => cert.check("images", false, format!("output {} not allowed", code.target.alphabet().format(&w))),
        None => cert.check("images", true, "every output window is allowed"),
    }
    let seeds = code.seeds();
    let f = t.check_functional_from(&seeds);
    cert.param("functional pair states", f.pair_states);
    match &f.witness {
        Some(w) => cert.check(
            "functional",
            false,
            format!(
                "input {} gives {} and {}",
                code.source.format(&w.output),
                code.target.alphabet().format(&w.left),
                code.target.alphabet().format(&w.right)
            ),
        ),
        None => cert.check("functional", true, format!("{} recurrent pairs, all diagonal", f.core_states)),
    }
    let r = t.check_injective_from(&seeds);
    cert.param("pair states", r.pair_states);
    match &r.witness {
        Some(w) => cert.check(
            "injective",
            false,
            format!(
                "inputs {} and {} both give {}",
                code.source.format(&w.left),
                code.source.format(&w.right),
                code.target.alphabet().format(&w.output)
            ),
        ),
        None => cert.check("injective", true, format!("{} recurrent pairs, all diagonal", r.core_states)),
    }
    cert
}

/// Injectivity of a block code on points, from its pair graph.
pub fn verify_code_injective(f: &BlockCode) -> Certificate {
    let mut cert = Certificate::new(CertificateKind::Injectivity);
    cert.param("radius", f.radius());
    match f.check_injective() {
        Ok(r) => {
            cert.param("pair states", r.pair_states);
            match r.witness {
                Some(w) => cert.check(
                    "injective",
                    false,
                    format!(
                        "inputs {} and {} both give {}",
                        f.source().alphabet().format(&w.left),
                        f.source().alphabet().format(&w.right),
                        f.target().alphabet().format(&w.output)
                    ),
                ),
                None => cert.check("injective", true, format!("{} recurrent pairs, all diagonal", r.core_states)),
            }
        }
        Err(e) => cert.check("injective", false, e.to_string()),
    }
    cert
}
