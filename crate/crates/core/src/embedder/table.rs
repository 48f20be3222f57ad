//! Text form of a selector transducer.
//!
//! ```text
//! code-table v1
//! alphabet: 0 1
//! forbid: 11
//! c: 2
//! states: 3
//! start: 0
//! edge: 0 1 1 1
//! edge: 1 * 0 2
//! ```
//!
//! The `alphabet:`/`forbid:` lines give the target; the source alphabet is
//! the target alphabet followed by `*`. An `edge:` line reads
//! `from input output to`, letters by name.

use super::selector::SelectorCode;
use crate::error::{Error, Result};
use crate::shift::text::parse_sft;
use crate::shift::transducer::Transducer;
use crate::shift::Alphabet;
use crate::spec_builder::STAR;

pub const HEADER: &str = "code-table v1";

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

impl SelectorCode {
    pub fn to_table(&self) -> String {
        let mut out = format!("{HEADER}\n");
        out.push_str(&self.target.to_text());
        out.push_str(&format!("c: {}\n", self.c));
        out.push_str(&format!("states: {}\n", self.transducer.state_count()));
        out.push_str(&format!("start: {}\n", self.start));
        let tgt = self.target.alphabet();
        for (s, es) in self.transducer.edges.iter().enumerate() {
            for e in es {
                out.push_str(&format!(
                    "edge: {s} {} {} {}\n",
                    self.source.name(e.input),
                    tgt.name(e.output),
                    e.target
                ));
            }
        }
        out
    }
}

pub fn parse_code_table(text: &str) -> Result<SelectorCode> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()));
    let mut lines = lines.by_ref().filter(|(_, l)| !l.is_empty()).peekable();
    match lines.next() {
        Some((_, l)) if l == HEADER => {}
        Some((i, l)) => return Err(err(i, format!("expected `{HEADER}`, found `{l}`"))),
        None => return Err(err(1, "empty code table")),
    }
    let mut sft_text = String::new();
    let mut sft_line = 0;
    while let Some(&(i, l)) = lines.peek() {
        if !(l.starts_with("alphabet:") || l.starts_with("forbid:")) {
            break;
        }
        if sft_line == 0 {
            sft_line = i;
        }
        sft_text.push_str(l);
        sft_text.push('\n');
        lines.next();
    }
    let target = parse_sft(&sft_text).map_err(|e| match e {
        Error::Parse { line, msg } => err(sft_line + line - 1, msg),
        other => err(sft_line, other.to_string()),
    })?;
    let mut field = |key: &str| -> Result<(usize, usize)> {
        let (i, l) = lines.next().ok_or_else(|| err(0, format!("missing `{key}:`")))?;
        let v = l
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix(':'))
            .ok_or_else(|| err(i, format!("expected `{key}:`")))?;
        let v = v.trim().parse().map_err(|_| err(i, format!("bad `{key}` value")))?;
        Ok((i, v))
    };
    let (_, c) = field("c")?;
    let (i, states) = field("states")?;
    if states == 0 || states > 1 << 24 {
        return Err(err(i, format!("{states} states")));
    }
    let (i, start) = field("start")?;
    if start >= states {
        return Err(err(i, "start state out of range"));
    }
    let tgt = target.alphabet().clone();
    let mut names: Vec<String> = tgt.names().to_vec();
    names.push(STAR.to_string());
    let source = Alphabet::new(names);
    let mut t = Transducer::with_states(states);
    for (i, l) in lines {
        let rest = l.strip_prefix("edge:").ok_or_else(|| err(i, format!("unexpected `{l}`")))?;
        let f: Vec<&str> = rest.split_whitespace().collect();
        if f.len() != 4 {
            return Err(err(i, "an edge has four fields"));
        }
        let state = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .ok()
                .filter(|&v| v < states)
                .ok_or_else(|| err(i, format!("bad state `{s}`")))
        };
        let from = state(f[0])?;
        let to = state(f[3])?;
        let input = source.lookup(f[1]).ok_or_else(|| err(i, format!("unknown input `{}`", f[1])))?;
        let output = tgt.lookup(f[2]).ok_or_else(|| err(i, format!("unknown output `{}`", f[2])))?;
        t.add_edge(from, input, output, to);
    }
    Ok(SelectorCode {
        transducer: t,
        start,
        source,
        target,
        c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedder::{build_selector, verify_selector};
    use crate::metric::Scale;
    use crate::shift::Sft;
    use crate::spec_builder::{build_simple_spec, BuildOptions};
    use crate::spec_props::build_coded_spec;

    #[test]
    fn round_trip() {
        let x = Sft::golden_mean();
        let cs = build_coded_spec(&x).unwrap();
        let opts = BuildOptions {
            max_elements: Some(4),
            ..BuildOptions::default()
        };
        let b = build_simple_spec(&x, 0.002, cs.l(), Scale::new(1).unwrap(), &opts).unwrap();
        let code = build_selector(&b.spec, &cs).unwrap();
        let text = code.to_table();
        let back = parse_code_table(&text).unwrap();
        assert_eq!(back.to_table(), text);
        assert_eq!(verify_selector(&back).to_string(), verify_selector(&code).to_string());
    }

    #[test]
    fn errors_carry_lines() {
        let bad = "code-table v1\nalphabet: 0 1\nc: 1\nstates: 2\nstart: 0\nedge: 0 2 0 1\n";
        assert_eq!(parse_code_table(bad).unwrap_err(), Error::Parse { line: 6, msg: "unknown input `2`".into() });
        assert!(matches!(parse_code_table("code-table v2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_code_table("code-table v1\nalphabet: 0 1\nc: 1\nstates: 2\nstart: 5\n"), Err(Error::Parse { line: 5, .. })));
        assert!(matches!(parse_code_table(""), Err(Error::Parse { .. })));
    }
}
