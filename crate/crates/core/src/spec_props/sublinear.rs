use std::fmt;

use crate::error::{Error, Result};

/// Nondecreasing `L: N -> N*` with `L(n)/n -> 0`.
///
/// A table gives `L(0), L(1), ...`; beyond its end the last value repeats,
/// which keeps the function sublinear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SublinearL {
    Const(usize),
    Table(Vec<usize>),
}

impl SublinearL {
    pub fn constant(c: usize) -> Result<SublinearL> {
        if c == 0 {
            return Err(Error::OutOfRange("L takes values in the positive integers".into()));
        }
        Ok(SublinearL::Const(c))
    }

    pub fn table(values: Vec<usize>) -> Result<SublinearL> {
        if values.is_empty() {
            return Err(Error::OutOfRange("empty L table".into()));
        }
        if values[0] == 0 {
            return Err(Error::OutOfRange("L takes values in the positive integers".into()));
        }
        if let Some(i) = values.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::OutOfRange(format!("L decreases at n = {}", i + 1)));
        }
        Ok(SublinearL::Table(values))
    }

    /// Parses `const:<c>` or a whitespace-separated table of values.
    pub fn parse_table(text: &str) -> Result<SublinearL> {
        let values = text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse {
                        line: 1,
                        msg: format!("bad L value `{t}`"),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        SublinearL::table(values)
    }

    pub fn at(&self, n: usize) -> usize {
        match self {
            SublinearL::Const(c) => *c,
            SublinearL::Table(v) => v[n.min(v.len() - 1)],
        }
    }

    /// `L(0) = inf L`.
    pub fn floor(&self) -> usize {
        self.at(0)
    }

    /// The same function raised by `k` everywhere.
    pub fn plus(&self, k: usize) -> SublinearL {
        match self {
            SublinearL::Const(c) => SublinearL::Const(c + k),
            SublinearL::Table(v) => SublinearL::Table(v.iter().map(|x| x + k).collect()),
        }
    }

    /// Pointwise maximum with a constant.
    pub fn at_least(&self, k: usize) -> SublinearL {
        match self {
            SublinearL::Const(c) => SublinearL::Const(*c.max(&k)),
            SublinearL::Table(v) => SublinearL::Table(v.iter().map(|&x| x.max(k)).collect()),
        }
    }
}

impl fmt::Display for SublinearL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SublinearL::Const(c) => write!(f, "const:{c}"),
            SublinearL::Table(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "table:[{}]", parts.join(" "))
            }
        }
    }
}
