use std::fmt;

/// A letter of a finite alphabet, identified by its dense index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered list of symbol names; `Symbol(i)` is named `names[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Alphabet {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    /// Alphabet `0, 1, ..., k-1` with decimal names.
    pub fn numeric(k: usize) -> Self {
        Alphabet::new((0..k).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl DoubleEndedIterator<Item = Symbol> + '_ {
        (0..self.names.len()).map(|i| Symbol(i as u16))
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Symbol(i as u16))
    }

    /// True when every name is a single character, so words can be written
    /// without separators.
    pub fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    pub fn format(&self, symbols: &[Symbol]) -> String {
        let parts: Vec<&str> = symbols.iter().map(|&s| self.name(s)).collect();
        if self.single_char() {
            parts.concat()
        } else {
            parts.join(".")
        }
    }

    /// Formats a word over the alphabet extended by `*`.
    pub fn format_ext(&self, letters: &[Option<Symbol>]) -> String {
        let parts: Vec<&str> = letters
            .iter()
            .map(|l| match l {
                Some(s) => self.name(*s),
                None => "*",
            })
            .collect();
        if self.single_char() {
            parts.concat()
        } else {
            parts.join(".")
        }
    }
}

/// A finite word with an explicit coordinate interval `[offset, offset + len - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub symbols: Vec<Symbol>,
    pub offset: i64,
}

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word { symbols, offset: 0 }
    }

    pub fn at(symbols: Vec<Symbol>, offset: i64) -> Self {
        Word { symbols, offset }
    }

    pub fn from_indices(indices: &[u16]) -> Self {
        Word::new(indices.iter().map(|&i| Symbol(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Last coordinate, or `offset - 1` for the empty word.
    pub fn end(&self) -> i64 {
        self.offset + self.symbols.len() as i64 - 1
    }

    pub fn contains_coord(&self, k: i64) -> bool {
        k >= self.offset && k <= self.end()
    }

    pub fn get(&self, k: i64) -> Option<Symbol> {
        if self.contains_coord(k) {
            Some(self.symbols[(k - self.offset) as usize])
        } else {
            None
        }
    }

    /// The same letters moved `by` coordinates to the right.
    pub fn shifted(&self, by: i64) -> Word {
        Word::at(self.symbols.clone(), self.offset + by)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{}", s.0)?;
        }
        Ok(())
    }
}

/// Parses a word written as concatenated single-char names, or as names
/// separated by dots.
pub fn parse_symbols(alphabet: &Alphabet, text: &str) -> Result<Vec<Symbol>, String> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let lookup = |name: &str| {
        alphabet
            .lookup(name)
            .ok_or_else(|| format!("unknown symbol `{name}`"))
    };
    if text.contains('.') {
        text.split('.').map(lookup).collect()
    } else if alphabet.single_char() {
        text.chars().map(|c| lookup(&c.to_string())).collect()
    } else {
        Ok(vec![lookup(text)?])
    }
}
