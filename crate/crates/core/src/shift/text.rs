//! Plain-text SFT format.
//!
//! ```text
//! # golden mean shift
//! alphabet: 0 1
//! forbid: 11
//! ```
//!
//! The first non-blank, non-comment line declares the alphabet as
//! whitespace-separated names. Each later `forbid:` line holds one word:
//! concatenated names when every name is one character, otherwise names
//! joined by `.`. Text after `#` is ignored. Names may not contain `.`, `#`,
//! `*`, `:` or whitespace.

use super::sft::Sft;
use super::word::{parse_symbols, Alphabet};
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.contains(['.', '#', '*', ':']) && !name.chars().any(char::is_whitespace)
}

pub fn parse_sft(text: &str) -> Result<Sft> {
    let mut alphabet: Option<Alphabet> = None;
    let mut forbidden = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(parse_err(line_no, format!("expected `key: value`, got `{line}`")));
        };
        let value = value.trim();
        match (key.trim(), &alphabet) {
            ("alphabet", None) => {
                let names: Vec<&str> = value.split_whitespace().collect();
                if names.is_empty() {
                    return Err(parse_err(line_no, "empty alphabet"));
                }
                if let Some(bad) = names.iter().find(|n| !valid_name(n)) {
                    return Err(parse_err(line_no, format!("invalid symbol name `{bad}`")));
                }
                let mut sorted = names.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(parse_err(line_no, "duplicate symbol name"));
                }
                if names.len() > u16::MAX as usize {
                    return Err(parse_err(line_no, "alphabet too large"));
                }
                alphabet = Some(Alphabet::new(names));
            }
            ("alphabet", Some(_)) => return Err(parse_err(line_no, "alphabet declared twice")),
            ("forbid", Some(a)) => {
                if value.is_empty() {
                    return Err(parse_err(line_no, "forbidden words must be nonempty"));
                }
                let word = parse_symbols(a, value).map_err(|m| parse_err(line_no, m))?;
                forbidden.push(word);
            }
            ("forbid", None) => return Err(parse_err(line_no, "`forbid` before `alphabet`")),
            (other, _) => return Err(parse_err(line_no, format!("unknown key `{other}`"))),
        }
    }
    let alphabet = alphabet.ok_or_else(|| parse_err(1, "missing `alphabet:` line"))?;
    Sft::from_forbidden(alphabet, forbidden)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn golden_mean_file() {
        let x = parse_sft("# golden mean\nalphabet: 0 1\nforbid: 11\n").unwrap();
        assert_eq!(x.count_words(5), BigUint::from(13u32));
    }

    #[test]
    fn dotted_names() {
        let x = parse_sft("alphabet: ab cd\nforbid: ab.ab\n").unwrap();
        assert_eq!(x.count_words(2), BigUint::from(3u32));
        let y = parse_sft(&x.to_text()).unwrap();
        assert_eq!(y.to_text(), x.to_text());
    }

    #[test]
    fn single_multichar_word() {
        let x = parse_sft("alphabet: ab cd\nforbid: cd\n").unwrap();
        assert_eq!(x.count_words(3), BigUint::from(1u32));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse_sft(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_sft("alphabet: 0 1\nforbid: 12\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_sft("alphabet: 0 0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_sft("forbid: 1\nalphabet: 0 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_sft("alphabet: 0 1\n\nbogus\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn empty_language_is_not_a_parse_error() {
        assert_eq!(
            parse_sft("alphabet: 0 1\nforbid: 0\nforbid: 1\n").unwrap_err(),
            Error::EmptyLanguage
        );
    }

    #[test]
    fn round_trip() {
        let src = "alphabet: a b c\nforbid: ab\nforbid: cc\nforbid: bca\n";
        let x = parse_sft(src).unwrap();
        let y = parse_sft(&x.to_text()).unwrap();
        assert_eq!(x.to_text(), y.to_text());
        for n in 0..6 {
            assert_eq!(x.enumerate_words(n).unwrap(), y.enumerate_words(n).unwrap());
        }
    }
}
