//! Words over `{a, b}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite word over `{a, b}`, stored as ASCII bytes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    /// Wraps bytes already known to be `a`/`b`.
    pub fn from_bytes(bytes: Vec<u8>) -> Result<Self> {
        if let Some(pos) = bytes.iter().position(|&c| c != b'a' && c != b'b') {
            return Err(Error::ParseError { pos, msg: "letters must be a or b".into() });
        }
        Ok(Word(bytes))
    }

    pub(crate) fn from_bytes_unchecked(bytes: Vec<u8>) -> Self {
        Word(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("ascii")
    }

    pub fn count(&self, letter: u8) -> usize {
        self.0.iter().filter(|&&c| c == letter).count()
    }

    pub fn contains(&self, needle: &[u8]) -> bool {
        contains(&self.0, needle)
    }

    /// Compact rendering with exponents, e.g. `ab^3a^2b`.
    pub fn to_power_notation(&self) -> String {
        power_notation(&self.0)
    }

    /// Parses plain words and power notation: `ab^3`, `(ab)^9`, `ab³`,
    /// `a(ab)⁹b`.
    pub fn parse_power(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let out = parse_seq(&chars, &mut pos, 0)?;
        if pos != chars.len() {
            return Err(Error::ParseError { pos, msg: "unbalanced ')'".into() });
        }
        Ok(Word(out))
    }
}

pub(crate) fn contains(hay: &[u8], needle: &[u8]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}

pub(crate) fn power_notation(w: &[u8]) -> String {
    let mut s = String::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        s.push(w[i] as char);
        if j - i > 1 {
            s.push('^');
            s.push_str(&(j - i).to_string());
        }
        i = j;
    }
    s
}

fn superscript_digit(c: char) -> Option<u32> {
    "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|d| d == c).map(|p| p as u32)
}

fn parse_exponent(chars: &[char], pos: &mut usize) -> Result<usize> {
    let start = *pos;
    let mut n: usize = 0;
    let mut any = false;
    if *pos < chars.len() && chars[*pos] == '^' {
        *pos += 1;
        let mut braced = false;
        if *pos < chars.len() && chars[*pos] == '{' {
            braced = true;
            *pos += 1;
        }
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            n = n * 10 + chars[*pos].to_digit(10).unwrap() as usize;
            *pos += 1;
            any = true;
        }
        if braced {
            if *pos >= chars.len() || chars[*pos] != '}' {
                return Err(Error::ParseError { pos: *pos, msg: "expected '}'".into() });
            }
            *pos += 1;
        }
    } else {
        while *pos < chars.len() {
            match superscript_digit(chars[*pos]) {
                Some(d) => {
                    n = n * 10 + d as usize;
                    *pos += 1;
                    any = true;
                }
                None => break,
            }
        }
        if !any {
            return Ok(1);
        }
    }
    if !any {
        return Err(Error::ParseError { pos: start, msg: "missing exponent".into() });
    }
    Ok(n)
}

fn parse_seq(chars: &[char], pos: &mut usize, depth: usize) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    while *pos < chars.len() {
        let c = chars[*pos];
        let unit: Vec<u8> = match c {
            'a' | 'b' => {
                *pos += 1;
                vec![c as u8]
            }
            '(' => {
                *pos += 1;
                let inner = parse_seq(chars, pos, depth + 1)?;
                if *pos >= chars.len() || chars[*pos] != ')' {
                    return Err(Error::ParseError { pos: *pos, msg: "expected ')'".into() });
                }
                *pos += 1;
                inner
            }
            ')' if depth > 0 => return Ok(out),
            _ => {
                return Err(Error::ParseError { pos: *pos, msg: format!("unexpected {c:?}") });
            }
        };
        let e = parse_exponent(chars, pos)?;
        for _ in 0..e {
            out.extend_from_slice(&unit);
        }
    }
    Ok(out)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse_power(s)
    }
}

impl From<&str> for Word {
    /// # Panics
    /// On input that is not a valid word.
    fn from(s: &str) -> Self {
        Word::parse_power(s).expect("invalid word literal")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Word::parse_power(&s).map_err(serde::de::Error::custom)
    }
}
