//! Parsing restricted-ordering blocks into `C_i = a^i b` and `D_j = a b^j`
//! tokens, and reading the ordering back off a block.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::coding::basic_block;
use crate::error::{Error, Result};
use crate::ordering::OrderingTable;
use crate::pascal::{binomial_u128, Vertex};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CDKind {
    C,
    D,
}

/// `C_i = a^i b` or `D_j = a b^j`, with index at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CDToken {
    pub kind: CDKind,
    pub index: usize,
}

impl CDToken {
    pub fn c(index: usize) -> Self {
        CDToken { kind: CDKind::C, index }
    }

    pub fn d(index: usize) -> Self {
        CDToken { kind: CDKind::D, index }
    }

    pub fn len(self) -> usize {
        self.index + 1
    }

    pub fn expand(self) -> Vec<u8> {
        let mut v = Vec::with_capacity(self.len());
        match self.kind {
            CDKind::C => {
                v.resize(self.index, b'a');
                v.push(b'b');
            }
            CDKind::D => {
                v.push(b'a');
                v.resize(self.index + 1, b'b');
            }
        }
        v
    }
}

impl fmt::Display for CDToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = if self.kind == CDKind::C { 'C' } else { 'D' };
        write!(f, "{k}{}", self.index)
    }
}

impl Serialize for CDToken {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Greedy left-to-right tokenization. An a-run of length at least 2 takes
/// one `b` as `C_i`; a lone `a` takes its whole b-run (length at least 2)
/// as `D_j`. The token `ab` is rejected.
pub fn decompose_cd(w: &Word) -> Result<Vec<CDToken>> {
    let s = w.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < s.len() {
        if s[i] != b'a' {
            return Err(Error::ParseError { pos: i, msg: "expected a token starting with a".into() });
        }
        let mut j = i;
        while j < s.len() && s[j] == b'a' {
            j += 1;
        }
        let run_a = j - i;
        if j == s.len() {
            return Err(Error::ParseError { pos: i, msg: "trailing a-run".into() });
        }
        if run_a >= 2 {
            out.push(CDToken::c(run_a));
            i = j + 1;
            continue;
        }
        let mut k = j;
        while k < s.len() && s[k] == b'b' {
            k += 1;
        }
        if k - j == 1 {
            return Err(Error::ParseError { pos: i, msg: "the token ab is ambiguous".into() });
        }
        out.push(CDToken::d(k - j));
        i = k;
    }
    Ok(out)
}

/// A vertex and the restricted-ordering bits read off its block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodedOrdering {
    pub vertex: Vertex,
    /// Bits at `(u,v)` with `2 <= u <= x`, `2 <= v <= y`, sorted.
    pub bits: Vec<(usize, usize, u8)>,
}

impl DecodedOrdering {
    /// The restricted ordering carrying these bits.
    pub fn ordering(&self) -> OrderingTable {
        OrderingTable::with_default(&self.bits, None, 0).expect("decoded bits are valid")
    }
}

fn letters(tokens: &[CDToken]) -> usize {
    tokens.iter().map(|t| t.len()).sum()
}

fn split(
    tokens: &[CDToken],
    x: usize,
    y: usize,
    bits: &mut BTreeMap<(usize, usize), u8>,
) -> Result<()> {
    if x == 1 || y == 1 {
        let want = if y == 1 { CDToken::c(x) } else { CDToken::d(y) };
        return if tokens == [want] {
            Ok(())
        } else {
            Err(Error::InconsistentLengths(format!("block ({x},{y}) should be the single token {want}")))
        };
    }
    if bits.contains_key(&(x, y)) {
        return Ok(());
    }
    let pos_c = tokens.iter().position(|&t| t == CDToken::c(x));
    let pos_d = tokens.iter().position(|&t| t == CDToken::d(y));
    let (Some(pc), Some(pd)) = (pos_c, pos_d) else {
        return Err(Error::InconsistentLengths(format!("block ({x},{y}) lacks C{x} or D{y}")));
    };
    let bit = u8::from(pd < pc);
    let (first, second) = if bit == 0 { ((x, y - 1), (x - 1, y)) } else { ((x - 1, y), (x, y - 1)) };
    let first_len = binomial_u128(first.0 + first.1, first.0).expect("small") as usize;
    let mut acc = 0;
    let mut cut = 0;
    while acc < first_len && cut < tokens.len() {
        acc += tokens[cut].len();
        cut += 1;
    }
    if acc != first_len {
        return Err(Error::InconsistentLengths(format!("split of ({x},{y}) falls inside a token")));
    }
    bits.insert((x, y), bit);
    split(&tokens[..cut], first.0, first.1, bits)?;
    split(&tokens[cut..], second.0, second.1, bits)
}

/// Recovers `(x,y)` and the restricted ordering from a block. The result
/// is re-encoded and compared with the input.
pub fn decode_ordering(w: &Word) -> Result<DecodedOrdering> {
    if w.as_bytes() == b"ab" {
        return Ok(DecodedOrdering { vertex: Vertex::new(1, 1), bits: Vec::new() });
    }
    let tokens = decompose_cd(w)?;
    let max_of = |kind| tokens.iter().filter(|t| t.kind == kind).map(|t| t.index).max().unwrap_or(1);
    let (x, y) = (max_of(CDKind::C), max_of(CDKind::D));
    let expected = binomial_u128(x + y, x).unwrap_or(u128::MAX);
    if letters(&tokens) as u128 != expected {
        return Err(Error::InconsistentLengths(format!(
            "length {} is not |B({x},{y})| = {expected}",
            w.len()
        )));
    }
    let mut bits = BTreeMap::new();
    split(&tokens, x, y, &mut bits)?;
    let decoded = DecodedOrdering {
        vertex: Vertex::new(x, y),
        bits: bits.into_iter().map(|((u, v), b)| (u, v, b)).collect(),
    };
    if basic_block(&decoded.ordering(), x, y)? != *w {
        return Err(Error::InconsistentLengths("re-encoding the decoded ordering differs".into()));
    }
    Ok(decoded)
}

/// Mask for [`crate::coding::restricted_ordering`] matching decoded bits.
pub fn restricted_mask(d: &DecodedOrdering) -> u64 {
    let y = d.vertex.y;
    d.bits
        .iter()
        .filter(|&&(_, _, b)| b == 1)
        .map(|&(u, v, _)| 1u64 << ((u - 2) * (y - 1) + (v - 2)))
        .sum()
}
