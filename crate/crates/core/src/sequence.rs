//! Dloussky sequences: parsing, canonical rotation and classification.
//!
//! A sequence is a cyclic list of opposite self-intersection numbers built
//! from singular blocks `s_k = (k+2, 2, …, 2)` (length `k`) and regular
//! blocks `r_l = (2, …, 2)` (length `l`).
//!
//! Canonical rotation: a sequence without singular blocks is kept as given.
//! Otherwise the block list starts with a singular block that directly
//! follows a regular block (any singular block when there is no regular
//! one), and among those candidates the lexicographically smallest block
//! list wins, with `Singular < Regular` and ties broken by length. A simple
//! sequence therefore always reads `[s_k1 … s_kN r_l]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on `b2` for parsing and enumeration.
pub const DEFAULT_MAX_B2: usize = 64;

/// Environment variable overriding [`DEFAULT_MAX_B2`].
pub const MAX_B2_ENV: &str = "KATO_MAX_B2";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_b2: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_b2: DEFAULT_MAX_B2,
        }
    }
}

impl Limits {
    /// Default limits, with `KATO_MAX_B2` applied when it parses.
    pub fn from_env() -> Self {
        let max_b2 = std::env::var(MAX_B2_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_B2);
        Limits { max_b2 }
    }

    pub fn unbounded() -> Self {
        Limits { max_b2: usize::MAX }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "length", rename_all = "lowercase")]
pub enum Block {
    Singular(u32),
    Regular(u32),
}

impl Block {
    pub fn len(&self) -> usize {
        match *self {
            Block::Singular(k) | Block::Regular(k) => k as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, Block::Singular(_))
    }

    fn expand_into(&self, out: &mut Vec<u32>) {
        match *self {
            Block::Singular(k) => {
                out.push(k + 2);
                out.extend(std::iter::repeat_n(2, k as usize - 1));
            }
            Block::Regular(l) => out.extend(std::iter::repeat_n(2, l as usize)),
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Singular(k) => write!(f, "s{k}"),
            Block::Regular(l) => write!(f, "r{l}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceClass {
    Enoki,
    InoueHirzebruch,
    Intermediate { simple: bool, trees: usize },
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceClass::Enoki => f.write_str("Enoki"),
            SurfaceClass::InoueHirzebruch => f.write_str("Inoue-Hirzebruch"),
            SurfaceClass::Intermediate { simple: true, .. } => {
                f.write_str("intermediate (simple, 1 tree)")
            }
            SurfaceClass::Intermediate { trees, .. } => write!(f, "intermediate ({trees} trees)"),
        }
    }
}

/// A validated, canonically rotated Dloussky sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DlousskySequence {
    blocks: Vec<Block>,
    entries: Vec<u32>,
}

impl DlousskySequence {
    /// Builds from a cyclic block list; adjacent regular blocks merge.
    pub fn from_blocks(blocks: &[Block]) -> Result<Self> {
        Self::from_blocks_with(blocks, &Limits::default())
    }

    pub fn from_blocks_with(blocks: &[Block], limits: &Limits) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Empty);
        }
        let mut entries = Vec::new();
        for block in blocks {
            if block.is_empty() {
                return Err(Error::BlockLength {
                    position: 0,
                    value: 0,
                });
            }
            block.expand_into(&mut entries);
        }
        from_entries(&entries, limits)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Second Betti number, the number of rational curves.
    pub fn b2(&self) -> usize {
        self.entries.len()
    }

    /// Sum of the entries.
    pub fn dloussky_number(&self) -> u64 {
        self.entries.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn classify(&self) -> SurfaceClass {
        let singular = self.blocks.iter().filter(|b| b.is_singular()).count();
        let regular = self.blocks.len() - singular;
        match (singular, regular) {
            (0, _) => SurfaceClass::Enoki,
            (_, 0) => SurfaceClass::InoueHirzebruch,
            (_, trees) => SurfaceClass::Intermediate {
                simple: trees == 1,
                trees,
            },
        }
    }

    /// Number of singular blocks, i.e. of curves with self-intersection ≤ −3.
    pub fn black_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.is_singular()).count()
    }

    /// Total length of the regular blocks.
    pub fn regular_total(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| !b.is_singular())
            .map(Block::len)
            .sum()
    }

    pub fn singular_lengths(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .filter_map(|b| match *b {
                Block::Singular(k) => Some(u64::from(k)),
                Block::Regular(_) => None,
            })
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        matches!(
            self.classify(),
            SurfaceClass::Intermediate { simple: true, .. }
        )
    }

    /// `(k_1..k_N, l)` for a simple sequence.
    pub fn simple_parts(&self) -> Option<(Vec<u64>, u64)> {
        if !self.is_simple() {
            return None;
        }
        Some((self.singular_lengths(), self.regular_total() as u64))
    }

    /// Positions where singular blocks start, in block order.
    pub fn singular_starts(&self) -> Vec<usize> {
        let mut starts = Vec::new();
        let mut pos = 0;
        for block in &self.blocks {
            if block.is_singular() {
                starts.push(pos);
            }
            pos += block.len();
        }
        starts
    }

    /// Whether position `i` lies in a regular block.
    pub fn is_regular_position(&self, i: usize) -> bool {
        let mut pos = 0;
        for block in &self.blocks {
            if i < pos + block.len() {
                return !block.is_singular();
            }
            pos += block.len();
        }
        false
    }

    /// The family `[s_(b-1) r_1]`, whose cycle is a single nodal curve.
    pub fn is_nodal_family(&self) -> bool {
        matches!(self.blocks.as_slice(),
            [Block::Singular(k), Block::Regular(1)] if *k as usize + 1 == self.b2())
    }

    /// The sequence repeated twice, e.g. `[s2 r1] → [s2 r1 s2 r1]`.
    pub fn doubled(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&self.entries);
        from_entries(&entries, &Limits::unbounded()).expect("doubling preserves validity")
    }

    /// Symbolic form such as `[s2 r2]`.
    pub fn symbolic(&self) -> String {
        let parts: Vec<String> = self.blocks.iter().map(Block::to_string).collect();
        format!("[{}]", parts.join(" "))
    }

    /// Expanded form as a comma-separated list.
    pub fn expanded(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        parts.join(",")
    }
}

impl fmt::Display for DlousskySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbolic())
    }
}

impl FromStr for DlousskySequence {
    type Err = Error;

    /// Symbolic text when it starts with `[`, otherwise a comma-separated
    /// expanded list.
    fn from_str(s: &str) -> Result<Self> {
        parse_any(s, &Limits::default())
    }
}

/// Parses either notation.
pub fn parse_any(text: &str, limits: &Limits) -> Result<DlousskySequence> {
    if text.trim_start().starts_with('[') {
        parse_symbolic_with(text, limits)
    } else {
        parse_expanded_text(text, limits)
    }
}

pub fn parse_symbolic(text: &str) -> Result<DlousskySequence> {
    parse_symbolic_with(text, &Limits::default())
}

/// Grammar: `'[' (('s'|'r') '_'? INTEGER)+ ']'`, separators are any mix of
/// whitespace and commas.
pub fn parse_symbolic_with(text: &str, limits: &Limits) -> Result<DlousskySequence> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip = |pos: &mut usize, commas: bool| {
        while *pos < bytes.len()
            && (bytes[*pos].is_ascii_whitespace() || (commas && bytes[*pos] == b','))
        {
            *pos += 1;
        }
    };
    let syntax = |position: usize, message: &str| Error::Syntax {
        position,
        message: message.to_string(),
    };

    skip(&mut pos, false);
    if bytes.get(pos) != Some(&b'[') {
        return Err(syntax(pos, "expected '['"));
    }
    pos += 1;

    let mut blocks = Vec::new();
    loop {
        skip(&mut pos, true);
        let Some(&c) = bytes.get(pos) else {
            return Err(syntax(pos, "missing ']'"));
        };
        if c == b']' {
            pos += 1;
            break;
        }
        let singular = match c {
            b's' | b'S' => true,
            b'r' | b'R' => false,
            _ => return Err(syntax(pos, "expected block tag 's' or 'r'")),
        };
        pos += 1;
        if bytes.get(pos) == Some(&b'_') {
            pos += 1;
        }
        let start = pos;
        let negative = bytes.get(pos) == Some(&b'-');
        if negative {
            pos += 1;
        }
        let digits = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if digits == pos {
            return Err(syntax(pos, "expected block length"));
        }
        let value: i64 = text[digits..pos]
            .parse()
            .map_err(|_| syntax(digits, "block length too large"))?;
        let value = if negative { -value } else { value };
        if value < 1 {
            return Err(Error::BlockLength {
                position: start,
                value,
            });
        }
        let len = u32::try_from(value).map_err(|_| syntax(digits, "block length too large"))?;
        if len as usize > limits.max_b2 {
            return Err(Error::TooLarge {
                b2: len as usize,
                max: limits.max_b2,
            });
        }
        blocks.push(if singular {
            Block::Singular(len)
        } else {
            Block::Regular(len)
        });
        if let Some(&next) = bytes.get(pos) {
            if !(next.is_ascii_whitespace() || next == b',' || next == b']') {
                return Err(syntax(pos, "expected separator or ']'"));
            }
        }
    }
    skip(&mut pos, false);
    if pos != bytes.len() {
        return Err(syntax(pos, "trailing input after ']'"));
    }
    if blocks.is_empty() {
        return Err(Error::Empty);
    }
    let total: usize = blocks.iter().map(Block::len).sum();
    if total > limits.max_b2 {
        return Err(Error::TooLarge {
            b2: total,
            max: limits.max_b2,
        });
    }
    DlousskySequence::from_blocks_with(&blocks, limits)
}

fn parse_expanded_text(text: &str, limits: &Limits) -> Result<DlousskySequence> {
    let mut values = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let trimmed = piece.trim();
        if trimmed.is_empty() {
            return Err(Error::Syntax {
                position: offset,
                message: "empty list element".to_string(),
            });
        }
        let v: i64 = trimmed.parse().map_err(|_| Error::Syntax {
            position: offset + piece.find(trimmed).unwrap_or(0),
            message: format!("expected an integer, found {trimmed:?}"),
        })?;
        values.push(v);
        offset += piece.len() + 1;
    }
    parse_expanded_with(&values, limits)
}

pub fn parse_expanded(values: &[i64]) -> Result<DlousskySequence> {
    parse_expanded_with(values, &Limits::default())
}

pub fn parse_expanded_with(values: &[i64], limits: &Limits) -> Result<DlousskySequence> {
    if values.is_empty() {
        return Err(Error::Empty);
    }
    if values.len() > limits.max_b2 {
        return Err(Error::TooLarge {
            b2: values.len(),
            max: limits.max_b2,
        });
    }
    let mut entries = Vec::with_capacity(values.len());
    for (position, &value) in values.iter().enumerate() {
        if value < 2 {
            return Err(Error::EntryTooSmall { position, value });
        }
        // an entry above b2 + 2 cannot be followed by enough 2s
        let entry = u32::try_from(value).map_err(|_| Error::Inconsistent { position })?;
        entries.push(entry);
    }
    from_entries(&entries, limits)
}

/// Block recovery plus canonical rotation. Entries are all ≥ 2.
fn from_entries(entries: &[u32], limits: &Limits) -> Result<DlousskySequence> {
    let b = entries.len();
    if b == 0 {
        return Err(Error::Empty);
    }
    if b > limits.max_b2 {
        return Err(Error::TooLarge {
            b2: b,
            max: limits.max_b2,
        });
    }
    let Some(first) = entries.iter().position(|&e| e > 2) else {
        return Ok(DlousskySequence {
            blocks: vec![Block::Regular(b as u32)],
            entries: entries.to_vec(),
        });
    };

    // Walk once around the cycle starting at a singular entry.
    let mut blocks = Vec::new();
    let mut offset = 0;
    while offset < b {
        let at = |o: usize| entries[(first + o) % b];
        let value = at(offset);
        if value > 2 {
            let k = (value - 2) as usize;
            if offset + k > b || (1..k).any(|m| at(offset + m) != 2) {
                return Err(Error::Inconsistent {
                    position: (first + offset) % b,
                });
            }
            blocks.push(Block::Singular(k as u32));
            offset += k;
        } else {
            let run = (offset..b).take_while(|&o| at(o) == 2).count();
            blocks.push(Block::Regular(run as u32));
            offset += run;
        }
    }

    let n = blocks.len();
    let has_regular = blocks.iter().any(|blk| !blk.is_singular());
    let best = (0..n)
        .filter(|&i| {
            blocks[i].is_singular() && (!has_regular || !blocks[(i + n - 1) % n].is_singular())
        })
        .map(|i| {
            let mut rotated = blocks[i..].to_vec();
            rotated.extend_from_slice(&blocks[..i]);
            rotated
        })
        .min()
        .expect("at least one singular block");

    let mut expanded = Vec::with_capacity(b);
    for block in &best {
        block.expand_into(&mut expanded);
    }
    Ok(DlousskySequence {
        blocks: best,
        entries: expanded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(text: &str) -> DlousskySequence {
        text.parse().unwrap()
    }

    #[test]
    fn symbolic_examples() {
        let s = parse_symbolic("[s2 r2]").unwrap();
        assert_eq!(s.blocks(), &[Block::Singular(2), Block::Regular(2)]);
        assert_eq!(s.entries(), &[4, 2, 2, 2]);
        assert_eq!(s.b2(), 4);

        let s = parse_symbolic("[r3]").unwrap();
        assert_eq!(s.entries(), &[2, 2, 2]);
        assert_eq!(s.classify(), SurfaceClass::Enoki);

        assert_eq!(
            parse_symbolic("[s1 s1 r2]").unwrap().entries(),
            &[3, 3, 2, 2]
        );
    }

    #[test]
    fn symbolic_notation_variants() {
        let a = parse_symbolic("[s_2, r_2]").unwrap();
        let b = parse_symbolic("  [ S2,r2 ] ").unwrap();
        assert_eq!(a, seq("[s2 r2]"));
        assert_eq!(b, a);
        // adjacent regular blocks merge, rotation is normalized
        assert_eq!(seq("[r1 s2 r1]"), seq("[s2 r2]"));
    }

    #[test]
    fn symbolic_errors() {
        assert!(matches!(
            parse_symbolic("s2 r2"),
            Err(Error::Syntax { position: 0, .. })
        ));
        assert!(matches!(
            parse_symbolic("[s2 x2]"),
            Err(Error::Syntax { position: 4, .. })
        ));
        assert!(matches!(
            parse_symbolic("[s2 r2"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_symbolic("[s r2]"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_symbolic("[s2 r2] x"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_symbolic("[s2r2]"),
            Err(Error::Syntax { .. })
        ));
        assert_eq!(
            parse_symbolic("[s0 r2]"),
            Err(Error::BlockLength {
                position: 2,
                value: 0
            })
        );
        assert_eq!(
            parse_symbolic("[s2 r-1]"),
            Err(Error::BlockLength {
                position: 5,
                value: -1
            })
        );
        assert_eq!(parse_symbolic("[]"), Err(Error::Empty));
        assert_eq!(parse_symbolic("[ , ]"), Err(Error::Empty));
    }

    #[test]
    fn expanded_examples() {
        let s = parse_expanded(&[2, 2, 4, 2]).unwrap();
        assert_eq!(s, seq("[s2 r2]"));
        assert_eq!(s.entries(), &[4, 2, 2, 2]);

        let s = parse_expanded(&[2, 2, 2]).unwrap();
        assert_eq!(s.symbolic(), "[r3]");

        let s = parse_expanded(&[3, 3]).unwrap();
        assert_eq!(s.symbolic(), "[s1 s1]");
        assert_eq!(s.classify(), SurfaceClass::InoueHirzebruch);
    }

    #[test]
    fn expanded_errors() {
        assert_eq!(parse_expanded(&[]), Err(Error::Empty));
        assert_eq!(
            parse_expanded(&[5, 2]),
            Err(Error::Inconsistent { position: 0 })
        );
        assert_eq!(
            parse_expanded(&[4, 3, 2]),
            Err(Error::Inconsistent { position: 0 })
        );
        assert_eq!(
            parse_expanded(&[4]),
            Err(Error::Inconsistent { position: 0 })
        );
        assert_eq!(
            parse_expanded(&[2, 1]),
            Err(Error::EntryTooSmall {
                position: 1,
                value: 1
            })
        );
        assert!(matches!(
            "2, x".parse::<DlousskySequence>(),
            Err(Error::Syntax { position: 3, .. })
        ));
    }

    #[test]
    fn size_limit_applies() {
        let limits = Limits { max_b2: 4 };
        assert!(parse_symbolic_with("[s2 r2]", &limits).is_ok());
        assert_eq!(
            parse_symbolic_with("[s2 r3]", &limits),
            Err(Error::TooLarge { b2: 5, max: 4 })
        );
        assert!(matches!(
            parse_symbolic("[r65]"),
            Err(Error::TooLarge { .. })
        ));
        assert!(parse_symbolic_with("[r65]", &Limits { max_b2: 100 }).is_ok());
    }

    #[test]
    fn dloussky_number_examples() {
        assert_eq!(seq("[r3]").dloussky_number(), 6);
        assert_eq!(seq("[s2 r2]").dloussky_number(), 10);
        assert_eq!(seq("[s1 s1]").dloussky_number(), 6);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(seq("[r3]").classify(), SurfaceClass::Enoki);
        assert_eq!(seq("[s1 s1]").classify(), SurfaceClass::InoueHirzebruch);
        assert_eq!(
            seq("[s2 r2]").classify(),
            SurfaceClass::Intermediate {
                simple: true,
                trees: 1
            }
        );
        assert_eq!(
            seq("[s1 r1 s1 r1]").classify(),
            SurfaceClass::Intermediate {
                simple: false,
                trees: 2
            }
        );
    }

    #[test]
    fn simple_sequences_keep_regular_block_last() {
        assert_eq!(seq("[s2 s1 r1]").symbolic(), "[s2 s1 r1]");
        assert_eq!(seq("[s1 r1 s2]").symbolic(), "[s2 s1 r1]");
        assert_eq!(seq("[r2 s1 s3]").symbolic(), "[s1 s3 r2]");
    }

    #[test]
    fn multi_tree_rotation_is_lexicographic_over_trees() {
        assert_eq!(seq("[s2 r1 s1 r1]").symbolic(), "[s1 r1 s2 r1]");
        assert_eq!(seq("[s1 s1 s2]").symbolic(), "[s1 s1 s2]");
        assert_eq!(seq("[s2 s1 s1]").symbolic(), "[s1 s1 s2]");
    }

    #[test]
    fn nodal_family_and_doubling() {
        let s = seq("[s3 r1]");
        assert!(s.is_nodal_family());
        assert!(!seq("[s2 r2]").is_nodal_family());
        assert_eq!(s.doubled().symbolic(), "[s3 r1 s3 r1]");
    }

    fn arb_blocks() -> impl Strategy<Value = Vec<Block>> {
        prop::collection::vec(
            prop_oneof![
                (1u32..5).prop_map(Block::Singular),
                (1u32..5).prop_map(Block::Regular)
            ],
            1..6,
        )
    }

    proptest! {
        #[test]
        fn every_rotation_canonicalizes_identically(blocks in arb_blocks(), shift in 0usize..64) {
            let s = DlousskySequence::from_blocks(&blocks).unwrap();
            let b = s.b2();
            let mut rotated: Vec<i64> = s.entries().iter().map(|&e| e as i64).collect();
            rotated.rotate_left(shift % b);
            prop_assert_eq!(parse_expanded(&rotated).unwrap(), s.clone());
            // canonicalization is idempotent and both notations agree
            prop_assert_eq!(parse_symbolic(&s.symbolic()).unwrap(), s.clone());
            let again = DlousskySequence::from_blocks(s.blocks()).unwrap();
            prop_assert_eq!(again, s);
        }

        #[test]
        fn dloussky_number_bounds(blocks in arb_blocks()) {
            let s = DlousskySequence::from_blocks(&blocks).unwrap();
            let b = s.b2() as u64;
            let dl = s.dloussky_number();
            prop_assert!(2 * b <= dl && dl <= 3 * b);
            prop_assert_eq!(dl == 2 * b, s.classify() == SurfaceClass::Enoki);
            prop_assert_eq!(dl == 3 * b, s.classify() == SurfaceClass::InoueHirzebruch);
        }
    }
}
