//! Enumeration of canonical sequences by second Betti number.

use std::collections::BTreeSet;

use crate::sequence::{Block, DlousskySequence, Limits};

/// All compositions of `n` (ordered tuples of positive parts), in
/// lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<u32>> {
    fn go(rest: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in 1..=rest {
            prefix.push(part as u32);
            go(rest - part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, &mut Vec::new(), &mut out);
    }
    out
}

/// Simple intermediate sequences `[s_k1 … s_kN r_l]` with `b2 = b`, ordered
/// lexicographically by `(k_1, …, k_N, l)`. There are `2^(b-1) - 1` of them.
pub fn simple_sequences(b: usize, limits: &Limits) -> Vec<DlousskySequence> {
    if b > limits.max_b2 {
        return Vec::new();
    }
    compositions(b)
        .into_iter()
        .filter(|parts| parts.len() >= 2)
        .map(|parts| {
            let (l, ks) = parts.split_last().expect("two parts");
            let mut blocks: Vec<Block> = ks.iter().map(|&k| Block::Singular(k)).collect();
            blocks.push(Block::Regular(*l));
            DlousskySequence::from_blocks_with(&blocks, limits).expect("valid by construction")
        })
        .collect()
}

pub fn simple_sequences_up_to(b_max: usize, limits: &Limits) -> Vec<DlousskySequence> {
    (1..=b_max)
        .flat_map(|b| simple_sequences(b, limits))
        .collect()
}

/// Every canonical sequence with `b2 = b`: Enoki, Inoue-Hirzebruch and
/// intermediate (any number of trees), sorted by block list.
pub fn all_sequences(b: usize, limits: &Limits) -> Vec<DlousskySequence> {
    if b == 0 || b > limits.max_b2 {
        return Vec::new();
    }
    let mut found = BTreeSet::new();
    for parts in compositions(b) {
        let m = parts.len();
        // tag masks: bit set = regular block; no two cyclically adjacent
        // regular blocks and at least one singular block
        for mask in 0u64..(1u64 << m) {
            if mask == (1u64 << m) - 1 {
                continue;
            }
            let regular = |i: usize| mask >> i & 1 == 1;
            if m > 1 && (0..m).any(|i| regular(i) && regular((i + 1) % m)) {
                continue;
            }
            let blocks: Vec<Block> = parts
                .iter()
                .enumerate()
                .map(|(i, &len)| {
                    if regular(i) {
                        Block::Regular(len)
                    } else {
                        Block::Singular(len)
                    }
                })
                .collect();
            let seq = DlousskySequence::from_blocks_with(&blocks, limits).expect("valid blocks");
            found.insert(seq);
        }
    }
    found.insert(
        DlousskySequence::from_blocks_with(&[Block::Regular(b as u32)], limits)
            .expect("Enoki sequence"),
    );
    found.into_iter().collect()
}

pub fn all_sequences_up_to(b_max: usize, limits: &Limits) -> Vec<DlousskySequence> {
    (1..=b_max).flat_map(|b| all_sequences(b, limits)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{parse_expanded, SurfaceClass};

    #[test]
    fn composition_counts() {
        for n in 1..=10 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
        assert!(compositions(0).is_empty());
    }

    #[test]
    fn simple_counts_match_compositions_without_the_all_regular_one() {
        let limits = Limits::default();
        for b in 1..=12 {
            let seqs = simple_sequences(b, &limits);
            assert_eq!(seqs.len(), (1usize << (b - 1)) - 1, "b = {b}");
            assert!(seqs.iter().all(DlousskySequence::is_simple));
            let distinct: BTreeSet<_> = seqs.iter().collect();
            assert_eq!(distinct.len(), seqs.len());
        }
    }

    #[test]
    fn small_simple_lists() {
        let limits = Limits::default();
        let names: Vec<String> = simple_sequences(3, &limits)
            .iter()
            .map(|s| s.symbolic())
            .collect();
        assert_eq!(names, ["[s1 s1 r1]", "[s1 r2]", "[s2 r1]"]);
        let names: Vec<String> = simple_sequences(4, &limits)
            .iter()
            .map(|s| s.symbolic())
            .collect();
        for expected in [
            "[s1 r3]",
            "[s2 r2]",
            "[s3 r1]",
            "[s1 s1 r2]",
            "[s1 s2 r1]",
            "[s2 s1 r1]",
        ] {
            assert!(names.contains(&expected.to_string()), "{expected}");
        }
        assert!(!names.contains(&"[s1 r1 s1 r1]".to_string()));
    }

    // Brute force: every word over {2..b+2} of length b that parses, up to
    // rotation.
    fn brute_force_all(b: usize) -> BTreeSet<DlousskySequence> {
        let alphabet = b + 1;
        let mut out = BTreeSet::new();
        let total = alphabet.pow(b as u32);
        for mut code in 0..total {
            let mut word = Vec::with_capacity(b);
            for _ in 0..b {
                word.push((code % alphabet) as i64 + 2);
                code /= alphabet;
            }
            if let Ok(s) = parse_expanded(&word) {
                out.insert(s);
            }
        }
        out
    }

    #[test]
    fn all_sequences_match_brute_force() {
        let limits = Limits::default();
        for b in 1..=6 {
            let listed: BTreeSet<_> = all_sequences(b, &limits).into_iter().collect();
            assert_eq!(listed, brute_force_all(b), "b = {b}");
        }
    }

    #[test]
    fn all_sequences_cover_every_class() {
        let seqs = all_sequences(4, &Limits::default());
        let classes: BTreeSet<String> = seqs.iter().map(|s| s.classify().to_string()).collect();
        assert!(classes.contains("Enoki"));
        assert!(classes.contains("Inoue-Hirzebruch"));
        assert!(seqs
            .iter()
            .any(|s| matches!(s.classify(), SurfaceClass::Intermediate { trees: 2, .. })));
    }
}
