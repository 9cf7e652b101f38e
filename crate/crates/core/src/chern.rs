//! Multiplicities of the anti-canonical class in the curve basis.
//!
//! The coefficients `d_i` of `c₁ = Σ d_j D_j` are defined by the adjunction
//! system `c₁·D_i = D_i² + 2`. [`solve_adjunction`] solves it exactly and is
//! the ground truth. [`closed_form_multiplicities`] rebuilds the same vector
//! for simple sequences `[s_k1 … s_kN r_l]` from the tip multiplicity
//! `t = (p+q-1+l)/(r+s-1)` and the slopes `g_(j+1) = s_j·t - q_j`:
//!
//! * position 0 (`C_0`) carries `t + 1`;
//! * the black node opening block `j ≥ 2` carries `1 + g_j`, and the first
//!   regular entry carries `1 + g_(N+1)`;
//! * the `m`-th white entry of block `j` carries `1 + g_(j-1) + m·g_j`
//!   (with `g_0 = -1`), a linear chain between two anchors;
//! * the root, second regular entry, carries `(r+s)t - (p+q) + 1`, and the
//!   remaining regular entries descend `t + l - 1, …, t + 2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{dloussky_matrix, DlousskyMatrix};
use crate::graph::{build_dual_graph, intersection_matrix, node_aliases, DualGraph};
use crate::linalg;
use crate::rational::{json_int, lcm_of_denominators, Rational};
use crate::sequence::DlousskySequence;
use crate::validate::{Check, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityVector {
    /// `d_i` per node, in canonical position order.
    pub values: Vec<Rational>,
    /// Tip multiplicity; the smallest value over the tips.
    pub tip: Rational,
    /// Least common multiple of the denominators of `values`.
    #[serde(with = "json_int")]
    pub index: BigInt,
    /// `g_1 … g_(N+1)`; empty when produced by the solver.
    pub slopes: Vec<Rational>,
}

/// Least common multiple of the denominators.
pub fn index_of(mult: &MultiplicityVector) -> BigInt {
    lcm_of_denominators(&mult.values)
}

fn not_simple(seq: &DlousskySequence) -> Error {
    Error::NotSimple {
        sequence: seq.symbolic(),
        class: seq.classify().to_string(),
    }
}

/// Exact solve of `M·d = (D_i² + 2)_i`.
pub fn solve_adjunction(graph: &DualGraph) -> Result<MultiplicityVector> {
    let matrix = intersection_matrix(graph)?;
    let n = matrix.size();
    let a: Vec<Vec<Rational>> = matrix
        .rows()
        .iter()
        .map(|row| row.iter().map(|&v| Rational::from(v)).collect())
        .collect();
    let rhs: Vec<Rational> = (0..n)
        .map(|i| Rational::from(graph.self_intersection(i) + 2))
        .collect();
    let values = linalg::solve(&a, &rhs).ok_or_else(|| Error::SingularSystem {
        reason: if graph.self_intersections().iter().all(|&w| w == -2) {
            "the cycle of (-2)-curves is trivial in homology (Enoki)".to_string()
        } else {
            "intersection matrix is not invertible".to_string()
        },
    })?;
    let tips = graph.tips();
    let tip = if tips.is_empty() {
        values.iter().min()
    } else {
        tips.iter().map(|&i| &values[i]).min()
    }
    .cloned()
    .expect("non-empty graph");
    let index = lcm_of_denominators(&values);
    Ok(MultiplicityVector {
        values,
        tip,
        index,
        slopes: Vec::new(),
    })
}

/// Corruptions of single closed-form constants, used to check that the
/// validation harness notices them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mutation {
    #[default]
    None,
    /// `t = (p+q+l)/(r+s-1)`
    TipNumerator,
    /// `t = (p+q-1+l)/(r+s)`
    TipDenominator,
    /// `g_0 = 0`
    SlopeSeed,
    /// `c_0 = t + 2`
    C0,
    /// black nodes at `2 + g_j`
    BlackLemma,
    /// root at `(r+s)t - (p+q) + 2`
    Root,
    /// regular chain at `t + l + 2 - i`
    RegularChain,
}

impl Mutation {
    pub const ALL: [Mutation; 7] = [
        Mutation::TipNumerator,
        Mutation::TipDenominator,
        Mutation::SlopeSeed,
        Mutation::C0,
        Mutation::BlackLemma,
        Mutation::Root,
        Mutation::RegularChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::None => "none",
            Mutation::TipNumerator => "tip-numerator",
            Mutation::TipDenominator => "tip-denominator",
            Mutation::SlopeSeed => "slope-seed",
            Mutation::C0 => "c0",
            Mutation::BlackLemma => "black-lemma",
            Mutation::Root => "root",
            Mutation::RegularChain => "regular-chain",
        }
    }

    /// The identity that must fail when this mutation is active.
    pub fn expected_failure(self) -> &'static str {
        match self {
            Mutation::None => "",
            Mutation::TipNumerator | Mutation::TipDenominator => "tip_formula",
            Mutation::SlopeSeed => "slope_recursion",
            Mutation::C0 => "oracle_equivalence/c0",
            Mutation::BlackLemma => "oracle_equivalence/black_lemma",
            Mutation::Root => "oracle_equivalence/root",
            Mutation::RegularChain => "oracle_equivalence/regular_chain",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        std::iter::once(Mutation::None)
            .chain(Mutation::ALL)
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mutation {s:?}"))
    }
}

/// Which closed-form rule produced a node's value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    C0,
    BlackLemma { j: usize },
    WhiteChain { j: usize, m: usize },
    Root,
    RegularChain { i: usize },
}

impl Rule {
    pub fn family(self) -> &'static str {
        match self {
            Rule::C0 => "c0",
            Rule::BlackLemma { .. } => "black_lemma",
            Rule::WhiteChain { .. } => "white_chain",
            Rule::Root => "root",
            Rule::RegularChain { .. } => "regular_chain",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::C0 => f.write_str("c0 = t + 1"),
            Rule::BlackLemma { j } => write!(f, "1 + g_{j}"),
            Rule::WhiteChain { j, m } => write!(f, "1 + g_{} + {m}·g_{j}", j - 1),
            Rule::Root => f.write_str("(r+s)t - (p+q) + 1"),
            Rule::RegularChain { i } => write!(f, "t + l + 1 - {i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub multiplicities: MultiplicityVector,
    pub rules: Vec<Rule>,
    /// `g_0`, the slope before the first black node.
    pub slope_seed: Rational,
    pub matrix: DlousskyMatrix,
    pub l: u64,
}

fn tip_from(m: &DlousskyMatrix, l: u64, mutation: Mutation) -> Rational {
    let l = BigInt::from(l);
    let one = BigInt::one();
    let numer = match mutation {
        Mutation::TipNumerator => m.p() + m.q() + &l,
        _ => m.p() + m.q() - &one + &l,
    };
    let denom = match mutation {
        Mutation::TipDenominator => m.r() + m.s(),
        _ => m.r() + m.s() - &one,
    };
    Rational::new(numer, denom)
}

/// `t = (p+q-1+l)/(r+s-1)` for a simple sequence.
pub fn tip_multiplicity(seq: &DlousskySequence) -> Result<Rational> {
    let (ks, l) = seq.simple_parts().ok_or_else(|| not_simple(seq))?;
    Ok(tip_from(&dloussky_matrix(&ks)?, l, Mutation::None))
}

/// Unreduced numerator and denominator of the tip fraction,
/// `(p+q-1+l, r+s-1)`.
fn tip_fraction(seq: &DlousskySequence) -> Result<(BigInt, BigInt)> {
    let (ks, l) = seq.simple_parts().ok_or_else(|| not_simple(seq))?;
    let m = dloussky_matrix(&ks)?;
    let one = BigInt::one();
    Ok((m.p() + m.q() - &one + BigInt::from(l), m.r() + m.s() - &one))
}

/// Index as the reduced denominator of the tip fraction,
/// `(r+s-1)/gcd(p+q-1+l, r+s-1)`.
pub fn index_from_tip_fraction(seq: &DlousskySequence) -> Result<BigInt> {
    let (numer, denom) = tip_fraction(seq)?;
    Ok(&denom / numer.gcd(&denom))
}

/// `gcd(p+q-1+l, r+s-1)`: the common factor cancelled from the tip
/// fraction.
pub fn tip_fraction_gcd(seq: &DlousskySequence) -> Result<BigInt> {
    let (numer, denom) = tip_fraction(seq)?;
    Ok(numer.gcd(&denom))
}

pub fn closed_form_multiplicities(seq: &DlousskySequence) -> Result<MultiplicityVector> {
    Ok(closed_form_with(seq, Mutation::None)?.multiplicities)
}

pub fn closed_form_with(seq: &DlousskySequence, mutation: Mutation) -> Result<ClosedForm> {
    let (ks, l) = seq.simple_parts().ok_or_else(|| not_simple(seq))?;
    let graph = build_dual_graph(seq);
    if let Some(&node) = graph.self_loops().first() {
        return Err(Error::SelfLoopUnsupported { node });
    }
    let matrix = dloussky_matrix(&ks)?;
    let t = tip_from(&matrix, l, mutation);
    let n = ks.len();
    let b = seq.b2();
    let l_us = l as usize;
    let one = Rational::one();

    // g[j] for j = 0..=N+1; g_(j+1) = s_j t - q_j with the empty product
    // giving g_1 = t.
    let slope_seed = match mutation {
        Mutation::SlopeSeed => Rational::zero(),
        _ => -Rational::one(),
    };
    let mut g = vec![slope_seed.clone()];
    for j in 0..=n {
        let quad = matrix.partial(j);
        g.push(&t * Rational::from(quad.s.clone()) - Rational::from(quad.q.clone()));
    }
    let black_constant = match mutation {
        Mutation::BlackLemma => Rational::from(2),
        _ => one.clone(),
    };

    let mut values: Vec<Option<(Rational, Rule)>> = vec![None; b];
    let c0_offset = match mutation {
        Mutation::C0 => Rational::from(2),
        _ => one.clone(),
    };
    values[0] = Some((&t + c0_offset, Rule::C0));
    let starts = seq.singular_starts();
    for j in 2..=n {
        values[starts[j - 1]] = Some((&black_constant + &g[j], Rule::BlackLemma { j }));
    }
    values[b - l_us] = Some((&black_constant + &g[n + 1], Rule::BlackLemma { j: n + 1 }));
    for j in 1..=n {
        for m in 1..ks[j - 1] as usize {
            let value = &one + &g[j - 1] + Rational::from(m as i64) * &g[j];
            values[starts[j - 1] + m] = Some((value, Rule::WhiteChain { j, m }));
        }
    }
    if l_us >= 2 {
        let rs = Rational::from(matrix.r() + matrix.s());
        let pq = Rational::from(matrix.p() + matrix.q());
        let constant = match mutation {
            Mutation::Root => Rational::from(2),
            _ => one.clone(),
        };
        values[b - l_us + 1] = Some((rs * &t - pq + constant, Rule::Root));
    }
    let chain_constant: i64 = match mutation {
        Mutation::RegularChain => 2,
        _ => 1,
    };
    for i in 2..l_us {
        let value = &t + Rational::from(l as i64 + chain_constant - i as i64);
        values[b - l_us + i] = Some((value, Rule::RegularChain { i }));
    }

    let (values, rules): (Vec<Rational>, Vec<Rule>) = values
        .into_iter()
        .map(|slot| slot.expect("every position is covered by one rule"))
        .unzip();
    let index = lcm_of_denominators(&values);
    Ok(ClosedForm {
        multiplicities: MultiplicityVector {
            values,
            tip: t,
            index,
            slopes: g[1..].to_vec(),
        },
        rules,
        slope_seed,
        matrix,
        l,
    })
}

pub fn cross_validate(seq: &DlousskySequence) -> ValidationReport {
    cross_validate_with(seq, Mutation::None)
}

/// Oracle-versus-closed-form comparison plus the identities the oracle
/// solution must satisfy.
pub fn cross_validate_with(seq: &DlousskySequence, mutation: Mutation) -> ValidationReport {
    let name = seq.symbolic();
    if !seq.is_simple() {
        let note = match seq.classify() {
            crate::sequence::SurfaceClass::Enoki => "oracle inapplicable (Enoki)".to_string(),
            class => format!("closed forms need a simple sequence ({class})"),
        };
        return ValidationReport::inapplicable(name, note);
    }
    let graph = build_dual_graph(seq);
    if graph.has_self_loop() {
        return ValidationReport::inapplicable(name, "nodal curve (self-loop)".to_string());
    }
    let mut report = ValidationReport::new(name);
    let oracle = match solve_adjunction(&graph) {
        Ok(m) => m,
        Err(e) => {
            report.push(Check::fail("oracle_solve", e.to_string()));
            return report;
        }
    };
    let closed = match closed_form_with(seq, mutation) {
        Ok(c) => c,
        Err(e) => {
            report.push(Check::fail("closed_form", e.to_string()));
            return report;
        }
    };
    let aliases = node_aliases(seq, &graph).unwrap_or_default();
    let label = |i: usize| match aliases.get(i) {
        Some(a) => format!("{a} (node {i})"),
        None => format!("node {i}"),
    };
    let d = &oracle.values;
    let (ks, l) = seq.simple_parts().expect("simple");
    let m = &closed.matrix;
    let b = seq.b2();
    let l_us = l as usize;
    let n = ks.len();

    // componentwise equality, grouped by the rule that produced the value
    for family in ["c0", "black_lemma", "white_chain", "root", "regular_chain"] {
        let nodes: Vec<usize> = (0..b)
            .filter(|&i| closed.rules[i].family() == family)
            .collect();
        if nodes.is_empty() {
            continue;
        }
        let mismatch = nodes
            .iter()
            .find(|&&i| closed.multiplicities.values[i] != d[i]);
        report.push(match mismatch {
            None => Check::pass(format!("oracle_equivalence/{family}")),
            Some(&i) => Check::fail(
                format!("oracle_equivalence/{family}"),
                format!(
                    "{}: oracle {} but {} gives {}",
                    label(i),
                    d[i],
                    closed.rules[i],
                    closed.multiplicities.values[i]
                ),
            ),
        });
    }

    let t = oracle.tip.clone();
    report.push(Check::expect_eq(
        "tip_formula",
        &closed.multiplicities.tip,
        &t,
        "(p+q-1+l)/(r+s-1) vs oracle tip",
    ));

    let min = d.iter().min().expect("non-empty");
    let tips = graph.tips();
    report.push(Check::from_bool(
        "tip_minimal",
        t.is_positive() && &t == min && tips.iter().any(|&i| &d[i] == min) && d[1] == t,
        format!("tip {t}, minimum {min}, tips {tips:?}"),
    ));

    let one = Rational::one();
    report.push(Check::expect_eq(
        "c0",
        &d[0],
        &(&t + &one),
        "d(C_0) vs t + 1",
    ));

    let root = if l_us >= 2 { b - l_us + 1 } else { 0 };
    let rs = Rational::from(m.r() + m.s());
    let pq = Rational::from(m.p() + m.q());
    let eq9 = &rs * &t - &pq + &one;
    let t_plus_l = &t + Rational::from(l as i64);
    report.push(Check::from_bool(
        "root",
        graph.role(root).root && d[root] == t_plus_l && d[root] == eq9,
        format!(
            "{}: {} vs t + l = {} and (r+s)t-(p+q)+1 = {}",
            label(root),
            d[root],
            t_plus_l,
            eq9
        ),
    ));

    if l_us >= 3 {
        let bad =
            (2..l_us).find(|&i| d[b - l_us + i] != &t + Rational::from(l as i64 + 1 - i as i64));
        report.push(match bad {
            None => Check::pass("regular_chain"),
            Some(i) => Check::fail(
                "regular_chain",
                format!(
                    "{}: {} vs t + l + 1 - {i}",
                    label(b - l_us + i),
                    d[b - l_us + i]
                ),
            ),
        });
    }

    // slopes recomputed from the oracle tip
    let mut g = vec![-Rational::one()];
    for j in 0..=n {
        let quad = m.partial(j);
        g.push(&t * Rational::from(quad.s.clone()) - Rational::from(quad.q.clone()));
    }
    let starts = seq.singular_starts();
    let mut anchors: Vec<usize> = starts.clone();
    anchors.push(b - l_us);
    let bad = (1..=n + 1).find(|&j| d[anchors[j - 1]] != &one + &g[j]);
    report.push(match bad {
        None => Check::pass("black_lemma"),
        Some(j) => Check::fail(
            "black_lemma",
            format!(
                "{}: {} vs 1 + g_{j} = {}",
                label(anchors[j - 1]),
                d[anchors[j - 1]],
                &one + &g[j]
            ),
        ),
    });
    let mut white_bad = None;
    for j in 1..=n {
        for mm in 1..ks[j - 1] as usize {
            let expected = &one + &g[j - 1] + Rational::from(mm as i64) * &g[j];
            if d[starts[j - 1] + mm] != expected && white_bad.is_none() {
                white_bad = Some((starts[j - 1] + mm, expected));
            }
        }
    }
    if ks.iter().any(|&k| k >= 2) {
        report.push(match white_bad {
            None => Check::pass("white_lemma"),
            Some((i, e)) => Check::fail("white_lemma", format!("{}: {} vs {e}", label(i), d[i])),
        });
    }

    // recursion on the closed-form slopes, g_0 included
    let closed_g: Vec<Rational> = std::iter::once(closed.slope_seed.clone())
        .chain(closed.multiplicities.slopes.iter().cloned())
        .collect();
    let bad = (1..=n).find(|&j| {
        &closed_g[j + 1] - &closed_g[j - 1] != Rational::from(ks[j - 1] as i64) * &closed_g[j]
    });
    report.push(match bad {
        None => Check::pass("slope_recursion"),
        Some(j) => Check::fail(
            "slope_recursion",
            format!("g_{} - g_{} != k_{j}·g_{j}", j + 1, j - 1),
        ),
    });

    let index_formula = index_from_tip_fraction(seq).expect("simple");
    report.push(Check::from_bool(
        "index",
        oracle.index == index_formula && (&t * Rational::from(oracle.index.clone())).is_integer(),
        format!(
            "lcm of denominators {} vs (r+s-1)/gcd(p+q-1+l, r+s-1) = {}",
            oracle.index, index_formula
        ),
    ));

    let residual = adjunction_residual(&graph, &closed.multiplicities.values);
    report.push(Check::from_bool(
        "adjunction_residual",
        residual.iter().all(Rational::is_zero),
        format!(
            "M·d - (D_i² + 2) = {:?}",
            residual.iter().map(ToString::to_string).collect::<Vec<_>>()
        ),
    ));
    report
}

/// `M·d - (D_i² + 2)_i`, computed directly from the graph.
pub fn adjunction_residual(graph: &DualGraph, values: &[Rational]) -> Vec<Rational> {
    (0..graph.node_count())
        .map(|i| {
            let mut acc = Rational::from(graph.self_intersection(i)) * &values[i];
            for j in graph.neighbors(i) {
                if j != i {
                    acc = acc + &values[j];
                }
            }
            acc - Rational::from(graph.self_intersection(i) + 2)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(text: &str) -> DlousskySequence {
        text.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn oracle_worked_examples() {
        let m = solve_adjunction(&build_dual_graph(&seq("[s2 r2]"))).unwrap();
        assert_eq!(m.values, vec![q(2, 1), q(1, 1), q(2, 1), q(3, 1)]);
        assert_eq!(m.index, BigInt::from(1));
        assert_eq!(m.tip, q(1, 1));

        let m = solve_adjunction(&build_dual_graph(&seq("[s1 s1 r2]"))).unwrap();
        assert_eq!(m.values, vec![q(5, 2), q(3, 2), q(3, 1), q(7, 2)]);
        assert_eq!(index_of(&m), BigInt::from(2));
    }

    #[test]
    fn oracle_refuses_enoki_and_loops() {
        assert!(matches!(
            solve_adjunction(&build_dual_graph(&seq("[r3]"))),
            Err(Error::SingularSystem { .. })
        ));
        assert_eq!(
            solve_adjunction(&build_dual_graph(&seq("[s2 r1]"))),
            Err(Error::SelfLoopUnsupported { node: 0 })
        );
    }

    #[test]
    fn tip_examples() {
        for k in 1..8 {
            let s = DlousskySequence::from_blocks(&[
                crate::sequence::Block::Singular(k),
                crate::sequence::Block::Regular(k),
            ])
            .unwrap();
            assert_eq!(tip_multiplicity(&s).unwrap(), q(1, 1), "{s}");
        }
        assert_eq!(tip_multiplicity(&seq("[s1 s1 r2]")).unwrap(), q(3, 2));
        assert_eq!(tip_multiplicity(&seq("[s2 r2]")).unwrap(), q(1, 1));
        assert!(matches!(
            tip_multiplicity(&seq("[r3]")),
            Err(Error::NotSimple { .. })
        ));
    }

    #[test]
    fn closed_form_worked_examples() {
        let c = closed_form_multiplicities(&seq("[s2 r2]")).unwrap();
        assert_eq!(c.values, vec![q(2, 1), q(1, 1), q(2, 1), q(3, 1)]);
        let c = closed_form_multiplicities(&seq("[s1 s1 r2]")).unwrap();
        assert_eq!(c.values, vec![q(5, 2), q(3, 2), q(3, 1), q(7, 2)]);
        assert_eq!(c.slopes, vec![q(3, 2), q(1, 2), q(2, 1)]);
        let c = closed_form_multiplicities(&seq("[s4 r4]")).unwrap();
        assert_eq!(c.tip, q(1, 1));
        assert_eq!(c.values[0], q(2, 1));
        assert_eq!(c.values[5], q(5, 1));
        assert!(matches!(
            closed_form_multiplicities(&seq("[s1 r1 s1 r1]")),
            Err(Error::NotSimple { .. })
        ));
        assert!(matches!(
            closed_form_multiplicities(&seq("[s3 r1]")),
            Err(Error::SelfLoopUnsupported { .. })
        ));
    }

    #[test]
    fn index_examples() {
        assert_eq!(
            index_from_tip_fraction(&seq("[s2 r2]")).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            index_from_tip_fraction(&seq("[s1 s1 r2]")).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            tip_fraction_gcd(&seq("[s1 s1 r2]")).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            index_from_tip_fraction(&seq("[s3 r3]")).unwrap(),
            BigInt::from(1)
        );
    }

    #[test]
    fn cross_validation_passes_on_worked_example() {
        let r = cross_validate(&seq("[s2 r2]"));
        assert!(r.applicable);
        assert!(r.passed(), "{r:?}");
        assert!(r.checks.len() >= 8);
    }

    #[test]
    fn cross_validation_marks_enoki_inapplicable() {
        let r = cross_validate(&seq("[r3]"));
        assert!(!r.applicable);
        assert_eq!(r.note.as_deref(), Some("oracle inapplicable (Enoki)"));
    }

    #[test]
    fn c0_mutation_is_named() {
        let r = cross_validate_with(&seq("[s1 s1 r2]"), Mutation::C0);
        let failed: Vec<&str> = r.failures().map(|c| c.identity.as_str()).collect();
        assert!(failed.contains(&"oracle_equivalence/c0"), "{failed:?}");
        assert!(failed.contains(&"adjunction_residual"));
    }

    #[test]
    fn mutation_names_round_trip() {
        for m in Mutation::ALL {
            assert_eq!(m.name().parse::<Mutation>().unwrap(), m);
        }
        assert!("bogus".parse::<Mutation>().is_err());
    }
}
