//! Identity suites and the exhaustive validation sweep.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::chern::{cross_validate_with, solve_adjunction, tip_multiplicity, Mutation};
use crate::deform::{deformation_report, moduli_explanation, ModulusTag};
use crate::enumerate::all_sequences_up_to;
use crate::error::Error;
use crate::forms::{dloussky_matrix, f_eval, p_eval_total};
use crate::germ::{germ_invariants, uv_from_slopes};
use crate::graph::{build_dual_graph, decompose, tree_k_invariant};
use crate::rational::Rational;
use crate::sequence::{parse_expanded, parse_symbolic, DlousskySequence, Limits, SurfaceClass};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub identity: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn pass(identity: impl Into<String>) -> Self {
        Check {
            identity: identity.into(),
            passed: true,
            detail: String::new(),
        }
    }

    pub fn fail(identity: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            identity: identity.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    pub fn from_bool(identity: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            identity: identity.into(),
            passed: ok,
            detail: if ok { String::new() } else { detail.into() },
        }
    }

    pub fn expect_eq<T: PartialEq + std::fmt::Display>(
        identity: impl Into<String>,
        got: &T,
        want: &T,
        what: &str,
    ) -> Self {
        Check::from_bool(identity, got == want, format!("{what}: {got} != {want}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub sequence: String,
    pub applicable: bool,
    pub note: Option<String>,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new(sequence: String) -> Self {
        ValidationReport {
            sequence,
            applicable: true,
            note: None,
            checks: Vec::new(),
        }
    }

    pub fn inapplicable(sequence: String, note: String) -> Self {
        ValidationReport {
            sequence,
            applicable: false,
            note: Some(note),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Suite name plus the check it produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteCheck {
    pub suite: &'static str,
    #[serde(flatten)]
    pub check: Check,
}

fn push(out: &mut Vec<SuiteCheck>, suite: &'static str, check: Check) {
    out.push(SuiteCheck { suite, check });
}

pub fn sequence_suite(seq: &DlousskySequence, out: &mut Vec<SuiteCheck>) {
    let b = seq.b2() as u64;
    let dl = seq.dloussky_number();
    let class = seq.classify();
    let enoki = matches!(class, SurfaceClass::Enoki);
    let ih = matches!(class, SurfaceClass::InoueHirzebruch);
    push(
        out,
        "sequence",
        Check::from_bool(
            "dl_bounds",
            2 * b <= dl && dl <= 3 * b && (dl == 2 * b) == enoki && (dl == 3 * b) == ih,
            format!("dl = {dl}, b = {b}, class {class}"),
        ),
    );
    let entries: Vec<i64> = seq.entries().iter().map(|&e| i64::from(e)).collect();
    let rotations_agree = (0..entries.len()).all(|shift| {
        let mut rotated = entries.clone();
        rotated.rotate_left(shift);
        parse_expanded(&rotated).as_ref() == Ok(seq)
    });
    push(
        out,
        "sequence",
        Check::from_bool(
            "rotation_invariance",
            rotations_agree,
            "some rotation parses differently",
        ),
    );
    push(
        out,
        "sequence",
        Check::from_bool(
            "symbolic_round_trip",
            parse_symbolic(&seq.symbolic()).as_ref() == Ok(seq),
            seq.symbolic(),
        ),
    );
}

pub fn graph_suite(seq: &DlousskySequence, out: &mut Vec<SuiteCheck>) {
    let graph = build_dual_graph(seq);
    let b = seq.b2();
    let n = seq.black_count();
    push(
        out,
        "graph",
        Check::from_bool(
            "edge_count",
            graph.edges().len() == b,
            format!("{} edges", graph.edges().len()),
        ),
    );
    let roles = match decompose(&graph) {
        Ok(r) => r,
        Err(e) => {
            push(out, "graph", Check::fail("decompose", e.to_string()));
            return;
        }
    };
    push(
        out,
        "graph",
        Check::from_bool(
            "black_count",
            roles.black_count == n && roles.white_count == b - n,
            format!("{} black, expected {n}", roles.black_count),
        ),
    );
    push(
        out,
        "graph",
        Check::from_bool(
            "tips_equal_roots",
            roles.tips.len() == roles.roots.len(),
            format!("{} tips, {} roots", roles.tips.len(), roles.roots.len()),
        ),
    );
    if let SurfaceClass::Intermediate { trees, .. } = seq.classify() {
        let degrees_ok = (0..b).all(|i| {
            let role = graph.role(i);
            let want = if role.tip {
                1
            } else if role.root {
                3
            } else {
                2
            };
            graph.degree(i) == want
        });
        push(
            out,
            "graph",
            Check::from_bool(
                "degree_pattern",
                degrees_ok
                    && roles.cycles.len() == 1
                    && roles.tips.len() == trees
                    && roles.trees.len() == trees,
                format!(
                    "degrees {:?}, {} cycles",
                    graph.degrees(),
                    roles.cycles.len()
                ),
            ),
        );
    }
    if seq.is_simple() {
        push(
            out,
            "graph",
            Check::from_bool(
                "black_parity",
                roles.black_on_cycle == n.div_ceil(2) && roles.black_on_trees == n / 2,
                format!(
                    "N = {n}: {} on cycle, {} on tree",
                    roles.black_on_cycle, roles.black_on_trees
                ),
            ),
        );
        let (ks, _) = seq.simple_parts().expect("simple");
        let m = dloussky_matrix(&ks).expect("non-empty");
        match tree_k_invariant(&graph) {
            Ok(k) => push(
                out,
                "graph",
                Check::from_bool(
                    "tree_determinant",
                    k == m.k_invariant(),
                    format!("-det = {k}, r+s = {}", m.k_invariant()),
                ),
            ),
            Err(e) => push(out, "graph", Check::fail("tree_determinant", e.to_string())),
        }
        push(
            out,
            "graph",
            Check::from_bool(
                "nodal_detection",
                seq.is_nodal_family() == graph.has_self_loop(),
                "syntactic and graph detection of the nodal family disagree",
            ),
        );
    }
}

pub fn forms_suite(seq: &DlousskySequence, out: &mut Vec<SuiteCheck>) {
    let Some((ks, _)) = seq.simple_parts() else {
        return;
    };
    let m = dloussky_matrix(&ks).expect("non-empty");
    let n = ks.len();
    let p_plus_one = p_eval_total(&ks) + 1;
    let f_sum = f_eval(&ks) + f_eval(&ks[..n - 1]);
    push(
        out,
        "forms",
        Check::from_bool(
            "p_f_identity",
            p_plus_one == f_sum,
            format!("{p_plus_one} vs {f_sum}"),
        ),
    );
    let coeffs_ok = (1..=n).all(|j| {
        let quad = m.partial(j);
        let tail = |from: usize, to: usize| {
            if from >= to {
                f_eval::<u64>(&[])
            } else {
                f_eval(&ks[from..to])
            }
        };
        quad.s == f_eval(&ks[..j])
            && quad.r == f_eval(&ks[..j - 1])
            && quad.q == tail(1, j)
            && (j < 2 || quad.p == tail(1, j - 1))
    });
    push(
        out,
        "forms",
        Check::from_bool(
            "matrix_coefficients",
            coeffs_ok,
            "a partial product differs from the f-form reading",
        ),
    );
    let alternation_ok = (1..=n).all(|j| {
        let det = m.partial(j).determinant();
        det == if j % 2 == 0 { 1.into() } else { (-1).into() }
    });
    push(
        out,
        "forms",
        Check::from_bool(
            "determinant_alternation",
            alternation_ok,
            "p_j s_j - q_j r_j != (-1)^j",
        ),
    );
    let rs = m.r() + m.s();
    let pq = m.p() + m.q();
    push(
        out,
        "forms",
        Check::from_bool(
            "p_sums",
            rs == p_eval_total(&ks) + 1 && pq == p_eval_total(&ks[1..]) + 1,
            format!("r+s = {rs}, p+q = {pq}"),
        ),
    );
}

pub fn germ_suite(seq: &DlousskySequence, out: &mut Vec<SuiteCheck>) {
    if !seq.is_simple() {
        return;
    }
    let inv = germ_invariants(seq).expect("simple");
    let t = tip_multiplicity(seq).expect("simple");
    let (_, l) = seq.simple_parts().expect("simple");
    let one = Rational::one();
    push(
        out,
        "germ",
        Check::expect_eq(
            "tip_shift",
            &inv.tip_shift,
            &(&t - &one),
            "(l-d)/(r+s-1) vs t - 1",
        ),
    );
    let (u, v) = uv_from_slopes(seq).expect("simple");
    push(
        out,
        "germ",
        Check::from_bool(
            "uv_slopes",
            u == inv.u && v == inv.v,
            format!(
                "u = {}, v = {} but rt-p+1 = {u}, st-q+1 = {v}",
                inv.u, inv.v
            ),
        ),
    );
    let sum = &inv.u + &inv.v;
    push(
        out,
        "germ",
        Check::expect_eq(
            "u_plus_v",
            &sum,
            &(&t + Rational::from(l as i64 + 1)),
            "u + v vs t + l + 1",
        ),
    );
    let integral = inv.u.is_integer() && inv.v.is_integer();
    push(
        out,
        "germ",
        Check::from_bool(
            "integrality_iff_index_one",
            integral == t.is_integer(),
            format!("u = {}, v = {}, t = {t}", inv.u, inv.v),
        ),
    );
    let graph = build_dual_graph(seq);
    if graph.has_self_loop() {
        return;
    }
    match solve_adjunction(&graph) {
        Ok(m) => {
            let b = seq.b2();
            let starts = seq.singular_starts();
            let r1 = m.values[b - l as usize].clone();
            let black = m.values[*starts.last().expect("N >= 1")].clone();
            let want: BTreeSet<Rational> = [r1, black].into();
            let got: BTreeSet<Rational> = [inv.u.clone(), inv.v.clone()].into();
            push(
                out,
                "germ",
                Check::from_bool(
                    "uv_set",
                    got == want,
                    format!("{{u, v}} = {got:?}, curves give {want:?}"),
                ),
            );
        }
        Err(e) => push(out, "germ", Check::fail("uv_set", e.to_string())),
    }
}

pub fn deform_suite(seq: &DlousskySequence, out: &mut Vec<SuiteCheck>) {
    let b = seq.b2() as u64;
    let l = seq.regular_total() as u64;
    let regular_entries = moduli_explanation(seq)
        .iter()
        .filter(|t| **t == ModulusTag::OneModulus)
        .count() as u64;
    let unit_tip = if seq.is_simple() {
        tip_multiplicity(seq).ok().map(|t| t == Rational::one())
    } else {
        None
    };
    for epsilon in [0u8, 1] {
        let report = match deformation_report(seq, epsilon) {
            Ok(r) => r,
            Err(Error::EpsilonInconsistent { index }) => {
                push(
                    out,
                    "deform",
                    Check::from_bool(
                        "epsilon_gate",
                        index != "1",
                        format!("rejected with index {index}"),
                    ),
                );
                continue;
            }
            Err(e) => {
                push(out, "deform", Check::fail("report", e.to_string()));
                continue;
            }
        };
        let eps = u64::from(epsilon);
        let eta = u64::from(report.eta);
        push(
            out,
            "deform",
            Check::from_bool(
                "h1_log",
                report.h1_log == l + eps,
                format!("eps = {epsilon}: {} vs l + eps", report.h1_log),
            ),
        );
        push(
            out,
            "deform",
            Check::from_bool(
                "h1_theta_minus_D",
                report.h1_theta_minus_d == b + l - eta,
                format!("eps = {epsilon}: {}", report.h1_theta_minus_d),
            ),
        );
        let eta_ok = eta <= eps && unit_tip.is_none_or(|unit| (eta == 1) == (epsilon == 1 && unit));
        push(
            out,
            "deform",
            Check::from_bool(
                "eta",
                eta_ok,
                format!("eps = {epsilon}, eta = {eta}, unit tip {unit_tip:?}"),
            ),
        );
        push(
            out,
            "deform",
            Check::from_bool(
                "euler_characteristics",
                report.chi_tangent == 2 * b as i64
                    && report.h1_normal == 2 * b - l
                    && report.h0_theta_d == b,
                format!("{report:?}"),
            ),
        );
        push(
            out,
            "deform",
            Check::from_bool(
                "moduli_count",
                regular_entries == report.h1_log - eps,
                format!(
                    "{regular_entries} regular entries, h1_log - eps = {}",
                    report.h1_log - eps
                ),
            ),
        );
        if epsilon == 0 && report.via_double_cover {
            let doubled = deformation_report(&seq.doubled(), 0);
            push(
                out,
                "deform",
                Check::from_bool(
                    "double_cover",
                    doubled.as_ref().map(|d| d.chi_log) == Ok(2 * report.chi_log),
                    format!("doubled {doubled:?}"),
                ),
            );
        }
    }
}

/// Every suite on one sequence.
pub fn validate_sequence(
    seq: &DlousskySequence,
    mutation: Mutation,
) -> (Vec<SuiteCheck>, Option<String>) {
    let mut out = Vec::new();
    sequence_suite(seq, &mut out);
    graph_suite(seq, &mut out);
    forms_suite(seq, &mut out);
    let chern = cross_validate_with(seq, mutation);
    for check in chern.checks {
        push(&mut out, "chern", check);
    }
    germ_suite(seq, &mut out);
    deform_suite(seq, &mut out);
    (out, chern.note)
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub b_max: usize,
    pub mutation: Mutation,
    pub parallel: bool,
    pub limits: Limits,
}

impl SweepOptions {
    pub fn new(b_max: usize) -> Self {
        SweepOptions {
            b_max,
            mutation: Mutation::None,
            parallel: true,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub sequence: String,
    pub suite: &'static str,
    pub identity: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub b_max: usize,
    pub mutation: String,
    pub sequences: usize,
    pub simple_sequences: usize,
    pub oracle_comparisons: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn validate_sweep(options: &SweepOptions) -> SweepSummary {
    let seqs = all_sequences_up_to(options.b_max, &options.limits);
    let run = |seq: &DlousskySequence| {
        (
            seq.symbolic(),
            seq.is_simple(),
            validate_sequence(seq, options.mutation),
        )
    };
    let results: Vec<_> = if options.parallel {
        seqs.par_iter().map(run).collect()
    } else {
        seqs.iter().map(run).collect()
    };
    let mut summary = SweepSummary {
        b_max: options.b_max,
        mutation: options.mutation.to_string(),
        sequences: seqs.len(),
        simple_sequences: 0,
        oracle_comparisons: 0,
        checks: 0,
        failures: Vec::new(),
    };
    for (name, simple, (checks, _)) in results {
        summary.simple_sequences += usize::from(simple);
        summary.checks += checks.len();
        if checks
            .iter()
            .any(|c| c.suite == "chern" && c.check.identity.starts_with("oracle_equivalence"))
        {
            summary.oracle_comparisons += 1;
        }
        for c in checks.into_iter().filter(|c| !c.check.passed) {
            summary.failures.push(Failure {
                sequence: name.clone(),
                suite: c.suite,
                identity: c.check.identity,
                detail: c.check.detail,
            });
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let summary = validate_sweep(&SweepOptions::new(6));
        assert!(summary.passed(), "{:#?}", summary.failures);
        assert!(summary.oracle_comparisons > 0);
    }

    #[test]
    fn every_mutation_is_caught_by_its_identity() {
        for mutation in Mutation::ALL {
            let mut options = SweepOptions::new(6);
            options.mutation = mutation;
            let summary = validate_sweep(&options);
            assert!(
                summary
                    .failures
                    .iter()
                    .any(|f| f.identity == mutation.expected_failure()),
                "{mutation}: {:?}",
                summary.failures.first()
            );
        }
    }
}
