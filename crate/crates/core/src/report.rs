//! The full invariant report for one sequence, with JSON, text and DOT
//! renderings.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::chern::{
    closed_form_multiplicities, index_from_tip_fraction, solve_adjunction, tip_fraction_gcd,
    tip_multiplicity,
};
use crate::deform::{deformation_report, moduli_explanation, DeformationReport, ModulusTag};
use crate::error::{Error, Result};
use crate::forms::{dloussky_matrix, Quad};
use crate::germ::{germ_invariants, GermInvariants};
use crate::graph::{build_dual_graph, decompose, node_aliases, to_dot_labeled, RoleReport};
use crate::rational::{json_int, json_int_opt, Rational};
use crate::sequence::{Block, DlousskySequence, SurfaceClass};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceInfo {
    pub symbolic: String,
    pub expanded: Vec<u32>,
    pub blocks: Vec<Block>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixInfo {
    #[serde(with = "json_int")]
    pub p: BigInt,
    #[serde(with = "json_int")]
    pub q: BigInt,
    #[serde(with = "json_int")]
    pub r: BigInt,
    #[serde(with = "json_int")]
    pub s: BigInt,
    /// `(p_j, q_j; r_j, s_j)` for `j = 1 … N`.
    pub partials: Vec<Quad>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicities {
    /// `None` when the adjunction system has no solution to report.
    pub values: Option<Vec<Rational>>,
    /// Why `values` is missing.
    pub unavailable: Option<String>,
    /// Whether the closed forms were evaluated and agree with the solver.
    pub closed_form_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub self_intersections: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
    pub degrees: Vec<usize>,
    pub self_loops: Vec<usize>,
    pub roles: RoleReport,
    pub aliases: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub sequence: SequenceInfo,
    pub class: SurfaceClass,
    pub b2: u64,
    pub dloussky_number: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub l_total: u64,
    pub matrix: Option<MatrixInfo>,
    #[serde(with = "json_int_opt")]
    pub k_invariant: Option<BigInt>,
    pub multiplicities: Multiplicities,
    pub tip: Option<Rational>,
    #[serde(with = "json_int_opt")]
    pub index: Option<BigInt>,
    /// `gcd(p+q-1+l, r+s-1)`, reported beside the index.
    #[serde(with = "json_int_opt")]
    pub tip_fraction_gcd: Option<BigInt>,
    pub slopes: Option<Vec<Rational>>,
    pub germ: Option<GermInvariants>,
    pub deformation: DeformationReport,
    pub moduli: Vec<ModulusTag>,
    pub graph: GraphSummary,
}

pub fn build_report(seq: &DlousskySequence, epsilon: u8) -> Result<InvariantReport> {
    let graph = build_dual_graph(seq);
    let roles = decompose(&graph)?;
    let class = seq.classify();
    let simple = seq.simple_parts();

    let matrix = match &simple {
        Some((ks, _)) => Some(dloussky_matrix(ks)?),
        None => None,
    };

    let oracle = solve_adjunction(&graph);
    let closed = if seq.is_simple() && !graph.has_self_loop() {
        Some(closed_form_multiplicities(seq)?)
    } else {
        None
    };
    let multiplicities = match &oracle {
        Ok(m) => Multiplicities {
            values: Some(m.values.clone()),
            unavailable: None,
            closed_form_agrees: closed.as_ref().map(|c| c.values == m.values),
        },
        Err(e) => Multiplicities {
            values: None,
            unavailable: Some(match e {
                Error::SingularSystem { .. } => "n/a (homologically trivial cycle)".to_string(),
                Error::SelfLoopUnsupported { .. } => {
                    "n/a (nodal curve; no adjunction convention)".to_string()
                }
                other => format!("n/a ({other})"),
            }),
            closed_form_agrees: None,
        },
    };

    let (tip, index, gcd) = if simple.is_some() {
        (
            Some(tip_multiplicity(seq)?),
            Some(index_from_tip_fraction(seq)?),
            Some(tip_fraction_gcd(seq)?),
        )
    } else {
        match &oracle {
            Ok(m) if matches!(class, SurfaceClass::Intermediate { .. }) => {
                (Some(m.tip.clone()), Some(m.index.clone()), None)
            }
            Ok(m) => (None, Some(m.index.clone()), None),
            Err(_) => (None, None, None),
        }
    };

    let aliases = node_aliases(seq, &graph);
    Ok(InvariantReport {
        sequence: SequenceInfo {
            symbolic: seq.symbolic(),
            expanded: seq.entries().to_vec(),
            blocks: seq.blocks().to_vec(),
        },
        class,
        b2: seq.b2() as u64,
        dloussky_number: seq.dloussky_number(),
        n: seq.black_count() as u64,
        l_total: seq.regular_total() as u64,
        k_invariant: matrix.as_ref().map(|m| m.k_invariant()),
        matrix: matrix.map(|m| MatrixInfo {
            p: m.p().clone(),
            q: m.q().clone(),
            r: m.r().clone(),
            s: m.s().clone(),
            partials: m.partials().to_vec(),
        }),
        multiplicities,
        tip,
        index,
        tip_fraction_gcd: gcd,
        slopes: closed.map(|c| c.slopes),
        germ: if simple.is_some() {
            Some(germ_invariants(seq)?)
        } else {
            None
        },
        deformation: deformation_report(seq, epsilon)?,
        moduli: moduli_explanation(seq),
        graph: GraphSummary {
            self_intersections: graph.self_intersections(),
            edges: graph.edges().to_vec(),
            degrees: graph.degrees().to_vec(),
            self_loops: graph.self_loops(),
            roles,
            aliases,
        },
    })
}

pub fn to_json(report: &InvariantReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn to_dot(seq: &DlousskySequence) -> String {
    let graph = build_dual_graph(seq);
    let aliases = node_aliases(seq, &graph);
    to_dot_labeled(&graph, aliases.as_deref())
}

/// Integers without the `/1`.
fn q(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        value.to_string()
    }
}

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(", ")
}

pub fn to_text(report: &InvariantReport) -> String {
    let mut out = String::new();
    let expanded = join(&report.sequence.expanded, |e| e.to_string());
    let _ = writeln!(
        out,
        "sequence        {}  ({expanded})",
        report.sequence.symbolic
    );
    let _ = writeln!(out, "class           {}", report.class);
    let _ = writeln!(out, "b2              {}", report.b2);
    let _ = writeln!(
        out,
        "dl              {}  (2b = {}, 3b = {})",
        report.dloussky_number,
        2 * report.b2,
        3 * report.b2
    );
    let _ = writeln!(out, "N, l            {}, {}", report.n, report.l_total);
    if let (Some(m), Some(k)) = (&report.matrix, &report.k_invariant) {
        let _ = writeln!(
            out,
            "(p,q;r,s)       ({},{};{},{})  k(S) = r+s = {k}",
            m.p, m.q, m.r, m.s
        );
    }
    match (
        &report.multiplicities.values,
        &report.multiplicities.unavailable,
    ) {
        (Some(values), _) => {
            let names: Vec<String> = match &report.graph.aliases {
                Some(a) => a.clone(),
                None => (0..values.len()).map(|i| format!("D_{i}")).collect(),
            };
            let pairs: Vec<String> = names
                .iter()
                .zip(values)
                .map(|(n, v)| format!("{n} = {}", q(v)))
                .collect();
            let _ = writeln!(out, "multiplicities  {}", pairs.join(", "));
            if let Some(agree) = report.multiplicities.closed_form_agrees {
                let _ = writeln!(
                    out,
                    "closed forms    {}",
                    if agree {
                        "agree with the exact solve"
                    } else {
                        "DISAGREE with the exact solve"
                    }
                );
            }
        }
        (None, Some(reason)) => {
            let _ = writeln!(out, "multiplicities  {reason}");
        }
        (None, None) => {}
    }
    if let Some(t) = &report.tip {
        let _ = writeln!(out, "tip t           {}", q(t));
    }
    if let Some(slopes) = &report.slopes {
        let _ = writeln!(out, "slopes g_1..    {}", join(slopes, q));
    }
    if let Some(index) = &report.index {
        match &report.tip_fraction_gcd {
            Some(g) => {
                let _ = writeln!(out, "index           {index}  (gcd(p+q-1+l, r+s-1) = {g})");
            }
            None => {
                let _ = writeln!(out, "index           {index}");
            }
        }
    }
    if let Some(g) = &report.germ {
        let _ = writeln!(
            out,
            "germ            d = {}, K = {}, u = {}, v = {}",
            g.d,
            g.k,
            q(&g.u),
            q(&g.v)
        );
    }
    let d = &report.deformation;
    let _ = writeln!(
        out,
        "deformations    eps = {}, eta = {}: h1(log) = {}, h1(Theta(-D)) = {}, h1(N_D) = {}, chi(Theta) = {}{}",
        d.epsilon,
        d.eta,
        d.h1_log,
        d.h1_theta_minus_d,
        d.h1_normal,
        d.chi_tangent,
        if d.via_double_cover { "  [via double cover]" } else { "" }
    );
    let moduli = report
        .moduli
        .iter()
        .filter(|t| **t == ModulusTag::OneModulus)
        .count();
    let _ = writeln!(
        out,
        "moduli          {moduli} ({})",
        join(&report.moduli, |t| t.to_string())
    );
    let roles = &report.graph.roles;
    let _ = writeln!(
        out,
        "graph           cycles {:?}, tips {:?}, roots {:?}, black {} ({} on cycles)",
        roles.cycles, roles.tips, roles.roots, roles.black_count, roles.black_on_cycle
    );
    if !report.graph.self_loops.is_empty() {
        let _ = writeln!(out, "self-loops      {:?}", report.graph.self_loops);
    }
    out
}

/// One line of the enumeration table. Simple-only columns stay empty for
/// other classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationRow {
    pub sequence: String,
    pub expanded: String,
    pub class: String,
    pub b2: u64,
    pub dloussky_number: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub l_total: u64,
    #[serde(with = "json_int_opt")]
    pub p: Option<BigInt>,
    #[serde(with = "json_int_opt")]
    pub q: Option<BigInt>,
    #[serde(with = "json_int_opt")]
    pub r: Option<BigInt>,
    #[serde(with = "json_int_opt")]
    pub s: Option<BigInt>,
    pub tip: Option<Rational>,
    #[serde(with = "json_int_opt")]
    pub index: Option<BigInt>,
    #[serde(with = "json_int_opt")]
    pub d: Option<BigInt>,
    #[serde(rename = "K", with = "json_int_opt")]
    pub k: Option<BigInt>,
    pub u: Option<Rational>,
    pub v: Option<Rational>,
}

pub fn enumeration_row(seq: &DlousskySequence) -> Result<EnumerationRow> {
    let mut row = EnumerationRow {
        sequence: seq.symbolic(),
        expanded: seq.expanded(),
        class: seq.classify().to_string(),
        b2: seq.b2() as u64,
        dloussky_number: seq.dloussky_number(),
        n: seq.black_count() as u64,
        l_total: seq.regular_total() as u64,
        p: None,
        q: None,
        r: None,
        s: None,
        tip: None,
        index: None,
        d: None,
        k: None,
        u: None,
        v: None,
    };
    if let Some((ks, _)) = seq.simple_parts() {
        let m = dloussky_matrix(&ks)?;
        let g = germ_invariants(seq)?;
        row.p = Some(m.p().clone());
        row.q = Some(m.q().clone());
        row.r = Some(m.r().clone());
        row.s = Some(m.s().clone());
        row.tip = Some(tip_multiplicity(seq)?);
        row.index = Some(index_from_tip_fraction(seq)?);
        row.d = Some(g.d);
        row.k = Some(g.k);
        row.u = Some(g.u);
        row.v = Some(g.v);
    } else if let Ok(m) = solve_adjunction(&build_dual_graph(seq)) {
        if matches!(seq.classify(), SurfaceClass::Intermediate { .. }) {
            row.tip = Some(m.tip);
        }
        row.index = Some(m.index);
    }
    Ok(row)
}
