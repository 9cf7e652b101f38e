//! Dual graph of the rational curves.
//!
//! Node `i` is the curve at position `i` of the canonical expanded sequence.
//! An entry with value `a` at position `i` meets the entry at
//! `(i + a - 1) mod b2`, which makes the graph the symmetrization of a
//! functional graph: every component has exactly one cycle (possibly a
//! double edge or a self-loop) with chains hanging off it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::sequence::DlousskySequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Placement {
    Cycle,
    Tree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRole {
    pub color: Color,
    pub placement: Placement,
    pub tip: bool,
    pub root: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    /// `-D_i²` per node.
    weights: Vec<u32>,
    successor: Vec<usize>,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
    roles: Vec<NodeRole>,
}

pub fn build_dual_graph(seq: &DlousskySequence) -> DualGraph {
    let weights = seq.entries().to_vec();
    let b = weights.len();
    let successor: Vec<usize> = weights
        .iter()
        .enumerate()
        .map(|(i, &a)| (i + a as usize - 1) % b)
        .collect();
    let edges: Vec<(usize, usize)> = successor.iter().enumerate().map(|(i, &j)| (i, j)).collect();
    let mut degrees = vec![0; b];
    for &(i, j) in &edges {
        degrees[i] += 1;
        degrees[j] += 1;
    }

    // Iterating the successor map b times lands every node on a cycle;
    // cycle nodes are exactly the ones revisited from there.
    let mut on_cycle = vec![false; b];
    for start in 0..b {
        let mut x = start;
        for _ in 0..b {
            x = successor[x];
        }
        on_cycle[x] = true;
    }
    let mut has_tree_pred = vec![false; b];
    for i in 0..b {
        if !on_cycle[i] {
            has_tree_pred[successor[i]] = true;
        }
    }
    let roles = (0..b)
        .map(|i| NodeRole {
            color: if weights[i] > 2 {
                Color::Black
            } else {
                Color::White
            },
            placement: if on_cycle[i] {
                Placement::Cycle
            } else {
                Placement::Tree
            },
            tip: !on_cycle[i] && degrees[i] == 1,
            root: on_cycle[i] && has_tree_pred[i],
        })
        .collect();

    DualGraph {
        weights,
        successor,
        edges,
        degrees,
        roles,
    }
}

impl DualGraph {
    pub fn node_count(&self) -> usize {
        self.weights.len()
    }

    pub fn self_intersection(&self, node: usize) -> i64 {
        -i64::from(self.weights[node])
    }

    pub fn self_intersections(&self) -> Vec<i64> {
        self.weights.iter().map(|&w| -i64::from(w)).collect()
    }

    /// Edges as `(i, successor(i))`, one per node, in node order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn successor(&self, node: usize) -> usize {
        self.successor[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.degrees[node]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn roles(&self) -> &[NodeRole] {
        &self.roles
    }

    pub fn role(&self, node: usize) -> NodeRole {
        self.roles[node]
    }

    pub fn self_loops(&self) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|(i, j)| i == j)
            .map(|&(i, _)| i)
            .collect()
    }

    pub fn has_self_loop(&self) -> bool {
        self.edges.iter().any(|(i, j)| i == j)
    }

    /// Number of edges between `i` and `j` (loops count once).
    pub fn edge_multiplicity(&self, i: usize, j: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| (a, b) == (i, j) || (a, b) == (j, i))
            .count()
    }

    /// Neighbors of `node` with multiplicity, a loop listing `node` once.
    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == node {
                out.push(b);
            } else if b == node {
                out.push(a);
            }
        }
        out
    }

    pub fn tips(&self) -> Vec<usize> {
        (0..self.node_count())
            .filter(|&i| self.roles[i].tip)
            .collect()
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.node_count())
            .filter(|&i| self.roles[i].root)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeReport {
    /// Tree nodes from the tip towards the root, root excluded.
    pub nodes: Vec<usize>,
    pub root: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleReport {
    /// Each cycle in successor order, starting from its smallest node.
    pub cycles: Vec<Vec<usize>>,
    pub trees: Vec<TreeReport>,
    pub tips: Vec<usize>,
    pub roots: Vec<usize>,
    pub black_count: usize,
    pub white_count: usize,
    pub black_on_cycle: usize,
    pub black_on_trees: usize,
}

pub fn decompose(graph: &DualGraph) -> Result<RoleReport> {
    let b = graph.node_count();
    if graph.edges.len() != b {
        return Err(Error::MalformedGraph(format!(
            "{} edges on {} nodes",
            graph.edges.len(),
            b
        )));
    }
    let on_cycle = |i: usize| graph.roles[i].placement == Placement::Cycle;

    let mut cycles = Vec::new();
    let mut seen = vec![false; b];
    for start in 0..b {
        if !on_cycle(start) || seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = graph.successor[start];
        while x != start {
            if seen[x] || !on_cycle(x) {
                return Err(Error::MalformedGraph(format!(
                    "cycle through {start} is broken"
                )));
            }
            seen[x] = true;
            cycle.push(x);
            x = graph.successor[x];
        }
        cycles.push(cycle);
    }

    // Group tree nodes by the tree node that touches the cycle.
    let mut groups: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    let mut roots_of: BTreeMap<usize, usize> = BTreeMap::new();
    for i in (0..b).filter(|&i| !on_cycle(i)) {
        let mut x = i;
        let mut depth = 0;
        while !on_cycle(graph.successor[x]) {
            x = graph.successor[x];
            depth += 1;
            if depth > b {
                return Err(Error::MalformedGraph("tree walk does not terminate".into()));
            }
        }
        roots_of.insert(x, graph.successor[x]);
        groups.entry(x).or_default().push((depth, i));
    }
    let mut trees: Vec<TreeReport> = groups
        .into_iter()
        .map(|(attach, mut members)| {
            members.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            TreeReport {
                nodes: members.into_iter().map(|(_, i)| i).collect(),
                root: roots_of[&attach],
            }
        })
        .collect();
    trees.sort_by_key(|t| t.nodes[0]);

    let black = |i: &usize| graph.roles[*i].color == Color::Black;
    let black_count = (0..b).filter(black).count();
    let black_on_cycle = (0..b).filter(|&i| on_cycle(i)).filter(black).count();
    Ok(RoleReport {
        cycles,
        trees,
        tips: graph.tips(),
        roots: graph.roots(),
        black_count,
        white_count: b - black_count,
        black_on_cycle,
        black_on_trees: black_count - black_on_cycle,
    })
}

/// Symmetric integer intersection matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Principal submatrix on `nodes`, in the given order.
    pub fn principal(&self, nodes: &[usize]) -> Vec<Vec<i64>> {
        nodes
            .iter()
            .map(|&i| nodes.iter().map(|&j| self.rows[i][j]).collect())
            .collect()
    }
}

pub fn intersection_matrix(graph: &DualGraph) -> Result<IntersectionMatrix> {
    if let Some(&node) = graph.self_loops().first() {
        return Err(Error::SelfLoopUnsupported { node });
    }
    Ok(IntersectionMatrix {
        rows: loop_free_rows(graph, &(0..graph.node_count()).collect::<Vec<_>>()),
    })
}

fn loop_free_rows(graph: &DualGraph, nodes: &[usize]) -> Vec<Vec<i64>> {
    nodes
        .iter()
        .map(|&i| {
            nodes
                .iter()
                .map(|&j| {
                    if i == j {
                        graph.self_intersection(i)
                    } else {
                        graph.edge_multiplicity(i, j) as i64
                    }
                })
                .collect()
        })
        .collect()
}

fn unique_tree(graph: &DualGraph) -> Result<TreeReport> {
    let report = decompose(graph)?;
    if report.cycles.len() != 1 || report.trees.len() != 1 {
        return Err(Error::NotSimple {
            sequence: format!("{:?}", graph.weights),
            class: format!(
                "{} cycles, {} trees",
                report.cycles.len(),
                report.trees.len()
            ),
        });
    }
    Ok(report.trees.into_iter().next().expect("one tree"))
}

/// Determinant of the intersection matrix restricted to the nodes of the
/// unique tree (root excluded). Tree nodes never carry loops, so the
/// nodal family is accepted.
pub fn tree_determinant(graph: &DualGraph) -> Result<BigInt> {
    let tree = unique_tree(graph)?;
    let rows: Vec<Vec<BigInt>> = loop_free_rows(graph, &tree.nodes)
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    Ok(linalg::determinant(&rows))
}

/// `det(-M_T)` for the tree block `M_T`: the sign-normalized tree
/// determinant, positive because `M_T` is negative definite.
pub fn tree_k_invariant(graph: &DualGraph) -> Result<BigInt> {
    let size = unique_tree(graph)?.nodes.len();
    let det = tree_determinant(graph)?;
    Ok(if size % 2 == 0 { det } else { -det })
}

/// Display names for a simple intermediate sequence: `C_0` is the first
/// entry, the regular block reads `R_1 … R_l` with `R_2` the root (for
/// `l ≥ 2`), remaining tree nodes are `A_1, A_2, …` from the tip and
/// remaining cycle nodes `C_1, C_2, …` following the cycle from `C_0`.
pub fn node_aliases(seq: &DlousskySequence, graph: &DualGraph) -> Option<Vec<String>> {
    let (_, l) = seq.simple_parts()?;
    let report = decompose(graph).ok()?;
    let tree = report.trees.first()?;
    let b = seq.b2();
    let l = l as usize;
    let mut names: Vec<Option<String>> = vec![None; b];
    names[0] = Some("C_0".to_string());
    names[tree.nodes[0]] = Some("A_1".to_string());
    for i in 0..l {
        let node = b - l + i;
        if names[node].is_none() {
            names[node] = Some(format!("R_{}", i + 1));
        }
    }
    let mut next_a = 2;
    for &node in tree.nodes.iter().skip(1) {
        if names[node].is_none() {
            names[node] = Some(format!("A_{next_a}"));
            next_a += 1;
        }
    }
    let mut next_c = 1;
    let mut x = graph.successor(0);
    while x != 0 && graph.role(x).placement == Placement::Cycle {
        if names[x].is_none() {
            names[x] = Some(format!("C_{next_c}"));
            next_c += 1;
        }
        x = graph.successor(x);
    }
    names.into_iter().collect()
}

pub fn to_dot(graph: &DualGraph) -> String {
    to_dot_labeled(graph, None)
}

/// DOT rendering; black nodes are filled and every node is labeled with
/// `-D_i²`. Aliases, when given, go into `xlabel`.
pub fn to_dot_labeled(graph: &DualGraph, aliases: Option<&[String]>) -> String {
    let mut out = String::from("graph dual {\n  node [shape=circle];\n");
    for i in 0..graph.node_count() {
        let mut attrs = format!("label=\"{}\"", graph.weights[i]);
        if graph.roles[i].color == Color::Black {
            attrs.push_str(", style=filled, fillcolor=black, fontcolor=white");
        }
        if let Some(name) = aliases.and_then(|a| a.get(i)) {
            let _ = write!(attrs, ", xlabel=\"{name}\"");
        }
        let _ = writeln!(out, "  n{i} [{attrs}];");
    }
    for &(i, j) in &graph.edges {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let _ = writeln!(out, "  n{a} -- n{b};");
    }
    out.push_str("}\n");
    out
}
