//! The dominance graph of weighted projective lines with positive Euler
//! characteristic: an arrow `X → Y` labelled `G` when `Y ≅ X/G`.
//!
//! Edges are not discovered by searching group actions; they come from the
//! rule table in [`rule_label`], one rule per family of arrows in the figure,
//! and every edge is then checked against Riemann–Hurwitz.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::curve::{euler_characteristic, WeightedCurve};
use crate::rational::ExactRational;

/// Isomorphism type of a polyhedral group, as written on an arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GroupLabel {
    Cyclic(u64),
    Dihedral(u64),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl GroupLabel {
    pub fn order(self) -> u64 {
        match self {
            GroupLabel::Cyclic(n) => n,
            GroupLabel::Dihedral(n) => 2 * n,
            GroupLabel::Tetrahedral => 12,
            GroupLabel::Octahedral => 24,
            GroupLabel::Icosahedral => 60,
        }
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::Cyclic(n) => write!(f, "C{n}"),
            GroupLabel::Dihedral(n) => write!(f, "D{n}"),
            GroupLabel::Tetrahedral => f.write_str("A4"),
            GroupLabel::Octahedral => f.write_str("S4"),
            GroupLabel::Icosahedral => f.write_str("A5"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceNode {
    pub curve: WeightedCurve,
    pub chi: ExactRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceEdge {
    pub source: usize,
    pub target: usize,
    pub group: GroupLabel,
    pub order: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceGraph {
    pub nodes: Vec<DominanceNode>,
    pub edges: Vec<DominanceEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// `χ(target) ≠ χ(source)/|G|`.
    ChiMismatch {
        source: String,
        target: String,
        group: String,
        expected: ExactRational,
        found: ExactRational,
    },
    /// The recorded order is not the order of the labelled group.
    OrderMismatch {
        source: String,
        target: String,
        group: String,
        order: u64,
    },
    /// Nodes lying on a directed cycle.
    Cycle { nodes: Vec<String> },
    /// A two-point line `<p,q>` with `p ≠ q`, or a node of nonpositive χ.
    ExcludedNode { node: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ChiMismatch {
                source,
                target,
                group,
                expected,
                found,
            } => write!(
                f,
                "{source} -> {target} by {group}: expected chi {expected}, target has {found}"
            ),
            Violation::OrderMismatch {
                source,
                target,
                group,
                order,
            } => write!(f, "{source} -> {target}: {group} does not have order {order}"),
            Violation::Cycle { nodes } => write!(f, "cycle through {}", nodes.join(", ")),
            Violation::ExcludedNode { node } => write!(f, "{node} does not belong in the graph"),
        }
    }
}

fn sort_key(n: &DominanceNode) -> (std::cmp::Reverse<ExactRational>, Vec<u64>) {
    (std::cmp::Reverse(n.chi.clone()), n.curve.weights().to_vec())
}

impl DominanceGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index of `curve`, inserting it if absent.
    pub fn add_node(&mut self, curve: WeightedCurve) -> usize {
        if let Some(i) = self.index_of(&curve) {
            return i;
        }
        let chi = euler_characteristic(&curve);
        self.nodes.push(DominanceNode { curve, chi });
        self.nodes.len() - 1
    }

    pub fn add_edge(&mut self, source: WeightedCurve, target: WeightedCurve, group: GroupLabel) {
        let source = self.add_node(source);
        let target = self.add_node(target);
        self.edges.push(DominanceEdge {
            source,
            target,
            group,
            order: group.order(),
        });
    }

    pub fn index_of(&self, curve: &WeightedCurve) -> Option<usize> {
        self.nodes.iter().position(|n| &n.curve == curve)
    }

    pub fn out_degree(&self, curve: &WeightedCurve) -> usize {
        self.index_of(curve)
            .map_or(0, |i| self.edges.iter().filter(|e| e.source == i).count())
    }

    /// Nodes no rule maps anywhere, whatever the bounds.
    pub fn terminal_nodes(&self) -> Vec<&WeightedCurve> {
        self.nodes
            .iter()
            .map(|n| &n.curve)
            .filter(|c| !has_quotient(c))
            .collect()
    }

    /// Reorders nodes by decreasing χ, then weights, and edges by endpoints.
    fn canonicalize(&mut self) {
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by_key(|&i| sort_key(&self.nodes[i]));
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        self.nodes = order.iter().map(|&i| self.nodes[i].clone()).collect();
        for e in &mut self.edges {
            e.source = new_index[e.source];
            e.target = new_index[e.target];
        }
        self.edges
            .sort_by_key(|a| (a.source, a.target, a.group));
        self.edges.dedup();
    }
}

/// The arrow from `source` to `target`, if the figure has one.
pub fn rule_label(source: &WeightedCurve, target: &WeightedCurve) -> Option<GroupLabel> {
    if source.genus() != 0 || target.genus() != 0 {
        return None;
    }
    match (source.weights(), target.weights()) {
        // P¹ → P¹/C_m = <m,m>, rotations about an axis.
        ([], &[m, m2]) if m == m2 => Some(GroupLabel::Cyclic(m)),
        // P¹ → P¹/D_m = <2,2,m>.
        ([], &[2, 2, m]) => Some(GroupLabel::Dihedral(m)),
        // The three platonic quotients of P¹.
        ([], [2, 3, 3]) => Some(GroupLabel::Tetrahedral),
        ([], [2, 3, 4]) => Some(GroupLabel::Octahedral),
        ([], [2, 3, 5]) => Some(GroupLabel::Icosahedral),
        // <m,m> → <km,km>: rotations of order k fixing both weighted points.
        (&[m, m2], &[km, km2]) if m == m2 && km == km2 && km > m && km % m == 0 => {
            Some(GroupLabel::Cyclic(km / m))
        }
        // <m,m> → <2,2,m>: the involution swapping the two weighted points.
        (&[m, m2], &[2, 2, m3]) if m == m2 && m == m3 => Some(GroupLabel::Cyclic(2)),
        // <2,2,m> → <2,2,2m>: the dihedral ladder.
        (&[2, 2, m], &[2, 2, m2]) if m2 == 2 * m => Some(GroupLabel::Cyclic(2)),
        // <2,2,2> → <2,3,3> and <2,3,4>.
        ([2, 2, 2], [2, 3, 3]) => Some(GroupLabel::Cyclic(3)),
        ([2, 2, 2], [2, 3, 4]) => Some(GroupLabel::Dihedral(3)),
        // <2,3,3> → <2,3,4>.
        ([2, 3, 3], [2, 3, 4]) => Some(GroupLabel::Cyclic(2)),
        _ => None,
    }
}

/// Whether some rule has `curve` as its source (over all possible targets).
fn has_quotient(curve: &WeightedCurve) -> bool {
    if curve.genus() != 0 {
        return false;
    }
    match curve.weights() {
        [] => true,
        [m, m2] => m == m2,
        [2, 2, _] => true,
        [2, 3, 3] => true,
        _ => false,
    }
}

fn node_family(n_max: u64, a_max: u64) -> BTreeSet<Vec<u64>> {
    let mut ws: BTreeSet<Vec<u64>> = BTreeSet::new();
    ws.insert(vec![]);
    for n in 2..=n_max {
        ws.insert(vec![n, n]);
        for a in 2..=a_max {
            ws.insert(vec![a * n, a * n]);
        }
        for m in [n, 2 * n, 4 * n] {
            ws.insert(vec![2, 2, m]);
        }
    }
    for w in [[2, 3, 3], [2, 3, 4], [2, 3, 5]] {
        ws.insert(w.to_vec());
    }
    ws
}

/// The graph on `P¹`, `<n,n>`, `<an,an>`, `<2,2,n>`, `<2,2,2n>`, `<2,2,4n>`
/// (`2 ≤ n ≤ n_max`, `2 ≤ a ≤ a_max`) and the three platonic quotients, with
/// every arrow of the rule table between two of its nodes.
pub fn build_positive_dominance(n_max: u64, a_max: u64) -> DominanceGraph {
    let mut g = DominanceGraph::new();
    let curves: Vec<WeightedCurve> = node_family(n_max, a_max)
        .into_iter()
        .map(|w| WeightedCurve::line(w).expect("weights are at least 2"))
        .collect();
    for c in &curves {
        g.add_node(c.clone());
    }
    for s in &curves {
        for t in &curves {
            if let Some(label) = rule_label(s, t) {
                g.add_edge(s.clone(), t.clone(), label);
            }
        }
    }
    g.canonicalize();
    g
}

/// All Riemann–Hurwitz, labelling and acyclicity violations; empty for a valid graph.
pub fn validate(graph: &DominanceGraph) -> Vec<Violation> {
    let name = |i: usize| graph.nodes[i].curve.to_string();
    let mut out = Vec::new();
    for node in &graph.nodes {
        let w = node.curve.weights();
        if (w.len() == 2 && w[0] != w[1]) || w.len() == 1 || !node.chi.is_positive() {
            out.push(Violation::ExcludedNode {
                node: node.curve.to_string(),
            });
        }
    }
    for e in &graph.edges {
        if e.order != e.group.order() {
            out.push(Violation::OrderMismatch {
                source: name(e.source),
                target: name(e.target),
                group: e.group.to_string(),
                order: e.order,
            });
        }
        let expected = graph.nodes[e.source].chi.clone() / ExactRational::from(e.order);
        let found = graph.nodes[e.target].chi.clone();
        if expected != found {
            out.push(Violation::ChiMismatch {
                source: name(e.source),
                target: name(e.target),
                group: e.group.to_string(),
                expected,
                found,
            });
        }
    }
    // Kahn's algorithm; whatever cannot be peeled off lies on or behind a cycle.
    let mut indegree = vec![0usize; graph.nodes.len()];
    for e in &graph.edges {
        indegree[e.target] += 1;
    }
    let mut ready: Vec<usize> = (0..graph.nodes.len()).filter(|&i| indegree[i] == 0).collect();
    let mut removed = vec![false; graph.nodes.len()];
    while let Some(i) = ready.pop() {
        removed[i] = true;
        for e in graph.edges.iter().filter(|e| e.source == i) {
            indegree[e.target] -= 1;
            if indegree[e.target] == 0 {
                ready.push(e.target);
            }
        }
    }
    if removed.iter().any(|r| !r) {
        out.push(Violation::Cycle {
            nodes: (0..graph.nodes.len()).filter(|&i| !removed[i]).map(name).collect(),
        });
    }
    out
}

/// Graphviz rendering. Nodes by decreasing χ then weights, edges by endpoints.
pub fn emit_dot(graph: &DominanceGraph) -> String {
    let mut order: Vec<usize> = (0..graph.nodes.len()).collect();
    order.sort_by_key(|&i| sort_key(&graph.nodes[i]));
    let mut rank = vec![0; order.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let name = |i: usize| graph.nodes[i].curve.to_string();
    let mut out = String::from("digraph dominance {\n");
    for &i in &order {
        let _ = writeln!(out, "  \"{0}\" [label=\"{0}\"];", name(i));
    }
    let mut edges: BTreeMap<(usize, usize, GroupLabel), &DominanceEdge> = BTreeMap::new();
    for e in &graph.edges {
        edges.insert((rank[e.source], rank[e.target], e.group), e);
    }
    for e in edges.values() {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"G={},|G|={}\"];",
            name(e.source),
            name(e.target),
            e.group,
            e.order
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(w: &[u64]) -> WeightedCurve {
        WeightedCurve::line(w.iter().copied()).unwrap()
    }

    #[test]
    fn valid_for_a_range_of_bounds() {
        for n in 3..=12 {
            for a in 1..=6 {
                let g = build_positive_dominance(n, a);
                assert_eq!(validate(&g), vec![], "n_max={n} a_max={a}");
            }
        }
    }

    #[test]
    fn figure_arrows_present() {
        let g = build_positive_dominance(6, 3);
        let has = |s: &[u64], t: &[u64], label: GroupLabel| {
            let (s, t) = (g.index_of(&line(s)).unwrap(), g.index_of(&line(t)).unwrap());
            g.edges.iter().any(|e| e.source == s && e.target == t && e.group == label)
        };
        assert!(has(&[], &[2, 2], GroupLabel::Cyclic(2)));
        assert!(has(&[2, 2], &[2, 2, 2], GroupLabel::Cyclic(2)));
        assert!(has(&[], &[2, 2, 2], GroupLabel::Dihedral(2)));
        assert!(has(&[], &[5, 5], GroupLabel::Cyclic(5)));
        assert!(has(&[5, 5], &[2, 2, 5], GroupLabel::Cyclic(2)));
        assert!(has(&[], &[2, 2, 5], GroupLabel::Dihedral(5)));
        assert!(has(&[2, 2, 5], &[2, 2, 10], GroupLabel::Cyclic(2)));
        assert!(has(&[], &[2, 2, 10], GroupLabel::Dihedral(10)));
        assert!(has(&[2, 2, 10], &[2, 2, 20], GroupLabel::Cyclic(2)));
        assert!(has(&[], &[2, 2, 20], GroupLabel::Dihedral(20)));
        assert!(has(&[4, 4], &[12, 12], GroupLabel::Cyclic(3)));
        assert!(has(&[2, 2, 2], &[2, 3, 3], GroupLabel::Cyclic(3)));
        assert!(has(&[2, 2, 2], &[2, 3, 4], GroupLabel::Dihedral(3)));
        assert!(has(&[2, 3, 3], &[2, 3, 4], GroupLabel::Cyclic(2)));
        assert!(has(&[], &[2, 3, 3], GroupLabel::Tetrahedral));
        assert!(has(&[], &[2, 3, 4], GroupLabel::Octahedral));
        assert!(has(&[], &[2, 3, 5], GroupLabel::Icosahedral));
    }

    #[test]
    fn node_values() {
        let g = build_positive_dominance(6, 3);
        let chi = |w: &[u64]| g.nodes[g.index_of(&line(w)).unwrap()].chi.clone();
        assert_eq!(chi(&[2, 3, 3]), ExactRational::new(1, 6).unwrap());
        assert_eq!(chi(&[5, 5]), ExactRational::new(2, 5).unwrap());
        assert_eq!(g.out_degree(&line(&[2, 3, 5])), 0);
        assert_eq!(g.out_degree(&line(&[2, 3, 4])), 0);
        let terminal: Vec<String> = g.terminal_nodes().iter().map(|c| c.to_string()).collect();
        assert_eq!(terminal, vec!["<2,3,4>", "<2,3,5>"]);
        assert!(g
            .nodes
            .iter()
            .all(|n| n.curve.weights().len() != 2 || n.curve.weights()[0] == n.curve.weights()[1]));
    }

    #[test]
    fn fabricated_edge_is_caught() {
        let mut g = build_positive_dominance(4, 2);
        g.add_edge(WeightedCurve::projective_line(), line(&[3, 3]), GroupLabel::Cyclic(2));
        let v = validate(&g);
        assert_eq!(v.len(), 1);
        assert!(matches!(&v[0], Violation::ChiMismatch { .. }));
        assert_eq!(v[0].to_string(), "P1 -> <3,3> by C2: expected chi 1, target has 2/3");
    }

    #[test]
    fn cycles_are_caught() {
        let mut g = DominanceGraph::new();
        g.add_edge(line(&[2, 2]), line(&[4, 4]), GroupLabel::Cyclic(2));
        g.add_edge(line(&[4, 4]), line(&[2, 2]), GroupLabel::Cyclic(2));
        let v = validate(&g);
        assert!(v.iter().any(|x| matches!(x, Violation::Cycle { nodes } if nodes.len() == 2)));
    }

    #[test]
    fn excluded_and_order_mismatch() {
        let mut g = DominanceGraph::new();
        g.add_node(line(&[2, 3]));
        g.add_edge(WeightedCurve::projective_line(), line(&[2, 2]), GroupLabel::Cyclic(2));
        g.edges[0].order = 3;
        let v = validate(&g);
        assert!(v.iter().any(|x| matches!(x, Violation::ExcludedNode { .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::OrderMismatch { .. })));
    }

    #[test]
    fn dot_output() {
        assert_eq!(emit_dot(&DominanceGraph::new()), "digraph dominance {\n}\n");
        let mut g = DominanceGraph::new();
        g.add_edge(WeightedCurve::projective_line(), line(&[3, 3]), GroupLabel::Cyclic(3));
        assert_eq!(
            emit_dot(&g),
            "digraph dominance {\n  \"P1\" [label=\"P1\"];\n  \"<3,3>\" [label=\"<3,3>\"];\n  \
             \"P1\" -> \"<3,3>\" [label=\"G=C3,|G|=3\"];\n}\n"
        );
        let a = emit_dot(&build_positive_dominance(6, 3));
        assert_eq!(a, emit_dot(&build_positive_dominance(6, 3)));
    }
}
