//! Truncated models of the universal cover's incidence tree.
//!
//! Nodes alternate between lifts of branching circles (geodesic nodes) and
//! lifts of chambers. A geodesic node labeled by axis `v` meets one chamber
//! lift per edge at `v`. A chamber lift has infinitely many boundary lines
//! over each boundary slot; the model keeps `fanout` of them per slot, one of
//! which (over the slot leading to the parent) is the parent itself.
//!
//! Two geodesic lifts are adjacent when they bound a common chamber lift.
//! In the cover the chamber lifts are exactly the maximal sets of pairwise
//! adjacent lifts; [`maximal_transitive_sets`] computes those sets from the
//! adjacency relation alone so the correspondence can be checked.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::diagram::{require_valid, Diagram};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Geodesic,
    Chamber,
}

impl NodeKind {
    fn name(self) -> &'static str {
        match self {
            NodeKind::Geodesic => "geodesic",
            NodeKind::Chamber => "chamber",
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverNode {
    pub id: usize,
    pub kind: NodeKind,
    /// Axis or chamber name in the base diagram.
    pub label: String,
    pub parent: Option<usize>,
    pub level: usize,
    /// Index into the base diagram's edges of the edge joining this node to
    /// its parent.
    pub edge: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverTree {
    pub nodes: Vec<CoverNode>,
    pub depth: usize,
    pub fanout: usize,
    #[serde(skip)]
    children: Vec<Vec<usize>>,
}

/// Builds the tree breadth first from a lift of `root_axis`, keeping `depth`
/// levels. Children are ordered by boundary slot, then lift index.
pub fn build_cover_tree(d: &Diagram, root_axis: &str, depth: usize, fanout: usize) -> Result<CoverTree> {
    let ix = require_valid(d)?;
    if depth == 0 {
        return Err(Error::InvalidParameter("depth must be at least 1".into()));
    }
    if fanout == 0 {
        return Err(Error::InvalidParameter("fanout must be at least 1".into()));
    }
    let root = *ix
        .axis_index
        .get(root_axis)
        .ok_or_else(|| Error::UnknownIdentifier(root_axis.to_string()))?;

    let mut tree = CoverTree {
        nodes: Vec::new(),
        depth,
        fanout,
        children: Vec::new(),
    };
    // (node id, base vertex index)
    let mut queue = VecDeque::new();
    tree.push(NodeKind::Geodesic, ix.axis_name(root), None, None);
    queue.push_back((0usize, root));
    while let Some((id, base)) = queue.pop_front() {
        let node = &tree.nodes[id];
        if node.level + 1 >= depth {
            continue;
        }
        let via = node.edge;
        match node.kind {
            NodeKind::Geodesic => {
                for &e in ix.axis_edges[base].iter().filter(|&&e| Some(e) != via) {
                    let c = ix.edges[e].1;
                    let child = tree.push(NodeKind::Chamber, ix.chamber_name(c), Some(id), Some(e));
                    queue.push_back((child, c));
                }
            }
            NodeKind::Chamber => {
                for &e in &ix.chamber_edges[base] {
                    let lifts = if Some(e) == via { fanout - 1 } else { fanout };
                    let a = ix.edges[e].0;
                    for _ in 0..lifts {
                        let child = tree.push(NodeKind::Geodesic, ix.axis_name(a), Some(id), Some(e));
                        queue.push_back((child, a));
                    }
                }
            }
        }
    }
    Ok(tree)
}

impl CoverTree {
    fn push(&mut self, kind: NodeKind, label: &str, parent: Option<usize>, edge: Option<usize>) -> usize {
        let id = self.nodes.len();
        let level = parent.map_or(0, |p| self.nodes[p].level + 1);
        self.nodes.push(CoverNode {
            id,
            kind,
            label: label.to_string(),
            parent,
            level,
            edge,
        });
        self.children.push(Vec::new());
        if let Some(p) = parent {
            self.children[p].push(id);
        }
        id
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: usize) -> Result<&CoverNode> {
        self.nodes.get(id).ok_or(Error::UnknownNode(id))
    }

    pub fn children(&self, id: usize) -> &[usize] {
        &self.children[id]
    }

    pub fn is_leaf(&self, id: usize) -> bool {
        self.children[id].is_empty()
    }

    /// Parent first, then children.
    pub fn neighbors(&self, id: usize) -> Vec<usize> {
        self.nodes[id]
            .parent
            .into_iter()
            .chain(self.children[id].iter().copied())
            .collect()
    }

    pub fn nodes_of(&self, kind: NodeKind) -> impl Iterator<Item = &CoverNode> {
        self.nodes.iter().filter(move |n| n.kind == kind)
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.parent.is_some()).count()
    }

    fn expect_kind(&self, id: usize, kind: NodeKind) -> Result<()> {
        let node = self.node(id)?;
        if node.kind != kind {
            return Err(Error::WrongNodeKind {
                node: id,
                expected: kind.name(),
                found: node.kind.name(),
            });
        }
        Ok(())
    }

    /// Geodesic neighbors of every chamber node, in node order.
    pub fn chamber_neighbor_sets(&self) -> Vec<BTreeSet<usize>> {
        self.nodes_of(NodeKind::Chamber)
            .map(|n| self.neighbors(n.id).into_iter().collect())
            .collect()
    }

    /// Graphviz rendering: geodesic nodes as circles labeled by axis, chamber
    /// nodes as boxes labeled by chamber.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("graph cover {\n");
        for n in &self.nodes {
            let shape = match n.kind {
                NodeKind::Geodesic => "circle",
                NodeKind::Chamber => "box",
            };
            let _ = writeln!(out, "  n{} [shape={shape}, label=\"{}\"];", n.id, n.label);
        }
        for n in &self.nodes {
            if let Some(p) = n.parent {
                let _ = writeln!(out, "  n{p} -- n{};", n.id);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Whether `g1` and `g2` are distinct geodesic nodes bounding a common
/// chamber node.
pub fn adjacent(t: &CoverTree, g1: usize, g2: usize) -> Result<bool> {
    t.expect_kind(g1, NodeKind::Geodesic)?;
    t.expect_kind(g2, NodeKind::Geodesic)?;
    if g1 == g2 {
        return Ok(false);
    }
    let around = |g: usize| -> BTreeSet<usize> { t.neighbors(g).into_iter().collect() };
    Ok(!around(g1).is_disjoint(&around(g2)))
}

/// Maximal sets of geodesic nodes that are pairwise adjacent (the maximal
/// cliques of the adjacency graph), sorted.
pub fn maximal_transitive_sets(t: &CoverTree) -> Vec<BTreeSet<usize>> {
    let geodesics: Vec<usize> = t.nodes_of(NodeKind::Geodesic).map(|n| n.id).collect();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); t.len()];
    for (i, &g) in geodesics.iter().enumerate() {
        for &h in &geodesics[i + 1..] {
            if adjacent(t, g, h).expect("geodesic nodes") {
                adj[g].insert(h);
                adj[h].insert(g);
            }
        }
    }
    let mut out = Vec::new();
    bron_kerbosch(
        &adj,
        BTreeSet::new(),
        geodesics.iter().copied().collect(),
        BTreeSet::new(),
        &mut out,
    );
    out.sort();
    out
}

fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    r: BTreeSet<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<BTreeSet<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = *p
        .union(&x)
        .max_by_key(|&&u| adj[u].intersection(&p).count())
        .expect("p is non-empty");
    let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.insert(v);
        let p2 = p.intersection(&adj[v]).copied().collect();
        let x2 = x.intersection(&adj[v]).copied().collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.remove(&v);
        x.insert(v);
    }
}

/// Number of connected components of the tree with node `n` deleted.
pub fn components_after_removal(t: &CoverTree, n: usize) -> Result<usize> {
    t.node(n)?;
    let mut seen = vec![false; t.len()];
    seen[n] = true;
    let mut components = 0;
    for start in 0..t.len() {
        if seen[start] {
            continue;
        }
        components += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for v in t.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    Ok(components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn tripod_sizes() {
        let d = examples::tripod();
        assert_eq!(build_cover_tree(&d, "v", 1, 1).unwrap().len(), 1);
        assert_eq!(build_cover_tree(&d, "v", 2, 1).unwrap().len(), 4);
        assert_eq!(build_cover_tree(&d, "v", 3, 2).unwrap().len(), 7);
        // fanout 1 on once-punctured chambers stops at the chamber lifts
        assert_eq!(build_cover_tree(&d, "v", 5, 1).unwrap().len(), 4);
    }

    #[test]
    fn bad_parameters() {
        let d = examples::tripod();
        assert!(matches!(
            build_cover_tree(&d, "v", 0, 1),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            build_cover_tree(&d, "v", 2, 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            build_cover_tree(&d, "w1", 2, 1),
            Err(Error::UnknownIdentifier(_))
        ));
    }

    #[test]
    fn adjacency() {
        let t = build_cover_tree(&examples::tripod(), "v", 5, 2).unwrap();
        // node 1 is the first chamber lift; its geodesic children are
        // adjacent to each other and to the root
        let kids = t.children(1).to_vec();
        assert_eq!(kids.len(), 1);
        assert!(adjacent(&t, 0, kids[0]).unwrap());
        assert!(!adjacent(&t, 0, 0).unwrap());
        let deep = t.nodes_of(NodeKind::Geodesic).find(|n| n.level == 4).unwrap().id;
        assert!(!adjacent(&t, 0, deep).unwrap());
        assert!(matches!(adjacent(&t, 0, 1), Err(Error::WrongNodeKind { node: 1, .. })));
        assert!(matches!(adjacent(&t, 0, 10_000), Err(Error::UnknownNode(10_000))));
    }

    #[test]
    fn maximal_sets_of_tripod() {
        let t = build_cover_tree(&examples::tripod(), "v", 3, 2).unwrap();
        let sets = maximal_transitive_sets(&t);
        assert_eq!(sets.len(), 3);
        assert!(sets.iter().all(|s| s.len() == 2 && s.contains(&0)));
        let mut family = t.chamber_neighbor_sets();
        family.sort();
        assert_eq!(sets, family);
    }

    #[test]
    fn theta_tree() {
        let t = build_cover_tree(&examples::theta(), "u", 4, 2).unwrap();
        for n in t.nodes_of(NodeKind::Chamber).filter(|n| !t.is_leaf(n.id)) {
            // two slots, two lifts each, one of them the parent
            assert_eq!(t.neighbors(n.id).len(), 4);
        }
        let mut family = t.chamber_neighbor_sets();
        family.retain(|s| s.len() >= 2);
        family.sort();
        assert_eq!(maximal_transitive_sets(&t), family);
    }

    #[test]
    fn removal_components() {
        let t = build_cover_tree(&examples::tripod(), "v", 4, 2).unwrap();
        assert_eq!(components_after_removal(&t, 0).unwrap(), 3);
        assert_eq!(components_after_removal(&t, 1).unwrap(), 2);
        let leaf = (0..t.len()).find(|&n| t.is_leaf(n)).unwrap();
        assert_eq!(components_after_removal(&t, leaf).unwrap(), 1);
        assert!(components_after_removal(&t, 999).is_err());
    }

    #[test]
    fn dot_export() {
        let t = build_cover_tree(&examples::tripod(), "v", 2, 1).unwrap();
        let dot = t.export_dot();
        assert_eq!(dot.matches("shape=circle").count(), 1);
        assert_eq!(dot.matches("shape=box").count(), 3);
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
