//! The diagram data model and the axioms a geometric amalgamation of free
//! groups has to satisfy.
//!
//! A [`Diagram`] is a finite bipartite multigraph. Axis vertices carry the
//! infinite cyclic group, chamber vertices carry a free group of rank at
//! least two realized as the fundamental group of a compact surface, and each
//! edge identifies an axis with one boundary component of a chamber's surface.
//! Edges are stored as undirected `(axis, chamber)` pairs; the direction is
//! always axis to chamber.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Decoration of a chamber vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChamberData {
    /// Rank of the free vertex group.
    pub rank: u32,
    /// Orientability of the realizing surface.
    pub orientable: bool,
}

impl ChamberData {
    pub fn new(rank: u32, orientable: bool) -> Self {
        ChamberData { rank, orientable }
    }

    pub fn orientable(rank: u32) -> Self {
        ChamberData::new(rank, true)
    }

    pub fn nonorientable(rank: u32) -> Self {
        ChamberData::new(rank, false)
    }
}

impl fmt::Display for ChamberData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.rank, if self.orientable { "or" } else { "non" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chamber {
    pub name: String,
    #[serde(flatten)]
    pub data: ChamberData,
}

/// One boundary identification, directed from `axis` to `chamber`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub axis: String,
    pub chamber: String,
}

impl Edge {
    pub fn new(axis: impl Into<String>, chamber: impl Into<String>) -> Self {
        Edge {
            axis: axis.into(),
            chamber: chamber.into(),
        }
    }
}

/// A finite decorated bipartite multigraph.
///
/// Construction does not check anything; use [`validate`] to find out whether
/// a value is a geometric amalgamation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub axes: Vec<String>,
    pub chambers: Vec<Chamber>,
    pub edges: Vec<Edge>,
}

impl Diagram {
    pub fn new() -> Self {
        Diagram::default()
    }

    pub fn with_axis(mut self, name: impl Into<String>) -> Self {
        self.axes.push(name.into());
        self
    }

    pub fn with_chamber(mut self, name: impl Into<String>, data: ChamberData) -> Self {
        self.chambers.push(Chamber {
            name: name.into(),
            data,
        });
        self
    }

    pub fn with_edge(mut self, axis: impl Into<String>, chamber: impl Into<String>) -> Self {
        self.edges.push(Edge::new(axis, chamber));
        self
    }

    pub fn chamber(&self, name: &str) -> Option<&ChamberData> {
        self.chambers.iter().find(|c| c.name == name).map(|c| &c.data)
    }

    pub fn has_axis(&self, name: &str) -> bool {
        self.axes.iter().any(|a| a == name)
    }

    /// Copy with axes, chambers and edges sorted by name. Two diagrams that
    /// differ only in storage order have equal normalizations.
    pub fn normalized(&self) -> Diagram {
        let mut d = self.clone();
        d.axes.sort();
        d.chambers.sort_by(|a, b| a.name.cmp(&b.name));
        d.edges.sort();
        d
    }

    /// Renames every vertex through the given maps. Names missing from a map
    /// are kept.
    pub fn relabeled(&self, axis_map: &HashMap<String, String>, chamber_map: &HashMap<String, String>) -> Diagram {
        let ax = |n: &String| axis_map.get(n).cloned().unwrap_or_else(|| n.clone());
        let ch = |n: &String| chamber_map.get(n).cloned().unwrap_or_else(|| n.clone());
        Diagram {
            axes: self.axes.iter().map(ax).collect(),
            chambers: self
                .chambers
                .iter()
                .map(|c| Chamber {
                    name: ch(&c.name),
                    data: c.data,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    axis: ax(&e.axis),
                    chamber: ch(&e.chamber),
                })
                .collect(),
        }
    }
}

/// Integer view of a diagram whose edges all reference declared, uniquely
/// named vertices.
#[derive(Debug, Clone)]
pub(crate) struct Indexed<'a> {
    pub diagram: &'a Diagram,
    pub axis_index: HashMap<&'a str, usize>,
    pub chamber_index: HashMap<&'a str, usize>,
    /// `(axis, chamber)` per stored edge, same order as `diagram.edges`.
    pub edges: Vec<(usize, usize)>,
    /// Incident edge ids per axis, ordered by (chamber name, occurrence).
    pub axis_edges: Vec<Vec<usize>>,
    /// Incident edge ids per chamber, ordered by (axis name, occurrence).
    /// Position in this list is the boundary slot of the edge.
    pub chamber_edges: Vec<Vec<usize>>,
}

impl<'a> Indexed<'a> {
    pub fn new(diagram: &'a Diagram) -> Result<Self> {
        let mut axis_index = HashMap::new();
        let mut chamber_index = HashMap::new();
        for (i, a) in diagram.axes.iter().enumerate() {
            if axis_index.insert(a.as_str(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate name `{a}`")));
            }
        }
        for (i, c) in diagram.chambers.iter().enumerate() {
            if axis_index.contains_key(c.name.as_str()) || chamber_index.insert(c.name.as_str(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate name `{}`", c.name)));
            }
        }
        let mut edges = Vec::with_capacity(diagram.edges.len());
        for e in &diagram.edges {
            let a = *axis_index
                .get(e.axis.as_str())
                .ok_or_else(|| Error::UnknownIdentifier(e.axis.clone()))?;
            let c = *chamber_index
                .get(e.chamber.as_str())
                .ok_or_else(|| Error::UnknownIdentifier(e.chamber.clone()))?;
            edges.push((a, c));
        }
        let mut axis_edges = vec![Vec::new(); diagram.axes.len()];
        let mut chamber_edges = vec![Vec::new(); diagram.chambers.len()];
        for (id, &(a, c)) in edges.iter().enumerate() {
            axis_edges[a].push(id);
            chamber_edges[c].push(id);
        }
        // stable sorts keep storage order among parallel edges
        for list in &mut axis_edges {
            list.sort_by(|&x, &y| diagram.edges[x].chamber.cmp(&diagram.edges[y].chamber));
        }
        for list in &mut chamber_edges {
            list.sort_by(|&x, &y| diagram.edges[x].axis.cmp(&diagram.edges[y].axis));
        }
        Ok(Indexed {
            diagram,
            axis_index,
            chamber_index,
            edges,
            axis_edges,
            chamber_edges,
        })
    }

    pub fn num_axes(&self) -> usize {
        self.diagram.axes.len()
    }

    pub fn num_chambers(&self) -> usize {
        self.diagram.chambers.len()
    }

    pub fn data(&self, chamber: usize) -> ChamberData {
        self.diagram.chambers[chamber].data
    }

    pub fn axis_name(&self, axis: usize) -> &'a str {
        &self.diagram.axes[axis]
    }

    pub fn chamber_name(&self, chamber: usize) -> &'a str {
        &self.diagram.chambers[chamber].name
    }

    /// `counts[a][c]` = number of edges between axis `a` and chamber `c`.
    pub fn multiplicities(&self) -> Vec<Vec<u32>> {
        let mut m = vec![vec![0u32; self.num_chambers()]; self.num_axes()];
        for &(a, c) in &self.edges {
            m[a][c] += 1;
        }
        m
    }
}

/// Whether a compact surface with `boundary` boundary components, the given
/// orientability and free fundamental group of rank `rank` exists.
///
/// Orientable genus g gives rank 2g + b - 1; c crosscaps give rank c + b - 1
/// with c at least one.
pub fn surface_realizable(rank: u32, boundary: u32, orientable: bool) -> bool {
    if rank == 0 || boundary == 0 {
        return false;
    }
    let excess = i64::from(rank) - i64::from(boundary) + 1;
    if orientable {
        excess >= 0 && excess % 2 == 0
    } else {
        excess >= 1
    }
}

/// Genus (orientable) or crosscap number (nonorientable) of the surface
/// realizing the given data, if it exists.
pub fn surface_complexity(rank: u32, boundary: u32, orientable: bool) -> Option<u32> {
    if !surface_realizable(rank, boundary, orientable) {
        return None;
    }
    let excess = rank + 1 - boundary;
    Some(if orientable { excess / 2 } else { excess })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Empty,
    DuplicateName,
    DanglingReference,
    Disconnected,
    AxisDegree,
    AxisThickness,
    ChamberRank,
    ChamberUnattached,
    SurfaceRealizability,
    NonorientableChamber,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::Empty => "empty",
            Rule::DuplicateName => "duplicate-name",
            Rule::DanglingReference => "dangling-reference",
            Rule::Disconnected => "disconnected",
            Rule::AxisDegree => "axis-degree",
            Rule::AxisThickness => "axis-thickness",
            Rule::ChamberRank => "chamber-rank",
            Rule::ChamberUnattached => "chamber-unattached",
            Rule::SurfaceRealizability => "surface-realizability",
            Rule::NonorientableChamber => "nonorientable-chamber",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub element: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    valid: bool,
    violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort();
        violations.dedup();
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.valid
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn rules(&self) -> BTreeSet<Rule> {
        self.violations.iter().map(|v| v.rule).collect()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}: {}", v.rule, v.message)?;
        }
        Ok(())
    }
}

/// How axis thickness is checked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Thickness {
    /// Every axis meets at least three distinct chambers (and has degree at
    /// least three).
    #[default]
    DistinctChambers,
    /// Only the degree of every axis is checked; parallel edges count.
    Degree,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ValidationOptions {
    pub thickness: Thickness,
    /// Reject nonorientable chambers.
    pub orientable_only: bool,
}

impl ValidationOptions {
    pub fn lax() -> Self {
        ValidationOptions {
            thickness: Thickness::Degree,
            orientable_only: false,
        }
    }

    pub fn orientable_only() -> Self {
        ValidationOptions {
            orientable_only: true,
            ..Default::default()
        }
    }
}

pub fn validate(d: &Diagram) -> ValidationReport {
    validate_with(d, ValidationOptions::default())
}

pub fn validate_with(d: &Diagram, opts: ValidationOptions) -> ValidationReport {
    let mut out = Vec::new();
    let mut push = |rule: Rule, element: &str, message: String| {
        out.push(Violation {
            rule,
            element: element.to_string(),
            message,
        })
    };

    if d.axes.is_empty() || d.chambers.is_empty() {
        push(
            Rule::Empty,
            "",
            format!(
                "diagram needs at least one axis and one chamber ({} axes, {} chambers)",
                d.axes.len(),
                d.chambers.len()
            ),
        );
    }

    // vertex ids: axes first, then chambers; duplicates keep the first id
    let mut ids: HashMap<&str, (usize, bool)> = HashMap::with_capacity(d.axes.len() + d.chambers.len());
    let mut axis_ids = Vec::with_capacity(d.axes.len());
    let mut chamber_ids = Vec::with_capacity(d.chambers.len());
    for a in &d.axes {
        if ids.contains_key(a.as_str()) {
            push(Rule::DuplicateName, a, format!("name `{a}` declared more than once"));
        } else {
            let id = ids.len();
            ids.insert(a, (id, true));
            axis_ids.push((a.as_str(), id));
        }
    }
    for c in &d.chambers {
        if ids.contains_key(c.name.as_str()) {
            push(
                Rule::DuplicateName,
                &c.name,
                format!("name `{}` declared more than once", c.name),
            );
        } else {
            let id = ids.len();
            ids.insert(&c.name, (id, false));
            chamber_ids.push(Some(id));
            continue;
        }
        chamber_ids.push(None);
    }

    let n = ids.len();
    let mut uf = UnionFind::new(n);
    let mut axis_degree = vec![0usize; n];
    let mut axis_neighbors: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut chamber_degree = vec![0u32; n];
    for e in &d.edges {
        let a = match ids.get(e.axis.as_str()) {
            Some(&(id, true)) => Some(id),
            _ => None,
        };
        let c = match ids.get(e.chamber.as_str()) {
            Some(&(id, false)) => Some(id),
            _ => None,
        };
        if a.is_none() {
            push(
                Rule::DanglingReference,
                &e.axis,
                format!("edge {} {} references undeclared axis `{}`", e.axis, e.chamber, e.axis),
            );
        }
        if c.is_none() {
            push(
                Rule::DanglingReference,
                &e.chamber,
                format!(
                    "edge {} {} references undeclared chamber `{}`",
                    e.axis, e.chamber, e.chamber
                ),
            );
        }
        if let (Some(a), Some(c)) = (a, c) {
            uf.union(a, c);
            axis_degree[a] += 1;
            if !axis_neighbors[a].contains(&c) {
                axis_neighbors[a].push(c);
            }
            chamber_degree[c] += 1;
        }
    }

    if n > 1 {
        let root = uf.find(0);
        if (1..n).any(|i| uf.find(i) != root) {
            let components = (0..n).map(|i| uf.find(i)).collect::<BTreeSet<_>>().len();
            push(
                Rule::Disconnected,
                "",
                format!("underlying graph has {components} connected components"),
            );
        }
    }

    for &(name, id) in &axis_ids {
        let deg = axis_degree[id];
        if deg < 3 {
            push(
                Rule::AxisDegree,
                name,
                format!("axis degree < 3 (axis `{name}` has degree {deg})"),
            );
        }
        if opts.thickness == Thickness::DistinctChambers {
            let distinct = axis_neighbors[id].len();
            if distinct < 3 {
                push(
                    Rule::AxisThickness,
                    name,
                    format!("axis `{name}` meets {distinct} distinct chambers, needs at least 3"),
                );
            }
        }
    }

    for (c, id) in d.chambers.iter().zip(&chamber_ids) {
        let Some(id) = *id else {
            continue;
        };
        let ChamberData { rank, orientable } = c.data;
        let b = chamber_degree[id];
        if rank < 2 {
            push(
                Rule::ChamberRank,
                &c.name,
                format!("chamber `{}` has rank {rank}, needs at least 2", c.name),
            );
        }
        if b == 0 {
            push(
                Rule::ChamberUnattached,
                &c.name,
                format!("chamber `{}` has no incident edge", c.name),
            );
        } else if rank >= 1 && !surface_realizable(rank, b, orientable) {
            push(
                Rule::SurfaceRealizability,
                &c.name,
                format!(
                    "surface not realizable (rank {rank}, b {b}, {}) for chamber `{}`",
                    if orientable { "orientable" } else { "nonorientable" },
                    c.name
                ),
            );
        }
        if opts.orientable_only && !orientable {
            push(
                Rule::NonorientableChamber,
                &c.name,
                format!("chamber `{}` is nonorientable", c.name),
            );
        }
    }

    ValidationReport::from_violations(out)
}

/// Index a diagram after checking it is valid under the default rules.
pub(crate) fn require_valid(d: &Diagram) -> Result<Indexed<'_>> {
    let report = validate(d);
    if !report.is_valid() {
        return Err(Error::InvalidDiagram(report));
    }
    Indexed::new(d)
}

pub fn boundary_count(d: &Diagram, chamber: &str) -> Result<u32> {
    if d.chamber(chamber).is_none() {
        return Err(Error::UnknownIdentifier(chamber.to_string()));
    }
    Ok(d.edges.iter().filter(|e| e.chamber == chamber).count() as u32)
}

pub fn axis_degree(d: &Diagram, axis: &str) -> Result<u32> {
    if !d.has_axis(axis) {
        return Err(Error::UnknownIdentifier(axis.to_string()));
    }
    Ok(d.edges.iter().filter(|e| e.axis == axis).count() as u32)
}

/// Euler characteristic of the associated P-manifold: circles contribute
/// nothing, each chamber contributes `1 - rank`.
pub fn euler_characteristic(d: &Diagram) -> Result<i64> {
    require_valid(d)?;
    Ok(d.chambers.iter().map(|c| 1 - i64::from(c.data.rank)).sum())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
