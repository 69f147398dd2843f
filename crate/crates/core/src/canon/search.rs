//! Individualization-refinement search over a vertex-colored bipartite
//! multigraph.
//!
//! Colors are start positions of cells in an ordered partition, so a discrete
//! coloring is directly a labeling `vertex -> position`. Refinement and the
//! choice of target cell depend only on colors and structure, which makes the
//! search tree invariant under relabeling; the canonical labeling is the leaf
//! whose certificate is least.

use std::collections::HashMap;

/// `(axis position, chamber position, multiplicity)`, chamber positions
/// counted from zero.
pub(crate) type Triple = (u32, u32, u32);

pub(crate) struct Graph {
    pub axes: usize,
    /// Neighbors with multiplicity, per vertex; axes are `0..axes`.
    pub adj: Vec<Vec<(usize, u32)>>,
    /// Initial colors (cell start positions).
    pub initial: Vec<u32>,
}

impl Graph {
    /// `keys[v]` orders the initial cells; vertices with equal keys share a
    /// cell.
    pub fn new<K: Ord + Clone>(axes: usize, keys: &[K], multiplicities: &[Vec<u32>]) -> Self {
        let n = keys.len();
        let mut adj = vec![Vec::new(); n];
        for (a, row) in multiplicities.iter().enumerate() {
            for (c, &m) in row.iter().enumerate() {
                if m > 0 {
                    adj[a].push((axes + c, m));
                    adj[axes + c].push((a, m));
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| keys[x].cmp(&keys[y]));
        let mut initial = vec![0u32; n];
        for (pos, &v) in order.iter().enumerate() {
            initial[v] = if pos > 0 && keys[order[pos - 1]] == keys[v] {
                initial[order[pos - 1]]
            } else {
                pos as u32
            };
        }
        Graph { axes, adj, initial }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    /// Equitable refinement of `color`.
    pub fn refine(&self, color: &mut [u32]) {
        let n = self.len();
        let mut cells = count_cells(color);
        loop {
            let sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..n)
                .map(|v| {
                    let mut s: Vec<(u32, u32)> = self.adj[v].iter().map(|&(u, m)| (color[u], m)).collect();
                    s.sort_unstable();
                    (color[v], s)
                })
                .collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&x, &y| sigs[x].cmp(&sigs[y]));
            for (pos, &v) in order.iter().enumerate() {
                color[v] = if pos > 0 && sigs[order[pos - 1]] == sigs[v] {
                    color[order[pos - 1]]
                } else {
                    pos as u32
                };
            }
            let now = count_cells(color);
            if now == cells {
                return;
            }
            cells = now;
        }
    }

    /// Individualizes `v` in front of its cell.
    fn individualize(&self, color: &[u32], v: usize) -> Vec<u32> {
        let k = color[v];
        let mut next: Vec<u32> = color.iter().map(|&c| if c == k { k + 1 } else { c }).collect();
        next[v] = k;
        self.refine(&mut next);
        next
    }

    /// Members of the first non-singleton cell, in vertex order.
    fn target_cell(&self, color: &[u32]) -> Option<Vec<usize>> {
        let n = self.len();
        let mut size = vec![0usize; n];
        for &c in color {
            size[c as usize] += 1;
        }
        let k = (0..n).find(|&c| size[c] > 1)? as u32;
        Some((0..n).filter(|&v| color[v] == k).collect())
    }

    pub fn certificate(&self, labeling: &[u32]) -> Vec<Triple> {
        let a = self.axes as u32;
        let mut out: Vec<Triple> = (0..self.axes)
            .flat_map(|x| self.adj[x].iter().map(move |&(c, m)| (labeling[x], labeling[c] - a, m)))
            .collect();
        out.sort_unstable();
        out
    }
}

fn count_cells(color: &[u32]) -> usize {
    let mut seen = vec![false; color.len()];
    color
        .iter()
        .filter(|&&c| !std::mem::replace(&mut seen[c as usize], true))
        .count()
}

fn fixes_all(perm: &[usize], points: &[usize]) -> bool {
    points.iter().all(|&p| perm[p] == p)
}

struct Leaf {
    cert: Vec<Triple>,
    labeling: Vec<u32>,
    path: Vec<usize>,
}

/// Canonical labeling search with pruning by automorphisms discovered along
/// the way.
pub(crate) struct Canonizer<'g> {
    graph: &'g Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

impl<'g> Canonizer<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Canonizer {
            graph,
            first: None,
            best: None,
            autos: Vec::new(),
        }
    }

    /// Returns the certificate and labeling of the canonical leaf.
    pub fn run(mut self) -> (Vec<Triple>, Vec<u32>) {
        let mut color = self.graph.initial.clone();
        self.graph.refine(&mut color);
        self.descend(color, &mut Vec::new());
        let best = self.best.expect("search reaches a leaf");
        (best.cert, best.labeling)
    }

    /// Returns the level to backtrack to when an automorphism has been found.
    fn descend(&mut self, color: Vec<u32>, path: &mut Vec<usize>) -> Option<usize> {
        let level = path.len();
        let Some(cell) = self.graph.target_cell(&color) else {
            return self.leaf(color, path);
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.same_orbit(&explored, v, path) {
                continue;
            }
            explored.push(v);
            path.push(v);
            let next = self.graph.individualize(&color, v);
            let jump = self.descend(next, path);
            path.pop();
            if let Some(j) = jump {
                if j < level {
                    return Some(j);
                }
            }
        }
        None
    }

    fn leaf(&mut self, labeling: Vec<u32>, path: &[usize]) -> Option<usize> {
        let cert = self.graph.certificate(&labeling);
        let leaf = Leaf {
            cert,
            labeling,
            path: path.to_vec(),
        };
        if self.first.is_none() {
            self.best = Some(Leaf {
                cert: leaf.cert.clone(),
                labeling: leaf.labeling.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        }
        let equivalent = [self.first.as_ref(), self.best.as_ref()]
            .into_iter()
            .flatten()
            .find(|r| r.cert == leaf.cert)
            .map(|r| {
                (
                    automorphism(&r.labeling, &leaf.labeling),
                    common_prefix(&r.path, &leaf.path),
                )
            });
        if let Some((perm, common)) = equivalent {
            self.autos.push(perm);
            return Some(common);
        }
        if self.best.as_ref().is_some_and(|b| leaf.cert < b.cert) {
            self.best = Some(leaf);
        }
        None
    }

    /// Whether `v` shares an orbit with an explored sibling under the
    /// automorphisms found so far that fix `path` pointwise.
    fn same_orbit(&self, explored: &[usize], v: usize, path: &[usize]) -> bool {
        let n = self.graph.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for perm in self.autos.iter().filter(|g| fixes_all(g, path)) {
            for (x, &y) in perm.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

/// Vertex permutation carrying the leaf `from` onto the leaf `to`.
fn automorphism(from: &[u32], to: &[u32]) -> Vec<usize> {
    let mut at = vec![0usize; to.len()];
    for (v, &p) in to.iter().enumerate() {
        at[p as usize] = v;
    }
    from.iter().map(|&p| at[p as usize]).collect()
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Order of the automorphism group of the colored graph, by orbit-stabilizer
/// along the leftmost path. Orbit membership is decided exactly by searching
/// each candidate subtree for a leaf equivalent to the leftmost one.
pub(crate) fn automorphism_group_order(graph: &Graph) -> Option<u128> {
    let mut color = graph.initial.clone();
    graph.refine(&mut color);
    let mut counter = OrbitCounter {
        graph,
        path_shapes: Vec::new(),
    };
    counter.order(color, &mut Vec::new()).map(|(n, _)| n)
}

struct OrbitCounter<'g> {
    graph: &'g Graph,
    /// Sorted color vectors of the nodes on the leftmost path, per level.
    path_shapes: Vec<Vec<u32>>,
}

fn shape(color: &[u32]) -> Vec<u32> {
    let mut s = color.to_vec();
    s.sort_unstable();
    s
}

impl OrbitCounter<'_> {
    /// Order of the stabilizer of the node and the certificate of its
    /// leftmost leaf.
    fn order(&mut self, color: Vec<u32>, path: &mut Vec<usize>) -> Option<(u128, Vec<Triple>)> {
        let level = path.len();
        if self.path_shapes.len() == level {
            self.path_shapes.push(shape(&color));
        }
        let Some(cell) = self.graph.target_cell(&color) else {
            return Some((1, self.graph.certificate(&color)));
        };
        let v0 = cell[0];
        path.push(v0);
        let (stabilizer, cert) = self.order(self.graph.individualize(&color, v0), path)?;
        path.pop();
        let mut orbit: u128 = 1;
        let mut known: HashMap<usize, bool> = HashMap::new();
        for &u in &cell[1..] {
            let hit = *known
                .entry(u)
                .or_insert_with(|| self.contains_equivalent(self.graph.individualize(&color, u), level + 1, &cert));
            if hit {
                orbit += 1;
            }
        }
        Some((stabilizer.checked_mul(orbit)?, cert))
    }

    fn contains_equivalent(&self, color: Vec<u32>, level: usize, cert: &[Triple]) -> bool {
        if self.path_shapes.get(level) != Some(&shape(&color)) {
            return false;
        }
        match self.graph.target_cell(&color) {
            None => self.graph.certificate(&color) == cert,
            Some(cell) => cell
                .iter()
                .any(|&v| self.contains_equivalent(self.graph.individualize(&color, v), level + 1, cert)),
        }
    }
}
