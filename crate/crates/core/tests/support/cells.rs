//! Homology of the glued space from an explicit triangulated cell complex,
//! over prime fields (rationally via p = 2^61 - 1). Nothing here looks at the
//! group presentation or the multiplicity matrix.
//!
//! Every axis is a circle: one vertex `P_v` and one loop edge `L_v`. A chamber
//! of genus g (or k crosscaps) with b boundary slots is the polygon
//!
//! ```text
//! a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1  t1 d1 t1^-1 ... tb db tb^-1
//! (x1 x1 ... xk xk in the nonorientable case)
//! ```
//!
//! with all corners at a base vertex `O`, except that `t_j` runs from `O` to
//! the boundary vertex of slot j. The boundary loop `d_j` is the axis loop
//! `L_v` of the slot's axis and its vertex is `P_v`. The polygon is coned off
//! to a center vertex, giving one triangle per side.

use amalgam::Diagram;

/// Large enough that no torsion of a small complex is visible.
pub const RATIONAL: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut r) = (a, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    r
}

/// Rank over F_p by Gaussian elimination.
pub fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let scale = inv(m[rank][col], p);
        for x in m[rank].iter_mut() {
            *x = mul(*x, scale, p);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - mul(f, y, p)) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Default)]
pub struct Complex {
    pub vertices: usize,
    /// (tail, head)
    pub edges: Vec<(usize, usize)>,
    /// Boundary of each triangle as signed edges.
    pub triangles: Vec<[(usize, i64); 3]>,
}

impl Complex {
    fn vertex(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    fn edge(&mut self, tail: usize, head: usize) -> usize {
        self.edges.push((tail, head));
        self.edges.len() - 1
    }

    fn tail_head(&self, (e, sign): (usize, i64)) -> (usize, usize) {
        let (t, h) = self.edges[e];
        if sign > 0 {
            (t, h)
        } else {
            (h, t)
        }
    }

    /// Rational Betti numbers b0, b1, b2.
    pub fn betti(&self) -> [usize; 3] {
        self.betti_mod(RATIONAL)
    }

    /// Dimensions of homology with coefficients in F_p.
    pub fn betti_mod(&self, p: u64) -> [usize; 3] {
        let mut d1 = vec![vec![0i64; self.vertices]; self.edges.len()];
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            d1[i][h] += 1;
            d1[i][t] -= 1;
        }
        let mut d2 = vec![vec![0i64; self.edges.len()]; self.triangles.len()];
        for (i, tri) in self.triangles.iter().enumerate() {
            for &(e, s) in tri {
                d2[i][e] += s;
            }
        }
        let r1 = rank_mod_p(&d1, p);
        let r2 = rank_mod_p(&d2, p);
        [
            self.vertices - r1,
            self.edges.len() - r1 - r2,
            self.triangles.len() - r2,
        ]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }
}

/// Builds the glued space of a valid diagram.
pub fn glued_space(d: &Diagram) -> Complex {
    let mut k = Complex::default();
    let axis_vertex: Vec<usize> = d.axes.iter().map(|_| k.vertex()).collect();
    let axis_loop: Vec<usize> = axis_vertex.iter().map(|&v| k.edge(v, v)).collect();
    let axis_of = |name: &str| d.axes.iter().position(|a| a == name).unwrap();

    for chamber in &d.chambers {
        let mut slots: Vec<usize> = d
            .edges
            .iter()
            .filter(|e| e.chamber == chamber.name)
            .map(|e| axis_of(&e.axis))
            .collect();
        slots.sort_by_key(|&a| &d.axes[a]);
        let b = slots.len() as i64;
        let complexity = chamber.data.rank as i64 - b + 1;
        let base = k.vertex();
        // polygon sides as signed edges, walked in order
        let mut sides: Vec<(usize, i64)> = Vec::new();
        if chamber.data.orientable {
            assert!(complexity % 2 == 0 && complexity >= 0);
            for _ in 0..complexity / 2 {
                let a = k.edge(base, base);
                let bb = k.edge(base, base);
                sides.extend([(a, 1), (bb, 1), (a, -1), (bb, -1)]);
            }
        } else {
            assert!(complexity >= 1);
            for _ in 0..complexity {
                let x = k.edge(base, base);
                sides.extend([(x, 1), (x, 1)]);
            }
        }
        for &a in &slots {
            let t = k.edge(base, axis_vertex[a]);
            sides.extend([(t, 1), (axis_loop[a], 1), (t, -1)]);
        }
        let center = k.vertex();
        // corner i is the start of side i
        let corners: Vec<usize> = sides.iter().map(|&s| k.tail_head(s).0).collect();
        let spokes: Vec<usize> = corners.iter().map(|&c| k.edge(center, c)).collect();
        let n = sides.len();
        for i in 0..n {
            // center -> corner i -> corner i+1 -> center
            k.triangles.push([(spokes[i], 1), sides[i], (spokes[(i + 1) % n], -1)]);
        }
    }
    k
}
