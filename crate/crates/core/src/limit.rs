//! Finite presentations of the direct limit and its abelianization.
//!
//! Every chamber surface gets the standard presentation of a free group:
//!
//! * orientable genus `g` with `b` boundary components: generators
//!   `a1, b1, ..., ag, bg, c1, ..., c(b-1)`; boundary words `c1, ..., c(b-1)`
//!   and `([a1,b1]...[ag,bg] c1...c(b-1))^-1`;
//! * `k` crosscaps: generators `x1, ..., xk, c1, ..., c(b-1)`; last boundary
//!   word `(x1^2...xk^2 c1...c(b-1))^-1`.
//!
//! Generators are qualified by their chamber (`w1.a1`), axis generators are
//! written `v.z`. The edges at a chamber, sorted by axis name, take the
//! boundary words in order, and every edge sends its axis generator to its
//! boundary word. Other choices give homeomorphic spaces and isomorphic
//! groups.
//!
//! The group presented is the fundamental group of the glued space. When the
//! diagram's underlying graph has cycles this is larger than the plain
//! pushout of the vertex groups: a spanning tree is fixed, and every edge off
//! the tree carries a stable letter `v.t1, v.t2, ...` (numbered per axis)
//! conjugating the axis generator onto its boundary word. On tree-shaped
//! diagrams no stable letters appear.

use std::fmt;

use serde::Serialize;

use crate::diagram::{require_valid, surface_complexity, ChamberData, Diagram, Indexed};
use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntMatrix, SnfResult};
use crate::word::{Letter, Word};

/// Generators of the standard presentation of a surface group, unqualified.
pub fn surface_generators(c: ChamberData, b: u32) -> Result<Vec<String>> {
    let k = complexity(c, b)?;
    let mut out = Vec::new();
    if c.orientable {
        for i in 1..=k {
            out.push(format!("a{i}"));
            out.push(format!("b{i}"));
        }
    } else {
        out.extend((1..=k).map(|i| format!("x{i}")));
    }
    out.extend((1..b).map(|j| format!("c{j}")));
    Ok(out)
}

fn complexity(c: ChamberData, b: u32) -> Result<u32> {
    surface_complexity(c.rank, b, c.orientable).ok_or(Error::Unrealizable {
        rank: c.rank,
        boundary: b,
        orientable: c.orientable,
    })
}

/// The `b` boundary words of the surface with data `c`, over the
/// unqualified generators of [`surface_generators`].
pub fn boundary_words(c: ChamberData, b: u32) -> Result<Vec<Word>> {
    boundary_words_in(c, b, "")
}

fn boundary_words_in(c: ChamberData, b: u32, prefix: &str) -> Result<Vec<Word>> {
    let k = complexity(c, b)?;
    let g = |name: String| Word::generator(format!("{prefix}{name}"));
    let mut words: Vec<Word> = (1..b).map(|j| g(format!("c{j}"))).collect();
    let mut last = Word::identity();
    for i in 1..=k {
        last = if c.orientable {
            last.mul(&Word::commutator(&g(format!("a{i}")), &g(format!("b{i}"))))
        } else {
            let x = g(format!("x{i}"));
            last.mul(&x).mul(&x)
        };
    }
    for w in &words {
        last = last.mul(w);
    }
    words.push(last.inverse());
    Ok(words)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Rows are relators, columns generators.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators.len());
        let col: std::collections::HashMap<&str, usize> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.as_str(), i))
            .collect();
        for (i, r) in self.relators.iter().enumerate() {
            for Letter { generator, .. } in r.letters() {
                let j = col[generator.as_str()];
                m[(i, j)] = r.exponent_sum(generator);
            }
        }
        m
    }

    pub fn abelianization(&self) -> SnfResult {
        smith_normal_form(&self.exponent_matrix())
    }

    /// Every relator letter is a listed generator.
    pub fn is_well_formed(&self) -> bool {
        self.relators
            .iter()
            .flat_map(|r| r.letters())
            .all(|l| self.generators.contains(&l.generator))
    }
}

impl fmt::Display for Presentation {
    /// `< g1, g2 | r1, r2 >`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.generators.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            write!(f, "{}{r}", if i == 0 { " " } else { ", " })?;
        }
        f.write_str(" >")
    }
}

pub fn axis_generator(axis: &str) -> String {
    format!("{axis}.z")
}

/// Presentation of the direct limit.
///
/// Without elimination every edge `e` at axis `v` contributes `v.z w_e^-1`,
/// or `t v.z t^-1 w_e^-1` when `e` has stable letter `t`. With elimination the
/// axis generators are substituted away: `v.z` becomes `w_e1`, `e1` being the
/// first edge at the axis by chamber name, and the remaining edges `ej` give
/// `w_e1 w_ej^-1` (conjugated by the stable letter if there is one).
pub fn limit_presentation(d: &Diagram, eliminate_axes: bool) -> Result<Presentation> {
    let ix = require_valid(d)?;
    let mut generators = Vec::new();
    if !eliminate_axes {
        generators.extend(d.axes.iter().map(|a| axis_generator(a)));
    }
    let mut edge_word = vec![Word::identity(); ix.edges.len()];
    for (c, chamber) in d.chambers.iter().enumerate() {
        let slots = &ix.chamber_edges[c];
        let b = slots.len() as u32;
        let prefix = format!("{}.", chamber.name);
        generators.extend(
            surface_generators(chamber.data, b)?
                .into_iter()
                .map(|g| format!("{prefix}{g}")),
        );
        for (slot, word) in slots.iter().zip(boundary_words_in(chamber.data, b, &prefix)?) {
            edge_word[*slot] = word;
        }
    }
    let stable = stable_letters(&ix);
    generators.extend(stable.iter().flatten().cloned());
    let mut relators = Vec::new();
    for (a, edges) in ix.axis_edges.iter().enumerate() {
        let z = if eliminate_axes {
            edge_word[edges[0]].clone()
        } else {
            Word::generator(axis_generator(ix.axis_name(a)))
        };
        let skip = usize::from(eliminate_axes);
        for &e in &edges[skip..] {
            let image = match &stable[e] {
                Some(t) => {
                    let t = Word::generator(t.clone());
                    t.mul(&z).mul(&t.inverse())
                }
                None => z.clone(),
            };
            relators.push(image.mul(&edge_word[e].inverse()));
        }
    }
    Ok(Presentation { generators, relators })
}

/// Stable letter per edge, `None` on the spanning tree. The tree is grown
/// greedily over axes by name, each axis's edges by chamber name, so the
/// first edge at every axis is a tree edge.
fn stable_letters(ix: &Indexed<'_>) -> Vec<Option<String>> {
    let na = ix.num_axes();
    let mut parent: Vec<usize> = (0..na + ix.num_chambers()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut axes: Vec<usize> = (0..na).collect();
    axes.sort_by_key(|&a| ix.axis_name(a));
    let mut out = vec![None; ix.edges.len()];
    for a in axes {
        let mut n = 0;
        for &e in &ix.axis_edges[a] {
            let (ra, rc) = (find(&mut parent, a), find(&mut parent, na + ix.edges[e].1));
            if ra == rc {
                n += 1;
                out[e] = Some(format!("{}.t{n}", ix.axis_name(a)));
            } else {
                parent[ra] = rc;
            }
        }
    }
    out
}

/// Smith normal form of the relation matrix of the axis-free presentation;
/// `free_rank` is the first Betti number.
pub fn abelianization(d: &Diagram) -> Result<SnfResult> {
    Ok(limit_presentation(d, true)?.abelianization())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    fn words(c: ChamberData, b: u32) -> Vec<String> {
        boundary_words(c, b).unwrap().iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn boundary_word_conventions() {
        assert_eq!(words(ChamberData::orientable(2), 1), vec!["b1 a1 b1^-1 a1^-1"]);
        assert_eq!(words(ChamberData::nonorientable(2), 1), vec!["x2^-1 x2^-1 x1^-1 x1^-1"]);
        assert_eq!(words(ChamberData::orientable(2), 3), vec!["c1", "c2", "c2^-1 c1^-1"]);
        assert_eq!(
            words(ChamberData::orientable(3), 2),
            vec!["c1", "c1^-1 b1 a1 b1^-1 a1^-1"]
        );
        assert!(matches!(
            boundary_words(ChamberData::orientable(3), 1),
            Err(Error::Unrealizable {
                rank: 3,
                boundary: 1,
                orientable: true
            })
        ));
    }

    #[test]
    fn generator_count_is_rank() {
        for rank in 1..6 {
            for b in 1..7 {
                for orientable in [true, false] {
                    let c = ChamberData { rank, orientable };
                    if let Ok(gens) = surface_generators(c, b) {
                        assert_eq!(gens.len() as u32, rank);
                        let ws = boundary_words(c, b).unwrap();
                        assert_eq!(ws.len() as u32, b);
                        // the boundary words multiply to the surface relator
                        let all: Vec<String> = ws
                            .iter()
                            .flat_map(|w| w.letters())
                            .map(|l| l.generator.clone())
                            .collect();
                        assert!(all.iter().all(|g| gens.contains(g)));
                    }
                }
            }
        }
    }

    #[test]
    fn tripod_presentations() {
        let d = examples::tripod();
        let p = limit_presentation(&d, true).unwrap();
        assert_eq!(p.generators, vec!["w1.a1", "w1.b1", "w2.a1", "w2.b1", "w3.a1", "w3.b1"]);
        assert_eq!(p.relators.len(), 2);
        let comm = |w: &str| Word::commutator(&Word::generator(format!("{w}.a1")), &Word::generator(format!("{w}.b1")));
        assert!(p.relators[0].same_relator(&comm("w1").mul(&comm("w2").inverse())));
        assert!(p.relators[1].same_relator(&comm("w1").mul(&comm("w3").inverse())));
        assert!(p.is_well_formed());

        let q = limit_presentation(&d, false).unwrap();
        assert_eq!(q.generators.len(), 7);
        assert_eq!(q.relators.len(), 3);
        assert_eq!(q.generators[0], "v.z");
        assert!(q.to_string().starts_with("< v.z, w1.a1, "));
    }

    #[test]
    fn abelianizations() {
        let r = abelianization(&examples::tripod()).unwrap();
        assert!(r.invariant_factors.is_empty());
        assert_eq!(r.free_rank, 6);
        let r = abelianization(&examples::nonorientable_tripod()).unwrap();
        assert_eq!(r.invariant_factors, vec![2, 2]);
        assert_eq!(r.free_rank, 4);
        let p = limit_presentation(&examples::nonorientable_tripod(), true).unwrap();
        assert_eq!(
            p.exponent_matrix().to_rows(),
            vec![vec![-2, -2, 2, 2, 0, 0], vec![-2, -2, 0, 0, 2, 2]]
        );
    }

    #[test]
    fn cycles_get_stable_letters() {
        let d = examples::theta();
        let p = limit_presentation(&d, true).unwrap();
        // six edges, five vertices: two independent cycles
        assert_eq!(&p.generators[p.generators.len() - 2..], ["v.t1", "v.t2"]);
        assert_eq!(p.relators.len(), 4);
        assert!(p.is_well_formed());
        let q = limit_presentation(&d, false).unwrap();
        assert_eq!(q.generators.len(), 2 + 9 + 2);
        assert_eq!(q.relators.len(), 6);
        assert_eq!(abelianization(&d).unwrap().free_rank, 9);
        // parallel edges close a loop as well
        let mut m = examples::tripod().with_edge("v", "w1");
        m.chambers[0].data.rank = 3;
        let p = limit_presentation(&m, true).unwrap();
        assert!(p.generators.contains(&"v.t1".to_string()));
    }

    #[test]
    fn elimination_preserves_abelianization() {
        for d in [examples::tripod(), examples::theta(), examples::nonorientable_tripod()] {
            let a = limit_presentation(&d, true).unwrap().abelianization();
            let b = limit_presentation(&d, false).unwrap().abelianization();
            assert_eq!(a.invariant_factors, b.invariant_factors);
            assert_eq!(a.free_rank, b.free_rank);
        }
    }

    #[test]
    fn display_format() {
        let p = Presentation {
            generators: vec!["a".into(), "b".into()],
            relators: vec![Word::commutator(&Word::generator("a"), &Word::generator("b"))],
        };
        assert_eq!(p.to_string(), "< a, b | a b a^-1 b^-1 >");
        assert_eq!(Presentation::default().to_string(), "<  | >");
    }
}
