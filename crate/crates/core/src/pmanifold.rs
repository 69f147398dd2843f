//! The P-manifold of a diagram as an incidence structure, and its homology.
//!
//! Rational homology comes from Mayer-Vietoris over the decomposition into
//! chamber surfaces and branching circles. Orient each orientable piece so
//! its boundary classes sum to zero in its first homology; then a second
//! homology class is a weighting of orientable pieces whose boundaries cancel
//! on every circle, i.e. an integer kernel vector of the axis-by-chamber
//! multiplicity matrix restricted to orientable columns. Nonorientable pieces
//! carry no fundamental class and never contribute.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::diagram::{require_valid, validate, ChamberData, Diagram};
use crate::error::{Error, Result};
use crate::limit::abelianization;
use crate::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfacePiece {
    pub name: String,
    pub rank: u32,
    pub orientable: bool,
    /// Circle glued to each boundary slot, in slot order.
    pub attachments: Vec<String>,
}

/// Branching circles and the surface pieces glued along them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceStructure {
    pub circles: Vec<String>,
    pub surface_pieces: Vec<SurfacePiece>,
}

impl IncidenceStructure {
    /// Every attachment names a declared circle and every circle meets at
    /// least three distinct pieces.
    pub fn check(&self) -> Result<()> {
        let circles: HashSet<&str> = self.circles.iter().map(String::as_str).collect();
        if circles.len() != self.circles.len() {
            return Err(Error::Malformed("duplicate circle name".into()));
        }
        let mut pieces_at: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.circles.len()];
        for (p, piece) in self.surface_pieces.iter().enumerate() {
            for circle in &piece.attachments {
                let Some(i) = self.circles.iter().position(|c| c == circle) else {
                    return Err(Error::Malformed(format!(
                        "piece `{}` is attached to unknown circle `{circle}`",
                        piece.name
                    )));
                };
                pieces_at[i].insert(p);
            }
        }
        for (i, pieces) in pieces_at.iter().enumerate() {
            if pieces.len() < 3 {
                return Err(Error::Malformed(format!(
                    "circle `{}` lies in {} distinct pieces, needs at least 3",
                    self.circles[i],
                    pieces.len()
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure serializes")
    }
}

/// One circle per axis, one piece per chamber, one attachment per edge in
/// boundary-slot order.
pub fn realize(d: &Diagram) -> Result<IncidenceStructure> {
    let ix = require_valid(d)?;
    let surface_pieces = d
        .chambers
        .iter()
        .enumerate()
        .map(|(c, chamber)| SurfacePiece {
            name: chamber.name.clone(),
            rank: chamber.data.rank,
            orientable: chamber.data.orientable,
            attachments: ix.chamber_edges[c].iter().map(|&e| d.edges[e].axis.clone()).collect(),
        })
        .collect();
    Ok(IncidenceStructure {
        circles: d.axes.clone(),
        surface_pieces,
    })
}

/// Reads the diagram back off an incidence structure.
pub fn diagram_of(s: &IncidenceStructure) -> Result<Diagram> {
    s.check()?;
    let mut d = Diagram::new();
    for c in &s.circles {
        d = d.with_axis(c.clone());
    }
    for p in &s.surface_pieces {
        d = d.with_chamber(p.name.clone(), ChamberData::new(p.rank, p.orientable));
        for c in &p.attachments {
            d = d.with_edge(c.clone(), p.name.clone());
        }
    }
    let report = validate(&d);
    if !report.is_valid() {
        return Err(Error::InvalidDiagram(report));
    }
    Ok(d)
}

/// Rows are axes, columns chambers (storage order); entries count edges.
pub fn chamber_multiplicity_matrix(d: &Diagram) -> Result<IntMatrix> {
    let ix = require_valid(d)?;
    let rows = ix
        .multiplicities()
        .into_iter()
        .map(|r| r.into_iter().map(i64::from).collect())
        .collect();
    IntMatrix::from_rows(ix.num_chambers(), rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Betti {
    pub b0: u64,
    pub b1: u64,
    pub b2: u64,
}

impl Betti {
    pub fn as_array(&self) -> [u64; 3] {
        [self.b0, self.b1, self.b2]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.b0 as i64 - self.b1 as i64 + self.b2 as i64
    }
}

pub fn betti_numbers(d: &Diagram) -> Result<Betti> {
    let m = chamber_multiplicity_matrix(d)?;
    let orientable: Vec<usize> = d
        .chambers
        .iter()
        .enumerate()
        .filter(|(_, c)| c.data.orientable)
        .map(|(i, _)| i)
        .collect();
    let restricted = m.select_columns(&orientable);
    let b2 = orientable.len() - restricted.rank();
    let b1 = abelianization(d)?.free_rank;
    Ok(Betti {
        b0: 1,
        b1: b1 as u64,
        b2: b2 as u64,
    })
}
