//! Canonical codes for decorated diagrams.
//!
//! Two valid diagrams have equal codes exactly when there is a bijection of
//! axes and of chambers preserving chamber decorations `(rank, orientable)`
//! and every axis-chamber edge multiplicity. Since the homeomorphism type of
//! a chamber surface is fixed by its rank, boundary count and orientability,
//! and surface homeomorphisms realize any permutation of boundary components,
//! this is the isomorphism relation on the diagrams of groups themselves.
//! These amalgamations are rigid (isomorphic direct limits come from
//! isomorphic diagrams), so the code also decides isomorphism of the groups.
//!
//! # Code layout
//!
//! All integers are unsigned big-endian, so byte order agrees with numeric
//! order:
//!
//! | bytes | content |
//! |-------|---------|
//! | 4     | tag `GAFC` |
//! | 1     | format version, `0x01` |
//! | 4     | axis count `A` |
//! | 4     | chamber count `C` |
//! | 4     | byte length of the decoration table (`5 * C`) |
//! | 5 * C | per chamber in canonical order: rank (4 bytes), orientable (1 byte, 0 or 1) |
//! | 4     | byte length of the edge table (`12 * E`) |
//! | 12 * E| `(axis, chamber, multiplicity)` triples, 4 bytes each, ascending |
//!
//! The decoration table is sorted by `(rank, orientable)` (nonorientable
//! first). Among all labelings compatible with that order the one whose edge
//! table is lexicographically least is chosen.

mod brute;
mod enumerate;
mod random;
mod search;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::diagram::{require_valid, ChamberData, Diagram, Indexed};
use crate::error::{Error, Result};

pub use brute::{
    brute_force_automorphism_count, brute_force_isomorphic, brute_force_isomorphic_bounded, brute_force_isomorphism,
    DEFAULT_BRUTE_FORCE_BOUND,
};
pub use enumerate::{enumerate_diagrams, enumerate_with, EnumBounds};
pub use random::{random_diagram, random_diagram_with, random_relabeling, RandomOptions};

use search::{Canonizer, Graph};

pub const CODE_TAG: &[u8; 4] = b"GAFC";
pub const CODE_VERSION: u8 = 1;
/// Prefix of the printed hex form.
pub const CODE_PREFIX: &str = "gafc1:";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Result<Self> {
        let code = CanonicalCode(bytes);
        code.parts()?;
        Ok(code)
    }

    fn parts(&self) -> Result<CodeParts> {
        let mut r = Reader { bytes: &self.0, pos: 0 };
        if r.take(4)? != CODE_TAG {
            return Err(Error::BadCode("missing GAFC tag".into()));
        }
        let version = r.take(1)?[0];
        if version != CODE_VERSION {
            return Err(Error::BadCode(format!("unsupported version {version}")));
        }
        let axes = r.u32()?;
        let chambers = r.u32()?;
        let dec_len = r.u32()? as usize;
        if dec_len != 5 * chambers as usize {
            return Err(Error::BadCode("decoration table length mismatch".into()));
        }
        let mut decorations = Vec::with_capacity(chambers as usize);
        for _ in 0..chambers {
            let rank = r.u32()?;
            let orientable = match r.take(1)?[0] {
                0 => false,
                1 => true,
                b => return Err(Error::BadCode(format!("bad orientability byte {b}"))),
            };
            decorations.push(ChamberData { rank, orientable });
        }
        if decorations
            .windows(2)
            .any(|w| (w[0].rank, w[0].orientable) > (w[1].rank, w[1].orientable))
        {
            return Err(Error::BadCode("decoration table not sorted".into()));
        }
        let edge_len = r.u32()? as usize;
        if !edge_len.is_multiple_of(12) {
            return Err(Error::BadCode("edge table length not a multiple of 12".into()));
        }
        let mut triples = Vec::with_capacity(edge_len / 12);
        for _ in 0..edge_len / 12 {
            let t = (r.u32()?, r.u32()?, r.u32()?);
            if t.0 >= axes || t.1 >= chambers || t.2 == 0 {
                return Err(Error::BadCode(format!("edge triple {t:?} out of range")));
            }
            triples.push(t);
        }
        if triples.windows(2).any(|w| (w[0].0, w[0].1) >= (w[1].0, w[1].1)) {
            return Err(Error::BadCode("edge table not strictly ascending".into()));
        }
        if r.pos != self.0.len() {
            return Err(Error::BadCode("trailing bytes".into()));
        }
        Ok(CodeParts {
            axes,
            decorations,
            triples,
        })
    }

    /// A diagram with this code: axes `v0, v1, ...`, chambers `w0, w1, ...`
    /// in canonical order.
    pub fn decode(&self) -> Result<Diagram> {
        let parts = self.parts()?;
        let mut d = Diagram::new();
        for i in 0..parts.axes {
            d = d.with_axis(format!("v{i}"));
        }
        for (i, data) in parts.decorations.iter().enumerate() {
            d = d.with_chamber(format!("w{i}"), *data);
        }
        for (a, c, m) in parts.triples {
            for _ in 0..m {
                d = d.with_edge(format!("v{a}"), format!("w{c}"));
            }
        }
        Ok(d)
    }
}

struct CodeParts {
    axes: u32,
    decorations: Vec<ChamberData>,
    triples: Vec<(u32, u32, u32)>,
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos + n;
        let s = self
            .bytes
            .get(self.pos..end)
            .ok_or_else(|| Error::BadCode("truncated".into()))?;
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_be_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{CODE_PREFIX}{}", hex::encode(&self.0))
    }
}

impl FromStr for CanonicalCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .strip_prefix(CODE_PREFIX)
            .ok_or_else(|| Error::BadCode(format!("missing `{CODE_PREFIX}` prefix")))?;
        let bytes = hex::decode(body).map_err(|e| Error::BadCode(e.to_string()))?;
        CanonicalCode::from_bytes(bytes)
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Canonical code plus the labeling that produced it.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub code: CanonicalCode,
    /// Storage index of the axis at each canonical position.
    pub axis_order: Vec<usize>,
    /// Storage index of the chamber at each canonical position.
    pub chamber_order: Vec<usize>,
}

fn graph_of(ix: &Indexed<'_>) -> Graph {
    let a = ix.num_axes();
    let keys: Vec<(u8, u32, bool)> = (0..a)
        .map(|_| (0, 0, false))
        .chain((0..ix.num_chambers()).map(|c| {
            let d = ix.data(c);
            (1, d.rank, d.orientable)
        }))
        .collect();
    Graph::new(a, &keys, &ix.multiplicities())
}

/// Canonical form of a diagram whose edges reference declared, uniquely named
/// vertices. Validity is not required.
pub fn canonical_form(d: &Diagram) -> Result<CanonicalForm> {
    let ix = Indexed::new(d)?;
    Ok(canonical_form_indexed(&ix))
}

fn canonical_form_indexed(ix: &Indexed<'_>) -> CanonicalForm {
    let a = ix.num_axes();
    let c = ix.num_chambers();
    let graph = graph_of(ix);
    let (triples, labeling) = Canonizer::new(&graph).run();

    let mut axis_order = vec![0usize; a];
    let mut chamber_order = vec![0usize; c];
    for (v, &p) in labeling.iter().enumerate() {
        let p = p as usize;
        if v < a {
            axis_order[p] = v;
        } else {
            chamber_order[p - a] = v - a;
        }
    }

    let mut bytes = Vec::with_capacity(21 + 5 * c + 12 * triples.len());
    bytes.extend_from_slice(CODE_TAG);
    bytes.push(CODE_VERSION);
    bytes.extend_from_slice(&(a as u32).to_be_bytes());
    bytes.extend_from_slice(&(c as u32).to_be_bytes());
    bytes.extend_from_slice(&(5 * c as u32).to_be_bytes());
    for &w in &chamber_order {
        let data = ix.data(w);
        bytes.extend_from_slice(&data.rank.to_be_bytes());
        bytes.push(u8::from(data.orientable));
    }
    bytes.extend_from_slice(&(12 * triples.len() as u32).to_be_bytes());
    for (x, y, m) in triples {
        for v in [x, y, m] {
            bytes.extend_from_slice(&v.to_be_bytes());
        }
    }
    CanonicalForm {
        code: CanonicalCode(bytes),
        axis_order,
        chamber_order,
    }
}

pub fn canonical_code(d: &Diagram) -> Result<CanonicalCode> {
    let ix = require_valid(d)?;
    Ok(canonical_form_indexed(&ix).code)
}

pub fn are_isomorphic(d1: &Diagram, d2: &Diagram) -> Result<bool> {
    let ix1 = require_valid(d1)?;
    let ix2 = require_valid(d2)?;
    if fingerprint(&ix1) != fingerprint(&ix2) {
        return Ok(false);
    }
    Ok(canonical_form_indexed(&ix1).code == canonical_form_indexed(&ix2).code)
}

/// Cheap isomorphism invariant: decorations with boundary counts, and axis
/// degrees, as sorted multisets.
fn fingerprint(ix: &Indexed<'_>) -> (Vec<(ChamberData, usize)>, Vec<usize>) {
    let mut chambers: Vec<_> = (0..ix.num_chambers())
        .map(|c| (ix.data(c), ix.chamber_edges[c].len()))
        .collect();
    chambers.sort_unstable_by_key(|&(d, b)| (d.rank, d.orientable, b));
    let mut axes: Vec<usize> = ix.axis_edges.iter().map(Vec::len).collect();
    axes.sort_unstable();
    (chambers, axes)
}

/// Name bijections between two diagrams.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub axis_map: BTreeMap<String, String>,
    pub chamber_map: BTreeMap<String, String>,
}

impl IsoWitness {
    /// Whether the maps are bijections carrying `from` exactly onto `to`:
    /// decorations and every edge multiplicity are preserved.
    pub fn verify(&self, from: &Diagram, to: &Diagram) -> bool {
        let (Ok(ix1), Ok(ix2)) = (Indexed::new(from), Indexed::new(to)) else {
            return false;
        };
        if ix1.num_axes() != ix2.num_axes()
            || ix1.num_chambers() != ix2.num_chambers()
            || self.axis_map.len() != ix1.num_axes()
            || self.chamber_map.len() != ix1.num_chambers()
        {
            return false;
        }
        let mut axis = vec![usize::MAX; ix1.num_axes()];
        for (src, dst) in &self.axis_map {
            match (ix1.axis_index.get(src.as_str()), ix2.axis_index.get(dst.as_str())) {
                (Some(&i), Some(&j)) => axis[i] = j,
                _ => return false,
            }
        }
        let mut chamber = vec![usize::MAX; ix1.num_chambers()];
        for (src, dst) in &self.chamber_map {
            match (ix1.chamber_index.get(src.as_str()), ix2.chamber_index.get(dst.as_str())) {
                (Some(&i), Some(&j)) if ix1.data(i) == ix2.data(j) => chamber[i] = j,
                _ => return false,
            }
        }
        let injective = |m: &[usize]| {
            let mut s = m.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len() == m.len() && !s.contains(&usize::MAX)
        };
        if !injective(&axis) || !injective(&chamber) {
            return false;
        }
        let m1 = ix1.multiplicities();
        let m2 = ix2.multiplicities();
        (0..ix1.num_axes()).all(|a| (0..ix1.num_chambers()).all(|c| m1[a][c] == m2[axis[a]][chamber[c]]))
    }

    /// The diagram obtained by renaming `d` through the witness.
    pub fn apply(&self, d: &Diagram) -> Diagram {
        let to_hash = |m: &BTreeMap<String, String>| -> HashMap<String, String> {
            m.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
        };
        d.relabeled(&to_hash(&self.axis_map), &to_hash(&self.chamber_map))
    }
}

pub fn find_isomorphism(d1: &Diagram, d2: &Diagram) -> Result<Option<IsoWitness>> {
    let ix1 = require_valid(d1)?;
    let ix2 = require_valid(d2)?;
    if fingerprint(&ix1) != fingerprint(&ix2) {
        return Ok(None);
    }
    let f1 = canonical_form_indexed(&ix1);
    let f2 = canonical_form_indexed(&ix2);
    if f1.code != f2.code {
        return Ok(None);
    }
    let axis_map = f1
        .axis_order
        .iter()
        .zip(&f2.axis_order)
        .map(|(&x, &y)| (ix1.axis_name(x).to_string(), ix2.axis_name(y).to_string()))
        .collect();
    let chamber_map = f1
        .chamber_order
        .iter()
        .zip(&f2.chamber_order)
        .map(|(&x, &y)| (ix1.chamber_name(x).to_string(), ix2.chamber_name(y).to_string()))
        .collect();
    Ok(Some(IsoWitness { axis_map, chamber_map }))
}

/// Number of decoration- and multiplicity-preserving self-bijections.
pub fn automorphism_count(d: &Diagram) -> Result<u128> {
    let ix = require_valid(d)?;
    search::automorphism_group_order(&graph_of(&ix))
        .ok_or_else(|| Error::InvalidParameter("automorphism group order overflows u128".into()))
}
