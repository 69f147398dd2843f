use std::collections::BTreeSet;

use crate::diagram::{surface_realizable, validate_with, ChamberData, Diagram, Indexed, ValidationOptions};

use super::{canonical_form_indexed, CanonicalCode};

/// Size bounds for [`enumerate_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumBounds {
    pub max_axes: u32,
    pub max_chambers: u32,
    pub max_rank: u32,
    pub orientable_only: bool,
    /// Largest number of parallel edges between one axis and one chamber.
    pub max_multiplicity: u32,
}

impl EnumBounds {
    pub fn new(max_axes: u32, max_chambers: u32, max_rank: u32, orientable_only: bool) -> Self {
        EnumBounds {
            max_axes,
            max_chambers,
            max_rank,
            orientable_only,
            max_multiplicity: 1,
        }
    }

    pub fn with_multiplicity(self, max_multiplicity: u32) -> Self {
        EnumBounds {
            max_multiplicity,
            ..self
        }
    }
}

/// One code per isomorphism class of valid diagrams without parallel edges,
/// sorted.
pub fn enumerate_diagrams(
    max_axes: u32,
    max_chambers: u32,
    max_rank: u32,
    orientable_only: bool,
) -> Vec<CanonicalCode> {
    enumerate_with(&EnumBounds::new(max_axes, max_chambers, max_rank, orientable_only))
}

/// A chamber decoration together with its edge count towards each axis.
type Column = (ChamberData, Vec<u32>);

fn columns(axes: usize, bounds: &EnumBounds) -> Vec<Column> {
    let mut out = Vec::new();
    let orientations: &[bool] = if bounds.orientable_only {
        &[true]
    } else {
        &[false, true]
    };
    for rank in 2..=bounds.max_rank {
        for &orientable in orientations {
            let mut v = vec![0u32; axes];
            loop {
                let b: u32 = v.iter().sum();
                if b > 0 && surface_realizable(rank, b, orientable) {
                    out.push((ChamberData { rank, orientable }, v.clone()));
                }
                // odometer over [0, max_multiplicity]^axes
                let Some(i) = v.iter().position(|&x| x < bounds.max_multiplicity) else {
                    break;
                };
                v[i] += 1;
                v[..i].iter_mut().for_each(|x| *x = 0);
            }
        }
    }
    out
}

/// Every valid diagram is isomorphic to one built from a multiset of columns
/// whose axis degrees are non-increasing; candidates are generated that way
/// and deduplicated by canonical code.
pub fn enumerate_with(bounds: &EnumBounds) -> Vec<CanonicalCode> {
    let mut codes = BTreeSet::new();
    if bounds.max_axes == 0 || bounds.max_chambers == 0 || bounds.max_rank < 2 || bounds.max_multiplicity == 0 {
        return Vec::new();
    }
    let opts = ValidationOptions {
        orientable_only: bounds.orientable_only,
        ..Default::default()
    };
    for axes in 1..=bounds.max_axes as usize {
        let kinds = columns(axes, bounds);
        if kinds.is_empty() {
            continue;
        }
        // thickness needs three chambers per axis
        for chambers in 3..=bounds.max_chambers as usize {
            let mut pick = vec![0usize; chambers];
            'multisets: loop {
                if admissible(&kinds, &pick, axes) {
                    let d = assemble(&kinds, &pick, axes);
                    if validate_with(&d, opts).is_valid() {
                        let ix = Indexed::new(&d).expect("assembled diagrams are well formed");
                        codes.insert(canonical_form_indexed(&ix).code);
                    }
                }
                // next non-decreasing sequence
                let mut i = chambers;
                loop {
                    if i == 0 {
                        break 'multisets;
                    }
                    i -= 1;
                    if pick[i] + 1 < kinds.len() {
                        let next = pick[i] + 1;
                        pick[i..].iter_mut().for_each(|p| *p = next);
                        break;
                    }
                }
            }
        }
    }
    codes.into_iter().collect()
}

fn admissible(kinds: &[Column], pick: &[usize], axes: usize) -> bool {
    let mut degree = vec![0u32; axes];
    let mut distinct = vec![0u32; axes];
    for &k in pick {
        for (a, &m) in kinds[k].1.iter().enumerate() {
            degree[a] += m;
            distinct[a] += u32::from(m > 0);
        }
    }
    distinct.iter().all(|&n| n >= 3) && degree.windows(2).all(|w| w[0] >= w[1])
}

fn assemble(kinds: &[Column], pick: &[usize], axes: usize) -> Diagram {
    let mut d = Diagram::new();
    for a in 0..axes {
        d = d.with_axis(format!("v{a}"));
    }
    for (c, &k) in pick.iter().enumerate() {
        let (data, counts) = &kinds[k];
        let name = format!("w{c}");
        d = d.with_chamber(name.clone(), *data);
        for (a, &m) in counts.iter().enumerate() {
            for _ in 0..m {
                d = d.with_edge(format!("v{a}"), name.clone());
            }
        }
    }
    d
}
