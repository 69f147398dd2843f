//! Exhaustive isomorphism search. Used as ground truth for the canonical
//! codes, so it shares nothing with the refinement search.

use std::collections::BTreeMap;

use crate::diagram::{require_valid, Diagram, Indexed};
use crate::error::{Error, Result};

use super::IsoWitness;

pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 12;

pub fn brute_force_isomorphic(d1: &Diagram, d2: &Diagram) -> Result<bool> {
    brute_force_isomorphic_bounded(d1, d2, DEFAULT_BRUTE_FORCE_BOUND)
}

pub fn brute_force_isomorphic_bounded(d1: &Diagram, d2: &Diagram, bound: usize) -> Result<bool> {
    Ok(brute_force_isomorphism_bounded(d1, d2, bound)?.is_some())
}

/// First decoration- and multiplicity-preserving bijection found by trying
/// every axis permutation and every decoration-respecting chamber bijection.
pub fn brute_force_isomorphism(d1: &Diagram, d2: &Diagram) -> Result<Option<IsoWitness>> {
    brute_force_isomorphism_bounded(d1, d2, DEFAULT_BRUTE_FORCE_BOUND)
}

fn checked<'a>(d: &'a Diagram, bound: usize) -> Result<Indexed<'a>> {
    let ix = require_valid(d)?;
    let vertices = ix.num_axes() + ix.num_chambers();
    if vertices > bound {
        return Err(Error::SizeBound { vertices, limit: bound });
    }
    Ok(ix)
}

fn brute_force_isomorphism_bounded(d1: &Diagram, d2: &Diagram, bound: usize) -> Result<Option<IsoWitness>> {
    let ix1 = checked(d1, bound)?;
    let ix2 = checked(d2, bound)?;
    let mut found = None;
    for_each_isomorphism(&ix1, &ix2, &mut |axes, chambers| {
        found = Some(IsoWitness {
            axis_map: axes
                .iter()
                .enumerate()
                .map(|(i, &j)| (ix1.axis_name(i).to_string(), ix2.axis_name(j).to_string()))
                .collect::<BTreeMap<_, _>>(),
            chamber_map: chambers
                .iter()
                .enumerate()
                .map(|(i, &j)| (ix1.chamber_name(i).to_string(), ix2.chamber_name(j).to_string()))
                .collect(),
        });
        false
    });
    Ok(found)
}

/// Counts automorphisms by enumerating all of them.
pub fn brute_force_automorphism_count(d: &Diagram) -> Result<u128> {
    let ix = checked(d, DEFAULT_BRUTE_FORCE_BOUND)?;
    let mut count = 0u128;
    for_each_isomorphism(&ix, &ix, &mut |_, _| {
        count += 1;
        true
    });
    Ok(count)
}

/// Calls `visit` with every isomorphism `(axis map, chamber map)` until it
/// returns `false`.
fn for_each_isomorphism(ix1: &Indexed<'_>, ix2: &Indexed<'_>, visit: &mut dyn FnMut(&[usize], &[usize]) -> bool) {
    let (a, c) = (ix1.num_axes(), ix1.num_chambers());
    if a != ix2.num_axes() || c != ix2.num_chambers() || ix1.edges.len() != ix2.edges.len() {
        return;
    }
    let m1 = ix1.multiplicities();
    let m2 = ix2.multiplicities();
    let mut axis_maps = Vec::new();
    permutations(a, &mut Vec::new(), &mut vec![false; a], &mut axis_maps);

    struct Ctx<'a> {
        ix1: &'a Indexed<'a>,
        ix2: &'a Indexed<'a>,
        m1: &'a [Vec<u32>],
        m2: &'a [Vec<u32>],
        axes: &'a [usize],
    }

    // returns false to stop
    fn assign(
        ctx: &Ctx<'_>,
        chambers: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize], &[usize]) -> bool,
    ) -> bool {
        let i = chambers.len();
        if i == ctx.ix1.num_chambers() {
            let ok = (0..ctx.axes.len()).all(|x| (0..i).all(|y| ctx.m1[x][y] == ctx.m2[ctx.axes[x]][chambers[y]]));
            return !ok || visit(ctx.axes, chambers);
        }
        for j in 0..used.len() {
            if used[j] || ctx.ix1.data(i) != ctx.ix2.data(j) {
                continue;
            }
            used[j] = true;
            chambers.push(j);
            let go_on = assign(ctx, chambers, used, visit);
            chambers.pop();
            used[j] = false;
            if !go_on {
                return false;
            }
        }
        true
    }

    for axes in &axis_maps {
        let ctx = Ctx {
            ix1,
            ix2,
            m1: &m1,
            m2: &m2,
            axes,
        };
        if !assign(&ctx, &mut Vec::with_capacity(c), &mut vec![false; c], visit) {
            return;
        }
    }
}

fn permutations(n: usize, prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for j in 0..n {
        if !used[j] {
            used[j] = true;
            prefix.push(j);
            permutations(n, prefix, used, out);
            prefix.pop();
            used[j] = false;
        }
    }
}
