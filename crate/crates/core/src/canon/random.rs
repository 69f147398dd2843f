use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{surface_realizable, validate_with, ChamberData, Diagram, ValidationOptions};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomOptions {
    pub axes: u32,
    pub chambers: u32,
    pub max_rank: u32,
    pub orientable_only: bool,
    /// Rejection attempts before giving up.
    pub attempts: u32,
}

impl RandomOptions {
    pub fn new(axes: u32, chambers: u32, max_rank: u32) -> Self {
        RandomOptions {
            axes,
            chambers,
            max_rank,
            orientable_only: false,
            attempts: 1000,
        }
    }
}

/// A valid diagram with exactly `axes` axes and `chambers` chambers, fully
/// determined by `seed`.
pub fn random_diagram(seed: u64, axes: u32, chambers: u32, max_rank: u32) -> Result<Diagram> {
    random_diagram_with(seed, &RandomOptions::new(axes, chambers, max_rank))
}

pub fn random_diagram_with(seed: u64, opts: &RandomOptions) -> Result<Diagram> {
    let infeasible = |why: &str| {
        Err(Error::Infeasible(format!(
            "no valid diagram with {} axes, {} chambers, rank <= {}: {why}",
            opts.axes, opts.chambers, opts.max_rank
        )))
    };
    if opts.axes == 0 {
        return infeasible("at least one axis is required");
    }
    if opts.chambers < 3 {
        return infeasible("every axis needs three distinct chambers");
    }
    if opts.max_rank < 2 {
        return infeasible("chamber ranks start at 2");
    }
    // a rank r chamber has at most r + 1 boundary components
    if u64::from(opts.chambers) * u64::from(opts.max_rank + 1) < 3 * u64::from(opts.axes) {
        return infeasible("not enough boundary components");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let validation = ValidationOptions {
        orientable_only: opts.orientable_only,
        ..Default::default()
    };
    for _ in 0..opts.attempts {
        if let Some(d) = attempt(&mut rng, opts) {
            if validate_with(&d, validation).is_valid() {
                return Ok(d);
            }
        }
    }
    infeasible(&format!("no success after {} attempts", opts.attempts))
}

fn attempt(rng: &mut ChaCha8Rng, opts: &RandomOptions) -> Option<Diagram> {
    let (na, nc) = (opts.axes as usize, opts.chambers as usize);
    let mut data = Vec::with_capacity(nc);
    let mut free = Vec::with_capacity(nc);
    for _ in 0..nc {
        let rank = rng.gen_range(2..=opts.max_rank);
        let orientable = opts.orientable_only || rng.gen_bool(0.5);
        let choices: Vec<u32> = (1..=rank + 1)
            .filter(|&b| surface_realizable(rank, b, orientable))
            .collect();
        data.push(ChamberData { rank, orientable });
        free.push(*choices.choose(rng)?);
    }
    if free.iter().sum::<u32>() < 3 * opts.axes {
        return None;
    }

    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut order: Vec<usize> = (0..na).collect();
    order.shuffle(rng);
    for &a in &order {
        let open: Vec<usize> = (0..nc).filter(|&c| free[c] > 0).collect();
        if open.len() < 3 {
            return None;
        }
        for &c in open.choose_multiple(rng, 3) {
            free[c] -= 1;
            edges.push((a, c));
        }
    }
    for (c, slots) in free.iter().enumerate() {
        for _ in 0..*slots {
            edges.push((rng.gen_range(0..na), c));
        }
    }
    edges.shuffle(rng);

    let mut d = Diagram::new();
    for a in 0..na {
        d = d.with_axis(format!("v{a}"));
    }
    for (c, &dc) in data.iter().enumerate() {
        d = d.with_chamber(format!("w{c}"), dc);
    }
    for (a, c) in edges {
        d = d.with_edge(format!("v{a}"), format!("w{c}"));
    }
    Some(d)
}

/// Renames every vertex to a fresh random name and shuffles the storage order
/// of axes, chambers and edges.
pub fn random_relabeling(d: &Diagram, seed: u64) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = HashSet::new();
    let mut fresh = |rng: &mut ChaCha8Rng| loop {
        let name = format!("n{}", rng.gen_range(0..1_000_000u32));
        if used.insert(name.clone()) {
            return name;
        }
    };
    let axis_map: HashMap<String, String> = d.axes.iter().map(|a| (a.clone(), fresh(&mut rng))).collect();
    let chamber_map: HashMap<String, String> = d.chambers.iter().map(|c| (c.name.clone(), fresh(&mut rng))).collect();
    let mut out = d.relabeled(&axis_map, &chamber_map);
    out.axes.shuffle(&mut rng);
    out.chambers.shuffle(&mut rng);
    out.edges.shuffle(&mut rng);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::validate;

    #[test]
    fn deterministic() {
        let a = random_diagram(7, 3, 6, 4).unwrap();
        let b = random_diagram(7, 3, 6, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.axes.len(), 3);
        assert_eq!(a.chambers.len(), 6);
    }

    #[test]
    fn samples_are_valid() {
        for seed in 0..1000 {
            let axes = 1 + (seed % 3) as u32;
            let d = random_diagram(seed, axes, 3 + (seed % 4) as u32, 2 + (seed % 3) as u32).unwrap();
            assert!(validate(&d).is_valid(), "seed {seed}");
        }
    }

    #[test]
    fn infeasible_parameters() {
        assert!(matches!(random_diagram(1, 1, 2, 3), Err(Error::Infeasible(_))));
        assert!(matches!(random_diagram(1, 0, 4, 3), Err(Error::Infeasible(_))));
        assert!(matches!(random_diagram(1, 5, 3, 2), Err(Error::Infeasible(_))));
    }

    #[test]
    fn orientable_only() {
        let mut opts = RandomOptions::new(2, 5, 4);
        opts.orientable_only = true;
        for seed in 0..50 {
            let d = random_diagram_with(seed, &opts).unwrap();
            assert!(d.chambers.iter().all(|c| c.data.orientable));
        }
    }

    #[test]
    fn relabeling_renames_everything() {
        let d = random_diagram(3, 2, 5, 3).unwrap();
        let r = random_relabeling(&d, 11);
        assert!(validate(&r).is_valid());
        assert!(r.axes.iter().all(|a| !d.axes.contains(a)));
        assert_eq!(r.edges.len(), d.edges.len());
    }
}
