//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits non-zero if any fails.

mod support;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use amalgam::{
    abelianization, are_isomorphic, axis_degree, betti_numbers, brute_force_isomorphic, build_cover_tree,
    canonical_code, components_after_removal, diagram_of, enumerate_diagrams, enumerate_with, euler_characteristic,
    examples, find_isomorphism, limit_presentation, maximal_transitive_sets, parse_gaf, print_gaf, random_diagram,
    random_relabeling, realize, surface_realizable, ChamberData, Diagram, EnumBounds, NodeKind, Word,
};
use support::cells::glued_space;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Valid diagrams with at most 2 axes, 5 chambers and rank 3: every simple
/// class in both profiles plus the orientable classes with doubled edges,
/// each once as decoded and once under a random relabeling.
fn sweep_pool() -> Vec<Diagram> {
    let mut codes: BTreeSet<_> = enumerate_diagrams(2, 5, 3, false).into_iter().collect();
    codes.extend(enumerate_diagrams(2, 5, 3, true));
    codes.extend(enumerate_with(&EnumBounds::new(2, 5, 3, true).with_multiplicity(2)));
    let mut pool = Vec::new();
    for (i, code) in codes.iter().enumerate() {
        let d = code.decode().expect("enumerated codes decode");
        pool.push(random_relabeling(&d, 0x5eed ^ i as u64));
        pool.push(d);
    }
    pool
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn oracle_equivalence(pool: &[Diagram], oracle: &mut Vec<Vec<bool>>) -> Outcome {
    let start = Instant::now();
    let mut pairs = 0usize;
    let mut positive = 0usize;
    let mut mismatches = Vec::new();
    *oracle = vec![Vec::new(); pool.len()];
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            let fast = are_isomorphic(&pool[i], &pool[j]).map_err(|e| e.to_string())?;
            let slow = brute_force_isomorphic(&pool[i], &pool[j]).map_err(|e| e.to_string())?;
            oracle[i].push(slow);
            pairs += 1;
            positive += usize::from(slow);
            if fast != slow {
                mismatches.push((i, j));
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(mismatches.is_empty(), || {
        format!(
            "{} discrepancies, first at pool pair {:?}",
            mismatches.len(),
            mismatches[0]
        )
    })?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {}", secs(elapsed)))?;
    Ok(format!(
        "{} diagrams, {pairs} pairs ({positive} isomorphic), 0 discrepancies, {}",
        pool.len(),
        secs(elapsed)
    ))
}

fn relabel_invariance() -> Outcome {
    let mut failures = 0;
    for seed in 0..1000u64 {
        let axes = 1 + (seed % 3) as u32;
        let chambers = 3 + (seed % 6) as u32;
        let d = random_diagram(seed, axes, chambers, 2 + (seed % 4) as u32).map_err(|e| e.to_string())?;
        let r = random_relabeling(&d, seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        if canonical_code(&d).map_err(|e| e.to_string())? != canonical_code(&r).map_err(|e| e.to_string())? {
            failures += 1;
        }
    }
    ensure(failures == 0, || format!("{failures} of 1000 codes changed"))?;
    Ok("1000 pairs, 0 failures".into())
}

/// All one-axis, three-chamber diagrams without parallel edges, generated
/// directly and collapsed with the brute-force oracle.
fn brute_force_class_count(orientable_only: bool) -> usize {
    let mut types = Vec::new();
    for rank in 2..=3 {
        for orientable in [true, false] {
            let k = rank as i64; // rank - b + 1 with b = 1
            let ok = if orientable { k % 2 == 0 } else { k >= 1 };
            if ok && (orientable || !orientable_only) {
                types.push(ChamberData { rank, orientable });
            }
        }
    }
    let mut classes: Vec<Diagram> = Vec::new();
    for &x in &types {
        for &y in &types {
            for &z in &types {
                let d = examples::tripod_of([x, y, z]);
                if !classes.iter().any(|c| brute_force_isomorphic(c, &d).unwrap()) {
                    classes.push(d);
                }
            }
        }
    }
    classes.len()
}

fn enumeration_counts() -> Outcome {
    let or = enumerate_diagrams(1, 3, 3, true).len();
    let all = enumerate_diagrams(1, 3, 3, false).len();
    let (or_bf, all_bf) = (brute_force_class_count(true), brute_force_class_count(false));
    ensure(or == 1 && all == 10, || {
        format!("enumerated {or} and {all}, expected 1 and 10")
    })?;
    ensure(or_bf == 1 && all_bf == 10, || {
        format!("brute force found {or_bf} and {all_bf}")
    })?;
    Ok("orientable-only 1 class, unrestricted 10 classes; brute force agrees".into())
}

fn tripod_instance() -> Outcome {
    let d = examples::tripod();
    let err = |e: amalgam::Error| e.to_string();
    let chi = euler_characteristic(&d).map_err(err)?;
    ensure(chi == -3, || format!("chi = {chi}"))?;
    let p = limit_presentation(&d, true).map_err(err)?;
    ensure(p.generators.len() == 6 && p.relators.len() == 2, || {
        format!("presentation {p}")
    })?;
    let comm = |w: &str| Word::commutator(&Word::generator(format!("{w}.a1")), &Word::generator(format!("{w}.b1")));
    let expected = [
        comm("w1").mul(&comm("w2").inverse()),
        comm("w1").mul(&comm("w3").inverse()),
    ];
    ensure(p.relators.iter().zip(&expected).all(|(r, e)| r.same_relator(e)), || {
        format!("relators {p}")
    })?;
    let h1 = abelianization(&d).map_err(err)?;
    ensure(h1.invariant_factors.is_empty() && h1.free_rank == 6, || {
        format!("H1 {h1:?}")
    })?;
    let b = betti_numbers(&d).map_err(err)?;
    ensure(b.b2 == 2, || format!("b2 = {}", b.b2))?;
    ensure(1 - b.b1 as i64 + b.b2 as i64 == chi, || "1 - b1 + b2 != chi".into())?;
    Ok(format!("chi -3, {p}, H1 = Z^6, b2 = 2, 1 - 6 + 2 = -3"))
}

fn nonorientable_tripod() -> Outcome {
    let d = examples::nonorientable_tripod();
    let h1 = abelianization(&d).map_err(|e| e.to_string())?;
    ensure(h1.invariant_factors == [2, 2] && h1.free_rank == 4, || {
        format!("H1 {h1:?}")
    })?;
    let b2 = betti_numbers(&d).map_err(|e| e.to_string())?.b2;
    ensure(b2 == 0, || format!("b2 = {b2}"))?;
    Ok("H1 = Z^4 + Z/2 + Z/2, b2 = 0".into())
}

fn euler_sweep(pool: &[Diagram]) -> Outcome {
    let mut checked = 0;
    for d in pool.iter().filter(|d| d.chambers.iter().all(|c| c.data.orientable)) {
        let b = betti_numbers(d).map_err(|e| e.to_string())?;
        let expected: i64 = d.chambers.iter().map(|c| 1 - c.data.rank as i64).sum();
        let got = 1 - b.b1 as i64 + b.b2 as i64;
        ensure(got == expected, || format!("{got} != {expected} for\n{}", print_gaf(d)))?;
        checked += 1;
    }
    Ok(format!("{checked} all-orientable diagrams, 0 exceptions"))
}

fn homology_instances() -> Vec<(&'static str, Diagram)> {
    let doubled = {
        let mut d = examples::tripod().with_edge("v", "w1");
        d.chambers[0].data.rank = 3;
        d
    };
    let mixed = Diagram::new()
        .with_axis("u")
        .with_axis("v")
        .with_chamber("p", ChamberData::orientable(2))
        .with_chamber("q", ChamberData::nonorientable(2))
        .with_chamber("r", ChamberData::orientable(3))
        .with_chamber("s", ChamberData::nonorientable(3))
        .with_edge("u", "p")
        .with_edge("u", "q")
        .with_edge("u", "r")
        .with_edge("v", "r")
        .with_edge("v", "s")
        .with_edge("v", "q");
    vec![
        ("tripod", examples::tripod()),
        ("nonorientable tripod", examples::nonorientable_tripod()),
        ("theta", examples::theta()),
        ("doubled edge", doubled),
        ("mixed two-axis", mixed),
    ]
}

fn homology_oracle() -> Outcome {
    let mut report = Vec::new();
    for (name, d) in homology_instances() {
        let b = betti_numbers(&d).map_err(|e| e.to_string())?;
        let oracle = glued_space(&d).betti();
        let ours = [b.b0 as usize, b.b1 as usize, b.b2 as usize];
        ensure(ours == oracle, || {
            format!("{name}: kernel formula {ours:?}, cell complex {oracle:?}")
        })?;
        report.push(format!("{name} {ours:?}"));
    }
    Ok(format!("{} instances agree: {}", report.len(), report.join(", ")))
}

fn round_trips() -> Outcome {
    for seed in 0..500u64 {
        let d = random_diagram(
            seed,
            1 + (seed % 3) as u32,
            3 + (seed % 5) as u32,
            2 + (seed % 3) as u32,
        )
        .map_err(|e| e.to_string())?;
        let back = parse_gaf(print_gaf(&d).as_bytes()).map_err(|e| e.to_string())?;
        ensure(canonical_code(&back).ok() == canonical_code(&d).ok(), || {
            format!("print/parse changed seed {seed}")
        })?;
    }
    let mut codes = enumerate_diagrams(1, 3, 3, false);
    codes.extend(enumerate_diagrams(1, 3, 3, true));
    for code in &codes {
        let d = code.decode().map_err(|e| e.to_string())?;
        let back = diagram_of(&realize(&d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(canonical_code(&back).ok().as_ref() == Some(code), || {
            format!("realize changed {code}")
        })?;
    }
    Ok(format!(
        "500 parse/print, {} realize/recover, codes preserved",
        codes.len()
    ))
}

fn cover_shadows() -> Outcome {
    let start = Instant::now();
    let mut codes: BTreeSet<_> = enumerate_diagrams(1, 3, 3, false).into_iter().collect();
    codes.extend(enumerate_diagrams(1, 3, 3, true));
    let mut trees = 0;
    let mut interior = 0;
    for code in &codes {
        let d = code.decode().map_err(|e| e.to_string())?;
        for root in &d.axes {
            for depth in 1..=5 {
                for fanout in 1..=3 {
                    let t = build_cover_tree(&d, root, depth, fanout).map_err(|e| e.to_string())?;
                    trees += 1;
                    let sets = maximal_transitive_sets(&t);
                    let family = t.chamber_neighbor_sets();
                    // chamber nodes with two or more geodesic neighbors are in
                    // bijection with the maximal sets
                    let resolved: Vec<&BTreeSet<usize>> = family.iter().filter(|s| s.len() >= 2).collect();
                    let distinct: BTreeSet<&BTreeSet<usize>> = resolved.iter().copied().collect();
                    ensure(distinct.len() == resolved.len(), || {
                        format!("{code} depth {depth} fanout {fanout}: repeated chamber set")
                    })?;
                    // maximal members of the whole family
                    let mut maximal: Vec<BTreeSet<usize>> = family
                        .iter()
                        .filter(|s| !family.iter().any(|o| o.len() > s.len() && s.is_subset(o)))
                        .cloned()
                        .collect::<BTreeSet<_>>()
                        .into_iter()
                        .collect();
                    if family.is_empty() {
                        // a lone root lift is its own maximal set
                        maximal = vec![BTreeSet::from([0])];
                    }
                    maximal.sort();
                    ensure(sets == maximal, || {
                        format!("{code} depth {depth} fanout {fanout}: {sets:?} vs {maximal:?}")
                    })?;
                    ensure(resolved.iter().all(|s| sets.contains(s)), || {
                        format!("{code} depth {depth} fanout {fanout}: chamber set not maximal")
                    })?;
                    for n in t.nodes_of(NodeKind::Geodesic).filter(|n| n.level + 1 < depth) {
                        let k = components_after_removal(&t, n.id).map_err(|e| e.to_string())?;
                        let deg = axis_degree(&d, &n.label).map_err(|e| e.to_string())? as usize;
                        ensure(k == deg, || {
                            format!("{code}: node {} splits into {k}, degree {deg}", n.id)
                        })?;
                        interior += 1;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {}", secs(elapsed)))?;
    Ok(format!(
        "{trees} trees, {interior} interior geodesic nodes, 0 failures, {}",
        secs(elapsed)
    ))
}

fn witness_validity(pool: &[Diagram], oracle: &[Vec<bool>]) -> Outcome {
    let (mut verified, mut absent) = (0, 0);
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            let expected = oracle[i][j - i - 1];
            match find_isomorphism(&pool[i], &pool[j]).map_err(|e| e.to_string())? {
                Some(w) => {
                    ensure(w.verify(&pool[i], &pool[j]), || {
                        format!("bad witness for pool pair ({i}, {j})")
                    })?;
                    ensure(expected, || format!("witness for non-isomorphic pair ({i}, {j})"))?;
                    verified += 1;
                }
                None => {
                    ensure(!expected, || format!("missed isomorphism for pool pair ({i}, {j})"))?;
                    absent += 1;
                }
            }
        }
    }
    Ok(format!("{verified} witnesses verified, {absent} absences confirmed"))
}

fn main() -> ExitCode {
    // the sweep itself is a fixed property of the enumeration; keep it sane
    assert!(surface_realizable(2, 1, true) && !surface_realizable(3, 1, true));
    let pool = sweep_pool();
    let mut oracle = Vec::new();
    // the kernel formula is checked against the cell complex before the sweep
    let homology = homology_oracle();
    let mut results: Vec<(u32, &str, Outcome)> = vec![
        (1, "oracle equivalence", oracle_equivalence(&pool, &mut oracle)),
        (2, "relabel invariance", relabel_invariance()),
        (3, "enumeration counts", enumeration_counts()),
        (4, "tripod of once-punctured tori", tripod_instance()),
        (5, "nonorientable tripod", nonorientable_tripod()),
        (7, "second Betti number oracle", homology),
        (6, "Euler consistency sweep", euler_sweep(&pool)),
        (8, "round trips", round_trips()),
        (9, "cover-tree shadows", cover_shadows()),
    ];
    let witnesses = if oracle.len() == pool.len() {
        witness_validity(&pool, &oracle)
    } else {
        Err("oracle table unavailable".into())
    };
    results.push((10, "witness validity", witnesses));
    results.sort_by_key(|r| r.0);

    let mut failed = 0;
    for (n, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
