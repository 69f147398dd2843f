//! Shared inputs for the benchmarks.

use amalgam::{examples, random_diagram, ChamberData, Diagram};

/// One axis glued once to each of `n` once-punctured tori: maximal symmetry.
pub fn star(n: usize) -> Diagram {
    let mut d = Diagram::new().with_axis("v");
    for i in 0..n {
        let name = format!("w{i}");
        d = d
            .with_chamber(name.clone(), ChamberData::orientable(2))
            .with_edge("v", name);
    }
    d
}

/// Named inputs of increasing size.
pub fn workload() -> Vec<(String, Diagram)> {
    let mut out = vec![
        ("tripod".to_string(), examples::tripod()),
        ("theta".to_string(), examples::theta()),
        ("star30".to_string(), star(30)),
    ];
    for (axes, chambers) in [(3, 8), (6, 16), (12, 40)] {
        let d = random_diagram(7, axes, chambers, 5).expect("feasible size");
        out.push((format!("random{axes}x{chambers}"), d));
    }
    out
}
