//! Small named diagrams used throughout the docs, tests and benches.

use crate::diagram::{ChamberData, Diagram};

/// One axis glued to three once-punctured tori.
pub fn tripod() -> Diagram {
    tripod_of([ChamberData::orientable(2); 3])
}

/// One axis glued to three once-punctured Klein bottles.
pub fn nonorientable_tripod() -> Diagram {
    tripod_of([ChamberData::nonorientable(2); 3])
}

/// One axis `v` glued once to each of the chambers `w1`, `w2`, `w3`.
pub fn tripod_of(data: [ChamberData; 3]) -> Diagram {
    let mut d = Diagram::new().with_axis("v");
    for (i, c) in data.into_iter().enumerate() {
        let name = format!("w{}", i + 1);
        d = d.with_chamber(name.clone(), c).with_edge("v", name);
    }
    d
}

/// Two axes `u`, `v` and three twice-punctured tori, each glued to both axes.
pub fn theta() -> Diagram {
    theta_of([3, 3, 3])
}

pub fn theta_of(ranks: [u32; 3]) -> Diagram {
    let mut d = Diagram::new().with_axis("u").with_axis("v");
    for (i, r) in ranks.into_iter().enumerate() {
        let name = format!("w{}", i + 1);
        d = d
            .with_chamber(name.clone(), ChamberData::orientable(r))
            .with_edge("u", name.clone())
            .with_edge("v", name);
    }
    d
}
