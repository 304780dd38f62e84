//! Tiny named instances used in tests, docs and the CLI examples.

use crate::graph::{Graph, Instance};
use crate::rat::Rat;
use std::collections::BTreeSet;

/// K2 with unit length, terminals {0, 1}.
pub fn fix_edge() -> Instance {
    let g = Graph::new(2, vec![(0, 1)]).unwrap();
    Instance::new(g, [0, 1].into_iter().collect(), vec![Rat::one()]).unwrap()
}

/// K3 with unit lengths, no terminals (closed-tour regime).
pub fn fix_tri_tour() -> Instance {
    let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    Instance::new(g, BTreeSet::new(), vec![Rat::one(); 3]).unwrap()
}

/// K3 with unit lengths, terminals {0, 2}. Edges: e0=01, e1=12, e2=02.
pub fn fix_tri_path() -> Instance {
    let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    Instance::new(g, [0, 2].into_iter().collect(), vec![Rat::one(); 3]).unwrap()
}

/// 4-cycle v0v1v2v3 with unit lengths, no terminals.
/// Edges: e0=v0v1, e1=v1v2, e2=v2v3, e3=v3v0.
pub fn fix_c4() -> Instance {
    let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    Instance::new(g, BTreeSet::new(), vec![Rat::one(); 4]).unwrap()
}

/// All four fixtures with their conventional names.
pub fn all() -> Vec<(&'static str, Instance)> {
    vec![
        ("edge", fix_edge()),
        ("tri-tour", fix_tri_tour()),
        ("tri-path", fix_tri_path()),
        ("c4", fix_c4()),
    ]
}
