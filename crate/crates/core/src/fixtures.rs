//! The two worked instances used throughout the tests and bundled with the CLI.

use crate::model::{Instance, SparsityPattern};

const INF: f64 = f64::INFINITY;

/// Six states, four candidate inputs, three candidate outputs.
/// The dynamics admit a spanning family of 2-cycles; optimum cost 30.
pub fn example1() -> Instance {
    let a = SparsityPattern::from_dense(&[
        [0u8, 1, 1, 0, 0, 0],
        [1, 0, 0, 1, 0, 0],
        [1, 0, 0, 0, 1, 0],
        [0, 1, 0, 0, 0, 1],
        [0, 0, 1, 0, 0, 1],
        [0, 0, 0, 1, 1, 0],
    ]);
    let b = SparsityPattern::from_dense(&[
        [1u8, 1, 0, 0],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 1],
    ]);
    let c = SparsityPattern::from_dense(&[
        [1u8, 1, 0, 0, 0, 0],
        [1, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 1, 1],
    ]);
    Instance::new(
        a,
        b,
        c,
        vec![10.0, 10.0, 20.0, 20.0],
        vec![15.0, 15.0, 50.0],
        vec![
            vec![5.0, INF, 25.0],
            vec![INF, 5.0, 25.0],
            vec![20.0, INF, 10.0],
            vec![INF, 20.0, 10.0],
        ],
    )
    .expect("example 1 is well formed")
}

/// Five states arranged as a star around state 2; no spanning cycle family
/// exists in the dynamics alone. Optimum cost 186.
pub fn example2() -> Instance {
    let a = SparsityPattern::from_dense(&[
        [0u8, 1, 0, 0, 0],
        [1, 0, 1, 1, 1],
        [0, 1, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 1, 0, 0, 0],
    ]);
    let b = SparsityPattern::from_dense(&[
        [0u8, 1, 0],
        [0, 0, 0],
        [0, 0, 1],
        [1, 0, 0],
        [0, 1, 1],
    ]);
    let c = SparsityPattern::from_dense(&[
        [1u8, 0, 0, 1, 0],
        [0, 0, 1, 1, 0],
        [0, 0, 0, 0, 1],
    ]);
    Instance::new(
        a,
        b,
        c,
        vec![5.0, 10.0, 10.0],
        vec![10.0, 10.0, 1.0],
        vec![
            vec![10.0, 10.0, INF],
            vec![100.0, INF, 30.0],
            vec![INF, 100.0, 30.0],
        ],
    )
    .expect("example 2 is well formed")
}
