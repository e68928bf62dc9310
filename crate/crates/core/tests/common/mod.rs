#![allow(dead_code)]

use designlab::{Block, IncidenceSystem};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Laplace expansion along the first row. Exponential; only for the small
/// matrices the tests use.
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::from(0);
    for j in 0..n {
        if m[0][j] == BigInt::from(0) {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn mask_system(v: usize, masks: &[u32]) -> IncidenceSystem {
    let blocks = masks
        .iter()
        .map(|&m| Block::new((0..v).filter(|&i| m >> i & 1 == 1)).unwrap())
        .collect();
    IncidenceSystem::new(v, blocks).unwrap()
}

/// Random systems with `v <= 6` and `b <= 6`; blocks may repeat or be
/// empty.
pub fn arb_system() -> impl Strategy<Value = IncidenceSystem> {
    (0usize..=6).prop_flat_map(|v| {
        prop::collection::vec(0u32..(1u32 << v), 0..=6).prop_map(move |masks| mask_system(v, &masks))
    })
}

pub fn square_int_matrix(max_dim: usize, entry: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim).prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(entry.clone(), n), n))
}
