//! Naive bitmask oracles shared by the integration tests. Nothing here calls
//! into the library's own algorithms.

#![allow(dead_code)]

use domclose::{GroundSet, Operator, Subset};
use proptest::prelude::*;

pub fn full(n: usize) -> u32 {
    (1u32 << n) - 1
}

pub fn subset(a: u32, b: u32) -> bool {
    a & !b == 0
}

/// Expansive and monotone by construction: each set picks up its own random
/// extra plus everything its subsets picked up.
pub fn dominating_table(n: usize, extras: &[u32]) -> Vec<u32> {
    let mut t = vec![0u32; 1 << n];
    for y in 0..(1u32 << n) {
        let mut img = y | (extras[y as usize] & full(n));
        for i in 0..n {
            if y & (1 << i) != 0 {
                img |= t[(y & !(1 << i)) as usize];
            }
        }
        t[y as usize] = img;
    }
    t
}

/// Union of singleton images; `∅ ↦ ∅`.
pub fn extended_table(n: usize, singles: &[u32]) -> Vec<u32> {
    (0..(1u32 << n))
        .map(|y| {
            (0..n)
                .filter(|i| y & (1 << i) != 0)
                .fold(0, |acc, i| acc | singles[i] | (1 << i))
        })
        .collect()
}

pub fn is_monotone(t: &[u32]) -> bool {
    let m = t.len() as u32;
    (0..m).all(|x| (0..m).all(|y| !subset(x, y) || subset(t[x as usize], t[y as usize])))
}

pub fn is_expansive(t: &[u32]) -> bool {
    (0..t.len()).all(|y| subset(y as u32, t[y]))
}

pub fn is_idempotent(t: &[u32]) -> bool {
    (0..t.len()).all(|y| t[t[y] as usize] == t[y])
}

pub fn is_closure(t: &[u32]) -> bool {
    is_expansive(t) && is_monotone(t) && is_idempotent(t)
}

/// The dominated closure straight from its definition: the union of every
/// `Z ⊆ Y.Δ` with `Z.Δ ⊆ Y.Δ`.
pub fn phi(t: &[u32]) -> Vec<u32> {
    (0..t.len())
        .map(|y| {
            let region = t[y];
            (0..t.len() as u32)
                .filter(|&z| subset(z, region) && subset(t[z as usize], region))
                .fold(0, |acc, z| acc | z)
        })
        .collect()
}

pub fn operator(n: usize, t: &[u32]) -> Operator {
    let g = GroundSet::letters(n).unwrap();
    Operator::table(&g, t.iter().map(|&b| Subset::from_bits(b)).collect()).unwrap()
}

pub fn table_of(op: &Operator) -> Vec<u32> {
    op.images().unwrap().iter().map(|y| y.bits()).collect()
}

/// Intersection-closed families on `n` points that contain the whole set.
pub fn moore_families(n: usize) -> Vec<Vec<u32>> {
    let all = full(n);
    let others: Vec<u32> = (0..all).collect();
    let mut out = Vec::new();
    for pick in 0u64..(1u64 << others.len()) {
        let mut fam: Vec<u32> = vec![all];
        fam.extend(
            others
                .iter()
                .enumerate()
                .filter(|(i, _)| pick & (1 << i) != 0)
                .map(|(_, &y)| y),
        );
        if fam.iter().all(|&a| fam.iter().all(|&b| fam.contains(&(a & b)))) {
            out.push(fam);
        }
    }
    out
}

/// Closure table of a Moore family: the least member containing each set.
pub fn closure_of_family(n: usize, fam: &[u32]) -> Vec<u32> {
    (0..(1u32 << n))
        .map(|y| fam.iter().filter(|&&c| subset(y, c)).fold(full(n), |acc, &c| acc & c))
        .collect()
}

pub fn arb_dominating(max_n: usize) -> impl Strategy<Value = (usize, Vec<u32>)> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(sparse_mask(n), 1 << n)
            .prop_map(move |extras| (n, dominating_table(n, &extras)))
    })
}

pub fn arb_extended(max_n: usize) -> impl Strategy<Value = (usize, Vec<u32>)> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(sparse_mask(n), n)
            .prop_map(move |singles| (n, extended_table(n, &singles)))
    })
}

pub fn arb_table(max_n: usize) -> impl Strategy<Value = (usize, Vec<u32>)> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0..(1u32 << n), 1 << n).prop_map(move |t| (n, t))
    })
}

pub fn arb_expansive(max_n: usize) -> impl Strategy<Value = (usize, Vec<u32>)> {
    arb_table(max_n).prop_map(|(n, t)| (n, t.iter().enumerate().map(|(y, &b)| b | y as u32).collect()))
}

/// Mostly small masks, so that images are not all the whole set.
fn sparse_mask(n: usize) -> impl Strategy<Value = u32> {
    let all = full(n);
    prop_oneof![
        3 => Just(0u32),
        2 => (0..n).prop_map(|i| 1u32 << i),
        1 => 0..=all,
    ]
}
