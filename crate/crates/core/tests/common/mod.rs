#![allow(dead_code)]

use proptest::prelude::*;
use qkernel::{Digraph, VertexSet};

/// Any loop-free digraph on `1..=max_n` vertices.
pub fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=n * n).prop_map(move |pairs| {
            Digraph::build(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap()
        })
    })
}

/// Loop-free digraph where vertex `i` always has the in-edge `(i+1) mod n → i`.
pub fn sourceless(max_n: usize) -> impl Strategy<Value = Digraph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=2 * n).prop_map(move |pairs| {
            let ring = (0..n).map(|i| ((i + 1) % n, i));
            Digraph::build(n, ring.chain(pairs.into_iter().filter(|(u, v)| u != v))).unwrap()
        })
    })
}

pub fn matrix(g: &Digraph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for (u, v) in g.edges() {
        a[u][v] = true;
    }
    a
}

/// Reach within two steps, by matrix lookups only.
pub fn naive_ball2(a: &[Vec<bool>], v: usize) -> Vec<usize> {
    let n = a.len();
    (0..n)
        .filter(|&x| x == v || a[v][x] || (0..n).any(|y| a[v][y] && a[y][x]))
        .collect()
}

pub fn naive_is_quasi_kernel(g: &Digraph, q: &VertexSet) -> bool {
    let a = matrix(g);
    let members: Vec<usize> = q.iter().collect();
    let independent = members.iter().all(|&x| members.iter().all(|&y| !a[x][y]));
    let mut covered = vec![false; g.n()];
    for &s in &members {
        for x in naive_ball2(&a, s) {
            covered[x] = true;
        }
    }
    independent && covered.into_iter().all(|c| c)
}

/// Smallest quasi-kernel size by trying every subset.
pub fn brute_force_qk_number(g: &Digraph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|&mask| {
            let set = VertexSet::from_vertices(n, (0..n).filter(|&i| mask >> i & 1 == 1)).unwrap();
            naive_is_quasi_kernel(g, &set)
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}
