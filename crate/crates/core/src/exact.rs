//! Brute-force smallest quasi-kernels and kernels for small digraphs.
//!
//! Candidate sets are enumerated by increasing size, members in ascending
//! order, so the first hit is the lexicographically smallest optimum.
//! Coverage and adjacency live in `u64` masks.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{Digraph, VertexSet};

pub const MAX_ORACLE_N: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_n: usize,
    /// Search nodes visited before giving up.
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 24,
            max_nodes: 200_000_000,
            time_limit: None,
        }
    }
}

/// A minimum quasi-kernel; ties go to the lexicographically smallest set.
pub fn smallest_quasi_kernel(g: &Digraph, budget: &OracleBudget) -> Result<VertexSet, OracleError> {
    let covers: Vec<u64> = g.vertices().map(|v| mask_of(g.ball2(v).iter())).collect();
    let found = search(g, &covers, budget, 1)?;
    Ok(found.expect("every digraph has a quasi-kernel"))
}

/// A minimum kernel, or `None` when the digraph has no kernel.
pub fn smallest_kernel(
    g: &Digraph,
    budget: &OracleBudget,
) -> Result<Option<VertexSet>, OracleError> {
    let covers: Vec<u64> = g
        .vertices()
        .map(|v| mask_of(std::iter::once(v).chain(g.out_neighbors(v).iter().copied())))
        .collect();
    search(g, &covers, budget, 0)
}

pub fn quasi_kernel_number(g: &Digraph, budget: &OracleBudget) -> Result<usize, OracleError> {
    smallest_quasi_kernel(g, budget).map(|q| q.len())
}

fn mask_of(vertices: impl Iterator<Item = usize>) -> u64 {
    vertices.fold(0, |m, v| m | (1u64 << v))
}

fn search(
    g: &Digraph,
    covers: &[u64],
    budget: &OracleBudget,
    min_size: usize,
) -> Result<Option<VertexSet>, OracleError> {
    let n = g.n();
    if n > budget.max_n || n > MAX_ORACLE_N {
        return Err(OracleError::BudgetExceeded(format!(
            "n = {n} exceeds max_n = {}",
            budget.max_n.min(MAX_ORACLE_N)
        )));
    }
    if n == 0 {
        return Ok(Some(VertexSet::new(0)));
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let adjacent: Vec<u64> = g
        .vertices()
        .map(|v| mask_of(g.out_neighbors(v).iter().chain(g.in_neighbors(v)).copied()))
        .collect();
    // covered_by[u]: vertices whose cover set contains u.
    let mut covered_by = vec![0u64; n];
    for (v, &c) in covers.iter().enumerate() {
        for (u, slot) in covered_by.iter_mut().enumerate() {
            if c >> u & 1 == 1 {
                *slot |= 1 << v;
            }
        }
    }
    let mut search = Search {
        covers,
        adjacent: &adjacent,
        covered_by: &covered_by,
        all,
        n,
        max_cover: covers.iter().map(|c| c.count_ones()).max().unwrap_or(0),
        nodes: 0,
        budget,
        started: Instant::now(),
        chosen: Vec::new(),
    };
    for size in min_size..=n {
        if search.dfs(0, size, 0, 0)? {
            return Ok(Some(
                VertexSet::from_vertices(n, search.chosen.iter().copied()).expect("ids in range"),
            ));
        }
    }
    Ok(None)
}

struct Search<'a> {
    covers: &'a [u64],
    adjacent: &'a [u64],
    covered_by: &'a [u64],
    all: u64,
    n: usize,
    max_cover: u32,
    nodes: u64,
    budget: &'a OracleBudget,
    started: Instant,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn dfs(
        &mut self,
        next: usize,
        slots: usize,
        covered: u64,
        blocked: u64,
    ) -> Result<bool, OracleError> {
        if covered == self.all {
            return Ok(true);
        }
        if slots == 0 || next >= self.n {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(OracleError::BudgetExceeded(format!(
                "more than {} search nodes",
                self.budget.max_nodes
            )));
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(limit) = self.budget.time_limit {
                if self.started.elapsed() > limit {
                    return Err(OracleError::BudgetExceeded(format!("time limit {limit:?}")));
                }
            }
        }
        let uncovered = self.all & !covered;
        if (uncovered.count_ones() as usize) > slots * self.max_cover as usize {
            return Ok(false);
        }
        let available = self.all & !blocked & (u64::MAX << next);
        let mut rest = uncovered;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.covered_by[u] & available == 0 {
                return Ok(false);
            }
        }
        let mut candidates = available;
        while candidates != 0 {
            let c = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            self.chosen.push(c);
            let blocked_next = blocked | self.adjacent[c] | (1 << c);
            if self.dfs(c + 1, slots - 1, covered | self.covers[c], blocked_next)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}
