//! The classical recursive existence procedure: take `v`, solve
//! `D - N⁺[v]`, and add `v` back unless an in-neighbour was already chosen.
//! Works on any digraph, sources included.

use super::phase::PickPolicy;
use crate::digraph::{Digraph, Vertex, VertexSet};

pub fn chvatal_lovasz(g: &Digraph, policy: PickPolicy) -> VertexSet {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut out_deg: Vec<usize> = g.vertices().map(|v| g.out_degree(v)).collect();
    let mut picks = Vec::new();
    let mut cursor = 0;

    let kill = |x: Vertex, alive: &mut Vec<bool>, out_deg: &mut Vec<usize>| {
        if alive[x] {
            alive[x] = false;
            for &w in g.in_neighbors(x) {
                out_deg[w] -= 1;
            }
        }
    };

    loop {
        let next = match policy {
            PickPolicy::LowestId => {
                while cursor < n && !alive[cursor] {
                    cursor += 1;
                }
                (cursor < n).then_some(cursor)
            }
            PickPolicy::MaxOutDegree => g
                .vertices()
                .filter(|&v| alive[v])
                .max_by_key(|&v| (out_deg[v], std::cmp::Reverse(v))),
        };
        let Some(v) = next else { break };
        picks.push(v);
        kill(v, &mut alive, &mut out_deg);
        for &w in g.out_neighbors(v) {
            kill(w, &mut alive, &mut out_deg);
        }
    }

    let mut q = VertexSet::new(n);
    for &v in picks.iter().rev() {
        if !g.in_neighbors(v).iter().any(|&w| q.contains(w)) {
            q.insert(v);
        }
    }
    q
}
