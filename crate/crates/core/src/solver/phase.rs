//! One greedy phase: remove `N⁺[v] ∪ N⁺[S(v)]`, then keep taking sources of
//! the remainder until it is sourceless.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::witness::{require_sourceless, Probe, WitnessCase};
use super::SolveError;
use crate::digraph::{Digraph, IdMap, Vertex, VertexSet};

/// How the loop (and the baseline) pick among several candidates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PickPolicy {
    #[default]
    LowestId,
    /// Largest current out-degree, ties to the lowest id.
    MaxOutDegree,
}

/// How the witness of a phase was chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Selection {
    /// Given directly to [`phase`].
    Given,
    Scan,
    Climb {
        hops: Vec<Vertex>,
    },
    /// The climb stalled and a full scan found the witness.
    ClimbThenScan {
        hops: Vec<Vertex>,
    },
    /// No vertex passed; the one with the smallest deficit was used.
    Deficit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseTrace {
    pub witness: Vertex,
    /// Vertex count of the graph the phase ran on.
    pub n_before: usize,
    pub s_size: usize,
    pub reach: usize,
    pub case: WitnessCase,
    /// `|N⁺[v] ∪ N⁺[S(v)]|`.
    pub initial_removed: usize,
    pub vertices_removed: usize,
    /// Vertices put into the kernel part: `S(v)` plus one per loop iteration.
    pub k_additions: usize,
    pub loop_iterations: usize,
    pub v_added_at_reconstruction: bool,
    pub condition_held: bool,
    pub selection: Selection,
    /// Kernel part in the ids of the solved graph.
    pub additions: Vec<Vertex>,
}

#[derive(Debug, Clone)]
pub struct PhaseOutcome {
    pub kernel_part: Vec<Vertex>,
    pub rest: Digraph,
    pub id_map: IdMap,
    pub trace: PhaseTrace,
}

/// Runs the phase at `v` on a sourceless graph. The remainder is returned
/// re-indexed; the final "add `v` unless dominated" step is left to the caller.
pub fn phase(g: &Digraph, v: Vertex, pick: PickPolicy) -> Result<PhaseOutcome, SolveError> {
    require_sourceless(g)?;
    if v >= g.n() {
        return Err(SolveError::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    Ok(run_phase(g, &mut Probe::new(g), v, pick))
}

struct Remainder<'g> {
    g: &'g Digraph,
    alive: Vec<bool>,
    in_deg: Vec<usize>,
    out_deg: Vec<usize>,
    sources: BTreeSet<Vertex>,
    isolated: Vec<Vertex>,
    removed: usize,
}

impl<'g> Remainder<'g> {
    fn new(g: &'g Digraph) -> Self {
        Remainder {
            g,
            alive: vec![true; g.n()],
            in_deg: g.vertices().map(|v| g.in_degree(v)).collect(),
            out_deg: g.vertices().map(|v| g.out_degree(v)).collect(),
            sources: BTreeSet::new(),
            isolated: Vec::new(),
            removed: 0,
        }
    }

    fn delete(&mut self, x: Vertex) {
        if !self.alive[x] {
            return;
        }
        self.alive[x] = false;
        self.removed += 1;
        self.sources.remove(&x);
        for &y in self.g.out_neighbors(x) {
            if !self.alive[y] {
                continue;
            }
            self.in_deg[y] -= 1;
            if self.in_deg[y] == 0 {
                if self.out_deg[y] == 0 {
                    self.isolated.push(y);
                } else {
                    self.sources.insert(y);
                }
            }
        }
        for &y in self.g.in_neighbors(x) {
            if !self.alive[y] {
                continue;
            }
            self.out_deg[y] -= 1;
            if self.out_deg[y] == 0 && self.in_deg[y] == 0 {
                self.sources.remove(&y);
                self.isolated.push(y);
            }
        }
    }

    fn delete_closed_out(&mut self, x: Vertex) {
        let outs: Vec<Vertex> = self
            .g
            .out_neighbors(x)
            .iter()
            .copied()
            .filter(|&y| self.alive[y])
            .collect();
        self.delete(x);
        for y in outs {
            self.delete(y);
        }
    }

    fn drop_isolated(&mut self) {
        for x in std::mem::take(&mut self.isolated) {
            if self.alive[x] {
                self.alive[x] = false;
                self.removed += 1;
            }
        }
    }

    fn pick_source(&self, pick: PickPolicy) -> Option<Vertex> {
        match pick {
            PickPolicy::LowestId => self.sources.first().copied(),
            PickPolicy::MaxOutDegree => self
                .sources
                .iter()
                .copied()
                .max_by_key(|&s| (self.out_deg[s], std::cmp::Reverse(s))),
        }
    }
}

pub(crate) fn run_phase(
    g: &Digraph,
    probe: &mut Probe<'_>,
    v: Vertex,
    pick: PickPolicy,
) -> PhaseOutcome {
    let eval = probe.evaluate(v);
    let mut rem = Remainder::new(g);
    rem.delete_closed_out(v);
    for &u in &eval.s {
        rem.delete_closed_out(u);
    }
    let initial_removed = rem.removed;

    let mut kernel_part = eval.s.clone();
    let mut loop_iterations = 0;
    loop {
        rem.drop_isolated();
        let Some(x) = rem.pick_source(pick) else {
            break;
        };
        kernel_part.push(x);
        loop_iterations += 1;
        rem.delete_closed_out(x);
    }
    kernel_part.sort_unstable();

    let removed = VertexSet::from_vertices(g.n(), g.vertices().filter(|&x| !rem.alive[x]))
        .expect("ids in range");
    let (rest, id_map) = g.induced_delete(&removed).expect("ids in range");
    debug_assert!(rest.is_sourceless());

    let trace = PhaseTrace {
        witness: v,
        n_before: g.n(),
        s_size: eval.s.len(),
        reach: eval.reach,
        case: if eval.v_in_out_s {
            WitnessCase::InS
        } else {
            WitnessCase::NotInS
        },
        initial_removed,
        vertices_removed: rem.removed,
        k_additions: kernel_part.len(),
        loop_iterations,
        v_added_at_reconstruction: false,
        condition_held: false,
        selection: Selection::Given,
        additions: kernel_part.clone(),
    };
    PhaseOutcome {
        kernel_part,
        rest,
        id_map,
        trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{directed_cycle, disjoint_c4s};

    #[test]
    fn phase_on_four_cycle() {
        let out = phase(&directed_cycle(4), 0, PickPolicy::LowestId).unwrap();
        assert_eq!(out.kernel_part, vec![2]);
        assert_eq!(out.rest.n(), 0);
        assert_eq!(out.trace.initial_removed, 4);
    }

    #[test]
    fn phase_on_triangle() {
        let out = phase(&directed_cycle(3), 0, PickPolicy::LowestId).unwrap();
        assert_eq!(out.kernel_part, vec![2]);
        assert_eq!(out.rest.n(), 0);
        assert_eq!(out.trace.case, WitnessCase::InS);
    }

    #[test]
    fn phase_leaves_other_components() {
        let g = disjoint_c4s(2);
        let out = phase(&g, 0, PickPolicy::LowestId).unwrap();
        assert_eq!(out.kernel_part, vec![2]);
        assert_eq!(out.rest, directed_cycle(4));
        assert_eq!(out.id_map.parent_ids(), &[4, 5, 6, 7]);
    }

    #[test]
    fn isolated_vertices_are_dropped() {
        let g = Digraph::build(
            7,
            [
                (0, 1),
                (1, 0),
                (1, 2),
                (2, 3),
                (3, 2),
                (0, 4),
                (4, 5),
                (5, 6),
                (6, 5),
                (2, 6),
            ],
        )
        .unwrap();
        // Removing N⁺[0] = {0, 1, 4} leaves no source.
        let out = phase(&g, 0, PickPolicy::LowestId).unwrap();
        assert!(out.kernel_part.is_empty());
        assert_eq!(out.rest.n(), 4);

        // S(1) = {3, 4}; after removing N⁺[1] ∪ N⁺[S], vertex 6 is isolated.
        let out = phase(&g, 1, PickPolicy::LowestId).unwrap();
        assert_eq!(out.kernel_part, vec![3, 4]);
        assert_eq!(out.rest.n(), 0);
        assert_eq!(out.trace.vertices_removed, 7);
        assert_eq!(out.trace.loop_iterations, 0);
    }

    #[test]
    fn loop_takes_remaining_sources() {
        let g = Digraph::build(
            7,
            [
                (0, 1),
                (1, 0),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 5),
            ],
        )
        .unwrap();
        // S(0) = {2} removes {0, 1, 2, 3}; 4 becomes a source and is taken,
        // which strands 6.
        let out = phase(&g, 0, PickPolicy::LowestId).unwrap();
        assert_eq!(out.kernel_part, vec![2, 4]);
        assert_eq!(out.trace.loop_iterations, 1);
        assert_eq!(out.trace.initial_removed, 4);
        assert_eq!(out.trace.vertices_removed, 7);
        assert_eq!(out.rest.n(), 0);
    }

    #[test]
    fn phase_errors() {
        let path = Digraph::build(2, [(0, 1)]).unwrap();
        assert!(matches!(
            phase(&path, 0, PickPolicy::LowestId),
            Err(SolveError::NotSourceless { .. })
        ));
        assert!(matches!(
            phase(&directed_cycle(3), 5, PickPolicy::LowestId),
            Err(SolveError::VertexOutOfRange { .. })
        ));
    }
}
