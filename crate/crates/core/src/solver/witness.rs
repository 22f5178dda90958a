//! Witness evaluation: `S(v)`, the reach `|N⁺(v) ∪ N⁺(S(v))|`, and the
//! threshold test that lets one greedy phase pay for itself.

use serde::{Deserialize, Serialize};

use super::SolveError;
use crate::digraph::{Digraph, Vertex};
use crate::ratio::{short_cycle_free_threshold, Rational};

/// Whether the witness lies in `N⁺(S(v))`. In that case it is never added
/// back at reconstruction, so the test drops the `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessCase {
    InS,
    NotInS,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub vertex: Vertex,
    pub s_size: usize,
    /// `|N⁺(v) ∪ N⁺(S(v))|`.
    pub reach: usize,
    pub case: WitnessCase,
    /// `t·reach >= required()`.
    pub holds: bool,
    /// `t·reach >= s_size + 1`, regardless of case.
    pub holds_plus_one: bool,
}

impl WitnessCheck {
    pub fn required(&self) -> usize {
        match self.case {
            WitnessCase::InS => self.s_size,
            WitnessCase::NotInS => self.s_size + 1,
        }
    }
}

/// `S(v)` and its reach, computed locally for a sourceless graph.
#[derive(Debug, Clone)]
pub(crate) struct Evaluation {
    pub s: Vec<Vertex>,
    pub reach: usize,
    pub v_in_out_s: bool,
}

/// Scratch space for repeated neighbourhood evaluations on one graph.
///
/// In a sourceless graph every member of `S(v)` has an in-neighbour in
/// `N⁺(v)`, so `S(v)` is found among the second out-neighbourhood of `v`.
pub(crate) struct Probe<'g> {
    g: &'g Digraph,
    closed: Vec<u32>,
    seen: Vec<u32>,
    reached: Vec<u32>,
    epoch: u32,
}

impl<'g> Probe<'g> {
    pub fn new(g: &'g Digraph) -> Self {
        let n = g.n();
        Probe {
            g,
            closed: vec![0; n],
            seen: vec![0; n],
            reached: vec![0; n],
            epoch: 0,
        }
    }

    fn next_epoch(&mut self) -> u32 {
        if self.epoch == u32::MAX {
            self.closed.fill(0);
            self.seen.fill(0);
            self.reached.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.epoch
    }

    pub fn evaluate(&mut self, v: Vertex) -> Evaluation {
        let g = self.g;
        let e = self.next_epoch();
        self.closed[v] = e;
        for &w in g.out_neighbors(v) {
            self.closed[w] = e;
        }
        let mut s = Vec::new();
        for &w in g.out_neighbors(v) {
            for &u in g.out_neighbors(w) {
                if self.closed[u] == e || self.seen[u] == e {
                    continue;
                }
                self.seen[u] = e;
                if g.in_neighbors(u).iter().all(|&x| self.closed[x] == e) {
                    s.push(u);
                }
            }
        }
        s.sort_unstable();

        let mut reach = g.out_degree(v);
        for &w in g.out_neighbors(v) {
            self.reached[w] = e;
        }
        let mut v_in_out_s = false;
        for &u in &s {
            for &y in g.out_neighbors(u) {
                if self.reached[y] != e {
                    self.reached[y] = e;
                    reach += 1;
                    v_in_out_s |= y == v;
                }
            }
        }
        Evaluation {
            s,
            reach,
            v_in_out_s,
        }
    }

    pub fn check(&mut self, v: Vertex, t: Rational) -> WitnessCheck {
        let eval = self.evaluate(v);
        let case = if eval.v_in_out_s {
            WitnessCase::InS
        } else {
            WitnessCase::NotInS
        };
        let mut check = WitnessCheck {
            vertex: v,
            s_size: eval.s.len(),
            reach: eval.reach,
            case,
            holds: false,
            holds_plus_one: t.scaled_at_least(eval.reach, eval.s.len() + 1),
        };
        check.holds = t.scaled_at_least(check.reach, check.required());
        check
    }

    /// Lowest-id vertex passing the threshold test.
    pub fn scan(&mut self, t: Rational) -> Option<Vertex> {
        self.g.vertices().find(|&v| self.check(v, t).holds)
    }
}

pub(crate) fn require_sourceless(g: &Digraph) -> Result<(), SolveError> {
    match g.first_source() {
        Some(vertex) => Err(SolveError::NotSourceless { vertex }),
        None => Ok(()),
    }
}

/// Evaluates the threshold test at `v`.
pub fn witness_condition(g: &Digraph, v: Vertex, t: Rational) -> Result<WitnessCheck, SolveError> {
    require_sourceless(g)?;
    if v >= g.n() {
        return Err(SolveError::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    Ok(Probe::new(g).check(v, t))
}

/// Scans vertices in ascending order for the first one passing the test.
pub fn find_witness_tratio(g: &Digraph, t: Rational) -> Result<Option<Vertex>, SolveError> {
    require_sourceless(g)?;
    Ok(Probe::new(g).scan(t))
}

/// `k_v`: out-neighbours of `v` that are sinks with in-degree exactly one.
pub fn pendant_sinks(g: &Digraph, v: Vertex) -> usize {
    g.out_neighbors(v)
        .iter()
        .filter(|&&u| g.in_degree(u) == 1 && g.out_degree(u) == 0)
        .count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClimbOutcome {
    pub witness: Option<Vertex>,
    /// Active vertices visited, starting vertex first.
    pub hops: Vec<Vertex>,
    /// The climb found no out-neighbour with larger `k` and fell back to a scan.
    pub stalled: bool,
}

pub(crate) fn climb(probe: &mut Probe<'_>, g: &Digraph, t: Rational) -> ClimbOutcome {
    let Some(mut active) = g.vertices().find(|&v| g.out_degree(v) >= 1) else {
        return ClimbOutcome {
            witness: None,
            hops: Vec::new(),
            stalled: true,
        };
    };
    let mut hops = vec![active];
    loop {
        if probe.check(active, t).holds {
            return ClimbOutcome {
                witness: Some(active),
                hops,
                stalled: false,
            };
        }
        let k_active = pendant_sinks(g, active);
        let mut best: Option<(usize, Vertex)> = None;
        for &w in g.out_neighbors(active) {
            let k_w = pendant_sinks(g, w);
            if k_w > k_active && best.is_none_or(|(k, _)| k_w > k) {
                best = Some((k_w, w));
            }
        }
        match best {
            Some((_, w)) => {
                active = w;
                hops.push(w);
            }
            None => {
                let witness = probe.scan(t);
                return ClimbOutcome {
                    witness,
                    hops,
                    stalled: true,
                };
            }
        }
    }
}

/// Climbs along strictly increasing `k` from the lowest-id non-sink, testing
/// against `(d² + 4) / 4d`. Falls back to a full scan if the climb stalls.
pub fn find_witness_kclimb(g: &Digraph, d: u32) -> Result<ClimbOutcome, SolveError> {
    require_sourceless(g)?;
    let t = short_cycle_free_threshold(d);
    Ok(climb(&mut Probe::new(g), g, t))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub threshold: Rational,
    pub checks: Vec<WitnessCheck>,
    /// Vertices passing the case-aware test.
    pub witnesses: Vec<Vertex>,
    /// Vertices passing `t·reach >= |S(v)| + 1`.
    pub plus_one_witnesses: Vec<Vertex>,
}

impl ScanReport {
    /// No vertex passes the case-aware test: the profile a minimal
    /// counterexample to the `t/(t+1)` bound must have.
    pub fn counterexample_profile(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn plus_one_profile(&self) -> bool {
        self.plus_one_witnesses.is_empty()
    }
}

pub fn counterexample_scan(g: &Digraph, t: Rational) -> Result<ScanReport, SolveError> {
    require_sourceless(g)?;
    let mut probe = Probe::new(g);
    let checks: Vec<WitnessCheck> = g.vertices().map(|v| probe.check(v, t)).collect();
    let witnesses = checks
        .iter()
        .filter(|c| c.holds)
        .map(|c| c.vertex)
        .collect();
    let plus_one_witnesses = checks
        .iter()
        .filter(|c| c.holds_plus_one)
        .map(|c| c.vertex)
        .collect();
    Ok(ScanReport {
        threshold: t,
        checks,
        witnesses,
        plus_one_witnesses,
    })
}
