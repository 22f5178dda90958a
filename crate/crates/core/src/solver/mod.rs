//! Greedy quasi-kernel construction.
//!
//! [`solve`] repeatedly picks a witness `v`, runs one [`phase`] on the current
//! graph, and recurses on the sourceless remainder until it is empty. The
//! pieces are then combined innermost-first: each phase contributes its
//! kernel part, plus `v` itself when no chosen vertex points at `v`.
//!
//! A phase whose witness passed `t·|N⁺(v) ∪ N⁺(S(v))| >= |S(v)| + 1` (or
//! `>= |S(v)|` when `v ∈ N⁺(S(v))`) removes at least `(t+1)/t` vertices per
//! vertex it adds, so when every phase passed, `|Q| <= t·n / (t+1)`.

mod baseline;
mod phase;
mod witness;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use baseline::chvatal_lovasz;
pub use phase::{phase, PhaseOutcome, PhaseTrace, PickPolicy, Selection};
pub use witness::{
    counterexample_scan, find_witness_kclimb, find_witness_tratio, pendant_sinks,
    witness_condition, ClimbOutcome, ScanReport, WitnessCase, WitnessCheck,
};

use crate::digraph::{Digraph, Vertex, VertexSet};
use crate::exact::{smallest_quasi_kernel, OracleBudget, OracleError};
use crate::ratio::{
    out_degree_three_threshold, short_cycle_free_threshold, star_free_threshold, Rational,
};
use witness::{climb, require_sourceless, Probe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("digraph has a source at vertex {vertex}")]
    NotSourceless { vertex: Vertex },
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// How each phase's witness is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum WitnessRule {
    /// No phases: the classical recursive procedure.
    Baseline,
    /// Lowest-id vertex passing the test at `t`.
    TRatio { t: Rational },
    /// `TRatio` at `t = 4/3`.
    OutDeg3,
    /// `TRatio` at `t = (d² - 2d + 2)/(d - 1)`.
    StarFree { d: u32 },
    /// Climb on `k_v` at `t = (d² + 4)/4d`.
    ShortCycleFree { d: u32 },
}

impl WitnessRule {
    pub fn threshold(&self) -> Option<Rational> {
        match *self {
            WitnessRule::Baseline => None,
            WitnessRule::TRatio { t } => Some(t),
            WitnessRule::OutDeg3 => Some(out_degree_three_threshold()),
            WitnessRule::StarFree { d } => Some(star_free_threshold(d)),
            WitnessRule::ShortCycleFree { d } => Some(short_cycle_free_threshold(d)),
        }
    }

    pub fn name(&self) -> String {
        match self {
            WitnessRule::Baseline => "baseline".into(),
            WitnessRule::TRatio { t } => format!("tratio(t={t})"),
            WitnessRule::OutDeg3 => "outdeg3".into(),
            WitnessRule::StarFree { d } => format!("star-free(d={d})"),
            WitnessRule::ShortCycleFree { d } => format!("short-cycle-free(d={d})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Strategy {
    pub rule: WitnessRule,
    /// Finish with an exact smallest quasi-kernel once at most this many
    /// vertices remain.
    pub exact_tail: Option<usize>,
    pub source_pick: PickPolicy,
}

pub const DEFAULT_EXACT_TAIL: usize = 16;

impl Strategy {
    pub fn new(rule: WitnessRule) -> Self {
        Strategy {
            rule,
            exact_tail: None,
            source_pick: PickPolicy::LowestId,
        }
    }

    pub fn baseline() -> Self {
        Strategy::new(WitnessRule::Baseline)
    }

    pub fn tratio(t: Rational) -> Self {
        Strategy::new(WitnessRule::TRatio { t })
    }

    pub fn outdeg3() -> Self {
        Strategy::new(WitnessRule::OutDeg3)
    }

    pub fn star_free(d: u32) -> Self {
        Strategy::new(WitnessRule::StarFree { d })
    }

    pub fn short_cycle_free(d: u32) -> Self {
        Strategy::new(WitnessRule::ShortCycleFree { d })
    }

    pub fn with_exact_tail(mut self, cap: usize) -> Self {
        self.exact_tail = Some(cap);
        self
    }

    pub fn with_source_pick(mut self, pick: PickPolicy) -> Self {
        self.source_pick = pick;
        self
    }

    fn validate(&self) -> Result<(), SolveError> {
        let bad = |msg: &str| Err(SolveError::InvalidStrategy(msg.to_string()));
        match self.rule {
            WitnessRule::TRatio { t } if t.num() <= 0 => bad("t must be positive"),
            WitnessRule::StarFree { d } if d < 2 => bad("star-free needs d >= 2"),
            WitnessRule::ShortCycleFree { d } if d < 1 => bad("short-cycle-free needs d >= 1"),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Tail {
    /// Phases ran until nothing was left.
    Empty,
    /// The last remainder was solved exactly.
    Exact {
        vertices: usize,
        size: usize,
        within_bound: bool,
    },
    /// The whole graph went to the classical procedure.
    Baseline,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub n: usize,
    pub quasi_kernel: VertexSet,
    pub strategy: Strategy,
    pub threshold: Option<Rational>,
    /// Outermost phase first; witness and additions in original ids.
    pub phases: Vec<PhaseTrace>,
    pub tail: Tail,
    /// Every phase passed its threshold test, so `(t+1)·|Q| <= t·n`.
    pub bound_guaranteed: bool,
    /// Phases that had to fall back to the smallest-deficit vertex.
    pub fallback_events: usize,
}

impl SolveResult {
    pub fn size(&self) -> usize {
        self.quasi_kernel.len()
    }

    /// `(t+1)·|Q| <= t·n`, if the strategy has a threshold.
    pub fn within_bound(&self) -> Option<bool> {
        self.threshold
            .map(|t| t.bound_factor().admits(self.size(), self.n))
    }
}

struct Frame {
    witness: Vertex,
    additions: Vec<Vertex>,
}

/// Builds a quasi-kernel of a sourceless digraph with the given strategy.
pub fn solve(g: &Digraph, strategy: &Strategy) -> Result<SolveResult, SolveError> {
    require_sourceless(g)?;
    strategy.validate()?;
    let n = g.n();
    let threshold = strategy.rule.threshold();

    if strategy.rule == WitnessRule::Baseline {
        return Ok(SolveResult {
            n,
            quasi_kernel: chvatal_lovasz(g, strategy.source_pick),
            strategy: *strategy,
            threshold,
            phases: Vec::new(),
            tail: Tail::Baseline,
            bound_guaranteed: false,
            fallback_events: 0,
        });
    }
    let t = threshold.expect("non-baseline rules carry a threshold");

    let mut frames = Vec::new();
    let mut phases = Vec::new();
    let mut fallback_events = 0;
    let mut current = g.clone();
    let mut to_original: Vec<Vertex> = g.vertices().collect();
    let mut tail = Tail::Empty;
    let mut inner = VertexSet::new(n);

    while current.n() > 0 {
        if let Some(cap) = strategy.exact_tail.filter(|&cap| current.n() <= cap) {
            let budget = OracleBudget {
                max_n: cap.max(1),
                ..OracleBudget::default()
            };
            let r = smallest_quasi_kernel(&current, &budget)?;
            tail = Tail::Exact {
                vertices: current.n(),
                size: r.len(),
                within_bound: t.bound_factor().admits(r.len(), current.n()),
            };
            for v in r.iter() {
                inner.insert(to_original[v]);
            }
            break;
        }

        let mut probe = Probe::new(&current);
        let (v, selection, held) = choose_witness(&current, &mut probe, strategy.rule, t);
        if !held {
            fallback_events += 1;
            if strategy.rule == WitnessRule::OutDeg3
                && current.max_out_degree() <= 3
                && crate::detect::is_oriented(&current)
            {
                log::warn!(
                    "no 4/3 witness in a sourceless oriented graph with out-degree <= 3 (n = {})",
                    current.n()
                );
            }
        }
        let outcome = phase::run_phase(&current, &mut probe, v, strategy.source_pick);
        drop(probe);

        let mut trace = outcome.trace;
        trace.witness = to_original[v];
        trace.additions = outcome
            .kernel_part
            .iter()
            .map(|&x| to_original[x])
            .collect();
        trace.condition_held = held;
        trace.selection = match selection {
            Selection::Climb { hops } => Selection::Climb {
                hops: hops.iter().map(|&h| to_original[h]).collect(),
            },
            Selection::ClimbThenScan { hops } => Selection::ClimbThenScan {
                hops: hops.iter().map(|&h| to_original[h]).collect(),
            },
            other => other,
        };
        frames.push(Frame {
            witness: trace.witness,
            additions: trace.additions.clone(),
        });
        phases.push(trace);

        to_original = outcome
            .id_map
            .parent_ids()
            .iter()
            .map(|&x| to_original[x])
            .collect();
        current = outcome.rest;
    }

    for (frame, trace) in frames.iter().zip(phases.iter_mut()).rev() {
        for &x in &frame.additions {
            inner.insert(x);
        }
        let dominated = g
            .in_neighbors(frame.witness)
            .iter()
            .any(|&w| inner.contains(w));
        if !dominated {
            inner.insert(frame.witness);
            trace.v_added_at_reconstruction = true;
        }
    }

    let tail_ok = match tail {
        Tail::Exact { within_bound, .. } => within_bound,
        _ => true,
    };
    let bound_guaranteed =
        t.is_at_least_one() && tail_ok && phases.iter().all(|p| p.condition_held);

    Ok(SolveResult {
        n,
        quasi_kernel: inner,
        strategy: *strategy,
        threshold,
        phases,
        tail,
        bound_guaranteed,
        fallback_events,
    })
}

fn choose_witness(
    g: &Digraph,
    probe: &mut Probe<'_>,
    rule: WitnessRule,
    t: Rational,
) -> (Vertex, Selection, bool) {
    let found = match rule {
        WitnessRule::ShortCycleFree { .. } => {
            let outcome = climb(probe, g, t);
            outcome.witness.map(|v| {
                let selection = if outcome.stalled {
                    Selection::ClimbThenScan { hops: outcome.hops }
                } else {
                    Selection::Climb { hops: outcome.hops }
                };
                (v, selection)
            })
        }
        _ => probe.scan(t).map(|v| (v, Selection::Scan)),
    };
    if let Some((v, selection)) = found {
        return (v, selection, true);
    }
    let v = g
        .vertices()
        .min_by_key(|&v| {
            let check = probe.check(v, t);
            (t.scaled_deficit(check.reach, check.required()), v)
        })
        .expect("graph is nonempty");
    (v, Selection::Deficit, false)
}
