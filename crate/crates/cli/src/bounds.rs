//! Size-bound experiment: generate, certify, solve, compare with `t·n/(t+1)`.

use std::time::Instant;

use qkernel::exact::{quasi_kernel_number, OracleBudget};
use qkernel::generate::{derive_seed, generate, Family, GenSpec};
use qkernel::solver::{solve, Strategy};
use qkernel::{certify, GraphClass, Rational};
use serde::{Deserialize, Serialize};

use crate::args::{BoundsArgs, BoundsFamily};
use crate::CliError;

/// One instance of the experiment. Column order is the CSV order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub instance: usize,
    pub family: String,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub class: String,
    pub certified: bool,
    pub strategy: String,
    pub size: usize,
    pub exact_size: Option<usize>,
    pub threshold: Rational,
    pub bound_num: i64,
    pub bound_den: i64,
    pub bound_satisfied: bool,
    pub bound_guaranteed: bool,
    pub fallback_events: usize,
    pub wall_ms: f64,
}

impl BoundRow {
    /// `|Q|·(t+1) / (t·n)`: at most 1 exactly when the bound holds.
    pub fn ratio(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        self.size as f64 * self.bound_den as f64 / (self.bound_num as f64 * self.n as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsSummary {
    pub rows: usize,
    pub satisfied: usize,
    pub guaranteed: usize,
    pub max_ratio: f64,
}

impl BoundsSummary {
    pub fn of(rows: &[BoundRow]) -> Self {
        BoundsSummary {
            rows: rows.len(),
            satisfied: rows.iter().filter(|r| r.bound_satisfied).count(),
            guaranteed: rows.iter().filter(|r| r.bound_guaranteed).count(),
            max_ratio: rows.iter().map(BoundRow::ratio).fold(0.0, f64::max),
        }
    }
}

fn family_of(args: &BoundsArgs, i: usize) -> (Family, GraphClass, Strategy, u64) {
    let seed = derive_seed(args.seed, i as u64);
    let span = args.n.saturating_sub(args.min_n) as u64 + 1;
    let n = args.min_n + (derive_seed(seed, 1) % span) as usize;
    let d = args.d;
    match args.family {
        BoundsFamily::DisjointC4s => (
            Family::DisjointC4s {
                m: args.m.unwrap_or(i + 1),
            },
            GraphClass::MaxOutDegree { d: 1 },
            Strategy::tratio(args.t),
            seed,
        ),
        BoundsFamily::RandomOutdeg3 => (
            Family::RandomSourceless {
                n,
                d: 3,
                oriented: true,
            },
            GraphClass::OutDeg3,
            Strategy::outdeg3(),
            seed,
        ),
        BoundsFamily::RandomSourceless => (
            Family::RandomSourceless {
                n,
                d,
                oriented: seed & 1 == 1,
            },
            GraphClass::MaxOutDegree { d: d as u32 },
            Strategy::tratio(args.t),
            seed,
        ),
        BoundsFamily::RandomStarFree => (
            Family::RandomStarFree { n, d },
            GraphClass::StarFree { d: d as u32 },
            Strategy::star_free(d as u32),
            seed,
        ),
        BoundsFamily::RandomShortCycleFree => (
            Family::RandomShortCycleFree { n, d },
            GraphClass::ShortCycleFree { d: d as u32 },
            Strategy::short_cycle_free(d as u32),
            seed,
        ),
        BoundsFamily::PaleySinks => (
            Family::PaleySinks {
                q: args.q,
                k: args.k.unwrap_or(i + 1),
            },
            GraphClass::Sourceless,
            Strategy::tratio(args.t),
            seed,
        ),
    }
}

pub fn run_bounds(args: &BoundsArgs) -> Result<Vec<BoundRow>, CliError> {
    let mut rows = Vec::with_capacity(args.trials);
    for i in 0..args.trials {
        let (family, class, strategy, seed) = family_of(args, i);
        let spec = GenSpec::new(family, seed);
        let g = generate(&spec)?;
        let certified = certify(&g, class).holds;

        let started = Instant::now();
        let res = solve(&g, &strategy)?;
        let wall_ms = started.elapsed().as_secs_f64() * 1e3;

        let exact_size = if g.n() <= args.exact_max_n {
            let budget = OracleBudget {
                max_n: args.exact_max_n,
                ..OracleBudget::default()
            };
            Some(quasi_kernel_number(&g, &budget)?)
        } else {
            None
        };
        let t = res.threshold.unwrap_or(args.t);
        let factor = t.bound_factor();
        rows.push(BoundRow {
            instance: i,
            family: spec.describe(),
            seed,
            n: g.n(),
            m: g.m(),
            class: class.name(),
            certified,
            strategy: strategy.rule.name(),
            size: res.size(),
            exact_size,
            threshold: t,
            bound_num: factor.num(),
            bound_den: factor.den(),
            bound_satisfied: factor.admits(res.size(), g.n()),
            bound_guaranteed: res.bound_guaranteed,
            fallback_events: res.fallback_events,
            wall_ms,
        });
    }
    Ok(rows)
}

pub fn write_csv<W: std::io::Write>(rows: &[BoundRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| CliError::Other(e.to_string()))?;
    Ok(())
}
