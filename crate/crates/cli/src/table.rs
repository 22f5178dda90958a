//! Bound factors of the two degree-parameterised classes.

use std::fmt::Write as _;

use qkernel::ratio::{short_cycle_free_threshold, star_free_threshold};
use qkernel::Rational;
use serde::{Deserialize, Serialize};

use crate::args::TableFormat;

/// Large degrees always listed after `4..=max_d`.
pub const LARGE_DEGREES: [u32; 3] = [25, 50, 100];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundTableRow {
    pub d: u32,
    /// `(d² - 2d + 2) / (d² - d + 1)`, for digraphs without an induced `K⃗_{1,d}`.
    pub star_free: Rational,
    /// `(d² + 4) / (d + 2)²`, for the short-cycle-free class.
    pub short_cycle_free: Rational,
}

pub fn bound_table_rows(max_d: u32) -> Vec<BoundTableRow> {
    let mut ds: Vec<u32> = (4..=max_d).collect();
    ds.extend(LARGE_DEGREES.iter().filter(|&&d| d > max_d));
    ds.into_iter()
        .map(|d| BoundTableRow {
            d,
            star_free: star_free_threshold(d).bound_factor(),
            short_cycle_free: short_cycle_free_threshold(d).bound_factor(),
        })
        .collect()
}

pub fn render(rows: &[BoundTableRow], format: TableFormat) -> String {
    let mut out = String::new();
    match format {
        TableFormat::Text => {
            let _ = writeln!(
                out,
                "{:>5}  {:>12}  {:>16}",
                "d", "star-free", "short-cycle-free"
            );
            for r in rows {
                let _ = writeln!(
                    out,
                    "{:>5}  {:>12}  {:>16}",
                    r.d,
                    r.star_free.to_string(),
                    r.short_cycle_free.to_string()
                );
            }
        }
        TableFormat::Csv => {
            out.push_str("d,star_free,short_cycle_free\n");
            for r in rows {
                let _ = writeln!(out, "{},{},{}", r.d, r.star_free, r.short_cycle_free);
            }
        }
        TableFormat::Json => {
            out = serde_json::to_string_pretty(rows).expect("rows serialize");
            out.push('\n');
        }
    }
    out
}
