//! Bound tables: one row per ground set size, combining the separation
//! lower bound, closed-form known bounds, and either a construction size or
//! an exhaustively computed value.

use clap::ValueEnum;
use posat_core::{
    butterfly_construction, chains_construction, minimum_saturated, n_construction,
    q_example_construction, uctp_lower_bound, weak_sat_construction, CatalogPoset,
    MaskRestriction, Mode, Poset, SearchOptions,
};
use serde::Serialize;

use crate::Failure;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Serialize)]
pub struct TableRow {
    pub n: u32,
    /// Logarithmic separation bound; 1 where the target is outside the
    /// unique-cover twin class or the mode is weak.
    pub uctp_bound: u64,
    pub known_bound_low: Option<u64>,
    pub known_bound_high: Option<u64>,
    pub computed_or_construction: Option<u64>,
    pub source: &'static str,
}

fn ceil_log2(x: u32) -> u64 {
    if x <= 1 {
        0
    } else {
        u64::from(32 - (x - 1).leading_zeros())
    }
}

/// Closed-form bounds known for the catalog targets; `None` where nothing
/// beyond the separation bound applies. Arity `m` is the target's element
/// count for the parameterized shapes.
fn known_bounds(
    cat: CatalogPoset,
    arity: Option<u32>,
    mode: Mode,
    n: u32,
) -> (Option<u64>, Option<u64>) {
    let n64 = u64::from(n);
    let chains_size = |k: u64| k * (n64 - 1) + 2;
    match mode {
        Mode::Induced => match (cat, arity) {
            (CatalogPoset::Antichain, Some(2)) if n >= 2 => (Some(n64 + 1), Some(n64 + 1)),
            (CatalogPoset::Antichain, Some(3)) if n >= 3 => (Some(2 * n64), Some(2 * n64)),
            (CatalogPoset::Antichain, Some(m)) if m >= 4 && n > m - 1 => {
                (Some(3 * n64 - 1), Some(chains_size(u64::from(m) - 1)))
            }
            (CatalogPoset::V | CatalogPoset::Lambda, Some(2)) if n >= 2 => {
                (Some(n64 + 1), Some(n64 + 1))
            }
            (CatalogPoset::V | CatalogPoset::Lambda, Some(m)) if m >= 3 && n > m - 1 => {
                (None, Some(chains_size(u64::from(m) - 1)))
            }
            (CatalogPoset::Diamond, Some(2)) if n >= 2 => {
                (Some(ceil_log2(n).max(1)), Some(n64 + 1))
            }
            (CatalogPoset::Diamond, Some(m)) if m >= 3 && n > m - 1 => {
                (Some(ceil_log2(n).max(1)), Some(chains_size(u64::from(m) - 1)))
            }
            (CatalogPoset::N, None) if n >= 3 => (Some(ceil_log2(n)), Some(2 * n64)),
            (CatalogPoset::Butterfly, None) if n >= 3 => (
                Some(ceil_log2(n)),
                Some(n64 * (n64 - 1) / 2 + 2 * n64 - 1),
            ),
            (CatalogPoset::Q, None) if n >= 3 => (None, Some(4)),
            _ => (None, None),
        },
        Mode::Weak if n >= 3 => match (cat, arity) {
            (CatalogPoset::Antichain, Some(m)) if m >= 2 && u64::from(m) - 1 <= (1 << n) => {
                (Some(u64::from(m) - 1), Some(u64::from(m) - 1))
            }
            (CatalogPoset::V | CatalogPoset::Lambda, Some(2)) => (Some(2), Some(2)),
            (CatalogPoset::Diamond, Some(2)) => (Some(3), Some(3)),
            (CatalogPoset::N, None) => (Some(3), Some(3)),
            (CatalogPoset::Butterfly, None) => (Some(4), Some(4)),
            _ => (None, None),
        },
        Mode::Weak => (None, None),
    }
}

/// Size of the best catalog construction for the target, where one exists.
fn construction_size(cat: CatalogPoset, arity: Option<u32>, mode: Mode, n: u32) -> Option<u64> {
    let size = |f: posat_core::Family| f.len() as u64;
    match mode {
        Mode::Induced => match cat {
            CatalogPoset::Antichain
            | CatalogPoset::V
            | CatalogPoset::Lambda
            | CatalogPoset::Diamond => {
                let m = arity?;
                if m < 2 {
                    return None;
                }
                chains_construction(n, m - 1).ok().map(size)
            }
            CatalogPoset::N => n_construction(n).ok().map(size),
            CatalogPoset::Butterfly => butterfly_construction(n).ok().map(size),
            CatalogPoset::Q => q_example_construction(n).ok().map(size),
            CatalogPoset::Chain => None,
        },
        Mode::Weak => weak_sat_construction(cat, arity, n).ok().map(size),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn compute_rows(
    cat: CatalogPoset,
    arity: Option<u32>,
    target: &Poset,
    mode: Mode,
    (lo, hi): (u32, u32),
    exact: bool,
    max_n: u32,
    threads: Option<usize>,
) -> Result<Vec<TableRow>, Failure> {
    let mut rows = Vec::with_capacity((hi - lo + 1) as usize);
    for n in lo..=hi {
        let uctp_bound = match mode {
            Mode::Induced => u64::from(uctp_lower_bound(target, n)),
            Mode::Weak => 1,
        };
        let (known_bound_low, known_bound_high) = known_bounds(cat, arity, mode, n);
        let (value, source) = if exact {
            let opts = SearchOptions {
                max_n,
                max_size: None,
                symmetry: true,
                theorem_pruning: true,
                restriction: MaskRestriction::Unrestricted,
                threads,
                collect_all_minima: false,
            };
            (minimum_saturated(n, target, mode, &opts)?.value, "search")
        } else {
            match construction_size(cat, arity, mode, n) {
                Some(v) => (Some(v), "construction"),
                None => (None, "none"),
            }
        };
        if let Some(v) = value {
            if v < uctp_bound {
                return Err(Failure::property(format!(
                    "consistency violation at n = {n}: value {v} is below the \
                     separation lower bound {uctp_bound}"
                )));
            }
        }
        rows.push(TableRow {
            n,
            uctp_bound,
            known_bound_low,
            known_bound_high,
            computed_or_construction: value,
            source,
        });
    }
    Ok(rows)
}

fn cell(v: Option<u64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

pub fn to_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(
        "n,uctp_bound,known_bound_low,known_bound_high,computed_or_construction,source\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n,
            r.uctp_bound,
            cell(r.known_bound_low),
            cell(r.known_bound_high),
            cell(r.computed_or_construction),
            r.source
        ));
    }
    out
}

pub fn to_text(rows: &[TableRow]) -> String {
    let header = ["n", "uctp", "low", "high", "value", "source"];
    let mut grid: Vec<[String; 6]> = vec![header.map(String::from)];
    for r in rows {
        grid.push([
            r.n.to_string(),
            r.uctp_bound.to_string(),
            cell(r.known_bound_low),
            cell(r.known_bound_high),
            cell(r.computed_or_construction),
            r.source.to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..6)
        .map(|c| grid.iter().map(|row| row[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &grid {
        for (c, item) in row.iter().enumerate() {
            if c > 0 {
                out.push_str("  ");
            }
            // Numbers right-aligned, the trailing source column left-aligned.
            if c == 5 {
                out.push_str(item);
            } else {
                out.push_str(&format!("{item:>width$}", width = widths[c]));
            }
        }
        out.push('\n');
    }
    out
}
