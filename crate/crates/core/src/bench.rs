//! Batch solving of an instance directory into CSV rows.
//!
//! The problem is chosen by file extension: `.tp`, `.bf`, `.sods`,
//! `.bisods`, `.xy` and `.jdmfeas`. Other files are skipped.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use crate::format;
use crate::solvers::{
    jdm_feasible_from_aggregates, realize_sods, realize_sods_bipartite, realize_xy, solve_bf, solve_tp, RowEquation,
    SearchBudget, SolveReport,
};

pub const CSV_VERSION_LINE: &str = "# degseq-lab bench v1";
pub const CSV_HEADER: &str = "id,unary_size,verdict,nodes,millis";

/// One solver invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub id: String,
    pub unary_size: usize,
    /// `solved`, `infeasible`, `unknown`, or `error: ...`.
    pub verdict: String,
    pub nodes: u64,
    pub millis: u128,
}

impl BenchRecord {
    pub fn is_error(&self) -> bool {
        self.verdict.starts_with("error")
    }

    pub fn csv_row(&self) -> String {
        let verdict = self.verdict.replace([',', '\n'], ";");
        format!("{},{},{},{},{}", self.id, self.unary_size, verdict, self.nodes, self.millis)
    }
}

pub const EXTENSIONS: [&str; 6] = ["tp", "bf", "sods", "bisods", "xy", "jdmfeas"];

/// Solves one instance text of the given kind. Returns the unary size and
/// the verdict with its node count.
pub fn solve_text(kind: &str, text: &str, budget: SearchBudget) -> crate::Result<(usize, String, u64)> {
    fn summary<C>(size: usize, r: SolveReport<C>) -> (usize, String, u64) {
        (size, r.outcome.verdict().to_string(), r.nodes)
    }
    Ok(match kind {
        "tp" => {
            let tp = format::parse_three_partition(text)?;
            summary(tp.unary_size(), solve_tp(&tp, budget))
        }
        "bf" => {
            let bf = format::parse_basket_filling(text)?;
            summary(bf.total_weight(), solve_bf(&bf, budget))
        }
        "sods" | "bisods" => {
            let target = format::parse_sods_target(text)?;
            let report =
                if kind == "sods" { realize_sods(&target, budget) } else { realize_sods_bipartite(&target, budget) };
            summary(target.pairs.len(), report)
        }
        "xy" => {
            let target = format::parse_xy_target(text)?;
            summary(target.pairs.len(), realize_xy(&target, budget))
        }
        "jdmfeas" => {
            let agg = format::parse_jdm_aggregates(text)?;
            let size = agg.sizes.iter().sum::<u64>() as usize;
            summary(size, jdm_feasible_from_aggregates(&agg.sizes, &agg.totals, budget, RowEquation::default()))
        }
        other => return Err(crate::Error::InvalidInstance(format!("unknown instance kind {other:?}"))),
    })
}

/// Runs every recognized instance in `dir`, ordered by file name.
pub fn bench_run(dir: &Path, budget: SearchBudget) -> std::io::Result<Vec<BenchRecord>> {
    let mut files: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().and_then(|e| e.to_str()).is_some_and(|e| EXTENSIONS.contains(&e)))
        .collect();
    files.sort();
    let records = files
        .iter()
        .map(|path| {
            let id = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let kind = path.extension().and_then(|e| e.to_str()).unwrap_or_default();
            let start = Instant::now();
            let result = std::fs::read_to_string(path)
                .map_err(|e| e.to_string())
                .and_then(|text| solve_text(kind, &text, budget).map_err(|e| e.to_string()));
            let millis = start.elapsed().as_millis();
            match result {
                Ok((unary_size, verdict, nodes)) => BenchRecord { id, unary_size, verdict, nodes, millis },
                Err(msg) => BenchRecord { id, unary_size: 0, verdict: format!("error: {msg}"), nodes: 0, millis },
            }
        })
        .collect();
    Ok(records)
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = format!("{CSV_VERSION_LINE}\n{CSV_HEADER}\n");
    for r in records {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}
