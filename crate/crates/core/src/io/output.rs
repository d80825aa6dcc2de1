use std::io::Write;

use serde_json::json;

use crate::error::Result;
use crate::solver::RankResult;

use super::fmt_float;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    #[default]
    Csv,
    Tsv,
}

/// Node ids ordered by descending score, ties by ascending id.
pub fn ranking(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    order
}

/// Serializes a result. JSON carries the whole result with scores in node
/// order; CSV and TSV list `node_id,score` rows by descending score.
pub fn write_rank_result<W: Write>(r: &RankResult, format: OutputFormat, mut out: W) -> Result<()> {
    let scores = r.x.as_slice();
    match format {
        OutputFormat::Json => {
            let doc = json!({
                "scores": scores,
                "iterations": r.iterations,
                "converged": r.converged,
                "final_residual": r.final_residual,
                "estimated_rate": r.estimated_rate,
            });
            serde_json::to_writer_pretty(&mut out, &doc).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
        OutputFormat::Csv | OutputFormat::Tsv => {
            let sep = if format == OutputFormat::Csv {
                ','
            } else {
                '\t'
            };
            for id in ranking(scores) {
                writeln!(out, "{id}{sep}{}", fmt_float(scores[id]))?;
            }
        }
    }
    out.flush()?;
    Ok(())
}
