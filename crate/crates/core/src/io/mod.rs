//! Text formats and seeded test-instance generation.

pub mod edgelist;
pub mod output;
pub mod random;

pub use edgelist::{parse_edge_list, parse_edge_list_reader, write_edge_list};
pub use output::{write_rank_result, OutputFormat};
pub use random::{
    random_instance, random_stochastic, InstanceMode, InstanceRng, RandomInstanceSpec,
};

use crate::error::{Error, Result};

/// Shortest decimal form that parses back to the same `f64`. Very large or
/// small magnitudes use exponent notation.
pub fn fmt_float(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// Reads one float per line. Blank lines and `#` comments are skipped.
pub fn parse_vector(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v = line.parse::<f64>().map_err(|_| Error::Parse {
            line: idx + 1,
            message: format!("invalid number '{line}'"),
        })?;
        out.push(v);
    }
    Ok(out)
}
