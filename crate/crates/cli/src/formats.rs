//! Array files and cube files.
//!
//! An array file holds one permutation per line as whitespace-separated
//! 1-based values; blank lines and lines starting with `#` are skipped.
//! A cube file is either a JSON document `{"order": n, "triples": [[i,j,k], ...]}`
//! or plain text with one `i j k` line per row.

use std::fmt::Write as _;

use costas_core::{CostasCube, Permutation};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A parsed array file. Each array keeps the line it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrayFile {
    pub arrays: Vec<(usize, Permutation)>,
}

impl ArrayFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut arrays = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let values = body
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| {
                        CliError::parse(line, format!("{tok:?} is not a positive integer"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let perm =
                Permutation::new(values).map_err(|e| CliError::parse(line, e.to_string()))?;
            arrays.push((line, perm));
        }
        Ok(ArrayFile { arrays })
    }

    /// Like [`ArrayFile::parse`], and also rejects files that mix orders.
    pub fn parse_uniform(text: &str) -> Result<Self, CliError> {
        let file = Self::parse(text)?;
        if let Some((_, first)) = file.arrays.first() {
            if let Some((line, p)) = file.arrays.iter().find(|(_, p)| p.order() != first.order()) {
                return Err(CliError::parse(
                    *line,
                    format!(
                        "order {} differs from the first array's order {}",
                        p.order(),
                        first.order()
                    ),
                ));
            }
        }
        Ok(file)
    }

    pub fn order(&self) -> Option<usize> {
        self.arrays.first().map(|(_, p)| p.order())
    }

    pub fn permutations(&self) -> Vec<Permutation> {
        self.arrays.iter().map(|(_, p)| p.clone()).collect()
    }
}

/// Writes arrays one per line, after optional `#` header lines.
pub fn write_arrays<'a>(
    header: &[String],
    arrays: impl IntoIterator<Item = &'a Permutation>,
) -> String {
    let mut out = String::new();
    for h in header {
        writeln!(out, "# {h}").unwrap();
    }
    for a in arrays {
        let vals: Vec<String> = a.values().iter().map(usize::to_string).collect();
        writeln!(out, "{}", vals.join(" ")).unwrap();
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct CubeDocument {
    order: usize,
    triples: Vec<[usize; 3]>,
}

/// Parses either cube-file form. The JSON form may carry extra fields.
pub fn parse_cube(text: &str) -> Result<CostasCube, CliError> {
    if text.trim_start().starts_with('{') {
        let doc: CubeDocument =
            serde_json::from_str(text).map_err(|e| CliError::parse(e.line(), e.to_string()))?;
        if doc.triples.len() != doc.order {
            return Err(CliError::Invalid(format!(
                "order is {} but {} triples are listed",
                doc.order,
                doc.triples.len()
            )));
        }
        if let Some(w) = doc.triples.windows(2).find(|w| w[0][0] >= w[1][0]) {
            return Err(CliError::Invalid(format!(
                "triples must be sorted by i; {:?} follows {:?}",
                w[1], w[0]
            )));
        }
        return CostasCube::from_triples(&doc.triples)
            .map_err(|e| CliError::Invalid(e.to_string()));
    }
    let mut triples = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let vals: Vec<usize> = body
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| CliError::parse(line, format!("{t:?} is not a positive integer")))
            })
            .collect::<Result<_, _>>()?;
        let [i, j, k] = vals[..] else {
            return Err(CliError::parse(
                line,
                format!("expected 3 values \"i j k\", found {}", vals.len()),
            ));
        };
        triples.push([i, j, k]);
    }
    if triples.is_empty() {
        return Err(CliError::Invalid("cube file lists no triples".into()));
    }
    CostasCube::from_triples(&triples).map_err(|e| CliError::Invalid(e.to_string()))
}

pub fn cube_json(cube: &CostasCube) -> serde_json::Value {
    serde_json::json!({ "order": cube.order(), "triples": cube.triples() })
}

/// Plain-text cube file with optional `#` header lines.
pub fn write_cube_text(header: &[String], cube: &CostasCube) -> String {
    let mut out = String::new();
    for h in header {
        writeln!(out, "# {h}").unwrap();
    }
    for [i, j, k] in cube.triples() {
        writeln!(out, "{i} {j} {k}").unwrap();
    }
    out
}
