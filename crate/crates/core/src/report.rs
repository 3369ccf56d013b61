//! CSV summaries of running both algorithms over a set of drawing files.

use std::time::Instant;

use serde::Serialize;

use crate::algo::{algorithm1, algorithm2, f_bound};
use crate::error::Result;
use crate::io::parse_drawing;
use crate::model::{is_simple, measures, DrawingState};

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ReportRow {
    pub input: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub k: usize,
    pub max_x_before: Option<usize>,
    pub after_algo1: Option<usize>,
    pub after_algo2: Option<usize>,
    pub iterations_algo1: Option<usize>,
    pub iterations_algo2: Option<usize>,
    pub simple: Option<bool>,
    /// Omitted when timing is off, so that reports compare byte for byte.
    pub wall_ms: Option<f64>,
    pub f_bound: f64,
    pub error: String,
}

fn run(state: DrawingState, k: usize, row: &mut ReportRow) -> Result<()> {
    row.n = Some(state.network().graph.vertex_count);
    row.m = Some(state.edge_count());
    row.max_x_before = Some(measures(&state).max_crossings());
    let (out1, trace1) = algorithm1(state.clone(), k)?;
    row.after_algo1 = Some(measures(&out1).max_crossings());
    row.iterations_algo1 = Some(trace1.steps.len());
    let mut simple = is_simple(&out1);
    if k <= 4 {
        let (out2, trace2) = algorithm2(state)?;
        row.after_algo2 = Some(measures(&out2).max_crossings());
        row.iterations_algo2 = Some(trace2.phase1.len() + trace2.phase2.len() + trace2.phase3.len());
        simple &= is_simple(&out2);
    }
    row.simple = Some(simple);
    Ok(())
}

/// One row per `(name, file contents)` input. Failures are reported in the
/// `error` column rather than aborting the report.
pub fn report_rows(inputs: &[(String, Vec<u8>)], k: usize, timing: bool) -> Result<Vec<ReportRow>> {
    let ceiling = f_bound(k)?;
    Ok(inputs
        .iter()
        .map(|(name, bytes)| {
            let mut row = ReportRow {
                input: name.clone(),
                k,
                f_bound: ceiling,
                ..ReportRow::default()
            };
            let start = Instant::now();
            let result = parse_drawing(bytes)
                .and_then(|file| file.into_state())
                .and_then(|state| run(state, k, &mut row));
            if let Err(err) = result {
                row.error = err.to_string();
            }
            if timing {
                row.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            row
        })
        .collect())
}

pub fn experiment_report(inputs: &[(String, Vec<u8>)], k: usize, timing: bool) -> Result<Vec<u8>> {
    let rows = report_rows(inputs, k, timing)?;
    let mut writer = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        writer
            .write_record([
                "input",
                "n",
                "m",
                "k",
                "max_x_before",
                "after_algo1",
                "after_algo2",
                "iterations_algo1",
                "iterations_algo2",
                "simple",
                "wall_ms",
                "f_bound",
                "error",
            ])
            .expect("in-memory write");
    }
    for row in rows {
        writer.serialize(row).expect("in-memory write");
    }
    Ok(writer.into_inner().expect("in-memory write"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input_gives_header_only() {
        let csv = String::from_utf8(experiment_report(&[], 4, false).unwrap()).unwrap();
        assert_eq!(csv.lines().count(), 1);
        assert!(csv.starts_with("input,n,m,k,max_x_before,after_algo1,after_algo2"));
    }

    #[test]
    fn bad_input_becomes_an_annotated_row() {
        let inputs = vec![("broken.json".to_string(), b"{".to_vec())];
        let rows = report_rows(&inputs, 4, false).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].error.contains("invalid JSON"));
    }
}
