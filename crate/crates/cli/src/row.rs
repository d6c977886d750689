use std::io::Write;
use std::time::{Duration, Instant};

use anyhow::{bail, Result};
use rayon::prelude::*;
use realnum_core::arboreal::{realisation_report, CountOptions};
use realnum_core::bounds::realisation_bases;
use realnum_core::graph::is_minimally_rigid_2d;
use realnum_core::matroid::{enumerate_nbc_bases, GraphicMatroid};
use realnum_core::oracle::oracle_count;
use realnum_core::{EdgeOrder, LabelledGraph};
use serde::Serialize;

use crate::args::OutputFormat;

/// One line of a batch table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultRow {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub laman: bool,
    pub c2: Option<u64>,
    pub nbc: Option<usize>,
    pub upper: Option<usize>,
    pub lower: Option<usize>,
    pub elapsed_ms: u64,
    pub verified: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct RowOptions {
    pub order: String,
    pub oracle: bool,
    pub seed: u64,
    pub timeout: Option<f64>,
    pub deterministic: bool,
}

pub fn compute_row(id: &str, g: &LabelledGraph, opts: &RowOptions) -> Result<ResultRow> {
    let start = Instant::now();
    let mut row = ResultRow {
        graph: id.to_string(),
        n: g.vertex_count(),
        m: g.edge_count(),
        laman: g.vertex_count() >= 3 && is_minimally_rigid_2d(g)?,
        c2: None,
        nbc: None,
        upper: None,
        lower: None,
        elapsed_ms: 0,
        verified: None,
    };
    if row.laman {
        let order = crate::input::parse_order(&opts.order, g)?;
        let count_opts = CountOptions {
            deadline: opts.timeout.map(|s| start + Duration::from_secs_f64(s)),
            ..CountOptions::default()
        };
        let report = realisation_report(g, &order, &count_opts)?;
        let matroid = GraphicMatroid::new(g)?;
        let nbc = enumerate_nbc_bases(&matroid, &order)?.len();
        row.c2 = Some(report.unordered);
        row.nbc = Some(nbc);
        row.upper = Some(nbc / 2);
        row.lower = Some(realisation_bases(&matroid, &order)?.len() / 2);
        if opts.oracle {
            row.verified = Some(verify(&matroid, &order, opts.seed, report.ordered)?);
        }
    }
    if !opts.deterministic {
        row.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    Ok(row)
}

fn verify(matroid: &GraphicMatroid, order: &EdgeOrder, seed: u64, ordered: u64) -> Result<bool> {
    let oracle = oracle_count(matroid, matroid, order, seed, order.max_element())?;
    if oracle.count != ordered {
        bail!("oracle counted {} pairs, search counted {ordered}", oracle.count);
    }
    Ok(true)
}

/// Rows in input order, computed in parallel; failures are itemised on
/// stderr. Returns whether every graph succeeded.
pub fn run_rows(
    inputs: Vec<(String, Result<LabelledGraph>)>,
    opts: &RowOptions,
    format: OutputFormat,
    jsonl: bool,
) -> Result<bool> {
    let results: Vec<(String, Result<ResultRow>)> = inputs
        .into_par_iter()
        .map(|(id, g)| {
            let row = g.and_then(|g| compute_row(&id, &g, opts));
            (id, row)
        })
        .collect();
    let mut rows = Vec::new();
    let mut ok = true;
    for (id, r) in results {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => {
                ok = false;
                eprintln!("graph {id}: {e:#}");
            }
        }
    }
    emit_rows(&rows, format, jsonl)?;
    Ok(ok)
}

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

pub fn emit_rows(rows: &[ResultRow], format: OutputFormat, jsonl: bool) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if jsonl {
        for r in rows {
            writeln!(out, "{}", serde_json::to_string(r)?)?;
        }
        return Ok(());
    }
    match format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(rows)?)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if rows.is_empty() {
                w.write_record([
                    "graph",
                    "n",
                    "m",
                    "laman",
                    "c2",
                    "nbc",
                    "upper",
                    "lower",
                    "elapsed_ms",
                    "verified",
                ])?;
            }
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        OutputFormat::Table => {
            let header = [
                "graph", "n", "m", "laman", "c2", "nbc", "upper", "lower", "ms", "verified",
            ];
            let body: Vec<[String; 10]> = rows
                .iter()
                .map(|r| {
                    [
                        r.graph.clone(),
                        r.n.to_string(),
                        r.m.to_string(),
                        r.laman.to_string(),
                        cell(&r.c2),
                        cell(&r.nbc),
                        cell(&r.upper),
                        cell(&r.lower),
                        r.elapsed_ms.to_string(),
                        cell(&r.verified),
                    ]
                })
                .collect();
            let mut width = header.map(str::len);
            for line in &body {
                for (w, c) in width.iter_mut().zip(line) {
                    *w = (*w).max(c.len());
                }
            }
            let print = |out: &mut dyn Write, cells: &[String]| -> std::io::Result<()> {
                let parts: Vec<String> = cells
                    .iter()
                    .zip(width)
                    .enumerate()
                    .map(|(i, (c, w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
                    .collect();
                writeln!(out, "{}", parts.join("  ").trim_end())
            };
            print(&mut out, &header.map(String::from))?;
            for line in &body {
                print(&mut out, line)?;
            }
        }
    }
    Ok(())
}
