use std::time::{Duration, Instant};

use anyhow::{bail, Result};
use realnum_core::arboreal::{
    bigraph_laman_number, count_intersecting_pairs, realisation_report, CountMethod, CountOptions,
};
use realnum_core::bounds::{bound_report, jackson_owen_from, BoundOptions, SearchBudget, MAX_EXHAUSTIVE};
use realnum_core::graph::{encode_graph6, henneberg_generate, is_minimally_rigid_2d, parse_graph6_lines};
use realnum_core::matroid::{
    broken_circuits, characteristic_and_chromatic, enumerate_nbc_bases, GraphicMatroid, Matroid,
};
use realnum_core::oracle::{oracle_count, OracleReport};
use realnum_core::LabelledGraph;
use serde::Serialize;
use serde_json::json;

use crate::args::{Cli, Command, GlobalArgs, GraphArgs, Method, OutputFormat};
use crate::input::{
    epsilon_index, format_set, load_graph, load_one, parse_labels, parse_order, parse_range, read_text, set_labels,
    sort_sets, usage,
};
use crate::row::{compute_row, emit_rows, run_rows, RowOptions};

/// Exit status of a command that ran to completion.
pub enum Outcome {
    Success,
    Failure,
}

struct Ctx<'a> {
    global: &'a GlobalArgs,
    start: Instant,
}

impl Ctx<'_> {
    fn deadline(&self) -> Option<Instant> {
        self.global.timeout.map(|s| self.start + Duration::from_secs_f64(s))
    }

    fn json(&self) -> bool {
        self.global.jsonl || self.global.output == OutputFormat::Json
    }

    fn print_json<T: Serialize>(&self, value: &T) -> Result<()> {
        if self.global.jsonl {
            println!("{}", serde_json::to_string(value)?);
        } else {
            println!("{}", serde_json::to_string_pretty(value)?);
        }
        Ok(())
    }

    fn row_options(&self, order: &str, oracle: bool) -> RowOptions {
        RowOptions {
            order: order.to_string(),
            oracle,
            seed: self.global.seed,
            timeout: self.global.timeout,
            deterministic: self.global.deterministic,
        }
    }

    /// Single-graph commands emit the common result row under `--output csv`.
    fn csv_row(&self, args: &GraphArgs) -> Result<Option<Outcome>> {
        if self.global.output != OutputFormat::Csv || self.global.jsonl {
            return Ok(None);
        }
        let (id, g) = load_graph(args)?;
        let row = compute_row(&id, &g, &self.row_options(&args.order, false))?;
        emit_rows(&[row], OutputFormat::Csv, false)?;
        Ok(Some(Outcome::Success))
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let ctx = Ctx {
        global: &cli.global,
        start: Instant::now(),
    };
    match &cli.command {
        Command::Laman(args) => laman(&ctx, args),
        Command::C2 {
            graph,
            method,
            witnesses,
        } => c2(&ctx, graph, *method, *witnesses),
        Command::Nbc { graph, list, broken } => nbc(&ctx, graph, *list, *broken),
        Command::Bounds {
            graph,
            no_c2,
            search,
            restarts,
        } => bounds(&ctx, graph, !*no_c2, *search, *restarts),
        Command::Tutte(args) => tutte(&ctx, args),
        Command::Bigraph {
            graph,
            h_fixture,
            h_input,
            bijection,
        } => bigraph(
            &ctx,
            graph,
            h_fixture.as_deref(),
            h_input.as_deref(),
            bijection.as_deref(),
        ),
        Command::OracleVerify { graph, seeds, epsilon } => oracle_verify(&ctx, graph, *seeds, epsilon),
        Command::Catalog { n, oracle } => catalog(&ctx, n, *oracle),
        Command::Batch { input, order, oracle } => batch(&ctx, input.as_deref(), order, *oracle),
    }
}

fn laman(ctx: &Ctx, args: &GraphArgs) -> Result<Outcome> {
    if let Some(done) = ctx.csv_row(args)? {
        return Ok(done);
    }
    let (id, g) = load_graph(args)?;
    let laman = is_minimally_rigid_2d(&g)?;
    if ctx.json() {
        ctx.print_json(&json!({"graph": id, "n": g.vertex_count(), "m": g.edge_count(), "laman": laman}))?;
    } else {
        println!("{laman}");
    }
    Ok(Outcome::Success)
}

fn c2(ctx: &Ctx, args: &GraphArgs, method: Method, witnesses: bool) -> Result<Outcome> {
    if let Some(done) = ctx.csv_row(args)? {
        return Ok(done);
    }
    let (id, g) = load_graph(args)?;
    let order = parse_order(&args.order, &g)?;
    let opts = CountOptions {
        witnesses,
        deadline: ctx.deadline(),
        method: match method {
            Method::Auto => CountMethod::Auto,
            Method::Split => CountMethod::Split,
            Method::Enumerate => CountMethod::Enumerate,
        },
    };
    let report = realisation_report(&g, &order, &opts)?;
    if ctx.json() {
        ctx.print_json(&json!({
            "graph": id,
            "c2": report.unordered,
            "orderedPairs": report.ordered,
            "stats": report.stats,
            "witnesses": report.witnesses,
        }))?;
    } else {
        println!("{}", report.unordered);
        for w in &report.witnesses {
            let chain = |flats: &[realnum_core::EdgeSet]| {
                flats.iter().map(|&f| format_set(&g, f)).collect::<Vec<_>>().join(" < ")
            };
            println!("F: {}  H: {}", chain(&w.chain_f), chain(&w.chain_h));
        }
    }
    Ok(Outcome::Success)
}

fn nbc(ctx: &Ctx, args: &GraphArgs, list: bool, broken: bool) -> Result<Outcome> {
    if let Some(done) = ctx.csv_row(args)? {
        return Ok(done);
    }
    let (id, g) = load_graph(args)?;
    let order = parse_order(&args.order, &g)?;
    let m = GraphicMatroid::new(&g)?;
    let mut bases = enumerate_nbc_bases(&m, &order)?;
    sort_sets(&mut bases);
    let mut bc = broken_circuits(&m, &order)?;
    bc.sort_by_key(|s| (s.len(), s.to_vec()));
    if ctx.json() {
        let mut v = json!({"graph": id, "nbc": bases.len(), "upper": bases.len() / 2, "odd": bases.len() % 2 == 1});
        if list {
            v["bases"] = json!(bases.iter().map(|&b| set_labels(&g, b)).collect::<Vec<_>>());
        }
        if broken {
            v["brokenCircuits"] = json!(bc.iter().map(|&b| set_labels(&g, b)).collect::<Vec<_>>());
        }
        ctx.print_json(&v)?;
    } else {
        println!("{}", bases.len());
        if broken {
            println!(
                "broken circuits: {}",
                bc.iter().map(|&b| format_set(&g, b)).collect::<Vec<_>>().join(" ")
            );
        }
        if list {
            println!(
                "nbc bases: {}",
                bases.iter().map(|&b| format_set(&g, b)).collect::<Vec<_>>().join(" ")
            );
        }
    }
    Ok(Outcome::Success)
}

fn bounds(ctx: &Ctx, args: &GraphArgs, with_c2: bool, search: bool, restarts: usize) -> Result<Outcome> {
    if let Some(done) = ctx.csv_row(args)? {
        return Ok(done);
    }
    let (id, g) = load_graph(args)?;
    let order = parse_order(&args.order, &g)?;
    let budget = if g.edge_count() <= MAX_EXHAUSTIVE {
        SearchBudget::Exhaustive
    } else {
        SearchBudget::Random {
            restarts,
            seed: ctx.global.seed,
            deadline: ctx.deadline(),
        }
    };
    let opts = BoundOptions {
        with_c2,
        search: search.then_some(budget),
    };
    let r = bound_report(&g, &id, &order, &opts)?;
    let jo = r.c2.map(|c| jackson_owen_from(c, r.n));
    if ctx.json() {
        let mut v = serde_json::to_value(&r)?;
        if let Some(jo) = jo {
            v["jacksonOwen"] = serde_json::to_value(jo)?;
        }
        ctx.print_json(&v)?;
    } else {
        println!("graph: {}", r.graph);
        println!("nbc: {}{}", r.nbc_count, if r.nbc_odd { " (odd)" } else { "" });
        println!("upper: {}", r.upper_bound);
        println!("realisation bases: {}", r.realisation_basis_count);
        println!("lower: {}", r.lower_bound);
        if let Some(c) = r.c2 {
            println!("c2: {c}");
        }
        if let Some(jo) = jo {
            let verdict = if jo.satisfied { "satisfied" } else { "violated" };
            println!("2^(n-3): {} ({verdict})", jo.threshold);
        }
        if let Some(best) = &r.best_order {
            let tag = if best.certified { "certified" } else { "not certified" };
            println!(
                "best order: {} with {} realisation bases ({tag})",
                best.order.join(","),
                best.count
            );
        }
    }
    if !r.is_consistent() {
        eprintln!("graph {id}: bounds are inconsistent with c2");
        return Ok(Outcome::Failure);
    }
    Ok(Outcome::Success)
}

fn tutte(ctx: &Ctx, args: &GraphArgs) -> Result<Outcome> {
    if let Some(done) = ctx.csv_row(args)? {
        return Ok(done);
    }
    let (id, g) = load_graph(args)?;
    let m = GraphicMatroid::new(&g)?;
    let t = m.tutte_polynomial();
    let t10 = t.eval(1, 0);
    let report = characteristic_and_chromatic(&g)?;
    let chromatic = report.chromatic.ok();
    if ctx.json() {
        ctx.print_json(&json!({
            "graph": id,
            "tutte": t,
            "t10": t10,
            "characteristic": report.characteristic,
            "chromatic": chromatic,
        }))?;
    } else {
        println!("T(x, y) = {t}");
        println!("T(1, 0) = {t10}");
        println!("χ(λ) = {}", report.characteristic);
        match chromatic {
            Some(p) => println!("P(λ) = {p}"),
            None => println!("P(λ): graph is disconnected"),
        }
    }
    Ok(Outcome::Success)
}

fn bigraph(
    ctx: &Ctx,
    args: &GraphArgs,
    h_fixture: Option<&str>,
    h_input: Option<&std::path::Path>,
    bijection: Option<&str>,
) -> Result<Outcome> {
    let (id, g) = load_graph(args)?;
    let (h_id, h) = if h_fixture.is_none() && h_input.is_none() {
        (id.clone(), g.clone())
    } else {
        load_one(h_fixture, h_input, args.format)?
    };
    let order = parse_order(&args.order, &g)?;
    let map = bijection.map(|b| parse_labels(b, &h)).transpose()?;
    let lam = bigraph_laman_number(&g, &h, map.as_deref(), &order)?;
    if ctx.json() {
        ctx.print_json(&json!({"g": id, "h": h_id, "laman": lam}))?;
    } else {
        println!("{lam}");
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct VerifyReport {
    graph: String,
    enumerated: u64,
    split: u64,
    oracle: Vec<OracleReport>,
    verified: bool,
}

fn oracle_verify(ctx: &Ctx, args: &GraphArgs, seeds: u64, epsilon: &[String]) -> Result<Outcome> {
    let (id, g) = load_graph(args)?;
    let order = parse_order(&args.order, &g)?;
    if !is_minimally_rigid_2d(&g)? {
        bail!("graph {id} is not minimally 2-rigid");
    }
    let eps: Vec<usize> = if epsilon.is_empty() {
        vec![order.max_element()]
    } else {
        epsilon.iter().map(|l| epsilon_index(l, &g)).collect::<Result<_>>()?
    };
    if seeds == 0 {
        return Err(usage("--seeds must be positive"));
    }
    let m = GraphicMatroid::new(&g)?;
    let count = |method| {
        let opts = CountOptions {
            deadline: ctx.deadline(),
            method,
            ..CountOptions::default()
        };
        count_intersecting_pairs(&m, &m, &order, &opts).map(|r| r.ordered)
    };
    let enumerated = count(CountMethod::Enumerate)?;
    let split = count(CountMethod::Split)?;
    let mut oracle = Vec::new();
    for s in 0..seeds {
        for &e in &eps {
            oracle.push(oracle_count(&m, &m, &order, ctx.global.seed + s, e)?);
        }
    }
    let verified = enumerated == split && oracle.iter().all(|o| o.count == split);
    if ctx.json() {
        ctx.print_json(&VerifyReport {
            graph: id.clone(),
            enumerated,
            split,
            oracle: oracle.clone(),
            verified,
        })?;
    } else {
        let mut counts: Vec<u64> = oracle.iter().map(|o| o.count).collect();
        counts.dedup();
        let shown = counts.iter().map(u64::to_string).collect::<Vec<_>>().join("/");
        let verdict = if verified { "verified" } else { "MISMATCH" };
        println!("{enumerated} == {split} == {shown}; {verdict}");
    }
    if !verified {
        eprintln!("graph {id}: counts disagree");
        return Ok(Outcome::Failure);
    }
    Ok(Outcome::Success)
}

fn catalog(ctx: &Ctx, n: &str, oracle: bool) -> Result<Outcome> {
    let (lo, hi) = parse_range(n)?;
    let mut inputs: Vec<(String, Result<LabelledGraph>)> = Vec::new();
    for n in lo..=hi {
        let graphs = henneberg_generate(n).map_err(|e| usage(e.to_string()))?;
        for g in graphs {
            inputs.push((encode_graph6(&g)?, Ok(g)));
        }
    }
    let ok = run_rows(
        inputs,
        &ctx.row_options("paper", oracle),
        ctx.global.output,
        ctx.global.jsonl,
    )?;
    Ok(if ok { Outcome::Success } else { Outcome::Failure })
}

fn batch(ctx: &Ctx, input: Option<&std::path::Path>, order: &str, oracle: bool) -> Result<Outcome> {
    let text = read_text(input.unwrap_or(std::path::Path::new("-")))?;
    let lines: Vec<&str> = text.lines().collect();
    let inputs = parse_graph6_lines(&text)
        .into_iter()
        .map(|(line, g)| (lines[line - 1].trim().to_string(), g.map_err(anyhow::Error::from)))
        .collect();
    let ok = run_rows(
        inputs,
        &ctx.row_options(order, oracle),
        ctx.global.output,
        ctx.global.jsonl,
    )?;
    Ok(if ok { Outcome::Success } else { Outcome::Failure })
}
