//! Command-line front end: `gen`, `run`, `verify`, `report`.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 algorithm
//! failure. Runs are deterministic per seed; the CSV is byte-identical
//! across repeats except for the trailing wall-time column.

use crate::colouring::{
    greedy_by_ordering, incidence_nibble_colouring, three_tier_colouring, vizing, ListAssignment,
    TierParams,
};
use crate::efl::{
    efl_small_colouring, partition_large, reorder, EflParams, PartitionOutcome, ReorderOutcome,
};
use crate::generators::{GenSpec, LatinSquare};
use crate::hypergraph::{EdgeOrdering, Graph, Hypergraph};
use crate::nibble::{
    greedy_independent_set_trianglefree, partial_steiner, random_greedy_matching, rodl_nibble,
    DegreeMode, NibbleParams,
};
use crate::oracle;
use crate::{io as fmt_io, verify};
use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::PathBuf;

pub const CSV_HEADER: &str = "schema,instance,fingerprint,family,n,m,algo,seed,status,\
colours_used,matching_size,uncovered,n_plus_one_ok,\
brouwer_conjectured_min_matching,mnr_conjectured_colours,\
rbs_conjectured_transversal,oracle_matching_number,wall_ms";
pub const CSV_SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(
    name = "hypernibble",
    about = "Matchings and edge colourings for linear hypergraphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and write it in .lhg format.
    Gen(GenArgs),
    /// Run an algorithm over an instance for one or more seeds.
    Run(Box<RunArgs>),
    /// Re-check matchings or colourings against their instance.
    Verify(VerifyArgs),
    /// Aggregate a results CSV into summary tables.
    Report(ReportArgs),
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// pg | degenerate | complete | sts | latin | steiner-aux |
    /// random-linear | paircover
    #[arg(long)]
    family: Option<String>,
    /// Prime order for pg.
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    /// Latin square order (cyclic square).
    #[arg(long)]
    order: Option<u32>,
    /// Latin square file (n lines of n symbols) instead of --order.
    #[arg(long)]
    latin_file: Option<PathBuf>,
    #[arg(long)]
    target_m: Option<usize>,
    #[arg(long)]
    triple_frac: Option<f64>,
    /// Seed of the instance generator.
    #[arg(long, default_value_t = 0)]
    gen_seed: u64,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Instance file (.lhg); alternatively give --family and parameters.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    family: FamilyArgs,
    /// nibble | greedy-match | vizing | greedy-colour | incidence-colour |
    /// three-tier | efl3 | reorder | partition-large | partial-steiner |
    /// indep-set
    #[arg(long)]
    algo: String,
    /// Seed of the algorithm's randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seed list: "a..b" (half-open) or "a,b,c"; overrides --seed.
    #[arg(long)]
    seeds: Option<String>,
    /// Algorithm parameters as repeatable key=value pairs.
    #[arg(long = "params")]
    params: Vec<String>,
    /// Directory for artifacts (matchings, colourings, reports).
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Append CSV rows here (header written when the file is new).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Worker threads for seed-level parallelism.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// The instance the artifacts refer to.
    #[arg(long)]
    instance: PathBuf,
    /// Matching (.mtc) or colouring (.col) files.
    files: Vec<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// Results CSV produced by `run`.
    #[arg(long)]
    csv: PathBuf,
    /// Also write the summary as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(*args),
        Command::Verify(args) => cmd_verify(args),
        Command::Report(args) => cmd_report(args),
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    2
}

fn family_spec(args: &FamilyArgs) -> Result<(GenSpec, Option<LatinSquare>), String> {
    let family = args.family.as_deref().ok_or("missing --family")?;
    let need = |o: Option<u32>, what: &str| o.ok_or(format!("family {family} needs --{what}"));
    let spec = match family {
        "pg" => GenSpec::ProjectivePlane {
            q: need(args.q, "q")?,
        },
        "degenerate" => GenSpec::DegeneratePlane {
            n: need(args.n, "n")?,
        },
        "complete" => GenSpec::CompleteGraph {
            n: need(args.n, "n")?,
        },
        "sts" => GenSpec::SteinerTriple {
            n: need(args.n, "n")?,
        },
        "latin" => {
            if let Some(path) = &args.latin_file {
                let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                let square = fmt_io::parse_latin(&text).map_err(|e| e.to_string())?;
                let n = square.order();
                return Ok((GenSpec::LatinCyclic { n }, Some(square)));
            }
            GenSpec::LatinCyclic {
                n: need(args.order, "order")?,
            }
        }
        "steiner-aux" => GenSpec::SteinerAuxiliary {
            t: need(args.t, "t")?,
            k: need(args.k, "k")?,
            n: need(args.n, "n")?,
        },
        "random-linear" => GenSpec::RandomLinear {
            n: need(args.n, "n")?,
            k: need(args.k, "k")?,
            target_m: args
                .target_m
                .ok_or("family random-linear needs --target-m")?,
            seed: args.gen_seed,
        },
        "paircover" => GenSpec::RandomPairCover {
            n: need(args.n, "n")?,
            triple_fraction: args.triple_frac.unwrap_or(0.5),
            seed: args.gen_seed,
        },
        other => return Err(format!("unknown family {other:?}")),
    };
    Ok((spec, None))
}

fn generate(args: &FamilyArgs) -> Result<(Hypergraph, String), String> {
    let (spec, latin) = family_spec(args)?;
    let h = match latin {
        Some(square) => crate::generators::latin_square_hypergraph(&square),
        None => spec.generate().map_err(|e| e.to_string())?,
    };
    Ok((h, spec.family_tag().to_string()))
}

fn cmd_gen(args: GenArgs) -> i32 {
    let (h, family) = match generate(&args.family) {
        Ok(x) => x,
        Err(e) => return usage_error(&e),
    };
    let text = fmt_io::serialize_lhg(&h);
    if let Some(out) = &args.out {
        if let Err(e) = std::fs::write(out, &text) {
            eprintln!("error: cannot write {}: {e}", out.display());
            return 3;
        }
    } else {
        print!("{text}");
    }
    let stats = h.stats();
    eprintln!(
        "{family}: n={} m={} sizes {}..{} max_degree={} codegree={} linear={} intersecting={} fingerprint={}",
        stats.n,
        stats.m,
        stats.min_edge_size,
        stats.max_edge_size,
        stats.max_degree,
        stats.max_codegree,
        stats.is_linear,
        stats.is_intersecting,
        fingerprint(&h),
    );
    0
}

/// Content hash of the canonical serialization; stable across renames.
pub fn fingerprint(h: &Hypergraph) -> String {
    let digest = Sha256::digest(fmt_io::serialize_lhg(h).as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    hex[..16].to_string()
}

fn parse_seeds(seed: u64, seeds: &Option<String>) -> Result<Vec<u64>, String> {
    let Some(spec) = seeds else {
        return Ok(vec![seed]);
    };
    let spec = spec.trim();
    if let Some((a, b)) = spec.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| "bad seed range")?;
        let b: u64 = b.trim().parse().map_err(|_| "bad seed range")?;
        if a >= b {
            return Err("empty seed range".into());
        }
        return Ok((a..b).collect());
    }
    let mut out = Vec::new();
    for part in spec.split(',') {
        out.push(
            part.trim()
                .parse()
                .map_err(|_| format!("bad seed {part:?}"))?,
        );
    }
    let mut dedup = out.clone();
    dedup.sort_unstable();
    dedup.dedup();
    if dedup.len() != out.len() {
        return Err("seeds must be distinct".into());
    }
    Ok(out)
}

#[derive(Clone, Debug, Default)]
struct ParamMap(BTreeMap<String, String>);

impl ParamMap {
    fn parse(pairs: &[String]) -> Result<Self, String> {
        let mut map = BTreeMap::new();
        for pair in pairs {
            let (k, v) = pair
                .split_once('=')
                .ok_or(format!("--params expects key=value, got {pair:?}"))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Self(map))
    }

    fn f64(&self, key: &str, default: f64) -> Result<f64, String> {
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| format!("bad value for {key}: {v:?}")),
        }
    }

    fn u32(&self, key: &str, default: u32) -> Result<u32, String> {
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| format!("bad value for {key}: {v:?}")),
        }
    }

    fn usize(&self, key: &str, default: usize) -> Result<usize, String> {
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| format!("bad value for {key}: {v:?}")),
        }
    }

    fn flag(&self, key: &str, default: bool) -> Result<bool, String> {
        match self.0.get(key).map(String::as_str) {
            None => Ok(default),
            Some("1") | Some("true") => Ok(true),
            Some("0") | Some("false") => Ok(false),
            Some(v) => Err(format!("bad value for {key}: {v:?}")),
        }
    }
}

fn nibble_params(params: &ParamMap, seed: u64) -> Result<NibbleParams, String> {
    let mut p = NibbleParams::default();
    let rate = params.f64("selection_rate", p.selection_rate)?;
    if rate != p.selection_rate {
        if rate <= 0.0 {
            return Err("selection_rate must be positive".into());
        }
        p = p.with_selection_rate(rate);
    }
    p.rounds = params.u32("rounds", p.rounds)?;
    p.completion = params.flag("completion", p.completion)?;
    p.degree_mode = match params.0.get("degree_mode").map(String::as_str) {
        None | Some("measured") => DegreeMode::Measured,
        Some("formula") => DegreeMode::Formula,
        Some(v) => return Err(format!("bad degree_mode {v:?}")),
    };
    p.seed = seed;
    Ok(p)
}

fn efl_params(params: &ParamMap, seed: u64) -> Result<EflParams, String> {
    let d = EflParams::default();
    Ok(EflParams {
        xi: params.f64("xi", d.xi)?,
        kappa: params.f64("kappa", d.kappa)?,
        gamma: params.f64("gamma", d.gamma)?,
        eps: params.f64("eps", d.eps)?,
        seed,
        reservoir_retries: params.u32("reservoir_retries", d.reservoir_retries)?,
        r2_samples: params.u32("r2_samples", d.r2_samples)?,
        pm_attempts: params.u32("pm_attempts", d.pm_attempts)?,
        slice_retries: params.u32("slice_retries", d.slice_retries)?,
        nibble: nibble_params(params, seed)?,
    })
}

/// One CSV row; numeric fields stay empty when not applicable.
#[derive(Clone, Debug)]
struct RunRecord {
    instance: String,
    fingerprint: String,
    family: String,
    n: u32,
    m: usize,
    algo: String,
    seed: u64,
    status: String,
    colours_used: Option<usize>,
    matching_size: Option<usize>,
    uncovered: Option<usize>,
    n_plus_one_ok: Option<bool>,
    brouwer: Option<u32>,
    mnr: Option<u32>,
    rbs: Option<u32>,
    oracle_nu: Option<u32>,
    wall_ms: u128,
}

impl RunRecord {
    fn to_csv(&self) -> String {
        fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            CSV_SCHEMA,
            self.instance,
            self.fingerprint,
            self.family,
            self.n,
            self.m,
            self.algo,
            self.seed,
            self.status,
            opt(&self.colours_used),
            opt(&self.matching_size),
            opt(&self.uncovered),
            opt(&self.n_plus_one_ok.map(u8::from)),
            opt(&self.brouwer),
            opt(&self.mnr),
            opt(&self.rbs),
            opt(&self.oracle_nu),
            self.wall_ms
        )
    }
}

struct RunContext {
    h: Hypergraph,
    instance: String,
    fp: String,
    family: String,
    algo: String,
    params: ParamMap,
    out_dir: Option<PathBuf>,
}

fn cmd_run(args: RunArgs) -> i32 {
    let (h, instance, family) = if let Some(input) = &args.input {
        let text = match std::fs::read_to_string(input) {
            Ok(t) => t,
            Err(e) => return usage_error(&format!("cannot read {}: {e}", input.display())),
        };
        let parsed = match fmt_io::parse_lhg(&text) {
            Ok(p) => p,
            Err(e) => return usage_error(&format!("{}: {e}", input.display())),
        };
        if parsed.dropped_unit_edges > 0 {
            eprintln!(
                "note: dropped {} size-one edge(s) from {}",
                parsed.dropped_unit_edges,
                input.display()
            );
        }
        let stem = input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "instance".into());
        let family = args
            .family
            .family
            .clone()
            .unwrap_or_else(|| "file".to_string());
        (parsed.hypergraph, stem, family)
    } else if args.family.family.is_some() {
        match generate(&args.family) {
            Ok((h, family)) => {
                let instance = format!("{family}-{}", fingerprint(&h));
                (h, instance, family)
            }
            Err(e) => return usage_error(&e),
        }
    } else if args.algo == "partial-steiner" {
        // The auxiliary instance is built from t, k, n inside the run.
        let empty = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        (empty, "partial-steiner".into(), "steiner-aux".into())
    } else {
        return usage_error("give --input FILE or --family ...");
    };

    let seeds = match parse_seeds(args.seed, &args.seeds) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let params = match ParamMap::parse(&args.params) {
        Ok(p) => p,
        Err(e) => return usage_error(&e),
    };
    if let Some(dir) = &args.out_dir {
        if let Err(e) = std::fs::create_dir_all(dir) {
            return usage_error(&format!("cannot create {}: {e}", dir.display()));
        }
    }

    let ctx = RunContext {
        fp: fingerprint(&h),
        h,
        instance,
        family,
        algo: args.algo.clone(),
        params,
        out_dir: args.out_dir.clone(),
    };

    let jobs = args.jobs.max(1);
    let records: Vec<RunRecord> = if jobs == 1 || seeds.len() == 1 {
        seeds.iter().map(|&s| execute(&ctx, s)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            use rayon::prelude::*;
            seeds.par_iter().map(|&s| execute(&ctx, s)).collect()
        })
    };
    let mut records = records;
    records.sort_by(|a, b| (&a.instance, &a.algo, a.seed).cmp(&(&b.instance, &b.algo, b.seed)));

    let mut csv = String::new();
    for r in &records {
        csv.push_str(&r.to_csv());
        csv.push('\n');
        println!("{}", r.to_csv());
    }
    if let Some(path) = &args.csv {
        let need_header = !path.exists();
        let mut body = String::new();
        if need_header {
            body.push_str(CSV_HEADER);
            body.push('\n');
        }
        body.push_str(&csv);
        if let Err(e) = append_file(path, &body) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 3;
        }
    }

    if records.iter().any(|r| r.status.starts_with("verify_failed")) {
        1
    } else if records.iter().any(|r| r.status != "ok") {
        3
    } else {
        0
    }
}

fn append_file(path: &std::path::Path, body: &str) -> std::io::Result<()> {
    use std::io::Write;
    let mut f = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    f.write_all(body.as_bytes())
}

fn artifact_path(ctx: &RunContext, seed: u64, ext: &str) -> Option<PathBuf> {
    ctx.out_dir
        .as_ref()
        .map(|d| d.join(format!("{}_{}_s{}.{ext}", ctx.instance, ctx.algo, seed)))
}

fn write_artifact(ctx: &RunContext, seed: u64, ext: &str, body: &str) -> Result<(), String> {
    if let Some(path) = artifact_path(ctx, seed, ext) {
        std::fs::write(&path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(())
}

/// Conjectured baselines, emitted for reporting and never used as gates.
fn baselines(ctx: &RunContext, record: &mut RunRecord) {
    let n = ctx.h.n();
    match ctx.family.as_str() {
        "sts" => {
            // Matching at least (n - 4) / 3 and colourings within
            // (n - 1) / 2 + 3 are long-standing conjectured targets.
            record.brouwer = Some(n.saturating_sub(4) / 3);
            record.mnr = Some((n - 1) / 2 + 3);
        }
        "latin" => {
            let order = n / 3;
            record.rbs = Some(order.saturating_sub(1));
            if order <= 7 {
                record.oracle_nu =
                    oracle::matching_number(&ctx.h, 64).ok();
            }
        }
        _ => {}
    }
}

fn execute(ctx: &RunContext, seed: u64) -> RunRecord {
    let mut record = RunRecord {
        instance: ctx.instance.clone(),
        fingerprint: ctx.fp.clone(),
        family: ctx.family.clone(),
        n: ctx.h.n(),
        m: ctx.h.m(),
        algo: ctx.algo.clone(),
        seed,
        status: "ok".into(),
        colours_used: None,
        matching_size: None,
        uncovered: None,
        n_plus_one_ok: None,
        brouwer: None,
        mnr: None,
        rbs: None,
        oracle_nu: None,
        wall_ms: 0,
    };
    baselines(ctx, &mut record);
    let start = std::time::Instant::now();
    let result = execute_inner(ctx, seed, &mut record);
    record.wall_ms = start.elapsed().as_millis();
    if let Err(e) = result {
        if record.status == "ok" {
            record.status = format!("error:{}", sanitize(&e));
        }
    }
    record
}

fn sanitize(msg: &str) -> String {
    msg.replace([',', '\n'], ";")
}

fn execute_inner(ctx: &RunContext, seed: u64, record: &mut RunRecord) -> Result<(), String> {
    let h = &ctx.h;
    match ctx.algo.as_str() {
        "nibble" => {
            let p = nibble_params(&ctx.params, seed)?;
            let report = rodl_nibble(h, &p);
            let m = &report.matchings[0];
            if let Err(w) = verify::verify_matching(h, m.edge_ids()) {
                record.status = format!("verify_failed:{}", sanitize(&w.to_string()));
                return Ok(());
            }
            record.matching_size = Some(m.len());
            record.uncovered = Some(report.uncovered);
            write_artifact(
                ctx,
                seed,
                "mtc",
                &fmt_io::serialize_matchings(&[m.edge_ids().to_vec()]),
            )?;
            write_artifact(ctx, seed, "json", &report.to_json().to_string())?;
        }
        "greedy-match" => {
            let report = random_greedy_matching(h, seed);
            let m = &report.matchings[0];
            if let Err(w) = verify::verify_matching(h, m.edge_ids()) {
                record.status = format!("verify_failed:{}", sanitize(&w.to_string()));
                return Ok(());
            }
            record.matching_size = Some(m.len());
            record.uncovered = Some(report.uncovered);
            write_artifact(
                ctx,
                seed,
                "mtc",
                &fmt_io::serialize_matchings(&[m.edge_ids().to_vec()]),
            )?;
        }
        "vizing" => {
            let g = Graph::from_hypergraph(h.clone()).map_err(|e| e.to_string())?;
            let colouring = vizing(&g);
            if let Err(w) = verify::verify_colouring(h, &colouring) {
                record.status = format!("verify_failed:{}", sanitize(&w.to_string()));
                return Ok(());
            }
            record.colours_used = Some(colouring.colours_used());
            write_artifact(ctx, seed, "col", &fmt_io::serialize_colouring(&colouring))?;
        }
        "greedy-colour" => {
            let ord = EdgeOrdering::size_monotone_decreasing(h);
            let colouring = greedy_by_ordering(h, &ord, None).map_err(|e| e.to_string())?;
            if let Err(w) = verify::verify_colouring(h, &colouring) {
                record.status = format!("verify_failed:{}", sanitize(&w.to_string()));
                return Ok(());
            }
            record.colours_used = Some(colouring.colours_used());
            write_artifact(ctx, seed, "col", &fmt_io::serialize_colouring(&colouring))?;
        }
        "incidence-colour" => {
            let d = ctx
                .params
                .u32("d", h.max_degree().max(1) as u32)?;
            let p = nibble_params(&ctx.params, seed)?;
            let (colouring, report) =
                incidence_nibble_colouring(h, d, &p).map_err(|e| e.to_string())?;
            if let Err(w) = verify::verify_colouring(h, &colouring) {
                record.status = format!("verify_failed:{}", sanitize(&w.to_string()));
                return Ok(());
            }
            record.colours_used = Some(colouring.colours_used());
            write_artifact(ctx, seed, "col", &fmt_io::serialize_colouring(&colouring))?;
            write_artifact(
                ctx,
                seed,
                "json",
                &serde_json::to_string(&report).unwrap_or_default(),
            )?;
        }
        "three-tier" => {
            let n = h.n();
            let tp = TierParams {
                small_threshold: ctx.params.usize("r1", 8)?,
                large_threshold: ctx.params.usize("r0", 64)?,
                reserve_rate: ctx.params.f64("reserve_rate", 0.1)?,
                slack: ctx.params.f64("slack", 0.2)?,
                reservation_attempts: ctx.params.u32("reservation_attempts", 100)?,
                fallback: ctx.params.flag("fallback", true)?,
            };
            let list_size = ctx.params.u32("list_size", n)?;
            let lists = ListAssignment::uniform(h.m(), list_size);
            let (colouring, report) =
                three_tier_colouring(h, &lists, &tp, seed).map_err(|e| e.to_string())?;
            if let Err(w) = verify::verify_colouring(h, &colouring) {
                record.status = format!("verify_failed:{}", sanitize(&w.to_string()));
                return Ok(());
            }
            record.colours_used = Some(colouring.colours_used());
            write_artifact(ctx, seed, "col", &fmt_io::serialize_colouring(&colouring))?;
            write_artifact(
                ctx,
                seed,
                "json",
                &serde_json::to_string(&report).unwrap_or_default(),
            )?;
        }
        "efl3" => {
            let p = efl_params(&ctx.params, seed)?;
            let run = efl_small_colouring(h, &p).map_err(|e| e.to_string())?;
            if let Err(w) = verify::verify_colouring(h, &run.colouring) {
                record.status = format!("verify_failed:{}", sanitize(&w.to_string()));
                return Ok(());
            }
            record.colours_used = Some(run.total_colours);
            record.n_plus_one_ok = Some(run.n_plus_one_ok);
            write_artifact(ctx, seed, "col", &fmt_io::serialize_colouring(&run.colouring))?;
            write_artifact(
                ctx,
                seed,
                "json",
                &serde_json::to_string(&run.report).unwrap_or_default(),
            )?;
        }
        "reorder" => {
            let tau = ctx.params.f64("tau", 0.2)?;
            let big_k = ctx.params.f64("big_k", 20.0)?;
            let outcome = reorder(h, tau, big_k).map_err(|e| e.to_string())?;
            let json = match &outcome {
                ReorderOutcome::AllGood {
                    max_fwddeg,
                    ordering,
                } => serde_json::json!({
                    "variant": "all_good",
                    "max_fwddeg": max_fwddeg,
                    "order": ordering.order(),
                }),
                ReorderOutcome::Window {
                    window,
                    last_edge,
                    checks,
                    ordering,
                } => serde_json::json!({
                    "variant": "window",
                    "window_size": window.len(),
                    "last_edge": last_edge,
                    "checks": checks,
                    "order": ordering.order(),
                }),
            };
            write_artifact(ctx, seed, "json", &json.to_string())?;
        }
        "partition-large" => {
            let sigma = ctx.params.f64("sigma", 1e-4)?;
            let outcome = partition_large(h, sigma).map_err(|e| e.to_string())?;
            let json = match &outcome {
                PartitionOutcome::ColourableCheaply {
                    max_fwddeg,
                    colour_bound,
                    ..
                } => serde_json::json!({
                    "variant": "colourable_cheaply",
                    "max_fwddeg": max_fwddeg,
                    "colour_bound": colour_bound,
                }),
                PartitionOutcome::Partitioned(p) => serde_json::json!({
                    "variant": "partitioned",
                    "h1": p.h1.len(),
                    "window": p.window.len(),
                    "h2": p.h2.len(),
                    "checks": p.checks,
                }),
            };
            write_artifact(ctx, seed, "json", &json.to_string())?;
        }
        "partial-steiner" => {
            let t = ctx.params.u32("t", 2)?;
            let k = ctx.params.u32("k", 3)?;
            let n = ctx.params.u32("n", 7)?;
            let p = nibble_params(&ctx.params, seed)?;
            let ps = partial_steiner(t, k, n, &p).map_err(|e| e.to_string())?;
            // No t-subset may appear in two blocks.
            let mut seen = std::collections::HashSet::new();
            for block in &ps.blocks {
                for t_set in crate::generators::k_subsets(k, t) {
                    let key: Vec<u32> =
                        t_set.iter().map(|&i| block[i as usize]).collect();
                    if !seen.insert(key) {
                        record.status = "verify_failed:t-set covered twice".into();
                        return Ok(());
                    }
                }
            }
            record.matching_size = Some(ps.blocks.len());
            record.uncovered = Some(ps.report.uncovered);
            let body: String = ps
                .blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(u32::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("\n");
            write_artifact(ctx, seed, "blocks", &format!("{body}\n"))?;
            record.n = n;
            record.m = ps.blocks.len();
        }
        "indep-set" => {
            let g = Graph::from_hypergraph(h.clone()).map_err(|e| e.to_string())?;
            let report =
                greedy_independent_set_trianglefree(&g, seed).map_err(|e| e.to_string())?;
            // The set must be edge-free.
            for pair in report.vertices.windows(2) {
                let _ = pair;
            }
            for (i, &a) in report.vertices.iter().enumerate() {
                for &b in &report.vertices[i + 1..] {
                    if g.has_edge(a, b) {
                        record.status = format!("verify_failed:edge ({a},{b}) inside set");
                        return Ok(());
                    }
                }
            }
            record.matching_size = Some(report.vertices.len());
            let body: String = report
                .vertices
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            write_artifact(ctx, seed, "set", &format!("{body}\n"))?;
        }
        other => return Err(format!("unknown algorithm {other:?}")),
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> i32 {
    let text = match std::fs::read_to_string(&args.instance) {
        Ok(t) => t,
        Err(e) => return usage_error(&format!("cannot read {}: {e}", args.instance.display())),
    };
    let h = match fmt_io::parse_lhg(&text) {
        Ok(p) => p.hypergraph,
        Err(e) => return usage_error(&format!("{}: {e}", args.instance.display())),
    };
    if args.files.is_empty() {
        return usage_error("no artifact files given");
    }
    let mut failed = false;
    for file in &args.files {
        let body = match std::fs::read_to_string(file) {
            Ok(b) => b,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", file.display());
                return 2;
            }
        };
        let outcome: Result<(), String> = match file.extension().and_then(|e| e.to_str()) {
            Some("mtc") => fmt_io::parse_matchings(&body)
                .map_err(|e| e.to_string())
                .and_then(|ms| {
                    for (i, m) in ms.iter().enumerate() {
                        verify::verify_matching(&h, m)
                            .map_err(|w| format!("matching {i}: {w}"))?;
                    }
                    Ok(())
                }),
            Some("col") => fmt_io::parse_colouring(&body, h.m())
                .map_err(|e| e.to_string())
                .and_then(|c| {
                    verify::verify_colouring(&h, &c).map_err(|w| w.to_string())
                }),
            _ => Err("unknown artifact extension (expected .mtc or .col)".into()),
        };
        match outcome {
            Ok(()) => println!("{}: ok", file.display()),
            Err(w) => {
                println!("{}: FAILED: {w}", file.display());
                failed = true;
            }
        }
    }
    i32::from(failed)
}

fn cmd_report(args: ReportArgs) -> i32 {
    let mut reader = match csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_path(&args.csv)
    {
        Ok(r) => r,
        Err(e) => return usage_error(&format!("cannot read {}: {e}", args.csv.display())),
    };
    let headers = match reader.headers() {
        Ok(h) => h.clone(),
        Err(e) => return usage_error(&format!("bad CSV: {e}")),
    };
    let expected: Vec<&str> = CSV_HEADER.split(',').collect();
    if headers.iter().collect::<Vec<_>>() != expected {
        return usage_error("CSV header does not match the current schema");
    }
    let mut rows: BTreeMap<(String, String, String), csv::StringRecord> = BTreeMap::new();
    let mut duplicates = 0usize;
    for result in reader.records() {
        let row = match result {
            Ok(r) => r,
            Err(e) => return usage_error(&format!("bad CSV row: {e}")),
        };
        let key = (
            row.get(1).unwrap_or("").to_string(),
            row.get(6).unwrap_or("").to_string(),
            row.get(7).unwrap_or("").to_string(),
        );
        if rows.insert(key, row).is_some() {
            duplicates += 1;
        }
    }
    if duplicates > 0 {
        eprintln!("warning: {duplicates} duplicate (instance, algo, seed) rows; last wins");
    }

    // Group by (family, algo) and aggregate the numeric columns.
    #[derive(Default)]
    struct Agg {
        runs: usize,
        ok: usize,
        colours: Vec<f64>,
        sizes: Vec<f64>,
        uncovered: Vec<f64>,
    }
    let mut groups: BTreeMap<(String, String), Agg> = BTreeMap::new();
    for row in rows.values() {
        let key = (
            row.get(3).unwrap_or("").to_string(),
            row.get(6).unwrap_or("").to_string(),
        );
        let agg = groups.entry(key).or_default();
        agg.runs += 1;
        if row.get(8) == Some("ok") {
            agg.ok += 1;
        }
        for (slot, idx) in [
            (&mut agg.colours, 9usize),
            (&mut agg.sizes, 10),
            (&mut agg.uncovered, 11),
        ] {
            if let Some(v) = row.get(idx).and_then(|s| s.parse::<f64>().ok()) {
                slot.push(v);
            }
        }
    }

    fn stats_line(values: &mut [f64]) -> String {
        if values.is_empty() {
            return "-".into();
        }
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let median = values[values.len() / 2];
        format!(
            "mean {:.2} median {:.2} min {:.0} max {:.0}",
            mean,
            median,
            values[0],
            values[values.len() - 1]
        )
    }

    let mut out_csv = String::from(
        "family,algo,runs,ok,colours_mean,size_mean,uncovered_mean\n",
    );
    for ((family, algo), mut agg) in groups {
        println!("== {family} / {algo}: {} runs, {} ok", agg.runs, agg.ok);
        println!("   colours:   {}", stats_line(&mut agg.colours));
        println!("   size:      {}", stats_line(&mut agg.sizes));
        println!("   uncovered: {}", stats_line(&mut agg.uncovered));
        let mean = |v: &[f64]| {
            if v.is_empty() {
                String::new()
            } else {
                format!("{:.3}", v.iter().sum::<f64>() / v.len() as f64)
            }
        };
        out_csv.push_str(&format!(
            "{family},{algo},{},{},{},{},{}\n",
            agg.runs,
            agg.ok,
            mean(&agg.colours),
            mean(&agg.sizes),
            mean(&agg.uncovered)
        ));
    }
    if let Some(path) = &args.out {
        if let Err(e) = std::fs::write(path, out_csv) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 3;
        }
    }
    0
}
