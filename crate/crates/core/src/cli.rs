//! Command-line front end.
//!
//! Every command builds a [`RunReport`] and renders it as an aligned text
//! table, canonical JSON (sorted keys, integers and rationals only) or CSV.
//! Exit status: 0 success, 1 a verification check failed, 2 usage or input
//! error, 3 a resource cap was hit.

mod verify;
mod weight_spec;

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::kostant::{load_cache_file, save_cache_file, PartitionFunction};
use crate::lattice::{self, format_rational, Rational, RationalVector};
use crate::multiplicity::{AlternationSet, Engine};
use crate::rootsystem::{LieType, RootSystem};
use crate::weyl::DEFAULT_CAP;

pub use verify::{Suite, VerifyOptions, ORACLE_MAX_HEIGHT};
pub use weight_spec::parse_weight;

#[derive(Debug, Parser)]
#[command(
    name = "weylalt",
    version,
    about = "Exact Kostant multiplicities, q-analogs and Weyl alternation sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Largest Weyl group order that may be enumerated.
    #[arg(long, env = "WEYLALT_CAP", default_value_t = DEFAULT_CAP, global = true)]
    pub cap: u64,

    /// Worker threads for the Weyl group sums (0 = one per core).
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,

    /// Partition-function memo file: loaded if present, written on exit.
    #[arg(long, global = true)]
    pub cache_file: Option<PathBuf>,

    /// Leave `elapsed_ms` out of the report.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Lie type: A, B, C, D, G2, F4, E6, E7 or E8.
    #[arg(long = "type", value_parser = parse_type)]
    pub lie_type: LieType,

    /// Rank (implied for the exceptional types).
    #[arg(long)]
    pub rank: Option<usize>,
}

impl SystemArgs {
    fn build(&self) -> Result<RootSystem> {
        let rank = match (self.rank, self.lie_type.fixed_rank()) {
            (Some(r), _) => r,
            (None, Some(r)) => r,
            (None, None) => return Err(Error::Parse(format!("--rank is required for type {}", self.lie_type))),
        };
        RootSystem::build(self.lie_type, rank)
    }
}

fn parse_type(s: &str) -> std::result::Result<LieType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simple roots, positive roots, fundamental weights and ρ.
    Roots {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// The Weyl alternation set 𝒜(λ, μ).
    WeylAlt {
        #[command(flatten)]
        system: SystemArgs,
        /// Highest weight λ (weight spec, e.g. `w1`, `highest-root`, `eps:1,0`).
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Weight μ.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// The multiplicity m(λ, μ), or m_q(λ, μ) with `--q`.
    Mult {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Report the q-analog.
        #[arg(long)]
        q: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest rank to check (suite-specific default).
        #[arg(long)]
        max_rank: Option<usize>,
        /// Coordinate bound for the nonzero-mu weight scan.
        #[arg(long, default_value = "1", value_parser = parse_bound)]
        bound: Rational,
        /// Random points for the oracle suite.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Seed for the oracle suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_bound(s: &str) -> std::result::Result<Rational, String> {
    lattice::parse_rational(s).map_err(|e| e.to_string())
}

/// One named comparison in a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl Display, actual: impl Display) -> Self {
        let expected = expected.to_string();
        let actual = actual.to_string();
        Self {
            name: name.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }
}

/// Everything a command produced.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub results: Value,
    pub checks: Vec<Check>,
    pub elapsed_ms: Option<u128>,
    text: String,
    csv: Vec<Vec<String>>,
}

impl RunReport {
    /// A report whose text and CSV forms are the table of `checks`.
    pub fn from_checks(command: &str, results: Value, checks: Vec<Check>) -> Self {
        let rows: Vec<Vec<String>> = checks
            .iter()
            .map(|c| {
                vec![
                    if c.pass { "PASS" } else { "FAIL" }.to_string(),
                    c.name.clone(),
                    c.expected.clone(),
                    c.actual.clone(),
                ]
            })
            .collect();
        let passed = checks.iter().filter(|c| c.pass).count();
        let mut text = table(&["status", "check", "expected", "actual"], &rows);
        text.push_str(&format!("\n{passed}/{} checks passed\n", checks.len()));
        let mut csv = vec![vec!["name".into(), "expected".into(), "actual".into(), "pass".into()]];
        csv.extend(
            checks
                .iter()
                .map(|c| vec![c.name.clone(), c.expected.clone(), c.actual.clone(), c.pass.to_string()]),
        );
        Self {
            command: command.into(),
            parameters: Map::new(),
            results,
            checks,
            elapsed_ms: None,
            text,
            csv,
        }
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("parameters".into(), Value::Object(self.parameters.clone()));
        out.insert("results".into(), self.results.clone());
        out.insert(
            "checks".into(),
            Value::Array(
                self.checks
                    .iter()
                    .map(|c| {
                        json!({
                            "name": c.name,
                            "expected": c.expected,
                            "actual": c.actual,
                            "pass": c.pass,
                        })
                    })
                    .collect(),
            ),
        );
        if let Some(ms) = self.elapsed_ms {
            out.insert("elapsed_ms".into(), json_int(&ms));
        }
        Value::Object(out)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
                for row in &self.csv {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
            }
        }
    }
}

/// Settings every command shares.
pub struct Context {
    pub cap: u64,
    pub cache_file: Option<PathBuf>,
}

impl Context {
    /// Runs `f` with an engine for `rs`, loading and saving the cache file
    /// around it.
    pub fn with_engine<T>(&self, rs: &RootSystem, f: impl FnOnce(&Engine) -> Result<T>) -> Result<T> {
        let pf = PartitionFunction::new(rs);
        if let Some(path) = &self.cache_file {
            load_cache_file(path, &pf)?;
        }
        let engine = Engine::with_partition_function(pf).with_cap(self.cap);
        let out = f(&engine)?;
        if let Some(path) = &self.cache_file {
            save_cache_file(path, engine.partition_function())?;
        }
        Ok(out)
    }
}

/// Integer as a JSON number of arbitrary size.
pub fn json_int(n: &impl Display) -> Value {
    Value::Number(n.to_string().parse().expect("integers are valid JSON numbers"))
}

fn json_vector(v: &RationalVector) -> Value {
    Value::Array(v.coords().iter().map(|x| json!(format_rational(x))).collect())
}

fn json_ints(v: &[i64]) -> Value {
    Value::Array(v.iter().map(json_int).collect())
}

/// `s2 s4`, or `1` for the identity.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        "1".to_string()
    } else {
        word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
    }
}

fn bracketed(v: &[i64]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

/// Lays out rows with columns padded to a common width.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn simple_coords(v: &RationalVector, rs: &RootSystem) -> Result<RationalVector> {
    lattice::to_simple_root_coords(v, rs)
}

fn roots_report(rs: &RootSystem) -> Result<RunReport> {
    let mut text = format!(
        "{}: rank {}, ambient dimension {}, {} positive roots, |W| = {}\n",
        rs.name(),
        rs.rank(),
        rs.ambient_dim(),
        rs.positive_roots().len(),
        rs.weyl_group_order()
    );
    let mut csv = vec![vec![
        "kind".into(),
        "index".into(),
        "ambient".into(),
        "simple_root_coords".into(),
    ]];
    let mut section = |title: &str, kind: &str, vs: &[RationalVector], text: &mut String| -> Result<Value> {
        let mut rows = Vec::new();
        let mut items = Vec::new();
        for (i, v) in vs.iter().enumerate() {
            let c = simple_coords(v, rs)?;
            rows.push(vec![format!("{}", i + 1), v.to_string(), c.to_string()]);
            csv.push(vec![kind.into(), format!("{}", i + 1), v.to_string(), c.to_string()]);
            items.push(json!({"index": i + 1, "ambient": json_vector(v), "simple_root_coords": json_vector(&c)}));
        }
        text.push_str(&format!("\n{title}\n"));
        text.push_str(&table(&["#", "ambient", "simple-root coords"], &rows));
        Ok(Value::Array(items))
    };
    let simple = section("simple roots", "simple_root", rs.simple_roots(), &mut text)?;
    let positive = section("positive roots", "positive_root", rs.positive_roots(), &mut text)?;
    let fundamental = section(
        "fundamental weights",
        "fundamental_weight",
        rs.fundamental_weights(),
        &mut text,
    )?;
    let mut rho = section("rho", "rho", std::slice::from_ref(rs.rho()), &mut text)?[0].take();
    if let Some(fields) = rho.as_object_mut() {
        fields.remove("index");
    }

    text.push_str("\nCartan matrix\n");
    for row in rs.cartan_matrix() {
        text.push_str(&format!("  {}\n", bracketed(row)));
    }

    Ok(RunReport {
        command: "roots".into(),
        parameters: Map::new(),
        results: json!({
            "system": rs.name(),
            "rank": rs.rank(),
            "ambient_dim": rs.ambient_dim(),
            "weyl_group_order": json_int(&rs.weyl_group_order()),
            "simple_roots": simple,
            "positive_roots": positive,
            "fundamental_weights": fundamental,
            "rho": rho,
            "cartan_matrix": rs.cartan_matrix().iter().map(|r| json_ints(r)).collect::<Vec<_>>(),
        }),
        checks: Vec::new(),
        elapsed_ms: None,
        text,
        csv,
    })
}

fn weyl_alt_report(set: &AlternationSet, rs: &RootSystem) -> RunReport {
    let mut rows = Vec::new();
    let mut csv = vec![vec![
        "length".into(),
        "word".into(),
        "xi_simple_root_coords".into(),
        "partition_q".into(),
        "partition".into(),
    ]];
    let mut items = Vec::new();
    for e in &set.elements {
        let row = vec![
            e.length.to_string(),
            format_word(&e.word),
            bracketed(&e.xi_coords),
            e.partition_q.to_string(),
            e.partition().to_string(),
        ];
        rows.push(row.clone());
        csv.push(row);
        items.push(json!({
            "word": e.word,
            "length": e.length,
            "sign": e.sign(),
            "xi": json_vector(&e.xi),
            "xi_simple_root_coords": json_ints(&e.xi_coords),
            "partition_q": e.partition_q.coeffs().iter().map(json_int).collect::<Vec<_>>(),
            "partition": json_int(&e.partition()),
        }));
    }
    let mq = set.q_multiplicity();
    let mut text = format!(
        "{}: alternation set of lambda = {}, mu = {}\n\n",
        rs.name(),
        set.lambda,
        set.mu
    );
    text.push_str(&table(
        &["length", "word", "xi (simple roots)", "q-partition", "partition"],
        &rows,
    ));
    text.push_str(&format!("\ncardinality: {}\n", set.len()));
    text.push_str(&format!("m = {}\nm_q = {}\n", set.multiplicity(), mq));
    RunReport {
        command: "weyl-alt".into(),
        parameters: Map::new(),
        results: json!({
            "cardinality": set.len(),
            "elements": items,
            "multiplicity": json_int(&set.multiplicity()),
            "q_multiplicity": mq.coeffs().iter().map(json_int).collect::<Vec<_>>(),
        }),
        checks: Vec::new(),
        elapsed_ms: None,
        text,
        csv,
    }
}

fn mult_report(set: &AlternationSet, q: bool) -> RunReport {
    let m = set.multiplicity();
    let mq = set.q_multiplicity();
    let value = if q { mq.to_string() } else { m.to_string() };
    let mut results = Map::new();
    results.insert("multiplicity".into(), json_int(&m));
    if q {
        results.insert(
            "q_multiplicity".into(),
            Value::Array(mq.coeffs().iter().map(json_int).collect()),
        );
    }
    RunReport {
        command: "mult".into(),
        parameters: Map::new(),
        results: Value::Object(results),
        checks: Vec::new(),
        elapsed_ms: None,
        text: format!("{value}\n"),
        csv: vec![
            vec![
                "lambda".into(),
                "mu".into(),
                if q { "q_multiplicity" } else { "multiplicity" }.into(),
            ],
            vec![set.lambda.to_string(), set.mu.to_string(), value],
        ],
    }
}

fn verify_report(suite: Suite, opts: &VerifyOptions, ctx: &Context) -> Result<RunReport> {
    let mut checks = Vec::new();
    let results = verify::run(suite, opts, ctx, &mut checks)?;
    Ok(RunReport::from_checks("verify", results, checks))
}

fn system_params(params: &mut Map<String, Value>, rs: &RootSystem) {
    params.insert("type".into(), json!(rs.label().to_string()));
    params.insert("rank".into(), json!(rs.rank()));
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<RunReport> {
    let ctx = Context {
        cap: cli.cap,
        cache_file: cli.cache_file.clone(),
    };
    let start = Instant::now();
    let mut params = Map::new();
    let mut report = match &cli.command {
        Command::Roots { system } => {
            let rs = system.build()?;
            system_params(&mut params, &rs);
            roots_report(&rs)?
        }
        Command::WeylAlt { system, lambda, mu } | Command::Mult { system, lambda, mu, .. } => {
            let rs = system.build()?;
            let l = parse_weight(lambda, &rs)?;
            let m = parse_weight(mu, &rs)?;
            system_params(&mut params, &rs);
            params.insert("lambda".into(), json!(lambda));
            params.insert("mu".into(), json!(mu));
            params.insert("cap".into(), json_int(&cli.cap));
            let set = ctx.with_engine(&rs, |e| e.alternation_set(&l, &m))?;
            match &cli.command {
                Command::Mult { q, .. } => {
                    params.insert("q".into(), json!(q));
                    mult_report(&set, *q)
                }
                _ => weyl_alt_report(&set, &rs),
            }
        }
        Command::Verify {
            suite,
            max_rank,
            bound,
            samples,
            seed,
        } => {
            if bound.is_negative() {
                return Err(Error::Parse("--bound must be non-negative".into()));
            }
            params.insert("suite".into(), json!(suite.name()));
            if let Some(r) = max_rank {
                params.insert("max_rank".into(), json!(r));
            }
            params.insert("bound".into(), json!(format_rational(bound)));
            params.insert("samples".into(), json!(samples));
            params.insert("seed".into(), json_int(seed));
            params.insert("cap".into(), json_int(&cli.cap));
            let opts = VerifyOptions {
                max_rank: *max_rank,
                bound: bound.clone(),
                samples: *samples,
                seed: *seed,
            };
            verify_report(*suite, &opts, &ctx)?
        }
    };
    report.parameters = params;
    if !cli.no_timing {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    Ok(report)
}

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => 3,
        _ => 2,
    }
}

/// Parses `args`, runs the command and writes its output. Returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(pool) => pool.install(|| execute(&cli)),
        Err(e) => {
            let _ = writeln!(err, "error: could not start worker threads: {e}");
            return 2;
        }
    };
    match result {
        Ok(report) => {
            let _ = write!(out, "{}", report.render(cli.format));
            report.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::CapExceeded { order, .. } = e {
                let _ = writeln!(err, "hint: pass --cap {order} (or set WEYLALT_CAP) to allow it");
            }
            exit_code(&e)
        }
    }
}
