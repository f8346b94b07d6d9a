//! `topoforge`: build, verify and inspect stage-matrix artifacts.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use topoforge_core::field::{Elem, FieldOracle, Fpbar, RationalOracle};
use topoforge_core::forge::{
    build_artifact, build_frontier_topology, build_topology, Artifact, ArtifactKind, BuildStatus, FieldSpec, RunConfig, SampleSet, Strategy,
};
use topoforge_core::par::{with_jobs, Exec};
use topoforge_core::verify::{brute_force_suitable_search, verify_artifact_str, SearchSpaceSpec, Verdict};
use topoforge_core::Ring;

const OK: u8 = 0;
const FAILED: u8 = 1;
const USAGE: u8 = 2;
const EXHAUSTED: u8 = 3;

#[derive(Parser)]
#[command(name = "topoforge", version, about = "Builds and checks suitable sequences of finite stages over the algebraic closure of F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build rows 1..=J of the stage matrix.
    Build(BuildArgs),
    /// Build rows whose diagonal stages contain sample tuples.
    Frontier(FrontierArgs),
    /// Re-check an artifact from its JSON alone.
    Verify {
        path: PathBuf,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Exhaustive search for suitable sequences over F_p.
    Brute {
        #[arg(short, long)]
        p: u32,
        /// Sequence length.
        #[arg(short = 'L', long, default_value_t = 4)]
        length: usize,
        #[arg(long)]
        json: bool,
    },
    /// Re-emit an artifact, optionally pretty-printed.
    Export {
        path: PathBuf,
        #[arg(long)]
        pretty: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct ExecArgs {
    /// Worker threads for the parallel kernels.
    #[arg(long, env = "TOPOFORGE_JOBS")]
    jobs: Option<usize>,
    /// Run every kernel sequentially.
    #[arg(long)]
    sequential: bool,
}

impl ExecArgs {
    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Characteristic of the field.
    #[arg(short, long, conflicts_with = "field")]
    p: Option<u32>,
    /// `p=<prime>` or `rational-control`.
    #[arg(long)]
    field: Option<FieldSpec>,
    /// Number of rows J.
    #[arg(short = 'J', long, default_value_t = 3)]
    rows: usize,
    #[arg(long, default_value_t = 16)]
    precision: usize,
    #[arg(long, default_value_t = 256)]
    max_precision: usize,
    #[arg(long, default_value_t = 64)]
    tau_budget: usize,
    #[arg(long, default_value_t = 8)]
    branch_budget: usize,
    #[arg(long, default_value = "series-guided")]
    strategy: Strategy,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 250_000)]
    max_stage_size: usize,
    #[arg(long, default_value_t = 64)]
    min_seed_field: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    pretty: bool,
    #[command(flatten)]
    exec: ExecArgs,
}

impl CommonArgs {
    fn config(&self) -> Result<RunConfig, String> {
        let field = match (self.p, self.field) {
            (Some(p), _) => FieldSpec::Prime(p),
            (None, Some(f)) => f,
            (None, None) => return Err("one of -p or --field is required".into()),
        };
        Ok(RunConfig {
            field,
            rows: self.rows,
            precision: self.precision,
            max_precision: self.max_precision,
            tau_budget: self.tau_budget,
            branch_budget: self.branch_budget,
            strategy: self.strategy,
            seed: self.seed,
            max_stage_size: self.max_stage_size,
            min_seed_field: self.min_seed_field,
            exec: self.exec.exec(),
            jobs: self.exec.jobs,
            ..RunConfig::default()
        })
    }
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct FrontierArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Tuple dimension.
    #[arg(short, long, default_value_t = 1)]
    n: usize,
    /// Sample file: one tuple per line, coordinates separated by spaces.
    /// A coordinate is an element encoding or `@k` for the k-th enumerated
    /// element. A line `limit: …` sets the limit point (default zero).
    #[arg(long, required_unless_present = "first")]
    samples: Option<PathBuf>,
    /// Use the first K nonzero enumerated elements as 1-tuples.
    #[arg(long, conflicts_with = "samples")]
    first: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    let code = match cli.command {
        Command::Build(a) => run_build(&a.common, None),
        Command::Frontier(a) => run_build(&a.common, Some(&a)),
        Command::Verify { path, json, exec } => run_verify(&path, json, &exec),
        Command::Brute { p, length, json } => run_brute(p, length, json),
        Command::Export { path, pretty, output } => run_export(&path, pretty, output.as_deref()),
    };
    ExitCode::from(code)
}

fn usage(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    USAGE
}

fn run_build(common: &CommonArgs, frontier: Option<&FrontierArgs>) -> u8 {
    let cfg = match common.config() {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    if cfg.rows == 0 && frontier.is_some() {
        return usage("frontier builds need at least one row");
    }
    let result = with_jobs(cfg.jobs, || match cfg.field {
        FieldSpec::Prime(p) => match Fpbar::new(p) {
            Ok(o) => forge(o, &cfg, frontier),
            Err(e) => Err(e.to_string()),
        },
        FieldSpec::RationalControl => forge(RationalOracle::new(), &cfg, frontier),
    });
    let art = match result {
        Ok(a) => a,
        Err(e) => return usage(e),
    };
    eprintln!("config: {}", serde_json::to_string(&art.config).expect("config serializes"));
    for c in &art.certificates {
        let verdict = if c.report.passed() { "pass" } else { "FAIL" };
        eprintln!("{}: {verdict}", c.scope);
    }
    let text = art.to_json(common.pretty);
    if let Some(path) = &common.output {
        if let Err(e) = fs::write(path, text + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return FAILED;
        }
    } else {
        println!("{text}");
    }
    match &art.status {
        BuildStatus::Complete if art.certificates.iter().all(|c| c.report.passed()) => {
            eprintln!("status: complete, {} rows", art.rows.len() - 1);
            OK
        }
        BuildStatus::Complete => FAILED,
        BuildStatus::BudgetExhausted { row, reason } => {
            eprintln!("status: budget exhausted at row {row}: {reason}");
            EXHAUSTED
        }
    }
}

fn forge<O: FieldOracle>(mut oracle: O, cfg: &RunConfig, frontier: Option<&FrontierArgs>) -> Result<Artifact, String> {
    match frontier {
        None => {
            let out = build_topology(&mut oracle, cfg).map_err(|e| e.to_string())?;
            Ok(build_artifact(&mut oracle, ArtifactKind::Build, cfg, &out, None))
        }
        Some(f) => {
            let samples = load_samples(&mut oracle, f)?;
            let out = build_frontier_topology(&mut oracle, &samples, cfg).map_err(|e| e.to_string())?;
            Ok(build_artifact(&mut oracle, ArtifactKind::Frontier, cfg, &out, Some(&samples)))
        }
    }
}

fn load_samples<O: FieldOracle>(oracle: &mut O, f: &FrontierArgs) -> Result<SampleSet<Elem<O>>, String> {
    let zero = oracle.flat().zero();
    if let Some(k) = f.first {
        if f.n != 1 {
            return Err("--first needs -n 1".into());
        }
        let tuples = (1..=k as u64).map(|i| vec![oracle.element(i)]).collect();
        return SampleSet::new(1, tuples, vec![zero]).map_err(|e| e.to_string());
    }
    let path = f.samples.as_ref().expect("clap requires samples or first");
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut tuples = Vec::new();
    let mut limit = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (is_limit, body) = match line.strip_prefix("limit:") {
            Some(rest) => (true, rest),
            None => (false, line),
        };
        let mut tuple = Vec::new();
        for tok in body.split_whitespace() {
            let x = match tok.strip_prefix('@') {
                Some(k) => oracle.element(k.parse().map_err(|_| format!("bad index `{tok}`"))?),
                None => oracle.decode(tok).map_err(|e| e.to_string())?,
            };
            tuple.push(x);
        }
        if is_limit {
            limit = Some(tuple);
        } else {
            tuples.push(tuple);
        }
    }
    let limit = limit.unwrap_or_else(|| vec![zero; f.n]);
    let tuples = tuples.iter().map(|t| t.iter().map(|x| oracle.lift(x)).collect()).collect();
    let limit = limit.iter().map(|x| oracle.lift(x)).collect();
    SampleSet::new(f.n, tuples, limit).map_err(|e| e.to_string())
}

fn run_verify(path: &Path, json: bool, exec: &ExecArgs) -> u8 {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
    };
    let report = match with_jobs(exec.jobs, || verify_artifact_str(&text, exec.exec())) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        for (scope, c) in report.clause_failures() {
            let w = c.witness.as_ref().map(|w| w.join(", ")).unwrap_or_default();
            println!("{scope}: C_{} clause {} fails; witness [{w}]", c.index, c.clause);
        }
        for f in report.findings.iter().filter(|f| !f.pass) {
            println!("{}: {}", f.check, f.detail.as_deref().unwrap_or("failed"));
        }
        let rows = report.scopes.len().saturating_sub(1);
        match report.verdict {
            Verdict::Certified => println!("certified: {rows} rows and the union prefix pass"),
            Verdict::Partial => println!("partial: {rows} stored rows pass, but the build is incomplete"),
            Verdict::Failed => println!("failed"),
        }
    }
    if report.certified() {
        OK
    } else {
        FAILED
    }
}

fn run_brute(p: u32, length: usize, json: bool) -> u8 {
    let spec = SearchSpaceSpec::with_default_schedule(p, length);
    match brute_force_suitable_search(&spec, Exec::Parallel) {
        Ok(r) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
            } else {
                println!("p = {p}, length {length}: maximal nondegenerate depth {}", r.max_depth);
                for (k, forced) in r.forced_zero.iter().enumerate().skip(1) {
                    if *forced {
                        println!("A_{k} = {{0}} is forced");
                    }
                }
                println!("example: {:?}", r.example);
            }
            OK
        }
        Err(e) => usage(e),
    }
}

fn run_export(path: &Path, pretty: bool, output: Option<&Path>) -> u8 {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
    };
    let art: Artifact = match serde_json::from_str(&text) {
        Ok(a) => a,
        Err(e) => return usage(format!("malformed artifact: {e}")),
    };
    let out = art.to_json(pretty);
    match output {
        Some(o) => match fs::write(o, out + "\n") {
            Ok(()) => OK,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", o.display());
                FAILED
            }
        },
        None => {
            println!("{out}");
            OK
        }
    }
}
