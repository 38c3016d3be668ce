use clap::{Args, Parser, Subcommand};
use dsat::bench::{parse_bench_spec, run_bench, write_csv};
use dsat::formats::{binarize, exit_code, parse_dcnf, parse_nnf, write_dcnf, write_model};
use dsat::gen::{clauses_for_ratio, generate, transition_ratio, GenSpec};
use dsat::nnf2cnf::compile_with_cap;
use dsat::solver::{Solver, SolverConfig};
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(name = "dsat", version, about = "CDCL solver for discrete CNFs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a DCNF file ('-' reads standard input).
    Solve {
        file: PathBuf,
        #[command(flatten)]
        opts: SolveOpts,
        /// Print search counters as `c key=value` lines.
        #[arg(long)]
        stats: bool,
    },
    /// Generate a random 3-CNF with uniform cardinality.
    Gen {
        /// Number of variables.
        n: usize,
        /// Number of clauses; omit to use --ratio.
        m: Option<usize>,
        /// Cardinality of every variable.
        #[arg(short = 'C', long = "card", default_value_t = 4)]
        c: usize,
        /// Clause/variable ratio, or `auto` for the transition ratio of C.
        #[arg(long)]
        ratio: Option<String>,
        #[arg(long, env = "DSAT_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Rewrite a DCNF file over Boolean (cardinality 2) variables.
    Binarize { file: PathBuf },
    /// Compile an NNF circuit to DCNF.
    CompileNnf {
        file: PathBuf,
        /// Abort when a node would produce more candidate clauses.
        #[arg(long, default_value_t = dsat::nnf2cnf::DEFAULT_CLAUSE_CAP)]
        cap: usize,
    },
    /// Run benchmark groups from a spec file (`C N M count seed_base` per line) and print CSV.
    Bench {
        file: PathBuf,
        #[command(flatten)]
        opts: SolveOpts,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args)]
struct SolveOpts {
    /// Nonzero seeds shuffle the initial decision order.
    #[arg(long, env = "DSAT_SEED", default_value_t = 0)]
    seed: u64,
    /// Share of the active score mass taken by a decision.
    #[arg(long, default_value_t = 0.30)]
    threshold: f64,
    #[arg(long, default_value_t = 1.05)]
    bump_inc: f64,
    #[arg(long, default_value_t = 0.8)]
    restart_margin: f64,
    #[arg(long)]
    no_restarts: bool,
    #[arg(long)]
    no_reduce: bool,
    /// Shrink learned clauses by self-subsumption.
    #[arg(long)]
    minimize: bool,
    /// Give up after this many seconds (status UNKNOWN, or TIMEOUT in bench CSV).
    #[arg(long)]
    timeout_s: Option<f64>,
}

impl SolveOpts {
    fn config(&self) -> Result<SolverConfig, String> {
        if !(0.0..=1.0).contains(&self.threshold) {
            return Err(format!("--threshold must be within [0, 1], got {}", self.threshold));
        }
        if self.bump_inc < 1.0 {
            return Err(format!("--bump-inc must be at least 1, got {}", self.bump_inc));
        }
        let time_limit = match self.timeout_s {
            Some(t) if !(t.is_finite() && t >= 0.0) => return Err(format!("invalid --timeout-s {t}")),
            Some(t) => Some(Duration::from_secs_f64(t)),
            None => None,
        };
        Ok(SolverConfig {
            threshold: self.threshold,
            bump_inc: self.bump_inc,
            restart_margin: self.restart_margin,
            restarts: !self.no_restarts,
            reduce: !self.no_reduce,
            minimize: self.minimize,
            seed: self.seed,
            time_limit,
            record_learned: false,
        })
    }

    fn header(&self) -> String {
        let timeout = self.timeout_s.map_or("none".to_string(), |t| t.to_string());
        [
            format!("c config seed={}", self.seed),
            format!("c config threshold={}", self.threshold),
            format!("c config bump_inc={}", self.bump_inc),
            format!("c config restart_margin={}", self.restart_margin),
            format!("c config restarts={}", !self.no_restarts),
            format!("c config reduce={}", !self.no_reduce),
            format!("c config minimize={}", self.minimize),
            format!("c config timeout_s={timeout}"),
        ]
        .join("\n")
    }
}

fn read_input(path: &Path) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Solve { file, opts, stats } => {
            let config = opts.config()?;
            let text = read_input(&file)?;
            let cnf = parse_dcnf(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            println!("{}", opts.header());
            let start = Instant::now();
            let mut solver = Solver::new(&cnf, config).map_err(|e| e.to_string())?;
            let r = solver.solve();
            let elapsed = start.elapsed();
            print!("{}", write_model(&r));
            if stats {
                let s = r.stats;
                println!("c decisions={}", s.decisions);
                println!("c conflicts={}", s.conflicts);
                println!("c propagations={}", s.propagations);
                println!("c learned={}", s.learned);
                println!("c restarts={}", s.restarts);
                println!("c deleted={}", s.deleted);
                println!("c time_ms={:.3}", elapsed.as_secs_f64() * 1000.0);
            }
            Ok(exit_code(r.status) as u8)
        }
        Command::Gen { n, m, c, ratio, seed } => {
            let m = match (m, ratio.as_deref()) {
                (Some(m), None) => m,
                (None, None) | (None, Some("auto")) => clauses_for_ratio(transition_ratio(c).map_err(|e| e.to_string())?, n),
                (None, Some(r)) => {
                    let r: f64 = r.parse().map_err(|_| format!("--ratio expects 'auto' or a number, got '{r}'"))?;
                    clauses_for_ratio(r, n)
                }
                (Some(_), Some(_)) => return Err("give either M or --ratio, not both".into()),
            };
            let cnf = generate(&GenSpec { n, m, c, seed }).map_err(|e| e.to_string())?;
            print!("c dsat gen N={n} M={m} C={c} seed={seed}\n{}", write_dcnf(&cnf));
            Ok(0)
        }
        Command::Binarize { file } => {
            let text = read_input(&file)?;
            let cnf = parse_dcnf(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            print!("{}", write_dcnf(&binarize(&cnf)));
            Ok(0)
        }
        Command::CompileNnf { file, cap } => {
            let text = read_input(&file)?;
            let doc = parse_nnf(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let cnf = compile_with_cap(&doc, cap).map_err(|e| e.to_string())?;
            print!("{}", write_dcnf(&cnf));
            Ok(0)
        }
        Command::Bench { file, opts, jobs } => {
            let config = opts.config()?;
            let text = read_input(&file)?;
            let groups = parse_bench_spec(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| e.to_string())?;
            let rows = pool.install(|| run_bench(&groups, &config));
            eprintln!("{}", opts.header());
            print!("{}", write_csv(&groups, &rows));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
