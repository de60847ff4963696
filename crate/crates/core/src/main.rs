use std::fs;
use std::io::{self, Write};
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use pathcover::format::{decode, decode_cover, encode, encode_cover};
use pathcover::gen::{GenKind, GenSpec};
use pathcover::sweep::{run_sweep, solver_score, workers_from_env, write_csv, SweepPlan};
use pathcover::{solve, validate_cover, Colouring, Oracle, SolverConfig};

#[derive(Parser)]
#[command(name = "pathcover", version, about = "Same-colour monochromatic path covers of 2-edge-coloured K_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct SolverArgs {
    /// Constant C of the sqrt(n) + C pipeline.
    #[arg(long, default_value_t = 160_000.0)]
    c: f64,
    /// Largest n handed to the exact oracle.
    #[arg(long, default_value_t = pathcover::oracle::DEFAULT_ORACLE_THRESHOLD)]
    oracle_threshold: usize,
    /// Disable the greedy fallback strategy.
    #[arg(long)]
    no_greedy: bool,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            oracle_threshold: self.oracle_threshold,
            greedy_fallback: !self.no_greedy,
            ..SolverConfig::with_c(self.c)
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a colouring file.
    #[command(group(ArgGroup::new("kind").required(true).args(["extremal", "random", "adversarial"])))]
    Gen {
        #[arg(short, long)]
        n: usize,
        /// Blue clique plus a red block of floor(sqrt n) - 1 vertices.
        #[arg(long)]
        extremal: bool,
        /// Each edge red with this probability.
        #[arg(long, value_name = "P")]
        random: Option<f64>,
        /// Hill-climb this many flips from the extremal colouring.
        #[arg(long, value_name = "ITERS")]
        adversarial: Option<usize>,
        #[arg(long, default_value_t = 1)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Print a cover, one path per line.
    Solve {
        /// Colouring file.
        file: Option<PathBuf>,
        /// Generate instead: extremal, random:P, adversarial:ITERS[:RESTARTS].
        #[arg(long, value_name = "SPEC", requires = "n", conflicts_with = "file")]
        gen: Option<GenKind>,
        #[arg(short, long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Print the exact minimum and a witness cover.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = pathcover::oracle::DEFAULT_ORACLE_THRESHOLD)]
        threshold: usize,
    },
    /// Check a cover against a colouring; exit 2 if invalid.
    Verify { colouring: PathBuf, cover: PathBuf },
    /// Solve a grid of instances and write CSV.
    Sweep {
        /// Comma-separated vertex counts.
        #[arg(short, long, value_delimiter = ',', num_args = 1..)]
        n: Vec<usize>,
        /// Generator (repeatable): extremal, random:P, adversarial:ITERS[:RESTARTS], enumerate.
        #[arg(long = "gen", value_name = "SPEC")]
        generators: Vec<GenKind>,
        /// Seeds as A..B (half-open) or a comma-separated list.
        #[arg(long, default_value = "0")]
        seeds: String,
        /// Also run the exact oracle where n allows.
        #[arg(long)]
        oracle: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

enum Failure {
    Input(String),
    Invalid,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_colouring(path: &FsPath) -> Result<Colouring, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    decode(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_out(output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn parse_seeds(s: &str) -> Result<Vec<u64>, Failure> {
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse()?;
        let b: u64 = b.trim().parse()?;
        return Ok((a..b).collect());
    }
    s.split(',').map(|t| t.trim().parse::<u64>().map_err(Failure::from)).collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { n, extremal, random, adversarial, restarts, seed, output, solver } => {
            if n == 0 {
                return Err(Failure::Input("n must be at least 1".into()));
            }
            let kind = if extremal {
                GenKind::Extremal
            } else if let Some(p) = random {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Failure::Input(format!("probability {p} outside [0, 1]")));
                }
                GenKind::Random { p }
            } else {
                GenKind::Adversarial { iters: adversarial.unwrap_or(0), restarts }
            };
            let cfg = solver.config();
            let g = GenSpec { kind, n }.build(seed, solver_score(&cfg));
            write_out(output.as_ref(), &(encode(&g) + "\n"))
        }
        Command::Solve { file, gen, n, seed, solver } => {
            let cfg = solver.config();
            let g = match (file, gen) {
                (Some(f), _) => read_colouring(&f)?,
                (None, Some(kind)) => {
                    let n = n.filter(|&n| n >= 1).ok_or_else(|| Failure::Input("n must be at least 1".into()))?;
                    GenSpec { kind, n }.build(seed, solver_score(&cfg))
                }
                (None, None) => return Err(Failure::Input("give a colouring file or --gen".into())),
            };
            let r = solve(&g, &cfg);
            let report = validate_cover(&g, &r.cover);
            if !report.valid {
                return Err(Failure::Input(format!("internal error: solver cover {report}")));
            }
            eprintln!(
                "size {} colour {} guarantee {} trace {}",
                r.size(),
                r.cover.colour,
                r.guarantee,
                r.trace_string()
            );
            write_out(None, &encode_cover(&r.cover))
        }
        Command::Oracle { file, threshold } => {
            let g = read_colouring(&file)?;
            let r = Oracle::new(threshold).exact_f(&g)?;
            let report = validate_cover(&g, &r.witness);
            if !report.valid {
                return Err(Failure::Input(format!("internal error: oracle witness {report}")));
            }
            write_out(None, &format!("{}\n{}", r.value, encode_cover(&r.witness)))
        }
        Command::Verify { colouring, cover } => {
            let g = read_colouring(&colouring)?;
            let text = fs::read_to_string(&cover).map_err(|e| Failure::Input(format!("{}: {e}", cover.display())))?;
            let c = decode_cover(&text, g.n())?;
            let report = validate_cover(&g, &c);
            println!("{report}");
            if report.valid {
                Ok(())
            } else {
                Err(Failure::Invalid)
            }
        }
        Command::Sweep { n, generators, seeds, oracle, output, solver } => {
            let plan = SweepPlan {
                ns: n,
                generators,
                seeds: parse_seeds(&seeds)?,
                oracle,
                cfg: solver.config(),
                workers: workers_from_env(),
            };
            let rows = run_sweep(&plan);
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            write_out(output.as_ref(), &String::from_utf8(buf)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid) => ExitCode::from(2),
    }
}
