use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gapred::circuit::{is_k_satisfiable, max_weight_sat, min_weight_sat};
use gapred::exec::BUDGET_ENV;
use gapred::hash_family::{build_perfect_family, verify_perfect, FamilyOptions};
use gapred::monotone::{
    amplify, hitting_set_to_circuit, multicolored_clique_to_circuit, verify_gap_monotone, AmplifyOptions, SetSystem,
};
use gapred::threshold::{
    emit_antimonotone_circuit, max_solution, reduce_clique_to_threshold, verify_gap_threshold, ReductionOptions,
    Strategy,
};
use gapred::{
    Assignment, Circuit, ColoredGraph, FieldElement, FieldSpec, GapReport, GateStyle, RatioSpec, ReedSolomon,
    SolveOptions, ThresholdSetInstance,
};

/// Gap-amplifying reductions for weighted circuit satisfiability and Threshold Set.
///
/// Reports are printed as `key=value` lines. Exit status: 0 on success,
/// 1 on usage, input or budget errors, 2 when a verified gap claim fails.
#[derive(Parser, Debug)]
#[command(name = "gapred", version, after_help = format!("Environment:\n  {BUDGET_ENV}  cap on candidates per exhaustive search"))]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Depth, weft, class and node count of a circuit.
    Analyze {
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Weighted satisfiability by exhaustive search.
    SolveCircuit(SolveCircuitArgs),
    /// Amplify a monotone circuit through a perfect hash family.
    Amplify {
        #[command(flatten)]
        source: MonotoneArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Amplify and check both gap claims exhaustively.
    VerifyGapMonotone {
        #[command(flatten)]
        source: MonotoneArgs,
    },
    /// Weft-1 monotone circuit for multicolored clique on a colored graph.
    CliqueCircuit {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Depth-2 monotone circuit whose satisfying sets are the hitting sets.
    HittingSetCircuit {
        #[arg(long)]
        sets: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce k-clique to Threshold Set.
    ReduceClique {
        #[command(flatten)]
        source: CliqueArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the antimonotone circuit accepting the feasible solutions.
        #[arg(long, value_name = "PATH")]
        emit_circuit: Option<PathBuf>,
        #[arg(long, default_value_t = GateStyle::Large)]
        gate_style: GateStyle,
    },
    /// Exact maximum Threshold Set solution.
    SolveThreshold {
        #[arg(long)]
        instance: PathBuf,
        /// auto, generic or structured.
        #[arg(long, default_value = "auto")]
        strategy: Strategy,
    },
    /// Reduce and check both gap claims exhaustively.
    VerifyGapThreshold {
        #[command(flatten)]
        source: CliqueArgs,
    },
    /// Build a k'-perfect hash family on [n].
    HashFamily {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kprime: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check every k'-subset exhaustively.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reed-Solomon encoding and erasure recovery over GF(2^ell).
    Rs(RsArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Mode {
    /// Minimum weight of a satisfying assignment.
    #[arg(long)]
    min: bool,
    /// Maximum weight of a satisfying assignment.
    #[arg(long)]
    max: bool,
    /// Lexicographically first satisfying assignment of weight exactly K.
    #[arg(long, value_name = "K")]
    k: Option<usize>,
}

#[derive(Args, Debug)]
struct SolveCircuitArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[command(flatten)]
    mode: Mode,
}

#[derive(Args, Debug)]
struct MonotoneArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long)]
    k: usize,
    /// Ratio `c*k^e`, e.g. `1`, `k`, `2*k`, `3/2*k^(1/2)`.
    #[arg(long, default_value = "1")]
    rho: RatioSpec,
    #[arg(long, default_value_t = GateStyle::Large)]
    gate_style: GateStyle,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct CliqueArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    /// Ratio `c*k^e` with `e < 1`, e.g. `1`, `2`, `k^(1/2)`.
    #[arg(long, default_value = "1")]
    rho: RatioSpec,
    /// Recorded in the instance header.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct RsArgs {
    #[arg(long)]
    ell: u32,
    #[arg(long)]
    k: usize,
    /// Code length.
    #[arg(long = "D", value_name = "D")]
    d: usize,
    #[command(subcommand)]
    op: RsOp,
}

#[derive(Subcommand, Debug)]
enum RsOp {
    /// Encode k message words.
    Encode { words: Vec<String> },
    /// Recover the message from D codeword positions, `?` marking an erasure.
    Recover { words: Vec<String> },
}

#[derive(Debug)]
enum Failure {
    Error(String),
    ClaimViolated,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::ClaimViolated) => {
            eprintln!("error: a gap claim does not hold");
            ExitCode::from(2)
        }
    }
}

fn solve_options() -> CliResult<SolveOptions> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => {
            let budget = v
                .trim()
                .parse()
                .map_err(|_| Failure::Error(format!("{BUDGET_ENV} must be a non-negative integer, got `{v}`")))?;
            Ok(SolveOptions::default().with_budget(budget))
        }
        Err(_) => Ok(SolveOptions::default()),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Error(format!("cannot read {}: {e}", path.display())))
}

fn load<T>(path: &Path) -> CliResult<T>
where
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    read(path)?.parse().map_err(|e| Failure::Error(format!("{}:{e}", path.display())))
}

/// Writes to `path`, or to stdout when absent.
fn emit(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Error(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn names(c: &Circuit, a: &Assignment) -> String {
    c.assignment_names(a).join(",")
}

fn print_report(report: &GapReport) -> CliResult {
    print!("{report}");
    if report.holds() {
        Ok(())
    } else {
        Err(Failure::ClaimViolated)
    }
}

fn run(command: Command) -> CliResult {
    let solve = solve_options()?;
    match command {
        Command::Analyze { circuit } => {
            let c: Circuit = load(&circuit)?;
            let m = c.metrics();
            println!("depth={}", m.depth);
            println!("weft={}", m.weft);
            println!("class={}", m.class);
            println!("node_count={}", m.node_count);
            println!("inputs={}", c.num_inputs());
        }
        Command::SolveCircuit(args) => {
            let c: Circuit = load(&args.circuit)?;
            let found = if let Some(k) = args.mode.k {
                is_k_satisfiable(&c, k, &solve)?.map(|a| (k, a))
            } else if args.mode.min {
                min_weight_sat(&c, &solve)?
            } else {
                max_weight_sat(&c, &solve)?
            };
            match found {
                Some((w, a)) => {
                    println!("satisfiable=true");
                    println!("weight={w}");
                    println!("assignment={}", names(&c, &a));
                }
                None => println!("satisfiable=false"),
            }
        }
        Command::Amplify { source, out } => {
            let c: Circuit = load(&source.circuit)?;
            let opts = monotone_options(&source, solve);
            let amp = amplify(&c, source.k, &source.rho, &opts)?;
            emit(out.as_deref(), &amp.to_text())?;
            if out.is_some() {
                let (m, mp) = (c.metrics(), amp.circuit.metrics());
                println!("k={}", amp.k);
                println!("k_prime={}", amp.k_prime);
                println!("family_size={}", amp.family.size());
                println!("falsum={}", amp.falsum);
                println!("depth={} amplified_depth={}", m.depth, mp.depth);
                println!("weft={} amplified_weft={}", m.weft, mp.weft);
                println!("amplified_nodes={}", mp.node_count);
            }
        }
        Command::VerifyGapMonotone { source } => {
            let c: Circuit = load(&source.circuit)?;
            let opts = monotone_options(&source, solve);
            print_report(&verify_gap_monotone(&c, source.k, &source.rho, &opts)?)?;
        }
        Command::CliqueCircuit { graph, out } => {
            let g: ColoredGraph = load(&graph)?;
            emit(out.as_deref(), &multicolored_clique_to_circuit(&g)?.to_string())?;
        }
        Command::HittingSetCircuit { sets, out } => {
            let system: SetSystem = load(&sets)?;
            emit(out.as_deref(), &hitting_set_to_circuit(&system)?.to_string())?;
        }
        Command::ReduceClique { source, out, emit_circuit, gate_style } => {
            let g: ColoredGraph = load(&source.graph)?;
            let opts = reduction_options(&source, solve);
            let inst = reduce_clique_to_threshold(&g, source.k, &source.rho, &opts)?;
            emit(out.as_deref(), &inst.to_string())?;
            if let Some(path) = emit_circuit {
                let c = emit_antimonotone_circuit(&inst, gate_style)?;
                emit(Some(&path), &c.to_string())?;
            }
            if out.is_some() {
                let meta = inst.meta().expect("reduced instances carry metadata");
                println!("k={}", meta.k);
                println!("D={}", meta.d);
                println!("ell={}", meta.ell);
                println!("q={}", meta.q);
                println!("universe={}", inst.universe_size());
                println!("sets={}", inst.sets().len());
                println!("duplicates={}", meta.duplicates);
            }
        }
        Command::SolveThreshold { instance, strategy } => {
            let inst: ThresholdSetInstance = load(&instance)?;
            let sol = max_solution(&inst, strategy, &solve)?;
            println!("size={}", sol.size);
            println!("witness={}", sol.witness.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
        }
        Command::VerifyGapThreshold { source } => {
            let g: ColoredGraph = load(&source.graph)?;
            let opts = reduction_options(&source, solve);
            print_report(&verify_gap_threshold(&g, source.k, &source.rho, &opts)?)?;
        }
        Command::HashFamily { n, kprime, seed, verify, out } => {
            let opts = FamilyOptions { seed, solve, ..Default::default() };
            let family = build_perfect_family(n, kprime, &opts)?;
            emit(out.as_deref(), &family.to_string())?;
            if verify {
                let perfect = verify_perfect(&family, &solve)?;
                // Keep stdout a clean family dump when it holds one.
                if out.is_some() {
                    println!("size={}", family.size());
                    println!("perfect={perfect}");
                } else {
                    eprintln!("perfect={perfect}");
                }
                if !perfect {
                    return Err(Failure::ClaimViolated);
                }
            } else if out.is_some() {
                println!("size={}", family.size());
            }
        }
        Command::Rs(args) => rs(args)?,
    }
    Ok(())
}

fn monotone_options(args: &MonotoneArgs, solve: SolveOptions) -> AmplifyOptions {
    let mut opts = AmplifyOptions::with_seed(args.seed).gate_style(args.gate_style);
    opts.family.solve = solve;
    opts
}

fn reduction_options(args: &CliqueArgs, solve: SolveOptions) -> ReductionOptions {
    ReductionOptions { seed: args.seed, solve, ..Default::default() }
}

fn field_word(field: &FieldSpec, text: &str) -> CliResult<FieldElement> {
    let w: u32 = text.parse().map_err(|_| Failure::Error(format!("`{text}` is not a field word")))?;
    Ok(field.element(w)?)
}

fn rs(args: RsArgs) -> CliResult {
    let field = FieldSpec::standard(args.ell)?;
    let code = ReedSolomon::new(field, args.k, args.d)?;
    let join = |xs: &[FieldElement]| xs.iter().map(|x| x.word().to_string()).collect::<Vec<_>>().join(" ");
    match args.op {
        RsOp::Encode { words } => {
            let msg = words.iter().map(|w| field_word(&field, w)).collect::<CliResult<Vec<_>>>()?;
            println!("codeword={}", join(&code.encode(&msg)?));
        }
        RsOp::Recover { words } => {
            if words.len() != args.d {
                return Err(Failure::Error(format!("expected {} positions, got {}", args.d, words.len())));
            }
            let mut known = Vec::new();
            for (pos, w) in words.iter().enumerate() {
                if w != "?" {
                    known.push((pos, field_word(&field, w)?));
                }
            }
            let msg = code.recover(&known)?;
            println!("message={}", join(&msg));
            println!("codeword={}", join(&code.encode(&msg)?));
        }
    }
    Ok(())
}
