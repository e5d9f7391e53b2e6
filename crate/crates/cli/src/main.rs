//! `klmu`: Kazhdan–Lusztig polynomials, μ-coefficients, tableaux, cell
//! graphs and the counterexample search from the command line.

mod verify;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use klmu::{
    action_matrices, check_relations, difference_grid, inverse_rsk, kl_graph, knuth_apply,
    knuth_interchange, left_cell, ls_graph, render_picture, rsk, BigInt, CacheError, Coefficient,
    Filter, FilterSet, KlCache, KlEngine, KlError, Permutation, SearchConfig, SearchError, Side,
    Strategy, Tableau, ThetaSpec, WordKind,
};

#[derive(Parser)]
#[command(name = "klmu", version, about = "Kazhdan-Lusztig polynomials and mu-coefficients for the symmetric group")]
struct Cli {
    /// Persistent polynomial cache; loaded if present, saved afterwards.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Worker threads for parallel commands.
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,
    /// Generator choice in the recursion.
    #[arg(long, global = true, default_value = "smallest-right")]
    strategy: Strategy,
    /// Coefficient type for polynomial arithmetic.
    #[arg(long, global = true, value_enum, default_value_t = Coeff::I64)]
    coeff: Coeff,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeff {
    I64,
    I128,
    Big,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Suite {
    Core,
    Extended,
}

#[derive(Subcommand)]
enum Command {
    /// Print P_{x,w}.
    Kl { x: Permutation, w: Permutation },
    /// Print mu(x,w); with --sym, order the pair by Bruhat order first.
    Mu {
        x: Permutation,
        w: Permutation,
        #[arg(long)]
        sym: bool,
    },
    /// Print the correction sum for generator s on the given side.
    Theta {
        side: Side,
        s: usize,
        x: Permutation,
        v: Permutation,
        /// Also list the flush and coatomic elements.
        #[arg(long)]
        sets: bool,
    },
    /// Draw the Bruhat picture of x <= w.
    Picture {
        x: Permutation,
        w: Permutation,
        /// Print the raw difference grid instead.
        #[arg(long)]
        grid: bool,
    },
    /// Robinson-Schensted: a permutation, or a pair of tableaux P Q to invert.
    Rsk {
        #[arg(num_args = 1..=2, required = true)]
        input: Vec<String>,
    },
    /// List the left cell with recording tableau Q.
    Cell { q: Tableau },
    /// Apply the Knuth operator L_k to w.
    Knuth {
        k: usize,
        w: Permutation,
        /// Interchange k and k+2 literally instead of the cell-preserving move.
        #[arg(long)]
        literal: bool,
    },
    /// Run the filter pipeline on tableau pairs of size n.
    Search {
        n: usize,
        /// Reading word used by filter 8.
        #[arg(long, default_value = "column")]
        words: WordKind,
        /// Disable a filter (number or name); repeatable.
        #[arg(long = "skip", value_name = "FILTER")]
        skip: Vec<Filter>,
        /// Check filter 2 by Knuth walks instead of enumeration.
        #[arg(long)]
        q_walk: bool,
    },
    /// Graphs and generator matrices of the left cell of Q.
    Wgraph {
        q: Tableau,
        /// Use the L-S graph instead of the K-L graph.
        #[arg(long)]
        ls: bool,
        /// Print one matrix per generator.
        #[arg(long)]
        matrices: bool,
        /// Check the Coxeter relations; exit 1 on failure.
        #[arg(long)]
        check: bool,
    },
    /// Run a fixed-value suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Core)]
        suite: Suite,
    },
    /// Inspect or merge cache files.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Entry count of the --cache file.
    Stats,
    /// Merge cache files into OUT.
    Merge {
        out: PathBuf,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Failure(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) | CliError::Io(m) => m,
        }
    }
}

impl From<KlError> for CliError {
    fn from(e: KlError) -> Self {
        match e {
            KlError::Cache(c) => c.into(),
            KlError::Perm(_) | KlError::Incomparable { .. } | KlError::InvalidTheta { .. } => {
                CliError::Usage(e.to_string())
            }
        }
    }
}

impl From<CacheError> for CliError {
    fn from(e: CacheError) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Kl(k) => k.into(),
            SearchError::BadDegree(_) => CliError::Usage(e.to_string()),
            SearchError::Threads(_) => CliError::Failure(e.to_string()),
        }
    }
}

fn open_engine<C: Coefficient>(cli: &Cli) -> Result<KlEngine<C>, CliError> {
    match &cli.cache {
        Some(path) => Ok(KlEngine::open(path, cli.strategy)?),
        None => Ok(KlEngine::new(cli.strategy)),
    }
}

fn parse_perm(s: &str) -> Result<Permutation, CliError> {
    s.parse().map_err(|e: klmu::PermError| CliError::Usage(e.to_string()))
}

fn parse_tableau(s: &str) -> Result<Tableau, CliError> {
    s.parse().map_err(|e: klmu::RskError| CliError::Usage(e.to_string()))
}

/// Runs one command, returning its standard output.
fn execute<C: Coefficient>(cli: &Cli, engine: &KlEngine<C>) -> Result<String, CliError> {
    let mut out = String::new();
    match &cli.command {
        Command::Kl { x, w } => {
            writeln!(out, "{}", engine.kl_poly(x, w)?).unwrap();
        }
        Command::Mu { x, w, sym } => {
            let m = if *sym { engine.mu_sym(x, w)? } else { engine.mu(x, w)? };
            writeln!(out, "{m}").unwrap();
        }
        Command::Theta { side, s, x, v, sets } => {
            let spec = ThetaSpec::new(*side, *s, x.clone(), v.clone());
            let sum = engine.theta_sum(&spec)?;
            if *sets {
                let found = klmu::theta_sets(&spec)?;
                for z in &found.delta {
                    writeln!(out, "coatomic {z} {}", z.length()).unwrap();
                }
                for z in &found.omega {
                    writeln!(out, "flush {z} {}", z.length()).unwrap();
                }
            }
            writeln!(out, "{sum}").unwrap();
        }
        Command::Picture { x, w, grid } => {
            let text = if *grid {
                difference_grid(x, w).map(|g| g.dump())
            } else {
                render_picture(x, w)
            };
            out.push_str(&text.map_err(|e| CliError::Usage(e.to_string()))?);
        }
        Command::Rsk { input } => match input.as_slice() {
            [w] => {
                let w = parse_perm(w)?;
                let (p, q) = rsk(&w);
                writeln!(out, "P {p}\nQ {q}\nshape {}", p.shape()).unwrap();
                writeln!(out, "rwd {}\ncwd {}", p.row_word(), p.column_word()).unwrap();
            }
            [p, q] => {
                let (p, q) = (parse_tableau(p)?, parse_tableau(q)?);
                let w = inverse_rsk(&p, &q).map_err(|e| CliError::Usage(e.to_string()))?;
                writeln!(out, "{w}").unwrap();
            }
            _ => unreachable!("clap enforces one or two inputs"),
        },
        Command::Cell { q } => {
            for w in left_cell(q) {
                writeln!(out, "{w} {}", rsk(&w).0).unwrap();
            }
        }
        Command::Knuth { k, w, literal } => {
            let r = if *literal {
                knuth_interchange(*k, w)
            } else {
                knuth_apply(*k, w)
            };
            writeln!(out, "{}", r.map_err(|e| CliError::Usage(e.to_string()))?).unwrap();
        }
        Command::Search { n, words, skip, q_walk } => {
            let mut config = SearchConfig::new(*n);
            config.word_kind = *words;
            config.q_walk = *q_walk;
            config.threads = cli.threads;
            config.filters = skip.iter().fold(FilterSet::all(), |set, f| set.without(*f));
            let report = klmu::run_search_with(&config, engine)?;
            write!(out, "{report}").unwrap();
        }
        Command::Wgraph { q, ls, matrices, check } => {
            let cell = left_cell(q);
            let graph = if *ls { ls_graph(&cell) } else { kl_graph(&cell, engine)? };
            write!(out, "{graph}").unwrap();
            let ms = action_matrices(&graph);
            if *matrices {
                for m in &ms {
                    writeln!(out, "\nA(s{})\n{m}", m.generator).unwrap();
                }
            }
            if *check {
                let report = check_relations(&ms);
                for f in &report.failures {
                    writeln!(out, "fail {f}").unwrap();
                }
                writeln!(out, "relations checked {} failing entries {}", report.checked, report.failures.len())
                    .unwrap();
                if !report.is_ok() {
                    return Err(CliError::Failure(out));
                }
            }
        }
        Command::Verify { suite } => {
            let outcomes = match suite {
                Suite::Core => verify::core(engine)?,
                Suite::Extended => verify::extended(engine)?,
            };
            for o in &outcomes {
                if o.passed() {
                    writeln!(out, "ok   {}: {}", o.name, o.computed).unwrap();
                } else {
                    writeln!(out, "FAIL {}: expected {}, computed {}", o.name, o.expected, o.computed).unwrap();
                }
            }
            if let Some(first) = outcomes.iter().find(|o| !o.passed()) {
                writeln!(out, "first failing check: {}", first.name).unwrap();
                return Err(CliError::Failure(out));
            }
        }
        Command::Cache { action } => match action {
            CacheAction::Stats => {
                let stats = engine.cache().stats();
                writeln!(out, "entries {}", stats.entries).unwrap();
            }
            CacheAction::Merge { out: target, inputs } => {
                let merged = KlCache::<C>::new();
                for path in inputs {
                    merged.merge(KlCache::load(path)?)?;
                }
                merged.save(target)?;
                writeln!(out, "entries {}", merged.len()).unwrap();
            }
        },
    }
    Ok(out)
}

fn run<C: Coefficient>(cli: &Cli) -> Result<String, CliError> {
    let engine = open_engine::<C>(cli)?;
    let before = engine.cache().len();
    let result = execute(cli, &engine);
    if let Some(path) = &cli.cache {
        let stats = engine.cache().stats();
        eprintln!(
            "cache {}: entries {} hits {} misses {}",
            path.display(),
            stats.entries,
            stats.hits,
            stats.misses
        );
        if stats.entries != before {
            engine.save(path)?;
        }
    }
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if rayon::ThreadPoolBuilder::new().num_threads(k).build_global().is_err() {
            eprintln!("klmu: cannot start {k} worker threads");
            return ExitCode::from(1);
        }
    }
    // Deep recursions at n = 16 need more than the default main-thread stack.
    let worker = std::thread::Builder::new()
        .stack_size(1 << 28)
        .spawn(move || match cli.coeff {
            Coeff::I64 => run::<i64>(&cli),
            Coeff::I128 => run::<i128>(&cli),
            Coeff::Big => run::<BigInt>(&cli),
        })
        .expect("spawn worker thread");
    let result = worker.join().unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(CliError::Failure(format!("klmu: internal error: {msg}")))
    });
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match result {
        Ok(text) => {
            let _ = lock.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(CliError::Failure(text)) if !text.starts_with("klmu:") => {
            let _ = lock.write_all(text.as_bytes());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("klmu: {}", e.message().trim_start_matches("klmu: "));
            ExitCode::from(e.code())
        }
    }
}
