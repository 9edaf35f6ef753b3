use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use interleave_core::counts::bigmath::{ln_biguint, rational_to_f64};
use interleave_core::counts::{hook_count, rows_to_csv, rows_to_json, sequence_rows, SequenceName};
use interleave_core::cuts::{level_profile, ProfileMethod};
use interleave_core::process::{
    annotate_weights, build_semantic_tree, parse_process, RunPrefix, SyntaxTree, WeightedTree,
    DEFAULT_SEMANTIC_BUDGET,
};
use interleave_core::sampling::{
    count_runs_via_probability, prefix_probability_counted, run_frequencies, sample_runs,
    uniform_random_tree, Rng, ALGORITHM,
};
use interleave_core::selftest::run_selftest;
use interleave_core::Error;
use num_bigint::BigUint;
use serde_json::json;

/// Counting and sampling interleavings of process trees.
#[derive(Parser)]
#[command(name = "interleave")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Args)]
struct TermInput {
    /// Process term, e.g. "a.b.(c || d.(e || f))".
    term: Option<String>,
    /// Read the term (or a JSON tree record, for `.json` files) from a file.
    #[arg(long, conflicts_with = "term")]
    input: Option<PathBuf>,
    /// Accept a top-level parallel composition under a synthetic root.
    #[arg(long)]
    forest: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Number of runs, by the hook-length formula and by 1/rho.
    Count {
        #[command(flatten)]
        input: TermInput,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exact probability of a run prefix.
    Prob {
        #[command(flatten)]
        input: TermInput,
        /// Comma-separated actions, as `label` or `label#id`.
        #[arg(long)]
        prefix: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Uniform random runs.
    Sample {
        #[command(flatten)]
        input: TermInput,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Append the empirical frequency of each distinct run.
        #[arg(long)]
        freq: bool,
        /// Print only the frequency table.
        #[arg(long, requires = "freq")]
        no_runs: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Number of interleaving-tree nodes per level.
    Profile {
        #[command(flatten)]
        input: TermInput,
        /// Enumerate admissible cuts instead of the prefix-count recursion.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Export the full interleaving tree.
    Semantic {
        #[command(flatten)]
        input: TermInput,
        /// Refuse trees with more nodes than this.
        #[arg(long, default_value_t = DEFAULT_SEMANTIC_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Tabulate a counting sequence.
    Seq {
        /// catalan, increasing, mean_width, mean_size, m_cuts, r_seq, nonplane or geomean.
        name: String,
        #[arg(long)]
        to: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Uniform random process term of a given size.
    Gen {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the built-in invariant checks.
    Selftest,
}

enum Failure {
    Usage(String),
    Core(Error),
    Selftest,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let version: &'static str =
        Box::leak(format!("{} (rng: {})", env!("CARGO_PKG_VERSION"), ALGORITHM).into_boxed_str());
    let matches = match Cli::command().version(version).try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {}", e);
            ExitCode::from(if matches!(e, Error::BudgetExceeded { .. }) { 2 } else { 1 })
        }
        Err(Failure::Selftest) => ExitCode::from(3),
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Count { input, format } => count(&load(&input)?, format),
        Command::Prob { input, prefix, format } => prob(&load(&input)?, &prefix, format),
        Command::Sample { input, samples, seed, freq, no_runs, format } => {
            sample(&load(&input)?, samples, seed, freq, no_runs, format)
        }
        Command::Profile { input, oracle, format } => profile(&load(&input)?, oracle, format),
        Command::Semantic { input, budget, format } => semantic(&load(&input)?, budget, format),
        Command::Seq { name, to, format } => seq(&name, to, format),
        Command::Gen { size, seed, format } => gen(size, seed, format),
        Command::Selftest => selftest(),
    }
}

fn load(input: &TermInput) -> Result<WeightedTree, Failure> {
    let tree = match (&input.term, &input.input) {
        (Some(term), None) => parse_process(term, input.forest)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {}", path.display(), e)))?;
            if path.extension().is_some_and(|ext| ext == "json") {
                SyntaxTree::from_json(&text)?
            } else {
                parse_process(text.trim(), input.forest)?
            }
        }
        _ => return Err(Failure::Usage("expected a term or --input".into())),
    };
    Ok(annotate_weights(tree))
}

fn unsupported(format: Format) -> Failure {
    Failure::Usage(format!("format {:?} is not available for this command", format).to_lowercase())
}

/// Full decimal, plus a scientific form for long numbers.
fn big_display(x: &BigUint) -> String {
    let digits = x.to_string();
    if digits.len() <= 12 {
        digits
    } else {
        let log10 = ln_biguint(x) / std::f64::consts::LN_10;
        let exp = log10.floor();
        format!("{} (~{:.6}e{})", digits, 10f64.powf(log10 - exp), exp as i64)
    }
}

fn count(tree: &WeightedTree, format: Format) -> Outcome {
    let hook = hook_count(tree);
    let dual = count_runs_via_probability(tree)?;
    if hook != dual {
        return Err(Failure::Usage(format!("run counts disagree: {} vs {}", hook, dual)));
    }
    match format {
        Format::Text => Ok(format!(
            "{}\nhook length: {}\n1/rho:       {}\n",
            hook,
            big_display(&hook),
            big_display(&dual)
        )),
        Format::Json => Ok(json_line(json!({
            "term": tree.tree().to_term(),
            "size": tree.len(),
            "hook_count": hook.to_string(),
            "via_probability": dual.to_string(),
        }))),
        other => Err(unsupported(other)),
    }
}

fn prob(tree: &WeightedTree, prefix: &str, format: Format) -> Outcome {
    let names: Vec<&str> = prefix.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let prefix = RunPrefix::from_names(tree.tree(), &names)?;
    let p = prefix_probability_counted(tree, &prefix)?;
    let approx = rational_to_f64(&p.value);
    match format {
        Format::Text => Ok(format!("{}\n{}\n", p.value, approx)),
        Format::Json => Ok(json_line(json!({
            "prefix": prefix.display(tree.tree()),
            "numerator": p.value.numer().to_string(),
            "denominator": p.value.denom().to_string(),
            "approx": approx,
            "steps": p.steps,
        }))),
        other => Err(unsupported(other)),
    }
}

fn sample(tree: &WeightedTree, samples: usize, seed: u64, freq: bool, no_runs: bool, format: Format) -> Outcome {
    let runs = sample_runs(tree, seed, samples);
    let table = freq.then(|| run_frequencies(&runs));
    match format {
        Format::Text => {
            let mut out = String::new();
            if !no_runs {
                for r in &runs {
                    out.push_str(&r.display(tree));
                    out.push('\n');
                }
            }
            if let Some(table) = table {
                if !no_runs {
                    out.push('\n');
                }
                for (run, count) in table {
                    out.push_str(&format!(
                        "{}\t{:.6}\t{}\n",
                        count,
                        count as f64 / samples as f64,
                        run.display(tree)
                    ));
                }
            }
            Ok(out)
        }
        Format::Json => {
            let mut doc = json!({ "seed": seed, "samples": samples, "rng": ALGORITHM });
            if !no_runs {
                doc["runs"] = runs.iter().map(|r| r.to_json(tree)).collect();
            }
            if let Some(table) = table {
                doc["frequencies"] = table
                    .iter()
                    .map(|(run, &count)| {
                        json!({ "run": run.display(tree), "count": count, "frequency": count as f64 / samples as f64 })
                    })
                    .collect();
            }
            Ok(json_line(doc))
        }
        other => Err(unsupported(other)),
    }
}

fn profile(tree: &WeightedTree, oracle: bool, format: Format) -> Outcome {
    let method = if oracle { ProfileMethod::Oracle } else { ProfileMethod::Fast };
    let p = level_profile(tree.tree(), method)?;
    match format {
        Format::Csv => Ok(p.to_csv()),
        Format::Json => Ok(json_line(p.to_json())),
        Format::Text => {
            let mut out = String::new();
            for (level, c) in p.counts().iter().enumerate() {
                out.push_str(&format!("{}\t{}\n", level, big_display(c)));
            }
            out.push_str(&format!("total\t{}\n", big_display(&p.total())));
            Ok(out)
        }
        other => Err(unsupported(other)),
    }
}

fn semantic(tree: &WeightedTree, budget: u64, format: Format) -> Outcome {
    let s = build_semantic_tree(tree.tree(), budget)?;
    match format {
        Format::Dot => Ok(s.to_dot()),
        Format::Text => {
            let mut out = String::new();
            for branch in s.branches() {
                let run = RunPrefix::new(tree.tree(), branch)?;
                out.push_str(&run.display(tree.tree()));
                out.push('\n');
            }
            Ok(out)
        }
        Format::Json => Ok(json_line(json!({
            "nodes": s.len(),
            "levels": s.level_counts(),
            "leaves": s.leaf_count(),
        }))),
        other => Err(unsupported(other)),
    }
}

fn seq(name: &str, to: usize, format: Format) -> Outcome {
    let name: SequenceName = name.parse()?;
    let rows = sequence_rows(name, to)?;
    match format {
        Format::Csv => Ok(rows_to_csv(&rows)),
        Format::Json => Ok(json_line(rows_to_json(name, &rows))),
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                out.push_str(&format!("{}\t{}", r.n, r.value));
                if let Some(ratio) = r.asymptotic_ratio {
                    out.push_str(&format!("\t{:.10}", ratio));
                }
                out.push('\n');
            }
            Ok(out)
        }
        other => Err(unsupported(other)),
    }
}

fn gen(size: usize, seed: u64, format: Format) -> Outcome {
    let t = uniform_random_tree(size, &mut Rng::seeded(seed))?;
    match format {
        Format::Text => Ok(format!("{}\n", t.to_term())),
        Format::Json => Ok(format!("{}\n", t.to_json())),
        Format::Dot => Ok(t.to_dot()),
        other => Err(unsupported(other)),
    }
}

fn selftest() -> Outcome {
    let outcomes = run_selftest();
    let mut out = String::new();
    for o in &outcomes {
        out.push_str(&format!("{} {}: {}\n", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail));
    }
    print!("{}", out);
    if outcomes.iter().all(|o| o.passed) {
        Ok(String::new())
    } else {
        Err(Failure::Selftest)
    }
}

fn json_line(v: serde_json::Value) -> String {
    format!("{}\n", v)
}
