use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use tabutruss_cli::acceptance::{render, Suite};
use tabutruss_cli::config::{load_config, BuiltProblem, RunConfig};
use tabutruss_cli::report::{build_report, config_hash, write_trace};
use tabutruss_core::design::DesignVector;
use tabutruss_core::engine::run_search;
use tabutruss_core::objectives::{
    derive_normalization, NormalizationDerivation, ObjectiveKind, TrussProblem,
};

/// Tabu-search sizing optimizer for pin-jointed trusses.
#[derive(Parser)]
#[command(name = "tabutruss", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Run configuration file (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Override the configured RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the configured evaluation budget.
    #[arg(long)]
    max_evals: Option<u64>,
    /// Override the configured output directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tabu search and write a report plus convergence trace.
    Optimise {
        #[command(flatten)]
        common: CommonArgs,
        /// Normalization file from `normalize` (compound runs).
        #[arg(long)]
        normalization: Option<PathBuf>,
    },
    /// Analyze a fixed design: one evaluation, no search.
    Analyze {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated areas in display units.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        areas: Option<Vec<f64>>,
        /// JSON file with an array of areas.
        #[arg(long)]
        areas_file: Option<PathBuf>,
    },
    /// Run the three single-objective searches and write the derived
    /// normalization constants.
    Normalize {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the full acceptance suite against the shipped configs.
    Verify {
        /// Directory holding bland.json, bd.json and bd_compound.json.
        #[arg(long, default_value = "configs")]
        config_dir: PathBuf,
    },
}

/// Exit codes: 0 success, 1 constraint or criterion failure, 2 bad
/// input.
const EXIT_CONSTRAINT: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Optimise {
            common,
            normalization,
        } => cmd_optimise(common, normalization),
        Command::Analyze {
            common,
            areas,
            areas_file,
        } => cmd_analyze(common, areas, areas_file),
        Command::Normalize { common } => cmd_normalize(common),
        Command::Verify { config_dir } => cmd_verify(&config_dir),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_BAD_INPUT)
        }
    }
}

struct PreparedRun {
    config: RunConfig,
    built: BuiltProblem,
    sha256: String,
}

fn prepare(common: &CommonArgs) -> anyhow::Result<PreparedRun> {
    let config = load_config(&common.config)?;
    let mut built = config.build().map_err(anyhow::Error::msg)?;
    if let Some(seed) = common.seed {
        built.search.rng_seed = seed;
    }
    if let Some(max_evals) = common.max_evals {
        built.search.max_evaluations = max_evals;
    }
    if let Some(dir) = &common.out_dir {
        built.output.directory = dir.display().to_string();
    }
    let sha256 = config_hash(&common.config)?;
    Ok(PreparedRun {
        config,
        built,
        sha256,
    })
}

fn cmd_optimise(
    common: CommonArgs,
    normalization: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let PreparedRun {
        config,
        mut built,
        sha256,
    } = prepare(&common)?;

    let mut start = built.start.clone();
    if built.spec.kind == ObjectiveKind::Compound && built.spec.normalization.is_none() {
        let Some(path) = &normalization else {
            anyhow::bail!(
                "compound objective without inline constants: pass --normalization <file> from `normalize`"
            );
        };
        let text = std::fs::read_to_string(path)?;
        let derivation: NormalizationDerivation = serde_json::from_str(&text)?;
        built.spec.normalization = Some(derivation.constants);
        if config.search.start.is_none() {
            start = derivation
                .compound_start(
                    &built.model,
                    &built.spec,
                    built.area_scale,
                    built.search.min_step,
                )
                .map_err(|e| anyhow::anyhow!(e.to_string()))?;
        }
    }

    let problem = TrussProblem::new(built.model.clone(), built.spec.clone(), built.area_scale)
        .map_err(|e| anyhow::anyhow!(e.to_string()))?;

    // report infeasible starts with the violated constraints up front
    let start_outcome = problem
        .outcome(&start)
        .map_err(|e| anyhow::anyhow!(e.to_string()))?;
    if !start_outcome.feasible {
        eprintln!("infeasible start {start}:");
        for violation in &start_outcome.violations {
            eprintln!("  {violation}");
        }
        return Ok(ExitCode::from(EXIT_CONSTRAINT));
    }

    let t0 = Instant::now();
    let result = run_search(&problem, &built.search, &start)?;
    let wall = t0.elapsed().as_secs_f64();

    let outcome = problem
        .outcome(&result.best)
        .map_err(|e| anyhow::anyhow!(e.to_string()))?;
    let out_dir = PathBuf::from(&built.output.directory);
    let trace_path = out_dir.join(&built.output.trace_filename);
    write_trace(&trace_path, &result.trace)?;
    let report = build_report(
        &config,
        sha256,
        &outcome,
        result.best.clone(),
        Some(&result),
        built.search.clone(),
        wall,
    );
    let (text_path, json_path) = report.write(&out_dir, "report")?;
    print!("{}", report.render_text());
    println!("trace: {}", trace_path.display());
    println!("report: {} / {}", text_path.display(), json_path.display());
    if result.diversification_fallbacks > 0 {
        println!(
            "note: {} diversification(s) found no feasible point and fell back to the incumbent",
            result.diversification_fallbacks
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_analyze(
    common: CommonArgs,
    areas: Option<Vec<f64>>,
    areas_file: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let PreparedRun {
        config,
        built,
        sha256,
    } = prepare(&common)?;
    let areas = match (areas, areas_file) {
        (Some(values), None) => values,
        (None, Some(path)) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        _ => anyhow::bail!("pass exactly one of --areas or --areas-file"),
    };
    if areas.len() != built.model.member_count() {
        anyhow::bail!(
            "dimension mismatch: {} areas given, model has {} members",
            areas.len(),
            built.model.member_count()
        );
    }
    let design = DesignVector::new(areas);
    let problem = TrussProblem::new(built.model.clone(), built.spec.clone(), built.area_scale)
        .map_err(|e| anyhow::anyhow!(e.to_string()))?;
    let t0 = Instant::now();
    let outcome = problem
        .outcome(&design)
        .map_err(|e| anyhow::anyhow!(e.to_string()))?;
    let report = build_report(
        &config,
        sha256,
        &outcome,
        design,
        None,
        built.search.clone(),
        t0.elapsed().as_secs_f64(),
    );
    let (text_path, json_path) = report.write(Path::new(&built.output.directory), "analysis")?;
    print!("{}", report.render_text());
    println!("report: {} / {}", text_path.display(), json_path.display());
    Ok(if outcome.feasible {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CONSTRAINT)
    })
}

fn cmd_normalize(common: CommonArgs) -> anyhow::Result<ExitCode> {
    let PreparedRun { built, .. } = prepare(&common)?;
    let derivation = derive_normalization(
        &built.model,
        &built.spec,
        built.area_scale,
        &built.search,
    )
    .map_err(|e| anyhow::anyhow!(e.to_string()))?;
    let out_dir = PathBuf::from(&built.output.directory);
    std::fs::create_dir_all(&out_dir)?;
    let path = out_dir.join("normalization.json");
    let file = std::fs::File::create(&path)?;
    serde_json::to_writer_pretty(std::io::BufWriter::new(file), &derivation)?;
    for solution in &derivation.solutions {
        println!(
            "{}: mass {:.2}, frequency {:.3} Hz, displacement {:.4} ({} evaluations)",
            solution.kind.label(),
            solution.raw[0],
            -solution.raw[1] / (2.0 * std::f64::consts::PI),
            solution.raw[2],
            solution.evaluations
        );
    }
    let c = &derivation.constants;
    println!(
        "constants: mass [{:.2}, {:.2}], neg_frequency [{:.3}, {:.3}], displacement [{:.4}, {:.4}]",
        c.mass.best,
        c.mass.worst,
        c.neg_frequency.best,
        c.neg_frequency.worst,
        c.displacement.best,
        c.displacement.worst
    );
    println!("written: {}", path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(config_dir: &Path) -> anyhow::Result<ExitCode> {
    let t0 = Instant::now();
    let results = Suite::new(config_dir).run_all();
    let (table, all_passed) = render(&results);
    print!("{table}");
    println!("total runtime: {:.1} s", t0.elapsed().as_secs_f64());
    Ok(if all_passed {
        println!("verify: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("verify: FAILURES present");
        ExitCode::from(EXIT_CONSTRAINT)
    })
}
