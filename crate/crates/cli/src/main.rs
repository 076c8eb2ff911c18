use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coniveau_cli::config::{ClassPreset, ClassSpec, ProductEntry, TaskSpec};
use coniveau_cli::{
    parse, resolve, run_scenario, summary, CliError, ConfigError, RunOptions, ScenarioConfig,
    CACHE_DIR_ENV, EXIT_INVALID, SCHEMA_VERSION,
};
use tate_coniveau::group_ring::GroupElement;
use tate_coniveau::weil::FieldContext;

#[derive(Parser)]
#[command(name = "coniveau", version, about = "Weil-number divisors, coniveau and exotic relations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Write the JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Cache directory for exhaustive-search results.
    #[arg(long, global = true, value_name = "PATH", env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,
    /// Ignore the cache directory.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads (default: one per core).
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a JSON scenario file.
    Run { config: PathBuf },
    /// List the sections for a context with their orbit structure.
    Enumerate {
        #[arg(long)]
        k: u32,
        /// Element index of complex conjugation.
        #[arg(long)]
        c: u32,
    },
    /// Run an exhaustive verifier.
    Verify {
        #[command(subcommand)]
        which: Verify,
    },
    /// Coniveau census of a preset product in one degree.
    Analyze {
        #[arg(long, value_enum)]
        preset: ProductPreset,
        #[arg(long)]
        degree: u32,
        /// Report gaps without failing.
        #[arg(long)]
        expect_gaps: bool,
    },
    /// Exotic-relation search over a preset generator set.
    Relations {
        #[arg(long, value_enum)]
        preset: RelationPreset,
        #[arg(long)]
        max_degree: Option<u32>,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Triple lemma over all contexts of rank at most KMAX.
    Lemma1 {
        #[arg(long)]
        kmax: u32,
    },
    /// Generalised triple bound with exponents in [0, BOUND].
    Thm2 {
        #[arg(long)]
        bound: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum ProductPreset {
    StandardTriple,
    StandardQuadruple,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum RelationPreset {
    StandardTriple,
    StandardQuadruple,
    QuadrupleBeta,
}

fn scenario(context: FieldContext, classes: Vec<ClassSpec>, product: Vec<ProductEntry>, task: TaskSpec) -> ScenarioConfig {
    ScenarioConfig {
        schema: SCHEMA_VERSION.into(),
        context,
        classes,
        product,
        tasks: vec![task],
        limits: None,
    }
}

fn labels(n: usize) -> Vec<ProductEntry> {
    (1..=n).map(|i| ProductEntry { label: format!("alpha{i}"), multiplicity: 1 }).collect()
}

fn build(command: Command) -> Result<ScenarioConfig, CliError> {
    let standard = FieldContext::standard();
    let preset = |p| ClassSpec::Preset { preset: p };
    Ok(match command {
        Command::Run { config } => {
            let text = fs::read_to_string(&config).map_err(|source| CliError::Io { path: config.clone(), source })?;
            parse(&text)?
        }
        Command::Enumerate { k, c } => {
            let ctx = FieldContext::new(k, GroupElement::from_index(c))
                .map_err(|e| ConfigError::new("--c", e.to_string()))?;
            scenario(ctx, vec![], vec![], TaskSpec::Enumerate {})
        }
        Command::Verify { which: Verify::Lemma1 { kmax } } => {
            scenario(standard, vec![], vec![], TaskSpec::VerifyLemma1 { kmax })
        }
        Command::Verify { which: Verify::Thm2 { bound } } => {
            scenario(standard, vec![], vec![], TaskSpec::VerifyThm2 { bound })
        }
        Command::Analyze { preset: p, degree, expect_gaps } => {
            let (class, n) = match p {
                ProductPreset::StandardTriple => (ClassPreset::StandardTriple, 3),
                ProductPreset::StandardQuadruple => (ClassPreset::StandardQuadruple, 4),
            };
            scenario(standard, vec![preset(class)], labels(n), TaskSpec::Analyze { degree, expect_gaps })
        }
        Command::Relations { preset: p, max_degree } => {
            let classes = match p {
                RelationPreset::StandardTriple => vec![preset(ClassPreset::StandardTriple)],
                RelationPreset::StandardQuadruple => vec![preset(ClassPreset::StandardQuadruple)],
                RelationPreset::QuadrupleBeta => {
                    vec![preset(ClassPreset::StandardQuadruple), preset(ClassPreset::Beta)]
                }
            };
            scenario(standard, classes, vec![], TaskSpec::Relations { generators: None, max_degree })
        }
    })
}

fn main_inner(cli: Cli) -> Result<i32, CliError> {
    let config = build(cli.command)?;
    let scenario = resolve(config)?;
    let opts = RunOptions {
        jobs: cli.global.jobs.map(usize::from),
        cache_dir: if cli.global.no_cache { None } else { cli.global.cache_dir },
    };
    let report = run_scenario(&scenario, &opts)?;
    if let Some(path) = &cli.global.json {
        let text = serde_json::to_string_pretty(&report).expect("reports serialize");
        fs::write(path, text + "\n").map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    print!("{}", summary::render(&report));
    Ok(report.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID as u8)
        }
    }
}
