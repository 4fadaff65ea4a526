//! `gentle`: analyze bound quivers and angulations from the command line.
//!
//! Exit status is 0 when every requested verification passes, 1 when one
//! fails and 2 on input errors.

mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gentle_core::blocks::{decompose_blocks, BlockKind};
use gentle_core::classify::{critical_paths, saturated_cycles};
use gentle_core::cm::{cm_report, CmOptions};
use gentle_core::field::{FieldSpec, Workflow, DEFAULT_CHARACTERISTIC};
use gentle_core::potential::{potential_from_decomposition, potential_from_saturated_cycles, verify_jacobian_equals, Potential};
use gentle_core::repr::Oracle;
use gentle_core::suite::{angulation_suite, blocks_suite, calculus_suite, parity_suite};
use gentle_core::surface::{is_angulation, parse_angulation, quiver_from_angulation, verify_angulation_properties, Model};
use gentle_core::{
    classify, fixtures, parse_bound_quiver, with_field, write_bound_quiver, BoundQuiver, Execution, StringAlgebra,
};

use report::{
    AlgebraSummary, AngulationSummary, BlockCounts, BlocksSummary, Dimensions, JacobianEntry, Options, PotentialSummary, Report,
};

#[derive(Parser, Debug)]
#[command(
    name = "gentle",
    version,
    about = "Gentle and string algebras: homological invariants, CM modules, blocks and angulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Angulation parameter; CM modules are compared with fixed points of Omega^(m+1) tau.
    #[arg(long, global = true, default_value_t = 1)]
    m: usize,
    /// Field characteristic (0 or a supported prime). Repeat for `jacobian` and `blocks --potential`.
    #[arg(long = "char", global = true)]
    chars: Vec<u64>,
    /// Syzygy cutoff for dimension computations [default: 2 dim of the algebra].
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    /// Longest strings enumerated for fixed points and CM sets.
    #[arg(long, global = true, default_value_t = 8)]
    max_letters: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random combinations tried per isomorphism test.
    #[arg(long, global = true, default_value_t = 8)]
    trials: usize,
    #[arg(long, global = true)]
    json: bool,
    /// Write the bound quiver of an angulation to this path.
    #[arg(long, global = true)]
    emit_bq: Option<PathBuf>,
    /// Disable data-parallel evaluation.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classification, Gorenstein and global dimension, saturated cycles.
    Analyze { input: String },
    /// CM modules and the fixed points of Omega^(m+1) tau.
    Cm { input: String },
    /// Block decomposition, optionally with Jacobian verification.
    Blocks {
        input: String,
        #[arg(long)]
        potential: bool,
    },
    /// Compare the Jacobian ideal of a potential with the relations.
    Jacobian {
        input: String,
        /// Potential as `term <coeff> <arrow> ...` lines [default: from the blocks].
        #[arg(long)]
        potential_file: Option<PathBuf>,
    },
    /// Build the bound quiver of a disk or annulus angulation.
    FromAngulation { input: String },
    /// Run a property battery over seeded instances.
    Suite {
        #[arg(long, value_enum)]
        suite: SuiteName,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        p: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteName {
    Blocks,
    Calculus,
    Parity,
    Disk,
    Annulus,
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read_input(input: &str) -> Result<String, InputError> {
    std::fs::read_to_string(input).map_err(|e| InputError(format!("{input}: {e}")))
}

/// A `.bq` file, or the name of a bundled fixture.
fn load_bound_quiver(input: &str, report: &mut Report) -> Result<BoundQuiver, InputError> {
    if !Path::new(input).exists() {
        if let Some(bq) = fixtures::by_name(input) {
            return Ok(bq);
        }
    }
    let parsed = parse_bound_quiver(&read_input(input)?).map_err(|e| InputError(format!("{input}: {e}")))?;
    report.warnings.extend(parsed.warnings);
    Ok(parsed.bound_quiver)
}

fn summarize(bq: &BoundQuiver) -> AlgebraSummary {
    AlgebraSummary {
        name: bq.name.clone(),
        vertices: bq.vertex_count(),
        arrows: bq.arrow_count(),
        relations: bq.relations().len(),
        dimension: bq.dimension().ok(),
    }
}

fn single_char(cli: &Cli) -> Result<u64, InputError> {
    match cli.chars.as_slice() {
        [] => Ok(DEFAULT_CHARACTERISTIC),
        [c] => Ok(*c),
        _ => Err(InputError("this command takes a single --char".into())),
    }
}

fn options(cli: &Cli, char: u64, cutoff: Option<usize>) -> Options {
    Options {
        m: cli.m,
        char,
        field: if char == 0 { "Q".into() } else { format!("F_{char}") },
        cutoff,
        max_letters: cli.max_letters,
        seed: cli.seed,
        trials: cli.trials,
        execution: if cli.sequential { "sequential".into() } else { "parallel".into() },
    }
}

fn exec(cli: &Cli) -> Execution {
    if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn default_cutoff(bq: &BoundQuiver) -> usize {
    2 * bq.dimension().unwrap_or(0)
}

fn analyze(cli: &Cli, input: &str) -> Result<Report, InputError> {
    let char = single_char(cli)?;
    let spec = FieldSpec::new(char, Workflow::Analysis)?;
    let mut report = Report::new("analyze", Some(input.to_string()), options(cli, char, None));
    let bq = load_bound_quiver(input, &mut report)?;
    let cutoff = cli.cutoff.unwrap_or_else(|| default_cutoff(&bq));
    report.options.cutoff = Some(cutoff);
    report.algebra = Some(summarize(&bq));
    let class = classify(&bq);
    report.saturated_cycles = Some(saturated_cycles(&bq).iter().map(|c| c.display(&bq)).collect());
    let combinatorial = if class.is_gentle { Some(critical_paths(&bq)?.n_lambda) } else { None };
    report.classification = Some(class);
    let (gorenstein, global) = with_field!(spec, F => {
        let o = Oracle::<F>::new(bq.clone())?.with_trials(cli.trials, cli.seed);
        (o.gorenstein_dimension(cutoff)?, o.global_dimension(cutoff)?)
    });
    report.dimensions = Some(Dimensions { gorenstein, gorenstein_combinatorial: combinatorial, global });
    Ok(report)
}

fn cm(cli: &Cli, input: &str) -> Result<Report, InputError> {
    let char = single_char(cli)?;
    let spec = FieldSpec::new(char, Workflow::Analysis)?;
    let mut report = Report::new("cm", Some(input.to_string()), options(cli, char, None));
    let bq = load_bound_quiver(input, &mut report)?;
    let cutoff = cli.cutoff.unwrap_or_else(|| default_cutoff(&bq));
    report.options.cutoff = Some(cutoff);
    report.algebra = Some(summarize(&bq));
    let alg = StringAlgebra::new(bq.clone())?;
    let opts = CmOptions { m: cli.m, max_letters: cli.max_letters, cutoff, fixed_points: true, exec: exec(cli) };
    let cm = with_field!(spec, F => {
        let o = Oracle::<F>::new(bq.clone())?.with_trials(cli.trials, cli.seed);
        cm_report(&o, &alg, opts)?
    });
    report.verify("fixed points of Omega^(m+1) tau equal the CM set", cm.fixed_points_equal_cm.unwrap_or(false));
    report.verify("Omega^(m+1) tau fixes every CM module", cm.formula.iter().all(|f| f.holds));
    report.cm = Some(cm);
    Ok(report)
}

fn jacobian_entries(bq: &BoundQuiver, w: &Potential, chars: &[u64]) -> Vec<JacobianEntry> {
    chars
        .iter()
        .map(|&c| JacobianEntry {
            verdict: verify_jacobian_equals(bq, w, c),
            field_error: FieldSpec::new(c, Workflow::Jacobian).err().map(|e| e.to_string()),
        })
        .collect()
}

fn blocks(cli: &Cli, input: &str, potential: bool, potential_file: Option<&Path>, command: &str) -> Result<Report, InputError> {
    let chars = if cli.chars.is_empty() { vec![0] } else { cli.chars.clone() };
    let mut report = Report::new(command, Some(input.to_string()), options(cli, chars[0], None));
    let bq = load_bound_quiver(input, &mut report)?;
    report.algebra = Some(summarize(&bq));
    let q = bq.quiver();
    let dec = decompose_blocks(&bq);
    let summary = match &dec {
        Ok(d) => BlocksSummary {
            decomposable: true,
            counts: Some(BlockCounts {
                one: d.count(BlockKind::I),
                two: d.count(BlockKind::II),
                loops: d.count(BlockKind::Loop),
            }),
            decomposition: Some(d.serialize(q).lines().map(str::to_string).collect()),
            witness: None,
        },
        Err(w) => BlocksSummary { decomposable: false, counts: None, decomposition: None, witness: Some(w.clone()) },
    };
    if command == "blocks" {
        report.verify("gentle-block decomposition", summary.decomposable);
    }
    report.blocks = Some(summary);
    if potential || potential_file.is_some() {
        let (source, w) = match (potential_file, &dec) {
            (Some(path), _) => ("file".to_string(), Potential::parse(q, &read_input(&path.to_string_lossy())?)?),
            (None, Ok(d)) => ("blocks".to_string(), potential_from_decomposition(q, d)),
            (None, Err(_)) => ("saturated-cycles".to_string(), potential_from_saturated_cycles(&bq)),
        };
        report.potential = Some(PotentialSummary { source, terms: w.serialize(q).lines().map(str::to_string).collect() });
        let entries = jacobian_entries(&bq, &w, &chars);
        for e in &entries {
            report.verify(&format!("Jacobian ideal equals I over char {}", e.verdict.characteristic), e.verdict.holds);
        }
        report.jacobian = Some(entries);
    }
    Ok(report)
}

fn from_angulation(cli: &Cli, input: &str) -> Result<Report, InputError> {
    let ang = parse_angulation(&read_input(input)?).map_err(|e| InputError(format!("{input}: {e}")))?;
    let check = is_angulation(&ang)?;
    if !check.ok {
        return Err(InputError(format!("{input}: not an angulation: {}", check.reason.unwrap_or_default())));
    }
    let bq = quiver_from_angulation(&ang)?;
    let mut report = Report::new("from-angulation", Some(input.to_string()), options(cli, DEFAULT_CHARACTERISTIC, None));
    report.options.m = ang.model.m();
    report.options.cutoff = Some(default_cutoff(&bq));
    let properties = verify_angulation_properties(&ang, &bq);
    report.verify("angulation algebra properties", properties.all());
    let text = write_bound_quiver(&bq);
    if let Some(path) = &cli.emit_bq {
        std::fs::write(path, &text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }
    report.algebra = Some(summarize(&bq));
    report.angulation = Some(AngulationSummary {
        model: ang.model,
        arcs: ang.arcs.iter().map(|a| a.describe()).collect(),
        faces: check.faces.len(),
        properties,
        bound_quiver: text,
    });
    Ok(report)
}

fn suite(cli: &Cli, name: SuiteName, count: usize, n: usize, p: usize, q: usize) -> Result<Report, InputError> {
    let mut report = Report::new("suite", None, options(cli, DEFAULT_CHARACTERISTIC, None));
    let e = exec(cli);
    let m = cli.m;
    let result = match name {
        SuiteName::Blocks => blocks_suite(count, cli.seed, e),
        SuiteName::Calculus => calculus_suite(count, cli.seed, e),
        SuiteName::Parity => parity_suite(count, cli.seed, e),
        SuiteName::Disk => {
            let model = Model::Disk { n, m };
            model.validate()?;
            angulation_suite(model, count, cli.seed, e)
        }
        SuiteName::Annulus => {
            let model = Model::Annulus { p, q, m };
            model.validate()?;
            angulation_suite(model, count, cli.seed, e)
        }
    };
    report.verify(&format!("{} suite", result.suite), result.ok());
    report.suite = Some(result);
    Ok(report)
}

fn run(cli: &Cli) -> Result<Report, InputError> {
    match &cli.command {
        Command::Analyze { input } => analyze(cli, input),
        Command::Cm { input } => cm(cli, input),
        Command::Blocks { input, potential } => blocks(cli, input, *potential, None, "blocks"),
        Command::Jacobian { input, potential_file } => blocks(cli, input, true, potential_file.as_deref(), "jacobian"),
        Command::FromAngulation { input } => from_angulation(cli, input),
        Command::Suite { suite: name, count, n, p, q } => suite(cli, *name, *count, *n, *p, *q),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.m == 0 {
        eprintln!("error: --m must be at least 1");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(report) => {
            let text = if cli.json { serde_json::to_string_pretty(&report).expect("report serializes") } else { report.prose() };
            // a closed pipe is not an error of the computation
            let _ = writeln!(std::io::stdout(), "{text}");
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
