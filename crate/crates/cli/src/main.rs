//! `polysparse`: exact polyhedral computations and seeded experiments.
//!
//! Exit codes: 0 success, 1 a named check failed, 2 input error,
//! 3 resource refusal.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use polysparse::error::CliError;
use polysparse::experiments::dense_budget::{run_dense_budget, DenseBudgetParams};
use polysparse::experiments::directional::{run_directional, DirectionalParams};
use polysparse::experiments::lp_relax::run_lp_relax;
use polysparse::experiments::rotation::{run_rotation, RotationParams};
use polysparse::experiments::verify::{run_verify, VerifyParams};
use polysparse::formats::{format_hpoly, parse_rational_list, read_hpoly, write_output};
use polysparse::report::{ExperimentReport, OutputFormat};

use polysparse_core::{
    budgeted_closure, format_rational, gap, hausdorff_sq, make_qn, make_simplex_family,
    make_symmetric_closure, make_symmetric_family, sparse_closure, symmetrize, to_f64, CutSet,
    QVector,
};

#[derive(Parser)]
#[command(
    name = "polysparse",
    version,
    about = "Exact sparse outer approximations of polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a built-in polytope family as an H-polytope file
    Family {
        #[arg(long, value_enum)]
        name: FamilyName,
        /// Ambient dimension
        #[arg(short = 'n', long)]
        dim: usize,
        /// Budget parameter, required by every family except qn
        #[arg(short = 't', long)]
        budget: Option<usize>,
        /// Sparsity parameter, required by symmetric-closure
        #[arg(short = 'k', long)]
        sparsity: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the k-sparse closure of an H-polytope file
    Closure {
        #[arg(long)]
        input: PathBuf,
        #[arg(short = 'k', long)]
        sparsity: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetrize an H-polytope contained in the nonnegative orthant
    Symmetrize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Intersect the k-sparse closure with a file of certified cuts
    BudgetedClosure {
        #[arg(long)]
        input: PathBuf,
        #[arg(short = 'k', long)]
        sparsity: usize,
        /// Cuts in H-polytope format; each is LP-certified valid for the input
        #[arg(long)]
        cuts: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact squared Hausdorff distance between nested H-polytopes
    Hausdorff {
        #[arg(long)]
        inner: PathBuf,
        #[arg(long)]
        outer: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Support gap of a nested pair in one direction
    Gap {
        #[arg(long)]
        inner: PathBuf,
        #[arg(long)]
        outer: PathBuf,
        /// Direction as space-separated rationals, e.g. "1 -2/3 0"
        #[arg(long)]
        direction: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded experiment and emit a structured report
    Experiment {
        #[command(subcommand)]
        which: ExperimentCommand,
    },
    /// Run the verification suite of named identity checks
    Verify {
        /// Largest ambient dimension to cover
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corrupt one comparison to confirm the suite can fail
        #[arg(long, hide = true)]
        inject_bug: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    /// Budgeted unit box
    Simplex,
    /// Unit box with all majority-subset budget cuts
    Qn,
    /// Symmetrized budgeted box
    Symmetric,
    /// Display form of the k-sparse closure of the symmetric family
    SymmetricClosure,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Jsonl,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Jsonl => OutputFormat::Jsonl,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Distance of the half-budget family to its relaxed sparse closure
    LpRelax {
        #[arg(short = 'n', long)]
        dim: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Survival of scaled sign vectors against many dense cuts
    DenseBudget {
        #[arg(short = 'n', long)]
        dim: usize,
        #[arg(short = 'k', long)]
        sparsity: usize,
        /// Number of generated cuts
        #[arg(short = 'd', long, default_value_t = 50)]
        cuts: usize,
        /// Replace the generator with cuts from an H-polytope file
        #[arg(long)]
        cuts_file: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Distances of randomly rotated symmetric bodies to their closures
    Rotation {
        #[arg(short = 'n', long)]
        dim: usize,
        #[arg(short = 't', long)]
        budget: usize,
        #[arg(short = 'k', long)]
        sparsity: usize,
        #[arg(long, default_value_t = 20)]
        rotations: usize,
        /// Bound on numerators and denominators of skew entries
        #[arg(long, default_value_t = 10)]
        skew_bound: i64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Gaussian-direction gap frequencies for the tenth-budget family
    Directional {
        #[arg(short = 'n', long)]
        dim: usize,
        #[arg(short = 't', long)]
        budget: usize,
        #[arg(short = 'k', long)]
        sparsity: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Family {
            name,
            dim,
            budget,
            sparsity,
            out,
        } => {
            let poly = build_family(name, dim, budget, sparsity)?;
            write_output(out.as_deref(), &format_hpoly(&poly))?;
            Ok(0)
        }
        Command::Closure {
            input,
            sparsity,
            out,
        } => {
            let poly = read_hpoly(&input)?;
            let closure = sparse_closure(&poly, sparsity)?;
            write_output(out.as_deref(), &format_hpoly(&closure))?;
            Ok(0)
        }
        Command::Symmetrize { input, out } => {
            let poly = read_hpoly(&input)?;
            let sym = symmetrize(&poly)?;
            write_output(out.as_deref(), &format_hpoly(&sym))?;
            Ok(0)
        }
        Command::BudgetedClosure {
            input,
            sparsity,
            cuts,
            out,
        } => {
            let poly = read_hpoly(&input)?;
            let cut_rows = read_hpoly(&cuts)?;
            let cut_set = CutSet::certify(&poly, cut_rows.into_ineqs(), "cli")?;
            let result = budgeted_closure(&poly, sparsity, &cut_set)?;
            write_output(out.as_deref(), &format_hpoly(&result))?;
            Ok(0)
        }
        Command::Hausdorff { inner, outer, out } => {
            let inner_poly = read_hpoly(&inner)?;
            let outer_poly = read_hpoly(&outer)?;
            let dist = hausdorff_sq(&inner_poly, &outer_poly)?;
            let doc = json!({
                "sq_dist": format_rational(&dist.sq_dist),
                "sq_dist_float": to_f64(&dist.sq_dist),
                "witness_outer": rational_strings(&dist.witness_outer),
                "witness_inner": rational_strings(&dist.witness_inner),
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("distance serializes");
            text.push('\n');
            write_output(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Gap {
            inner,
            outer,
            direction,
            out,
        } => {
            let inner_poly = read_hpoly(&inner)?;
            let outer_poly = read_hpoly(&outer)?;
            let c = QVector(parse_rational_list(&direction)?);
            let record = gap(&inner_poly, &outer_poly, &c)?;
            let doc = json!({
                "direction": rational_strings(&record.direction),
                "support_outer": format_rational(&record.support_outer),
                "support_inner": format_rational(&record.support_inner),
                "gap": format_rational(&record.gap),
                "gap_float": to_f64(&record.gap),
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("gap serializes");
            text.push('\n');
            write_output(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Experiment { which } => {
            let (report, out, format) = run_experiment(which)?;
            emit_report(report, out, format)
        }
        Command::Verify {
            max_n,
            samples,
            seed,
            inject_bug,
            out,
            format,
        } => {
            let report = run_verify(&VerifyParams {
                max_n,
                samples,
                seed,
                inject_bug,
            })?;
            emit_report(report, out, format)
        }
    }
}

fn run_experiment(
    which: ExperimentCommand,
) -> Result<(ExperimentReport, Option<PathBuf>, FormatArg), CliError> {
    match which {
        ExperimentCommand::LpRelax { dim, common } => {
            let report = run_lp_relax(dim)?;
            Ok((report, common.out, common.format))
        }
        ExperimentCommand::DenseBudget {
            dim,
            sparsity,
            cuts,
            cuts_file,
            common,
        } => {
            let report = run_dense_budget(&DenseBudgetParams {
                n: dim,
                k: sparsity,
                d: cuts,
                samples: common.samples,
                seed: common.seed,
                cuts_path: cuts_file,
            })?;
            Ok((report, common.out, common.format))
        }
        ExperimentCommand::Rotation {
            dim,
            budget,
            sparsity,
            rotations,
            skew_bound,
            common,
        } => {
            let report = run_rotation(&RotationParams {
                n: dim,
                t: budget,
                k: sparsity,
                rotations,
                seed: common.seed,
                skew_bound,
            })?;
            Ok((report, common.out, common.format))
        }
        ExperimentCommand::Directional {
            dim,
            budget,
            sparsity,
            common,
        } => {
            let report = run_directional(&DirectionalParams {
                n: dim,
                t: budget,
                k: sparsity,
                samples: common.samples,
                seed: common.seed,
            })?;
            Ok((report, common.out, common.format))
        }
    }
}

fn emit_report(
    report: ExperimentReport,
    out: Option<PathBuf>,
    format: FormatArg,
) -> Result<u8, CliError> {
    for check in &report.checks {
        let verdict = if check.passed { "PASS" } else { "FAIL" };
        eprintln!("check {}: {verdict} ({})", check.name, check.detail);
    }
    write_output(out.as_deref(), &report.render(format.into()))?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn build_family(
    name: FamilyName,
    dim: usize,
    budget: Option<usize>,
    sparsity: Option<usize>,
) -> Result<polysparse_core::HPolytope, CliError> {
    let need_budget = || {
        budget.ok_or_else(|| CliError::Input("this family requires a budget, pass -t".into()))
    };
    match name {
        FamilyName::Simplex => {
            reject_sparsity(sparsity)?;
            Ok(make_simplex_family(need_budget()?, dim)?)
        }
        FamilyName::Qn => {
            reject_sparsity(sparsity)?;
            if let Some(t) = budget {
                if t != dim / 2 || !dim.is_multiple_of(2) {
                    return Err(CliError::Input(format!(
                        "qn fixes the budget at n/2; drop -t or pass {}",
                        dim / 2
                    )));
                }
            }
            Ok(make_qn(dim)?)
        }
        FamilyName::Symmetric => {
            reject_sparsity(sparsity)?;
            Ok(make_symmetric_family(need_budget()?, dim)?)
        }
        FamilyName::SymmetricClosure => {
            let k = sparsity
                .ok_or_else(|| CliError::Input("symmetric-closure requires a sparsity, pass -k".into()))?;
            Ok(make_symmetric_closure(need_budget()?, dim, k)?)
        }
    }
}

fn reject_sparsity(sparsity: Option<usize>) -> Result<(), CliError> {
    if sparsity.is_some() {
        return Err(CliError::Input(
            "only symmetric-closure takes a sparsity; drop -k".into(),
        ));
    }
    Ok(())
}

fn rational_strings(v: &QVector) -> Vec<String> {
    v.iter().map(format_rational).collect()
}
