//! The `mvgroup` command line.
//!
//! Exit codes: 0 when everything passes, 1 on a failed verdict, 2 on usage
//! or config errors, 3 when a node budget is exhausted.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use mvgroup_core::cayley::{ball, compare_generating_sets, power_table};
use mvgroup_core::dynamics::{bounds_check, classify_growth, iterate_dynamic};
use mvgroup_core::mvalued::{check_axioms, MultiValuedGroup};
use mvgroup_core::{Budget, Element, Error as CoreError};

use crate::config::{parse_config, ConfigError, Instance};
use crate::output;
use crate::suites::{bfs_sample, run_suite, Suite, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

const DEFAULT_SAMPLE: usize = 11;
const DEFAULT_CAP: usize = 64;
const DEFAULT_SEED: u64 = 43;

#[derive(Debug, Parser)]
#[command(name = "mvgroup", version, about = "Growth of n-valued groups and their dynamics")]
struct Cli {
    /// Node budget for enumerations (overrides the config default).
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check associativity, unit and inverse axioms on a sample.
    Axioms {
        #[arg(short, long)]
        config: PathBuf,
        /// Sample size, taken in breadth-first order from the unit. Finite
        /// carriers are checked whole when omitted.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Ball and sphere sizes around a center.
    Growth {
        #[arg(short, long)]
        config: PathBuf,
        #[arg(long)]
        center: String,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        emit_elements: bool,
    },
    /// Iterate the dynamic y -> y * z.
    Dynamics {
        #[arg(short, long)]
        config: PathBuf,
        #[arg(long)]
        z: String,
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        steps: Option<usize>,
        /// Add the monoid sandwich bounds (coset groups only).
        #[arg(long)]
        bounds: bool,
        /// Report a heuristic growth classification.
        #[arg(long)]
        classify: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        emit_elements: bool,
    },
    /// Cumulative supports of the powers of an element.
    Powers {
        #[arg(short, long)]
        config: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        emit_elements: bool,
    },
    /// Compare growth for the configured generators against a second set.
    Compare {
        #[arg(short, long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        gens2: Vec<String>,
        #[arg(long)]
        center: Option<String>,
        #[arg(long)]
        center2: Option<String>,
        #[arg(long)]
        radius: Option<usize>,
        /// Search radius for the cross-lengths.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run a verification suite.
    Verify {
        #[arg(short, long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &ConfigError) -> i32 {
    match e {
        ConfigError::Core(CoreError::BudgetExceeded { .. } | CoreError::ClosureBudgetExceeded { .. }) => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn load(path: &PathBuf, budget: Option<usize>) -> Result<(Instance, Budget), ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Validation {
        path: path.display().to_string(),
        message: format!("cannot read config: {e}"),
    })?;
    let config = parse_config(&text)?;
    let budget = Budget(budget.unwrap_or(config.defaults.budget));
    let instance = config.build(budget)?;
    Ok((instance, budget))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), ConfigError> {
    out.write_all(text.as_bytes()).map_err(|e| ConfigError::Validation { path: "stdout".into(), message: e.to_string() })
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), ConfigError> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    emit(out, &format!("{text}\n"))
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, ConfigError> {
    match cli.command {
        Command::Axioms { config, sample } => {
            let (instance, budget) = load(&config, cli.budget)?;
            let group = &instance.group;
            let elements = match (sample, group.carrier(budget)?) {
                (None, Some(carrier)) => carrier,
                (n, _) => bfs_sample(&instance, n.unwrap_or(DEFAULT_SAMPLE), budget)?,
            };
            let report = check_axioms(group, &elements)?;
            let render = |x: &Element| instance.render(x);
            let size = elements.len();
            let mut text = String::new();
            let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
            text += &format!("{} axioms associativity sample={size} triples={}", verdict(report.associativity_holds()), size.pow(3));
            if let Some(w) = &report.associativity_witness {
                text += &format!(
                    " failures={} witness=({}, {}, {}) left={} right={}",
                    report.associativity_failures,
                    render(&w.x),
                    render(&w.y),
                    render(&w.z),
                    output::render_multiset(&w.left, &render),
                    output::render_multiset(&w.right, &render)
                );
            }
            text += &format!("\n{} axioms unit sample={size}", verdict(report.unit_holds()));
            if let Some(x) = &report.unit_witness {
                let product = group.mul(&group.unit(), x)?;
                text += &format!(
                    " failures={} witness={} e*x={}",
                    report.unit_failures,
                    render(x),
                    output::render_multiset(&product, &render)
                );
            }
            text += &format!("\n{} axioms inverse sample={size}", verdict(report.inverse_holds()));
            if let Some(x) = &report.inverse_witness {
                text += &format!(" failures={} witness={}", report.inverse_failures, render(x));
            }
            text.push('\n');
            emit(out, &text)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Growth { config, center, radius, format, emit_elements } => {
            let (instance, budget) = load(&config, cli.budget)?;
            let center = instance.element(&center, "--center")?;
            let radius = radius.unwrap_or(instance.config.defaults.radius);
            let table = ball(&instance.group, &instance.x_generators, &center, radius, budget)?;
            match format {
                Format::Csv => emit(out, &output::growth_csv(&table))?,
                Format::Json => emit_json(out, &output::growth_json(&table, &|x| instance.render(x), emit_elements))?,
            }
            Ok(EXIT_OK)
        }
        Command::Dynamics { config, z, y, steps, bounds, classify, format, emit_elements } => {
            let (instance, budget) = load(&config, cli.budget)?;
            let steps = steps.unwrap_or(instance.config.defaults.radius);
            let z_elem = instance.element(&z, "--z")?;
            let y_elem = match &y {
                Some(y) => instance.element(y, "--y")?,
                None => instance.group.unit(),
            };
            let report = if bounds {
                let coset = instance.coset().ok_or_else(|| ConfigError::Validation {
                    path: "--bounds".into(),
                    message: "bounds need a coset group".into(),
                })?;
                let g = instance.lift(&z, "--z")?;
                Some(bounds_check(coset, &g, &y_elem, steps, budget)?)
            } else {
                None
            };
            let table = match &report {
                Some(r) => r.dynamics.clone(),
                None => iterate_dynamic(&instance.group, &z_elem, &y_elem, steps, budget)?,
            };
            let classification = if classify { Some(classify_growth(&table.xi())?) } else { None };
            match format {
                Format::Csv => {
                    let csv = match &report {
                        Some(r) => output::bounds_csv(r),
                        None => output::dynamics_csv(&table),
                    };
                    emit(out, &csv)?;
                    if let Some(c) = &classification {
                        let _ = writeln!(err, "{}", output::classification_line(c));
                    }
                }
                Format::Json => emit_json(
                    out,
                    &output::dynamics_json(&table, report.as_ref(), classification.as_ref(), &|x| instance.render(x), emit_elements),
                )?,
            }
            Ok(if report.is_none_or(|r| r.passed()) { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Powers { config, x, radius, format, emit_elements } => {
            let (instance, budget) = load(&config, cli.budget)?;
            let x = instance.element(&x, "--x")?;
            let radius = radius.unwrap_or(instance.config.defaults.radius);
            let table = power_table(&instance.group, &x, radius, budget)?;
            match format {
                Format::Csv => emit(out, &output::powers_csv(&table))?,
                Format::Json => emit_json(out, &output::powers_json(&table, &|x| instance.render(x), emit_elements))?,
            }
            Ok(EXIT_OK)
        }
        Command::Compare { config, gens2, center, center2, radius, cap, format } => {
            let (instance, budget) = load(&config, cli.budget)?;
            let radius = radius.unwrap_or(instance.config.defaults.radius);
            let s2 = gens2
                .iter()
                .enumerate()
                .map(|(i, w)| instance.element(w.trim(), &format!("--gens2[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let point = |text: &Option<String>, path: &str| match text {
                Some(t) => instance.element(t, path),
                None => Ok(instance.group.unit()),
            };
            let (y, y2) = (point(&center, "--center")?, point(&center2, "--center2")?);
            let report =
                compare_generating_sets(&instance.group, &instance.x_generators, &s2, &y, &y2, radius, cap, budget)?;
            match format {
                Format::Csv => {
                    emit(out, &output::comparison_csv(&report))?;
                    let _ = writeln!(err, "constant l={}", report.constant);
                }
                Format::Json => emit_json(out, &output::comparison_json(&report))?,
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Verify { config, suite, radius, seed } => {
            let (instance, budget) = load(&config, cli.budget)?;
            let radius = radius.unwrap_or(instance.config.defaults.radius);
            let report = run_suite(&instance, suite, &SuiteOptions { radius, budget, seed })?;
            emit(out, &report.to_string())?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
    }
}
