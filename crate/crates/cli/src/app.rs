//! Flag definitions and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{self, Grid, OperatorKind, OperatorParams, StateSource, Suite};
use crate::format::{to_json, StateInput};
use crate::spec::{parse_coefficients, parse_element_list, SystemSpec};
use crate::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "galois",
    version,
    about = "Tables, operators and checks for quantum systems with positions in GF(p^l)",
    after_help = "Exit status: 0 success, 1 usage error, 2 domain error or failed invariant, \
                  3 quadrature did not converge."
)]
pub struct Cli {
    /// Field description, e.g. p=3,l=2,poly=2,1,h=1,0. `poly` lists the lower
    /// coefficients c_0..c_{l-1} of the monic polynomial; `h` defaults to 1.
    #[arg(long, global = true, value_name = "p=..,l=..,poly=..,h=..")]
    pub spec: Option<String>,

    /// Output file, or - for standard output.
    #[arg(long, global = true, value_name = "PATH|-", default_value = "-")]
    pub out: String,

    /// Output encoding. Defaults to csv for `analytic`, json otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Tolerance for matrix and state comparisons in `invariants`.
    #[arg(long, global = true, default_value = "1e-10")]
    pub tol: f64,

    /// Gauss-Legendre radial and midpoint angular nodes per sheet for
    /// quadrature (doubled once to check convergence).
    #[arg(long, global = true, default_value_t = 64, value_name = "N")]
    pub quad_nodes: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Frobenius matrix, traces, Gram matrix and its inverse, dual basis and
    /// every element with its conjugates, traces and dual components.
    FieldTable,
    /// Monic irreducible polynomials of degree l and 1 over Z_p.
    Irreducibles {
        /// Characteristic; taken from --spec when omitted.
        #[arg(long)]
        p: Option<u32>,
        /// Extension degree; taken from --spec when omitted.
        #[arg(long = "l", alias = "ell")]
        ell: Option<usize>,
    },
    /// Matrix of one operator in the position basis.
    Operator {
        #[arg(long, value_enum)]
        which: OperatorKind,
        /// Components of alpha for Z and D.
        #[arg(long, default_value = "0", value_name = "COEFFS")]
        alpha: String,
        /// Components of beta for X and D.
        #[arg(long, default_value = "0", value_name = "COEFFS")]
        beta: String,
        /// Copy subspace for S, R, r, g and Fsub.
        #[arg(long, default_value_t = 0)]
        kappa: usize,
        /// Restrict G to one orbit.
        #[arg(long)]
        orbit: Option<usize>,
        #[command(flatten)]
        reps: Reps,
    },
    /// Orbits of the Frobenius map, minimal polynomials and copy subspaces.
    FrobeniusDecompose {
        /// Also write G and every G_i.
        #[arg(long)]
        emit_operators: bool,
        #[command(flatten)]
        reps: Reps,
    },
    /// Runs property suites and reports the largest residual of each.
    Invariants {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Applies S^N inside one copy subspace.
    Evolve {
        #[arg(long, default_value_t = 0)]
        kappa: usize,
        /// Number of steps N.
        #[arg(long, default_value_t = 1)]
        steps: u64,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        reps: Reps,
    },
    /// Samples the analytic representation of a state in H_A on every sheet.
    Analytic {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        reps: Reps,
        #[arg(long, default_value_t = 8)]
        radii: usize,
        /// Angles per sheet.
        #[arg(long, default_value_t = 8)]
        angles: usize,
        #[arg(long, default_value_t = 2.0)]
        r_max: f64,
        /// Write the jumps across the cuts instead of values.
        #[arg(long)]
        discontinuity: bool,
    },
}

#[derive(Args, Debug)]
pub struct Reps {
    /// Orbit representatives m(0);m(1);... in the order that fixes the copy
    /// subspace bases. Defaults to the smallest element of each orbit.
    #[arg(long, value_name = "COEFFS;COEFFS;...")]
    pub reps: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct StateArgs {
    /// Start from the position eigenstate with these components.
    #[arg(long, value_name = "COEFFS")]
    pub label: Option<String>,
    /// JSON file {"dim": d, "amplitudes": [[re, im], ...]}, or - for stdin.
    #[arg(long, value_name = "PATH")]
    pub state: Option<PathBuf>,
}

/// A rendered document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    /// Set when an invariant suite failed; the text is still written.
    pub failure: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            failure: None,
        }
    }
}

fn read_input(path: &std::path::Path) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(io)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

impl Cli {
    fn spec(&self) -> Result<SystemSpec, CliError> {
        let text = self
            .spec
            .as_deref()
            .ok_or_else(|| CliError::Usage("--spec is required for this command".into()))?;
        text.parse().map_err(|err| CliError::Parse {
            what: "--spec",
            err,
        })
    }

    fn format(
        &self,
        default: Format,
        allowed: &[Format],
        command: &str,
    ) -> Result<Format, CliError> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(CliError::Usage(
                format!("{command} does not support --format {f:?}").to_lowercase(),
            ))
        }
    }
}

impl Reps {
    fn parse(&self) -> Result<Option<Vec<Vec<u32>>>, CliError> {
        self.reps
            .as_deref()
            .map(parse_element_list)
            .transpose()
            .map_err(|err| CliError::Parse {
                what: "--reps",
                err,
            })
    }
}

impl StateArgs {
    fn source(&self) -> Result<StateSource, CliError> {
        match (&self.label, &self.state) {
            (Some(label), _) => parse_coefficients(label)
                .map(StateSource::Label)
                .map_err(|err| CliError::Parse {
                    what: "--label",
                    err,
                }),
            (None, Some(path)) => {
                let text = read_input(path)?;
                Ok(StateSource::Vector(StateInput::parse(
                    &path.display().to_string(),
                    &text,
                )?))
            }
            (None, None) => Err(CliError::Usage(
                "one of --label or --state is required".into(),
            )),
        }
    }
}

fn coefficients(what: &'static str, text: &str) -> Result<Vec<u32>, CliError> {
    parse_coefficients(text).map_err(|err| CliError::Parse { what, err })
}

/// Runs the selected command and renders its output.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {}",
            cli.tol
        )));
    }
    if cli.quad_nodes == 0 {
        return Err(CliError::Usage("--quad-nodes must be at least 1".into()));
    }
    const JSON: &[Format] = &[Format::Json];
    const BOTH: &[Format] = &[Format::Json, Format::Csv];
    let render = |f: Format, table: crate::format::Table| match f {
        Format::Json => table.to_json(),
        Format::Csv => table.to_csv(),
    };

    let text = match &cli.command {
        Command::FieldTable => {
            cli.format(Format::Json, JSON, "field-table")?;
            to_json(&commands::field_table(&cli.spec()?)?)
        }
        Command::Irreducibles { p, ell } => {
            let f = cli.format(Format::Json, BOTH, "irreducibles")?;
            let (p, ell) = match (p, ell, cli.spec.is_some()) {
                (Some(p), Some(l), _) => (*p, *l),
                (p_flag, l_flag, true) => {
                    let spec = cli.spec()?;
                    (p_flag.unwrap_or(spec.p), l_flag.unwrap_or(spec.ell))
                }
                _ => {
                    return Err(CliError::Usage(
                        "irreducibles needs --p and --l, or --spec".into(),
                    ))
                }
            };
            let doc = commands::irreducibles(p, ell)?;
            match f {
                Format::Json => to_json(&doc),
                Format::Csv => doc.to_table().to_csv(),
            }
        }
        Command::Operator {
            which,
            alpha,
            beta,
            kappa,
            orbit,
            reps,
        } => {
            let f = cli.format(Format::Json, BOTH, "operator")?;
            let params = OperatorParams {
                alpha: coefficients("--alpha", alpha)?,
                beta: coefficients("--beta", beta)?,
                kappa: *kappa,
                orbit: *orbit,
                reps: reps.parse()?,
            };
            let doc = commands::operator(&cli.spec()?, *which, &params)?;
            match f {
                Format::Json => to_json(&doc),
                Format::Csv => doc.to_table().to_csv(),
            }
        }
        Command::FrobeniusDecompose {
            emit_operators,
            reps,
        } => {
            cli.format(Format::Json, JSON, "frobenius-decompose")?;
            let reps = reps.parse()?;
            to_json(&commands::frobenius(
                &cli.spec()?,
                reps.as_deref(),
                *emit_operators,
            )?)
        }
        Command::Invariants { suite } => {
            let f = cli.format(Format::Json, BOTH, "invariants")?;
            let report = commands::invariants(&cli.spec()?, *suite, cli.tol, cli.quad_nodes)?;
            let text = match f {
                Format::Json => to_json(&report),
                Format::Csv => report.to_table().to_csv(),
            };
            let failed = report.failed_suites();
            return Ok(Output {
                text,
                failure: (!failed.is_empty()).then(|| failed.join(", ")),
            });
        }
        Command::Evolve {
            kappa,
            steps,
            state,
            reps,
        } => {
            let f = cli.format(Format::Json, BOTH, "evolve")?;
            let reps = reps.parse()?;
            let doc = commands::evolve(
                &cli.spec()?,
                reps.as_deref(),
                *kappa,
                &state.source()?,
                *steps,
            )?;
            match f {
                Format::Json => to_json(&doc),
                Format::Csv => doc.to_table().to_csv(),
            }
        }
        Command::Analytic {
            state,
            reps,
            radii,
            angles,
            r_max,
            discontinuity,
        } => {
            let f = cli.format(Format::Csv, BOTH, "analytic")?;
            if *radii == 0 || *angles == 0 || !(r_max.is_finite() && *r_max > 0.0) {
                return Err(CliError::Usage(
                    "--radii and --angles must be positive and --r-max positive and finite".into(),
                ));
            }
            let grid = Grid {
                radii: *radii,
                angles: *angles,
                r_max: *r_max,
            };
            let reps = reps.parse()?;
            let spec = cli.spec()?;
            let source = state.source()?;
            let table = if *discontinuity {
                commands::discontinuity(&spec, reps.as_deref(), &source, &grid)?
            } else {
                commands::analytic(&spec, reps.as_deref(), &source, &grid)?
            };
            render(f, table)
        }
    };
    Ok(Output::ok(text))
}
