//! Command-line front end: argument model, dispatch and error categories.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deltaritz::analysis::{
    convergence_table, critical_coupling, hellmann_feynman, ho_coupling_for_energy, ho_critical_coupling,
    ho_exact_levels, linear_grid, solve, sweep_ground_state, width_scan, DEFAULT_CRITICAL_TOL, DEFAULT_FD_STEP,
};
use deltaritz::report::{
    format_sig_f64, render_critical, render_hellmann, render_levels, render_roots, render_sweep, render_table,
    render_width_scan, Format, DEFAULT_SIGNIFICANT,
};
use deltaritz::{BasisSpec, Error, MonomialPotential, PrecisionContext, Preset};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Numerical(Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Numerical(_) => "numerical",
            CliError::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPotential(_) | Error::InvalidBasis(_) | Error::InvalidPrecision { .. } => {
                CliError::Parse(e.to_string())
            }
            other => CliError::Numerical(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SectorArg {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "deltaritz",
    version,
    about = "Variational spectra of polynomial oscillators with a point interaction at the origin"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// harmonic (½x², a=1), quartic (x⁴, a=2) or cubic (|x|³, a=2)
    #[arg(long, global = true, conflicts_with = "potential")]
    pub preset: Option<String>,
    /// Sum of monomials, e.g. "0.5*|x|^2 + 0.1*|x|^4"
    #[arg(long, global = true)]
    pub potential: Option<String>,
    /// Gaussian width a (default: 1 for harmonic and custom potentials, 2 for quartic and cubic)
    #[arg(long, global = true)]
    pub a: Option<f64>,
    /// Working precision in decimal digits
    #[arg(long, global = true, default_value_t = 50)]
    pub digits: u32,
    /// Significant digits printed
    #[arg(long, global = true, default_value_t = DEFAULT_SIGNIFICANT)]
    pub sig: usize,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lowest k roots for one basis
    Spectrum {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        g: f64,
        #[arg(long, default_value_t = 17)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, value_enum, default_value_t = SectorArg::Even)]
        sector: SectorArg,
        /// Comma-separated widths to scan instead of a single solve
        #[arg(long, value_delimiter = ',')]
        scan_a: Option<Vec<f64>>,
    },
    /// Convergence table for N = 2..nmax
    Table {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        g: f64,
        #[arg(long, default_value_t = 17)]
        nmax: usize,
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    /// Exact even levels of ½x² + gδ(x)
    Oracle {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        g: f64,
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// Print the coupling that puts the ground level at this energy instead
        #[arg(long, allow_negative_numbers = true)]
        energy: Option<f64>,
    },
    /// Coupling g₀ at which the ground root crosses zero
    Critical {
        #[arg(long, default_value_t = 17)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_CRITICAL_TOL)]
        tol: f64,
    },
    /// Ground root over a grid of g next to the large-coupling curve
    Sweep {
        #[arg(long, default_value_t = 17)]
        n: usize,
        #[arg(long, default_value_t = -3.0, allow_negative_numbers = true)]
        g_min: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        g_max: f64,
        #[arg(long, default_value_t = 13)]
        steps: usize,
    },
    /// Finite-difference slope of the ground root against |ψ(0)|²
    Hellmann {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        g: f64,
        #[arg(long, default_value_t = 11)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_FD_STEP)]
        h: f64,
    },
}

/// Fully resolved invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub potential: MonomialPotential,
    pub a: f64,
    pub digits: u32,
    pub sig: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CommandKind {
    Spectrum {
        g: f64,
        n: usize,
        k: usize,
        odd: bool,
        scan_a: Option<Vec<f64>>,
    },
    Table {
        g: f64,
        nmax: usize,
        k: usize,
    },
    Oracle {
        g: f64,
        k: usize,
        energy: Option<f64>,
    },
    Critical {
        n: usize,
        tol: f64,
    },
    Sweep {
        n: usize,
        g_min: f64,
        g_max: f64,
        steps: usize,
    },
    Hellmann {
        g: f64,
        n: usize,
        h: f64,
    },
}

/// The report plus any diagnostics meant for standard error.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Output {
    pub report: String,
    pub warnings: Vec<String>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let Common {
            preset,
            potential,
            a,
            digits,
            sig,
            format,
            out,
        } = cli.common;
        let (potential, default_a) = match (preset, potential) {
            (Some(p), _) => {
                let preset: Preset = p.parse()?;
                (preset.potential(), preset.default_width())
            }
            (None, Some(s)) => (s.parse()?, 1.0),
            (None, None) => (Preset::Harmonic.potential(), Preset::Harmonic.default_width()),
        };
        if sig == 0 {
            return Err(CliError::Parse("--sig must be at least 1".into()));
        }
        let command = match cli.command {
            Command::Spectrum {
                g,
                n,
                k,
                sector,
                scan_a,
            } => CommandKind::Spectrum {
                g,
                n,
                k,
                odd: sector == SectorArg::Odd,
                scan_a,
            },
            Command::Table { g, nmax, k } => CommandKind::Table { g, nmax, k },
            Command::Oracle { g, k, energy } => CommandKind::Oracle { g, k, energy },
            Command::Critical { n, tol } => CommandKind::Critical { n, tol },
            Command::Sweep { n, g_min, g_max, steps } => CommandKind::Sweep { n, g_min, g_max, steps },
            Command::Hellmann { g, n, h } => CommandKind::Hellmann { g, n, h },
        };
        Ok(Self {
            command,
            potential,
            a: a.unwrap_or(default_a),
            digits,
            sig,
            format: format.into(),
            out,
        })
    }
}

pub fn run(config: &RunConfig) -> Result<Output, CliError> {
    let ctx = PrecisionContext::new(config.digits)?;
    let (potential, a, sig, format) = (&config.potential, config.a, config.sig, config.format);
    let mut warnings = Vec::new();
    let header = |extra: String| vec![format!("V(x) = {potential}, a = {a}, {extra}")];

    let report = match &config.command {
        CommandKind::Spectrum { g, n, k, odd, scan_a } => {
            let base = if *odd {
                BasisSpec::odd(a, *n).with_g(*g)
            } else {
                BasisSpec::even(a, *n, *g)
            };
            base.validate()?;
            if let Some(widths) = scan_a {
                if *odd {
                    return Err(CliError::Parse("--scan-a applies to the even sector only".into()));
                }
                render_width_scan(&width_scan(potential, *g, *n, *k, widths, &ctx)?, sig, format)
            } else {
                let (_, spectrum) = solve(potential, &base, &ctx)?;
                let reliable = spectrum.reliable_digits(&ctx);
                if reliable < sig as f64 + 2.0 {
                    warnings.push(format!(
                        "overlap matrix condition {:.2e} leaves about {:.0} reliable digits; raise --digits",
                        spectrum.gram_condition, reliable
                    ));
                }
                let sector = if *odd { "odd" } else { "even" };
                render_roots(
                    spectrum.lowest(*k),
                    sig,
                    format,
                    &header(format!("g = {g}, n = {n}, {sector}")),
                )
            }
        }
        CommandKind::Table { g, nmax, k } => {
            BasisSpec::even(a, *nmax, *g).validate()?;
            render_table(&convergence_table(potential, *g, a, *nmax, *k, &ctx)?, sig, format)
        }
        CommandKind::Oracle { g, k, energy } => match energy {
            Some(e) => {
                let coupling = ho_coupling_for_energy(*e)?;
                match format {
                    Format::Text => format!("# V(x) = 0.5*|x|^2\ng = {}\n", format_sig_f64(coupling, sig)),
                    Format::Csv => format!("energy,g\n{e},{}\n", format_sig_f64(coupling, sig)),
                }
            }
            None => {
                let levels = ho_exact_levels(*g, *k)?;
                let comments = vec![
                    format!("V(x) = 0.5*|x|^2, g = {g}"),
                    format!("g0 = {}", format_sig_f64(ho_critical_coupling(), sig)),
                ];
                render_levels(&levels, sig, format, &comments)
            }
        },
        CommandKind::Critical { n, tol } => {
            BasisSpec::even(a, *n, 0.0).validate()?;
            render_critical(&critical_coupling(potential, a, *n, &ctx, *tol)?, sig, format)
        }
        CommandKind::Sweep { n, g_min, g_max, steps } => {
            BasisSpec::even(a, *n, 0.0).validate()?;
            let grid = linear_grid(*g_min, *g_max, *steps);
            render_sweep(&sweep_ground_state(potential, a, *n, &grid, &ctx)?, sig, format)
        }
        CommandKind::Hellmann { g, n, h } => {
            let spec = BasisSpec::even(a, *n, *g);
            spec.validate()?;
            render_hellmann(*g, *h, &hellmann_feynman(potential, &spec, *h, &ctx)?, sig, format)
        }
    };
    Ok(Output { report, warnings })
}
