use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, FromArgMatches, Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Subcommand {
    /// P∞ over a Δ grid. Columns: delta, p_infinity, delta_p_infinity, terms_used.
    Exact,
    /// q equally spaced holes. Columns: q, delta, p_infinity, regrouped, abs_difference, terms_used.
    Qholes,
    /// Mellin transform at s = sigma + i·tau, or a residue probe there with --probe.
    /// Columns: source, s_re, s_im, value_re, value_im (probe: pole, coefficient and log-coefficient parts).
    Mellin,
    /// Residue report for the tabulated moduli. Columns: q, s, quantity, measured, expected, abs_error.
    Residues,
    /// Zeros of ζ on the critical line up to --t-max. Columns: index, ordinate, multiplicity.
    Zeros,
    /// Monte Carlo survival. Columns: t, samples, survivors, p_hat, std_error, tp_hat, tp_std_error, seed, streams, below_regime.
    Simulate,
    /// Residual of P∞ after removing the expansion. Columns: delta, residual, envelope_exponent, exponent_half_width, sign_changes.
    Probe,
    /// Full transform and residue verification. Columns: table, q, s_re, s_im, quantity, measured, expected, abs_error.
    ReproduceTables,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Exact and simulated escape statistics of the open circular billiard.
///
/// Every option may also be given in a `--config` file of `key = value` lines
/// (keys are option names without the leading dashes); flags on the command
/// line override the file.
#[derive(Debug, Clone, Parser)]
#[command(name = "circle-escape", version, args_override_self = true)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Subcommand,

    /// File of `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Hole width in radians; a single grid point.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Angular offset of the second hole in radians.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Numerator of a rational offset θ = 2πr/q.
    #[arg(long)]
    pub r: Option<u64>,
    /// Modulus: θ = 2πr/q for two holes, or the hole count for `qholes`.
    #[arg(long)]
    pub q: Option<u64>,
    /// Use this many equally spaced holes.
    #[arg(long)]
    pub q_holes: Option<u64>,

    #[arg(long, allow_negative_numbers = true)]
    pub delta_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub delta_max: Option<f64>,
    /// Grid points between --delta-min and --delta-max.
    #[arg(long)]
    pub count: Option<usize>,
    /// Log-spaced grid (probe grids are always log-spaced).
    #[arg(long)]
    pub log: bool,

    /// Real poles down to s = -real_poles are removed by `probe`.
    #[arg(long, default_value_t = 3)]
    pub real_poles: u32,
    /// Critical-line zero pairs removed by `probe`.
    #[arg(long, default_value_t = 0)]
    pub zeros: usize,
    /// Upper ordinate for `zeros`.
    #[arg(long, default_value_t = 100.0)]
    pub t_max: f64,

    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub tau: Option<f64>,
    /// Probe for a pole at s instead of evaluating there.
    #[arg(long)]
    pub probe: bool,

    /// Time horizon for `simulate`.
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 16)]
    pub streams: u64,
}

#[derive(Debug)]
pub enum CliError {
    Help(String),
    Config(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Help(_) => 0,
            CliError::Config(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Help(s) | CliError::Config(s) | CliError::Runtime(s) => {
                f.write_str(s.trim_end())
            }
        }
    }
}

/// Parses flags, splicing in a config file ahead of them so flags win.
pub fn parse(argv: Vec<OsString>) -> Result<Args, CliError> {
    let first = parse_from(argv.clone())?;
    let Some(path) = first.config.as_deref() else {
        return Ok(first);
    };
    let mut merged = vec![argv[0].clone()];
    merged.extend(config_flags(path)?.into_iter().map(OsString::from));
    merged.extend(argv.into_iter().skip(1));
    parse_from(merged)
}

fn parse_from(argv: Vec<OsString>) -> Result<Args, CliError> {
    let matches = Args::command().try_get_matches_from(argv).map_err(|e| {
        use clap::error::ErrorKind::*;
        match e.kind() {
            DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand => {
                CliError::Help(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    })?;
    Args::from_arg_matches(&matches).map_err(|e| CliError::Config(e.to_string()))
}

fn config_flags(path: &Path) -> Result<Vec<String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    let mut flags = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!(
                "{}:{}: expected `key = value`",
                path.display(),
                lineno + 1
            ))
        })?;
        let key = key.trim().replace('_', "-");
        let value = value.trim().trim_matches('"');
        if key == "config" || key == "command" {
            return Err(CliError::Config(format!(
                "{}:{}: `{key}` cannot be set from a config file",
                path.display(),
                lineno + 1
            )));
        }
        match value {
            "true" if key == "log" || key == "probe" => flags.push(format!("--{key}")),
            "false" if key == "log" || key == "probe" => {}
            _ => flags.push(format!("--{key}={value}")),
        }
    }
    Ok(flags)
}
