//! Command-line front end over `codelat-core`.
//!
//! Every command loads one object, calls the library, and prints the result.
//! Files are looked up on disk first and then among the bundled assets by
//! file name.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use codelat_core::io::{
    detect_kind, format_code, format_lattice, format_qseries, format_sectors, parse_code, parse_lattice,
    parse_rational, parse_sectors, FileKind, SectorFile,
};
use codelat_core::{
    assets, code_to_sectors, construction_a, lattice_to_sectors, verify_table_row, BinaryCode, Error,
    QSeries, Rat, RationalLattice, SectorAlgebra, TierObject, VerifyOptions, DEFAULT_ENUMERATION_CAP,
};

#[derive(Parser, Debug)]
#[command(name = "codelat", version, about = "Codes, lattices and sector algebras: duals, series and lifts")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Maximum number of codewords any enumeration may visit.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP, global = true)]
    pub cap: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Kv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Binary codes.
    Code {
        #[arg(value_enum)]
        action: CodeAction,
        file: String,
    },
    /// Rational lattices.
    Lattice {
        #[arg(value_enum)]
        action: LatticeAction,
        file: String,
        #[command(flatten)]
        series: SeriesArgs,
        /// Norm bound for `shortvec`.
        #[arg(long, value_parser = rational, default_value = "2")]
        bound: Rat,
    },
    /// Sector algebras over finite quadratic modules.
    Sectors {
        #[arg(value_enum)]
        action: SectorsAction,
        file: String,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// Lifts between tiers.
    Lift {
        #[arg(value_enum)]
        action: LiftAction,
        file: String,
    },
    /// Correspondence-table checks.
    Verify {
        #[arg(value_enum)]
        action: VerifyAction,
        file: String,
        /// Truncation order of the series in the report.
        #[arg(long, value_parser = rational, default_value = "2")]
        order: Rat,
    },
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    /// Truncation order of printed series.
    #[arg(long, value_parser = rational, default_value = "10")]
    pub order: Rat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CodeAction {
    Dual,
    Wenum,
    Check,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LatticeAction {
    Dual,
    Theta,
    Disc,
    Shortvec,
    Check,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SectorsAction {
    Dual,
    Character,
    Check,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LiftAction {
    A,
    Disc,
    Compose,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VerifyAction {
    Row,
}

fn rational(s: &str) -> Result<Rat, String> {
    parse_rational(s)
}

/// A failure that ends the run with exit status 1.
#[derive(Debug)]
pub struct Failure {
    pub name: String,
    pub message: String,
    /// Anything already produced for standard output.
    pub output: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            name: e.name().to_string(),
            message: e.to_string(),
            output: String::new(),
        }
    }
}

type Outcome = Result<String, Failure>;

struct Source {
    text: String,
    dir: Option<PathBuf>,
}

fn load(name: &str) -> Result<Source, Failure> {
    let path = Path::new(name);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure {
            name: "IoError".into(),
            message: format!("{name}: {e}"),
            output: String::new(),
        })?;
        return Ok(Source {
            text,
            dir: path.parent().map(Path::to_path_buf),
        });
    }
    let base = path.file_name().and_then(|f| f.to_str()).unwrap_or(name);
    assets::text(base).map(|text| Source { text, dir: None }).ok_or_else(|| Failure {
        name: "IoError".into(),
        message: format!("{name}: no such file or bundled asset"),
        output: String::new(),
    })
}

fn load_code(name: &str) -> Result<BinaryCode, Failure> {
    Ok(parse_code(&load(name)?.text)?)
}

fn load_lattice(name: &str) -> Result<RationalLattice, Failure> {
    Ok(parse_lattice(&load(name)?.text)?)
}

fn load_sectors(name: &str) -> Result<SectorFile, Failure> {
    let source = load(name)?;
    let mut resolve = |target: &str| -> codelat_core::Result<RationalLattice> {
        let candidate = match &source.dir {
            Some(dir) => dir.join(target),
            None => PathBuf::from(target),
        };
        let key = if candidate.is_file() {
            candidate.to_string_lossy().into_owned()
        } else {
            target.to_string()
        };
        load_lattice(&key).map_err(|f| Error::InvalidArgument(format!("realize {target}: {}", f.message)))
    };
    Ok(parse_sectors(&source.text, &mut resolve)?)
}

/// Key/value facts rendered as `key: value` or `key=value`.
struct Facts(Vec<(&'static str, String)>);

impl Facts {
    fn render(&self, format: Format) -> String {
        let mut s = String::new();
        for (k, v) in &self.0 {
            let _ = match format {
                Format::Text => writeln!(s, "{k}: {v}"),
                Format::Kv => writeln!(s, "{k}={v}"),
            };
        }
        s
    }
}

fn series(s: &QSeries, format: Format) -> String {
    match format {
        Format::Text => format!("{s}\n"),
        Format::Kv => format_qseries(s),
    }
}

fn code_command(action: CodeAction, file: &str, cli: &Cli) -> Outcome {
    let code = load_code(file)?;
    Ok(match action {
        CodeAction::Dual => format_code(&code.dual()),
        CodeAction::Wenum => match cli.format {
            Format::Text => format!("{}\n", code.weight_enumerator(cli.cap)?),
            Format::Kv => {
                let counts = code.weight_distribution(cli.cap)?;
                let facts = counts
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(w, c)| ("weight", format!("{w} {c}")))
                    .collect();
                Facts(facts).render(Format::Kv)
            }
        },
        CodeAction::Check => Facts(vec![
            ("length", code.length().to_string()),
            ("dimension", code.dimension().to_string()),
            ("even", code.is_even().to_string()),
            ("doubly_even", code.is_doubly_even().to_string()),
            ("self_dual", code.is_self_dual().to_string()),
        ])
        .render(cli.format),
    })
}

fn lattice_command(action: LatticeAction, file: &str, order: &Rat, bound: &Rat, cli: &Cli) -> Outcome {
    let lattice = load_lattice(file)?;
    Ok(match action {
        LatticeAction::Dual => format_lattice(&lattice.dual()?),
        LatticeAction::Theta => series(&lattice.theta_series(order)?, cli.format),
        LatticeAction::Disc => {
            let (_, a) = lattice_to_sectors(&lattice)?;
            format_sectors(&SectorAlgebra::unmasked(a), Some(file))
        }
        LatticeAction::Shortvec => {
            let report = lattice.short_vectors(bound)?;
            let mut s = String::new();
            match cli.format {
                Format::Text => {
                    let _ = writeln!(s, "bound: {}", report.bound);
                    let _ = writeln!(s, "count: {}", report.len());
                    for (v, norm) in &report.entries {
                        let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                        let _ = writeln!(s, "{} norm {norm}", coords.join(" "));
                    }
                }
                Format::Kv => {
                    let _ = writeln!(s, "bound={}", report.bound);
                    let _ = writeln!(s, "count={}", report.len());
                    for (v, norm) in &report.entries {
                        let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                        let _ = writeln!(s, "vector={} {norm}", coords.join(","));
                    }
                }
            }
            s
        }
        LatticeAction::Check => Facts(vec![
            ("ambient_dimension", lattice.ambient_dim().to_string()),
            ("rank", lattice.rank().to_string()),
            ("det", lattice.det_gram().to_string()),
            ("nondegenerate", lattice.is_nondegenerate().to_string()),
            ("integral", lattice.is_integral().to_string()),
            ("even", lattice.is_even().to_string()),
            ("unimodular", lattice.is_unimodular().to_string()),
            ("self_dual", lattice.is_self_dual().to_string()),
            ("positive_definite", lattice.is_positive_definite().to_string()),
        ])
        .render(cli.format),
    })
}

fn sectors_command(action: SectorsAction, file: &str, order: &Rat, cli: &Cli) -> Outcome {
    let loaded = load_sectors(file)?;
    let algebra = &loaded.algebra;
    let a = algebra.sectors();
    Ok(match action {
        SectorsAction::Dual => format_sectors(&SectorAlgebra::unmasked(a.dual()), loaded.realize.as_deref()),
        SectorsAction::Character => series(&a.character(order)?, cli.format),
        SectorsAction::Check => Facts(vec![
            ("module_order", a.module().size().to_string()),
            ("order", a.order().to_string()),
            ("central_charge", a.module().central_charge().to_string()),
            ("dual_order", a.dual().order().to_string()),
            ("meromorphic", a.is_meromorphic().to_string()),
            ("z_graded", a.is_z_graded().to_string()),
            ("self_dual", a.is_self_dual().to_string()),
            ("nondegenerate", a.is_nondegenerate().to_string()),
            ("degenerate", algebra.is_degenerate().to_string()),
            ("complete_extension_order", a.complete_extension().order().to_string()),
        ])
        .render(cli.format),
    })
}

fn lift_command(action: LiftAction, file: &str) -> Outcome {
    Ok(match action {
        LiftAction::A => format_lattice(&construction_a(&load_code(file)?)),
        LiftAction::Disc => {
            let (_, a) = lattice_to_sectors(&load_lattice(file)?)?;
            format_sectors(&SectorAlgebra::unmasked(a), Some(file))
        }
        LiftAction::Compose => {
            let (_, a) = code_to_sectors(&load_code(file)?)?;
            format_sectors(&SectorAlgebra::unmasked(a), None)
        }
    })
}

fn verify_command(file: &str, order: &Rat, cli: &Cli) -> Outcome {
    let source = load(file)?;
    let object = match detect_kind(&source.text) {
        Some(FileKind::Code) => TierObject::Code(parse_code(&source.text)?),
        Some(FileKind::Lattice) => TierObject::Lattice(parse_lattice(&source.text)?),
        Some(FileKind::Sectors) => TierObject::Sectors(load_sectors(file)?.algebra),
        _ => {
            return Err(Failure {
                name: "ParseError".into(),
                message: format!("{file}: expected a code, lattice or fqm file"),
                output: String::new(),
            })
        }
    };
    let options = VerifyOptions {
        order: order.clone(),
        cap: cli.cap,
    };
    let report = verify_table_row(&object, &options)?;
    let text = match cli.format {
        Format::Text => report.render_text(),
        Format::Kv => report.render_kv(),
    };
    if report.passed() {
        Ok(text)
    } else {
        Err(Failure {
            name: "VerificationFailed".into(),
            message: "at least one row failed".into(),
            output: text,
        })
    }
}

/// Executes a parsed command, returning the text for standard output.
pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Code { action, file } => code_command(*action, file, cli),
        Command::Lattice {
            action,
            file,
            series,
            bound,
        } => lattice_command(*action, file, &series.order, bound, cli),
        Command::Sectors { action, file, series } => sectors_command(*action, file, &series.order, cli),
        Command::Lift { action, file } => lift_command(*action, file),
        Command::Verify { file, order, .. } => verify_command(file, order, cli),
    }
}

/// Parses `args`, runs, and returns (exit status, stdout, stderr).
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                (0, rendered, String::new())
            } else {
                (2, String::new(), rendered)
            };
        }
    };
    match execute(&cli) {
        Ok(out) => (0, out, String::new()),
        Err(f) => (1, f.output, format!("{}: {}\n", f.name, f.message)),
    }
}
