use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use super::format::{
    detect_kind, parse_mesh, parse_qnd, parse_qnd_rows, write_mesh, write_qnd, FileKind, FormatError,
};
use crate::congruence::{quotient, standard_congruence, CongruenceKind};
use crate::enumerate::{enumerate_quandles, EnumerateError};
use crate::hom::{
    count_homs_two_reductive, enumerate_homs, enumerate_homs_two_reductive, enumerate_mesh_homs,
    hom_quandle_from_set, triv_homs, HomError, HomRecord, HomSet,
};
use crate::iso::is_isomorphic;
use crate::mesh::{decompose_two_reductive, AffineMesh, DecomposeError, MeshError, MeshReport};
use crate::property::{check_property, has_property, Property};
use crate::table::{verify_quandle, Quandle, ValidationReport};
use crate::terms::{parse_identity, satisfies_identity, Identity, ParseError};

#[derive(Debug, Parser)]
#[command(name = "quandle", version, about = "Finite quandles, their quotients, meshes and Hom sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the quandle axioms on a table
    Check { file: PathBuf },
    /// List structural properties
    Props { file: PathBuf },
    /// Print the component partition
    Components { file: PathBuf },
    /// Test an identity such as "(x*y)*z = y*z"
    Identity { file: PathBuf, identity: String },
    /// Quotient by a standard or identity-generated congruence
    Quotient(QuotientArgs),
    /// Count, list or tabulate Hom(SRC, TGT)
    Hom(HomArgs),
    /// Homomorphisms with trivial image, against the predicted count
    Triv { source: PathBuf, target: PathBuf },
    /// Affine mesh conversions
    #[command(subcommand)]
    Mesh(MeshCommand),
    /// Enumerate all quandles of order N up to isomorphism
    Enumerate {
        n: usize,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Test two quandles for isomorphism
    Iso { a: PathBuf, b: PathBuf },
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("congruence").required(true).args(["medial", "two_reductive", "identity"])))]
pub struct QuotientArgs {
    pub file: PathBuf,
    /// Quotient by m_Q
    #[arg(long)]
    pub medial: bool,
    /// Quotient by γ_Q
    #[arg(long)]
    pub two_reductive: bool,
    /// Quotient by the congruence generated by these identities
    #[arg(long)]
    pub identity: Vec<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["count", "list", "table"])))]
pub struct HomArgs {
    pub source: PathBuf,
    pub target: PathBuf,
    #[arg(long)]
    pub count: bool,
    #[arg(long)]
    pub list: bool,
    /// Print the Hom quandle (requires a medial target)
    #[arg(long)]
    pub table: bool,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Mesh,
    Auto,
}

#[derive(Debug, Subcommand)]
pub enum MeshCommand {
    /// Decompose a 2-reductive quandle into a mesh
    Decompose {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compose a mesh into a quandle table
    Compose {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Exit status and captured output of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn answer(holds: bool, stdout: String) -> Self {
        Self {
            code: if holds { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn ok(stdout: String) -> Self {
        Self::answer(true, stdout)
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: FormatError },
    #[error("{}: neither a `qnd 1` nor a `mesh 1` file", .0.display())]
    UnknownKind(PathBuf),
    #[error("identity: {0}")]
    Identity(#[from] ParseError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("{0}")]
    Usage(String),
}

/// Runs one command line (including the program name) and returns its
/// outcome. Exit codes: 0 success or true, 1 false or non-isomorphic,
/// 2 usage or input error.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    run(cli.command).unwrap_or_else(|e| Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    })
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn format_err(path: &Path) -> impl FnOnce(FormatError) -> CliError + '_ {
    move |source| CliError::Format {
        path: path.to_path_buf(),
        source,
    }
}

fn load_quandle(path: &Path) -> Result<Quandle, CliError> {
    parse_qnd(&read(path)?).map_err(format_err(path))
}

/// A command input: a table, or a mesh together with its composed table.
enum Input {
    Table(Quandle),
    Mesh(AffineMesh, Quandle),
}

impl Input {
    fn quandle(&self) -> &Quandle {
        match self {
            Input::Table(q) | Input::Mesh(_, q) => q,
        }
    }
}

fn load_input(path: &Path) -> Result<Input, CliError> {
    let text = read(path)?;
    match detect_kind(&text) {
        Some(FileKind::Qnd) => Ok(Input::Table(parse_qnd(&text).map_err(format_err(path))?)),
        Some(FileKind::Mesh) => {
            let mesh = parse_mesh(&text).map_err(format_err(path))?;
            let (q, _) = mesh.to_quandle()?;
            Ok(Input::Mesh(mesh, q))
        }
        None => Err(CliError::UnknownKind(path.to_path_buf())),
    }
}

/// Emits `text` to `output` if given, otherwise returns it for stdout.
fn emit(text: String, output: Option<&Path>) -> Result<String, CliError> {
    match output {
        Some(path) => {
            write(path, &text)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(text),
    }
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Check { file } => {
            let rows = parse_qnd_rows(&read(&file)?).map_err(format_err(&file))?;
            let report = verify_quandle(&rows).map_err(|e| CliError::Format {
                path: file.clone(),
                source: e.into(),
            })?;
            Ok(match report {
                ValidationReport::Ok => Outcome::ok("true\n".into()),
                ValidationReport::Failed(f) => Outcome::answer(false, format!("false: {f}\n")),
            })
        }
        Command::Props { file } => {
            let q = load_quandle(&file)?;
            let mut out = String::new();
            for p in Property::ALL {
                let check = check_property(&q, p);
                if check.holds {
                    writeln!(out, "{}: true", p.name()).unwrap();
                } else {
                    let w: Vec<String> = check.witness.iter().map(|x| x.to_string()).collect();
                    writeln!(out, "{}: false ({})", p.name(), w.join(",")).unwrap();
                }
            }
            writeln!(out, "components: {}", q.components().block_count()).unwrap();
            Ok(Outcome::ok(out))
        }
        Command::Components { file } => {
            let q = load_quandle(&file)?;
            Ok(Outcome::ok(format!("{}\n", q.components())))
        }
        Command::Identity { file, identity } => {
            let q = load_quandle(&file)?;
            let id = parse_identity(&identity)?;
            let check = satisfies_identity(&q, &id);
            Ok(match check.witness {
                None => Outcome::ok("true\n".into()),
                Some(w) => {
                    let assignment: Vec<String> = id
                        .vars
                        .iter()
                        .zip(&w)
                        .map(|(v, x)| format!("{v}={x}"))
                        .collect();
                    Outcome::answer(false, format!("false: {}\n", assignment.join(" ")))
                }
            })
        }
        Command::Quotient(args) => {
            let q = load_quandle(&args.file)?;
            let kind = if args.medial {
                CongruenceKind::Medial
            } else if args.two_reductive {
                CongruenceKind::TwoReductive
            } else {
                let ids = args
                    .identity
                    .iter()
                    .map(|s| parse_identity(s))
                    .collect::<Result<Vec<Identity>, _>>()?;
                CongruenceKind::Identities(ids)
            };
            let alpha = standard_congruence(&q, &kind);
            let (quo, _) = quotient(&q, &alpha).expect("generated congruences are congruences");
            let text = format!("# classes: {alpha}\n{}", write_qnd(&quo));
            Ok(Outcome::ok(emit(text, args.output.as_deref())?))
        }
        Command::Hom(args) => hom(args),
        Command::Triv { source, target } => {
            let s = load_input(&source)?;
            let t = load_input(&target)?;
            let report = triv_homs(s.quandle(), t.quandle())?;
            let mut out = format!(
                "enumerated: {}\npredicted: {}\n",
                report.homs.len(),
                report.predicted
            );
            for (u, count) in &report.by_subquandle {
                let u: Vec<String> = u.iter().map(|x| x.to_string()).collect();
                writeln!(out, "subquandle {}: {count}", u.join(" ")).unwrap();
            }
            out.push_str(&report.homs.to_string());
            Ok(Outcome::answer(report.agrees(), out))
        }
        Command::Mesh(MeshCommand::Decompose { file, output }) => {
            let q = load_quandle(&file)?;
            let d = decompose_two_reductive(&q)?;
            let mut text = write_mesh(&d.mesh).map_err(format_err(&file))?;
            for (x, (i, a)) in d.labels.iter().enumerate() {
                writeln!(text, "# element {x} = ({i}, {a})").unwrap();
            }
            Ok(Outcome::ok(emit(text, output.as_deref())?))
        }
        Command::Mesh(MeshCommand::Compose { file, output }) => {
            let mesh = parse_mesh(&read(&file)?).map_err(format_err(&file))?;
            if let MeshReport::Failed(f) = mesh.validate() {
                return Err(MeshError::Invalid(f).into());
            }
            let (q, _) = mesh.to_quandle()?;
            Ok(Outcome::ok(emit(write_qnd(&q), output.as_deref())?))
        }
        Command::Enumerate { n, out_dir } => {
            let catalog = enumerate_quandles(n)?;
            let mut out = String::new();
            if let Some(dir) = out_dir {
                catalog.export(&dir).map_err(|source| CliError::Io {
                    path: dir.clone(),
                    source,
                })?;
            }
            out.push_str(&catalog.index());
            writeln!(out, "total: {}", catalog.len()).unwrap();
            Ok(Outcome::ok(out))
        }
        Command::Iso { a, b } => {
            let qa = load_quandle(&a)?;
            let qb = load_quandle(&b)?;
            Ok(match is_isomorphic(&qa, &qb) {
                Some(f) => {
                    let f: Vec<String> = f.iter().map(|x| x.to_string()).collect();
                    Outcome::ok(format!("true\nmap: {}\n", f.join(" ")))
                }
                None => Outcome::answer(false, "false\n".into()),
            })
        }
    }
}

/// Mesh for an input: the given one, or a decomposition when the table is
/// 2-reductive. The returned map sends input elements to mesh indices.
fn mesh_of(input: &Input) -> Option<(AffineMesh, Vec<usize>)> {
    match input {
        Input::Mesh(m, q) => Some((m.clone(), (0..q.order()).collect())),
        Input::Table(q) => {
            let d = decompose_two_reductive(q).ok()?;
            let map = d.composed_index();
            Some((d.mesh, map))
        }
    }
}

/// Hom set via the general mesh engine, read back onto the input labelings.
fn general_mesh_homs(s: &Input, t: &Input) -> Result<Option<HomSet>, CliError> {
    let (Some((ms, s_map)), Some((mt, t_map))) = (mesh_of(s), mesh_of(t)) else {
        return Ok(None);
    };
    let composed = enumerate_mesh_homs(&ms, &mt)?;
    let mut t_back = vec![0; t_map.len()];
    for (x, &idx) in t_map.iter().enumerate() {
        t_back[idx] = x;
    }
    let records = composed
        .records()
        .iter()
        .map(|h| HomRecord::new(s_map.iter().map(|&idx| t_back[h.apply(idx)]).collect()))
        .collect();
    Ok(Some(HomSet::new(
        s.quandle().order(),
        t.quandle().order(),
        composed.engine(),
        records,
    )))
}

fn hom(args: HomArgs) -> Result<Outcome, CliError> {
    let s = load_input(&args.source)?;
    let t = load_input(&args.target)?;
    let (sq, tq) = (s.quandle(), t.quandle());
    let t_two_reductive = has_property(tq, Property::TwoReductive);
    let use_mesh = match args.method {
        Method::Brute => false,
        Method::Mesh => {
            if !t_two_reductive && mesh_of(&s).is_none() {
                return Err(CliError::Usage(
                    "--method mesh needs a 2-reductive target, or meshes for both inputs".into(),
                ));
            }
            true
        }
        Method::Auto => true,
    };

    if args.count && use_mesh && t_two_reductive {
        let count = count_homs_two_reductive(sq, tq)?;
        return Ok(Outcome::ok(format!("{}\n", count.total)));
    }
    let homs = if use_mesh && t_two_reductive {
        enumerate_homs_two_reductive(sq, tq)?
    } else if use_mesh {
        match general_mesh_homs(&s, &t)? {
            Some(h) => h,
            None if args.method == Method::Auto => enumerate_homs(sq, tq)?,
            None => {
                return Err(CliError::Usage(
                    "--method mesh needs a mesh for the target (give a .mesh file)".into(),
                ))
            }
        }
    } else {
        enumerate_homs(sq, tq)?
    };

    if args.count {
        return Ok(Outcome::ok(format!("{}\n", homs.len())));
    }
    if args.list {
        return Ok(Outcome::ok(homs.to_string()));
    }
    let q = hom_quandle_from_set(tq, &homs)?;
    let mut out = String::new();
    for (i, h) in homs.records().iter().enumerate() {
        let image: Vec<String> = h.image.iter().map(|x| x.to_string()).collect();
        writeln!(out, "# {i}: {}", image.join(" ")).unwrap();
    }
    out.push_str(&write_qnd(&q));
    Ok(Outcome::ok(out))
}
