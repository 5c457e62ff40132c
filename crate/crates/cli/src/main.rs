//! `strata`: compute, render and verify root-subsystem stratification atlases.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use strata_core::atlas::TOOL_VERSION;
use strata_core::classifier::{is_polystable, length_note, support_subsystem, ClassifyError, PointSupport};
use strata_core::corpus::{self, compare, ExpectedDiagram};
use strata_core::render::{node_names, render_ascii, render_dot, Granularity};
use strata_core::{Atlas, Error, Limits, TypeLabel, TypeSpec};

const EXIT_MISMATCH: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_CAPABILITY: u8 = 4;
const EXIT_IO: u8 = 5;

#[derive(Parser)]
#[command(name = "strata", version, about = "Root subsystems, strata and Hasse diagrams of semisimple types")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an atlas and render its stratification diagram.
    Atlas {
        /// Type such as G2, B3 or A1A1.
        #[arg(value_name = "TYPE")]
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        /// Draw the fine (per subsystem) poset instead of the coarse one.
        #[arg(long)]
        fine: bool,
        /// Write to a file instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Recompute even if a cached atlas exists.
        #[arg(long)]
        no_cache: bool,
    },
    /// List every root subsystem.
    Subsystems {
        #[arg(value_name = "TYPE")]
        spec: String,
        /// Only subsystems of this type, e.g. A1^2 (use 0 for the empty one).
        #[arg(long, value_name = "L")]
        label: Option<String>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Assign a support pattern to its stratum.
    Classify {
        #[arg(value_name = "TYPE")]
        spec: String,
        /// Root indices with nonzero components, e.g. 0,3,5.
        #[arg(long, value_name = "i,j,...", conflicts_with = "coords", value_delimiter = ',', num_args = 0..)]
        support: Option<Vec<usize>>,
        /// Roots in simple-root coordinates, e.g. "1,0;1,1".
        #[arg(long, value_name = "ROOTS")]
        coords: Option<String>,
        /// The Cartan components are nonzero.
        #[arg(long)]
        zero: bool,
        #[arg(long)]
        no_cache: bool,
    },
    /// Compare computed diagrams with an expected-results corpus.
    Verify {
        /// Directory of *.txt diagrams; defaults to the bundled corpus.
        #[arg(long, value_name = "PATH")]
        corpus: Option<PathBuf>,
        /// Only these types.
        #[arg(long, value_name = "T1,T2", value_delimiter = ',')]
        types: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
    Ascii,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Type(_) | Error::Corpus(_) | Error::Classify(_) => EXIT_PARSE,
            Error::Capability(_) => EXIT_CAPABILITY,
            Error::Linalg(_) => 1,
            Error::Io(_) | Error::Json(_) | Error::Checksum { .. } | Error::Corrupt(_) => EXIT_IO,
        };
        Self::new(code, e.to_string())
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        Error::from(e).into()
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_PARSE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("strata: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Atlas {
            spec,
            format,
            fine,
            out,
            no_cache,
        } => {
            let atlas = load_atlas(&parse_spec(&spec)?, !no_cache)?;
            let which = if fine { Granularity::Fine } else { Granularity::Coarse };
            let text = match format {
                Format::Dot => render_dot(&atlas, which),
                Format::Json => atlas.to_json(),
                Format::Ascii => render_ascii(&atlas, which),
            };
            emit(&text, out.as_deref())?;
            Ok(0)
        }
        Command::Subsystems { spec, label, no_cache } => {
            let filter = label
                .map(|l| parse_label(&l))
                .transpose()?;
            let atlas = load_atlas(&parse_spec(&spec)?, !no_cache)?;
            emit(&subsystem_listing(&atlas, filter.as_ref()), None)?;
            Ok(0)
        }
        Command::Classify {
            spec,
            support,
            coords,
            zero,
            no_cache,
        } => {
            let spec = parse_spec(&spec)?;
            let atlas = load_atlas(&spec, !no_cache)?;
            let point = match (support, coords) {
                (_, Some(c)) => PointSupport::from_coordinates(&atlas.root_system, &parse_coords(&c)?, zero)?,
                (s, None) => PointSupport::new(s.unwrap_or_default(), zero),
            };
            point.validate(&atlas.root_system)?;
            emit(&classify_report(&atlas, &point)?, None)?;
            Ok(0)
        }
        Command::Verify { corpus, types } => verify(corpus.as_deref(), types),
    }
}

fn parse_spec(s: &str) -> Result<TypeSpec> {
    s.parse().map_err(|e| Failure::from(Error::Type(e)))
}

fn parse_label(s: &str) -> Result<TypeLabel> {
    let s = if s == "0" { "" } else { s };
    s.parse().map_err(|e| Failure::from(Error::Type(e)))
}

fn parse_coords(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';')
        .filter(|v| !v.trim().is_empty())
        .map(|v| {
            v.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Failure::new(EXIT_PARSE, format!("bad root coordinates {v:?}: {e}")))
        })
        .collect()
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    let io = |e: std::io::Error| Failure::new(EXIT_IO, e.to_string());
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display()))),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(io),
    }
}

fn cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os("STRATA_ATLAS_CACHE") {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("strata");
    }
    match std::env::var_os("HOME") {
        Some(home) => PathBuf::from(home).join(".cache").join("strata"),
        None => std::env::temp_dir().join("strata-cache"),
    }
}

/// Loads the atlas from the cache when possible; otherwise computes it and
/// stores it (write to a temporary file, then rename). Unreadable or stale
/// cache entries are recomputed; a failed cache write only warns.
fn load_atlas(spec: &TypeSpec, use_cache: bool) -> Result<Atlas> {
    let limits = Limits::default();
    if !use_cache {
        return Ok(Atlas::compute(spec, &limits)?);
    }
    let dir = cache_dir();
    let path = dir.join(format!("{spec}-{TOOL_VERSION}.json"));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(atlas) = Atlas::from_json(&text) {
            if atlas.spec() == spec {
                return Ok(atlas);
            }
        }
    }
    let atlas = Atlas::compute(spec, &limits)?;
    if let Err(e) = store(&dir, &path, &atlas.to_json()) {
        eprintln!("strata: warning: could not write cache {}: {e}", path.display());
    }
    Ok(atlas)
}

fn store(dir: &Path, path: &Path, text: &str) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn class_name(atlas: &Atlas, class_id: usize) -> String {
    let pos = atlas.coarse.nodes.iter().position(|&c| c == class_id).expect("every class is a node");
    node_names(atlas, Granularity::Coarse).swap_remove(pos)
}

fn subsystem_listing(atlas: &Atlas, filter: Option<&TypeLabel>) -> String {
    let names = node_names(atlas, Granularity::Coarse);
    let name_of = |c: usize| &names[atlas.coarse.nodes.iter().position(|&x| x == c).unwrap()];
    let mut out = String::new();
    writeln!(out, "# index\tmask\tlabel\trank\t|Psi|\torbit\tclass").unwrap();
    let mut seen = vec![0usize; atlas.classes.len()];
    for (i, psi) in atlas.subsystems.iter().enumerate() {
        let c = atlas.class_of[i];
        seen[c] += 1;
        let class = &atlas.classes[c];
        if filter.is_some_and(|l| *l != class.label) {
            continue;
        }
        writeln!(
            out,
            "{i}\t{:?}\t{}\t{}\t{}\t{}/{}\t{}",
            psi.indices(),
            class.label,
            class.rank,
            psi.len(),
            seen[c],
            class.orbit_size,
            name_of(c),
        )
        .unwrap();
    }
    out
}

fn classify_report(atlas: &Atlas, point: &PointSupport) -> Result<String> {
    let rs = &atlas.root_system;
    let psi = support_subsystem(rs, point)?;
    let mut out = String::new();
    writeln!(
        out,
        "support: {:?}{}",
        point.support,
        if point.has_zero_weight { " + zero weight" } else { "" }
    )
    .unwrap();
    writeln!(out, "Phi(X,Y): {:?}", psi.indices()).unwrap();
    if !is_polystable(rs, point)? {
        writeln!(out, "verdict: not polystable").unwrap();
        return Ok(out);
    }
    let idx = atlas
        .subsystem_index(&psi)
        .ok_or(ClassifyError::UnknownSubsystem(psi))?;
    let class = &atlas.classes[atlas.class_of[idx]];
    let label = match length_note(rs, &psi) {
        Some(note) => format!("{} ({note})", class.label),
        None => class.label.to_string(),
    };
    writeln!(out, "verdict: {label}, polystable, class {}", class_name(atlas, class.class_id)).unwrap();
    writeln!(out, "fine stratum: subsystem {idx}, dim {}", class.dim_top).unwrap();
    Ok(out)
}

fn verify(dir: Option<&Path>, types: Option<Vec<String>>) -> Result<u8> {
    let mut diagrams: Vec<ExpectedDiagram> = match dir {
        Some(d) => corpus::load_dir(d)?,
        None => corpus::bundled(),
    };
    if let Some(types) = types {
        let wanted = types.iter().map(|t| parse_spec(t)).collect::<Result<Vec<_>>>()?;
        diagrams.retain(|d| d.type_name.parse::<TypeSpec>().is_ok_and(|s| wanted.contains(&s)));
        for (t, s) in types.iter().zip(&wanted) {
            if !diagrams.iter().any(|d| d.type_name.parse::<TypeSpec>().is_ok_and(|x| x == *s)) {
                return Err(Failure::new(EXIT_PARSE, format!("no corpus diagram for type {t}")));
            }
        }
    }
    if diagrams.is_empty() {
        return Err(Failure::new(EXIT_PARSE, "corpus contains no diagrams"));
    }
    let outcomes: Vec<Result<String>> = diagrams
        .par_iter()
        .map(|d| {
            let atlas = Atlas::compute(&parse_spec(&d.type_name)?, &Limits::default())?;
            let cmp = compare(d, &atlas);
            if cmp.passed() {
                Ok(cmp.to_string())
            } else {
                Err(Failure::new(EXIT_MISMATCH, cmp.to_string()))
            }
        })
        .collect();
    let mut report = String::new();
    let mut code = 0;
    let mut failed = 0;
    for o in &outcomes {
        match o {
            Ok(text) => report.push_str(text),
            Err(f) => {
                failed += 1;
                code = code.max(f.code);
                report.push_str(&f.message);
                if !f.message.ends_with('\n') {
                    report.push('\n');
                }
            }
        }
    }
    writeln!(report, "{} of {} diagrams match", outcomes.len() - failed, outcomes.len()).unwrap();
    emit(&report, None)?;
    Ok(code)
}
