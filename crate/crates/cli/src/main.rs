mod svg;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphtda::complex::{clique_complex, enclaveless_complex, independent_complex, neighborhood_complex};
use graphtda::filtration::{extended_pair, filter_clique, filter_enclaveless, filter_neighborhood, SimplexValue};
use graphtda::graph::parse_graph;
use graphtda::homology::betti_numbers;
use graphtda::metrics::bottleneck;
use graphtda::persistence::{
    read_diagrams_csv, reduce, sample_axis, write_diagrams_csv, ExtendedPersistence, PbnGrid,
};
use graphtda::{Error, PersistenceDiagram, SimplicialComplex, WeightedGraph};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(name = "graphtda", version, about = "Persistent homology of complexes built from weighted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a complex from an edge list and report its facets and Betti numbers.
    Build {
        input: PathBuf,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Compute persistence diagrams of a filtered complex.
    Persist {
        input: PathBuf,
        #[command(flatten)]
        cfg: RunConfig,
        /// Homology degree rendered by `--format svg`.
        #[arg(long, default_value_t = 0)]
        dimension: usize,
    },
    /// Bottleneck distance between two diagram files.
    Distance {
        first: PathBuf,
        second: PathBuf,
        /// Homology degree to compare when a file holds several diagrams.
        #[arg(long)]
        dimension: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Render a diagram file, or the sampled grid of an extended run, as SVG.
    Plot {
        input: PathBuf,
        /// Homology degree to draw when the file holds several diagrams.
        #[arg(long, default_value_t = 0)]
        dimension: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunConfig {
    #[arg(long, value_enum, default_value_t = Construction::Clique)]
    construction: Construction,
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
    /// Pair the ascending clique filtration with the descending one of the completed graph.
    #[arg(long)]
    extended: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    Clique,
    Neighborhood,
    Enclaveless,
    Independent,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

enum Failure {
    Usage(String),
    Parse(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Internal(m) => m,
        }
    }
}

fn library(context: &Path, e: Error) -> Failure {
    let msg = format!("{}: {e}", context.display());
    match e {
        Error::Parse(_) | Error::MissingWeight(..) | Error::UnknownVertex(_) | Error::Json(_) | Error::Csv(_) => {
            Failure::Parse(msg)
        }
        Error::InvalidDiagram(_) => Failure::Parse(msg),
        Error::InvalidQuery(..) | Error::DegreeMismatch(..) => Failure::Usage(msg),
        Error::InvalidSimplex(_) | Error::NonMonotone { .. } => Failure::Internal(msg),
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

#[derive(Serialize)]
struct BuildOutput {
    vertices: Vec<String>,
    facets: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    simplices: Option<Vec<SimplexValue>>,
    betti: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ExtendedOutput {
    ascending: Vec<PersistenceDiagram>,
    descending: Vec<PersistenceDiagram>,
    grids: Vec<PbnGrid>,
}

enum DiagramFile {
    One(PersistenceDiagram),
    Many(Vec<PersistenceDiagram>),
    Extended(ExtendedOutput),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match configure_threads().and_then(|()| run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn configure_threads() -> Outcome<()> {
    let Ok(raw) = std::env::var("GRAPHTDA_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("GRAPHTDA_THREADS must be a non-negative integer, got {raw:?}")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    Ok(())
}

fn run(command: Command) -> Outcome<()> {
    match command {
        Command::Build { input, cfg } => {
            let text = build(&input, &cfg)?;
            emit(cfg.output.as_deref(), &text)
        }
        Command::Persist { input, cfg, dimension } => {
            let text = persist(&input, &cfg, dimension)?;
            emit(cfg.output.as_deref(), &text)
        }
        Command::Distance { first, second, dimension, output } => {
            let text = distance(&first, &second, dimension)?;
            emit(output.as_deref(), &text)
        }
        Command::Plot { input, dimension, output } => {
            let text = plot(&read_diagram_file(&input)?, dimension)?;
            emit(output.as_deref(), &text)
        }
    }
}

fn read_text(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Outcome<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .or_else(|e| match e.kind() {
                io::ErrorKind::BrokenPipe => Ok(()),
                _ => Err(Failure::Usage(format!("stdout: {e}"))),
            }),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn read_graph(path: &Path) -> Outcome<WeightedGraph> {
    parse_graph(&read_text(path)?).map_err(|e| library(path, e.into()))
}

fn build(input: &Path, cfg: &RunConfig) -> Outcome<String> {
    if cfg.extended {
        return Err(Failure::Usage("--extended applies to `persist` only".into()));
    }
    if cfg.format != Format::Json {
        return Err(Failure::Usage("`build` writes json only".into()));
    }
    let g = read_graph(input)?;
    // Simplices one degree above max_dim are kept so that β_max_dim is exact.
    let cap = Some(cfg.max_dim + 1);
    let complex: SimplicialComplex = match cfg.construction {
        Construction::Clique => clique_complex(&g, cap),
        Construction::Neighborhood => neighborhood_complex(&g, cap),
        Construction::Enclaveless => enclaveless_complex(&g, cap),
        Construction::Independent => independent_complex(&g, cap),
    };
    let simplices = match cfg.construction {
        _ if !g.is_fully_weighted() => None,
        Construction::Independent => None,
        c => Some(filtered(&g, c, cap).map_err(|e| library(input, e))?.to_document().simplices),
    };
    let doc = complex.to_document();
    Ok(to_json(&BuildOutput {
        vertices: doc.vertices,
        facets: doc.facets,
        simplices,
        betti: betti_numbers(&complex, cfg.max_dim),
    }))
}

fn filtered(
    g: &WeightedGraph,
    construction: Construction,
    cap: Option<usize>,
) -> graphtda::Result<graphtda::FilteredComplex> {
    match construction {
        Construction::Clique => filter_clique(g, cap),
        Construction::Neighborhood => filter_neighborhood(g, cap),
        Construction::Enclaveless => filter_enclaveless(g, cap),
        Construction::Independent => unreachable!("independent sets carry no filtration"),
    }
}

fn persist(input: &Path, cfg: &RunConfig, dimension: usize) -> Outcome<String> {
    let cap = Some(cfg.max_dim + 1);
    if cfg.extended {
        if !matches!(cfg.construction, Construction::Clique | Construction::Independent) {
            return Err(Failure::Usage(
                "--extended pairs clique and independent-set filtrations only".into(),
            ));
        }
        if cfg.format == Format::Csv {
            return Err(Failure::Usage("extended output is json or svg".into()));
        }
        let g = read_graph(input)?;
        let pair = extended_pair(&g, cap).map_err(|e| library(input, e))?;
        let ext = ExtendedPersistence::compute(&pair, cfg.max_dim).map_err(|e| library(input, e))?;
        let axis = sample_axis(&ext.critical_values());
        let grids = (0..=cfg.max_dim).map(|r| ext.grid(r, &axis)).collect();
        let out = ExtendedOutput {
            ascending: ext.ascending,
            descending: ext.descending,
            grids,
        };
        return match cfg.format {
            Format::Svg => plot(&DiagramFile::Extended(out), dimension),
            _ => Ok(to_json(&out)),
        };
    }
    if cfg.construction == Construction::Independent {
        return Err(Failure::Usage(
            "independent sets admit no edge-weight filtration; use `build`, or `persist --extended`".into(),
        ));
    }
    let g = read_graph(input)?;
    let fc = filtered(&g, cfg.construction, cap).map_err(|e| library(input, e))?;
    let diagrams = reduce(&fc, cfg.max_dim).map_err(|e| library(input, e))?;
    match cfg.format {
        Format::Json => Ok(to_json(&diagrams)),
        Format::Csv => {
            let mut buf = Vec::new();
            write_diagrams_csv(&diagrams, &mut buf).map_err(|e| library(input, e))?;
            Ok(String::from_utf8(buf).expect("csv output is utf-8"))
        }
        Format::Svg => plot(&DiagramFile::Many(diagrams), dimension),
    }
}

fn read_diagram_file(path: &Path) -> Outcome<DiagramFile> {
    let text = read_text(path)?;
    let fail = |e: Error| library(path, e);
    match text.trim_start().chars().next() {
        Some('[') => Ok(DiagramFile::Many(serde_json::from_str(&text).map_err(|e| fail(e.into()))?)),
        Some('{') => {
            let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| fail(e.into()))?;
            if value.get("ascending").is_some() {
                Ok(DiagramFile::Extended(serde_json::from_value(value).map_err(|e| fail(e.into()))?))
            } else {
                Ok(DiagramFile::One(serde_json::from_value(value).map_err(|e| fail(e.into()))?))
            }
        }
        _ => Ok(DiagramFile::Many(read_diagrams_csv(text.as_bytes()).map_err(fail)?)),
    }
    .and_then(|file| validate(path, file))
}

/// Rejects diagrams whose points are out of order or whose listed degree
/// disagrees with their position.
fn validate(path: &Path, file: DiagramFile) -> Outcome<DiagramFile> {
    let check = |ds: &[PersistenceDiagram]| -> Outcome<()> {
        for (r, d) in ds.iter().enumerate() {
            if d.dimension != r {
                return Err(library(path, Error::InvalidDiagram(format!("entry {r} has dimension {}", d.dimension))));
            }
            d.normalized().map_err(|e| library(path, e))?;
        }
        Ok(())
    };
    match &file {
        DiagramFile::One(d) => {
            d.normalized().map_err(|e| library(path, e))?;
        }
        DiagramFile::Many(ds) => check(ds)?,
        DiagramFile::Extended(ext) => {
            check(&ext.ascending)?;
            check(&ext.descending)?;
        }
    }
    Ok(file)
}

fn select(file: &DiagramFile, path: &Path, r: usize) -> Outcome<PersistenceDiagram> {
    match file {
        DiagramFile::One(d) => Ok(d.clone()),
        DiagramFile::Many(ds) => Ok(ds.get(r).cloned().unwrap_or_else(|| PersistenceDiagram::empty(r))),
        DiagramFile::Extended(_) => Err(Failure::Usage(format!(
            "{}: extended output holds two filtrations; extract one diagram first",
            path.display()
        ))),
    }
}

fn format_distance(d: f64) -> String {
    if d.is_infinite() {
        "inf".to_string()
    } else {
        d.to_string()
    }
}

fn distance(first: &Path, second: &Path, dimension: Option<usize>) -> Outcome<String> {
    let a = read_diagram_file(first)?;
    let b = read_diagram_file(second)?;
    let degrees: Vec<usize> = match (dimension, &a, &b) {
        (Some(r), ..) => vec![r],
        (None, DiagramFile::One(d), _) | (None, _, DiagramFile::One(d)) => vec![d.dimension],
        (None, DiagramFile::Many(x), DiagramFile::Many(y)) => (0..x.len().max(y.len()).max(1)).collect(),
        _ => vec![0],
    };
    let mut out = String::new();
    for &r in &degrees {
        let d = bottleneck(&select(&a, first, r)?, &select(&b, second, r)?)
            .map_err(|e| Failure::Usage(e.to_string()))?;
        if degrees.len() > 1 {
            out.push_str(&format!("{r}\t"));
        }
        out.push_str(&format_distance(d));
        out.push('\n');
    }
    Ok(out)
}

fn plot(file: &DiagramFile, dimension: usize) -> Outcome<String> {
    match file {
        DiagramFile::One(d) => Ok(svg::diagram(d)),
        DiagramFile::Many(ds) => Ok(svg::diagram(
            &ds.get(dimension).cloned().unwrap_or_else(|| PersistenceDiagram::empty(dimension)),
        )),
        DiagramFile::Extended(ext) => ext
            .grids
            .iter()
            .find(|g| g.dimension == dimension)
            .map(svg::heatmap)
            .ok_or_else(|| Failure::Usage(format!("no extended grid of degree {dimension}"))),
    }
}
