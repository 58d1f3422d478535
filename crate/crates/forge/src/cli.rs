//! Command-line interface.

use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use forge_core::analysis;
use forge_core::assembly::{self, search, Gluing};
use forge_core::covers::{self, CoveringMap};
use forge_core::graph::{catalog as graphs, HalfEdgeGraph};
use forge_core::hyperbolic::build_polygon;
use forge_core::maps::{catalog as maps, RotationMap};
use serde_json::json;

use crate::config::{FileConfig, Settings};
use crate::examples::{self, Example};
use crate::formats::{self, CoverDoc, GraphDoc, MapDoc, PolygonDoc, SurfaceDoc};
use crate::pipeline;
use crate::report::{exact, RunReport};

#[derive(Debug, Parser)]
#[command(name = "forge", version, about = "Build hyperbolic surfaces from regular right-angled polygons and certify their systoles")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML file with max_cover_size, tolerance, theta and seed; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Largest cover, in vertices, any command may build.
    #[arg(long, global = true)]
    pub max_cover_size: Option<usize>,
    /// Absolute tolerance on geodesic lengths.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Deformation angle checked alongside pi/2.
    #[arg(long, global = true)]
    pub theta: Option<f64>,
    /// Seed for randomized oracle sampling.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Include stage timings in reports.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Catalog maps.
    Maps {
        #[command(subcommand)]
        command: MapsCommand,
    },
    /// Mod-2 homology covers and their girth-doubling certificates.
    Cover {
        #[command(subcommand)]
        command: CoverCommand,
    },
    /// Glue copies of a block along a gluing graph.
    Assemble {
        /// Map file or catalog name, e.g. `cube` or `beach_ball:3`.
        #[arg(long)]
        map: String,
        /// Graph or cover file, or catalog name such as `theta:6` or `complete:5`.
        #[arg(long)]
        graph: String,
        /// Replace the graph by this many iterated mod-2 homology covers first.
        #[arg(long, default_value_t = 0)]
        double: usize,
        /// Where to write the surface document.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the run report; stdout when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Analyze a surface document.
    Analyze {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run a named example end to end and check its known values.
    Reproduce {
        /// chain(g), k5, beachball_theta(q), doubled_theta_tower(d,n) or cube_theta6.
        example: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Numerical checks on right-angled and deformed polygons.
    VerifyLemmas {
        /// `3`, `3..12` or `3,5,7`; each value in 3..=12.
        #[arg(long, default_value = "3..12")]
        q: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write an object as JSON or DOT.
    Export {
        /// `graph:<name>`, `map:<name>`, `cover:<graph>`, `polygon:<q>[:<theta>]`,
        /// `intersection:<example>`, `surface:<example>` or `report:<example>`.
        what: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum MapsCommand {
    /// Print a catalog map.
    Emit {
        /// `tetrahedron`, `cube`, `octahedron`, `dodecahedron`, `icosahedron`,
        /// `beach_ball:q`, `theta_map:d` or `torus_grid:n`.
        name: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CoverCommand {
    /// Build iterated mod-2 homology covers and certify every level.
    Double {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 1)]
        iterations: usize,
        /// Where to write the composite cover document.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Certify that a cover document doubles girth.
    Certify {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Parses arguments, runs, and maps the outcome to an exit code:
/// 0 when every clause passes, 1 when one fails, 2 on error.
pub fn main() -> std::process::ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => std::process::ExitCode::SUCCESS,
        Ok(false) => std::process::ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::ExitCode::from(2)
        }
    }
}

pub fn settings(g: &GlobalArgs) -> Result<Settings> {
    let file = g.config.as_deref().map(FileConfig::load).transpose()?;
    let flags = FileConfig { max_cover_size: g.max_cover_size, tolerance: g.tolerance, theta: g.theta, seed: g.seed };
    Ok(Settings::resolve(file.as_ref(), &flags))
}

/// Runs one command; `Ok(false)` when some clause failed.
pub fn run(cli: &Cli) -> Result<bool> {
    let s = settings(&cli.global)?;
    let timings = cli.global.timings;
    match &cli.command {
        Command::Maps { command: MapsCommand::Emit { name, format, out } } => {
            let m = maps::by_name(name, None)?;
            let text = match format {
                Format::Json => formats::to_json_string(&MapDoc::from_map(&m)),
                Format::Dot => formats::graph_to_dot(m.graph(), &dot_name(name)),
            };
            write_output(out.as_deref(), &text)?;
            Ok(true)
        }
        Command::Cover { command: CoverCommand::Double { graph, iterations, out, report } } => {
            let (input, bytes) = load_graph(graph)?;
            let base = match input {
                GraphInput::Graph(g) => g,
                GraphInput::Cover(c) => c.total().clone(),
            };
            let mut r = RunReport::new(format!("cover double {graph} x{iterations}"));
            r.input(graph, &bytes);
            let levels = tower_over(&base, *iterations, s.max_cover_size)?;
            pipeline::cover_tower_clauses(&mut r, &levels);
            if let Some(path) = out {
                let composite = examples::compose_tower(&levels)?;
                write_output(Some(path), &formats::to_json_string(&CoverDoc::from_cover(&composite)))?;
            }
            emit_report(&r, report.as_deref(), timings)
        }
        Command::Cover { command: CoverCommand::Certify { cover, report } } => {
            let bytes = std::fs::read(cover).with_context(|| format!("reading {}", cover.display()))?;
            let doc: CoverDoc = serde_json::from_slice(&bytes).context("parsing cover document")?;
            let c = doc.to_cover()?;
            let mut r = RunReport::new(format!("cover certify {}", cover.display()));
            r.input(cover.display().to_string(), &bytes);
            pipeline::cover_tower_clauses(&mut r, &[c]);
            emit_report(&r, report.as_deref(), timings)
        }
        Command::Assemble { map, graph, double, out, report } => {
            let (m, map_bytes) = load_map(map)?;
            let (input, graph_bytes) = load_graph(graph)?;
            let mut r = RunReport::new(format!("assemble {map} {graph} x{double}"));
            r.input(map, &map_bytes);
            r.input(graph, &graph_bytes);
            let block = assembly::build_block(&m)?;
            let gluing = choose_gluing(&block, input, *double, s.max_cover_size, &mut r)?;
            let Some(gluing) = gluing else {
                return emit_report(&r, report.as_deref(), timings);
            };
            let x = assembly::assemble(&block, &gluing)?;
            r.lap("assemble");
            pipeline::surface_clauses(&mut r, &x, None, &s);
            if let Some(path) = out {
                let curves = x.trace_curves()?;
                write_output(Some(path), &formats::to_json_string(&SurfaceDoc::new(&x, &curves)))?;
            }
            emit_report(&r, report.as_deref(), timings)
        }
        Command::Analyze { surface, report } => {
            let bytes = std::fs::read(surface).with_context(|| format!("reading {}", surface.display()))?;
            let doc: SurfaceDoc = serde_json::from_slice(&bytes).context("parsing surface document")?;
            let (x, _) = doc.load()?;
            let r = pipeline::analyze(&x, &surface.display().to_string(), &bytes, &s);
            emit_report(&r, report.as_deref(), timings)
        }
        Command::Reproduce { example, report } => {
            let ex: Example = example.parse()?;
            let r = pipeline::reproduce(ex, &s)?;
            emit_report(&r, report.as_deref(), timings)
        }
        Command::VerifyLemmas { q, report } => {
            let qs = pipeline::parse_q_range(q)?;
            let r = pipeline::verify_lemmas(&qs, &s)?;
            emit_report(&r, report.as_deref(), timings)
        }
        Command::Export { what, format, out } => {
            let (text, passed) = export(what, *format, &s)?;
            write_output(out.as_deref(), &text)?;
            Ok(passed)
        }
    }
}

fn emit_report(r: &RunReport, path: Option<&Path>, timings: bool) -> Result<bool> {
    write_output(path, &r.to_json(timings))?;
    if !r.passed() {
        eprintln!("failed clauses: {}", r.failed_clauses().join(", "));
    }
    Ok(r.passed())
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dot_name(s: &str) -> String {
    let cleaned: String = s.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    if cleaned.starts_with(|c: char| c.is_ascii_digit()) {
        format!("g_{cleaned}")
    } else {
        cleaned
    }
}

pub enum GraphInput {
    Graph(HalfEdgeGraph),
    Cover(CoveringMap),
}

/// Reads a graph or cover document from a file, or looks the name up in the catalog.
/// Also returns the bytes that identify the input.
pub fn load_graph(spec: &str) -> Result<(GraphInput, Vec<u8>)> {
    if Path::new(spec).is_file() {
        let bytes = std::fs::read(spec)?;
        let v: serde_json::Value = serde_json::from_slice(&bytes).with_context(|| format!("parsing {spec}"))?;
        let input = if v.get("dart_map").is_some() {
            GraphInput::Cover(serde_json::from_value::<CoverDoc>(v)?.to_cover()?)
        } else {
            GraphInput::Graph(serde_json::from_value::<GraphDoc>(v)?.to_graph()?)
        };
        return Ok((input, bytes));
    }
    let g = graphs::by_name(spec).with_context(|| format!("`{spec}` is neither a file nor a catalog graph"))?;
    let bytes = formats::to_json_string(&GraphDoc::from_graph(&g)).into_bytes();
    Ok((GraphInput::Graph(g), bytes))
}

pub fn load_map(spec: &str) -> Result<(RotationMap, Vec<u8>)> {
    if Path::new(spec).is_file() {
        let bytes = std::fs::read(spec)?;
        let doc: MapDoc = serde_json::from_slice(&bytes).with_context(|| format!("parsing {spec}"))?;
        return Ok((doc.to_map()?, bytes));
    }
    let m = maps::by_name(spec, None)?;
    let bytes = formats::to_json_string(&MapDoc::from_map(&m)).into_bytes();
    Ok((m, bytes))
}

fn tower_over(g: &HalfEdgeGraph, n: usize, cap: usize) -> Result<Vec<CoveringMap>> {
    let mut levels: Vec<CoveringMap> = Vec::with_capacity(n);
    let mut current = g.clone();
    for _ in 0..n {
        let c = covers::mod2_homology_cover(&current, cap)?;
        current = c.total().clone();
        levels.push(c);
    }
    Ok(levels)
}

fn is_theta(g: &HalfEdgeGraph) -> bool {
    g.num_vertices() == 2 && (0..g.num_edges()).all(|e| !g.is_loop(e))
}

/// A cover of a theta graph is glued by its pulled-back colors; any other
/// graph goes through the gluing search.
fn choose_gluing(
    block: &assembly::Block,
    input: GraphInput,
    double: usize,
    cap: usize,
    r: &mut RunReport,
) -> Result<Option<Gluing>> {
    let cover = match input {
        GraphInput::Cover(c) => Some(c),
        GraphInput::Graph(g) if is_theta(&g) => Some(CoveringMap::identity(&g)),
        GraphInput::Graph(g) => {
            let levels = tower_over(&g, double, cap)?;
            let top = levels.last().map_or(g, |c| c.total().clone());
            let out = search::search_gluings(block, &top, |_| true);
            let found = out.gluing.is_some();
            r.check(
                "gluing_found",
                "some signs and shifts close every blue curve after p steps",
                found,
                json!({ "closing_gluings_seen": exact(out.closing_gluings), "search_nodes": exact(out.nodes) }),
            );
            return Ok(out.gluing);
        }
    };
    let mut cover = cover.expect("set above");
    if double > 0 {
        let levels = tower_over(cover.total(), double, cap)?;
        let top = examples::compose_tower(&levels)?;
        cover = CoveringMap::compose(&top, &cover)?;
    }
    let cg = covers::make_colored_gluing_graph(&cover)?;
    r.check(
        "colored_gluing_graph",
        "the gluing graph carries proper signs and edge colors pulled back from the theta graph",
        true,
        json!({ "vertices": exact(cg.graph().num_vertices()), "colors": exact(cg.valence()) }),
    );
    Ok(Some(Gluing::from_colored(&cg)))
}

/// Renders an export target; the flag is false only for a failing report.
pub fn export(what: &str, format: Format, s: &Settings) -> Result<(String, bool)> {
    let (kind, arg) = what.split_once(':').unwrap_or((what, ""));
    let json_only = |fmt: Format| -> Result<()> {
        if fmt == Format::Dot {
            bail!("`{kind}` exports only as JSON");
        }
        Ok(())
    };
    Ok(match kind {
        "graph" => {
            let g = graphs::by_name(arg).with_context(|| format!("unknown graph `{arg}`"))?;
            match format {
                Format::Json => (formats::to_json_string(&GraphDoc::from_graph(&g)), true),
                Format::Dot => (formats::graph_to_dot(&g, &dot_name(arg)), true),
            }
        }
        "map" => {
            let m = maps::by_name(arg, None)?;
            match format {
                Format::Json => (formats::to_json_string(&MapDoc::from_map(&m)), true),
                Format::Dot => (formats::graph_to_dot(m.graph(), &dot_name(arg)), true),
            }
        }
        "cover" => {
            let g = graphs::by_name(arg).with_context(|| format!("unknown graph `{arg}`"))?;
            let c = covers::mod2_homology_cover(&g, s.max_cover_size)?;
            match format {
                Format::Json => (formats::to_json_string(&CoverDoc::from_cover(&c)), true),
                Format::Dot => (formats::graph_to_dot(c.total(), &dot_name(&format!("cover_{arg}"))), true),
            }
        }
        "polygon" => {
            json_only(format)?;
            let (q, theta) = match arg.split_once(':') {
                Some((q, t)) => (q.parse()?, t.parse()?),
                None => (arg.parse()?, FRAC_PI_2),
            };
            (formats::to_json_string(&PolygonDoc::from_polygon(&build_polygon(q, theta)?)), true)
        }
        "intersection" => {
            let ex: Example = arg.parse()?;
            let x = ex.surface(s.max_cover_size)?;
            let curves = x.trace_curves()?;
            let d = analysis::intersection_data(&x, &curves)?;
            match format {
                Format::Json => (formats::to_json_string(&d.a.to_rows()), true),
                Format::Dot => (formats::intersection_to_dot(&d, &dot_name(&ex.to_string())), true),
            }
        }
        "surface" => {
            json_only(format)?;
            let ex: Example = arg.parse()?;
            let x = ex.surface(s.max_cover_size)?;
            let curves = x.trace_curves()?;
            (formats::to_json_string(&SurfaceDoc::new(&x, &curves)), true)
        }
        "report" => {
            json_only(format)?;
            let r = pipeline::reproduce(arg.parse()?, s)?;
            (r.to_json(false), r.passed())
        }
        _ => bail!("unknown export target `{what}`"),
    })
}
