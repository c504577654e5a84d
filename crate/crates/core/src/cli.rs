//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for invalid input, 2 when a theorem check fails
//! (a witness file is written in that case).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::clock::{half_to_string, ClockAnalysis, MoveKind};
use crate::crowell::{compare, singular_from_pd, Comparison, CrowellGraph, PdCode};
use crate::error::{Error, Result, Violation};
use crate::kauffman::DecoratedDiagram;
use crate::laurent::HalfPoly;
use crate::plane_graph::{PlaneGraph, RawGraph, ValidationReport};
use crate::spanning::SpanningModel;
use crate::theorems::{verify, VerifyReport};
use crate::{alexander, spanning_ready, Method};

#[derive(Parser, Debug)]
#[command(name = "moy", version, about = "Alexander polynomials of plane MOY graphs")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Statesum,
    Spanning,
    Matrixtree,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the graph file against every structural invariant
    Validate { file: PathBuf },
    /// Compute the Alexander polynomial
    Alexander {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
    /// List spanning trees as lattice points
    Trees { file: PathBuf },
    /// Print the Kauffman states as `crossing:corner` blocks
    States { file: PathBuf },
    /// The clock-move graph on spanning trees
    ClockGraph {
        file: PathBuf,
        /// Emit Graphviz DOT instead of a move list
        #[arg(long)]
        dot: bool,
    },
    /// Maximal rectangles of locally equivalent trees
    Rectangles { file: PathBuf },
    /// Crowell's weighted tree sum of an alternating knot diagram
    Crowell {
        pd: PathBuf,
        /// 1-based crossing used as the root
        #[arg(long, default_value_t = 1)]
        root: usize,
    },
    /// Compare the Crowell polynomial with that of the singular projection
    Compare { pd: PathBuf },
    /// Replace every edge by parallel edges of color 1
    Reduce { file: PathBuf },
    /// Generate a random valid graph
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        size: usize,
    },
    /// Run every theorem check on a graph
    Verify { file: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderOutput {
    pub polynomial: HalfPoly,
    pub methods: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeLine {
    pub point: Vec<u32>,
    pub norm: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveLine {
    pub from: Vec<u32>,
    pub to: Vec<u32>,
    pub kind: MoveKind,
    pub degree_shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectangleLine {
    pub lower: Vec<u32>,
    pub upper: Vec<u32>,
    pub size: usize,
    pub average: String,
    pub contribution: HalfPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrowellOutput {
    pub polynomial: HalfPoly,
    pub trees: u64,
    pub root: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateBlock {
    pub corners: Vec<String>,
    pub monomial: HalfPoly,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub check: String,
    pub detail: String,
    pub points: Vec<Vec<u32>>,
    pub graph: Option<RawGraph>,
    pub pd: Option<String>,
}

enum Input {
    Graph(PlaneGraph),
    Pd(String),
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<PlaneGraph> {
    PlaneGraph::from_json(&read(path)?)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let mut context = None;
    match dispatch(&cli, out, &mut context) {
        Ok(()) => 0,
        Err(Error::Violation(v)) => {
            let (graph, pd) = match context {
                Some(Input::Graph(g)) => (Some(g.to_raw()), None),
                Some(Input::Pd(s)) => (None, Some(s)),
                None => (None, None),
            };
            let path = write_witness(&v, graph, pd);
            let _ = writeln!(err, "theorem violation: {v}");
            match path {
                Ok(p) => {
                    let _ = writeln!(err, "witness written to {}", p.display());
                }
                Err(e) => {
                    let _ = writeln!(err, "could not write witness: {e}");
                }
            }
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Writes `moy-witness-<check>.json` into `$MOY_WITNESS_DIR` (default: the current directory).
pub fn write_witness(v: &Violation, graph: Option<RawGraph>, pd: Option<String>) -> Result<PathBuf> {
    let w = Witness {
        check: v.check.to_string(),
        detail: v.detail.clone(),
        points: v.points.iter().map(|p| p.0.clone()).collect(),
        graph,
        pd,
    };
    let dir = std::env::var_os("MOY_WITNESS_DIR").map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
    let path = dir.join(format!("moy-witness-{}.json", v.check));
    std::fs::write(&path, serde_json::to_string_pretty(&w)? + "\n")?;
    Ok(path)
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(value)?)?,
        Format::Text => write!(out, "{}", text())?,
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write, context: &mut Option<Input>) -> Result<()> {
    let f = cli.format;
    match &cli.command {
        Command::Validate { file } => {
            let g = load_graph(file)?;
            let report: ValidationReport = g.validate();
            emit(out, f, &report, || {
                if report.is_valid() {
                    format!("OK\n{report}")
                } else {
                    format!("INVALID\n{report}")
                }
            })?;
            if !report.is_valid() {
                let c = report.first_failure().expect("invalid");
                return Err(Error::InvalidGraph(c.name.clone()));
            }
        }
        Command::Alexander { file, method } => {
            let g = load_graph(file)?;
            *context = Some(Input::Graph(g.clone()));
            let methods = match method {
                MethodArg::Statesum => vec![Method::StateSum],
                MethodArg::Spanning => vec![Method::Spanning],
                MethodArg::Matrixtree => vec![Method::MatrixTree],
                MethodArg::All => vec![Method::StateSum, Method::Spanning, Method::MatrixTree],
            };
            let mut results = Vec::new();
            for m in &methods {
                results.push(alexander(&g, *m)?);
            }
            if results.windows(2).any(|w| w[0] != w[1]) {
                let detail = methods
                    .iter()
                    .zip(&results)
                    .map(|(m, p)| format!("{m:?}: {p}"))
                    .collect::<Vec<_>>()
                    .join(", ");
                return Err(Error::violation("oracle-triangle", detail, vec![]));
            }
            let o = AlexanderOutput {
                polynomial: results[0].clone(),
                methods: methods.iter().map(|m| format!("{m:?}").to_lowercase()).collect(),
            };
            emit(out, f, &o, || format!("{}\n", o.polynomial))?;
        }
        Command::Trees { file } => {
            let g = spanning_ready(&load_graph(file)?)?;
            *context = Some(Input::Graph(g.clone()));
            let trees = SpanningModel::new(&g)?.enumerate_trees()?;
            let lines: Vec<TreeLine> =
                trees.points.iter().map(|p| TreeLine { point: p.0.clone(), norm: p.norm() }).collect();
            emit(out, f, &lines, || {
                trees.points.iter().map(|p| format!("{} |{}|\n", p.csv(), p.norm())).collect()
            })?;
        }
        Command::States { file } => {
            let g = load_graph(file)?;
            g.ensure_valid()?;
            let d = DecoratedDiagram::new(&g)?;
            let states = d.enumerate_states();
            let blocks = states
                .iter()
                .map(|s| {
                    Ok(StateBlock {
                        corners: d.export_state(s).lines().map(str::to_string).collect(),
                        monomial: d.state_monomial(s)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            emit(out, f, &blocks, || {
                blocks.iter().map(|b| b.corners.join("\n") + "\n\n").collect()
            })?;
        }
        Command::ClockGraph { file, dot } => {
            let g = spanning_ready(&load_graph(file)?)?;
            *context = Some(Input::Graph(g.clone()));
            let a = ClockAnalysis::new(&g)?;
            let moves = a.all_moves()?;
            if *dot && f == Format::Text {
                write!(out, "{}", a.to_dot(&moves))?;
            } else {
                let lines: Vec<MoveLine> = moves
                    .iter()
                    .map(|m| MoveLine {
                        from: m.from.0.clone(),
                        to: m.to.0.clone(),
                        kind: m.kind,
                        degree_shift: m.degree_shift,
                    })
                    .collect();
                emit(out, f, &lines, || {
                    moves.iter().map(|m| format!("{} -> {} {:?} {:+}\n", m.from, m.to, m.kind, m.degree_shift)).collect()
                })?;
            }
        }
        Command::Rectangles { file } => {
            let g = spanning_ready(&load_graph(file)?)?;
            *context = Some(Input::Graph(g.clone()));
            let a = ClockAnalysis::new(&g)?;
            let rects = a.maximal_rectangles()?;
            let lines: Vec<RectangleLine> = rects
                .iter()
                .map(|r| RectangleLine {
                    lower: r.lower.clone(),
                    upper: r.upper.clone(),
                    size: r.size(),
                    average: half_to_string(r.average_twice),
                    contribution: r.contribution(),
                })
                .collect();
            emit(out, f, &lines, || {
                rects
                    .iter()
                    .map(|r| {
                        format!(
                            "{} size {} A {} {}\n",
                            r.bounds_string(),
                            r.size(),
                            half_to_string(r.average_twice),
                            r.contribution()
                        )
                    })
                    .collect()
            })?;
        }
        Command::Crowell { pd, root } => {
            let text = read(pd)?;
            *context = Some(Input::Pd(text.clone()));
            let cg = CrowellGraph::from_pd(&PdCode::parse(&text)?)?;
            if *root == 0 || *root > cg.vertex_count {
                return Err(Error::Precondition(format!("root must be between 1 and {}", cg.vertex_count)));
            }
            let (trees, polynomial) = cg.alexander(root - 1)?;
            let o = CrowellOutput { polynomial, trees, root: *root };
            emit(out, f, &o, || format!("{}\ntrees {}\n", o.polynomial, o.trees))?;
        }
        Command::Compare { pd } => {
            let text = read(pd)?;
            *context = Some(Input::Pd(text.clone()));
            let c: Comparison = compare(&PdCode::parse(&text)?)?;
            emit(out, f, &c, || {
                format!(
                    "{}\ncrowell {}, trees {}\nsingular {}, trees {}\n",
                    if c.equal { "EQUAL" } else { "UNEQUAL" },
                    c.crowell,
                    c.crowell_trees,
                    c.singular,
                    c.singular_trees
                )
            })?;
        }
        Command::Reduce { file } => {
            let g = load_graph(file)?;
            g.ensure_valid()?;
            let r = g.reduce_to_trivial()?;
            write!(out, "{}", r.to_json())?;
        }
        Command::Gen { seed, size } => {
            let g = crate::generate(*seed, *size)?;
            write!(out, "{}", g.to_json())?;
        }
        Command::Verify { file } => {
            let text = read(file)?;
            let g = if file.extension().is_some_and(|e| e == "pd") {
                *context = Some(Input::Pd(text.clone()));
                singular_from_pd(&PdCode::parse(&text)?)?
            } else {
                PlaneGraph::from_json(&text)?
            };
            if context.is_none() {
                *context = Some(Input::Graph(g.clone()));
            }
            let r: VerifyReport = verify(&g)?;
            emit(out, f, &r, || {
                format!(
                    "OK {}\ntrees {}\nmoves {} local, {} global\nrectangles {} with average {}\nchecks {}\n",
                    r.delta,
                    r.tree_count,
                    r.local_moves,
                    r.global_moves,
                    r.rectangles,
                    r.axis,
                    r.checks.join(", ")
                )
            })?;
        }
    }
    Ok(())
}
