#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use wu_core::export::{render_svg, tube_dot, tube_dump};
use wu_core::generators::{even_star, planar_k4, random_immersion, standard_curve, standard_star};
use wu_core::immersion::{validate_generic, ImmersionData, PlaneImmersion, DEFAULT_REL_TOL};
use wu_core::moves::{apply_moves, MoveRecord};
use wu_core::oracle::cell_census;
use wu_core::tube::{rank, SymmetricTube};
use wu_core::wu::{compare, wu_with, Tracer, WuOptions, WuVector};
use wu_core::{EdgeCycle, Error, Graph, GraphData};

#[derive(Parser)]
#[command(
    name = "wu",
    version,
    about = "Regular homotopy invariants of plane drawings of graphs"
)]
struct Cli {
    /// Genericity tolerance, relative to the bounding-box diagonal.
    #[arg(long, global = true, env = "WU_TOL", default_value_t = DEFAULT_REL_TOL)]
    tol: f64,

    /// Tracing scale; must not exceed the suggested scale.
    #[arg(long, global = true, env = "WU_EPS")]
    eps: Option<f64>,

    /// Seed for randomized generators and perturbations.
    #[arg(long, global = true, env = "WU_SEED", default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Print the conventions fingerprint after text output.
    #[arg(long, global = true)]
    fingerprint: bool,

    /// Evaluate basis elements one at a time.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a drawing is a generic immersion.
    Validate { immersion: PathBuf },
    /// Print the symmetric tube of a graph.
    Tube {
        graph: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Rank of the invariant lattice.
    Rank { graph: PathBuf },
    /// Basis labels, in coordinate order.
    Basis { graph: PathBuf },
    /// Compute the invariant vector.
    Invariant { immersion: PathBuf },
    /// Compare the invariants of two drawings of the same graph.
    Equiv { a: PathBuf, b: PathBuf },
    /// Evaluate the class on the tube lift of a graph cycle.
    Rotation {
        immersion: PathBuf,
        /// Signed edge ids, e.g. `3,-2,1`.
        #[arg(long, allow_hyphen_values = true)]
        cycle: String,
    },
    /// Generate a fixture drawing.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Apply a JSON list of moves.
    Move { immersion: PathBuf, moves: PathBuf },
    /// Draw an immersion.
    Render {
        immersion: PathBuf,
        #[arg(long)]
        svg: bool,
    },
    /// Cell counts of a graph.
    Census { graph: PathBuf },
}

#[derive(Subcommand)]
enum GenKind {
    /// Triangle whose cycle v2 v3 v1 has rotation number R.
    Curve {
        #[arg(allow_negative_numbers = true)]
        r: i64,
    },
    /// Star with the given counterclockwise order of edge ids.
    Star {
        /// Edge ids, e.g. `1,3,2`.
        #[arg(long)]
        order: String,
        /// Germ angles in degrees, one per entry of the order.
        #[arg(long)]
        angles: Option<String>,
    },
    /// K4: planar, or random with bends when `--random` is set.
    K4 {
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 2)]
        bends: usize,
    },
    /// Random drawing of the graph in a file.
    Random {
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        bends: usize,
    },
}

enum Failure {
    Core(Error),
    Input(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_numeric() => 2,
            _ => 1,
        }
    }

    fn report(&self) -> serde_json::Value {
        match self {
            Failure::Core(e) => json!({"error": e.kind(), "message": e.to_string()}),
            Failure::Input(m) => json!({"error": "input", "message": m}),
            Failure::Invalid(m) => json!({"error": "invalid_argument", "message": m}),
        }
    }
}

type Output = Result<String, Failure>;

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Ok(Graph::from_data(&read::<GraphData>(path)?)?)
}

fn load_immersion(path: &Path) -> Result<PlaneImmersion, Failure> {
    Ok(PlaneImmersion::from_data(&read::<ImmersionData>(path)?)?)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Failure::Invalid(format!("bad {what} entry `{x}`")))
        })
        .collect()
}

impl Cli {
    fn options(&self) -> WuOptions {
        WuOptions {
            rel_tol: self.tol,
            eps: self.eps,
            parallel: !self.sequential,
        }
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn vector_text(&self, w: &WuVector) -> String {
        let mut out = String::new();
        for (l, v) in w.basis.iter().zip(&w.vector) {
            out.push_str(&format!("{l} = {v}\n"));
        }
        if self.fingerprint {
            out.push_str(&format!("fingerprint {}\n", w.fingerprint));
        }
        out
    }

    fn run(&self) -> Output {
        if !(self.tol > 0.0) {
            return Err(Failure::Invalid(format!("--tol must be positive, got {}", self.tol)));
        }
        match &self.command {
            Command::Validate { immersion } => {
                let f = load_immersion(immersion)?;
                let report = validate_generic(&f, self.tol);
                let out = match self.format(Format::Json) {
                    Format::Text if report.pass => {
                        format!("generic: {} crossings, eps {:e}\n", report.crossings.len(), report.eps)
                    }
                    Format::Text => report.violations.iter().map(|v| format!("{}\n", v.message)).collect(),
                    _ => to_json(&report),
                };
                if report.pass {
                    Ok(out)
                } else {
                    print!("{out}");
                    Err(Failure::Core(report.into_result().unwrap_err()))
                }
            }
            Command::Tube { graph, dot } => {
                let t = SymmetricTube::build(&load_graph(graph)?);
                let default = if *dot { Format::Dot } else { Format::Json };
                Ok(match self.format(default) {
                    Format::Dot => tube_dot(&t),
                    _ => to_json(&tube_dump(&t)),
                })
            }
            Command::Rank { graph } => Ok(format!("{}\n", rank(&load_graph(graph)?))),
            Command::Basis { graph } => {
                let t = SymmetricTube::build(&load_graph(graph)?);
                Ok(match self.format(Format::Json) {
                    Format::Text => t.basis().labels.iter().map(|l| format!("{l}\n")).collect(),
                    _ => to_json(&t.basis().labels),
                })
            }
            Command::Invariant { immersion } => {
                let w = wu_with(&load_immersion(immersion)?, &self.options())?;
                Ok(match self.format(Format::Json) {
                    Format::Text => self.vector_text(&w),
                    _ => to_json(&w),
                })
            }
            Command::Equiv { a, b } => {
                let (f, g) = (load_immersion(a)?, load_immersion(b)?);
                if f.graph() != g.graph() {
                    return Err(Error::Mismatch("the drawings are of different labelled graphs".into()).into());
                }
                let (wf, wg) = (wu_with(&f, &self.options())?, wu_with(&g, &self.options())?);
                let same = compare(&wf, &wg)?;
                Ok(match self.format(Format::Text) {
                    Format::Json => to_json(&json!({
                        "equivalent": same,
                        "a": wf.vector,
                        "b": wg.vector,
                        "fingerprint": wf.fingerprint,
                    })),
                    _ if self.fingerprint => format!("equivalent: {same}\nfingerprint {}\n", wf.fingerprint),
                    _ => format!("equivalent: {same}\n"),
                })
            }
            Command::Rotation { immersion, cycle } => {
                let f = load_immersion(immersion)?;
                let signed: Vec<i64> = parse_list(cycle, "cycle")?;
                let c = EdgeCycle::from_signed(f.graph(), &signed)?;
                let tracer = Tracer::new(&f, &self.options())?;
                let value = tracer.evaluate(&tracer.tube().cycle_over_graph_cycle(&c)?)?;
                let turning = f.cycle_turning_number(&c)?;
                Ok(match self.format(Format::Json) {
                    Format::Text => format!("evaluation: {value}\nturning number: {turning}\n"),
                    _ => to_json(&json!({"cycle": signed, "evaluation": value, "turning_number": turning})),
                })
            }
            Command::Gen { kind } => {
                let f = match kind {
                    GenKind::Curve { r } => standard_curve(*r)?,
                    GenKind::Star { order, angles: None } => even_star(&parse_list(order, "order")?)?,
                    GenKind::Star { order, angles: Some(a) } => {
                        let deg: Vec<f64> = parse_list(a, "angle")?;
                        let rad: Vec<f64> = deg.iter().map(|d| d.to_radians()).collect();
                        standard_star(&parse_list(order, "order")?, &rad)?
                    }
                    GenKind::K4 { random: false, .. } => planar_k4()?,
                    GenKind::K4 { random: true, bends } => random_immersion(&Graph::complete(4)?, self.seed, *bends)?,
                    GenKind::Random { graph, bends } => random_immersion(&load_graph(graph)?, self.seed, *bends)?,
                };
                Ok(to_json(&f.to_data()))
            }
            Command::Move { immersion, moves } => {
                let f = load_immersion(immersion)?;
                let moves: Vec<MoveRecord> = read(moves)?;
                Ok(to_json(&apply_moves(&f, &moves)?.to_data()))
            }
            Command::Render { immersion, svg } => {
                let f = load_immersion(immersion)?;
                match self.format(Format::Svg) {
                    Format::Svg => Ok(render_svg(&f)),
                    _ if *svg => Ok(render_svg(&f)),
                    _ => Err(Failure::Invalid("render only produces SVG".into())),
                }
            }
            Command::Census { graph } => Ok(to_json(&cell_census(&load_graph(graph)?))),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.run() {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("{}", failure.report());
            ExitCode::from(failure.code())
        }
    }
}
