//! The `qgs` command line.
//!
//! Every command reads a graph file and writes JSON or CSV to `--out` or
//! standard output. Exit codes: 0 success, 1 validation error, 2 numerical
//! failure, 3 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, ErrorKind, Result};
use crate::graph::{build_operator, validate_partial_isometry, GraphSpec, TimeStepOperator};
use crate::io::{self, parse_complex};
use crate::prune::{self, PrunedGraph, PrunedGraphFile};
use crate::response::{self, ImpulseResponse, Signal};
use crate::scatter::{self, ScatterFunction};
use crate::sounding;

#[derive(Debug, Parser)]
#[command(
    name = "qgs",
    version,
    about = "Scattering and impulse responses of quantum walks on graphs with runways"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Closed form when it applies, otherwise DFT.
    Auto,
    Closed,
    Dft,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Recipe {
    Star,
    Complete,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Port used for both input and output.
    #[arg(long)]
    pub port: Option<String>,
    /// Input and output port (names, or 1-based numbers).
    #[arg(long, num_args = 2, value_names = ["J", "K"])]
    pub pair: Option<Vec<String>>,
    /// Grid size for sweeps and DFTs [default: 4096].
    #[arg(long)]
    pub grid: Option<usize>,
    /// Sequence length / number of steps.
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    /// Pass/fail tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Output file (standard output when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

impl Common {
    fn grid(&self) -> usize {
        self.grid.unwrap_or(4096)
    }

    fn check(&self) -> Result<()> {
        if self.grid == Some(0) || self.n == 0 || self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidArgument("--grid, --n and --tol must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Args)]
pub struct Drive {
    /// Input signal CSV with header `n,re,im`.
    #[arg(long)]
    pub signal: Option<PathBuf>,
    /// Monochromatic input `x[n] = lambda^n` (e.g. `0+1i`).
    #[arg(long, allow_hyphen_values = true)]
    pub mono: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic polynomials and scattering values.
    Scatter {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Evaluation point `a+bi`; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        eval: Vec<String>,
        /// Resolvent matrix over every port pair at each point.
        #[arg(long)]
        all_pairs: bool,
        /// Multiply by `z^delay`.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        delay: i32,
    },
    /// Impulse response.
    Impulse {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        delay: i32,
        /// Runway length for the oracle [default: n + 2].
        #[arg(long)]
        runway: Option<usize>,
    },
    /// Response to an input signal.
    Respond {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        drive: Drive,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        delay: i32,
    },
    /// Phase sweep, winding number and resonances.
    Sound {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        delay: i32,
        /// Slope threshold for resonances [default: 10 x median slope].
        #[arg(long)]
        threshold: Option<f64>,
        /// Double the grid until the winding is stable.
        #[arg(long)]
        auto: bool,
        /// Also write the sweep CSV here.
        #[arg(long)]
        sweep: Option<PathBuf>,
        /// Structure estimate to report.
        #[arg(long, value_enum)]
        recipe: Option<Recipe>,
    },
    /// Replace subgraphs by frequency-dependent vertices.
    Prune {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Edge `OUTER INNER`; the side containing INNER is collapsed.
        #[arg(long, num_args = 2, value_names = ["OUTER", "INNER"], required = true)]
        cut: Vec<String>,
    },
    /// Compare a pruned graph with the full graph on the unit circle.
    Verify {
        full: PathBuf,
        pruned: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Step the graph with truncated runways attached.
    Simulate {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        drive: Drive,
        /// Runway length [default: the minimum that is exact].
        #[arg(long)]
        runway: Option<usize>,
    },
    /// Check a graph file and its time-step operator.
    Validate {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e.kind() {
                ErrorKind::Validation => 1,
                ErrorKind::Numerical => 2,
                ErrorKind::Io => 3,
            }
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("QGS_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Error::InvalidArgument(format!("QGS_THREADS=`{v}` is not a positive integer")))?;
    // a pool built earlier in the same process wins
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn emit<W: Write>(out: &mut W, common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(p) => io::write_text(p, text),
        None => out.write_all(text.as_bytes()).map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn load_any(path: &Path) -> Result<(GraphSpec, Option<PrunedGraph>)> {
    let text = io::read_text(path)?;
    let file: PrunedGraphFile = serde_json::from_str(&text).map_err(|source| Error::Json {
        context: path.display().to_string(),
        source,
    })?;
    file.graph.validate()?;
    if file.frequency_vertices.is_empty() {
        Ok((file.graph, None))
    } else {
        let spec = file.graph.clone();
        Ok((spec, Some(PrunedGraph::from_file(file)?)))
    }
}

fn load_plain(path: &Path) -> Result<GraphSpec> {
    match load_any(path)? {
        (spec, None) => Ok(spec),
        _ => Err(Error::Unsupported(format!(
            "{}: this command needs a graph without frequency vertices",
            path.display()
        ))),
    }
}

fn select_pair(u0: &TimeStepOperator, common: &Common) -> Result<(usize, usize)> {
    if u0.ports().is_empty() {
        return Err(Error::InvalidGraph("the graph declares no ports".into()));
    }
    match (&common.pair, &common.port) {
        (Some(p), _) => Ok((u0.port_position(&p[0])?, u0.port_position(&p[1])?)),
        (None, Some(p)) => {
            let i = u0.port_position(p)?;
            Ok((i, i))
        }
        (None, None) => Ok((0, 0)),
    }
}

fn drive_signal(drive: &Drive, len: usize) -> Result<Signal> {
    match (&drive.signal, &drive.mono) {
        (Some(_), Some(_)) => Err(Error::InvalidArgument("give --signal or --mono, not both".into())),
        (Some(p), None) => io::read_signal_csv(p),
        (None, Some(l)) => Ok(Signal::monochromatic(parse_complex(l)?, len)),
        (None, None) => Ok(Signal::delta(1)),
    }
}

fn execute<W: Write>(cmd: &Command, out: &mut W) -> Result<i32> {
    match cmd {
        Command::Scatter {
            graph,
            common,
            eval,
            all_pairs,
            delay,
        } => cmd_scatter(graph, common, eval, *all_pairs, *delay, out),
        Command::Impulse {
            graph,
            common,
            method,
            delay,
            runway,
        } => cmd_impulse(graph, common, *method, *delay, *runway, out),
        Command::Respond {
            graph,
            common,
            drive,
            method,
            delay,
        } => cmd_respond(graph, common, drive, *method, *delay, out),
        Command::Sound {
            graph,
            common,
            delay,
            threshold,
            auto,
            sweep,
            recipe,
        } => cmd_sound(graph, common, *delay, *threshold, *auto, sweep.as_deref(), *recipe, out),
        Command::Prune { graph, common, cut } => cmd_prune(graph, common, cut, out),
        Command::Verify { full, pruned, common } => cmd_verify(full, pruned, common, out),
        Command::Simulate {
            graph,
            common,
            drive,
            runway,
        } => cmd_simulate(graph, common, drive, *runway, out),
        Command::Validate { graph, common } => cmd_validate(graph, common, out),
    }
}

#[derive(Serialize)]
struct Sample {
    z: Complex64,
    value: Complex64,
}

#[derive(Serialize)]
struct ScatterReport<'a> {
    in_port: &'a str,
    out_port: &'a str,
    delay: i32,
    f_full: &'a [Complex64],
    g_full: &'a [Complex64],
    b: &'a [Complex64],
    f_red: &'a [Complex64],
    g_red: &'a [Complex64],
    s: usize,
    g0: Complex64,
    d: usize,
    etas: &'a [Complex64],
    bound_states: Vec<Complex64>,
    samples: Vec<Sample>,
}

#[derive(Serialize)]
struct MatrixPoint {
    z: Complex64,
    /// Rows are out-ports, columns in-ports.
    matrix: Vec<Vec<Complex64>>,
}

#[derive(Serialize)]
struct MatrixReport {
    ports: Vec<String>,
    delay: i32,
    points: Vec<MatrixPoint>,
}

fn eval_points(eval: &[String], grid: Option<usize>) -> Result<Vec<Complex64>> {
    let mut zs: Vec<Complex64> = eval.iter().map(|s| parse_complex(s)).collect::<Result<_>>()?;
    if let Some(k) = grid {
        zs.extend(scatter::circle_points(k, 0.0));
    }
    Ok(zs)
}

fn cmd_scatter<W: Write>(
    graph: &Path,
    common: &Common,
    eval: &[String],
    all_pairs: bool,
    delay: i32,
    out: &mut W,
) -> Result<i32> {
    common.check()?;
    let (spec, pruned) = load_any(graph)?;
    let zs = eval_points(eval, common.grid)?;

    if all_pairs || pruned.is_some() {
        let u0 = match &pruned {
            Some(pg) => pg.operator().clone(),
            None => build_operator(&spec)?,
        };
        if zs.is_empty() {
            return Err(Error::InvalidArgument(
                "give --eval or --grid points for this evaluation".into(),
            ));
        }
        let n = u0.ports().len();
        let names: Vec<String> = u0.ports().iter().map(|p| p.name.clone()).collect();
        let pairs: Vec<(usize, usize)> = if all_pairs {
            (0..n).flat_map(|k| (0..n).map(move |j| (j, k))).collect()
        } else {
            vec![select_pair(&u0, common)?]
        };
        let mut points = Vec::with_capacity(zs.len());
        for z in &zs {
            let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
            let full = match &pruned {
                None => Some(scatter::resolvent_scatter(&u0, *z)?),
                Some(_) => None,
            };
            for (j, k) in &pairs {
                let v = match (&pruned, &full) {
                    (Some(pg), _) => prune::pruned_scatter_eval_removable(pg, *j, *k, *z)?,
                    (None, Some(s)) => s[(*k, *j)],
                    (None, None) => unreachable!(),
                };
                m[*k][*j] = z.powi(delay) * v;
            }
            points.push(MatrixPoint { z: *z, matrix: m });
        }
        let text = match common.format {
            Format::Json => io::to_json(&MatrixReport {
                ports: names,
                delay,
                points,
            })?,
            Format::Csv => {
                let mut rows = String::from("z_re,z_im,in,out,re,im\n");
                for p in &points {
                    for (j, k) in &pairs {
                        let v = p.matrix[*k][*j];
                        rows.push_str(&format!(
                            "{},{},{},{},{},{}\n",
                            io::fmt_f64(p.z.re),
                            io::fmt_f64(p.z.im),
                            names[*j],
                            names[*k],
                            io::fmt_f64(v.re),
                            io::fmt_f64(v.im)
                        ));
                    }
                }
                rows
            }
        };
        emit(out, common, &text)?;
        return Ok(0);
    }

    let u0 = build_operator(&spec)?;
    let (j, k) = select_pair(&u0, common)?;
    let sf = ScatterFunction::from_operator(&u0, j, k)?.with_delay(delay);
    let samples: Vec<Sample> = zs
        .iter()
        .map(|z| {
            Ok(Sample {
                z: *z,
                value: sf.eval(*z)?,
            })
        })
        .collect::<Result<_>>()?;
    let text = match common.format {
        Format::Csv => io::samples_csv(&samples.iter().map(|s| (s.z, s.value)).collect::<Vec<_>>()),
        Format::Json => {
            let dec = &sf.decomposition;
            io::to_json(&ScatterReport {
                in_port: &u0.ports()[j].name,
                out_port: &u0.ports()[k].name,
                delay,
                f_full: dec.f_full.coeffs(),
                g_full: dec.g_full.coeffs(),
                b: dec.b.coeffs(),
                f_red: dec.f_red.coeffs(),
                g_red: dec.g_red.coeffs(),
                s: dec.s,
                g0: dec.g0,
                d: dec.d,
                etas: &dec.etas.nonzero,
                bound_states: dec.bound_roots(),
                samples,
            })?
        }
    };
    emit(out, common, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct ModeJson {
    omega: Complex64,
    eta: Complex64,
}

#[derive(Serialize)]
struct ImpulseJson {
    s: usize,
    omega0: Option<Complex64>,
    modes: Vec<ModeJson>,
    sequence: Vec<Complex64>,
    method: &'static str,
    fell_back: bool,
}

fn impulse_json(h: &ImpulseResponse) -> ImpulseJson {
    let closed = h.method == response::Method::ClosedForm;
    ImpulseJson {
        s: h.s,
        omega0: closed.then_some(h.omega0),
        modes: h
            .modes
            .iter()
            .map(|m| ModeJson {
                omega: m.omega,
                eta: m.eta,
            })
            .collect(),
        sequence: h.sequence.clone(),
        method: match h.method {
            response::Method::ClosedForm => "closed",
            response::Method::Dft => "dft",
            response::Method::Oracle => "oracle",
        },
        fell_back: h.fell_back,
    }
}

fn compute_impulse(
    spec: &GraphSpec,
    common: &Common,
    method: MethodArg,
    delay: i32,
    runway: Option<usize>,
    max_n: usize,
) -> Result<ImpulseResponse> {
    let u0 = build_operator(spec)?;
    let (j, k) = select_pair(&u0, common)?;
    if method == MethodArg::Oracle {
        if delay != 0 {
            return Err(Error::InvalidArgument(
                "the oracle reports the raw response; drop --delay".into(),
            ));
        }
        let steps = max_n + 1;
        let run = response::simulate_signal(
            spec,
            &u0.ports()[j].name,
            &u0.ports()[k].name,
            &Signal::delta(1),
            steps,
            runway.unwrap_or(steps + 2),
        )?;
        let mut h = ImpulseResponse {
            s: 0,
            omega0: Complex64::new(0.0, 0.0),
            modes: Vec::new(),
            max_n,
            sequence: run.output.samples,
            method: response::Method::Oracle,
            aliasing_bound: None,
            fell_back: false,
        };
        h.s = h.sequence.iter().position(|v| v.norm() > 1e-12).unwrap_or(0);
        return Ok(h);
    }
    let sf = ScatterFunction::from_operator(&u0, j, k)?.with_delay(delay);
    let grid = common.grid().max(4 * max_n.max(1));
    match method {
        MethodArg::Closed => response::impulse_closed_form(&sf, max_n),
        MethodArg::Dft => response::impulse_dft(&sf, grid, max_n),
        _ => response::impulse(&sf, max_n, grid),
    }
}

fn cmd_impulse<W: Write>(
    graph: &Path,
    common: &Common,
    method: MethodArg,
    delay: i32,
    runway: Option<usize>,
    out: &mut W,
) -> Result<i32> {
    common.check()?;
    let spec = load_plain(graph)?;
    let h = compute_impulse(&spec, common, method, delay, runway, common.n)?;
    let text = match common.format {
        Format::Json => io::to_json(&impulse_json(&h))?,
        Format::Csv => io::signal_csv(&h.sequence),
    };
    emit(out, common, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct SequenceJson {
    sequence: Vec<Complex64>,
}

fn cmd_respond<W: Write>(
    graph: &Path,
    common: &Common,
    drive: &Drive,
    method: MethodArg,
    delay: i32,
    out: &mut W,
) -> Result<i32> {
    common.check()?;
    if drive.signal.is_none() && drive.mono.is_none() {
        return Err(Error::InvalidArgument("respond needs --signal or --mono".into()));
    }
    let spec = load_plain(graph)?;
    let x = drive_signal(drive, common.n)?;
    if x.is_empty() {
        return Err(Error::InvalidArgument("the input signal is empty".into()));
    }
    let y = if method == MethodArg::Oracle {
        let u0 = build_operator(&spec)?;
        let (j, k) = select_pair(&u0, common)?;
        let steps = x.len();
        response::simulate_signal(
            &spec,
            &u0.ports()[j].name,
            &u0.ports()[k].name,
            &x,
            steps,
            (steps + 2).max(x.len() + 1),
        )?
        .output
    } else {
        let h = compute_impulse(&spec, common, method, delay, None, x.len() - 1)?;
        response::convolve(&x, &h.sequence)
    };
    let text = match common.format {
        Format::Csv => io::signal_csv(&y.samples),
        Format::Json => io::to_json(&SequenceJson { sequence: y.samples })?,
    };
    emit(out, common, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct ResonanceJson {
    center: f64,
    width: f64,
    eta: Complex64,
}

#[derive(Serialize)]
struct SoundReport {
    grid: usize,
    winding: i64,
    raw_winding: f64,
    root_count_winding: i64,
    dimension_lower_bound: usize,
    edge_states: usize,
    resonances: Vec<ResonanceJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    marked_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    complete_size: Option<f64>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_sound<W: Write>(
    graph: &Path,
    common: &Common,
    delay: i32,
    threshold: Option<f64>,
    auto: bool,
    sweep_path: Option<&Path>,
    recipe: Option<Recipe>,
    out: &mut W,
) -> Result<i32> {
    common.check()?;
    let spec = load_plain(graph)?;
    let u0 = build_operator(&spec)?;
    let (j, k) = select_pair(&u0, common)?;
    let sf = ScatterFunction::from_operator(&u0, j, k)?.with_delay(delay);
    let sweep = if auto {
        sounding::phase_sweep_auto(&sf, common.grid(), 1 << 20)?
    } else {
        sounding::phase_sweep(&sf, common.grid())?
    };
    if let Some(p) = sweep_path {
        io::write_text(p, &io::sweep_csv(&sweep))?;
    }
    let res = sounding::find_resonances(&sweep, threshold);
    let report = SoundReport {
        grid: sweep.len(),
        winding: sweep.winding,
        raw_winding: sweep.raw_winding,
        root_count_winding: sounding::root_count_winding(&sf)?,
        dimension_lower_bound: sounding::dimension_lower_bound(&sweep),
        edge_states: u0.dim(),
        marked_fraction: (recipe == Some(Recipe::Star))
            .then(|| sounding::star_marked_fraction(&res))
            .flatten(),
        complete_size: (recipe == Some(Recipe::Complete))
            .then(|| sounding::complete_graph_size(&sweep))
            .flatten(),
        resonances: res
            .iter()
            .map(|r| ResonanceJson {
                center: r.center,
                width: r.width,
                eta: r.eta,
            })
            .collect(),
    };
    let text = match common.format {
        Format::Json => io::to_json(&report)?,
        Format::Csv => io::sweep_csv(&sweep),
    };
    emit(out, common, &text)?;
    Ok(0)
}

fn cmd_prune<W: Write>(graph: &Path, common: &Common, cut: &[String], out: &mut W) -> Result<i32> {
    common.check()?;
    let (spec, pruned) = load_any(graph)?;
    let mut pg = match pruned {
        Some(pg) => pg,
        None => PrunedGraph::new(spec, Vec::new())?,
    };
    for c in cut.chunks(2) {
        pg = pg.prune((&c[0], &c[1]))?;
    }
    let text = io::to_json(&pg.to_file())?;
    emit(out, common, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct PairError {
    #[serde(rename = "in")]
    input: String,
    #[serde(rename = "out")]
    output: String,
    max_error: f64,
}

#[derive(Serialize)]
struct VerifyReport {
    passed: bool,
    max_error: f64,
    grid: usize,
    tol: f64,
    pairs: Vec<PairError>,
}

fn cmd_verify<W: Write>(full: &Path, pruned: &Path, common: &Common, out: &mut W) -> Result<i32> {
    common.check()?;
    let full_spec = load_plain(full)?;
    let pg = PrunedGraph::load(pruned)?;
    let grid = common.grid.unwrap_or(256);
    let rep = prune::verify_prune_equivalence(&full_spec, &pg, grid, common.tol)?;
    let text = io::to_json(&VerifyReport {
        passed: rep.passed,
        max_error: rep.max_error,
        grid,
        tol: common.tol,
        pairs: rep
            .pairs
            .into_iter()
            .map(|(i, o, e)| PairError {
                input: i,
                output: o,
                max_error: e,
            })
            .collect(),
    })?;
    emit(out, common, &text)?;
    Ok(if rep.passed { 0 } else { 2 })
}

#[derive(Serialize)]
struct SimulateJson {
    sequence: Vec<Complex64>,
    max_norm_drift: f64,
}

fn cmd_simulate<W: Write>(
    graph: &Path,
    common: &Common,
    drive: &Drive,
    runway: Option<usize>,
    out: &mut W,
) -> Result<i32> {
    common.check()?;
    let spec = load_plain(graph)?;
    let u0 = build_operator(&spec)?;
    let (j, k) = select_pair(&u0, common)?;
    let x = drive_signal(drive, common.n)?;
    let steps = common.n;
    let len = runway.unwrap_or((steps + 2).max(x.len() + 1));
    let initial: f64 = x.samples.iter().map(|v| v.norm_sqr()).sum();
    let run = response::simulate_signal(&spec, &u0.ports()[j].name, &u0.ports()[k].name, &x, steps, len)?;
    let text = match common.format {
        Format::Csv => io::signal_csv(&run.output.samples),
        Format::Json => io::to_json(&SimulateJson {
            max_norm_drift: run.max_norm_drift(initial),
            sequence: run.output.samples,
        })?,
    };
    emit(out, common, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct PortJson {
    name: String,
    #[serde(rename = "in")]
    input: String,
    #[serde(rename = "out")]
    output: String,
}

#[derive(Serialize)]
struct ValidateReport {
    valid: bool,
    states: Vec<String>,
    ports: Vec<PortJson>,
    frequency_vertices: Vec<String>,
    right_deviation: f64,
    left_deviation: f64,
}

fn cmd_validate<W: Write>(graph: &Path, common: &Common, out: &mut W) -> Result<i32> {
    common.check()?;
    let (spec, pruned) = load_any(graph)?;
    let u0 = match &pruned {
        Some(pg) => pg.operator().clone(),
        None => build_operator(&spec)?,
    };
    let rep = validate_partial_isometry(&u0);
    let basis = u0.basis().expect("assembled operators carry their basis");
    let state_name = |i: usize| basis.states()[i].to_string();
    let text = io::to_json(&ValidateReport {
        valid: rep.passed,
        states: basis.states().iter().map(|s| s.to_string()).collect(),
        ports: u0
            .ports()
            .iter()
            .map(|p| PortJson {
                name: p.name.clone(),
                input: state_name(p.input),
                output: state_name(p.output),
            })
            .collect(),
        frequency_vertices: pruned
            .map(|pg| pg.frequency_vertices.iter().map(|f| f.id.clone()).collect())
            .unwrap_or_default(),
        right_deviation: rep.right_deviation,
        left_deviation: rep.left_deviation,
    })?;
    emit(out, common, &text)?;
    Ok(if rep.passed { 0 } else { 1 })
}
