//! Argument parsing and text output for the `matchstick` binary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use matchstick::corpus::{get_document, get_graph, list_corpus};
use matchstick::model::{format_coordinate, parse_graph, serialize_graph};
use matchstick::svg::{export_svg, SvgStyle};
use matchstick::{Graph, ToleranceProfile};
use serde_json::{json, Value};

use crate::ops::{self, to_body, Op, Outcome};
use crate::service::{self, ServiceConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "matchstick", version, about = "Verify, analyze and relax near-matchstick graphs")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true)]
    unit_tol: Option<f64>,
    #[arg(long, global = true)]
    coincidence_tol: Option<f64>,
    #[arg(long, global = true)]
    rank_tol: Option<f64>,
    #[arg(long, global = true)]
    symmetry_tol: Option<f64>,
    #[arg(long, global = true)]
    rule_deviation_cap: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RigidityModeArg {
    #[value(name = "release_red")]
    ReleaseRed,
    #[value(name = "all_edges")]
    AllEdges,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RelaxModeArg {
    #[value(name = "all_unit")]
    AllUnit,
    #[value(name = "preserve_red")]
    PreserveRed,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Degree, unit-length, crossing and coincidence checks.
    Verify { input: String },
    /// Rank of the rigidity matrix and non-trivial flexes.
    Rigidity {
        input: String,
        #[arg(long, value_enum, default_value = "release_red")]
        mode: RigidityModeArg,
    },
    /// Least-squares relaxation toward unit edge lengths.
    Relax {
        input: String,
        #[arg(long, value_enum, default_value = "all_unit")]
        mode: RelaxModeArg,
        #[arg(long)]
        max_iterations: Option<usize>,
        /// Write every accepted iterate as a JSON list of vertex arrays.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the relaxed graph document.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Continuation along a flex that drives red edges toward unit length.
    Flex {
        input: String,
        #[arg(long)]
        shrink_factor: Option<f64>,
        #[arg(long)]
        target: Option<f64>,
        #[arg(long)]
        max_stages: Option<usize>,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rotational and mirror symmetry about the centroid.
    Symmetry { input: String },
    /// Outer boundary and frame triangles.
    Frame { input: String },
    /// The four construction rules.
    Rules { input: String },
    /// Browse the built-in corpus.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
    /// Render a drawing as SVG.
    ExportSvg {
        input: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        scale: Option<f64>,
    },
    /// Run the JSON HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = 2000)]
        max_iterations: usize,
    },
}

#[derive(Debug, Subcommand)]
enum CorpusCommand {
    List,
    Show { id: String },
}

/// Exit code 2: the command could not run.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn load(input: &str) -> Result<Graph, Usage> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        return parse_graph(&text).map_err(|e| Usage(format!("{input}: {e}")));
    }
    get_graph(input).map_err(|_| Usage(format!("{input}: no such file or corpus id")))
}

fn profile(cli: &Cli) -> Result<ToleranceProfile, Usage> {
    let mut p = ToleranceProfile::default();
    let set = |slot: &mut f64, v: Option<f64>| {
        if let Some(v) = v {
            *slot = v;
        }
    };
    set(&mut p.unit_tol, cli.unit_tol);
    set(&mut p.coincidence_tol, cli.coincidence_tol);
    set(&mut p.rank_tol, cli.rank_tol);
    set(&mut p.symmetry_tol, cli.symmetry_tol);
    set(&mut p.rule_deviation_cap, cli.rule_deviation_cap);
    p.validate()?;
    Ok(p)
}

fn frames_value(frames: &[Value]) -> Value {
    Value::Array(
        frames
            .iter()
            .map(|frame| {
                Value::Array(
                    frame
                        .as_array()
                        .map(|pts| {
                            pts.iter()
                                .map(|p| {
                                    let c = |k: &str| format_coordinate(p[k].as_f64().unwrap_or(f64::NAN));
                                    json!([c("x"), c("y")])
                                })
                                .collect()
                        })
                        .unwrap_or_default(),
                )
            })
            .collect(),
    )
}

fn final_vertices(g: &Graph, result: &Value) -> Graph {
    let pts = result["final_vertices"]
        .as_array()
        .map(|a| {
            a.iter()
                .map(|p| matchstick::geometry::Point::new(p["x"].as_f64().unwrap_or(f64::NAN), p["y"].as_f64().unwrap_or(f64::NAN)))
                .collect()
        })
        .unwrap_or_default();
    g.with_vertices(pts)
}

fn write_solver_files(g: &Graph, results: &[&Value], trace: Option<&Path>, output: Option<&Path>) -> Result<(), Usage> {
    if let Some(path) = trace {
        let frames: Vec<Value> =
            results.iter().flat_map(|r| r["trajectory"].as_array().cloned().unwrap_or_default()).collect();
        std::fs::write(path, to_body(&frames_value(&frames)))?;
    }
    if let (Some(path), Some(last)) = (output, results.last()) {
        std::fs::write(path, serialize_graph(&final_vertices(g, last)))?;
    }
    Ok(())
}

fn fmt_edge(v: &Value) -> String {
    format!("({}, {})", v[0], v[1])
}

fn text(op: Op, name: &str, v: &Value) -> String {
    let mut s = String::new();
    match op {
        Op::Verify => {
            let verdict = if v["is_matchstick"] == true {
                "matchstick graph"
            } else if v["is_near_matchstick"] == true {
                "near-matchstick graph (red edges exempt)"
            } else {
                "not a matchstick graph"
            };
            let _ = writeln!(s, "{name}: {verdict}");
            let offending = v["offending_vertices"].as_array().map_or(0, Vec::len);
            let _ = writeln!(s, "  4-regular: {}", if offending == 0 { "yes".to_owned() } else { format!("no ({offending} vertices)") });
            let _ = writeln!(s, "  max |length - 1| over gray edges: {:.3e}", v["max_unit_deviation"].as_f64().unwrap_or(0.0));
            for r in v["red_deviations"].as_array().into_iter().flatten() {
                let _ = writeln!(s, "  red {}: {:+.10}", fmt_edge(&r["edge"]), r["deviation"].as_f64().unwrap_or(0.0));
            }
            let _ = writeln!(s, "  crossings: {}", v["crossings"].as_array().map_or(0, Vec::len));
            let _ = writeln!(s, "  coincidences: {}", v["coincidences"].as_array().map_or(0, Vec::len));
            match v["min_clearance"].as_f64() {
                Some(c) => { let _ = writeln!(s, "  min clearance: {c:.6}"); }
                None => { let _ = writeln!(s, "  min clearance: none (no independent edge pairs)"); }
            }
        }
        Op::Rigidity => {
            let dof = v["dof"].as_u64().unwrap_or(0);
            let _ = writeln!(s, "{name}: {} ({} mode)", if dof == 0 { "infinitesimally rigid" } else { "flexible" }, v["mode"].as_str().unwrap_or(""));
            let _ = writeln!(s, "  rank {}, dof {dof}", v["rank"]);
            let _ = writeln!(
                s,
                "  smallest kept σ/σmax {:.3e}, largest dropped {:.3e}",
                v["smallest_kept_ratio"].as_f64().unwrap_or(0.0),
                v["largest_dropped_ratio"].as_f64().unwrap_or(0.0)
            );
        }
        Op::Relax => {
            let history = v["objective_history"].as_array().cloned().unwrap_or_default();
            let last = history.last().and_then(Value::as_f64).unwrap_or(0.0);
            let _ = writeln!(
                s,
                "{name}: {} after {} iterations",
                if v["converged"] == true { "converged" } else { "stopped at the iteration cap" },
                v["iterations"]
            );
            let _ = writeln!(s, "  objective {last:.6e}");
            let _ = writeln!(s, "  max gray residual {:.3e}", v["max_unit_residual"].as_f64().unwrap_or(0.0));
            for r in v["red_residuals"].as_array().into_iter().flatten() {
                let _ = writeln!(s, "  red residual {:+.10}", r.as_f64().unwrap_or(0.0));
            }
        }
        Op::Flex => {
            let stages = v["stages"].as_array().cloned().unwrap_or_default();
            let _ = writeln!(
                s,
                "{name}: {} stage(s), max red deviation {:.6} -> {:.6}{}",
                stages.len(),
                v["initial_red_deviation"].as_f64().unwrap_or(0.0),
                v["final_red_deviation"].as_f64().unwrap_or(0.0),
                if v["reached_target"] == true { " (target reached)" } else { " (stalled)" }
            );
            for (i, st) in stages.iter().enumerate() {
                let red = st["red_residuals"].as_array().into_iter().flatten().filter_map(Value::as_f64).fold(0.0, |m: f64, r| m.max(r.abs()));
                let _ = writeln!(s, "  stage {}: red {red:.6}, gray {:.3e}", i + 1, st["max_unit_residual"].as_f64().unwrap_or(0.0));
            }
        }
        Op::Symmetry => {
            let _ = writeln!(s, "{name}: {}", v["label"].as_str().unwrap_or(""));
            for t in v["transforms"].as_array().into_iter().flatten() {
                match t["type"].as_str() {
                    Some("rotation") => { let _ = writeln!(s, "  rotation of order {}", t["order"]); }
                    _ => { let _ = writeln!(s, "  mirror, axis at {:.6} rad", t["axis_angle"].as_f64().unwrap_or(0.0)); }
                }
            }
        }
        Op::Frame => {
            let cycle: Vec<String> = v["outer_cycle"].as_array().into_iter().flatten().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{name}: outer boundary of {} vertices", cycle.len());
            let _ = writeln!(s, "  {}", cycle.join(" "));
            let _ = writeln!(s, "  frame triangles: {}", v["frame_triangles"].as_array().map_or(0, Vec::len));
            let red: Vec<String> = v["red_in_frame"].as_array().into_iter().flatten().map(fmt_edge).collect();
            let _ = writeln!(s, "  red edges in frame: {}", if red.is_empty() { "none".to_owned() } else { red.join(", ") });
        }
        Op::Rules => {
            let mark = |b: &Value| if *b == true { "pass" } else { "FAIL" };
            let _ = writeln!(s, "{name}:");
            let _ = writeln!(s, "  rule 1 (rigid): {}", mark(&v["rule1_rigid"]));
            let _ = writeln!(s, "  rule 2 (frame free of red edges): {}", mark(&v["rule2_frame_clean"]));
            let _ = writeln!(s, "  rule 3 (at most 3 red edges, has {}): {}", v["rule3_red_count"], mark(&v["rule3_ok"]));
            let _ = writeln!(s, "  rule 4 (red deviation within cap): {}", mark(&v["rule4_deviation_cap"]));
            for n in v["notes"].as_array().into_iter().flatten() {
                let _ = writeln!(s, "  note: {}", n.as_str().unwrap_or(""));
            }
        }
    }
    s
}

fn emit(format: Format, op: Op, name: &str, out: &Outcome) -> u8 {
    match format {
        Format::Json => print!("{}", to_body(&out.body)),
        Format::Text => print!("{}", text(op, name, &out.body)),
    }
    if out.ok { 0 } else { 1 }
}

fn display_name(g: &Graph, input: &str) -> String {
    if g.id().is_empty() { input.to_owned() } else { g.id().to_owned() }
}

fn execute(cli: Cli) -> Result<u8, Usage> {
    let format = cli.format;
    let simple = |op: Op, input: &str, config: Option<Value>| -> Result<u8, Usage> {
        let g = load(input)?;
        let out = ops::run(op, &g, &profile(&cli)?, config.as_ref())?;
        Ok(emit(format, op, &display_name(&g, input), &out))
    };
    match &cli.command {
        Command::Verify { input } => simple(Op::Verify, input, None),
        Command::Symmetry { input } => simple(Op::Symmetry, input, None),
        Command::Frame { input } => simple(Op::Frame, input, None),
        Command::Rules { input } => simple(Op::Rules, input, None),
        Command::Rigidity { input, mode } => {
            let mode = match mode {
                RigidityModeArg::ReleaseRed => "release_red",
                RigidityModeArg::AllEdges => "all_edges",
            };
            simple(Op::Rigidity, input, Some(json!({ "mode": mode })))
        }
        Command::Relax { input, mode, max_iterations, trace, output } => {
            let g = load(input)?;
            let mut config = json!({
                "mode": match mode { RelaxModeArg::AllUnit => "all_unit", RelaxModeArg::PreserveRed => "preserve_red" },
                "record_trajectory": trace.is_some(),
            });
            if let Some(n) = max_iterations {
                config["max_iterations"] = json!(n);
            }
            let out = ops::run(Op::Relax, &g, &profile(&cli)?, Some(&config))?;
            write_solver_files(&g, &[&out.body], trace.as_deref(), output.as_deref())?;
            Ok(emit(format, Op::Relax, &display_name(&g, input), &out))
        }
        Command::Flex { input, shrink_factor, target, max_stages, trace, output } => {
            let g = load(input)?;
            let mut config = json!({ "record_trajectory": trace.is_some() });
            if let Some(b) = shrink_factor {
                config["shrink_factor"] = json!(b);
            }
            if let Some(t) = target {
                config["target_red_deviation"] = json!(t);
            }
            if let Some(m) = max_stages {
                config["max_stages"] = json!(m);
            }
            let out = ops::run(Op::Flex, &g, &profile(&cli)?, Some(&config))?;
            let stages: Vec<&Value> = out.body["stages"].as_array().map(|a| a.iter().collect()).unwrap_or_default();
            write_solver_files(&g, &stages, trace.as_deref(), output.as_deref())?;
            Ok(emit(format, Op::Flex, &display_name(&g, input), &out))
        }
        Command::Corpus { command: CorpusCommand::List } => {
            let list = list_corpus();
            match format {
                Format::Json => print!("{}", to_body(&serde_json::to_value(&list)?)),
                Format::Text => {
                    println!("{:<18} {:>4} {:>4}  {:<14} caption", "id", "n", "red", "symmetry");
                    for e in &list {
                        println!(
                            "{:<18} {:>4} {:>4}  {:<14} {}",
                            e.id,
                            e.vertices,
                            e.red_edges,
                            e.symmetry.as_deref().unwrap_or("-"),
                            e.caption
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Corpus { command: CorpusCommand::Show { id } } => {
            print!("{}", get_document(id)?);
            Ok(0)
        }
        Command::ExportSvg { input, output, scale } => {
            let g = load(input)?;
            let mut style = SvgStyle::default();
            if let Some(s) = scale {
                style.scale = *s;
            }
            let svg = export_svg(&g, &style)?;
            match output {
                Some(path) => std::fs::write(path, svg)?,
                None => print!("{svg}"),
            }
            Ok(0)
        }
        Command::Serve { port, host, max_iterations } => {
            let addr: SocketAddr = format!("{host}:{port}").parse()?;
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(service::serve(addr, ServiceConfig { max_iterations: *max_iterations }))?;
            Ok(0)
        }
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
