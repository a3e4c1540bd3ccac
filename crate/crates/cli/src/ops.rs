//! The operations shared by the CLI and the service, with their JSON bodies.

use matchstick::analysis::{detect_symmetry, frame_triangles};
use matchstick::error::ParseError;
use matchstick::model::graph_from_value;
use matchstick::relax::{flex_continuation, relax, FlexContinuationConfig, RelaxConfig, RelaxResult};
use matchstick::rigidity::{analyze_rigidity, RigidityMode};
use matchstick::verifier::{check_construction_rules, verify};
use matchstick::{Error, Graph, Result, ToleranceProfile};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Verify,
    Rigidity,
    Relax,
    Flex,
    Symmetry,
    Frame,
    Rules,
}

impl Op {
    pub const ALL: [Op; 7] = [Op::Verify, Op::Rigidity, Op::Relax, Op::Flex, Op::Symmetry, Op::Frame, Op::Rules];

    pub fn name(self) -> &'static str {
        match self {
            Op::Verify => "verify",
            Op::Rigidity => "rigidity",
            Op::Relax => "relax",
            Op::Flex => "flex",
            Op::Symmetry => "symmetry",
            Op::Frame => "frame",
            Op::Rules => "rules",
        }
    }

    pub fn from_name(name: &str) -> Option<Op> {
        Op::ALL.into_iter().find(|op| op.name() == name)
    }
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RigidityConfig {
    mode: RigidityMode,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlexReport {
    pub stages: Vec<RelaxResult>,
    pub initial_red_deviation: f64,
    pub final_red_deviation: f64,
    pub reached_target: bool,
}

/// A report body plus whether the graph passed the check it encodes.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub body: Value,
    pub ok: bool,
}

fn config<T: for<'de> Deserialize<'de> + Default>(config: Option<&Value>) -> Result<T> {
    match config {
        None | Some(Value::Null) => Ok(T::default()),
        Some(v) => serde_json::from_value(v.clone()).map_err(|e| Error::InvalidConfig(e.to_string())),
    }
}

fn no_config(op: Op, config: Option<&Value>) -> Result<()> {
    match config {
        None | Some(Value::Null) => Ok(()),
        Some(Value::Object(m)) if m.is_empty() => Ok(()),
        Some(_) => Err(Error::InvalidConfig(format!("{} takes no config", op.name()))),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

pub fn run(op: Op, g: &Graph, profile: &ToleranceProfile, cfg: Option<&Value>) -> Result<Outcome> {
    profile.validate()?;
    match op {
        Op::Verify => {
            no_config(op, cfg)?;
            let r = verify(g, profile);
            Ok(Outcome { ok: r.is_matchstick, body: to_value(&r) })
        }
        Op::Rigidity => {
            let c: RigidityConfig = config(cfg)?;
            let r = analyze_rigidity(g, profile, c.mode)?;
            Ok(Outcome { ok: r.infinitesimally_rigid, body: to_value(&r) })
        }
        Op::Relax => {
            let c: RelaxConfig = config(cfg)?;
            let r = relax(g, &c)?;
            Ok(Outcome { ok: r.converged, body: to_value(&r) })
        }
        Op::Flex => {
            let c: FlexContinuationConfig = config(cfg)?;
            let stages = flex_continuation(g, &c)?;
            let initial = g.red_edges().iter().map(|&e| (g.edge_length(e) - 1.0).abs()).fold(0.0, f64::max);
            let last = stages.last().map_or(initial, |s| s.max_red_deviation());
            let r = FlexReport {
                stages,
                initial_red_deviation: initial,
                final_red_deviation: last,
                reached_target: last <= c.target_red_deviation,
            };
            Ok(Outcome { ok: r.reached_target, body: to_value(&r) })
        }
        Op::Symmetry => {
            no_config(op, cfg)?;
            Ok(Outcome { ok: true, body: to_value(&detect_symmetry(g, profile)) })
        }
        Op::Frame => {
            no_config(op, cfg)?;
            let r = frame_triangles(g, profile)?;
            Ok(Outcome { ok: r.red_in_frame.is_empty(), body: to_value(&r) })
        }
        Op::Rules => {
            no_config(op, cfg)?;
            let rig = analyze_rigidity(g, profile, RigidityMode::ReleaseRed)?;
            let frame = frame_triangles(g, profile)?;
            let r = check_construction_rules(g, &rig, &frame, profile);
            Ok(Outcome { ok: r.all_pass(), body: to_value(&r) })
        }
    }
}

/// Pretty JSON with a trailing newline; the one encoding used for output.
pub fn to_body(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone)]
pub struct Request {
    pub graph: Graph,
    pub profile: ToleranceProfile,
    pub config: Option<Value>,
}

/// Accepts either a bare graph document or
/// `{"graph": …, "tolerances": {…}, "config": {…}}`.
pub fn parse_request(body: &str) -> Result<Request> {
    let value: Value = serde_json::from_str(body).map_err(|e| ParseError::Malformed(e.to_string()))?;
    let Value::Object(mut map) = value else {
        return Err(ParseError::Malformed("request body must be a JSON object".into()).into());
    };
    if !map.contains_key("graph") {
        return Ok(Request { graph: graph_from_value(Value::Object(map))?, profile: ToleranceProfile::default(), config: None });
    }
    let graph = graph_from_value(map.remove("graph").unwrap_or_default())?;
    let profile = match map.remove("tolerances") {
        None | Some(Value::Null) => ToleranceProfile::default(),
        Some(t) => serde_json::from_value(t).map_err(|e| Error::InvalidConfig(e.to_string()))?,
    };
    let config = map.remove("config");
    if let Some(key) = map.keys().next() {
        return Err(ParseError::Malformed(format!("unknown request field {key:?}")).into());
    }
    Ok(Request { graph, profile, config })
}

/// Overlays `overrides` on `base`, key by key.
pub fn merge(base: Value, overrides: Option<&Value>) -> Value {
    match (base, overrides) {
        (Value::Object(mut b), Some(Value::Object(o))) => {
            for (k, v) in o {
                b.insert(k.clone(), v.clone());
            }
            Value::Object(b)
        }
        (b, None | Some(Value::Null)) => b,
        (_, Some(o)) => o.clone(),
    }
}

pub fn object(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_owned(), v)).collect::<Map<_, _>>())
}
