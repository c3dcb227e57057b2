//! Run configuration: a flat `key = value` file merged with command-line
//! overrides, fully validated before anything runs.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use latcalc_core::interval::IntervalBox;
use latcalc_core::models::ModelKind;
use latcalc_core::rational::{self, parse_rational, parse_vector};
use latcalc_core::{parse, parse_auto, Expr, Point, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{field}: {message}")]
pub struct ConfigError {
    /// Where the bad value came from, e.g. `model.dimension` or `m.cfg:4`.
    pub field: String,
    pub message: String,
}

impl ConfigError {
    fn new(field: impl Into<String>, message: impl fmt::Display) -> Self {
        ConfigError {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Op {
    Parse,
    Eval,
    Cert,
    Sup,
    Dmnorm,
    Hpart,
    Hcheck,
    Fnorm,
    Iadeg,
    Contract,
    Apply,
    Compo,
    Birkhoff,
    Reconstruct,
    Suite,
}

impl Op {
    pub const ALL: [Op; 15] = [
        Op::Parse,
        Op::Eval,
        Op::Cert,
        Op::Sup,
        Op::Dmnorm,
        Op::Hpart,
        Op::Hcheck,
        Op::Fnorm,
        Op::Iadeg,
        Op::Contract,
        Op::Apply,
        Op::Compo,
        Op::Birkhoff,
        Op::Reconstruct,
        Op::Suite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Op::Parse => "parse",
            Op::Eval => "eval",
            Op::Cert => "cert",
            Op::Sup => "sup",
            Op::Dmnorm => "dmnorm",
            Op::Hpart => "hpart",
            Op::Hcheck => "hcheck",
            Op::Fnorm => "fnorm",
            Op::Iadeg => "iadeg",
            Op::Contract => "contract",
            Op::Apply => "apply",
            Op::Compo => "compo",
            Op::Birkhoff => "birkhoff",
            Op::Reconstruct => "reconstruct",
            Op::Suite => "suite",
        }
    }

    pub fn from_name(s: &str) -> Option<Op> {
        if s == "all" {
            return Some(Op::Suite);
        }
        Op::ALL.into_iter().find(|op| op.name() == s)
    }

    fn needs_expr(self) -> bool {
        matches!(
            self,
            Op::Parse | Op::Eval | Op::Cert | Op::Sup | Op::Dmnorm | Op::Hpart | Op::Hcheck | Op::Apply
        )
    }
}

/// One `key = value` assignment and where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub origin: String,
}

impl Entry {
    pub fn new(key: &str, value: impl Into<String>, origin: impl Into<String>) -> Self {
        Entry {
            key: key.to_string(),
            value: value.into(),
            origin: origin.into(),
        }
    }
}

/// Recognized keys. `x` and `f` accumulate; every other key keeps its last
/// assignment.
pub const KEYS: &[&str] = &[
    "op",
    "kind",
    "model",
    "dimension",
    "neighborhood",
    "expr",
    "arity",
    "x",
    "e",
    "point",
    "box",
    "tol",
    "m",
    "m_max",
    "dirs",
    "g",
    "f",
    "search",
    "radius",
    "seed",
    "trials",
    "budget",
    "map",
    "weights",
    "out",
];

const MULTI: &[&str] = &["x", "f"];

/// Splits a config file into entries. Blank lines and `#` comments are
/// skipped; anything else must be `key = value` with a known key.
pub fn parse_config_text(text: &str, name: &str) -> Result<Vec<Entry>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let origin = format!("{name}:{}", i + 1);
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::new(origin, "expected `key = value`"));
        };
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(ConfigError::new(origin, format!("unknown key `{key}`")));
        }
        out.push(Entry::new(key, value.trim(), origin));
    }
    Ok(out)
}

pub fn read_config_file(path: &Path) -> Result<Vec<Entry>, ConfigError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::new(&name, e))?;
    parse_config_text(&text, &name)
}

/// Directions file: one comma separated vector per line, `#` comments.
pub fn parse_directions(text: &str, name: &str) -> Result<Vec<Point>, ConfigError> {
    let mut out: Vec<Point> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let origin = format!("{name}:{}", i + 1);
        let v = parse_vector(line).map_err(|e| ConfigError::new(&origin, e))?;
        if let Some(first) = out.first() {
            if first.len() != v.len() {
                return Err(ConfigError::new(
                    origin,
                    format!("direction has {} entries, expected {}", v.len(), first.len()),
                ));
            }
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err(ConfigError::new(name, "no directions"));
    }
    Ok(out)
}

/// Validated configuration for one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub op: Op,
    pub model: Option<ModelKind>,
    pub expr: Option<(Expr, usize)>,
    pub xs: Vec<Vec<Q>>,
    pub e: Option<Vec<Q>>,
    pub point: Option<Vec<Q>>,
    pub region: Option<IntervalBox>,
    pub tol: Option<Q>,
    pub m: Option<u32>,
    pub m_max: u32,
    pub dirs: Option<Vec<Point>>,
    pub g: Option<Expr>,
    pub fs: Vec<Expr>,
    /// Birkhoff grid search radius, when a search was requested.
    pub search: Option<i64>,
    pub seed: u64,
    pub trials: usize,
    pub budget: usize,
    pub map: Option<Vec<usize>>,
    pub weights: Option<Vec<Q>>,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TRIALS: usize = 200;

impl RunConfig {
    /// Builds a configuration from entries in increasing priority order.
    pub fn from_entries(entries: &[Entry]) -> Result<Self, ConfigError> {
        let mut single: BTreeMap<&str, &Entry> = BTreeMap::new();
        let mut multi: BTreeMap<&str, Vec<&Entry>> = BTreeMap::new();
        for en in entries {
            if !KEYS.contains(&en.key.as_str()) {
                return Err(ConfigError::new(&en.origin, format!("unknown key `{}`", en.key)));
            }
            if MULTI.contains(&en.key.as_str()) {
                multi.entry(en.key.as_str()).or_default().push(en);
            } else {
                single.insert(en.key.as_str(), en);
            }
        }
        let get = |k: &str| single.get(k).copied();
        let field = |k: &str| get(k).map_or_else(|| k.to_string(), |en| format!("{k} ({})", en.origin));

        let op_entry = get("op").ok_or_else(|| ConfigError::new("op", "missing operation"))?;
        let op = Op::from_name(&op_entry.value)
            .ok_or_else(|| ConfigError::new(field("op"), format!("unknown operation `{}`", op_entry.value)))?;

        let nat = |k: &str| -> Result<Option<u64>, ConfigError> {
            get(k)
                .map(|en| {
                    en.value
                        .parse::<u64>()
                        .map_err(|_| ConfigError::new(field(k), format!("`{}` is not a natural number", en.value)))
                })
                .transpose()
        };
        let rat = |k: &str| -> Result<Option<Q>, ConfigError> {
            get(k)
                .map(|en| parse_rational(&en.value).map_err(|e| ConfigError::new(field(k), e)))
                .transpose()
        };
        let vector = |k: &str| -> Result<Option<Vec<Q>>, ConfigError> {
            get(k)
                .map(|en| parse_vector(&en.value).map_err(|e| ConfigError::new(field(k), e)))
                .transpose()
        };

        let model = match (get("kind"), get("model")) {
            (Some(_), Some(_)) => {
                return Err(ConfigError::new("model", "give either `kind` or `model`, not both"))
            }
            (Some(en), None) | (None, Some(en)) => {
                let dim = nat("dimension")?.map(|d| d as usize);
                let nb = nat("neighborhood")?.map(|d| d as usize);
                Some(
                    ModelKind::from_parts(&en.value, dim, nb)
                        .map_err(|e| ConfigError::new(format!("model.{}", en.key), e))?,
                )
            }
            (None, None) => {
                for k in ["dimension", "neighborhood"] {
                    if get(k).is_some() {
                        return Err(ConfigError::new(format!("model.{k}"), "given without a model kind"));
                    }
                }
                None
            }
        };

        let arity = nat("arity")?.map(|a| a as usize);
        if arity == Some(0) {
            return Err(ConfigError::new(field("arity"), "must be at least 1"));
        }
        let parse_with = |k: &str, text: &str, arity: Option<usize>| -> Result<(Expr, usize), ConfigError> {
            match arity {
                Some(n) => parse(text, n).map(|e| (e, n)),
                None => parse_auto(text),
            }
            .map_err(|e| ConfigError::new(field(k), e))
        };
        let expr = get("expr")
            .map(|en| parse_with("expr", &en.value, arity))
            .transpose()?;
        if op.needs_expr() && expr.is_none() {
            return Err(ConfigError::new("expr", format!("`{}` needs an expression", op.name())));
        }

        let mut xs = Vec::new();
        for en in multi.get("x").into_iter().flatten() {
            for part in en.value.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                xs.push(parse_vector(part).map_err(|e| ConfigError::new(format!("x ({})", en.origin), e))?);
            }
        }
        if let Some(model) = model.and_then(|m| m.finite()) {
            for (i, x) in xs.iter().enumerate() {
                model
                    .check_element(x)
                    .map_err(|e| ConfigError::new(format!("x[{}]", i + 1), e))?;
            }
        }

        let mut fs = Vec::new();
        for en in multi.get("f").into_iter().flatten() {
            for part in en.value.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                let n = arity.unwrap_or(xs.len().max(1));
                let f = parse(part, n).map_err(|e| ConfigError::new(format!("f ({})", en.origin), e))?;
                fs.push(f);
            }
        }
        let g = get("g")
            .map(|en| {
                let m = fs.len().max(1);
                parse(&en.value, m).map_err(|e| ConfigError::new(field("g"), e))
            })
            .transpose()?;

        let region = get("box")
            .map(|en| IntervalBox::parse(&en.value).map_err(|e| ConfigError::new(field("box"), e)))
            .transpose()?;
        if let (Some(b), Some((e, _))) = (&region, &expr) {
            e.check_arity(b.dim()).map_err(|err| ConfigError::new(field("box"), err))?;
        }

        let tol = rat("tol")?;
        if tol.as_ref().is_some_and(|t| *t <= rational::zero()) {
            return Err(ConfigError::new(field("tol"), "must be positive"));
        }

        let dirs = get("dirs")
            .map(|en| {
                let text = std::fs::read_to_string(&en.value).map_err(|e| ConfigError::new(field("dirs"), e))?;
                parse_directions(&text, &en.value)
            })
            .transpose()?;

        let search = match get("search") {
            None => None,
            Some(en) if en.value == "grid" => {
                let r = nat("radius")?.unwrap_or(2);
                if r == 0 || r > 8 {
                    return Err(ConfigError::new(field("radius"), "must be between 1 and 8"));
                }
                Some(r as i64)
            }
            Some(en) => {
                return Err(ConfigError::new(
                    field("search"),
                    format!("unknown search `{}` (only `grid`)", en.value),
                ))
            }
        };

        let trials = nat("trials")?.map_or(DEFAULT_TRIALS, |t| t as usize);
        if trials == 0 {
            return Err(ConfigError::new(field("trials"), "must be at least 1"));
        }
        let budget = nat("budget")?.map_or(latcalc_core::growth::DEFAULT_NODE_BUDGET, |b| b as usize);
        if budget == 0 {
            return Err(ConfigError::new(field("budget"), "must be at least 1"));
        }

        let to_u32 = |k: &str, v: Option<u64>| -> Result<Option<u32>, ConfigError> {
            v.map(|v| u32::try_from(v).map_err(|_| ConfigError::new(field(k), "too large")))
                .transpose()
        };
        let m = to_u32("m", nat("m")?)?;
        let m_max = to_u32("m_max", nat("m_max")?)?.unwrap_or(8);
        if m_max == 0 {
            return Err(ConfigError::new(field("m_max"), "must be at least 1"));
        }

        let map = get("map")
            .map(|en| {
                en.value
                    .split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| ConfigError::new(field("map"), "expected comma separated source indices"))
            })
            .transpose()?;

        Ok(RunConfig {
            op,
            model,
            expr,
            xs,
            e: vector("e")?,
            point: vector("point")?,
            region,
            tol,
            m,
            m_max,
            dirs,
            g,
            fs,
            search,
            seed: nat("seed")?.unwrap_or(DEFAULT_SEED),
            trials,
            budget,
            map,
            weights: vector("weights")?,
            out: get("out").map(|en| PathBuf::from(&en.value)),
        })
    }

    /// `key = value` lines echoing the validated inputs in a fixed order.
    pub fn echo(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        let mut put = |k: &str, v: String| out.push((k.to_string(), v));
        if let Some(m) = &self.model {
            put("model", describe_model(m));
        }
        if let Some((e, n)) = &self.expr {
            put("expr", e.to_string());
            put("arity", n.to_string());
        }
        for (i, x) in self.xs.iter().enumerate() {
            put(&format!("x{}", i + 1), rational::format_vector(x));
        }
        if let Some(e) = &self.e {
            put("e", rational::format_vector(e));
        }
        if let Some(p) = &self.point {
            put("point", rational::format_vector(p));
        }
        if let Some(b) = &self.region {
            put(
                "box",
                b.sides().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" x "),
            );
        }
        if let Some(t) = &self.tol {
            put("tol", t.to_string());
        }
        if let Some(m) = self.m {
            put("m", m.to_string());
        }
        if let Some(g) = &self.g {
            put("g", g.to_string());
        }
        for (i, f) in self.fs.iter().enumerate() {
            put(&format!("f{}", i + 1), f.to_string());
        }
        if let Some(r) = self.search {
            put("search", format!("grid radius {r}"));
        }
        if let Some(map) = &self.map {
            put(
                "map",
                map.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
            );
        }
        if let Some(w) = &self.weights {
            put("weights", rational::format_vector(w));
        }
        if let Some(d) = &self.dirs {
            put("dirs", format!("{} directions", d.len()));
        }
        if matches!(self.op, Op::Contract | Op::Birkhoff | Op::Reconstruct | Op::Suite) {
            put("trials", self.trials.to_string());
        }
        out
    }
}

pub fn describe_model(m: &ModelKind) -> String {
    match m {
        ModelKind::Pointwise { k } => format!("pointwise(k={k})"),
        ModelKind::TwistedR2 => "twisted-r2".to_string(),
        ModelKind::LocallyConstant { k, u } => format!("locally-constant(k={k}, u={u})"),
        ModelKind::PolyDemo => "poly-demo".to_string(),
    }
}
