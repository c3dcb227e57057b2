use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use latcalc_cli::config::{read_config_file, Entry};
use latcalc_cli::{run, Op, RunConfig, RunError};

#[derive(Debug, Parser)]
#[command(name = "latcalc", version, about = "Exact lattice-polynomial calculus on lattice-ordered algebras")]
struct Cli {
    /// parse | eval | cert | sup | dmnorm | hpart | hcheck | fnorm | iadeg |
    /// contract | apply | compo | birkhoff | reconstruct | suite
    #[arg(value_parser = parse_op)]
    command: Op,

    /// Expression, same as --expr.
    expr_arg: Option<String>,

    /// Config file with `key = value` lines (model descriptor and any other key).
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long)]
    expr: Option<String>,
    #[arg(long, env = "LATCALC_SEED")]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    tol: Option<String>,
    /// Tab separated record file.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Number of variables; inferred from the expression when omitted.
    #[arg(long)]
    arity: Option<u64>,
    /// Element of the model, comma separated; repeat or separate with `;`.
    #[arg(long, allow_hyphen_values = true)]
    x: Vec<String>,
    /// Order-ideal generator.
    #[arg(long, allow_hyphen_values = true)]
    e: Option<String>,
    /// Evaluation point.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// Box `a1,b1;a2,b2;...`.
    #[arg(long = "box", allow_hyphen_values = true)]
    region: Option<String>,
    #[arg(short = 'm')]
    m: Option<u64>,
    #[arg(long)]
    m_max: Option<u64>,
    /// File with one direction per line.
    #[arg(long)]
    dirs: Option<PathBuf>,
    /// Outer expression for `compo`.
    #[arg(long)]
    g: Option<String>,
    /// Inner expressions for `compo`, in order.
    #[arg(long, allow_hyphen_values = true)]
    f: Vec<String>,
    /// `grid` for an exhaustive Birkhoff search.
    #[arg(long)]
    search: Option<String>,
    /// Grid search radius.
    #[arg(long)]
    radius: Option<u64>,
    /// Node budget for `sup`.
    #[arg(long)]
    budget: Option<u64>,
    /// Source index per target coordinate for `contract`.
    #[arg(long)]
    map: Option<String>,
    #[arg(long)]
    weights: Option<String>,
}

fn parse_op(s: &str) -> Result<Op, String> {
    Op::from_name(s).ok_or_else(|| format!("unknown command `{s}`"))
}

impl Cli {
    fn entries(&self) -> Result<Vec<Entry>, RunError> {
        let mut out = match &self.model {
            Some(path) => read_config_file(path)?,
            None => Vec::new(),
        };
        let mut put = |key: &str, value: Option<String>| {
            if let Some(v) = value {
                out.push(Entry::new(key, v, format!("--{key}")));
            }
        };
        put("op", Some(self.command.name().to_string()));
        put("expr", self.expr_arg.clone());
        put("expr", self.expr.clone());
        put("seed", self.seed.map(|s| s.to_string()));
        put("trials", self.trials.map(|s| s.to_string()));
        put("tol", self.tol.clone());
        put("out", self.out.as_ref().map(|p| p.display().to_string()));
        put("arity", self.arity.map(|s| s.to_string()));
        for x in &self.x {
            put("x", Some(x.clone()));
        }
        put("e", self.e.clone());
        put("point", self.point.clone());
        put("box", self.region.clone());
        put("m", self.m.map(|s| s.to_string()));
        put("m_max", self.m_max.map(|s| s.to_string()));
        put("dirs", self.dirs.as_ref().map(|p| p.display().to_string()));
        put("g", self.g.clone());
        for f in &self.f {
            put("f", Some(f.clone()));
        }
        put("search", self.search.clone());
        put("radius", self.radius.map(|s| s.to_string()));
        put("budget", self.budget.map(|s| s.to_string()));
        put("map", self.map.clone());
        put("weights", self.weights.clone());
        Ok(out)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli
        .entries()
        .and_then(|es| Ok(RunConfig::from_entries(&es)?))
        .and_then(|cfg| run(&cfg).map(|r| (cfg, r)));
    let (cfg, report) = match result {
        Ok(ok) => ok,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    print!("{}", report.body());
    eprintln!("{}", report.timing_line());
    if let Some(path) = &cfg.out {
        if let Err(err) = std::fs::write(path, report.tsv()) {
            eprintln!("error: writing {}: {err}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
