//! Command-line front end: `solve`, `verify`, `analyze` and `generate`.
//!
//! Exit status: 0 when the question was answered, 1 for bad input or usage,
//! 2 when a search budget ran out.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use harmless::cwd::{parse_cexpr, solve_cliquewidth};
use harmless::format::{parse_instance, parse_mmo, parse_mrss, serialize_instance};
use harmless::nd::{nd_partition, solve_nd, ClassKind};
use harmless::oracle::{max_harmless_bruteforce, DEFAULT_BUDGET};
use harmless::planar::{solve_planar_with, PlanarOptions};
use harmless::reductions::{reduce_mmo, reduce_mrss};
use harmless::twincover::{find_twin_cover, solve_twincover};
use harmless::{Error, Instance, SolveResult, VertexSet};

#[derive(Debug, Parser)]
#[command(
    name = "harmless",
    version,
    about = "Exact solvers for the harmless set problem"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a maximum harmless set.
    Solve(SolveArgs),
    /// Check a given set and print the slack of every vertex.
    Verify(VerifyArgs),
    /// Print structural parameters of an instance.
    Analyze(AnalyzeArgs),
    /// Build a harmless set instance from an orientation or subset-sum instance.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Auto,
    Brute,
    Nd,
    Twincover,
    Cliquewidth,
    Planar,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    pub algo: Algo,
    /// Decision target; required by `planar`.
    #[arg(long)]
    pub k: Option<usize>,
    /// Twin cover to use instead of searching for one, e.g. `2,5,7`.
    #[arg(long, value_delimiter = ',')]
    pub cover: Option<Vec<usize>>,
    /// c-expression file; required by `cliquewidth`.
    #[arg(long)]
    pub cexpr: Option<PathBuf>,
    /// Node budget of the exhaustive search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// `auto` uses neighbourhood diversity up to this many classes.
    #[arg(long, default_value_t = 8)]
    pub nd_limit: usize,
    /// `auto` uses a twin cover up to this size.
    #[arg(long, default_value_t = 8)]
    pub cover_limit: usize,
    #[arg(long)]
    pub machine: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: PathBuf,
    /// One-based vertex ids, comma or space separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub set: Vec<usize>,
    #[arg(long)]
    pub machine: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub input: PathBuf,
    /// Largest twin cover size searched for.
    #[arg(long, default_value_t = 12)]
    pub cover_bound: usize,
    #[arg(long)]
    pub machine: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Mmo,
    Mrss,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub source: Source,
    pub input: PathBuf,
}

enum Failure {
    Usage(String),
    Input(Error),
    Budget(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OracleLimit(_) | Error::KernelTooLarge(_) | Error::SizeLimit { .. } => {
                Failure::Budget(e)
            }
            e => Failure::Input(e),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &config.command {
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Analyze(a) => analyze(a),
        Command::Generate(a) => generate(a),
    };
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Budget(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, Failure> {
    Ok(parse_instance(&read(path)?)?)
}

/// Accumulates either `KEY value` or `key=value` lines.
struct Report {
    machine: bool,
    text: String,
}

impl Report {
    fn new(machine: bool) -> Self {
        Report {
            machine,
            text: String::new(),
        }
    }

    fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        if self.machine {
            writeln!(
                self.text,
                "{}={}",
                key.to_lowercase().replace(' ', "."),
                value
            )
            .unwrap();
        } else {
            writeln!(self.text, "{key} {value}").unwrap();
        }
    }

    fn set(&mut self, key: &str, set: &VertexSet) {
        let sep = if self.machine { "," } else { " " };
        let ids: Vec<String> = set.one_based().iter().map(|v| v.to_string()).collect();
        if self.machine || !set.is_empty() {
            self.line(key, ids.join(sep));
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn solve(a: &SolveArgs) -> Result<String, Failure> {
    if a.algo == Algo::Cliquewidth && a.cexpr.is_none() {
        return Err(Failure::Usage(
            "--algo cliquewidth needs --cexpr <file>".into(),
        ));
    }
    if a.algo == Algo::Planar && a.k.is_none() {
        return Err(Failure::Usage("--algo planar needs --k <k>".into()));
    }
    let instance = load(&a.input)?;
    let mut report = Report::new(a.machine);

    if a.algo == Algo::Planar {
        let k = a.k.unwrap_or(1);
        let options = PlanarOptions {
            budget: a.budget,
            ..PlanarOptions::default()
        };
        let d = solve_planar_with(&instance, k, options)?;
        report.line("ANSWER", yes_no(d.answer));
        if let Some(w) = &d.witness {
            report.set("SET", w);
        }
        report.line("SOLVER", "planar");
        report.line("RULE", d.rule.name());
        if a.machine {
            report.line("deleted", d.kernel_stats.deleted);
            report.line("kernel_vertices", d.kernel_stats.kernel_vertices);
        }
        return Ok(report.text);
    }

    let cover = match &a.cover {
        Some(ids) => Some(VertexSet::from_one_based(ids, instance.vertex_count())?),
        None => None,
    };
    let result: SolveResult = match a.algo {
        Algo::Brute => max_harmless_bruteforce(&instance, a.budget)?,
        Algo::Nd => solve_nd(&instance)?,
        Algo::Twincover => {
            let cover = match cover {
                Some(c) => c,
                None => find_twin_cover(instance.graph(), harmless::twincover::MAX_COVER).ok_or(
                    Error::SizeLimit {
                        what: "twin cover",
                        limit: harmless::twincover::MAX_COVER,
                    },
                )?,
            };
            solve_twincover(&instance, &cover)?
        }
        Algo::Cliquewidth => {
            let path = a.cexpr.as_deref().expect("checked above");
            let expr = parse_cexpr(&read(path)?)?;
            solve_cliquewidth(&instance, &expr)?
        }
        Algo::Auto => auto(&instance, a, cover)?,
        Algo::Planar => unreachable!(),
    };
    if a.machine {
        report.line("size", result.max_size);
        report.set("set", &result.witness);
        if let Some(k) = a.k {
            report.line("answer", yes_no(result.max_size >= k));
        }
    } else {
        report.text.push_str(&result.render(a.k));
    }
    report.line("SOLVER", result.solver);
    if a.machine {
        for (name, value) in &result.stats {
            report.line(&format!("stat.{name}"), value);
        }
    }
    Ok(report.text)
}

fn auto(
    instance: &Instance,
    a: &SolveArgs,
    cover: Option<VertexSet>,
) -> Result<SolveResult, Failure> {
    if let Some(cover) = cover {
        return Ok(solve_twincover(instance, &cover)?);
    }
    if nd_partition(instance.graph()).len() <= a.nd_limit {
        return Ok(solve_nd(instance)?);
    }
    if let Some(cover) = find_twin_cover(instance.graph(), a.cover_limit) {
        return Ok(solve_twincover(instance, &cover)?);
    }
    Ok(max_harmless_bruteforce(instance, a.budget)?)
}

fn verify(a: &VerifyArgs) -> Result<String, Failure> {
    let instance = load(&a.input)?;
    let set = VertexSet::from_one_based(&a.set, instance.vertex_count())?;
    let slack = instance.slack(&set)?;
    let mut report = Report::new(a.machine);
    for (v, s) in slack.iter().enumerate() {
        if a.machine {
            report.line(&format!("slack.{}", v + 1), s);
        } else {
            report.line("SLACK", format_args!("{} {}", v + 1, s));
        }
    }
    report.line("VALID", yes_no(slack.iter().all(|&s| s >= 1)));
    Ok(report.text)
}

fn analyze(a: &AnalyzeArgs) -> Result<String, Failure> {
    let instance = load(&a.input)?;
    let g = instance.graph();
    let mut report = Report::new(a.machine);
    report.line("VERTICES", g.vertex_count());
    report.line("EDGES", g.edge_count());
    report.line("COMPONENTS", g.components().len());
    report.line("MAX_THRESHOLD", instance.max_threshold());
    report.line("ABOVE_DEGREE", instance.validate(true).len());

    let p = nd_partition(g);
    report.line("ND_CLASSES", p.len());
    for (i, class) in p.classes.iter().enumerate() {
        let kind = match class.kind {
            ClassKind::Clique => "clique",
            ClassKind::Independent => "independent",
        };
        let members: Vec<String> = class.members.iter().map(|v| (v + 1).to_string()).collect();
        if a.machine {
            report.line(
                &format!("class.{}", i + 1),
                format_args!("{kind}:{}", members.join(",")),
            );
        } else {
            report.line(
                "CLASS",
                format_args!("{} {kind} {}", i + 1, members.join(" ")),
            );
        }
    }
    let type_edges = p
        .type_graph
        .iter()
        .enumerate()
        .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j)));
    for (i, j) in type_edges {
        if a.machine {
            report.line(&format!("type_edge.{}.{}", i + 1, j + 1), 1);
        } else {
            report.line("TYPE_EDGE", format_args!("{} {}", i + 1, j + 1));
        }
    }
    match find_twin_cover(g, a.cover_bound) {
        Some(c) => {
            report.line("TWIN_COVER", c.len());
            report.set("COVER", &c);
        }
        None => report.line("TWIN_COVER", format_args!(">{}", a.cover_bound)),
    }
    Ok(report.text)
}

fn generate(a: &GenerateArgs) -> Result<String, Failure> {
    let text = read(&a.input)?;
    let (instance, trace, target) = match a.source {
        Source::Mmo => {
            let wg = parse_mmo(&text)?;
            let out = reduce_mmo(&wg)?;
            out.audit(&wg)
                .map_err(|e| Failure::Input(Error::Internal(e)))?;
            (out.instance, out.trace, format!("k={}", out.target))
        }
        Source::Mrss => {
            let mi = parse_mrss(&text)?;
            let out = reduce_mrss(&mi)?;
            out.audit(&mi)
                .map_err(|e| Failure::Input(Error::Internal(e)))?;
            (out.instance, out.trace, format!("r={}", out.target))
        }
    };
    let mut s = String::from("# trace\n");
    for (role, ids) in &trace {
        let ids: Vec<String> = ids.iter().map(|v| (v + 1).to_string()).collect();
        writeln!(s, "# {role}: {}", ids.join(" ")).unwrap();
    }
    writeln!(s, "# target {target}").unwrap();
    s.push_str(&serialize_instance(&instance));
    Ok(s)
}
