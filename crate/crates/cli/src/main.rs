use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jsharp_core::foam;
use jsharp_core::homological::{self, DifferentialModule, HomologyError, SpecializationReport};
use jsharp_core::operators::{self, OperatorError, OperatorModule};
use jsharp_core::rank::seeded_rng;
use jsharp_core::series::Direction;
use jsharp_core::verify;
use jsharp_core::webs::{self, Web, WebError};
use serde_json::{json, Value};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_MALFORMED: u8 = 3;
const EXIT_INVALID: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

#[derive(Parser)]
#[command(name = "jsharp", version, about = "Exact algebra for deformed instanton homology of webs")]
struct Cli {
    /// Emit machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed foam evaluations
    #[command(subcommand)]
    Foam(FoamCmd),
    /// Web combinatorics from a JSON web file
    #[command(subcommand)]
    Web(WebCmd),
    /// Operator models of the unknot and theta web
    #[command(subcommand)]
    Ops(OpsCmd),
    /// Differential modules over R
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Run every acceptance check
    VerifyAll {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also check the Tait identity on every web file in this directory
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

fn dots(s: &str) -> Result<u32, String> {
    let m: u32 = s.parse().map_err(|e| format!("{e}"))?;
    foam::check_dot_limit(m).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum FoamCmd {
    /// <S(m)> for the sphere with m dots
    Sphere {
        #[arg(value_parser = dots)]
        m: u32,
    },
    /// <Θ(m1, m2, m3)>
    Theta {
        #[arg(value_parser = dots)]
        m1: u32,
        #[arg(value_parser = dots)]
        m2: u32,
        #[arg(value_parser = dots)]
        m3: u32,
    },
}

#[derive(Subcommand)]
enum WebCmd {
    /// Sizes, planarity and the 1-sets with their cycle counts
    Info { file: PathBuf },
    /// Number of Tait colorings
    Tait { file: PathBuf },
    /// Rank predicted for a planar embedding
    PredictRank { file: PathBuf },
}

#[derive(Args)]
struct OpsFlags {
    /// Print the basis and operator matrices
    #[arg(long)]
    show: bool,
    /// Verify the operator relations
    #[arg(long)]
    check: bool,
    /// Edge decomposition over the fraction field
    #[arg(long)]
    decompose: bool,
}

#[derive(Subcommand)]
enum OpsCmd {
    Unknot(OpsFlags),
    Theta(OpsFlags),
}

#[derive(Args)]
struct AnalysisFlags {
    /// Substitution line, 1,1,1 or 1,1,0 (default: both)
    #[arg(long)]
    direction: Option<Direction>,
    /// Seed for the randomized rank checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Analyze a complex file {"rank": n, "differential": [[...]]}
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        flags: AnalysisFlags,
    },
    /// The cone of P on R^2
    ConeP(AnalysisFlags),
    /// The linked handcuffs model, cone of u^2 + P on the unknot module
    HandcuffsLinked(AnalysisFlags),
    /// Certify that P vanishes to order 4 at (1,1,1)
    CertifyOrder4,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Display) -> Self {
        Self {
            code,
            message: message.to_string(),
        }
    }
}

impl From<WebError> for Failure {
    fn from(e: WebError) -> Self {
        let code = match e {
            WebError::Trivalence(_) => EXIT_INVALID,
            _ => EXIT_MALFORMED,
        };
        Failure::new(code, e)
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        let code = match e {
            HomologyError::Json { .. } | HomologyError::Shape { .. } | HomologyError::RowCount { .. } | HomologyError::Entry { .. } => {
                EXIT_MALFORMED
            }
            HomologyError::NotSquare { .. }
            | HomologyError::NotSquareZero { .. }
            | HomologyError::RankDrop { .. }
            | HomologyError::SingularSubstitution { .. }
            | HomologyError::TooLarge(_) => EXIT_INVALID,
            HomologyError::Rank(_) | HomologyError::UctMismatch { .. } => EXIT_INTERNAL,
        };
        Failure::new(code, e)
    }
}

impl From<OperatorError> for Failure {
    fn from(e: OperatorError) -> Self {
        Failure::new(EXIT_INTERNAL, e)
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_MALFORMED, format!("{}: {e}", path.display())))
}

fn load_web(path: &Path) -> Result<Web, Failure> {
    let text = read(path)?;
    Web::from_json(&text).map_err(|e| {
        let f = Failure::from(e);
        Failure::new(f.code, format!("{}: {}", path.display(), f.message))
    })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON value serializes"));
}

fn foam_cmd(cmd: FoamCmd, as_json: bool) -> Outcome {
    let (input, value) = match cmd {
        FoamCmd::Sphere { m } => (json!({ "sphere": m }), foam::eval_sphere(m)),
        FoamCmd::Theta { m1, m2, m3 } => (json!({ "theta": [m1, m2, m3] }), foam::eval_theta([m1, m2, m3])),
    };
    if as_json {
        print_json(&json!({ "input": input, "value": value.to_string() }));
    } else {
        println!("{value}");
    }
    Ok(true)
}

fn web_cmd(cmd: WebCmd, as_json: bool) -> Outcome {
    match cmd {
        WebCmd::Info { file } => {
            let web = load_web(&file)?;
            let mut sets = Vec::new();
            for s in webs::enumerate_one_sets(&web) {
                let even = webs::is_even(&web, &s)?;
                let n = webs::complement_cycles(&web, &s)?.count();
                sets.push((s.ids(&web).join(","), even, n));
            }
            let planar = webs::abstract_planarity(&web);
            if as_json {
                print_json(&json!({
                    "name": web.name(),
                    "vertices": web.num_vertices(),
                    "edges": web.num_edges(),
                    "loops": web.num_loops(),
                    "circles": web.num_circles(),
                    "declared_planar": web.declared_planar(),
                    "abstract_planar": planar,
                    "one_sets": sets.iter().map(|(s, even, n)| json!({ "edges": s, "even": even, "cycles": n })).collect::<Vec<_>>(),
                }));
            } else {
                println!("name: {}", web.name());
                println!("vertices: {}, edges: {}, loops: {}, circles: {}", web.num_vertices(), web.num_edges(), web.num_loops(), web.num_circles());
                println!("planar: declared {}, abstract graph {}", web.declared_planar(), planar);
                println!("1-sets: {}", sets.len());
                for (s, even, n) in &sets {
                    println!("  {{{s}}} {} n={n}", if *even { "even" } else { "odd" });
                }
            }
            Ok(true)
        }
        WebCmd::Tait { file } => {
            let web = load_web(&file)?;
            let direct = webs::count_tait_backtracking(&web);
            let formula = webs::count_tait_matching_formula(&web);
            if direct != formula {
                return Err(Failure::new(
                    EXIT_INTERNAL,
                    format!("Tait count {direct} disagrees with the even 1-set formula {formula}"),
                ));
            }
            if as_json {
                print_json(&json!({ "name": web.name(), "backtracking": direct.to_string(), "matching_formula": formula.to_string() }));
            } else {
                println!("{direct}");
            }
            Ok(true)
        }
        WebCmd::PredictRank { file } => {
            let web = load_web(&file)?;
            let p = webs::predict_planar_rank(&web);
            if as_json {
                print_json(&json!({
                    "name": web.name(),
                    "rank": p.rank.to_string(),
                    "declared_planar": p.declared_planar,
                    "abstract_planar": p.abstract_planar,
                    "warnings": p.warnings,
                }));
            } else {
                for w in &p.warnings {
                    eprintln!("warning: {w}");
                }
                println!("{}", p.rank);
            }
            Ok(true)
        }
    }
}

fn ops_cmd(cmd: OpsCmd, as_json: bool) -> Outcome {
    let (module, mut flags) = match cmd {
        OpsCmd::Unknot(f) => (operators::unknot_module(), f),
        OpsCmd::Theta(f) => (operators::theta_module()?, f),
    };
    if !(flags.show || flags.check || flags.decompose) {
        flags.show = true;
        flags.check = true;
    }
    let mut ok = true;
    let mut out = serde_json::Map::new();
    out.insert("module".into(), json!(module.name));
    out.insert("rank".into(), json!(module.rank()));
    let mut text = Vec::new();
    text.push(format!("{} module, rank {}", module.name, module.rank()));
    if flags.show {
        show(&module, &mut out, &mut text);
    }
    if flags.check {
        let mut checks = operators::check_module_invariants(&module).checks;
        for v in &module.vertices {
            let ids = v.map(|k| module.operators[k].0.as_str());
            checks.extend(operators::check_vertex_relations(&module, ids)?.checks);
        }
        ok &= checks.iter().all(|c| c.holds);
        for c in &checks {
            text.push(format!("{} {}", if c.holds { "PASS" } else { "FAIL" }, c.identity));
        }
        out.insert("checks".into(), json!(checks));
    }
    if flags.decompose {
        let d = operators::edge_decomposition(&module)?;
        let mut rows = Vec::new();
        text.push("edge decomposition over Frac(R):".into());
        for s in &d.summands {
            let ids: Vec<&str> = s.subset.iter().map(|&e| d.edges[e].as_str()).collect();
            text.push(format!("  V({{{}}}) rank {}", ids.join(", "), s.rank()));
            rows.push(json!({ "subset": ids, "rank": s.rank() }));
        }
        text.push(format!("  total {}", d.total_rank()));
        let pr = &d.projections;
        text.push(format!(
            "{} projections: idempotent {}, orthogonal {}, sum to identity {}",
            if pr.holds() { "PASS" } else { "FAIL" },
            pr.idempotent,
            pr.orthogonal,
            pr.sum_to_identity
        ));
        ok &= pr.holds();
        out.insert("decomposition".into(), json!(rows));
        out.insert("projections".into(), json!(pr));
    }
    if as_json {
        out.insert("ok".into(), json!(ok));
        print_json(&Value::Object(out));
    } else {
        println!("{}", text.join("\n"));
    }
    Ok(ok)
}

fn show(module: &OperatorModule, out: &mut serde_json::Map<String, Value>, text: &mut Vec<String>) {
    text.push(format!("basis: {}", module.basis_labels.join(", ")));
    let mut ops = serde_json::Map::new();
    for (id, u) in &module.operators {
        text.push(format!("u_{id} =\n{u}"));
        let rows: Vec<Vec<String>> = u.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        ops.insert(id.clone(), json!(rows));
    }
    out.insert("basis".into(), json!(module.basis_labels));
    out.insert("operators".into(), Value::Object(ops));
}

fn directions(d: Option<Direction>) -> Vec<Direction> {
    d.map_or(Direction::ALL.to_vec(), |d| vec![d])
}

fn analyze(c: &DifferentialModule, flags: &AnalysisFlags, extra: Value, as_json: bool) -> Outcome {
    let mut rng = seeded_rng(flags.seed);
    let frac = c.homology_frac_rank(&mut rng)?;
    let f2 = c.homology_f2_dim();
    let reports: Vec<SpecializationReport> = directions(flags.direction)
        .into_iter()
        .map(|d| c.bockstein_analysis(d, &mut rng))
        .collect::<Result<_, _>>()?;
    if as_json {
        let mut v = json!({ "rank": c.rank(), "frac_rank": frac, "f2_dim": f2, "specializations": reports });
        if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
            m.extend(e);
        }
        print_json(&v);
    } else {
        if let Value::Object(e) = extra {
            for (k, v) in e {
                println!("{k}: {v}");
            }
        }
        println!("rank {}, frac_rank {frac}, f2_dim {f2}", c.rank());
        for r in &reports {
            let t: Vec<String> = r.torsion_exponents.iter().map(|k| k.to_string()).collect();
            println!("direction {}: r={} l={} torsion {{{}}}", r.direction, r.r, r.l, t.join(", "));
        }
    }
    Ok(f2 >= frac)
}

fn complex_cmd(cmd: ComplexCmd, as_json: bool) -> Outcome {
    match cmd {
        ComplexCmd::Analyze { file, flags } => {
            let c = DifferentialModule::from_json(&read(&file)?).map_err(|e| {
                let f = Failure::from(e);
                Failure::new(f.code, format!("{}: {}", file.display(), f.message))
            })?;
            analyze(&c, &flags, json!({}), as_json)
        }
        ComplexCmd::ConeP(flags) => analyze(&homological::cone_of_p(), &flags, json!({}), as_json),
        ComplexCmd::HandcuffsLinked(flags) => {
            let h = homological::linked_handcuffs_model(&mut seeded_rng(flags.seed))?;
            let map: Vec<Vec<String>> = h.map.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            let extra = json!({ "map": map, "kernel_rank": h.kernel_rank, "cokernel_rank": h.cokernel_rank });
            analyze(&h.complex, &flags, extra, as_json)
        }
        ComplexCmd::CertifyOrder4 => {
            let c = homological::order_four_certificate();
            if as_json {
                print_json(&json!(c));
            } else {
                for f in &c.facts {
                    println!("{} {}: {}", if f.holds { "PASS" } else { "FAIL" }, f.claim, f.value);
                }
            }
            Ok(c.all_hold())
        }
    }
}

fn verify_all(seed: u64, corpus: Option<PathBuf>, as_json: bool) -> Outcome {
    let mut results: Vec<Value> = Vec::new();
    let mut lines = Vec::new();
    let mut ok = true;
    for r in verify::run_all(seed) {
        ok &= r.passed;
        lines.push(format!("{} {} {:<28} {} ({} ms)", if r.passed { "PASS" } else { "FAIL" }, r.id, r.name, r.detail, r.elapsed_ms));
        results.push(json!(r));
    }
    if let Some(dir) = corpus {
        let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
            .map_err(|e| Failure::new(EXIT_MALFORMED, format!("{}: {e}", dir.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for path in paths {
            let web = load_web(&path)?;
            let a = webs::count_tait_backtracking(&web);
            let b = webs::count_tait_matching_formula(&web);
            ok &= a == b;
            let name = path.display().to_string();
            lines.push(format!("{} - {:<28} backtracking {a}, formula {b}", if a == b { "PASS" } else { "FAIL" }, name));
            results.push(json!({ "file": name, "passed": a == b, "backtracking": a.to_string(), "formula": b.to_string() }));
        }
    }
    if as_json {
        print_json(&json!({ "ok": ok, "results": results }));
    } else {
        println!("{}", lines.join("\n"));
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Foam(c) => foam_cmd(c, cli.json),
        Command::Web(c) => web_cmd(c, cli.json),
        Command::Ops(c) => ops_cmd(c, cli.json),
        Command::Complex(c) => complex_cmd(c, cli.json),
        Command::VerifyAll { seed, corpus } => verify_all(seed, corpus, cli.json),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use jsharp_core::foam::MAX_CLI_DOTS;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn dot_limit_is_enforced() {
        assert_eq!(dots("64"), Ok(MAX_CLI_DOTS));
        assert!(dots("65").is_err());
        assert!(dots("-1").is_err());
    }
}
