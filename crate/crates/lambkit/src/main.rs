use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lambkit::claims::{self, DEFAULT_SEED};
use lambkit::dot::graph_to_dot;
use lambkit::hypfile::read_hypotheses;
use lambkit::json::{pairs, parse_model, proof_to_json, GraphJson, LoadedModel, ModelJson};
use lambkit_core::calculus::{CalculusConfig, Preset};
use lambkit_core::countermodel::{
    find_countermodel, Line, Mode, ModelClass, SearchError, SearchOutcome, SearchSpec,
    DEFAULT_FAMILY_CAP,
};
use lambkit_core::prover::{prove_from_hypotheses, ProofStatus, Route};
use lambkit_core::relmodel::{check_model, eval, Relation};
use lambkit_core::syntax::{Formula, Sequent};
use lambkit_core::unigraph::{
    label_calculus, Check, GraphBuilder, GraphChecker, GraphReport, Variant,
};
use serde_json::json;

const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "lambkit",
    version,
    about = "Lambek calculus with intersection and constants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sequent.
    Prove(ProveArgs),
    /// Search finite models for one that refutes a sequent.
    Countermodel(CountermodelArgs),
    /// Evaluate a formula in a model file.
    Eval {
        formula: String,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check the laws of a model file.
    CheckModel { model: PathBuf },
    /// Build or check labelled graphs.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Run the reproduction suite.
    VerifyPaper {
        /// Claim id or tag.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long, env = "LAMBKIT_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct ProveArgs {
    sequent: String,
    #[arg(long, default_value = "L01")]
    calculus: String,
    /// File of hypotheses, one sequent per line.
    #[arg(long)]
    hyp: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = RouteArg::Direct)]
    route: RouteArg,
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long)]
    max_antecedent: Option<usize>,
    #[arg(long)]
    omega_bound: Option<usize>,
    #[arg(long)]
    max_steps: Option<u64>,
    /// Print the status and proof tree as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Direct,
    Bang,
}

#[derive(Args)]
struct CountermodelArgs {
    sequent: String,
    /// Largest number of worlds.
    #[arg(long, default_value_t = 3)]
    max_size: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, env = "LAMBKIT_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ClassArg::Standard)]
    class: ClassArg,
    /// Non-standard families need not be closed under composition.
    #[arg(long)]
    product_free: bool,
    #[arg(long, default_value_t = DEFAULT_FAMILY_CAP)]
    family_cap: usize,
    /// Allow exhaustive search on four worlds.
    #[arg(long)]
    allow_large: bool,
    /// Sample the diagonal, full and single-pair relations more often.
    #[arg(long)]
    structured: bool,
    #[arg(long)]
    hyp: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Standard,
    Relativised,
    Nonstandard,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Run the staged construction and print the graph as JSON.
    Build {
        #[arg(long, default_value_t = 30)]
        steps: usize,
        /// Formula to schedule; repeatable.
        #[arg(long = "formula", required = true)]
        formulas: Vec<String>,
        #[arg(long, value_enum, default_value_t = VariantArg::Full)]
        variant: VariantArg,
        #[arg(long)]
        hyp: Option<PathBuf>,
        /// Also write Graphviz output here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the structural properties of a graph JSON file.
    Check {
        graph: PathBuf,
        #[arg(long)]
        hyp: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Full,
    ProductFree,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Prove(a) => cmd_prove(a),
        Command::Countermodel(a) => cmd_countermodel(a),
        Command::Eval {
            formula,
            model,
            json,
        } => cmd_eval(&formula, &model, json),
        Command::CheckModel { model } => cmd_check_model(&model),
        Command::Graph(GraphCommand::Build {
            steps,
            formulas,
            variant,
            hyp,
            dot,
        }) => cmd_graph_build(steps, &formulas, variant, hyp.as_deref(), dot.as_deref()),
        Command::Graph(GraphCommand::Check { graph, hyp }) => {
            cmd_graph_check(&graph, hyp.as_deref())
        }
        Command::VerifyPaper { only, json, seed } => cmd_verify(only.as_deref(), json, seed),
    }
}

fn parse_sequent(text: &str) -> Result<Sequent> {
    text.parse().with_context(|| format!("sequent `{}`", text))
}

fn hypotheses(path: Option<&Path>) -> Result<Vec<Sequent>> {
    path.map_or(Ok(Vec::new()), read_hypotheses)
}

fn status_code(st: &ProofStatus) -> u8 {
    match st {
        ProofStatus::Proved(_) | ProofStatus::ProvedApprox { .. } => 0,
        ProofStatus::Refuted | ProofStatus::RefutedBounded { .. } => 1,
        ProofStatus::Unknown(_) => 2,
    }
}

fn cmd_prove(a: ProveArgs) -> Result<u8> {
    let preset: Preset = a.calculus.parse()?;
    let s = parse_sequent(&a.sequent)?;
    let mut cfg = CalculusConfig::preset(preset).with_hypotheses(hypotheses(a.hyp.as_deref())?);
    if let Some(d) = a.max_depth {
        cfg.max_depth = d;
    }
    if let Some(n) = a.max_antecedent {
        cfg.max_antecedent = n;
    }
    if let Some(n) = a.omega_bound {
        cfg.omega_bound = n;
    }
    if let Some(n) = a.max_steps {
        cfg.max_steps = n;
    }
    cfg.validate()?;
    let route = match a.route {
        RouteArg::Direct => Route::Direct,
        RouteArg::Bang => Route::Bang { conservative: true },
    };
    let st = prove_from_hypotheses(&s, &cfg, route)?;
    if a.json {
        let out = json!({
            "sequent": s.to_string(),
            "calculus": preset.name(),
            "status": st.label(),
            "detail": st.to_string(),
            "proof": st.proof().map(proof_to_json),
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("{}", st);
    }
    Ok(status_code(&st))
}

fn print_line(kind: &str, l: &Line) {
    println!(
        "{:<10} {:<40} {:<5} lhs {} rhs {}",
        kind,
        l.sequent.to_string(),
        if l.holds() { "true" } else { "false" },
        l.antecedent,
        l.succedent
    );
}

fn line_json(l: &Line) -> serde_json::Value {
    json!({
        "sequent": l.sequent.to_string(),
        "holds": l.holds(),
        "antecedent": pairs(&l.antecedent),
        "succedent": pairs(&l.succedent),
    })
}

fn cmd_countermodel(a: CountermodelArgs) -> Result<u8> {
    let goal = parse_sequent(&a.sequent)?;
    let hyps = hypotheses(a.hyp.as_deref())?;
    let class = match a.class {
        ClassArg::Standard => ModelClass::StandardSquare,
        ClassArg::Relativised => ModelClass::Relativised,
        ClassArg::Nonstandard => ModelClass::NonStandard {
            product_closed: !a.product_free,
            family_cap: a.family_cap,
        },
    };
    let mode = match a.mode {
        ModeArg::Exhaustive => Mode::Exhaustive {
            allow_large: a.allow_large,
        },
        ModeArg::Random => Mode::Random {
            samples: a.samples,
            seed: a.seed,
        },
    };
    let spec = SearchSpec {
        max_n: a.max_size,
        mode,
        class,
        structured_bias: a.structured,
    };
    let outcome = match find_countermodel(&hyps, &goal, &spec) {
        Ok(o) => o,
        Err(e @ (SearchError::Eval(_) | SearchError::NotRelativisable)) => bail!(e),
        Err(e) => bail!("search refused: {}", e),
    };
    match outcome {
        SearchOutcome::Found(c) => {
            let model = ModelJson::from_candidate(&c.model);
            if a.json {
                let out = json!({
                    "found": true,
                    "visited": c.visited,
                    "model": model,
                    "hypotheses": c.certificate.hypotheses.iter().map(line_json).collect::<Vec<_>>(),
                    "goal": line_json(&c.certificate.goal),
                });
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                println!(
                    "countermodel on {} worlds after {} models",
                    c.model.n(),
                    c.visited
                );
                for h in &c.certificate.hypotheses {
                    print_line("hypothesis", h);
                }
                print_line("goal", &c.certificate.goal);
                println!("{}", serde_json::to_string(&model)?);
            }
            Ok(0)
        }
        SearchOutcome::NoneUpTo { visited } => {
            if a.json {
                println!("{}", json!({ "found": false, "visited": visited }));
            } else {
                println!(
                    "none up to spec ({} models visited, at most {} worlds)",
                    visited, a.max_size
                );
            }
            Ok(1)
        }
    }
}

fn load_model(path: &Path) -> Result<LoadedModel> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_model(&text).with_context(|| format!("in {}", path.display()))
}

fn cmd_eval(formula: &str, path: &Path, as_json: bool) -> Result<u8> {
    let f: Formula = formula
        .parse()
        .with_context(|| format!("formula `{}`", formula))?;
    let v: Relation = match load_model(path)? {
        LoadedModel::Relational(m) => eval(&f, &m)?,
        LoadedModel::NonStandard(m) => eval(&f, &m)?,
    };
    if as_json {
        println!(
            "{}",
            json!({ "formula": f.to_string(), "value": pairs(&v) })
        );
    } else {
        println!("{}", v);
    }
    Ok(0)
}

fn cmd_check_model(path: &Path) -> Result<u8> {
    match load_model(path)? {
        LoadedModel::Relational(m) => {
            println!(
                "relational model on {} worlds{}",
                m.n(),
                if m.is_square() { ", square" } else { "" }
            );
            Ok(0)
        }
        LoadedModel::NonStandard(m) => {
            let v = check_model(&m);
            println!(
                "family of {} relations, unit {}, zero {}",
                m.family.len(),
                m.unit,
                m.zero
            );
            for x in &v {
                println!("violation: {}", x);
            }
            Ok(if v.is_empty() { 0 } else { 1 })
        }
    }
}

fn cmd_graph_build(
    steps: usize,
    formulas: &[String],
    variant: VariantArg,
    hyp: Option<&Path>,
    dot: Option<&Path>,
) -> Result<u8> {
    let universe = formulas
        .iter()
        .map(|f| f.parse().with_context(|| format!("formula `{}`", f)))
        .collect::<Result<Vec<Formula>>>()?;
    let variant = match variant {
        VariantArg::Full => Variant::Full,
        VariantArg::ProductFree => Variant::ProductFree,
    };
    let mut b = GraphBuilder::new(universe, variant, &hypotheses(hyp)?)?;
    b.run(steps)?;
    let g = b.graph();
    println!(
        "{}",
        serde_json::to_string_pretty(&GraphJson::from_graph(g))?
    );
    if let Some(p) = dot {
        std::fs::write(p, graph_to_dot(g, false))
            .with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(0)
}

fn report_lines(r: &GraphReport) -> Vec<(&'static str, &Check)> {
    vec![
        ("transitive", &r.transitive),
        ("reflexive", &r.reflexive),
        ("antisymmetric", &r.antisymmetric),
        ("composition", &r.composition),
    ]
}

fn cmd_graph_check(path: &Path, hyp: Option<&Path>) -> Result<u8> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g: GraphJson = serde_json::from_str(&text).context("graph JSON")?;
    let g = g.to_graph()?;
    let r = GraphChecker::new(label_calculus(&hypotheses(hyp)?)).check(&g);
    let mut code = 0;
    for (name, c) in report_lines(&r) {
        println!("{:<14} {}", name, c);
        code = code.max(match c {
            Check::Pass => 0,
            Check::Fail(_) => 1,
            Check::Indeterminate(_) => 2,
        });
    }
    Ok(code)
}

fn cmd_verify(only: Option<&str>, as_json: bool, seed: u64) -> Result<u8> {
    let selected = claims::select(only);
    if selected.is_empty() {
        bail!(
            "no claim matches `{}`; tags are {}",
            only.unwrap_or(""),
            claims::tags().join(", ")
        );
    }
    let mut reports = Vec::new();
    for c in &selected {
        let r = c.run(seed);
        if !as_json {
            println!(
                "{} claim {} [{}] {} ({} ms): {}",
                if r.passed { "PASS" } else { "FAIL" },
                r.id,
                r.tag,
                r.title,
                r.millis,
                r.detail
            );
        }
        reports.push(r);
    }
    let all = reports.iter().all(|r| r.passed);
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(
                &json!({ "seed": seed, "passed": all, "claims": reports })
            )?
        );
    } else {
        println!(
            "{} of {} claims passed",
            reports.iter().filter(|r| r.passed).count(),
            reports.len()
        );
    }
    Ok(if all { 0 } else { 1 })
}
