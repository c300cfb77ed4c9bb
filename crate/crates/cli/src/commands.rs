use std::fs;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pangalactic::division::{long_divide, short_divide, Schedule};
use pangalactic::hilbert::{ChainError, ChainFamily, Swallow};
use pangalactic::io::{pairs_json, CbInput, CancelInput, Instance, ProductInput, SubtractInput, SubtractMultiInput};
use pangalactic::laws::{cb_combine, cancel_to_bijection, euclid_divide, general_divide, subtract, subtract_multi, CbVariant, EuclidStep};
use pangalactic::model::{verify_bijection, verify_injection, Ident, Mode, Sum, Witness};
use pangalactic::shipshape::{render_trace, RoundTrace, ShipOutPolicy};
use pangalactic::solitaire::{estimate_win_rate, Strategy, DEFAULT_CAP};
use pangalactic::worked::{forty_card_deal, GOLDEN_TRACE};
use serde_json::{json, Value};

use crate::server;

#[derive(Debug, Parser)]
#[command(name = "pangalactic", version, about = "Division by shipshaping, cancellation laws and Pan Galactic Solitaire")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Divide an injection n×A → n×B by n.
    Divide(DivideArgs),
    /// Regenerate the forty-card trace and compare it with the shipped copy.
    Golden(GoldenArgs),
    /// Apply a cancellation law to witness files.
    Laws(LawArgs),
    /// Evaluate the swallowing injection of a chain family.
    Chains(ChainArgs),
    /// Estimate solitaire win rates by simulation.
    Solitaire(SolitaireArgs),
    /// Serve the solitaire game API over HTTP.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct DivideArgs {
    /// Instance JSON file.
    #[arg(long)]
    pub input: PathBuf,
    /// Report file; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Write the rendered trace of the first pass here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Overrides the mode stored in the instance.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// naive, halving, or a factor list such as 2,3,2.
    #[arg(long, default_value = "halving", value_parser = parse_schedule)]
    pub schedule: Schedule,
    #[arg(long, value_enum, default_value_t = PolicyArg::AllBad)]
    pub policy: PolicyArg,
}

#[derive(Debug, Args)]
pub struct GoldenArgs {
    /// Also write the regenerated trace here.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LawArgs {
    #[arg(value_enum)]
    pub law: Law,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = VariantArg::GiveForward)]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value_t = StepArg::Multi)]
    pub step: StepArg,
    /// Division method used inside the Euclidean recursion.
    #[arg(long, value_enum, default_value_t = ModeArg::Short)]
    pub mode: ModeArg,
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    /// Chain family JSON file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Tags or natural numbers to map. With none, the family is summarised.
    pub queries: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SolitaireArgs {
    #[arg(long, default_value = "random", value_parser = parse_strategy)]
    pub strategy: Strategy,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u32,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    /// Snapshot file loaded at start and written on shutdown.
    #[arg(long)]
    pub persist: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Long,
    Short,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Long => Mode::Long,
            ModeArg::Short => Mode::Short,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    AllBad,
    LeftmostOnly,
}

impl From<PolicyArg> for ShipOutPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::AllBad => ShipOutPolicy::AllBad,
            PolicyArg::LeftmostOnly => ShipOutPolicy::LeftmostOnly,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Law {
    CantorBernstein,
    Subtract,
    SubtractMulti,
    Euclid,
    GeneralDivide,
    CancelToBijection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    GiveForward,
    ClawBack,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StepArg {
    Naive,
    Multi,
}

fn parse_schedule(s: &str) -> Result<Schedule, String> {
    match s.to_ascii_lowercase().as_str() {
        "naive" => Ok(Schedule::Naive),
        "halving" => Ok(Schedule::Halving),
        list => list
            .split(',')
            .map(|k| k.trim().parse::<usize>().map_err(|_| format!("bad schedule {s:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Schedule::Factors),
    }
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

/// Failure classes, each with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or unreadable input: exit 2.
    Usage(String),
    /// A result did not verify: exit 1.
    Verify(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Verify(_) => 1,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, value: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize") + "\n";
    match output {
        Some(p) => write(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check(ok: bool, what: &str) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify(format!("{what} failed verification")))
    }
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Divide(a) => divide(a),
        Command::Golden(a) => golden(a),
        Command::Laws(a) => laws(a),
        Command::Chains(a) => chains(a),
        Command::Solitaire(a) => solitaire(a),
        Command::Serve(a) => serve(a),
    }
}

fn write_trace(path: Option<&Path>, trace: Option<&RoundTrace>) -> Result<(), Failure> {
    let Some(path) = path else { return Ok(()) };
    let text = match trace {
        Some(t) => render_trace(t).map_err(usage)?,
        None => String::new(),
    };
    write(path, &text)
}

fn divide(args: DivideArgs) -> Result<(), Failure> {
    let inst: Instance = Instance::parse(&read(&args.input)?).map_err(usage)?;
    let f = inst.witness().map_err(usage)?;
    let mode = args.mode.map(Mode::from).unwrap_or(inst.mode);
    let (n, a, b) = (inst.n, &inst.a, &inst.b);
    let report = match mode {
        Mode::Long => {
            let r = long_divide(n, a, b, &f, &args.schedule, args.policy.into()).map_err(usage)?;
            check(verify_injection(&r.result).map_err(usage)?, "division result")?;
            write_trace(args.trace.as_deref(), r.first_pass.as_ref())?;
            let mut doc = serde_json::to_value(r.to_doc()).expect("serializable");
            doc["mode"] = json!("long");
            doc
        }
        Mode::Short => {
            let out = short_divide(n, a, b, &f).map_err(usage)?;
            check(verify_injection(&out.result).map_err(usage)?, "division result")?;
            write_trace(args.trace.as_deref(), Some(&out.trace))?;
            json!({
                "mode": "short",
                "passes": 1,
                "total_swaps": out.swaps,
                "per_pass": [out.swaps],
                "result": pairs_json(&out.result),
                "good_set": out.good_set,
            })
        }
    };
    emit(args.output.as_deref(), &report)
}

fn golden(args: GoldenArgs) -> Result<(), Failure> {
    let (_, trace) = pangalactic::shipshape::run_pass(&forty_card_deal(), ShipOutPolicy::AllBad).map_err(usage)?;
    let text = render_trace(&trace).map_err(usage)?;
    if let Some(p) = &args.output {
        write(p, &text)?;
    }
    let ours: Vec<&str> = text.lines().collect();
    let shipped: Vec<&str> = GOLDEN_TRACE.lines().collect();
    let mut differ = false;
    for i in 0..ours.len().max(shipped.len()) {
        let (x, y) = (ours.get(i), shipped.get(i));
        if x != y {
            differ = true;
            println!("line {}:\n- {}\n+ {}", i + 1, y.unwrap_or(&""), x.unwrap_or(&""));
        }
    }
    if differ || text != GOLDEN_TRACE {
        return Err(Failure::Verify("regenerated trace differs from the shipped golden file".into()));
    }
    eprintln!("golden trace matches ({} bytes)", text.len());
    Ok(())
}

/// `"x"` for a plain element and `[copy, "c"]` for a copy of `C`.
fn elem(x: &Sum<String, (usize, String)>) -> Value {
    match x {
        Sum::Left(s) => json!(s),
        Sum::Right((i, c)) => json!([i, c]),
    }
}

fn quotient_json<A: Ident, B: Ident>(q: &pangalactic::laws::Quotient<A, B>) -> Value {
    let wit = |pairs: Vec<(String, usize, String)>| -> Value {
        pairs.into_iter().map(|(x, i, r)| json!([x, [i, r]])).collect()
    };
    json!({
        "R": q.r.iter().map(Ident::label).collect::<Vec<_>>(),
        "a_wit": wit(q.a_wit.pairs().map(|(x, (i, r))| (x.label(), *i, r.label())).collect()),
        "b_wit": wit(q.b_wit.pairs().map(|(y, (i, r))| (y.label(), *i, r.label())).collect()),
        "depth": q.depth,
    })
}

fn laws(args: LawArgs) -> Result<(), Failure> {
    let step = match args.step {
        StepArg::Naive => EuclidStep::Naive,
        StepArg::Multi => EuclidStep::Multi,
    };
    let method = match args.mode {
        ModeArg::Long => pangalactic::division::Method::Long,
        ModeArg::Short => pangalactic::division::Method::Short,
    };
    let out = match args.law {
        Law::CantorBernstein => {
            let input: CbInput = parse_json(&args.input)?;
            let (f, g) = input.witnesses().map_err(usage)?;
            let variant = match args.variant {
                VariantArg::GiveForward => CbVariant::GiveForward,
                VariantArg::ClawBack => CbVariant::ClawBack,
            };
            let h = cb_combine(&f, &g, variant).map_err(usage)?;
            check(verify_bijection(&h).map_err(usage)?, "bijection")?;
            json!({ "bijection": pairs_json(&h) })
        }
        Law::Subtract => {
            let input: SubtractInput = parse_json(&args.input)?;
            let r = subtract(&input.witness().map_err(usage)?).map_err(usage)?;
            check(verify_injection(&r).map_err(usage)?, "injection")?;
            json!({ "injection": pairs_json(&r) })
        }
        Law::SubtractMulti => {
            let input: SubtractMultiInput = parse_json(&args.input)?;
            let r = subtract_multi(input.m, input.n, &input.witness().map_err(usage)?).map_err(usage)?;
            check(verify_injection(&r).map_err(usage)?, "injection")?;
            let pairs: Vec<Value> = r.pairs().map(|(x, y)| json!([x, elem(y)])).collect();
            json!({ "injection": pairs })
        }
        Law::Euclid | Law::GeneralDivide => {
            let input: ProductInput = parse_json(&args.input)?;
            let f = input.witness().map_err(usage)?;
            let q = if args.law == Law::Euclid {
                euclid_divide(input.m, input.n, &input.a, &input.b, &f, step, method)
            } else {
                general_divide(input.m, input.n, &input.a, &input.b, &f, step, method)
            }
            .map_err(usage)?;
            check(
                verify_bijection(&q.a_wit).map_err(usage)? && verify_bijection(&q.b_wit).map_err(usage)?,
                "quotient witnesses",
            )?;
            quotient_json(&q)
        }
        Law::CancelToBijection => {
            let input: CancelInput = parse_json(&args.input)?;
            let (f, g) = input.witnesses().map_err(usage)?;
            let h: Witness<String, String> = cancel_to_bijection(input.n, &input.a, &input.b, &f, &g).map_err(usage)?;
            check(verify_bijection(&h).map_err(usage)?, "bijection")?;
            json!({ "bijection": pairs_json(&h) })
        }
    };
    emit(args.output.as_deref(), &out)
}

fn chains(args: ChainArgs) -> Result<(), Failure> {
    let fam: ChainFamily = parse_json(&args.input)?;
    match fam.check() {
        Ok(()) => {}
        Err(ChainError::Overlap(x, y)) => return Err(Failure::Verify(format!("chains {x} and {y} share a card"))),
        Err(e) => return Err(usage(e)),
    }
    let s = Swallow::new(&fam).map_err(usage)?;
    let out = if args.queries.is_empty() {
        let tags: serde_json::Map<String, Value> = fam
            .chains
            .iter()
            .map(|(tag, c)| {
                let t = c.trim();
                let ranks: Vec<usize> = (0..8).map(|k| t.rank(k)).collect();
                (tag.clone(), json!({ "limiting_suit": c.limiting_suit(), "trimmed": ranks }))
            })
            .collect();
        json!({ "n": fam.n, "disjoint": true, "chains": tags })
    } else {
        let rows = args
            .queries
            .iter()
            .map(|q| {
                let x = match q.parse::<usize>() {
                    Ok(k) => Sum::Right(k),
                    Err(_) => Sum::Left(q.clone()),
                };
                let image = s.apply(&x).map_err(usage)?;
                Ok(json!({ "query": q, "image": image }))
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        Value::Array(rows)
    };
    emit(args.output.as_deref(), &out)
}

fn solitaire(args: SolitaireArgs) -> Result<(), Failure> {
    let report = estimate_win_rate(args.strategy, args.trials, args.seed, args.cap).map_err(usage)?;
    emit(args.output.as_deref(), &serde_json::to_value(report).expect("serializable"))
}

fn serve(args: ServeArgs) -> Result<(), Failure> {
    let store = match &args.persist {
        Some(p) if p.exists() => server::Store::load(p).map_err(usage)?,
        _ => server::Store::default(),
    };
    let rt = tokio::runtime::Runtime::new().map_err(usage)?;
    rt.block_on(async {
        let addr = SocketAddr::from(([127, 0, 0, 1], args.port));
        let listener = tokio::net::TcpListener::bind(addr).await.map_err(usage)?;
        eprintln!("listening on http://{addr}");
        axum::serve(listener, server::router(store.clone()))
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
            .map_err(usage)
    })?;
    if let Some(p) = &args.persist {
        store.save(p).map_err(usage)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedules_parse() {
        assert_eq!(parse_schedule("naive").unwrap(), Schedule::Naive);
        assert_eq!(parse_schedule("Halving").unwrap(), Schedule::Halving);
        assert_eq!(parse_schedule("2, 3,2").unwrap(), Schedule::Factors(vec![2, 3, 2]));
        assert!(parse_schedule("fast").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::Usage(String::new()).code(), 2);
        assert_eq!(Failure::Verify(String::new()).code(), 1);
    }

    #[test]
    fn copies_render_as_pairs() {
        assert_eq!(elem(&Sum::Left("b".into())), json!("b"));
        assert_eq!(elem(&Sum::Right((1, "c".into()))), json!([1, "c"]));
    }
}
