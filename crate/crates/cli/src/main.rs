//! Command-line front end: simulation, rendering, deciders, oracles, dynamics and the example zoo.
//!
//! Exit codes: 0 on any verdict, 1 on malformed input, 2 when a resource budget is exceeded.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nuca::debruijn::{
    decide_injective, decide_surjective, injectivity_witness_oracle, surjectivity_oracle, SurjectivityOracle,
};
use nuca::dynamics::{
    certify_strongly_blocking, classify_ca, classify_nuca, detect_global_ultimate_periodicity, find_strongly_blocking,
    refute_blocking, simulate_certificate, CaClassification, ClassifyBounds, NuCaClassification, SampleBudget,
    UltimatePeriodicity,
};
use nuca::engine::{trace, Trace};
use nuca::random::{random_word, ConfigShape};
use nuca::rules::NuCaClass;
use nuca::spec_file::{parse_spec, spec_to_json};
use nuca::{zoo, Alphabet, Budget, EpConfig, LocalRule, NuCaSpec, Word};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "nuca", version, about = "Non-uniform cellular automata toolkit")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the space-time trace of a configuration.
    Simulate(SimulateArgs),
    /// Write the space-time diagram as a binary PGM.
    Render {
        #[command(flatten)]
        sim: SimulateArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide surjectivity and/or injectivity of the global map.
    Decide {
        property: Property,
        #[arg(long)]
        spec: PathBuf,
    },
    /// Brute-force oracles for surjectivity and injectivity.
    Oracle {
        property: Property,
        #[arg(long)]
        spec: PathBuf,
        /// Largest half-width of the enumerated image windows.
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// Strongly blocking words of a CA rule.
    Blocking {
        #[command(subcommand)]
        action: BlockingAction,
    },
    /// Equicontinuity classification of a CA or νCA.
    Classify {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Whether the spec agrees with a rule on every window of n consecutive cells.
    Compat {
        #[arg(long)]
        spec: PathBuf,
        /// Rule table literal over the spec's alphabet.
        #[arg(long)]
        rule: String,
        #[arg(long)]
        n: usize,
    },
    /// Named example automata.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Configuration such as `0*|1@0|0*`.
    #[arg(long)]
    config: String,
    #[arg(long)]
    steps: usize,
    /// Inclusive cell range `a..b`.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,
    /// Print only the final configuration.
    #[arg(long = "final")]
    final_only: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Property {
    Surjective,
    Injective,
    Both,
}

impl Property {
    fn surjective(self) -> bool {
        self != Property::Injective
    }

    fn injective(self) -> bool {
        self != Property::Surjective
    }
}

#[derive(Args, Debug)]
struct RuleArgs {
    /// Spec whose default rule is used.
    #[arg(long, conflicts_with_all = ["rule", "alphabet"])]
    spec: Option<PathBuf>,
    /// Rule table literal.
    #[arg(long, requires = "alphabet")]
    rule: Option<String>,
    #[arg(long)]
    alphabet: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum BlockingAction {
    /// Shortest strongly blocking word in length-lex order.
    Find {
        #[command(flatten)]
        rule: RuleArgs,
        /// Column width; defaults to the rule radius.
        #[arg(long)]
        width: Option<usize>,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Certify one word, optionally checking the certificate by simulation.
    Certify {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long)]
        word: String,
        #[arg(long)]
        width: Option<usize>,
        /// Random νCA to simulate the certificate against.
        #[arg(long, default_value_t = 0)]
        simulate: usize,
    },
    /// Search for contexts that split every column of the word.
    Refute {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long)]
        word: String,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long, default_value_t = 8)]
        horizon: usize,
        #[arg(long, default_value_t = 4)]
        padding: usize,
    },
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long, default_value_t = 4)]
    max_len: usize,
    #[arg(long, default_value_t = 3)]
    max_q: usize,
    #[arg(long, default_value_t = 3)]
    max_p: usize,
    #[arg(long, default_value_t = 4)]
    horizon: usize,
    #[arg(long, default_value_t = 4)]
    padding: usize,
}

impl BoundsArgs {
    fn bounds(&self) -> ClassifyBounds {
        ClassifyBounds {
            max_word_len: self.max_len,
            max_q: self.max_q,
            max_p: self.max_p,
            horizon: self.horizon,
            padding: self.padding,
        }
    }
}

#[derive(Subcommand, Debug)]
enum ZooAction {
    List,
    /// Run the entry's expected-verdict suite.
    Verify {
        name: String,
    },
    /// Space-time diagram from a seeded random finite configuration.
    Render {
        name: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 200)]
        width: usize,
        #[arg(long, default_value_t = 200)]
        height: usize,
    },
    /// Print the entry's spec file.
    Export {
        name: String,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Budget(String),
}

impl From<nuca::Error> for Failure {
    fn from(e: nuca::Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn input(e: impl Display) -> Failure {
    Failure::Input(e.to_string())
}

type Outcome = Result<(), Failure>;

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty window {a}..{b}"));
    }
    Ok((a, b))
}

fn load_spec(path: &Path) -> Result<NuCaSpec, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok(parse_spec(&text)?)
}

fn load_rule(args: &RuleArgs) -> Result<LocalRule, Failure> {
    match (&args.spec, &args.rule, args.alphabet) {
        (Some(path), _, _) => {
            let spec = load_spec(path)?;
            spec.default_rule()
                .cloned()
                .ok_or_else(|| input("the spec has no single default rule"))
        }
        (None, Some(lit), Some(q)) => Ok(LocalRule::parse(Alphabet::new(q)?, lit)?),
        _ => Err(input("give --spec or --rule with --alphabet")),
    }
}

fn print_json(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("json value"));
}

fn simulate(args: &SimulateArgs) -> Result<Trace, Failure> {
    let spec = load_spec(&args.spec)?;
    let x: EpConfig = args.config.parse()?;
    let window = args.window.unwrap_or_else(|| {
        let reach = (spec.radius() * args.steps).min(100) as i64;
        let k = spec.k() as i64;
        (x.offset().min(-k) - reach, (x.end() - 1).max(k) + reach)
    });
    Ok(trace(&spec, &x, window, args.steps)?)
}

fn run_simulate(cli: &Cli, args: &SimulateArgs) -> Outcome {
    if args.final_only {
        let spec = load_spec(&args.spec)?;
        let x: EpConfig = args.config.parse()?;
        let y = nuca::engine::iterate(&spec, &x, args.steps)?;
        if cli.json {
            print_json(json!({ "config": y }));
        } else {
            println!("{y}");
        }
        return Ok(());
    }
    let t = simulate(args)?;
    if cli.json {
        print_json(serde_json::to_value(&t).expect("trace serializes"));
    } else {
        print!("{t}");
    }
    Ok(())
}

fn write_pgm(path: &Path, t: &Trace) -> Outcome {
    fs::write(path, t.to_pgm()).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn run_decide(cli: &Cli, property: Property, path: &Path) -> Outcome {
    let spec = load_spec(path)?;
    let budget = Budget::from_env();
    let surj = property
        .surjective()
        .then(|| decide_surjective(&spec, &budget))
        .transpose()?;
    let inj = property
        .injective()
        .then(|| decide_injective(&spec, &budget))
        .transpose()?;
    if cli.json {
        print_json(json!({ "surjective": surj, "injective": inj }));
    } else {
        if let Some(v) = &surj {
            println!("surjective: {v}");
        }
        if let Some(v) = &inj {
            println!("injective: {v}");
        }
    }
    Ok(())
}

fn run_oracle(cli: &Cli, property: Property, path: &Path, bound: usize) -> Outcome {
    let spec = load_spec(path)?;
    let budget = Budget::from_env();
    let surj = property
        .surjective()
        .then(|| surjectivity_oracle(&spec, bound, &budget))
        .transpose()?;
    let inj = property
        .injective()
        .then(|| injectivity_witness_oracle(&spec, &budget))
        .transpose()?;
    if cli.json {
        let pair = inj.as_ref().map(|p| p.as_ref().map(|(a, b)| json!([a, b])));
        print_json(json!({ "surjective": surj, "injective_collision": pair }));
        return Ok(());
    }
    match surj {
        Some(SurjectivityOracle::RefutedAt { word, n }) => println!("refuted at n={n} word={word}@-{n}"),
        Some(SurjectivityOracle::ConsistentUpTo(n)) => println!("consistent up to n={n}"),
        None => {}
    }
    match inj {
        Some(Some((a, b))) => println!("collision witness={a};{b}"),
        Some(None) => println!("no collision found"),
        None => {}
    }
    Ok(())
}

fn run_blocking(cli: &Cli, action: &BlockingAction) -> Outcome {
    let budget = Budget::from_env();
    let parse_word = |s: &str| -> Result<Word, Failure> { Ok(s.parse()?) };
    match action {
        BlockingAction::Find { rule, width, max_len } => {
            let f = load_rule(rule)?;
            let s = width.unwrap_or(f.radius()).max(1);
            let cert = find_strongly_blocking(&f, s, *max_len, &budget)?;
            if cli.json {
                print_json(json!({ "certificate": cert }));
            } else {
                match cert {
                    Some(c) => println!(
                        "blocking: {} offset={} preperiod={} period={}",
                        c.word, c.offset, c.preperiod, c.period
                    ),
                    None => println!("blocking: none up to length {max_len}"),
                }
            }
        }
        BlockingAction::Certify {
            rule,
            word,
            width,
            simulate,
        } => {
            let f = load_rule(rule)?;
            let u = parse_word(word)?;
            let s = width.unwrap_or(f.radius()).max(1);
            let cert = certify_strongly_blocking(&f, &u, s, &budget)?;
            let mismatches = match (&cert, *simulate) {
                (Some(c), n) if n > 0 => Some(simulate_certificate(
                    &f,
                    c,
                    n,
                    16,
                    &mut StdRng::seed_from_u64(cli.seed),
                )?),
                _ => None,
            };
            if cli.json {
                print_json(json!({ "certificate": cert, "mismatches": mismatches }));
            } else {
                match &cert {
                    Some(c) => {
                        let columns: Vec<String> = c.column.iter().map(Word::to_string).collect();
                        println!(
                            "certified: yes offset={} preperiod={} period={} columns={}",
                            c.offset,
                            c.preperiod,
                            c.period,
                            columns.join(",")
                        );
                    }
                    None => println!("certified: no"),
                }
                if let Some(m) = mismatches {
                    println!("simulation mismatches: {m}");
                }
            }
        }
        BlockingAction::Refute {
            rule,
            word,
            width,
            horizon,
            padding,
        } => {
            let f = load_rule(rule)?;
            let u = parse_word(word)?;
            let s = width.unwrap_or(f.radius()).max(1);
            let refutation = refute_blocking(&f, &u, s, *horizon, *padding, &budget)?;
            if cli.json {
                print_json(json!({ "refutation": refutation }));
            } else {
                match refutation {
                    Some(r) => {
                        println!("refuted: yes");
                        for split in r.splits {
                            println!(
                                "offset {} splits at t={}: {} vs {}",
                                split.offset, split.time, split.first, split.second
                            );
                        }
                    }
                    None => println!("refuted: no (horizon {horizon}, padding {padding})"),
                }
            }
        }
    }
    Ok(())
}

fn ca_line(c: &CaClassification) -> String {
    match c {
        CaClassification::Equicontinuous {
            preperiod,
            period,
            block_len,
            blocks_certified,
        } => {
            let certified = match blocks_certified {
                Some(true) => "yes",
                Some(false) => "no",
                None => "unchecked",
            };
            format!("class: equicontinuous preperiod={preperiod} period={period} block_len={block_len} blocks_certified={certified}")
        }
        CaClassification::AlmostEquicontinuousCert { certificate } => {
            format!(
                "class: almost-equicontinuous word={} offset={}",
                certificate.word, certificate.offset
            )
        }
        CaClassification::NoBlockingWordUpTo {
            max_len,
            horizon,
            refuted,
            total,
        } => {
            format!("class: no-blocking-word max_len={max_len} horizon={horizon} refuted={refuted}/{total}")
        }
    }
}

fn run_classify(cli: &Cli, path: &Path, bounds: &BoundsArgs) -> Outcome {
    let spec = load_spec(path)?;
    let budget = Budget::from_env();
    let bounds = bounds.bounds();
    if spec.class_of() == NuCaClass::UniformCA {
        let c = classify_ca(&spec.window()[0], &bounds, &budget)?;
        if cli.json {
            print_json(json!({ "ca": c }));
        } else {
            println!("{}", ca_line(&c));
        }
        return Ok(());
    }
    let c = classify_nuca(&spec, &bounds, &budget)?;
    // sampled evidence of ultimate periodicity for equicontinuous defaults
    let periodicity = match &c {
        NuCaClassification::Equicontinuous { .. } => {
            let sample = SampleBudget {
                samples: 32,
                max_steps: 200,
                max_center_width: 2000,
                config: ConfigShape {
                    alphabet: spec.alphabet(),
                    max_period: 3,
                    max_center: 12,
                    max_offset: 8,
                },
            };
            let mut rng = StdRng::seed_from_u64(cli.seed);
            Some(detect_global_ultimate_periodicity(
                &spec, &bounds, &sample, &mut rng, &budget,
            )?)
        }
        _ => None,
    };
    if cli.json {
        print_json(json!({ "nuca": c, "ultimate_periodicity": periodicity }));
        return Ok(());
    }
    match &c {
        NuCaClassification::Equicontinuous { default, block_len } => {
            println!("class: equicontinuous block_len={block_len}");
            println!("default {}", ca_line(default));
        }
        NuCaClassification::AlmostEquicontinuous { certificate } => {
            println!(
                "class: almost-equicontinuous word={} offset={}",
                certificate.word, certificate.offset
            );
        }
        NuCaClassification::Unknown { reason } => println!("class: unknown ({reason})"),
    }
    match periodicity {
        Some(UltimatePeriodicity::Verified {
            preperiod,
            period,
            samples,
        }) => {
            println!("sampled ultimate periodicity: preperiod={preperiod} period={period} samples={samples}")
        }
        Some(UltimatePeriodicity::Inconclusive { reason }) => {
            println!("sampled ultimate periodicity: inconclusive ({reason})")
        }
        None => {}
    }
    Ok(())
}

fn run_compat(cli: &Cli, path: &Path, rule: &str, n: usize) -> Outcome {
    let spec = load_spec(path)?;
    let f = LocalRule::parse(spec.alphabet(), rule)?;
    let compatible = spec.is_n_compatible(&f, n);
    if cli.json {
        print_json(json!({ "compatible": compatible, "n": n }));
    } else {
        println!("compatible: {}", if compatible { "yes" } else { "no" });
    }
    Ok(())
}

fn zoo_entry(name: &str) -> Result<zoo::ZooEntry, Failure> {
    zoo::entry(name).ok_or_else(|| input(format!("no zoo entry named {name}")))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run_zoo(cli: &Cli, action: &ZooAction) -> Outcome {
    match action {
        ZooAction::List => {
            let entries = zoo::catalog();
            if cli.json {
                let list: Vec<_> = entries
                    .iter()
                    .map(|e| json!({ "name": e.name, "summary": e.summary, "expected": e.expected }))
                    .collect();
                print_json(json!(list));
            } else {
                for e in entries {
                    println!(
                        "{:<26} surjective={:<3} injective={:<3} {}",
                        e.name,
                        yes_no(e.expected.surjective),
                        yes_no(e.expected.injective),
                        e.summary
                    );
                }
            }
        }
        ZooAction::Verify { name } => {
            let e = zoo_entry(name)?;
            let checks = zoo::verify(&e, &Budget::from_env())?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            if cli.json {
                print_json(json!({ "name": e.name, "checks": checks, "failed": failed }));
            } else {
                for c in &checks {
                    println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                }
                println!("{} of {} checks passed", checks.len() - failed, checks.len());
            }
        }
        ZooAction::Render {
            name,
            out,
            width,
            height,
        } => {
            let e = zoo_entry(name)?;
            if *width == 0 || *height == 0 {
                return Err(input("width and height must be positive"));
            }
            let mut rng = StdRng::seed_from_u64(cli.seed);
            let lo = -(*width as i64 / 2);
            let x = EpConfig::finite(0, random_word(&mut rng, e.spec.alphabet(), *width), lo);
            let t = trace(&e.spec, &x, (lo, lo + *width as i64 - 1), height - 1)?;
            write_pgm(out, &t)?;
            println!("wrote {} ({width}x{height})", out.display());
        }
        ZooAction::Export { name } => println!("{}", spec_to_json(&zoo_entry(name)?.spec)),
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Simulate(args) => run_simulate(cli, args),
        Command::Render { sim, out } => {
            let t = simulate(sim)?;
            write_pgm(out, &t)?;
            println!("wrote {}", out.display());
            Ok(())
        }
        Command::Decide { property, spec } => run_decide(cli, *property, spec),
        Command::Oracle { property, spec, bound } => run_oracle(cli, *property, spec, *bound),
        Command::Blocking { action } => run_blocking(cli, action),
        Command::Classify { spec, bounds } => run_classify(cli, spec, bounds),
        Command::Compat { spec, rule, n } => run_compat(cli, spec, rule, *n),
        Command::Zoo { action } => run_zoo(cli, action),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exceeded: {msg}");
            ExitCode::from(2)
        }
    }
}
