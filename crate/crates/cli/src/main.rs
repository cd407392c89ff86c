mod report;
mod table;

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;

use magicineq::evaluator::{EvalError, EvalParams, Evaluator};
use magicineq::forms::{Entry, FormRegistry, Mutation};
use magicineq::numerics::Rational;
use magicineq::verifier::{
    check_cancellations_with, check_f1_derivative_with, check_h_typo_with, check_identities_with,
    check_lemma_constants, check_quadratic_positivity, check_signs_with, check_special_values_with, Certificate,
    MIN_ORDER, MIN_PRECISION,
};

use report::{Config, Format, Point, Report};

const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;
const EXIT_INCONCLUSIVE: u8 = 2;

#[derive(Parser)]
#[command(name = "magicineq", version, about = "Certified checks of the E8 magic-function inequalities")]
#[command(arg_required_else_help = true)]
struct Cli {
    /// Print the low-order coefficient tables of f, g, f̃ and g̃ and exit.
    #[arg(long)]
    golden_table: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// The eleven q-series identities, exact through q^(N-1).
    Identities(Common),
    /// Finite-order sign statements for the coefficient sequences.
    Signs(Common),
    /// Compensating terms in F̃₂ and F̃₃.
    Cancellations(Common),
    /// The t-derivative of F̃₁ on the imaginary axis.
    Derivative(Common),
    /// Positivity of the quadratic factor in that derivative.
    Quadratic(Common),
    /// The three closed-form lemma constants.
    Lemmas(Common),
    /// Series values at z = i against closed forms.
    SpecialValues(Common),
    /// The q³ coefficient of H against the g̃ expansion.
    Typo(Common),
    /// Certify the sign of A(t) or B(t) at one point.
    Eval(EvalArgs),
    /// Certify both signs on a geometric grid.
    Scan(ScanArgs),
}

#[derive(Args, Clone)]
struct Common {
    /// Truncation order N.
    #[arg(long)]
    order: Option<usize>,

    /// Working precision in bits.
    #[arg(long, env = "MAGICINEQ_PRECISION", default_value_t = 128)]
    precision: u32,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Record wall time per check; makes the report nondeterministic.
    #[arg(long)]
    timings: bool,

    /// Perturb one base coefficient, as SERIES:INDEX. Test fixture only.
    #[arg(long, hide = true, value_parser = parse_mutation)]
    mutate: Vec<(Entry, usize)>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    which: Which,

    /// Point on the imaginary axis, as an exact fraction p/q.
    #[arg(long, value_parser = parse_positive_rational)]
    t: Rational,

    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_parser = parse_positive_rational)]
    min: Rational,

    #[arg(long, value_parser = parse_positive_rational)]
    max: Rational,

    #[arg(long, default_value_t = 129)]
    steps: usize,

    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

fn parse_positive_rational(s: &str) -> Result<Rational, String> {
    let r: Rational = s.trim().parse().map_err(|_| format!("expected a fraction p/q, got {s:?}"))?;
    if !r.is_positive() {
        return Err(format!("{s} is not positive"));
    }
    Ok(r)
}

fn parse_mutation(s: &str) -> Result<(Entry, usize), String> {
    let (name, index) = s.split_once(':').ok_or("expected SERIES:INDEX")?;
    let entry: Entry = name.parse()?;
    if !Entry::BASE.contains(&entry) {
        return Err(format!("{entry} is not a base series"));
    }
    let index = index.parse().map_err(|_| format!("bad index {index:?}"))?;
    Ok((entry, index))
}

enum Failure {
    Usage(String),
    Io(String),
    /// Evaluation could not produce a certificate at all.
    Undecided(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::NonPositiveT | EvalError::InvalidGrid => Failure::Usage(e.to_string()),
            other => Failure::Undecided(format!("evaluation failed: {other}")),
        }
    }
}

struct Run {
    common: Common,
    order: usize,
    mutations: Vec<Mutation>,
    timings: BTreeMap<String, f64>,
}

impl Run {
    fn new(common: Common, default_order: usize) -> Result<Self, Failure> {
        let order = common.order.unwrap_or(default_order);
        if order < MIN_ORDER {
            return Err(Failure::Usage(format!("--order must be at least {MIN_ORDER}")));
        }
        if common.precision < MIN_PRECISION {
            return Err(Failure::Usage(format!("--precision must be at least {MIN_PRECISION}")));
        }
        let clean = FormRegistry::new(order);
        let mutations = common.mutate.iter().map(|&(entry, index)| clean.perturbation(entry, index)).collect();
        Ok(Run { common, order, mutations, timings: BTreeMap::new() })
    }

    fn registry(&self) -> FormRegistry {
        FormRegistry::with_mutations(self.order, self.mutations.clone())
    }

    fn params(&self) -> EvalParams {
        EvalParams { order: self.order, precision: self.common.precision }
    }

    fn timed<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.insert(label.to_string(), start.elapsed().as_secs_f64() * 1e3);
        out
    }

    fn config(&self, command: &str) -> Config {
        Config {
            command: command.to_string(),
            order: self.order,
            precision: self.common.precision,
            format: self.common.format,
            mutations: self.common.mutate.iter().map(|(e, i)| format!("{e}:{i}")).collect(),
            which: None,
            t: None,
            t_min: None,
            t_max: None,
            steps: None,
        }
    }

    fn finish(self, config: Config, certificates: Vec<Certificate>, points: Vec<Point>) -> Result<Report, Failure> {
        let timings = self.common.timings.then_some(self.timings);
        Ok(Report::new(config, certificates, points, timings))
    }
}

fn suite(name: &str, common: Common, default_order: usize) -> Result<(Report, Common), Failure> {
    let mut run = Run::new(common.clone(), default_order)?;
    let reg = run.registry();
    let p = run.common.precision;
    let certs = match name {
        "identities" => run.timed(name, || check_identities_with(&reg)),
        "signs" => run.timed(name, || check_signs_with(&reg)),
        "cancellations" => vec![run.timed(name, || check_cancellations_with(&reg))],
        "derivative" => vec![run.timed(name, || check_f1_derivative_with(&reg))],
        "quadratic" => vec![run.timed(name, || check_quadratic_positivity(p))],
        "lemmas" => run.timed(name, || check_lemma_constants(p)),
        "special-values" => run.timed(name, || check_special_values_with(&reg, p))?,
        "typo" => vec![run.timed(name, || check_h_typo_with(&reg))],
        _ => unreachable!("unknown suite {name}"),
    };
    let config = run.config(name);
    Ok((run.finish(config, certs, Vec::new())?, common))
}

fn eval(args: EvalArgs) -> Result<(Report, Common), Failure> {
    let mut run = Run::new(args.common.clone(), 128)?;
    let ev = Evaluator::with_mutations(run.mutations.clone());
    let params = run.params();
    let cert = match args.which {
        Which::A => run.timed("eval", || ev.certify_a_negative(&args.t, params))?,
        Which::B => run.timed("eval", || ev.certify_b_positive(&args.t, params))?,
    };
    let point = match args.which {
        Which::A => Point::new(&args.t, Some(cert), None),
        Which::B => Point::new(&args.t, None, Some(cert)),
    };
    let mut config = run.config("eval");
    config.which = Some(match args.which {
        Which::A => "A",
        Which::B => "B",
    });
    config.t = Some(args.t.to_string());
    Ok((run.finish(config, Vec::new(), vec![point])?, args.common))
}

fn scan(args: ScanArgs) -> Result<(Report, Common), Failure> {
    let mut run = Run::new(args.common.clone(), 128)?;
    let ev = Evaluator::with_mutations(run.mutations.clone());
    let params = run.params();
    let grid = run.timed("scan", || ev.scan(&args.min, &args.max, args.steps, params))?;
    let points = grid.rows.into_iter().map(|row| Point::new(&row.t, Some(row.a), Some(row.b))).collect();
    let mut config = run.config("scan");
    config.t_min = Some(args.min.to_string());
    config.t_max = Some(args.max.to_string());
    config.steps = Some(args.steps);
    Ok((run.finish(config, Vec::new(), points)?, args.common))
}

fn emit(report: &Report, common: &Common) -> Result<(), Failure> {
    let bytes = match common.format {
        Format::Json => report.to_json(),
        Format::Tsv => report.to_tsv(),
    };
    match &common.output {
        Some(path) => fs::write(path, bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if cli.golden_table {
        let mut out = io::stdout().lock();
        out.write_all(table::golden_tables().as_bytes())?;
        return Ok(0);
    }
    let Some(command) = cli.command else {
        return Err(Failure::Usage("no subcommand given".into()));
    };
    let (report, common) = match command {
        Command::Identities(c) => suite("identities", c, 200)?,
        Command::Signs(c) => suite("signs", c, 128)?,
        Command::Cancellations(c) => suite("cancellations", c, 128)?,
        Command::Derivative(c) => suite("derivative", c, 128)?,
        Command::Quadratic(c) => suite("quadratic", c, 128)?,
        Command::Lemmas(c) => suite("lemmas", c, 128)?,
        Command::SpecialValues(c) => suite("special-values", c, 128)?,
        Command::Typo(c) => suite("typo", c, 128)?,
        Command::Eval(a) => eval(a)?,
        Command::Scan(a) => scan(a)?,
    };
    emit(&report, &common)?;
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Undecided(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INCONCLUSIVE)
        }
    }
}
