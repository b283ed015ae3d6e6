//! Command-line front end.
//!
//! Exit codes: 0 success, 1 parse or partition-spec error, 2 precondition
//! violation (bad `--eps`, `--trials`, random-mode size, resource limits, or
//! an invalid invocation), 3 a checked property was falsified.

use std::io::Write;

use caratheodory::finite_oracle::{self, FiniteSpace};
use caratheodory::laws::{self, DistanceFn, LawReport};
use caratheodory::limit_points::{self, ApproxError, ErrorInterval};
use caratheodory::set_dsl;
use caratheodory::{interval_algebra, MeasurableSet, Rat};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_FALSIFIED: i32 = 3;

/// Largest universe accepted by `oracle --random`.
pub const RANDOM_UNIVERSE_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "carath", version, about = "Certified measures of limit sets in [0,1)")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Precision as p/q or an integer.
    #[arg(long, global = true, default_value = "1/1024")]
    eps: String,
    #[arg(long, global = true, default_value_t = 500)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Certified interval for the measure of an expression.
    Measure { expr: String },
    /// Certified interval for the distance between two expressions.
    Dist { a: String, b: String },
    /// The algebra element approximating an expression to within eps.
    Approx { expr: String },
    /// Randomized exact law suite over algebra elements.
    Laws,
    /// Exhaustive finite-universe checks, for a partition spec or random spaces.
    Oracle {
        /// Blocks as `points:weight` joined by `;`, e.g. "0,1:1/2;2,3:1/2".
        spec: Option<String>,
        /// Universe size and number of random spaces.
        #[arg(long, num_args = 2, value_names = ["N", "TRIALS"], conflicts_with = "spec")]
        random: Option<Vec<usize>>,
    },
}

#[derive(Debug, Clone)]
pub struct CliConfig {
    pub command: Command,
    pub eps: Rat,
    pub trials: usize,
    pub seed: u64,
    pub format: Format,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

// Write errors on stdout/stderr are not actionable here.
macro_rules! say {
    ($w:expr, $($arg:tt)*) => {{
        let _ = writeln!($w, $($arg)*);
    }};
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let parsed = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_PRECONDITION
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    let eps = match parsed.eps.parse::<Rat>() {
        Ok(e) if e.is_positive() => e,
        Ok(e) => {
            say!(io.err, "error: --eps must be positive, got {e}");
            return EXIT_PRECONDITION;
        }
        Err(e) => {
            say!(io.err, "error: --eps: {e}");
            return EXIT_PRECONDITION;
        }
    };
    if parsed.trials == 0 {
        say!(io.err, "error: --trials must be at least 1");
        return EXIT_PRECONDITION;
    }
    let config = CliConfig {
        command: parsed.command,
        eps,
        trials: parsed.trials,
        seed: parsed.seed,
        format: parsed.format,
    };
    execute(&config, &mut io)
}

fn execute(config: &CliConfig, io: &mut Io<'_>) -> i32 {
    match &config.command {
        Command::Measure { expr } => cmd_measure(expr, &config.eps, config.format, io),
        Command::Dist { a, b } => cmd_dist(a, b, &config.eps, config.format, io),
        Command::Approx { expr } => cmd_approx(expr, &config.eps, io),
        Command::Laws => cmd_laws(config.trials, config.seed, config.format, io.out, io.err),
        Command::Oracle { spec, random } => match (spec, random.as_deref()) {
            (Some(spec), _) => cmd_oracle_spec(spec, config.format, io),
            (None, Some([n, trials])) => cmd_oracle_random(*n, *trials, config.seed, config.format, io),
            _ => {
                say!(io.err, "error: oracle needs a partition spec or --random <N> <TRIALS>");
                EXIT_PRECONDITION
            }
        },
    }
}

fn compile(text: &str, io: &mut Io<'_>) -> Result<MeasurableSet, i32> {
    set_dsl::compile(text).map_err(|e| {
        say!(io.err, "parse error {e}");
        say!(io.err, "  {text}");
        say!(
            io.err,
            "  {}^",
            " ".repeat(text[..e.pos.min(text.len())].chars().count())
        );
        EXIT_PARSE
    })
}

fn approx_failure(e: ApproxError, io: &mut Io<'_>) -> i32 {
    say!(io.err, "error: {e}");
    EXIT_PRECONDITION
}

fn print_interval(label: &str, iv: &ErrorInterval, format: Format, io: &mut Io<'_>) {
    match format {
        Format::Machine => say!(io.out, "{} {}", iv.lo(), iv.hi()),
        Format::Human => say!(io.out, "{label} in [{}, {}] (width {})", iv.lo(), iv.hi(), iv.width()),
    }
}

fn cmd_measure(expr: &str, eps: &Rat, format: Format, io: &mut Io<'_>) -> i32 {
    let s = match compile(expr, io) {
        Ok(s) => s,
        Err(code) => return code,
    };
    match limit_points::measure_with_error(&s, eps) {
        Ok(iv) => {
            print_interval("measure", &iv, format, io);
            EXIT_OK
        }
        Err(e) => approx_failure(e, io),
    }
}

fn cmd_dist(a: &str, b: &str, eps: &Rat, format: Format, io: &mut Io<'_>) -> i32 {
    let (sa, sb) = match (compile(a, io), compile(b, io)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(code), _) | (_, Err(code)) => return code,
    };
    match limit_points::distance_between(&sa, &sb, eps) {
        Ok(iv) => {
            print_interval("distance", &iv, format, io);
            EXIT_OK
        }
        Err(e) => approx_failure(e, io),
    }
}

fn cmd_approx(expr: &str, eps: &Rat, io: &mut Io<'_>) -> i32 {
    let s = match compile(expr, io) {
        Ok(s) => s,
        Err(code) => return code,
    };
    match limit_points::approx(&s, eps) {
        Ok(b) => {
            say!(io.out, "{b}");
            EXIT_OK
        }
        Err(e) => approx_failure(e, io),
    }
}

fn print_law_report(report: &LawReport, format: Format, out: &mut dyn Write, err: &mut dyn Write) {
    for o in &report.outcomes {
        match format {
            Format::Machine => say!(out, "{} {} {}", o.name, o.passed, o.trials),
            Format::Human => {
                let verdict = if o.holds() { "ok" } else { "FALSIFIED" };
                say!(out, "{:<24} {}/{} {verdict}", o.name, o.passed, o.trials);
            }
        }
        if let Some(cx) = &o.counterexample {
            match format {
                Format::Machine => say!(err, "counterexample {} {cx}", o.name),
                Format::Human => say!(out, "  counterexample: {cx}"),
            }
        }
    }
}

/// The law suite against an arbitrary distance implementation.
pub fn cmd_laws_with(
    trials: usize,
    seed: u64,
    distance: DistanceFn,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let report = laws::run_laws_with(trials, seed, distance);
    print_law_report(&report, format, out, err);
    if report.all_hold() {
        EXIT_OK
    } else {
        EXIT_FALSIFIED
    }
}

pub fn cmd_laws(trials: usize, seed: u64, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    cmd_laws_with(trials, seed, interval_algebra::distance, format, out, err)
}

/// Per-space summary of the exhaustive checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceVerdict {
    pub closure_size: usize,
    pub outside_algebra: usize,
    pub measurable: usize,
    pub equivalence: bool,
    pub extension: bool,
    pub measure_space: bool,
}

impl SpaceVerdict {
    pub fn check(space: &FiniteSpace) -> Self {
        let closure = finite_oracle::limit_closure(space);
        SpaceVerdict {
            closure_size: closure.len(),
            outside_algebra: closure.iter().filter(|&&s| !space.is_algebra_element(s)).count(),
            measurable: finite_oracle::measurable_sets(space).len(),
            equivalence: finite_oracle::verify_closure_equivalence(space),
            extension: finite_oracle::verify_extension(space),
            measure_space: finite_oracle::verify_measure_space(space),
        }
    }

    pub fn passed(&self) -> bool {
        self.equivalence && self.extension && self.measure_space
    }
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn print_space(id: usize, space: &FiniteSpace, v: &SpaceVerdict, format: Format, io: &mut Io<'_>) {
    match format {
        Format::Machine => say!(io.out, "{id} {}", verdict_word(v.passed())),
        Format::Human => {
            say!(io.out, "space {id}: {space}");
            say!(
                io.out,
                "  universe {}, {} blocks, algebra of {} sets",
                space.size(),
                space.blocks().len(),
                1usize << space.blocks().len()
            );
            say!(io.out, "  measurable sets: {}", v.measurable);
            say!(
                io.out,
                "  limit closure: {} sets ({} outside the algebra)",
                v.closure_size,
                v.outside_algebra
            );
            say!(io.out, "  measurable = limit closure: {}", verdict_word(v.equivalence));
            say!(
                io.out,
                "  outer measure extends the premeasure: {}",
                verdict_word(v.extension)
            );
            say!(
                io.out,
                "  measurable sets form a measure space: {}",
                verdict_word(v.measure_space)
            );
        }
    }
}

fn cmd_oracle_spec(spec: &str, format: Format, io: &mut Io<'_>) -> i32 {
    let space: FiniteSpace = match spec.parse() {
        Ok(s) => s,
        Err(e) => {
            say!(io.err, "error: {e}");
            return EXIT_PARSE;
        }
    };
    let v = SpaceVerdict::check(&space);
    print_space(0, &space, &v, format, io);
    if v.passed() {
        EXIT_OK
    } else {
        EXIT_FALSIFIED
    }
}

fn cmd_oracle_random(n: usize, trials: usize, seed: u64, format: Format, io: &mut Io<'_>) -> i32 {
    if n == 0 || n > RANDOM_UNIVERSE_LIMIT {
        say!(
            io.err,
            "error: random universe size must be in 1..={RANDOM_UNIVERSE_LIMIT}, got {n}"
        );
        return EXIT_PRECONDITION;
    }
    if trials == 0 {
        say!(io.err, "error: random mode needs at least one space");
        return EXIT_PRECONDITION;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for id in 0..trials {
        let space = FiniteSpace::random(&mut rng, n);
        let v = SpaceVerdict::check(&space);
        if !v.passed() {
            failures += 1;
        }
        match format {
            Format::Machine => print_space(id, &space, &v, format, io),
            Format::Human if !v.passed() => print_space(id, &space, &v, format, io),
            Format::Human => {}
        }
    }
    if format == Format::Human {
        say!(
            io.out,
            "{}/{trials} spaces verified (universe ≤ {n}, seed {seed})",
            trials - failures
        );
    }
    if failures == 0 {
        EXIT_OK
    } else {
        EXIT_FALSIFIED
    }
}
