//! Command-line front end: digit arithmetic, orbits, cylinder visit order,
//! neighborhood queries, convergence tests, exact-vs-empirical measures, and
//! the full verification suite.
//!
//! Exit codes: 0 on success, 1 on domain errors (including failed verify
//! checks), 2 on usage errors.

use clap::{Parser, Subcommand};
use odometer_core::{
    converges_to, cylinder_index, cylinder_measure, orbit, orbit_partial, parse_point,
    prefix_increment, run_all, step_x, v_k_neighborhood, CantorPoint, DigitWord, RadixSchedule,
    SuiteConfig, XPoint, DEFAULT_SEED,
};
use serde_json::json;
use std::process::ExitCode;

/// Largest level size the enumerating subcommands (visits, measure, verify)
/// will expand.
const ENUMERATION_CAP: u64 = 10_000;

/// Writes to stdout, treating a closed pipe (e.g. piping into `head`) as a
/// clean exit rather than a panic.
fn write_stdout(args: std::fmt::Arguments<'_>, newline: bool) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let result = if newline {
        stdout.write_fmt(args).and_then(|()| stdout.write_all(b"\n"))
    } else {
        stdout.write_fmt(args)
    };
    if let Err(err) = result {
        if err.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: failed writing to stdout: {err}");
        std::process::exit(1);
    }
}

macro_rules! say {
    ($($arg:tt)*) => { write_stdout(format_args!($($arg)*), true) };
}

macro_rules! say_raw {
    ($($arg:tt)*) => { write_stdout(format_args!($($arg)*), false) };
}

#[derive(Parser)]
#[command(
    name = "odometer",
    version,
    about = "Mixed-radix odometer dynamics on a compactified digit space, \
             with an operator-model verification suite"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first k digits of a natural number n (requires n < n_k)
    Digits {
        /// Radix schedule, e.g. "2,3,2" (repeat last) or "3,5,2*" (cycle)
        #[arg(long)]
        schedule: String,
        /// Natural number to encode
        #[arg(long)]
        n: u64,
        /// Number of digits
        #[arg(long)]
        k: usize,
        /// Emit JSON instead of plain text
        #[arg(long)]
        json: bool,
    },
    /// Print the orbit of a point: the start and each successive step
    Orbit {
        #[arg(long)]
        schedule: String,
        /// Start point: "zeros", "max", "nat:<n>", or "d0,d1,...|Z" / "...|M"
        #[arg(long)]
        start: String,
        /// Number of steps to take
        #[arg(long)]
        steps: usize,
        /// Use the partial map, which is undefined at the all-max point
        #[arg(long)]
        partial: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the level-k cylinder words in odometer visit order
    Visits {
        #[arg(long)]
        schedule: String,
        /// Digit level (one line per word, n_k lines total)
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Describe the basic neighborhood V_k of a point, or test membership
    Neighborhood {
        #[arg(long)]
        schedule: String,
        /// Center point (must lie in the digit space: zeros, max, or digits)
        #[arg(long)]
        start: String,
        /// Neighborhood level
        #[arg(long)]
        k: usize,
        /// Query membership of this natural instead of listing members
        #[arg(long)]
        n: Option<u64>,
        /// Exclusive bound for the listed natural members [default: 64]
        #[arg(long)]
        steps: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Test whether a sequence of naturals converges to a point
    Converge {
        #[arg(long)]
        schedule: String,
        /// Target point (must lie in the digit space)
        #[arg(long)]
        start: String,
        /// Deepest neighborhood level required to trap the sequence tail
        #[arg(long)]
        k: usize,
        /// The sequence entries
        #[arg(value_name = "N", num_args = 1.., required = true)]
        sequence: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Run the full verification suite; exits 0 iff every check passes
    Verify {
        #[arg(long)]
        schedule: String,
        /// Truncation dimension for the operator checks
        #[arg(long, default_value_t = 64)]
        dim: usize,
        /// Residual tolerance
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
        /// Seed for the randomized checks [default: fixed suite seed]
        #[arg(long)]
        seed: Option<u64>,
        /// Deepest digit level for the structural checks [default: 3]
        #[arg(long)]
        k: Option<usize>,
        /// Number of randomized trials for the sampled checks [default: 200]
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Exact cylinder measures next to empirical orbit frequencies
    Measure {
        #[arg(long)]
        schedule: String,
        /// Cylinder level
        #[arg(long)]
        k: usize,
        /// Orbit length [default: 10 * n_k]
        #[arg(long)]
        steps: Option<u64>,
        /// Orbit start point [default: zeros]
        #[arg(long)]
        start: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Domain(odometer_core::Error),
}

impl From<odometer_core::Error> for Failure {
    fn from(err: odometer_core::Error) -> Self {
        Failure::Domain(err)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => code,
        Err(Failure::Domain(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_schedule(spec: &str) -> Result<RadixSchedule, Failure> {
    spec.parse()
        .map_err(|err: odometer_core::Error| Failure::Usage(err.to_string()))
}

fn parse_start(spec: &str, schedule: &RadixSchedule) -> Result<XPoint, Failure> {
    parse_point(spec, schedule).map_err(|err| Failure::Usage(err.to_string()))
}

/// Subcommands centered on a point of the digit space reject naturals.
fn require_cantor(spec: &str, schedule: &RadixSchedule) -> Result<CantorPoint, Failure> {
    match parse_start(spec, schedule)? {
        XPoint::Cantor(p) => Ok(p),
        XPoint::Nat(_) => Err(Failure::Usage(format!(
            "{spec:?} is a natural number; expected a digit-space point \
             (zeros, max, or d0,d1,...|Z/M)"
        ))),
    }
}

fn capped_level_size(schedule: &RadixSchedule, k: usize) -> Result<u64, Failure> {
    let size = schedule.level_size(k)?;
    if size > ENUMERATION_CAP {
        return Err(Failure::Usage(format!(
            "level {k} has {size} cylinders, more than the enumeration cap of {ENUMERATION_CAP}"
        )));
    }
    Ok(size)
}

fn emit(value: &serde_json::Value) {
    say!(
        "{}",
        serde_json::to_string_pretty(value).expect("report values serialize")
    );
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Digits { schedule, n, k, json } => {
            let schedule = parse_schedule(&schedule)?;
            let word = DigitWord::from_value(n, k, &schedule)?;
            if json {
                emit(&json!({
                    "schedule": schedule.to_string(),
                    "n": n,
                    "k": k,
                    "digits": word.digits(),
                }));
            } else {
                say!("{word}");
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Orbit { schedule, start, steps, partial, json } => {
            let schedule = parse_schedule(&schedule)?;
            let start = parse_start(&start, &schedule)?;
            let record = if partial {
                orbit_partial(&start, steps)?
            } else {
                orbit(&start, steps)?
            };
            if json {
                let points: Vec<String> =
                    record.points().iter().map(XPoint::to_string).collect();
                emit(&json!({
                    "schedule": schedule.to_string(),
                    "start": record.start().to_string(),
                    "steps": steps,
                    "partial": partial,
                    "points": points,
                }));
            } else {
                say_raw!("{record}");
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Visits { schedule, k, json } => {
            let schedule = parse_schedule(&schedule)?;
            let size = capped_level_size(&schedule, k)?;
            let mut order = Vec::with_capacity(size as usize);
            let mut word = DigitWord::from_value(0, k, &schedule)?;
            for _ in 0..size {
                let next = prefix_increment(&word)?;
                order.push(word);
                word = next;
            }
            if json {
                let digits: Vec<&[u32]> = order.iter().map(DigitWord::digits).collect();
                emit(&json!({
                    "schedule": schedule.to_string(),
                    "k": k,
                    "order": digits,
                }));
            } else {
                for word in &order {
                    say!("{word}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Neighborhood { schedule, start, k, n, steps, json } => {
            let schedule = parse_schedule(&schedule)?;
            let gamma = require_cantor(&start, &schedule)?;
            let hood = v_k_neighborhood(&gamma, k)?;
            let size = hood.center_word().level_size()?;
            let residue = hood.center_word().value()?;
            if let Some(n) = n {
                let member = hood.contains(&XPoint::Nat(n));
                if json {
                    emit(&json!({
                        "schedule": schedule.to_string(),
                        "center": gamma.to_string(),
                        "k": k,
                        "n": n,
                        "member": member,
                    }));
                } else {
                    say!("{member}");
                }
            } else {
                let bound = steps.unwrap_or(64);
                let members: Vec<u64> = (0..bound)
                    .filter(|&m| hood.contains(&XPoint::Nat(m)))
                    .collect();
                if json {
                    emit(&json!({
                        "schedule": schedule.to_string(),
                        "center": gamma.to_string(),
                        "k": k,
                        "prefix": hood.center_word().digits(),
                        "size": size,
                        "residue": residue,
                        "bound": bound,
                        "members": members,
                    }));
                } else {
                    say!(
                        "V_{k} around {gamma}: prefix \"{}\", naturals n >= {k} with n = {residue} (mod {size})",
                        hood.center_word()
                    );
                    let listed: Vec<String> = members.iter().map(u64::to_string).collect();
                    say!("members below {bound}: {}", listed.join(", "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Converge { schedule, start, k, sequence, json } => {
            let schedule = parse_schedule(&schedule)?;
            let gamma = require_cantor(&start, &schedule)?;
            let converges = converges_to(&sequence, &gamma, k)?;
            if json {
                emit(&json!({
                    "schedule": schedule.to_string(),
                    "target": gamma.to_string(),
                    "k_max": k,
                    "sequence": sequence,
                    "converges": converges,
                }));
            } else {
                say!("{converges}");
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { schedule, dim, eps, seed, k, steps, json } => {
            let schedule = parse_schedule(&schedule)?;
            if dim < 2 {
                return Err(Failure::Usage(format!(
                    "--dim must be at least 2, got {dim}"
                )));
            }
            if !eps.is_finite() || eps <= 0.0 {
                return Err(Failure::Usage(format!(
                    "--eps must be a positive number, got {eps}"
                )));
            }
            let mut cfg = SuiteConfig::desk(schedule);
            cfg.dim = dim;
            cfg.eps = eps;
            cfg.seed = seed.unwrap_or(DEFAULT_SEED);
            if let Some(k) = k {
                cfg.max_level = k;
            }
            if let Some(trials) = steps {
                cfg.trials = trials;
            }
            capped_level_size(&cfg.schedule, cfg.max_level)?;
            let report = run_all(&cfg);
            if json {
                say!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            } else {
                say!("{report}");
            }
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Command::Measure { schedule, k, steps, start, json } => {
            let schedule = parse_schedule(&schedule)?;
            let size = capped_level_size(&schedule, k)?;
            let steps = steps.unwrap_or(10 * size);
            if steps == 0 {
                return Err(Failure::Usage("--steps must be at least 1".into()));
            }
            let start = match start {
                Some(spec) => parse_start(&spec, &schedule)?,
                None => XPoint::Cantor(CantorPoint::zeros(&schedule)),
            };
            let mut counts = vec![0u64; size as usize];
            let mut current = start.clone();
            for _ in 0..steps {
                counts[cylinder_index(&current, k, &schedule)? as usize] += 1;
                current = step_x(&current)?;
            }

            let mut rows = Vec::with_capacity(size as usize);
            for (value, &count) in counts.iter().enumerate() {
                let beta = DigitWord::from_value(value as u64, k, &schedule)?;
                let exact = cylinder_measure(&beta)?;
                // |count/steps - 1/size| <= size/steps as exact integers.
                let within =
                    (count as i128 * size as i128 - steps as i128).abs() <= (size as i128).pow(2);
                rows.push((beta, exact, count, within));
            }

            if json {
                let rows: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(beta, exact, count, within)| {
                        json!({
                            "beta": beta.digits(),
                            "exact": exact.to_string(),
                            "count": count,
                            "steps": steps,
                            "within_bound": within,
                        })
                    })
                    .collect();
                emit(&json!({
                    "schedule": schedule.to_string(),
                    "k": k,
                    "size": size,
                    "steps": steps,
                    "start": start.to_string(),
                    "rows": rows,
                }));
            } else {
                say!("schedule {schedule}  level {k}  size {size}  steps {steps}  start {start}");
                say!(
                    "{:<12} {:>8} {:>12} {:>10} {:>7}",
                    "beta", "exact", "empirical", "bound", "within"
                );
                for (beta, exact, count, within) in &rows {
                    say!(
                        "{:<12} {:>8} {:>12} {:>10} {:>7}",
                        beta.to_string(),
                        exact.to_string(),
                        format!("{count}/{steps}"),
                        format!("{size}/{steps}"),
                        within
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
