//! `geode` — exact hyper-Catalan and Geode numbers from the command line.
//!
//! Subcommands: `hc` (hyper-Catalan numbers), `geode` (Geode numbers by any
//! of the implemented methods), `guess` (rediscover recurrences from data),
//! `verify` (window-check recurrence files), `bench` (wall-clock comparison
//! of the definitional and recurrence routes).
//!
//! Every command prints a single JSON envelope on stdout with the command
//! echo, inputs, result (big integers as exact decimal strings, never
//! scientific notation), digit count, and wall time.
//!
//! Exit codes: 0 success/found, 1 checked-and-negative, 2 usage error,
//! 3 integrity failure (unverified or corrupt recurrence files),
//! 4 resource cap exceeded.

mod fixtures;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use geode::closed2::{g2_closed, g2_fast, Pair};
use geode::error::{EvalError, GeodeError};
use geode::guesser::{search, GuessConfig, GuessReport};
use geode::hyper::hyper_catalan;
use geode::index::MultiIndex;
use geode::oracle::{geode_number_oracle_with_cap, geode_table_with_cap};
use geode::recurrence::{digit_count, Direction};
use geode::verifier;
use geode::DEFAULT_TERM_CAP;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTEGRITY: u8 = 3;
const EXIT_RESOURCE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "geode",
    version,
    about = "Exact hyper-Catalan and Geode numbers: compute, guess, verify, bench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hyper-Catalan number C(m1, ..., mk)
    Hc {
        /// Non-negative indices m1 m2 ... mk
        #[arg(required = true)]
        m: Vec<u32>,
    },
    /// Geode number G(m1, ..., mk)
    Geode(GeodeArgs),
    /// Guess pure or diagonal recurrences from oracle data
    Guess(GuessArgs),
    /// Verify recurrence files against the definitional oracle on a window
    Verify(VerifyArgs),
    /// Compare the definitional and recurrence computation routes
    Bench(BenchArgs),
}

#[derive(Args)]
struct GeodeArgs {
    /// Non-negative indices m1 m2 ... mk
    #[arg(required = true)]
    m: Vec<u32>,
    /// Computation route
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    /// Recurrence file(s) for the rec3/diag methods (repeatable)
    #[arg(long = "rec")]
    rec: Vec<PathBuf>,
    /// Directory holding bundled recurrence fixtures
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Oracle,
    Closed2,
    Rec3,
    Diag,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Oracle => "oracle",
            Method::Closed2 => "closed2",
            Method::Rec3 => "rec3",
            Method::Diag => "diag",
        }
    }
}

#[derive(Args)]
struct GuessArgs {
    /// Dimension of the Geode family
    #[arg(long)]
    k: usize,
    /// Pure direction to guess (1-based); mutually exclusive with --diagonal
    #[arg(long, conflicts_with = "diagonal")]
    direction: Option<usize>,
    /// Guess the diagonal sequence G(n, ..., n)
    #[arg(long)]
    diagonal: bool,
    #[arg(long, default_value_t = 1)]
    order_min: usize,
    #[arg(long)]
    order_max: usize,
    #[arg(long, default_value_t = 0)]
    degree_min: u32,
    #[arg(long)]
    degree_max: u32,
    /// Tabulate oracle data up to this total degree (diagonal: up to this n)
    #[arg(long)]
    table_max: u32,
    /// Try every shape in range instead of stopping at the first find
    #[arg(long)]
    exhaustive: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the best found recurrence to this file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fixtures directory (used to evaluate 3D diagonal data quickly)
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Recurrence file(s); a complete direction set is verified as a system
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Window bound K: checks run on the cube 0 <= m_i <= K
    #[arg(long, default_value_t = 6)]
    window: u32,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Suite {
    Definitional,
    Recurrence,
}

fn term_cap() -> usize {
    std::env::var("GEODE_TERM_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_TERM_CAP)
}

struct Envelope {
    command: &'static str,
    inputs: Value,
    started: Instant,
}

impl Envelope {
    fn new(command: &'static str, inputs: Value) -> Self {
        Envelope {
            command,
            inputs,
            started: Instant::now(),
        }
    }

    /// Emit the envelope with a big-integer result.
    fn finish_int(self, value: &BigInt, extra: Value) -> ExitCode {
        let digits = digit_count(value).ok();
        self.emit(json!(value.to_string()), digits, extra);
        ExitCode::from(EXIT_OK)
    }

    fn finish_value(self, result: Value, code: u8) -> ExitCode {
        self.emit(result, None, Value::Null);
        ExitCode::from(code)
    }

    fn emit(self, result: Value, digits: Option<usize>, extra: Value) {
        let mut doc = json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": result,
            "digits": digits,
            "wall_ms": self.started.elapsed().as_millis() as u64,
        });
        if let (Some(obj), Value::Object(e)) = (doc.as_object_mut(), extra) {
            for (k, v) in e {
                obj.insert(k, v);
            }
        }
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    }

    fn fail(self, code: u8, message: String) -> ExitCode {
        self.emit(json!({ "error": message }), None, Value::Null);
        ExitCode::from(code)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Hc { m } => cmd_hc(m),
        Command::Geode(args) => cmd_geode(args),
        Command::Guess(args) => cmd_guess(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn cmd_hc(m: Vec<u32>) -> ExitCode {
    let env = Envelope::new("hc", json!({ "m": m }));
    let value = hyper_catalan(&MultiIndex::new(m));
    env.finish_int(&value, Value::Null)
}

fn cmd_geode(args: GeodeArgs) -> ExitCode {
    let env = Envelope::new(
        "geode",
        json!({ "m": args.m, "method": args.method.name() }),
    );
    let k = args.m.len();
    let cap = term_cap();
    let m = MultiIndex::new(args.m.clone());

    let method = match args.method {
        Method::Auto => pick_auto_method(&args, k),
        m => m,
    };
    match method {
        Method::Auto => unreachable!("auto resolved above"),
        Method::Oracle => match geode_number_oracle_with_cap(&m, cap) {
            Ok(v) => env.finish_int(&v, json!({ "method_used": "oracle" })),
            Err(e @ GeodeError::TermBudget { .. }) => env.fail(EXIT_RESOURCE, e.to_string()),
            Err(e) => env.fail(EXIT_USAGE, e.to_string()),
        },
        Method::Closed2 => {
            if k != 2 {
                return env.fail(EXIT_USAGE, format!("closed2 needs k=2, got k={k}"));
            }
            let closed = g2_closed(Pair::new(args.m[0], args.m[1]));
            let fast = g2_fast(Pair::new(args.m[0], args.m[1]));
            if closed != fast {
                return env.fail(
                    EXIT_INTEGRITY,
                    "closed form and ratio iteration disagree".to_string(),
                );
            }
            env.finish_int(&closed, json!({ "method_used": "closed2" }))
        }
        Method::Rec3 => {
            if k != 3 {
                return env.fail(EXIT_USAGE, format!("rec3 needs k=3, got k={k}"));
            }
            let sys = match fixtures::load_system(&args.rec, args.fixtures.as_deref()) {
                Ok(sys) => sys,
                Err(e) => return e.into_exit(env),
            };
            match sys.eval_pure_with(&m, None, cap) {
                Ok(out) => env.finish_int(
                    &out.value,
                    json!({
                        "method_used": "rec3",
                        "oracle_fallbacks": out.oracle_fallbacks.len(),
                    }),
                ),
                Err(e @ EvalError::FallbackInfeasible { .. }) => {
                    env.fail(EXIT_RESOURCE, e.to_string())
                }
                Err(e) => env.fail(EXIT_INTEGRITY, e.to_string()),
            }
        }
        Method::Diag => {
            if k != 3 || !args.m.iter().all(|&x| x == args.m[0]) {
                return env.fail(
                    EXIT_USAGE,
                    "diag needs a diagonal point (n, n, n) with k=3".to_string(),
                );
            }
            let n = args.m[0];
            if n == 0 {
                return env.finish_int(&BigInt::from(1), json!({ "method_used": "diag" }));
            }
            let (rec, fallback) = match fixtures::load_diagonal(&args.rec, args.fixtures.as_deref())
            {
                Ok(x) => x,
                Err(e) => return e.into_exit(env),
            };
            let init = fixtures::diagonal_seeds(rec.order);
            match geode::recurrence::eval_diagonal(&rec, n, &init, fallback.as_ref()) {
                Ok(out) => env.finish_int(
                    &out.value,
                    json!({
                        "method_used": "diag",
                        "fallback_steps": out.fallback_steps,
                    }),
                ),
                Err(e) => env.fail(EXIT_INTEGRITY, e.to_string()),
            }
        }
    }
}

/// Fastest applicable verified path: 2D ratio iteration for k=2, bundled
/// recurrences for k=3 when present (diagonal file for diagonal points),
/// definitional oracle otherwise.
fn pick_auto_method(args: &GeodeArgs, k: usize) -> Method {
    if k == 2 {
        return Method::Closed2;
    }
    if k == 3 {
        let diagonal = args.m.iter().all(|&x| x == args.m[0]);
        if diagonal && args.m[0] > 0 && fixtures::diagonal_available(&args.rec, args.fixtures.as_deref())
        {
            return Method::Diag;
        }
        if fixtures::system_available(&args.rec, args.fixtures.as_deref()) {
            return Method::Rec3;
        }
    }
    Method::Oracle
}

fn cmd_guess(args: GuessArgs) -> ExitCode {
    let direction = if args.diagonal {
        Direction::Diagonal
    } else {
        match args.direction {
            Some(d) if d >= 1 && d <= args.k => Direction::Coordinate(d),
            Some(d) => {
                let env = Envelope::new("guess", json!({}));
                return env.fail(
                    EXIT_USAGE,
                    format!("direction {d} out of range 1..={}", args.k),
                );
            }
            None => {
                let env = Envelope::new("guess", json!({}));
                return env.fail(EXIT_USAGE, "need --direction or --diagonal".to_string());
            }
        }
    };
    let env = Envelope::new(
        "guess",
        json!({
            "k": args.k,
            "direction": match direction {
                Direction::Coordinate(d) => json!(d),
                Direction::Diagonal => json!("diagonal"),
            },
            "orders": [args.order_min, args.order_max],
            "degrees": [args.degree_min, args.degree_max],
            "table_max": args.table_max,
        }),
    );
    let cap = term_cap();

    let mut config = GuessConfig::default();
    if let Some(seed) = args.seed {
        config.seed = seed;
    }

    let data = match direction {
        Direction::Coordinate(_) => match geode_table_with_cap(args.table_max, args.k, cap) {
            Ok(t) => t,
            Err(e) => return env.fail(EXIT_RESOURCE, e.to_string()),
        },
        Direction::Diagonal => {
            match fixtures::diagonal_data(args.k, args.table_max, args.fixtures.as_deref(), cap) {
                Ok(t) => t,
                Err(e) => return e.into_exit(env),
            }
        }
    };

    let reports = search(
        &data,
        args.k,
        direction,
        args.order_min..=args.order_max,
        args.degree_min..=args.degree_max,
        &config,
        args.exhaustive,
    );

    let found: Vec<&GuessReport> = reports.iter().filter(|r| r.found()).collect();
    if let (Some(path), Some(report)) = (&args.out, found.first()) {
        let rec = report.best().unwrap();
        if let Err(e) = std::fs::write(path, rec.to_json()) {
            return env.fail(EXIT_USAGE, format!("cannot write {}: {e}", path.display()));
        }
    }

    let summaries: Vec<Value> = reports
        .iter()
        .map(|r| serde_json::from_str(&r.to_json()).unwrap())
        .collect();
    let any_found = !found.is_empty();
    env.finish_value(
        json!({ "found": any_found, "attempts": summaries }),
        if any_found { EXIT_OK } else { EXIT_NEGATIVE },
    )
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let env = Envelope::new(
        "verify",
        json!({
            "files": args.files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "window": args.window,
        }),
    );
    let mut recs = Vec::new();
    for path in &args.files {
        let rec = match fixtures::load_recurrence(path) {
            Ok(r) => r,
            Err(e) => return e.into_exit(env),
        };
        recs.push(rec);
    }

    // A complete pure direction set is verified as a system (relations plus
    // seed window plus corner evaluation); anything else file by file.
    let k = recs[0].num_vars;
    let complete_system = recs.len() == k
        && (1..=k).all(|d| recs.iter().any(|r| r.direction == Direction::Coordinate(d)));

    let reports: Result<Vec<_>, GeodeError> = if complete_system {
        geode::recurrence::RecurrenceSystem::new(recs, 2).and_then(|mut sys| {
            let window = verifier::verify_window(&mut sys, args.window)?;
            let sample: Vec<MultiIndex> = sample_points(k, args.window);
            let compat = verifier::verify_compatibility(&sys, &sample);
            Ok(vec![window, compat])
        })
    } else {
        recs.iter()
            .map(|r| verifier::verify_relation_window(r, args.window))
            .collect()
    };

    match reports {
        Ok(reports) => {
            let passed = reports.iter().all(|r| r.passed());
            let vals: Vec<Value> = reports
                .iter()
                .map(|r| serde_json::from_str(&r.to_json()).unwrap())
                .collect();
            env.finish_value(
                json!({ "passed": passed, "reports": vals }),
                if passed { EXIT_OK } else { EXIT_NEGATIVE },
            )
        }
        Err(e @ GeodeError::TermBudget { .. }) => env.fail(EXIT_RESOURCE, e.to_string()),
        Err(e) => env.fail(EXIT_INTEGRITY, e.to_string()),
    }
}

fn sample_points(k: usize, bound: u32) -> Vec<MultiIndex> {
    // small deterministic spread over the cube
    let mut pts = Vec::new();
    let b = bound.max(2);
    for i in 0..k {
        let mut m = vec![b / 2; k];
        m[i] = b;
        pts.push(MultiIndex::new(m));
    }
    pts.push(MultiIndex::new(vec![b; k]));
    pts.push(MultiIndex::new({
        let mut m = vec![0; k];
        m[0] = b;
        m
    }));
    pts
}

fn cmd_bench(args: BenchArgs) -> ExitCode {
    let env = Envelope::new(
        "bench",
        json!({ "suite": match args.suite { Suite::Definitional => "definitional", Suite::Recurrence => "recurrence" } }),
    );
    let cap = term_cap();
    let mut rows: Vec<Value> = Vec::new();
    let time_it = |rows: &mut Vec<Value>, name: &str, f: &mut dyn FnMut() -> BigInt| -> BigInt {
        let t = Instant::now();
        let v = f();
        rows.push(json!({
            "name": name,
            "wall_ms": t.elapsed().as_millis() as u64,
            "digits": digit_count(&v).ok(),
        }));
        v
    };

    match args.suite {
        Suite::Definitional => {
            let a = time_it(&mut rows, "oracle G(4,7,8)", &mut || {
                geode_number_oracle_with_cap(&MultiIndex::new(vec![4, 7, 8]), cap).unwrap()
            });
            time_it(
                &mut rows,
                "oracle table k=3 total<=18 (sum of entries)",
                &mut || {
                    let t = geode_table_with_cap(18, 3, cap).unwrap();
                    let mut acc = BigInt::from(0);
                    for m in t.points_graded() {
                        acc += t.get(&m).unwrap();
                    }
                    acc
                },
            );
            time_it(
                &mut rows,
                "P(12,3) build + simplex division (quotient terms)",
                &mut || {
                    let p = geode::poly::build_p_with_cap(12, 3, cap).unwrap();
                    let (q, _) = geode::poly::divide_by_simplex(&p);
                    BigInt::from(q.term_count())
                },
            );
            let b = time_it(&mut rows, "oracle G(40,40) (2D definitional)", &mut || {
                geode_number_oracle_with_cap(&MultiIndex::new(vec![40, 40]), cap).unwrap()
            });
            let c = time_it(&mut rows, "closed form G(40,40)", &mut || {
                g2_closed(Pair::new(40, 40))
            });
            rows.push(json!({ "name": "agreement G(4,7,8) equals the published value",
                "ok": a.to_string() == "11258614474275030033600" }));
            rows.push(json!({ "name": "agreement oracle vs closed form at (40,40)", "ok": b == c }));
        }
        Suite::Recurrence => {
            let a = time_it(&mut rows, "ratio iteration G(2000,2000)", &mut || {
                g2_fast(Pair::new(2000, 2000))
            });
            let b = time_it(&mut rows, "closed form G(2000,2000)", &mut || {
                g2_closed(Pair::new(2000, 2000))
            });
            rows.push(json!({ "name": "agreement fast vs closed at (2000,2000)", "ok": a == b }));
            let d = time_it(&mut rows, "oracle G(60,60) (definitional reference)", &mut || {
                geode_number_oracle_with_cap(&MultiIndex::new(vec![60, 60]), cap).unwrap()
            });
            let e = time_it(&mut rows, "ratio iteration G(60,60)", &mut || {
                g2_fast(Pair::new(60, 60))
            });
            rows.push(json!({ "name": "agreement oracle vs fast at (60,60)", "ok": d == e }));

            if let Ok((rec, fallback)) = fixtures::load_diagonal(&[], args.fixtures.as_deref()) {
                let init = fixtures::diagonal_seeds(rec.order);
                let v = time_it(&mut rows, "diagonal recurrence G(1000,1000,1000)", &mut || {
                    geode::recurrence::eval_diagonal(&rec, 1000, &init, fallback.as_ref())
                        .unwrap()
                        .value
                });
                rows.push(json!({
                    "name": "G(1000,1000,1000) digit count",
                    "digits": digit_count(&v).unwrap(),
                }));
                let o = time_it(&mut rows, "oracle G(8,8,8)", &mut || {
                    geode_number_oracle_with_cap(&MultiIndex::new(vec![8, 8, 8]), cap).unwrap()
                });
                let r = time_it(&mut rows, "diagonal recurrence G(8,8,8)", &mut || {
                    geode::recurrence::eval_diagonal(&rec, 8, &init, fallback.as_ref())
                        .unwrap()
                        .value
                });
                rows.push(json!({ "name": "agreement oracle vs diagonal at n=8", "ok": o == r }));
            } else {
                rows.push(json!({ "name": "diagonal fixture not found; skipped", "ok": Value::Null }));
            }
        }
    }
    env.finish_value(json!({ "rows": rows }), EXIT_OK)
}
