use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use subtope_core::bench::{self, BenchConfig, CSV_HEADER};
use subtope_core::closedform::{render_rows, signed_rows};
use subtope_core::cycles::{self, load_cycle};
use subtope_core::decomp::{self, Decomposition};
use subtope_core::oracle::{self, Scope, VerifyConfig};
use subtope_core::{
    closed_form_xbar, distinguished_cycle, matrix_m, matrix_n, matrix_p, matrix_w,
    reconstruct, Error, IntMatrix, IntervalSet, SignVector, Subtope, SymmetricCycle, Tope,
};

#[derive(Parser)]
#[command(name = "subtope", version, about = "Symmetric cycles in H(t,2) and exact (sub)tope decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print M(D), W(D), N(t) and P(t).
    Matrices {
        #[command(flatten)]
        cycle: CycleArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decompose a tope or subtope over the cycle's edge subtopes.
    Decompose {
        #[command(flatten)]
        cycle: CycleArgs,
        /// Sign-vector target, e.g. `++++++`; use `--` or `--target=` when it starts with '-'.
        #[arg(value_name = "TARGET", allow_hyphen_values = true)]
        target: Option<String>,
        #[arg(long = "target", value_name = "TARGET", conflicts_with = "target")]
        target_flag: Option<String>,
        /// Require the target to be a tope.
        #[arg(long, conflicts_with = "subtope")]
        tope: bool,
        /// Require the target to be a subtope.
        #[arg(long)]
        subtope: bool,
        /// Re-parse the rendered decomposition and reconstruct the target.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Closed-form x̄ of the tope with negative part A, over the distinguished cycle.
    Closedform {
        #[arg(long)]
        t: usize,
        /// Negative part as intervals, e.g. `2-3,5` or `1-t`.
        #[arg(long = "neg", value_name = "A")]
        neg: String,
        /// Cross-check against the exact-solve path.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the verification battery; exit status 1 on any failure.
    Verify {
        #[command(flatten)]
        cycle: CycleArgs,
        /// Comma-separated subset of rank,topes,subtopes,oracle,closedform,remark, or `all`.
        #[arg(long, default_value = "all")]
        scope: String,
        #[arg(long, env = "SUBTOPE_ENUM_CAP", default_value_t = oracle::DEFAULT_ENUM_CAP)]
        enum_cap: usize,
        #[arg(long, default_value_t = oracle::DEFAULT_EXHAUSTIVE_CAP)]
        exhaustive_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Time the closed form against the exact-solve path.
    Bench {
        /// Comma-separated even values of t.
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = bench::DEFAULT_SEED)]
        seed: u64,
        /// Largest t for which the solve path is timed.
        #[arg(long, default_value_t = bench::DEFAULT_SOLVE_CAP)]
        solve_cap: usize,
        #[arg(long, value_enum, default_value_t = BenchFormat::Text)]
        format: BenchFormat,
    },
}

#[derive(Args)]
struct CycleArgs {
    /// Ground-set size; required unless --cycle is given.
    #[arg(long)]
    t: Option<usize>,
    /// Cycle file (one sign vector per line, or JSON).
    #[arg(long, conflicts_with_all = ["distinguished", "random"])]
    cycle: Option<PathBuf>,
    /// Use the distinguished cycle R (the default).
    #[arg(long)]
    distinguished: bool,
    /// Sample a random symmetric cycle from --seed.
    #[arg(long, conflicts_with = "distinguished")]
    random: bool,
    #[arg(long, default_value_t = bench::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchFormat {
    Text,
    Csv,
    Json,
}

/// Failure carrying the process exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Singular(_) => 3,
            Error::OracleContradiction(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: msg.into(),
    }
}

type CliResult = Result<(), Failure>;

struct LoadedCycle {
    cycle: SymmetricCycle,
    source: String,
    seed: Option<u64>,
}

impl CycleArgs {
    fn load(&self) -> Result<LoadedCycle, Failure> {
        if let Some(path) = &self.cycle {
            let cycle = load_cycle(path)?;
            if let Some(t) = self.t {
                if t != cycle.t() {
                    return Err(input_error(format!(
                        "--t {t} does not match the cycle file (t = {})",
                        cycle.t()
                    )));
                }
            }
            return Ok(LoadedCycle {
                cycle,
                source: path.display().to_string(),
                seed: None,
            });
        }
        let t = self
            .t
            .ok_or_else(|| input_error("--t is required without --cycle"))?;
        if self.random {
            return Ok(LoadedCycle {
                cycle: cycles::seeded_cycle(t, self.seed)?,
                source: "random".into(),
                seed: Some(self.seed),
            });
        }
        Ok(LoadedCycle {
            cycle: distinguished_cycle(t)?,
            source: "distinguished".into(),
            seed: None,
        })
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn print_matrix(name: &str, m: &IntMatrix) {
    println!("{name} =");
    for line in m.to_string().lines() {
        println!("  {line}");
    }
}

fn cmd_matrices(args: &CycleArgs, format: Format) -> CliResult {
    let loaded = args.load()?;
    let d = &loaded.cycle;
    let t = d.t();
    let m = matrix_m(d);
    let w = matrix_w(d);
    let n = matrix_n(t)?;
    let p = matrix_p(t);
    match format {
        Format::Json => print_json(&json!({
            "t": t,
            "cycle": d.to_doc(),
            "M": m.to_rows(),
            "W": w.to_rows(),
            "N": n.to_rows(),
            "P": p.as_ref().ok().map(IntMatrix::to_rows),
            "rank_N": n.rank(),
            "rank_W": w.rank(),
        })),
        Format::Text => {
            println!("cycle {} (t = {t})", loaded.source);
            print_matrix("M(D)", &m);
            print_matrix("W(D)", &w);
            print_matrix(&format!("N({t})"), &n);
            println!("rank N({t}) = {}, rank W(D) = {}", n.rank(), w.rank());
            if let Ok(p) = &p {
                print_matrix(&format!("P({t})"), p);
            }
        }
    }
    match p {
        Ok(_) => Ok(()),
        Err(e) => Err(Failure {
            code: 3,
            message: format!("P({t}) refused: {e}"),
        }),
    }
}

enum Kind {
    Tope,
    Subtope,
}

fn cmd_decompose(
    args: &CycleArgs,
    target: Option<&str>,
    want_tope: bool,
    want_subtope: bool,
    check: bool,
    format: Format,
) -> CliResult {
    let target = target.ok_or_else(|| input_error("missing TARGET sign vector"))?;
    let v: SignVector = target.parse()?;
    let kind = match (v.zero_count(), want_tope, want_subtope) {
        (0, _, false) => Kind::Tope,
        (1, false, _) => Kind::Subtope,
        (z, _, _) => {
            let wanted = if want_subtope { "a subtope" } else if want_tope { "a tope" } else { "a tope or subtope" };
            return Err(input_error(format!("{v} has {z} zero entries, not {wanted}")));
        }
    };
    let loaded = args.load()?;
    let d = &loaded.cycle;
    if v.len() != d.t() {
        return Err(input_error(format!(
            "target {v} has length {}, cycle has t = {}",
            v.len(),
            d.t()
        )));
    }

    let (dec, mut out) = match kind {
        Kind::Tope => {
            let tope = Tope::new(v.clone())?;
            let x = decomp::tope_coords(&tope, d)?;
            let vd = decomp::vertex_decomposition(&tope, d)?;
            if format == Format::Text {
                println!("target   {v} (tope), cycle {} (t = {})", loaded.source, d.t());
                println!("x        {x}");
                println!("Q(T,D)   {}", vd.render());
            }
            let xbar = decomp::xbar_of_tope(&tope, d)?;
            let dec = Decomposition::from_coeffs(v.clone(), &xbar);
            let out = json!({
                "kind": "tope",
                "x": x,
                "vertex_indices": vd.indices,
                "xbar": xbar,
            });
            if format == Format::Text {
                println!("x̄        {xbar}");
            }
            (dec, out)
        }
        Kind::Subtope => {
            let s = Subtope::new(v.clone())?;
            let c = decomp::subtope_coords(&s, d)?;
            if format == Format::Text {
                println!("target   {v} (subtope), cycle {} (t = {})", loaded.source, d.t());
                println!("T', T''  {}, {}", c.plus, c.minus);
                println!("x(T')    {}", c.x_plus);
                println!("x(T'')   {}", c.x_minus);
                println!("x̄        {}", c.xbar);
            }
            let dec = Decomposition::from_coeffs(v.clone(), &c.xbar);
            let out = json!({
                "kind": "subtope",
                "pair": [c.plus, c.minus],
                "x_pair": [c.x_plus, c.x_minus],
                "xbar": c.xbar,
            });
            (dec, out)
        }
    };

    let rendered = dec.render();
    let check_result = check.then(|| {
        let terms = decomp::parse_terms(&rendered)?;
        let reparsed = Decomposition {
            target: v.clone(),
            terms,
        };
        reconstruct(&reparsed, &d.subtopes())
    });
    match format {
        Format::Text => {
            println!("{v} = {rendered}");
        }
        Format::Json => {
            out["decomposition"] = serde_json::to_value(dec.to_doc(d)).expect("serializable");
            out["rendered"] = json!(rendered);
            if let Some(Ok(sum)) = &check_result {
                out["reconstruction"] = json!(sum);
            }
            print_json(&out);
        }
    }
    match check_result {
        None => Ok(()),
        Some(Ok(sum)) if sum == v.to_ints() => {
            if format == Format::Text {
                println!("check    reconstruction matches the target");
            }
            Ok(())
        }
        Some(Ok(sum)) => Err(Failure {
            code: 1,
            message: format!("reconstruction {sum:?} differs from target {v}"),
        }),
        Some(Err(e)) => Err(Failure {
            code: 1,
            message: format!("rendered decomposition does not re-parse: {e}"),
        }),
    }
}

fn cmd_closedform(t: usize, neg: &str, check: bool, format: Format) -> CliResult {
    let set = IntervalSet::parse(neg, t)?;
    let xbar = closed_form_xbar(&set)?;
    let rows = signed_rows(&set);
    let tope = Tope::from_negative_part(&set.elements(), t)?;
    let solved = if check {
        Some(decomp::xbar_of_tope(&tope, &distinguished_cycle(t)?)?)
    } else {
        None
    };
    match format {
        Format::Text => {
            println!("t        {t}");
            println!("A        {set}  (rho = {})", set.rho());
            println!("tope     {tope}");
            println!("case     ({})", set.boundary_case().label());
            println!("rows     {}", render_rows(&rows));
            println!("x̄        {xbar}");
            if let Some(s) = &solved {
                let verdict = if *s == xbar { "matches" } else { "DIFFERS from" };
                println!("check    {verdict} exact solve {s}");
            }
        }
        Format::Json => print_json(&json!({
            "t": t,
            "intervals": set.intervals(),
            "rho": set.rho(),
            "tope": tope,
            "case": set.boundary_case().label(),
            "rows": rows,
            "xbar": xbar,
            "solve_xbar": solved,
        })),
    }
    match solved {
        Some(s) if s != xbar => Err(Failure {
            code: 1,
            message: "closed form disagrees with the exact solve".into(),
        }),
        _ => Ok(()),
    }
}

fn cmd_verify(args: &CycleArgs, scope: &str, enum_cap: usize, exhaustive_cap: usize, format: Format) -> CliResult {
    let scope = Scope::parse(scope)?;
    let loaded = args.load()?;
    let config = VerifyConfig {
        enum_cap,
        exhaustive_cap,
        seed: loaded.seed,
        source: loaded.source,
    };
    let report = oracle::verify_suite(&loaded.cycle, &scope, &config);
    match format {
        Format::Text => println!("{report}"),
        Format::Json => print_json(&serde_json::to_value(&report).expect("serializable")),
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: format!("{} verification failures", report.failures.len()),
        })
    }
}

fn cmd_bench(ts: &[usize], reps: usize, seed: u64, solve_cap: usize, format: BenchFormat) -> CliResult {
    let config = BenchConfig { reps, seed, solve_cap };
    let rows = bench::run_bench(ts, &config)?;
    match format {
        BenchFormat::Csv => {
            println!("{CSV_HEADER}");
            for r in &rows {
                println!("{}", r.csv());
            }
        }
        BenchFormat::Json => print_json(&json!({
            "config": config,
            "rows": rows,
            "closed_form_slope": bench::closed_form_slope(&rows),
        })),
        BenchFormat::Text => {
            println!(
                "{:>6} {:>5} {:>14} {:>14} {:>14} {:>14} {:>9}",
                "t", "rho", "closed min ns", "closed mean ns", "solve min ns", "solve mean ns", "speedup"
            );
            for r in &rows {
                let opt = |v: Option<u128>| v.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
                println!(
                    "{:>6} {:>5} {:>14} {:>14} {:>14} {:>14} {:>9}",
                    r.t,
                    r.rho,
                    r.closed_ns_min,
                    r.closed_ns_mean,
                    opt(r.solve_ns_min),
                    opt(r.solve_ns_mean),
                    r.speedup().map(|s| format!("{s:.1}x")).unwrap_or_else(|| "-".into())
                );
            }
            if rows.iter().any(|r| r.solve_ns_min.is_none()) {
                println!("solve path omitted above t = {solve_cap} (raise with --solve-cap)");
            }
            if let Some(slope) = bench::closed_form_slope(&rows) {
                println!("closed form: log-log slope vs t*rho = {slope:.2}");
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Matrices { cycle, format } => cmd_matrices(&cycle, format),
        Command::Decompose {
            cycle,
            target,
            target_flag,
            tope,
            subtope,
            check,
            format,
        } => cmd_decompose(
            &cycle,
            target.as_deref().or(target_flag.as_deref()),
            tope,
            subtope,
            check,
            format,
        ),
        Command::Closedform { t, neg, check, format } => cmd_closedform(t, &neg, check, format),
        Command::Verify {
            cycle,
            scope,
            enum_cap,
            exhaustive_cap,
            format,
        } => cmd_verify(&cycle, &scope, enum_cap, exhaustive_cap, format),
        Command::Bench {
            t,
            reps,
            seed,
            solve_cap,
            format,
        } => cmd_bench(&t, reps, seed, solve_cap, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
