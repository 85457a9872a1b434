use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use qed_core::chansim::{simulate, Protocol};
use qed_core::enumerators::{
    check_enum_properties, macwilliams, min_distance, stabilizer_enumerators, stabilizer_enumerators_via,
    Check, Direction, DualRoute,
};
use qed_core::oracle::{
    classify_error, classify_error_dense, enumerators_bruteforce, oracle_cap, pue_composite_exact,
    pue_nonstab_mc, stabilizer_projector, verify_lemma_int, verify_lemma_vvvv, COMPOSITE_CAP,
};
use qed_core::pue::{
    parse_grid, pue_nonstabilizer, pue_stabilizer, pue_stabilizer_direct, pue_via_moments, sweep, to_csv,
};
use qed_core::{catalog, parse_code, AdditiveCode, EnumeratorPair, Error, Gf4Vector, Mode, RunPlan};

#[derive(Parser)]
#[command(name = "qed", version, about = "Quantum weight enumerators and undetected-error probabilities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the weight enumerators and minimum distance.
    Enum {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate an undetected-error probability.
    Pue {
        #[command(flatten)]
        code: CodeArg,
        /// Single error probability.
        #[arg(long, conflicts_with = "sweep", required_unless_present = "sweep")]
        p: Option<f64>,
        /// Inclusive grid `start:stop:step`.
        #[arg(long)]
        sweep: Option<String>,
        /// Comma-separated modes: s, n, c, q (classical), m (moments).
        #[arg(long, default_value = "s")]
        mode: String,
        #[arg(long)]
        csv: bool,
    },
    /// Cross-check closed forms against the dense oracle.
    Verify {
        #[command(flatten)]
        code: CodeArg,
        /// Refuse codes longer than this (bounded by the oracle cap).
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Simulate the detection protocol.
    Simulate {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// s (stabilizer) or n (nonstabilizer).
        #[arg(long, default_value = "s")]
        protocol: String,
        #[arg(long, default_value_t = RunPlan::DEFAULT_SHARDS)]
        shards: usize,
    },
}

#[derive(Args)]
struct CodeArg {
    /// Catalog name or path to a code file.
    code: String,
}

/// Exit 1 for failed checks and invalid parameters, 2 for unreadable input.
enum Failure {
    Check(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownSymbol { .. }
            | Error::MixedAlphabet { .. }
            | Error::RaggedRows { .. }
            | Error::SignPrefix { .. }
            | Error::MalformedHeader { .. }
            | Error::HeaderMismatch { .. } => Failure::Input(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn load(arg: &CodeArg) -> Result<(String, AdditiveCode), Failure> {
    if let Some(entry) = catalog::get(&arg.code) {
        return Ok((entry.name.to_string(), entry.code()?));
    }
    let path = Path::new(&arg.code);
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: not a catalog name and unreadable: {e}", arg.code)))?;
    let code = parse_code(&text).map_err(|e| Failure::Input(format!("{}: {e}", arg.code)))?;
    let name = path.file_stem().map_or(arg.code.clone(), |s| s.to_string_lossy().into_owned());
    Ok((name, code))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn property_failure(pair: &EnumeratorPair) -> Option<String> {
    let report = check_enum_properties(pair);
    let fails: Vec<_> = report.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    (!fails.is_empty()).then(|| fails.join("; "))
}

fn cmd_enum(code: &CodeArg, json: bool) -> Outcome {
    let (_, code) = load(code)?;
    let pair = stabilizer_enumerators(&code)?;
    if let Some(msg) = property_failure(&pair) {
        return Err(Failure::Check(msg));
    }
    if json {
        println!("{}", pair.to_json());
    } else {
        let (m, mp) = pair.moments();
        println!("n={}", pair.n());
        println!("K={}", pair.dimension());
        println!("B={}", join(pair.b()));
        println!("Bperp={}", join(pair.bperp()));
        println!("moments={}", join(m));
        println!("moments_perp={}", join(mp));
        println!("d={}", min_distance(&pair)?);
    }
    Ok(())
}

fn cmd_pue(code: &CodeArg, p: Option<f64>, grid: Option<&str>, mode: &str, csv: bool) -> Outcome {
    let (name, code) = load(code)?;
    let modes = mode
        .split(',')
        .map(|m| m.trim().parse::<Mode>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Input(e.to_string()))?;
    let grid = match (p, grid) {
        (Some(p), _) => vec![p],
        (None, Some(g)) => parse_grid(g).map_err(|e| Failure::Input(e.to_string()))?,
        (None, None) => return Err(Failure::Input("either --p or --sweep is required".into())),
    };
    let pair = stabilizer_enumerators(&code)?;
    let rows = sweep(&pair, &grid, &modes, &name)?;
    if csv {
        print!("{}", to_csv(&rows));
    } else if rows.len() == 1 {
        println!("{}", rows[0].value);
    } else {
        println!("p\tmode\tpue");
        for r in &rows {
            println!("{}\t{}\t{}", r.p, r.mode, r.value);
        }
    }
    Ok(())
}

struct Verifier {
    checks: Vec<Check>,
}

impl Verifier {
    fn record(&mut self, check: Check) {
        let tag = if check.passed { "PASS" } else { "FAIL" };
        println!("{tag} {}: {}", check.name, check.detail);
        self.checks.push(check);
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.record(Check::new(name, passed, detail));
    }

    fn skip(&self, name: &str, why: &str) {
        println!("SKIP {name}: {why}");
    }

    fn attempt(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String), Error>) {
        match f() {
            Ok((passed, detail)) => self.check(name, passed, detail),
            Err(e) => self.check(name, false, e.to_string()),
        }
    }
}

fn relative_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

const LEMMA_FOURTH_MAX_K: usize = 8;

fn cmd_verify(code: &CodeArg, max_n: Option<usize>, tol: f64, samples: usize, seed: u64) -> Outcome {
    let (name, code) = load(code)?;
    let n = code.n();
    let cap = max_n.map_or(oracle_cap(), |m| m.min(oracle_cap()));
    if n > cap {
        println!("FAIL oracle cap: {name} has n={n}, beyond the oracle cap of {cap} (QED_ORACLE_CAP)");
        return Err(Failure::Check(format!("oracle cap: n={n} exceeds {cap}")));
    }
    if samples < 2 {
        return Err(Failure::Check("--samples must be at least 2".into()));
    }
    let mut v = Verifier { checks: Vec::new() };
    v.check("self-orthogonal", code.is_self_orthogonal(), format!("n={n} r={}", code.rank()));
    let pair = stabilizer_enumerators(&code)?;
    for c in check_enum_properties(&pair).checks {
        v.record(c);
    }
    let k: usize = 1 << code.k().unwrap_or(0);

    let projector = match stabilizer_projector(&code) {
        Ok((group, p)) => {
            v.check("projector", true, format!("|S|={} Tr P={}", group.elements().len(), p.trace().re));
            p
        }
        Err(e) => {
            v.check("projector", false, e.to_string());
            return finish(&v);
        }
    };

    v.attempt("oracle enumerators", || {
        let oracle = enumerators_bruteforce(&projector, k)?;
        Ok((oracle == pair, format!("B={} Bperp={}", join(oracle.b()), join(oracle.bperp()))))
    });

    v.attempt("macwilliams", || {
        let b: Vec<BigInt> = pair.b().iter().cloned().map(Into::into).collect();
        let bp: Vec<BigInt> = pair.bperp().iter().cloned().map(Into::into).collect();
        let fwd = macwilliams(&b, n, pair.dimension(), Direction::PrimalToDual)?;
        let back = macwilliams(&fwd, n, pair.dimension(), Direction::DualToPrimal)?;
        Ok((fwd == bp && back == b, "B -> Bperp -> B".to_string()))
    });

    v.attempt("dual routes", || {
        let a = stabilizer_enumerators_via(&code, DualRoute::Enumerate)?;
        let b = stabilizer_enumerators_via(&code, DualRoute::MacWilliams)?;
        Ok((a == b, "enumeration = transform".to_string()))
    });

    if n <= 4 {
        v.attempt("classification", || {
            let mut disagree = 0;
            for idx in 0..4u64.pow(n as u32) {
                let e = Gf4Vector::from_index(n, idx);
                if classify_error(&code, &e)? != classify_error_dense(&projector, &e)? {
                    disagree += 1;
                }
            }
            Ok((disagree == 0, format!("{} errors, {disagree} disagreements", 4u64.pow(n as u32))))
        });
    } else {
        v.skip("classification", "exhaustive check runs for n <= 4");
    }

    let grid: Vec<f64> = (0..20).map(|i| 0.75 * f64::from(i) / 19.0).collect();
    v.attempt("moments form", || {
        let mut worst: f64 = 0.0;
        for &p in &grid {
            worst = worst.max(relative_gap(pue_via_moments(&pair, p)?, pue_stabilizer(&pair, p)?));
        }
        Ok((worst <= tol, format!("max relative gap {worst:e}")))
    });
    v.attempt("direct sum", || {
        let mut worst: f64 = 0.0;
        for &p in &grid {
            worst = worst.max(relative_gap(pue_stabilizer_direct(&code, p)?, pue_stabilizer(&pair, p)?));
        }
        Ok((worst <= tol, format!("max relative gap {worst:e}")))
    });

    let p = 0.1;
    v.attempt("nonstabilizer monte carlo", || {
        let target = pue_nonstabilizer(&pair, p)?;
        let r = pue_nonstab_mc(&projector, k, p, &RunPlan::new(samples, seed))?;
        let ok = (r.estimate - target).abs() <= 4.0 * r.stderr + 1e-12;
        Ok((ok, format!("p={p} estimate={} stderr={} target={target}", r.estimate, r.stderr)))
    });

    if n <= COMPOSITE_CAP {
        v.attempt("composite", || {
            let mut worst: f64 = 0.0;
            for p in [0.05, 0.3, 0.74] {
                worst = worst.max((pue_composite_exact(&projector, k, p)? - pue_stabilizer(&pair, p)?).abs());
            }
            Ok((worst <= 1e-10, format!("max gap {worst:e}")))
        });
    } else {
        v.skip("composite", "exact evaluation runs for n <= 4");
    }

    v.attempt("lemma second moment", || {
        let r = verify_lemma_int(&projector, k, &RunPlan::new(samples, seed.wrapping_add(1)))?;
        Ok((r.within(4.0), format!("deviation={:e} sigma={:e}", r.deviation, r.sigma)))
    });
    if k <= LEMMA_FOURTH_MAX_K {
        v.attempt("lemma fourth moment", || {
            let r = verify_lemma_vvvv(k, &RunPlan::new(samples, seed.wrapping_add(2)))?;
            Ok((r.within(4.0), format!("K={k} deviation={:e} sigma={:e}", r.deviation, r.sigma)))
        });
    } else {
        v.skip("lemma fourth moment", "runs for K <= 8");
    }
    finish(&v)
}

fn finish(v: &Verifier) -> Outcome {
    let failed = v.checks.iter().filter(|c| !c.passed).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{failed} of {} checks failed", v.checks.len())))
    }
}

fn cmd_simulate(code: &CodeArg, p: f64, trials: usize, seed: u64, protocol: &str, shards: usize) -> Outcome {
    let (_, code) = load(code)?;
    let protocol: Protocol = protocol.parse().map_err(|e: Error| Failure::Input(e.to_string()))?;
    let plan = RunPlan::new(trials, seed).with_shards(shards);
    let report = simulate(&code, p, protocol, &plan)?;
    println!("{}", report.to_json());
    let pair = stabilizer_enumerators(&code)?;
    let target = match protocol {
        Protocol::Stabilizer => pue_stabilizer(&pair, p)?,
        Protocol::Nonstabilizer => pue_nonstabilizer(&pair, p)?,
    };
    eprintln!(
        "analytic={target} estimate={} stderr={} sigma_distance={:.3}",
        report.estimate,
        report.stderr,
        report.sigma_distance(target)
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Enum { code, json } => cmd_enum(code, *json),
        Command::Pue {
            code,
            p,
            sweep,
            mode,
            csv,
        } => cmd_pue(code, *p, sweep.as_deref(), mode, *csv),
        Command::Verify {
            code,
            max_n,
            tol,
            samples,
            seed,
        } => cmd_verify(code, *max_n, *tol, *samples, *seed),
        Command::Simulate {
            code,
            p,
            trials,
            seed,
            protocol,
            shards,
        } => cmd_simulate(code, *p, *trials, *seed, protocol, *shards),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("qed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("qed: {msg}");
            ExitCode::from(2)
        }
    }
}
