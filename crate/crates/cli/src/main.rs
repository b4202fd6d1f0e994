mod text;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use skv_core::arithdata::{check_admissible, check_hyp, Fixture, DEFAULT_BOUND};
use skv_core::engine::{sku_generators_truncated, sku_prime_generators, theta, Theta};
use skv_core::rednorm::{fitting_report, PresentationFile};
use skv_core::verify::{default_s, run_checks, Check, CheckOptions, Fault, Report, SetChoice};

const USAGE_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "skv",
    version,
    about = "Equivariant Stickelberger elements and annihilation verdicts over exact arithmetic"
)]
struct Cli {
    /// Fixture file (schema skvfix/1)
    #[arg(long, global = true)]
    fixture: Option<PathBuf>,

    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Largest |T| in truncated generator sets
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    bound: usize,

    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Sets {
    /// Places of S, comma separated ("inf" names all infinite places); default: infinite and ramified places
    #[arg(long = "S")]
    s: Option<String>,

    /// Places of T, comma separated
    #[arg(long = "T")]
    t: Option<String>,

    /// Non-positive integer r
    #[arg(long, allow_negative_numbers = true)]
    r: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble and print θ_S^T(r)
    Theta {
        #[command(flatten)]
        sets: Sets,
    },
    /// Run a verdict suite, or `all`
    Check {
        /// stickelberger_int, sku_maxord, brumer, brumer_stark_necessary, negative_r or all
        suite: String,

        #[command(flatten)]
        sets: Sets,

        /// Test p-integrality only (p-local admissibility)
        #[arg(long)]
        p: Option<u64>,

        /// Perturb the first tested element: `auto` or k/d
        #[arg(long)]
        fault: Option<String>,

        /// Record per-check wall time (reports are then no longer byte-identical)
        #[arg(long)]
        timings: bool,
    },
    /// Emit SKu′ generators, or SKu generators with a truncated U
    Sku {
        #[arg(long = "S")]
        s: Option<String>,

        /// Use the truncated U and keep at most this many products
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Fitting invariant of a presentation file (schema skvpres/1) over the fixture group
    Fitting { presentation: PathBuf },
    /// Fixture tools
    Fixtures {
        #[command(subcommand)]
        command: FixturesCommand,
    },
}

#[derive(Subcommand)]
enum FixturesCommand {
    /// Parse and validate fixture files
    Validate {
        /// Files to check; defaults to --fixture
        paths: Vec<PathBuf>,
    },
}

struct Output {
    json: Value,
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE_ERROR } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json") + "\n",
                Format::Text => out.text,
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(USAGE_ERROR);
                    }
                }
                None => print!("{body}"),
            }
            ExitCode::from(out.code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, String> {
    match &cli.command {
        Command::Fixtures {
            command: FixturesCommand::Validate { paths },
        } => validate(cli, paths),
        Command::Theta { sets } => {
            let fix = load(cli)?;
            run_theta(&fix, sets)
        }
        Command::Check {
            suite,
            sets,
            p,
            fault,
            timings,
        } => {
            let fix = load(cli)?;
            run_check(cli, &fix, suite, sets, *p, fault.as_deref(), *timings)
        }
        Command::Sku { s, cap } => {
            let fix = load(cli)?;
            run_sku(cli, &fix, s.as_deref(), *cap)
        }
        Command::Fitting { presentation } => {
            let fix = load(cli)?;
            run_fitting(&fix, presentation)
        }
    }
}

fn load(cli: &Cli) -> Result<Fixture, String> {
    let path = cli.fixture.as_ref().ok_or("--fixture <path> is required")?;
    Fixture::load(path).map_err(|e| e.to_string())
}

fn header(fix: &Fixture) -> Value {
    json!({"fixture": fix.name, "fixtureDigest": fix.digest()})
}

fn places(
    fix: &Fixture,
    list: Option<&str>,
    default: impl FnOnce() -> Vec<usize>,
) -> Result<Vec<usize>, String> {
    match list {
        Some(text) => fix.parse_place_list(text).map_err(|e| e.to_string()),
        None => Ok(default()),
    }
}

fn run_theta(fix: &Fixture, sets: &Sets) -> Result<Output, String> {
    let s = places(fix, sets.s.as_deref(), || default_s(fix))?;
    let t = places(fix, sets.t.as_deref(), Vec::new)?;
    let r = sets.r.unwrap_or(0);
    let hyp = check_hyp(fix, &s, &t).map_err(|e| e.to_string())?;
    let integral = if r < 0 {
        check_admissible(fix, &s, &t, 2, r)
            .map_err(|e| e.to_string())?
            .holds
    } else {
        hyp.holds
    };
    let mut json = header(fix);
    json["hyp"] = json!({"holds": hyp.holds, "failed": hyp.failed()});
    json["integralitySet"] = json!(integral);
    match theta(fix, &s, &t, r).map_err(|e| e.to_string())? {
        Theta::Assembled(th) => {
            let text = text::theta(fix, &th, &hyp.failed());
            json["theta"] = th.to_json(fix);
            Ok(Output {
                json,
                text,
                code: 0,
            })
        }
        Theta::Incomplete(missing) => {
            let list: Vec<String> = missing.iter().map(|m| m.describe()).collect();
            json["missingSources"] = json!(missing.iter().map(|m| m.to_json()).collect::<Vec<_>>());
            let text = format!(
                "theta incomplete; missing sources (fixture field sources):\n  {}\n",
                list.join("\n  ")
            );
            Ok(Output {
                json,
                text,
                code: 2,
            })
        }
    }
}

fn parse_fault(fix: &Fixture, text: &str, p: Option<u64>) -> Result<Fault, String> {
    if text == "auto" {
        return Ok(Fault::for_fixture(fix, p));
    }
    let (n, d) = text
        .split_once('/')
        .ok_or_else(|| format!("--fault expects auto or k/d, got {text:?}"))?;
    let numerator = n
        .trim()
        .parse()
        .map_err(|_| format!("bad fault numerator {n:?}"))?;
    let denominator: u64 = d
        .trim()
        .parse()
        .map_err(|_| format!("bad fault denominator {d:?}"))?;
    if denominator == 0 {
        return Err("fault denominator must be positive".into());
    }
    Ok(Fault {
        numerator,
        denominator,
    })
}

fn run_check(
    cli: &Cli,
    fix: &Fixture,
    suite: &str,
    sets: &Sets,
    p: Option<u64>,
    fault: Option<&str>,
    timings: bool,
) -> Result<Output, String> {
    let checks: Vec<Check> = if suite == "all" {
        Check::ALL.to_vec()
    } else {
        let ids: Vec<&str> = Check::ALL.iter().map(|c| c.id()).collect();
        vec![Check::parse(suite).ok_or_else(|| {
            format!(
                "unknown suite {suite:?}; expected all or one of {}",
                ids.join(", ")
            )
        })?]
    };
    let choice = match (&sets.s, &sets.t, sets.r) {
        (None, None, None) => None,
        _ => Some(SetChoice {
            s: places(fix, sets.s.as_deref(), || default_s(fix))?,
            t: places(fix, sets.t.as_deref(), Vec::new)?,
            r: sets.r.unwrap_or(0),
        }),
    };
    let opts = CheckOptions {
        sets: choice,
        p,
        bound: cli.bound,
        seed: cli.seed,
        fault: fault.map(|f| parse_fault(fix, f, p)).transpose()?,
        ..CheckOptions::default()
    };
    let mut verdicts = Vec::new();
    let mut times = Vec::new();
    for c in checks {
        let start = Instant::now();
        verdicts.extend(run_checks(fix, &[c], &opts).map_err(|e| format!("{}: {e}", c.id()))?);
        times.push((c.id().to_string(), start.elapsed().as_millis()));
    }
    let mut report = Report::new(fix, cli.seed, verdicts);
    if timings {
        report.timings = Some(times);
    }
    Ok(Output {
        json: report.to_json(),
        text: report.to_text(),
        code: report.exit_code() as u8,
    })
}

fn run_sku(
    cli: &Cli,
    fix: &Fixture,
    s: Option<&str>,
    cap: Option<usize>,
) -> Result<Output, String> {
    let s = places(fix, s, || default_s(fix))?;
    let set = match cap {
        Some(cap) => sku_generators_truncated(fix, &s, cli.bound, cap),
        None => sku_prime_generators(fix, &s, cli.bound),
    }
    .map_err(|e| e.to_string())?;
    let mut json = header(fix);
    json["S"] = json!(fix.place_labels(&s));
    json["set"] = json!(if cap.is_some() {
        "SKu (truncated U)"
    } else {
        "SKu'"
    });
    json["sku"] = set.to_json(fix);
    let code = if set.missing.is_empty() { 0 } else { 2 };
    Ok(Output {
        text: text::sku(fix, &set),
        json,
        code,
    })
}

fn run_fitting(fix: &Fixture, path: &Path) -> Result<Output, String> {
    let body = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file = PresentationFile::from_json_str(&fix.group, &body)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let report = fitting_report(&fix.real, &file).map_err(|e| e.to_string())?;
    let mut json = header(fix);
    json["presentation"] = json!(path.display().to_string());
    json["fitting"] = report.json.clone();
    let code = match report.annihilated {
        Some(false) => 1,
        _ => 0,
    };
    Ok(Output {
        text: text::fitting(&report),
        json,
        code,
    })
}

fn validate(cli: &Cli, paths: &[PathBuf]) -> Result<Output, String> {
    let paths: Vec<PathBuf> = if paths.is_empty() {
        vec![cli
            .fixture
            .clone()
            .ok_or("fixtures validate needs paths or --fixture")?]
    } else {
        paths.to_vec()
    };
    let mut entries = Vec::new();
    let mut text = String::new();
    let mut code = 0;
    for path in &paths {
        match Fixture::load(path) {
            Ok(fix) => {
                text.push_str(&format!(
                    "ok {} ({}, |G| = {}, {} places, {} characters) sha256 {}\n",
                    path.display(),
                    fix.name,
                    fix.group.order(),
                    fix.places.len(),
                    fix.table.len(),
                    fix.digest()
                ));
                entries.push(json!({
                    "path": path.display().to_string(),
                    "valid": true,
                    "name": fix.name,
                    "digest": fix.digest(),
                    "groupOrder": fix.group.order(),
                    "places": fix.places.len(),
                    "characters": fix.table.len(),
                }));
            }
            Err(e) => {
                code = USAGE_ERROR;
                text.push_str(&format!("invalid {e}\n"));
                eprintln!("error: {e}");
                entries.push(json!({"path": path.display().to_string(), "valid": false, "error": e.to_string()}));
            }
        }
    }
    Ok(Output {
        json: json!({"fixtures": entries}),
        text,
        code,
    })
}
