//! `omnilife` command line: JSON reports on stdout, diagnostics on stderr.
//!
//! Exit status is 0 on success, 1 when a verification or search fails, and
//! 2 on bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use omnilife::analysis::{analyze, detect_dynamics, volatility_stats};
use omnilife::catalog::verify_catalog;
use omnilife::catsearch::{search_catalysts, search_exhaustive, SearchConfigFile};
use omnilife::census::{run_census, SoupConfig, DEFAULT_DENSITY, DEFAULT_MAX_GENS};
use omnilife::parallel::Parallelism;
use omnilife::rle::{parse_rle, write_rle, write_rle_with_comments};
use omnilife::synthesis::{compose_lcm, resolve_period, synth_snark_loop_spec, SNARK_MIN_PERIOD};
use omnilife::{Error, Pattern, Torus};

const DEFAULT_MAX_GENS_ANALYZE: u64 = 4096;

#[derive(Parser)]
#[command(name = "omnilife", version, about = "Game of Life oscillator toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a pattern as oscillator, spaceship or unresolved.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_GENS_ANALYZE)]
        max_gens: u64,
    },
    /// Build a Snark loop of the given period (at least 43).
    Synth {
        #[arg(long)]
        period: u64,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Return a verified oscillator of any period.
    Resolve {
        #[arg(long)]
        period: u64,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Place two oscillators side by side to get the lcm of their periods.
    Compose {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Simulate every embedded catalog pattern and check its period.
    VerifyCatalog {
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run random soups on a torus and tally the ash.
    Census {
        #[arg(long)]
        soups: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = parse_dims)]
        soup_size: (usize, usize),
        #[arg(long, value_parser = parse_dims)]
        torus: (usize, usize),
        #[arg(long, default_value_t = DEFAULT_DENSITY)]
        density: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_GENS)]
        max_gens: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Search for catalyst placements described by a JSON config.
    Catsearch {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got `{s}`"))?;
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("`{v}`: {e}"));
    Ok((parse(w)?, parse(h)?))
}

enum Failure {
    /// Bad arguments or unreadable input; exit 2.
    Input(anyhow::Error),
    /// A well-formed request whose verification or search failed; exit 1.
    Failed(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

/// Report body and whether the command succeeded.
type Outcome = Result<(Map<String, Value>, bool), Failure>;

fn read_pattern(path: &Path) -> anyhow::Result<Pattern> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc = parse_rle(&text).with_context(|| format!("parsing {}", path.display()))?;
    if doc.width_overrun {
        eprintln!(
            "warning: {} has cells beyond its declared width",
            path.display()
        );
    }
    Ok(doc.pattern)
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn emit_pattern(
    body: &mut Map<String, Value>,
    p: &Pattern,
    output: Option<&Path>,
    comment: &str,
) -> anyhow::Result<()> {
    let text = write_rle_with_comments(p, &[comment]);
    body.insert("population".into(), json!(p.population()));
    match output {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            body.insert("output".into(), json!(path.display().to_string()));
        }
        None => {
            body.insert("rle".into(), json!(text));
        }
    }
    Ok(())
}

fn cmd_analyze(file: &Path, max_gens: u64) -> Outcome {
    let p = read_pattern(file)?;
    if max_gens == 0 {
        return Err(Failure::Input(anyhow!("--max-gens must be positive")));
    }
    let (report, stats) = analyze(&p, max_gens).map_err(|e| Failure::Failed(e.into()))?;
    let mut body = object(serde_json::to_value(&report).expect("serializable"));
    body.insert("population".into(), json!(p.population()));
    if let Some(s) = stats {
        body.insert(
            "volatility".into(),
            serde_json::to_value(s).expect("serializable"),
        );
    }
    Ok((body, true))
}

fn cmd_synth(period: u64, output: Option<&Path>) -> Outcome {
    if period < SNARK_MIN_PERIOD {
        return Err(Failure::Input(anyhow!(
            "Snark loops need period >= {SNARK_MIN_PERIOD}; use `resolve --period {period}` instead"
        )));
    }
    let (spec, p) = synth_snark_loop_spec(period).map_err(|e| Failure::Failed(e.into()))?;
    let mut body = object(serde_json::to_value(&spec).expect("serializable"));
    body.insert("period".into(), json!(period));
    body.insert("traversal_time".into(), json!(spec.traversal_time()));
    emit_pattern(
        &mut body,
        &p,
        output,
        &format!("p{period} Snark loop, n = {}, m = {}", spec.n, spec.m),
    )?;
    Ok((body, true))
}

fn cmd_resolve(period: u64, output: Option<&Path>) -> Outcome {
    if period == 0 {
        return Err(Failure::Input(anyhow!("period must be positive")));
    }
    let r = resolve_period(period).map_err(|e| Failure::Failed(e.into()))?;
    let mut body = object(serde_json::to_value(&r).expect("serializable"));
    emit_pattern(
        &mut body,
        &r.pattern,
        output,
        &format!("{} (p{period})", r.name),
    )?;
    Ok((body, true))
}

fn oscillator_period(path: &Path, p: &Pattern) -> Result<u64, Failure> {
    let r = detect_dynamics(p, DEFAULT_MAX_GENS_ANALYZE).map_err(|e| Failure::Input(e.into()))?;
    r.oscillator_period()
        .ok_or_else(|| Failure::Input(anyhow!("{} is not an oscillator", path.display())))
}

fn cmd_compose(a: &Path, b: &Path, output: Option<&Path>) -> Outcome {
    let (pa, pb) = (read_pattern(a)?, read_pattern(b)?);
    let (na, nb) = (oscillator_period(a, &pa)?, oscillator_period(b, &pb)?);
    let c = compose_lcm(&pa, na, &pb, nb).map_err(|e| Failure::Failed(e.into()))?;
    let period = omnilife::synthesis::lcm(na, nb);
    let stats = volatility_stats(&c, period).map_err(|e| Failure::Failed(e.into()))?;
    let mut body = Map::new();
    body.insert("period".into(), json!(period));
    body.insert("period_a".into(), json!(na));
    body.insert("period_b".into(), json!(nb));
    body.insert(
        "volatility".into(),
        serde_json::to_value(stats).expect("serializable"),
    );
    emit_pattern(
        &mut body,
        &c,
        output,
        &format!("lcm({na}, {nb}) = {period} composite"),
    )?;
    Ok((body, true))
}

fn cmd_verify_catalog(jobs: usize) -> Outcome {
    let report = verify_catalog(Parallelism::from_jobs(jobs));
    for e in report.entries.iter().filter(|e| !e.passed) {
        eprintln!(
            "FAIL p{} {}: {}",
            e.period,
            e.name,
            e.error.as_deref().unwrap_or("")
        );
    }
    let ok = report.all_passed;
    Ok((
        object(serde_json::to_value(&report).expect("serializable")),
        ok,
    ))
}

#[allow(clippy::too_many_arguments)]
fn cmd_census(
    soups: u64,
    seed: u64,
    soup_size: (usize, usize),
    torus: (usize, usize),
    density: f64,
    max_gens: u64,
    jobs: usize,
) -> Outcome {
    let torus = Torus::new(torus.0, torus.1).map_err(|e| Failure::Input(e.into()))?;
    let cfg = SoupConfig {
        seed,
        soup_width: soup_size.0,
        soup_height: soup_size.1,
        density,
        torus,
        max_gens,
        soup_count: soups,
    };
    cfg.validate().map_err(|e| Failure::Input(e.into()))?;
    let tally =
        run_census(&cfg, Parallelism::from_jobs(jobs)).map_err(|e| Failure::Failed(e.into()))?;
    Ok((
        object(serde_json::to_value(&tally).expect("serializable")),
        true,
    ))
}

fn cmd_catsearch(config: &Path, jobs: usize, out_dir: Option<&Path>) -> Outcome {
    let text =
        fs::read_to_string(config).with_context(|| format!("reading {}", config.display()))?;
    let file: SearchConfigFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", config.display()))?;
    let cfg = file.to_config().map_err(|e| Failure::Input(e.into()))?;
    cfg.validate().map_err(|e| Failure::Input(e.into()))?;
    let result = if file.exhaustive {
        search_exhaustive(&cfg)
    } else {
        search_catalysts(&cfg, Parallelism::from_jobs(jobs))
    }
    .map_err(|e| Failure::Failed(e.into()))?;

    let mut index = Vec::new();
    for (i, s) in result.solutions.iter().enumerate() {
        let name = format!("solution-{:03}.rle", i + 1);
        if let Some(dir) = out_dir {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let comment = format!(
                "{} catalysts, period {}",
                s.placements.len(),
                s.report.period.unwrap_or(0)
            );
            fs::write(
                dir.join(&name),
                write_rle_with_comments(&s.resulting_pattern, &[&comment]),
            )
            .with_context(|| format!("writing {name}"))?;
        }
        index.push(json!({
            "file": name,
            "placements": s.placements,
            "period": s.report.period,
            "population": s.resulting_pattern.population(),
            "rle": write_rle(&s.resulting_pattern),
        }));
    }
    let mut body = Map::new();
    body.insert("solutions".into(), Value::Array(index));
    body.insert("nodes".into(), json!(result.nodes));
    body.insert("complete".into(), json!(result.complete));
    if let Some(dir) = out_dir {
        let idx = Value::Object(body.clone());
        fs::write(
            dir.join("index.json"),
            serde_json::to_string_pretty(&idx).expect("json") + "\n",
        )
        .context("writing index.json")?;
    }
    let found = !result.solutions.is_empty();
    if !found {
        eprintln!("no solutions found");
    }
    Ok((body, found))
}

fn run(cli: Cli) -> (String, Outcome) {
    match cli.command {
        Command::Analyze { file, max_gens } => ("analyze".into(), cmd_analyze(&file, max_gens)),
        Command::Synth { period, output } => ("synth".into(), cmd_synth(period, output.as_deref())),
        Command::Resolve { period, output } => {
            ("resolve".into(), cmd_resolve(period, output.as_deref()))
        }
        Command::Compose { a, b, output } => {
            ("compose".into(), cmd_compose(&a, &b, output.as_deref()))
        }
        Command::VerifyCatalog { jobs } => ("verify-catalog".into(), cmd_verify_catalog(jobs)),
        Command::Census {
            soups,
            seed,
            soup_size,
            torus,
            density,
            max_gens,
            jobs,
        } => (
            "census".into(),
            cmd_census(soups, seed, soup_size, torus, density, max_gens, jobs),
        ),
        Command::Catsearch {
            config,
            jobs,
            out_dir,
        } => (
            "catsearch".into(),
            cmd_catsearch(&config, jobs, out_dir.as_deref()),
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (command, outcome) = run(cli);
    let (status, body, code) = match outcome {
        Ok((body, true)) => {
            let status = match body.get("kind").and_then(Value::as_str) {
                Some("unresolved") => "unresolved",
                _ => "ok",
            };
            (status, body, 0)
        }
        Ok((body, false)) => ("fail", body, 1),
        Err(Failure::Failed(e)) => {
            eprintln!("error: {e:#}");
            let unresolved = matches!(e.downcast_ref::<Error>(), Some(Error::Unresolved { .. }));
            let mut body = Map::new();
            body.insert("error".into(), json!(format!("{e:#}")));
            (if unresolved { "unresolved" } else { "fail" }, body, 1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            let mut body = Map::new();
            body.insert("error".into(), json!(format!("{e:#}")));
            ("fail", body, 2)
        }
    };
    let mut out = Map::new();
    out.insert("command".into(), json!(command));
    out.insert("status".into(), json!(status));
    out.extend(body);
    println!("{}", Value::Object(out));
    ExitCode::from(code)
}
