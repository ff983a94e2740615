//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use toto_core::inference::{frequency_of, limiting_probability, type_histogram};
use toto_core::kakeya::{emit_event_sentence, greedy_subsum, parse_rational};
use toto_core::logic::{models, parse_sentence, Formula};
use toto_core::perm::{enumerate_av231, Permutation};
use toto_core::sample::{Av231Sampler, TreeSampler};
use toto_core::series::{
    check_dlw_conditions, compute_coefficients, compute_scaled, eval_jacobian_at, jacobian, spectral_radius,
    support_period, DlwOptions,
};
use toto_core::types::{verify_composition_exhaustive, TypeSystem};

use crate::config::{Caps, RunConfig};
use crate::error::{CliError, CliResult};
use crate::json::{
    type_graph_dot, DlwJson, EventSpecJson, LimitReportJson, SpectralJson, TypeSystemJson,
};
use crate::output::Outputs;

#[derive(Debug, Parser)]
#[command(name = "toto", version, about = "First-order limit laws for uniform random 231-avoiding permutations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Directory receiving the outputs and the run configuration.
    #[arg(long, default_value = "toto-out")]
    pub out: PathBuf,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Quantifier depth of the logical types.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Largest size enumerated before saturation.
    #[arg(long = "seed-size", default_value_t = 8)]
    pub seed_size: usize,
    /// Largest permutation handed to the fingerprint engine.
    #[arg(long = "fingerprint-cap", default_value_t = Caps::default().fingerprint_max_size)]
    pub fingerprint_cap: usize,
    /// Largest number of types before giving up.
    #[arg(long = "max-types", default_value_t = Caps::default().max_types)]
    pub max_types: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Method {
    Remy,
    Split,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List Av_n(231) in lexicographic order.
    Enumerate {
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Draw uniform elements of Av_n(231).
    Sample {
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value = "remy")]
        method: Method,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a sentence on a permutation given as `2,3,1`.
    Check {
        /// Sentence file, or `-` for standard input.
        sentence: PathBuf,
        perm: String,
    },
    /// Build the type system and write it as JSON and DOT.
    Types {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Write the exact coefficients c_t(n) as CSV.
    Coeffs {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long = "N", visible_alias = "order", default_value_t = 200)]
        order: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Composition lemma, column sums, spectral data and analytic hypotheses.
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        /// Order of the exact table.
        #[arg(long = "N", visible_alias = "order", default_value_t = 1000)]
        order: usize,
        /// Order of the floating table used at z = 1/4.
        #[arg(long = "scaled-N", default_value_t = 4000)]
        scaled_order: usize,
        /// Largest component size in the exhaustive composition check.
        #[arg(long = "lemma-size", default_value_t = 4)]
        lemma_size: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Limiting probability of a sentence.
    Limit {
        /// Sentence file, or `-` for standard input.
        sentence: PathBuf,
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long = "N", visible_alias = "order", default_value_t = 1000)]
        order: usize,
        /// Monte-Carlo check: size and number of samples.
        #[arg(long, num_args = 2, value_names = ["N", "SAMPLES"])]
        mc: Option<Vec<usize>>,
        #[command(flatten)]
        common: Common,
    },
    /// Event with a prescribed limiting probability, and its sentence.
    Kakeya {
        /// Target in [0, 1]: decimal, `a/b` or scientific notation.
        target: String,
        #[arg(long, default_value = "1e-4")]
        epsilon: String,
        #[command(flatten)]
        common: Common,
    },
    /// Summarize the JSON outputs found in the output directory.
    Report {
        #[command(flatten)]
        common: Common,
    },
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;
pub const EXIT_FINDING: i32 = 3;

/// Result of a completed command; findings are failed verification checks.
#[derive(Debug, Default)]
pub struct Outcome {
    pub findings: Vec<String>,
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli.command) {
        Ok(o) if o.findings.is_empty() => EXIT_OK,
        Ok(o) => {
            for f in &o.findings {
                eprintln!("finding: {f}");
            }
            EXIT_FINDING
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Worker count from `TOTO_THREADS`, else the available parallelism.
pub fn thread_cap() -> CliResult<usize> {
    match std::env::var("TOTO_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Usage(format!("TOTO_THREADS must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn read_sentence(path: &Path) -> CliResult<Formula> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::io("<stdin>", e))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?
    };
    Ok(parse_sentence(&text)?)
}

fn config(command: &str, system: Option<&SystemArgs>, order: usize, common: &Common) -> CliResult<RunConfig> {
    let mut caps = Caps::default();
    let (k, seed_size) = match system {
        Some(s) => {
            caps.fingerprint_max_size = s.fingerprint_cap;
            caps.max_types = s.max_types;
            caps.fingerprint_max_order = caps.fingerprint_max_order.max(s.k);
            (s.k, s.seed_size)
        }
        None => (1, 1),
    };
    let cfg = RunConfig {
        command: command.into(),
        k,
        seed_size,
        order,
        caps,
        seed: common.seed,
        output_dir: common.out.display().to_string(),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn start(cfg: &RunConfig, common: &Common) -> CliResult<Outputs> {
    let mut out = Outputs::new(&common.out)?;
    out.write_json(&cfg.file_name(), cfg)?;
    Ok(out)
}

fn build(cfg: &RunConfig) -> CliResult<TypeSystem> {
    Ok(TypeSystem::build(cfg.k, cfg.build_options())?)
}

/// Deterministic shard count for Monte-Carlo; independent of the number of
/// workers so results do not depend on it.
const SHARDS: u64 = 8;

fn shard_seed(seed: u64, shard: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(shard)
}

/// Type histogram of `samples` uniform draws of size `n`, split into fixed
/// shards run on at most `thread_cap()` workers.
pub fn sharded_histogram(ts: &TypeSystem, n: usize, samples: usize, seed: u64) -> CliResult<Vec<u64>> {
    let workers = thread_cap()?.min(SHARDS as usize);
    let quota = |s: u64| samples / SHARDS as usize + usize::from((s as usize) < samples % SHARDS as usize);
    let shards: Vec<u64> = (0..SHARDS).collect();
    let parts: Vec<Vec<u64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = shards
            .chunks(shards.len().div_ceil(workers))
            .map(|chunk| {
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|&s| type_histogram(ts, n, quota(s), shard_seed(seed, s)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sampling worker panicked"))
            .collect()
    });
    let mut total = vec![0u64; ts.len()];
    for part in parts {
        for (t, c) in total.iter_mut().zip(part) {
            *t += c;
        }
    }
    Ok(total)
}

pub fn run(command: Command) -> CliResult<Outcome> {
    match command {
        Command::Enumerate { n, common } => {
            let cfg = config("enumerate", None, 1, &common)?;
            let perms = enumerate_av231(n)?;
            let mut out = start(&cfg, &common)?;
            let text: String = perms.iter().map(|p| format!("{p}\n")).collect();
            out.write("enumerate.txt", text.as_bytes())?;
            println!("{} permutations of size {n} avoid 231", perms.len());
            out.commit();
            Ok(Outcome::default())
        }
        Command::Sample {
            n,
            count,
            method,
            common,
        } => {
            let cfg = config("sample", None, 1, &common)?;
            let method = match method {
                Method::Remy => TreeSampler::Remy,
                Method::Split => TreeSampler::CatalanSplit,
            };
            let mut sampler = Av231Sampler::new(common.seed, method);
            let text: String = (0..count).map(|_| format!("{}\n", sampler.sample(n))).collect();
            let mut out = start(&cfg, &common)?;
            out.write("sample.txt", text.as_bytes())?;
            print!("{text}");
            out.commit();
            Ok(Outcome::default())
        }
        Command::Check { sentence, perm } => {
            let psi = read_sentence(&sentence)?;
            let sigma: Permutation = perm.parse()?;
            println!("{}", models(&sigma, &psi, &[])?);
            Ok(Outcome::default())
        }
        Command::Types { system, common } => {
            let cfg = config("types", Some(&system), 1, &common)?;
            let ts = build(&cfg)?;
            let mut out = start(&cfg, &common)?;
            out.write_json("types.json", &TypeSystemJson::new(&ts, cfg.k))?;
            out.write("types.dot", type_graph_dot(&ts).as_bytes())?;
            println!(
                "k = {}: {} types, {} star, {} bullet",
                cfg.k,
                ts.len(),
                ts.star().len(),
                ts.bullet().len()
            );
            out.commit();
            Ok(Outcome::default())
        }
        Command::Coeffs { system, order, common } => {
            let cfg = config("coeffs", Some(&system), order, &common)?;
            let ts = build(&cfg)?;
            let table = compute_coefficients(&ts, order);
            let mut csv = String::from("n");
            for t in ts.ids() {
                csv.push_str(&format!(",t{}", t.0));
            }
            csv.push('\n');
            for n in 0..=order {
                csv.push_str(&n.to_string());
                for t in ts.ids() {
                    csv.push(',');
                    csv.push_str(&table.get(t, n).to_string());
                }
                csv.push('\n');
            }
            let mut out = start(&cfg, &common)?;
            out.write("coeffs.csv", csv.as_bytes())?;
            println!("wrote c_t(n) for {} types and n <= {order}", ts.len());
            out.commit();
            Ok(Outcome::default())
        }
        Command::Verify {
            system,
            order,
            scaled_order,
            lemma_size,
            common,
        } => verify(&system, order, scaled_order, lemma_size, &common),
        Command::Limit {
            sentence,
            system,
            order,
            mc,
            common,
        } => {
            let cfg = config("limit", Some(&system), order, &common)?;
            let psi = read_sentence(&sentence)?;
            let ts = build(&cfg)?;
            let table = compute_coefficients(&ts, order);
            let mut report = limiting_probability(&ts, &table, &psi)?;
            if let Some(v) = mc {
                let (n, samples) = (v[0], v[1]);
                let counts = sharded_histogram(&ts, n, samples, cfg.seed)?;
                report.monte_carlo = Some(frequency_of(&counts, n, &report.estimate.types));
            }
            let json = LimitReportJson::new(&report, order);
            let mut out = start(&cfg, &common)?;
            out.write_json("limit.json", &json)?;
            println!(
                "limit {:.6} ± {:.1e} ({})",
                json.limit, json.tolerance, json.classification
            );
            if let Some(m) = json.monte_carlo {
                println!("empirical {:.6} ± {:.1e} at n = {}", m.empirical, m.stderr, m.n);
            }
            out.commit();
            Ok(Outcome::default())
        }
        Command::Kakeya {
            target,
            epsilon,
            common,
        } => {
            let cfg = config("kakeya", None, 1, &common)?;
            let t = parse_rational(&target)?;
            let eps = parse_rational(&epsilon)?;
            let spec = greedy_subsum(&t, &eps)?;
            let psi = emit_event_sentence(&spec);
            let json = EventSpecJson::new(&spec, &target, &epsilon, &psi);
            let mut out = start(&cfg, &common)?;
            out.write_json("kakeya.json", &json)?;
            out.write("kakeya.sentence", format!("{psi}\n").as_bytes())?;
            println!("exact limit {} (target {target}, epsilon {epsilon})", json.limit);
            out.commit();
            Ok(Outcome::default())
        }
        Command::Report { common } => report(&common),
    }
}

#[derive(Debug, Serialize)]
struct VerifyJson {
    k: usize,
    #[serde(rename = "N")]
    order: usize,
    scaled_order: usize,
    num_types: usize,
    star: usize,
    bullet: usize,
    empty_type_bullet: bool,
    composition: CompositionJson,
    column_sums: ColumnSumsJson,
    spectral: SpectralPair,
    dlw: Vec<DlwJson>,
    aperiodicity: Vec<PeriodJson>,
}

#[derive(Debug, Serialize)]
struct CompositionJson {
    max_size: usize,
    checked: usize,
    violations: usize,
}

#[derive(Debug, Serialize)]
struct ColumnSumsJson {
    checked: usize,
    mismatches: usize,
    /// Columns of `M(1/4)` from the floating table sum to `1 - tail`.
    tail: f64,
}

#[derive(Debug, Serialize)]
struct SpectralPair {
    full: SpectralJson,
    bullet: SpectralJson,
}

#[derive(Debug, Serialize)]
struct PeriodJson {
    t: u32,
    period: usize,
}

fn verify(system: &SystemArgs, order: usize, scaled_order: usize, lemma_size: usize, common: &Common) -> CliResult<Outcome> {
    let cfg = config("verify", Some(system), order, common)?;
    let mut ts = build(&cfg)?;
    let mut findings = Vec::new();

    let lemma = verify_composition_exhaustive(&mut ts, lemma_size)?;
    if !lemma.passed() {
        findings.push(format!("{} composition violations", lemma.violations.len()));
    }
    let empty_bullet = !ts.is_star(ts.empty_type());
    if !empty_bullet {
        findings.push("the empty type is star".into());
    }

    let table = compute_coefficients(&ts, order);
    let cols = jacobian(&ts, &table).check_column_sums();
    if !cols.passed() {
        findings.push(format!("{} Jacobian column-sum mismatches", cols.mismatches.len()));
    }

    let scaled = compute_scaled(&ts, scaled_order);
    let m = eval_jacobian_at(&ts, &scaled, 0.25)?;
    let full = spectral_radius(&m.entries)?;
    let bullet = spectral_radius(&m.restrict(&ts.bullet()))?;
    if !(bullet.radius < full.radius && full.radius <= 1.0 + 1e-12) {
        findings.push(format!(
            "spectral radii out of order: bullet {} full {}",
            bullet.radius, full.radius
        ));
    }
    if !(full.converged && bullet.converged) {
        findings.push("power iteration hit its cap".into());
    }

    let dlw = check_dlw_conditions(&ts, &table, &scaled, DlwOptions::default());
    for c in dlw.checks.iter().filter(|c| !c.pass) {
        findings.push(format!("condition ({}) failed: {}", c.condition, c.detail));
    }
    let aperiodicity: Vec<PeriodJson> = ts
        .star()
        .iter()
        .map(|&t| PeriodJson {
            t: t.0,
            period: support_period(&table, t),
        })
        .collect();

    let json = VerifyJson {
        k: cfg.k,
        order,
        scaled_order,
        num_types: ts.len(),
        star: ts.star().len(),
        bullet: ts.bullet().len(),
        empty_type_bullet: empty_bullet,
        composition: CompositionJson {
            max_size: lemma_size,
            checked: lemma.checked,
            violations: lemma.violations.len(),
        },
        column_sums: ColumnSumsJson {
            checked: cols.checked,
            mismatches: cols.mismatches.len(),
            tail: m.tail,
        },
        spectral: SpectralPair {
            full: full.into(),
            bullet: bullet.into(),
        },
        dlw: dlw.checks.iter().map(DlwJson::from).collect(),
        aperiodicity,
    };
    let mut out = start(&cfg, common)?;
    out.write_json("verify.json", &json)?;
    println!(
        "k = {}: {} types ({} star); SR(M(1/4)) = {:.6}, SR(M•(1/4)) = {:.6}",
        cfg.k,
        ts.len(),
        json.star,
        full.radius,
        bullet.radius
    );
    for c in &dlw.checks {
        println!("  ({}) {}: {}", c.condition, if c.pass { "pass" } else { "FAIL" }, c.detail);
    }
    out.commit();
    Ok(Outcome { findings })
}

#[derive(Debug, Serialize)]
struct ReportEntry {
    file: String,
    summary: String,
}

fn summarize(name: &str, v: &serde_json::Value) -> Option<String> {
    let get = |k: &str| v.get(k).map(|x| x.to_string()).unwrap_or_default();
    Some(match name {
        "types.json" => format!(
            "k = {}: {} types, {} star",
            get("k"),
            v["types"].as_array()?.len(),
            v["star"].as_array()?.len()
        ),
        "verify.json" => {
            let pass = v["dlw"].as_array()?.iter().all(|c| c["pass"] == true)
                && v["composition"]["violations"] == 0
                && v["column_sums"]["mismatches"] == 0;
            format!(
                "k = {}: {} ; SR full {} bullet {}",
                get("k"),
                if pass { "all checks pass" } else { "findings present" },
                v["spectral"]["full"]["radius"],
                v["spectral"]["bullet"]["radius"]
            )
        }
        "limit.json" => format!(
            "{} -> {} ({})",
            v["sentence"].as_str()?,
            get("limit"),
            v["classification"].as_str()?
        ),
        "kakeya.json" => format!("target {} -> exact limit {}", v["target"].as_str()?, v["limit"].as_str()?),
        _ => return None,
    })
}

fn report(common: &Common) -> CliResult<Outcome> {
    let cfg = config("report", None, 1, common)?;
    let dir = &common.out;
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".json") && !n.ends_with(".config.json") && n != "report.json")
        .collect();
    names.sort();
    let mut entries = Vec::new();
    for name in names {
        let path = dir.join(&name);
        let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        if let Some(summary) = summarize(&name, &value) {
            println!("{name}: {summary}");
            entries.push(ReportEntry { file: name, summary });
        }
    }
    let mut out = start(&cfg, common)?;
    out.write_json("report.json", &entries)?;
    out.commit();
    Ok(Outcome::default())
}
