//! `soldyn`: exact ergodicity and distality analysis for automorphisms of
//! tori and solenoids, with machine-checkable certificates.
//!
//! Exit codes: 0 success, 2 parse/usage error, 3 non-invertible generator,
//! 4 group not nilpotent, 5 group not ergodic, 6 search caps exhausted.
//! Set SOLDYN_LOG to any non-empty value for progress logging on stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};

use soldyn_core::autdyn::{analyze_auto, ergodic_distal_split, is_ergodic_auto};
use soldyn_core::cyclo::minkowski_bound;
use soldyn_core::ergfind::{find_ergodic_nilpotent, ErgFindError, SearchLimits};
use soldyn_core::examples::{gamma_plus_genset, golden_mean, tower_alpha};
use soldyn_core::groupdyn::{distal_series_group, vector_orbit, GenSet, Mode, OrbitResult};
use soldyn_core::matrix::{QVec, RatMatrix};
use soldyn_core::simulate::torus_orbit_run;

use soldyn_cli::input::{self, InputDoc};
use soldyn_cli::report::{self, Report};
use soldyn_cli::CliError;

fn verbose() -> bool {
    std::env::var("SOLDYN_LOG")
        .map(|v| !v.is_empty() && v != "0")
        .unwrap_or(false)
}

fn log(msg: &str) {
    if verbose() {
        eprintln!("soldyn: {msg}");
    }
}

#[derive(Parser)]
#[command(
    name = "soldyn",
    version,
    about = "Exact ergodicity/distality analysis of toral and solenoidal automorphism groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Emit the report as plain text (the default).
    #[arg(long, conflicts_with = "json")]
    text: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input documents (JSON).
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
    /// Cap for witness-orbit enumeration (default: Minkowski's bound B(r)).
    #[arg(long)]
    orbit_cap: Option<usize>,
    /// Process multiple input files with this many threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single automorphism: ergodicity, distality and splitting.
    AnalyzeAuto(AnalyzeArgs),
    /// Analyze a finitely generated group: W, structure series, certificates.
    AnalyzeGroup(AnalyzeArgs),
    /// Find an ergodic element of an ergodic nilpotent group.
    FindErgodic {
        file: PathBuf,
        /// Maximum word length searched per stage and in the fallback.
        #[arg(long, default_value_t = 4)]
        word_cap: usize,
        /// Maximum exponent tried in the power-combination step.
        #[arg(long, default_value_t = 8)]
        power_cap: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Ergodic-distal splitting of a single automorphism.
    Split {
        file: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Distal structure series of a group.
    Series {
        file: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit a named example family as an input document.
    Example {
        /// Family name: `tower` or `gamma-plus`.
        name: String,
        /// Tower dimension.
        #[arg(long)]
        k: Option<usize>,
        /// Base group for gamma-plus: `golden` or `doubling`.
        #[arg(long)]
        base: Option<String>,
        /// Translations for gamma-plus, e.g. `e1,e2` or `1:0,0:1`.
        #[arg(long)]
        translations: Option<String>,
        /// Generic integer parameters (tower: first entry is the dimension).
        #[arg(long, value_delimiter = ',')]
        params: Vec<i64>,
    },
    /// Floating-point torus-orbit statistics (heuristic cross-check only).
    Simulate {
        file: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        iters: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Start point, e.g. `0.1,0.2` (random from the seed if omitted).
        #[arg(long)]
        start: Option<String>,
        /// Also write the orbit points to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn read_doc(path: &Path) -> Result<InputDoc, CliError> {
    log(&format!("reading {}", path.display()));
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    InputDoc::from_json(&text)
}

fn single_generator(g: &GenSet) -> Result<&RatMatrix, CliError> {
    if g.gens().len() != 1 {
        return Err(CliError::Parse(format!(
            "expected exactly one generator, found {}",
            g.gens().len()
        )));
    }
    Ok(&g.gens()[0])
}

fn analyze_auto_report(path: &Path, orbit_cap: Option<usize>) -> Result<Report, CliError> {
    let doc = read_doc(path)?;
    let g = doc.to_genset()?;
    let m = single_generator(&g)?;
    log("running single-automorphism analysis");
    let verdict = analyze_auto(m);
    let mut rep = Report::new("analyze-auto");
    rep.input_file = Some(path.display().to_string());
    rep.caps.orbit_cap = Some(orbit_cap.unwrap_or(minkowski_bound(g.dim()) as usize));
    rep.auto_verdict = Some(report::auto_verdict_dto(&verdict));
    rep.split = Some(report::split_dto(&verdict.split));
    Ok(rep)
}

fn analyze_group_report(path: &Path, orbit_cap: Option<usize>) -> Result<Report, CliError> {
    let doc = read_doc(path)?;
    let g = doc.to_genset()?;
    log("running group analysis");
    let verdict = distal_series_group(&g);
    let mut rep = Report::new("analyze-group");
    rep.input_file = Some(path.display().to_string());
    let effective_cap = orbit_cap.unwrap_or(minkowski_bound(g.dim()) as usize);
    rep.caps.orbit_cap = Some(effective_cap);
    rep.group_verdict = Some(report::group_verdict_dto(&verdict));
    rep.series = Some(report::series_dto(&verdict.series));
    rep.certificates = report::certificate_dtos(&verdict);
    if !verdict.w.is_zero() {
        let chi = verdict.w.basis()[0].clone();
        match vector_orbit(&g, &chi, Some(effective_cap)) {
            OrbitResult::FiniteOrbit(orbit) => rep.witnesses.push(report::WitnessDto {
                character: input::vector_strings(&chi),
                orbit_size: orbit.len(),
            }),
            OrbitResult::Exceeded => rep.diagnostics.push(format!(
                "witness orbit exceeded the requested cap {effective_cap}"
            )),
        }
    }
    Ok(rep)
}

fn find_ergodic_report(path: &Path, word_cap: usize, power_cap: u64) -> Result<Report, CliError> {
    let doc = read_doc(path)?;
    let g = doc.to_genset()?;
    log("searching for an ergodic element");
    let limits = SearchLimits {
        word_cap,
        power_cap,
    };
    let result = find_ergodic_nilpotent(&g, &limits).map_err(|e| match e {
        ErgFindError::NotNilpotent(w) => CliError::NotNilpotent(w.to_string()),
        ErgFindError::NotErgodicGroup => {
            CliError::NotErgodic("no ergodic element can exist".to_string())
        }
        ErgFindError::CapsExhausted(diags) => CliError::CapsExhausted(diags),
    })?;
    debug_assert!(is_ergodic_auto(result.found.matrix()).ergodic);
    let mut rep = Report::new("find-ergodic");
    rep.input_file = Some(path.display().to_string());
    rep.caps.word_cap = Some(word_cap);
    rep.caps.power_cap = Some(power_cap);
    rep.found = Some(report::word_dto(&result.found, Some(&g)));
    rep.filtration = report::stage_dtos(&result, &g);
    rep.diagnostics = result.diagnostics.clone();
    Ok(rep)
}

fn split_report(path: &Path) -> Result<Report, CliError> {
    let doc = read_doc(path)?;
    let g = doc.to_genset()?;
    let m = single_generator(&g)?;
    let verdict = analyze_auto(m);
    let split = ergodic_distal_split(m);
    let mut rep = Report::new("split");
    rep.input_file = Some(path.display().to_string());
    rep.auto_verdict = Some(report::auto_verdict_dto(&verdict));
    rep.split = Some(report::split_dto(&split));
    Ok(rep)
}

fn series_report(path: &Path) -> Result<Report, CliError> {
    let doc = read_doc(path)?;
    let g = doc.to_genset()?;
    let verdict = distal_series_group(&g);
    let mut rep = Report::new("series");
    rep.input_file = Some(path.display().to_string());
    rep.group_verdict = Some(report::group_verdict_dto(&verdict));
    rep.series = Some(report::series_dto(&verdict.series));
    rep.certificates = report::certificate_dtos(&verdict);
    Ok(rep)
}

fn example_doc(
    name: &str,
    k: Option<usize>,
    base: Option<&str>,
    translations: Option<&str>,
    params: &[i64],
) -> Result<InputDoc, CliError> {
    match name {
        "tower" => {
            let k = k
                .or_else(|| params.first().map(|&p| p.max(0) as usize))
                .ok_or_else(|| CliError::Parse("tower requires --k or --params".into()))?;
            if k == 0 {
                return Err(CliError::Parse("tower dimension must be at least 1".into()));
            }
            let g = GenSet::new(Mode::Torus, vec![tower_alpha(k)], None)
                .expect("tower generators are valid");
            Ok(InputDoc::from_genset(&g))
        }
        "gamma-plus" => {
            let base_set = match base.unwrap_or("golden") {
                "golden" => GenSet::new(Mode::Torus, vec![golden_mean()], None).unwrap(),
                "doubling" => GenSet::solenoid(vec![RatMatrix::from_i64_rows(&[&[2]])]).unwrap(),
                other => {
                    return Err(CliError::Parse(format!("unknown base group {other:?}")));
                }
            };
            let n = base_set.dim();
            let ws: Vec<QVec> = match translations {
                Some(spec) => input::parse_translations(spec, n)?,
                None => (0..n).map(|i| QVec::unit(n, i)).collect(),
            };
            let g =
                gamma_plus_genset(&base_set, &ws).map_err(|e| CliError::Parse(e.to_string()))?;
            Ok(InputDoc::from_genset(&g))
        }
        other => Err(CliError::Parse(format!("unknown example {other:?}"))),
    }
}

fn simulate_report(
    path: &Path,
    iters: u64,
    seed: u64,
    start: Option<&str>,
    csv: Option<&Path>,
) -> Result<Report, CliError> {
    let doc = read_doc(path)?;
    let g = doc.to_genset()?;
    let m = single_generator(&g)?;
    let start_vals = start.map(input::parse_start).transpose()?;
    log("simulating torus orbit");
    let run = torus_orbit_run(m, start_vals.as_deref(), iters, seed, csv.is_some())
        .map_err(|e| CliError::Parse(e.to_string()))?;
    if let (Some(csv_path), Some(points)) = (csv, run.points.as_ref()) {
        let mut out = String::new();
        let r = m.dim();
        let header: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for p in points {
            let row: Vec<String> = p.iter().map(f64::to_string).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        std::fs::write(csv_path, out)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", csv_path.display())))?;
        log(&format!("orbit written to {}", csv_path.display()));
    }
    let mut rep = Report::new("simulate");
    rep.input_file = Some(path.display().to_string());
    rep.stats = Some(report::stats_dto(&run));
    Ok(rep)
}

/// Write to stdout, turning a closed pipe into a clean exit.
fn print_out(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("soldyn: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}

fn emit(rep: &Report, json: bool, compact: bool) {
    if json {
        if compact {
            print_out(&format!(
                "{}\n",
                serde_json::to_string(rep).expect("report serializes")
            ));
        } else {
            print_out(&format!("{}\n", rep.to_json()));
        }
    } else {
        print_out(&rep.render_text());
    }
}

/// Run one report builder per file, optionally in parallel, and print the
/// reports in input order (compact JSON lines when there are several
/// files). Stops at the first failure.
fn run_batch(
    files: &[PathBuf],
    jobs: usize,
    json: bool,
    build: impl Fn(&Path) -> Result<Report, CliError> + Sync,
) -> Result<(), CliError> {
    let jobs = jobs.max(1).min(files.len().max(1));
    let results: Vec<Option<Result<Report, CliError>>> = if jobs <= 1 || files.len() <= 1 {
        files.iter().map(|f| Some(build(f))).collect()
    } else {
        let slots: Mutex<Vec<Option<Result<Report, CliError>>>> =
            Mutex::new((0..files.len()).map(|_| None).collect());
        let next = std::sync::atomic::AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                    if i >= files.len() {
                        break;
                    }
                    let rep = build(&files[i]);
                    slots.lock().unwrap()[i] = Some(rep);
                });
            }
        });
        slots.into_inner().unwrap()
    };
    let compact = files.len() > 1;
    for r in results {
        let rep = r.expect("every slot filled")?;
        emit(&rep, json, compact);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::AnalyzeAuto(args) => run_batch(&args.files, args.jobs, args.output.json, |f| {
            analyze_auto_report(f, args.orbit_cap)
        }),
        Command::AnalyzeGroup(args) => run_batch(&args.files, args.jobs, args.output.json, |f| {
            analyze_group_report(f, args.orbit_cap)
        }),
        Command::FindErgodic {
            file,
            word_cap,
            power_cap,
            output,
        } => {
            let rep = find_ergodic_report(&file, word_cap, power_cap)?;
            emit(&rep, output.json, false);
            Ok(())
        }
        Command::Split { file, output } => {
            let rep = split_report(&file)?;
            emit(&rep, output.json, false);
            Ok(())
        }
        Command::Series { file, output } => {
            let rep = series_report(&file)?;
            emit(&rep, output.json, false);
            Ok(())
        }
        Command::Example {
            name,
            k,
            base,
            translations,
            params,
        } => {
            let doc = example_doc(&name, k, base.as_deref(), translations.as_deref(), &params)?;
            print_out(&format!("{}\n", doc.to_json()));
            Ok(())
        }
        Command::Simulate {
            file,
            iters,
            seed,
            start,
            csv,
            output,
        } => {
            let rep = simulate_report(&file, iters, seed, start.as_deref(), csv.as_deref())?;
            emit(&rep, output.json, false);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("soldyn: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
