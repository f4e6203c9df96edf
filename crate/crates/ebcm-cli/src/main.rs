//! `ebcm` — event-by-event Mach-Zehnder simulator.
//!
//! Exit codes: 0 on success (including `--help`/`--version`), 1 for
//! usage errors and malformed input files (schedule DSL, record JSON),
//! 2 for runtime failures (IO, unrunnable schedules).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use ebcm_cli::record::z_display;
use ebcm_cli::{
    emit_run_record, emit_sweep_csv, parse_record_json, parse_schedule, Format, SweepRow,
};
use ebcm_core::{
    compare_runs, expected_counts, mzi_probabilities, run_schedule, Block, Detector, RunConfig,
    Schedule,
};

#[derive(Parser)]
#[command(
    name = "ebcm",
    version,
    about = "Event-by-event Mach-Zehnder interferometer simulator with a wave-theory oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a schedule file and write the run record.
    Run {
        /// Schedule file (see the DSL in the README).
        #[arg(long)]
        schedule: PathBuf,
        /// Output path for the run record.
        #[arg(long)]
        out: PathBuf,
        /// Record encoding.
        #[arg(long, value_enum)]
        format: FormatArg,
        /// Include the per-event click trace in the record.
        #[arg(long)]
        emit_clicks: bool,
    },
    /// Print wave-theory detector probabilities and expected counts.
    Oracle {
        /// Arm-0 phase shift in radians.
        #[arg(long)]
        phase0: f64,
        /// Arm-1 phase shift in radians.
        #[arg(long)]
        phase1: f64,
        /// Also print binomial count moments for n photons.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Run a phase grid and tabulate frequencies against sin²(Δφ/2).
    Sweep {
        /// Phase grid START:STOP:STEPS (radians, both ends included).
        #[arg(long)]
        phases: String,
        /// Data photons per grid point.
        #[arg(long)]
        events: u64,
        /// Clicks dropped from the front of each run (the transient).
        #[arg(long)]
        discard: u64,
        /// Memory decay factor, in [0, 1).
        #[arg(long)]
        gamma: f64,
        /// Base seed; grid point i runs with seed + i.
        #[arg(long)]
        seed: u64,
        /// Output path for the sweep table (CSV).
        #[arg(long)]
        out: PathBuf,
    },
    /// Two-sample chi-square test between two JSON run records.
    Compare {
        /// First run record (JSON).
        #[arg(long)]
        a: PathBuf,
        /// Second run record (JSON).
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(arg: FormatArg) -> Format {
        match arg {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

/// Failure classes mapped onto exit codes 1 (usage/parse) and 2 (runtime).
enum Failure {
    Usage(String),
    Runtime(String),
}

fn usage(message: impl Into<String>) -> Failure {
    Failure::Usage(message.into())
}

fn runtime(message: impl Into<String>) -> Failure {
    Failure::Runtime(message.into())
}

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| runtime(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| runtime(format!("cannot write {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let ok = matches!(
                err.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            );
            let _ = err.print();
            return if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Run {
            schedule,
            out,
            format,
            emit_clicks,
        } => cmd_run(&schedule, &out, format.into(), emit_clicks),
        Command::Oracle { phase0, phase1, n } => cmd_oracle(phase0, phase1, n),
        Command::Sweep {
            phases,
            events,
            discard,
            gamma,
            seed,
            out,
        } => cmd_sweep(&phases, events, discard, gamma, seed, &out),
        Command::Compare { a, b } => cmd_compare(&a, &b),
    }
}

fn cmd_run(schedule: &Path, out: &Path, format: Format, emit_clicks: bool) -> Result<(), Failure> {
    let bytes = read_file(schedule)?;
    let text = String::from_utf8(bytes).map_err(|_| {
        usage(format!(
            "{}: schedule file is not UTF-8",
            schedule.display()
        ))
    })?;
    let doc = parse_schedule(&text).map_err(|e| usage(format!("{}: {e}", schedule.display())))?;

    let mut config = RunConfig::new(doc.gamma, doc.phase0, doc.phase1, doc.seed);
    config.record_clicks = emit_clicks;
    let record = run_schedule(&config, &doc.blocks)
        .map_err(|e| runtime(format!("{}: {e}", schedule.display())))?;

    write_file(out, &emit_run_record(&record, format))?;
    let agg = &record.aggregates;
    println!(
        "N={} d0={} freq_d0={} z_d0={}",
        agg.total,
        agg.d0,
        agg.mean_freq_d0,
        z_display(agg.z_d0)
    );
    println!("wrote {}", out.display());
    Ok(())
}

fn cmd_oracle(phase0: f64, phase1: f64, n: Option<u64>) -> Result<(), Failure> {
    if !phase0.is_finite() || !phase1.is_finite() {
        return Err(usage("phases must be finite"));
    }
    let p = mzi_probabilities(phase0, phase1);
    println!("p0 = {}", p.p0);
    println!("p1 = {}", p.p1);
    if let Some(n) = n {
        let (mean0, sd0) = expected_counts(n, p.p0);
        let (mean1, sd1) = expected_counts(n, p.p1);
        println!("d0: mean = {mean0}, stddev = {sd0}");
        println!("d1: mean = {mean1}, stddev = {sd1}");
    }
    Ok(())
}

/// Parses `START:STOP:STEPS` into an inclusive linear grid.
fn parse_phase_grid(arg: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = arg.split(':').collect();
    let [start, stop, steps] = parts.as_slice() else {
        return Err(usage(format!(
            "--phases expects START:STOP:STEPS, got `{arg}`"
        )));
    };
    let start: f64 = start
        .parse()
        .map_err(|_| usage(format!("bad START `{start}` in --phases")))?;
    let stop: f64 = stop
        .parse()
        .map_err(|_| usage(format!("bad STOP `{stop}` in --phases")))?;
    let steps: usize = steps
        .parse()
        .map_err(|_| usage(format!("bad STEPS `{steps}` in --phases")))?;
    if !start.is_finite() || !stop.is_finite() {
        return Err(usage("--phases endpoints must be finite"));
    }
    if steps == 0 {
        return Err(usage("--phases STEPS must be >= 1"));
    }
    if steps == 1 {
        return Ok(vec![start]);
    }
    Ok((0..steps)
        .map(|i| start + (stop - start) * i as f64 / (steps - 1) as f64)
        .collect())
}

fn cmd_sweep(
    phases: &str,
    events: u64,
    discard: u64,
    gamma: f64,
    seed: u64,
    out: &Path,
) -> Result<(), Failure> {
    let grid = parse_phase_grid(phases)?;
    if events == 0 {
        return Err(usage("--events must be >= 1"));
    }
    if discard >= events {
        return Err(usage("--discard must be smaller than --events"));
    }
    if !(0.0..1.0).contains(&gamma) {
        return Err(usage("--gamma must be in [0, 1)"));
    }

    let mut rows = Vec::with_capacity(grid.len());
    let mut worst = 0.0f64;
    for (i, &dphi) in grid.iter().enumerate() {
        let mut config = RunConfig::new(gamma, dphi, 0.0, seed.wrapping_add(i as u64));
        config.record_clicks = true;
        let schedule = Schedule::new(vec![Block::data(events)]);
        let record = run_schedule(&config, &schedule)
            .map_err(|e| runtime(format!("sweep point {i}: {e}")))?;
        let clicks = record
            .registered_detectors()
            .expect("sweep runs always record clicks");
        let kept = &clicks[discard as usize..];
        let d0 = kept.iter().filter(|&&d| d == Detector::D0).count();
        let freq_d0 = d0 as f64 / kept.len() as f64;
        let wave_p0 = mzi_probabilities(dphi, 0.0).p0;
        let deviation = (freq_d0 - wave_p0).abs();
        worst = worst.max(deviation);
        rows.push(SweepRow {
            phase: dphi,
            freq_d0,
            wave_p0,
            deviation,
        });
    }

    write_file(out, &emit_sweep_csv(&rows))?;
    println!("{} points, max |freq_d0 - wave_p0| = {worst}", rows.len());
    println!("wrote {}", out.display());
    Ok(())
}

fn cmd_compare(a: &Path, b: &Path) -> Result<(), Failure> {
    let read_record = |path: &Path| -> Result<_, Failure> {
        let bytes = read_file(path)?;
        parse_record_json(&bytes).map_err(|e| usage(format!("{}: {e}", path.display())))
    };
    let da = read_record(a)?;
    let db = read_record(b)?;
    let test = compare_runs(
        (da.aggregates.d0, da.aggregates.d1),
        (db.aggregates.d0, db.aggregates.d1),
    )
    .map_err(|e| runtime(format!("{e}")))?;
    println!("chi2 = {}", test.chi2);
    println!("p_value = {}", test.p_value);
    Ok(())
}
