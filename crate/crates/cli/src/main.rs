mod input;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use dynbc::audit::Tracked;
use dynbc::stream::format_event;
use dynbc::UpdateEvent;

use input::Input;
use report::{Bench, Emit, Emitter};

#[derive(Parser, Debug)]
#[command(name = "dynbc", version, about = "Dynamic all-pairs shortest paths and betweenness under vertex updates")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply the stream and print the chosen output after the build and after every update.
    Run(RunArgs),
    /// Compare the engine with the brute-force oracle after every update.
    Verify(VerifyArgs),
    /// Print per-update work counters and measured density as TSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BcMode {
    Rational,
    Decimal,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value = "bc")]
    emit: Emit,
    #[arg(long, value_enum, default_value = "rational")]
    bc_mode: BcMode,
    /// Digits after the point in decimal mode.
    #[arg(long, default_value_t = 6)]
    precision: usize,
    /// Also check every state against the oracle.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    fault: Fault,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    input: Input,
    /// Largest graph for which the full path census is compared.
    #[arg(long, default_value_t = 10)]
    census_limit: usize,
    #[command(flatten)]
    fault: Fault,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    input: Input,
    /// Updates between oracle measurements of the dag density.
    #[arg(long, default_value_t = 10)]
    nu_every: usize,
}

#[derive(Args, Debug)]
struct Fault {
    /// Corrupt one stored path count right after this many updates.
    #[arg(long, hide = true)]
    inject_count_fault: Option<usize>,
}

impl Fault {
    fn apply(&self, tr: &mut Tracked<u64>, done: usize) {
        if self.inject_count_fault != Some(done) {
            return;
        }
        let n = tr.engine.n();
        let pairs = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|(x, y)| x != y);
        for (x, y) in pairs {
            if tr.engine.inject_count_fault(x.into(), y.into()) {
                return;
            }
        }
    }
}

/// Drives the engine through the build, forced resets and every event.
fn replay(
    input: &Input,
    fault: Option<&Fault>,
    mut visit: impl FnMut(&Tracked<u64>, usize, Option<&UpdateEvent<u64>>) -> Result<bool>,
) -> Result<bool> {
    let inst = input.load()?;
    let mut tr = Tracked::new(&inst.graph).map_err(anyhow::Error::msg)?;
    let mut stderr = io::stderr().lock();
    writeln!(stderr, "update\tstep\tlevel\treset\t{}", dynbc::Metrics::TSV_HEADER)?;
    let mut step = |tr: &mut Tracked<u64>, done: usize, ev: Option<&UpdateEvent<u64>>| -> Result<bool> {
        if input.reset_after(done) {
            tr.reset().map_err(anyhow::Error::msg)?;
            writeln!(io::stderr(), "# forced reset after update {done}")?;
        }
        if let Some(f) = fault {
            f.apply(tr, done);
        }
        visit(tr, done, ev)
    };
    if !step(&mut tr, 0, None)? {
        return Ok(false);
    }
    for (i, ev) in inst.events.iter().enumerate() {
        let rep = tr.try_update(ev).map_err(|m| anyhow::anyhow!("update {} ({}): {m}", i + 1, format_event(ev)))?;
        writeln!(stderr, "{}\t{}\t{}\t{}\t{}", i + 1, rep.step, rep.level, u8::from(rep.reset), rep.metrics)?;
        if !step(&mut tr, i + 1, Some(ev))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check(tr: &Tracked<u64>, census_limit: usize) -> Result<(), String> {
    use dynbc::audit::*;
    let e = &tr.engine;
    compare_paths(e)?;
    compare_bc(e)?;
    compare_dags(e)?;
    compare_invariants(e)?;
    if e.n() <= census_limit {
        compare_lsp_census(e)?;
        compare_level_census(e, &tr.history)?;
    }
    Ok(())
}

fn report_mismatch(done: usize, ev: Option<&UpdateEvent<u64>>, msg: &str) {
    match ev {
        Some(ev) => eprintln!("mismatch after update {done} ({}): {msg}", format_event(ev)),
        None => eprintln!("mismatch after the build: {msg}"),
    }
}

fn run(args: RunArgs) -> Result<bool> {
    let mut out = io::BufWriter::new(io::stdout().lock());
    let emitter = Emitter::new(args.emit, args.bc_mode, args.precision);
    let ok = replay(&args.input, Some(&args.fault), |tr, done, ev| {
        if args.verify {
            if let Err(m) = check(tr, 10) {
                report_mismatch(done, ev, &m);
                return Ok(false);
            }
        }
        emitter.emit(&mut out, &tr.engine, done)?;
        Ok(true)
    })?;
    out.flush()?;
    Ok(ok)
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let mut states = 0;
    let ok = replay(&args.input, Some(&args.fault), |tr, done, ev| {
        states += 1;
        match check(tr, args.census_limit) {
            Ok(()) => Ok(true),
            Err(m) => {
                report_mismatch(done, ev, &m);
                Ok(false)
            }
        }
    })?;
    if ok {
        println!("verified {states} states");
    }
    Ok(ok)
}

fn bench(args: BenchArgs) -> Result<bool> {
    let mut out = io::BufWriter::new(io::stdout().lock());
    let mut b = Bench::new(args.nu_every);
    writeln!(out, "{}", Bench::HEADER)?;
    replay(&args.input, None, |tr, done, _| {
        b.row(&mut out, &tr.engine, done)?;
        Ok(true)
    })?;
    b.summary(&mut out)?;
    out.flush()?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Command::Run(a) => run(a),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
