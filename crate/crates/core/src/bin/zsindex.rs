use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use zsindex::harness::{
    find_counterexample, verify_range, Filter, Mode, RunManifest, VerifyOptions,
    DEFAULT_FULL_BOUND, DEFAULT_SAMPLE_EVERY,
};
use zsindex::{find_certificate, find_certificate_traced, iter_min_zero_sum4, iter_orbit_reps};
use zsindex::{Modulus, Sequence, Verdict};

#[derive(Parser)]
#[command(name = "zsindex", version, about = "Index of minimal zero-sum sequences over Z_n")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Brute-force index of a sequence.
    Index {
        #[arg(long)]
        n: u64,
        /// Comma-separated coefficients, e.g. 1,3,5,6
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
    /// Certificate (or counterexample) for a minimal zero-sum sequence.
    Witness {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        /// Print the pipeline trace before the result.
        #[arg(long)]
        explain: bool,
    },
    /// List minimal zero-sum sequences of length 4.
    Enumerate {
        #[arg(long)]
        n: u64,
        /// One representative per unit orbit, followed by the orbit size.
        #[arg(long)]
        orbits: bool,
    },
    /// Verify every qualifying modulus in a range; writes JSON lines.
    Verify {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value = "coprime6")]
        filter: Filter,
        #[arg(long, default_value = "full")]
        mode: Mode,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<String>,
        /// Sampling period K for cross-checks.
        #[arg(long, default_value_t = DEFAULT_SAMPLE_EVERY)]
        sample_every: u64,
        /// Include wall-clock time per modulus (makes output non-deterministic).
        #[arg(long)]
        timings: bool,
        /// Allow full-mode runs past the default bound.
        #[arg(long)]
        extended: bool,
    },
    /// First index-2 sequence for n, or "none".
    Counterexample {
        #[arg(long)]
        n: u64,
    },
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<zsindex::Error> for Failure {
    fn from(e: zsindex::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_seq(n: Modulus, s: &str) -> Result<Sequence, Failure> {
    let xs = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("bad --seq {s:?}: {e}")))?;
    Ok(Sequence::new(n, &xs)?)
}

fn tuple(s: &Sequence) -> String {
    s.coeffs().iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn verdict_json(n: Modulus, s: &Sequence, v: &Verdict) -> serde_json::Value {
    match v {
        Verdict::Certified(c) => json!({
            "n": n.get(),
            "seq": s,
            "verdict": "certified",
            "multiplier": c.multiplier(),
            "derivation": c.derivation(),
            "interval_index": c.interval_index(),
        }),
        Verdict::Counterexample(idx) => json!({
            "n": n.get(),
            "seq": s,
            "verdict": "counterexample",
            "value": idx,
            "witness": idx.witness,
        }),
    }
}

/// `Ok(true)` when `verify` found a counterexample.
fn run(cmd: Cmd, out: &mut dyn Write) -> Result<bool, Failure> {
    match cmd {
        Cmd::Index { n, seq } => {
            let n = Modulus::new(n)?;
            let s = parse_seq(n, &seq)?;
            let idx = s.index();
            let line = json!({
                "n": n.get(),
                "seq": s,
                "value": idx,
                "witness": idx.witness,
                "weight": idx.weight,
            });
            writeln!(out, "{line}")?;
            Ok(false)
        }
        Cmd::Witness { n, seq, explain } => {
            let n = Modulus::new(n)?;
            let s = parse_seq(n, &seq)?;
            let verdict = if explain {
                let (v, steps) = find_certificate_traced(&s)?;
                for step in steps {
                    writeln!(out, "# {step}")?;
                }
                v
            } else {
                find_certificate(&s)?
            };
            writeln!(out, "{}", verdict_json(n, &s, &verdict))?;
            Ok(false)
        }
        Cmd::Enumerate { n, orbits } => {
            let n = Modulus::new(n)?;
            if orbits {
                for r in iter_orbit_reps(n) {
                    writeln!(out, "{} {}", tuple(&r.rep), r.orbit_size)?;
                }
            } else {
                for s in iter_min_zero_sum4(n) {
                    writeln!(out, "{}", tuple(&s))?;
                }
            }
            Ok(false)
        }
        Cmd::Verify {
            from,
            to,
            filter,
            mode,
            jobs,
            out: path,
            sample_every,
            timings,
            extended,
        } => {
            if from > to {
                return Err(Failure::Usage(format!("empty range {from}..={to}")));
            }
            if to > u64::from(u32::MAX) {
                return Err(Failure::Usage(format!("--to {to} exceeds the supported modulus range")));
            }
            if mode == Mode::Full && to > DEFAULT_FULL_BOUND && !extended {
                return Err(Failure::Usage(format!(
                    "full mode past n = {DEFAULT_FULL_BOUND} needs --extended (or use --mode orbits)"
                )));
            }
            if sample_every == 0 {
                return Err(Failure::Usage("--sample-every must be positive".into()));
            }
            let opts = VerifyOptions { mode, sample_every };
            let mut file;
            let sink: &mut dyn Write = match path {
                Some(p) => {
                    file = BufWriter::new(File::create(&p)?);
                    &mut file
                }
                None => out,
            };
            writeln!(sink, "{}", RunManifest::new(from, to, filter, opts).to_json_line())?;
            let mut found = false;
            for report in verify_range(from, to, filter, opts, jobs) {
                found |= !report.counterexamples.is_empty();
                writeln!(sink, "{}", report.to_json_line(timings))?;
            }
            sink.flush()?;
            Ok(found)
        }
        Cmd::Counterexample { n } => {
            let n = Modulus::new(n)?;
            match find_counterexample(n) {
                Some((s, idx)) => {
                    let line = json!({
                        "n": n.get(),
                        "seq": s,
                        "value": idx,
                        "witness": idx.witness,
                    });
                    writeln!(out, "{line}")?;
                    Ok(false)
                }
                None => {
                    writeln!(out, "none")?;
                    Ok(false)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.cmd, &mut out) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
