//! Exhaustive verification over ranges of moduli.
//!
//! Each modulus is an independent unit of work. [`verify_range`] hands moduli
//! to a pool of worker threads and re-orders the finished reports so they are
//! always emitted in ascending `n`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{mpsc, Arc};
use std::thread;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::certify::{find_certificate, Derivation, Verdict};
use crate::enumerate::{iter_min_zero_sum4, iter_orbit_reps};
use crate::modring::{distinct_prime_factors, gcd_u64, Modulus};
use crate::normalform::touches_half;
use crate::reduce::{has_mixed_divisor_split, is_degenerate_subgroup};
use crate::zseq::{IndexResult, Sequence};

pub const DEFAULT_SAMPLE_EVERY: u64 = 100;
/// Largest `to` accepted for full-mode runs without an explicit opt-in.
pub const DEFAULT_FULL_BOUND: u64 = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Every sequence goes through the pipeline.
    Full,
    /// One representative per unit orbit.
    Orbits,
    /// Only the deterministic 1-in-K sample, each one cross-checked.
    Sample,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "full" => Ok(Mode::Full),
            "orbits" => Ok(Mode::Orbits),
            "sample" => Ok(Mode::Sample),
            _ => Err(format!("unknown mode {s:?} (expected full, orbits or sample)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Orbits => "orbits",
            Mode::Sample => "sample",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    /// `gcd(n, 6) = 1`.
    Coprime6,
    /// `gcd(n, 6) = 1` and at most two distinct prime factors.
    TwoPrimePowers,
    All,
}

impl Filter {
    pub fn accepts(self, n: u64) -> bool {
        match self {
            Filter::Coprime6 => gcd_u64(n, 6) == 1,
            Filter::TwoPrimePowers => in_two_prime_power_domain(n),
            Filter::All => true,
        }
    }
}

impl FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "coprime6" => Ok(Filter::Coprime6),
            "two-prime-powers" | "two_prime_powers" => Ok(Filter::TwoPrimePowers),
            "all" => Ok(Filter::All),
            _ => Err(format!(
                "unknown filter {s:?} (expected coprime6, two-prime-powers or all)"
            )),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Filter::Coprime6 => "coprime6",
            Filter::TwoPrimePowers => "two-prime-powers",
            Filter::All => "all",
        })
    }
}

/// `n = p^α q^β` (or a prime power) with `gcd(n, 6) = 1`: the moduli where the
/// constructive searches are expected never to need the brute-force fallback.
pub fn in_two_prime_power_domain(n: u64) -> bool {
    gcd_u64(n, 6) == 1 && n > 1 && distinct_prime_factors(n).len() <= 2
}

/// `n = pq` for distinct primes `p < q`.
fn two_distinct_primes(n: u64) -> Option<(u64, u64)> {
    match distinct_prime_factors(n)[..] {
        [p, q] if p * q == n => Some((p, q)),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub mode: Mode,
    pub sample_every: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: Mode::Full,
            sample_every: DEFAULT_SAMPLE_EVERY,
        }
    }
}

impl VerifyOptions {
    pub fn new(mode: Mode) -> Self {
        VerifyOptions {
            mode,
            ..Default::default()
        }
    }
}

/// A sequence whose brute-force index is at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub seq: Sequence,
    pub value: IndexResult,
    pub witness: u64,
}

impl Counterexample {
    fn new(seq: Sequence, idx: IndexResult) -> Self {
        Counterexample {
            seq,
            value: idx,
            witness: idx.witness,
        }
    }
}

/// Counters for boundary cases that should never (or rarely) occur.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    /// `nu = 2` tuples with `x_2` or `x_3` exactly `n/2`.
    pub half_boundary: u64,
    /// Common divisor `d` with `n/d < 3`.
    pub degenerate_subgroup: u64,
    /// For `n = pq`: two coefficients of gcd `p` and two of gcd `q`.
    pub mixed_divisor_split: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: u64,
    pub mode: Mode,
    pub sequences_checked: u64,
    pub orbits_checked: u64,
    pub derivation_histogram: BTreeMap<Derivation, u64>,
    /// Brute-force fallbacks on unit-leading sequences in the two-prime-power domain.
    pub pipeline_gaps: u64,
    pub cross_checks: u64,
    pub cross_check_mismatches: u64,
    pub diagnostics: Diagnostics,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    fn empty(n: u64, mode: Mode) -> Self {
        VerificationReport {
            n,
            mode,
            sequences_checked: 0,
            orbits_checked: 0,
            derivation_histogram: Derivation::ALL.into_iter().map(|d| (d, 0)).collect(),
            pipeline_gaps: 0,
            cross_checks: 0,
            cross_check_mismatches: 0,
            diagnostics: Diagnostics::default(),
            counterexamples: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    /// One JSON object, keys in declaration order. Wall time is left out
    /// unless asked for, so that repeated runs compare byte for byte.
    pub fn to_json_line(&self, with_time: bool) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            #[serde(flatten)]
            report: &'a VerificationReport,
            #[serde(skip_serializing_if = "Option::is_none")]
            wall_time_ms: Option<u128>,
        }
        serde_json::to_string(&Line {
            report: self,
            wall_time_ms: with_time.then(|| self.wall_time.as_millis()),
        })
        .expect("report serialises")
    }
}

struct Checker {
    n: u64,
    domain: bool,
    pq: Option<(u64, u64)>,
    rng: ChaCha8Rng,
    sample_every: u64,
    report: VerificationReport,
}

impl Checker {
    fn new(n: Modulus, opts: VerifyOptions) -> Self {
        let nv = n.get();
        Checker {
            n: nv,
            domain: in_two_prime_power_domain(nv),
            pq: two_distinct_primes(nv),
            rng: ChaCha8Rng::seed_from_u64(nv),
            sample_every: opts.sample_every.max(1),
            report: VerificationReport::empty(nv, opts.mode),
        }
    }

    fn sampled(&mut self) -> bool {
        self.rng.gen_range(0..self.sample_every) == 0
    }

    fn check(&mut self, s: &Sequence, cross_check: bool) {
        let n = self.n;
        let r = &mut self.report;
        if touches_half(s) {
            r.diagnostics.half_boundary += 1;
        }
        if is_degenerate_subgroup(s) {
            r.diagnostics.degenerate_subgroup += 1;
        }
        if let Some((p, q)) = self.pq {
            if has_mixed_divisor_split(s, p, q) {
                r.diagnostics.mixed_divisor_split += 1;
            }
        }
        let verdict = find_certificate(s).expect("enumerated sequences are minimal zero-sum");
        let unit_leading = s.coeffs().iter().any(|&x| gcd_u64(x, n) == 1);
        let fell_back = match &verdict {
            Verdict::Certified(c) => {
                *r.derivation_histogram.entry(c.derivation()).or_default() += 1;
                c.derivation() == Derivation::BruteForce
            }
            Verdict::Counterexample(idx) => {
                r.counterexamples.push(Counterexample::new(s.clone(), *idx));
                true
            }
        };
        if fell_back && unit_leading && self.domain {
            r.pipeline_gaps += 1;
        }
        if cross_check {
            let idx = s.index();
            let agrees = match &verdict {
                Verdict::Certified(c) => idx.is_one() && c.verify(s),
                Verdict::Counterexample(got) => *got == idx,
            };
            r.cross_checks += 1;
            if !agrees {
                r.cross_check_mismatches += 1;
            }
        }
    }
}

pub fn verify_modulus(n: Modulus, opts: VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let mut ck = Checker::new(n, opts);
    match opts.mode {
        Mode::Full => {
            for s in iter_min_zero_sum4(n) {
                let sample = ck.sampled();
                ck.check(&s, sample);
                ck.report.sequences_checked += 1;
            }
        }
        Mode::Orbits => {
            for rep in iter_orbit_reps(n) {
                let sample = ck.sampled();
                ck.check(&rep.rep, sample);
                ck.report.orbits_checked += 1;
                ck.report.sequences_checked += rep.orbit_size;
            }
        }
        Mode::Sample => {
            for s in iter_min_zero_sum4(n) {
                if ck.sampled() {
                    ck.check(&s, true);
                    ck.report.sequences_checked += 1;
                }
            }
        }
    }
    let mut report = ck.report;
    report.wall_time = start.elapsed();
    report
}

/// Qualifying moduli in `[from, to]`, ascending.
pub fn moduli(from: u64, to: u64, filter: Filter) -> Vec<Modulus> {
    (from.max(Modulus::MIN)..=to)
        .filter(|&n| filter.accepts(n))
        .filter_map(|n| Modulus::new(n).ok())
        .collect()
}

/// Reports for every qualifying modulus, in ascending order of `n`.
pub struct RangeReports {
    rx: mpsc::Receiver<(usize, VerificationReport)>,
    pending: BTreeMap<usize, VerificationReport>,
    next: usize,
    total: usize,
    workers: Vec<thread::JoinHandle<()>>,
}

impl Iterator for RangeReports {
    type Item = VerificationReport;

    fn next(&mut self) -> Option<VerificationReport> {
        while self.next < self.total {
            if let Some(r) = self.pending.remove(&self.next) {
                self.next += 1;
                return Some(r);
            }
            match self.rx.recv() {
                Ok((i, r)) => {
                    self.pending.insert(i, r);
                }
                Err(_) => {
                    // every sender is gone but reports are missing: a worker panicked
                    for w in self.workers.drain(..) {
                        if let Err(e) = w.join() {
                            std::panic::resume_unwind(e);
                        }
                    }
                    return None;
                }
            }
        }
        None
    }
}

pub fn verify_range(
    from: u64,
    to: u64,
    filter: Filter,
    opts: VerifyOptions,
    jobs: usize,
) -> RangeReports {
    let work = Arc::new(moduli(from, to, filter));
    let total = work.len();
    let cursor = Arc::new(AtomicUsize::new(0));
    let (tx, rx) = mpsc::channel();
    let workers = (0..jobs.max(1).min(total.max(1)))
        .map(|_| {
            let (work, cursor, tx) = (Arc::clone(&work), Arc::clone(&cursor), tx.clone());
            thread::spawn(move || loop {
                let i = cursor.fetch_add(1, Ordering::Relaxed);
                let Some(&n) = work.get(i) else { break };
                if tx.send((i, verify_modulus(n, opts))).is_err() {
                    break;
                }
            })
        })
        .collect();
    RangeReports {
        rx,
        pending: BTreeMap::new(),
        next: 0,
        total,
        workers,
    }
}

/// First minimal zero-sum sequence of length 4, in lexicographic order,
/// whose index is at least 2.
pub fn find_counterexample(n: Modulus) -> Option<(Sequence, IndexResult)> {
    iter_min_zero_sum4(n)
        .find(|s| s.first_unit_witness().is_none())
        .map(|s| {
            let idx = s.index();
            (s, idx)
        })
}

/// Header line of a `verify` output file.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub from: u64,
    pub to: u64,
    pub filter: Filter,
    pub mode: Mode,
    pub sample_every: u64,
    pub sample_seed: &'static str,
}

impl RunManifest {
    pub fn new(from: u64, to: u64, filter: Filter, opts: VerifyOptions) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            from,
            to,
            filter,
            mode: opts.mode,
            sample_every: opts.sample_every,
            sample_seed: "modulus",
        }
    }

    pub fn to_json_line(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            manifest: &'a RunManifest,
        }
        serde_json::to_string(&Line { manifest: self }).expect("manifest serialises")
    }
}
