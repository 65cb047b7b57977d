//! Certificates for `ind(S) = 1`.
//!
//! A certificate is a unit `m` with `sum |m x_i|_n = n`. The searches here
//! work on a normal form `(a, b, c)` and its sequence `(1, c, n-b, n-a)`:
//!
//! * interval multiplier: `k n / c <= m <= k n / b`, `m` a unit, `m a < n`
//!   and `1 <= k <= b`; then the four scaled terms are `m`, `mc - kn`,
//!   `kn - mb` and `n - ma`, which add up to `n`.
//! * majority multiplier: a unit `M <= n/2` for which two of
//!   `|Ma|_n > n/2`, `|Mb|_n > n/2`, `|Mc|_n < n/2` hold, so three of the
//!   four scaled terms are below `n/2`.
//! * half interval: for `s = floor(b/a) >= 2`, a unit in
//!   `[(2s-2t-1) n / 2b, (s-t) n / b]` is a majority multiplier.
//! * `a = 2`: an explicit construction through the multiplier `(n-1)/2`.
//!
//! Majority multipliers are turned into certificates by [`finalize`].
//! [`find_certificate`] chains everything, then subgroup reduction, then a
//! brute-force unit scan.
//!
//! All interval endpoints are compared by cross-multiplication in `u128`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::normalform::{classify, NormalForm, ReductionTag};
use crate::reduce::{lift_witness, try_subgroup_reduce};
use crate::zseq::{IndexResult, Sequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Derivation {
    Forced,
    SmallA,
    Interval,
    HalfInterval,
    Majority,
    Lifted,
    BruteForce,
}

impl Derivation {
    pub const ALL: [Derivation; 7] = [
        Derivation::Forced,
        Derivation::SmallA,
        Derivation::Interval,
        Derivation::HalfInterval,
        Derivation::Majority,
        Derivation::Lifted,
        Derivation::BruteForce,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Derivation::Forced => "forced",
            Derivation::SmallA => "small_a",
            Derivation::Interval => "interval",
            Derivation::HalfInterval => "half_interval",
            Derivation::Majority => "majority",
            Derivation::Lifted => "lifted",
            Derivation::BruteForce => "brute_force",
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A verified witness of `ind(S) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Certificate {
    multiplier: u64,
    /// The `k` of an interval multiplier, relative to the normal form searched.
    interval_index: Option<u64>,
    derivation: Derivation,
}

impl Certificate {
    /// Checks `gcd(m, n) = 1` and `weight(S, m) = n`.
    pub fn new(s: &Sequence, m: u64, derivation: Derivation) -> Result<Self> {
        let n = s.modulus().get();
        let weight = s.weight(m)?;
        if weight != n {
            return Err(Error::NotACertificate { m, weight, n });
        }
        Ok(Certificate {
            multiplier: s.modulus().reduce(m),
            interval_index: None,
            derivation,
        })
    }

    /// Interval certificate for the normal-form sequence, with every side
    /// condition checked.
    pub fn interval(nf: &NormalForm, k: u64, m: u64) -> Result<Self> {
        let n = nf.modulus().get() as u128;
        let (a, b, c) = (nf.a() as u128, nf.b() as u128, nf.c() as u128);
        let (k128, m128) = (k as u128, m as u128);
        let ok = k >= 1
            && k128 <= b
            && k128 * n <= m128 * c
            && m128 * b <= k128 * n
            && m128 * a < n;
        if !ok {
            return Err(Error::NotApplicable("interval conditions do not hold"));
        }
        let mut cert = Certificate::new(&nf.sequence(), m, Derivation::Interval)?;
        cert.interval_index = Some(k);
        Ok(cert)
    }

    pub fn multiplier(&self) -> u64 {
        self.multiplier
    }

    pub fn interval_index(&self) -> Option<u64> {
        self.interval_index
    }

    pub fn derivation(&self) -> Derivation {
        self.derivation
    }

    /// Transfers a certificate of `scaling * S` to `S`.
    pub fn unscale(self, original: &Sequence, scaling: u64) -> Result<Self> {
        let n = original.modulus();
        let m = n.mul(self.multiplier, n.reduce(scaling));
        let mut out = Certificate::new(original, m, self.derivation)?;
        out.interval_index = self.interval_index;
        Ok(out)
    }

    pub fn verify(&self, s: &Sequence) -> bool {
        verify_certificate(s, self.multiplier)
    }
}

pub fn verify_certificate(s: &Sequence, m: u64) -> bool {
    s.weight(m).is_ok_and(|w| w == s.modulus().get())
}

/// `s = floor(b/a)` and the largest interval index `k1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShapeStats {
    pub s: u64,
    pub k1: u64,
}

#[inline]
fn ceil_div(p: u128, q: u128) -> u128 {
    p.div_ceil(q)
}

/// Whether `[k n / c, k n / b)` contains an integer.
fn half_open_nonempty(nf: &NormalForm, k: u64) -> bool {
    let kn = k as u128 * nf.modulus().get() as u128;
    ceil_div(kn, nf.c() as u128) * (nf.b() as u128) < kn
}

pub fn shape_stats(nf: &NormalForm) -> ShapeStats {
    let s = nf.b() / nf.a();
    // k = b always qualifies as "nonempty", and k = 0 gives the empty [0, 0),
    // so some k in [1, b] follows an empty interval with a nonempty one.
    let k1 = (1..=nf.b())
        .rev()
        .find(|&k| !half_open_nonempty(nf, k - 1) && half_open_nonempty(nf, k))
        .expect("an empty-to-nonempty transition exists in [1, b]");
    ShapeStats { s, k1 }
}

/// First `(k, m)`, `k` ascending then `m` ascending, meeting the interval
/// conditions.
pub fn search_interval(nf: &NormalForm) -> Option<Certificate> {
    let n = nf.modulus();
    let nv = nf.modulus().get() as u128;
    let (a, b, c) = (nf.a() as u128, nf.b() as u128, nf.c() as u128);
    // m a < n  <=>  m <= (n-1)/a
    let m_cap = (nv - 1) / a;
    for k in 1..=nf.b() {
        let kn = k as u128 * nv;
        let lo = ceil_div(kn, c);
        if lo > m_cap {
            break;
        }
        let hi = (kn / b).min(m_cap);
        for m in lo..=hi {
            let m = m as u64;
            if n.is_unit(m) {
                if let Ok(cert) = Certificate::interval(nf, k, m) {
                    return Some(cert);
                }
            }
        }
    }
    None
}

/// Smallest unit `M <= n/2` satisfying at least two of the three inequalities.
pub fn search_majority(nf: &NormalForm) -> Option<u64> {
    let n = nf.modulus();
    let nv = n.get();
    (1..=nv / 2).find(|&m| {
        if !n.is_unit(m) {
            return false;
        }
        let hits = (2 * n.mul(m, nf.a()) > nv) as u8
            + (2 * n.mul(m, nf.b()) > nv) as u8
            + (2 * n.mul(m, nf.c()) < nv) as u8;
        hits >= 2
    })
}

/// First unit in the closed intervals `[(2s-2t-1) n / 2b, (s-t) n / b]`,
/// `t = 0, 1, ..., floor(s/2) - 1`. Requires `s >= 2`.
pub fn search_half_interval(nf: &NormalForm) -> Result<Option<u64>> {
    let s = nf.b() / nf.a();
    if s < 2 {
        return Err(Error::NotApplicable("half-interval search needs floor(b/a) >= 2"));
    }
    let n = nf.modulus();
    let nv = n.get() as u128;
    let b = nf.b() as u128;
    for t in 0..s / 2 {
        let st = (s - t) as u128;
        let lo = ceil_div((2 * st - 1) * nv, 2 * b);
        let hi = st * nv / b;
        if let Some(m) = (lo..=hi).map(|m| m as u64).find(|&m| n.is_unit(m)) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Tries `M`, `(n-1)M`, `(n-2)M`, `2M` in turn.
pub fn finalize(s: &Sequence, big_m: u64, derivation: Derivation) -> Option<Certificate> {
    let n = s.modulus();
    let nv = n.get();
    let base = n.reduce(big_m);
    [1, nv - 1, nv - 2, 2]
        .into_iter()
        .map(|f| n.mul(f, base))
        .find_map(|m| Certificate::new(s, m, derivation).ok())
}

/// The explicit construction for `a = 2` (odd `n`).
///
/// Even `b = 2t`: `m = (n-1)/2`. Odd `b = 2t+1`: scaling by `(n-1)/2` turns
/// the sequence into the normal form `(t+1, (n-b)/2, (n-1)/2)`, which is
/// certified by the first unit `m'` among `2k'+1, 2k'+3, 2k'+5` with
/// `k' = ceil((n-b)/2b)`; the result is `m' (n-1)/2`.
///
/// The odd-`b` step is only guaranteed for large `n`; when the chosen `m'`
/// fails, [`Error::ConstructionFailed`] is returned.
pub fn small_a_certificate(nf: &NormalForm) -> Result<Certificate> {
    if nf.a() != 2 {
        return Err(Error::NotApplicable("construction needs a = 2"));
    }
    let n = nf.modulus();
    let nv = n.get();
    if nv % 2 == 0 {
        return Err(Error::NotApplicable("construction needs odd n"));
    }
    let s = nf.sequence();
    let half = (nv - 1) / 2;
    let b = nf.b();
    if b % 2 == 0 {
        return Certificate::new(&s, half, Derivation::SmallA)
            .map_err(|_| Error::ConstructionFailed { m: half });
    }
    let inner = small_a_inner_form(nf).ok_or(Error::NotApplicable("no transformed normal form"))?;
    let k_prime = (nv - b).div_ceil(2 * b);
    let m_prime = [1, 3, 5]
        .into_iter()
        .map(|i| 2 * k_prime + i)
        .find(|&m| m < nv && n.is_unit(m))
        .ok_or(Error::NotApplicable("no unit among 2k'+1, 2k'+3, 2k'+5"))?;
    let composed = n.mul(m_prime, half);
    let inner_cert = Certificate::interval(&inner, (m_prime - 1) / 2, m_prime)
        .map_err(|_| Error::ConstructionFailed { m: composed })?;
    let mut cert = inner_cert
        .unscale(&s, half)
        .map_err(|_| Error::ConstructionFailed { m: composed })?;
    cert.derivation = Derivation::SmallA;
    cert.interval_index = None;
    Ok(cert)
}

/// The transformed normal form used by the odd-`b` branch of the `a = 2`
/// construction.
pub fn small_a_inner_form(nf: &NormalForm) -> Option<NormalForm> {
    let nv = nf.modulus().get();
    if nf.a() != 2 || nf.b() % 2 == 0 || nv % 2 == 0 {
        return None;
    }
    let t = (nf.b() - 1) / 2;
    NormalForm::new(nf.modulus(), t + 1, (nv - nf.b()) / 2, (nv - 1) / 2).ok()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Certified(Certificate),
    /// Brute-force index `>= 2`.
    Counterexample(IndexResult),
}

impl Verdict {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Certified(c) => Some(c),
            Verdict::Counterexample(_) => None,
        }
    }
}

/// One line of a pipeline trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub stage: &'static str,
    pub detail: String,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.stage, self.detail)
    }
}

struct Trace {
    steps: Option<Vec<Step>>,
    depth: usize,
}

impl Trace {
    fn note(&mut self, stage: &'static str, detail: impl FnOnce() -> String) {
        if let Some(steps) = &mut self.steps {
            let pad = "  ".repeat(self.depth);
            steps.push(Step {
                stage,
                detail: format!("{pad}{}", detail()),
            });
        }
    }
}

fn describe(r: &Option<Certificate>) -> String {
    match r {
        Some(c) => match c.interval_index {
            Some(k) => format!("hit m={} (k={k})", c.multiplier),
            None => format!("hit m={}", c.multiplier),
        },
        None => "miss".to_string(),
    }
}

/// The certificate searches for a normal form, cheapest first.
fn search_normal_form(nf: &NormalForm, trace: &mut Trace) -> Option<Certificate> {
    let s = nf.sequence();
    if nf.a() == 2 {
        match small_a_certificate(nf) {
            Ok(c) => {
                trace.note("small_a", || describe(&Some(c)));
                return Some(c);
            }
            Err(e) => trace.note("small_a", || format!("failed: {e}")),
        }
    }
    let r = search_interval(nf);
    trace.note("interval", || describe(&r));
    if r.is_some() {
        return r;
    }
    match search_half_interval(nf) {
        Ok(Some(big_m)) => {
            let r = finalize(&s, big_m, Derivation::HalfInterval);
            trace.note("half_interval", || format!("M={big_m}, {}", describe(&r)));
            if r.is_some() {
                return r;
            }
        }
        Ok(None) => trace.note("half_interval", || "no unit in any half interval".into()),
        Err(e) => trace.note("half_interval", || e.to_string()),
    }
    match search_majority(nf) {
        Some(big_m) => {
            let r = finalize(&s, big_m, Derivation::Majority);
            trace.note("majority", || format!("M={big_m}, {}", describe(&r)));
            r
        }
        None => {
            trace.note("majority", || "no qualifying M".into());
            None
        }
    }
}

fn pipeline(s: &Sequence, trace: &mut Trace) -> Result<Verdict> {
    if !s.is_minimal_zero_sum() {
        return Err(Error::NotMinimal);
    }
    let outcome = classify(s)?;
    trace.note("classify", || match outcome.scaling {
        Some(m) => format!("{:?} after scaling by {m}", outcome.tag),
        None => format!("{:?}", outcome.tag),
    });
    if let Some(m) = outcome.forced_multiplier() {
        let cert = Certificate::new(s, m, Derivation::Forced)?;
        trace.note("forced", || format!("m={m}"));
        return Ok(Verdict::Certified(cert));
    }
    if let (ReductionTag::Normal, Some(nf), Some(scaling)) =
        (outcome.tag, outcome.normal_form, outcome.scaling)
    {
        trace.note("normal_form", || {
            let st = shape_stats(&nf);
            format!("a={} b={} c={} s={} k1={}", nf.a(), nf.b(), nf.c(), st.s, st.k1)
        });
        if let Some(c) = search_normal_form(&nf, trace) {
            return Ok(Verdict::Certified(c.unscale(s, scaling)?));
        }
    }
    if let Some(red) = try_subgroup_reduce(s) {
        trace.note("reduce", || format!("d={}, reduced {}", red.d, red.reduced));
        trace.depth += 1;
        let inner = pipeline(&red.reduced, trace);
        trace.depth -= 1;
        if let Ok(Verdict::Certified(c)) = inner {
            if let Ok(lifted) = lift_witness(&red, c.multiplier) {
                trace.note("lift", || format!("m={}", lifted.multiplier));
                return Ok(Verdict::Certified(lifted));
            }
        }
    }
    if let Some(m) = s.first_unit_witness() {
        trace.note("brute_force", || format!("m={m}"));
        return Ok(Verdict::Certified(Certificate::new(s, m, Derivation::BruteForce)?));
    }
    let idx = s.index();
    trace.note("brute_force", || format!("no certificate, index {idx} (witness {})", idx.witness));
    Ok(Verdict::Counterexample(idx))
}

/// Runs the full pipeline on a minimal zero-sum sequence of length 4.
pub fn find_certificate(s: &Sequence) -> Result<Verdict> {
    pipeline(s, &mut Trace { steps: None, depth: 0 })
}

/// [`find_certificate`] with a record of every stage attempted.
pub fn find_certificate_traced(s: &Sequence) -> Result<(Verdict, Vec<Step>)> {
    let mut trace = Trace {
        steps: Some(Vec::new()),
        depth: 0,
    };
    let v = pipeline(s, &mut trace)?;
    Ok((v, trace.steps.unwrap_or_default()))
}
