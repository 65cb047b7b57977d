//! Classification of length-4 minimal zero-sum sequences.
//!
//! Three shapes have a multiplier that works outright: `nu = 1` (take 1),
//! `nu = 3` (take `n-1`), and for `nu = 2` either the three smallest terms
//! below `n/2` (take `n-2`) or the three largest above `n/2` (take 2). What
//! remains, once a unit coefficient has been scaled to 1, is the normal form
//! `(1, c, n-b, n-a)` with `1 + c = a + b` and `1 < a <= b < c < n/2`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modring::{gcd_u64, Modulus};
use crate::zseq::Sequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalForm {
    n: Modulus,
    a: u64,
    b: u64,
    c: u64,
}

impl NormalForm {
    pub fn new(n: Modulus, a: u64, b: u64, c: u64) -> Result<Self> {
        let bad = |reason| Error::InvalidNormalForm {
            n: n.get(),
            a,
            b,
            c,
            reason,
        };
        if 1 + c != a + b {
            return Err(bad("1 + c != a + b"));
        }
        if !(1 < a && a <= b && b < c) {
            return Err(bad("need 1 < a <= b < c"));
        }
        if 2 * c >= n.get() {
            return Err(bad("need c < n/2"));
        }
        Ok(NormalForm { n, a, b, c })
    }

    pub fn modulus(&self) -> Modulus {
        self.n
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    /// The sequence `(1, c, n-b, n-a)`.
    pub fn sequence(&self) -> Sequence {
        let n = self.n.get();
        Sequence::from_reduced(self.n, &[1, self.c, n - self.b, n - self.a])
    }

    /// Every valid normal form for `n`, ordered by `(a, b)`.
    pub fn all(n: Modulus) -> impl Iterator<Item = NormalForm> {
        let nv = n.get();
        (2..nv).flat_map(move |a| {
            (a..nv)
                .map(move |b| (b, a + b - 1))
                .take_while(move |&(_, c)| 2 * c < nv)
                .filter(move |&(b, c)| b < c)
                .map(move |(b, c)| NormalForm { n, a, b, c })
        })
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, a={}, b={}, c={})", self.n, self.a, self.b, self.c)
    }
}

pub fn normal_form_sequence(nf: &NormalForm) -> Sequence {
    nf.sequence()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionTag {
    Nu1,
    Nu3,
    AllSmall,
    AllBig,
    Normal,
    Opaque,
}

impl ReductionTag {
    /// Multiplier that certifies a tuple of this shape directly.
    fn base_multiplier(self, n: u64) -> Option<u64> {
        match self {
            ReductionTag::Nu1 => Some(1),
            ReductionTag::Nu3 => Some(n - 1),
            ReductionTag::AllSmall => Some(n - 2),
            ReductionTag::AllBig => Some(2),
            ReductionTag::Normal | ReductionTag::Opaque => None,
        }
    }
}

/// Outcome of [`classify`].
///
/// `scaling` is set when the shape was read off the copy scaled to contain 1;
/// the tag then describes that copy, and [`forced_multiplier`] is already
/// composed with the scaling so that it certifies the original sequence.
///
/// [`forced_multiplier`]: ReductionOutcome::forced_multiplier
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub tag: ReductionTag,
    pub scaling: Option<u64>,
    pub normal_form: Option<NormalForm>,
    forced: Option<u64>,
}

impl ReductionOutcome {
    pub fn forced_multiplier(&self) -> Option<u64> {
        self.forced
    }
}

/// Smallest unit coefficient `x`, the multiplier `x^{-1}` and the scaled copy.
pub fn to_unit_leading(s: &Sequence) -> Option<(u64, Sequence)> {
    let n = s.modulus();
    let x = s.coeffs().iter().copied().find(|&x| n.is_unit(x))?;
    let m = n.inv(x).ok()?;
    let scaled = s.scale(m).ok()?;
    Some((m, scaled))
}

/// The forced-multiplier ladder on a sorted zero-sum 4-tuple. A rung only
/// applies when its multiplier is a unit, so for even `n` the 2 and `n - 2`
/// rungs are skipped.
fn forced_shape(n: u64, xs: &[u64; 4]) -> Option<ReductionTag> {
    let tag = match xs.iter().sum::<u64>() / n {
        1 => ReductionTag::Nu1,
        3 => ReductionTag::Nu3,
        _ if 2 * xs[2] < n => ReductionTag::AllSmall,
        _ if 2 * xs[1] > n => ReductionTag::AllBig,
        _ => return None,
    };
    let m = tag.base_multiplier(n)?;
    (gcd_u64(m, n) == 1).then_some(tag)
}

/// True when a `nu = 2` tuple has `x_2` or `x_3` exactly at `n/2`.
pub fn touches_half(s: &Sequence) -> bool {
    let n = s.modulus().get();
    match s.quad() {
        Ok(xs) => s.sum() == 2 * n && (2 * xs[1] == n || 2 * xs[2] == n),
        Err(_) => false,
    }
}

pub fn classify(s: &Sequence) -> Result<ReductionOutcome> {
    let xs = s.quad()?;
    let nv = s.modulus().get();
    if !s.is_zero_sum() {
        return Err(Error::NotZeroSum { n: nv });
    }
    if let Some(tag) = forced_shape(nv, &xs) {
        return Ok(ReductionOutcome {
            tag,
            scaling: None,
            normal_form: None,
            forced: tag.base_multiplier(nv),
        });
    }
    let opaque = ReductionOutcome {
        tag: ReductionTag::Opaque,
        scaling: None,
        normal_form: None,
        forced: None,
    };
    let Some((m, scaled)) = to_unit_leading(s) else {
        return Ok(opaque);
    };
    let ys = scaled.quad()?;
    if let Some(tag) = forced_shape(nv, &ys) {
        let base = tag.base_multiplier(nv).expect("forced shape");
        return Ok(ReductionOutcome {
            tag,
            scaling: Some(m),
            normal_form: None,
            forced: Some(s.modulus().mul(base, m)),
        });
    }
    if 2 * ys[1] >= nv || 2 * ys[2] <= nv {
        return Ok(ReductionOutcome { scaling: Some(m), ..opaque });
    }
    debug_assert_eq!(ys[0], 1);
    // b < c is forced: x2 + x3 = 2n - 1 - x4 > n, so n - x3 < x2.
    let nf = NormalForm::new(s.modulus(), nv - ys[3], nv - ys[2], ys[1])?;
    Ok(ReductionOutcome {
        tag: ReductionTag::Normal,
        scaling: Some(m),
        normal_form: Some(nf),
        forced: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::iter_min_zero_sum4;

    fn m(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn seq(n: u64, xs: &[i64]) -> Sequence {
        Sequence::new(m(n), xs).unwrap()
    }

    #[test]
    fn unit_leading_examples() {
        assert_eq!(to_unit_leading(&seq(175, &[5, 77, 133, 135])), None);
        let (mu, s) = to_unit_leading(&seq(11, &[2, 6, 7, 7])).unwrap();
        assert_eq!(mu, 6);
        assert_eq!(s.coeffs(), &[1, 3, 9, 9]);
        let (mu, s) = to_unit_leading(&seq(25, &[1, 11, 18, 20])).unwrap();
        assert_eq!(mu, 1);
        assert_eq!(s.coeffs(), &[1, 11, 18, 20]);
    }

    #[test]
    fn classify_examples() {
        let s = seq(7, &[4, 5, 6, 6]);
        let r = classify(&s).unwrap();
        assert_eq!((r.tag, r.forced_multiplier()), (ReductionTag::Nu3, Some(6)));
        assert_eq!(s.weight(6), Ok(7));

        let s = seq(11, &[4, 5, 5, 8]);
        let r = classify(&s).unwrap();
        assert_eq!((r.tag, r.forced_multiplier()), (ReductionTag::AllSmall, Some(9)));
        assert_eq!(s.weight(9), Ok(11));

        let r = classify(&seq(25, &[1, 11, 18, 20])).unwrap();
        assert_eq!(r.tag, ReductionTag::Normal);
        let nf = r.normal_form.unwrap();
        assert_eq!((nf.a(), nf.b(), nf.c()), (5, 7, 11));

        let s = seq(11, &[2, 6, 7, 7]);
        let r = classify(&s).unwrap();
        assert_eq!((r.tag, r.forced_multiplier()), (ReductionTag::AllBig, Some(2)));
        assert_eq!(s.weight(2), Ok(11));

        let r = classify(&seq(175, &[5, 77, 133, 135])).unwrap();
        assert_eq!(r.tag, ReductionTag::Opaque);
        assert_eq!(r.forced_multiplier(), None);

        assert!(classify(&seq(7, &[1, 1, 1])).is_err());
        assert!(classify(&seq(7, &[1, 1, 1, 3])).is_err());
    }

    #[test]
    fn normal_form_sequences() {
        let nf = NormalForm::new(m(25), 5, 7, 11).unwrap();
        assert_eq!(nf.sequence().coeffs(), &[1, 11, 18, 20]);
        let nf = NormalForm::new(m(49), 3, 17, 19).unwrap();
        assert_eq!(normal_form_sequence(&nf).coeffs(), &[1, 19, 32, 46]);
        let nf = NormalForm::new(m(25), 2, 4, 5).unwrap();
        assert_eq!(nf.sequence().coeffs(), &[1, 5, 21, 23]);
    }

    #[test]
    fn invalid_normal_forms() {
        assert!(NormalForm::new(m(25), 1, 7, 7).is_err());
        assert!(NormalForm::new(m(25), 5, 7, 12).is_err());
        assert!(NormalForm::new(m(21), 5, 7, 11).is_err());
        assert!(NormalForm::new(m(25), 6, 5, 10).is_err());
    }

    #[test]
    fn forced_multipliers_certify() {
        for n in 3..=120 {
            for s in iter_min_zero_sum4(m(n)) {
                let r = classify(&s).unwrap();
                match r.forced_multiplier() {
                    Some(f) => assert_eq!(s.weight(f), Ok(n), "{s} {r:?}"),
                    None => assert!(matches!(r.tag, ReductionTag::Normal | ReductionTag::Opaque)),
                }
                let expect_forced = matches!(
                    r.tag,
                    ReductionTag::Nu1 | ReductionTag::Nu3 | ReductionTag::AllSmall | ReductionTag::AllBig
                );
                assert_eq!(expect_forced, r.forced_multiplier().is_some());
                if r.scaling.is_none() {
                    let base = r.tag.base_multiplier(n);
                    assert_eq!(base, r.forced_multiplier());
                }
                if let Some(nf) = r.normal_form {
                    assert_eq!(r.tag, ReductionTag::Normal);
                    assert_eq!(nf.sequence(), s.scale(r.scaling.unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn every_normal_form_is_minimal_and_round_trips() {
        for n in 5..=200 {
            for nf in NormalForm::all(m(n)) {
                let s = nf.sequence();
                assert!(s.is_minimal_zero_sum(), "{nf}");
                assert_eq!(s.nu(), Ok(2));
                let r = classify(&s).unwrap();
                assert_eq!(r.tag, ReductionTag::Normal, "{nf}");
                assert_eq!(r.scaling, Some(1));
                assert_eq!(r.normal_form, Some(nf));
            }
        }
    }

    #[test]
    fn all_enumerates_brute_force_set() {
        for n in [25u64, 26, 49] {
            let mut brute = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if let Ok(nf) = NormalForm::new(m(n), a, b, c) {
                            brute.push(nf);
                        }
                    }
                }
            }
            assert_eq!(NormalForm::all(m(n)).collect::<Vec<_>>(), brute);
        }
    }
}
