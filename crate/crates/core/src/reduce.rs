//! Reduction to a subgroup when every coefficient shares a factor with `n`.
//!
//! If `d = gcd(x_1, ..., x_4, n) > 1`, the sequence lives in the subgroup of
//! order `n/d` generated by `d g`, with coefficients `x_i / d`. Since
//! `|m d y|_n = d |m y|_{n/d}`, a certificate `m'` downstairs certifies every
//! `m ≡ m' (mod n/d)` upstairs; one of `m', m' + n/d, ..., m' + (d-1) n/d` is
//! a unit modulo `n`.

use crate::certify::{Certificate, Derivation};
use crate::error::{Error, Result};
use crate::modring::{gcd_u64, Modulus};
use crate::zseq::Sequence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupReduction {
    pub d: u64,
    pub reduced: Sequence,
    pub original_n: Modulus,
}

impl SubgroupReduction {
    /// The sequence this reduction came from.
    pub fn original(&self) -> Sequence {
        let coeffs: Vec<u64> = self.reduced.coeffs().iter().map(|&y| y * self.d).collect();
        Sequence::from_reduced(self.original_n, &coeffs)
    }
}

/// Full common divisor reduction; `None` when `d = 1` or `n/d < 3`.
pub fn try_subgroup_reduce(s: &Sequence) -> Option<SubgroupReduction> {
    let n = s.modulus().get();
    let d = s.coeffs().iter().fold(n, |g, &x| gcd_u64(g, x));
    if d == 1 {
        return None;
    }
    let sub = Modulus::new(n / d).ok()?;
    let coeffs: Vec<u64> = s.coeffs().iter().map(|&x| x / d).collect();
    Some(SubgroupReduction {
        d,
        reduced: Sequence::from_reduced(sub, &coeffs),
        original_n: s.modulus(),
    })
}

/// True when `n / gcd(x_1, ..., x_4, n) < 3`, the case [`try_subgroup_reduce`] refuses.
pub fn is_degenerate_subgroup(s: &Sequence) -> bool {
    let n = s.modulus().get();
    let d = s.coeffs().iter().fold(n, |g, &x| gcd_u64(g, x));
    d > 1 && n / d < 3
}

/// Lifts a certificate of the reduced sequence to the original one.
pub fn lift_witness(r: &SubgroupReduction, m_sub: u64) -> Result<Certificate> {
    let sub = r.reduced.modulus();
    if m_sub == 0 || !sub.is_unit(m_sub) {
        return Err(Error::InvalidReduction("witness is not a unit of the subgroup"));
    }
    if r.reduced.weight(m_sub)? != sub.get() {
        return Err(Error::InvalidReduction("witness does not certify the reduced sequence"));
    }
    let step = sub.get();
    let base = sub.reduce(m_sub) % step;
    let n = r.original_n;
    let m = (0..r.d)
        .map(|t| base + t * step)
        .find(|&m| n.is_unit(m))
        .ok_or(Error::InvalidReduction("no unit lift"))?;
    Certificate::new(&r.original(), m, Derivation::Lifted)
}

/// Exactly two coefficients with `gcd(x, n) = p` and two with `gcd(x, n) = q`.
pub fn has_mixed_divisor_split(s: &Sequence, p: u64, q: u64) -> bool {
    let n = s.modulus().get();
    let gs: Vec<u64> = s.coeffs().iter().map(|&x| gcd_u64(x, n)).collect();
    s.len() == 4
        && gs.iter().filter(|&&g| g == p).count() == 2
        && gs.iter().filter(|&&g| g == q).count() == 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::verify_certificate;
    use crate::enumerate::iter_min_zero_sum4;

    fn m(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn seq(n: u64, xs: &[i64]) -> Sequence {
        Sequence::new(m(n), xs).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let s = seq(35, &[5, 5, 5, 20]);
        let r = try_subgroup_reduce(&s).unwrap();
        assert_eq!(r.d, 5);
        assert_eq!(r.reduced, seq(7, &[1, 1, 1, 4]));
        assert!(s.is_minimal_zero_sum() && r.reduced.is_minimal_zero_sum());
        assert_eq!(r.original(), s);

        assert_eq!(try_subgroup_reduce(&seq(175, &[5, 77, 133, 135])), None);

        let s = seq(35, &[5, 5, 10, 15]);
        let r = try_subgroup_reduce(&s).unwrap();
        assert_eq!((r.d, r.reduced.clone()), (5, seq(7, &[1, 1, 2, 3])));
        assert!(s.is_minimal_zero_sum() && r.reduced.is_minimal_zero_sum());
    }

    #[test]
    fn lift_examples() {
        let r = try_subgroup_reduce(&seq(35, &[5, 5, 5, 20])).unwrap();
        let c = lift_witness(&r, 1).unwrap();
        assert_eq!((c.multiplier(), c.derivation()), (1, Derivation::Lifted));
        assert_eq!(seq(35, &[5, 5, 5, 20]).weight(1), Ok(35));

        let r = try_subgroup_reduce(&seq(35, &[5, 5, 10, 15])).unwrap();
        assert_eq!(lift_witness(&r, 1).unwrap().multiplier(), 1);
    }

    #[test]
    fn lift_needs_a_shift() {
        // a sequence over Z_11 certified by 5, embedded in Z_55
        let t = iter_min_zero_sum4(m(11))
            .find(|t| t.weight(5) == Ok(11))
            .expect("some sequence over Z_11 is certified by 5");
        let coeffs: Vec<i64> = t.coeffs().iter().map(|&y| 5 * y as i64).collect();
        let s = seq(55, &coeffs);
        let r = try_subgroup_reduce(&s).unwrap();
        assert_eq!((r.d, r.reduced.clone()), (5, t));
        let c = lift_witness(&r, 5).unwrap();
        assert_eq!(c.multiplier(), 16);
        assert!(verify_certificate(&s, 16));
    }

    #[test]
    fn lift_rejects_bad_witness() {
        let r = try_subgroup_reduce(&seq(35, &[5, 5, 5, 20])).unwrap();
        assert!(lift_witness(&r, 7).is_err());
        assert!(lift_witness(&r, 3).is_err());
    }

    #[test]
    fn minimality_transfers_both_ways() {
        for n in 6..=120u64 {
            for d in crate::modring::divisors(n) {
                if d == 1 || n / d < 3 {
                    continue;
                }
                let sub = n / d;
                // every sorted 4-tuple of multiples of d
                for a in 1..sub {
                    for b in a..sub {
                        for c in b..sub {
                            let x4 = (3 * sub - a - b - c) % sub;
                            if x4 < c {
                                continue;
                            }
                            let down = Sequence::from_reduced(m(sub), &[a, b, c, x4]);
                            let up = Sequence::from_reduced(m(n), &[a * d, b * d, c * d, x4 * d]);
                            assert_eq!(down.is_minimal_zero_sum(), up.is_minimal_zero_sum());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lifted_certificates_are_sound() {
        for n in 6..=120u64 {
            for s in iter_min_zero_sum4(m(n)) {
                assert!(!is_degenerate_subgroup(&s));
                let Some(r) = try_subgroup_reduce(&s) else { continue };
                assert!(r.reduced.is_minimal_zero_sum());
                if let Some(w) = r.reduced.first_unit_witness() {
                    let c = lift_witness(&r, w).unwrap();
                    assert!(verify_certificate(&s, c.multiplier()));
                } else {
                    assert!(!s.index().is_one());
                }
            }
        }
    }

    #[test]
    fn no_mixed_divisor_split_for_pq() {
        for (p, q) in [(5u64, 7u64), (5, 11), (7, 11), (5, 17), (7, 13), (5, 19)] {
            let n = p * q;
            assert!(iter_min_zero_sum4(m(n)).all(|s| !has_mixed_divisor_split(&s, p, q)));
        }
    }
}
