//! Exhaustive enumeration of length-4 minimal zero-sum sequences, and their
//! unit orbits.
//!
//! Orbit canonicalisation does not scan every unit. If `d` is the smallest
//! `gcd(x_i, n)` over the coefficients, then no scaled copy has a coefficient
//! below `d`, and the copies whose smallest coefficient equals `d` are exactly
//! those obtained from units `m` with `m x_i ≡ d` for a coefficient with
//! `gcd(x_i, n) = d`. There are at most `4d` such units, and both the
//! lexicographic minimum and the stabiliser live among them.

use serde::Serialize;

use crate::modring::{divisors, gcd_u64, Modulus};
use crate::zseq::Sequence;

/// Canonical (lexicographically least) member of a unit orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitRep {
    pub rep: Sequence,
    pub orbit_size: u64,
}

/// Lexicographic stream of every sorted length-4 minimal zero-sum sequence.
#[derive(Debug, Clone)]
pub struct MinZeroSum4 {
    n: Modulus,
    x: [u64; 3],
    done: bool,
}

impl MinZeroSum4 {
    pub fn new(n: Modulus) -> Self {
        MinZeroSum4 {
            n,
            x: [1, 1, 1],
            done: false,
        }
    }

    fn advance(&mut self) {
        let n = self.n.get();
        let [x1, x2, x3] = &mut self.x;
        *x3 += 1;
        if *x3 < n {
            return;
        }
        *x2 += 1;
        if *x2 < n {
            *x3 = *x2;
            return;
        }
        *x1 += 1;
        if *x1 < n {
            *x2 = *x1;
            *x3 = *x1;
            return;
        }
        self.done = true;
    }
}

impl Iterator for MinZeroSum4 {
    type Item = Sequence;

    fn next(&mut self) -> Option<Sequence> {
        let n = self.n.get();
        while !self.done {
            let [x1, x2, x3] = self.x;
            self.advance();
            if let Some(x4) = completing_term(n, x1, x2, x3) {
                return Some(Sequence::from_reduced(self.n, &[x1, x2, x3, x4]));
            }
        }
        None
    }
}

/// The unique `x4 >= x3` making `(x1, x2, x3, x4)` minimal zero-sum, if any.
#[inline]
fn completing_term(n: u64, x1: u64, x2: u64, x3: u64) -> Option<u64> {
    let x4 = (3 * n - x1 - x2 - x3) % n;
    if x4 == 0 || x4 < x3 {
        return None;
    }
    // With total ≡ 0, every 3-subset is the complement of a singleton and
    // every 2-subset is paired with its complement, so three pairs suffice.
    if (x1 + x2) % n == 0 || (x1 + x3) % n == 0 || (x1 + x4) % n == 0 {
        return None;
    }
    Some(x4)
}

pub fn iter_min_zero_sum4(n: Modulus) -> MinZeroSum4 {
    MinZeroSum4::new(n)
}

fn min_gcd(n: u64, xs: &[u64]) -> u64 {
    xs.iter().map(|&x| gcd_u64(x, n)).min().unwrap_or(n)
}

/// Inverse of `y` modulo `m >= 1`; `y` must be coprime to `m`.
fn inv_any(y: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (m as i64, (y % m) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(m as i64) as u64
}

/// Units `m` sending some coefficient of minimal gcd `d` to `d` itself.
fn leading_candidates(n: u64, xs: &[u64; 4], d: u64) -> Vec<u64> {
    let step = n / d;
    let mut out = Vec::new();
    let mut prev = None;
    for &x in xs {
        if gcd_u64(x, n) != d || prev == Some(x) {
            continue;
        }
        prev = Some(x);
        let base = inv_any(x / d, step);
        for t in 0..d {
            let m = base + t * step;
            if m != 0 && gcd_u64(m, n) == 1 {
                out.push(m);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[inline]
fn scaled_sorted(n: u64, xs: &[u64; 4], m: u64) -> [u64; 4] {
    let mut out = xs.map(|x| {
        let r = (m * x) % n;
        if r == 0 {
            n
        } else {
            r
        }
    });
    out.sort_unstable();
    out
}

/// Lexicographically least unit-scaled copy and the orbit size.
///
/// Sequences of length other than 4 are returned unchanged with size 0.
pub fn orbit_canonical(s: &Sequence) -> OrbitRep {
    let Ok(xs) = s.quad() else {
        return OrbitRep {
            rep: s.clone(),
            orbit_size: 0,
        };
    };
    let nm = s.modulus();
    let n = nm.get();
    let d = min_gcd(n, &xs);
    let rep = leading_candidates(n, &xs, d)
        .into_iter()
        .map(|m| scaled_sorted(n, &xs, m))
        .min()
        .expect("at least one candidate unit");
    let stabiliser = leading_candidates(n, &rep, d)
        .into_iter()
        .filter(|&m| scaled_sorted(n, &rep, m) == rep)
        .count() as u64;
    OrbitRep {
        rep: Sequence::from_reduced(nm, &rep),
        orbit_size: nm.phi() / stabiliser,
    }
}

/// True when no unit scaling of the sorted tuple is lexicographically smaller.
fn is_canonical(n: u64, xs: &[u64; 4]) -> bool {
    let d = min_gcd(n, xs);
    if xs[0] != d {
        return false;
    }
    leading_candidates(n, xs, d)
        .into_iter()
        .all(|m| scaled_sorted(n, xs, m) >= *xs)
}

/// One representative per unit orbit, in lexicographic order.
///
/// A canonical representative starts with its minimal gcd, which divides `n`,
/// so only divisors of `n` are tried as the first coefficient.
pub fn iter_orbit_reps(n: Modulus) -> impl Iterator<Item = OrbitRep> {
    let nv = n.get();
    let phi = n.phi();
    divisors(nv)
        .into_iter()
        .filter(move |&d| d < nv)
        .flat_map(move |x1| {
            (x1..nv).flat_map(move |x2| {
                (x2..nv).filter_map(move |x3| {
                    let x4 = completing_term(nv, x1, x2, x3)?;
                    let xs = [x1, x2, x3, x4];
                    if !is_canonical(nv, &xs) {
                        return None;
                    }
                    let stabiliser = leading_candidates(nv, &xs, x1)
                        .into_iter()
                        .filter(|&m| scaled_sorted(nv, &xs, m) == xs)
                        .count() as u64;
                    Some(OrbitRep {
                        rep: Sequence::from_reduced(n, &xs),
                        orbit_size: phi / stabiliser,
                    })
                })
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn m(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn seq(n: u64, xs: &[i64]) -> Sequence {
        Sequence::new(m(n), xs).unwrap()
    }

    /// Every sorted 4-tuple, full 14-subset check.
    fn brute_min_zero_sum4(n: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for a in 1..n {
            for b in a..n {
                for c in b..n {
                    for d in c..n {
                        let s = Sequence::from_reduced(m(n), &[a, b, c, d]);
                        if s.is_minimal_zero_sum() {
                            out.push(vec![a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    }

    /// Lex-min over every unit, orbit as the set of all scaled copies.
    fn brute_orbit(s: &Sequence) -> (Vec<u64>, u64) {
        let copies: BTreeSet<Vec<u64>> = s
            .modulus()
            .units()
            .map(|u| s.scale(u).unwrap().coeffs().to_vec())
            .collect();
        (copies.iter().next().unwrap().clone(), copies.len() as u64)
    }

    #[test]
    fn n5_enumeration() {
        let got: Vec<Vec<u64>> = iter_min_zero_sum4(m(5)).map(|s| s.coeffs().to_vec()).collect();
        assert_eq!(
            got,
            vec![vec![1, 1, 1, 2], vec![1, 3, 3, 3], vec![2, 2, 2, 4], vec![3, 4, 4, 4]]
        );
        assert_eq!(got, brute_min_zero_sum4(5));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 3..=30 {
            let got: Vec<Vec<u64>> = iter_min_zero_sum4(m(n)).map(|s| s.coeffs().to_vec()).collect();
            assert_eq!(got, brute_min_zero_sum4(n), "n = {n}");
            assert!(got.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn canonical_examples() {
        let r = orbit_canonical(&seq(5, &[3, 4, 4, 4]));
        assert_eq!(r.rep.coeffs(), &[1, 1, 1, 2]);
        let r = orbit_canonical(&seq(5, &[1, 1, 1, 2]));
        assert_eq!(r.rep.coeffs(), &[1, 1, 1, 2]);
        assert_eq!(r.orbit_size, 4);
        // 2*3 ≡ 1 (mod 5) pulls (1,3,3,3) into the same orbit
        let r = orbit_canonical(&seq(5, &[1, 3, 3, 3]));
        assert_eq!(r.rep.coeffs(), &[1, 1, 1, 2]);
        assert_eq!(brute_orbit(&seq(5, &[1, 3, 3, 3])), (vec![1, 1, 1, 2], 4));
    }

    #[test]
    fn canonical_matches_full_unit_scan() {
        for n in 3..=45 {
            for s in iter_min_zero_sum4(m(n)) {
                let fast = orbit_canonical(&s);
                let (rep, size) = brute_orbit(&s);
                assert_eq!(fast.rep.coeffs(), &rep[..], "{s}");
                assert_eq!(fast.orbit_size, size, "{s}");
                assert_eq!(m(n).phi() % size, 0);
            }
        }
    }

    #[test]
    fn orbit_reps_partition_the_enumeration() {
        for n in 3..=60 {
            let reps: Vec<OrbitRep> = iter_orbit_reps(m(n)).collect();
            let total: u64 = reps.iter().map(|r| r.orbit_size).sum();
            assert_eq!(total, iter_min_zero_sum4(m(n)).count() as u64, "n = {n}");
            let from_all: BTreeSet<Vec<u64>> = iter_min_zero_sum4(m(n))
                .map(|s| orbit_canonical(&s).rep.coeffs().to_vec())
                .collect();
            let listed: Vec<Vec<u64>> = reps.iter().map(|r| r.rep.coeffs().to_vec()).collect();
            assert_eq!(listed, from_all.into_iter().collect::<Vec<_>>(), "n = {n}");
            for r in &reps {
                assert_eq!(orbit_canonical(&r.rep), *r);
            }
        }
        assert_eq!(iter_orbit_reps(m(5)).map(|r| r.orbit_size).sum::<u64>(), 4);
    }

    #[test]
    fn index_constant_on_orbits() {
        for n in [5u64, 11, 12, 25, 30] {
            for s in iter_min_zero_sum4(m(n)) {
                let rep = orbit_canonical(&s).rep;
                assert_eq!(s.index().weight, rep.index().weight);
            }
        }
    }

    #[test]
    fn closed_under_units() {
        for n in [7u64, 15, 16, 21, 25] {
            let all: BTreeSet<Vec<u64>> =
                iter_min_zero_sum4(m(n)).map(|s| s.coeffs().to_vec()).collect();
            for s in iter_min_zero_sum4(m(n)) {
                for u in m(n).units() {
                    assert!(all.contains(s.scale(u).unwrap().coeffs()));
                }
            }
        }
    }

    #[test]
    fn negation_is_an_involution_on_the_set() {
        for n in 3..=60u64 {
            let all: BTreeSet<Vec<u64>> =
                iter_min_zero_sum4(m(n)).map(|s| s.coeffs().to_vec()).collect();
            let mut by_nu = [0usize; 4];
            let mut by_nu_neg = [0usize; 4];
            for xs in &all {
                let mut neg: Vec<u64> = xs.iter().map(|&x| n - x).collect();
                neg.sort_unstable();
                assert!(all.contains(&neg));
                let nu = (xs.iter().sum::<u64>() / n) as usize;
                by_nu[nu] += 1;
                by_nu_neg[4 - nu] += 1;
            }
            assert_eq!(by_nu, by_nu_neg);
        }
    }
}
