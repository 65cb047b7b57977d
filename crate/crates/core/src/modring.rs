//! Residues and the unit group of `Z_n`.
//!
//! Residues use the least-positive convention: every class is represented by
//! a value in `[1, n]`, so the zero class is `n` rather than `0`.

use std::fmt;

use crate::error::{Error, Result};

/// Order of the cyclic group, `3 <= n <= u32::MAX`.
///
/// The upper bound keeps every product of two reduced values below `2^64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modulus(u64);

impl Modulus {
    pub const MIN: u64 = 3;
    pub const MAX: u64 = u32::MAX as u64;

    pub fn new(n: u64) -> Result<Self> {
        if (Self::MIN..=Self::MAX).contains(&n) {
            Ok(Modulus(n))
        } else {
            Err(Error::InvalidModulus(n))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Least positive residue of an arbitrary integer.
    pub fn lpr(self, x: i64) -> Residue {
        let n = self.0 as i64;
        let r = x.rem_euclid(n);
        Residue {
            value: if r == 0 { self.0 } else { r as u64 },
            modulus: self,
        }
    }

    /// Least positive residue of a non-negative integer, as a raw value.
    #[inline]
    pub fn reduce(self, x: u64) -> u64 {
        let r = x % self.0;
        if r == 0 {
            self.0
        } else {
            r
        }
    }

    /// `|a*b|_n` for `a, b <= n`.
    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        debug_assert!(a <= self.0 && b <= self.0);
        self.reduce(a * b)
    }

    #[inline]
    pub fn is_unit(self, m: u64) -> bool {
        gcd_u64(m, self.0) == 1
    }

    /// Units in `[1, n-1]`, ascending.
    pub fn units(self) -> Units {
        Units { n: self, next: 1 }
    }

    pub fn inv(self, m: u64) -> Result<u64> {
        let n = self.0 as i64;
        let (mut r0, mut r1) = (n, (m % self.0) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return Err(Error::NotAUnit { m, n: self.0 });
        }
        Ok(t0.rem_euclid(n) as u64)
    }

    /// Euler's totient, computed from the factorisation of `n`.
    pub fn phi(self) -> u64 {
        distinct_prime_factors(self.0)
            .into_iter()
            .fold(self.0, |acc, p| acc / p * (p - 1))
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<u64> for Modulus {
    type Error = Error;

    fn try_from(n: u64) -> Result<Self> {
        Modulus::new(n)
    }
}

/// A value in `[1, n]` standing for its class modulo `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == self.modulus.0
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

#[derive(Debug, Clone)]
pub struct Units {
    n: Modulus,
    next: u64,
}

impl Iterator for Units {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.next < self.n.0 {
            let m = self.next;
            self.next += 1;
            if self.n.is_unit(m) {
                return Some(m);
            }
        }
        None
    }
}

pub fn lpr(x: i64, n: Modulus) -> Residue {
    n.lpr(x)
}

pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        Err(Error::GcdOfZeros)
    } else {
        Ok(gcd_u64(a, b))
    }
}

pub fn units(n: Modulus) -> Vec<u64> {
    n.units().collect()
}

pub fn inv(m: u64, n: Modulus) -> Result<u64> {
    n.inv(m)
}

/// `gcd(a, b)` with `gcd(0, 0) = 0`; [`gcd`] is the checked version.
#[inline]
pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Distinct prime divisors of `n`, ascending, by trial division.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
