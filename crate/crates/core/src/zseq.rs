//! Sequences over `Z_n` in coefficient form, and their index.
//!
//! A sequence `S = (x_1 g)...(x_l g)` is stored as the sorted multiset of its
//! coefficients with respect to a fixed generator `g`. Changing the generator
//! to `u*g` multiplies every coefficient by `m = u^{-1}`, so the index is the
//! minimum over units `m` of `sum |m x_i|_n`, divided by `n`.

use std::fmt;

use arrayvec::ArrayVec;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::modring::Modulus;

pub const MAX_LEN: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence {
    n: Modulus,
    coeffs: ArrayVec<u64, MAX_LEN>,
}

impl Sequence {
    /// Reduces every coefficient into `[1, n]`, rejects the zero class and sorts.
    pub fn new(n: Modulus, coeffs: &[i64]) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len() > MAX_LEN {
            return Err(Error::BadLength { len: coeffs.len() });
        }
        let mut out = ArrayVec::new();
        for &x in coeffs {
            let r = n.lpr(x);
            if r.is_zero() {
                return Err(Error::ZeroCoefficient { x, n: n.get() });
            }
            out.push(r.value());
        }
        out.sort_unstable();
        Ok(Sequence { n, coeffs: out })
    }

    /// Coefficients must already lie in `[1, n-1]`; they are sorted here.
    pub(crate) fn from_reduced(n: Modulus, coeffs: &[u64]) -> Self {
        debug_assert!(coeffs.iter().all(|&x| (1..n.get()).contains(&x)));
        let mut out: ArrayVec<u64, MAX_LEN> = coeffs.iter().copied().collect();
        out.sort_unstable();
        Sequence { n, coeffs: out }
    }

    pub fn modulus(&self) -> Modulus {
        self.n
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The four coefficients of a length-4 sequence.
    pub fn quad(&self) -> Result<[u64; 4]> {
        <[u64; 4]>::try_from(&self.coeffs[..]).map_err(|_| Error::NotLengthFour { len: self.len() })
    }

    pub fn sum(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    pub fn is_zero_sum(&self) -> bool {
        self.sum() % self.n.get() == 0
    }

    /// `(sum x_i) / n` for a zero-sum sequence.
    pub fn nu(&self) -> Result<u64> {
        if !self.is_zero_sum() {
            return Err(Error::NotZeroSum { n: self.n.get() });
        }
        Ok(self.sum() / self.n.get())
    }

    /// Zero-sum, and no nonempty proper sub-multiset sums to zero.
    pub fn is_minimal_zero_sum(&self) -> bool {
        if !self.is_zero_sum() {
            return false;
        }
        let n = self.n.get();
        let full = (1u32 << self.len()) - 1;
        (1..full).all(|mask| {
            let s: u64 = self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &x)| x)
                .sum();
            s % n != 0
        })
    }

    /// `sum |m x_i|_n`, which is `n * ||S||_g` for the generator `g` with `m = u^{-1}`.
    pub fn weight(&self, m: u64) -> Result<u64> {
        let n = self.n;
        if m == 0 || !n.is_unit(m) {
            return Err(Error::NotAUnit { m, n: n.get() });
        }
        Ok(self.weight_of_unit(n.reduce(m)))
    }

    /// Weight for a multiplier already known to be a unit in `[1, n-1]`.
    #[inline]
    pub(crate) fn weight_of_unit(&self, m: u64) -> u64 {
        let n = self.n;
        self.coeffs.iter().map(|&x| n.mul(m, x)).sum()
    }

    /// Coefficientwise `|u x_i|_n`, re-sorted.
    pub fn scale(&self, u: u64) -> Result<Sequence> {
        let n = self.n;
        if u == 0 || !n.is_unit(u) {
            return Err(Error::NotAUnit { m: u, n: n.get() });
        }
        let u = n.reduce(u);
        let mut coeffs: ArrayVec<u64, MAX_LEN> = self.coeffs.iter().map(|&x| n.mul(u, x)).collect();
        coeffs.sort_unstable();
        Ok(Sequence { n, coeffs })
    }

    /// Full minimum over all units, smallest witness on ties.
    pub fn index(&self) -> IndexResult {
        let n = self.n.get();
        let mut best = IndexResult {
            weight: u64::MAX,
            n,
            witness: 0,
        };
        for m in self.n.units() {
            let w = self.weight_of_unit(m);
            if w < best.weight {
                best.weight = w;
                best.witness = m;
            }
        }
        best
    }

    /// Smallest unit `m` with weight exactly `n`, if any.
    pub fn first_unit_witness(&self) -> Option<u64> {
        let n = self.n.get();
        self.n.units().find(|&m| self.weight_of_unit(m) == n)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ") over Z_{}", self.n)
    }
}

impl Serialize for Sequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.as_slice().serialize(s)
    }
}

pub fn make_sequence(n: Modulus, coeffs: &[i64]) -> Result<Sequence> {
    Sequence::new(n, coeffs)
}

pub fn is_zero_sum(s: &Sequence) -> bool {
    s.is_zero_sum()
}

pub fn nu(s: &Sequence) -> Result<u64> {
    s.nu()
}

pub fn is_minimal_zero_sum(s: &Sequence) -> bool {
    s.is_minimal_zero_sum()
}

pub fn weight(s: &Sequence, m: u64) -> Result<u64> {
    s.weight(m)
}

pub fn index(s: &Sequence) -> IndexResult {
    s.index()
}

/// `ind(S) = weight / n` together with the unit that attains it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexResult {
    pub weight: u64,
    pub n: u64,
    pub witness: u64,
}

impl IndexResult {
    /// The index as a reduced fraction `(num, den)`.
    pub fn value(&self) -> (u64, u64) {
        let g = crate::modring::gcd_u64(self.weight, self.n);
        (self.weight / g, self.n / g)
    }

    pub fn is_integer(&self) -> bool {
        self.weight % self.n == 0
    }

    pub fn is_one(&self) -> bool {
        self.weight == self.n
    }
}

impl fmt::Display for IndexResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            (p, 1) => write!(f, "{p}"),
            (p, q) => write!(f, "{p}/{q}"),
        }
    }
}

/// Integer index as a JSON number, otherwise the string `"p/q"`.
impl Serialize for IndexResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.value() {
            (p, 1) => s.serialize_u64(p),
            (p, q) => s.serialize_str(&format!("{p}/{q}")),
        }
    }
}
