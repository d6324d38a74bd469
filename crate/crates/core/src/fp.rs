//! Exact arithmetic in `F_p` and `Z_{p^k}`.

use std::fmt;

use crate::{Error, Result};

/// Largest prime accepted. Keeps `p^4` inside 64 bits.
pub const MAX_PRIME: u64 = 1 << 15;

/// Largest modulus `p^k` accepted for residues, so products of two residues fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// A prime number, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `p^k`, or an error when it exceeds [`MAX_MODULUS`].
    pub fn pow(self, k: u32) -> Result<u64> {
        self.0
            .checked_pow(k)
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or(Error::OrderTooLarge { p: self.0, k })
    }

    /// The first `count` primes in ascending order.
    pub fn first(count: usize) -> Vec<Prime> {
        (2..).filter(|&n| is_prime(n)).take(count).map(Prime).collect()
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u64,
    p: Prime,
}

impl FpScalar {
    pub fn new(value: u64, p: Prime) -> Self {
        FpScalar { value: value % p.0, p }
    }

    /// Reduces a signed integer, so `FpScalar::from_i64(-1, p)` is `p - 1`.
    pub fn from_i64(value: i64, p: Prime) -> Self {
        FpScalar { value: value.rem_euclid(p.0 as i64) as u64, p }
    }

    pub fn zero(p: Prime) -> Self {
        FpScalar { value: 0, p }
    }

    pub fn one(p: Prime) -> Self {
        FpScalar { value: 1 % p.0, p }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Prime {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        FpScalar { value: (self.value + rhs.value) % self.p.0, p: self.p }
    }

    pub fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        FpScalar { value: (self.value + self.p.0 - rhs.value) % self.p.0, p: self.p }
    }

    pub fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        FpScalar { value: (self.value * rhs.value) % self.p.0, p: self.p }
    }

    pub fn neg(self) -> Self {
        FpScalar { value: (self.p.0 - self.value) % self.p.0, p: self.p }
    }

    pub fn inv(self) -> Result<Self> {
        fp_inv(self)
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Multiplicative inverse modulo `p`.
pub fn fp_inv(x: FpScalar) -> Result<FpScalar> {
    let inv = mod_inverse(x.value, x.p.0).ok_or(Error::NotInvertible)?;
    Ok(FpScalar { value: inv, p: x.p })
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m as i128) as u64)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// True iff `x² - b·x - a` has no root in `F_p`.
///
/// Decided by trying every candidate root, which also covers `p = 2`.
pub fn is_irreducible_quadratic(a: FpScalar, b: FpScalar) -> bool {
    debug_assert_eq!(a.p, b.p);
    let p = a.p;
    (0..p.0).all(|x| {
        let x = FpScalar::new(x, p);
        !x.mul(x).sub(b.mul(x)).sub(a).is_zero()
    })
}

/// Number of pairs `(a, b)` with `x² - b·x - a` irreducible, by exhaustive count.
pub fn count_irreducible_quadratics(p: Prime) -> u64 {
    let mut count = 0;
    for a in 0..p.0 {
        for b in 0..p.0 {
            if is_irreducible_quadratic(FpScalar::new(a, p), FpScalar::new(b, p)) {
                count += 1;
            }
        }
    }
    count
}

/// An element of `Z_{p^k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueMod {
    value: u64,
    p: Prime,
    k: u32,
}

impl ResidueMod {
    pub fn new(value: u64, p: Prime, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroExponent);
        }
        let m = p.pow(k)?;
        Ok(ResidueMod { value: value % m, p, k })
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn prime(self) -> Prime {
        self.p
    }

    pub fn exponent(self) -> u32 {
        self.k
    }

    /// `p^k`.
    pub fn modulus(self) -> u64 {
        self.p.0.pow(self.k)
    }

    pub fn is_unit(self) -> bool {
        self.value % self.p.0 != 0
    }

    fn same_ring(self, rhs: Self) -> Result<()> {
        if self.p == rhs.p && self.k == rhs.k {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(self, rhs: Self) -> Result<Self> {
        self.same_ring(rhs)?;
        Ok(ResidueMod { value: (self.value + rhs.value) % self.modulus(), ..self })
    }

    pub fn mul(self, rhs: Self) -> Result<Self> {
        self.same_ring(rhs)?;
        Ok(ResidueMod { value: (self.value * rhs.value) % self.modulus(), ..self })
    }

    pub fn neg(self) -> Self {
        let m = self.modulus();
        ResidueMod { value: (m - self.value) % m, ..self }
    }

    pub fn inv(self) -> Result<Self> {
        let v = mod_inverse(self.value, self.modulus()).ok_or(Error::NotInvertible)?;
        Ok(ResidueMod { value: v, ..self })
    }
}

impl fmt::Display for ResidueMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
