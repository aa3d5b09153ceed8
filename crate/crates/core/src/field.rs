//! Prime-field arithmetic over moduli that fit in 64 bits.
//!
//! A [`Field`] names the modulus and a generator of its multiplicative group.
//! Every [`Fe`] carries its modulus so the arithmetic operators can be used
//! directly; mixing elements of different fields is a logic error and is
//! caught by a debug assertion.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// 2^64 - 2^32 + 1.
pub const DEFAULT_MODULUS: u64 = 0xffff_ffff_0000_0001;
pub const DEFAULT_GENERATOR: u64 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("duplicate interpolation node {0}")]
    DuplicateNode(u64),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("{generator} does not generate the multiplicative group mod {modulus}")]
    NotAGenerator { modulus: u64, generator: u64 },
    #[error("cannot factor {0} - 1 to find a generator; supply one explicitly")]
    UnknownGenerator(u64),
    #[error("invalid field element {0:?}")]
    InvalidElement(String),
    #[error("pairing is not supported by the {0} backend")]
    PairingUnsupported(&'static str),
}

/// Modulus plus multiplicative generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    modulus: u64,
    generator: u64,
}

impl Field {
    /// The default 64-bit field with its generator verified.
    pub fn goldilocks() -> Self {
        Self::with_generator(DEFAULT_MODULUS, DEFAULT_GENERATOR).expect("default field parameters are valid")
    }

    /// Builds the field for prime `p`, picking the smallest generator.
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let factors = factor_group_order(p).ok_or(FieldError::UnknownGenerator(p))?;
        let generator = (1..p).find(|&g| is_generator(p, g, &factors)).ok_or(FieldError::UnknownGenerator(p))?;
        Ok(Self { modulus: p, generator })
    }

    /// Builds the field for prime `p` with a caller-chosen generator.
    ///
    /// The generator is checked whenever `p - 1` factors over small primes
    /// (true for the default modulus); otherwise it is trusted.
    pub fn with_generator(p: u64, generator: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let bad = FieldError::NotAGenerator { modulus: p, generator };
        if generator == 0 || generator >= p {
            return Err(bad);
        }
        if let Some(factors) = factor_group_order(p) {
            if !is_generator(p, generator, &factors) {
                return Err(bad);
            }
        }
        Ok(Self { modulus: p, generator })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator(&self) -> Fe {
        self.elem(self.generator)
    }

    /// Reduces `value` into the field.
    pub fn elem(&self, value: u64) -> Fe {
        Fe { value: value % self.modulus, modulus: self.modulus }
    }

    /// Maps a signed integer into the field.
    pub fn from_i64(&self, value: i64) -> Fe {
        let m = self.modulus as i128;
        let r = (value as i128).rem_euclid(m);
        Fe { value: r as u64, modulus: self.modulus }
    }

    pub fn zero(&self) -> Fe {
        self.elem(0)
    }

    pub fn one(&self) -> Fe {
        self.elem(1)
    }

    /// Parses a canonical decimal residue (must already be < p).
    pub fn parse(&self, s: &str) -> Result<Fe, FieldError> {
        let value: u64 = s.trim().parse().map_err(|_| FieldError::InvalidElement(s.to_string()))?;
        if value >= self.modulus {
            return Err(FieldError::InvalidElement(s.to_string()));
        }
        Ok(self.elem(value))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        self.elem(rng.gen_range(0..self.modulus))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        self.elem(rng.gen_range(1..self.modulus))
    }
}

impl Default for Field {
    fn default() -> Self {
        Self::goldilocks()
    }
}

/// An element of a prime field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fe {
    value: u64,
    modulus: u64,
}

impl Fe {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_one(self) -> bool {
        self.value == 1
    }

    /// Zero of the same field.
    pub fn zero_like(self) -> Fe {
        Fe { value: 0, modulus: self.modulus }
    }

    /// One of the same field.
    pub fn one_like(self) -> Fe {
        Fe { value: 1 % self.modulus, modulus: self.modulus }
    }

    pub fn pow(self, mut exp: u64) -> Fe {
        let mut base = self;
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base *= base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inverse(self) -> Result<Fe, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(self.modulus - 2))
    }

    pub fn checked_div(self, rhs: Fe) -> Result<Fe, FieldError> {
        Ok(self * rhs.inverse()?)
    }

    #[inline]
    fn same_field(self, rhs: Fe) {
        debug_assert_eq!(self.modulus, rhs.modulus, "mixed field moduli");
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Field elements serialize as decimal strings so that JSON consumers with
/// 53-bit numbers do not truncate them.
impl Serialize for Fe {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.value)
    }
}

impl Add for Fe {
    type Output = Fe;
    #[inline]
    fn add(self, rhs: Fe) -> Fe {
        self.same_field(rhs);
        let sum = self.value as u128 + rhs.value as u128;
        let m = self.modulus as u128;
        let r = if sum >= m { sum - m } else { sum };
        Fe { value: r as u64, modulus: self.modulus }
    }
}

impl Sub for Fe {
    type Output = Fe;
    #[inline]
    fn sub(self, rhs: Fe) -> Fe {
        self.same_field(rhs);
        let r = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            // modulus - (rhs - self) cannot overflow since rhs < modulus
            self.modulus - (rhs.value - self.value)
        };
        Fe { value: r, modulus: self.modulus }
    }
}

impl Mul for Fe {
    type Output = Fe;
    #[inline]
    fn mul(self, rhs: Fe) -> Fe {
        self.same_field(rhs);
        let r = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Fe { value: r as u64, modulus: self.modulus }
    }
}

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        if self.value == 0 {
            self
        } else {
            Fe { value: self.modulus - self.value, modulus: self.modulus }
        }
    }
}

impl AddAssign for Fe {
    fn add_assign(&mut self, rhs: Fe) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fe {
    fn sub_assign(&mut self, rhs: Fe) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fe {
    fn mul_assign(&mut self, rhs: Fe) {
        *self = *self * rhs;
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Miller-Rabin with a base set that is deterministic for all u64.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors of `p - 1`, if they can be found by trial division
/// up to 2^20 with a prime (or unit) cofactor.
fn factor_group_order(p: u64) -> Option<Vec<u64>> {
    let mut n = p - 1;
    let mut factors = Vec::new();
    let mut q = 2u64;
    while q <= (1 << 20) && q * q <= n {
        if n.is_multiple_of(q) {
            factors.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if !is_prime(n) {
            return None;
        }
        factors.push(n);
    }
    Some(factors)
}

fn is_generator(p: u64, g: u64, factors: &[u64]) -> bool {
    if p == 2 {
        return g == 1;
    }
    factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)
}
