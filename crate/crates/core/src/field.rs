//! Coefficient fields: the rationals and prime fields 𝔽_p.
//!
//! Both are perfect, which the elimination and τ machinery relies on: in
//! 𝔽_p the Frobenius fixes every element, so p^e-th roots of constants are
//! computed by the identity map.

use alloc::string::String;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// The coefficient field of an ambient ring: ℚ or 𝔽_p with p prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    /// Prime field of the given characteristic.
    Prime(u64),
}

/// An element of a [`FieldSpec`]. `Fp` values are kept reduced to `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Builds a field from its characteristic: 0 gives ℚ, a prime p gives 𝔽_p.
    pub fn with_characteristic(c: u64) -> Result<FieldSpec> {
        match c {
            0 => Ok(FieldSpec::Rationals),
            p if is_prime(p) => Ok(FieldSpec::Prime(p)),
            c => Err(Error::NotPrime(c)),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Fp((n.rem_euclid(*p as i64)) as u64),
        }
    }

    /// Maps the rational a/b into the field; in 𝔽_p the denominator must be
    /// invertible, i.e. not divisible by p.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldSpec::Prime(_) => {
                let d = self.from_i64(den);
                let inv = self.inv(&d)?;
                Ok(self.mul(&self.from_i64(num), &inv))
            }
        }
    }

    /// Reduces a big natural number into the field (used for binomials).
    pub fn from_biguint(&self, n: &BigUint) -> Scalar {
        match self {
            FieldSpec::Rationals => {
                Scalar::Rat(BigRational::from_integer(BigInt::from(n.clone())))
            }
            FieldSpec::Prime(p) => {
                let m = n % BigUint::from(*p);
                Scalar::Fp(m.to_u64_digits().first().copied().unwrap_or(0))
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (FieldSpec::Prime(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => Ok(Scalar::Rat(x.recip())),
            (FieldSpec::Prime(p), Scalar::Fp(x)) => Ok(Scalar::Fp(mod_pow(*x, p - 2, *p))),
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, e: u32) -> Scalar {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// The p^e-th root of a scalar. Over 𝔽_p this is the identity
    /// (a^p = a for every a); over ℚ only e = 0 is meaningful.
    pub fn root_p_pow(&self, a: &Scalar, e: u32) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => {
                if e == 0 {
                    Ok(a.clone())
                } else {
                    Err(Error::Unsupported("p-th roots need positive characteristic"))
                }
            }
            FieldSpec::Prime(_) => Ok(a.clone()),
        }
    }

    /// All field elements, for probe-grid enumeration. ℚ yields the small
    /// window {0, 1, -1, 2}; 𝔽_p yields the whole field.
    pub fn probe_values(&self) -> Vec<Scalar> {
        match self {
            FieldSpec::Rationals => [0i64, 1, -1, 2].iter().map(|&n| self.from_i64(n)).collect(),
            FieldSpec::Prime(p) => (0..*p).map(Scalar::Fp).collect(),
        }
    }

    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    r.to_string()
                }
            }
            Scalar::Fp(v) => v.to_string(),
        }
    }

    /// True when the scalar prints with a leading minus sign.
    pub fn is_negative(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Fp(_) => false,
        }
    }
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{}", p),
        }
    }
}
