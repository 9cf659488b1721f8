//! Exact coefficient fields: prime fields `F_p` and the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest supported prime modulus.
pub const MAX_PRIME: u32 = 1 << 16;

/// The base field `k` of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u32),
    Rationals,
}

impl Field {
    pub fn prime(p: u32) -> Result<Self> {
        if p < 2 || p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime in [2, 2^16]")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(p) => *p,
            Field::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// Reduces an arbitrary-precision integer into the field.
    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Prime(p) => {
                let r = n % BigInt::from(p);
                let r = if r.is_negative() { r + BigInt::from(p) } else { r };
                Scalar::Mod {
                    value: u32::try_from(r).expect("residue fits in u32"),
                    modulus: p,
                }
            }
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
        }
    }

    /// Every element of a finite field, or `None` for `Q`.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            Field::Prime(p) => Some((0..p as i64).map(|v| self.from_i64(v)).collect()),
            Field::Rationals => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`Field`]. Prime-field elements carry their modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod { value: u32, modulus: u32 },
    Rational(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
            Scalar::Rational(_) => Field::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Rational(r) => r.is_one(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: mod_pow(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign used when printing: `true` for strictly negative rationals.
    pub(crate) fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mismatch() -> ! {
    panic!("arithmetic between scalars of different fields")
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => mismatch(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
            Scalar::Rational(r) => Scalar::Rational(-r),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}
