//! Exact scalars: normalized rationals and residues modulo `n`.
//!
//! Arbitrary-precision integers come from `num-bigint`; [`Rational`] wraps a
//! `BigRational`, which is always kept in lowest terms with a positive
//! denominator, so structural equality is value equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A rational number in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ArithError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }
}

pub fn rational_arith(a: &Rational, b: &Rational, op: ArithOp) -> Result<Rational, ArithError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::Parse(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => Ok(Rational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

/// A residue `value mod modulus`, with `0 <= value < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModularInt {
    value: u64,
    modulus: u64,
}

impl ModularInt {
    pub fn new(value: i64, modulus: u64) -> Result<Self, ArithError> {
        if modulus < 2 {
            return Err(ArithError::BadModulus(modulus));
        }
        let m = modulus as i128;
        let v = (value as i128).rem_euclid(m) as u64;
        Ok(ModularInt { value: v, modulus })
    }

    pub fn from_big(value: &BigInt, modulus: u64) -> Result<Self, ArithError> {
        if modulus < 2 {
            return Err(ArithError::BadModulus(modulus));
        }
        let r = value.mod_floor(&BigInt::from(modulus));
        let v: u64 = r.try_into().expect("residue fits in u64");
        Ok(ModularInt { value: v, modulus })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    fn same_modulus(&self, rhs: &ModularInt) -> Result<u64, ArithError> {
        if self.modulus != rhs.modulus {
            return Err(ArithError::ModulusMismatch(self.modulus, rhs.modulus));
        }
        Ok(self.modulus)
    }

    pub fn checked_add(&self, rhs: &ModularInt) -> Result<Self, ArithError> {
        let m = self.same_modulus(rhs)?;
        let v = ((self.value as u128 + rhs.value as u128) % m as u128) as u64;
        Ok(ModularInt { value: v, modulus: m })
    }

    pub fn checked_sub(&self, rhs: &ModularInt) -> Result<Self, ArithError> {
        let m = self.same_modulus(rhs)?;
        let v = ((self.value as u128 + m as u128 - rhs.value as u128) % m as u128) as u64;
        Ok(ModularInt { value: v, modulus: m })
    }

    pub fn checked_mul(&self, rhs: &ModularInt) -> Result<Self, ArithError> {
        let m = self.same_modulus(rhs)?;
        let v = ((self.value as u128 * rhs.value as u128) % m as u128) as u64;
        Ok(ModularInt { value: v, modulus: m })
    }

    pub fn neg(&self) -> Self {
        ModularInt {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inverse(&self) -> Result<Self, ArithError> {
        let (g, x, _) = extended_gcd(self.value as i128, self.modulus as i128);
        if g != 1 {
            return Err(ArithError::NotInvertible {
                value: self.value,
                modulus: self.modulus,
            });
        }
        let m = self.modulus as i128;
        Ok(ModularInt {
            value: x.rem_euclid(m) as u64,
            modulus: self.modulus,
        })
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = *self;
        let mut acc = ModularInt {
            value: 1 % self.modulus,
            modulus: self.modulus,
        };
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.checked_mul(&base).unwrap();
            }
            base = base.checked_mul(&base).unwrap();
            exp >>= 1;
        }
        acc
    }
}

pub fn modular_inverse(a: &ModularInt) -> Result<ModularInt, ArithError> {
    a.inverse()
}

fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Operator forms panic on mixed moduli; use the checked_* methods to recover.
impl Add for ModularInt {
    type Output = ModularInt;
    fn add(self, rhs: ModularInt) -> ModularInt {
        self.checked_add(&rhs).expect("mixed-modulus addition")
    }
}

impl Sub for ModularInt {
    type Output = ModularInt;
    fn sub(self, rhs: ModularInt) -> ModularInt {
        self.checked_sub(&rhs).expect("mixed-modulus subtraction")
    }
}

impl Mul for ModularInt {
    type Output = ModularInt;
    fn mul(self, rhs: ModularInt) -> ModularInt {
        self.checked_mul(&rhs).expect("mixed-modulus multiplication")
    }
}

impl fmt::Display for ModularInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl FromStr for ModularInt {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::Parse(s.to_string());
        let (v, m) = s.split_once(" mod ").ok_or_else(bad)?;
        let v: i64 = v.trim().parse().map_err(|_| bad())?;
        let m: u64 = m.trim().parse().map_err(|_| bad())?;
        ModularInt::new(v, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn rational_examples() {
        assert_eq!(rational_arith(&q(1, 2), &q(1, 3), ArithOp::Add).unwrap(), q(5, 6));
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(
            rational_arith(&q(1, 3), &q(0, 1), ArithOp::Div),
            Err(ArithError::DivisionByZero)
        );
        assert_eq!(q(3, -6), q(-1, 2));
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn modular_inverse_examples() {
        let three = ModularInt::new(3, 7).unwrap();
        assert_eq!(modular_inverse(&three).unwrap().value(), 5);
        for n in 2..20 {
            assert_eq!(ModularInt::new(1, n).unwrap().inverse().unwrap().value(), 1);
        }
        assert!(matches!(
            ModularInt::new(2, 8).unwrap().inverse(),
            Err(ArithError::NotInvertible { value: 2, modulus: 8 })
        ));
    }

    #[test]
    fn mixed_moduli_rejected() {
        let a = ModularInt::new(1, 5).unwrap();
        let b = ModularInt::new(1, 7).unwrap();
        assert_eq!(a.checked_add(&b), Err(ArithError::ModulusMismatch(5, 7)));
        assert!(ModularInt::new(0, 1).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(ModularInt::new(-1, 7).unwrap().to_string(), "6 mod 7");
        assert_eq!("6 mod 7".parse::<ModularInt>().unwrap(), ModularInt::new(6, 7).unwrap());
        assert_eq!("-3/9".parse::<Rational>().unwrap(), q(-1, 3));
        assert!("1/x".parse::<Rational>().is_err());
    }

    fn small_q() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in small_q(), b in small_q(), c in small_q()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, Rational::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inverse().unwrap(), Rational::one());
            }
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }

        #[test]
        fn prime_field_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7, 31, 101, 65521]),
                              a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
            let (a, b, c) = (ModularInt::new(a, p).unwrap(), ModularInt::new(b, p).unwrap(), ModularInt::new(c, p).unwrap());
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert!((a + a.neg()).is_zero());
            if !a.is_zero() {
                prop_assert!((a * a.inverse().unwrap()).is_one());
            }
            prop_assert_eq!(a.to_string().parse::<ModularInt>().unwrap(), a);
        }
    }
}
