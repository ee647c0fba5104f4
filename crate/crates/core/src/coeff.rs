//! Exact coefficient rings: arbitrary-precision rationals, prime fields and
//! Z/m for composite m, behind one ring interface.
//!
//! Elements are kept in canonical form (reduced fraction, or residue in
//! `[0, m)`), so equal elements compare equal structurally.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("inverse of a non-unit")]
    NonUnit,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("operation requires field coefficients")]
    NotAField,
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
}

/// Coefficient ring selector. `Rationals` and `PrimeField` are fields;
/// `ModRing(m)` with composite `m` is a ring with zero divisors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Rationals,
    PrimeField(u64),
    ModRing(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= p) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Ring {
    /// Validates the descriptor invariants (prime `p`, modulus at least 2).
    pub fn validate(&self) -> Result<(), RingError> {
        match *self {
            Ring::Rationals => Ok(()),
            Ring::PrimeField(p) => {
                if is_prime(p) {
                    Ok(())
                } else {
                    Err(RingError::NotPrime(p))
                }
            }
            Ring::ModRing(m) => {
                if m >= 2 {
                    Ok(())
                } else {
                    Err(RingError::BadModulus(m))
                }
            }
        }
    }

    pub fn is_field(&self) -> bool {
        match *self {
            Ring::Rationals | Ring::PrimeField(_) => true,
            Ring::ModRing(m) => is_prime(m),
        }
    }

    /// `true` for rings without zero divisors.
    pub fn is_domain(&self) -> bool {
        self.is_field()
    }

    /// Characteristic: 0 for the rationals, `p` resp. `m` otherwise.
    pub fn characteristic(&self) -> u64 {
        match *self {
            Ring::Rationals => 0,
            Ring::PrimeField(p) => p,
            Ring::ModRing(m) => m,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match *self {
            Ring::Rationals => None,
            Ring::PrimeField(p) => Some(p),
            Ring::ModRing(m) => Some(m),
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Ring::Rationals => Coeff::Rat(BigRational::zero()),
            _ => Coeff::Res(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            Ring::Rationals => Coeff::Rat(BigRational::one()),
            _ => Coeff::Res(1 % self.modulus().unwrap()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self.modulus() {
            None => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
            Some(m) => Coeff::Res(v.rem_euclid(m as i64) as u64),
        }
    }

    /// Builds `num/den`; over modular rings `den` must be a unit.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Coeff, RingError> {
        if den == 0 {
            return Err(RingError::NonUnit);
        }
        match self.modulus() {
            None => Ok(Coeff::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            Some(_) => {
                let inv = self.try_inverse(&self.from_i64(den))?;
                Ok(self.mul(&self.from_i64(num), &inv))
            }
        }
    }

    /// Parses `a` or `a/b` with optional sign.
    pub fn parse_scalar(&self, text: &str) -> Result<Coeff, RingError> {
        let t = text.trim();
        let bad = || RingError::BadScalar(text.to_string());
        if let Some((n, d)) = t.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            self.from_ratio(n, d)
        } else {
            match self.modulus() {
                None => {
                    let n = BigInt::from_str(t).map_err(|_| bad())?;
                    Ok(Coeff::Rat(BigRational::from_integer(n)))
                }
                Some(m) => {
                    let n = BigInt::from_str(t).map_err(|_| bad())?;
                    let r = n.mod_floor(&BigInt::from(m));
                    Ok(Coeff::Res(u64::try_from(r).unwrap()))
                }
            }
        }
    }

    fn res_op(&self, a: &Coeff, b: &Coeff, f: impl Fn(u128, u128, u128) -> u128) -> Coeff {
        let m = self.modulus().expect("modular op on rational ring") as u128;
        match (a, b) {
            (Coeff::Res(x), Coeff::Res(y)) => Coeff::Res(f(*x as u128, *y as u128, m) as u64),
            _ => panic!("residue element expected"),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            _ => self.res_op(a, b, |x, y, m| (x + y) % m),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x - y),
            _ => self.res_op(a, b, |x, y, m| (x + m - y) % m),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            _ => self.res_op(a, b, |x, y, m| (x * y) % m),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match a {
            Coeff::Rat(x) => Coeff::Rat(-x),
            Coeff::Res(x) => {
                let m = self.modulus().expect("modular op on rational ring");
                Coeff::Res(if *x == 0 { 0 } else { m - x })
            }
        }
    }

    /// Succeeds exactly when the element is a unit.
    pub fn try_inverse(&self, a: &Coeff) -> Result<Coeff, RingError> {
        match a {
            Coeff::Rat(x) => {
                if x.is_zero() {
                    Err(RingError::NonUnit)
                } else {
                    Ok(Coeff::Rat(x.recip()))
                }
            }
            Coeff::Res(x) => {
                let m = self.modulus().expect("modular op on rational ring");
                let (g, inv, _) = ext_gcd(*x as i128, m as i128);
                if g != 1 {
                    Err(RingError::NonUnit)
                } else {
                    Ok(Coeff::Res(inv.rem_euclid(m as i128) as u64))
                }
            }
        }
    }

    pub fn is_unit(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rat(x) => !x.is_zero(),
            Coeff::Res(x) => {
                let m = self.modulus().expect("modular op on rational ring");
                x.gcd(&m) == 1
            }
        }
    }

    pub fn pow(&self, a: &Coeff, e: u32) -> Coeff {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Ring element in canonical form: reduced fraction or residue in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coeff {
    Rat(BigRational),
    Res(u64),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rat(x) => x.is_zero(),
            Coeff::Res(x) => *x == 0,
        }
    }

    /// Residue value for modular elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Coeff::Res(x) => Some(*x),
            Coeff::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Rat(x) => Some(x),
            Coeff::Res(_) => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rat(x) => {
                if x.is_integer() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Coeff::Res(x) => write!(f, "{x}"),
        }
    }
}

/// `true` when the displayed form starts with a minus sign.
pub fn displays_negative(c: &Coeff) -> bool {
    match c {
        Coeff::Rat(x) => x.is_negative(),
        Coeff::Res(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let q = Ring::Rationals;
        let a = q.from_ratio(1, 3).unwrap();
        let b = q.from_ratio(1, 6).unwrap();
        assert_eq!(q.add(&a, &b), q.from_ratio(1, 2).unwrap());
    }

    #[test]
    fn mod4_inverse_of_three() {
        let r = Ring::ModRing(4);
        assert_eq!(r.try_inverse(&r.from_i64(3)).unwrap(), r.from_i64(3));
        assert_eq!(r.try_inverse(&r.from_i64(2)), Err(RingError::NonUnit));
    }

    #[test]
    fn unit_detection() {
        assert!(Ring::Rationals.is_unit(&Ring::Rationals.from_i64(5)));
        let z6 = Ring::ModRing(6);
        assert!(z6.is_unit(&z6.from_i64(5)));
        assert!(!z6.is_unit(&z6.from_i64(3)));
    }

    #[test]
    fn residues_normalize_into_range() {
        let z5 = Ring::ModRing(5);
        assert_eq!(z5.from_i64(-3), z5.from_i64(2));
        assert_eq!(z5.parse_scalar("-3").unwrap(), z5.from_i64(2));
    }

    #[test]
    fn descriptor_validation() {
        assert!(Ring::PrimeField(7).validate().is_ok());
        assert_eq!(
            Ring::PrimeField(6).validate(),
            Err(RingError::NotPrime(6))
        );
        assert_eq!(Ring::ModRing(1).validate(), Err(RingError::BadModulus(1)));
    }

    #[test]
    fn ring_axioms_on_samples() {
        for ring in [Ring::Rationals, Ring::PrimeField(5), Ring::ModRing(6)] {
            let elems: Vec<Coeff> = (-4..5).map(|v| ring.from_i64(v)).collect();
            for a in &elems {
                for b in &elems {
                    assert_eq!(ring.add(a, b), ring.add(b, a));
                    assert_eq!(ring.mul(a, b), ring.mul(b, a));
                    for c in &elems {
                        let left = ring.mul(a, &ring.add(b, c));
                        let right = ring.add(&ring.mul(a, b), &ring.mul(a, c));
                        assert_eq!(left, right);
                        assert_eq!(
                            ring.mul(&ring.mul(a, b), c),
                            ring.mul(a, &ring.mul(b, c))
                        );
                    }
                    assert_eq!(ring.add(a, &ring.zero()), a.clone());
                    assert_eq!(ring.mul(a, &ring.one()), a.clone());
                }
            }
        }
    }

    #[test]
    fn field_inverse_on_samples() {
        for ring in [Ring::Rationals, Ring::PrimeField(7)] {
            for v in 1..7 {
                let a = ring.from_i64(v);
                let inv = ring.try_inverse(&a).unwrap();
                assert_eq!(ring.mul(&a, &inv), ring.one());
            }
        }
    }
}
