use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field: the rationals or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::invalid(format!("{p} is not a prime")))
        }
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Fp(v.rem_euclid(p as i64) as u64, p),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Q(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Fp(r.to_u64().expect("residue fits"), p)
            }
        }
    }

    /// `num / den`, failing when `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(match self {
                Field::Rational => Error::invalid("division by zero in rational literal"),
                Field::Prime(p) => Error::NotInvertible { value: den.to_string(), modulus: *p },
            });
        }
        Ok(self.from_bigint(num).mul(&d.inv()))
    }

    /// Every element of a prime field, in increasing residue order.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match *self {
            Field::Rational => Err(Error::UnsupportedField("points over Q are not enumerable".into())),
            Field::Prime(p) => Ok((0..p).map(|v| Scalar::Fp(v, p)).collect()),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Field::Rational)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// JSON form of a field: `"Q"` or `{"p": N}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum FieldSpec {
    Name(String),
    Prime { p: u64 },
}

impl FieldSpec {
    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldSpec::Name(s) if s == "Q" || s == "QQ" => Ok(Field::Rational),
            FieldSpec::Name(s) => Err(Error::invalid(format!("unknown field `{s}`"))),
            FieldSpec::Prime { p } => Field::prime(*p),
        }
    }

    pub fn from_field(f: Field) -> Self {
        match f {
            Field::Rational => FieldSpec::Name("Q".into()),
            Field::Prime(p) => FieldSpec::Prime { p },
        }
    }
}

/// An exact field element. Rationals are always reduced with positive
/// denominator; residues live in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp(u64, u64),
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp(v, _) => *v == 1,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => {
                let s = a + b;
                Scalar::Fp(if s >= *p { s - p } else { s }, *p)
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => Scalar::Fp(mulmod(*a, *b, *p), *p),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp(a, p) => Scalar::Fp(if *a == 0 { 0 } else { p - a }, *p),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp(a, p) => Scalar::Fp(powmod(*a, p - 2, *p), *p),
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    pub fn pow(&self, e: u64) -> Scalar {
        match self {
            Scalar::Q(a) => {
                let mut r = BigRational::one();
                for _ in 0..e {
                    r *= a;
                }
                Scalar::Q(r)
            }
            Scalar::Fp(a, p) => Scalar::Fp(powmod(*a, e, *p), *p),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Fp(..) => None,
        }
    }

    /// True when printing needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_negative(),
            Scalar::Fp(..) => false,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp(b),
            (Scalar::Fp(a, _), Scalar::Fp(b, _)) => a.cmp(b),
            (Scalar::Q(_), Scalar::Fp(..)) => Ordering::Less,
            (Scalar::Fp(..), Scalar::Q(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(v, _) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_self_test() {
        for p in [2u64, 3, 5, 7, 13, 101] {
            let f = Field::prime(p).unwrap();
            for a in f.elements().unwrap() {
                assert_eq!(a.pow(p), a, "a^p = a in F_{p}");
            }
        }
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(1_000_000_007).is_ok());
    }

    #[test]
    fn rationals_are_reduced() {
        let q = Field::Rational;
        let a = q.from_fraction(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert!(a.is_negative());
    }

    #[test]
    fn fraction_not_invertible_mod_p() {
        let f = Field::prime(2).unwrap();
        let err = f.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap_err();
        assert!(matches!(err, Error::NotInvertible { modulus: 2, .. }));
        let f3 = Field::prime(3).unwrap();
        let h = f3.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(h, Scalar::Fp(2, 3));
    }
}
