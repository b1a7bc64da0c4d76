//! Exact base fields: the rationals and prime fields F_p.
//!
//! Every scalar in the crate is exact; there is no floating point anywhere.
//! Rational scalars are arbitrary-precision reduced fractions, prime-field
//! scalars are canonical representatives `0 <= r < p`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// The base field of an algebra, a matrix or a module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Field {
    /// The rational numbers.
    #[serde(rename = "Q")]
    Rational,
    /// The prime field with `p` elements.
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}

/// One exact field element. The variant must match the ambient [`Field`];
/// all arithmetic goes through `Field` methods which enforce this.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp(u64),
}

/// Deterministic Miller-Rabin, exact for all u64 inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let pow = |b: u64, mut e: u64, m: u64| -> u64 {
        let mut acc: u128 = 1;
        let mut bb: u128 = (b % m) as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * bb % m as u128;
            }
            bb = bb * bb % m as u128;
            e >>= 1;
        }
        acc as u64
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = pow(x, 2, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field {
    /// Validate the field description (primality of `p`).
    pub fn validate(&self) -> Result<()> {
        match self {
            Field::Rational => Ok(()),
            Field::Prime { p } => {
                if is_prime_u64(*p) {
                    Ok(())
                } else {
                    Err(CoreError::NotPrime { p: *p })
                }
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::zero()),
            Field::Prime { .. } => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::one()),
            Field::Prime { .. } => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime { p } => Scalar::Fp((n as i128).rem_euclid(*p as i128) as u64),
        }
    }

    fn q<'a>(s: &'a Scalar) -> &'a BigRational {
        match s {
            Scalar::Q(r) => r,
            _ => panic!("scalar/field variant mismatch"),
        }
    }

    fn fp(s: &Scalar) -> u64 {
        match s {
            Scalar::Fp(v) => *v,
            _ => panic!("scalar/field variant mismatch"),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Self::q(a) + Self::q(b)),
            Field::Prime { p } => {
                Scalar::Fp(((Self::fp(a) as u128 + Self::fp(b) as u128) % *p as u128) as u64)
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Self::q(a) - Self::q(b)),
            Field::Prime { p } => {
                let p128 = *p as u128;
                Scalar::Fp(
                    ((Self::fp(a) as u128 + p128 - Self::fp(b) as u128 % p128) % p128) as u64,
                )
            }
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Self::q(a) * Self::q(b)),
            Field::Prime { p } => {
                Scalar::Fp(((Self::fp(a) as u128 * Self::fp(b) as u128) % *p as u128) as u64)
            }
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(-Self::q(a)),
            Field::Prime { p } => {
                let v = Self::fp(a);
                Scalar::Fp(if v == 0 { 0 } else { p - v })
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match self {
            Field::Rational => {
                let r = Self::q(a);
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Q(r.recip()))
                }
            }
            Field::Prime { p } => {
                let v = Self::fp(a);
                if v == 0 {
                    return None;
                }
                // extended Euclid over i128
                let (mut r0, mut r1) = (*p as i128, v as i128);
                let (mut t0, mut t1) = (0i128, 1i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                debug_assert_eq!(r0, 1);
                Some(Scalar::Fp(t0.rem_euclid(*p as i128) as u64))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match self {
            Field::Rational => Self::q(a).is_zero(),
            Field::Prime { .. } => Self::fp(a) == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match self {
            Field::Rational => Self::q(a).is_one(),
            Field::Prime { .. } => Self::fp(a) == 1,
        }
    }

    /// Render a scalar in the wire format: reduced `a/b` with the denominator
    /// omitted when it is 1; prime-field values as the canonical decimal.
    pub fn render(&self, a: &Scalar) -> String {
        match self {
            Field::Rational => {
                let r = Self::q(a);
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Field::Prime { .. } => Self::fp(a).to_string(),
        }
    }

    /// Parse a scalar from the wire format. Rational: `a` or `a/b`.
    /// Prime field: a decimal integer (reduced mod p, sign allowed).
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            Field::Rational => {
                let mk = |t: &str| -> Result<BigInt> {
                    t.parse::<BigInt>()
                        .map_err(|_| CoreError::schema(format!("bad rational scalar `{s}`")))
                };
                if let Some((n, d)) = s.split_once('/') {
                    let n = mk(n)?;
                    let d = mk(d)?;
                    if d.is_zero() {
                        return Err(CoreError::schema(format!("zero denominator in `{s}`")));
                    }
                    Ok(Scalar::Q(BigRational::new(n, d)))
                } else {
                    Ok(Scalar::Q(BigRational::from_integer(mk(s)?)))
                }
            }
            Field::Prime { p } => {
                let n = s
                    .parse::<BigInt>()
                    .map_err(|_| CoreError::schema(format!("bad prime-field scalar `{s}`")))?;
                let m = BigInt::from(*p);
                let r = ((n % &m) + &m) % &m;
                let (_, digits) = r.to_u64_digits();
                Ok(Scalar::Fp(digits.first().copied().unwrap_or(0)))
            }
        }
    }

    /// Exact equality of scalars in this field.
    pub fn eq(&self, a: &Scalar, b: &Scalar) -> bool {
        match self {
            Field::Rational => Self::q(a) == Self::q(b),
            Field::Prime { .. } => Self::fp(a) == Self::fp(b),
        }
    }

    /// The characteristic as used by small-field fallbacks (`None` for Q).
    pub fn char_p(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime { p } => Some(*p),
        }
    }

    /// Absolute-value-style size used by pivot selection heuristics; for F_p
    /// any nonzero element ranks equal.
    pub fn is_negative(&self, a: &Scalar) -> bool {
        match self {
            Field::Rational => Self::q(a).is_negative(),
            Field::Prime { .. } => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip_and_reduction() {
        let f = Field::Rational;
        let a = f.parse("4/6").unwrap();
        assert_eq!(f.render(&a), "2/3");
        let b = f.parse("-8/4").unwrap();
        assert_eq!(f.render(&b), "-2");
        let c = f.add(&a, &b);
        assert_eq!(f.render(&c), "-4/3");
        assert!(f.eq(&f.mul(&a, &f.inv(&a).unwrap()), &f.one()));
    }

    #[test]
    fn prime_field_canonical_reps() {
        let f = Field::Prime { p: 5 };
        f.validate().unwrap();
        let a = f.parse("7").unwrap();
        assert_eq!(f.render(&a), "2");
        let b = f.parse("-1").unwrap();
        assert_eq!(f.render(&b), "4");
        assert!(f.eq(&f.add(&a, &b), &f.one())); // 2 + 4 = 6 = 1 mod 5
        let inv2 = f.inv(&a).unwrap();
        assert_eq!(f.render(&inv2), "3"); // 2*3 = 6 = 1 mod 5
    }

    #[test]
    fn primality_is_checked() {
        assert!(Field::Prime { p: 2 }.validate().is_ok());
        assert!(Field::Prime { p: 101 }.validate().is_ok());
        assert!(Field::Prime { p: 1 }.validate().is_err());
        assert!(Field::Prime { p: 91 }.validate().is_err()); // 7 * 13
        // large prime and large composite
        assert!(Field::Prime { p: 18446744073709551557 }.validate().is_ok());
        assert!(Field::Prime { p: 18446744073709551555 }.validate().is_err());
    }

    #[test]
    fn field_spec_serialization_shape() {
        let q: Field = serde_json::from_str(r#"{"kind":"Q"}"#).unwrap();
        assert_eq!(q, Field::Rational);
        let fp: Field = serde_json::from_str(r#"{"kind":"Fp","p":5}"#).unwrap();
        assert_eq!(fp, Field::Prime { p: 5 });
        assert_eq!(serde_json::to_string(&q).unwrap(), r#"{"kind":"Q"}"#);
    }
}
