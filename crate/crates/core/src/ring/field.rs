//! Exact coefficient fields.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::Error;

/// An exact field. Elements are plain values; all arithmetic goes through the
/// field object so that runtime parameters (the prime) stay out of the values.
/// Hence the `from_*` constructors take `&self`.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Error> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    /// Sign and absolute value for printing. The absolute value is rendered
    /// with the digits only, e.g. `(true, "3")` for -3.
    fn display(&self, a: &Self::Elem) -> (bool, String);

    /// Whether `display` produces a plain integer that the polynomial grammar
    /// can read back.
    fn is_integral(&self, a: &Self::Elem) -> bool;

    /// A random element suitable for generic choices (random linear forms).
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn characteristic(&self) -> u64;

    fn describe(&self) -> String;
}

/// The prime field F_p with p < 2^31; elements are canonical residues in [0, p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, Error> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, n: i64) -> u32 {
        self.reduce_i64(n)
    }
    fn from_bigint(&self, n: &BigInt) -> u32 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u32().expect("residue fits")
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on i64
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, *a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        Some(self.reduce_i64(t))
    }
    fn display(&self, a: &u32) -> (bool, String) {
        // symmetric representative
        if *a > self.p / 2 {
            (true, (self.p - *a).to_string())
        } else {
            (false, a.to_string())
        }
    }
    fn is_integral(&self, _a: &u32) -> bool {
        true
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(1..self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn describe(&self) -> String {
        format!("fp:{}", self.p)
    }
}

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn display(&self, a: &BigRational) -> (bool, String) {
        let abs = a.abs();
        let s = if abs.is_integer() {
            abs.numer().to_string()
        } else {
            format!("{}/{}", abs.numer(), abs.denom())
        };
        (a.is_negative(), s)
    }
    fn is_integral(&self, a: &BigRational) -> bool {
        a.is_integer()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let mut n = 0i64;
        while n == 0 {
            n = rng.gen_range(-10..=10);
        }
        self.from_i64(n)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn describe(&self) -> String {
        "q".to_string()
    }
}

/// Runtime choice of coefficient field, as read from instance files and flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldSpec {
    Prime(u32),
    Rational,
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(32003)
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u32 = p
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad prime in {s:?}")))?;
            PrimeField::new(p)?;
            return Ok(FieldSpec::Prime(p));
        }
        Err(Error::InvalidField(format!("expected fp:<p> or q, got {s:?}")))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
            FieldSpec::Rational => write!(f, "q"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_inverse_round_trip() {
        let f = PrimeField::new(32003).unwrap();
        for a in [1u32, 2, 3, 17, 32002, 16001] {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert!(f.inv(&0).is_none());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(32004).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn residues_are_canonical() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.from_i64(15), 1);
        assert_eq!(f.from_bigint(&BigInt::from(-15)), 6);
        assert_eq!(f.display(&6), (true, "1".to_string()));
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = Rationals;
        let a = q.div(&q.from_i64(4), &q.from_i64(-6)).unwrap();
        assert_eq!(a, BigRational::new(BigInt::from(-2), BigInt::from(3)));
        assert_eq!(*a.denom(), BigInt::from(3));
        assert!(q.div(&q.one(), &q.zero()).is_err());
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("fp:32003".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(32003));
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert!("fp:10".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
    }
}
