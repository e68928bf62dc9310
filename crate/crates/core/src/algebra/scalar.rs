use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::AlgebraError;

/// Largest admissible prime modulus (exclusive). Products of two residues
/// then fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// A validated prime modulus `2 <= p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if p >= MAX_MODULUS {
            return Err(AlgebraError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Modulus(p as u32))
    }

    pub fn get(self) -> u64 {
        self.0 as u64
    }
}

fn is_prime(n: u64) -> bool {
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

/// The scalar domain a matrix lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Integer,
    Rational,
    PrimeField(Modulus),
}

impl Domain {
    /// GF(p); fails unless `p` is a prime below `2^31`.
    pub fn prime_field(p: u64) -> Result<Self, AlgebraError> {
        Modulus::new(p).map(Domain::PrimeField)
    }

    /// GF(2).
    pub fn gf2() -> Self {
        Domain::PrimeField(Modulus(2))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Domain::Integer)
    }

    pub fn zero(self) -> Scalar {
        match self {
            Domain::Integer => Scalar::Integer(BigInt::zero()),
            Domain::Rational => Scalar::Rational(BigRational::zero()),
            Domain::PrimeField(modulus) => Scalar::Residue { value: 0, modulus },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Domain::Integer => Scalar::Integer(BigInt::one()),
            Domain::Rational => Scalar::Rational(BigRational::one()),
            Domain::PrimeField(modulus) => Scalar::Residue { value: 1, modulus },
        }
    }

    /// Normalizes a value into this domain: residues are reduced into
    /// `0..p`, rationals are put in lowest terms with a positive
    /// denominator. A zero denominator is always an error; a fraction is
    /// an integer only when it divides out.
    pub fn element(self, value: impl Into<Value>) -> Result<Scalar, AlgebraError> {
        let value = value.into();
        if let Value::Ratio(_, den) = &value {
            if den.is_zero() {
                return Err(AlgebraError::ZeroDenominator);
            }
        }
        match (self, value) {
            (Domain::Integer, Value::Int(n)) => Ok(Scalar::Integer(n)),
            (Domain::Integer, Value::Ratio(num, den)) => {
                let (q, r) = num.div_rem(&den);
                if r.is_zero() {
                    Ok(Scalar::Integer(q))
                } else {
                    Err(AlgebraError::NotInDomain {
                        value: format!("{num}/{den}"),
                        domain: self,
                    })
                }
            }
            (Domain::Rational, Value::Int(n)) => Ok(Scalar::Rational(BigRational::from_integer(n))),
            (Domain::Rational, Value::Ratio(num, den)) => {
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            (Domain::PrimeField(modulus), Value::Int(n)) => Ok(Scalar::Residue {
                value: reduce(&n, modulus),
                modulus,
            }),
            (Domain::PrimeField(modulus), Value::Ratio(num, den)) => {
                let d = reduce(&den, modulus);
                if d == 0 {
                    return Err(AlgebraError::NotInDomain {
                        value: format!("{num}/{den}"),
                        domain: self,
                    });
                }
                let n = reduce(&num, modulus) as u64;
                let p = modulus.get();
                let inv = pow_mod(d as u64, p - 2, p);
                Ok(Scalar::Residue {
                    value: (n * inv % p) as u32,
                    modulus,
                })
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Integer => f.write_str("integer"),
            Domain::Rational => f.write_str("rational"),
            Domain::PrimeField(m) => write!(f, "GF({})", m.get()),
        }
    }
}

impl Serialize for Domain {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn reduce(n: &BigInt, modulus: Modulus) -> u32 {
    let p = BigInt::from(modulus.get());
    n.mod_floor(&p).to_u32().expect("residue below modulus")
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Raw input accepted by [`Domain::element`]. A `Ratio` is not yet
/// validated; its denominator may be zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(BigInt),
    Ratio(BigInt, BigInt),
}

macro_rules! value_from_int {
    ($($t:ty),*) => {
        $(impl From<$t> for Value {
            fn from(n: $t) -> Self {
                Value::Int(BigInt::from(n))
            }
        })*
    };
}
value_from_int!(i32, i64, u32, u64, usize);

impl From<BigInt> for Value {
    fn from(n: BigInt) -> Self {
        Value::Int(n)
    }
}

impl From<BigRational> for Value {
    fn from(q: BigRational) -> Self {
        let (num, den) = q.into_raw();
        Value::Ratio(num, den)
    }
}

impl From<(i64, i64)> for Value {
    fn from((num, den): (i64, i64)) -> Self {
        Value::Ratio(BigInt::from(num), BigInt::from(den))
    }
}

impl From<Scalar> for Value {
    fn from(s: Scalar) -> Self {
        match s {
            Scalar::Integer(n) => Value::Int(n),
            Scalar::Rational(q) => q.into(),
            Scalar::Residue { value, .. } => Value::Int(BigInt::from(value)),
        }
    }
}

impl From<&Scalar> for Value {
    fn from(s: &Scalar) -> Self {
        s.clone().into()
    }
}

/// An element of one of the supported domains, always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Integer(BigInt),
    Rational(BigRational),
    Residue { value: u32, modulus: Modulus },
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Integer(_) => Domain::Integer,
            Scalar::Rational(_) => Domain::Rational,
            Scalar::Residue { modulus, .. } => Domain::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Integer(n) => n.is_zero(),
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Integer(n) => n.is_one(),
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// The integer value, for integer scalars and integral rationals.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Integer(n) => Some(n.clone()),
            Scalar::Rational(q) if q.is_integer() => Some(q.to_integer()),
            _ => None,
        }
    }

    /// Multiplicative inverse in a field; `None` for zero or integers
    /// other than ±1.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Integer(n) => {
                if n.abs().is_one() {
                    Some(self.clone())
                } else {
                    None
                }
            }
            Scalar::Rational(q) => Some(Scalar::Rational(q.recip())),
            Scalar::Residue { value, modulus } => {
                let p = modulus.get();
                Some(Scalar::Residue {
                    value: pow_mod(*value as u64, p - 2, p) as u32,
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = self.domain().one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `-1`, `0` or `1` for integers and rationals; `None` in GF(p).
    pub fn signum(&self) -> Option<Sign> {
        match self {
            Scalar::Integer(n) => Some(n.sign()),
            Scalar::Rational(q) => Some(q.numer().sign()),
            Scalar::Residue { .. } => None,
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar domain mismatch: {} vs {}", a.domain(), b.domain())
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a + b),
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, modulus: m })
                if modulus == m =>
            {
                let p = modulus.get();
                Scalar::Residue {
                    value: ((*a as u64 + *b as u64) % p) as u32,
                    modulus: *modulus,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Integer(a) => Scalar::Integer(-a),
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => {
                let p = modulus.get();
                Scalar::Residue {
                    value: ((p - *value as u64) % p) as u32,
                    modulus: *modulus,
                }
            }
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
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a * b),
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, modulus: m })
                if modulus == m =>
            {
                Scalar::Residue {
                    value: ((*a as u64 * *b as u64) % modulus.get()) as u32,
                    modulus: *modulus,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Integer(n) => write!(f, "{n}"),
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_validation() {
        assert!(Modulus::new(2).is_ok());
        assert!(Modulus::new(5).is_ok());
        assert_eq!(Modulus::new(1), Err(AlgebraError::NotPrime(1)));
        assert_eq!(Modulus::new(9), Err(AlgebraError::NotPrime(9)));
        assert_eq!(Modulus::new(1 << 31), Err(AlgebraError::ModulusTooLarge(1 << 31)));
        assert!(Modulus::new(2_147_483_647).is_ok());
    }

    #[test]
    fn residues_are_reduced() {
        let gf5 = Domain::prime_field(5).unwrap();
        assert_eq!(gf5.element(7).unwrap().to_string(), "2");
        assert_eq!(gf5.element(-1).unwrap().to_string(), "4");
        // 1/2 = 3 in GF(5)
        assert_eq!(gf5.element((1, 2)).unwrap().to_string(), "3");
        assert!(gf5.element((1, 5)).is_err());
    }

    #[test]
    fn rationals_in_lowest_terms() {
        let q = Domain::Rational.element((4, -6)).unwrap();
        assert_eq!(q.to_string(), "-2/3");
        assert_eq!(Domain::Rational.element((1, 0)), Err(AlgebraError::ZeroDenominator));
        assert_eq!(Domain::Integer.element((1, 0)), Err(AlgebraError::ZeroDenominator));
    }

    #[test]
    fn integer_domain_accepts_integral_fractions_only() {
        assert_eq!(Domain::Integer.element((6, 3)).unwrap().to_string(), "2");
        assert!(matches!(
            Domain::Integer.element((1, 2)),
            Err(AlgebraError::NotInDomain { .. })
        ));
    }

    #[test]
    fn gf2_arithmetic() {
        let one = Domain::gf2().one();
        assert!((&one + &one).is_zero());
        assert_eq!(-&one, one);
    }

    #[test]
    fn field_inverses() {
        let gf7 = Domain::prime_field(7).unwrap();
        for n in 1..7 {
            let x = gf7.element(n).unwrap();
            assert!((&x * &x.inverse().unwrap()).is_one());
        }
        assert!(gf7.zero().inverse().is_none());
        let q = Domain::Rational.element((-3, 4)).unwrap();
        assert!((&q * &q.inverse().unwrap()).is_one());
        assert!(Domain::Integer.element(2).unwrap().inverse().is_none());
    }
}
