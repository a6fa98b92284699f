//! Commutative rings with exact equality.
//!
//! Three concrete rings are provided: the integers, the integers modulo `m`,
//! and polynomials over the integers in a fixed list of named indeterminates.
//! Every [`RingValue`] carries enough information to recover its [`Ring`], so
//! binary operations detect mixed-ring arguments and report them as errors.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// `Z/m` for `m >= 2`. Primality is decided once, at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    value: u64,
    prime: bool,
}

impl Modulus {
    pub fn new(value: u64) -> Result<Self> {
        if value < 2 {
            return Err(Error::InvalidModulus(value));
        }
        Ok(Modulus {
            value,
            prime: is_prime(value),
        })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn is_prime(self) -> bool {
        self.prime
    }
}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A ring instance.
#[derive(Clone, Debug)]
pub enum Ring {
    Integers,
    Modular(Modulus),
    Polynomial(Arc<[String]>),
}

impl Ring {
    pub fn modular(m: u64) -> Result<Ring> {
        Modulus::new(m).map(Ring::Modular)
    }

    /// Polynomial ring over `Z` in the given indeterminates, in declared order.
    pub fn polynomial<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Ring {
        Ring::Polynomial(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    pub fn zero(&self) -> RingValue {
        match self {
            Ring::Integers => RingValue::Int(BigInt::zero()),
            Ring::Modular(m) => RingValue::Mod(ModInt {
                residue: 0,
                modulus: *m,
            }),
            Ring::Polynomial(vars) => RingValue::Poly(Polynomial::zero(vars.clone())),
        }
    }

    pub fn one(&self) -> RingValue {
        self.from_bigint(&BigInt::one())
    }

    pub fn from_i64(&self, v: i64) -> RingValue {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> RingValue {
        match self {
            Ring::Integers => RingValue::Int(v.clone()),
            Ring::Modular(m) => {
                let r = v.mod_floor(&BigInt::from(m.value));
                RingValue::Mod(ModInt {
                    residue: r.to_u64().expect("residue below modulus fits in u64"),
                    modulus: *m,
                })
            }
            Ring::Polynomial(vars) => {
                RingValue::Poly(Polynomial::constant(vars.clone(), v.clone()))
            }
        }
    }

    /// The indeterminate called `name`, if this is a polynomial ring declaring it.
    pub fn var(&self, name: &str) -> Option<RingValue> {
        match self {
            Ring::Polynomial(vars) => vars
                .iter()
                .position(|v| v == name)
                .map(|i| RingValue::Poly(Polynomial::variable(vars.clone(), i))),
            _ => None,
        }
    }

    /// Whether exact division is supported: `Z`, `Z[vars]`, and `Z/p` for prime `p`.
    pub fn is_integral_domain(&self) -> bool {
        match self {
            Ring::Integers | Ring::Polynomial(_) => true,
            Ring::Modular(m) => m.prime,
        }
    }

    pub fn contains(&self, value: &RingValue) -> bool {
        match (self, value) {
            (Ring::Integers, RingValue::Int(_)) => true,
            (Ring::Modular(m), RingValue::Mod(v)) => *m == v.modulus,
            (Ring::Polynomial(vars), RingValue::Poly(p)) => {
                Arc::ptr_eq(vars, p.vars()) || vars[..] == p.vars()[..]
            }
            _ => false,
        }
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Ring::Integers, Ring::Integers) => true,
            (Ring::Modular(a), Ring::Modular(b)) => a == b,
            (Ring::Polynomial(a), Ring::Polynomial(b)) => Arc::ptr_eq(a, b) || a[..] == b[..],
            _ => false,
        }
    }
}

impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("Z"),
            Ring::Modular(m) => write!(f, "Z/{}", m.value),
            Ring::Polynomial(vars) => write!(f, "Z[{} vars]", vars.len()),
        }
    }
}

/// Parses the CLI ring selector: `int`, `mod:<m>` or `poly`.
///
/// `poly` yields a polynomial ring with no indeterminates; callers that need
/// symbolic entries build their own ring with [`Ring::polynomial`].
impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        let parse_err = |msg: String| Error::Parse { line: 0, msg };
        match s {
            "int" => Ok(Ring::Integers),
            "poly" => Ok(Ring::polynomial(Vec::<String>::new())),
            _ => match s.strip_prefix("mod:") {
                Some(m) => {
                    let m = m
                        .parse::<u64>()
                        .map_err(|e| parse_err(format!("bad modulus {m:?}: {e}")))?;
                    Ring::modular(m)
                }
                None => Err(parse_err(format!(
                    "unknown ring {s:?} (expected int, mod:<m> or poly)"
                ))),
            },
        }
    }
}

/// Residue class in `Z/m`, always reduced to `0..m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModInt {
    residue: u64,
    modulus: Modulus,
}

impl ModInt {
    pub fn residue(self) -> u64 {
        self.residue
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    fn with(self, residue: u128) -> ModInt {
        ModInt {
            residue: (residue % u128::from(self.modulus.value)) as u64,
            modulus: self.modulus,
        }
    }

    fn inverse(self) -> Option<ModInt> {
        let m = i128::from(self.modulus.value);
        let (mut r0, mut r1) = (m, i128::from(self.residue));
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        (r0 == 1).then(|| self.with(t0.rem_euclid(m) as u128))
    }
}

/// An element of one of the concrete rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingValue {
    Int(BigInt),
    Mod(ModInt),
    Poly(Polynomial),
}

fn mismatch(a: &RingValue, b: &RingValue) -> Error {
    Error::RingMismatch {
        left: a.ring().to_string(),
        right: b.ring().to_string(),
    }
}

#[allow(clippy::should_implement_trait)]
impl RingValue {
    pub fn ring(&self) -> Ring {
        match self {
            RingValue::Int(_) => Ring::Integers,
            RingValue::Mod(v) => Ring::Modular(v.modulus),
            RingValue::Poly(p) => Ring::Polynomial(p.vars().clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingValue::Int(v) => v.is_zero(),
            RingValue::Mod(v) => v.residue == 0,
            RingValue::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingValue::Int(v) => v.is_one(),
            RingValue::Mod(v) => v.residue == 1,
            RingValue::Poly(p) => *p == Polynomial::constant(p.vars().clone(), BigInt::one()),
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            RingValue::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Polynomial> {
        match self {
            RingValue::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn add(&self, other: &RingValue) -> Result<RingValue> {
        match (self, other) {
            (RingValue::Int(a), RingValue::Int(b)) => Ok(RingValue::Int(a + b)),
            (RingValue::Mod(a), RingValue::Mod(b)) if a.modulus == b.modulus => Ok(RingValue::Mod(
                a.with(u128::from(a.residue) + u128::from(b.residue)),
            )),
            (RingValue::Poly(a), RingValue::Poly(b)) if a.same_ring(b) => {
                Ok(RingValue::Poly(a.add(b)))
            }
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn neg(&self) -> RingValue {
        match self {
            RingValue::Int(a) => RingValue::Int(-a),
            RingValue::Mod(a) => {
                RingValue::Mod(a.with(u128::from(a.modulus.value) - u128::from(a.residue)))
            }
            RingValue::Poly(a) => RingValue::Poly(a.neg()),
        }
    }

    pub fn sub(&self, other: &RingValue) -> Result<RingValue> {
        match (self, other) {
            (RingValue::Int(a), RingValue::Int(b)) => Ok(RingValue::Int(a - b)),
            (RingValue::Poly(a), RingValue::Poly(b)) if a.same_ring(b) => {
                Ok(RingValue::Poly(a.sub(b)))
            }
            _ => self.add(&other.neg()),
        }
    }

    pub fn mul(&self, other: &RingValue) -> Result<RingValue> {
        match (self, other) {
            (RingValue::Int(a), RingValue::Int(b)) => Ok(RingValue::Int(a * b)),
            (RingValue::Mod(a), RingValue::Mod(b)) if a.modulus == b.modulus => Ok(RingValue::Mod(
                a.with(u128::from(a.residue) * u128::from(b.residue)),
            )),
            (RingValue::Poly(a), RingValue::Poly(b)) if a.same_ring(b) => {
                Ok(RingValue::Poly(a.mul(b)))
            }
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn pow(&self, exp: u32) -> RingValue {
        let mut acc = self.ring().one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// `q` with `q * divisor == self`, if one exists.
    ///
    /// Defined on integral domains only; `Z/m` with composite `m` is rejected.
    pub fn exact_divide(&self, divisor: &RingValue) -> Result<Option<RingValue>> {
        if self.ring() != divisor.ring() {
            return Err(mismatch(self, divisor));
        }
        let ring = self.ring();
        if !ring.is_integral_domain() {
            return Err(Error::NotIntegralDomain(ring.to_string()));
        }
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, divisor) {
            (RingValue::Int(a), RingValue::Int(b)) => {
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(RingValue::Int(q))
            }
            (RingValue::Mod(a), RingValue::Mod(b)) => {
                let inv = b.inverse().ok_or_else(|| {
                    Error::Internal(format!("{} has no inverse mod prime", b.residue))
                })?;
                Some(RingValue::Mod(
                    a.with(u128::from(a.residue) * u128::from(inv.residue)),
                ))
            }
            (RingValue::Poly(a), RingValue::Poly(b)) => a.exact_divide(b).map(RingValue::Poly),
            _ => unreachable!("ring equality checked above"),
        })
    }

    /// Sign of an integer value; `None` for other rings.
    pub fn int_signum(&self) -> Option<i32> {
        self.as_int().map(|v| {
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingValue::Int(v) => write!(f, "{v}"),
            RingValue::Mod(v) => write!(f, "{}", v.residue),
            RingValue::Poly(p) => write!(f, "{p}"),
        }
    }
}

/// Sums a sequence of values of `ring`; the empty sum is zero.
pub fn sum<'a, I>(ring: &Ring, values: I) -> Result<RingValue>
where
    I: IntoIterator<Item = &'a RingValue>,
{
    values
        .into_iter()
        .try_fold(ring.zero(), |acc, v| acc.add(v))
}

/// Multiplies a sequence of values of `ring`; the empty product is one.
pub fn product<'a, I>(ring: &Ring, values: I) -> Result<RingValue>
where
    I: IntoIterator<Item = &'a RingValue>,
{
    values.into_iter().try_fold(ring.one(), |acc, v| acc.mul(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_arithmetic() {
        let z = Ring::Integers;
        assert_eq!(z.from_i64(2).add(&z.from_i64(3)).unwrap(), z.from_i64(5));
        let x = z.from_i64(-17);
        assert_eq!(z.zero().add(&x).unwrap(), x);
        assert_eq!(z.one().mul(&x).unwrap(), x);
    }

    #[test]
    fn modular_arithmetic() {
        let r = Ring::modular(5).unwrap();
        assert_eq!(r.from_i64(3).mul(&r.from_i64(4)).unwrap(), r.from_i64(2));
        assert_eq!(r.from_i64(-1), r.from_i64(4));
        assert_eq!(r.from_i64(2).sub(&r.from_i64(4)).unwrap(), r.from_i64(3));
    }

    #[test]
    fn polynomial_monomial_product() {
        let r = Ring::polynomial(["a", "b"]);
        let ab = r.var("a").unwrap().mul(&r.var("b").unwrap()).unwrap();
        let p = ab.as_poly().unwrap();
        let (m, c) = p.terms().next().unwrap();
        assert_eq!(m.exponents(), &[1, 1]);
        assert!(c.is_one());
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn polynomial_cancellation() {
        let r = Ring::polynomial(["x", "y"]);
        let (x, y) = (r.var("x").unwrap(), r.var("y").unwrap());
        let s = x.add(&y).unwrap().add(&x.sub(&y).unwrap()).unwrap();
        assert_eq!(s, x.mul(&r.from_i64(2)).unwrap());
    }

    #[test]
    fn integer_exact_division() {
        let z = Ring::Integers;
        assert_eq!(
            z.from_i64(-30).exact_divide(&z.from_i64(10)).unwrap(),
            Some(z.from_i64(-3))
        );
        assert_eq!(z.from_i64(7).exact_divide(&z.from_i64(2)).unwrap(), None);
        assert_eq!(
            z.from_i64(7).exact_divide(&z.zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn polynomial_exact_division() {
        let r = Ring::polynomial(["x"]);
        let x = r.var("x").unwrap();
        let num = x.mul(&x).unwrap().sub(&r.one()).unwrap();
        let den = x.sub(&r.one()).unwrap();
        assert_eq!(
            num.exact_divide(&den).unwrap(),
            Some(x.add(&r.one()).unwrap())
        );
    }

    #[test]
    fn modular_division_requires_prime() {
        let p = Ring::modular(7).unwrap();
        let q = p.from_i64(3).exact_divide(&p.from_i64(5)).unwrap().unwrap();
        assert_eq!(q.mul(&p.from_i64(5)).unwrap(), p.from_i64(3));

        let c = Ring::modular(6).unwrap();
        assert!(matches!(
            c.from_i64(3).exact_divide(&c.from_i64(5)),
            Err(Error::NotIntegralDomain(_))
        ));
    }

    #[test]
    fn mixed_rings_are_rejected() {
        let a = Ring::Integers.one();
        let b = Ring::modular(5).unwrap().one();
        assert!(matches!(a.add(&b), Err(Error::RingMismatch { .. })));
        let c = Ring::modular(7).unwrap().one();
        assert!(matches!(b.mul(&c), Err(Error::RingMismatch { .. })));
        let p = Ring::polynomial(["x"]).one();
        let q = Ring::polynomial(["y"]).one();
        assert!(matches!(p.add(&q), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn modulus_validation_and_primality() {
        assert_eq!(Modulus::new(1), Err(Error::InvalidModulus(1)));
        assert!(Modulus::new(2).unwrap().is_prime());
        assert!(Modulus::new(97).unwrap().is_prime());
        assert!(!Modulus::new(91).unwrap().is_prime());
    }

    #[test]
    fn ring_selector_parsing() {
        assert_eq!("int".parse::<Ring>().unwrap(), Ring::Integers);
        assert_eq!(
            "mod:11".parse::<Ring>().unwrap(),
            Ring::modular(11).unwrap()
        );
        assert!(matches!(
            "poly".parse::<Ring>().unwrap(),
            Ring::Polynomial(_)
        ));
        assert!("mod:x".parse::<Ring>().is_err());
        assert!("real".parse::<Ring>().is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let z = Ring::Integers;
        assert_eq!(z.from_i64(3).pow(0), z.one());
        assert_eq!(z.from_i64(-2).pow(5), z.from_i64(-32));
        let r = Ring::modular(13).unwrap();
        assert_eq!(r.from_i64(2).pow(12), r.one());
    }
}
