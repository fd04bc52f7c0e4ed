//! Exact scalar fields: the rationals and small prime fields.
//!
//! Every computation in the crate is generic over [`Field`]. Structure
//! constants are integral, so any algebra built over `Rational` can be
//! specialised to `Fp<P>` for a prime `P` by reducing them.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::Error;

pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `None` when the denominator vanishes in this field.
    fn from_rational(r: &Rational) -> Option<Self>;
    /// 0 for the rationals.
    fn characteristic() -> u32;
    fn name() -> String;

    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }

    /// A rational representative (residues map to `0..p`).
    fn lift(&self) -> Rational;
}

/// Runtime choice of field, used by front ends to pick a monomorphisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rational,
    Prime(u32),
}

/// Primes with a compiled `Fp` instance.
pub const SUPPORTED_PRIMES: [u32; 5] = [3, 5, 7, 11, 13];

impl FieldKind {
    pub fn label(&self) -> String {
        match self {
            FieldKind::Rational => "q".to_string(),
            FieldKind::Prime(p) => format!("f{p}"),
        }
    }

    /// Non-fatal diagnostics about the choice (characteristic 3 is allowed but flagged).
    pub fn warning(&self) -> Option<String> {
        match self {
            FieldKind::Prime(3) => Some(
                "characteristic 3 is below the default bound p > 3; results are indicative only"
                    .to_string(),
            ),
            _ => None,
        }
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "rational" || t == "qq" {
            return Ok(FieldKind::Rational);
        }
        let digits = t.strip_prefix('f').unwrap_or(&t);
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::Field(format!("unknown field `{s}`")))?;
        if p == 2 {
            return Err(Error::Field(
                "characteristic 2 is not supported: parity arguments need char != 2".into(),
            ));
        }
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::Field(format!(
                "unsupported prime {p}; available: {SUPPORTED_PRIMES:?}"
            )));
        }
        Ok(FieldKind::Prime(p))
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Dispatch a generic body over the runtime field choice.
///
/// `with_field!(kind, F => expr)` evaluates `expr` with the type alias `F`
/// bound to the matching field type.
#[macro_export]
macro_rules! with_field {
    ($kind:expr, $F:ident => $body:expr) => {{
        match $kind {
            $crate::scalar::FieldKind::Rational => {
                type $F = $crate::scalar::Rational;
                $body
            }
            $crate::scalar::FieldKind::Prime(3) => {
                type $F = $crate::scalar::Fp<3>;
                $body
            }
            $crate::scalar::FieldKind::Prime(5) => {
                type $F = $crate::scalar::Fp<5>;
                $body
            }
            $crate::scalar::FieldKind::Prime(7) => {
                type $F = $crate::scalar::Fp<7>;
                $body
            }
            $crate::scalar::FieldKind::Prime(11) => {
                type $F = $crate::scalar::Fp<11>;
                $body
            }
            $crate::scalar::FieldKind::Prime(13) => {
                type $F = $crate::scalar::Fp<13>;
                $body
            }
            $crate::scalar::FieldKind::Prime(p) => panic!("no Fp instance for p = {}", p),
        }
    }};
}

// ---------------------------------------------------------------------------
// Rationals

/// Exact rational number.
///
/// Values whose reduced numerator and denominator fit in `i64` are always
/// stored in the `Small` variant, so structural equality is value equality.
#[derive(Clone, Debug)]
pub enum Rational {
    Small(i64, i64),
    Big(BigRational),
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let (mut n, mut d) = (num, den);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rational::Small(a, b),
            _ => Rational::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Rational::Small(a, b),
            _ => Rational::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(a, _) => BigInt::from(*a),
            Rational::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, b) => BigInt::from(*b),
            Rational::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, b) => *b == 1,
            Rational::Big(r) => r.is_integer(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Rational::Small(a, 1) => Some(*a),
            _ => None,
        }
    }

    pub fn abs(&self) -> Rational {
        match self {
            Rational::Small(a, b) => Rational::from_i128((*a as i128).abs(), *b as i128),
            Rational::Big(r) => Rational::from_big(r.abs()),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(a, _) => a.signum() as i32,
            Rational::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    fn binop(
        &self,
        other: &Self,
        small: impl Fn(i128, i128, i128, i128) -> Option<(i128, i128)>,
        big: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            if let Some((n, m)) = small(*a as i128, *b as i128, *c as i128, *d as i128) {
                return Self::from_i128(n, m);
            }
        }
        Self::from_big(big(&self.to_big(), &other.to_big()))
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            (Rational::Big(x), Rational::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rational::Small(a, b) => {
                0u8.hash(state);
                a.hash(state);
                b.hash(state);
            }
            Rational::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(a, 1) => write!(f, "{a}"),
            Rational::Small(a, b) => write!(f, "{a}/{b}"),
            Rational::Big(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("invalid rational `{s}`"),
        };
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

fn checked_add(a: i128, b: i128, c: i128, d: i128) -> Option<(i128, i128)> {
    if b == d {
        return Some((a.checked_add(c)?, b));
    }
    let n = a.checked_mul(d)?.checked_add(c.checked_mul(b)?)?;
    Some((n, b.checked_mul(d)?))
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::Small(0, 1)
    }

    fn one() -> Self {
        Rational::Small(1, 1)
    }

    fn from_i64(v: i64) -> Self {
        Rational::Small(v, 1)
    }

    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }

    fn characteristic() -> u32 {
        0
    }

    fn name() -> String {
        "q".to_string()
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        self.binop(other, checked_add, |x, y| x + y)
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        self.binop(
            other,
            |a, b, c, d| Some((a.checked_mul(c)?, b.checked_mul(d)?)),
            |x, y| x * y,
        )
    }

    fn neg(&self) -> Self {
        match self {
            Rational::Small(a, b) if *a != i64::MIN => Rational::Small(-a, *b),
            _ => Self::from_big(-self.to_big()),
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Rational::Small(a, b) => Self::from_i128(*b as i128, *a as i128),
            Rational::Big(r) => Self::from_big(r.recip()),
        }
    }

    fn lift(&self) -> Rational {
        self.clone()
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// Residue class modulo the odd prime `P`, stored in `0..P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u32) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P as u64;
            }
            base = base * base % P as u64;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp(1)
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn from_rational(r: &Rational) -> Option<Self> {
        let p = BigInt::from(P);
        let n = (r.numer() % &p + &p) % &p;
        let d = (r.denom() % &p + &p) % &p;
        if d.is_zero() {
            return None;
        }
        let n = Fp::<P>(n.to_u32().unwrap());
        let d = Fp::<P>(d.to_u32().unwrap());
        Some(n.mul(&d.inv()))
    }

    fn characteristic() -> u32 {
        P
    }

    fn name() -> String {
        format!("f{P}")
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn is_one(&self) -> bool {
        self.0 == 1
    }

    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Fp(if s >= P { s - P } else { s })
    }

    fn sub(&self, other: &Self) -> Self {
        Fp(if self.0 >= other.0 {
            self.0 - other.0
        } else {
            self.0 + P - other.0
        })
    }

    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 * other.0 as u64) % P as u64) as u32)
    }

    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }

    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        self.0 = ((self.0 as u64 + a.0 as u64 * b.0 as u64) % P as u64) as u32;
    }

    fn lift(&self) -> Rational {
        Rational::from_i64(self.0 as i64)
    }
}

/// Smallest positive integer multiple of a rational vector, made primitive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        if !x.is_zero() {
            lcm = lcm.lcm(&x.denom());
        }
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Reduce a rational vector to `F`, scaling away denominators first.
pub fn reduce_vector<F: Field>(v: &[Rational]) -> Vec<F> {
    primitive_integer_vector(v)
        .into_iter()
        .map(|x| F::from_rational(&Rational::from_big(BigRational::from_integer(x))).unwrap())
        .collect()
}
