//! Exact scalars over ℚ and prime fields 𝔽_p with p ∉ {2, 3}.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted prime modulus; keeps residue products inside `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDescriptor {
    Rational,
    Prime { p: u64 },
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Result<Self> {
        let f = FieldDescriptor::Prime { p };
        f.check()?;
        Ok(f)
    }

    /// Rejects composite moduli and characteristics 2 and 3.
    pub fn check(&self) -> Result<()> {
        match *self {
            FieldDescriptor::Rational => Ok(()),
            FieldDescriptor::Prime { p } => {
                if p == 2 || p == 3 {
                    return Err(Error::InvalidField(format!("characteristic {p} is excluded")));
                }
                if p > MAX_PRIME {
                    return Err(Error::InvalidField(format!("modulus {p} exceeds {MAX_PRIME}")));
                }
                if !is_prime(p) {
                    return Err(Error::InvalidField(format!("{p} is not prime")));
                }
                Ok(())
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldDescriptor::Rational => 0,
            FieldDescriptor::Prime { p } => p,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "Q"),
            FieldDescriptor::Prime { p } => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rationals that fit in machine words stay unboxed; everything else is a `BigRational`.
/// The representation is canonical: `Big` is only used when `Small` cannot hold the value.
#[derive(Clone)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
    Mod(u32, u32),
}

#[derive(Clone)]
pub struct Scalar(Repr);

fn small_from_i128(n: i128, d: i128) -> Repr {
    debug_assert!(d != 0);
    let g = gcd_i128(n, d);
    let (mut n, mut d) = (n / g, d / g);
    if d < 0 {
        n = -n;
        d = -d;
    }
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(n), Ok(d)) if n != i64::MIN => Repr::Small(n, d),
        _ => Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a as i128
    }
}

fn from_big(r: BigRational) -> Repr {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) if n != i64::MIN => Repr::Small(n, d),
        _ => Repr::Big(r),
    }
}

fn to_big(r: &Repr) -> BigRational {
    match r {
        Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
        Repr::Big(b) => b.clone(),
        Repr::Mod(..) => unreachable!("prime residue used as rational"),
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn reduce_big(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = n.mod_floor(&m);
    r.to_u64().expect("residue fits")
}

impl Scalar {
    pub fn zero(field: FieldDescriptor) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: FieldDescriptor) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: FieldDescriptor, n: i64) -> Self {
        match field {
            FieldDescriptor::Rational => Scalar(small_from_i128(n as i128, 1)),
            FieldDescriptor::Prime { p } => {
                Scalar(Repr::Mod((n as i128).rem_euclid(p as i128) as u32, p as u32))
            }
        }
    }

    pub fn from_bigint(field: FieldDescriptor, n: &BigInt) -> Self {
        match field {
            FieldDescriptor::Rational => Scalar(from_big(BigRational::from_integer(n.clone()))),
            FieldDescriptor::Prime { p } => Scalar(Repr::Mod(reduce_big(n, p) as u32, p as u32)),
        }
    }

    pub fn from_ratio(field: FieldDescriptor, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Scalar::from_int(field, num).checked_div(&Scalar::from_int(field, den))
    }

    pub fn field(&self) -> FieldDescriptor {
        match self.0 {
            Repr::Small(..) | Repr::Big(_) => FieldDescriptor::Rational,
            Repr::Mod(_, p) => FieldDescriptor::Prime { p: p as u64 },
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n == 0,
            Repr::Big(_) => false,
            Repr::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small(n, d) => *n == 1 && *d == 1,
            Repr::Big(_) => false,
            Repr::Mod(v, _) => *v == 1,
        }
    }

    pub fn is_minus_one(&self) -> bool {
        match &self.0 {
            Repr::Small(n, d) => *n == -1 && *d == 1,
            Repr::Big(_) => false,
            Repr::Mod(v, p) => *v + 1 == *p,
        }
    }

    /// Parses `"a"` or `"a/b"` into the given field.
    pub fn parse(text: &str, field: FieldDescriptor) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::MalformedScalar(text.to_string());
        let (a, b) = match text.split_once('/') {
            Some((a, b)) => (a, Some(b)),
            None => (text, None),
        };
        let int = |s: &str| -> Result<BigInt> {
            let s = s.trim();
            if s.is_empty() || s.contains(char::is_whitespace) {
                return Err(bad());
            }
            s.parse::<BigInt>().map_err(|_| bad())
        };
        let num = int(a)?;
        let den = match b {
            Some(b) => int(b)?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match field {
            FieldDescriptor::Rational => Ok(Scalar(from_big(BigRational::new(num, den)))),
            FieldDescriptor::Prime { .. } => {
                let d = Scalar::from_bigint(field, &den);
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Scalar::from_bigint(field, &num).checked_div(&d)
            }
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        let (a, b) = (self.field(), other.field());
        if a == b {
            Ok(())
        } else {
            Err(Error::FieldMismatch(a, b))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(match &self.0 {
            Repr::Small(n, d) => small_from_i128(*d as i128, *n as i128),
            Repr::Big(b) => from_big(b.recip()),
            Repr::Mod(v, p) => Repr::Mod(mod_pow(*v as u64, *p as u64 - 2, *p as u64) as u32, *p),
        }))
    }

    pub fn pow(&self, n: i64) -> Result<Scalar> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Scalar::one(self.field());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    fn neg_ref(&self) -> Scalar {
        Scalar(match &self.0 {
            Repr::Small(n, d) => Repr::Small(-n, *d),
            Repr::Big(b) => from_big(-b),
            Repr::Mod(v, p) => Repr::Mod(if *v == 0 { 0 } else { p - v }, *p),
        })
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        Scalar(match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    small_from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    match (a * d).checked_add(c * b) {
                        Some(n) => small_from_i128(n, b * d),
                        None => from_big(to_big(&self.0) + to_big(&other.0)),
                    }
                }
            }
            (Repr::Mod(a, p), Repr::Mod(b, q)) => {
                assert_eq!(p, q, "mixed prime fields");
                let s = *a as u64 + *b as u64;
                let p64 = *p as u64;
                Repr::Mod((if s >= p64 { s - p64 } else { s }) as u32, *p)
            }
            (Repr::Mod(..), _) | (_, Repr::Mod(..)) => panic!("mixed fields in scalar arithmetic"),
            (x, y) => from_big(to_big(x) + to_big(y)),
        })
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        Scalar(match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    let m = *a as i128 * *c as i128;
                    small_from_i128(m, 1)
                } else {
                    small_from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
                }
            }
            (Repr::Mod(a, p), Repr::Mod(b, q)) => {
                assert_eq!(p, q, "mixed prime fields");
                Repr::Mod((*a as u64 * *b as u64 % *p as u64) as u32, *p)
            }
            (Repr::Mod(..), _) | (_, Repr::Mod(..)) => panic!("mixed fields in scalar arithmetic"),
            (x, y) => from_big(to_big(x) * to_big(y)),
        })
    }

    /// `self += a * b`, the inner step of every contraction.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let prod = a.mul_unchecked(b);
        *self = self.add_unchecked(&prod);
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Repr::Mod(..) => None,
            r => Some(to_big(r)),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            (Repr::Mod(a, p), Repr::Mod(b, q)) => a == b && p == q,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
            Repr::Mod(v, p) => {
                2u8.hash(state);
                v.hash(state);
                p.hash(state);
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
            Repr::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.add_unchecked(rhs)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.add_unchecked(&rhs.neg_ref())
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.add_unchecked(&rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.mul_unchecked(&rhs)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.add_unchecked(rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.mul_unchecked(rhs);
    }
}

/// Coordinate vector helpers shared by the linear-algebra layers.
pub fn zeros(field: FieldDescriptor, n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(field); n]
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn axpy(acc: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    if a.is_zero() {
        return;
    }
    for (s, xi) in acc.iter_mut().zip(x) {
        s.add_mul(a, xi);
    }
}

pub fn scale_vec(a: &Scalar, x: &[Scalar]) -> Vec<Scalar> {
    x.iter().map(|xi| a * xi).collect()
}

pub fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("[{}]", parts.join(", "))
}
