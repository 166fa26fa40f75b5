//! Exact integers with an inline `i64` fast path.
//!
//! Almost every value met while reducing algebra bases fits in a machine word,
//! so arithmetic is attempted with checked `i64` operations first and only
//! promoted to [`BigInt`] on overflow. Results are demoted again whenever they
//! fit, which keeps the representation canonical: a value is stored as `Big`
//! only if it does not fit in an `i64`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    Big(BigInt),
}

/// An arbitrary-precision integer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Int(Repr);

impl Int {
    pub const ZERO: Int = Int(Repr::Small(0));
    pub const ONE: Int = Int(Repr::Small(1));

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int(Repr::Small(v)),
            None => Int(Repr::Big(b)),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(v) => *v as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Non-negative greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Int) -> Int {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => {
                let g = a.unsigned_abs().gcd(&b.unsigned_abs());
                match i64::try_from(g) {
                    Ok(v) => Int(Repr::Small(v)),
                    Err(_) => Int(Repr::Big(BigInt::from(g))),
                }
            }
            _ => Int::from_big(self.to_bigint().gcd(&other.to_bigint())),
        }
    }

    /// Division that is known to leave no remainder.
    pub fn div_exact(&self, d: &Int) -> Int {
        debug_assert!(!d.is_zero());
        match (&self.0, &d.0) {
            (Repr::Small(a), Repr::Small(b)) => match a.checked_div(*b) {
                Some(q) => Int(Repr::Small(q)),
                None => Int::from_big(BigInt::from(*a) / BigInt::from(*b)),
            },
            _ => Int::from_big(self.to_bigint() / d.to_bigint()),
        }
    }

    /// `a*x - b*y`, the elimination step used throughout the echelon code.
    #[inline]
    pub fn mul_sub(a: &Int, x: &Int, b: &Int, y: &Int) -> Int {
        if let (Repr::Small(a), Repr::Small(x), Repr::Small(b), Repr::Small(y)) =
            (&a.0, &x.0, &b.0, &y.0)
        {
            if let (Some(p), Some(q)) = (a.checked_mul(*x), b.checked_mul(*y)) {
                if let Some(r) = p.checked_sub(q) {
                    return Int(Repr::Small(r));
                }
            }
        }
        Int::from_big(a.to_bigint() * x.to_bigint() - b.to_bigint() * y.to_bigint())
    }

    /// `self += a * b`.
    #[inline]
    pub fn add_mul(&mut self, a: &Int, b: &Int) {
        if let (Repr::Small(s), Repr::Small(a), Repr::Small(b)) = (&self.0, &a.0, &b.0) {
            if let Some(r) = a.checked_mul(*b).and_then(|p| s.checked_add(p)) {
                self.0 = Repr::Small(r);
                return;
            }
        }
        *self = Int::from_big(self.to_bigint() + a.to_bigint() * b.to_bigint());
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int(Repr::Small(v))
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int(Repr::Small(v as i64))
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl From<&Int> for BigInt {
    fn from(v: &Int) -> Self {
        v.to_bigint()
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => Int(Repr::Small(n)),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Repr::Big(b) => Int::from_big(-b),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident, $op:tt) => {
        impl $trait<&Int> for &Int {
            type Output = Int;
            #[inline]
            fn $method(self, rhs: &Int) -> Int {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if let Some(r) = a.$checked(*b) {
                        return Int(Repr::Small(r));
                    }
                }
                Int::from_big(self.to_bigint() $op rhs.to_bigint())
            }
        }
        impl $trait<Int> for Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Divides a vector by the gcd of its entries and makes the first nonzero
/// entry positive. Returns `false` for the zero vector.
pub fn make_primitive(v: &mut [Int]) -> bool {
    let mut g = Int::ZERO;
    let mut lead_negative = None;
    for x in v.iter() {
        if x.is_zero() {
            continue;
        }
        if lead_negative.is_none() {
            lead_negative = Some(x.is_negative());
        }
        g = g.gcd(x);
        if g.is_one() && lead_negative == Some(false) {
            return true;
        }
    }
    let Some(negative) = lead_negative else {
        return false;
    };
    let g = if negative { -g } else { g };
    if !g.is_one() {
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.div_exact(&g);
            }
        }
    }
    true
}
