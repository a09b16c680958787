//! Arbitrary-precision dyadic numbers `mant * 2^exp`.
//!
//! These are the endpoints of [`crate::num::RealEnclosure`]. Addition,
//! subtraction and multiplication are exact; precision is only lost at
//! explicit directed-rounding points, which always round a lower endpoint
//! toward -inf and an upper endpoint toward +inf.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug)]
pub struct Dyadic {
    pub(crate) mant: BigInt,
    pub(crate) exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic { mant: n, exp: 0 }
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic { mant: BigInt::from(n), exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    /// Number of significant bits of the mantissa.
    pub fn mant_bits(&self) -> u64 {
        self.mant.magnitude().bits()
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Exact sum.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic { mant: a + b, exp: e }
    }

    /// Exact difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact product.
    pub fn mul(&self, other: &Self) -> Self {
        Dyadic {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        Dyadic { mant: &self.mant * k, exp: self.exp }
    }

    /// Exact scaling by 2^k.
    pub fn shl(&self, k: i64) -> Self {
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Round toward -inf keeping `prec` significant bits.
    pub fn round_down(&self, prec: u32) -> Self {
        self.round(prec, false)
    }

    /// Round toward +inf keeping `prec` significant bits.
    pub fn round_up(&self, prec: u32) -> Self {
        self.round(prec, true)
    }

    fn round(&self, prec: u32, up: bool) -> Self {
        let bits = self.mant_bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        // BigInt >> rounds toward -inf
        let mant = if up {
            -((-&self.mant) >> k)
        } else {
            &self.mant >> k
        };
        Dyadic { mant, exp: self.exp + k as i64 }
    }

    /// Exact conversion to a rational.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Lossy conversion, for size heuristics only (never certification).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant_bits();
        let (m, e) = if bits > 64 {
            let k = bits - 64;
            (&self.mant >> k, self.exp + k as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let (sign, digits) = m.to_u64_digits();
        let mut v = digits.first().copied().unwrap_or(0) as f64;
        if sign == Sign::Minus {
            v = -v;
        }
        if e > 1 << 16 {
            return if v >= 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if e < -(1 << 16) {
            return 0.0;
        }
        v * (e as f64).exp2()
    }

    /// Directed square root: (floor, is_exact). Requires self >= 0.
    pub fn sqrt_down(&self, prec: u32) -> (Dyadic, bool) {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return (Dyadic::zero(), true);
        }
        let mut mant = self.mant.clone();
        let mut exp = self.exp;
        if exp % 2 != 0 {
            mant <<= 1u32;
            exp -= 1;
        }
        let bits = mant.magnitude().bits();
        let want = 2 * (prec as u64 + 2);
        let s = if bits < want { (want - bits).div_ceil(2) } else { 0 };
        mant <<= 2 * s;
        exp -= 2 * s as i64;
        let r = mant.sqrt();
        let exact = (&r * &r) == mant;
        (Dyadic { mant: r, exp: exp / 2 }, exact)
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let ls = self.mant.sign();
        let rs = other.mant.sign();
        if ls != rs {
            return if ls == Sign::Minus || rs == Sign::Plus {
                Ordering::Less
            } else {
                Ordering::Greater
            };
        }
        if ls == Sign::NoSign {
            return Ordering::Equal;
        }
        // same nonzero sign: compare magnitudes via (bit length + exp) first
        let la = self.mant_bits() as i128 + self.exp as i128;
        let lb = other.mant_bits() as i128 + other.exp as i128;
        let mag = if la != lb {
            la.cmp(&lb)
        } else {
            let e = self.exp.min(other.exp);
            let a = self.mant.magnitude() << (self.exp - e) as u64;
            let b = other.mant.magnitude() << (other.exp - e) as u64;
            a.cmp(&b)
        };
        if ls == Sign::Plus {
            mag
        } else {
            mag.reverse()
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}
