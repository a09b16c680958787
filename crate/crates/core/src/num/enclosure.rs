//! Certified real enclosures.
//!
//! A [`RealEnclosure`] is a pair of dyadic endpoints `lo <= hi` that is
//! guaranteed to contain the real number it stands for. Every operation
//! rounds outward only, so an inequality `a.hi < b.lo` is a proof that
//! `a < b`. Transcendental kernels (ln, exp, sqrt, pi) run in fixed point
//! with explicit one-sided error accounting.

use super::dyadic::Dyadic;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 128;
pub const MIN_PRECISION: u32 = 64;
pub const MAX_PRECISION: u32 = 4096;

/// Guard bits used by the scalar kernels on top of the requested precision.
const GUARD: u32 = 32;

pub fn clamp_precision(prec: u32) -> u32 {
    prec.clamp(MIN_PRECISION, MAX_PRECISION)
}

#[derive(Clone, Debug)]
pub struct RealEnclosure {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl RealEnclosure {
    pub fn from_endpoints(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        debug_assert!(lo <= hi, "inverted enclosure");
        RealEnclosure { lo, hi, prec }
    }

    pub fn exact_dyadic(d: Dyadic, prec: u32) -> Self {
        RealEnclosure { lo: d.clone(), hi: d, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact_dyadic(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::exact_dyadic(Dyadic::one(), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        Self::exact_dyadic(Dyadic::from_bigint(n.clone()), prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::exact_dyadic(Dyadic::from_i64(n), prec)
    }

    /// Tight directed enclosure of a rational.
    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let w = prec + GUARD;
        let num = r.numer();
        let den = r.denom(); // > 0 by Ratio invariant
        let scaled = num << w as u64;
        let lo = scaled.div_floor(den);
        let exact = (&lo * den) == scaled;
        let hi = if exact { lo.clone() } else { &lo + 1 };
        RealEnclosure {
            lo: Dyadic::new(lo, -(w as i64)).round_down(prec),
            hi: Dyadic::new(hi, -(w as i64)).round_up(prec),
            prec,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint(&self) -> BigRational {
        (self.lo.to_rational() + self.hi.to_rational())
            / BigRational::from_integer(BigInt::from(2))
    }

    fn out(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        RealEnclosure {
            lo: lo.round_down(prec),
            hi: hi.round_up(prec),
            prec,
        }
    }

    fn join_prec(&self, other: &Self) -> u32 {
        self.prec.max(other.prec)
    }

    pub fn neg(&self) -> Self {
        RealEnclosure {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.join_prec(other);
        Self::out(self.lo.add(&other.lo), self.hi.add(&other.hi), prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.join_prec(other);
        let c = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::out(lo, hi, prec)
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = self.lo.abs().max(self.hi.abs());
            Self::out(Dyadic::zero(), hi, self.prec)
        }
    }

    pub fn min(&self, other: &Self) -> Self {
        let prec = self.join_prec(other);
        Self::out(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().min(other.hi.clone()),
            prec,
        )
    }

    pub fn max(&self, other: &Self) -> Self {
        let prec = self.join_prec(other);
        Self::out(
            self.lo.clone().max(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
            prec,
        )
    }

    /// Smallest enclosure containing both.
    pub fn hull(&self, other: &Self) -> Self {
        let prec = self.join_prec(other);
        Self::out(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
            prec,
        )
    }

    /// Widen both endpoints outward by `pad >= 0`.
    pub fn widen(&self, pad: &Dyadic) -> Self {
        debug_assert!(!pad.is_negative());
        Self::out(self.lo.sub(pad), self.hi.add(pad), self.prec)
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        if k >= 0 {
            Self::out(self.lo.mul_i64(k), self.hi.mul_i64(k), self.prec)
        } else {
            Self::out(self.hi.mul_i64(k), self.lo.mul_i64(k), self.prec)
        }
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        self.add(&Self::from_rational(r, self.prec))
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        self.mul(&Self::from_rational(r, self.prec))
    }

    /// Reciprocal; the enclosure must be certified away from zero.
    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::Domain("reciprocal of an enclosure containing 0".into()));
        }
        let prec = self.prec;
        let lo = recip_directed(&self.hi, prec, false);
        let hi = recip_directed(&self.lo, prec, true);
        Ok(Self::out(lo, hi, prec))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn div_i64(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("division by zero".into()));
        }
        self.div(&Self::from_i64(k, self.prec))
    }

    pub fn pow_i64(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.pow_i64(-k)?.recip();
        }
        let mut acc = Self::one(self.prec);
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// x^(p/q) for certified-positive x (integer and half-integer exponents
    /// take exact fast paths).
    pub fn pow_rational(&self, e: &BigRational) -> Result<Self> {
        let denom = e.denom();
        if denom.is_one() {
            let k = e.numer().to_i64().ok_or_else(|| {
                Error::Domain("exponent too large".into())
            })?;
            return self.pow_i64(k);
        }
        if *denom == BigInt::from(2) {
            let k = e.numer().to_i64().ok_or_else(|| {
                Error::Domain("exponent too large".into())
            })?;
            if k >= 0 {
                return self.pow_i64(k)?.sqrt();
            }
            return self.pow_i64(-k)?.sqrt()?.recip();
        }
        let lx = self.ln()?;
        lx.mul_rational(e).exp()
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.lo.is_negative() {
            return Err(Error::Domain("sqrt of an enclosure reaching below 0".into()));
        }
        let prec = self.prec;
        let (lo, _) = self.lo.sqrt_down(prec + GUARD);
        let (hi_f, exact) = self.hi.sqrt_down(prec + GUARD);
        let hi = if exact {
            hi_f
        } else {
            hi_f.add(&Dyadic::new(BigInt::one(), hi_f.exp))
        };
        Ok(Self::out(lo, hi, prec))
    }

    /// Natural logarithm; requires a certified-positive enclosure.
    pub fn ln(&self) -> Result<Self> {
        if !self.lo.is_positive() {
            return Err(Error::Domain("ln of an enclosure reaching 0 or below".into()));
        }
        let prec = self.prec;
        let (lo, _) = ln_dyadic(&self.lo, prec);
        let (_, hi) = ln_dyadic(&self.hi, prec);
        Ok(Self::out(lo, hi, prec))
    }

    pub fn exp(&self) -> Self {
        let prec = self.prec;
        let lo = exp_directed(&self.lo, prec, false);
        let hi = exp_directed(&self.hi, prec, true);
        Self::out(lo, hi, prec)
    }

    pub fn pi(prec: u32) -> Self {
        let w = prec + GUARD;
        let (lo, hi) = pi_fp(w);
        Self::out(
            Dyadic::new(lo, -(w as i64)),
            Dyadic::new(hi, -(w as i64)),
            prec,
        )
    }

    pub fn ln2(prec: u32) -> Self {
        let w = prec + GUARD;
        let (lo, hi) = ln2_fp(w);
        Self::out(
            Dyadic::new(lo, -(w as i64)),
            Dyadic::new(hi, -(w as i64)),
            prec,
        )
    }

    pub fn euler_e(prec: u32) -> Self {
        Self::one(prec).exp()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        self.lo.to_rational() <= *r && *r <= self.hi.to_rational()
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Certified `self <= other` (true only when provable).
    pub fn certainly_le(&self, other: &Self) -> bool {
        self.hi <= other.lo
    }

    /// Certified `self < other`.
    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    pub fn is_finite_width(&self) -> bool {
        true // endpoints are always finite dyadics
    }

    /// Outward decimal endpoints with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (
            decimal_directed(&self.lo.to_rational(), digits, false),
            decimal_directed(&self.hi.to_rational(), digits, true),
        )
    }
}

impl fmt::Display for RealEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal(15);
        write!(f, "[{lo}, {hi}]")
    }
}

/// Directed decimal rendering of an exact rational.
pub fn decimal_directed(r: &BigRational, digits: usize, up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r * BigRational::from_integer(scale.clone());
    let n = if up {
        scaled.ceil().to_integer()
    } else {
        scaled.floor().to_integer()
    };
    let neg = n.is_negative();
    let mag = n.magnitude().to_string();
    let mag = if mag.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - mag.len()), mag)
    } else {
        mag
    };
    let split = mag.len() - digits;
    let (int_part, frac_part) = mag.split_at(split);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(int_part);
    if digits > 0 {
        s.push('.');
        s.push_str(frac_part);
    }
    s
}

// ---------------------------------------------------------------------------
// scalar kernels (fixed point at scale 2^w)
// ---------------------------------------------------------------------------

fn fp_one(w: u32) -> BigInt {
    BigInt::one() << w as u64
}

fn mul_fp_down(a: &BigInt, b: &BigInt, w: u32) -> BigInt {
    (a * b) >> w as u64
}

fn mul_fp_up(a: &BigInt, b: &BigInt, w: u32) -> BigInt {
    -((-(a * b)) >> w as u64)
}

fn div_floor_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn div_ceil_big(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Lower fixed-point bound of atanh(t) = sum t^(2k+1)/(2k+1), 0 <= t <= ~1/3.
fn atanh_fp_lower(t: &BigInt, w: u32) -> BigInt {
    debug_assert!(!t.is_negative());
    if t.is_zero() {
        return BigInt::zero();
    }
    let t2 = mul_fp_down(t, t, w);
    let mut p = t.clone();
    let mut s = t.clone();
    let mut k: u64 = 1;
    loop {
        p = mul_fp_down(&p, &t2, w);
        if p.is_zero() {
            break;
        }
        let term = div_floor_big(&p, &BigInt::from(2 * k + 1));
        if term.is_zero() {
            break;
        }
        s += term;
        k += 1;
    }
    s
}

/// Upper fixed-point bound of atanh(t); all roundings upward plus a tail pad.
fn atanh_fp_upper(t: &BigInt, w: u32) -> BigInt {
    debug_assert!(!t.is_negative());
    if t.is_zero() {
        return BigInt::zero();
    }
    let t2 = mul_fp_up(t, t, w);
    let mut p = t.clone();
    let mut s = t.clone();
    let mut k: u64 = 1;
    let four = BigInt::from(4);
    loop {
        p = mul_fp_up(&p, &t2, w);
        if p <= four {
            // remaining true tail <= p/(1-t^2) <= 2p <= 8 ulps
            s += 8;
            break;
        }
        s += div_ceil_big(&p, &BigInt::from(2 * k + 1));
        k += 1;
    }
    s
}

type FpPair = (BigInt, BigInt);

fn fp_cache(which: &'static str) -> &'static Mutex<HashMap<(u32, &'static str), FpPair>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, &'static str), FpPair>>> = OnceLock::new();
    let _ = which;
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// ln 2 at scale 2^w, as (lower, upper).
fn ln2_fp(w: u32) -> FpPair {
    if let Some(v) = fp_cache("ln2").lock().unwrap().get(&(w, "ln2")) {
        return v.clone();
    }
    // ln 2 = 2 atanh(1/3)
    let three = BigInt::from(3);
    let t_lo = div_floor_big(&fp_one(w), &three);
    let t_hi = &t_lo + 1;
    let lo = atanh_fp_lower(&t_lo, w) << 1u32;
    let hi = atanh_fp_upper(&t_hi, w) << 1u32;
    let pair = (lo, hi);
    fp_cache("ln2")
        .lock()
        .unwrap()
        .insert((w, "ln2"), pair.clone());
    pair
}

/// arctan(1/m) at scale 2^w as (lower, upper), for integer m >= 2.
fn atan_inv_fp(m: u64, w: u32) -> FpPair {
    let mbig = BigInt::from(m);
    let m2 = &mbig * &mbig;
    let mut denom_pow = mbig.clone(); // m^(2k+1)
    let mut s = BigInt::zero();
    let mut k: u64 = 0;
    let mut ops: u64 = 0;
    loop {
        let d = &denom_pow * BigInt::from(2 * k + 1);
        let term = div_floor_big(&fp_one(w), &d);
        if term.is_zero() {
            break;
        }
        if k % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
        ops += 1;
        denom_pow *= &m2;
        k += 1;
    }
    // each floor costs <= 1 ulp; first omitted term < 1 ulp
    let pad = BigInt::from(ops + 2);
    (&s - &pad, &s + &pad)
}

/// pi at scale 2^w (Machin: pi = 16 atan(1/5) - 4 atan(1/239)).
fn pi_fp(w: u32) -> FpPair {
    if let Some(v) = fp_cache("pi").lock().unwrap().get(&(w, "pi")) {
        return v.clone();
    }
    let (a_lo, a_hi) = atan_inv_fp(5, w);
    let (b_lo, b_hi) = atan_inv_fp(239, w);
    let lo = (&a_lo << 4u32) - (&b_hi << 2u32);
    let hi = (&a_hi << 4u32) - (&b_lo << 2u32);
    let pair = (lo, hi);
    fp_cache("pi").lock().unwrap().insert((w, "pi"), pair.clone());
    pair
}

/// Rigorous enclosure of ln(d) for a positive dyadic, as dyadic endpoints.
fn ln_dyadic(d: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    assert!(d.is_positive(), "ln of nonpositive dyadic");
    let w = prec + GUARD;
    let bits = d.mant_bits();
    let shift = bits as i64 - 1 + d.exp; // d = x * 2^shift with x in [1,2)
    // fixed-point x at scale 2^w, directed
    let sh = w as i64 - (bits as i64 - 1);
    let (x_lo, x_hi) = if sh >= 0 {
        let x = d.mant.clone() << sh as u64;
        (x.clone(), x)
    } else {
        let k = (-sh) as u64;
        let lo = &d.mant >> k;
        let exact = (&lo << k) == d.mant;
        let hi = if exact { lo.clone() } else { &lo + 1 };
        (lo, hi)
    };
    let one = fp_one(w);
    let (lnx_lo, lnx_hi) = if x_lo == one && x_hi == one {
        (BigInt::zero(), BigInt::zero())
    } else {
        // t = (x-1)/(x+1), increasing in x
        let t_lo = div_floor_big(&((&x_lo - &one) << w as u64), &(&x_lo + &one));
        let t_hi = div_ceil_big(&((&x_hi - &one) << w as u64), &(&x_hi + &one));
        (
            atanh_fp_lower(&t_lo, w) << 1u32,
            atanh_fp_upper(&t_hi, w) << 1u32,
        )
    };
    let (l2_lo, l2_hi) = if shift == 0 {
        (BigInt::zero(), BigInt::zero())
    } else {
        let (a, b) = ln2_fp(w);
        if shift > 0 {
            (a * shift, b * shift)
        } else {
            (b * shift, a * shift)
        }
    };
    (
        Dyadic::new(lnx_lo + l2_lo, -(w as i64)),
        Dyadic::new(lnx_hi + l2_hi, -(w as i64)),
    )
}

/// Lower fixed-point bound of exp(r) for 0 <= r (fp scale 2^w).
fn exp_fp_lower(r: &BigInt, w: u32) -> BigInt {
    debug_assert!(!r.is_negative());
    let mut term = fp_one(w);
    let mut s = fp_one(w);
    let mut j: u64 = 1;
    loop {
        term = div_floor_big(&mul_fp_down(&term, r, w), &BigInt::from(j));
        if term.is_zero() {
            break;
        }
        s += &term;
        j += 1;
    }
    s
}

/// Upper fixed-point bound of exp(r) for 0 <= r <= 2 (fp scale 2^w).
fn exp_fp_upper(r: &BigInt, w: u32) -> BigInt {
    debug_assert!(!r.is_negative());
    debug_assert!(*r <= fp_one(w) << 1u32, "exp argument not reduced");
    let mut term = fp_one(w);
    let mut s = fp_one(w);
    let mut j: u64 = 1;
    let four = BigInt::from(4);
    loop {
        term = div_ceil_big(&mul_fp_up(&term, r, w), &BigInt::from(j));
        // once j > 4 the term ratio r/(j+1) <= 2/5, so the tail is < 2*term
        if j > 4 && term <= four {
            s += 16;
            break;
        }
        s += &term;
        j += 1;
    }
    s
}

/// Directed exp of a dyadic endpoint.
fn exp_directed(x: &Dyadic, prec: u32, up: bool) -> Dyadic {
    if x.is_zero() {
        return Dyadic::one();
    }
    if x.is_negative() {
        // exp(x) = 1 / exp(-x), swap the direction through the reciprocal
        let e = exp_directed(&x.neg(), prec + GUARD, !up);
        return recip_directed(&e, prec, up);
    }
    let w = prec + GUARD;
    // reduce: x = k*ln2 + r with r in [0, ~1.5)
    let approx = x.to_f64() / std::f64::consts::LN_2;
    let mut k = approx.floor() as i64;
    if k < 0 {
        k = 0;
    }
    let (l2_lo, l2_hi) = ln2_fp(w);
    let x_fp_lo = {
        // x * 2^w, directed down
        let sh = w as i64 + x.exp;
        if sh >= 0 {
            x.mant.clone() << sh as u64
        } else {
            &x.mant >> (-sh) as u64
        }
    };
    let x_fp_hi = {
        let sh = w as i64 + x.exp;
        if sh >= 0 {
            x.mant.clone() << sh as u64
        } else {
            div_ceil_big(&x.mant, &(BigInt::one() << (-sh) as u64))
        }
    };
    // r bounds; nudge k so that 0 <= r_lo and r_hi <= 3/2
    let cap = (fp_one(w) * 3u32) >> 1u32;
    let (mut r_lo, mut r_hi);
    let mut guard_iters = 0u32;
    loop {
        r_lo = &x_fp_lo - &l2_hi * k;
        r_hi = &x_fp_hi - &l2_lo * k;
        guard_iters += 1;
        if guard_iters > 1000 {
            break;
        }
        if r_hi > cap {
            k += 1;
            continue;
        }
        if r_lo.is_negative() && k > 0 {
            k -= 1;
            continue;
        }
        break;
    }
    if r_lo.is_negative() {
        r_lo = BigInt::zero();
    }
    let v = if up {
        exp_fp_upper(&r_hi, w)
    } else {
        exp_fp_lower(&r_lo, w)
    };
    Dyadic::new(v, k - w as i64)
}

/// Directed reciprocal of a nonzero dyadic.
fn recip_directed(d: &Dyadic, prec: u32, up: bool) -> Dyadic {
    assert!(!d.is_zero());
    let bits = d.mant_bits();
    let k = bits + prec as u64 + GUARD as u64;
    let num = BigInt::one() << k;
    let q = if up {
        div_ceil_big(&num, &d.mant)
    } else {
        div_floor_big(&num, &d.mant)
    };
    Dyadic::new(q, -(k as i64) - d.exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rational::parse_rational;

    fn enc_rat(s: &str, prec: u32) -> RealEnclosure {
        RealEnclosure::from_rational(&parse_rational(s).unwrap(), prec)
    }

    fn assert_contains_dec(e: &RealEnclosure, decimal: &str) {
        let v = parse_rational(decimal).unwrap();
        assert!(
            e.contains_rational(&v),
            "{} not in [{}, {}]",
            decimal,
            e.lo().to_rational(),
            e.hi().to_rational()
        );
    }

    fn width_below(e: &RealEnclosure, epsilon: &str) {
        let w = e.width().to_rational();
        assert!(w < parse_rational(epsilon).unwrap(), "width {} too large", w);
    }

    #[test]
    fn ln2_reference() {
        for prec in [64, 128, 256, 1024] {
            let l = RealEnclosure::ln2(prec);
            assert_contains_dec(&l, "0.693147180559945309417232121458176568");
            width_below(&l, "1/1000000000000");
        }
    }

    #[test]
    fn pi_reference() {
        let p = RealEnclosure::pi(128);
        assert_contains_dec(&p, "3.141592653589793238462643383279502884");
        width_below(&p, "1/100000000000000000000000000000");
    }

    #[test]
    fn e_reference() {
        let e = RealEnclosure::euler_e(128);
        assert_contains_dec(&e, "2.718281828459045235360287471352662497");
        width_below(&e, "1/10000000000000000000000000");
    }

    #[test]
    fn ln_of_one_is_exact_zero() {
        let one = RealEnclosure::one(128);
        let l = one.ln().unwrap();
        assert!(l.lo().is_zero() && l.hi().is_zero());
    }

    #[test]
    fn ln_24_reference() {
        let x = RealEnclosure::from_i64(24, 128);
        let l = x.ln().unwrap();
        assert_contains_dec(&l, "3.178053830347945619646941601297055408");
        width_below(&l, "1/1000000000000000000000000000");
    }

    #[test]
    fn exp_ln_roundtrip_contains() {
        for s in ["2", "3/7", "145/3", "1/1000", "9999/10"] {
            let r = parse_rational(s).unwrap();
            let x = RealEnclosure::from_rational(&r, 192);
            let y = x.ln().unwrap().exp();
            assert!(y.contains_rational(&r), "{s}: {y}");
        }
    }

    #[test]
    fn exp_negative_contains() {
        let x = enc_rat("-3/2", 128);
        let e = x.exp();
        // e^{-1.5} = 0.2231301601484298...
        assert_contains_dec(&e, "0.22313016014842982893328047076401252");
        width_below(&e, "1/100000000000000000000");
    }

    #[test]
    fn sqrt_reference() {
        let two = RealEnclosure::from_i64(2, 128);
        let r = two.sqrt().unwrap();
        assert_contains_dec(&r, "1.414213562373095048801688724209698078");
        let four = RealEnclosure::from_i64(4, 128);
        let r4 = four.sqrt().unwrap();
        assert!(r4.contains_rational(&parse_rational("2").unwrap()));
    }

    #[test]
    fn division_and_pow() {
        let a = enc_rat("7/3", 128);
        let b = enc_rat("2/5", 128);
        let q = a.div(&b).unwrap();
        assert!(q.contains_rational(&parse_rational("35/6").unwrap()));
        let p = a.pow_i64(5).unwrap();
        assert!(p.contains_rational(&parse_rational("16807/243").unwrap()));
        let hp = RealEnclosure::from_i64(2, 128)
            .pow_rational(&parse_rational("3/2").unwrap())
            .unwrap();
        // 2^{3/2} = 2.8284271247...
        assert_contains_dec(&hp, "2.828427124746190097603377448419396157");
    }

    #[test]
    fn certified_compare() {
        let a = enc_rat("1/3", 128);
        let b = enc_rat("1/2", 128);
        assert!(a.certainly_lt(&b));
        assert!(!b.certainly_le(&a));
    }

    #[test]
    fn decimal_directed_output() {
        let e = enc_rat("1/3", 128);
        let (lo, hi) = e.to_decimal(6);
        assert_eq!(lo, "0.333333");
        assert_eq!(hi, "0.333334");
        let neg = enc_rat("-1/3", 128);
        let (lo, hi) = neg.to_decimal(6);
        assert_eq!(lo, "-0.333334");
        assert_eq!(hi, "-0.333333");
    }
}
