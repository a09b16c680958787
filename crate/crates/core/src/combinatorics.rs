//! Exact big-integer combinatorics and enclosure-valued evaluation of the
//! composition sums C(n,D), Q(n,D), S(n,D).
//!
//! `c_bruteforce` enumerates the full index set and is the ground-truth
//! oracle; `c_recurrence` reaches the same values through
//! C(n,D) = sum_m C(n-1,m) - Q(n,D) with C(0,*) = 0.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::num::{Natural, RealEnclosure};

/// Default cap on the number of compositions brute force may enumerate.
pub const DEFAULT_ENUMERATION_CAP: u64 = 5_000_000;

/// Exponent vector (i_0,...,i_n) of a degree-D monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    parts: Vec<u32>,
}

impl MultiIndex {
    pub fn new(parts: Vec<u32>) -> Self {
        MultiIndex { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// i_0! * ... * i_n!
    pub fn factorial_product(&self) -> Natural {
        self.parts
            .iter()
            .fold(BigUint::one(), |acc, &p| acc * factorial(p as u64))
    }

    /// Component-wise sum (monomial product).
    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex {
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Iterator over all compositions of `d` into `n+1` parts, in descending
/// numeric-lex order, i.e. the lex order of the monomials x^I:
/// (d,0,...,0), ..., (0,...,0,d).
pub struct Compositions {
    cur: Option<Vec<u32>>,
}

pub fn compositions(n: u32, d: u32) -> Compositions {
    let mut first = vec![0u32; n as usize + 1];
    first[0] = d;
    Compositions { cur: Some(first) }
}

impl Iterator for Compositions {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let cur = self.cur.take()?;
        let out = MultiIndex::new(cur.clone());
        let n1 = cur.len();
        // rightmost position before the last that still has mass to move
        let mut k = None;
        for i in (0..n1 - 1).rev() {
            if cur[i] > 0 {
                k = Some(i);
                break;
            }
        }
        if let Some(k) = k {
            let mut next = cur;
            let moved: u32 = next[k + 1..].iter().sum();
            next[k] -= 1;
            for p in next[k + 1..].iter_mut() {
                *p = 0;
            }
            next[k + 1] = moved + 1;
            self.cur = Some(next);
        }
        Some(out)
    }
}

fn factorial_cache() -> &'static RwLock<Vec<BigUint>> {
    static CACHE: OnceLock<RwLock<Vec<BigUint>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigUint::one()]))
}

/// m! as an exact integer (cached).
pub fn factorial(m: u64) -> Natural {
    {
        let cache = factorial_cache().read().unwrap();
        if let Some(v) = cache.get(m as usize) {
            return v.clone();
        }
    }
    let mut cache = factorial_cache().write().unwrap();
    while (cache.len() as u64) <= m {
        let next = cache.last().unwrap() * BigUint::from(cache.len() as u64);
        cache.push(next);
    }
    cache[m as usize].clone()
}

/// Binomial coefficient C(a, b); 0 when b > a.
pub fn binomial(a: u64, b: u64) -> Natural {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..b {
        num *= BigUint::from(a - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// r(n,D) = C(n+D, D), the rank of degree-D forms in n+1 variables;
/// 0 for D < 0 (the module of sections is zero).
pub fn rank_r(n: u32, d: i64) -> Natural {
    if d < 0 {
        return BigUint::zero();
    }
    binomial(n as u64 + d as u64, d as u64)
}

/// r_1(n,D) = r(n,D) - r(n,D-delta), the rank of F_D; equals r(n,D) when
/// D < delta.
pub fn rank_r1(n: u32, d: u32, delta: u32) -> Natural {
    debug_assert!(delta >= 1);
    rank_r(n, d as i64) - rank_r(n, d as i64 - delta as i64)
}

type LnKey = (u64, u32);

fn ln_cache() -> &'static RwLock<HashMap<LnKey, RealEnclosure>> {
    static CACHE: OnceLock<RwLock<HashMap<LnKey, RealEnclosure>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Enclosure of ln(m) for m >= 1 (cached per precision).
pub fn ln_integer(m: u64, prec: u32) -> RealEnclosure {
    assert!(m >= 1);
    if m == 1 {
        return RealEnclosure::zero(prec);
    }
    let key = (m, prec);
    if let Some(v) = ln_cache().read().unwrap().get(&key) {
        return v.clone();
    }
    let v = RealEnclosure::from_i64(m as i64, prec).ln().expect("m >= 2");
    ln_cache().write().unwrap().insert(key, v.clone());
    v
}

fn logfact_cache() -> &'static RwLock<HashMap<u32, Vec<RealEnclosure>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Vec<RealEnclosure>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Enclosure of ln(m!); exact 0 for m in {0, 1}.
pub fn log_factorial(m: u64, prec: u32) -> RealEnclosure {
    {
        let cache = logfact_cache().read().unwrap();
        if let Some(v) = cache.get(&prec).and_then(|v| v.get(m as usize)) {
            return v.clone();
        }
    }
    let mut cache = logfact_cache().write().unwrap();
    let vec = cache.entry(prec).or_insert_with(|| vec![RealEnclosure::zero(prec)]);
    while (vec.len() as u64) <= m {
        let k = vec.len() as u64;
        let next = vec.last().unwrap().add(&ln_integer(k, prec));
        vec.push(next);
    }
    vec[m as usize].clone()
}

/// C(n,D) by direct enumeration of all compositions:
/// sum over |I| = D of ln(I!/D!). Errors out above the enumeration cap.
pub fn c_bruteforce(n: u32, d: u32, prec: u32, cap: u64) -> Result<RealEnclosure> {
    let count = rank_r(n, d as i64);
    if count > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            needed: count.to_string().parse().unwrap_or(u128::MAX),
            cap: cap as u128,
        });
    }
    let lf_d = log_factorial(d as u64, prec);
    let mut total = RealEnclosure::zero(prec);
    let mut terms = BigUint::zero();
    for idx in compositions(n, d) {
        let mut t = RealEnclosure::zero(prec);
        for &p in idx.parts() {
            t = t.add(&log_factorial(p as u64, prec));
        }
        total = total.add(&t);
        terms += BigUint::one();
    }
    debug_assert_eq!(terms, count);
    // subtract r(n,D) * ln(D!)
    let r_int = BigInt::from(count);
    Ok(total.sub(&lf_d.mul(&RealEnclosure::from_bigint(&r_int, prec))))
}

/// Q(n,D) = sum_{m=2}^{D} (r(n,m-1) - r(n,D-m)) ln m; 0 when D <= 1.
pub fn q_exact(n: u32, d: u32, prec: u32) -> RealEnclosure {
    let mut total = RealEnclosure::zero(prec);
    for m in 2..=d.max(1) {
        if m > d {
            break;
        }
        let coeff = BigInt::from(rank_r(n, m as i64 - 1)) - BigInt::from(rank_r(n, d as i64 - m as i64));
        if coeff.is_zero() {
            continue;
        }
        let term = ln_integer(m as u64, prec).mul(&RealEnclosure::from_bigint(&coeff, prec));
        total = total.add(&term);
    }
    total
}

/// S(n,D) = sum_{m=2}^{D} ((m-1)^n - (D-m)^n) ln m; 0 when D <= 1.
/// Requires n >= 1.
pub fn s_exact(n: u32, d: u32, prec: u32) -> RealEnclosure {
    assert!(n >= 1, "s_exact requires n >= 1");
    let mut total = RealEnclosure::zero(prec);
    for m in 2..=d.max(1) {
        if m > d {
            break;
        }
        let a = BigInt::from(m - 1).pow(n);
        let b = BigInt::from(d - m).pow(n);
        let coeff = a - b;
        if coeff.is_zero() {
            continue;
        }
        let term = ln_integer(m as u64, prec).mul(&RealEnclosure::from_bigint(&coeff, prec));
        total = total.add(&term);
    }
    total
}

type CKey = (u32, u32, u32);

fn c_cache() -> &'static RwLock<HashMap<CKey, RealEnclosure>> {
    static CACHE: OnceLock<RwLock<HashMap<CKey, RealEnclosure>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// C(n,D) through the memoized recursion C(n,D) = sum_m C(n-1,m) - Q(n,D),
/// base C(0,*) = 0. Agrees with `c_bruteforce` wherever both run.
pub fn c_recurrence(n: u32, d: u32, prec: u32) -> RealEnclosure {
    if n == 0 || d <= 1 {
        return RealEnclosure::zero(prec);
    }
    let key = (n, d, prec);
    if let Some(v) = c_cache().read().unwrap().get(&key) {
        return v.clone();
    }
    let mut sum = RealEnclosure::zero(prec);
    for m in 0..=d {
        sum = sum.add(&c_recurrence(n - 1, m, prec));
    }
    let v = sum.sub(&q_exact(n, d, prec));
    c_cache().write().unwrap().insert(key, v.clone());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::DEFAULT_PRECISION as P;

    fn nat(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), nat(10));
        assert_eq!(binomial(7, 0), nat(1));
        assert_eq!(binomial(4, 5), nat(0));
    }

    #[test]
    fn rank_examples() {
        for d in 0..6 {
            assert_eq!(rank_r(1, d), nat(d as u64 + 1));
        }
        assert_eq!(rank_r(2, 3), nat(10));
        assert_eq!(rank_r(4, -1), nat(0));
    }

    #[test]
    fn rank_r1_examples() {
        assert_eq!(rank_r1(2, 3, 2), nat(7));
        for d in 1..8 {
            assert_eq!(rank_r1(1, d, 1), nat(1));
        }
        // D < delta: F_D is all of E_D
        assert_eq!(rank_r1(3, 2, 5), rank_r(3, 2));
    }

    #[test]
    fn rank_sum_identity() {
        // r(n,D) = sum_{m<=D} r(n-1,m)
        for n in 1..=5u32 {
            for d in 0..=30i64 {
                let lhs = rank_r(n, d);
                let mut rhs = BigUint::zero();
                for m in 0..=d {
                    rhs += rank_r(n - 1, m);
                }
                assert_eq!(lhs, rhs, "n={n} D={d}");
            }
        }
    }

    #[test]
    fn compositions_order_and_count() {
        let got: Vec<Vec<u32>> = compositions(1, 2).map(|m| m.parts().to_vec()).collect();
        assert_eq!(got, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);

        let count = compositions(2, 3).count();
        assert_eq!(BigUint::from(count), rank_r(2, 3));

        let single: Vec<_> = compositions(0, 7).collect();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].parts(), &[7]);
    }

    #[test]
    fn log_factorial_examples() {
        let z = log_factorial(0, P);
        assert!(z.lo().is_zero() && z.hi().is_zero());
        let one = log_factorial(1, P);
        assert!(one.lo().is_zero() && one.hi().is_zero());
        let lf4 = log_factorial(4, P);
        let ln24 = RealEnclosure::from_i64(24, P).ln().unwrap();
        assert!(lf4.overlaps(&ln24));
    }

    #[test]
    fn stirling_sandwich() {
        // sqrt(2 pi) m^{m+1/2} e^{-m} <= m! <= e m^{m+1/2} e^{-m}
        for m in 1u64..=30 {
            let fact = RealEnclosure::from_bigint(&BigInt::from(factorial(m)), P);
            let pow = RealEnclosure::from_i64(m as i64, P)
                .pow_rational(&num_rational::BigRational::new(
                    (2 * m as i64 + 1).into(),
                    2.into(),
                ))
                .unwrap();
            let em = RealEnclosure::from_i64(-(m as i64), P).exp();
            let core = pow.mul(&em);
            let lower = RealEnclosure::pi(P).mul_i64(2).sqrt().unwrap().mul(&core);
            let upper = RealEnclosure::euler_e(P).mul(&core);
            assert!(lower.certainly_le(&fact), "m={m} lower");
            if m >= 2 {
                assert!(fact.certainly_le(&upper), "m={m} upper");
            } else {
                // m = 1 is the equality case e * 1 * e^{-1} = 1!
                assert!(fact.overlaps(&upper));
            }
        }
    }

    #[test]
    fn c_bruteforce_examples() {
        for d in 0..6 {
            let v = c_bruteforce(0, d, P, 1000).unwrap();
            assert!(v.lo().is_zero() && v.hi().is_zero());
        }
        let ln2 = ln_integer(2, P);
        let v12 = c_bruteforce(1, 2, P, 1000).unwrap();
        assert!(v12.overlaps(&ln2.neg()));
        let v22 = c_bruteforce(2, 2, P, 1000).unwrap();
        assert!(v22.overlaps(&ln2.mul_i64(-3)));
    }

    #[test]
    fn c_bruteforce_cap() {
        match c_bruteforce(4, 40, P, 1000) {
            Err(Error::CapExceeded { cap, .. }) => assert_eq!(cap, 1000),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn q_exact_examples() {
        let ln2 = ln_integer(2, P);
        let ln3 = ln_integer(3, P);
        assert!(q_exact(1, 2, P).overlaps(&ln2));
        let q_n1 = q_exact(5, 1, P);
        assert!(q_n1.lo().is_zero() && q_n1.hi().is_zero());
        assert!(q_exact(1, 3, P).overlaps(&ln3.mul_i64(2)));
    }

    #[test]
    fn s_exact_examples() {
        let ln2 = ln_integer(2, P);
        let ln3 = ln_integer(3, P);
        assert!(s_exact(1, 2, P).overlaps(&ln2));
        assert!(s_exact(1, 3, P).overlaps(&ln3.mul_i64(2)));
        let s_n1 = s_exact(4, 1, P);
        assert!(s_n1.lo().is_zero() && s_n1.hi().is_zero());
    }

    #[test]
    fn c_recurrence_matches_brute_and_identity() {
        let v = c_recurrence(2, 2, P);
        assert!(v.overlaps(&ln_integer(2, P).mul_i64(-3)));

        // C(1,D) = -sum_m ln C(D,m)
        for d in 2..=12u32 {
            let rec = c_recurrence(1, d, P);
            let mut direct = RealEnclosure::zero(P);
            for m in 0..=d {
                let b = BigInt::from(binomial(d as u64, m as u64));
                direct = direct.sub(&RealEnclosure::from_bigint(&b, P).ln().unwrap());
            }
            assert!(rec.overlaps(&direct), "D={d}");
        }

        let z = c_recurrence(3, 1, P);
        assert!(z.lo().is_zero() && z.hi().is_zero());
    }

    #[test]
    fn c_nonpositive_and_monotone() {
        for n in 1..=4u32 {
            let mut prev = RealEnclosure::zero(P);
            for d in 0..=12u32 {
                let v = c_recurrence(n, d, P);
                assert!(!v.lo().is_positive(), "C({n},{d}) sign");
                assert!(
                    v.lo().to_rational() <= prev.hi().to_rational(),
                    "C({n},{d}) monotone"
                );
                prev = v;
            }
        }
    }
}
