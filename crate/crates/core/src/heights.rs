//! Heights over Q: Weil and Arakelov heights of rational points, classical
//! heights and Bombieri-norm slopes of hypersurfaces.
//!
//! Working over Q with primitive representatives makes every finite-place
//! sum vanish, so each height reduces to one archimedean term that we
//! enclose rigorously; the comparison predicates reduce to exact integer or
//! rational inequalities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::combinatorics::factorial;
use crate::error::{Error, Result};
use crate::num::RealEnclosure;
use crate::poly::HomogPoly;

/// Primitive-integer projective point with canonical sign (gcd 1, first
/// nonzero coordinate positive).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidArgument("all-zero projective point".into()));
        }
        let mut gcd = BigInt::zero();
        for c in &coords {
            gcd = gcd.gcd(c);
        }
        let mut coords: Vec<BigInt> = coords.into_iter().map(|c| c / &gcd).collect();
        if coords.iter().find(|c| !c.is_zero()).unwrap().is_negative() {
            for c in &mut coords {
                *c = -&*c;
            }
        }
        Ok(ProjPoint { coords })
    }

    /// Parse `[a:b:...:c]` with integer entries.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: "point must be written as [a:b:...:c]".into(),
            })?;
        let coords: Result<Vec<BigInt>> = inner
            .split(':')
            .map(|p| {
                p.trim().parse().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("bad coordinate `{}`", p.trim()),
                })
            })
            .collect();
        ProjPoint::new(coords?)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Ambient dimension n (the point has n+1 coordinates).
    pub fn ambient_n(&self) -> u32 {
        self.coords.len() as u32 - 1
    }

    /// max |x_i| as an exact integer.
    pub fn max_abs(&self) -> BigInt {
        self.coords.iter().map(|c| c.abs()).max().unwrap()
    }

    /// sum x_i^2 as an exact integer.
    pub fn norm_sq(&self) -> BigInt {
        self.coords.iter().map(|c| c * c).sum()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", inner.join(":"))
    }
}

/// Weil height h(x) = ln max |x_i| on the canonical representative.
pub fn weil_height(p: &ProjPoint, prec: u32) -> RealEnclosure {
    let m = p.max_abs();
    if m.is_one() {
        return RealEnclosure::zero(prec);
    }
    RealEnclosure::from_bigint(&m, prec).ln().expect("max >= 1")
}

/// Arakelov height h_O(1)(x) = (1/2) ln(sum x_i^2).
pub fn arakelov_height(p: &ProjPoint, prec: u32) -> RealEnclosure {
    let s = p.norm_sq();
    if s.is_one() {
        return RealEnclosure::zero(prec);
    }
    RealEnclosure::from_bigint(&s, prec)
        .ln()
        .expect("norm_sq >= 1")
        .div_i64(2)
        .unwrap()
}

/// Multiplicative Arakelov height H = exp(h_O(1)) = sqrt(sum x_i^2).
pub fn multiplicative_height(p: &ProjPoint, prec: u32) -> RealEnclosure {
    RealEnclosure::from_bigint(&p.norm_sq(), prec)
        .sqrt()
        .expect("norm_sq >= 0")
}

/// All three heights of a point plus the certified comparison
/// weil <= arakelov <= weil + (1/2) ln(n+1).
#[derive(Clone, Debug)]
pub struct HeightReport {
    pub weil: RealEnclosure,
    pub arakelov: RealEnclosure,
    pub multiplicative_h: RealEnclosure,
    /// Certified by the exact integer inequalities
    /// max^2 <= sum x_i^2 <= (n+1) max^2.
    pub sandwich_certified: bool,
}

pub fn height_report(p: &ProjPoint, prec: u32) -> HeightReport {
    let m = p.max_abs();
    let s = p.norm_sq();
    let np1 = BigInt::from(p.coords().len() as u64);
    let m2 = &m * &m;
    let certified = m2 <= s && s <= &np1 * &m2;
    HeightReport {
        weil: weil_height(p, prec),
        arakelov: arakelov_height(p, prec),
        multiplicative_h: multiplicative_height(p, prec),
        sandwich_certified: certified,
    }
}

/// Classical height h(f) = ln max |a_I| of the primitive representative.
pub fn classical_height(f: &HomogPoly, prec: u32) -> RealEnclosure {
    let g = f.normalize_primitive();
    let m = g
        .terms()
        .map(|(_, c)| c.numer().abs())
        .max()
        .expect("nonzero polynomial");
    if m.is_one() {
        return RealEnclosure::zero(prec);
    }
    RealEnclosure::from_bigint(&m, prec).ln().expect("max >= 1")
}

/// Exact square of the Bombieri (symmetric) norm: sum_I a_I^2 * I!/d!.
pub fn bombieri_norm_sq(f: &HomogPoly) -> BigRational {
    let dfact = BigInt::from(factorial(f.degree() as u64));
    let mut s = BigRational::zero();
    for (idx, c) in f.terms() {
        let w = BigRational::new(BigInt::from(idx.factorial_product()), dfact.clone());
        s += c * c * w;
    }
    s
}

/// Enclosure of the Bombieri norm sqrt(sum a_I^2 I!/d!); the inner sum is
/// kept exact, only the square root is enclosed.
pub fn bombieri_norm(f: &HomogPoly, prec: u32) -> RealEnclosure {
    let s = bombieri_norm_sq(f);
    RealEnclosure::from_rational(&s, prec)
        .sqrt()
        .expect("norm square is nonnegative")
}

/// Slope of the line of defining equations of the hypersurface f = 0:
/// mu(I_X) = -ln ||f~||_sym on the primitive representative f~ (finite
/// places vanish by primitivity). Invariant under nonzero rational scaling.
pub fn slope_ix(f: &HomogPoly, prec: u32) -> RealEnclosure {
    let g = f.normalize_primitive();
    let s = bombieri_norm_sq(&g);
    if s.is_one() {
        return RealEnclosure::zero(prec);
    }
    RealEnclosure::from_rational(&s, prec)
        .ln()
        .expect("norm square is positive")
        .div_i64(-2)
        .unwrap()
}

/// Certified double-inequality report for
/// h(X) - (n/2) ln(delta+1) <= -mu(I_X) <= h(X) + (3n/2) ln(delta+1).
///
/// Both sides reduce to exact rational comparisons
/// (M^2 <= S (delta+1)^n and S <= M^2 (delta+1)^{3n}, with M = max |a_I|
/// and S the Bombieri norm square of the primitive representative), so the
/// verdicts are never inconclusive.
#[derive(Clone, Debug)]
pub struct HeightSlopeReport {
    pub lower_holds: bool,
    pub upper_holds: bool,
    pub height: RealEnclosure,
    pub minus_slope: RealEnclosure,
}

impl HeightSlopeReport {
    pub fn both_hold(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

pub fn compare_height_slope(f: &HomogPoly, prec: u32) -> HeightSlopeReport {
    let g = f.normalize_primitive();
    let n = g.n();
    let delta = g.degree();
    let m = g
        .terms()
        .map(|(_, c)| c.numer().abs())
        .max()
        .expect("nonzero polynomial");
    let m2 = BigRational::from_integer(&m * &m);
    let s = bombieri_norm_sq(&g);
    let base = BigInt::from(delta as u64 + 1);
    let lower_holds = m2.clone() <= &s * BigRational::from_integer(base.pow(n));
    let upper_holds = s.clone() <= &m2 * BigRational::from_integer(base.pow(3 * n));
    HeightSlopeReport {
        lower_holds,
        upper_holds,
        height: classical_height(&g, prec),
        minus_slope: slope_ix(&g, prec).neg(),
    }
}
