//! Number types: exact integers/rationals and certified real enclosures.

mod dyadic;
mod enclosure;
pub mod rational;

pub use dyadic::Dyadic;
pub use enclosure::{
    clamp_precision, decimal_directed, RealEnclosure, DEFAULT_PRECISION, MAX_PRECISION,
    MIN_PRECISION,
};
pub use rational::{parse_rational, rational_string, ExactRational, Natural};

use crate::error::{Error, Result};

/// Run a certified comparison with precision doubling.
///
/// `check` is evaluated at increasing precisions and must return
/// `Some(answer)` once the comparison is decided either way, `None` while it
/// is still inconclusive at that precision.
pub fn certify_with_escalation<F>(start: u32, check: F) -> Result<bool>
where
    F: Fn(u32) -> Option<bool>,
{
    let mut prec = clamp_precision(start);
    loop {
        if let Some(ans) = check(prec) {
            return Ok(ans);
        }
        if prec >= MAX_PRECISION {
            return Err(Error::Inconclusive(prec));
        }
        prec = (prec * 2).min(MAX_PRECISION);
    }
}
