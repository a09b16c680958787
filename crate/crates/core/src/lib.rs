//! Certified computation of arithmetic Hilbert-Samuel slopes of projective
//! hypersurfaces over Q, with the supporting exact combinatorics, explicit
//! asymptotic sandwiches, height functions, and a small-height rational
//! point covering pipeline.
//!
//! Everything inexact lives in [`num::RealEnclosure`], an outward-rounded
//! interval; an inequality reported as certified is backed either by exact
//! integer/rational comparison or by disjoint enclosures.

pub mod error;
pub mod num;

pub mod combinatorics;
pub mod asymptotics;
pub mod poly;
pub mod heights;
pub mod hilbert;
pub mod points;

pub use error::{Error, Result};
pub use num::{Dyadic, ExactRational, Natural, RealEnclosure, DEFAULT_PRECISION};

pub use asymptotics::{BoundPair, CoeffTriple, EpsilonSplit};
pub use heights::{HeightReport, ProjPoint};
pub use hilbert::{GramMatrix, SlopeFrame, SlopeResult};
pub use points::{CoverCertificate, CoverOutcome, PointSet};
pub use poly::{HomogPoly, MultiIndex};
