//! Exact combinatorics of extended affine Weyl groups: lengths, cosets and
//! alcoves, Kazhdan-Lusztig canonical bases of the affine Hecke algebra and
//! its antispherical module, cell partitions on truncated balls, and the
//! multipartition classification of weight cells for products of `GL_n`.

pub mod asph;
pub mod cells;
mod error;
pub mod glcells;
pub mod hecke;
pub mod laurent;
pub mod lattice;
pub mod rootdata;
pub mod scalar;
pub mod weyl;

pub use error::{Error, Result};
pub use rootdata::{Config, Coweight, RootDatum, Weight};
pub use weyl::{format_elt, parse_elt, AlcoveCoords, WeylElt, WeylGroup};

/// Weights with rational coordinates, used for `rho`-shifted quantities.
pub type RatWeight = Weight<num_rational::Rational64>;

/// Laurent polynomials over the integers.
pub type LaurentPoly = laurent::Laurent<num_bigint::BigInt>;
/// Elements of the Hecke algebra with integer coefficients.
pub type HeckeElt = hecke::HeckeElement<num_bigint::BigInt>;
/// Elements of the antispherical module with integer coefficients.
pub type AsphElt = asph::AsphElement<num_bigint::BigInt>;
/// Canonical basis table of the Hecke algebra with integer coefficients.
pub type CanonicalTable = hecke::KlTable<num_bigint::BigInt>;
