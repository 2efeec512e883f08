//! `ell`-dilated alcoves and their lower closures.
//!
//! The lower closure with coordinates `(n_a)` is the set of weights `lambda`
//! with `n_a ell <= <lambda + rho, a^vee> < (n_a + 1) ell` for every positive
//! root `a`. Coordinates are stored in the order of
//! [`RootDatum::positive_roots`].

use std::fmt;

use serde::Serialize;

use crate::rootdata::{RootDatum, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AlcoveCoords {
    pub n: Vec<i64>,
}

impl AlcoveCoords {
    pub(crate) fn of_weight(datum: &RootDatum, lambda: &Weight<i64>, ell: i64) -> Self {
        let two_rho = datum.two_rho();
        let n = datum
            .positive_roots()
            .iter()
            .map(|a| {
                // <2 lambda + 2 rho, a^vee> / (2 ell), floored
                let p = 2 * lambda.pairing(&a.coroot) + two_rho.pairing(&a.coroot);
                p.div_euclid(2 * ell)
            })
            .collect();
        AlcoveCoords { n }
    }

    /// Whether `lambda` lies in this lower closure.
    pub fn lower_closure_contains(&self, datum: &RootDatum, lambda: &Weight<i64>, ell: i64) -> bool {
        AlcoveCoords::of_weight(datum, lambda, ell) == *self
    }

    /// The lower closure lies in the `rho`-shifted dominant region.
    pub fn is_dominant_region(&self) -> bool {
        self.n.iter().all(|&x| x >= 0)
    }
}

impl fmt::Display for AlcoveCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.n.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
