//! Sparse Laurent polynomials `C[v, v^-1]` with the bar involution `v -> v^-1`.
//!
//! Terms are stored as `(exponent, coefficient)` pairs sorted by exponent with
//! no zero coefficients, so structural equality is equality of polynomials.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;

use crate::scalar::Coefficient;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Laurent<C = BigInt> {
    terms: Vec<(i32, C)>,
}

impl<C: Coefficient> Laurent<C> {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    /// `v^e`.
    pub fn v_pow(e: i32) -> Self {
        Self::monomial(C::one(), e)
    }

    /// `c v^e`.
    pub fn monomial(c: C, e: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Laurent { terms: vec![(e, c)] }
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, merging duplicates.
    pub fn from_terms(pairs: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut v: Vec<(i32, C)> = pairs.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut terms: Vec<(i32, C)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match terms.last_mut() {
                Some((le, lc)) if *le == e => *lc = lc.clone() + c,
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Laurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> &[(i32, C)] {
        &self.terms
    }

    pub fn coeff(&self, e: i32) -> C {
        self.terms
            .binary_search_by_key(&e, |t| t.0)
            .map(|k| self.terms[k].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// Image under `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| (-e, c.clone()))
                .collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.clone() * k.clone()))
                .collect(),
        }
    }

    /// All exponents are strictly positive (membership in `vC[v]`).
    pub fn in_positive_degrees(&self) -> bool {
        self.terms.iter().all(|(e, _)| *e > 0)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }

    /// Terms of degree `<= 0`.
    pub fn nonpositive_part(&self) -> Self {
        Laurent {
            terms: self.terms.iter().filter(|t| t.0 <= 0).cloned().collect(),
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &C| if negate { -c.clone() } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Less => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*eb, sign(cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca.clone() + sign(cb);
                    if !c.is_zero() {
                        out.push((*ea, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(e, c)| (*e, sign(c))));
        Laurent { terms: out }
    }
}

impl<C: Coefficient> Add for &Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, rhs: Self) -> Laurent<C> {
        self.merge(rhs, false)
    }
}

impl<C: Coefficient> Sub for &Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, rhs: Self) -> Laurent<C> {
        self.merge(rhs, true)
    }
}

impl<C: Coefficient> Mul for &Laurent<C> {
    type Output = Laurent<C>;
    // exponents add under multiplication
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> Laurent<C> {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        Laurent::from_terms(self.terms.iter().flat_map(|(ea, ca)| {
            rhs.terms
                .iter()
                .map(move |(eb, cb)| (ea + eb, ca.clone() * cb.clone()))
        }))
    }
}

impl<C: Coefficient> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl<C: Coefficient> $tr for Laurent<C> {
            type Output = Laurent<C>;
            fn $f(self, rhs: Self) -> Laurent<C> {
                (&self).$f(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<C: Coefficient> Neg for Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        -&self
    }
}

impl<C: Coefficient> AddAssign<&Laurent<C>> for Laurent<C> {
    fn add_assign(&mut self, rhs: &Laurent<C>) {
        *self = &*self + rhs;
    }
}

impl<C: Coefficient> SubAssign<&Laurent<C>> for Laurent<C> {
    fn sub_assign(&mut self, rhs: &Laurent<C>) {
        *self = &*self - rhs;
    }
}

impl<C: Coefficient> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*v^{e}")?;
        }
        Ok(())
    }
}

impl<C: Coefficient> FromStr for Laurent<C> {
    type Err = Error;

    /// Accepts `c*v^e` terms joined by `+`; `0` is the zero polynomial.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let bad = || Error::Parse(format!("bad Laurent polynomial `{s}`"));
        let mut pairs = Vec::new();
        for term in s.split(" + ") {
            let (c, e) = term.trim().split_once("*v^").ok_or_else(bad)?;
            let c: C = c.trim().parse().map_err(|_| bad())?;
            let e: i32 = e.trim().parse().map_err(|_| bad())?;
            pairs.push((e, c));
        }
        Ok(Self::from_terms(pairs))
    }
}
