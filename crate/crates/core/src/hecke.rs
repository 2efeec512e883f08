//! The extended affine Hecke algebra in the standard basis `{H_w}`, with the
//! quadratic relation `(H_s + v)(H_s - v^-1) = 0`, and its Kazhdan-Lusztig
//! canonical basis `{H_w}` underlined.
//!
//! Canonical elements are computed for the Coxeter group `W` only, by the
//! classical recursion
//!
//! ```text
//! C_{w's} = C_{w'} C_s - sum_{x s < x} mu(x, w') C_x
//! ```
//!
//! and reached on `W_ext = W Omega` by `C_{u omega} = C_u H_omega`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::laurent::Laurent;
use crate::scalar::Coefficient;
use crate::weyl::{format_elt, WeylElt, WeylGroup};
use crate::{Error, Result};

/// A finite `Z[v, v^-1]`-combination of standard basis elements `H_w`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HeckeElement<C: Coefficient> {
    terms: BTreeMap<WeylElt, Laurent<C>>,
}

/// Which side an element of `Omega` or a generator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

pub(crate) fn quadratic_coeff<C: Coefficient>() -> Laurent<C> {
    // v^-1 - v
    Laurent::from_terms([(-1, C::one()), (1, -C::one())])
}

impl<C: Coefficient> HeckeElement<C> {
    pub fn zero() -> Self {
        HeckeElement {
            terms: BTreeMap::new(),
        }
    }

    /// `H_w`.
    pub fn standard(w: WeylElt) -> Self {
        Self::term(w, Laurent::one())
    }

    /// `p H_w`.
    pub fn term(w: WeylElt, p: Laurent<C>) -> Self {
        let mut out = Self::zero();
        out.add_term(w, &p);
        out
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (WeylElt, Laurent<C>)>) -> Self {
        let mut out = Self::zero();
        for (w, p) in pairs {
            out.add_term(w, &p);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylElt, &Laurent<C>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &WeylElt) -> Laurent<C> {
        self.terms.get(w).cloned().unwrap_or_else(Laurent::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &WeylElt> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, w: WeylElt, p: &Laurent<C>) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + p;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, p: &Laurent<C>) {
        if p.is_zero() {
            return;
        }
        for (w, q) in &other.terms {
            self.add_term(w.clone(), &(q * p));
        }
    }

    pub fn scale(&self, p: &Laurent<C>) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, p);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Laurent::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Laurent::one());
        out
    }

    /// Reindex every `H_x` as `H_{f(x)}`; `f` must be injective.
    pub fn map_index(&self, f: impl Fn(&WeylElt) -> WeylElt) -> Self {
        HeckeElement {
            terms: self.terms.iter().map(|(w, p)| (f(w), p.clone())).collect(),
        }
    }

    /// The term of maximal `(length, element)`.
    pub fn leading_term(&self, g: &WeylGroup) -> Option<(&WeylElt, &Laurent<C>)> {
        self.terms.iter().max_by(|a, b| {
            (g.length(a.0), a.0).cmp(&(g.length(b.0), b.0))
        })
    }

    /// Right multiplication by the standard generator `H_s`, `s` a Coxeter generator.
    pub fn times_generator(&self, g: &WeylGroup, gen: usize) -> Self {
        let q = quadratic_coeff::<C>();
        let mut out = Self::zero();
        for (x, p) in &self.terms {
            let xs = g.times_generator(x, gen);
            let up = g.length(&xs) > g.length(x);
            out.add_term(xs, p);
            if !up {
                out.add_term(x.clone(), &(p * &q));
            }
        }
        out
    }

    /// Left multiplication by `H_s`.
    pub fn generator_times(&self, g: &WeylGroup, gen: usize) -> Self {
        let q = quadratic_coeff::<C>();
        let mut out = Self::zero();
        for (x, p) in &self.terms {
            let sx = g.generator_times(gen, x);
            let up = g.length(&sx) > g.length(x);
            out.add_term(sx, p);
            if !up {
                out.add_term(x.clone(), &(p * &q));
            }
        }
        out
    }

    /// Right multiplication by `H_omega`, `omega` of length zero.
    pub fn times_omega(&self, g: &WeylGroup, omega: &WeylElt) -> Self {
        self.map_index(|x| g.multiply(x, omega))
    }

    pub fn omega_times(&self, g: &WeylGroup, omega: &WeylElt) -> Self {
        self.map_index(|x| g.multiply(omega, x))
    }

    /// Right multiplication by `H_y` via a reduced expression `y = s_1 ... s_k omega`.
    pub fn times_standard(&self, g: &WeylGroup, y: &WeylElt) -> Self {
        let f = g.omega_of(y);
        let mut acc = self.clone();
        for &k in &f.word {
            acc = acc.times_generator(g, k);
        }
        acc.times_omega(g, &f.omega)
    }

    /// Product in the standard basis.
    pub fn mul(&self, g: &WeylGroup, other: &Self) -> Self {
        let mut out = Self::zero();
        for (y, q) in &other.terms {
            out.add_scaled(&self.times_standard(g, y), q);
        }
        out
    }

    /// Right multiplication by the canonical generator `H_s + v`.
    pub fn times_canonical_generator(&self, g: &WeylGroup, gen: usize) -> Self {
        let mut out = self.times_generator(g, gen);
        out.add_scaled(self, &Laurent::v_pow(1));
        out
    }

    pub fn canonical_generator_times(&self, g: &WeylGroup, gen: usize) -> Self {
        let mut out = self.generator_times(g, gen);
        out.add_scaled(self, &Laurent::v_pow(1));
        out
    }

    /// Bar involution: `v -> v^-1` and `H_x -> (H_{x^-1})^-1`.
    pub fn bar(&self, g: &WeylGroup, cache: &mut BarCache<C>) -> Self {
        let mut out = Self::zero();
        for (x, p) in &self.terms {
            let bx = cache.bar_standard(g, x);
            out.add_scaled(&bx, &p.bar());
        }
        out
    }

    pub fn is_bar_invariant(&self, g: &WeylGroup, cache: &mut BarCache<C>) -> bool {
        self.bar(g, cache) == *self
    }

    pub fn try_mul(&self, g: &WeylGroup, other: &Self) -> Result<Self> {
        for w in self.support().chain(other.support()) {
            g.check(w)?;
        }
        Ok(self.mul(g, other))
    }
}

/// Memoized `bar(H_x)`.
#[derive(Debug, Default)]
pub struct BarCache<C: Coefficient> {
    memo: HashMap<WeylElt, HeckeElement<C>>,
}

impl<C: Coefficient> BarCache<C> {
    pub fn new() -> Self {
        BarCache {
            memo: HashMap::new(),
        }
    }

    /// `bar(H_x) = bar(H_{s_1}) ... bar(H_{s_k}) H_omega` with `bar(H_s) = H_s + v - v^-1`.
    pub fn bar_standard(&mut self, g: &WeylGroup, x: &WeylElt) -> HeckeElement<C> {
        if let Some(b) = self.memo.get(x) {
            return b.clone();
        }
        let f = g.omega_of(x);
        let result = if f.word.is_empty() {
            HeckeElement::standard(x.clone())
        } else {
            // x = s u with l(u) = l(x) - 1
            let u = g.generator_times(f.word[0], x);
            let rest = self.bar_standard(g, &u);
            let mut out = rest.generator_times(g, f.word[0]);
            out.add_scaled(&rest, &Laurent::from_terms([(1, C::one()), (-1, -C::one())]));
            out
        };
        self.memo.insert(x.clone(), result.clone());
        result
    }
}

/// Query surface of a canonical basis provider. Cells and the
/// antispherical module only talk to this trait.
pub trait CanonicalBasis<C: Coefficient>: Sync {
    /// Largest length of `W`-elements covered.
    fn radius(&self) -> usize;

    /// Canonical element `C_w` in the standard basis, for any `w` in `W_ext`
    /// whose `W`-part is covered.
    fn canonical(&self, g: &WeylGroup, w: &WeylElt) -> Result<HeckeElement<C>>;

    /// Coefficients `c_w` with `h = sum c_w C_w`, by triangular back-substitution.
    fn expand(&self, g: &WeylGroup, h: &HeckeElement<C>) -> Result<BTreeMap<WeylElt, Laurent<C>>> {
        back_substitute(g, h.terms(), |x| {
            self.canonical(g, x)
                .map(|c| c.terms().map(|(y, p)| (y.clone(), p.clone())).collect())
        })
    }
}

/// Solves `h = sum c_x B_x` for a unitriangular basis `B` given by `basis(x)`,
/// peeling off the term of maximal `(length, element)` each step.
pub(crate) fn back_substitute<'a, C, F>(
    g: &WeylGroup,
    terms: impl Iterator<Item = (&'a WeylElt, &'a Laurent<C>)>,
    mut basis: F,
) -> Result<BTreeMap<WeylElt, Laurent<C>>>
where
    C: Coefficient + 'a,
    F: FnMut(&WeylElt) -> Result<Vec<(WeylElt, Laurent<C>)>>,
{
    let mut rest: BTreeMap<(usize, WeylElt), Laurent<C>> = terms
        .map(|(x, p)| ((g.length(x), x.clone()), p.clone()))
        .collect();
    let mut out = BTreeMap::new();
    while let Some(((_, x), c)) = rest.pop_last() {
        for (y, p) in basis(&x)? {
            if y == x {
                continue;
            }
            let key = (g.length(&y), y);
            let e = rest.entry(key.clone()).or_insert_with(Laurent::zero);
            *e -= &(&p * &c);
            if e.is_zero() {
                rest.remove(&key);
            }
        }
        out.insert(x, c);
    }
    Ok(out)
}

/// Kazhdan-Lusztig canonical basis of `W` up to a length bound.
#[derive(Clone, Debug)]
pub struct KlTable<C: Coefficient> {
    radius: usize,
    entries: HashMap<WeylElt, HeckeElement<C>>,
    /// Covered elements sorted by `(length, element)`.
    order: Vec<WeylElt>,
}

impl<C: Coefficient> KlTable<C> {
    /// Computes `C_w` for every `w` in `W` with `l(w) <= radius`.
    pub fn build(g: &WeylGroup, radius: usize) -> Self {
        let order = g.ball(radius);
        let mut entries: HashMap<WeylElt, HeckeElement<C>> = HashMap::new();
        entries.insert(g.identity(), HeckeElement::standard(g.identity()));
        let ngen = g.coxeter_generators().len();
        let mut start = 1;
        while start < order.len() {
            let len = g.length(&order[start]);
            let end = order[start..]
                .iter()
                .position(|x| g.length(x) != len)
                .map_or(order.len(), |k| start + k);
            let stratum: Vec<(WeylElt, HeckeElement<C>)> = order[start..end]
                .par_iter()
                .map(|w| {
                    let s = (0..ngen)
                        .find(|&k| g.length(&g.times_generator(w, k)) < len)
                        .expect("a nontrivial element has a right descent");
                    let ws = g.times_generator(w, s);
                    let base = &entries[&ws];
                    let mut c = base.times_canonical_generator(g, s);
                    for (x, h) in base.terms() {
                        if x == &ws || g.length(&g.times_generator(x, s)) > g.length(x) {
                            continue;
                        }
                        let mu = h.coeff(1);
                        if !mu.is_zero() {
                            c.add_scaled(&entries[x], &Laurent::constant(-mu));
                        }
                    }
                    (w.clone(), c)
                })
                .collect();
            entries.extend(stratum);
            start = end;
        }
        KlTable {
            radius,
            entries,
            order,
        }
    }

    /// Covered `W`-elements sorted by `(length, element)`.
    pub fn elements(&self) -> &[WeylElt] {
        &self.order
    }

    /// Canonical element of a covered `w` in `W`.
    pub fn get(&self, w: &WeylElt) -> Option<&HeckeElement<C>> {
        self.entries.get(w)
    }

    /// `h_{x,w}`, the coefficient of `H_x` in `C_w`.
    pub fn h(&self, x: &WeylElt, w: &WeylElt) -> Option<Laurent<C>> {
        self.entries.get(w).map(|c| c.coeff(x))
    }

    /// `mu(x, w)`, the coefficient of `v` in `h_{x,w}`.
    pub fn mu(&self, x: &WeylElt, w: &WeylElt) -> Option<C> {
        self.h(x, w).map(|p| p.coeff(1))
    }

    /// `C_{w omega} = C_w H_omega` or `C_{omega w} = H_omega C_w`.
    pub fn extend_by_omega(
        &self,
        g: &WeylGroup,
        w: &WeylElt,
        omega: &WeylElt,
        side: Side,
    ) -> Result<HeckeElement<C>> {
        if g.length(omega) != 0 {
            return Err(Error::NotLengthZero(format_elt(g, omega)));
        }
        let c = self.entries.get(w).ok_or_else(|| self.too_small(g, w))?;
        Ok(match side {
            Side::Right => c.times_omega(g, omega),
            Side::Left => c.omega_times(g, omega),
        })
    }

    fn too_small(&self, g: &WeylGroup, w: &WeylElt) -> Error {
        Error::InsufficientRadius {
            radius: self.radius,
            element: format_elt(g, w),
            length: g.length(w),
        }
    }
}

impl<C: Coefficient> CanonicalBasis<C> for KlTable<C> {
    fn radius(&self) -> usize {
        self.radius
    }

    fn canonical(&self, g: &WeylGroup, w: &WeylElt) -> Result<HeckeElement<C>> {
        if let Some(c) = self.entries.get(w) {
            return Ok(c.clone());
        }
        if g.length(w) > self.radius {
            return Err(self.too_small(g, w));
        }
        let omega = g.omega_of(w).omega;
        let u = g.multiply(w, &g.inverse(&omega));
        self.extend_by_omega(g, &u, &omega, Side::Right)
    }
}
