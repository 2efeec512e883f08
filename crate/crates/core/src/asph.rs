//! The antispherical right module `M = sgn (x)_{H_f} H_ext` with standard
//! basis `N_x = 1 (x) H_x`, `x` ranging over minimal coset representatives
//! `W_f \ W_ext`, and its canonical basis.
//!
//! The canonical basis is computed twice: by projecting the Hecke canonical
//! basis, and by a recursion inside the module. The two must agree.

use std::collections::{BTreeMap, HashMap};

use crate::hecke::{back_substitute, quadratic_coeff, BarCache, CanonicalBasis, HeckeElement};
use crate::laurent::Laurent;
use crate::scalar::Coefficient;
use crate::weyl::{format_elt, WeylElt, WeylGroup};
use crate::{Error, Result};

/// A finite combination of `N_x` with every `x` a minimal coset representative.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AsphElement<C: Coefficient> {
    terms: BTreeMap<WeylElt, Laurent<C>>,
}

impl<C: Coefficient> AsphElement<C> {
    pub fn zero() -> Self {
        AsphElement {
            terms: BTreeMap::new(),
        }
    }

    /// `N_x`; rejects `x` outside `W_f \ W_ext`.
    pub fn standard(g: &WeylGroup, x: WeylElt) -> Result<Self> {
        Self::term(g, x, Laurent::one())
    }

    pub fn term(g: &WeylGroup, x: WeylElt, p: Laurent<C>) -> Result<Self> {
        g.check(&x)?;
        if !g.in_fw(&x) {
            return Err(Error::NotMinimal(format_elt(g, &x)));
        }
        let mut out = Self::zero();
        out.add_term(x, &p);
        Ok(out)
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

    pub fn coeff(&self, x: &WeylElt) -> Laurent<C> {
        self.terms.get(x).cloned().unwrap_or_else(Laurent::zero)
    }

    fn add_term(&mut self, x: WeylElt, p: &Laurent<C>) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(x) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += p;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, p: &Laurent<C>) {
        if p.is_zero() {
            return;
        }
        for (x, q) in &other.terms {
            self.add_term(x.clone(), &(q * p));
        }
    }

    pub fn leading_term(&self, g: &WeylGroup) -> Option<(&WeylElt, &Laurent<C>)> {
        self.terms
            .iter()
            .max_by(|a, b| (g.length(a.0), a.0).cmp(&(g.length(b.0), b.0)))
    }

    /// `N_x H_s = N_{xs}` if `xs > x` in the module basis, `-v N_x` if `xs > x`
    /// leaves it, and `N_{xs} + (v^-1 - v) N_x` if `xs < x`.
    pub fn times_generator(&self, g: &WeylGroup, gen: usize) -> Self {
        let q = quadratic_coeff::<C>();
        let minus_v = Laurent::monomial(-C::one(), 1);
        let mut out = Self::zero();
        for (x, p) in &self.terms {
            let xs = g.times_generator(x, gen);
            if g.length(&xs) > g.length(x) {
                if g.in_fw(&xs) {
                    out.add_term(xs, p);
                } else {
                    out.add_term(x.clone(), &(p * &minus_v));
                }
            } else {
                out.add_term(xs, p);
                out.add_term(x.clone(), &(p * &q));
            }
        }
        out
    }

    /// Right action of `H_s + v`.
    pub fn times_canonical_generator(&self, g: &WeylGroup, gen: usize) -> Self {
        let mut out = self.times_generator(g, gen);
        out.add_scaled(self, &Laurent::v_pow(1));
        out
    }

    /// `N_x H_omega = N_{x omega}`.
    pub fn times_omega(&self, g: &WeylGroup, omega: &WeylElt) -> Self {
        AsphElement {
            terms: self
                .terms
                .iter()
                .map(|(x, p)| (g.multiply(x, omega), p.clone()))
                .collect(),
        }
    }

    /// Right action of an arbitrary Hecke algebra element.
    pub fn act(&self, g: &WeylGroup, h: &HeckeElement<C>) -> Self {
        let mut out = Self::zero();
        for (y, q) in h.terms() {
            let f = g.omega_of(y);
            let mut acc = self.clone();
            for &k in &f.word {
                acc = acc.times_generator(g, k);
            }
            out.add_scaled(&acc.times_omega(g, &f.omega), q);
        }
        out
    }

    pub fn try_act(&self, g: &WeylGroup, h: &HeckeElement<C>) -> Result<Self> {
        for w in self.terms.keys().chain(h.support()) {
            g.check(w)?;
        }
        Ok(self.act(g, h))
    }

    /// Bar involution, induced from the Hecke algebra through [`project`].
    pub fn bar(&self, g: &WeylGroup, cache: &mut BarCache<C>) -> Self {
        let mut out = Self::zero();
        for (x, p) in &self.terms {
            out.add_scaled(&project(g, &cache.bar_standard(g, x)), &p.bar());
        }
        out
    }
}

/// `1 (x) h`: with `w = u x`, `u` in `W_f`, `x` minimal, `1 (x) H_w = (-v)^{l(u)} N_x`.
pub fn project<C: Coefficient>(g: &WeylGroup, h: &HeckeElement<C>) -> AsphElement<C> {
    let mut out = AsphElement::zero();
    for (w, p) in h.terms() {
        let x = g.min_coset_rep(&w.translation());
        let lu = g.length(w) - g.length(&x);
        let sign = if lu.is_multiple_of(2) { C::one() } else { -C::one() };
        out.add_term(x, &(p * &Laurent::monomial(sign, lu as i32)));
    }
    out
}

/// Canonical basis `{N_w}` of the antispherical module on `W_f \ W` up to a length bound.
#[derive(Clone, Debug)]
pub struct AsphBasis<C: Coefficient> {
    radius: usize,
    entries: HashMap<WeylElt, AsphElement<C>>,
    order: Vec<WeylElt>,
}

impl<C: Coefficient> AsphBasis<C> {
    /// `N_w = 1 (x) C_w` for every covered `w` in `W` that is a minimal coset representative.
    pub fn from_projection(g: &WeylGroup, table: &impl CanonicalBasis<C>) -> Result<Self> {
        let radius = table.radius();
        let order: Vec<WeylElt> = g.ball(radius).into_iter().filter(|w| g.in_fw(w)).collect();
        let entries = order
            .iter()
            .map(|w| Ok((w.clone(), project(g, &table.canonical(g, w)?))))
            .collect::<Result<_>>()?;
        Ok(AsphBasis {
            radius,
            entries,
            order,
        })
    }

    /// The same basis by recursion inside the module:
    /// `N_{ws} = N_w C_s` minus bar-invariant multiples of lower `N_x`.
    pub fn by_recursion(g: &WeylGroup, radius: usize) -> Self {
        let order: Vec<WeylElt> = g.ball(radius).into_iter().filter(|w| g.in_fw(w)).collect();
        let mut entries: HashMap<WeylElt, AsphElement<C>> = HashMap::new();
        let ngen = g.coxeter_generators().len();
        for w in &order {
            if g.is_identity(w) {
                entries.insert(w.clone(), AsphElement::standard(g, w.clone()).unwrap());
                continue;
            }
            let len = g.length(w);
            let s = (0..ngen)
                .find(|&k| g.length(&g.times_generator(w, k)) < len)
                .expect("a nontrivial element has a right descent");
            let ws = g.times_generator(w, s);
            let mut c = entries[&ws].times_canonical_generator(g, s);
            // clear non-positive degrees from the top down; corrections only add lower terms
            let mut cursor = (len, w.clone());
            loop {
                let next = c
                    .terms
                    .keys()
                    .map(|x| (g.length(x), x.clone()))
                    .filter(|k| *k < cursor)
                    .max();
                let Some(key) = next else { break };
                let q = c.coeff(&key.1).nonpositive_part();
                if !q.is_zero() {
                    let q0 = Laurent::constant(q.coeff(0));
                    let sym = &(&q + &q.bar()) - &q0;
                    c.add_scaled(&entries[&key.1], &-sym);
                }
                cursor = key;
            }
            entries.insert(w.clone(), c);
        }
        AsphBasis {
            radius,
            entries,
            order,
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Covered elements sorted by `(length, element)`.
    pub fn elements(&self) -> &[WeylElt] {
        &self.order
    }

    pub fn get(&self, w: &WeylElt) -> Option<&AsphElement<C>> {
        self.entries.get(w)
    }

    /// `N_w` for `w` in `W_f \ W_ext`, using `N_{u omega} = N_u H_omega`.
    pub fn canonical(&self, g: &WeylGroup, w: &WeylElt) -> Result<AsphElement<C>> {
        if let Some(c) = self.entries.get(w) {
            return Ok(c.clone());
        }
        if !g.in_fw(w) {
            return Err(Error::NotMinimal(format_elt(g, w)));
        }
        let omega = g.omega_of(w).omega;
        let u = g.multiply(w, &g.inverse(&omega));
        let c = self.entries.get(&u).ok_or_else(|| Error::InsufficientRadius {
            radius: self.radius,
            element: format_elt(g, w),
            length: g.length(w),
        })?;
        Ok(c.times_omega(g, &omega))
    }

    /// Coefficients `c_w` with `m = sum c_w N_w`, by triangular back-substitution.
    pub fn expand(&self, g: &WeylGroup, m: &AsphElement<C>) -> Result<BTreeMap<WeylElt, Laurent<C>>> {
        back_substitute(g, m.terms(), |x| {
            self.canonical(g, x)
                .map(|c| c.terms().map(|(y, p)| (y.clone(), p.clone())).collect())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::KlTable;
    use crate::rootdata::RootDatum;
    use crate::weyl::parse_elt;
    use num_bigint::BigInt;

    type M = AsphElement<BigInt>;
    type H = HeckeElement<BigInt>;
    type P = Laurent<BigInt>;

    fn group(label: &str) -> WeylGroup {
        WeylGroup::new(RootDatum::from_selector(label).unwrap()).unwrap()
    }

    fn elt(g: &WeylGroup, s: &str) -> WeylElt {
        parse_elt(g, s).unwrap()
    }

    fn n(g: &WeylGroup, s: &str) -> M {
        M::standard(g, elt(g, s)).unwrap()
    }

    fn nterms(g: &WeylGroup, pairs: &[(&str, P)]) -> M {
        let mut out = M::zero();
        for (s, p) in pairs {
            out.add_scaled(&n(g, s), p);
        }
        out
    }

    #[test]
    fn rejects_non_minimal_indices() {
        let g = group("A1");
        assert!(matches!(M::standard(&g, elt(&g, "s1")), Err(Error::NotMinimal(_))));
    }

    #[test]
    fn projection_examples() {
        let g = group("A1");
        let t: KlTable<BigInt> = KlTable::build(&g, 3);
        let e = g.identity();
        assert_eq!(project(&g, &H::standard(e.clone())), n(&g, "e"));
        let s = elt(&g, "s1");
        assert_eq!(
            project(&g, &H::standard(s.clone())),
            nterms(&g, &[("e", -P::v_pow(1))])
        );
        assert!(project(&g, t.get(&s).unwrap()).is_zero());
    }

    #[test]
    fn action_examples() {
        let g = group("A1");
        let s0 = elt(&g, "s0");
        let s = elt(&g, "s1");
        let idx = |x: &WeylElt| {
            g.coxeter_generators()
                .iter()
                .position(|gen| &gen.elt == x)
                .unwrap()
        };
        assert_eq!(n(&g, "e").times_generator(&g, idx(&s0)), n(&g, "s0"));
        assert_eq!(
            n(&g, "e").times_generator(&g, idx(&s)),
            nterms(&g, &[("e", -P::v_pow(1))])
        );
        let q = P::from_terms([(-1, BigInt::from(1)), (1, BigInt::from(-1))]);
        assert_eq!(
            n(&g, "s0").times_generator(&g, idx(&s0)),
            nterms(&g, &[("e", P::one()), ("s0", q)])
        );
    }

    #[test]
    fn project_is_module_map() {
        for label in ["A1", "A2", "B2"] {
            let g = group(label);
            let elts = g.ball_ext(3, &g.omega_set(1));
            for x in elts.iter().step_by(3) {
                for y in elts.iter().step_by(5) {
                    let hx = H::term(x.clone(), P::from_terms([(1, BigInt::from(2)), (-2, BigInt::from(1))]));
                    let hy = H::standard(y.clone());
                    assert_eq!(project(&g, &hx.mul(&g, &hy)), project(&g, &hx).act(&g, &hy));
                }
            }
        }
    }

    #[test]
    fn a1_canonical_examples() {
        let g = group("A1");
        let t: KlTable<BigInt> = KlTable::build(&g, 6);
        let b = AsphBasis::from_projection(&g, &t).unwrap();
        assert_eq!(*b.get(&g.identity()).unwrap(), n(&g, "e"));
        assert_eq!(
            *b.get(&elt(&g, "s0")).unwrap(),
            nterms(&g, &[("s0", P::one()), ("e", P::v_pow(1))])
        );
        assert_eq!(
            *b.get(&elt(&g, "s0*s1*s0")).unwrap(),
            nterms(&g, &[("s0*s1*s0", P::one()), ("s0*s1", P::v_pow(1))])
        );
        let s0 = g.coxeter_generators().iter().position(|x| x.name == "s0a").unwrap();
        let ns0 = b.get(&elt(&g, "s0")).unwrap();
        let prod = ns0.times_canonical_generator(&g, s0);
        let e = b.expand(&g, &prod).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[&elt(&g, "s0")], P::from_terms([(-1, BigInt::from(1)), (1, BigInt::from(1))]));
        let prod = b.get(&elt(&g, "s0*s1")).unwrap().times_canonical_generator(&g, s0);
        let e = b.expand(&g, &prod).unwrap();
        assert_eq!(e.len(), 2);
        assert!(e[&elt(&g, "s0*s1*s0")].is_one());
        assert!(e[&elt(&g, "s0")].is_one());
    }

    #[test]
    fn vanishing_exactly_off_minimal_representatives() {
        for (label, r) in [("A1", 6), ("A2", 5), ("B2", 5)] {
            let g = group(label);
            let t: KlTable<BigInt> = KlTable::build(&g, r);
            for w in t.elements() {
                assert_eq!(project(&g, t.get(w).unwrap()).is_zero(), !g.in_fw(w));
            }
        }
    }

    #[test]
    fn projection_agrees_with_recursion() {
        for (label, r) in [("A1", 10), ("A2", 7), ("B2", 7), ("GL:3", 5)] {
            let g = group(label);
            let t: KlTable<BigInt> = KlTable::build(&g, r);
            let a = AsphBasis::from_projection(&g, &t).unwrap();
            let b = AsphBasis::<BigInt>::by_recursion(&g, r);
            assert_eq!(a.elements(), b.elements());
            let mut cache = BarCache::new();
            for w in a.elements() {
                let x = a.get(w).unwrap();
                assert_eq!(x, b.get(w).unwrap(), "{label}");
                assert_eq!(x.bar(&g, &mut cache), *x);
                assert!(x.coeff(w).is_one());
                for (y, p) in x.terms() {
                    if y != w {
                        assert!(p.in_positive_degrees() && p.has_nonnegative_coeffs());
                    }
                }
            }
        }
    }

    #[test]
    fn omega_compatibility() {
        let g = group("A2");
        let t: KlTable<BigInt> = KlTable::build(&g, 5);
        let b = AsphBasis::from_projection(&g, &t).unwrap();
        for o in g.omega_set(1) {
            for w in b.elements() {
                let wo = g.multiply(w, &o);
                let lhs = b.canonical(&g, &wo).unwrap();
                let rhs = b.get(w).unwrap().act(&g, &H::standard(o.clone()));
                assert_eq!(lhs, rhs);
                assert_eq!(lhs, project(&g, &t.canonical(&g, &wo).unwrap()));
            }
        }
    }
}
