//! The extended affine Weyl group `W_ext = W_f x| X`.
//!
//! An element is a pair `(fin, trans)` standing for the affine map
//! `mu -> fin(mu + trans)` on `X`, i.e. the product `fin * t_trans`. In this
//! convention the closed length formula reads
//!
//! ```text
//! l(v t_lambda) = sum_{a > 0, v(a) > 0} |<lambda, a^vee>| + sum_{a > 0, v(a) < 0} |1 + <lambda, a^vee>|
//! ```
//!
//! which is the number of affine hyperplanes `<mu, a^vee> = k` separating the
//! fundamental alcove from its image. The word-length oracle in the tests
//! confirms it against breadth-first search over Coxeter generators.

mod alcove;
mod finite;
mod text;

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use smallvec::SmallVec;

pub use alcove::AlcoveCoords;
pub(crate) use finite::FiniteWeyl;

use crate::lattice::smith_normal_form;
use crate::rootdata::{Config, RootDatum, Weight};
use crate::{Error, Result};

pub(crate) type Trans = SmallVec<[i64; 4]>;

/// An element `fin * t_trans` of `W_ext`.
///
/// `fin` indexes the finite Weyl group table of the owning [`WeylGroup`];
/// equality of indices is equality of action matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt {
    fin: u32,
    trans: Trans,
}

impl WeylElt {
    pub fn fin_index(&self) -> u32 {
        self.fin
    }

    pub fn translation(&self) -> Weight<i64> {
        Weight(self.trans.to_vec())
    }

    pub fn trans(&self) -> &[i64] {
        &self.trans
    }
}

/// What kind of Coxeter generator a [`Generator`] is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Simple reflection `s_i` of `W_f` (0-based index).
    Finite(usize),
    /// Affine reflection of an irreducible component (0-based component index).
    Affine(usize),
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub elt: WeylElt,
    pub kind: GeneratorKind,
    /// Text name: `s1`, `s2`, ... for finite reflections, `s0a`, `s0b`, ... for affine ones.
    pub name: String,
}

/// A generator of `Omega ~ X / ZPhi`, with its order (`None` for infinite order).
#[derive(Clone, Debug)]
pub struct OmegaGenerator {
    pub elt: WeylElt,
    pub order: Option<u64>,
}

/// The factorization `w = u * omega` with `u` in `W` and `omega` of length zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaFactorization {
    pub omega: WeylElt,
    /// Reduced word for `u` as indices into [`WeylGroup::generators`].
    pub word: Vec<usize>,
}

/// Context object holding a root datum and everything derived from it.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    datum: RootDatum,
    finite: FiniteWeyl,
    generators: Vec<Generator>,
    omega_gens: Vec<OmegaGenerator>,
}

impl WeylGroup {
    pub fn new(datum: RootDatum) -> Result<Self> {
        let finite = FiniteWeyl::new(&datum)?;
        let mut g = WeylGroup {
            datum,
            finite,
            generators: Vec::new(),
            omega_gens: Vec::new(),
        };
        g.generators = g.build_generators();
        g.omega_gens = g.build_omega_generators();
        Ok(g)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn finite_order(&self) -> usize {
        self.finite.order()
    }

    pub(crate) fn finite(&self) -> &FiniteWeyl {
        &self.finite
    }

    fn build_generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for i in 0..self.datum.num_simple() {
            out.push(Generator {
                elt: self.simple_reflection(i),
                kind: GeneratorKind::Finite(i),
                name: format!("s{}", i + 1),
            });
        }
        for (c, theta) in self.datum.affine_roots().into_iter().enumerate() {
            // mu -> s_theta(mu) + theta = s_theta(mu - theta)
            let refl = self.reflection_matrix(&theta.root.0, &theta.coroot);
            let fin = self
                .finite
                .lookup(&refl)
                .expect("reflection in a root lies in W_f");
            let trans = theta.root.0.iter().map(|&x| -x).collect();
            out.push(Generator {
                elt: WeylElt { fin, trans },
                kind: GeneratorKind::Affine(c),
                name: format!("s0{}", component_letter(c)),
            });
        }
        out
    }

    fn reflection_matrix(&self, root: &[i64], coroot: &[i64]) -> Vec<i64> {
        let n = self.rank();
        let mut m = vec![0i64; n * n];
        for r in 0..n {
            for c in 0..n {
                m[r * n + c] = i64::from(r == c) - root[r] * coroot[c];
            }
        }
        m
    }

    fn build_omega_generators(&self) -> Vec<OmegaGenerator> {
        let n = self.rank();
        let r = self.datum.num_simple();
        if r == 0 {
            // torus: Omega = X
            return (0..n)
                .map(|i| {
                    let mut t = vec![0; n];
                    t[i] = 1;
                    OmegaGenerator {
                        elt: self.translation(&Weight(t)),
                        order: None,
                    }
                })
                .collect();
        }
        let roots: Vec<Vec<i64>> = (0..n)
            .map(|row| self.datum.simple_roots().iter().map(|a| a.0[row]).collect())
            .collect();
        let snf = smith_normal_form(&roots);
        let mut out = Vec::new();
        for i in 0..n {
            let d = snf.diag.get(i).copied().unwrap_or(0);
            if d == 1 {
                continue;
            }
            let lambda: Vec<i64> = (0..n).map(|row| snf.left_inv[row][i]).collect();
            let omega = self.omega_of(&self.translation(&Weight(lambda))).omega;
            out.push(OmegaGenerator {
                elt: omega,
                order: (d != 0).then_some(d as u64),
            });
        }
        out
    }

    /// Simple reflections of `W_f` followed by one affine reflection per component.
    pub fn coxeter_generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn omega_generators(&self) -> &[OmegaGenerator] {
        &self.omega_gens
    }

    pub fn identity(&self) -> WeylElt {
        WeylElt {
            fin: 0,
            trans: SmallVec::from_elem(0, self.rank()),
        }
    }

    pub fn translation(&self, lambda: &Weight<i64>) -> WeylElt {
        assert_eq!(lambda.rank(), self.rank(), "weight rank mismatch");
        WeylElt {
            fin: 0,
            trans: lambda.0.iter().copied().collect(),
        }
    }

    /// `s_i` in `W_f`, 0-based.
    pub fn simple_reflection(&self, i: usize) -> WeylElt {
        WeylElt {
            fin: self.finite.times_simple(0, i),
            trans: SmallVec::from_elem(0, self.rank()),
        }
    }

    /// The element `v * t_lambda` where `v` is given by a word in simple reflections.
    pub fn from_finite_word(&self, word: &[usize], lambda: &Weight<i64>) -> WeylElt {
        let fin = word
            .iter()
            .fold(0, |acc, &i| self.finite.times_simple(acc, i));
        WeylElt {
            fin,
            trans: lambda.0.iter().copied().collect(),
        }
    }

    /// The finite part as a standalone element of `W_f`.
    pub fn finite_part(&self, w: &WeylElt) -> WeylElt {
        WeylElt {
            fin: w.fin,
            trans: SmallVec::from_elem(0, self.rank()),
        }
    }

    /// Shortlex-least reduced word of the finite part (0-based simple indices).
    pub fn finite_word(&self, w: &WeylElt) -> Vec<usize> {
        self.finite.word(w.fin).iter().map(|&i| i as usize).collect()
    }

    pub fn check(&self, w: &WeylElt) -> Result<()> {
        if w.trans.len() != self.rank() || (w.fin as usize) >= self.finite.order() {
            return Err(Error::DatumMismatch(format!(
                "{w:?} is not an element of W_ext for {}",
                self.datum.name()
            )));
        }
        Ok(())
    }

    /// Composition of affine maps: `(x y)(mu) = x(y(mu))`.
    pub fn multiply(&self, x: &WeylElt, y: &WeylElt) -> WeylElt {
        // (v1 t_l1)(v2 t_l2) = v1 v2 t_{v2^{-1} l1 + l2}
        let v2_inv = self.finite.inverse(y.fin);
        let moved = self.finite.apply(v2_inv, &x.trans);
        WeylElt {
            fin: self.finite.mul(x.fin, y.fin),
            trans: moved.iter().zip(&y.trans).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn try_multiply(&self, x: &WeylElt, y: &WeylElt) -> Result<WeylElt> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.multiply(x, y))
    }

    pub fn inverse(&self, w: &WeylElt) -> WeylElt {
        // (v t_l)^{-1} = v^{-1} t_{-v l}
        let img = self.finite.apply(w.fin, &w.trans);
        WeylElt {
            fin: self.finite.inverse(w.fin),
            trans: img.iter().map(|x| -x).collect(),
        }
    }

    /// Image of a weight under the affine map `mu -> fin(mu + trans)`.
    pub fn apply(&self, w: &WeylElt, mu: &Weight<i64>) -> Weight<i64> {
        let shifted: Vec<i64> = mu.0.iter().zip(&w.trans).map(|(a, b)| a + b).collect();
        Weight(self.finite.apply(w.fin, &shifted))
    }

    /// Coxeter length via the closed formula.
    pub fn length(&self, w: &WeylElt) -> usize {
        let signs = self.finite.keeps_positive(w.fin);
        self.datum
            .positive_roots()
            .iter()
            .zip(signs)
            .map(|(root, &pos)| {
                let n: i64 = root.coroot.iter().zip(&w.trans).map(|(c, t)| c * t).sum();
                if pos {
                    n.unsigned_abs() as usize
                } else {
                    (1 + n).unsigned_abs() as usize
                }
            })
            .sum()
    }

    pub fn is_identity(&self, w: &WeylElt) -> bool {
        w.fin == 0 && w.trans.iter().all(|&x| x == 0)
    }

    /// `w * s` for the Coxeter generator with index `g`.
    pub fn times_generator(&self, w: &WeylElt, g: usize) -> WeylElt {
        self.multiply(w, &self.generators[g].elt)
    }

    pub fn generator_times(&self, g: usize, w: &WeylElt) -> WeylElt {
        self.multiply(&self.generators[g].elt, w)
    }

    /// Factor `w = u * omega` with `u` in `W` and `l(omega) = 0`, returning a reduced word for `u`.
    pub fn omega_of(&self, w: &WeylElt) -> OmegaFactorization {
        let mut cur = w.clone();
        let mut len = self.length(&cur);
        let mut word = Vec::with_capacity(len);
        while len > 0 {
            let (g, next) = (0..self.generators.len())
                .map(|g| (g, self.generator_times(g, &cur)))
                .find(|(_, x)| self.length(x) < len)
                .expect("an element of positive length has a left descent");
            word.push(g);
            cur = next;
            len -= 1;
        }
        OmegaFactorization { omega: cur, word }
    }

    /// True iff `w` lies in the Coxeter group `W = W_f x| ZPhi`.
    pub fn in_coxeter_group(&self, w: &WeylElt) -> bool {
        self.is_identity(&self.omega_of(w).omega)
    }

    /// The minimal-length element `w_lambda` of the coset `W_f t_lambda`.
    ///
    /// It is `v t_lambda` where `v` is the shortest element of `W_f` taking
    /// `lambda` into the dominant chamber: that choice makes exactly the
    /// positive roots with `<lambda, a^vee> < 0` flip sign, which minimizes
    /// every summand of the length formula.
    pub fn min_coset_rep(&self, lambda: &Weight<i64>) -> WeylElt {
        let v = self.dominating_element(lambda);
        WeylElt {
            fin: v,
            trans: lambda.0.iter().copied().collect(),
        }
    }

    /// Shortest `v` in `W_f` with `v(lambda)` dominant.
    pub(crate) fn dominating_element(&self, lambda: &Weight<i64>) -> u32 {
        let mut mu = lambda.clone();
        let mut v = 0u32;
        loop {
            let neg = (0..self.datum.num_simple())
                .find(|&i| mu.pairing(&self.datum.simple_coroots()[i]) < 0);
            match neg {
                Some(i) => {
                    mu = self.datum.reflect(i, &mu);
                    v = self.finite.simple_times(i, v);
                }
                None => return v,
            }
        }
    }

    /// `w` is the minimal representative of `W_f w`.
    pub fn in_fw(&self, w: &WeylElt) -> bool {
        self.dominating_element(&w.translation()) == w.fin
    }

    /// `w` is minimal in `W_f w W_f`: `w = w_lambda` with `lambda` antidominant.
    pub fn in_fwf(&self, w: &WeylElt) -> bool {
        self.in_fw(w)
            && self
                .datum
                .simple_coroots()
                .iter()
                .all(|c| w.translation().pairing(c) <= 0)
    }

    /// Longest element of `W_f`.
    pub fn longest_finite(&self) -> WeylElt {
        WeylElt {
            fin: self.finite.longest(),
            trans: SmallVec::from_elem(0, self.rank()),
        }
    }

    /// Action of the finite part of `w` on a weight (ignoring translation).
    pub fn finite_apply(&self, w: &WeylElt, mu: &Weight<i64>) -> Weight<i64> {
        self.finite.apply_weight(w.fin, mu)
    }

    /// `w .ell mu = v(mu + ell lambda + rho) - rho` for `w = v t_lambda`.
    pub fn dot_action(&self, w: &WeylElt, mu: &Weight<i64>, ell: i64) -> Weight<i64> {
        let n = self.rank();
        let two_rho = self.datum.two_rho();
        let inner: Vec<i64> = (0..n).map(|k| mu.0[k] + ell * w.trans[k]).collect();
        let moved = self.finite.apply(w.fin, &inner);
        let moved_rho = self.finite.apply(w.fin, &two_rho.0);
        // v(rho) - rho is integral: half of v(2 rho) - 2 rho
        Weight(
            (0..n)
                .map(|k| moved[k] + (moved_rho[k] - two_rho.0[k]) / 2)
                .collect(),
        )
    }

    /// Dot action with an arbitrary rational `rho` representative.
    pub fn dot_action_with_rho(
        &self,
        w: &WeylElt,
        mu: &Weight<num_rational::Rational64>,
        ell: i64,
        rho: &Weight<num_rational::Rational64>,
    ) -> Weight<num_rational::Rational64> {
        use num_rational::Rational64;
        let n = self.rank();
        let inner: Vec<Rational64> = (0..n)
            .map(|k| mu.0[k] + Rational64::from_integer(ell * w.trans[k]) + rho.0[k])
            .collect();
        let m = self.finite.matrix(w.fin);
        Weight(
            (0..n)
                .map(|i| {
                    (0..n).fold(Rational64::from_integer(0), |acc, j| {
                        acc + Rational64::from_integer(m[i * n + j]) * inner[j]
                    }) - rho.0[i]
                })
                .collect(),
        )
    }

    /// `ell`-dilated alcove coordinates of a weight (lower-closure convention).
    pub fn alcove_of(&self, lambda: &Weight<i64>, cfg: &Config) -> Result<AlcoveCoords> {
        cfg.validate(&self.datum)?;
        self.datum.check_rank(lambda)?;
        Ok(AlcoveCoords::of_weight(&self.datum, lambda, cfg.ell))
    }

    pub fn alcove_of_elt(&self, w: &WeylElt, cfg: &Config) -> Result<AlcoveCoords> {
        cfg.validate(&self.datum)?;
        let mu = self.dot_action(w, &Weight::zero(self.rank()), cfg.ell);
        Ok(AlcoveCoords::of_weight(&self.datum, &mu, cfg.ell))
    }

    /// All `w` in `W` with `l(w) <= max_len`, sorted by `(length, normal form)`.
    pub fn ball(&self, max_len: usize) -> Vec<WeylElt> {
        let mut out = vec![self.identity()];
        let mut layer = vec![self.identity()];
        for k in 0..max_len {
            let next: BTreeSet<WeylElt> = layer
                .par_iter()
                .flat_map_iter(|w| {
                    (0..self.generators.len())
                        .map(move |g| self.times_generator(w, g))
                        .filter(|x| self.length(x) == k + 1)
                })
                .collect();
            if next.is_empty() {
                break;
            }
            layer = next.into_iter().collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    /// Elements of `Omega` reachable as products of generator powers within the
    /// bound: full cyclic groups for finite-order generators, exponents in
    /// `[-bound, bound]` for infinite-order ones. Sorted, identity included.
    pub fn omega_set(&self, bound: usize) -> Vec<WeylElt> {
        let mut set = vec![self.identity()];
        for gen in &self.omega_gens {
            let exps: Vec<i64> = match gen.order {
                Some(d) => (0..d as i64).collect(),
                None => (-(bound as i64)..=bound as i64).collect(),
            };
            let inv = self.inverse(&gen.elt);
            let mut next = Vec::new();
            for base in &set {
                for &e in &exps {
                    let step = if e >= 0 { &gen.elt } else { &inv };
                    let mut x = base.clone();
                    for _ in 0..e.unsigned_abs() {
                        x = self.multiply(&x, step);
                    }
                    next.push(x);
                }
            }
            set = next;
        }
        let uniq: BTreeSet<WeylElt> = set.into_iter().collect();
        uniq.into_iter().collect()
    }

    /// `ball(max_len)` multiplied on the right by the given `Omega` elements,
    /// sorted by `(length, normal form)`.
    pub fn ball_ext(&self, max_len: usize, omegas: &[WeylElt]) -> Vec<WeylElt> {
        let base = self.ball(max_len);
        let mut out: Vec<(usize, WeylElt)> = base
            .iter()
            .flat_map(|w| omegas.iter().map(move |o| self.multiply(w, o)))
            .map(|x| (self.length(&x), x))
            .collect();
        out.sort();
        out.dedup();
        out.into_iter().map(|(_, x)| x).collect()
    }

    /// Reduced expression `w = s_{g1} ... s_{gk} omega` as generator indices.
    pub fn reduced_word(&self, w: &WeylElt) -> OmegaFactorization {
        self.omega_of(w)
    }

    /// Deduplicated set of elements, useful for tests of bijectivity.
    pub fn distinct(elts: impl IntoIterator<Item = WeylElt>) -> HashSet<WeylElt> {
        elts.into_iter().collect()
    }
}

fn component_letter(c: usize) -> char {
    (b'a' + (c % 26) as u8) as char
}

pub use text::{format_elt, parse_elt};
