//! Multipartition combinatorics for weight cells of `GL_a = GL_{a_1} x ... x GL_{a_k}`.
//!
//! Nilpotent orbits of `GL_a` are labelled by multipartitions `pi` of `a`; the
//! reductive centralizer of `x_pi` is `GL_{mult(pi)}`. Weight cells are then
//! labelled by eventually trivial chains `pi^(1), pi^(2), ...` with
//! `pi^(j)` a multipartition of `mult(pi^(j-1))`. Also here: the zero-orbit
//! formula `mu -> w_0 mu - 2 rho`, the scaling step `mu -> mu / ell`, the
//! Frobenius projectivity bound, and nilpotent orbit counts for small types.

use std::fmt;

use serde::Serialize;

use crate::rootdata::{Config, RootDatum, Weight};
use crate::weyl::WeylGroup;
use crate::{Error, Result};

/// A partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// `(part, multiplicity)` with parts strictly decreasing.
    pub fn exponents(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `[1^n]`.
    pub fn is_zero_orbit(&self) -> bool {
        self.0.iter().all(|&p| p == 1)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (p, m)) in self.exponents().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            if m == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{m}")?;
            }
        }
        write!(f, "]")
    }
}

/// All partitions of `n` in reverse lexicographic order, `[n]` first.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A tuple of partitions, one per entry of `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Multipartition(Vec<Partition>);

impl Multipartition {
    pub fn new(parts: Vec<Partition>) -> Self {
        Multipartition(parts)
    }

    pub fn parts(&self) -> &[Partition] {
        &self.0
    }

    /// The tuple `a` with `self` a multipartition of `a`.
    pub fn sizes(&self) -> Vec<usize> {
        self.0.iter().map(Partition::size).collect()
    }

    /// Concatenated multiplicities of the distinct parts of each constituent.
    pub fn mult(&self) -> Vec<usize> {
        self.0
            .iter()
            .flat_map(|p| p.exponents().into_iter().map(|(_, m)| m))
            .collect()
    }

    /// The label `([1^{a_1}], ..., [1^{a_k}])` of the zero orbit.
    pub fn is_zero_orbit(&self) -> bool {
        self.0.iter().all(Partition::is_zero_orbit)
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `mult(pi)`.
pub fn mult(pi: &Multipartition) -> Vec<usize> {
    pi.mult()
}

/// All multipartitions of `a`, the first component varying slowest.
pub fn enumerate_multipartitions(a: &[usize]) -> Vec<Multipartition> {
    let mut out = vec![Vec::new()];
    for &n in a {
        let ps = partitions(n);
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Partition>| {
                ps.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Multipartition).collect()
}

/// Semisimple rank `sum (a_i - 1)` of `GL_a`.
pub fn semisimple_rank(a: &[usize]) -> usize {
    a.iter().map(|&x| x.saturating_sub(1)).sum()
}

fn is_trivial(a: &[usize]) -> bool {
    a.iter().all(|&x| x == 1)
}

/// The nontrivial prefix of an eventually trivial chain of multipartitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CellLabel {
    pub seq: Vec<Multipartition>,
}

impl CellLabel {
    /// Checks `seq[0]` is a multipartition of `a`, `seq[j]` of `mult(seq[j-1])`,
    /// and that the last `mult` (or `a` itself, for the empty chain) is trivial.
    pub fn validate(&self, a: &[usize]) -> Result<()> {
        let mut cur = a.to_vec();
        for (j, pi) in self.seq.iter().enumerate() {
            if is_trivial(&cur) {
                return Err(Error::InvalidConfig(format!("term {j} follows a trivial term")));
            }
            if pi.sizes() != cur {
                return Err(Error::InvalidConfig(format!(
                    "term {j} {pi} is not a multipartition of {cur:?}"
                )));
            }
            cur = pi.mult();
        }
        if !is_trivial(&cur) {
            return Err(Error::InvalidConfig(format!("chain ends at {cur:?}, not trivial")));
        }
        Ok(())
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for pi in &self.seq {
            write!(f, "{pi}, ")?;
        }
        write!(f, "\u{2022})")
    }
}

/// All cell labels for `GL_a` with at most `max_terms` nontrivial terms, in
/// depth-first order.
pub fn enumerate_cell_labels(a: &[usize], max_terms: usize) -> Vec<CellLabel> {
    fn rec(cur: &[usize], prefix: &mut Vec<Multipartition>, max_terms: usize, out: &mut Vec<CellLabel>) {
        if prefix.len() == max_terms {
            return;
        }
        for pi in enumerate_multipartitions(cur) {
            let next = pi.mult();
            prefix.push(pi);
            if is_trivial(&next) {
                out.push(CellLabel { seq: prefix.clone() });
            } else {
                rec(&next, prefix, max_terms, out);
            }
            prefix.pop();
        }
    }
    if is_trivial(a) {
        return vec![CellLabel { seq: Vec::new() }];
    }
    let mut out = Vec::new();
    rec(a, &mut Vec::new(), max_terms, &mut out);
    out
}

/// `GL_4` or `GL_(1,2)`.
pub fn group_name(a: &[usize]) -> String {
    match a {
        [n] => format!("GL_{n}"),
        _ => {
            let parts: Vec<String> = a.iter().map(usize::to_string).collect();
            format!("GL_({})", parts.join(","))
        }
    }
}

/// Header line plus one label per line.
pub fn table1(a: &[usize], max_terms: usize) -> String {
    let mut s = format!("Weight cells for {}\n", group_name(a));
    for label in enumerate_cell_labels(a, max_terms) {
        s.push_str(&label.to_string());
        s.push('\n');
    }
    s
}

/// Whether `mu + 2 rho` is antidominant, i.e. `mu` lies in `-X^+ - 2 rho`.
pub fn in_zero_orbit_regime(datum: &RootDatum, mu: &Weight<i64>) -> bool {
    let shifted = mu + &datum.two_rho();
    datum.simple_coroots().iter().all(|c| shifted.pairing(c) <= 0)
}

/// `mu -> w_0 mu - 2 rho` on `-X^+ - 2 rho`.
pub fn zero_orbit_sigma(g: &WeylGroup, mu: &Weight<i64>) -> Result<Weight<i64>> {
    g.datum().check_rank(mu)?;
    if !in_zero_orbit_regime(g.datum(), mu) {
        return Err(Error::OutOfRegime {
            weight: mu.to_string(),
        });
    }
    let w0mu = g.finite_apply(&g.longest_finite(), mu);
    Ok(&w0mu - &g.datum().two_rho())
}

/// `mu` with `mu_prev = ell mu`, if `mu_prev` lies in `ell X`.
pub fn scaling_step(mu_prev: &Weight<i64>, cfg: &Config) -> Option<Weight<i64>> {
    let ell = cfg.ell;
    if mu_prev.0.iter().all(|x| x % ell == 0) {
        Some(Weight(mu_prev.0.iter().map(|x| x / ell).collect()))
    } else {
        None
    }
}

/// Length of the chain `mu, mu / ell, mu / ell^2, ...` staying in `-X^+ - 2 rho`.
pub fn scaling_depth(datum: &RootDatum, mu: &Weight<i64>, cfg: &Config) -> usize {
    let mut depth = 0;
    let mut cur = mu.clone();
    while let Some(next) = scaling_step(&cur, cfg) {
        if next == cur || !in_zero_orbit_regime(datum, &next) {
            break;
        }
        cur = next;
        depth += 1;
    }
    depth
}

/// `<nu, a^vee> >= ell^m - 1` for every simple coroot.
pub fn frobenius_projective_bound(datum: &RootDatum, nu: &Weight<i64>, m: u32, cfg: &Config) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidConfig("Frobenius depth must be at least 1".into()));
    }
    if !datum.is_dominant(nu)? {
        return Err(Error::NonDominant(nu.to_string()));
    }
    let bound = cfg
        .ell
        .checked_pow(m)
        .ok_or_else(|| Error::InvalidConfig(format!("ell^{m} overflows")))?
        - 1;
    Ok(datum.simple_coroots().iter().all(|c| nu.pairing(c) >= bound))
}

/// Irreducible component types recognized by [`orbit_count`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ComponentType {
    A(usize),
    B2,
    G2,
}

fn classify(datum: &RootDatum, idx: &[usize]) -> Result<ComponentType> {
    let c = datum.cartan();
    let r = idx.len();
    let mut edges = 0;
    let mut degree = vec![0; r];
    let mut max_bond = 0;
    for i in 0..r {
        for j in i + 1..r {
            let bond = c[idx[i]][idx[j]] * c[idx[j]][idx[i]];
            if bond != 0 {
                edges += 1;
                degree[i] += 1;
                degree[j] += 1;
                max_bond = max_bond.max(bond);
            }
        }
    }
    match (r, max_bond) {
        (2, 2) => return Ok(ComponentType::B2),
        (2, 3) => return Ok(ComponentType::G2),
        _ => {}
    }
    // a connected Dynkin diagram with single bonds and no branch point is a path
    if max_bond <= 1 && edges + 1 == r && degree.iter().all(|&d| d <= 2) {
        return Ok(ComponentType::A(r));
    }
    Err(Error::Unsupported(format!("component {idx:?} of {}", datum.name())))
}

/// Number of partitions of `n`.
pub fn partition_count(n: usize) -> u64 {
    partitions(n).len() as u64
}

/// Nilpotent orbits of `so_5`: partitions of 5 whose even parts have even multiplicity.
fn b2_orbits() -> Vec<Partition> {
    partitions(5)
        .into_iter()
        .filter(|p| p.exponents().iter().all(|&(part, m)| part % 2 == 1 || m % 2 == 0))
        .collect()
}

/// Number of nilpotent orbits, for data whose components are of type A, B2 or G2.
///
/// Type `A_n` has `p(n+1)` orbits (Jordan types). `B2 = C2` has the four
/// orthogonal partitions of 5: `[5], [3,1^2], [2^2,1], [1^5]`. `G2` has the five
/// Bala-Carter labels `0, A1, ~A1, G2(a1), G2`.
pub fn orbit_count(datum: &RootDatum) -> Result<u64> {
    datum
        .components()
        .iter()
        .map(|idx| {
            Ok(match classify(datum, idx)? {
                ComponentType::A(r) => partition_count(r + 1),
                ComponentType::B2 => b2_orbits().len() as u64,
                ComponentType::G2 => 5,
            })
        })
        .product()
}
