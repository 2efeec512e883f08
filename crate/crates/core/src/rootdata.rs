//! Root data, weights, dominance and `rho`.
//!
//! Weights live in `X = Z^rank` and coweights in `Y = Z^rank`; the pairing is
//! the dot product. Cartan entries follow `cartan[i][j] = <alpha_j, alpha_i^vee>`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::lattice::{smith_normal_form, IntMatrix};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Element of `X (x) Q` in the standard coordinates of the datum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight<T = i64>(pub Vec<T>);

/// Element of `Y`.
pub type Coweight = Vec<i64>;

impl<T: Scalar> Weight<T> {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![T::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn pairing(&self, coweight: &[i64]) -> T {
        self.0
            .iter()
            .zip(coweight)
            .fold(T::zero(), |acc, (x, &c)| acc + x.clone() * scalar_from_i64::<T>(c))
    }

    pub fn scale(&self, k: &T) -> Self {
        Weight(self.0.iter().map(|x| x.clone() * k.clone()).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Scalar::is_integral)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(num_traits::Zero::is_zero)
    }
}

impl Weight<i64> {
    pub fn to_rational(&self) -> Weight<Rational64> {
        Weight(self.0.iter().map(|&x| Rational64::from_integer(x)).collect())
    }
}

impl Weight<Rational64> {
    /// Integer weight with the same coordinates, if every coordinate is integral.
    pub fn to_integral(&self) -> Option<Weight<i64>> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Weight)
    }
}

pub(crate) fn scalar_from_i64<T: Scalar>(x: i64) -> T {
    T::from_i64(x).expect("scalar type cannot represent an i64 coordinate")
}

impl<T: Scalar> Add for &Weight<T> {
    type Output = Weight<T>;
    fn add(self, rhs: Self) -> Weight<T> {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        Weight(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }
}

impl<T: Scalar> Sub for &Weight<T> {
    type Output = Weight<T>;
    fn sub(self, rhs: Self) -> Weight<T> {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        Weight(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }
}

impl<T: Scalar> Neg for &Weight<T> {
    type Output = Weight<T>;
    fn neg(self) -> Weight<T> {
        Weight(self.0.iter().map(|a| T::zero() - a.clone()).collect())
    }
}

impl<T: fmt::Display> fmt::Display for Weight<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// A positive root together with its coroot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub root: Weight<i64>,
    pub coroot: Coweight,
    /// Coordinates in the basis of simple roots.
    pub simple_coords: Vec<i64>,
    /// Coordinates of the coroot in the basis of simple coroots.
    pub simple_cocoords: Vec<i64>,
    /// Index of the irreducible component containing the root.
    pub component: usize,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }

    pub fn coheight(&self) -> i64 {
        self.simple_cocoords.iter().sum()
    }
}

// Guards the positive-root closure against non-crystallographic or indefinite input.
const MAX_POSITIVE_ROOTS: usize = 4096;

/// An immutable root datum with a fixed choice of simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    name: String,
    rank: usize,
    simple_roots: Vec<Weight<i64>>,
    simple_coroots: Vec<Coweight>,
    cartan: IntMatrix,
    components: Vec<Vec<usize>>,
    positive_roots: Vec<Root>,
    gl_blocks: Option<Vec<usize>>,
}

/// On-disk description of a root datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumFile {
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    #[serde(default)]
    pub name: String,
}

impl RootDatum {
    /// Builds and validates a datum from simple roots in `X` and simple coroots in `Y`.
    pub fn new(
        name: impl Into<String>,
        rank: usize,
        simple_roots: Vec<Weight<i64>>,
        simple_coroots: Vec<Coweight>,
    ) -> Result<Self> {
        let name = name.into();
        if rank == 0 {
            return Err(Error::InvalidDatum("rank must be positive".into()));
        }
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::InvalidDatum(format!(
                "{} simple roots but {} simple coroots",
                simple_roots.len(),
                simple_coroots.len()
            )));
        }
        if simple_roots.iter().any(|r| r.rank() != rank)
            || simple_coroots.iter().any(|c| c.len() != rank)
        {
            return Err(Error::InvalidDatum("vector length differs from rank".into()));
        }
        let r = simple_roots.len();
        let cartan: IntMatrix = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| simple_roots[j].pairing(&simple_coroots[i]))
                    .collect()
            })
            .collect();
        for i in 0..r {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidDatum(format!(
                    "<alpha_{i}, alpha_{i}^vee> = {} (expected 2)",
                    cartan[i][i]
                )));
            }
            for j in 0..r {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::InvalidDatum(format!(
                        "Cartan entries ({i},{j}) and ({j},{i}) are not admissible"
                    )));
                }
            }
        }

        // Y / Z Phi^vee must be torsion-free.
        if r > 0 {
            let coroot_matrix: IntMatrix = (0..rank)
                .map(|row| simple_coroots.iter().map(|c| c[row]).collect())
                .collect();
            let snf = smith_normal_form(&coroot_matrix);
            if !snf.cokernel_torsion_free() {
                return Err(Error::InvalidDatum(format!(
                    "Y / ZPhi^vee has torsion (invariant factors {:?})",
                    snf.diag
                )));
            }
            if snf.rank() != r {
                return Err(Error::InvalidDatum("simple coroots are linearly dependent".into()));
            }
        }

        let components = connected_components(&cartan);
        let positive_roots =
            positive_root_closure(&simple_roots, &simple_coroots, &components, rank)?;

        Ok(RootDatum {
            name,
            rank,
            simple_roots,
            simple_coroots,
            cartan,
            components,
            positive_roots,
            gl_blocks: None,
        })
    }

    /// `GL_{a_1} x ... x GL_{a_k}` with its standard maximal torus.
    pub fn build_gl(a: &[usize]) -> Result<Self> {
        if a.is_empty() || a.contains(&0) {
            return Err(Error::InvalidDatum(
                "GL block sizes must form a nonempty tuple of positive integers".into(),
            ));
        }
        let n: usize = a.iter().sum();
        let mut roots = Vec::new();
        let mut offset = 0;
        for &size in a {
            for j in offset..offset + size - 1 {
                let mut v = vec![0; n];
                v[j] = 1;
                v[j + 1] = -1;
                roots.push(v);
            }
            offset += size;
        }
        let name = format!(
            "GL:{}",
            a.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        );
        let simple_roots = roots.iter().cloned().map(Weight).collect();
        let mut d = RootDatum::new(name, n, simple_roots, roots)?;
        d.gl_blocks = Some(a.to_vec());
        Ok(d)
    }

    /// Simply-connected datum of type A1, A2, B2 or G2, in fundamental-weight coordinates.
    pub fn build_simple(label: &str) -> Result<Self> {
        let cartan: IntMatrix = match label {
            "A1" => vec![vec![2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            // alpha_1 long, alpha_2 short
            "B2" => vec![vec![2, -1], vec![-2, 2]],
            "G2" => vec![vec![2, -1], vec![-3, 2]],
            other => return Err(Error::Unsupported(other.to_string())),
        };
        let r = cartan.len();
        // alpha_j = sum_i cartan[i][j] varpi_i, and alpha_i^vee is the i-th dual basis vector.
        let simple_roots = (0..r)
            .map(|j| Weight((0..r).map(|i| cartan[i][j]).collect()))
            .collect();
        let simple_coroots = (0..r)
            .map(|i| (0..r).map(|k| i64::from(i == k)).collect())
            .collect();
        RootDatum::new(label, r, simple_roots, simple_coroots)
    }

    /// Parses a CLI selector: `A1`, `A2`, `B2`, `G2` or `GL:a1,a2,...`.
    pub fn from_selector(sel: &str) -> Result<Self> {
        let sel = sel.trim();
        if let Some(rest) = sel.strip_prefix("GL:") {
            let a = rest
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad GL block size `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            RootDatum::build_gl(&a)
        } else {
            RootDatum::build_simple(sel)
        }
    }

    pub fn from_file_description(desc: DatumFile) -> Result<Self> {
        let name = if desc.name.is_empty() {
            "custom".to_string()
        } else {
            desc.name
        };
        RootDatum::new(
            name,
            desc.rank,
            desc.simple_roots.into_iter().map(Weight).collect(),
            desc.simple_coroots,
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let desc: DatumFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("datum file: {e}")))?;
        RootDatum::from_file_description(desc)
    }

    pub fn to_file_description(&self) -> DatumFile {
        DatumFile {
            rank: self.rank,
            simple_roots: self.simple_roots.iter().map(|w| w.0.clone()).collect(),
            simple_coroots: self.simple_coroots.clone(),
            name: self.name.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots (the semisimple rank).
    pub fn num_simple(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Weight<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Coweight] {
        &self.simple_coroots
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    /// Simple indices grouped by irreducible component.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// Block sizes when the datum was built by [`RootDatum::build_gl`].
    pub fn gl_blocks(&self) -> Option<&[usize]> {
        self.gl_blocks.as_deref()
    }

    pub fn is_semisimple(&self) -> bool {
        self.num_simple() == self.rank
    }

    /// Coxeter number: one more than the largest height of a root.
    /// A torus gets `h = 1`.
    pub fn coxeter_number(&self) -> u32 {
        self.positive_roots
            .iter()
            .map(|r| r.height() as u32 + 1)
            .max()
            .unwrap_or(1)
    }

    /// Per component, the positive root whose coroot has maximal height.
    ///
    /// Its affine reflection at level one is the extra Coxeter generator: the
    /// reflecting hyperplanes of `W_f x ZPhi` are `<mu, beta^vee> = k`, so the
    /// fundamental alcove is cut out by the highest coroot.
    pub fn affine_roots(&self) -> Vec<&Root> {
        (0..self.components.len())
            .map(|c| {
                self.positive_roots
                    .iter()
                    .filter(|r| r.component == c)
                    .max_by_key(|r| (r.coheight(), r.simple_cocoords.clone()))
                    .expect("every component has a simple root")
            })
            .collect()
    }

    /// Half the sum of the positive roots.
    pub fn rho(&self) -> Weight<Rational64> {
        let two = self.two_rho();
        Weight(two.0.iter().map(|&x| Rational64::new(x, 2)).collect())
    }

    /// Sum of the positive roots.
    pub fn two_rho(&self) -> Weight<i64> {
        let mut acc = vec![0i64; self.rank];
        for r in &self.positive_roots {
            for (a, x) in acc.iter_mut().zip(&r.root.0) {
                *a += x;
            }
        }
        Weight(acc)
    }

    /// For GL data, the integral representative `(a-1, a-2, ..., 0)` per block.
    /// It differs from `rho` by a central vector.
    pub fn integral_rho(&self) -> Option<Weight<i64>> {
        let blocks = self.gl_blocks.as_ref()?;
        let mut v = Vec::with_capacity(self.rank);
        for &a in blocks {
            v.extend((0..a as i64).rev());
        }
        Some(Weight(v))
    }

    pub fn pairing<T: Scalar>(&self, lambda: &Weight<T>, coroot: &[i64]) -> T {
        lambda.pairing(coroot)
    }

    /// Simple reflection `s_i` on `X`.
    pub fn reflect(&self, i: usize, lambda: &Weight<i64>) -> Weight<i64> {
        let k = lambda.pairing(&self.simple_coroots[i]);
        Weight(
            lambda
                .0
                .iter()
                .zip(&self.simple_roots[i].0)
                .map(|(x, a)| x - k * a)
                .collect(),
        )
    }

    /// `<lambda, alpha_i^vee> >= 0` for all simple `i`. Rejects non-integral input.
    pub fn is_dominant<T: Scalar>(&self, lambda: &Weight<T>) -> Result<bool> {
        self.check_rank(lambda)?;
        if !lambda.is_integral() {
            return Err(Error::NonIntegral(lambda.to_string()));
        }
        Ok(self
            .simple_coroots
            .iter()
            .all(|c| lambda.pairing(c) >= T::zero()))
    }

    pub(crate) fn check_rank<T>(&self, lambda: &Weight<T>) -> Result<()> {
        if lambda.0.len() != self.rank {
            return Err(Error::DatumMismatch(format!(
                "weight of rank {} for datum {} of rank {}",
                lambda.0.len(),
                self.name,
                self.rank
            )));
        }
        Ok(())
    }

    /// Dual basis to the simple coroots on the semisimple part, when it exists
    /// integrally (fundamental weights). Only meaningful for semisimple data.
    pub fn fundamental_weights(&self) -> Option<Vec<Weight<i64>>> {
        if !self.is_semisimple() {
            return None;
        }
        let n = self.rank;
        // Solve <varpi_i, alpha_j^vee> = delta_ij by brute search over the inverse of
        // the coroot matrix: varpi_i = column i of (C^T)^{-1}.
        let m: Vec<Vec<Rational64>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| Rational64::from_integer(self.simple_coroots[j][k]))
                    .collect()
            })
            .collect();
        let inv = invert_rational(&m)?;
        (0..n)
            .map(|i| {
                Weight((0..n).map(|k| inv[k][i]).collect::<Vec<_>>()).to_integral()
            })
            .collect()
    }
}

pub(crate) fn invert_rational(m: &[Vec<Rational64>]) -> Option<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| Rational64::from_integer(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != Rational64::from_integer(0))?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && a[r][col] != Rational64::from_integer(0) {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn connected_components(cartan: &IntMatrix) -> Vec<Vec<usize>> {
    let r = cartan.len();
    let mut seen = vec![false; r];
    let mut out = Vec::new();
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(i) = queue.pop_front() {
            comp.insert(i);
            for j in 0..r {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        out.push(comp.into_iter().collect());
    }
    out
}

fn positive_root_closure(
    simple_roots: &[Weight<i64>],
    simple_coroots: &[Coweight],
    components: &[Vec<usize>],
    rank: usize,
) -> Result<Vec<Root>> {
    let r = simple_roots.len();
    let comp_of: HashMap<usize, usize> = components
        .iter()
        .enumerate()
        .flat_map(|(c, idx)| idx.iter().map(move |&i| (i, c)))
        .collect();
    let unit = |i: usize| -> Vec<i64> { (0..r).map(|k| i64::from(k == i)).collect() };

    let mut roots: Vec<Root> = (0..r)
        .map(|i| Root {
            root: simple_roots[i].clone(),
            coroot: simple_coroots[i].clone(),
            simple_coords: unit(i),
            simple_cocoords: unit(i),
            component: comp_of[&i],
        })
        .collect();
    let mut seen: HashMap<Vec<i64>, usize> = roots
        .iter()
        .enumerate()
        .map(|(k, rt)| (rt.simple_coords.clone(), k))
        .collect();
    let mut queue: VecDeque<usize> = (0..r).collect();

    while let Some(k) = queue.pop_front() {
        for i in 0..r {
            let beta = roots[k].clone();
            if beta.simple_coords == unit(i) {
                continue;
            }
            let p = beta.root.pairing(&simple_coroots[i]);
            let q: i64 = (0..rank).map(|t| simple_roots[i].0[t] * beta.coroot[t]).sum();
            if p == 0 && q == 0 {
                continue;
            }
            let mut coords = beta.simple_coords.clone();
            coords[i] -= p;
            if seen.contains_key(&coords) {
                continue;
            }
            let mut cocoords = beta.simple_cocoords.clone();
            cocoords[i] -= q;
            if coords.iter().any(|&c| c < 0) || cocoords.iter().any(|&c| c < 0) {
                return Err(Error::InvalidDatum(
                    "simple reflections do not preserve the positive roots".into(),
                ));
            }
            let root = Weight(
                (0..rank)
                    .map(|t| beta.root.0[t] - p * simple_roots[i].0[t])
                    .collect(),
            );
            let coroot = (0..rank)
                .map(|t| beta.coroot[t] - q * simple_coroots[i][t])
                .collect();
            seen.insert(coords.clone(), roots.len());
            queue.push_back(roots.len());
            roots.push(Root {
                root,
                coroot,
                simple_coords: coords,
                simple_cocoords: cocoords,
                component: beta.component,
            });
            if roots.len() > MAX_POSITIVE_ROOTS {
                return Err(Error::InvalidDatum(
                    "root system is infinite (Cartan matrix is not of finite type)".into(),
                ));
            }
        }
    }
    roots.sort_by(|a, b| {
        (a.height(), &a.simple_coords)
            .cmp(&(b.height(), &b.simple_coords))
            .then_with(|| b.simple_coords.cmp(&a.simple_coords))
    });
    Ok(roots)
}

/// Run parameters shared by the dot action, alcoves and truncated cell computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// The dilation parameter; must exceed the Coxeter number.
    pub ell: i64,
    /// Maximal Coxeter length of the truncated ball.
    pub ball_radius: usize,
    /// Extra strata used to certify cell completeness.
    pub margin: usize,
    /// Exponent bound for translates by infinite-order elements of `Omega`.
    pub omega_bound: usize,
}

impl Config {
    pub fn new(ell: i64, ball_radius: usize) -> Self {
        Config {
            ell,
            ball_radius,
            margin: 2,
            omega_bound: 1,
        }
    }

    pub fn validate(&self, datum: &RootDatum) -> Result<()> {
        let h = i64::from(datum.coxeter_number());
        if self.ell <= h {
            return Err(Error::InvalidConfig(format!(
                "ell = {} must exceed the Coxeter number {h} of {}",
                self.ell,
                datum.name()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zoo() -> Vec<RootDatum> {
        let mut v: Vec<RootDatum> = ["A1", "A2", "B2", "G2"]
            .iter()
            .map(|l| RootDatum::build_simple(l).unwrap())
            .collect();
        for a in [&[1][..], &[2], &[3], &[1, 2], &[2, 2], &[4], &[1, 1]] {
            v.push(RootDatum::build_gl(a).unwrap());
        }
        v
    }

    #[test]
    fn gl_constructors() {
        let t = RootDatum::build_gl(&[1]).unwrap();
        assert_eq!(t.rank(), 1);
        assert_eq!(t.num_simple(), 0);
        assert!(t.positive_roots().is_empty());

        let g2 = RootDatum::build_gl(&[2]).unwrap();
        assert_eq!(g2.rank(), 2);
        assert_eq!(g2.simple_roots(), &[Weight(vec![1, -1])]);

        let g12 = RootDatum::build_gl(&[1, 2]).unwrap();
        assert_eq!(g12.rank(), 3);
        assert_eq!(g12.simple_roots(), &[Weight(vec![0, 1, -1])]);
        assert_eq!(g12.cartan(), &vec![vec![2]]);
        assert_eq!(
            g12.simple_roots()[0].pairing(&g12.simple_coroots()[0]),
            g12.cartan()[0][0]
        );

        assert!(RootDatum::build_gl(&[]).is_err());
        assert!(RootDatum::build_gl(&[2, 0]).is_err());
    }

    #[test]
    fn simple_constructors() {
        let a1 = RootDatum::build_simple("A1").unwrap();
        assert_eq!(a1.simple_roots(), &[Weight(vec![2])]);
        assert_eq!(a1.cartan(), &vec![vec![2]]);
        let a2 = RootDatum::build_simple("A2").unwrap();
        assert_eq!(a2.cartan(), &vec![vec![2, -1], vec![-1, 2]]);
        let g2 = RootDatum::build_simple("G2").unwrap();
        assert_eq!(g2.cartan(), &vec![vec![2, -1], vec![-3, 2]]);
        assert!(matches!(
            RootDatum::build_simple("F4"),
            Err(Error::Unsupported(_))
        ));
    }

    // Root strings: the alpha_i-string through alpha_j (i != j) is
    // alpha_j, alpha_j + alpha_i, ..., alpha_j - <alpha_j, alpha_i^vee> alpha_i.
    #[test]
    fn cartan_matches_root_strings() {
        for d in zoo() {
            let roots: BTreeSet<Vec<i64>> = d
                .positive_roots()
                .iter()
                .map(|r| r.simple_coords.clone())
                .collect();
            let r = d.num_simple();
            for i in 0..r {
                for j in 0..r {
                    if i == j {
                        continue;
                    }
                    let mut len = 0;
                    loop {
                        let mut c = vec![0; r];
                        c[j] = 1;
                        c[i] = len;
                        if !roots.contains(&c) {
                            break;
                        }
                        len += 1;
                    }
                    assert_eq!(len - 1, -d.cartan()[i][j], "{} ({i},{j})", d.name());
                }
            }
        }
    }

    #[test]
    fn positive_root_counts() {
        let count = |l: &str| RootDatum::build_simple(l).unwrap().positive_roots().len();
        assert_eq!(count("A1"), 1);
        assert_eq!(count("A2"), 3);
        assert_eq!(count("B2"), 4);
        assert_eq!(count("G2"), 6);
        assert_eq!(RootDatum::build_gl(&[4]).unwrap().positive_roots().len(), 6);
    }

    #[test]
    fn coxeter_numbers() {
        assert_eq!(RootDatum::build_simple("A1").unwrap().coxeter_number(), 2);
        assert_eq!(RootDatum::build_simple("A2").unwrap().coxeter_number(), 3);
        assert_eq!(RootDatum::build_simple("B2").unwrap().coxeter_number(), 4);
        assert_eq!(RootDatum::build_simple("G2").unwrap().coxeter_number(), 6);
        assert_eq!(RootDatum::build_gl(&[3]).unwrap().coxeter_number(), 3);
        assert_eq!(RootDatum::build_gl(&[1, 1]).unwrap().coxeter_number(), 1);
        assert_eq!(RootDatum::build_gl(&[2, 3]).unwrap().coxeter_number(), 3);
    }

    #[test]
    fn rho_values() {
        let a1 = RootDatum::build_simple("A1").unwrap();
        assert_eq!(a1.rho(), Weight(vec![Rational64::from_integer(1)]));
        let gl2 = RootDatum::build_gl(&[2]).unwrap();
        assert_eq!(
            gl2.rho(),
            Weight(vec![Rational64::new(1, 2), Rational64::new(-1, 2)])
        );
        assert_eq!(gl2.integral_rho(), Some(Weight(vec![1, 0])));
        for d in zoo() {
            for c in d.simple_coroots() {
                assert_eq!(d.rho().pairing(c), Rational64::from_integer(1), "{}", d.name());
            }
            if let Some(int_rho) = d.integral_rho() {
                let diff = &int_rho.to_rational() - &d.rho();
                for r in d.positive_roots() {
                    assert_eq!(diff.pairing(&r.coroot), Rational64::from_integer(0));
                }
            }
        }
    }

    #[test]
    fn dominance() {
        let gl2 = RootDatum::build_gl(&[2]).unwrap();
        assert!(gl2.is_dominant(&Weight(vec![0i64, 0])).unwrap());
        assert!(!gl2.is_dominant(&Weight(vec![0i64, 1])).unwrap());
        let a2 = RootDatum::build_simple("A2").unwrap();
        assert!(a2.is_dominant(&Weight(vec![1i64, 1])).unwrap());
        let half = Weight(vec![Rational64::new(1, 2), Rational64::from_integer(0)]);
        assert!(matches!(a2.is_dominant(&half), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn torsion_check_rejects_pgl2() {
        // X = Z alpha, Y = Z alpha^vee / 2: the coroot is twice a generator of Y.
        let err = RootDatum::new("PGL2", 1, vec![Weight(vec![1])], vec![vec![2]]).unwrap_err();
        assert!(matches!(err, Error::InvalidDatum(_)));
    }

    #[test]
    fn json_round_trip() {
        let a2 = RootDatum::build_simple("A2").unwrap();
        let text = serde_json::to_string(&a2.to_file_description()).unwrap();
        let back = RootDatum::from_json(&text).unwrap();
        assert_eq!(back.cartan(), a2.cartan());
        assert_eq!(back.positive_roots(), a2.positive_roots());
        let selected = RootDatum::from_selector("GL:2,3").unwrap();
        assert_eq!(selected.gl_blocks(), Some(&[2, 3][..]));
    }

    #[test]
    fn affine_roots_are_highest_coroots() {
        let b2 = RootDatum::build_simple("B2").unwrap();
        let theta = b2.affine_roots()[0];
        // highest coroot of B2 has coheight 3, and belongs to the highest short root
        assert_eq!(theta.coheight(), 3);
        assert_eq!(theta.height(), 2);
        let g2 = RootDatum::build_simple("G2").unwrap();
        assert_eq!(g2.affine_roots()[0].coheight(), 5);
    }

    #[test]
    fn config_validation() {
        let a2 = RootDatum::build_simple("A2").unwrap();
        assert!(Config::new(3, 4).validate(&a2).is_err());
        assert!(Config::new(4, 4).validate(&a2).is_ok());
        let torus = RootDatum::build_gl(&[1, 1]).unwrap();
        assert!(Config::new(1, 0).validate(&torus).is_err());
        assert!(Config::new(2, 0).validate(&torus).is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rho_shift_is_integral(coords in proptest::collection::vec(-50i64..50, 2)) {
            for label in ["A2", "B2", "G2"] {
                let d = RootDatum::build_simple(label).unwrap();
                let lam = Weight(coords.clone()).to_rational();
                let shifted = &lam + &d.rho();
                for r in d.positive_roots() {
                    prop_assert!(shifted.pairing(&r.coroot).is_integer());
                }
            }
            let gl = RootDatum::build_gl(&[2]).unwrap();
            let shifted = &Weight(coords).to_rational() + &gl.rho();
            for r in gl.positive_roots() {
                prop_assert!(shifted.pairing(&r.coroot).is_integer());
            }
        }
    }
}
