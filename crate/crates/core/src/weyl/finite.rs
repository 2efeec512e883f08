//! The finite Weyl group `W_f`, enumerated once per datum.
//!
//! Elements are identified by their action matrix on `X`; the table assigns
//! each distinct matrix an index and caches its shortlex-least reduced word,
//! its inverse, products with simple reflections, and which positive roots
//! it keeps positive.

use std::collections::{HashMap, VecDeque};

use crate::rootdata::{RootDatum, Weight};
use crate::{Error, Result};

const MAX_ORDER: usize = 50_000;

#[derive(Clone, Debug)]
pub(crate) struct FiniteWeyl {
    rank: usize,
    /// Row-major `rank x rank` matrices.
    mats: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, u32>,
    words: Vec<Vec<u8>>,
    inverse: Vec<u32>,
    right_simple: Vec<Vec<u32>>,
    left_simple: Vec<Vec<u32>>,
    /// `keeps_positive[v][j]` is true iff `v(beta_j)` is a positive root.
    keeps_positive: Vec<Vec<bool>>,
    longest: u32,
}

impl FiniteWeyl {
    pub(crate) fn new(datum: &RootDatum) -> Result<Self> {
        let n = datum.rank();
        let r = datum.num_simple();
        let gens: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let a = &datum.simple_roots()[i].0;
                let c = &datum.simple_coroots()[i];
                let mut m = vec![0i64; n * n];
                for row in 0..n {
                    for col in 0..n {
                        m[row * n + col] = i64::from(row == col) - a[row] * c[col];
                    }
                }
                m
            })
            .collect();

        let id: Vec<i64> = (0..n * n).map(|k| i64::from(k / n == k % n)).collect();
        let mut mats = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut right_simple: Vec<Vec<u32>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            let mut row = Vec::with_capacity(r);
            for (i, g) in gens.iter().enumerate() {
                let prod = mat_mul(&mats[k], g, n);
                let idx = match index.get(&prod) {
                    Some(&idx) => idx,
                    None => {
                        let idx = mats.len() as u32;
                        if mats.len() >= MAX_ORDER {
                            return Err(Error::InvalidDatum(format!(
                                "finite Weyl group exceeds {MAX_ORDER} elements"
                            )));
                        }
                        index.insert(prod.clone(), idx);
                        mats.push(prod);
                        let mut w = words[k].clone();
                        w.push(i as u8);
                        words.push(w);
                        queue.push_back(idx as usize);
                        idx
                    }
                };
                row.push(idx);
            }
            if right_simple.len() <= k {
                right_simple.resize(k + 1, Vec::new());
            }
            right_simple[k] = row;
        }

        let order = mats.len();
        let left_simple = (0..order)
            .map(|k| {
                gens.iter()
                    .map(|g| index[&mat_mul(g, &mats[k], n)])
                    .collect()
            })
            .collect();
        let id_idx = 0u32;
        let inverse = (0..order)
            .map(|k| {
                // walk the reduced word backwards
                words[k]
                    .iter()
                    .rev()
                    .fold(id_idx, |acc, &i| right_simple[acc as usize][i as usize])
            })
            .collect();

        let roots = datum.positive_roots();
        let root_index: HashMap<&[i64], usize> = roots
            .iter()
            .enumerate()
            .map(|(j, rt)| (rt.root.0.as_slice(), j))
            .collect();
        let keeps_positive: Vec<Vec<bool>> = mats
            .iter()
            .map(|m| {
                roots
                    .iter()
                    .map(|rt| {
                        let img = apply_mat(m, &rt.root.0, n);
                        root_index.contains_key(img.as_slice())
                    })
                    .collect()
            })
            .collect();
        let longest = keeps_positive
            .iter()
            .position(|row| row.iter().all(|&p| !p))
            .expect("W_f has a longest element") as u32;

        Ok(FiniteWeyl {
            rank: n,
            mats,
            index,
            words,
            inverse,
            right_simple,
            left_simple,
            keeps_positive,
            longest,
        })
    }

    pub(crate) fn order(&self) -> usize {
        self.mats.len()
    }

    pub(crate) fn word(&self, v: u32) -> &[u8] {
        &self.words[v as usize]
    }

    #[cfg(test)]
    pub(crate) fn length(&self, v: u32) -> usize {
        self.words[v as usize].len()
    }

    pub(crate) fn inverse(&self, v: u32) -> u32 {
        self.inverse[v as usize]
    }

    pub(crate) fn longest(&self) -> u32 {
        self.longest
    }

    pub(crate) fn times_simple(&self, v: u32, i: usize) -> u32 {
        self.right_simple[v as usize][i]
    }

    pub(crate) fn simple_times(&self, i: usize, v: u32) -> u32 {
        self.left_simple[v as usize][i]
    }

    pub(crate) fn keeps_positive(&self, v: u32) -> &[bool] {
        &self.keeps_positive[v as usize]
    }

    pub(crate) fn matrix(&self, v: u32) -> &[i64] {
        &self.mats[v as usize]
    }

    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        self.words[b as usize]
            .iter()
            .fold(a, |acc, &i| self.right_simple[acc as usize][i as usize])
    }

    pub(crate) fn apply(&self, v: u32, x: &[i64]) -> Vec<i64> {
        apply_mat(&self.mats[v as usize], x, self.rank)
    }

    pub(crate) fn apply_weight(&self, v: u32, x: &Weight<i64>) -> Weight<i64> {
        Weight(self.apply(v, &x.0))
    }

    pub(crate) fn lookup(&self, mat: &[i64]) -> Option<u32> {
        self.index.get(mat).copied()
    }
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

pub(crate) fn apply_mat(m: &[i64], x: &[i64], n: usize) -> Vec<i64> {
    (0..n)
        .map(|i| (0..n).map(|j| m[i * n + j] * x[j]).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let order = |d: RootDatum| FiniteWeyl::new(&d).unwrap().order();
        assert_eq!(order(RootDatum::build_simple("A1").unwrap()), 2);
        assert_eq!(order(RootDatum::build_simple("A2").unwrap()), 6);
        assert_eq!(order(RootDatum::build_simple("B2").unwrap()), 8);
        assert_eq!(order(RootDatum::build_simple("G2").unwrap()), 12);
        assert_eq!(order(RootDatum::build_gl(&[4]).unwrap()), 24);
        assert_eq!(order(RootDatum::build_gl(&[2, 2]).unwrap()), 4);
        assert_eq!(order(RootDatum::build_gl(&[1, 1]).unwrap()), 1);
    }

    #[test]
    fn inverse_and_longest() {
        let d = RootDatum::build_simple("G2").unwrap();
        let w = FiniteWeyl::new(&d).unwrap();
        for v in 0..w.order() as u32 {
            assert_eq!(w.mul(v, w.inverse(v)), 0);
            // number of inversions equals word length
            let inv = w.keeps_positive(v).iter().filter(|&&p| !p).count();
            assert_eq!(inv, w.length(v));
        }
        assert_eq!(w.length(w.longest()), 6);
    }
}
