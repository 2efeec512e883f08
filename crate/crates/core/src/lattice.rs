//! Integer matrices and the Smith normal form.
//!
//! Used for two lattice questions: whether `Y / ZPhi^vee` is torsion-free, and
//! generators of `X / ZPhi` (which is isomorphic to `Omega`).

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// `left * a * right = diag` with `left`, `right` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Invariant factors, nonnegative, each dividing the next nonzero one.
    pub diag: Vec<i64>,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
}

impl Smith {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|&&d| d != 0).count()
    }

    /// True when every nonzero invariant factor is 1, i.e. the cokernel is free.
    pub fn cokernel_torsion_free(&self) -> bool {
        self.diag.iter().all(|&d| d == 0 || d == 1)
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
    }

    // row_i -= q * row_j
    fn row_sub(&mut self, i: usize, j: usize, q: i64) {
        if q == 0 {
            return;
        }
        for c in 0..self.a[0].len() {
            self.a[i][c] -= q * self.a[j][c];
        }
        for c in 0..self.u[0].len() {
            self.u[i][c] -= q * self.u[j][c];
        }
        for row in self.u_inv.iter_mut() {
            row[j] += q * row[i];
        }
    }

    // col_i -= q * col_j
    fn col_sub(&mut self, i: usize, j: usize, q: i64) {
        if q == 0 {
            return;
        }
        for row in self.a.iter_mut() {
            row[i] -= q * row[j];
        }
        for row in self.v.iter_mut() {
            row[i] -= q * row[j];
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -*x;
        }
        for x in self.u[i].iter_mut() {
            *x = -*x;
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -row[i];
        }
    }
}

/// Smith normal form of an `m x n` integer matrix.
pub fn smith_normal_form(a: &[Vec<i64>]) -> Smith {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut w = Work {
        a: a.to_vec(),
        u: identity(m),
        u_inv: identity(m),
        v: identity(n),
    };
    if n == 0 {
        return Smith {
            diag: Vec::new(),
            left: w.u,
            left_inv: w.u_inv,
            right: w.v,
        };
    }

    for t in 0..m.min(n) {
        'pivot: loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if w.a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break 'pivot;
            };
            w.swap_rows(t, bi);
            w.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..m {
                let q = w.a[i][t].div_euclid(w.a[t][t]);
                w.row_sub(i, t, q);
                if w.a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = w.a[t][j].div_euclid(w.a[t][t]);
                w.col_sub(j, t, q);
                if w.a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block
            let p = w.a[t][t];
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| w.a[i][j] % p != 0));
            match bad {
                Some(i) => w.row_sub(t, i, -1),
                None => break 'pivot,
            }
        }
        if w.a[t][t] < 0 {
            w.negate_row(t);
        }
    }

    let diag = (0..m.min(n)).map(|i| w.a[i][i]).collect();
    Smith {
        diag,
        left: w.u,
        left_inv: w.u_inv,
        right: w.v,
    }
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: IntMatrix) {
        let s = smith_normal_form(&a);
        let d = mat_mul(&mat_mul(&s.left, &a), &s.right);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, s.diag[i]);
                } else {
                    assert_eq!(x, 0, "off-diagonal entry in {d:?}");
                }
            }
        }
        assert_eq!(mat_mul(&s.left, &s.left_inv), identity(a.len()));
        let nz: Vec<i64> = s.diag.iter().copied().filter(|&x| x != 0).collect();
        for pair in nz.windows(2) {
            assert_eq!(pair[1] % pair[0], 0);
        }
    }

    #[test]
    fn small_matrices() {
        check(vec![vec![2]]);
        check(vec![vec![2, -1], vec![-1, 2]]);
        check(vec![vec![1, 0], vec![-1, 1], vec![0, -1]]);
        check(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        check(vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn invariant_factors() {
        let s = smith_normal_form(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(s.diag, vec![1, 3]);
        let s = smith_normal_form(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(s.diag, vec![2, 6, 12]);
    }

    #[test]
    fn torsion() {
        assert!(smith_normal_form(&[vec![1], vec![-1]]).cokernel_torsion_free());
        assert!(!smith_normal_form(&[vec![2]]).cokernel_torsion_free());
    }
}
