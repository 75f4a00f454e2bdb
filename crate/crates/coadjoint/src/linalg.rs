//! Exact linear algebra over the rationals.
//!
//! Two elimination routes are provided on purpose: reduced row echelon form
//! over `Rat` (canonical forms, solving) and a fraction-free Bareiss
//! elimination over cleared integers (ranks with bounded intermediate
//! growth). Tests play them against each other.

use crate::rat::{rone, rzero, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![rzero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = rone();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Rat>]) -> Self {
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn rows_vec(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut s = rzero();
            for k in 0..self.cols {
                if !self[(i, k)].is_zero() && !other[(k, j)].is_zero() {
                    s += &self[(i, k)] * &other[(k, j)];
                }
            }
            s
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut s = rzero();
                for k in 0..self.cols {
                    if !self[(i, k)].is_zero() && !v[k].is_zero() {
                        s += &self[(i, k)] * &v[k];
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-rone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form together with the pivot column of each
    /// nonzero row. Pivots are 1 with zeros above and below.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(i, j)] - &(&f * &m[(r, j)]);
                        m[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank by fraction-free Bareiss elimination over cleared integers.
    /// Independent of `rref`; intermediate entries stay division-exact.
    pub fn rank_bareiss(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Clear denominators row by row; row scaling preserves rank.
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    let d = self[(i, j)].denom();
                    lcm = num_integer::lcm(lcm, d.clone());
                }
                (0..self.cols)
                    .map(|j| {
                        let r = &self[(i, j)];
                        r.numer() * (&lcm / r.denom())
                    })
                    .collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in rank + 1..self.rows {
                for j in c + 1..self.cols {
                    let t = &m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j];
                    m[i][j] = &t / &prev; // exact by Bareiss
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[rank][c].clone();
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Basis of the right null space `{x : Mx = 0}`, canonicalized so each
    /// vector has 1 in its free coordinate.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut x = vec![rzero(); self.cols];
            x[free] = rone();
            for (c, slot) in pivot_set.iter().enumerate() {
                if let Some(row) = slot {
                    x[c] = -r[(*row, free)].clone();
                }
            }
            basis.push(x);
        }
        basis
    }

    /// One solution of `Mx = b`, if consistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        aug = r;
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![rzero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = aug[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, if nonsingular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                rone()
            } else {
                rzero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    /// Smallest `k` with `M^k = 0`, or None if `M` is not nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        assert_eq!(self.rows, self.cols);
        if self.is_zero() {
            return Some(1);
        }
        let mut p = self.clone();
        for k in 1..=self.rows {
            if p.is_zero() {
                return Some(k);
            }
            p = p.mul(self);
        }
        if p.is_zero() {
            Some(self.rows + 1)
        } else {
            None
        }
    }

    /// Exact `exp(M)` for nilpotent `M` (finite series).
    pub fn exp_nilpotent(&self) -> Option<Self> {
        let k = self.nilpotency_index()?;
        let mut acc = Self::identity(self.rows);
        let mut term = Self::identity(self.rows);
        let mut fact = rone();
        for i in 1..k {
            term = term.mul(self);
            fact *= Rat::from_integer(BigInt::from(i as i64));
            acc = acc.add(&term.scale(&fact.recip()));
        }
        Some(acc)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Max |entry| as f64, for diagnostics.
pub fn inf_norm_f64(m: &nalgebra::DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_is_zero(a: &[Rat]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).fold(rzero(), |s, t| s + t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RatMat {
        RatMat::from_fn(rows.len(), rows[0].len(), |i, j| rint(rows[i][j]))
    }

    #[test]
    fn rref_canonical() {
        let a = m(&[&[2, 4, 6], &[1, 2, 4], &[0, 0, 2]]);
        let (r, pivots) = a.rref();
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(r[(0, 0)], rint(1));
        assert_eq!(r[(0, 1)], rint(2));
        assert_eq!(r[(0, 2)], rint(0));
        assert_eq!(r[(1, 2)], rint(1));
        assert!(r.row(2).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn kernel_solves() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(vec_is_zero(&a.mul_vec(v)));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = a.solve(&[rint(3), rint(1)]).unwrap();
        assert_eq!(x, vec![rint(2), rint(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[rint(0), rint(1)]).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let a = RatMat::from_fn(3, 3, |i, j| rat((i + 2 * j + 1) as i64, (i + j + 1) as i64));
        if let Some(inv) = a.inverse() {
            assert_eq!(a.mul(&inv), RatMat::identity(3));
        }
    }

    #[test]
    fn exp_nilpotent_strictly_upper() {
        let mut n = RatMat::zeros(3, 3);
        n[(0, 1)] = rint(2);
        n[(1, 2)] = rint(5);
        let e = n.exp_nilpotent().unwrap();
        assert_eq!(e[(0, 1)], rint(2));
        assert_eq!(e[(0, 2)], rint(5)); // 2*5/2!
        assert_eq!(e[(2, 2)], rint(1));
        assert!(RatMat::identity(3).nilpotency_index().is_none());
    }

    proptest! {
        /// The two elimination routes must agree on rank.
        #[test]
        fn bareiss_rank_matches_rref(entries in proptest::collection::vec(-9i64..=9, 20)) {
            let a = RatMat::from_fn(4, 5, |i, j| rint(entries[i * 5 + j]));
            prop_assert_eq!(a.rank(), a.rank_bareiss());
        }

        /// Kernel dimension complements rank.
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-4i64..=4, 12)) {
            let a = RatMat::from_fn(3, 4, |i, j| rat(entries[i * 4 + j], 1 + (i + j) as i64));
            prop_assert_eq!(a.rank() + a.kernel().len(), 4);
        }
    }
}
