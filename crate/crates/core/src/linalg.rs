//! Exact dense linear algebra: matrices, reduced row echelon spans,
//! null spaces, Sylvester inertia and fraction-free rank.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend_from_slice(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: Rational) {
        let k = i * self.cols + j;
        self.data[k] += v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| *a * *b)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| *a + *b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(-Rational::ONE))
    }

    pub fn scale(&self, s: Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| *a * s).collect(),
        }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// Row space of a set of vectors, kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Span {
    pub len: usize,
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

impl Span {
    pub fn new(len: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let mut rows: Vec<Vec<Rational>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), len, "vector length mismatch"))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let pivots = rref_in_place(&mut rows, len);
        rows.truncate(pivots.len());
        Span { len, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates of `v` with respect to the echelon rows, or `None`
    /// when `v` lies outside the span.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let c: Vec<Rational> = self.pivots.iter().map(|&p| v[p]).collect();
        let mut r = v.to_vec();
        for (k, row) in self.rows.iter().enumerate() {
            if c[k].is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= c[k] * *y;
                }
            }
        }
        r.iter().all(|x| x.is_zero()).then_some(c)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coords(v).is_some()
    }
}

/// Gauss-Jordan elimination; returns pivot columns. Zero rows sink to the bottom.
pub fn rref_in_place(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if inv != Rational::ONE {
            for x in rows[r].iter_mut() {
                *x *= inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= f * *y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : M x = 0}`.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let pivots = rref_in_place(&mut rows, m.cols);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::ZERO; m.cols];
            v[f] = Rational::ONE;
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -rows[k][f];
            }
            v
        })
        .collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

/// Sylvester inertia by exact symmetric congruence.
pub fn signature(m: &Matrix) -> Result<Inertia, LinalgError> {
    if !m.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let n = m.rows;
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).to_big()).collect())
        .collect();
    Ok(inertia_big(a))
}

/// Inertia of a symmetric matrix given over big rationals.
///
/// Each step uses a nonzero diagonal pivot when one exists in the
/// remaining block. Otherwise a nonzero off-diagonal a_ij is promoted by
/// the congruence row_i += row_j, col_i += col_j, giving a_ii = 2a_ij.
pub fn inertia_big(mut a: Vec<Vec<BigRational>>) -> Inertia {
    let n = a.len();
    let mut alive: Vec<usize> = (0..n).collect();
    let (mut plus, mut minus) = (0, 0);
    while !alive.is_empty() {
        let diag = alive.iter().position(|&i| !a[i][i].is_zero());
        let pos = match diag {
            Some(p) => p,
            None => {
                let mut found = None;
                'outer: for (pi, &i) in alive.iter().enumerate() {
                    for &j in &alive {
                        if j != i && !a[i][j].is_zero() {
                            found = Some((pi, i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((pi, i, j)) = found else { break };
                for &k in &alive {
                    let v = a[j][k].clone();
                    if !v.is_zero() {
                        a[i][k] += v;
                    }
                }
                for &k in &alive {
                    let v = a[k][j].clone();
                    if !v.is_zero() {
                        a[k][i] += v;
                    }
                }
                pi
            }
        };
        let p = alive.swap_remove(pos);
        let d = a[p][p].clone();
        if d.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        let col: Vec<(usize, BigRational)> = alive
            .iter()
            .filter(|&&i| !a[i][p].is_zero())
            .map(|&i| (i, a[i][p].clone() / &d))
            .collect();
        for (i, f) in &col {
            for &k in &alive {
                if a[p][k].is_zero() {
                    continue;
                }
                let delta = f * &a[p][k];
                a[*i][k] -= delta;
            }
        }
    }
    Inertia {
        plus,
        minus,
        zero: n - plus - minus,
    }
}

/// Rank over ℚ of an integer matrix by Bareiss fraction-free elimination.
pub fn rank_bigint(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in r + 1..rows {
            let f = a[i][c].clone();
            for j in c..cols {
                let v = &piv * &a[i][j] - &f * &a[r][j];
                a[i][j] = v / &prev;
            }
        }
        prev = piv;
        r += 1;
    }
    r
}

pub const RANK_PRIME: u64 = (1 << 61) - 1;

/// Rank modulo `RANK_PRIME` of an integer matrix. Never above the rank
/// over ℚ, and equal to it unless p divides every maximal nonzero minor.
pub fn rank_mod_prime(a: &[Vec<i128>]) -> usize {
    let p = RANK_PRIME as u128;
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i128) as u64).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let inv = |x: u64| {
        // Fermat: x^(p-2).
        let (mut b, mut e, mut acc) = (x as u128, p - 2, 1u128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc as u64
    };
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let iv = inv(m[r][c]) as u128;
        let pivot_row = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if row[c] == 0 {
                continue;
            }
            let f = row[c] as u128 * iv % p;
            for j in c..cols {
                let sub = f * pivot_row[j] as u128 % p;
                row[j] = ((row[j] as u128 + p - sub) % p) as u64;
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn inertia_examples() {
        let i4 = Matrix::identity(4);
        assert_eq!(signature(&i4).unwrap(), Inertia { plus: 4, minus: 0, zero: 0 });
        let d = mat(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]);
        assert_eq!(signature(&d).unwrap(), Inertia { plus: 1, minus: 1, zero: 1 });
        let hyp = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(signature(&hyp).unwrap(), Inertia { plus: 1, minus: 1, zero: 0 });
        assert_eq!(signature(&mat(&[&[0, 1], &[2, 0]])), Err(LinalgError::NotSymmetric));
    }

    #[test]
    fn span_coordinates() {
        let s = Span::new(3, vec![vec![q(1, 1), q(1, 1), q(0, 1)], vec![q(2, 1), q(2, 1), q(0, 1)]]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.coords(&[q(3, 1), q(3, 1), q(0, 1)]), Some(vec![q(3, 1)]));
        assert!(!s.contains(&[q(1, 1), q(0, 1), q(0, 1)]));
    }

    #[test]
    fn nullspace_and_rank_agree() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&ns[0]).iter().all(|x| x.is_zero()));
        let big: Vec<Vec<BigInt>> = (0..3)
            .map(|i| (0..3).map(|j| BigInt::from(m.get(i, j).numer())).collect())
            .collect();
        assert_eq!(rank_bigint(big), 2);
    }

    // Independent oracle: inertia from the sign pattern of leading
    // principal minors is fragile, so instead compare against congruence by
    // random unimodular matrices, which must leave inertia unchanged.
    proptest! {
        #[test]
        fn modular_rank_matches_bareiss(
            a in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 5), 1..4),
            b in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 6), 5),
        ) {
            // Product of a k×5 and a 5×6 factor: rank at most k.
            let prod: Vec<Vec<i128>> = a
                .iter()
                .map(|r| (0..6).map(|j| (0..5).map(|t| (r[t] * b[t][j]) as i128).sum()).collect())
                .collect();
            let big = prod.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            prop_assert_eq!(rank_mod_prime(&prod), rank_bigint(big));
        }

        #[test]
        fn inertia_is_congruence_invariant(
            diag in proptest::collection::vec(-2i64..=2, 1..6),
            ops in proptest::collection::vec((0usize..6, 0usize..6, -3i64..=3), 0..12),
        ) {
            let n = diag.len();
            let mut d = Matrix::zeros(n, n);
            for (i, &x) in diag.iter().enumerate() {
                d.set(i, i, Rational::from_int(x));
            }
            let mut u = Matrix::identity(n);
            for (i, j, f) in ops {
                let (i, j) = (i % n, j % n);
                if i == j { continue; }
                let mut e = Matrix::identity(n);
                e.set(i, j, Rational::from_int(f));
                u = u.mul(&e);
            }
            let c = u.transpose().mul(&d).mul(&u);
            let expect = Inertia {
                plus: diag.iter().filter(|&&x| x > 0).count(),
                minus: diag.iter().filter(|&&x| x < 0).count(),
                zero: diag.iter().filter(|&&x| x == 0).count(),
            };
            prop_assert_eq!(signature(&c).unwrap(), expect);
        }
    }
}
