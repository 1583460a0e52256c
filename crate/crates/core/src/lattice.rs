//! Dense integer linear algebra: Hermite and Smith normal forms, kernels and
//! lattice quotients.
//!
//! Lattices are always spanned by the *rows* of a matrix.

use std::fmt;

use crate::error::{Error, Result};
use crate::laurent_poly::AbelianGroupStructure;
use crate::scalar::Scalar;

/// A dense integer matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix<T> {
    nrows: usize,
    ncols: usize,
    data: Vec<T>,
}

impl<T: Scalar> IntMatrix<T> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            nrows,
            ncols,
            data: vec![T::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>, ncols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged matrix");
            data.extend(r);
        }
        IntMatrix { nrows, ncols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::scalar::sc(v)).collect())
                .collect(),
            ncols,
        )
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.nrows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        let mut out = Self::zero(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let v = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        IntMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        IntMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data,
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        let data = self.data.iter().map(|a| a.clone() * k.clone()).collect();
        IntMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert_eq!(self.nrows, self.ncols);
        let mut base = self.clone();
        let mut acc = Self::identity(self.nrows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.nrows);
        let mut out = vec![T::zero(); self.ncols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.clone() + a.clone() * self[(k, j)].clone();
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> T {
        assert_eq!(self.nrows, self.ncols, "determinant of a non-square matrix");
        let n = self.nrows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.to_rows();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                    a[i][j] = v / prev.clone();
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    /// Integer inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Option<Self> {
        let n = self.nrows;
        if n != self.ncols || !self.det().abs().is_one() {
            return None;
        }
        // Row-reduce [A | I]; HNF of a unimodular matrix is the identity.
        let rows: Vec<Vec<T>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
                r
            })
            .collect();
        let h = hnf(&rows, 2 * n);
        let inv = h.iter().map(|r| r[n..].to_vec()).collect();
        Some(Self::from_rows(inv, n))
    }
}

impl<T> std::ops::Index<(usize, usize)> for IntMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.ncols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for IntMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.ncols + j]
    }
}

impl<T: fmt::Display> fmt::Display for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.nrows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.ncols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.ncols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn axpy<T: Scalar>(dst: &mut [T], q: &T, src: &[T]) {
    // dst -= q * src
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.clone() - q.clone() * s.clone();
        }
    }
}

/// Row Hermite normal form with the unimodular transform.
///
/// Returns `(h, u, rank)` with `u * rows = h`; the first `rank` rows of `h`
/// are the echelon basis (positive pivots, entries above each pivot reduced
/// into `[0, pivot)`), the remaining rows are zero.
pub fn hnf_with_transform<T: Scalar>(
    rows: &[Vec<T>],
    ncols: usize,
) -> (Vec<Vec<T>>, Vec<Vec<T>>, usize) {
    let m = rows.len();
    let mut h: Vec<Vec<T>> = rows.to_vec();
    let mut u: Vec<Vec<T>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero entry at or below r
            let piv = (r..m)
                .filter(|&i| !h[i][col].is_zero())
                .min_by(|&a, &b| h[a][col].abs().cmp(&h[b][col].abs()));
            let Some(p) = piv else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[r][col]);
                let (top, rest) = h.split_at_mut(i);
                axpy(&mut rest[0], &q, &top[r]);
                let (top, rest) = u.split_at_mut(i);
                axpy(&mut rest[0], &q, &top[r]);
                if !h[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m && !h[r][col].is_zero() {
            if h[r][col].is_negative() {
                for x in h[r].iter_mut().chain(u[r].iter_mut()) {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = h[i][col].div_floor(&h[r][col]);
                if q.is_zero() {
                    continue;
                }
                let (top, rest) = h.split_at_mut(r);
                axpy(&mut top[i], &q, &rest[0]);
                let (top, rest) = u.split_at_mut(r);
                axpy(&mut top[i], &q, &rest[0]);
            }
            r += 1;
        }
    }
    (h, u, r)
}

/// Canonical echelon basis of the lattice spanned by `rows`.
pub fn hnf<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let (mut h, _, r) = hnf_with_transform(rows, ncols);
    h.truncate(r);
    h
}

/// Basis of `{x : x * rows = 0}`.
pub fn left_kernel<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let (_, u, r) = hnf_with_transform(rows, ncols);
    let ker: Vec<Vec<T>> = u.into_iter().skip(r).collect();
    let m = rows.len();
    if ker.is_empty() {
        return ker;
    }
    hnf(&ker, m)
}

/// Coefficients `c` with `c * basis = v`, where `basis` is an echelon basis
/// produced by [`hnf`]. `None` when `v` is outside the lattice.
pub fn solve_in_basis<T: Scalar>(basis: &[Vec<T>], v: &[T]) -> Option<Vec<T>> {
    let mut rem = v.to_vec();
    let mut coeffs = vec![T::zero(); basis.len()];
    for (i, b) in basis.iter().enumerate() {
        let col = b.iter().position(|x| !x.is_zero())?;
        // entries left of the pivot must already vanish
        if rem[..col].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let (q, r) = rem[col].div_mod_floor(&b[col]);
        if !r.is_zero() {
            return None;
        }
        axpy(&mut rem, &q, b);
        coeffs[i] = q;
    }
    if rem.iter().all(|x| x.is_zero()) {
        Some(coeffs)
    } else {
        None
    }
}

pub fn contains<T: Scalar>(basis: &[Vec<T>], v: &[T]) -> bool {
    solve_in_basis(basis, v).is_some()
}

pub fn same_lattice<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>], ncols: usize) -> bool {
    hnf(a, ncols) == hnf(b, ncols)
}

/// Smith normal form `u * a * v = diag` (the row transform is not kept).
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    /// Diagonal entries, non-negative, each dividing the next nonzero one.
    pub diag: Vec<T>,
    pub v: IntMatrix<T>,
    pub v_inv: IntMatrix<T>,
}

pub fn smith<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> SmithForm<T> {
    // row reduction first keeps the entries small
    let mut a: Vec<Vec<T>> = hnf(rows, ncols);
    let m = a.len();
    let n = ncols;
    let mut v = IntMatrix::<T>::identity(n);
    let mut vi = IntMatrix::<T>::identity(n);

    let col_sub = |a: &mut Vec<Vec<T>>,
                   v: &mut IntMatrix<T>,
                   vi: &mut IntMatrix<T>,
                   j: usize,
                   t: usize,
                   q: &T| {
        // col_j -= q * col_t
        for row in a.iter_mut() {
            let x = row[j].clone() - q.clone() * row[t].clone();
            row[j] = x;
        }
        for i in 0..n {
            let x = v[(i, j)].clone() - q.clone() * v[(i, t)].clone();
            v[(i, j)] = x;
        }
        for k in 0..n {
            let x = vi[(t, k)].clone() + q.clone() * vi[(j, k)].clone();
            vi[(t, k)] = x;
        }
    };
    let col_swap =
        |a: &mut Vec<Vec<T>>, v: &mut IntMatrix<T>, vi: &mut IntMatrix<T>, i: usize, j: usize| {
            if i == j {
                return;
            }
            for row in a.iter_mut() {
                row.swap(i, j);
            }
            for k in 0..n {
                let x = v[(k, i)].clone();
                v[(k, i)] = v[(k, j)].clone();
                v[(k, j)] = x;
                let y = vi[(i, k)].clone();
                vi[(i, k)] = vi[(j, k)].clone();
                vi[(j, k)] = y;
            }
        };

    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        // pivot: smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        col_swap(&mut a, &mut v, &mut vi, t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (top, rest) = a.split_at_mut(i);
                axpy(&mut rest[0], &q, &top[t]);
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_sub(&mut a, &mut v, &mut vi, j, t, &q);
                if !a[t][j].is_zero() {
                    col_swap(&mut a, &mut v, &mut vi, t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !(a[i][j].clone() % a[t][t].clone()).is_zero()));
            match bad {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    let minus_one = -T::one();
                    axpy(&mut top[t], &minus_one, &rest[0]);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
        }
        diag.push(a[t][t].clone());
    }
    SmithForm { diag, v, v_inv: vi }
}

/// Structure of `Z^ncols / rowspan(rows)`.
pub fn cokernel<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> AbelianGroupStructure<T> {
    let s = smith(rows, ncols);
    let rank = s.diag.len();
    let factors = s.diag.into_iter().filter(|d| !d.is_one()).collect();
    AbelianGroupStructure::new(ncols - rank, factors)
}

/// Rank of the lattice spanned by `rows`.
pub fn rank<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> usize {
    hnf(rows, ncols).len()
}

/// Structure of `span(big) / span(small)`; fails unless `small ⊆ big`.
pub fn quotient<T: Scalar>(
    big: &[Vec<T>],
    small: &[Vec<T>],
    ncols: usize,
) -> Result<AbelianGroupStructure<T>> {
    let basis = hnf(big, ncols);
    let r = basis.len();
    let mut coords = Vec::with_capacity(small.len());
    for v in small {
        let c = solve_in_basis(&basis, v).ok_or_else(|| {
            Error::NotContained("sublattice generator outside the ambient lattice".into())
        })?;
        coords.push(c);
    }
    Ok(cokernel(&coords, r))
}

/// Whether the map `Z^a / rowspan(rel_src) -> Z^b / rowspan(rel_dst)` sending
/// basis vector `i` to `map[i]` is injective and surjective.
///
/// The caller guarantees the map is well defined.
pub fn induced_map_bijectivity<T: Scalar>(
    map: &[Vec<T>],
    rel_src: &[Vec<T>],
    rel_dst: &[Vec<T>],
    src_dim: usize,
    dst_dim: usize,
) -> (bool, bool) {
    let mut stacked: Vec<Vec<T>> = map.to_vec();
    stacked.extend(rel_dst.iter().cloned());
    let h = hnf(&stacked, dst_dim);
    let surjective = h.len() == dst_dim && h.iter().enumerate().all(|(i, r)| r[i].is_one());

    // kernel of Z^a -> coker(rel_dst): projections of left kernel vectors
    let ker = left_kernel(&stacked, dst_dim);
    let src_basis = hnf(rel_src, src_dim);
    let injective = ker.iter().all(|k| contains(&src_basis, &k[..src_dim]));
    (injective, surjective)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i64]]) -> Vec<Vec<i64>> {
        v.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn hnf_basic() {
        let h = hnf(&rows(&[&[2, 4], &[3, 1], &[1, 1]]), 2);
        assert_eq!(h, rows(&[&[1, 1], &[0, 2]]));
        let h = hnf(&rows(&[&[3, 0], &[-2, 1]]), 2);
        assert_eq!(h, rows(&[&[1, 1], &[0, 3]]));
    }

    #[test]
    fn transform_is_consistent() {
        let a = rows(&[&[4, 6, 2], &[2, 3, 1], &[1, 0, 5]]);
        let (h, u, r) = hnf_with_transform(&a, 3);
        let um = IntMatrix::from_rows(u, 3);
        let am = IntMatrix::from_rows(a.clone(), 3);
        assert_eq!(um.mul(&am).to_rows(), h);
        assert_eq!(r, 2);
        let ker = left_kernel(&a, 3);
        assert_eq!(ker.len(), 1);
        let k = IntMatrix::from_rows(ker, 3).mul(&am);
        assert!(k.is_zero());
    }

    #[test]
    fn smith_invariants() {
        let a = rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a, 3);
        assert_eq!(s.diag, vec![2, 6, 12]);
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(3));
        let g = cokernel(&a, 3);
        assert_eq!(g.invariant_factors, vec![2, 6, 12]);
        assert_eq!(
            cokernel(&rows(&[&[0, 6]]), 2),
            AbelianGroupStructure::new(1, vec![6])
        );
    }

    #[test]
    fn determinant_and_inverse() {
        let m = IntMatrix::<i64>::from_i64(&[&[0, 1], &[1, 6]]);
        assert_eq!(m.det(), -1);
        let inv = m.inverse_unimodular().unwrap();
        assert_eq!(m.mul(&inv), IntMatrix::identity(2));
        assert_eq!(IntMatrix::<i64>::from_i64(&[&[2, 3], &[3, 4]]).det(), -1);
        assert_eq!(
            IntMatrix::<i64>::from_i64(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).det(),
            6
        );
    }

    #[test]
    fn quotient_and_membership() {
        let big = rows(&[&[1, 0], &[0, 1]]);
        let small = rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(
            quotient(&big, &small, 2).unwrap().invariant_factors,
            vec![6]
        );
        assert!(quotient(&small, &big, 2).is_err());
        let basis = hnf(&small, 2);
        assert_eq!(solve_in_basis(&basis, &[4, 9]), Some(vec![2, 3]));
        assert!(!contains(&basis, &[1, 0]));
    }

    #[test]
    fn bijectivity_of_induced_maps() {
        // Z/6 -> Z/6 by multiplication with 5: bijective
        let (inj, surj) = induced_map_bijectivity(&[vec![5i64]], &[vec![6]], &[vec![6]], 1, 1);
        assert!(inj && surj);
        // Z/6 -> Z/6 by 2: neither
        let (inj, surj) = induced_map_bijectivity(&[vec![2i64]], &[vec![6]], &[vec![6]], 1, 1);
        assert!(!inj && !surj);
        // Z -> Z/3 by 1: surjective, not injective
        let (inj, surj) = induced_map_bijectivity(&[vec![1i64]], &[], &[vec![3]], 1, 1);
        assert!(!inj && surj);
    }
}
