//! Dense linear algebra over a prime field `F_p`.
//!
//! Every Hom, Ext and quotient computation in the crate bottoms out here.
//! Matrices carry their modulus; mixing moduli is a programming error and
//! panics. Row reduction always pivots on the leftmost available column, so
//! every basis choice (kernels, complements, sections) is reproducible.

use std::fmt;

use crate::error::{Error, Result};

/// A prime modulus. Primality is checked on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
}

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=65_521).contains(&p) || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::InvalidInput(format!("{p} is not a supported prime")));
        }
        Ok(Field { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        // Fermat
        let mut base = a as u64;
        let mut e = self.p - 2;
        let mut acc = 1u64;
        let m = self.p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        acc as u32
    }

    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Every vector of `F_p^dim` in lexicographic order, as long as there are
    /// at most `limit` of them.
    pub fn all_vectors(self, dim: usize, limit: usize) -> Option<Vec<Vec<u32>>> {
        let total = (self.p as u128).checked_pow(dim as u32)?;
        if total > limit as u128 {
            return None;
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = vec![0u32; dim];
        loop {
            out.push(cur.clone());
            let mut k = dim;
            loop {
                if k == 0 {
                    return Some(out);
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] == self.p {
                    cur[k] = 0;
                } else {
                    break;
                }
            }
        }
    }
}

/// A dense row-major matrix over `F_p`. Zero-row and zero-column matrices
/// are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}x{} mod {}>[", self.rows, self.cols, self.field.p)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Field, rows: usize, cols: usize, entries: &[u32]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Matrix { field, rows, cols, data: entries.iter().map(|&v| v % field.p).collect() }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v % field.p);
            }
        }
        m
    }

    pub fn column_vector(field: Field, v: &[u32]) -> Self {
        Self::from_rows(field, v.len(), 1, v)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u32::from(r == c)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = self.field;
        let p = f.p as u64;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            let row = self.row(r);
            for c in 0..other.cols {
                let mut acc = 0u64;
                for (k, &a) in row.iter().enumerate() {
                    if a != 0 {
                        acc += a as u64 * other.data[k * other.cols + c] as u64;
                        if acc >= 1 << 62 {
                            acc %= p;
                        }
                    }
                }
                out.data[r * other.cols + c] = (acc % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let p = self.field.p as u64;
        (0..self.rows)
            .map(|r| {
                let acc: u64 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64 % p).sum();
                (acc % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in difference");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let f = self.field;
        Matrix { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, s)).collect() }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.field.p - 1)
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &Matrix, s: u32) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(b, s));
        }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Self::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.field, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut out = Self::zeros(self.field, self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Self::zeros(self.field, self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Self::zeros(self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, self.get(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col));
            for c in col..m.cols {
                let v = m.get(row, c);
                m.set(row, c, f.mul(v, inv));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the null space, one vector per free column, in order of
    /// the free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Kernel as a matrix whose columns are [`Matrix::kernel_basis`].
    pub fn kernel_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.cols, &self.kernel_basis())
    }

    /// Indices of a maximal linearly independent set of columns, chosen by
    /// the leftmost-pivot rule.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// A basis of the column space drawn from the columns themselves.
    pub fn column_space(&self) -> Matrix {
        self.select_columns(&self.independent_columns())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Solves `self * X = rhs` for a matrix `X`, if a solution exists.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.field, self.cols, rhs.cols);
        if rhs.cols == 0 {
            return Some(out);
        }
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        for (i, &p) in pivots.iter().enumerate() {
            if p >= self.cols {
                return None;
            }
            for c in 0..rhs.cols {
                out.set(p, c, r.get(i, self.cols + c));
            }
        }
        Some(out)
    }

    pub fn solve_vec(&self, b: &[u32]) -> Option<Vec<u32>> {
        self.solve_matrix(&Matrix::column_vector(self.field, b)).map(|x| x.column(0))
    }
}

/// Result of [`rref_solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Option<Vec<u32>>,
    pub nullspace: Vec<Vec<u32>>,
}

/// Solves `a x = b` for a single right-hand side and also returns a basis of
/// `ker a`; the null space is reported even when the system is inconsistent.
pub fn rref_solve(a: &Matrix, b: &[u32]) -> Result<Solution> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!("{} rows against a right-hand side of length {}", a.rows(), b.len())));
    }
    Ok(Solution { particular: a.solve_vec(b), nullspace: a.kernel_basis() })
}

/// Kernel of `a`, as a list of column vectors.
pub fn kernel_basis(a: &Matrix) -> Vec<Vec<u32>> {
    a.kernel_basis()
}

/// A quotient `V / W` with a chosen complement.
///
/// The complement is spanned by the standard basis vectors at the non-pivot
/// coordinates of the reduced row echelon form of `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    /// `dim(V/W) x dim V`.
    pub projection: Matrix,
    /// `dim V x dim(V/W)`.
    pub section: Matrix,
    /// Reduced basis of `W` as rows.
    pub subspace: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.projection.cols()
    }

    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        self.projection.mul_vec(v)
    }

    pub fn lift(&self, q: &[u32]) -> Vec<u32> {
        self.section.mul_vec(q)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.project(v).iter().all(|&x| x == 0)
    }
}

pub fn quotient_with_section(field: Field, v_dim: usize, w_basis: &[Vec<u32>]) -> Result<Quotient> {
    if let Some(w) = w_basis.iter().find(|w| w.len() != v_dim) {
        return Err(Error::DimensionMismatch(format!("subspace vector of length {} in a space of dimension {v_dim}", w.len())));
    }
    let rows: Vec<u32> = w_basis.iter().flatten().copied().collect();
    let w = Matrix::from_rows(field, w_basis.len(), v_dim, &rows);
    let (r, pivots) = w.rref();
    let rank = pivots.len();
    let reduced = r.block(0, 0, rank, v_dim);
    let mut is_pivot = vec![false; v_dim];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..v_dim).filter(|&c| !is_pivot[c]).collect();
    let qdim = free.len();
    let mut projection = Matrix::zeros(field, qdim, v_dim);
    let mut section = Matrix::zeros(field, v_dim, qdim);
    for (k, &c) in free.iter().enumerate() {
        projection.set(k, c, 1);
        section.set(c, k, 1);
    }
    for (i, &pc) in pivots.iter().enumerate() {
        for (k, &c) in free.iter().enumerate() {
            projection.set(k, pc, field.neg(reduced.get(i, c)));
        }
    }
    Ok(Quotient { projection, section, subspace: reduced })
}

/// Expresses vectors in a fixed linearly independent family.
///
/// Built once per basis; `coordinates` is then a single matrix-vector product
/// plus a membership check.
#[derive(Clone, Debug)]
pub struct CoordinateSystem {
    field: Field,
    ambient: usize,
    rank: usize,
    /// Rows of the ambient space used to read off coordinates.
    selected: Vec<usize>,
    /// Inverse of the selected square block of the basis matrix.
    inverse: Matrix,
    basis: Matrix,
}

impl CoordinateSystem {
    /// `basis` holds the family as columns; they must be independent.
    pub fn new(basis: Matrix) -> Result<Self> {
        let field = basis.field();
        let rank = basis.cols();
        let selected = basis.transpose().independent_columns();
        if selected.len() != rank {
            return Err(Error::Internal("coordinate basis is not linearly independent".into()));
        }
        let square = basis.select_rows(&selected);
        let inverse = square.inverse().ok_or_else(|| Error::Internal("singular coordinate block".into()))?;
        Ok(CoordinateSystem { field, ambient: basis.rows(), rank, selected, inverse, basis })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        debug_assert_eq!(v.len(), self.ambient);
        let picked: Vec<u32> = self.selected.iter().map(|&r| v[r]).collect();
        let x = self.inverse.mul_vec(&picked);
        let back = self.basis.mul_vec(&x);
        (back == v).then_some(x)
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn identity_system_over_f2() {
        let a = Matrix::identity(f2(), 2);
        let s = rref_solve(&a, &[1, 1]).unwrap();
        assert_eq!(s.particular, Some(vec![1, 1]));
        assert!(s.nullspace.is_empty());
    }

    #[test]
    fn single_row_over_f2() {
        let a = Matrix::from_rows(f2(), 1, 2, &[1, 1]);
        let s = rref_solve(&a, &[0]).unwrap();
        assert_eq!(s.particular, Some(vec![0, 0]));
        assert_eq!(s.nullspace, vec![vec![1, 1]]);
    }

    #[test]
    fn empty_system() {
        let a = Matrix::zeros(f2(), 0, 0);
        let s = rref_solve(&a, &[]).unwrap();
        assert_eq!(s.particular, Some(vec![]));
        assert!(s.nullspace.is_empty());
    }

    #[test]
    fn mismatched_rhs_is_an_error() {
        let a = Matrix::identity(f2(), 2);
        assert!(matches!(rref_solve(&a, &[1]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inconsistent_system_still_reports_nullspace() {
        let a = Matrix::from_rows(f2(), 2, 2, &[1, 1, 1, 1]);
        let s = rref_solve(&a, &[1, 0]).unwrap();
        assert_eq!(s.particular, None);
        assert_eq!(s.nullspace, vec![vec![1, 1]]);
    }

    #[test]
    fn kernels() {
        assert!(kernel_basis(&Matrix::identity(f2(), 2)).is_empty());
        let a = Matrix::from_rows(f2(), 2, 2, &[1, 1, 1, 1]);
        assert_eq!(kernel_basis(&a), vec![vec![1, 1]]);
        assert!(kernel_basis(&Matrix::zeros(f2(), 2, 0)).is_empty());
    }

    #[test]
    fn quotient_by_first_axis() {
        let q = quotient_with_section(f2(), 2, &[vec![1, 0]]).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.projection, Matrix::from_rows(f2(), 1, 2, &[0, 1]));
        assert!(q.projection.mul(&q.section).is_identity());
    }

    #[test]
    fn quotient_edge_cases() {
        let q = quotient_with_section(f2(), 3, &[]).unwrap();
        assert!(q.projection.is_identity());
        let q = quotient_with_section(f2(), 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(q.dim(), 0);
        assert!(quotient_with_section(f2(), 2, &[vec![1]]).is_err());
    }

    #[test]
    fn quotient_over_f5() {
        let f = Field::new(5).unwrap();
        let w = vec![vec![1, 2, 3], vec![2, 0, 1]];
        let q = quotient_with_section(f, 3, &w).unwrap();
        assert_eq!(q.dim(), 1);
        for v in &w {
            assert!(q.contains(v));
        }
        assert!(q.projection.mul(&q.section).is_identity());
    }

    #[test]
    fn inverse_and_coordinates() {
        let f = Field::new(7).unwrap();
        let a = Matrix::from_rows(f, 2, 2, &[2, 3, 1, 4]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let cs = CoordinateSystem::new(Matrix::from_columns(f, 3, &[vec![1, 0, 2], vec![0, 1, 1]])).unwrap();
        assert_eq!(cs.coordinates(&[3, 2, 1]), Some(vec![3, 2]));
        assert_eq!(cs.coordinates(&[1, 0, 0]), None);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::new(4).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(3).is_ok());
    }
}
