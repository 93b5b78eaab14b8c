//! Dense exact linear algebra over `FieldElem`, skipping zero entries in products.

use crate::field::{FieldElem, FieldError};

pub type Vector = Vec<FieldElem>;

pub fn zero_vec(n: usize) -> Vector {
    vec![FieldElem::zero(); n]
}
pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = FieldElem::one();
    v
}
pub fn vec_add(a: &[FieldElem], b: &[FieldElem]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
pub fn vec_sub(a: &[FieldElem], b: &[FieldElem]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
pub fn vec_neg(a: &[FieldElem]) -> Vector {
    a.iter().map(|x| -x).collect()
}
pub fn vec_scale(a: &[FieldElem], c: &FieldElem) -> Vector {
    if c.is_zero() {
        return zero_vec(a.len());
    }
    if c.is_one() {
        return a.to_vec();
    }
    a.iter().map(|x| if x.is_zero() { FieldElem::zero() } else { x * c }).collect()
}
/// `a + c*b`.
pub fn vec_axpy(a: &mut [FieldElem], c: &FieldElem, b: &[FieldElem]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = &*x + &(c * y);
        }
    }
}
pub fn vec_is_zero(a: &[FieldElem]) -> bool {
    a.iter().all(|x| x.is_zero())
}
pub fn dot(a: &[FieldElem], b: &[FieldElem]) -> FieldElem {
    let mut acc = FieldElem::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![FieldElem::zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::one());
        }
        m
    }
    pub fn from_rows(rows: &[Vector]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Matrix { rows: r, cols: c, data }
    }
    pub fn from_cols(cols: &[Vector], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, x: FieldElem) {
        self.data[i * self.cols + j] = x;
    }
    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }
    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }
    pub fn mul_vec(&self, v: &[FieldElem]) -> Vector {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }
    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            let mut acc = zero_vec(o.cols);
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    vec_axpy(&mut acc, a, o.row(k));
                }
            }
            for (j, x) in acc.into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        out
    }
    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: vec_add(&self.data, &o.data) }
    }
    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: vec_sub(&self.data, &o.data) }
    }
    pub fn scale(&self, c: &FieldElem) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: vec_scale(&self.data, c) }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            let row: Vector = vec_scale(m.row(r), &inv);
            for (j, x) in row.iter().enumerate() {
                m.set(r, j, x.clone());
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = -m.get(i, c);
                    let mut ri = m.row(i).to_vec();
                    vec_axpy(&mut ri, &f, &row);
                    for (j, x) in ri.into_iter().enumerate() {
                        m.set(i, j, x);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }
    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = zero_vec(self.cols);
                v[f] = FieldElem::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f);
                }
                v
            })
            .collect()
    }
    /// Linearly independent columns spanning the column space.
    pub fn column_space(&self) -> Vec<Vector> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.column(c)).collect()
    }
    pub fn inverse(&self) -> Result<Matrix, FieldError> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, FieldElem::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(FieldError::DivisionByZero);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }
    /// A solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[FieldElem]) -> Option<Vector> {
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }
}

/// A subspace given by basis columns, with a left inverse for reading off coordinates.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    basis_matrix: Matrix,
    coord_map: Matrix,
}

impl Subspace {
    /// Spans the given vectors, discarding dependent ones.
    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        let basis = if vectors.is_empty() {
            Vec::new()
        } else {
            Matrix::from_cols(vectors, ambient).column_space()
        };
        Self::from_independent(ambient, basis)
    }
    /// `basis` must be linearly independent.
    pub fn from_independent(ambient: usize, basis: Vec<Vector>) -> Self {
        let d = basis.len();
        let basis_matrix = Matrix::from_cols(&basis, ambient);
        let coord_map = if d == 0 {
            Matrix::zeros(0, ambient)
        } else {
            let (_, rows) = basis_matrix.transpose().rref();
            assert_eq!(rows.len(), d, "basis vectors are dependent");
            let sel = Matrix::from_rows(&rows.iter().map(|&i| basis_matrix.row(i).to_vec()).collect::<Vec<_>>());
            let inv = sel.inverse().expect("selected rows are independent");
            let mut pick = Matrix::zeros(d, ambient);
            for (k, &i) in rows.iter().enumerate() {
                pick.set(k, i, FieldElem::one());
            }
            inv.mul(&pick)
        };
        Subspace { ambient, basis, basis_matrix, coord_map }
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }
    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis_matrix
    }
    /// Coordinates of `x`, assuming `x` lies in the subspace.
    pub fn coords(&self, x: &[FieldElem]) -> Vector {
        self.coord_map.mul_vec(x)
    }
    pub fn coord_map(&self) -> &Matrix {
        &self.coord_map
    }
    pub fn embed(&self, c: &[FieldElem]) -> Vector {
        self.basis_matrix.mul_vec(c)
    }
    pub fn contains(&self, x: &[FieldElem]) -> bool {
        self.embed(&self.coords(x)) == x
    }
}
