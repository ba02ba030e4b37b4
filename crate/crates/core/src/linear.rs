//! Exact vectors, matrices and bilinear operations over [`Scalar`].
//!
//! Matrices follow the column convention: column `j` holds the coordinates
//! of the image of basis vector `j`.

use thiserror::Error;

use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(k: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| k * x).collect()
}

pub fn vec_neg(v: &[Scalar]) -> Vector {
    v.iter().map(|x| -x).collect()
}

/// `acc += k * v`
pub fn vec_axpy(acc: &mut [Scalar], k: &Scalar, v: &[Scalar]) {
    if k.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(k * x);
        }
    }
}

/// Concatenate coordinate vectors of a direct sum.
pub fn vec_concat(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().chain(b).cloned().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixS {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl MatrixS {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixS { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn diagonal(d: Vec<Scalar>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, s) in d.into_iter().enumerate() {
            m.set(i, i, s);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinearError> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinearError::DimensionMismatch { expected: c, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(MatrixS { rows: r, cols: c, entries })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, s) in col.iter().enumerate() {
                m.set(i, j, s.clone());
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        self.entries[r * self.cols + c] = s;
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        debug_assert_eq!(v.len(), self.cols);
        let mut out = zero_vector(self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o = &*o + &(m * x);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &MatrixS) -> MatrixS {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let cols: Vec<Vector> = (0..other.cols).map(|j| self.apply(&other.column(j))).collect();
        Self::from_columns(self.rows, &cols)
    }

    pub fn add(&self, other: &MatrixS) -> MatrixS {
        MatrixS {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &MatrixS) -> MatrixS {
        MatrixS {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> MatrixS {
        MatrixS { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| k * a).collect() }
    }

    pub fn map_entries<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<MatrixS, E> {
        let entries = self.entries.iter().map(f).collect::<Result<_, _>>()?;
        Ok(MatrixS { rows: self.rows, cols: self.cols, entries })
    }

    /// Block diagonal `[[a, 0], [0, b]]`.
    pub fn block_diag(a: &MatrixS, b: &MatrixS) -> MatrixS {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        m
    }

    /// Row echelon form by fraction-exact elimination. Pivots are the first
    /// nonzero entry in row order. Returns the reduced matrix, the pivot
    /// columns, and the determinant factor collected along the way.
    fn eliminate(&self, augment: Option<&MatrixS>) -> (MatrixS, Vec<usize>, Scalar) {
        let extra = augment.map(|a| a.cols).unwrap_or(0);
        let width = self.cols + extra;
        let mut m = MatrixS::zeros(self.rows, width);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            if let Some(a) = augment {
                for j in 0..a.cols {
                    m.set(i, self.cols + j, a.get(i, j).clone());
                }
            }
        }
        let mut det = Scalar::one();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !m.get(r, col).is_zero()) else {
                det = Scalar::zero();
                continue;
            };
            if p != row {
                for j in 0..width {
                    m.entries.swap(p * width + j, row * width + j);
                }
                det = -det;
            }
            let pivot = m.get(row, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for j in col..width {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..width {
                    let v = m.get(r, j) - &(&factor * m.get(row, j));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        if pivots.len() < self.cols.min(self.rows) || !self.is_square() {
            det = Scalar::zero();
        }
        (m, pivots, det)
    }

    pub fn determinant(&self) -> Result<Scalar, LinearError> {
        if !self.is_square() {
            return Err(LinearError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.eliminate(None).2)
    }

    pub fn rank(&self) -> usize {
        self.eliminate(None).1.len()
    }

    /// Exact inverse via Gauss-Jordan elimination on `[m | I]`.
    pub fn inverse(&self) -> Result<MatrixS, LinearError> {
        if !self.is_square() {
            return Err(LinearError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let (m, pivots, _) = self.eliminate(Some(&Self::identity(n)));
        if pivots.len() < n {
            return Err(LinearError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, m.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// A left inverse `L` with `L·self = I`, for a matrix of full column rank.
    pub fn left_inverse(&self) -> Result<MatrixS, LinearError> {
        let (_, pivots, _) = self.transpose().eliminate(None);
        // Rows of `self` at the pivot positions of the transpose form an
        // invertible square block.
        if pivots.len() < self.cols {
            return Err(LinearError::Singular);
        }
        let mut block = MatrixS::zeros(self.cols, self.cols);
        for (bi, &r) in pivots.iter().enumerate() {
            for j in 0..self.cols {
                block.set(bi, j, self.get(r, j).clone());
            }
        }
        let binv = block.inverse()?;
        let mut left = MatrixS::zeros(self.cols, self.rows);
        for i in 0..self.cols {
            for (bi, &r) in pivots.iter().enumerate() {
                left.set(i, r, binv.get(i, bi).clone());
            }
        }
        Ok(left)
    }

    pub fn transpose(&self) -> MatrixS {
        let mut t = MatrixS::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }
}

/// Inverse of a square matrix; see [`MatrixS::inverse`].
pub fn mat_inverse(m: &MatrixS) -> Result<MatrixS, LinearError> {
    m.inverse()
}

/// Whether `f·g = g·f` exactly.
pub fn maps_commute(f: &MatrixS, g: &MatrixS) -> Result<bool, LinearError> {
    if !f.is_square() {
        return Err(LinearError::NotSquare { rows: f.rows, cols: f.cols });
    }
    if f.rows != g.rows || !g.is_square() {
        return Err(LinearError::DimensionMismatch { expected: f.rows, found: g.rows });
    }
    Ok(f.mul(g) == g.mul(f))
}

/// A bilinear operation `x_i ∗ x_j = Σ_k c[i][j][k] x_k`, stored sparsely:
/// each basis pair keeps only its nonzero `(k, coefficient)` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTensor {
    dim: usize,
    table: Vec<Vec<(usize, Scalar)>>,
}

impl StructureTensor {
    pub fn zero(dim: usize) -> Self {
        StructureTensor { dim, table: vec![Vec::new(); dim * dim] }
    }

    /// Tabulate `f` on all basis pairs.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut t = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                t.set_product(i, j, &f(i, j));
            }
        }
        t
    }

    /// Tabulate a bilinear map given on arbitrary vectors.
    pub fn from_bilinear(dim: usize, f: impl Fn(&[Scalar], &[Scalar]) -> Vector) -> Self {
        let basis: Vec<Vector> = (0..dim).map(|i| unit_vector(dim, i)).collect();
        Self::from_fn(dim, |i, j| f(&basis[i], &basis[j]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: &[Scalar]) {
        self.table[i * self.dim + j] =
            v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(k, s)| (k, s.clone())).collect();
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, s: Scalar) {
        let mut v = self.product(i, j);
        v[k] = s;
        self.set_product(i, j, &v);
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.entries(i, j).iter().find(|(kk, _)| *kk == k).map(|(_, s)| s.clone()).unwrap_or_default()
    }

    /// Nonzero entries of `x_i ∗ x_j`.
    pub fn entries(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    /// `x_i ∗ x_j` as a dense vector.
    pub fn product(&self, i: usize, j: usize) -> Vector {
        let mut v = zero_vector(self.dim);
        for (k, s) in self.entries(i, j) {
            v[*k] = s.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    /// `(u ∗ v)_k = Σ_{i,j} u_i v_j c[i][j][k]`, skipping zero coordinates.
    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let entries = self.entries(i, j);
                if entries.is_empty() {
                    continue;
                }
                let w = ui * vj;
                for (k, c) in entries {
                    out[*k] = &out[*k] + &(&w * c);
                }
            }
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> StructureTensor {
        StructureTensor {
            dim: self.dim,
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|(i, s)| (*i, k * s)).filter(|(_, s)| !s.is_zero()).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &StructureTensor) -> StructureTensor {
        Self::from_fn(self.dim, |i, j| vec_add(&self.product(i, j), &other.product(i, j)))
    }

    pub fn sub(&self, other: &StructureTensor) -> StructureTensor {
        Self::from_fn(self.dim, |i, j| vec_sub(&self.product(i, j), &other.product(i, j)))
    }

    pub fn neg(&self) -> StructureTensor {
        self.scale(&Scalar::from_int(-1))
    }

    /// `(i, j) ↦ x_j ∗ x_i`
    pub fn opposite(&self) -> StructureTensor {
        Self::from_fn(self.dim, |i, j| self.product(j, i))
    }

    pub fn map_entries<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<StructureTensor, E> {
        let mut out = Self::zero(self.dim);
        for (idx, row) in self.table.iter().enumerate() {
            let mut new_row = Vec::with_capacity(row.len());
            for (k, s) in row {
                let v = f(s)?;
                if !v.is_zero() {
                    new_row.push((*k, v));
                }
            }
            out.table[idx] = new_row;
        }
        Ok(out)
    }
}

/// Bilinear evaluation with dimension checks.
pub fn bilinear_eval(t: &StructureTensor, u: &[Scalar], v: &[Scalar]) -> Result<Vector, LinearError> {
    for len in [u.len(), v.len()] {
        if len != t.dim {
            return Err(LinearError::DimensionMismatch { expected: t.dim, found: len });
        }
    }
    Ok(t.eval(u, v))
}

/// Whether `f(x_i ∗ x_j) = f(x_i) ∗ f(x_j)` on every basis pair.
pub fn is_morphism(t: &StructureTensor, f: &MatrixS) -> Result<bool, LinearError> {
    if !f.is_square() || f.rows != t.dim {
        return Err(LinearError::DimensionMismatch { expected: t.dim, found: f.rows });
    }
    let images: Vec<Vector> = (0..t.dim).map(|i| f.column(i)).collect();
    for i in 0..t.dim {
        for j in 0..t.dim {
            if f.apply(&t.product(i, j)) != t.eval(&images[i], &images[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
    fn m(rows: &[&[i64]]) -> MatrixS {
        MatrixS::from_rows(rows.iter().map(|r| r.iter().map(|&x| s(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn inverse_of_shear() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let inv = mat_inverse(&a).unwrap();
        assert_eq!(inv, m(&[&[1, -1], &[0, 1]]));
        assert!(a.mul(&inv).is_identity());
    }

    #[test]
    fn inverse_of_identity_and_singular() {
        assert!(mat_inverse(&MatrixS::identity(4)).unwrap().is_identity());
        assert_eq!(mat_inverse(&m(&[&[1, 1], &[1, 1]])), Err(LinearError::Singular));
        assert!(matches!(mat_inverse(&MatrixS::zeros(2, 3)), Err(LinearError::NotSquare { .. })));
    }

    #[test]
    fn determinant_tracks_swaps() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), s(-1));
        assert_eq!(m(&[&[2, 1], &[1, 3]]).determinant().unwrap(), s(5));
        assert!(m(&[&[1, 1], &[1, 1]]).determinant().unwrap().is_zero());
    }

    #[test]
    fn commute_examples() {
        let f = m(&[&[0, 1], &[0, 0]]);
        let g = m(&[&[1, 0], &[0, 2]]);
        // fg = [[0,2],[0,0]], gf = [[0,1],[0,0]]
        assert!(!maps_commute(&f, &g).unwrap());
        assert!(maps_commute(&MatrixS::identity(2), &g).unwrap());
        assert!(maps_commute(&f, &MatrixS::identity(3)).is_err());
    }

    #[test]
    fn left_inverse_of_injective_map() {
        let t = m(&[&[1, 0], &[2, 1], &[0, 3]]);
        let l = t.left_inverse().unwrap();
        assert!(l.mul(&t).is_identity());
        assert_eq!(m(&[&[1, 2], &[2, 4], &[0, 0]]).left_inverse(), Err(LinearError::Singular));
        assert_eq!(t.rank(), 2);
    }

    #[test]
    fn bilinear_eval_rejects_bad_lengths() {
        let t = StructureTensor::zero(2);
        assert!(bilinear_eval(&t, &[s(1)], &[s(1), s(0)]).is_err());
        assert!(is_zero_vector(&bilinear_eval(&t, &[s(0), s(0)], &[s(1), s(2)]).unwrap()));
    }

    #[test]
    fn zero_tensor_admits_every_morphism() {
        let t = StructureTensor::zero(2);
        assert!(is_morphism(&t, &m(&[&[1, 5], &[7, 0]])).unwrap());
    }
}
