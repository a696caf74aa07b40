//! Linear algebra over F_q and F_{q^m}: rank, reduced row echelon form, null
//! spaces, and the F_q-subspace operations behind the sum-rank machinery.
//!
//! Elimination is plain Gaussian elimination with first-nonzero pivot
//! selection. Arithmetic is exact, so no pivoting heuristics are needed and
//! results are deterministic.

use crate::error::{Error, Result};
use crate::field::{Field, FqElem, FqmElem, TowerRef};

/// Dense row-major matrix over an arbitrary element type. Towers or field
/// contexts are passed to the operations, not stored here. 0×n and n×0
/// matrices are legal and have rank 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type MatrixFq = Matrix<FqElem>;
pub type MatrixFqm = Matrix<FqmElem>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            if r.len() != cols {
                return Err(Error::BadDimensions("ragged rows".into()));
            }
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// A matrix with zero rows and the given number of columns.
    pub fn empty(cols: usize) -> Self {
        Matrix { rows: 0, cols, data: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::BadDimensions(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(idx.len(), self.cols, |i, j| self.at(idx[i], j).clone())
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

/// Reduces `m` in place to reduced row echelon form; returns the pivot
/// columns. First-nonzero pivot selection, columns scanned left to right.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..m.cols {
        if pr == m.rows {
            break;
        }
        let Some(pivot_row) = (pr..m.rows).find(|&r| !field.is_zero(m.at(r, col))) else {
            continue;
        };
        m.swap_rows(pr, pivot_row);
        let inv = field
            .inv(m.at(pr, col))
            .expect("pivot is nonzero by selection");
        for j in col..m.cols {
            let v = field.mul(m.at(pr, j), &inv);
            m.set(pr, j, v);
        }
        for r in 0..m.rows {
            if r == pr || field.is_zero(m.at(r, col)) {
                continue;
            }
            let factor = m.at(r, col).clone();
            for j in col..m.cols {
                let t = field.mul(&factor, m.at(pr, j));
                let v = field.sub(m.at(r, j), &t);
                m.set(r, j, v);
            }
        }
        pivots.push(col);
        pr += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut copy = m.clone();
    rref(field, &mut copy).len()
}

/// Generator matrix of the right null space {x | m · xᵀ = 0}: full rank,
/// `cols − rank` rows. The identity matrix yields the empty (0-row) matrix.
pub fn null_space<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let mut red = m.clone();
    let pivots = rref(field, &mut red);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    Matrix::from_fn(free.len(), m.cols, |i, j| {
        let fc = free[i];
        if j == fc {
            field.one()
        } else if let Some(pi) = pivots.iter().position(|&p| p == j) {
            field.neg(red.at(pi, fc))
        } else {
            field.zero()
        }
    })
}

pub fn mat_mul<F: Field>(
    field: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Result<Matrix<F::Elem>> {
    if a.cols != b.rows {
        return Err(Error::BadDimensions(format!(
            "{}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(Matrix::from_fn(a.rows, b.cols, |i, j| {
        let mut acc = field.zero();
        for t in 0..a.cols {
            acc = field.add(&acc, &field.mul(a.at(i, t), b.at(t, j)));
        }
        acc
    }))
}

pub fn vec_mat_mul<F: Field>(
    field: &F,
    v: &[F::Elem],
    m: &Matrix<F::Elem>,
) -> Result<Vec<F::Elem>> {
    if v.len() != m.rows {
        return Err(Error::LengthMismatch { expected: m.rows, got: v.len() });
    }
    Ok((0..m.cols)
        .map(|j| {
            let mut acc = field.zero();
            for (i, x) in v.iter().enumerate() {
                if !field.is_zero(x) {
                    acc = field.add(&acc, &field.mul(x, m.at(i, j)));
                }
            }
            acc
        })
        .collect())
}

/// True iff the row spaces of `a` and `b` coincide.
pub fn row_space_eq<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> bool {
    if a.cols != b.cols {
        return false;
    }
    let ra = rank(field, a);
    let rb = rank(field, b);
    ra == rb && rank(field, &a.vstack(b).expect("same cols")) == ra
}

/// The m × len matrix over F_q whose column j is the coefficient vector of
/// v_j in the basis 1, z, …, z^{m−1}. Realizes rank weights as matrix ranks.
pub fn expand_over_fq(tower: &TowerRef, v: &[FqmElem]) -> Result<MatrixFq> {
    for x in v {
        if x.coeffs().len() != tower.m || x.coeffs().iter().any(|c| c.coeffs().len() != tower.e) {
            return Err(Error::MixedTowers);
        }
    }
    Ok(Matrix::from_fn(tower.m, v.len(), |i, j| {
        v[j].coeffs()[i].clone()
    }))
}

/// dim_{F_q} of the span of the entries of `v`, i.e. the rank weight of `v`.
pub fn rank_over_fq(tower: &TowerRef, v: &[FqmElem]) -> Result<usize> {
    let m = expand_over_fq(tower, v)?;
    Ok(rank(&tower.fq(), &m))
}

/// Multiplies every F_q coefficient of `v` by the base-field scalar `c`.
pub fn scale_by_base(tower: &TowerRef, c: &FqElem, v: &FqmElem) -> FqmElem {
    let fq = tower.fq();
    FqmElem(v.coeffs().iter().map(|x| fq.mul(c, x)).collect())
}

/// An F_q-subspace of F_{q^m}, stored by a reduced basis (never by element
/// enumeration). The basis is the RREF of the spanning coefficient rows, so
/// equal subspaces have equal bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceFq {
    tower: TowerRef,
    basis: Vec<FqmElem>,
}

impl SubspaceFq {
    pub fn from_span(tower: &TowerRef, span: &[FqmElem]) -> Result<SubspaceFq> {
        let mut rows = expand_over_fq(tower, span)?.transpose();
        let fq = tower.fq();
        let pivots = rref(&fq, &mut rows);
        let basis = (0..pivots.len())
            .map(|i| FqmElem(rows.row(i).to_vec()))
            .collect();
        Ok(SubspaceFq { tower: tower.clone(), basis })
    }

    pub fn tower(&self) -> &TowerRef {
        &self.tower
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FqmElem] {
        &self.basis
    }

    pub fn contains(&self, x: &FqmElem) -> bool {
        let mut with_x: Vec<FqmElem> = self.basis.clone();
        with_x.push(x.clone());
        let m = expand_over_fq(&self.tower, &with_x).expect("same tower");
        rank(&self.tower.fq(), &m) == self.dim()
    }

    /// Sum of subspaces as a subspace. The empty sum is {0}.
    pub fn sum(tower: &TowerRef, parts: &[&SubspaceFq]) -> Result<SubspaceFq> {
        let mut span = Vec::new();
        for s in parts {
            if s.tower.as_ref() != tower.as_ref() {
                return Err(Error::MixedTowers);
            }
            span.extend(s.basis.iter().cloned());
        }
        SubspaceFq::from_span(tower, &span)
    }

    /// Every element of the subspace, in the lexicographic order of the
    /// F_q-coordinate tuples over the stored basis. q^dim entries.
    pub fn elements(&self) -> Vec<FqmElem> {
        let fq = self.tower.fq();
        let kext = self.tower.fqm();
        let q = self.tower.q;
        let total = q.pow(self.dim() as u32);
        (0..total)
            .map(|mut idx| {
                let mut acc = kext.zero();
                for b in &self.basis {
                    let lambda = fq.from_index(idx % q);
                    idx /= q;
                    acc = kext.add(&acc, &scale_by_base(&self.tower, &lambda, b));
                }
                acc
            })
            .collect()
    }
}

/// True iff `target` meets the sum of `others` only in {0}, decided through
/// dim(target) + dim(Σ others) = dim(target + Σ others) on stacked expansions.
pub fn sum_intersects_trivially(target: &SubspaceFq, others: &[SubspaceFq]) -> Result<bool> {
    let tower = target.tower();
    let refs: Vec<&SubspaceFq> = others.iter().collect();
    let sum = SubspaceFq::sum(tower, &refs)?;
    let mut all: Vec<&SubspaceFq> = vec![target];
    all.extend(others.iter());
    let joined = SubspaceFq::sum(tower, &all)?;
    Ok(target.dim() + sum.dim() == joined.dim())
}
