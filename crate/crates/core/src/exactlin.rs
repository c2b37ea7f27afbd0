//! Exact linear algebra over the rationals.
//!
//! Everything here works on dense row-major matrices of [`Rational`]s except
//! the elimination itself, which keeps its echelon rows sparse. Constraint
//! systems coming out of the derivation solver are tall (tens of thousands of
//! rows) but have few nonzeros per row, so rows are streamed through a
//! [`RowReducer`] instead of being materialised as one big matrix.

use std::fmt;

use malachite_base::num::basic::traits::{One, Zero};
use malachite_nz::integer::Integer;
use malachite_nz::natural::Natural;
pub use malachite_q::Rational;

use crate::error::{Error, Result};

#[inline]
pub fn is_zero(x: &Rational) -> bool {
    *x == 0u32
}

pub fn zero_vec(len: usize) -> Vec<Rational> {
    vec![Rational::ZERO; len]
}

pub fn unit_vec(len: usize, index: usize) -> Vec<Rational> {
    let mut v = zero_vec(len);
    v[index] = Rational::ONE;
    v
}

/// Parses `[+-]digits[/digits]` with a strictly positive denominator.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(text.to_string());
    let (negative, body) = match text.as_bytes().first() {
        Some(b'-') => (true, &text[1..]),
        Some(b'+') => (false, &text[1..]),
        _ => (false, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str| -> Result<Natural> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<Natural>().map_err(|_| bad())
    };
    let mut numerator = Integer::from(digits(num)?);
    if negative {
        numerator = -numerator;
    }
    let denominator = match den {
        Some(d) => digits(d)?,
        None => Natural::ONE,
    };
    if denominator == 0u32 {
        return Err(bad());
    }
    Ok(Rational::from_integers(numerator, Integer::from(denominator)))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::ZERO;
    for (x, y) in a.iter().zip(b) {
        if !is_zero(x) && !is_zero(y) {
            acc += x * y;
        }
    }
    acc
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: zero_vec(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::ONE);
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "matrix entries",
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows; an empty list gives a `0 x 0` matrix.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    what: "matrix row",
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            entries,
        })
    }

    /// Convenience constructor for small integer matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
            .collect();
        Self::from_rows(data).expect("ragged integer matrix")
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    what: "matrix column",
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                if !is_zero(x) {
                    m.set(i, j, x.clone());
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(is_zero)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                what: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                what: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !is_zero(b) {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
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
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

type SparseRow = Vec<(usize, Rational)>;

fn sparse_lookup(row: &SparseRow, col: usize) -> Option<&Rational> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|idx| &row[idx].1)
}

/// `row - factor * other`, dropping cancelled entries.
fn sparse_axpy(row: &SparseRow, factor: &Rational, other: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut a, mut b) = (row.iter().peekable(), other.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some((ca, va)), Some((cb, vb))) => {
                if ca < cb {
                    out.push((*ca, va.clone()));
                    a.next();
                } else if cb < ca {
                    out.push((*cb, -(factor * vb)));
                    b.next();
                } else {
                    let v = va - factor * vb;
                    if !is_zero(&v) {
                        out.push((*ca, v));
                    }
                    a.next();
                    b.next();
                }
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                a.next();
            }
            (None, Some((cb, vb))) => {
                out.push((*cb, -(factor * vb)));
                b.next();
            }
            (None, None) => break,
        }
    }
    out
}

/// Incremental Gauss-Jordan elimination.
///
/// Maintains the reduced row echelon form of the span of every row pushed so
/// far. The echelon form of a row space is unique, so the result does not
/// depend on the order rows arrive in.
#[derive(Clone, Debug)]
pub struct RowReducer {
    cols: usize,
    rows: Vec<SparseRow>,
    scratch: Vec<Rational>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            scratch: zero_vec(cols),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Adds a dense row. Returns whether the rank grew.
    pub fn push(&mut self, row: &[Rational]) -> Result<bool> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                what: "row",
                expected: self.cols,
                found: row.len(),
            });
        }
        self.push_sparse(
            row.iter()
                .enumerate()
                .filter(|(_, x)| !is_zero(x))
                .map(|(c, x)| (c, x.clone())),
        )
    }

    /// Adds a row given as `(column, value)` pairs; repeated columns accumulate.
    pub fn push_sparse<I>(&mut self, entries: I) -> Result<bool>
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut touched = false;
        for (c, v) in entries {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    bound: self.cols,
                });
            }
            if !is_zero(&v) {
                self.scratch[c] += v;
                touched = true;
            }
        }
        if !touched || self.is_full() {
            self.clear_scratch();
            return Ok(false);
        }
        for row in &self.rows {
            let pivot = row[0].0;
            if is_zero(&self.scratch[pivot]) {
                continue;
            }
            let factor = self.scratch[pivot].clone();
            for (c, v) in row {
                self.scratch[*c] -= &factor * v;
            }
        }
        let lead = match self.scratch.iter().position(|x| !is_zero(x)) {
            Some(lead) => lead,
            None => return Ok(false),
        };
        let inverse = Rational::ONE / &self.scratch[lead];
        let mut new_row: SparseRow = Vec::new();
        for c in lead..self.cols {
            if !is_zero(&self.scratch[c]) {
                let v = std::mem::replace(&mut self.scratch[c], Rational::ZERO);
                new_row.push((c, v * &inverse));
            }
        }
        for row in &mut self.rows {
            if let Some(factor) = sparse_lookup(row, lead).cloned() {
                *row = sparse_axpy(row, &factor, &new_row);
            }
        }
        let at = self.rows.partition_point(|r| r[0].0 < lead);
        self.rows.insert(at, new_row);
        Ok(true)
    }

    fn clear_scratch(&mut self) {
        for x in &mut self.scratch {
            if !is_zero(x) {
                *x = Rational::ZERO;
            }
        }
    }

    pub fn dense_rows(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|row| {
                let mut v = zero_vec(self.cols);
                for (c, x) in row {
                    v[*c] = x.clone();
                }
                v
            })
            .collect()
    }

    /// Row space of everything pushed so far.
    pub fn row_space(&self) -> Subspace {
        Subspace {
            ambient_dim: self.cols,
            basis: self.dense_rows(),
            pivot_cols: self.pivots(),
        }
    }

    /// Solutions of `row . v = 0` for every row pushed so far.
    pub fn nullspace(&self) -> Subspace {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut generators = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = unit_vec(self.cols, free);
            for row in &self.rows {
                if let Some(x) = sparse_lookup(row, free) {
                    v[row[0].0] = -x;
                }
            }
            generators.push(v);
        }
        Subspace::span(self.cols, &generators).expect("generators have ambient length")
    }
}

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form; zero rows are kept at the bottom so the shape
/// matches the input.
pub fn rref(m: &Matrix) -> Rref {
    let mut reducer = RowReducer::new(m.cols());
    for i in 0..m.rows() {
        reducer.push(m.row(i)).expect("row length equals column count");
    }
    let mut reduced = Matrix::zeros(m.rows(), m.cols());
    for (i, row) in reducer.rows.iter().enumerate() {
        for (c, x) in row {
            reduced.set(i, *c, x.clone());
        }
    }
    Rref {
        reduced,
        pivots: reducer.pivots(),
        rank: reducer.rank(),
    }
}

pub fn nullspace(m: &Matrix) -> Subspace {
    let mut reducer = RowReducer::new(m.cols());
    for i in 0..m.rows() {
        reducer.push(m.row(i)).expect("row length equals column count");
    }
    reducer.nullspace()
}

/// Particular solution of `m x = b` with every free variable set to zero, or
/// `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            what: "right-hand side",
            expected: m.rows(),
            found: b.len(),
        });
    }
    let n = m.cols();
    let mut reducer = RowReducer::new(n + 1);
    for i in 0..m.rows() {
        let row = m
            .row(i)
            .iter()
            .chain(std::iter::once(&b[i]))
            .enumerate()
            .filter(|(_, x)| !is_zero(x))
            .map(|(c, x)| (c, x.clone()));
        reducer.push_sparse(row)?;
    }
    let mut x = zero_vec(n);
    for row in &reducer.rows {
        let pivot = row[0].0;
        if pivot == n {
            return Ok(None);
        }
        if let Some(rhs) = sparse_lookup(row, n) {
            x[pivot] = rhs.clone();
        }
    }
    Ok(Some(x))
}

/// A linear subspace of `Q^ambient_dim`, stored by its reduced echelon basis.
///
/// Because the basis is canonical, two subspaces are equal exactly when their
/// representations are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivot_cols: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
            pivot_cols: Vec::new(),
        }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| unit_vec(ambient_dim, i)).collect(),
            pivot_cols: (0..ambient_dim).collect(),
        }
    }

    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        let mut reducer = RowReducer::new(ambient_dim);
        for v in vectors {
            reducer.push(v)?;
        }
        Ok(reducer.row_space())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                what: "vector",
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        let coeffs: Vec<Rational> = self.pivot_cols.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if is_zero(c) {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                if !is_zero(x) {
                    *r -= c * x;
                }
            }
        }
        Ok(residual.iter().all(is_zero).then_some(coeffs))
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn member(s: &Subspace, v: &[Rational]) -> Result<bool> {
    s.contains(v)
}

/// `dim(sup) - dim(sub)`; fails unless `sub` is contained in `sup`.
pub fn quotient_dim(sub: &Subspace, sup: &Subspace) -> Result<usize> {
    if sub.ambient_dim() != sup.ambient_dim() {
        return Err(Error::DimensionMismatch {
            what: "ambient dimension",
            expected: sup.ambient_dim(),
            found: sub.ambient_dim(),
        });
    }
    if !sub.is_subspace_of(sup)? {
        return Err(Error::NotContained);
    }
    Ok(sup.dim() - sub.dim())
}
