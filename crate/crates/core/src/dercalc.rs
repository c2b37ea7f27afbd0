//! Derivation, Jordan-derivation and inner-derivation spaces as exact linear
//! problems.
//!
//! A linear map `A -> M` is an `m x d` matrix whose column `j` is the image of
//! `e_j`. Spaces of maps are stored as subspaces of `Q^(m*d)` under the
//! flattening `(j, q) -> j * m + q`, i.e. columns laid end to end.

use std::fmt;

use crate::algcore::{Algebra, Bimodule, Element};
use crate::error::{Error, Result};
use crate::exactlin::{is_zero, solve, zero_vec, Matrix, Rational, RowReducer, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        Self { matrix }
    }

    pub fn zero(algebra_dim: usize, module_dim: usize) -> Self {
        Self::new(Matrix::zeros(module_dim, algebra_dim))
    }

    /// Builds a map from the images of the algebra basis, each of length `module_dim`.
    pub fn from_columns(module_dim: usize, images: &[Vec<Rational>]) -> Result<Self> {
        Ok(Self::new(Matrix::from_columns(module_dim, images)?))
    }

    pub fn from_flat(algebra_dim: usize, module_dim: usize, flat: &[Rational]) -> Result<Self> {
        if flat.len() != algebra_dim * module_dim {
            return Err(Error::DimensionMismatch {
                what: "flattened map",
                expected: algebra_dim * module_dim,
                found: flat.len(),
            });
        }
        let columns: Vec<Vec<Rational>> = flat.chunks(module_dim.max(1)).map(<[_]>::to_vec).collect();
        if module_dim == 0 {
            return Ok(Self::zero(algebra_dim, 0));
        }
        Self::from_columns(module_dim, &columns)
    }

    pub fn algebra_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn module_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn image_of_basis(&self, j: usize) -> Vec<Rational> {
        self.matrix.column(j)
    }

    pub fn flatten(&self) -> Vec<Rational> {
        (0..self.algebra_dim()).flat_map(|j| self.matrix.column(j)).collect()
    }

    pub fn apply_coords(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.matrix.mul_vec(x)
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        Ok(Element::new(self.apply_coords(&x.coords)?))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    fn zip_with(&self, other: &LinearMap, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<LinearMap> {
        if self.matrix.rows() != other.matrix.rows() || self.matrix.cols() != other.matrix.cols() {
            return Err(Error::Shape(format!(
                "cannot combine {}x{} and {}x{} maps",
                self.matrix.rows(),
                self.matrix.cols(),
                other.matrix.rows(),
                other.matrix.cols()
            )));
        }
        let entries = self
            .matrix
            .entries()
            .iter()
            .zip(other.matrix.entries())
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(LinearMap::new(Matrix::from_entries(
            self.matrix.rows(),
            self.matrix.cols(),
            entries,
        )?))
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: &Rational) -> LinearMap {
        let entries = self.matrix.entries().iter().map(|a| a * factor).collect();
        LinearMap::new(
            Matrix::from_entries(self.matrix.rows(), self.matrix.cols(), entries)
                .expect("shape preserved"),
        )
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

/// A linear map together with a flag recording whether the Leibniz rule was
/// checked for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    map: LinearMap,
    certified: bool,
}

impl Derivation {
    /// Runs [`leibniz_check`] and certifies the map if it passes.
    pub fn certify(a: &Algebra, m: &Bimodule, map: LinearMap) -> Result<Self> {
        match leibniz_failure(a, m, &map)? {
            None => Ok(Self {
                map,
                certified: true,
            }),
            Some((i, j)) => Err(Error::NotDerivation { i, j }),
        }
    }

    pub fn uncertified(map: LinearMap) -> Self {
        Self {
            map,
            certified: false,
        }
    }

    /// Marks an arbitrary map as certified without checking anything. Only
    /// meant for negative controls.
    pub fn forged(map: LinearMap) -> Self {
        Self {
            map,
            certified: true,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn require_certified(&self) -> Result<()> {
        if self.certified {
            Ok(())
        } else {
            Err(Error::Uncertified)
        }
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn into_map(self) -> LinearMap {
        self.map
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.map.apply(x)
    }
}

fn check_pair(a: &Algebra, m: &Bimodule, f: &LinearMap) -> Result<()> {
    if m.algebra_dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            what: "bimodule algebra dimension",
            expected: a.dim(),
            found: m.algebra_dim(),
        });
    }
    if f.algebra_dim() != a.dim() || f.module_dim() != m.dim() {
        return Err(Error::Shape(format!(
            "map is {}x{} but the pair needs {}x{}",
            f.module_dim(),
            f.algebra_dim(),
            m.dim(),
            a.dim()
        )));
    }
    Ok(())
}

/// First basis pair `(i, j)` where `f(e_i e_j) != f(e_i) e_j + e_i f(e_j)`.
pub fn leibniz_failure(a: &Algebra, m: &Bimodule, f: &LinearMap) -> Result<Option<(usize, usize)>> {
    check_pair(a, m, f)?;
    let (d, n) = (a.dim(), m.dim());
    let columns: Vec<Vec<Rational>> = (0..d).map(|j| f.image_of_basis(j)).collect();
    for i in 0..d {
        for j in 0..d {
            let mut defect = zero_vec(n);
            for (k, c) in a.basis_product(i, j) {
                for (q, x) in columns[*k].iter().enumerate() {
                    if !is_zero(x) {
                        defect[q] += c * x;
                    }
                }
            }
            for p in 0..n {
                let x = &columns[i][p];
                if !is_zero(x) {
                    for (q, r) in m.right_basis_action(p, j) {
                        defect[*q] -= x * r;
                    }
                }
                let y = &columns[j][p];
                if !is_zero(y) {
                    for (q, l) in m.left_basis_action(i, p) {
                        defect[*q] -= y * l;
                    }
                }
            }
            if !defect.iter().all(is_zero) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Whether `f` satisfies the Leibniz rule on every pair of basis elements.
pub fn leibniz_check(a: &Algebra, m: &Bimodule, f: &LinearMap) -> Result<bool> {
    Ok(leibniz_failure(a, m, f)?.is_none())
}

/// A subspace of linear maps `A -> M` with its echelon basis unflattened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpace {
    algebra_dim: usize,
    module_dim: usize,
    subspace: Subspace,
    basis: Vec<LinearMap>,
}

impl MapSpace {
    fn from_subspace(algebra_dim: usize, module_dim: usize, subspace: Subspace) -> Self {
        let basis = subspace
            .basis()
            .iter()
            .map(|v| LinearMap::from_flat(algebra_dim, module_dim, v).expect("ambient is m*d"))
            .collect();
        Self {
            algebra_dim,
            module_dim,
            subspace,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn basis(&self) -> &[LinearMap] {
        &self.basis
    }

    pub fn contains(&self, f: &LinearMap) -> Result<bool> {
        self.subspace.contains(&f.flatten())
    }

    /// `sum_t coeffs[t] * basis[t]`.
    pub fn combination(&self, coeffs: &[Rational]) -> Result<LinearMap> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                what: "combination coefficients",
                expected: self.dim(),
                found: coeffs.len(),
            });
        }
        let mut acc = LinearMap::zero(self.algebra_dim, self.module_dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !is_zero(c) {
                acc = acc.add(&b.scale(c))?;
            }
        }
        Ok(acc)
    }
}

/// All derivations `A -> M`, with each basis element certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace {
    maps: MapSpace,
    derivations: Vec<Derivation>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.maps.dim()
    }

    pub fn maps(&self) -> &MapSpace {
        &self.maps
    }

    pub fn subspace(&self) -> &Subspace {
        self.maps.subspace()
    }

    pub fn basis(&self) -> &[Derivation] {
        &self.derivations
    }

    pub fn algebra_dim(&self) -> usize {
        self.maps.algebra_dim()
    }

    pub fn module_dim(&self) -> usize {
        self.maps.module_dim()
    }

    /// `sum_t coeffs[t] * basis[t]`. Certified because every basis element
    /// passed the Leibniz check and the constraints are linear.
    pub fn combination(&self, coeffs: &[Rational]) -> Result<Derivation> {
        Ok(Derivation {
            map: self.maps.combination(coeffs)?,
            certified: true,
        })
    }
}

fn var(module_dim: usize, j: usize, q: usize) -> usize {
    j * module_dim + q
}

type SparseRow = Vec<(usize, Rational)>;

/// Rows of `f(e_i e_j) - f(e_i) e_j - e_i f(e_j) = 0` for one `(i, j)`, one row
/// per module coordinate.
fn leibniz_rows(a: &Algebra, m: &Bimodule, i: usize, j: usize) -> Vec<SparseRow> {
    let n = m.dim();
    let mut rows: Vec<SparseRow> = vec![Vec::new(); n];
    for (k, c) in a.basis_product(i, j) {
        for (q, row) in rows.iter_mut().enumerate() {
            row.push((var(n, *k, q), c.clone()));
        }
    }
    for p in 0..n {
        for (q, r) in m.right_basis_action(p, j) {
            rows[*q].push((var(n, i, p), -r));
        }
        for (q, l) in m.left_basis_action(i, p) {
            rows[*q].push((var(n, j, p), -l));
        }
    }
    rows
}

fn solution_space<F>(a: &Algebra, m: &Bimodule, mut rows_for: F) -> Result<MapSpace>
where
    F: FnMut(usize, usize) -> Vec<SparseRow>,
{
    if m.algebra_dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            what: "bimodule algebra dimension",
            expected: a.dim(),
            found: m.algebra_dim(),
        });
    }
    let (d, n) = (a.dim(), m.dim());
    let mut reducer = RowReducer::new(d * n);
    for i in 0..d {
        for j in 0..d {
            for row in rows_for(i, j) {
                reducer.push_sparse(row)?;
            }
        }
    }
    Ok(MapSpace::from_subspace(d, n, reducer.nullspace()))
}

/// Solution space of the Leibniz constraints on all basis pairs.
pub fn derivation_space(a: &Algebra, m: &Bimodule) -> Result<DerivationSpace> {
    let maps = solution_space(a, m, |i, j| leibniz_rows(a, m, i, j))?;
    let derivations = maps
        .basis()
        .iter()
        .map(|f| Derivation::certify(a, m, f.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(DerivationSpace { maps, derivations })
}

/// Solution space of the polarized Jordan constraint
/// `f(e_i e_j + e_j e_i) = f(e_i) e_j + e_i f(e_j) + f(e_j) e_i + e_j f(e_i)`.
pub fn jordan_derivation_space(a: &Algebra, m: &Bimodule) -> Result<MapSpace> {
    solution_space(a, m, |i, j| {
        let mut rows = leibniz_rows(a, m, i, j);
        for (row, extra) in rows.iter_mut().zip(leibniz_rows(a, m, j, i)) {
            row.extend(extra);
        }
        rows
    })
}

/// The map `e_j -> w . e_j - e_j . w`, without certification.
pub fn inner_map(a: &Algebra, m: &Bimodule, w: &Element) -> Result<LinearMap> {
    if w.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            what: "module element",
            expected: m.dim(),
            found: w.dim(),
        });
    }
    let (d, n) = (a.dim(), m.dim());
    let mut columns = vec![zero_vec(n); d];
    for (j, column) in columns.iter_mut().enumerate() {
        for (p, wp) in w.coords.iter().enumerate() {
            if is_zero(wp) {
                continue;
            }
            for (q, r) in m.right_basis_action(p, j) {
                column[*q] += wp * r;
            }
            for (q, l) in m.left_basis_action(j, p) {
                column[*q] -= wp * l;
            }
        }
    }
    LinearMap::from_columns(n, &columns)
}

/// The inner derivation `a -> w a - a w` (right action minus left action).
pub fn inner_derivation(a: &Algebra, m: &Bimodule, w: &Element) -> Result<Derivation> {
    let map = inner_map(a, m, w)?;
    Derivation::certify(a, m, map)
}

/// Image and kernel of `w -> inner_map(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerSpace {
    /// Columns are the flattened inner maps of the module basis.
    pub matrix: Matrix,
    pub image: Subspace,
    /// Elements inducing the zero map: those commuting with all of `A`.
    pub kernel: Subspace,
}

pub fn inner_space(a: &Algebra, m: &Bimodule) -> Result<InnerSpace> {
    let (d, n) = (a.dim(), m.dim());
    let columns = (0..n)
        .map(|p| Ok(inner_map(a, m, &Element::basis(n, p))?.flatten()))
        .collect::<Result<Vec<_>>>()?;
    let matrix = Matrix::from_columns(d * n, &columns)?;
    let image = Subspace::span(d * n, &columns)?;
    let kernel = crate::exactlin::nullspace(&matrix);
    Ok(InnerSpace {
        matrix,
        image,
        kernel,
    })
}

/// A module element implementing `der` as an inner derivation, if any. The
/// witness is the one with all free variables zero; it is unique only up to
/// the kernel of [`inner_space`].
pub fn is_inner(a: &Algebra, m: &Bimodule, der: &Derivation) -> Result<Option<Element>> {
    der.require_certified()?;
    check_pair(a, m, der.map())?;
    let inner = inner_space(a, m)?;
    Ok(solve(&inner.matrix, &der.map().flatten())?.map(Element::new))
}

/// Dimensions of the derivation space, the inner derivations and their quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CohomologySummary {
    pub derivations: usize,
    pub inner: usize,
    pub h1: usize,
}

impl fmt::Display for CohomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Der={} Inner={} H1={}", self.derivations, self.inner, self.h1)
    }
}

pub fn cohomology_summary(a: &Algebra, m: &Bimodule) -> Result<CohomologySummary> {
    let der = derivation_space(a, m)?;
    let inner = inner_space(a, m)?;
    summarize(&der, &inner)
}

pub fn summarize(der: &DerivationSpace, inner: &InnerSpace) -> Result<CohomologySummary> {
    let h1 = crate::exactlin::quotient_dim(&inner.image, der.subspace())?;
    Ok(CohomologySummary {
        derivations: der.dim(),
        inner: inner.image.dim(),
        h1,
    })
}

/// `dim Der(A, M) - dim Inner(A, M)`.
pub fn h1_dim(a: &Algebra, m: &Bimodule) -> Result<usize> {
    Ok(cohomology_summary(a, m)?.h1)
}
