//! Finite-dimensional unital algebras and bimodules given by structure
//! constants.
//!
//! Index conventions: the algebra tensor stores `e_i e_j = sum_k c[i][j][k] e_k`
//! at `(i * d + j) * d + k`; the left action `e_i . f_p = sum_q L[i][p][q] f_q`
//! at `(i * m + p) * m + q`; the right action `f_p . e_i = sum_q R[p][i][q] f_q`
//! at `(p * d + i) * m + q`.
//!
//! Constructors only check shapes. Semantic checks live in [`validate_algebra`]
//! and [`validate_bimodule`]; everything else assumes validated inputs.

use std::fmt;

use malachite_base::num::basic::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{is_zero, unit_vec, zero_vec, Rational};

/// Coordinate vector of an algebra or module element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub coords: Vec<Rational>,
}

impl Element {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(zero_vec(dim))
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        Self::new(unit_vec(dim, index))
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&x| Rational::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        debug_assert_eq!(self.dim(), other.dim());
        Element::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Element) -> Element {
        debug_assert_eq!(self.dim(), other.dim());
        Element::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: &Rational) -> Element {
        Element::new(self.coords.iter().map(|a| a * factor).collect())
    }

    pub fn neg(&self) -> Element {
        Element::new(self.coords.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", cells.join(", "))
    }
}

fn check_len(what: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch {
            what,
            expected,
            found,
        });
    }
    Ok(())
}

/// Nonzero entries of each length-`width` slice of a dense tensor.
fn sparsify(dense: &[Rational], width: usize) -> Vec<Vec<(usize, Rational)>> {
    dense
        .chunks(width.max(1))
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .filter(|(_, x)| !is_zero(x))
                .map(|(k, x)| (k, x.clone()))
                .collect()
        })
        .collect()
}

/// Bilinear contraction `sum_{a,b} x_a y_b T[a][b][.]` against a sparse table
/// indexed by `a * y.len() + b`.
fn contract(
    table: &[Vec<(usize, Rational)>],
    x: &[Rational],
    y: &[Rational],
    out_dim: usize,
) -> Vec<Rational> {
    let mut out = zero_vec(out_dim);
    for (a, xa) in x.iter().enumerate() {
        if is_zero(xa) {
            continue;
        }
        for (b, yb) in y.iter().enumerate() {
            if is_zero(yb) {
                continue;
            }
            let coeff = xa * yb;
            for (k, c) in &table[a * y.len() + b] {
                out[*k] += &coeff * c;
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    labels: Vec<String>,
    mult: Vec<Rational>,
    unit: Vec<Rational>,
    sparse: Vec<Vec<(usize, Rational)>>,
}

impl Algebra {
    pub fn from_dense(
        name: impl Into<String>,
        labels: Vec<String>,
        mult: Vec<Rational>,
        unit: Vec<Rational>,
    ) -> Result<Self> {
        let d = labels.len();
        check_len("structure constants", d * d * d, mult.len())?;
        check_len("unit vector", d, unit.len())?;
        let sparse = sparsify(&mult, d);
        Ok(Self {
            name: name.into(),
            labels,
            mult,
            unit,
            sparse,
        })
    }

    /// Builds an algebra from `(i, j, k, c)` triples meaning `e_i e_j += c e_k`.
    pub fn from_triples<I>(
        name: impl Into<String>,
        labels: Vec<String>,
        unit: Vec<Rational>,
        triples: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Rational)>,
    {
        let d = labels.len();
        let mut mult = zero_vec(d * d * d);
        for (i, j, k, c) in triples {
            for index in [i, j, k] {
                if index >= d {
                    return Err(Error::IndexOutOfRange { index, bound: d });
                }
            }
            mult[(i * d + j) * d + k] += c;
        }
        Self::from_dense(name, labels, mult, unit)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        let d = self.dim();
        &self.mult[(i * d + j) * d + k]
    }

    /// Overwrites one structure constant. Used to build deliberately broken
    /// algebras; the result must be revalidated.
    pub fn set_structure_constant(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        let d = self.dim();
        self.mult[(i * d + j) * d + k] = value;
        self.sparse = sparsify(&self.mult, d);
    }

    /// Nonzero `(k, c)` with `e_i e_j = sum c e_k`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.sparse[i * self.dim() + j]
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn unit_element(&self) -> Element {
        Element::new(self.unit.clone())
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.dim(), i)
    }

    /// Product on raw coordinates; lengths are not checked.
    pub fn mul_coords(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        contract(&self.sparse, x, y, self.dim())
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        check_len("algebra element", self.dim(), x.dim())?;
        check_len("algebra element", self.dim(), y.dim())?;
        Ok(Element::new(self.mul_coords(&x.coords, &y.coords)))
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    name: String,
    algebra_dim: usize,
    dim: usize,
    left: Vec<Rational>,
    right: Vec<Rational>,
    left_sparse: Vec<Vec<(usize, Rational)>>,
    right_sparse: Vec<Vec<(usize, Rational)>>,
}

impl Bimodule {
    pub fn from_dense(
        name: impl Into<String>,
        algebra_dim: usize,
        dim: usize,
        left: Vec<Rational>,
        right: Vec<Rational>,
    ) -> Result<Self> {
        check_len("left action tensor", algebra_dim * dim * dim, left.len())?;
        check_len("right action tensor", algebra_dim * dim * dim, right.len())?;
        let left_sparse = sparsify(&left, dim);
        let right_sparse = sparsify(&right, dim);
        Ok(Self {
            name: name.into(),
            algebra_dim,
            dim,
            left,
            right,
            left_sparse,
            right_sparse,
        })
    }

    /// `left` triples are `(i, p, q, c)` for `e_i . f_p += c f_q`; `right`
    /// triples are `(p, i, q, c)` for `f_p . e_i += c f_q`.
    pub fn from_triples<L, R>(
        name: impl Into<String>,
        algebra_dim: usize,
        dim: usize,
        left: L,
        right: R,
    ) -> Result<Self>
    where
        L: IntoIterator<Item = (usize, usize, usize, Rational)>,
        R: IntoIterator<Item = (usize, usize, usize, Rational)>,
    {
        let (d, m) = (algebra_dim, dim);
        let mut l = zero_vec(d * m * m);
        for (i, p, q, c) in left {
            for (index, bound) in [(i, d), (p, m), (q, m)] {
                if index >= bound {
                    return Err(Error::IndexOutOfRange { index, bound });
                }
            }
            l[(i * m + p) * m + q] += c;
        }
        let mut r = zero_vec(d * m * m);
        for (p, i, q, c) in right {
            for (index, bound) in [(p, m), (i, d), (q, m)] {
                if index >= bound {
                    return Err(Error::IndexOutOfRange { index, bound });
                }
            }
            r[(p * d + i) * m + q] += c;
        }
        Self::from_dense(name, d, m, l, r)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn left_constant(&self, i: usize, p: usize, q: usize) -> &Rational {
        &self.left[(i * self.dim + p) * self.dim + q]
    }

    pub fn right_constant(&self, p: usize, i: usize, q: usize) -> &Rational {
        &self.right[(p * self.algebra_dim + i) * self.dim + q]
    }

    pub fn set_left_constant(&mut self, i: usize, p: usize, q: usize, value: Rational) {
        self.left[(i * self.dim + p) * self.dim + q] = value;
        self.left_sparse = sparsify(&self.left, self.dim);
    }

    pub fn set_right_constant(&mut self, p: usize, i: usize, q: usize, value: Rational) {
        self.right[(p * self.algebra_dim + i) * self.dim + q] = value;
        self.right_sparse = sparsify(&self.right, self.dim);
    }

    /// Nonzero `(q, c)` with `e_i . f_p = sum c f_q`.
    pub fn left_basis_action(&self, i: usize, p: usize) -> &[(usize, Rational)] {
        &self.left_sparse[i * self.dim + p]
    }

    /// Nonzero `(q, c)` with `f_p . e_i = sum c f_q`.
    pub fn right_basis_action(&self, p: usize, i: usize) -> &[(usize, Rational)] {
        &self.right_sparse[p * self.algebra_dim + i]
    }

    /// `a . f` on raw coordinates.
    pub fn left_coords(&self, a: &[Rational], f: &[Rational]) -> Vec<Rational> {
        contract(&self.left_sparse, a, f, self.dim)
    }

    /// `f . a` on raw coordinates.
    pub fn right_coords(&self, f: &[Rational], a: &[Rational]) -> Vec<Rational> {
        contract(&self.right_sparse, f, a, self.dim)
    }

    pub fn act(&self, side: Side, a: &Element, f: &Element) -> Result<Element> {
        check_len("algebra element", self.algebra_dim, a.dim())?;
        check_len("module element", self.dim, f.dim())?;
        let coords = match side {
            Side::Left => self.left_coords(&a.coords, &f.coords),
            Side::Right => self.right_coords(&f.coords, &a.coords),
        };
        Ok(Element::new(coords))
    }
}

/// The algebra acting on itself by multiplication on both sides.
pub fn regular_bimodule(a: &Algebra) -> Bimodule {
    let d = a.dim();
    let mut left = zero_vec(d * d * d);
    let mut right = zero_vec(d * d * d);
    for i in 0..d {
        for j in 0..d {
            for (k, c) in a.basis_product(i, j) {
                // e_i . f_j and f_i . e_j are both e_i e_j
                left[(i * d + j) * d + k] = c.clone();
                right[(i * d + j) * d + k] = c.clone();
            }
        }
    }
    Bimodule::from_dense("regular", d, d, left, right).expect("shapes follow from the algebra")
}

/// Whether `a . f = f . a` for every algebra and module element.
pub fn commutes(a: &Algebra, m: &Bimodule) -> bool {
    debug_assert_eq!(a.dim(), m.algebra_dim());
    (0..a.dim()).all(|i| (0..m.dim()).all(|p| m.left_basis_action(i, p) == m.right_basis_action(p, i)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `(e_i e_j) e_k != e_i (e_j e_k)`
    Associativity {
        i: usize,
        j: usize,
        k: usize,
        left: Vec<Rational>,
        right: Vec<Rational>,
    },
    /// `1 . e_j != e_j`
    LeftUnit { j: usize, got: Vec<Rational> },
    /// `e_j . 1 != e_j`
    RightUnit { j: usize, got: Vec<Rational> },
    /// `(e_i e_j) . f_p != e_i . (e_j . f_p)`
    LeftModule {
        i: usize,
        j: usize,
        p: usize,
        left: Vec<Rational>,
        right: Vec<Rational>,
    },
    /// `f_p . (e_i e_j) != (f_p . e_i) . e_j`
    RightModule {
        p: usize,
        i: usize,
        j: usize,
        left: Vec<Rational>,
        right: Vec<Rational>,
    },
    /// `(e_i . f_p) . e_j != e_i . (f_p . e_j)`
    Mixed {
        i: usize,
        p: usize,
        j: usize,
        left: Vec<Rational>,
        right: Vec<Rational>,
    },
    /// `1 . f_p != f_p`
    ModuleLeftUnit { p: usize, got: Vec<Rational> },
    /// `f_p . 1 != f_p`
    ModuleRightUnit { p: usize, got: Vec<Rational> },
}

fn show(v: &[Rational]) -> String {
    Element::new(v.to_vec()).to_string()
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Associativity { i, j, k, left, right } => write!(
                f,
                "associativity fails at (i,j,k)=({i},{j},{k}): (e_i e_j) e_k = {} but e_i (e_j e_k) = {}",
                show(left),
                show(right)
            ),
            Violation::LeftUnit { j, got } => {
                write!(f, "unit law fails at j={j}: 1 e_j = {}", show(got))
            }
            Violation::RightUnit { j, got } => {
                write!(f, "unit law fails at j={j}: e_j 1 = {}", show(got))
            }
            Violation::LeftModule { i, j, p, left, right } => write!(
                f,
                "left module law fails at (i,j,p)=({i},{j},{p}): (e_i e_j) f_p = {} but e_i (e_j f_p) = {}",
                show(left),
                show(right)
            ),
            Violation::RightModule { p, i, j, left, right } => write!(
                f,
                "right module law fails at (p,i,j)=({p},{i},{j}): f_p (e_i e_j) = {} but (f_p e_i) e_j = {}",
                show(left),
                show(right)
            ),
            Violation::Mixed { i, p, j, left, right } => write!(
                f,
                "bimodule law fails at (i,p,j)=({i},{p},{j}): (e_i f_p) e_j = {} but e_i (f_p e_j) = {}",
                show(left),
                show(right)
            ),
            Violation::ModuleLeftUnit { p, got } => {
                write!(f, "module unit law fails at p={p}: 1 f_p = {}", show(got))
            }
            Violation::ModuleRightUnit { p, got } => {
                write!(f, "module unit law fails at p={p}: f_p 1 = {}", show(got))
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        writeln!(f, "invalid: {} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

fn sparse_to_dense(entries: &[(usize, Rational)], dim: usize) -> Vec<Rational> {
    let mut v = zero_vec(dim);
    for (k, c) in entries {
        v[*k] = c.clone();
    }
    v
}

/// Checks associativity and the two-sided unit law on all basis triples.
pub fn validate_algebra(a: &Algebra) -> ValidationReport {
    let d = a.dim();
    let mut violations = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let ij = sparse_to_dense(a.basis_product(i, j), d);
            for k in 0..d {
                let left = a.mul_coords(&ij, &unit_vec(d, k));
                let jk = sparse_to_dense(a.basis_product(j, k), d);
                let right = a.mul_coords(&unit_vec(d, i), &jk);
                if left != right {
                    violations.push(Violation::Associativity { i, j, k, left, right });
                }
            }
        }
    }
    for j in 0..d {
        let e = unit_vec(d, j);
        let got = a.mul_coords(a.unit(), &e);
        if got != e {
            violations.push(Violation::LeftUnit { j, got });
        }
        let got = a.mul_coords(&e, a.unit());
        if got != e {
            violations.push(Violation::RightUnit { j, got });
        }
    }
    ValidationReport { violations }
}

/// Checks the four bimodule axioms on basis elements.
pub fn validate_bimodule(a: &Algebra, m: &Bimodule) -> Result<ValidationReport> {
    check_len("bimodule algebra dimension", a.dim(), m.algebra_dim())?;
    let (d, n) = (a.dim(), m.dim());
    let mut violations = Vec::new();
    for i in 0..d {
        let ei = unit_vec(d, i);
        for j in 0..d {
            let ej = unit_vec(d, j);
            let ij = sparse_to_dense(a.basis_product(i, j), d);
            for p in 0..n {
                let fp = unit_vec(n, p);
                let left = m.left_coords(&ij, &fp);
                let right = m.left_coords(&ei, &m.left_coords(&ej, &fp));
                if left != right {
                    violations.push(Violation::LeftModule { i, j, p, left, right });
                }
                let left = m.right_coords(&fp, &ij);
                let right = m.right_coords(&m.right_coords(&fp, &ei), &ej);
                if left != right {
                    violations.push(Violation::RightModule { p, i, j, left, right });
                }
            }
        }
    }
    for i in 0..d {
        let ei = unit_vec(d, i);
        for p in 0..n {
            let fp = unit_vec(n, p);
            for j in 0..d {
                let ej = unit_vec(d, j);
                let left = m.right_coords(&m.left_coords(&ei, &fp), &ej);
                let right = m.left_coords(&ei, &m.right_coords(&fp, &ej));
                if left != right {
                    violations.push(Violation::Mixed { i, p, j, left, right });
                }
            }
        }
    }
    for p in 0..n {
        let fp = unit_vec(n, p);
        let got = m.left_coords(a.unit(), &fp);
        if got != fp {
            violations.push(Violation::ModuleLeftUnit { p, got });
        }
        let got = m.right_coords(&fp, a.unit());
        if got != fp {
            violations.push(Violation::ModuleRightUnit { p, got });
        }
    }
    Ok(ValidationReport { violations })
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn one() -> Rational {
    Rational::ONE
}

/// The rationals as a one-dimensional algebra.
pub fn field() -> Algebra {
    Algebra::from_triples("field", labels(&["1"]), vec![one()], [(0, 0, 0, one())])
        .expect("static table")
}

/// `Q[eps]/(eps^2)` on the basis `1, eps`.
pub fn dual_numbers() -> Algebra {
    Algebra::from_triples(
        "dual_numbers",
        labels(&["1", "eps"]),
        vec![one(), Rational::ZERO],
        [(0, 0, 0, one()), (0, 1, 1, one()), (1, 0, 1, one())],
    )
    .expect("static table")
}

/// Group algebra of the cyclic group of order two on the basis `1, g`.
pub fn group_algebra_c2() -> Algebra {
    Algebra::from_triples(
        "group_algebra_C2",
        labels(&["1", "g"]),
        vec![one(), Rational::ZERO],
        [
            (0, 0, 0, one()),
            (0, 1, 1, one()),
            (1, 0, 1, one()),
            (1, 1, 0, one()),
        ],
    )
    .expect("static table")
}

/// `M_n(Q)` on the matrix units `E_ij` in row-major order.
pub fn full_matrix(n: usize) -> Algebra {
    let idx = |i: usize, j: usize| i * n + j;
    let mut triples = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                triples.push((idx(i, j), idx(j, l), idx(i, l), one()));
            }
        }
    }
    let names = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
        .collect();
    let mut unit = zero_vec(n * n);
    for i in 0..n {
        unit[idx(i, i)] = one();
    }
    Algebra::from_triples(format!("full_matrix_{n}"), names, unit, triples).expect("static table")
}

/// Upper triangular 2x2 matrices on the basis `E11, E12, E22`.
pub fn upper_triangular_2() -> Algebra {
    Algebra::from_triples(
        "upper_triangular_2",
        labels(&["E11", "E12", "E22"]),
        vec![one(), Rational::ZERO, one()],
        [
            (0, 0, 0, one()),
            (0, 1, 1, one()),
            (1, 2, 1, one()),
            (2, 2, 2, one()),
        ],
    )
    .expect("static table")
}

/// Product algebra with componentwise operations; basis of `x` first.
pub fn direct_sum(x: &Algebra, y: &Algebra) -> Algebra {
    let (dx, dy) = (x.dim(), y.dim());
    let mut names: Vec<String> = x.labels().iter().map(|l| format!("({l},0)")).collect();
    names.extend(y.labels().iter().map(|l| format!("(0,{l})")));
    let mut triples = Vec::new();
    for i in 0..dx {
        for j in 0..dx {
            for (k, c) in x.basis_product(i, j) {
                triples.push((i, j, *k, c.clone()));
            }
        }
    }
    for i in 0..dy {
        for j in 0..dy {
            for (k, c) in y.basis_product(i, j) {
                triples.push((dx + i, dx + j, dx + *k, c.clone()));
            }
        }
    }
    let unit = x.unit().iter().chain(y.unit()).cloned().collect();
    Algebra::from_triples(format!("direct_sum({},{})", x.name(), y.name()), names, unit, triples)
        .expect("shapes follow from the summands")
}

/// Names accepted by [`catalog`], excluding the parametric `direct_sum(x,y)`.
pub const CATALOG_NAMES: [&str; 5] = [
    "field",
    "dual_numbers",
    "group_algebra_C2",
    "full_matrix_2",
    "upper_triangular_2",
];

fn catalog_algebra(name: &str) -> Result<Algebra> {
    let name = name.trim();
    match name {
        "field" => return Ok(field()),
        "dual_numbers" => return Ok(dual_numbers()),
        "group_algebra_C2" => return Ok(group_algebra_c2()),
        "full_matrix_2" => return Ok(full_matrix(2)),
        "upper_triangular_2" => return Ok(upper_triangular_2()),
        _ => {}
    }
    let inner = name
        .strip_prefix("direct_sum(")
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| Error::UnknownCatalog(name.to_string()))?;
    let mut depth = 0usize;
    let mut split = None;
    for (pos, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1).ok_or_else(|| Error::UnknownCatalog(name.to_string()))?,
            ',' if depth == 0 => {
                split = Some(pos);
                break;
            }
            _ => {}
        }
    }
    let pos = split.ok_or_else(|| Error::UnknownCatalog(name.to_string()))?;
    let x = catalog_algebra(&inner[..pos])?;
    let y = catalog_algebra(&inner[pos + 1..])?;
    Ok(direct_sum(&x, &y))
}

/// A named test algebra together with its regular bimodule.
pub fn catalog(name: &str) -> Result<(Algebra, Bimodule)> {
    let a = catalog_algebra(name)?;
    let m = regular_bimodule(&a);
    Ok((a, m))
}
