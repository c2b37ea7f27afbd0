//! Matrix algebras `M_n(A)` and bimodules `M_n(M)` over a base pair, and the
//! structure of their derivations.
//!
//! Basis order is row-major over blocks: `x (x) E_ij` for base basis element
//! `k` sits at flat index `(i * n + j) * d + k`. All block indices in this
//! module are 0-based.

use std::fmt;

use malachite_base::num::basic::traits::Zero;

use crate::algcore::{Algebra, Bimodule, Element};
use crate::dercalc::{inner_derivation, Derivation, LinearMap};
use crate::error::{Error, Result};
use crate::exactlin::{is_zero, zero_vec, Matrix, Rational};

fn block_index(n: usize, base_dim: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * base_dim + k
}

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::MatrixSize(n));
    }
    Ok(())
}

fn check_block(n: usize, i: usize, j: usize) -> Result<()> {
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, bound: n });
        }
    }
    Ok(())
}

fn embed_block(n: usize, base_dim: usize, x: &Element, i: usize, j: usize) -> Result<Element> {
    check_block(n, i, j)?;
    if x.dim() != base_dim {
        return Err(Error::DimensionMismatch {
            what: "base element",
            expected: base_dim,
            found: x.dim(),
        });
    }
    let mut coords = zero_vec(n * n * base_dim);
    let start = block_index(n, base_dim, i, j, 0);
    coords[start..start + base_dim].clone_from_slice(&x.coords);
    Ok(Element::new(coords))
}

fn extract_block(n: usize, base_dim: usize, x: &Element, i: usize, j: usize) -> Result<Element> {
    check_block(n, i, j)?;
    if x.dim() != n * n * base_dim {
        return Err(Error::DimensionMismatch {
            what: "matrix element",
            expected: n * n * base_dim,
            found: x.dim(),
        });
    }
    let start = block_index(n, base_dim, i, j, 0);
    Ok(Element::new(x.coords[start..start + base_dim].to_vec()))
}

/// `M_n(A)` realised as a structure-constant algebra of dimension `n^2 d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAlgebra {
    base: Algebra,
    n: usize,
    algebra: Algebra,
}

impl MatrixAlgebra {
    pub fn new(base: &Algebra, n: usize) -> Result<Self> {
        check_size(n)?;
        let d = base.dim();
        let idx = |i, j, k| block_index(n, d, i, j, k);
        let mut triples = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for a in 0..d {
                        for b in 0..d {
                            for (k, c) in base.basis_product(a, b) {
                                triples.push((idx(i, j, a), idx(j, l, b), idx(i, l, *k), c.clone()));
                            }
                        }
                    }
                }
            }
        }
        let labels = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .flat_map(|(i, j)| {
                base.labels()
                    .iter()
                    .map(move |l| format!("E{}{}({l})", i + 1, j + 1))
            })
            .collect();
        let mut unit = zero_vec(n * n * d);
        for i in 0..n {
            for (k, u) in base.unit().iter().enumerate() {
                unit[idx(i, i, k)] = u.clone();
            }
        }
        let algebra = Algebra::from_triples(format!("M{n}({})", base.name()), labels, unit, triples)?;
        Ok(Self {
            base: base.clone(),
            n,
            algebra,
        })
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        block_index(self.n, self.base.dim(), i, j, k)
    }

    /// `x (x) E_ij`: the matrix with `x` at `(i, j)` and zero elsewhere.
    pub fn embed(&self, x: &Element, i: usize, j: usize) -> Result<Element> {
        embed_block(self.n, self.base.dim(), x, i, j)
    }

    /// Entry `(i, j)` of a matrix element.
    pub fn entry(&self, x: &Element, i: usize, j: usize) -> Result<Element> {
        extract_block(self.n, self.base.dim(), x, i, j)
    }

    /// `diag(x, ..., x)`.
    pub fn diag(&self, x: &Element) -> Result<Element> {
        let mut acc = Element::zero(self.algebra.dim());
        for i in 0..self.n {
            acc = acc.add(&self.embed(x, i, i)?);
        }
        Ok(acc)
    }

    /// `1 (x) E_ij`.
    pub fn matrix_unit(&self, i: usize, j: usize) -> Result<Element> {
        self.embed(&self.base.unit_element(), i, j)
    }
}

/// `M_n(M)` as a bimodule over `M_n(A)`, acting by matrix products with the
/// base actions entrywise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixBimodule {
    base: Bimodule,
    n: usize,
    bimodule: Bimodule,
}

impl MatrixBimodule {
    pub fn new(base: &Bimodule, n: usize) -> Result<Self> {
        check_size(n)?;
        let (d, m) = (base.algebra_dim(), base.dim());
        let ia = |i, j, k| block_index(n, d, i, j, k);
        let im = |i, j, k| block_index(n, m, i, j, k);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for a in 0..d {
                        for p in 0..m {
                            // (a E_ij)(f E_jl) = (a f) E_il
                            for (q, c) in base.left_basis_action(a, p) {
                                left.push((ia(i, j, a), im(j, l, p), im(i, l, *q), c.clone()));
                            }
                            // (f E_ij)(a E_jl) = (f a) E_il
                            for (q, c) in base.right_basis_action(p, a) {
                                right.push((im(i, j, p), ia(j, l, a), im(i, l, *q), c.clone()));
                            }
                        }
                    }
                }
            }
        }
        let bimodule = Bimodule::from_triples(
            format!("M{n}({})", base.name()),
            n * n * d,
            n * n * m,
            left,
            right,
        )?;
        Ok(Self {
            base: base.clone(),
            n,
            bimodule,
        })
    }

    pub fn base(&self) -> &Bimodule {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.bimodule
    }

    pub fn index(&self, i: usize, j: usize, q: usize) -> usize {
        block_index(self.n, self.base.dim(), i, j, q)
    }

    pub fn embed(&self, f: &Element, i: usize, j: usize) -> Result<Element> {
        embed_block(self.n, self.base.dim(), f, i, j)
    }

    pub fn entry(&self, f: &Element, i: usize, j: usize) -> Result<Element> {
        extract_block(self.n, self.base.dim(), f, i, j)
    }

    pub fn diag(&self, f: &Element) -> Result<Element> {
        let mut acc = Element::zero(self.bimodule.dim());
        for i in 0..self.n {
            acc = acc.add(&self.embed(f, i, i)?);
        }
        Ok(acc)
    }
}

/// A base pair `(A, M)` together with `(M_n(A), M_n(M))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPair {
    pub algebra: MatrixAlgebra,
    pub module: MatrixBimodule,
}

impl MatrixPair {
    pub fn new(base_algebra: &Algebra, base_module: &Bimodule, n: usize) -> Result<Self> {
        if base_module.algebra_dim() != base_algebra.dim() {
            return Err(Error::DimensionMismatch {
                what: "bimodule algebra dimension",
                expected: base_algebra.dim(),
                found: base_module.algebra_dim(),
            });
        }
        Ok(Self {
            algebra: MatrixAlgebra::new(base_algebra, n)?,
            module: MatrixBimodule::new(base_module, n)?,
        })
    }

    pub fn n(&self) -> usize {
        self.algebra.n()
    }

    pub fn base_algebra(&self) -> &Algebra {
        self.algebra.base()
    }

    pub fn base_module(&self) -> &Bimodule {
        self.module.base()
    }

    /// `M_n(A)` as a plain algebra.
    pub fn full_algebra(&self) -> &Algebra {
        self.algebra.algebra()
    }

    /// `M_n(M)` as a plain bimodule.
    pub fn full_module(&self) -> &Bimodule {
        self.module.bimodule()
    }

    fn check_map(&self, f: &LinearMap) -> Result<()> {
        let (rows, cols) = (self.full_module().dim(), self.full_algebra().dim());
        if f.module_dim() != rows || f.algebra_dim() != cols {
            return Err(Error::Shape(format!(
                "map is {}x{} but the matrix pair needs {rows}x{cols}",
                f.module_dim(),
                f.algebra_dim()
            )));
        }
        Ok(())
    }
}

pub fn matrix_algebra(a: &Algebra, n: usize) -> Result<MatrixAlgebra> {
    MatrixAlgebra::new(a, n)
}

pub fn matrix_bimodule(m: &Bimodule, n: usize) -> Result<MatrixBimodule> {
    MatrixBimodule::new(m, n)
}

/// The entrywise extension `(a_ij) -> (delta(a_ij))` of a base derivation.
pub fn lift(pair: &MatrixPair, delta: &Derivation) -> Result<Derivation> {
    delta.require_certified()?;
    let (d, m, n) = (pair.base_algebra().dim(), pair.base_module().dim(), pair.n());
    let base = delta.map();
    if base.algebra_dim() != d || base.module_dim() != m {
        return Err(Error::Shape(format!(
            "base derivation is {}x{} but the base pair needs {m}x{d}",
            base.module_dim(),
            base.algebra_dim()
        )));
    }
    let mut matrix = Matrix::zeros(n * n * m, n * n * d);
    for i in 0..n {
        for j in 0..n {
            for q in 0..m {
                for k in 0..d {
                    let x = base.matrix().get(q, k);
                    if !is_zero(x) {
                        matrix.set(pair.module.index(i, j, q), pair.algebra.index(i, j, k), x.clone());
                    }
                }
            }
        }
    }
    Derivation::certify(pair.full_algebra(), pair.full_module(), LinearMap::new(matrix))
}

/// The base map `a -> [D(a (x) E_rs)]_ij`.
pub fn component(pair: &MatrixPair, der: &Derivation, i: usize, j: usize, r: usize, s: usize) -> Result<LinearMap> {
    der.require_certified()?;
    pair.check_map(der.map())?;
    let n = pair.n();
    check_block(n, i, j)?;
    check_block(n, r, s)?;
    Ok(component_unchecked(pair, der.map(), i, j, r, s))
}

fn component_unchecked(pair: &MatrixPair, f: &LinearMap, i: usize, j: usize, r: usize, s: usize) -> LinearMap {
    let (d, m) = (pair.base_algebra().dim(), pair.base_module().dim());
    let mut out = Matrix::zeros(m, d);
    for q in 0..m {
        for k in 0..d {
            let x = f.matrix().get(pair.module.index(i, j, q), pair.algebra.index(r, s, k));
            if !is_zero(x) {
                out.set(q, k, x.clone());
            }
        }
    }
    LinearMap::new(out)
}

/// `D = D_B + lift(delta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Implementing element `B` of `M_n(M)`, with `B_ij = [D(1 (x) E_j1)]_i1`.
    pub b: Element,
    /// The base derivation `[D(a (x) E_11)]_11`.
    pub delta: Derivation,
    pub inner_part: Derivation,
    pub lifted_part: Derivation,
}

/// Splits a derivation of the matrix pair into an inner part and a lift,
/// reading both off the first column of block components.
pub fn decompose(pair: &MatrixPair, der: &Derivation) -> Result<Decomposition> {
    der.require_certified()?;
    pair.check_map(der.map())?;
    let n = pair.n();
    let unit = &pair.base_algebra().unit_element();
    let mut b = Element::zero(pair.full_module().dim());
    for i in 0..n {
        for j in 0..n {
            let entry = component_unchecked(pair, der.map(), i, 0, j, 0).apply(unit)?;
            b = b.add(&pair.module.embed(&entry, i, j)?);
        }
    }
    let delta_map = component_unchecked(pair, der.map(), 0, 0, 0, 0);
    let delta = Derivation::certify(pair.base_algebra(), pair.base_module(), delta_map)?;
    let inner_part = inner_derivation(pair.full_algebra(), pair.full_module(), &b)?;
    let lifted_part = lift(pair, &delta)?;
    let recomposed = inner_part.map().add(lifted_part.map())?;
    for col in 0..pair.full_algebra().dim() {
        if recomposed.image_of_basis(col) != der.map().image_of_basis(col) {
            return Err(Error::RecompositionFailed { basis_index: col });
        }
    }
    Ok(Decomposition {
        b,
        delta,
        inner_part,
        lifted_part,
    })
}

/// Indices at which one of the block-component identities fails. Block
/// indices are stored 0-based and printed 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub indices: Vec<(&'static str, usize)>,
    /// Base basis element the identity was evaluated at, if any.
    pub basis: Option<usize>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.indices.iter().map(|(n, _)| *n).collect();
        let values: Vec<String> = self.indices.iter().map(|(_, v)| (v + 1).to_string()).collect();
        write!(f, "({})=({})", names.join(","), values.join(","))?;
        if let Some(k) = self.basis {
            write!(f, " a=e{k}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub label: &'static str,
    pub statement: &'static str,
    pub counterexample: Option<Counterexample>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentIdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl ComponentIdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }
}

impl fmt::Display for ComponentIdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            match &check.counterexample {
                None => writeln!(f, "({}) pass  {}", check.label, check.statement)?,
                Some(c) => writeln!(f, "({}) FAIL  {}  at {c}", check.label, check.statement)?,
            }
        }
        Ok(())
    }
}

/// Checks the five identities satisfied by the block components
/// `D^{ij}_{rs}(a) = [D(a (x) E_rs)]_ij` of a derivation, over every index
/// tuple and every base basis element. Failures are reported, not raised.
pub fn verify_lemma22(pair: &MatrixPair, der: &Derivation) -> Result<ComponentIdentityReport> {
    der.require_certified()?;
    pair.check_map(der.map())?;
    let n = pair.n();
    let base_a = pair.base_algebra();
    let base_m = pair.base_module();
    let d = base_a.dim();
    let unit = base_a.unit();

    // comp[i][j][r][s] evaluated at each basis element and at the unit
    let at = |i: usize, j: usize, r: usize, s: usize| ((i * n + j) * n + r) * n + s;
    let mut on_basis: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(n.pow(4));
    let mut on_unit: Vec<Vec<Rational>> = Vec::with_capacity(n.pow(4));
    for i in 0..n {
        for j in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let c = component_unchecked(pair, der.map(), i, j, r, s);
                    on_basis.push((0..d).map(|k| c.image_of_basis(k)).collect());
                    on_unit.push(c.apply_coords(unit)?);
                }
            }
        }
    }
    let e = |k: usize| {
        let mut v = zero_vec(d);
        v[k] = malachite_base::num::basic::traits::One::ONE;
        v
    };
    let add = |x: &[Rational], y: &[Rational]| -> Vec<Rational> { x.iter().zip(y).map(|(a, b)| a + b).collect() };
    let sub = |x: &[Rational], y: &[Rational]| -> Vec<Rational> { x.iter().zip(y).map(|(a, b)| a - b).collect() };

    let first = |found: &mut Option<Counterexample>, ok: bool, c: Counterexample| {
        if !ok && found.is_none() {
            *found = Some(c);
        }
    };

    // (i) D^{ij}_{rs} = 0 for i != r and j != s
    let mut cx1 = None;
    for i in 0..n {
        for j in 0..n {
            for r in (0..n).filter(|&r| r != i) {
                for s in (0..n).filter(|&s| s != j) {
                    let zero = on_basis[at(i, j, r, s)].iter().all(|v| v.iter().all(is_zero));
                    first(&mut cx1, zero, Counterexample {
                        indices: vec![("i", i), ("j", j), ("r", r), ("s", s)],
                        basis: None,
                    });
                }
            }
        }
    }

    // (ii) D^{ij}_{rj}(a) = D^{im}_{rm}(a) = D^{im}_{rm}(1) a for i != r
    let mut cx2 = None;
    for i in 0..n {
        for r in (0..n).filter(|&r| r != i) {
            for j in 0..n {
                for m in 0..n {
                    for k in 0..d {
                        let lhs = &on_basis[at(i, j, r, j)][k];
                        let mid = &on_basis[at(i, m, r, m)][k];
                        let rhs = base_m.right_coords(&on_unit[at(i, m, r, m)], &e(k));
                        first(&mut cx2, lhs == mid && *mid == rhs, Counterexample {
                            indices: vec![("i", i), ("j", j), ("r", r), ("m", m)],
                            basis: Some(k),
                        });
                    }
                }
            }
        }
    }

    // (iii) D^{ij}_{is}(a) = D^{mj}_{ms}(a) = a D^{mj}_{ms}(1) for j != s
    let mut cx3 = None;
    for j in 0..n {
        for s in (0..n).filter(|&s| s != j) {
            for i in 0..n {
                for m in 0..n {
                    for k in 0..d {
                        let lhs = &on_basis[at(i, j, i, s)][k];
                        let mid = &on_basis[at(m, j, m, s)][k];
                        let rhs = base_m.left_coords(&e(k), &on_unit[at(m, j, m, s)]);
                        first(&mut cx3, lhs == mid && *mid == rhs, Counterexample {
                            indices: vec![("i", i), ("j", j), ("s", s), ("m", m)],
                            basis: Some(k),
                        });
                    }
                }
            }
        }
    }

    // (iv) D^{im}_{jm}(1) = -D^{mj}_{mi}(1)
    let mut cx4 = None;
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let sum = add(&on_unit[at(i, m, j, m)], &on_unit[at(m, j, m, i)]);
                first(&mut cx4, sum.iter().all(is_zero), Counterexample {
                    indices: vec![("i", i), ("j", j), ("m", m)],
                    basis: None,
                });
            }
        }
    }

    // (v) D^{ij}_{ij}(a) = D^{im}_{im}(1) a - a D^{jm}_{jm}(1) + D^{mm}_{mm}(a)
    let mut cx5 = None;
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                for k in 0..d {
                    let lhs = &on_basis[at(i, j, i, j)][k];
                    let right = base_m.right_coords(&on_unit[at(i, m, i, m)], &e(k));
                    let left = base_m.left_coords(&e(k), &on_unit[at(j, m, j, m)]);
                    let rhs = add(&sub(&right, &left), &on_basis[at(m, m, m, m)][k]);
                    first(&mut cx5, *lhs == rhs, Counterexample {
                        indices: vec![("i", i), ("j", j), ("m", m)],
                        basis: Some(k),
                    });
                }
            }
        }
    }

    let checks = vec![
        IdentityCheck {
            label: "i",
            statement: "D^{ij}_{rs} = 0 for i != r, j != s",
            counterexample: cx1,
        },
        IdentityCheck {
            label: "ii",
            statement: "D^{ij}_{rj}(a) = D^{im}_{rm}(a) = D^{im}_{rm}(1) a for i != r",
            counterexample: cx2,
        },
        IdentityCheck {
            label: "iii",
            statement: "D^{ij}_{is}(a) = D^{mj}_{ms}(a) = a D^{mj}_{ms}(1) for j != s",
            counterexample: cx3,
        },
        IdentityCheck {
            label: "iv",
            statement: "D^{im}_{jm}(1) = -D^{mj}_{mi}(1)",
            counterexample: cx4,
        },
        IdentityCheck {
            label: "v",
            statement: "D^{ij}_{ij}(a) = D^{im}_{im}(1) a - a D^{jm}_{jm}(1) + D^{mm}_{mm}(a)",
            counterexample: cx5,
        },
    ];
    Ok(ComponentIdentityReport { checks })
}

/// Permutation of basis indices taking `M_{rk}` blocks to `M_r(M_k)` blocks:
/// `x (x) E_{ik+p, jk+q}` goes to `(x (x) E_pq) (x) E_ij`.
pub fn reblock_permutation(r: usize, k: usize, base_dim: usize) -> Vec<usize> {
    let n = r * k;
    let inner = k * k * base_dim;
    let mut perm = vec![0; n * n * base_dim];
    for big_i in 0..n {
        for big_j in 0..n {
            let (i, p) = (big_i / k, big_i % k);
            let (j, q) = (big_j / k, big_j % k);
            for e in 0..base_dim {
                let src = block_index(n, base_dim, big_i, big_j, e);
                perm[src] = (i * r + j) * inner + block_index(k, base_dim, p, q, e);
            }
        }
    }
    perm
}

fn permute(perm: &[usize], x: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::ZERO; x.len()];
    for (src, v) in x.iter().enumerate() {
        out[perm[src]] = v.clone();
    }
    out
}

/// The algebra isomorphism `M_{rk}(A) -> M_r(M_k(A))`.
#[derive(Clone, Debug)]
pub struct ReblockIso {
    r: usize,
    k: usize,
    source: MatrixAlgebra,
    target: MatrixAlgebra,
    forward: Vec<usize>,
    backward: Vec<usize>,
}

pub fn reblock_iso(a: &Algebra, r: usize, k: usize) -> Result<ReblockIso> {
    check_size(r)?;
    check_size(k)?;
    let source = MatrixAlgebra::new(a, r * k)?;
    let inner = MatrixAlgebra::new(a, k)?;
    let target = MatrixAlgebra::new(inner.algebra(), r)?;
    let forward = reblock_permutation(r, k, a.dim());
    let mut backward = vec![0; forward.len()];
    for (src, &dst) in forward.iter().enumerate() {
        backward[dst] = src;
    }
    Ok(ReblockIso {
        r,
        k,
        source,
        target,
        forward,
        backward,
    })
}

impl ReblockIso {
    pub fn source(&self) -> &MatrixAlgebra {
        &self.source
    }

    pub fn target(&self) -> &MatrixAlgebra {
        &self.target
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.check_len(x)?;
        Ok(Element::new(permute(&self.forward, &x.coords)))
    }

    pub fn apply_inverse(&self, y: &Element) -> Result<Element> {
        self.check_len(y)?;
        Ok(Element::new(permute(&self.backward, &y.coords)))
    }

    fn check_len(&self, x: &Element) -> Result<()> {
        if x.dim() != self.forward.len() {
            return Err(Error::DimensionMismatch {
                what: "reblocked element",
                expected: self.forward.len(),
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// First basis pair whose product is not preserved, if any.
    pub fn homomorphism_failure(&self) -> Option<(usize, usize)> {
        let src = self.source.algebra();
        let dst = self.target.algebra();
        let dim = src.dim();
        for a in 0..dim {
            for b in 0..dim {
                let mut prod = zero_vec(dim);
                for (c, v) in src.basis_product(a, b) {
                    prod[*c] = v.clone();
                }
                let lhs = permute(&self.forward, &prod);
                let rhs = dst.mul_coords(
                    &permute(&self.forward, &Element::basis(dim, a).coords),
                    &permute(&self.forward, &Element::basis(dim, b).coords),
                );
                if lhs != rhs {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn preserves_unit(&self) -> bool {
        permute(&self.forward, self.source.algebra().unit()) == self.target.algebra().unit()
    }

    /// Conjugates a map `M_{rk}(A) -> M_{rk}(M)` into a map
    /// `M_r(M_k(A)) -> M_r(M_k(M))`, where `M` has dimension `module_dim`.
    pub fn transport(&self, f: &LinearMap, module_dim: usize) -> Result<LinearMap> {
        let rows = reblock_permutation(self.r, self.k, module_dim);
        if f.algebra_dim() != self.forward.len() || f.module_dim() != rows.len() {
            return Err(Error::Shape(format!(
                "map is {}x{} but reblocking needs {}x{}",
                f.module_dim(),
                f.algebra_dim(),
                rows.len(),
                self.forward.len()
            )));
        }
        let mut out = Matrix::zeros(rows.len(), self.forward.len());
        for (row, &new_row) in rows.iter().enumerate() {
            for (col, &new_col) in self.forward.iter().enumerate() {
                let x = f.matrix().get(row, col);
                if !is_zero(x) {
                    out.set(new_row, new_col, x.clone());
                }
            }
        }
        Ok(LinearMap::new(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::{catalog, commutes, field, validate_algebra, validate_bimodule};
    use crate::dercalc::{derivation_space, leibniz_check};

    fn pair(name: &str, n: usize) -> MatrixPair {
        let (a, m) = catalog(name).unwrap();
        MatrixPair::new(&a, &m, n).unwrap()
    }

    #[test]
    fn matrix_algebra_shapes() {
        let p = pair("field", 2);
        assert_eq!(p.full_algebra().dim(), 4);
        assert_eq!(pair("dual_numbers", 2).full_algebra().dim(), 8);
        assert!(validate_algebra(p.full_algebra()).is_valid());
        assert!(validate_bimodule(p.full_algebra(), p.full_module()).unwrap().is_valid());
        assert!(matches!(MatrixAlgebra::new(&field(), 1), Err(Error::MatrixSize(1))));

        let e12 = p.algebra.matrix_unit(0, 1).unwrap();
        let e21 = p.algebra.matrix_unit(1, 0).unwrap();
        let e11 = p.algebra.matrix_unit(0, 0).unwrap();
        let a = p.full_algebra();
        assert_eq!(a.multiply(&e12, &e21).unwrap(), e11);
        assert!(a.multiply(&e12, &e12).unwrap().is_zero());
    }

    #[test]
    fn regular_base_gives_regular_matrix_bimodule() {
        for name in ["field", "dual_numbers", "upper_triangular_2"] {
            let p = pair(name, 2);
            let regular = crate::algcore::regular_bimodule(p.full_algebra());
            for i in 0..p.full_algebra().dim() {
                for x in 0..p.full_module().dim() {
                    assert_eq!(
                        p.full_module().left_basis_action(i, x),
                        regular.left_basis_action(i, x)
                    );
                    assert_eq!(
                        p.full_module().right_basis_action(x, i),
                        regular.right_basis_action(x, i)
                    );
                }
            }
            assert!(!commutes(p.full_algebra(), p.full_module()));
        }
    }

    #[test]
    fn embed_and_entry() {
        let p = pair("dual_numbers", 2);
        let a = Element::from_i64(&[1, 2]);
        let b = Element::from_i64(&[3, -1]);
        let x = p.algebra.embed(&a, 0, 1).unwrap();
        assert_eq!(p.algebra.entry(&x, 0, 1).unwrap(), a);
        assert!(p.algebra.entry(&x, 1, 0).unwrap().is_zero());
        let y = p.algebra.embed(&b, 1, 0).unwrap();
        let ab = p.base_algebra().multiply(&a, &b).unwrap();
        assert_eq!(
            p.full_algebra().multiply(&x, &y).unwrap(),
            p.algebra.embed(&ab, 0, 0).unwrap()
        );
        assert!(p.algebra.embed(&a, 2, 0).is_err());

        let f = pair("field", 2);
        let one = Element::from_i64(&[1]);
        assert_eq!(f.algebra.embed(&one, 0, 1).unwrap(), Element::from_i64(&[0, 1, 0, 0]));
    }

    #[test]
    fn lift_of_dual_number_derivation() {
        let p = pair("dual_numbers", 2);
        let base = derivation_space(p.base_algebra(), p.base_module()).unwrap();
        let delta = &base.basis()[0];
        let lifted = lift(&p, delta).unwrap();
        assert!(leibniz_check(p.full_algebra(), p.full_module(), lifted.map()).unwrap());
        let eps = Element::from_i64(&[0, 1]);
        let one = Element::from_i64(&[1, 0]);
        for i in 0..2 {
            for j in 0..2 {
                let x = p.algebra.embed(&eps, i, j).unwrap();
                assert_eq!(lifted.apply(&x).unwrap(), p.module.embed(&eps, i, j).unwrap());
                let u = p.algebra.embed(&one, i, j).unwrap();
                assert!(lifted.apply(&u).unwrap().is_zero());
            }
        }
        // the lift restricted to diag(a, ..., a) is diag(delta(a), ...)
        let a = Element::from_i64(&[2, 5]);
        assert_eq!(
            lifted.apply(&p.algebra.diag(&a).unwrap()).unwrap(),
            p.module.diag(&delta.apply(&a).unwrap()).unwrap()
        );
        for i in 0..2 {
            for j in 0..2 {
                for r in 0..2 {
                    for s in 0..2 {
                        let c = component(&p, &lifted, i, j, r, s).unwrap();
                        if (i, j) == (r, s) {
                            assert_eq!(&c, delta.map());
                        } else {
                            assert!(c.is_zero());
                        }
                    }
                }
            }
        }
        assert!(matches!(
            lift(&p, &Derivation::uncertified(delta.map().clone())),
            Err(Error::Uncertified)
        ));
    }

    #[test]
    fn component_of_inner_derivation() {
        let p = pair("field", 2);
        let b = p.module.embed(&Element::from_i64(&[1]), 0, 1).unwrap();
        let d = inner_derivation(p.full_algebra(), p.full_module(), &b).unwrap();
        // [B E21 - E21 B]_11 = B_12 = 1
        let c = component(&p, &d, 0, 0, 1, 0).unwrap();
        assert_eq!(c.apply(&Element::from_i64(&[1])).unwrap(), Element::from_i64(&[1]));
        assert!(component(&p, &d, 0, 0, 2, 0).is_err());
    }

    #[test]
    fn diagonal_components_are_derivations() {
        let p = pair("dual_numbers", 2);
        let space = derivation_space(p.full_algebra(), p.full_module()).unwrap();
        for d in space.basis() {
            for m in 0..2 {
                let c = component(&p, d, m, m, m, m).unwrap();
                assert!(leibniz_check(p.base_algebra(), p.base_module(), &c).unwrap());
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let p = pair("dual_numbers", 2);
        let base = derivation_space(p.base_algebra(), p.base_module()).unwrap();
        let lifted = lift(&p, &base.basis()[0]).unwrap();
        let dec = decompose(&p, &lifted).unwrap();
        assert!(dec.b.is_zero());
        assert_eq!(dec.delta, base.basis()[0]);

        let p = pair("field", 2);
        let e11 = p.algebra.matrix_unit(0, 0).unwrap();
        let d = inner_derivation(p.full_algebra(), p.full_module(), &e11).unwrap();
        let dec = decompose(&p, &d).unwrap();
        assert_eq!(dec.b, Element::from_i64(&[0, 0, 0, -1]));
        assert!(dec.delta.map().is_zero());
        assert_eq!(dec.inner_part, d);

        let zero = Derivation::certify(p.full_algebra(), p.full_module(), LinearMap::zero(4, 4)).unwrap();
        let dec = decompose(&p, &zero).unwrap();
        assert!(dec.b.is_zero() && dec.delta.map().is_zero());
    }

    fn transpose_map(p: &MatrixPair) -> LinearMap {
        let (n, d) = (p.n(), p.base_algebra().dim());
        let mut mat = Matrix::zeros(p.full_module().dim(), p.full_algebra().dim());
        for i in 0..n {
            for j in 0..n {
                for k in 0..d {
                    mat.set(p.module.index(j, i, k), p.algebra.index(i, j, k), Rational::from(1));
                }
            }
        }
        LinearMap::new(mat)
    }

    #[test]
    fn lemma22_on_derivations_and_forgery() {
        let p = pair("dual_numbers", 2);
        let space = derivation_space(p.full_algebra(), p.full_module()).unwrap();
        for d in space.basis() {
            let report = verify_lemma22(&p, d).unwrap();
            assert!(report.all_passed(), "{report}");
        }
        let forged = Derivation::forged(transpose_map(&p));
        let report = verify_lemma22(&p, &forged).unwrap();
        assert!(!report.checks[0].passed());
        assert!(!leibniz_check(p.full_algebra(), p.full_module(), forged.map()).unwrap());
    }

    #[test]
    fn reblocking_small() {
        let iso = reblock_iso(&field(), 2, 2).unwrap();
        assert!(iso.preserves_unit());
        assert_eq!(iso.homomorphism_failure(), None);
        let x = Element::from_i64(&(0..16).collect::<Vec<_>>());
        assert_eq!(iso.apply_inverse(&iso.apply(&x).unwrap()).unwrap(), x);
        assert!(reblock_iso(&field(), 1, 2).is_err());
    }
}
