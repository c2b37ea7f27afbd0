//! 2-local derivations as black-box oracles: pairwise witnesses, the two
//! canonical test matrices, reconstruction and sampled verification.

use std::fmt;
use std::str::FromStr;

use crate::algcore::{Algebra, Bimodule, Element};
use crate::dercalc::{Derivation, DerivationSpace};
use crate::error::{Error, Result};
use crate::exactlin::{solve, Matrix, Rational};
use crate::matext::{MatrixAlgebra, MatrixPair};

type Evaluator = Box<dyn Fn(&Element) -> Element + Send + Sync>;

/// A deterministic, possibly nonlinear map `M_n(A) -> M_n(M)` that records
/// every query it answers.
pub struct TwoLocalOracle {
    input_dim: usize,
    output_dim: usize,
    description: String,
    eval: Evaluator,
    log: Vec<(Element, Element)>,
}

impl fmt::Debug for TwoLocalOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwoLocalOracle")
            .field("input_dim", &self.input_dim)
            .field("output_dim", &self.output_dim)
            .field("description", &self.description)
            .field("queries", &self.log.len())
            .finish()
    }
}

impl TwoLocalOracle {
    pub fn new<F>(input_dim: usize, output_dim: usize, description: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&Element) -> Element + Send + Sync + 'static,
    {
        Self {
            input_dim,
            output_dim,
            description: description.into(),
            eval: Box::new(eval),
            log: Vec::new(),
        }
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.output_dim
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn evaluate(&mut self, x: &Element) -> Result<Element> {
        if x.dim() != self.input_dim {
            return Err(Error::DimensionMismatch {
                what: "oracle input",
                expected: self.input_dim,
                found: x.dim(),
            });
        }
        let y = (self.eval)(x);
        if y.dim() != self.output_dim {
            return Err(Error::DimensionMismatch {
                what: "oracle output",
                expected: self.output_dim,
                found: y.dim(),
            });
        }
        self.log.push((x.clone(), y.clone()));
        Ok(y)
    }

    pub fn query_log(&self) -> &[(Element, Element)] {
        &self.log
    }

    pub fn query_count(&self) -> usize {
        self.log.len()
    }

    pub fn clear_log(&mut self) {
        self.log.clear();
    }
}

pub fn wrap_derivation(der: &Derivation) -> Result<TwoLocalOracle> {
    der.require_certified()?;
    let map = der.map().clone();
    let (d, m) = (map.algebra_dim(), map.module_dim());
    Ok(TwoLocalOracle::new(d, m, "derivation", move |x| {
        map.apply(x).expect("dimension checked by the oracle")
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perturbation {
    /// Adds `t^2` to coordinate 0 of block (1,2), where `t` is coordinate 0
    /// of block (1,2) of the input.
    QuadraticBlock,
    /// Negates every off-diagonal block of `D(x)`.
    SignFlipOffdiag,
}

impl Perturbation {
    pub fn name(self) -> &'static str {
        match self {
            Perturbation::QuadraticBlock => "quadratic_block",
            Perturbation::SignFlipOffdiag => "sign_flip_offdiag",
        }
    }
}

impl FromStr for Perturbation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadratic_block" => Ok(Perturbation::QuadraticBlock),
            "sign_flip_offdiag" => Ok(Perturbation::SignFlipOffdiag),
            other => Err(Error::UnknownPerturbation(other.to_string())),
        }
    }
}

impl fmt::Display for Perturbation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `D` with a deliberate distortion that vanishes at 0.
pub fn perturbed_oracle(pair: &MatrixPair, der: &Derivation, kind: Perturbation) -> Result<TwoLocalOracle> {
    der.require_certified()?;
    let map = der.map().clone();
    let (din, dout) = (pair.full_algebra().dim(), pair.full_module().dim());
    if map.algebra_dim() != din || map.module_dim() != dout {
        return Err(Error::Shape(format!(
            "map is {}x{} but the matrix pair needs {dout}x{din}",
            map.module_dim(),
            map.algebra_dim()
        )));
    }
    let n = pair.n();
    let src = pair.algebra.index(0, 1, 0);
    let dst = pair.module.index(0, 1, 0);
    let m = pair.base_module().dim();
    let module = pair.module.clone();
    let description = format!("perturb:{kind}");
    let oracle = match kind {
        Perturbation::QuadraticBlock => TwoLocalOracle::new(din, dout, description, move |x| {
            let mut y = map.apply(x).expect("dimension checked by the oracle");
            let t = &x.coords[src];
            y.coords[dst] += t * t;
            y
        }),
        Perturbation::SignFlipOffdiag => TwoLocalOracle::new(din, dout, description, move |x| {
            let mut y = map.apply(x).expect("dimension checked by the oracle");
            for i in 0..n {
                for j in (0..n).filter(|&j| j != i) {
                    for q in 0..m {
                        let at = module.index(i, j, q);
                        y.coords[at] = -y.coords[at].clone();
                    }
                }
            }
            y
        }),
    };
    Ok(oracle)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub x: Element,
    pub y: Element,
    pub witness: Option<Derivation>,
}

impl WitnessReport {
    pub fn feasible(&self) -> bool {
        self.witness.is_some()
    }
}

/// Looks for a derivation in `space` taking `x` to `dx` and `y` to `dy`.
pub fn pair_witness(
    space: &DerivationSpace,
    x: &Element,
    y: &Element,
    dx: &Element,
    dy: &Element,
) -> Result<WitnessReport> {
    let (d, m) = (space.algebra_dim(), space.module_dim());
    for (what, v, want) in [("x", x, d), ("y", y, d), ("dx", dx, m), ("dy", dy, m)] {
        if v.dim() != want {
            return Err(Error::DimensionMismatch {
                what: match what {
                    "x" | "y" => "witness input",
                    _ => "witness value",
                },
                expected: want,
                found: v.dim(),
            });
        }
    }
    let t = space.dim();
    let mut system = Matrix::zeros(2 * m, t);
    for (col, b) in space.basis().iter().enumerate() {
        let bx = b.map().apply_coords(&x.coords)?;
        let by = b.map().apply_coords(&y.coords)?;
        for q in 0..m {
            system.set(q, col, bx[q].clone());
            system.set(m + q, col, by[q].clone());
        }
    }
    let rhs: Vec<Rational> = dx.coords.iter().chain(&dy.coords).cloned().collect();
    let witness = match solve(&system, &rhs)? {
        Some(coeffs) => Some(space.combination(&coeffs)?),
        None => None,
    };
    Ok(WitnessReport {
        x: x.clone(),
        y: y.clone(),
        witness,
    })
}

/// `S = sum_i i (1 (x) E_ii)` and `T = sum_i 1 (x) E_{i,i+1}`, with `i`
/// counted from 1.
pub fn canonical_s_t(ma: &MatrixAlgebra) -> (Element, Element) {
    let unit = ma.base().unit_element();
    let dim = ma.algebra().dim();
    let mut s = Element::zero(dim);
    let mut t = Element::zero(dim);
    for i in 0..ma.n() {
        let scaled = unit.scale(&Rational::from(i as u64 + 1));
        s = s.add(&ma.embed(&scaled, i, i).expect("block in range"));
        if i + 1 < ma.n() {
            t = t.add(&ma.embed(&unit, i, i + 1).expect("block in range"));
        }
    }
    (s, t)
}

/// Queries the oracle at `S` and `T` only and returns the witness derivation
/// for that pair.
///
/// Derivations vanishing at both `S` and `T` are invisible here. Lifts of
/// base derivations are such (they kill every scalar matrix and `T`), so a
/// wrapped non-inner derivation may come back wrong; [`verify_agreement`] is
/// what catches that.
pub fn reconstruct(oracle: &mut TwoLocalOracle, space: &DerivationSpace, ma: &MatrixAlgebra) -> Result<Derivation> {
    let (s, t) = canonical_s_t(ma);
    let ds = oracle.evaluate(&s)?;
    let dt = oracle.evaluate(&t)?;
    match pair_witness(space, &s, &t, &ds, &dt)?.witness {
        Some(w) => Ok(w),
        None => Err(Error::NotTwoLocal { x: s, y: t }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub point: Element,
    pub oracle: Element,
    pub derivation: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementReport {
    pub checked: usize,
    pub disagreements: Vec<Disagreement>,
}

impl AgreementReport {
    pub fn agreeing(&self) -> usize {
        self.checked - self.disagreements.len()
    }

    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

pub fn verify_agreement(oracle: &mut TwoLocalOracle, der: &Derivation, points: &[Element]) -> Result<AgreementReport> {
    let mut disagreements = Vec::new();
    for x in points {
        let got = oracle.evaluate(x)?;
        let want = der.apply(x)?;
        if got != want {
            disagreements.push(Disagreement {
                point: x.clone(),
                oracle: got,
                derivation: want,
            });
        }
    }
    Ok(AgreementReport {
        checked: points.len(),
        disagreements,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoLocalReport {
    pub checked: usize,
    pub infeasible: Vec<(Element, Element)>,
}

impl TwoLocalReport {
    pub fn consistent(&self) -> bool {
        self.infeasible.is_empty()
    }
}

/// Runs [`pair_witness`] on every pair. An empty report only says the oracle
/// looks 2-local on these pairs.
pub fn verify_2local_property(
    oracle: &mut TwoLocalOracle,
    space: &DerivationSpace,
    pairs: &[(Element, Element)],
) -> Result<TwoLocalReport> {
    let mut infeasible = Vec::new();
    for (x, y) in pairs {
        let dx = oracle.evaluate(x)?;
        let dy = oracle.evaluate(y)?;
        if !pair_witness(space, x, y, &dx, &dy)?.feasible() {
            infeasible.push((x.clone(), y.clone()));
        }
    }
    Ok(TwoLocalReport {
        checked: pairs.len(),
        infeasible,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatReport {
    pub checked: usize,
    /// Sample points where `D(e a) != e D(a)`.
    pub violations: Vec<Element>,
}

impl CompatReport {
    pub fn compatible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `D(e a) = e D(a)` on the sample, after checking that `e` is an
/// idempotent, central in `a` and commuting with the module.
pub fn central_idempotent_compat(
    oracle: &mut TwoLocalOracle,
    a: &Algebra,
    m: &Bimodule,
    e: &Element,
    sample: &[Element],
) -> Result<CompatReport> {
    if e.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            what: "idempotent",
            expected: a.dim(),
            found: e.dim(),
        });
    }
    if a.multiply(e, e)? != *e {
        return Err(Error::NotCentralIdempotent("e^2 != e".into()));
    }
    for k in 0..a.dim() {
        let z = a.basis_element(k);
        if a.multiply(e, &z)? != a.multiply(&z, e)? {
            return Err(Error::NotCentralIdempotent(format!("e does not commute with basis element {k}")));
        }
    }
    for p in 0..m.dim() {
        let f = Element::basis(m.dim(), p);
        if m.left_coords(&e.coords, &f.coords) != m.right_coords(&f.coords, &e.coords) {
            return Err(Error::NotCentralIdempotent(format!(
                "e does not commute with module basis element {p}"
            )));
        }
    }
    let mut violations = Vec::new();
    for x in sample {
        let lhs = oracle.evaluate(&a.multiply(e, x)?)?;
        let dx = oracle.evaluate(x)?;
        let rhs = Element::new(m.left_coords(&e.coords, &dx.coords));
        if lhs != rhs {
            violations.push(x.clone());
        }
    }
    Ok(CompatReport {
        checked: sample.len(),
        violations,
    })
}
