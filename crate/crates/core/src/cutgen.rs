//! Intersection cuts from disjunctions, their two-row and one-row special
//! cases, safeguards, and the map back to structural variables.
//!
//! A cut is kept as `Σ ψ_j s_j ≥ 1` over the nonbasic displacements of one
//! tableau until it is mapped to `α·x ≥ β`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::MilpInstance;
use crate::latgeom::{LatticeFreeBody, Shape, Side, TriangleType};
use crate::simplex::{BoundSide, VarRef, ZERO_TOL};
use crate::tworow::{SnapshotRow, TableauSnapshot, Thresholds, TwoRowModel};

const DENOM_TOL: f64 = 1e-12;
const MAP_TOL: f64 = 1e-7;

#[derive(Debug, Error, PartialEq)]
pub enum CutError {
    #[error("f satisfies a term of the disjunction (slack {0})")]
    FSatisfiesTerm(f64),
    #[error("ray and f have mismatched dimensions")]
    Dimension,
    #[error("wedge needs the vertical edge outside the variable bounds")]
    WedgeBound,
    #[error("body shape does not match the requested cut")]
    WrongShape,
    #[error("row fractionality {0} is outside the accepted range")]
    NotFractional(f64),
    #[error("nonbasic {0:?} is free and cannot carry a coefficient")]
    FreeNonbasic(VarRef),
    #[error("structural cut is not violated by exactly one at the LP point (residual {0})")]
    Mapping(f64),
    #[error("cut has zero norm")]
    ZeroNorm,
}

/// One term `π·x ≥ π₀`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisjunctionTerm {
    pub pi: Vec<f64>,
    pub pi0: f64,
}

/// A disjunction of terms, one of which holds at every lattice point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disjunction {
    pub terms: Vec<DisjunctionTerm>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Disjunction {
    pub fn holds_at(&self, x: &[f64], tol: f64) -> bool {
        self.terms.iter().any(|t| dot(&t.pi, x) >= t.pi0 - tol)
    }
}

/// `ψ_j = max_l πˡrʲ / (πˡ₀ − πˡf)`.
pub fn intersection_cut<R: AsRef<[f64]>>(rays: &[R], f: &[f64], d: &Disjunction) -> Result<Vec<f64>, CutError> {
    let mut denoms = Vec::with_capacity(d.terms.len());
    for t in &d.terms {
        if t.pi.len() != f.len() {
            return Err(CutError::Dimension);
        }
        let slack = t.pi0 - dot(&t.pi, f);
        if slack <= DENOM_TOL {
            return Err(CutError::FSatisfiesTerm(slack));
        }
        denoms.push(slack);
    }
    rays.iter()
        .map(|r| {
            let r = r.as_ref();
            if r.len() != f.len() {
                return Err(CutError::Dimension);
            }
            Ok(d.terms.iter().zip(&denoms).map(|(t, den)| dot(&t.pi, r) / den).fold(f64::NEG_INFINITY, f64::max))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CutKind {
    Gmi,
    Split,
    Triangle(TriangleType),
    Wedge,
}

impl fmt::Display for CutKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CutKind::Gmi => "gmi",
            CutKind::Split => "split",
            CutKind::Triangle(TriangleType::Type1) => "type1",
            CutKind::Triangle(TriangleType::Type2) => "type2",
            CutKind::Wedge => "wedge",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub kind: CutKind,
    pub frac_var: usize,
    pub int_var: Option<usize>,
    pub side: Option<Side>,
    pub lifted: bool,
    pub eta_mu: Option<(f64, f64)>,
}

/// `Σ coefs[j] s_j ≥ rhs` over a snapshot's nonbasic list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutFunction {
    pub coefs: Vec<f64>,
    pub rhs: f64,
    pub provenance: Provenance,
}

/// Frame rays of a model as seen by `body`.
fn frame_rays(model: &TwoRowModel, body: &LatticeFreeBody) -> Vec<[f64; 2]> {
    model.rays.iter().map(|&r| body.transform.vector(r)).collect()
}

fn scatter(model: &TwoRowModel, values: &[f64]) -> Vec<f64> {
    let mut coefs = vec![0.0; model.width];
    for (&k, &v) in model.ray_index.iter().zip(values) {
        coefs[k] = v;
    }
    coefs
}

fn two_row_provenance(model: &TwoRowModel, body: &LatticeFreeBody, kind: CutKind) -> Provenance {
    Provenance {
        kind,
        frac_var: model.frac_var,
        int_var: Some(model.int_var),
        side: Some(body.side),
        lifted: false,
        eta_mu: body.eta_mu(),
    }
}

/// Per-ray triangle coefficient in the frame.
pub fn triangle_coefficient(eta: f64, mu: f64, f: [f64; 2], r: [f64; 2]) -> f64 {
    let t1 = -r[0] / (1.0 + f[0]);
    let t2 = (eta * r[0] + r[1]) / (1.0 - eta * f[0] - f[1]);
    let t3 = (mu * r[0] - r[1]) / (-mu * f[0] + f[1]);
    t1.max(t2).max(t3)
}

/// Per-ray wedge coefficient in the frame.
pub fn wedge_coefficient(eta: f64, mu: f64, f: [f64; 2], r: [f64; 2]) -> f64 {
    let t2 = (eta * r[0] + r[1]) / (1.0 - f[1] - eta * f[0]);
    let t3 = (mu * r[0] - r[1]) / (f[1] - mu * f[0]);
    t2.max(t3)
}

/// Split coefficient for `0 ≤ a x_i + x_ℓ ≤ 1`.
pub fn split_coefficient(a: f64, f: [f64; 2], r: [f64; 2]) -> f64 {
    let f0 = a * f[0] + f[1];
    let rho = a * r[0] + r[1];
    (-rho / f0).max(rho / (1.0 - f0))
}

fn check_denominators(values: &[f64]) -> Result<(), CutError> {
    match values.iter().find(|&&d| d <= DENOM_TOL) {
        Some(&d) => Err(CutError::FSatisfiesTerm(d)),
        None => Ok(()),
    }
}

pub fn triangle_cut(model: &TwoRowModel, body: &LatticeFreeBody) -> Result<CutFunction, CutError> {
    let Shape::Triangle { kind, eta, mu } = body.shape else {
        return Err(CutError::WrongShape);
    };
    let f = body.f;
    check_denominators(&[1.0 + f[0], 1.0 - eta * f[0] - f[1], -mu * f[0] + f[1]])?;
    let values: Vec<f64> = frame_rays(model, body).iter().map(|&r| triangle_coefficient(eta, mu, f, r)).collect();
    Ok(CutFunction {
        coefs: scatter(model, &values),
        rhs: 1.0,
        provenance: two_row_provenance(model, body, CutKind::Triangle(kind)),
    })
}

/// Cut from a triangle with the vertical edge removed. `body` may be the
/// triangle or its wedge.
pub fn wedge_cut(model: &TwoRowModel, body: &LatticeFreeBody) -> Result<CutFunction, CutError> {
    let (Shape::Triangle { eta, mu, .. } | Shape::Wedge { eta, mu }) = body.shape else {
        return Err(CutError::WrongShape);
    };
    let ok = match body.side {
        Side::Left => model.left_wedge_ok,
        Side::Right => model.right_wedge_ok,
    };
    if !ok {
        return Err(CutError::WedgeBound);
    }
    let f = body.f;
    check_denominators(&[1.0 - f[1] - eta * f[0], f[1] - mu * f[0]])?;
    let values: Vec<f64> = frame_rays(model, body).iter().map(|&r| wedge_coefficient(eta, mu, f, r)).collect();
    let wedge = LatticeFreeBody { shape: Shape::Wedge { eta, mu }, ..body.clone() };
    Ok(CutFunction {
        coefs: scatter(model, &values),
        rhs: 1.0,
        provenance: two_row_provenance(model, &wedge, CutKind::Wedge),
    })
}

pub fn split_cut(model: &TwoRowModel, body: &LatticeFreeBody) -> Result<CutFunction, CutError> {
    let Shape::Split { a } = body.shape else {
        return Err(CutError::WrongShape);
    };
    let f = body.f;
    let f0 = a as f64 * f[0] + f[1];
    check_denominators(&[f0, 1.0 - f0])?;
    let values: Vec<f64> = frame_rays(model, body).iter().map(|&r| split_coefficient(a as f64, f, r)).collect();
    Ok(CutFunction {
        coefs: scatter(model, &values),
        rhs: 1.0,
        provenance: two_row_provenance(model, body, CutKind::Split),
    })
}

/// Triangle or split cut, whichever `body` is.
pub fn body_cut(model: &TwoRowModel, body: &LatticeFreeBody) -> Result<CutFunction, CutError> {
    match body.shape {
        Shape::Split { .. } => split_cut(model, body),
        Shape::Triangle { .. } => triangle_cut(model, body),
        Shape::Wedge { .. } => wedge_cut(model, body),
    }
}

/// Lifted one-row coefficient of an integer displacement:
/// `min_m max((m − r)/f0, (r − m)/(1 − f0))`.
pub fn gmi_integer_coefficient(r: f64, f0: f64) -> f64 {
    let frac = r - r.floor();
    (frac / (1.0 - f0)).min((1.0 - frac) / f0)
}

pub fn gmi_continuous_coefficient(r: f64, f0: f64) -> f64 {
    (-r / f0).max(r / (1.0 - f0))
}

/// Gomory mixed-integer cut of one fractional row.
pub fn gmi_cut(
    row: &SnapshotRow,
    snapshot: &TableauSnapshot,
    lift: bool,
    thresholds: &Thresholds,
) -> Result<CutFunction, CutError> {
    let f0 = row.row.value - row.row.value.floor();
    let min = thresholds.min_fractionality;
    if f0 < min || f0 > 1.0 - min {
        return Err(CutError::NotFractional(f0));
    }
    let mut coefs = Vec::with_capacity(row.row.coefs.len());
    for (k, &r) in row.row.coefs.iter().enumerate() {
        if r == 0.0 {
            coefs.push(0.0);
            continue;
        }
        let nb = &snapshot.nonbasic[k];
        if nb.side == BoundSide::Free {
            return Err(CutError::FreeNonbasic(nb.var));
        }
        coefs.push(if lift && snapshot.nonbasic_integer[k] {
            gmi_integer_coefficient(r, f0)
        } else {
            gmi_continuous_coefficient(r, f0)
        });
    }
    Ok(CutFunction {
        coefs,
        rhs: 1.0,
        provenance: Provenance {
            kind: CutKind::Gmi,
            frac_var: row.var,
            int_var: None,
            side: None,
            lifted: lift,
            eta_mu: None,
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RejectReason {
    NonFinite,
    Empty,
    Dynamism,
    Mapping,
    /// The row or body does not admit the cut.
    Unsupported,
    /// Cuts off the known solution.
    Invalid,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RejectReason::NonFinite => "non_finite",
            RejectReason::Empty => "empty",
            RejectReason::Dynamism => "dynamism",
            RejectReason::Mapping => "mapping",
            RejectReason::Unsupported => "unsupported",
            RejectReason::Invalid => "invalid",
        })
    }
}

/// Rejects non-finite, empty, or badly scaled coefficient vectors.
pub fn apply_safeguards(coefs: &[f64], max_dynamism: f64) -> Result<(), RejectReason> {
    if coefs.iter().any(|c| !c.is_finite()) {
        return Err(RejectReason::NonFinite);
    }
    let nonzero = coefs.iter().map(|c| c.abs()).filter(|&c| c >= ZERO_TOL);
    let (lo, hi) = nonzero.fold((f64::INFINITY, 0.0f64), |(lo, hi), c| (lo.min(c), hi.max(c)));
    if hi == 0.0 {
        return Err(RejectReason::Empty);
    }
    if hi / lo > max_dynamism {
        return Err(RejectReason::Dynamism);
    }
    Ok(())
}

/// Euclidean distance in nonbasic space from the LP vertex to `ψ·s = 1`.
pub fn cut_depth(coefs: &[f64]) -> Result<f64, CutError> {
    let norm = coefs.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm <= ZERO_TOL {
        return Err(CutError::ZeroNorm);
    }
    Ok(1.0 / norm)
}

/// `Σ coefs · x ≥ rhs` over structural variables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructuralCut {
    pub coefs: Vec<(usize, f64)>,
    pub rhs: f64,
    pub provenance: Provenance,
    pub depth: f64,
}

impl StructuralCut {
    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coefs.iter().map(|&(j, a)| a * x[j]).sum()
    }

    /// Amount by which `x` violates the cut; nonpositive when satisfied.
    pub fn violation(&self, x: &[f64]) -> f64 {
        self.rhs - self.activity(x)
    }

    pub fn is_satisfied(&self, x: &[f64], tol: f64) -> bool {
        self.violation(x) <= tol
    }
}

/// Substitutes each displacement by its definition in terms of `x` and
/// row activities, checks that the LP point is cut off by exactly one, and
/// drops negligible coefficients against finite bounds.
pub fn to_structural_space(
    cut: &CutFunction,
    snapshot: &TableauSnapshot,
    inst: &MilpInstance,
) -> Result<StructuralCut, CutError> {
    let n = inst.num_vars();
    let mut alpha = vec![0.0; n];
    let mut beta = cut.rhs;
    for (k, &psi) in cut.coefs.iter().enumerate() {
        if psi == 0.0 {
            continue;
        }
        let nb = &snapshot.nonbasic[k];
        let sign = match nb.side {
            BoundSide::Lower => 1.0,
            BoundSide::Upper => -1.0,
            BoundSide::Free => return Err(CutError::FreeNonbasic(nb.var)),
        };
        match nb.var {
            VarRef::Structural(j) => alpha[j] += sign * psi,
            VarRef::Logical(i) => {
                for &(j, a) in &inst.constraints[i].coefs {
                    alpha[j] += sign * psi * a;
                }
            }
        }
        beta += sign * psi * nb.value;
    }
    let act: f64 = alpha.iter().zip(&snapshot.x).map(|(a, x)| a * x).sum();
    let scale: f64 = alpha.iter().zip(&snapshot.x).map(|(a, x)| (a * x).abs()).sum::<f64>().max(beta.abs()).max(1.0);
    let residual = act - beta + cut.rhs;
    if residual.abs() > MAP_TOL * scale {
        return Err(CutError::Mapping(residual));
    }
    let big = alpha.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut coefs = Vec::new();
    for (j, &a) in alpha.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        if a.abs() < ZERO_TOL * big.max(1.0) {
            let var = &inst.variables[j];
            let bound = if a > 0.0 { var.upper } else { var.lower };
            if bound.is_finite() {
                beta -= a * bound;
                continue;
            }
        }
        coefs.push((j, a));
    }
    Ok(StructuralCut { coefs, rhs: beta, provenance: cut.provenance.clone(), depth: cut_depth(&cut.coefs)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latgeom::{LatticeCase, Unimodular};

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    fn type1_disjunction() -> Disjunction {
        let t = |pi: [f64; 2], pi0: f64| DisjunctionTerm { pi: pi.to_vec(), pi0 };
        Disjunction { terms: vec![t([-1.0, 0.0], 1.0), t([0.0, 1.0], 1.0), t([1.0, -1.0], 0.0)] }
    }

    #[test]
    fn intersection_examples() {
        let f = [0.0, 0.5];
        let psi = intersection_cut(&[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.5]], &f, &type1_disjunction()).unwrap();
        assert!(close(psi[0], 2.0) && close(psi[1], 2.0) && close(psi[2], 1.0));

        let split = Disjunction {
            terms: vec![DisjunctionTerm { pi: vec![-1.0], pi0: 0.0 }, DisjunctionTerm { pi: vec![1.0], pi0: 1.0 }],
        };
        let psi = intersection_cut(&[[0.25]], &[0.5], &split).unwrap();
        assert!(close(psi[0], 0.5));
        assert!(matches!(intersection_cut(&[[0.25]], &[1.0], &split), Err(CutError::FSatisfiesTerm(_))));
    }

    #[test]
    fn triangle_and_wedge_examples() {
        let f = [0.0, 0.5];
        assert!(close(triangle_coefficient(0.5, 1.0, f, [1.0, 0.0]), 2.0));
        assert!(close(triangle_coefficient(0.5, 1.0, f, [0.3, 0.7]), 1.7));
        assert!(close(wedge_coefficient(0.5, 1.0, f, [1.0, 0.0]), 2.0));
        assert!(close(wedge_coefficient(0.5, 1.0, f, [-1.0, 0.0]), -1.0));
        assert!(close(triangle_coefficient(0.5, 1.0, f, [-1.0, 0.0]), 1.0));
        // vertex p2 = (-1, 1.5) is reached at step 1
        assert!(close(triangle_coefficient(0.5, 1.0, f, [-1.0, 1.0]), 1.0));
    }

    #[test]
    fn gmi_examples() {
        assert!(close(gmi_continuous_coefficient(0.25, 0.5), 0.5));
        assert!(close(gmi_continuous_coefficient(-0.75, 0.5), 1.5));
        assert!(close(gmi_integer_coefficient(-0.75, 0.5), 0.5));
        assert!(close(gmi_integer_coefficient(2.0, 0.5), 0.0));
    }

    #[test]
    fn safeguards() {
        assert_eq!(apply_safeguards(&[1e10, 1.0], 1e9), Err(RejectReason::Dynamism));
        assert_eq!(apply_safeguards(&[2.0, 1.0], 1e9), Ok(()));
        assert_eq!(apply_safeguards(&[0.0, 0.0], 1e9), Err(RejectReason::Empty));
        assert_eq!(apply_safeguards(&[f64::NAN], 1e9), Err(RejectReason::NonFinite));
    }

    #[test]
    fn depth() {
        assert!(close(cut_depth(&[3.0, 4.0]).unwrap(), 0.2));
        assert!(close(cut_depth(&[1.0]).unwrap(), 1.0));
        assert_eq!(cut_depth(&[0.0]), Err(CutError::ZeroNorm));
    }

    #[test]
    fn frame_formula_matches_disjunction() {
        let body = LatticeFreeBody {
            side: Side::Right,
            case: LatticeCase::Many,
            shape: Shape::Triangle { kind: TriangleType::Type2, eta: 0.3, mu: 0.9 },
            transform: Unimodular::reflection().then(&Unimodular::shear(2)).then(&Unimodular::flip()),
            f: [0.0, 0.0],
            canonical: true,
        };
        let f_model = [0.0, 0.4];
        let body = LatticeFreeBody { f: body.transform.point(f_model), ..body };
        let rays = [[1.0, -0.2], [-0.4, 0.7], [0.0, 1.0]];
        let generic = intersection_cut(&rays, &f_model, &body.disjunction()).unwrap();
        let (eta, mu) = body.eta_mu().unwrap();
        for (r, g) in rays.iter().zip(generic) {
            assert!(close(triangle_coefficient(eta, mu, body.f, body.transform.vector(*r)), g));
        }
    }
}
