//! Lattice-free splits, triangles and wedges built from a two-row model.
//!
//! Bodies live in a *frame*: integer coordinates reached from the model's
//! coordinates by a unimodular map. In the frame of a triangle the vertical
//! edge sits on `x_i = −1`, the other two edges pass through `(0,1)` and
//! `(0,0)`, and the body is
//!
//! ```text
//! x_i > −1,   η x_i + x_ℓ < 1,   μ x_i − x_ℓ < 0.
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cutgen::{Disjunction, DisjunctionTerm};
use crate::tworow::TwoRowModel;

const SNAP_TOL: f64 = 1e-9;
const INTERIOR_TOL: f64 = 1e-9;
/// Default number of lattice columns checked for wedges.
pub const WEDGE_EXTENT: i64 = 50;
const MAX_ENUMERATION: f64 = 1e7;

#[derive(Debug, Error, PartialEq)]
pub enum BodyError {
    #[error("no ray reaches the vertical line")]
    NoNegativeRay,
    #[error("boundary segment is a single point")]
    DegenerateSegment,
    #[error("defining lines are parallel")]
    Parallel,
    #[error("parameters eta={eta}, mu={mu} are not canonical")]
    NotCanonical { eta: f64, mu: f64 },
    #[error("operation needs a triangle")]
    NotTriangle,
    #[error("lattice enumeration over {0} points refused")]
    EnumerationTooLarge(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// Vertical edge on `x_i = −1`.
    Left,
    /// Vertical edge on `x_i = +1`; handled by reflecting `x_i`.
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];
}

/// Integer affine map `p ↦ M p + t` with `det M = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unimodular {
    pub matrix: [[i64; 2]; 2],
    pub shift: [i64; 2],
}

impl Unimodular {
    pub const IDENTITY: Unimodular = Unimodular { matrix: [[1, 0], [0, 1]], shift: [0, 0] };

    /// `x_i ↦ −x_i`.
    pub fn reflection() -> Self {
        Unimodular { matrix: [[-1, 0], [0, 1]], shift: [0, 0] }
    }

    /// `x_ℓ ↦ x_ℓ + c x_i`.
    pub fn shear(c: i64) -> Self {
        Unimodular { matrix: [[1, 0], [c, 1]], shift: [0, 0] }
    }

    /// `x_ℓ ↦ 1 − x_ℓ`.
    pub fn flip() -> Self {
        Unimodular { matrix: [[1, 0], [0, -1]], shift: [0, 1] }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Unimodular) -> Unimodular {
        let (a, b) = (&next.matrix, &self.matrix);
        let mut matrix = [[0; 2]; 2];
        for (r, row) in matrix.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        let shift = [
            a[0][0] * self.shift[0] + a[0][1] * self.shift[1] + next.shift[0],
            a[1][0] * self.shift[0] + a[1][1] * self.shift[1] + next.shift[1],
        ];
        Unimodular { matrix, shift }
    }

    pub fn det(&self) -> i64 {
        let m = &self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn inverse(&self) -> Unimodular {
        let m = &self.matrix;
        let d = self.det();
        let inv = [[m[1][1] * d, -m[0][1] * d], [-m[1][0] * d, m[0][0] * d]];
        let shift = [
            -(inv[0][0] * self.shift[0] + inv[0][1] * self.shift[1]),
            -(inv[1][0] * self.shift[0] + inv[1][1] * self.shift[1]),
        ];
        Unimodular { matrix: inv, shift }
    }

    pub fn vector(&self, r: [f64; 2]) -> [f64; 2] {
        let m = &self.matrix;
        [m[0][0] as f64 * r[0] + m[0][1] as f64 * r[1], m[1][0] as f64 * r[0] + m[1][1] as f64 * r[1]]
    }

    pub fn point(&self, p: [f64; 2]) -> [f64; 2] {
        let v = self.vector(p);
        [v[0] + self.shift[0] as f64, v[1] + self.shift[1] as f64]
    }

    pub fn lattice_point(&self, z: [i64; 2]) -> [i64; 2] {
        let m = &self.matrix;
        [m[0][0] * z[0] + m[0][1] * z[1] + self.shift[0], m[1][0] * z[0] + m[1][1] * z[1] + self.shift[1]]
    }

    /// Pulls a frame inequality `π·x ≥ π₀` back to model coordinates.
    fn pull_back(&self, pi: [f64; 2], pi0: f64) -> DisjunctionTerm {
        let m = &self.matrix;
        let pm = [pi[0] * m[0][0] as f64 + pi[1] * m[1][0] as f64, pi[0] * m[0][1] as f64 + pi[1] * m[1][1] as f64];
        let rhs = pi0 - pi[0] * self.shift[0] as f64 - pi[1] * self.shift[1] as f64;
        DisjunctionTerm { pi: pm.to_vec(), pi0: rhs }
    }
}

/// How many lattice points the open boundary segment contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeCase {
    /// At least two: triangle through the segment endpoints.
    Many,
    /// Exactly one: one endpoint is rounded outward.
    One,
    /// None: a split.
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TriangleType {
    /// All three vertices integral.
    Type1,
    Type2,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Shape {
    /// `0 ≤ a x_i + x_ℓ ≤ 1` in the frame.
    Split {
        a: i64,
    },
    Triangle {
        kind: TriangleType,
        eta: f64,
        mu: f64,
    },
    /// A triangle with its vertical edge removed.
    Wedge {
        eta: f64,
        mu: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeFreeBody {
    pub side: Side,
    pub case: LatticeCase,
    pub shape: Shape,
    /// Model coordinates to frame coordinates.
    pub transform: Unimodular,
    /// `f` in frame coordinates.
    pub f: [f64; 2],
    pub canonical: bool,
}

/// Plot-friendly summary of a body.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BodyDump {
    pub kind: String,
    pub side: Side,
    pub vertices: Vec<[f64; 2]>,
    pub eta: Option<f64>,
    pub mu: Option<f64>,
}

fn triangle_vertices(eta: f64, mu: f64) -> [[f64; 2]; 3] {
    let s = eta + mu;
    [[1.0 / s, mu / s], [-1.0, 1.0 + eta], [-1.0, -mu]]
}

fn is_near_integer(v: f64) -> bool {
    (v - v.round()).abs() <= SNAP_TOL
}

fn snap(v: f64) -> f64 {
    if is_near_integer(v) {
        v.round()
    } else {
        v
    }
}

impl LatticeFreeBody {
    pub fn eta_mu(&self) -> Option<(f64, f64)> {
        match self.shape {
            Shape::Triangle { eta, mu, .. } | Shape::Wedge { eta, mu } => Some((eta, mu)),
            Shape::Split { .. } => None,
        }
    }

    /// Vertices in frame coordinates; empty for splits and wedges.
    pub fn vertices(&self) -> Vec<[f64; 2]> {
        match self.shape {
            Shape::Triangle { eta, mu, .. } => triangle_vertices(eta, mu).to_vec(),
            _ => Vec::new(),
        }
    }

    pub fn contains_strictly_frame(&self, p: [f64; 2]) -> bool {
        let [x, y] = p;
        match self.shape {
            Shape::Split { a } => {
                let v = a as f64 * x + y;
                v > INTERIOR_TOL && v < 1.0 - INTERIOR_TOL
            }
            Shape::Triangle { eta, mu, .. } => {
                x > -1.0 + INTERIOR_TOL && eta * x + y < 1.0 - INTERIOR_TOL && mu * x - y < -INTERIOR_TOL
            }
            Shape::Wedge { eta, mu } => eta * x + y < 1.0 - INTERIOR_TOL && mu * x - y < -INTERIOR_TOL,
        }
    }

    /// Strict containment of a point given in model coordinates.
    pub fn contains_strictly(&self, p: [f64; 2]) -> bool {
        self.contains_strictly_frame(self.transform.point(p))
    }

    /// Frame disjunction `(−x_i ≥ 1) ∨ (η x_i + x_ℓ ≥ 1) ∨ (μ x_i − x_ℓ ≥ 0)`
    /// (or its split / wedge analogue), expressed in model coordinates.
    pub fn disjunction(&self) -> Disjunction {
        let frame: Vec<([f64; 2], f64)> = match self.shape {
            Shape::Split { a } => vec![([-(a as f64), -1.0], 0.0), ([a as f64, 1.0], 1.0)],
            Shape::Triangle { eta, mu, .. } => vec![([-1.0, 0.0], 1.0), ([eta, 1.0], 1.0), ([mu, -1.0], 0.0)],
            Shape::Wedge { eta, mu } => vec![([eta, 1.0], 1.0), ([mu, -1.0], 0.0)],
        };
        Disjunction { terms: frame.into_iter().map(|(pi, pi0)| self.transform.pull_back(pi, pi0)).collect() }
    }

    /// The wedge left after removing the vertical edge of a triangle.
    pub fn to_wedge(&self) -> Result<LatticeFreeBody, BodyError> {
        match self.shape {
            Shape::Triangle { eta, mu, .. } => Ok(LatticeFreeBody { shape: Shape::Wedge { eta, mu }, ..self.clone() }),
            _ => Err(BodyError::NotTriangle),
        }
    }

    pub fn dump(&self) -> BodyDump {
        let kind = match self.shape {
            Shape::Split { .. } => "split".to_string(),
            Shape::Triangle { kind: TriangleType::Type1, .. } => "type1".to_string(),
            Shape::Triangle { kind: TriangleType::Type2, .. } => "type2".to_string(),
            Shape::Wedge { .. } => "wedge".to_string(),
        };
        let (eta, mu) = self.eta_mu().unzip();
        BodyDump { kind, side: self.side, vertices: self.vertices(), eta, mu }
    }
}

/// Side-frame rays: the model rays, reflected for the right side.
fn side_rays(model: &TwoRowModel, side: Side) -> impl Iterator<Item = [f64; 2]> + '_ {
    let s = if side == Side::Right { -1.0 } else { 1.0 };
    model.rays.iter().map(move |r| [s * r[0], r[1]])
}

/// `x_ℓ` coordinates of the highest (`p²`) and lowest (`p³`) points where
/// rays from `f` cross the vertical line of `side`.
pub fn boundary_points(model: &TwoRowModel, side: Side) -> Option<(f64, f64)> {
    let fl = model.f[1];
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for r in side_rays(model, side) {
        if r[0] < -1e-12 {
            let ratio = r[1] / r[0];
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
    }
    if !lo.is_finite() {
        return None;
    }
    let (p2, p3) = (fl - lo, fl - hi);
    if p2 - p3 <= 1e-12 {
        return None;
    }
    Some((p2, p3))
}

/// Number of integers strictly between `p3` and `p2`.
pub fn count_strict_interior_lattice(p2: f64, p3: f64) -> i64 {
    let (p2, p3) = (snap(p2), snap(p3));
    ((p2.ceil() - p3.floor()) as i64 - 1).max(0)
}

/// Builds the body for one side of `model` in the side frame (only the
/// reflection applied). Triangles still need [`canonicalize`].
pub fn construct_body(model: &TwoRowModel, side: Side) -> Result<LatticeFreeBody, BodyError> {
    let (p2, p3) = boundary_points(model, side).ok_or_else(|| {
        if side_rays(model, side).any(|r| r[0] < -1e-12) {
            BodyError::DegenerateSegment
        } else {
            BodyError::NoNegativeRay
        }
    })?;
    let transform = if side == Side::Right { Unimodular::reflection() } else { Unimodular::IDENTITY };
    let f = transform.point(model.f);
    let (p2, p3) = (snap(p2), snap(p3));
    let count = count_strict_interior_lattice(p2, p3);
    let (case, top, bottom) = match count {
        0 => {
            let q3 = p3.floor();
            return Ok(LatticeFreeBody {
                side,
                case: LatticeCase::Zero,
                shape: Shape::Split { a: q3 as i64 },
                transform,
                f,
                canonical: true,
            });
        }
        1 => {
            if p2.ceil() - p2 <= p3 - p3.floor() {
                (LatticeCase::One, p2.ceil(), p3)
            } else {
                (LatticeCase::One, p2, p3.floor())
            }
        }
        _ => (LatticeCase::Many, p2, p3),
    };
    let (eta, mu) = (top - 1.0, -bottom);
    if eta + mu <= 1e-12 {
        return Err(BodyError::Parallel);
    }
    Ok(LatticeFreeBody {
        side,
        case,
        shape: Shape::Triangle { kind: triangle_type(eta, mu), eta, mu },
        transform,
        f,
        canonical: false,
    })
}

fn triangle_type(eta: f64, mu: f64) -> TriangleType {
    if triangle_vertices(eta, mu).iter().flatten().all(|&v| is_near_integer(v)) {
        TriangleType::Type1
    } else {
        TriangleType::Type2
    }
}

/// Shears and flips a triangle so that `0 ≤ η ≤ μ ≤ η + 1`. Splits and
/// wedges are returned unchanged.
pub fn canonicalize(body: &LatticeFreeBody) -> Result<LatticeFreeBody, BodyError> {
    let Shape::Triangle { eta, mu, .. } = body.shape else {
        return Ok(body.clone());
    };
    let lo = (-mu - SNAP_TOL).ceil();
    let hi = (eta + SNAP_TOL).floor();
    if lo > hi {
        return Err(BodyError::NotCanonical { eta, mu });
    }
    let half = (eta - mu) / 2.0;
    let mut c = half.round();
    if (half - half.trunc()).abs() == 0.5 {
        c = half.trunc();
    }
    let c = c.clamp(lo, hi);
    let mut transform = body.transform.then(&Unimodular::shear(c as i64));
    let (mut eta, mut mu) = (snap(eta - c), snap(mu + c));
    if eta > mu {
        transform = transform.then(&Unimodular::flip());
        std::mem::swap(&mut eta, &mut mu);
    }
    if eta < -SNAP_TOL || mu > eta + 1.0 + SNAP_TOL || eta + mu <= 1e-12 {
        return Err(BodyError::NotCanonical { eta, mu });
    }
    let eta = eta.max(0.0);
    Ok(LatticeFreeBody {
        shape: Shape::Triangle { kind: triangle_type(eta, mu), eta, mu },
        transform,
        f: transform.point(body.transform.inverse().point(body.f)),
        canonical: true,
        ..body.clone()
    })
}

/// Side-frame construction followed by canonicalization.
pub fn build_body(model: &TwoRowModel, side: Side) -> Result<LatticeFreeBody, BodyError> {
    canonicalize(&construct_body(model, side)?)
}

/// Checks that no lattice point lies strictly inside the body. Wedges are
/// checked on the columns `0 ≤ x_i ≤ extent` of their frame.
pub fn is_lattice_free(body: &LatticeFreeBody, extent: i64) -> Result<bool, BodyError> {
    let (xs, ys) = match body.shape {
        Shape::Split { a } => {
            let x = (-5.0, 5.0);
            let reach = 5.0 * (a.abs() as f64) + 6.0;
            (x, (-reach, reach))
        }
        Shape::Triangle { .. } => return polygon_is_lattice_free(&body.vertices()),
        Shape::Wedge { eta, mu } => {
            let x = extent as f64;
            let ys = [0.0, 1.0, mu * x, 1.0 - eta * x];
            let lo = ys.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            ((0.0, x), (lo.floor(), hi.ceil()))
        }
    };
    let points = (xs.1 - xs.0 + 1.0) * (ys.1 - ys.0 + 1.0);
    if !points.is_finite() || points > MAX_ENUMERATION {
        return Err(BodyError::EnumerationTooLarge(points));
    }
    for x in xs.0 as i64..=xs.1 as i64 {
        for y in ys.0 as i64..=ys.1 as i64 {
            if body.contains_strictly_frame([x as f64, y as f64]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Enumerates the bounding box of a convex polygon (vertices in either
/// orientation) and reports whether no lattice point is strictly inside.
pub fn polygon_is_lattice_free(vertices: &[[f64; 2]]) -> Result<bool, BodyError> {
    let n = vertices.len();
    let area2: f64 = (0..n)
        .map(|k| {
            let (a, b) = (vertices[k], vertices[(k + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum();
    let orient = area2.signum();
    let min = |k: usize| vertices.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min).floor();
    let max = |k: usize| vertices.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max).ceil();
    let points = (max(0) - min(0) + 1.0) * (max(1) - min(1) + 1.0);
    if !points.is_finite() || points > MAX_ENUMERATION {
        return Err(BodyError::EnumerationTooLarge(points));
    }
    for x in min(0) as i64..=max(0) as i64 {
        for y in min(1) as i64..=max(1) as i64 {
            let inside = (0..n).all(|k| {
                let (a, b) = (vertices[k], vertices[(k + 1) % n]);
                let cross = (b[0] - a[0]) * (y as f64 - a[1]) - (b[1] - a[1]) * (x as f64 - a[0]);
                orient * cross > INTERIOR_TOL
            });
            if inside {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(fl: f64, rays: &[[f64; 2]]) -> TwoRowModel {
        TwoRowModel {
            f: [0.0, fl],
            rays: rays.to_vec(),
            ray_index: (0..rays.len()).collect(),
            integer: vec![false; rays.len()],
            dropped: vec![],
            int_row: 0,
            frac_row: 1,
            int_var: 0,
            frac_var: 1,
            offsets: [0.0, 0.0],
            left_wedge_ok: true,
            right_wedge_ok: false,
            width: rays.len(),
        }
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn boundary_points_examples() {
        let m = model(0.5, &[[-1.0, 1.6], [-1.0, -1.6]]);
        let (p2, p3) = boundary_points(&m, Side::Left).unwrap();
        assert!(close(p2, 2.1) && close(p3, -1.1));
        assert_eq!(boundary_points(&model(0.5, &[[1.0, 1.0], [0.0, -1.0]]), Side::Left), None);
        assert_eq!(boundary_points(&model(0.5, &[[-1.0, 0.0]]), Side::Left), None);
        // the right side sees the reflected rays
        assert!(boundary_points(&model(0.5, &[[1.0, 1.0], [1.0, -1.0]]), Side::Right).is_some());
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(count_strict_interior_lattice(2.1, -1.1), 4);
        assert_eq!(count_strict_interior_lattice(0.8, 0.3), 0);
        assert_eq!(count_strict_interior_lattice(1.0, 0.0), 0);
        assert_eq!(count_strict_interior_lattice(1.0 + 1e-12, -1e-12), 0);
    }

    #[test]
    fn case_many() {
        let body = construct_body(&model(0.5, &[[-1.0, 1.6], [-1.0, -1.6]]), Side::Left).unwrap();
        assert_eq!(body.case, LatticeCase::Many);
        let v = body.vertices();
        assert!(close(v[0][0], 5.0 / 11.0) && close(v[0][1], 0.5));
        let canon = canonicalize(&body).unwrap();
        let (eta, mu) = canon.eta_mu().unwrap();
        assert!(close(eta, 1.1) && close(mu, 1.1));
        assert_eq!(canon.transform, Unimodular::IDENTITY);
        assert!(matches!(canon.shape, Shape::Triangle { kind: TriangleType::Type2, .. }));
    }

    #[test]
    fn case_one_picks_closer_rounding() {
        // p2 = 1.5, p3 = 0.2
        let body = construct_body(&model(0.5, &[[-1.0, 1.0], [-1.0, -0.3]]), Side::Left).unwrap();
        assert_eq!(body.case, LatticeCase::One);
        let v = body.vertices();
        assert!(close(v[0][0], 2.0) && close(v[0][1], 0.0));
        assert!(close(v[1][1], 1.5) && close(v[2][1], 0.0));
    }

    #[test]
    fn case_zero_is_split() {
        // p2 = 0.8, p3 = 0.3
        let body = construct_body(&model(0.5, &[[-1.0, 0.3], [-1.0, -0.2]]), Side::Left).unwrap();
        assert_eq!(body.shape, Shape::Split { a: 0 });
        assert!(body.contains_strictly([0.0, 0.5]));
        assert!(is_lattice_free(&body, WEDGE_EXTENT).unwrap());
    }

    #[test]
    fn flip_swaps_parameters() {
        let body = LatticeFreeBody {
            side: Side::Left,
            case: LatticeCase::Many,
            shape: Shape::Triangle { kind: TriangleType::Type2, eta: 1.4, mu: 0.9 },
            transform: Unimodular::IDENTITY,
            f: [0.0, 0.5],
            canonical: false,
        };
        let canon = canonicalize(&body).unwrap();
        let (eta, mu) = canon.eta_mu().unwrap();
        assert!(close(eta, 0.9) && close(mu, 1.4));
        assert_eq!(canon.transform, Unimodular::flip());
    }

    #[test]
    fn shear_recovers_offset_segments() {
        // segment from 1.2 to 3.5: eta = 2.5, mu = -1.2 before the shear
        let body = LatticeFreeBody {
            side: Side::Left,
            case: LatticeCase::Many,
            shape: Shape::Triangle { kind: TriangleType::Type2, eta: 2.5, mu: -1.2 },
            transform: Unimodular::IDENTITY,
            f: [0.0, 0.5],
            canonical: false,
        };
        assert!(is_lattice_free(&body, WEDGE_EXTENT).unwrap());
        let canon = canonicalize(&body).unwrap();
        let (eta, mu) = canon.eta_mu().unwrap();
        assert!(close(eta, 0.5) && close(mu, 0.8));
        assert!(canon.contains_strictly([0.0, 0.5]));
    }

    #[test]
    fn type1_canonical() {
        let body = LatticeFreeBody {
            side: Side::Left,
            case: LatticeCase::Many,
            shape: Shape::Triangle { kind: TriangleType::Type2, eta: 1.0, mu: 0.0 },
            transform: Unimodular::IDENTITY,
            f: [0.0, 0.5],
            canonical: false,
        };
        assert_eq!(body.vertices(), vec![[1.0, 0.0], [-1.0, 2.0], [-1.0, 0.0]]);
        let canon = canonicalize(&body).unwrap();
        assert_eq!(canon.shape, Shape::Triangle { kind: TriangleType::Type1, eta: 0.0, mu: 1.0 });
        assert!(is_lattice_free(&canon, WEDGE_EXTENT).unwrap());
    }

    #[test]
    fn polygon_enumeration() {
        assert!(!polygon_is_lattice_free(&[[-1.0, -1.0], [2.0, -1.0], [0.5, 2.0]]).unwrap());
        assert!(polygon_is_lattice_free(&[[1.0, 0.0], [-1.0, 2.0], [-1.0, 0.0]]).unwrap());
        assert!(polygon_is_lattice_free(&[[5.0 / 11.0, 0.5], [-1.0, 2.1], [-1.0, -1.1]]).unwrap());
    }

    #[test]
    fn unimodular_algebra() {
        let t = Unimodular::reflection().then(&Unimodular::shear(3)).then(&Unimodular::flip());
        assert_eq!(t.det().abs(), 1);
        let back = t.then(&t.inverse());
        assert_eq!(back, Unimodular::IDENTITY);
        let p = [0.25, -1.5];
        let q = t.point(p);
        let r = t.inverse().point(q);
        assert!(close(r[0], p[0]) && close(r[1], p[1]));
    }
}
