//! Strengthening coefficients of integer nonbasics by integral shifts of
//! their rays.
//!
//! For a triangle in its frame the shifted coefficient is
//! `Φ(m₁,m₂) = max{Φ₁, Φ₂, Φ₃}` with
//!
//! ```text
//! Φ₁ = (m₁ − r_i) / (1 + f_i)
//! Φ₂ = (η(r_i − m₁) + r_ℓ − m₂) / (1 − η f_i − f_ℓ)
//! Φ₃ = (μ(r_i − m₁) − r_ℓ + m₂) / (−μ f_i + f_ℓ)
//! ```
//!
//! minimized over `ℤ²`. Wedges drop `Φ₁` and only allow shifts that keep
//! `x_i ≥ 0`, which gives `Ψ(m₁,m₂)` over `ℤ₊ × ℤ`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cutgen::{gmi_integer_coefficient, CutFunction, CutKind};
use crate::latgeom::{LatticeFreeBody, Shape};
use crate::tworow::TwoRowModel;

const DENOM_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum LiftError {
    #[error("denominator {name} = {value} is not positive")]
    Denominator { name: &'static str, value: f64 },
    #[error("cut and body do not match")]
    Mismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LiftMode {
    Triangle,
    Wedge,
}

/// One ray against one canonical triangle, in frame coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftContext {
    pub f: [f64; 2],
    pub eta: f64,
    pub mu: f64,
    pub r: [f64; 2],
    pub mode: LiftMode,
}

/// Lifted coefficient with the shift attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lift {
    pub value: f64,
    pub unlifted: f64,
    pub shift: [i64; 2],
}

impl LiftContext {
    pub fn triangle(f: [f64; 2], eta: f64, mu: f64, r: [f64; 2]) -> Self {
        LiftContext { f, eta, mu, r, mode: LiftMode::Triangle }
    }

    pub fn wedge(f: [f64; 2], eta: f64, mu: f64, r: [f64; 2]) -> Self {
        LiftContext { f, eta, mu, r, mode: LiftMode::Wedge }
    }

    fn d1(&self) -> f64 {
        1.0 + self.f[0]
    }

    fn d2(&self) -> f64 {
        1.0 - self.eta * self.f[0] - self.f[1]
    }

    fn d3(&self) -> f64 {
        -self.mu * self.f[0] + self.f[1]
    }

    pub fn check(&self) -> Result<(), LiftError> {
        let mut dens = vec![("1 - eta f_i - f_l", self.d2()), ("f_l - mu f_i", self.d3())];
        if self.mode == LiftMode::Triangle {
            dens.push(("1 + f_i", self.d1()));
        }
        match dens.into_iter().find(|&(_, v)| v <= DENOM_TOL) {
            Some((name, value)) => Err(LiftError::Denominator { name, value }),
            None => Ok(()),
        }
    }

    pub fn phi1(&self, m1: f64) -> f64 {
        (m1 - self.r[0]) / self.d1()
    }

    pub fn phi2(&self, m1: f64, m2: f64) -> f64 {
        (self.eta * (self.r[0] - m1) + self.r[1] - m2) / self.d2()
    }

    pub fn phi3(&self, m1: f64, m2: f64) -> f64 {
        (self.mu * (self.r[0] - m1) - self.r[1] + m2) / self.d3()
    }

    pub fn phi(&self, m1: f64, m2: f64) -> f64 {
        self.phi1(m1).max(self.phi2(m1, m2)).max(self.phi3(m1, m2))
    }

    /// Wedge coefficient of the ray shifted by `(m₁, −m₂)`, `m₁ ≥ 0`.
    pub fn psi(&self, m1: f64, m2: f64) -> f64 {
        let t2 = (self.eta * (self.r[0] + m1) + self.r[1] - m2) / self.d2();
        let t3 = (self.mu * (self.r[0] + m1) + m2 - self.r[1]) / self.d3();
        t2.max(t3)
    }

    /// Value of the objective being minimized, by mode.
    pub fn shifted(&self, m1: f64, m2: f64) -> f64 {
        match self.mode {
            LiftMode::Triangle => self.phi(m1, m2),
            LiftMode::Wedge => self.psi(m1, m2),
        }
    }

    /// Where `Φ₂` and `Φ₃` cross along `m₂` with `m₁ = ⌊r_i⌋`.
    pub fn m_bar2(&self) -> f64 {
        let (eta, mu, f) = (self.eta, self.mu, self.f);
        self.r[1] + (self.r[0] - self.r[0].floor()) * (-mu + (mu + eta) * f[1]) / (1.0 - (mu + eta) * f[0])
    }

    /// `r_i − (1+f_i)(r_ℓ − ⌊r_ℓ⌋)/(1+η−f_ℓ)`, kept as a candidate.
    pub fn m_bar1(&self) -> f64 {
        let frac = self.r[1] - self.r[1].floor();
        self.r[0] - self.d1() * frac / (1.0 + self.eta - self.f[1])
    }

    /// `r_i − (1+f_i)(⌈r_ℓ⌉ − r_ℓ)/(μ+f_ℓ)`, kept as a candidate.
    pub fn m_hat1(&self) -> f64 {
        let gap = self.r[1].ceil() - self.r[1];
        self.r[0] - self.d1() * gap / (self.mu + self.f[1])
    }

    /// Where `Φ₁` meets `Φ₂(·, ⌊r_ℓ⌋)`.
    pub fn m_bar1_crossing(&self) -> f64 {
        let frac = self.r[1] - self.r[1].floor();
        self.r[0] + self.d1() * frac / (1.0 + self.eta - self.f[1])
    }

    /// Where `Φ₁` meets `Φ₃(·, ⌈r_ℓ⌉)`.
    pub fn m_hat1_crossing(&self) -> f64 {
        let gap = self.r[1].ceil() - self.r[1];
        self.r[0] + self.d1() * gap / (self.mu + self.f[1])
    }

    /// Crossing of the two wedge terms along `m₂` with `m₁ = 0`.
    pub fn wedge_m_bar2(&self) -> Result<f64, LiftError> {
        let (eta, mu, f) = (self.eta, self.mu, self.f);
        let den = 1.0 - (mu + eta) * f[0];
        if den <= DENOM_TOL {
            return Err(LiftError::Denominator { name: "1 - (mu + eta) f_i", value: den });
        }
        Ok(self.r[1] + self.r[0] * (-mu + (mu + eta) * f[1]) / den)
    }
}

fn around(values: &[f64]) -> Vec<i64> {
    let mut out: Vec<i64> = values
        .iter()
        .filter(|v| v.is_finite())
        .flat_map(|&v| [v.floor() as i64, v.ceil() as i64])
        .flat_map(|b| [b - 1, b, b + 1])
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Minimum of `Φ` over `ℤ²`, found on a finite candidate set of shifts
/// around the crossing points of its pieces.
pub fn trivial_lift(ctx: &LiftContext) -> Result<Lift, LiftError> {
    let ctx = LiftContext { mode: LiftMode::Triangle, ..*ctx };
    ctx.check()?;
    let m1s = around(&[ctx.r[0], ctx.m_bar1(), ctx.m_hat1(), ctx.m_bar1_crossing(), ctx.m_hat1_crossing()]);
    let m2s = around(&[ctx.r[1], ctx.m_bar2()]);
    let unlifted = ctx.phi(0.0, 0.0);
    let mut best = Lift { value: unlifted, unlifted, shift: [0, 0] };
    for &m1 in &m1s {
        for &m2 in &m2s {
            let v = ctx.phi(m1 as f64, m2 as f64);
            if v < best.value {
                best = Lift { value: v, unlifted, shift: [m1, m2] };
            }
        }
    }
    Ok(best)
}

/// Minimum of `Ψ` over `ℤ₊ × ℤ`.
pub fn wedge_lift(ctx: &LiftContext) -> Result<Lift, LiftError> {
    let ctx = LiftContext { mode: LiftMode::Wedge, ..*ctx };
    ctx.check()?;
    let m2 = ctx.wedge_m_bar2()?;
    let (lo, hi) = (m2.floor(), m2.ceil());
    let below = (ctx.eta * ctx.r[0] + ctx.r[1] - lo) / ctx.d2();
    let above = (ctx.mu * ctx.r[0] + hi - ctx.r[1]) / ctx.d3();
    let unlifted = ctx.psi(0.0, 0.0);
    let (value, shift) = if below <= above { (below, [0, lo as i64]) } else { (above, [0, hi as i64]) };
    Ok(Lift { value, unlifted, shift })
}

/// Exhaustive minimum over the box `[−b,b]²` (wedges: `[0,b] × [−b,b]`).
pub fn brute_force_lift(ctx: &LiftContext, b: i64) -> Lift {
    let m1_lo = if ctx.mode == LiftMode::Wedge { 0 } else { -b };
    let unlifted = ctx.shifted(0.0, 0.0);
    let mut best = Lift { value: f64::INFINITY, unlifted, shift: [0, 0] };
    for m1 in m1_lo..=b {
        for m2 in -b..=b {
            let v = ctx.shifted(m1 as f64, m2 as f64);
            if v < best.value {
                best = Lift { value: v, unlifted, shift: [m1, m2] };
            }
        }
    }
    best
}

/// Brute force that doubles the box until the minimizer is interior to it.
pub fn certified_brute_force_lift(ctx: &LiftContext, start: i64) -> Lift {
    let mut b = start.max(1);
    loop {
        let lift = brute_force_lift(ctx, b);
        let [m1, m2] = lift.shift;
        let on_edge = m1.abs() == b || m2.abs() == b;
        if !on_edge || b >= 1 << 12 {
            return lift;
        }
        b *= 2;
    }
}

/// Replaces the coefficients of integer nonbasics in a two-row cut by their
/// lifted values. `body` must be the body the cut came from.
pub fn lift_cut(cut: &CutFunction, model: &TwoRowModel, body: &LatticeFreeBody) -> Result<CutFunction, LiftError> {
    let mut out = cut.clone();
    out.provenance.lifted = true;
    for ((&k, &ray), &integer) in model.ray_index.iter().zip(&model.rays).zip(&model.integer) {
        if !integer {
            continue;
        }
        let r = body.transform.vector(ray);
        out.coefs[k] = match (cut.provenance.kind, body.shape) {
            (CutKind::Split, Shape::Split { a }) => {
                let f0 = a as f64 * body.f[0] + body.f[1];
                gmi_integer_coefficient(a as f64 * r[0] + r[1], f0)
            }
            (CutKind::Wedge, Shape::Triangle { eta, mu, .. } | Shape::Wedge { eta, mu }) => {
                wedge_lift(&LiftContext::wedge(body.f, eta, mu, r))?.value
            }
            (CutKind::Triangle(_), Shape::Triangle { eta, mu, .. }) => {
                trivial_lift(&LiftContext::triangle(body.f, eta, mu, r))?.value
            }
            _ => return Err(LiftError::Mismatch),
        };
    }
    Ok(out)
}
