//! Row classification and two-row corner models.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::MilpInstance;
use crate::simplex::{BoundSide, LpSolution, LpStatus, NonbasicVar, SimplexError, TableauRow, VarRef, ZERO_TOL};

#[derive(Debug, Error, PartialEq)]
pub enum TwoRowError {
    #[error("LP is not optimal ({0:?})")]
    NotOptimal(LpStatus),
    #[error("row {0} is not a fractional row")]
    NotFractional(usize),
    #[error("row {0} is not an integer row")]
    NotInteger(usize),
    #[error("empty model: every ray of the pair is zero")]
    EmptyModel,
    #[error(transparent)]
    Simplex(#[from] SimplexError),
}

/// Classification and safeguard thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Thresholds {
    /// Rows with integer infeasibility at least this are fractional.
    pub min_fractionality: f64,
    /// Rows with integer infeasibility at most this are integer rows.
    pub integer_tol: f64,
    /// Largest accepted ratio between cut coefficients.
    pub max_dynamism: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { min_fractionality: 0.01, integer_tol: 1e-5, max_dynamism: 1e9 }
    }
}

/// Distance from `v` to the nearest integer.
pub fn integer_infeasibility(v: f64) -> f64 {
    let frac = v - v.floor();
    frac.min(1.0 - frac)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SkipReason {
    /// Integer infeasibility strictly between the two thresholds.
    NearlyIntegral,
    /// The row depends on a free nonbasic column, which has no sign.
    FreeNonbasic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowClass {
    Fractional,
    IntegerRow,
    Skipped(SkipReason),
}

pub fn classify_value(value: f64, thresholds: &Thresholds) -> RowClass {
    let inf = integer_infeasibility(value);
    if inf >= thresholds.min_fractionality {
        RowClass::Fractional
    } else if inf <= thresholds.integer_tol {
        RowClass::IntegerRow
    } else {
        RowClass::Skipped(SkipReason::NearlyIntegral)
    }
}

/// Tableau row of a basic integer structural variable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnapshotRow {
    pub var: usize,
    pub row: TableauRow,
    pub class: RowClass,
    pub lower: f64,
    pub upper: f64,
}

/// Everything cut generators need from one optimal basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableauSnapshot {
    pub objective: f64,
    pub x: Vec<f64>,
    /// Shared coordinate system of all rows.
    pub nonbasic: Vec<NonbasicVar>,
    /// Whether each nonbasic displacement is integer on integer points.
    pub nonbasic_integer: Vec<bool>,
    pub rows: Vec<SnapshotRow>,
}

fn is_integral(v: f64) -> bool {
    (v - v.round()).abs() <= 1e-12
}

fn nonbasic_is_integer(inst: &MilpInstance, nb: &NonbasicVar) -> bool {
    match nb.var {
        VarRef::Structural(j) => inst.variables[j].integer && nb.side != BoundSide::Free && is_integral(nb.value),
        VarRef::Logical(i) => {
            let row = &inst.constraints[i];
            nb.side != BoundSide::Free
                && is_integral(row.rhs)
                && row.coefs.iter().all(|&(j, a)| is_integral(a) && inst.variables[j].integer)
        }
    }
}

impl TableauSnapshot {
    pub fn capture(inst: &MilpInstance, sol: &LpSolution, thresholds: &Thresholds) -> Result<Self, TwoRowError> {
        if sol.status != LpStatus::Optimal {
            return Err(TwoRowError::NotOptimal(sol.status));
        }
        let nonbasic = sol.nonbasic();
        let nonbasic_integer = nonbasic.iter().map(|nb| nonbasic_is_integer(inst, nb)).collect();
        let mut rows = Vec::new();
        for (j, var) in inst.variables.iter().enumerate() {
            if !var.integer || !sol.is_basic(VarRef::Structural(j)) {
                continue;
            }
            let row = sol.tableau_row(VarRef::Structural(j))?;
            let uses_free =
                row.coefs.iter().zip(&nonbasic).any(|(c, nb)| nb.side == BoundSide::Free && c.abs() > ZERO_TOL);
            let class = if uses_free {
                RowClass::Skipped(SkipReason::FreeNonbasic)
            } else {
                classify_value(row.value, thresholds)
            };
            rows.push(SnapshotRow { var: j, row, class, lower: var.lower, upper: var.upper });
        }
        Ok(TableauSnapshot { objective: sol.objective, x: sol.x.clone(), nonbasic, nonbasic_integer, rows })
    }

    pub fn classes(&self) -> Vec<RowClass> {
        self.rows.iter().map(|r| r.class).collect()
    }

    pub fn fractional_rows(&self) -> Vec<usize> {
        self.rows_of(RowClass::Fractional)
    }

    pub fn integer_rows(&self) -> Vec<usize> {
        self.rows_of(RowClass::IntegerRow)
    }

    fn rows_of(&self, class: RowClass) -> Vec<usize> {
        (0..self.rows.len()).filter(|&k| self.rows[k].class == class).collect()
    }
}

/// All (fractional, integer) row pairs, fractional-major.
pub fn enumerate_pairs(classes: &[RowClass]) -> Vec<(usize, usize)> {
    let frac = (0..classes.len()).filter(|&k| classes[k] == RowClass::Fractional);
    let ints: Vec<usize> = (0..classes.len()).filter(|&k| classes[k] == RowClass::IntegerRow).collect();
    frac.flat_map(|f| ints.iter().map(move |&i| (f, i))).collect()
}

/// The corner relaxation of two rows: `x = f + Σ rays[k] s_k`, with the
/// integer row first and the fractional row second. Coordinates are
/// translated so that `f = (0, f_ℓ)` with `0 < f_ℓ < 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoRowModel {
    pub f: [f64; 2],
    pub rays: Vec<[f64; 2]>,
    /// Position of each ray in the snapshot's nonbasic list.
    pub ray_index: Vec<usize>,
    pub integer: Vec<bool>,
    /// Nonbasic positions whose ray vanished in both rows.
    pub dropped: Vec<usize>,
    pub int_row: usize,
    pub frac_row: usize,
    pub int_var: usize,
    pub frac_var: usize,
    /// Integers added to the original values: `model = original + offsets`.
    pub offsets: [f64; 2],
    /// x_i ≤ −1 is excluded by the bounds of the integer basic variable.
    pub left_wedge_ok: bool,
    /// x_i ≥ 1 is excluded likewise.
    pub right_wedge_ok: bool,
    /// Number of nonbasic columns in the snapshot.
    pub width: usize,
}

impl TwoRowModel {
    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }
}

pub fn build_two_row_model(
    snapshot: &TableauSnapshot,
    frac_row: usize,
    int_row: usize,
) -> Result<TwoRowModel, TwoRowError> {
    let frac = &snapshot.rows[frac_row];
    let int = &snapshot.rows[int_row];
    if frac.class != RowClass::Fractional {
        return Err(TwoRowError::NotFractional(frac_row));
    }
    if int.class != RowClass::IntegerRow {
        return Err(TwoRowError::NotInteger(int_row));
    }
    let v = int.row.value.round();
    let offsets = [-v, -frac.row.value.floor()];
    let f = [0.0, frac.row.value + offsets[1]];
    let mut model = TwoRowModel {
        f,
        rays: Vec::new(),
        ray_index: Vec::new(),
        integer: Vec::new(),
        dropped: Vec::new(),
        int_row,
        frac_row,
        int_var: int.var,
        frac_var: frac.var,
        offsets,
        left_wedge_ok: int.lower > v - 1.0 + 1e-9,
        right_wedge_ok: int.upper < v + 1.0 - 1e-9,
        width: snapshot.nonbasic.len(),
    };
    for k in 0..snapshot.nonbasic.len() {
        let ray = [int.row.coefs[k], frac.row.coefs[k]];
        if ray[0].abs() < ZERO_TOL && ray[1].abs() < ZERO_TOL {
            model.dropped.push(k);
            continue;
        }
        model.rays.push(ray);
        model.ray_index.push(k);
        model.integer.push(snapshot.nonbasic_integer[k]);
    }
    if model.rays.is_empty() {
        return Err(TwoRowError::EmptyModel);
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        let t = Thresholds::default();
        assert_eq!(classify_value(3.0, &t), RowClass::IntegerRow);
        assert_eq!(classify_value(2.5, &t), RowClass::Fractional);
        assert_eq!(classify_value(2.005, &t), RowClass::Skipped(SkipReason::NearlyIntegral));
        assert_eq!(classify_value(-0.999_999_9, &t), RowClass::IntegerRow);
        assert!((integer_infeasibility(2.7) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn pair_enumeration() {
        use RowClass::*;
        let classes = [Fractional, IntegerRow, Fractional, IntegerRow, IntegerRow];
        assert_eq!(enumerate_pairs(&classes).len(), 6);
        assert!(enumerate_pairs(&[Fractional, Fractional]).is_empty());
        assert_eq!(enumerate_pairs(&classes)[0], (0, 1));
    }

    fn snapshot(int_value: f64, frac_value: f64, coefs: [Vec<f64>; 2]) -> TableauSnapshot {
        let width = coefs[0].len();
        let nonbasic =
            (0..width).map(|k| NonbasicVar { var: VarRef::Logical(k), side: BoundSide::Lower, value: 0.0 }).collect();
        let [ci, cl] = coefs;
        TableauSnapshot {
            objective: 0.0,
            x: vec![],
            nonbasic,
            nonbasic_integer: vec![false; width],
            rows: vec![
                SnapshotRow {
                    var: 0,
                    row: TableauRow { basic: VarRef::Structural(0), value: frac_value, coefs: cl },
                    class: RowClass::Fractional,
                    lower: 0.0,
                    upper: 10.0,
                },
                SnapshotRow {
                    var: 1,
                    row: TableauRow { basic: VarRef::Structural(1), value: int_value, coefs: ci },
                    class: RowClass::IntegerRow,
                    lower: 3.0,
                    upper: 10.0,
                },
            ],
        }
    }

    #[test]
    fn translation_uses_round_and_floor() {
        let snap = snapshot(3.0, 2.7, [vec![1.0, 1e-13], vec![0.5, 1e-13]]);
        let model = build_two_row_model(&snap, 0, 1).unwrap();
        assert_eq!(model.offsets, [-3.0, -2.0]);
        assert_eq!(model.f[0], 0.0);
        assert!((model.f[1] - 0.7).abs() < 1e-12);
        assert_eq!(model.dropped, vec![1]);
        assert_eq!(model.ray_index, vec![0]);
        assert!(model.left_wedge_ok);
        assert!(!model.right_wedge_ok);

        let empty = snapshot(3.0, 2.7, [vec![0.0], vec![0.0]]);
        assert_eq!(build_two_row_model(&empty, 0, 1), Err(TwoRowError::EmptyModel));
        assert_eq!(build_two_row_model(&snap, 1, 0), Err(TwoRowError::NotFractional(1)));
    }
}
