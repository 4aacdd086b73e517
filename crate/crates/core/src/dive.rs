//! Diving toward a known solution: alternate rounds of cuts with fixing a
//! random fractional integer variable to its value in the known solution,
//! and record how much of the integrality gap the cuts close.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cutgen::{
    apply_safeguards, body_cut, cut_depth, gmi_cut, to_structural_space, wedge_cut, CutFunction, RejectReason,
    StructuralCut,
};
use crate::instance::{KnownSolution, MilpInstance, ObjSense, RowSense};
use crate::latgeom::{build_body, Shape, Side};
use crate::lifting::lift_cut;
use crate::simplex::{fix_variable, LpSolution, LpStatus, Simplex, SimplexError};
use crate::tworow::{
    build_two_row_model, enumerate_pairs, integer_infeasibility, TableauSnapshot, Thresholds, TwoRowError,
};

/// Depths reported by default.
pub const CHECKPOINTS: [usize; 4] = [0, 4, 8, 12];
const INTEGRAL_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum DiveError {
    #[error("known solution is infeasible:\n{0}")]
    InfeasibleSolution(String),
    #[error("LP ended with status {0:?}")]
    Status(LpStatus),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error(transparent)]
    TwoRow(#[from] TwoRowError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    /// One GMI cut per fractional row.
    #[serde(rename = "g")]
    G,
    /// Two rounds of GMI cuts with a re-solve in between.
    #[serde(rename = "g2")]
    G2Rounds,
    /// GMI plus every pair cut and its wedge variant.
    #[serde(rename = "allpairs")]
    GAllpairs,
    /// GMI plus the deepest two-row cut of each fractional row.
    #[serde(rename = "deepest")]
    GDeepest,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::G, Generator::G2Rounds, Generator::GAllpairs, Generator::GDeepest];

    pub fn label(&self) -> &'static str {
        match self {
            Generator::G => "G",
            Generator::G2Rounds => "G-2Rounds",
            Generator::GAllpairs => "G+Allpairs",
            Generator::GDeepest => "G+Deepest",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("unknown generator `{0}` (expected g, g2, allpairs or deepest)")]
pub struct UnknownGenerator(String);

impl FromStr for Generator {
    type Err = UnknownGenerator;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "g" => Ok(Generator::G),
            "g2" | "g-2rounds" | "g2rounds" => Ok(Generator::G2Rounds),
            "allpairs" | "g+allpairs" => Ok(Generator::GAllpairs),
            "deepest" | "g+deepest" => Ok(Generator::GDeepest),
            _ => Err(UnknownGenerator(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CutOptions {
    pub thresholds: Thresholds,
    /// Lift two-row cuts on integer nonbasics.
    pub lift: bool,
    /// Lift GMI cuts on integer nonbasics.
    pub lift_gmi: bool,
    /// Also try wedge variants of triangles.
    pub wedges: bool,
}

impl Default for CutOptions {
    fn default() -> Self {
        CutOptions { thresholds: Thresholds::default(), lift: true, lift_gmi: true, wedges: true }
    }
}

/// A two-row candidate before it is mapped to structural variables.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub cut: CutFunction,
    pub frac_row: usize,
    pub int_row: usize,
    pub side: Side,
    pub wedge: bool,
}

/// Everything two-row separation produced on one tableau.
#[derive(Clone, Debug, Default)]
pub struct PairCuts {
    pub candidates: Vec<Candidate>,
    /// Triangle and split cuts (wedge variants excluded).
    pub body_cuts: usize,
    pub wedge_cuts: usize,
    pub pairs: usize,
    pub no_body: usize,
}

/// Two-row cuts of every pair and side of `snapshot`.
pub fn pair_cuts(snapshot: &TableauSnapshot, options: &CutOptions) -> PairCuts {
    let mut out = PairCuts::default();
    let pairs = enumerate_pairs(&snapshot.classes());
    out.pairs = pairs.len();
    for (frac_row, int_row) in pairs {
        let Ok(model) = build_two_row_model(snapshot, frac_row, int_row) else {
            out.no_body += 2;
            continue;
        };
        for side in Side::BOTH {
            let Ok(body) = build_body(&model, side) else {
                out.no_body += 1;
                continue;
            };
            let lifted = |cut: CutFunction| if options.lift { lift_cut(&cut, &model, &body).ok() } else { Some(cut) };
            if let Some(cut) = body_cut(&model, &body).ok().and_then(lifted) {
                out.body_cuts += 1;
                out.candidates.push(Candidate { cut, frac_row, int_row, side, wedge: false });
            }
            if options.wedges && matches!(body.shape, Shape::Triangle { .. }) {
                if let Some(cut) = wedge_cut(&model, &body).ok().and_then(lifted) {
                    out.wedge_cuts += 1;
                    out.candidates.push(Candidate { cut, frac_row, int_row, side, wedge: true });
                }
            }
        }
    }
    out
}

/// Cuts of one separation round on one LP.
#[derive(Clone, Debug, Default)]
pub struct Round {
    pub cuts: Vec<StructuralCut>,
    pub rejected: BTreeMap<RejectReason, usize>,
    pub fractional_rows: usize,
    pub integer_rows: usize,
    pub body_cuts: usize,
    pub wedge_cuts: usize,
    /// Deepest two-row depth over GMI depth, per fractional row with both.
    pub depth_ratios: Vec<f64>,
}

impl Round {
    fn reject(&mut self, reason: RejectReason) {
        *self.rejected.entry(reason).or_default() += 1;
    }

    fn accept(
        &mut self,
        cut: &CutFunction,
        snapshot: &TableauSnapshot,
        inst: &MilpInstance,
        thresholds: &Thresholds,
    ) -> Option<StructuralCut> {
        if let Err(reason) = apply_safeguards(&cut.coefs, thresholds.max_dynamism) {
            self.reject(reason);
            return None;
        }
        let Ok(structural) = to_structural_space(cut, snapshot, inst) else {
            self.reject(RejectReason::Mapping);
            return None;
        };
        let coefs: Vec<f64> = structural.coefs.iter().map(|c| c.1).collect();
        if let Err(reason) = apply_safeguards(&coefs, thresholds.max_dynamism) {
            self.reject(reason);
            return None;
        }
        Some(structural)
    }
}

/// Separates one round of cuts of `generator`'s family on the optimal LP
/// `sol` of `inst`. G-2Rounds is a single GMI round here.
pub fn separate(
    inst: &MilpInstance,
    sol: &LpSolution,
    generator: Generator,
    options: &CutOptions,
) -> Result<Round, DiveError> {
    let snapshot = TableauSnapshot::capture(inst, sol, &options.thresholds)?;
    let th = &options.thresholds;
    let mut round = Round {
        fractional_rows: snapshot.fractional_rows().len(),
        integer_rows: snapshot.integer_rows().len(),
        ..Round::default()
    };
    let mut gmi_depth = BTreeMap::new();
    for k in snapshot.fractional_rows() {
        match gmi_cut(&snapshot.rows[k], &snapshot, options.lift_gmi, th) {
            Ok(cut) => {
                if let Some(sc) = round.accept(&cut, &snapshot, inst, th) {
                    gmi_depth.insert(k, sc.depth);
                    round.cuts.push(sc);
                }
            }
            Err(_) => round.reject(RejectReason::Unsupported),
        }
    }
    match generator {
        Generator::G | Generator::G2Rounds => {}
        Generator::GAllpairs => {
            let pc = pair_cuts(&snapshot, options);
            round.body_cuts = pc.body_cuts;
            round.wedge_cuts = pc.wedge_cuts;
            for cand in pc.candidates {
                if let Some(sc) = round.accept(&cand.cut, &snapshot, inst, th) {
                    round.cuts.push(sc);
                }
            }
        }
        Generator::GDeepest => {
            let pc = pair_cuts(&snapshot, options);
            let mut best: BTreeMap<usize, StructuralCut> = BTreeMap::new();
            for cand in pc.candidates {
                if cut_depth(&cand.cut.coefs).is_err() {
                    round.reject(RejectReason::Empty);
                    continue;
                }
                let Some(sc) = round.accept(&cand.cut, &snapshot, inst, th) else { continue };
                if best.get(&cand.frac_row).is_none_or(|b| sc.depth > b.depth) {
                    best.insert(cand.frac_row, sc);
                }
            }
            for (row, sc) in best {
                if let Some(g) = gmi_depth.get(&row) {
                    round.depth_ratios.push(sc.depth / g);
                }
                match sc.provenance.kind {
                    crate::cutgen::CutKind::Wedge => round.wedge_cuts += 1,
                    _ => round.body_cuts += 1,
                }
                round.cuts.push(sc);
            }
        }
    }
    Ok(round)
}

pub fn solve(inst: &MilpInstance) -> Result<LpSolution, DiveError> {
    let sol = Simplex::new().solve(inst)?;
    match sol.status {
        LpStatus::Optimal => Ok(sol),
        s => Err(DiveError::Status(s)),
    }
}

/// Objective in minimization form.
fn normalized(sense: ObjSense, z: f64) -> f64 {
    match sense {
        ObjSense::Min => z,
        ObjSense::Max => -z,
    }
}

/// Percentage of the gap between `z_lp` and `z_star` closed at `z_now`,
/// all three in minimization form.
pub fn gap_closed(z_lp: f64, z_now: f64, z_star: f64) -> f64 {
    let gap = z_star - z_lp;
    if gap <= 1e-9 * z_star.abs().max(1.0) {
        return 100.0;
    }
    (100.0 * (z_now - z_lp) / gap).clamp(0.0, 100.0)
}

/// Settings of one cutting step.
#[derive(Clone, Debug)]
pub struct StepContext<'a> {
    pub generator: Generator,
    pub options: CutOptions,
    /// Cuts violated by this point are quarantined.
    pub x_star: Option<&'a [f64]>,
    pub validity_tol: f64,
    /// Adds a cut that is known to cut off `x_star`.
    pub inject_invalid: bool,
}

#[derive(Clone, Debug)]
pub struct StepOutcome {
    /// LP after the accepted cuts were added.
    pub lp: LpSolution,
    pub added: Vec<StructuralCut>,
    pub quarantined: Vec<StructuralCut>,
    pub rejected: BTreeMap<RejectReason, usize>,
    pub rounds: Vec<Round>,
}

fn add_cut(inst: &mut MilpInstance, cut: &StructuralCut) {
    let name = format!("cut{}", inst.num_rows());
    inst.add_constraint(&name, cut.coefs.clone(), RowSense::Ge, cut.rhs);
}

fn invalid_cut(inst: &MilpInstance, x_star: &[f64], template: Option<&StructuralCut>) -> StructuralCut {
    let mut cut = template.cloned().unwrap_or_else(|| StructuralCut {
        coefs: (0..inst.num_vars()).map(|j| (j, 1.0)).collect(),
        rhs: 0.0,
        provenance: crate::cutgen::Provenance {
            kind: crate::cutgen::CutKind::Gmi,
            frac_var: 0,
            int_var: None,
            side: None,
            lifted: false,
            eta_mu: None,
        },
        depth: 0.0,
    });
    cut.rhs = cut.activity(x_star) + 1.0;
    cut
}

/// Separates, checks each cut against the known solution, adds the rest
/// to `inst` and re-solves.
pub fn cutting_step(inst: &mut MilpInstance, ctx: &StepContext<'_>) -> Result<StepOutcome, DiveError> {
    let rounds_wanted = if ctx.generator == Generator::G2Rounds { 2 } else { 1 };
    let mut lp = solve(inst)?;
    let mut out =
        StepOutcome { lp: lp.clone(), added: vec![], quarantined: vec![], rejected: BTreeMap::new(), rounds: vec![] };
    for round_no in 0..rounds_wanted {
        let mut round = separate(inst, &lp, ctx.generator, &ctx.options)?;
        if ctx.inject_invalid && round_no == 0 {
            if let Some(x) = ctx.x_star {
                let bad = invalid_cut(inst, x, round.cuts.first());
                round.cuts.push(bad);
            }
        }
        for (reason, n) in &round.rejected {
            *out.rejected.entry(*reason).or_default() += n;
        }
        let mut added_now = 0;
        for cut in &round.cuts {
            if let Some(x) = ctx.x_star {
                if cut.violation(x) > ctx.validity_tol * cut.rhs.abs().max(1.0) {
                    *out.rejected.entry(RejectReason::Invalid).or_default() += 1;
                    out.quarantined.push(cut.clone());
                    continue;
                }
            }
            add_cut(inst, cut);
            out.added.push(cut.clone());
            added_now += 1;
        }
        out.rounds.push(round);
        if added_now > 0 {
            lp = solve(inst)?;
        }
        if added_now == 0 {
            break;
        }
    }
    out.lp = lp;
    Ok(out)
}

/// Integer variables whose LP value is fractional, in index order.
pub fn fractional_integers(inst: &MilpInstance, x: &[f64]) -> Vec<usize> {
    (0..inst.num_vars()).filter(|&j| inst.variables[j].integer && integer_infeasibility(x[j]) > INTEGRAL_TOL).collect()
}

/// Fixes a uniformly chosen fractional integer variable to its known value.
/// Returns the variable, or `None` when the LP point is integral.
pub fn branching_step(
    inst: &mut MilpInstance,
    x_lp: &[f64],
    x_star: &[f64],
    rng: &mut ChaCha8Rng,
) -> Result<Option<usize>, DiveError> {
    let cands = fractional_integers(inst, x_lp);
    if cands.is_empty() {
        return Ok(None);
    }
    let j = cands[rng.gen_range(0..cands.len())];
    *inst = fix_variable(inst, j, x_star[j])?;
    Ok(Some(j))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DiveConfig {
    pub generator: Generator,
    pub seed: u64,
    pub max_depth: usize,
    /// Wall-clock limit per dive in seconds.
    pub time_limit: Option<f64>,
    pub options: CutOptions,
    pub validity_tol: f64,
    pub inject_invalid: bool,
    /// Drop all cuts after each branching step.
    pub purge_cuts: bool,
}

impl Default for DiveConfig {
    fn default() -> Self {
        DiveConfig {
            generator: Generator::G,
            seed: 0,
            max_depth: 12,
            time_limit: None,
            options: CutOptions::default(),
            validity_tol: 1e-6,
            inject_invalid: false,
            purge_cuts: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    IntegerFeasible,
    MaxDepth,
    TimeLimit,
    /// The known solution left the LP; only possible with checking off.
    KnownSolutionCutOff,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepthSnapshot {
    pub depth: usize,
    pub objective: f64,
    pub gap_closed: f64,
    pub cuts_added: usize,
    pub cuts_rejected: BTreeMap<String, usize>,
    pub validity_failures: usize,
    /// Variable fixed by the branching step that followed, if any.
    pub fixed: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiveRecord {
    pub instance: String,
    pub generator: Generator,
    pub seed: u64,
    pub root_lp: f64,
    pub known_objective: f64,
    pub snapshots: Vec<DepthSnapshot>,
    pub termination: Termination,
    pub validity_failures: usize,
    pub body_cuts: usize,
    pub wedge_cuts: usize,
    /// Root depth ratios of deepest two-row cut over GMI cut, per row.
    pub depth_ratios: Vec<f64>,
}

impl DiveRecord {
    /// Gap closed at `depth`, carrying the last value past the end of the dive.
    pub fn gap_at(&self, depth: usize) -> f64 {
        self.snapshots.iter().rev().find(|s| s.depth <= depth).map_or(0.0, |s| s.gap_closed)
    }

    pub fn cuts_added(&self) -> usize {
        self.snapshots.iter().map(|s| s.cuts_added).sum()
    }

    pub fn rejected(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for s in &self.snapshots {
            for (k, v) in &s.cuts_rejected {
                *out.entry(k.clone()).or_default() += v;
            }
        }
        out
    }
}

pub fn run_dive(inst: &MilpInstance, sol: &KnownSolution, cfg: &DiveConfig) -> Result<DiveRecord, DiveError> {
    let report = crate::instance::validate_solution(inst, sol, 1e-6);
    if !report.is_feasible() {
        return Err(DiveError::InfeasibleSolution(report.to_string()));
    }
    let started = Instant::now();
    let x_star = sol.dense(inst);
    let sense = inst.sense;
    let z_star = normalized(sense, inst.objective_value(&x_star));
    let root = solve(inst)?;
    let z_lp = normalized(sense, root.objective);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut current = inst.clone();
    let mut record = DiveRecord {
        instance: inst.name.clone(),
        generator: cfg.generator,
        seed: cfg.seed,
        root_lp: root.objective,
        known_objective: inst.objective_value(&x_star),
        snapshots: vec![],
        termination: Termination::MaxDepth,
        validity_failures: 0,
        body_cuts: 0,
        wedge_cuts: 0,
        depth_ratios: vec![],
    };
    let mut depth = 0;
    loop {
        let ctx = StepContext {
            generator: cfg.generator,
            options: cfg.options,
            x_star: Some(&x_star),
            validity_tol: cfg.validity_tol,
            inject_invalid: cfg.inject_invalid && depth == 0,
        };
        let step = cutting_step(&mut current, &ctx)?;
        for round in &step.rounds {
            record.body_cuts += round.body_cuts;
            record.wedge_cuts += round.wedge_cuts;
            if depth == 0 {
                record.depth_ratios.extend(&round.depth_ratios);
            }
        }
        let z = normalized(sense, step.lp.objective);
        let failures = step.quarantined.len();
        record.validity_failures += failures;
        record.snapshots.push(DepthSnapshot {
            depth,
            objective: step.lp.objective,
            gap_closed: gap_closed(z_lp, z, z_star),
            cuts_added: step.added.len(),
            cuts_rejected: step.rejected.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            validity_failures: failures,
            fixed: None,
        });
        if z > z_star + 1e-6 * z_star.abs().max(1.0) {
            record.termination = Termination::KnownSolutionCutOff;
            break;
        }
        if fractional_integers(&current, &step.lp.x).is_empty() {
            record.termination = Termination::IntegerFeasible;
            break;
        }
        if depth >= cfg.max_depth {
            record.termination = Termination::MaxDepth;
            break;
        }
        if cfg.time_limit.is_some_and(|t| started.elapsed().as_secs_f64() > t) {
            record.termination = Termination::TimeLimit;
            break;
        }
        if cfg.purge_cuts {
            let fixed_bounds: Vec<(f64, f64)> = current.variables.iter().map(|v| (v.lower, v.upper)).collect();
            current = inst.clone();
            for (v, (lo, up)) in current.variables.iter_mut().zip(fixed_bounds) {
                v.lower = lo;
                v.upper = up;
            }
        }
        match branching_step(&mut current, &step.lp.x, &x_star, &mut rng)? {
            Some(j) => record.snapshots.last_mut().unwrap().fixed = Some(inst.variables[j].name.clone()),
            None => {
                record.termination = Termination::IntegerFeasible;
                break;
            }
        }
        depth += 1;
    }
    Ok(record)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub generators: Vec<Generator>,
    pub dives: usize,
    pub base_seed: u64,
    pub max_depth: usize,
    pub time_limit: Option<f64>,
    pub options: CutOptions,
    pub inject_invalid: bool,
    pub purge_cuts: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            generators: Generator::ALL.to_vec(),
            dives: 20,
            base_seed: 0,
            max_depth: 12,
            time_limit: None,
            options: CutOptions::default(),
            inject_invalid: false,
            purge_cuts: false,
        }
    }
}

/// Runs `dives` dives per generator; dive `k` uses seed `base_seed + k`
/// for every generator. Records come back in (generator, k) order.
pub fn run_experiment(
    inst: &MilpInstance,
    sol: &KnownSolution,
    cfg: &ExperimentConfig,
) -> Result<Vec<DiveRecord>, DiveError> {
    let jobs: Vec<(Generator, u64)> =
        cfg.generators.iter().flat_map(|&g| (0..cfg.dives as u64).map(move |k| (g, cfg.base_seed + k))).collect();
    jobs.par_iter()
        .map(|&(generator, seed)| {
            let dc = DiveConfig {
                generator,
                seed,
                max_depth: cfg.max_depth,
                time_limit: cfg.time_limit,
                options: cfg.options,
                validity_tol: 1e-6,
                inject_invalid: cfg.inject_invalid,
                purge_cuts: cfg.purge_cuts,
            };
            run_dive(inst, sol, &dc)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub generator: Generator,
    pub gaps: Vec<f64>,
    pub dives: usize,
    pub cuts_added: usize,
    pub body_cuts: usize,
    pub wedge_cuts: usize,
    pub rejected: BTreeMap<String, usize>,
    pub validity_failures: usize,
    /// Mean root depth of the deepest two-row cut as a percentage of GMI depth.
    pub depth_percentage: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub checkpoints: Vec<usize>,
    pub rows: Vec<SummaryRow>,
}

/// Averages gap closed at each checkpoint per generator, in the order
/// generators first appear.
pub fn summarize(records: &[DiveRecord], checkpoints: &[usize]) -> Summary {
    let mut order: Vec<Generator> = Vec::new();
    for r in records {
        if !order.contains(&r.generator) {
            order.push(r.generator);
        }
    }
    let rows = order
        .into_iter()
        .map(|g| {
            let rs: Vec<&DiveRecord> = records.iter().filter(|r| r.generator == g).collect();
            let n = rs.len() as f64;
            let gaps = checkpoints.iter().map(|&d| rs.iter().map(|r| r.gap_at(d)).sum::<f64>() / n).collect();
            let mut rejected = BTreeMap::new();
            for r in &rs {
                for (k, v) in r.rejected() {
                    *rejected.entry(k).or_default() += v;
                }
            }
            let ratios: Vec<f64> = rs.iter().flat_map(|r| r.depth_ratios.iter().copied()).collect();
            SummaryRow {
                generator: g,
                gaps,
                dives: rs.len(),
                cuts_added: rs.iter().map(|r| r.cuts_added()).sum(),
                body_cuts: rs.iter().map(|r| r.body_cuts).sum(),
                wedge_cuts: rs.iter().map(|r| r.wedge_cuts).sum(),
                rejected,
                validity_failures: rs.iter().map(|r| r.validity_failures).sum(),
                depth_percentage: if ratios.is_empty() {
                    None
                } else {
                    Some(100.0 * ratios.iter().sum::<f64>() / ratios.len() as f64)
                },
            }
        })
        .collect();
    Summary { checkpoints: checkpoints.to_vec(), rows }
}

impl Summary {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("generator");
        for d in &self.checkpoints {
            let _ = write!(out, ",depth_{d}");
        }
        out.push_str(",dives,cuts_added,two_row_cuts,wedge_cuts,rejected,validity_failures,depth_pct\n");
        for r in &self.rows {
            out.push_str(r.generator.label());
            for g in &r.gaps {
                let _ = write!(out, ",{g:.2}");
            }
            let rejected: usize = r.rejected.values().sum();
            let pct = r.depth_percentage.map(|p| format!("{p:.2}")).unwrap_or_default();
            let _ = writeln!(
                out,
                ",{},{},{},{},{},{},{}",
                r.dives, r.cuts_added, r.body_cuts, r.wedge_cuts, rejected, r.validity_failures, pct
            );
        }
        out
    }

    /// Fixed-width table: generators as rows, depths as columns.
    pub fn to_table(&self) -> String {
        let mut out = format!("{:<12}", "generator");
        for d in &self.checkpoints {
            let _ = write!(out, "{:>10}", format!("depth {d}"));
        }
        let _ = writeln!(out, "{:>8}{:>8}{:>9}{:>9}", "dives", "cuts", "invalid", "depth%");
        for r in &self.rows {
            let _ = write!(out, "{:<12}", r.generator.label());
            for g in &r.gaps {
                let _ = write!(out, "{g:>10.2}");
            }
            let pct = r.depth_percentage.map(|p| format!("{p:.2}")).unwrap_or_else(|| "-".into());
            let _ = writeln!(out, "{:>8}{:>8}{:>9}{:>9}", r.dives, r.cuts_added, r.validity_failures, pct);
        }
        out
    }
}

/// One JSON object per line.
pub fn records_to_jsonl(records: &[DiveRecord]) -> String {
    records.iter().map(|r| serde_json::to_string(r).expect("records serialize") + "\n").collect()
}

pub fn records_from_jsonl(text: &str) -> Result<Vec<DiveRecord>, serde_json::Error> {
    text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}
