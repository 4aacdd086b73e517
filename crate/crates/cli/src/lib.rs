//! Command-line driver: solve an LP relaxation, list cuts, run dives and
//! summarize them.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use tworow_cuts::cutgen::StructuralCut;
use tworow_cuts::dive::{
    cutting_step, gap_closed, records_from_jsonl, records_to_jsonl, run_experiment, solve, summarize, CutOptions,
    ExperimentConfig, Generator, StepContext, CHECKPOINTS,
};
use tworow_cuts::instance::{parse_mps, parse_solution, validate_solution, KnownSolution, MilpInstance, ObjSense};
use tworow_cuts::tworow::{RowClass, TableauSnapshot, Thresholds};

/// Settings shared by all subcommands. Loaded from TOML; flags override.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub thresholds: Thresholds,
    pub dives: usize,
    pub checkpoints: Vec<usize>,
    pub seed: u64,
    /// Per dive, in seconds.
    pub time_limit: Option<f64>,
    pub generators: Vec<Generator>,
    pub out_dir: PathBuf,
    pub lift: bool,
    pub lift_gmi: bool,
    pub wedges: bool,
    pub purge_cuts: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            thresholds: Thresholds::default(),
            dives: 20,
            checkpoints: CHECKPOINTS.to_vec(),
            seed: 0,
            time_limit: None,
            generators: Generator::ALL.to_vec(),
            out_dir: PathBuf::from("out"),
            lift: true,
            lift_gmi: true,
            wedges: true,
            purge_cuts: false,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.thresholds;
        for (name, v) in [
            ("min_fractionality", t.min_fractionality),
            ("integer_tol", t.integer_tol),
            ("max_dynamism", t.max_dynamism),
        ] {
            if v.is_nan() || v <= 0.0 {
                bail!("threshold {name} must be positive, got {v}");
            }
        }
        if self.time_limit.is_some_and(|l| l.is_nan() || l <= 0.0) {
            bail!("time limit must be positive");
        }
        if self.generators.is_empty() {
            bail!("no generator selected");
        }
        Ok(())
    }

    pub fn cut_options(&self) -> CutOptions {
        CutOptions { thresholds: self.thresholds, lift: self.lift, lift_gmi: self.lift_gmi, wedges: self.wedges }
    }

    pub fn max_depth(&self) -> usize {
        self.checkpoints.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Parser)]
#[command(name = "tworow", version, about = "Two-row intersection cuts and diving experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the LP relaxation and classify the rows of the optimal tableau.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Generate one cutting step at the root and list the cuts.
    Cuts {
        file: PathBuf,
        /// Generator: g, g2, allpairs, deepest or all.
        #[arg(long = "gen", default_value = "all")]
        generator: String,
        /// Known optimal solution, used for gap closed and validity checks.
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run randomized dives toward a known solution.
    Dive {
        file: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long)]
        dives: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Generator: g, g2, allpairs, deepest or all.
        #[arg(long = "gen")]
        generator: Option<String>,
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long)]
        time_limit: Option<f64>,
        /// Directory for records.jsonl and summary.csv.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add a cut that removes the known solution, to test the checks.
        #[arg(long)]
        inject_invalid: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Summarize the records of a dive run.
    Report {
        dir: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args, Default)]
pub struct Common {
    /// TOML run configuration; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub no_lift: bool,
    #[arg(long)]
    pub no_wedges: bool,
}

impl Common {
    fn load(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::from_toml(&read(p)?).with_context(|| format!("config {}", p.display()))?,
            None => RunConfig::default(),
        };
        if self.no_lift {
            cfg.lift = false;
            cfg.lift_gmi = false;
        }
        if self.no_wedges {
            cfg.wedges = false;
        }
        Ok(cfg)
    }
}

/// Result of a run that completed without errors.
#[derive(Debug, Default, PartialEq)]
pub struct Outcome {
    pub validity_failures: usize,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.validity_failures > 0 {
            2
        } else {
            0
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_instance(path: &Path) -> Result<MilpInstance> {
    let inst = parse_mps(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    inst.check()?;
    Ok(inst)
}

fn load_solution(path: &Path, inst: &MilpInstance) -> Result<KnownSolution> {
    let sol = parse_solution(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let report = validate_solution(inst, &sol, 1e-6);
    if !report.is_feasible() {
        bail!("solution {} is infeasible: {report}", path.display());
    }
    Ok(sol)
}

pub fn parse_generators(s: &str) -> Result<Vec<Generator>> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(Generator::ALL.to_vec());
    }
    s.split(',').map(|g| g.trim().parse::<Generator>().map_err(Into::into)).collect()
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome> {
    match cli.command {
        Command::Solve { file, common } => cmd_solve(&file, &common.load()?, out),
        Command::Cuts { file, generator, solution, json, common } => {
            let mut cfg = common.load()?;
            cfg.generators = parse_generators(&generator)?;
            cmd_cuts(&file, solution.as_deref(), json, &cfg, out)
        }
        Command::Dive {
            file,
            solution,
            dives,
            seed,
            generator,
            max_depth,
            time_limit,
            out: dir,
            inject_invalid,
            common,
        } => {
            let mut cfg = common.load()?;
            if let Some(d) = dives {
                cfg.dives = d;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(g) = generator {
                cfg.generators = parse_generators(&g)?;
            }
            if let Some(t) = time_limit {
                cfg.time_limit = Some(t);
            }
            if let Some(d) = dir {
                cfg.out_dir = d;
            }
            if let Some(d) = max_depth {
                cfg.checkpoints.retain(|&c| c <= d);
                if !cfg.checkpoints.contains(&d) {
                    cfg.checkpoints.push(d);
                }
            }
            cfg.validate()?;
            cmd_dive(&file, &solution, inject_invalid, &cfg, out)
        }
        Command::Report { dir, common } => cmd_report(&dir, &common.load()?, out),
    }
}

fn cmd_solve(file: &Path, cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let inst = load_instance(file)?;
    let lp = solve(&inst)?;
    let snap = TableauSnapshot::capture(&inst, &lp, &cfg.thresholds)?;
    writeln!(out, "instance {}", inst.name)?;
    writeln!(out, "lp_objective {}", lp.objective)?;
    writeln!(out, "iterations {}", lp.iterations)?;
    for row in &snap.rows {
        let class = match row.class {
            RowClass::Fractional => "fractional".to_string(),
            RowClass::IntegerRow => "integer".to_string(),
            RowClass::Skipped(r) => format!("skipped ({r:?})"),
        };
        writeln!(out, "row {} value {} {}", inst.variables[row.var].name, row.row.value, class)?;
    }
    writeln!(out, "fractional_rows {}", snap.fractional_rows().len())?;
    writeln!(out, "integer_rows {}", snap.integer_rows().len())?;
    Ok(Outcome::default())
}

#[derive(Debug, Serialize)]
struct CutReport {
    kind: String,
    frac_var: String,
    int_var: Option<String>,
    side: Option<String>,
    lifted: bool,
    depth: f64,
    rhs: f64,
    coefs: BTreeMap<String, f64>,
}

#[derive(Debug, Serialize)]
struct GeneratorReport {
    generator: String,
    root_lp: f64,
    objective: f64,
    gap_closed: Option<f64>,
    cuts: Vec<CutReport>,
    quarantined: usize,
    rejected: BTreeMap<String, usize>,
}

fn cut_report(inst: &MilpInstance, cut: &StructuralCut) -> CutReport {
    let p = &cut.provenance;
    CutReport {
        kind: p.kind.to_string(),
        frac_var: inst.variables[p.frac_var].name.clone(),
        int_var: p.int_var.map(|j| inst.variables[j].name.clone()),
        side: p.side.map(|s| format!("{s:?}").to_lowercase()),
        lifted: p.lifted,
        depth: cut.depth,
        rhs: cut.rhs,
        coefs: cut.coefs.iter().map(|&(j, v)| (inst.variables[j].name.clone(), v)).collect(),
    }
}

fn normalized(sense: ObjSense, z: f64) -> f64 {
    match sense {
        ObjSense::Min => z,
        ObjSense::Max => -z,
    }
}

fn cmd_cuts(file: &Path, solution: Option<&Path>, json: bool, cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let inst = load_instance(file)?;
    let x_star = match solution {
        Some(p) => Some(load_solution(p, &inst)?.dense(&inst)),
        None => None,
    };
    let root = solve(&inst)?;
    let mut reports = Vec::new();
    let mut outcome = Outcome::default();
    for &generator in &cfg.generators {
        let mut current = inst.clone();
        let ctx = StepContext {
            generator,
            options: cfg.cut_options(),
            x_star: x_star.as_deref(),
            validity_tol: 1e-6,
            inject_invalid: false,
        };
        let step = cutting_step(&mut current, &ctx)?;
        outcome.validity_failures += step.quarantined.len();
        let gap = x_star.as_ref().map(|x| {
            let z_star = normalized(inst.sense, inst.objective_value(x));
            gap_closed(normalized(inst.sense, root.objective), normalized(inst.sense, step.lp.objective), z_star)
        });
        reports.push(GeneratorReport {
            generator: generator.label().to_string(),
            root_lp: root.objective,
            objective: step.lp.objective,
            gap_closed: gap,
            cuts: step.added.iter().map(|c| cut_report(&inst, c)).collect(),
            quarantined: step.quarantined.len(),
            rejected: step.rejected.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        });
    }
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
    } else {
        for r in &reports {
            write!(out, "{}", render_generator(r))?;
        }
    }
    Ok(outcome)
}

fn render_generator(r: &GeneratorReport) -> String {
    let mut s = String::new();
    let gap = r.gap_closed.map_or_else(|| "n/a".to_string(), |g| g.to_string());
    let _ = writeln!(s, "== {} root_lp {} objective {} gap_closed {}", r.generator, r.root_lp, r.objective, gap);
    for (k, c) in r.cuts.iter().enumerate() {
        let pair = match (&c.int_var, &c.side) {
            (Some(i), Some(side)) => format!(" int {i} side {side}"),
            _ => String::new(),
        };
        let lhs: Vec<String> = c.coefs.iter().map(|(n, v)| format!("{v} {n}")).collect();
        let _ = writeln!(
            s,
            "cut {k} {} frac {}{pair} lifted {} depth {}: {} >= {}",
            c.kind,
            c.frac_var,
            c.lifted,
            c.depth,
            lhs.join(" + "),
            c.rhs
        );
    }
    if r.quarantined > 0 {
        let _ = writeln!(s, "quarantined {}", r.quarantined);
    }
    for (k, v) in &r.rejected {
        let _ = writeln!(s, "rejected {k} {v}");
    }
    s
}

fn cmd_dive(
    file: &Path,
    solution: &Path,
    inject_invalid: bool,
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> Result<Outcome> {
    let inst = load_instance(file)?;
    let sol = load_solution(solution, &inst)?;
    let exp = ExperimentConfig {
        generators: cfg.generators.clone(),
        dives: cfg.dives,
        base_seed: cfg.seed,
        max_depth: cfg.max_depth(),
        time_limit: cfg.time_limit,
        options: cfg.cut_options(),
        inject_invalid,
        purge_cuts: cfg.purge_cuts,
    };
    let records = run_experiment(&inst, &sol, &exp)?;
    std::fs::create_dir_all(&cfg.out_dir).with_context(|| format!("creating {}", cfg.out_dir.display()))?;
    std::fs::write(cfg.out_dir.join("records.jsonl"), records_to_jsonl(&records))?;
    let summary = summarize(&records, &cfg.checkpoints);
    std::fs::write(cfg.out_dir.join("summary.csv"), summary.to_csv())?;
    write!(out, "{}", summary.to_table())?;
    let failures = records.iter().map(|r| r.validity_failures).sum();
    if failures > 0 {
        writeln!(out, "validity failures: {failures}")?;
    }
    Ok(Outcome { validity_failures: failures })
}

fn cmd_report(dir: &Path, cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let records = records_from_jsonl(&read(&dir.join("records.jsonl"))?).context("parsing records.jsonl")?;
    if records.is_empty() {
        bail!("no records in {}", dir.display());
    }
    let summary = summarize(&records, &cfg.checkpoints);
    write!(out, "{}", summary.to_table())?;
    writeln!(out)?;
    write!(out, "{}", summary.to_csv())?;
    let failures = records.iter().map(|r| r.validity_failures).sum();
    Ok(Outcome { validity_failures: failures })
}
