//! MILP instances, MPS reading/writing, and known feasible solutions.
//!
//! The MPS reader accepts the usual subset: `NAME`, an optional `OBJSENSE`
//! section, `ROWS`, `COLUMNS` (with `INTORG`/`INTEND` markers), `RHS`,
//! `RANGES`, `BOUNDS` and `ENDATA`. Fields are split on whitespace, so fixed
//! format files work as long as names contain no blanks. Ranged rows are
//! turned into a pair of inequalities while parsing.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObjSense {
    Min,
    Max,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowSense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
    pub integer: bool,
}

impl Variable {
    pub fn continuous(name: impl Into<String>, lower: f64, upper: f64) -> Self {
        Variable { name: name.into(), lower, upper, integer: false }
    }

    pub fn integer(name: impl Into<String>, lower: f64, upper: f64) -> Self {
        Variable { name: name.into(), lower, upper, integer: true }
    }
}

/// A linear constraint `Σ coefs · x (sense) rhs`, stored sparsely.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    pub coefs: Vec<(usize, f64)>,
    pub sense: RowSense,
    pub rhs: f64,
}

impl Constraint {
    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coefs.iter().map(|&(j, a)| a * x[j]).sum()
    }

    /// Amount by which `activity` violates the row; zero when satisfied.
    pub fn violation(&self, activity: f64) -> f64 {
        match self.sense {
            RowSense::Le => (activity - self.rhs).max(0.0),
            RowSense::Ge => (self.rhs - activity).max(0.0),
            RowSense::Eq => (activity - self.rhs).abs(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MilpInstance {
    pub name: String,
    pub sense: ObjSense,
    pub objective: Vec<f64>,
    /// Constant added to the objective (the negated RHS of the objective row).
    pub objective_offset: f64,
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Error, PartialEq)]
pub enum InstanceError {
    #[error("objective has {objective} entries but the instance has {columns} columns")]
    ObjectiveLength { objective: usize, columns: usize },
    #[error("row {row} references column {column}, but only {columns} exist")]
    ColumnOutOfRange { row: String, column: usize, columns: usize },
    #[error("non-finite coefficient in {0}")]
    NonFinite(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
}

impl MilpInstance {
    pub fn new(name: impl Into<String>, sense: ObjSense) -> Self {
        MilpInstance {
            name: name.into(),
            sense,
            objective: Vec::new(),
            objective_offset: 0.0,
            variables: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn add_variable(&mut self, var: Variable, cost: f64) -> usize {
        self.variables.push(var);
        self.objective.push(cost);
        self.variables.len() - 1
    }

    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        coefs: Vec<(usize, f64)>,
        sense: RowSense,
        rhs: f64,
    ) -> usize {
        self.constraints.push(Constraint { name: name.into(), coefs, sense, rhs });
        self.constraints.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn num_rows(&self) -> usize {
        self.constraints.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum::<f64>() + self.objective_offset
    }

    /// Checks the structural invariants: consistent column counts and finite data.
    pub fn check(&self) -> Result<(), InstanceError> {
        let n = self.variables.len();
        if self.objective.len() != n {
            return Err(InstanceError::ObjectiveLength { objective: self.objective.len(), columns: n });
        }
        if self.objective.iter().any(|c| !c.is_finite()) || !self.objective_offset.is_finite() {
            return Err(InstanceError::NonFinite("objective".into()));
        }
        for row in &self.constraints {
            for &(j, a) in &row.coefs {
                if j >= n {
                    return Err(InstanceError::ColumnOutOfRange { row: row.name.clone(), column: j, columns: n });
                }
                if !a.is_finite() {
                    return Err(InstanceError::NonFinite(format!("row {}", row.name)));
                }
            }
            if !row.rhs.is_finite() {
                return Err(InstanceError::NonFinite(format!("rhs of row {}", row.name)));
            }
        }
        for v in &self.variables {
            if v.lower.is_nan() || v.upper.is_nan() || v.lower == f64::INFINITY || v.upper == f64::NEG_INFINITY {
                return Err(InstanceError::NonFinite(format!("bounds of {}", v.name)));
            }
        }
        Ok(())
    }

    /// Renders the instance as free-format MPS.
    pub fn to_mps(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "NAME {}", self.name);
        if self.sense == ObjSense::Max {
            let _ = writeln!(out, "OBJSENSE\n    MAX");
        }
        let _ = writeln!(out, "ROWS\n N obj");
        for row in &self.constraints {
            let tag = match row.sense {
                RowSense::Le => "L",
                RowSense::Ge => "G",
                RowSense::Eq => "E",
            };
            let _ = writeln!(out, " {} {}", tag, row.name);
        }
        let mut by_column: Vec<Vec<(usize, f64)>> = vec![Vec::new(); self.variables.len()];
        for (i, row) in self.constraints.iter().enumerate() {
            for &(j, a) in &row.coefs {
                by_column[j].push((i, a));
            }
        }
        let _ = writeln!(out, "COLUMNS");
        let mut in_int = false;
        for (j, var) in self.variables.iter().enumerate() {
            if var.integer != in_int {
                let marker = if var.integer { "INTORG" } else { "INTEND" };
                let _ = writeln!(out, "    MARKER 'MARKER' '{}'", marker);
                in_int = var.integer;
            }
            let _ = writeln!(out, "    {} obj {}", var.name, self.objective[j]);
            for &(i, a) in &by_column[j] {
                let _ = writeln!(out, "    {} {} {}", var.name, self.constraints[i].name, a);
            }
        }
        if in_int {
            let _ = writeln!(out, "    MARKER 'MARKER' 'INTEND'");
        }
        let _ = writeln!(out, "RHS");
        if self.objective_offset != 0.0 {
            let _ = writeln!(out, "    RHS obj {}", -self.objective_offset);
        }
        for row in &self.constraints {
            if row.rhs != 0.0 {
                let _ = writeln!(out, "    RHS {} {}", row.name, row.rhs);
            }
        }
        let _ = writeln!(out, "BOUNDS");
        for var in &self.variables {
            let (lo, up) = (var.lower, var.upper);
            if lo == 0.0 && up == f64::INFINITY {
                continue;
            }
            if lo == f64::NEG_INFINITY && up == f64::INFINITY {
                let _ = writeln!(out, " FR BND {}", var.name);
            } else if lo == up {
                let _ = writeln!(out, " FX BND {} {}", var.name, lo);
            } else {
                if lo == f64::NEG_INFINITY {
                    let _ = writeln!(out, " MI BND {}", var.name);
                } else if lo != 0.0 {
                    let _ = writeln!(out, " LO BND {} {}", var.name, lo);
                }
                if up != f64::INFINITY {
                    let _ = writeln!(out, " UP BND {} {}", var.name, up);
                }
            }
        }
        let _ = writeln!(out, "ENDATA");
        out
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("MPS line {line}: {message}")]
pub struct MpsError {
    pub line: usize,
    pub message: String,
}

fn mps_err(line: usize, message: impl Into<String>) -> MpsError {
    MpsError { line, message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Name,
    ObjSense,
    Rows,
    Columns,
    Rhs,
    Ranges,
    Bounds,
    End,
}

fn parse_number(token: &str, line: usize) -> Result<f64, MpsError> {
    let value: f64 = token.parse().map_err(|_| mps_err(line, format!("invalid number '{}'", token)))?;
    if value.is_nan() {
        return Err(mps_err(line, format!("invalid number '{}'", token)));
    }
    Ok(value)
}

/// Parses a fixed- or free-format MPS file.
pub fn parse_mps(text: &str) -> Result<MilpInstance, MpsError> {
    let mut inst = MilpInstance::new("", ObjSense::Min);
    let mut section: Option<Section> = None;
    let mut objective_row: Option<String> = None;
    let mut free_rows: Vec<String> = Vec::new();
    let mut row_index: HashMap<String, usize> = HashMap::new();
    let mut col_index: HashMap<String, usize> = HashMap::new();
    let mut seen_entries: HashMap<(usize, usize), ()> = HashMap::new();
    let mut rhs_seen: HashMap<usize, ()> = HashMap::new();
    let mut ranges: BTreeMap<usize, f64> = BTreeMap::new();
    let mut integer_block = false;
    let mut last_col: Option<usize> = None;
    let mut seen_rows = false;
    let mut seen_columns = false;
    let mut ended = false;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end();
        if line.trim().is_empty() || line.starts_with('*') {
            continue;
        }
        if ended {
            return Err(mps_err(lineno, "content after ENDATA"));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let header = !line.starts_with(' ') && !line.starts_with('\t');
        if header {
            let next = match tokens[0].to_ascii_uppercase().as_str() {
                "NAME" => Section::Name,
                "OBJSENSE" => Section::ObjSense,
                "ROWS" => Section::Rows,
                "COLUMNS" => Section::Columns,
                "RHS" => Section::Rhs,
                "RANGES" => Section::Ranges,
                "BOUNDS" => Section::Bounds,
                "ENDATA" => Section::End,
                other => return Err(mps_err(lineno, format!("unknown section '{}'", other))),
            };
            if let Some(current) = section {
                if next <= current {
                    return Err(mps_err(lineno, format!("section {:?} out of order", next)));
                }
            }
            if next > Section::Rows && !seen_rows {
                return Err(mps_err(lineno, "ROWS section missing before this section"));
            }
            if next > Section::Columns && !seen_columns {
                return Err(mps_err(lineno, "COLUMNS section missing before this section"));
            }
            match next {
                Section::Name => inst.name = tokens.get(1).copied().unwrap_or("").to_string(),
                Section::ObjSense => {
                    if let Some(s) = tokens.get(1) {
                        inst.sense = parse_sense(s, lineno)?;
                    }
                }
                Section::Rows => seen_rows = true,
                Section::Columns => seen_columns = true,
                Section::End => ended = true,
                _ => {}
            }
            section = Some(next);
            continue;
        }

        match section {
            None | Some(Section::Name) | Some(Section::End) => {
                return Err(mps_err(lineno, "data line outside of a section"));
            }
            Some(Section::ObjSense) => inst.sense = parse_sense(tokens[0], lineno)?,
            Some(Section::Rows) => {
                if tokens.len() != 2 {
                    return Err(mps_err(lineno, "ROWS entry needs a type and a name"));
                }
                let name = tokens[1].to_string();
                if row_index.contains_key(&name)
                    || objective_row.as_deref() == Some(tokens[1])
                    || free_rows.contains(&name)
                {
                    return Err(mps_err(lineno, format!("duplicate row '{}'", name)));
                }
                let sense = match tokens[0].to_ascii_uppercase().as_str() {
                    "N" => {
                        if objective_row.is_none() {
                            objective_row = Some(name);
                        } else {
                            free_rows.push(name);
                        }
                        continue;
                    }
                    "L" => RowSense::Le,
                    "G" => RowSense::Ge,
                    "E" => RowSense::Eq,
                    other => return Err(mps_err(lineno, format!("unknown row type '{}'", other))),
                };
                row_index.insert(name.clone(), inst.constraints.len());
                inst.add_constraint(name, Vec::new(), sense, 0.0);
            }
            Some(Section::Columns) => {
                if tokens.len() >= 3 && tokens[1].trim_matches('\'').eq_ignore_ascii_case("MARKER") {
                    match tokens[2].trim_matches('\'').to_ascii_uppercase().as_str() {
                        "INTORG" => integer_block = true,
                        "INTEND" => integer_block = false,
                        other => return Err(mps_err(lineno, format!("unknown marker '{}'", other))),
                    }
                    continue;
                }
                if tokens.len() != 3 && tokens.len() != 5 {
                    return Err(mps_err(lineno, "COLUMNS entry needs a column and one or two (row, value) pairs"));
                }
                let col = match col_index.get(tokens[0]) {
                    Some(&j) if last_col == Some(j) => j,
                    Some(_) => {
                        return Err(mps_err(lineno, format!("column '{}' is not contiguous", tokens[0])));
                    }
                    None => {
                        let j = inst.add_variable(
                            Variable {
                                name: tokens[0].to_string(),
                                lower: 0.0,
                                upper: f64::INFINITY,
                                integer: integer_block,
                            },
                            0.0,
                        );
                        col_index.insert(tokens[0].to_string(), j);
                        j
                    }
                };
                last_col = Some(col);
                for pair in tokens[1..].chunks(2) {
                    let value = parse_number(pair[1], lineno)?;
                    if objective_row.as_deref() == Some(pair[0]) {
                        if seen_entries.insert((usize::MAX, col), ()).is_some() {
                            return Err(mps_err(lineno, format!("duplicate objective entry for '{}'", tokens[0])));
                        }
                        inst.objective[col] = value;
                    } else if free_rows.iter().any(|r| r == pair[0]) {
                        continue;
                    } else {
                        let &i = row_index
                            .get(pair[0])
                            .ok_or_else(|| mps_err(lineno, format!("unknown row '{}'", pair[0])))?;
                        if seen_entries.insert((i, col), ()).is_some() {
                            return Err(mps_err(
                                lineno,
                                format!("duplicate entry for column '{}' in row '{}'", tokens[0], pair[0]),
                            ));
                        }
                        if value != 0.0 {
                            inst.constraints[i].coefs.push((col, value));
                        }
                    }
                }
            }
            Some(Section::Rhs) | Some(Section::Ranges) => {
                let pairs = match tokens.len() {
                    2 | 4 => &tokens[..],
                    3 | 5 => &tokens[1..],
                    _ => return Err(mps_err(lineno, "malformed RHS/RANGES entry")),
                };
                let is_rhs = section == Some(Section::Rhs);
                for pair in pairs.chunks(2) {
                    let value = parse_number(pair[1], lineno)?;
                    if objective_row.as_deref() == Some(pair[0]) {
                        if is_rhs {
                            inst.objective_offset = -value;
                        }
                        continue;
                    }
                    if free_rows.iter().any(|r| r == pair[0]) {
                        continue;
                    }
                    let &i =
                        row_index.get(pair[0]).ok_or_else(|| mps_err(lineno, format!("unknown row '{}'", pair[0])))?;
                    if is_rhs {
                        if rhs_seen.insert(i, ()).is_some() {
                            return Err(mps_err(lineno, format!("duplicate RHS for row '{}'", pair[0])));
                        }
                        inst.constraints[i].rhs = value;
                    } else if ranges.insert(i, value).is_some() {
                        return Err(mps_err(lineno, format!("duplicate RANGES entry for row '{}'", pair[0])));
                    }
                }
            }
            Some(Section::Bounds) => {
                let kind = tokens[0].to_ascii_uppercase();
                let needs_value = !matches!(kind.as_str(), "FR" | "MI" | "PL" | "BV");
                let (col_name, value) = match (needs_value, tokens.len()) {
                    (true, 4) => (tokens[2], Some(parse_number(tokens[3], lineno)?)),
                    (true, 3) => (tokens[1], Some(parse_number(tokens[2], lineno)?)),
                    (false, 3) => (tokens[2], None),
                    (false, 2) => (tokens[1], None),
                    // BV occasionally carries a value field
                    (false, 4) if kind == "BV" => (tokens[2], None),
                    _ => return Err(mps_err(lineno, "malformed BOUNDS entry")),
                };
                let &j =
                    col_index.get(col_name).ok_or_else(|| mps_err(lineno, format!("unknown column '{}'", col_name)))?;
                let var = &mut inst.variables[j];
                match kind.as_str() {
                    "UP" => var.upper = value.unwrap(),
                    "LO" => var.lower = value.unwrap(),
                    "FX" => {
                        var.lower = value.unwrap();
                        var.upper = value.unwrap();
                    }
                    "FR" => {
                        var.lower = f64::NEG_INFINITY;
                        var.upper = f64::INFINITY;
                    }
                    "MI" => var.lower = f64::NEG_INFINITY,
                    "PL" => var.upper = f64::INFINITY,
                    "BV" => {
                        var.lower = 0.0;
                        var.upper = 1.0;
                        var.integer = true;
                    }
                    "LI" => {
                        var.lower = value.unwrap();
                        var.integer = true;
                    }
                    "UI" => {
                        var.upper = value.unwrap();
                        var.integer = true;
                    }
                    other => return Err(mps_err(lineno, format!("unknown bound type '{}'", other))),
                }
            }
        }
    }
    if !ended {
        return Err(mps_err(text.lines().count(), "missing ENDATA"));
    }
    if !seen_rows || !seen_columns {
        return Err(mps_err(text.lines().count(), "ROWS and COLUMNS sections are required"));
    }

    // Ranged rows become a pair of inequalities: the original row keeps one
    // side and a companion row carries the other.
    let mut extra = Vec::new();
    for (&i, &r) in &ranges {
        let row = &mut inst.constraints[i];
        let (lo, hi) = match row.sense {
            RowSense::Le => (row.rhs - r.abs(), row.rhs),
            RowSense::Ge => (row.rhs, row.rhs + r.abs()),
            RowSense::Eq if r >= 0.0 => (row.rhs, row.rhs + r),
            RowSense::Eq => (row.rhs + r, row.rhs),
        };
        row.sense = RowSense::Ge;
        row.rhs = lo;
        extra.push(Constraint {
            name: format!("{}_rng", row.name),
            coefs: row.coefs.clone(),
            sense: RowSense::Le,
            rhs: hi,
        });
    }
    inst.constraints.extend(extra);
    Ok(inst)
}

fn parse_sense(token: &str, line: usize) -> Result<ObjSense, MpsError> {
    match token.to_ascii_uppercase().as_str() {
        "MAX" | "MAXIMIZE" | "MAXIMISE" => Ok(ObjSense::Max),
        "MIN" | "MINIMIZE" | "MINIMISE" => Ok(ObjSense::Min),
        other => Err(mps_err(line, format!("unknown objective sense '{}'", other))),
    }
}

/// A known feasible solution, keyed by variable name. Variables that are not
/// listed take the value 0, which is the default MPS lower bound.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct KnownSolution {
    pub values: BTreeMap<String, f64>,
}

#[derive(Debug, Error, PartialEq)]
#[error("solution line {line}: {message}")]
pub struct SolutionError {
    pub line: usize,
    pub message: String,
}

/// Parses `name value` lines; `#` starts a comment.
pub fn parse_solution(text: &str) -> Result<KnownSolution, SolutionError> {
    let mut values = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(SolutionError { line: idx + 1, message: "expected `name value`".into() });
        }
        let value: f64 = tokens[1].parse().map_err(|_| SolutionError {
            line: idx + 1,
            message: format!("invalid value '{}' for {}", tokens[1], tokens[0]),
        })?;
        if !value.is_finite() {
            return Err(SolutionError { line: idx + 1, message: format!("non-finite value for {}", tokens[0]) });
        }
        values.insert(tokens[0].to_string(), value);
    }
    Ok(KnownSolution { values })
}

impl KnownSolution {
    /// Dense vector in column order; unlisted variables are 0.
    pub fn dense(&self, inst: &MilpInstance) -> Vec<f64> {
        inst.variables.iter().map(|v| self.values.get(&v.name).copied().unwrap_or(0.0)).collect()
    }

    pub fn from_dense(inst: &MilpInstance, x: &[f64]) -> Self {
        KnownSolution { values: inst.variables.iter().zip(x).map(|(v, &x)| (v.name.clone(), x)).collect() }
    }

    pub fn to_text(&self) -> String {
        self.values.iter().map(|(k, v)| format!("{} {}\n", k, v)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ViolationKind {
    Row,
    LowerBound,
    UpperBound,
    Integrality,
    UnknownVariable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub name: String,
    pub amount: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "feasible");
        }
        for v in &self.violations {
            writeln!(f, "{:?} {}: {}", v.kind, v.name, v.amount)?;
        }
        Ok(())
    }
}

/// Every feasible point of a bounded pure-integer instance, in
/// lexicographic order. `None` when a variable is continuous or unbounded,
/// or when the box holds more than `max_box` points.
pub fn enumerate_feasible_points(inst: &MilpInstance, max_box: u64) -> Option<Vec<Vec<f64>>> {
    let mut ranges = Vec::with_capacity(inst.num_vars());
    let mut size: u64 = 1;
    for v in &inst.variables {
        if !v.integer || !v.lower.is_finite() || !v.upper.is_finite() {
            return None;
        }
        let (lo, hi) = (v.lower.ceil() as i64, v.upper.floor() as i64);
        size = size.saturating_mul((hi - lo + 1).max(0) as u64);
        ranges.push((lo, hi));
    }
    if size > max_box {
        return None;
    }
    let mut out = Vec::new();
    let mut x: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    if ranges.iter().any(|r| r.0 > r.1) {
        return Some(out);
    }
    loop {
        let point: Vec<f64> = x.iter().map(|&v| v as f64).collect();
        if inst.constraints.iter().all(|c| c.violation(c.activity(&point)) <= 1e-9) {
            out.push(point);
        }
        let mut k = x.len();
        loop {
            if k == 0 {
                return Some(out);
            }
            k -= 1;
            if x[k] < ranges[k].1 {
                x[k] += 1;
                break;
            }
            x[k] = ranges[k].0;
        }
    }
}

/// Lists every row, bound and integrality condition violated by more than `tol`.
pub fn validate_solution(inst: &MilpInstance, sol: &KnownSolution, tol: f64) -> ValidationReport {
    let mut violations = Vec::new();
    for name in sol.values.keys() {
        if inst.var_index(name).is_none() {
            violations.push(Violation { kind: ViolationKind::UnknownVariable, name: name.clone(), amount: 0.0 });
        }
    }
    let x = sol.dense(inst);
    for (var, &v) in inst.variables.iter().zip(&x) {
        if var.lower - v > tol {
            violations.push(Violation {
                kind: ViolationKind::LowerBound,
                name: var.name.clone(),
                amount: var.lower - v,
            });
        }
        if v - var.upper > tol {
            violations.push(Violation {
                kind: ViolationKind::UpperBound,
                name: var.name.clone(),
                amount: v - var.upper,
            });
        }
        if var.integer {
            let gap = (v - v.round()).abs();
            if gap > tol {
                violations.push(Violation { kind: ViolationKind::Integrality, name: var.name.clone(), amount: gap });
            }
        }
    }
    for row in &inst.constraints {
        let amount = row.violation(row.activity(&x));
        if amount > tol {
            violations.push(Violation { kind: ViolationKind::Row, name: row.name.clone(), amount });
        }
    }
    ValidationReport { violations }
}
