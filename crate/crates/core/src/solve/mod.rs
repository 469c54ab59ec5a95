//! Running SAT solvers on encoded instances: solving, decoding, enumeration
//! and certified unsatisfiability.

pub mod drat;
pub mod external;

use std::collections::BTreeSet;
use std::io;
use std::path::Path;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::encode::{CnfInstance, Lit, VarKey};
use crate::system::{RotationSystem, SystemError};

pub use external::{unsat_certificate, CertificateReport, ExternalSolver, CHECKER_ENV, SOLVER_ENV};

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("model violates the row constraints: {0}")]
    BadModel(String),
    #[error("malformed model line {line}: {text}")]
    ModelSyntax { line: usize, text: String },
    #[error("solver not configured: set {0}")]
    NotConfigured(&'static str),
    #[error("solver failed: {0}")]
    Tool(String),
    #[error("expected an unsatisfiable instance, solver answered {0:?}")]
    NotUnsat(Status),
    #[error("canonical filtering needs natural labeling")]
    NeedsNatural,
    #[error(transparent)]
    Drat(#[from] drat::DratError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Status {
    Sat,
    Unsat,
    Unknown,
}

/// Limits for a single solver call.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub conflicts: Option<u32>,
    pub time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn time(limit: Duration) -> Self {
        Budget { conflicts: None, time: Some(limit) }
    }
}

/// Truth values indexed by variable (index 0 unused).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn value(&self, lit: Lit) -> bool {
        let v = self.0.get(lit.unsigned_abs() as usize).copied().unwrap_or(false);
        if lit > 0 {
            v
        } else {
            !v
        }
    }

    pub fn satisfies(&self, clause: &[Lit]) -> bool {
        clause.iter().any(|&l| self.value(l))
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub status: Status,
    pub model: Option<Assignment>,
    pub elapsed: Duration,
}

/// A SAT backend.
pub trait Backend {
    fn solve(&mut self, inst: &CnfInstance, budget: Budget) -> Result<SolveResult, SolveError>;
}

/// The linked-in CaDiCaL solver.
#[derive(Clone, Copy, Debug, Default)]
pub struct Embedded;

impl Backend for Embedded {
    fn solve(&mut self, inst: &CnfInstance, budget: Budget) -> Result<SolveResult, SolveError> {
        let mut s = Session::new(inst, budget);
        s.solve()
    }
}

/// Solves with the embedded solver.
pub fn solve(inst: &CnfInstance, budget: Budget) -> Result<SolveResult, SolveError> {
    Embedded.solve(inst, budget)
}

/// Solves a plain clause list with the embedded solver.
pub fn solve_clauses<'a>(
    num_vars: usize,
    clauses: impl IntoIterator<Item = &'a [Lit]>,
    budget: Budget,
) -> Result<SolveResult, SolveError> {
    Session::from_clauses(num_vars, clauses, budget).solve()
}

/// An incremental solver loaded with an instance.
pub struct Session {
    solver: cadical::Solver,
    num_vars: usize,
    budget: Budget,
}

impl Session {
    pub fn new(inst: &CnfInstance, budget: Budget) -> Self {
        Self::from_clauses(inst.num_vars(), inst.clauses(), budget)
    }

    pub fn from_clauses<'a>(num_vars: usize, clauses: impl IntoIterator<Item = &'a [Lit]>, budget: Budget) -> Self {
        let mut solver = cadical::Solver::new();
        solver.reserve(num_vars as i32);
        for c in clauses {
            solver.add_clause(c.iter().copied());
        }
        Session { solver, num_vars, budget }
    }

    pub fn add_clause(&mut self, clause: &[Lit]) {
        self.solver.add_clause(clause.iter().copied());
    }

    pub fn solve(&mut self) -> Result<SolveResult, SolveError> {
        let start = Instant::now();
        if let Some(c) = self.budget.conflicts {
            self.solver
                .set_limit("conflicts", c.min(i32::MAX as u32) as i32)
                .map_err(|e| SolveError::Tool(format!("{e:?}")))?;
        }
        if let Some(t) = self.budget.time {
            self.solver.set_callbacks(Some(cadical::Timeout::new(t.as_secs_f32())));
        }
        let status = match self.solver.solve() {
            Some(true) => Status::Sat,
            Some(false) => Status::Unsat,
            None => Status::Unknown,
        };
        let model = (status == Status::Sat).then(|| {
            let mut vals = vec![false; self.num_vars + 1];
            for (v, slot) in vals.iter_mut().enumerate().skip(1) {
                *slot = self.solver.value(v as i32).unwrap_or(false);
            }
            Assignment(vals)
        });
        Ok(SolveResult { status, model, elapsed: start.elapsed() })
    }
}

/// Reads the rotation system off the `X` variables of a model.
pub fn decode(inst: &CnfInstance, model: &Assignment) -> Result<RotationSystem, SolveError> {
    let n = inst.n();
    let mut rows = vec![Vec::with_capacity(n - 1); n];
    for (a, row) in rows.iter_mut().enumerate() {
        for i in 0..n - 1 {
            let hits: Vec<usize> = (0..n).filter(|&b| b != a && model.value(inst.x(a, i, b))).collect();
            if hits.len() != 1 {
                return Err(SolveError::BadModel(format!("vertex {} position {} holds {:?}", a + 1, i + 1, hits)));
            }
            row.push(hits[0]);
        }
    }
    RotationSystem::from_rows(&rows).map_err(|e: SystemError| SolveError::BadModel(e.to_string()))
}

/// Clause excluding exactly the given system (on the `X` variables).
pub fn blocking_clause(inst: &CnfInstance, rs: &RotationSystem) -> Vec<Lit> {
    let mut out = Vec::new();
    for a in 0..inst.n() {
        for (i, &b) in rs.row(a).iter().enumerate() {
            out.push(-inst.x(a, i, b));
        }
    }
    out
}

/// Outcome of [`enumerate_all`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    /// Models found by the solver.
    pub total: usize,
    /// Distinct canonical systems passed to the callback (equals `total`
    /// without canonical filtering).
    pub canonical: usize,
    pub elapsed: Duration,
    /// False if the budget ran out or the callback stopped the run.
    pub complete: bool,
}

/// How solutions are blocked between solver calls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Blocking {
    /// Exclude exactly the model found.
    Model,
    /// Exclude every natural relabeling of the model. Only sound when all
    /// constraints are invariant under relabeling.
    Orbit,
}

/// Constraint blocks that do not depend on vertex labels beyond the
/// natural-labeling block.
const INVARIANT_BLOCKS: [&str; 13] = [
    "rows",
    "normalization",
    "natural",
    "orientation",
    "pi4",
    "not-drawable",
    "not-convex",
    "not-hconvex",
    "crossings",
    "forbid-hc",
    "forbid-hc-2n3",
    "all-edges-crossed",
    "empty-triangles",
];

/// Whether every block of the instance is closed under relabeling.
pub fn is_label_invariant(inst: &CnfInstance) -> bool {
    inst.options().natural
        && inst.blocks().iter().all(|b| INVARIANT_BLOCKS.contains(&b.name.as_str()) || b.name == "empty-atmost")
}

/// Enumerates all solutions, blocking each model found. With
/// `canonical_only`, each isomorphism class is reported once through its
/// canonical form; otherwise every decoded model is reported.
///
/// The callback returns `false` to stop early.
pub fn enumerate_all<F: FnMut(&RotationSystem) -> bool>(
    inst: &CnfInstance,
    canonical_only: bool,
    budget: Budget,
    callback: F,
) -> Result<EnumerationReport, SolveError> {
    let blocking = if canonical_only && is_label_invariant(inst) { Blocking::Orbit } else { Blocking::Model };
    enumerate_with(inst, canonical_only, blocking, budget, callback)
}

pub fn enumerate_with<F: FnMut(&RotationSystem) -> bool>(
    inst: &CnfInstance,
    canonical_only: bool,
    blocking: Blocking,
    budget: Budget,
    mut callback: F,
) -> Result<EnumerationReport, SolveError> {
    if (canonical_only || blocking == Blocking::Orbit) && !inst.options().natural {
        return Err(SolveError::NeedsNatural);
    }
    let start = Instant::now();
    let mut session = Session::new(inst, budget);
    let mut seen = BTreeSet::new();
    let mut report = EnumerationReport { total: 0, canonical: 0, elapsed: Duration::ZERO, complete: false };
    loop {
        if let Some(limit) = budget.time {
            if start.elapsed() > limit {
                break;
            }
        }
        let res = session.solve()?;
        match res.status {
            Status::Unsat => {
                report.complete = true;
                break;
            }
            Status::Unknown => break,
            Status::Sat => {}
        }
        let rs = decode(inst, res.model.as_ref().unwrap())?;
        report.total += 1;
        match blocking {
            Blocking::Model => session.add_clause(&blocking_clause(inst, &rs)),
            Blocking::Orbit => {
                for member in rs.natural_relabelings() {
                    session.add_clause(&blocking_clause(inst, &member));
                }
            }
        }
        let keep_going = if canonical_only {
            let c = rs.canonical_form();
            if seen.insert(c.clone()) {
                report.canonical += 1;
                callback(&c)
            } else {
                true
            }
        } else {
            report.canonical += 1;
            callback(&rs)
        };
        if !keep_going {
            break;
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Collects all canonical solutions.
pub fn enumerate_canonical(inst: &CnfInstance) -> Result<Vec<RotationSystem>, SolveError> {
    let mut out = Vec::new();
    enumerate_all(inst, true, Budget::unlimited(), |rs| {
        out.push(rs.clone());
        true
    })?;
    out.sort();
    Ok(out)
}

/// Writes the instance in DIMACS format.
pub fn write_dimacs(inst: &CnfInstance, path: &Path) -> io::Result<()> {
    std::fs::write(path, inst.to_dimacs())
}

/// Writes the variable map sidecar.
pub fn write_variable_map(inst: &CnfInstance, path: &Path) -> io::Result<()> {
    std::fs::write(path, inst.variable_map())
}

/// Parses DIMACS clauses (comments and header skipped).
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<Lit>>), SolveError> {
    let mut vars = 0;
    let mut clauses = Vec::new();
    let mut cur = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            let nums: Vec<usize> = rest.split_whitespace().filter_map(|t| t.parse().ok()).collect();
            vars = *nums.first().ok_or(SolveError::ModelSyntax { line: i + 1, text: line.into() })?;
            continue;
        }
        for tok in line.split_whitespace() {
            let l: Lit = tok.parse().map_err(|_| SolveError::ModelSyntax { line: i + 1, text: line.into() })?;
            if l == 0 {
                clauses.push(std::mem::take(&mut cur));
            } else {
                cur.push(l);
            }
        }
    }
    Ok((vars, clauses))
}

/// Parses solver output: the `s` status line and `v` value lines.
pub fn read_model(text: &str, num_vars: usize) -> Result<(Status, Option<Assignment>), SolveError> {
    let mut status = Status::Unknown;
    let mut vals = vec![false; num_vars + 1];
    let mut saw_values = false;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(s) = line.strip_prefix("s ") {
            status = match s.trim() {
                "SATISFIABLE" => Status::Sat,
                "UNSATISFIABLE" => Status::Unsat,
                _ => Status::Unknown,
            };
        } else if let Some(v) = line.strip_prefix('v') {
            saw_values = true;
            for tok in v.split_whitespace() {
                let l: i64 = tok.parse().map_err(|_| SolveError::ModelSyntax { line: i + 1, text: line.into() })?;
                let var = l.unsigned_abs() as usize;
                if var > num_vars {
                    return Err(SolveError::ModelSyntax { line: i + 1, text: line.into() });
                }
                if l != 0 {
                    vals[var] = l > 0;
                }
            }
        }
    }
    let model = (status == Status::Sat && saw_values).then_some(Assignment(vals));
    Ok((status, model))
}

/// Checks a model against every clause of the instance.
pub fn check_model(inst: &CnfInstance, model: &Assignment) -> bool {
    inst.clauses().all(|c| model.satisfies(c))
}

/// The crossing pairs claimed by a model's `C` variables.
pub fn decoded_crossings(inst: &CnfInstance, model: &Assignment) -> crate::predicates::CrossingRelation {
    let mut rel = crate::predicates::CrossingRelation::new(inst.n());
    for v in 1..=inst.num_vars() as u32 {
        if let VarKey::C { e, f } = inst.key(v) {
            if model.value(v as Lit) {
                rel.insert(e, f);
            }
        }
    }
    rel
}

/// The triangles a model's `T` variables mark as having an empty side.
pub fn decoded_empty_triangles(inst: &CnfInstance, model: &Assignment) -> Vec<[usize; 3]> {
    (1..=inst.num_vars() as u32)
        .filter_map(|v| match inst.key(v) {
            VarKey::T { tri } if model.value(v as Lit) => Some(tri),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::{EncodeOptions, Obstructions};

    #[test]
    fn contradictory_units_are_unsat() {
        let mut inst = CnfInstance::new(3, EncodeOptions::default()).unwrap();
        inst.add_clause(&[1]);
        inst.add_clause(&[-1]);
        assert_eq!(solve(&inst, Budget::unlimited()).unwrap().status, Status::Unsat);
    }

    #[test]
    fn four_element_classes() {
        let opts = EncodeOptions { obstructions: Obstructions::None, ..EncodeOptions::default() };
        let all = enumerate_canonical(&CnfInstance::new(4, opts).unwrap()).unwrap();
        assert_eq!(all.len(), 3);
        let drawable = enumerate_canonical(&CnfInstance::new(4, EncodeOptions::default()).unwrap()).unwrap();
        assert_eq!(drawable.len(), 2);
    }

    #[test]
    fn model_lines_parse() {
        let (st, m) = read_model("c hi\ns SATISFIABLE\nv 1 -2\nv 3 0\n", 3).unwrap();
        assert_eq!(st, Status::Sat);
        let m = m.unwrap();
        assert!(m.value(1) && !m.value(2) && m.value(3) && m.value(-2));
        assert_eq!(read_model("s UNSATISFIABLE\n", 3).unwrap(), (Status::Unsat, None));
        assert!(read_model("s SATISFIABLE\nv 1 x 0\n", 3).is_err());
        assert!(read_model("s SATISFIABLE\nv 9 0\n", 3).is_err());
    }

    #[test]
    fn canonical_filter_requires_natural_labeling() {
        let inst = CnfInstance::new(4, EncodeOptions { natural: false, ..EncodeOptions::default() }).unwrap();
        assert!(matches!(enumerate_all(&inst, true, Budget::unlimited(), |_| true), Err(SolveError::NeedsNatural)));
    }
}
