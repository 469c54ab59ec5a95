//! Solving through external executables on DIMACS files, and DRAT
//! certificates of unsatisfiability.
//!
//! `ROTSYS_SOLVER` names a solver called as `solver instance.cnf [proof]`
//! that prints the usual `s`/`v` lines (CaDiCaL and kissat behave this way).
//! `ROTSYS_CHECKER` names a checker called as `checker instance.cnf proof`
//! (drat-trim, for example). Without a checker, proofs are checked by
//! [`super::drat`].

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use super::{drat, read_model, Backend, Budget, SolveError, SolveResult, Status};
use crate::encode::CnfInstance;

pub const SOLVER_ENV: &str = "ROTSYS_SOLVER";
pub const CHECKER_ENV: &str = "ROTSYS_CHECKER";

#[derive(Clone, Debug)]
pub struct ExternalSolver {
    pub program: PathBuf,
}

impl ExternalSolver {
    pub fn from_env() -> Result<Self, SolveError> {
        match std::env::var_os(SOLVER_ENV) {
            Some(p) if !p.is_empty() => Ok(ExternalSolver { program: p.into() }),
            _ => Err(SolveError::NotConfigured(SOLVER_ENV)),
        }
    }

    /// Budgets are not passed on: command-line limits differ between
    /// solvers.
    fn run(&self, cnf: &Path, proof: Option<&Path>) -> Result<String, SolveError> {
        let mut cmd = Command::new(&self.program);
        cmd.arg(cnf);
        if let Some(p) = proof {
            cmd.arg(p);
        }
        let out = cmd.output().map_err(|e| SolveError::Tool(format!("{}: {e}", self.program.display())))?;
        // SAT competition convention: 10 = sat, 20 = unsat, 0 = unknown
        match out.status.code() {
            Some(0 | 10 | 20) => Ok(String::from_utf8_lossy(&out.stdout).into_owned()),
            other => Err(SolveError::Tool(format!(
                "{} exited with {:?}: {}",
                self.program.display(),
                other,
                String::from_utf8_lossy(&out.stderr)
            ))),
        }
    }
}

impl Backend for ExternalSolver {
    fn solve(&mut self, inst: &CnfInstance, _budget: Budget) -> Result<SolveResult, SolveError> {
        let start = Instant::now();
        let dir = tempfile::tempdir()?;
        let cnf = dir.path().join("instance.cnf");
        super::write_dimacs(inst, &cnf)?;
        let text = self.run(&cnf, None)?;
        let (status, model) = read_model(&text, inst.num_vars())?;
        if status == Status::Sat && model.is_none() {
            return Err(SolveError::Tool("solver reported SAT without a model".into()));
        }
        Ok(SolveResult { status, model, elapsed: start.elapsed() })
    }
}

/// Outcome of a certified run.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CertificateReport {
    pub cnf: PathBuf,
    pub proof: PathBuf,
    /// `"builtin"` or the path of the external checker.
    pub checker: String,
    pub verified: bool,
    pub detail: String,
}

/// Writes `instance.cnf` and `instance.drat` into `dir`, refutes the
/// instance with the external solver and checks the proof.
pub fn unsat_certificate(inst: &CnfInstance, dir: &Path) -> Result<CertificateReport, SolveError> {
    let solver = ExternalSolver::from_env()?;
    std::fs::create_dir_all(dir)?;
    let cnf = dir.join("instance.cnf");
    let proof = dir.join("instance.drat");
    super::write_dimacs(inst, &cnf)?;
    super::write_variable_map(inst, &dir.join("instance.vars"))?;
    let text = solver.run(&cnf, Some(&proof))?;
    let (status, _) = read_model(&text, inst.num_vars())?;
    if status != Status::Unsat {
        return Err(SolveError::NotUnsat(status));
    }
    match std::env::var_os(CHECKER_ENV).filter(|p| !p.is_empty()) {
        Some(checker) => {
            let out = Command::new(&checker)
                .arg(&cnf)
                .arg(&proof)
                .output()
                .map_err(|e| SolveError::Tool(format!("{}: {e}", PathBuf::from(&checker).display())))?;
            let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
            let verified = stdout.lines().any(|l| l.trim() == "s VERIFIED");
            Ok(CertificateReport {
                cnf,
                proof,
                checker: PathBuf::from(checker).display().to_string(),
                verified,
                detail: stdout.lines().filter(|l| l.starts_with("s ")).collect::<Vec<_>>().join("; "),
            })
        }
        None => {
            let steps = drat::parse_proof(&std::fs::read(&proof)?)?;
            let (verified, detail) = match drat::check(inst.clauses(), &steps) {
                Ok(r) => (true, format!("{} lemmas ({} RAT), {} deletions", r.lemmas, r.rat_lemmas, r.deletions)),
                Err(e) => (false, e.to_string()),
            };
            Ok(CertificateReport { cnf, proof, checker: "builtin".into(), verified, detail })
        }
    }
}
