//! A forward DRAT proof checker.
//!
//! Each lemma must be a reverse unit propagation (RUP) consequence of the
//! current clause database, or a resolution asymmetric tautology (RAT) on
//! its first literal. Like common external checkers, deletions of clauses
//! that currently propagate at the top level are ignored.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofStep {
    Add(Vec<i32>),
    Delete(Vec<i32>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DratError {
    #[error("proof line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("lemma {index} ({lemma:?}) is neither RUP nor RAT")]
    Rejected { index: usize, lemma: Vec<i32> },
    #[error("proof ends without deriving the empty clause")]
    NoEmptyClause,
}

/// Parses a DRAT proof in either the text or the binary format.
pub fn parse_proof(bytes: &[u8]) -> Result<Vec<ProofStep>, DratError> {
    let binary = bytes.iter().take(4096).any(|&b| {
        !(b.is_ascii_digit() || b == b' ' || b == b'-' || b == b'd' || b == b'\n' || b == b'\r' || b == b'\t' || b == b'c')
    });
    if binary {
        parse_binary(bytes)
    } else {
        parse_text(std::str::from_utf8(bytes).map_err(|e| DratError::Parse { line: 0, msg: e.to_string() })?)
    }
}

fn parse_text(text: &str) -> Result<Vec<ProofStep>, DratError> {
    let mut steps = Vec::new();
    let mut cur = Vec::new();
    let mut delete = false;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        for tok in line.split_whitespace() {
            if tok == "d" {
                delete = true;
                continue;
            }
            let lit: i32 = tok.parse().map_err(|_| DratError::Parse { line: i + 1, msg: format!("bad token {tok:?}") })?;
            if lit == 0 {
                let c = std::mem::take(&mut cur);
                steps.push(if delete { ProofStep::Delete(c) } else { ProofStep::Add(c) });
                delete = false;
            } else {
                cur.push(lit);
            }
        }
    }
    if !cur.is_empty() {
        return Err(DratError::Parse { line: 0, msg: "unterminated clause".into() });
    }
    Ok(steps)
}

fn parse_binary(bytes: &[u8]) -> Result<Vec<ProofStep>, DratError> {
    let mut steps = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let delete = match bytes[i] {
            b'a' => false,
            b'd' => true,
            other => return Err(DratError::Parse { line: i, msg: format!("bad binary marker {other:#x}") }),
        };
        i += 1;
        let mut clause = Vec::new();
        loop {
            let mut val: u64 = 0;
            let mut shift = 0;
            loop {
                let b = *bytes.get(i).ok_or(DratError::Parse { line: i, msg: "truncated".into() })?;
                i += 1;
                val |= ((b & 0x7f) as u64) << shift;
                shift += 7;
                if b & 0x80 == 0 {
                    break;
                }
            }
            if val == 0 {
                break;
            }
            let var = (val >> 1) as i32;
            clause.push(if val & 1 == 1 { -var } else { var });
        }
        steps.push(if delete { ProofStep::Delete(clause) } else { ProofStep::Add(clause) });
    }
    Ok(steps)
}

struct Clause {
    lits: Vec<i32>,
    active: bool,
}

struct Checker {
    clauses: Vec<Clause>,
    by_key: HashMap<Vec<i32>, Vec<usize>>,
    watches: Vec<Vec<usize>>,
    /// 0 unassigned, 1 true, -1 false, indexed by variable
    value: Vec<i8>,
    reason: Vec<Option<usize>>,
    trail: Vec<i32>,
    head: usize,
    inconsistent: bool,
}

fn widx(lit: i32) -> usize {
    2 * lit.unsigned_abs() as usize + (lit < 0) as usize
}

impl Checker {
    fn new() -> Self {
        Checker {
            clauses: Vec::new(),
            by_key: HashMap::new(),
            watches: Vec::new(),
            value: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            head: 0,
            inconsistent: false,
        }
    }

    fn grow(&mut self, lit: i32) {
        let v = lit.unsigned_abs() as usize;
        if v >= self.value.len() {
            self.value.resize(v + 1, 0);
            self.reason.resize(v + 1, None);
            self.watches.resize(2 * v + 2, Vec::new());
        }
    }

    fn val(&self, lit: i32) -> i8 {
        let v = self.value[lit.unsigned_abs() as usize];
        if lit > 0 {
            v
        } else {
            -v
        }
    }

    fn assign(&mut self, lit: i32, reason: Option<usize>) {
        let v = lit.unsigned_abs() as usize;
        self.value[v] = if lit > 0 { 1 } else { -1 };
        self.reason[v] = reason;
        self.trail.push(lit);
    }

    /// Unit propagation; returns true on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let lit = self.trail[self.head];
            self.head += 1;
            let false_lit = -lit;
            let mut ws = std::mem::take(&mut self.watches[widx(false_lit)]);
            let mut i = 0;
            let mut conflict = false;
            while i < ws.len() {
                let cid = ws[i];
                if !self.clauses[cid].active {
                    ws.swap_remove(i);
                    continue;
                }
                let lits = &mut self.clauses[cid].lits;
                if lits[0] == false_lit {
                    lits.swap(0, 1);
                }
                let other = lits[0];
                let other_val = {
                    let v = self.value[other.unsigned_abs() as usize];
                    if other > 0 {
                        v
                    } else {
                        -v
                    }
                };
                if other_val == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..lits.len() {
                    let l = lits[k];
                    let v = self.value[l.unsigned_abs() as usize];
                    let lv = if l > 0 { v } else { -v };
                    if lv != -1 {
                        lits.swap(1, k);
                        let nl = lits[1];
                        self.watches[widx(nl)].push(cid);
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                if other_val == -1 {
                    conflict = true;
                    break;
                }
                self.assign(other, Some(cid));
                i += 1;
            }
            let rest = std::mem::take(&mut self.watches[widx(false_lit)]);
            ws.extend(rest);
            self.watches[widx(false_lit)] = ws;
            if conflict {
                return true;
            }
        }
        false
    }

    fn backtrack(&mut self, len: usize) {
        while self.trail.len() > len {
            let l = self.trail.pop().unwrap();
            let v = l.unsigned_abs() as usize;
            self.value[v] = 0;
            self.reason[v] = None;
        }
        self.head = self.head.min(len);
    }

    fn add(&mut self, mut lits: Vec<i32>) {
        lits.sort_unstable_by_key(|l| (l.unsigned_abs(), *l > 0));
        lits.dedup();
        if lits.windows(2).any(|w| w[0] == -w[1]) {
            return;
        }
        for &l in &lits {
            self.grow(l);
        }
        let key = lits.clone();
        // non-false literals first so they get watched
        lits.sort_by_key(|&l| self.val(l) == -1);
        let cid = self.clauses.len();
        self.by_key.entry(key).or_default().push(cid);
        self.clauses.push(Clause { lits: lits.clone(), active: true });
        if self.inconsistent {
            return;
        }
        if lits.is_empty() {
            self.inconsistent = true;
            return;
        }
        if lits.len() >= 2 {
            self.watches[widx(lits[0])].push(cid);
            self.watches[widx(lits[1])].push(cid);
        }
        let first = self.val(lits[0]);
        let second = if lits.len() >= 2 { self.val(lits[1]) } else { -1 };
        if first == -1 {
            self.inconsistent = true;
        } else if first == 0 && second == -1 {
            self.assign(lits[0], Some(cid));
            if self.propagate() {
                self.inconsistent = true;
            }
        }
    }

    fn delete(&mut self, mut lits: Vec<i32>) {
        lits.sort_unstable_by_key(|l| (l.unsigned_abs(), *l > 0));
        lits.dedup();
        let Some(ids) = self.by_key.get_mut(&lits) else {
            return;
        };
        let Some(pos) = ids.iter().position(|&c| self.clauses[c].active) else {
            return;
        };
        let cid = ids[pos];
        let is_reason = self.clauses[cid].lits.iter().any(|&l| {
            let v = l.unsigned_abs() as usize;
            self.reason.get(v).copied().flatten() == Some(cid)
        });
        if is_reason || self.clauses[cid].lits.len() <= 1 {
            return;
        }
        ids.swap_remove(pos);
        self.clauses[cid].active = false;
    }

    /// Whether assigning the negation of `lits` propagates to a conflict.
    fn rup(&mut self, lits: &[i32]) -> bool {
        if self.inconsistent {
            return true;
        }
        let base = self.trail.len();
        let mut conflict = false;
        for &l in lits {
            self.grow(l);
            match self.val(l) {
                1 => {
                    conflict = true;
                    break;
                }
                0 => self.assign(-l, None),
                _ => {}
            }
        }
        if !conflict {
            conflict = self.propagate();
        }
        self.backtrack(base);
        conflict
    }

    fn rat(&mut self, lits: &[i32]) -> bool {
        let Some(&pivot) = lits.first() else {
            return false;
        };
        let candidates: Vec<usize> = (0..self.clauses.len())
            .filter(|&c| self.clauses[c].active && self.clauses[c].lits.contains(&-pivot))
            .collect();
        for c in candidates {
            let mut resolvent = lits.to_vec();
            resolvent.extend(self.clauses[c].lits.iter().copied().filter(|&l| l != -pivot));
            if resolvent.iter().any(|&l| resolvent.contains(&-l)) {
                continue;
            }
            if !self.rup(&resolvent) {
                return false;
            }
        }
        true
    }
}

/// Summary of a successful check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DratReport {
    pub lemmas: usize,
    pub deletions: usize,
    pub rat_lemmas: usize,
}

/// Checks that `proof` refutes the formula.
pub fn check<'a, I: IntoIterator<Item = &'a [i32]>>(formula: I, proof: &[ProofStep]) -> Result<DratReport, DratError> {
    let mut ch = Checker::new();
    for c in formula {
        ch.add(c.to_vec());
    }
    let mut report = DratReport { lemmas: 0, deletions: 0, rat_lemmas: 0 };
    if ch.inconsistent {
        return Ok(report);
    }
    for (index, step) in proof.iter().enumerate() {
        match step {
            ProofStep::Add(lemma) => {
                report.lemmas += 1;
                if !ch.rup(lemma) {
                    if ch.rat(lemma) {
                        report.rat_lemmas += 1;
                    } else {
                        return Err(DratError::Rejected { index, lemma: lemma.clone() });
                    }
                }
                if lemma.is_empty() {
                    return Ok(report);
                }
                ch.add(lemma.clone());
                if ch.inconsistent {
                    return Ok(report);
                }
            }
            ProofStep::Delete(c) => {
                report.deletions += 1;
                ch.delete(c.clone());
            }
        }
    }
    if ch.inconsistent {
        Ok(report)
    } else {
        Err(DratError::NoEmptyClause)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_four() -> Vec<Vec<i32>> {
        vec![vec![1, 2], vec![-1, 2], vec![1, -2], vec![-1, -2]]
    }

    #[test]
    fn accepts_a_resolution_proof() {
        let f = all_four();
        let proof = parse_proof(b"2 0\n0\n").unwrap();
        let r = check(f.iter().map(|c| c.as_slice()), &proof).unwrap();
        assert_eq!(r.lemmas, 1);
    }

    #[test]
    fn rejects_a_non_consequence() {
        let f = vec![vec![1, 2], vec![-1, 2]];
        let proof = parse_proof(b"-2 0\n0\n").unwrap();
        assert!(matches!(check(f.iter().map(|c| c.as_slice()), &proof), Err(DratError::Rejected { index: 0, .. })));
    }

    #[test]
    fn accepts_rat_lemmas() {
        // x3 is fresh: (3) is RAT on 3 but propagation alone finds nothing
        let f = all_four();
        let proof = vec![ProofStep::Add(vec![3]), ProofStep::Add(vec![2]), ProofStep::Add(vec![])];
        let r = check(f.iter().map(|c| c.as_slice()), &proof).unwrap();
        assert_eq!(r.rat_lemmas, 1);
    }

    #[test]
    fn missing_empty_clause_is_an_error() {
        let f = all_four();
        let proof = vec![ProofStep::Delete(vec![1, 2])];
        assert_eq!(check(f.iter().map(|c| c.as_slice()), &proof), Err(DratError::NoEmptyClause));
    }

    #[test]
    fn binary_and_text_formats_agree() {
        // a 2 0 / d 1 2 0 in binary: lit 2 -> 4, lit 1 -> 2
        let bin = [b'a', 4, 0, b'd', 2, 4, 0];
        let text = b"2 0\nd 1 2 0\n";
        assert_eq!(parse_proof(&bin).unwrap(), parse_proof(text).unwrap());
    }
}
