//! Exhaustive search for plane Hamiltonian cycles and paths.
//!
//! Independent of the SAT encodings and of the constructive algorithms: a
//! depth-first search over vertex sequences that rejects an edge as soon as
//! it crosses an edge already on the sequence.

use thiserror::Error;

use crate::predicates::{contains_pi4, crosses};
use crate::system::{Edge, RotationSystem};

pub const DEFAULT_BOUND: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Cycle,
    Path,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("n = {n} exceeds the search bound {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("system contains the 4-element obstruction")]
    NotDrawable,
    #[error("edge {0} is not an edge of the system")]
    BadEdge(Edge),
}

struct Search<'a> {
    n: usize,
    mode: Mode,
    required: Option<Edge>,
    cross: &'a [Vec<bool>],
    seq: Vec<usize>,
    used: Vec<bool>,
    edges: Vec<usize>,
}

fn edge_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    a * n + b
}

impl Search<'_> {
    fn compatible(&self, e: usize) -> bool {
        self.edges.iter().all(|&f| !self.cross[e][f])
    }

    fn has_required(&self) -> bool {
        match self.required {
            None => true,
            Some(r) => self.seq.windows(2).any(|w| Edge::new(w[0], w[1]) == r)
                || (self.mode == Mode::Cycle && Edge::new(self.seq[0], *self.seq.last().unwrap()) == r),
        }
    }

    fn run(&mut self) -> bool {
        let last = *self.seq.last().unwrap();
        if self.seq.len() == self.n {
            if self.mode == Mode::Cycle {
                let e = edge_index(self.n, last, self.seq[0]);
                if !self.compatible(e) {
                    return false;
                }
            }
            return self.has_required();
        }
        for next in 0..self.n {
            if self.used[next] {
                continue;
            }
            let e = edge_index(self.n, last, next);
            if !self.compatible(e) {
                continue;
            }
            self.seq.push(next);
            self.used[next] = true;
            self.edges.push(e);
            if self.run() {
                return true;
            }
            self.edges.pop();
            self.used[next] = false;
            self.seq.pop();
        }
        false
    }
}

/// A plane Hamiltonian cycle or path (containing `required` if given), or
/// `None` if there is none.
///
/// Cycles are returned starting at the smallest vertex (or at the required
/// edge); paths as found.
pub fn brute_force_plane_hamiltonian(
    rs: &RotationSystem,
    mode: Mode,
    required: Option<Edge>,
) -> Result<Option<Vec<usize>>, OracleError> {
    brute_force_plane_hamiltonian_bounded(rs, mode, required, DEFAULT_BOUND)
}

pub fn brute_force_plane_hamiltonian_bounded(
    rs: &RotationSystem,
    mode: Mode,
    required: Option<Edge>,
    bound: usize,
) -> Result<Option<Vec<usize>>, OracleError> {
    let n = rs.n();
    if n > bound {
        return Err(OracleError::TooLarge { n, bound });
    }
    if contains_pi4(rs) {
        return Err(OracleError::NotDrawable);
    }
    if let Some(r) = required {
        if r.v() >= n {
            return Err(OracleError::BadEdge(r));
        }
    }
    let mut cross = vec![vec![false; n * n]; n * n];
    for a in 0..n {
        for b in a + 1..n {
            for c in 0..n {
                for d in c + 1..n {
                    let (e, f) = (Edge::new(a, b), Edge::new(c, d));
                    if e.is_independent(f) && crosses(rs, e, f) {
                        cross[a * n + b][c * n + d] = true;
                    }
                }
            }
        }
    }
    let starts: Vec<Vec<usize>> = match (mode, required) {
        (Mode::Cycle, None) => vec![vec![0]],
        (Mode::Cycle, Some(r)) => vec![vec![r.u(), r.v()]],
        (Mode::Path, _) => (0..n).map(|s| vec![s]).collect(),
    };
    for start in starts {
        let mut s = Search {
            n,
            mode,
            required,
            cross: &cross,
            seq: start.clone(),
            used: vec![false; n],
            edges: start.windows(2).map(|w| edge_index(n, w[0], w[1])).collect(),
        };
        for &v in &start {
            s.used[v] = true;
        }
        if s.run() {
            return Ok(Some(s.seq));
        }
    }
    Ok(None)
}

/// Edges of a vertex sequence, closing it when `closed`.
pub fn sequence_edges(seq: &[usize], closed: bool) -> Vec<Edge> {
    let mut out: Vec<Edge> = seq.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
    if closed && seq.len() > 2 {
        out.push(Edge::new(seq[seq.len() - 1], seq[0]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CATALOG;
    use crate::predicates::is_plane_subset;

    #[test]
    fn hull_cycle_of_convex_pentagon() {
        let c5 = &CATALOG.convex_c5;
        let cyc = brute_force_plane_hamiltonian(c5, Mode::Cycle, None).unwrap().unwrap();
        assert_eq!(cyc, vec![0, 1, 2, 3, 4]);
        assert!(is_plane_subset(c5, &sequence_edges(&cyc, true)));
    }

    #[test]
    fn known_negative_instances() {
        let c5 = &CATALOG.convex_c5;
        assert_eq!(brute_force_plane_hamiltonian(c5, Mode::Cycle, Some(Edge::labeled(1, 3))), Ok(None));
        assert!(brute_force_plane_hamiltonian(c5, Mode::Path, Some(Edge::labeled(1, 3))).unwrap().is_some());
        let t5 = &CATALOG.twisted_t5;
        assert_eq!(brute_force_plane_hamiltonian(t5, Mode::Path, Some(Edge::labeled(1, 5))), Ok(None));
    }

    #[test]
    fn bound_and_obstruction_errors() {
        let pts = crate::geometry::convex_position(11);
        let big = crate::geometry::rotation_from_points(&pts).unwrap();
        assert_eq!(
            brute_force_plane_hamiltonian(&big, Mode::Cycle, None),
            Err(OracleError::TooLarge { n: 11, bound: 10 })
        );
        assert_eq!(
            brute_force_plane_hamiltonian(&CATALOG.pi4_obstruction, Mode::Cycle, None),
            Err(OracleError::NotDrawable)
        );
    }
}
