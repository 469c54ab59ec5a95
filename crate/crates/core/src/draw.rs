//! Drawability through planarizations.
//!
//! The crossings of a pre-rotation system without the 4-element obstruction
//! are fixed by its 4-element sub-configurations; only their order along
//! each edge is unknown. The encoding here chooses those orders and asks
//! the resulting planarization to be planar, using Schnyder's
//! characterization: a graph is planar iff there are three total orders on
//! its vertices such that for every edge `{u,v}` and every other vertex `w`,
//! both `u` and `v` precede `w` in one of the orders.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::encode::Lit;
use crate::predicates::{crossing_relation, PredicateError};
use crate::solve::{Assignment, Budget, SolveError, Status};
use crate::system::{Edge, RotationSystem};

#[derive(Debug, Error)]
pub enum DrawError {
    #[error(transparent)]
    Predicate(#[from] PredicateError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("inconsistent model: {0}")]
    Inconsistent(String),
}

/// A plain CNF formula.
#[derive(Clone, Debug, Default)]
pub struct Formula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Lit>>,
}

impl Formula {
    pub fn new_var(&mut self) -> Lit {
        self.num_vars += 1;
        self.num_vars as Lit
    }

    pub fn add(&mut self, clause: &[Lit]) {
        self.clauses.push(clause.to_vec());
    }

    pub fn solve(&self, budget: Budget) -> Result<(Status, Option<Assignment>), SolveError> {
        let res = crate::solve::solve_clauses(self.num_vars, self.clauses.iter().map(|c| c.as_slice()), budget)?;
        Ok((res.status, res.model))
    }
}

/// The crossings of a system and the crossings on each edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingSegments {
    pub n: usize,
    /// Crossing `i` is the crossing of the two edges `crossings[i]`.
    pub crossings: Vec<(Edge, Edge)>,
    /// The set `X_e` of crossings (indices into `crossings`) on each edge.
    pub per_edge: BTreeMap<Edge, Vec<usize>>,
}

pub fn crossing_segments(rs: &RotationSystem) -> Result<CrossingSegments, PredicateError> {
    let rel = crossing_relation(rs)?;
    let crossings: Vec<(Edge, Edge)> = rel.pairs().collect();
    let mut per_edge: BTreeMap<Edge, Vec<usize>> =
        crate::predicates::all_edges(rs.n()).into_iter().map(|e| (e, Vec::new())).collect();
    for (i, &(e, f)) in crossings.iter().enumerate() {
        per_edge.get_mut(&e).unwrap().push(i);
        per_edge.get_mut(&f).unwrap().push(i);
    }
    Ok(CrossingSegments { n: rs.n(), crossings, per_edge })
}

/// Three total orders on `0..num_vertices` as order variables.
struct Orders {
    base: Vec<Lit>,
    n: usize,
}

impl Orders {
    fn new(f: &mut Formula, n: usize) -> Self {
        let base: Vec<Lit> = (0..3).map(|_| f.num_vars as Lit + 1).collect::<Vec<_>>();
        let mut base = base;
        for (i, b) in base.iter_mut().enumerate() {
            *b = f.num_vars as Lit + 1;
            for _ in 0..n * n {
                f.new_var();
            }
            let _ = i;
        }
        let o = Orders { base, n };
        for i in 0..3 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if a != b && b != c && a != c {
                            f.add(&[-o.lt(i, a, b), -o.lt(i, b, c), o.lt(i, a, c)]);
                        }
                    }
                }
            }
        }
        o
    }

    /// Literal of `a` before `b` in order `i`.
    fn lt(&self, i: usize, a: usize, b: usize) -> Lit {
        debug_assert_ne!(a, b);
        let (x, y, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
        s * (self.base[i] + (x * self.n + y) as Lit)
    }

    /// Adds `present -> (u, v) below w in some order` for every other `w`.
    fn schnyder_edge(&self, f: &mut Formula, present: Option<Lit>, u: usize, v: usize) {
        for w in (0..self.n).filter(|&w| w != u && w != v) {
            let mut clause: Vec<Lit> = present.map(|p| vec![-p]).unwrap_or_default();
            for i in 0..3 {
                let z = f.new_var();
                f.add(&[-z, self.lt(i, u, w)]);
                f.add(&[-z, self.lt(i, v, w)]);
                clause.push(z);
            }
            f.add(&clause);
        }
    }
}

/// Candidate edge of the planarization together with the literal telling
/// whether it is present.
#[derive(Clone, Copy, Debug)]
struct Candidate {
    edge: Edge,
    p: usize,
    q: usize,
    present: Option<Lit>,
}

/// The drawability formula of a pre-rotation system.
pub struct DrawabilityInstance {
    pub formula: Formula,
    pub segments: CrossingSegments,
    /// `order[e][(x, y)]` with `x < y`: crossing `x` comes before `y` on `e`
    /// (read from the smaller endpoint).
    order: BTreeMap<Edge, BTreeMap<(usize, usize), Lit>>,
    candidates: Vec<Candidate>,
}

impl DrawabilityInstance {
    fn before(&self, e: Edge, x: usize, y: usize) -> Lit {
        let m = &self.order[&e];
        if x < y {
            m[&(x, y)]
        } else {
            -m[&(y, x)]
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.segments.n + self.segments.crossings.len()
    }
}

/// Builds the formula for choosing crossing orders with a planar
/// planarization.
pub fn encode_drawability(rs: &RotationSystem) -> Result<DrawabilityInstance, PredicateError> {
    let segments = crossing_segments(rs)?;
    let n = rs.n();
    let total = n + segments.crossings.len();
    let mut f = Formula::default();
    let mut order = BTreeMap::new();
    for (&e, xs) in &segments.per_edge {
        let mut m = BTreeMap::new();
        for (i, &x) in xs.iter().enumerate() {
            for &y in &xs[i + 1..] {
                m.insert((x.min(y), x.max(y)), f.new_var());
            }
        }
        order.insert(e, m);
    }
    let mut inst = DrawabilityInstance { formula: f, segments, order, candidates: Vec::new() };
    let mut f = std::mem::take(&mut inst.formula);
    let vertex = |x: usize| n + x;
    let edges: Vec<(Edge, Vec<usize>)> = inst.segments.per_edge.iter().map(|(e, xs)| (*e, xs.clone())).collect();
    for (e, xs) in &edges {
        let e = *e;
        // transitivity of the order along e
        for &a in xs {
            for &b in xs {
                for &c in xs {
                    if a != b && b != c && a != c {
                        f.add(&[-inst.before(e, a, b), -inst.before(e, b, c), inst.before(e, a, c)]);
                    }
                }
            }
        }
        if xs.is_empty() {
            inst.candidates.push(Candidate { edge: e, p: e.u(), q: e.v(), present: None });
            continue;
        }
        for &x in xs {
            let others: Vec<usize> = xs.iter().copied().filter(|&z| z != x).collect();
            // x first: adjacent to u
            let first = if others.is_empty() {
                None
            } else {
                let p = f.new_var();
                let mut back = vec![p];
                for &z in &others {
                    f.add(&[-p, inst.before(e, x, z)]);
                    back.push(-inst.before(e, x, z));
                }
                f.add(&back);
                Some(p)
            };
            inst.candidates.push(Candidate { edge: e, p: e.u(), q: vertex(x), present: first });
            let last = if others.is_empty() {
                None
            } else {
                let p = f.new_var();
                let mut back = vec![p];
                for &z in &others {
                    f.add(&[-p, inst.before(e, z, x)]);
                    back.push(-inst.before(e, z, x));
                }
                f.add(&back);
                Some(p)
            };
            inst.candidates.push(Candidate { edge: e, p: vertex(x), q: e.v(), present: last });
        }
        for (i, &x) in xs.iter().enumerate() {
            for &y in &xs[i + 1..] {
                let between: Vec<usize> = xs.iter().copied().filter(|&z| z != x && z != y).collect();
                if between.is_empty() {
                    inst.candidates.push(Candidate { edge: e, p: vertex(x), q: vertex(y), present: None });
                    continue;
                }
                let p = f.new_var();
                let mut back = vec![p];
                for &z in &between {
                    let (bxz, bzy) = (inst.before(e, x, z), inst.before(e, z, y));
                    // present: z is not between x and y
                    f.add(&[-p, -bxz, -bzy]);
                    f.add(&[-p, bxz, bzy]);
                    let m = f.new_var();
                    f.add(&[-m, -bxz, bzy]);
                    f.add(&[-m, bxz, -bzy]);
                    back.push(m);
                }
                f.add(&back);
                inst.candidates.push(Candidate { edge: e, p: vertex(x), q: vertex(y), present: Some(p) });
            }
        }
    }
    let orders = Orders::new(&mut f, total);
    for c in &inst.candidates {
        orders.schnyder_edge(&mut f, c.present, c.p, c.q);
    }
    inst.formula = f;
    Ok(inst)
}

/// A planarization: original vertices `0..n`, crossing vertex `n + i` for
/// crossing `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Planarization {
    pub n: usize,
    pub crossings: Vec<(Edge, Edge)>,
    /// The vertex sequence along each edge, endpoints included.
    pub sequences: Vec<(Edge, Vec<usize>)>,
    pub adjacency: BTreeSet<(usize, usize)>,
}

impl Planarization {
    pub fn num_vertices(&self) -> usize {
        self.n + self.crossings.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency.iter().copied().collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// JSON export with 1-based original labels and crossing vertices named
    /// `x1, x2, ...`.
    pub fn to_json(&self) -> serde_json::Value {
        let name = |v: usize| if v < self.n { (v + 1).to_string() } else { format!("x{}", v - self.n + 1) };
        serde_json::json!({
            "vertices": (0..self.n).map(|v| name(v)).collect::<Vec<_>>(),
            "crossings": self.crossings.iter().enumerate().map(|(i, (e, f))| serde_json::json!({
                "name": name(self.n + i),
                "edges": [[e.u() + 1, e.v() + 1], [f.u() + 1, f.v() + 1]],
            })).collect::<Vec<_>>(),
            "sequences": self.sequences.iter().map(|(e, s)| serde_json::json!({
                "edge": [e.u() + 1, e.v() + 1],
                "sequence": s.iter().map(|&v| name(v)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "adjacency": self.adjacency.iter().map(|&(a, b)| [name(a), name(b)]).collect::<Vec<_>>(),
        })
    }
}

/// Reads crossing orders off a model and builds the planarization.
pub fn extract_planarization(inst: &DrawabilityInstance, model: &Assignment) -> Result<Planarization, DrawError> {
    let n = inst.segments.n;
    let mut sequences = Vec::new();
    let mut adjacency = BTreeSet::new();
    for (&e, xs) in &inst.segments.per_edge {
        let mut seq = xs.clone();
        // position = number of crossings before it
        let mut keyed: Vec<(usize, usize)> = seq
            .iter()
            .map(|&x| (xs.iter().filter(|&&z| z != x && model.value(inst.before(e, z, x))).count(), x))
            .collect();
        keyed.sort_unstable();
        if keyed.iter().enumerate().any(|(i, &(k, _))| k != i) {
            return Err(DrawError::Inconsistent(format!("crossings along {e} are not totally ordered")));
        }
        seq = keyed.into_iter().map(|(_, x)| n + x).collect();
        let mut full = vec![e.u()];
        full.extend(seq);
        full.push(e.v());
        for w in full.windows(2) {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            if !adjacency.insert((a, b)) {
                return Err(DrawError::Inconsistent(format!("edge {a}-{b} appears twice")));
            }
        }
        sequences.push((e, full));
    }
    for c in &inst.candidates {
        let present = c.present.is_none_or(|l| model.value(l));
        let (a, b) = (c.p.min(c.q), c.p.max(c.q));
        if present != adjacency.contains(&(a, b)) {
            return Err(DrawError::Inconsistent(format!("presence of {a}-{b} disagrees with the order along {}", c.edge)));
        }
    }
    let p = Planarization { n, crossings: inst.segments.crossings.clone(), sequences, adjacency };
    for x in 0..p.crossings.len() {
        if p.degree(n + x) != 4 {
            return Err(DrawError::Inconsistent(format!("crossing vertex {} has degree {}", x, p.degree(n + x))));
        }
    }
    Ok(p)
}

/// Solves the drawability formula; `None` if the system is not drawable.
pub fn drawability_witness(rs: &RotationSystem) -> Result<Option<Planarization>, DrawError> {
    if crate::predicates::contains_pi4(rs) {
        return Ok(None);
    }
    let inst = encode_drawability(rs)?;
    let (status, model) = inst.formula.solve(Budget::unlimited())?;
    match status {
        Status::Sat => Ok(Some(extract_planarization(&inst, model.as_ref().unwrap())?)),
        Status::Unsat => Ok(None),
        Status::Unknown => Err(DrawError::Solve(SolveError::Tool("solver gave up".into()))),
    }
}

/// Drawability decided by the planarization encoding alone.
pub fn is_drawable_sat(rs: &RotationSystem) -> Result<bool, SolveError> {
    match drawability_witness(rs) {
        Ok(w) => Ok(w.is_some()),
        Err(DrawError::Solve(e)) => Err(e),
        Err(e) => Err(SolveError::Tool(e.to_string())),
    }
}

/// Planarity of a fixed simple graph through the three-orders encoding.
pub fn planarity_fixed_graph(num_vertices: usize, edges: &[(usize, usize)]) -> Result<bool, SolveError> {
    let mut f = Formula::default();
    let orders = Orders::new(&mut f, num_vertices);
    let set: BTreeSet<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    for &(a, b) in &set {
        assert!(a != b && b < num_vertices, "not a simple graph on {num_vertices} vertices");
        orders.schnyder_edge(&mut f, None, a, b);
    }
    let (status, _) = f.solve(Budget::unlimited())?;
    match status {
        Status::Sat => Ok(true),
        Status::Unsat => Ok(false),
        Status::Unknown => Err(SolveError::Tool("solver gave up".into())),
    }
}

/// Edge list of `K_n`.
pub fn complete_graph(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Edge list of `K_{a,b}` (parts `0..a` and `a..a+b`).
pub fn complete_bipartite(a: usize, b: usize) -> Vec<(usize, usize)> {
    (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rotation_from_points, Point};

    #[test]
    fn small_complete_graphs() {
        assert!(planarity_fixed_graph(4, &complete_graph(4)).unwrap());
        assert!(!planarity_fixed_graph(5, &complete_graph(5)).unwrap());
        assert!(!planarity_fixed_graph(6, &complete_bipartite(3, 3)).unwrap());
        let mut k5_minus = complete_graph(5);
        k5_minus.pop();
        assert!(planarity_fixed_graph(5, &k5_minus).unwrap());
    }

    #[test]
    fn square_planarization() {
        let sq = rotation_from_points(&[Point::new(0, 0), Point::new(4, 0), Point::new(4, 4), Point::new(0, 4)]).unwrap();
        let seg = crossing_segments(&sq).unwrap();
        assert_eq!(seg.per_edge[&Edge::labeled(1, 3)], vec![0]);
        assert_eq!(seg.per_edge[&Edge::labeled(2, 4)], vec![0]);
        let p = drawability_witness(&sq).unwrap().unwrap();
        assert_eq!(p.num_vertices(), 5);
        assert_eq!(p.num_edges(), 8);
        assert!(planarity_fixed_graph(p.num_vertices(), &p.edges()).unwrap());
    }
}
