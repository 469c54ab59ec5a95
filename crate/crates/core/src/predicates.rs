//! Combinatorial predicates on pre-rotation systems: crossings, drawability,
//! sides of triangles, convexity and empty triangles.

use std::collections::BTreeSet;
use std::sync::LazyLock;

use thiserror::Error;

use crate::catalog::CATALOG;
use crate::encode::Lit;
use crate::quad::{signature, QuadKind, PAIRINGS, QUADS};
use crate::system::{for_each_subset, Edge, RotationSystem, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PredicateError {
    #[error("vertices {0:?} induce the non-drawable 4-element configuration")]
    ContainsPi4([usize; 4]),
    #[error("the system is not drawable")]
    NotDrawable,
    #[error("the system is not convex")]
    NotConvex,
    #[error("vertex {0} is a corner of the triangle")]
    OnTriangle(usize),
    #[error("arguments must be distinct vertices below n")]
    BadArguments,
}

fn sort4(mut q: [Vertex; 4]) -> [Vertex; 4] {
    q.sort_unstable();
    q
}

/// The signature of the sorted quadruple `q`.
pub fn quad_signature(rs: &RotationSystem, q: [Vertex; 4]) -> u8 {
    signature(rs, sort4(q))
}

/// The crossing pair among the four vertices, if any.
pub fn crossing_of_quadruple(rs: &RotationSystem, q: [Vertex; 4]) -> Result<Option<(Edge, Edge)>, PredicateError> {
    let n = rs.n();
    let q = sort4(q);
    if q[3] >= n || q.windows(2).any(|w| w[0] == w[1]) {
        return Err(PredicateError::BadArguments);
    }
    match QUADS.kind(signature(rs, q)) {
        QuadKind::Plane => Ok(None),
        QuadKind::Crossing { pairing, .. } => {
            let [e, f] = PAIRINGS[pairing as usize];
            Ok(Some((Edge::new(q[e[0]], q[e[1]]), Edge::new(q[f[0]], q[f[1]]))))
        }
        QuadKind::Obstruction => Err(PredicateError::ContainsPi4(q)),
    }
}

/// Whether two edges cross. Adjacent edges never cross; a non-drawable
/// quadruple is reported as not crossing, so callers wanting that checked
/// should use [`crossing_of_quadruple`].
#[inline]
pub fn crosses(rs: &RotationSystem, e: Edge, f: Edge) -> bool {
    if !e.is_independent(f) {
        return false;
    }
    let mut q = [e.u(), e.v(), f.u(), f.v()];
    q.sort_unstable();
    match QUADS.kind(signature(rs, q)) {
        QuadKind::Crossing { pairing, .. } => {
            let [p, _] = PAIRINGS[pairing as usize];
            let (x, y) = (q[p[0]], q[p[1]]);
            (x == e.u() && y == e.v()) || (x == f.u() && y == f.v())
        }
        _ => false,
    }
}

/// The set of crossing pairs, each stored once as `(e, f)` with `e < f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossingRelation {
    n: usize,
    pairs: BTreeSet<(Edge, Edge)>,
}

impl CrossingRelation {
    pub fn new(n: usize) -> Self {
        CrossingRelation { n, pairs: BTreeSet::new() }
    }

    pub fn insert(&mut self, e: Edge, f: Edge) -> bool {
        assert!(e.is_independent(f), "only independent edges can cross");
        self.pairs.insert(if e < f { (e, f) } else { (f, e) })
    }

    pub fn contains(&self, e: Edge, f: Edge) -> bool {
        self.pairs.contains(&if e < f { (e, f) } else { (f, e) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Edge, Edge)> + '_ {
        self.pairs.iter().copied()
    }

    /// Number of crossings on each edge.
    pub fn crossings_on(&self, e: Edge) -> usize {
        self.pairs.iter().filter(|(a, b)| *a == e || *b == e).count()
    }
}

pub fn crossing_relation(rs: &RotationSystem) -> Result<CrossingRelation, PredicateError> {
    let mut rel = CrossingRelation::new(rs.n());
    let mut err = None;
    for_each_subset(rs.n(), 4, &mut |s| {
        if err.is_some() {
            return;
        }
        match crossing_of_quadruple(rs, [s[0], s[1], s[2], s[3]]) {
            Ok(Some((e, f))) => {
                rel.insert(e, f);
            }
            Ok(None) => {}
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(rel),
    }
}

pub fn contains_pi4(rs: &RotationSystem) -> bool {
    find_pi4(rs).is_some()
}

/// The first quadruple (in lexicographic order) inducing the non-drawable
/// 4-element configuration.
pub fn find_pi4(rs: &RotationSystem) -> Option<[Vertex; 4]> {
    let mut found = None;
    for_each_subset(rs.n(), 4, &mut |s| {
        if found.is_none() {
            let q = [s[0], s[1], s[2], s[3]];
            if QUADS.kind(signature(rs, q)) == QuadKind::Obstruction {
                found = Some(q);
            }
        }
    });
    found
}

/// Whether some induced sub-configuration is isomorphic to `obs`.
pub fn contains_subconfiguration(rs: &RotationSystem, obs: &RotationSystem) -> bool {
    let k = obs.n();
    if k > rs.n() {
        return false;
    }
    let target = obs.canonical_form();
    let mut found = false;
    for_each_subset(rs.n(), k, &mut |s| {
        if !found && rs.induced(s).unwrap().canonical_form() == target {
            found = true;
        }
    });
    found
}

// ---------------------------------------------------------------------------
// 5-element classification table

const PERM3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Index of the labeled 5-element sub-configuration induced by the sorted
/// vertex set `s` (a number below `6^5`).
pub fn five_index(rs: &RotationSystem, s: &[Vertex; 5]) -> usize {
    let m = rs.n() - 1;
    let mut idx = 0;
    for i in (0..5).rev() {
        let v = s[i];
        let mut others = [0usize; 4];
        let mut k = 0;
        for (j, &u) in s.iter().enumerate() {
            if j != i {
                others[k] = u;
                k += 1;
            }
        }
        let p0 = rs.position(v, others[0]);
        let q: [usize; 3] = std::array::from_fn(|t| (rs.position(v, others[t + 1]) + m - p0) % m);
        // rank of the order of q
        let order = [
            (q[0] < q[1]) as usize + (q[0] < q[2]) as usize,
            (q[1] < q[0]) as usize + (q[1] < q[2]) as usize,
            (q[2] < q[0]) as usize + (q[2] < q[1]) as usize,
        ];
        // order[t] = number of others later than t; the sequence read in
        // rotation order lists t by decreasing order[t]
        let mut seq = [0usize; 3];
        for t in 0..3 {
            seq[2 - order[t]] = t;
        }
        let code = PERM3.iter().position(|p| *p == seq).unwrap();
        idx = idx * 6 + code;
    }
    idx
}

/// The labeled 5-element system with the given index.
pub fn five_from_index(mut idx: usize) -> RotationSystem {
    let mut rows = Vec::with_capacity(5);
    for v in 0..5 {
        let code = idx % 6;
        idx /= 6;
        let others: Vec<Vertex> = (0..5).filter(|&u| u != v).collect();
        let p = PERM3[code];
        rows.push(vec![others[0], others[1 + p[0]], others[1 + p[1]], others[1 + p[2]]]);
    }
    RotationSystem::from_rows(&rows).unwrap()
}

const FIVE_PI4_FREE: u8 = 1;
const FIVE_DRAWABLE: u8 = 2;
const FIVE_CONVEX: u8 = 4;

/// Drawability and convexity of every labeled 5-element pre-rotation system.
pub struct FiveTable {
    flags: Vec<u8>,
}

impl FiveTable {
    /// Builds the table from the non-drawable and the non-convex 5-element
    /// obstructions.
    pub fn new(not_drawable: &[RotationSystem], not_convex: &[RotationSystem]) -> Self {
        let bad_draw: Vec<RotationSystem> = not_drawable.iter().map(|r| r.canonical_form()).collect();
        let bad_convex: Vec<RotationSystem> = not_convex.iter().map(|r| r.canonical_form()).collect();
        let flags = (0..7776)
            .map(|i| {
                let rs = five_from_index(i);
                if contains_pi4(&rs) {
                    return 0;
                }
                let c = rs.canonical_form();
                let mut f = FIVE_PI4_FREE;
                if !bad_draw.contains(&c) {
                    f |= FIVE_DRAWABLE;
                    if !bad_convex.contains(&c) {
                        f |= FIVE_CONVEX;
                    }
                }
                f
            })
            .collect();
        FiveTable { flags }
    }

    fn scan(&self, rs: &RotationSystem, need: u8) -> Option<[Vertex; 5]> {
        let mut bad = None;
        if rs.n() < 5 {
            return None;
        }
        for_each_subset(rs.n(), 5, &mut |s| {
            if bad.is_none() {
                let s = [s[0], s[1], s[2], s[3], s[4]];
                if self.flags[five_index(rs, &s)] & need != need {
                    bad = Some(s);
                }
            }
        });
        bad
    }

    pub fn is_drawable(&self, rs: &RotationSystem) -> bool {
        !contains_pi4(rs) && self.scan(rs, FIVE_PI4_FREE | FIVE_DRAWABLE).is_none()
    }

    pub fn is_convex(&self, rs: &RotationSystem) -> Result<bool, PredicateError> {
        if !self.is_drawable(rs) {
            return Err(PredicateError::NotDrawable);
        }
        Ok(self.scan(rs, FIVE_CONVEX).is_none())
    }
}

pub static FIVE: LazyLock<FiveTable> = LazyLock::new(|| {
    let c = &*CATALOG;
    FiveTable::new(&[c.pi5a.clone(), c.pi5b.clone()], &[c.convex5_1.clone(), c.convex5_2.clone()])
});

/// Whether the system is realizable as a simple drawing, decided by the
/// three obstructions on at most 5 vertices.
pub fn is_drawable(rs: &RotationSystem) -> bool {
    FIVE.is_drawable(rs)
}

/// Convexity via the two 5-element obstructions.
pub fn is_convex(rs: &RotationSystem) -> Result<bool, PredicateError> {
    FIVE.is_convex(rs)
}

/// h-convexity via the 6-element obstruction.
pub fn is_hconvex(rs: &RotationSystem) -> Result<bool, PredicateError> {
    if !is_convex(rs)? {
        return Ok(false);
    }
    Ok(!contains_subconfiguration(rs, &CATALOG.hconvex6))
}

// ---------------------------------------------------------------------------
// sides of triangles

/// The side `S_{a,b,c}` of triangle `abc`: the one from whose interior
/// `a, b, c` read counterclockwise. `S_{a,c,b}` is the other side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SideRef {
    pub a: Vertex,
    pub b: Vertex,
    pub c: Vertex,
}

impl SideRef {
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Self {
        assert!(a != b && b != c && a != c, "triangle corners must be distinct");
        SideRef { a, b, c }
    }

    pub fn opposite(self) -> Self {
        SideRef { a: self.a, b: self.c, c: self.b }
    }

    /// Corners rotated to start at the smallest one; equal sides give equal
    /// keys.
    pub fn key(self) -> [Vertex; 3] {
        let t = [self.a, self.b, self.c];
        let i = (0..3).min_by_key(|&i| t[i]).unwrap();
        [t[i], t[(i + 1) % 3], t[(i + 2) % 3]]
    }

    pub fn corners(self) -> [Vertex; 3] {
        [self.a, self.b, self.c]
    }

    pub fn edges(self) -> [Edge; 3] {
        [Edge::new(self.a, self.b), Edge::new(self.b, self.c), Edge::new(self.c, self.a)]
    }

    fn is_sorted_orientation(self) -> bool {
        let [x, y, z] = self.key();
        y < z && x < y
    }
}

impl PartialOrd for SideRef {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SideRef {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// Whether `d` lies in the interior of the given side.
pub fn side_contains_vertex(rs: &RotationSystem, side: SideRef, d: Vertex) -> Result<bool, PredicateError> {
    if side.corners().contains(&d) {
        return Err(PredicateError::OnTriangle(d));
    }
    let q = sort4([side.a, side.b, side.c, d]);
    let sig = signature(rs, q);
    if QUADS.kind(sig) == QuadKind::Obstruction {
        return Err(PredicateError::ContainsPi4(q));
    }
    let m = q.iter().position(|&x| x == d).unwrap();
    Ok(QUADS.in_ccw_side(sig, m) == side.is_sorted_orientation())
}

/// Vertices in the closed side (corners included).
pub fn side_members(rs: &RotationSystem, side: SideRef) -> Result<Vec<Vertex>, PredicateError> {
    let mut out = Vec::new();
    for d in 0..rs.n() {
        if side.corners().contains(&d) || side_contains_vertex(rs, side, d)? {
            out.push(d);
        }
    }
    Ok(out)
}

/// A side is convex when no edge between two of its (closed) vertices
/// crosses the triangle.
pub fn side_is_convex(rs: &RotationSystem, side: SideRef) -> Result<bool, PredicateError> {
    let members = side_members(rs, side)?;
    let tri = side.edges();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            let e = Edge::new(u, v);
            if tri.iter().any(|&t| crosses(rs, e, t)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Convexity straight from the definition: every triangle has a convex side.
pub fn is_convex_definitional(rs: &RotationSystem) -> Result<bool, PredicateError> {
    if contains_pi4(rs) {
        return Err(PredicateError::NotDrawable);
    }
    let mut ok = true;
    for_each_subset(rs.n(), 3, &mut |t| {
        if ok {
            let s = SideRef::new(t[0], t[1], t[2]);
            ok = side_is_convex(rs, s).unwrap() || side_is_convex(rs, s.opposite()).unwrap();
        }
    });
    Ok(ok)
}

/// h-convexity from the definition: there is a choice of one convex side
/// per triangle such that every triangle lying in a chosen side has its
/// chosen side inside that one.
///
/// The side of an inner triangle that lies inside an outer side is the one
/// not containing an outer corner that is not a corner of the inner
/// triangle. The choice is a 2-SAT problem, handed to the solver.
pub fn is_hconvex_definitional(rs: &RotationSystem) -> Result<bool, PredicateError> {
    if !is_convex_definitional(rs)? {
        return Ok(false);
    }
    let n = rs.n();
    let mut triangles = Vec::new();
    for_each_subset(n, 3, &mut |t| triangles.push([t[0], t[1], t[2]]));
    // variable i+1 true: triangle i takes the side SideRef::new(t) (not the opposite)
    let lit = |i: usize, side: SideRef| {
        let t = triangles[i];
        let v = (i + 1) as Lit;
        if side.key() == SideRef::new(t[0], t[1], t[2]).key() {
            v
        } else {
            -v
        }
    };
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut sides = Vec::new();
    for (i, t) in triangles.iter().enumerate() {
        let s = SideRef::new(t[0], t[1], t[2]);
        for side in [s, s.opposite()] {
            if side_is_convex(rs, side)? {
                sides.push((i, side, side_members(rs, side)?));
            } else {
                clauses.push(vec![-lit(i, side)]);
            }
        }
    }
    for (i, outer, members) in &sides {
        for (j, t) in triangles.iter().enumerate() {
            if j == *i || !t.iter().all(|x| members.contains(x)) {
                continue;
            }
            let inner = SideRef::new(t[0], t[1], t[2]);
            let mut verdicts = outer
                .corners()
                .into_iter()
                .filter(|x| !t.contains(x))
                .map(|x| side_contains_vertex(rs, inner, x))
                .collect::<Result<Vec<bool>, _>>()?;
            verdicts.dedup();
            assert_eq!(verdicts.len(), 1, "outer corners split by an inner triangle");
            let inside = if verdicts[0] { inner.opposite() } else { inner };
            clauses.push(vec![-lit(*i, *outer), lit(j, inside)]);
        }
    }
    let res = crate::solve::solve_clauses(triangles.len(), clauses.iter().map(|c| c.as_slice()), crate::solve::Budget::unlimited())
        .expect("embedded solver");
    Ok(res.status == crate::solve::Status::Sat)
}

/// The 3-sets with at least one side free of vertices.
pub fn empty_triangles(rs: &RotationSystem) -> Result<Vec<[Vertex; 3]>, PredicateError> {
    if let Some(q) = find_pi4(rs) {
        return Err(PredicateError::ContainsPi4(q));
    }
    let n = rs.n();
    let mut out = Vec::new();
    for_each_subset(n, 3, &mut |t| {
        let s = SideRef::new(t[0], t[1], t[2]);
        let mut in_s = 0;
        let mut others = 0;
        for d in (0..n).filter(|d| !t.contains(d)) {
            others += 1;
            if side_contains_vertex(rs, s, d).unwrap() {
                in_s += 1;
            }
        }
        if in_s == 0 || in_s == others {
            out.push([t[0], t[1], t[2]]);
        }
    });
    Ok(out)
}

/// Whether no two of the given edges cross.
pub fn is_plane_subset(rs: &RotationSystem, edges: &[Edge]) -> bool {
    edges.iter().enumerate().all(|(i, &e)| edges[i + 1..].iter().all(|&f| !crosses(rs, e, f)))
}

/// Every edge paired with the number of edges crossing it.
pub fn edge_crossing_counts(rs: &RotationSystem) -> Vec<(Edge, usize)> {
    let n = rs.n();
    let edges: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v))).collect();
    edges.iter().map(|&e| (e, edges.iter().filter(|&&f| crosses(rs, e, f)).count())).collect()
}

pub fn has_uncrossed_edge(rs: &RotationSystem) -> bool {
    edge_crossing_counts(rs).iter().any(|&(_, c)| c == 0)
}

/// All edges of `K_n`.
pub fn all_edges(n: usize) -> Vec<Edge> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{convex_position, rotation_from_points, segment_crossings, Point};

    fn plane() -> RotationSystem {
        rotation_from_points(&[Point::new(0, 0), Point::new(4, 0), Point::new(2, 4), Point::new(2, 1)]).unwrap()
    }

    fn square() -> RotationSystem {
        rotation_from_points(&[Point::new(0, 0), Point::new(4, 0), Point::new(4, 4), Point::new(0, 4)]).unwrap()
    }

    #[test]
    fn quadruple_crossings_follow_geometry() {
        assert_eq!(crossing_of_quadruple(&plane(), [0, 1, 2, 3]), Ok(None));
        assert_eq!(crossing_of_quadruple(&square(), [3, 1, 2, 0]), Ok(Some((Edge::labeled(1, 3), Edge::labeled(2, 4)))));
        assert!(crosses(&square(), Edge::labeled(2, 4), Edge::labeled(1, 3)));
        assert!(!crosses(&square(), Edge::labeled(1, 2), Edge::labeled(3, 4)));
        assert_eq!(crossing_of_quadruple(&square(), [0, 0, 1, 2]), Err(PredicateError::BadArguments));
    }

    #[test]
    fn pentagon_relation_matches_segments() {
        let pts = convex_position(5);
        let rel = crossing_relation(&rotation_from_points(&pts).unwrap()).unwrap();
        let geo: Vec<_> = segment_crossings(&pts);
        assert_eq!(rel.len(), 5);
        assert!(geo.iter().all(|&(e, f)| rel.contains(f, e)));
    }

    #[test]
    fn five_index_agrees_with_induced() {
        let rs = rotation_from_points(&convex_position(7)).unwrap();
        for_each_subset(7, 5, &mut |s| {
            let s5 = [s[0], s[1], s[2], s[3], s[4]];
            let idx = five_index(&rs, &s5);
            assert_eq!(five_from_index(idx), rs.induced(s).unwrap());
        });
        for i in [0, 1, 777, 7775] {
            assert_eq!(five_index(&five_from_index(i), &[0, 1, 2, 3, 4]), i);
        }
    }

    #[test]
    fn sides_of_the_plane_k4() {
        let rs = plane();
        let s = SideRef::new(0, 1, 2);
        // (0,0), (4,0), (2,4) is counterclockwise, so the bounded side is S_{1,2,3}
        assert_eq!(side_contains_vertex(&rs, s, 3), Ok(true));
        assert_eq!(side_contains_vertex(&rs, s.opposite(), 3), Ok(false));
        assert_eq!(side_contains_vertex(&rs, SideRef::new(1, 2, 0), 3), Ok(true));
        assert_eq!(side_contains_vertex(&rs, s, 0), Err(PredicateError::OnTriangle(0)));
        let sq = square();
        assert_eq!(side_contains_vertex(&sq, s, 3), Ok(false));
    }

    #[test]
    fn empty_triangles_on_four_vertices() {
        assert_eq!(empty_triangles(&plane()).unwrap().len(), 4);
        assert_eq!(empty_triangles(&square()).unwrap().len(), 4);
    }

    #[test]
    fn plane_subsets() {
        let sq = square();
        assert!(is_plane_subset(&sq, &[Edge::labeled(1, 3)]));
        assert!(!is_plane_subset(&sq, &[Edge::labeled(1, 3), Edge::labeled(2, 4)]));
        assert!(has_uncrossed_edge(&sq));
    }
}
