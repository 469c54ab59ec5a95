//! Plane Hamiltonian cycles avoiding a spanning star in convex drawings.
//!
//! Vertices other than the star vertex are labeled `1..n-1` in
//! counterclockwise order around it. A consecutive edge `{v, v+1}` is bad if
//! it crosses a star edge `{w, star}`; `w` is a witness. With at most one
//! bad edge the rotation itself gives the cycle. Otherwise the bad edges are
//! nested around the star and the cycle is assembled block by block from the
//! `l` table.

use serde::Serialize;
use thiserror::Error;

use crate::oracle::sequence_edges;
use crate::predicates::{crosses, is_hconvex, side_contains_vertex, SideRef};
use crate::system::{Edge, RotationSystem};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum HamError {
    #[error("star vertex {0} out of range")]
    BadStar(usize),
    #[error("edge {0} is not an edge of the system")]
    BadEdge(Edge),
    #[error("not convex: {0}")]
    NotConvex(String),
    #[error("constructed {what} failed verification: {detail}")]
    Verification { what: &'static str, detail: String },
}

/// A bad edge `{v, v+1}` with its smallest and largest witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BadEdge {
    pub v: usize,
    pub wl: usize,
    pub wr: usize,
}

/// Bad edges around a star vertex, in shifted labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadEdgeDecomposition {
    pub star: usize,
    /// `order[k - 1]` is the vertex with label `k`.
    pub order: Vec<usize>,
    /// Sorted by `v`. With at most one bad edge it is `{n-1, 1}` (`v = n-1`).
    pub bad: Vec<BadEdge>,
    /// `l[r]` for labels `r` in the right blocks; `None` is minus infinity.
    /// Entries outside the right blocks are `None` as well.
    pub l: Vec<Option<usize>>,
}

impl BadEdgeDecomposition {
    fn n(&self) -> usize {
        self.order.len() + 1
    }

    pub fn vertex(&self, label: usize) -> usize {
        self.order[label - 1]
    }

    pub fn edge(&self, a: usize, b: usize) -> Edge {
        Edge::new(self.vertex(a), self.vertex(b))
    }

    /// Left block `L_i` (1-based `i < m`) as a label range.
    pub fn left_block(&self, i: usize) -> std::ops::Range<usize> {
        self.bad[i].wr + 1..self.bad[i - 1].wl
    }

    /// Right block `R_i` (1-based `i < m`).
    pub fn right_block(&self, i: usize) -> std::ops::RangeInclusive<usize> {
        self.bad[i - 1].v + 1..=self.bad[i].v
    }

    fn star_crossing(&self, rs: &RotationSystem, a: usize, b: usize) -> bool {
        star_crossing(rs, self.star, &self.order, a, b)
    }

    /// The two edges that lead around each bad edge; never star-crossing in
    /// a convex drawing.
    pub fn witness_edges(&self) -> Vec<(usize, usize)> {
        if self.bad.len() < 2 {
            return Vec::new();
        }
        self.bad.iter().flat_map(|b| [(b.wl, b.v + 1), (b.wr, b.v)]).collect()
    }

    pub fn witness_edges_are_star_free(&self, rs: &RotationSystem) -> bool {
        self.witness_edges().into_iter().all(|(a, b)| !self.star_crossing(rs, a, b))
    }
}

fn star_crossing(rs: &RotationSystem, star: usize, order: &[usize], a: usize, b: usize) -> bool {
    let e = Edge::new(order[a - 1], order[b - 1]);
    order.iter().any(|&w| crosses(rs, e, Edge::new(w, star)))
}

/// Labels `1..n-1` in rotation order around `star`, starting at `first`.
fn rotation_order(rs: &RotationSystem, star: usize) -> Vec<usize> {
    rs.row(star).to_vec()
}

/// Bad edges and their witnesses in rotation labels (no shift).
fn raw_bad_edges(rs: &RotationSystem, star: usize, order: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let k = order.len();
    let mut out = Vec::new();
    for v in 1..=k {
        let next = v % k + 1;
        let e = Edge::new(order[v - 1], order[next - 1]);
        let ws: Vec<usize> = (1..=k)
            .filter(|&w| w != v && w != next && crosses(rs, e, Edge::new(order[w - 1], star)))
            .collect();
        if !ws.is_empty() {
            out.push((v, ws));
        }
    }
    out
}

/// Finds the bad edges around `star`, shifts the labels so that the last
/// bad edge is `{n-2, n-1}` and computes the `l` table.
pub fn find_bad_edges(rs: &RotationSystem, star: usize) -> Result<BadEdgeDecomposition, HamError> {
    let n = rs.n();
    if star >= n {
        return Err(HamError::BadStar(star));
    }
    let base = rotation_order(rs, star);
    let k = n - 1;
    let raw = if n >= 4 { raw_bad_edges(rs, star, &base) } else { Vec::new() };
    let shifted = |s: usize| -> Vec<usize> { (0..k).map(|i| base[(i + s) % k]).collect() };
    if raw.len() <= 1 {
        let (order, bad) = match raw.first() {
            None => (base.clone(), Vec::new()),
            Some((v, ws)) => {
                // old label v+1 becomes 1, so the bad edge is {n-1, 1}
                let s = *v % k;
                let relabel = |x: usize| (x + k - 1 - s) % k + 1;
                let mut ws: Vec<usize> = ws.iter().map(|&w| relabel(w)).collect();
                ws.sort_unstable();
                (shifted(s), vec![BadEdge { v: k, wl: ws[0], wr: *ws.last().unwrap() }])
            }
        };
        return Ok(BadEdgeDecomposition { star, order, bad, l: vec![None; n] });
    }
    for s in 0..k {
        let relabel = |x: usize| (x + k - 1 - s) % k + 1;
        let mut bad: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut ok = true;
        for (v, ws) in &raw {
            let nv = relabel(*v);
            if nv == k {
                ok = false;
                break;
            }
            let mut ws: Vec<usize> = ws.iter().map(|&w| relabel(w)).collect();
            ws.sort_unstable();
            bad.push((nv, ws));
        }
        if !ok {
            continue;
        }
        bad.sort_unstable();
        if bad.last().unwrap().0 != k - 1 {
            continue;
        }
        let sided = bad.iter().all(|(v, ws)| ws.iter().all(|w| w < v));
        let nested = bad.windows(2).all(|p| p[1].1.last().unwrap() < &p[0].1[0]);
        if !sided || !nested {
            continue;
        }
        let bad: Vec<BadEdge> = bad.iter().map(|(v, ws)| BadEdge { v: *v, wl: ws[0], wr: *ws.last().unwrap() }).collect();
        let mut dec = BadEdgeDecomposition { star, order: shifted(s), bad, l: vec![None; n] };
        dec.l = l_table(rs, &dec);
        return Ok(dec);
    }
    Err(HamError::NotConvex(format!("bad edges around {} are not nested", star + 1)))
}

/// `l'` candidates for `l(r)`: some `l' < l` and `l' < prev` in the left
/// block with `{l', r}` crossing `{l, star}`.
fn is_l_value(rs: &RotationSystem, dec: &BadEdgeDecomposition, left: &std::ops::Range<usize>, l: usize, r: usize, prev: usize) -> bool {
    let star_edge = Edge::new(dec.vertex(l), dec.star);
    (left.start..l.min(prev)).any(|lp| crosses(rs, dec.edge(lp, r), star_edge))
}

/// The `l` table by a single pass per block: the candidate `l` only moves
/// down as `r` moves up.
fn l_table(rs: &RotationSystem, dec: &BadEdgeDecomposition) -> Vec<Option<usize>> {
    let mut l = vec![None; dec.n()];
    for i in 1..dec.bad.len() {
        let left = dec.left_block(i);
        let mut prev = Some(dec.bad[i - 1].wl);
        let mut cand = left.end;
        for r in dec.right_block(i) {
            let p = match prev {
                None => break,
                Some(p) => p,
            };
            cand = cand.min(p + 1);
            let mut found = None;
            while cand > left.start {
                let c = cand - 1;
                if is_l_value(rs, dec, &left, c, r, p) {
                    found = Some(c);
                    break;
                }
                cand -= 1;
            }
            if let Some(c) = found {
                cand = c + 1;
            }
            l[r] = found;
            prev = found;
        }
    }
    l
}

/// The `l` table straight from its recursive definition, for cross-checks.
pub fn l_table_definitional(rs: &RotationSystem, dec: &BadEdgeDecomposition) -> Vec<Option<usize>> {
    let mut l = vec![None; dec.n()];
    for i in 1..dec.bad.len() {
        let left = dec.left_block(i);
        let mut prev = Some(dec.bad[i - 1].wl);
        for r in dec.right_block(i) {
            let cur = prev.and_then(|p| left.clone().filter(|&c| is_l_value(rs, dec, &left, c, r, p)).max());
            l[r] = cur;
            prev = cur;
        }
    }
    l
}

/// Outcome of the independent checks on a Hamiltonian cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub hamiltonian: bool,
    pub plane: bool,
    pub star_avoiding: bool,
    /// Number of distinct edges in cycle plus star.
    pub star_union_edges: usize,
    pub star_union_plane: bool,
    /// The cycle visits the other vertices in the rotation order around the
    /// star (in either direction).
    pub rotation_order: bool,
    /// Whether the system is h-convex, when known.
    pub hconvex: Option<bool>,
}

impl VerifyReport {
    /// All required checks hold. Rotation order is required only for
    /// h-convex systems.
    pub fn passed(&self) -> bool {
        let base = self.hamiltonian && self.plane && self.star_avoiding && self.star_union_plane;
        base && (self.hconvex != Some(true) || self.rotation_order)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.hamiltonian {
            out.push("hamiltonian");
        }
        if !self.plane {
            out.push("plane");
        }
        if !self.star_avoiding {
            out.push("star-avoiding");
        }
        if !self.star_union_plane {
            out.push("star-union");
        }
        if self.hconvex == Some(true) && !self.rotation_order {
            out.push("rotation-order");
        }
        out
    }
}

/// Checks a cycle given as a vertex sequence. h-convexity is decided for
/// `n <= 9` and left open above.
pub fn verify_hc(rs: &RotationSystem, star: usize, cycle: &[usize]) -> VerifyReport {
    let hconvex = (rs.n() <= 9).then(|| is_hconvex(rs).unwrap_or(false));
    verify_hc_with(rs, star, cycle, hconvex)
}

pub fn verify_hc_with(rs: &RotationSystem, star: usize, cycle: &[usize], hconvex: Option<bool>) -> VerifyReport {
    let n = rs.n();
    let mut seen = vec![false; n];
    let mut hamiltonian = cycle.len() == n && star < n;
    for &v in cycle {
        if v >= n || seen[v] {
            hamiltonian = false;
            break;
        }
        seen[v] = true;
    }
    if !hamiltonian {
        return VerifyReport {
            hamiltonian,
            plane: false,
            star_avoiding: false,
            star_union_edges: 0,
            star_union_plane: false,
            rotation_order: false,
            hconvex,
        };
    }
    let edges = sequence_edges(cycle, true);
    let plane = pairwise_plane(rs, &edges);
    let star_edges: Vec<Edge> = (0..n).filter(|&v| v != star).map(|v| Edge::new(v, star)).collect();
    let star_avoiding = edges.iter().all(|&e| star_edges.iter().all(|&s| !crosses(rs, e, s)));
    let mut union: Vec<Edge> = edges.iter().chain(&star_edges).copied().collect();
    union.sort_unstable();
    union.dedup();
    let star_union_plane = union.len() == 2 * n - 3 && pairwise_plane(rs, &union);
    let at = cycle.iter().position(|&v| v == star).unwrap();
    let others: Vec<usize> = (1..n).map(|i| cycle[(at + i) % n]).collect();
    let rot = rs.row(star);
    let start = rot.iter().position(|&v| v == others[0]).unwrap();
    let fwd = (0..n - 1).all(|i| rot[(start + i) % (n - 1)] == others[i]);
    let bwd = (0..n - 1).all(|i| rot[(start + (n - 1) - i) % (n - 1)] == others[i]);
    VerifyReport {
        hamiltonian,
        plane,
        star_avoiding,
        star_union_edges: union.len(),
        star_union_plane,
        rotation_order: fwd || bwd,
        hconvex,
    }
}

fn pairwise_plane(rs: &RotationSystem, edges: &[Edge]) -> bool {
    edges.iter().enumerate().all(|(i, &e)| edges[i + 1..].iter().all(|&f| !crosses(rs, e, f)))
}

/// A plane Hamiltonian cycle through `star`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HamCycle {
    pub star: usize,
    /// Starts at the star vertex.
    pub cycle: Vec<usize>,
    pub bad_edges: usize,
    pub report: VerifyReport,
}

impl HamCycle {
    pub fn edges(&self) -> Vec<Edge> {
        sequence_edges(&self.cycle, true)
    }
}

/// The label sequence of the cycle, star excluded.
fn construct(dec: &BadEdgeDecomposition) -> Vec<usize> {
    let k = dec.n() - 1;
    if dec.bad.len() <= 1 {
        return (1..=k).collect();
    }
    let m = dec.bad.len();
    let b = |i: usize| dec.bad[i - 1];
    let mut seq = vec![b(1).v];
    let descend = |seq: &mut Vec<usize>, from: usize, to: usize| {
        let mut x = from;
        while x > to {
            x -= 1;
            seq.push(x);
        }
    };
    let mut u = b(1).v - 1;
    for i in 1..m {
        seq.push(u);
        let mut r = b(i).v + 1;
        let vnext = b(i + 1).v;
        let mut next_u = None;
        while r <= vnext {
            match dec.l[r] {
                None => {
                    let bottom = b(i + 1).wr + 1;
                    descend(&mut seq, u, bottom);
                    seq.extend(r..=vnext);
                    next_u = Some(b(i + 1).wr);
                    r = usize::MAX;
                }
                Some(lr) => {
                    descend(&mut seq, u, lr + 1);
                    let mut rp = r;
                    while rp < vnext && dec.l[rp + 1] == Some(lr) {
                        rp += 1;
                    }
                    seq.extend(r..=rp);
                    if rp < vnext {
                        seq.push(lr);
                        u = lr;
                    } else {
                        next_u = Some(lr);
                    }
                    r = rp + 1;
                }
            }
        }
        u = next_u.expect("right block ends at the next bad edge");
    }
    seq.push(u);
    descend(&mut seq, u, 1);
    seq.push(b(m).v + 1);
    seq
}

/// Constructs a plane Hamiltonian cycle none of whose edges crosses an edge
/// at `star`. The result is verified before it is returned.
/// h-convexity is decided for `n <= 9` so that the rotation order can be
/// checked.
pub fn plane_hc_convex(rs: &RotationSystem, star: usize) -> Result<HamCycle, HamError> {
    let hconvex = (rs.n() <= 9).then(|| is_hconvex(rs).unwrap_or(false));
    plane_hc_convex_with(rs, star, hconvex)
}

/// As [`plane_hc_convex`] with a given h-convexity verdict; `None` skips the
/// rotation order requirement.
pub fn plane_hc_convex_with(rs: &RotationSystem, star: usize, hconvex: Option<bool>) -> Result<HamCycle, HamError> {
    let (cycle, bad_edges) = construct_unverified(rs, star)?;
    let report = verify_hc_with(rs, star, &cycle, hconvex);
    if !report.passed() {
        return Err(HamError::Verification { what: "cycle", detail: report.failures().join(", ") });
    }
    Ok(HamCycle { star, cycle, bad_edges, report })
}

/// The cycle (starting at `star`) and the number of bad edges, without
/// verification.
pub fn construct_unverified(rs: &RotationSystem, star: usize) -> Result<(Vec<usize>, usize), HamError> {
    let dec = find_bad_edges(rs, star)?;
    let labels = construct(&dec);
    let mut cycle = vec![star];
    cycle.extend(labels.iter().map(|&x| dec.vertex(x)));
    Ok((cycle, dec.bad.len()))
}

/// A plane Hamiltonian path containing a prescribed edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HamPath {
    pub edge: Edge,
    pub path: Vec<usize>,
}

/// Whether `path` is a plane Hamiltonian path containing `e`.
pub fn verify_hp(rs: &RotationSystem, path: &[usize], e: Edge) -> bool {
    let n = rs.n();
    let mut seen = vec![false; n];
    if path.len() != n || path.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return false;
    }
    let edges = sequence_edges(path, false);
    edges.contains(&e) && pairwise_plane(rs, &edges)
}

/// Reroutes the cycle around `u = e.u()` so that it becomes a path through
/// `e`.
pub fn plane_hp_with_edge(rs: &RotationSystem, e: Edge) -> Result<HamPath, HamError> {
    if e.v() >= rs.n() {
        return Err(HamError::BadEdge(e));
    }
    let u = e.u();
    let hc = plane_hc_convex_with(rs, u, None)?;
    // cycle = u, x_1, ..., x_{n-1}
    let x = &hc.cycle[1..];
    let i = x.iter().position(|&y| y == e.v()).unwrap() + 1;
    let path: Vec<usize> = if i == 1 {
        hc.cycle.clone()
    } else if i == x.len() {
        x.iter().copied().chain([u]).collect()
    } else {
        let mut p: Vec<usize> = x[..i - 1].iter().rev().copied().collect();
        p.push(u);
        p.extend_from_slice(&x[i - 1..]);
        p
    };
    if !verify_hp(rs, &path, e) {
        return Err(HamError::Verification { what: "path", detail: format!("{path:?} through {e}") });
    }
    Ok(HamPath { edge: e, path })
}

/// The machine-checked parts of the nested bad edges lemma.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NestedLemma {
    /// Distinct witnesses, and `w', w, v, v'` in cyclic order.
    Part1,
    /// `v'` outside the witness side of `{v, v+1, star}` (`v+1 != v'`).
    Part2Case1,
    /// `v'+1` outside it (`v+1 != v'`).
    Part2Case2,
    /// `v'+1` outside it (`v+1 == v'`).
    Part2Case3,
}

fn in_cyclic_order(pos: &[usize], seq: &[usize]) -> bool {
    let p: Vec<usize> = seq.iter().map(|&x| pos[x]).collect();
    let descents = (0..p.len()).filter(|&i| p[(i + 1) % p.len()] < p[i]).count();
    descents == 1
}

fn all_distinct(seq: &[usize]) -> bool {
    seq.iter().enumerate().all(|(i, x)| !seq[..i].contains(x))
}

/// Checks one part of the lemma for every star vertex. Vertices are
/// original labels; `false` means a counterexample was found.
pub fn check_nested_lemma(rs: &RotationSystem, part: NestedLemma) -> bool {
    nested_lemma_instances(rs, part).is_some()
}

/// Number of configurations the lemma part applies to, or `None` if one of
/// them violates it.
pub fn nested_lemma_instances(rs: &RotationSystem, part: NestedLemma) -> Option<usize> {
    let n = rs.n();
    let mut applied = 0;
    if n < 4 {
        return Some(0);
    }
    for star in 0..n {
        let order = rotation_order(rs, star);
        let k = order.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let raw = raw_bad_edges(rs, star, &order);
        // bad edges as (v, v+1) vertex pairs in counterclockwise order
        let bad: Vec<(usize, usize, Vec<usize>)> = raw
            .iter()
            .map(|(v, ws)| (order[v - 1], order[v % k], ws.iter().map(|&w| order[w - 1]).collect()))
            .collect();
        for (i, (v, v1, ws)) in bad.iter().enumerate() {
            for (j, (vp, vp1, wps)) in bad.iter().enumerate() {
                if i == j {
                    continue;
                }
                for &w in ws {
                    for &wp in wps {
                        let ok = match part {
                            NestedLemma::Part1 => {
                                applied += 1;
                                let seq = [wp, w, *v, *vp];
                                w != wp && all_distinct(&seq) && {
                                    let rev: Vec<usize> = seq.iter().rev().copied().collect();
                                    in_cyclic_order(&pos, &seq) || in_cyclic_order(&pos, &rev)
                                }
                            }
                            _ => nested_part2(rs, &pos, star, (*v, *v1, w), (*vp, *vp1, wp), part, &mut applied),
                        };
                        if !ok {
                            return None;
                        }
                    }
                }
            }
        }
    }
    Some(applied)
}

fn nested_part2(
    rs: &RotationSystem,
    pos: &[usize],
    star: usize,
    (v, v1, w): (usize, usize, usize),
    (vp, vp1, wp): (usize, usize, usize),
    part: NestedLemma,
    applied: &mut usize,
) -> bool {
    // in each orientation, (a, a+) is the bad edge in traversal order
    for ccw in [true, false] {
        let (a, a1, b, b1) = if ccw { (v, v1, vp, vp1) } else { (v1, v, vp1, vp) };
        let adjacent = a1 == b;
        let seq: Vec<usize> = if adjacent { vec![wp, w, a, a1, b1] } else { vec![wp, w, a, a1, b, b1] };
        if !all_distinct(&seq) {
            continue;
        }
        let ordered = if ccw {
            in_cyclic_order(pos, &seq)
        } else {
            let rev: Vec<usize> = seq.iter().rev().copied().collect();
            in_cyclic_order(pos, &rev)
        };
        if !ordered {
            continue;
        }
        let x = match (part, adjacent) {
            (NestedLemma::Part2Case1, false) => b,
            (NestedLemma::Part2Case2, false) => b1,
            (NestedLemma::Part2Case3, true) => b1,
            _ => continue,
        };
        *applied += 1;
        let tri = SideRef::new(v, v1, star);
        let w_side = side_contains_vertex(rs, tri, w).unwrap();
        if side_contains_vertex(rs, tri, x).unwrap() == w_side {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CATALOG;
    use crate::geometry::{random_general_position, rotation_from_points};
    use rand::SeedableRng;

    #[test]
    fn convex_pentagon_has_one_bad_edge() {
        // only the closing edge {n-1, 1} around a hull vertex is bad
        let c5 = &CATALOG.convex_c5;
        for star in 0..5 {
            let dec = find_bad_edges(c5, star).unwrap();
            assert_eq!(dec.bad.len(), 1);
            assert_eq!(dec.bad[0].v, 4);
        }
        let dec = find_bad_edges(c5, 4).unwrap();
        assert_eq!(dec.edge(4, 1), Edge::labeled(1, 4));
        let hc = plane_hc_convex(c5, 4).unwrap();
        assert_eq!(hc.cycle, vec![4, 0, 1, 2, 3]);
        assert_eq!(hc.report.star_union_edges, 2 * 5 - 3);
    }

    #[test]
    fn hconvex6_star_3() {
        let h = &CATALOG.hconvex6;
        let dec = find_bad_edges(h, 2).unwrap();
        assert_eq!(dec.bad.len(), 2);
        let mut edges: Vec<Edge> = dec.bad.iter().map(|b| dec.edge(b.v, b.v + 1)).collect();
        edges.sort();
        assert_eq!(edges, vec![Edge::labeled(2, 6), Edge::labeled(4, 6)]);
        assert!(dec.witness_edges_are_star_free(h));
        assert_eq!(dec.l, l_table_definitional(h, &dec));
        let hc = plane_hc_convex(h, 2).unwrap();
        assert_eq!(hc.report.hconvex, Some(false));
        assert!(!hc.report.rotation_order);
    }

    #[test]
    fn crossing_cycle_fails_verification() {
        let sq = &CATALOG.crossing_k4;
        let rel = crate::predicates::crossing_relation(sq).unwrap();
        let (e, f) = rel.pairs().next().unwrap();
        let bad = vec![e.u(), e.v(), f.u(), f.v()];
        let r = verify_hc(sq, bad[0], &bad);
        assert!(r.hamiltonian);
        assert!(!r.plane);
        assert!(!r.passed());
    }

    #[test]
    fn random_geometric_instances() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [6, 9, 15, 30] {
            let pts = random_general_position(n, 1000, &mut rng);
            let rs = rotation_from_points(&pts).unwrap();
            for star in 0..n {
                let hc = plane_hc_convex_with(&rs, star, Some(true)).unwrap();
                assert!(hc.report.rotation_order);
                assert!(hc.bad_edges <= 1);
            }
        }
    }

    #[test]
    fn paths_through_every_edge_of_the_pentagon() {
        let c5 = &CATALOG.convex_c5;
        for e in crate::predicates::all_edges(5) {
            let p = plane_hp_with_edge(c5, e).unwrap();
            assert!(verify_hp(c5, &p.path, e));
        }
    }

    #[test]
    fn cyclic_order_helper() {
        let pos = vec![0, 1, 2, 3, 4];
        assert!(in_cyclic_order(&pos, &[1, 3, 4, 0]));
        assert!(in_cyclic_order(&pos, &[3, 4, 0, 1]));
        assert!(!in_cyclic_order(&pos, &[1, 0, 3, 4]));
    }
}
