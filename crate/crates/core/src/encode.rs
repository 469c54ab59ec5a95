//! CNF encodings of (pre-)rotation systems and of the properties checked on
//! them.
//!
//! Variable families, allocated in this order:
//!
//! * `X(a,i,b)`: position `i` of the row of `a` holds `b`.
//! * `Y(a,b,c,d)`: `b, c, d` are counterclockwise around `a`. Only `b < c < d`
//!   gets a variable; other orders are the same variable or its negation.
//! * `D(q,s)` / `C(q,p)`: the sorted quadruple `q` has crossing signature `s`,
//!   and the two edges of pairing `p` cross.
//! * `Ed`, `E`, `T`: empty-side bookkeeping.
//! * auxiliaries (cardinality counters, the constant false).

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::{DefaultHasher, Hash, Hasher};

use thiserror::Error;

use crate::catalog::CATALOG;
use crate::quad::{signature_bits, QuadKind, PAIRINGS, QUADS};
use crate::system::{for_each_subset, permutations, Edge, RotationSystem, Vertex};

pub type Lit = i32;

/// Which non-drawable configurations are excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Obstructions {
    /// Any pre-rotation system.
    None,
    /// Only the 4-element obstruction is excluded.
    Pi4Only,
    /// All three obstructions: exactly the drawable systems.
    Drawable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EncodeOptions {
    pub obstructions: Obstructions,
    pub convex: bool,
    pub hconvex: bool,
    /// Fix the row of the first vertex to `2, 3, ..., n`.
    pub natural: bool,
    pub crossing_vars: bool,
    /// Largest `n` for which Hamiltonian cycles are listed explicitly.
    pub hc_bound: usize,
    /// Largest `n` for the `2n-3` subdrawing block.
    pub hc2n3_bound: usize,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        EncodeOptions {
            obstructions: Obstructions::Drawable,
            convex: false,
            hconvex: false,
            natural: true,
            crossing_vars: false,
            hc_bound: 10,
            hc2n3_bound: 8,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EncodeError {
    #[error("n must be at least 3, got {0}")]
    TooSmall(usize),
    #[error("convexity constraints need the drawability obstructions")]
    ConvexWithoutDrawable,
    #[error("crossing variables need the 4-element obstruction excluded")]
    CrossingsWithoutPi4,
    #[error("{0} fixes vertex labels and cannot be combined with natural labeling")]
    NaturalConflict(&'static str),
    #[error("n = {n} exceeds the explicit enumeration bound {bound} of {block}")]
    TooLarge { block: &'static str, n: usize, bound: usize },
    #[error("matching size {k} out of range for n = {n}")]
    MatchingSize { k: usize, n: usize },
}

/// Symbolic name of a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKey {
    X { a: Vertex, i: usize, b: Vertex },
    Y { a: Vertex, b: Vertex, c: Vertex, d: Vertex },
    D { q: [Vertex; 4], sig: u8 },
    C { e: Edge, f: Edge },
    /// Vertex `d` is not inside side `side` (corners listed in side order).
    Ed { side: [Vertex; 3], d: Vertex },
    /// Side `side` is empty.
    E { side: [Vertex; 3] },
    /// Triangle `tri` has an empty side.
    T { tri: [Vertex; 3] },
    Aux { family: &'static str, id: usize },
}

impl VarKey {
    fn sidecar(&self) -> String {
        let l = |v: &Vertex| (v + 1).to_string();
        let join = |vs: &[Vertex]| vs.iter().map(l).collect::<Vec<_>>().join(" ");
        match self {
            VarKey::X { a, i, b } => format!("X {} {} {}", a + 1, i + 1, b + 1),
            VarKey::Y { a, b, c, d } => format!("Y {}", join(&[*a, *b, *c, *d])),
            VarKey::D { q, sig } => format!("D {} {}", join(q), sig),
            VarKey::C { e, f } => format!("C {}", join(&[e.u(), e.v(), f.u(), f.v()])),
            VarKey::Ed { side, d } => format!("Ed {} {}", join(side), d + 1),
            VarKey::E { side } => format!("E {}", join(side)),
            VarKey::T { tri } => format!("T {}", join(tri)),
            VarKey::Aux { family, id } => format!("aux {family} {id}"),
        }
    }
}

/// The non-drawable, non-convex and non-h-convex configurations to exclude.
#[derive(Clone, Debug, Default)]
pub struct ObstructionSet {
    pub not_drawable: Vec<RotationSystem>,
    pub not_convex: Vec<RotationSystem>,
    pub not_hconvex: Vec<RotationSystem>,
}

/// Bookkeeping for one constraint block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStat {
    pub name: String,
    /// Clauses produced by the block, duplicates included.
    pub generated: usize,
    /// Clauses actually added (new and not tautological).
    pub added: usize,
}

/// A CNF formula with a registry of symbolic variable names.
#[derive(Clone, Debug)]
pub struct CnfInstance {
    n: usize,
    opts: EncodeOptions,
    keys: Vec<VarKey>,
    index: HashMap<VarKey, u32>,
    x_base: Vec<u32>,
    y_base: Vec<u32>,
    d_base: Vec<u32>,
    lits: Vec<Lit>,
    offsets: Vec<usize>,
    seen: HashMap<u64, Vec<u32>>,
    blocks: Vec<BlockStat>,
    falsum: Option<u32>,
}

fn parity_sort3(mut t: [Vertex; 3]) -> ([Vertex; 3], bool) {
    let mut even = true;
    if t[0] > t[1] {
        t.swap(0, 1);
        even = !even;
    }
    if t[1] > t[2] {
        t.swap(1, 2);
        even = !even;
    }
    if t[0] > t[1] {
        t.swap(0, 1);
        even = !even;
    }
    (t, even)
}

/// Calls `f` with each undirected Hamiltonian cycle of `K_n` once, as a
/// vertex sequence starting at 0 whose second vertex is below its last.
pub fn for_each_hamiltonian_cycle(n: usize, f: &mut dyn FnMut(&[Vertex])) {
    let rest: Vec<Vertex> = (1..n).collect();
    let mut cyc = vec![0; n];
    permutations(&rest, &mut |p| {
        if p.len() >= 2 && p[0] > p[p.len() - 1] {
            return;
        }
        cyc[1..].copy_from_slice(p);
        f(&cyc);
    });
}

/// Edges of the cycle visiting `seq` in order.
pub fn cycle_edges(seq: &[Vertex]) -> Vec<Edge> {
    let n = seq.len();
    (0..n).map(|i| Edge::new(seq[i], seq[(i + 1) % n])).collect()
}

/// Every relabeling and reflection of `rs`, without repetitions.
pub fn labeled_orbit(rs: &RotationSystem) -> Vec<RotationSystem> {
    let k = rs.n();
    let ids: Vec<Vertex> = (0..k).collect();
    let mut out = Vec::new();
    let refl = rs.reflect();
    permutations(&ids, &mut |p| {
        out.push(rs.relabel(p).unwrap());
        out.push(refl.relabel(p).unwrap());
    });
    out.sort();
    out.dedup();
    out
}

impl CnfInstance {
    /// The base encoding with the obstructions of the bundled catalog.
    pub fn new(n: usize, opts: EncodeOptions) -> Result<Self, EncodeError> {
        Self::with_obstructions(n, opts, &CATALOG.obstruction_set())
    }

    /// The base encoding with explicitly given obstructions.
    pub fn with_obstructions(n: usize, mut opts: EncodeOptions, obs: &ObstructionSet) -> Result<Self, EncodeError> {
        if n < 3 {
            return Err(EncodeError::TooSmall(n));
        }
        if opts.hconvex {
            opts.convex = true;
        }
        if opts.convex && opts.obstructions != Obstructions::Drawable {
            return Err(EncodeError::ConvexWithoutDrawable);
        }
        if opts.crossing_vars && opts.obstructions == Obstructions::None {
            return Err(EncodeError::CrossingsWithoutPi4);
        }
        let mut inst = CnfInstance {
            n,
            opts,
            keys: Vec::new(),
            index: HashMap::new(),
            x_base: vec![0; n * n * n],
            y_base: vec![0; n * n * n * n],
            d_base: Vec::new(),
            lits: Vec::new(),
            offsets: vec![0],
            seen: HashMap::new(),
            blocks: Vec::new(),
            falsum: None,
        };
        inst.base_block();
        match opts.obstructions {
            Obstructions::None => {}
            Obstructions::Pi4Only => inst.pi4_block(),
            Obstructions::Drawable => {
                inst.pi4_block();
                inst.forbid_configurations("not-drawable", &obs.not_drawable);
            }
        }
        if opts.convex {
            inst.forbid_configurations("not-convex", &obs.not_convex);
        }
        if opts.hconvex {
            inst.forbid_configurations("not-hconvex", &obs.not_hconvex);
        }
        if opts.crossing_vars {
            inst.opts.crossing_vars = false;
            inst.add_crossing_vars()?;
        }
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn options(&self) -> &EncodeOptions {
        &self.opts
    }

    pub fn num_vars(&self) -> usize {
        self.keys.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn clause(&self, i: usize) -> &[Lit] {
        &self.lits[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn clauses(&self) -> impl Iterator<Item = &[Lit]> + '_ {
        (0..self.num_clauses()).map(move |i| self.clause(i))
    }

    pub fn blocks(&self) -> &[BlockStat] {
        &self.blocks
    }

    pub fn block(&self, name: &str) -> Option<&BlockStat> {
        self.blocks.iter().find(|b| b.name == name)
    }

    /// The key of variable `var` (1-based).
    pub fn key(&self, var: u32) -> VarKey {
        self.keys[var as usize - 1]
    }

    pub fn var(&self, key: &VarKey) -> Option<u32> {
        self.index.get(key).copied()
    }

    fn new_var(&mut self, key: VarKey) -> u32 {
        let v = self.keys.len() as u32 + 1;
        let old = self.index.insert(key, v);
        assert!(old.is_none(), "variable {key:?} registered twice");
        self.keys.push(key);
        v
    }

    /// A fresh auxiliary variable.
    pub fn new_aux(&mut self, family: &'static str) -> Lit {
        let id = self.keys.iter().filter(|k| matches!(k, VarKey::Aux { family: f, .. } if *f == family)).count();
        self.new_var(VarKey::Aux { family, id }) as Lit
    }

    fn begin_block(&mut self, name: impl Into<String>) {
        self.blocks.push(BlockStat { name: name.into(), generated: 0, added: 0 });
    }

    fn falsum(&mut self) -> Lit {
        if let Some(f) = self.falsum {
            return f as Lit;
        }
        let f = self.new_var(VarKey::Aux { family: "false", id: 0 });
        self.falsum = Some(f);
        self.push_clause(&[-(f as Lit)]);
        f as Lit
    }

    /// Adds a clause. Literals are sorted; duplicate literals, tautologies
    /// and exact duplicates of earlier clauses are dropped. An empty clause
    /// is stored as the unit clause of a constant-false variable.
    pub fn add_clause(&mut self, clause: &[Lit]) {
        if let Some(b) = self.blocks.last_mut() {
            b.generated += 1;
        }
        let mut c = clause.to_vec();
        for &l in &c {
            assert!(l != 0 && (l.unsigned_abs() as usize) <= self.keys.len(), "literal {l} not registered");
        }
        c.sort_unstable_by_key(|&l| (l.unsigned_abs(), l > 0));
        c.dedup();
        if c.windows(2).any(|w| w[0] == -w[1]) {
            return;
        }
        if c.is_empty() {
            let f = self.falsum();
            c.push(f);
        }
        if self.push_clause(&c) {
            if let Some(b) = self.blocks.last_mut() {
                b.added += 1;
            }
        }
    }

    fn push_clause(&mut self, c: &[Lit]) -> bool {
        let mut h = DefaultHasher::new();
        c.hash(&mut h);
        let h = h.finish();
        if let Some(idx) = self.seen.get(&h) {
            if idx.iter().any(|&i| self.clause(i as usize) == c) {
                return false;
            }
        }
        let id = self.num_clauses() as u32;
        self.lits.extend_from_slice(c);
        self.offsets.push(self.lits.len());
        self.seen.entry(h).or_default().push(id);
        true
    }

    // -----------------------------------------------------------------------
    // literals

    /// Literal of "position `i` of row `a` holds `b`".
    pub fn x(&self, a: Vertex, i: usize, b: Vertex) -> Lit {
        let n = self.n;
        self.x_base[(a * n + i) * n + b] as Lit
    }

    /// Literal of `ccw(a; b, c, d)`.
    pub fn ccw(&self, a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> Lit {
        let ([b, c, d], even) = parity_sort3([b, c, d]);
        let n = self.n;
        let v = self.y_base[((a * n + b) * n + c) * n + d] as Lit;
        debug_assert!(v > 0);
        if even {
            v
        } else {
            -v
        }
    }

    /// The four literals whose values form the signature of the sorted
    /// quadruple `q`.
    pub fn signature_lits(&self, q: [Vertex; 4]) -> [Lit; 4] {
        let [a, b, c, d] = q;
        [self.ccw(a, b, c, d), self.ccw(b, a, c, d), self.ccw(c, a, b, d), self.ccw(d, a, b, c)]
    }

    /// Literals that are all true exactly when `q` has signature `sig`.
    pub fn signature_pattern(&self, q: [Vertex; 4], sig: u8) -> [Lit; 4] {
        let lits = self.signature_lits(q);
        let bits = signature_bits(sig);
        std::array::from_fn(|i| if bits[i] { lits[i] } else { -lits[i] })
    }

    fn quad_rank(&self, q: [Vertex; 4]) -> usize {
        let n = self.n;
        ((q[0] * n + q[1]) * n + q[2]) * n + q[3]
    }

    /// Literal of "edges `e` and `f` cross". Needs crossing variables.
    pub fn crossing(&self, e: Edge, f: Edge) -> Lit {
        assert!(e.is_independent(f));
        assert!(!self.d_base.is_empty(), "crossing variables not present");
        let mut q = [e.u(), e.v(), f.u(), f.v()];
        q.sort_unstable();
        let pos = |x: Vertex| q.iter().position(|&y| y == x).unwrap();
        let p = crate::quad::pairing_index([pos(e.u()), pos(e.v())], [pos(f.u()), pos(f.v())]).unwrap();
        (self.d_base[self.quad_rank(q)] + 6 + p as u32) as Lit
    }

    pub fn has_crossing_vars(&self) -> bool {
        !self.d_base.is_empty()
    }

    // -----------------------------------------------------------------------
    // base encoding

    fn base_block(&mut self) {
        let n = self.n;
        let m = n - 1;
        for a in 0..n {
            for i in 0..m {
                for b in (0..n).filter(|&b| b != a) {
                    let v = self.new_var(VarKey::X { a, i, b });
                    self.x_base[(a * n + i) * n + b] = v;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if a != b && a != c && a != d {
                            let v = self.new_var(VarKey::Y { a, b, c, d });
                            self.y_base[((a * n + b) * n + c) * n + d] = v;
                        }
                    }
                }
            }
        }
        self.begin_block("rows");
        for a in 0..n {
            let others: Vec<Vertex> = (0..n).filter(|&b| b != a).collect();
            for i in 0..m {
                let lits: Vec<Lit> = others.iter().map(|&b| self.x(a, i, b)).collect();
                self.exactly_one(&lits);
            }
            for &b in &others {
                let lits: Vec<Lit> = (0..m).map(|i| self.x(a, i, b)).collect();
                self.exactly_one(&lits);
            }
        }
        self.begin_block("normalization");
        self.add_clause(&[self.x(0, 0, 1)]);
        for k in 1..n {
            self.add_clause(&[self.x(k, 0, 0)]);
        }
        if self.opts.natural {
            self.begin_block("natural");
            for i in 0..m {
                self.add_clause(&[self.x(0, i, i + 1)]);
            }
        }
        self.begin_block("orientation");
        for a in 0..n {
            let others: Vec<Vertex> = (0..n).filter(|&b| b != a).collect();
            for i in 0..m {
                for j in i + 1..m {
                    for k in j + 1..m {
                        for &b in &others {
                            for &c in &others {
                                if c == b {
                                    continue;
                                }
                                for &d in &others {
                                    if d == b || d == c {
                                        continue;
                                    }
                                    let clause =
                                        [-self.x(a, i, b), -self.x(a, j, c), -self.x(a, k, d), self.ccw(a, b, c, d)];
                                    self.add_clause(&clause);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    fn exactly_one(&mut self, lits: &[Lit]) {
        self.add_clause(lits);
        for (i, &p) in lits.iter().enumerate() {
            for &q in &lits[i + 1..] {
                self.add_clause(&[-p, -q]);
            }
        }
    }

    fn pi4_block(&mut self) {
        self.begin_block("pi4");
        let bad = QUADS.obstruction_signatures();
        for_each_subset(self.n, 4, &mut |s| {
            let q = [s[0], s[1], s[2], s[3]];
            for &sig in &bad {
                let pat = self.signature_pattern(q, sig);
                let clause: Vec<Lit> = pat.iter().map(|l| -l).collect();
                self.add_clause(&clause);
            }
        });
    }

    /// Forbids every configuration isomorphic (up to reflection) to one of
    /// `configs` on every vertex subset.
    fn forbid_configurations(&mut self, name: &str, configs: &[RotationSystem]) {
        self.begin_block(name);
        for obs in configs {
            let k = obs.n();
            if k > self.n {
                continue;
            }
            let orbit = labeled_orbit(obs);
            // (local a, local b<c<d) triples of each row
            let mut triples = Vec::new();
            for a in 0..k {
                let others: Vec<Vertex> = (0..k).filter(|&x| x != a).collect();
                for (i, &b) in others.iter().enumerate() {
                    for (j, &c) in others.iter().enumerate().skip(i + 1) {
                        for &d in &others[j + 1..] {
                            triples.push([a, b, c, d]);
                        }
                    }
                }
            }
            let values: Vec<Vec<bool>> =
                orbit.iter().map(|l| triples.iter().map(|&[a, b, c, d]| l.ccw(a, b, c, d)).collect()).collect();
            for_each_subset(self.n, k, &mut |s| {
                let lits: Vec<Lit> = triples.iter().map(|&[a, b, c, d]| self.ccw(s[a], s[b], s[c], s[d])).collect();
                for vals in &values {
                    let clause: Vec<Lit> = lits.iter().zip(vals).map(|(&l, &v)| if v { -l } else { l }).collect();
                    self.add_clause(&clause);
                }
            });
        }
    }

    /// Fixes the whole system to `rs` with unit clauses on `X`.
    pub fn assert_system(&mut self, rs: &RotationSystem) {
        assert_eq!(rs.n(), self.n);
        self.begin_block("fixed-system");
        for a in 0..self.n {
            for (i, &b) in rs.row(a).iter().enumerate() {
                self.add_clause(&[self.x(a, i, b)]);
            }
        }
    }

    // -----------------------------------------------------------------------
    // crossings

    /// Adds `D` and `C` variables tied to the orientation variables.
    pub fn add_crossing_vars(&mut self) -> Result<(), EncodeError> {
        if self.has_crossing_vars() {
            return Ok(());
        }
        if self.opts.obstructions == Obstructions::None {
            return Err(EncodeError::CrossingsWithoutPi4);
        }
        let n = self.n;
        self.d_base = vec![0; n * n * n * n];
        let mut quads = Vec::new();
        for_each_subset(n, 4, &mut |s| quads.push([s[0], s[1], s[2], s[3]]));
        let crossing_sigs: Vec<(usize, [u8; 2])> = (0..3).map(|p| (p, QUADS.crossing_signatures(p))).collect();
        for &q in &quads {
            let rank = self.quad_rank(q);
            let mut first = 0;
            for &(_, sigs) in &crossing_sigs {
                for sig in sigs {
                    let v = self.new_var(VarKey::D { q, sig });
                    if first == 0 {
                        first = v;
                    }
                }
            }
            for [e, f] in PAIRINGS {
                self.new_var(VarKey::C { e: Edge::new(q[e[0]], q[e[1]]), f: Edge::new(q[f[0]], q[f[1]]) });
            }
            self.d_base[rank] = first;
        }
        self.begin_block("crossings");
        for &q in &quads {
            let base = self.d_base[self.quad_rank(q)] as Lit;
            for &(p, sigs) in &crossing_sigs {
                let c = base + 6 + p as Lit;
                let ds = [base + 2 * p as Lit, base + 2 * p as Lit + 1];
                for (k, &sig) in sigs.iter().enumerate() {
                    debug_assert!(matches!(QUADS.kind(sig), QuadKind::Crossing { pairing, .. } if pairing as usize == p));
                    let d = ds[k];
                    let pat = self.signature_pattern(q, sig);
                    for &l in &pat {
                        self.add_clause(&[-d, l]);
                    }
                    let mut back: Vec<Lit> = pat.iter().map(|l| -l).collect();
                    back.push(d);
                    self.add_clause(&back);
                    self.add_clause(&[-d, c]);
                }
                self.add_clause(&[-c, ds[0], ds[1]]);
            }
        }
        self.opts.crossing_vars = true;
        Ok(())
    }

    /// Literals of all crossings among independent pairs of `edges`.
    fn crossings_within(&self, edges: &[Edge]) -> Vec<Lit> {
        let mut out = Vec::new();
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                if e.is_independent(f) {
                    out.push(self.crossing(e, f));
                }
            }
        }
        out
    }

    fn require_crossings(&mut self) -> Result<(), EncodeError> {
        self.add_crossing_vars()
    }

    // -----------------------------------------------------------------------
    // plane substructure blocks

    /// Every Hamiltonian cycle has a crossing.
    pub fn forbid_plane_hamiltonian_cycle(&mut self) -> Result<(), EncodeError> {
        let n = self.n;
        if n > self.opts.hc_bound {
            return Err(EncodeError::TooLarge { block: "forbid-hc", n, bound: self.opts.hc_bound });
        }
        self.require_crossings()?;
        self.begin_block("forbid-hc");
        for_each_hamiltonian_cycle(n, &mut |cyc| {
            let clause = self.crossings_within(&cycle_edges(cyc));
            self.add_clause(&clause);
        });
        Ok(())
    }

    /// Every set of `2n-3` edges containing a Hamiltonian cycle has a
    /// crossing.
    pub fn forbid_plane_hamiltonian_2n3(&mut self) -> Result<(), EncodeError> {
        let n = self.n;
        if n > self.opts.hc2n3_bound {
            return Err(EncodeError::TooLarge { block: "forbid-hc-2n3", n, bound: self.opts.hc2n3_bound });
        }
        self.require_crossings()?;
        self.begin_block("forbid-hc-2n3");
        let all = crate::predicates::all_edges(n);
        for_each_hamiltonian_cycle(n, &mut |cyc| {
            let cycle = cycle_edges(cyc);
            let rest: Vec<Edge> = all.iter().copied().filter(|e| !cycle.contains(e)).collect();
            let base = self.crossings_within(&cycle);
            for_each_subset(rest.len(), n - 3, &mut |s| {
                let mut clause = base.clone();
                for (i, &a) in s.iter().enumerate() {
                    let e = rest[a];
                    for &f in &cycle {
                        if e.is_independent(f) {
                            clause.push(self.crossing(e, f));
                        }
                    }
                    for &b in &s[i + 1..] {
                        if e.is_independent(rest[b]) {
                            clause.push(self.crossing(e, rest[b]));
                        }
                    }
                }
                self.add_clause(&clause);
            });
        });
        Ok(())
    }

    /// The cycle `1, 2, ..., n` is plane, but no `n-3` further edges extend
    /// it to a plane subdrawing.
    pub fn assert_unextendable_fixed_hc(&mut self) -> Result<(), EncodeError> {
        if self.opts.natural {
            return Err(EncodeError::NaturalConflict("the fixed-cycle block"));
        }
        let n = self.n;
        if n > self.opts.hc2n3_bound {
            return Err(EncodeError::TooLarge { block: "unextendable-hc", n, bound: self.opts.hc2n3_bound });
        }
        self.require_crossings()?;
        self.begin_block("unextendable-hc");
        let seq: Vec<Vertex> = (0..n).collect();
        let cycle = cycle_edges(&seq);
        for l in self.crossings_within(&cycle) {
            self.add_clause(&[-l]);
        }
        let rest: Vec<Edge> =
            crate::predicates::all_edges(n).into_iter().filter(|e| !cycle.contains(e)).collect();
        for_each_subset(rest.len(), n - 3, &mut |s| {
            let mut clause = Vec::new();
            for (i, &a) in s.iter().enumerate() {
                let e = rest[a];
                for &f in &cycle {
                    if e.is_independent(f) {
                        clause.push(self.crossing(e, f));
                    }
                }
                for &b in &s[i + 1..] {
                    if e.is_independent(rest[b]) {
                        clause.push(self.crossing(e, rest[b]));
                    }
                }
            }
            self.add_clause(&clause);
        });
        Ok(())
    }

    /// The matching `{1,2}, ..., {2k-1,2k}` is plane and every Hamiltonian
    /// cycle together with it has a crossing.
    pub fn assert_matching_unavoidable(&mut self, k: usize) -> Result<(), EncodeError> {
        let n = self.n;
        if 2 * k > n {
            return Err(EncodeError::MatchingSize { k, n });
        }
        if self.opts.natural {
            return Err(EncodeError::NaturalConflict("the matching block"));
        }
        if n > self.opts.hc_bound {
            return Err(EncodeError::TooLarge { block: "matching", n, bound: self.opts.hc_bound });
        }
        self.require_crossings()?;
        self.begin_block("matching");
        let matching: Vec<Edge> = (0..k).map(|i| Edge::new(2 * i, 2 * i + 1)).collect();
        for l in self.crossings_within(&matching) {
            self.add_clause(&[-l]);
        }
        for_each_hamiltonian_cycle(n, &mut |cyc| {
            let cycle = cycle_edges(cyc);
            let mut clause = self.crossings_within(&cycle);
            for &e in &cycle {
                for &f in &matching {
                    if e.is_independent(f) {
                        clause.push(self.crossing(e, f));
                    }
                }
            }
            self.add_clause(&clause);
        });
        // without loss of generality, around vertex 1
        self.begin_block("matching-symmetry");
        let sees = |s: &Self, u: Vertex, v: Vertex| s.ccw(0, 1, u, v);
        let touches = |e: &Edge| e.contains(0) || e.contains(1);
        for e in matching.iter().filter(|e| !touches(e)) {
            let l = sees(self, e.u(), e.v());
            self.add_clause(&[l]);
        }
        for (i, e) in matching.iter().enumerate() {
            for f in &matching[i + 1..] {
                if touches(e) || touches(f) {
                    continue;
                }
                let l = sees(self, e.u(), f.v());
                self.add_clause(&[l]);
            }
        }
        let free: Vec<Vertex> = (2 * k..n).filter(|&x| x > 1).collect();
        for (i, &x) in free.iter().enumerate() {
            for &y in &free[i + 1..] {
                let l = sees(self, x, y);
                self.add_clause(&[l]);
            }
        }
        Ok(())
    }

    /// Every edge is crossed.
    pub fn assert_all_edges_crossed(&mut self) -> Result<(), EncodeError> {
        self.require_crossings()?;
        self.begin_block("all-edges-crossed");
        let all = crate::predicates::all_edges(self.n);
        for &e in &all {
            let clause: Vec<Lit> =
                all.iter().filter(|f| e.is_independent(**f)).map(|&f| self.crossing(e, f)).collect();
            self.add_clause(&clause);
        }
        Ok(())
    }

    // -----------------------------------------------------------------------
    // empty triangles

    /// Adds the empty-side variables (once) and returns the per-triangle
    /// indicators `T`.
    pub fn empty_triangle_indicators(&mut self) -> Result<Vec<Lit>, EncodeError> {
        if self.opts.obstructions == Obstructions::None {
            return Err(EncodeError::CrossingsWithoutPi4);
        }
        let n = self.n;
        let mut tris = Vec::new();
        for_each_subset(n, 3, &mut |t| tris.push([t[0], t[1], t[2]]));
        if let Some(first) = self.var(&VarKey::T { tri: tris[0] }) {
            return Ok((0..tris.len()).map(|i| first as Lit + i as Lit).collect());
        }
        let sides = |t: [Vertex; 3]| [t, [t[0], t[2], t[1]]];
        for &t in &tris {
            for side in sides(t) {
                for d in (0..n).filter(|d| !t.contains(d)) {
                    self.new_var(VarKey::Ed { side, d });
                }
            }
        }
        for &t in &tris {
            for side in sides(t) {
                self.new_var(VarKey::E { side });
            }
        }
        let indicators: Vec<Lit> = tris.iter().map(|&tri| self.new_var(VarKey::T { tri }) as Lit).collect();
        self.begin_block("empty-triangles");
        let drawable: Vec<u8> = (0..16).filter(|&s| QUADS.kind(s) != QuadKind::Obstruction).collect();
        for (ti, &t) in tris.iter().enumerate() {
            let mut side_lits = Vec::new();
            for (o, side) in sides(t).into_iter().enumerate() {
                let mut eds = Vec::new();
                for d in (0..n).filter(|d| !t.contains(d)) {
                    let ed = self.var(&VarKey::Ed { side, d }).unwrap() as Lit;
                    eds.push(ed);
                    let mut q = [t[0], t[1], t[2], d];
                    q.sort_unstable();
                    let m = q.iter().position(|&x| x == d).unwrap();
                    for &sig in &drawable {
                        // inside the side from which the sorted corners read counterclockwise
                        let inside = QUADS.in_ccw_side(sig, m) == (o == 0);
                        let mut clause: Vec<Lit> = self.signature_pattern(q, sig).iter().map(|l| -l).collect();
                        clause.push(if inside { -ed } else { ed });
                        self.add_clause(&clause);
                    }
                }
                let e = self.var(&VarKey::E { side }).unwrap() as Lit;
                for &ed in &eds {
                    self.add_clause(&[-e, ed]);
                }
                let mut back: Vec<Lit> = eds.iter().map(|l| -l).collect();
                back.push(e);
                self.add_clause(&back);
                side_lits.push(e);
            }
            let tv = indicators[ti];
            self.add_clause(&[-tv, side_lits[0], side_lits[1]]);
            self.add_clause(&[-side_lits[0], tv]);
            self.add_clause(&[-side_lits[1], tv]);
        }
        Ok(indicators)
    }

    /// At most `k` triangles have an empty side.
    pub fn assert_empty_triangles_atmost(&mut self, k: usize) -> Result<(), EncodeError> {
        self.require_crossings()?;
        let ts = self.empty_triangle_indicators()?;
        self.begin_block("empty-atmost");
        self.cardinality_atmost(&ts, k);
        Ok(())
    }

    /// Sequential-counter encoding of "at most `k` of `lits` are true".
    pub fn cardinality_atmost(&mut self, lits: &[Lit], k: usize) {
        let m = lits.len();
        if k >= m {
            return;
        }
        if k == 0 {
            for &l in lits {
                self.add_clause(&[-l]);
            }
            return;
        }
        // s[i][j]: at least j+1 of the first i+1 literals are true
        let s: Vec<Vec<Lit>> = (0..m - 1).map(|_| (0..k).map(|_| self.new_aux("counter")).collect()).collect();
        self.add_clause(&[-lits[0], s[0][0]]);
        for j in 1..k {
            self.add_clause(&[-s[0][j]]);
        }
        for i in 1..m - 1 {
            self.add_clause(&[-lits[i], s[i][0]]);
            self.add_clause(&[-s[i - 1][0], s[i][0]]);
            for j in 1..k {
                self.add_clause(&[-lits[i], -s[i - 1][j - 1], s[i][j]]);
                self.add_clause(&[-s[i - 1][j], s[i][j]]);
            }
            self.add_clause(&[-lits[i], -s[i - 1][k - 1]]);
        }
        self.add_clause(&[-lits[m - 1], -s[m - 2][k - 1]]);
    }

    // -----------------------------------------------------------------------
    // output

    /// DIMACS text: `c key=value` comments, header, one clause per line.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let o = &self.opts;
        let _ = writeln!(out, "c n={}", self.n);
        let _ = writeln!(out, "c obstructions={:?}", o.obstructions);
        let _ = writeln!(out, "c convex={}", o.convex);
        let _ = writeln!(out, "c hconvex={}", o.hconvex);
        let _ = writeln!(out, "c natural={}", o.natural);
        let _ = writeln!(out, "c crossings={}", o.crossing_vars);
        let names: Vec<&str> = self.blocks.iter().map(|b| b.name.as_str()).collect();
        let _ = writeln!(out, "c blocks={}", names.join(","));
        let _ = writeln!(out, "p cnf {} {}", self.num_vars(), self.num_clauses());
        for c in self.clauses() {
            for l in c {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }

    /// One line per variable: `index family indices...` (1-based labels).
    pub fn variable_map(&self) -> String {
        let mut out = String::new();
        for (i, k) in self.keys.iter().enumerate() {
            let _ = writeln!(out, "{} {}", i + 1, k.sidecar());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_opts() -> EncodeOptions {
        EncodeOptions { obstructions: Obstructions::Pi4Only, ..EncodeOptions::default() }
    }

    #[test]
    fn ccw_literals_follow_permutation_parity() {
        let inst = CnfInstance::new(5, tiny_opts()).unwrap();
        let l = inst.ccw(0, 1, 2, 3);
        assert!(l > 0);
        assert_eq!(inst.ccw(0, 2, 3, 1), l);
        assert_eq!(inst.ccw(0, 3, 1, 2), l);
        assert_eq!(inst.ccw(0, 1, 3, 2), -l);
        assert_eq!(inst.ccw(0, 3, 2, 1), -l);
    }

    #[test]
    fn registry_is_dense_and_injective() {
        let inst = CnfInstance::new(5, EncodeOptions { crossing_vars: true, ..EncodeOptions::default() }).unwrap();
        for v in 1..=inst.num_vars() as u32 {
            assert_eq!(inst.var(&inst.key(v)), Some(v));
        }
        // X block first, then Y, then D/C
        assert!(matches!(inst.key(1), VarKey::X { .. }));
        assert!(matches!(inst.key(5 * 4 * 4 + 1), VarKey::Y { .. }));
        assert!(matches!(inst.key(5 * 4 * 4 + 5 * 4 + 1), VarKey::D { .. }));
    }

    #[test]
    fn duplicate_and_tautological_clauses_are_dropped() {
        let mut inst = CnfInstance::new(3, tiny_opts()).unwrap();
        let before = inst.num_clauses();
        assert!(inst.clauses().all(|c| c != [-1, -2, -3, -4]));
        inst.add_clause(&[-4, -3, -2, -1]);
        inst.add_clause(&[-2, -1, -3, -4, -2]);
        inst.add_clause(&[1, 2]);
        inst.add_clause(&[1, -1]);
        assert_eq!(inst.num_clauses(), before + 1);
        assert!(inst.clauses().all(|c| !c.is_empty()));
    }

    #[test]
    fn empty_clause_becomes_falsum() {
        let mut inst = CnfInstance::new(3, tiny_opts()).unwrap();
        inst.forbid_plane_hamiltonian_cycle().unwrap();
        assert!(inst.clauses().all(|c| !c.is_empty()));
        let f = inst.var(&VarKey::Aux { family: "false", id: 0 }).unwrap() as Lit;
        assert!(inst.clauses().any(|c| c == [f]));
        assert!(inst.clauses().any(|c| c == [-f]));
    }

    #[test]
    fn option_validation() {
        let bad = EncodeOptions { obstructions: Obstructions::Pi4Only, convex: true, ..EncodeOptions::default() };
        assert_eq!(CnfInstance::new(5, bad).unwrap_err(), EncodeError::ConvexWithoutDrawable);
        let h = CnfInstance::new(5, EncodeOptions { hconvex: true, ..EncodeOptions::default() }).unwrap();
        assert!(h.options().convex);
        let mut nat = CnfInstance::new(5, EncodeOptions::default()).unwrap();
        assert!(matches!(nat.assert_unextendable_fixed_hc(), Err(EncodeError::NaturalConflict(_))));
        let mut m = CnfInstance::new(5, EncodeOptions { natural: false, ..EncodeOptions::default() }).unwrap();
        assert_eq!(m.assert_matching_unavoidable(3), Err(EncodeError::MatchingSize { k: 3, n: 5 }));
        assert_eq!(CnfInstance::new(2, EncodeOptions::default()).unwrap_err(), EncodeError::TooSmall(2));
        let none = EncodeOptions { obstructions: Obstructions::None, crossing_vars: true, ..EncodeOptions::default() };
        assert_eq!(CnfInstance::new(4, none).unwrap_err(), EncodeError::CrossingsWithoutPi4);
    }

    #[test]
    fn hamiltonian_cycles_are_listed_once() {
        let mut count = 0;
        for_each_hamiltonian_cycle(6, &mut |_| count += 1);
        assert_eq!(count, 60);
        let mut count = 0;
        for_each_hamiltonian_cycle(3, &mut |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn block_2n3_generates_one_clause_per_cycle_and_complement() {
        let mut inst = CnfInstance::new(5, EncodeOptions::default()).unwrap();
        inst.forbid_plane_hamiltonian_2n3().unwrap();
        assert_eq!(inst.block("forbid-hc-2n3").unwrap().generated, 120);
    }

    #[test]
    fn explicit_bounds_are_enforced() {
        let mut inst = CnfInstance::new(9, EncodeOptions::default()).unwrap();
        assert!(matches!(inst.forbid_plane_hamiltonian_2n3(), Err(EncodeError::TooLarge { .. })));
    }

    #[test]
    fn dimacs_header_matches_registry() {
        let inst = CnfInstance::new(4, EncodeOptions::default()).unwrap();
        let text = inst.to_dimacs();
        let header = text.lines().find(|l| l.starts_with("p cnf")).unwrap();
        assert_eq!(header, format!("p cnf {} {}", inst.num_vars(), inst.num_clauses()));
        assert!(text.contains("c n=4"));
        assert_eq!(inst.variable_map().lines().count(), inst.num_vars());
        assert!(inst.variable_map().starts_with("1 X 1 1 2\n"));
    }
}
