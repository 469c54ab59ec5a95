//! The rotation system type and the label-level transforms on it.
//!
//! Vertices are `0..n` inside the library. Anything that faces a user (JSON
//! corpora, the CLI, `Display`) speaks the conventional 1-based labels.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A vertex index in `0..n`.
pub type Vertex = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SystemError {
    #[error("a rotation system needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("expected {expected} rows, got {got}")]
    RowCount { expected: usize, got: usize },
    #[error("row of vertex {vertex} is not a permutation of the other vertices")]
    BadRow { vertex: usize },
    #[error("relabeling is not a bijection on 0..{0}")]
    BadPermutation(usize),
    #[error("subset must contain at least 3 distinct vertices below {n}")]
    BadSubset { n: usize },
}

/// An edge of `K_n`, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    /// Builds an edge from 1-based labels.
    pub fn labeled(a: usize, b: usize) -> Self {
        Edge::new(a - 1, b - 1)
    }

    pub fn u(self) -> Vertex {
        self.0
    }

    pub fn v(self) -> Vertex {
        self.1
    }

    pub fn contains(self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }

    pub fn is_independent(self, other: Edge) -> bool {
        !other.contains(self.0) && !other.contains(self.1)
    }

    pub fn other(self, x: Vertex) -> Vertex {
        if x == self.0 {
            self.1
        } else {
            debug_assert_eq!(x, self.1);
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0 + 1, self.1 + 1)
    }
}

/// A (pre-)rotation system on `n` vertices.
///
/// Row `v` lists the other `n - 1` vertices in counterclockwise order around
/// `v`, rotated so that it starts with its smallest entry. Nothing here
/// guarantees that the system is drawable; see [`crate::predicates`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RotationSystem {
    n: usize,
    rows: Vec<Vertex>,
    pos: Vec<usize>,
}

impl RotationSystem {
    /// Builds a system from 0-based rows, normalizing each row.
    pub fn from_rows<R: AsRef<[Vertex]>>(rows: &[R]) -> Result<Self, SystemError> {
        let n = rows.len();
        if n < 3 {
            return Err(SystemError::TooSmall(n));
        }
        let mut flat = Vec::with_capacity(n * (n - 1));
        for (v, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            let mut seen = vec![false; n];
            seen[v] = true;
            if row.len() != n - 1 {
                return Err(SystemError::BadRow { vertex: v });
            }
            for &u in row {
                if u >= n || seen[u] {
                    return Err(SystemError::BadRow { vertex: v });
                }
                seen[u] = true;
            }
            let start = row.iter().enumerate().min_by_key(|&(_, &u)| u).unwrap().0;
            flat.extend(row[start..].iter().chain(&row[..start]));
        }
        Ok(Self::from_normalized(n, flat))
    }

    /// Builds a system from 1-based rows, as printed in the literature.
    pub fn from_labels<R: AsRef<[usize]>>(n: usize, rows: &[R]) -> Result<Self, SystemError> {
        if n < 3 {
            return Err(SystemError::TooSmall(n));
        }
        if rows.len() != n {
            return Err(SystemError::RowCount { expected: n, got: rows.len() });
        }
        let shifted = rows
            .iter()
            .enumerate()
            .map(|(v, r)| {
                r.as_ref()
                    .iter()
                    .map(|&x| x.checked_sub(1).ok_or(SystemError::BadRow { vertex: v }))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(&shifted)
    }

    fn from_normalized(n: usize, rows: Vec<Vertex>) -> Self {
        let mut pos = vec![usize::MAX; n * n];
        for v in 0..n {
            for (i, &u) in rows[v * (n - 1)..(v + 1) * (n - 1)].iter().enumerate() {
                pos[v * n + u] = i;
            }
        }
        RotationSystem { n, rows, pos }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, v: Vertex) -> &[Vertex] {
        &self.rows[v * (self.n - 1)..(v + 1) * (self.n - 1)]
    }

    /// The concatenation of all rows (the vector compared lexicographically
    /// when choosing canonical representatives).
    pub fn as_vector(&self) -> &[Vertex] {
        &self.rows
    }

    /// Index of `u` in the row of `v`.
    pub fn position(&self, v: Vertex, u: Vertex) -> usize {
        debug_assert_ne!(u, v);
        self.pos[v * self.n + u]
    }

    /// Whether `b, c, d` appear in counterclockwise order around `a`.
    pub fn ccw(&self, a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> bool {
        debug_assert!(a != b && a != c && a != d && b != c && b != d && c != d);
        let (i, j, k) = (self.position(a, b), self.position(a, c), self.position(a, d));
        (i < j && j < k) || (k < i && i < j) || (j < k && k < i)
    }

    /// Checked variant of [`Self::ccw`].
    pub fn try_ccw(&self, a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> Option<bool> {
        let q = [a, b, c, d];
        for (i, &x) in q.iter().enumerate() {
            if x >= self.n || q[..i].contains(&x) {
                return None;
            }
        }
        Some(self.ccw(a, b, c, d))
    }

    /// The sub-configuration induced by `subset`, relabeled `0..k` in
    /// increasing vertex order.
    pub fn induced(&self, subset: &[Vertex]) -> Result<Self, SystemError> {
        let mut verts = subset.to_vec();
        verts.sort_unstable();
        verts.dedup();
        if verts.len() < 3 || verts.iter().any(|&v| v >= self.n) {
            return Err(SystemError::BadSubset { n: self.n });
        }
        let k = verts.len();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let mut rows = Vec::with_capacity(k * (k - 1));
        for &v in &verts {
            let start = rows.len();
            rows.extend(self.row(v).iter().map(|&u| local[u]).filter(|&x| x != usize::MAX));
            let min_at = (start..rows.len()).min_by_key(|&i| rows[i]).unwrap();
            rows[start..].rotate_left(min_at - start);
        }
        Ok(Self::from_normalized(k, rows))
    }

    /// Reverses every cyclic order.
    pub fn reflect(&self) -> Self {
        let m = self.n - 1;
        let mut rows = Vec::with_capacity(self.rows.len());
        for v in 0..self.n {
            let row = self.row(v);
            rows.push(row[0]);
            rows.extend(row[1..].iter().rev());
        }
        debug_assert_eq!(rows.len(), self.n * m);
        Self::from_normalized(self.n, rows)
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self, SystemError> {
        let n = self.n;
        if perm.len() != n {
            return Err(SystemError::BadPermutation(n));
        }
        let mut inv = vec![usize::MAX; n];
        for (v, &p) in perm.iter().enumerate() {
            if p >= n || inv[p] != usize::MAX {
                return Err(SystemError::BadPermutation(n));
            }
            inv[p] = v;
        }
        Ok(self.relabel_unchecked(perm, &inv, false))
    }

    fn relabel_unchecked(&self, perm: &[Vertex], inv: &[Vertex], reverse: bool) -> Self {
        let n = self.n;
        let m = n - 1;
        let mut rows = vec![0; n * m];
        let mut buf = vec![0; m];
        for new_v in 0..n {
            let old = self.row(inv[new_v]);
            for (slot, &u) in buf.iter_mut().zip(old) {
                *slot = perm[u];
            }
            if reverse {
                buf[1..].reverse();
            }
            let start = buf.iter().enumerate().min_by_key(|&(_, &u)| u).unwrap().0;
            let out = &mut rows[new_v * m..(new_v + 1) * m];
            out[..m - start].copy_from_slice(&buf[start..]);
            out[m - start..].copy_from_slice(&buf[..start]);
        }
        Self::from_normalized(n, rows)
    }

    /// The natural relabeling determined by `first` and `second`: `first`
    /// becomes 0 and its row, read from `second` onwards (backwards when
    /// `reverse` is set), becomes `1, 2, ..., n-1`.
    fn natural_perm(&self, first: Vertex, second: Vertex, reverse: bool, perm: &mut [Vertex]) {
        let m = self.n - 1;
        let row = self.row(first);
        let p = self.position(first, second);
        perm[first] = 0;
        for k in 0..m {
            let idx = if reverse { (p + m - k) % m } else { (p + k) % m };
            perm[row[idx]] = k + 1;
        }
    }

    /// Compares the relabeled vector against `best` row by row, stopping
    /// as soon as the outcome is decided.
    fn compare_relabeled(&self, perm: &[Vertex], inv: &[Vertex], reverse: bool, best: &[Vertex], buf: &mut [Vertex]) -> Ordering {
        let m = self.n - 1;
        for new_v in 0..self.n {
            let old = self.row(inv[new_v]);
            for (slot, &u) in buf.iter_mut().zip(old) {
                *slot = perm[u];
            }
            if reverse {
                buf[1..].reverse();
            }
            let start = buf.iter().enumerate().min_by_key(|&(_, &u)| u).unwrap().0;
            let target = &best[new_v * m..(new_v + 1) * m];
            let rotated = buf[start..].iter().chain(&buf[..start]);
            for (x, y) in rotated.zip(target) {
                match x.cmp(y) {
                    Ordering::Equal => {}
                    other => return other,
                }
            }
        }
        Ordering::Equal
    }

    /// Lexicographically minimal representative over all relabelings and
    /// the reflection.
    ///
    /// Only the `2n(n-1)` natural relabelings can be minimal, so those are
    /// the only candidates tried.
    pub fn canonical_form(&self) -> Self {
        let n = self.n;
        let mut perm = vec![0; n];
        let mut inv = vec![0; n];
        let mut buf = vec![0; n - 1];
        let mut best: Option<Self> = None;
        for reverse in [false, true] {
            for first in 0..n {
                for &second in self.row(first) {
                    self.natural_perm(first, second, reverse, &mut perm);
                    for (v, &p) in perm.iter().enumerate() {
                        inv[p] = v;
                    }
                    let better = match &best {
                        None => true,
                        Some(b) => self.compare_relabeled(&perm, &inv, reverse, &b.rows, &mut buf) == Ordering::Less,
                    };
                    if better {
                        best = Some(self.relabel_unchecked(&perm, &inv, reverse));
                    }
                }
            }
        }
        best.unwrap()
    }

    pub fn is_canonical(&self) -> bool {
        let n = self.n;
        let mut perm = vec![0; n];
        let mut inv = vec![0; n];
        let mut buf = vec![0; n - 1];
        for reverse in [false, true] {
            for first in 0..n {
                for &second in self.row(first) {
                    self.natural_perm(first, second, reverse, &mut perm);
                    for (v, &p) in perm.iter().enumerate() {
                        inv[p] = v;
                    }
                    if self.compare_relabeled(&perm, &inv, reverse, &self.rows, &mut buf) == Ordering::Less {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether row 0 is `1, 2, ..., n-1`.
    pub fn is_natural(&self) -> bool {
        self.row(0).iter().enumerate().all(|(i, &u)| u == i + 1)
    }

    /// Every distinct natural relabeling (and reflected relabeling) of this
    /// system, i.e. the naturally labeled members of its isomorphism class.
    pub fn natural_relabelings(&self) -> Vec<Self> {
        let n = self.n;
        let mut perm = vec![0; n];
        let mut inv = vec![0; n];
        let mut out: Vec<Self> = Vec::new();
        for reverse in [false, true] {
            for first in 0..n {
                for &second in self.row(first) {
                    self.natural_perm(first, second, reverse, &mut perm);
                    for (v, &p) in perm.iter().enumerate() {
                        inv[p] = v;
                    }
                    out.push(self.relabel_unchecked(&perm, &inv, reverse));
                }
            }
        }
        out.sort_by(|a, b| a.rows.cmp(&b.rows));
        out.dedup();
        out
    }

    /// Rows as 1-based labels.
    pub fn to_labels(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.row(v).iter().map(|&u| u + 1).collect()).collect()
    }
}

impl fmt::Debug for RotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RotationSystem{:?}", self.to_labels())
    }
}

impl fmt::Display for RotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.n {
            let row: Vec<String> = self.row(v).iter().map(|u| (u + 1).to_string()).collect();
            writeln!(f, "{}: {}", v + 1, row.join(" "))?;
        }
        Ok(())
    }
}

impl PartialOrd for RotationSystem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RotationSystem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.rows.cmp(&other.rows))
    }
}

/// Every pre-rotation system on `n` vertices (there are `((n-2)!)^n`).
pub fn all_pre_rotation_systems(n: usize) -> Vec<RotationSystem> {
    assert!((3..=6).contains(&n), "exhaustive listing only for 3 <= n <= 6");
    let m = n - 1;
    // every normalized row: smallest element first, rest in any order
    let row_choices: Vec<Vec<Vec<Vertex>>> = (0..n)
        .map(|v| {
            let others: Vec<Vertex> = (0..n).filter(|&u| u != v).collect();
            let mut out = Vec::new();
            permutations(&others[1..], &mut |tail| {
                let mut row = vec![others[0]];
                row.extend_from_slice(tail);
                out.push(row);
            });
            out
        })
        .collect();
    let mut result = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let mut rows = Vec::with_capacity(n * m);
        for v in 0..n {
            rows.extend_from_slice(&row_choices[v][idx[v]]);
        }
        result.push(RotationSystem::from_normalized(n, rows));
        let mut k = n;
        loop {
            if k == 0 {
                return result;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < row_choices[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Calls `f` with every permutation of `items` (Heap's algorithm order is
/// not needed, plain lexicographic recursion suffices at these sizes).
pub(crate) fn permutations<T: Copy>(items: &[T], f: &mut dyn FnMut(&[T])) {
    fn rec<T: Copy>(pool: &mut Vec<T>, cur: &mut Vec<T>, f: &mut dyn FnMut(&[T])) {
        if pool.is_empty() {
            f(cur);
            return;
        }
        for i in 0..pool.len() {
            let x = pool.remove(i);
            cur.push(x);
            rec(pool, cur, f);
            cur.pop();
            pool.insert(i, x);
        }
    }
    let mut pool = items.to_vec();
    let mut cur = Vec::with_capacity(items.len());
    rec(&mut pool, &mut cur, f);
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> RotationSystem {
        RotationSystem::from_labels(4, &[vec![2, 4, 3], vec![1, 3, 4], vec![1, 4, 2], vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn rows_are_rotated_to_their_minimum() {
        let rs = RotationSystem::from_labels(4, &[vec![4, 3, 2], vec![1, 3, 4], vec![1, 4, 2], vec![1, 2, 3]]).unwrap();
        assert_eq!(rs.to_labels()[0], vec![2, 4, 3]);
    }

    #[test]
    fn malformed_rows_are_rejected() {
        let err = RotationSystem::from_labels(4, &[vec![2, 2, 3], vec![1, 3, 4], vec![1, 4, 2], vec![1, 2, 3]]);
        assert_eq!(err, Err(SystemError::BadRow { vertex: 0 }));
        assert!(matches!(RotationSystem::from_labels(2, &[vec![2], vec![1]]), Err(SystemError::TooSmall(2))));
        assert!(matches!(
            RotationSystem::from_labels(4, &[vec![2, 3, 4]]),
            Err(SystemError::RowCount { expected: 4, got: 1 })
        ));
        assert!(RotationSystem::from_labels(3, &[vec![2, 3], vec![1, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn ccw_reads_cyclic_positions() {
        let rs = square();
        // row of 1 is 2,4,3
        assert!(rs.ccw(0, 1, 3, 2));
        assert!(!rs.ccw(0, 1, 2, 3));
        assert!(rs.ccw(0, 3, 2, 1));
        assert_eq!(rs.try_ccw(0, 1, 1, 2), None);
    }

    #[test]
    fn induced_preserves_label_order() {
        let rs = square();
        assert_eq!(rs.induced(&[0, 1, 2, 3]).unwrap(), rs);
        let sub = rs.induced(&[1, 2, 3]).unwrap();
        assert_eq!(sub.n(), 3);
        // vertex 2 -> 1, 3 -> 2, 4 -> 3; row of old 2 restricted is 3,4
        assert_eq!(sub.to_labels()[0], vec![2, 3]);
        assert!(rs.induced(&[0, 1]).is_err());
    }

    #[test]
    fn reflection_is_an_involution() {
        let rs = square();
        assert_ne!(rs.reflect(), rs);
        assert_eq!(rs.reflect().reflect(), rs);
    }

    #[test]
    fn relabel_rejects_non_bijections() {
        assert!(matches!(square().relabel(&[0, 0, 1, 2]), Err(SystemError::BadPermutation(4))));
        assert_eq!(square().relabel(&[0, 1, 2, 3]).unwrap(), square());
    }

    #[test]
    fn canonical_form_counts_on_four_elements() {
        let mut forms: Vec<_> = all_pre_rotation_systems(4).iter().map(|r| r.canonical_form()).collect();
        forms.sort();
        forms.dedup();
        assert_eq!(forms.len(), 3);
        assert!(forms.iter().all(|f| f.is_canonical() && f.is_natural()));
    }

    #[test]
    fn pre_rotation_system_counts() {
        assert_eq!(all_pre_rotation_systems(4).len(), 16);
        assert_eq!(all_pre_rotation_systems(5).len(), 7776);
    }

    #[test]
    fn subsets_enumerate_binomially() {
        let mut count = 0;
        for_each_subset(7, 3, &mut |s| {
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            count += 1;
        });
        assert_eq!(count, 35);
    }
}
