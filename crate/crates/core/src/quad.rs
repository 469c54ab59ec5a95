//! Lookup tables for 4-element sub-configurations.
//!
//! An ordered quadruple `(t0, t1, t2, t3)` of a pre-rotation system is summed
//! up by a 4-bit signature, one bit per row:
//!
//! * bit 0: `ccw(t0; t1, t2, t3)`
//! * bit 1: `ccw(t1; t0, t2, t3)`
//! * bit 2: `ccw(t2; t0, t1, t3)`
//! * bit 3: `ccw(t3; t0, t1, t2)`
//!
//! Each of the 16 signatures is one labeled pre-rotation system on 4
//! elements. The tables below are filled by drawing a plane K4 and a convex
//! K4 with straight lines under every labeling and its mirror image, so the
//! 8 signatures left over are exactly the non-drawable ones.

use std::sync::LazyLock;

use crate::geometry::{in_triangle, orient, rotation_from_points, segments_cross, Point};
use crate::system::{permutations, RotationSystem, Vertex};

/// The three ways to split 4 tuple positions into two pairs.
pub const PAIRINGS: [[[usize; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadKind {
    /// Drawn without crossings.
    Plane,
    /// The two edges of `PAIRINGS[pairing]` cross. `sub` (0 or 1) tells the
    /// two drawings with this crossing apart; they are mirror images.
    Crossing { pairing: u8, sub: u8 },
    /// Not drawable.
    Obstruction,
}

pub struct QuadTable {
    kind: [QuadKind; 16],
    /// Bit `m` is set when the tuple element at position `m` lies in the side
    /// of the other three (in tuple order) from which they read
    /// counterclockwise.
    side: [u8; 16],
    crossing_sigs: [[u8; 2]; 3],
}

pub static QUADS: LazyLock<QuadTable> = LazyLock::new(QuadTable::build);

/// Signature of the ordered quadruple `t` in `rs`.
#[inline]
pub fn signature(rs: &RotationSystem, t: [Vertex; 4]) -> u8 {
    let [a, b, c, d] = t;
    (rs.ccw(a, b, c, d) as u8)
        | (rs.ccw(b, a, c, d) as u8) << 1
        | (rs.ccw(c, a, b, d) as u8) << 2
        | (rs.ccw(d, a, b, c) as u8) << 3
}

/// The four ccw values encoded by a signature.
pub fn signature_bits(sig: u8) -> [bool; 4] {
    [sig & 1 != 0, sig & 2 != 0, sig & 4 != 0, sig & 8 != 0]
}

/// The labeled 4-element pre-rotation system with the given signature.
pub fn system_of_signature(sig: u8) -> RotationSystem {
    let bits = signature_bits(sig);
    let rows: Vec<Vec<Vertex>> = (0..4)
        .map(|v| {
            let others: Vec<Vertex> = (0..4).filter(|&u| u != v).collect();
            if bits[v] {
                others
            } else {
                vec![others[0], others[2], others[1]]
            }
        })
        .collect();
    RotationSystem::from_rows(&rows).unwrap()
}

impl QuadTable {
    fn build() -> Self {
        let plane = [Point::new(0, 0), Point::new(4, 0), Point::new(2, 4), Point::new(2, 1)];
        let square = [Point::new(0, 0), Point::new(4, 0), Point::new(4, 4), Point::new(0, 4)];
        let mut kind: [Option<QuadKind>; 16] = [None; 16];
        let mut side: [Option<u8>; 16] = [None; 16];
        let mut crossing: Vec<Vec<u8>> = vec![Vec::new(); 3];
        for base in [plane, square] {
            for mirror in [false, true] {
                permutations(&[0usize, 1, 2, 3], &mut |perm| {
                    let pts: Vec<Point> = perm
                        .iter()
                        .map(|&i| {
                            let p = base[i];
                            if mirror {
                                Point::new(-p.x, p.y)
                            } else {
                                p
                            }
                        })
                        .collect();
                    let rs = rotation_from_points(&pts).unwrap();
                    let sig = signature(&rs, [0, 1, 2, 3]) as usize;
                    let mut k = QuadKind::Plane;
                    for (pi, [e, f]) in PAIRINGS.iter().enumerate() {
                        if segments_cross(pts[e[0]], pts[e[1]], pts[f[0]], pts[f[1]]) {
                            k = QuadKind::Crossing { pairing: pi as u8, sub: 0 };
                            if !crossing[pi].contains(&(sig as u8)) {
                                crossing[pi].push(sig as u8);
                            }
                        }
                    }
                    let mut bits = 0u8;
                    for m in 0..4 {
                        let tri: Vec<usize> = (0..4).filter(|&x| x != m).collect();
                        let (a, b, c) = (pts[tri[0]], pts[tri[1]], pts[tri[2]]);
                        let inside = in_triangle(a, b, c, pts[m]);
                        if inside == (orient(a, b, c) > 0) {
                            bits |= 1 << m;
                        }
                    }
                    if let Some(old) = kind[sig] {
                        let same = match (old, k) {
                            (QuadKind::Crossing { pairing: p, .. }, QuadKind::Crossing { pairing: q, .. }) => p == q,
                            (x, y) => x == y,
                        };
                        assert!(same, "inconsistent crossing for signature {sig}");
                        assert_eq!(side[sig], Some(bits), "inconsistent sides for signature {sig}");
                    }
                    kind[sig] = Some(k);
                    side[sig] = Some(bits);
                });
            }
        }
        let mut crossing_sigs = [[0u8; 2]; 3];
        for (pi, sigs) in crossing.iter_mut().enumerate() {
            sigs.sort_unstable();
            assert_eq!(sigs.len(), 2, "each crossing pair has two drawings");
            crossing_sigs[pi] = [sigs[0], sigs[1]];
            for (sub, &s) in sigs.iter().enumerate() {
                kind[s as usize] = Some(QuadKind::Crossing { pairing: pi as u8, sub: sub as u8 });
            }
        }
        let kind = kind.map(|k| k.unwrap_or(QuadKind::Obstruction));
        let side = side.map(|s| s.unwrap_or(0));
        assert_eq!(kind.iter().filter(|&&k| k == QuadKind::Obstruction).count(), 8);
        QuadTable { kind, side, crossing_sigs }
    }

    pub fn kind(&self, sig: u8) -> QuadKind {
        self.kind[sig as usize]
    }

    /// Whether the element at tuple position `m` lies in the counterclockwise
    /// side of the other three. Meaningless for obstruction signatures.
    pub fn in_ccw_side(&self, sig: u8, m: usize) -> bool {
        self.side[sig as usize] >> m & 1 == 1
    }

    /// The two signatures in which the edges of `PAIRINGS[pairing]` cross.
    pub fn crossing_signatures(&self, pairing: usize) -> [u8; 2] {
        self.crossing_sigs[pairing]
    }

    pub fn plane_signatures(&self) -> Vec<u8> {
        (0..16).filter(|&s| self.kind[s as usize] == QuadKind::Plane).collect()
    }

    pub fn obstruction_signatures(&self) -> Vec<u8> {
        (0..16).filter(|&s| self.kind[s as usize] == QuadKind::Obstruction).collect()
    }
}

/// Index into [`PAIRINGS`] of the pairing `{{x, y}, {z, w}}` of tuple
/// positions, or `None` if the positions do not form a pairing.
pub fn pairing_index(p: [usize; 2], q: [usize; 2]) -> Option<usize> {
    let norm = |[a, b]: [usize; 2]| if a < b { [a, b] } else { [b, a] };
    let (p, q) = (norm(p), norm(q));
    PAIRINGS.iter().position(|&[e, f]| (e == p && f == q) || (e == q && f == p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_splits_two_six_eight() {
        let t = &*QUADS;
        assert_eq!(t.plane_signatures().len(), 2);
        assert_eq!(t.obstruction_signatures().len(), 8);
        for p in 0..3 {
            let [a, b] = t.crossing_signatures(p);
            assert_ne!(a, b);
        }
    }

    #[test]
    fn signature_round_trips_through_system() {
        for sig in 0..16u8 {
            assert_eq!(signature(&system_of_signature(sig), [0, 1, 2, 3]), sig);
        }
    }

    #[test]
    fn obstructions_match_the_uniform_orientation_pattern() {
        // ccw(a;b,c,d) = ccw(b;a,c,d) = ccw(c;a,b,d) = ccw(d;a,c,b)
        // for some ordering a, b, c, d of the four elements
        for sig in 0..16u8 {
            let rs = system_of_signature(sig);
            let mut pi4 = false;
            permutations(&[0usize, 1, 2, 3], &mut |t| {
                let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
                let x = rs.ccw(a, b, c, d);
                pi4 |= rs.ccw(b, a, c, d) == x && rs.ccw(c, a, b, d) == x && rs.ccw(d, a, c, b) == x;
            });
            assert_eq!(pi4, QUADS.kind(sig) == QuadKind::Obstruction, "signature {sig}");
        }
    }

    #[test]
    fn mirror_drawings_share_the_crossing_pair() {
        for sig in 0..16u8 {
            let k = QUADS.kind(sig);
            let m = signature(&system_of_signature(sig).reflect(), [0, 1, 2, 3]);
            match (k, QUADS.kind(m)) {
                (QuadKind::Crossing { pairing: p, sub: s }, QuadKind::Crossing { pairing: q, sub: t }) => {
                    assert_eq!(p, q);
                    assert_ne!(s, t);
                }
                (a, b) => assert_eq!(a, b),
            }
        }
    }

    #[test]
    fn sides_partition_for_drawable_signatures() {
        // each outside vertex lies in exactly one side; the interior vertex of
        // a plane K4 sits in the bounded side of its triangle only
        for sig in 0..16u8 {
            if QUADS.kind(sig) == QuadKind::Obstruction {
                continue;
            }
            let reflected = signature(&system_of_signature(sig).reflect(), [0, 1, 2, 3]);
            for m in 0..4 {
                assert_ne!(QUADS.in_ccw_side(sig, m), QUADS.in_ccw_side(reflected, m));
            }
        }
    }

    #[test]
    fn pairing_lookup() {
        assert_eq!(pairing_index([1, 0], [3, 2]), Some(0));
        assert_eq!(pairing_index([1, 3], [0, 2]), Some(1));
        assert_eq!(pairing_index([0, 1], [1, 2]), None);
    }
}
