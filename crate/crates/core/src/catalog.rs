//! Named small rotation systems: the obstructions and a few reference
//! drawings.
//!
//! The permutations are not typed in by hand. [`bootstrap_catalog`] derives
//! them from straight-line drawings, exhaustive listing and the drawability
//! SAT encoding; the result is kept in `data/catalog_v1.jsonl` and compared
//! against a fresh derivation in the test suite.

use std::collections::BTreeSet;
use std::sync::LazyLock;

use thiserror::Error;

use crate::corpus;
use crate::draw;
use crate::encode::{CnfInstance, EncodeOptions, ObstructionSet, Obstructions};
use crate::geometry::{convex_position, rotation_from_points, Point};
use crate::predicates::{contains_pi4, crossing_relation, is_convex_definitional, is_hconvex_definitional, CrossingRelation, FiveTable};
use crate::solve::{enumerate_all, Budget, SolveError};
use crate::system::{all_pre_rotation_systems, Edge, RotationSystem};

pub const CATALOG_FILE: &str = include_str!("../data/catalog_v1.jsonl");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub pi4_obstruction: RotationSystem,
    pub pi5a: RotationSystem,
    pub pi5b: RotationSystem,
    /// Non-convex, isomorphic to the perfect twisted drawing.
    pub convex5_1: RotationSystem,
    pub convex5_2: RotationSystem,
    pub hconvex6: RotationSystem,
    pub plane_k4: RotationSystem,
    pub crossing_k4: RotationSystem,
    /// Five points in convex position, labeled along the hull.
    pub convex_c5: RotationSystem,
    /// The perfect twisted drawing, labeled so that `{i,j}` and `{k,l}`
    /// cross exactly when `i < k < l < j`.
    pub twisted_t5: RotationSystem,
}

pub const NAMES: [&str; 10] = [
    "pi4_obstruction",
    "pi5a",
    "pi5b",
    "convex5_1",
    "convex5_2",
    "hconvex6",
    "plane_k4",
    "crossing_k4",
    "convex_c5",
    "twisted_t5",
];

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("expected {expected} {what}, derived {got}")]
    Count { what: &'static str, expected: usize, got: usize },
    #[error("catalog entry {0} missing")]
    Missing(&'static str),
    #[error(transparent)]
    Corpus(#[from] corpus::CorpusError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

impl Catalog {
    pub fn entries(&self) -> [(&'static str, &RotationSystem); 10] {
        [
            (NAMES[0], &self.pi4_obstruction),
            (NAMES[1], &self.pi5a),
            (NAMES[2], &self.pi5b),
            (NAMES[3], &self.convex5_1),
            (NAMES[4], &self.convex5_2),
            (NAMES[5], &self.hconvex6),
            (NAMES[6], &self.plane_k4),
            (NAMES[7], &self.crossing_k4),
            (NAMES[8], &self.convex_c5),
            (NAMES[9], &self.twisted_t5),
        ]
    }

    pub fn get(&self, name: &str) -> Option<&RotationSystem> {
        self.entries().into_iter().find(|(n, _)| *n == name).map(|(_, rs)| rs)
    }

    pub fn to_jsonl(&self) -> String {
        self.entries().iter().map(|(name, rs)| corpus::to_json_line(rs, Some(name)) + "\n").collect()
    }

    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let recs = corpus::read_named(text.as_bytes())?;
        let find = |name: &'static str| {
            recs.iter()
                .find(|r| r.name.as_deref() == Some(name))
                .map(|r| r.system.clone())
                .ok_or(CatalogError::Missing(name))
        };
        Ok(Catalog {
            pi4_obstruction: find(NAMES[0])?,
            pi5a: find(NAMES[1])?,
            pi5b: find(NAMES[2])?,
            convex5_1: find(NAMES[3])?,
            convex5_2: find(NAMES[4])?,
            hconvex6: find(NAMES[5])?,
            plane_k4: find(NAMES[6])?,
            crossing_k4: find(NAMES[7])?,
            convex_c5: find(NAMES[8])?,
            twisted_t5: find(NAMES[9])?,
        })
    }

    /// The obstruction families used by the encoder.
    pub fn obstruction_set(&self) -> ObstructionSet {
        ObstructionSet {
            not_drawable: vec![self.pi5a.clone(), self.pi5b.clone()],
            not_convex: vec![self.convex5_1.clone(), self.convex5_2.clone()],
            not_hconvex: vec![self.hconvex6.clone()],
        }
    }
}

pub static CATALOG: LazyLock<Catalog> =
    LazyLock::new(|| Catalog::parse(CATALOG_FILE).expect("bundled catalog is well-formed"));

fn expect_count(what: &'static str, expected: usize, got: usize) -> Result<(), CatalogError> {
    if expected == got {
        Ok(())
    } else {
        Err(CatalogError::Count { what, expected, got })
    }
}

fn canonical_set(systems: &[RotationSystem]) -> Vec<RotationSystem> {
    let set: BTreeSet<RotationSystem> = systems.iter().map(|r| r.canonical_form()).collect();
    set.into_iter().collect()
}

/// Crossing relation in which `{i,j}` and `{k,l}` cross iff `i < k < l < j`.
pub fn nested_relation(n: usize) -> CrossingRelation {
    let mut rel = CrossingRelation::new(n);
    for i in 0..n {
        for j in i + 1..n {
            for k in i + 1..j {
                for l in k + 1..j {
                    rel.insert(Edge::new(i, j), Edge::new(k, l));
                }
            }
        }
    }
    rel
}

/// Derives every catalog entry from scratch.
pub fn bootstrap_catalog() -> Result<Catalog, CatalogError> {
    let plane_k4 = rotation_from_points(&[Point::new(0, 0), Point::new(4, 0), Point::new(2, 4), Point::new(2, 1)])
        .unwrap()
        .canonical_form();
    let crossing_k4 = rotation_from_points(&[Point::new(0, 0), Point::new(4, 0), Point::new(4, 4), Point::new(0, 4)])
        .unwrap()
        .canonical_form();

    let four = canonical_set(&all_pre_rotation_systems(4));
    expect_count("canonical 4-element systems", 3, four.len())?;
    let pi4: Vec<_> = four.iter().filter(|r| contains_pi4(r)).cloned().collect();
    expect_count("4-element obstructions", 1, pi4.len())?;

    let labeled5: Vec<RotationSystem> = all_pre_rotation_systems(5).into_iter().filter(|r| !contains_pi4(r)).collect();
    let free5 = canonical_set(&labeled5);
    expect_count("canonical 5-element systems without the 4-element obstruction", 7, free5.len())?;
    let mut drawable5 = Vec::new();
    let mut pi5 = Vec::new();
    for rs in &free5 {
        if draw::is_drawable_sat(rs)? {
            drawable5.push(rs.clone());
        } else {
            pi5.push(rs.clone());
        }
    }
    expect_count("drawable 5-element systems", 5, drawable5.len())?;
    let mut nonconvex5: Vec<RotationSystem> =
        drawable5.iter().filter(|r| !is_convex_definitional(r).unwrap()).cloned().collect();
    expect_count("non-convex drawable 5-element systems", 2, nonconvex5.len())?;
    let crossings = |r: &RotationSystem| crossing_relation(r).unwrap().len();
    nonconvex5.sort_by_key(|r| std::cmp::Reverse(crossings(r)));
    expect_count("crossings of the twisted drawing", 5, crossings(&nonconvex5[0]))?;
    if crossings(&nonconvex5[1]) == 5 {
        return Err(CatalogError::Count { what: "non-convex 5-systems with 5 crossings", expected: 1, got: 2 });
    }

    let nested = nested_relation(5);
    let mut twisted: Vec<&RotationSystem> =
        labeled5.iter().filter(|r| crossing_relation(r).unwrap() == nested).collect();
    twisted.sort();
    expect_count("labelings with the nested crossing pattern", 2, twisted.len())?;
    let twisted_t5 = twisted[0].clone();

    let convex_c5 = rotation_from_points(&convex_position(5)).unwrap();

    let five = FiveTable::new(&pi5, &nonconvex5);
    let obstructions =
        ObstructionSet { not_drawable: pi5.clone(), not_convex: nonconvex5.clone(), not_hconvex: Vec::new() };
    let opts = EncodeOptions { obstructions: Obstructions::Drawable, convex: true, ..EncodeOptions::default() };
    let inst = CnfInstance::with_obstructions(6, opts, &obstructions).expect("valid options");
    let mut convex6 = Vec::new();
    enumerate_all(&inst, true, Budget::unlimited(), |rs| {
        convex6.push(rs.clone());
        true
    })?;
    debug_assert!(convex6.iter().all(|r| five.is_convex(r) == Ok(true)));
    let not_h: Vec<RotationSystem> =
        convex6.iter().filter(|r| !is_hconvex_definitional(r).unwrap()).cloned().collect();
    expect_count("convex 6-element systems that are not h-convex", 1, not_h.len())?;

    Ok(Catalog {
        pi4_obstruction: pi4[0].clone(),
        pi5a: pi5[0].clone(),
        pi5b: pi5[1].clone(),
        convex5_1: nonconvex5[0].canonical_form(),
        convex5_2: nonconvex5[1].canonical_form(),
        hconvex6: not_h[0].clone(),
        plane_k4,
        crossing_k4,
        convex_c5,
        twisted_t5,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_catalog_matches_fresh_derivation() {
        let fresh = bootstrap_catalog().unwrap();
        if std::env::var_os("ROTSYS_WRITE_CATALOG").is_some() {
            std::fs::write(concat!(env!("CARGO_MANIFEST_DIR"), "/data/catalog_v1.jsonl"), fresh.to_jsonl()).unwrap();
            return;
        }
        assert_eq!(fresh.to_jsonl(), CATALOG_FILE);
        assert_eq!(Catalog::parse(CATALOG_FILE).unwrap(), fresh);
    }

    #[test]
    fn nested_relation_counts() {
        // C(n,4) crossings: each 4-set contributes one nested pair
        assert_eq!(nested_relation(5).len(), 5);
        assert_eq!(nested_relation(7).len(), 35);
    }
}
