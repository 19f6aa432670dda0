//! Hom dimensions and sequence counts against explicit representations.

mod common;

use common::{MatrixOracle, OracleTables};
use exseq_core::exceptional::enumerate_complete_sequences;
use exseq_core::{DObj, DerivedCategory, QuiverDescriptor, RootSystem};

fn category(q: QuiverDescriptor) -> DerivedCategory {
    DerivedCategory::new(RootSystem::new(q).unwrap()).unwrap()
}

fn standard(t: &str) -> DerivedCategory {
    DerivedCategory::new(RootSystem::of_type(t.parse().unwrap()).unwrap()).unwrap()
}

fn check_hom(cat: &DerivedCategory, seed: u64) {
    let oracle = MatrixOracle::for_category(cat, seed);
    for a in 0..cat.num_roots() {
        for b in 0..cat.num_roots() {
            for d in -2..=2 {
                let x = DObj::new(a, 0);
                let y = DObj::new(b, d);
                assert_eq!(cat.hom_dim(x, y), oracle.derived_hom(x, y), "{} -> {}", cat.show(x), cat.show(y));
            }
        }
    }
}

#[test]
fn hom_matches_representations_standard() {
    for t in ["A1", "A2", "A3", "A4", "D4", "D5", "E6"] {
        check_hom(&standard(t), 7);
    }
}

#[test]
fn hom_matches_representations_other_orientations() {
    let q = QuiverDescriptor { family: exseq_core::Family::A, rank: 4, arrows: vec![[1, 2], [1, 3], [3, 4]] };
    check_hom(&category(q), 11);
    let q = QuiverDescriptor { family: exseq_core::Family::D, rank: 4, arrows: vec![[1, 4], [2, 4], [3, 4]] };
    check_hom(&category(q), 13);
    let q = QuiverDescriptor { family: exseq_core::Family::A, rank: 3, arrows: vec![[1, 3], [2, 3]] };
    check_hom(&category(q), 17);
}

#[test]
fn complete_sequence_counts_match_brute_force() {
    for (t, expected) in [("A2", 3), ("A3", 16), ("D4", 162)] {
        let cat = standard(t);
        let tables = OracleTables::new(&MatrixOracle::for_category(&cat, 3));
        assert_eq!(tables.count_complete_sequences(cat.rank()), expected);
        assert_eq!(enumerate_complete_sequences(&cat).len(), expected);
    }
}
