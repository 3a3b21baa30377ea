use std::path::PathBuf;

use proptest::prelude::*;

use qdist::distinguish::{ex3_u, ex3_v, SU2Ensemble};
use qdist_cli::fixture::{FixtureFile, Operation, StateRecord, VERSION};

fn load(name: &str) -> FixtureFile {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    FixtureFile::load(&p).unwrap().0
}

fn assert_same_ensemble(file: &FixtureFile, expected: &SU2Ensemble) {
    let got = file.su2_ensemble().unwrap();
    assert_eq!(got.len(), expected.len());
    for (w, v) in got.weights().weights().iter().zip(expected.weights().weights()) {
        assert!((w - v).abs() < 1e-15);
    }
    for (a, b) in got.unitaries().iter().zip(expected.unitaries()) {
        for (x, y) in a.data().iter().zip(b.data()) {
            assert!((x - y).norm() < 1e-15, "{x} vs {y}");
        }
    }
}

#[test]
fn ex3_fixtures_match_closed_form_constructions() {
    assert_same_ensemble(&load("ex3_u.json"), &ex3_u());
    assert_same_ensemble(&load("ex3_v.json"), &ex3_v());
    assert!(load("ex3_u.json").comment.unwrap().contains("cos(alpha)"));
}

fn floats(f: &FixtureFile) -> Vec<u64> {
    let mut out = Vec::new();
    let mut push = |rows: &[[f64; 2]]| out.extend(rows.iter().flatten().map(|x| x.to_bits()));
    for op in &f.operations {
        match op {
            Operation::Unitary { matrix, .. } => matrix.iter().for_each(|r| push(r)),
            Operation::Kraus { kraus, .. } => kraus.iter().flatten().for_each(|r| push(r)),
            Operation::Eb { phis, psis, .. } => phis.iter().chain(psis).for_each(|v| push(v)),
        }
    }
    for s in &f.states {
        match s {
            StateRecord::Density { matrix, .. } => matrix.iter().for_each(|r| push(r)),
            StateRecord::Pure { vector, .. } => push(vector),
        }
    }
    out.extend(f.operations.iter().map(|o| o.weight().to_bits()));
    out.extend(f.states.iter().map(|s| s.weight().to_bits()));
    out
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1.0f64..1.0,
        any::<f64>().prop_filter("finite", |x| x.is_finite()),
        Just(0.0),
        Just(1.0 / 3.0),
    ]
}

fn pairs(n: usize) -> impl Strategy<Value = Vec<[f64; 2]>> {
    prop::collection::vec([finite(), finite()], n)
}

fn square(d: usize) -> impl Strategy<Value = Vec<Vec<[f64; 2]>>> {
    prop::collection::vec(pairs(d), d)
}

fn operation(d: usize) -> impl Strategy<Value = Operation> {
    prop_oneof![
        (finite(), square(d)).prop_map(|(weight, matrix)| Operation::Unitary { weight, matrix }),
        (finite(), prop::collection::vec(square(d), 1..3)).prop_map(|(weight, kraus)| Operation::Kraus { weight, kraus }),
        (finite(), prop::collection::vec(pairs(d), 1..3), prop::collection::vec(pairs(d), 1..3))
            .prop_map(|(weight, phis, psis)| Operation::Eb { weight, phis, psis }),
    ]
}

fn state(d: usize) -> impl Strategy<Value = StateRecord> {
    prop_oneof![
        (finite(), square(d)).prop_map(|(weight, matrix)| StateRecord::Density { weight, matrix }),
        (finite(), pairs(d)).prop_map(|(weight, vector)| StateRecord::Pure { weight, vector }),
    ]
}

fn fixture_file() -> impl Strategy<Value = FixtureFile> {
    (1usize..4).prop_flat_map(|d| {
        (
            prop::option::of("[a-z ]{0,12}"),
            prop::collection::vec(operation(d), 0..3),
            prop::collection::vec(state(d), 0..3),
        )
            .prop_map(move |(comment, operations, states)| FixtureFile {
                version: VERSION.to_string(),
                comment,
                dimension: d,
                operations,
                states,
            })
    })
}

proptest! {
    #[test]
    fn fixture_round_trip_is_bit_exact(f in fixture_file()) {
        let text = f.to_json();
        let back = FixtureFile::parse(&text).unwrap();
        prop_assert_eq!(floats(&back), floats(&f));
        prop_assert_eq!(back.to_json(), text);
    }
}
