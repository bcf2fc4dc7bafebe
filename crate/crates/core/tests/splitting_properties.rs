use permlab::classgen::{enumerate_class, ClassSpec};
use permlab::oracle;
use permlab::perm::{covers, Permutation};
use permlab::splitting::{
    certifies, check_lr_merge, check_merge, runs_decompose_av123, split_av1423_1342, TwoColoring,
};
use proptest::prelude::*;

fn perm(min: usize, max: usize) -> impl Strategy<Value = Permutation> {
    (min..=max)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|w| Permutation::new(w).unwrap())
}

fn class(max: usize) -> impl Strategy<Value = ClassSpec> {
    prop::collection::vec(perm(2, max), 1..=2).prop_map(|b| ClassSpec::new(b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn merge_search_matches_oracle(q in perm(0, 10), a in class(4), b in class(4)) {
        let fast = check_merge(&q, &a, &b);
        prop_assert_eq!(fast.is_some(), oracle::brute_merge(&q, &a, &b).unwrap());
        if let Some(c) = fast {
            prop_assert!(certifies(&q, &c, &a, &b).is_ok());
        }
    }

    #[test]
    fn colorings_survive_json(q in perm(0, 9)) {
        let spec = ClassSpec::av(&["1423", "1342"]).unwrap();
        if spec.basis().iter().all(|b| !permlab::perm::contains(b, &q)) {
            let c = split_av1423_1342(&q).unwrap();
            prop_assert_eq!(TwoColoring::from_json(&c.to_json()).unwrap(), c);
        }
    }
}

#[test]
fn run_anchors_descend() {
    let av123 = ClassSpec::av(&["123"]).unwrap();
    for n in 1..=10 {
        for q in enumerate_class(&av123, n).unwrap() {
            let runs = runs_decompose_av123(&q).unwrap();
            for w in runs.windows(2) {
                assert!(q.at(w[0].anchor) > q.at(w[1].anchor), "{q}");
                let (x, y) = (w[0].members[0], w[1].members[0]);
                let shared = q
                    .lr_minima()
                    .into_iter()
                    .any(|m| covers(&q, m, x).unwrap() && covers(&q, m, y).unwrap());
                assert!(!shared, "{q}: one minimum covers both {x} and {y}");
            }
        }
    }
}

#[test]
fn plain_split_implies_lr_split() {
    let main = ClassSpec::av(&["1423", "1342"]).unwrap();
    let part = ClassSpec::av(&["463152"]).unwrap().lr_closure();
    for n in 1..=8 {
        for q in enumerate_class(&main, n).unwrap() {
            if check_merge(&q, &part, &part).is_some() {
                let c = check_lr_merge(&q, &part, &part);
                assert!(
                    c.is_some_and(|c| certifies(&q, &c, &part, &part).is_ok()),
                    "{q}"
                );
            }
        }
    }
}
