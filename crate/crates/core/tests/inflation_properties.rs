use permlab::classgen::{enumerate_class, ClassSpec};
use permlab::inflation::{descending_intervals, inflate, lr_inflate, structure_decompose};
use permlab::perm::{avoids, Permutation};
use proptest::prelude::*;

fn perm(min: usize, max: usize) -> impl Strategy<Value = Permutation> {
    (min..=max)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|w| Permutation::new(w).unwrap())
}

/// A skeleton together with one block per entry.
fn inflation(max: usize) -> impl Strategy<Value = (Permutation, Vec<Permutation>)> {
    perm(1, max).prop_flat_map(move |s| {
        let n = s.len();
        (Just(s), prop::collection::vec(perm(1, max), n))
    })
}

proptest! {
    #[test]
    fn lr_minima_add_up(alpha in perm(1, 5), pool in prop::collection::vec(perm(1, 5), 5)) {
        let k = alpha.lr_minima_count();
        let blocks = &pool[..k];
        let total: usize = blocks.iter().map(Permutation::lr_minima_count).sum();
        prop_assert_eq!(lr_inflate(&alpha, blocks).unwrap().lr_minima_count(), total);
    }

    #[test]
    fn inflation_composes((outer, blocks) in inflation(4), seed in prop::collection::vec(perm(1, 3), 16)) {
        let mid = inflate(&outer, &blocks).unwrap();
        let inner: Vec<Permutation> = seed.iter().cycle().take(mid.len()).cloned().collect();
        let twice = inflate(&mid, &inner).unwrap();
        // regroup the inner blocks under the block they refine
        let mut at = 0;
        let merged: Vec<Permutation> = blocks
            .iter()
            .map(|b| {
                let parts = &inner[at..at + b.len()];
                at += b.len();
                inflate(b, parts).unwrap()
            })
            .collect();
        prop_assert_eq!(twice, inflate(&outer, &merged).unwrap());
    }

    #[test]
    fn inflation_keeps_blocks_as_intervals((outer, blocks) in inflation(5)) {
        let q = inflate(&outer, &blocks).unwrap();
        let mut start = 1;
        for b in &blocks {
            let positions: Vec<usize> = (start..start + b.len()).collect();
            prop_assert_eq!(&q.pattern_at(&positions), b);
            start += b.len();
        }
    }
}

#[test]
fn decompositions_round_trip() {
    let spec = ClassSpec::av(&["1423", "1342"]).unwrap();
    let pattern = [Permutation::identity(3)];
    for n in 1..=9 {
        for q in enumerate_class(&spec, n).unwrap() {
            let tree = structure_decompose(&q).unwrap();
            assert_eq!(tree.value(), q);
            assert!(tree.skeletons().iter().all(|s| avoids(s, &pattern)), "{q}");
        }
    }
}

#[test]
fn descending_intervals_are_ordered() {
    let spec = ClassSpec::av(&["1423", "1342"]).unwrap();
    for n in 1..=8 {
        for q in enumerate_class(&spec, n).unwrap() {
            let parts = descending_intervals(&q).unwrap();
            for w in parts.windows(2) {
                assert!(w[0].end < w[1].start && w[0].low > w[1].high, "{q}");
            }
            for b in &parts {
                assert!(b.is_valid_in(&q), "{q}");
            }
        }
    }
}
