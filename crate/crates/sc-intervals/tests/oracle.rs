use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sc_intervals::MonotoneIntervalStore;

fn monotone_set(rng: &mut ChaCha8Rng, n: usize) -> Vec<(f64, f64)> {
    let mut lo = 0.0;
    let mut hi: f64 = -1.0;
    (0..n)
        .map(|_| {
            lo += rng.random_range(0.01..2.0);
            hi = (hi + rng.random_range(0.01..2.0)).max(lo + rng.random_range(0.0..3.0));
            (lo, hi)
        })
        .collect()
}

fn greedy(ivs: &[(f64, f64)]) -> usize {
    let mut v = ivs.to_vec();
    v.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut last = f64::NEG_INFINITY;
    let mut c = 0;
    for (lo, hi) in v {
        if lo >= last {
            c += 1;
            last = hi;
        }
    }
    c
}

#[test]
fn random_inserts_match_sorted_list() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut ivs = monotone_set(&mut rng, 10_000);
    let mut sorted = ivs.clone();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    for i in (1..ivs.len()).rev() {
        ivs.swap(i, rng.random_range(0..=i));
    }
    let mut s = MonotoneIntervalStore::new();
    for &(lo, hi) in &ivs {
        s.insert(lo, hi).unwrap();
    }
    assert_eq!(s.iter().collect::<Vec<_>>(), sorted);
}

#[test]
fn interleaved_insert_remove() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let all = monotone_set(&mut rng, 500);
    let mut live = vec![false; all.len()];
    let mut s = MonotoneIntervalStore::new();
    for _ in 0..5_000 {
        let i = rng.random_range(0..all.len());
        let (lo, hi) = all[i];
        if live[i] {
            s.remove(lo, hi).unwrap();
        } else {
            s.insert(lo, hi).unwrap();
        }
        live[i] = !live[i];
    }
    let expect: Vec<_> = all.iter().zip(&live).filter(|(_, &l)| l).map(|(&iv, _)| iv).collect();
    assert_eq!(s.iter().collect::<Vec<_>>(), expect);
    assert_eq!(s.max_nonoverlapping(), greedy(&expect));
}

#[test]
fn thousand_random_sets_match_greedy() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..1_000 {
        let n = rng.random_range(0..60);
        let ivs = monotone_set(&mut rng, n);
        let mut s = MonotoneIntervalStore::new();
        for &(lo, hi) in &ivs {
            s.insert(lo, hi).unwrap();
        }
        assert_eq!(s.max_nonoverlapping(), greedy(&ivs));
        let w = s.witness();
        assert_eq!(w.len(), greedy(&ivs));
        for p in w.windows(2) {
            assert!(p[0].1 <= p[1].0);
        }
    }
}

proptest! {
    #[test]
    fn single_change_moves_count_by_at_most_one(seed in 0u64..10_000, n in 1usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ivs = monotone_set(&mut rng, n);
        let mut s = MonotoneIntervalStore::new();
        for &(lo, hi) in &ivs {
            s.insert(lo, hi).unwrap();
        }
        let before = s.max_nonoverlapping();
        let (lo, hi) = ivs[rng.random_range(0..n)];
        s.remove(lo, hi).unwrap();
        let after = s.max_nonoverlapping();
        prop_assert!(before >= after && before - after <= 1);
    }

    #[test]
    fn order_independent(seed in 0u64..10_000, n in 1usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ivs = monotone_set(&mut rng, n);
        let mut a = MonotoneIntervalStore::new();
        let mut b = MonotoneIntervalStore::new();
        for &(lo, hi) in &ivs {
            a.insert(lo, hi).unwrap();
        }
        for &(lo, hi) in ivs.iter().rev() {
            b.insert(lo, hi).unwrap();
        }
        prop_assert_eq!(a.max_nonoverlapping(), b.max_nonoverlapping());
    }
}
