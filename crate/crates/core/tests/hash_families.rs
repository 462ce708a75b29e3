mod common;

use common::rng;
use gapred::hash_family::{build_covering_family, build_perfect_family, verify_perfect, FamilyOptions};
use gapred::{HashFamily, SolveOptions};
use proptest::prelude::*;
use rand::Rng;

/// Direct check: every k'-subset has a member taking k' distinct values on it.
fn perfect_oracle(n: usize, kp: usize, functions: &[Vec<u32>]) -> bool {
    fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            subsets(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    subsets(n, kp, 0, &mut Vec::new(), &mut all);
    all.iter().all(|s| {
        functions.iter().any(|f| {
            let mut distinct = true;
            for (i, &a) in s.iter().enumerate() {
                for &b in &s[i + 1..] {
                    if f[a] == f[b] {
                        distinct = false;
                    }
                }
            }
            distinct
        })
    })
}

#[test]
fn built_families_are_perfect() {
    for (n, kp) in [(1, 1), (4, 4), (8, 2), (10, 3), (16, 3)] {
        for seed in 0..3 {
            let f = build_perfect_family(n, kp, &FamilyOptions::with_seed(seed)).unwrap();
            assert!(verify_perfect(&f, &SolveOptions::default()).unwrap());
            assert!(perfect_oracle(n, kp, f.functions()));
            assert!(f.functions().iter().flatten().all(|&v| (1..=kp as u32).contains(&v)));
        }
    }
}

#[test]
fn construction_is_deterministic_per_seed() {
    let a = build_perfect_family(12, 3, &FamilyOptions::with_seed(42)).unwrap();
    let b = build_perfect_family(12, 3, &FamilyOptions::with_seed(42)).unwrap();
    assert_eq!(a.to_string(), b.to_string());
    assert_eq!(a.seed(), Some(42));
}

#[test]
fn covering_with_larger_range() {
    let f = build_covering_family(3, 5, 3, &FamilyOptions::with_seed(1)).unwrap();
    assert_eq!(f.k_prime(), 5);
    assert!(f.covers_all(3, &SolveOptions::default()).unwrap());
    assert!(build_covering_family(3, 2, 3, &FamilyOptions::default()).is_err());
    assert!(build_perfect_family(3, 4, &FamilyOptions::default()).is_err());
}

#[test]
fn sample_cap_is_reported() {
    let opts = FamilyOptions { max_samples: 1, ..FamilyOptions::with_seed(0) };
    assert!(build_perfect_family(12, 6, &opts).is_err());
}

#[test]
fn text_round_trip() {
    let f = build_perfect_family(6, 2, &FamilyOptions::with_seed(3)).unwrap();
    let back: HashFamily = f.to_string().parse().unwrap();
    assert_eq!(back, f);
    assert!("hashfamily n=2 kprime=2 size=1\n1 3\n".parse::<HashFamily>().is_err());
    assert!("hashfamily n=2 kprime=2 size=1\n1\n".parse::<HashFamily>().is_err());
}

proptest! {
    #[test]
    fn verify_matches_oracle(seed in any::<u64>(), n in 2usize..=7, kp in 1usize..=4, size in 1usize..=6) {
        prop_assume!(kp <= n);
        let mut r = rng(seed);
        let functions: Vec<Vec<u32>> =
            (0..size).map(|_| (0..n).map(|_| r.gen_range(1..=kp as u32)).collect()).collect();
        let family = HashFamily::new(n, kp, functions.clone()).unwrap();
        for opts in [SolveOptions::default(), SolveOptions::sequential()] {
            prop_assert_eq!(verify_perfect(&family, &opts).unwrap(), perfect_oracle(n, kp, &functions));
        }
    }
}
