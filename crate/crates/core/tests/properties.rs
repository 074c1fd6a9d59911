use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::sample::subsequence;

use transversals::digraph::{omega_member_ham, omega_member_pm};
use transversals::exchange::second_ham_transversal;
use transversals::generators::{
    gen_planted_ham_family, gen_planted_pm_family, gen_regular_all_equal, gen_witness_instance_ham, random_spread_set,
};
use transversals::multiplier::{enumerate_omega_ham, enumerate_omega_pm};
use transversals::oracle::{
    count_ham_transversals_with, count_pm_transversals, enumerate_all_ham_transversals, enumerate_all_pm_transversals,
    SearchBudget,
};
use transversals::sampler::{chernoff_bounds, factorial_bounds, sample_set_lll_ham, BoundParams, SamplerConfig};
use transversals::validate::is_naturally_indexed;
use transversals::{
    build_full_ryb, naturally_index, validate_transversal, CandidateSet, Exec, NaturalIndexing, RedStructure,
};

fn planted_ham() -> impl Strategy<Value = (usize, usize, u64)> {
    (5usize..=9).prop_flat_map(|n| (Just(n), 0..=(2 * (n - 3)).min(4), any::<u64>()))
}

fn planted_pm() -> impl Strategy<Value = (usize, usize, u64)> {
    (1usize..=6).prop_flat_map(|n| (Just(n), 0..=2 * (n - 1), any::<u64>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn natural_indexing_round_trips((n, extra, seed) in planted_ham(), pick in any::<prop::sample::Index>()) {
        let (f, _) = gen_planted_ham_family(n, extra, seed).unwrap();
        let all = enumerate_all_ham_transversals(&f, SearchBudget::default()).unwrap();
        let t = &all[pick.index(all.len())];
        let (f2, t2, idx) = naturally_index(&f, t).unwrap();
        prop_assert!(is_naturally_indexed(&t2, n));
        prop_assert!(validate_transversal(&f2, &t2).is_valid());
        let back = idx.inverse();
        prop_assert_eq!(&back.apply_transversal(&t2), t);
        prop_assert_eq!(back.apply_family(&f2), f);
    }

    #[test]
    fn relabeling_preserves_counts(
        (n, extra, seed) in planted_ham(),
        vperm in Just(()).prop_perturb(|_, mut rng| rng.random::<u64>()),
    ) {
        let (f, _) = gen_planted_ham_family(n, extra, seed).unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        let mut colors: Vec<usize> = (0..n).collect();
        // deterministic shuffles from the drawn word
        let mut x = vperm | 1;
        for i in (1..n).rev() {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            order.swap(i, (x % (i as u64 + 1)) as usize);
            colors.swap(i, ((x >> 32) % (i as u64 + 1)) as usize);
        }
        let idx = NaturalIndexing { vertex_perm: order, color_perm: colors };
        let g = idx.apply_family(&f);
        let a = count_ham_transversals_with(&f, SearchBudget::default(), Exec::Sequential).unwrap();
        let b = count_ham_transversals_with(&g, SearchBudget::default(), Exec::Parallel).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn omega_ham_matches_filtered_oracle((n, extra, seed) in planted_ham(), size in 1usize..=3) {
        let Some(members) = random_spread_set(n, size, seed) else { return Ok(()) };
        let (f, base) = gen_planted_ham_family(n, extra, seed).unwrap();
        let s = CandidateSet::new(n, members).unwrap();
        let omega: BTreeSet<_> = enumerate_omega_ham(&f, &base, &s).unwrap().into_iter().collect();
        let filtered: BTreeSet<_> = enumerate_all_ham_transversals(&f, SearchBudget::default())
            .unwrap()
            .into_iter()
            .filter(|t| omega_member_ham(&base, &s, t))
            .collect();
        prop_assert!(omega.contains(&base));
        prop_assert_eq!(omega, filtered);
    }

    #[test]
    fn omega_pm_matches_filtered_oracle((n, extra, seed) in planted_pm(), bits in any::<u32>()) {
        let (f, base) = gen_planted_pm_family(n, extra, seed).unwrap();
        let members: Vec<usize> = (0..n).map(|i| if bits >> i & 1 == 1 { i } else { n + i }).collect();
        let s = CandidateSet::new(2 * n, members).unwrap();
        let omega: BTreeSet<_> = enumerate_omega_pm(&f, &base, &s).unwrap().into_iter().collect();
        let all = enumerate_all_pm_transversals(&f, SearchBudget::default()).unwrap();
        prop_assert_eq!(all.len() as u128, count_pm_transversals(&f, SearchBudget::default()).unwrap());
        let filtered: BTreeSet<_> = all.into_iter().filter(|t| omega_member_pm(&base, &s, t)).collect();
        prop_assert_eq!(omega, filtered);
    }

    #[test]
    fn second_ham_stays_in_omega(n in 6usize..=15, size in 2usize..=5, seed in any::<u64>()) {
        prop_assume!(3 * size <= n);
        let members = random_spread_set(n, size, seed).unwrap();
        let (f, base) = gen_witness_instance_ham(n, &members, 1, seed).unwrap();
        let s = CandidateSet::new(n, members).unwrap();
        let h = build_full_ryb(&f, &base).unwrap();
        prop_assert_eq!(h.d_star(&s).unwrap(), 1);
        let t = second_ham_transversal(&f, &base, &s, &h).unwrap();
        prop_assert!(t != base);
        prop_assert!(validate_transversal(&f, &t).is_valid());
        prop_assert!(omega_member_ham(&base, &s, &t));
    }

    #[test]
    fn spread_sets_are_red_independent(n in 3usize..200, size in 0usize..30, seed in any::<u64>()) {
        if let Some(members) = random_spread_set(n, size, seed) {
            prop_assert_eq!(members.len(), size);
            let s = CandidateSet::new(n, members).unwrap();
            prop_assert!(transversals::RybDigraph::red_only(n).is_red_independent(&s));
        }
    }

    #[test]
    fn chernoff_first_bound_is_tighter(mu in 0.01f64..1e4, delta in 0.001f64..0.999) {
        let (b1, b2) = chernoff_bounds(mu, delta).unwrap();
        prop_assert!(b1 >= 0.0);
        prop_assert!(b1 <= b2 * (1.0 + 1e-12));
        prop_assert!(b2 <= 1.0);
    }

    #[test]
    fn dirac_bounds_grow_with_n(n in 1usize..5000, c in 0.5f64..=1.0, eps in 0.01f64..5.0) {
        let ham = |n| factorial_bounds(BoundParams::HamDirac { n, c, epsilon: eps }).unwrap();
        let pm = |n| factorial_bounds(BoundParams::PmDirac { n, c, epsilon: eps }).unwrap();
        prop_assert!(ham(n).value <= ham(n + 1).value);
        prop_assert!(pm(n).value <= pm(n + 1).value);
    }

    #[test]
    fn candidate_set_without_removes_one(n in 3usize..40, picks in subsequence((0..40usize).collect::<Vec<_>>(), 0..10)) {
        let members: Vec<usize> = picks.into_iter().filter(|&v| v < n).collect();
        let s = CandidateSet::new(n, members.iter().copied()).unwrap();
        for &v in &members {
            let t = s.without(v);
            prop_assert_eq!(t.len() + 1, s.len());
            prop_assert!(!t.contains(v));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn lll_sample_meets_its_guarantee(seed in any::<u64>()) {
        let (f, t) = gen_regular_all_equal(90, 30, seed).unwrap();
        let h = build_full_ryb(&f, &t).unwrap();
        let r = h.min_yellow_out_degree().min(h.min_blue_out_degree());
        let cfg = SamplerConfig { m: 30, r, ..SamplerConfig::new(seed) };
        let out = sample_set_lll_ham(&h, &cfg).unwrap();
        prop_assert!(h.is_red_independent(&out.set) || out.set.is_empty());
        if !out.set.is_empty() {
            prop_assert!(h.d_star(&out.set).unwrap() >= out.guaranteed);
        }
    }
}
