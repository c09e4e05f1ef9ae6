use costas_core::arrays::{
    enumerate_family, fixed_points, is_costas_difference_triangle, is_costas_grid,
    is_golomb_ruler, welch_exp, welch_log, FamilyId, Permutation,
};
use costas_core::bounds::{sidon_bound, trinomial_root_bound, trinomial_root_count};
use costas_core::numthy::{primes_in, PrimeContext};
use costas_core::xcorr::{
    correlation_grid, cross_correlation_at, max_over, pair_max, PairScratch, ShiftFilter,
    ShiftPair,
};
use proptest::prelude::*;

fn permutation(max_order: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_order).prop_flat_map(|n| {
        Just((1..=n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    })
}

fn pair(max_order: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max_order).prop_flat_map(|n| {
        let one = Just((1..=n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap());
        (one.clone(), one)
    })
}

const FILTERS: [ShiftFilter; 9] = [
    ShiftFilter::All,
    ShiftFilter::VZero,
    ShiftFilter::UZero,
    ShiftFilter::VNonzero,
    ShiftFilter::UNonzeroVZero,
    ShiftFilter::UZeroVNonzero,
    ShiftFilter::UNonzeroVNonzero,
    ShiftFilter::OriginOnly,
    ShiftFilter::ExcludeOrigin,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn grid_mass_is_n_squared((f, g) in pair(48)) {
        let n = f.order() as u64;
        prop_assert_eq!(correlation_grid(&f, &g).unwrap().total(), n * n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn grid_matches_definition((f, g) in pair(20)) {
        let grid = correlation_grid(&f, &g).unwrap();
        for (s, c) in grid.entries() {
            prop_assert_eq!(cross_correlation_at(&f, &g, s).unwrap(), c as usize);
        }
    }

    #[test]
    fn swap_negates_and_inverse_transposes((f, g) in pair(30)) {
        let fg = correlation_grid(&f, &g).unwrap();
        let gf = correlation_grid(&g, &f).unwrap();
        let inv = correlation_grid(&f.inverse(), &g.inverse()).unwrap();
        for (s, c) in fg.entries() {
            prop_assert_eq!(gf.get(ShiftPair::new(-s.u, -s.v)), c);
            prop_assert_eq!(inv.get(ShiftPair::new(s.v, s.u)), c);
        }
    }

    #[test]
    fn streamed_maximum_matches_grid((f, g) in pair(30), auto in any::<bool>()) {
        let g = if auto { f.clone() } else { g };
        let grid = correlation_grid(&f, &g).unwrap();
        let mut scratch = PairScratch::new(f.order());
        for filter in FILTERS {
            let streamed = pair_max(f.values(), g.values(), filter, auto, &mut scratch);
            let full = max_over(&grid, filter, auto).ok();
            prop_assert_eq!(streamed, full, "filter {}", filter);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn costas_checkers_agree(f in permutation(9)) {
        prop_assert_eq!(is_costas_grid(&f), is_costas_difference_triangle(&f));
    }

    #[test]
    fn text_round_trip(f in permutation(40)) {
        prop_assert_eq!(f.to_string().parse::<Permutation>().unwrap(), f.clone());
        prop_assert_eq!(f.inverse().inverse(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn trinomial_roots_within_bound(
        idx in 0usize..57,
        n_frac in 0.0f64..1.0,
        s_frac in 0.0f64..1.0,
        a_frac in 0.0f64..1.0,
        b_frac in 0.0f64..1.0,
    ) {
        let primes = primes_in(5, 277);
        let p = primes[idx % primes.len()];
        let pick = |lo: u64, hi: u64, t: f64| lo + ((hi - lo + 1) as f64 * t) as u64;
        let n = pick(2, p - 2, n_frac).min(p - 2);
        let s = pick(1, n - 1, s_frac).min(n - 1);
        let a = pick(1, p - 1, a_frac).min(p - 1);
        let b = pick(1, p - 1, b_frac).min(p - 1);
        let count = trinomial_root_count(p, n, s, a, b).unwrap();
        prop_assert!(count <= trinomial_root_bound(p, n, s), "p={} n={} s={} a={} b={}", p, n, s, a, b);
    }
}

#[test]
fn welch_arrays_are_costas_with_golomb_fixed_points() {
    for p in primes_in(5, 61) {
        let ctx = PrimeContext::new(p).unwrap();
        for &alpha in &ctx.primitive_roots {
            for c in 0..=1 {
                for f in [
                    welch_exp(&ctx, alpha, c).unwrap(),
                    welch_log(&ctx, alpha, c).unwrap(),
                ] {
                    assert!(is_costas_grid(&f), "p={p} alpha={alpha} c={c}: {f}");
                    assert!(is_costas_difference_triangle(&f));
                    let fixed = fixed_points(&f);
                    let marks: Vec<i64> = fixed.iter().map(|&x| x as i64).collect();
                    assert!(is_golomb_ruler(&marks), "{f}: {fixed:?}");
                    assert!((fixed.len() as f64) < sidon_bound(ctx.n));
                }
            }
        }
    }
}

#[test]
fn checkers_agree_on_constructed_arrays() {
    let mut non_costas_power = 0;
    for p in primes_in(5, 61) {
        let ctx = PrimeContext::new(p).unwrap();
        for id in FamilyId::ALL {
            let Ok(members) = enumerate_family(&ctx, id) else {
                continue;
            };
            for m in members {
                let by_grid = is_costas_grid(&m.permutation);
                assert_eq!(by_grid, is_costas_difference_triangle(&m.permutation));
                if id == FamilyId::Pp && !by_grid {
                    non_costas_power += 1;
                }
            }
        }
    }
    assert!(non_costas_power > 0, "power permutations are not Costas in general");
}

#[test]
fn welch_and_power_families_are_disjoint() {
    for p in primes_in(5, 127) {
        let ctx = PrimeContext::new(p).unwrap();
        let wp = enumerate_family(&ctx, FamilyId::Wp).unwrap();
        let pp = enumerate_family(&ctx, FamilyId::Pp).unwrap();
        for w in &wp {
            assert!(pp.iter().all(|q| q.permutation != w.permutation), "p={p}");
        }
    }
}

#[test]
fn family_sizes() {
    for p in primes_in(5, 277) {
        let ctx = PrimeContext::new(p).unwrap();
        let phi = ctx.totient_n as usize;
        let expect = [phi, phi, 2 * phi, phi - 1, 2 * phi - 1, 2 * phi - 1];
        for (id, want) in FamilyId::ALL.into_iter().zip(expect) {
            match enumerate_family(&ctx, id) {
                Ok(m) => assert_eq!(m.len(), want, "{id} at p={p}"),
                Err(_) => assert!(id == FamilyId::Wpel && p == 5),
            }
        }
    }
}
