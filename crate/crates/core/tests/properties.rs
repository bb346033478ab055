use mlsfr_core::allocator::greedy::greedy_allocate_among;
use mlsfr_core::allocator::{
    default_circles, efficiency_matrix, evaluate_pairings, greedy_allocate, solve_equal_rate,
    Pattern, UeRequest,
};
use mlsfr_core::hexgrid::NetworkLayout;
use mlsfr_core::linkmodel::{efficiency_at, InterferenceProfile, LinkParams};
use mlsfr_core::schemes::{ordering_holds, CoverageRule, Role, Scheme};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn layout() -> NetworkLayout {
    NetworkLayout::new(1.0).unwrap()
}

proptest! {
    #[test]
    fn distances_respect_triangle_inequality_and_symmetry(beta in 1e-6f64..=1.0) {
        let l = layout();
        let d = l.distances(beta).unwrap();
        prop_assert!((d[0] - beta).abs() < 1e-15);
        for dn in &d[1..] {
            prop_assert!(*dn >= 3f64.sqrt() - beta - 1e-12);
        }
        // sites 1 and 6 mirror each other about the UE axis
        prop_assert!((d[1] - d[6]).abs() < 1e-12);
        prop_assert!((d[2] - d[5]).abs() < 1e-12);
    }

    #[test]
    fn distances_scale_with_radius(beta in 0.01f64..=1.0, lambda in 0.1f64..10.0) {
        let a = layout().distances(beta).unwrap();
        let b = NetworkLayout::new(lambda).unwrap().distances(beta).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            prop_assert!((lambda * x - y).abs() <= 1e-12 * y.max(1.0));
        }
    }

    #[test]
    fn scheme_invariants(n in 1usize..10, gamma_min in -40.0f64..=0.0) {
        let s = Scheme::mlsfr(n, gamma_min).unwrap();
        prop_assert!(ordering_holds(&s));
        let total: f64 = s.caps().iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        for l in s.levels() {
            let p = s.level(l.partner_index).unwrap();
            prop_assert_eq!(p.partner_index, l.index);
            prop_assert_ne!(p.role, l.role);
            if l.role == Role::Primary {
                prop_assert!((2.0 * l.bandwidth_cap - p.bandwidth_cap).abs() < 1e-15);
            }
        }
        prop_assert_eq!(s.levels()[0].gain_db, 0.0);
    }

    #[test]
    fn eta_decreasing_in_first_ring_gain(
        beta in 0.05f64..=1.0,
        g in -40.0f64..-0.01,
        dg in 0.01f64..5.0,
    ) {
        let (p, l) = (LinkParams::default(), layout());
        let hi = (g + dg).min(0.0);
        let low = efficiency_at(&p, &l, &InterferenceProfile::soft_reuse(g).unwrap(), beta).unwrap();
        let high = efficiency_at(&p, &l, &InterferenceProfile::soft_reuse(hi).unwrap(), beta).unwrap();
        prop_assert!(low > high);
    }

    #[test]
    fn eta_decreasing_in_second_ring_gain(beta in 0.05f64..=1.0, g in -40.0f64..-0.01) {
        let (p, l) = (LinkParams::default(), layout());
        let quiet = InterferenceProfile::new(0.0, -10.0, g).unwrap();
        let loud = InterferenceProfile::new(0.0, -10.0, 0.0).unwrap();
        prop_assert!(
            efficiency_at(&p, &l, &quiet, beta).unwrap() > efficiency_at(&p, &l, &loud, beta).unwrap()
        );
    }

    #[test]
    fn eta_decreasing_in_beta(b1 in 0.02f64..0.99, db in 0.005f64..0.5, g in -30.0f64..=0.0) {
        let (p, l) = (LinkParams::default(), layout());
        let b2 = (b1 + db).min(1.0);
        let prof = InterferenceProfile::soft_reuse(g).unwrap();
        prop_assert!(efficiency_at(&p, &l, &prof, b1).unwrap() > efficiency_at(&p, &l, &prof, b2).unwrap());
    }

    #[test]
    fn lp_residuals_are_tiny(n in 1usize..6, gamma_min in -25.0f64..-1.0) {
        let s = Scheme::mlsfr(n, gamma_min).unwrap();
        let eff = efficiency_matrix(&LinkParams::default(), &layout(), &s, &default_circles()).unwrap();
        let res = solve_equal_rate(&s, &eff).unwrap();
        prop_assert!(res.max_residual(&s.caps(), &eff) <= 1e-9);
        prop_assert!(res.x.iter().flatten().all(|&v| v >= 0.0));
    }

    #[test]
    fn greedy_never_violates_coverage_or_caps(
        reqs in prop::collection::vec((0.01f64..=1.0, 0.001f64..0.2), 1..40),
        n in 1usize..5,
        margin in 0.5f64..2.0,
    ) {
        let s = Scheme::mlsfr(n, -17.0).unwrap();
        let rule = CoverageRule::new(margin, 37.6).unwrap();
        let requests: Vec<UeRequest> = reqs.iter().map(|&(b, d)| UeRequest::new(b, d)).collect();
        let out = greedy_allocate(&requests, &s, &rule).unwrap();
        let mut used = vec![0.0; s.len()];
        for a in &out.assignments {
            match a.level {
                Some(level) => {
                    let gain = s.level(level).unwrap().gain_db;
                    prop_assert!(rule.beta_max(gain) >= a.beta0);
                    used[level - 1] += a.demand;
                }
                None => prop_assert!(a.denial.is_some()),
            }
        }
        for (u, c) in used.iter().zip(s.caps()) {
            prop_assert!(*u <= c + 1e-9);
        }
    }
}

#[test]
fn lp_beats_random_feasible_allocations() {
    use proptest::test_runner::TestRunner;
    let s = Scheme::mlsfr(4, -17.0).unwrap();
    let eff = efficiency_matrix(&LinkParams::default(), &layout(), &s, &default_circles()).unwrap();
    let best = solve_equal_rate(&s, &eff).unwrap().common_rate;
    let caps = s.caps();
    let mut runner = TestRunner::deterministic();
    let weights = prop::collection::vec(prop::collection::vec(0.0f64..1.0, 8), 8);
    for _ in 0..100 {
        let w = weights.new_tree(&mut runner).unwrap().current();
        // spread each level's cap over circles in proportion to random weights
        let x: Vec<Vec<f64>> = w
            .iter()
            .zip(&caps)
            .map(|(row, cap)| {
                let sum: f64 = row.iter().sum::<f64>().max(1e-12);
                row.iter().map(|v| cap * v / sum).collect()
            })
            .collect();
        let rate = (0..8)
            .map(|i| (0..8).map(|n| x[n][i] * eff.eta[n][i]).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        assert!(best >= rate, "LP {best} < feasible {rate}");
    }
}

#[test]
fn sfr8_solution_is_banded() {
    let s = Scheme::mlsfr(4, -17.0).unwrap();
    let eff = efficiency_matrix(&LinkParams::default(), &layout(), &s, &default_circles()).unwrap();
    let res = solve_equal_rate(&s, &eff).unwrap();
    let support = |i: usize| -> Vec<usize> { (0..8).filter(|&n| res.x[n][i] > 1e-12).collect() };
    let mut prev: Option<(usize, usize)> = None;
    for i in 0..8 {
        let levels = support(i);
        let (lo, hi) = (levels[0], *levels.last().unwrap());
        // a contiguous run of levels per circle
        assert_eq!(hi - lo + 1, levels.len(), "circle {i}: {levels:?}");
        assert!(levels.len() <= 3, "circle {i}: {levels:?}");
        // outer circles move to higher-PDL levels
        if let Some((plo, phi)) = prev {
            assert!(lo <= plo && hi <= phi, "circle {i}: {levels:?}");
        }
        prev = Some((lo, hi));
    }
}

#[test]
fn greedy_two_cell_scenario() {
    // SFR-4 seen from two neighbouring cells. In cell 1 the sub-bands f2, f1
    // are primary levels 1 and 2; in cell 2 the same sub-bands are secondary
    // levels 4 and 3.
    let s = Scheme::mlsfr(2, -12.0).unwrap();
    let rule = CoverageRule::new(1.0, 37.6).unwrap();
    let cap = s.levels()[0].bandwidth_cap;
    let (f2_cell1, f1_cell1, f1_cell2, f2_cell2) = (1, 2, 3, 4);

    // T11 near, T12 at the edge
    let cell1 = [UeRequest::new(0.3, cap), UeRequest::new(0.9, cap)];
    let out1 = greedy_allocate_among(&cell1, &s, &rule, &[f2_cell1, f1_cell1]).unwrap();
    assert_eq!(out1.assignments[0].band_list, vec![f1_cell1, f2_cell1]);
    assert_eq!(out1.assignments[1].band_list, vec![f2_cell1]);
    assert_eq!(out1.assignments[0].level, Some(f1_cell1));
    assert_eq!(out1.assignments[1].level, Some(f2_cell1));

    // T21 near, T22 farther out
    let cap2 = s.levels()[2].bandwidth_cap;
    let cell2 = [UeRequest::new(0.3, cap2), UeRequest::new(0.55, cap2)];
    let out2 = greedy_allocate_among(&cell2, &s, &rule, &[f1_cell2, f2_cell2]).unwrap();
    assert_eq!(out2.assignments[0].band_list, vec![f2_cell2, f1_cell2]);
    assert_eq!(out2.assignments[1].band_list, vec![f1_cell2]);
    assert_eq!(out2.assignments[0].level, Some(f2_cell2));
    assert_eq!(out2.assignments[1].level, Some(f1_cell2));

    // T12 (edge) shares f2 with T21 (near); T11 shares f1 with T22
    assert_eq!(s.level(f2_cell1).unwrap().partner_index, f2_cell2);
    assert_eq!(s.level(f1_cell1).unwrap().partner_index, f1_cell2);

    // taking the wider band first would starve the edge UE
    let wrong = greedy_allocate_among(&cell1, &s, &rule, &[f2_cell1]).unwrap();
    assert!(wrong.assignments[0].satisfied());
    assert!(!wrong.assignments[1].satisfied());
}

#[test]
fn pairing_prefers_assortative_pattern() {
    use proptest::test_runner::TestRunner;
    let (p, l) = (LinkParams::default(), layout());
    let mut runner = TestRunner::deterministic();
    let pos = (0.05f64..=1.0, 0.05f64..=1.0, 0.05f64..=1.0, 0.05f64..=1.0);
    let mut checked = 0;
    while checked < 200 {
        let (a, b, c, d) = pos.new_tree(&mut runner).unwrap().current();
        if (a - b).abs() < 0.02 || (c - d).abs() < 0.02 {
            continue;
        }
        let cmp = evaluate_pairings([a, b], [c, d], &p, &l).unwrap();
        let assortative = cmp.assortative.unwrap();
        assert_eq!(cmp.better, Some(assortative), "edge {a},{b} centre {c},{d}");
        let (win, lose) = match assortative {
            Pattern::Direct => (&cmp.direct, &cmp.swapped),
            Pattern::Swapped => (&cmp.swapped, &cmp.direct),
        };
        assert!(win.min_eta > lose.min_eta);
        checked += 1;
    }
}
