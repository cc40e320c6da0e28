use proptest::prelude::*;
use schur_prep::estimate::*;
use schur_prep::repr::Encoding;

fn params(eps: f64) -> CostParams {
    CostParams::default().with_epsilon(eps)
}

fn encoding() -> impl Strategy<Value = Encoding> {
    prop_oneof![Just(Encoding::Naive), Just(Encoding::Compressed), Just(Encoding::BalancedProxy)]
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Rus), Just(Mode::Oaa)]
}

fn log_eps() -> impl Strategy<Value = f64> {
    (-12.0f64..-0.4).prop_map(|x| 10f64.powf(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn schur_te_nondecreasing_in_d(d in 2usize..=59, step in 1usize..=8, n in 2usize..=20, eps in log_eps(), enc in encoding()) {
        let p = params(eps).with_encoding(enc);
        let a = schur_transform_te(d, n, &p).unwrap().te;
        let b = schur_transform_te(d + step, n, &p).unwrap().te;
        prop_assert!(a <= b, "d={d}->{}: {a} > {b}", d + step);
    }

    #[test]
    fn schur_te_nondecreasing_in_n(d in 2usize..=40, n in 2usize..=29, step in 1usize..=8, eps in log_eps(), enc in encoding()) {
        let p = params(eps).with_encoding(enc);
        let a = schur_transform_te(d, n, &p).unwrap().te;
        let b = schur_transform_te(d, n + step, &p).unwrap().te;
        prop_assert!(a <= b, "N={n}->{}: {a} > {b}", n + step);
    }

    #[test]
    fn schur_te_nondecreasing_in_inverse_eps(d in 2usize..=40, n in 2usize..=20, eps in log_eps(), shrink in 1.0f64..1e4) {
        let a = schur_transform_te(d, n, &params(eps)).unwrap().te;
        let b = schur_transform_te(d, n, &params(eps / shrink)).unwrap().te;
        prop_assert!(a <= b, "eps={eps}->{}: {a} > {b}", eps / shrink);
    }

    #[test]
    fn prep_te_nondecreasing_in_l_at_fixed_k(l in 2u64..=1 << 16, step in 1u64..=64, k1 in 0u32..=3, k2 in 0u32..=3) {
        let p = CostParams { k1: Some(1 << k1), k2: Some(1 << k2), ..CostParams::default() };
        let a = prep_cost(l, &p).unwrap().te;
        let b = prep_cost(l + step, &p).unwrap().te;
        prop_assert!(a <= b, "L={l}->{}: {a} > {b}", l + step);
    }

    #[test]
    fn end_to_end_te_nondecreasing_in_l(l in 2u64..=1 << 16, step in 1u64..=64, m in mode()) {
        let p = params(1e-4);
        let a = end_to_end(20, 6, l, m, &p).unwrap().te_total;
        let b = end_to_end(20, 6, l + step, m, &p).unwrap().te_total;
        prop_assert!(a <= b, "L={l}->{}: {a} > {b}", l + step);
    }

    #[test]
    fn modes_share_per_attempt_cost(d in 2usize..=40, n in 2usize..=12, l in 2u64..=1 << 20) {
        let p = params(1e-4);
        let rus = end_to_end(d, n, l, Mode::Rus, &p).unwrap();
        let oaa = end_to_end(d, n, l, Mode::Oaa, &p).unwrap();
        prop_assert_eq!(rus.block.te_per_attempt, oaa.block.te_per_attempt);
        prop_assert_eq!(&rus.block.prep, &oaa.block.prep);
        prop_assert_eq!(&rus.block.sel, &oaa.block.sel);
        prop_assert_eq!(rus.te_schur, oaa.te_schur);
        prop_assert_eq!(rus.block.reflection_te, 0);
        prop_assert_eq!(rus.block.multiplicity, l as f64);
        prop_assert_eq!(oaa.block.multiplicity, (2 * oaa.block.r_star.unwrap() + 1) as f64);
    }

    #[test]
    fn epsilon_split_is_exact(d in 2usize..=200, n in 2usize..=200, eps in log_eps()) {
        let b = error_budget(eps, d, n).unwrap();
        prop_assert_eq!(b.eps_rot + b.eps_arith, eps);
        prop_assert_eq!(b.epsilon, eps);
    }

    #[test]
    fn reports_are_additive(d in 2usize..=40, n in 2usize..=15, l in 2u64..=1 << 30, eps in log_eps(), m in mode(), enc in encoding()) {
        let p = params(eps).with_encoding(enc);
        let r = end_to_end(d, n, l, m, &p).unwrap();
        prop_assert_eq!(r.te_total, r.te_block + r.te_schur);
        prop_assert_eq!(r.q_peak, r.q_block.max(r.q_schur));

        let s = &r.schur;
        for rank in &s.ranks {
            prop_assert_eq!(rank.eval.total, rank.eval.diff + rank.eval.entries + rank.eval.angles);
        }
        let per_cg: u128 = s.ranks.iter().map(|x| x.compile_toffoli + x.eval.total).sum();
        prop_assert_eq!(s.per_cg_toffoli, per_cg);
        prop_assert_eq!(s.toffoli, (n as u128 - 1) * per_cg);
        prop_assert_eq!(s.te, s.toffoli + (s.t_count / 7.0).ceil() as u128);
        prop_assert_eq!(r.te_schur, s.te);

        let b = &r.block;
        prop_assert_eq!(b.te_per_attempt, b.prep.te + b.sel.te);
        prop_assert_eq!(r.te_block, b.te_total);
        if m == Mode::Oaa {
            let apps = 2 * b.r_star.unwrap() as u128 + 1;
            prop_assert_eq!(b.te_total, apps * b.te_per_attempt as u128 + b.reflection_te);
        } else {
            prop_assert_eq!(b.te_total, l as u128 * b.te_per_attempt as u128);
        }
        let q = &r.schur_qubits;
        prop_assert_eq!(q.q_total, q.q_sys + q.q_anc);
        prop_assert_eq!(q.q_anc, q.anc_per_rank.iter().map(|x| x.1).max().unwrap());
    }

    #[test]
    fn fraction_bits_nonincreasing_in_eps(d in 2usize..=100, n in 2usize..=100, eps in log_eps(), grow in 1.0f64..100.0) {
        let big = (eps * grow).min(0.49);
        let a = error_budget(eps, d, n).unwrap().f;
        let b = error_budget(big, d, n).unwrap().f;
        prop_assert!(b <= a);
    }

    #[test]
    fn word_size_increases_with_fraction_bits(s in 2usize..=500, n in 2usize..=500, f in 1u64..=200) {
        prop_assert!(word_size(s, n, f).unwrap() < word_size(s, n, f + 1).unwrap());
    }

    #[test]
    fn oaa_rounds_follow_small_angle_estimate(l1 in 1.01f64..1e6) {
        let (r, theta) = oaa_rounds(l1).unwrap();
        let approx = std::f64::consts::FRAC_PI_4 * l1 - 0.5;
        prop_assert!((r as f64 - approx).abs() <= 1.0, "l1={l1}: r={r}, estimate {approx}");
        prop_assert!(((2 * r + 1) as f64 * theta) >= std::f64::consts::FRAC_PI_2 - 1e-9);
        prop_assert!(r == 0 || ((2 * r - 1) as f64 * theta) < std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn rus_costs_more_for_large_l1(d in 2usize..=40, n in 2usize..=12, l in 16u64..=1 << 40) {
        let p = params(1e-4);
        let rus = end_to_end(d, n, l, Mode::Rus, &p).unwrap();
        let oaa = end_to_end(d, n, l, Mode::Oaa, &p).unwrap();
        prop_assert!(rus.te_total >= oaa.te_total);
    }

    #[test]
    fn sel_default_blocking_is_optimal(n_mu in 1u64..=20_000) {
        let chosen = sel_cost(n_mu, None, None).unwrap().te;
        let mut best = u64::MAX;
        let mut k = 1u64;
        while k <= 2 * n_mu {
            best = best.min(sel_cost(n_mu, Some(1), Some(k)).unwrap().te);
            k *= 2;
        }
        prop_assert_eq!(chosen, best);
    }

    #[test]
    fn optimal_k_is_a_clamped_power_of_two(size in 1u64..=1 << 40, m in 1u64..=200) {
        let k = optimal_k(size, m).unwrap();
        prop_assert!(k.is_power_of_two());
        prop_assert!(k == 1 || k <= size / 2);
        prop_assert!(k == 1 || m.saturating_mul(k * k) <= size);
    }

    #[test]
    fn invalid_epsilon_rejected(eps in prop_oneof![0.5f64..10.0, -10.0f64..=0.0]) {
        let e = schur_transform_te(3, 3, &params(eps)).unwrap_err();
        prop_assert_eq!(e.exit_code(), 1);
    }
}
