//! Estimator goldens. Every number here was produced by
//! `tests/oracles/estimator_oracle.py`, which evaluates the cost formulas
//! with Python integers and fractions, independently of this crate.

use schur_prep::estimate::*;
use schur_prep::repr::{register_widths, Encoding};
use schur_prep::sweep::find_crossover;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1e-300)
}

fn params(eps: f64, enc: Encoding) -> CostParams {
    CostParams::default().with_epsilon(eps).with_encoding(enc)
}

#[test]
fn arithmetic_primitives() {
    let a = arithmetic_costs(8).unwrap();
    assert_eq!((a.add, a.mul, a.i_rec, a.c_recip, a.c_sqrt), (15, 136, 5, 1585, 8755));
    assert_eq!(a.i_sqrt, a.i_rec);
    let a = arithmetic_costs(32).unwrap();
    assert_eq!((a.add, a.mul, a.i_rec, a.c_recip, a.c_sqrt), (63, 2080, 7, 30443, 228543));
    assert_eq!(cordic_cost(8, 4).unwrap(), 180);
    assert_eq!(cordic_cost(16, 21).unwrap(), 1953);
}

#[test]
fn error_budgets() {
    let b = error_budget(1e-4, 3, 3).unwrap();
    assert_eq!((b.k_rot, b.f), (20, 21));
    assert!(close(b.delta_rot, 2.5e-6, 1e-12));
    assert!(close(b.eps_theta, 2.5e-6, 1e-12));
    assert_eq!(b.eps_rot + b.eps_arith, b.epsilon);

    let b = error_budget(1e-4, 50, 10).unwrap();
    assert_eq!((b.k_rot, b.f), (1_949_517, 37));
    assert!(close(b.delta_rot, 2.5647378299342865e-11, 1e-12));
}

#[test]
fn word_sizes() {
    assert_eq!(word_size(3, 3, 21).unwrap(), 32);
    assert_eq!(word_size(2, 2, 1).unwrap(), 11);
}

#[test]
fn register_encodings() {
    let w = |d, n, e| {
        let r = register_widths(d, n, e);
        (r.n_lambda, r.n_mu, r.n_sigma, r.n_system)
    };
    assert_eq!(w(3, 3, Encoding::Naive), (6, 6, 4, 6));
    assert_eq!(w(3, 3, Encoding::Compressed), (2, 4, 4, 6));
    assert_eq!(w(3, 3, Encoding::BalancedProxy), (2, 0, 4, 6));
    assert_eq!(w(50, 10, Encoding::Naive), (200, 4900, 54, 60));
    assert_eq!(w(50, 10, Encoding::Compressed), (6, 45, 54, 60));
    assert_eq!(w(50, 10, Encoding::BalancedProxy), (6, 34, 54, 60));
}

#[test]
fn rank_levels_d3_n3() {
    let p = params(1e-4, Encoding::Naive);
    let r3 = rank_level_cost(3, 3, 3, &p).unwrap();
    assert_eq!((r3.m_s, r3.e_s, r3.k_tot, r3.c_tof, r3.w), (3, 3, 13, 23, 32));
    assert_eq!(r3.eval.total, 1_668_309);
    assert_eq!(r3.compile_toffoli, 414);
    assert!(close(r3.te, 1_668_804.595_226_327_4, 1e-12));

    let r2 = rank_level_cost(2, 3, 3, &p).unwrap();
    assert_eq!((r2.m_s, r2.e_s, r2.k_tot, r2.c_tof, r2.w), (1, 1, 12, 21, 31));
    assert_eq!(r2.eval.total, 522_963);
    assert_eq!(r2.compile_toffoli, 42);
    assert!(close(r2.te, 523_014.066_136_258_6, 1e-12));
}

#[test]
fn schur_transform_d3_n3() {
    let b = schur_transform_te(3, 3, &params(1e-4, Encoding::Naive)).unwrap();
    assert!(close(b.t_cr, 63.4629538102558, 1e-12));
    assert_eq!(b.toffoli, 4_383_456);
    assert!(close(b.t_count, 1269.2590762051161, 1e-12));
    assert_eq!(b.te, 4_383_638);
    let q = schur_qubits(3, 3, &params(1e-4, Encoding::Naive)).unwrap();
    assert_eq!((q.q_sys, q.q_anc, q.q_total), (22, 397, 419));

    let c = schur_transform_te(3, 3, &params(1e-4, Encoding::Compressed)).unwrap();
    assert_eq!((c.toffoli, c.te), (4_382_976, 4_383_158));
    let q = schur_qubits(3, 3, &params(1e-4, Encoding::Compressed)).unwrap();
    assert_eq!((q.q_sys, q.q_total), (16, 407));
}

#[test]
fn schur_transform_d50_n10() {
    let p = params(1e-4, Encoding::Compressed);
    let b = schur_transform_te(50, 10, &p).unwrap();
    assert!(close(b.t_cr, 101.54714987811118, 1e-12));
    assert_eq!(b.toffoli, 373_650_793_353);
    assert!(close(b.t_count, 197_967_894.988_925_7, 1e-12));
    assert_eq!(b.te, 373_679_074_481);
    let q = schur_qubits(50, 10, &p).unwrap();
    assert_eq!((q.q_sys, q.q_anc, q.q_total), (165, 720, 885));
}

#[test]
fn schur_transform_d2_n2() {
    let b = schur_transform_te(2, 2, &params(0.1, Encoding::Naive)).unwrap();
    let r = &b.ranks[0];
    assert_eq!((r.k_tot, r.c_tof, r.w, r.eval.total, r.compile_toffoli), (6, 9, 16, 113_036, 18));
    assert_eq!(b.te, 113_059);
}

#[test]
fn prep_at_l50() {
    let p = prep_cost(50, &params(1e-4, Encoding::Compressed)).unwrap();
    assert_eq!((p.beta, p.r, p.m, p.k1, p.k2), (6, 14, 21, 1, 1));
    assert_eq!(p.te, 162);
    assert_eq!(p.ancilla, 59);
}

#[test]
fn qroam_blocking() {
    assert_eq!(optimal_k(50, 21).unwrap(), 1);
    assert_eq!(optimal_k(4096, 16).unwrap(), 16);
    assert_eq!(optimal_k(2, 5).unwrap(), 1);
}

#[test]
fn sel_costs() {
    let s = sel_cost(6, Some(1), Some(1)).unwrap();
    assert_eq!((s.te, s.ancilla), (13, 4));
    let s = sel_cost(8, Some(2), Some(2)).unwrap();
    assert_eq!((s.te, s.ancilla), (14, 10));
    let s = sel_cost(6, None, None).unwrap();
    assert_eq!((s.k1, s.k2, s.te, s.ancilla), (1, 2, 11, 4));
}

#[test]
fn oaa_rounds_fixtures() {
    let (r, th) = oaa_rounds(50f64.sqrt()).unwrap();
    assert_eq!(r, 6);
    assert!(close(th, 0.1418970546041639, 1e-12));

    let c = oaa_cost(2, L1Norm::cauchy_schwarz(2), 4, &CostParams::default()).unwrap();
    assert_eq!(c.r_star, Some(1));
    assert!(close(c.theta.unwrap(), std::f64::consts::FRAC_PI_4, 1e-12));
    assert_eq!(c.exact_amplification, Some(false));

    assert_eq!(oaa_rounds(2.0).unwrap().0, 1);
}

#[test]
fn end_to_end_d50_n10_l50() {
    let p = params(1e-4, Encoding::Compressed);
    let rus = end_to_end(50, 10, 50, Mode::Rus, &p).unwrap();
    assert_eq!(rus.block.te_per_attempt, 221);
    assert_eq!(rus.block.multiplicity, 50.0);
    assert_eq!(rus.te_block, 11_050);
    assert_eq!(rus.te_total, 373_679_085_531);
    assert_eq!((rus.q_block, rus.q_peak), (170, 885));

    let oaa = end_to_end(50, 10, 50, Mode::Oaa, &p).unwrap();
    assert_eq!(oaa.block.r_star, Some(6));
    assert_eq!(oaa.te_block, 2_981);
    assert_eq!(oaa.te_total, 373_679_077_462);
    assert_eq!(oaa.te_schur, rus.te_schur);
    assert_eq!(oaa.block.te_per_attempt, rus.block.te_per_attempt);
}

#[test]
fn crossover_d50_n10() {
    let p = params(1e-4, Encoding::Compressed);
    let oaa = find_crossover(50, 10, Mode::Oaa, &p).unwrap();
    assert_eq!(oaa.te_schur, 373_679_074_481);
    assert_eq!(oaa.l_star, 10_462_752_769);
    assert!(oaa.te_block_at > oaa.te_schur && oaa.te_block_before <= oaa.te_schur);
    let rus = find_crossover(50, 10, Mode::Rus, &p).unwrap();
    assert_eq!(rus.l_star, 7_163_905);
}
