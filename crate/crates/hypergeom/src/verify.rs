//! The named verification suite: one record per invariant, deterministic
//! under a seed, fanned out over a worker pool and merged by check id.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::continuation::{
    eigenvalue_set_distance, expected_infinity_eigenvalues, expected_zero_monodromy,
    h_infinity_factor, h_zero_loop_quotient_residual, laurent_solution_check, monodromy_along,
    monodromy_at_infinity, monodromy_at_one, monodromy_at_zero, PathSpec,
};
use crate::diffop::{
    build_d, build_p_hg, build_q_hg, build_theta, build_theta2_step, build_theta_lambda,
    DiffOperator, OpBasis,
};
use crate::error::Result;
use crate::functions::{
    apply_op, deriv_stack, family_derivative, kummer_residual, op_term_scale, Family,
};
use crate::params::{unit_root_pow, HGParams};
use crate::periods::{eval_p_m, eval_q_m, scan_nondegenerate_level};
use crate::poly::Poly;
use crate::quadrature::{verify_h_integral, verify_int_rep_2f1, verify_int_rep_3f2};
use crate::ratfun::{RatFun, RatLam};
use crate::regulator::{
    birat_instantiate, check_regulator_congruence, check_three_term_congruence,
    exterior_sample_grid, RegulatorRecursion,
};
use crate::report::{CheckRecord, Report};
use crate::scalar::{pow_principal_rat, rat, rat_int, rat_to_c64, Rat, C64};
use crate::series::{eval_2f1, eval_pfq, HGSeriesSpec, TruncationPolicy};
use crate::theta::ThetaData;

fn c64(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn pol() -> TruncationPolicy {
    TruncationPolicy::default()
}

fn rng_for(seed: u64, check_id: &str) -> ChaCha8Rng {
    // stable per-check stream: fold the id into the seed
    let mut h = 1469598103934665603u64;
    for b in check_id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(1099511628211);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Admissible random parameters (used across the randomized checks).
pub fn sample_params(rng: &mut ChaCha8Rng) -> HGParams {
    loop {
        let l = rng.gen_range(2..=5i64);
        let k = rng.gen_range(1..l);
        let j = rng.gen_range(1..=3i64);
        let da = rng.gen_range(2..=9i64);
        let na = rng.gen_range(1..da);
        let db = rng.gen_range(2..=9i64);
        let nb = rng.gen_range(1..db);
        if let Ok(p) = HGParams::new(rat(na, da), rat(nb, db), rat(k + j * l, l), l) {
            return p;
        }
    }
}

fn sample_disc1(rng: &mut ChaCha8Rng, margin: f64) -> C64 {
    let r = rng.gen_range(margin..(1.0 - margin));
    let th = rng.gen_range(0.0..(2.0 * std::f64::consts::PI));
    C64::new(1.0 - r * th.cos(), -r * th.sin())
}

fn sample_lens(rng: &mut ChaCha8Rng, margin: f64) -> C64 {
    loop {
        let z = sample_disc1(rng, margin);
        if z.norm() < 1.0 - margin {
            return z;
        }
    }
}

fn sample_exterior(rng: &mut ChaCha8Rng, margin: f64) -> C64 {
    let r = rng.gen_range((1.0 + margin)..3.2);
    let th = rng.gen_range(0.0..(2.0 * std::f64::consts::PI));
    C64::new(1.0 - r * th.cos(), -r * th.sin())
}

fn reference_params() -> HGParams {
    HGParams::new(rat(1, 3), rat(1, 5), rat(7, 2), 2).expect("reference parameters")
}

fn reference_td() -> ThetaData {
    ThetaData::derive(
        Poly::constant(rat_int(1)),
        Poly::new(vec![rat_int(0), rat_int(1), rat_int(-1)]),
    )
    .expect("reference operator data")
}

/// Five admissible operator-data choices, the reference one first.
fn theta_data_choices() -> Vec<ThetaData> {
    let p = |cs: &[i64]| Poly::new(cs.iter().map(|&c| rat_int(c)).collect::<Vec<Rat>>());
    vec![
        reference_td(),
        ThetaData::derive(p(&[1]), Poly::zero()).unwrap(),
        ThetaData::derive(p(&[0, 1]), p(&[0, 1, -1])).unwrap(),
        // p1 = t(1-t)(1+2t) = t + t^2 - 2t^3
        ThetaData::derive(p(&[3, -2, 0, 5]), p(&[0, 1, 1, -2])).unwrap(),
        // p1 = t^2(1-t)
        ThetaData::derive(p(&[2, 0, -1]), p(&[0, 0, 1, -1])).unwrap(),
    ]
}

// ---------------------------------------------------------------------
// core

fn core_pochhammer_additivity(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "core.pochhammer_additivity");
    let mut worst = 0.0f64;
    let cases = 60;
    for _ in 0..cases {
        let alpha = rat(rng.gen_range(-20..40), rng.gen_range(1..9));
        let (n, m) = (rng.gen_range(0..8u32), rng.gen_range(0..8u32));
        let lhs = crate::gamma::pochhammer_rat(&alpha, n + m);
        let rhs = crate::gamma::pochhammer_rat(&alpha, n)
            * crate::gamma::pochhammer_rat(&(&alpha + rat_int(n as i64)), m);
        if lhs != rhs {
            worst = f64::INFINITY;
        }
        let a = C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let clhs = crate::gamma::pochhammer(a, n + m);
        let crhs = crate::gamma::pochhammer(a, n) * crate::gamma::pochhammer(a + c64(n as f64), m);
        worst = worst.max((clhs - crhs).norm() / crhs.norm().max(1e-300));
    }
    CheckRecord::new(
        "core.pochhammer_additivity",
        "60 random (alpha, n, m)",
        cases,
        worst,
        1e-13,
    )
}

fn core_gamma_functional_equations(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "core.gamma_functional_equations");
    let mut worst = 0.0f64;
    let cases = 80;
    for _ in 0..cases {
        let z = C64::new(rng.gen_range(-19.5..19.5), rng.gen_range(-19.5..19.5));
        if crate::scalar::is_near_nonpositive_integer(z, 0.05)
            || crate::scalar::is_near_nonpositive_integer(z + c64(1.0), 0.05)
            || crate::scalar::is_near_nonpositive_integer(c64(1.0) - z, 0.05)
        {
            continue;
        }
        let g = match crate::gamma::gamma(z) {
            Ok(g) => g,
            Err(_) => continue,
        };
        let rec = (crate::gamma::gamma(z + c64(1.0)).unwrap() - z * g).norm()
            / (z * g).norm().max(1e-300);
        let pi = std::f64::consts::PI;
        let refl = (g * crate::gamma::gamma(c64(1.0) - z).unwrap() - c64(pi) / (c64(pi) * z).sin())
            .norm()
            / (c64(pi) / (c64(pi) * z).sin()).norm().max(1e-300);
        worst = worst.max(rec).max(refl);
    }
    CheckRecord::new(
        "core.gamma_functional_equations",
        "recurrence and reflection on |Re|,|Im| <= 20",
        cases,
        worst,
        1e-11,
    )
}

fn core_pfq_contiguity(seed: u64) -> CheckRecord {
    // d/dx 2F1(a,b;c;x) = (ab/c) 2F1(a+1,b+1;c+1;x), via circle
    // differentiation of the series evaluator
    let mut rng = rng_for(seed, "core.pfq_contiguity");
    let mut worst = 0.0f64;
    let cases = 25;
    for _ in 0..cases {
        let a = C64::new(rng.gen_range(-1.5..2.5), rng.gen_range(-1.0..1.0));
        let b = C64::new(rng.gen_range(-1.5..2.5), rng.gen_range(-1.0..1.0));
        let c = C64::new(rng.gen_range(0.5..3.0), rng.gen_range(-1.0..1.0));
        let x = C64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.4..0.4));
        let d = crate::functions::cauchy_derivative(
            |z| Ok(eval_2f1(a, b, c, z, &pol())?.value),
            x,
            0.04,
            32,
        )
        .unwrap();
        let want = a * b / c
            * eval_2f1(a + c64(1.0), b + c64(1.0), c + c64(1.0), x, &pol())
                .unwrap()
                .value;
        worst = worst.max((d - want).norm() / want.norm().max(1e-300));
    }
    CheckRecord::new(
        "core.pfq_contiguity",
        "25 random Gauss parameter sets",
        cases,
        worst,
        1e-10,
    )
}

fn core_pfq_est_error_honesty(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "core.pfq_est_error_honesty");
    let loose = TruncationPolicy::new(1e-9, 10_000).unwrap();
    let tight = TruncationPolicy::new(1e-11, 10_000).unwrap();
    let mut worst = 0.0f64;
    let cases = 100;
    for _ in 0..cases {
        let a = C64::new(rng.gen_range(-2.0..3.0), rng.gen_range(-1.0..1.0));
        let b = C64::new(rng.gen_range(-2.0..3.0), rng.gen_range(-1.0..1.0));
        let c = C64::new(rng.gen_range(0.3..4.0), rng.gen_range(-1.0..1.0));
        let x = C64::new(rng.gen_range(-0.7..0.7), rng.gen_range(-0.5..0.5));
        let spec = HGSeriesSpec::new(vec![a, b], vec![c]).unwrap();
        let v1 = eval_pfq(&spec, x, &loose).unwrap();
        let v2 = eval_pfq(&spec, x, &tight).unwrap();
        let drift = (v1.value - v2.value).norm();
        // ratio must stay below 1 for the bound to be honest
        worst = worst.max(drift / v1.est_error.max(1e-18 * v2.value.norm().max(1e-300)));
    }
    CheckRecord::new(
        "core.pfq_est_error_honesty",
        "100 random specs, tolerance/100 re-evaluation",
        cases,
        worst,
        1.0,
    )
}

// ---------------------------------------------------------------------
// functions: ODE annihilation and derivative recurrences

fn fun_ode_annihilation(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "fun.ode_annihilation");
    let mut worst = 0.0f64;
    let mut samples = 0usize;
    for _ in 0..20 {
        let p = sample_params(&mut rng);
        let op = build_d(&p);
        for _ in 0..50 {
            // F on its disc
            let lam = sample_disc1(&mut rng, 0.12);
            match crate::functions::annihilator_residual(Family::FMu, &p, lam, &pol()) {
                Ok(r) => worst = worst.max(r),
                Err(e) => return CheckRecord::errored("fun.ode_annihilation", &e),
            }
            // G on the lens
            let lam = sample_lens(&mut rng, 0.12);
            match crate::functions::annihilator_residual(Family::GMu, &p, lam, &pol()) {
                Ok(r) => worst = worst.max(r),
                Err(e) => return CheckRecord::errored("fun.ode_annihilation", &e),
            }
            // H with the explicit inhomogeneity -(lam-1)^(mu-1)
            let lam = sample_exterior(&mut rng, 0.15);
            let stack = match deriv_stack(Family::HMu, &p, 0, lam, 2, &pol()) {
                Ok(s) => s,
                Err(e) => return CheckRecord::errored("fun.ode_annihilation", &e),
            };
            let got = op.apply_with_derivatives(lam, &stack).unwrap();
            let inhom = -pow_principal_rat(lam - c64(1.0), &(p.mu() - rat_int(1))).unwrap();
            let scale = op_term_scale(&op, lam, &stack).max(inhom.norm());
            worst = worst.max((got - inhom).norm() / scale);
            samples += 3;
        }
    }
    CheckRecord::new(
        "fun.ode_annihilation",
        "20 random parameter sets, 50 points per family",
        samples,
        worst,
        1e-9,
    )
}

fn recurrence_check(
    id: &'static str,
    seed: u64,
    fam: Family,
    params_count: usize,
    each: usize,
) -> CheckRecord {
    let mut rng = rng_for(seed, id);
    let mut worst = 0.0f64;
    let mut n = 0usize;
    for _ in 0..params_count {
        let p = sample_params(&mut rng);
        let mu1 = rat_to_c64(&(p.mu() - rat_int(1))).unwrap();
        for _ in 0..each {
            let lam = match fam {
                Family::FMu => sample_disc1(&mut rng, 0.12),
                Family::GMu => sample_lens(&mut rng, 0.12),
                Family::HMu => sample_exterior(&mut rng, 0.12),
            };
            let d = match family_derivative(fam, &p, 0, lam, 0.04, 32, &pol()) {
                Ok(d) => d,
                Err(e) => return CheckRecord::errored(id, &e),
            };
            let want = mu1 * fam.eval(&p, -1, lam, &pol()).unwrap();
            worst = worst.max((d - want).norm() / want.norm().max(1e-300));
            n += 1;
        }
    }
    CheckRecord::new(
        id,
        format!("{params_count} parameter sets x {each} points"),
        n,
        worst,
        1e-9,
    )
}

fn fun_partial_f(seed: u64) -> CheckRecord {
    recurrence_check("fun.partial_f", seed, Family::FMu, 20, 50)
}

fn fun_partial_g(seed: u64) -> CheckRecord {
    recurrence_check("fun.partial_g", seed, Family::GMu, 20, 50)
}

fn fun_derive_h(seed: u64) -> CheckRecord {
    recurrence_check("fun.derive_h", seed, Family::HMu, 20, 50)
}

fn fun_kummer_relation(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "fun.kummer_relation");
    let mut worst = 0.0f64;
    let mut n = 0usize;
    let mut pairs = 0usize;
    while pairs < 10 {
        let da = rng.gen_range(3..=9i64);
        let na = rng.gen_range(1..da);
        let db = rng.gen_range(3..=9i64);
        let nb = rng.gen_range(1..db);
        let (alpha, beta) = (rat(na, da), rat(nb, db));
        let s = &alpha + &beta;
        if s.denom() == &num::BigInt::from(1) {
            continue; // alpha + beta integral degenerates the relation
        }
        pairs += 1;
        for k in 0..20 {
            let t = 0.05 + 0.9 * (k as f64 + 0.5) / 20.0;
            match kummer_residual(&alpha, &beta, c64(t), &pol()) {
                Ok(r) => worst = worst.max(r),
                Err(e) => return CheckRecord::errored("fun.kummer_relation", &e),
            }
            n += 1;
        }
        // 20-point sweep of the complex lens region (both half planes)
        for k in 0..20 {
            let re = 0.2 + 0.6 * (k as f64 + 0.5) / 20.0;
            let im = 0.35 * (0.5 + k as f64 * 0.9).sin();
            match kummer_residual(&alpha, &beta, C64::new(re, im), &pol()) {
                Ok(r) => worst = worst.max(r),
                Err(e) => return CheckRecord::errored("fun.kummer_relation", &e),
            }
            n += 1;
        }
    }
    CheckRecord::new(
        "fun.kummer_relation",
        "10 parameter pairs x (20 real t + 20 lens points)",
        n,
        worst,
        1e-10,
    )
}

fn fun_f1_f3_basis(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "fun.f1_f3_basis");
    let mut worst_det = f64::INFINITY;
    let cases = 12;
    let mut done = 0usize;
    while done < cases {
        let p = sample_params(&mut rng);
        // at alpha + beta integral the two solutions coincide (the
        // degenerate stratum excluded by the relation's hypotheses)
        if (p.alpha() + p.beta()).denom() == &num::BigInt::from(1) {
            continue;
        }
        done += 1;
        let (t1, t2) = (c64(rng.gen_range(0.1..0.4)), c64(rng.gen_range(0.45..0.8)));
        let m = [
            crate::functions::eval_f1(p.alpha(), p.beta(), t1, &pol()).unwrap(),
            crate::functions::eval_f3(p.alpha(), p.beta(), t1, &pol()).unwrap(),
            crate::functions::eval_f1(p.alpha(), p.beta(), t2, &pol()).unwrap(),
            crate::functions::eval_f3(p.alpha(), p.beta(), t2, &pol()).unwrap(),
        ];
        let det = (m[0] * m[3] - m[1] * m[2]).norm();
        let scale = m.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        worst_det = worst_det.min(det / (scale * scale));
    }
    let mut rec = CheckRecord::new(
        "fun.f1_f3_basis",
        "two-point independence determinant, 12 parameter sets",
        cases,
        0.0,
        1.0,
    );
    rec.pass = worst_det > 1e-10;
    rec.residual = worst_det;
    rec.note =
        "residual column holds the smallest relative determinant (must exceed 1e-10)".to_string();
    rec
}

// ---------------------------------------------------------------------
// quadrature oracles

fn quad_int_rep_2f1(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "quad.int_rep_2f1");
    let mut worst = 0.0f64;
    let cases = 20;
    for i in 0..cases {
        let a = rat(rng.gen_range(-3..6), rng.gen_range(2..7));
        let b = rat(rng.gen_range(1..8), rng.gen_range(2..7));
        let c = &b + rat(rng.gen_range(1..8), rng.gen_range(2..7));
        let x = if i % 3 == 2 {
            C64::new(rng.gen_range(-0.6..0.6), rng.gen_range(-0.3..0.3))
        } else {
            c64(rng.gen_range(-0.7..0.7))
        };
        match verify_int_rep_2f1(&a, &b, &c, x, 1e-11) {
            Ok(r) => worst = worst.max(r),
            Err(e) => return CheckRecord::errored("quad.int_rep_2f1", &e),
        }
    }
    CheckRecord::new(
        "quad.int_rep_2f1",
        "20 admissible (a, b, c, x)",
        cases,
        worst,
        1e-8,
    )
}

fn quad_int_rep_3f2(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "quad.int_rep_3f2");
    let mut worst = 0.0f64;
    let cases = 20;
    for _ in 0..cases {
        let a = rat(rng.gen_range(-2..5), rng.gen_range(2..6));
        let b = rat(rng.gen_range(1..6), rng.gen_range(2..6));
        let c = rat(rng.gen_range(1..7), rng.gen_range(2..6));
        let d = rat(rng.gen_range(2..8), rng.gen_range(1..4));
        let e = &c + rat(rng.gen_range(1..6), rng.gen_range(2..5));
        let x = c64(rng.gen_range(-0.6..0.6));
        match verify_int_rep_3f2(&a, &b, &c, &d, &e, x, 1e-11) {
            Ok(r) => worst = worst.max(r),
            Err(e) => return CheckRecord::errored("quad.int_rep_3f2", &e),
        }
    }
    CheckRecord::new(
        "quad.int_rep_3f2",
        "20 admissible 5-tuples",
        cases,
        worst,
        1e-8,
    )
}

fn quad_h_integral(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "quad.h_integral");
    let mut worst = 0.0f64;
    let cases = 20;
    for _ in 0..cases {
        let p = sample_params(&mut rng);
        let lam = sample_exterior(&mut rng, 0.2);
        match verify_h_integral(&p, lam, 1e-10) {
            Ok(r) => worst = worst.max(r),
            Err(e) => return CheckRecord::errored("quad.h_integral", &e),
        }
    }
    CheckRecord::new(
        "quad.h_integral",
        "20 admissible (params, lambda)",
        cases,
        worst,
        1e-8,
    )
}

fn quad_self_consistency(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "quad.self_consistency");
    let mut worst = 0.0f64;
    let cases = 50;
    for _ in 0..cases {
        let pl = rng.gen_range(-0.8..1.5);
        let pr = rng.gen_range(-0.8..1.5);
        let k = rng.gen_range(0.3..4.0);
        let w =
            crate::quadrature::WeightedIntegrand::new(pl, pr, move |t, _| Ok(c64((k + t).ln())))
                .unwrap();
        let (v1, e1) = crate::quadrature::integrate_01(&w, 1e-8).unwrap();
        let (v2, _) = crate::quadrature::integrate_01(&w, 5e-9).unwrap();
        worst = worst.max((v1 - v2).norm() / e1.max(1e-16));
    }
    CheckRecord::new(
        "quad.self_consistency",
        "50 weighted integrands, halved tolerance drift vs est_error",
        cases,
        worst,
        1.0,
    )
}

fn quad_branch_continuity(seed: u64) -> CheckRecord {
    let _ = seed;
    // residual along an upper-half-plane path: no branch-jump spikes
    let p = reference_params();
    let mut residuals = Vec::new();
    for k in 0..12 {
        let t = k as f64 / 11.0;
        let lam = C64::new(
            -1.8 + 4.4 * t,
            1.25 + 0.4 * (std::f64::consts::PI * t).sin(),
        );
        if (c64(1.0) - lam).norm() <= 1.05 {
            continue;
        }
        match verify_h_integral(&p, lam, 1e-10) {
            Ok(r) => residuals.push(r),
            Err(e) => return CheckRecord::errored("quad.branch_continuity", &e),
        }
    }
    let mut sorted = residuals.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2].max(1e-14);
    let spike = residuals.iter().cloned().fold(0.0f64, f64::max) / median;
    let mut rec = CheckRecord::new(
        "quad.branch_continuity",
        "H-integral residual along an upper-half-plane path",
        residuals.len(),
        spike,
        10.0,
    );
    rec.note = format!("max/median residual ratio; median {median:e}");
    rec
}

// ---------------------------------------------------------------------
// operators

fn op_factorization_exact(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "op.factorization_exact");
    let cases = 10;
    for _ in 0..cases {
        let p = sample_params(&mut rng);
        // P = lam * D, exact coefficient equality across two routes
        let lhs = build_p_hg(&p).to_basis(OpBasis::DDLambda);
        let rhs = build_d(&p).scale(&RatLam::x());
        if lhs != rhs {
            return CheckRecord::new("op.factorization_exact", format!("{p}"), cases, 1.0, 1e-30)
                .with_note("P != lam * D");
        }
        // Q = theta . P composed in both bases
        let q1 = build_q_hg(&p).unwrap();
        let q2 = build_theta_lambda(&p)
            .to_basis(OpBasis::DDLambda)
            .compose(&build_p_hg(&p).to_basis(OpBasis::DDLambda))
            .unwrap()
            .to_basis(OpBasis::DLambda);
        if q1 != q2 {
            return CheckRecord::new("op.factorization_exact", format!("{p}"), cases, 1.0, 1e-30)
                .with_note("theta . P differs between composition routes");
        }
        if build_p_hg(&p).order() != Some(2) || q1.order() != Some(3) {
            return CheckRecord::new("op.factorization_exact", format!("{p}"), cases, 1.0, 1e-30)
                .with_note("operator orders are wrong");
        }
    }
    CheckRecord::new(
        "op.factorization_exact",
        "10 random parameter sets, zero-tolerance coefficient equality",
        cases,
        0.0,
        1e-30,
    )
    .with_note("exact equality of operator coefficients")
}

fn op_theta_remainder(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "op.theta_remainder");
    let tds = theta_data_choices();
    let mut checked = 0usize;
    for td in &tds {
        let p = if checked == 0 {
            reference_params()
        } else {
            sample_params(&mut rng)
        };
        let theta = match build_theta(&p, td, td.n()) {
            Ok(t) => t,
            Err(e) => return CheckRecord::errored("op.theta_remainder", &e),
        };
        if theta.order().is_some_and(|o| o > 1) {
            return CheckRecord::new("op.theta_remainder", format!("{p}"), checked, 1.0, 1e-30)
                .with_note("remainder order exceeds 1");
        }
        if !theta.poles_only_at_zero_one() {
            return CheckRecord::new("op.theta_remainder", format!("{p}"), checked, 1.0, 1e-30)
                .with_note("remainder denominators not supported on {0, 1}");
        }
        checked += 1;
    }
    CheckRecord::new(
        "op.theta_remainder",
        "5 operator-data choices incl. (1, t(1-t))",
        checked,
        0.0,
        1e-30,
    )
    .with_note("order <= 1 and denominators divide lam^a (lam-1)^b, exactly")
}

fn op_theta_matches_pm(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "op.theta_matches_pm");
    let mut worst = 0.0f64;
    let mut n = 0usize;
    let two_pi_i = C64::new(0.0, 2.0 * std::f64::consts::PI);
    for (idx, td) in theta_data_choices().iter().enumerate() {
        let p = if idx == 0 {
            reference_params()
        } else {
            sample_params(&mut rng)
        };
        let theta = match build_theta(&p, td, td.n()) {
            Ok(t) => t,
            Err(e) => return CheckRecord::errored("op.theta_matches_pm", &e),
        };
        for _ in 0..30 {
            let lam = sample_disc1(&mut rng, 0.12);
            let via_theta = two_pi_i * apply_op(&theta, Family::FMu, &p, 0, lam, &pol()).unwrap();
            let direct = eval_p_m(&p, td, p.m(), lam, &pol()).unwrap();
            let scale = via_theta.norm().max(direct.norm()).max(1e-300);
            worst = worst.max((via_theta - direct).norm() / scale);
            n += 1;
        }
    }
    CheckRecord::new(
        "op.theta_matches_pm",
        "5 operator-data choices x 30 lambda samples",
        n,
        worst,
        1e-8,
    )
}

fn op_division_invariant(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "op.division_invariant");
    let d = build_d(&reference_params());
    let cases = 25;
    for _ in 0..cases {
        let ord = rng.gen_range(0..=5usize);
        let coeffs: Vec<RatLam> = (0..=ord)
            .map(|_| {
                RatFun::from_poly(Poly::new(vec![
                    rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)),
                    rat(rng.gen_range(-9i64..=9), 1),
                ]))
            })
            .collect();
        let l = DiffOperator::new(OpBasis::DDLambda, coeffs);
        let (q, r) = l.right_divide(&d).unwrap();
        if r.order().is_some_and(|o| o >= 2) {
            return CheckRecord::new("op.division_invariant", "", cases, 1.0, 1e-30)
                .with_note("remainder order not reduced");
        }
        let back = q.compose(&d).unwrap().add(&r).unwrap();
        if back != l {
            return CheckRecord::new("op.division_invariant", "", cases, 1.0, 1e-30)
                .with_note("q . D + r does not reproduce L");
        }
    }
    CheckRecord::new(
        "op.division_invariant",
        "25 random operators of order <= 5",
        cases,
        0.0,
        1e-30,
    )
    .with_note("exact reconstruction after right division")
}

fn op_basis_roundtrip(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "op.basis_roundtrip");
    let cases = 10;
    for _ in 0..cases {
        let p = sample_params(&mut rng);
        for op in [
            build_d(&p),
            build_p_hg(&p),
            build_theta_lambda(&p),
            build_q_hg(&p).unwrap(),
        ] {
            let there = op.to_basis(OpBasis::DDLambda).to_basis(OpBasis::DLambda);
            let back = there.to_basis(OpBasis::DDLambda).to_basis(OpBasis::DLambda);
            let original = op.to_basis(OpBasis::DLambda);
            if there != original || back != original {
                return CheckRecord::new("op.basis_roundtrip", format!("{p}"), cases, 1.0, 1e-30)
                    .with_note("basis conversion is not involutive");
            }
        }
    }
    CheckRecord::new(
        "op.basis_roundtrip",
        "10 parameter sets, 4 operators each",
        cases,
        0.0,
        1e-30,
    )
    .with_note("exact round trips")
}

fn op_theta2_step(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "op.theta2_step");
    let mut worst = 0.0f64;
    let mut n = 0usize;
    for _ in 0..6 {
        let p = sample_params(&mut rng);
        for j in 0..3i64 {
            let step = build_theta2_step(&p, j).unwrap();
            for _ in 0..5 {
                let lam = sample_disc1(&mut rng, 0.15);
                let lhs = crate::functions::eval_f_mu(&p, j + 1, lam, &pol()).unwrap();
                let rhs = apply_op(&step, Family::FMu, &p, j, lam, &pol()).unwrap();
                worst = worst.max((lhs - rhs).norm() / lhs.norm().max(1e-300));
                n += 1;
            }
        }
    }
    CheckRecord::new(
        "op.theta2_step",
        "raising step vs shifted series, 6 parameter sets x 3 steps",
        n,
        worst,
        1e-9,
    )
}

// ---------------------------------------------------------------------
// continuation and monodromy

fn cont_monodromy_zero(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "cont.monodromy_zero");
    let mut worst = 0.0f64;
    let mut n = 0usize;
    for _ in 0..3 {
        let p = sample_params(&mut rng);
        let m = match monodromy_at_zero(&p, 1e-10) {
            Ok(m) => m,
            Err(e) => return CheckRecord::errored("cont.monodromy_zero", &e),
        };
        let want = expected_zero_monodromy(&p);
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((m.entries[i][j] - want.entries[i][j]).norm());
            }
        }
        n += 1;
    }
    CheckRecord::new(
        "cont.monodromy_zero",
        "entrywise against [[xi, 0], [1-xi, 1]], 3 parameter sets",
        n,
        worst,
        1e-6,
    )
}

fn cont_monodromy_infinity(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "cont.monodromy_infinity");
    let mut worst = 0.0f64;
    let mut n = 0usize;
    let mut note = String::new();
    for _ in 0..3 {
        let p = sample_params(&mut rng);
        let m = match monodromy_at_infinity(&p, 1e-10) {
            Ok(m) => m,
            Err(e) => return CheckRecord::errored("cont.monodromy_infinity", &e),
        };
        let want = expected_infinity_eigenvalues(&p);
        if (want[0] - want[1]).norm() > 1e-3 {
            worst = worst.max(eigenvalue_set_distance(&m.eigenvalues(), &want));
        } else {
            // alpha = beta makes the loop matrix a Jordan block, where
            // extracted eigenvalues are sqrt-amplified; compare the
            // characteristic-polynomial coefficients instead (the same
            // multiset, numerically well-posed)
            let tr = m.entries[0][0] + m.entries[1][1];
            worst = worst.max((tr - want[0] - want[1]).norm());
            worst = worst.max((m.determinant() - want[0] * want[1]).norm());
            note = "degenerate eigenvalue draw: compared trace and determinant".to_string();
        }
        n += 1;
    }
    CheckRecord::new(
        "cont.monodromy_infinity",
        "eigenvalues vs {e^(2 pi i(alpha-mu)), e^(2 pi i(beta-mu))}",
        n,
        worst,
        1e-6,
    )
    .with_note(note)
}

fn cont_h_infinity_factor(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "cont.h_infinity_factor");
    let mut worst = 0.0f64;
    let mut n = 0usize;
    for _ in 0..3 {
        let p = sample_params(&mut rng);
        let got = match h_infinity_factor(&p, 1e-10) {
            Ok(g) => g,
            Err(e) => return CheckRecord::errored("cont.h_infinity_factor", &e),
        };
        let want = unit_root_pow(&-p.mu().clone());
        worst = worst.max((got - want).norm());
        n += 1;
    }
    CheckRecord::new(
        "cont.h_infinity_factor",
        "H around infinity picks up e^(-2 pi i mu), 3 parameter sets",
        n,
        worst,
        1e-6,
    )
}

fn cont_h_zero_quotient(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "cont.h_zero_quotient");
    let mut worst = 0.0f64;
    let mut n = 0usize;
    for _ in 0..3 {
        let p = sample_params(&mut rng);
        match h_zero_loop_quotient_residual(&p, 1e-10) {
            Ok(r) => worst = worst.max(r),
            Err(e) => return CheckRecord::errored("cont.h_zero_quotient", &e),
        }
        n += 1;
    }
    CheckRecord::new(
        "cont.h_zero_quotient",
        "zero loop leaves H in its own coset of the (F, G) span",
        n,
        worst,
        1e-6,
    )
}

fn cont_loop_product(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "cont.loop_product");
    let mut worst = 0.0f64;
    let mut n = 0usize;
    for _ in 0..2 {
        let p = sample_params(&mut rng);
        let m0 = monodromy_at_zero(&p, 1e-10);
        let m1 = monodromy_at_one(&p, 1e-10);
        let mi = monodromy_at_infinity(&p, 1e-10);
        match (m0, m1, mi) {
            (Ok(m0), Ok(m1), Ok(mi)) => {
                let prod = mi.mul(&m1).mul(&m0);
                worst = worst.max(prod.max_deviation_from_identity());
                worst = worst.max((prod.determinant() - c64(1.0)).norm());
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                return CheckRecord::errored("cont.loop_product", &e)
            }
        }
        n += 1;
    }
    CheckRecord::new(
        "cont.loop_product",
        "M_inf M_1 M_0 = 1 (loops traversed 0, 1, infinity)",
        n,
        worst,
        1e-5,
    )
}

fn cont_homotopy_invariance(seed: u64) -> CheckRecord {
    let _ = seed;
    let p = reference_params();
    let base = C64::new(0.5, 0.6);
    let square = PathSpec::polyline(vec![
        base,
        C64::new(-0.7, 0.6),
        C64::new(-0.7, -0.45),
        C64::new(0.5, -0.45),
        base,
    ])
    .unwrap();
    let wide = PathSpec::polyline(vec![
        base,
        C64::new(-0.9, 0.8),
        C64::new(-0.9, -0.6),
        C64::new(0.6, -0.6),
        C64::new(0.6, 0.2),
        base,
    ])
    .unwrap();
    let m1 = monodromy_along(&p, &square, 1e-10);
    let m2 = monodromy_along(&p, &wide, 1e-10);
    match (m1, m2) {
        (Ok(m1), Ok(m2)) => {
            let mut worst = 0.0f64;
            for i in 0..2 {
                for j in 0..2 {
                    worst = worst.max((m1.entries[i][j] - m2.entries[i][j]).norm());
                }
            }
            CheckRecord::new(
                "cont.homotopy_invariance",
                "two homotopic polyline loops around 0",
                2,
                worst,
                1e-6,
            )
        }
        (Err(e), _) | (_, Err(e)) => CheckRecord::errored("cont.homotopy_invariance", &e),
    }
}

fn cont_basis_consistency(seed: u64) -> CheckRecord {
    let _ = seed;
    let p = reference_params();
    let m1 = monodromy_at_zero(&p, 1e-10);
    let other_base = C64::new(0.45, -0.55);
    let m2 = PathSpec::circle_through(C64::new(0.0, 0.0), other_base, 1)
        .and_then(|path| monodromy_along(&p, &path, 1e-10));
    match (m1, m2) {
        (Ok(m1), Ok(m2)) => {
            let d = eigenvalue_set_distance(&m1.eigenvalues(), &m2.eigenvalues());
            CheckRecord::new(
                "cont.basis_consistency",
                "eigenvalues at two different base points",
                2,
                d,
                1e-6,
            )
        }
        (Err(e), _) | (_, Err(e)) => CheckRecord::errored("cont.basis_consistency", &e),
    }
}

fn cont_wronskian_bound(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "cont.wronskian_bound");
    let mut worst = f64::INFINITY;
    let cases = 10;
    for _ in 0..cases {
        let p = sample_params(&mut rng);
        let lam = crate::continuation::default_base_point();
        let f = deriv_stack(Family::FMu, &p, 0, lam, 1, &pol()).unwrap();
        let g = deriv_stack(Family::GMu, &p, 0, lam, 1, &pol()).unwrap();
        let det = (f[0] * g[1] - f[1] * g[0]).norm();
        let scale = [f[0], f[1], g[0], g[1]]
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max);
        worst = worst.min(det / (scale * scale));
    }
    let mut rec = CheckRecord::new(
        "cont.wronskian_bound",
        "relative Wronskian of (F, G) at the base point",
        cases,
        worst,
        1.0,
    );
    rec.pass = worst > 1e-8;
    rec.note =
        "residual column holds the smallest relative Wronskian (must exceed 1e-8)".to_string();
    rec
}

fn cont_laurent(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "cont.laurent");
    let mut worst = 0.0f64;
    let cases = 10;
    for _ in 0..cases {
        let p = sample_params(&mut rng);
        let r = rng.gen_range(0.05..0.8);
        let th = rng.gen_range(0.0..(2.0 * std::f64::consts::PI));
        let z = C64::new(r * th.cos(), r * th.sin());
        match laurent_solution_check(&p, z) {
            Ok(res) => worst = worst.max(res),
            Err(e) => return CheckRecord::errored("cont.laurent", &e),
        }
    }
    CheckRecord::new("cont.laurent", "10 points |z| < 0.8", cases, worst, 1e-12)
}

// ---------------------------------------------------------------------
// periods and regulator

fn per_partial_pm(seed: u64) -> CheckRecord {
    per_partial(seed, "per.partial_pm", true)
}

fn per_partial_qm(seed: u64) -> CheckRecord {
    per_partial(seed, "per.partial_qm", false)
}

fn per_partial(seed: u64, id: &'static str, p_side: bool) -> CheckRecord {
    let mut rng = rng_for(seed, id);
    let tds = theta_data_choices();
    let mut worst = 0.0f64;
    let mut n = 0usize;
    for round in 0..20 {
        let td = tds[round % tds.len()].clone();
        let p = sample_params(&mut rng);
        let m = p.m() + p.l(); // one level up so m - l stays admissible
        let mu_m = rat_to_c64(&crate::scalar::Rat::new(m.into(), p.l().into())).unwrap();
        let kind = if p_side {
            crate::periods::FnKind::PM {
                params: p.clone(),
                td: td.clone(),
                m,
            }
        } else {
            crate::periods::FnKind::QM {
                params: p.clone(),
                td: td.clone(),
                m,
            }
        };
        let f = crate::periods::AnalyticFunction::new(kind);
        for _ in 0..50 {
            let lam = if p_side {
                sample_disc1(&mut rng, 0.15)
            } else {
                sample_exterior(&mut rng, 0.15)
            };
            let d = match f.derivative(lam, &pol()) {
                Ok(d) => d,
                Err(e) => return CheckRecord::errored(id, &e),
            };
            let down = if p_side {
                eval_p_m(&p, &td, m - p.l(), lam, &pol()).unwrap()
            } else {
                eval_q_m(&p, &td, m - p.l(), lam, &pol()).unwrap()
            };
            let want = (mu_m - c64(1.0)) * down;
            worst = worst.max((d - want).norm() / want.norm().max(1e-300));
            n += 1;
        }
    }
    CheckRecord::new(
        id,
        "20 parameter sets x 50 points, Cauchy vs recurrence",
        n,
        worst,
        1e-9,
    )
}

fn per_det_nonvanishing(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "per.det_nonvanishing");
    let td = reference_td();
    let mut found = Vec::new();
    for idx in 0..4 {
        let p = if idx == 0 {
            reference_params()
        } else {
            sample_params(&mut rng)
        };
        let grid: Vec<C64> = (0..30).map(|_| sample_lens(&mut rng, 0.2)).collect();
        match scan_nondegenerate_level(&p, &td, &grid, 1e-10, &pol()) {
            Ok(m) => found.push(m),
            Err(e) => return CheckRecord::errored("per.det_nonvanishing", &e),
        }
    }
    CheckRecord::new(
        "per.det_nonvanishing",
        format!("levels found: {found:?} (among the first 5 admissible)"),
        4 * 30,
        0.0,
        1.0,
    )
    .with_note("existential claim: some level has |det| > 1e-10 on the whole grid")
}

fn reg_c0_d0(seed: u64) -> CheckRecord {
    let _ = seed;
    let p = reference_params();
    let rec = RegulatorRecursion::build(&p, 1);
    let lam_minus_one = RatFun::from_poly(Poly::new(vec![rat_int(-1), rat_int(1)]));
    let inv = crate::regulator::BiRat::constant(RatLam::one().div(&lam_minus_one));
    let exact = rec.c_i(0) == &inv && rec.d_i(0).is_zero() && rec.r_i(0).is_zero();
    let mut out = CheckRecord::new(
        "reg.c0_d0",
        "(C_0, D_0) = ((lam-1)^{-1}, 0), exact",
        1,
        if exact { 0.0 } else { 1.0 },
        1e-30,
    );
    out.note = "exact equality of bivariate rational functions".to_string();
    out
}

fn reg_three_term(seed: u64) -> CheckRecord {
    let _ = seed;
    let p = reference_params();
    let samples = exterior_sample_grid(44);
    let mut worst = 0.0f64;
    let mut worst_exact = 0.0f64;
    for i in [1i64, 2, 3] {
        match check_three_term_congruence(&p, i, &samples, &pol()) {
            Ok(chk) => {
                worst = worst.max(chk.fit_residual);
                worst_exact = worst_exact.max(chk.exact_residual);
            }
            Err(e) => return CheckRecord::errored("reg.three_term", &e),
        }
    }
    CheckRecord::new(
        "reg.three_term",
        "indices 1, 2, 3 on 44 samples",
        3 * 44,
        worst,
        1e-6,
    )
    .with_note(format!(
        "worst deviation from the exact remainder: {worst_exact:e}"
    ))
}

fn reg_regulator_congruence(seed: u64) -> CheckRecord {
    let _ = seed;
    let p = reference_params();
    let td = reference_td();
    let samples = exterior_sample_grid(48);
    match check_regulator_congruence(&p, &td, 7, 0, &samples, &pol()) {
        Ok(chk) => {
            // the plain rational fit is only a surrogate: the remainder is
            // genuinely algebraic here, so fall back to the
            // prefactor-reduced fit when it fails
            let (residual, route) = if chk.fit_residual < 1e-5 {
                (chk.fit_residual, "plain rational fit")
            } else {
                (
                    chk.fallback_residual,
                    "algebraic-remainder fallback (prefactor-reduced fit)",
                )
            };
            CheckRecord::new(
                "reg.regulator_congruence",
                "reference case alpha=1/3 beta=1/5 mu=7/2 l=2, td=(1, t(1-t))",
                samples.len(),
                residual,
                1e-5,
            )
            .with_note(format!(
                "route: {route}; plain fit {:e}; exact-identity residual {:e}; C1 -> {}",
                chk.fit_residual,
                chk.exact_residual,
                crate::report::fmt17(chk.c1_estimate.re)
            ))
        }
        Err(e) => CheckRecord::errored("reg.regulator_congruence", &e),
    }
}

fn reg_recursion_exactness(seed: u64) -> CheckRecord {
    let _ = seed;
    // association order of the exact matrix chain must not matter
    let p = reference_params();
    let rec = RegulatorRecursion::build(&p, 3);
    let step = crate::regulator::step_data(rec.a_lower(), rec.b_lower());
    let lam_minus_one = RatFun::from_poly(Poly::new(vec![rat_int(-1), rat_int(1)]));
    let inv = crate::regulator::BiRat::constant(RatLam::one().div(&lam_minus_one));
    let mat_at = |shift: i64| {
        [
            [
                crate::regulator::birat_shift(&step.a_coeff, shift),
                crate::regulator::birat_shift(&inv, shift),
            ],
            [
                crate::regulator::birat_shift(&step.b_coeff, shift),
                crate::regulator::BiRat::zero(),
            ],
        ]
    };
    let mul = |x: &[[crate::regulator::BiRat; 2]; 2], y: &[[crate::regulator::BiRat; 2]; 2]| {
        let e = |i: usize, j: usize| x[i][0].mul(&y[0][j]).add(&x[i][1].mul(&y[1][j]));
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    };
    let (m0, m1, m2) = (mat_at(0), mat_at(1), mat_at(2));
    let left = mul(&mul(&m0, &m1), &m2);
    let right = mul(&m0, &mul(&m1, &m2));
    let ok = (0..2).all(|i| (0..2).all(|j| left[i][j] == right[i][j]))
        && &left[0][1] == rec.c_i(2)
        && &left[1][1] == rec.d_i(2);
    let mut out = CheckRecord::new(
        "reg.recursion_exactness",
        "matrix chain in both associations vs the sequential recursion",
        1,
        if ok { 0.0 } else { 1.0 },
        1e-30,
    );
    out.note = "exact equality of bivariate rational functions".to_string();
    out
}

fn reg_e_assembly_poles(seed: u64) -> CheckRecord {
    let _ = seed;
    let p = reference_params();
    let td = reference_td();
    let rec = RegulatorRecursion::build(&p, 3);
    for r in 0..=1i64 {
        for f in [rec.e1(&td, r), rec.e2(&td, r), rec.w(&td, r)] {
            let inst = birat_instantiate(&f, p.mu());
            if !inst.poles_only_at_zero_one() {
                return CheckRecord::new("reg.e_assembly_poles", "", 6, 1.0, 1e-30)
                    .with_note("assembled denominators escape powers of lam, lam-1");
            }
        }
    }
    CheckRecord::new(
        "reg.e_assembly_poles",
        "E1, E2, W at depths 0 and 1, instantiated at mu",
        6,
        0.0,
        1e-30,
    )
    .with_note("denominators divide lam^a (lam-1)^b, exactly")
}

fn fixtures_derived_match(seed: u64) -> CheckRecord {
    let _ = seed;
    let stored = match crate::fixtures::stored_matches_regenerated() {
        Ok(w) => w,
        Err(e) => return CheckRecord::errored("fixtures.derived_match", &e),
    };
    let fixtures = crate::fixtures::generate().unwrap();
    let mut worst_ratio = stored / 1e-12;
    let mut detail = Vec::new();
    match crate::fixtures::compare_against_implementation(&fixtures) {
        Ok(devs) => {
            for (name, dev, tol) in devs {
                if dev >= tol {
                    detail.push(format!("{name}: {dev:e} >= {tol:e}"));
                }
                worst_ratio = worst_ratio.max(dev / tol);
            }
        }
        Err(e) => return CheckRecord::errored("fixtures.derived_match", &e),
    }
    CheckRecord::new(
        "fixtures.derived_match",
        "stored fixtures vs regenerated oracles vs implementation",
        fixtures.len(),
        worst_ratio,
        1.0,
    )
    .with_note(if detail.is_empty() {
        "residual column is the worst deviation/tolerance ratio".to_string()
    } else {
        detail.join("; ")
    })
}

// ---------------------------------------------------------------------

type CheckFn = fn(u64) -> CheckRecord;

/// All named checks with their suite grouping.
pub fn registry() -> Vec<(&'static str, &'static str, CheckFn)> {
    vec![
        (
            "core",
            "core.pochhammer_additivity",
            core_pochhammer_additivity,
        ),
        (
            "core",
            "core.gamma_functional_equations",
            core_gamma_functional_equations,
        ),
        ("core", "core.pfq_contiguity", core_pfq_contiguity),
        (
            "core",
            "core.pfq_est_error_honesty",
            core_pfq_est_error_honesty,
        ),
        ("functions", "fun.ode_annihilation", fun_ode_annihilation),
        ("functions", "fun.partial_f", fun_partial_f),
        ("functions", "fun.partial_g", fun_partial_g),
        ("functions", "fun.derive_h", fun_derive_h),
        ("functions", "fun.kummer_relation", fun_kummer_relation),
        ("functions", "fun.f1_f3_basis", fun_f1_f3_basis),
        ("quadrature", "quad.int_rep_2f1", quad_int_rep_2f1),
        ("quadrature", "quad.int_rep_3f2", quad_int_rep_3f2),
        ("quadrature", "quad.h_integral", quad_h_integral),
        ("quadrature", "quad.self_consistency", quad_self_consistency),
        (
            "quadrature",
            "quad.branch_continuity",
            quad_branch_continuity,
        ),
        (
            "operators",
            "op.factorization_exact",
            op_factorization_exact,
        ),
        ("operators", "op.theta_remainder", op_theta_remainder),
        ("operators", "op.theta_matches_pm", op_theta_matches_pm),
        ("operators", "op.division_invariant", op_division_invariant),
        ("operators", "op.basis_roundtrip", op_basis_roundtrip),
        ("operators", "op.theta2_step", op_theta2_step),
        ("continuation", "cont.monodromy_zero", cont_monodromy_zero),
        (
            "continuation",
            "cont.monodromy_infinity",
            cont_monodromy_infinity,
        ),
        (
            "continuation",
            "cont.h_infinity_factor",
            cont_h_infinity_factor,
        ),
        ("continuation", "cont.h_zero_quotient", cont_h_zero_quotient),
        ("continuation", "cont.loop_product", cont_loop_product),
        (
            "continuation",
            "cont.homotopy_invariance",
            cont_homotopy_invariance,
        ),
        (
            "continuation",
            "cont.basis_consistency",
            cont_basis_consistency,
        ),
        ("continuation", "cont.wronskian_bound", cont_wronskian_bound),
        ("continuation", "cont.laurent", cont_laurent),
        ("periods", "per.partial_pm", per_partial_pm),
        ("periods", "per.partial_qm", per_partial_qm),
        ("periods", "per.det_nonvanishing", per_det_nonvanishing),
        ("regulator", "reg.c0_d0", reg_c0_d0),
        ("regulator", "reg.three_term", reg_three_term),
        (
            "regulator",
            "reg.regulator_congruence",
            reg_regulator_congruence,
        ),
        (
            "regulator",
            "reg.recursion_exactness",
            reg_recursion_exactness,
        ),
        ("regulator", "reg.e_assembly_poles", reg_e_assembly_poles),
        ("fixtures", "fixtures.derived_match", fixtures_derived_match),
    ]
}

/// Run specific checks by id (acceptance harness entry point).
pub fn run_checks(ids: &[&str], seed: u64) -> Vec<CheckRecord> {
    let reg = registry();
    let selected: Vec<_> = reg
        .into_iter()
        .filter(|(_, id, _)| ids.contains(id))
        .collect();
    let mut records: Vec<(usize, CheckRecord)> = selected
        .par_iter()
        .enumerate()
        .map(|(i, (_, _, f))| (i, f(seed)))
        .collect();
    records.sort_by_key(|(i, _)| *i);
    records.into_iter().map(|(_, r)| r).collect()
}

/// Run a suite (or `"all"`); checks fan out to the rayon pool and the
/// records are merged in registry order, so the report is deterministic
/// for a fixed seed.
pub fn run_suite(suite: &str, seed: u64) -> Result<Report> {
    let checks: Vec<_> = registry()
        .into_iter()
        .filter(|(group, _, _)| suite == "all" || *group == suite)
        .collect();
    if checks.is_empty() {
        return Err(crate::error::Error::Invalid(format!(
            "unknown suite `{suite}` (try all, core, functions, quadrature, operators, continuation, periods, regulator, fixtures)"
        )));
    }
    let mut records: Vec<(usize, CheckRecord)> = checks
        .par_iter()
        .enumerate()
        .map(|(i, (_, _, f))| (i, f(seed)))
        .collect();
    records.sort_by_key(|(i, _)| *i);
    Ok(Report {
        seed,
        records: records.into_iter().map(|(_, r)| r).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique() {
        let reg = registry();
        let mut ids: Vec<_> = reg.iter().map(|(_, id, _)| *id).collect();
        ids.sort();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn suite_filter_works() {
        assert!(run_suite("nope", 1).is_err());
        let rep = run_suite("regulator", 42).unwrap();
        assert!(rep.records.iter().all(|r| r.check_id.starts_with("reg.")));
    }

    #[test]
    fn deterministic_given_seed() {
        let a = run_suite("core", 42).unwrap();
        let b = run_suite("core", 42).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let c = run_suite("core", 43).unwrap();
        // different seed, same structure
        assert_eq!(a.records.len(), c.records.len());
    }
}
