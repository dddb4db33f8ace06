//! Exact differential-operator algebra: the named operators, composition,
//! right Euclidean division, and the reduced first-order operator that
//! turns `F_mu` into the period sum.
//!
//! ```bash
//! cargo run --example operator_algebra
//! ```

use hypergeom::diffop::{
    build_d, build_p_hg, build_q_hg, build_theta, build_theta_lambda, DiffOperator, OpBasis,
};
use hypergeom::functions::{apply_op, Family};
use hypergeom::{rat, rat_int, HGParams, Poly, RatLam, ThetaData, TruncationPolicy, C64};

fn main() -> hypergeom::Result<()> {
    let p = HGParams::new(rat(1, 3), rat(1, 5), rat(7, 2), 2)?;

    let d = build_d(&p);
    println!("second-order annihilator:\n  {}", d.pretty());

    let p_hg = build_p_hg(&p);
    println!(
        "\nEuler-basis operator (order {}):\n  {}",
        p_hg.order().unwrap(),
        p_hg.pretty()
    );
    // P = lam * D, exactly
    let lam_d = d.scale(&RatLam::x());
    assert_eq!(p_hg.to_basis(OpBasis::DDLambda), lam_d);
    println!("  equals lam * (second-order annihilator): exact");

    let theta_lam = build_theta_lambda(&p);
    let q_hg = build_q_hg(&p)?;
    println!("\ntheta_lam:\n  {}", theta_lam.pretty());
    println!(
        "Q = theta_lam . P (order {}):\n  {}",
        q_hg.order().unwrap(),
        q_hg.pretty()
    );

    // right division reduces any operator modulo the annihilator
    let dd = DiffOperator::monomial(OpBasis::DDLambda, RatLam::one(), 1);
    let product = dd.compose(&d)?;
    let (quot, rem) = product.right_divide(&d)?;
    println!(
        "\n(d . D) / D: quotient {}, remainder {}",
        quot.pretty(),
        rem.pretty()
    );

    // the reduced operator of the period formula for p0 = 1, p1 = t(1-t)
    let td = ThetaData::derive(
        Poly::constant(rat_int(1)),
        Poly::new(vec![rat_int(0), rat_int(1), rat_int(-1)]),
    )?;
    let theta = build_theta(&p, &td, td.n())?;
    println!(
        "\nreduced first-order operator (q(lam) + r(lam) d):\n  {}",
        theta.pretty()
    );
    println!(
        "  poles only at 0 and 1: {}",
        theta.poles_only_at_zero_one()
    );

    // JSON round trip of the operator
    let json = theta.to_json();
    let back = DiffOperator::from_json(&json)?;
    assert_eq!(back, theta);
    println!("  JSON round trip: exact");

    // applying it to F_mu reproduces P_m / (2 pi i)
    let policy = TruncationPolicy::default();
    let lam = C64::new(0.55, 0.1);
    let via_theta = apply_op(&theta, Family::FMu, &p, 0, lam, &policy)?;
    let two_pi_i = C64::new(0.0, 2.0 * std::f64::consts::PI);
    let p_m = hypergeom::periods::eval_p_m(&p, &td, p.m(), lam, &policy)?;
    println!(
        "\n2 pi i * (Theta F_mu)({lam}) = {}\n            P_m({lam}) = {}",
        two_pi_i * via_theta,
        p_m
    );
    Ok(())
}
