//! Tanh-sinh quadrature as the independent oracle: beta integrals with
//! endpoint singularities, the Euler integral representations, and the
//! integral forms of F_mu and Q_m.
//!
//! ```bash
//! cargo run --example integral_oracles
//! ```

use hypergeom::quadrature::{
    f_mu_by_quadrature, integrate_01, q_m_by_quadrature, verify_h_integral, verify_int_rep_2f1,
    verify_int_rep_3f2, WeightedIntegrand,
};
use hypergeom::{rat, rat_int, HGParams, Poly, ThetaData, TruncationPolicy, C64};

fn main() -> hypergeom::Result<()> {
    // B(1/3, 2/3) = 2 pi / sqrt(3), both endpoints singular
    let w = WeightedIntegrand::new(-2.0 / 3.0, -1.0 / 3.0, |_, _| Ok(C64::new(1.0, 0.0)))?;
    let (v, est) = integrate_01(&w, 1e-12)?;
    println!("int t^(-2/3) (1-t)^(-1/3) dt = {v}  (est {est:.1e})");
    println!(
        "2 pi / sqrt(3)               = {}",
        2.0 * std::f64::consts::PI / 3f64.sqrt()
    );

    // Euler integral representations
    let r = verify_int_rep_2f1(
        &rat(1, 3),
        &rat(1, 2),
        &rat(3, 2),
        C64::new(0.4, 0.0),
        1e-11,
    )?;
    println!("\n2F1 Euler-integral residual at (1/3, 1/2; 3/2; 0.4): {r:.3e}");
    let r = verify_int_rep_3f2(
        &rat(1, 3),
        &rat(1, 5),
        &rat_int(1),
        &rat_int(1),
        &rat(9, 2),
        C64::new(0.45, 0.0),
        1e-11,
    )?;
    println!("3F2 Euler-integral residual (period-sum reduction):  {r:.3e}");

    // the H-side integral with the (lam - t)^(mu-1) kernel
    let p = HGParams::new(rat(1, 3), rat(1, 5), rat(7, 2), 2)?;
    for lam in [C64::new(-1.5, 0.0), C64::new(2.6, 0.4)] {
        let r = verify_h_integral(&p, lam, 1e-10)?;
        println!("H integral residual at lam = {lam}: {r:.3e}");
    }

    // F_mu and Q_m recomputed through their integral forms
    let policy = TruncationPolicy::default();
    let lam = C64::new(0.5, 0.0);
    let quad = f_mu_by_quadrature(&p, lam, 1e-12)?;
    let series = hypergeom::functions::eval_f_mu(&p, 0, lam, &policy)?;
    println!("\nF_mu({lam}) by quadrature: {quad}\nF_mu({lam}) by series:     {series}");

    let td = ThetaData::derive(
        Poly::constant(rat_int(1)),
        Poly::new(vec![rat_int(0), rat_int(1), rat_int(-1)]),
    )?;
    let lam = C64::new(-1.6, 0.0);
    let quad = q_m_by_quadrature(&p, &td, 7, lam, 1e-10)?;
    let sum = hypergeom::periods::eval_q_m(&p, &td, 7, lam, &policy)?;
    println!("\nQ_7({lam}) by quadrature:  {quad}\nQ_7({lam}) by weighted sum: {sum}");
    Ok(())
}
