//! Evaluate the named special functions at a few points.
//!
//! ```bash
//! cargo run --example evaluate_functions
//! ```

use hypergeom::functions::{eval_f1, eval_f2, eval_f3, eval_f_mu, eval_g_mu, eval_h_mu};
use hypergeom::{rat, HGParams, TruncationPolicy, C64};

fn main() -> hypergeom::Result<()> {
    let policy = TruncationPolicy::default();
    let p = HGParams::new(rat(1, 3), rat(1, 5), rat(7, 2), 2)?;
    println!("parameters: {p}");

    // local solutions in the fiber variable t
    let (alpha, beta) = (p.alpha(), p.beta());
    for t in [C64::new(0.3, 0.0), C64::new(0.5, 0.2)] {
        println!("\nt = {t}");
        println!("  f1(t) = {}", eval_f1(alpha, beta, t, &policy)?);
        println!("  f2(t) = {}", eval_f2(alpha, beta, t, &policy)?);
        println!("  f3(t) = {}", eval_f3(alpha, beta, t, &policy)?);
    }

    // the three lambda-families, each on its own convergence domain
    let lam_f = C64::new(0.5, 0.0); // |1-lam| < 1
    let lam_g = C64::new(0.4, 0.1); // |lam| < 1
    let lam_h = C64::new(-1.5, 0.0); // |1-lam| > 1
    println!("\nF_mu({lam_f})   = {}", eval_f_mu(&p, 0, lam_f, &policy)?);
    println!("F_mu+1({lam_f}) = {}", eval_f_mu(&p, 1, lam_f, &policy)?);
    println!("G_mu({lam_g})   = {}", eval_g_mu(&p, 0, lam_g, &policy)?);
    println!("H_mu({lam_h})   = {}", eval_h_mu(&p, 0, lam_h, &policy)?);
    println!("H_mu-1({lam_h}) = {}", eval_h_mu(&p, -1, lam_h, &policy)?);

    // the derivative recurrence shared by every family
    let d = hypergeom::functions::family_derivative(
        hypergeom::functions::Family::FMu,
        &p,
        0,
        lam_f,
        0.05,
        32,
        &policy,
    )?;
    let rec = C64::new(p.mu_f64() - 1.0, 0.0) * eval_f_mu(&p, -1, lam_f, &policy)?;
    println!("\nd/dlam F_mu vs (mu-1) F_mu-1: {} vs {}", d, rec);
    Ok(())
}
