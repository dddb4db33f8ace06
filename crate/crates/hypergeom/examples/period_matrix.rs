//! The 2x2 period matrix: prefactors, the inner block, and the
//! non-degeneracy scan over admissible levels.
//!
//! ```bash
//! cargo run --example period_matrix
//! ```

use hypergeom::periods::{period_matrix, scan_nondegenerate_level};
use hypergeom::{rat, rat_int, HGParams, Poly, ThetaData, TruncationPolicy, C64};

fn main() -> hypergeom::Result<()> {
    let p = HGParams::new(rat(1, 3), rat(1, 5), rat(7, 2), 2)?;
    let td = ThetaData::derive(
        Poly::constant(rat_int(1)),
        Poly::new(vec![rat_int(0), rat_int(1), rat_int(-1)]),
    )?;
    let policy = TruncationPolicy::default();

    let pm = period_matrix(&p, &td, 7)?;
    println!("level m = {}, mu = {}", pm.m(), pm.level_params().mu_f64());
    println!("prefactor 2 pi i (1 - zeta^m) = {:.8}", pm.prefactor_zeta());
    println!("xi = {:.8}", pm.xi());
    println!("reduced operator: {}", pm.theta().pretty());

    for lam in [
        C64::new(0.5, 0.0),
        C64::new(0.6, 0.25),
        C64::new(0.35, -0.3),
    ] {
        let inner = pm.inner_block(lam, &policy)?;
        let det = pm.inner_det_relative(lam, &policy)?;
        println!("\nlambda = {lam}");
        for row in inner {
            println!(
                "  [{:>24} , {:>24}]",
                format!("{:.6}", row[0]),
                format!("{:.6}", row[1])
            );
        }
        println!("  relative |det| of the inner block: {det:.3e}");
        let full = pm.full(lam, &policy)?;
        println!(
            "  full matrix row 1: [{:.6} , {:.6}]",
            full[0][0], full[0][1]
        );
    }

    // existential claim: some admissible level is non-degenerate
    let grid: Vec<C64> = (0..30)
        .map(|i| {
            let t = i as f64 / 29.0;
            C64::new(0.25 + 0.55 * t, 0.25 - 0.2 * t)
        })
        .collect();
    let m = scan_nondegenerate_level(&p, &td, &grid, 1e-10, &policy)?;
    println!("\nfirst admissible level with nonvanishing block on a 30-point grid: m = {m}");
    Ok(())
}
