//! Transporting solutions along explicit paths: circles and polylines,
//! trivial loops, and agreement with direct series evaluation.
//!
//! ```bash
//! cargo run --example continuation_paths
//! ```

use hypergeom::continuation::{continue_linear, integrate_ode, PathKind, PathSpec};
use hypergeom::diffop::build_d;
use hypergeom::functions::{deriv_stack, eval_f_mu, Family};
use hypergeom::{rat, HGParams, TruncationPolicy, C64};

fn main() -> hypergeom::Result<()> {
    let p = HGParams::new(rat(1, 3), rat(1, 5), rat(7, 2), 2)?;
    let policy = TruncationPolicy::default();
    let op = build_d(&p);

    // short polyline: endpoint agrees with the series
    let a = C64::new(0.7, 0.05);
    let b = C64::new(0.85, 0.3);
    let init = deriv_stack(Family::FMu, &p, 0, a, 1, &policy)?;
    let path = PathSpec::polyline(vec![a, b])?;
    let (val, der) = integrate_ode(&op, (init[0], init[1]), &path, 1e-11)?;
    println!("continued F_mu to {b}: {val}");
    println!("series      F_mu at {b}: {}", eval_f_mu(&p, 0, b, &policy)?);
    println!("(derivative transported alongside: {der})");

    // a circle that encloses nothing is a trivial loop
    let base = C64::new(0.8, 0.0);
    let circ = PathSpec::circle_through(C64::new(0.5, 0.0), base, 1)?;
    let init = deriv_stack(Family::FMu, &p, 0, base, 1, &policy)?;
    let out = continue_linear(&op, &init, &circ, 1e-10)?;
    println!(
        "\ntrivial loop drift: {:.3e}",
        (out[0] - init[0]).norm() / init[0].norm()
    );

    // paths too close to a puncture are rejected outright
    let bad = PathSpec::polyline(vec![C64::new(-0.5, 0.01), C64::new(0.5, 0.01)]);
    println!(
        "\npath through the origin puncture: {:?}",
        bad.err().map(|e| e.to_string())
    );

    // the path machinery exposes its pieces for custom loops
    let custom = PathSpec {
        kind: PathKind::Circle {
            center: C64::new(0.0, 0.0),
            radius: 0.78,
            turns: 2,
        },
        base_point: C64::new(0.78, 0.0),
    };
    custom.validate()?;
    let init = deriv_stack(Family::FMu, &p, 0, custom.base_point, 1, &policy)?;
    let out = continue_linear(&op, &init, &custom, 1e-10)?;
    println!(
        "\ndouble loop around 0 from {}: F goes {} -> {}",
        custom.base_point, init[0], out[0]
    );
    Ok(())
}
