//! The linear relation between the three local solutions f1, f2, f3,
//! checked numerically across the lens where all three series converge.
//!
//! ```bash
//! cargo run --example kummer_relation
//! ```

use hypergeom::functions::kummer_residual;
use hypergeom::{rat, TruncationPolicy, C64};

fn main() -> hypergeom::Result<()> {
    let policy = TruncationPolicy::default();
    let pairs = [
        (rat(1, 4), rat(1, 3)),
        (rat(1, 5), rat(2, 5)),
        (rat(2, 7), rat(3, 8)),
    ];

    for (alpha, beta) in &pairs {
        println!("alpha = {alpha}, beta = {beta}");
        for t in [
            C64::new(0.1, 0.0),
            C64::new(0.5, 0.0),
            C64::new(0.9, 0.0),
            C64::new(0.3, 0.1),
            C64::new(0.6, -0.25),
        ] {
            let r = kummer_residual(alpha, beta, t, &policy)?;
            println!("  t = {t:>12}: residual {r:.3e}");
        }
    }

    // alpha + beta integral degenerates the relation; there f1 = f3
    let (a, b) = (rat(1, 4), rat(3, 4));
    match kummer_residual(&a, &b, C64::new(0.5, 0.0), &policy) {
        Err(e) => println!("\nalpha + beta = 1 is rejected as expected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
