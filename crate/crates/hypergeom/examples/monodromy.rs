//! Monodromy of the `(F_mu, G_mu)` basis: continuation around the three
//! punctures, eigenvalues against the closed forms, and the loop product.
//!
//! ```bash
//! cargo run --example monodromy
//! ```

use hypergeom::continuation::{
    expected_infinity_eigenvalues, expected_zero_monodromy, h_infinity_factor,
    monodromy_at_infinity, monodromy_at_one, monodromy_at_zero,
};
use hypergeom::params::unit_root_pow;
use hypergeom::{rat, HGParams};

fn print_matrix(name: &str, m: &hypergeom::continuation::MonodromyMatrix) {
    println!(
        "{name} (basis {} , {}):",
        m.basis_labels.0, m.basis_labels.1
    );
    for row in &m.entries {
        println!(
            "  [{:>24} , {:>24}]",
            format!("{:.8}", row[0]),
            format!("{:.8}", row[1])
        );
    }
    let evs = m.eigenvalues();
    println!("  eigenvalues: {:.8}, {:.8}", evs[0], evs[1]);
}

fn main() -> hypergeom::Result<()> {
    let p = HGParams::new(rat(1, 3), rat(1, 5), rat(7, 2), 2)?;
    let tol = 1e-10;

    let m0 = monodromy_at_zero(&p, tol)?;
    print_matrix("around 0", &m0);
    let want = expected_zero_monodromy(&p);
    println!(
        "  closed form [[xi, 0], [1-xi, 1]] with xi = {:.8}",
        want.entries[0][0]
    );

    let m1 = monodromy_at_one(&p, tol)?;
    print_matrix("\naround 1", &m1);

    let mi = monodromy_at_infinity(&p, tol)?;
    print_matrix("\naround infinity (clockwise big circle)", &mi);
    let evs = expected_infinity_eigenvalues(&p);
    println!("  expected eigenvalues: {:.8}, {:.8}", evs[0], evs[1]);

    let prod = mi.mul(&m1).mul(&m0);
    println!(
        "\nloop product M_inf M_1 M_0: deviation from identity {:.3e}",
        prod.max_deviation_from_identity()
    );

    let factor = h_infinity_factor(&p, tol)?;
    let expect = unit_root_pow(&-p.mu().clone());
    println!(
        "\nH_mu factor around infinity: {factor:.8}\n        e^(-2 pi i mu)     = {expect:.8}"
    );
    Ok(())
}
