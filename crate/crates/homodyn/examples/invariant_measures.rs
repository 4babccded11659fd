//! Invariant measures of minimal components.
//!
//! For each map the example normalizes the chart measure on every component,
//! checks σ(φ⁻¹B) = σ(B) cell by cell, and shows that a distorted weight
//! vector is caught.

use homodyn::decomposer::{analyze, Options};
use homodyn::measure::{cell_weights, check_invariance_all, corrupted_weights, mu_bar, mu_hat, weight_failures};
use homodyn::projective::{Disk, HomographicMap};
use homodyn::rational::rat;

fn main() -> homodyn::Result<()> {
    let zp = Disk::ball(3, rat(0, 1), 0);
    println!("μ̂(Z_3) = {}, μ̄(Z_3) = {}", mu_hat(&zp), mu_bar(&zp));

    for (c, p) in [([0, 1, 1, 1], 3), ([0, 1, 1, 1], 2), ([3, 5, 1, 4], 3)] {
        let phi = HomographicMap::from_ints(c[0], c[1], c[2], c[3], p)?;
        let an = analyze(&phi, &Options::default())?;
        let n = an.stabilization_level()? + 1;
        let kind = an.measure_tag().unwrap();
        let reports = check_invariance_all(&an, n)?;
        let cells: usize = reports.iter().map(|r| r.rows.len()).sum();
        let pass = reports.iter().all(|r| r.pass);
        println!("{phi}: {} components, {cells} cells at level {n}, invariant: {pass}", reports.len());
        for row in reports[0].rows.iter().take(3) {
            println!("  σ(φ⁻¹ {}) = {} = σ(B)", Disk::from_json(&row.cell, p)?, row.lhs);
        }
        let scheme = an.scheme(n)?;
        let perm = an.level_cycles(n)?.perm;
        println!(
            "  true weights fail on {} cells, corrupted weights on {}",
            weight_failures(&perm, &cell_weights(kind, &scheme)).len(),
            weight_failures(&perm, &corrupted_weights(kind, &scheme)).len()
        );
    }
    Ok(())
}
