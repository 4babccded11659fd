//! A map with a single fixed point: (3x − 1)/(x + 1) over Q_3.
//!
//! Orbits slide along spheres around the fixed point; each sphere breaks into
//! a fixed number of components that grows toward the fixed point.

use homodyn::cli::summary;
use homodyn::decomposer::{analyze, case1_structure, Options};
use homodyn::projective::{Disk, HomographicMap};
use homodyn::verifier::verify_structure;

fn main() -> homodyn::Result<()> {
    let phi = HomographicMap::from_ints(3, -1, 1, 1, 3)?;
    let an = analyze(&phi, &Options::default())?;
    println!("{phi}: {}", summary(&an));

    let s = case1_structure(&an, 4)?;
    println!("x₀ = {}, α = {}, v(α) = {}", s.x0, s.alpha, s.v_alpha);
    println!("outer component: {}", Disk::from_json(&s.complement_component, 3)?);
    for sp in &s.spheres {
        println!("S(x₀, 3^{}): {} components of radius 3^{}", sp.m, sp.count, sp.radius_exp);
    }

    println!("brute force at level 5:");
    for c in verify_structure(&an, 5)? {
        println!("  {:?}: predicted {}, observed {}", c.region, c.predicted, c.observed);
    }
    Ok(())
}
