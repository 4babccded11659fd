//! Maps with two fixed points in P¹(Q_p), one of each kind.
//!
//! |λ| ≠ 1 gives an attractor; λ a root of unity gives a periodic map; any
//! other unit λ splits every sphere around the fixed points into components.

use homodyn::cli::summary;
use homodyn::decomposer::{analyze, case2_structure, Options};
use homodyn::projective::HomographicMap;
use homodyn::verifier::verify_structure;

fn main() -> homodyn::Result<()> {
    for (c, p) in [([2, 0, 1, 1], 2), ([1, 3, 1, -1], 5), ([2, 0, 1, 1], 3), ([4, 1, 1, 4], 5)] {
        let phi = HomographicMap::from_ints(c[0], c[1], c[2], c[3], p)?;
        let an = analyze(&phi, &Options::default())?;
        println!("{phi}: {}", summary(&an));
        let Ok(s) = case2_structure(&an) else { continue };
        println!("  x₁ = {}, x₂ = {}, λ = {}", s.x1, s.x2, s.lambda);
        println!("  {}", s.description);
        if let Some(per) = s.per_sphere {
            let checks = verify_structure(&an, 4)?;
            let ok = checks.iter().all(|c| c.predicted == c.observed);
            println!("  {per} components per sphere; level-4 brute force agrees: {ok}");
        }
    }
    Ok(())
}
