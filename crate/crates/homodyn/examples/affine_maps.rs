//! Affine maps x ↦ αx + β, where ∞ is fixed.
//!
//! Translations act on the balls around ∞ like odometers; multiplications are
//! classified through their two fixed points.

use homodyn::cli::summary;
use homodyn::decomposer::{analyze, Options};
use homodyn::projective::HomographicMap;

fn main() -> homodyn::Result<()> {
    let maps = [([1, 1, 0, 1], 3), ([1, 3, 0, 1], 3), ([-5, 1, 0, -5], 5), ([2, 0, 0, 1], 5), ([4, 1, 0, 1], 3)];
    for (c, p) in maps {
        let phi = HomographicMap::from_ints(c[0], c[1], c[2], c[3], p)?;
        match analyze(&phi, &Options::default()) {
            Ok(an) => {
                println!("{phi}: {}", summary(&an));
                if let Some(ch) = an.chart() {
                    println!("  chart: x = {}^{}·z + {}", p, ch.m, ch.q);
                }
            }
            Err(e) => println!("{phi}: {e}"),
        }
    }
    Ok(())
}
