//! x ↦ 1/(x+1) over Q_3: a minimal system on all of P¹(Q_3).
//!
//! Prints the classification, the powers of λ, the first atlases, and the
//! invariant measure of a few balls.

use homodyn::cli::summary;
use homodyn::decomposer::{analyze, Options};
use homodyn::measure::ComponentMeasure;
use homodyn::projective::{Disk, HomographicMap};
use homodyn::rational::rat;

fn main() -> homodyn::Result<()> {
    let phi = HomographicMap::from_ints(0, 1, 1, 1, 3)?;
    let an = analyze(&phi, &Options::default())?;
    println!("{phi}: {}", summary(&an));

    let lambda = an.lambda_quad.clone().expect("Case III has λ in Q(√Δ)");
    for k in [1, 2, 4] {
        println!("λ^{k} = {}", lambda.pow(k));
    }
    let r = an.minimal_count()?;
    println!("stabilizes at level {}", r.stabilization_level.unwrap());
    println!("formula: {}", r.formula.unwrap_or_default());

    for level in 1..=3 {
        let lc = an.level_cycles(level)?;
        let lens: Vec<usize> = lc.cycles.iter().map(|c| c.len()).collect();
        println!("level {level}: cycle lengths {lens:?}");
    }

    let sigma = ComponentMeasure::from_analysis(&an, 2, 0)?;
    for d in [Disk::ball(3, rat(0, 1), 0), Disk::ball(3, rat(1, 1), -1), Disk::complement(3, rat(0, 1), 0)] {
        println!("σ({d}) = {}", sigma.sigma(&d)?);
    }
    Ok(())
}
