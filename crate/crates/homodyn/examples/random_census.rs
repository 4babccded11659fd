//! Draw random maps with small coefficients and tally how they decompose.
//!
//! Usage: random_census [samples] [seed]   (defaults: 300, 7)

use homodyn::decomposer::{analyze, Count, Options};
use homodyn::projective::HomographicMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let samples: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(300);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(7);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = Options { cell_budget: 100_000, ..Options::default() };
    let mut tally: BTreeMap<(u64, String, String), usize> = BTreeMap::new();
    let mut drawn = 0;
    while drawn < samples {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let c: Vec<i64> = (0..4).map(|_| rng.gen_range(-12..=12)).collect();
        let Ok(phi) = HomographicMap::from_ints(c[0], c[1], c[2], c[3], p) else { continue };
        if phi.is_identity() {
            continue;
        }
        drawn += 1;
        let (case, count) = match analyze(&phi, &opts) {
            Ok(an) => {
                let count = match an.count() {
                    Count::Finite(k) => k.to_string(),
                    Count::Infinite(_) => "∞".into(),
                };
                (an.case.short(), count)
            }
            Err(e) => ("refused".into(), e.to_string()),
        };
        *tally.entry((p, case, count)).or_default() += 1;
    }
    for ((p, case, count), n) in tally {
        println!("p={p}  {case:40} components {count:>4}  × {n}");
    }
}
