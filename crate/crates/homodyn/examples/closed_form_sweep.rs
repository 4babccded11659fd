//! Compare the Case III closed form with cycle counts on the cell complex
//! for every map with small integer coefficients.

use homodyn::decomposer::{analyze, CaseTag, Options};
use homodyn::projective::HomographicMap;
use std::collections::BTreeMap;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let bound: i64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let opts = Options { cell_budget: 200_000, ..Options::default() };
    let mut tally: BTreeMap<String, (u32, u32, u32)> = BTreeMap::new();
    for p in [2u64, 3, 5, 7] {
        for a in -bound..=bound {
            for b in -bound..=bound {
                for c in 1..=bound {
                    for d in -bound..=bound {
                        if a * d - b * c == 0 {
                            continue;
                        }
                        let Ok(phi) = HomographicMap::from_ints(a, b, c, d, p) else { continue };
                        let Ok(an) = analyze(&phi, &opts) else {
                            println!("FAIL analyze {phi}");
                            continue;
                        };
                        let CaseTag::CaseIII { branch, finite_order: None, .. } = &an.case else { continue };
                        let key = format!("p={p} {branch:?}");
                        let e = tally.entry(key).or_default();
                        match an.stabilization_level() {
                            Ok(_) => e.0 += 1,
                            Err(homodyn::Error::Budget(_)) => e.1 += 1,
                            Err(err) => {
                                e.2 += 1;
                                println!("FAIL {phi}: {err}");
                            }
                        }
                    }
                }
            }
        }
    }
    for (k, (ok, budget, fail)) in tally {
        println!("{k:32} ok {ok:5} budget {budget:4} fail {fail}");
    }
}
