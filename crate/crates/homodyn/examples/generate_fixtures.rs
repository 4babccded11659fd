//! Regenerate fixtures/case3_corpus.json: Case III maps with coefficients in
//! {−9,…,9}, three per branch and prime, drawn from a fixed seed.

use homodyn::cells::CellScheme;
use homodyn::decomposer::{analyze, Branch, CaseTag, Options};
use homodyn::projective::HomographicMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

const SEED: u64 = 0x5eed_2024;
const PER_BRANCH: usize = 3;
const MAX_CELLS: u64 = 50_000;

#[derive(Serialize)]
struct Entry {
    p: u64,
    map: [i64; 4],
    branch: Branch,
    class: String,
    count: u64,
    base: u64,
    stabilization_level: u32,
    formula: String,
}

fn branches(p: u64) -> Vec<Branch> {
    use Branch::*;
    if p == 2 {
        vec![TwoUnramified, TwoSqrtGreater, TwoSqrtSmaller, TwoOnePlusEqual, TwoOnePlusGreater, TwoOnePlusSmaller]
    } else {
        vec![UnramifiedOdd, RamifiedOddGreater, RamifiedOddSmaller]
    }
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let mut got: BTreeMap<String, usize> = BTreeMap::new();
        let want = branches(p);
        let mut tries = 0;
        while want.iter().any(|b| got.get(&format!("{b:?}")).copied().unwrap_or(0) < PER_BRANCH) {
            tries += 1;
            assert!(tries < 2_000_000, "p={p}: sampling did not fill every branch: {got:?}");
            let m: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-9..=9));
            let Ok(phi) = HomographicMap::from_ints(m[0], m[1], m[2], m[3], p) else { continue };
            let Ok(an) = analyze(&phi, &Options::default()) else { continue };
            let CaseTag::CaseIII { branch, class, finite_order: None, .. } = &an.case else { continue };
            let slot = got.entry(format!("{branch:?}")).or_default();
            if *slot >= PER_BRANCH {
                continue;
            }
            let Ok(stab) = an.stabilization_level() else { continue };
            let cells = CellScheme::new(an.chart().unwrap().clone(), stab).unwrap().count();
            if cells > MAX_CELLS {
                continue;
            }
            *slot += 1;
            let cf = an.closed.clone().unwrap();
            out.push(Entry {
                p,
                map: m,
                branch: *branch,
                class: class.clone(),
                count: cf.count,
                base: cf.base,
                stabilization_level: stab,
                formula: cf.formula,
            });
        }
    }
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/case3_corpus.json");
    std::fs::write(path, serde_json::to_string_pretty(&out).unwrap() + "\n").unwrap();
    println!("{} maps written to {path}", out.len());
}
