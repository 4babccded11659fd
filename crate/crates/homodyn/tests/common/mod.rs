#![allow(dead_code)]

use homodyn::decomposer::{analyze, Analysis, Options};
use homodyn::projective::{Disk, HomographicMap};
use homodyn::rational::{rat, Rational};
use serde::Deserialize;

pub fn map(a: i64, b: i64, c: i64, d: i64, p: u64) -> HomographicMap {
    HomographicMap::from_ints(a, b, c, d, p).unwrap()
}

pub fn an(a: i64, b: i64, c: i64, d: i64, p: u64) -> Analysis {
    analyze(&map(a, b, c, d, p), &Options::default()).unwrap()
}

#[derive(Clone, Debug, Deserialize)]
pub struct CorpusEntry {
    pub p: u64,
    pub map: [i64; 4],
    pub branch: String,
    pub class: String,
    pub count: u64,
    pub base: u64,
    pub stabilization_level: u32,
    pub formula: String,
}

impl CorpusEntry {
    pub fn analysis(&self) -> Analysis {
        let [a, b, c, d] = self.map;
        an(a, b, c, d, self.p)
    }
}

pub fn corpus() -> Vec<CorpusEntry> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/case3_corpus.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Which printed list an entry of the Example 2 component lists belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Printed {
    First,
    Second,
}

#[derive(Clone, Debug)]
pub struct PrintedEntry {
    pub list: Printed,
    pub text: &'static str,
    pub disk: Disk,
}

/// The two ball lists printed for 1/(x+1) over Q_2, as printed.
pub fn example_two_printed() -> Vec<PrintedEntry> {
    let b = |list, text, c: Rational, k| PrintedEntry { list, text, disk: Disk::ball(2, c, k) };
    use Printed::*;
    vec![
        b(First, "D̄(0,1/8)", rat(0, 1), -3),
        b(First, "D̄(1,1/8)", rat(1, 1), -3),
        b(First, "D̄(1/2,1)", rat(1, 2), 0),
        b(First, "D̄(2/3,1/8)", rat(2, 3), -3),
        b(First, "D̄(3/5,1/8)", rat(3, 5), -3),
        PrintedEntry { list: First, text: "P¹∖D̄(3/5,4)", disk: Disk::complement(2, rat(3, 5), 2) },
        b(Second, "D̄(2,1/8)", rat(2, 1), -3),
        b(Second, "D̄(1/3,1/8)", rat(1, 3), -3),
        b(Second, "D̄(3/4,2)", rat(3, 4), 1),
        b(Second, "D̄(4/7,1/8)", rat(4, 7), -3),
        b(Second, "D̄(1/11,1/8)", rat(1, 11), -3),
        b(Second, "D̄(18/11,1)", rat(18, 11), 0),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Equal to one computed cell of the expected component.
    Exact,
    /// Meets both components: the printed radius is too large.
    Straddles,
    /// Same computed cell as an earlier entry.
    Duplicate,
    /// Lies in the other component.
    WrongSide,
}

/// Compare the printed lists with computed components, entry by entry.
/// Returns the verdicts and the index of the component matched to the first list.
pub fn compare_printed(components: &[Vec<Disk>]) -> (Vec<(PrintedEntry, Verdict)>, Option<usize>) {
    let entries = example_two_printed();
    let home = |d: &Disk| -> Vec<usize> {
        (0..components.len()).filter(|&i| components[i].iter().any(|c| c.meets(d))).collect()
    };
    // Anchor the first list on D̄(0,1/8), the second on D̄(2,1/8).
    let first = home(&entries[0].disk).first().copied();
    let mut seen: Vec<Disk> = Vec::new();
    let mut out = Vec::new();
    for e in entries {
        let owners = home(&e.disk);
        let verdict = if owners.len() != 1 {
            Verdict::Straddles
        } else {
            let o = owners[0];
            let want_first = e.list == Printed::First;
            if (Some(o) == first) != want_first {
                Verdict::WrongSide
            } else {
                let cell = components[o].iter().find(|c| e.disk.subset_of(c) && c.subset_of(&e.disk));
                match cell {
                    Some(c) if seen.iter().any(|s| s.subset_of(c) && c.subset_of(s)) => Verdict::Duplicate,
                    Some(c) => {
                        seen.push(c.clone());
                        Verdict::Exact
                    }
                    None => Verdict::Straddles,
                }
            }
        };
        out.push((e, verdict));
    }
    (out, first)
}

pub fn atlas_disks(an: &Analysis, level: u32) -> Vec<Vec<Disk>> {
    let r = an.component_atlas(level).unwrap();
    r.atlas
        .unwrap()
        .components
        .iter()
        .map(|c| c.disks.iter().map(|j| Disk::from_json(j, an.map.p).unwrap()).collect())
        .collect()
}
