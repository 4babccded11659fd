//! x ↦ 1/(x+1) over Q_2 splits into two minimal components.
//!
//! Lists the level-3 atlas, follows the Fibonacci ratios F_{n}/F_{n+1}
//! through it, and tests a few pairs of points.

use homodyn::cli::summary;
use homodyn::decomposer::{analyze, Options};
use homodyn::projective::{Disk, HomographicMap, QPoint};
use homodyn::rational::{fmt_rational, rat};

fn main() -> homodyn::Result<()> {
    let phi = HomographicMap::from_ints(0, 1, 1, 1, 2)?;
    let an = analyze(&phi, &Options::default())?;
    println!("{phi}: {}", summary(&an));

    let report = an.component_atlas(3)?;
    let atlas = report.atlas.unwrap();
    let comps: Vec<Vec<Disk>> = atlas
        .components
        .iter()
        .map(|c| c.disks.iter().map(|j| Disk::from_json(j, 2)).collect())
        .collect::<homodyn::Result<_>>()?;
    for (i, c) in comps.iter().enumerate() {
        let names: Vec<String> = c.iter().map(|d| d.to_string()).collect();
        println!("B{}: {}", i + 1, names.join(", "));
    }

    // Orbits of 0 and 2 visit the cells in cycle order.
    for start in [0, 2] {
        let mut x = QPoint::Finite(rat(start, 1));
        let mut line = Vec::new();
        for _ in 0..6 {
            let home = comps.iter().position(|c| c.iter().any(|d| d.contains(&x))).unwrap();
            let shown = match &x {
                QPoint::Finite(q) => fmt_rational(q),
                QPoint::Infinity => "∞".into(),
            };
            line.push(format!("{shown}∈B{}", home + 1));
            x = phi.apply_exact(&x);
        }
        println!("{}", line.join(" → "));
    }

    let pairs = [(rat(0, 1), rat(1, 1)), (rat(0, 1), rat(2, 1)), (rat(1, 3), rat(2, 1))];
    for (x, y) in pairs {
        let s = an.same_component(&QPoint::Finite(x.clone()), &QPoint::Finite(y.clone()), 3)?;
        println!("{} ~ {}: {}", fmt_rational(&x), fmt_rational(&y), s.same);
    }
    Ok(())
}
