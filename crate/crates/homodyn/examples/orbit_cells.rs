//! Follow an orbit in p-adic precision and record the cells it visits.
//!
//! Usage: orbit_cells [x0] [steps]   (defaults: 1/2, 40)

use homodyn::decomposer::{analyze, Options};
use homodyn::projective::{HomographicMap, QPoint};
use homodyn::rational::parse_rational;
use homodyn::verifier::orbit;

fn main() -> homodyn::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let x0 = parse_rational(args.get(1).map(String::as_str).unwrap_or("1/2"))?;
    let steps: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(40);
    let phi = HomographicMap::from_ints(0, 1, 1, 1, 2)?;
    let an = analyze(&phi, &Options::default())?;
    let s = an.stabilization_level()?;
    let t = orbit(&phi, &QPoint::Finite(x0), steps, 32, an.chart(), &[s, s + 1, s + 2])?;
    for (i, x) in t.exact_prefix.iter().enumerate().take(8) {
        println!("{i:3}  {x}");
    }
    println!("  …  {}", t.points.last().unwrap());
    for v in &t.visited_cells {
        let labels = an.level_cycles(v.level)?.labels();
        let comps: std::collections::BTreeSet<usize> = v.cells.iter().map(|&c| labels[c as usize]).collect();
        println!(
            "level {}: {} cells visited, all in component(s) {:?}{}",
            v.level,
            v.cells.len(),
            comps,
            v.lost_at.map(|l| format!(", precision lost at step {l}")).unwrap_or_default()
        );
    }
    for e in &t.precision_events {
        println!("step {}: relative precision {:?} → {:?}", e.step, e.from, e.to);
    }
    Ok(())
}
