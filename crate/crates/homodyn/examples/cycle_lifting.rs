//! Cycles of an affine map on O_K/πⁿ and how they lift to level n+1.
//!
//! Usage: cycle_lifting [p] [k]   runs on the k-th quadratic extension of Q_p (defaults: 3, 0)

use homodyn::cycle_engine::{cycles_at_level, lift_cycles, AffineMap, Coeff, Domain, OkRing};
use homodyn::quad_ext::CanonicalRadicand;

fn main() -> homodyn::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let p: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let k: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0);
    let all = CanonicalRadicand::all(p)?;
    let ring = OkRing::from_radicand(&all[k % all.len()]);
    println!("ring {} (e = {}, f = {})", ring.label, ring.e, ring.f);

    // x ↦ (1 + θ)x + 1
    let f = AffineMap::new(ring.clone(), Coeff::ints(1, 1), Coeff::ints(1, 0));
    for n in 1..=3 {
        let cycles = cycles_at_level(&f, n, Domain::All, 1 << 20)?;
        println!("level {n}: {} cycles", cycles.len());
        for c in cycles.iter().take(4) {
            let lr = lift_cycles(&f, c)?;
            let lens: Vec<usize> = lr.lifts.iter().map(|l| l.len()).collect();
            println!(
                "  length {:3} {:?} → lifts {:?}, {} transient points, recurrence {}",
                c.len(),
                c.class,
                lens,
                lr.tail_points,
                if lr.recurrence_ok { "ok" } else { "MISMATCH" }
            );
        }
    }
    Ok(())
}
