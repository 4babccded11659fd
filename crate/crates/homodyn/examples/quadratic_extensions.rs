//! The quadratic extensions of Q_p: canonical radicands, how far √d sits
//! from Q_p, and how closed disks around points of K meet Q_p.

use homodyn::quad_ext::{count_subdisks_meeting_qp, distance_to_qp, CanonicalRadicand, Distance, ExtDisk, ExtElement, HalfPow};
use homodyn::rational::rat;

fn show(d: Distance) -> String {
    match d {
        Distance::RationalPoint => "0".into(),
        Distance::Radius(h) => h.to_string(),
    }
}

fn main() -> homodyn::Result<()> {
    for p in [2u64, 3, 5] {
        println!("Q_{p}:");
        for r in CanonicalRadicand::all(p)? {
            let kind = if r.is_unramified() { "unramified" } else { "ramified" };
            let theta = ExtElement::theta(&r, 40)?;
            let x = ExtElement::from_rationals(&r, &rat(1, 1), &rat(1, p as i64), 40)?;
            let disk = ExtDisk::closed(ExtElement::from_i64(&r, 0, 0, 40)?, HalfPow { half: 0 });
            let c = count_subdisks_meeting_qp(&disk)?;
            println!(
                "  {:6} {kind:10}  dist(θ, Q_p) = {:9}  dist(1 + θ/p, Q_p) = {:9}  unit disk: {}/{} subdisks meet Q_p",
                r.label(),
                show(distance_to_qp(&theta)?),
                show(distance_to_qp(&x)?),
                c.meeting,
                c.total
            );
        }
    }
    Ok(())
}
