//! Multiplication by a unit α on the units of O_K: the residue order ℓ, the
//! valuations v_π(α^{ℓp^j} − 1), and the cycle lengths they predict.

use homodyn::cycle_engine::{cycles_at_level, multiplication_type, AffineMap, Coeff, Domain, OkRing};
use homodyn::quad_ext::CanonicalRadicand;

fn main() -> homodyn::Result<()> {
    let mut rings = vec![OkRing::base(3)];
    rings.extend(CanonicalRadicand::all(3)?.iter().map(OkRing::from_radicand));
    rings.push(OkRing::from_radicand(&CanonicalRadicand::new(2, -1)?));
    for ring in rings {
        let candidates = if ring.is_base() { vec![(2, 0)] } else { vec![(2, 1), (1, 2), (3, 2)] };
        let alpha = candidates
            .into_iter()
            .map(|(x, y)| Coeff::ints(x, y))
            .find(|a| a.at(&ring, 1).map(|r| ring.is_unit(r)).unwrap_or(false))
            .expect("one candidate is a unit");
        let t = multiplication_type(&ring, &alpha)?;
        let tv = &t.type_vector;
        println!(
            "{}: ℓ = {}, valuations {:?}, steps {:?} then {}, {} clopen pieces from level {}",
            ring.label, t.ell, tv.valuations, tv.prefix, tv.tail, t.clopen_count, tv.start_level
        );
        let f = AffineMap::multiplication(ring.clone(), alpha);
        for n in 1..=tv.start_level + 2 {
            let cycles = cycles_at_level(&f, n, Domain::Units, 1 << 20)?;
            println!("  level {n}: {} cycles of length {}", cycles.len(), tv.cycle_length(ring.p, n));
        }
    }
    Ok(())
}
