//! Square roots in Q_p by Hensel lifting, checked against the residue.

use homodyn::padic::{sqrt_in_qp, PadicNumber};
use homodyn::rational::{fmt_rational, rat};
use homodyn::verifier::{sqrt_exists_oracle, sqrt_residual_ok};

fn main() -> homodyn::Result<()> {
    let samples = [(2u64, rat(17, 1)), (2, rat(-7, 1)), (2, rat(3, 1)), (3, rat(7, 1)), (3, rat(2, 1)), (5, rat(-1, 1)), (5, rat(6, 25)), (7, rat(2, 7))];
    for (p, a) in samples {
        let x = PadicNumber::from_rational(&a, p, 20)?.without_exact();
        match sqrt_in_qp(&x)? {
            Some(r) => println!(
                "√{} in Q_{p} = {}  (residual ok: {})",
                fmt_rational(&a),
                r.to_text(),
                sqrt_residual_ok(&r, &x)?
            ),
            None => println!("√{} ∉ Q_{p}  (oracle agrees: {})", fmt_rational(&a), !sqrt_exists_oracle(&a, p)),
        }
    }
    Ok(())
}
