//! End-to-end verification: brute-force cycles on the cell complex against
//! every claim of the analysis, plus single-cycle certificates per component.
//!
//! Usage: certify p a,b,c,d [level]   (defaults: 3 0,1,1,1 4)

use homodyn::decomposer::{analyze, Options};
use homodyn::projective::HomographicMap;
use homodyn::rational::parse_rational;
use homodyn::verifier::{certify_components, verify_all};

fn main() -> homodyn::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let p: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let coeffs = args.get(2).map(String::as_str).unwrap_or("0,1,1,1");
    let level: u32 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(4);
    let m: Vec<_> = coeffs.split(',').map(parse_rational).collect::<homodyn::Result<_>>()?;
    if m.len() != 4 {
        return Err(homodyn::Error::Input("need four coefficients".into()));
    }
    let phi = HomographicMap::new(m[0].clone(), m[1].clone(), m[2].clone(), m[3].clone(), p)?;
    let an = analyze(&phi, &Options::default())?;
    let r = verify_all(&an, level)?;
    for line in &r.lines {
        println!("{line}");
    }
    println!("all checks agree: {}", r.agree);
    if an.closed.is_some() {
        for c in certify_components(&an, level)? {
            println!("component {}: single cycle {} with lengths {:?}", c.component, c.minimal, c.lengths);
        }
    }
    Ok(())
}
