//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use common::*;
use clap::Parser;
use homodyn::cli::{execute, Cli};
use homodyn::cycle_engine::{
    cycles_at_level, lift_cycles, multiplication_type, AffineMap, Coeff, Domain, OkRing,
};
use homodyn::decomposer::{case1_structure, case2_structure, Analysis, DecompositionReport, Region};
use homodyn::error::Error;
use homodyn::measure::{cell_weights, check_invariance_all, corrupted_weights, weight_failures};
use homodyn::padic::{sqrt_in_qp, PadicNumber};
use homodyn::projective::Disk;
use homodyn::quad_ext::{distance_to_qp, CanonicalRadicand, Distance, ExtElement};
use homodyn::rational::{pow_p_rat, rat, Rational};
use homodyn::verifier::{
    brute_force_for, certify_components, distance_tree_oracle, sqrt_exists_oracle, sqrt_residual_ok,
    verify_structure,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use std::time::{Duration, Instant};

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn run_cli(args: &[&str]) -> std::result::Result<Value, String> {
    let mut argv = vec!["homodyn", "--format", "json"];
    argv.extend_from_slice(args);
    let cli = Cli::try_parse_from(argv).map_err(e)?;
    let out = execute(&cli).map_err(e)?;
    ensure!(out.ok, "command reported failure");
    Ok(out.json)
}

fn field<'a>(v: &'a Value, path: &[&str]) -> &'a Value {
    path.iter().fold(v, |v, k| &v[*k])
}

fn expect(v: &Value, path: &[&str], want: Value) -> std::result::Result<(), String> {
    let got = field(v, path);
    ensure!(*got == want, "{}: got {got}, want {want}", path.join("."));
    Ok(())
}

fn timed(limit: Duration, start: Instant) -> std::result::Result<(), String> {
    let t = start.elapsed();
    ensure!(t < limit, "took {t:?}, limit {limit:?}");
    Ok(())
}

fn example_maps() -> Vec<Analysis> {
    vec![an(0, 1, 1, 1, 3), an(0, 1, 1, 1, 2)]
}

fn all_case_three() -> Vec<Analysis> {
    let mut v = example_maps();
    v.extend(corpus().iter().map(|c| c.analysis()));
    v
}

// 1
fn example_one() -> Check {
    let t = Instant::now();
    let j = run_cli(&["analyze", "--p", "3", "--map", "0,1,1,1"])?;
    expect(&j, &["case"], "case_iii".into())?;
    expect(&j, &["unramified"], true.into())?;
    expect(&j, &["lambda_profile", "ell"], 4.into())?;
    expect(&j, &["lambda_profile", "valuations", "v_pi(lambda^4-1)"], 1.into())?;
    expect(&j, &["count"], 1.into())?;
    expect(&j, &["minimal"], true.into())?;
    expect(&j, &["odometer", "base"], 4.into())?;
    expect(&j, &["odometer", "ratio"], 3.into())?;
    expect(&j, &["measure_tag"], "mu_hat".into())?;
    timed(Duration::from_secs(1), t)?;
    Ok(format!("minimal, odometer (4,12,36,…), {:?}", t.elapsed()))
}

// 2
fn example_two() -> Check {
    let t = Instant::now();
    let j = run_cli(&["analyze", "--p", "2", "--map", "0,1,1,1"])?;
    expect(&j, &["case"], "case_iii".into())?;
    expect(&j, &["class"], "-3".into())?;
    expect(&j, &["lambda_profile", "ell"], 3.into())?;
    expect(&j, &["lambda_profile", "valuations", "v_pi(lambda^6-1)"], 3.into())?;
    expect(&j, &["count"], 2.into())?;
    expect(&j, &["odometer", "base"], 3.into())?;
    expect(&j, &["odometer", "ratio"], 2.into())?;
    let d = run_cli(&["decompose", "--p", "2", "--map", "0,1,1,1", "--level", "3"])?;
    let r: DecompositionReport = serde_json::from_value(d).map_err(e)?;
    let atlas = r.atlas.ok_or("no atlas")?;
    ensure!(atlas.components.len() == 2, "{} components", atlas.components.len());
    let comps: Vec<Vec<Disk>> = atlas
        .components
        .iter()
        .map(|c| c.disks.iter().map(|j| Disk::from_json(j, 2)).collect::<homodyn::error::Result<_>>())
        .collect::<homodyn::error::Result<_>>()
        .map_err(e)?;
    let (verdicts, first) = compare_printed(&comps);
    ensure!(first.is_some(), "D̄(0,1/8) is in no component");
    let required = ["D̄(0,1/8)", "D̄(1,1/8)", "D̄(2,1/8)", "D̄(1/3,1/8)"];
    let mut exact = 0;
    let mut flagged = Vec::new();
    for (entry, v) in &verdicts {
        if required.contains(&entry.text) {
            ensure!(*v == Verdict::Exact, "{} is {v:?}", entry.text);
        }
        match v {
            Verdict::Exact => exact += 1,
            Verdict::WrongSide => return Err(format!("{} lies in the other component", entry.text)),
            other => flagged.push(format!("{} {other:?}", entry.text)),
        }
    }
    timed(Duration::from_secs(1), t)?;
    Ok(format!("{exact}/{} printed balls exact; flagged: {}", verdicts.len(), flagged.join(", ")))
}

// 3
fn corpus_counts() -> Check {
    let t = Instant::now();
    let c = corpus();
    ensure!(c.len() >= 40, "corpus has {} maps", c.len());
    let mut cells = 0u64;
    for entry in &c {
        let a = entry.analysis();
        let r = a.minimal_count().map_err(e)?;
        let s = r.stabilization_level.ok_or("no stabilization level")?;
        let bf = brute_force_for(&a, s).map_err(e)?;
        cells = cells.max(bf.map.len() as u64);
        let want = a.closed.as_ref().unwrap().count;
        ensure!(
            bf.cycles.len() as u64 == want && want == entry.count,
            "{:?} p={}: brute force {} cycles, closed form {want}, frozen {}",
            entry.map,
            entry.p,
            bf.cycles.len(),
            entry.count
        );
    }
    ensure!(cells <= 1_000_000, "largest level has {cells} cells");
    timed(Duration::from_secs(120), t)?;
    Ok(format!("{} maps, largest level {cells} cells, {:?}", c.len(), t.elapsed()))
}

fn extension_rings(p: u64) -> Vec<OkRing> {
    CanonicalRadicand::all(p).unwrap().iter().map(OkRing::from_radicand).collect()
}

// 4
fn lift_recurrences(rng: &mut ChaCha8Rng) -> Check {
    let mut done = 0;
    let (mut unram, mut ram) = (0, 0);
    while done < 200 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let rings = extension_rings(p);
        let ring = rings[rng.gen_range(0..rings.len())].clone();
        let n = rng.gen_range(1..=3u32);
        if ring.size(n + 2).map(|s| s > 1 << 16).unwrap_or(true) {
            continue;
        }
        let c = |r: &mut ChaCha8Rng| Coeff::ints(r.gen_range(-40..=40), r.gen_range(-40..=40));
        let f = AffineMap::new(ring.clone(), c(rng), c(rng));
        let cycles = cycles_at_level(&f, n, Domain::All, 1 << 16).map_err(e)?;
        let cyc = &cycles[rng.gen_range(0..cycles.len())];
        let lr = lift_cycles(&f, cyc).map_err(e)?;
        ensure!(lr.recurrence_ok && lr.shape_ok, "{} level {n}: {:?}", ring.label, cyc);
        ensure!(lr.mass_conserved(p, ring.f), "{} level {n}: mass not conserved", ring.label);
        if ring.e == 1 {
            unram += 1;
        } else {
            ram += 1;
        }
        done += 1;
    }
    ensure!(unram > 0 && ram > 0, "sample missed a ramification type");
    Ok(format!("{done} cycles ({unram} unramified, {ram} ramified)"))
}

// 5
fn multiplication_types(rng: &mut ChaCha8Rng) -> Check {
    const BUDGET: u64 = 1 << 20;
    let mut fields = 0;
    let mut resampled = 0;
    for p in [2u64, 3, 5] {
        let mut rings = vec![OkRing::base(p)];
        rings.extend(extension_rings(p));
        for ring in rings {
            let mut tested = 0;
            let mut tries = 0;
            while tested < 50 {
                tries += 1;
                ensure!(tries < 5000, "{}: could not draw 50 usable units", ring.label);
                let y = if ring.is_base() { 0 } else { rng.gen_range(-200..=200) };
                let alpha = Coeff::ints(rng.gen_range(-200..=200), y);
                let unit = alpha.at(&ring, 1).map(|a| ring.is_unit(a)).unwrap_or(false);
                if !unit {
                    continue;
                }
                let t = match multiplication_type(&ring, &alpha) {
                    Ok(t) => t,
                    Err(Error::Domain(_)) => {
                        resampled += 1;
                        continue;
                    }
                    Err(x) => return Err(x.to_string()),
                };
                let top = t.type_vector.start_level + 3;
                if ring.size(top).map(|s| s > BUDGET).unwrap_or(true) {
                    resampled += 1;
                    continue;
                }
                let f = AffineMap::multiplication(ring.clone(), alpha.clone());
                for n in 1..=top {
                    let cycles = cycles_at_level(&f, n, Domain::Units, BUDGET).map_err(e)?;
                    let want = t.type_vector.cycle_length(p, n);
                    ensure!(
                        cycles.iter().all(|c| c.len() as u64 == want),
                        "{} α={alpha:?} level {n}: lengths differ from {want}",
                        ring.label
                    );
                    if n == 1 {
                        ensure!(want == t.ell, "{} α={alpha:?}: ℓ", ring.label);
                    }
                    if n == t.type_vector.start_level {
                        ensure!(cycles.len() as u64 == t.clopen_count, "{} α={alpha:?}: clopen count", ring.label);
                    }
                }
                tested += 1;
            }
            fields += 1;
        }
    }
    Ok(format!("{fields} fields × 50 units; {resampled} draws resampled (root of unity or over budget)"))
}

fn random_rational(rng: &mut ChaCha8Rng, p: u64, num: i64, kmax: i64) -> Rational {
    let d = rng.gen_range(0..20i64) * p as i64 + 1;
    rat(rng.gen_range(-num..=num), d) * pow_p_rat(p, rng.gen_range(-kmax..=kmax))
}

// 6
fn distances(rng: &mut ChaCha8Rng) -> Check {
    let mut classes = 0;
    for p in [2u64, 3, 5, 7] {
        for r in CanonicalRadicand::all(p).map_err(e)? {
            let mut done = 0;
            while done < 100 {
                let u = random_rational(rng, p, 10_000, 3);
                let v = random_rational(rng, p, 10_000, 3);
                if v == Rational::from_integer(0.into()) {
                    continue;
                }
                let x = ExtElement::from_rationals(&r, &u, &v, 48).map_err(e)?;
                let Distance::Radius(d) = distance_to_qp(&x).map_err(e)? else {
                    return Err(format!("{}: nonzero v read as a rational point", r.label()));
                };
                let oracle = distance_tree_oracle(&x, 40).map_err(e)?;
                ensure!(oracle == Some(d), "{} u={u} v={v}: {d:?} vs oracle {oracle:?}", r.label());
                done += 1;
            }
            classes += 1;
        }
    }
    Ok(format!("{classes} classes × 100 elements"))
}

// 7
fn square_roots(rng: &mut ChaCha8Rng) -> Check {
    for p in [2u64, 3, 5, 7] {
        let kappa = if p == 2 { 3 } else { 1 };
        let (mut res, mut non) = (0, 0);
        while res < 200 {
            let s = random_rational(rng, p, 5_000, 3);
            if s == Rational::from_integer(0.into()) {
                continue;
            }
            let t = rat(rng.gen_range(-1000..=1000), rng.gen_range(0..20i64) * p as i64 + 1);
            let a = &s * &s * (Rational::from_integer(1.into()) + pow_p_rat(p, kappa) * t);
            if a == Rational::from_integer(0.into()) {
                continue;
            }
            let pa = PadicNumber::from_rational(&a, p, 40).map_err(e)?.without_exact();
            let root = sqrt_in_qp(&pa).map_err(e)?.ok_or_else(|| format!("p={p}: no root for residue {a}"))?;
            ensure!(sqrt_residual_ok(&root, &pa).map_err(e)?, "p={p}: residual too large for {a}");
            ensure!(sqrt_exists_oracle(&a, p), "p={p}: oracle rejects residue {a}");
            res += 1;
        }
        while non < 200 {
            let a = random_rational(rng, p, 100_000, 3);
            if a == Rational::from_integer(0.into()) || sqrt_exists_oracle(&a, p) {
                continue;
            }
            let pa = PadicNumber::from_rational(&a, p, 40).map_err(e)?.without_exact();
            ensure!(sqrt_in_qp(&pa).map_err(e)?.is_none(), "p={p}: root found for non-residue {a}");
            non += 1;
        }
    }
    Ok("200 residues and 200 non-residues for each p in {2,3,5,7}".into())
}

// 8
fn invariance() -> Check {
    let mut checked = 0;
    for a in all_case_three() {
        let s = a.stabilization_level().map_err(e)?;
        let kind = a.measure_tag().ok_or("no measure tag")?;
        for n in s..=s.max(6) {
            for r in check_invariance_all(&a, n).map_err(e)? {
                ensure!(r.pass, "{} level {n} component {}", a.map, r.component);
                checked += r.rows.len();
            }
        }
        // One level past stabilization every cycle has length at least p, so no cell is fixed.
        let n = s + 1;
        let scheme = a.scheme(n).map_err(e)?;
        let perm = a.level_cycles(n).map_err(e)?.perm;
        ensure!(weight_failures(&perm, &cell_weights(kind, &scheme)).is_empty(), "{}: true weights rejected", a.map);
        ensure!(!weight_failures(&perm, &corrupted_weights(kind, &scheme)).is_empty(), "{}: corruption missed", a.map);
    }
    Ok(format!("{checked} cell residuals zero; corrupted weights detected on every map"))
}

// 9
fn structures() -> Check {
    let one = an(3, -1, 1, 1, 3);
    let rep = case1_structure(&one, 5).map_err(e)?;
    let mut spheres = 0;
    for c in verify_structure(&one, 5).map_err(e)? {
        ensure!(c.predicted == c.observed, "Case I {:?}: {} vs {}", c.region, c.predicted, c.observed);
        if let Region::Sphere { depth, .. } = c.region {
            let s = rep.spheres.iter().find(|s| s.depth == depth).ok_or("sphere missing from report")?;
            ensure!(s.count == c.predicted, "Case I depth {depth}: report {} vs {}", s.count, c.predicted);
            spheres += 1;
        }
    }
    let two = an(2, 0, 1, 1, 3);
    let rep = case2_structure(&two).map_err(e)?;
    let per = rep.per_sphere.ok_or("no per-sphere count")?;
    for c in verify_structure(&two, 5).map_err(e)? {
        ensure!(c.predicted == c.observed, "Case II {:?}: {} vs {}", c.region, c.predicted, c.observed);
        if let Region::Sphere { .. } = c.region {
            ensure!(c.predicted == per, "Case II {:?}", c.region);
            spheres += 1;
        }
    }
    ensure!(spheres > 0, "no sphere regions resolved at level 5");
    Ok(format!("{spheres} sphere regions match at level 5"))
}

// 10
fn certificates() -> Check {
    let mut comps = 0;
    for a in all_case_three() {
        let k = a.odometer().ok_or("no odometer")?.base as usize;
        for c in certify_components(&a, 5).map_err(e)? {
            ensure!(c.minimal && c.odometer_ok, "{} component {}: {:?}", a.map, c.component, c.lengths);
            ensure!(c.lengths[0].1 % k == 0, "{} base {k}: {:?}", a.map, c.lengths);
            comps += 1;
        }
    }
    Ok(format!("{comps} components certified single-cycle with lengths k·p^j"))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let criteria: Vec<(&str, Box<dyn FnOnce(&mut ChaCha8Rng) -> Check>)> = vec![
        ("example 1 end-to-end", Box::new(|_| example_one())),
        ("example 2 end-to-end", Box::new(|_| example_two())),
        ("closed form vs brute force on the corpus", Box::new(|_| corpus_counts())),
        ("cycle lift recurrences", Box::new(lift_recurrences)),
        ("multiplication type vs brute force", Box::new(multiplication_types)),
        ("distance to Q_p", Box::new(distances)),
        ("square roots", Box::new(square_roots)),
        ("measure invariance", Box::new(|_| invariance())),
        ("Case I/II sphere counts", Box::new(|_| structures())),
        ("minimality certificates", Box::new(|_| certificates())),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| f(&mut rng)))
            .unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{:.2?}]", i + 1, t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{:.2?}]", i + 1, t.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
