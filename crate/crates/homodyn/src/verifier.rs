//! Brute-force checks: orbits, exhaustive cell dynamics, quotient minimality
//! and independent oracles for the local-field routines.

use crate::cells::{cycles_of, CellScheme, Chart};
use crate::decomposer::{Analysis, LevelCycles, Region};
use crate::error::{Error, Result};
use crate::padic::PadicNumber;
use crate::projective::{DiskTransport, HomographicMap, ProjPoint, QPoint};
use crate::quad_ext::{all_subdisk_centers, ExtDisk, ExtElement, HalfPow};
use crate::rational::{self, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};

pub const ORBIT_STEP_CAP: usize = 100_000;
pub const BRUTE_FORCE_CELL_CAP: u64 = 1_000_000;
const EXACT_PREFIX: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionEvent {
    pub step: usize,
    /// Relative digits before and after the step.
    pub from: Option<i64>,
    pub to: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelVisits {
    pub level: u32,
    /// Cells in order of first visit.
    pub cells: Vec<u64>,
    pub first_visit: Vec<usize>,
    /// Step at which precision became too coarse to locate the cell, if any.
    pub lost_at: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitTrace {
    pub start: String,
    pub precision: u32,
    pub points: Vec<String>,
    /// Exact rational values of the first steps.
    pub exact_prefix: Vec<String>,
    pub precision_events: Vec<PrecisionEvent>,
    pub visited_cells: Vec<LevelVisits>,
}

fn point_text(x: &ProjPoint) -> String {
    match x {
        ProjPoint::Infinity => "∞".into(),
        ProjPoint::Finite(v) => v.to_text(),
    }
}

/// Relative p-adic digits carried by a finite point.
fn digits(x: &ProjPoint) -> Option<i64> {
    match x {
        ProjPoint::Finite(v) if !v.is_zero() => Some(v.precision() as i64),
        _ => None,
    }
}

/// Enough absolute precision to place x in a level-n cell of the chart.
fn locatable(x: &ProjPoint, chart: &Chart, n: u32) -> bool {
    match x {
        ProjPoint::Infinity => true,
        ProjPoint::Finite(v) => match (v.absolute_precision(), v.valuation()) {
            (None, _) => true,
            (Some(ap), val) => {
                let big = val.map(|w| (-w).max(0)).unwrap_or(0);
                ap >= n as i64 + chart.m.max(0) + 2 * big
            }
        },
    }
}

/// Iterate φ from x0 at working precision, recording the cells visited.
pub fn orbit(
    phi: &HomographicMap,
    x0: &QPoint,
    steps: usize,
    precision: u32,
    chart: Option<&Chart>,
    levels: &[u32],
) -> Result<OrbitTrace> {
    if steps > ORBIT_STEP_CAP {
        return Err(Error::Budget(format!("{steps} orbit steps exceed the cap {ORBIT_STEP_CAP}")));
    }
    let p = phi.p;
    let schemes = match chart {
        Some(c) => levels.iter().map(|&n| CellScheme::new(c.clone(), n)).collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let mut visits: Vec<LevelVisits> = schemes
        .iter()
        .map(|s| LevelVisits { level: s.level, cells: vec![], first_visit: vec![], lost_at: None })
        .collect();
    let mut seen: Vec<HashSet<u64>> = vec![HashSet::new(); schemes.len()];
    let mut x = ProjPoint::from_qpoint(x0, p, precision)?.without_exact();
    let mut exact = x0.clone();
    let mut trace = OrbitTrace {
        start: x0.to_string(),
        precision,
        points: Vec::with_capacity(steps + 1),
        exact_prefix: Vec::new(),
        precision_events: Vec::new(),
        visited_cells: Vec::new(),
    };
    for step in 0..=steps {
        if step < EXACT_PREFIX {
            trace.exact_prefix.push(exact.to_string());
        }
        trace.points.push(point_text(&x));
        for (k, s) in schemes.iter().enumerate() {
            if visits[k].lost_at.is_some() {
                continue;
            }
            if !locatable(&x, &s.chart, s.level) {
                visits[k].lost_at = Some(step);
                continue;
            }
            let q = x.to_qpoint().unwrap_or(QPoint::Infinity);
            let q = match (&x, q) {
                (ProjPoint::Finite(v), _) => QPoint::Finite(v.to_rational_approx()),
                (_, q) => q,
            };
            let c = s.locate(&q);
            if seen[k].insert(c) {
                visits[k].cells.push(c);
                visits[k].first_visit.push(step);
            }
        }
        if step == steps {
            break;
        }
        let next = phi.apply(&x)?;
        let (from, to) = (digits(&x), digits(&next));
        if to < from {
            trace.precision_events.push(PrecisionEvent { step: step + 1, from, to });
        }
        x = next;
        if step + 1 < EXACT_PREFIX {
            exact = phi.apply_exact(&exact);
        }
    }
    trace.visited_cells = visits;
    Ok(trace)
}

/// The cell map on level-n cells, found by evaluating φ exactly.
#[derive(Clone, Debug)]
pub struct BruteForce {
    pub scheme: CellScheme,
    pub map: Vec<u64>,
    pub cycles: Vec<Vec<u64>>,
    pub tail_cells: Vec<u64>,
}

impl BruteForce {
    pub fn as_level_cycles(&self) -> LevelCycles {
        LevelCycles { scheme: self.scheme.clone(), perm: self.map.clone(), cycles: self.cycles.clone() }
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.len()).collect()
    }
}

/// Push both representatives of every cell through φ and locate the images;
/// disk transport must return exactly the located cell.
pub fn brute_force_decompose(phi: &HomographicMap, chart: &Chart, level: u32, budget: u64) -> Result<BruteForce> {
    let scheme = CellScheme::new(chart.clone(), level)?;
    let cap = budget.min(BRUTE_FORCE_CELL_CAP);
    if scheme.count() > cap {
        return Err(Error::Budget(format!("{} cells at level {level} exceed {cap}", scheme.count())));
    }
    let mut map = Vec::with_capacity(scheme.count() as usize);
    let transport = DiskTransport::new(phi);
    for idx in 0..scheme.count() {
        let reps = scheme.representatives(idx);
        let j = scheme.locate(&phi.apply_exact(&reps[0]));
        let j2 = scheme.locate(&phi.apply_exact(&reps[1]));
        if j != j2 {
            return Err(Error::Oracle(format!("cell {idx} at level {level} is split by φ")));
        }
        let img = transport.image(&scheme.disk(idx));
        if img != scheme.disk(j) {
            return Err(Error::Oracle(format!(
                "φ({}) = {img} is not the cell {} it hits",
                scheme.disk(idx),
                scheme.disk(j)
            )));
        }
        map.push(j);
    }
    let mut cycles: Vec<Vec<u64>> = cycles_of(&map)
        .into_iter()
        .map(|c| {
            let k = c.iter().enumerate().min_by_key(|(_, &v)| v).unwrap().0;
            c[k..].iter().chain(c[..k].iter()).copied().collect()
        })
        .collect();
    cycles.sort_by_key(|c| c[0]);
    let on: HashSet<u64> = cycles.iter().flatten().copied().collect();
    let tail_cells = (0..scheme.count()).filter(|i| !on.contains(i)).collect();
    Ok(BruteForce { scheme, map, cycles, tail_cells })
}

/// Brute force in the analysis chart, or in the standard chart if there is none.
pub fn brute_force_for(an: &Analysis, level: u32) -> Result<BruteForce> {
    let chart = an.chart().cloned().unwrap_or_else(|| Chart::identity(an.map.p));
    brute_force_decompose(&an.map, &chart, level, an.opts.cell_budget)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCertificate {
    pub level: u32,
    pub cycles: Vec<Vec<u64>>,
    pub single_cycle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityCertificate {
    pub minimal: bool,
    pub levels: Vec<LevelCertificate>,
}

impl MinimalityCertificate {
    pub fn lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.cycles.iter().map(|c| c.len()).sum()).collect()
    }
}

/// Check that a candidate set of level-n_max cells, and its shadow at every
/// coarser level, is one cycle of the cell map.
pub fn verify_minimal_on_quotients(
    phi: &HomographicMap,
    chart: &Chart,
    cells: &[u64],
    n_max: u32,
    budget: u64,
) -> Result<MinimalityCertificate> {
    if cells.is_empty() {
        return Err(Error::Input("empty candidate component".into()));
    }
    let mut set: BTreeSet<u64> = cells.iter().copied().collect();
    let mut levels = Vec::new();
    let mut scheme = CellScheme::new(chart.clone(), n_max)?;
    loop {
        let n = scheme.level;
        let bf = brute_force_decompose(phi, chart, n, budget)?;
        let mut cycles = Vec::new();
        let mut left = set.clone();
        let mut closed = true;
        while let Some(&start) = left.iter().next() {
            let mut c = vec![start];
            left.remove(&start);
            let mut x = bf.map[start as usize];
            while x != start {
                if !left.remove(&x) {
                    closed = false;
                    break;
                }
                c.push(x);
                x = bf.map[x as usize];
            }
            if !closed {
                break;
            }
            cycles.push(c);
        }
        let single = closed && cycles.len() == 1;
        levels.push(LevelCertificate { level: n, cycles, single_cycle: single });
        if n == 1 {
            break;
        }
        set = set.iter().map(|&i| scheme.parent(i)).collect();
        scheme = scheme.coarser()?;
    }
    levels.reverse();
    let minimal = levels.iter().all(|l| l.single_cycle);
    Ok(MinimalityCertificate { minimal, levels })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCertificate {
    pub component: usize,
    pub minimal: bool,
    /// (level, cycle length) from stabilization on.
    pub lengths: Vec<(u32, usize)>,
    pub odometer_ok: bool,
}

/// Single-cycle certificates for every atlas component at levels from
/// stabilization through max(n_max, stabilization); lengths must read
/// k·p^j, k·p^(j+1), … for the odometer base k.
pub fn certify_components(an: &Analysis, n_max: u32) -> Result<Vec<ComponentCertificate>> {
    let stab = an.stabilization_level()?;
    let top = n_max.max(stab);
    let chart = an.chart().unwrap().clone();
    let report = an.component_atlas(top)?;
    let k = an.odometer().unwrap().base as usize;
    let p = an.map.p as usize;
    let mut out = Vec::new();
    for (i, comp) in report.atlas.unwrap().components.iter().enumerate() {
        let cert = verify_minimal_on_quotients(&an.map, &chart, &comp.cells, top, an.opts.cell_budget)?;
        let lengths: Vec<(u32, usize)> = cert
            .levels
            .iter()
            .filter(|l| l.level >= stab)
            .map(|l| (l.level, l.cycles.iter().map(|c| c.len()).sum()))
            .collect();
        let mut ok = lengths[0].1 % k == 0 && is_power_of(lengths[0].1 / k, p);
        ok &= lengths.windows(2).all(|w| w[1].1 == w[0].1 * p);
        let minimal = cert.levels.iter().filter(|l| l.level >= stab).all(|l| l.single_cycle);
        out.push(ComponentCertificate { component: i, minimal, lengths, odometer_ok: ok });
    }
    Ok(out)
}

fn is_power_of(mut x: usize, p: usize) -> bool {
    if x == 0 {
        return false;
    }
    while x % p == 0 {
        x /= p;
    }
    x == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionCheck {
    pub region: Region,
    pub predicted: u64,
    pub observed: u64,
}

/// Compare the Case I/II region model with brute-force cycles at one level.
pub fn verify_structure(an: &Analysis, level: u32) -> Result<Vec<RegionCheck>> {
    let s = an
        .structure
        .as_ref()
        .ok_or_else(|| Error::Domain("no fixed-point structure for this map".into()))?;
    let bf = brute_force_for(an, level)?;
    let regions = an.resolved_regions(s, &bf.as_level_cycles())?;
    Ok(regions
        .into_iter()
        .map(|(r, cs)| RegionCheck { region: r, predicted: s.predicted(r).unwrap().0, observed: cs.len() as u64 })
        .collect())
}

/// Oracle verdict of an end-to-end verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub map: String,
    pub level: u32,
    pub agree: bool,
    pub lines: Vec<String>,
}

/// Every check that applies to the map at the given level.
pub fn verify_all(an: &Analysis, level: u32) -> Result<VerifyReport> {
    let mut lines = Vec::new();
    let mut agree = true;
    let mut say = |ok: bool, s: String| {
        agree &= ok;
        lines.push(format!("{} {s}", if ok { "ok  " } else { "FAIL" }));
    };
    if let Some(cf) = &an.closed {
        let stab = an.stabilization_level()?;
        for n in [stab, stab + 1, level.max(stab)].into_iter().collect::<BTreeSet<_>>() {
            let bf = brute_force_for(an, n)?;
            let lc = an.level_cycles(n)?;
            say(bf.map == lc.perm, format!("level {n}: exact evaluation agrees with the modular action"));
            say(
                bf.cycles.len() as u64 == cf.count && bf.tail_cells.is_empty(),
                format!("level {n}: {} cycles, closed form {}", bf.cycles.len(), cf.count),
            );
        }
        for c in certify_components(an, level)? {
            say(
                c.minimal && c.odometer_ok,
                format!("component {}: lengths {:?}", c.component, c.lengths.iter().map(|x| x.1).collect::<Vec<_>>()),
            );
        }
        for i in 0..cf.count as usize {
            let r = crate::measure::check_invariance(an, level.max(stab), i)?;
            say(r.pass, format!("component {i}: measure invariant on {} cells", r.rows.len()));
        }
    } else if an.structure.is_some() {
        for n in 1..=level {
            for r in verify_structure(an, n)? {
                say(
                    r.predicted == r.observed,
                    format!("level {n} {:?}: {} components, model {}", r.region, r.observed, r.predicted),
                );
            }
        }
    } else if let (Some(o), None) = (an.profile.finite_order, an.chart()) {
        let mut m = an.map.clone();
        for _ in 1..o {
            m = m.compose(&an.map)?;
        }
        say(m.is_identity(), format!("φ^{o} is the identity"));
    } else if let Some(o) = an.profile.finite_order {
        let bf = brute_force_for(an, level)?;
        let lens: BTreeSet<usize> = bf.cycle_lengths().into_iter().collect();
        say(
            bf.tail_cells.is_empty() && lens.iter().all(|&l| o as usize % l == 0),
            format!("level {level}: cycle lengths {lens:?} divide the order {o}"),
        );
    } else {
        say(attraction_check(an)?, "orbits approach the attracting fixed point".into());
    }
    Ok(VerifyReport { map: an.map.literal(), level, agree, lines })
}

/// Orbits of a few rational starts get p-adically closer to the attractor.
fn attraction_check(an: &Analysis) -> Result<bool> {
    use crate::decomposer::{Case2Sub, CaseTag};
    let phi = &an.map;
    let p = phi.p;
    let (x1, x2) = fixed_points_rational(phi);
    let target = match &an.case {
        CaseTag::CaseII { sub: Case2Sub::AttractX1 } | CaseTag::AffineDelegate { sub: Some(Case2Sub::AttractX1), .. } => x1,
        CaseTag::CaseII { sub: Case2Sub::AttractX2 } | CaseTag::AffineDelegate { sub: Some(Case2Sub::AttractX2), .. } => x2,
        _ => return Ok(true),
    };
    let prec = an.opts.precision;
    let fx = match &target {
        Some(t) => Some(PadicNumber::from_rational(t, p, prec)?),
        None => attractor_padic(an)?,
    };
    for start in [0i64, 1, -1, 2] {
        let x0 = QPoint::int(start);
        let mut x = ProjPoint::from_qpoint(&x0, p, prec)?.without_exact();
        let mut last: Option<i64> = None;
        let mut improved = false;
        for _ in 0..12 {
            x = phi.apply(&x)?;
            let d = match (&x, &fx) {
                (ProjPoint::Infinity, None) => Some(i64::MAX),
                (ProjPoint::Infinity, Some(_)) => None,
                (ProjPoint::Finite(v), None) => v.valuation().map(|w| -w),
                (ProjPoint::Finite(v), Some(f)) => Some(v.sub(f)?.valuation().unwrap_or(i64::MAX)),
            };
            if let (Some(d), Some(l)) = (d, last) {
                if d > l {
                    improved = true;
                }
            }
            last = d.or(last);
        }
        if !improved && last != Some(i64::MAX) {
            let fixed = match (&x0, &fx) {
                (QPoint::Finite(q), Some(f)) => PadicNumber::from_rational(q, p, prec)?.sub(f)?.is_zero(),
                _ => false,
            };
            if !fixed {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Rational fixed points (x₁, x₂) when √Δ is rational; ∞ is reported as None.
fn fixed_points_rational(phi: &HomographicMap) -> (Option<Rational>, Option<Rational>) {
    let c = phi.c();
    if c.is_zero() {
        let xs = (phi.d() != phi.a()).then(|| phi.b() / (phi.d() - phi.a()));
        return (None, xs);
    }
    match rational::rational_sqrt(&phi.delta()) {
        Some(r) => {
            let two_c = rational::int(2) * c;
            (Some((phi.a() - phi.d() + &r) / &two_c), Some((phi.a() - phi.d() - r) / two_c))
        }
        None => (None, None),
    }
}

fn attractor_padic(an: &Analysis) -> Result<Option<PadicNumber>> {
    use crate::decomposer::{Case2Sub, CaseTag};
    let phi = &an.map;
    if phi.c().is_zero() {
        return Ok(None);
    }
    let root = match crate::quad_ext::canonicalize_radicand(&phi.delta(), phi.p, an.opts.precision)? {
        crate::quad_ext::Canonical::Square { root } => root,
        _ => return Err(Error::Domain("√Δ is not in Q_p".into())),
    };
    let root = if an.opts.swap_roots { root.neg() } else { root };
    let root = match an.case {
        CaseTag::CaseII { sub: Case2Sub::AttractX2 } => root.neg(),
        _ => root,
    };
    let prec = an.opts.precision;
    let amd = PadicNumber::from_rational(&(phi.a() - phi.d()), phi.p, prec)?;
    let tc = PadicNumber::from_rational(&(rational::int(2) * phi.c()), phi.p, prec)?;
    Ok(Some(amd.add(&root)?.div(&tc)?))
}

/// Whether a ∈ Q has a square root in Q_p, by exhaustive search on the
/// unit part modulo p³ (p odd) or 2⁵.
pub fn sqrt_exists_oracle(a: &Rational, p: u64) -> bool {
    let Some((v, u)) = rational::split_p(a, p) else { return true };
    if v.rem_euclid(2) != 0 {
        return false;
    }
    let m: u64 = if p == 2 { 32 } else { p * p * p };
    let target = rational::residue_u64(&u, p, if p == 2 { 5 } else { 3 }).unwrap();
    (0..m).any(|x| x % p != 0 && (x * x) % m == target)
}

/// The largest twice-valuation of x − a over a ∈ Q_p, found by descending
/// the tree of p-adic digits of a.
pub fn distance_tree_oracle(x: &ExtElement, max_depth: u32) -> Result<Option<HalfPow>> {
    let r = &x.radicand;
    let p = r.prime;
    let prec = x.precision();
    let Some(tv0) = x.twice_val()? else { return Ok(None) };
    let j0 = tv0.div_euclid(2).min(0);
    let mut a = Rational::zero();
    let mut best = tv0;
    for j in j0..j0 + max_depth as i64 {
        let step = rational::pow_p_rat(p, j);
        let mut next = None;
        for d in 0..p {
            let cand = &a + &step * rational::int(d as i64);
            let diff = x.sub(&ExtElement::from_rationals(r, &cand, &Rational::zero(), prec)?)?;
            let Some(t) = diff.twice_val()? else { return Ok(None) };
            best = best.max(t);
            if t >= 2 * (j + 1) {
                next = Some(cand);
            }
        }
        match next {
            Some(c) => a = c,
            None => return Ok(Some(HalfPow::from_twice_val(best))),
        }
    }
    Err(Error::Precision(format!("digit search did not settle in {max_depth} steps")))
}

/// Count the maximal subdisks of a disk that meet Q_p by testing every one.
pub fn subdisk_oracle(disk: &ExtDisk) -> Result<u64> {
    let step = disk.step();
    let mut n = 0;
    for c in all_subdisk_centers(disk)? {
        let sub = ExtDisk::closed(c, HalfPow { half: disk.radius.half - step });
        if sub.meets_qp()? {
            n += 1;
        }
    }
    Ok(n)
}

/// A p-adic square root checked against a: v_p(r² − a) must reach the precision.
pub fn sqrt_residual_ok(root: &PadicNumber, a: &PadicNumber) -> Result<bool> {
    let diff = root.mul(root)?.sub(a)?;
    Ok(match (diff.valuation(), a.valuation()) {
        (None, _) => true,
        (Some(v), Some(va)) => v >= va + a.precision() as i64 - if a.prime() == 2 { 1 } else { 0 },
        (Some(_), None) => false,
    })
}

/// Label every level-n cell by the brute-force cycle it lies on.
pub fn cycle_labels(bf: &BruteForce) -> Vec<Option<usize>> {
    let mut lab = vec![None; bf.map.len()];
    for (i, c) in bf.cycles.iter().enumerate() {
        for &x in c {
            lab[x as usize] = Some(i);
        }
    }
    lab
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposer::{analyze, Options};

    fn an(a: i64, b: i64, c: i64, d: i64, p: u64) -> Analysis {
        analyze(&HomographicMap::from_ints(a, b, c, d, p).unwrap(), &Options::default()).unwrap()
    }

    #[test]
    fn example_one_orbit() {
        let a = an(0, 1, 1, 1, 3);
        let t = orbit(&a.map, &QPoint::int(0), 36, 64, a.chart(), &[2]).unwrap();
        assert_eq!(t.exact_prefix[..5], ["0", "1", "1/2", "2/3", "3/5"]);
        assert_eq!(t.visited_cells[0].cells.len(), 12);
        let last = t.precision_events.last().unwrap();
        assert!(last.to.unwrap() >= 32);
    }

    #[test]
    fn fixed_start_is_constant() {
        let a = an(2, 0, 1, 1, 3);
        let t = orbit(&a.map, &QPoint::int(0), 5, 32, None, &[]).unwrap();
        assert!(t.exact_prefix.iter().all(|x| x == "0"));
    }

    #[test]
    fn quotient_certificates() {
        let a = an(0, 1, 1, 1, 3);
        let all: Vec<u64> = (0..36).collect();
        let c = verify_minimal_on_quotients(&a.map, a.chart().unwrap(), &all, 3, 1 << 20).unwrap();
        assert!(c.minimal);
        assert_eq!(c.lengths(), [4, 12, 36]);

        let b = an(0, 1, 1, 1, 2);
        let atlas = b.component_atlas(4).unwrap().atlas.unwrap();
        let c = verify_minimal_on_quotients(&b.map, b.chart().unwrap(), &atlas.components[0].cells, 4, 1 << 20).unwrap();
        assert!(c.minimal);
        assert_eq!(c.lengths(), [3, 6, 6, 12]);
        let both: Vec<u64> = atlas.components.iter().flat_map(|c| c.cells.clone()).collect();
        let c = verify_minimal_on_quotients(&b.map, b.chart().unwrap(), &both, 4, 1 << 20).unwrap();
        assert!(!c.minimal);
        assert_eq!(c.levels.last().unwrap().cycles.len(), 2);
    }

    #[test]
    fn brute_force_examples() {
        let a = an(0, 1, 1, 1, 3);
        let bf = brute_force_for(&a, 1).unwrap();
        assert_eq!(bf.cycle_lengths(), [4]);
        let b = an(0, 1, 1, 1, 2);
        assert_eq!(brute_force_for(&b, 3).unwrap().cycles.len(), 2);
        let id = HomographicMap::from_ints(1, 0, 0, 1, 5).unwrap();
        let bf = brute_force_decompose(&id, &Chart::identity(5), 2, 1000).unwrap();
        assert_eq!(bf.cycles.len(), 30);
    }

    #[test]
    fn verify_all_agrees() {
        for (m, p) in [((0, 1, 1, 1), 3), ((0, 1, 1, 1), 2), ((3, -1, 1, 1), 3), ((2, 0, 1, 1), 3), ((4, 0, 1, 1), 3), ((0, -1, 1, 0), 5), ((0, 1, -1, 0), 3)] {
            let a = an(m.0, m.1, m.2, m.3, p);
            let r = verify_all(&a, 3).unwrap();
            assert!(r.agree, "{m:?} p={p}: {:#?}", r.lines);
        }
    }

    #[test]
    fn sqrt_oracle_small() {
        assert!(sqrt_exists_oracle(&Rational::from_integer(2.into()), 7));
        assert!(!sqrt_exists_oracle(&Rational::from_integer(3.into()), 7));
        assert!(sqrt_exists_oracle(&Rational::from_integer((-7).into()), 2));
        assert!(!sqrt_exists_oracle(&Rational::from_integer(5.into()), 2));
        assert!(!sqrt_exists_oracle(&Rational::from_integer(3.into()), 3));
    }
}
