//! Classification of a homography of P¹(Q_p) and its minimal decomposition.

use crate::cells::{cycles_of, is_permutation, CellCoord, CellScheme, Chart, ChartAction, ChartKind};
use crate::error::{Error, Result};
use crate::padic::PadicNumber;
use crate::projective::{Disk, DiskJson, HomographicMap, MapJson, QPoint};
use crate::quad_ext::{canonicalize_radicand, Canonical, CanonicalRadicand};
use crate::quad_field::{rational_squarefree, QuadRational};
use crate::rational::{self, fmt_rational, pow_p_rat, residue_u64, vp, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const DEFAULT_CELL_BUDGET: u64 = 1_000_000;
pub const SUBGROUP_GUARD: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct Options {
    pub precision: u32,
    pub cell_budget: u64,
    /// Use −√Δ in place of √Δ (swaps x₁ and x₂, inverts λ).
    pub swap_roots: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { precision: 64, cell_budget: DEFAULT_CELL_BUDGET, swap_roots: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Case2Sub {
    AttractX1,
    AttractX2,
    FiniteOrder { order: u32 },
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    UnramifiedOdd,
    RamifiedOddGreater,
    RamifiedOddSmaller,
    TwoUnramified,
    TwoSqrtGreater,
    TwoSqrtSmaller,
    TwoOnePlusEqual,
    TwoOnePlusGreater,
    TwoOnePlusSmaller,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "case")]
pub enum CaseTag {
    #[serde(rename = "affine_delegate")]
    AffineDelegate { translation: bool, sub: Option<Case2Sub> },
    #[serde(rename = "case_i")]
    CaseI,
    #[serde(rename = "case_ii")]
    CaseII { sub: Case2Sub },
    #[serde(rename = "case_iii")]
    CaseIII { ext: i64, class: String, unramified: bool, branch: Branch, finite_order: Option<u32> },
}

impl CaseTag {
    pub fn short(&self) -> String {
        match self {
            CaseTag::AffineDelegate { translation: true, .. } => "affine (translation)".into(),
            CaseTag::AffineDelegate { .. } => "affine (multiplication)".into(),
            CaseTag::CaseI => "Case I".into(),
            CaseTag::CaseII { .. } => "Case II".into(),
            CaseTag::CaseIII { ext, unramified, .. } => {
                format!("Case III {} (√{ext})", if *unramified { "unramified" } else { "ramified" })
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaProfile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finite_order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v0: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    /// The valuations the governing formula consumes, keyed by expression.
    pub valuations: BTreeMap<String, i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureTag {
    MuHat,
    MuBar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Odometer {
    pub base: u64,
    pub ratio: u64,
}

impl Odometer {
    pub fn text(&self) -> String {
        let b = self.base;
        let r = self.ratio;
        format!("({},{},{},…)", b, b * r, b * r * r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", untagged)]
pub enum Count {
    Finite(u64),
    Infinite(InfiniteTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfiniteTag {
    InfinitelyMany,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartInfo {
    pub kind: ChartKind,
    pub q: String,
    pub m: i64,
}

impl ChartInfo {
    fn of(c: &Chart) -> Self {
        ChartInfo { kind: c.kind, q: fmt_rational(&c.q), m: c.m }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub count: u64,
    pub base: u64,
    pub formula: String,
}

/// One component of the level-n atlas: its cells in cycle order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasComponent {
    pub cells: Vec<u64>,
    pub disks: Vec<DiskJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atlas {
    pub level: u32,
    pub chart: ChartInfo,
    pub components: Vec<AtlasComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub schema: String,
    pub map: MapJson,
    #[serde(flatten)]
    pub case: CaseTag,
    pub lambda_profile: LambdaProfile,
    pub count: Count,
    pub minimal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odometer: Option<Odometer>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chart: Option<ChartInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilization_level: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atlas: Option<Atlas>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure_tag: Option<MeasureTag>,
    pub notes: Vec<String>,
}

/// A fixed point in chart coordinates.
#[derive(Clone, Debug)]
pub enum FixedCoord {
    Finite(PadicNumber),
    Infinity,
}

/// Cell regions for maps with fixed points in P¹(Q_p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "region")]
pub enum Region {
    /// The cells away from the fixed points.
    Core,
    /// Cells at chart distance p^{-depth} from fixed point `side`.
    Sphere { side: u8, depth: u32 },
    /// The cell holding fixed point `side`.
    FixedCell { side: u8 },
}

#[derive(Clone, Debug)]
pub enum Structure {
    /// One fixed point: Case I (fixed at chart 0) or a translation (fixed at ∞).
    Parabolic { chart: Chart, fixed: QPoint },
    /// Two fixed points in P¹(Q_p) with |λ| = 1, λ of infinite order.
    TwoFixed { chart: Chart, z1: FixedCoord, z2: FixedCoord, lambda: PadicNumber, delta: u64, v0: u32 },
}

impl Structure {
    pub fn chart(&self) -> &Chart {
        match self {
            Structure::Parabolic { chart, .. } | Structure::TwoFixed { chart, .. } => chart,
        }
    }

    /// Components in each sphere (or in the core) of the two-fixed-point structure.
    pub fn per_sphere(&self) -> Option<u64> {
        match self {
            Structure::TwoFixed { chart, delta, v0, .. } => {
                let p = chart.p;
                Some((p - 1) * p.pow(v0 - 1) / delta)
            }
            _ => None,
        }
    }

    pub fn region_of(&self, scheme: &CellScheme, idx: u64) -> Region {
        let p = scheme.p();
        let n = scheme.level;
        let coord = scheme.coord(idx);
        let vcap = |x: u64| -> u32 {
            if x == 0 {
                return n;
            }
            let mut v = 0;
            let mut x = x;
            while x % p == 0 {
                x /= p;
                v += 1;
            }
            v.min(n)
        };
        let near = |side: u8, d: u32| {
            if d >= n {
                Region::FixedCell { side }
            } else {
                Region::Sphere { side, depth: d }
            }
        };
        match self {
            Structure::Parabolic { fixed, .. } => match (coord, fixed) {
                (CellCoord::Inside(a), QPoint::Finite(z0)) => {
                    let md = scheme.modulus();
                    let r = residue_u64(z0, p, n).unwrap();
                    match vcap((a + md - r) % md) {
                        0 => Region::Core,
                        d => near(0, d),
                    }
                }
                (CellCoord::Outside(w), QPoint::Infinity) => near(0, vcap(w)),
                _ => Region::Core,
            },
            Structure::TwoFixed { z1, z2, .. } => {
                let md = scheme.modulus();
                for (side, z) in [(1u8, z1), (2u8, z2)] {
                    match (coord, z) {
                        (CellCoord::Inside(a), FixedCoord::Finite(zv)) => {
                            let r = zv.residue_mod(n).unwrap().to_u64().unwrap();
                            let d = vcap((a + md - r) % md);
                            if d >= 1 {
                                return near(side, d);
                            }
                        }
                        (CellCoord::Outside(w), FixedCoord::Infinity) => return near(side, vcap(w)),
                        _ => {}
                    }
                }
                Region::Core
            }
        }
    }

    /// Predicted number of components in a region and the level from which
    /// level-n cells resolve them; `None` for fixed cells.
    pub fn predicted(&self, region: Region) -> Option<(u64, u32)> {
        match (self, region) {
            (_, Region::FixedCell { .. }) => None,
            (Structure::Parabolic { .. }, Region::Core) => Some((1, 1)),
            (Structure::Parabolic { chart, .. }, Region::Sphere { depth, .. }) => {
                let p = chart.p;
                Some(((p - 1) * p.pow(depth - 1), 2 * depth))
            }
            (Structure::TwoFixed { v0, .. }, Region::Core) => Some((self.per_sphere().unwrap(), *v0)),
            (Structure::TwoFixed { v0, .. }, Region::Sphere { depth, .. }) => {
                Some((self.per_sphere().unwrap(), depth + v0))
            }
        }
    }
}

/// Everything computed about a map.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub map: HomographicMap,
    pub opts: Options,
    pub case: CaseTag,
    pub profile: LambdaProfile,
    pub lambda_quad: Option<QuadRational>,
    pub ext: Option<CanonicalRadicand>,
    pub closed: Option<ClosedForm>,
    pub action: Option<ChartAction>,
    pub structure: Option<Structure>,
    pub notes: Vec<String>,
}

/// Order relation between |a+d|_p and |√Δ|_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceSize {
    Greater,
    Equal,
    Smaller,
}

pub fn trace_vs_sqrt(phi: &HomographicMap) -> TraceSize {
    let tr = phi.a() + phi.d();
    let vd = vp(&phi.delta(), phi.p).expect("Δ ≠ 0");
    match vp(&tr, phi.p) {
        None => TraceSize::Smaller,
        Some(v) => match (2 * v).cmp(&vd) {
            std::cmp::Ordering::Less => TraceSize::Greater,
            std::cmp::Ordering::Equal => TraceSize::Equal,
            std::cmp::Ordering::Greater => TraceSize::Smaller,
        },
    }
}

/// v_π(x) for x in the completion of Q(√D) at p, read off the norm.
fn v_pi_quad(x: &QuadRational, p: u64, e: u32) -> Result<i64> {
    let v = x
        .norm_valuation(p)
        .ok_or_else(|| Error::Domain(format!("{x} vanishes")))?;
    if e == 1 && v % 2 != 0 {
        return Err(Error::Oracle("odd norm valuation in an unramified field".into()));
    }
    Ok(v * e as i64 / 2)
}

fn quad_lambda(phi: &HomographicMap, swap: bool) -> Option<(QuadRational, BigInt)> {
    let delta = phi.delta();
    if delta.is_zero() {
        return None;
    }
    let (d, r) = rational_squarefree(&delta);
    if d.is_one() {
        return None;
    }
    let r = if swap { -r } else { r };
    let tr = phi.a() + phi.d();
    let num = QuadRational::new(d.clone(), tr.clone(), r.clone());
    let den = QuadRational::new(d.clone(), tr, -r);
    Some((num.div(&den).ok()?, d))
}

fn rational_lambda(phi: &HomographicMap, root: &Rational) -> Option<Rational> {
    let tr = phi.a() + phi.d();
    let den = &tr - root;
    (!den.is_zero()).then(|| (&tr + root) / den)
}

fn ell_of(lam: &QuadRational, p: u64, e: u32, limit: u64) -> Result<u64> {
    let one = QuadRational::rational(lam.d(), Rational::one());
    for l in 1..=limit {
        let x = lam.pow(l).sub(&one);
        if x.is_zero() || v_pi_quad(&x, p, e)? > 0 {
            return Ok(l);
        }
    }
    Err(Error::Oracle("λ has no finite residual order".into()))
}

fn pow_int(p: u64, exp_twice: i64, what: &str) -> Result<u64> {
    if exp_twice < 0 || exp_twice % 2 != 0 {
        return Err(Error::Oracle(format!("closed form {what} has non-integral exponent {exp_twice}/2")));
    }
    Ok(p.pow((exp_twice / 2) as u32))
}

fn div_exact(n: u64, d: u64, what: &str) -> Result<u64> {
    if n % d != 0 {
        return Err(Error::Oracle(format!("closed form {what}: {n}/{d} is not an integer")));
    }
    Ok(n / d)
}

/// The Case III closed form, with the valuations it consumes.
fn case3_closed_form(
    lam: &QuadRational,
    p: u64,
    ext: &CanonicalRadicand,
    branch: Branch,
    ell: u64,
    vals: &mut BTreeMap<String, i64>,
) -> Result<ClosedForm> {
    let e = ext.e;
    let one = QuadRational::rational(lam.d(), Rational::one());
    let mut v = |k: u64, plus: bool| -> Result<i64> {
        let x = if plus { lam.pow(k).add(&one) } else { lam.pow(k).sub(&one) };
        let val = v_pi_quad(&x, p, e)?;
        let key = format!("v_pi(lambda^{k}{}1)", if plus { "+" } else { "-" });
        vals.insert(key, val);
        Ok(val)
    };
    let (count, base, formula) = match branch {
        Branch::UnramifiedOdd => {
            let w = v(ell, false)?;
            let c = div_exact((p + 1) * pow_int(p, 2 * (w - 1), "(p+1)p^{v-1}/ℓ")?, ell, "(p+1)p^{v-1}/ℓ")?;
            (c, ell, format!("(p+1)p^(v_p(λ^{ell}−1)−1)/ℓ = {}·{}^{}/{}", p + 1, p, w - 1, ell))
        }
        Branch::RamifiedOddGreater => {
            let w = v(p, false)?;
            (2 * pow_int(p, w - 3, "2p^{(v-3)/2}")?, 1, format!("2p^((v_π(λ^p−1)−3)/2), v = {w}"))
        }
        Branch::RamifiedOddSmaller => {
            let w = v(p, true)?;
            (pow_int(p, w - 3, "p^{(v-3)/2}")?, 2, format!("p^((v_π(λ^p+1)−3)/2), v = {w}"))
        }
        Branch::TwoUnramified => {
            let w = v(2 * ell, false)?;
            let c = div_exact(3 * pow_int(2, 2 * (w - 2), "3·2^{v-2}/ℓ")?, ell, "3·2^{v-2}/ℓ")?;
            (c, ell, format!("3·2^(v_2(λ^{}−1)−2)/ℓ, v = {w}", 2 * ell))
        }
        Branch::TwoSqrtGreater => {
            let w = v(1, false)?;
            (pow_int(2, w - 1, "2^{(v-1)/2}")?, 1, format!("2^((v_π(λ−1)−1)/2), v = {w}"))
        }
        Branch::TwoSqrtSmaller => {
            let w = v(1, true)?;
            (pow_int(2, w - 1, "2^{(v-1)/2}")?, 1, format!("2^((v_π(λ+1)−1)/2), v = {w}"))
        }
        Branch::TwoOnePlusEqual => {
            let w = v(2, true)?;
            (pow_int(2, w - 2, "2^{(v-2)/2}")?, 1, format!("2^((v_π(λ²+1)−2)/2), v = {w}"))
        }
        Branch::TwoOnePlusGreater => {
            let w = v(1, false)?;
            (pow_int(2, w, "2^{v/2}")?, 1, format!("2^(v_π(λ−1)/2), v = {w}"))
        }
        Branch::TwoOnePlusSmaller => {
            let w = v(1, true)?;
            (pow_int(2, w, "2^{v/2}")?, 1, format!("2^(v_π(λ+1)/2), v = {w}"))
        }
    };
    if count == 0 {
        return Err(Error::Oracle(format!("closed form {formula} gives zero")));
    }
    Ok(ClosedForm { count, base, formula })
}

fn branch_for(ext: &CanonicalRadicand, size: TraceSize) -> Result<Branch> {
    use Branch::*;
    let b = match (ext.prime, ext.d, ext.e, size) {
        (2, -3, _, _) => TwoUnramified,
        (2, -1 | 3, _, TraceSize::Equal) => TwoOnePlusEqual,
        (2, -1 | 3, _, TraceSize::Greater) => TwoOnePlusGreater,
        (2, -1 | 3, _, TraceSize::Smaller) => TwoOnePlusSmaller,
        (2, _, _, TraceSize::Greater) => TwoSqrtGreater,
        (2, _, _, TraceSize::Smaller) => TwoSqrtSmaller,
        (_, _, 1, _) => UnramifiedOdd,
        (_, _, _, TraceSize::Greater) => RamifiedOddGreater,
        (_, _, _, TraceSize::Smaller) => RamifiedOddSmaller,
        _ => return Err(Error::Oracle("|a+d| = |√Δ| cannot occur for this radicand".into())),
    };
    Ok(b)
}

/// The chart centred on the projection of x₁ to the tree of Q_p.
pub fn case3_chart(phi: &HomographicMap) -> Chart {
    let p = phi.p;
    let delta = phi.delta();
    let vd = vp(&delta, p).unwrap();
    let mut t = Rational::zero();
    if p == 2 && vd % 2 == 0 {
        let unit = &delta * pow_p_rat(2, -vd);
        let r = residue_u64(&unit, 2, 3).unwrap();
        if r != 1 {
            t = pow_p_rat(2, vd / 2);
        }
    }
    let two_c = rational::int(2) * phi.c();
    let q = (phi.a() - phi.d() + &t) / &two_c;
    let twice = vp(&(&t * &t - &delta), p).unwrap() - 2 * vp(&two_c, p).unwrap();
    if twice.rem_euclid(2) == 0 {
        Chart::new(p, q, twice / 2, ChartKind::Vertex)
    } else {
        Chart::new(p, q, (twice + 1).div_euclid(2), ChartKind::Edge)
    }
}

fn delta_v0(lam: &PadicNumber, p: u64) -> Result<(u64, u32)> {
    let sp = if p == 2 { 2 } else { 1 };
    let one = PadicNumber::from_i64(1, p, lam.precision())?;
    let mut x = lam.clone();
    for n in 1..=p.max(2) {
        let d = x.sub(&one)?;
        match d.valuation() {
            None => return Err(Error::Refusal("λ is a root of unity to working precision".into())),
            Some(v) if v >= sp => return Ok((n, v as u32)),
            _ => {}
        }
        x = x.mul(lam)?;
    }
    Err(Error::Oracle("δ(λ) not found below p".into()))
}

fn padic_text(x: &PadicNumber) -> String {
    match x.exact() {
        Some(q) => fmt_rational(q),
        None => x.to_text(),
    }
}

/// Classify φ and compute everything the reports need.
pub fn analyze(phi: &HomographicMap, opts: &Options) -> Result<Analysis> {
    if phi.is_identity() {
        return Err(Error::Refusal("φ is the identity, so φⁿ = id for every n".into()));
    }
    let p = phi.p;
    let prec = opts.precision;
    let mut an = Analysis {
        map: phi.clone(),
        opts: opts.clone(),
        case: CaseTag::CaseI,
        profile: LambdaProfile::default(),
        lambda_quad: None,
        ext: None,
        closed: None,
        action: None,
        structure: None,
        notes: Vec::new(),
    };
    let (a, b, c, d) = (phi.a().clone(), phi.b().clone(), phi.c().clone(), phi.d().clone());

    if c.is_zero() {
        if a == d {
            let beta = &b / &d;
            let m = vp(&beta, p).unwrap();
            let chart = Chart::new(p, Rational::zero(), m, ChartKind::Vertex);
            an.case = CaseTag::AffineDelegate { translation: true, sub: None };
            an.profile.alpha = Some(fmt_rational(&beta));
            an.action = Some(ChartAction::new(phi, &chart)?);
            an.structure = Some(Structure::Parabolic { chart, fixed: QPoint::Infinity });
            return Ok(an);
        }
        // Fixed points ∞ and xs; λ is the multiplier at xs, inverted by a swap.
        let xs = &b / (&d - &a);
        let (lam, x1, x2) = if opts.swap_roots {
            (&d / &a, QPoint::Finite(xs.clone()), QPoint::Infinity)
        } else {
            (&a / &d, QPoint::Infinity, QPoint::Finite(xs.clone()))
        };
        an.profile.lambda = Some(fmt_rational(&lam));
        an.profile.x1 = Some(x1.to_string());
        an.profile.x2 = Some(x2.to_string());
        let sub = case2_sub_rational(&lam, p);
        an.case = CaseTag::AffineDelegate { translation: false, sub: Some(sub) };
        if sub == Case2Sub::Generic {
            let lp = PadicNumber::from_rational(&lam, p, prec)?;
            let (delta, v0) = delta_v0(&lp, p)?;
            an.profile.delta = Some(delta);
            an.profile.v0 = Some(v0);
            let chart = Chart::new(p, xs.clone(), 0, ChartKind::Vertex);
            let coord = |x: &QPoint| -> Result<FixedCoord> {
                Ok(match chart.to_chart(x) {
                    QPoint::Finite(z) => FixedCoord::Finite(PadicNumber::from_rational(&z, p, prec)?),
                    QPoint::Infinity => FixedCoord::Infinity,
                })
            };
            let (z1, z2) = (coord(&x1)?, coord(&x2)?);
            an.action = Some(ChartAction::new(phi, &chart)?);
            an.structure = Some(Structure::TwoFixed { chart, z1, z2, lambda: lp, delta, v0 });
        }
        if let Case2Sub::FiniteOrder { order } = sub {
            an.profile.finite_order = Some(order);
        }
        return Ok(an);
    }

    let delta = phi.delta();
    let two_c = rational::int(2) * &c;
    if delta.is_zero() {
        let x0 = (&a - &d) / &two_c;
        let alpha = &two_c / (&a + &d);
        let m = -vp(&alpha, p).unwrap();
        let chart = Chart::new(p, x0.clone(), m, ChartKind::Vertex);
        an.case = CaseTag::CaseI;
        an.profile.x0 = Some(fmt_rational(&x0));
        an.profile.alpha = Some(fmt_rational(&alpha));
        an.profile.valuations.insert("v_p(alpha)".into(), vp(&alpha, p).unwrap());
        an.action = Some(ChartAction::new(phi, &chart)?);
        let fixed = chart.to_chart(&QPoint::Finite(x0));
        an.structure = Some(Structure::Parabolic { chart, fixed });
        return Ok(an);
    }

    let quad = quad_lambda(phi, opts.swap_roots);
    match canonicalize_radicand(&delta, p, prec)? {
        Canonical::Square { root } => {
            let root = if opts.swap_roots { root.neg() } else { root };
            let ep = |q: &Rational| PadicNumber::from_rational(q, p, prec);
            let amd = ep(&(&a - &d))?;
            let tc = ep(&two_c)?;
            let x1 = amd.add(&root)?.div(&tc)?;
            let x2 = amd.sub(&root)?.div(&tc)?;
            let tr = ep(&(&a + &d))?;
            let lam = tr.add(&root)?.div(&tr.sub(&root)?)?;
            an.profile.x1 = Some(padic_text(&x1));
            an.profile.x2 = Some(padic_text(&x2));
            an.profile.lambda = Some(match &quad {
                Some((q, _)) => q.to_string(),
                None => padic_text(&lam),
            });
            let order = match &quad {
                Some((q, _)) => q.root_of_unity_order(),
                None => {
                    let r = rational::rational_sqrt(&delta).unwrap();
                    let r = if opts.swap_roots { -r } else { r };
                    let l = rational_lambda(phi, &r).unwrap();
                    rational_order(&l)
                }
            };
            an.lambda_quad = quad.map(|q| q.0);
            let vl = lam.valuation().unwrap();
            let sub = if let Some(o) = order {
                Case2Sub::FiniteOrder { order: o }
            } else if vl > 0 {
                Case2Sub::AttractX2
            } else if vl < 0 {
                Case2Sub::AttractX1
            } else {
                Case2Sub::Generic
            };
            an.case = CaseTag::CaseII { sub };
            an.profile.finite_order = order;
            if sub == Case2Sub::Generic {
                let (dl, v0) = delta_v0(&lam, p)?;
                an.profile.delta = Some(dl);
                an.profile.v0 = Some(v0);
                let m = x1.sub(&x2)?.valuation().unwrap();
                let q = x1.to_rational_approx();
                let chart = Chart::new(p, q, m, ChartKind::Vertex);
                let sc = ep(&pow_p_rat(p, -m))?;
                let qc = ep(&chart.q)?;
                let z1 = x1.sub(&qc)?.mul(&sc)?;
                let z2 = x2.sub(&qc)?.mul(&sc)?;
                an.action = Some(ChartAction::new(phi, &chart)?);
                an.structure = Some(Structure::TwoFixed {
                    chart,
                    z1: FixedCoord::Finite(z1),
                    z2: FixedCoord::Finite(z2),
                    lambda: lam,
                    delta: dl,
                    v0,
                });
            }
            Ok(an)
        }
        Canonical::Extension { radicand, .. } => {
            let (lam, _) = quad.ok_or_else(|| Error::Oracle("Δ is a rational square yet not a p-adic one".into()))?;
            let size = trace_vs_sqrt(phi);
            let branch = branch_for(&radicand, size)?;
            let order = lam.root_of_unity_order();
            an.profile.lambda = Some(lam.to_string());
            an.profile.finite_order = order;
            let e = radicand.e;
            let limit = if e == 1 { p * p } else { p };
            let ell = ell_of(&lam, p, e, limit)?;
            an.profile.ell = Some(ell);
            an.case = CaseTag::CaseIII {
                ext: radicand.d,
                class: radicand.label(),
                unramified: e == 1,
                branch,
                finite_order: order,
            };
            let chart = case3_chart(phi);
            if (chart.kind == ChartKind::Edge) != (radicand.e == 2) {
                return Err(Error::Oracle(format!(
                    "chart parity: {:?} chart for a field with e = {}",
                    chart.kind, radicand.e
                )));
            }
            an.action = Some(ChartAction::new(phi, &chart).map_err(|err| {
                Error::Oracle(format!("Case III map does not stabilize its chart: {err}"))
            })?);
            if order.is_none() {
                let mut vals = BTreeMap::new();
                an.closed = Some(case3_closed_form(&lam, p, &radicand, branch, ell, &mut vals)?);
                an.profile.valuations = vals;
            }
            an.ext = Some(radicand);
            an.lambda_quad = Some(lam);
            Ok(an)
        }
    }
}

fn rational_order(l: &Rational) -> Option<u32> {
    if l.is_one() {
        Some(1)
    } else if (-l).is_one() {
        Some(2)
    } else {
        None
    }
}

fn case2_sub_rational(lam: &Rational, p: u64) -> Case2Sub {
    if let Some(o) = rational_order(lam) {
        return Case2Sub::FiniteOrder { order: o };
    }
    match vp(lam, p).unwrap().signum() {
        1 => Case2Sub::AttractX2,
        -1 => Case2Sub::AttractX1,
        _ => Case2Sub::Generic,
    }
}

/// Cycles of the induced permutation on the chart's level-n cells.
#[derive(Clone, Debug)]
pub struct LevelCycles {
    pub scheme: CellScheme,
    pub perm: Vec<u64>,
    pub cycles: Vec<Vec<u64>>,
}

impl LevelCycles {
    /// Cycle index of every cell.
    pub fn labels(&self) -> Vec<usize> {
        let mut lab = vec![usize::MAX; self.perm.len()];
        for (i, c) in self.cycles.iter().enumerate() {
            for &x in c {
                lab[x as usize] = i;
            }
        }
        lab
    }
}

impl Analysis {
    pub fn chart(&self) -> Option<&Chart> {
        self.action.as_ref().map(|a| &a.chart)
    }

    pub fn is_case3(&self) -> bool {
        matches!(self.case, CaseTag::CaseIII { .. })
    }

    pub fn measure_tag(&self) -> Option<MeasureTag> {
        self.chart().map(|c| match c.kind {
            ChartKind::Vertex => MeasureTag::MuHat,
            ChartKind::Edge => MeasureTag::MuBar,
        })
    }

    pub fn scheme(&self, level: u32) -> Result<CellScheme> {
        let chart = self.chart().ok_or_else(|| Error::Domain("no invariant cell complex for this map".into()))?;
        let s = CellScheme::new(chart.clone(), level)?;
        if s.count() > self.opts.cell_budget {
            return Err(Error::Budget(format!(
                "{} cells at level {level} exceed the cell budget {}",
                s.count(),
                self.opts.cell_budget
            )));
        }
        Ok(s)
    }

    /// Cycles at one level, rotated to start at their least cell and sorted.
    pub fn level_cycles(&self, level: u32) -> Result<LevelCycles> {
        let scheme = self.scheme(level)?;
        let perm = self.action.as_ref().unwrap().permutation(&scheme);
        if !is_permutation(&perm) {
            return Err(Error::Oracle(format!("induced cell map at level {level} is not a permutation")));
        }
        let mut cycles: Vec<Vec<u64>> = cycles_of(&perm)
            .into_iter()
            .map(|c| {
                let k = c.iter().enumerate().min_by_key(|(_, &v)| v).unwrap().0;
                c[k..].iter().chain(c[..k].iter()).copied().collect()
            })
            .collect();
        cycles.sort_by_key(|c| c[0]);
        Ok(LevelCycles { scheme, perm, cycles })
    }

    /// Least level whose cycle count reaches the closed form.
    pub fn stabilization_level(&self) -> Result<u32> {
        let cf = self.closed.as_ref().ok_or_else(|| {
            Error::Domain("stabilization is defined for Case III maps with λ of infinite order".into())
        })?;
        for n in 1.. {
            let lc = self.level_cycles(n)?;
            let k = lc.cycles.len() as u64;
            if k > cf.count {
                return Err(Error::Oracle(format!(
                    "level {n} has {k} cycles, more than the closed form {} ({})",
                    cf.count, cf.formula
                )));
            }
            if k == cf.count {
                return Ok(n);
            }
        }
        unreachable!()
    }

    pub fn odometer(&self) -> Option<Odometer> {
        let p = self.map.p;
        match (&self.case, &self.closed) {
            (CaseTag::CaseIII { .. }, Some(cf)) => Some(Odometer { base: cf.base, ratio: p }),
            (CaseTag::CaseII { sub: Case2Sub::Generic }, _)
            | (CaseTag::AffineDelegate { sub: Some(Case2Sub::Generic), .. }, _) => {
                Some(Odometer { base: self.profile.delta.unwrap(), ratio: p })
            }
            (CaseTag::CaseI, _) | (CaseTag::AffineDelegate { translation: true, .. }, _) => {
                Some(Odometer { base: 1, ratio: p })
            }
            _ => None,
        }
    }

    pub fn count(&self) -> Count {
        match &self.closed {
            Some(cf) => Count::Finite(cf.count),
            None => Count::Infinite(InfiniteTag::InfinitelyMany),
        }
    }

    /// The report without an atlas.
    pub fn report(&self) -> DecompositionReport {
        let mut notes = self.notes.clone();
        match &self.case {
            CaseTag::CaseIII { finite_order: Some(o), .. } => {
                notes.push(format!("λ has order {o}: every point is periodic with period {o}"));
            }
            CaseTag::CaseII { sub } | CaseTag::AffineDelegate { sub: Some(sub), .. } => match sub {
                Case2Sub::AttractX1 => notes.push("x₁ is attracting: φⁿ(x) → x₁ for every x ≠ x₂".into()),
                Case2Sub::AttractX2 => notes.push("x₂ is attracting: φⁿ(x) → x₂ for every x ≠ x₁".into()),
                Case2Sub::FiniteOrder { order } => {
                    notes.push(format!("λ has order {order}: every non-fixed point has period {order}"))
                }
                Case2Sub::Generic => notes.push(format!(
                    "each sphere around a fixed point splits into {} components",
                    self.structure.as_ref().and_then(|s| s.per_sphere()).unwrap_or(0)
                )),
            },
            CaseTag::CaseI => notes.push(format!(
                "P¹∖D̄(x₀, p^-1|α|^-1) is one component; the sphere at depth s holds (p−1)p^(s−1) disks"
            )),
            _ => {}
        }
        if matches!(self.case, CaseTag::CaseI | CaseTag::CaseII { .. } | CaseTag::AffineDelegate { .. }) {
            notes.push("invariant measure on components: μ̂ transported through the chart".into());
        }
        DecompositionReport {
            schema: "homodyn.report.v1".into(),
            map: self.map.to_json(),
            case: self.case.clone(),
            lambda_profile: self.profile.clone(),
            count: self.count(),
            minimal: self.closed.as_ref().map(|c| c.count == 1).unwrap_or(false),
            odometer: self.odometer(),
            formula: self.closed.as_ref().map(|c| c.formula.clone()),
            chart: self.chart().map(ChartInfo::of),
            stabilization_level: None,
            atlas: None,
            measure_tag: self.measure_tag(),
            notes,
        }
    }

    /// Count and odometer; for Case III maps also the stabilization level.
    pub fn minimal_count(&self) -> Result<DecompositionReport> {
        let mut r = self.report();
        if self.closed.is_some() {
            r.stabilization_level = Some(self.stabilization_level()?);
        }
        Ok(r)
    }

    /// The level-n partition of P¹(Q_p) into components. For maps with
    /// fixed points only the regions resolved at this level are listed.
    pub fn component_atlas(&self, level: u32) -> Result<DecompositionReport> {
        if let Some(o) = self.profile.finite_order {
            return Err(Error::Domain(format!(
                "periodic case: no minimal decomposition atlas (every point has period {o})"
            )));
        }
        let mut r = self.report();
        if let Some(s) = &self.structure {
            let lc = self.level_cycles(level)?;
            let regions = self.resolved_regions(s, &lc)?;
            let components = regions
                .into_iter()
                .flat_map(|(_, cs)| cs)
                .map(|c| AtlasComponent {
                    disks: c.iter().map(|&i| lc.scheme.disk(i).to_json()).collect(),
                    cells: c,
                })
                .collect();
            r.notes.push(format!(
                "partial atlas: cells within p^-{level} of a fixed point and unresolved spheres are omitted"
            ));
            r.atlas = Some(Atlas { level, chart: ChartInfo::of(&lc.scheme.chart), components });
            return Ok(r);
        }
        if !self.is_case3() {
            return Err(Error::Domain("no minimal components: orbits are attracted to a fixed point".into()));
        }
        let stab = self.stabilization_level()?;
        if level < stab {
            return Err(Error::InsufficientLevel { requested: level, required: stab });
        }
        let lc = self.level_cycles(level)?;
        let components = lc
            .cycles
            .iter()
            .map(|c| AtlasComponent {
                cells: c.clone(),
                disks: c.iter().map(|&i| lc.scheme.disk(i).to_json()).collect(),
            })
            .collect();
        r.stabilization_level = Some(stab);
        r.atlas = Some(Atlas { level, chart: ChartInfo::of(&lc.scheme.chart), components });
        Ok(r)
    }

    /// Level-n cycles grouped by region, keeping the regions whose
    /// components the level resolves; their counts must match the model.
    pub fn resolved_regions(&self, s: &Structure, lc: &LevelCycles) -> Result<Vec<(Region, Vec<Vec<u64>>)>> {
        let mut by: BTreeMap<Region, Vec<Vec<u64>>> = BTreeMap::new();
        for c in &lc.cycles {
            let r = s.region_of(&lc.scheme, c[0]);
            if c.iter().any(|&i| s.region_of(&lc.scheme, i) != r) {
                return Err(Error::Oracle(format!("a level-{} cycle crosses regions", lc.scheme.level)));
            }
            by.entry(r).or_default().push(c.clone());
        }
        let mut out = Vec::new();
        for (r, cs) in by {
            let Some((count, at)) = s.predicted(r) else { continue };
            if lc.scheme.level < at {
                if cs.len() as u64 > count {
                    return Err(Error::Oracle(format!("{r:?}: {} cycles exceed the {count} components", cs.len())));
                }
                continue;
            }
            if cs.len() as u64 != count {
                return Err(Error::Oracle(format!(
                    "{r:?} at level {}: {} cycles, model predicts {count}",
                    lc.scheme.level,
                    cs.len()
                )));
            }
            out.push((r, cs));
        }
        Ok(out)
    }

    /// Whether x and y lie in one minimal component, judged at level n.
    pub fn same_component(&self, x: &QPoint, y: &QPoint, level: u32) -> Result<SameComponent> {
        if x == y {
            return Ok(SameComponent { same: true, certified: true, level });
        }
        match (&self.case, &self.structure) {
            (CaseTag::CaseIII { finite_order: None, .. }, _) => {
                let stab = self.stabilization_level()?;
                let lc = self.level_cycles(level)?;
                let lab = lc.labels();
                let same = lab[lc.scheme.locate(x) as usize] == lab[lc.scheme.locate(y) as usize];
                Ok(SameComponent { same, certified: level >= stab || !same, level })
            }
            (_, Some(s @ Structure::TwoFixed { .. })) => {
                Ok(SameComponent { same: self.two_fixed_criterion(s, x, y)?, certified: true, level })
            }
            (_, Some(Structure::Parabolic { chart, fixed })) => {
                Ok(SameComponent { same: parabolic_criterion(chart, fixed, x, y), certified: true, level })
            }
            _ => Err(Error::Domain("no minimal decomposition: orbits are periodic or attracted".into())),
        }
    }

    fn two_fixed_criterion(&self, s: &Structure, x: &QPoint, y: &QPoint) -> Result<bool> {
        let Structure::TwoFixed { chart, z1, z2, lambda, v0, .. } = s else { unreachable!() };
        let p = chart.p;
        let prec = self.opts.precision;
        // y = g(x) in chart coordinates: (z − z₂)/(z − z₁), with 1 at z = ∞.
        let g = |pt: &QPoint| -> Result<Option<PadicNumber>> {
            let z = chart.to_chart(pt);
            let one = PadicNumber::from_i64(1, p, prec)?;
            let (num, den) = match (&z, z1, z2) {
                (QPoint::Infinity, FixedCoord::Infinity, _) => return Ok(None),
                (QPoint::Infinity, _, _) => (one.clone(), one),
                (QPoint::Finite(zv), _, _) => {
                    let zp = PadicNumber::from_rational(zv, p, prec)?;
                    let num = match z2 {
                        FixedCoord::Finite(w) => zp.sub(w)?,
                        FixedCoord::Infinity => one.clone(),
                    };
                    let den = match z1 {
                        FixedCoord::Finite(w) => zp.sub(w)?,
                        FixedCoord::Infinity => one,
                    };
                    (num, den)
                }
            };
            if num.is_zero() || den.is_zero() {
                return Ok(None);
            }
            Ok(Some(num.div(&den)?))
        };
        let (gx, gy) = match (g(x)?, g(y)?) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(false),
        };
        if gx.valuation() != gy.valuation() {
            return Ok(false);
        }
        let ratio = gx.div(&gy)?;
        let r = ratio.residue_mod(*v0)?.to_u64().unwrap();
        let l = lambda.residue_mod(*v0)?.to_u64().unwrap();
        let md = p.pow(*v0);
        let bound = (p - 1) * p.pow(v0 - 1);
        if bound > SUBGROUP_GUARD {
            return Err(Error::Budget(format!("⟨λ⟩ mod p^{v0} may hold {bound} elements")));
        }
        let mut z = 1 % md;
        loop {
            if z == r % md {
                return Ok(true);
            }
            z = ((z as u128 * l as u128) % md as u128) as u64;
            if z == 1 % md {
                return Ok(false);
            }
        }
    }
}

fn parabolic_criterion(chart: &Chart, fixed: &QPoint, x: &QPoint, y: &QPoint) -> bool {
    let p = chart.p;
    // Coordinates in which φ is a translation by a unit.
    let w = |pt: &QPoint| -> Option<Rational> {
        match (chart.to_chart(pt), fixed) {
            (QPoint::Infinity, QPoint::Infinity) => None,
            (QPoint::Infinity, _) => Some(Rational::zero()),
            (QPoint::Finite(z), QPoint::Infinity) => Some(z),
            (QPoint::Finite(z), QPoint::Finite(z0)) => (&z != z0).then(|| Rational::one() / (z - z0)),
        }
    };
    match (w(x), w(y)) {
        (Some(a), Some(b)) => vp(&(a - b), p).map(|v| v >= 0).unwrap_or(true),
        (None, None) => true,
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SameComponent {
    pub same: bool,
    /// False when the level is below stabilization and the cells merge
    /// several components.
    pub certified: bool,
    pub level: u32,
}

/// Case I report: the complement component and sphere counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereReport {
    /// The sphere is S(x₀, p^m) (Case I) or sits at chart depth `depth`.
    pub m: i64,
    pub depth: u32,
    pub count: u64,
    /// Components are disks of radius p^radius_exp.
    pub radius_exp: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case1Report {
    pub x0: String,
    pub alpha: String,
    pub v_alpha: i64,
    pub complement_component: DiskJson,
    pub spheres: Vec<SphereReport>,
}

pub fn case1_structure(an: &Analysis, depths: u32) -> Result<Case1Report> {
    if an.case != CaseTag::CaseI {
        return Err(Error::Domain("not a Case I map".into()));
    }
    let phi = &an.map;
    let p = phi.p;
    let x0 = (phi.a() - phi.d()) / (rational::int(2) * phi.c());
    let alpha = rational::int(2) * phi.c() / (phi.a() + phi.d());
    let va = vp(&alpha, p).unwrap();
    let comp = Disk::complement(p, x0.clone(), va - 1);
    let spheres = (1..=depths)
        .map(|s| SphereReport {
            m: va - s as i64,
            depth: s,
            count: (p - 1) * p.pow(s - 1),
            radius_exp: 2 * (va - s as i64) - va,
        })
        .collect();
    Ok(Case1Report {
        x0: fmt_rational(&x0),
        alpha: fmt_rational(&alpha),
        v_alpha: va,
        complement_component: comp.to_json(),
        spheres,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case2Report {
    pub sub: Case2Sub,
    pub x1: String,
    pub x2: String,
    pub lambda: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v0: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_sphere: Option<u64>,
    pub description: String,
}

pub fn case2_structure(an: &Analysis) -> Result<Case2Report> {
    let sub = match &an.case {
        CaseTag::CaseII { sub } => *sub,
        CaseTag::AffineDelegate { sub: Some(sub), .. } => *sub,
        _ => return Err(Error::Domain("not a Case II map".into())),
    };
    let per = an.structure.as_ref().and_then(|s| s.per_sphere());
    let description = match sub {
        Case2Sub::AttractX1 => "x₁ attracting: every x ≠ x₂ converges to x₁".to_string(),
        Case2Sub::AttractX2 => "x₂ attracting: every x ≠ x₁ converges to x₂".to_string(),
        Case2Sub::FiniteOrder { order } => format!("every non-fixed point is {order}-periodic"),
        Case2Sub::Generic => format!(
            "each sphere |g(x)| = p^k splits into (p−1)p^(v₀−1)/δ = {} minimal components",
            per.unwrap()
        ),
    };
    Ok(Case2Report {
        sub,
        x1: an.profile.x1.clone().unwrap_or_default(),
        x2: an.profile.x2.clone().unwrap_or_default(),
        lambda: an.profile.lambda.clone().unwrap_or_default(),
        delta: an.profile.delta,
        v0: an.profile.v0,
        per_sphere: per,
        description,
    })
}

/// Classify a map with default options.
pub fn classify(phi: &HomographicMap) -> Result<(CaseTag, LambdaProfile)> {
    let an = analyze(phi, &Options::default())?;
    Ok((an.case, an.profile))
}

/// Whether the map's Δ is positive; used by fixture filters.
pub fn delta_sign(phi: &HomographicMap) -> i32 {
    let d = phi.delta();
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(a: i64, b: i64, c: i64, d: i64, p: u64) -> HomographicMap {
        HomographicMap::from_ints(a, b, c, d, p).unwrap()
    }

    #[test]
    fn example_one() {
        let an = analyze(&map(0, 1, 1, 1, 3), &Options::default()).unwrap();
        assert!(matches!(an.case, CaseTag::CaseIII { ext: 2, unramified: true, branch: Branch::UnramifiedOdd, .. }));
        assert_eq!(an.profile.ell, Some(4));
        assert_eq!(an.profile.valuations["v_pi(lambda^4-1)"], 1);
        let cf = an.closed.clone().unwrap();
        assert_eq!((cf.count, cf.base), (1, 4));
        assert_eq!(an.stabilization_level().unwrap(), 1);
    }

    #[test]
    fn example_two() {
        let an = analyze(&map(0, 1, 1, 1, 2), &Options::default()).unwrap();
        assert!(matches!(an.case, CaseTag::CaseIII { ext: -3, branch: Branch::TwoUnramified, .. }));
        assert_eq!(an.profile.ell, Some(3));
        assert_eq!(an.profile.valuations["v_pi(lambda^6-1)"], 3);
        assert_eq!(an.closed.as_ref().unwrap().count, 2);
        let r = an.component_atlas(3).unwrap();
        assert_eq!(r.atlas.unwrap().components.len(), 2);
        let s = an.same_component(&QPoint::int(0), &QPoint::int(1), 3).unwrap();
        assert!(s.same && s.certified);
        assert!(!an.same_component(&QPoint::int(0), &QPoint::int(2), 3).unwrap().same);
    }

    #[test]
    fn case_one_and_two_examples() {
        let an = analyze(&map(3, -1, 1, 1, 3), &Options::default()).unwrap();
        assert_eq!(an.case, CaseTag::CaseI);
        assert_eq!(an.profile.x0.as_deref(), Some("1"));
        assert_eq!(an.profile.alpha.as_deref(), Some("1/2"));
        let an = analyze(&map(2, 0, 1, 1, 3), &Options::default()).unwrap();
        assert_eq!(an.case, CaseTag::CaseII { sub: Case2Sub::Generic });
        assert_eq!((an.profile.delta, an.profile.v0), (Some(2), Some(1)));
        assert_eq!(an.structure.as_ref().unwrap().per_sphere(), Some(1));
    }

    #[test]
    fn identity_refused() {
        let err = analyze(&map(1, 0, 0, 1, 3), &Options::default()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn region_models_match_cycles() {
        let maps = [
            (3, -1, 1, 1, 3),
            (1, 1, 0, 1, 3),
            (1, 3, 0, 1, 2),
            (2, 0, 0, 1, 5),
            (4, 1, 0, 1, 5),
            (2, 0, 1, 1, 3),
            (7, 2, 3, 1, 5),
            (1, -1, 4, 5, 2),
            (5, 2, 1, 3, 7),
        ];
        for (a, b, c, d, p) in maps {
            let an = analyze(&map(a, b, c, d, p), &Options::default()).unwrap();
            if an.structure.is_none() {
                continue;
            }
            for n in 1..=5 {
                if let Err(e) = an.component_atlas(n) {
                    assert!(matches!(e, Error::Budget(_)), "{a},{b},{c},{d} p={p} n={n}: {e}");
                }
            }
        }
    }
}
