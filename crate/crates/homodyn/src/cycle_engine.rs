//! Finite-quotient dynamics on O_K/πⁿ for affine maps F(x) = αx + β.
//!
//! Elements are written x + yθ on the integral basis {1, θ}, θ² = tθ + s,
//! with θ a uniformizer when K is ramified. A coset of πⁿ is stored by its
//! canonical digits: x mod pⁿ, y mod pⁿ when K is unramified, and
//! x mod p^⌈n/2⌉, y mod p^⌊n/2⌋ when K is ramified.

use crate::cells::cycles_of;
use crate::error::{Error, Result};
use crate::padic::PadicNumber;
use crate::quad_ext::{CanonicalRadicand, ExtElement};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 20;
const EXACT_DIGITS: u32 = 48;

/// The ring of integers of Q_p or of a quadratic extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OkRing {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub t: i64,
    pub s: i64,
    pub label: String,
}

/// A coset representative x + yθ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Qe {
    pub x: u64,
    pub y: u64,
}

impl Qe {
    pub const ZERO: Qe = Qe { x: 0, y: 0 };
    pub const ONE: Qe = Qe { x: 1, y: 0 };

    pub fn new(x: u64, y: u64) -> Self {
        Qe { x, y }
    }
}

fn pow_u64(p: u64, k: u32) -> Result<u64> {
    p.checked_pow(k)
        .filter(|&m| m < (1u64 << 62))
        .ok_or_else(|| Error::Budget(format!("{p}^{k} exceeds machine arithmetic")))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn vp_u64(x: u64, p: u64, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut v = 0;
    let mut x = x;
    while x % p == 0 && v < cap {
        x /= p;
        v += 1;
    }
    v
}

fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

/// Arithmetic on pairs modulo a fixed power of p.
#[derive(Clone, Copy, Debug)]
struct Arith {
    m: u64,
    t: u64,
    s: u64,
}

impl Arith {
    fn new(ring: &OkRing, m: u64) -> Self {
        let r = |v: i64| v.rem_euclid(m as i64) as u64;
        Arith { m, t: r(ring.t), s: r(ring.s) }
    }

    fn add(&self, a: Qe, b: Qe) -> Qe {
        Qe { x: (a.x % self.m + b.x % self.m) % self.m, y: (a.y % self.m + b.y % self.m) % self.m }
    }

    fn sub(&self, a: Qe, b: Qe) -> Qe {
        let m = self.m;
        Qe { x: (a.x % m + m - b.x % m) % m, y: (a.y % m + m - b.y % m) % m }
    }

    fn mul(&self, a: Qe, b: Qe) -> Qe {
        let m = self.m;
        let yy = mul_mod(a.y, b.y, m);
        Qe {
            x: (mul_mod(a.x, b.x, m) + mul_mod(self.s, yy, m)) % m,
            y: (mul_mod(a.x, b.y, m) + mul_mod(a.y, b.x, m) + mul_mod(self.t, yy, m)) % m,
        }
    }

    fn pow(&self, a: Qe, mut e: u64) -> Qe {
        let mut base = a;
        let mut acc = Qe { x: 1 % self.m, y: 0 };
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl OkRing {
    pub fn base(p: u64) -> Self {
        OkRing { p, e: 1, f: 1, t: 0, s: 0, label: format!("Q_{p}") }
    }

    pub fn from_radicand(r: &CanonicalRadicand) -> Self {
        let (t, s) = r.basis();
        OkRing { p: r.prime, e: r.e, f: r.f, t, s, label: r.to_string() }
    }

    pub fn is_base(&self) -> bool {
        self.e == 1 && self.f == 1
    }

    /// Digit moduli (for x, for y) at level n.
    pub fn moduli(&self, n: u32) -> Result<(u64, u64)> {
        let p = self.p;
        Ok(match (self.e, self.f) {
            (1, 1) => (pow_u64(p, n)?, 1),
            (1, _) => (pow_u64(p, n)?, pow_u64(p, n)?),
            _ => (pow_u64(p, n.div_ceil(2))?, pow_u64(p, n / 2)?),
        })
    }

    /// |O_K/πⁿ| = p^{f n}.
    pub fn size(&self, n: u32) -> Result<u64> {
        let (a, b) = self.moduli(n)?;
        a.checked_mul(b).ok_or_else(|| Error::Budget("quotient too large".into()))
    }

    fn arith(&self, n: u32) -> Result<Arith> {
        let (mx, _) = self.moduli(n)?;
        Ok(Arith::new(self, mx))
    }

    pub fn canon(&self, z: Qe, n: u32) -> Result<Qe> {
        let (mx, my) = self.moduli(n)?;
        Ok(Qe { x: z.x % mx, y: z.y % my })
    }

    pub fn index(&self, z: Qe, n: u32) -> Result<u64> {
        let (mx, _) = self.moduli(n)?;
        Ok(z.y * mx + z.x)
    }

    pub fn element(&self, idx: u64, n: u32) -> Result<Qe> {
        let (mx, _) = self.moduli(n)?;
        Ok(Qe { x: idx % mx, y: idx / mx })
    }

    /// v_π of a representative known modulo πⁿ, capped at n.
    pub fn v_pi(&self, z: Qe, n: u32) -> u32 {
        let p = self.p;
        let v = match (self.e, self.f) {
            (1, 1) => vp_u64(z.x, p, n),
            (1, _) => vp_u64(z.x, p, n).min(vp_u64(z.y, p, n)),
            _ => (2 * vp_u64(z.x, p, n)).min(2 * vp_u64(z.y, p, n) + 1),
        };
        v.min(n)
    }

    pub fn is_unit(&self, z: Qe) -> bool {
        self.v_pi(z, 1) == 0
    }

    /// Reduction mod π, as a canonical level-1 representative.
    pub fn residue(&self, z: Qe) -> Qe {
        self.canon(z, 1).expect("level 1 fits")
    }

    pub fn residue_field(&self) -> Vec<Qe> {
        let n = self.size(1).unwrap();
        (0..n).map(|i| self.element(i, 1).unwrap()).collect()
    }

    /// Multiplicative order of a nonzero residue.
    pub fn residue_order(&self, a: Qe) -> Result<u64> {
        let a = self.residue(a);
        if a == Qe::ZERO {
            return Err(Error::Domain("zero has no multiplicative order".into()));
        }
        let ar = self.arith(1)?;
        let mut x = a;
        let mut k = 1;
        while self.residue(x) != Qe::ONE {
            x = ar.mul(x, a);
            k += 1;
        }
        Ok(k)
    }

    pub fn add(&self, a: Qe, b: Qe, n: u32) -> Result<Qe> {
        self.canon(self.arith(n)?.add(a, b), n)
    }

    pub fn sub(&self, a: Qe, b: Qe, n: u32) -> Result<Qe> {
        self.canon(self.arith(n)?.sub(a, b), n)
    }

    pub fn mul(&self, a: Qe, b: Qe, n: u32) -> Result<Qe> {
        self.canon(self.arith(n)?.mul(a, b), n)
    }

    pub fn pow(&self, a: Qe, e: u64, n: u32) -> Result<Qe> {
        self.canon(self.arith(n)?.pow(a, e), n)
    }

    /// πᵏ modulo π^n.
    pub fn pi_pow(&self, k: u32, n: u32) -> Result<Qe> {
        let pi = if self.e == 1 { Qe::new(self.p, 0) } else { Qe::new(0, 1) };
        self.pow(pi, k as u64, n)
    }

    /// z/πᵏ for z known modulo π^n with v_π(z) ≥ k; the result is known
    /// modulo π^{n−k}.
    pub fn div_pi_pow(&self, z: Qe, k: u32, n: u32) -> Result<Qe> {
        if self.v_pi(z, n) < k {
            return Err(Error::Oracle(format!("v_π({z:?}) < {k} in division")));
        }
        let p = self.p;
        if self.e == 1 {
            let pk = pow_u64(p, k)?;
            return self.canon(Qe { x: z.x / pk, y: z.y / pk }, n - k);
        }
        // 1/π = (t − π)/(−s) with −s = p·u, u a unit.
        let big = pow_u64(p, n)?;
        let ar = Arith::new(self, big);
        let w = ar.mul(z, ar.pow(ar.sub(Qe::new(ar.t, 0), Qe::new(0, 1)), k as u64));
        let pk = pow_u64(p, k)?;
        if w.x % pk != 0 || w.y % pk != 0 {
            return Err(Error::Oracle("π-division left a remainder".into()));
        }
        let rest = pow_u64(p, n - k)?;
        let u = (-self.s / p as i64).rem_euclid(rest as i64) as u64;
        let uinv = inv_mod(u, rest).expect("unit");
        let scale = Arith::new(self, rest).pow(Qe::new(uinv, 0), k as u64);
        let q = Arith::new(self, rest).mul(Qe { x: w.x / pk, y: w.y / pk }, scale);
        self.canon(q, n - k)
    }

    /// Residues of p-adic basis coordinates.
    pub fn from_padic(&self, x: &PadicNumber, y: &PadicNumber, n: u32) -> Result<Qe> {
        let (mx, my) = self.moduli(n)?;
        let k = if self.e == 1 { n } else { n.div_ceil(2) };
        let r = |a: &PadicNumber| -> Result<u64> {
            if a.valuation().map(|v| v < 0).unwrap_or(false) {
                return Err(Error::Domain("coefficient is not integral".into()));
            }
            let big = a.residue_mod(k)?;
            Ok(big.to_u64().unwrap())
        };
        Ok(Qe { x: r(x)? % mx, y: if self.is_base() { 0 } else { r(y)? % my } })
    }

    pub fn from_ext(&self, a: &ExtElement, n: u32) -> Result<Qe> {
        let (x, y) = a.radicand.to_basis(&a.u, &a.v)?;
        self.from_padic(&x, &y, n)
    }

    pub fn all(&self, n: u32) -> Result<impl Iterator<Item = Qe> + '_> {
        let size = self.size(n)?;
        Ok((0..size).map(move |i| self.element(i, n).unwrap()))
    }
}

/// Coefficients of a map, as exact residues modulo a fixed power of p.
#[derive(Clone, Debug)]
pub struct Coeff {
    x: BigInt,
    y: BigInt,
    precision: u32,
}

impl Coeff {
    pub fn ints(x: i64, y: i64) -> Self {
        Coeff { x: BigInt::from(x), y: BigInt::from(y), precision: u32::MAX }
    }

    pub fn from_padic(ring: &OkRing, x: &PadicNumber, y: Option<&PadicNumber>) -> Result<Self> {
        let digits = |a: &PadicNumber| -> u32 {
            if a.exact().is_some() {
                return EXACT_DIGITS;
            }
            match a.absolute_precision() {
                Some(k) => k.clamp(0, EXACT_DIGITS as i64) as u32,
                None => EXACT_DIGITS,
            }
        };
        let mut k = digits(x);
        let ry = match y {
            Some(y) if !ring.is_base() => {
                k = k.min(digits(y));
                BigInt::from(y.residue_mod(k)?)
            }
            _ => BigInt::zero(),
        };
        let rx = BigInt::from(x.residue_mod(k)?);
        Ok(Coeff { x: rx, y: ry, precision: k * ring.e })
    }

    pub fn from_ext(ring: &OkRing, a: &ExtElement) -> Result<Self> {
        let (x, y) = a.radicand.to_basis(&a.u, &a.v)?;
        Self::from_padic(ring, &x, Some(&y))
    }

    pub fn at(&self, ring: &OkRing, n: u32) -> Result<Qe> {
        if n > self.precision {
            return Err(Error::Precision(format!(
                "coefficient known to π-precision {}, level {n} requested",
                self.precision
            )));
        }
        let (mx, my) = ring.moduli(n)?;
        let r = |v: &BigInt, m: u64| v.mod_floor(&BigInt::from(m)).to_u64().unwrap();
        Ok(Qe { x: r(&self.x, mx), y: r(&self.y, my) })
    }
}

/// F(x) = αx + β on O_K.
#[derive(Clone, Debug)]
pub struct AffineMap {
    pub ring: OkRing,
    pub alpha: Coeff,
    pub beta: Coeff,
}

/// F evaluated at one level.
#[derive(Clone, Copy, Debug)]
struct LevelMap<'a> {
    ring: &'a OkRing,
    n: u32,
    ar: Arith,
    alpha: Qe,
    beta: Qe,
}

impl LevelMap<'_> {
    fn apply(&self, x: Qe) -> Qe {
        let z = self.ar.add(self.ar.mul(self.alpha, x), self.beta);
        self.ring.canon(z, self.n).unwrap()
    }

    fn iterate(&self, x: Qe, k: u64) -> Qe {
        let mut z = x;
        for _ in 0..k {
            z = self.apply(z);
        }
        z
    }
}

impl AffineMap {
    pub fn new(ring: OkRing, alpha: Coeff, beta: Coeff) -> Self {
        AffineMap { ring, alpha, beta }
    }

    pub fn multiplication(ring: OkRing, alpha: Coeff) -> Self {
        AffineMap { ring, alpha, beta: Coeff::ints(0, 0) }
    }

    fn level(&self, n: u32) -> Result<LevelMap<'_>> {
        Ok(LevelMap {
            ring: &self.ring,
            n,
            ar: self.ring.arith(n)?,
            alpha: self.alpha.at(&self.ring, n)?,
            beta: self.beta.at(&self.ring, n)?,
        })
    }

    pub fn apply(&self, x: Qe, n: u32) -> Result<Qe> {
        Ok(self.level(n)?.apply(self.ring.canon(x, n)?))
    }

    pub fn iterate(&self, x: Qe, k: u64, n: u32) -> Result<Qe> {
        Ok(self.level(n)?.iterate(self.ring.canon(x, n)?, k))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Growth {
    Grows,
    Splits,
    GrowsTails,
    PartiallySplits,
}

impl Growth {
    pub fn from_ab(ring: &OkRing, a: Qe, b: Qe) -> Self {
        let a = ring.residue(a);
        let b = ring.residue(b);
        if a == Qe::ONE {
            if b == Qe::ZERO {
                Growth::Splits
            } else {
                Growth::Grows
            }
        } else if a == Qe::ZERO {
            Growth::GrowsTails
        } else {
            Growth::PartiallySplits
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    All,
    Units,
}

impl Domain {
    fn contains(&self, ring: &OkRing, x: Qe) -> bool {
        match self {
            Domain::All => true,
            Domain::Units => ring.is_unit(x),
        }
    }
}

/// A cycle of F_n with its linearization data. `b_n` is taken at the first
/// point; it is a coset invariant when a_n ≡ 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub level: u32,
    pub points: Vec<Qe>,
    pub a_n: Qe,
    pub b_n: Qe,
    pub class: Growth,
}

impl CycleRecord {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycleDump {
    pub level: u32,
    pub cycles: Vec<CycleJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycleJson {
    pub length: usize,
    pub representatives: Vec<[u64; 2]>,
    pub a_n: [u64; 2],
    pub b_n: Option<[u64; 2]>,
    pub class: Growth,
}

pub fn dump(level: u32, cycles: &[CycleRecord]) -> CycleDump {
    CycleDump {
        level,
        cycles: cycles
            .iter()
            .map(|c| CycleJson {
                length: c.len(),
                representatives: c.points.iter().map(|q| [q.x, q.y]).collect(),
                a_n: [c.a_n.x, c.a_n.y],
                b_n: (c.a_n == Qe::ONE).then_some([c.b_n.x, c.b_n.y]),
                class: c.class,
            })
            .collect(),
    }
}

/// (a_n, b_n) at the representative x of a k-cycle of F_n: a_n = α^k mod π and
/// b_n = (F^k(x) − x)/πⁿ mod π.
pub fn an_bn_at(f: &AffineMap, x: Qe, k: u64, n: u32) -> Result<(Qe, Qe)> {
    let ring = &f.ring;
    let a = ring.residue(ring.pow(f.alpha.at(ring, 1)?, k, 1)?);
    let lm = f.level(n + 1)?;
    let x = ring.canon(x, n + 1)?;
    let diff = ring.sub(lm.iterate(x, k), x, n + 1)?;
    let b = ring.div_pi_pow(diff, n, n + 1)?;
    Ok((a, b))
}

pub fn an_bn(f: &AffineMap, cycle: &CycleRecord) -> Result<(Qe, Qe)> {
    an_bn_at(f, cycle.points[0], cycle.len() as u64, cycle.level)
}

fn record(f: &AffineMap, points: Vec<Qe>, n: u32) -> Result<CycleRecord> {
    let (a, b) = an_bn_at(f, points[0], points.len() as u64, n)?;
    Ok(CycleRecord { level: n, points, a_n: a, b_n: b, class: Growth::from_ab(&f.ring, a, b) })
}

/// Every cycle of F_n on the domain, each rotated to start at its least
/// point, sorted by that point.
pub fn cycles_at_level(f: &AffineMap, n: u32, domain: Domain, budget: u64) -> Result<Vec<CycleRecord>> {
    let ring = &f.ring;
    let size = ring.size(n)?;
    if size > budget {
        return Err(Error::Budget(format!("|O_K/π^{n}| = {size} exceeds the enumeration budget {budget}")));
    }
    let lm = f.level(n)?;
    let mut map = vec![0u64; size as usize];
    let mut inside = vec![false; size as usize];
    for i in 0..size {
        let x = ring.element(i, n)?;
        inside[i as usize] = domain.contains(ring, x);
        map[i as usize] = ring.index(lm.apply(x), n)?;
    }
    for i in 0..size as usize {
        if inside[i] && !inside[map[i] as usize] {
            return Err(Error::Domain(format!("domain is not invariant at level {n}")));
        }
    }
    let mut out = Vec::new();
    for c in cycles_of(&map) {
        if !inside[c[0] as usize] {
            continue;
        }
        let start = c.iter().enumerate().min_by_key(|(_, &v)| v).unwrap().0;
        let pts = c[start..]
            .iter()
            .chain(c[..start].iter())
            .map(|&i| ring.element(i, n))
            .collect::<Result<Vec<_>>>()?;
        out.push(record(f, pts, n)?);
    }
    out.sort_by_key(|c| ring.index(c.points[0], n).unwrap());
    Ok(out)
}

/// The lifts of a cycle to level n+1, with the values the lifting recurrences
/// predict for each.
#[derive(Clone, Debug)]
pub struct LiftReport {
    pub parent: CycleRecord,
    pub lifts: Vec<CycleRecord>,
    pub predicted: Vec<(Qe, Qe)>,
    /// Predicted and recomputed (a, b) agree for every lift.
    pub recurrence_ok: bool,
    /// The lift lengths are those the parent's class dictates.
    pub shape_ok: bool,
    /// Points of the fiber over the parent that are not periodic.
    pub tail_points: u64,
}

impl LiftReport {
    /// Periodic plus transient points above the parent fill the parent's
    /// cosets exactly.
    pub fn mass_conserved(&self, p: u64, f: u32) -> bool {
        let periodic: u64 = self.lifts.iter().map(|c| c.len() as u64).sum();
        periodic + self.tail_points == self.parent.len() as u64 * p.pow(f)
    }
}

pub fn lift_cycles(f: &AffineMap, cycle: &CycleRecord) -> Result<LiftReport> {
    let ring = &f.ring;
    let n = cycle.level;
    let k = cycle.len() as u64;
    let x0 = cycle.points[0];
    let lm = f.level(n + 1)?;
    let pin = ring.pi_pow(n, n + 1)?;
    let digits = ring.residue_field();
    let fiber: Vec<Qe> = digits
        .iter()
        .map(|&t| ring.add(x0, ring.mul(pin, t, n + 1)?, n + 1))
        .collect::<Result<_>>()?;
    let pos = |z: Qe| fiber.iter().position(|&w| w == z);
    let g: Vec<u64> = fiber
        .iter()
        .map(|&z| {
            pos(lm.iterate(z, k))
                .map(|i| i as u64)
                .ok_or_else(|| Error::Oracle("F^k left the fiber".into()))
        })
        .collect::<Result<_>>()?;
    let fiber_cycles = cycles_of(&g);
    let periodic_fiber: usize = fiber_cycles.iter().map(|c| c.len()).sum();

    // Data mod π² at x0 for the recurrence.
    let alpha2 = f.alpha.at(ring, 2)?;
    let a_big = ring.pow(alpha2, k, 2)?;
    let lm2 = f.level(n + 2)?;
    let x02 = ring.canon(x0, n + 2)?;
    let b2 = ring.div_pi_pow(ring.sub(lm2.iterate(x02, k), x02, n + 2)?, n, n + 2)?;

    let mut lifts = Vec::new();
    let mut predicted = Vec::new();
    let mut recurrence_ok = true;
    for fc in &fiber_cycles {
        let r = fc.len() as u64;
        let start = fiber[fc[0] as usize];
        let mut pts = Vec::with_capacity((r * k) as usize);
        let mut z = start;
        for _ in 0..r * k {
            pts.push(z);
            z = lm.apply(z);
        }
        let ar = ring.pow(a_big, r, 2)?;
        let mut geo = Qe::ZERO;
        for j in 0..r {
            geo = ring.add(geo, ring.pow(a_big, j, 2)?, 2)?;
        }
        // The fiber point is x0 + πⁿt only up to the representative chosen for
        // πⁿ, so take the displacement it actually has.
        let shift = ring.sub(ring.canon(start, n + 2)?, x02, n + 2)?;
        let t_eff = ring.div_pi_pow(shift, n, n + 2)?;
        let bracket = ring.add(
            ring.mul(t_eff, ring.sub(ar, Qe::ONE, 2)?, 2)?,
            ring.mul(b2, geo, 2)?,
            2,
        )?;
        let pred_b = ring.div_pi_pow(bracket, 1, 2)?;
        let pred_a = ring.residue(ring.pow(cycle.a_n, r, 1)?);
        let (da, db) = an_bn_at(f, start, r * k, n + 1)?;
        recurrence_ok &= da == pred_a && db == pred_b;
        predicted.push((pred_a, pred_b));

        let min = pts.iter().enumerate().min_by_key(|(_, q)| ring.index(**q, n + 1).unwrap()).unwrap().0;
        let pts: Vec<Qe> = pts[min..].iter().chain(pts[..min].iter()).copied().collect();
        lifts.push(record(f, pts, n + 1)?);
    }

    let q = digits.len() as u64;
    let mut lens: Vec<u64> = lifts.iter().map(|c| c.len() as u64).collect();
    lens.sort();
    let expect: Vec<u64> = match cycle.class {
        Growth::Grows => vec![k * ring.p; (q / ring.p) as usize],
        Growth::Splits => vec![k; q as usize],
        Growth::GrowsTails => vec![k],
        Growth::PartiallySplits => {
            let l = ring.residue_order(cycle.a_n)?;
            let mut v = vec![k];
            v.extend(std::iter::repeat_n(k * l, ((q - 1) / l) as usize));
            v
        }
    };
    let shape_ok = lens == expect;
    Ok(LiftReport {
        parent: cycle.clone(),
        lifts,
        predicted,
        recurrence_ok,
        shape_ok,
        tail_points: (digits.len() - periodic_fiber) as u64 * k,
    })
}

/// Growth schedule of the clopen pieces of multiplication by α on the units.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeVector {
    pub k: u64,
    pub prefix: Vec<u32>,
    pub tail: u32,
    pub start_level: u32,
    /// v_π(α^{ℓ p^j} − 1) for j = 0, 1, ….
    pub valuations: Vec<u32>,
}

impl TypeVector {
    /// v_π(α^{ℓ p^j} − 1), extended by the tail constant.
    pub fn valuation(&self, j: usize) -> u32 {
        match self.valuations.get(j) {
            Some(&v) => v,
            None => {
                let last = *self.valuations.last().unwrap();
                last + self.tail * (j + 1 - self.valuations.len()) as u32
            }
        }
    }

    /// Cycle length of x ↦ αx on 𝕌/πⁿ: ℓ·p^{#{j : v_j < n}}.
    pub fn cycle_length(&self, p: u64, n: u32) -> u64 {
        let mut j = 0;
        while self.valuation(j) < n {
            j += 1;
        }
        self.k * p.pow(j as u32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicationType {
    pub ell: u64,
    pub type_vector: TypeVector,
    pub clopen_count: u64,
}

/// ℓ, the type (ℓ, E⃗) and the number of clopen pieces of 𝕌 for x ↦ αx.
pub fn multiplication_type(ring: &OkRing, alpha: &Coeff) -> Result<MultiplicationType> {
    let p = ring.p;
    let a1 = alpha.at(ring, 1)?;
    if !ring.is_unit(a1) {
        return Err(Error::Domain("α is not a unit".into()));
    }
    let ell = ring.residue_order(a1)?;
    let cap = alpha.precision.min(max_level(ring));
    let a = alpha.at(ring, cap)?;
    let val = |exp: u64| -> Result<u32> {
        let z = ring.sub(ring.pow(a, exp, cap)?, Qe::ONE, cap)?;
        let v = ring.v_pi(z, cap);
        if v >= cap {
            return Err(Error::Domain(format!(
                "α^{exp} ≡ 1 to π-precision {cap}: possibly a root of unity"
            )));
        }
        Ok(v)
    };
    let e = ring.e;
    let min_j = if p == 2 && e == 2 { 3 } else { 2 };
    let mut vals = vec![val(ell)?];
    let mut exp = ell;
    loop {
        exp = exp.checked_mul(p).ok_or_else(|| Error::Budget("exponent overflow".into()))?;
        vals.push(val(exp)?);
        let j = vals.len() - 1;
        let ej = vals[j] - vals[j - 1];
        let ej1 = if j >= 2 { vals[j - 1] - vals[j - 2] } else { 0 };
        if j >= min_j && ej == e && ej1 == e {
            break;
        }
        if j > 64 {
            return Err(Error::Oracle("type vector did not stabilize".into()));
        }
    }
    let v0 = vals[0];
    let prefix: Vec<u32> = vals.windows(2).map(|w| w[1] - w[0]).collect();
    let q = p.pow(ring.f);
    let clopen_count = (q - 1) * q.pow(v0 - 1) / ell;
    Ok(MultiplicationType {
        ell,
        type_vector: TypeVector { k: ell, prefix, tail: e, start_level: v0, valuations: vals },
        clopen_count,
    })
}

/// Deepest level whose arithmetic fits in machine words.
pub fn max_level(ring: &OkRing) -> u32 {
    let mut n = 1;
    while ring.moduli(n + 1).is_ok() && pow_u64(ring.p, n + 1).is_ok() {
        n += 1;
    }
    n
}
