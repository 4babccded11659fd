//! Quadratic extensions K = Q_p(√d) with d drawn from a canonical list of
//! radicand classes.

use crate::error::{Error, Result};
use crate::padic::{is_quadratic_residue, least_non_residue, sqrt_in_qp, PadicNumber};
use crate::quad_field::QuadRational;
use crate::rational::{self, check_prime, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UniformizerKind {
    P,
    SqrtD,
    OnePlusSqrtD,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalRadicand {
    pub prime: u64,
    pub d: i64,
    pub n_p: Option<u64>,
    pub e: u32,
    pub f: u32,
    pub uniformizer: UniformizerKind,
}

impl CanonicalRadicand {
    /// Validate `d` against the canonical list for `p`.
    pub fn new(p: u64, d: i64) -> Result<Self> {
        check_prime(p)?;
        if p == 2 {
            let (e, u) = match d {
                -3 => (1, UniformizerKind::P),
                -1 | 3 => (2, UniformizerKind::OnePlusSqrtD),
                2 | -2 | 6 | -6 => (2, UniformizerKind::SqrtD),
                _ => return Err(Error::Input(format!("{d} is not a canonical radicand for p=2"))),
            };
            return Ok(CanonicalRadicand { prime: 2, d, n_p: None, e, f: 2 / e, uniformizer: u });
        }
        let np = least_non_residue(p) as i64;
        let pi = p as i64;
        let (e, u) = if d == np {
            (1, UniformizerKind::P)
        } else if d == pi || d == pi * np {
            (2, UniformizerKind::SqrtD)
        } else {
            return Err(Error::Input(format!("{d} is not a canonical radicand for p={p}")));
        };
        Ok(CanonicalRadicand { prime: p, d, n_p: Some(np as u64), e, f: 2 / e, uniformizer: u })
    }

    /// Every canonical class for `p`.
    pub fn all(p: u64) -> Result<Vec<Self>> {
        check_prime(p)?;
        if p == 2 {
            return [-1, 2, -2, 3, -3, 6, -6].iter().map(|&d| Self::new(2, d)).collect();
        }
        let np = least_non_residue(p) as i64;
        let pi = p as i64;
        [np, pi, pi * np].iter().map(|&d| Self::new(p, d)).collect()
    }

    pub fn label(&self) -> String {
        if self.prime == 2 {
            return self.d.to_string();
        }
        let np = self.n_p.unwrap() as i64;
        if self.d == np {
            "N_p".into()
        } else if self.d == self.prime as i64 {
            "p".into()
        } else {
            "pN_p".into()
        }
    }

    pub fn is_unramified(&self) -> bool {
        self.e == 1
    }

    /// Twice the p-adic valuation of d(√d, Q_p).
    pub fn sqrt_distance_twice_val(&self) -> i64 {
        match (self.prime, self.d, self.e) {
            (2, -3, _) => 2,
            (_, _, 1) => 0,
            _ => 1,
        }
    }

    /// Rational t₀ ∈ {0, 1} such that t₀ is a closest point of Q_p to √d.
    pub fn sqrt_closest_point(&self) -> i64 {
        if self.prime == 2 && matches!(self.d, -3 | -1 | 3) {
            1
        } else {
            0
        }
    }

    /// Integral basis {1, θ} of O_K with θ² = tθ + s; for ramified K, θ is a
    /// uniformizer.
    pub fn basis(&self) -> (i64, i64) {
        match (self.prime, self.d, self.uniformizer) {
            (2, -3, _) => (1, -1),
            (_, d, UniformizerKind::OnePlusSqrtD) => (2, d - 1),
            (_, d, _) => (0, d),
        }
    }

    /// θ as an element u + v√d.
    pub fn theta(&self) -> (Rational, Rational) {
        match (self.prime, self.d, self.uniformizer) {
            (2, -3, _) => (rational::rat(1, 2), rational::rat(1, 2)),
            (_, _, UniformizerKind::OnePlusSqrtD) => (Rational::one(), Rational::one()),
            _ => (Rational::zero(), Rational::one()),
        }
    }

    /// Coordinates (x, y) of X + Y√d on the basis {1, θ}.
    pub fn to_basis(&self, x: &PadicNumber, y: &PadicNumber) -> Result<(PadicNumber, PadicNumber)> {
        match (self.prime, self.d, self.uniformizer) {
            (2, -3, _) => {
                let two = PadicNumber::from_i64(2, 2, y.precision())?;
                Ok((x.sub(y)?, y.mul(&two)?))
            }
            (_, _, UniformizerKind::OnePlusSqrtD) => Ok((x.sub(y)?, y.clone())),
            _ => Ok((x.clone(), y.clone())),
        }
    }
}

impl fmt::Display for CanonicalRadicand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q_{}(√{})", self.prime, self.d)
    }
}

/// Outcome of canonicalizing a radicand Δ.
#[derive(Clone, Debug)]
pub enum Canonical {
    Square {
        root: PadicNumber,
    },
    /// Δ = scale² · d · unit_square with unit_root² = unit_square.
    Extension {
        radicand: CanonicalRadicand,
        scale: Rational,
        unit_square: Rational,
        unit_root: PadicNumber,
    },
}

impl Canonical {
    pub fn radicand(&self) -> Option<&CanonicalRadicand> {
        match self {
            Canonical::Square { .. } => None,
            Canonical::Extension { radicand, .. } => Some(radicand),
        }
    }

    /// √Δ = coefficient · √d; the coefficient lies in Q_p.
    pub fn sqrt_coefficient(&self) -> Result<PadicNumber> {
        match self {
            Canonical::Square { .. } => Err(Error::Domain("radicand is a square".into())),
            Canonical::Extension { scale, unit_root, .. } => {
                let s = PadicNumber::from_rational(scale, unit_root.prime(), unit_root.precision())?;
                s.mul(unit_root)
            }
        }
    }
}

pub fn canonicalize_radicand(delta: &Rational, p: u64, precision: u32) -> Result<Canonical> {
    check_prime(p)?;
    let (v, u) = rational::split_p(delta, p).ok_or_else(|| Error::Input("radicand is zero".into()))?;
    let unit = u.numer() * u.denom();
    let half = v.div_euclid(2);
    let scale = rational::pow_p_rat(p, half);
    let (d, class_unit): (i64, i64) = if p == 2 {
        let r = unit.mod_floor(&BigInt::from(8)).to_i64().unwrap();
        if v % 2 == 0 {
            match r {
                1 => (1, 1),
                3 => (3, 3),
                5 => (-3, -3),
                _ => (-1, -1),
            }
        } else {
            match r {
                1 => (2, 1),
                7 => (-2, -1),
                3 => (6, 3),
                _ => (-6, -3),
            }
        }
    } else {
        let residue = is_quadratic_residue(&unit, p)?;
        let np = least_non_residue(p) as i64;
        let c = if residue { 1 } else { np };
        if v % 2 == 0 {
            (if residue { 1 } else { np }, c)
        } else {
            (c * p as i64, c)
        }
    };
    let unit_square = &u / Rational::from_integer(BigInt::from(class_unit));
    let w = PadicNumber::from_rational(&unit_square, p, precision)?;
    let root = sqrt_in_qp(&w)?
        .ok_or_else(|| Error::Domain("canonical unit is not a square".into()))?;
    if d == 1 {
        let s = PadicNumber::from_rational(&scale, p, root.precision())?;
        return Ok(Canonical::Square { root: s.mul(&root)? });
    }
    Ok(Canonical::Extension {
        radicand: CanonicalRadicand::new(p, d)?,
        scale,
        unit_square,
        unit_root: root,
    })
}

/// An element u + v√d of K.
#[derive(Clone, Debug)]
pub struct ExtElement {
    pub radicand: CanonicalRadicand,
    pub u: PadicNumber,
    pub v: PadicNumber,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtElementJson {
    pub radicand: i64,
    pub p: u64,
    pub u: crate::padic::PadicJson,
    pub v: crate::padic::PadicJson,
}

impl ExtElement {
    pub fn new(radicand: &CanonicalRadicand, u: PadicNumber, v: PadicNumber) -> Result<Self> {
        if u.prime() != radicand.prime || v.prime() != radicand.prime {
            return Err(Error::PrimeMismatch(u.prime(), radicand.prime));
        }
        Ok(ExtElement { radicand: radicand.clone(), u, v })
    }

    pub fn from_rationals(radicand: &CanonicalRadicand, u: &Rational, v: &Rational, prec: u32) -> Result<Self> {
        let p = radicand.prime;
        Self::new(
            radicand,
            PadicNumber::from_rational(u, p, prec)?,
            PadicNumber::from_rational(v, p, prec)?,
        )
    }

    pub fn from_i64(radicand: &CanonicalRadicand, u: i64, v: i64, prec: u32) -> Result<Self> {
        Self::from_rationals(radicand, &rational::int(u), &rational::int(v), prec)
    }

    pub fn theta(radicand: &CanonicalRadicand, prec: u32) -> Result<Self> {
        let (u, v) = radicand.theta();
        Self::from_rationals(radicand, &u, &v, prec)
    }

    pub fn prime(&self) -> u64 {
        self.radicand.prime
    }

    pub fn precision(&self) -> u32 {
        self.u.precision().max(self.v.precision())
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.radicand != o.radicand {
            return Err(Error::Input(format!(
                "radicand mismatch: {} vs {}",
                self.radicand, o.radicand
            )));
        }
        Ok(())
    }

    fn d_padic(&self) -> Result<PadicNumber> {
        PadicNumber::from_i64(self.radicand.d, self.prime(), self.precision())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Self::new(&self.radicand, self.u.add(&o.u)?, self.v.add(&o.v)?)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Self::new(&self.radicand, self.u.sub(&o.u)?, self.v.sub(&o.v)?)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let d = self.d_padic()?;
        let u = self.u.mul(&o.u)?.add(&d.mul(&self.v.mul(&o.v)?)?)?;
        let v = self.u.mul(&o.v)?.add(&self.v.mul(&o.u)?)?;
        Self::new(&self.radicand, u, v)
    }

    pub fn conjugate(&self) -> Self {
        ExtElement { radicand: self.radicand.clone(), u: self.u.clone(), v: self.v.neg() }
    }

    pub fn norm(&self) -> Result<PadicNumber> {
        let d = self.d_padic()?;
        self.u.mul(&self.u)?.sub(&d.mul(&self.v.mul(&self.v)?)?)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm()?;
        if n.is_zero() {
            return Err(Error::Precision("norm vanishes to working precision".into()));
        }
        let c = self.conjugate();
        Self::new(&self.radicand, c.u.div(&n)?, c.v.div(&n)?)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        self.mul(&o.inverse()?)
    }

    pub fn neg(&self) -> Self {
        ExtElement { radicand: self.radicand.clone(), u: self.u.neg(), v: self.v.neg() }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::from_i64(&self.radicand, 1, 0, self.precision())?;
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Twice the p-adic valuation, v_p(Norm); `None` for zero.
    pub fn twice_val(&self) -> Result<Option<i64>> {
        if self.is_zero() {
            return Ok(None);
        }
        let n = self.norm()?;
        match n.valuation() {
            Some(v) => Ok(Some(v)),
            None => Err(Error::Precision("norm vanishes to working precision".into())),
        }
    }

    /// v_π(x) = (e/2) · v_p(Norm x).
    pub fn v_pi(&self) -> Result<Option<i64>> {
        Ok(self.twice_val()?.map(|t| t * self.radicand.e as i64 / 2))
    }

    pub fn is_in_qp(&self) -> bool {
        self.v.is_zero()
    }

    pub fn to_json(&self) -> ExtElementJson {
        ExtElementJson {
            radicand: self.radicand.d,
            p: self.prime(),
            u: self.u.to_json(),
            v: self.v.to_json(),
        }
    }

    pub fn from_json(j: &ExtElementJson) -> Result<Self> {
        let r = CanonicalRadicand::new(j.p, j.radicand)?;
        Self::new(&r, PadicNumber::from_json(&j.u)?, PadicNumber::from_json(&j.v)?)
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: &PadicNumber| match x.exact() {
            Some(q) => rational::fmt_rational(q),
            None => x.to_text(),
        };
        write!(f, "{} + ({})·√{}", show(&self.u), show(&self.v), self.radicand.d)
    }
}

/// Embedding of Q(√D) into K: √D = coefficient · √d.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub radicand: CanonicalRadicand,
    pub coefficient: PadicNumber,
    pub d_global: BigInt,
}

impl Embedding {
    pub fn new(d_global: &BigInt, p: u64, precision: u32) -> Result<Self> {
        let c = canonicalize_radicand(&Rational::from_integer(d_global.clone()), p, precision)?;
        let coefficient = c.sqrt_coefficient()?;
        Ok(Embedding {
            radicand: c.radicand().unwrap().clone(),
            coefficient,
            d_global: d_global.clone(),
        })
    }

    pub fn embed(&self, x: &QuadRational) -> Result<ExtElement> {
        assert_eq!(x.d(), &self.d_global, "quadratic field mismatch");
        let p = self.radicand.prime;
        let prec = self.coefficient.precision();
        let u = PadicNumber::from_rational(x.a(), p, prec)?;
        let b = PadicNumber::from_rational(x.b(), p, prec)?;
        ExtElement::new(&self.radicand, u, b.mul(&self.coefficient)?)
    }
}

/// A radius p^{half/2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfPow {
    pub half: i64,
}

impl HalfPow {
    pub fn from_twice_val(tv: i64) -> Self {
        HalfPow { half: -tv }
    }

    /// The exponent as a reduced fraction (num, den).
    pub fn exponent(&self) -> (i64, i64) {
        if self.half % 2 == 0 {
            (self.half / 2, 1)
        } else {
            (self.half, 2)
        }
    }

    pub fn to_f64(&self, p: u64) -> f64 {
        (p as f64).powf(self.half as f64 / 2.0)
    }
}

impl fmt::Display for HalfPow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent() {
            (n, 1) => write!(f, "p^{n}"),
            (n, d) => write!(f, "p^({n}/{d})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    RationalPoint,
    Radius(HalfPow),
}

pub fn distance_to_qp(x: &ExtElement) -> Result<Distance> {
    match x.v.valuation() {
        None => Ok(Distance::RationalPoint),
        Some(vv) => Ok(Distance::Radius(HalfPow::from_twice_val(
            2 * vv + x.radicand.sqrt_distance_twice_val(),
        ))),
    }
}

/// A rational point of Q_p closest to x, exact to the element's precision.
pub fn closest_rational_point(x: &ExtElement) -> Result<Rational> {
    let t0 = PadicNumber::from_i64(x.radicand.sqrt_closest_point(), x.prime(), x.precision())?;
    let q = x.u.add(&x.v.mul(&t0)?)?;
    Ok(q.to_rational_approx())
}

#[derive(Clone, Debug)]
pub struct ExtDisk {
    pub center: ExtElement,
    pub radius: HalfPow,
    pub complement: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtDiskJson {
    pub center: ExtElementJson,
    pub radius_exponent_num: i64,
    pub radius_exponent_den: i64,
    pub kind: String,
}

impl ExtDisk {
    /// Closed disk, radius normalized into the value group of K.
    pub fn closed(center: ExtElement, radius: HalfPow) -> Self {
        let half = if center.radicand.e == 1 { radius.half.div_euclid(2) * 2 } else { radius.half };
        ExtDisk { center, radius: HalfPow { half }, complement: false }
    }

    pub fn complement_of(center: ExtElement, radius: HalfPow) -> Self {
        let mut d = Self::closed(center, radius);
        d.complement = true;
        d
    }

    /// Radius step between consecutive closed disks, in half-exponent units.
    pub fn step(&self) -> i64 {
        2 / self.center.radicand.e as i64
    }

    pub fn contains(&self, x: &ExtElement) -> Result<bool> {
        let inside = match x.sub(&self.center)?.twice_val()? {
            None => true,
            Some(tv) => -tv <= self.radius.half,
        };
        Ok(inside != self.complement)
    }

    pub fn meets_qp(&self) -> Result<bool> {
        if self.complement {
            return Ok(true);
        }
        Ok(match distance_to_qp(&self.center)? {
            Distance::RationalPoint => true,
            Distance::Radius(r) => r.half <= self.radius.half,
        })
    }

    pub fn to_json(&self) -> ExtDiskJson {
        let (n, d) = self.radius.exponent();
        ExtDiskJson {
            center: self.center.to_json(),
            radius_exponent_num: n,
            radius_exponent_den: d,
            kind: if self.complement { "complement_of_closed_disk" } else { "closed_disk" }.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SubdiskCount {
    pub total: u64,
    pub meeting: u64,
    pub centers: Vec<ExtElement>,
}

/// Count the maximal proper subdisks of a closed disk and those meeting Q_p.
pub fn count_subdisks_meeting_qp(disk: &ExtDisk) -> Result<SubdiskCount> {
    if disk.complement {
        return Err(Error::Input("expected a closed disk".into()));
    }
    if !disk.meets_qp()? {
        return Err(Error::Domain("disk is disjoint from Q_p".into()));
    }
    let r = &disk.center.radicand;
    let p = r.prime;
    let prec = disk.center.precision();
    let q = closest_rational_point(&disk.center)?;
    let h = disk.radius.half;
    let (total, meeting) = if r.e == 1 {
        (p * p, p)
    } else if h % 2 == 0 {
        (p, p)
    } else {
        (p, 1)
    };
    let step = rational::pow_p_rat(p, -h.div_euclid(2));
    let centers = (0..meeting)
        .map(|t| {
            let c = &q + &step * rational::int(t as i64);
            ExtElement::from_rationals(r, &c, &Rational::zero(), prec)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubdiskCount { total, meeting, centers })
}

/// Centers of every maximal proper subdisk, built from residue digits.
pub fn all_subdisk_centers(disk: &ExtDisk) -> Result<Vec<ExtElement>> {
    let r = &disk.center.radicand;
    let p = r.prime;
    let prec = disk.center.precision();
    let q = ExtElement::from_rationals(r, &closest_rational_point(&disk.center)?, &Rational::zero(), prec)?;
    let theta = ExtElement::theta(r, prec)?;
    let mut out = Vec::new();
    if r.e == 1 {
        let tau = rational::pow_p_rat(p, -disk.radius.half / 2);
        let tau = ExtElement::from_rationals(r, &tau, &Rational::zero(), prec)?;
        for x in 0..p as i64 {
            for y in 0..p as i64 {
                let z = ExtElement::from_i64(r, x, 0, prec)?.add(&theta.mul(&ExtElement::from_i64(r, y, 0, prec)?)?)?;
                out.push(q.add(&tau.mul(&z)?)?);
            }
        }
    } else {
        let tau = theta.pow(-disk.radius.half)?;
        for x in 0..p as i64 {
            out.push(q.add(&tau.mul(&ExtElement::from_i64(r, x, 0, prec)?)?)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn class_of(delta: Rational, p: u64) -> Option<i64> {
        canonicalize_radicand(&delta, p, 32).unwrap().radicand().map(|r| r.d)
    }

    #[test]
    fn canonical_classes() {
        assert_eq!(class_of(int(5), 2), Some(-3));
        assert_eq!(class_of(int(5), 3), Some(2));
        assert!(class_of(int(4), 3).is_none());
        assert_eq!(class_of(int(12), 3), Some(3));
        assert_eq!(class_of(int(-1), 2), Some(-1));
        assert_eq!(class_of(rat(7, 4), 2), Some(-1));
        assert_eq!(class_of(int(10), 2), Some(-6));
        assert_eq!(class_of(int(21), 7), Some(21));
        assert!(class_of(int(-3), 7).is_none());
    }

    #[test]
    fn canonical_factorization_holds() {
        for (num, den, p) in [(5i64, 1i64, 2u64), (-45, 4, 3), (22, 9, 2), (98, 5, 7), (-3, 5, 5)] {
            let delta = rat(num, den);
            if let Canonical::Extension { radicand, scale, unit_square, unit_root } =
                canonicalize_radicand(&delta, p, 40).unwrap()
            {
                let d = Rational::from_integer(BigInt::from(radicand.d));
                assert_eq!(&scale * &scale * d * &unit_square, delta);
                let sq = unit_root.mul(&unit_root).unwrap();
                let w = PadicNumber::from_rational(&unit_square, p, 40).unwrap();
                assert!(sq.eq_to_precision(&w, 35));
            }
        }
    }

    #[test]
    fn invariants_of_classes() {
        for p in [2u64, 3, 5, 7] {
            for r in CanonicalRadicand::all(p).unwrap() {
                assert_eq!(r.e * r.f, 2);
                let unram = r.d == -3 && p == 2 || r.n_p == Some(r.d as u64);
                assert_eq!(r.e == 1, unram);
                assert_eq!(r.uniformizer == UniformizerKind::P, r.e == 1);
            }
        }
    }

    #[test]
    fn v_pi_examples() {
        let r = CanonicalRadicand::new(2, 2).unwrap();
        assert_eq!(ExtElement::from_i64(&r, 0, 1, 20).unwrap().v_pi().unwrap(), Some(1));
        let r = CanonicalRadicand::new(2, -1).unwrap();
        assert_eq!(ExtElement::from_i64(&r, 1, 1, 20).unwrap().v_pi().unwrap(), Some(1));
        let r = CanonicalRadicand::new(3, 2).unwrap();
        assert_eq!(ExtElement::from_i64(&r, 0, 1, 20).unwrap().v_pi().unwrap(), Some(0));
    }

    #[test]
    fn distances() {
        let dist = |p: u64, d: i64, u: i64| {
            let r = CanonicalRadicand::new(p, d).unwrap();
            match distance_to_qp(&ExtElement::from_i64(&r, u, 1, 20).unwrap()).unwrap() {
                Distance::Radius(h) => h.half,
                Distance::RationalPoint => i64::MAX,
            }
        };
        assert_eq!(dist(3, 2, 0), 0);
        assert_eq!(dist(5, 5, 0), -1);
        assert_eq!(dist(2, -3, 0), -2);
        assert_eq!(dist(2, -1, 7), -1);
    }

    #[test]
    fn subdisk_counts() {
        let count = |p: u64, d: i64, half: i64| {
            let r = CanonicalRadicand::new(p, d).unwrap();
            let c = ExtElement::from_i64(&r, 0, 0, 20).unwrap();
            let s = count_subdisks_meeting_qp(&ExtDisk::closed(c, HalfPow { half })).unwrap();
            (s.total, s.meeting)
        };
        assert_eq!(count(3, 2, 0), (9, 3));
        assert_eq!(count(3, 3, 1), (3, 1));
        assert_eq!(count(3, 3, 0), (3, 3));
        assert_eq!(count(2, -1, 1), (2, 1));
    }
}
