//! The projective line over Q_p and over a quadratic extension K:
//! points, homographic maps, the chordal metric and transport of disks.

use crate::error::{Error, Result};
use crate::padic::PadicNumber;
use crate::quad_ext::{ExtElement, HalfPow};
use crate::rational::{self, check_prime, fmt_rational, parse_rational, pow_p_rat, reduce_mod_pj, vp, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A point of P¹(Q) ⊂ P¹(Q_p), held exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QPoint {
    Finite(Rational),
    Infinity,
}

impl QPoint {
    pub fn int(n: i64) -> Self {
        QPoint::Finite(rational::int(n))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            QPoint::Finite(x) => Some(x),
            QPoint::Infinity => None,
        }
    }
}

impl fmt::Display for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QPoint::Finite(x) => f.write_str(&fmt_rational(x)),
            QPoint::Infinity => f.write_str("∞"),
        }
    }
}

/// A point of P¹(Q_p) at working precision.
#[derive(Clone, Debug)]
pub enum ProjPoint {
    Finite(PadicNumber),
    Infinity,
}

impl ProjPoint {
    pub fn from_qpoint(x: &QPoint, p: u64, precision: u32) -> Result<Self> {
        Ok(match x {
            QPoint::Finite(q) => ProjPoint::Finite(PadicNumber::from_rational(q, p, precision)?),
            QPoint::Infinity => ProjPoint::Infinity,
        })
    }

    pub fn without_exact(&self) -> Self {
        match self {
            ProjPoint::Finite(x) => ProjPoint::Finite(x.without_exact()),
            ProjPoint::Infinity => ProjPoint::Infinity,
        }
    }

    pub fn to_qpoint(&self) -> Option<QPoint> {
        match self {
            ProjPoint::Finite(x) => x.exact().map(|q| QPoint::Finite(q.clone())),
            ProjPoint::Infinity => Some(QPoint::Infinity),
        }
    }

    pub fn precision(&self) -> Option<i64> {
        match self {
            ProjPoint::Finite(x) => x.absolute_precision(),
            ProjPoint::Infinity => None,
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => match x.exact() {
                Some(q) => f.write_str(&fmt_rational(q)),
                None => f.write_str(&x.to_text()),
            },
            ProjPoint::Infinity => f.write_str("∞"),
        }
    }
}

/// Chordal distance between two points of P¹(Q_p); `None` means zero.
pub fn chordal_distance(x: &ProjPoint, y: &ProjPoint) -> Result<Option<HalfPow>> {
    let vmin = |z: &PadicNumber| z.valuation().map(|v| v.min(0)).unwrap_or(0);
    match (x, y) {
        (ProjPoint::Infinity, ProjPoint::Infinity) => Ok(None),
        (ProjPoint::Finite(z), ProjPoint::Infinity) | (ProjPoint::Infinity, ProjPoint::Finite(z)) => {
            Ok(Some(HalfPow { half: 2 * vmin(z) }))
        }
        (ProjPoint::Finite(a), ProjPoint::Finite(b)) => {
            let diff = a.sub(b)?;
            Ok(diff
                .valuation()
                .map(|v| HalfPow { half: -2 * (v - vmin(a) - vmin(b)) }))
        }
    }
}

/// 2×2 matrix with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Mat2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn adjugate(&self) -> Mat2 {
        Mat2 { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }

    pub fn scale(&self, s: &Rational) -> Mat2 {
        Mat2 { a: &self.a * s, b: &self.b * s, c: &self.c * s, d: &self.d * s }
    }

    pub fn entries(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Scale by a power of p so the smallest entry valuation is zero.
    pub fn primitive(&self, p: u64) -> Mat2 {
        let m = self.entries().iter().filter_map(|x| vp(x, p)).min().unwrap_or(0);
        self.scale(&pow_p_rat(p, -m))
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomographicMap {
    pub m: Mat2,
    pub p: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub p: u64,
}

impl HomographicMap {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational, p: u64) -> Result<Self> {
        check_prime(p)?;
        let m = Mat2::new(a, b, c, d);
        if m.det().is_zero() {
            return Err(Error::Input("ad − bc = 0: not a homography".into()));
        }
        Ok(HomographicMap { m, p })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64, p: u64) -> Result<Self> {
        use rational::int;
        Self::new(int(a), int(b), int(c), int(d), p)
    }

    /// Parse the literal "a,b,c,d".
    pub fn parse(s: &str, p: u64) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Input(format!("map literal '{s}' needs four entries a,b,c,d")));
        }
        let v = parts.iter().map(|t| parse_rational(t)).collect::<Result<Vec<_>>>()?;
        Self::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), p)
    }

    pub fn from_mat(m: Mat2, p: u64) -> Result<Self> {
        Self::new(m.a, m.b, m.c, m.d, p)
    }

    pub fn a(&self) -> &Rational {
        &self.m.a
    }
    pub fn b(&self) -> &Rational {
        &self.m.b
    }
    pub fn c(&self) -> &Rational {
        &self.m.c
    }
    pub fn d(&self) -> &Rational {
        &self.m.d
    }

    pub fn det(&self) -> Rational {
        self.m.det()
    }

    /// Δ = (d − a)² + 4bc.
    pub fn delta(&self) -> Rational {
        let t = self.d() - self.a();
        &t * &t + rational::int(4) * self.b() * self.c()
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_scalar()
    }

    pub fn literal(&self) -> String {
        self.m.entries().iter().map(|x| fmt_rational(x)).collect::<Vec<_>>().join(",")
    }

    pub fn to_json(&self) -> MapJson {
        MapJson {
            a: fmt_rational(self.a()),
            b: fmt_rational(self.b()),
            c: fmt_rational(self.c()),
            d: fmt_rational(self.d()),
            p: self.p,
        }
    }

    pub fn compose(&self, o: &HomographicMap) -> Result<HomographicMap> {
        if self.p != o.p {
            return Err(Error::PrimeMismatch(self.p, o.p));
        }
        Ok(HomographicMap { m: self.m.mul(&o.m), p: self.p })
    }

    pub fn invert(&self) -> HomographicMap {
        HomographicMap { m: self.m.adjugate(), p: self.p }
    }

    /// Projective equality of the underlying matrices.
    pub fn same_as(&self, o: &HomographicMap) -> bool {
        let x = &self.m;
        let y = &o.m;
        &x.a * &y.b == &x.b * &y.a
            && &x.a * &y.c == &x.c * &y.a
            && &x.a * &y.d == &x.d * &y.a
            && &x.b * &y.c == &x.c * &y.b
            && &x.b * &y.d == &x.d * &y.b
            && &x.c * &y.d == &x.d * &y.c
    }

    pub fn apply_exact(&self, x: &QPoint) -> QPoint {
        match x {
            QPoint::Infinity => {
                if self.c().is_zero() {
                    QPoint::Infinity
                } else {
                    QPoint::Finite(self.a() / self.c())
                }
            }
            QPoint::Finite(x) => {
                let den = self.c() * x + self.d();
                if den.is_zero() {
                    QPoint::Infinity
                } else {
                    QPoint::Finite((self.a() * x + self.b()) / den)
                }
            }
        }
    }

    /// Evaluate on a p-adic point; a denominator that vanishes to working
    /// precision is sent to ∞.
    pub fn apply(&self, x: &ProjPoint) -> Result<ProjPoint> {
        let p = self.p;
        match x {
            ProjPoint::Infinity => {
                if self.c().is_zero() {
                    Ok(ProjPoint::Infinity)
                } else {
                    Ok(ProjPoint::Finite(PadicNumber::from_rational(&(self.a() / self.c()), p, 64)?))
                }
            }
            ProjPoint::Finite(z) => {
                let prec = z.precision();
                let e = |q: &Rational| PadicNumber::from_rational(q, p, prec);
                let num = e(self.a())?.mul(z)?.add(&e(self.b())?)?;
                let den = e(self.c())?.mul(z)?.add(&e(self.d())?)?;
                if den.is_zero() {
                    return Ok(ProjPoint::Infinity);
                }
                Ok(ProjPoint::Finite(num.div(&den)?))
            }
        }
    }
}

impl fmt::Display for HomographicMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}x + {})/({}x + {}) over Q_{}",
            fmt_rational(self.a()),
            fmt_rational(self.b()),
            fmt_rational(self.c()),
            fmt_rational(self.d()),
            self.p
        )
    }
}

/// Closed ball D̄(center, p^radius_exp) in Q_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ball {
    pub p: u64,
    pub center: Rational,
    pub radius_exp: i64,
}

impl Ball {
    pub fn new(p: u64, center: Rational, radius_exp: i64) -> Self {
        let center = reduce_mod_pj(&center, p, -radius_exp);
        Ball { p, center, radius_exp }
    }

    /// Any point of the ball serves as center; `new` picks the canonical one.
    fn raw(p: u64, center: Rational, radius_exp: i64) -> Self {
        Ball { p, center, radius_exp }
    }

    pub fn contains_rational(&self, x: &Rational) -> bool {
        match vp(&(x - &self.center), self.p) {
            None => true,
            Some(v) => v >= -self.radius_exp,
        }
    }

    pub fn contains_ball(&self, o: &Ball) -> bool {
        o.radius_exp <= self.radius_exp && self.contains_rational(&o.center)
    }

    pub fn meets(&self, o: &Ball) -> bool {
        self.contains_ball(o) || o.contains_ball(self)
    }

    pub fn radius(&self) -> Rational {
        pow_p_rat(self.p, self.radius_exp)
    }

    /// v_p of the center, or `None` if the ball contains 0.
    fn center_val_outside_zero(&self) -> Option<i64> {
        if self.contains_rational(&Rational::zero()) {
            None
        } else {
            vp(&self.center, self.p)
        }
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D̄({}, {})", fmt_rational(&self.center), fmt_rational(&self.radius()))
    }
}

/// A ball of P¹(Q_p) or the complement of one (which contains ∞).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Disk {
    Ball(Ball),
    Complement(Ball),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskJson {
    pub center: String,
    pub radius: String,
    pub radius_exp: i64,
    pub complement: bool,
}

impl Disk {
    pub fn ball(p: u64, center: Rational, radius_exp: i64) -> Self {
        Disk::Ball(Ball::new(p, center, radius_exp))
    }

    pub fn complement(p: u64, center: Rational, radius_exp: i64) -> Self {
        Disk::Complement(Ball::new(p, center, radius_exp))
    }

    pub fn base(&self) -> &Ball {
        match self {
            Disk::Ball(b) | Disk::Complement(b) => b,
        }
    }

    pub fn is_complement(&self) -> bool {
        matches!(self, Disk::Complement(_))
    }

    pub fn contains(&self, x: &QPoint) -> bool {
        match (self, x) {
            (Disk::Ball(_), QPoint::Infinity) => false,
            (Disk::Complement(_), QPoint::Infinity) => true,
            (Disk::Ball(b), QPoint::Finite(q)) => b.contains_rational(q),
            (Disk::Complement(b), QPoint::Finite(q)) => !b.contains_rational(q),
        }
    }

    /// Whether self ⊆ other.
    pub fn subset_of(&self, other: &Disk) -> bool {
        match (self, other) {
            (Disk::Ball(x), Disk::Ball(y)) => y.contains_ball(x),
            (Disk::Ball(x), Disk::Complement(y)) => !x.meets(y),
            (Disk::Complement(_), Disk::Ball(_)) => false,
            (Disk::Complement(x), Disk::Complement(y)) => x.contains_ball(y),
        }
    }

    pub fn meets(&self, other: &Disk) -> bool {
        match (self, other) {
            (Disk::Ball(x), Disk::Ball(y)) => x.meets(y),
            (Disk::Ball(x), Disk::Complement(y)) | (Disk::Complement(y), Disk::Ball(x)) => !y.contains_ball(x),
            (Disk::Complement(_), Disk::Complement(_)) => true,
        }
    }

    pub fn to_json(&self) -> DiskJson {
        let b = self.base();
        DiskJson {
            center: fmt_rational(&b.center),
            radius: fmt_rational(&b.radius()),
            radius_exp: b.radius_exp,
            complement: self.is_complement(),
        }
    }

    pub fn from_json(j: &DiskJson, p: u64) -> Result<Self> {
        let c = parse_rational(&j.center)?;
        Ok(if j.complement {
            Disk::complement(p, c, j.radius_exp)
        } else {
            Disk::ball(p, c, j.radius_exp)
        })
    }

    fn reduced(self) -> Disk {
        match self {
            Disk::Ball(b) => Disk::ball(b.p, b.center, b.radius_exp),
            Disk::Complement(b) => Disk::complement(b.p, b.center, b.radius_exp),
        }
    }

    fn translate(&self, t: &Rational) -> Disk {
        let f = |b: &Ball| Ball::raw(b.p, &b.center + t, b.radius_exp);
        match self {
            Disk::Ball(b) => Disk::Ball(f(b)),
            Disk::Complement(b) => Disk::Complement(f(b)),
        }
    }

    fn scale_by(&self, s: &Rational, vs: i64) -> Disk {
        let f = |b: &Ball| Ball::raw(b.p, &b.center * s, b.radius_exp - vs);
        match self {
            Disk::Ball(b) => Disk::Ball(f(b)),
            Disk::Complement(b) => Disk::Complement(f(b)),
        }
    }

    fn invert(&self) -> Disk {
        let f = |b: &Ball| match b.center_val_outside_zero() {
            None => Disk::Complement(Ball::raw(b.p, Rational::zero(), -b.radius_exp - 1)),
            Some(v) => Disk::Ball(Ball::raw(b.p, Rational::one() / &b.center, b.radius_exp + 2 * v)),
        };
        match self {
            Disk::Ball(b) => f(b),
            Disk::Complement(b) => match f(b) {
                Disk::Ball(x) => Disk::Complement(x),
                Disk::Complement(x) => Disk::Ball(x),
            },
        }
    }
}

impl fmt::Display for Disk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Disk::Ball(b) => write!(f, "{b}"),
            Disk::Complement(b) => write!(f, "P¹∖{b}"),
        }
    }
}

/// Exact image of a disk: φ = T(a/c) ∘ S(−det/c²) ∘ Inv ∘ T(d/c) when c ≠ 0,
/// φ = T(b/d) ∘ S(a/d) otherwise.
pub fn image_of_disk(phi: &HomographicMap, disk: &Disk) -> Disk {
    DiskTransport::new(phi).image(disk)
}

/// A map with the constants of its disk decomposition precomputed.
#[derive(Clone, Debug)]
pub struct DiskTransport {
    p: u64,
    /// Translation applied before inverting; `None` for affine maps.
    pre: Option<Rational>,
    scale: Rational,
    v_scale: i64,
    post: Rational,
    small: Option<SmallTransport>,
}

/// The same constants as machine-word fractions.
#[derive(Clone, Copy, Debug)]
struct SmallTransport {
    pre: Option<Frac>,
    scale: Frac,
    post: Frac,
}

/// n/d with d > 0 and gcd(n, d) = 1.
#[derive(Clone, Copy, Debug)]
struct Frac(i128, i128);

impl Frac {
    fn of(q: &Rational) -> Option<Frac> {
        use num_traits::ToPrimitive;
        Some(Frac(q.numer().to_i128()?, q.denom().to_i128()?))
    }

    fn new(n: i128, d: i128) -> Frac {
        let g = gcd_i128(n, d).max(1) * d.signum();
        Frac(n / g, d / g)
    }

    fn add(self, o: Frac) -> Option<Frac> {
        let n = self.0.checked_mul(o.1)?.checked_add(o.0.checked_mul(self.1)?)?;
        Some(Frac::new(n, self.1.checked_mul(o.1)?))
    }

    fn mul(self, o: Frac) -> Option<Frac> {
        Some(Frac::new(self.0.checked_mul(o.0)?, self.1.checked_mul(o.1)?))
    }

    fn vp(self, p: u64) -> Option<i64> {
        let v = |mut x: i128| {
            let mut k = 0;
            while x % p as i128 == 0 {
                x /= p as i128;
                k += 1;
            }
            k
        };
        (self.0 != 0).then(|| v(self.0) - v(self.1))
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl DiskTransport {
    pub fn new(phi: &HomographicMap) -> Self {
        let (a, b, c, d) = (phi.a(), phi.b(), phi.c(), phi.d());
        let (pre, scale, post) = if c.is_zero() {
            (None, a / d, b / d)
        } else {
            (Some(d / c), -phi.det() / (c * c), a / c)
        };
        let v_scale = vp(&scale, phi.p).unwrap();
        let small = (|| {
            let pre = match &pre {
                Some(t) => Some(Frac::of(t)?),
                None => None,
            };
            Some(SmallTransport { pre, scale: Frac::of(&scale)?, post: Frac::of(&post)? })
        })();
        DiskTransport { p: phi.p, pre, scale, v_scale, post, small }
    }

    pub fn image(&self, disk: &Disk) -> Disk {
        if let Some(d) = self.small.and_then(|s| self.image_small(&s, disk)) {
            return d;
        }
        self.image_big(disk)
    }

    fn image_big(&self, disk: &Disk) -> Disk {
        let moved = match &self.pre {
            None => disk.scale_by(&self.scale, self.v_scale),
            Some(t) => disk.translate(t).invert().scale_by(&self.scale, self.v_scale),
        };
        moved.translate(&self.post).reduced()
    }

    fn image_small(&self, s: &SmallTransport, disk: &Disk) -> Option<Disk> {
        let b = disk.base();
        let mut c = Frac::of(&b.center)?;
        let mut r = b.radius_exp;
        let mut comp = disk.is_complement();
        if let Some(t) = s.pre {
            c = c.add(t)?;
            match c.vp(self.p) {
                Some(v) if v < -r => {
                    c = Frac::new(c.1, c.0);
                    r += 2 * v;
                }
                _ => {
                    c = Frac(0, 1);
                    r = -r - 1;
                    comp = !comp;
                }
            }
        }
        c = c.mul(s.scale)?.add(s.post)?;
        let center = rational::reduce_mod_pj_i128(c.0, c.1, self.p, -(r - self.v_scale))?;
        let ball = Ball { p: self.p, center, radius_exp: r - self.v_scale };
        Some(if comp { Disk::Complement(ball) } else { Disk::Ball(ball) })
    }
}

/// A homography of P¹(K).
#[derive(Clone, Debug)]
pub struct ExtMobius {
    pub a: ExtElement,
    pub b: ExtElement,
    pub c: ExtElement,
    pub d: ExtElement,
}

/// Disk of P¹(K): closed disk or its complement.
#[derive(Clone, Debug)]
pub enum ExtDiskShape {
    Ball(ExtElement, HalfPow),
    Complement(ExtElement, HalfPow),
}

impl ExtDiskShape {
    pub fn from_disk(disk: &Disk, radicand: &crate::quad_ext::CanonicalRadicand, prec: u32) -> Result<Self> {
        let b = disk.base();
        let c = ExtElement::from_rationals(radicand, &b.center, &Rational::zero(), prec)?;
        let r = HalfPow { half: 2 * b.radius_exp };
        Ok(if disk.is_complement() {
            ExtDiskShape::Complement(c, r)
        } else {
            ExtDiskShape::Ball(c, r)
        })
    }

    pub fn contains(&self, x: &ExtElement) -> Result<bool> {
        let (c, r, comp) = match self {
            ExtDiskShape::Ball(c, r) => (c, r, false),
            ExtDiskShape::Complement(c, r) => (c, r, true),
        };
        let inside = match x.sub(c)?.twice_val()? {
            None => true,
            Some(tv) => -tv <= r.half,
        };
        Ok(inside != comp)
    }

    pub fn radius(&self) -> HalfPow {
        match self {
            ExtDiskShape::Ball(_, r) | ExtDiskShape::Complement(_, r) => *r,
        }
    }

    fn step(c: &ExtElement) -> i64 {
        2 / c.radicand.e as i64
    }

    fn normalize(c: ExtElement, r: HalfPow) -> (ExtElement, HalfPow) {
        let half = if c.radicand.e == 1 { r.half.div_euclid(2) * 2 } else { r.half };
        (c, HalfPow { half })
    }

    fn map_ball(&self, f: impl Fn(&ExtElement, HalfPow) -> Result<ExtDiskShape>) -> Result<ExtDiskShape> {
        match self {
            ExtDiskShape::Ball(c, r) => f(c, *r),
            ExtDiskShape::Complement(c, r) => Ok(match f(c, *r)? {
                ExtDiskShape::Ball(x, s) => ExtDiskShape::Complement(x, s),
                ExtDiskShape::Complement(x, s) => ExtDiskShape::Ball(x, s),
            }),
        }
    }

    fn translate(&self, t: &ExtElement) -> Result<ExtDiskShape> {
        self.map_ball(|c, r| Ok(ExtDiskShape::Ball(c.add(t)?, r)))
    }

    fn scale(&self, s: &ExtElement) -> Result<ExtDiskShape> {
        let tv = s.twice_val()?.ok_or(Error::DivisionByZero)?;
        self.map_ball(|c, r| {
            let (c, r) = Self::normalize(c.mul(s)?, HalfPow { half: r.half - tv });
            Ok(ExtDiskShape::Ball(c, r))
        })
    }

    fn invert(&self) -> Result<ExtDiskShape> {
        self.map_ball(|c, r| {
            let ctv = c.twice_val()?;
            let holds_zero = match ctv {
                None => true,
                Some(tv) => -tv <= r.half,
            };
            if holds_zero {
                let zero = ExtElement::from_i64(&c.radicand, 0, 0, c.precision())?;
                let (z, s) = Self::normalize(zero, HalfPow { half: -r.half - Self::step(c) });
                Ok(ExtDiskShape::Complement(z, s))
            } else {
                let (z, s) = Self::normalize(c.inverse()?, HalfPow { half: r.half + 2 * ctv.unwrap() });
                Ok(ExtDiskShape::Ball(z, s))
            }
        })
    }
}

impl ExtMobius {
    pub fn from_map(phi: &HomographicMap, radicand: &crate::quad_ext::CanonicalRadicand, prec: u32) -> Result<Self> {
        let e = |q: &Rational| ExtElement::from_rationals(radicand, q, &Rational::zero(), prec);
        Ok(ExtMobius { a: e(phi.a())?, b: e(phi.b())?, c: e(phi.c())?, d: e(phi.d())? })
    }

    pub fn det(&self) -> Result<ExtElement> {
        self.a.mul(&self.d)?.sub(&self.b.mul(&self.c)?)
    }

    pub fn apply(&self, x: &ExtElement) -> Result<Option<ExtElement>> {
        let den = self.c.mul(x)?.add(&self.d)?;
        if den.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.a.mul(x)?.add(&self.b)?.div(&den)?))
    }

    pub fn image_of_disk(&self, disk: &ExtDiskShape) -> Result<ExtDiskShape> {
        if self.c.is_zero() {
            return disk.scale(&self.a.div(&self.d)?)?.translate(&self.b.div(&self.d)?);
        }
        let c2 = self.c.mul(&self.c)?;
        let s = self.det()?.neg().div(&c2)?;
        disk.translate(&self.d.div(&self.c)?)?
            .invert()?
            .scale(&s)?
            .translate(&self.a.div(&self.c)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn golden(p: u64) -> HomographicMap {
        HomographicMap::from_ints(0, 1, 1, 1, p).unwrap()
    }

    #[test]
    fn chordal_examples() {
        let z = |q: Rational| ProjPoint::Finite(PadicNumber::from_rational(&q, 3, 20).unwrap());
        assert_eq!(chordal_distance(&z(int(0)), &ProjPoint::Infinity).unwrap(), Some(HalfPow { half: 0 }));
        assert_eq!(chordal_distance(&z(int(1)), &z(int(4))).unwrap(), Some(HalfPow { half: -2 }));
        assert_eq!(chordal_distance(&z(rat(1, 3)), &ProjPoint::Infinity).unwrap(), Some(HalfPow { half: -2 }));
    }

    #[test]
    fn apply_examples() {
        let f = golden(3);
        assert_eq!(f.apply_exact(&QPoint::Infinity), QPoint::int(0));
        assert_eq!(f.apply_exact(&QPoint::int(-1)), QPoint::Infinity);
        let id = HomographicMap::from_ints(2, 0, 0, 2, 3).unwrap();
        assert!(id.is_identity());
        assert_eq!(id.apply_exact(&QPoint::Finite(rat(5, 7))), QPoint::Finite(rat(5, 7)));
    }

    #[test]
    fn inverse_composes_to_scalar() {
        let f = HomographicMap::from_ints(2, 3, -1, 5, 5).unwrap();
        assert!(f.compose(&f.invert()).unwrap().is_identity());
    }

    #[test]
    fn small_transport_agrees_with_exact() {
        for (c, p) in [([0, 1, 1, 1], 3), ([2, 3, -1, 5], 5), ([7, -4, -2, -3], 7), ([9, 0, 0, 4], 2), ([1, 6, 0, 1], 3)] {
            let phi = HomographicMap::from_ints(c[0], c[1], c[2], c[3], p).unwrap();
            let t = DiskTransport::new(&phi);
            for n in -40..40 {
                for k in -3..4 {
                    for comp in [false, true] {
                        let center = rat(n, 1 + 2 * p as i64) * pow_p_rat(p, k);
                        let d = if comp { Disk::complement(p, center, k - 1) } else { Disk::ball(p, center, k - 2) };
                        assert_eq!(t.image(&d), t.image_big(&d), "{phi} {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn disk_transport_cases() {
        let inv = HomographicMap::from_ints(0, 1, 1, 0, 3).unwrap();
        let d = Disk::ball(3, int(0), -2);
        assert_eq!(image_of_disk(&inv, &d), Disk::complement(3, int(0), 1));
        let scale = HomographicMap::from_ints(9, 0, 0, 1, 3).unwrap();
        assert_eq!(image_of_disk(&scale, &Disk::ball(3, int(1), -1)), Disk::ball(3, int(9), -3));
        assert_eq!(image_of_disk(&inv, &Disk::ball(3, int(3), -2)), Disk::ball(3, rat(1, 3), 0));
    }
}
