//! Elements of Q_p at a fixed working precision.
//!
//! A nonzero element is `p^valuation * unit` where the unit is known modulo
//! `p^precision`. Zero is a distinguished value. Elements built from
//! rationals also keep the exact rational so later tests can be exact.

use crate::error::{Error, Result};
use crate::rational::{self, check_prime, mod_inverse, pow_p, vp, Rational};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

pub const DEFAULT_PRECISION: u32 = 64;

#[derive(Clone, Debug)]
pub struct PadicNumber {
    prime: u64,
    valuation: Option<i64>,
    unit: BigUint,
    precision: u32,
    zero_abs: Option<i64>,
    exact: Option<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

impl PadicNumber {
    pub fn from_rational(q: &Rational, p: u64, precision: u32) -> Result<Self> {
        check_prime(p)?;
        if precision == 0 {
            return Err(Error::Config("precision must be positive".into()));
        }
        match vp(q, p) {
            None => Ok(Self::exact_zero(p, precision)),
            Some(v) => {
                let unit_q = q * rational::pow_p_rat(p, -v);
                let unit = rational::residue(&unit_q, p, precision).expect("unit");
                Ok(PadicNumber {
                    prime: p,
                    valuation: Some(v),
                    unit,
                    precision,
                    zero_abs: None,
                    exact: Some(q.clone()),
                })
            }
        }
    }

    pub fn from_i64(n: i64, p: u64, precision: u32) -> Result<Self> {
        Self::from_rational(&rational::int(n), p, precision)
    }

    pub fn exact_zero(p: u64, precision: u32) -> Self {
        PadicNumber {
            prime: p,
            valuation: None,
            unit: BigUint::zero(),
            precision,
            zero_abs: None,
            exact: Some(Rational::zero()),
        }
    }

    fn inexact_zero(p: u64, precision: u32, abs: i64) -> Self {
        PadicNumber {
            prime: p,
            valuation: None,
            unit: BigUint::zero(),
            precision,
            zero_abs: Some(abs),
            exact: None,
        }
    }

    /// Build from a unit residue and a valuation; the residue is reduced and
    /// its own p-part is absorbed into the valuation.
    pub fn from_parts(p: u64, valuation: i64, unit: BigUint, precision: u32) -> Result<Self> {
        check_prime(p)?;
        let m = pow_p(p, precision);
        let u = unit % &m;
        if u.is_zero() {
            return Ok(Self::inexact_zero(p, precision, valuation + precision as i64));
        }
        let pb = BigUint::from(p);
        let mut u = u;
        let mut v = valuation;
        let mut prec = precision;
        while (&u % &pb).is_zero() {
            u /= &pb;
            v += 1;
            prec -= 1;
        }
        Ok(PadicNumber {
            prime: p,
            valuation: Some(v),
            unit: u,
            precision: prec,
            zero_abs: None,
            exact: None,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// `None` stands for the +∞ valuation of zero.
    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn exact(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    pub fn unit_residue(&self) -> &BigUint {
        &self.unit
    }

    /// Absolute precision: the value is known modulo `p^abs`.
    pub fn absolute_precision(&self) -> Option<i64> {
        match self.valuation {
            Some(v) => Some(v + self.precision as i64),
            None => self.zero_abs,
        }
    }

    pub fn digits(&self) -> Vec<u64> {
        let p = BigUint::from(self.prime);
        let mut u = self.unit.clone();
        let mut out = Vec::with_capacity(self.precision as usize);
        if self.is_zero() {
            return out;
        }
        for _ in 0..self.precision {
            let (q, r) = u.div_rem(&p);
            out.push(r.to_u64().unwrap());
            u = q;
        }
        out
    }

    pub fn without_exact(&self) -> Self {
        let mut c = self.clone();
        if c.is_zero() && c.zero_abs.is_none() {
            c.zero_abs = Some(c.precision as i64);
        }
        c.exact = None;
        c
    }

    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        if let Some(q) = &self.exact {
            return Self::from_rational(q, self.prime, precision);
        }
        if precision > self.precision {
            return Err(Error::Precision(format!(
                "cannot raise precision from {} to {precision}",
                self.precision
            )));
        }
        let mut c = self.clone();
        c.unit = &c.unit % pow_p(c.prime, precision);
        c.precision = precision;
        Ok(c)
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.prime != o.prime {
            return Err(Error::PrimeMismatch(self.prime, o.prime));
        }
        Ok(())
    }

    /// Signed value of the unit times p^(v - base) as an integer.
    fn scaled(&self, base: i64) -> BigInt {
        let shift = (self.valuation.unwrap() - base) as u32;
        BigInt::from_biguint(Sign::Plus, &self.unit * pow_p(self.prime, shift))
    }

    pub fn arith(&self, o: &Self, op: Op) -> Result<Self> {
        self.check_same(o)?;
        let p = self.prime;
        let prec = self.precision.max(o.precision);
        if let (Some(x), Some(y)) = (&self.exact, &o.exact) {
            let r = match op {
                Op::Add => x + y,
                Op::Sub => x - y,
                Op::Mul => x * y,
                Op::Div => {
                    if y.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    x / y
                }
            };
            return Self::from_rational(&r, p, prec);
        }
        match op {
            Op::Add | Op::Sub => self.add_sub(o, op == Op::Sub),
            Op::Mul => self.mul_inexact(o),
            Op::Div => {
                if o.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                self.mul_inexact(&o.inverse()?)
            }
        }
    }

    fn add_sub(&self, o: &Self, negate: bool) -> Result<Self> {
        let p = self.prime;
        let prec = self.precision.max(o.precision);
        let abs = match (self.absolute_precision(), o.absolute_precision()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if self.is_zero() {
            let r = if negate { o.neg() } else { o.clone() };
            return Ok(r.truncate_abs(abs));
        }
        if o.is_zero() {
            return Ok(self.truncate_abs(abs));
        }
        let abs = abs.expect("nonzero operands have finite absolute precision");
        let base = self.valuation.unwrap().min(o.valuation.unwrap());
        if abs <= base {
            return Ok(Self::inexact_zero(p, prec, abs));
        }
        let modulus = BigInt::from(pow_p(p, (abs - base) as u32));
        let y = o.scaled(base);
        let s = if negate { self.scaled(base) - y } else { self.scaled(base) + y };
        let s = s.mod_floor(&modulus);
        if s.is_zero() {
            return Ok(Self::inexact_zero(p, prec, abs));
        }
        let s = s.to_biguint().unwrap();
        let t = rational::vp_int(&BigInt::from(s.clone()), p).unwrap();
        let unit = s / pow_p(p, t as u32);
        Ok(PadicNumber {
            prime: p,
            valuation: Some(base + t),
            unit,
            precision: (abs - base - t) as u32,
            zero_abs: None,
            exact: None,
        })
    }

    fn truncate_abs(&self, abs: Option<i64>) -> Self {
        let abs = match abs {
            Some(a) => a,
            None => return self.clone(),
        };
        if self.is_zero() {
            return Self::inexact_zero(self.prime, self.precision, abs);
        }
        let v = self.valuation.unwrap();
        if abs <= v {
            return Self::inexact_zero(self.prime, self.precision, abs);
        }
        let keep = ((abs - v) as u32).min(self.precision);
        let mut c = self.clone();
        c.unit = &c.unit % pow_p(c.prime, keep);
        c.precision = keep;
        c.exact = None;
        c
    }

    fn mul_inexact(&self, o: &Self) -> Result<Self> {
        let p = self.prime;
        match (self.valuation, o.valuation) {
            (Some(a), Some(b)) => {
                let prec = self.precision.min(o.precision);
                let unit = (&self.unit * &o.unit) % pow_p(p, prec);
                Ok(PadicNumber {
                    prime: p,
                    valuation: Some(a + b),
                    unit,
                    precision: prec,
                    zero_abs: None,
                    exact: None,
                })
            }
            (None, other) | (other, None) => {
                let z = if self.is_zero() { self } else { o };
                let nz = if self.is_zero() { o } else { self };
                match (z.zero_abs, other) {
                    (None, _) => Ok(Self::exact_zero(p, z.precision)),
                    (Some(za), Some(v)) => Ok(Self::inexact_zero(p, z.precision, za + v)),
                    (Some(za), None) => {
                        let extra = nz.zero_abs.unwrap_or(0);
                        Ok(Self::inexact_zero(p, z.precision, za + extra))
                    }
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        let mut c = self.clone();
        if !c.is_zero() {
            let m = pow_p(c.prime, c.precision);
            c.unit = (&m - &c.unit) % &m;
        }
        c.exact = c.exact.map(|q| -q);
        c
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = &self.exact {
            return Self::from_rational(&(Rational::one() / q), self.prime, self.precision);
        }
        let m = BigInt::from(pow_p(self.prime, self.precision));
        let inv = mod_inverse(&BigInt::from(self.unit.clone()), &m).expect("unit");
        Ok(PadicNumber {
            prime: self.prime,
            valuation: Some(-self.valuation.unwrap()),
            unit: inv.to_biguint().unwrap(),
            precision: self.precision,
            zero_abs: None,
            exact: None,
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.arith(o, Op::Add)
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.arith(o, Op::Sub)
    }
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.arith(o, Op::Mul)
    }
    pub fn div(&self, o: &Self) -> Result<Self> {
        self.arith(o, Op::Div)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::from_i64(1, self.prime, self.precision)?;
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `v_p(x - y) >= n`; false whenever precision cannot certify it.
    pub fn eq_to_precision(&self, o: &Self, n: i64) -> bool {
        match self.sub(o) {
            Ok(d) => match d.valuation {
                Some(v) => v >= n,
                None => d.zero_abs.map(|a| a >= n).unwrap_or(true),
            },
            Err(_) => false,
        }
    }

    /// Value modulo `p^k` for an element of Z_p.
    pub fn residue_mod(&self, k: u32) -> Result<BigUint> {
        let m = pow_p(self.prime, k);
        match self.valuation {
            None => {
                if self.zero_abs.map(|a| a >= k as i64).unwrap_or(true) {
                    Ok(BigUint::zero())
                } else {
                    Err(Error::Precision("zero known to insufficient precision".into()))
                }
            }
            Some(v) if v < 0 => Err(Error::Domain("element is not p-integral".into())),
            Some(v) => {
                if let Some(q) = &self.exact {
                    return Ok(rational::residue(q, self.prime, k).unwrap());
                }
                if v + (self.precision as i64) < k as i64 {
                    return Err(Error::Precision(format!(
                        "value known only modulo p^{}",
                        v + self.precision as i64
                    )));
                }
                if v >= k as i64 {
                    return Ok(BigUint::zero());
                }
                Ok((&self.unit * pow_p(self.prime, v as u32)) % m)
            }
        }
    }

    /// Signed residue representative as a rational, useful for building
    /// exact approximations.
    pub fn to_rational_approx(&self) -> Rational {
        if let Some(q) = &self.exact {
            return q.clone();
        }
        match self.valuation {
            None => Rational::zero(),
            Some(v) => {
                Rational::from_integer(BigInt::from(self.unit.clone())) * rational::pow_p_rat(self.prime, v)
            }
        }
    }

    pub fn to_text(&self) -> String {
        let p = self.prime;
        if self.is_zero() {
            return match self.zero_abs {
                None => "0".to_string(),
                Some(a) => format!("O({p}^{a})"),
            };
        }
        let terms: Vec<String> = self
            .digits()
            .iter()
            .enumerate()
            .map(|(i, d)| match i {
                0 => format!("{d}"),
                1 => format!("{d}*{p}"),
                _ => format!("{d}*{p}^{i}"),
            })
            .collect();
        format!(
            "{p}^{} * ({} + O({p}^{}))",
            self.valuation.unwrap(),
            terms.join(" + "),
            self.precision
        )
    }

    pub fn parse_text(s: &str, precision_hint: u32) -> Result<Self> {
        let bad = || Error::Input(format!("malformed p-adic text '{s}'"));
        let s = s.trim();
        if s == "0" {
            return Err(Error::Input("bare '0' carries no prime; use JSON".into()));
        }
        if let Some(rest) = s.strip_prefix("O(") {
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            let (p, a) = inner.split_once('^').ok_or_else(bad)?;
            let p: u64 = p.parse().map_err(|_| bad())?;
            let a: i64 = a.parse().map_err(|_| bad())?;
            check_prime(p)?;
            return Ok(Self::inexact_zero(p, precision_hint, a));
        }
        let (head, body) = s.split_once(" * (").ok_or_else(bad)?;
        let (p, v) = head.split_once('^').ok_or_else(bad)?;
        let p: u64 = p.parse().map_err(|_| bad())?;
        let v: i64 = v.parse().map_err(|_| bad())?;
        let body = body.strip_suffix(')').ok_or_else(bad)?;
        let parts: Vec<&str> = body.split(" + ").collect();
        let (last, digit_terms) = parts.split_last().ok_or_else(bad)?;
        let prec_str = last
            .strip_prefix(&format!("O({p}^"))
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(bad)?;
        let precision: u32 = prec_str.parse().map_err(|_| bad())?;
        let mut digits = Vec::new();
        for t in digit_terms {
            let d = t.split('*').next().ok_or_else(bad)?;
            digits.push(d.parse::<u64>().map_err(|_| bad())?);
        }
        Self::from_digits(p, v, &digits, precision)
    }

    pub fn from_digits(p: u64, valuation: i64, digits: &[u64], precision: u32) -> Result<Self> {
        check_prime(p)?;
        if digits.len() != precision as usize {
            return Err(Error::Input("digit count must equal precision".into()));
        }
        if digits.iter().any(|d| *d >= p) {
            return Err(Error::Input("digit out of range".into()));
        }
        if digits.first().copied().unwrap_or(0) == 0 {
            return Err(Error::Input("leading digit of a nonzero element must be nonzero".into()));
        }
        let mut unit = BigUint::zero();
        for d in digits.iter().rev() {
            unit = unit * BigUint::from(p) + BigUint::from(*d);
        }
        Ok(PadicNumber {
            prime: p,
            valuation: Some(valuation),
            unit,
            precision,
            zero_abs: None,
            exact: None,
        })
    }

    pub fn to_json(&self) -> PadicJson {
        PadicJson {
            p: self.prime,
            valuation: self.valuation,
            digits: self.digits(),
            precision: self.precision,
            zero_abs: self.zero_abs,
            exact: self.exact.as_ref().map(rational::fmt_rational),
        }
    }

    pub fn from_json(j: &PadicJson) -> Result<Self> {
        let exact = j.exact.as_deref().map(rational::parse_rational).transpose()?;
        match j.valuation {
            None => {
                let mut z = match j.zero_abs {
                    None => Self::exact_zero(j.p, j.precision),
                    Some(a) => Self::inexact_zero(j.p, j.precision, a),
                };
                z.exact = exact.filter(|_| j.zero_abs.is_none());
                Ok(z)
            }
            Some(v) => {
                let mut x = Self::from_digits(j.p, v, &j.digits, j.precision)?;
                x.exact = exact;
                Ok(x)
            }
        }
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Bit-exact JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicJson {
    pub p: u64,
    pub valuation: Option<i64>,
    pub digits: Vec<u64>,
    pub precision: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_abs: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut bb = (b % m) as u128;
    let mm = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    b = r as u64;
    b
}

/// Quadratic residue test for a unit: modulo p when p is odd, modulo 8 when p = 2.
pub fn is_quadratic_residue(u: &BigInt, p: u64) -> Result<bool> {
    check_prime(p)?;
    if p == 2 {
        if u.is_even() {
            return Err(Error::Domain(format!("{u} is not a 2-adic unit")));
        }
        return Ok(u.mod_floor(&BigInt::from(8)) == BigInt::one());
    }
    let r = u.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    if r == 0 {
        return Err(Error::Domain(format!("{u} is not a {p}-adic unit")));
    }
    Ok(pow_mod(r, (p - 1) / 2, p) == 1)
}

/// Least positive quadratic non-residue modulo an odd prime.
pub fn least_non_residue(p: u64) -> u64 {
    (2..p)
        .find(|&n| pow_mod(n, (p - 1) / 2, p) == p - 1)
        .expect("odd prime has a non-residue")
}

fn tonelli_shanks(n: u64, p: u64) -> u64 {
    if p == 2 {
        return n & 1;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = least_non_residue(p);
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulm(tt, tt);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulm(b, b);
        t = mulm(t, c);
        r = mulm(r, b);
    }
    r
}

/// Square root in Q_p, or `None` when none exists.
pub fn sqrt_in_qp(a: &PadicNumber) -> Result<Option<PadicNumber>> {
    let p = a.prime;
    if a.is_zero() {
        return Ok(Some(a.clone()));
    }
    let v = a.valuation.unwrap();
    if v % 2 != 0 {
        return Ok(None);
    }
    let prec = a.precision;
    let unit = BigInt::from(a.unit.clone());
    if p == 2 && prec < 3 {
        return Err(Error::Precision("need three 2-adic digits to decide squareness".into()));
    }
    if !is_quadratic_residue(&unit, p)? {
        return Ok(None);
    }
    let (root, root_prec) = if p == 2 {
        let mut r = BigUint::one();
        for k in 3..prec {
            let m = pow_p(2, k + 1);
            if (&r * &r) % &m != &a.unit % &m {
                r += pow_p(2, k - 1);
            }
        }
        let m = pow_p(2, prec - 1);
        let mut r = r % &m;
        if (&r % 4u32) != BigUint::one() {
            r = (&m - &r) % &m;
        }
        (r, prec - 1)
    } else {
        let r0 = tonelli_shanks((&a.unit % p).to_u64().unwrap(), p);
        let m = BigInt::from(pow_p(p, prec));
        let mut r = BigInt::from(r0);
        loop {
            let f = (&r * &r - &unit).mod_floor(&m);
            if f.is_zero() {
                break;
            }
            let inv = mod_inverse(&(BigInt::from(2) * &r).mod_floor(&m), &m).unwrap();
            r = (&r - f * inv).mod_floor(&m);
        }
        let lead = (&r % BigInt::from(p)).to_u64().unwrap();
        if lead > p - lead {
            r = (&m - &r).mod_floor(&m);
        }
        (r.to_biguint().unwrap(), prec)
    };
    let mut out = PadicNumber::from_parts(p, v / 2, root, root_prec)?;
    if let Some(q) = &a.exact {
        if let Some(s) = rational::rational_sqrt(q) {
            let pos = PadicNumber::from_rational(&s, p, root_prec)?;
            let exact = if pos.unit == out.unit { s } else { -s };
            out = PadicNumber::from_rational(&exact, p, root_prec)?;
        }
    }
    Ok(Some(out))
}
