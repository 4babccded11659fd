//! Exact rational helpers shared by every module.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Config(format!("{p} is not prime")))
    }
}

/// `p^k` as a big integer.
pub fn pow_p(p: u64, k: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), k as usize)
}

/// `p^k` as a rational, negative exponents allowed.
pub fn pow_p_rat(p: u64, k: i64) -> Rational {
    let m = BigInt::from(pow_p(p, k.unsigned_abs() as u32));
    if k >= 0 {
        Rational::from_integer(m)
    } else {
        Rational::new(BigInt::one(), m)
    }
}

/// v_p of a nonzero integer; `None` for zero.
pub fn vp_int(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

pub fn vp(q: &Rational, p: u64) -> Option<i64> {
    let a = vp_int(q.numer(), p)?;
    let b = vp_int(q.denom(), p).unwrap_or(0);
    Some(a - b)
}

/// Strip the power of p: returns (v, unit part) with q = p^v * unit.
pub fn split_p(q: &Rational, p: u64) -> Option<(i64, Rational)> {
    let v = vp(q, p)?;
    Some((v, q * pow_p_rat(p, -v)))
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

/// Residue of a p-integral rational modulo p^k, in `[0, p^k)`.
pub fn residue(q: &Rational, p: u64, k: u32) -> Option<BigUint> {
    if vp(q, p).map(|v| v < 0).unwrap_or(false) {
        return None;
    }
    let m = BigInt::from(pow_p(p, k));
    let inv = mod_inverse(&q.denom().mod_floor(&m), &m)?;
    let r = (q.numer() * inv).mod_floor(&m);
    r.to_biguint()
}

pub fn residue_u64(q: &Rational, p: u64, k: u32) -> Option<u64> {
    residue(q, p, k).and_then(|r| r.to_u64())
}

/// Canonical representative of `q + p^j Z_p` inside `Z[1/p] ∩ [0, p^j)`.
pub fn reduce_mod_pj(q: &Rational, p: u64, j: i64) -> Rational {
    if let Some(r) = reduce_mod_pj_small(q, p, j) {
        return r;
    }
    let v = match vp(q, p) {
        None => return Rational::zero(),
        Some(v) => v,
    };
    if v >= j {
        return Rational::zero();
    }
    let unit = q * pow_p_rat(p, -v);
    let r = residue(&unit, p, (j - v) as u32).expect("unit is p-integral");
    Rational::from_integer(BigInt::from_biguint(Sign::Plus, r)) * pow_p_rat(p, v)
}

/// `reduce_mod_pj` in machine words; `None` when the numbers do not fit.
fn reduce_mod_pj_small(q: &Rational, p: u64, j: i64) -> Option<Rational> {
    reduce_mod_pj_i128(q.numer().to_i128()?, q.denom().to_i128()?, p, j)
}

/// `reduce_mod_pj` of n/d, d ≠ 0, in machine words.
pub(crate) fn reduce_mod_pj_i128(mut n: i128, mut d: i128, p: u64, j: i64) -> Option<Rational> {
    if n == 0 {
        return Some(Rational::zero());
    }
    let pi = p as i128;
    let mut v = 0i64;
    while n % pi == 0 {
        n /= pi;
        v += 1;
    }
    while d % pi == 0 {
        d /= pi;
        v -= 1;
    }
    if v >= j {
        return Some(Rational::zero());
    }
    let m = pi.checked_pow(u32::try_from(j - v).ok()?).filter(|&m| m < 1 << 62)?;
    let r = (n.rem_euclid(m) * inv_mod_i128(d.rem_euclid(m), m)?).rem_euclid(m);
    let pv = BigInt::from(p).pow(v.unsigned_abs() as u32);
    // r is prime to p, so r/p^|v| is already in lowest terms.
    Some(if v >= 0 {
        Rational::from_integer(BigInt::from(r) * pv)
    } else {
        Rational::new_raw(BigInt::from(r), pv)
    })
}

fn inv_mod_i128(a: i128, m: i128) -> Option<i128> {
    let (mut r0, mut r1) = (m, a);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Input(format!("malformed rational '{s}'"));
    if s.is_empty() {
        return Err(bad());
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Input(format!("zero denominator in '{s}'")));
    }
    Ok(Rational::new(n, d))
}

pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Integer square root test for rationals.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().to_biguint()?;
    let d = q.denom().to_biguint()?;
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &sn * &sn == n && &sd * &sd == d {
        Some(Rational::new(BigInt::from(sn), BigInt::from(sd)))
    } else {
        None
    }
}

pub mod serde_rational {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_rational_vec {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(q: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        q.iter().map(fmt_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
