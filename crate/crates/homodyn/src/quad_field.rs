//! Exact arithmetic in Q(√D) for a squarefree integer D ≠ 0, 1.

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadRational {
    d: BigInt,
    a: Rational,
    b: Rational,
}

/// Squarefree kernel and square part: n = s² · core with core squarefree.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut core = BigInt::one();
    let mut s = BigInt::one();
    let mut f = BigInt::from(2);
    while &f * &f <= m {
        let mut e = 0u32;
        while (&m % &f).is_zero() {
            m /= &f;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= &f;
        }
        if e % 2 == 1 {
            core *= &f;
        }
        f += 1;
    }
    core *= m;
    (core * sign, s)
}

/// Write a nonzero rational as r² · D with D a squarefree integer.
pub fn rational_squarefree(q: &Rational) -> (BigInt, Rational) {
    let n = q.numer() * q.denom();
    let (core, s) = squarefree_decompose(&n);
    (core, Rational::new(s, q.denom().clone()))
}

impl QuadRational {
    pub fn new(d: BigInt, a: Rational, b: Rational) -> Self {
        QuadRational { d, a, b }
    }

    pub fn rational(d: &BigInt, a: Rational) -> Self {
        QuadRational { d: d.clone(), a, b: Rational::zero() }
    }

    pub fn sqrt_d(d: &BigInt) -> Self {
        QuadRational { d: d.clone(), a: Rational::zero(), b: Rational::one() }
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }
    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn same(&self, o: &Self) {
        assert_eq!(self.d, o.d, "quadratic field mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same(o);
        QuadRational { d: self.d.clone(), a: &self.a + &o.a, b: &self.b + &o.b }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same(o);
        QuadRational { d: self.d.clone(), a: &self.a - &o.a, b: &self.b - &o.b }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same(o);
        let dd = Rational::from_integer(self.d.clone());
        QuadRational {
            d: self.d.clone(),
            a: &self.a * &o.a + dd * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    pub fn add_rational(&self, q: &Rational) -> Self {
        QuadRational { d: self.d.clone(), a: &self.a + q, b: self.b.clone() }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QuadRational { d: self.d.clone(), a: &self.a * q, b: &self.b * q }
    }

    pub fn conj(&self) -> Self {
        QuadRational { d: self.d.clone(), a: self.a.clone(), b: -self.b.clone() }
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(self.d.clone()) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rational {
        &self.a * Rational::from_integer(BigInt::from(2))
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&(Rational::one() / n)))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = QuadRational::rational(&self.d, Rational::one());
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// v_p of the norm; `None` for zero.
    pub fn norm_valuation(&self, p: u64) -> Option<i64> {
        rational::vp(&self.norm(), p)
    }

    /// Least n ∈ {1,2,3,4,6} with xⁿ = 1, the only torsion orders possible
    /// in a quadratic field.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        [1u32, 2, 3, 4, 6].into_iter().find(|&n| self.pow(n as u64).is_one())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.a.to_f64().unwrap_or(f64::NAN),
            self.b.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for QuadRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = rational::fmt_rational(&self.a);
        if self.b.is_zero() {
            return write!(f, "{a}");
        }
        let b = rational::fmt_rational(&self.b.abs());
        let sign = if self.b.is_negative() { "-" } else { "+" };
        write!(f, "{a} {sign} {b}*sqrt({})", self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn five() -> BigInt {
        BigInt::from(5)
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_decompose(&BigInt::from(-12)), (BigInt::from(-3), BigInt::from(2)));
        let (d, r) = rational_squarefree(&rat(5, 4));
        assert_eq!((d, r), (BigInt::from(5), rat(1, 2)));
        let (d, r) = rational_squarefree(&rat(1, 3));
        assert_eq!((d, r), (BigInt::from(3), rat(1, 3)));
    }

    #[test]
    fn lambda_of_golden_map() {
        let s = QuadRational::sqrt_d(&five());
        let num = s.add_rational(&int(1));
        let den = s.scale(&int(-1)).add_rational(&int(1));
        let lam = num.div(&den).unwrap();
        assert_eq!(lam, QuadRational::new(five(), rat(-3, 2), rat(-1, 2)));
        assert_eq!(lam.pow(2), QuadRational::new(five(), rat(7, 2), rat(3, 2)));
        assert_eq!(lam.pow(4), QuadRational::new(five(), rat(47, 2), rat(21, 2)));
        assert_eq!(lam.pow(3), QuadRational::new(five(), int(-9), int(-4)));
        assert_eq!(lam.pow(6), QuadRational::new(five(), int(161), int(72)));
        assert_eq!(lam.norm(), int(1));
        assert_eq!(lam.root_of_unity_order(), None);
    }

    #[test]
    fn torsion() {
        let d = BigInt::from(-3);
        let w = QuadRational::new(d, rat(-1, 2), rat(1, 2));
        assert_eq!(w.root_of_unity_order(), Some(3));
        let i = QuadRational::sqrt_d(&BigInt::from(-1));
        assert_eq!(i.root_of_unity_order(), Some(4));
    }
}
