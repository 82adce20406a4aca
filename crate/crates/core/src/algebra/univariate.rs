//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Coefficients in ascending order; no trailing zeros are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
    field: Field,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>, field: Field) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        UniPoly { coeffs, field }
    }

    pub fn zero(field: Field) -> Self {
        UniPoly { coeffs: vec![], field }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        let field = c.field();
        Self::new(vec![c], field)
    }

    /// The polynomial `x`.
    pub fn x(field: Field) -> Self {
        Self::new(vec![field.zero(), field.one()], field)
    }

    /// `x - r`.
    pub fn linear_root(r: &Scalar) -> Self {
        let f = r.field();
        Self::new(vec![-r, f.one()], f)
    }

    pub fn from_i64(coeffs: &[i64], field: Field) -> Self {
        Self::new(coeffs.iter().map(|&c| field.from_i64(c)).collect(), field)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.field)
    }

    pub fn monic(&self) -> Self {
        match self.lead().inv() {
            Some(li) => self.scale(&li),
            None => self.clone(),
        }
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.field.zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c, self.field)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a * &self.field.from_i64(i as i64))
            .collect();
        Self::new(c, self.field)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let li = d.lead().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &li;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = &r[i + j] - &(&c * dc);
            }
            q[i] = c;
        }
        (Self::new(q, self.field), Self::new(r, self.field))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal("inexact univariate division".into()))
        }
    }

    /// Monic gcd; zero when both inputs are zero.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let f = a.field;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.lead().inv() {
            Some(li) => (r0.scale(&li), s0.scale(&li), t0.scale(&li)),
            None => (r0, s0, t0),
        }
    }

    /// `f / gcd(f, f')`. In positive characteristic this is only meaningful
    /// below degree `q`, which covers every use in this crate.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("squarefree part of 0".into()));
        }
        let g = Self::gcd(self, &self.derivative());
        if g.is_zero() {
            return Ok(self.monic());
        }
        Ok(self.exact_div(&g)?.monic())
    }

    /// Yun's squarefree decomposition: `f = c * prod a_i^i`, returned as `(a_i, i)`
    /// with nonconstant monic `a_i`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Self, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("squarefree decomposition of 0".into()));
        }
        let mut out = vec![];
        if self.is_constant() {
            return Ok(out);
        }
        let fp = self.derivative();
        let a0 = Self::gcd(self, &fp);
        let mut b = self.exact_div(&a0)?;
        let mut c = fp.exact_div(&a0)?;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = Self::gcd(&b, &d);
            b = b.exact_div(&a)?;
            c = d.exact_div(&a)?;
            d = &c - &b.derivative();
            if !a.is_constant() {
                out.push((a.monic(), i));
            }
            i += 1;
        }
        Ok(out)
    }

    /// `(total with multiplicity, distinct)` root counts over the algebraic closure.
    pub fn root_count(&self) -> Result<(usize, usize)> {
        let sf = self.squarefree_part()?;
        Ok((self.deg0(), sf.deg0()))
    }

    pub fn powmod(&self, e: &num_bigint::BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(m);
            if e.bit(i) {
                acc = (&acc * &base).rem(m);
            }
        }
        acc
    }

    /// Rational roots of a polynomial over Q, found by numerically locating
    /// real roots and confirming rational candidates exactly.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        if self.field != Field::Rational || self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let f = self.monic();
        let mut found: Vec<BigRational> = vec![];
        let mut rest = f.clone();
        // zero root first
        while !rest.is_zero() && rest.coeff(0).is_zero() {
            found.push(BigRational::zero());
            rest = rest.exact_div(&Self::x(self.field)).unwrap();
        }
        // Denominators of rational roots of the primitive integer version divide its leading coefficient.
        let lead_bound = integer_lead(&rest);
        for approx in approximate_real_roots(&rest) {
            for cand in convergents(approx, &lead_bound) {
                let s = Scalar::Rat(cand.clone());
                while rest.degree().unwrap_or(0) > 0 && rest.eval(&s).is_zero() {
                    rest = rest.exact_div(&Self::linear_root(&s)).unwrap();
                    found.push(cand.clone());
                }
            }
        }
        found.sort();
        found.dedup();
        found
    }
}

/// Leading coefficient of the primitive integer multiple.
fn integer_lead(f: &UniPoly) -> BigInt {
    let mut den = BigInt::from(1);
    for c in f.coeffs() {
        let r = c.as_rational().unwrap();
        den = num_integer::Integer::lcm(&den, r.denom());
    }
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c.as_rational().unwrap() * &den).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = num_integer::Integer::gcd(&g, c);
    }
    if g.is_zero() {
        return BigInt::from(1);
    }
    (ints.last().unwrap() / &g).abs()
}

fn approximate_real_roots(f: &UniPoly) -> Vec<f64> {
    let n = f.deg0();
    if n == 0 {
        return vec![];
    }
    let c: Vec<f64> = f.coeffs().iter().map(|s| s.to_f64()).collect();
    let lead = c[n];
    let c: Vec<f64> = c.iter().map(|x| x / lead).collect();
    // Durand-Kerner on the monic polynomial.
    let eval = |zr: f64, zi: f64| {
        let (mut ar, mut ai) = (0.0f64, 0.0f64);
        for k in (0..=n).rev() {
            let nr = ar * zr - ai * zi + c[k];
            let ni = ar * zi + ai * zr;
            ar = nr;
            ai = ni;
        }
        (ar, ai)
    };
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut roots: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            (radius * 0.9 * t.cos(), radius * 0.9 * t.sin())
        })
        .collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let (zr, zi) = roots[i];
            let (pr, pi) = eval(zr, zi);
            let (mut dr, mut di) = (1.0f64, 0.0f64);
            for (j, &(wr, wi)) in roots.iter().enumerate() {
                if i != j {
                    let (xr, xi) = (zr - wr, zi - wi);
                    let nr = dr * xr - di * xi;
                    di = dr * xi + di * xr;
                    dr = nr;
                }
            }
            let den = dr * dr + di * di;
            if den == 0.0 {
                continue;
            }
            let qr = (pr * dr + pi * di) / den;
            let qi = (pi * dr - pr * di) / den;
            roots[i] = (zr - qr, zi - qi);
            delta = delta.max(qr.abs() + qi.abs());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
        .into_iter()
        .filter(|(r, i)| i.abs() <= 1e-6 * (1.0 + r.abs()))
        .map(|(r, _)| r)
        .collect()
}

/// Continued-fraction convergents of `x` whose denominators divide `lead`.
fn convergents(x: f64, lead: &BigInt) -> Vec<BigRational> {
    let mut out = vec![];
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::from(0), BigInt::from(1));
    let (mut k0, mut k1) = (BigInt::from(1), BigInt::from(0));
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if lead.is_zero() || (lead % &k2).is_zero() {
            out.push(BigRational::new(h2.clone(), k2.clone()));
        }
        if k2.abs() > lead.abs() * 2 + 2 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        UniPoly::new(c, self.field)
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        UniPoly::new(c, self.field)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.field)
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UniPoly::new(c, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};

    fn q(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c, Field::Rational)
    }

    #[test]
    fn squarefree_counts() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let f = q(&[2, -3, 0, 1]);
        assert_eq!(f.squarefree_part().unwrap(), q(&[-2, 1, 1]));
        assert_eq!(f.root_count().unwrap(), (3, 2));
        assert_eq!(q(&[1, 0, 1]).root_count().unwrap(), (2, 2));
        assert!(UniPoly::zero(Field::Rational).root_count().is_err());
    }

    #[test]
    fn yun_decomposition() {
        // x (x-1)^2 (x+3)^3
        let f = &(&q(&[0, 1]) * &(&q(&[-1, 1]) * &q(&[-1, 1]))) * &(&(&q(&[3, 1]) * &q(&[3, 1])) * &q(&[3, 1]));
        let d = f.squarefree_decomposition().unwrap();
        assert_eq!(d, vec![(q(&[0, 1]), 1), (q(&[-1, 1]), 2), (q(&[3, 1]), 3)]);
    }

    #[test]
    fn rational_roots_found() {
        // (2x - 3)(x + 5)(x^2 + 1)
        let f = &(&q(&[-3, 2]) * &q(&[5, 1])) * &q(&[1, 0, 1]);
        let r = f.rational_roots();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&BigRational::new((-5).into(), 1.into())));
        assert!(r.contains(&BigRational::new(3.into(), 2.into())));
    }

    #[test]
    fn ext_gcd_identity() {
        let a = q(&[-1, 0, 1]);
        let b = q(&[1, 1]);
        let (g, s, t) = UniPoly::ext_gcd(&a, &b);
        assert_eq!(g, q(&[1, 1]));
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        let _ = (int(0), rat(1, 2));
    }
}
