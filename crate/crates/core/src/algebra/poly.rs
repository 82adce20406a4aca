//! Sparse multivariate polynomials with a fixed, declared variable order.

use std::collections::BTreeMap;
use std::fmt;

use super::scalar::{Field, Scalar};
use super::univariate::UniPoly;
use crate::error::{Error, Result};

/// Exponent vectors are compared lexicographically in declared variable order,
/// so the last entry of `terms` is the leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Scalar>,
    field: Field,
}

impl MultiPoly {
    pub fn zero(vars: &[String], field: Field) -> Self {
        MultiPoly { vars: vars.to_vec(), terms: BTreeMap::new(), field }
    }

    pub fn constant(vars: &[String], c: Scalar) -> Self {
        let mut p = Self::zero(vars, c.field());
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn var(vars: &[String], name: &str, field: Field) -> Result<Self> {
        let i = vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        Ok(Self::var_at(vars, i, field))
    }

    pub fn var_at(vars: &[String], i: usize, field: Field) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars, field);
        p.add_term(e, field.one());
        p
    }

    pub fn monomial(vars: &[String], exps: Vec<u32>, c: Scalar) -> Self {
        let mut p = Self::zero(vars, c.field());
        p.add_term(exps, c);
        p
    }

    /// Convenience for names like `["u0", "u1"]`.
    pub fn names(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.into()))
    }

    /// Adds `c * x^e` in place.
    pub fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        assert_eq!(e.len(), self.vars.len());
        assert_eq!(c.field(), self.field, "term from a different field");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_compat(&self, o: &Self) {
        assert_eq!(self.vars, o.vars, "polynomials over different variable lists");
        assert_eq!(self.field, o.field, "polynomials over different fields");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_compat(o);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut r = Self::zero(&self.vars, self.field);
        for (e, v) in &self.terms {
            r.add_term(e.clone(), v * c);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_compat(o);
        let mut r = Self::zero(&self.vars, self.field);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(&self.vars, self.field.one());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.vars.len() {
            return Err(Error::Dimension(format!(
                "evaluating a polynomial in {} variables at {} values",
                self.vars.len(),
                point.len()
            )));
        }
        self.field.check_all(point)?;
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k as u64);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes polynomials (all over a common variable list) for the variables.
    pub fn compose(&self, subs: &[MultiPoly]) -> Result<MultiPoly> {
        if subs.len() != self.vars.len() {
            return Err(Error::Dimension("compose: wrong number of substitutions".into()));
        }
        let tvars = subs.first().map(|s| s.vars.clone()).unwrap_or_default();
        let mut cache: Vec<Vec<MultiPoly>> = subs.iter().map(|s| vec![MultiPoly::constant(&tvars, self.field.one()), s.clone()]).collect();
        let mut r = Self::zero(&tvars, self.field);
        for (e, c) in &self.terms {
            let mut t = Self::constant(&tvars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while cache[i].len() <= k {
                    let next = cache[i].last().unwrap().mul(&subs[i]);
                    cache[i].push(next);
                }
                if k > 0 {
                    t = t.mul(&cache[i][k]);
                }
            }
            r = r.add(&t);
        }
        Ok(r)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut r = Self::zero(&self.vars, self.field);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r.add_term(e2, c * &self.field.from_i64(e[i] as i64));
            }
        }
        r
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Weighted homogeneity test; returns the common weighted degree.
    pub fn weighted_degree(&self, weights: &[u32]) -> Option<Option<u32>> {
        let mut d = None;
        for e in self.terms.keys() {
            let w: u32 = e.iter().zip(weights).map(|(a, b)| a * b).sum();
            match d {
                None => d = Some(w),
                Some(x) if x != w => return None,
                _ => {}
            }
        }
        Some(d)
    }

    /// Coefficients with respect to variable `i`: `self = sum_k c_k x_i^k`.
    pub fn coeffs_in(&self, i: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(&self.vars, self.field); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i] as usize;
            e2[i] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    pub fn leading(&self) -> Option<(&Vec<u32>, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Exact division; fails when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        self.check_compat(d);
        let (ld, lc) = d.leading().ok_or(Error::DivisionByZero)?;
        let lci = lc.inv().unwrap();
        let mut rem = self.clone();
        let mut q = Self::zero(&self.vars, self.field);
        while let Some((le, lr)) = rem.leading() {
            if le.iter().zip(ld).any(|(a, b)| a < b) {
                return Err(Error::Internal("inexact multivariate division".into()));
            }
            let e: Vec<u32> = le.iter().zip(ld).map(|(a, b)| a - b).collect();
            let t = Self::monomial(&self.vars, e, lr * &lci);
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        Ok(q)
    }

    /// Univariate view in variable `i`, requiring all other exponents to vanish.
    pub fn to_unipoly(&self, i: usize) -> Result<UniPoly> {
        let mut c = vec![self.field.zero(); self.degree_in(i).unwrap_or(0) as usize + 1];
        for (e, v) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return Err(Error::Invalid("polynomial is not univariate".into()));
            }
            c[e[i] as usize] = v.clone();
        }
        Ok(UniPoly::new(c, self.field))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&vec![0; self.vars.len()]).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Same polynomial over a different (compatible) variable list, mapping by name.
    pub fn rename_into(&self, vars: &[String]) -> Result<Self> {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).ok_or_else(|| Error::UnknownVariable(v.clone())))
            .collect::<Result<_>>()?;
        let mut r = Self::zero(vars, self.field);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; vars.len()];
            for (k, &j) in idx.iter().enumerate() {
                e2[j] = e[k];
            }
            r.add_term(e2, c.clone());
        }
        Ok(r)
    }

    pub fn coerce(&self, field: Field) -> Result<Self> {
        let mut r = Self::zero(&self.vars, field);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), field.coerce(c)?);
        }
        Ok(r)
    }
}

/// Sylvester resultant eliminating `var`.
///
/// Sign convention: the Sylvester matrix lists `deg_var g` shifted copies of
/// the coefficients of `f` (highest power first) above `deg_var f` copies of
/// those of `g`, so `res_x(x - a, x - b) = a - b`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let i = f.var_index(var)?;
    g.var_index(var)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("resultant with a zero polynomial".into()));
    }
    let fc = f.coeffs_in(i);
    let gc = g.coeffs_in(i);
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    if m == 0 && n == 0 {
        return Err(Error::Invalid(format!("neither polynomial involves `{var}`")));
    }
    let size = m + n;
    let zero = MultiPoly::zero(f.vars(), f.field());
    let mut rows = vec![vec![zero.clone(); size]; size];
    for r in 0..n {
        for k in 0..=m {
            rows[r][r + k] = fc[m - k].clone();
        }
    }
    for r in 0..m {
        for k in 0..=n {
            rows[n + r][r + k] = gc[n - k].clone();
        }
    }
    bareiss_det(rows)
}

/// Fraction-free determinant over the polynomial ring.
pub fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let n = m.len();
    if n == 0 {
        return Err(Error::Dimension("determinant of an empty matrix".into()));
    }
    let vars = m[0][0].vars().to_vec();
    let field = m[0][0].field();
    let mut prev = MultiPoly::constant(&vars, field.one());
    let mut sign = false;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Ok(MultiPoly::zero(&vars, field));
        };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.exact_div(&prev)?;
            }
            m[i][k] = MultiPoly::zero(&vars, field);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if sign { d.neg() } else { d })
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], k) })
                .collect();
            let cs = c.to_string();
            let neg = cs.starts_with('-');
            let abs = cs.trim_start_matches('-');
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else if abs.contains('/') || abs.contains('+') {
                write!(f, "({abs})*{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::int;

    fn v(names: &[&str]) -> Vec<String> {
        MultiPoly::names(names)
    }

    #[test]
    fn resultant_examples() {
        let q = Field::Rational;
        let vs = v(&["x", "a", "b"]);
        let x = MultiPoly::var(&vs, "x", q).unwrap();
        let a = MultiPoly::var(&vs, "a", q).unwrap();
        let b = MultiPoly::var(&vs, "b", q).unwrap();
        let one = MultiPoly::constant(&vs, int(1));
        let f = x.pow(2).add(&one);
        let g = x.pow(2).sub(&one);
        assert_eq!(resultant(&f, &g, "x").unwrap(), MultiPoly::constant(&vs, int(4)));
        let r = resultant(&x.sub(&a), &x.sub(&b), "x").unwrap();
        assert_eq!(r, a.sub(&b));
        assert_eq!(r.pow(2), a.sub(&b).pow(2));
        let h = x.pow(3).add(&a.mul(&x)).add(&b);
        assert!(resultant(&h, &h, "x").unwrap().is_zero());
        assert!(matches!(resultant(&f, &g, "z"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn exact_division_roundtrip() {
        let q = Field::Rational;
        let vs = v(&["x", "y"]);
        let x = MultiPoly::var(&vs, "x", q).unwrap();
        let y = MultiPoly::var(&vs, "y", q).unwrap();
        let f = x.add(&y).pow(3);
        let g = x.sub(&y.scale(&int(2)));
        assert_eq!(f.mul(&g).exact_div(&g).unwrap(), f);
        assert!(f.exact_div(&g).is_err());
    }

    #[test]
    fn display_is_readable() {
        let q = Field::Rational;
        let vs = v(&["x", "y"]);
        let x = MultiPoly::var(&vs, "x", q).unwrap();
        let y = MultiPoly::var(&vs, "y", q).unwrap();
        assert_eq!(x.mul(&y).sub(&y.pow(2).scale(&int(3))).to_string(), "x*y - 3*y^2");
    }
}
