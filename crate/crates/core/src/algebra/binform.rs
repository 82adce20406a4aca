//! Homogeneous binary forms `sum c_i X^{d-i} Y^i`.

use std::fmt;

use super::scalar::{Field, Scalar};
use super::univariate::UniPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    /// `c_0..c_d`, length `d + 1`.
    coeffs: Vec<Scalar>,
    field: Field,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Scalar>, field: Field) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("a binary form needs at least one coefficient".into()));
        }
        field.check_all(&coeffs)?;
        Ok(BinaryForm { coeffs, field })
    }

    pub fn from_i64(coeffs: &[i64], field: Field) -> Self {
        Self::new(coeffs.iter().map(|&c| field.from_i64(c)).collect(), field).unwrap()
    }

    pub fn zero(degree: usize, field: Field) -> Self {
        BinaryForm { coeffs: vec![field.zero(); degree + 1], field }
    }

    /// `X^{d-i} Y^i` scaled by `c`.
    pub fn monomial(degree: usize, i: usize, c: Scalar) -> Self {
        let mut f = Self::zero(degree, c.field());
        f.coeffs[i] = c;
        f
    }

    /// The form `X`.
    pub fn x(field: Field) -> Self {
        Self::from_i64(&[1, 0], field)
    }

    /// The form `Y`.
    pub fn y(field: Field) -> Self {
        Self::from_i64(&[0, 1], field)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Scalar {
        let d = self.degree();
        let mut acc = self.field.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&(c * &x.pow((d - i) as u64)) * &y.pow(i as u64));
            }
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.degree() != o.degree() {
            return Err(Error::Dimension(format!(
                "adding binary forms of degrees {} and {}",
                self.degree(),
                o.degree()
            )));
        }
        Ok(BinaryForm {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
            field: self.field,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|a| a * c).collect(), field: self.field }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut c = vec![self.field.zero(); self.degree() + o.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        BinaryForm { coeffs: c, field: self.field }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::from_i64(&[1], self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicity of the root `(1:0)`: the number of leading zero coefficients.
    pub fn multiplicity_at_infinity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Dehomogenization at `Y = 1`, as a polynomial in `X`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect(), self.field)
    }

    /// `Y^{d - deg u} * u(X/Y) * Y^{deg u}` as a form of degree `d`.
    pub fn homogenize(u: &UniPoly, d: usize) -> Result<Self> {
        let e = u.deg0();
        if e > d {
            return Err(Error::Dimension(format!("cannot homogenize degree {e} to {d}")));
        }
        let mut c = vec![u.field().zero(); d + 1];
        for k in 0..=e {
            c[d - k] = u.coeff(k);
        }
        Ok(BinaryForm { coeffs: c, field: u.field() })
    }

    /// Scales so the first nonzero coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(c) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Exact quotient by a nonzero form.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.degree().saturating_sub(d.degree()), self.field));
        }
        if d.degree() > self.degree() {
            return Err(Error::Internal("inexact binary form division".into()));
        }
        let mi = self.multiplicity_at_infinity();
        let md = d.multiplicity_at_infinity();
        if md > mi {
            return Err(Error::Internal("inexact binary form division".into()));
        }
        let q = self.dehomogenize().exact_div(&d.dehomogenize())?;
        Self::homogenize(&q, self.degree() - d.degree())
    }

    /// Splits off the root structure: returns `(m_inf, squarefree factors of the affine part with multiplicities)`.
    pub fn root_multiplicities(&self) -> Result<(usize, Vec<(UniPoly, usize)>)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("roots of the zero form".into()));
        }
        Ok((self.multiplicity_at_infinity(), self.dehomogenize().squarefree_decomposition()?))
    }

    /// Substitutes `X -> a`, `Y -> b` for univariate polynomials `a`, `b`.
    pub fn eval_uni(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let d = self.degree();
        let mut acc = UniPoly::zero(self.field);
        let mut apow = vec![UniPoly::one(self.field)];
        let mut bpow = vec![UniPoly::one(self.field)];
        for k in 1..=d {
            apow.push(&apow[k - 1] * a);
            bpow.push(&bpow[k - 1] * b);
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&apow[d - i] * &bpow[i]).scale(c);
            }
        }
        acc
    }

    /// Maps all coefficients into another field.
    pub fn coerce(&self, field: Field) -> Result<Self> {
        let c = self.coeffs.iter().map(|s| field.coerce(s)).collect::<Result<Vec<_>>>()?;
        Ok(BinaryForm { coeffs: c, field })
    }
}

/// Normalized gcd of two binary forms. Degree 0 means no common projective root.
pub fn gcd_forms(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm> {
    if f.field != g.field {
        return Err(Error::MixedFields("gcd of binary forms over different fields".into()));
    }
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::ZeroPolynomial("gcd of two zero forms".into())),
        (true, false) => return Ok(g.normalized()),
        (false, true) => return Ok(f.normalized()),
        _ => {}
    }
    let aff = UniPoly::gcd(&f.dehomogenize(), &g.dehomogenize());
    let m = f.multiplicity_at_infinity().min(g.multiplicity_at_infinity());
    Ok(BinaryForm::homogenize(&aff, aff.deg0() + m)?.normalized())
}

/// Gcd of a list of forms, skipping zero forms; `None` when all are zero.
pub fn gcd_many<'a>(forms: impl IntoIterator<Item = &'a BinaryForm>) -> Result<Option<BinaryForm>> {
    let mut acc: Option<BinaryForm> = None;
    for f in forms {
        if f.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => f.normalized(),
            Some(a) => gcd_forms(&a, f)?,
        });
    }
    Ok(acc)
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64(c, Field::Rational)
    }

    #[test]
    fn gcd_examples() {
        // a^2 and b^2 are coprime
        assert_eq!(gcd_forms(&bf(&[1, 0, 0]), &bf(&[0, 0, 1])).unwrap().degree(), 0);
        // gcd(ab, b^2) = b
        assert_eq!(gcd_forms(&bf(&[0, 1, 0]), &bf(&[0, 0, 1])).unwrap(), bf(&[0, 1]));
        // gcd(f, 0) = normalized f
        assert_eq!(gcd_forms(&bf(&[2, 4]), &bf(&[0, 0])).unwrap(), bf(&[1, 2]));
        assert!(gcd_forms(&bf(&[0]), &bf(&[0, 0])).is_err());
    }

    #[test]
    fn gcd_detects_root_at_infinity() {
        // Y (X - Y) and Y^2 (X + Y)
        let f = bf(&[0, 1, -1]);
        let g = bf(&[0, 0, 1, 1]);
        assert_eq!(gcd_forms(&f, &g).unwrap(), bf(&[0, 1]));
    }

    #[test]
    fn exact_division() {
        let f = bf(&[0, 1, -1]);
        assert_eq!(f.exact_div(&bf(&[0, 1])).unwrap(), bf(&[1, -1]));
        assert_eq!(f.exact_div(&bf(&[1, -1])).unwrap(), bf(&[0, 1]));
    }
}
