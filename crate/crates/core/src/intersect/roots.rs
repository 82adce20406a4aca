//! Root clusters of binary forms and univariate gcds over residue rings.

use crate::algebra::residue::{Inverse, SplitResult};
use crate::algebra::{BinaryForm, ResidueRing, UniPoly};
use crate::error::Result;

/// A Galois-stable group of roots of a binary form: either the point `(1:0)`,
/// or the roots `(t:1)` of a squarefree factor `h(t)`, all with the same multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCluster {
    pub modulus: UniPoly,
    pub at_infinity: bool,
    pub multiplicity: usize,
}

impl RootCluster {
    /// Number of geometric roots represented.
    pub fn count(&self) -> usize {
        self.modulus.deg0()
    }

    /// `(a, b)` as residues, given a ring whose modulus divides this cluster's modulus.
    pub fn point(&self, ring: &ResidueRing) -> (UniPoly, UniPoly) {
        if self.at_infinity {
            (ring.one(), ring.zero())
        } else {
            (ring.theta(), ring.one())
        }
    }
}

/// Decomposes the roots of a nonzero binary form.
pub fn clusters(phi: &BinaryForm) -> Result<Vec<RootCluster>> {
    let (m_inf, parts) = phi.root_multiplicities()?;
    let mut out = vec![];
    if m_inf > 0 {
        out.push(RootCluster { modulus: UniPoly::x(phi.field()), at_infinity: true, multiplicity: m_inf });
    }
    for (h, e) in parts {
        out.push(RootCluster { modulus: h, at_infinity: false, multiplicity: e });
    }
    Ok(out)
}

/// Rebuilds the binary form `prod (cluster factor)^multiplicity`.
pub fn form_from_clusters(cl: &[RootCluster], field: crate::algebra::Field) -> BinaryForm {
    let mut acc = BinaryForm::from_i64(&[1], field);
    for c in cl {
        let f = if c.at_infinity {
            BinaryForm::y(field)
        } else {
            BinaryForm::homogenize(&c.modulus, c.modulus.deg0()).unwrap()
        };
        acc = acc.mul(&f.pow(c.multiplicity));
    }
    acc
}

/// Strips leading coefficients that vanish in the ring (splitting if needed).
fn trim(ring: &ResidueRing, p: &[UniPoly]) -> SplitResult<Vec<UniPoly>> {
    let mut v: Vec<UniPoly> = p.iter().map(|c| ring.reduce(c)).collect();
    while let Some(last) = v.last() {
        if ring.is_zero_or_split(last)? {
            v.pop();
        } else {
            break;
        }
    }
    Ok(v)
}

/// Monic gcd of univariate polynomials with coefficients in the ring
/// (coefficient vectors in ascending order). Empty result means all inputs vanish.
pub fn ring_poly_gcd(ring: &ResidueRing, polys: &[Vec<UniPoly>]) -> SplitResult<Vec<UniPoly>> {
    let mut g: Vec<UniPoly> = vec![];
    for p in polys {
        let mut a = g;
        let mut b = trim(ring, p)?;
        while !b.is_empty() {
            let r = ring_rem(ring, &a, &b)?;
            a = b;
            b = r;
        }
        g = a;
    }
    if let Some(last) = g.last() {
        let Inverse::Unit(inv) = ring.inverse(last)? else { unreachable!("trimmed leading coefficient") };
        g = g.iter().map(|c| ring.mul(c, &inv)).collect();
    }
    Ok(g)
}

fn ring_rem(ring: &ResidueRing, a: &[UniPoly], b: &[UniPoly]) -> SplitResult<Vec<UniPoly>> {
    let mut r = trim(ring, a)?;
    let db = b.len() - 1;
    let Inverse::Unit(inv) = ring.inverse(&b[db])? else { unreachable!("trimmed leading coefficient") };
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = ring.mul(r.last().unwrap(), &inv);
        for (i, bc) in b.iter().enumerate() {
            let t = ring.mul(&c, bc);
            r[k + i] = ring.reduce(&(&r[k + i] - &t));
        }
        r.pop();
        r = trim(ring, &r)?;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{split_eval, Field};

    #[test]
    fn clusters_of_form() {
        // Y^2 (X - Y) (X^2 + Y^2)
        let q = Field::Rational;
        let f = BinaryForm::from_i64(&[0, 0, 1], q)
            .mul(&BinaryForm::from_i64(&[1, -1], q))
            .mul(&BinaryForm::from_i64(&[1, 0, 1], q));
        let cl = clusters(&f).unwrap();
        assert_eq!(cl.iter().map(|c| c.count() * c.multiplicity).sum::<usize>(), 5);
        assert!(cl.iter().any(|c| c.at_infinity && c.multiplicity == 2));
        assert_eq!(form_from_clusters(&cl, q).normalized(), f.normalized());
    }

    #[test]
    fn gcd_over_number_field() {
        // over Q(i): gcd(w^2 + 1, w - i) = w - i
        let q = Field::Rational;
        let h = UniPoly::from_i64(&[1, 0, 1], q);
        let res = split_eval(&h, |r| {
            let one = r.one();
            let p1 = vec![one.clone(), r.zero(), one.clone()];
            let p2 = vec![-&r.theta(), one];
            ring_poly_gcd(r, &[p1, p2])
        });
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].1.len(), 2);
    }
}
