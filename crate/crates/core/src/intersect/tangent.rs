//! Affine-cone tangent spaces at (possibly algebraic) points and the
//! transversality test.

use crate::algebra::residue::{Inverse, SplitResult};
use crate::algebra::{Field, MultiPoly, ResidueRing, Scalar, UniPoly};
use crate::quadspace::{self, LinearSubspace, N};
use crate::varieties::divisor::Chart;
use crate::varieties::{ParamVariety, Q4Divisor};

pub fn lift(v: &[Scalar]) -> Vec<UniPoly> {
    v.iter().map(|s| UniPoly::constant(s.clone())).collect()
}

/// Jacobian columns of the parametrization, as vectors in `K^8`.
pub fn param_tangent(ring: &ResidueRing, v: &ParamVariety, params: &[UniPoly]) -> Vec<Vec<UniPoly>> {
    (0..v.space.nvars())
        .map(|j| v.coords.iter().map(|c| ring.eval_multi(&c.derivative(j), params)).collect())
        .collect()
}

/// `span ∩ Ann(z)`: the tangent space of a quadric given implicitly inside its span.
pub fn implicit_tangent(ring: &ResidueRing, span: &LinearSubspace, z: &[UniPoly]) -> SplitResult<Vec<Vec<UniPoly>>> {
    let basis: Vec<Vec<UniPoly>> = span.basis_vectors().iter().map(|b| lift(b)).collect();
    let row: Vec<UniPoly> = basis.iter().map(|b| ring_bilinear(ring, b, z)).collect();
    let ker = ring.kernel_basis(&[row], basis.len())?;
    Ok(ker.iter().map(|c| combine(ring, &basis, c)).collect())
}

/// `x^T G y` over the ring.
pub fn ring_bilinear(ring: &ResidueRing, x: &[UniPoly], y: &[UniPoly]) -> UniPoly {
    let mut acc = ring.zero();
    for (i, j, s) in quadspace::PAIRS {
        let t = &ring.mul(&x[i], &y[j]) + &ring.mul(&x[j], &y[i]);
        acc = if s > 0 { &acc + &t } else { &acc - &t };
    }
    ring.reduce(&acc)
}

pub fn ring_quad(ring: &ResidueRing, x: &[UniPoly]) -> UniPoly {
    let mut acc = ring.zero();
    for (i, j, s) in quadspace::PAIRS {
        let t = ring.mul(&x[i], &x[j]);
        acc = if s > 0 { &acc + &t } else { &acc - &t };
    }
    ring.reduce(&acc)
}

/// `sum c_i * basis_i`.
pub fn combine(ring: &ResidueRing, basis: &[Vec<UniPoly>], c: &[UniPoly]) -> Vec<UniPoly> {
    let n = basis[0].len();
    let mut out = vec![ring.zero(); n];
    for (b, ci) in basis.iter().zip(c) {
        for (o, x) in out.iter_mut().zip(b) {
            *o = &*o + &ring.mul(ci, x);
        }
    }
    out.iter().map(|x| ring.reduce(x)).collect()
}

/// Charts of a divisor in the preferred order `x6, x4, x5, x3`, with gradients.
pub struct DivisorCharts {
    charts: Vec<(Chart, Vec<MultiPoly>, Vec<Vec<MultiPoly>>)>,
}

impl DivisorCharts {
    pub fn new(d: &Q4Divisor) -> crate::Result<Self> {
        let mut charts = vec![];
        for j in [5, 3, 4, 2] {
            let ch = d.chart(j, Field::Rational)?;
            let grad = (0..4).map(|k| ch.eq.derivative(k)).collect();
            let jac = ch.phi.iter().map(|c| (0..4).map(|k| c.derivative(k)).collect()).collect();
            charts.push((ch, grad, jac));
        }
        Ok(DivisorCharts { charts })
    }

    /// Tangent space of the divisor at `z`, or `None` when `z` lies on `L`
    /// (where no chart applies) or off the local equation.
    /// A singular point yields a space of dimension 5.
    pub fn tangent(&self, ring: &ResidueRing, z: &[UniPoly]) -> SplitResult<Option<Vec<Vec<UniPoly>>>> {
        for (ch, grad, jac) in &self.charts {
            let Inverse::Unit(inv) = ring.inverse(&z[ch.j])? else { continue };
            let zn: Vec<UniPoly> = z.iter().map(|c| ring.mul(c, &inv)).collect();
            let y = match ch.j {
                5 | 2 => vec![zn[0].clone(), zn[1].clone(), zn[3].clone(), zn[4].clone()],
                _ => vec![zn[0].clone(), zn[1].clone(), zn[2].clone(), zn[5].clone()],
            };
            if !ring.is_zero_or_split(&ring.eval_multi(&ch.eq, &y))? {
                return Ok(None);
            }
            let g: Vec<UniPoly> = grad.iter().map(|p| ring.eval_multi(p, &y)).collect();
            let ker = ring.kernel_basis(&[g], 4)?;
            let cols: Vec<Vec<UniPoly>> = (0..4).map(|k| jac.iter().map(|row| ring.eval_multi(&row[k], &y)).collect()).collect();
            let mut rows = vec![zn];
            for k in ker {
                rows.push(combine(ring, &cols, &k));
            }
            return Ok(Some(rows));
        }
        Ok(None)
    }
}

/// Transversal iff the tangent space has dimension 4 and meets `W` only in the point.
pub fn is_transversal(ring: &ResidueRing, tangent: &[Vec<UniPoly>], w: &LinearSubspace) -> SplitResult<bool> {
    if ring.rank(tangent)? != 4 {
        return Ok(false);
    }
    let mut rows = tangent.to_vec();
    rows.extend(w.basis_vectors().iter().map(|b| lift(b)));
    let expected = (4 + w.dim() - 1).min(N);
    Ok(ring.rank(&rows)? == expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::split_eval;

    #[test]
    fn segre_divisor_tangent_is_four_dimensional() {
        let d = Q4Divisor::segre();
        let ch = DivisorCharts::new(&d).unwrap();
        // point (1:1:1:1:1:1:0:0) of the Segre threefold
        let z: Vec<Scalar> = [1, 1, 1, 1, 1, 1, 0, 0].iter().map(|&v| Field::Rational.from_i64(v)).collect();
        let res = split_eval(&UniPoly::x(Field::Rational), |r| {
            let t = ch.tangent(r, &lift(&z))?.unwrap();
            r.rank(&t)
        });
        assert_eq!(res[0].1, 4);
    }
}
