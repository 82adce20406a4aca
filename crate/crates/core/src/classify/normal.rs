//! Normal form of a smooth `p = 2` divisor: an isometry of `Q6` taking it to
//! the Segre threefold `x1x6 - x2x4`.

use crate::algebra::{Field, Matrix, MultiPoly, Scalar};
use crate::error::{Error, Result};
use crate::quadspace::{gram, N};
use crate::varieties::Q4Divisor;

const Q: Field = Field::Rational;

#[derive(Clone, Debug)]
pub struct NormalForm {
    /// Old coordinates in terms of new ones: `x = M y`.
    pub m: Matrix,
    /// `M^T G M = c G`.
    pub c: Scalar,
    pub transformed: Q4Divisor,
}

/// Eichler shear for the hyperbolic pair `(i, j)` of `Q6`, with `Q' = x3x6 - x4x5`
/// on the middle block: `x_i = y_i + s (B'(h, w) + y_j Q'(h))`, `w -> w + y_j h`,
/// where `s = +1` for the pair `(x1, x8)` and `-1` for `(x2, x7)`
/// after accounting for the sign of `x_i x_j` in `Q`.
fn shear(i: usize, j: usize, sign: i64, h: [Scalar; 4]) -> Matrix {
    let mut m = Matrix::identity(N, Q);
    // B'(h, w) = h3 w6 + h6 w3 - h4 w5 - h5 w4, indices 2..=5
    let bcoef = [h[3].clone(), -&h[2], -&h[1], h[0].clone()];
    let qh = &(&h[0] * &h[3]) - &(&h[1] * &h[2]);
    let s = Q.from_i64(-sign);
    for (k, b) in bcoef.iter().enumerate() {
        m.set(i, 2 + k, b * &s);
    }
    m.set(i, j, &qh * &s);
    for (k, hk) in h.iter().enumerate() {
        m.set(2 + k, j, hk.clone());
    }
    m
}

/// Isometry taking a `p = 2` divisor with coprime `g1, g2` to `x1x6 - x2x4`.
pub fn normalize_p2(d: &Q4Divisor) -> Result<NormalForm> {
    if d.p() != 2 {
        return Err(Error::Invalid(format!("normal form needs p = 2, got p = {}", d.p())));
    }
    let c = |g: &crate::algebra::BinaryForm, k: usize| g.coeffs()[k].clone();
    // g1 = al1 x4 + al2 x6, g2 = be1 x4 + be2 x6
    let (al1, al2, be1, be2) = (c(d.g1(), 0), c(d.g1(), 1), c(d.g2(), 0), c(d.g2(), 1));
    // x1 g1 + x2 g2 = x6 y1 - x4 y2 with (y1, y2) = Nn (x1, x2)
    let nn = Matrix::from_rows(vec![vec![al2.clone(), be2.clone()], vec![-&al1, -&be1]], 2, Q)?;
    let p = nn.inverse().map_err(|_| Error::CommonRoot("g1 and g2 are proportional".into()))?;
    let j = Matrix::from_i64(&[&[1, 0], &[0, -1]], Q);
    let r = j.mul(&p.inverse()?.transpose())?.mul(&j)?;
    let mut m1 = Matrix::identity(N, Q);
    for a in 0..2 {
        for b in 0..2 {
            m1.set(a, b, p.get(a, b).clone());
            // block on (x8, x7)
            m1.set(7 - a, 7 - b, r.get(a, b).clone());
        }
    }
    // remaining terms R = x6 A + x4 B
    let gp = d.gp().coeffs();
    let (g3, g5) = (d.g3().coeffs(), d.g5().coeffs());
    // A = a3 x3 + a4 x4 + a5 x5 + a6 x6, B = b3 x3 + b4 x4 + b5 x5
    let a = [g3[1].clone(), gp[1].clone(), g5[1].clone(), gp[2].clone()];
    let b = [g3[0].clone(), gp[0].clone(), g5[0].clone(), Q.zero()];
    // B'(h, w) = A(w): h6 = a3, h5 = -a4, h4 = -a5, h3 = a6
    let from_form = |f: &[Scalar; 4]| [f[3].clone(), -&f[2], -&f[1], f[0].clone()];
    // y1 = z1 - A(w): the (x1, x8) pair enters Q with sign +1
    let s1 = shear(0, 7, 1, from_form(&a));
    // y2 = z2 + B(w): the (x2, x7) pair enters Q with sign -1
    let s2 = shear(1, 6, -1, from_form(&b));
    let m = m1.mul(&s1)?.mul(&s2)?;
    let g = gram(Q);
    let lhs = m.transpose().mul(&g)?.mul(&m)?;
    let scale = lhs.get(0, 7).clone();
    if scale.is_zero() || lhs != g.scale(&scale) {
        return Err(Error::Internal("normalizing map is not a similitude of Q6".into()));
    }
    if (6..8).any(|i| (0..6).any(|k| !m.get(i, k).is_zero())) {
        return Err(Error::Internal("normalizing map does not preserve x7 = x8 = 0".into()));
    }
    let target = Q4Divisor::segre();
    if restricted(&d.f(), &m)? != target.f() {
        return Err(Error::Internal("normalizing map does not reach x1x6 - x2x4".into()));
    }
    Ok(NormalForm { m, c: scale, transformed: target })
}

/// `f(M y)` with `y7 = y8 = 0`.
pub fn restricted(f: &MultiPoly, m: &Matrix) -> Result<MultiPoly> {
    let vs = f.vars().to_vec();
    let subs: Vec<MultiPoly> = (0..N)
        .map(|i| {
            (0..6).fold(MultiPoly::zero(&vs, Q), |acc, k| acc.add(&MultiPoly::var_at(&vs, k, Q).scale(m.get(i, k))))
        })
        .collect();
    f.compose(&subs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shear_example() {
        // x1x6 - x2x4 + x6x5: x1 -> x1 - x5, x4 -> x4 - x8
        let d = Q4Divisor::from_i64(2, &[0, 0, 0], &[0, 1], &[-1, 0], &[0, 0], &[0, 1]).unwrap();
        let nf = normalize_p2(&d).unwrap();
        let mut expect = Matrix::identity(N, Q);
        expect.set(0, 4, Q.from_i64(-1));
        expect.set(3, 7, Q.from_i64(-1));
        assert_eq!(nf.m, expect);
        assert!(nf.c.is_one());
    }

    #[test]
    fn general_p2() {
        let d = Q4Divisor::from_i64(2, &[3, -1, 2], &[2, 1], &[1, -4], &[5, -2], &[-3, 7]).unwrap();
        let nf = normalize_p2(&d).unwrap();
        assert_eq!(restricted(&d.f(), &nf.m).unwrap(), Q4Divisor::segre().f());
    }
}
