//! Intersections of a divisor `X ⊂ Q4` with maximal isotropic 4-spaces and
//! with codimension-3 linear spaces. Each case reduces to the roots of one
//! binary form.

use super::roots::{clusters, RootCluster};
use super::tangent::DivisorCharts;
use super::{IntersectionPoint, IntersectionReport};
use crate::algebra::residue::SplitResult;
use crate::algebra::{gcd_many, split_eval, BinaryForm, Field, ResidueRing, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::quadspace::{self, h0, iso_type, line_l, p5, IsoType, LinearSubspace, N};
use crate::varieties::Q4Divisor;

const Q: Field = Field::Rational;

pub fn meet(d: &Q4Divisor, w: &LinearSubspace) -> Result<IntersectionReport> {
    match w.dim() {
        4 if w.is_isotropic() => match iso_type(w)? {
            IsoType::Horizontal => meet_horizontal(d, w),
            IsoType::Vertical => meet_vertical(d, w),
        },
        5 => meet_codim3(d, w),
        k => Err(Error::Unsupported(format!(
            "divisor intersections need a maximal isotropic 4-space or a 5-space, got dimension {k}"
        ))),
    }
}

/// `g(l1, l2)` for linear (or higher) forms `l1, l2` of equal degree `e`.
pub fn compose_form(g: &BinaryForm, l1: &BinaryForm, l2: &BinaryForm) -> BinaryForm {
    let d = g.degree();
    let mut acc = BinaryForm::zero(d * l1.degree(), Q);
    for (i, c) in g.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&l1.pow(d - i).mul(&l2.pow(i)).scale(c)).unwrap();
        }
    }
    acc
}

/// `f` composed with coordinates given as binary forms of a common degree.
pub fn f_on_forms(d: &Q4Divisor, x: &[BinaryForm]) -> BinaryForm {
    let (x4, x6) = (&x[3], &x[5]);
    let mut acc = compose_form(d.gp(), x4, x6);
    for (i, g) in [(0, d.g1()), (1, d.g2()), (2, d.g3()), (4, d.g5())] {
        acc = acc.add(&x[i].mul(&compose_form(g, x4, x6))).unwrap();
    }
    acc
}

fn linear_forms(s: &[Scalar], t: &[Scalar]) -> Vec<BinaryForm> {
    s.iter().zip(t).map(|(a, b)| BinaryForm::new(vec![a.clone(), b.clone()], Q).unwrap()).collect()
}

/// Finishes the points from root clusters of `phi`, where `coords(ring, a, b)`
/// gives the point over the cluster.
fn points_from(
    d: &Q4Divisor,
    w: &LinearSubspace,
    phi: &BinaryForm,
    coords: impl Fn(&ResidueRing, &UniPoly, &UniPoly) -> Vec<UniPoly>,
) -> Result<Vec<IntersectionPoint>> {
    let charts = DivisorCharts::new(d)?;
    let f = d.f();
    let eqs = w.equations();
    let mut out = vec![];
    for c in clusters(phi)? {
        let res = split_eval(&c.modulus, |ring| point_over(ring, &c, &charts, &f, &eqs, w, &coords));
        for (m, r) in res {
            let (ab, z, tr) = r?;
            out.push(IntersectionPoint {
                modulus: m,
                params: ab,
                coords: z,
                multiplicity: c.multiplicity,
                transversal: tr && c.multiplicity == 1,
            });
        }
    }
    Ok(out)
}

type PointData = Result<(Vec<UniPoly>, Vec<UniPoly>, bool)>;

fn point_over(
    ring: &ResidueRing,
    c: &RootCluster,
    charts: &DivisorCharts,
    f: &crate::algebra::MultiPoly,
    eqs: &[Vec<Scalar>],
    w: &LinearSubspace,
    coords: &impl Fn(&ResidueRing, &UniPoly, &UniPoly) -> Vec<UniPoly>,
) -> SplitResult<PointData> {
    let (a, b) = c.point(ring);
    let z = coords(ring, &a, &b);
    let mut all_zero = true;
    for x in &z {
        all_zero &= ring.is_zero_or_split(x)?;
    }
    if all_zero {
        return Ok(Err(Error::NonGeneric("the construction degenerates at a root".into())));
    }
    for e in eqs {
        let acc = e.iter().zip(&z).fold(ring.zero(), |acc, (s, x)| &acc + &x.scale(s));
        if !ring.is_zero_or_split(&ring.reduce(&acc))? {
            return Ok(Err(Error::Internal("intersection point violates an equation of W".into())));
        }
    }
    if !ring.is_zero_or_split(&ring.eval_multi(f, &z))? {
        return Ok(Err(Error::Internal("intersection point is off the divisor".into())));
    }
    let tr = match charts.tangent(ring, &z)? {
        Some(t) => super::tangent::is_transversal(ring, &t, w)?,
        None => false,
    };
    Ok(Ok((vec![a, b], z, tr)))
}

/// The line `V ∩ P^5` passes through `d = V ∩ H0`, where `f` vanishes to
/// order `p - 1`; the residual linear form gives the single point.
fn meet_vertical(d: &Q4Divisor, v: &LinearSubspace) -> Result<IntersectionReport> {
    const M: &str = "vertical-line";
    let l = v.intersect(&p5(Q));
    if l.dim() != 2 {
        return Err(Error::NonGeneric(format!("V meets P^5 in dimension {}", l.dim())));
    }
    let dd = v.intersect(&h0(Q));
    if dd.dim() != 1 {
        return Err(Error::NonGeneric("V meets H0 in more than a point".into()));
    }
    let dvec = dd.basis_vectors().remove(0);
    if line_l(Q).contains(&dvec) {
        return Err(Error::NonGeneric("V ∩ H0 lies on L".into()));
    }
    let s = l
        .basis_vectors()
        .into_iter()
        .find(|b| !dd.contains(b))
        .ok_or_else(|| Error::Internal("no complement in the line".into()))?;
    // x = beta s + gamma d
    let x = linear_forms(&s, &dvec);
    let full = f_on_forms(d, &x);
    if full.is_zero() {
        return Ok(IntersectionReport::nonfinite("the line V ∩ P^5 lies in the divisor", M));
    }
    let phi = full
        .exact_div(&BinaryForm::x(Q).pow(d.p() - 1))
        .map_err(|_| Error::NonGeneric("V does not meet D1 transversally".into()))?;
    let pts = points_from(d, v, &phi, |ring, a, b| {
        (0..N).map(|i| ring.reduce(&(&a.scale(&s[i]) + &b.scale(&dvec[i])))).collect()
    })?;
    Ok(IntersectionReport::finite(pts, Some(phi), M))
}

/// Projects the conic `W ∩ Q4` from its point `d = W ∩ H0`.
fn meet_codim3(d: &Q4Divisor, w: &LinearSubspace) -> Result<IntersectionReport> {
    const M: &str = "conic-projection";
    let pi = w.intersect(&p5(Q));
    if pi.dim() != 3 {
        return Err(Error::NonGeneric(format!("W meets P^5 in dimension {}", pi.dim())));
    }
    let dd = pi.intersect(&h0(Q));
    if dd.dim() != 1 {
        return Err(Error::NonGeneric("W meets H0 in more than a point".into()));
    }
    let dv = dd.basis_vectors().remove(0);
    if line_l(Q).contains(&dv) {
        return Err(Error::NonGeneric("W ∩ H0 lies on L".into()));
    }
    let mut comp = vec![];
    let mut acc = dd.clone();
    for b in pi.basis_vectors() {
        let next = acc.sum(&LinearSubspace::span(&[b.clone()], Q)?);
        if next.dim() > acc.dim() {
            acc = next;
            comp.push(b);
        }
    }
    let (s1, s2) = (&comp[0], &comp[1]);
    let y = linear_forms(s1, s2);
    let ell = BinaryForm::new(vec![quadspace::bilinear(&dv, s1), quadspace::bilinear(&dv, s2)], Q)?;
    if ell.is_zero() {
        return Err(Error::NonGeneric("the plane W ∩ P^5 is tangent to Q4 at d".into()));
    }
    let q2 = BinaryForm::new(vec![quadspace::quad_form(s1), quadspace::bilinear(s1, s2), quadspace::quad_form(s2)], Q)?;
    let x: Vec<BinaryForm> = (0..N).map(|i| ell.mul(&y[i]).sub(&q2.scale(&dv[i])).unwrap()).collect();
    let full = f_on_forms(d, &x);
    if full.is_zero() {
        return Ok(IntersectionReport::nonfinite("the conic W ∩ Q4 lies in the divisor", M));
    }
    let phi = full
        .exact_div(&ell.pow(d.p() - 1))
        .map_err(|_| Error::Internal("f does not vanish to order p-1 along D1".into()))?;
    let pts = points_from(d, w, &phi, |ring, a, b| x.iter().map(|f| ring.reduce(&f.eval_uni(a, b))).collect())?;
    Ok(IntersectionReport::finite(pts, Some(phi), M))
}

/// Determinant of a small matrix of binary forms by cofactor expansion.
fn det_forms(m: &[Vec<BinaryForm>]) -> BinaryForm {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc: Option<BinaryForm> = None;
    for j in 0..n {
        let t = m[0][j].mul(&det_forms(&minor(m, 0, j)));
        acc = Some(match acc {
            None => t,
            Some(a) if j % 2 == 0 => a.add(&t).unwrap(),
            Some(a) => a.sub(&t).unwrap(),
        });
    }
    acc.unwrap()
}

fn minor(m: &[Vec<BinaryForm>], r: usize, c: usize) -> Vec<Vec<BinaryForm>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// Every `P(a,b)` is vertical, so it meets the horizontal `H` in a point
/// `x(a,b)`, the kernel of `M(a,b)`; the meet is where `lambda(a,b)` vanishes there.
fn meet_horizontal(d: &Q4Divisor, h: &LinearSubspace) -> Result<IntersectionReport> {
    const M: &str = "pencil-kernel";
    let e = h.equations();
    let col = |r: &[Scalar], i: usize| BinaryForm::new(vec![r[i].clone()], Q).unwrap();
    let pair = |r: &[Scalar], i: usize, j: usize| BinaryForm::new(vec![r[i].clone(), r[j].clone()], Q).unwrap();
    let m: Vec<Vec<BinaryForm>> = e.iter().map(|r| vec![col(r, 0), col(r, 1), pair(r, 2, 4), pair(r, 3, 5)]).collect();
    if !det_forms(&m).is_zero() {
        return Err(Error::Internal("H meets a pencil member trivially".into()));
    }
    let cof: Vec<Vec<BinaryForm>> = (0..4)
        .map(|j| {
            (0..4)
                .map(|k| {
                    let c = det_forms(&minor(&m, j, k));
                    if (j + k) % 2 == 1 {
                        c.scale(&Q.from_i64(-1))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let all = gcd_many(cof.iter().flatten())?.ok_or_else(|| Error::NonGeneric("H meets every pencil member in a line".into()))?;
    if all.degree() > 0 {
        return Err(Error::NonGeneric("H meets some pencil member in a line".into()));
    }
    let row = cof.iter().find(|r| r.iter().any(|c| !c.is_zero())).unwrap();
    let content = gcd_many(row.iter())?.unwrap();
    let wk: Vec<BinaryForm> = row
        .iter()
        .map(|c| if c.is_zero() { BinaryForm::zero(c.degree() - content.degree(), Q) } else { c.exact_div(&content).unwrap() })
        .collect();
    if wk[2].is_zero() && wk[3].is_zero() {
        return Err(Error::NonGeneric("H meets the pencil only along L".into()));
    }
    let [l1, l2, l3, l4] = d.lambda_forms();
    let phi = l1.mul(&wk[0]).add(&l2.mul(&wk[1]))?.add(&l3.mul(&wk[2]))?.add(&l4.mul(&wk[3]))?;
    if phi.is_zero() {
        return Ok(IntersectionReport::nonfinite("H ∩ X is a curve", M));
    }
    if phi.degree() != d.p() {
        return Err(Error::NonGeneric(format!("eliminant has degree {} instead of {}", phi.degree(), d.p())));
    }
    let pts = points_from(d, h, &phi, |ring, a, b| {
        let w: Vec<UniPoly> = wk.iter().map(|f| ring.reduce(&f.eval_uni(a, b))).collect();
        let mut x = vec![ring.zero(); N];
        x[0] = w[0].clone();
        x[1] = w[1].clone();
        x[2] = ring.mul(&w[2], a);
        x[4] = ring.mul(&w[2], b);
        x[3] = ring.mul(&w[3], a);
        x[5] = ring.mul(&w[3], b);
        x
    })?;
    for p in &pts {
        if p.coords[2..6].iter().all(|c| c.is_zero()) {
            return Err(Error::NonGeneric("an intersection point lies on L".into()));
        }
    }
    Ok(IntersectionReport::finite(pts, Some(phi), M))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadspace::random_max_isotropic;

    #[test]
    fn segre_counts() {
        let d = Q4Divisor::segre();
        let v = random_max_isotropic(IsoType::Vertical, Q, 3).unwrap();
        let r = meet(&d, &v).unwrap();
        assert_eq!(r.total, 1);
        let h = random_max_isotropic(IsoType::Horizontal, Q, 3).unwrap();
        let r = meet(&d, &h).unwrap();
        assert_eq!(r.total, 2);
        assert!(r.all_transversal());
        // the eliminant agrees with f restricted to the line H ∩ P^5
        let l = h.intersect(&p5(Q)).basis_vectors();
        assert_eq!(l.len(), 2);
        let rest = f_on_forms(&d, &linear_forms(&l[0], &l[1]));
        assert_eq!(rest.degree(), 2);
        assert_eq!(clusters(&rest).unwrap().iter().map(|c| c.count() * c.multiplicity).sum::<usize>(), 2);
    }
}
