//! Intersections of parametrized threefolds with linear subspaces, one
//! elimination strategy per parametrization shape.

use rand::Rng;

use super::roots::{clusters, form_from_clusters, ring_poly_gcd, RootCluster};
use super::tangent::{implicit_tangent, is_transversal, lift, param_tangent, ring_quad};
use super::{IntersectionPoint, IntersectionReport};
use crate::algebra::residue::SplitResult;
use crate::algebra::{gcd_many, resultant, split_eval, BinaryForm, Field, Matrix, MultiPoly, ResidueRing, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::quadspace::{self, LinearSubspace};
use crate::varieties::{ParamVariety, SpaceKind};

const Q: Field = Field::Rational;

pub fn meet(v: &ParamVariety, w: &LinearSubspace, eqs: &[Vec<Scalar>], seed: u64) -> Result<IntersectionReport> {
    if let Some(span) = &v.implicit_span {
        return implicit(span, w);
    }
    let md = v.multidegree()?;
    match (v.space.kind, md.as_slice()) {
        (SpaceKind::P3, [1]) => linear(v, w),
        (SpaceKind::P1xP2, [1, 1]) => bilinear(v, w, eqs),
        (SpaceKind::WP1112, [2]) => cone(v, w, eqs, seed),
        _ => Err(Error::Unsupported(format!(
            "no exact intersection method for a {:?} parametrization of multidegree {md:?}",
            v.space.kind
        ))),
    }
}

fn rational_point(params: Vec<Scalar>, coords: Vec<Scalar>, transversal: bool) -> IntersectionPoint {
    IntersectionPoint {
        modulus: UniPoly::x(Q),
        params: lift(&params),
        coords: lift(&coords),
        multiplicity: 1,
        transversal,
    }
}

/// Image is a 3-plane `S`; the meet is `P(S ∩ W)`.
fn linear(v: &ParamVariety, w: &LinearSubspace) -> Result<IntersectionReport> {
    const M: &str = "linear";
    let n = v.space.nvars();
    let cols: Vec<Vec<Scalar>> = (0..n).map(|j| v.coords.iter().map(|c| c.derivative(j).constant_term()).collect()).collect();
    let s = LinearSubspace::span(&cols, Q)?;
    if s.dim() != 4 {
        return Err(Error::Invalid("linear parametrization is not injective".into()));
    }
    let i = s.intersect(w);
    match i.dim() {
        0 => Ok(IntersectionReport::finite(vec![], None, M)),
        1 => {
            let z = i.basis_vectors().remove(0);
            // parameters: kernel of [A | z]
            let mut rows: Vec<Vec<Scalar>> = (0..quadspace::N).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
            for (r, row) in rows.iter_mut().enumerate() {
                row.push(z[r].clone());
            }
            let k = Matrix::from_rows(rows, n + 1, Q)?.kernel_basis();
            let k = k.first().ok_or_else(|| Error::Internal("point of S without preimage".into()))?;
            let inv = (-&k[n]).inv().ok_or_else(|| Error::Internal("degenerate preimage".into()))?;
            let params = k[..n].iter().map(|x| x * &inv).collect();
            let transversal = s.sum(w).dim() == 4 + w.dim() - 1;
            Ok(IntersectionReport::finite(vec![rational_point(params, z, transversal)], None, M))
        }
        d => Ok(IntersectionReport::nonfinite(format!("the 3-plane meets W in a P^{}", d - 1), M)),
    }
}

/// A quadric given implicitly inside its span `P^4`.
fn implicit(span: &LinearSubspace, w: &LinearSubspace) -> Result<IntersectionReport> {
    const M: &str = "implicit-quadric";
    let i = span.intersect(w);
    let b = i.basis_vectors();
    match b.len() {
        0 => Ok(IntersectionReport::finite(vec![], None, M)),
        1 => {
            if !quadspace::quad_form(&b[0]).is_zero() {
                return Ok(IntersectionReport::finite(vec![], None, M));
            }
            let pts = finish_clusters(&[RootCluster { modulus: UniPoly::x(Q), at_infinity: true, multiplicity: 1 }], |ring, _| {
                let z = lift(&b[0]);
                let t = implicit_tangent(ring, span, &z)?;
                let tr = is_transversal(ring, &t, w)?;
                Ok(Some((vec![], z, tr)))
            })?;
            Ok(IntersectionReport::finite(pts, None, M))
        }
        2 => {
            let (s1, s2) = (&b[0], &b[1]);
            let form = BinaryForm::new(vec![quadspace::quad_form(s1), quadspace::bilinear(s1, s2), quadspace::quad_form(s2)], Q)?;
            if form.is_zero() {
                return Ok(IntersectionReport::nonfinite("W meets the quadric in a line", M));
            }
            let cl = clusters(&form)?;
            let pts = finish_clusters(&cl, |ring, c| {
                let (x, y) = c.point(ring);
                let z: Vec<UniPoly> =
                    s1.iter().zip(s2).map(|(p, q)| ring.reduce(&(&x.scale(p) + &y.scale(q)))).collect();
                let t = implicit_tangent(ring, span, &z)?;
                let tr = is_transversal(ring, &t, w)?;
                Ok(Some((vec![x, y], z, tr)))
            })?;
            Ok(IntersectionReport::finite(pts, Some(form), M))
        }
        d => Ok(IntersectionReport::nonfinite(format!("W meets the span of the quadric in a P^{}", d - 1), M)),
    }
}

/// Evaluates `f` on every root cluster, splitting moduli as needed. `f` returns
/// `(params, coords, transversal)`, or `None` for an extraneous root.
fn finish_clusters(
    cl: &[RootCluster],
    mut f: impl FnMut(&ResidueRing, &RootCluster) -> SplitResult<Option<(Vec<UniPoly>, Vec<UniPoly>, bool)>>,
) -> Result<Vec<IntersectionPoint>> {
    let mut out = vec![];
    for c in cl {
        for (m, r) in split_eval(&c.modulus, |ring| f(ring, c)) {
            if let Some((params, coords, tr)) = r {
                out.push(IntersectionPoint {
                    modulus: m,
                    params,
                    coords,
                    multiplicity: c.multiplicity,
                    transversal: tr && c.multiplicity == 1,
                });
            }
        }
    }
    Ok(out)
}

/// Outcome of evaluating the parametrization at candidate parameters.
enum Check {
    Ok(Vec<UniPoly>, bool),
    Bad(&'static str),
}

/// Image coordinates at `params`, checked against `W` and `Q`, with transversality.
fn check_point(ring: &ResidueRing, v: &ParamVariety, w: &LinearSubspace, params: &[UniPoly]) -> SplitResult<Check> {
    let coords: Vec<UniPoly> = v.coords.iter().map(|c| ring.eval_multi(c, params)).collect();
    let mut all_zero = true;
    for c in &coords {
        if !ring.is_zero_or_split(c)? {
            all_zero = false;
        }
    }
    if all_zero {
        return Ok(Check::Bad("candidate parameters form a base point"));
    }
    for e in w.equations() {
        let mut acc = ring.zero();
        for (ei, c) in e.iter().zip(&coords) {
            acc = &acc + &c.scale(ei);
        }
        if !ring.is_zero_or_split(&ring.reduce(&acc))? {
            return Ok(Check::Bad("candidate point violates an equation of W"));
        }
    }
    if !ring.is_zero_or_split(&ring_quad(ring, &coords))? {
        return Ok(Check::Bad("candidate point is off Q6"));
    }
    let t = param_tangent(ring, v, params);
    Ok(Check::Ok(coords, is_transversal(ring, &t, w)?))
}

fn linear_form_at(c: &[[Scalar; 2]], k: usize) -> BinaryForm {
    BinaryForm::new(c[k].to_vec(), Q).unwrap()
}

fn det3(m: &[Vec<BinaryForm>], r: [usize; 3]) -> Result<BinaryForm> {
    let e = |i: usize, j: usize| &m[r[i]][j];
    let t1 = e(0, 0).mul(&e(1, 1).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 1)))?);
    let t2 = e(0, 1).mul(&e(1, 0).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 0)))?);
    let t3 = e(0, 2).mul(&e(1, 0).mul(e(2, 1)).sub(&e(1, 1).mul(e(2, 0)))?);
    t1.sub(&t2)?.add(&t3)
}

/// Bilinear `P^1 x P^2` parametrization: for fixed `u` the conditions are
/// linear in `v`, so the points sit over the common roots of the 3x3 minors.
fn bilinear(v: &ParamVariety, w: &LinearSubspace, eqs: &[Vec<Scalar>]) -> Result<IntersectionReport> {
    const M: &str = "bilinear-minors";
    if eqs.len() < 3 {
        return Ok(IntersectionReport::nonfinite("fewer than three equations on a threefold", M));
    }
    // coefficient of u_a v_j in x_i
    let coef = |i: usize, a: usize, j: usize| v.coords[i].derivative(a).derivative(2 + j).constant_term();
    let mat: Vec<Vec<BinaryForm>> = eqs
        .iter()
        .map(|e| {
            (0..3)
                .map(|j| {
                    let c: Vec<[Scalar; 2]> = vec![[0, 1].map(|a| {
                        (0..quadspace::N).fold(Q.zero(), |acc, i| &acc + &(&e[i] * &coef(i, a, j)))
                    })];
                    linear_form_at(&c, 0)
                })
                .collect()
        })
        .collect();
    let m = mat.len();
    let mut minors = vec![];
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                minors.push(det3(&mat, [a, b, c])?);
            }
        }
    }
    let Some(phi) = gcd_many(&minors)? else {
        return Ok(IntersectionReport::nonfinite("all maximal minors vanish identically", M));
    };
    let cl = clusters(&phi)?;
    let mut positive = false;
    let mut bad = None;
    let pts = finish_clusters(&cl, |ring, c| {
        let (a, b) = c.point(ring);
        let rows: Vec<Vec<UniPoly>> = mat.iter().map(|row| row.iter().map(|f| ring.reduce(&f.eval_uni(&a, &b))).collect()).collect();
        let ker = ring.kernel_basis(&rows, 3)?;
        if ker.len() != 1 {
            positive |= ker.len() > 1;
            return Ok(None);
        }
        let vv = ring.normalize_vector(&ker[0])?;
        let params = vec![a, b, vv[0].clone(), vv[1].clone(), vv[2].clone()];
        match check_point(ring, v, w, &params)? {
            Check::Ok(coords, tr) => Ok(Some((params, coords, tr))),
            Check::Bad(s) => {
                bad = Some(s);
                Ok(None)
            }
        }
    })?;
    if let Some(s) = bad {
        return Err(Error::Internal(s.into()));
    }
    if positive {
        return Ok(IntersectionReport::nonfinite("a fiber of P^1 x P^2 -> P^1 meets W in a line", M));
    }
    Ok(IntersectionReport::finite(pts, Some(phi), M))
}

/// Binary form of degree `d` from a polynomial in `(w0, w1)` only.
fn to_binform(p: &MultiPoly, d: usize) -> BinaryForm {
    let mut c = vec![Q.zero(); d + 1];
    for (e, v) in p.terms() {
        c[e[1] as usize] = v.clone();
    }
    BinaryForm::new(c, Q).unwrap()
}

/// Common zeros of ternary conics, found under a random coordinate change `u = T w`.
pub struct ConicSolution {
    pub t: Matrix,
    pub eliminant: BinaryForm,
    /// `(modulus, w, multiplicity)`.
    pub sols: Vec<(UniPoly, Vec<UniPoly>, usize)>,
}

const CONIC_ATTEMPTS: u64 = 30;

/// `None` when the conics share a curve.
pub fn solve_conics(conics: &[MultiPoly], seed: u64) -> Result<Option<ConicSolution>> {
    let wv = MultiPoly::names(&["w0", "w1", "w2"]);
    let wvar = |i| MultiPoly::var_at(&wv, i, Q);
    'attempt: for attempt in 0..CONIC_ATTEMPTS {
        let mut rng = quadspace::rng_for(seed, (4 << 32) + attempt);
        let t = Matrix::from_rows(
            (0..3).map(|_| (0..3).map(|_| Q.from_i64(rng.gen_range(-3..=3))).collect()).collect(),
            3,
            Q,
        )?;
        if t.rank() < 3 {
            continue;
        }
        let sub: Vec<MultiPoly> = (0..3)
            .map(|l| (0..3).fold(MultiPoly::zero(&wv, Q), |acc, m| acc.add(&wvar(m).scale(t.get(l, m)))))
            .collect();
        let es: Vec<MultiPoly> = conics.iter().map(|c| c.compose(&sub)).collect::<Result<_>>()?;
        if es.iter().any(|e| e.terms().get(&vec![0, 0, 2]).is_none()) {
            continue;
        }
        let mut res = vec![];
        for i in 0..es.len() {
            for j in i + 1..es.len() {
                res.push(to_binform(&resultant(&es[i], &es[j], "w2")?, 4));
            }
        }
        let Some(phi) = gcd_many(&res)? else {
            return Ok(None);
        };
        let mut sols = vec![];
        let mut accepted = vec![];
        for c in clusters(&phi)? {
            let mut retry = false;
            let found = split_eval(&c.modulus, |ring| {
                let (a, b) = c.point(ring);
                let pt = [a.clone(), b.clone(), ring.zero()];
                let polys: Vec<Vec<UniPoly>> =
                    es.iter().map(|e| e.coeffs_in(2).iter().map(|k| ring.eval_multi(k, &pt)).collect()).collect();
                let g = ring_poly_gcd(ring, &polys)?;
                Ok((a, b, g))
            });
            for (m, (a, b, g)) in found {
                match g.len() {
                    2 => {
                        let w2 = ring_neg(&g[0]);
                        sols.push((m.clone(), vec![a, b, w2], c.multiplicity));
                        accepted.push(RootCluster { modulus: m, at_infinity: c.at_infinity, multiplicity: c.multiplicity });
                    }
                    0 | 1 => {}
                    _ => retry = true,
                }
            }
            if retry {
                continue 'attempt;
            }
        }
        return Ok(Some(ConicSolution { t, eliminant: form_from_clusters(&accepted, Q), sols }));
    }
    Err(Error::NonGeneric("no coordinate change separates the common zeros of the conics".into()))
}

fn ring_neg(a: &UniPoly) -> UniPoly {
    -a
}

/// Weighted cone over the Veronese surface: eliminate the weight-2 variable
/// with one equation, leaving conics in `(u0, u1, u2)`.
fn cone(v: &ParamVariety, w: &LinearSubspace, eqs: &[Vec<Scalar>], seed: u64) -> Result<IntersectionReport> {
    const M: &str = "cone-resultants";
    let uv = MultiPoly::names(&["u0", "u1", "u2"]);
    let base: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var_at(&uv, i, Q)).chain([MultiPoly::zero(&uv, Q)]).collect();
    let alpha: Vec<Scalar> = v.coords.iter().map(|c| c.derivative(3).constant_term()).collect();
    let cpart: Vec<MultiPoly> = v.coords.iter().map(|c| c.compose(&base)).collect::<Result<_>>()?;
    let comb = |e: &[Scalar]| {
        let a = e.iter().zip(&alpha).fold(Q.zero(), |acc, (x, y)| &acc + &(x * y));
        let d = e.iter().zip(&cpart).fold(MultiPoly::zero(&uv, Q), |acc, (x, p)| acc.add(&p.scale(x)));
        (a, d)
    };
    let lin: Vec<(Scalar, MultiPoly)> = eqs.iter().map(|e| comb(e)).collect();
    let Some(k0) = lin.iter().position(|(a, _)| !a.is_zero()) else {
        return Err(Error::NonGeneric("W contains the vertex of the cone".into()));
    };
    let (a0, d0) = lin[k0].clone();
    let conics: Vec<MultiPoly> = lin
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != k0)
        .map(|(_, (a, d))| d.sub(&d0.scale(&(a * &a0.inv().unwrap()))))
        .filter(|c| !c.is_zero())
        .collect();
    if conics.len() < 2 {
        return Ok(IntersectionReport::nonfinite("fewer than two independent conics after elimination", M));
    }
    let Some(sol) = solve_conics(&conics, seed)? else {
        return Ok(IntersectionReport::nonfinite("the conics share a component", M));
    };
    let a0inv = a0.inv().unwrap();
    let mut pts = vec![];
    for (m, wv, mult) in &sol.sols {
        let mut bad = None;
        for (mm, r) in split_eval(m, |ring| {
            let u: Vec<UniPoly> = (0..3)
                .map(|l| ring.reduce(&(0..3).fold(ring.zero(), |acc, k| &acc + &wv[k].scale(sol.t.get(l, k)))))
                .collect();
            let u3 = ring.reduce(&ring.eval_multi(&d0, &u).scale(&-&a0inv));
            let params = vec![u[0].clone(), u[1].clone(), u[2].clone(), u3];
            Ok((check_point(ring, v, w, &params)?, params))
        }) {
            match r {
                (Check::Ok(coords, tr), params) => pts.push(IntersectionPoint {
                    modulus: mm,
                    params,
                    coords,
                    multiplicity: *mult,
                    transversal: tr && *mult == 1,
                }),
                (Check::Bad(s), _) => bad = Some(s),
            }
        }
        if let Some(s) = bad {
            return Err(Error::Internal(s.into()));
        }
    }
    let mut rep = IntersectionReport::finite(pts, Some(sol.eliminant), M);
    rep.eliminant_coords = Some(sol.t);
    Ok(rep)
}
