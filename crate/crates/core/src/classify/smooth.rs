//! Smoothness of an irreducible divisor, decided from `g1, g2` and certified
//! by two planes of the divisor through a common point.

use serde::Serialize;

use super::normal::{normalize_p2, NormalForm};
use super::reducible::check_irreducible;
use crate::algebra::residue::SplitResult;
use crate::algebra::{gcd_forms, split_eval, BinaryForm, Field, ResidueRing, UniPoly};
use crate::error::{Error, Result};
use crate::intersect::roots::{clusters, RootCluster};
use crate::intersect::tangent::{lift, DivisorCharts};
use crate::quadspace::{self, h0, ProjPoint, N};
use crate::varieties::Q4Divisor;

const Q: Field = Field::Rational;

/// A plane `Q(a,b)` of the divisor, possibly over `Q[t]/(modulus)`.
#[derive(Clone, Debug)]
pub struct PlaneCert {
    pub modulus: UniPoly,
    pub a: UniPoly,
    pub b: UniPoly,
    pub basis: Vec<Vec<UniPoly>>,
}

impl PlaneCert {
    pub fn is_rational(&self) -> bool {
        self.modulus.deg0() == 1
    }
}

/// A singular point with two planes of the divisor through it whose span
/// has dimension at least 5.
#[derive(Clone, Debug)]
pub struct SingularWitness {
    pub point: ProjPoint,
    pub planes: [PlaneCert; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingularReason {
    /// `g1, g2` share a root, so one plane contains `L`.
    CommonRootPair,
    /// `p = 1`: `psi` is constant and every plane passes through one point.
    RankDeficient,
    /// `psi` has degree at least 2 and identifies two parameters.
    PsiDoublePoint,
}

#[derive(Clone, Debug)]
pub enum Smoothness {
    Smooth(NormalForm),
    Singular { reason: SingularReason, witness: SingularWitness },
    /// `g1 = g2 = 0`: the divisor is a cone with vertex `L`; the witness is a point of `L`.
    DoubleCone { witness: ProjPoint },
}

/// Fixed order of candidate parameters: `(1:0), (0:1), (1:1), (1:-1), (1:2), (2:1), ...`.
pub fn candidates() -> impl Iterator<Item = (i64, i64)> {
    let head = [(1, 0), (0, 1)].into_iter();
    let tail = (1i64..).flat_map(|n| {
        (1..=n)
            .filter(move |&m| num_integer::gcd(m, n) == 1)
            .flat_map(move |m| {
                let mut v = vec![(m, n), (n, m), (m, -n), (n, -m)];
                v.dedup();
                v
            })
    });
    head.chain(tail)
}

/// The plane `Q(a,b)` over the ring, with `(a,b)` given as ring elements.
pub fn plane_over(ring: &ResidueRing, d: &Q4Divisor, a: &UniPoly, b: &UniPoly) -> SplitResult<Vec<Vec<UniPoly>>> {
    let lam: Vec<UniPoly> = d.lambda_forms().iter().map(|f| ring.reduce(&f.eval_uni(a, b))).collect();
    let ker = ring.kernel_basis(&[lam], 4)?;
    Ok(ker
        .iter()
        .map(|u| {
            let mut x = vec![ring.zero(); N];
            x[0] = u[0].clone();
            x[1] = u[1].clone();
            x[2] = ring.mul(&u[2], a);
            x[4] = ring.mul(&u[2], b);
            x[3] = ring.mul(&u[3], a);
            x[5] = ring.mul(&u[3], b);
            x
        })
        .collect())
}

fn rational_plane(d: &Q4Divisor, a: i64, b: i64) -> PlaneCert {
    let t = UniPoly::x(Q);
    let (a, b) = (UniPoly::constant(Q.from_i64(a)), UniPoly::constant(Q.from_i64(b)));
    let (_, basis) = split_eval(&t, |ring| plane_over(ring, d, &a, &b)).remove(0);
    PlaneCert { modulus: t, a, b, basis }
}

/// A plane over the first root of `cl` (splitting its modulus if needed).
fn cluster_plane(d: &Q4Divisor, cl: &RootCluster) -> PlaneCert {
    let (m, (a, b, basis)) = split_eval(&cl.modulus, |ring| {
        let (a, b) = cl.point(ring);
        let basis = plane_over(ring, d, &a, &b)?;
        Ok((a, b, basis))
    })
    .remove(0);
    PlaneCert { modulus: m, a, b, basis }
}

/// Clusters ordered so rational roots come first.
fn sorted_clusters(f: &BinaryForm) -> Result<Vec<RootCluster>> {
    let mut cl = clusters(f)?;
    cl.sort_by_key(|c| (c.count(), !c.at_infinity));
    Ok(cl)
}

pub fn smoothness(d: &Q4Divisor) -> Result<Smoothness> {
    let (g1, g2) = (d.g1(), d.g2());
    if g1.is_zero() && g2.is_zero() {
        return Ok(Smoothness::DoubleCone { witness: ProjPoint::new(quadspace::unit(0, Q))? });
    }
    check_irreducible(d)?;
    let common = gcd_forms(g1, g2)?;
    if common.degree() > 0 {
        let root = sorted_clusters(&common)?.remove(0);
        let (a1, b1) = candidates().find(|(a, b)| !common.eval(&Q.from_i64(*a), &Q.from_i64(*b)).is_zero()).unwrap();
        let witness = SingularWitness {
            point: d.psi(&Q.from_i64(a1), &Q.from_i64(b1))?,
            planes: [rational_plane(d, a1, b1), cluster_plane(d, &root)],
        };
        return Ok(Smoothness::Singular { reason: SingularReason::CommonRootPair, witness });
    }
    match d.p() {
        1 => {
            let witness = SingularWitness {
                point: d.psi(&Q.one(), &Q.zero())?,
                planes: [rational_plane(d, 1, 0), rational_plane(d, 0, 1)],
            };
            Ok(Smoothness::Singular { reason: SingularReason::RankDeficient, witness })
        }
        2 => Ok(Smoothness::Smooth(normalize_p2(d)?)),
        _ => {
            let (witness, _) = psi_double_point(d)?;
            Ok(Smoothness::Singular { reason: SingularReason::PsiDoublePoint, witness })
        }
    }
}

/// First candidate `(a1:b1)` with a partner `(a2:b2) != (a1:b1)` such that
/// `psi(a1:b1) = psi(a2:b2)`; the partner is rational when possible.
pub fn psi_double_point(d: &Q4Divisor) -> Result<(SingularWitness, (i64, i64))> {
    let (g1, g2) = (d.g1(), d.g2());
    for (a1, b1) in candidates().take(200) {
        let (a, b) = (Q.from_i64(a1), Q.from_i64(b1));
        let (v1, v2) = (g1.eval(&a, &b), g2.eval(&a, &b));
        if v1.is_zero() && v2.is_zero() {
            continue;
        }
        // K(X,Y) = g1(a1,b1) g2(X,Y) - g2(a1,b1) g1(X,Y), with (b1 X - a1 Y) removed
        let mut k = g2.scale(&v1).sub(&g1.scale(&v2))?;
        if k.is_zero() {
            continue;
        }
        let lin = BinaryForm::new(vec![b.clone(), -&a], Q)?;
        while k.degree() > 0 {
            match k.exact_div(&lin) {
                Ok(q) => k = q,
                Err(_) => break,
            }
        }
        if k.degree() == 0 {
            continue;
        }
        let partner = sorted_clusters(&k)?.remove(0);
        let witness = SingularWitness { point: d.psi(&a, &b)?, planes: [rational_plane(d, a1, b1), cluster_plane(d, &partner)] };
        return Ok((witness, (a1, b1)));
    }
    Err(Error::Internal("no psi coincidence found among candidate parameters".into()))
}

/// Checks a witness: both planes lie in the divisor, pass through the point,
/// and together span at least a 5-dimensional space.
pub fn verify_witness(d: &Q4Divisor, w: &SingularWitness) -> Result<bool> {
    let [p1, p2] = &w.planes;
    if !p1.is_rational() {
        return Err(Error::Invalid("the first certificate plane must be rational".into()));
    }
    let f = d.f();
    let z = lift(w.point.coords());
    let first: Vec<Vec<UniPoly>> = p1.basis.iter().map(|v| v.iter().map(|c| UniPoly::constant(c.coeff(0))).collect()).collect();
    let h0b: Vec<Vec<UniPoly>> = h0(Q).basis_vectors().iter().map(|v| lift(v)).collect();
    let grid = d.p().max(2) + 1;
    let results = split_eval(&p2.modulus, |ring| {
        let second: Vec<Vec<UniPoly>> = p2.basis.iter().map(|v| v.iter().map(|c| ring.reduce(c)).collect()).collect();
        for plane in [&first, &second] {
            if ring.rank(plane)? != 3 {
                return Ok(false);
            }
            let mut with_z = plane.clone();
            with_z.push(z.clone());
            if ring.rank(&with_z)? != 3 {
                return Ok(false);
            }
            let mut with_h0 = plane.clone();
            with_h0.extend(h0b.iter().cloned());
            if ring.rank(&with_h0)? == 4 {
                return Ok(false);
            }
            // f and the Q4 equations vanish on a grid large enough to force
            // vanishing on the whole plane
            for i in 0..grid {
                for j in 0..grid {
                    for k in 0..grid {
                        let c = [i, j, k].map(|v| UniPoly::constant(Q.from_i64(v as i64)));
                        let x = crate::intersect::tangent::combine(ring, plane, &c);
                        let q4 = ring.sub(&ring.mul(&x[2], &x[5]), &ring.mul(&x[3], &x[4]));
                        for v in [ring.eval_multi(&f, &x), q4, x[6].clone(), x[7].clone()] {
                            if !ring.is_zero_or_split(&v)? {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
        let mut both = first.clone();
        both.extend(second);
        Ok(ring.rank(&both)? >= 5)
    });
    Ok(results.iter().all(|(_, ok)| *ok))
}

/// Samples `n` random points off `L` and counts those where the divisor has
/// a 4-dimensional affine tangent space.
pub fn jacobian_samples(d: &Q4Divisor, n: usize, seed: u64) -> Result<usize> {
    let charts = DivisorCharts::new(d)?;
    let mut rng = quadspace::rng_for(seed, 5 << 32);
    let mut full = 0;
    for _ in 0..n {
        let z = d.random_point(Q, &mut rng)?;
        let ok = split_eval(&UniPoly::x(Q), |ring| match charts.tangent(ring, &lift(&z))? {
            Some(t) => Ok(ring.rank(&t)? == 4),
            None => Ok(false),
        });
        if ok[0].1 {
            full += 1;
        }
    }
    Ok(full)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_order() {
        let c: Vec<(i64, i64)> = candidates().take(8).collect();
        assert_eq!(c, vec![(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1)]);
    }

    #[test]
    fn reference_verdicts() {
        // x1 x4^2 + x2 x6^2
        let d = Q4Divisor::from_i64(3, &[0, 0, 0, 0], &[1, 0, 0], &[0, 0, 1], &[0, 0, 0], &[0, 0, 0]).unwrap();
        let Smoothness::Singular { reason, witness } = smoothness(&d).unwrap() else { panic!() };
        assert_eq!(reason, SingularReason::PsiDoublePoint);
        assert_eq!(witness.point, ProjPoint::from_i64(&[-1, 1, 0, 0, 0, 0, 0, 0], Q));
        assert!(verify_witness(&d, &witness).unwrap());
        // x4^3 + x6^3
        let d = Q4Divisor::from_i64(3, &[1, 0, 0, 1], &[0, 0, 0], &[0, 0, 0], &[0, 0, 0], &[0, 0, 0]).unwrap();
        assert!(matches!(smoothness(&d).unwrap(), Smoothness::DoubleCone { .. }));
        assert!(matches!(smoothness(&Q4Divisor::segre()).unwrap(), Smoothness::Smooth(_)));
    }
}
