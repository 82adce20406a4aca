//! Irreducibility: the divisor contains a whole pencil member `P(a,b)`
//! exactly when the four coefficient forms of `lambda` share a root.

use crate::algebra::{split_eval, BinaryForm, Field, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::intersect::roots::clusters;
use crate::intersect::tangent::{lift, DivisorCharts};
use crate::quadspace::{self, iso_type, line_l, IsoType, LinearSubspace, ProjPoint};
use crate::varieties::{PlaneFamily, Q4Divisor};

const Q: Field = Field::Rational;

/// A pencil member contained in the divisor.
#[derive(Clone, Debug)]
pub struct ContainedPlane {
    pub a: Scalar,
    pub b: Scalar,
    pub plane: LinearSubspace,
    pub iso: IsoType,
    pub contained: bool,
}

#[derive(Clone, Debug)]
pub enum Irreducibility {
    Irreducible,
    Reducible {
        /// Common factor of the `lambda` coefficient forms.
        common: BinaryForm,
        /// Rational roots of `common` with their pencil members.
        planes: Vec<ContainedPlane>,
        /// Number of roots over the algebraic closure (without multiplicity).
        roots: usize,
        /// What remains after removing the pencil members, when anything does.
        residual: Option<Q4Divisor>,
    },
}

pub fn check_irreducible(d: &Q4Divisor) -> Result<()> {
    let g = d.lambda_gcd()?;
    if g.degree() > 0 {
        return Err(Error::Reducible(format!("lambda coefficient forms share the factor {}", show_form(&g))));
    }
    Ok(())
}

fn show_form(f: &BinaryForm) -> String {
    let d = f.degree();
    let terms: Vec<String> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let mono = match (d - i, i) {
                (0, 0) => String::new(),
                (a, 0) => pow("a", a),
                (0, b) => pow("b", b),
                (a, b) => format!("{}*{}", pow("a", a), pow("b", b)),
            };
            if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else {
                format!("{c}*{mono}")
            }
        })
        .collect();
    terms.join(" + ")
}

fn pow(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

pub fn irreducible(d: &Q4Divisor) -> Result<Irreducibility> {
    let g = d.lambda_gcd()?;
    if g.degree() == 0 {
        return Ok(Irreducibility::Irreducible);
    }
    let mut planes = vec![];
    let mut roots = 0;
    for c in clusters(&g)? {
        roots += c.count();
        if c.count() != 1 {
            continue;
        }
        let (a, b) = if c.at_infinity { (Q.one(), Q.zero()) } else { (-&c.modulus.coeff(0), Q.one()) };
        let fam = d.q_plane(&a, &b)?;
        let iso = iso_type(&fam.pencil)?;
        planes.push(ContainedPlane { a, b, contained: fam.whole && fam.pencil.is_isotropic(), plane: fam.pencil, iso });
    }
    Ok(Irreducibility::Reducible { residual: residual(d, &g)?, common: g, planes, roots })
}

/// Divides the `lambda` forms by their common factor and repackages the
/// quotient as a divisor with smaller `p`.
fn residual(d: &Q4Divisor, g: &BinaryForm) -> Result<Option<Q4Divisor>> {
    let k = g.degree();
    if k >= d.p() {
        return Ok(None);
    }
    let p = d.p() - k;
    let [l1, l2, l3, l4] = d.lambda_forms();
    let div = |f: &BinaryForm, deg: usize| -> Result<BinaryForm> {
        if f.is_zero() {
            Ok(BinaryForm::zero(deg, Q))
        } else {
            f.exact_div(g)
        }
    };
    let (g1, g2, c3, gp) = (div(&l1, p - 1)?, div(&l2, p - 1)?, div(&l3, p)?, div(&l4, p)?);
    // c3 = a g3 + b g5: all but the last coefficient go to g3
    let cs = c3.coeffs();
    let g3 = BinaryForm::new(cs[..p].to_vec(), Q)?;
    let mut g5c = vec![Q.zero(); p];
    g5c[p - 1] = cs[p].clone();
    let g5 = BinaryForm::new(g5c, Q)?;
    Ok(Some(Q4Divisor::new(p, gp, g1, g2, g3, g5)?))
}

/// Sampled structure of an irreducible divisor as a union of planes.
#[derive(Clone, Debug)]
pub struct PlaneDecomposition {
    pub planes: Vec<PlaneFamily>,
    pub pairs_checked: usize,
    /// Pairs whose intersection lies in `L`.
    pub pairs_in_l: usize,
    pub points_checked: usize,
    /// Sampled points that pass the membership test.
    pub members: usize,
    /// Sampled points off `L` with a 4-dimensional tangent space.
    pub smooth_points: usize,
}

pub fn plane_decomposition(d: &Q4Divisor, samples: usize, seed: u64) -> Result<PlaneDecomposition> {
    check_irreducible(d)?;
    let mut rng = quadspace::rng_for(seed, 6 << 32);
    let l = line_l(Q);
    let charts = DivisorCharts::new(d)?;
    let mut planes: Vec<PlaneFamily> = vec![];
    while planes.len() < samples {
        let a = quadspace::random_scalar(Q, &mut rng);
        let b = quadspace::random_scalar(Q, &mut rng);
        if a.is_zero() && b.is_zero() || planes.iter().any(|p| (&p.a * &b - &p.b * &a).is_zero()) {
            continue;
        }
        planes.push(d.q_plane(&a, &b)?);
    }
    let (mut pairs_checked, mut pairs_in_l) = (0, 0);
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            pairs_checked += 1;
            if l.contains_subspace(&planes[i].plane.intersect(&planes[j].plane)) {
                pairs_in_l += 1;
            }
        }
    }
    let (mut points_checked, mut members, mut smooth_points) = (0, 0, 0);
    for fam in &planes {
        let z = quadspace::random_element(&fam.plane, &mut rng);
        if l.contains(&z) {
            continue;
        }
        points_checked += 1;
        if d.contains(&ProjPoint::new(z.clone())?)? {
            members += 1;
        }
        let ok = split_eval(&UniPoly::x(Q), |ring| match charts.tangent(ring, &lift(&z))? {
            Some(t) => Ok(ring.rank(&t)? == 4),
            None => Ok(false),
        });
        if ok[0].1 {
            smooth_points += 1;
        }
    }
    Ok(PlaneDecomposition { planes, pairs_checked, pairs_in_l, points_checked, members, smooth_points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x1x4_is_reducible() {
        let d = Q4Divisor::from_i64(2, &[0, 0, 0], &[1, 0], &[0, 0], &[0, 0], &[0, 0]).unwrap();
        let Irreducibility::Reducible { planes, residual, .. } = irreducible(&d).unwrap() else { panic!() };
        assert_eq!(planes.len(), 1);
        assert!(planes[0].a.is_zero() && planes[0].b.is_one());
        assert_eq!(planes[0].iso, IsoType::Vertical);
        assert!(planes[0].contained);
        let r = residual.unwrap();
        assert_eq!(r.p(), 1);
        assert_eq!(r.f(), Q4Divisor::from_i64(1, &[0, 0], &[1], &[0], &[0], &[0]).unwrap().f());
        assert!(matches!(irreducible(&Q4Divisor::segre()).unwrap(), Irreducibility::Irreducible));
    }
}
