//! Concrete threefolds: built-in parametrizations and the Weil divisors on `Q4`.

pub mod divisor;
pub mod expr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Matrix, MultiPoly, Scalar};
use crate::error::{Error, Result};
use crate::quadspace::{self, LinearSubspace, ProjPoint, PAIRS};

pub use divisor::{PlaneFamily, Q4Divisor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpaceKind {
    P3,
    WP1112,
    P1xP2,
    P2,
    P1,
}

impl std::str::FromStr for SpaceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "P3" => SpaceKind::P3,
            "WP1112" => SpaceKind::WP1112,
            "P1xP2" => SpaceKind::P1xP2,
            "P2" => SpaceKind::P2,
            "P1" => SpaceKind::P1,
            _ => return Err(Error::Parse(format!("unknown parameter space `{s}`"))),
        })
    }
}

/// A parameter space with named variables and weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSpace {
    pub kind: SpaceKind,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
}

impl ParamSpace {
    pub fn new(kind: SpaceKind) -> Self {
        let names: &[&str] = match kind {
            SpaceKind::P3 | SpaceKind::WP1112 => &["u0", "u1", "u2", "u3"],
            SpaceKind::P1xP2 => &["u0", "u1", "v0", "v1", "v2"],
            SpaceKind::P2 => &["u0", "u1", "u2"],
            SpaceKind::P1 => &["u0", "u1"],
        };
        Self::with_vars(kind, names)
    }

    pub fn with_vars(kind: SpaceKind, names: &[&str]) -> Self {
        let mut weights = vec![1; names.len()];
        if kind == SpaceKind::WP1112 {
            weights[3] = 2;
        }
        ParamSpace { kind, vars: MultiPoly::names(names), weights }
    }

    /// Index groups that scale independently.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        match self.kind {
            SpaceKind::P1xP2 => vec![vec![0, 1], vec![2, 3, 4]],
            _ => vec![(0..self.vars.len()).collect()],
        }
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            SpaceKind::P3 | SpaceKind::WP1112 | SpaceKind::P1xP2 => 3,
            SpaceKind::P2 => 2,
            SpaceKind::P1 => 1,
        }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn check_params(&self, params: &[Scalar]) -> Result<()> {
        if params.len() != self.vars.len() {
            return Err(Error::Dimension(format!("expected {} parameters, got {}", self.vars.len(), params.len())));
        }
        for g in self.groups() {
            if g.iter().all(|&i| params[i].is_zero()) {
                return Err(Error::Invalid("parameter tuple is zero in a projective factor".into()));
            }
        }
        Ok(())
    }

    /// Random valid parameter point with small integer (or uniform F_q) entries.
    pub fn random_point(&self, field: Field, rng: &mut impl Rng) -> Vec<Scalar> {
        loop {
            let p = quadspace::random_vector(self.vars.len(), field, rng);
            if self.check_params(&p).is_ok() {
                return p;
            }
        }
    }
}

/// A parametrized threefold (or surface) in `P^7`.
#[derive(Clone, Debug)]
pub struct ParamVariety {
    pub name: String,
    pub space: ParamSpace,
    pub coords: Vec<MultiPoly>,
    /// Linear span with an implicit description, when the model provides one.
    pub implicit_span: Option<LinearSubspace>,
}

impl ParamVariety {
    /// Validates homogeneity and that the image lies on `Q6`.
    pub fn new(name: &str, space: ParamSpace, coords: Vec<MultiPoly>, implicit_span: Option<LinearSubspace>) -> Result<Self> {
        if coords.len() != quadspace::N {
            return Err(Error::Dimension(format!("need 8 coordinate polynomials, got {}", coords.len())));
        }
        for c in &coords {
            if c.vars() != space.vars.as_slice() {
                return Err(Error::Invalid("coordinate polynomial over the wrong variables".into()));
            }
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Invalid("all coordinates vanish identically".into()));
        }
        let v = ParamVariety { name: name.to_string(), space, coords, implicit_span };
        v.multidegree()?;
        if !v.pullback_q().is_zero() {
            return Err(Error::NotOnVariety(format!("`{name}` does not lie on Q6")));
        }
        if let Some(s) = &v.implicit_span {
            for e in s.equations() {
                let mut acc = MultiPoly::zero(&v.space.vars, Field::Rational);
                for (c, p) in e.iter().zip(&v.coords) {
                    acc = acc.add(&p.scale(c));
                }
                if !acc.is_zero() {
                    return Err(Error::Invalid("parametrization leaves its declared span".into()));
                }
            }
        }
        Ok(v)
    }

    /// Common degree of the coordinates in each scaling group.
    pub fn multidegree(&self) -> Result<Vec<u32>> {
        let mut out = vec![];
        for g in self.space.groups() {
            let mut w = vec![0; self.space.nvars()];
            for &i in &g {
                w[i] = self.space.weights[i];
            }
            let mut deg = None;
            for c in &self.coords {
                match c.weighted_degree(&w) {
                    None => return Err(Error::Invalid("coordinate polynomial is not homogeneous".into())),
                    Some(None) => {}
                    Some(Some(d)) => match deg {
                        None => deg = Some(d),
                        Some(e) if e != d => {
                            return Err(Error::Invalid("coordinates have different degrees".into()));
                        }
                        _ => {}
                    },
                }
            }
            out.push(deg.unwrap_or(0));
        }
        Ok(out)
    }

    /// `x1x8 - x2x7 + x3x6 - x4x5` composed with the parametrization.
    pub fn pullback_q(&self) -> MultiPoly {
        let mut acc = MultiPoly::zero(&self.space.vars, Field::Rational);
        for (i, j, s) in PAIRS {
            acc = acc.add(&self.coords[i].mul(&self.coords[j]).scale(&Field::Rational.from_i64(s)));
        }
        acc
    }

    pub fn field(&self) -> Field {
        Field::Rational
    }

    /// Image coordinates (not normalized) over the field of `params`.
    pub fn eval_raw(&self, params: &[Scalar]) -> Result<Vec<Scalar>> {
        self.space.check_params(params)?;
        let f = params[0].field();
        self.coords.iter().map(|c| c.coerce(f)?.eval(params)).collect()
    }

    pub fn eval_param(&self, params: &[Scalar]) -> Result<ProjPoint> {
        let raw = self.eval_raw(params)?;
        ProjPoint::new(raw).map_err(|_| Error::NotOnVariety("parameter point is a base point of the parametrization".into()))
    }

    /// The 8 x n Jacobian of the affine-cone parametrization.
    pub fn jacobian_at(&self, params: &[Scalar]) -> Result<Matrix> {
        self.space.check_params(params)?;
        let f = params[0].field();
        let n = self.space.nvars();
        let mut rows = vec![];
        for c in &self.coords {
            let c = c.coerce(f)?;
            rows.push((0..n).map(|j| c.derivative(j).eval(params)).collect::<Result<Vec<_>>>()?);
        }
        Matrix::from_rows(rows, n, f)
    }

    pub fn jacobian_rank_at(&self, params: &[Scalar]) -> Result<usize> {
        Ok(self.jacobian_at(params)?.rank())
    }

    /// True when every coordinate has degree one (a linear embedding).
    pub fn is_linear(&self) -> bool {
        self.space.kind == SpaceKind::P3 && self.multidegree().map(|d| d == vec![1]).unwrap_or(false)
    }
}

fn polys(space: &ParamSpace, exprs: &[&str]) -> Vec<MultiPoly> {
    exprs.iter().map(|e| expr::parse_poly(e, &space.vars).expect("builtin expression")).collect()
}

pub const BUILTINS: [&str; 7] = ["horizontal3", "vertical3", "quadric5", "segre", "veronese_surface", "veronese_cone", "cubic_secant"];

/// The `P^4 = {x1 = x8, x2 = -x7, x4 = x5}` carrying the rank-5 quadric model.
pub fn quadric5_span() -> LinearSubspace {
    let q = Field::Rational;
    let eq = |pairs: &[(usize, i64)]| {
        let mut v = vec![q.zero(); 8];
        for &(i, c) in pairs {
            v[i] = q.from_i64(c);
        }
        v
    };
    LinearSubspace::from_equations(&[eq(&[(0, 1), (7, -1)]), eq(&[(1, 1), (6, 1)]), eq(&[(3, 1), (4, -1)])], q).unwrap()
}

/// Built-in varieties by name.
pub fn builtin(name: &str) -> Result<ParamVariety> {
    let (space, exprs, implicit): (ParamSpace, Vec<&str>, Option<LinearSubspace>) = match name {
        "horizontal3" => (ParamSpace::new(SpaceKind::P3), vec!["u0", "u1", "u2", "0", "u3", "0", "0", "0"], None),
        "vertical3" => (ParamSpace::new(SpaceKind::P3), vec!["u0", "u1", "u2", "u3", "0", "0", "0", "0"], None),
        "quadric5" => {
            let sp = ParamSpace::with_vars(SpaceKind::P3, &["y1", "y2", "y4", "y6"]);
            let ex = vec!["y1*y6", "y2*y6", "y4^2 - y1^2 - y2^2", "y4*y6", "y4*y6", "y6^2", "-y2*y6", "y1*y6"];
            let span = quadric5_span();
            if span.restrict_rank() != 5 {
                return Err(Error::Internal("quadric5 span must carry a rank-5 form".into()));
            }
            (sp, ex, Some(span))
        }
        "segre" => (ParamSpace::new(SpaceKind::P1xP2), vec!["u0*v0", "u1*v0", "u0*v1", "u0*v2", "u1*v1", "u1*v2", "0", "0"], None),
        "veronese_surface" => {
            (ParamSpace::new(SpaceKind::P2), vec!["0", "u0^2", "u0*u1", "u0*u2", "u1^2 - u0*u2", "u1*u2", "u2^2", "0"], None)
        }
        "veronese_cone" => {
            (ParamSpace::new(SpaceKind::WP1112), vec!["u3", "u0^2", "u0*u1", "u0*u2", "u1^2 - u0*u2", "u1*u2", "u2^2", "0"], None)
        }
        "cubic_secant" => (
            ParamSpace::with_vars(SpaceKind::P2, &["w", "s", "t"]),
            vec!["0", "w^4", "w^3*(s + t)", "w^2*s*t", "w^2*(s^2 + s*t + t^2)", "w*s*t*(s + t)", "s^2*t^2", "0"],
            None,
        ),
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    };
    let coords = polys(&space, &exprs);
    ParamVariety::new(name, space, coords, implicit)
}

/// Plücker coordinates `(p12, p13, p23, p14, p24, p34)` of the secant line through
/// `(1:t:t^2:t^3)` and `(1:s:s^2:s^3)`, divided by `s - t`.
pub fn wedge_plucker(s: &Scalar, t: &Scalar) -> Result<[Scalar; 6]> {
    let d = s - t;
    let inv = d.inv().ok_or_else(|| Error::Invalid("s = t: the secant degenerates to a tangent line".into()))?;
    let pt = |x: &Scalar| [x.field().one(), x.clone(), x * x, &(x * x) * x];
    let (a, b) = (pt(t), pt(s));
    let p = |i: usize, j: usize| &(&(&a[i] * &b[j]) - &(&a[j] * &b[i])) * &inv;
    Ok([p(0, 1), p(0, 2), p(1, 2), p(0, 3), p(1, 3), p(2, 3)])
}

/// `p12 p34 - p13 p24 + p23 p14`.
pub fn plucker_relation(p: &[Scalar; 6]) -> Scalar {
    &(&(&p[0] * &p[5]) - &(&p[1] * &p[4])) + &(&p[2] * &p[3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn all_builtins_construct() {
        for n in BUILTINS {
            builtin(n).unwrap();
        }
        assert!(matches!(builtin("nope"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn builtin_evaluations() {
        let vc = builtin("veronese_cone").unwrap();
        assert_eq!(vc.eval_param(&ints(&[1, 1, 1, 1])).unwrap(), ProjPoint::from_i64(&[1, 1, 1, 1, 0, 1, 1, 0], Field::Rational));
        assert_eq!(vc.eval_param(&ints(&[1, 0, 0, 0])).unwrap(), ProjPoint::from_i64(&[0, 1, 0, 0, 0, 0, 0, 0], Field::Rational));
        assert_eq!(vc.eval_param(&ints(&[0, 0, 0, 1])).unwrap(), ProjPoint::from_i64(&[1, 0, 0, 0, 0, 0, 0, 0], Field::Rational));
        let sg = builtin("segre").unwrap();
        assert_eq!(sg.eval_param(&ints(&[1, 0, 1, 0, 0])).unwrap(), ProjPoint::from_i64(&[1, 0, 0, 0, 0, 0, 0, 0], Field::Rational));
        let cs = builtin("cubic_secant").unwrap();
        assert_eq!(cs.eval_param(&ints(&[1, 1, 0])).unwrap(), ProjPoint::from_i64(&[0, 1, 1, 0, 1, 0, 0, 0], Field::Rational));
        assert!(vc.eval_param(&ints(&[0, 0, 0, 0])).is_err());
    }

    #[test]
    fn jacobian_ranks() {
        let vc = builtin("veronese_cone").unwrap();
        assert_eq!(vc.jacobian_rank_at(&ints(&[0, 0, 0, 1])).unwrap(), 1);
        assert_eq!(vc.jacobian_rank_at(&ints(&[1, 2, 3, 4])).unwrap(), 4);
        let sg = builtin("segre").unwrap();
        assert_eq!(sg.jacobian_rank_at(&ints(&[1, 2, 3, -1, 5])).unwrap(), 4);
        let h = builtin("horizontal3").unwrap();
        assert_eq!(h.jacobian_rank_at(&ints(&[1, 2, 3, 4])).unwrap(), 4);
    }

    #[test]
    fn quadric5_span_has_rank_five() {
        let s = quadric5_span();
        assert_eq!(s.dim(), 5);
        assert_eq!(s.restrict_rank(), 5);
    }

    #[test]
    fn plucker_examples() {
        let p = wedge_plucker(&int(1), &int(0)).unwrap();
        assert_eq!(p.to_vec(), ints(&[1, 1, 0, 1, 0, 0]));
        let p = wedge_plucker(&int(2), &int(1)).unwrap();
        assert_eq!(p.to_vec(), ints(&[1, 3, 2, 7, 6, 4]));
        assert!(plucker_relation(&p).is_zero());
        assert_eq!(wedge_plucker(&int(1), &int(2)).unwrap(), p);
        assert!(wedge_plucker(&int(3), &int(3)).is_err());
    }
}
