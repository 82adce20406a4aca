//! Weil divisors of bidegree (1,p) on the rank-4 quadric cone
//! `Q4 = {x7 = x8 = 0, x3x6 = x4x5}`, written as `div(f) - (p-1) D1` with
//! `f = gp(x4,x6) + x1 g1 + x2 g2 + x3 g3 + x5 g5`.

use rand::Rng;

use crate::algebra::binform::gcd_many;
use crate::algebra::{gcd_forms, BinaryForm, Field, Matrix, MultiPoly, Scalar};
use crate::error::{Error, Result};
use crate::quadspace::{LinearSubspace, ProjPoint, N};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q4Divisor {
    p: usize,
    gp: BinaryForm,
    g1: BinaryForm,
    g2: BinaryForm,
    g3: BinaryForm,
    g5: BinaryForm,
}

/// The plane `Q(a,b)` inside the pencil member `P(a,b)`.
#[derive(Clone, Debug)]
pub struct PlaneFamily {
    pub a: Scalar,
    pub b: Scalar,
    pub pencil: LinearSubspace,
    /// Coefficients of `lambda` in `(u1, u2, u3, u4)`.
    pub lambda: [Scalar; 4],
    /// Set when `lambda` vanishes identically, so all of `P(a,b)` lies in the divisor.
    pub whole: bool,
    /// `Q(a,b)`, or `P(a,b)` itself when `whole` is set.
    pub plane: LinearSubspace,
}

/// A local chart of `Q4 \ L`: `x_j = 1` for `j` in `{x3, x4, x5, x6}`.
#[derive(Clone, Debug)]
pub struct Chart {
    /// 0-based coordinate index set to 1.
    pub j: usize,
    /// Coordinates as polynomials in `y1..y4`.
    pub phi: Vec<MultiPoly>,
    /// Local equation of the divisor (with the `D1` part divided out).
    pub eq: MultiPoly,
}

fn xvars() -> Vec<String> {
    (1..=8).map(|i| format!("x{i}")).collect()
}

/// `sum c_i X^{d-i} Y^i` with `X, Y` given as polynomials.
pub fn form_to_poly(f: &BinaryForm, x: &MultiPoly, y: &MultiPoly) -> MultiPoly {
    let d = f.degree();
    let mut acc = MultiPoly::zero(x.vars(), x.field());
    for (i, c) in f.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let c = x.field().coerce(c).unwrap();
            acc = acc.add(&x.pow((d - i) as u32).mul(&y.pow(i as u32)).scale(&c));
        }
    }
    acc
}

impl Q4Divisor {
    pub fn new(p: usize, gp: BinaryForm, g1: BinaryForm, g2: BinaryForm, g3: BinaryForm, g5: BinaryForm) -> Result<Self> {
        if p == 0 {
            return Err(Error::Invalid("divisors need p >= 1".into()));
        }
        if gp.degree() != p {
            return Err(Error::Dimension(format!("gp must have degree {p}, got {}", gp.degree())));
        }
        for (name, g) in [("g1", &g1), ("g2", &g2), ("g3", &g3), ("g5", &g5)] {
            if g.degree() != p - 1 {
                return Err(Error::Dimension(format!("{name} must have degree {}, got {}", p - 1, g.degree())));
            }
        }
        for g in [&gp, &g1, &g2, &g3, &g5] {
            if g.field() != Field::Rational {
                return Err(Error::UnsupportedField("divisor data must be rational".into()));
            }
        }
        if [&gp, &g1, &g2, &g3, &g5].iter().all(|g| g.is_zero()) {
            return Err(Error::Invalid("all five forms vanish".into()));
        }
        Ok(Q4Divisor { p, gp, g1, g2, g3, g5 })
    }

    /// Integer coefficient lists in the order `gp, g1, g2, g3, g5`.
    pub fn from_i64(p: usize, gp: &[i64], g1: &[i64], g2: &[i64], g3: &[i64], g5: &[i64]) -> Result<Self> {
        let q = Field::Rational;
        let bf = |c: &[i64]| BinaryForm::from_i64(c, q);
        Self::new(p, bf(gp), bf(g1), bf(g2), bf(g3), bf(g5))
    }

    /// `f = x1x6 - x2x4`, the Segre threefold.
    pub fn segre() -> Self {
        Self::from_i64(2, &[0, 0, 0], &[0, 1], &[-1, 0], &[0, 0], &[0, 0]).unwrap()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn gp(&self) -> &BinaryForm {
        &self.gp
    }

    pub fn g1(&self) -> &BinaryForm {
        &self.g1
    }

    pub fn g2(&self) -> &BinaryForm {
        &self.g2
    }

    pub fn g3(&self) -> &BinaryForm {
        &self.g3
    }

    pub fn g5(&self) -> &BinaryForm {
        &self.g5
    }

    /// The polynomial `f` in `x1..x8`.
    pub fn f(&self) -> MultiPoly {
        let q = Field::Rational;
        let vs = xvars();
        let x = |i: usize| MultiPoly::var_at(&vs, i, q);
        let (x4, x6) = (x(3), x(5));
        let mut acc = form_to_poly(&self.gp, &x4, &x6);
        for (i, g) in [(0, &self.g1), (1, &self.g2), (2, &self.g3), (4, &self.g5)] {
            acc = acc.add(&x(i).mul(&form_to_poly(g, &x4, &x6)));
        }
        acc
    }

    /// Coefficient forms of `lambda` in `(a,b)`: `g1, g2, a g3 + b g5, gp`.
    pub fn lambda_forms(&self) -> [BinaryForm; 4] {
        let q = Field::Rational;
        let c3 = BinaryForm::x(q).mul(&self.g3).add(&BinaryForm::y(q).mul(&self.g5)).unwrap();
        [self.g1.clone(), self.g2.clone(), c3, self.gp.clone()]
    }

    pub fn lambda(&self, a: &Scalar, b: &Scalar) -> Result<[Scalar; 4]> {
        let f = a.field();
        let forms = self.lambda_forms();
        let mut out: Vec<Scalar> = vec![];
        for g in &forms {
            out.push(g.coerce(f)?.eval(a, b));
        }
        Ok(out.try_into().unwrap())
    }

    /// Gcd of the four coefficient forms of `lambda`; constant iff every `Q(a,b)` is a plane.
    pub fn lambda_gcd(&self) -> Result<BinaryForm> {
        let forms = self.lambda_forms();
        gcd_many(forms.iter())?.ok_or_else(|| Error::Invalid("lambda vanishes identically".into()))
    }

    pub fn pencil_plane(a: &Scalar, b: &Scalar) -> Result<LinearSubspace> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::Invalid("(a,b) = (0,0) is not a point of P^1".into()));
        }
        let f = a.field();
        Ok(LinearSubspace::span(&pencil_basis(a, b), f).unwrap())
    }

    pub fn q_plane(&self, a: &Scalar, b: &Scalar) -> Result<PlaneFamily> {
        let pencil = Self::pencil_plane(a, b)?;
        let lambda = self.lambda(a, b)?;
        let whole = lambda.iter().all(|c| c.is_zero());
        let f = a.field();
        let basis = pencil_basis(a, b);
        let plane = if whole {
            pencil.clone()
        } else {
            let m = Matrix::from_rows(vec![lambda.to_vec()], 4, f)?;
            let rows: Vec<Vec<Scalar>> = m.kernel_basis().iter().map(|u| u_to_x(&basis, u)).collect();
            LinearSubspace::span(&rows, f)?
        };
        Ok(PlaneFamily { a: a.clone(), b: b.clone(), pencil, lambda, whole, plane })
    }

    /// `f` composed with the parametrization of `P(a,b)`, as a polynomial in `u1..u4`.
    /// The identity `f o P = u4^(p-1) lambda` is checked before returning.
    pub fn restrict_to_pencil(&self, a: &Scalar, b: &Scalar) -> Result<MultiPoly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::Invalid("(a,b) = (0,0) is not a point of P^1".into()));
        }
        let fld = a.field();
        let uv = MultiPoly::names(&["u1", "u2", "u3", "u4"]);
        let u = |i: usize| MultiPoly::var_at(&uv, i, fld);
        let zero = MultiPoly::zero(&uv, fld);
        let subs = vec![u(0), u(1), u(2).scale(a), u(3).scale(a), u(2).scale(b), u(3).scale(b), zero.clone(), zero];
        let r = self.f().coerce(fld)?.compose(&subs)?;
        let lam = self.lambda(a, b)?;
        let mut lin = MultiPoly::zero(&uv, fld);
        for (i, c) in lam.iter().enumerate() {
            lin = lin.add(&u(i).scale(c));
        }
        let expected = u(3).pow(self.p as u32 - 1).mul(&lin);
        if r != expected {
            return Err(Error::Internal("restriction to the pencil is not u4^(p-1) * lambda".into()));
        }
        Ok(r)
    }

    /// `psi(a:b) = (-g2(a,b) : g1(a,b) : 0 : ... : 0)` on `L`.
    pub fn psi(&self, a: &Scalar, b: &Scalar) -> Result<ProjPoint> {
        if self.g1.is_zero() && self.g2.is_zero() {
            return Err(Error::DoubleCone);
        }
        if a.is_zero() && b.is_zero() {
            return Err(Error::Invalid("(a,b) = (0,0) is not a point of P^1".into()));
        }
        let f = a.field();
        let v1 = self.g1.coerce(f)?.eval(a, b);
        let v2 = self.g2.coerce(f)?.eval(a, b);
        if v1.is_zero() && v2.is_zero() {
            return Err(Error::CommonRoot(format!("{a}:{b}")));
        }
        let mut c = vec![f.zero(); N];
        c[0] = -&v2;
        c[1] = v1;
        ProjPoint::new(c)
    }

    /// `p - 1 - deg gcd(g1, g2)`.
    pub fn psi_degree(&self) -> Result<usize> {
        if self.g1.is_zero() && self.g2.is_zero() {
            return Err(Error::DoubleCone);
        }
        Ok(self.p - 1 - gcd_forms(&self.g1, &self.g2)?.degree())
    }

    /// Pencil parameters and `u`-coordinates of a point of `Q4` off `L`.
    pub fn u_coords(z: &[Scalar]) -> Option<((Scalar, Scalar), [Scalar; 4])> {
        let (x3, x4, x5, x6) = (&z[2], &z[3], &z[4], &z[5]);
        let (a, b) = if !x4.is_zero() || !x6.is_zero() { (x4.clone(), x6.clone()) } else { (x3.clone(), x5.clone()) };
        if a.is_zero() && b.is_zero() {
            return None;
        }
        let (u3, u4) = if !a.is_zero() {
            let ia = a.inv().unwrap();
            (x3 * &ia, x4 * &ia)
        } else {
            let ib = b.inv().unwrap();
            (x5 * &ib, x6 * &ib)
        };
        Some(((a, b), [z[0].clone(), z[1].clone(), u3, u4]))
    }

    pub fn on_q4(z: &[Scalar]) -> bool {
        z.len() == N && z[6].is_zero() && z[7].is_zero() && (&(&z[2] * &z[5]) - &(&z[3] * &z[4])).is_zero()
    }

    /// Membership of a point of `Q4`; points of `L` are always members.
    pub fn contains(&self, z: &ProjPoint) -> Result<bool> {
        let c = z.coords();
        if !Self::on_q4(c) {
            return Err(Error::NotOnVariety(format!("{z} is not on Q4")));
        }
        let Some(((a, b), u)) = Self::u_coords(c) else {
            return Ok(true);
        };
        let lam = self.lambda(&a, &b)?;
        let f = a.field();
        let v = lam.iter().zip(&u).fold(f.zero(), |acc, (l, x)| &acc + &(l * x));
        Ok(v.is_zero())
    }

    /// Local chart with `x_j = 1`, `j` in `2..=5` (0-based).
    pub fn chart(&self, j: usize, field: Field) -> Result<Chart> {
        let yv = MultiPoly::names(&["y1", "y2", "y3", "y4"]);
        let y = |i: usize| MultiPoly::var_at(&yv, i, field);
        let one = MultiPoly::constant(&yv, field.one());
        let zero = MultiPoly::zero(&yv, field);
        let (phi, div_var) = match j {
            5 => (vec![y(0), y(1), y(2).mul(&y(3)), y(2), y(3), one, zero.clone(), zero], None),
            3 => (vec![y(0), y(1), y(2), one, y(2).mul(&y(3)), y(3), zero.clone(), zero], None),
            4 => (vec![y(0), y(1), y(2), y(2).mul(&y(3)), one, y(3), zero.clone(), zero], Some(3)),
            2 => (vec![y(0), y(1), one, y(2), y(3), y(2).mul(&y(3)), zero.clone(), zero], Some(2)),
            _ => return Err(Error::Invalid(format!("no chart for coordinate x{}", j + 1))),
        };
        let mut eq = self.f().coerce(field)?.compose(&phi)?;
        if let Some(v) = div_var {
            let d = y(v).pow(self.p as u32 - 1);
            eq = eq.exact_div(&d)?;
        }
        Ok(Chart { j, phi, eq })
    }

    /// Chart coordinates `y` of a point with `z[j] != 0`.
    pub fn chart_coords(j: usize, z: &[Scalar]) -> Vec<Scalar> {
        let inv = z[j].inv().expect("chart coordinate must be nonzero");
        let s = |i: usize| &z[i] * &inv;
        match j {
            5 => vec![s(0), s(1), s(3), s(4)],
            3 => vec![s(0), s(1), s(2), s(5)],
            4 => vec![s(0), s(1), s(2), s(5)],
            2 => vec![s(0), s(1), s(3), s(4)],
            _ => panic!("no chart for index {j}"),
        }
    }

    /// Random divisor with integer coefficients in `[-5, 5]` and the given `p`,
    /// resampled until every `Q(a,b)` is a plane and `g1, g2` are coprime.
    pub fn random(p: usize, rng: &mut impl Rng) -> Self {
        let q = Field::Rational;
        let form = |d: usize, rng: &mut dyn rand::RngCore| {
            BinaryForm::from_i64(&(0..=d).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>(), q)
        };
        loop {
            let gp = form(p, rng);
            let g1 = form(p - 1, rng);
            let g2 = form(p - 1, rng);
            let g3 = form(p - 1, rng);
            let g5 = form(p - 1, rng);
            let Ok(d) = Self::new(p, gp, g1, g2, g3, g5) else { continue };
            if d.g1.is_zero() && d.g2.is_zero() {
                continue;
            }
            if gcd_forms(&d.g1, &d.g2).map(|g| g.degree()).unwrap_or(1) != 0 {
                continue;
            }
            if d.lambda_gcd().map(|g| g.degree()).unwrap_or(1) == 0 {
                return d;
            }
        }
    }

    /// Random point of the divisor off `L`, from a random plane `Q(a,b)`.
    pub fn random_point(&self, field: Field, rng: &mut impl Rng) -> Result<Vec<Scalar>> {
        for _ in 0..1000 {
            let a = crate::quadspace::random_scalar(field, rng);
            let b = crate::quadspace::random_scalar(field, rng);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let fam = self.q_plane(&a, &b)?;
            let z = crate::quadspace::random_element(&fam.plane, rng);
            if z[2..6].iter().any(|x| !x.is_zero()) {
                return Ok(z);
            }
        }
        Err(Error::Internal("could not sample a point off L".into()))
    }
}

/// Rows `e1, e2, a e3 + b e5, a e4 + b e6`.
pub fn pencil_basis(a: &Scalar, b: &Scalar) -> Vec<Vec<Scalar>> {
    let f = a.field();
    let mut rows = vec![vec![f.zero(); N]; 4];
    rows[0][0] = f.one();
    rows[1][1] = f.one();
    rows[2][2] = a.clone();
    rows[2][4] = b.clone();
    rows[3][3] = a.clone();
    rows[3][5] = b.clone();
    rows
}

/// `x = sum u_i * basis_i`.
pub fn u_to_x(basis: &[Vec<Scalar>], u: &[Scalar]) -> Vec<Scalar> {
    let f = u[0].field();
    let mut x = vec![f.zero(); N];
    for (ui, row) in u.iter().zip(basis) {
        for (xi, r) in x.iter_mut().zip(row) {
            *xi = &*xi + &(ui * r);
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::quadspace::{iso_type, v0, IsoType};

    fn cubic_example() -> Q4Divisor {
        // f = x1 x4^2 + x2 x6^2
        Q4Divisor::from_i64(3, &[0, 0, 0, 0], &[1, 0, 0], &[0, 0, 1], &[0, 0, 0], &[0, 0, 0]).unwrap()
    }

    #[test]
    fn pencil_examples() {
        let p10 = Q4Divisor::pencil_plane(&int(1), &int(0)).unwrap();
        assert_eq!(p10, v0(Field::Rational));
        assert_eq!(iso_type(&p10).unwrap(), IsoType::Vertical);
        assert!(Q4Divisor::pencil_plane(&int(0), &int(0)).is_err());
        let s = Q4Divisor::segre();
        let fam = s.q_plane(&int(1), &int(0)).unwrap();
        assert_eq!(fam.lambda.to_vec(), vec![int(0), int(-1), int(0), int(0)]);
        let d = Q4Divisor::from_i64(2, &[0, 0, 0], &[1, 0], &[0, 0], &[0, 0], &[0, 0]).unwrap();
        assert!(d.q_plane(&int(0), &int(1)).unwrap().whole);
        assert!(!d.q_plane(&int(1), &int(1)).unwrap().whole);
    }

    #[test]
    fn restriction_examples() {
        let s = Q4Divisor::segre();
        let r = s.restrict_to_pencil(&int(1), &int(1)).unwrap();
        assert_eq!(r.to_string(), "u1*u4 - u2*u4");
        let c = cubic_example();
        let r = c.restrict_to_pencil(&int(1), &int(1)).unwrap();
        assert_eq!(r.to_string(), "u1*u4^2 + u2*u4^2");
    }

    #[test]
    fn psi_examples() {
        let s = Q4Divisor::segre();
        assert_eq!(s.psi(&int(2), &int(3)).unwrap(), ProjPoint::from_i64(&[2, 3, 0, 0, 0, 0, 0, 0], Field::Rational));
        assert_eq!(s.psi_degree().unwrap(), 1);
        let c = cubic_example();
        assert_eq!(c.psi_degree().unwrap(), 2);
        assert_eq!(c.psi(&int(1), &int(1)).unwrap(), c.psi(&int(1), &int(-1)).unwrap());
        assert_eq!(c.psi(&int(1), &int(1)).unwrap(), ProjPoint::from_i64(&[-1, 1, 0, 0, 0, 0, 0, 0], Field::Rational));
        let g = Q4Divisor::from_i64(3, &[0, 0, 0, 0], &[0, 1, 0], &[0, 1, 0], &[0, 0, 0], &[0, 0, 0]).unwrap();
        assert_eq!(g.psi_degree().unwrap(), 0);
        assert!(matches!(g.psi(&int(1), &int(0)), Err(Error::CommonRoot(_))));
        let dc = Q4Divisor::from_i64(3, &[1, 0, 0, 1], &[0, 0, 0], &[0, 0, 0], &[0, 0, 0], &[0, 0, 0]).unwrap();
        assert!(matches!(dc.psi_degree(), Err(Error::DoubleCone)));
    }

    #[test]
    fn membership_examples() {
        let s = Q4Divisor::segre();
        let q = Field::Rational;
        assert!(s.contains(&ProjPoint::from_i64(&[1, 1, 1, 1, 1, 1, 0, 0], q)).unwrap());
        assert!(!s.contains(&ProjPoint::from_i64(&[1, 2, 1, 1, 1, 1, 0, 0], q)).unwrap());
        assert!(s.contains(&ProjPoint::from_i64(&[1, 0, 0, 0, 0, 0, 0, 0], q)).unwrap());
        assert!(s.contains(&ProjPoint::from_i64(&[0, 0, 0, 0, 0, 0, 1, 0], q)).is_err());
    }

    #[test]
    fn charts_match_f() {
        let c = cubic_example();
        for j in 2..6 {
            let ch = c.chart(j, Field::Rational).unwrap();
            assert_eq!(ch.phi.len(), 8);
            assert!(!ch.eq.is_zero());
        }
    }
}
