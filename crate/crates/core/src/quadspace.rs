//! Bilinear geometry of `Q6`: Gram matrix, linear subspaces, annihilators,
//! the horizontal/vertical type of maximal isotropic subspaces, and sampling.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Matrix, Scalar};
use crate::error::{Error, Result};

pub const N: usize = 8;

/// Signed pairs `(i, j, sign)` (0-based) of the quadratic form `Q = sum sign * x_i x_j`.
pub const PAIRS: [(usize, usize, i64); 4] = [(0, 7, 1), (1, 6, -1), (2, 5, 1), (3, 4, -1)];

/// Deterministic generator for a `(seed, stream)` pair.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// The doubled Gram matrix: `x^T G x = 2 (x1x8 - x2x7 + x3x6 - x4x5)`.
pub fn gram(field: Field) -> Matrix {
    let mut g = Matrix::zeros(N, N, field);
    for (i, j, s) in PAIRS {
        g.set(i, j, field.from_i64(s));
        g.set(j, i, field.from_i64(s));
    }
    g
}

/// `x1x8 - x2x7 + x3x6 - x4x5`.
pub fn quad_form(x: &[Scalar]) -> Scalar {
    let f = x[0].field();
    let mut acc = f.zero();
    for (i, j, s) in PAIRS {
        acc = &acc + &(&(&x[i] * &x[j]) * &f.from_i64(s));
    }
    acc
}

/// `x^T G y`.
pub fn bilinear(x: &[Scalar], y: &[Scalar]) -> Scalar {
    let f = x[0].field();
    let mut acc = f.zero();
    for (i, j, s) in PAIRS {
        let t = &(&x[i] * &y[j]) + &(&x[j] * &y[i]);
        acc = &acc + &(&t * &f.from_i64(s));
    }
    acc
}

/// `G y` as a vector: the linear form `x -> x^T G y`.
pub fn gram_apply(y: &[Scalar]) -> Vec<Scalar> {
    let f = y[0].field();
    let mut out = vec![f.zero(); N];
    for (i, j, s) in PAIRS {
        out[i] = &y[j] * &f.from_i64(s);
        out[j] = &y[i] * &f.from_i64(s);
    }
    out
}

/// A linear subspace of `K^8`, stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearSubspace {
    basis: Matrix,
}

impl LinearSubspace {
    /// Row space of the given vectors (need not be independent).
    pub fn span(rows: &[Vec<Scalar>], field: Field) -> Result<Self> {
        if rows.is_empty() {
            return Ok(Self::zero(field));
        }
        let m = Matrix::from_rows(rows.to_vec(), N, field)?;
        Ok(LinearSubspace { basis: m.row_space_basis() })
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if m.cols() != N {
            return Err(Error::Dimension(format!("subspace basis needs {N} columns, got {}", m.cols())));
        }
        Ok(LinearSubspace { basis: m.row_space_basis() })
    }

    /// Common zero set of the given linear forms.
    pub fn from_equations(eqs: &[Vec<Scalar>], field: Field) -> Result<Self> {
        if eqs.is_empty() {
            return Ok(Self::full(field));
        }
        let m = Matrix::from_rows(eqs.to_vec(), N, field)?;
        Self::span(&m.kernel_basis(), field)
    }

    pub fn zero(field: Field) -> Self {
        LinearSubspace { basis: Matrix::zeros(0, N, field) }
    }

    pub fn full(field: Field) -> Self {
        LinearSubspace { basis: Matrix::identity(N, field) }
    }

    /// Span of standard basis vectors (0-based indices).
    pub fn coordinate(idx: &[usize], field: Field) -> Self {
        let rows: Vec<Vec<Scalar>> = idx.iter().map(|&i| unit(i, field)).collect();
        Self::span(&rows, field).unwrap()
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    /// Linear (affine cone) dimension.
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    /// Linear forms cutting out the subspace.
    pub fn equations(&self) -> Vec<Vec<Scalar>> {
        if self.dim() == 0 {
            return Matrix::identity(N, self.field()).row_vectors();
        }
        self.basis.kernel_basis()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.equations().iter().all(|e| dot(e, v).is_zero())
    }

    pub fn contains_subspace(&self, o: &Self) -> bool {
        o.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn intersect(&self, o: &Self) -> Self {
        let mut eqs = self.equations();
        eqs.extend(o.equations());
        Self::from_equations(&eqs, self.field()).unwrap()
    }

    pub fn sum(&self, o: &Self) -> Self {
        let mut rows = self.basis_vectors();
        rows.extend(o.basis_vectors());
        Self::span(&rows, self.field()).unwrap()
    }

    /// `{y : x^T G y = 0 for all x in self}`.
    pub fn annihilator(&self) -> Self {
        let eqs: Vec<Vec<Scalar>> = self.basis_vectors().iter().map(|v| gram_apply(v)).collect();
        Self::from_equations(&eqs, self.field()).unwrap()
    }

    /// Rank of `B G B^T`.
    pub fn restrict_rank(&self) -> usize {
        if self.dim() == 0 {
            return 0;
        }
        let g = gram(self.field());
        let bg = self.basis.mul(&g).unwrap();
        bg.mul(&self.basis.transpose()).unwrap().rank()
    }

    pub fn is_isotropic(&self) -> bool {
        let vs = self.basis_vectors();
        vs.iter().enumerate().all(|(i, x)| vs[i..].iter().all(|y| bilinear(x, y).is_zero()))
    }

    pub fn coerce(&self, field: Field) -> Result<Self> {
        Self::from_matrix(&self.basis.coerce(field)?)
    }
}

impl fmt::Display for LinearSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis)
    }
}

pub fn unit(i: usize, field: Field) -> Vec<Scalar> {
    let mut v = vec![field.zero(); N];
    v[i] = field.one();
    v
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let f = a[0].field();
    a.iter().zip(b).fold(f.zero(), |acc, (x, y)| &acc + &(x * y))
}

/// `V0 = span{e1,e2,e3,e4}`, the reference vertical 3-plane.
pub fn v0(field: Field) -> LinearSubspace {
    LinearSubspace::coordinate(&[0, 1, 2, 3], field)
}

/// `H0 = span{e1,e2,e3,e5}`, the reference horizontal 3-plane.
pub fn h0(field: Field) -> LinearSubspace {
    LinearSubspace::coordinate(&[0, 1, 2, 4], field)
}

/// The vertex line `L = {x3 = ... = x8 = 0}` of `Q4`.
pub fn line_l(field: Field) -> LinearSubspace {
    LinearSubspace::coordinate(&[0, 1], field)
}

/// The hyperplane pair `{x7 = x8 = 0}` containing `Q4`.
pub fn p5(field: Field) -> LinearSubspace {
    LinearSubspace::coordinate(&[0, 1, 2, 3, 4, 5], field)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsoType {
    Horizontal,
    Vertical,
}

impl IsoType {
    pub fn other(self) -> IsoType {
        match self {
            IsoType::Horizontal => IsoType::Vertical,
            IsoType::Vertical => IsoType::Horizontal,
        }
    }
}

impl std::str::FromStr for IsoType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "horizontal" | "h" => Ok(IsoType::Horizontal),
            "vertical" | "v" => Ok(IsoType::Vertical),
            _ => Err(Error::Parse(format!("unknown type `{s}`"))),
        }
    }
}

/// Type of a maximal isotropic subspace: vertical iff it meets `V0` in even linear dimension.
pub fn iso_type(u: &LinearSubspace) -> Result<IsoType> {
    if u.dim() != 4 {
        return Err(Error::Dimension(format!("maximal isotropic subspaces have linear dim 4, got {}", u.dim())));
    }
    if !u.is_isotropic() {
        return Err(Error::NotIsotropic("subspace is not isotropic".into()));
    }
    let d = u.intersect(&v0(u.field())).dim();
    Ok(if d % 2 == 0 { IsoType::Vertical } else { IsoType::Horizontal })
}

/// The two maximal isotropic subspaces through an isotropic plane `W` (linear dim 3),
/// returned as `(vertical, horizontal)`.
pub fn extend_isotropic_plane(w: &LinearSubspace) -> Result<(LinearSubspace, LinearSubspace)> {
    if w.dim() != 3 {
        return Err(Error::Dimension(format!("expected linear dim 3, got {}", w.dim())));
    }
    if !w.is_isotropic() {
        return Err(Error::NotIsotropic("plane is not isotropic".into()));
    }
    let field = w.field();
    let ann = w.annihilator();
    // complement of W inside Ann(W)
    let mut comp: Vec<Vec<Scalar>> = vec![];
    let mut cur = w.clone();
    for v in ann.basis_vectors() {
        if !cur.contains(&v) {
            cur = cur.sum(&LinearSubspace::span(&[v.clone()], field)?);
            comp.push(v);
        }
    }
    if comp.len() != 2 {
        return Err(Error::Internal("annihilator of an isotropic plane must have dim 5".into()));
    }
    let m11 = quad_form(&comp[0]);
    let m22 = quad_form(&comp[1]);
    let m12 = &bilinear(&comp[0], &comp[1]) * &field.from_rational(&num_rational::BigRational::new(1.into(), 2.into()))?;
    let disc = &(&m12 * &m12) - &(&m11 * &m22);
    if disc.is_zero() {
        return Err(Error::Internal("induced form on Ann(W)/W is degenerate".into()));
    }
    let dirs: Vec<(Scalar, Scalar)> = if m11.is_zero() {
        vec![(field.one(), field.zero()), (m22.clone(), -&(&m12 * &field.from_i64(2)))]
    } else {
        let r = disc.sqrt().ok_or_else(|| Error::Internal("induced hyperbolic plane has no isotropic lines".into()))?;
        let mi = m11.inv().unwrap();
        vec![(&(&(-&m12) + &r) * &mi, field.one()), (&(&(-&m12) - &r) * &mi, field.one())]
    };
    let mut out = vec![];
    for (a, b) in dirs {
        let v: Vec<Scalar> = comp[0].iter().zip(&comp[1]).map(|(x, y)| &(&a * x) + &(&b * y)).collect();
        let u = w.sum(&LinearSubspace::span(&[v], field)?);
        let t = iso_type(&u)?;
        out.push((t, u));
    }
    if out[0].0 == out[1].0 {
        return Err(Error::Internal("both extensions have the same type".into()));
    }
    out.sort_by_key(|(t, _)| if *t == IsoType::Vertical { 0 } else { 1 });
    let h = out.pop().unwrap().1;
    let v = out.pop().unwrap().1;
    Ok((v, h))
}

/// Random scalar: integers in `[-20, 20]` over Q, uniform elements over F_q.
pub fn random_scalar(field: Field, rng: &mut impl Rng) -> Scalar {
    match field {
        Field::Rational => field.from_i64(rng.gen_range(-20..=20)),
        Field::Prime(q) => field.from_i64(rng.gen_range(0..q) as i64),
        Field::Quadratic { q, nonresidue } => Scalar::Fq2 { a: rng.gen_range(0..q), b: rng.gen_range(0..q), q, nr: nonresidue },
    }
}

pub fn random_vector(n: usize, field: Field, rng: &mut impl Rng) -> Vec<Scalar> {
    (0..n).map(|_| random_scalar(field, rng)).collect()
}

/// Random subspace of the given linear dimension.
pub fn random_subspace(dim: usize, field: Field, rng: &mut impl Rng) -> LinearSubspace {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..dim).map(|_| random_vector(N, field, rng)).collect();
        let s = LinearSubspace::span(&rows, field).unwrap();
        if s.dim() == dim {
            return s;
        }
    }
}

/// Random combination of the basis vectors of `s`.
pub fn random_element(s: &LinearSubspace, rng: &mut impl Rng) -> Vec<Scalar> {
    let field = s.field();
    let mut v = vec![field.zero(); N];
    for b in s.basis_vectors() {
        let c = random_scalar(field, rng);
        for (x, y) in v.iter_mut().zip(&b) {
            *x = &*x + &(&c * y);
        }
    }
    v
}

/// A random maximal isotropic subspace of the requested type.
pub fn random_max_isotropic(t: IsoType, field: Field, seed: u64) -> Result<LinearSubspace> {
    let mut rng = rng_for(seed, 0);
    random_max_isotropic_with(t, field, &mut rng)
}

pub fn random_max_isotropic_with(t: IsoType, field: Field, rng: &mut impl Rng) -> Result<LinearSubspace> {
    let w = match field {
        Field::Rational => random_isotropic_plane_rational(rng),
        _ => random_isotropic_plane_greedy(field, rng),
    };
    let (v, h) = extend_isotropic_plane(&w)?;
    Ok(match t {
        IsoType::Vertical => v,
        IsoType::Horizontal => h,
    })
}

/// Greedy isotropic extension: pick isotropic vectors in successive annihilators.
fn random_isotropic_plane_greedy(field: Field, rng: &mut impl Rng) -> LinearSubspace {
    let mut w = LinearSubspace::zero(field);
    while w.dim() < 3 {
        let amb = if w.dim() == 0 { LinearSubspace::full(field) } else { w.annihilator() };
        let v = random_element(&amb, rng);
        if v.iter().all(|x| x.is_zero()) || !quad_form(&v).is_zero() || w.contains(&v) {
            continue;
        }
        w = w.sum(&LinearSubspace::span(&[v], field).unwrap());
    }
    w
}

/// Over Q isotropic vectors are too sparse for rejection sampling, so we draw
/// a random vertical chart `{(a, D S a)}` with `S` skew and `D = diag(1,-1,1,-1)`
/// (mapping `a = (x1..x4)` to `(x8, x7, x6, x5)`), then a random plane inside it.
fn random_isotropic_plane_rational(rng: &mut impl Rng) -> LinearSubspace {
    let field = Field::Rational;
    let sign = [1i64, -1, 1, -1];
    loop {
        let mut s = [[0i64; 4]; 4];
        for i in 0..4 {
            for j in i + 1..4 {
                let v = rng.gen_range(-20..=20);
                s[i][j] = v;
                s[j][i] = -v;
            }
        }
        let chart: Vec<Vec<Scalar>> = (0..4)
            .map(|k| {
                let mut x = vec![0i64; N];
                x[k] = 1;
                for i in 0..4 {
                    // c_i = sign_i * (S e_k)_i sits at coordinate 7 - i
                    x[7 - i] = sign[i] * s[i][k];
                }
                x.into_iter().map(|v| field.from_i64(v)).collect()
            })
            .collect();
        let u = LinearSubspace::span(&chart, field).unwrap();
        let rows: Vec<Vec<Scalar>> = (0..3).map(|_| random_element(&u, rng)).collect();
        let w = LinearSubspace::span(&rows, field).unwrap();
        if w.dim() == 3 {
            return w;
        }
    }
}

/// A projective point, normalized so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        let Some(c) = coords.iter().find(|c| !c.is_zero()) else {
            return Err(Error::Invalid("projective point with all coordinates zero".into()));
        };
        let inv = c.inv().unwrap();
        Ok(ProjPoint { coords: coords.iter().map(|x| x * &inv).collect() })
    }

    pub fn from_i64(c: &[i64], field: Field) -> Self {
        Self::new(c.iter().map(|&v| field.from_i64(v)).collect()).unwrap()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    pub fn on_q6(&self) -> bool {
        self.coords.len() == N && quad_form(&self.coords).is_zero()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", s.join(":"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn gram_has_full_rank() {
        assert_eq!(gram(Q).rank(), 8);
        let x: Vec<Scalar> = (1..=8).map(|v| Q.from_i64(v)).collect();
        let g = gram(Q);
        let gx = g.mul_vec(&x);
        assert_eq!(dot(&x, &gx), &quad_form(&x) * &Q.from_i64(2));
    }

    #[test]
    fn annihilator_examples() {
        let e1 = LinearSubspace::coordinate(&[0], Q);
        let ann = e1.annihilator();
        assert_eq!(ann, LinearSubspace::from_equations(&[unit(7, Q)], Q).unwrap());
        assert_eq!(h0(Q).annihilator(), h0(Q));
        assert_eq!(LinearSubspace::full(Q).annihilator().dim(), 0);
    }

    #[test]
    fn restrict_rank_examples() {
        assert_eq!(p5(Q).restrict_rank(), 4);
        assert_eq!(h0(Q).restrict_rank(), 0);
        assert_eq!(LinearSubspace::coordinate(&[0, 7], Q).restrict_rank(), 2);
    }

    #[test]
    fn reference_types() {
        assert_eq!(iso_type(&v0(Q)).unwrap(), IsoType::Vertical);
        assert_eq!(iso_type(&h0(Q)).unwrap(), IsoType::Horizontal);
        assert!(iso_type(&p5(Q)).is_err());
        assert!(iso_type(&LinearSubspace::coordinate(&[0, 1, 2, 7], Q)).is_err());
    }

    #[test]
    fn extension_examples() {
        let w = LinearSubspace::coordinate(&[0, 1, 2], Q);
        let (v, h) = extend_isotropic_plane(&w).unwrap();
        assert_eq!(v, v0(Q));
        assert_eq!(h, h0(Q));
        let w2 = LinearSubspace::coordinate(&[0, 1, 3], Q);
        let (v2, h2) = extend_isotropic_plane(&w2).unwrap();
        assert_eq!(v2, v0(Q));
        assert!(h2.contains_subspace(&w2));
        assert_eq!(iso_type(&h2).unwrap(), IsoType::Horizontal);
    }

    #[test]
    fn sampling_respects_type() {
        for field in [Q, Field::Prime(101)] {
            for seed in 0..5 {
                for t in [IsoType::Horizontal, IsoType::Vertical] {
                    let u = random_max_isotropic(t, field, seed).unwrap();
                    assert_eq!(u.dim(), 4);
                    assert_eq!(u.restrict_rank(), 0);
                    assert_eq!(iso_type(&u).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn projective_normalization() {
        let p = ProjPoint::from_i64(&[0, 2, 4, 0, 0, 0, 0, 0], Q);
        assert_eq!(p.coords()[1], Q.one());
        assert_eq!(p.coords()[2], Q.from_i64(2));
        assert!(ProjPoint::new(vec![Q.zero(); 8]).is_err());
    }
}
