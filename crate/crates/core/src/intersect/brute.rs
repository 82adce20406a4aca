//! Brute-force point counts of `X ∩ W` over `F_q` and `F_{q^2}`, and the
//! counts predicted by an exact intersection report after reduction mod `q`.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntersectionReport, Threefold};
use crate::algebra::{Field, Matrix, MultiPoly, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::quadspace::{dot, LinearSubspace, ProjPoint, N};
use crate::varieties::{ParamVariety, Q4Divisor, SpaceKind};

pub const DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteCount {
    pub q: u64,
    pub ext: u32,
    /// Distinct points of `X ∩ W` over `F_{q^ext}`.
    pub points: usize,
    /// Candidate points examined.
    pub enumerated: u64,
}

pub fn finite_field(q: u64, ext: u32) -> Result<Field> {
    match ext {
        1 => Field::prime(q),
        2 => Field::quadratic(q),
        _ => Err(Error::UnsupportedField(format!("extension degree {ext}; only 1 and 2 are supported"))),
    }
}

/// `|P^n(F)|` for a field with `k` elements.
fn proj_size(n: usize, k: u64) -> u64 {
    (0..=n as u32).map(|i| k.saturating_pow(i)).fold(0u64, |a, b| a.saturating_add(b))
}

/// Calls `f` on the normalized representative of every point of `P^n(F)`.
fn for_each_proj(n: usize, elems: &[Scalar], f: &mut impl FnMut(&[Scalar])) {
    let field = elems[0].field();
    let mut v = vec![field.zero(); n + 1];
    for lead in 0..=n {
        for x in v.iter_mut() {
            *x = field.zero();
        }
        v[lead] = field.one();
        let free = n - lead;
        let mut idx = vec![0usize; free];
        loop {
            for (k, &i) in idx.iter().enumerate() {
                v[lead + 1 + k] = elems[i].clone();
            }
            f(&v);
            // odometer
            let mut k = 0;
            while k < free {
                idx[k] += 1;
                if idx[k] < elems.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == free {
                break;
            }
        }
    }
}

/// A polynomial flattened for repeated evaluation.
struct Compiled {
    terms: Vec<(Scalar, Vec<u32>)>,
}

impl Compiled {
    fn new(p: &MultiPoly, field: Field) -> Result<Self> {
        let p = p.coerce(field)?;
        Ok(Compiled { terms: p.terms().iter().map(|(e, c)| (c.clone(), e.clone())).collect() })
    }

    fn eval(&self, pows: &[Vec<Scalar>], zero: &Scalar) -> Scalar {
        let mut acc = zero.clone();
        for (c, e) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &pows[i][k as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }
}

/// Equations of `W` reduced mod `q`, checking that the rank survives.
/// Scales a rational row to a primitive integer row.
fn primitive(row: &[Scalar]) -> Vec<Scalar> {
    let rats: Vec<BigRational> = row.iter().filter_map(|c| c.as_rational().cloned()).collect();
    if rats.len() != row.len() {
        return row.to_vec();
    }
    let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&den / r.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    if content.is_zero() {
        return row.to_vec();
    }
    ints.into_iter().map(|n| Scalar::Rat(BigRational::from_integer(n / &content))).collect()
}

/// Rows of a lattice basis, made `q`-saturated: while the rows are dependent
/// mod `q`, a row is replaced by `(sum c_i b_i) / q` for a dependency `c`.
fn saturate(rows: Vec<Vec<BigInt>>, q: u64) -> Result<Vec<Vec<BigInt>>> {
    let fp = Field::prime(q)?;
    let qi = BigInt::from(q);
    let mut rows = rows;
    for _ in 0..10_000 {
        let m = Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|c| fp.coerce(&Scalar::Rat(BigRational::from_integer(c.clone())))).collect()).collect::<Result<_>>()?,
            N,
            fp,
        )?;
        let deps = m.transpose().kernel_basis();
        let Some(c) = deps.first() else { return Ok(rows) };
        let c: Vec<BigInt> = c.iter().map(|x| match x {
            Scalar::Fp { v, .. } => BigInt::from(*v),
            _ => BigInt::zero(),
        }).collect();
        let j = c.iter().position(|x| !x.is_zero()).unwrap();
        let combo: Vec<BigInt> = (0..N).map(|k| rows.iter().zip(&c).map(|(r, ci)| &r[k] * ci).sum::<BigInt>()).collect();
        rows[j] = combo.into_iter().map(|x| x / &qi).collect();
    }
    Err(Error::Internal("lattice saturation did not terminate".into()))
}

/// Reduction of `W` mod `q`, from a `q`-saturated integer basis of `W ∩ Z^8`.
fn reduce_subspace(w: &LinearSubspace, field: Field) -> Result<(LinearSubspace, Vec<Vec<Scalar>>)> {
    let ints: Vec<Vec<BigInt>> = w
        .basis_vectors()
        .iter()
        .map(|r| primitive(r).iter().map(|c| c.to_bigint().ok_or_else(|| Error::UnsupportedField("W must be rational".into()))).collect())
        .collect::<Result<_>>()?;
    let sat = saturate(ints, field.characteristic())?;
    let basis: Vec<Vec<Scalar>> = sat
        .iter()
        .map(|r| r.iter().map(|c| field.coerce(&Scalar::Rat(BigRational::from_integer(c.clone())))).collect())
        .collect::<Result<_>>()?;
    let wq = LinearSubspace::span(&basis, field)?;
    if wq.dim() != w.dim() {
        return Err(Error::Invalid(format!("W has bad reduction mod {}", field.characteristic())));
    }
    let eqs = wq.equations();
    Ok((wq, eqs))
}

pub fn brute_count(x: &Threefold, w: &LinearSubspace, q: u64, ext: u32, budget: u64) -> Result<BruteCount> {
    let field = finite_field(q, ext)?;
    let (wq, eqs) = reduce_subspace(w, field)?;
    let k = field.order().unwrap();
    let elems = field.elements();
    let (points, enumerated) = match x {
        Threefold::Param(v) => count_param(v, &eqs, &elems, k, budget)?,
        Threefold::Divisor(d) => count_divisor(d, &wq, &elems, k, budget)?,
    };
    Ok(BruteCount { q, ext, points, enumerated })
}

fn count_param(v: &ParamVariety, eqs: &[Vec<Scalar>], elems: &[Scalar], k: u64, budget: u64) -> Result<(usize, u64)> {
    let field = elems[0].field();
    let kind = v.space.kind;
    let needed = match kind {
        SpaceKind::P1 => proj_size(1, k),
        SpaceKind::P2 => proj_size(2, k),
        SpaceKind::P3 => proj_size(3, k),
        SpaceKind::P1xP2 => proj_size(1, k).saturating_mul(proj_size(2, k)),
        SpaceKind::WP1112 => proj_size(2, k).saturating_mul(k).saturating_add(1),
    };
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    let coords: Vec<Compiled> = v.coords.iter().map(|c| Compiled::new(c, field)).collect::<Result<_>>()?;
    let maxdeg = v.coords.iter().filter_map(|c| c.total_degree()).max().unwrap_or(1) as usize;
    let zero = field.zero();
    let mut seen: HashSet<ProjPoint> = HashSet::new();
    let mut visit = |params: &[Scalar]| {
        let pows: Vec<Vec<Scalar>> = params
            .iter()
            .map(|u| {
                let mut p = vec![field.one()];
                for i in 0..maxdeg {
                    let n = &p[i] * u;
                    p.push(n);
                }
                p
            })
            .collect();
        let x: Vec<Scalar> = coords.iter().map(|c| c.eval(&pows, &zero)).collect();
        if x.iter().all(|c| c.is_zero()) || !eqs.iter().all(|e| dot(e, &x).is_zero()) {
            return;
        }
        seen.insert(ProjPoint::new(x).unwrap());
    };
    match kind {
        SpaceKind::P1 | SpaceKind::P2 | SpaceKind::P3 => for_each_proj(v.space.nvars() - 1, elems, &mut visit),
        SpaceKind::P1xP2 => for_each_proj(1, elems, &mut |u: &[Scalar]| {
            for_each_proj(2, elems, &mut |w: &[Scalar]| {
                let p: Vec<Scalar> = u.iter().chain(w).cloned().collect();
                visit(&p);
            })
        }),
        SpaceKind::WP1112 => {
            for_each_proj(2, elems, &mut |u: &[Scalar]| {
                for u3 in elems {
                    let p: Vec<Scalar> = u.iter().chain(std::iter::once(u3)).cloned().collect();
                    visit(&p);
                }
            });
            visit(&[zero.clone(), zero.clone(), zero.clone(), field.one()]);
        }
    }
    Ok((seen.len(), needed))
}

fn count_divisor(d: &Q4Divisor, wq: &LinearSubspace, elems: &[Scalar], k: u64, budget: u64) -> Result<(usize, u64)> {
    let field = elems[0].field();
    let basis = wq.basis_vectors();
    let needed = proj_size(basis.len() - 1, k);
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    let mut count = 0;
    let mut err = None;
    for_each_proj(basis.len() - 1, elems, &mut |c: &[Scalar]| {
        let mut x = vec![field.zero(); N];
        for (ci, b) in c.iter().zip(&basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi = &*xi + &(ci * bi);
            }
        }
        if !Q4Divisor::on_q4(&x) {
            return;
        }
        match d.contains(&ProjPoint::new(x).unwrap()) {
            Ok(true) => count += 1,
            Ok(false) => {}
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok((count, needed))
}

fn reduce_poly(h: &UniPoly, fq: Field) -> Result<UniPoly> {
    let c = h.coeffs().iter().map(|s| fq.coerce(s)).collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(c, fq))
}

/// Number of distinct roots in `F_{q^e}` of a polynomial over `F_q`.
fn roots_in_extension(h: &UniPoly, q: u64, ext: u32) -> Result<usize> {
    let h = h.squarefree_part()?;
    if h.deg0() == 0 {
        return Ok(0);
    }
    let x = UniPoly::x(h.field());
    let frob = x.powmod(&BigUint::from(q).pow(ext), &h);
    Ok(UniPoly::gcd(&h, &(&frob - &x)).deg0())
}

/// The number of points the exact report predicts over `F_{q^ext}`. Fails
/// with `Invalid` when the report does not have good reduction at `q`.
pub fn expected_count(rep: &IntersectionReport, q: u64, ext: u32) -> Result<usize> {
    if !rep.is_finite() {
        return Err(Error::Nonfinite("the intersection is not finite".into()));
    }
    let fq = Field::prime(q)?;
    let bad = || Error::Invalid(format!("the intersection has bad reduction mod {q}"));
    for p in &rep.points {
        for c in p.coords.iter().chain(&p.params).chain([&p.modulus]) {
            reduce_poly(c, fq).map_err(|_| bad())?;
        }
    }
    if let Some(t) = &rep.eliminant_coords {
        if t.coerce(fq).map_err(|_| bad())?.rank() < t.rows() {
            return Err(bad());
        }
    }
    let Some(phi) = &rep.eliminant else {
        let mut n = 0;
        for p in &rep.points {
            n += roots_in_extension(&reduce_poly(&p.modulus, fq)?, q, ext)?;
        }
        return Ok(n);
    };
    let red = phi.coerce(fq).map_err(|_| bad())?;
    if red.is_zero() || red.multiplicity_at_infinity() != phi.multiplicity_at_infinity() {
        return Err(bad());
    }
    let (aff, aff_q) = (phi.dehomogenize(), red.dehomogenize());
    if aff.deg0() != aff_q.deg0() || aff.squarefree_part()?.deg0() != aff_q.squarefree_part()?.deg0() {
        return Err(bad());
    }
    Ok(usize::from(phi.multiplicity_at_infinity() > 0) + roots_in_extension(&aff_q, q, ext)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_space_sizes() {
        let f = Field::prime(5).unwrap();
        let mut n = 0;
        for_each_proj(2, &f.elements(), &mut |_| n += 1);
        assert_eq!(n, 31);
        assert_eq!(proj_size(2, 5), 31);
    }

    #[test]
    fn extension_roots() {
        // t^2 + 1 over F_7 has no roots, two over F_49
        let f = Field::prime(7).unwrap();
        let h = UniPoly::from_i64(&[1, 0, 1], f);
        assert_eq!(roots_in_extension(&h, 7, 1).unwrap(), 0);
        assert_eq!(roots_in_extension(&h, 7, 2).unwrap(), 2);
    }
}
