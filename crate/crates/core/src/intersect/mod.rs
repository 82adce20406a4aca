//! Exact intersections of threefolds in `Q6` with linear subspaces, and the
//! bidegree / degree / linear span computed from them.

pub mod brute;
pub mod divisor;
pub mod param;
pub mod roots;
pub mod tangent;

use std::collections::BTreeMap;

use rand::Rng;

use crate::algebra::{BinaryForm, Field, Matrix, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::quadspace::{self, IsoType, LinearSubspace, ProjPoint};
use crate::varieties::{ParamVariety, Q4Divisor};

/// Any threefold the library can intersect.
#[derive(Clone, Debug)]
pub enum Threefold {
    Param(ParamVariety),
    Divisor(Q4Divisor),
}

impl Threefold {
    pub fn name(&self) -> String {
        match self {
            Threefold::Param(v) => v.name.clone(),
            Threefold::Divisor(d) => format!("divisor(p={})", d.p()),
        }
    }

    /// A random point of the threefold (affine representative).
    pub fn random_point(&self, rng: &mut impl Rng) -> Result<Vec<Scalar>> {
        match self {
            Threefold::Param(v) => loop {
                let u = v.space.random_point(Field::Rational, rng);
                let x = v.eval_raw(&u)?;
                if x.iter().any(|c| !c.is_zero()) {
                    return Ok(x);
                }
            },
            Threefold::Divisor(d) => d.random_point(Field::Rational, rng),
        }
    }
}

/// A Galois orbit of intersection points: the roots of `modulus`, with
/// coordinates given as polynomials in its root.
#[derive(Clone, Debug)]
pub struct IntersectionPoint {
    pub modulus: UniPoly,
    /// Parameter values (or pencil coordinates for divisors) modulo `modulus`.
    pub params: Vec<UniPoly>,
    pub coords: Vec<UniPoly>,
    pub multiplicity: usize,
    pub transversal: bool,
}

impl IntersectionPoint {
    /// Number of geometric points in the orbit.
    pub fn count(&self) -> usize {
        self.modulus.deg0()
    }

    /// The point itself when it is rational.
    pub fn rational(&self) -> Option<ProjPoint> {
        if self.count() != 1 {
            return None;
        }
        ProjPoint::new(self.coords.iter().map(|c| c.coeff(0)).collect()).ok()
    }

    pub fn rational_params(&self) -> Option<Vec<Scalar>> {
        (self.count() == 1).then(|| self.params.iter().map(|c| c.coeff(0)).collect())
    }
}

#[derive(Clone, Debug)]
pub struct IntersectionReport {
    pub points: Vec<IntersectionPoint>,
    /// Number of points counted with multiplicity.
    pub total: usize,
    /// Set when the intersection has positive dimension.
    pub nonfinite: Option<String>,
    /// The binary form whose roots are the points, when one is used.
    pub eliminant: Option<BinaryForm>,
    /// Coordinate change `u = T w` under which the eliminant is written.
    pub eliminant_coords: Option<Matrix>,
    pub method: &'static str,
}

impl IntersectionReport {
    pub fn finite(points: Vec<IntersectionPoint>, eliminant: Option<BinaryForm>, method: &'static str) -> Self {
        let total = points.iter().map(|p| p.count() * p.multiplicity).sum();
        IntersectionReport { points, total, nonfinite: None, eliminant, eliminant_coords: None, method }
    }

    pub fn nonfinite(reason: impl Into<String>, method: &'static str) -> Self {
        IntersectionReport {
            points: vec![],
            total: 0,
            nonfinite: Some(reason.into()),
            eliminant: None,
            eliminant_coords: None,
            method,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.nonfinite.is_none()
    }

    pub fn all_transversal(&self) -> bool {
        self.points.iter().all(|p| p.transversal && p.multiplicity == 1)
    }

    /// Number of geometric points, ignoring multiplicity.
    pub fn distinct(&self) -> usize {
        self.points.iter().map(|p| p.count()).sum()
    }
}

const REMIX_SEED: u64 = 0x51_7e_c4_ec;

/// Exact intersection of `x` with the linear subspace `w` (over Q).
pub fn meet_linear_exact(x: &Threefold, w: &LinearSubspace, seed: u64) -> Result<IntersectionReport> {
    if w.field() != Field::Rational {
        return Err(Error::UnsupportedField("exact intersections are computed over Q".into()));
    }
    if w.dim() == 0 {
        return Err(Error::Dimension("empty subspace".into()));
    }
    match x {
        Threefold::Divisor(d) => divisor::meet(d, w),
        Threefold::Param(v) => {
            let eqs = w.equations();
            let rep = param::meet(v, w, &eqs, seed)?;
            if eqs.len() >= 2 {
                // the answer must not depend on which equations describe w
                let remixed = remix(&eqs);
                let again = param::meet(v, w, &remixed, seed)?;
                if again.is_finite() != rep.is_finite() || again.total != rep.total {
                    return Err(Error::Internal(format!(
                        "intersection count changed under a change of equations ({} vs {})",
                        rep.total, again.total
                    )));
                }
            }
            Ok(rep)
        }
    }
}

/// `R * eqs` for a fixed-seed random invertible integer matrix `R`.
fn remix(eqs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let q = Field::Rational;
    let m = eqs.len();
    let mut rng = quadspace::rng_for(REMIX_SEED, m as u64);
    loop {
        let r: Vec<Vec<i64>> = (0..m).map(|_| (0..m).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let rm = Matrix::from_rows(r.iter().map(|row| row.iter().map(|&v| q.from_i64(v)).collect()).collect(), m, q).unwrap();
        if rm.rank() < m {
            continue;
        }
        return (0..m)
            .map(|i| {
                (0..quadspace::N)
                    .map(|c| (0..m).fold(q.zero(), |acc, k| &acc + &(rm.get(i, k) * &eqs[k][c])))
                    .collect()
            })
            .collect();
    }
}

/// Per-trial outcome of a generic intersection count.
#[derive(Clone, Debug)]
pub struct TrialCounts {
    /// `None` when every resample of the trial was degenerate.
    pub counts: Vec<Option<usize>>,
    pub resamples: usize,
    pub modal: usize,
    /// Trials whose count differs from the modal value.
    pub non_modal: Vec<usize>,
}

impl TrialCounts {
    fn from_counts(counts: Vec<Option<usize>>, resamples: usize) -> Result<Self> {
        let mut tally: BTreeMap<usize, usize> = BTreeMap::new();
        for c in counts.iter().flatten() {
            *tally.entry(*c).or_default() += 1;
        }
        // most frequent; ties go to the smaller count
        let Some((&modal, _)) = tally.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))) else {
            return Err(Error::NonGeneric("every sampled subspace was degenerate".into()));
        };
        let non_modal = counts.iter().enumerate().filter(|(_, c)| **c != Some(modal)).map(|(i, _)| i).collect();
        Ok(TrialCounts { counts, resamples, modal, non_modal })
    }
}

const MAX_RESAMPLES: usize = 10;

/// Runs `trials` generic intersections with subspaces drawn by `sample`.
/// Degenerate draws (positive-dimensional, non-transversal or non-generic)
/// are resampled.
pub fn count_trials(
    x: &Threefold,
    trials: usize,
    seed: u64,
    stream: u64,
    mut sample: impl FnMut(&mut rand_chacha::ChaCha8Rng) -> Result<LinearSubspace>,
) -> Result<(TrialCounts, Vec<Option<IntersectionReport>>)> {
    let mut counts = vec![];
    let mut reports = vec![];
    let mut resamples = 0;
    for t in 0..trials {
        let mut rng = quadspace::rng_for(seed, stream + t as u64);
        let mut found = None;
        for attempt in 0..MAX_RESAMPLES {
            if attempt > 0 {
                resamples += 1;
            }
            let w = sample(&mut rng)?;
            match meet_linear_exact(x, &w, seed.wrapping_add(t as u64)) {
                Ok(r) if r.is_finite() && r.all_transversal() => {
                    found = Some(r);
                    break;
                }
                Ok(_) | Err(Error::NonGeneric(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        counts.push(found.as_ref().map(|r| r.total));
        reports.push(found);
    }
    Ok((TrialCounts::from_counts(counts, resamples)?, reports))
}

#[derive(Clone, Debug)]
pub struct Bidegree {
    /// Points on a generic vertical 3-plane.
    pub a: usize,
    /// Points on a generic horizontal 3-plane.
    pub b: usize,
    pub vertical: TrialCounts,
    pub horizontal: TrialCounts,
}

pub fn bidegree(x: &Threefold, trials: usize, seed: u64) -> Result<Bidegree> {
    let iso = |t: IsoType| move |rng: &mut rand_chacha::ChaCha8Rng| quadspace::random_max_isotropic_with(t, Field::Rational, rng);
    let (vertical, _) = count_trials(x, trials, seed, 0, iso(IsoType::Vertical))?;
    let (horizontal, _) = count_trials(x, trials, seed, 1 << 32, iso(IsoType::Horizontal))?;
    Ok(Bidegree { a: vertical.modal, b: horizontal.modal, vertical, horizontal })
}

/// Degree in `P^7`: points on a generic codimension-3 linear space.
pub fn degree(x: &Threefold, trials: usize, seed: u64) -> Result<TrialCounts> {
    let (tc, _) = count_trials(x, trials, seed, 2 << 32, |rng| Ok(quadspace::random_subspace(5, Field::Rational, rng)))?;
    Ok(tc)
}

/// Linear span, from random points until ten consecutive points add nothing.
pub fn span_of(x: &Threefold, seed: u64) -> Result<LinearSubspace> {
    let q = Field::Rational;
    let mut rng = quadspace::rng_for(seed, 3 << 32);
    let mut s = LinearSubspace::zero(q);
    let mut stable = 0;
    while stable < 10 {
        let p = x.random_point(&mut rng)?;
        if s.contains(&p) {
            stable += 1;
        } else {
            s = s.sum(&LinearSubspace::span(&[p], q)?);
            stable = 0;
        }
    }
    Ok(s)
}
