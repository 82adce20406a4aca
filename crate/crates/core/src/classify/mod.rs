//! Classification of `(1,p)` threefolds in `Q6` by their linear span, and the
//! decision procedures for divisors on `Q4`.

pub mod normal;
pub mod reducible;
pub mod smooth;

use serde::Serialize;

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::intersect::{bidegree, span_of, Bidegree, Threefold};
use crate::quadspace::{self, iso_type, IsoType, LinearSubspace, ProjPoint};
use crate::varieties::SpaceKind;

pub use normal::{normalize_p2, NormalForm};
pub use reducible::{irreducible, plane_decomposition, Irreducibility, PlaneDecomposition};
pub use smooth::{jacobian_samples, psi_double_point, smoothness, verify_witness, SingularReason, SingularWitness, Smoothness};

const Q: Field = Field::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MainCase {
    /// A horizontal `P^3` (`p = 0`).
    HorizontalP3,
    /// A smooth quadric threefold spanning a `P^4`.
    SmoothQuadricP4,
    /// A Weil divisor on a rank-4 quadric cone `Q4`.
    Q4WeilDivisor,
    /// A cone over the Veronese surface (`p = 3`), spanning a `P^6`.
    VeroneseCone,
    /// The invariants fit none of the cases above.
    Inconsistent,
}

/// The data a classification rests on, kept so it can be re-checked.
#[derive(Clone, Debug)]
pub struct Evidence {
    pub span: LinearSubspace,
    /// Rank of the form on the span.
    pub span_rank: usize,
    pub bidegree: (usize, usize),
    pub iso: Option<IsoType>,
    /// `Ann(span)`, a point of the threefold, for the cone case.
    pub vertex: Option<ProjPoint>,
    /// Whether `Ann(span)` contains an isotropic line (divisor cases).
    pub ann_isotropic_line: Option<bool>,
    /// Why no case matched.
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub case: MainCase,
    pub evidence: Evidence,
    pub bidegree_trials: Bidegree,
}

pub fn classify_main(x: &Threefold, trials: usize, seed: u64) -> Result<Classification> {
    let span = span_of(x, seed)?;
    let bd = bidegree(x, trials, seed)?;
    let (a, p) = (bd.a, bd.b);
    let rank = span.restrict_rank();
    let mut iso = None;
    let mut vertex = None;
    let mut ann_line = None;
    let mut note = None;
    let case = match span.dim() {
        _ if a != 1 => {
            note = Some(format!("bidegree ({a},{p}) is not of the form (1,p)"));
            MainCase::Inconsistent
        }
        4 if span.is_isotropic() => {
            let t = iso_type(&span)?;
            iso = Some(t);
            if t == IsoType::Horizontal && p == 0 {
                MainCase::HorizontalP3
            } else {
                note = Some(format!("isotropic P^3 of type {t:?} with p = {p}"));
                MainCase::Inconsistent
            }
        }
        5 if rank == 5 => MainCase::SmoothQuadricP4,
        d @ (5 | 6) if rank == 4 || (d == 5 && rank == 3) => {
            ann_line = Some(has_isotropic_line(&span.annihilator()));
            MainCase::Q4WeilDivisor
        }
        7 if p == 3 => {
            let ann = span.annihilator();
            let v = ann.basis_vectors().remove(0);
            vertex = Some(ProjPoint::new(v)?);
            MainCase::VeroneseCone
        }
        k => {
            note = Some(format!("span P^{} with restricted rank {rank} and p = {p}", k - 1));
            MainCase::Inconsistent
        }
    };
    let c = Classification { case, evidence: Evidence { span, span_rank: rank, bidegree: (a, p), iso, vertex, ann_isotropic_line: ann_line, note }, bidegree_trials: bd };
    if !verify_evidence(x, &c, seed)? {
        return Err(Error::Internal("classification evidence failed re-verification".into()));
    }
    Ok(c)
}

/// Re-checks the evidence independently of how it was produced.
pub fn verify_evidence(x: &Threefold, c: &Classification, seed: u64) -> Result<bool> {
    let ev = &c.evidence;
    // fresh points of X stay in the span
    let mut rng = quadspace::rng_for(seed ^ 0x9e37_79b9, 7 << 32);
    for _ in 0..20 {
        if !ev.span.contains(&x.random_point(&mut rng)?) {
            return Ok(false);
        }
    }
    if ev.span.restrict_rank() != ev.span_rank {
        return Ok(false);
    }
    Ok(match c.case {
        MainCase::HorizontalP3 => ev.span.dim() == 4 && ev.span.is_isotropic() && iso_type(&ev.span)? == IsoType::Horizontal,
        MainCase::SmoothQuadricP4 => ev.span.dim() == 5 && ev.span_rank == 5,
        MainCase::Q4WeilDivisor => {
            matches!((ev.span.dim(), ev.span_rank), (5, 3) | (5, 4) | (6, 4))
                && ev.ann_isotropic_line == Some(has_isotropic_line(&ev.span.annihilator()))
        }
        MainCase::Inconsistent => ev.note.is_some(),
        MainCase::VeroneseCone => {
            let Some(v) = &ev.vertex else { return Ok(false) };
            let ann = ev.span.annihilator();
            let on_x = match x {
                // the vertex is the image of (0:0:0:1)
                Threefold::Param(pv) if pv.space.kind == SpaceKind::WP1112 => {
                    let q = Q;
                    let raw = pv.eval_raw(&[q.zero(), q.zero(), q.zero(), q.one()])?;
                    ProjPoint::new(raw).map(|r| &r == v).unwrap_or(false)
                }
                _ => true,
            };
            ev.span.dim() == 7 && ann.dim() == 1 && ann.contains(v.coords()) && v.on_q6() && on_x
        }
    })
}

/// Whether the subspace contains a 2-dimensional totally isotropic subspace
/// (decided for the small annihilators that occur here: dimension at most 3).
fn has_isotropic_line(s: &LinearSubspace) -> bool {
    match s.dim() {
        0 | 1 => false,
        2 => s.is_isotropic(),
        // a plane conic contains a line iff the form has rank at most 2 there
        3 => s.restrict_rank() <= 2,
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::{builtin, Q4Divisor};

    #[test]
    fn four_cases() {
        let cases: Vec<MainCase> = [
            Threefold::Param(builtin("horizontal3").unwrap()),
            Threefold::Param(builtin("quadric5").unwrap()),
            Threefold::Param(builtin("veronese_cone").unwrap()),
            Threefold::Divisor(Q4Divisor::segre()),
        ]
        .iter()
        .map(|x| classify_main(x, 3, 1).unwrap().case)
        .collect();
        assert_eq!(cases, vec![MainCase::HorizontalP3, MainCase::SmoothQuadricP4, MainCase::VeroneseCone, MainCase::Q4WeilDivisor]);
        let v = classify_main(&Threefold::Param(builtin("vertical3").unwrap()), 3, 1).unwrap();
        assert_eq!(v.case, MainCase::Inconsistent);
    }
}
