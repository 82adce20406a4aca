//! Criteria 1 to 7: counts, classification and smoothness.

use super::{common_root_instance, seeded_divisors, Q, TRIALS};
use crate::classify::{classify_main, smoothness, verify_evidence, MainCase, SingularReason, Smoothness};
use crate::classify::{jacobian_samples, verify_witness};
use crate::error::Result;
use crate::intersect::{bidegree, degree, meet_linear_exact, Threefold};
use crate::quadspace::{self, h0, p5, IsoType, LinearSubspace, ProjPoint};
use crate::varieties::{builtin, Q4Divisor};

fn param(name: &str) -> Result<Threefold> {
    Ok(Threefold::Param(builtin(name)?))
}

/// `x1 x4^2 + x2 x6^2`.
pub(super) fn double_point_instance() -> Result<Q4Divisor> {
    Q4Divisor::from_i64(3, &[0, 0, 0, 0], &[1, 0, 0], &[0, 0, 1], &[0, 0, 0], &[0, 0, 0])
}

fn criterion3_divisors(seed: u64) -> Vec<Q4Divisor> {
    seeded_divisors(10, seed, 10 << 32)
}

pub fn c1(seed: u64) -> Result<(bool, String)> {
    let h = bidegree(&param("horizontal3")?, TRIALS, seed)?;
    let v = bidegree(&param("vertical3")?, TRIALS, seed)?;
    // D1 = {x4 = x6 = 0} on Q4 = Q6 ∩ {x7 = x8 = 0}
    let mut eqs = p5(Q).equations();
    for i in [3, 5] {
        eqs.push(quadspace::unit(i, Q));
    }
    let d1 = LinearSubspace::from_equations(&eqs, Q)?;
    let ok = (h.a, h.b) == (1, 0) && (v.a, v.b) == (0, 1) && d1 == h0(Q) && d1.is_isotropic();
    Ok((ok, format!("horizontal3 ({},{}), vertical3 ({},{}), D1 = H0: {}", h.a, h.b, v.a, v.b, d1 == h0(Q))))
}

pub fn c2(seed: u64) -> Result<(bool, String)> {
    let x = param("veronese_cone")?;
    let b = bidegree(&x, TRIALS, seed)?;
    let w = LinearSubspace::coordinate(&[1, 3, 5, 7], Q);
    let r = meet_linear_exact(&x, &w, seed)?;
    let single = r.is_finite() && r.total == 1 && r.points.len() == 1;
    let at = single
        && r.points[0].multiplicity == 1
        && r.points[0].transversal
        && r.points[0].rational_params().is_some_and(|u| !u[0].is_zero() && u[1..].iter().all(|c| c.is_zero()));
    Ok(((b.a, b.b) == (1, 3) && single && at, format!("bidegree ({},{}), total {}, at (1:0:0:0) transversal: {at}", b.a, b.b, r.total)))
}

pub fn c3(seed: u64) -> Result<(bool, String)> {
    let mut ok = true;
    let mut bad = vec![];
    for (name, want) in [("veronese_cone", 4), ("quadric5", 2)] {
        let d = degree(&param(name)?, TRIALS, seed)?.modal;
        if d != want {
            ok = false;
            bad.push(format!("{name} degree {d}"));
        }
    }
    let sd = degree(&Threefold::Divisor(Q4Divisor::segre()), TRIALS, seed)?.modal;
    if sd != 3 {
        ok = false;
        bad.push(format!("segre divisor degree {sd}"));
    }
    let divs = criterion3_divisors(seed);
    for (i, d) in divs.iter().enumerate() {
        let p = d.p();
        let x = Threefold::Divisor(d.clone());
        let deg = degree(&x, TRIALS, seed)?.modal;
        let b = bidegree(&x, TRIALS, seed)?;
        if deg != p + 1 || (b.a, b.b) != (1, p) {
            ok = false;
            bad.push(format!("divisor {i} (p = {p}): degree {deg}, bidegree ({},{})", b.a, b.b));
        }
    }
    let detail = if bad.is_empty() { format!("3 reference degrees and {} random divisors match", divs.len()) } else { bad.join("; ") };
    Ok((ok, detail))
}

pub fn c4(seed: u64) -> Result<(bool, String)> {
    let mut xs: Vec<Threefold> = criterion3_divisors(seed).into_iter().map(Threefold::Divisor).collect();
    xs.push(param("veronese_cone")?);
    xs.push(param("quadric5")?);
    xs.push(Threefold::Divisor(Q4Divisor::segre()));
    let (mut finite, mut good) = (0, 0);
    for x in &xs {
        // the first draw of each vertical trial, without resampling
        for t in 0..TRIALS {
            let mut rng = quadspace::rng_for(seed, t as u64);
            let w = quadspace::random_max_isotropic_with(IsoType::Vertical, Q, &mut rng)?;
            let r = meet_linear_exact(x, &w, seed.wrapping_add(t as u64))?;
            if !r.is_finite() {
                continue;
            }
            finite += 1;
            if r.total == 1 && r.points.len() == 1 && r.all_transversal() {
                good += 1;
            }
        }
    }
    Ok((finite > 0 && good == finite, format!("{good}/{finite} finite vertical trials give one transversal point")))
}

pub fn c5(seed: u64) -> Result<(bool, String)> {
    let xs = [param("horizontal3")?, param("quadric5")?, param("veronese_cone")?, Threefold::Divisor(Q4Divisor::segre())];
    let want = [MainCase::HorizontalP3, MainCase::SmoothQuadricP4, MainCase::VeroneseCone, MainCase::Q4WeilDivisor];
    let mut got = vec![];
    let mut verified = true;
    for x in &xs {
        let c = classify_main(x, TRIALS, seed)?;
        verified &= verify_evidence(x, &c, seed.wrapping_add(1))?;
        got.push(c.case);
    }
    let distinct = (0..4).all(|i| (i + 1..4).all(|j| got[i] != got[j]));
    Ok((got == want && distinct && verified, format!("{got:?}, evidence verified: {verified}")))
}

pub fn c6(seed: u64) -> Result<(bool, String)> {
    let segre = Q4Divisor::segre();
    let smooth = matches!(smoothness(&segre)?, Smoothness::Smooth(_));
    let full = jacobian_samples(&segre, 500, seed)?;
    let dp = double_point_instance()?;
    let dp_ok = match smoothness(&dp)? {
        Smoothness::Singular { reason: SingularReason::PsiDoublePoint, witness } => {
            witness.point == ProjPoint::from_i64(&[-1, 1, 0, 0, 0, 0, 0, 0], Q) && verify_witness(&dp, &witness)?
        }
        _ => false,
    };
    let cone = Q4Divisor::from_i64(3, &[1, 0, 0, 1], &[0, 0, 0], &[0, 0, 0], &[0, 0, 0], &[0, 0, 0])?;
    let cone_ok = matches!(smoothness(&cone)?, Smoothness::DoubleCone { .. });
    let cr = common_root_instance(seed);
    let cr_ok = match smoothness(&cr)? {
        Smoothness::Singular { reason: SingularReason::CommonRootPair, witness } => verify_witness(&cr, &witness)?,
        _ => false,
    };
    let ok = smooth && full == 500 && dp_ok && cone_ok && cr_ok;
    Ok((ok, format!("segre smooth {smooth} ({full}/500 full rank), double point {dp_ok}, double cone {cone_ok}, common root {cr_ok}")))
}

pub fn c7(seed: u64) -> Result<(bool, String)> {
    let divs = seeded_divisors(10, seed, 11 << 32);
    let mut good = 0;
    for d in &divs {
        if d.psi_degree()? == d.p() - 1 {
            good += 1;
        }
    }
    let dp = double_point_instance()?;
    let (one, m) = (Q.one(), Q.from_i64(-1));
    let coincide = dp.psi(&one, &one)? == dp.psi(&one, &m)?;
    Ok((good == divs.len() && coincide, format!("{good}/{} degrees p - 1, psi(1:1) = psi(1:-1): {coincide}", divs.len())))
}
