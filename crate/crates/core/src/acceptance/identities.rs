//! Criteria 8 to 13: exact identities, parity, brute force and plane structure.

use rand::Rng;

use super::{seeded_divisors, Q};
use crate::algebra::{Field, MultiPoly, Scalar};
use crate::classify::normal::restricted;
use crate::classify::{irreducible, normalize_p2, plane_decomposition, Irreducibility};
use crate::error::Result;
use crate::intersect::brute::{brute_count, expected_count, DEFAULT_BUDGET};
use crate::intersect::{meet_linear_exact, Threefold};
use crate::quadspace::{self, extend_isotropic_plane, gram, h0, iso_type, v0, IsoType, LinearSubspace};
use crate::varieties::{builtin, plucker_relation, wedge_plucker, Q4Divisor};

pub fn c8(seed: u64) -> Result<(bool, String)> {
    let mut rng = quadspace::rng_for(seed, 12 << 32);
    let g = gram(Q);
    let target = Q4Divisor::segre();
    let mut good = 0;
    for _ in 0..10 {
        let d = Q4Divisor::random(2, &mut rng);
        let nf = normalize_p2(&d)?;
        let similitude = !nf.c.is_zero() && nf.m.transpose().mul(&g)?.mul(&nf.m)? == g.scale(&nf.c);
        let keeps_p5 = (6..8).all(|i| (0..6).all(|k| nf.m.get(i, k).is_zero()));
        let reaches = restricted(&d.f(), &nf.m)? == target.f() && nf.transformed == target;
        if similitude && keeps_p5 && reaches {
            good += 1;
        }
    }
    Ok((good == 10, format!("{good}/10 instances normalized exactly")))
}

/// `u4^(p-1) (g1 u1 + g2 u2 + (a g3 + b g5) u3 + gp u4)` at `(a, b)`.
fn expected_restriction(d: &Q4Divisor, a: &Scalar, b: &Scalar) -> MultiPoly {
    let uv = MultiPoly::names(&["u1", "u2", "u3", "u4"]);
    let u = |i: usize| MultiPoly::var_at(&uv, i, Q);
    let c3 = &(a * &d.g3().eval(a, b)) + &(b * &d.g5().eval(a, b));
    let coeffs = [d.g1().eval(a, b), d.g2().eval(a, b), c3, d.gp().eval(a, b)];
    let lin = coeffs.iter().enumerate().fold(MultiPoly::zero(&uv, Q), |acc, (i, c)| acc.add(&u(i).scale(c)));
    u(3).pow(d.p() as u32 - 1).mul(&lin)
}

fn secant_identities() -> Result<(bool, bool)> {
    let st = MultiPoly::names(&["s", "t"]);
    let (s, t) = (MultiPoly::var_at(&st, 0, Q), MultiPoly::var_at(&st, 1, Q));
    let one = MultiPoly::constant(&st, Q.one());
    let ver = builtin("veronese_surface")?;
    let subs = [one.clone(), s.add(&t), s.mul(&t)];
    let v: Vec<MultiPoly> = ver.coords.iter().map(|c| c.compose(&subs)).collect::<Result<_>>()?;
    // x2..x7 carry (p12, p13, p23, p14, p24, p34)
    let x = &v[1..7];
    let pw = |p: &MultiPoly, k: u32| p.pow(k);
    let (a, b): (Vec<MultiPoly>, Vec<MultiPoly>) = ((0..4).map(|k| pw(&t, k)).collect(), (0..4).map(|k| pw(&s, k)).collect());
    let pairs = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)];
    let diff = s.sub(&t);
    let mut wedge_ok = pairs.iter().zip(x).all(|(&(i, j), xk)| a[i].mul(&b[j]).sub(&a[j].mul(&b[i])) == diff.mul(xk));
    // the numeric map agrees on a grid fixing all polynomials of degree <= 4 in each variable
    for sv in 0..5 {
        for tv in 10..15 {
            let pt = [Q.from_i64(sv), Q.from_i64(tv)];
            let w = wedge_plucker(&pt[0], &pt[1])?;
            for (k, xk) in x.iter().enumerate() {
                wedge_ok &= xk.eval(&pt)? == w[k];
            }
        }
    }
    let rel = x[0].mul(&x[5]).sub(&x[1].mul(&x[4])).add(&x[2].mul(&x[3]));
    let mut rel_ok = rel.is_zero();
    for sv in 0..3 {
        rel_ok &= plucker_relation(&wedge_plucker(&Q.from_i64(sv), &Q.from_i64(sv + 7))?).is_zero();
    }
    Ok((wedge_ok, rel_ok))
}

pub fn c9(seed: u64) -> Result<(bool, String)> {
    let divs = seeded_divisors(50, seed, 13 << 32);
    let mut rng = quadspace::rng_for(seed, 13 << 32 | 1);
    let (mut checked, mut good) = (0, 0);
    for d in &divs {
        let mut n = 0;
        while n < 20 {
            let (a, b) = (quadspace::random_scalar(Q, &mut rng), quadspace::random_scalar(Q, &mut rng));
            if a.is_zero() && b.is_zero() {
                continue;
            }
            n += 1;
            checked += 1;
            if d.restrict_to_pencil(&a, &b).is_ok_and(|r| r == expected_restriction(d, &a, &b)) {
                good += 1;
            }
        }
    }
    let (wedge_ok, rel_ok) = secant_identities()?;
    let ok = good == checked && wedge_ok && rel_ok;
    Ok((ok, format!("{good}/{checked} pencil restrictions, wedge = Veronese: {wedge_ok}, Plucker relation: {rel_ok}")))
}

fn random_sub_plane(u: &LinearSubspace, rng: &mut impl Rng) -> Result<LinearSubspace> {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..3).map(|_| quadspace::random_element(u, rng)).collect();
        let w = LinearSubspace::span(&rows, u.field())?;
        if w.dim() == 3 {
            return Ok(w);
        }
    }
}

pub fn c10(seed: u64) -> Result<(bool, String)> {
    let f = Field::prime(101)?;
    let mut rng = quadspace::rng_for(seed, 16 << 32);
    let (v, h) = (v0(f), h0(f));
    let mut samples = vec![];
    let (mut parity, mut stable) = (0, 0);
    for _ in 0..200 {
        let t = if rng.gen_bool(0.5) { IsoType::Vertical } else { IsoType::Horizontal };
        let u = quadspace::random_max_isotropic_with(t, f, &mut rng)?;
        let ty = iso_type(&u)?;
        if (u.intersect(&v).dim() + u.intersect(&h).dim()) % 2 == 1 {
            parity += 1;
        }
        let w = random_sub_plane(&u, &mut rng)?;
        let (ev, eh) = extend_isotropic_plane(&w)?;
        let (same, other) = if ty == IsoType::Vertical { (ev, eh) } else { (eh, ev) };
        if same == u && other != u && other.contains_subspace(&w) && ty == t {
            stable += 1;
        }
        samples.push((u, ty));
    }
    let mut pairs = 0;
    for k in 0..100 {
        let (i, j) = (2 * k, 2 * k + 1);
        let (a, b) = (&samples[i], &samples[j]);
        let even = a.0.intersect(&b.0).dim() % 2 == 0;
        if even == (a.1 == b.1) {
            pairs += 1;
        }
    }
    let ok = parity == 200 && stable == 200 && pairs == 100;
    Ok((ok, format!("odd parity {parity}/200, stable type {stable}/200, pairwise parity {pairs}/100")))
}

pub fn c11(seed: u64) -> Result<(bool, String)> {
    let mut compared = 0;
    let mut mismatches = vec![];
    for (k, name) in ["segre", "veronese_cone"].iter().enumerate() {
        let x = Threefold::Param(builtin(name)?);
        let mut rng = quadspace::rng_for(seed, (14 << 32) + k as u64);
        let mut used = 0;
        for _ in 0..30 {
            if used == 3 {
                break;
            }
            let w = quadspace::random_max_isotropic_with(IsoType::Horizontal, Q, &mut rng)?;
            let r = meet_linear_exact(&x, &w, seed)?;
            if !r.is_finite() {
                continue;
            }
            // keep subspaces with good reduction at every prime used
            let mut exp = vec![];
            for q in [7u64, 11] {
                for ext in [1u32, 2] {
                    if let Ok(e) = expected_count(&r, q, ext) {
                        exp.push((q, ext, e));
                    }
                }
            }
            if exp.len() != 4 {
                continue;
            }
            used += 1;
            for (q, ext, e) in exp {
                let got = brute_count(&x, &w, q, ext, DEFAULT_BUDGET)?.points;
                compared += 1;
                if got != e {
                    mismatches.push(format!("{name} q={q}^{ext}: brute {got}, exact {e}"));
                }
            }
        }
        if used < 3 {
            mismatches.push(format!("{name}: only {used} subspaces with good reduction"));
        }
    }
    let ok = mismatches.is_empty() && compared == 24;
    let detail = if ok { format!("{compared} tallies agree") } else { mismatches.join("; ") };
    Ok((ok, detail))
}

pub fn c12(_seed: u64) -> Result<(bool, String)> {
    let d = Q4Divisor::from_i64(2, &[0, 0, 0], &[1, 0], &[0, 0], &[0, 0], &[0, 0])?;
    let flagged = match irreducible(&d)? {
        Irreducibility::Reducible { planes, .. } => {
            planes.len() == 1
                && planes[0].a.is_zero()
                && !planes[0].b.is_zero()
                && planes[0].iso == IsoType::Vertical
                && planes[0].contained
        }
        Irreducibility::Irreducible => false,
    };
    let segre = matches!(irreducible(&Q4Divisor::segre())?, Irreducibility::Irreducible);
    Ok((flagged && segre, format!("x1x4 flags vertical P(0,1): {flagged}, segre irreducible: {segre}")))
}

pub fn c13(seed: u64) -> Result<(bool, String)> {
    let divs = seeded_divisors(5, seed, 15 << 32);
    let (mut pairs, mut in_l, mut pts, mut members, mut smooth) = (0, 0, 0, 0, 0);
    for d in &divs {
        let pd = plane_decomposition(d, 6, seed)?;
        pairs += pd.pairs_checked;
        in_l += pd.pairs_in_l;
        pts += pd.points_checked;
        members += pd.members;
        smooth += pd.smooth_points;
    }
    let ok = pairs > 0 && pts > 0 && in_l == pairs && members == pts && smooth == pts;
    Ok((ok, format!("{in_l}/{pairs} pairs meet inside L, {smooth}/{pts} off-L samples smooth, {members}/{pts} members")))
}
