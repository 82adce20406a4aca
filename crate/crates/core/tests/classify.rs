use q6::algebra::{BinaryForm, Field};
use q6::classify::{classify_main, irreducible, plane_decomposition, psi_double_point, smoothness, Irreducibility, MainCase, Smoothness};
use q6::intersect::{bidegree, Threefold};
use q6::quadspace::{self, ProjPoint};
use q6::varieties::Q4Divisor;

const Q: Field = Field::Rational;

/// Multiplies every coefficient form by `x4`, adding the plane `P(0,1)`.
fn with_plane(d: &Q4Divisor) -> Q4Divisor {
    let x = BinaryForm::x(Q);
    let m = |f: &BinaryForm| x.mul(f);
    Q4Divisor::new(d.p() + 1, m(d.gp()), m(d.g1()), m(d.g2()), m(d.g3()), m(d.g5())).unwrap()
}

#[test]
fn residual_has_one_fewer_horizontal_point() {
    let mut rng = quadspace::rng_for(3, 0);
    for p in [1, 2, 3] {
        let d = Q4Divisor::random(p, &mut rng);
        let Irreducibility::Reducible { residual, planes, .. } = irreducible(&with_plane(&d)).unwrap() else { panic!() };
        assert!(planes.iter().any(|c| c.a.is_zero()));
        let r = residual.unwrap();
        assert_eq!(r.p(), p);
        assert_eq!(r.lambda_forms(), d.lambda_forms());
        assert_eq!(bidegree(&Threefold::Divisor(r), 3, 5).unwrap().b, p);
    }
}

#[test]
fn p1_divisors_are_rank_deficient() {
    // a hyperplane section of Q4: every plane passes through psi = (-1:1:0:...:0)
    let d = Q4Divisor::from_i64(1, &[1, 2], &[1], &[1], &[3], &[-1]).unwrap();
    let Smoothness::Singular { witness, .. } = smoothness(&d).unwrap() else { panic!() };
    assert_eq!(witness.point, ProjPoint::from_i64(&[-1, 1, 0, 0, 0, 0, 0, 0], Q));
    let pd = plane_decomposition(&d, 5, 2).unwrap();
    assert_eq!(pd.pairs_in_l, pd.pairs_checked);
    for fam in &pd.planes {
        assert_eq!(fam.plane.intersect(&quadspace::line_l(Q)).dim(), 1);
    }
}

#[test]
fn psi_double_point_uses_first_candidate() {
    // x1 x4^2 + x2 x6^2: psi(1:0) = (0:1), which has no partner; (0:1) neither;
    // (1:1) pairs with (1:-1)
    let d = Q4Divisor::from_i64(3, &[0, 0, 0, 0], &[1, 0, 0], &[0, 0, 1], &[0, 0, 0], &[0, 0, 0]).unwrap();
    let (w, first) = psi_double_point(&d).unwrap();
    assert_eq!(first, (1, 1));
    assert!(w.planes[1].is_rational());
}

#[test]
fn random_p3_divisor_is_a_weil_divisor() {
    let mut rng = quadspace::rng_for(8, 0);
    let d = Threefold::Divisor(Q4Divisor::random(3, &mut rng));
    let c = classify_main(&d, 3, 4).unwrap();
    assert_eq!(c.case, MainCase::Q4WeilDivisor);
    assert_eq!(c.evidence.ann_isotropic_line, Some(true));
}
