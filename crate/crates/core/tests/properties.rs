use proptest::prelude::*;

use q6::algebra::{int, BinaryForm, Field, Scalar};
use q6::classify::normal::restricted;
use q6::classify::{irreducible, normalize_p2, smoothness, verify_witness, Irreducibility, Smoothness};
use q6::quadspace::{self, bilinear, gram, h0, iso_type, quad_form, v0, IsoType};
use q6::varieties::{wedge_plucker, plucker_relation, Q4Divisor};

const Q: Field = Field::Rational;

fn coeffs(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, n)
}

fn divisor(p: usize) -> impl Strategy<Value = Q4Divisor> {
    (coeffs(p + 1), coeffs(p), coeffs(p), coeffs(p), coeffs(p))
        .prop_filter_map("degenerate divisor", move |(gp, g1, g2, g3, g5)| Q4Divisor::from_i64(p, &gp, &g1, &g2, &g3, &g5).ok())
}

fn coprime(d: &Q4Divisor) -> bool {
    q6::algebra::gcd_forms(d.g1(), d.g2()).map(|g| g.degree() == 0).unwrap_or(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polarization(x in coeffs(8), y in coeffs(8)) {
        let (x, y): (Vec<Scalar>, Vec<Scalar>) = (x.iter().map(|&c| int(c)).collect(), y.iter().map(|&c| int(c)).collect());
        let s: Vec<Scalar> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        prop_assert_eq!(quad_form(&s), &(&quad_form(&x) + &quad_form(&y)) + &bilinear(&x, &y));
    }

    #[test]
    fn p2_normal_form_is_exact(d in divisor(2)) {
        prop_assume!(coprime(&d));
        let nf = normalize_p2(&d).unwrap();
        let g = gram(Q);
        prop_assert_eq!(nf.m.transpose().mul(&g).unwrap().mul(&nf.m).unwrap(), g.scale(&nf.c));
        prop_assert_eq!(restricted(&d.f(), &nf.m).unwrap(), Q4Divisor::segre().f());
    }

    #[test]
    fn pencil_restriction(d in divisor(3), a in -9i64..=9, b in -9i64..=9) {
        prop_assume!(a != 0 || b != 0);
        // restrict_to_pencil verifies u4^(p-1) lambda itself and errors otherwise
        prop_assert!(d.restrict_to_pencil(&int(a), &int(b)).is_ok());
    }

    #[test]
    fn psi_degree_drops_by_common_factor(d in divisor(4)) {
        prop_assume!(!(d.g1().is_zero() && d.g2().is_zero()));
        let g = q6::algebra::gcd_forms(d.g1(), d.g2()).unwrap();
        prop_assert_eq!(d.psi_degree().unwrap(), 3 - g.degree());
    }

    #[test]
    fn isotropic_parity_mod_101(seed in any::<u64>(), vertical in any::<bool>()) {
        let f = Field::prime(101).unwrap();
        let t = if vertical { IsoType::Vertical } else { IsoType::Horizontal };
        let u = quadspace::random_max_isotropic(t, f, seed).unwrap();
        prop_assert!(u.is_isotropic());
        prop_assert_eq!(iso_type(&u).unwrap(), t);
        prop_assert_eq!((u.intersect(&v0(f)).dim() + u.intersect(&h0(f)).dim()) % 2, 1);
    }

    #[test]
    fn secant_lines_satisfy_plucker(s in -20i64..=20, t in -20i64..=20) {
        prop_assume!(s != t);
        prop_assert!(plucker_relation(&wedge_plucker(&int(s), &int(t)).unwrap()).is_zero());
    }

    #[test]
    fn singular_verdicts_carry_valid_witnesses(d in divisor(3)) {
        prop_assume!(d.lambda_gcd().unwrap().degree() == 0);
        if let Smoothness::Singular { witness, .. } = smoothness(&d).unwrap() {
            prop_assert!(verify_witness(&d, &witness).unwrap());
        }
    }

    #[test]
    fn contained_planes_are_vertical(d in divisor(2), a in -3i64..=3, b in -3i64..=3) {
        // force (a:b) to be a common root of the lambda forms by multiplying in (b X - a Y)
        prop_assume!(a != 0 || b != 0);
        let lin = BinaryForm::from_i64(&[b, -a], Q);
        let lift = |f: &BinaryForm| lin.mul(f);
        let Ok(e) = Q4Divisor::new(3, lift(d.gp()), lift(d.g1()), lift(d.g2()), lift(d.g3()), lift(d.g5())) else {
            return Ok(());
        };
        let Irreducibility::Reducible { planes, .. } = irreducible(&e).unwrap() else {
            return Err(TestCaseError::fail("common factor not detected"));
        };
        prop_assert!(planes.iter().all(|p| p.iso == IsoType::Vertical && p.contained));
        prop_assert!(planes.iter().any(|p| (&p.a * &int(b) - &p.b * &int(a)).is_zero()));
    }
}
