use q6::algebra::{Field, Scalar};
use q6::intersect::brute::{brute_count, expected_count, DEFAULT_BUDGET};
use q6::intersect::{bidegree, degree, meet_linear_exact, span_of, Threefold};
use q6::quadspace::{self, random_max_isotropic, IsoType, LinearSubspace};
use q6::varieties::{builtin, Q4Divisor};

const Q: Field = Field::Rational;

fn param(name: &str) -> Threefold {
    Threefold::Param(builtin(name).unwrap())
}

fn coordinate_space(idx: &[usize]) -> LinearSubspace {
    LinearSubspace::coordinate(idx, Q)
}

#[test]
fn reference_bidegrees() {
    for (name, ab) in [("horizontal3", (1, 0)), ("vertical3", (0, 1)), ("veronese_cone", (1, 3)), ("segre", (1, 2)), ("quadric5", (1, 1))] {
        let b = bidegree(&param(name), 5, 11).unwrap();
        assert_eq!((b.a, b.b), ab, "{name}");
        assert!(b.vertical.non_modal.is_empty() && b.horizontal.non_modal.is_empty(), "{name}");
    }
}

#[test]
fn reference_degrees() {
    for (name, d) in [("horizontal3", 1), ("veronese_cone", 4), ("segre", 3), ("quadric5", 2)] {
        assert_eq!(degree(&param(name), 3, 5).unwrap().modal, d, "{name}");
    }
    assert_eq!(degree(&Threefold::Divisor(Q4Divisor::segre()), 3, 5).unwrap().modal, 3);
}

#[test]
fn cone_meets_coordinate_space_once() {
    // {x1 = x3 = x5 = x7 = 0} is spanned by e2, e4, e6, e8
    let w = coordinate_space(&[1, 3, 5, 7]);
    let r = meet_linear_exact(&param("veronese_cone"), &w, 1).unwrap();
    assert_eq!(r.total, 1);
    let p = &r.points[0];
    let u: Vec<Scalar> = p.rational_params().unwrap();
    assert!(u[1].is_zero() && u[2].is_zero() && u[3].is_zero() && !u[0].is_zero());
    assert!(p.transversal);
}

#[test]
fn random_divisors_have_expected_counts() {
    for p in 1..=4 {
        let mut rng = quadspace::rng_for(100 + p as u64, 0);
        let d = Threefold::Divisor(Q4Divisor::random(p, &mut rng));
        let b = bidegree(&d, 3, 7).unwrap();
        assert_eq!((b.a, b.b), (1, p));
        assert_eq!(degree(&d, 3, 7).unwrap().modal, p + 1);
    }
}

#[test]
fn positive_dimensional_meets_are_reported() {
    // H0 itself contains horizontal3
    let r = meet_linear_exact(&param("horizontal3"), &quadspace::h0(Q), 0).unwrap();
    assert!(r.nonfinite.is_some());
    // a vertical space through the vertex of the cone
    let w = coordinate_space(&[0, 1, 2, 3]);
    assert!(meet_linear_exact(&param("veronese_cone"), &w, 0).is_err());
}

#[test]
fn spans() {
    assert_eq!(span_of(&param("horizontal3"), 1).unwrap().dim(), 4);
    assert_eq!(span_of(&param("quadric5"), 1).unwrap().dim(), 5);
    assert_eq!(span_of(&param("segre"), 1).unwrap().dim(), 6);
    assert_eq!(span_of(&param("veronese_cone"), 1).unwrap().dim(), 7);
}

#[test]
fn brute_force_agrees_on_a_horizontal_plane() {
    let mut compared = 0;
    for name in ["segre", "veronese_cone"] {
        let x = param(name);
        let h = random_max_isotropic(IsoType::Horizontal, Q, 21).unwrap();
        let r = meet_linear_exact(&x, &h, 0).unwrap();
        for q in [7u64, 11] {
            for ext in [1, 2] {
                let Ok(exp) = expected_count(&r, q, ext) else { continue };
                let got = brute_count(&x, &h, q, ext, DEFAULT_BUDGET).unwrap();
                assert_eq!(got.points, exp, "{name} q={q} ext={ext}");
                compared += 1;
            }
        }
    }
    assert!(compared >= 4);
}
