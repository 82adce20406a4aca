//! JSON input and output.

pub mod input;
pub mod output;

pub use input::{parse_divisor, parse_pair, parse_spec, parse_subspace, VarietySpec};

pub const SCHEMA_VERSION: u32 = 1;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersect::Threefold;
    use crate::quadspace;
    use crate::varieties::Q4Divisor;

    #[test]
    fn divisor_round_trip() {
        let d = Q4Divisor::from_i64(2, &[3, -1, 2], &[2, 1], &[1, -4], &[5, -2], &[-3, 7]).unwrap();
        let text = output::versioned(output::divisor(&d)).to_string();
        let Threefold::Divisor(back) = parse_spec(&text).unwrap() else { panic!() };
        assert_eq!(back, d);
    }

    #[test]
    fn rational_strings() {
        let d = parse_divisor(r#"{"p":1,"gp":["1/2","-3"],"g1":["2/4"],"g2":[0],"g3":["0"],"g5":["0"]}"#).unwrap();
        assert_eq!(d.gp().coeffs()[0].to_canonical(), "1/2");
        assert_eq!(d.g1().coeffs()[0].to_canonical(), "1/2");
    }

    #[test]
    fn subspace_round_trip() {
        let h = quadspace::h0(crate::algebra::Field::Rational);
        let text = output::versioned(output::subspace(&h)).to_string();
        assert_eq!(parse_subspace(&text).unwrap(), h);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_spec("builtin:nope").unwrap_err().code(), "unknown_builtin");
        assert_eq!(parse_spec("{\"p\":1}").unwrap_err().code(), "parse");
        let wrong = r#"{"p":2,"gp":[1,0],"g1":[1,0],"g2":[0,1],"g3":[0,0],"g5":[0,0]}"#;
        assert_eq!(parse_spec(wrong).unwrap_err().code(), "dimension");
        let off = r#"{"space":"P3","coords":["u0","u0","0","0","0","0","0","u1"]}"#;
        assert_eq!(parse_spec(off).unwrap_err().code(), "not_on_variety");
        assert_eq!(parse_spec(r#"{"schema_version":2,"builtin":"segre"}"#).unwrap_err().code(), "invalid_input");
    }

    #[test]
    fn param_spec() {
        let t = parse_spec(r#"{"space":"P3","coords":["u0","u1","u2","0","u3","0","0","0"]}"#).unwrap();
        assert!(matches!(t, Threefold::Param(_)));
    }
}
