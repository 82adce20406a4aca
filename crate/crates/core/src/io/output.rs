//! JSON payloads for every result type. Rationals are written as `"n/d"` strings.

use serde_json::{json, Map, Value};

use super::SCHEMA_VERSION;
use crate::algebra::{BinaryForm, Matrix, Scalar, UniPoly};
use crate::classify::smooth::PlaneCert;
use crate::classify::{
    Classification, Irreducibility, NormalForm, PlaneDecomposition, SingularWitness, Smoothness,
};
use crate::intersect::brute::BruteCount;
use crate::intersect::{Bidegree, IntersectionPoint, IntersectionReport, TrialCounts};
use crate::quadspace::{LinearSubspace, ProjPoint};
use crate::varieties::{PlaneFamily, Q4Divisor};

pub fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_canonical())
}

pub fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn form(f: &BinaryForm) -> Value {
    scalars(f.coeffs())
}

/// Coefficients in ascending order.
pub fn uni(p: &UniPoly) -> Value {
    scalars(p.coeffs())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(m.row_vectors().iter().map(|r| scalars(r)).collect())
}

pub fn point(p: &ProjPoint) -> Value {
    scalars(p.coords())
}

pub fn subspace(s: &LinearSubspace) -> Value {
    json!({ "dim": s.dim(), "rows": matrix(s.basis()) })
}

pub fn divisor(d: &Q4Divisor) -> Value {
    json!({
        "p": d.p(),
        "gp": form(d.gp()),
        "g1": form(d.g1()),
        "g2": form(d.g2()),
        "g3": form(d.g3()),
        "g5": form(d.g5()),
    })
}

/// Adds `schema_version` to a top-level object.
pub fn versioned(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut out = Map::new();
            out.insert("schema_version".into(), json!(SCHEMA_VERSION));
            out.extend(m);
            Value::Object(out)
        }
        other => json!({ "schema_version": SCHEMA_VERSION, "result": other }),
    }
}

fn intersection_point(p: &IntersectionPoint) -> Value {
    let mut v = json!({
        "modulus": uni(&p.modulus),
        "count": p.count(),
        "multiplicity": p.multiplicity,
        "transversal": p.transversal,
    });
    if let Some(r) = p.rational() {
        v["point"] = point(&r);
        v["params"] = scalars(&p.rational_params().unwrap_or_default());
    } else {
        v["coords"] = Value::Array(p.coords.iter().map(uni).collect());
        v["params"] = Value::Array(p.params.iter().map(uni).collect());
    }
    v
}

pub fn report(r: &IntersectionReport) -> Value {
    json!({
        "finite": r.is_finite(),
        "nonfinite": r.nonfinite,
        "total": r.total,
        "distinct": r.distinct(),
        "all_transversal": r.all_transversal(),
        "points": r.points.iter().map(intersection_point).collect::<Vec<_>>(),
        "eliminant": r.eliminant.as_ref().map(form),
        "eliminant_coords": r.eliminant_coords.as_ref().map(matrix),
        "method": r.method,
    })
}

pub fn trials(t: &TrialCounts) -> Value {
    json!({ "counts": t.counts, "modal": t.modal, "non_modal": t.non_modal, "resamples": t.resamples })
}

pub fn bidegree(b: &Bidegree) -> Value {
    json!({ "a": b.a, "b": b.b, "vertical": trials(&b.vertical), "horizontal": trials(&b.horizontal) })
}

pub fn classification(c: &Classification) -> Value {
    let e = &c.evidence;
    json!({
        "case": c.case,
        "evidence": {
            "span": subspace(&e.span),
            "span_rank": e.span_rank,
            "bidegree": [e.bidegree.0, e.bidegree.1],
            "iso_type": e.iso,
            "vertex": e.vertex.as_ref().map(point),
            "ann_isotropic_line": e.ann_isotropic_line,
            "note": e.note,
        },
    })
}

fn plane_cert(p: &PlaneCert) -> Value {
    json!({
        "modulus": uni(&p.modulus),
        "a": uni(&p.a),
        "b": uni(&p.b),
        "basis": p.basis.iter().map(|v| Value::Array(v.iter().map(uni).collect())).collect::<Vec<_>>(),
    })
}

pub fn witness(w: &SingularWitness) -> Value {
    json!({ "point": point(&w.point), "planes": [plane_cert(&w.planes[0]), plane_cert(&w.planes[1])] })
}

pub fn normal_form(n: &NormalForm) -> Value {
    json!({ "m": matrix(&n.m), "c": scalar(&n.c), "transformed": divisor(&n.transformed) })
}

pub fn smoothness(s: &Smoothness) -> Value {
    match s {
        Smoothness::Smooth(n) => json!({ "verdict": "Smooth", "normal_form": normal_form(n) }),
        Smoothness::Singular { reason, witness: w } => {
            json!({ "verdict": "Singular", "reason": reason, "witness": witness(w) })
        }
        Smoothness::DoubleCone { witness } => {
            json!({ "verdict": "Singular", "reason": "DoubleCone", "witness": { "point": point(witness) } })
        }
    }
}

pub fn irreducibility(i: &Irreducibility) -> Value {
    match i {
        Irreducibility::Irreducible => json!({ "irreducible": true }),
        Irreducibility::Reducible { common, planes, roots, residual } => json!({
            "irreducible": false,
            "common_factor": form(common),
            "roots": roots,
            "planes": planes.iter().map(|c| json!({
                "at": [scalar(&c.a), scalar(&c.b)],
                "plane": subspace(&c.plane),
                "iso_type": c.iso,
                "contained": c.contained,
            })).collect::<Vec<_>>(),
            "residual": residual.as_ref().map(divisor),
        }),
    }
}

pub fn plane_family(p: &PlaneFamily) -> Value {
    json!({
        "at": [scalar(&p.a), scalar(&p.b)],
        "pencil": subspace(&p.pencil),
        "lambda": scalars(&p.lambda),
        "whole": p.whole,
        "plane": subspace(&p.plane),
    })
}

pub fn decomposition(d: &PlaneDecomposition) -> Value {
    json!({
        "planes": d.planes.iter().map(plane_family).collect::<Vec<_>>(),
        "pairs_checked": d.pairs_checked,
        "pairs_in_l": d.pairs_in_l,
        "points_checked": d.points_checked,
        "members": d.members,
        "smooth_points": d.smooth_points,
    })
}

pub fn brute(b: &BruteCount) -> Value {
    json!({ "q": b.q, "ext": b.ext, "points": b.points, "enumerated": b.enumerated })
}

/// Two-column text rendering of a JSON object; nested values stay compact JSON.
pub fn table(v: &Value) -> String {
    let Value::Object(m) = v else { return format!("{v}\n") };
    let width = m.keys().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for (k, val) in m {
        let shown = match val {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.push_str(&format!("{k:<width$}  {shown}\n"));
    }
    out
}
