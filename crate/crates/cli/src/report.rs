//! JSON and CSV renderings. Rationals are always `[num, den]`.

use serde_json::{json, Value};

use toricsg::criterion::{lifting_report, FailingCone};
use toricsg::oracle::lift_search;
use toricsg::rat::int;
use toricsg::{
    BadDivisor, Cone2, Decomposition, FgVerdict, FlagContext, LatticeVec, NVec, Rat, RatPoint,
    RatPolygon, SegmentData, ToricDivisor, VerdictSource,
};

use crate::error::CliError;

pub fn rat(q: &Rat) -> Value {
    let part = |n: &num::BigInt| match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    };
    json!([part(q.numer()), part(q.denom())])
}

pub fn point(p: &RatPoint) -> Value {
    json!([rat(&p.x), rat(&p.y)])
}

pub fn polygon(p: &RatPolygon) -> Value {
    Value::Array(p.vertices().iter().map(point).collect())
}

pub fn vec2<V: LatticeVec>(v: V) -> Value {
    json!([v.x(), v.y()])
}

pub fn cone<V: LatticeVec>(c: &Cone2<V>) -> Value {
    match c {
        Cone2::Ray(g) => json!({ "kind": "ray", "generators": [vec2(*g)] }),
        Cone2::Pointed(a, b) => json!({ "kind": "pointed", "generators": [vec2(*a), vec2(*b)] }),
        Cone2::Halfplane { normal } => json!({ "kind": "halfplane", "normal": vec2(*normal) }),
    }
}

fn decomposition(d: &Option<Decomposition<NVec>>) -> Value {
    match d {
        None => Value::Null,
        Some(d) => json!({
            "decomposable": d.decomposable,
            "witness": d.witness.map(|(a, b)| json!([vec2(a), vec2(b)])),
        }),
    }
}

pub fn divisor(d: &ToricDivisor) -> Value {
    json!({
        "rays": d.fan().rays().iter().map(|r| vec2(*r)).collect::<Vec<_>>(),
        "coefficients": d.coeffs().iter().map(rat).collect::<Vec<_>>(),
    })
}

pub fn segment(s: &SegmentData) -> Value {
    json!({
        "level": rat(&s.level),
        "levels": [rat(&s.levels.0), rat(&s.levels.1)],
        "endpoints": [point(&s.v1), point(&s.v2)],
        "q_hat": rat(&s.q_hat),
    })
}

pub fn verdict(v: &FgVerdict) -> Value {
    json!({
        "finitely_generated": v.finitely_generated,
        "source": match v.source {
            VerdictSource::Criterion => "criterion",
            VerdictSource::LiftingFallback => "lifting_fallback",
        },
        "sigma_plus": v.sigma.as_ref().map(|s| cone(&s.0)),
        "sigma_minus": v.sigma.as_ref().map(|s| cone(&s.1)),
        "v_in_sigma_plus": decomposition(&v.plus),
        "minus_v_in_sigma_minus": decomposition(&v.minus),
    })
}

/// Lifting table with the smallest multiple found by direct search.
pub fn lifting(ctx: &FlagContext, lambda_max: u64) -> Result<Value, CliError> {
    let rows = lifting_report(ctx)?
        .into_iter()
        .map(|l| {
            json!({
                "q": rat(&l.q),
                "t": rat(&l.t),
                "lifts": l.lifts,
                "lambda": lift_search(ctx, &l.q, lambda_max),
            })
        })
        .collect();
    Ok(Value::Array(rows))
}

pub fn no_body(ctx: &FlagContext) -> Value {
    let body = ctx.newton_okounkov_body();
    json!({
        "vertices": polygon(&body.polygon),
        "breakpoints": body.breakpoints.iter().map(|(q, t)| json!([rat(q), rat(t)])).collect::<Vec<_>>(),
        "area": rat(&body.polygon.area()),
        "q_hat": rat(ctx.q_hat()),
    })
}

/// `e_bar`, `d` and `d_bar` at the requested `(l, k)`.
pub fn pairs(ctx: &FlagContext, pairs: &[(i64, i64)]) -> Value {
    pairs
        .iter()
        .map(|&(l, k)| {
            let (lr, kr) = (int(l), int(k));
            json!({
                "l": l,
                "k": k,
                "e_bar": ctx.e_bar(l, k),
                "d": ctx.d(&lr, &kr).map(|d| rat(&d)),
                "d_bar": rat(&ctx.d_bar(&lr, &kr)),
            })
        })
        .collect()
}

pub fn analyze(
    ctx: &FlagContext,
    v: &FgVerdict,
    lambda_max: u64,
    smooth: bool,
    requested: &[(i64, i64)],
) -> Result<Value, CliError> {
    Ok(json!({
        "direction": vec2(ctx.v()),
        "m": vec2(ctx.m()),
        "smooth": smooth,
        "divisor": divisor(ctx.divisor()),
        "polytope": polygon(ctx.pd()),
        "c_prime": ctx.flag().cprime,
        "nabla_prime": polygon(ctx.nabla_prime()),
        "segment": segment(&v.segment),
        "q_hat": rat(ctx.q_hat()),
        "no_body": no_body(ctx),
        "verdict": verdict(v),
        "lifting": lifting(ctx, lambda_max)?,
        "pairs": pairs(ctx, requested),
    }))
}

pub fn failing_cone(f: &Option<FailingCone>) -> Value {
    match f {
        None => json!({ "fg_for_all_divisors": true, "failing": null }),
        Some(f) => json!({
            "fg_for_all_divisors": false,
            "failing": {
                "cone": cone(&f.cone),
                "w": vec2(f.w),
                "witness": f.witness.map(|(a, b)| json!([vec2(a), vec2(b)])),
            },
        }),
    }
}

pub fn bad_divisor(b: &BadDivisor) -> Value {
    json!({
        "d_theta": divisor(&b.d_theta),
        "theta": polygon(&b.theta),
        "d_prime": divisor(&b.d_prime),
        "divisor": divisor(&b.divisor),
        "polytope": polygon(&b.divisor.polytope().expect("ample")),
        "verdict": verdict(&b.verdict),
    })
}

/// Rows `l,k,e_bar` for `k <= floor(l q_hat)`, or `l,k,delta` when expanded.
pub fn semigroup_csv(ctx: &FlagContext, lmax: i64, expand: bool) -> String {
    let mut out = String::from(
        "# S = {(l,k,delta) : 0 <= delta <= e_bar(l,k) - 1}\n",
    );
    out.push_str(if expand { "l,k,delta\n" } else { "l,k,e_bar\n" });
    for l in 1..=lmax {
        let slice = ctx.semigroup_slice(l);
        if expand {
            for (l, k, delta) in slice.triples() {
                out.push_str(&format!("{l},{k},{delta}\n"));
            }
        } else {
            for (k, e) in &slice.entries {
                out.push_str(&format!("{l},{k},{e}\n"));
            }
        }
    }
    out
}
