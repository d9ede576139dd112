//! Problem files: a fan with divisor coefficients, or a polygon whose normal
//! fan is inferred. Rationals are integers or `[num, den]`.

use std::path::Path;

use num::BigInt;
use serde::Deserialize;

use toricsg::fan::normal_fan;
use toricsg::{Cone2, Fan2, LatticeVec, NVec, Rat, RatPoint, RatPolygon, ToricDivisor};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum RawRat {
    Int(i64),
    Frac([i64; 2]),
}

impl RawRat {
    fn to_rat(&self) -> Result<Rat, CliError> {
        match *self {
            RawRat::Int(n) => Ok(Rat::from_integer(BigInt::from(n))),
            RawRat::Frac([_, 0]) => Err(CliError::invalid("zero denominator")),
            RawRat::Frac([a, b]) => Ok(Rat::new(a.into(), b.into())),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawInput {
    fan: Option<Vec<[i64; 2]>>,
    divisor: Option<Vec<RawRat>>,
    polytope: Option<Vec<[RawRat; 2]>>,
    direction: Option<[i64; 2]>,
    lmax: Option<i64>,
    bound: Option<i64>,
    lambda_max: Option<u64>,
    pairs: Option<Vec<[i64; 2]>>,
    sigma: Option<[[i64; 2]; 2]>,
    d_theta: Option<Vec<RawRat>>,
}

#[derive(Debug)]
pub struct Problem {
    pub divisor: ToricDivisor,
    pub direction: Option<NVec>,
    pub lmax: Option<i64>,
    pub bound: Option<i64>,
    pub lambda_max: Option<u64>,
    pub pairs: Vec<(i64, i64)>,
    pub sigma: Option<Cone2<NVec>>,
    pub d_theta: Option<ToricDivisor>,
}

impl Problem {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawInput =
            serde_json::from_str(text).map_err(|e| CliError::invalid(format!("malformed JSON: {e}")))?;
        let rats = |v: &[RawRat]| v.iter().map(RawRat::to_rat).collect::<Result<Vec<_>, _>>();
        let divisor = match (&raw.fan, &raw.divisor, &raw.polytope) {
            (Some(rays), Some(coeffs), None) => {
                let fan = Fan2::new(rays.iter().map(|r| NVec::new(r[0], r[1])).collect())?;
                fan.require_smooth()?;
                ToricDivisor::new(fan, rats(coeffs)?)?
            }
            (None, None, Some(points)) => {
                let pts = points
                    .iter()
                    .map(|[x, y]| Ok(RatPoint::new(x.to_rat()?, y.to_rat()?)))
                    .collect::<Result<Vec<_>, CliError>>()?;
                let poly = RatPolygon::from_points(pts);
                normal_fan(&poly)?;
                ToricDivisor::from_polygon(&poly)?
            }
            _ => {
                return Err(CliError::invalid(
                    "give either `fan` with `divisor`, or `polytope`",
                ))
            }
        };
        if !divisor.is_ample() {
            return Err(toricsg::Error::NotAmple.into());
        }
        let direction = raw.direction.map(|[x, y]| NVec::new(x, y));
        if let Some(v) = direction {
            check_direction(v)?;
        }
        let sigma = match raw.sigma {
            Some([a, b]) => Some(cone(NVec::new(a[0], a[1]), NVec::new(b[0], b[1]))?),
            None => None,
        };
        let d_theta = match &raw.d_theta {
            Some(c) => Some(ToricDivisor::new(divisor.fan().clone(), rats(c)?)?),
            None => None,
        };
        Ok(Problem {
            divisor,
            direction,
            lmax: raw.lmax,
            bound: raw.bound,
            lambda_max: raw.lambda_max,
            pairs: raw.pairs.unwrap_or_default().into_iter().map(|[l, k]| (l, k)).collect(),
            sigma,
            d_theta,
        })
    }
}

/// Orders the generators counterclockwise.
fn cone(a: NVec, b: NVec) -> Result<Cone2<NVec>, CliError> {
    let c = if a.det(b) >= 0 {
        Cone2::spanned(a, b)
    } else {
        Cone2::spanned(b, a)
    };
    Ok(c?)
}

pub fn check_direction(v: NVec) -> Result<NVec, CliError> {
    if v.is_primitive() {
        Ok(v)
    } else {
        Err(toricsg::Error::NonPrimitiveDirection(v).into())
    }
}

/// `"x,y"` from the command line.
pub fn parse_direction(s: &str) -> Result<NVec, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [x, y] = parts.as_slice() else {
        return Err(CliError::invalid(format!("direction `{s}` is not of the form x,y")));
    };
    let num = |t: &str| {
        t.parse::<i64>()
            .map_err(|_| CliError::invalid(format!("direction `{s}` is not of the form x,y")))
    };
    check_direction(NVec::new(num(x)?, num(y)?))
}
