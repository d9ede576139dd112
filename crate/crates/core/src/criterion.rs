//! Deciding finite generation: the longest cross-section orthogonal to `v`,
//! the cones `sigma+` and `sigma-` read off next to it, the lifting test for
//! vertices of the Newton-Okounkov body, the criterion over all divisors of a
//! fan, and a construction of a divisor that breaks it.

use num::Signed;

use crate::cones::{exists_pairing_one, is_strongly_decomposable, Cone2, Decomposition};
use crate::error::{Error, Result};
use crate::fan::{flag_data, Fan2, ToricDivisor};
use crate::lattice::{unit_preimage, LatticeVec, MVec, NVec, RatPoint};
use crate::par::{self, Execution};
use crate::polygon::RatPolygon;
use crate::rat::{self, Rat};
use crate::semigroup::FlagContext;

/// The longest segment `P_D ∩ [v = c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentData {
    pub v: NVec,
    /// Chosen level: the midpoint of the maximizing levels.
    pub level: Rat,
    /// All levels where the maximal length is attained.
    pub levels: (Rat, Rat),
    /// Endpoints with `v2 - v1 = q_hat * m`.
    pub v1: RatPoint,
    pub v2: RatPoint,
    pub q_hat: Rat,
    /// Inner normals of the edges leaving `v1` and `v2` upwards (`<., v>` > c).
    /// `None` when the segment lies on the top edge.
    pub normals_above: Option<(NVec, NVec)>,
    /// The same below the segment.
    pub normals_below: Option<(NVec, NVec)>,
}

impl SegmentData {
    pub fn segment(&self) -> RatPolygon {
        RatPolygon::from_points([self.v1.clone(), self.v2.clone()])
    }
}

/// Range of `s` with `c u* + s m` in `pd`.
fn chord(pd: &RatPolygon, ustar: MVec, m: MVec, c: &Rat) -> Option<(Rat, Rat)> {
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for h in pd.halfplanes() {
        let rest = &h.offset - c * rat::int(ustar.pair(h.normal));
        let b = m.pair(h.normal);
        match b.signum() {
            0 => {
                if rest.is_positive() {
                    return None;
                }
            }
            1 => {
                let s = rest / rat::int(b);
                lo = Some(lo.map_or(s.clone(), |x| rat::max(&x, &s)));
            }
            _ => {
                let s = rest / rat::int(b);
                hi = Some(hi.map_or(s.clone(), |x| rat::min(&x, &s)));
            }
        }
    }
    let (lo, hi) = (lo?, hi?);
    (lo <= hi).then_some((lo, hi))
}

pub fn max_segment(pd: &RatPolygon, v: NVec) -> Result<SegmentData> {
    if pd.dim() < 2 {
        return Err(Error::DegeneratePolygon(pd.dim()));
    }
    if !v.is_primitive() {
        return Err(Error::NonPrimitiveDirection(v));
    }
    let ustar = unit_preimage(v);
    let m = v.perp();
    let mut levels: Vec<Rat> = pd.vertices().iter().map(|p| p.pair(v)).collect();
    levels.sort();
    levels.dedup();
    let lengths: Vec<Rat> = levels
        .iter()
        .map(|c| {
            let (lo, hi) = chord(pd, ustar, m, c).expect("vertex levels meet the polygon");
            hi - lo
        })
        .collect();
    let best = lengths.iter().max().expect("non-empty").clone();
    let first = lengths.iter().position(|l| *l == best).expect("max exists");
    let last = lengths.iter().rposition(|l| *l == best).expect("max exists");
    let (c1, c2) = (levels[first].clone(), levels[last].clone());
    let level = (&c1 + &c2) / rat::int(2);
    let (slo, shi) = chord(pd, ustar, m, &level).expect("level inside");
    let point = |s: &Rat| {
        RatPoint::from(ustar)
            .scale(&level)
            .add(&RatPoint::from(m).scale(s))
    };
    let (v1, v2) = (point(&slo), point(&shi));
    let bottom = &levels[0];
    let top = levels.last().expect("non-empty");
    let normals_above = (level < *top).then(|| {
        (
            edge_normal_towards(pd, &v1, v, &level, true),
            edge_normal_towards(pd, &v2, v, &level, true),
        )
    });
    let normals_below = (level > *bottom).then(|| {
        (
            edge_normal_towards(pd, &v1, v, &level, false),
            edge_normal_towards(pd, &v2, v, &level, false),
        )
    });
    Ok(SegmentData {
        v,
        level,
        levels: (c1, c2),
        v1,
        v2,
        q_hat: best,
        normals_above,
        normals_below,
    })
}

/// Normal of the edge through boundary point `p` that continues above (or
/// below) the level `c`.
fn edge_normal_towards(pd: &RatPolygon, p: &RatPoint, v: NVec, c: &Rat, above: bool) -> NVec {
    pd.halfplanes()
        .iter()
        .filter(|h| h.is_tight(p))
        .find(|h| {
            let face = pd.face(h.normal);
            face.iter().any(|q| {
                let t = q.pair(v);
                if above {
                    t > *c
                } else {
                    t < *c
                }
            })
        })
        .map(|h| h.normal)
        .expect("a non-extreme boundary point has edges on both sides")
}

/// `(sigma+, sigma-)`: `sigma+` is spanned by the normals below the segment
/// and contains `v`, `sigma-` by those above and contains `-v`. Antiparallel
/// normals give the halfplane on the side of `v` (resp. `-v`).
pub fn sigma_cones(seg: &SegmentData) -> Result<(Cone2<NVec>, Cone2<NVec>)> {
    let (Some(above), Some(below)) = (seg.normals_above, seg.normals_below) else {
        return Err(Error::DegenerateSide);
    };
    Ok((cone_of(below, seg.v), cone_of(above, -seg.v)))
}

fn cone_of((a, b): (NVec, NVec), side: NVec) -> Cone2<NVec> {
    if a.det(b) == 0 && a != b {
        let h = a.perp();
        let h = if h.pair(side) >= 0 { h } else { -h };
        return Cone2::halfplane(h);
    }
    Cone2::spanned(a, b).expect("not antiparallel")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictSource {
    /// Decomposability of `v` in `sigma+` and `-v` in `sigma-`.
    Criterion,
    /// The segment lies on an extreme level, so one of the cones is missing;
    /// decided by lifting every vertex of the Newton-Okounkov body.
    LiftingFallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLift {
    pub q: Rat,
    pub t: Rat,
    pub lifts: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgVerdict {
    pub finitely_generated: bool,
    pub source: VerdictSource,
    pub segment: SegmentData,
    /// `(sigma+, sigma-)` when both exist.
    pub sigma: Option<(Cone2<NVec>, Cone2<NVec>)>,
    /// `v` in `sigma+`.
    pub plus: Option<Decomposition<NVec>>,
    /// `-v` in `sigma-`.
    pub minus: Option<Decomposition<NVec>>,
    /// Per vertex of the Newton-Okounkov body; empty when not computed.
    pub lifting: Vec<VertexLift>,
}

/// The decomposability criterion alone, from the polytope.
pub fn criterion_verdict(pd: &RatPolygon, v: NVec) -> Result<FgVerdict> {
    let segment = max_segment(pd, v)?;
    let (sp, sm) = sigma_cones(&segment)?;
    let plus = is_strongly_decomposable(v, &sp)?;
    let minus = is_strongly_decomposable(-v, &sm)?;
    Ok(FgVerdict {
        finitely_generated: !plus.decomposable && !minus.decomposable,
        source: VerdictSource::Criterion,
        segment,
        sigma: Some((sp, sm)),
        plus: Some(plus),
        minus: Some(minus),
        lifting: Vec::new(),
    })
}

/// Full verdict with the lifting table attached. When the longest segment sits
/// on an extreme level the lifting table decides.
pub fn is_finitely_generated(ctx: &FlagContext) -> Result<FgVerdict> {
    let lifting = lifting_report(ctx)?;
    match criterion_verdict(ctx.pd(), ctx.v()) {
        Ok(mut verdict) => {
            verdict.lifting = lifting;
            Ok(verdict)
        }
        Err(Error::DegenerateSide) => Ok(FgVerdict {
            finitely_generated: lifting.iter().all(|l| l.lifts),
            source: VerdictSource::LiftingFallback,
            segment: max_segment(ctx.pd(), ctx.v())?,
            sigma: None,
            plus: None,
            minus: None,
            lifting,
        }),
        Err(e) => Err(e),
    }
}

/// Lifting test for every vertex of the Newton-Okounkov body. Vertices on the
/// `q`-axis always lift: some multiple of `Theta(1, q)` has a lattice point.
pub fn lifting_report(ctx: &FlagContext) -> Result<Vec<VertexLift>> {
    let body = ctx.newton_okounkov_body();
    body.polygon
        .vertices()
        .iter()
        .map(|p| {
            let lifts = if p.y.is_positive() {
                vertex_lifts(ctx, &p.x)?
            } else {
                true
            };
            Ok(VertexLift {
                q: p.x.clone(),
                t: p.y.clone(),
                lifts,
            })
        })
        .collect()
}

/// Whether `(1, q, d(q))` is a valuation point: some lattice point of the
/// tangent cone at the `v`-minimal vertex of `Theta(1, q)` pairs to 1 with `v`,
/// and at the maximal one to -1. Halfplane tangent cones pass automatically.
pub fn vertex_lifts(ctx: &FlagContext, q: &Rat) -> Result<bool> {
    let ext = ctx.theta_extremal(&rat::one(), q)?;
    if ext.min_value == ext.max_value {
        return Ok(true);
    }
    let v = ctx.v();
    let ok = |c: &Option<Cone2<MVec>>, w: NVec| c.as_ref().is_none_or(|c| exists_pairing_one(c, w));
    Ok(ok(&ext.cone_minus, v) && ok(&ext.cone_plus, -v))
}

/// A cone spanned by rays of the fan in which `w` (`v` or `-v`) splits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailingCone {
    pub cone: Cone2<NVec>,
    pub w: NVec,
    pub witness: Option<(NVec, NVec)>,
}

/// Cones spanned by pairs of rays: pointed ones, and both halfplanes bounded
/// by an antiparallel pair. Ordered by ray labels.
pub fn ray_pair_cones(fan: &Fan2) -> Vec<Cone2<NVec>> {
    let rays = fan.rays();
    let mut out = Vec::new();
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            let (a, b) = (rays[i], rays[j]);
            if a.det(b) != 0 {
                out.push(Cone2::spanned(a, b).expect("independent"));
            } else {
                let h = a.perp();
                out.push(Cone2::halfplane(h));
                out.push(Cone2::halfplane(-h));
            }
        }
    }
    out
}

/// Whether every ample divisor on the fan gives a finitely generated
/// semigroup: neither `v` nor `-v` may split in any cone spanned by rays.
/// Returns the first failing cone otherwise.
pub fn fg_for_all_divisors(fan: &Fan2, v: NVec) -> Result<Option<FailingCone>> {
    if !v.is_primitive() {
        return Err(Error::NonPrimitiveDirection(v));
    }
    for cone in ray_pair_cones(fan) {
        for w in [v, -v] {
            if cone.contains_interior(w) {
                let d = is_strongly_decomposable(w, &cone)?;
                if d.decomposable {
                    return Ok(Some(FailingCone {
                        cone,
                        w,
                        witness: d.witness,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// An ample divisor whose semigroup is not finitely generated, with the
/// intermediate divisors of the construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadDivisor {
    pub d_theta: ToricDivisor,
    pub theta: RatPolygon,
    pub d_prime: ToricDivisor,
    pub divisor: ToricDivisor,
    pub verdict: FgVerdict,
}

/// Largest extra amount added to the interior coefficients of `D_Theta`.
const MAX_RELAXATION: i64 = 64;

pub fn construct_bad_divisor(fan: &Fan2, sigma: &Cone2<NVec>, v: NVec) -> Result<BadDivisor> {
    construct_bad_divisor_with(fan, sigma, v, None)
}

/// The construction with an optional prescribed `D_Theta`.
///
/// 1. `D_Theta`: ample on the rays outside `int(sigma)`; rays inside get the
///    smallest integer coefficients keeping the tangent cone at the
///    `v`-minimal vertex equal to `sigma^vee`.
/// 2. `D' = C' + D_Theta`.
/// 3. Coefficients of rays inside `sigma` are lowered in steps of 1/2, 1/4, ...
///    until `D` is ample, never below the bound that keeps `Theta + nabla'`
///    inside `P_D`.
///
/// When `D_Theta` is tight on the rays inside `sigma`, `P_D'` equals
/// `Theta + nabla'` and step 3 has no room. Without a prescribed `D_Theta`
/// those coefficients are therefore raised by 0, 1, 2, ... until step 3
/// succeeds.
pub fn construct_bad_divisor_with(
    fan: &Fan2,
    sigma: &Cone2<NVec>,
    v: NVec,
    d_theta: Option<&ToricDivisor>,
) -> Result<BadDivisor> {
    let Cone2::Pointed(g1, g2) = *sigma else {
        return Err(Error::ConstructionFailed(
            "only pointed cones are supported".into(),
        ));
    };
    if fan.index_of(g1).is_none() || fan.index_of(g2).is_none() {
        return Err(Error::ConstructionFailed(
            "cone generators must be rays of the fan".into(),
        ));
    }
    if !is_strongly_decomposable(v, sigma)?.decomposable {
        return Err(Error::ConstructionFailed(
            "v is not strongly decomposable in the cone".into(),
        ));
    }
    let flag = flag_data(fan, v)?;
    let interior: Vec<usize> = (0..fan.len())
        .filter(|&i| sigma.contains_interior(fan.rays()[i]))
        .collect();
    let base = match d_theta {
        Some(d) => d.clone(),
        None => default_d_theta(fan, sigma, v, &interior)?,
    };
    let cprime = flag.cprime_divisor(fan);
    // prescribed coefficients are used as given
    let relaxations = if d_theta.is_some() { 0 } else { MAX_RELAXATION };
    let mut last = String::new();
    for extra in 0..=relaxations {
        let mut dt = base.clone();
        for &i in &interior {
            dt = dt.with_coeff(i, base.coeff(i) + rat::int(extra));
        }
        let theta = dt.polytope()?;
        if !has_dual_tangent_cone(&theta, sigma, v) {
            return Err(Error::ConstructionFailed(
                "D_Theta does not have tangent cone sigma^vee at its v-minimal vertex".into(),
            ));
        }
        let d_prime = cprime.add(&dt);
        let Some(divisor) = lower_to_ample(&d_prime, &interior, &theta, &flag.nabla_prime) else {
            last = format!("no ample lowering found up to relaxation {extra}");
            continue;
        };
        let ctx = FlagContext::new(divisor.clone(), v)?;
        if ctx.pd().colon(&flag.nabla_prime) != theta {
            last = "colon polygon differs from Theta".into();
            continue;
        }
        let verdict = is_finitely_generated(&ctx)?;
        if verdict.finitely_generated {
            last = "result is finitely generated".into();
            continue;
        }
        return Ok(BadDivisor {
            d_theta: dt,
            theta,
            d_prime,
            divisor,
            verdict,
        });
    }
    Err(Error::ConstructionFailed(last))
}

fn has_dual_tangent_cone(theta: &RatPolygon, sigma: &Cone2<NVec>, v: NVec) -> bool {
    let face = theta.face(v);
    if face.len() != 1 || theta.dim() < 2 {
        return false;
    }
    let w = &face[0];
    let verts = theta.vertices();
    let n = verts.len();
    let i = verts.iter().position(|p| p == w).expect("vertex");
    let a: Option<MVec> = verts[(i + 1) % n].sub(w).primitive_direction();
    let b: Option<MVec> = verts[(i + n - 1) % n].sub(w).primitive_direction();
    match (a, b) {
        (Some(a), Some(b)) => Cone2::spanned(a, b).ok() == Some(sigma.dual()),
        _ => false,
    }
}

fn default_d_theta(
    fan: &Fan2,
    sigma: &Cone2<NVec>,
    v: NVec,
    interior: &[usize],
) -> Result<ToricDivisor> {
    let rays = fan.rays();
    let outer: Vec<usize> = (0..fan.len()).filter(|i| !interior.contains(i)).collect();
    let mut b: Vec<Rat> = vec![rat::one(); fan.len()];
    let coarse = |b: &[Rat]| {
        let rs: Vec<NVec> = outer.iter().map(|&i| rays[i]).collect();
        let cs: Vec<Rat> = outer.iter().map(|&i| b[i].clone()).collect();
        ToricDivisor::new(Fan2::new(rs).expect("coarsening stays complete"), cs)
            .expect("matching lengths")
    };
    // cut each degenerate ray halfway to the next vertex level
    for &i in &outer {
        let p = coarse(&b).polytope()?;
        let r = rays[i];
        let face = p.face(r);
        if face.len() == 2 && p.support(r) == Some(-&b[i]) {
            continue;
        }
        let s = p.support(r).expect("non-empty");
        let next = p
            .vertices()
            .iter()
            .map(|q| q.pair(r))
            .filter(|t| *t > s)
            .min()
            .expect("two-dimensional");
        b[i] = -((&s + next) / rat::int(2));
    }
    let den = rat::common_denominator(outer.iter().map(|&i| &b[i]));
    let den = Rat::from_integer(den);
    for &i in &outer {
        b[i] = &b[i] * &den;
    }
    let outer_poly = coarse(&b).polytope()?;
    // rays inside sigma: smallest integer coefficient keeping the picture
    for &i in interior {
        let r = rays[i];
        let top = -outer_poly.support(r).expect("non-empty");
        let mut chosen = None;
        let mut k = 1i64;
        while Rat::from_integer(k.into()) <= &top + rat::one() {
            b[i] = rat::int(k);
            let trial = divisor_on(fan, &b, &outer, interior, i);
            let theta = trial.polytope()?;
            let edges_kept = outer
                .iter()
                .all(|&j| theta.face(rays[j]).len() == 2 && theta.support(rays[j]) == Some(-&b[j]));
            if edges_kept && has_dual_tangent_cone(&theta, sigma, v) {
                chosen = Some(k);
                break;
            }
            k += 1;
        }
        match chosen {
            Some(k) => b[i] = rat::int(k),
            None => {
                return Err(Error::ConstructionFailed(format!(
                    "no coefficient found for ray {i}"
                )))
            }
        }
    }
    ToricDivisor::new(fan.clone(), b)
}

/// Divisor using outer rays and the interior rays up to and including `upto`.
fn divisor_on(fan: &Fan2, b: &[Rat], outer: &[usize], interior: &[usize], upto: usize) -> ToricDivisor {
    let mut keep: Vec<usize> = outer.to_vec();
    keep.extend(interior.iter().copied().filter(|&i| i <= upto));
    keep.sort();
    let rays: Vec<NVec> = keep.iter().map(|&i| fan.rays()[i]).collect();
    let cs: Vec<Rat> = keep.iter().map(|&i| b[i].clone()).collect();
    ToricDivisor::new(Fan2::new(rays).expect("contains the complete coarsening"), cs)
        .expect("matching lengths")
}

fn lower_to_ample(
    d_prime: &ToricDivisor,
    interior: &[usize],
    theta: &RatPolygon,
    nabla_prime: &RatPolygon,
) -> Option<ToricDivisor> {
    let rays = d_prime.fan().rays().to_vec();
    let floor_of = |i: usize| -> Rat {
        -(theta.support(rays[i]).expect("non-empty") + nabla_prime.support(rays[i]).expect("non-empty"))
    };
    let mut d = d_prime.clone();
    for &i in interior {
        // earlier cuts can leave this halfplane slack
        let tight = -d.polytope().ok()?.support(rays[i]).expect("non-empty");
        d = d.with_coeff(i, tight);
        let degenerate = d.degenerate_rays();
        if !degenerate.contains(&i) {
            continue;
        }
        let room = d.coeff(i) - floor_of(i);
        if !room.is_positive() {
            continue;
        }
        let mut step = rat::min(&rat::rat(1, 2), &(room / rat::int(2)));
        for _ in 0..12 {
            let trial = d.with_coeff(i, d.coeff(i) - &step);
            let now = trial.degenerate_rays();
            if !now.contains(&i) && now.iter().all(|j| degenerate.contains(j)) {
                d = trial;
                break;
            }
            step /= rat::int(2);
        }
    }
    d.is_ample().then_some(d)
}

/// Primitive `v` with `max(|x|, |y|) <= bound`, one of each pair `±v`.
pub fn primitive_directions(bound: i64) -> Vec<NVec> {
    let mut out = Vec::new();
    for x in 0..=bound {
        for y in -bound..=bound {
            let v = NVec::new(x, y);
            if (x > 0 || y > 0) && v.is_primitive() {
                out.push(v);
            }
        }
    }
    out
}

/// Verdicts for every direction up to `bound`, in the order of
/// [`primitive_directions`].
pub fn scan_directions(
    divisor: &ToricDivisor,
    bound: i64,
    exec: Execution,
) -> Result<Vec<(NVec, Result<FgVerdict>)>> {
    if bound < 1 {
        return Err(Error::OutOfRange("scan bound must be at least 1".into()));
    }
    let pd = divisor.polytope()?;
    let dirs = primitive_directions(bound);
    let verdicts = par::map(&dirs, exec, |&v| match criterion_verdict(&pd, v) {
        Err(Error::DegenerateSide) => {
            FlagContext::new(divisor.clone(), v).and_then(|ctx| is_finitely_generated(&ctx))
        }
        other => other,
    });
    Ok(dirs.into_iter().zip(verdicts).collect())
}
