//! The valuation semigroup of an ample divisor: the colon polygons
//! `Theta(l, k)`, their projections, the slices `e(l, k)`, the cut
//! construction and the Newton-Okounkov body.

use std::collections::BTreeSet;

use num::{Signed, Zero};

use crate::cones::Cone2;
use crate::error::{Error, Result};
use crate::fan::{flag_data, FlagData, ToricDivisor};
use crate::lattice::{unit_preimage, LatticeVec, MVec, NVec, RatPoint};
use crate::polygon::{Halfplane, RatPolygon};
use crate::rat::{self, Rat};

/// An ample divisor together with the flag of the one-parameter subgroup `v`.
#[derive(Clone, Debug)]
pub struct FlagContext {
    divisor: ToricDivisor,
    flag: FlagData,
    pd: RatPolygon,
    width_p: Rat,
    width_n: Rat,
    q_hat: Rat,
}

impl FlagContext {
    pub fn new(divisor: ToricDivisor, v: NVec) -> Result<Self> {
        let pd = divisor.polytope()?;
        if !divisor.is_ample() {
            return Err(Error::NotAmple);
        }
        let flag = flag_data(divisor.fan(), v)?;
        let width_p = pd.width(v).expect("non-empty");
        let width_n = flag.nabla_prime.width(v).expect("non-empty");
        let q_hat = lp_q_hat(&divisor, &flag);
        Ok(Self {
            divisor,
            flag,
            pd,
            width_p,
            width_n,
            q_hat,
        })
    }

    pub fn divisor(&self) -> &ToricDivisor {
        &self.divisor
    }

    pub fn flag(&self) -> &FlagData {
        &self.flag
    }

    pub fn pd(&self) -> &RatPolygon {
        &self.pd
    }

    pub fn nabla_prime(&self) -> &RatPolygon {
        &self.flag.nabla_prime
    }

    pub fn v(&self) -> NVec {
        self.flag.v
    }

    pub fn m(&self) -> MVec {
        self.flag.m
    }

    pub fn width_p(&self) -> &Rat {
        &self.width_p
    }

    pub fn width_n(&self) -> &Rat {
        &self.width_n
    }

    /// The same divisor with the opposite direction.
    pub fn flipped(&self) -> Self {
        Self::new(self.divisor.clone(), -self.v()).expect("ample and primitive")
    }

    /// `<u, rho> >= -l a_rho + k c'_rho`.
    pub fn theta_halfplanes(&self, l: &Rat, k: &Rat) -> Vec<Halfplane> {
        self.divisor
            .fan()
            .rays()
            .iter()
            .zip(self.divisor.coeffs())
            .zip(&self.flag.cprime)
            .map(|((&r, a), &c)| Halfplane::new(r, -(l * a) + k * rat::int(c)))
            .collect()
    }

    /// `Theta(l, k) = (l P_D : k nabla')`, for rational `l, k >= 0`.
    pub fn theta(&self, l: &Rat, k: &Rat) -> RatPolygon {
        RatPolygon::from_halfplanes(&self.theta_halfplanes(l, k))
            .expect("the fan is complete, so the region is bounded")
    }

    pub fn theta_int(&self, l: i64, k: i64) -> RatPolygon {
        self.theta(&rat::int(l), &rat::int(k))
    }

    /// Number of distinct values `<u, v>` over lattice points of `Theta(l, k)`.
    ///
    /// Walks the integer levels `t` of the projection. The lattice points at
    /// level `t` are `t u* + s m`, and each halfplane bounds `s`.
    pub fn e_bar(&self, l: i64, k: i64) -> u64 {
        let (l, k) = (rat::int(l), rat::int(k));
        let theta = self.theta(&l, &k);
        let Some((lo, hi)) = theta.project_interval(self.v()) else {
            return 0;
        };
        let hps = self.theta_halfplanes(&l, &k);
        let ustar = unit_preimage(self.v());
        let m = self.m();
        let mut count = 0;
        let mut t = rat::ceil(&lo);
        let top = rat::floor(&hi);
        while t <= top {
            if fiber_has_lattice_point(&hps, &Rat::from_integer(t.clone()), ustar, m) {
                count += 1;
            }
            t += 1;
        }
        count
    }

    /// `d(l, k) = l wid(P_D) - k wid(nabla')`, the degree on the curve.
    pub fn d_bar(&self, l: &Rat, k: &Rat) -> Rat {
        l * &self.width_p - k * &self.width_n
    }

    /// `d(l, k)`, the `v`-width of `Theta(l, k)`; `None` when it is empty.
    pub fn d(&self, l: &Rat, k: &Rat) -> Option<Rat> {
        self.theta(l, k).width(self.v())
    }

    pub fn d_of_q(&self, q: &Rat) -> Option<Rat> {
        self.d(&rat::one(), q)
    }

    /// `Xi(l, k) = (l proj(P_D) : k proj(nabla'))`, an interval or `None`.
    pub fn xi_interval(&self, l: &Rat, k: &Rat) -> Option<(Rat, Rat)> {
        let (pa, pb) = self.pd.project_interval(self.v())?;
        let (na, nb) = self.flag.nabla_prime.project_interval(self.v())?;
        let lo = l * pa - k * na;
        let hi = l * pb - k * nb;
        (lo <= hi).then_some((lo, hi))
    }

    /// Largest `q` with `Theta(1, q)` non-empty.
    pub fn q_hat(&self) -> &Rat {
        &self.q_hat
    }

    pub fn semigroup_slice(&self, l: i64) -> SemigroupSlice {
        let kmax = rat::to_i64(&rat::floor(&(&self.q_hat * rat::int(l)))).unwrap_or(0);
        let entries = (0..=kmax)
            .map(|k| (k as u64, self.e_bar(l, k)))
            .filter(|&(_, e)| e > 0)
            .collect();
        SemigroupSlice {
            level: l as u64,
            entries,
        }
    }

    /// Cuts `l P_D` along the levels of the `v`-extremal vertices of `Theta`.
    pub fn cut_construction(&self, l: &Rat, k: &Rat) -> Result<CutPieces> {
        let theta = self.theta(l, k);
        if theta.is_empty() {
            return Err(Error::EmptyTheta);
        }
        let v = self.v();
        let v_minus = theta.face(v)[0].clone();
        let v_plus = theta.face(-v)[0].clone();
        let (lo, hi) = (v_minus.pair(v), v_plus.pair(v));
        let lp = self.pd.dilate(l);
        let above = Halfplane::new(v, hi.clone());
        let below = Halfplane::new(-v, -lo);
        let box_max = lp.intersect(&above);
        let box_min = lp.intersect(&below);
        let p_cut = lp.intersect(&above.flip()).intersect(&below.flip());
        let k_nabla = self.flag.nabla.dilate(k);
        let identity_holds = theta.minkowski_sum(&k_nabla) == p_cut;
        Ok(CutPieces {
            box_max,
            p_cut,
            box_min,
            v_plus,
            v_minus,
            identity_holds,
            k_nabla,
        })
    }

    /// `v`-extremal vertices of `Theta(l, k)` and its tangent cones there.
    pub fn theta_extremal(&self, l: &Rat, k: &Rat) -> Result<Extremal> {
        let theta = self.theta(l, k);
        if theta.is_empty() {
            return Err(Error::EmptyTheta);
        }
        let v = self.v();
        let v_minus = theta.face(v)[0].clone();
        let v_plus = theta.face(-v)[0].clone();
        Ok(Extremal {
            min_value: v_minus.pair(v),
            max_value: v_plus.pair(v),
            cone_minus: tangent_cone(&theta, v),
            cone_plus: tangent_cone(&theta, -v),
            v_minus,
            v_plus,
        })
    }

    /// The Newton-Okounkov body in `(q, t)` coordinates.
    ///
    /// `d(q)` is piecewise linear and only bends where three constraint lines
    /// of `Theta(1, q)` become concurrent; those values of `q` are solved for
    /// exactly and `d` is evaluated there.
    pub fn newton_okounkov_body(&self) -> NoBody {
        let rays = self.divisor.fan().rays();
        let a = self.divisor.coeffs();
        let c = &self.flag.cprime;
        let n = rays.len();
        let mut qs: BTreeSet<Rat> = BTreeSet::new();
        qs.insert(rat::zero());
        qs.insert(self.q_hat.clone());
        for i in 0..n {
            for j in i + 1..n {
                let det = rays[i].det(rays[j]);
                if det == 0 {
                    continue;
                }
                // u(q) = u0 + q u1 solves <u, rho_i> = -a_i + q c_i, same for j
                let u0 = solve2(rays[i], rays[j], &-&a[i], &-&a[j]);
                let u1 = solve2(rays[i], rays[j], &rat::int(c[i]), &rat::int(c[j]));
                for kk in 0..n {
                    if kk == i || kk == j {
                        continue;
                    }
                    // <u0 + q u1, rho_k> = -a_k + q c_k
                    let alpha = u0.pair(rays[kk]) + &a[kk];
                    let beta = u1.pair(rays[kk]) - rat::int(c[kk]);
                    if beta.is_zero() {
                        continue;
                    }
                    let q = -alpha / beta;
                    if q.is_positive() && q < self.q_hat {
                        qs.insert(q);
                    }
                }
            }
        }
        let graph: Vec<(Rat, Rat)> = qs
            .into_iter()
            .map(|q| {
                let d = self.d_of_q(&q).expect("Theta(1, q) is non-empty on [0, q_hat]");
                (q, d)
            })
            .collect();
        let mut pts: Vec<RatPoint> = graph.iter().map(|(q, d)| RatPoint::new(q.clone(), d.clone())).collect();
        pts.push(RatPoint::origin());
        pts.push(RatPoint::new(self.q_hat.clone(), rat::zero()));
        let polygon = RatPolygon::from_points(pts);
        let mut breakpoints: Vec<(Rat, Rat)> = polygon
            .vertices()
            .iter()
            .filter(|p| graph.iter().any(|(q, d)| q == &p.x && d == &p.y))
            .map(|p| (p.x.clone(), p.y.clone()))
            .collect();
        breakpoints.sort();
        NoBody {
            polygon,
            breakpoints,
        }
    }
}

impl Halfplane {
    /// The closed complement side `<u, n> <= offset`.
    pub fn flip(&self) -> Halfplane {
        Halfplane::new(-self.normal, -&self.offset)
    }
}

fn fiber_has_lattice_point(hps: &[Halfplane], t: &Rat, ustar: MVec, m: MVec) -> bool {
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for h in hps {
        let a = t * rat::int(ustar.pair(h.normal));
        let b = m.pair(h.normal);
        // a + s b >= offset
        let rest = &h.offset - a;
        match b.signum() {
            0 => {
                if rest.is_positive() {
                    return false;
                }
            }
            1 => {
                let s = Rat::from_integer(rat::ceil(&(rest / rat::int(b))));
                lo = Some(lo.map_or(s.clone(), |x| rat::max(&x, &s)));
            }
            _ => {
                let s = Rat::from_integer(rat::floor(&(rest / rat::int(b))));
                hi = Some(hi.map_or(s.clone(), |x| rat::min(&x, &s)));
            }
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => l <= h,
        _ => true,
    }
}

/// The point `u` with `<u, r1> = o1` and `<u, r2> = o2`.
fn solve2(r1: NVec, r2: NVec, o1: &Rat, o2: &Rat) -> RatPoint {
    let det = rat::int(r1.det(r2));
    let x = (o1 * rat::int(r2.y) - o2 * rat::int(r1.y)) / &det;
    let y = (o2 * rat::int(r1.x) - o1 * rat::int(r2.x)) / &det;
    RatPoint::new(x, y)
}

/// Maximizes `q` over `{(u, q) : <u, rho> - q c'_rho >= -a_rho, q >= 0}` by
/// enumerating the vertices of this polytope in `(x, y, q)`.
fn lp_q_hat(divisor: &ToricDivisor, flag: &FlagData) -> Rat {
    let mut rows: Vec<([Rat; 3], Rat)> = divisor
        .fan()
        .rays()
        .iter()
        .zip(divisor.coeffs())
        .zip(&flag.cprime)
        .map(|((&r, a), &c)| ([rat::int(r.x), rat::int(r.y), rat::int(-c)], -a.clone()))
        .collect();
    rows.push(([rat::zero(), rat::zero(), rat::one()], rat::zero()));
    let feasible = |p: &[Rat; 3]| {
        rows.iter()
            .all(|(a, b)| &a[0] * &p[0] + &a[1] * &p[1] + &a[2] * &p[2] >= *b)
    };
    let n = rows.len();
    let mut best: Option<Rat> = None;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let Some(p) = solve3([&rows[i], &rows[j], &rows[k]]) else {
                    continue;
                };
                if feasible(&p) && best.as_ref().is_none_or(|b| p[2] > *b) {
                    best = Some(p[2].clone());
                }
            }
        }
    }
    best.expect("q = 0 is feasible and the region is bounded")
}

fn solve3(rows: [&([Rat; 3], Rat); 3]) -> Option<[Rat; 3]> {
    let det3 = |m: [[&Rat; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let a = |r: usize, c: usize| &rows[r].0[c];
    let d = det3([
        [a(0, 0), a(0, 1), a(0, 2)],
        [a(1, 0), a(1, 1), a(1, 2)],
        [a(2, 0), a(2, 1), a(2, 2)],
    ]);
    if d.is_zero() {
        return None;
    }
    let b = |r: usize| &rows[r].1;
    let col = |c: usize| {
        let pick = |r: usize, cc: usize| if cc == c { b(r) } else { a(r, cc) };
        det3([
            [pick(0, 0), pick(0, 1), pick(0, 2)],
            [pick(1, 0), pick(1, 1), pick(1, 2)],
            [pick(2, 0), pick(2, 1), pick(2, 2)],
        ]) / &d
    };
    Some([col(0), col(1), col(2)])
}

/// Tangent cone of `theta` at its face minimizing `<., dir>`; `None` if
/// `theta` is a single point.
fn tangent_cone(theta: &RatPolygon, dir: NVec) -> Option<Cone2<MVec>> {
    let face = theta.face(dir);
    match (theta.dim(), face.len()) {
        (0, _) => None,
        (_, 2) => Some(Cone2::halfplane(dir)),
        (1, _) => {
            let w = &face[0];
            let other = theta.vertices().iter().find(|p| *p != w)?;
            Some(Cone2::ray(other.sub(w).primitive_direction()?))
        }
        _ => {
            let w = &face[0];
            let verts = theta.vertices();
            let n = verts.len();
            let i = verts.iter().position(|p| p == w)?;
            let next: MVec = verts[(i + 1) % n].sub(w).primitive_direction()?;
            let prev: MVec = verts[(i + n - 1) % n].sub(w).primitive_direction()?;
            Cone2::spanned(next, prev).ok()
        }
    }
}

/// The layer of the semigroup at level `l`: the triples `(l, k, delta)`
/// with `0 <= delta < e(l, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupSlice {
    pub level: u64,
    /// `(k, e(l, k))` for every `k` with `e > 0`.
    pub entries: Vec<(u64, u64)>,
}

impl SemigroupSlice {
    pub fn e_bar(&self, k: u64) -> u64 {
        self.entries
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or(0, |(_, e)| *e)
    }

    pub fn triples(&self) -> impl Iterator<Item = (u64, u64, u64)> + '_ {
        self.entries
            .iter()
            .flat_map(move |&(k, e)| (0..e).map(move |d| (self.level, k, d)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutPieces {
    pub v_plus: RatPoint,
    pub v_minus: RatPoint,
    /// The cut segments are `v+' + k nabla` and `v-' + k nabla`.
    pub k_nabla: RatPolygon,
    /// `l P_D` above the level of `v+'`.
    pub box_max: RatPolygon,
    /// The band between the two cut levels.
    pub p_cut: RatPolygon,
    /// `l P_D` below the level of `v-'`.
    pub box_min: RatPolygon,
    /// `Theta + k nabla == p_cut`.
    pub identity_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremal {
    pub v_minus: RatPoint,
    pub v_plus: RatPoint,
    pub min_value: Rat,
    pub max_value: Rat,
    /// Tangent cones at the extremal faces. A halfplane means the face is an
    /// edge orthogonal to `v`; `None` means `Theta` is a point.
    pub cone_minus: Option<Cone2<MVec>>,
    pub cone_plus: Option<Cone2<MVec>>,
}

/// The Newton-Okounkov body `conv{(q, t) : 0 <= t <= d(q)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoBody {
    pub polygon: RatPolygon,
    /// Vertices `(q, d(q))` on the graph of `d`, by increasing `q`.
    pub breakpoints: Vec<(Rat, Rat)>,
}
