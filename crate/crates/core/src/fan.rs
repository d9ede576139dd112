//! Complete fans in `N`, torus-invariant divisors and their polytopes, and the
//! data attached to the flag of a one-parameter subgroup.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::lattice::{orthogonal_character, LatticeVec, MVec, NVec, RatPoint};
use crate::polygon::{Halfplane, RatPolygon};
use crate::rat::{self, Rat};

/// A complete fan given by its rays.
///
/// Rays keep the labels they were given (divisor coefficients are indexed by
/// label), and the fan additionally remembers their counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan2 {
    rays: Vec<NVec>,
    order: Vec<usize>,
}

impl Fan2 {
    pub fn new(rays: Vec<NVec>) -> Result<Self> {
        for (i, r) in rays.iter().enumerate() {
            if !r.is_primitive() {
                return Err(Error::InvalidFan(format!("ray {i} = {r} is not primitive")));
            }
            for (j, s) in rays.iter().enumerate().skip(i + 1) {
                if r.det(*s) == 0 && r.x * s.x + r.y * s.y > 0 {
                    return Err(Error::InvalidFan(format!("rays {i} and {j} coincide")));
                }
            }
        }
        let mut order: Vec<usize> = (0..rays.len()).collect();
        order.sort_by(|&i, &j| angle_cmp(rays[i], rays[j]));
        let fan = Self { rays, order };
        if fan.rays.len() < 3 {
            return Err(Error::InvalidFan("a complete fan needs at least three rays".into()));
        }
        if fan.cyclic_pairs().any(|(a, b)| a.det(b) <= 0) {
            return Err(Error::InvalidFan("rays do not span a complete fan".into()));
        }
        Ok(fan)
    }

    pub fn from_pairs(rays: &[(i64, i64)]) -> Result<Self> {
        Self::new(rays.iter().map(|&(x, y)| NVec::new(x, y)).collect())
    }

    /// Rays in label order.
    pub fn rays(&self) -> &[NVec] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// Labels in counterclockwise order, starting from the ray of smallest angle.
    pub fn cyclic_order(&self) -> &[usize] {
        &self.order
    }

    pub fn cyclic_rays(&self) -> Vec<NVec> {
        self.order.iter().map(|&i| self.rays[i]).collect()
    }

    fn cyclic_pairs(&self) -> impl Iterator<Item = (NVec, NVec)> + '_ {
        let n = self.order.len();
        (0..n).map(move |i| (self.rays[self.order[i]], self.rays[self.order[(i + 1) % n]]))
    }

    /// Adjacent rays form a lattice basis everywhere.
    pub fn is_smooth(&self) -> bool {
        self.cyclic_pairs().all(|(a, b)| a.det(b) == 1)
    }

    pub fn require_smooth(&self) -> Result<()> {
        if self.is_smooth() {
            Ok(())
        } else {
            Err(Error::FanNotSmooth)
        }
    }

    pub fn index_of(&self, ray: NVec) -> Option<usize> {
        self.rays.iter().position(|&r| r == ray)
    }
}

fn angle_cmp(a: NVec, b: NVec) -> Ordering {
    let half = |p: NVec| if p.y > 0 || (p.y == 0 && p.x > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.det(b)))
}

/// Inner normals of the edges of a full-dimensional polygon, counterclockwise.
pub fn normal_fan(p: &RatPolygon) -> Result<Fan2> {
    if p.dim() < 2 {
        return Err(Error::DegeneratePolygon(p.dim()));
    }
    Fan2::new(p.halfplanes().iter().map(|h| h.normal).collect())
}

/// `D = sum a_rho D_rho`, coefficients indexed by ray label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricDivisor {
    fan: Fan2,
    coeffs: Vec<Rat>,
}

impl ToricDivisor {
    pub fn new(fan: Fan2, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != fan.len() {
            return Err(Error::OutOfRange(format!(
                "{} coefficients for {} rays",
                coeffs.len(),
                fan.len()
            )));
        }
        Ok(Self { fan, coeffs })
    }

    pub fn from_ints(fan: Fan2, coeffs: &[i64]) -> Result<Self> {
        Self::new(fan, coeffs.iter().map(|&a| rat::int(a)).collect())
    }

    pub fn zero(fan: Fan2) -> Self {
        let coeffs = vec![rat::zero(); fan.len()];
        Self { fan, coeffs }
    }

    /// The divisor whose polytope is `p`, on the normal fan of `p`.
    pub fn from_polygon(p: &RatPolygon) -> Result<Self> {
        let fan = normal_fan(p)?;
        let coeffs = fan
            .rays()
            .iter()
            .map(|&r| -p.support(r).expect("non-empty"))
            .collect();
        Ok(Self { fan, coeffs })
    }

    pub fn fan(&self) -> &Fan2 {
        &self.fan
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn with_coeff(&self, i: usize, a: Rat) -> Self {
        let mut d = self.clone();
        d.coeffs[i] = a;
        d
    }

    pub fn add(&self, other: &ToricDivisor) -> Self {
        debug_assert_eq!(self.fan, other.fan);
        Self {
            fan: self.fan.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self {
            fan: self.fan.clone(),
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    /// `<u, rho> >= -a_rho` for every ray.
    pub fn halfplanes(&self) -> Vec<Halfplane> {
        self.fan
            .rays()
            .iter()
            .zip(&self.coeffs)
            .map(|(&r, a)| Halfplane::new(r, -a))
            .collect()
    }

    pub fn polytope(&self) -> Result<RatPolygon> {
        RatPolygon::from_halfplanes(&self.halfplanes()).map_err(|_| Error::UnboundedPolytope)
    }

    /// Every ray cuts out an edge of positive length.
    pub fn is_ample(&self) -> bool {
        let Ok(p) = self.polytope() else {
            return false;
        };
        p.dim() == 2
            && self
                .fan
                .rays()
                .iter()
                .zip(&self.coeffs)
                .all(|(&r, a)| p.support(r) == Some(-a) && p.face(r).len() == 2)
    }

    /// Labels of rays whose face on `P_D` is not an edge.
    pub fn degenerate_rays(&self) -> Vec<usize> {
        let p = self.polytope().unwrap_or_else(|_| RatPolygon::empty());
        (0..self.fan.len())
            .filter(|&i| {
                let r = self.fan.rays()[i];
                !(p.support(r).as_ref() == Some(&-&self.coeffs[i]) && p.face(r).len() == 2)
            })
            .collect()
    }
}

/// Data of the curve `C`, the closure of the one-parameter subgroup `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagData {
    pub v: NVec,
    pub m: MVec,
    /// The Newton segment `[0, m]`.
    pub nabla: RatPolygon,
    /// Coefficients of the torus-invariant representative `C'`, by ray label.
    pub cprime: Vec<i64>,
    pub nabla_prime: RatPolygon,
}

impl FlagData {
    pub fn cprime_divisor(&self, fan: &Fan2) -> ToricDivisor {
        ToricDivisor::from_ints(fan.clone(), &self.cprime).expect("one coefficient per ray")
    }
}

pub fn flag_data(fan: &Fan2, v: NVec) -> Result<FlagData> {
    if !v.is_primitive() {
        return Err(Error::NonPrimitiveDirection(v));
    }
    let m = orthogonal_character(v);
    let cprime: Vec<i64> = fan.rays().iter().map(|&r| -(m.pair(r).min(0))).collect();
    let hps: Vec<Halfplane> = fan
        .rays()
        .iter()
        .zip(&cprime)
        .map(|(&r, &c)| Halfplane::new(r, rat::int(-c)))
        .collect();
    let nabla_prime = RatPolygon::from_halfplanes(&hps)?;
    Ok(FlagData {
        v,
        m,
        nabla: RatPolygon::segment_to(m),
        cprime,
        nabla_prime,
    })
}

/// `Delta_max` glued to `nabla_min` along `nabla`.
///
/// At the `v`-maximal vertex of `P_D` the segment `nabla` is slid into the
/// vertex cone until both ends touch its rays; the triangle it cuts off is
/// `Delta_max`, translated so that the cut is `[0, m]`. The same at the
/// `v`-minimal vertex gives `nabla_min`. An extremal edge contributes nothing.
pub fn glued_nef_polytope(pd: &RatPolygon, flag: &FlagData) -> RatPolygon {
    let mut pts = vec![RatPoint::origin(), RatPoint::from(flag.m)];
    for dir in [flag.v, -flag.v] {
        if let Some(apex) = cut_off_apex(pd, dir, flag.m) {
            pts.push(apex);
        }
    }
    RatPolygon::from_points(pts)
}

/// Apex of the triangle cut from the vertex cone at the `dir`-maximal vertex,
/// positioned so that its base is `[0, m]`.
fn cut_off_apex(pd: &RatPolygon, dir: NVec, m: MVec) -> Option<RatPoint> {
    let top = pd.face(-dir);
    if top.len() != 1 {
        return None;
    }
    let w = &top[0];
    let verts = pd.vertices();
    let n = verts.len();
    let i = verts.iter().position(|p| p == w)?;
    let d1: MVec = verts[(i + 1) % n].sub(w).primitive_direction()?;
    let d2: MVec = verts[(i + n - 1) % n].sub(w).primitive_direction()?;
    // alpha*d1 - beta*d2 = s*m with alpha, beta > 0 for exactly one sign s
    let det = d1.det(-d2);
    for s in [1, -1] {
        let target = m * s;
        let alpha = rat::rat(target.det(-d2), det);
        let beta = rat::rat(d1.det(target), det);
        if alpha > rat::zero() && beta > rat::zero() {
            let b1 = RatPoint::from(d1).scale(&alpha);
            // base point b1 (relative to w) goes to 0 when s = -1, to m when s = 1
            let base = if s == 1 {
                RatPoint::from(d2).scale(&beta)
            } else {
                b1
            };
            return Some(base.scale(&rat::int(-1)));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::pt;
    use crate::rat::{int, rat};

    fn example_fan() -> Fan2 {
        Fan2::from_pairs(&[(-1, 0), (0, -1), (1, 2), (0, 1)]).unwrap()
    }

    fn enlarged_fan() -> Fan2 {
        Fan2::from_pairs(&[(-1, 0), (0, -1), (1, 2), (0, 1), (1, 0), (-1, 1)]).unwrap()
    }

    #[test]
    fn fan_validation() {
        assert!(example_fan().is_smooth());
        assert!(Fan2::from_pairs(&[(1, 0), (0, 1)]).is_err());
        assert!(Fan2::from_pairs(&[(1, 0), (0, 1), (1, 1)]).is_err());
        assert!(Fan2::from_pairs(&[(2, 0), (0, 1), (-1, -1)]).is_err());
        let p2 = Fan2::from_pairs(&[(1, 0), (0, 1), (-1, -1)]).unwrap();
        assert!(p2.is_smooth());
        let singular = Fan2::from_pairs(&[(1, 0), (1, 2), (-1, -1)]).unwrap();
        assert!(!singular.is_smooth());
        assert_eq!(singular.require_smooth(), Err(Error::FanNotSmooth));
    }

    #[test]
    fn normal_fans() {
        let sq = RatPolygon::from_points([pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]);
        let mut rays = normal_fan(&sq).unwrap().rays().to_vec();
        rays.sort();
        assert_eq!(
            rays,
            vec![NVec::new(-1, 0), NVec::new(0, -1), NVec::new(0, 1), NVec::new(1, 0)]
        );
        let pd = RatPolygon::from_points([pt(0, 0), pt(-8, 0), pt(-2, -3), pt(0, -3)]);
        let mut rays = normal_fan(&pd).unwrap().rays().to_vec();
        rays.sort();
        let mut expected = example_fan().rays().to_vec();
        expected.sort();
        assert_eq!(rays, expected);
        let seg = RatPolygon::segment_to(MVec::new(1, 1));
        assert_eq!(normal_fan(&seg), Err(Error::DegeneratePolygon(1)));
    }

    #[test]
    fn divisor_polytopes() {
        let d = ToricDivisor::from_ints(example_fan(), &[0, 0, 8, 3]).unwrap();
        assert_eq!(
            d.polytope().unwrap(),
            RatPolygon::from_points([pt(0, 0), pt(-8, 0), pt(-2, -3), pt(0, -3)])
        );
        assert!(d.is_ample());
        let c = ToricDivisor::from_ints(example_fan(), &[0, 0, 7, 2]).unwrap();
        assert_eq!(
            c.polytope().unwrap(),
            RatPolygon::from_points([pt(0, 0), pt(-7, 0), pt(-3, -2), pt(0, -2)])
        );
        let z = ToricDivisor::zero(example_fan());
        assert_eq!(z.polytope().unwrap().vertices(), &[pt(0, 0)]);
        assert!(!z.is_ample());
    }

    #[test]
    fn ampleness_on_the_enlarged_fan() {
        let fan = enlarged_fan();
        let d_prime = ToricDivisor::from_ints(fan, &[0, 0, 13, 6, 5, 6]).unwrap();
        assert!(!d_prime.is_ample());
        assert_eq!(d_prime.degenerate_rays(), vec![5]);
        let d = d_prime.with_coeff(5, rat(11, 2));
        assert!(d.is_ample());
        assert_eq!(
            d.polytope().unwrap(),
            RatPolygon::from_points([
                pt(0, 0),
                pt(-5, 0),
                pt(-5, -4),
                pt(-1, -6),
                RatPoint::new(rat(-1, 2), int(-6)),
                RatPoint::new(int(0), rat(-11, 2)),
            ])
        );
    }

    #[test]
    fn flag_data_examples() {
        let f = flag_data(&example_fan(), NVec::new(-2, 3)).unwrap();
        assert_eq!(f.m, MVec::new(-3, -2));
        assert_eq!(f.cprime, vec![0, 0, 7, 2]);
        assert_eq!(
            f.nabla_prime,
            RatPolygon::from_points([pt(0, 0), pt(-7, 0), pt(-3, -2), pt(0, -2)])
        );

        let f = flag_data(&enlarged_fan(), NVec::new(-2, 3)).unwrap();
        assert_eq!(f.cprime, vec![0, 0, 7, 2, 3, 0]);
        assert_eq!(
            f.nabla_prime,
            RatPolygon::from_points([pt(0, 0), pt(-3, 0), pt(-3, -2), pt(-2, -2)])
        );

        let p1p1 = Fan2::from_pairs(&[(1, 0), (0, 1), (-1, 0), (0, -1)]).unwrap();
        let f = flag_data(&p1p1, NVec::new(1, 0)).unwrap();
        assert_eq!(f.m, MVec::new(0, 1));
        assert_eq!(f.nabla_prime, f.nabla);
        assert_eq!(
            flag_data(&p1p1, NVec::new(2, 0)),
            Err(Error::NonPrimitiveDirection(NVec::new(2, 0)))
        );
    }

    #[test]
    fn gluing_matches_lemma() {
        let d = ToricDivisor::from_ints(example_fan(), &[0, 0, 8, 3]).unwrap();
        let f = flag_data(d.fan(), NVec::new(-2, 3)).unwrap();
        assert_eq!(glued_nef_polytope(&d.polytope().unwrap(), &f), f.nabla_prime);

        let sq = RatPolygon::from_points([pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]);
        let f = flag_data(&normal_fan(&sq).unwrap(), NVec::new(1, 0)).unwrap();
        assert_eq!(glued_nef_polytope(&sq, &f), f.nabla);
    }
}
