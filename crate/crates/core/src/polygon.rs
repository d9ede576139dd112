//! Exact rational convex polygons in `M_R`.
//!
//! A [`RatPolygon`] carries both a vertex list and a halfplane list describing
//! the same set. Vertices are counterclockwise, starting at the
//! lexicographically smallest one, so structural equality is set equality.
//! Points, segments and the empty set are ordinary values.

use num::{BigInt, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{LatticeVec, MVec, NVec, RatPoint};
use crate::rat::{self, Rat};

/// The closed halfplane `<u, normal> >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Halfplane {
    pub normal: NVec,
    pub offset: Rat,
}

impl Halfplane {
    pub fn new(normal: NVec, offset: Rat) -> Self {
        Self { normal, offset }
    }

    /// Rescales to a primitive normal.
    pub fn normalized(&self) -> Self {
        let g = self.normal.content();
        if g <= 1 {
            return self.clone();
        }
        Self::new(
            NVec::new(self.normal.x / g, self.normal.y / g),
            &self.offset / rat::int(g),
        )
    }

    pub fn contains(&self, p: &RatPoint) -> bool {
        p.pair(self.normal) >= self.offset
    }

    pub fn is_tight(&self, p: &RatPoint) -> bool {
        p.pair(self.normal) == self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPolygon {
    vertices: Vec<RatPoint>,
    halfplanes: Vec<Halfplane>,
}

impl RatPolygon {
    pub fn empty() -> Self {
        Self {
            vertices: Vec::new(),
            halfplanes: Vec::new(),
        }
    }

    pub fn point(p: RatPoint) -> Self {
        Self::from_points([p])
    }

    /// The segment `[0, m]`.
    pub fn segment_to(m: MVec) -> Self {
        Self::from_points([RatPoint::origin(), m.into()])
    }

    /// Convex hull of the given points.
    pub fn from_points(points: impl IntoIterator<Item = RatPoint>) -> Self {
        let vertices = convex_hull(points.into_iter().collect());
        let halfplanes = halfplanes_of(&vertices);
        Self {
            vertices,
            halfplanes,
        }
    }

    /// Intersection of halfplanes. Infeasible systems give the empty polygon.
    pub fn from_halfplanes(hps: &[Halfplane]) -> Result<Self> {
        if hps.is_empty() {
            return Err(Error::UnboundedRegion);
        }
        let hps: Vec<Halfplane> = hps.iter().map(Halfplane::normalized).collect();
        for h in &hps {
            if h.normal.is_zero() && h.offset.is_positive() {
                return Ok(Self::empty());
            }
        }
        let hps: Vec<Halfplane> = hps.into_iter().filter(|h| !h.normal.is_zero()).collect();
        if hps.is_empty() {
            return Err(Error::UnboundedRegion);
        }
        if !is_feasible(&hps) {
            return Ok(Self::empty());
        }
        if has_recession_direction(&hps) {
            return Err(Error::UnboundedRegion);
        }
        let mut points = Vec::new();
        for (i, a) in hps.iter().enumerate() {
            for b in &hps[i + 1..] {
                if let Some(p) = line_intersection(a, b) {
                    if hps.iter().all(|h| h.contains(&p)) {
                        points.push(p);
                    }
                }
            }
        }
        Ok(Self::from_points(points))
    }

    pub fn vertices(&self) -> &[RatPoint] {
        &self.vertices
    }

    pub fn halfplanes(&self) -> &[Halfplane] {
        &self.halfplanes
    }

    /// -1 for empty, 0 point, 1 segment, 2 full-dimensional.
    pub fn dim(&self) -> i8 {
        match self.vertices.len() {
            0 => -1,
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, p: &RatPoint) -> bool {
        !self.is_empty() && self.halfplanes.iter().all(|h| h.contains(p))
    }

    pub fn contains_polygon(&self, other: &RatPolygon) -> bool {
        other.vertices.iter().all(|p| self.contains(p))
    }

    /// `lambda * P`.
    pub fn dilate(&self, lambda: &Rat) -> Self {
        Self::from_points(self.vertices.iter().map(|p| p.scale(lambda)))
    }

    pub fn translate(&self, t: &RatPoint) -> Self {
        Self::from_points(self.vertices.iter().map(|p| p.add(t)))
    }

    /// Adds one more halfplane.
    pub fn intersect(&self, h: &Halfplane) -> Self {
        if self.is_empty() {
            return Self::empty();
        }
        let mut hps = self.halfplanes.clone();
        hps.push(h.clone());
        Self::from_halfplanes(&hps).expect("subset of a bounded polygon is bounded")
    }

    /// `min_{u in P} <u, n>`, `None` for the empty polygon.
    pub fn support(&self, n: NVec) -> Option<Rat> {
        self.vertices.iter().map(|p| p.pair(n)).min()
    }

    /// The vertices where `<., n>` is minimal: one for a vertex face, two for an edge.
    pub fn face(&self, n: NVec) -> Vec<RatPoint> {
        let Some(s) = self.support(n) else {
            return Vec::new();
        };
        self.vertices
            .iter()
            .filter(|p| p.pair(n) == s)
            .cloned()
            .collect()
    }

    /// `[min <P, v>, max <P, v>]`, the image of `P` under the pairing with `v`.
    pub fn project_interval(&self, v: NVec) -> Option<(Rat, Rat)> {
        let lo = self.vertices.iter().map(|p| p.pair(v)).min()?;
        let hi = self.vertices.iter().map(|p| p.pair(v)).max()?;
        Some((lo, hi))
    }

    /// Lattice width along `v`; `None` stands for `-inf` (empty polygon).
    pub fn width(&self, v: NVec) -> Option<Rat> {
        self.project_interval(v).map(|(lo, hi)| hi - lo)
    }

    /// `{u : u + Q ⊆ P}`, computed by raising each offset of `P` by the
    /// support of `Q`. `Q` must be non-empty.
    pub fn colon(&self, q: &RatPolygon) -> RatPolygon {
        assert!(!q.is_empty(), "colon by the empty polygon is unbounded");
        if self.is_empty() {
            return Self::empty();
        }
        let hps: Vec<Halfplane> = self
            .halfplanes
            .iter()
            .map(|h| {
                let s = q.support(h.normal).expect("non-empty");
                Halfplane::new(h.normal, &h.offset - s)
            })
            .collect();
        Self::from_halfplanes(&hps).expect("colon of a bounded polygon is bounded")
    }

    /// Minkowski sum by merging the edge sequences of both polygons.
    pub fn minkowski_sum(&self, q: &RatPolygon) -> RatPolygon {
        if self.is_empty() || q.is_empty() {
            return Self::empty();
        }
        let (sp, ep) = edge_walk(&self.vertices);
        let (sq, eq) = edge_walk(&q.vertices);
        let mut cur = sp.add(&sq);
        let mut points = vec![cur.clone()];
        let (mut i, mut j) = (0, 0);
        while i < ep.len() || j < eq.len() {
            let take_p = if i == ep.len() {
                false
            } else if j == eq.len() {
                true
            } else {
                angle_le(&ep[i], &eq[j])
            };
            let e = if take_p {
                i += 1;
                &ep[i - 1]
            } else {
                j += 1;
                &eq[j - 1]
            };
            cur = cur.add(e);
            points.push(cur.clone());
        }
        Self::from_points(points)
    }

    /// All integer points, lexicographically sorted. Scans integer columns
    /// and intersects each with the halfplanes exactly.
    pub fn lattice_points(&self) -> Vec<MVec> {
        let mut out = Vec::new();
        let Some((xlo, xhi)) = self.x_range() else {
            return out;
        };
        let (ylo_box, yhi_box) = self.y_range().expect("non-empty");
        let mut x = rat::ceil(&xlo);
        let xmax = rat::floor(&xhi);
        while x <= xmax {
            let xr = Rat::from_integer(x.clone());
            if let Some((lo, hi)) = self.column_bounds(&xr, &ylo_box, &yhi_box) {
                let xi = rat::to_i64(&x).expect("coordinate fits in i64");
                let mut y = lo;
                while y <= hi {
                    out.push(MVec::new(xi, rat::to_i64(&y).expect("coordinate fits in i64")));
                    y += 1;
                }
            }
            x += 1;
        }
        out
    }

    fn column_bounds(&self, x: &Rat, ylo_box: &Rat, yhi_box: &Rat) -> Option<(BigInt, BigInt)> {
        let mut lo = rat::ceil(ylo_box);
        let mut hi = rat::floor(yhi_box);
        for h in &self.halfplanes {
            let a = rat::int(h.normal.x);
            let rest = &h.offset - a * x;
            match h.normal.y.signum() {
                0 => {
                    if rest.is_positive() {
                        return None;
                    }
                }
                1 => {
                    let b = rat::int(h.normal.y);
                    lo = lo.max(rat::ceil(&(rest / b)));
                }
                _ => {
                    let b = rat::int(h.normal.y);
                    hi = hi.min(rat::floor(&(rest / b)));
                }
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    fn x_range(&self) -> Option<(Rat, Rat)> {
        let lo = self.vertices.iter().map(|p| p.x.clone()).min()?;
        let hi = self.vertices.iter().map(|p| p.x.clone()).max()?;
        Some((lo, hi))
    }

    fn y_range(&self) -> Option<(Rat, Rat)> {
        let lo = self.vertices.iter().map(|p| p.y.clone()).min()?;
        let hi = self.vertices.iter().map(|p| p.y.clone()).max()?;
        Some((lo, hi))
    }

    /// Euclidean area.
    pub fn area(&self) -> Rat {
        let n = self.vertices.len();
        if n < 3 {
            return rat::zero();
        }
        let twice: Rat = (0..n)
            .map(|i| self.vertices[i].cross(&self.vertices[(i + 1) % n]))
            .sum();
        twice / rat::int(2)
    }

    /// Counterclockwise edges `(start, end)` of a full-dimensional polygon.
    pub fn edges(&self) -> Vec<(RatPoint, RatPoint)> {
        let n = self.vertices.len();
        if n < 3 {
            return Vec::new();
        }
        (0..n)
            .map(|i| (self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()))
            .collect()
    }

    /// Inner primitive normal of the edge between two consecutive vertices.
    pub fn edge_normal(start: &RatPoint, end: &RatPoint) -> NVec {
        let d: MVec = end
            .sub(start)
            .primitive_direction()
            .expect("edge has positive length");
        NVec::new(-d.y, d.x)
    }

    /// Lattice length of the face in direction `n` (0 for a vertex face).
    pub fn face_lattice_length(&self, n: NVec) -> Rat {
        let f = self.face(n);
        if f.len() < 2 {
            return rat::zero();
        }
        lattice_length(&f[0], &f[1])
    }
}

/// Lattice length of the segment `[a, b]`.
pub fn lattice_length(a: &RatPoint, b: &RatPoint) -> Rat {
    let d = b.sub(a);
    match d.primitive_direction::<MVec>() {
        None => rat::zero(),
        Some(p) => {
            if p.x != 0 {
                d.x / rat::int(p.x)
            } else {
                d.y / rat::int(p.y)
            }
        }
    }
}

/// Andrew's monotone chain; returns CCW vertices starting at the lexicographic
/// minimum, with collinear points dropped.
fn convex_hull(mut pts: Vec<RatPoint>) -> Vec<RatPoint> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let turn = |o: &RatPoint, a: &RatPoint, b: &RatPoint| a.sub(o).cross(&b.sub(o));
    let mut lower: Vec<RatPoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RatPoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn halfplanes_of(vertices: &[RatPoint]) -> Vec<Halfplane> {
    match vertices.len() {
        0 => Vec::new(),
        1 => {
            let p = &vertices[0];
            [(1, 0), (-1, 0), (0, 1), (0, -1)]
                .into_iter()
                .map(|(x, y)| {
                    let n = NVec::new(x, y);
                    Halfplane::new(n, p.pair(n))
                })
                .collect()
        }
        2 => {
            let (a, b) = (&vertices[0], &vertices[1]);
            let d: MVec = b.sub(a).primitive_direction().expect("distinct points");
            let along = NVec::new(d.x, d.y);
            let across = NVec::new(-d.y, d.x);
            vec![
                Halfplane::new(across, a.pair(across)),
                Halfplane::new(-across, a.pair(-across)),
                Halfplane::new(along, a.pair(along)),
                Halfplane::new(-along, b.pair(-along)),
            ]
        }
        n => (0..n)
            .map(|i| {
                let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
                let normal = RatPolygon::edge_normal(a, b);
                Halfplane::new(normal, a.pair(normal))
            })
            .collect(),
    }
}

fn line_intersection(a: &Halfplane, b: &Halfplane) -> Option<RatPoint> {
    let det = a.normal.det(b.normal);
    if det == 0 {
        return None;
    }
    let det = rat::int(det);
    let (a1, a2) = (rat::int(a.normal.x), rat::int(a.normal.y));
    let (b1, b2) = (rat::int(b.normal.x), rat::int(b.normal.y));
    let x = (&a.offset * &b2 - &b.offset * &a2) / &det;
    let y = (&a1 * &b.offset - &b1 * &a.offset) / &det;
    Some(RatPoint::new(x, y))
}

/// Exact Fourier-Motzkin feasibility test in two variables.
fn is_feasible(hps: &[Halfplane]) -> bool {
    // each x-constraint is (alpha, beta) meaning alpha * x >= beta
    let mut xcons: Vec<(Rat, Rat)> = Vec::new();
    let mut lowers = Vec::new();
    let mut uppers = Vec::new();
    for h in hps {
        let a = rat::int(h.normal.x);
        match h.normal.y.signum() {
            0 => xcons.push((a, h.offset.clone())),
            1 => lowers.push(h),
            _ => uppers.push(h),
        }
    }
    // lower: y >= (c_l - a_l x) / b_l, upper: y <= (c_u - a_u x) / b_u
    for l in &lowers {
        for u in &uppers {
            let (bl, bu) = (rat::int(l.normal.y), rat::int(u.normal.y));
            let (al, au) = (rat::int(l.normal.x), rat::int(u.normal.x));
            // (c_u - a_u x)/b_u - (c_l - a_l x)/b_l >= 0
            let alpha = &al / &bl - &au / &bu;
            let beta = &l.offset / &bl - &u.offset / &bu;
            xcons.push((alpha, beta));
        }
    }
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for (alpha, beta) in xcons {
        if alpha.is_zero() {
            if beta.is_positive() {
                return false;
            }
        } else if alpha.is_positive() {
            let b = beta / alpha;
            lo = Some(lo.map_or(b.clone(), |x| rat::max(&x, &b)));
        } else {
            let b = beta / alpha;
            hi = Some(hi.map_or(b.clone(), |x| rat::min(&x, &b)));
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => l <= h,
        _ => true,
    }
}

/// True when some nonzero `d` has `<d, n> >= 0` for every normal.
fn has_recession_direction(hps: &[Halfplane]) -> bool {
    hps.iter().any(|h| {
        let d = h.normal.perp();
        [d, -d]
            .into_iter()
            .any(|d| hps.iter().all(|g| d.pair(g.normal) >= 0))
    })
}

/// Start vertex (lowest, then leftmost) and CCW edge vectors.
fn edge_walk(vertices: &[RatPoint]) -> (RatPoint, Vec<RatPoint>) {
    let n = vertices.len();
    let start = (0..n)
        .min_by(|&i, &j| {
            (&vertices[i].y, &vertices[i].x).cmp(&(&vertices[j].y, &vertices[j].x))
        })
        .expect("non-empty");
    let edges = if n == 1 {
        Vec::new()
    } else {
        (0..n)
            .map(|k| {
                let a = &vertices[(start + k) % n];
                let b = &vertices[(start + k + 1) % n];
                b.sub(a)
            })
            .collect()
    };
    (vertices[start].clone(), edges)
}

/// Polar angle order on `[0, 2pi)`.
fn angle_le(a: &RatPoint, b: &RatPoint) -> bool {
    let half = |p: &RatPoint| {
        if p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()) {
            0
        } else {
            1
        }
    };
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha < hb;
    }
    !a.cross(b).is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::pt;
    use crate::rat::{int, rat};

    fn hp(x: i64, y: i64, c: Rat) -> Halfplane {
        Halfplane::new(NVec::new(x, y), c)
    }

    fn unit_square() -> RatPolygon {
        RatPolygon::from_points([pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)])
    }

    fn example_pd() -> RatPolygon {
        RatPolygon::from_points([pt(0, 0), pt(-8, 0), pt(-2, -3), pt(0, -3)])
    }

    fn example_nabla_prime() -> RatPolygon {
        RatPolygon::from_points([pt(0, 0), pt(-7, 0), pt(-3, -2), pt(0, -2)])
    }

    #[test]
    fn box_from_halfplanes() {
        let p = RatPolygon::from_halfplanes(&[
            hp(1, 0, int(0)),
            hp(0, 1, int(0)),
            hp(-1, 0, int(-1)),
            hp(0, -1, int(-1)),
        ])
        .unwrap();
        assert_eq!(p, unit_square());
        assert_eq!(p.vertices()[0], pt(0, 0));
    }

    #[test]
    fn nef_polygon_from_halfplanes() {
        // <u, rho> >= min(0, <m, rho>) with m = (-3, -2)
        let rays = [(-1, 0), (0, -1), (1, 2), (0, 1)];
        let m = MVec::new(-3, -2);
        let hps: Vec<_> = rays
            .iter()
            .map(|&(x, y)| {
                let r = NVec::new(x, y);
                hp(x, y, int(m.pair(r).min(0)))
            })
            .collect();
        assert_eq!(RatPolygon::from_halfplanes(&hps).unwrap(), example_nabla_prime());
    }

    #[test]
    fn infeasible_and_unbounded() {
        let p = RatPolygon::from_halfplanes(&[hp(1, 0, int(0)), hp(-1, 0, int(1))]).unwrap();
        assert!(p.is_empty());
        assert_eq!(p.dim(), -1);
        let e = RatPolygon::from_halfplanes(&[hp(1, 0, int(0)), hp(0, 1, int(0))]);
        assert_eq!(e, Err(Error::UnboundedRegion));
        let strip = RatPolygon::from_halfplanes(&[hp(1, 0, int(0)), hp(-1, 0, int(-1))]);
        assert_eq!(strip, Err(Error::UnboundedRegion));
    }

    #[test]
    fn degenerate_results() {
        let seg = RatPolygon::from_halfplanes(&[
            hp(1, 0, int(0)),
            hp(-1, 0, int(0)),
            hp(0, 1, int(0)),
            hp(0, -1, int(-2)),
        ])
        .unwrap();
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.vertices(), &[pt(0, 0), pt(0, 2)]);
        let point = RatPolygon::from_halfplanes(&[
            hp(1, 0, int(0)),
            hp(0, 1, int(0)),
            hp(-1, -1, int(0)),
        ])
        .unwrap();
        assert_eq!(point.dim(), 0);
        assert_eq!(point.lattice_points(), vec![MVec::new(0, 0)]);
    }

    #[test]
    fn colon_examples() {
        let sq = unit_square();
        assert_eq!(sq.dilate(&int(2)).colon(&sq), sq);

        let theta = example_pd().colon(&example_nabla_prime());
        assert_eq!(
            theta,
            RatPolygon::from_points([pt(0, 0), pt(-1, 0), RatPoint::new(int(0), rat(-1, 2))])
        );
        let theta32 = example_pd()
            .dilate(&int(3))
            .colon(&example_nabla_prime().dilate(&int(2)));
        assert_eq!(theta32, RatPolygon::from_points([pt(0, 0), pt(-10, 0), pt(0, -5)]));
    }

    #[test]
    fn minkowski_examples() {
        let pd = example_pd();
        assert_eq!(pd.minkowski_sum(&RatPolygon::point(RatPoint::origin())), pd);

        let theta = pd.colon(&example_nabla_prime());
        let nabla = RatPolygon::segment_to(MVec::new(-3, -2));
        let half = |a: i64, b: i64| RatPoint::new(rat(a, 2), rat(b, 2));
        assert_eq!(
            theta.minkowski_sum(&nabla),
            RatPolygon::from_points([pt(0, 0), pt(-1, 0), pt(-4, -2), half(-6, -5), half(0, -1)])
        );
        assert_eq!(
            theta.minkowski_sum(&example_nabla_prime()),
            RatPolygon::from_points([pt(0, 0), pt(-8, 0), half(-6, -5), half(0, -5)])
        );
    }

    #[test]
    fn width_and_projection() {
        let v = NVec::new(-2, 3);
        assert_eq!(unit_square().width(NVec::new(1, 1)), Some(int(2)));
        assert_eq!(example_pd().width(v), Some(int(25)));
        assert_eq!(example_pd().project_interval(v), Some((int(-9), int(16))));
        assert_eq!(example_nabla_prime().project_interval(v), Some((int(-6), int(14))));
        let theta = example_pd().colon(&example_nabla_prime());
        assert_eq!(theta.project_interval(v), Some((rat(-3, 2), int(2))));
        assert_eq!(theta.width(v), Some(rat(7, 2)));
        assert_eq!(RatPolygon::empty().width(v), None);
    }

    #[test]
    fn lattice_point_examples() {
        assert_eq!(unit_square().lattice_points().len(), 4);
        let theta = example_pd().colon(&example_nabla_prime());
        assert_eq!(theta.lattice_points(), vec![MVec::new(-1, 0), MVec::new(0, 0)]);
        let big = RatPolygon::from_points([pt(0, 0), pt(-10, 0), pt(0, -5)]);
        // columns x = -10..0 carry floor((10 + x) / 2) + 1 points
        let expected: i64 = (-10..=0).map(|x: i64| (10 + x) / 2 + 1).sum();
        assert_eq!(expected, 36);
        assert_eq!(big.lattice_points().len(), 36);
    }

    #[test]
    fn area_of_running_example() {
        assert_eq!(example_pd().area(), int(15));
    }
}
