//! Rational cones in a rank-2 lattice: rays, pointed cones and halfplanes.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{LatticeVec, MVec, NVec};
use crate::oracle;

/// A cone in the lattice `V`. The full plane is never needed and has no variant.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cone2<V: LatticeVec> {
    /// `R>=0 * g` with `g` primitive.
    Ray(V),
    /// `cone(g1, g2)` with `det(g1, g2) > 0`, both primitive.
    Pointed(V, V),
    /// `{x : <x, normal> >= 0}` with a primitive normal in the dual lattice.
    Halfplane { normal: V::Dual },
}

impl<V: LatticeVec> fmt::Debug for Cone2<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cone2::Ray(g) => write!(f, "ray{g:?}"),
            Cone2::Pointed(a, b) => write!(f, "cone({a:?},{b:?})"),
            Cone2::Halfplane { normal } => write!(f, "halfplane(<.,{normal:?}> >= 0)"),
        }
    }
}

impl<V: LatticeVec> fmt::Display for Cone2<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<V: LatticeVec> Cone2<V> {
    pub fn ray(g: V) -> Self {
        assert!(!g.is_zero(), "ray through the origin");
        Cone2::Ray(g.primitive())
    }

    /// The cone spanned by two vectors. Parallel vectors give a ray;
    /// antiparallel ones are rejected since the side would be ambiguous.
    pub fn spanned(a: V, b: V) -> Result<Self> {
        let (a, b) = (a.primitive(), b.primitive());
        match a.det(b).signum() {
            1 => Ok(Cone2::Pointed(a, b)),
            -1 => Ok(Cone2::Pointed(b, a)),
            _ if a == b => Ok(Cone2::Ray(a)),
            _ => Err(Error::NotPointed),
        }
    }

    pub fn halfplane(normal: V::Dual) -> Self {
        Cone2::Halfplane {
            normal: normal.primitive(),
        }
    }

    /// Linear forms `d` with `c = {x : <x, d> >= 0 for all d}`.
    pub fn inequalities(&self) -> Vec<V::Dual> {
        match *self {
            Cone2::Ray(g) => vec![g.perp(), -g.perp(), V::Dual::new(g.x(), g.y())],
            Cone2::Pointed(a, b) => vec![a.perp(), -b.perp()],
            Cone2::Halfplane { normal } => vec![normal],
        }
    }

    pub fn contains(&self, x: V) -> bool {
        self.inequalities().iter().all(|&d| x.pair(d) >= 0)
    }

    /// Membership in the relative interior.
    pub fn contains_interior(&self, x: V) -> bool {
        match *self {
            Cone2::Ray(g) => g.det(x) == 0 && x.pair(V::Dual::new(g.x(), g.y())) > 0,
            Cone2::Pointed(a, b) => a.det(x) > 0 && x.det(b) > 0,
            Cone2::Halfplane { normal } => x.pair(normal) > 0,
        }
    }

    pub fn dual(&self) -> Cone2<V::Dual> {
        match *self {
            Cone2::Ray(g) => Cone2::Halfplane { normal: g },
            Cone2::Pointed(a, b) => {
                Cone2::spanned(a.perp(), -b.perp()).expect("dual of a pointed cone is pointed")
            }
            Cone2::Halfplane { normal } => Cone2::Ray(normal),
        }
    }

    /// Minimal generators of the semigroup `c ∩ V`, ordered from the first
    /// generator to the second.
    pub fn hilbert_basis(&self) -> Result<Vec<V>> {
        match *self {
            Cone2::Ray(g) => Ok(vec![g]),
            Cone2::Halfplane { .. } => Err(Error::NotPointed),
            Cone2::Pointed(a, b) => Ok(pointed_hilbert_basis(a, b)),
        }
    }
}

fn pointed_hilbert_basis<V: LatticeVec>(a: V, b: V) -> Vec<V> {
    let det = a.det(b);
    let corners = [V::new(0, 0), a, b, a + b];
    let (xlo, xhi) = min_max(corners.iter().map(|c| c.x()));
    let (ylo, yhi) = min_max(corners.iter().map(|c| c.y()));
    // x = (s * a + t * b) with s = det(x, b) / det, t = det(a, x) / det
    let mut cand = vec![a, b];
    for x in xlo..=xhi {
        for y in ylo..=yhi {
            let p = V::new(x, y);
            let s = p.det(b);
            let t = a.det(p);
            if (0..det).contains(&s) && (0..det).contains(&t) && !p.is_zero() {
                cand.push(p);
            }
        }
    }
    cand.sort_by(|p, q| 0.cmp(&p.det(*q)));
    cand.dedup();
    let cone = Cone2::Pointed(a, b);
    let basis: Vec<V> = cand
        .iter()
        .copied()
        .filter(|&h| !cand.iter().any(|&g| g != h && cone.contains(h - g)))
        .collect();
    basis
}

fn min_max(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

/// Verdict on `w = w' + w''` with both summands in the interior.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decomposition<V> {
    pub decomposable: bool,
    pub witness: Option<(V, V)>,
}

/// Strong decomposability of `w` in `c`.
///
/// Pointed cones use the Hilbert basis of the dual: decomposable iff no basis
/// element pairs to 1 with `w`. A halfplane asks for lattice distance > 1 from
/// the boundary line and a ray for `w = k * g` with `k >= 2`. A positive verdict
/// carries the witness found by [`oracle::brute_decompose`].
pub fn is_strongly_decomposable<V: LatticeVec>(w: V, c: &Cone2<V>) -> Result<Decomposition<V>> {
    if !c.contains_interior(w) {
        return Err(Error::NotInInterior);
    }
    let decomposable = match *c {
        Cone2::Pointed(..) => {
            let h = c.dual().hilbert_basis()?;
            !h.iter().any(|&u| u.pair(w) == 1)
        }
        Cone2::Halfplane { normal } => w.pair(normal) > 1,
        Cone2::Ray(g) => w.content() >= 2 && w.primitive() == g,
    };
    let witness = if decomposable {
        oracle::brute_decompose(w, c)?
    } else {
        None
    };
    Ok(Decomposition {
        decomposable,
        witness,
    })
}

/// Whether some lattice point `u` of `c` has `<u, v> = 1`.
///
/// Solutions of `<u, v> = 1` form the line `u* + t*m`; intersecting with `c`
/// leaves a rational interval of `t`, which is checked for an integer.
pub fn exists_pairing_one(c: &Cone2<MVec>, v: NVec) -> bool {
    let base = crate::lattice::unit_preimage(v);
    let m = v.perp();
    let mut lo: Option<(i128, i128)> = None;
    let mut hi: Option<(i128, i128)> = None;
    for d in c.inequalities() {
        // <base, d> + t <m, d> >= 0
        let a = base.pair(d) as i128;
        let b = m.pair(d) as i128;
        match b.signum() {
            0 => {
                if a < 0 {
                    return false;
                }
            }
            1 => {
                // t >= -a / b
                let bound = (-a, b);
                if lo.is_none_or(|l| frac_gt(bound, l)) {
                    lo = Some(bound);
                }
            }
            _ => {
                // t <= -a / b = a / -b
                let bound = (a, -b);
                if hi.is_none_or(|h| frac_gt(h, bound)) {
                    hi = Some(bound);
                }
            }
        }
    }
    match (lo, hi) {
        (Some((ln, ld)), Some((hn, hd))) => ceil_div(ln, ld) <= hn.div_euclid(hd),
        _ => true,
    }
}

/// `a/b > c/d` for positive denominators.
fn frac_gt((a, b): (i128, i128), (c, d): (i128, i128)) -> bool {
    a * d > c * b
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: i64, y: i64) -> NVec {
        NVec::new(x, y)
    }

    fn m(x: i64, y: i64) -> MVec {
        MVec::new(x, y)
    }

    #[test]
    fn duals() {
        let q1 = Cone2::spanned(n(1, 0), n(0, 1)).unwrap();
        assert_eq!(q1.dual(), Cone2::spanned(m(1, 0), m(0, 1)).unwrap());
        let c = Cone2::spanned(m(0, 1), m(-2, 1)).unwrap();
        assert_eq!(c.dual(), Cone2::spanned(n(-1, 0), n(1, 2)).unwrap());
        assert_eq!(c.dual().dual(), c);
        assert_eq!(Cone2::ray(n(3, 5)).dual(), Cone2::Halfplane { normal: n(3, 5) });
    }

    #[test]
    fn hilbert_bases() {
        let q1 = Cone2::spanned(m(1, 0), m(0, 1)).unwrap();
        assert_eq!(q1.hilbert_basis().unwrap(), vec![m(1, 0), m(0, 1)]);
        let c = Cone2::spanned(m(0, 1), m(-2, 1)).unwrap();
        assert_eq!(c.hilbert_basis().unwrap(), vec![m(0, 1), m(-1, 1), m(-2, 1)]);
        assert_eq!(Cone2::ray(m(3, 5)).hilbert_basis().unwrap(), vec![m(3, 5)]);
        assert_eq!(
            Cone2::<MVec>::halfplane(n(0, 1)).hilbert_basis(),
            Err(Error::NotPointed)
        );
        // the A_{n} type cone(e2, n e1 - (n-1) e2 ...) has a long basis
        let c = Cone2::spanned(m(1, 0), m(1, 5)).unwrap();
        assert_eq!(c.hilbert_basis().unwrap().len(), 6);
        let c = Cone2::spanned(m(1, 0), m(-1, 5)).unwrap();
        assert_eq!(c.hilbert_basis().unwrap(), vec![m(1, 0), m(0, 1), m(-1, 5)]);
    }

    #[test]
    fn decomposability() {
        let q1 = Cone2::spanned(n(1, 0), n(0, 1)).unwrap();
        let d = is_strongly_decomposable(n(1, 1), &q1).unwrap();
        assert!(!d.decomposable);
        assert_eq!(d.witness, None);
        let d = is_strongly_decomposable(n(2, 2), &q1).unwrap();
        assert_eq!(d.witness, Some((n(1, 1), n(1, 1))));
        let sigma = Cone2::spanned(n(-1, 0), n(1, 2)).unwrap();
        let d = is_strongly_decomposable(n(-2, 3), &sigma).unwrap();
        assert!(d.decomposable);
        assert_eq!(d.witness, Some((n(-2, 1), n(0, 2))));
        assert_eq!(
            is_strongly_decomposable(n(1, 0), &q1),
            Err(Error::NotInInterior)
        );
    }

    #[test]
    fn halfplanes_and_rays() {
        let h = Cone2::<NVec>::halfplane(m(0, 1));
        assert!(!is_strongly_decomposable(n(5, 1), &h).unwrap().decomposable);
        let d = is_strongly_decomposable(n(5, 2), &h).unwrap();
        assert!(d.decomposable);
        let (a, b) = d.witness.unwrap();
        assert_eq!(a + b, n(5, 2));
        assert!(h.contains_interior(a) && h.contains_interior(b));
        let r = Cone2::ray(n(1, 2));
        assert!(!is_strongly_decomposable(n(1, 2), &r).unwrap().decomposable);
        assert_eq!(
            is_strongly_decomposable(n(3, 6), &r).unwrap().witness,
            Some((n(1, 2), n(2, 4)))
        );
    }

    #[test]
    fn pairing_one() {
        let q1 = Cone2::spanned(m(1, 0), m(0, 1)).unwrap();
        assert!(exists_pairing_one(&q1, n(0, 1)));
        let c = Cone2::spanned(m(0, 1), m(-2, 1)).unwrap();
        assert!(!exists_pairing_one(&c, n(-2, 3)));
        // <(-1,1),(-2,3)> = 5 and <(0,1),(-2,3)> = 3: all pairings are 3a + 5b
        let c = Cone2::spanned(m(0, 1), m(-1, 1)).unwrap();
        assert!(!exists_pairing_one(&c, n(-2, 3)));
        assert!(exists_pairing_one(&Cone2::halfplane(n(-2, 3)), n(-2, 3)));
        assert!(!exists_pairing_one(&Cone2::halfplane(n(2, -3)), n(-2, 3)));
        assert!(exists_pairing_one(&Cone2::ray(m(1, 1)), n(0, 1)));
        assert!(!exists_pairing_one(&Cone2::ray(m(1, 2)), n(0, 1)));
    }
}
