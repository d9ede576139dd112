//! Brute-force checks that share no algorithm with the main modules:
//! Vandermonde vanishing orders, exhaustive decomposition search, a box-scan
//! recount of `e(l, k)` and a direct search for valuation points.

use std::collections::BTreeSet;

use num::{BigInt, One, Zero};

use crate::cones::Cone2;
use crate::error::{Error, Result};
use crate::lattice::{LatticeVec, MVec, RatPoint};
use crate::polygon::RatPolygon;
use crate::rat::{self, Rat};
use crate::semigroup::FlagContext;

pub const DEFAULT_LAMBDA_MAX: u64 = 60;

/// Orders of vanishing at `c` realized by Laurent polynomials supported on `z`.
///
/// Order `k` occurs iff the derivative rows `0..=k` have larger rank than rows
/// `0..k`; row `j` holds `falling(z_i, j) c^(z_i - j)`.
pub fn vanishing_orders(z: &[i64], c: &Rat) -> BTreeSet<usize> {
    assert!(!c.is_zero(), "evaluation point must be non-zero");
    let z: Vec<i64> = z.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let rows: Vec<Vec<BigInt>> = (0..z.len())
        .map(|j| {
            let row: Vec<Rat> = z
                .iter()
                .map(|&e| falling(e, j) * c.pow((e - j as i64) as i32))
                .collect();
            let den = rat::common_denominator(&row);
            row.iter()
                .map(|r| (r * Rat::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut orders = BTreeSet::new();
    let mut prev = 0;
    for k in 0..z.len() {
        let r = rank(rows[..=k].to_vec());
        if r > prev {
            orders.insert(k);
        }
        prev = r;
    }
    orders
}

fn falling(e: i64, j: usize) -> Rat {
    (0..j as i64).fold(rat::one(), |acc, i| acc * rat::int(e - i))
}

/// Rank by fraction-free (Bareiss) elimination.
fn rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev_pivot = BigInt::one();
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in col + 1..cols {
                let v = (&a[r][col] * &a[i][j] - &a[i][col] * &a[r][j]) / &prev_pivot;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev_pivot = a[r][col].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Exhaustive search for `w = w' + w''` with both parts in the interior of `c`.
/// Returns the lexicographically smallest `w'`.
pub fn brute_decompose<V: LatticeVec>(w: V, c: &Cone2<V>) -> Result<Option<(V, V)>> {
    if !c.contains_interior(w) {
        return Err(Error::NotInInterior);
    }
    let ((xlo, ylo), (xhi, yhi)) = search_box(w, c);
    for x in xlo..=xhi {
        for y in ylo..=yhi {
            let a = V::new(x, y);
            let b = w - a;
            if c.contains_interior(a) && c.contains_interior(b) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// Box containing `c ∩ (w - c)`. For a halfplane that region is an infinite
/// strip; a witness exists within `|n|` of `w / <w, n>` when there is one.
fn search_box<V: LatticeVec>(w: V, c: &Cone2<V>) -> ((i64, i64), (i64, i64)) {
    match *c {
        Cone2::Ray(_) => ((w.x().min(0), w.y().min(0)), (w.x().max(0), w.y().max(0))),
        Cone2::Halfplane { normal } => {
            let r = w.x().abs().max(w.y().abs()) + normal.x().abs().max(normal.y().abs()) + 1;
            ((-r, -r), (r, r))
        }
        Cone2::Pointed(a, b) => {
            let det = a.det(b) as i128;
            let alpha = w.det(b) as i128;
            let beta = a.det(w) as i128;
            // corners 0, alpha/det * a, beta/det * b, w
            let xs = [
                (0, 1),
                (alpha * a.x() as i128, det),
                (beta * b.x() as i128, det),
                (w.x() as i128, 1),
            ];
            let ys = [
                (0, 1),
                (alpha * a.y() as i128, det),
                (beta * b.y() as i128, det),
                (w.y() as i128, 1),
            ];
            let lo = |v: &[(i128, i128)]| v.iter().map(|&(n, d)| n.div_euclid(d)).min().unwrap() as i64;
            let hi = |v: &[(i128, i128)]| {
                v.iter().map(|&(n, d)| -((-n).div_euclid(d))).max().unwrap() as i64
            };
            ((lo(&xs), lo(&ys)), (hi(&xs), hi(&ys)))
        }
    }
}

/// `e(l, k)` recounted by scanning a box around `l P_D` against the integer
/// tightened inequalities `<u, rho> >= ceil(-l a_rho + k c'_rho)`.
pub fn brute_e_bar(ctx: &FlagContext, l: i64, k: i64) -> u64 {
    let rays = ctx.divisor().fan().rays();
    let bounds: Vec<i128> = ctx
        .divisor()
        .coeffs()
        .iter()
        .zip(&ctx.flag().cprime)
        .map(|(a, &c)| {
            let off = -(a * rat::int(l)) + rat::int(k * c);
            rat::to_i128(&rat::ceil(&off)).expect("bound fits in i128")
        })
        .collect();
    let lp = ctx.pd().dilate(&rat::int(l));
    let v = ctx.v();
    let mut seen = BTreeSet::new();
    for_box_points(&lp, |x, y| {
        let inside = rays
            .iter()
            .zip(&bounds)
            .all(|(r, &b)| (x as i128) * (r.x as i128) + (y as i128) * (r.y as i128) >= b);
        if inside {
            seen.insert(MVec::new(x, y).pair(v));
        }
    });
    seen.len() as u64
}

fn for_box_points(p: &RatPolygon, mut f: impl FnMut(i64, i64)) {
    if p.is_empty() {
        return;
    }
    let coord = |sel: fn(&RatPoint) -> &Rat| {
        let lo = p.vertices().iter().map(sel).min().unwrap();
        let hi = p.vertices().iter().map(sel).max().unwrap();
        (
            rat::to_i64(&rat::floor(lo)).expect("fits"),
            rat::to_i64(&rat::ceil(hi)).expect("fits"),
        )
    };
    let (xlo, xhi) = coord(|q| &q.x);
    let (ylo, yhi) = coord(|q| &q.y);
    for x in xlo..=xhi {
        for y in ylo..=yhi {
            f(x, y);
        }
    }
}

/// Smallest `lambda <= lambda_max` making `lambda Theta(1, q)` have integral
/// `v`-extremal values with every intermediate integer hit by a lattice point.
pub fn lift_search(ctx: &FlagContext, q: &Rat, lambda_max: u64) -> Option<u64> {
    let v = ctx.v();
    let rays = ctx.divisor().fan().rays();
    for lambda in 1..=lambda_max {
        let lam = rat::int(lambda as i64);
        let theta = ctx.theta(&lam, &(&lam * q));
        let (lo, hi) = theta.project_interval(v)?;
        if !rat::is_integer(&lo) || !rat::is_integer(&hi) {
            continue;
        }
        let bounds: Vec<i128> = ctx
            .theta_halfplanes(&lam, &(&lam * q))
            .iter()
            .map(|h| rat::to_i128(&rat::ceil(&h.offset)).expect("fits"))
            .collect();
        let lo = rat::to_i64(lo.numer()).expect("fits");
        let hi = rat::to_i64(hi.numer()).expect("fits");
        let mut hit = vec![false; (hi - lo + 1) as usize];
        for_box_points(&theta, |x, y| {
            let inside = rays
                .iter()
                .zip(&bounds)
                .all(|(r, &b)| (x as i128) * (r.x as i128) + (y as i128) * (r.y as i128) >= b);
            if inside {
                let t = MVec::new(x, y).pair(v);
                hit[(t - lo) as usize] = true;
            }
        });
        if hit.iter().all(|&h| h) {
            return Some(lambda);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{Fan2, ToricDivisor};
    use crate::lattice::NVec;
    use crate::rat::{int, rat};

    fn ctx() -> FlagContext {
        let fan = Fan2::from_pairs(&[(-1, 0), (0, -1), (1, 2), (0, 1)]).unwrap();
        let d = ToricDivisor::from_ints(fan, &[0, 0, 8, 3]).unwrap();
        FlagContext::new(d, NVec::new(-2, 3)).unwrap()
    }

    #[test]
    fn vandermonde_orders() {
        assert_eq!(vanishing_orders(&[0], &int(1)), BTreeSet::from([0]));
        assert_eq!(vanishing_orders(&[0, 2], &int(1)), BTreeSet::from([0, 1]));
        assert_eq!(vanishing_orders(&[-3, 0, 5], &int(2)), BTreeSet::from([0, 1, 2]));
        assert_eq!(
            vanishing_orders(&[-4, -1, 0, 3, 7], &rat(3, 2)),
            BTreeSet::from([0, 1, 2, 3, 4])
        );
    }

    #[test]
    fn rank_of_small_matrices() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(rank(vec![b(&[1, 2]), b(&[2, 4])]), 1);
        assert_eq!(rank(vec![b(&[0, 1]), b(&[1, 0])]), 2);
        assert_eq!(rank(vec![b(&[0, 0, 0])]), 0);
    }

    #[test]
    fn decompositions() {
        let n = NVec::new;
        let sigma = Cone2::spanned(n(-1, 0), n(1, 2)).unwrap();
        assert_eq!(
            brute_decompose(n(-2, 3), &sigma).unwrap(),
            Some((n(-2, 1), n(0, 2)))
        );
        let q1 = Cone2::spanned(n(1, 0), n(0, 1)).unwrap();
        assert_eq!(brute_decompose(n(1, 1), &q1).unwrap(), None);
        assert_eq!(brute_decompose(n(0, 1), &q1), Err(Error::NotInInterior));
    }

    #[test]
    fn e_bar_recount() {
        let c = ctx();
        assert_eq!(brute_e_bar(&c, 1, 1), 2);
        assert_eq!(brute_e_bar(&c, 3, 2), 30);
        assert_eq!(brute_e_bar(&c, 1, 5), 0);
    }

    #[test]
    fn lifting_in_the_running_example() {
        let c = ctx();
        assert_eq!(lift_search(&c, &rat(2, 3), DEFAULT_LAMBDA_MAX), None);
        // the v-minimal vertex cone of P_D only reaches levels 3a + 2b above it
        assert_eq!(lift_search(&c, &int(0), DEFAULT_LAMBDA_MAX), None);
        // Theta(1, 8/7) is the origin
        assert_eq!(lift_search(&c, &rat(8, 7), DEFAULT_LAMBDA_MAX), Some(1));
    }
}
