#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use toricsg::lattice::pt;
use toricsg::rat::int;
use toricsg::{Fan2, FlagContext, LatticeVec, NVec, RatPolygon, ToricDivisor};

pub fn n(x: i64, y: i64) -> NVec {
    NVec::new(x, y)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn running_fan() -> Fan2 {
    Fan2::from_pairs(&[(-1, 0), (0, -1), (1, 2), (0, 1)]).unwrap()
}

pub fn running_divisor() -> ToricDivisor {
    ToricDivisor::from_ints(running_fan(), &[0, 0, 8, 3]).unwrap()
}

pub fn running() -> FlagContext {
    FlagContext::new(running_divisor(), n(-2, 3)).unwrap()
}

pub fn enlarged_fan() -> Fan2 {
    Fan2::from_pairs(&[(-1, 0), (0, -1), (1, 2), (0, 1), (1, 0), (-1, 1)]).unwrap()
}

pub fn seven_gon() -> RatPolygon {
    RatPolygon::from_points([pt(4, 1), pt(7, 2), pt(9, 3), pt(6, 5), pt(1, 8), pt(1, 7), pt(2, 4)])
}

pub fn seven_gon_ctx() -> FlagContext {
    FlagContext::new(ToricDivisor::from_polygon(&seven_gon()).unwrap(), n(0, 1)).unwrap()
}

pub fn fixture(name: &str) -> Value {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    serde_json::from_str(&text).unwrap()
}

fn pairs(v: &Value) -> Vec<(i64, i64)> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_i64().unwrap(), p[1].as_i64().unwrap()))
        .collect()
}

/// The frozen 16-gon and its expected fan.
pub fn sixteen_gon() -> (RatPolygon, Fan2, i64) {
    let f = fixture("sixteen_gon.json");
    let poly = RatPolygon::from_points(pairs(&f["vertices"]).into_iter().map(|(x, y)| pt(x, y)));
    let fan = Fan2::from_pairs(&pairs(&f["rays"])).unwrap();
    (poly, fan, f["scan_bound"].as_i64().unwrap())
}

/// Smooth complete fan with an ample divisor: P^2 or P^1 x P^1 followed by up
/// to four blow-ups, each realized on the polygon by cutting a corner.
pub fn random_polarized(rng: &mut impl Rng) -> ToricDivisor {
    let mut d = if rng.gen_bool(0.5) {
        let fan = Fan2::from_pairs(&[(1, 0), (0, 1), (-1, -1)]).unwrap();
        ToricDivisor::from_ints(fan, &[0, 0, rng.gen_range(2..=6)]).unwrap()
    } else {
        let fan = Fan2::from_pairs(&[(1, 0), (0, 1), (-1, 0), (0, -1)]).unwrap();
        let (a, b) = (rng.gen_range(2..=5), rng.gen_range(2..=5));
        ToricDivisor::from_ints(fan, &[0, 0, a, b]).unwrap()
    };
    for _ in 0..rng.gen_range(0..=4) {
        let order = d.fan().cyclic_order().to_vec();
        let k = rng.gen_range(0..order.len());
        let (i, j) = (order[k], order[(k + 1) % order.len()]);
        let (ri, rj) = (d.fan().rays()[i], d.fan().rays()[j]);
        while p_len(&d, ri).min(p_len(&d, rj)) < 2 {
            d = d.scale(&int(2));
        }
        let room = p_len(&d, ri).min(p_len(&d, rj));
        let t = rng.gen_range(1..room);
        let coeff = d.coeff(i) + d.coeff(j) - int(t);
        let mut rays = d.fan().rays().to_vec();
        rays.push(ri + rj);
        let mut coeffs = d.coeffs().to_vec();
        coeffs.push(coeff);
        d = ToricDivisor::new(Fan2::new(rays).unwrap(), coeffs).unwrap();
    }
    assert!(d.fan().is_smooth() && d.is_ample());
    d
}

fn p_len(d: &ToricDivisor, r: NVec) -> i64 {
    let len = d.polytope().unwrap().face_lattice_length(r);
    assert!(len.is_integer());
    toricsg::rat::to_i64(len.numer()).unwrap()
}

pub fn random_direction(rng: &mut impl Rng, bound: i64) -> NVec {
    loop {
        let v = n(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        if v.is_primitive() {
            return v;
        }
    }
}
