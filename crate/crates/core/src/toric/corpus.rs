//! Named fans and a seeded generator of random simplicial Fano fans.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::alpha::box_size;
use super::fan::FanData;
use super::polytope::polar_and_dilate;
use crate::error::Result;

/// Fan of `P^d`: rays `e_1..e_d, −Σe_i`, cones all `d`-subsets.
pub fn projective_space(d: usize) -> FanData {
    let mut rays: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect();
    rays.push(vec![-1; d]);
    let cones = (0..=d)
        .map(|skip| (0..=d).filter(|&i| i != skip).collect())
        .collect();
    FanData::new(d, rays, cones).expect("projective space fan")
}

/// Fan of a smooth toric surface from rays listed counterclockwise.
pub fn polygon_fan(rays: Vec<Vec<i64>>) -> Result<FanData> {
    let n = rays.len();
    let cones = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    FanData::new(2, rays, cones)
}

/// `(name, fan)` for every named fan in the corpus.
pub fn named_fans() -> Vec<(&'static str, FanData)> {
    let p1 = projective_space(1);
    let p2 = projective_space(2);
    let polygon = |r: &[[i64; 2]]| polygon_fan(r.iter().map(|v| v.to_vec()).collect()).unwrap();
    vec![
        ("P1", p1.clone()),
        ("P2", p2.clone()),
        ("P1xP1", p1.product(&p1).unwrap()),
        ("P(1,1,2)", polygon(&[[1, 0], [0, 1], [-1, -2]])),
        ("dP7", polygon(&[[1, 0], [1, 1], [0, 1], [-1, 0], [0, -1]])),
        (
            "dP6",
            polygon(&[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]]),
        ),
        ("P3", projective_space(3)),
        ("P1xP1xP1", p1.product(&p1).unwrap().product(&p1).unwrap()),
        ("P2xP1", p2.product(&p1).unwrap()),
    ]
}

pub fn named_fan(name: &str) -> Option<FanData> {
    let key = name.to_ascii_lowercase().replace(['(', ')', ',', '_'], "");
    named_fans()
        .into_iter()
        .find(|(n, _)| n.to_ascii_lowercase().replace(['(', ')', ',', '_'], "") == key)
        .map(|(_, f)| f)
}

/// Quadrant-then-cross-product comparison of directions by angle.
fn angle_cmp(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let half = |v: &[i64]| u8::from(v[1] < 0 || (v[1] == 0 && v[0] < 0));
    half(a)
        .cmp(&half(b))
        .then_with(|| 0.cmp(&(a[0] * b[1] - a[1] * b[0])))
}

fn random_polygon(rng: &mut ChaCha8Rng) -> Option<FanData> {
    let k = rng.gen_range(3..=7);
    let mut rays: Vec<Vec<i64>> = Vec::new();
    while rays.len() < k {
        let v = vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
        if num_integer::gcd(v[0], v[1]) == 1 && !rays.contains(&v) {
            rays.push(v);
        }
    }
    rays.sort_by(|a, b| angle_cmp(a, b));
    let fan = polygon_fan(rays).ok()?;
    polar_and_dilate(&fan).ok()?;
    Some(fan)
}

fn random_unimodular(rng: &mut ChaCha8Rng, d: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..2 * d {
        let i = rng.gen_range(0..d);
        let j = rng.gen_range(0..d);
        if i == j {
            continue;
        }
        let s = *[-1i64, 1].choose(rng).unwrap();
        for k in 0..d {
            a[i][k] += s * a[j][k];
        }
    }
    a
}

/// Box of `2rP` small enough for exhaustive scans by the reference code.
const MAX_SCAN_BOX: u128 = 50_000;

fn small_enough(fan: &FanData) -> bool {
    polar_and_dilate(fan).is_ok_and(|(poly, r)| box_size(&poly, 2 * r) <= MAX_SCAN_BOX)
}

/// `count` random valid simplicial Fano fans of dimension 2 or 3, from a
/// fixed seed: random polygons, products with `P¹`, and unimodular images of
/// named fans. Every fan keeps the bounding box of `2rP` below 50 000 points.
pub fn random_fano_fans(seed: u64, count: usize) -> Vec<FanData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p1 = projective_space(1);
    let three: Vec<FanData> = named_fans()
        .into_iter()
        .filter(|(_, f)| f.dim() == 3)
        .map(|(_, f)| f)
        .collect();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 100_000 {
        attempts += 1;
        let fan = match out.len() % 3 {
            0 => random_polygon(&mut rng),
            1 => random_polygon(&mut rng).and_then(|f| f.product(&p1).ok()),
            _ => {
                let base = three.choose(&mut rng).unwrap();
                base.transformed(&random_unimodular(&mut rng, 3)).ok()
            }
        };
        if let Some(f) = fan {
            if small_enough(&f) {
                out.push(f);
            }
        }
    }
    out
}
