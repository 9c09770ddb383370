//! Naive reference implementations used as oracles. Nothing here calls the
//! library's linkage or aggregation code.
#![allow(dead_code)]

use owalink::{Dataset64, DistanceMatrix64, PointSet64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..d).map(|_| rng.gen_range(-10.0..10.0)).collect())
        .collect()
}

/// `n` in `2..=max_n`, `d` in `1..=max_d`.
pub fn random_dataset(rng: &mut ChaCha8Rng, max_n: usize, max_d: usize) -> Vec<Vec<f64>> {
    let n = rng.gen_range(2..=max_n);
    let d = rng.gen_range(1..=max_d);
    random_points(rng, n, d)
}

pub fn dataset(points: &[Vec<f64>]) -> Dataset64 {
    Dataset64::from_points(PointSet64::new(points.to_vec()).unwrap())
}

pub fn matrix_dataset(d: &[Vec<f64>]) -> Dataset64 {
    Dataset64::from_distances(DistanceMatrix64::from_square(d).unwrap())
}

pub fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn square_matrix(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|p| points.iter().map(|q| euclid(p, q)).collect())
        .collect()
}

/// Plain OWA: sort, weight, divide.
pub fn naive_owa(c: &[f64], tail_repeat: bool, largest_first: bool, values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    if !largest_first {
        v.reverse();
    }
    let coef = |i: usize| {
        if i < c.len() {
            c[i]
        } else if tail_repeat {
            *c.last().unwrap()
        } else {
            0.0
        }
    };
    let num: f64 = v.iter().enumerate().map(|(i, x)| coef(i) * x).sum();
    let den: f64 = (0..v.len()).map(coef).sum();
    num / den
}

#[derive(Clone, Debug)]
pub enum Oracle {
    Single,
    Complete,
    Average,
    Weighted,
    Centroid,
    Median,
    Ward,
    Owa {
        c: Vec<f64>,
        repeat: bool,
        largest_first: bool,
    },
}

struct Group {
    id: usize,
    members: Vec<usize>,
    /// Dyadic weights for weighted average and median.
    weights: Vec<f64>,
}

fn mean(points: &[Vec<f64>], idx: &[usize], w: Option<&[f64]>) -> Vec<f64> {
    let d = points[0].len();
    let mut out = vec![0.0; d];
    for (k, &i) in idx.iter().enumerate() {
        let wi = w.map_or(1.0 / idx.len() as f64, |w| w[k]);
        for (o, x) in out.iter_mut().zip(&points[i]) {
            *o += wi * x;
        }
    }
    out
}

fn linkage(o: &Oracle, points: &[Vec<f64>], dm: &[Vec<f64>], a: &Group, b: &Group) -> f64 {
    let cross = || {
        let mut v = Vec::new();
        for &i in &a.members {
            for &j in &b.members {
                v.push(dm[i][j]);
            }
        }
        v
    };
    match o {
        Oracle::Single => cross().into_iter().fold(f64::INFINITY, f64::min),
        Oracle::Complete => cross().into_iter().fold(0.0, f64::max),
        Oracle::Average => {
            let v = cross();
            v.iter().sum::<f64>() / v.len() as f64
        }
        Oracle::Weighted => {
            let mut s = 0.0;
            for (p, &i) in a.members.iter().enumerate() {
                for (q, &j) in b.members.iter().enumerate() {
                    s += a.weights[p] * b.weights[q] * dm[i][j];
                }
            }
            s
        }
        Oracle::Centroid => euclid(
            &mean(points, &a.members, None),
            &mean(points, &b.members, None),
        ),
        Oracle::Median => euclid(
            &mean(points, &a.members, Some(&a.weights)),
            &mean(points, &b.members, Some(&b.weights)),
        ),
        Oracle::Ward => {
            let (na, nb) = (a.members.len() as f64, b.members.len() as f64);
            let d = euclid(
                &mean(points, &a.members, None),
                &mean(points, &b.members, None),
            );
            (2.0 * na * nb / (na + nb)).sqrt() * d
        }
        Oracle::Owa {
            c,
            repeat,
            largest_first,
        } => naive_owa(c, *repeat, *largest_first, &cross()),
    }
}

/// `(left_id, right_id, height)` per step, recomputing every pairwise
/// linkage from scratch. `points` may be empty for matrix-only linkages.
pub fn oracle_cluster(
    o: &Oracle,
    points: &[Vec<f64>],
    dm: &[Vec<f64>],
) -> Vec<(usize, usize, f64)> {
    let n = dm.len();
    let mut groups: Vec<Group> = (0..n)
        .map(|i| Group {
            id: i,
            members: vec![i],
            weights: vec![1.0],
        })
        .collect();
    let mut out = Vec::new();
    for step in 1..n {
        let mut best: Option<(f64, (usize, usize), usize, usize)> = None;
        for x in 0..groups.len() {
            for y in x + 1..groups.len() {
                let h = linkage(o, points, dm, &groups[x], &groups[y]);
                let key = (
                    groups[x].id.min(groups[y].id),
                    groups[x].id.max(groups[y].id),
                );
                let better = match best {
                    None => true,
                    Some((bh, bk, _, _)) => h < bh || (h == bh && key < bk),
                };
                if better {
                    best = Some((h, key, x, y));
                }
            }
        }
        let (h, key, x, y) = best.unwrap();
        let gy = groups.remove(y);
        let gx = groups.remove(x);
        let mut weights: Vec<f64> = gx.weights.iter().map(|w| w / 2.0).collect();
        weights.extend(gy.weights.iter().map(|w| w / 2.0));
        let mut members = gx.members;
        members.extend(gy.members);
        groups.push(Group {
            id: n - 1 + step,
            members,
            weights,
        });
        out.push((key.0, key.1, h));
    }
    out
}

/// Every adjacent drop larger than `eps`.
pub fn count_drops(heights: &[f64], eps: f64) -> usize {
    heights.windows(2).filter(|w| w[1] < w[0] - eps).count()
}
