//! Searches for evidence that an OWA linkage is not a Lance–Williams
//! scheme: two configurations sharing `(d_zu, d_zv, d_uv, n_u, n_v, n_z)`
//! whose merged linkage `L(Z, U ∪ V)` differs.
//!
//! Cross-cluster blocks are drawn from descending patterns over
//! `{0, 1, 2, 3}` and rescaled so that `d_zu = d_zv = 1`. The `U`–`V`
//! block and all within-cluster dissimilarities are 1.

use crate::geometry::{condensed_index, condensed_len, CondensedDistanceMatrix};
use crate::linkage::owa_linkage;
use crate::owa::{owa_sorted, OwaLinkageSpec};
use crate::{Result, Scalar};

/// Differences in merged linkage below this are not reported.
pub const WITNESS_SEPARATION: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessBudget {
    pub max_cluster_size: usize,
    pub max_block: usize,
}

impl Default for WitnessBudget {
    fn default() -> Self {
        WitnessBudget {
            max_cluster_size: 4,
            max_block: 8,
        }
    }
}

/// One realized configuration with clusters `Z`, `U`, `V` laid out as
/// consecutive index ranges.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessConfiguration<T> {
    pub distances: CondensedDistanceMatrix<T>,
    pub z: Vec<usize>,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub d_zu: T,
    pub d_zv: T,
    pub d_uv: T,
    pub merged: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepresentabilityWitness<T> {
    pub n_u: usize,
    pub n_v: usize,
    pub n_z: usize,
    pub first: WitnessConfiguration<T>,
    pub second: WitnessConfiguration<T>,
}

impl<T: Scalar> RepresentabilityWitness<T> {
    pub fn separation(&self) -> T {
        (self.first.merged - self.second.merged).abs()
    }
}

/// Descending vectors of length `len` with entries in `0..=3`.
fn patterns(len: usize) -> Vec<Vec<u8>> {
    fn rec(len: usize, max: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in (0..=max).rev() {
            cur.push(x);
            rec(len, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, 3, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Patterns rescaled to unit OWA, kept sorted descending.
fn normalized<T: Scalar>(spec: &OwaLinkageSpec<T>, len: usize) -> Result<Vec<Vec<T>>> {
    let mut out = Vec::new();
    for p in patterns(len) {
        let raw: Vec<T> = p.iter().map(|&x| T::of(x as f64)).collect();
        let value = owa_sorted(spec, &raw)?;
        if value > T::tolerance() {
            out.push(raw.into_iter().map(|x| x / value).collect());
        }
    }
    Ok(out)
}

fn merge_desc<T: Scalar>(a: &[T], b: &[T], out: &mut Vec<T>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] >= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

fn realize<T: Scalar>(
    spec: &OwaLinkageSpec<T>,
    sizes: (usize, usize, usize),
    zu: &[T],
    zv: &[T],
) -> Result<WitnessConfiguration<T>> {
    let (n_u, n_v, n_z) = sizes;
    let n = n_z + n_u + n_v;
    let z: Vec<usize> = (0..n_z).collect();
    let u: Vec<usize> = (n_z..n_z + n_u).collect();
    let v: Vec<usize> = (n_z + n_u..n).collect();
    let mut values = vec![T::one(); condensed_len(n)];
    for (zi, &a) in z.iter().enumerate() {
        for (k, &b) in u.iter().enumerate() {
            values[condensed_index(n, a, b)] = zu[zi * n_u + k];
        }
        for (k, &b) in v.iter().enumerate() {
            values[condensed_index(n, a, b)] = zv[zi * n_v + k];
        }
    }
    let distances = CondensedDistanceMatrix::new(n, values)?;
    let uv: Vec<usize> = u.iter().chain(&v).copied().collect();
    let d_zu = owa_linkage(spec, &distances, &z, &u)?;
    let d_zv = owa_linkage(spec, &distances, &z, &v)?;
    let d_uv = owa_linkage(spec, &distances, &u, &v)?;
    let merged = owa_linkage(spec, &distances, &z, &uv)?;
    Ok(WitnessConfiguration {
        distances,
        z,
        u,
        v,
        d_zu,
        d_zv,
        d_uv,
        merged,
    })
}

fn verified<T: Scalar>(a: &WitnessConfiguration<T>, b: &WitnessConfiguration<T>) -> bool {
    let tol = T::of(1e-12);
    (a.d_zu - b.d_zu).abs() <= tol
        && (a.d_zv - b.d_zv).abs() <= tol
        && (a.d_uv - b.d_uv).abs() <= tol
        && (a.merged - b.merged).abs() > T::of(WITNESS_SEPARATION)
}

/// Returns the first verified witness within `budget`, or `None` if the
/// budget is exhausted. `None` is not a proof of representability.
pub fn representability_witness<T: Scalar>(
    spec: &OwaLinkageSpec<T>,
    budget: WitnessBudget,
) -> Result<Option<RepresentabilityWitness<T>>> {
    let sep = T::of(WITNESS_SEPARATION);
    let mut cache: Vec<Option<Vec<Vec<T>>>> = vec![None; budget.max_block + 1];
    let mut buf = Vec::new();
    for total in 3..=3 * budget.max_cluster_size {
        for n_z in 1..=budget.max_cluster_size {
            for n_u in 1..=budget.max_cluster_size {
                let Some(n_v) = total.checked_sub(n_z + n_u) else {
                    continue;
                };
                if n_v == 0
                    || n_v > budget.max_cluster_size
                    || n_u * n_z > budget.max_block
                    || n_v * n_z > budget.max_block
                {
                    continue;
                }
                for len in [n_u * n_z, n_v * n_z] {
                    if cache[len].is_none() {
                        cache[len] = Some(normalized(spec, len)?);
                    }
                }
                let pu = cache[n_u * n_z].as_ref().unwrap();
                let pv = cache[n_v * n_z].as_ref().unwrap();
                for q in pv {
                    let mut first: Option<(&Vec<T>, T)> = None;
                    for p in pu {
                        merge_desc(p, q, &mut buf);
                        let value = owa_sorted(spec, &buf)?;
                        match first {
                            None => first = Some((p, value)),
                            Some((p0, v0)) if (value - v0).abs() > sep => {
                                let sizes = (n_u, n_v, n_z);
                                let a = realize(spec, sizes, p0, q)?;
                                let b = realize(spec, sizes, p, q)?;
                                if verified(&a, &b) {
                                    return Ok(Some(RepresentabilityWitness {
                                        n_u,
                                        n_v,
                                        n_z,
                                        first: a,
                                        second: b,
                                    }));
                                }
                            }
                            Some(_) => {}
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}
