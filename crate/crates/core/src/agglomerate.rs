//! The agglomerative loop.
//!
//! Each step scans every active cluster pair, merges the pair with the
//! smallest linkage value (ties broken by the lexicographically smallest
//! `(min id, max id)`), then refreshes the distances from the merged
//! cluster to every other active cluster. The scan is quadratic in the
//! number of active clusters; no nearest-neighbour chain shortcut is used
//! because OWA linkages need not be reducible.

use std::cmp::Ordering;

use crate::dendrogram::{Dendrogram, InversionReport, MergeRecord};
use crate::geometry::condensed_index;
use crate::linkage::{
    block_unchecked, classical_linkage_internal, lw_update, Cluster, Dataset, LanceWilliamsScheme,
    Linkage, LinkageMethod, Strategy,
};
use crate::owa::{owa_sorted, sort_descending, OwaLinkageSpec};
use crate::{Error, Result, Scalar};

/// Distances from a freshly merged cluster to every cluster left intact.
#[derive(Clone, Debug, PartialEq)]
pub struct StepTrace<T> {
    pub step: usize,
    pub merged_id: usize,
    pub height: T,
    /// `(cluster id, distance to the merged cluster)` in reported units.
    pub updates: Vec<(usize, T)>,
}

enum Refresh<'a, T> {
    LanceWilliams(&'a LanceWilliamsScheme<T>),
    Definitional(crate::linkage::ClassicalKind),
    OwaRecompute(&'a OwaLinkageSpec<T>),
    /// Sorted (descending) distance block per active pair.
    OwaSortedMerge(&'a OwaLinkageSpec<T>, Vec<Vec<T>>),
}

struct Engine<'a, T> {
    data: &'a Dataset<T>,
    n: usize,
    active: Vec<bool>,
    ids: Vec<usize>,
    clusters: Vec<Cluster<T>>,
    /// Current linkage values between slots, squared in squared mode.
    dist: Vec<T>,
    squared: bool,
    refresh: Refresh<'a, T>,
}

impl<'a, T: Scalar> Engine<'a, T> {
    fn new(data: &'a Dataset<T>, method: &'a LinkageMethod<T>) -> Result<Self> {
        let n = data.n();
        if n < 2 {
            return Err(Error::InvalidArgument(
                "clustering needs at least two objects".into(),
            ));
        }
        let (refresh, squared) = match (&method.linkage, method.strategy) {
            (Linkage::Classical(scheme), strategy) => {
                if let Some(kind) = scheme.kind() {
                    if kind.needs_coordinates() && data.points().is_none() {
                        return Err(Error::CoordinatesRequired {
                            method: kind.name(),
                        });
                    }
                }
                let refresh = match strategy {
                    Strategy::Incremental => Refresh::LanceWilliams(scheme),
                    Strategy::Recompute => {
                        Refresh::Definitional(scheme.kind().ok_or_else(|| {
                            Error::Unsupported(
                            "custom Lance-Williams schemes have no definitional form to recompute"
                                .into(),
                        )
                        })?)
                    }
                };
                (refresh, scheme.squared_mode())
            }
            (Linkage::Owa(spec), Strategy::Recompute) => (Refresh::OwaRecompute(spec), false),
            (Linkage::Owa(spec), Strategy::Incremental) => {
                let blocks = data.distances().values().iter().map(|&d| vec![d]).collect();
                (Refresh::OwaSortedMerge(spec, blocks), false)
            }
        };
        let dist = if squared {
            data.squared_distances().values().to_vec()
        } else {
            data.distances().values().to_vec()
        };
        Ok(Engine {
            data,
            n,
            active: vec![true; n],
            ids: (0..n).collect(),
            clusters: (0..n).map(Cluster::singleton).collect(),
            dist,
            squared,
            refresh,
        })
    }

    #[inline]
    fn idx(&self, a: usize, b: usize) -> usize {
        if a < b {
            condensed_index(self.n, a, b)
        } else {
            condensed_index(self.n, b, a)
        }
    }

    fn report(&self, v: T) -> T {
        if self.squared {
            v.max(T::zero()).sqrt()
        } else {
            v
        }
    }

    fn id_pair(&self, a: usize, b: usize) -> (usize, usize) {
        let (x, y) = (self.ids[a], self.ids[b]);
        (x.min(y), x.max(y))
    }

    fn closest_pair(&self) -> (usize, usize) {
        let mut best: Option<(usize, usize, T, (usize, usize))> = None;
        for a in 0..self.n {
            if !self.active[a] {
                continue;
            }
            for b in a + 1..self.n {
                if !self.active[b] {
                    continue;
                }
                let v = self.dist[condensed_index(self.n, a, b)];
                let key = self.id_pair(a, b);
                let better = match &best {
                    None => true,
                    Some((_, _, bv, bkey)) => match v.cmp_finite(bv) {
                        Ordering::Less => true,
                        Ordering::Equal => key < *bkey,
                        Ordering::Greater => false,
                    },
                };
                if better {
                    best = Some((a, b, v, key));
                }
            }
        }
        let (a, b, _, _) = best.expect("at least two active clusters");
        (a, b)
    }

    fn step(&mut self, step: usize) -> Result<(MergeRecord<T>, StepTrace<T>)> {
        let (a, b) = self.closest_pair();
        let d_ab = self.dist[condensed_index(self.n, a, b)];
        let (left_id, right_id) = self.id_pair(a, b);
        let merged = Cluster::merge(&self.clusters[a], &self.clusters[b]);
        let (size_a, size_b) = (self.clusters[a].len(), self.clusters[b].len());
        let new_id = self.n - 1 + step;

        let mut updates = Vec::new();
        for z in 0..self.n {
            if !self.active[z] || z == a || z == b {
                continue;
            }
            let iza = self.idx(z, a);
            let izb = self.idx(z, b);
            let value = match &mut self.refresh {
                Refresh::LanceWilliams(scheme) => lw_update(
                    scheme,
                    self.dist[iza],
                    self.dist[izb],
                    d_ab,
                    size_a,
                    size_b,
                    self.clusters[z].len(),
                ),
                Refresh::Definitional(kind) => {
                    classical_linkage_internal(*kind, self.data, &self.clusters[z], &merged)?
                }
                Refresh::OwaRecompute(spec) => {
                    let mut block = block_unchecked(
                        self.data.distances(),
                        self.clusters[z].members(),
                        merged.members(),
                    );
                    sort_descending(&mut block);
                    owa_sorted(spec, &block)?
                }
                Refresh::OwaSortedMerge(spec, blocks) => {
                    let za = std::mem::take(&mut blocks[iza]);
                    let zb = std::mem::take(&mut blocks[izb]);
                    let block = merge_descending(&za, &zb);
                    let value = owa_sorted(spec, &block)?;
                    blocks[iza] = block;
                    value
                }
            };
            self.dist[iza] = value;
            updates.push((self.ids[z], self.report(value)));
        }
        if let Refresh::OwaSortedMerge(_, blocks) = &mut self.refresh {
            let iab = condensed_index(self.n, a, b);
            blocks[iab] = Vec::new();
        }

        self.active[b] = false;
        self.clusters[a] = merged;
        self.clusters[b] = Cluster::from_members(Vec::new());
        self.ids[a] = new_id;

        let height = self.report(d_ab);
        let record = MergeRecord {
            step,
            left_id,
            right_id,
            height,
            new_size: size_a + size_b,
        };
        let trace = StepTrace {
            step,
            merged_id: new_id,
            height,
            updates,
        };
        Ok((record, trace))
    }
}

/// Merges two descending runs into one descending run.
pub(crate) fn merge_descending<T: Scalar>(x: &[T], y: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        if x[i] >= y[j] {
            out.push(x[i]);
            i += 1;
        } else {
            out.push(y[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    out
}

/// Runs the agglomerative procedure and records, for every step, the
/// refreshed distances from the merged cluster.
pub fn cluster_traced<T: Scalar>(
    data: &Dataset<T>,
    method: &LinkageMethod<T>,
) -> Result<(Dendrogram<T>, Vec<StepTrace<T>>)> {
    let mut engine = Engine::new(data, method)?;
    let n = data.n();
    let mut merges = Vec::with_capacity(n - 1);
    let mut traces = Vec::with_capacity(n - 1);
    for step in 1..n {
        let (record, trace) = engine.step(step)?;
        merges.push(record);
        traces.push(trace);
    }
    Ok((Dendrogram::new(n, merges, method.clone()), traces))
}

/// Runs the agglomerative procedure.
pub fn cluster<T: Scalar>(data: &Dataset<T>, method: &LinkageMethod<T>) -> Result<Dendrogram<T>> {
    cluster_traced(data, method).map(|(d, _)| d)
}

/// A step at which some intact cluster ended up closer to the merged
/// cluster than the merged pair were to each other.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepViolation<T> {
    pub step: usize,
    pub height: T,
    pub cluster_id: usize,
    pub distance: T,
}

/// Outcome of checking, on one run, that heights are monotone exactly
/// when every merged cluster stays at least as far from all intact
/// clusters as the merge height.
#[derive(Clone, Debug)]
pub struct MonotonicityCertificate<T> {
    pub epsilon: T,
    pub violations: Vec<StepViolation<T>>,
    pub inversions: InversionReport<T>,
    /// A violation at step `j` must coincide with an inversion at `j + 1`
    /// and vice versa.
    pub consistent: bool,
}

impl<T: Scalar> MonotonicityCertificate<T> {
    pub fn condition_holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn monotonicity_certificate<T: Scalar>(
    data: &Dataset<T>,
    method: &LinkageMethod<T>,
    epsilon: T,
) -> Result<MonotonicityCertificate<T>> {
    let (dendrogram, traces) = cluster_traced(data, method)?;
    Ok(certify(&dendrogram, &traces, epsilon))
}

/// Checks the per-step condition on a recorded run.
pub fn certify<T: Scalar>(
    dendrogram: &Dendrogram<T>,
    traces: &[StepTrace<T>],
    epsilon: T,
) -> MonotonicityCertificate<T> {
    let mut violations = Vec::new();
    for t in traces {
        for &(cluster_id, distance) in &t.updates {
            if distance < t.height - epsilon {
                violations.push(StepViolation {
                    step: t.step,
                    height: t.height,
                    cluster_id,
                    distance,
                });
            }
        }
    }
    let inversions = dendrogram.detect_inversions(epsilon);
    let mut violated_steps: Vec<usize> = violations.iter().map(|v| v.step + 1).collect();
    violated_steps.dedup();
    let inverted_steps: Vec<usize> = inversions.inversions.iter().map(|i| i.step).collect();
    MonotonicityCertificate {
        epsilon,
        consistent: violated_steps == inverted_steps,
        violations,
        inversions,
    }
}

/// Agreement between the two refresh strategies for one linkage.
#[derive(Clone, Debug, PartialEq)]
pub struct StrategyComparison<T> {
    pub steps: usize,
    pub max_height_difference: T,
    /// First step whose merged pair differs between the runs.
    pub first_divergence: Option<usize>,
}

/// Clusters `data` under both strategies and compares the histories.
pub fn compare_strategies<T: Scalar>(
    data: &Dataset<T>,
    method: &LinkageMethod<T>,
) -> Result<StrategyComparison<T>> {
    let a = cluster(data, &method.with_strategy(Strategy::Recompute))?;
    let b = cluster(data, &method.with_strategy(Strategy::Incremental))?;
    let mut max = T::zero();
    let mut first_divergence = None;
    for (x, y) in a.merges().iter().zip(b.merges()) {
        max = max.max((x.height - y.height).abs());
        if first_divergence.is_none() && (x.left_id, x.right_id) != (y.left_id, y.right_id) {
            first_divergence = Some(x.step);
        }
    }
    Ok(StrategyComparison {
        steps: a.merges().len(),
        max_height_difference: max,
        first_divergence,
    })
}
