//! Intercluster distances: definitional classical linkages, OWA-based
//! linkages and the Lance-Williams recurrence.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::geometry::{squared_norm_of_difference, CondensedDistanceMatrix, PointSet};
use crate::owa::{owa, OwaLinkageSpec};
use crate::sum::{self, CompensatedSum};
use crate::{Error, Result, Scalar};

/// The linkages with tabulated Lance-Williams coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassicalKind {
    Single,
    Complete,
    /// UPGMA.
    Average,
    /// WPGMA.
    WeightedAverage,
    /// UPGMC.
    Centroid,
    /// WPGMC.
    Median,
    Ward,
}

impl ClassicalKind {
    pub const ALL: [ClassicalKind; 7] = [
        ClassicalKind::Single,
        ClassicalKind::Complete,
        ClassicalKind::Average,
        ClassicalKind::WeightedAverage,
        ClassicalKind::Centroid,
        ClassicalKind::Median,
        ClassicalKind::Ward,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassicalKind::Single => "single",
            ClassicalKind::Complete => "complete",
            ClassicalKind::Average => "average",
            ClassicalKind::WeightedAverage => "weighted",
            ClassicalKind::Centroid => "centroid",
            ClassicalKind::Median => "median",
            ClassicalKind::Ward => "ward",
        }
    }

    /// Whether the recurrence is only exact on squared Euclidean distances.
    pub fn squared_mode(self) -> bool {
        matches!(
            self,
            ClassicalKind::Centroid | ClassicalKind::Median | ClassicalKind::Ward
        )
    }

    /// Whether evaluating the linkage needs point coordinates.
    pub fn needs_coordinates(self) -> bool {
        matches!(self, ClassicalKind::Centroid | ClassicalKind::Median)
    }

    /// Tabulated coefficients at cluster sizes `(n_u, n_v, n_z)`.
    pub fn coefficients<T: Scalar>(self, n_u: usize, n_v: usize, n_z: usize) -> Coefficients<T> {
        let half = T::of(0.5);
        let (nu, nv, nz) = (T::of_usize(n_u), T::of_usize(n_v), T::of_usize(n_z));
        let zero = T::zero();
        match self {
            ClassicalKind::Single => Coefficients::new(half, half, zero, -half),
            ClassicalKind::Complete => Coefficients::new(half, half, zero, half),
            ClassicalKind::Average => Coefficients::new(nu / (nu + nv), nv / (nu + nv), zero, zero),
            ClassicalKind::WeightedAverage => Coefficients::new(half, half, zero, zero),
            ClassicalKind::Centroid => {
                let s = nu + nv;
                Coefficients::new(nu / s, nv / s, -(nu * nv) / (s * s), zero)
            }
            ClassicalKind::Median => Coefficients::new(half, half, T::of(-0.25), zero),
            ClassicalKind::Ward => {
                let s = nu + nv + nz;
                Coefficients::new((nu + nz) / s, (nv + nz) / s, -nz / s, zero)
            }
        }
    }
}

impl FromStr for ClassicalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassicalKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::InvalidMethod(format!("unknown linkage `{s}`")))
    }
}

/// `(alpha_u, alpha_v, beta, gamma)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coefficients<T> {
    pub alpha_u: T,
    pub alpha_v: T,
    pub beta: T,
    pub gamma: T,
}

impl<T: Scalar> Coefficients<T> {
    pub fn new(alpha_u: T, alpha_v: T, beta: T, gamma: T) -> Self {
        Coefficients {
            alpha_u,
            alpha_v,
            beta,
            gamma,
        }
    }

    /// Milligan's sufficient conditions for monotone merge heights.
    pub fn satisfies_milligan(&self) -> bool {
        let tol = T::tolerance();
        let sum_ok = self.alpha_u + self.alpha_v + self.beta >= T::one() - tol;
        let alphas_ok = self.alpha_u >= T::zero() && self.alpha_v >= T::zero();
        let gamma_ok =
            self.gamma >= T::zero() || self.gamma.abs() <= self.alpha_u.min(self.alpha_v);
        sum_ok && alphas_ok && gamma_ok
    }
}

type CoefficientFn<T> = dyn Fn(usize, usize, usize) -> Coefficients<T> + Send + Sync;

#[derive(Clone)]
enum Rule<T> {
    Table(ClassicalKind),
    Custom(Arc<CoefficientFn<T>>),
}

/// A Lance-Williams update rule: four coefficient functions of the cluster
/// sizes plus whether the recurrence runs on squared distances.
#[derive(Clone)]
pub struct LanceWilliamsScheme<T> {
    rule: Rule<T>,
    squared_mode: bool,
}

impl<T: Scalar> LanceWilliamsScheme<T> {
    /// The tabulated scheme. Centroid, median and Ward run in squared mode.
    pub fn classical(kind: ClassicalKind) -> Self {
        LanceWilliamsScheme {
            rule: Rule::Table(kind),
            squared_mode: kind.squared_mode(),
        }
    }

    /// A user-defined scheme.
    pub fn custom<F>(coefficients: F, squared_mode: bool) -> Self
    where
        F: Fn(usize, usize, usize) -> Coefficients<T> + Send + Sync + 'static,
    {
        LanceWilliamsScheme {
            rule: Rule::Custom(Arc::new(coefficients)),
            squared_mode,
        }
    }

    /// `None` for custom schemes.
    pub fn kind(&self) -> Option<ClassicalKind> {
        match self.rule {
            Rule::Table(k) => Some(k),
            Rule::Custom(_) => None,
        }
    }

    pub fn squared_mode(&self) -> bool {
        self.squared_mode
    }

    pub fn coefficients(&self, n_u: usize, n_v: usize, n_z: usize) -> Coefficients<T> {
        match &self.rule {
            Rule::Table(kind) => kind.coefficients(n_u, n_v, n_z),
            Rule::Custom(f) => f(n_u, n_v, n_z),
        }
    }

    /// Checks `alpha_u(a, b, z) = alpha_v(b, a, z)` and symmetry of beta
    /// and gamma at the given sizes.
    pub fn is_symmetric_at(&self, n_u: usize, n_v: usize, n_z: usize) -> bool {
        let a = self.coefficients(n_u, n_v, n_z);
        let b = self.coefficients(n_v, n_u, n_z);
        let tol = T::tolerance();
        (a.alpha_u - b.alpha_v).abs() <= tol
            && (a.beta - b.beta).abs() <= tol
            && (a.gamma - b.gamma).abs() <= tol
    }
}

impl<T> fmt::Debug for LanceWilliamsScheme<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rule = match &self.rule {
            Rule::Table(k) => k.name(),
            Rule::Custom(_) => "custom",
        };
        f.debug_struct("LanceWilliamsScheme")
            .field("rule", &rule)
            .field("squared_mode", &self.squared_mode)
            .finish()
    }
}

/// One step of the Lance-Williams recurrence:
/// `alpha_u d_zu + alpha_v d_zv + beta d_uv + gamma |d_zu - d_zv|`.
///
/// In squared mode the distances passed in must already be squared.
pub fn lw_update<T: Scalar>(
    scheme: &LanceWilliamsScheme<T>,
    d_zu: T,
    d_zv: T,
    d_uv: T,
    n_u: usize,
    n_v: usize,
    n_z: usize,
) -> T {
    let c = scheme.coefficients(n_u, n_v, n_z);
    sum::sum([
        c.alpha_u * d_zu,
        c.alpha_v * d_zv,
        c.beta * d_uv,
        c.gamma * (d_zu - d_zv).abs(),
    ])
}

/// A set of observations, optionally carrying the dyadic weights induced
/// by its merge history.
///
/// Weighted-average and median linkages are not functions of the member
/// set alone: every merge gives each half equal weight regardless of size.
/// [`Cluster::merge`] tracks those weights. A cluster created from a bare
/// member list weights members uniformly.
#[derive(Clone, Debug, PartialEq)]
pub struct Cluster<T> {
    members: Vec<usize>,
    weights: Vec<T>,
}

impl<T: Scalar> Cluster<T> {
    pub fn singleton(i: usize) -> Self {
        Cluster {
            members: vec![i],
            weights: vec![T::one()],
        }
    }

    pub fn from_members(members: Vec<usize>) -> Self {
        let w = T::one() / T::of_usize(members.len().max(1));
        let weights = vec![w; members.len()];
        Cluster { members, weights }
    }

    /// Union of two clusters, each half carrying weight one half.
    pub fn merge(a: &Cluster<T>, b: &Cluster<T>) -> Self {
        let half = T::of(0.5);
        let mut members = Vec::with_capacity(a.len() + b.len());
        let mut weights = Vec::with_capacity(a.len() + b.len());
        members.extend_from_slice(&a.members);
        members.extend_from_slice(&b.members);
        weights.extend(a.weights.iter().map(|&w| w * half));
        weights.extend(b.weights.iter().map(|&w| w * half));
        Cluster { members, weights }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Distances plus (optionally) the coordinates they came from.
#[derive(Clone, Debug)]
pub struct Dataset<T> {
    distances: CondensedDistanceMatrix<T>,
    squared: CondensedDistanceMatrix<T>,
    points: Option<PointSet<T>>,
}

impl<T: Scalar> Dataset<T> {
    pub fn from_points(points: PointSet<T>) -> Self {
        let distances = crate::geometry::euclidean_distances(&points);
        let n = points.len();
        let mut sq = Vec::with_capacity(distances.values().len());
        for i in 0..n {
            for j in i + 1..n {
                sq.push(points.squared_distance(i, j));
            }
        }
        let squared = CondensedDistanceMatrix::new(n, sq).expect("squared distances valid");
        Dataset {
            distances,
            squared,
            points: Some(points),
        }
    }

    pub fn from_distances(distances: CondensedDistanceMatrix<T>) -> Self {
        let squared = distances.squared();
        Dataset {
            distances,
            squared,
            points: None,
        }
    }

    pub fn n(&self) -> usize {
        self.distances.n()
    }

    pub fn distances(&self) -> &CondensedDistanceMatrix<T> {
        &self.distances
    }

    /// Squared distances. Exact squared norms when coordinates are known.
    pub fn squared_distances(&self) -> &CondensedDistanceMatrix<T> {
        &self.squared
    }

    pub fn points(&self) -> Option<&PointSet<T>> {
        self.points.as_ref()
    }
}

fn check_pair(n: usize, a: &[usize], b: &[usize]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidClusters("clusters must be nonempty".into()));
    }
    if let Some(&i) = a.iter().chain(b).find(|&&i| i >= n) {
        return Err(Error::InvalidClusters(format!(
            "index {i} out of range for {n} objects"
        )));
    }
    let mut seen = vec![false; n];
    for &i in a {
        seen[i] = true;
    }
    if let Some(&i) = b.iter().find(|&&i| seen[i]) {
        return Err(Error::InvalidClusters(format!(
            "index {i} appears in both clusters"
        )));
    }
    Ok(())
}

/// All `|A| * |B|` distances between members of `a` and members of `b`,
/// in row-major order over `(a, b)`.
pub fn pairwise_block<T: Scalar>(
    dm: &CondensedDistanceMatrix<T>,
    a: &[usize],
    b: &[usize],
) -> Result<Vec<T>> {
    check_pair(dm.n(), a, b)?;
    Ok(block_unchecked(dm, a, b))
}

pub(crate) fn block_unchecked<T: Scalar>(
    dm: &CondensedDistanceMatrix<T>,
    a: &[usize],
    b: &[usize],
) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &i in a {
        for &j in b {
            out.push(dm.get(i, j));
        }
    }
    out
}

/// OWA of the pairwise distance block between `a` and `b`.
pub fn owa_linkage<T: Scalar>(
    spec: &OwaLinkageSpec<T>,
    dm: &CondensedDistanceMatrix<T>,
    a: &[usize],
    b: &[usize],
) -> Result<T> {
    owa(spec, &pairwise_block(dm, a, b)?)
}

/// Definitional value of a classical linkage, in reported units.
pub fn classical_linkage<T: Scalar>(
    kind: ClassicalKind,
    data: &Dataset<T>,
    a: &Cluster<T>,
    b: &Cluster<T>,
) -> Result<T> {
    let v = classical_linkage_internal(kind, data, a, b)?;
    Ok(if kind.squared_mode() { v.sqrt() } else { v })
}

/// Definitional value in the units the recurrence works in: squared
/// distances for centroid, median and Ward, plain distances otherwise.
pub(crate) fn classical_linkage_internal<T: Scalar>(
    kind: ClassicalKind,
    data: &Dataset<T>,
    a: &Cluster<T>,
    b: &Cluster<T>,
) -> Result<T> {
    check_pair(data.n(), a.members(), b.members())?;
    let dm = data.distances();
    let pairs = || {
        a.members()
            .iter()
            .flat_map(move |&i| b.members().iter().map(move |&j| (i, j)))
    };
    let value = match kind {
        ClassicalKind::Single => pairs()
            .map(|(i, j)| dm.get(i, j))
            .fold(T::infinity(), T::min),
        ClassicalKind::Complete => pairs()
            .map(|(i, j)| dm.get(i, j))
            .fold(T::neg_infinity(), T::max),
        ClassicalKind::Average => {
            sum::sum(pairs().map(|(i, j)| dm.get(i, j))) / T::of_usize(a.len() * b.len())
        }
        ClassicalKind::WeightedAverage => {
            let mut acc = CompensatedSum::new();
            for (x, &wa) in a.members().iter().zip(&a.weights) {
                for (y, &wb) in b.members().iter().zip(&b.weights) {
                    acc.add(wa * wb * dm.get(*x, *y));
                }
            }
            acc.value()
        }
        ClassicalKind::Ward => ward_from_pairs(data.squared_distances(), a.members(), b.members()),
        ClassicalKind::Centroid | ClassicalKind::Median => {
            let points = data.points().ok_or(Error::CoordinatesRequired {
                method: kind.name(),
            })?;
            let (wa, wb) = if kind == ClassicalKind::Centroid {
                (
                    Cluster::<T>::from_members(a.members().to_vec()).weights,
                    Cluster::<T>::from_members(b.members().to_vec()).weights,
                )
            } else {
                (a.weights.clone(), b.weights.clone())
            };
            let ca = weighted_centre(points, a.members(), &wa);
            let cb = weighted_centre(points, b.members(), &wb);
            squared_norm_of_difference(&ca, &cb)
        }
    };
    Ok(value)
}

/// Ward's criterion from pairwise squared distances:
/// `2/(nu+nv) S_AB - nv/(nu(nu+nv)) S_AA - nu/(nv(nu+nv)) S_BB`, where the
/// within-cluster sums run over ordered pairs. Equals
/// `2 nu nv/(nu+nv) |mu_A - mu_B|^2` for Euclidean data.
fn ward_from_pairs<T: Scalar>(sq: &CondensedDistanceMatrix<T>, a: &[usize], b: &[usize]) -> T {
    let nu = T::of_usize(a.len());
    let nv = T::of_usize(b.len());
    let cross = sum::sum(block_unchecked(sq, a, b));
    let within = |c: &[usize]| {
        let mut acc = CompensatedSum::new();
        for (p, &i) in c.iter().enumerate() {
            for &j in &c[p + 1..] {
                acc.add(sq.get(i, j));
            }
        }
        acc.value() * T::of(2.0)
    };
    let s = nu + nv;
    let value = sum::sum([
        T::of(2.0) / s * cross,
        -(nv / (nu * s)) * within(a),
        -(nu / (nv * s)) * within(b),
    ]);
    value.max(T::zero())
}

fn weighted_centre<T: Scalar>(points: &PointSet<T>, members: &[usize], weights: &[T]) -> Vec<T> {
    (0..points.dim())
        .map(|k| {
            sum::sum(
                members
                    .iter()
                    .zip(weights)
                    .map(|(&i, &w)| w * points.point(i)[k]),
            )
        })
        .collect()
}

/// Which intercluster distance drives the merges.
#[derive(Clone, Debug)]
pub enum Linkage<T> {
    /// A Lance-Williams scheme, tabulated or custom.
    Classical(LanceWilliamsScheme<T>),
    Owa(OwaLinkageSpec<T>),
}

/// How intercluster distances are refreshed after each merge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Evaluate the linkage definition from the merged members.
    Recompute,
    /// Lance-Williams recurrence for classical schemes; for OWA linkages,
    /// merge the two sorted distance blocks and aggregate once.
    Incremental,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "recompute" => Ok(Strategy::Recompute),
            "incremental" => Ok(Strategy::Incremental),
            other => Err(Error::InvalidMethod(format!(
                "unknown strategy `{other}`, expected `recompute` or `incremental`"
            ))),
        }
    }
}

/// A linkage plus an evaluation strategy.
#[derive(Clone, Debug)]
pub struct LinkageMethod<T> {
    pub linkage: Linkage<T>,
    pub strategy: Strategy,
}

impl<T: Scalar> LinkageMethod<T> {
    pub fn new(linkage: Linkage<T>, strategy: Strategy) -> Self {
        LinkageMethod { linkage, strategy }
    }

    pub fn classical(kind: ClassicalKind, strategy: Strategy) -> Self {
        Self::new(
            Linkage::Classical(LanceWilliamsScheme::classical(kind)),
            strategy,
        )
    }

    pub fn owa(spec: OwaLinkageSpec<T>, strategy: Strategy) -> Self {
        Self::new(Linkage::Owa(spec), strategy)
    }

    /// Parses the method grammar
    /// `single|complete|average|weighted|centroid|median|ward|owa:<hi|lo>:<sequence>`.
    pub fn parse(method: &str, strategy: Strategy) -> Result<Self> {
        Ok(Self::new(method.parse()?, strategy))
    }

    pub fn with_strategy(&self, strategy: Strategy) -> Self {
        Self::new(self.linkage.clone(), strategy)
    }
}

impl<T: Scalar> FromStr for Linkage<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_prefix("owa:") {
            Some(rest) => Ok(Linkage::Owa(rest.parse()?)),
            None => Ok(Linkage::Classical(LanceWilliamsScheme::classical(
                s.parse()?,
            ))),
        }
    }
}

impl<T: Scalar> fmt::Display for Linkage<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Linkage::Classical(scheme) => match scheme.kind() {
                Some(k) => f.write_str(k.name()),
                None => f.write_str("custom"),
            },
            Linkage::Owa(spec) => write!(f, "owa:{spec}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::owa::{CoefficientSequence, Orientation};

    fn four_points() -> CondensedDistanceMatrix<f64> {
        CondensedDistanceMatrix::from_square(&[
            vec![0.0, 0.4, 0.6, 0.9],
            vec![0.4, 0.0, 0.9, 0.6],
            vec![0.6, 0.9, 0.0, 0.7],
            vec![0.9, 0.6, 0.7, 0.0],
        ])
        .unwrap()
    }

    fn seq(s: &str) -> CoefficientSequence<f64> {
        s.parse().unwrap()
    }

    #[test]
    fn blocks() {
        let dm = four_points();
        assert_eq!(pairwise_block(&dm, &[0], &[1]).unwrap(), vec![0.4]);
        assert_eq!(
            pairwise_block(&dm, &[0, 1], &[2, 3]).unwrap(),
            vec![0.6, 0.9, 0.9, 0.6]
        );
        let ps = PointSet::new((0..5).map(|i| vec![i as f64]).collect()).unwrap();
        let dm5 = crate::geometry::euclidean_distances(&ps);
        assert_eq!(pairwise_block(&dm5, &[0, 1], &[2, 3, 4]).unwrap().len(), 6);
    }

    #[test]
    fn block_rejects_overlap_and_range() {
        let dm = four_points();
        assert!(matches!(
            pairwise_block(&dm, &[0, 1], &[1]),
            Err(Error::InvalidClusters(_))
        ));
        assert!(matches!(
            pairwise_block(&dm, &[0], &[4]),
            Err(Error::InvalidClusters(_))
        ));
        assert!(pairwise_block(&dm, &[], &[1]).is_err());
    }

    #[test]
    fn owa_linkages_on_four_points() {
        let dm = four_points();
        let two_smallest = OwaLinkageSpec::smallest_first(seq("1,1;zero"));
        assert!((owa_linkage(&two_smallest, &dm, &[0, 1], &[2, 3]).unwrap() - 0.6).abs() < 1e-15);
        let max = OwaLinkageSpec::largest_first(seq("1,0"));
        assert_eq!(owa_linkage(&max, &dm, &[0, 1], &[2, 3]).unwrap(), 0.9);
        for o in [Orientation::LargestFirst, Orientation::SmallestFirst] {
            let mean = OwaLinkageSpec::new(seq("1;repeat"), o);
            assert!((owa_linkage(&mean, &dm, &[0, 1], &[2, 3]).unwrap() - 0.75).abs() < 1e-15);
        }
    }

    #[test]
    fn classical_definitions() {
        let data = Dataset::from_distances(four_points());
        let a = Cluster::from_members(vec![0, 1]);
        let b = Cluster::from_members(vec![2, 3]);
        assert_eq!(
            classical_linkage(ClassicalKind::Single, &data, &a, &b).unwrap(),
            0.6
        );
        assert_eq!(
            classical_linkage(ClassicalKind::Complete, &data, &a, &b).unwrap(),
            0.9
        );
        assert!(matches!(
            classical_linkage(ClassicalKind::Centroid, &data, &a, &b),
            Err(Error::CoordinatesRequired { .. })
        ));

        let ps = PointSet::new(vec![
            vec![0.0, 0.0],
            vec![2.0, 0.0],
            vec![0.0, 3.0],
            vec![2.0, 3.0],
        ])
        .unwrap();
        let data = Dataset::from_points(ps);
        let c = classical_linkage(ClassicalKind::Centroid, &data, &a, &b).unwrap();
        assert!((c - 3.0).abs() < 1e-15);
    }

    #[test]
    fn ward_matches_centroid_form() {
        // 2 nu nv / (nu + nv) |mu_A - mu_B|^2 with centroids (1,0) and (1,3)
        let ps = PointSet::<f64>::new(vec![
            vec![0.0, 0.0],
            vec![2.0, 0.0],
            vec![0.0, 3.0],
            vec![2.0, 3.0],
            vec![1.0, 4.0],
        ])
        .unwrap();
        let data = Dataset::from_points(ps);
        let a = Cluster::from_members(vec![0, 1]);
        let b = Cluster::from_members(vec![2, 3]);
        let w = classical_linkage(ClassicalKind::Ward, &data, &a, &b).unwrap();
        assert!((w * w - 2.0 * 2.0 * 2.0 / 4.0 * 9.0).abs() < 1e-12);
        // singletons reduce to the plain distance
        let s = classical_linkage(
            ClassicalKind::Ward,
            &data,
            &Cluster::singleton(0),
            &Cluster::singleton(4),
        )
        .unwrap();
        assert!((s - 17f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn weighted_average_uses_merge_history() {
        let ps = PointSet::<f64>::new(vec![vec![0.0], vec![1.0], vec![3.0], vec![10.0]]).unwrap();
        let data = Dataset::from_points(ps);
        let ab = Cluster::merge(&Cluster::singleton(0), &Cluster::singleton(1));
        let abc = Cluster::merge(&ab, &Cluster::singleton(2));
        let z = Cluster::singleton(3);
        // ((10 + 9) / 2 + 7) / 2
        let got = classical_linkage(ClassicalKind::WeightedAverage, &data, &abc, &z).unwrap();
        assert!((got - 8.25).abs() < 1e-15);
        let avg = classical_linkage(ClassicalKind::Average, &data, &abc, &z).unwrap();
        assert!((avg - 26.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn lw_table_examples() {
        let single = LanceWilliamsScheme::<f64>::classical(ClassicalKind::Single);
        let complete = LanceWilliamsScheme::<f64>::classical(ClassicalKind::Complete);
        let average = LanceWilliamsScheme::<f64>::classical(ClassicalKind::Average);
        assert_eq!(lw_update(&single, 3.0, 5.0, 1.234, 1, 1, 1), 3.0);
        assert_eq!(lw_update(&complete, 3.0, 5.0, 1.234, 1, 1, 1), 5.0);
        assert_eq!(lw_update(&average, 4.0, 8.0, 1.234, 1, 3, 2), 7.0);
    }

    #[test]
    fn table_coefficients() {
        let c = ClassicalKind::Ward.coefficients::<f64>(1, 2, 3);
        assert_eq!(c, Coefficients::new(4.0 / 6.0, 5.0 / 6.0, -0.5, 0.0));
        let c = ClassicalKind::Centroid.coefficients::<f64>(1, 3, 7);
        assert_eq!(c, Coefficients::new(0.25, 0.75, -3.0 / 16.0, 0.0));
        let c = ClassicalKind::Median.coefficients::<f64>(5, 3, 7);
        assert_eq!(c, Coefficients::new(0.5, 0.5, -0.25, 0.0));
    }

    #[test]
    fn table_schemes_are_symmetric() {
        for kind in ClassicalKind::ALL {
            let s = LanceWilliamsScheme::<f64>::classical(kind);
            for nu in 1..6 {
                for nv in 1..6 {
                    for nz in 1..6 {
                        assert!(s.is_symmetric_at(nu, nv, nz), "{kind:?}");
                    }
                }
            }
        }
        let lopsided = LanceWilliamsScheme::<f64>::custom(
            |nu, _, _| Coefficients::new(1.0 / nu as f64, 0.5, 0.0, 0.0),
            false,
        );
        assert!(!lopsided.is_symmetric_at(1, 2, 1));
    }

    #[test]
    fn milligan_conditions_by_kind() {
        use ClassicalKind::*;
        for kind in [Single, Complete, Average, WeightedAverage, Ward] {
            for (nu, nv, nz) in [(1, 1, 1), (2, 5, 3), (7, 1, 4)] {
                assert!(
                    kind.coefficients::<f64>(nu, nv, nz).satisfies_milligan(),
                    "{kind:?}"
                );
            }
        }
        assert!(!Centroid.coefficients::<f64>(1, 1, 1).satisfies_milligan());
        assert!(!Median.coefficients::<f64>(1, 1, 1).satisfies_milligan());
    }

    #[test]
    fn method_grammar() {
        for name in [
            "single", "complete", "average", "weighted", "centroid", "median", "ward",
        ] {
            let l: Linkage<f64> = name.parse().unwrap();
            assert_eq!(l.to_string(), name);
        }
        let l: Linkage<f64> = "owa:lo:1,1;zero".parse().unwrap();
        assert_eq!(l.to_string(), "owa:lo:1,1;zero");
        assert!("owa:x:1".parse::<Linkage<f64>>().is_err());
        assert!("upgma".parse::<Linkage<f64>>().is_err());
        assert!("owa:hi:2,1".parse::<Linkage<f64>>().is_err());
        assert_eq!(
            "recompute".parse::<Strategy>().unwrap(),
            Strategy::Recompute
        );
        assert!("lazy".parse::<Strategy>().is_err());
    }
}
