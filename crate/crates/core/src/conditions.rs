//! Necessary and sufficient conditions on coefficient sequences for the
//! largest-first OWA linkage to produce monotone merge heights.
//!
//! All checks are evaluated in cross-multiplied form (products of partial
//! sums), so no ratio ever divides by zero. A comparison fails only when
//! it is violated by more than the scalar tolerance; smaller violations
//! are counted as boundary cases.
//!
//! Infinite sequences are checked up to a bound `M` on the arities
//! involved. For a zero-tail sequence with support `s` the verdict is
//! exact once `M >= 2s`; otherwise it is labelled bounded.

use std::fmt;

use crate::owa::{e_bar, owa, CoefficientSequence, OwaLinkageSpec, TailPolicy};
use crate::sum::CompensatedSum;
use crate::{Error, Result, Scalar};

/// Default bound used for sequences with an infinite nonzero tail.
pub const DEFAULT_INFINITE_BOUND: usize = 64;

/// Default arity bound for the counterexample search.
pub const DEFAULT_SEARCH_BOUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionId {
    /// `c_2 >= c_3 >= ... >= 0`.
    NecMonotone,
    /// `S(l) S(m+1..2m) <= S(l+1..2l) S(m)` for `l <= m`.
    NecRatio,
    /// The guarded inequality over `(k, l, n, m)` obtained from the
    /// `e_bar` test vectors.
    NecGeneral,
    /// `S(n+1..n+l) S(m) >= S(n+1..n+m) S(l)` for all `n` and `l < m`.
    SufMain,
    /// `SufMain` with the leading tail coefficient `c_{n+1}` optionally
    /// replaced by some `c_k`, `k < n`.
    SufWeakened,
    /// `c_i c_{i+2} <= c_{i+1}^2`: consecutive ratios increasing.
    RatioIncreasing,
}

impl ConditionId {
    pub const ALL: [ConditionId; 6] = [
        ConditionId::NecMonotone,
        ConditionId::NecRatio,
        ConditionId::NecGeneral,
        ConditionId::SufMain,
        ConditionId::SufWeakened,
        ConditionId::RatioIncreasing,
    ];

    pub fn key(self) -> &'static str {
        match self {
            ConditionId::NecMonotone => "nec_monotone",
            ConditionId::NecRatio => "nec_ratio",
            ConditionId::NecGeneral => "nec_general",
            ConditionId::SufMain => "suf_main",
            ConditionId::SufWeakened => "suf_weakened",
            ConditionId::RatioIncreasing => "ratio_increasing",
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    /// The hypothesis (`c` nonincreasing from `c_2`) does not hold.
    Inapplicable,
}

/// The first failed inequality `lhs >= rhs`, with the indices that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation<T> {
    pub indices: Vec<(&'static str, usize)>,
    pub lhs: T,
    pub rhs: T,
    /// Consecutive ratios `c_1/c_2, c_2/c_3, ...` up to the failing triple;
    /// only filled for [`ConditionId::RatioIncreasing`].
    pub ratios: Vec<T>,
}

impl<T> Violation<T> {
    pub fn index(&self, name: &str) -> Option<usize> {
        self.indices
            .iter()
            .find(|(k, _)| *k == name)
            .map(|&(_, v)| v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionVerdict<T> {
    pub condition: ConditionId,
    pub status: Status,
    pub checked_bound: usize,
    /// True when the verdict only covers arities up to `checked_bound`.
    pub bounded: bool,
    pub violation: Option<Violation<T>>,
    /// Comparisons violated by no more than the tolerance.
    pub boundary_cases: usize,
}

impl<T> ConditionVerdict<T> {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

/// `c_1..c_len` with exact-as-possible range sums.
struct Table<T> {
    c: Vec<T>,
    /// `range[a][b - a] = sum_{i=a}^{b} c_i` for `1 <= a <= b <= len`.
    range: Vec<Vec<T>>,
}

impl<T: Scalar> Table<T> {
    fn new(seq: &CoefficientSequence<T>, len: usize) -> Self {
        let mut c = vec![T::zero()];
        c.extend((1..=len).map(|i| seq.coefficient(i)));
        let mut range = vec![Vec::new()];
        for a in 1..=len {
            let mut acc = CompensatedSum::new();
            let row = (a..=len)
                .map(|b| {
                    acc.add(c[b]);
                    acc.value()
                })
                .collect();
            range.push(row);
        }
        Table { c, range }
    }

    #[inline]
    fn c(&self, i: usize) -> T {
        self.c[i]
    }

    /// `sum_{i=a}^{b} c_i`, zero when empty.
    #[inline]
    fn r(&self, a: usize, b: usize) -> T {
        if a > b {
            T::zero()
        } else {
            self.range[a][b - a]
        }
    }

    #[inline]
    fn s(&self, k: usize) -> T {
        self.r(1, k)
    }
}

/// Collects the first violation and counts boundary cases.
struct Scan<T> {
    tol: T,
    violation: Option<Violation<T>>,
    boundary: usize,
}

impl<T: Scalar> Scan<T> {
    fn new() -> Self {
        Scan {
            tol: T::tolerance(),
            violation: None,
            boundary: 0,
        }
    }

    /// Records `lhs >= rhs`. Returns false on a genuine violation.
    fn check(&mut self, lhs: T, rhs: T, indices: &[(&'static str, usize)]) -> bool {
        let deficit = rhs - lhs;
        if deficit > self.tol {
            if self.violation.is_none() {
                self.violation = Some(Violation {
                    indices: indices.to_vec(),
                    lhs,
                    rhs,
                    ratios: Vec::new(),
                });
            }
            false
        } else {
            if deficit > T::zero() {
                self.boundary += 1;
            }
            true
        }
    }

    fn finish(self, condition: ConditionId, bound: usize, bounded: bool) -> ConditionVerdict<T> {
        ConditionVerdict {
            condition,
            status: if self.violation.is_some() {
                Status::Fails
            } else {
                Status::Holds
            },
            checked_bound: bound,
            bounded,
            violation: self.violation,
            boundary_cases: self.boundary,
        }
    }
}

/// Bound at which checks on `c` become exact, or the default for
/// sequences with infinite support.
pub fn default_bound<T: Scalar>(c: &CoefficientSequence<T>) -> usize {
    match c.support() {
        Some(s) => 2 * s.max(1) + 2,
        None => DEFAULT_INFINITE_BOUND,
    }
}

fn is_bounded<T: Scalar>(c: &CoefficientSequence<T>, bound: usize) -> bool {
    match (c.tail(), c.support()) {
        (TailPolicy::Zero, Some(s)) | (TailPolicy::RepeatLast, Some(s)) => bound < 2 * s,
        (_, None) => true,
    }
}

fn require_bound(bound: usize, min: usize) -> Result<()> {
    if bound < min {
        Err(Error::InvalidArgument(format!(
            "bound must be at least {min}, got {bound}"
        )))
    } else {
        Ok(())
    }
}

/// `c_i >= c_{i+1}` for `2 <= i < M`.
pub fn check_nec_monotone<T: Scalar>(
    c: &CoefficientSequence<T>,
    bound: usize,
) -> Result<ConditionVerdict<T>> {
    require_bound(bound, 3)?;
    let t = Table::new(c, bound);
    let mut scan = Scan::new();
    for i in 2..bound {
        if !scan.check(t.c(i), t.c(i + 1), &[("i", i)]) {
            break;
        }
    }
    Ok(scan.finish(ConditionId::NecMonotone, bound, is_bounded(c, bound)))
}

/// `S(l) * sum_{m+1}^{2m} c <= sum_{l+1}^{2l} c * S(m)` for `1 <= l <= m <= M/2`.
pub fn check_nec_ratio<T: Scalar>(
    c: &CoefficientSequence<T>,
    bound: usize,
) -> Result<ConditionVerdict<T>> {
    require_bound(bound, 2)?;
    let t = Table::new(c, bound);
    let mut scan = Scan::new();
    'outer: for m in 1..=bound / 2 {
        for l in 1..=m {
            let lhs = t.r(l + 1, 2 * l) * t.s(m);
            let rhs = t.s(l) * t.r(m + 1, 2 * m);
            if !scan.check(lhs, rhs, &[("l", l), ("m", m)]) {
                break 'outer;
            }
        }
    }
    Ok(scan.finish(ConditionId::NecRatio, bound, is_bounded(c, bound)))
}

/// For `k <= n <= M`, `l <= m <= M` with `S(n) S(l) >= S(m) S(k)`:
/// `sum_{k+1}^{k+l} c * S(m) >= sum_{n+1}^{n+m} c * S(l)`.
/// The first violation in `(n, m, k, l)` order is reported.
pub fn check_nec_general<T: Scalar>(
    c: &CoefficientSequence<T>,
    bound: usize,
) -> Result<ConditionVerdict<T>> {
    require_bound(bound, 2)?;
    let t = Table::new(c, 2 * bound);
    let mut scan = Scan::new();
    let tol = T::tolerance();
    'outer: for n in 1..=bound {
        for m in 1..=bound {
            for k in 1..=n {
                for l in 1..=m {
                    // u_1 >= v_1, inclusive of near-ties.
                    if t.s(n) * t.s(l) < t.s(m) * t.s(k) - tol {
                        continue;
                    }
                    let lhs = t.r(k + 1, k + l) * t.s(m);
                    let rhs = t.r(n + 1, n + m) * t.s(l);
                    if !scan.check(lhs, rhs, &[("n", n), ("m", m), ("k", k), ("l", l)]) {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(scan.finish(ConditionId::NecGeneral, bound, is_bounded(c, bound)))
}

fn hypothesis_holds<T: Scalar>(c: &CoefficientSequence<T>, bound: usize) -> Result<bool> {
    Ok(check_nec_monotone(c, bound.max(3))?.holds())
}

fn inapplicable<T>(condition: ConditionId, bound: usize, bounded: bool) -> ConditionVerdict<T> {
    ConditionVerdict {
        condition,
        status: Status::Inapplicable,
        checked_bound: bound,
        bounded,
        violation: None,
        boundary_cases: 0,
    }
}

/// `sum_{n+1}^{n+l} c * S(m) >= sum_{n+1}^{n+m} c * S(l)` for `1 <= n <= M`,
/// `1 <= l < m <= M`. Inapplicable unless `c` is nonincreasing from `c_2`.
pub fn check_suf<T: Scalar>(
    c: &CoefficientSequence<T>,
    bound: usize,
) -> Result<ConditionVerdict<T>> {
    require_bound(bound, 2)?;
    let bounded = is_bounded(c, bound);
    if !hypothesis_holds(c, bound)? {
        return Ok(inapplicable(ConditionId::SufMain, bound, bounded));
    }
    let t = Table::new(c, 2 * bound);
    let mut scan = Scan::new();
    'outer: for n in 1..=bound {
        for m in 2..=bound {
            for l in 1..m {
                let lhs = t.r(n + 1, n + l) * t.s(m);
                let rhs = t.r(n + 1, n + m) * t.s(l);
                if !scan.check(lhs, rhs, &[("n", n), ("m", m), ("l", l)]) {
                    break 'outer;
                }
            }
        }
    }
    Ok(scan.finish(ConditionId::SufMain, bound, bounded))
}

/// For every `1 <= n <= M`, `1 <= l < m <= M`, some `k` in `1..n` (or the
/// unweakened choice `k = n + 1`) satisfies
/// `(c_k + sum_{n+2}^{n+l} c) * S(m) >= S(l) * sum_{n+1}^{n+m} c`.
pub fn check_suf_weakened<T: Scalar>(
    c: &CoefficientSequence<T>,
    bound: usize,
) -> Result<ConditionVerdict<T>> {
    require_bound(bound, 2)?;
    let bounded = is_bounded(c, bound);
    if !hypothesis_holds(c, bound)? {
        return Ok(inapplicable(ConditionId::SufWeakened, bound, bounded));
    }
    let t = Table::new(c, 2 * bound + 1);
    let mut scan = Scan::new();
    'outer: for n in 1..=bound {
        // The best k maximizes c_k.
        let best_k = (1..n)
            .chain(std::iter::once(n + 1))
            .max_by(|&a, &b| t.c(a).cmp_finite(&t.c(b)).then(b.cmp(&a)))
            .unwrap();
        for m in 2..=bound {
            for l in 1..m {
                let lhs = (t.c(best_k) + t.r(n + 2, n + l)) * t.s(m);
                let rhs = t.s(l) * t.r(n + 1, n + m);
                if !scan.check(lhs, rhs, &[("n", n), ("m", m), ("l", l), ("k", best_k)]) {
                    break 'outer;
                }
            }
        }
    }
    Ok(scan.finish(ConditionId::SufWeakened, bound, bounded))
}

/// `c_i c_{i+2} <= c_{i+1}^2` for `1 <= i <= M - 2`.
pub fn check_ratio_increasing<T: Scalar>(
    c: &CoefficientSequence<T>,
    bound: usize,
) -> Result<ConditionVerdict<T>> {
    require_bound(bound, 3)?;
    let t = Table::new(c, bound);
    let mut scan = Scan::new();
    for i in 1..=bound - 2 {
        let lhs = t.c(i + 1) * t.c(i + 1);
        let rhs = t.c(i) * t.c(i + 2);
        if !scan.check(lhs, rhs, &[("i", i)]) {
            let ratios = (1..=i + 1)
                .map(|j| {
                    if t.c(j + 1) > T::zero() {
                        t.c(j) / t.c(j + 1)
                    } else {
                        T::infinity()
                    }
                })
                .collect();
            if let Some(v) = scan.violation.as_mut() {
                v.ratios = ratios;
            }
            break;
        }
    }
    Ok(scan.finish(ConditionId::RatioIncreasing, bound, is_bounded(c, bound)))
}

/// Runs the checker for one condition.
pub fn check<T: Scalar>(
    condition: ConditionId,
    c: &CoefficientSequence<T>,
    bound: usize,
) -> Result<ConditionVerdict<T>> {
    match condition {
        ConditionId::NecMonotone => check_nec_monotone(c, bound),
        ConditionId::NecRatio => check_nec_ratio(c, bound),
        ConditionId::NecGeneral => check_nec_general(c, bound),
        ConditionId::SufMain => check_suf(c, bound),
        ConditionId::SufWeakened => check_suf_weakened(c, bound),
        ConditionId::RatioIncreasing => check_ratio_increasing(c, bound),
    }
}

/// Two vectors whose individual OWAs are one but whose concatenation
/// aggregates to less than that minimum.
#[derive(Clone, Debug, PartialEq)]
pub struct CounterexampleCertificate<T> {
    pub k: usize,
    pub n: usize,
    pub l: usize,
    pub m: usize,
    pub u: Vec<T>,
    pub v: Vec<T>,
    pub owa_u: T,
    pub owa_v: T,
    pub owa_uv: T,
    /// `owa_uv - min(owa_u, owa_v)`, negative.
    pub margin: T,
}

impl<T: Scalar> CounterexampleCertificate<T> {
    /// Re-evaluates the three aggregates; returns the largest discrepancy.
    pub fn replay(&self, c: &CoefficientSequence<T>) -> Result<T> {
        let spec = OwaLinkageSpec::largest_first(c.clone());
        let uv: Vec<T> = self.u.iter().chain(&self.v).copied().collect();
        let du = (owa(&spec, &self.u)? - self.owa_u).abs();
        let dv = (owa(&spec, &self.v)? - self.owa_v).abs();
        let duv = (owa(&spec, &uv)? - self.owa_uv).abs();
        Ok(du.max(dv).max(duv))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome<T> {
    pub max_arity: usize,
    pub certificate: Option<CounterexampleCertificate<T>>,
    /// `(k, n)` pairs whose `e_bar` vector is undefined.
    pub skipped: Vec<(usize, usize)>,
}

type Evaluated<T> = (Vec<T>, T);

/// Tests `u = e_bar(c, k, n)`, `v = e_bar(c, l, m)` for all `k <= n <= N`,
/// `l <= m <= N` in `(n, m, k, l)` order and returns the first pair whose
/// concatenation aggregates below one.
pub fn search_counterexample<T: Scalar>(
    c: &CoefficientSequence<T>,
    max_arity: usize,
) -> Result<SearchOutcome<T>> {
    require_bound(max_arity, 2)?;
    let spec = OwaLinkageSpec::largest_first(c.clone());
    let tol = T::tolerance();
    // vectors[n][k] = (e_bar(c, k, n), its OWA)
    let mut vectors: Vec<Vec<Option<Evaluated<T>>>> = vec![Vec::new()];
    let mut skipped = Vec::new();
    for n in 1..=max_arity {
        let mut row = vec![None];
        for k in 1..=n {
            match e_bar(c, k, n) {
                Ok(v) => {
                    let value = owa(&spec, &v)?;
                    row.push(Some((v, value)));
                }
                Err(Error::ZeroPartialSum { .. }) => {
                    skipped.push((k, n));
                    row.push(None);
                }
                Err(e) => return Err(e),
            }
        }
        vectors.push(row);
    }
    let mut buf = Vec::with_capacity(2 * max_arity);
    for n in 1..=max_arity {
        for m in 1..=max_arity {
            for k in 1..=n {
                for l in 1..=m {
                    let (Some((u, owa_u)), Some((v, owa_v))) = (&vectors[n][k], &vectors[m][l])
                    else {
                        continue;
                    };
                    buf.clear();
                    buf.extend_from_slice(u);
                    buf.extend_from_slice(v);
                    let owa_uv = owa(&spec, &buf)?;
                    if owa_uv < T::one() - tol {
                        return Ok(SearchOutcome {
                            max_arity,
                            certificate: Some(CounterexampleCertificate {
                                k,
                                n,
                                l,
                                m,
                                u: u.clone(),
                                v: v.clone(),
                                owa_u: *owa_u,
                                owa_v: *owa_v,
                                owa_uv,
                                margin: owa_uv - owa_u.min(*owa_v),
                            }),
                            skipped,
                        });
                    }
                }
            }
        }
    }
    Ok(SearchOutcome {
        max_arity,
        certificate: None,
        skipped,
    })
}

/// A logical relationship between verdicts that should hold on every input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub name: &'static str,
    /// False when the premise did not hold, so there was nothing to test.
    pub applicable: bool,
    pub passed: bool,
}

/// Every verdict plus the counterexample search for one sequence.
#[derive(Clone, Debug)]
pub struct Audit<T> {
    pub sequence: CoefficientSequence<T>,
    pub bound_m: usize,
    pub bound_n: usize,
    pub verdicts: Vec<ConditionVerdict<T>>,
    pub search: SearchOutcome<T>,
    pub cross_checks: Vec<CrossCheck>,
}

impl<T: Scalar> Audit<T> {
    pub fn verdict(&self, id: ConditionId) -> &ConditionVerdict<T> {
        self.verdicts
            .iter()
            .find(|v| v.condition == id)
            .expect("all conditions audited")
    }

    pub fn consistent(&self) -> bool {
        self.cross_checks.iter().all(|c| c.passed)
    }
}

fn implication(name: &'static str, premise: bool, conclusion: bool) -> CrossCheck {
    CrossCheck {
        name,
        applicable: premise,
        passed: !premise || conclusion,
    }
}

/// Runs all six checks (bound `M`) and the counterexample search (arity `N`).
pub fn audit<T: Scalar>(
    c: &CoefficientSequence<T>,
    bound_m: usize,
    bound_n: usize,
) -> Result<Audit<T>> {
    let verdicts = ConditionId::ALL
        .iter()
        .map(|&id| check(id, c, bound_m))
        .collect::<Result<Vec<_>>>()?;
    let search = search_counterexample(c, bound_n)?;
    let get = |id: ConditionId| verdicts.iter().find(|v| v.condition == id).unwrap();
    let found = search.certificate.is_some();
    let suf = get(ConditionId::SufMain);
    let cross_checks = vec![
        implication("suf_main_excludes_counterexample", suf.holds(), !found),
        implication(
            "counterexample_flagged",
            found,
            !get(ConditionId::NecGeneral).holds() || !suf.holds(),
        ),
        implication(
            "nec_general_implies_monotone_and_ratio",
            get(ConditionId::NecGeneral).holds(),
            get(ConditionId::NecMonotone).holds() && get(ConditionId::NecRatio).holds(),
        ),
        implication(
            "suf_main_implies_suf_weakened",
            suf.holds(),
            get(ConditionId::SufWeakened).holds(),
        ),
        implication(
            "ratio_increasing_implies_suf_main",
            get(ConditionId::RatioIncreasing).holds() && suf.status != Status::Inapplicable,
            suf.holds(),
        ),
    ];
    Ok(Audit {
        sequence: c.clone(),
        bound_m,
        bound_n,
        verdicts,
        search,
        cross_checks,
    })
}
