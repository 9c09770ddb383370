//! Extended OWA operators generated by coefficient sequences.
//!
//! A coefficient sequence `c = (1, c2, c3, ...)` generates one weight
//! vector per arity `m` by truncating to the first `m` terms and
//! normalizing. With [`Orientation::LargestFirst`] the weight `c_i`
//! multiplies the `i`-th greatest input; with
//! [`Orientation::SmallestFirst`] it multiplies the `i`-th smallest.

use std::fmt;
use std::str::FromStr;

use crate::sum::{self, CompensatedSum};
use crate::{Error, Result, Scalar};

/// How coefficients beyond the explicit prefix are materialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TailPolicy {
    /// `c_i = 0` for every `i` past the prefix.
    Zero,
    /// `c_i` repeats the last prefix entry forever.
    RepeatLast,
}

impl TailPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            TailPolicy::Zero => "zero",
            TailPolicy::RepeatLast => "repeat",
        }
    }
}

/// An infinite nonnegative sequence with `c_1 = 1`, stored as a finite
/// prefix plus a tail policy.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSequence<T> {
    prefix: Vec<T>,
    tail: TailPolicy,
}

impl<T: Scalar> CoefficientSequence<T> {
    pub fn new(prefix: Vec<T>, tail: TailPolicy) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::InvalidSequence("prefix must not be empty".into()));
        }
        if prefix[0] != T::one() {
            return Err(Error::InvalidSequence(format!(
                "first coefficient must be exactly 1, got {}",
                prefix[0]
            )));
        }
        if let Some((i, v)) = prefix
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < T::zero())
        {
            return Err(Error::InvalidSequence(format!(
                "coefficient c{} = {} is not a finite nonnegative number",
                i + 1,
                v
            )));
        }
        Ok(CoefficientSequence { prefix, tail })
    }

    /// `(1, 0, 0, ...)`: the maximum (or minimum, smallest-first).
    pub fn extremum() -> Self {
        CoefficientSequence {
            prefix: vec![T::one()],
            tail: TailPolicy::Zero,
        }
    }

    /// `(1, 1, 1, ...)`: the arithmetic mean.
    pub fn mean() -> Self {
        CoefficientSequence {
            prefix: vec![T::one()],
            tail: TailPolicy::RepeatLast,
        }
    }

    pub fn prefix(&self) -> &[T] {
        &self.prefix
    }

    pub fn tail(&self) -> TailPolicy {
        self.tail
    }

    /// `c_i` for a 1-based index.
    #[inline]
    pub fn coefficient(&self, i: usize) -> T {
        assert!(i >= 1, "coefficient indices are 1-based");
        match self.prefix.get(i - 1) {
            Some(&c) => c,
            None => match self.tail {
                TailPolicy::Zero => T::zero(),
                TailPolicy::RepeatLast => *self.prefix.last().unwrap(),
            },
        }
    }

    /// Index of the last nonzero coefficient, or `None` if nonzero
    /// coefficients never stop.
    pub fn support(&self) -> Option<usize> {
        match self.tail {
            TailPolicy::RepeatLast if *self.prefix.last().unwrap() > T::zero() => None,
            _ => Some(
                self.prefix
                    .iter()
                    .rposition(|&c| c > T::zero())
                    .map_or(0, |p| p + 1),
            ),
        }
    }

    /// `sum_{i=from}^{to} c_i`, empty (zero) when `from > to`.
    pub fn range_sum(&self, from: usize, to: usize) -> T {
        if from > to {
            return T::zero();
        }
        sum::sum((from..=to).map(|i| self.coefficient(i)))
    }

    /// `sum_{i=1}^{k} c_i`.
    pub fn partial_sum(&self, k: usize) -> T {
        self.range_sum(1, k)
    }

    /// Same sequence with trailing zeros appended to the prefix.
    pub fn padded(&self, extra_zeros: usize) -> Self {
        assert_eq!(self.tail, TailPolicy::Zero);
        let mut prefix = self.prefix.clone();
        prefix.extend(std::iter::repeat_n(T::zero(), extra_zeros));
        CoefficientSequence {
            prefix,
            tail: self.tail,
        }
    }
}

fn parse_number(token: &str) -> std::result::Result<f64, String> {
    let token = token.trim();
    let parsed = match token.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p
                .trim()
                .parse()
                .map_err(|_| format!("bad number `{token}`"))?;
            let q: f64 = q
                .trim()
                .parse()
                .map_err(|_| format!("bad number `{token}`"))?;
            if q == 0.0 {
                return Err(format!("zero denominator in `{token}`"));
            }
            p / q
        }
        None => token.parse().map_err(|_| format!("bad number `{token}`"))?,
    };
    Ok(parsed)
}

/// Parses `c1,c2,...[;zero|;repeat]`. Entries may be decimals or `p/q`.
impl<T: Scalar> FromStr for CoefficientSequence<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, tail) = match s.split_once(';') {
            Some((body, tail)) => {
                let tail = match tail.trim() {
                    "zero" => TailPolicy::Zero,
                    "repeat" => TailPolicy::RepeatLast,
                    other => {
                        return Err(Error::InvalidSequence(format!(
                            "unknown tail `{other}`, expected `zero` or `repeat`"
                        )))
                    }
                };
                (body, tail)
            }
            None => (s, TailPolicy::Zero),
        };
        if body.trim().is_empty() {
            return Err(Error::InvalidSequence("empty sequence".into()));
        }
        let prefix = body
            .split(',')
            .map(|t| parse_number(t).map(T::of).map_err(Error::InvalidSequence))
            .collect::<Result<Vec<T>>>()?;
        CoefficientSequence::new(prefix, tail)
    }
}

impl<T: Scalar> fmt::Display for CoefficientSequence<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.prefix.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ";{}", self.tail.as_str())
    }
}

/// Which end of the sorted inputs the first coefficient attaches to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    LargestFirst,
    SmallestFirst,
}

impl Orientation {
    /// Short token used by the method grammar (`hi` / `lo`).
    pub fn token(self) -> &'static str {
        match self {
            Orientation::LargestFirst => "hi",
            Orientation::SmallestFirst => "lo",
        }
    }
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "hi" => Ok(Orientation::LargestFirst),
            "lo" => Ok(Orientation::SmallestFirst),
            other => Err(Error::InvalidMethod(format!(
                "unknown orientation `{other}`, expected `hi` or `lo`"
            ))),
        }
    }
}

/// A coefficient sequence together with its orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct OwaLinkageSpec<T> {
    pub coefficients: CoefficientSequence<T>,
    pub orientation: Orientation,
}

impl<T: Scalar> OwaLinkageSpec<T> {
    pub fn new(coefficients: CoefficientSequence<T>, orientation: Orientation) -> Self {
        OwaLinkageSpec {
            coefficients,
            orientation,
        }
    }

    pub fn largest_first(coefficients: CoefficientSequence<T>) -> Self {
        Self::new(coefficients, Orientation::LargestFirst)
    }

    pub fn smallest_first(coefficients: CoefficientSequence<T>) -> Self {
        Self::new(coefficients, Orientation::SmallestFirst)
    }
}

/// `orientation:sequence`, e.g. `lo:1,1;zero`.
impl<T: Scalar> FromStr for OwaLinkageSpec<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (orientation, seq) = s.split_once(':').ok_or_else(|| {
            Error::InvalidMethod(format!("expected `hi:<seq>` or `lo:<seq>`, got `{s}`"))
        })?;
        Ok(OwaLinkageSpec::new(seq.parse()?, orientation.parse()?))
    }
}

impl<T: Scalar> fmt::Display for OwaLinkageSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.orientation.token(), self.coefficients)
    }
}

/// One row of a weighting triangle: `m` weights in `[0, 1]` summing to one,
/// listed by rank (position 0 multiplies the greatest input).
#[derive(Clone, Debug, PartialEq)]
pub struct WeightingTriangleRow<T> {
    weights: Vec<T>,
}

impl<T: Scalar> WeightingTriangleRow<T> {
    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }
}

/// Normalized weights of arity `m` generated by `c`.
pub fn triangle_row<T: Scalar>(
    c: &CoefficientSequence<T>,
    orientation: Orientation,
    m: usize,
) -> Result<WeightingTriangleRow<T>> {
    if m == 0 {
        return Err(Error::InvalidArgument("arity must be at least 1".into()));
    }
    let total = c.partial_sum(m);
    if total <= T::zero() {
        return Err(Error::ZeroNormalizer { arity: m });
    }
    let mut weights: Vec<T> = (1..=m).map(|i| c.coefficient(i) / total).collect();
    if orientation == Orientation::SmallestFirst {
        weights.reverse();
    }
    Ok(WeightingTriangleRow { weights })
}

/// Sorts descending; ties keep their input order.
pub fn sort_descending<T: Scalar>(values: &mut [T]) {
    values.sort_by(|a, b| b.cmp_finite(a));
}

/// OWA of values already sorted in descending order.
pub fn owa_sorted<T: Scalar>(spec: &OwaLinkageSpec<T>, sorted_desc: &[T]) -> Result<T> {
    let m = sorted_desc.len();
    if m == 0 {
        return Err(Error::Empty("OWA input"));
    }
    let c = &spec.coefficients;
    let mut num = CompensatedSum::new();
    let mut den = CompensatedSum::new();
    for i in 1..=m {
        let ci = c.coefficient(i);
        let d = match spec.orientation {
            Orientation::LargestFirst => sorted_desc[i - 1],
            Orientation::SmallestFirst => sorted_desc[m - i],
        };
        num.add(ci * d);
        den.add(ci);
    }
    let den = den.value();
    if den <= T::zero() {
        return Err(Error::ZeroNormalizer { arity: m });
    }
    Ok(num.value() / den)
}

/// Extended OWA of a multiset of finite values.
pub fn owa<T: Scalar>(spec: &OwaLinkageSpec<T>, values: &[T]) -> Result<T> {
    if values.is_empty() {
        return Err(Error::Empty("OWA input"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("OWA inputs must be finite".into()));
    }
    let mut sorted = values.to_vec();
    sort_descending(&mut sorted);
    owa_sorted(spec, &sorted)
}

fn is_descending<T: Scalar>(xs: &[T]) -> bool {
    xs.windows(2).all(|w| w[0] >= w[1])
}

/// Largest-first OWA of the concatenation `(u, v)` without re-sorting:
/// `u` takes coefficients `1..=n` and `v` takes `n+1..=n+m`.
pub fn owa_tilde<T: Scalar>(c: &CoefficientSequence<T>, u: &[T], v: &[T]) -> Result<T> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::Empty("OWA input"));
    }
    if !is_descending(u) {
        return Err(Error::Unsorted("u"));
    }
    if !is_descending(v) {
        return Err(Error::Unsorted("v"));
    }
    let n = u.len();
    let mut num = CompensatedSum::new();
    for (i, &x) in u.iter().chain(v).enumerate() {
        num.add(c.coefficient(i + 1) * x);
    }
    let den = c.partial_sum(n + v.len());
    Ok(num.value() / den)
}

/// `k` copies of `S(n) / S(k)` followed by `n - k` zeros, where `S` is the
/// partial sum of `c`. Its largest-first OWA is exactly one.
pub fn e_bar<T: Scalar>(c: &CoefficientSequence<T>, k: usize, n: usize) -> Result<Vec<T>> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let sk = c.partial_sum(k);
    if sk <= T::zero() {
        return Err(Error::ZeroPartialSum { k });
    }
    let level = c.partial_sum(n) / sk;
    let mut out = vec![level; k];
    out.resize(n, T::zero());
    Ok(out)
}

/// `k` ones followed by `n - k` zeros.
pub fn e_k<T: Scalar>(k: usize, n: usize) -> Vec<T> {
    assert!(k <= n, "e_k needs k <= n");
    let mut out = vec![T::one(); k];
    out.resize(n, T::zero());
    out
}
