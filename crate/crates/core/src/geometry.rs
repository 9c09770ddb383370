//! Point sets and condensed pairwise distance matrices.

use crate::sum::CompensatedSum;
use crate::{Error, Result, Scalar};

/// Symmetry and zero-diagonal tolerance applied when ingesting square matrices.
pub const SQUARE_TOLERANCE: f64 = 1e-9;

/// `n` points with `dim` finite coordinates each, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet<T> {
    coords: Vec<T>,
    n: usize,
    dim: usize,
}

impl<T: Scalar> PointSet<T> {
    /// Validates and packs a list of rows.
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty("point set"));
        }
        let dim = rows[0].len();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                row: 0,
                expected: 1,
                found: 0,
            });
        }
        let mut coords = Vec::with_capacity(n * dim);
        for (row, point) in rows.into_iter().enumerate() {
            if point.len() != dim {
                return Err(Error::DimensionMismatch {
                    row,
                    expected: dim,
                    found: point.len(),
                });
            }
            if let Some(col) = point.iter().position(|x| !x.is_finite()) {
                return Err(Error::NonFinite { row, col });
            }
            coords.extend(point);
        }
        Ok(PointSet { coords, n, dim })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[T]> {
        self.coords.chunks_exact(self.dim)
    }

    /// Squared Euclidean distance between points `i` and `j`.
    pub fn squared_distance(&self, i: usize, j: usize) -> T {
        squared_norm_of_difference(self.point(i), self.point(j))
    }
}

pub(crate) fn squared_norm_of_difference<T: Scalar>(a: &[T], b: &[T]) -> T {
    let mut acc = CompensatedSum::new();
    for (&x, &y) in a.iter().zip(b) {
        let d = x - y;
        acc.add(d * d);
    }
    acc.value()
}

/// Position of the pair `(i, j)`, `i < j`, in a condensed matrix over `n` objects.
#[inline]
pub fn condensed_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + j - i - 1
}

/// Number of pairs among `n` objects.
#[inline]
pub fn condensed_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Upper triangle of a symmetric, zero-diagonal distance matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct CondensedDistanceMatrix<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: Scalar> CondensedDistanceMatrix<T> {
    /// Wraps an already condensed vector, checking its length and entries.
    pub fn new(n: usize, values: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty("distance matrix"));
        }
        let expected = condensed_len(n);
        if values.len() != expected {
            return Err(Error::CondensedLength {
                n,
                expected,
                found: values.len(),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                let v = values[condensed_index(n, i, j)];
                if !v.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                if v < T::zero() {
                    return Err(Error::NegativeDistance {
                        i,
                        j,
                        value: v.as_f64(),
                    });
                }
            }
        }
        Ok(CondensedDistanceMatrix { n, values })
    }

    /// Builds the condensed form of a square matrix.
    ///
    /// The matrix must be symmetric and have a zero diagonal up to
    /// [`SQUARE_TOLERANCE`]. The stored value for each pair is the upper
    /// triangle entry, not the average of both halves. The triangle
    /// inequality is not enforced; any semimetric is accepted.
    pub fn from_square(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty("distance matrix"));
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    expected: n,
                    found: r.len(),
                });
            }
            if let Some(col) = r.iter().position(|x| !x.is_finite()) {
                return Err(Error::NonFinite { row, col });
            }
        }
        let tol = T::of(SQUARE_TOLERANCE);
        let mut worst: Option<(usize, usize, T)> = None;
        for i in 0..n {
            if rows[i][i].abs() > tol {
                return Err(Error::NonZeroDiagonal {
                    i,
                    value: rows[i][i].as_f64(),
                });
            }
            for j in i + 1..n {
                let diff = (rows[i][j] - rows[j][i]).abs();
                if diff > tol && worst.is_none_or(|(_, _, w)| diff > w) {
                    worst = Some((i, j, diff));
                }
            }
        }
        if let Some((i, j, difference)) = worst {
            return Err(Error::Asymmetric {
                i,
                j,
                difference: difference.as_f64(),
            });
        }
        let mut values = Vec::with_capacity(condensed_len(n));
        for i in 0..n {
            for j in i + 1..n {
                let v = rows[i][j];
                if v < T::zero() {
                    return Err(Error::NegativeDistance {
                        i,
                        j,
                        value: v.as_f64(),
                    });
                }
                values.push(v);
            }
        }
        Ok(CondensedDistanceMatrix { n, values })
    }

    /// Number of objects.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Distance between objects `i` and `j` in either order. Zero when `i == j`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.values[condensed_index(self.n, i, j)],
            std::cmp::Ordering::Greater => self.values[condensed_index(self.n, j, i)],
            std::cmp::Ordering::Equal => T::zero(),
        }
    }

    /// Expands to a full symmetric matrix.
    pub fn to_square(&self) -> Vec<Vec<T>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Elementwise square of every distance.
    pub fn squared(&self) -> Self {
        CondensedDistanceMatrix {
            n: self.n,
            values: self.values.iter().map(|&v| v * v).collect(),
        }
    }
}

/// Pairwise Euclidean distances between all points.
pub fn euclidean_distances<T: Scalar>(ps: &PointSet<T>) -> CondensedDistanceMatrix<T> {
    let n = ps.len();
    let mut values = Vec::with_capacity(condensed_len(n));
    for i in 0..n {
        for j in i + 1..n {
            values.push(ps.squared_distance(i, j).sqrt());
        }
    }
    CondensedDistanceMatrix { n, values }
}
