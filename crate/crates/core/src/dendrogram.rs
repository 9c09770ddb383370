//! Merge records, height sequences and dendrogram exports.

use std::fmt::Write as _;

use crate::linkage::LinkageMethod;
use crate::{Error, Result, Scalar};

/// One merge. Singletons have ids `0..n`; the cluster created at step `j`
/// (1-based) has id `n - 1 + j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MergeRecord<T> {
    pub step: usize,
    pub left_id: usize,
    pub right_id: usize,
    pub height: T,
    pub new_size: usize,
}

/// The full merge history of one clustering run.
#[derive(Clone, Debug)]
pub struct Dendrogram<T> {
    n: usize,
    merges: Vec<MergeRecord<T>>,
    method: LinkageMethod<T>,
}

/// A single adjacent height decrease.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Inversion<T> {
    /// 1-based step whose height dropped below the previous one.
    pub step: usize,
    pub prev_height: T,
    pub height: T,
}

/// Every step `j` with `h_j < h_{j-1} - epsilon`.
#[derive(Clone, Debug, PartialEq)]
pub struct InversionReport<T> {
    pub epsilon: T,
    pub inversions: Vec<Inversion<T>>,
}

impl<T: Scalar> InversionReport<T> {
    /// Scans a height sequence (step 1 first).
    pub fn from_heights(heights: &[T], epsilon: T) -> Self {
        let inversions = heights
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1] < w[0] - epsilon)
            .map(|(i, w)| Inversion {
                step: i + 2,
                prev_height: w[0],
                height: w[1],
            })
            .collect();
        InversionReport {
            epsilon,
            inversions,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.inversions.is_empty()
    }

    pub fn len(&self) -> usize {
        self.inversions.len()
    }
}

impl<T: Scalar> Dendrogram<T> {
    pub(crate) fn new(n: usize, merges: Vec<MergeRecord<T>>, method: LinkageMethod<T>) -> Self {
        Dendrogram { n, merges, method }
    }

    /// Number of leaves.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn merges(&self) -> &[MergeRecord<T>] {
        &self.merges
    }

    pub fn method(&self) -> &LinkageMethod<T> {
        &self.method
    }

    /// Height of each level `1..n`; level 0 has implicit height zero.
    pub fn heights(&self) -> Vec<T> {
        self.merges.iter().map(|m| m.height).collect()
    }

    pub fn detect_inversions(&self, epsilon: T) -> InversionReport<T> {
        InversionReport::from_heights(&self.heights(), epsilon)
    }

    /// Flat clustering with `k` clusters: the partition after `n - k` merges.
    /// Labels are numbered in order of each cluster's smallest member.
    pub fn cut(&self, k: usize) -> Result<Vec<usize>> {
        if k == 0 || k > self.n {
            return Err(Error::InvalidArgument(format!(
                "cluster count {k} outside 1..={}",
                self.n
            )));
        }
        let mut parent: Vec<usize> = (0..2 * self.n - 1).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for m in &self.merges[..self.n - k] {
            let id = self.n - 1 + m.step;
            parent[m.left_id] = id;
            parent[m.right_id] = id;
        }
        let mut label_of_root = vec![usize::MAX; parent.len()];
        let mut next = 0;
        let mut labels = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let r = find(&mut parent, i);
            if label_of_root[r] == usize::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            labels.push(label_of_root[r]);
        }
        Ok(labels)
    }

    /// `left_id,right_id,height,new_size`, one line per merge, no header.
    pub fn to_linkage_csv(&self) -> String {
        let mut out = String::new();
        for m in &self.merges {
            writeln!(
                out,
                "{},{},{},{}",
                m.left_id, m.right_id, m.height, m.new_size
            )
            .unwrap();
        }
        out
    }

    /// Newick tree with branch lengths equal to height differences. Leaves
    /// are labelled by their 0-based index. When inversions make some
    /// branch lengths negative, a bracketed comment line precedes the tree.
    pub fn to_newick(&self) -> String {
        let n = self.n;
        let node_height = |id: usize| -> T {
            if id < n {
                T::zero()
            } else {
                self.merges[id - n].height
            }
        };
        let mut negative = 0usize;
        // Children are emitted before parents, so build bottom-up.
        let mut repr: Vec<Option<String>> = vec![None; 2 * n - 1];
        for i in 0..n {
            repr[i] = Some(i.to_string());
        }
        for m in &self.merges {
            let id = n - 1 + m.step;
            let mut s = String::from("(");
            for (k, child) in [m.left_id, m.right_id].into_iter().enumerate() {
                let len = m.height - node_height(child);
                if len < T::zero() {
                    negative += 1;
                }
                if k > 0 {
                    s.push(',');
                }
                let sub = repr[child].take().expect("each id used once");
                write!(s, "{sub}:{len}").unwrap();
            }
            s.push(')');
            repr[id] = Some(s);
        }
        let root = repr[2 * n - 2].take().unwrap_or_else(|| "0".into());
        let mut out = String::new();
        if negative > 0 {
            writeln!(
                out,
                "[inversions present: {negative} negative branch length(s)]"
            )
            .unwrap();
        }
        writeln!(out, "{root};").unwrap();
        out
    }
}
