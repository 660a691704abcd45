//! Finite chain complexes of GF(2) vector spaces with labelled bases.

use alloc::vec::Vec;

use crate::gf2::F2Matrix;
use crate::{Error, Result};

/// A homologically graded complex `C_0 <- C_1 <- .. <- C_top`.
///
/// `labels[i]` orders the basis of `C_i`. The boundary `d_i : C_i -> C_{i-1}`
/// is stored for `1 <= i <= top` as a matrix with one row per rank `i-1`
/// label and one column per rank `i` label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComplex<L> {
    labels: Vec<Vec<L>>,
    /// `boundaries[i - 1]` is `d_i`.
    boundaries: Vec<F2Matrix>,
}

impl<L> GradedComplex<L> {
    /// Checks that every boundary matrix is shaped by the adjacent label counts.
    pub fn new(labels: Vec<Vec<L>>, boundaries: Vec<F2Matrix>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidInput("a complex needs at least one rank".into()));
        }
        if boundaries.len() + 1 != labels.len() {
            return Err(Error::InvalidInput(alloc::format!(
                "{} ranks need {} boundary maps, got {}",
                labels.len(),
                labels.len() - 1,
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            let want = (labels[i].len(), labels[i + 1].len());
            if (d.rows(), d.cols()) != want {
                return Err(Error::DimensionMismatch {
                    left: (d.rows(), d.cols()),
                    right: want,
                });
            }
        }
        Ok(Self { labels, boundaries })
    }

    /// Highest rank index.
    pub fn top(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn labels(&self, i: usize) -> &[L] {
        &self.labels[i]
    }

    pub fn all_labels(&self) -> &[Vec<L>] {
        &self.labels
    }

    pub fn dim(&self, i: usize) -> usize {
        self.labels.get(i).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    /// `d_i`, for `1 <= i <= top`.
    pub fn boundary(&self, i: usize) -> Option<&F2Matrix> {
        i.checked_sub(1).and_then(|j| self.boundaries.get(j))
    }

    pub fn boundaries(&self) -> &[F2Matrix] {
        &self.boundaries
    }

    /// `d_{i-1} d_i = 0` for every `i`.
    pub fn is_chain_complex(&self) -> bool {
        self.boundaries.windows(2).all(|w| {
            w[0].multiply(&w[1])
                .map(|m| m.is_zero())
                .unwrap_or(false)
        })
    }

    /// Ranks of `d_1, .., d_top`.
    pub fn boundary_ranks(&self) -> Vec<usize> {
        self.boundaries.iter().map(F2Matrix::rank).collect()
    }

    /// `dim H_i = dim C_i - rank d_i - rank d_{i+1}`.
    pub fn homology_ranks(&self) -> Vec<usize> {
        homology_from_ranks(&self.dims(), &self.boundary_ranks())
    }

    /// `sum (-1)^i dim C_i`.
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims())
    }

    pub fn map_labels<M>(self, f: impl FnMut(L) -> M + Copy) -> GradedComplex<M> {
        GradedComplex {
            labels: self
                .labels
                .into_iter()
                .map(|r| r.into_iter().map(f).collect())
                .collect(),
            boundaries: self.boundaries,
        }
    }
}

/// Homology ranks from chain dimensions and the ranks of `d_1, .., d_top`.
pub fn homology_from_ranks(dims: &[usize], boundary_ranks: &[usize]) -> Vec<usize> {
    assert_eq!(boundary_ranks.len() + 1, dims.len());
    (0..dims.len())
        .map(|i| {
            let into = if i >= 1 { boundary_ranks[i - 1] } else { 0 };
            let from = boundary_ranks.get(i).copied().unwrap_or(0);
            dims[i] - into - from
        })
        .collect()
}

pub fn alternating_sum(values: &[usize]) -> i64 {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}
