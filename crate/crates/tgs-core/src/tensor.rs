//! Sparse complex tensors of uniform order, together with the row sums,
//! rescalings and structure tests that the inclusion regions are built from.
//!
//! A tensor of order `m` and dimension `n` stores entries `a[i1, .., im]`
//! with every index in `0..n`. Only nonzero entries are kept, in a sorted
//! coordinate map, so contractions and row operations cost time
//! proportional to the number of stored entries. All indices are 0-based
//! here; the file formats and the command line speak 1-based.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Position of one entry: `m` component indices, each in `0..n`.
///
/// Ordering is lexicographic, which fixes the iteration order of every
/// tensor and makes all emitted files deterministic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(components: Vec<usize>) -> Self {
        MultiIndex(components)
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    /// The row the entry belongs to.
    pub fn first(&self) -> usize {
        self.0[0]
    }

    /// Every component after the first.
    pub fn rest(&self) -> &[usize] {
        &self.0[1..]
    }

    /// True when all components are equal, i.e. the entry lies on the
    /// main diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.0.iter().all(|&i| i == self.0[0])
    }
}

/// A candidate eigenpair `A x^{m-1} = lambda x^{[m-1]}`.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub value: Complex64,
    pub vector: Vec<Complex64>,
}

/// Verdict of the irreducibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A nonempty proper index set `I` with no nonzero entry whose row is
    /// in `I` and whose remaining components all avoid `I`.
    Reducible { witness: Vec<usize> },
    /// Above the exhaustive enumeration limit and the digraph screen did
    /// not settle the question.
    Unknown,
}

/// Outcome of [`ComplexTensor::irreducibility`]. Records the structural
/// verdict together with the digraph screen, since the two tests do not
/// coincide for tensors of order three and higher.
#[derive(Clone, Debug)]
pub struct IrreducibilityReport {
    pub verdict: Irreducibility,
    /// Whether the directed graph with an edge `i -> j` for every nonzero
    /// entry in row `i` that mentions `j` is strongly connected. Strong
    /// connectivity is necessary for irreducibility but not sufficient.
    pub digraph_strongly_connected: bool,
    /// True when the verdict comes from exhaustive subset enumeration
    /// rather than from the digraph screen alone.
    pub exhaustive: bool,
}

impl IrreducibilityReport {
    pub fn is_irreducible(&self) -> bool {
        self.verdict == Irreducibility::Irreducible
    }
}

/// Sparse tensor with complex entries, all modes of equal dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexTensor {
    order: usize,
    dim: usize,
    entries: BTreeMap<MultiIndex, Complex64>,
}

/// Largest dimension for which the irreducibility test enumerates all
/// index subsets. Above it only the digraph screen runs.
pub const EXACT_ENUMERATION_LIMIT: usize = 20;

impl ComplexTensor {
    /// Builds a tensor from coordinate entries. Zero values are dropped,
    /// duplicate multi-indices are rejected.
    pub fn new(
        order: usize,
        dim: usize,
        entries: impl IntoIterator<Item = (Vec<usize>, Complex64)>,
    ) -> Result<Self> {
        if order < 2 {
            return Err(Error::BadOrder { order });
        }
        if dim == 0 {
            return Err(Error::BadDim { dim });
        }
        let mut map = BTreeMap::new();
        for (index, value) in entries {
            if index.len() != order {
                return Err(Error::ArityMismatch {
                    expected: order,
                    got: index.len(),
                    index,
                });
            }
            if index.iter().any(|&i| i >= dim) {
                return Err(Error::IndexOutOfRange { index, dim });
            }
            if value == Complex64::new(0.0, 0.0) {
                continue;
            }
            if map.insert(MultiIndex(index.clone()), value).is_some() {
                return Err(Error::DuplicateIndex { index });
            }
        }
        Ok(ComplexTensor {
            order,
            dim,
            entries: map,
        })
    }

    /// The all-zero tensor of the given shape.
    pub fn zero(order: usize, dim: usize) -> Result<Self> {
        ComplexTensor::new(order, dim, std::iter::empty())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Entries in lexicographic index order.
    pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, Complex64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    /// Entry at the given position, zero if absent.
    pub fn get(&self, index: &[usize]) -> Complex64 {
        self.entries
            .get(&MultiIndex(index.to_vec()))
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// Diagonal entry `a[i, i, .., i]`.
    pub fn diagonal(&self, i: usize) -> Complex64 {
        self.get(&vec![i; self.order])
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: len,
            });
        }
        Ok(())
    }

    /// The contraction `(A x^{m-1})_i = sum a[i, i2, .., im] x_{i2} .. x_{im}`.
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(x.len())?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (index, value) in self.entries() {
            let mut term = value;
            for &j in index.rest() {
                term *= x[j];
            }
            out[index.first()] += term;
        }
        Ok(out)
    }

    /// Same contraction restricted to real data: uses the real part of
    /// every entry and a real vector. This is the workhorse of the
    /// spectral iteration, where all tensors are entrywise real.
    pub fn apply_real(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x.len())?;
        let mut out = vec![0.0; self.dim];
        for (index, value) in self.entries() {
            let mut term = value.re;
            for &j in index.rest() {
                term *= x[j];
            }
            out[index.first()] += term;
        }
        Ok(out)
    }

    /// True when every entry is real and nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.entries
            .values()
            .all(|v| v.im == 0.0 && v.re >= 0.0)
    }

    /// First stored entry violating nonnegativity, if any.
    pub(crate) fn first_negative(&self) -> Option<&MultiIndex> {
        self.entries
            .iter()
            .find(|(_, v)| v.im != 0.0 || v.re < 0.0)
            .map(|(k, _)| k)
    }

    /// Off-diagonal absolute row sum `r_i(A)`: the moduli of all entries
    /// in row `i` except the diagonal one.
    pub fn row_sum(&self, i: usize) -> Result<f64> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: vec![i],
                dim: self.dim,
            });
        }
        let mut sum = 0.0;
        for (index, value) in self.entries() {
            if index.first() == i && !index.is_diagonal() {
                sum += value.norm();
            }
        }
        Ok(sum)
    }

    /// Weighted off-diagonal row sum
    /// `r^x_i(A) = sum |a[i, i2, .., im]| x_{i2} .. x_{im} / x_i^{m-1}`
    /// for an entrywise positive weight vector `x`.
    ///
    /// Equals `row_sum` of the diagonally rescaled tensor, which is the
    /// identity the weighted inclusion sets rest on.
    pub fn weighted_row_sum(&self, i: usize, x: &[f64]) -> Result<f64> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: vec![i],
                dim: self.dim,
            });
        }
        self.check_len(x.len())?;
        if let Some(p) = x.iter().position(|&w| !(w > 0.0)) {
            return Err(Error::NonPositiveWeight {
                index: p,
                value: x[p],
            });
        }
        let mut sum = 0.0;
        for (index, value) in self.entries() {
            if index.first() == i && !index.is_diagonal() {
                let mut term = value.norm();
                for &j in index.rest() {
                    term *= x[j];
                }
                sum += term;
            }
        }
        Ok(sum / x[i].powi(self.order as i32 - 1))
    }

    /// Diagonal similarity scaling
    /// `b[i1, .., im] = d_{i1}^{-(m-1)} a[i1, .., im] d_{i2} .. d_{im}`
    /// for an entrywise positive vector `d`. The spectrum is unchanged
    /// and diagonal entries are preserved exactly.
    pub fn diagonal_scale(&self, d: &[f64]) -> Result<ComplexTensor> {
        self.check_len(d.len())?;
        if let Some(p) = d.iter().position(|&w| !(w > 0.0)) {
            return Err(Error::NonPositiveScale {
                index: p,
                value: d[p],
            });
        }
        let mut entries = BTreeMap::new();
        for (index, value) in self.entries() {
            let scaled = if index.is_diagonal() {
                value
            } else {
                let mut factor = 1.0;
                for &j in index.rest() {
                    factor *= d[j];
                }
                value * (factor / d[index.first()].powi(self.order as i32 - 1))
            };
            entries.insert(index.clone(), scaled);
        }
        Ok(ComplexTensor {
            order: self.order,
            dim: self.dim,
            entries,
        })
    }

    /// Irreducibility test with the default enumeration limit.
    pub fn irreducibility(&self) -> IrreducibilityReport {
        self.irreducibility_with_limit(EXACT_ENUMERATION_LIMIT)
    }

    /// Irreducibility test. Always runs the digraph screen; up to
    /// `n_exact` dimensions it also enumerates all index subsets, which
    /// settles the verdict exactly.
    pub fn irreducibility_with_limit(&self, n_exact: usize) -> IrreducibilityReport {
        let n = self.dim;
        let (connected, digraph_witness) = self.digraph_screen();
        if let Some(witness) = digraph_witness {
            // A set with no outgoing edge is already a structural witness.
            return IrreducibilityReport {
                verdict: Irreducibility::Reducible { witness },
                digraph_strongly_connected: false,
                exhaustive: false,
            };
        }
        if n > n_exact {
            return IrreducibilityReport {
                verdict: Irreducibility::Unknown,
                digraph_strongly_connected: connected,
                exhaustive: false,
            };
        }
        let verdict = match self.enumerate_witness() {
            Some(witness) => Irreducibility::Reducible { witness },
            None => Irreducibility::Irreducible,
        };
        IrreducibilityReport {
            verdict,
            digraph_strongly_connected: connected,
            exhaustive: true,
        }
    }

    /// Convenience wrapper: true when the full report says irreducible.
    pub fn is_irreducible(&self) -> bool {
        self.irreducibility().is_irreducible()
    }

    /// Strong connectivity of the row digraph, plus a closed vertex set
    /// as witness when it fails.
    fn digraph_screen(&self) -> (bool, Option<Vec<usize>>) {
        let n = self.dim;
        if n == 1 {
            return (true, None);
        }
        let mut forward = vec![BTreeSet::new(); n];
        let mut backward = vec![BTreeSet::new(); n];
        for (index, _) in self.entries() {
            let i = index.first();
            for &j in index.rest() {
                if j != i {
                    forward[i].insert(j);
                    backward[j].insert(i);
                }
            }
        }
        let reach = |adj: &Vec<BTreeSet<usize>>| {
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(i) = stack.pop() {
                for &j in &adj[i] {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            seen
        };
        let down = reach(&forward);
        if down.iter().any(|&s| !s) {
            // No edge leaves the forward-reachable set.
            let witness = (0..n).filter(|&i| down[i]).collect();
            return (false, Some(witness));
        }
        let up = reach(&backward);
        if up.iter().any(|&s| !s) {
            // No edge enters the backward-reachable set from outside it.
            let witness = (0..n).filter(|&i| !up[i]).collect();
            return (false, Some(witness));
        }
        (true, None)
    }

    /// Exhaustive search for a reducibility witness: a nonempty proper
    /// subset `I` such that every entry with row in `I` keeps at least one
    /// later component inside `I`. Returns the first witness in mask
    /// order, or `None` when the tensor is irreducible.
    fn enumerate_witness(&self) -> Option<Vec<usize>> {
        let n = self.dim;
        if n == 1 {
            return None;
        }
        // Distinct (row, set of later components) pairs; diagonal entries
        // can never escape a subset containing their row, so skip them.
        let mut pairs: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); n];
        for (index, _) in self.entries() {
            if index.is_diagonal() {
                continue;
            }
            let mut rest_mask = 0u64;
            for &j in index.rest() {
                rest_mask |= 1 << j;
            }
            pairs[index.first()].insert(rest_mask);
        }
        let full = (1u64 << n) - 1;
        'subsets: for mask in 1..full {
            let mut rows = mask;
            while rows != 0 {
                let i = rows.trailing_zeros() as usize;
                rows &= rows - 1;
                if pairs[i].iter().any(|&rest| rest & mask == 0) {
                    continue 'subsets;
                }
            }
            let witness = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            return Some(witness);
        }
        None
    }
}

/// Max-norm residual of a candidate eigenpair,
/// `max_i |(A x^{m-1})_i - lambda x_i^{m-1}|`.
pub fn eigenpair_residual(a: &ComplexTensor, pair: &EigenPair) -> Result<f64> {
    let applied = a.apply(&pair.vector)?;
    let power = a.order() as u32 - 1;
    let mut worst = 0.0f64;
    for (i, lhs) in applied.iter().enumerate() {
        let rhs = pair.value * pair.vector[i].powu(power);
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}
