//! Certification of algebraic Morse matchings on a graded poset that
//! supports a chain complex.
//!
//! Given a complex whose basis in each rank is a rank level of a graded
//! poset `P`, and whose boundary only has nonzero entries `d_{p,q}` with
//! `q < p`, a matching `M` on the Hasse diagram is checked for
//!
//! * acyclicity of the digraph `D(P, M)` (Hasse edges directed down, then
//!   matched edges reversed),
//! * unit coefficients `d_{p, M(p)} = 1` on every matched edge,
//! * the parity condition (all critical cells in ranks of one parity),
//! * the vanishing condition (rows and columns of `d` vanish at critical
//!   cells).
//!
//! With acyclicity, unit coefficients, and either of the last two, the
//! homology in rank `i` has dimension equal to the number of critical cells
//! in rank `i`; under the vanishing condition the critical cells themselves
//! form a homology basis.

use alloc::vec;
use alloc::vec::Vec;

use crate::complex::GradedComplex;
use crate::{Error, Result};

/// A cell addressed by rank and position within the rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellRef {
    pub rank: usize,
    pub index: usize,
}

impl CellRef {
    pub fn new(rank: usize, index: usize) -> Self {
        Self { rank, index }
    }
}

/// A complex together with the cover relation of a poset supporting it.
///
/// `covers[i][p]` lists the rank `i - 1` elements covered by element `p` of
/// rank `i` (`covers[0]` is empty for every element).
#[derive(Debug, Clone)]
pub struct SupportedComplex<L> {
    complex: GradedComplex<L>,
    covers: Vec<Vec<Vec<usize>>>,
}

impl<L> SupportedComplex<L> {
    /// Pairs a complex with a poset's cover relation, checking that every
    /// nonzero boundary coefficient joins comparable elements.
    pub fn new(complex: GradedComplex<L>, mut covers: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let dims = complex.dims();
        if covers.len() != dims.len() || covers.iter().zip(&dims).any(|(c, &d)| c.len() != d) {
            return Err(Error::InvalidInput(
                "cover lists do not match the complex's rank sizes".into(),
            ));
        }
        if covers[0].iter().any(|c| !c.is_empty()) {
            return Err(Error::InvalidInput("rank 0 elements cannot cover anything".into()));
        }
        for (i, rank) in covers.iter_mut().enumerate().skip(1) {
            let below = dims[i - 1];
            for (p, list) in rank.iter_mut().enumerate() {
                list.sort_unstable();
                list.dedup();
                if list.iter().any(|&q| q >= below) {
                    return Err(Error::InvalidInput(alloc::format!(
                        "cover of cell {p} in rank {i} is out of range"
                    )));
                }
            }
        }
        for i in 1..=complex.top() {
            let d = complex.boundary(i).expect("rank in range");
            for (p, list) in covers[i].iter().enumerate() {
                if let Some(q) = d.col_support(p).find(|q| list.binary_search(q).is_err()) {
                    return Err(Error::InvalidInput(alloc::format!(
                        "boundary entry d_(({i},{p}),({},{q})) is nonzero between incomparable elements",
                        i - 1
                    )));
                }
            }
        }
        Ok(Self { complex, covers })
    }

    /// Uses the support of the boundary itself as the cover relation.
    pub fn from_complex(complex: GradedComplex<L>) -> Self {
        let covers = (0..=complex.top())
            .map(|i| match complex.boundary(i) {
                None => vec![Vec::new(); complex.dim(i)],
                Some(d) => (0..d.cols()).map(|p| d.col_support(p).collect()).collect(),
            })
            .collect();
        Self { complex, covers }
    }

    pub fn complex(&self) -> &GradedComplex<L> {
        &self.complex
    }

    pub fn into_complex(self) -> GradedComplex<L> {
        self.complex
    }

    pub fn covers(&self, cell: CellRef) -> &[usize] {
        &self.covers[cell.rank][cell.index]
    }

    pub fn label(&self, cell: CellRef) -> &L {
        &self.complex.labels(cell.rank)[cell.index]
    }

    pub fn is_cover(&self, upper: CellRef, lower: CellRef) -> bool {
        upper.rank == lower.rank + 1 && self.covers(upper).binary_search(&lower.index).is_ok()
    }
}

/// A partial involution pairing cells of adjacent ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Vec<Option<CellRef>>>,
}

impl Matching {
    /// An empty matching on a complex with the given rank sizes.
    pub fn empty(dims: &[usize]) -> Self {
        Self {
            mate: dims.iter().map(|&d| vec![None; d]).collect(),
        }
    }

    /// Builds a matching from unordered pairs; no cell may occur twice.
    pub fn from_pairs(dims: &[usize], pairs: &[(CellRef, CellRef)]) -> Result<Self> {
        let mut m = Self::empty(dims);
        for &(a, b) in pairs {
            m.insert(a, b)?;
        }
        Ok(m)
    }

    /// Builds a matching from a partner function, checking it is an involution.
    pub fn from_fn(dims: &[usize], mut partner: impl FnMut(CellRef) -> Option<CellRef>) -> Result<Self> {
        let mut m = Self::empty(dims);
        for (rank, &d) in dims.iter().enumerate() {
            for index in 0..d {
                let cell = CellRef::new(rank, index);
                if let Some(other) = partner(cell) {
                    m.check_in_range(other)?;
                    m.mate[rank][index] = Some(other);
                }
            }
        }
        for (rank, row) in m.mate.iter().enumerate() {
            for (index, mate) in row.iter().enumerate() {
                if let Some(o) = mate {
                    if m.mate[o.rank][o.index] != Some(CellRef::new(rank, index)) {
                        return Err(Error::InvalidInput(alloc::format!(
                            "matching is not an involution at ({rank},{index})"
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    fn check_in_range(&self, c: CellRef) -> Result<()> {
        if c.rank >= self.mate.len() || c.index >= self.mate[c.rank].len() {
            return Err(Error::InvalidInput(alloc::format!(
                "cell ({},{}) is outside the complex",
                c.rank, c.index
            )));
        }
        Ok(())
    }

    pub fn insert(&mut self, a: CellRef, b: CellRef) -> Result<()> {
        self.check_in_range(a)?;
        self.check_in_range(b)?;
        if a == b || self.mate[a.rank][a.index].is_some() || self.mate[b.rank][b.index].is_some() {
            return Err(Error::InvalidInput(alloc::format!(
                "cell ({},{}) or ({},{}) is already matched",
                a.rank, a.index, b.rank, b.index
            )));
        }
        self.mate[a.rank][a.index] = Some(b);
        self.mate[b.rank][b.index] = Some(a);
        Ok(())
    }

    pub fn mate(&self, c: CellRef) -> Option<CellRef> {
        self.mate[c.rank][c.index]
    }

    /// Matched pairs as `(upper, lower)`, ordered by the upper cell.
    pub fn pairs(&self) -> Vec<(CellRef, CellRef)> {
        let mut out = Vec::new();
        for (rank, row) in self.mate.iter().enumerate() {
            for (index, mate) in row.iter().enumerate() {
                if let Some(o) = *mate {
                    if o.rank < rank {
                        out.push((CellRef::new(rank, index), o));
                    }
                }
            }
        }
        out
    }

    /// Unmatched cells per rank.
    pub fn unmatched(&self) -> Vec<Vec<usize>> {
        self.mate
            .iter()
            .map(|row| (0..row.len()).filter(|&i| row[i].is_none()).collect())
            .collect()
    }

    fn dims(&self) -> Vec<usize> {
        self.mate.iter().map(Vec::len).collect()
    }
}

/// Outcome of [`certify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseReport {
    pub acyclic: bool,
    /// A directed cycle in `D(P, M)` when the matching is not acyclic,
    /// alternating upper and lower cells and closing back on the first.
    pub cycle: Option<Vec<CellRef>>,
    pub unit_coefficients: bool,
    /// Unmatched cells per rank, as indices into the rank's labels.
    pub critical: Vec<Vec<usize>>,
    pub parity_condition: bool,
    pub vanishing_condition: bool,
    pub concluded_homology: Option<Vec<usize>>,
}

impl MorseReport {
    pub fn critical_counts(&self) -> Vec<usize> {
        self.critical.iter().map(Vec::len).collect()
    }

    pub fn matched_pairs(&self, matching: &Matching) -> usize {
        matching.pairs().len()
    }

    /// True when the critical cells are a homology basis.
    pub fn critical_cells_are_basis(&self) -> bool {
        self.concluded_homology.is_some() && self.vanishing_condition
    }
}

/// Certifies a matching against a supported complex.
///
/// Structural problems (a pair that does not join adjacent ranks, or that
/// is not a cover in the poset) are errors; a zero coefficient on a matched
/// edge is reported through `unit_coefficients`.
pub fn certify<L>(complex: &SupportedComplex<L>, matching: &Matching) -> Result<MorseReport> {
    let c = complex.complex();
    if matching.dims() != c.dims() {
        return Err(Error::InvalidInput("matching and complex have different shapes".into()));
    }
    let pairs = matching.pairs();
    for (rank, row) in matching.mate.iter().enumerate() {
        for (index, mate) in row.iter().enumerate() {
            if let Some(o) = *mate {
                let cell = CellRef::new(rank, index);
                if o.rank + 1 != rank && rank + 1 != o.rank {
                    return Err(Error::InvalidInput(alloc::format!(
                        "pair ({rank},{index})-({},{}) does not span adjacent ranks",
                        o.rank, o.index
                    )));
                }
                let (up, down) = if o.rank < rank { (cell, o) } else { (o, cell) };
                if !complex.is_cover(up, down) {
                    return Err(Error::InvalidInput(alloc::format!(
                        "pair ({},{})-({},{}) is not an edge of the Hasse diagram",
                        up.rank, up.index, down.rank, down.index
                    )));
                }
            }
        }
    }

    let unit_coefficients = pairs.iter().all(|&(up, down)| {
        c.boundary(up.rank)
            .expect("rank has a boundary")
            .get(down.index, up.index)
    });

    let mut cycle = None;
    for rank in 1..=c.top() {
        if let Some(w) = find_cycle(complex, matching, rank) {
            cycle = Some(w);
            break;
        }
    }
    let acyclic = cycle.is_none();

    let critical = matching.unmatched();
    let mut parities = critical
        .iter()
        .enumerate()
        .filter(|(_, cells)| !cells.is_empty())
        .map(|(r, _)| r % 2);
    let parity_condition = match parities.next() {
        None => true,
        Some(first) => parities.all(|p| p == first),
    };

    let vanishing_condition = critical.iter().enumerate().all(|(rank, cells)| {
        cells.iter().all(|&p| {
            let column_zero = c.boundary(rank).is_none_or(|d| d.col_is_zero(p));
            let row_zero = c.boundary(rank + 1).is_none_or(|d| d.row_is_zero(p));
            column_zero && row_zero
        })
    });

    let concluded_homology = (acyclic
        && unit_coefficients
        && (parity_condition || vanishing_condition))
        .then(|| critical.iter().map(Vec::len).collect());

    Ok(MorseReport {
        acyclic,
        cycle,
        unit_coefficients,
        critical,
        parity_condition,
        vanishing_condition,
        concluded_homology,
    })
}

/// Searches the part of `D(P, M)` between ranks `rank` and `rank - 1` for a
/// directed cycle. A cycle moves down along an unmatched cover and back up
/// along a matched one, so it is a cycle in the graph on rank `rank` with
/// `p -> M(q)` for each unmatched cover `q` of `p` that is matched upward.
fn find_cycle<L>(complex: &SupportedComplex<L>, matching: &Matching, rank: usize) -> Option<Vec<CellRef>> {
    let n = complex.complex().dim(rank);
    let successors = |p: usize| -> Vec<(usize, usize)> {
        let cell = CellRef::new(rank, p);
        let own = matching.mate(cell);
        complex
            .covers(cell)
            .iter()
            .filter_map(|&q| {
                let lower = CellRef::new(rank - 1, q);
                if own == Some(lower) {
                    return None;
                }
                match matching.mate(lower) {
                    Some(up) if up.rank == rank => Some((q, up.index)),
                    _ => None,
                }
            })
            .collect()
    };

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let mut mark = vec![Mark::New; n];
    // (node, successor list, next successor index, lower cell used to enter)
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        let mut stack: Vec<(usize, Vec<(usize, usize)>, usize)> = vec![(root, successors(root), 0)];
        let mut via: Vec<usize> = Vec::new();
        mark[root] = Mark::Open;
        while let Some(top) = stack.last_mut() {
            if top.2 == top.1.len() {
                mark[top.0] = Mark::Done;
                stack.pop();
                via.pop();
                continue;
            }
            let (q, next) = top.1[top.2];
            top.2 += 1;
            match mark[next] {
                Mark::New => {
                    mark[next] = Mark::Open;
                    via.push(q);
                    let succ = successors(next);
                    stack.push((next, succ, 0));
                }
                Mark::Open => {
                    let start = stack.iter().position(|f| f.0 == next).expect("open node on stack");
                    let mut witness = Vec::new();
                    for k in start..stack.len() {
                        witness.push(CellRef::new(rank, stack[k].0));
                        let lower = if k + 1 < stack.len() { via[k] } else { q };
                        witness.push(CellRef::new(rank - 1, lower));
                    }
                    witness.push(CellRef::new(rank, next));
                    return Some(witness);
                }
                Mark::Done => {}
            }
        }
    }
    None
}

/// Checks that a witness returned by [`certify`] is a directed cycle of
/// `D(P, M)`: consecutive cells alternate a downward unmatched cover and an
/// upward matched edge, and the walk closes.
pub fn is_directed_cycle<L>(complex: &SupportedComplex<L>, matching: &Matching, walk: &[CellRef]) -> bool {
    if walk.len() < 3 || walk.first() != walk.last() {
        return false;
    }
    walk.windows(2).all(|w| {
        let (a, b) = (w[0], w[1]);
        if b.rank + 1 == a.rank {
            complex.is_cover(a, b) && matching.mate(a) != Some(b)
        } else if a.rank + 1 == b.rank {
            complex.is_cover(b, a) && matching.mate(a) == Some(b)
        } else {
            false
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::F2Matrix;

    fn two_by_two() -> SupportedComplex<u8> {
        // two cells over two cells, every coefficient 1
        let c = GradedComplex::new(
            vec![vec![0, 1], vec![2, 3]],
            vec![F2Matrix::from_rows(&[[1u8, 1], [1, 1]])],
        )
        .unwrap();
        SupportedComplex::from_complex(c)
    }

    #[test]
    fn alternating_four_cycle_is_found() {
        let sc = two_by_two();
        let m = Matching::from_pairs(
            &[2, 2],
            &[
                (CellRef::new(1, 0), CellRef::new(0, 0)),
                (CellRef::new(1, 1), CellRef::new(0, 1)),
            ],
        )
        .unwrap();
        let report = certify(&sc, &m).unwrap();
        assert!(!report.acyclic);
        let w = report.cycle.unwrap();
        assert_eq!(w.len(), 5);
        assert!(is_directed_cycle(&sc, &m, &w));
        assert!(report.concluded_homology.is_none());
    }

    #[test]
    fn single_pair_is_acyclic() {
        let sc = two_by_two();
        let m = Matching::from_pairs(&[2, 2], &[(CellRef::new(1, 0), CellRef::new(0, 0))]).unwrap();
        let r = certify(&sc, &m).unwrap();
        assert!(r.acyclic && r.unit_coefficients);
        assert_eq!(r.critical, vec![vec![1], vec![1]]);
        // critical cells in both parities: parity fails, and vanishing fails
        assert!(!r.parity_condition);
    }

    #[test]
    fn zero_coefficient_on_matched_edge_is_reported() {
        let c = GradedComplex::new(vec![vec![0], vec![1]], vec![F2Matrix::zeros(1, 1)]).unwrap();
        let sc = SupportedComplex::new(c, vec![vec![vec![]], vec![vec![0]]]).unwrap();
        let m = Matching::from_pairs(&[1, 1], &[(CellRef::new(1, 0), CellRef::new(0, 0))]).unwrap();
        let r = certify(&sc, &m).unwrap();
        assert!(!r.unit_coefficients);
        assert!(r.concluded_homology.is_none());
    }

    #[test]
    fn structural_errors() {
        let c = GradedComplex::new(
            vec![vec![0], vec![1], vec![2]],
            vec![F2Matrix::zeros(1, 1), F2Matrix::zeros(1, 1)],
        )
        .unwrap();
        let sc = SupportedComplex::from_complex(c);
        let m = Matching::from_pairs(&[1, 1, 1], &[(CellRef::new(2, 0), CellRef::new(0, 0))]).unwrap();
        assert!(certify(&sc, &m).is_err());
        // not a cover: the boundary is zero so the support poset has no edges
        let m = Matching::from_pairs(&[1, 1, 1], &[(CellRef::new(1, 0), CellRef::new(0, 0))]).unwrap();
        assert!(certify(&sc, &m).is_err());
        assert!(Matching::from_pairs(
            &[1, 1, 1],
            &[(CellRef::new(1, 0), CellRef::new(0, 0)), (CellRef::new(1, 0), CellRef::new(2, 0))]
        )
        .is_err());
    }

    #[test]
    fn support_is_validated() {
        let c = GradedComplex::new(vec![vec![0], vec![1]], vec![F2Matrix::identity(1)]).unwrap();
        assert!(SupportedComplex::new(c, vec![vec![vec![]], vec![vec![]]]).is_err());
    }

    #[test]
    fn empty_matching_on_zero_complex_concludes() {
        let c = GradedComplex::new(vec![vec![0], vec![1]], vec![F2Matrix::zeros(1, 1)]).unwrap();
        let sc = SupportedComplex::from_complex(c);
        let r = certify(&sc, &Matching::empty(&[1, 1])).unwrap();
        assert!(r.vanishing_condition);
        assert_eq!(r.concluded_homology, Some(vec![1, 1]));
        assert!(r.critical_cells_are_basis());
    }
}
