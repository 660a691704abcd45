//! Partitions in a `k x l` rectangle: the down-map complex of the wreath
//! product `S_l wr S_k`, its Morse matching, critical cells, and the
//! bijection from critical cells to self-complementary partitions.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::GradedComplex;
use crate::gf2::F2Matrix;
use crate::morse::{CellRef, Matching, SupportedComplex};
use crate::{Error, Limits, Result};

/// `l >= parts[0] >= .. >= parts[k-1] >= 0`, zeros kept.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RectPartition {
    k: usize,
    l: usize,
    parts: Vec<usize>,
}

impl RectPartition {
    pub fn new(k: usize, l: usize, parts: Vec<usize>) -> Result<Self> {
        if parts.len() != k {
            return Err(Error::InvalidInput(alloc::format!(
                "expected {k} parts, got {}",
                parts.len()
            )));
        }
        if parts.first().is_some_and(|&p| p > l) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(alloc::format!(
                "{parts:?} is not a partition inside a {k}x{l} rectangle"
            )));
        }
        Ok(Self { k, l, parts })
    }

    pub fn empty(k: usize, l: usize) -> Self {
        Self {
            k,
            l,
            parts: vec![0; k],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn multiplicity(&self, value: usize) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    /// The complement inside the rectangle, rotated by a half turn.
    pub fn complement(&self) -> Self {
        Self {
            k: self.k,
            l: self.l,
            parts: self.parts.iter().rev().map(|&p| self.l - p).collect(),
        }
    }

    pub fn is_self_complementary(&self) -> bool {
        *self == self.complement()
    }

    /// Whether lowering part `i` (0-indexed) by one leaves a partition.
    pub fn can_reduce(&self, i: usize) -> bool {
        i < self.k && self.parts[i] >= 1 && (i + 1 == self.k || self.parts[i + 1] < self.parts[i])
    }

    pub fn can_raise(&self, i: usize) -> bool {
        i < self.k && self.parts[i] < self.l && (i == 0 || self.parts[i - 1] > self.parts[i])
    }

    fn with_part(&self, i: usize, value: usize) -> Self {
        let mut p = self.clone();
        p.parts[i] = value;
        p
    }

    pub fn reduced(&self, i: usize) -> Option<Self> {
        self.can_reduce(i).then(|| self.with_part(i, self.parts[i] - 1))
    }

    pub fn raised(&self, i: usize) -> Option<Self> {
        self.can_raise(i).then(|| self.with_part(i, self.parts[i] + 1))
    }

    /// Partitions covered by this one, one per reducible part.
    pub fn lower_covers(&self) -> impl Iterator<Item = (usize, Self)> + '_ {
        (0..self.k).filter_map(move |i| self.reduced(i).map(|p| (i, p)))
    }
}

impl fmt::Display for RectPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for RectPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions in the rectangle, ordered by size and then
/// lexicographically by parts.
pub fn enumerate(k: usize, l: usize) -> Vec<RectPartition> {
    fn rec(k: usize, l: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<RectPartition>) {
        if prefix.len() == k {
            out.push(RectPartition {
                k,
                l,
                parts: prefix.clone(),
            });
            return;
        }
        for p in 0..=max {
            prefix.push(p);
            rec(k, l, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, l, l, &mut Vec::with_capacity(k), &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.parts.cmp(&b.parts)));
    out
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, j| acc * (n - j) as u64 / (j as u64 + 1))
}

/// The coefficient of `mu` in `D(lambda)` when `mu` lowers part `i`
/// (0-indexed): `(l - lambda_i + 1)(mult(lambda_i - 1) + 1)` mod 2.
pub fn boundary_coefficient(lambda: &RectPartition, i: usize) -> Result<bool> {
    if !lambda.can_reduce(i) {
        return Err(Error::InvalidInput(alloc::format!(
            "lowering part {} of {lambda} does not give a partition",
            i + 1
        )));
    }
    let v = lambda.parts[i];
    let value = (lambda.l - v + 1) * (lambda.multiplicity(v - 1) + 1);
    Ok(value % 2 == 1)
}

/// `(value, index)` of the last nonzero part with the parity of `l`.
fn part_a(lambda: &RectPartition) -> Option<(usize, usize)> {
    (0..lambda.k)
        .rev()
        .find(|&i| lambda.parts[i] > 0 && lambda.parts[i] % 2 == lambda.l % 2)
        .map(|i| (lambda.parts[i], i))
}

/// `(value, index)` of the first occurrence of the smallest part with odd
/// multiplicity and parity opposite to `l`. Zero parts count.
fn part_b(lambda: &RectPartition) -> Option<(usize, usize)> {
    (0..lambda.k)
        .rev()
        .map(|i| lambda.parts[i])
        .filter(|&v| v % 2 != lambda.l % 2 && lambda.multiplicity(v) % 2 == 1)
        .min()
        .map(|v| (v, lambda.parts.iter().position(|&p| p == v).expect("present")))
}

/// The matching partner of `lambda`, or `None` if it is critical.
pub fn matching(lambda: &RectPartition) -> Option<RectPartition> {
    match (part_a(lambda), part_b(lambda)) {
        (None, None) => None,
        (Some((a, ia)), b) if b.is_none_or(|(bv, _)| a < bv) => {
            Some(lambda.reduced(ia).expect("last occurrence of a positive part"))
        }
        (_, Some((_, ib))) => Some(lambda.raised(ib).expect("first occurrence below l")),
        (Some(_), None) => unreachable!(),
    }
}

/// Partitions whose nonzero parts all have even multiplicity and parity
/// opposite to `l`, with an even number of zero parts when `l` is odd.
pub fn critical_cells(k: usize, l: usize) -> Vec<RectPartition> {
    enumerate(k, l)
        .into_iter()
        .filter(|p| {
            let nonzero_ok = p
                .parts
                .iter()
                .filter(|&&v| v > 0)
                .all(|&v| v % 2 != l % 2 && p.multiplicity(v) % 2 == 0);
            let zero_ok = l.is_multiple_of(2) || p.multiplicity(0) % 2 == 0;
            nonzero_ok && zero_ok
        })
        .collect()
}

/// Self-complementary partitions, by direct comparison with the complement.
pub fn self_complementary(k: usize, l: usize) -> Vec<RectPartition> {
    enumerate(k, l)
        .into_iter()
        .filter(RectPartition::is_self_complementary)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    N,
    E,
}

/// The lattice path of a partition from the south-west to the north-east
/// corner of the rectangle along the south-east boundary of its diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NEWord {
    pub letters: Vec<Step>,
}

impl NEWord {
    pub fn of(lambda: &RectPartition) -> Self {
        let mut letters = Vec::with_capacity(lambda.k + lambda.l);
        let mut col = 0;
        for &p in lambda.parts.iter().rev() {
            letters.extend(core::iter::repeat_n(Step::E, p - col));
            letters.push(Step::N);
            col = p;
        }
        letters.extend(core::iter::repeat_n(Step::E, lambda.l - col));
        Self { letters }
    }

    pub fn to_partition(&self, k: usize, l: usize) -> Result<RectPartition> {
        let ns = self.letters.iter().filter(|&&s| s == Step::N).count();
        if ns != k || self.letters.len() != k + l {
            return Err(Error::InvalidInput("word has the wrong letter counts".into()));
        }
        let mut parts = Vec::with_capacity(k);
        let mut east = 0;
        for s in &self.letters {
            match s {
                Step::E => east += 1,
                Step::N => parts.push(east),
            }
        }
        parts.reverse();
        RectPartition::new(k, l, parts)
    }

    pub fn reversed(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn is_palindrome(&self) -> bool {
        self.letters.iter().eq(self.letters.iter().rev())
    }

    /// Run lengths `(k_1, l_1), .., (k_t, l_t)` of `N^{k_1} E^{l_1} .. N^{k_t} E^{l_t}`,
    /// with `k_1` and `l_t` possibly zero and every other run positive.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut runs = Vec::new();
        let mut i = 0;
        let w = &self.letters;
        loop {
            let mut n = 0;
            while i < w.len() && w[i] == Step::N {
                n += 1;
                i += 1;
            }
            let mut e = 0;
            while i < w.len() && w[i] == Step::E {
                e += 1;
                i += 1;
            }
            runs.push((n, e));
            if i >= w.len() {
                break;
            }
        }
        runs
    }

    fn from_runs(runs: &[(usize, usize)]) -> Self {
        let mut letters = Vec::new();
        for &(n, e) in runs {
            letters.extend(core::iter::repeat_n(Step::N, n));
            letters.extend(core::iter::repeat_n(Step::E, e));
        }
        Self { letters }
    }

    fn concat(parts: &[&NEWord]) -> Self {
        Self {
            letters: parts.iter().flat_map(|w| w.letters.iter().copied()).collect(),
        }
    }
}

impl fmt::Display for NEWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.letters {
            f.write_str(match s {
                Step::N => "N",
                Step::E => "E",
            })?;
        }
        Ok(())
    }
}

fn half(x: usize, what: &str) -> Result<usize> {
    if !x.is_multiple_of(2) {
        return Err(Error::InvalidInput(alloc::format!("{what} run is odd in a critical cell word")));
    }
    Ok(x / 2)
}

/// The bijection from critical cells to self-complementary partitions,
/// built by halving the runs of the path word and assembling a palindrome.
pub fn phi(lambda: &RectPartition) -> Result<RectPartition> {
    let (k, l) = (lambda.k, lambda.l);
    if k % 2 == 1 && l % 2 == 1 {
        return Err(Error::InvalidInput(
            "no critical cells exist when k and l are both odd".into(),
        ));
    }
    if matching(lambda).is_some() {
        return Err(Error::InvalidInput(alloc::format!("{lambda} is not a critical cell")));
    }
    let word = NEWord::of(lambda);
    let runs = word.runs();
    let t = runs.len();
    let is_empty = lambda.size() == 0;
    let n = NEWord {
        letters: vec![Step::N],
    };
    let e = NEWord {
        letters: vec![Step::E],
    };

    let image = if k % 2 == 0 && l % 2 == 1 {
        let mut halved = Vec::with_capacity(t);
        for (j, &(kj, lj)) in runs.iter().enumerate() {
            let lj = if j + 1 == t { (lj - 1) / 2 } else { half(lj, "E")? };
            halved.push((half(kj, "N")?, lj));
        }
        let w = NEWord::from_runs(&halved);
        NEWord::concat(&[&w, &e, &w.reversed()])
    } else if k % 2 == 0 {
        if is_empty {
            NEWord::from_runs(&[(k / 2, l), (k / 2, 0)])
        } else {
            let mut halved = Vec::with_capacity(t);
            for (j, &(kj, lj)) in runs.iter().enumerate() {
                let lj = if j == 0 {
                    lj.div_ceil(2)
                } else if j + 1 == t {
                    (lj - 1) / 2
                } else {
                    half(lj, "E")?
                };
                halved.push((half(kj, "N")?, lj));
            }
            let w = NEWord::from_runs(&halved);
            NEWord::concat(&[&w, &w.reversed()])
        }
    } else if is_empty {
        NEWord::from_runs(&[((k - 1) / 2, l / 2), (1, l / 2), ((k - 1) / 2, 0)])
    } else {
        let mut halved = Vec::with_capacity(t);
        for (j, &(kj, lj)) in runs.iter().enumerate() {
            let kj = if j == 0 { (kj - 1) / 2 } else { half(kj, "N")? };
            let lj = if j == 0 {
                lj.div_ceil(2)
            } else if j + 1 == t {
                (lj - 1) / 2
            } else {
                half(lj, "E")?
            };
            halved.push((kj, lj));
        }
        let w = NEWord::from_runs(&halved);
        NEWord::concat(&[&w, &n, &w.reversed()])
    };
    image.to_partition(k, l)
}

/// The partition whose diagram lies in the orbit of a set of boxes under
/// the row-stabilizer; boxes are numbered row-major from 0.
pub fn partition_of_mask(mask: u64, k: usize, l: usize) -> RectPartition {
    let row_bits = if l == 64 { u64::MAX } else { (1u64 << l) - 1 };
    let mut parts: Vec<usize> = (0..k)
        .map(|r| ((mask >> (r * l)) & row_bits).count_ones() as usize)
        .collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    RectPartition { k, l, parts }
}

/// The complex on `P(k, l)` with boundary coefficients from
/// [`boundary_coefficient`], supported by the inclusion order.
pub fn build_rect_complex(k: usize, l: usize, limits: &Limits) -> Result<SupportedComplex<RectPartition>> {
    limits.check_cells("partitions in the rectangle", binomial(k + l, k))?;
    let all = enumerate(k, l);
    let mut labels: Vec<Vec<RectPartition>> = vec![Vec::new(); k * l + 1];
    for p in all {
        labels[p.size()].push(p);
    }
    let index: Vec<BTreeMap<&RectPartition, usize>> = labels
        .iter()
        .map(|rank| rank.iter().enumerate().map(|(i, p)| (p, i)).collect())
        .collect();
    let mut covers = vec![vec![Vec::new(); 1]; 1];
    let mut boundaries = Vec::with_capacity(k * l);
    for r in 1..labels.len() {
        let mut d = F2Matrix::zeros(labels[r - 1].len(), labels[r].len());
        let mut rank_covers = Vec::with_capacity(labels[r].len());
        for (c, lambda) in labels[r].iter().enumerate() {
            let mut cov = Vec::new();
            for (i, mu) in lambda.lower_covers() {
                let row = index[r - 1][&mu];
                cov.push(row);
                if boundary_coefficient(lambda, i)? {
                    d.set(row, c, true);
                }
            }
            rank_covers.push(cov);
        }
        covers.push(rank_covers);
        boundaries.push(d);
    }
    let complex = GradedComplex::new(labels, boundaries)?;
    SupportedComplex::new(complex, covers)
}

/// The matching on a complex produced by [`build_rect_complex`].
pub fn rect_matching(complex: &SupportedComplex<RectPartition>) -> Result<Matching> {
    let c = complex.complex();
    let index: Vec<BTreeMap<&RectPartition, usize>> = c
        .all_labels()
        .iter()
        .map(|rank| rank.iter().enumerate().map(|(i, p)| (p, i)).collect())
        .collect();
    Matching::from_fn(&c.dims(), |cell| {
        let lambda = &c.labels(cell.rank)[cell.index];
        matching(lambda).map(|mu| {
            let r = mu.size();
            CellRef::new(r, index[r][&mu])
        })
    })
}

/// Whether the rectangle complex equals the inv-D complex of the wreath
/// product entry for entry once each orbit is relabelled by its partition.
pub fn matches_wreath_complex(complex: &SupportedComplex<RectPartition>, limits: &Limits) -> Result<bool> {
    let c = complex.complex();
    let k = c.labels(0)[0].k();
    let l = c.labels(0)[0].l();
    let group = crate::permgroup::PermGroup::wreath(k, l)?;
    let orbit = crate::orbit_complex::build(&group, crate::orbit_complex::ComplexKind::InvariantsDown, limits)?;
    if orbit.dims() != c.dims() {
        return Ok(false);
    }
    let index: Vec<BTreeMap<&RectPartition, usize>> = c
        .all_labels()
        .iter()
        .map(|rank| rank.iter().enumerate().map(|(i, p)| (p, i)).collect())
        .collect();
    // position in the rectangle complex of each orbit label
    let mut perm: Vec<Vec<usize>> = Vec::with_capacity(orbit.top() + 1);
    for (r, masks) in orbit.all_labels().iter().enumerate() {
        let mut p = Vec::with_capacity(masks.len());
        for &m in masks {
            match index[r].get(&partition_of_mask(m, k, l)) {
                Some(&i) => p.push(i),
                None => return Ok(false),
            }
        }
        perm.push(p);
    }
    for r in 1..=c.top() {
        let (a, b) = (orbit.boundary(r).expect("rank"), c.boundary(r).expect("rank"));
        for (oi, &ri) in perm[r - 1].iter().enumerate() {
            for (oj, &rj) in perm[r].iter().enumerate() {
                if a.get(oi, oj) != b.get(ri, rj) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wreath_relabelling() {
        for (k, l) in [(2, 2), (2, 3), (3, 3), (2, 5)] {
            let c = build_rect_complex(k, l, &Limits::default()).unwrap();
            assert!(matches_wreath_complex(&c, &Limits::default()).unwrap(), "k={k} l={l}");
        }
    }

    fn rp(k: usize, l: usize, parts: &[usize]) -> RectPartition {
        RectPartition::new(k, l, parts.to_vec()).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let lam = rp(2, 2, &[2, 1]);
        assert!(!boundary_coefficient(&lam, 0).unwrap());
        assert!(!boundary_coefficient(&lam, 1).unwrap());
        assert!(!boundary_coefficient(&rp(2, 2, &[1, 0]), 0).unwrap());
        assert!(!boundary_coefficient(&rp(2, 2, &[1, 1]), 1).unwrap());
        assert!(boundary_coefficient(&rp(2, 2, &[2, 2]), 1).unwrap());
        assert!(boundary_coefficient(&rp(2, 2, &[2, 2]), 0).is_err());
        assert!(boundary_coefficient(&rp(2, 2, &[0, 0]), 0).is_err());
    }

    #[test]
    fn matching_examples() {
        assert_eq!(matching(&rp(2, 2, &[2, 1])), Some(rp(2, 2, &[2, 2])));
        assert_eq!(matching(&rp(2, 2, &[2, 2])), Some(rp(2, 2, &[2, 1])));
        assert_eq!(matching(&rp(2, 2, &[1, 1])), None);
        assert_eq!(matching(&rp(2, 2, &[0, 0])), None);
    }

    #[test]
    fn matching_is_an_involution_changing_one_part_by_one() {
        for k in 1..=6 {
            for l in 1..=6 {
                for lam in enumerate(k, l) {
                    if let Some(mu) = matching(&lam) {
                        assert_eq!(matching(&mu).as_ref(), Some(&lam), "{lam} -> {mu}");
                        let diff: usize = lam
                            .parts
                            .iter()
                            .zip(&mu.parts)
                            .map(|(a, b)| a.abs_diff(*b))
                            .sum();
                        assert_eq!(diff, 1);
                    }
                }
            }
        }
    }

    #[test]
    fn critical_examples() {
        assert_eq!(critical_cells(2, 2), vec![rp(2, 2, &[0, 0]), rp(2, 2, &[1, 1])]);
        assert!(critical_cells(3, 3).is_empty());
        assert_eq!(critical_cells(2, 1), vec![rp(2, 1, &[0, 0])]);
    }

    #[test]
    fn critical_cells_are_the_unmatched_ones() {
        for k in 1..=6 {
            for l in 1..=6 {
                let unmatched: Vec<_> = enumerate(k, l).into_iter().filter(|p| matching(p).is_none()).collect();
                let mut crit = critical_cells(k, l);
                crit.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.parts.cmp(&b.parts)));
                assert_eq!(unmatched, crit, "({k},{l})");
            }
        }
    }

    #[test]
    fn words() {
        assert_eq!(NEWord::of(&rp(2, 2, &[0, 0])).to_string(), "NNEE");
        assert_eq!(NEWord::of(&rp(2, 2, &[1, 1])).to_string(), "ENNE");
        assert_eq!(NEWord::of(&rp(2, 2, &[2, 0])).to_string(), "NEEN");
        for lam in enumerate(3, 4) {
            let w = NEWord::of(&lam);
            assert_eq!(w.to_partition(3, 4).unwrap(), lam);
            assert_eq!(w.reversed().to_partition(3, 4).unwrap(), lam.complement());
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&rp(2, 2, &[0, 0])).unwrap(), rp(2, 2, &[2, 0]));
        assert_eq!(phi(&rp(2, 2, &[1, 1])).unwrap(), rp(2, 2, &[1, 1]));
        assert!(phi(&rp(2, 2, &[2, 1])).is_err());
        assert!(phi(&rp(3, 3, &[0, 0, 0])).is_err());
    }

    #[test]
    fn phi_lands_in_self_complementary() {
        for k in 1..=6 {
            for l in 1..=6 {
                if k % 2 == 1 && l % 2 == 1 {
                    continue;
                }
                for lam in critical_cells(k, l) {
                    let img = phi(&lam).unwrap();
                    assert!(img.is_self_complementary(), "({k},{l}) {lam} -> {img}");
                }
            }
        }
    }

    #[test]
    fn mask_to_partition() {
        // rows of 3: boxes {1,2} in row 1 and {4} in row 2 -> (2,1)
        assert_eq!(partition_of_mask(0b001_011, 2, 3), rp(2, 3, &[2, 1]));
        assert_eq!(partition_of_mask(0b111_000, 2, 3), rp(2, 3, &[3, 0]));
    }

    #[test]
    fn small_complexes() {
        let c = build_rect_complex(2, 2, &Limits::default()).unwrap();
        assert_eq!(c.complex().dims(), [1, 1, 2, 1, 1]);
        assert_eq!(c.complex().homology_ranks(), [1, 0, 1, 0, 0]);
        let c = build_rect_complex(1, 1, &Limits::default()).unwrap();
        assert_eq!(c.complex().dims(), [1, 1]);
        assert!(c.complex().boundary(1).unwrap().get(0, 0));
        assert_eq!(c.complex().homology_ranks(), [0, 0]);
    }
}
