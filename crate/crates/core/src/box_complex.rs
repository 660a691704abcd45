//! Plane partitions in an `r x c x t` box, encoded as semistandard tableaux
//! of shape `c^r` with entries in `0..=r+t-1`, with the odd-decrement
//! boundary map, its Morse matching, domino tableaux for the critical
//! cells, and the decomposition into Boolean intervals.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::GradedComplex;
use crate::gf2::F2Matrix;
use crate::morse::{CellRef, Matching, SupportedComplex};
use crate::qpoly::{macmahon, QPolynomial};
use crate::{Error, Limits, Result};

/// An `r x c` filling, row-major, rows weakly increasing and columns
/// strictly increasing, with entries in `0..=r+t-1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    r: usize,
    c: usize,
    t: usize,
    entries: Vec<usize>,
}

impl Tableau {
    pub fn new(r: usize, c: usize, t: usize, rows: &[&[usize]]) -> Result<Self> {
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput(alloc::format!("expected a {r}x{c} grid")));
        }
        let tab = Self {
            r,
            c,
            t,
            entries: rows.iter().flat_map(|row| row.iter().copied()).collect(),
        };
        if !tab.is_valid() {
            return Err(Error::InvalidInput(alloc::format!(
                "{tab} is not semistandard with entries in 0..={}",
                tab.max_value()
            )));
        }
        Ok(tab)
    }

    /// The least tableau: row `i` is constant `i` (0-indexed).
    pub fn minimal(r: usize, c: usize, t: usize) -> Self {
        Self {
            r,
            c,
            t,
            entries: (0..r).flat_map(|i| core::iter::repeat_n(i, c)).collect(),
        }
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.r, self.c, self.t)
    }

    /// `r + t - 1`
    pub fn max_value(&self) -> usize {
        self.r + self.t - 1
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> usize {
        self.entries[row * self.c + col]
    }

    fn set(&mut self, row: usize, col: usize, v: usize) {
        self.entries[row * self.c + col] = v;
    }

    pub fn row(&self, row: usize) -> &[usize] {
        &self.entries[row * self.c..(row + 1) * self.c]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.entries.chunks(self.c.max(1)).take(self.r)
    }

    pub fn entry_sum(&self) -> usize {
        self.entries.iter().sum()
    }

    /// `sum of entries - c * binom(r, 2)`.
    pub fn rank(&self) -> usize {
        self.entry_sum() - self.c * self.r * self.r.saturating_sub(1) / 2
    }

    pub fn is_valid(&self) -> bool {
        let max = self.max_value();
        (0..self.r).all(|i| {
            (0..self.c).all(|j| {
                let v = self.get(i, j);
                v <= max
                    && (j == 0 || self.get(i, j - 1) <= v)
                    && (i == 0 || self.get(i - 1, j) < v)
            })
        })
    }

    /// Plane partition obtained by subtracting the row index from each row.
    pub fn to_plane_partition(&self) -> Vec<Vec<usize>> {
        (0..self.r)
            .map(|i| self.row(i).iter().map(|&v| v - i).collect())
            .collect()
    }

    fn leftmost(&self, row: usize, v: usize) -> Option<usize> {
        self.row(row).iter().position(|&x| x == v)
    }

    fn rightmost(&self, row: usize, v: usize) -> Option<usize> {
        self.row(row).iter().rposition(|&x| x == v)
    }

    /// Copies of `v` in `row` whose cell directly above does not hold
    /// `v - 1`; every copy counts in the first row.
    fn count_lacking_above(&self, row: usize, v: usize) -> usize {
        (0..self.c)
            .filter(|&j| self.get(row, j) == v && (row == 0 || v == 0 || self.get(row - 1, j) != v - 1))
            .count()
    }

    fn distinct_values(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        let r = self.row(row);
        (0..r.len()).filter(move |&j| j == 0 || r[j - 1] != r[j]).map(move |j| r[j])
    }

    /// Odd `v` in `row` with an odd number of copies lacking `v - 1` above.
    fn decrementable(&self, row: usize, v: usize) -> bool {
        v % 2 == 1 && self.leftmost(row, v).is_some() && self.count_lacking_above(row, v) % 2 == 1
    }

    /// Even `v < r+t-1` in `row`, whose rightmost copy has no `v + 1`
    /// directly below, with an even number of copies of `v + 1` in the row
    /// lacking `v` above.
    fn incrementable(&self, row: usize, v: usize) -> bool {
        if v % 2 == 1 || v >= self.max_value() {
            return false;
        }
        let Some(j) = self.rightmost(row, v) else {
            return false;
        };
        let below_ok = row + 1 == self.r || self.get(row + 1, j) != v + 1;
        below_ok && self.count_lacking_above(row, v + 1).is_multiple_of(2)
    }

    fn decremented(&self, row: usize, v: usize) -> Option<Tableau> {
        let j = self.leftmost(row, v)?;
        let mut t = self.clone();
        t.set(row, j, v - 1);
        t.is_valid().then_some(t)
    }

    fn incremented(&self, row: usize, v: usize) -> Option<Tableau> {
        let j = self.rightmost(row, v)?;
        let mut t = self.clone();
        t.set(row, j, v + 1);
        t.is_valid().then_some(t)
    }

    /// `D(T)`: the `(row, value)` pairs an odd decrement applies to.
    pub fn decrement_set(&self) -> Vec<(usize, usize)> {
        (0..self.r)
            .flat_map(|row| {
                self.distinct_values(row)
                    .filter(move |&v| self.decrementable(row, v))
                    .map(move |v| (row, v))
            })
            .collect()
    }

    /// `E(T)`: the `(row, value)` pairs an even increment applies to.
    pub fn increment_set(&self) -> Vec<(usize, usize)> {
        (0..self.r)
            .flat_map(|row| {
                self.distinct_values(row)
                    .filter(move |&v| self.incrementable(row, v))
                    .map(move |v| (row, v))
            })
            .collect()
    }

    /// Tableaux covered by this one in the componentwise order.
    pub fn lower_covers(&self) -> Vec<Tableau> {
        let mut out = Vec::new();
        for i in 0..self.r {
            for j in 0..self.c {
                let v = self.get(i, j);
                if v == 0 {
                    continue;
                }
                let mut t = self.clone();
                t.set(i, j, v - 1);
                if t.is_valid() {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_size(r: usize, c: usize, t: usize, limits: &Limits) -> Result<()> {
    // cheap bound before computing the exact count
    if r.saturating_mul(c).saturating_mul(t) > 4096 {
        return Err(Error::LimitExceeded {
            what: "box volume r*c*t",
            requested: (r as u64).saturating_mul(c as u64).saturating_mul(t as u64),
            limit: 4096,
            flag: "--cell-limit",
        });
    }
    let count = macmahon(r, c, t).at_one();
    let count = u64::try_from(count).unwrap_or(u64::MAX);
    limits.check_cells("tableaux in the box", count)
}

/// All of `SSYT(r, c, t)` in row-major lexicographic order.
pub fn enumerate_ssyt(r: usize, c: usize, t: usize, limits: &Limits) -> Result<Vec<Tableau>> {
    if r == 0 || c == 0 {
        return Err(Error::InvalidInput("r and c must be at least 1".into()));
    }
    check_size(r, c, t, limits)?;
    let max = r + t - 1;
    let mut out = Vec::new();
    let mut cur = Tableau::minimal(r, c, t);
    fn fill(pos: usize, cur: &mut Tableau, max: usize, out: &mut Vec<Tableau>) {
        if pos == cur.entries.len() {
            out.push(cur.clone());
            return;
        }
        let (i, j) = (pos / cur.c, pos % cur.c);
        let mut lo = if j > 0 { cur.get(i, j - 1) } else { 0 };
        if i > 0 {
            lo = lo.max(cur.get(i - 1, j) + 1);
        }
        // leave room for the strictly increasing column below
        let hi = max - (cur.r - 1 - i);
        for v in lo..=hi {
            cur.set(i, j, v);
            fill(pos + 1, cur, max, out);
        }
    }
    fill(0, &mut cur, max, &mut out);
    Ok(out)
}

/// The tableaux appearing in `dT`: for each row and each odd value with an
/// odd number of copies lacking `value - 1` directly above, the tableau
/// with the leftmost copy lowered by one.
pub fn boundary(t: &Tableau) -> Vec<Tableau> {
    t.decrement_set()
        .into_iter()
        .filter_map(|(row, v)| t.decremented(row, v))
        .collect()
}

/// The matching partner of `t`, or `None` if it is critical. The first row
/// with a decrementable odd value or incrementable even value is used, and
/// within it the smallest such value.
pub fn matching(t: &Tableau) -> Option<Tableau> {
    for row in 0..t.r {
        let pick = t
            .distinct_values(row)
            .find(|&v| t.decrementable(row, v) || t.incrementable(row, v));
        if let Some(v) = pick {
            return if v % 2 == 1 {
                t.decremented(row, v)
            } else {
                t.incremented(row, v)
            };
        }
    }
    None
}

/// The unmatched tableaux.
pub fn critical_cells(r: usize, c: usize, t: usize, limits: &Limits) -> Result<Vec<Tableau>> {
    Ok(enumerate_ssyt(r, c, t, limits)?
        .into_iter()
        .filter(|x| matching(x).is_none())
        .collect())
}

/// Every even value `2i < r+t-1` has `2i+1` directly below, and each odd
/// value has an even number of copies per row lacking its predecessor above.
pub fn has_critical_form(t: &Tableau) -> bool {
    let max = t.max_value();
    (0..t.r).all(|i| {
        (0..t.c).all(|j| {
            let v = t.get(i, j);
            v % 2 == 1 || v == max || (i + 1 < t.r && t.get(i + 1, j) == v + 1)
        }) && t
            .distinct_values(i)
            .filter(|v| v % 2 == 1)
            .all(|v| t.count_lacking_above(i, v).is_multiple_of(2))
    })
}

/// The complex on `SSYT(r, c, t)` graded by rank, supported by the
/// componentwise order.
pub fn build_box_complex(r: usize, c: usize, t: usize, limits: &Limits) -> Result<SupportedComplex<Tableau>> {
    let all = enumerate_ssyt(r, c, t, limits)?;
    let mut labels: Vec<Vec<Tableau>> = vec![Vec::new(); r * c * t + 1];
    for x in all {
        let k = x.rank();
        labels[k].push(x);
    }
    let index = index_labels(&labels);
    let mut covers = vec![vec![Vec::new(); labels[0].len()]];
    let mut boundaries = Vec::with_capacity(labels.len() - 1);
    for k in 1..labels.len() {
        let mut d = F2Matrix::zeros(labels[k - 1].len(), labels[k].len());
        let mut rank_covers = Vec::with_capacity(labels[k].len());
        for (col, x) in labels[k].iter().enumerate() {
            rank_covers.push(x.lower_covers().iter().map(|y| index[k - 1][y]).collect());
            for y in boundary(x) {
                d.toggle(index[k - 1][&y], col);
            }
        }
        covers.push(rank_covers);
        boundaries.push(d);
    }
    let complex = GradedComplex::new(labels, boundaries)?;
    SupportedComplex::new(complex, covers)
}

fn index_labels(labels: &[Vec<Tableau>]) -> Vec<BTreeMap<Tableau, usize>> {
    labels
        .iter()
        .map(|rank| rank.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect())
        .collect()
}

/// The matching on a complex produced by [`build_box_complex`].
pub fn box_matching(complex: &SupportedComplex<Tableau>) -> Result<Matching> {
    let c = complex.complex();
    let index = index_labels(c.all_labels());
    Matching::from_fn(&c.dims(), |cell| {
        let x = &c.labels(cell.rank)[cell.index];
        matching(x).map(|y| {
            let k = y.rank();
            CellRef::new(k, index[k][&y])
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TileKind {
    Horizontal,
    Vertical,
    Monomino,
}

/// One tile, anchored at its top-left cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    pub row: usize,
    pub col: usize,
    pub kind: TileKind,
    pub label: usize,
}

impl Tile {
    fn cells(&self) -> impl Iterator<Item = (usize, usize)> {
        let second = match self.kind {
            TileKind::Horizontal => Some((self.row, self.col + 1)),
            TileKind::Vertical => Some((self.row + 1, self.col)),
            TileKind::Monomino => None,
        };
        core::iter::once((self.row, self.col)).chain(second)
    }
}

/// A tiling of the `r x c` rectangle by labelled dominoes and bottom-row
/// monominoes; tiles are kept in row-major order of their anchors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominoTableau {
    pub r: usize,
    pub c: usize,
    pub tiles: Vec<Tile>,
}

impl DominoTableau {
    /// Per-cell `(tile index, label)`, or `None` if tiles overlap or leave gaps.
    fn grid(&self) -> Option<Vec<(usize, usize)>> {
        let mut grid = vec![None; self.r * self.c];
        for (k, tile) in self.tiles.iter().enumerate() {
            for (i, j) in tile.cells() {
                if i >= self.r || j >= self.c || grid[i * self.c + j].is_some() {
                    return None;
                }
                grid[i * self.c + j] = Some((k, tile.label));
            }
        }
        grid.into_iter().collect()
    }

    /// Labels weakly increase along rows and strictly increase down columns
    /// between different tiles; labels are odd and at most the odd bound for
    /// `r+t-1`, except monominoes, which sit in the last row labelled `r+t-1`
    /// when that value is even.
    pub fn is_semistandard(&self, t: usize) -> bool {
        let Some(grid) = self.grid() else {
            return false;
        };
        let max = self.r + t - 1;
        let odd_bound = if max % 2 == 1 { max } else { max - 1 };
        let labels_ok = self.tiles.iter().all(|tile| match tile.kind {
            TileKind::Monomino => max.is_multiple_of(2) && tile.row + 1 == self.r && tile.label == max,
            _ => tile.label % 2 == 1 && tile.label <= odd_bound,
        });
        let at = |i: usize, j: usize| grid[i * self.c + j];
        let rows_ok = (0..self.r).all(|i| (1..self.c).all(|j| at(i, j - 1).1 <= at(i, j).1));
        let cols_ok = (1..self.r).all(|i| {
            (0..self.c).all(|j| {
                let (a, b) = (at(i - 1, j), at(i, j));
                a.0 == b.0 || a.1 < b.1
            })
        });
        labels_ok && rows_ok && cols_ok
    }

    pub fn label_grid(&self) -> Vec<Vec<usize>> {
        let grid = self.grid().expect("valid tiling");
        grid.chunks(self.c).map(|row| row.iter().map(|x| x.1).collect()).collect()
    }
}

/// Reads a critical tableau as a domino tableau: `2i` over `2i+1` becomes a
/// vertical domino labelled `2i+1`, remaining odd values pair into
/// horizontal dominoes, and an even maximal value in the last row becomes
/// monominoes.
pub fn to_domino(t: &Tableau) -> Result<DominoTableau> {
    if matching(t).is_some() {
        return Err(Error::InvalidInput(alloc::format!("{t} is not a critical cell")));
    }
    let (r, c) = (t.r, t.c);
    let max = t.max_value();
    let mut covered = vec![false; r * c];
    let mut tiles = Vec::new();
    let bad = || Error::InvalidInput(alloc::format!("{t} does not tile into dominoes"));
    for i in 0..r {
        for j in 0..c {
            if covered[i * c + j] {
                continue;
            }
            let v = t.get(i, j);
            let tile = if v.is_multiple_of(2) && v < max {
                if i + 1 >= r || t.get(i + 1, j) != v + 1 {
                    return Err(bad());
                }
                Tile { row: i, col: j, kind: TileKind::Vertical, label: v + 1 }
            } else if v.is_multiple_of(2) {
                if i + 1 != r {
                    return Err(bad());
                }
                Tile { row: i, col: j, kind: TileKind::Monomino, label: v }
            } else {
                if j + 1 >= c || covered[i * c + j + 1] || t.get(i, j + 1) != v {
                    return Err(bad());
                }
                Tile { row: i, col: j, kind: TileKind::Horizontal, label: v }
            };
            for (a, b) in tile.cells() {
                covered[a * c + b] = true;
            }
            tiles.push(tile);
        }
    }
    Ok(DominoTableau { r, c, tiles })
}

/// Every semistandard domino tableau of shape `r x c` for bound `r+t-1`,
/// enumerated directly from tilings and labellings.
pub fn enumerate_domino_tableaux(r: usize, c: usize, t: usize) -> Vec<DominoTableau> {
    let max = r + t - 1;
    let odd_bound = if max % 2 == 1 { max } else { max - 1 };
    let odd_labels: Vec<usize> = (1..=odd_bound).step_by(2).collect();
    let mut out = Vec::new();
    let mut covered = vec![false; r * c];
    let mut tiles = Vec::new();
    fn rec(
        r: usize,
        c: usize,
        t: usize,
        max: usize,
        odd_labels: &[usize],
        covered: &mut Vec<bool>,
        tiles: &mut Vec<Tile>,
        out: &mut Vec<DominoTableau>,
    ) {
        let Some(pos) = covered.iter().position(|&x| !x) else {
            let d = DominoTableau { r, c, tiles: tiles.clone() };
            if d.is_semistandard(t) {
                out.push(d);
            }
            return;
        };
        let (i, j) = (pos / c, pos % c);
        let mut options: Vec<(TileKind, Vec<usize>)> = Vec::new();
        if j + 1 < c && !covered[pos + 1] {
            options.push((TileKind::Horizontal, odd_labels.to_vec()));
        }
        if i + 1 < r {
            options.push((TileKind::Vertical, odd_labels.to_vec()));
        }
        if i + 1 == r && max.is_multiple_of(2) {
            options.push((TileKind::Monomino, vec![max]));
        }
        for (kind, labels) in options {
            for label in labels {
                let tile = Tile { row: i, col: j, kind, label };
                let cells: Vec<_> = tile.cells().collect();
                for &(a, b) in &cells {
                    covered[a * c + b] = true;
                }
                tiles.push(tile);
                rec(r, c, t, max, odd_labels, covered, tiles, out);
                tiles.pop();
                for &(a, b) in &cells {
                    covered[a * c + b] = false;
                }
            }
        }
    }
    rec(r, c, t, max, &odd_labels, &mut covered, &mut tiles, &mut out);
    out.sort();
    out
}

/// `[bottom, top]` where `top` raises `bottom` by one at each entry of
/// `E(bottom)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanInterval {
    pub bottom: Tableau,
    pub top: Tableau,
    /// `E(bottom)` as `(row, value)` pairs.
    pub free: Vec<(usize, usize)>,
}

impl BooleanInterval {
    pub fn len(&self) -> usize {
        1 << self.free.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All `2^|E|` members, each obtained by raising a subset of the free entries.
    pub fn members(&self) -> Vec<Tableau> {
        let positions: Vec<(usize, usize)> = self
            .free
            .iter()
            .map(|&(row, v)| (row, self.bottom.rightmost(row, v).expect("free value present")))
            .collect();
        (0..1usize << positions.len())
            .map(|subset| {
                let mut x = self.bottom.clone();
                for (k, &(row, col)) in positions.iter().enumerate() {
                    if subset >> k & 1 == 1 {
                        let v = x.get(row, col);
                        x.set(row, col, v + 1);
                    }
                }
                x
            })
            .collect()
    }
}

/// The bottom of the Boolean interval containing `t`: apply odd decrements
/// until none remain.
pub fn interval_bottom(t: &Tableau) -> Tableau {
    let mut x = t.clone();
    while let Some(&(row, v)) = x.decrement_set().first() {
        x = x.decremented(row, v).expect("decrement keeps the tableau valid");
    }
    x
}

pub fn interval_top(t: &Tableau) -> Tableau {
    let mut x = t.clone();
    while let Some(&(row, v)) = x.increment_set().first() {
        x = x.incremented(row, v).expect("increment keeps the tableau valid");
    }
    x
}

/// Decomposes `SSYT(r, c, t)` into Boolean intervals, one per tableau with
/// an empty decrement set. Fails if the intervals do not partition the set.
pub fn boolean_decomposition(r: usize, c: usize, t: usize, limits: &Limits) -> Result<Vec<BooleanInterval>> {
    let all = enumerate_ssyt(r, c, t, limits)?;
    let mut groups: BTreeMap<Tableau, BTreeSet<Tableau>> = BTreeMap::new();
    for x in &all {
        groups.entry(interval_bottom(x)).or_default().insert(x.clone());
    }
    let mut out = Vec::with_capacity(groups.len());
    for (bottom, members) in groups {
        let free = bottom.increment_set();
        let mut top = bottom.clone();
        for &(row, v) in &free {
            let col = bottom.rightmost(row, v).expect("free value present");
            top.set(row, col, v + 1);
        }
        if !top.is_valid() || interval_top(&bottom) != top {
            return Err(Error::InvalidInput(alloc::format!(
                "raising every free entry of {bottom} does not give its interval top"
            )));
        }
        let interval = BooleanInterval { bottom, top, free };
        let generated: BTreeSet<Tableau> = interval.members().into_iter().collect();
        if generated != members {
            return Err(Error::InvalidInput(alloc::format!(
                "interval at {} does not match the tableaux that decrement to it",
                interval.bottom
            )));
        }
        out.push(interval);
    }
    Ok(out)
}

/// `sum over bottoms of q^{||T||} (1+q)^{|E(T)|}`.
pub fn boolean_generating_function(intervals: &[BooleanInterval]) -> QPolynomial {
    let one_plus_q = QPolynomial::from_i64s(&[1, 1]);
    intervals.iter().fold(QPolynomial::zero(), |acc, iv| {
        let term = one_plus_q.pow(iv.free.len() as u32).shift(iv.bottom.entry_sum());
        &acc + &term
    })
}

/// Self-complementary plane partitions in the box, counted directly.
pub fn self_complementary_plane_partitions(r: usize, c: usize, t: usize, limits: &Limits) -> Result<usize> {
    Ok(enumerate_ssyt(r, c, t, limits)?
        .iter()
        .filter(|x| {
            let pp = x.to_plane_partition();
            (0..r).all(|i| (0..c).all(|j| pp[i][j] + pp[r - 1 - i][c - 1 - j] == t))
        })
        .count())
}
