//! Permutation groups given by generators, their orbits on points and on
//! subsets of the ground set, and the textual group specification format.
//!
//! Points are 0-indexed internally and 1-indexed in every textual form.
//! Subsets are bitmasks: bit `i` set means point `i + 1` is a member.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::limits::HARD_MAX_POINTS;
use crate::qpoly::QPolynomial;
use crate::{Error, Limits, ParseError, Result};

/// A bijection of `{0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(Error::InvalidInput("image is not a bijection".into()));
            }
            seen[x] = true;
        }
        Ok(Self { image })
    }

    /// Builds a permutation from disjoint 0-indexed cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(Error::InvalidInput(alloc::format!(
                        "point {} exceeds n = {n}",
                        x + 1
                    )));
                }
                if used[x] {
                    return Err(Error::InvalidInput(alloc::format!(
                        "point {} appears twice",
                        x + 1
                    )));
                }
                used[x] = true;
                image[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Self { image })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` followed by `other`: `x -> other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: self.image.iter().map(|&x| other.image[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x] = i;
        }
        Permutation { image }
    }

    /// Image of a subset given as a bitmask.
    pub fn apply_mask(&self, mask: u64) -> u64 {
        let mut out = 0;
        let mut m = mask;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            out |= 1 << self.image[b];
            m &= m - 1;
        }
        out
    }

    /// All cycles, each starting at its least point, ordered by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.image.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(Vec::len).collect()
    }

    /// Order of the permutation as an element of the symmetric group.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
    }

    pub fn is_derangement(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i != x)
    }
}

/// Cycle notation, 1-indexed, fixed points omitted; the identity prints as `(1)`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("(1)");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A textual group specification.
///
/// ```text
/// spec   := "cyclic:" INT | "symmetric:" INT | "wreath:" INT "," INT
///         | "gens:" INT ":" cycles ("," cycles)*
/// cycles := ( "(" INT (" " INT)* ")" )+
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    /// `k` rows of `l` boxes, numbered row-major.
    Wreath(usize, usize),
    /// Explicit generators as 1-indexed disjoint cycles.
    Gens {
        n: usize,
        generators: Vec<Vec<Vec<usize>>>,
    },
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Wreath(k, l) => write!(f, "wreath:{k},{l}"),
            GroupSpec::Gens { n, generators } => {
                write!(f, "gens:{n}:")?;
                for (g, cycles) in generators.iter().enumerate() {
                    if g > 0 {
                        f.write_str(",")?;
                    }
                    for c in cycles {
                        f.write_str("(")?;
                        for (i, x) in c.iter().enumerate() {
                            if i > 0 {
                                f.write_str(" ")?;
                            }
                            write!(f, "{x}")?;
                        }
                        f.write_str(")")?;
                    }
                }
                Ok(())
            }
        }
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> core::result::Result<(), ParseError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(ParseError::new(
                self.pos,
                alloc::format!("expected '{}', found '{}'", c as char, x as char),
            )),
            None => Err(ParseError::new(
                self.pos,
                alloc::format!("expected '{}', found end of input", c as char),
            )),
        }
    }

    fn int(&mut self) -> core::result::Result<(usize, usize), ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected an integer"));
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        text.parse()
            .map(|v| (v, start))
            .map_err(|_| ParseError::new(start, "integer out of range"))
    }

    fn done(&self) -> core::result::Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(ParseError::new(
                self.pos,
                alloc::format!("unexpected '{}'", c as char),
            )),
        }
    }
}

fn positive(v: (usize, usize), what: &str) -> core::result::Result<usize, ParseError> {
    if v.0 == 0 {
        Err(ParseError::new(v.1, alloc::format!("{what} must be at least 1")))
    } else {
        Ok(v.0)
    }
}

impl FromStr for GroupSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> core::result::Result<Self, ParseError> {
        let (kind, rest_at) = match s.find(':') {
            Some(i) => (&s[..i], i + 1),
            None => return Err(ParseError::new(0, "missing ':' after the group kind")),
        };
        let mut cur = Cursor {
            src: s.as_bytes(),
            pos: rest_at,
        };
        let spec = match kind {
            "cyclic" => GroupSpec::Cyclic(positive(cur.int()?, "n")?),
            "symmetric" => GroupSpec::Symmetric(positive(cur.int()?, "n")?),
            "wreath" => {
                let k = positive(cur.int()?, "k")?;
                cur.expect(b',')?;
                let l = positive(cur.int()?, "l")?;
                GroupSpec::Wreath(k, l)
            }
            "gens" => {
                let (n, n_at) = cur.int()?;
                let n = positive((n, n_at), "n")?;
                if n > HARD_MAX_POINTS {
                    return Err(ParseError::new(
                        n_at,
                        alloc::format!("n = {n} exceeds the hard cap of {HARD_MAX_POINTS}"),
                    ));
                }
                cur.expect(b':')?;
                let mut generators = Vec::new();
                loop {
                    generators.push(parse_generator(&mut cur, n)?);
                    if cur.peek() == Some(b',') {
                        cur.pos += 1;
                    } else {
                        break;
                    }
                }
                GroupSpec::Gens { n, generators }
            }
            _ => {
                return Err(ParseError::new(
                    0,
                    alloc::format!("unknown group kind '{kind}' (expected cyclic, symmetric, wreath or gens)"),
                ))
            }
        };
        cur.done()?;
        Ok(spec)
    }
}

fn parse_generator(cur: &mut Cursor<'_>, n: usize) -> core::result::Result<Vec<Vec<usize>>, ParseError> {
    let mut cycles = Vec::new();
    let mut used = vec![false; n + 1];
    loop {
        cur.expect(b'(')?;
        let mut cycle = Vec::new();
        let mut in_cycle = BTreeSet::new();
        loop {
            let (x, at) = cur.int()?;
            if x == 0 || x > n {
                return Err(ParseError::new(at, alloc::format!("point {x} is outside 1..={n}")));
            }
            if !in_cycle.insert(x) {
                return Err(ParseError::new(at, alloc::format!("point {x} repeats within a cycle")));
            }
            if used[x] {
                return Err(ParseError::new(
                    at,
                    alloc::format!("point {x} appears in two cycles of one generator"),
                ));
            }
            cycle.push(x);
            match cur.peek() {
                Some(b' ') => {
                    while cur.peek() == Some(b' ') {
                        cur.pos += 1;
                    }
                }
                _ => break,
            }
        }
        cur.expect(b')')?;
        for &x in &cycle {
            used[x] = true;
        }
        cycles.push(cycle);
        if cur.peek() != Some(b'(') {
            return Ok(cycles);
        }
    }
}

/// A permutation group on `{0, .., n-1}` given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Permutation>,
    spec: GroupSpec,
}

impl PermGroup {
    /// The group generated by `generators`, which must all have degree `n`.
    pub fn new(n: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != n) {
            return Err(Error::InvalidInput(alloc::format!(
                "generator of degree {} in a group on {n} points",
                g.degree()
            )));
        }
        let spec = GroupSpec::Gens {
            n,
            generators: generators
                .iter()
                .map(|g| {
                    let cycles: Vec<Vec<usize>> = g
                        .cycles()
                        .into_iter()
                        .filter(|c| c.len() > 1)
                        .map(|c| c.into_iter().map(|x| x + 1).collect())
                        .collect();
                    if cycles.is_empty() {
                        vec![vec![1]]
                    } else {
                        cycles
                    }
                })
                .collect(),
        };
        Ok(Self {
            n,
            generators,
            spec,
        })
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        let mut group = match *spec {
            GroupSpec::Cyclic(n) => Self::cyclic(n),
            GroupSpec::Symmetric(n) => Self::symmetric(n),
            GroupSpec::Wreath(k, l) => Self::wreath(k, l)?,
            GroupSpec::Gens {
                n,
                ref generators,
            } => {
                let gens = generators
                    .iter()
                    .map(|cycles| {
                        let zero: Vec<Vec<usize>> = cycles
                            .iter()
                            .map(|c| c.iter().map(|x| x - 1).collect())
                            .collect();
                        Permutation::from_cycles(n, &zero)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::new(n, gens)?
            }
        };
        group.spec = spec.clone();
        Ok(group)
    }

    pub fn parse(spec: &str) -> Result<Self> {
        let spec: GroupSpec = spec.trim().parse()?;
        Self::from_spec(&spec)
    }

    /// `<(1 2 .. n)>`
    pub fn cyclic(n: usize) -> Self {
        let cycle: Vec<usize> = (0..n).collect();
        let g = Permutation::from_cycles(n, &[cycle]).expect("valid cycle");
        let mut group = Self::new(n, vec![g]).expect("consistent degree");
        group.spec = GroupSpec::Cyclic(n);
        group
    }

    /// The full symmetric group, generated by `(1 2)` and `(1 2 .. n)`.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).expect("valid"));
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).expect("valid"));
        }
        let mut group = Self::new(n, gens).expect("consistent degree");
        group.spec = GroupSpec::Symmetric(n);
        group
    }

    /// The stabilizer of the row partition of a `k x l` box whose boxes are
    /// numbered row-major: rows are permuted wholesale and boxes are permuted
    /// within each row.
    pub fn wreath(k: usize, l: usize) -> Result<Self> {
        let n = k
            .checked_mul(l)
            .filter(|&n| n <= HARD_MAX_POINTS)
            .ok_or_else(|| Error::InvalidInput("wreath box has too many points".into()))?;
        let mut gens = Vec::new();
        if l >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]])?);
        }
        if l >= 3 {
            gens.push(Permutation::from_cycles(n, &[(0..l).collect()])?);
        }
        let row_perm = |rows: Vec<usize>| -> Result<Permutation> {
            // maps row rows[i] to rows[i+1], box by box
            let cycles: Vec<Vec<usize>> = (0..l)
                .map(|col| rows.iter().map(|&r| r * l + col).collect())
                .collect();
            Permutation::from_cycles(n, &cycles)
        };
        if k >= 2 {
            gens.push(row_perm(vec![0, 1])?);
        }
        if k >= 3 {
            gens.push(row_perm((0..k).collect())?);
        }
        let mut group = Self::new(n, gens)?;
        group.spec = GroupSpec::Wreath(k, l);
        Ok(group)
    }

    /// The trivial group on `n` points.
    pub fn trivial(n: usize) -> Self {
        Self::new(n, Vec::new()).expect("no generators")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Orbits of the group on points, each sorted, ordered by least point.
    pub fn point_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &self.generators {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn has_odd_orbit(&self) -> bool {
        self.point_orbits().iter().any(|o| o.len() % 2 == 1)
    }

    pub fn is_transitive(&self) -> bool {
        self.point_orbits().len() <= 1
    }

    /// True iff `mask` is a union of point orbits.
    pub fn is_stable(&self, mask: u64) -> bool {
        self.generators.iter().all(|g| g.apply_mask(mask) == mask)
    }

    /// All group elements, by closure under the generators. Fails once more
    /// than `limits.max_group_order` elements have been found.
    pub fn elements(&self, limits: &Limits) -> Result<Vec<Permutation>> {
        let id = Permutation::identity(self.n);
        let mut seen = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        let mut out = Vec::new();
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if seen.len() >= limits.max_group_order {
                        return Err(limits.order_exceeded(seen.len() + 1));
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
            out.push(x);
        }
        out.sort();
        Ok(out)
    }

    pub fn order(&self, limits: &Limits) -> Result<usize> {
        self.elements(limits).map(|e| e.len())
    }

    /// Whether some element of order `2^a`, `a >= 1`, moves every point.
    pub fn has_two_power_derangement(&self, limits: &Limits) -> Result<bool> {
        Ok(self.elements(limits)?.iter().any(|g| {
            g.is_derangement()
                && g.cycle_lengths().iter().all(|l| l.is_power_of_two())
                && !g.is_identity()
        }))
    }
}

/// Canonical textual form of a group.
pub fn format_group(group: &PermGroup) -> String {
    group.spec().to_string()
}

/// One orbit of the group on `2^[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetOrbit {
    /// Numerically least member.
    pub canonical: u64,
    pub orbit_size: usize,
    /// Cardinality shared by every member.
    pub member_size: usize,
}

/// Lookup tables applying one permutation to a bitmask a byte at a time.
struct MaskAction {
    tables: Vec<[u64; 256]>,
}

impl MaskAction {
    fn new(g: &Permutation) -> Self {
        let n = g.degree();
        let chunks = n.div_ceil(8);
        let mut tables = vec![[0u64; 256]; chunks];
        for (c, table) in tables.iter_mut().enumerate() {
            for byte in 0..256u64 {
                let mut out = 0;
                for b in 0..8 {
                    let p = c * 8 + b;
                    if p < n && byte >> b & 1 == 1 {
                        out |= 1u64 << g.apply(p);
                    }
                }
                table[byte as usize] = out;
            }
        }
        Self { tables }
    }

    #[inline]
    fn apply(&self, mask: u64) -> u64 {
        self.tables
            .iter()
            .enumerate()
            .fold(0, |acc, (c, t)| acc | t[(mask >> (8 * c) & 0xff) as usize])
    }
}

/// The partition of `2^[n]` into group orbits.
///
/// `orbit_of[mask]` is the index of the orbit containing `mask`; orbits are
/// indexed in increasing order of their canonical (least) member.
#[derive(Debug, Clone)]
pub struct OrbitTable {
    n: usize,
    orbit_of: Vec<u32>,
    orbits: Vec<SubsetOrbit>,
    /// Orbit indices of each cardinality, in canonical order.
    by_size: Vec<Vec<u32>>,
}

impl OrbitTable {
    /// Sweeps all `2^n` subsets once, collecting each orbit by breadth-first
    /// search from its least member.
    pub fn compute(group: &PermGroup, limits: &Limits) -> Result<Self> {
        let n = group.n();
        limits.check_points(n)?;
        let actions: Vec<MaskAction> = group.generators().iter().map(MaskAction::new).collect();
        let total = 1usize << n;
        let mut orbit_of = vec![u32::MAX; total];
        let mut orbits = Vec::new();
        let mut by_size = vec![Vec::new(); n + 1];
        let mut stack = Vec::new();
        for start in 0..total {
            if orbit_of[start] != u32::MAX {
                continue;
            }
            let id = orbits.len() as u32;
            orbit_of[start] = id;
            stack.push(start as u64);
            let mut size = 0;
            while let Some(m) = stack.pop() {
                size += 1;
                for a in &actions {
                    let y = a.apply(m);
                    if orbit_of[y as usize] == u32::MAX {
                        orbit_of[y as usize] = id;
                        stack.push(y);
                    }
                }
            }
            let member_size = (start as u64).count_ones() as usize;
            by_size[member_size].push(id);
            orbits.push(SubsetOrbit {
                canonical: start as u64,
                orbit_size: size,
                member_size,
            });
        }
        Ok(Self {
            n,
            orbit_of,
            orbits,
            by_size,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orbits(&self) -> &[SubsetOrbit] {
        &self.orbits
    }

    #[inline]
    pub fn orbit_of(&self, mask: u64) -> usize {
        self.orbit_of[mask as usize] as usize
    }

    /// Orbits of subsets of cardinality `i`, canonical order.
    pub fn of_size(&self, i: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.by_size[i].iter().map(|&x| x as usize)
    }

    pub fn count_of_size(&self, i: usize) -> usize {
        self.by_size[i].len()
    }

    /// Position of orbit `id` within its cardinality class.
    pub fn position_in_size(&self, id: usize) -> usize {
        let size = self.orbits[id].member_size;
        self.by_size[size]
            .binary_search(&(id as u32))
            .expect("orbit listed under its own size")
    }

    pub fn complement(&self, mask: u64) -> u64 {
        !mask & ((1u64 << self.n) - 1)
    }

    pub fn self_complementary_count(&self) -> usize {
        self.orbits
            .iter()
            .enumerate()
            .filter(|&(id, o)| self.orbit_of(self.complement(o.canonical)) == id)
            .count()
    }

    /// `X(G, q)`: orbits counted by cardinality.
    pub fn orbit_polynomial(&self) -> QPolynomial {
        let counts: Vec<usize> = self.by_size.iter().map(Vec::len).collect();
        QPolynomial::from_counts(&counts)
    }
}

pub fn subset_orbits(group: &PermGroup, limits: &Limits) -> Result<Vec<SubsetOrbit>> {
    Ok(OrbitTable::compute(group, limits)?.orbits)
}

pub fn self_complementary_orbit_count(group: &PermGroup, limits: &Limits) -> Result<usize> {
    Ok(OrbitTable::compute(group, limits)?.self_complementary_count())
}

pub fn orbit_polynomial(group: &PermGroup, limits: &Limits) -> Result<QPolynomial> {
    Ok(OrbitTable::compute(group, limits)?.orbit_polynomial())
}

/// Renders a bitmask as a sorted 1-indexed set, e.g. `{1,3}`.
pub fn mask_label(mask: u64) -> String {
    let mut s = String::from("{");
    let mut first = true;
    let mut m = mask;
    while m != 0 {
        let b = m.trailing_zeros();
        if !first {
            s.push(',');
        }
        first = false;
        s.push_str(&(b + 1).to_string());
        m &= m - 1;
    }
    s.push('}');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn parse_cyclic() {
        let g = PermGroup::parse("cyclic:4").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.generators().len(), 1);
        assert_eq!(g.generators()[0].image(), &[1, 2, 3, 0]);
        assert_eq!(format_group(&g), "cyclic:4");
    }

    #[test]
    fn parse_gens_dihedral() {
        let g = PermGroup::parse("gens:4:(1 2)(3 4),(1 3)").unwrap();
        assert_eq!(g.order(&lim()).unwrap(), 8);
    }

    #[test]
    fn wreath_order() {
        assert_eq!(PermGroup::parse("wreath:2,2").unwrap().order(&lim()).unwrap(), 8);
        assert_eq!(PermGroup::parse("wreath:2,3").unwrap().order(&lim()).unwrap(), 72);
        assert_eq!(PermGroup::parse("wreath:3,2").unwrap().order(&lim()).unwrap(), 48);
        assert_eq!(PermGroup::parse("symmetric:5").unwrap().order(&lim()).unwrap(), 120);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = GroupSpec::from_str("gens:4:(1 2)(2 3)").unwrap_err();
        assert_eq!(e.position, 13);
        let e = GroupSpec::from_str("gens:4:(1 5)").unwrap_err();
        assert_eq!(e.position, 10);
        let e = GroupSpec::from_str("gens:4:(1 2 1)").unwrap_err();
        assert_eq!(e.position, 12);
        let e = GroupSpec::from_str("gens:4:(1 2").unwrap_err();
        assert_eq!(e.position, 11);
        assert!(GroupSpec::from_str("cyclic:").is_err());
        assert!(GroupSpec::from_str("cyclic:0").is_err());
        assert!(GroupSpec::from_str("dihedral:4").is_err());
        assert!(GroupSpec::from_str("wreath:2").is_err());
        assert!(GroupSpec::from_str("cyclic:4x").is_err());
        assert!(GroupSpec::from_str("gens:4:").is_err());
    }

    #[test]
    fn subset_orbit_examples() {
        let orbits = subset_orbits(&PermGroup::trivial(3), &lim()).unwrap();
        assert_eq!(orbits.len(), 8);
        assert!(orbits.iter().all(|o| o.orbit_size == 1));

        let c4 = PermGroup::cyclic(4);
        let orbits = subset_orbits(&c4, &lim()).unwrap();
        let mut sizes: Vec<usize> = orbits.iter().map(|o| o.member_size).collect();
        sizes.sort();
        assert_eq!(sizes, [0, 1, 2, 2, 3, 4]);
        let pairs: Vec<_> = orbits.iter().filter(|o| o.member_size == 2).collect();
        // {1,2} (adjacent, orbit of 4) and {1,3} (orbit {{1,3},{2,4}})
        assert_eq!(pairs[0].canonical, 0b0011);
        assert_eq!(pairs[0].orbit_size, 4);
        assert_eq!(pairs[1].canonical, 0b0101);
        assert_eq!(pairs[1].orbit_size, 2);

        for n in 1..=6 {
            let orbits = subset_orbits(&PermGroup::symmetric(n), &lim()).unwrap();
            assert_eq!(orbits.len(), n + 1);
        }
    }

    #[test]
    fn self_complementary_examples() {
        assert_eq!(self_complementary_orbit_count(&PermGroup::cyclic(4), &lim()).unwrap(), 2);
        assert_eq!(self_complementary_orbit_count(&PermGroup::symmetric(4), &lim()).unwrap(), 1);
        for n in [1, 3, 5, 7] {
            assert_eq!(self_complementary_orbit_count(&PermGroup::cyclic(n), &lim()).unwrap(), 0);
        }
    }

    #[test]
    fn odd_orbit_examples() {
        assert!(PermGroup::cyclic(3).has_odd_orbit());
        assert!(!PermGroup::cyclic(4).has_odd_orbit());
        assert!(PermGroup::trivial(2).has_odd_orbit());
    }

    #[test]
    fn two_power_derangement_examples() {
        assert!(PermGroup::cyclic(4).has_two_power_derangement(&lim()).unwrap());
        assert!(!PermGroup::cyclic(3).has_two_power_derangement(&lim()).unwrap());
    }

    #[test]
    fn order_limit_is_reported() {
        let tight = Limits {
            max_group_order: 100,
            ..Limits::default()
        };
        match PermGroup::symmetric(6).order(&tight) {
            Err(Error::LimitExceeded { flag, .. }) => assert_eq!(flag, "--order-limit"),
            other => panic!("expected limit error, got {other:?}"),
        }
    }

    #[test]
    fn sweep_limit_is_reported() {
        let tight = Limits {
            max_points: 4,
            ..Limits::default()
        };
        match subset_orbits(&PermGroup::cyclic(5), &tight) {
            Err(Error::LimitExceeded { flag, .. }) => assert_eq!(flag, "--limit"),
            other => panic!("expected limit error, got {other:?}"),
        }
    }

    #[test]
    fn orbit_sizes_sum_to_binomials() {
        let g = PermGroup::parse("gens:6:(1 2 3)(4 5),(1 4)").unwrap();
        let orbits = subset_orbits(&g, &lim()).unwrap();
        let order = g.order(&lim()).unwrap();
        for i in 0..=6 {
            let total: usize = orbits.iter().filter(|o| o.member_size == i).map(|o| o.orbit_size).sum();
            let binom = (0..i).fold(1usize, |acc, j| acc * (6 - j) / (j + 1));
            assert_eq!(total, binom);
        }
        assert!(orbits.iter().all(|o| order.is_multiple_of(o.orbit_size)));
    }

    fn perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_image(v).unwrap())
    }

    proptest! {
        #[test]
        fn format_then_parse_is_identity(n in 1usize..12, seeds in proptest::collection::vec(any::<u64>(), 1..4)) {
            // deterministic shuffles from the seeds
            let gens: Vec<Permutation> = seeds.iter().map(|&s| {
                let mut v: Vec<usize> = (0..n).collect();
                let mut x = s | 1;
                for i in (1..n).rev() {
                    x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                    v.swap(i, (x % (i as u64 + 1)) as usize);
                }
                Permutation::from_image(v).unwrap()
            }).collect();
            let g = PermGroup::new(n, gens.clone()).unwrap();
            let text = format_group(&g);
            let back = PermGroup::parse(&text).unwrap();
            prop_assert_eq!(back.generators(), &gens[..]);
            prop_assert_eq!(format_group(&back), text);
        }

        #[test]
        fn permutation_inverse(p in perm(9)) {
            prop_assert!(p.then(&p.inverse()).is_identity());
        }
    }

    #[test]
    fn canonical_specs_round_trip() {
        for s in ["cyclic:7", "symmetric:3", "wreath:2,3", "gens:5:(1 2 3)(4 5),(1 2)", "gens:3:(1)"] {
            assert_eq!(format_group(&PermGroup::parse(s).unwrap()), s);
        }
    }
}
