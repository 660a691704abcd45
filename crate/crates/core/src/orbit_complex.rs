//! The four orbit complexes of a permutation group over GF(2).
//!
//! For `G <= S_n` the chain space in degree `i` has one basis vector per
//! `G`-orbit on `i`-subsets of `[n]`. The down map `D` removes one point
//! and the up map `U` adds one, taken either on invariants (orbit sums) or
//! on coinvariants (orbit classes). The `U` complexes are cochain complexes;
//! they are stored reindexed by `i -> n - i` so that every kind is a
//! homological [`GradedComplex`] and one homology routine serves all four.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::complex::GradedComplex;
use crate::gf2::F2Matrix;
use crate::permgroup::{OrbitTable, PermGroup};
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComplexKind {
    InvariantsDown,
    CoinvariantsDown,
    InvariantsUp,
    CoinvariantsUp,
}

impl ComplexKind {
    pub const ALL: [ComplexKind; 4] = [
        ComplexKind::InvariantsDown,
        ComplexKind::CoinvariantsDown,
        ComplexKind::InvariantsUp,
        ComplexKind::CoinvariantsUp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ComplexKind::InvariantsDown => "inv-d",
            ComplexKind::CoinvariantsDown => "coinv-d",
            ComplexKind::InvariantsUp => "inv-u",
            ComplexKind::CoinvariantsUp => "coinv-u",
        }
    }

    /// Whether homological rank `h` holds subsets of cardinality `n - h`.
    pub fn is_reindexed(self) -> bool {
        matches!(self, ComplexKind::InvariantsUp | ComplexKind::CoinvariantsUp)
    }
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ComplexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ComplexKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                Error::InvalidInput(alloc::format!(
                    "unknown complex kind '{s}' (expected inv-d, coinv-d, inv-u or coinv-u)"
                ))
            })
    }
}

/// Builds one of the four complexes. Labels are the canonical (least)
/// subset bitmask of each orbit.
pub fn build(group: &PermGroup, kind: ComplexKind, limits: &Limits) -> Result<GradedComplex<u64>> {
    let table = OrbitTable::compute(group, limits)?;
    Ok(build_from_table(&table, kind))
}

/// Same as [`build`], reusing an orbit sweep.
pub fn build_from_table(table: &OrbitTable, kind: ComplexKind) -> GradedComplex<u64> {
    let n = table.n();
    let card_at = |h: usize| if kind.is_reindexed() { n - h } else { h };
    let labels: Vec<Vec<u64>> = (0..=n)
        .map(|h| {
            table
                .of_size(card_at(h))
                .map(|id| table.orbits()[id].canonical)
                .collect()
        })
        .collect();

    let full = (1u64 << n) - 1;
    let boundaries = (1..=n)
        .map(|h| {
            let rows = labels[h - 1].len();
            let cols = labels[h].len();
            let mut d = F2Matrix::zeros(rows, cols);
            let pos = |mask: u64| table.position_in_size(table.orbit_of(mask));
            match kind {
                // (S, T): number of j outside a fixed S with S + j in the orbit of T
                ComplexKind::InvariantsDown => {
                    for (r, &s) in labels[h - 1].iter().enumerate() {
                        for j in bits(full & !s) {
                            d.toggle(r, pos(s | 1 << j));
                        }
                    }
                }
                // (S, T): number of j in a fixed T with T - j in the orbit of S
                ComplexKind::CoinvariantsDown => {
                    for (c, &t) in labels[h].iter().enumerate() {
                        for j in bits(t) {
                            d.toggle(pos(t & !(1 << j)), c);
                        }
                    }
                }
                // rows hold cardinality |S| + 1, columns cardinality |S|
                ComplexKind::InvariantsUp => {
                    for (r, &t) in labels[h - 1].iter().enumerate() {
                        for j in bits(t) {
                            d.toggle(r, pos(t & !(1 << j)));
                        }
                    }
                }
                ComplexKind::CoinvariantsUp => {
                    for (c, &s) in labels[h].iter().enumerate() {
                        for j in bits(full & !s) {
                            d.toggle(pos(s | 1 << j), c);
                        }
                    }
                }
            }
            d
        })
        .collect();
    GradedComplex::new(labels, boundaries).expect("orbit complex shapes are consistent")
}

fn bits(mut m: u64) -> impl Iterator<Item = u32> {
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros();
            m &= m - 1;
            Some(b)
        }
    })
}

pub fn homology_ranks<L>(complex: &GradedComplex<L>) -> Vec<usize> {
    complex.homology_ranks()
}

pub fn euler_characteristic<L>(complex: &GradedComplex<L>) -> i64 {
    complex.euler_characteristic()
}

/// The down map on the full complex `C(F_2) = span{e_T : T subset of [n]}`,
/// indexed by bitmask.
pub fn full_down_map(n: usize) -> F2Matrix {
    let size = 1usize << n;
    let mut d = F2Matrix::zeros(size, size);
    for t in 0..size as u64 {
        for j in bits(t) {
            d.set((t & !(1 << j)) as usize, t as usize, true);
        }
    }
    d
}

/// `U^(S)(e_T) = sum over i in S \ T of e_{T + i}` on the full complex.
pub fn masked_up_map(n: usize, stable: u64) -> F2Matrix {
    let size = 1usize << n;
    let mut u = F2Matrix::zeros(size, size);
    for t in 0..size as u64 {
        for i in bits(stable & !t) {
            u.set((t | 1 << i) as usize, t as usize, true);
        }
    }
    u
}

/// Verifies `D U^(S) + U^(S) D = |S| I` over GF(2) on the full
/// `2^n`-dimensional complex. `S` must be a union of point orbits.
pub fn masked_homotopy_check(group: &PermGroup, stable: u64, limits: &Limits) -> Result<bool> {
    let n = group.n();
    limits.check_points(n)?;
    if n < 64 && stable >> n != 0 {
        return Err(Error::InvalidInput("subset mentions points beyond n".into()));
    }
    if !group.is_stable(stable) {
        return Err(Error::InvalidInput(alloc::format!(
            "{} is not stable under the group",
            crate::permgroup::mask_label(stable)
        )));
    }
    let d = full_down_map(n);
    let u = masked_up_map(n, stable);
    let lhs = d.multiply(&u)?.add(&u.multiply(&d)?)?;
    let rhs = if stable.count_ones() % 2 == 1 {
        F2Matrix::identity(1 << n)
    } else {
        F2Matrix::zeros(1 << n, 1 << n)
    };
    Ok(lhs == rhs)
}

/// Every union of point orbits of the group, as bitmasks in increasing order.
pub fn stable_subsets(group: &PermGroup) -> Vec<u64> {
    let orbits: Vec<u64> = group
        .point_orbits()
        .iter()
        .map(|o| o.iter().fold(0u64, |m, &x| m | 1 << x))
        .collect();
    let mut out: Vec<u64> = (0..1u64 << orbits.len())
        .map(|choice| {
            bits(choice).fold(0u64, |m, k| m | orbits[k as usize])
        })
        .collect();
    out.sort_unstable();
    out
}

/// The union of the point orbits of odd size.
pub fn odd_orbit_union(group: &PermGroup) -> u64 {
    group
        .point_orbits()
        .iter()
        .filter(|o| o.len() % 2 == 1)
        .flat_map(|o| o.iter())
        .fold(0u64, |m, &x| m | 1 << x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn c4_inv_d() {
        let c = build(&PermGroup::cyclic(4), ComplexKind::InvariantsDown, &lim()).unwrap();
        assert_eq!(c.dims(), [1, 1, 2, 1, 1]);
        assert!(c.is_chain_complex());
        assert_eq!(c.homology_ranks(), [1, 0, 1, 0, 0]);
        assert_eq!(c.euler_characteristic(), 2);
    }

    #[test]
    fn c6_and_c3() {
        let c6 = build(&PermGroup::cyclic(6), ComplexKind::InvariantsDown, &lim()).unwrap();
        assert_eq!(c6.homology_ranks(), [1, 0, 0, 0, 1, 0, 0]);
        let c3 = build(&PermGroup::cyclic(3), ComplexKind::InvariantsDown, &lim()).unwrap();
        assert_eq!(c3.homology_ranks(), [0, 0, 0, 0]);
        assert_eq!(c3.euler_characteristic(), 0);
    }

    #[test]
    fn symmetric_group_entries_count_extensions() {
        // For S_n every orbit space is one-dimensional; in inv-D the entry of
        // d_i is the number of ways to extend a fixed (i-1)-set inside the
        // i-subsets, which is n - i + 1.
        for n in 1..=7 {
            let c = build(&PermGroup::symmetric(n), ComplexKind::InvariantsDown, &lim()).unwrap();
            for i in 1..=n {
                let d = c.boundary(i).unwrap();
                assert_eq!((d.rows(), d.cols()), (1, 1));
                assert_eq!(d.get(0, 0), (n - i + 1) % 2 == 1, "n={n} i={i}");
            }
            // coinvariants: a fixed i-set has i faces
            let c = build(&PermGroup::symmetric(n), ComplexKind::CoinvariantsDown, &lim()).unwrap();
            for i in 1..=n {
                assert_eq!(c.boundary(i).unwrap().get(0, 0), i % 2 == 1);
            }
        }
        let s4 = build(&PermGroup::symmetric(4), ComplexKind::InvariantsDown, &lim()).unwrap();
        assert_eq!(s4.euler_characteristic(), 1);
    }

    #[test]
    fn trivial_group_is_a_simplex() {
        for n in 1..=6 {
            let g = PermGroup::trivial(n);
            for kind in ComplexKind::ALL {
                let c = build(&g, kind, &lim()).unwrap();
                let binoms: Vec<usize> = (0..=n)
                    .map(|i| (0..i).fold(1, |acc, j| acc * (n - j) / (j + 1)))
                    .collect();
                assert_eq!(c.dims(), binoms);
                assert!(c.is_chain_complex());
                // Without augmentation a simplex has H_0 = F_2, but the
                // trivial group always has odd orbits, so inv-D is acyclic
                // here: d_1 hits the empty set from every point.
                let h = c.homology_ranks();
                assert_eq!(h.iter().sum::<usize>(), 0, "n={n} kind={kind}");
            }
        }
    }

    #[test]
    fn masked_homotopy_examples() {
        let c3 = PermGroup::cyclic(3);
        assert!(masked_homotopy_check(&c3, 0b111, &lim()).unwrap());
        assert!(masked_homotopy_check(&c3, 0, &lim()).unwrap());
        let c4 = PermGroup::cyclic(4);
        assert!(masked_homotopy_check(&c4, 0b1111, &lim()).unwrap());
        assert!(masked_homotopy_check(&c4, 0b0011, &lim()).is_err());
    }

    #[test]
    fn stable_subsets_of_two_orbits() {
        let g = PermGroup::parse("gens:4:(1 2)").unwrap();
        assert_eq!(stable_subsets(&g), vec![0, 0b0011, 0b0100, 0b0111, 0b1000, 0b1011, 0b1100, 0b1111]);
        assert_eq!(odd_orbit_union(&g), 0b1100);
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ComplexKind::ALL {
            assert_eq!(k.as_str().parse::<ComplexKind>().unwrap(), k);
        }
        assert!("inv".parse::<ComplexKind>().is_err());
    }
}
