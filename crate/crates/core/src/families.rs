//! Two families of groups: cyclic groups acting on necklaces, where the
//! homology of the invariants complex is tabulated and tested against a
//! conjectured generating function, and affine groups `C V` over GF(2)
//! acting on `2b` cosets, which have no derangement of 2-power order.

use alloc::vec::Vec;

use crate::orbit_complex::{build_from_table, ComplexKind};
use crate::permgroup::{OrbitTable, PermGroup, Permutation};
use crate::qpoly::{cyclic_orbit_polynomial, QPolynomial};
use crate::{Error, Limits, Result};

/// Homology of the inv-D complex of `C_n`, with the conjecture check for even `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecklaceReport {
    pub n: usize,
    pub homology: Vec<usize>,
    pub orbit_polynomial: QPolynomial,
    pub conjecture_checked: bool,
    /// `None` when not checked.
    pub conjecture_holds: Option<bool>,
    /// Why the conjecture failed, if it did.
    pub conjecture_detail: Option<alloc::string::String>,
}

impl NecklaceReport {
    /// `A_n(q) = sum_i dim H_i q^i`.
    pub fn homology_polynomial(&self) -> QPolynomial {
        QPolynomial::from_counts(&self.homology)
    }
}

/// inv-D homology of the cyclic group of order `n` acting on `[n]`.
pub fn necklace_homology(n: usize, limits: &Limits) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let table = OrbitTable::compute(&PermGroup::cyclic(n), limits)?;
    Ok(build_from_table(&table, ComplexKind::InvariantsDown).homology_ranks())
}

pub fn necklace_report(n: usize, check_conjecture: bool, limits: &Limits) -> Result<NecklaceReport> {
    let homology = necklace_homology(n, limits)?;
    let mut report = NecklaceReport {
        n,
        orbit_polynomial: cyclic_orbit_polynomial(n),
        homology,
        conjecture_checked: false,
        conjecture_holds: None,
        conjecture_detail: None,
    };
    if check_conjecture && n.is_multiple_of(2) {
        let m = n / 2;
        let a_m = QPolynomial::from_counts(&necklace_homology(m, limits)?);
        let verdict = check_conjecture_instance(&report.homology_polynomial(), &a_m, m);
        report.conjecture_checked = true;
        report.conjecture_holds = Some(verdict.is_ok());
        report.conjecture_detail = verdict.err();
    }
    Ok(report)
}

/// Checks that `a_n` (for `n = 2m`) only has even powers and that
/// `a_n(q^(1/2)) (1 + q) = q a_m(q) + X_m(q)`.
pub fn check_conjecture_instance(
    a_n: &QPolynomial,
    a_m: &QPolynomial,
    m: usize,
) -> core::result::Result<(), alloc::string::String> {
    let Some(halved) = a_n.halve_exponents() else {
        return Err(alloc::format!("A_{}(q) has an odd power of q", 2 * m));
    };
    let numerator = &a_m.shift(1) + &cyclic_orbit_polynomial(m);
    let one_plus_q = QPolynomial::from_i64s(&[1, 1]);
    match numerator.div_exact(&one_plus_q) {
        Err(e) => Err(alloc::format!(
            "q A_{m}(q) + X_{m}(q) = {numerator} leaves remainder {} on division by 1 + q",
            e.remainder
        )),
        Ok(quotient) if quotient != halved => Err(alloc::format!(
            "predicted {quotient}, computed {halved}"
        )),
        Ok(_) => Ok(()),
    }
}

/// Odd homology of the inv-D complex of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcentrationReport {
    pub homology: Vec<usize>,
    pub euler_characteristic: i64,
    /// Some odd-index homology rank is nonzero.
    pub has_odd_homology: bool,
}

pub fn concentration_failure_check(group: &PermGroup, limits: &Limits) -> Result<ConcentrationReport> {
    let table = OrbitTable::compute(group, limits)?;
    let c = build_from_table(&table, ComplexKind::InvariantsDown);
    let homology = c.homology_ranks();
    Ok(ConcentrationReport {
        has_odd_homology: homology.iter().skip(1).step_by(2).any(|&h| h != 0),
        euler_characteristic: c.euler_characteristic(),
        homology,
    })
}

/// A transitive group of degree `2b` with no derangement of 2-power order.
#[derive(Debug, Clone)]
pub struct IsbellGroup {
    pub b: usize,
    /// Least `d` with `b | 2^d - 1`.
    pub d: usize,
    /// Characteristic polynomial of `c` as a bitmask (bit `i` is the
    /// coefficient of `x^i`).
    pub char_poly: u64,
    /// `alpha_1, .., alpha_d`: `e_d c = sum alpha_i e_i`.
    pub alphas: Vec<bool>,
    /// Point `2k + s` is the coset of the elements `(k, w)` with
    /// `parity(w) = s`; point 0 is the hyperplane itself.
    pub coset_labels: Vec<(usize, u8)>,
    pub group: PermGroup,
}

impl IsbellGroup {
    /// Matrix of `c`: row `i` is `e_{i+1} c` as a bitmask over `e_1, .., e_d`.
    pub fn generator_matrix(&self) -> Vec<u64> {
        (0..self.d).map(|i| mul_x(1 << i, self.char_poly, self.d)).collect()
    }

    pub fn order(&self) -> usize {
        self.b << self.d
    }
}

/// Multiplicative order of 2 modulo odd `b > 1`.
pub fn order_of_two(b: usize) -> usize {
    let mut d = 1;
    let mut p = 2 % b;
    while p != 1 {
        p = p * 2 % b;
        d += 1;
    }
    d
}

fn poly_degree(p: u64) -> usize {
    63 - p.leading_zeros() as usize
}

fn poly_rem(mut a: u64, m: u64) -> u64 {
    let dm = poly_degree(m);
    while a != 0 && poly_degree(a) >= dm {
        a ^= m << (poly_degree(a) - dm);
    }
    a
}

fn is_irreducible(f: u64) -> bool {
    let d = poly_degree(f);
    (2u64..1 << (d / 2 + 1)).all(|g| poly_rem(f, g) != 0)
}

/// `v * x mod f`, where `v` has degree below `d`.
fn mul_x(v: u64, f: u64, d: usize) -> u64 {
    let w = v << 1;
    if w >> d & 1 == 1 {
        w ^ f
    } else {
        w
    }
}

/// `x` has multiplicative order exactly `b` modulo `f`.
fn x_has_order(f: u64, b: usize) -> bool {
    let d = poly_degree(f);
    let mut v = 1u64;
    for j in 1..=b {
        v = mul_x(v, f, d);
        if v == 1 {
            return j == b;
        }
    }
    false
}

/// The least (as an integer bitmask) irreducible polynomial of degree `d`
/// over GF(2) in which `x` has order `b`.
pub fn order_b_factor(b: usize, d: usize) -> Option<u64> {
    (1u64 << d..1u64 << (d + 1)).find(|&f| f & 1 == 1 && is_irreducible(f) && x_has_order(f, b))
}

pub fn isbell_group(b: usize, limits: &Limits) -> Result<IsbellGroup> {
    if b < 3 || b.is_multiple_of(2) {
        return Err(Error::InvalidInput(alloc::format!("b must be odd and greater than 1, got {b}")));
    }
    limits.check_points(2 * b)?;
    let d = order_of_two(b);
    if d >= 63 || (b as u128) << d > limits.max_group_order as u128 {
        return Err(limits.order_exceeded(b.saturating_mul(1usize.checked_shl(d as u32).unwrap_or(usize::MAX))));
    }
    let f = order_b_factor(b, d)
        .ok_or_else(|| Error::InvalidInput(alloc::format!("no irreducible factor of order {b} found")))?;
    let alphas: Vec<bool> = (0..d).map(|i| f >> i & 1 == 1).collect();
    // 1 is not a root, so the alphas sum to zero
    assert!(
        alphas.iter().filter(|&&a| a).count() % 2 == 0,
        "characteristic polynomial has 1 as a root"
    );

    let parity = |w: u64| (w.count_ones() % 2) as usize;
    let point = |k: usize, s: usize| 2 * k + s;
    let n = 2 * b;
    let mut rotate = alloc::vec![0; n];
    let mut translate = alloc::vec![0; n];
    // (1, 0)(k, w) = (k + 1, w) and (0, e_1)(k, w) = (k, w + e_1 c^{-k})
    // shifts[k] = parity(e_1 c^{-k})
    let mut shifts = alloc::vec![0usize; b];
    let mut v = 1u64;
    for step in 0..b {
        // v = e_1 c^step = e_1 c^{-(b - step)}
        shifts[(b - step) % b] = parity(v);
        v = mul_x(v, f, d);
    }
    for k in 0..b {
        for s in 0..2 {
            rotate[point(k, s)] = point((k + 1) % b, s);
            translate[point(k, s)] = point(k, s ^ shifts[k]);
        }
    }
    let group = PermGroup::new(
        n,
        alloc::vec![Permutation::from_image(rotate)?, Permutation::from_image(translate)?],
    )?;
    Ok(IsbellGroup {
        b,
        d,
        char_poly: f,
        alphas,
        coset_labels: (0..b).flat_map(|k| [(k, 0u8), (k, 1u8)]).collect(),
        group,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn necklace_rows() {
        assert_eq!(necklace_report(4, false, &lim()).unwrap().homology, [1, 0, 1, 0, 0]);
        assert_eq!(
            necklace_report(8, false, &lim()).unwrap().homology,
            [1, 0, 1, 0, 1, 0, 1, 0, 0]
        );
        assert!(necklace_report(5, false, &lim()).unwrap().homology.iter().all(|&h| h == 0));
    }

    #[test]
    fn conjecture_small() {
        for n in [2, 4, 6, 8] {
            let r = necklace_report(n, true, &lim()).unwrap();
            assert!(r.conjecture_checked);
            assert_eq!(r.conjecture_holds, Some(true), "n={n}: {:?}", r.conjecture_detail);
        }
        let r = necklace_report(5, true, &lim()).unwrap();
        assert!(!r.conjecture_checked);
    }

    #[test]
    fn conjecture_rejects_wrong_data() {
        let bad = QPolynomial::from_i64s(&[1, 0, 2]);
        assert!(check_conjecture_instance(&bad, &QPolynomial::one(), 2).is_err());
        let odd = QPolynomial::from_i64s(&[1, 1]);
        assert!(check_conjecture_instance(&odd, &QPolynomial::one(), 2).is_err());
    }

    #[test]
    fn orders_of_two() {
        assert_eq!(order_of_two(3), 2);
        assert_eq!(order_of_two(5), 4);
        assert_eq!(order_of_two(7), 3);
        assert_eq!(order_of_two(9), 6);
    }

    #[test]
    fn isbell_examples() {
        for (b, d, order) in [(3, 2, 12), (5, 4, 80), (7, 3, 56)] {
            let g = isbell_group(b, &lim()).unwrap();
            assert_eq!(g.d, d);
            assert_eq!(g.group.n(), 2 * b);
            assert_eq!(g.group.order(&lim()).unwrap(), order);
            assert!(g.group.is_transitive());
            assert!(!g.group.has_two_power_derangement(&lim()).unwrap());
        }
        assert!(isbell_group(4, &lim()).is_err());
        assert!(isbell_group(1, &lim()).is_err());
    }

    #[test]
    fn isbell_three_has_odd_homology() {
        let g = isbell_group(3, &lim()).unwrap();
        assert!(concentration_failure_check(&g.group, &lim()).unwrap().has_odd_homology);
        let c4 = concentration_failure_check(&PermGroup::cyclic(4), &lim()).unwrap();
        assert!(!c4.has_odd_homology);
    }
}
