//! Report builders for each command. Every report carries a list of
//! checks; a failed check means a claimed property did not hold.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use homcon_core::box_complex::{self, Tableau};
use homcon_core::families::{self, IsbellGroup};
use homcon_core::orbit_complex::{self, build_from_table};
use homcon_core::permgroup::{format_group, OrbitTable};
use homcon_core::qpoly::{macmahon, q_binomial};
use homcon_core::rect::{self, RectPartition};
use homcon_core::{certify, ComplexKind, Limits, PermGroup, Result};

pub const SCHEMA: &str = "homcon/1";

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &str, passed: bool) -> Self {
        Self { name: name.to_string(), passed, detail: None }
    }

    fn with_detail(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.to_string(), passed, detail: Some(detail.into()) }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Orbits(OrbitsReport),
    Homology(HomologyReport),
    Rect(RectReport),
    Box(BoxReport),
    Necklace(NecklaceTable),
    Isbell(IsbellReport),
}

impl Report {
    pub fn checks(&self) -> &[Check] {
        match self {
            Report::Orbits(r) => &r.checks,
            Report::Homology(r) => &r.checks,
            Report::Rect(r) => &r.checks,
            Report::Box(r) => &r.checks,
            Report::Necklace(r) => &r.checks,
            Report::Isbell(r) => &r.checks,
        }
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks().iter().filter(|c| !c.passed).collect()
    }
}

/// The JSON document: schema tag plus the report.
#[derive(Serialize)]
pub struct Document<'a> {
    pub schema: &'static str,
    #[serde(flatten)]
    pub report: &'a Report,
}

fn big_to_i64<T: TryInto<i64>>(x: T) -> i64 {
    x.try_into().ok().expect("value fits in i64")
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitsReport {
    pub group: String,
    pub n: usize,
    pub orbit_polynomial: String,
    pub coefficients: Vec<u64>,
    pub orbit_count: u64,
    pub x_at_minus_one: i64,
    pub self_complementary_orbits: usize,
    pub symmetric: bool,
    pub unimodal: bool,
    pub checks: Vec<Check>,
}

pub fn orbits(group: &PermGroup, check: bool, limits: &Limits) -> Result<OrbitsReport> {
    let table = OrbitTable::compute(group, limits)?;
    let x = table.orbit_polynomial();
    let coefficients = x.to_u64s().expect("orbit counts fit in u64");
    let x_at_minus_one = big_to_i64(x.at_minus_one());
    let sc = table.self_complementary_count();
    let symmetric = x.is_palindromic();
    let unimodal = x.is_symmetric_unimodal();
    let mut checks = vec![
        Check::new("X(G,-1) equals the number of self-complementary orbits", x_at_minus_one == sc as i64),
        Check::new("X(G,q) is symmetric and unimodal", unimodal),
    ];
    if check {
        let elements = group.elements(limits)?;
        let fixed: u128 = elements.iter().map(|g| 1u128 << g.cycles().len()).sum();
        let burnside = fixed / elements.len() as u128;
        checks.push(Check::with_detail(
            "Burnside average over group elements equals X(G,1)",
            burnside == coefficients.iter().map(|&c| c as u128).sum::<u128>()
                && fixed.is_multiple_of(elements.len() as u128),
            format!("|G| = {}", elements.len()),
        ));
    }
    Ok(OrbitsReport {
        group: format_group(group),
        n: group.n(),
        orbit_polynomial: x.to_string(),
        orbit_count: coefficients.iter().sum(),
        coefficients,
        x_at_minus_one,
        self_complementary_orbits: sc,
        symmetric,
        unimodal,
        checks,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct KindHomology {
    pub kind: String,
    pub homology: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomologyReport {
    pub group: String,
    pub n: usize,
    pub kind: String,
    pub dims: Vec<usize>,
    pub homology: Vec<usize>,
    pub euler_characteristic: i64,
    pub x_at_minus_one: i64,
    pub has_odd_orbit: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_kinds: Option<Vec<KindHomology>>,
    pub checks: Vec<Check>,
}

/// Largest `n` for which `--check` verifies the masked homotopy on the full
/// `2^n`-dimensional complex.
const HOMOTOPY_CHECK_MAX_POINTS: usize = 10;

pub fn homology(group: &PermGroup, kind: ComplexKind, check: bool, limits: &Limits) -> Result<HomologyReport> {
    let table = OrbitTable::compute(group, limits)?;
    let x_at_minus_one = big_to_i64(table.orbit_polynomial().at_minus_one());
    let complex = build_from_table(&table, kind);
    let homology = complex.homology_ranks();
    let euler = complex.euler_characteristic();
    let n = group.n();
    let sign = if kind.is_reindexed() && n % 2 == 1 { -1 } else { 1 };
    let has_odd_orbit = group.has_odd_orbit();
    let mut checks = vec![
        Check::new("d^2 = 0", complex.is_chain_complex()),
        Check::new("Euler characteristic equals X(G,-1)", euler == sign * x_at_minus_one),
    ];
    if has_odd_orbit {
        checks.push(Check::new("an odd point orbit forces zero homology", homology.iter().all(|&h| h == 0)));
    } else if kind == ComplexKind::InvariantsDown {
        checks.push(Check::new(
            "without odd point orbits H_0 = 1 and H_1 = 0",
            homology[0] == 1 && homology.get(1).is_none_or(|&h| h == 0),
        ));
    }
    let mut all_kinds = None;
    if check {
        let per_kind: Vec<Vec<usize>> = ComplexKind::ALL
            .par_iter()
            .map(|&k| build_from_table(&table, k).homology_ranks())
            .collect();
        let rev = |v: &Vec<usize>| v.iter().rev().copied().collect::<Vec<_>>();
        let [inv_d, coinv_d, inv_u, coinv_u] = [&per_kind[0], &per_kind[1], &per_kind[2], &per_kind[3]];
        // the U kinds are graded by n - |S|; compare them by cardinality
        let (inv_u, coinv_u) = (rev(inv_u), rev(coinv_u));
        checks.push(Check::new("inv-u is inv-d reversed", inv_u == rev(inv_d)));
        checks.push(Check::new("coinv-d equals inv-u", *coinv_d == inv_u));
        checks.push(Check::new("coinv-u is coinv-d reversed", coinv_u == rev(coinv_d)));
        if n <= HOMOTOPY_CHECK_MAX_POINTS {
            let s = orbit_complex::odd_orbit_union(group);
            checks.push(Check::with_detail(
                "masked homotopy D U + U D = |S| I on the odd-orbit union",
                orbit_complex::masked_homotopy_check(group, s, limits)?,
                homcon_core::permgroup::mask_label(s),
            ));
        }
        all_kinds = Some(
            ComplexKind::ALL
                .iter()
                .zip(per_kind)
                .map(|(k, h)| KindHomology { kind: k.to_string(), homology: h })
                .collect(),
        );
    }
    Ok(HomologyReport {
        group: format_group(group),
        n,
        kind: kind.to_string(),
        dims: complex.dims(),
        homology,
        euler_characteristic: euler,
        x_at_minus_one,
        has_odd_orbit,
        all_kinds,
        checks,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiPair {
    pub critical: String,
    pub image: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RectReport {
    pub k: usize,
    pub l: usize,
    pub dims: Vec<usize>,
    pub homology: Vec<usize>,
    pub concluded_homology: Option<Vec<usize>>,
    pub matched_pairs: usize,
    pub acyclic: bool,
    pub unit_coefficients: bool,
    pub critical: Vec<String>,
    pub phi: Vec<PhiPair>,
    pub self_complementary: Vec<String>,
    pub q_binomial_at_minus_one: i64,
    pub checks: Vec<Check>,
}

pub fn rect(k: usize, l: usize, check: bool, limits: &Limits) -> Result<RectReport> {
    let complex = rect::build_rect_complex(k, l, limits)?;
    let matching = rect::rect_matching(&complex)?;
    let morse = certify(&complex, &matching)?;
    let c = complex.complex();
    let homology = c.homology_ranks();
    let critical: Vec<RectPartition> = morse
        .critical
        .iter()
        .enumerate()
        .flat_map(|(r, idx)| idx.iter().map(move |&i| c.labels(r)[i].clone()))
        .collect();
    let images = critical.iter().map(rect::phi).collect::<Result<Vec<_>>>()?;
    let sc = rect::self_complementary(k, l);
    let qb = big_to_i64(q_binomial(k, l).at_minus_one());
    let image_set: BTreeSet<&RectPartition> = images.iter().collect();
    let sc_set: BTreeSet<&RectPartition> = sc.iter().collect();
    let mut checks = vec![
        Check::new("matching is acyclic", morse.acyclic),
        Check::new("matched pairs have unit coefficients", morse.unit_coefficients),
        Check::new("critical cells sit in even ranks", morse.parity_condition),
        Check::new(
            "Morse homology equals GF(2) rank homology",
            morse.concluded_homology.as_ref() == Some(&homology),
        ),
        Check::new("critical count equals q-binomial at q = -1", critical.len() as i64 == qb),
        Check::new("critical count equals self-complementary count", critical.len() == sc.len()),
        Check::new(
            "phi maps critical cells bijectively onto self-complementary partitions",
            image_set.len() == images.len() && image_set == sc_set,
        ),
    ];
    if check && k * l <= limits.max_points {
        checks.push(Check::new(
            "boundary matches the wreath product orbit complex",
            rect::matches_wreath_complex(&complex, limits)?,
        ));
    }
    Ok(RectReport {
        k,
        l,
        dims: c.dims(),
        concluded_homology: morse.concluded_homology.clone(),
        homology,
        matched_pairs: matching.pairs().len(),
        acyclic: morse.acyclic,
        unit_coefficients: morse.unit_coefficients,
        phi: critical
            .iter()
            .zip(&images)
            .map(|(a, b)| PhiPair { critical: a.to_string(), image: b.to_string() })
            .collect(),
        critical: critical.iter().map(ToString::to_string).collect(),
        self_complementary: sc.iter().map(ToString::to_string).collect(),
        q_binomial_at_minus_one: qb,
        checks,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchedPair {
    pub lower: String,
    pub upper: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalReport {
    pub bottom: String,
    pub top: String,
    pub size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoxReport {
    pub r: usize,
    pub c: usize,
    pub t: usize,
    pub dims: Vec<usize>,
    pub homology: Vec<usize>,
    pub concluded_homology: Option<Vec<usize>>,
    pub acyclic: bool,
    pub unit_coefficients: bool,
    pub pairs: Vec<MatchedPair>,
    pub critical: Vec<String>,
    pub dominoes: Vec<Vec<Vec<usize>>>,
    pub intervals: Vec<IntervalReport>,
    pub macmahon_at_minus_one: i64,
    pub checks: Vec<Check>,
}

pub fn box_report(r: usize, c: usize, t: usize, check: bool, limits: &Limits) -> Result<BoxReport> {
    let complex = box_complex::build_box_complex(r, c, t, limits)?;
    let matching = box_complex::box_matching(&complex)?;
    let morse = certify(&complex, &matching)?;
    let cx = complex.complex();
    let homology = cx.homology_ranks();
    let critical: Vec<Tableau> = morse
        .critical
        .iter()
        .enumerate()
        .flat_map(|(k, idx)| idx.iter().map(move |&i| cx.labels(k)[i].clone()))
        .collect();
    let dominoes = critical.iter().map(box_complex::to_domino).collect::<Result<Vec<_>>>()?;
    let mm = big_to_i64(macmahon(r, c, t).at_minus_one());
    let distinct: BTreeSet<_> = dominoes.iter().collect();
    let intervals = box_complex::boolean_decomposition(r, c, t, limits)?;
    let mut checks = vec![
        Check::new("boundary squares to zero", cx.is_chain_complex()),
        Check::new("matching is acyclic", morse.acyclic),
        Check::new("matched pairs have unit coefficients", morse.unit_coefficients),
        Check::new("critical cells sit in even ranks", morse.parity_condition),
        Check::new(
            "Morse homology equals GF(2) rank homology",
            morse.concluded_homology.as_ref() == Some(&homology),
        ),
        Check::new(
            "homology is concentrated in even ranks",
            homology.iter().skip(1).step_by(2).all(|&h| h == 0),
        ),
        Check::new("critical count equals MacMahon at q = -1", critical.len() as i64 == mm),
        Check::new(
            "domino tableaux are distinct and semistandard",
            distinct.len() == dominoes.len() && dominoes.iter().all(|d| d.is_semistandard(t)),
        ),
    ];
    // pairs every tableau as Boolean interval members; enumerate_ssyt inside
    // the decomposition would have failed if they did not partition
    let schur = box_complex::boolean_generating_function(&intervals);
    let binom_r2 = c * r * r.saturating_sub(1) / 2;
    checks.push(Check::new(
        "Boolean intervals give q^(c binom(r,2)) times MacMahon",
        schur == macmahon(r, c, t).shift(binom_r2),
    ));
    if check {
        let all = box_complex::enumerate_domino_tableaux(r, c, t);
        let got: BTreeSet<_> = dominoes.iter().cloned().collect();
        checks.push(Check::with_detail(
            "domino images are exactly the enumerated domino tableaux",
            got == all.into_iter().collect::<BTreeSet<_>>(),
            format!("{} critical cells", dominoes.len()),
        ));
        checks.push(Check::new(
            "critical count equals self-complementary plane partitions",
            box_complex::self_complementary_plane_partitions(r, c, t, limits)? == critical.len(),
        ));
        checks.push(Check::new(
            "every critical cell has the critical form",
            critical.iter().all(box_complex::has_critical_form),
        ));
    }
    let mut pairs: Vec<MatchedPair> = matching
        .pairs()
        .into_iter()
        .map(|(up, down)| MatchedPair {
            lower: cx.labels(down.rank)[down.index].to_string(),
            upper: cx.labels(up.rank)[up.index].to_string(),
        })
        .collect();
    pairs.sort_by(|a, b| (&a.lower, &a.upper).cmp(&(&b.lower, &b.upper)));
    Ok(BoxReport {
        r,
        c,
        t,
        dims: cx.dims(),
        concluded_homology: morse.concluded_homology.clone(),
        homology,
        acyclic: morse.acyclic,
        unit_coefficients: morse.unit_coefficients,
        pairs,
        critical: critical.iter().map(ToString::to_string).collect(),
        dominoes: dominoes.iter().map(|d| d.label_grid()).collect(),
        intervals: intervals
            .iter()
            .filter(|iv| !iv.free.is_empty())
            .map(|iv| IntervalReport {
                bottom: iv.bottom.to_string(),
                top: iv.top.to_string(),
                size: iv.len(),
            })
            .collect(),
        macmahon_at_minus_one: mm,
        checks,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct NecklaceRow {
    pub n: usize,
    pub homology: Vec<usize>,
    pub orbit_polynomial: String,
    pub x_at_minus_one: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjecture_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjecture_detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NecklaceTable {
    pub rows: Vec<NecklaceRow>,
    pub checks: Vec<Check>,
}

/// One row per `n` in `ns`, computed in parallel.
pub fn necklace(ns: &[usize], check_conjecture: bool, limits: &Limits) -> Result<NecklaceTable> {
    let reports: Vec<families::NecklaceReport> = ns
        .par_iter()
        .map(|&n| families::necklace_report(n, check_conjecture, limits))
        .collect::<Result<_>>()?;
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for rep in reports {
        let n = rep.n;
        let xm1 = big_to_i64(rep.orbit_polynomial.at_minus_one());
        let euler: i64 = rep
            .homology
            .iter()
            .enumerate()
            .map(|(i, &h)| if i % 2 == 0 { h as i64 } else { -(h as i64) })
            .sum();
        checks.push(Check::new(&format!("n={n}: alternating homology sum equals X(C_n,-1)"), euler == xm1));
        if rep.conjecture_checked {
            checks.push(Check::new(
                &format!("n={n}: conjectured recursion and even concentration"),
                rep.conjecture_holds == Some(true),
            ));
        }
        rows.push(NecklaceRow {
            n,
            orbit_polynomial: rep.orbit_polynomial.to_string(),
            x_at_minus_one: xm1,
            conjecture_holds: rep.conjecture_holds,
            conjecture_detail: rep.conjecture_detail.clone(),
            homology: rep.homology,
        });
    }
    Ok(NecklaceTable { rows, checks })
}

#[derive(Debug, Clone, Serialize)]
pub struct IsbellReport {
    pub b: usize,
    pub d: usize,
    pub characteristic_polynomial: String,
    pub alphas: Vec<u8>,
    pub generator_matrix: Vec<String>,
    pub group: String,
    pub order: usize,
    pub transitive: bool,
    pub two_power_derangement: bool,
    pub homology: Vec<usize>,
    pub has_odd_homology: bool,
    pub checks: Vec<Check>,
}

fn gf2_poly_string(f: u64) -> String {
    let mut terms = Vec::new();
    for i in (0..64).rev().filter(|&i| f >> i & 1 == 1) {
        terms.push(match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        });
    }
    terms.join(" + ")
}

pub fn isbell(b: usize, limits: &Limits) -> Result<IsbellReport> {
    let ig: IsbellGroup = families::isbell_group(b, limits)?;
    let order = ig.group.order(limits)?;
    let transitive = ig.group.is_transitive();
    let derangement = ig.group.has_two_power_derangement(limits)?;
    let conc = families::concentration_failure_check(&ig.group, limits)?;
    let checks = vec![
        Check::new("group is transitive", transitive),
        Check::with_detail("group order is b 2^d", order == ig.order(), format!("{order}")),
        Check::new("no derangement of 2-power order", !derangement),
        Check::new("inv-d homology has a nonzero odd rank", conc.has_odd_homology),
    ];
    let d = ig.d;
    Ok(IsbellReport {
        b,
        d,
        characteristic_polynomial: gf2_poly_string(ig.char_poly),
        alphas: ig.alphas.iter().map(|&a| a as u8).collect(),
        generator_matrix: ig
            .generator_matrix()
            .iter()
            .map(|row| (0..d).map(|j| if row >> j & 1 == 1 { '1' } else { '0' }).collect())
            .collect(),
        group: format_group(&ig.group),
        order,
        transitive,
        two_power_derangement: derangement,
        homology: conc.homology,
        has_odd_homology: conc.has_odd_homology,
        checks,
    })
}
