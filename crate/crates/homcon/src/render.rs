//! Text, JSON and CSV renderings of a [`Report`].

use std::fmt::Write as _;

use crate::report::{Check, Document, Report, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => text(report),
        Format::Json => json(report),
        Format::Csv => csv(report),
    }
}

pub fn json(report: &Report) -> String {
    let doc = Document { schema: SCHEMA, report };
    let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
    s.push('\n');
    s
}

fn seq<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn list(out: &mut String, title: &str, items: &[String]) {
    let _ = writeln!(out, "{title} ({}):", items.len());
    for it in items {
        let _ = writeln!(out, "  {it}");
    }
}

fn checks(out: &mut String, checks: &[Check]) {
    if checks.is_empty() {
        return;
    }
    let _ = writeln!(out, "checks:");
    for c in checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        match &c.detail {
            Some(d) => {
                let _ = writeln!(out, "  [{mark}] {} ({d})", c.name);
            }
            None => {
                let _ = writeln!(out, "  [{mark}] {}", c.name);
            }
        }
    }
}

/// Above this many items text output prints a count instead of the list.
const TEXT_LIST_MAX: usize = 40;

fn maybe_list(out: &mut String, title: &str, items: &[String]) {
    if items.len() <= TEXT_LIST_MAX {
        list(out, title, items);
    } else {
        let _ = writeln!(out, "{title}: {} (use --format json for the full list)", items.len());
    }
}

pub fn text(report: &Report) -> String {
    let mut o = String::new();
    match report {
        Report::Orbits(r) => {
            let _ = writeln!(o, "group: {} on {} points", r.group, r.n);
            let _ = writeln!(o, "X(G,q) = {}", r.orbit_polynomial);
            let _ = writeln!(o, "X(G,1) = {}", r.orbit_count);
            let _ = writeln!(o, "X(G,-1) = {}", r.x_at_minus_one);
            let _ = writeln!(o, "self-complementary orbits: {}", r.self_complementary_orbits);
            let _ = writeln!(o, "symmetric: {}  unimodal: {}", r.symmetric, r.unimodal);
            checks(&mut o, &r.checks);
        }
        Report::Homology(r) => {
            let _ = writeln!(o, "group: {} on {} points", r.group, r.n);
            let _ = writeln!(o, "kind: {}", r.kind);
            let _ = writeln!(o, "dims: {}", seq(&r.dims));
            let _ = writeln!(o, "homology: {}", seq(&r.homology));
            let _ = writeln!(o, "euler characteristic: {}", r.euler_characteristic);
            let _ = writeln!(o, "X(G,-1) = {}", r.x_at_minus_one);
            let _ = writeln!(o, "odd point orbit: {}", r.has_odd_orbit);
            if let Some(all) = &r.all_kinds {
                for k in all {
                    let _ = writeln!(o, "  {:<8} {}", k.kind, seq(&k.homology));
                }
            }
            checks(&mut o, &r.checks);
        }
        Report::Rect(r) => {
            let _ = writeln!(o, "rectangle {} x {}", r.k, r.l);
            let _ = writeln!(o, "dims: {}", seq(&r.dims));
            let _ = writeln!(o, "homology: {}", seq(&r.homology));
            let _ = writeln!(o, "matched pairs: {}  acyclic: {}  unit coefficients: {}", r.matched_pairs, r.acyclic, r.unit_coefficients);
            let _ = writeln!(o, "q-binomial at -1: {}", r.q_binomial_at_minus_one);
            let phi: Vec<String> = r.phi.iter().map(|p| format!("{} -> {}", p.critical, p.image)).collect();
            maybe_list(&mut o, "critical cells and phi", &phi);
            checks(&mut o, &r.checks);
        }
        Report::Box(r) => {
            let _ = writeln!(o, "box {} x {} x {}", r.r, r.c, r.t);
            let _ = writeln!(o, "dims: {}", seq(&r.dims));
            let _ = writeln!(o, "homology: {}", seq(&r.homology));
            let _ = writeln!(o, "acyclic: {}  unit coefficients: {}", r.acyclic, r.unit_coefficients);
            let _ = writeln!(o, "MacMahon at -1: {}", r.macmahon_at_minus_one);
            let pairs: Vec<String> = r.pairs.iter().map(|p| format!("{} <-> {}", p.lower, p.upper)).collect();
            maybe_list(&mut o, "matched pairs", &pairs);
            maybe_list(&mut o, "critical cells", &r.critical);
            let ivs: Vec<String> = r
                .intervals
                .iter()
                .map(|iv| format!("[{}, {}] size {}", iv.bottom, iv.top, iv.size))
                .collect();
            maybe_list(&mut o, "nontrivial Boolean intervals", &ivs);
            checks(&mut o, &r.checks);
        }
        Report::Necklace(r) => {
            let width = r.rows.iter().map(|x| x.n.to_string().len()).max().unwrap_or(1);
            let _ = writeln!(o, "{:>width$}  homology ranks", "n");
            for row in &r.rows {
                let mut line = format!("{:>width$}  {}", row.n, seq(&row.homology));
                match row.conjecture_holds {
                    Some(true) => line.push_str("  conjecture holds"),
                    Some(false) => line.push_str("  conjecture FAILS"),
                    None => {}
                }
                let _ = writeln!(o, "{line}");
                if let Some(d) = &row.conjecture_detail {
                    let _ = writeln!(o, "{:>width$}  {d}", "");
                }
            }
            let failed: Vec<Check> = r.checks.iter().filter(|c| !c.passed).cloned().collect();
            checks(&mut o, &failed);
        }
        Report::Isbell(r) => {
            let _ = writeln!(o, "b = {}, d = {}", r.b, r.d);
            let _ = writeln!(o, "characteristic polynomial: {}", r.characteristic_polynomial);
            let _ = writeln!(o, "matrix of c:");
            for row in &r.generator_matrix {
                let _ = writeln!(o, "  {row}");
            }
            let _ = writeln!(o, "group: {}", r.group);
            let _ = writeln!(o, "order: {}  transitive: {}", r.order, r.transitive);
            let _ = writeln!(o, "2-power derangement: {}", r.two_power_derangement);
            let _ = writeln!(o, "inv-d homology: {}", seq(&r.homology));
            checks(&mut o, &r.checks);
        }
    }
    o
}

pub fn csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let res: csv::Result<()> = (|| {
        match report {
            Report::Orbits(r) => {
                w.write_record(["cardinality", "orbits"])?;
                for (i, c) in r.coefficients.iter().enumerate() {
                    w.write_record([i.to_string(), c.to_string()])?;
                }
            }
            Report::Homology(r) => {
                w.write_record(["rank", "dim", "homology"])?;
                for (i, (d, h)) in r.dims.iter().zip(&r.homology).enumerate() {
                    w.write_record([i.to_string(), d.to_string(), h.to_string()])?;
                }
            }
            Report::Rect(r) => {
                w.write_record(["rank", "dim", "homology"])?;
                for (i, (d, h)) in r.dims.iter().zip(&r.homology).enumerate() {
                    w.write_record([i.to_string(), d.to_string(), h.to_string()])?;
                }
            }
            Report::Box(r) => {
                w.write_record(["rank", "dim", "homology"])?;
                for (i, (d, h)) in r.dims.iter().zip(&r.homology).enumerate() {
                    w.write_record([i.to_string(), d.to_string(), h.to_string()])?;
                }
            }
            Report::Necklace(r) => {
                w.write_record(["n", "homology", "x_at_minus_one", "conjecture_holds"])?;
                for row in &r.rows {
                    w.write_record([
                        row.n.to_string(),
                        join(&row.homology),
                        row.x_at_minus_one.to_string(),
                        row.conjecture_holds.map(|b| b.to_string()).unwrap_or_default(),
                    ])?;
                }
            }
            Report::Isbell(r) => {
                w.write_record(["field", "value"])?;
                w.write_record(["b", &r.b.to_string()])?;
                w.write_record(["d", &r.d.to_string()])?;
                w.write_record(["characteristic_polynomial", &r.characteristic_polynomial])?;
                w.write_record(["group", &r.group])?;
                w.write_record(["order", &r.order.to_string()])?;
                w.write_record(["transitive", &r.transitive.to_string()])?;
                w.write_record(["two_power_derangement", &r.two_power_derangement.to_string()])?;
                w.write_record(["homology", &join(&r.homology)])?;
            }
        }
        Ok(())
    })();
    res.expect("writing csv to memory");
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}
