//! Execution of validated plans and output rendering.

use std::io::Write;

use anyhow::{Context, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};

use cellulo_core::asph::AsphBasis;
use cellulo_core::cells::{
    cells_missing_double_coset_reps, check_omega_stability, check_two_sided_vs_antispherical, check_w_restriction,
    compute_cells, member_strings, Bases, BijectionReport, CellPartition, CellSide, GraphSpec,
};
use cellulo_core::glcells::{enumerate_cell_labels, group_name, orbit_count, table1};
use cellulo_core::hecke::KlTable;
use cellulo_core::{format_elt, parse_elt, Config, LaurentPoly, RootDatum, Weight, WeylElt, WeylGroup};

use crate::{AlcoveTarget, Format, Output, Plan};

const GOLDEN: [(usize, &str); 3] = [
    (2, include_str!("../../core/golden/gl2.txt")),
    (3, include_str!("../../core/golden/gl3.txt")),
    (4, include_str!("../../core/golden/gl4.txt")),
];

/// Runs a plan; `Ok(false)` means the computation finished but reported a mismatch.
pub fn run(plan: Plan, out: &Output) -> Result<bool> {
    let (text, ok) = match plan {
        Plan::Cells { datum, config, side, bijection } => (cells(datum, &config, side, bijection, out.format)?, true),
        Plan::Klpoly { datum, max_length } => (klpoly(datum, max_length, out.format)?, true),
        Plan::AsphBasis { datum, max_length } => (asph_basis(datum, max_length, out.format)?, true),
        Plan::Alcove { datum, ell, target } => (alcove(datum, ell, target, out.format)?, true),
        Plan::GlCells { a, max_terms } => (gl_cells(&a, max_terms, out.format)?, true),
        Plan::OrbitCount { datum } => (orbits(&datum, out.format)?, true),
        Plan::Check { radius } => check(radius)?,
    };
    emit(out, &text)?;
    Ok(ok)
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.path {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)?)
}

fn coxeter_bases(g: &WeylGroup, config: &Config) -> Result<Bases<BigInt>> {
    Ok(Bases::build(g, config.ball_radius + 2 * config.margin + 1)?)
}

fn partition(g: &WeylGroup, bases: &Bases<BigInt>, config: &Config, side: CellSide) -> Result<CellPartition> {
    let spec = GraphSpec::extended(g, side, config.ball_radius, config.omega_bound);
    Ok(compute_cells(g, bases, &spec, config.margin)?)
}

fn cells(datum: RootDatum, config: &Config, side: CellSide, bijection: bool, format: Format) -> Result<String> {
    let g = WeylGroup::new(datum)?;
    let bases = coxeter_bases(&g, config)?;
    let p = partition(&g, &bases, config, side)?;
    let report: Option<BijectionReport> = if bijection {
        let other = |s| if side == s { Ok(p.clone()) } else { partition(&g, &bases, config, s) };
        let two = other(CellSide::TwoSided)?;
        let asph = other(CellSide::Antispherical)?;
        Some(check_two_sided_vs_antispherical(&g, &two, &asph))
    } else {
        None
    };
    if format == Format::Csv {
        let rows = p.cells.iter().enumerate().flat_map(|(k, cell)| {
            member_strings(&g, cell)
                .into_iter()
                .map(move |m| vec![k.to_string(), cell.complete.to_string(), m])
        });
        return csv_text(&["cell", "complete", "element"], rows);
    }
    let cells: Vec<Value> = p
        .cells
        .iter()
        .enumerate()
        .map(|(k, c)| {
            json!({
                "id": k,
                "complete": c.complete,
                "touches_frontier": c.touches_frontier,
                "members": member_strings(&g, c),
            })
        })
        .collect();
    let pairs: Vec<Value> = report
        .as_ref()
        .map(|r| r.pairs.iter().map(|(i, j)| json!({"two_sided": i, "antispherical": j})).collect())
        .unwrap_or_default();
    Ok(pretty(&json!({
        "datum": g.datum().name(),
        "side": side.as_str(),
        "radius": config.ball_radius,
        "ell": config.ell,
        "margin": config.margin,
        "omega_bound": config.omega_bound,
        "cells": cells,
        "order": p.order.iter().map(|(i, j)| [i, j]).collect::<Vec<_>>(),
        "bijection_2sided_asph": pairs,
        "bijection_problems": report.map(|r| r.problems),
    })))
}

/// Rows `(w, x, coefficient of x in the canonical element of w)`.
fn basis_rows<'a>(
    g: &WeylGroup,
    elements: &'a [WeylElt],
    terms: impl Fn(&'a WeylElt) -> Vec<(WeylElt, LaurentPoly)>,
) -> Vec<(String, Vec<(String, String)>)> {
    elements
        .iter()
        .map(|w| {
            let row = terms(w).into_iter().map(|(x, p)| (format_elt(g, &x), p.to_string())).collect();
            (format_elt(g, w), row)
        })
        .collect()
}

fn render_basis(rows: Vec<(String, Vec<(String, String)>)>, format: Format) -> Result<String> {
    if format == Format::Csv {
        let flat = rows
            .into_iter()
            .flat_map(|(w, row)| row.into_iter().map(move |(x, p)| vec![w.clone(), x, p]));
        return csv_text(&["w", "x", "polynomial"], flat);
    }
    let map: serde_json::Map<String, Value> = rows
        .into_iter()
        .map(|(w, row)| {
            let inner: serde_json::Map<String, Value> = row.into_iter().map(|(x, p)| (x, Value::String(p))).collect();
            (w, Value::Object(inner))
        })
        .collect();
    Ok(pretty(&Value::Object(map)))
}

fn klpoly(datum: RootDatum, max_length: usize, format: Format) -> Result<String> {
    let g = WeylGroup::new(datum)?;
    let table = KlTable::<BigInt>::build(&g, max_length);
    let rows = basis_rows(&g, table.elements(), |w| {
        table.get(w).map(|c| c.terms().map(|(x, p)| (x.clone(), p.clone())).collect()).unwrap_or_default()
    });
    render_basis(rows, format)
}

fn asph_basis(datum: RootDatum, max_length: usize, format: Format) -> Result<String> {
    let g = WeylGroup::new(datum)?;
    let basis = AsphBasis::<BigInt>::by_recursion(&g, max_length);
    let rows = basis_rows(&g, basis.elements(), |w| {
        basis.get(w).map(|n| n.terms().map(|(x, p)| (x.clone(), p.clone())).collect()).unwrap_or_default()
    });
    render_basis(rows, format)
}

fn alcove(datum: RootDatum, ell: i64, target: AlcoveTarget, format: Format) -> Result<String> {
    let g = WeylGroup::new(datum)?;
    let cfg = Config::new(ell, 0);
    let zero = Weight::zero(g.rank());
    let entry = |w: &WeylElt| -> Result<(Option<String>, Weight<i64>, Vec<i64>)> {
        let lambda = g.dot_action(w, &zero, ell);
        let a = g.alcove_of(&lambda, &cfg)?;
        Ok((Some(format_elt(&g, w)), lambda, a.n))
    };
    let entries = match target {
        AlcoveTarget::Weight(lambda) => {
            let a = g.alcove_of(&lambda, &cfg)?;
            vec![(None, lambda, a.n)]
        }
        AlcoveTarget::Elt(s) => vec![entry(&parse_elt(&g, &s)?)?],
        AlcoveTarget::Ball(r) => g.ball(r).iter().map(entry).collect::<Result<_>>()?,
    };
    if format == Format::Csv {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        let rows = entries
            .iter()
            .map(|(e, lambda, a)| vec![e.clone().unwrap_or_default(), join(&lambda.0), join(a)]);
        return csv_text(&["element", "weight", "alcove"], rows);
    }
    let roots: Vec<&Vec<i64>> = g.datum().positive_roots().iter().map(|r| &r.simple_coords).collect();
    let entries: Vec<Value> = entries
        .into_iter()
        .map(|(e, lambda, a)| json!({"element": e, "weight": lambda.0, "alcove": a}))
        .collect();
    Ok(pretty(&json!({
        "datum": g.datum().name(),
        "ell": ell,
        "positive_roots": roots,
        "entries": entries,
    })))
}

fn gl_cells(a: &[usize], max_terms: usize, format: Format) -> Result<String> {
    Ok(match format {
        Format::Table1 => table1(a, max_terms),
        Format::Csv => {
            let rows = enumerate_cell_labels(a, max_terms)
                .iter()
                .enumerate()
                .map(|(k, l)| vec![k.to_string(), l.seq.len().to_string(), l.to_string()])
                .collect::<Vec<_>>();
            csv_text(&["index", "terms", "label"], rows)?
        }
        _ => {
            let labels: Vec<Value> = enumerate_cell_labels(a, max_terms)
                .iter()
                .map(|l| json!({"label": l.to_string(), "sequence": l.seq}))
                .collect();
            pretty(&json!({
                "group": group_name(a),
                "a": a,
                "max_terms": max_terms,
                "labels": labels,
            }))
        }
    })
}

fn orbits(datum: &RootDatum, format: Format) -> Result<String> {
    let n = orbit_count(datum)?;
    Ok(match format {
        Format::Json => pretty(&json!({"datum": datum.name(), "orbit_count": n})),
        _ => format!("{n}\n"),
    })
}

struct Report {
    checks: Vec<Value>,
    passed: bool,
}

impl Report {
    fn record(&mut self, name: &str, datum: &str, outcome: Result<String, String>) {
        let (ok, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.passed &= ok;
        self.checks.push(json!({"name": name, "datum": datum, "passed": ok, "detail": detail}));
    }
}

fn check(radius: usize) -> Result<(String, bool)> {
    let mut report = Report {
        checks: Vec::new(),
        passed: true,
    };
    for label in ["A1", "A2", "B2", "GL:2", "GL:3"] {
        let g = WeylGroup::new(RootDatum::from_selector(label)?)?;
        let config = Config::new(i64::from(g.datum().coxeter_number()) + 1, radius);
        let bases = coxeter_bases(&g, &config)?;
        let asph = partition(&g, &bases, &config, CellSide::Antispherical)?;

        let orbits = orbit_count(g.datum())? as usize;
        let complete = asph.num_complete();
        let missing = cells_missing_double_coset_reps(&g, &asph);
        // a ball too small to certify every cell may only undercount
        let counted = if !missing.is_empty() {
            Err(format!("complete cells {missing:?} contain no double coset representative"))
        } else if complete == orbits {
            Ok(format!("{complete} complete cells"))
        } else if complete < orbits && label == "B2" {
            Ok(format!("{complete} of {orbits} cells certified at this radius"))
        } else {
            Err(format!("{complete} complete cells, {orbits} orbits"))
        };
        report.record("cell-count-vs-orbit-count", label, counted);

        let unstable = check_omega_stability(&g, &asph, &g.omega_set(config.omega_bound));
        report.record(
            "omega-stability",
            label,
            if unstable.is_empty() { Ok("stable".into()) } else { Err(format!("{} violations", unstable.len())) },
        );

        let inner = compute_cells(&g, &bases, &GraphSpec::coxeter_only(&g, CellSide::Antispherical, radius), config.margin)?;
        let disagree = check_w_restriction(&g, &asph, &inner);
        report.record(
            "w-restriction",
            label,
            if disagree.is_empty() { Ok("agree".into()) } else { Err(format!("{} disagreeing pairs", disagree.len())) },
        );

        if matches!(label, "A1" | "A2") {
            let two = partition(&g, &bases, &config, CellSide::TwoSided)?;
            let b = check_two_sided_vs_antispherical(&g, &two, &asph);
            report.record(
                "two-sided-vs-antispherical",
                label,
                if b.perfect { Ok(format!("{} pairs", b.pairs.len())) } else { Err(b.problems.join("; ")) },
            );
        }
    }
    for (n, expected) in GOLDEN {
        let got = table1(&[n], 4);
        let outcome = if got == expected {
            Ok("identical".into())
        } else {
            let line = got.lines().zip(expected.lines()).position(|(a, b)| a != b);
            Err(format!("first difference at line {}", line.map_or(0, |l| l + 1)))
        };
        report.record("table1-diff", &group_name(&[n]), outcome);
    }
    let text = pretty(&json!({"passed": report.passed, "radius": radius, "checks": report.checks}));
    Ok((text, report.passed))
}
