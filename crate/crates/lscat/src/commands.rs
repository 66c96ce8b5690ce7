//! One function per command group. Every command is a thin wrapper over a
//! library operation.

use lscat_core::a_infty::*;
use lscat_core::bar_models::*;
use lscat_core::group::{check_homomorphism, FiniteMonoid};
use lscat_core::linalg::IntegerSolution;
use lscat_core::ls_invariants::*;
use lscat_core::polytopes::*;
use lscat_core::RationalVector;
use serde_json::{json, Map, Value};

use crate::input::{self, AnyAlgebra, CellRecord};
use crate::output::{self, point, point_text, status, Coefficient, Report};
use crate::{AinftyCmd, BarCmd, CliError, Global, PolytopeArg, PolytopeCmd, PolytopeSel, RingCmd, RpCmd};

fn polytope_id(sel: &PolytopeSel) -> Result<PolytopeId, CliError> {
    let kind = match sel.polytope {
        PolytopeArg::Simplex => PolytopeKind::Simplex,
        PolytopeArg::SimplexPrime => PolytopeKind::SimplexPrime,
        PolytopeArg::Assoc => PolytopeKind::Assoc,
        PolytopeArg::AssocPrime => PolytopeKind::AssocPrime,
        PolytopeArg::Multipl => PolytopeKind::Multipl,
        PolytopeArg::MultiplPrime => PolytopeKind::MultiplPrime,
    };
    Ok(PolytopeId::new(kind, sel.n)?)
}

fn polytope_json(p: PolytopeId) -> Value {
    json!({"kind": format!("{:?}", p.kind()), "n": p.n()})
}

fn polytope_name(p: PolytopeId) -> String {
    format!("{:?}({})", p.kind(), p.n())
}

fn cell_json(c: &BoundaryIndex) -> Value {
    serde_json::to_value(CellRecord::from(c)).expect("cell records serialize")
}

fn cell_text(c: &BoundaryIndex) -> String {
    match c {
        BoundaryIndex::Assoc { k, r, s } => format!("∂_{k} (r={r}, s={s})"),
        BoundaryIndex::MultK { k, r, s } => format!("δ_{k} (r={r}, s={s})"),
        BoundaryIndex::MultJ { blocks } => {
            format!("δ ({})", blocks.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
        }
    }
}

fn points_json(v: &[RationalVector]) -> Value {
    Value::Array(v.iter().map(point).collect())
}

fn evaluated(r: &lscat_core::Result<RationalVector>) -> Value {
    match r {
        Ok(v) => point(v),
        Err(e) => json!({"error": e.to_string()}),
    }
}

pub fn polytope(cmd: &PolytopeCmd, g: &Global) -> Result<Report, CliError> {
    match cmd {
        PolytopeCmd::Check { which, point: text } => {
            let p = polytope_id(which)?;
            let x = input::parse_point(text)?;
            let inside = contains(p, &x)?;
            let mut lines = vec![format!("{} {} in {}", status(inside), point_text(&x), polytope_name(p))];
            let mut result = Map::new();
            result.insert("polytope".into(), polytope_json(p));
            result.insert("point".into(), point(&x));
            result.insert("contains".into(), json!(inside));
            if inside {
                let boundary = is_on_boundary(p, &x)?;
                let direction = if p.kind().is_primed() { ChartDirection::FromPrime } else { ChartDirection::ToPrime };
                let image = prime_chart(p, &x, direction)?;
                lines.push(format!("on boundary: {boundary}"));
                lines.push(format!("chart image in {}: {}", polytope_name(p.chart_partner()), point_text(&image)));
                result.insert("on_boundary".into(), json!(boundary));
                result.insert("chart_image".into(), point(&image));
            }
            Ok(Report::checked(inside, lines, Value::Object(result)))
        }
        PolytopeCmd::Identities => {
            let n_max = g.nmax.unwrap_or(4);
            let samples = g.samples.unwrap_or(50);
            let report = verify_identities(n_max, samples, g.seed)?;
            let mut lines = Vec::new();
            let mut cases = Vec::new();
            for c in &report.cases {
                lines.push(format!(
                    "{} {:<8} row {} n={} checks={} mismatches={}  {}",
                    status(c.passed()),
                    c.table.name(),
                    c.row,
                    c.n,
                    c.checks,
                    c.mismatches,
                    c.label()
                ));
                let counterexample = c.first_counterexample.as_ref().map(|ce| {
                    json!({
                        "cell": cell_json(&ce.index),
                        "j": ce.j,
                        "factors": points_json(&ce.factors),
                        "lhs": evaluated(&ce.lhs),
                        "rhs": evaluated(&ce.rhs),
                    })
                });
                cases.push(json!({
                    "table": c.table.name(),
                    "row": c.row,
                    "condition": c.label(),
                    "n": c.n,
                    "checks": c.checks,
                    "mismatches": c.mismatches,
                    "counterexample": counterexample,
                }));
            }
            for (table, n, cell, j) in &report.uncovered {
                lines.push(format!("FAIL {} n={n} {} j={j} is covered by no row", table.name(), cell_text(cell)));
            }
            let uncovered: Vec<Value> = report
                .uncovered
                .iter()
                .map(|(t, n, cell, j)| json!({"table": t.name(), "n": n, "cell": cell_json(cell), "j": j}))
                .collect();
            lines.push(format!(
                "{} identities: {} checks, {} mismatches (n <= {n_max}, {samples} samples, seed {})",
                status(report.passed()),
                report.total_checks(),
                report.total_mismatches(),
                g.seed
            ));
            let result = json!({
                "n_max": n_max,
                "samples": samples,
                "total_checks": report.total_checks(),
                "total_mismatches": report.total_mismatches(),
                "cases": cases,
                "uncovered": uncovered,
            });
            Ok(Report::checked(report.passed(), lines, result))
        }
        PolytopeCmd::Sample { which, cell } => {
            let p = polytope_id(which)?;
            let cell = cell.as_deref().map(input::parse_cell).transpose()?;
            let count = g.samples.unwrap_or(1);
            let points = (0..count as u64)
                .map(|i| sample_point(p, g.seed.wrapping_add(i), cell.as_ref()))
                .collect::<lscat_core::Result<Vec<_>>>()?;
            let lines = points.iter().map(point_text).collect();
            let result = json!({
                "polytope": polytope_json(p),
                "cell": cell.as_ref().map(cell_json),
                "points": points_json(&points),
            });
            Ok(Report::ok(lines, result))
        }
        PolytopeCmd::Locate { which, point: text } => {
            let p = polytope_id(which)?;
            let x = input::parse_point(text)?;
            let found = boundary_cell_locate(p, &x)?;
            let mut lines = Vec::new();
            if found.is_empty() {
                lines.push(format!("{} is interior to {}", point_text(&x), polytope_name(p)));
            }
            for c in &found {
                let factors: Vec<String> = c.factors.iter().map(point_text).collect();
                lines.push(format!("{} <- {}", cell_text(&c.cell), factors.join(" x ")));
            }
            let cells: Vec<Value> =
                found.iter().map(|c| json!({"cell": cell_json(&c.cell), "factors": points_json(&c.factors)})).collect();
            let result = json!({"polytope": polytope_json(p), "point": point(&x), "cells": cells});
            Ok(Report::ok(lines, result))
        }
    }
}

fn axiom_report(report: &AxiomReport, labels: &[String]) -> (Vec<String>, Value) {
    let mut lines: Vec<String> = report
        .tallies
        .iter()
        .map(|t| format!("{} axiom {}: {} checks, {} violations", status(t.violations == 0), t.axiom, t.checks, t.violations))
        .collect();
    for v in report.violations.iter().take(5) {
        let args: Vec<&str> = v.args.iter().map(|&a| labels.get(a).map_or("?", String::as_str)).collect();
        lines.push(format!(
            "  axiom {} n={} {}args=({}) at {}: {} != {}",
            v.axiom,
            v.n,
            v.cell.as_ref().map(|c| format!("{} ", cell_text(c))).unwrap_or_default(),
            args.join(", "),
            point_text(&v.tau),
            v.lhs,
            v.rhs
        ));
    }
    let tallies: Vec<Value> =
        report.tallies.iter().map(|t| json!({"axiom": t.axiom, "checks": t.checks, "violations": t.violations})).collect();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "axiom": v.axiom,
                "n": v.n,
                "cell": v.cell.as_ref().map(cell_json),
                "j": v.j,
                "tau": point(&v.tau),
                "args": v.args,
                "lhs": v.lhs,
                "rhs": v.rhs,
            })
        })
        .collect();
    let result = json!({
        "n_max": report.n_max,
        "samples": report.samples,
        "passed": report.passed(),
        "total_violations": report.total_violations(),
        "tallies": tallies,
        "violations": violations,
    });
    (lines, result)
}

/// The canonical form when the table is associative, otherwise the
/// left-bracketed product, whose failures the validator reports.
fn product_form(m: &FiniteMonoid) -> Result<Box<dyn AInftyForm>, CliError> {
    if m.is_associative() {
        Ok(Box::new(canonical_form(m)?))
    } else {
        let table = m.clone();
        Ok(Box::new(FnForm::new(m.clone(), move |_, args: &[usize]| table.product(args))))
    }
}

pub fn ainfty(cmd: &AinftyCmd, g: &Global) -> Result<Report, CliError> {
    let n_max = g.nmax.unwrap_or(4);
    let samples = g.samples.unwrap_or(8);
    match cmd {
        AinftyCmd::ValidateForm { monoid } => {
            let m = input::load_monoid(monoid)?;
            let form = product_form(&m)?;
            let report = validate_form(form.as_ref(), n_max, samples, g.seed)?;
            let (lines, result) = axiom_report(&report, m.labels());
            Ok(Report::checked(report.passed(), lines, result))
        }
        AinftyCmd::ValidateMap { source, target, images, include_last_unit } => {
            let src = input::load_monoid(source)?;
            let dst = input::load_monoid(target)?;
            let images = input::parse_images(images)?;
            if images.len() != src.order() || images.iter().any(|&i| i >= dst.order()) {
                return Err(CliError::Input(format!(
                    "need {} images, each below {}",
                    src.order(),
                    dst.order()
                )));
            }
            let src_form = canonical_form(&src)?;
            let dst_form = canonical_form(&dst)?;
            let options = MapValidationOptions { include_last_unit: *include_last_unit };
            let report = if check_homomorphism(&images, &src, &dst).is_ok() {
                let map = hom_map_form(images, src_form, dst_form)?;
                validate_map_form_with(&map, n_max, samples, g.seed, options)?
            } else {
                let table = dst.clone();
                let map = FnMapForm::new(&src_form, &dst_form, move |_, args: &[usize]| {
                    table.product(&args.iter().map(|&a| images[a]).collect::<Vec<_>>())
                });
                validate_map_form_with(&map, n_max, samples, g.seed, options)?
            };
            let (lines, result) = axiom_report(&report, src.labels());
            Ok(Report::checked(report.passed(), lines, result))
        }
    }
}

fn coefficients(over: &str) -> Result<Coefficients, CliError> {
    let over = over.trim();
    if over == "Z" {
        return Ok(Coefficients::Integers);
    }
    let p = over
        .strip_prefix('F')
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| CliError::Input(format!("unknown coefficient ring {over:?}; expected \"Z\" or \"F<p>\"")))?;
    Ok(Coefficients::prime(p)?)
}

fn ring_name(c: &Coefficients) -> String {
    match c {
        Coefficients::Integers => "Z".into(),
        Coefficients::Prime(f) => format!("F{}", f.p()),
    }
}

fn group_text(h: &HomologyGroup, c: &Coefficients) -> String {
    match c {
        Coefficients::Integers => h.to_string(),
        Coefficients::Prime(f) => match h.rank {
            0 => "0".into(),
            1 => format!("F{}", f.p()),
            r => format!("F{}^{r}", f.p()),
        },
    }
}

pub fn algebra_json<F: Coefficient>(a: &GradedAlgebra<F>) -> Value {
    let products: Vec<Value> = a
        .product_entries()
        .into_iter()
        .map(|e| {
            let combo: Map<String, Value> =
                e.result.iter().map(|(l, c)| (l.clone(), Value::String(a.field().serialize(c)))).collect();
            json!([e.left, e.right, combo])
        })
        .collect();
    json!({
        "field": a.field().name(),
        "top_degree": a.top_degree(),
        "basis": a.basis_by_degree(),
        "products": products,
    })
}

fn solution_json(w: &IntegerSolution) -> Value {
    match w {
        IntegerSolution::Solved(y) => json!({"kind": "preimage", "preimage": output::bigints(y)}),
        IntegerSolution::Obstructed { functional, modulus } => {
            json!({"kind": "obstruction", "functional": output::bigints(functional), "modulus": modulus.to_string()})
        }
    }
}

pub fn bar(cmd: &BarCmd, g: &Global) -> Result<Report, CliError> {
    match cmd {
        BarCmd::Cells { group } => {
            let grp = input::load_group(group)?;
            let n = g.nmax.unwrap_or(4);
            let counts = bar_cell_counts(&grp, n)?;
            let lines = (0..=n)
                .map(|k| format!("degree {k}: P^n {} cells, E^(n+1) {} cells", counts.projective[k], counts.total[k]))
                .collect();
            let result = json!({
                "n": n,
                "projective": counts.projective.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "total": counts.total.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            Ok(Report::ok(lines, result))
        }
        BarCmd::Homology { group, coeff, over, unnormalized, cohomology } => {
            let grp = input::load_group(group)?;
            let module = input::load_module(&grp, coeff)?;
            let ring = coefficients(over)?;
            let n_max = g.nmax.unwrap_or(6);
            let opts = BarOptions { normalized: !unnormalized, capacity: g.capacity };
            let h = if *cohomology {
                group_cohomology(&grp, &module, n_max, ring, opts)?
            } else {
                group_homology(&grp, &module, n_max, ring, opts)?
            };
            let letter = if *cohomology { "H^" } else { "H_" };
            let lines = h.groups.iter().map(|x| format!("{letter}{} = {}", x.degree, group_text(x, &ring))).collect();
            let result = json!({
                "kind": if *cohomology { "cohomology" } else { "homology" },
                "coefficients": ring_name(&ring),
                "module_rank": module.rank(),
                "normalized": !unnormalized,
                "groups": output::homology(&h),
            });
            Ok(Report::ok(lines, result))
        }
        BarCmd::CohomologyRing { group, prime } => {
            let grp = input::load_group(group)?;
            let n_max = g.nmax.unwrap_or(4);
            let ring = cohomology_ring_with(&grp, *prime, n_max, g.capacity)?;
            let check = validate_algebra(&ring);
            let cl = cuplength(&ring);
            let mut lines: Vec<String> =
                (0..=n_max).map(|d| format!("H^{d}: dim {}  [{}]", ring.dim_in(d), labels_in(&ring, d))).collect();
            lines.push(format!("cuplength through degree {n_max}: {cl}"));
            lines.push(format!("{} algebra axioms ({} violations)", status(check.passed()), check.total));
            let result = json!({"algebra": algebra_json(&ring), "cuplength": cl, "axioms_hold": check.passed()});
            Ok(Report::checked(check.passed(), lines, result))
        }
        BarCmd::BersteinSvarc { group, n } => {
            let grp = input::load_group(group)?;
            let bs = berstein_svarc_power_with(&grp, *n, g.capacity)?;
            bs.verify(&grp)?;
            let verdict = if bs.nonzero() { "nonzero" } else { "zero" };
            let mut lines = vec![format!("b^{n} is {verdict} in H^{n}(G; I^{n})")];
            match &bs.witness {
                IntegerSolution::Obstructed { modulus, .. } => {
                    lines.push(format!("witness: functional pairing to a nonzero class mod {modulus}"))
                }
                IntegerSolution::Solved(_) => lines.push("witness: integral preimage under the coboundary".into()),
            }
            let result = json!({
                "n": n,
                "nonzero": bs.nonzero(),
                "cochain": {"degree": bs.cochain.degree, "rank": bs.cochain.rank, "values": bs.cochain.values},
                "witness": solution_json(&bs.witness),
            });
            Ok(Report::ok(lines, result))
        }
        BarCmd::JoinHomology { group, n } => {
            let grp = input::load_group(group)?;
            let h = join_complex_homology_with(&grp, *n, g.capacity)?;
            let lines = h.groups.iter().map(|x| format!("H_{} = {x}", x.degree)).collect();
            let result = json!({"n": n, "augmented": true, "groups": output::homology(&h)});
            Ok(Report::ok(lines, result))
        }
    }
}

fn labels_in<F: lscat_core::field::Field>(a: &GradedAlgebra<F>, d: usize) -> String {
    a.basis_in(d).iter().map(|&i| a.label(i)).collect::<Vec<_>>().join(", ")
}

fn violation_text(v: &AlgebraViolation) -> String {
    match v {
        AlgebraViolation::DegreeZero { dim } => format!("degree 0 has dimension {dim}"),
        AlgebraViolation::Unit { label } => format!("unit law fails on {label}"),
        AlgebraViolation::Homogeneity { left, right } => format!("{left}·{right} is not homogeneous"),
        AlgebraViolation::Associativity { a, b, c } => format!("({a}·{b})·{c} != {a}·({b}·{c})"),
        AlgebraViolation::Commutativity { a, b } => format!("{a}·{b} != ±{b}·{a}"),
    }
}

fn violation_json(v: &AlgebraViolation) -> Value {
    match v {
        AlgebraViolation::DegreeZero { dim } => json!({"kind": "degree_zero", "dim": dim}),
        AlgebraViolation::Unit { label } => json!({"kind": "unit", "label": label}),
        AlgebraViolation::Homogeneity { left, right } => json!({"kind": "homogeneity", "left": left, "right": right}),
        AlgebraViolation::Associativity { a, b, c } => json!({"kind": "associativity", "a": a, "b": b, "c": c}),
        AlgebraViolation::Commutativity { a, b } => json!({"kind": "commutativity", "a": a, "b": b}),
    }
}

fn bound_json(b: &Bound) -> Value {
    json!({
        "invariant": b.invariant,
        "lower": b.lower,
        "lower_source": b.lower_source,
        "upper": b.upper,
        "upper_source": b.upper_source,
        "exact": b.exact(),
    })
}

fn bound_text(b: &Bound) -> String {
    let upper = match (b.upper, b.upper_source) {
        (Some(u), Some(s)) => format!(" <= {u} ({s})"),
        _ => String::new(),
    };
    let exact = b.exact().map(|v| format!("  => {} = {v}", b.invariant)).unwrap_or_default();
    format!("{} ({}) <= {}{}{}", b.lower, b.lower_source, b.invariant, upper, exact)
}

fn ring_generic<F: Coefficient>(cmd: &RingCmd, a: &GradedAlgebra<F>, g: &Global) -> Result<Report, CliError> {
    match cmd {
        RingCmd::Validate { .. } => {
            let r = validate_algebra(a);
            let mut lines = vec![format!("{} {} violations over {}", status(r.passed()), r.total, a.field().name())];
            lines.extend(r.violations.iter().map(|v| format!("  {}", violation_text(v))));
            let result = json!({
                "field": a.field().name(),
                "dim": a.dim(),
                "total_violations": r.total,
                "violations": r.violations.iter().map(violation_json).collect::<Vec<_>>(),
            });
            Ok(Report::checked(r.passed(), lines, result))
        }
        RingCmd::Cuplength { .. } => {
            let cl = cuplength(a);
            Ok(Report::ok(vec![format!("cuplength = {cl}")], json!({"cuplength": cl})))
        }
        RingCmd::TcBound { upper, .. } => {
            let zcl = zero_divisor_cuplength_with(a, g.capacity)?;
            let consistent = upper.is_none_or(|u| u >= zcl);
            let mut lines = vec![format!("zcl = {zcl}"), format!("tc >= {zcl}")];
            if let Some(u) = upper {
                lines.push(format!("{} tc <= {u}", status(consistent)));
                if *u == zcl {
                    lines.push(format!("tc = {zcl}"));
                }
            }
            let exact = upper.filter(|&u| u == zcl);
            let result = json!({"zcl": zcl, "tc_lower": zcl, "tc_upper": upper, "tc_exact": exact});
            Ok(Report::checked(consistent, lines, result))
        }
        RingCmd::Report { dim, tc_upper, .. } => {
            let tc = tc_upper.map(|upper| TcData { upper, source: "supplied" });
            let r = bounds_report_with(a, *dim, tc, g.capacity)?;
            let lines = vec![
                format!("cuplength = {}, zcl = {}, dim = {}", r.cuplength, r.zcl, r.dim),
                bound_text(&r.cat),
                bound_text(&r.tc),
            ];
            let result = json!({
                "cuplength": r.cuplength,
                "zcl": r.zcl,
                "dim": r.dim,
                "cat": bound_json(&r.cat),
                "tc": bound_json(&r.tc),
            });
            Ok(Report::ok(lines, result))
        }
    }
}

pub fn ring(cmd: &RingCmd, g: &Global) -> Result<Report, CliError> {
    let path = match cmd {
        RingCmd::Validate { algebra } | RingCmd::Cuplength { algebra } => algebra,
        RingCmd::TcBound { algebra, .. } | RingCmd::Report { algebra, .. } => algebra,
    };
    match input::load_algebra(path)? {
        AnyAlgebra::Q(a) => ring_generic(cmd, &a, g),
        AnyAlgebra::Fp(a) => ring_generic(cmd, &a, g),
    }
}

pub fn rp(cmd: &RpCmd) -> Result<Report, CliError> {
    let RpCmd::Tc { n, imm } = cmd;
    let delta = delta_correction(*n)?;
    let tc = tc_rp(*n, *imm)?;
    let lines = vec![format!("tc(RP^{n}) = {imm} - {delta} = {tc}")];
    Ok(Report::ok(lines, json!({"n": n, "imm": imm, "delta": delta, "tc": tc})))
}
