use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};
use twistcube_core::polyhedra::{vertices_to_json, vertices_to_off, Incidence};
use twistcube_core::rational::{format_point, parse_point};
use twistcube_core::resolve::{Check, ContainmentReport};
use twistcube_core::stringpoly::{delta_lattice_points_capped, lattice_counts_capped};
use twistcube_core::twistedcube::format_signs;
use twistcube_core::*;

use crate::spec::{Format, ProblemSpec};

/// What a command hands back to `main`.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    /// Raw output that replaces both renderings (OFF export).
    pub raw: Option<String>,
    /// Exit with status 1.
    pub failed: bool,
}

impl Outcome {
    fn new(json: Value, text: String, failed: bool) -> Self {
        Outcome {
            json,
            text,
            raw: None,
            failed,
        }
    }
}

fn checks_json(checks: &[Check]) -> Value {
    let map: BTreeMap<&str, Value> = checks
        .iter()
        .map(|c| (c.name, json!({ "pass": c.pass, "witness": c.witness })))
        .collect();
    json!(map)
}

fn checks_text(out: &mut String, checks: &[Check]) {
    for c in checks {
        let _ = write!(
            out,
            "  {:<15} {}",
            c.name,
            if c.pass { "pass" } else { "FAIL" }
        );
        if let Some(w) = &c.witness {
            let _ = write!(out, "  ({w})");
        }
        out.push('\n');
    }
}

fn fmt_ints(xs: &[i64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn counts_json(counts: &[(i64, usize)]) -> Value {
    let map: BTreeMap<String, usize> = counts.iter().map(|(d, c)| (d.to_string(), *c)).collect();
    json!(map)
}

pub fn twisted_cube_cmd(spec: &ProblemSpec) -> Result<Outcome> {
    let wm = spec.word_mult()?;
    let forms = a_forms(&wm);
    let p = twisted_cube(&wm);
    let inc = Incidence::of(&p)?;
    let lattice = inc.vertices.is_lattice_polytope();
    let simple = inc.is_simple();
    let smooth = lattice.then(|| simple && inc.non_unimodular_vertex().is_none());

    let inequalities: Vec<String> = (1..=wm.len())
        .map(|j| format!("0 <= x{j} <= {}", forms.get(j)))
        .collect();
    let json = json!({
        "input": spec.input_json(),
        "m": wm.mult(),
        "inequalities": inequalities,
        "vertices": inc.vertices.to_pq_rows(),
        "affine_dim": inc.affine_dim,
        "checks": {
            "lattice": { "pass": lattice },
            "simple": { "pass": simple },
            "smooth": { "pass": smooth },
        },
    });
    let mut text = format!(
        "twisted cube P for word {} and m = {}\n",
        wm.word(),
        fmt_ints(wm.mult())
    );
    for ineq in &inequalities {
        let _ = writeln!(text, "  {ineq}");
    }
    let _ = writeln!(
        text,
        "{} vertices, dimension {}",
        inc.vertices.len(),
        inc.affine_dim
    );
    for v in inc.vertices.points() {
        let _ = writeln!(text, "  {}", format_point(v));
    }
    let _ = writeln!(text, "lattice: {lattice}");
    let _ = writeln!(text, "simple:  {simple}");
    let _ = writeln!(
        text,
        "smooth:  {}",
        smooth.map_or("n/a (not a lattice polytope)".to_string(), |s| s
            .to_string())
    );
    Ok(Outcome::new(json, text, false))
}

pub fn string_polytope_cmd(spec: &ProblemSpec, points: &[String], list: bool) -> Result<Outcome> {
    let wm = spec.word_mult()?;
    let mut queries = Vec::new();
    let mut text = format!(
        "string polytope Delta for word {} and m = {}\n",
        wm.word(),
        fmt_ints(wm.mult())
    );
    for raw in points {
        let x = parse_point(raw)?;
        let r = in_delta(&wm, &x)?;
        let violation = r.first_violation.as_ref().map(|v| v.to_string());
        let _ = writeln!(
            text,
            "{} {}{}",
            format_point(&x),
            if r.inside { "inside" } else { "outside" },
            violation
                .as_deref()
                .map(|v| format!(": {v}"))
                .unwrap_or_default()
        );
        queries.push(json!({
            "point": x.iter().map(twistcube_core::rational::to_pq).collect::<Vec<_>>(),
            "inside": r.inside,
            "violation": violation,
        }));
    }
    let mut counts = Vec::new();
    let mut listed = BTreeMap::new();
    for dilate in 1..=spec.dilates {
        let c = lattice_counts_capped(&wm, dilate, spec.cap)?;
        let _ = writeln!(
            text,
            "dilate {dilate}: {} lattice points in Delta, {} in P",
            c.delta, c.twisted_cube
        );
        counts.push((dilate, c.delta));
        if list {
            let pts = delta_lattice_points_capped(&wm, dilate, spec.cap)?;
            for p in &pts {
                let _ = writeln!(text, "  {}", fmt_ints(p));
            }
            listed.insert(dilate.to_string(), pts);
        }
    }
    let mut json = json!({
        "input": spec.input_json(),
        "m": wm.mult(),
        "membership": queries,
        "lattice_counts": counts_json(&counts),
    });
    if list {
        json["lattice_points"] = json!(listed);
    }
    Ok(Outcome::new(json, text, false))
}

pub fn check_p_cmd(spec: &ProblemSpec) -> Result<Outcome> {
    let wm = spec.word_mult()?;
    let cert = satisfies_p(&wm);
    let witness = cert.witness.as_ref().map(|w| w.to_string());
    let json = json!({
        "input": spec.input_json(),
        "m": wm.mult(),
        "checks": { "conditionP": { "pass": cert.holds, "witness": witness } },
        "witness": cert.witness.as_ref().map(|w| json!({
            "k": w.k,
            "sigma": format_signs(&w.sigma),
            "suffix": w.suffix,
            "value": w.value,
        })),
    });
    let text = match &witness {
        None => "condition (P): holds\n".to_string(),
        Some(w) => format!("condition (P): fails\nwitness: {w}\n"),
    };
    Ok(Outcome::new(json, text, !cert.holds))
}

pub fn cartier_cmd(spec: &ProblemSpec) -> Result<Outcome> {
    let wm = spec.word_mult()?;
    let table = cartier_data(&wm);
    let rows: Vec<Value> = table
        .entries()
        .iter()
        .map(|(s, r)| json!({ "sigma": format_signs(s), "r": r }))
        .collect();
    let mut text = String::new();
    for (s, r) in table.entries() {
        let _ = writeln!(text, "{}  {}", format_signs(s), fmt_ints(r));
    }
    let json = json!({
        "input": spec.input_json(),
        "m": wm.mult(),
        "table": rows,
        "all_nonnegative": table.all_nonnegative(),
    });
    Ok(Outcome::new(json, text, false))
}

pub fn m_of_lambda_cmd(spec: &ProblemSpec) -> Result<Outcome> {
    let m = m_of_lambda(&spec.datum, &spec.word, spec.weight()?)?;
    let json = json!({ "input": spec.input_json(), "m": m });
    Ok(Outcome::new(json, format!("{}\n", fmt_ints(&m)), false))
}

fn containment_json(c: &ContainmentReport) -> Value {
    json!({
        "scope": c.scope,
        "componentwise_le": c.componentwise_le,
        "holds": c.holds(),
        "rows": c.rows.iter().map(|r| json!({
            "dilate": r.dilate,
            "small_points": r.small_points,
            "missing": r.missing,
            "first_missing": r.first_missing,
        })).collect::<Vec<_>>(),
    })
}

pub fn resolve_cmd(spec: &ProblemSpec) -> Result<Outcome> {
    let lambda = spec.weight()?;
    let m = construct_m(&spec.datum, &spec.word, lambda)?;
    let report = verify_resolution_with(&spec.datum, &spec.word, lambda, &m, spec.dilates)?;
    let shape = report
        .m_lambda_shape
        .as_ref()
        .map(|s| json!({ "lattice": s.lattice, "simple": s.simple, "smooth": s.smooth }));
    let json = json!({
        "input": spec.input_json(),
        "m_lambda": report.m_lambda,
        "m": report.m,
        "checks": checks_json(&report.checks),
        "vertices": report.vertices,
        "lattice_counts": counts_json(&report.lattice_counts),
        "containment": report.containment.as_ref().map(containment_json),
        "m_lambda_shape": shape,
    });
    let mut text = format!(
        "word {} weight {}\nm(lambda) = {}\nm         = {}\nchecks:\n",
        spec.word,
        fmt_ints(&lambda.coords),
        fmt_ints(&report.m_lambda),
        fmt_ints(&report.m)
    );
    checks_text(&mut text, &report.checks);
    let _ = writeln!(text, "{} vertices", report.vertices.len());
    for (d, c) in &report.lattice_counts {
        let _ = writeln!(text, "dilate {d}: {c} lattice points");
    }
    if let Some(s) = &report.m_lambda_shape {
        let _ = writeln!(
            text,
            "P for m(lambda): lattice {}, simple {}, smooth {}",
            s.lattice,
            s.simple,
            s.smooth.map_or("n/a".to_string(), |b| b.to_string())
        );
    }
    Ok(Outcome::new(json, text, !report.all_pass()))
}

pub fn compare_cmd(
    spec: &ProblemSpec,
    small: Option<Vec<i64>>,
    big: Option<Vec<i64>>,
) -> Result<Outcome> {
    let small = match small {
        Some(s) => s,
        None => m_of_lambda(&spec.datum, &spec.word, spec.weight()?)?,
    };
    let big = match (big, &spec.data) {
        (Some(b), _) => b,
        (None, Some(crate::spec::Data::Mult(m))) => m.clone(),
        (None, _) => construct_m(&spec.datum, &spec.word, spec.weight()?)?,
    };
    let report = containment_check(&spec.datum, &spec.word, &small, &big, spec.dilates)?;
    let json = json!({
        "input": spec.input_json(),
        "small": small,
        "big": big,
        "containment": containment_json(&report),
    });
    let mut text = format!(
        "Delta({}) in Delta({}), {}\n",
        fmt_ints(&small),
        fmt_ints(&big),
        report.scope
    );
    for r in &report.rows {
        let _ = write!(
            text,
            "dilate {}: {} points, {} missing",
            r.dilate, r.small_points, r.missing
        );
        if let Some(x) = &r.first_missing {
            let _ = write!(text, " (e.g. {})", fmt_ints(x));
        }
        text.push('\n');
    }
    let _ = writeln!(
        text,
        "containment: {}",
        if report.holds() { "holds" } else { "fails" }
    );
    Ok(Outcome::new(json, text, !report.holds()))
}

pub fn export_cmd(spec: &ProblemSpec) -> Result<Outcome> {
    let wm = spec.word_mult()?;
    let p = twisted_cube(&wm);
    let vertices = p.vertices()?;
    let json = vertices_to_json(&vertices);
    let want_off = match spec.format {
        Some(Format::Off) => true,
        Some(Format::Json) => false,
        _ => wm.len() == 3 && vertices.affine_dim() == 3,
    };
    let mut out = Outcome::new(json.clone(), format!("{json}\n"), false);
    if want_off {
        out.raw = Some(vertices_to_off(&p)?);
    }
    Ok(out)
}
