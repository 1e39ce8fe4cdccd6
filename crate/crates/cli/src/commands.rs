//! Implementations of the single-shot subcommands: reflections, dunkl,
//! form, hilbert, dickson, and compare-h.

use crate::config::{group_summary, render_vec, Resolved};
use crate::output::{align_table, csv_row, pretty, Format};
use crate::{derived_seed, SCHEMA};
use cherednik_core::dunkl::{DunklContext, ParamMode};
use cherednik_core::form::{FormContext, KernelReport, SpecializationInfo};
use cherednik_core::gf::Field;
use cherednik_core::groups::{factor_prime_power, Family, GroupData, GroupSpec};
use cherednik_core::poly::{Polynomial, XMono};
use cherednik_core::series::{
    compare_h0_h1, default_max_degree, dickson_invariants, dimension_bound,
    equal_parameter_hilbert_series, hilbert_series, reduced_series,
};
use cherednik_core::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

fn echo_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn field_label(field: &Field) -> String {
    if field.r() > 1 {
        format!("F_{} = F_{}[x]/({})", field.q(), field.p(), field.modulus_string())
    } else {
        format!("F_{}", field.q())
    }
}

fn kernel_json(kernel: &KernelReport) -> Value {
    json!({
        "field": field_label(&kernel.field),
        "in_base_field": kernel.in_base_field,
        "vectors": kernel.vectors.iter().map(|v| render_vec(v)).collect::<Vec<_>>(),
    })
}

fn specialization_json(info: &Option<SpecializationInfo>) -> Value {
    match info {
        None => Value::Null,
        Some(s) => json!({
            "extension": field_label(&s.extension_field),
            "point": render_vec(&s.point),
            "redraws": s.redraws,
        }),
    }
}

/// Parse a monomial like `x1^2*x2` (or `1`) into packed exponents.
pub fn parse_monomial(s: &str, n: usize) -> Result<XMono> {
    let s = s.trim();
    if s == "1" {
        return Ok(XMono::one());
    }
    let mut exps = vec![0u64; n];
    for factor in s.split('*') {
        let f = factor.trim();
        let rest = f.strip_prefix('x').ok_or_else(|| {
            Error::Config(format!(
                "cannot parse monomial factor '{f}': expected x<var> or x<var>^<exp>"
            ))
        })?;
        let (var_s, exp_s) = match rest.split_once('^') {
            Some((v, e)) => (v, Some(e)),
            None => (rest, None),
        };
        let v: usize = var_s
            .parse()
            .map_err(|_| Error::Config(format!("cannot parse variable index in '{f}'")))?;
        if v < 1 || v > n {
            return Err(Error::Config(format!(
                "variable x{v} is out of range 1..={n}"
            )));
        }
        let e: u64 = match exp_s {
            Some(e) => e
                .parse()
                .map_err(|_| Error::Config(format!("cannot parse exponent in '{f}'")))?,
            None => 1,
        };
        exps[v - 1] += e;
    }
    if exps.iter().any(|&e| e > 255) {
        return Err(Error::Config(
            "monomial exponents are capped at 255 per variable".into(),
        ));
    }
    let exps: Vec<u32> = exps.into_iter().map(|e| e as u32).collect();
    Ok(XMono::pack(&exps))
}

// ---------------------------------------------------------------------------
// reflections
// ---------------------------------------------------------------------------

pub fn reflections(group: &GroupData, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let refls: Vec<Value> = group
                .reflections()
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    json!({
                        "index": i,
                        "class": r.class_id(),
                        "unipotent": r.is_unipotent(),
                        "lambda": r.lambda().render(),
                        "matrix": r.matrix().render_rows(),
                        "alpha": render_vec(r.alpha()),
                        "alpha_check": render_vec(r.alpha_check()),
                    })
                })
                .collect();
            Ok(pretty(&json!({
                "schema": SCHEMA,
                "command": "reflections",
                "group": group_summary(group),
                "reflections": refls,
            })))
        }
        Format::Table => {
            let mut lines = vec![
                format!("group: {}", group.label()),
                format!(
                    "order {} | {} reflections in {} class(es)",
                    group.group_order(),
                    group.reflections().len(),
                    group.class_count()
                ),
            ];
            for i in group.display_class_order() {
                let cl = &group.classes()[i];
                lines.push(format!(
                    "  class {} ({}): size {}, lambda = {}, parameter {}",
                    cl.class_id,
                    match cl.kind {
                        cherednik_core::groups::ClassKind::Unipotent => "unipotent",
                        cherednik_core::groups::ClassKind::Semisimple => "semisimple",
                    },
                    cl.size,
                    cl.lambda.render(),
                    group.param_names()[cl.class_id - 1],
                ));
            }
            let mut rows = vec![vec![
                "#".to_string(),
                "class".to_string(),
                "lambda".to_string(),
                "alpha".to_string(),
                "alpha_check".to_string(),
            ]];
            for (i, r) in group.reflections().iter().enumerate() {
                rows.push(vec![
                    i.to_string(),
                    r.class_id().to_string(),
                    r.lambda().render(),
                    format!("({})", render_vec(r.alpha()).join(", ")),
                    format!("({})", render_vec(r.alpha_check()).join(", ")),
                ]);
            }
            lines.push(align_table(&rows));
            Ok(lines.join("\n"))
        }
        Format::Csv => Err(Error::Config(
            "csv output is only available for the form command".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// dunkl
// ---------------------------------------------------------------------------

pub fn dunkl(resolved: Resolved, monomial: &str, y: Option<usize>, format: Format) -> Result<String> {
    let Resolved {
        group,
        t,
        mode,
        c_echo,
    } = resolved;
    let n = group.dim();
    let summary = group_summary(&group);
    let mono = parse_monomial(monomial, n)?;
    let field = group.field().clone();
    let input_poly = Polynomial::monomial(n, mono, field.one());
    let ys: Vec<usize> = match y {
        Some(j) => {
            if j < 1 || j > n {
                return Err(Error::Config(format!(
                    "--y {j} is out of range 1..={n}"
                )));
            }
            vec![j]
        }
        None => (1..=n).collect(),
    };
    let ctx = DunklContext::new(group, t, mode)?;
    let mut applications: Vec<(usize, String)> = Vec::new();
    for j in &ys {
        let rendered = match ctx.mode() {
            ParamMode::Symbolic => {
                let lifted = ctx.lift_symbolic(&input_poly);
                ctx.apply_symbolic(j - 1, &lifted)?.render()
            }
            ParamMode::Specialized(_) => ctx.apply_at(j - 1, &input_poly)?.render(),
        };
        applications.push((*j, rendered));
    }
    match format {
        Format::Json => {
            let apps: Vec<Value> = applications
                .iter()
                .map(|(j, r)| json!({"y": j, "result": r}))
                .collect();
            Ok(pretty(&json!({
                "schema": SCHEMA,
                "command": "dunkl",
                "group": summary,
                "t": t,
                "c": c_echo,
                "input": input_poly.render(),
                "applications": apps,
            })))
        }
        Format::Table => {
            let mut lines = vec![format!(
                "D_y applied to {} (t = {t}, c = {})",
                input_poly.render(),
                echo_text(&c_echo)
            )];
            for (j, r) in &applications {
                lines.push(format!("  D_y{j}: {r}"));
            }
            Ok(lines.join("\n"))
        }
        Format::Csv => Err(Error::Config(
            "csv output is only available for the form command".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// form
// ---------------------------------------------------------------------------

pub fn form(
    resolved: Resolved,
    min_degree: u32,
    max_degree: Option<u32>,
    seed: u64,
    format: Format,
) -> Result<String> {
    let Resolved {
        group,
        t,
        mode,
        c_echo,
    } = resolved;
    let label = group.label();
    let n = group.dim();
    let p = group.field().p();
    let spec = group.spec().clone();
    let ctx = DunklContext::new(group, t, mode)?;
    let form = FormContext::new(ctx);
    let hi = match max_degree {
        Some(d) => d,
        None => default_max_degree(&spec, p, t).map_err(|_| {
            Error::Config(format!(
                "--max-degree is required for family {}",
                spec.family.label()
            ))
        })?,
    };
    if min_degree > hi {
        return Err(Error::Config(format!(
            "--min-degree {min_degree} exceeds --max-degree {hi}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derived_seed(seed, "form"));
    match format {
        Format::Json => {
            let mut lines = Vec::new();
            for d in min_degree..=hi {
                let block = form.block(d)?;
                let report = cherednik_core::form::rank_kernel(&block, &mut rng)?;
                let obj = json!({
                    "schema": SCHEMA,
                    "command": "form",
                    "group": label,
                    "t": t,
                    "c": c_echo,
                    "seed": seed,
                    "degree": d,
                    "dim": block.dim(),
                    "basis": block.basis().iter().map(|m| m.render(n)).collect::<Vec<_>>(),
                    "entries": block.render_rows(),
                    "zero": block.is_zero(),
                    "rank_generic": report.rank,
                    "kernel": kernel_json(&report.kernel),
                    "specialization": specialization_json(&report.specialization),
                });
                lines.push(serde_json::to_string(&obj).expect("JSON serialization cannot fail"));
            }
            Ok(lines.join("\n"))
        }
        Format::Csv => {
            if min_degree != hi {
                return Err(Error::Config(
                    "csv output covers a single matrix: pass --min-degree equal to --max-degree"
                        .into(),
                ));
            }
            let block = form.block(hi)?;
            let basis: Vec<String> = block.basis().iter().map(|m| m.render(n)).collect();
            let mut out = Vec::new();
            let mut header = vec!["basis".to_string()];
            header.extend(basis.iter().cloned());
            out.push(csv_row(&header));
            for (name, row) in basis.iter().zip(block.render_rows()) {
                let mut cells = vec![name.clone()];
                cells.extend(row);
                out.push(csv_row(&cells));
            }
            Ok(out.join("\n"))
        }
        Format::Table => {
            let mut lines = Vec::new();
            for d in min_degree..=hi {
                let block = form.block(d)?;
                let report = cherednik_core::form::rank_kernel(&block, &mut rng)?;
                lines.push(format!(
                    "degree {d} ({label}, t = {t}): dim {}, generic rank {}",
                    block.dim(),
                    report.rank
                ));
                let basis: Vec<String> = block.basis().iter().map(|m| m.render(n)).collect();
                let mut rows = vec![{
                    let mut h = vec![String::new()];
                    h.extend(basis.iter().cloned());
                    h
                }];
                for (name, row) in basis.iter().zip(block.render_rows()) {
                    let mut cells = vec![name.clone()];
                    cells.extend(row);
                    rows.push(cells);
                }
                lines.push(align_table(&rows));
                if !report.kernel.vectors.is_empty() {
                    lines.push(format!(
                        "kernel ({}):",
                        if report.kernel.in_base_field {
                            "base field"
                        } else {
                            "extension field"
                        }
                    ));
                    for v in &report.kernel.vectors {
                        lines.push(format!("  ({})", render_vec(v).join(", ")));
                    }
                }
                lines.push(String::new());
            }
            while lines.last().is_some_and(|l| l.is_empty()) {
                lines.pop();
            }
            Ok(lines.join("\n"))
        }
    }
}

// ---------------------------------------------------------------------------
// hilbert
// ---------------------------------------------------------------------------

pub fn hilbert(
    resolved: Resolved,
    max_degree: Option<u32>,
    equal_parameters: bool,
    seed: u64,
    format: Format,
) -> Result<String> {
    let Resolved {
        group,
        t,
        mode,
        c_echo,
    } = resolved;
    if equal_parameters && !matches!(mode, ParamMode::Symbolic) {
        return Err(Error::Config(
            "--equal-parameters only applies to --c generic".into(),
        ));
    }
    let summary = group_summary(&group);
    let p = group.field().p();
    let dim = group.dim();
    let order = group.group_order();
    let ctx = DunklContext::new(group, t, mode)?;
    let form = FormContext::new(ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(derived_seed(seed, "hilbert"));
    let scan = if equal_parameters {
        equal_parameter_hilbert_series(&form, max_degree, &mut rng)?
    } else {
        hilbert_series(&form, max_degree, &mut rng)?
    };
    let bound = dimension_bound(&scan.series, p, dim, order)?;
    let (reduced, reduced_error) = if t == 1 {
        match reduced_series(&scan.series, p, dim) {
            Ok(r) => (json!(r.coeffs()), Value::Null),
            Err(e) => (Value::Null, json!(e.to_string())),
        }
    } else {
        (Value::Null, Value::Null)
    };
    match format {
        Format::Json => {
            let ranks: Vec<Value> = scan
                .reports
                .iter()
                .map(|r| json!({"degree": r.degree, "dim": r.dim, "rank": r.rank}))
                .collect();
            Ok(pretty(&json!({
                "schema": SCHEMA,
                "command": "hilbert",
                "group": summary,
                "t": t,
                "c": c_echo,
                "equal_parameters": equal_parameters,
                "seed": seed,
                "series": scan.series.coeffs(),
                "render": scan.series.render(),
                "factored": scan.series.render_factored(),
                "stop": scan.stop.describe(),
                "scanned_to": scan.scanned_to,
                "ranks": ranks,
                "total_dim": bound.total.to_string(),
                "dimension_bound": bound.bound.to_string(),
                "within_bound": bound.within,
                "reduced": reduced,
                "reduced_error": reduced_error,
            })))
        }
        Format::Table => {
            let mut lines = vec![
                format!("hilbert series (t = {t}, c = {})", echo_text(&c_echo)),
                format!("  series:   {}", scan.series.render()),
                format!("  factored: {}", scan.series.render_factored()),
                format!("  coeffs:   {:?}", scan.series.coeffs()),
                format!("  stop:     {}", scan.stop.describe()),
                format!(
                    "  total {} | bound {} ({})",
                    bound.total,
                    bound.bound,
                    if bound.within { "within" } else { "EXCEEDED" }
                ),
            ];
            if let Value::Array(r) = &reduced {
                lines.push(format!(
                    "  reduced:  {:?}",
                    r.iter().map(|v| v.as_u64().unwrap_or(0)).collect::<Vec<_>>()
                ));
            }
            if let Value::String(e) = &reduced_error {
                lines.push(format!("  reduced:  not available ({e})"));
            }
            Ok(lines.join("\n"))
        }
        Format::Csv => Err(Error::Config(
            "csv output is only available for the form command".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// dickson
// ---------------------------------------------------------------------------

pub fn dickson(n: usize, q: u64, format: Format) -> Result<String> {
    let (p, r) = factor_prime_power(q)?;
    let field = Field::new(p, r)?;
    let set = dickson_invariants(&field, n)?;
    match format {
        Format::Json => {
            let qs: Vec<Value> = set
                .qs
                .iter()
                .zip(&set.degrees)
                .enumerate()
                .map(|(i, (poly, deg))| {
                    json!({"index": i, "degree": deg, "render": poly.render()})
                })
                .collect();
            Ok(pretty(&json!({
                "schema": SCHEMA,
                "command": "dickson",
                "q": q,
                "n": n,
                "field": field_label(&field),
                "l": {
                    "degree": (q.pow(n as u32) - 1) / (q - 1),
                    "render": set.l.render(),
                },
                "qs": qs,
                "degrees": set.degrees,
            })))
        }
        Format::Table => {
            let mut lines = vec![format!("fundamental invariants for GL_{n}(F_{q})")];
            lines.push(format!(
                "  L (degree {}): {}",
                (q.pow(n as u32) - 1) / (q - 1),
                set.l.render()
            ));
            for (i, (poly, deg)) in set.qs.iter().zip(&set.degrees).enumerate() {
                lines.push(format!("  Q_{i} (degree {deg}): {}", poly.render()));
            }
            Ok(lines.join("\n"))
        }
        Format::Csv => Err(Error::Config(
            "csv output is only available for the form command".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// compare-h
// ---------------------------------------------------------------------------

pub fn compare_h(
    family: &str,
    n: usize,
    q: u64,
    max_degree: Option<u32>,
    seed: u64,
    format: Format,
) -> Result<String> {
    let fam = Family::parse(family)?;
    let spec = GroupSpec::new(fam, n, q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(derived_seed(seed, "compare-h"));
    let report = compare_h0_h1(&spec, max_degree, &mut rng)?;
    match format {
        Format::Json => Ok(pretty(&json!({
            "schema": SCHEMA,
            "command": "compare-h",
            "family": fam.label(),
            "n": n,
            "q": q,
            "seed": seed,
            "h0": report.h0.coeffs(),
            "h1": report.h1_raw.coeffs(),
            "h1_reduced": report.h1_reduced.coeffs(),
            "termwise_le": report.termwise_le,
            "stop_t0": report.stop0.describe(),
            "stop_t1": report.stop1.describe(),
        }))),
        Format::Table => Ok([
            format!("t = 0 series:          {:?}", report.h0.coeffs()),
            format!("t = 1 series:          {:?}", report.h1_raw.coeffs()),
            format!("t = 1 reduced:         {:?}", report.h1_reduced.coeffs()),
            format!("h0 <= reduced h1:      {}", report.termwise_le),
        ]
        .join("\n")),
        Format::Csv => Err(Error::Config(
            "csv output is only available for the form command".into(),
        )),
    }
}
