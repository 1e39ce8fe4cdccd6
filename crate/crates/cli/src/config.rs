//! Resolution of command-line group/parameter arguments into core types.

use cherednik_core::dunkl::ParamMode;
use cherednik_core::gf::Fq;
use cherednik_core::groups::{ClassKind, Family, GroupData, GroupSpec};
use cherednik_core::{Error, Result};
use serde_json::{json, Value};

/// A fully resolved run target: the group, the `t` level, and the
/// parameter mode, plus a JSON echo of the parameter choice.
pub struct Resolved {
    pub group: GroupData,
    pub t: u64,
    pub mode: ParamMode,
    pub c_echo: Value,
}

pub fn resolve(family: &str, n: usize, q: u64, t: u64, c: &str) -> Result<Resolved> {
    let fam = Family::parse(family)?;
    let spec = GroupSpec::new(fam, n, q)?;
    let group = GroupData::new(spec)?;
    let (mode, c_echo) = parse_c(c, &group)?;
    Ok(Resolved {
        group,
        t,
        mode,
        c_echo,
    })
}

/// Parse a `--c` argument: `generic` for symbolic parameters, or a
/// comma-separated list of field element indices, one per reflection
/// class (class id order; index `v` is the element with index `v` in the
/// additive enumeration, which for prime fields is the residue `v`).
pub fn parse_c(c: &str, group: &GroupData) -> Result<(ParamMode, Value)> {
    let c = c.trim();
    if c.eq_ignore_ascii_case("generic") {
        return Ok((ParamMode::Symbolic, Value::String("generic".into())));
    }
    let field = group.field();
    let m = group.class_count();
    let mut values: Vec<Fq> = Vec::new();
    let mut indices: Vec<u64> = Vec::new();
    for part in c.split(',') {
        let text = part.trim();
        let v: u64 = text.parse().map_err(|_| {
            Error::Config(format!(
                "cannot parse parameter value '{text}': expected \"generic\" or a \
                 comma-separated list of field element indices"
            ))
        })?;
        if v >= field.q() {
            return Err(Error::Config(format!(
                "parameter index {v} is out of range for F_{} (valid: 0..={})",
                field.q(),
                field.q() - 1
            )));
        }
        indices.push(v);
        values.push(field.element(v as u32));
    }
    if values.len() != m {
        return Err(Error::Config(format!(
            "{} has {m} reflection class(es) ({}), so --c needs {m} value(s), got {}",
            group.label(),
            group.param_names().join(", "),
            values.len()
        )));
    }
    Ok((ParamMode::Specialized(values), json!(indices)))
}

fn kind_label(kind: ClassKind) -> &'static str {
    match kind {
        ClassKind::Unipotent => "unipotent",
        ClassKind::Semisimple => "semisimple",
    }
}

/// JSON summary of a group: field data, order, and the reflection class
/// table in display order.
pub fn group_summary(group: &GroupData) -> Value {
    let spec = group.spec();
    let field = group.field();
    let order = group.group_order();
    let order_json = match u64::try_from(order) {
        Ok(v) => json!(v),
        Err(_) => json!(order.to_string()),
    };
    let names = group.param_names();
    let classes: Vec<Value> = group
        .display_class_order()
        .into_iter()
        .map(|i| {
            let cl = &group.classes()[i];
            json!({
                "id": cl.class_id,
                "kind": kind_label(cl.kind),
                "size": cl.size,
                "lambda": cl.lambda.render(),
                "parameter": names[cl.class_id - 1],
            })
        })
        .collect();
    json!({
        "family": spec.family.label(),
        "label": group.label(),
        "n": spec.n,
        "q": spec.q,
        "p": field.p(),
        "r": field.r(),
        "modulus": if field.r() > 1 { json!(field.modulus_string()) } else { Value::Null },
        "dim": group.dim(),
        "order": order_json,
        "reflections": group.reflections().len(),
        "classes": classes,
    })
}

/// Render a vector of field elements.
pub fn render_vec(v: &[Fq]) -> Vec<String> {
    v.iter().map(|x| x.render()).collect()
}
