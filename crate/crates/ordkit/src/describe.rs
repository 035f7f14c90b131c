//! Group, ordering and certificate descriptors.
//!
//! Groups: `trivial`, `cyclic:n`, `integers`, `free-abelian:k`, `klein4`,
//! `promislow`, `witness:p`, `witness:p:sabotaged`, `product:<a>,<b>`
//! (parenthesize a nested product: `product:(product:cyclic:2,cyclic:3),integers`),
//! and `presentation:<file>` for a finitely presented group known only by
//! its presentation.
//!
//! Circular orderings: `natural` or `natural:k` on `ℤ/n`; `secret` (from the
//! group's built-in left ordering); `lex` (the product ordering on `L × ℤ/n`,
//! or the ordering of `promislow × ℤ/2` over `β`); `enumerated:i` (the `i`-th
//! ordering of a small finite group); `table:<file>`.
//! Left orderings: `left` (the built-in one).

use std::fs;
use std::path::{Path, PathBuf};

use ordkit_core::group::{DEFAULT_BALL_LIMIT};
use ordkit_core::obstruction::{self, promislow, LeftOrderEvidence, UnobstructedCertificate, DEFAULT_ENUMERATION_CAP};
use ordkit_core::orders::{natural_circular_cyclic, product_circular, secret_from_left};
use ordkit_core::witness::WitnessGroup;
use ordkit_core::{CircularOrdering, Element, Group, Homomorphism, LeftOrdering, Presentation};
use serde_json::Value;

use crate::error::{CliError, Result};
use crate::json;

/// A parsed `--group` argument.
#[derive(Clone, Debug)]
pub enum GroupSpec {
    Concrete(Group),
    Presented { path: PathBuf, presentation: Presentation },
}

impl GroupSpec {
    pub fn concrete(&self) -> Result<&Group> {
        match self {
            GroupSpec::Concrete(g) => Ok(g),
            GroupSpec::Presented { path, .. } => Err(CliError::Usage(format!(
                "{} gives only a presentation; this command needs a built-in group",
                path.display()
            ))),
        }
    }

    pub fn label(&self) -> String {
        match self {
            GroupSpec::Concrete(g) => g.to_string(),
            GroupSpec::Presented { path, .. } => format!("presentation:{}", path.display()),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| usage(format!("invalid {what} `{s}`")))
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read_text(path)?).map_err(|source| CliError::Json { path: path.to_path_buf(), source })
}

/// Splits `a,b` at the comma outside parentheses.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') {
        &t[1..t.len() - 1]
    } else {
        t
    }
}

/// Parses a built-in group descriptor.
pub fn parse_builtin(s: &str) -> Result<Group> {
    let s = s.trim();
    match s {
        "trivial" => return Ok(Group::trivial()),
        "integers" => return Ok(Group::Integers),
        "klein4" => return Ok(Group::klein4()),
        "promislow" => return Ok(Group::Promislow),
        _ => {}
    }
    let (kind, arg) = s.split_once(':').ok_or_else(|| usage(format!("unknown group `{s}`")))?;
    match kind {
        "cyclic" => Ok(Group::cyclic(number(arg, "cyclic order")?)?),
        "free-abelian" => Ok(Group::FreeAbelian(number(arg, "rank")?)),
        "witness" => {
            let (p, sabotaged) = match arg.split_once(':') {
                Some((p, "sabotaged")) => (p, true),
                Some(_) => return Err(usage(format!("unknown witness variant `{s}`"))),
                None => (arg, false),
            };
            let p = number(p, "prime")?;
            Ok(Group::Witness(if sabotaged { WitnessGroup::sabotaged(p)? } else { WitnessGroup::new(p)? }))
        }
        "product" => {
            let (a, b) = split_top_level(arg).ok_or_else(|| usage(format!("`{s}` needs two comma-separated factors")))?;
            Ok(Group::product(parse_builtin(strip_parens(a))?, parse_builtin(strip_parens(b))?))
        }
        _ => Err(usage(format!("unknown group `{s}`"))),
    }
}

pub fn parse_group(s: &str) -> Result<GroupSpec> {
    if let Some(path) = s.strip_prefix("presentation:") {
        let path = PathBuf::from(path);
        let presentation = Presentation::parse(&read_text(&path)?)
            .map_err(|source| CliError::Presentation { path: path.clone(), source })?;
        return Ok(GroupSpec::Presented { path, presentation });
    }
    Ok(GroupSpec::Concrete(parse_builtin(s)?))
}

/// The built-in left ordering of a group, when it has one.
pub fn default_left_order(group: &Group) -> Result<LeftOrdering> {
    match group {
        Group::Integers => Ok(LeftOrdering::integers()),
        Group::FreeAbelian(k) => Ok(LeftOrdering::free_abelian_standard(*k)),
        Group::Cyclic(1) => Ok(LeftOrdering::trivial(group.clone())),
        _ => Err(usage(format!("{group} has no built-in left ordering"))),
    }
}

/// A parsed `--ordering` argument.
pub enum OrderingSpec {
    /// A circular ordering, with the carrier of its table when it has one.
    Circular { ordering: CircularOrdering, carrier: Option<Vec<Element>> },
    Left(LeftOrdering),
}

pub fn parse_ordering(s: &str, group: &Group) -> Result<OrderingSpec> {
    let circular = |ordering| Ok(OrderingSpec::Circular { ordering, carrier: None });
    let (kind, arg) = match s.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (s, None),
    };
    match (kind, arg) {
        ("natural", unit) => match group {
            Group::Cyclic(n) => circular(natural_circular_cyclic(*n, unit.map(|u| number(u, "unit")).transpose()?.unwrap_or(1))?),
            _ => Err(usage(format!("natural orderings are defined on cyclic groups, not {group}"))),
        },
        ("secret", None) => circular(secret_from_left(&default_left_order(group)?)),
        ("lex", None) => match group {
            Group::Product(a, b) if **a == Group::Promislow && **b == Group::Cyclic(2) => {
                circular(promislow::lex_ordering_g_times_z2()?)
            }
            Group::Product(a, b) => match &**b {
                Group::Cyclic(n) => circular(product_circular(&default_left_order(a)?, *n)?),
                _ => Err(usage(format!("lex needs a group of the form L x Z/n, not {group}"))),
            },
            _ => Err(usage(format!("lex needs a group of the form L x Z/n, not {group}"))),
        },
        ("enumerated", Some(i)) => {
            let i: usize = number(i, "ordering index")?;
            let all = obstruction::brute_force_circular_orders(group, DEFAULT_ENUMERATION_CAP)?;
            let t = all.get(i).ok_or_else(|| usage(format!("{group} has {} circular orderings; index {i} is out of range", all.len())))?;
            Ok(OrderingSpec::Circular { ordering: t.to_ordering(), carrier: Some(t.carrier().to_vec()) })
        }
        ("table", Some(path)) => {
            let t = json::table_from(group, &read_json(Path::new(path))?)?;
            Ok(OrderingSpec::Circular { ordering: t.to_ordering(), carrier: Some(t.carrier().to_vec()) })
        }
        ("left", None) => Ok(OrderingSpec::Left(default_left_order(group)?)),
        _ => Err(usage(format!("unknown ordering `{s}`"))),
    }
}

/// The carrier a certificate file asks to be verified on.
pub enum CarrierSpec {
    Radius(usize),
    Elements(Vec<Element>),
}

/// Reads a certificate document (see [`json::certificate`]).
pub fn certificate_from(v: &Value) -> Result<(UnobstructedCertificate, CarrierSpec)> {
    let group = parse_builtin(v["group"].as_str().ok_or_else(|| usage("certificate needs a `group` string"))?)?;
    let field_u64 = |v: &Value, name: &str| v[name].as_u64().ok_or_else(|| usage(format!("certificate needs a numeric `{name}`")));
    let n = field_u64(v, "n")?;
    let map = &v["map"];
    let modulus = field_u64(map, "modulus")?;
    if modulus == 0 {
        return Err(usage("`map.modulus` must be positive"));
    }
    let target = Group::cyclic(modulus)?;
    let images = json::elements_from(&target, &map["images"])?;
    let label = map["label"].as_str().unwrap_or("phi").to_string();
    let phi = Homomorphism::on_generators(label, group.clone(), target, images)?;
    let iota = field_u64(v, "iota")?;

    let ev = &v["evidence"];
    let evidence = match ev["kind"].as_str() {
        Some("trivial") => LeftOrderEvidence::Trivial,
        Some("cone") => match (ev["ordering"].as_str(), ev.get("positive")) {
            (_, Some(positive)) => {
                let carrier = json::elements_from(&group, ev.get("carrier").ok_or_else(|| usage("explicit cone needs a `carrier`"))?)?;
                let positive = json::elements_from(&group, positive)?;
                LeftOrderEvidence::Cone(LeftOrdering::from_cone_set(group.clone(), carrier, positive))
            }
            (Some("promislow-kernel") | Some("ker-phi-lex(eta, x, z)"), None) if group == Group::Promislow => {
                LeftOrderEvidence::Cone(promislow::kernel_order())
            }
            (Some(_), None) => LeftOrderEvidence::Cone(default_left_order(&group)?),
            (None, None) => return Err(usage("cone evidence needs `ordering` or `positive`")),
        },
        Some("poly-z") => LeftOrderEvidence::PolyZ {
            name: ev["name"].as_str().unwrap_or("poly-Z").to_string(),
            generators: json::elements_from(&group, &ev["generators"])?,
            relations: json::relations_from(&ev["relations"])?,
            generation_radius: field_u64(ev, "generation_radius")? as usize,
        },
        _ => return Err(usage("evidence `kind` must be trivial, cone or poly-z")),
    };
    let mut cert = UnobstructedCertificate::new(n, phi, iota, evidence);
    if let Some(hs) = v["hypotheses"].as_array() {
        for h in hs.iter().filter_map(Value::as_str) {
            if !cert.hypotheses.iter().any(|x| x == h) {
                cert.hypotheses.push(h.to_string());
            }
        }
    }
    let carrier = match (v["carrier"].get("radius"), v["carrier"].get("elements")) {
        (Some(r), _) => CarrierSpec::Radius(r.as_u64().ok_or_else(|| usage("`carrier.radius` must be a number"))? as usize),
        (None, Some(es)) => CarrierSpec::Elements(json::elements_from(&group, es)?),
        (None, None) => return Err(usage("certificate needs `carrier.radius` or `carrier.elements`")),
    };
    Ok((cert, carrier))
}

/// The standard ball of `group`, refusing more than `limit` elements.
pub fn standard_ball(group: &Group, radius: usize, limit: usize) -> Result<Vec<Element>> {
    Ok(group.ball(&group.standard_generators(), radius, limit.min(DEFAULT_BALL_LIMIT))?.elements().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups() {
        assert_eq!(parse_builtin("cyclic:5").unwrap(), Group::Cyclic(5));
        assert_eq!(parse_builtin("klein4").unwrap(), Group::klein4());
        let nested = parse_builtin("product:(product:cyclic:2,cyclic:3),integers").unwrap();
        assert_eq!(nested, Group::product(Group::product(Group::Cyclic(2), Group::Cyclic(3)), Group::Integers));
        assert_eq!(parse_builtin(&nested.to_string()).unwrap(), nested);
        assert!(parse_builtin("witness:4").is_err());
        assert!(parse_builtin("cyclic:0").is_err());
        assert!(parse_builtin("dihedral:4").is_err());
        assert!(matches!(parse_builtin("witness:3:sabotaged").unwrap(), Group::Witness(w) if w.is_sabotaged()));
    }

    #[test]
    fn orderings() {
        assert!(matches!(parse_ordering("natural:2", &Group::Cyclic(5)), Ok(OrderingSpec::Circular { .. })));
        assert!(parse_ordering("natural:2", &Group::Cyclic(4)).is_err());
        assert!(matches!(parse_ordering("left", &Group::Integers), Ok(OrderingSpec::Left(_))));
        assert!(parse_ordering("secret", &Group::Promislow).is_err());
        assert!(parse_ordering("lex", &Group::product(Group::Integers, Group::Cyclic(3))).is_ok());
        assert!(parse_ordering("enumerated:3", &Group::Cyclic(5)).is_ok());
        assert!(parse_ordering("enumerated:4", &Group::Cyclic(5)).is_err());
    }
}
