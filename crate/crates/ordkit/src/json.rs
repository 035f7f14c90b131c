//! JSON encodings. Every top-level document carries `"schema": 1`.
//!
//! Elements are encoded by canonical form: a number for `ℤ/n` and `ℤ`, an
//! array of integers for `ℤᵏ`, a two-element array for a pair, an object
//! `{"signs", "translation"}` for an affine map (translations as strings like
//! `"1/2"`), and `{"x", "y", "z"}` for the witness group (exponents of `x` as
//! rational strings). Decoding is directed by the group.

use num_rational::BigRational;
use ordkit_core::group::{AffineElement, Half};
use ordkit_core::obstruction::{
    LeftOrderEvidence, ObstructionReason, Relation, SpectrumReport, UnobstructedCertificate, UnobstructedReason,
};
use ordkit_core::secret::{DetectionVerdict, TraceStep};
use ordkit_core::witness::{WitnessElement, WitnessReport};
use ordkit_core::{CheckReport, CircularTable, Element, Group, Mode, Word};
use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};

pub const SCHEMA: u64 = 1;

fn bad(what: &str, v: &Value) -> CliError {
    CliError::Usage(format!("expected {what}, found {v}"))
}

pub fn element(g: &Element) -> Value {
    match g {
        Element::Residue(r) => json!(r),
        Element::Int(k) => json!(k),
        Element::Vector(v) => json!(v),
        Element::Pair(a, b) => json!([element(a), element(b)]),
        Element::Affine(m) => json!({
            "signs": m.signs,
            "translation": m.translation.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
        }),
        Element::Witness(w) => json!({
            "x": w.x.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "y": w.y,
            "z": w.z,
        }),
    }
}

pub fn elements(gs: &[Element]) -> Value {
    Value::Array(gs.iter().map(element).collect())
}

fn as_i64(v: &Value) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad("an integer", v))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what, v))
}

fn parse_half(v: &Value) -> Result<Half> {
    let s = v.as_str().ok_or_else(|| bad("a half-integer string", v))?;
    let parsed = match s.split_once('/') {
        Some((num, "2")) => num.trim().parse::<i64>().ok().map(Half),
        Some(_) => None,
        None => s.trim().parse::<i64>().ok().map(Half::from_int),
    };
    parsed.ok_or_else(|| bad("a half-integer string such as \"1/2\"", v))
}

/// Decodes an element of `group`, checking membership.
pub fn element_from(group: &Group, v: &Value) -> Result<Element> {
    let e = match group {
        Group::Cyclic(_) => Element::Residue(v.as_u64().ok_or_else(|| bad("a residue", v))?),
        Group::Integers => Element::Int(as_i64(v)?),
        Group::FreeAbelian(_) => {
            Element::Vector(as_array(v, "an integer vector")?.iter().map(as_i64).collect::<Result<_>>()?)
        }
        Group::Product(a, b) => match as_array(v, "a pair")?.as_slice() {
            [x, y] => Element::pair(element_from(a, x)?, element_from(b, y)?),
            _ => return Err(bad("a two-element array", v)),
        },
        Group::Promislow => {
            let signs = as_array(&v["signs"], "three signs")?;
            let translation = as_array(&v["translation"], "three translations")?;
            if signs.len() != 3 || translation.len() != 3 {
                return Err(bad("an affine map with three signs and three translations", v));
            }
            let mut s = [0i8; 3];
            let mut t = [Half::ZERO; 3];
            for i in 0..3 {
                s[i] = match as_i64(&signs[i])? {
                    1 => 1,
                    -1 => -1,
                    _ => return Err(bad("a sign of 1 or -1", &signs[i])),
                };
                t[i] = parse_half(&translation[i])?;
            }
            Element::Affine(AffineElement::new(s, t))
        }
        Group::Witness(_) => {
            let x = as_array(&v["x"], "x exponents")?
                .iter()
                .map(|a| {
                    a.as_str().and_then(|s| s.parse::<BigRational>().ok()).ok_or_else(|| bad("a rational string", a))
                })
                .collect::<Result<_>>()?;
            let y = as_array(&v["y"], "y coordinates")?.iter().map(as_i64).collect::<Result<_>>()?;
            let z = v["z"].as_u64().and_then(|z| u32::try_from(z).ok()).ok_or_else(|| bad("a z exponent", &v["z"]))?;
            Element::Witness(WitnessElement { x, y, z })
        }
    };
    if !group.contains(&e) {
        return Err(CliError::Usage(format!("{v} is not an element of {group}")));
    }
    Ok(e)
}

pub fn elements_from(group: &Group, v: &Value) -> Result<Vec<Element>> {
    as_array(v, "a list of elements")?.iter().map(|x| element_from(group, x)).collect()
}

pub fn word(w: &Word) -> Value {
    Value::Array(w.syllables().iter().map(|&(g, e)| json!([g, e])).collect())
}

pub fn word_from(v: &Value) -> Result<Word> {
    let mut syllables = Vec::new();
    for s in as_array(v, "a word as [generator, exponent] pairs")? {
        match as_array(s, "a [generator, exponent] pair")?.as_slice() {
            [g, e] => {
                let g = g.as_u64().ok_or_else(|| bad("a generator index", g))? as usize;
                syllables.push((g, as_i64(e)?));
            }
            _ => return Err(bad("a [generator, exponent] pair", s)),
        }
    }
    Ok(Word::from_syllables(syllables))
}

pub fn report(r: &CheckReport) -> Value {
    let mode = match r.mode {
        Mode::Exhaustive => json!("exhaustive"),
        Mode::Sampled { samples, seed } => json!({"sampled": {"samples": samples, "seed": seed}}),
    };
    json!({
        "check": r.check,
        "status": r.status.as_str(),
        "violated": r.violated,
        "counterexample": elements(&r.counterexample),
        "checked_tuples": r.checked_tuples,
        "mode": mode,
        "notes": r.notes,
    })
}

pub fn reports(rs: &[CheckReport]) -> Value {
    Value::Array(rs.iter().map(report).collect())
}

pub fn table(t: &CircularTable) -> Value {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("group".into(), json!(t.group().to_string()));
    doc.insert("carrier".into(), elements(t.carrier()));
    if let Some(a) = t.arrangement() {
        doc.insert("arrangement".into(), elements(a));
    }
    let entries: Vec<Value> = t
        .entries()
        .into_iter()
        .map(|(a, b, c, v)| json!([element(&a), element(&b), element(&c), v]))
        .collect();
    doc.insert("entries".into(), Value::Array(entries));
    Value::Object(doc)
}

/// Reads a table document for `group`. An `arrangement` alone suffices;
/// otherwise `carrier` and `entries` over its distinct triples are required.
pub fn table_from(group: &Group, v: &Value) -> Result<CircularTable> {
    if let Some(declared) = v.get("group").and_then(Value::as_str) {
        if declared != group.to_string() {
            return Err(CliError::Usage(format!("table is for {declared}, not {group}")));
        }
    }
    if let Some(a) = v.get("arrangement") {
        return Ok(CircularTable::from_arrangement(group.clone(), elements_from(group, a)?)?);
    }
    let carrier = elements_from(group, v.get("carrier").ok_or_else(|| bad("a `carrier` field", v))?)?;
    let mut entries = Vec::new();
    for e in as_array(v.get("entries").ok_or_else(|| bad("an `entries` field", v))?, "table entries")? {
        match as_array(e, "an entry [g1, g2, g3, value]")?.as_slice() {
            [a, b, c, val] => {
                let val = as_i64(val)?;
                if !(-1..=1).contains(&val) {
                    return Err(bad("a value in {-1, 0, 1}", e));
                }
                entries.push((element_from(group, a)?, element_from(group, b)?, element_from(group, c)?, val as i8));
            }
            _ => return Err(bad("an entry [g1, g2, g3, value]", e)),
        }
    }
    Ok(CircularTable::from_entries(group.clone(), carrier, &entries)?)
}

fn obstruction_reason(r: &ObstructionReason) -> Value {
    let mut v = match r {
        ObstructionReason::NotCyclic { product_order, max_element_order } => {
            json!({"product_order": product_order, "max_element_order": max_element_order})
        }
        ObstructionReason::Exponent { e, factors } => json!({"exponent": e, "invariant_factors": factors}),
        ObstructionReason::Divisibility { divisor } => json!({"divisor": divisor}),
        ObstructionReason::FreeFactor { factor } => json!({"factor": factor}),
        ObstructionReason::Torsion { witness, order } => json!({"witness": element(witness), "order": order}),
    };
    v["kind"] = json!(r.kind());
    v
}

fn unobstructed_reason(r: &UnobstructedReason) -> Value {
    let mut v = match r {
        UnobstructedReason::Cyclic { generator, order } => json!({"generator": element(generator), "order": order}),
        UnobstructedReason::Certificate { summary, report: check } => json!({
            "map": summary.map,
            "modulus": summary.modulus,
            "iota": summary.iota,
            "evidence": summary.evidence,
            "hypotheses": summary.hypotheses,
            "verification": report(check),
        }),
        UnobstructedReason::FreeProductComplement => json!({}),
    };
    v["kind"] = json!(r.kind());
    v
}

pub fn spectrum(s: &SpectrumReport) -> Value {
    json!({
        "schema": SCHEMA,
        "group": s.group,
        "cap": s.cap,
        "obstructed": s.obstructed.iter().map(|(n, r)| json!({"n": n, "certificate": obstruction_reason(r)})).collect::<Vec<_>>(),
        "unobstructed": s.unobstructed.iter().map(|(n, r)| json!({"n": n, "certificate": unobstructed_reason(r)})).collect::<Vec<_>>(),
        "undetermined": s.undetermined,
        "hypotheses": s.hypotheses,
        "obstructed_set": s.obstructed.keys().collect::<Vec<_>>(),
    })
}

fn trace_step(s: &TraceStep) -> Value {
    match s {
        TraceStep::Seed { element: g } => json!({"step": "seed", "element": element(g), "value": 0}),
        TraceStep::Assume { element: g, value } => json!({"step": "assume", "element": element(g), "value": value}),
        TraceStep::Derive { element: g, value, from } => json!({
            "step": "derive", "element": element(g), "value": value, "from": from.to_string(),
        }),
        TraceStep::Contradiction { constraint, detail } => json!({
            "step": "contradiction", "constraint": constraint.to_string(), "detail": detail,
        }),
    }
}

pub fn verdict(v: &DetectionVerdict) -> Value {
    match v {
        DetectionVerdict::SecretWitness(sol) => json!({
            "verdict": v.name(),
            "cone": elements(&sol.cone()),
            "d": sol.values().map(|(g, d)| json!([element(g), d])).collect::<Vec<_>>(),
        }),
        DetectionVerdict::NotSecretOnCarrier(trace) => json!({
            "verdict": v.name(),
            "branches_tried": trace.branches_tried,
            "trace": trace.steps.iter().map(trace_step).collect::<Vec<_>>(),
        }),
        DetectionVerdict::Inconclusive { reason, branches_tried } => json!({
            "verdict": v.name(),
            "reason": reason,
            "branches_tried": branches_tried,
        }),
    }
}

pub fn witness_report(r: &WitnessReport) -> Value {
    json!({
        "p": r.p,
        "budget": r.budget,
        "seed": r.seed,
        "passed": r.passed(),
        "checks": reports(&r.checks),
        "recorded_facts": r.recorded_facts,
    })
}

/// A certificate document. Cone evidence is written by name (`"default"` for
/// the group's built-in left ordering, `"promislow-kernel"`) or as an explicit
/// positive set over a carrier.
pub fn certificate(cert: &UnobstructedCertificate, carrier_radius: usize) -> Result<Value> {
    let images = cert
        .phi
        .generator_images()
        .ok_or_else(|| CliError::Usage("only maps given by generator images can be written".into()))?;
    let evidence = match &cert.evidence {
        LeftOrderEvidence::Trivial => json!({"kind": "trivial"}),
        LeftOrderEvidence::Cone(lo) => json!({"kind": "cone", "ordering": lo.label()}),
        LeftOrderEvidence::PolyZ { name, generators, relations, generation_radius } => json!({
            "kind": "poly-z",
            "name": name,
            "generators": elements(generators),
            "relations": relations.iter().map(|r| json!({"lhs": word(&r.lhs), "rhs": word(&r.rhs)})).collect::<Vec<_>>(),
            "generation_radius": generation_radius,
        }),
    };
    Ok(json!({
        "schema": SCHEMA,
        "group": cert.group().to_string(),
        "n": cert.n,
        "map": {"label": cert.phi.label(), "modulus": cert.modulus()?, "images": elements(images)},
        "iota": cert.iota,
        "evidence": evidence,
        "carrier": {"radius": carrier_radius},
        "hypotheses": cert.hypotheses,
    }))
}

pub fn relations_from(v: &Value) -> Result<Vec<Relation>> {
    as_array(v, "a list of relations")?
        .iter()
        .map(|r| Ok(Relation::new(word_from(&r["lhs"])?, word_from(&r["rhs"])?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ordkit_core::group::promislow;
    use ordkit_core::witness::WitnessGroup;

    #[test]
    fn element_round_trips() {
        let w = WitnessGroup::new(3).unwrap();
        let cases = [
            (Group::Cyclic(7), Element::Residue(3)),
            (Group::Integers, Element::Int(-4)),
            (Group::FreeAbelian(2), Element::Vector(vec![1, -2])),
            (Group::klein4(), Element::pair(Element::Residue(1), Element::Residue(0))),
            (Group::Promislow, promislow::generator_b()),
            (Group::Witness(w.clone()), Element::Witness(w.x(1))),
        ];
        for (g, e) in cases {
            let v = element(&e);
            assert_eq!(element_from(&g, &v).unwrap(), e, "{v}");
        }
    }

    #[test]
    fn rejects_non_members() {
        assert!(element_from(&Group::Cyclic(3), &json!(3)).is_err());
        assert!(element_from(&Group::Promislow, &json!({"signs": [1, 1, 1], "translation": ["1/2", "0", "0"]})).is_err());
        assert!(element_from(&Group::FreeAbelian(2), &json!([1])).is_err());
    }

    #[test]
    fn table_round_trip() {
        let t = CircularTable::from_arrangement(Group::Cyclic(3), vec![Element::Residue(0), Element::Residue(2), Element::Residue(1)])
            .unwrap();
        let v = table(&t);
        assert_eq!(table_from(&Group::Cyclic(3), &v).unwrap(), t);
        let mut no_arrangement = v.clone();
        no_arrangement.as_object_mut().unwrap().remove("arrangement");
        let back = table_from(&Group::Cyclic(3), &no_arrangement).unwrap();
        assert_eq!(back.entries(), t.entries());
        assert!(table_from(&Group::Cyclic(4), &v).is_err());
    }

    #[test]
    fn words() {
        let w = Word::from_syllables([(0, 2), (1, -1)]);
        assert_eq!(word_from(&word(&w)).unwrap(), w);
    }
}
