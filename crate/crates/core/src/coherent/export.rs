use std::collections::BTreeSet;
use std::fmt::Write;

use serde_json::{json, Map, Value};

use super::{basic_open, isomorphisms, BasisOpen, FiniteStructure, ModelGroupoid};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::syntax::{parse_sentence, Theory};

fn bad<T>(what: &str) -> Result<T> {
    Err(Error::InvalidStructure(format!("json: {what}")))
}

fn naturals(v: &Value) -> Option<Vec<usize>> {
    v.as_array()?.iter().map(|x| x.as_u64().map(|x| x as usize)).collect()
}

fn sizes_label(sizes: &[usize]) -> String {
    let parts: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
    format!("({})", parts.join(", "))
}

impl FiniteStructure {
    /// `{"sizes", "functions": {f: [..]}, "relations": {P: [0/1..]},
    /// "propositions": {p: bool}}`, symbols in declaration order.
    pub fn to_json(&self) -> Value {
        let sig = self.signature();
        let mut functions = Map::new();
        for (f, t) in sig.functions().iter().zip(&self.functions) {
            functions.insert(f.name.clone(), Value::from(t.clone()));
        }
        let mut relations = Map::new();
        for (p, r) in sig.predicates().iter().zip(&self.relations) {
            relations.insert(p.name.clone(), Value::from(r.iter().map(|&b| b as u8).collect::<Vec<_>>()));
        }
        let mut props = Map::new();
        for (p, &b) in sig.propositions().iter().zip(&self.propositions) {
            props.insert(p.clone(), Value::from(b));
        }
        json!({
            "sizes": self.sizes,
            "functions": functions,
            "relations": relations,
            "propositions": props,
        })
    }

    pub fn from_json(theory: &Theory, value: &Value) -> Result<FiniteStructure> {
        let sig = theory.signature();
        let Some(sizes) = value.get("sizes").and_then(naturals) else {
            return bad("structure without sizes");
        };
        let section = |key: &str, expected: usize| -> Result<&Map<String, Value>> {
            match value.get(key).and_then(Value::as_object) {
                Some(m) if m.len() == expected => Ok(m),
                _ => bad(&format!("`{key}` does not match the signature")),
            }
        };
        let fs = section("functions", sig.functions().len())?;
        let mut functions = Vec::new();
        for f in sig.functions() {
            let Some(t) = fs.get(&f.name).and_then(naturals) else {
                return bad(&format!("no table for `{}`", f.name));
            };
            functions.push(t);
        }
        let rs = section("relations", sig.predicates().len())?;
        let mut relations = Vec::new();
        for p in sig.predicates() {
            let Some(r) = rs.get(&p.name).and_then(naturals).filter(|r| r.iter().all(|&b| b < 2)) else {
                return bad(&format!("no 0/1 relation for `{}`", p.name));
            };
            relations.push(r.into_iter().map(|b| b == 1).collect());
        }
        let ps = section("propositions", sig.propositions().len())?;
        let mut propositions = Vec::new();
        for p in sig.propositions() {
            let Some(b) = ps.get(p).and_then(Value::as_bool) else {
                return bad(&format!("no truth value for `{p}`"));
            };
            propositions.push(b);
        }
        FiniteStructure::new(sig, sizes, functions, relations, propositions)
    }
}

impl ModelGroupoid {
    /// Objects labelled with carrier sizes and automorphism counts; one
    /// edge per nonempty hom-set, labelled with its size.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph \"{}\" {{", self.theory().name()).unwrap();
        for (i, m) in self.objects().iter().enumerate() {
            writeln!(
                out,
                "  O{i} [label=\"O{i}\\n{}\\n|Aut| = {}\"];",
                sizes_label(m.sizes()),
                self.hom(i, i).len()
            )
            .unwrap();
        }
        for ((i, j), fs) in self.hom_sets() {
            writeln!(out, "  O{i} -> O{j} [label=\"{}\"];", fs.len()).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Objects, automorphism counts, classes and hom-set sizes.
pub fn groupoid_to_json(g: &ModelGroupoid) -> Value {
    json!({
        "theory": g.theory().name(),
        "objects": g.objects().iter().map(FiniteStructure::to_json).collect::<Vec<_>>(),
        "automorphisms": g.automorphism_counts(),
        "classes": g.iso_classes(),
        "homs": g
            .hom_sets()
            .map(|((i, j), fs)| json!({ "source": i, "target": j, "count": fs.len() }))
            .collect::<Vec<_>>(),
    })
}

/// Re-reads a groupoid export: objects must be distinct models in order,
/// and every stated count must match a fresh isomorphism search.
pub fn validate_groupoid_json(theory: &Theory, value: &Value, limits: &Limits) -> Result<()> {
    if value.get("theory").and_then(Value::as_str) != Some(theory.name()) {
        return bad("theory name differs");
    }
    let Some(list) = value.get("objects").and_then(Value::as_array) else {
        return bad("missing objects");
    };
    let objects: Vec<FiniteStructure> = list
        .iter()
        .map(|v| FiniteStructure::from_json(theory, v))
        .collect::<Result<_>>()?;
    if !objects.windows(2).all(|w| w[0] < w[1]) {
        return bad("objects are not distinct and in canonical order");
    }
    for m in &objects {
        if !m.is_model(theory, limits)? {
            return bad("object is not a model");
        }
    }
    let Some(auts) = value.get("automorphisms").and_then(naturals) else {
        return bad("missing automorphism counts");
    };
    if auts.len() != objects.len() {
        return bad("one automorphism count per object expected");
    }
    let Some(homs) = value.get("homs").and_then(Value::as_array) else {
        return bad("missing homs");
    };
    let mut stated = BTreeSet::new();
    for h in homs {
        let field = |k: &str| h.get(k).and_then(Value::as_u64).map(|x| x as usize);
        let (Some(i), Some(j), Some(c)) = (field("source"), field("target"), field("count")) else {
            return bad("hom entry needs source, target and count");
        };
        if i >= objects.len() || j >= objects.len() || !stated.insert((i, j)) {
            return bad("hom entry out of range or repeated");
        }
        if isomorphisms(&objects[i], &objects[j], limits)?.len() != c || c == 0 {
            return bad("hom count does not match");
        }
        if i == j && auts[i] != c {
            return bad("automorphism count does not match");
        }
    }
    for i in 0..objects.len() {
        for j in 0..objects.len() {
            if !stated.contains(&(i, j))
                && objects[i].sizes() == objects[j].sizes()
                && !isomorphisms(&objects[i], &objects[j], limits)?.is_empty()
            {
                return bad("a nonempty hom-set is missing");
            }
        }
    }
    Ok(())
}

/// Labeled structures of one size, or their classes (each listed by member
/// positions, represented by its first member) when `classes` is given.
pub fn structures_to_json(
    theory: &Theory,
    size: usize,
    models: &[FiniteStructure],
    classes: Option<&[Vec<usize>]>,
) -> Value {
    let mut out = json!({ "theory": theory.name(), "size": size, "labeled": models.len() });
    let obj = out.as_object_mut().expect("object literal");
    match classes {
        None => {
            obj.insert(
                "models".into(),
                Value::from(models.iter().map(FiniteStructure::to_json).collect::<Vec<_>>()),
            );
        }
        Some(cs) => {
            let list: Vec<Value> = cs
                .iter()
                .map(|c| json!({ "representative": models[c[0]].to_json(), "labeled": c.len() }))
                .collect();
            obj.insert("classes".into(), Value::from(list));
        }
    }
    out
}

/// Checks a [`structures_to_json`] export: entries are distinct models of
/// the stated size, class representatives pairwise non-isomorphic, and the
/// labeled counts add up.
pub fn validate_structures_json(theory: &Theory, value: &Value, limits: &Limits) -> Result<Vec<FiniteStructure>> {
    if value.get("theory").and_then(Value::as_str) != Some(theory.name()) {
        return bad("theory name differs");
    }
    let (Some(size), Some(labeled)) = (
        value.get("size").and_then(Value::as_u64),
        value.get("labeled").and_then(Value::as_u64),
    ) else {
        return bad("missing size or labeled count");
    };
    let mut out = Vec::new();
    let mut total = 0u64;
    let classes = value.get("classes").and_then(Value::as_array);
    if let Some(models) = value.get("models").and_then(Value::as_array) {
        for m in models {
            out.push(FiniteStructure::from_json(theory, m)?);
            total += 1;
        }
    } else if let Some(classes) = classes {
        for c in classes {
            let Some(n) = c.get("labeled").and_then(Value::as_u64) else {
                return bad("class without labeled count");
            };
            out.push(FiniteStructure::from_json(theory, c.get("representative").unwrap_or(&Value::Null))?);
            total += n;
        }
    } else {
        return bad("neither models nor classes");
    }
    if total != labeled {
        return bad("labeled count does not add up");
    }
    for m in &out {
        if m.sizes().iter().any(|&k| k as u64 != size) || !m.is_model(theory, limits)? {
            return bad("entry is not a model of the stated size");
        }
    }
    if !out.windows(2).all(|w| w[0] < w[1]) {
        return bad("entries are not distinct and in canonical order");
    }
    if classes.is_some() {
        for (i, a) in out.iter().enumerate() {
            for b in &out[i + 1..] {
                if !isomorphisms(a, b, limits)?.is_empty() {
                    return bad("two class representatives are isomorphic");
                }
            }
        }
    }
    Ok(out)
}

/// `{sentence text: [object indices]}`.
pub fn basis_to_json(opens: &[BasisOpen]) -> Value {
    let mut out = Map::new();
    for o in opens {
        out.insert(o.sentence.to_string(), Value::from(o.members.clone()));
    }
    Value::Object(out)
}

/// Re-parses every sentence and checks its member list against the groupoid.
pub fn validate_basis_json(g: &ModelGroupoid, value: &Value, limits: &Limits) -> Result<Vec<BasisOpen>> {
    let Some(map) = value.as_object() else {
        return bad("basis must be an object");
    };
    let mut out = Vec::new();
    for (text, members) in map {
        let phi = parse_sentence(g.theory().signature(), text)
            .map_err(|e| Error::InvalidStructure(format!("json: sentence `{text}`: {e}")))?;
        let open = basic_open(g, &phi, limits)?;
        if naturals(members).as_ref() != Some(&open.members) {
            return bad(&format!("members of `{text}` differ"));
        }
        out.push(open);
    }
    Ok(out)
}
