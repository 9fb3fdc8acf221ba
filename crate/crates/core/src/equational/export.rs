use std::collections::BTreeSet;
use std::fmt::Write;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::search::IsoClass;
use super::syn::{SynCategory, SynMorphism};
use super::{homomorphisms, is_homomorphism, AlgebraicTheory, FiniteAlgebra, Homomorphism};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::syntax::parse_term;

fn bad<T>(what: &str) -> Result<T> {
    Err(Error::InvalidStructure(format!("json: {what}")))
}

impl FiniteAlgebra {
    /// `{"size": n, "tables": {op: [..]}}`, operations in declaration order.
    pub fn to_json(&self) -> Value {
        let mut tables = Map::new();
        for (op, t) in self.operations.iter().zip(&self.tables) {
            tables.insert(op.name.clone(), Value::from(t.clone()));
        }
        json!({ "size": self.size, "tables": tables })
    }

    /// Reads [`FiniteAlgebra::to_json`] output over `theory`'s operations.
    pub fn from_json(theory: &AlgebraicTheory, value: &Value) -> Result<FiniteAlgebra> {
        let Some(size) = value.get("size").and_then(Value::as_u64) else {
            return bad("model without size");
        };
        let Some(tables) = value.get("tables").and_then(Value::as_object) else {
            return bad("model without tables");
        };
        if tables.len() != theory.operations().len() {
            return bad("model has the wrong operations");
        }
        let mut out = Vec::new();
        for op in theory.operations() {
            let Some(t) = tables.get(&op.name).and_then(Value::as_array) else {
                return bad(&format!("no table for `{}`", op.name));
            };
            let row: Option<Vec<usize>> = t.iter().map(|v| v.as_u64().map(|x| x as usize)).collect();
            let Some(row) = row else {
                return bad("table entries must be naturals");
            };
            out.push(row);
        }
        FiniteAlgebra::new(theory.operations(), size as usize, out)
    }
}

/// Labeled models, or classes when `classes` is given.
pub fn models_to_json(
    theory: &AlgebraicTheory,
    size: usize,
    models: &[FiniteAlgebra],
    classes: Option<&[IsoClass]>,
) -> Value {
    let mut out = json!({
        "theory": theory.name(),
        "size": size,
        "labeled": models.len(),
    });
    let obj = out.as_object_mut().expect("object literal");
    match classes {
        None => {
            obj.insert(
                "models".into(),
                Value::from(models.iter().map(FiniteAlgebra::to_json).collect::<Vec<_>>()),
            );
        }
        Some(cs) => {
            let list: Vec<Value> = cs
                .iter()
                .map(|c| json!({ "representative": c.representative.to_json(), "labeled": c.labeled_count }))
                .collect();
            obj.insert("classes".into(), Value::from(list));
        }
    }
    out
}

/// Re-reads a model export and checks every model satisfies the axioms and
/// the counts add up. Returns the models or representatives.
pub fn validate_models_json(
    theory: &AlgebraicTheory,
    value: &Value,
    limits: &Limits,
) -> Result<Vec<FiniteAlgebra>> {
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
    if let Some(models) = value.get("models").and_then(Value::as_array) {
        for m in models {
            out.push(FiniteAlgebra::from_json(theory, m)?);
            total += 1;
        }
    } else if let Some(classes) = value.get("classes").and_then(Value::as_array) {
        for c in classes {
            let Some(n) = c.get("labeled").and_then(Value::as_u64) else {
                return bad("class without labeled count");
            };
            out.push(FiniteAlgebra::from_json(theory, c.get("representative").unwrap_or(&Value::Null))?);
            total += n;
        }
    } else {
        return bad("neither models nor classes");
    }
    if total != labeled {
        return bad("labeled count does not add up");
    }
    for m in &out {
        if m.size() as u64 != size || !m.is_model(theory, limits)? {
            return bad("entry is not a model of the stated size");
        }
    }
    if out.iter().collect::<BTreeSet<_>>().len() != out.len() {
        return bad("repeated model");
    }
    Ok(out)
}

pub fn homomorphisms_to_json(
    source: &FiniteAlgebra,
    target: &FiniteAlgebra,
    homs: &[Homomorphism],
) -> Value {
    json!({
        "source": source.to_json(),
        "target": target.to_json(),
        "maps": homs.iter().map(|h| h.map().to_vec()).collect::<Vec<_>>(),
    })
}

/// Checks every listed map is a homomorphism and none is repeated.
pub fn validate_homomorphisms_json(
    theory: &AlgebraicTheory,
    value: &Value,
) -> Result<Vec<Homomorphism>> {
    let source = Arc::new(FiniteAlgebra::from_json(theory, value.get("source").unwrap_or(&Value::Null))?);
    let target = Arc::new(FiniteAlgebra::from_json(theory, value.get("target").unwrap_or(&Value::Null))?);
    let Some(maps) = value.get("maps").and_then(Value::as_array) else {
        return bad("missing maps");
    };
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for m in maps {
        let map: Option<Vec<usize>> = m
            .as_array()
            .and_then(|a| a.iter().map(|v| v.as_u64().map(|x| x as usize)).collect());
        let Some(map) = map else {
            return bad("maps must be arrays of naturals");
        };
        if !is_homomorphism(&source, &target, &map) || !seen.insert(map.clone()) {
            return bad("entry is not a distinct homomorphism");
        }
        out.push(Homomorphism::new(source.clone(), target.clone(), map)?);
    }
    Ok(out)
}

pub fn syn_hom_to_json(syn: &SynCategory, source: usize, target: usize, homs: &[SynMorphism]) -> Value {
    json!({
        "theory": syn.theory().name(),
        "backend": syn.backend().name(),
        "depth": syn.options().depth,
        "source": source,
        "target": target,
        "morphisms": homs
            .iter()
            .map(|f| f.terms().iter().map(|t| t.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

/// Checks each morphism is a `target`-tuple of terms in `x1, .., x<source>`
/// and morphisms are distinct.
pub fn validate_syn_json(theory: &AlgebraicTheory, value: &Value) -> Result<()> {
    let (Some(n), Some(m)) = (
        value.get("source").and_then(Value::as_u64),
        value.get("target").and_then(Value::as_u64),
    ) else {
        return bad("missing arities");
    };
    if !matches!(value.get("backend").and_then(Value::as_str), Some("rewrite" | "modeleval")) {
        return bad("unknown backend");
    }
    let Some(list) = value.get("morphisms").and_then(Value::as_array) else {
        return bad("missing morphisms");
    };
    let ctx = theory.context(n as usize);
    let mut seen = BTreeSet::new();
    for f in list {
        let Some(terms) = f.as_array().filter(|a| a.len() as u64 == m) else {
            return bad("morphism of the wrong length");
        };
        for t in terms {
            let Some(text) = t.as_str() else {
                return bad("terms must be strings");
            };
            let term = parse_term(theory.theory().signature(), text, &ctx)
                .map_err(|e| Error::InvalidStructure(format!("json: term `{text}`: {e}")))?;
            theory.compile(&term, &ctx)?;
        }
        if !seen.insert(f.to_string()) {
            return bad("repeated morphism");
        }
    }
    Ok(())
}

/// Objects are the given models, one edge per ordered pair with at least
/// one homomorphism, labelled with the count.
pub fn category_dot(theory: &AlgebraicTheory, objects: &[FiniteAlgebra], limits: &Limits) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", theory.name()).unwrap();
    for (i, m) in objects.iter().enumerate() {
        writeln!(out, "  M{i} [label=\"M{i}\\n|M| = {}\"];", m.size()).unwrap();
    }
    for (i, a) in objects.iter().enumerate() {
        for (j, b) in objects.iter().enumerate() {
            let count = homomorphisms(a, b, limits)?.len();
            if count > 0 {
                writeln!(out, "  M{i} -> M{j} [label=\"{count}\"];").unwrap();
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
