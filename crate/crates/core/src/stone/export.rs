use serde_json::{json, Map, Value};

use super::StoneSpace;
use crate::error::{Error, Result};
use crate::limits::Limits;

impl StoneSpace {
    /// `{"points": [name], "basis": {element: [point index]}}`, elements in
    /// canonical order.
    pub fn to_json(&self, limits: &Limits) -> Result<Value> {
        let mut basis = Map::new();
        for (b, d) in self.basis(limits)? {
            basis.insert(
                self.algebra.element_name(&b),
                Value::from(d.atoms().collect::<Vec<_>>()),
            );
        }
        Ok(json!({ "points": self.point_names(), "basis": basis }))
    }

    /// Points with their smallest basic open as label. The specialization
    /// order of a finite Stone space is discrete, so only identities appear.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph stone {\n  node [shape=circle];\n");
        for i in 0..self.point_count() {
            let atom = self.algebra.atom(self.points[i].atom());
            out.push_str(&format!(
                "  p{i} [label=\"{}\\nD({})\"];\n  p{i} -> p{i} [label=\"id\"];\n",
                self.point_name(i),
                self.algebra.element_name(&atom)
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Checks a Stone space export: distinct point names, and a basis listing
/// every subset of the points exactly once with valid, increasing indices.
pub fn validate_stone_json(value: &Value) -> Result<()> {
    let bad = |m: &str| Err(Error::InvalidStructure(format!("stone json: {m}")));
    let Some(points) = value.get("points").and_then(Value::as_array) else {
        return bad("missing points");
    };
    let mut names = std::collections::BTreeSet::new();
    for p in points {
        match p.as_str() {
            Some(n) if names.insert(n) => {}
            _ => return bad("point names must be distinct strings"),
        }
    }
    let Some(basis) = value.get("basis").and_then(Value::as_object) else {
        return bad("missing basis");
    };
    let n = points.len();
    if n >= 64 || basis.len() as u64 != 1 << n {
        return bad("basis must list every subset of the points");
    }
    let mut seen = std::collections::BTreeSet::new();
    for set in basis.values() {
        let Some(idx) = set.as_array() else {
            return bad("basis entries must be arrays");
        };
        let mut mask = 0u64;
        let mut last = None;
        for i in idx {
            let Some(i) = i.as_u64().filter(|&i| (i as usize) < n) else {
                return bad("point index out of range");
            };
            if last.is_some_and(|l| l >= i) {
                return bad("point indices must increase");
            }
            last = Some(i);
            mask |= 1 << i;
        }
        if !seen.insert(mask) {
            return bad("repeated basic open");
        }
    }
    Ok(())
}
