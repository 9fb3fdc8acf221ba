use std::fmt::Write;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use catlogic::coherent::{self, FiniteStructure, SizeBounds};
use catlogic::equational::{self as eq, AlgebraicTheory, FiniteAlgebra, SynCategory, SynOptions};
use catlogic::propositional::lindenbaum_tarski;
use catlogic::stone::{stone_roundtrip, stone_space};
use catlogic::syntax::{parse_theory, Fragment, Theory};
use catlogic::Limits;

use crate::{Command, Failure, Format};

type Outcome = Result<String, Failure>;

pub fn run(command: &Command, format: Format, limits: &Limits) -> Outcome {
    match command {
        Command::Check { file } => check(&load(file)?, format),
        Command::Lt { file } => lt(&load(file)?, format, limits),
        Command::Stone { file, roundtrip } => stone(&load(file)?, *roundtrip, format, limits),
        Command::Models { file, size, upto_iso } => {
            models(&load(file)?, *size as usize, *upto_iso, format, limits)
        }
        Command::Groupoid { file, min, max, dot } => {
            let g = coherent::groupoid(
                &load(file)?,
                SizeBounds::new(*min as usize, *max as usize)?,
                limits,
            )?;
            if let Some(path) = dot {
                fs::write(path, g.to_dot()).map_err(|e| Failure::User(format!("{}: {e}", path.display())))?;
            }
            groupoid(&g, format)
        }
        Command::Syn {
            file,
            arity,
            depth,
            backend,
            model_size,
        } => {
            let (n, m) = (arity[0], arity[1]);
            let alg = AlgebraicTheory::new(load(file)?)?;
            let mut options = SynOptions::new((*backend).into(), *depth, n.max(m));
            options.model_size = *model_size;
            let syn = SynCategory::new(&alg, options, limits)?;
            syn_report(&syn, n, m, format)
        }
    }
}

fn load(path: &Path) -> Result<Theory, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::User(format!("{}: {e}", path.display())))?;
    parse_theory(&text).map_err(|e| Failure::User(format!("{}:{e}", path.display())))
}

fn plural(n: usize, one: &str, many: &str) -> String {
    if n == 1 {
        format!("{n} {one}")
    } else {
        format!("{n} {many}")
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn unsupported(what: &str) -> Failure {
    Failure::User(format!("{what} has no DOT output"))
}

fn check(t: &Theory, format: Format) -> Outcome {
    let sig = t.signature();
    match format {
        Format::Json => Ok(json_text(&json!({
            "theory": t.name(),
            "sorts": sig.sorts().len(),
            "operations": sig.functions().len(),
            "predicates": sig.predicates().len(),
            "propositions": sig.propositions().len(),
            "axioms": t.axioms().len(),
            "fragment": t.fragment().name(),
        }))),
        Format::Dot => Err(unsupported("check")),
        Format::Text => {
            let mut parts = vec![
                plural(sig.sorts().len(), "sort", "sorts"),
                plural(sig.functions().len(), "op", "ops"),
            ];
            if !sig.predicates().is_empty() {
                parts.push(plural(sig.predicates().len(), "pred", "preds"));
            }
            if !sig.propositions().is_empty() {
                parts.push(plural(sig.propositions().len(), "prop", "props"));
            }
            parts.push(plural(t.axioms().len(), "axiom", "axioms"));
            Ok(format!(
                "{}: {}, fragment {}\n",
                t.name(),
                parts.join(", "),
                t.fragment().name()
            ))
        }
    }
}

fn lt(t: &Theory, format: Format, limits: &Limits) -> Outcome {
    let lt = lindenbaum_tarski(t, limits)?;
    match format {
        Format::Json => {
            let mut v = lt.to_json();
            v.as_object_mut()
                .expect("object")
                .insert("theory".into(), Value::from(t.name()));
            Ok(json_text(&v))
        }
        Format::Dot => Ok(lt.to_dot(limits)?),
        Format::Text => {
            let alg = lt.algebra();
            let mut out = String::new();
            if alg.is_degenerate() {
                out.push_str("degenerate (1 element)\n");
            } else {
                writeln!(
                    out,
                    "{} elements, {}",
                    lt.element_count(),
                    plural(alg.atom_count(), "atom", "atoms")
                )
                .unwrap();
                writeln!(out, "atoms: {}", alg.atom_labels().join(" ")).unwrap();
            }
            for (p, e) in lt.generators() {
                writeln!(out, "[{p}] = {}", alg.element_name(e)).unwrap();
            }
            Ok(out)
        }
    }
}

fn stone(t: &Theory, roundtrip: bool, format: Format, limits: &Limits) -> Outcome {
    let lt = lindenbaum_tarski(t, limits)?;
    let space = stone_space(lt.algebra())?;
    let witness = if roundtrip {
        Some(stone_roundtrip(lt.algebra(), limits)?.table(limits)?.len())
    } else {
        None
    };
    match format {
        Format::Json => {
            let mut v = space.to_json(limits)?;
            if let Some(n) = witness {
                v.as_object_mut()
                    .expect("object")
                    .insert("roundtrip".into(), json!({ "isomorphism": true, "elements": n }));
            }
            Ok(json_text(&v))
        }
        Format::Dot => Ok(space.to_dot()),
        Format::Text => {
            let names = space.point_names();
            let mut out = String::new();
            writeln!(
                out,
                "{}: {}",
                plural(space.point_count(), "point", "points"),
                names.join(" ")
            )
            .unwrap();
            out.push_str("basis:\n");
            for (b, d) in space.basis(limits)? {
                let pts: Vec<&str> = d.atoms().map(|i| names[i].as_str()).collect();
                writeln!(out, "  D({}) = {{{}}}", lt.algebra().element_name(&b), pts.join(",")).unwrap();
            }
            if let Some(n) = witness {
                writeln!(out, "roundtrip: OK, isomorphism on {n} elements").unwrap();
            }
            Ok(out)
        }
    }
}

fn models(t: &Theory, size: usize, upto_iso: bool, format: Format, limits: &Limits) -> Outcome {
    if t.fragment() == Fragment::Equational && t.signature().sorts().len() == 1 {
        return algebras(&AlgebraicTheory::new(t.clone())?, size, upto_iso, format, limits);
    }
    let g = coherent::groupoid(t, SizeBounds::exactly(size)?, limits)?;
    let classes = g.iso_classes();
    match format {
        Format::Json => {
            let cs = upto_iso.then_some(classes.as_slice());
            Ok(json_text(&coherent::structures_to_json(t, size, g.objects(), cs)))
        }
        Format::Dot => Ok(g.to_dot()),
        Format::Text => {
            let mut out = format!("{} labeled\n", g.len());
            if upto_iso {
                writeln!(out, "{}", plural(classes.len(), "class", "classes")).unwrap();
                for (k, c) in classes.iter().enumerate() {
                    writeln!(out, "class {k}: {} labeled", c.len()).unwrap();
                    structure_lines(&mut out, &g.objects()[c[0]]);
                }
            }
            Ok(out)
        }
    }
}

fn algebras(alg: &AlgebraicTheory, size: usize, upto_iso: bool, format: Format, limits: &Limits) -> Outcome {
    let all = eq::enumerate_models(alg, size, limits)?;
    let classes = if upto_iso || format == Format::Dot {
        Some(eq::iso_classes(&all, limits)?)
    } else {
        None
    };
    match format {
        Format::Json => Ok(json_text(&eq::models_to_json(
            alg,
            size,
            &all,
            classes.as_deref(),
        ))),
        Format::Dot => {
            let reps: Vec<FiniteAlgebra> = classes
                .unwrap_or_default()
                .into_iter()
                .map(|c| c.representative)
                .collect();
            Ok(eq::category_dot(alg, &reps, limits)?)
        }
        Format::Text => {
            let mut out = format!("{} labeled\n", all.len());
            if let Some(classes) = classes {
                writeln!(out, "{}", plural(classes.len(), "class", "classes")).unwrap();
                for (k, c) in classes.iter().enumerate() {
                    writeln!(out, "class {k}: {} labeled", c.labeled_count).unwrap();
                    for (op, table) in alg.operations().iter().zip(c.representative.tables()) {
                        writeln!(out, "  {} = {}", op.name, cells(table)).unwrap();
                    }
                }
            }
            Ok(out)
        }
    }
}

fn cells<T: ToString>(table: &[T]) -> String {
    table.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn structure_lines(out: &mut String, m: &FiniteStructure) {
    let sig = m.signature();
    for (f, table) in sig.functions().iter().zip(m.functions()) {
        writeln!(out, "  {} = {}", f.name, cells(table)).unwrap();
    }
    for (p, table) in sig.predicates().iter().zip(m.relations()) {
        let bits: Vec<u8> = table.iter().map(|&b| u8::from(b)).collect();
        writeln!(out, "  {} = {}", p.name, cells(&bits)).unwrap();
    }
    for (p, &v) in sig.propositions().iter().zip(m.propositions()) {
        writeln!(out, "  {p} = {v}").unwrap();
    }
}

fn groupoid(g: &coherent::ModelGroupoid, format: Format) -> Outcome {
    match format {
        Format::Json => Ok(json_text(&coherent::groupoid_to_json(g))),
        Format::Dot => Ok(g.to_dot()),
        Format::Text => {
            if g.is_empty() {
                return Ok("empty groupoid\n".into());
            }
            let aut = g.automorphism_counts();
            let classes = g.iso_classes();
            let mut class_of = vec![0; g.len()];
            for (k, c) in classes.iter().enumerate() {
                for &i in c {
                    class_of[i] = k;
                }
            }
            let mut out = format!(
                "{}; |Aut| = {}\n{}\n",
                plural(g.len(), "object", "objects"),
                aut.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
                plural(classes.len(), "iso class", "iso classes"),
            );
            for (i, m) in g.objects().iter().enumerate() {
                writeln!(
                    out,
                    "O{i} ({}): |Aut| = {}, class {}",
                    cells(m.sizes()).replace(' ', ","),
                    aut[i],
                    class_of[i]
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

fn syn_report(syn: &SynCategory, n: usize, m: usize, format: Format) -> Outcome {
    let homs = syn.hom(n, m)?;
    match format {
        Format::Json => Ok(json_text(&eq::syn_hom_to_json(syn, n, m, &homs))),
        Format::Dot => Err(unsupported("syn")),
        Format::Text => {
            let shown: Vec<String> = homs
                .iter()
                .map(|f| {
                    let ts: Vec<String> = f.terms().iter().map(|t| t.to_string()).collect();
                    if m == 1 {
                        ts[0].clone()
                    } else {
                        format!("[{}]", ts.join(", "))
                    }
                })
                .collect();
            let head = plural(homs.len(), "class", "classes");
            if shown.is_empty() {
                Ok(format!("{head}\n"))
            } else {
                Ok(format!("{head}: {}\n", shown.join(", ")))
            }
        }
    }
}
