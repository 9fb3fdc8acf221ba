//! Canonical enumeration of coherent sentences.
//!
//! Every coherent sentence is equivalent to a finite disjunction of
//! sentences `exists x1 .. xk. a1 & .. & ac` with each `ai` a flat atom:
//! a proposition, `xi = xj`, `xi != xj`, `P(x..)`, `f(x..) = xj` or
//! `f(x..) != xj`. The generator lists `false`, `true` and then these, by
//! number of quantifiers, then number of conjuncts, then the sorts of the
//! quantified variables (nondecreasing), then the positions of the chosen
//! atoms. Every quantified variable must occur in some conjunct.

use itertools::Itertools;

use super::{FiniteStructure, ModelGroupoid, Sentence, Shape};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::syntax::{Formula, Signature, Term, Variable};

const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

/// Quantifier depth and conjunct count of generated sentences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SentenceBounds {
    pub depth: usize,
    pub conjuncts: usize,
}

impl SentenceBounds {
    /// Depth at most `depth`, any number of conjuncts.
    pub fn depth(depth: usize) -> Self {
        SentenceBounds {
            depth,
            conjuncts: usize::MAX,
        }
    }

    pub fn new(depth: usize, conjuncts: usize) -> Self {
        SentenceBounds { depth, conjuncts }
    }
}

fn names(sig: &Signature, k: usize) -> Vec<String> {
    NAMES
        .iter()
        .map(|s| s.to_string())
        .chain((1..).map(|i| format!("x{i}")))
        .filter(|n| sig.lookup(n).is_none())
        .take(k)
        .collect()
}

/// Nondecreasing sort tuples of length `k`.
fn sort_tuples(sorts: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    (0..sorts).combinations_with_replacement(k).collect()
}

/// Flat atoms over `vars`, each with the set of variables it mentions.
fn atoms(sig: &Signature, vars: &[Variable]) -> Vec<(Formula, u64)> {
    let mut out = Vec::new();
    let var = |i: usize| Term::Var(vars[i].clone());
    let k = vars.len();
    for p in sig.propositions() {
        out.push((Formula::Prop(p.clone()), 0));
    }
    for i in 0..k {
        for j in i..k {
            if vars[i].sort == vars[j].sort {
                out.push((Formula::Eq(var(i), var(j)), 1 << i | 1 << j));
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if vars[i].sort == vars[j].sort {
                out.push((Formula::Neq(var(i), var(j)), 1 << i | 1 << j));
            }
        }
    }
    let tuples = |sorts: &[String]| -> Vec<Vec<usize>> {
        sorts
            .iter()
            .map(|s| (0..k).filter(|&i| vars[i].sort == *s).collect::<Vec<_>>())
            .multi_cartesian_product()
            .collect()
    };
    let mask = |args: &[usize]| args.iter().fold(0u64, |m, &i| m | 1 << i);
    for p in sig.predicates() {
        let ts = if p.args.is_empty() { vec![Vec::new()] } else { tuples(&p.args) };
        for args in ts {
            out.push((Formula::Pred(p.name.clone(), args.iter().map(|&i| var(i)).collect()), mask(&args)));
        }
    }
    for f in sig.functions() {
        let ts = if f.args.is_empty() { vec![Vec::new()] } else { tuples(&f.args) };
        for args in ts {
            let t = Term::app(f.name.clone(), args.iter().map(|&i| var(i)).collect());
            for w in (0..k).filter(|&w| vars[w].sort == f.result) {
                let m = mask(&args) | 1 << w;
                out.push((Formula::Eq(t.clone(), var(w)), m));
                out.push((Formula::Neq(t.clone(), var(w)), m));
            }
        }
    }
    out
}

fn binomial(n: usize, r: usize) -> u128 {
    (0..r).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// The canonical sentences over `sig` within `bounds`.
pub fn sentences(sig: &Signature, bounds: SentenceBounds, limits: &Limits) -> Result<Vec<Formula>> {
    if bounds.depth > 63 {
        return Err(Error::Unsupported("sentence depth above 63".into()));
    }
    let mut levels = Vec::new();
    let mut total = 2u128;
    for k in 0..=bounds.depth {
        let vnames = names(sig, k);
        for sorts in sort_tuples(sig.sorts().len(), k) {
            let vars: Vec<Variable> = vnames
                .iter()
                .zip(&sorts)
                .map(|(n, &s)| Variable::new(n.clone(), sig.sorts()[s].clone()))
                .collect();
            let a = atoms(sig, &vars);
            for c in 1..=a.len().min(bounds.conjuncts) {
                total = total.saturating_add(binomial(a.len(), c));
            }
            limits.check("candidate sentences", total)?;
            levels.push((k, vars, a));
        }
    }
    let mut out = vec![Formula::False, Formula::True];
    for k in 0..=bounds.depth {
        let widest = levels.iter().filter(|l| l.0 == k).map(|l| l.2.len()).max().unwrap_or(0);
        for c in 1..=widest.min(bounds.conjuncts) {
            for (_, vars, a) in levels.iter().filter(|l| l.0 == k) {
                let all = (1u64 << k) - 1;
                for combo in (0..a.len()).combinations(c) {
                    if combo.iter().fold(0, |m, &i| m | a[i].1) != all {
                        continue;
                    }
                    let mut phi = Formula::conjunction(combo.iter().map(|&i| a[i].0.clone()));
                    for v in vars.iter().rev() {
                        phi = Formula::exists(v.clone(), phi);
                    }
                    out.push(phi);
                }
            }
        }
    }
    Ok(out)
}

/// The first canonical sentence true in exactly one of `m`, `n`.
pub fn separating_sentence(
    m: &FiniteStructure,
    n: &FiniteStructure,
    bounds: SentenceBounds,
    limits: &Limits,
) -> Result<Option<Formula>> {
    if !Shape::same(&m.shape, &n.shape) {
        return Err(Error::SignatureMismatch(
            "structures have different signatures".into(),
        ));
    }
    for phi in sentences(m.signature(), bounds, limits)? {
        let s = Sentence::new(&m.shape, &phi)?;
        if s.eval(m, limits)? != s.eval(n, limits)? {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// The canonical sentences within `bounds` true in every object.
pub fn theory_trace(g: &ModelGroupoid, bounds: SentenceBounds, limits: &Limits) -> Result<Vec<Formula>> {
    let shape = Shape::new(g.theory().signature());
    let mut out = Vec::new();
    for phi in sentences(g.theory().signature(), bounds, limits)? {
        let s = Sentence::new(&shape, &phi)?;
        let mut all = true;
        for m in g.objects() {
            if !s.eval(m, limits)? {
                all = false;
                break;
            }
        }
        if all {
            out.push(phi);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{sentence, theory, PURE, UNARY};
    use super::super::{groupoid, SizeBounds};
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn text(fs: &[Formula]) -> Vec<String> {
        fs.iter().map(|f| f.to_string()).collect()
    }

    #[test]
    fn canonical_order() {
        let t = theory(PURE);
        let s = text(&sentences(t.signature(), SentenceBounds::depth(2), &lim()).unwrap());
        assert_eq!(
            &s[..5],
            &[
                "false",
                "true",
                "exists x:S. x = x",
                "exists x:S. exists y:S. x = y",
                "exists x:S. exists y:S. x != y",
            ]
        );
        assert!(s.iter().all(|f| f.matches("exists").count() <= 2));
    }

    #[test]
    fn every_sentence_parses_back() {
        let t = theory("theory M sort A B op f : A -> B pred R : A B prop p");
        for phi in sentences(t.signature(), SentenceBounds::new(2, 2), &lim()).unwrap() {
            assert_eq!(sentence(&t, &phi.to_string()), phi);
            assert!(phi.is_coherent() && phi.is_closed());
        }
    }

    #[test]
    fn separation_examples() {
        let t = theory(PURE);
        let g = groupoid(&t, SizeBounds::up_to(2), &lim()).unwrap();
        let (one, two) = (&g.objects()[0], &g.objects()[1]);
        let phi = separating_sentence(one, two, SentenceBounds::depth(2), &lim()).unwrap();
        assert_eq!(phi.unwrap().to_string(), "exists x:S. exists y:S. x != y");
        assert_eq!(separating_sentence(one, two, SentenceBounds::depth(1), &lim()).unwrap(), None);

        let p = theory(UNARY);
        let g = groupoid(&p, SizeBounds::exactly(2).unwrap(), &lim()).unwrap();
        let (empty, full) = (&g.objects()[0], &g.objects()[3]);
        let phi = separating_sentence(empty, full, SentenceBounds::depth(1), &lim()).unwrap();
        assert_eq!(phi.unwrap().to_string(), "exists x:S. P(x)");
        let (a, b) = (&g.objects()[1], &g.objects()[2]);
        assert_eq!(separating_sentence(a, b, SentenceBounds::depth(3), &lim()).unwrap(), None);
    }

    #[test]
    fn trace_examples() {
        let big = theory("theory Big sort S axiom true |- exists x:S. exists y:S. x != y");
        let g = groupoid(&big, SizeBounds::up_to(3), &lim()).unwrap();
        let tr = text(&theory_trace(&g, SentenceBounds::depth(2), &lim()).unwrap());
        assert!(tr.contains(&"exists x:S. exists y:S. x != y".to_string()));

        let t = theory(PURE);
        let g = groupoid(&t, SizeBounds::up_to(3), &lim()).unwrap();
        let tr = text(&theory_trace(&g, SentenceBounds::depth(2), &lim()).unwrap());
        assert!(tr.contains(&"exists x:S. x = x".to_string()));
        assert!(!tr.contains(&"exists x:S. exists y:S. x != y".to_string()));
        assert!(!tr.contains(&"false".to_string()));

        let empty = groupoid(&t, SizeBounds::up_to(0), &lim()).unwrap();
        let all = sentences(t.signature(), SentenceBounds::depth(2), &lim()).unwrap();
        assert_eq!(theory_trace(&empty, SentenceBounds::depth(2), &lim()).unwrap(), all);
    }

    #[test]
    fn generator_budget() {
        let g = theory("theory G sort G op e : -> G op inv : G -> G op m : G G -> G");
        assert!(matches!(
            sentences(g.signature(), SentenceBounds::depth(3), &Limits::with_budget(10_000)),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(sentences(g.signature(), SentenceBounds::new(2, 2), &lim()).is_ok());
    }
}
