//! Models as finite-product-preserving functors out of the syntactic
//! category, and homomorphisms as natural transformations.
//!
//! A model `M` sends the object `n` to `M^n`, indexed in mixed radix, and a
//! morphism `[t1, .., tm] : n → m` to the map `M^n → M^m` evaluating the
//! terms.

use std::collections::HashMap;

use super::syn::{SynCategory, SynMorphism};
use super::{decode, encode, CTerm, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::limits::{pow_sat, Limits};
use crate::syntax::Term;

/// Pairs checked for functoriality when the full set is larger.
pub const DEFAULT_PAIR_SAMPLES: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorArrow {
    pub morphism: SynMorphism,
    /// Image of each element of `M^source` as an index into `M^target`.
    pub map: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct FunctorTable {
    model: FiniteAlgebra,
    objects: Vec<usize>,
    arrows: Vec<FunctorArrow>,
    by_morphism: HashMap<SynMorphism, usize>,
}

fn compile_all(syn: &SynCategory, f: &SynMorphism) -> Result<Vec<CTerm>> {
    let ctx = syn.theory().context(f.source());
    f.terms().iter().map(|t| syn.theory().compile(t, &ctx)).collect()
}

/// `F_M(f) : M^n → M^m`.
pub fn evaluate(syn: &SynCategory, model: &FiniteAlgebra, f: &SynMorphism) -> Result<Vec<usize>> {
    let terms = compile_all(syn, f)?;
    let n = model.size();
    let len = pow_sat(n, f.source()) as usize;
    let mut env = vec![0; f.source()];
    let mut values = vec![0; f.target()];
    Ok((0..len)
        .map(|idx| {
            decode(idx, n, &mut env);
            for (v, t) in values.iter_mut().zip(&terms) {
                *v = model.eval(t, &env);
            }
            encode(&values, n)
        })
        .collect())
}

fn check_signature(syn: &SynCategory, model: &FiniteAlgebra) -> Result<()> {
    if model.operations() != syn.theory().operations() {
        return Err(Error::SignatureMismatch(format!(
            "model is not over the signature of `{}`",
            syn.theory().name()
        )));
    }
    Ok(())
}

/// The functor of `model` on all hom-sets between arities up to the
/// category's bound, verified to preserve identities, sampled composites
/// and finite products.
pub fn model_as_functor(
    model: &FiniteAlgebra,
    syn: &SynCategory,
    limits: &Limits,
) -> Result<FunctorTable> {
    check_signature(syn, model)?;
    if !model.is_model(syn.theory(), limits)? {
        return Err(Error::InvalidStructure(format!(
            "not a model of `{}`",
            syn.theory().name()
        )));
    }
    let top = syn.options().max_arity;
    limits.check("model powers", pow_sat(model.size(), top))?;
    let objects = (0..=top).map(|k| pow_sat(model.size(), k) as usize).collect();
    let mut arrows = Vec::new();
    for n in 0..=top {
        for m in 0..=top {
            for f in syn.hom(n, m)? {
                let map = evaluate(syn, model, &f)?;
                arrows.push(FunctorArrow { morphism: f, map });
            }
        }
    }
    let by_morphism = arrows
        .iter()
        .enumerate()
        .map(|(i, a)| (a.morphism.clone(), i))
        .collect();
    let table = FunctorTable {
        model: model.clone(),
        objects,
        arrows,
        by_morphism,
    };
    table.check_functoriality(syn, DEFAULT_PAIR_SAMPLES)?;
    table.check_products(syn)?;
    Ok(table)
}

impl FunctorTable {
    pub fn model(&self) -> &FiniteAlgebra {
        &self.model
    }

    /// `|F(n)| = |M|^n` for each arity.
    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn arrows(&self) -> &[FunctorArrow] {
        &self.arrows
    }

    pub fn arrow(&self, f: &SynMorphism) -> Option<&[usize]> {
        self.by_morphism.get(f).map(|&i| self.arrows[i].map.as_slice())
    }

    /// Checks `F(id) = id` on every object and `F(g ∘ f) = F(g) ∘ F(f)` on
    /// composable pairs: all of them if there are at most `max_pairs`,
    /// otherwise every k-th pair in enumeration order. Returns the number
    /// of pairs checked.
    pub fn check_functoriality(&self, syn: &SynCategory, max_pairs: usize) -> Result<usize> {
        let top = self.objects.len() - 1;
        for n in 0..=top {
            let id = syn.identity(n)?;
            let map = evaluate(syn, &self.model, &id)?;
            if map.iter().enumerate().any(|(i, &j)| i != j) {
                return Err(Error::InvariantViolation(format!(
                    "F(id_{n}) is not the identity"
                )));
            }
        }
        let hom = |a: usize, b: usize| -> Vec<usize> {
            (0..self.arrows.len())
                .filter(|&i| {
                    let f = &self.arrows[i].morphism;
                    (f.source(), f.target()) == (a, b)
                })
                .collect()
        };
        let mut pairs = Vec::new();
        for n in 0..=top {
            for m in 0..=top {
                let fs = hom(n, m);
                for k in 0..=top {
                    let gs = hom(m, k);
                    for &f in &fs {
                        for &g in &gs {
                            pairs.push((f, g));
                        }
                    }
                }
            }
        }
        let stride = pairs.len().div_ceil(max_pairs.max(1)).max(1);
        let mut checked = 0;
        for &(f, g) in pairs.iter().step_by(stride) {
            let (fa, ga) = (&self.arrows[f], &self.arrows[g]);
            let composite = syn.compose(&ga.morphism, &fa.morphism)?;
            let direct = evaluate(syn, &self.model, &composite)?;
            let chained: Vec<usize> = fa.map.iter().map(|&x| ga.map[x]).collect();
            if direct != chained {
                return Err(Error::InvariantViolation(format!(
                    "F({} ∘ {}) differs from F({}) ∘ F({})",
                    ga.morphism, fa.morphism, ga.morphism, fa.morphism
                )));
            }
            checked += 1;
        }
        Ok(checked)
    }

    /// Checks `|F(m + n)| = |F(m)| · |F(n)|` and that the two projections
    /// out of `m + n` pair to a bijection `F(m + n) → F(m) × F(n)`.
    pub fn check_products(&self, syn: &SynCategory) -> Result<()> {
        let top = self.objects.len() - 1;
        let x = |i| Term::Var(syn.theory().variable(i));
        for m in 0..=top {
            for n in 0..=top - m {
                if self.objects[m + n] != self.objects[m] * self.objects[n] {
                    return Err(Error::InvariantViolation(format!(
                        "|F({})| is not |F({m})|·|F({n})|",
                        m + n
                    )));
                }
                let p1 = syn.morphism(m + n, (0..m).map(x).collect())?;
                let p2 = syn.morphism(m + n, (m..m + n).map(x).collect())?;
                let (a, b) = (evaluate(syn, &self.model, &p1)?, evaluate(syn, &self.model, &p2)?);
                let mut seen = vec![false; self.objects[m + n]];
                for i in 0..self.objects[m + n] {
                    let j = a[i] * self.objects[n] + b[i];
                    if std::mem::replace(&mut seen[j], true) {
                        return Err(Error::InvariantViolation(format!(
                            "projections out of {} are not jointly injective",
                            m + n
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A failing naturality square: `h(F_M(t)(a)) ≠ F_N(t)(h(a))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalityFailure {
    pub arity: usize,
    pub term: Term,
    pub input: Vec<usize>,
}

/// The first failing square over every class of `Syn(n, 1)`, `n` up to
/// the category's arity bound, and every input in `M^n`. Tuples `n → m`
/// are checked component-wise, so single terms suffice.
pub fn naturality_failure(
    source: &FiniteAlgebra,
    target: &FiniteAlgebra,
    map: &[usize],
    syn: &SynCategory,
    limits: &Limits,
) -> Result<Option<NaturalityFailure>> {
    check_signature(syn, source)?;
    check_signature(syn, target)?;
    if map.len() != source.size() || map.iter().any(|&b| b >= target.size()) {
        return Err(Error::InvalidStructure("map is not total on the carriers".into()));
    }
    let top = syn.options().max_arity;
    let mut work = 0u128;
    for n in 0..=top {
        work = work.saturating_add(
            (syn.classes(n)?.len() as u128).saturating_mul(pow_sat(source.size(), n)),
        );
    }
    limits.check("naturality squares", work)?;
    for n in 0..=top {
        let ctx = syn.theory().context(n);
        let mut a = vec![0; n];
        let mut ha = vec![0; n];
        for class in syn.classes(n)? {
            let t = syn.theory().compile(&class.representative, &ctx)?;
            for idx in 0..pow_sat(source.size(), n) as usize {
                decode(idx, source.size(), &mut a);
                for (h, &x) in ha.iter_mut().zip(&a) {
                    *h = map[x];
                }
                if map[source.eval(&t, &a)] != target.eval(&t, &ha) {
                    return Ok(Some(NaturalityFailure {
                        arity: n,
                        term: class.representative.clone(),
                        input: a.clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn naturality_check(
    source: &FiniteAlgebra,
    target: &FiniteAlgebra,
    map: &[usize],
    syn: &SynCategory,
    limits: &Limits,
) -> Result<bool> {
    Ok(naturality_failure(source, target, map, syn, limits)?.is_none())
}
