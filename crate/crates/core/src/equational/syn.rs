//! The syntactic category: objects are arities, morphisms `n → m` are
//! `m`-tuples of term classes in the context `x1, .., xn`.
//!
//! Provable equality is not decidable in general, so classes are computed
//! by one of two labelled approximations:
//!
//! * `Rewrite` orients every axiom left to right and compares normal forms.
//!   Identified terms are provably equal. The oriented system must be
//!   confluent (checked on critical pairs) and terminate within the step
//!   budget.
//! * `ModelEval` compares the values of terms in every model up to a size
//!   bound. Terms that are separated are not provably equal.
//!
//! Terms are enumerated in graded order: by depth, then head symbol
//! (variables before operations, each by index), then arguments
//! lexicographically. The representative of a class is its first term.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{enumerate_models, next_tuple, AlgebraicTheory, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::limits::{pow_sat, Limits};
use crate::syntax::{Substitution, Term, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Backend {
    Rewrite,
    ModelEval,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Rewrite => "rewrite",
            Backend::ModelEval => "modeleval",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rewrite" => Ok(Backend::Rewrite),
            "modeleval" => Ok(Backend::ModelEval),
            other => Err(Error::Unsupported(format!("unknown backend `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynOptions {
    pub backend: Backend,
    /// Largest term depth enumerated.
    pub depth: usize,
    /// Largest arity whose hom-sets are indexed.
    pub max_arity: usize,
    /// Largest model size consulted by `ModelEval`.
    pub model_size: usize,
    /// Rewrite steps allowed per normalization.
    pub rewrite_steps: u64,
}

impl SynOptions {
    pub fn new(backend: Backend, depth: usize, max_arity: usize) -> Self {
        SynOptions {
            backend,
            depth,
            max_arity,
            model_size: 3,
            rewrite_steps: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Key {
    Normal(Term),
    Values(Vec<usize>),
}

/// A class of terms of depth at most the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermClass {
    pub representative: Term,
    pub members: usize,
}

#[derive(Debug)]
struct ClassIndex {
    classes: Vec<TermClass>,
    keys: HashMap<Key, usize>,
}

#[derive(Debug)]
struct Rule {
    lhs: Term,
    rhs: Term,
}

/// A morphism `source → target` given by canonical representatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SynMorphism {
    source: usize,
    target: usize,
    terms: Vec<Term>,
    backend: Backend,
}

impl SynMorphism {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }
}

impl fmt::Display for SynMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug)]
pub struct SynCategory {
    theory: AlgebraicTheory,
    options: SynOptions,
    limits: Limits,
    rules: Vec<Rule>,
    models: Vec<FiniteAlgebra>,
    index: Vec<ClassIndex>,
}

/// Number of terms of depth at most `depth` in `n` variables.
pub(crate) fn term_count(theory: &AlgebraicTheory, n: usize, depth: usize) -> u128 {
    let mut count = n as u128;
    for _ in 0..depth {
        let prev = usize::try_from(count).unwrap_or(usize::MAX);
        count = theory
            .operations()
            .iter()
            .fold(n as u128, |acc, op| acc.saturating_add(pow_sat(prev, op.arity)));
    }
    count
}

/// Terms of depth at most `depth` in `x1, .., xn`, in graded order.
pub(crate) fn graded_terms(
    theory: &AlgebraicTheory,
    n: usize,
    depth: usize,
    limits: &Limits,
) -> Result<Vec<Term>> {
    limits.check("terms", term_count(theory, n, depth))?;
    let mut all: Vec<Term> = theory.context(n).into_iter().map(Term::Var).collect();
    let mut depths = vec![0usize; n];
    for d in 1..=depth {
        let prev = all.len();
        let mut fresh = Vec::new();
        for op in theory.operations() {
            if op.arity == 0 {
                if d == 1 {
                    fresh.push(Term::constant(op.name.clone()));
                }
                continue;
            }
            if prev == 0 {
                continue;
            }
            let mut tuple = vec![0usize; op.arity];
            loop {
                if tuple.iter().any(|&i| depths[i] == d - 1) {
                    fresh.push(Term::app(
                        op.name.clone(),
                        tuple.iter().map(|&i| all[i].clone()).collect(),
                    ));
                }
                if !next_tuple(&mut tuple, prev) {
                    break;
                }
            }
        }
        depths.extend(std::iter::repeat(d).take(fresh.len()));
        all.extend(fresh);
    }
    Ok(all)
}

fn match_term(pattern: &Term, t: &Term, binding: &mut BTreeMap<Variable, Term>) -> bool {
    match pattern {
        Term::Var(v) => match binding.get(v) {
            Some(bound) => bound == t,
            None => {
                binding.insert(v.clone(), t.clone());
                true
            }
        },
        Term::App { symbol, args } => match t {
            Term::App {
                symbol: s2,
                args: a2,
            } if s2 == symbol && a2.len() == args.len() => args
                .iter()
                .zip(a2)
                .all(|(p, u)| match_term(p, u, binding)),
            _ => false,
        },
    }
}

fn rename_apart(t: &Term) -> Term {
    match t {
        Term::Var(v) => Term::Var(Variable::new(format!("{}~", v.name), v.sort.clone())),
        Term::App { symbol, args } => Term::app(symbol.clone(), args.iter().map(rename_apart).collect()),
    }
}

/// Paths to the non-variable subterms, outermost first.
fn positions(t: &Term, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if let Term::App { args, .. } = t {
        out.push(path.clone());
        for (i, a) in args.iter().enumerate() {
            path.push(i);
            positions(a, path, out);
            path.pop();
        }
    }
}

fn subterm<'t>(t: &'t Term, path: &[usize]) -> &'t Term {
    match (t, path.split_first()) {
        (Term::App { args, .. }, Some((&i, rest))) => subterm(&args[i], rest),
        _ => t,
    }
}

fn replace_at(t: &Term, path: &[usize], new: &Term) -> Term {
    match (t, path.split_first()) {
        (Term::App { symbol, args }, Some((&i, rest))) => {
            let mut args = args.clone();
            args[i] = replace_at(&args[i], rest, new);
            Term::app(symbol.clone(), args)
        }
        _ => new.clone(),
    }
}

fn resolve(t: &Term, sub: &BTreeMap<Variable, Term>) -> Term {
    match t {
        Term::Var(v) => sub.get(v).map_or_else(|| t.clone(), |u| resolve(u, sub)),
        Term::App { symbol, args } => Term::app(symbol.clone(), args.iter().map(|a| resolve(a, sub)).collect()),
    }
}

/// Syntactic unification with occurs check, extending `sub`.
fn unify(a: &Term, b: &Term, sub: &mut BTreeMap<Variable, Term>) -> bool {
    let (a, b) = (resolve(a, sub), resolve(b, sub));
    match (&a, &b) {
        (Term::Var(v), Term::Var(w)) if v == w => true,
        (Term::Var(v), t) | (t, Term::Var(v)) => {
            if t.contains_variable(v) {
                return false;
            }
            sub.insert(v.clone(), t.clone());
            true
        }
        (Term::App { symbol: f, args: xs }, Term::App { symbol: g, args: ys }) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| unify(x, y, sub))
        }
    }
}

impl SynCategory {
    pub fn new(theory: &AlgebraicTheory, options: SynOptions, limits: &Limits) -> Result<Self> {
        let mut rules = Vec::new();
        let mut models = Vec::new();
        match options.backend {
            Backend::Rewrite => {
                for eq in theory.equations() {
                    if matches!(eq.lhs, Term::Var(_)) {
                        return Err(Error::BackendUnavailable(format!(
                            "cannot orient `{eq}`: left side is a variable"
                        )));
                    }
                    let lv = eq.lhs.variables();
                    if eq.rhs.variables().iter().any(|v| !lv.contains(v)) {
                        return Err(Error::BackendUnavailable(format!(
                            "cannot orient `{eq}`: right side has extra variables"
                        )));
                    }
                    rules.push(Rule {
                        lhs: eq.lhs.clone(),
                        rhs: eq.rhs.clone(),
                    });
                }
            }
            Backend::ModelEval => {
                for size in 1..=options.model_size {
                    models.extend(enumerate_models(theory, size, limits)?);
                }
            }
        }
        let mut syn = SynCategory {
            theory: theory.clone(),
            options,
            limits: *limits,
            rules,
            models,
            index: Vec::new(),
        };
        syn.check_confluence()?;
        for n in 0..=syn.options.max_arity {
            let idx = syn.build_index(n)?;
            syn.index.push(idx);
        }
        Ok(syn)
    }

    /// Every critical pair of the oriented axioms must have a common normal
    /// form. Together with termination this makes normal forms unique, so
    /// classes are closed under substitution and composition is well defined.
    fn check_confluence(&self) -> Result<()> {
        for (i, r1) in self.rules.iter().enumerate() {
            let mut paths = Vec::new();
            positions(&r1.lhs, &mut Vec::new(), &mut paths);
            for (j, r2) in self.rules.iter().enumerate() {
                let (l2, r2r) = (rename_apart(&r2.lhs), rename_apart(&r2.rhs));
                for p in &paths {
                    if i == j && p.is_empty() {
                        continue;
                    }
                    let mut sub = BTreeMap::new();
                    if !unify(subterm(&r1.lhs, p), &l2, &mut sub) {
                        continue;
                    }
                    let a = resolve(&r1.rhs, &sub);
                    let b = resolve(&replace_at(&r1.lhs, p, &r2r), &sub);
                    let (na, nb) = (self.normal_form(&a)?, self.normal_form(&b)?);
                    if na != nb {
                        return Err(Error::BackendUnavailable(format!(
                            "oriented axioms are not confluent: `{a}` and `{b}` \
                             have distinct normal forms `{na}` and `{nb}`"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn theory(&self) -> &AlgebraicTheory {
        &self.theory
    }

    pub fn options(&self) -> &SynOptions {
        &self.options
    }

    pub fn backend(&self) -> Backend {
        self.options.backend
    }

    /// Models consulted by `ModelEval`; empty for `Rewrite`.
    pub fn models(&self) -> &[FiniteAlgebra] {
        &self.models
    }

    fn build_index(&self, n: usize) -> Result<ClassIndex> {
        let terms = graded_terms(&self.theory, n, self.options.depth, &self.limits)?;
        let keys: Vec<Key> = terms
            .par_iter()
            .map(|t| self.key(n, t))
            .collect::<Result<_>>()?;
        let mut index = ClassIndex {
            classes: Vec::new(),
            keys: HashMap::new(),
        };
        for (t, k) in terms.into_iter().zip(keys) {
            match index.keys.get(&k) {
                Some(&c) => index.classes[c].members += 1,
                None => {
                    index.keys.insert(k, index.classes.len());
                    index.classes.push(TermClass {
                        representative: t,
                        members: 1,
                    });
                }
            }
        }
        Ok(index)
    }

    fn normalize(&self, t: &Term, steps: &mut u64) -> Result<Term> {
        let mut t = t.clone();
        loop {
            let Term::App { symbol, args } = &t else {
                return Ok(t);
            };
            let args = args
                .iter()
                .map(|a| self.normalize(a, steps))
                .collect::<Result<Vec<_>>>()?;
            t = Term::App {
                symbol: symbol.clone(),
                args,
            };
            let Some((rule, binding)) = self.rules.iter().find_map(|r| {
                let mut binding = BTreeMap::new();
                match_term(&r.lhs, &t, &mut binding).then_some((r, binding))
            }) else {
                return Ok(t);
            };
            *steps += 1;
            if *steps > self.options.rewrite_steps {
                return Err(Error::BackendUnavailable(format!(
                    "rewriting did not terminate within {} steps",
                    self.options.rewrite_steps
                )));
            }
            t = rule.rhs.substitute(&Substitution::trusted(binding));
        }
    }

    /// Normal form under the oriented axioms.
    pub fn normal_form(&self, t: &Term) -> Result<Term> {
        self.normalize(t, &mut 0)
    }

    fn key(&self, n: usize, t: &Term) -> Result<Key> {
        match self.options.backend {
            Backend::Rewrite => Ok(Key::Normal(self.normal_form(t)?)),
            Backend::ModelEval => {
                let c = self.theory.compile(t, &self.theory.context(n))?;
                let mut values = Vec::new();
                for m in &self.models {
                    let mut env = vec![0; n];
                    loop {
                        values.push(m.eval(&c, &env));
                        if !next_tuple(&mut env, m.size()) {
                            break;
                        }
                    }
                }
                Ok(Key::Values(values))
            }
        }
    }

    /// Whether the backend identifies two terms in context `x1, .., xn`.
    pub fn same_class(&self, n: usize, a: &Term, b: &Term) -> Result<bool> {
        Ok(self.key(n, a)? == self.key(n, b)?)
    }

    /// Classes of `Syn(n, 1)` at the depth bound, in representative order.
    pub fn classes(&self, n: usize) -> Result<&[TermClass]> {
        self.index
            .get(n)
            .map(|i| i.classes.as_slice())
            .ok_or_else(|| Error::bound("arity", n, self.options.max_arity as u64))
    }

    /// Representative of the class of `t`. Terms whose class has no member
    /// within the depth bound are returned as their normal form (`Rewrite`)
    /// or unchanged (`ModelEval`).
    pub fn canonical(&self, n: usize, t: &Term) -> Result<Term> {
        let key = self.key(n, t)?;
        if let Some(&c) = self.index.get(n).and_then(|i| i.keys.get(&key)) {
            return Ok(self.index[n].classes[c].representative.clone());
        }
        Ok(match key {
            Key::Normal(nf) => nf,
            Key::Values(_) => t.clone(),
        })
    }

    pub fn morphism(&self, source: usize, terms: Vec<Term>) -> Result<SynMorphism> {
        let ctx = self.theory.context(source);
        let terms = terms
            .iter()
            .map(|t| {
                self.theory.compile(t, &ctx)?;
                self.canonical(source, t)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SynMorphism {
            source,
            target: terms.len(),
            terms,
            backend: self.options.backend,
        })
    }

    pub fn identity(&self, n: usize) -> Result<SynMorphism> {
        self.morphism(n, self.theory.context(n).into_iter().map(Term::Var).collect())
    }

    /// The hom-set `n → m`: all `m`-tuples of classes, first component most
    /// significant.
    pub fn hom(&self, n: usize, m: usize) -> Result<Vec<SynMorphism>> {
        let classes = self.classes(n)?;
        self.limits
            .check("syntactic morphisms", pow_sat(classes.len(), m))?;
        let mut out = Vec::new();
        if m > 0 && classes.is_empty() {
            return Ok(out);
        }
        let mut tuple = vec![0usize; m];
        loop {
            out.push(SynMorphism {
                source: n,
                target: m,
                terms: tuple
                    .iter()
                    .map(|&c| classes[c].representative.clone())
                    .collect(),
                backend: self.options.backend,
            });
            if !next_tuple(&mut tuple, classes.len()) {
                break;
            }
        }
        Ok(out)
    }

    /// `g ∘ f`: substitute the terms of `f` for the variables of `g`.
    pub fn compose(&self, g: &SynMorphism, f: &SynMorphism) -> Result<SynMorphism> {
        if g.source != f.target {
            return Err(Error::ArityMismatch {
                symbol: "composite".into(),
                expected: g.source,
                got: f.target,
            });
        }
        let sub = Substitution::trusted(self.theory.context(g.source).into_iter().zip(f.terms.iter().cloned()));
        let terms = g
            .terms
            .iter()
            .map(|t| self.canonical(f.source, &t.substitute(&sub)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SynMorphism {
            source: f.source,
            target: g.target,
            terms,
            backend: self.options.backend,
        })
    }

    /// Whether two morphisms are identified component-wise.
    pub fn equivalent(&self, a: &SynMorphism, b: &SynMorphism) -> Result<bool> {
        if (a.source, a.target) != (b.source, b.target) {
            return Ok(false);
        }
        for (s, t) in a.terms.iter().zip(&b.terms) {
            if !self.same_class(a.source, s, t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{theory, GROUP, GROUP_COMPLETE};
    use super::*;
    use catlogic_oracle::equational as oracle;
    use proptest::prelude::*;

    const INVOLUTION: &str = "theory Inv sort S op f : S -> S axiom f(f(x)) = x";

    fn lim() -> Limits {
        Limits::default()
    }

    fn syn(text: &str, backend: Backend, depth: usize) -> SynCategory {
        SynCategory::new(&theory(text), SynOptions::new(backend, depth, 2), &lim()).unwrap()
    }

    fn names(classes: &[TermClass]) -> Vec<String> {
        classes.iter().map(|c| c.representative.to_string()).collect()
    }

    #[test]
    fn graded_order() {
        let t = theory(INVOLUTION);
        let terms: Vec<String> = graded_terms(&t, 1, 3, &lim())
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(terms, ["x1", "f(x1)", "f(f(x1))", "f(f(f(x1)))"]);
        let semi = theory("theory S sort S op m : S S -> S");
        let terms = graded_terms(&semi, 2, 2, &lim()).unwrap();
        assert_eq!(terms.len() as u128, term_count(&semi, 2, 2));
        assert_eq!(terms.len(), 2 + 4 + 36 - 4);
    }

    #[test]
    fn involution_classes() {
        for backend in [Backend::Rewrite, Backend::ModelEval] {
            let s = syn(INVOLUTION, backend, 3);
            assert_eq!(names(s.classes(1).unwrap()), ["x1", "f(x1)"]);
            assert_eq!(s.classes(1).unwrap().len(), oracle::involution_word_classes(3, 3));
        }
    }

    #[test]
    fn depth_zero_and_projections() {
        let s = syn(GROUP_COMPLETE, Backend::Rewrite, 0);
        assert_eq!(names(s.classes(1).unwrap()), ["x1"]);
        assert_eq!(names(s.classes(2).unwrap()), ["x1", "x2"]);
    }

    #[test]
    fn composition_examples() {
        let g = theory(GROUP_COMPLETE);
        let s = SynCategory::new(&g, SynOptions::new(Backend::Rewrite, 2, 2), &lim()).unwrap();
        let x = |i| Term::Var(g.variable(i));
        let mxy = s.morphism(2, vec![Term::app("m", vec![x(0), x(1)])]).unwrap();
        let diag = s.morphism(1, vec![x(0), x(0)]).unwrap();
        assert_eq!(s.compose(&mxy, &diag).unwrap().to_string(), "[m(x1, x1)]");
        let id2 = s.identity(2).unwrap();
        assert_eq!(s.compose(&mxy, &id2).unwrap(), mxy);
        assert!(matches!(s.compose(&mxy, &mxy), Err(Error::ArityMismatch { .. })));

        let inv = syn(INVOLUTION, Backend::Rewrite, 3);
        let f = inv.hom(1, 1).unwrap()[1].clone();
        assert_eq!(f.to_string(), "[f(x1)]");
        assert_eq!(inv.compose(&f, &f).unwrap().to_string(), "[x1]");
    }

    #[test]
    fn unorientable_axioms() {
        let comm = theory("theory C sort S op m : S S -> S axiom x = m(x, x)");
        assert!(matches!(
            SynCategory::new(&comm, SynOptions::new(Backend::Rewrite, 1, 1), &lim()),
            Err(Error::BackendUnavailable(_))
        ));
        let loopy = theory("theory L sort S op m : S S -> S axiom m(x, y) = m(y, x)");
        assert!(matches!(
            SynCategory::new(&loopy, SynOptions::new(Backend::Rewrite, 1, 2), &lim()),
            Err(Error::BackendUnavailable(_))
        ));
        assert!(SynCategory::new(&loopy, SynOptions::new(Backend::ModelEval, 1, 2), &lim()).is_ok());
        // left identity and inverse alone leave critical pairs unjoined
        assert!(matches!(
            SynCategory::new(&theory(GROUP), SynOptions::new(Backend::Rewrite, 1, 1), &lim()),
            Err(Error::BackendUnavailable(_))
        ));
    }

    #[test]
    fn unification_and_overlaps() {
        let v = |n: &str| Term::var(n, "G");
        let a = Term::app("m", vec![v("x"), Term::app("inv", vec![v("y")])]);
        let b = Term::app("m", vec![Term::constant("e"), v("z")]);
        let mut sub = BTreeMap::new();
        assert!(unify(&a, &b, &mut sub));
        assert_eq!(resolve(&a, &sub), resolve(&b, &sub));
        let mut sub = BTreeMap::new();
        assert!(!unify(&v("x"), &Term::app("inv", vec![v("x")]), &mut sub));
        let mut paths = Vec::new();
        positions(&a, &mut Vec::new(), &mut paths);
        assert_eq!(paths, vec![vec![], vec![1]]);
        assert_eq!(replace_at(&a, &[1], &v("w")).to_string(), "m(x, w)");
    }

    #[test]
    fn category_laws_involution() {
        let s = syn(INVOLUTION, Backend::Rewrite, 2);
        let homs: Vec<Vec<Vec<SynMorphism>>> = (0..=2)
            .map(|a| (0..=2).map(|b| s.hom(a, b).unwrap()).collect())
            .collect();
        for a in 0..=2 {
            for b in 0..=2 {
                for f in &homs[a][b] {
                    assert_eq!(&s.compose(&s.identity(b).unwrap(), f).unwrap(), f);
                    assert_eq!(&s.compose(f, &s.identity(a).unwrap()).unwrap(), f);
                    for c in 0..=2 {
                        for g in &homs[b][c] {
                            let gf = s.compose(g, f).unwrap();
                            for d in 0..=2 {
                                for h in &homs[c][d] {
                                    let l = s.compose(&s.compose(h, g).unwrap(), f).unwrap();
                                    let r = s.compose(h, &gf).unwrap();
                                    assert!(s.equivalent(&l, &r).unwrap());
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn backend_name_roundtrip() {
        for b in [Backend::Rewrite, Backend::ModelEval] {
            assert_eq!(b.name().parse::<Backend>().unwrap(), b);
        }
        assert!("knuth".parse::<Backend>().is_err());
    }

    fn group_models() -> Vec<FiniteAlgebra> {
        let g = theory(GROUP);
        (1..=4).flat_map(|n| enumerate_models(&g, n, &lim()).unwrap()).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn rewrite_identifications_are_sound(i in 0usize..93, j in 0usize..93) {
            let g = theory(GROUP_COMPLETE);
            let s = SynCategory::new(&g, SynOptions::new(Backend::Rewrite, 2, 2), &lim()).unwrap();
            let terms = graded_terms(&g, 2, 2, &lim()).unwrap();
            let (a, b) = (&terms[i % terms.len()], &terms[j % terms.len()]);
            if s.same_class(2, a, b).unwrap() {
                let ctx = g.context(2);
                for m in group_models() {
                    for x in 0..m.size() {
                        for y in 0..m.size() {
                            prop_assert_eq!(
                                m.eval_term(&g, a, &ctx, &[x, y]).unwrap(),
                                m.eval_term(&g, b, &ctx, &[x, y]).unwrap()
                            );
                        }
                    }
                }
            }
        }

        #[test]
        fn group_composition_is_associative(f in 0usize..1000, g in 0usize..1000, h in 0usize..1000) {
            let s = SynCategory::new(&theory(GROUP_COMPLETE), SynOptions::new(Backend::Rewrite, 2, 2), &lim()).unwrap();
            let h22 = s.hom(2, 2).unwrap();
            let h21 = s.hom(2, 1).unwrap();
            let (f, g, h) = (&h22[f % h22.len()], &h22[g % h22.len()], &h21[h % h21.len()]);
            let l = s.compose(&s.compose(h, g).unwrap(), f).unwrap();
            let r = s.compose(h, &s.compose(g, f).unwrap()).unwrap();
            prop_assert!(s.equivalent(&l, &r).unwrap());
            prop_assert!(s.equivalent(&s.compose(f, &s.identity(2).unwrap()).unwrap(), f).unwrap());
        }
    }
}
