//! Many-sorted signatures, terms, formulas-in-context and theories.
//!
//! Every value here is immutable once validated. Declaration order is kept
//! everywhere (sorts, symbols, axioms, context variables) and downstream
//! enumerations inherit it.

mod parse;
mod print;
mod subst;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

pub use parse::{parse_sentence, parse_term, parse_theory};
pub use subst::Substitution;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionSymbol {
    pub name: String,
    pub args: Vec<String>,
    pub result: String,
}

impl FunctionSymbol {
    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PredicateSymbol {
    pub name: String,
    pub args: Vec<String>,
}

impl PredicateSymbol {
    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

/// What a declared name refers to, with its index in the owning list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Sort(usize),
    Function(usize),
    Predicate(usize),
    Proposition(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    sorts: Vec<String>,
    functions: Vec<FunctionSymbol>,
    predicates: Vec<PredicateSymbol>,
    propositions: Vec<String>,
    names: BTreeMap<String, Symbol>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sorts(&self) -> &[String] {
        &self.sorts
    }

    pub fn functions(&self) -> &[FunctionSymbol] {
        &self.functions
    }

    pub fn predicates(&self) -> &[PredicateSymbol] {
        &self.predicates
    }

    pub fn propositions(&self) -> &[String] {
        &self.propositions
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.names.get(name).copied()
    }

    pub fn sort_index(&self, name: &str) -> Option<usize> {
        match self.lookup(name) {
            Some(Symbol::Sort(i)) => Some(i),
            _ => None,
        }
    }

    pub fn function(&self, name: &str) -> Option<(usize, &FunctionSymbol)> {
        match self.lookup(name) {
            Some(Symbol::Function(i)) => Some((i, &self.functions[i])),
            _ => None,
        }
    }

    pub fn predicate(&self, name: &str) -> Option<(usize, &PredicateSymbol)> {
        match self.lookup(name) {
            Some(Symbol::Predicate(i)) => Some((i, &self.predicates[i])),
            _ => None,
        }
    }

    pub fn proposition(&self, name: &str) -> Option<usize> {
        match self.lookup(name) {
            Some(Symbol::Proposition(i)) => Some(i),
            _ => None,
        }
    }

    pub fn is_propositional(&self) -> bool {
        self.sorts.is_empty()
    }

    fn claim(&mut self, name: &str, symbol: Symbol) -> Result<()> {
        if self.names.contains_key(name) {
            return Err(Error::DuplicateSymbol(name.to_string()));
        }
        self.names.insert(name.to_string(), symbol);
        Ok(())
    }

    fn require_sorts(&self, sorts: &[String]) -> Result<()> {
        match sorts.iter().find(|s| self.sort_index(s).is_none()) {
            Some(s) => Err(Error::SortMismatch(format!("sort `{s}` is not declared"))),
            None => Ok(()),
        }
    }

    pub fn add_sort(&mut self, name: &str) -> Result<()> {
        self.claim(name, Symbol::Sort(self.sorts.len()))?;
        self.sorts.push(name.to_string());
        Ok(())
    }

    pub fn add_proposition(&mut self, name: &str) -> Result<()> {
        self.claim(name, Symbol::Proposition(self.propositions.len()))?;
        self.propositions.push(name.to_string());
        Ok(())
    }

    pub fn add_function(&mut self, name: &str, args: &[&str], result: &str) -> Result<()> {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let result = result.to_string();
        self.require_sorts(&args)?;
        self.require_sorts(std::slice::from_ref(&result))?;
        self.claim(name, Symbol::Function(self.functions.len()))?;
        self.functions.push(FunctionSymbol {
            name: name.to_string(),
            args,
            result,
        });
        Ok(())
    }

    pub fn add_predicate(&mut self, name: &str, args: &[&str]) -> Result<()> {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        self.require_sorts(&args)?;
        self.claim(name, Symbol::Predicate(self.predicates.len()))?;
        self.predicates.push(PredicateSymbol {
            name: name.to_string(),
            args,
        });
        Ok(())
    }
}

/// A typed variable. The sort travels with the name so contexts are
/// self-contained.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub name: String,
    pub sort: String,
}

impl Variable {
    pub fn new(name: impl Into<String>, sort: impl Into<String>) -> Self {
        Variable {
            name: name.into(),
            sort: sort.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Variable),
    App { symbol: String, args: Vec<Term> },
}

impl Term {
    pub fn var(name: impl Into<String>, sort: impl Into<String>) -> Term {
        Term::Var(Variable::new(name, sort))
    }

    pub fn app(symbol: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App {
            symbol: symbol.into(),
            args,
        }
    }

    pub fn constant(symbol: impl Into<String>) -> Term {
        Term::app(symbol, Vec::new())
    }

    /// Nesting depth of applications; variables have depth 0, constants 1.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App { args, .. } => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut out = Vec::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut Vec<Variable>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App { args, .. } => args.iter().for_each(|a| a.collect_variables(out)),
        }
    }

    pub fn contains_variable(&self, v: &Variable) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::App { args, .. } => args.iter().any(|a| a.contains_variable(v)),
        }
    }
}

/// Sort of `term` over `signature`, checking arities and argument sorts.
pub fn check_term<'a>(signature: &'a Signature, term: &'a Term) -> Result<&'a str> {
    match term {
        Term::Var(v) => {
            if signature.sort_index(&v.sort).is_none() {
                return Err(Error::SortMismatch(format!(
                    "variable `{}` has undeclared sort `{}`",
                    v.name, v.sort
                )));
            }
            Ok(&v.sort)
        }
        Term::App { symbol, args } => {
            let (_, f) = signature
                .function(symbol)
                .ok_or_else(|| Error::UnknownSymbol(symbol.clone()))?;
            if f.arity() != args.len() {
                return Err(Error::ArityMismatch {
                    symbol: symbol.clone(),
                    expected: f.arity(),
                    got: args.len(),
                });
            }
            for (arg, expected) in args.iter().zip(&f.args) {
                let got = check_term(signature, arg)?;
                if got != expected {
                    return Err(Error::SortMismatch(format!(
                        "argument of `{symbol}` has sort `{got}`, expected `{expected}`"
                    )));
                }
            }
            Ok(&f.result)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Prop(String),
    Eq(Term, Term),
    Neq(Term, Term),
    Pred(String, Vec<Term>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Exists(Variable, Box<Formula>),
}

impl Formula {
    pub fn prop(name: impl Into<String>) -> Formula {
        Formula::Prop(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn exists(v: Variable, body: Formula) -> Formula {
        Formula::Exists(v, Box::new(body))
    }

    /// Right-nested conjunction; the empty conjunction is `true`.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut parts: Vec<Formula> = parts.into_iter().collect();
        match parts.pop() {
            None => Formula::True,
            Some(last) => parts
                .into_iter()
                .rev()
                .fold(last, |acc, f| Formula::and(f, acc)),
        }
    }

    /// Free variables in order of first occurrence.
    pub fn free_variables(&self) -> Vec<Variable> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Variable>, out: &mut Vec<Variable>) {
        let push_term = |t: &Term, bound: &Vec<Variable>, out: &mut Vec<Variable>| {
            for v in t.variables() {
                if !bound.contains(&v) && !out.contains(&v) {
                    out.push(v);
                }
            }
        };
        match self {
            Formula::True | Formula::False | Formula::Prop(_) => {}
            Formula::Eq(a, b) | Formula::Neq(a, b) => {
                push_term(a, bound, out);
                push_term(b, bound, out);
            }
            Formula::Pred(_, args) => args.iter().for_each(|t| push_term(t, bound, out)),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::Exists(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_variables().is_empty()
    }

    /// Only propositions, `true`, `false` and the Boolean connectives.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Prop(_) => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
            Formula::Not(a) => a.is_propositional(),
            _ => false,
        }
    }

    /// Only `true`, `false`, `&`, `|`, `exists`, `=`, `!=` and atoms.
    pub fn is_coherent(&self) -> bool {
        match self {
            Formula::True
            | Formula::False
            | Formula::Prop(_)
            | Formula::Eq(..)
            | Formula::Neq(..)
            | Formula::Pred(..) => true,
            Formula::And(a, b) | Formula::Or(a, b) => a.is_coherent() && b.is_coherent(),
            Formula::Exists(_, body) => body.is_coherent(),
            Formula::Implies(..) | Formula::Not(_) => false,
        }
    }

    /// Maximum nesting of existential quantifiers.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            Formula::Not(a) => a.quantifier_depth(),
            Formula::Exists(_, body) => 1 + body.quantifier_depth(),
            _ => 0,
        }
    }
}

/// Checks a formula is well-typed over `signature` with its free
/// variables drawn from `context`.
pub fn check_formula(signature: &Signature, formula: &Formula, context: &[Variable]) -> Result<()> {
    fn same_sort(signature: &Signature, a: &Term, b: &Term) -> Result<()> {
        let sa = check_term(signature, a)?;
        let sb = check_term(signature, b)?;
        if sa != sb {
            return Err(Error::SortMismatch(format!(
                "equation sides have sorts `{sa}` and `{sb}`"
            )));
        }
        Ok(())
    }
    match formula {
        Formula::True | Formula::False => {}
        Formula::Prop(p) => {
            signature
                .proposition(p)
                .ok_or_else(|| Error::UnknownSymbol(p.clone()))?;
        }
        Formula::Eq(a, b) | Formula::Neq(a, b) => same_sort(signature, a, b)?,
        Formula::Pred(name, args) => {
            let (_, p) = signature
                .predicate(name)
                .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
            if p.arity() != args.len() {
                return Err(Error::ArityMismatch {
                    symbol: name.clone(),
                    expected: p.arity(),
                    got: args.len(),
                });
            }
            for (arg, expected) in args.iter().zip(&p.args) {
                let got = check_term(signature, arg)?;
                if got != expected {
                    return Err(Error::SortMismatch(format!(
                        "argument of `{name}` has sort `{got}`, expected `{expected}`"
                    )));
                }
            }
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            check_formula(signature, a, context)?;
            check_formula(signature, b, context)?;
        }
        Formula::Not(a) => check_formula(signature, a, context)?,
        Formula::Exists(v, body) => {
            if signature.sort_index(&v.sort).is_none() {
                return Err(Error::SortMismatch(format!(
                    "bound variable `{}` has undeclared sort `{}`",
                    v.name, v.sort
                )));
            }
            let mut inner = context.to_vec();
            inner.retain(|w| w.name != v.name);
            inner.push(v.clone());
            check_formula(signature, body, &inner)?;
        }
    }
    if let Some(v) = formula
        .free_variables()
        .into_iter()
        .find(|v| !context.contains(v))
    {
        return Err(Error::SortMismatch(format!(
            "free variable `{}:{}` is not in the context",
            v.name, v.sort
        )));
    }
    Ok(())
}

/// The logical fragment a theory lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fragment {
    Propositional,
    Equational,
    Coherent,
}

impl Fragment {
    pub const ALL: [Fragment; 3] = [
        Fragment::Propositional,
        Fragment::Equational,
        Fragment::Coherent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fragment::Propositional => "PROPOSITIONAL",
            Fragment::Equational => "EQUATIONAL",
            Fragment::Coherent => "COHERENT",
        }
    }

    fn admits_signature(self, sig: &Signature) -> bool {
        match self {
            Fragment::Propositional => sig.sorts.is_empty(),
            Fragment::Equational => sig.predicates.is_empty() && sig.propositions.is_empty(),
            Fragment::Coherent => true,
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AxiomBody {
    Formula(Formula),
    Sequent { premise: Formula, conclusion: Formula },
}

/// An axiom in context: a formula (universally closed over `context`) or a
/// sequent `premise |- conclusion` sharing `context`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Axiom {
    pub context: Vec<Variable>,
    pub body: AxiomBody,
}

impl Axiom {
    /// Axiom whose context is the free variables of `formula`.
    pub fn formula(formula: Formula) -> Axiom {
        Axiom {
            context: formula.free_variables(),
            body: AxiomBody::Formula(formula),
        }
    }

    pub fn sequent(premise: Formula, conclusion: Formula) -> Axiom {
        let mut context = premise.free_variables();
        for v in conclusion.free_variables() {
            if !context.contains(&v) {
                context.push(v);
            }
        }
        Axiom {
            context,
            body: AxiomBody::Sequent {
                premise,
                conclusion,
            },
        }
    }

    /// `(premise, conclusion)`, reading a bare formula as `true |- formula`.
    pub fn as_sequent(&self) -> (&Formula, &Formula) {
        match &self.body {
            AxiomBody::Formula(f) => (&Formula::True, f),
            AxiomBody::Sequent {
                premise,
                conclusion,
            } => (premise, conclusion),
        }
    }

    pub fn as_equation(&self) -> Option<(&Term, &Term)> {
        match &self.body {
            AxiomBody::Formula(Formula::Eq(a, b)) => Some((a, b)),
            _ => None,
        }
    }

    pub fn belongs_to(&self, fragment: Fragment) -> bool {
        match fragment {
            Fragment::Equational => self.as_equation().is_some(),
            Fragment::Propositional => {
                let (p, c) = self.as_sequent();
                p.is_propositional() && c.is_propositional()
            }
            Fragment::Coherent => {
                let (p, c) = self.as_sequent();
                p.is_coherent() && c.is_coherent()
            }
        }
    }

    fn check(&self, signature: &Signature) -> Result<()> {
        let (premise, conclusion) = self.as_sequent();
        check_formula(signature, premise, &self.context)?;
        check_formula(signature, conclusion, &self.context)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    name: String,
    signature: Signature,
    axioms: Vec<Axiom>,
    fragment: Fragment,
}

impl Theory {
    /// Validates every axiom and tags the theory with the least fragment
    /// (in the order propositional, equational, coherent) that admits the
    /// signature and all axioms.
    pub fn new(name: impl Into<String>, signature: Signature, axioms: Vec<Axiom>) -> Result<Theory> {
        for axiom in &axioms {
            axiom.check(&signature)?;
        }
        let fragment = Fragment::ALL
            .into_iter()
            .find(|fr| fr.admits_signature(&signature) && axioms.iter().all(|a| a.belongs_to(*fr)))
            .ok_or_else(|| {
                let culprit = axioms
                    .iter()
                    .find(|a| !Fragment::ALL.iter().any(|fr| a.belongs_to(*fr)))
                    .map(|a| print::axiom_to_string(a))
                    .unwrap_or_else(|| "axioms mix incompatible fragments".to_string());
                Error::FragmentViolation(format!(
                    "no supported fragment admits `{culprit}`"
                ))
            })?;
        Ok(Theory {
            name: name.into(),
            signature,
            axioms,
            fragment,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn fragment(&self) -> Fragment {
        self.fragment
    }

    /// The same theory with one more axiom, re-tagged.
    pub fn with_axiom(&self, axiom: Axiom) -> Result<Theory> {
        let mut axioms = self.axioms.clone();
        axioms.push(axiom);
        Theory::new(self.name.clone(), self.signature.clone(), axioms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn magma() -> Signature {
        let mut sig = Signature::new();
        sig.add_sort("S").unwrap();
        sig.add_function("e", &[], "S").unwrap();
        sig.add_function("m", &["S", "S"], "S").unwrap();
        sig
    }

    #[test]
    fn check_term_examples() {
        let sig = magma();
        let x = Term::var("x", "S");
        let t = Term::app("m", vec![Term::constant("e"), x.clone()]);
        assert_eq!(check_term(&sig, &t).unwrap(), "S");
        assert_eq!(check_term(&sig, &x).unwrap(), "S");
        let bad = Term::app("m", vec![Term::constant("e")]);
        assert_eq!(
            check_term(&sig, &bad),
            Err(Error::ArityMismatch {
                symbol: "m".into(),
                expected: 2,
                got: 1
            })
        );
        assert!(matches!(
            check_term(&sig, &Term::constant("k")),
            Err(Error::UnknownSymbol(_))
        ));
    }

    #[test]
    fn undeclared_sort_in_arity() {
        let mut sig = Signature::new();
        sig.add_sort("S").unwrap();
        assert!(matches!(
            sig.add_function("f", &["S"], "T"),
            Err(Error::SortMismatch(_))
        ));
    }

    #[test]
    fn names_unique_across_classes() {
        let mut sig = magma();
        assert_eq!(sig.add_proposition("m"), Err(Error::DuplicateSymbol("m".into())));
        assert_eq!(sig.add_sort("e"), Err(Error::DuplicateSymbol("e".into())));
    }

    #[test]
    fn fragment_rises_to_coherent() {
        let sig = magma();
        let x = Term::var("x", "S");
        let eq = Axiom::formula(Formula::Eq(
            Term::app("m", vec![Term::constant("e"), x.clone()]),
            x.clone(),
        ));
        let t = Theory::new("G", sig, vec![eq]).unwrap();
        assert_eq!(t.fragment(), Fragment::Equational);
        let y = Variable::new("y", "S");
        let nontrivial = Axiom::sequent(
            Formula::True,
            Formula::exists(
                y.clone(),
                Formula::Neq(Term::Var(y), Term::constant("e")),
            ),
        );
        assert_eq!(t.with_axiom(nontrivial).unwrap().fragment(), Fragment::Coherent);
    }

    #[test]
    fn negation_outside_every_fragment() {
        let mut sig = Signature::new();
        sig.add_sort("S").unwrap();
        sig.add_predicate("P", &["S"]).unwrap();
        let ax = Axiom::formula(Formula::not(Formula::Pred(
            "P".into(),
            vec![Term::var("x", "S")],
        )));
        assert!(matches!(
            Theory::new("N", sig, vec![ax]),
            Err(Error::FragmentViolation(_))
        ));
    }

    #[test]
    fn context_must_cover_free_variables() {
        let sig = magma();
        let f = Formula::Eq(Term::var("x", "S"), Term::constant("e"));
        assert!(check_formula(&sig, &f, &[]).is_err());
        assert!(check_formula(&sig, &f, &[Variable::new("x", "S")]).is_ok());
    }
}
