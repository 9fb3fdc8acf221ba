//! Decidable coherent theories over finite structures.
//!
//! Formulas are built from `true`, `false`, atoms, `=`, `!=`, `&`, `|` and
//! `exists`. Axioms are sequents `φ |- ψ` read as universally closed over
//! their shared context. Models up to a size bound form a groupoid whose
//! morphisms are the isomorphisms; sentences index a basis of opens on it.

mod enumerate;
mod export;
mod groupoid;
mod sentences;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::{pow_sat, Limits};
use crate::syntax::{check_formula, Axiom, Formula, Signature, Term, Theory, Variable};

pub use enumerate::{enumerate_structures, SizeBounds};
pub use export::{
    basis_to_json, groupoid_to_json, structures_to_json, validate_basis_json,
    validate_groupoid_json, validate_structures_json,
};
pub use groupoid::{
    basic_open, groupoid, is_isomorphism, isomorphisms, BasisOpen, Isomorphism, ModelGroupoid,
};
pub use sentences::{sentences, separating_sentence, theory_trace, SentenceBounds};

/// Sort indices of every symbol, resolved once per signature.
#[derive(Debug)]
pub(crate) struct Shape {
    signature: Signature,
    fn_args: Vec<Vec<usize>>,
    fn_result: Vec<usize>,
    pred_args: Vec<Vec<usize>>,
}

impl Shape {
    pub(crate) fn new(signature: &Signature) -> Arc<Shape> {
        let sort = |s: &String| signature.sort_index(s).expect("validated signature");
        Arc::new(Shape {
            signature: signature.clone(),
            fn_args: signature.functions().iter().map(|f| f.args.iter().map(sort).collect()).collect(),
            fn_result: signature.functions().iter().map(|f| sort(&f.result)).collect(),
            pred_args: signature.predicates().iter().map(|p| p.args.iter().map(sort).collect()).collect(),
        })
    }

    fn same(a: &Arc<Shape>, b: &Arc<Shape>) -> bool {
        Arc::ptr_eq(a, b) || a.signature == b.signature
    }
}

/// Number of argument tuples over `sorts`.
fn cells(sizes: &[usize], sorts: &[usize]) -> u128 {
    sorts.iter().fold(1u128, |acc, &s| acc.saturating_mul(sizes[s] as u128))
}

fn index_of(sizes: &[usize], sorts: &[usize], values: impl Iterator<Item = usize>) -> usize {
    sorts.iter().zip(values).fold(0, |acc, (&s, v)| acc * sizes[s] + v)
}

fn tuple_of(sizes: &[usize], sorts: &[usize], mut index: usize, out: &mut [usize]) {
    for (slot, &s) in out.iter_mut().zip(sorts).rev() {
        *slot = index % sizes[s];
        index /= sizes[s];
    }
}

/// A finite many-sorted structure: a carrier size per sort, a total table
/// per function symbol, a relation per predicate and a truth value per
/// proposition.
///
/// Tables are indexed by argument tuples in mixed radix, first argument
/// most significant. Structures over one signature compare by sizes, then
/// function tables, then relations, then propositions.
#[derive(Clone)]
pub struct FiniteStructure {
    shape: Arc<Shape>,
    sizes: Vec<usize>,
    functions: Vec<Vec<usize>>,
    relations: Vec<Vec<bool>>,
    propositions: Vec<bool>,
}

impl FiniteStructure {
    pub fn new(
        signature: &Signature,
        sizes: Vec<usize>,
        functions: Vec<Vec<usize>>,
        relations: Vec<Vec<bool>>,
        propositions: Vec<bool>,
    ) -> Result<Self> {
        Self::with_shape(Shape::new(signature), sizes, functions, relations, propositions)
    }

    fn with_shape(
        shape: Arc<Shape>,
        sizes: Vec<usize>,
        functions: Vec<Vec<usize>>,
        relations: Vec<Vec<bool>>,
        propositions: Vec<bool>,
    ) -> Result<Self> {
        let sig = &shape.signature;
        let bad = |what: String| Err(Error::InvalidStructure(what));
        if sizes.len() != sig.sorts().len() {
            return bad(format!("{} carrier sizes for {} sorts", sizes.len(), sig.sorts().len()));
        }
        if functions.len() != sig.functions().len()
            || relations.len() != sig.predicates().len()
            || propositions.len() != sig.propositions().len()
        {
            return bad("tables do not match the signature".into());
        }
        for (i, t) in functions.iter().enumerate() {
            let name = &sig.functions()[i].name;
            if t.len() as u128 != cells(&sizes, &shape.fn_args[i]) {
                return bad(format!("table of `{name}` has {} entries", t.len()));
            }
            let range = sizes[shape.fn_result[i]];
            if let Some(v) = t.iter().find(|&&v| v >= range) {
                return bad(format!("table of `{name}` has value {v} outside 0..{range}"));
            }
        }
        for (i, r) in relations.iter().enumerate() {
            if r.len() as u128 != cells(&sizes, &shape.pred_args[i]) {
                return bad(format!(
                    "relation `{}` has {} entries",
                    sig.predicates()[i].name,
                    r.len()
                ));
            }
        }
        Ok(FiniteStructure {
            shape,
            sizes,
            functions,
            relations,
            propositions,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.shape.signature
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn functions(&self) -> &[Vec<usize>] {
        &self.functions
    }

    pub fn relations(&self) -> &[Vec<bool>] {
        &self.relations
    }

    pub fn propositions(&self) -> &[bool] {
        &self.propositions
    }

    pub fn apply(&self, function: usize, args: &[usize]) -> usize {
        let sorts = &self.shape.fn_args[function];
        self.functions[function][index_of(&self.sizes, sorts, args.iter().copied())]
    }

    pub fn holds(&self, predicate: usize, args: &[usize]) -> bool {
        let sorts = &self.shape.pred_args[predicate];
        self.relations[predicate][index_of(&self.sizes, sorts, args.iter().copied())]
    }

    fn key(&self) -> (&[usize], &[Vec<usize>], &[Vec<bool>], &[bool]) {
        (&self.sizes, &self.functions, &self.relations, &self.propositions)
    }

    fn term(&self, t: &CTerm, env: &[usize]) -> usize {
        match t {
            CTerm::Var(i) => env[*i],
            CTerm::App(f, args) => {
                let sorts = &self.shape.fn_args[*f];
                let idx = index_of(&self.sizes, sorts, args.iter().map(|a| self.term(a, env)));
                self.functions[*f][idx]
            }
        }
    }

    fn eval(&self, phi: &CFormula, env: &mut Vec<usize>) -> bool {
        match phi {
            CFormula::True => true,
            CFormula::False => false,
            CFormula::Prop(p) => self.propositions[*p],
            CFormula::Eq(a, b) => self.term(a, env) == self.term(b, env),
            CFormula::Neq(a, b) => self.term(a, env) != self.term(b, env),
            CFormula::Pred(p, args) => {
                let sorts = &self.shape.pred_args[*p];
                let idx = index_of(&self.sizes, sorts, args.iter().map(|a| self.term(a, env)));
                self.relations[*p][idx]
            }
            CFormula::And(a, b) => self.eval(a, env) && self.eval(b, env),
            CFormula::Or(a, b) => self.eval(a, env) || self.eval(b, env),
            CFormula::Exists(sort, body) => {
                for v in 0..self.sizes[*sort] {
                    env.push(v);
                    let found = self.eval(body, env);
                    env.pop();
                    if found {
                        return true;
                    }
                }
                false
            }
        }
    }

    /// Every assignment of `context` satisfying `premise` satisfies
    /// `conclusion`.
    fn eval_sequent(&self, s: &CSequent) -> bool {
        let k = s.context.len();
        if s.context.iter().any(|&sort| self.sizes[sort] == 0) {
            return true;
        }
        let mut env = vec![0; k];
        loop {
            if self.eval(&s.premise, &mut env) && !self.eval(&s.conclusion, &mut env) {
                return false;
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return true;
                }
                i -= 1;
                env[i] += 1;
                if env[i] < self.sizes[s.context[i]] {
                    break;
                }
                env[i] = 0;
            }
        }
    }

    /// Cost of evaluating a formula with `free` variables of the given sorts
    /// and `depth` nested quantifiers, against the budget.
    fn check_cost(&self, free: &[usize], depth: usize, limits: &Limits) -> Result<()> {
        let widest = self.sizes.iter().copied().max().unwrap_or(1);
        limits.check(
            "satisfaction assignments",
            cells(&self.sizes, free).saturating_mul(pow_sat(widest, depth)),
        )
    }

    /// Truth of a formula built from propositions with any connectives.
    fn prop_value(&self, phi: &Formula) -> Result<bool> {
        Ok(match phi {
            Formula::True => true,
            Formula::False => false,
            Formula::Prop(p) => {
                let i = self.signature().proposition(p).ok_or_else(|| Error::UnknownSymbol(p.clone()))?;
                self.propositions[i]
            }
            Formula::And(a, b) => self.prop_value(a)? && self.prop_value(b)?,
            Formula::Or(a, b) => self.prop_value(a)? || self.prop_value(b)?,
            Formula::Implies(a, b) => !self.prop_value(a)? || self.prop_value(b)?,
            Formula::Not(a) => !self.prop_value(a)?,
            _ => return Err(Error::FragmentViolation(format!("`{phi}` is not propositional"))),
        })
    }

    /// Propositional axioms may use `->` and `~`; all others must be coherent.
    pub fn satisfies_axiom(&self, axiom: &Axiom, limits: &Limits) -> Result<bool> {
        let (premise, conclusion) = axiom.as_sequent();
        if premise.is_propositional() && conclusion.is_propositional() {
            return Ok(!self.prop_value(premise)? || self.prop_value(conclusion)?);
        }
        let s = CSequent::new(&self.shape, axiom)?;
        self.check_cost(&s.context, s.depth, limits)?;
        Ok(self.eval_sequent(&s))
    }

    /// Every axiom of `theory` holds, each universally closed over its context.
    pub fn is_model(&self, theory: &Theory, limits: &Limits) -> Result<bool> {
        if theory.signature() != self.signature() {
            return Err(Error::SignatureMismatch(format!(
                "structure is not over the signature of `{}`",
                theory.name()
            )));
        }
        for ax in theory.axioms() {
            if !self.satisfies_axiom(ax, limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl PartialEq for FiniteStructure {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for FiniteStructure {}

impl PartialOrd for FiniteStructure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteStructure {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Debug for FiniteStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteStructure")
            .field("sizes", &self.sizes)
            .field("functions", &self.functions)
            .field("relations", &self.relations)
            .field("propositions", &self.propositions)
            .finish()
    }
}

/// Terms with variables resolved to environment slots.
#[derive(Debug, Clone)]
enum CTerm {
    Var(usize),
    App(usize, Vec<CTerm>),
}

#[derive(Debug, Clone)]
enum CFormula {
    True,
    False,
    Prop(usize),
    Eq(CTerm, CTerm),
    Neq(CTerm, CTerm),
    Pred(usize, Vec<CTerm>),
    And(Box<CFormula>, Box<CFormula>),
    Or(Box<CFormula>, Box<CFormula>),
    Exists(usize, Box<CFormula>),
}

fn compile_term(shape: &Shape, t: &Term, scope: &[Variable]) -> Result<CTerm> {
    match t {
        Term::Var(v) => scope
            .iter()
            .rposition(|w| w == v)
            .map(CTerm::Var)
            .ok_or_else(|| Error::UnknownSymbol(v.name.clone())),
        Term::App { symbol, args } => {
            let (i, _) = shape
                .signature
                .function(symbol)
                .ok_or_else(|| Error::UnknownSymbol(symbol.clone()))?;
            let args = args.iter().map(|a| compile_term(shape, a, scope)).collect::<Result<_>>()?;
            Ok(CTerm::App(i, args))
        }
    }
}

/// Compiles a well-typed coherent formula; `scope` holds the variables
/// bound so far, outermost first.
fn compile(shape: &Shape, phi: &Formula, scope: &mut Vec<Variable>) -> Result<CFormula> {
    let sig = &shape.signature;
    Ok(match phi {
        Formula::True => CFormula::True,
        Formula::False => CFormula::False,
        Formula::Prop(p) => CFormula::Prop(
            sig.proposition(p)
                .ok_or_else(|| Error::UnknownSymbol(p.clone()))?,
        ),
        Formula::Eq(a, b) => CFormula::Eq(compile_term(shape, a, scope)?, compile_term(shape, b, scope)?),
        Formula::Neq(a, b) => {
            CFormula::Neq(compile_term(shape, a, scope)?, compile_term(shape, b, scope)?)
        }
        Formula::Pred(p, args) => {
            let (i, _) = sig
                .predicate(p)
                .ok_or_else(|| Error::UnknownSymbol(p.clone()))?;
            let args = args.iter().map(|a| compile_term(shape, a, scope)).collect::<Result<_>>()?;
            CFormula::Pred(i, args)
        }
        Formula::And(a, b) => CFormula::And(
            Box::new(compile(shape, a, scope)?),
            Box::new(compile(shape, b, scope)?),
        ),
        Formula::Or(a, b) => CFormula::Or(
            Box::new(compile(shape, a, scope)?),
            Box::new(compile(shape, b, scope)?),
        ),
        Formula::Exists(v, body) => {
            let sort = sig
                .sort_index(&v.sort)
                .ok_or_else(|| Error::SortMismatch(format!("sort `{}` is not declared", v.sort)))?;
            scope.push(v.clone());
            let body = compile(shape, body, scope);
            scope.pop();
            CFormula::Exists(sort, Box::new(body?))
        }
        Formula::Implies(..) | Formula::Not(_) => {
            return Err(Error::FragmentViolation(format!("`{phi}` is not coherent")))
        }
    })
}

/// A closed coherent formula compiled against one signature.
#[derive(Debug, Clone)]
pub(crate) struct Sentence {
    shape: Arc<Shape>,
    formula: CFormula,
    depth: usize,
}

impl Sentence {
    pub(crate) fn new(shape: &Arc<Shape>, phi: &Formula) -> Result<Sentence> {
        if !check_fragment(phi) {
            return Err(Error::FragmentViolation(format!("`{phi}` is not coherent")));
        }
        if let Some(v) = phi.free_variables().first() {
            return Err(Error::FragmentViolation(format!(
                "`{phi}` is not a sentence: `{}` is free",
                v.name
            )));
        }
        check_formula(&shape.signature, phi, &[])?;
        Ok(Sentence {
            shape: shape.clone(),
            formula: compile(shape, phi, &mut Vec::new())?,
            depth: phi.quantifier_depth(),
        })
    }

    pub(crate) fn eval(&self, m: &FiniteStructure, limits: &Limits) -> Result<bool> {
        if !Shape::same(&self.shape, &m.shape) {
            return Err(Error::SignatureMismatch(
                "sentence and structure have different signatures".into(),
            ));
        }
        m.check_cost(&[], self.depth, limits)?;
        Ok(m.eval(&self.formula, &mut Vec::new()))
    }
}

#[derive(Debug, Clone)]
pub(crate) struct CSequent {
    context: Vec<usize>,
    premise: CFormula,
    conclusion: CFormula,
    depth: usize,
}

impl CSequent {
    pub(crate) fn new(shape: &Shape, axiom: &Axiom) -> Result<CSequent> {
        let (p, c) = axiom.as_sequent();
        if !p.is_coherent() || !c.is_coherent() {
            return Err(Error::FragmentViolation(format!("axiom `{axiom}` is not coherent")));
        }
        let context = axiom
            .context
            .iter()
            .map(|v| {
                shape.signature.sort_index(&v.sort).ok_or_else(|| {
                    Error::SortMismatch(format!("sort `{}` is not declared", v.sort))
                })
            })
            .collect::<Result<_>>()?;
        let mut scope = axiom.context.clone();
        Ok(CSequent {
            context,
            premise: compile(shape, p, &mut scope)?,
            conclusion: compile(shape, c, &mut scope)?,
            depth: p.quantifier_depth().max(c.quantifier_depth()),
        })
    }
}

/// `true` iff `phi` uses only `true`, `false`, atoms, `=`, `!=`, `&`, `|`
/// and `exists`.
pub fn check_fragment(phi: &Formula) -> bool {
    phi.is_coherent()
}

/// Tarskian satisfaction of a closed coherent sentence, searching every
/// witness for each `exists`.
pub fn satisfies_fo(m: &FiniteStructure, phi: &Formula, limits: &Limits) -> Result<bool> {
    Sentence::new(&m.shape, phi)?.eval(m, limits)
}
