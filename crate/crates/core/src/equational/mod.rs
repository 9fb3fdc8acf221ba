//! Single-sorted algebraic theories, their finite models and the syntactic
//! category.
//!
//! Carriers are `0..n`. An operation of arity `k` is a table of length
//! `n^k` indexed in mixed radix, first argument most significant.

mod export;
mod functor;
mod search;
mod syn;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::{pow_sat, Limits};
use crate::syntax::{Fragment, Term, Theory, Variable};

pub use export::{
    category_dot, homomorphisms_to_json, models_to_json, syn_hom_to_json,
    validate_homomorphisms_json, validate_models_json, validate_syn_json,
};
pub use functor::{
    model_as_functor, naturality_check, naturality_failure, FunctorArrow, FunctorTable,
    NaturalityFailure,
};
pub use search::{canonical_form, enumerate_models, enumerate_up_to_iso, iso_classes, IsoClass};
pub use syn::{Backend, SynCategory, SynMorphism, SynOptions, TermClass};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Operation {
    pub name: String,
    pub arity: usize,
}

/// `lhs = rhs` in the given context, read universally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub context: Vec<Variable>,
    pub lhs: Term,
    pub rhs: Term,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// A single-sorted theory whose axioms are all equations.
#[derive(Debug, Clone)]
pub struct AlgebraicTheory {
    theory: Theory,
    sort: String,
    operations: Arc<[Operation]>,
    equations: Vec<Equation>,
}

impl AlgebraicTheory {
    pub fn new(theory: Theory) -> Result<Self> {
        if theory.fragment() != Fragment::Equational {
            return Err(Error::FragmentViolation(format!(
                "theory `{}` is {}, not EQUATIONAL",
                theory.name(),
                theory.fragment()
            )));
        }
        let sig = theory.signature();
        let [sort] = sig.sorts() else {
            return Err(Error::Unsupported(format!(
                "algebraic theories have exactly one sort, `{}` has {}",
                theory.name(),
                sig.sorts().len()
            )));
        };
        let operations = sig
            .functions()
            .iter()
            .map(|f| Operation {
                name: f.name.clone(),
                arity: f.arity(),
            })
            .collect();
        let equations = theory
            .axioms()
            .iter()
            .map(|ax| {
                let (lhs, rhs) = ax.as_equation().expect("equational fragment");
                Equation {
                    context: ax.context.clone(),
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                }
            })
            .collect();
        Ok(AlgebraicTheory {
            sort: sort.clone(),
            theory,
            operations,
            equations,
        })
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn name(&self) -> &str {
        self.theory.name()
    }

    pub fn sort(&self) -> &str {
        &self.sort
    }

    pub fn operations(&self) -> &[Operation] {
        &self.operations
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.operations.iter().position(|o| o.name == name)
    }

    /// The context variable `x<i+1>`.
    pub fn variable(&self, i: usize) -> Variable {
        Variable::new(format!("x{}", i + 1), self.sort.clone())
    }

    pub fn context(&self, n: usize) -> Vec<Variable> {
        (0..n).map(|i| self.variable(i)).collect()
    }

    pub(crate) fn compile(&self, t: &Term, context: &[Variable]) -> Result<CTerm> {
        match t {
            Term::Var(v) => context
                .iter()
                .position(|w| w == v)
                .map(CTerm::Var)
                .ok_or_else(|| Error::UnknownSymbol(v.name.clone())),
            Term::App { symbol, args } => {
                let i = self
                    .op_index(symbol)
                    .ok_or_else(|| Error::UnknownSymbol(symbol.clone()))?;
                if args.len() != self.operations[i].arity {
                    return Err(Error::ArityMismatch {
                        symbol: symbol.clone(),
                        expected: self.operations[i].arity,
                        got: args.len(),
                    });
                }
                let args = args
                    .iter()
                    .map(|a| self.compile(a, context))
                    .collect::<Result<_>>()?;
                Ok(CTerm::App(i, args))
            }
        }
    }
}

/// A term with variables and operations resolved to indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum CTerm {
    Var(usize),
    App(usize, Vec<CTerm>),
}

pub(crate) fn encode(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * n + a)
}

pub(crate) fn decode(mut index: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
}

/// Steps `tuple` to the next element of `n^k` in lexicographic order.
pub(crate) fn next_tuple(tuple: &mut [usize], n: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return true;
        }
        *slot = 0;
    }
    false
}

/// A finite model candidate: a carrier size and one table per operation.
/// Ordering is lexicographic on the tables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteAlgebra {
    size: usize,
    operations: Arc<[Operation]>,
    tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    pub fn new(operations: &[Operation], size: usize, tables: Vec<Vec<usize>>) -> Result<Self> {
        if tables.len() != operations.len() {
            return Err(Error::InvalidStructure("one table per operation".into()));
        }
        for (op, t) in operations.iter().zip(&tables) {
            let want = pow_sat(size, op.arity);
            if t.len() as u128 != want || t.iter().any(|&v| v >= size) {
                return Err(Error::InvalidStructure(format!(
                    "table of `{}` must have {want} entries below {size}",
                    op.name
                )));
            }
        }
        Ok(FiniteAlgebra {
            size,
            operations: operations.into(),
            tables,
        })
    }

    pub(crate) fn from_parts(size: usize, operations: Arc<[Operation]>, tables: Vec<Vec<usize>>) -> Self {
        FiniteAlgebra {
            size,
            operations,
            tables,
        }
    }

    /// The one-element algebra.
    pub fn trivial(operations: &[Operation]) -> Self {
        let tables = operations.iter().map(|_| vec![0]).collect();
        FiniteAlgebra::new(operations, 1, tables).expect("trivial tables are total")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn operations(&self) -> &[Operation] {
        &self.operations
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][encode(args, self.size)]
    }

    pub(crate) fn eval(&self, t: &CTerm, env: &[usize]) -> usize {
        match t {
            CTerm::Var(i) => env[*i],
            CTerm::App(op, args) => {
                let idx = args
                    .iter()
                    .fold(0, |acc, a| acc * self.size + self.eval(a, env));
                self.tables[*op][idx]
            }
        }
    }

    pub fn eval_term(
        &self,
        theory: &AlgebraicTheory,
        t: &Term,
        context: &[Variable],
        env: &[usize],
    ) -> Result<usize> {
        self.check_theory(theory)?;
        Ok(self.eval(&theory.compile(t, context)?, env))
    }

    fn check_theory(&self, theory: &AlgebraicTheory) -> Result<()> {
        if *self.operations != *theory.operations {
            return Err(Error::SignatureMismatch(format!(
                "algebra is not over the signature of `{}`",
                theory.name()
            )));
        }
        Ok(())
    }

    /// Both sides agree under all `n^k` assignments of the context.
    pub fn satisfies(&self, theory: &AlgebraicTheory, eq: &Equation, limits: &Limits) -> Result<bool> {
        self.check_theory(theory)?;
        let k = eq.context.len();
        limits.check("equation instances", pow_sat(self.size, k))?;
        let lhs = theory.compile(&eq.lhs, &eq.context)?;
        let rhs = theory.compile(&eq.rhs, &eq.context)?;
        if self.size == 0 && k > 0 {
            return Ok(true);
        }
        let mut env = vec![0; k];
        loop {
            if self.eval(&lhs, &env) != self.eval(&rhs, &env) {
                return Ok(false);
            }
            if !next_tuple(&mut env, self.size) {
                return Ok(true);
            }
        }
    }

    pub fn is_model(&self, theory: &AlgebraicTheory, limits: &Limits) -> Result<bool> {
        for eq in theory.equations() {
            if !self.satisfies(theory, eq, limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The isomorphic copy along the bijection `sigma` (old element ↦ new).
    pub fn permuted(&self, sigma: &[usize]) -> FiniteAlgebra {
        let n = self.size;
        let mut inverse = vec![0; n];
        for (a, &b) in sigma.iter().enumerate() {
            inverse[b] = a;
        }
        let tables = self
            .operations
            .iter()
            .zip(&self.tables)
            .map(|(op, t)| {
                let mut args = vec![0; op.arity];
                (0..t.len())
                    .map(|idx| {
                        decode(idx, n, &mut args);
                        let old: Vec<usize> = args.iter().map(|&a| inverse[a]).collect();
                        sigma[t[encode(&old, n)]]
                    })
                    .collect()
            })
            .collect();
        FiniteAlgebra::from_parts(n, self.operations.clone(), tables)
    }

    fn check_same_signature(&self, other: &FiniteAlgebra) -> Result<()> {
        if self.operations != other.operations {
            return Err(Error::SignatureMismatch(
                "algebras have different operations".into(),
            ));
        }
        Ok(())
    }
}

/// Whether `map` commutes with every operation on every argument tuple.
pub fn is_homomorphism(source: &FiniteAlgebra, target: &FiniteAlgebra, map: &[usize]) -> bool {
    if source.operations != target.operations
        || map.len() != source.size
        || map.iter().any(|&b| b >= target.size)
    {
        return false;
    }
    source.operations.iter().enumerate().all(|(op, o)| {
        let mut args = vec![0; o.arity];
        (0..source.tables[op].len()).all(|idx| {
            decode(idx, source.size, &mut args);
            let image: Vec<usize> = args.iter().map(|&a| map[a]).collect();
            map[source.tables[op][idx]] == target.apply(op, &image)
        })
    })
}

/// A carrier map commuting with all operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: Arc<FiniteAlgebra>,
    target: Arc<FiniteAlgebra>,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(source: Arc<FiniteAlgebra>, target: Arc<FiniteAlgebra>, map: Vec<usize>) -> Result<Self> {
        source.check_same_signature(&target)?;
        if !is_homomorphism(&source, &target, &map) {
            return Err(Error::NotAHomomorphism(format!("{map:?}")));
        }
        Ok(Homomorphism { source, target, map })
    }

    pub fn identity(algebra: Arc<FiniteAlgebra>) -> Self {
        Homomorphism {
            map: (0..algebra.size).collect(),
            target: algebra.clone(),
            source: algebra,
        }
    }

    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        if self.target != next.source {
            return Err(Error::SignatureMismatch(
                "homomorphisms are not composable".into(),
            ));
        }
        Ok(Homomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&a| next.map[a]).collect(),
        })
    }
}

/// All homomorphisms, in lexicographic order of their maps.
///
/// Images are chosen element by element; each commutation constraint is
/// checked as soon as every element it mentions has an image.
pub fn homomorphisms(
    source: &FiniteAlgebra,
    target: &FiniteAlgebra,
    limits: &Limits,
) -> Result<Vec<Homomorphism>> {
    source.check_same_signature(target)?;
    let (m, n) = (source.size, target.size);
    limits.check("carrier maps", pow_sat(n, m))?;
    // constraints[i]: (op, args, result) whose largest element is i
    let mut constraints: Vec<Vec<(usize, Vec<usize>, usize)>> = vec![Vec::new(); m];
    for (op, o) in source.operations.iter().enumerate() {
        let mut args = vec![0; o.arity];
        for idx in 0..source.tables[op].len() {
            decode(idx, m, &mut args);
            let out = source.tables[op][idx];
            let last = args.iter().copied().fold(out, usize::max);
            constraints[last].push((op, args.clone(), out));
        }
    }
    let (src, tgt) = (Arc::new(source.clone()), Arc::new(target.clone()));
    let mut out = Vec::new();
    if m == 0 {
        out.push(Homomorphism {
            source: src,
            target: tgt,
            map: Vec::new(),
        });
        return Ok(out);
    }
    let mut map = vec![0usize; m];
    let mut image = Vec::new();
    let mut i = 0usize;
    let mut value = 0usize;
    // iterative DFS: `i` is the element being assigned, `value` its next candidate
    loop {
        if value >= n {
            if i == 0 {
                break;
            }
            i -= 1;
            value = map[i] + 1;
            continue;
        }
        map[i] = value;
        let ok = constraints[i].iter().all(|(op, args, res)| {
            image.clear();
            image.extend(args.iter().map(|&a| map[a]));
            map[*res] == target.apply(*op, &image)
        });
        if !ok {
            value += 1;
        } else if i + 1 == m {
            out.push(Homomorphism {
                source: src.clone(),
                target: tgt.clone(),
                map: map.clone(),
            });
            value += 1;
        } else {
            i += 1;
            value = 0;
        }
    }
    Ok(out)
}
