use std::collections::BTreeMap;

use super::{check_term, Formula, Signature, Term, Variable};
use crate::error::{Error, Result};

/// A sort-respecting simultaneous substitution of terms for variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Variable, Term>,
}

impl Substitution {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(
        signature: &Signature,
        pairs: impl IntoIterator<Item = (Variable, Term)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (v, t) in pairs {
            let sort = check_term(signature, &t)?;
            if sort != v.sort {
                return Err(Error::SortMismatch(format!(
                    "cannot substitute `{t}` of sort `{sort}` for `{}:{}`",
                    v.name, v.sort
                )));
            }
            map.insert(v, t);
        }
        Ok(Substitution { map })
    }

    /// Builds a substitution without sort checks. Callers guarantee sorts.
    pub(crate) fn trusted(pairs: impl IntoIterator<Item = (Variable, Term)>) -> Self {
        Substitution {
            map: pairs.into_iter().collect(),
        }
    }

    pub fn get(&self, v: &Variable) -> Option<&Term> {
        self.map.get(v)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => self.map.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App { symbol, args } => Term::App {
                symbol: symbol.clone(),
                args: args.iter().map(|a| self.apply_term(a)).collect(),
            },
        }
    }

    /// Capture-avoiding application. A bound variable that would capture a
    /// variable of some replacement term is renamed by appending primes.
    pub fn apply_formula(&self, f: &Formula) -> Formula {
        match f {
            Formula::True | Formula::False | Formula::Prop(_) => f.clone(),
            Formula::Eq(a, b) => Formula::Eq(self.apply_term(a), self.apply_term(b)),
            Formula::Neq(a, b) => Formula::Neq(self.apply_term(a), self.apply_term(b)),
            Formula::Pred(p, args) => {
                Formula::Pred(p.clone(), args.iter().map(|a| self.apply_term(a)).collect())
            }
            Formula::And(a, b) => Formula::and(self.apply_formula(a), self.apply_formula(b)),
            Formula::Or(a, b) => Formula::or(self.apply_formula(a), self.apply_formula(b)),
            Formula::Implies(a, b) => {
                Formula::implies(self.apply_formula(a), self.apply_formula(b))
            }
            Formula::Not(a) => Formula::not(self.apply_formula(a)),
            Formula::Exists(v, body) => {
                let mut inner = self.clone();
                inner.map.remove(v);
                let free_in_body = body.free_variables();
                let live: Vec<&Term> = inner
                    .map
                    .iter()
                    .filter(|(w, _)| free_in_body.contains(w))
                    .map(|(_, t)| t)
                    .collect();
                let captures = live.iter().any(|t| t.variables().iter().any(|w| w.name == v.name));
                if !captures {
                    return Formula::exists(v.clone(), inner.apply_formula(body));
                }
                let taken = |name: &str| {
                    free_in_body.iter().any(|w| w.name == name)
                        || live.iter().any(|t| t.variables().iter().any(|w| w.name == name))
                };
                let mut name = format!("{}'", v.name);
                while taken(&name) {
                    name.push('\'');
                }
                let fresh = Variable::new(name, v.sort.clone());
                inner.map.insert(v.clone(), Term::Var(fresh.clone()));
                Formula::exists(fresh, inner.apply_formula(body))
            }
        }
    }
}

impl Term {
    pub fn substitute(&self, s: &Substitution) -> Term {
        s.apply_term(self)
    }
}

impl Formula {
    pub fn substitute(&self, s: &Substitution) -> Formula {
        s.apply_formula(self)
    }
}
