//! Model enumeration by backtracking over table cells.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use itertools::Itertools;
use rayon::prelude::*;

use super::{next_tuple, AlgebraicTheory, CTerm, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::limits::{factorial_sat, pow_sat, Limits};

const UNSET: usize = usize::MAX;

/// One variable assignment of one equation.
struct Instance {
    lhs: usize,
    rhs: usize,
    env: Vec<usize>,
}

struct Search<'a> {
    size: usize,
    arities: Vec<usize>,
    /// (operation, table index), operations of smaller arity first
    cells: Vec<(usize, usize)>,
    terms: Vec<CTerm>,
    instances: Vec<Instance>,
    nodes: &'a AtomicU64,
    budget: u64,
}

/// Partial value of a term under partially filled tables.
enum Ev {
    Val(usize),
    /// Arguments known, outermost cell `(op, index)` unset.
    Root(usize, usize),
    Unknown,
}

fn eval_partial(t: &CTerm, env: &[usize], tables: &[Vec<usize>], n: usize) -> Ev {
    match t {
        CTerm::Var(i) => Ev::Val(env[*i]),
        CTerm::App(op, args) => {
            let mut idx = 0;
            for a in args {
                match eval_partial(a, env, tables, n) {
                    Ev::Val(v) => idx = idx * n + v,
                    _ => return Ev::Unknown,
                }
            }
            match tables[*op][idx] {
                UNSET => Ev::Root(*op, idx),
                v => Ev::Val(v),
            }
        }
    }
}

impl Search<'_> {
    /// Drops decided instances from `pending` and fills every cell an
    /// instance forces (one side known, the other blocked only on its
    /// outermost cell), recording filled cells in `trail`. `false` if some
    /// instance fails.
    fn propagate(
        &self,
        tables: &mut [Vec<usize>],
        pending: &[usize],
        out: &mut Vec<usize>,
        trail: &mut Vec<(usize, usize)>,
    ) -> bool {
        let mut current = pending.to_vec();
        loop {
            out.clear();
            let mut forced = false;
            for &i in &current {
                let inst = &self.instances[i];
                let l = eval_partial(&self.terms[inst.lhs], &inst.env, tables, self.size);
                let r = eval_partial(&self.terms[inst.rhs], &inst.env, tables, self.size);
                match (l, r) {
                    (Ev::Val(a), Ev::Val(b)) => {
                        if a != b {
                            return false;
                        }
                    }
                    (Ev::Val(v), Ev::Root(op, idx)) | (Ev::Root(op, idx), Ev::Val(v)) => {
                        tables[op][idx] = v;
                        trail.push((op, idx));
                        forced = true;
                    }
                    _ => out.push(i),
                }
            }
            if !forced {
                return true;
            }
            std::mem::swap(&mut current, out);
        }
    }

    fn tick(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(Error::bound(
                "model search nodes",
                format!("more than {}", self.budget),
                self.budget,
            ));
        }
        Ok(())
    }

    fn run(
        &self,
        depth: usize,
        stop: usize,
        tables: &mut Vec<Vec<usize>>,
        pending: &[usize],
        emit: &mut dyn FnMut(&[Vec<usize>], &[usize]),
    ) -> Result<()> {
        if depth == stop {
            emit(tables, pending);
            return Ok(());
        }
        let (op, idx) = self.cells[depth];
        if tables[op][idx] != UNSET {
            return self.run(depth + 1, stop, tables, pending, emit);
        }
        let mut next = Vec::with_capacity(pending.len());
        let mut trail = Vec::new();
        for v in 0..self.size {
            self.tick()?;
            tables[op][idx] = v;
            let ok = self.propagate(tables, pending, &mut next, &mut trail);
            if ok {
                self.run(depth + 1, stop, tables, &next, emit)?;
            }
            for (o, i) in trail.drain(..) {
                tables[o][i] = UNSET;
            }
        }
        tables[op][idx] = UNSET;
        Ok(())
    }
}

/// All models on `0..size`, in lexicographic order of their tables.
///
/// The search assigns table cells one at a time, fills cells forced by an
/// axiom instance, and rejects a branch as soon as some instance is fully
/// evaluable and false. The budget
/// bounds the number of cell assignments tried.
pub fn enumerate_models(
    theory: &AlgebraicTheory,
    size: usize,
    limits: &Limits,
) -> Result<Vec<FiniteAlgebra>> {
    let ops = theory.operations();
    let mut order: Vec<usize> = (0..ops.len()).collect();
    order.sort_by_key(|&i| (ops[i].arity, i));
    let cells: Vec<(usize, usize)> = order
        .iter()
        .flat_map(|&op| (0..pow_sat(size, ops[op].arity) as usize).map(move |i| (op, i)))
        .collect();
    let mut terms = Vec::new();
    let mut instances = Vec::new();
    for eq in theory.equations() {
        let k = eq.context.len();
        limits.check("equation instances", pow_sat(size, k))?;
        terms.push(theory.compile(&eq.lhs, &eq.context)?);
        terms.push(theory.compile(&eq.rhs, &eq.context)?);
        if size == 0 && k > 0 {
            continue;
        }
        let mut env = vec![0; k];
        loop {
            instances.push(Instance {
                lhs: terms.len() - 2,
                rhs: terms.len() - 1,
                env: env.clone(),
            });
            if !next_tuple(&mut env, size) {
                break;
            }
        }
    }
    let nodes = AtomicU64::new(0);
    let search = Search {
        size,
        arities: ops.iter().map(|o| o.arity).collect(),
        cells,
        terms,
        instances,
        nodes: &nodes,
        budget: limits.budget,
    };
    let mut tables: Vec<Vec<usize>> = search
        .arities
        .iter()
        .map(|&k| vec![UNSET; pow_sat(size, k) as usize])
        .collect();
    let all: Vec<usize> = (0..search.instances.len()).collect();
    let mut root = Vec::new();
    if !search.propagate(&mut tables, &all, &mut root, &mut Vec::new()) {
        return Ok(Vec::new());
    }
    // split on a short prefix of cells, then finish each prefix in parallel
    let split = search.cells.len().min(2);
    let mut prefixes = Vec::new();
    search.run(0, split, &mut tables, &root, &mut |t, p| {
        prefixes.push((t.to_vec(), p.to_vec()))
    })?;
    let chunks: Vec<Vec<Vec<Vec<usize>>>> = prefixes
        .into_par_iter()
        .map(|(mut t, p)| {
            let mut found = Vec::new();
            search.run(split, search.cells.len(), &mut t, &p, &mut |t, _| {
                found.push(t.to_vec())
            })?;
            Ok(found)
        })
        .collect::<Result<_>>()?;
    let operations: std::sync::Arc<[super::Operation]> = ops.into();
    let mut models: Vec<FiniteAlgebra> = chunks
        .into_iter()
        .flatten()
        .map(|t| FiniteAlgebra::from_parts(size, operations.clone(), t))
        .collect();
    models.sort();
    Ok(models)
}

/// An isomorphism class: its least member and the number of labeled models
/// in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    pub representative: FiniteAlgebra,
    pub labeled_count: usize,
}

/// The lexicographically least isomorphic copy.
pub fn canonical_form(algebra: &FiniteAlgebra, limits: &Limits) -> Result<FiniteAlgebra> {
    let n = algebra.size();
    limits.check("carrier permutations", factorial_sat(n))?;
    Ok((0..n)
        .permutations(n)
        .map(|sigma| algebra.permuted(&sigma))
        .min()
        .unwrap_or_else(|| algebra.clone()))
}

/// Partitions labeled models into isomorphism classes, ordered by
/// representative.
pub fn iso_classes(models: &[FiniteAlgebra], limits: &Limits) -> Result<Vec<IsoClass>> {
    if let Some(m) = models.first() {
        limits.check(
            "carrier permutations",
            factorial_sat(m.size()).saturating_mul(models.len() as u128),
        )?;
    }
    let canon: Vec<FiniteAlgebra> = models
        .par_iter()
        .map(|m| canonical_form(m, limits))
        .collect::<Result<_>>()?;
    let mut counts: BTreeMap<FiniteAlgebra, usize> = BTreeMap::new();
    for c in canon {
        *counts.entry(c).or_default() += 1;
    }
    Ok(counts
        .into_iter()
        .map(|(representative, labeled_count)| IsoClass {
            representative,
            labeled_count,
        })
        .collect())
}

pub fn enumerate_up_to_iso(
    theory: &AlgebraicTheory,
    size: usize,
    limits: &Limits,
) -> Result<Vec<IsoClass>> {
    iso_classes(&enumerate_models(theory, size, limits)?, limits)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{theory, GROUP};
    use super::*;
    use catlogic_oracle::equational as oracle;

    const SEMIGROUP: &str = "theory Semigroup sort S op m : S S -> S
        axiom m(m(x, y), z) = m(x, m(y, z))";

    fn lim() -> Limits {
        Limits::default()
    }

    fn tables(models: &[FiniteAlgebra]) -> Vec<Vec<Vec<usize>>> {
        models.iter().map(|m| m.tables().to_vec()).collect()
    }

    #[test]
    fn semigroups_of_order_two() {
        let s = theory(SEMIGROUP);
        let models = enumerate_models(&s, 2, &lim()).unwrap();
        assert_eq!(models.len(), 8);
        assert_eq!(tables(&models), oracle::semigroups(2));
        let classes = enumerate_up_to_iso(&s, 2, &lim()).unwrap();
        assert_eq!(classes.iter().map(|c| c.labeled_count).sum::<usize>(), 8);
        assert_eq!(classes.len(), 5);
    }

    #[test]
    fn groups_small_orders() {
        let g = theory(GROUP);
        for n in 1..=3 {
            let models = enumerate_models(&g, n, &lim()).unwrap();
            for m in &models {
                assert!(m.is_model(&g, &lim()).unwrap());
            }
            assert_eq!(tables(&models), oracle::groups_unpruned(n), "order {n}");
        }
        assert_eq!(enumerate_models(&g, 1, &lim()).unwrap().len(), 1);
        assert_eq!(enumerate_models(&g, 3, &lim()).unwrap().len(), 3);
        assert_eq!(enumerate_up_to_iso(&g, 3, &lim()).unwrap().len(), 1);
    }

    #[test]
    fn groups_of_order_four() {
        let g = theory(GROUP);
        let classes = enumerate_up_to_iso(&g, 4, &lim()).unwrap();
        assert_eq!(classes.len(), 2);
        let counts: Vec<usize> = classes.iter().map(|c| c.labeled_count).collect();
        assert_eq!(counts.iter().sum::<usize>(), 16);
        let mut sorted = counts.clone();
        sorted.sort();
        assert_eq!(sorted, vec![4, 12]);
    }

    #[test]
    fn single_point_has_at_most_one_class() {
        for text in [SEMIGROUP, GROUP, "theory F sort S op f : S -> S axiom f(f(x)) = x"] {
            assert!(enumerate_up_to_iso(&theory(text), 1, &lim()).unwrap().len() <= 1);
        }
    }

    #[test]
    fn empty_carrier() {
        let s = theory(SEMIGROUP);
        assert_eq!(enumerate_models(&s, 0, &lim()).unwrap().len(), 1);
        assert!(enumerate_models(&theory(GROUP), 0, &lim()).unwrap().is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let g = theory(GROUP);
        assert!(matches!(
            enumerate_models(&g, 4, &Limits::with_budget(100)),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn determinism_across_pools() {
        let g = theory(GROUP);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| enumerate_models(&g, 4, &lim()).unwrap())
        };
        assert_eq!(run(1), run(3));
    }
}
