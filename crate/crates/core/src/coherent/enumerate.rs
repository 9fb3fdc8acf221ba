use std::sync::Arc;

use rayon::prelude::*;

use super::{cells, CSequent, FiniteStructure, Shape};
use crate::equational::{enumerate_models, AlgebraicTheory};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::propositional::models_of;
use crate::syntax::{Fragment, Theory};

/// Carrier sizes `min..=max` for every sort. Carriers are nonempty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeBounds {
    pub min: usize,
    pub max: usize,
}

impl SizeBounds {
    pub fn new(min: usize, max: usize) -> Result<Self> {
        if min == 0 {
            return Err(Error::Unsupported("empty carriers are not enumerated".into()));
        }
        Ok(SizeBounds { min, max })
    }

    /// Sizes `1..=max`.
    pub fn up_to(max: usize) -> Self {
        SizeBounds { min: 1, max }
    }

    pub fn exactly(size: usize) -> Result<Self> {
        Self::new(size, size)
    }

    /// Size vectors over `sorts` sorts in lexicographic order. With no sorts
    /// there is one (empty) vector, provided the range is nonempty.
    pub fn vectors(&self, sorts: usize) -> Vec<Vec<usize>> {
        if self.min > self.max {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut v = vec![self.min; sorts];
        loop {
            out.push(v.clone());
            let mut i = sorts;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if v[i] < self.max {
                    v[i] += 1;
                    break;
                }
                v[i] = self.min;
            }
        }
    }
}

/// Radix of each table cell for one size vector: function cells first, then
/// relation cells, then propositions, each in declaration order.
fn radices(shape: &Shape, sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for (args, &res) in shape.fn_args.iter().zip(&shape.fn_result) {
        out.extend(std::iter::repeat_n(sizes[res], cells(sizes, args) as usize));
    }
    for args in &shape.pred_args {
        out.extend(std::iter::repeat_n(2, cells(sizes, args) as usize));
    }
    out.extend(std::iter::repeat_n(2, shape.signature.propositions().len()));
    out
}

fn decode(shape: &Arc<Shape>, sizes: &[usize], radices: &[usize], mut index: u128) -> FiniteStructure {
    let mut digits = vec![0; radices.len()];
    for (d, &r) in digits.iter_mut().zip(radices).rev() {
        *d = (index % r as u128) as usize;
        index /= r as u128;
    }
    let mut it = digits.into_iter();
    let functions = shape
        .fn_args
        .iter()
        .map(|args| it.by_ref().take(cells(sizes, args) as usize).collect())
        .collect();
    let relations = shape
        .pred_args
        .iter()
        .map(|args| it.by_ref().take(cells(sizes, args) as usize).map(|d| d == 1).collect())
        .collect();
    let propositions = it.map(|d| d == 1).collect();
    FiniteStructure {
        shape: shape.clone(),
        sizes: sizes.to_vec(),
        functions,
        relations,
        propositions,
    }
}

/// All structures within `bounds` satisfying every axiom, in canonical order.
///
/// Coherent theories are enumerated by scanning every table family.
/// Equational theories reuse the pruned model search and propositional
/// theories (which may use `->` and `~`) the truth-table models; both
/// produce the same order.
pub fn enumerate_structures(
    theory: &Theory,
    bounds: SizeBounds,
    limits: &Limits,
) -> Result<Vec<FiniteStructure>> {
    let shape = Shape::new(theory.signature());
    let sorts = theory.signature().sorts().len();
    match theory.fragment() {
        Fragment::Propositional => {
            if bounds.vectors(sorts).is_empty() {
                return Ok(Vec::new());
            }
            let models = models_of(theory, limits)?;
            return Ok(models
                .iter()
                .map(|a| FiniteStructure {
                    shape: shape.clone(),
                    sizes: Vec::new(),
                    functions: Vec::new(),
                    relations: Vec::new(),
                    propositions: (0..a.names().len()).map(|i| a.value(i)).collect(),
                })
                .collect());
        }
        Fragment::Equational if sorts == 1 => {
            let alg = AlgebraicTheory::new(theory.clone())?;
            let mut out = Vec::new();
            for v in bounds.vectors(sorts) {
                for m in enumerate_models(&alg, v[0], limits)? {
                    out.push(FiniteStructure {
                        shape: shape.clone(),
                        sizes: v.clone(),
                        functions: m.tables().to_vec(),
                        relations: Vec::new(),
                        propositions: Vec::new(),
                    });
                }
            }
            return Ok(out);
        }
        _ => {}
    }
    let axioms: Vec<CSequent> = theory
        .axioms()
        .iter()
        .map(|a| CSequent::new(&shape, a))
        .collect::<Result<_>>()?;
    let plan: Vec<(Vec<usize>, Vec<usize>, u128)> = bounds
        .vectors(sorts)
        .into_iter()
        .map(|v| {
            let r = radices(&shape, &v);
            let count = r.iter().fold(1u128, |acc, &x| acc.saturating_mul(x as u128));
            (v, r, count)
        })
        .collect();
    let total = plan.iter().fold(0u128, |acc, p| acc.saturating_add(p.2));
    limits.check("candidate structures", total)?;
    let mut out = Vec::new();
    for (sizes, radices, count) in plan {
        let found: Vec<FiniteStructure> = (0..count as u64)
            .into_par_iter()
            .map(|i| decode(&shape, &sizes, &radices, i as u128))
            .filter(|m| axioms.iter().all(|s| m.eval_sequent(s)))
            .collect();
        out.extend(found);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{theory, PURE, UNARY};
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn spec_examples() {
        let eq = enumerate_structures(&theory(PURE), SizeBounds::up_to(3), &lim()).unwrap();
        assert_eq!(eq.iter().map(|m| m.sizes()[0]).collect::<Vec<_>>(), vec![1, 2, 3]);
        let p = enumerate_structures(&theory(UNARY), SizeBounds::exactly(2).unwrap(), &lim()).unwrap();
        assert_eq!(p.len(), 4);
        let big = theory("theory Big sort S axiom true |- exists x:S. exists y:S. x != y");
        let sizes: Vec<usize> = enumerate_structures(&big, SizeBounds::up_to(3), &lim())
            .unwrap()
            .iter()
            .map(|m| m.sizes()[0])
            .collect();
        assert_eq!(sizes, vec![2, 3]);
    }

    #[test]
    fn canonical_order_and_models() {
        let t = theory("theory Two sort A B pred R : A B axiom R(x, y) |- R(y2, y)");
        let all = enumerate_structures(&t, SizeBounds::up_to(2), &lim()).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for m in &all {
            assert!(m.is_model(&t, &lim()).unwrap());
        }
        let free = theory("theory Two sort A B pred R : A B");
        let every = enumerate_structures(&free, SizeBounds::up_to(2), &lim()).unwrap();
        // 2^1 + 2^2 + 2^2 + 2^4 relations over the four size vectors
        assert_eq!(every.len(), 26);
        let kept = every.iter().filter(|m| m.is_model(&t, &lim()).unwrap()).count();
        assert_eq!(kept, all.len());
    }

    #[test]
    fn equational_path_matches_scan() {
        // the extra `true |- true` axiom forces the generic scan
        for text in [
            "theory Sg sort S op m : S S -> S axiom m(m(x, y), z) = m(x, m(y, z))",
            "theory G sort G op e : -> G op inv : G -> G op m : G G -> G
             axiom m(e, x) = x axiom m(inv(x), x) = e axiom m(m(x, y), z) = m(x, m(y, z))",
        ] {
            let t = theory(text);
            let scan = t.with_axiom(crate::syntax::Axiom::sequent(
                crate::syntax::Formula::True,
                crate::syntax::Formula::True,
            ));
            let scan = scan.unwrap();
            assert_eq!(scan.fragment(), Fragment::Coherent);
            let a = enumerate_structures(&t, SizeBounds::up_to(3), &lim()).unwrap();
            let b = enumerate_structures(&scan, SizeBounds::up_to(3), &lim()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn propositional_structures() {
        let t = theory("theory Imp prop p q axiom p -> q");
        let all = enumerate_structures(&t, SizeBounds::up_to(1), &lim()).unwrap();
        let rows: Vec<&[bool]> = all.iter().map(|m| m.propositions()).collect();
        assert_eq!(rows, vec![&[false, false][..], &[false, true], &[true, true]]);
        assert!(enumerate_structures(&t, SizeBounds::up_to(0), &lim()).unwrap().is_empty());
    }

    #[test]
    fn bounds() {
        assert!(SizeBounds::new(0, 2).is_err());
        assert!(enumerate_structures(&theory(PURE), SizeBounds::up_to(0), &lim()).unwrap().is_empty());
        let rel = theory("theory R sort S pred R : S S");
        assert!(matches!(
            enumerate_structures(&rel, SizeBounds::up_to(3), &Limits::with_budget(500)),
            Err(Error::BoundExceeded { .. })
        ));
        assert_eq!(SizeBounds::up_to(2).vectors(2), vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        assert_eq!(SizeBounds::up_to(2).vectors(0), vec![Vec::<usize>::new()]);
    }
}
