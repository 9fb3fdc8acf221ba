use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use super::{cells, enumerate_structures, tuple_of, FiniteStructure, Sentence, Shape, SizeBounds};
use crate::error::{Error, Result};
use crate::limits::{factorial_sat, Limits};
use crate::syntax::{Formula, Theory};

/// A family of bijections, one per sort.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Isomorphism {
    maps: Vec<Vec<usize>>,
}

impl Isomorphism {
    pub fn new(maps: Vec<Vec<usize>>) -> Self {
        Isomorphism { maps }
    }

    pub fn identity(sizes: &[usize]) -> Self {
        Isomorphism {
            maps: sizes.iter().map(|&n| (0..n).collect()).collect(),
        }
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn apply(&self, sort: usize, x: usize) -> usize {
        self.maps[sort][x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Isomorphism) -> Isomorphism {
        Isomorphism {
            maps: self
                .maps
                .iter()
                .zip(&next.maps)
                .map(|(f, g)| f.iter().map(|&x| g[x]).collect())
                .collect(),
        }
    }

    pub fn inverse(&self) -> Isomorphism {
        Isomorphism {
            maps: self
                .maps
                .iter()
                .map(|f| {
                    let mut inv = vec![0; f.len()];
                    for (x, &y) in f.iter().enumerate() {
                        inv[y] = x;
                    }
                    inv
                })
                .collect(),
        }
    }
}

fn is_bijection(f: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    f.len() == n && f.iter().all(|&y| y < n && !std::mem::replace(&mut seen[y], true))
}

/// Bijective on every sort, commutes with every function and preserves
/// every relation and proposition in both directions.
pub fn is_isomorphism(m: &FiniteStructure, n: &FiniteStructure, iso: &Isomorphism) -> bool {
    if !Shape::same(&m.shape, &n.shape) || m.sizes != n.sizes || m.propositions != n.propositions {
        return false;
    }
    if iso.maps.len() != m.sizes.len()
        || iso.maps.iter().zip(&m.sizes).any(|(f, &k)| !is_bijection(f, k))
    {
        return false;
    }
    let shape = &m.shape;
    let sizes = &m.sizes;
    let mut args = Vec::new();
    let image = |sorts: &[usize], args: &[usize]| {
        sorts
            .iter()
            .zip(args)
            .fold(0, |acc, (&s, &a)| acc * sizes[s] + iso.maps[s][a])
    };
    for (f, sorts) in shape.fn_args.iter().enumerate() {
        args.resize(sorts.len(), 0);
        let res = shape.fn_result[f];
        for idx in 0..cells(sizes, sorts) as usize {
            tuple_of(sizes, sorts, idx, &mut args);
            if iso.maps[res][m.functions[f][idx]] != n.functions[f][image(sorts, &args)] {
                return false;
            }
        }
    }
    for (p, sorts) in shape.pred_args.iter().enumerate() {
        args.resize(sorts.len(), 0);
        for idx in 0..cells(sizes, sorts) as usize {
            tuple_of(sizes, sorts, idx, &mut args);
            if m.relations[p][idx] != n.relations[p][image(sorts, &args)] {
                return false;
            }
        }
    }
    true
}

/// All isomorphisms `m → n` in lexicographic order of their maps; empty
/// when carrier sizes differ.
pub fn isomorphisms(
    m: &FiniteStructure,
    n: &FiniteStructure,
    limits: &Limits,
) -> Result<Vec<Isomorphism>> {
    if !Shape::same(&m.shape, &n.shape) {
        return Err(Error::SignatureMismatch(
            "structures have different signatures".into(),
        ));
    }
    if m.sizes != n.sizes || m.propositions != n.propositions {
        return Ok(Vec::new());
    }
    let candidates = m
        .sizes
        .iter()
        .fold(1u128, |acc, &k| acc.saturating_mul(factorial_sat(k)));
    limits.check("sort-wise bijections", candidates)?;
    if m.sizes.is_empty() {
        let id = Isomorphism::new(Vec::new());
        return Ok(if is_isomorphism(m, n, &id) { vec![id] } else { Vec::new() });
    }
    Ok(m.sizes
        .iter()
        .map(|&k| (0..k).permutations(k))
        .multi_cartesian_product()
        .map(Isomorphism::new)
        .filter(|iso| is_isomorphism(m, n, iso))
        .collect())
}

/// Models of a theory within a size bound, with every isomorphism between
/// them. Immutable once built.
#[derive(Debug, Clone)]
pub struct ModelGroupoid {
    theory: Theory,
    bounds: SizeBounds,
    objects: Vec<FiniteStructure>,
    homs: BTreeMap<(usize, usize), Vec<Isomorphism>>,
}

/// The groupoid of models of `theory` within `bounds`, verified to satisfy
/// the groupoid laws.
pub fn groupoid(theory: &Theory, bounds: SizeBounds, limits: &Limits) -> Result<ModelGroupoid> {
    let objects = enumerate_structures(theory, bounds, limits)?;
    let pairs: Vec<(usize, usize)> = (0..objects.len())
        .flat_map(|i| (0..objects.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            objects[i].sizes == objects[j].sizes && objects[i].propositions == objects[j].propositions
        })
        .collect();
    limits.check("object pairs", pairs.len() as u128)?;
    let found: Vec<((usize, usize), Vec<Isomorphism>)> = pairs
        .into_par_iter()
        .map(|(i, j)| Ok(((i, j), isomorphisms(&objects[i], &objects[j], limits)?)))
        .collect::<Result<_>>()?;
    let homs = found.into_iter().filter(|(_, h)| !h.is_empty()).collect();
    let g = ModelGroupoid {
        theory: theory.clone(),
        bounds,
        objects,
        homs,
    };
    g.verify_laws()?;
    Ok(g)
}

impl ModelGroupoid {
    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn bounds(&self) -> SizeBounds {
        self.bounds
    }

    pub fn objects(&self) -> &[FiniteStructure] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Isomorphisms `i → j`, in lexicographic order.
    pub fn hom(&self, i: usize, j: usize) -> &[Isomorphism] {
        self.homs.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Nonempty hom-sets keyed by `(source, target)`.
    pub fn hom_sets(&self) -> impl Iterator<Item = ((usize, usize), &[Isomorphism])> {
        self.homs.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    pub fn automorphism_counts(&self) -> Vec<usize> {
        (0..self.len()).map(|i| self.hom(i, i).len()).collect()
    }

    /// Connected components, each in increasing order, ordered by least
    /// member.
    pub fn iso_classes(&self) -> Vec<Vec<usize>> {
        let mut class = vec![usize::MAX; self.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.len() {
            if class[i] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = (i..self.len()).filter(|&j| !self.hom(i, j).is_empty()).collect();
            for &j in &members {
                class[j] = out.len();
            }
            out.push(members);
        }
        out
    }

    /// Checks exhaustively that every morphism is an isomorphism, identities
    /// exist and are neutral, composites of composable pairs are present
    /// and every morphism has its inverse.
    pub fn verify_laws(&self) -> Result<()> {
        let fail = |what: String| Err(Error::InvariantViolation(format!("groupoid: {what}")));
        let contains = |i: usize, j: usize, f: &Isomorphism| self.hom(i, j).binary_search(f).is_ok();
        for (&(i, j), fs) in &self.homs {
            for f in fs {
                if !is_isomorphism(&self.objects[i], &self.objects[j], f) {
                    return fail(format!("a morphism {i} → {j} is not an isomorphism"));
                }
                if !contains(j, i, &f.inverse()) {
                    return fail(format!("a morphism {i} → {j} has no inverse"));
                }
                let (idi, idj) = (
                    Isomorphism::identity(&self.objects[i].sizes),
                    Isomorphism::identity(&self.objects[j].sizes),
                );
                if idi.then(f) != *f || f.then(&idj) != *f {
                    return fail(format!("identities are not neutral on {i} → {j}"));
                }
            }
        }
        for i in 0..self.len() {
            if !contains(i, i, &Isomorphism::identity(&self.objects[i].sizes)) {
                return fail(format!("object {i} lacks its identity"));
            }
        }
        for (&(i, j), fs) in &self.homs {
            for (&(j2, k), gs) in self.homs.range((j, 0)..(j + 1, 0)) {
                debug_assert_eq!(j, j2);
                for f in fs {
                    for g in gs {
                        if !contains(i, k, &f.then(g)) {
                            return fail(format!("a composite {i} → {j} → {k} is missing"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `V[φ]`: the objects satisfying a sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisOpen {
    pub sentence: Formula,
    pub members: Vec<usize>,
}

impl BasisOpen {
    pub fn contains(&self, object: usize) -> bool {
        self.members.binary_search(&object).is_ok()
    }
}

/// The basic open of `phi`, checked to be a union of isomorphism classes.
pub fn basic_open(g: &ModelGroupoid, phi: &Formula, limits: &Limits) -> Result<BasisOpen> {
    let s = Sentence::new(&Shape::new(g.theory.signature()), phi)?;
    let truth: Vec<bool> = g
        .objects
        .par_iter()
        .map(|m| s.eval(m, limits))
        .collect::<Result<_>>()?;
    for class in g.iso_classes() {
        if class.iter().any(|&j| truth[j] != truth[class[0]]) {
            return Err(Error::InvariantViolation(format!(
                "`{phi}` separates isomorphic objects"
            )));
        }
    }
    Ok(BasisOpen {
        sentence: phi.clone(),
        members: (0..truth.len()).filter(|&i| truth[i]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{sentence, theory, PURE, UNARY};
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn isomorphism_examples() {
        let t = theory(PURE);
        let three = FiniteStructure::new(t.signature(), vec![3], vec![], vec![], vec![]).unwrap();
        assert_eq!(isomorphisms(&three, &three, &lim()).unwrap().len(), 6);
        let p = theory(UNARY);
        let empty = FiniteStructure::new(p.signature(), vec![2], vec![], vec![vec![false, false]], vec![]).unwrap();
        let full = FiniteStructure::new(p.signature(), vec![2], vec![], vec![vec![true, true]], vec![]).unwrap();
        assert!(isomorphisms(&empty, &full, &lim()).unwrap().is_empty());
        let g = theory("theory Z sort G op e : -> G op m : G G -> G");
        let z2 = FiniteStructure::new(g.signature(), vec![2], vec![vec![0], vec![0, 1, 1, 0]], vec![], vec![]).unwrap();
        let auts = isomorphisms(&z2, &z2, &lim()).unwrap();
        assert_eq!(auts, vec![Isomorphism::identity(&[2])]);
        assert!(!is_isomorphism(&z2, &z2, &Isomorphism::new(vec![vec![1, 0]])));
    }

    #[test]
    fn pure_equality_groupoid() {
        let g = groupoid(&theory(PURE), SizeBounds::up_to(3), &lim()).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.automorphism_counts(), vec![1, 2, 6]);
        assert_eq!(g.iso_classes(), vec![vec![0], vec![1], vec![2]]);
        assert!(g.hom(0, 1).is_empty());
    }

    #[test]
    fn unary_groupoid() {
        let g = groupoid(&theory(UNARY), SizeBounds::exactly(2).unwrap(), &lim()).unwrap();
        assert_eq!(g.len(), 4);
        // objects: P = {}, {1}, {0}, {0, 1}
        assert_eq!(g.automorphism_counts(), vec![2, 1, 1, 2]);
        assert_eq!(g.hom(1, 2), &[Isomorphism::new(vec![vec![1, 0]])]);
        assert_eq!(g.hom(2, 1).len(), 1);
        assert_eq!(g.iso_classes(), vec![vec![0], vec![1, 2], vec![3]]);
        assert!(groupoid(&theory(UNARY), SizeBounds::up_to(0), &lim()).unwrap().is_empty());
    }

    #[test]
    fn laws_catch_missing_morphisms() {
        let mut g = groupoid(&theory(UNARY), SizeBounds::exactly(2).unwrap(), &lim()).unwrap();
        g.verify_laws().unwrap();
        g.homs.remove(&(2, 1));
        assert!(matches!(g.verify_laws(), Err(Error::InvariantViolation(_))));
        let mut g = groupoid(&theory(PURE), SizeBounds::up_to(3), &lim()).unwrap();
        g.homs.get_mut(&(2, 2)).unwrap().remove(3);
        assert!(g.verify_laws().is_err());
    }

    #[test]
    fn basic_open_examples() {
        let t = theory(PURE);
        let g = groupoid(&t, SizeBounds::up_to(3), &lim()).unwrap();
        let two = basic_open(&g, &sentence(&t, "exists x:S. exists y:S. x != y"), &lim()).unwrap();
        assert_eq!(two.members, vec![1, 2]);
        assert_eq!(basic_open(&g, &Formula::True, &lim()).unwrap().members, vec![0, 1, 2]);
        assert!(basic_open(&g, &Formula::False, &lim()).unwrap().members.is_empty());
        let neg = Formula::not(Formula::True);
        assert!(matches!(basic_open(&g, &neg, &lim()), Err(Error::FragmentViolation(_))));
    }

    #[test]
    fn composition_and_inverse() {
        let f = Isomorphism::new(vec![vec![1, 2, 0], vec![1, 0]]);
        let id = Isomorphism::identity(&[3, 2]);
        assert_eq!(f.then(&f.inverse()), id);
        assert_eq!(f.inverse().then(&f), id);
        assert_eq!(f.then(&f).maps()[0], vec![2, 0, 1]);
    }

    #[test]
    fn relations_match_oracle() {
        use catlogic_oracle::coherent as oracle;
        let t = theory("theory RP sort S pred R : S S pred P : S");
        let g = groupoid(&t, SizeBounds::up_to(2), &lim()).unwrap();
        let expected: Vec<Vec<Vec<bool>>> =
            (1..=2).flat_map(|n| oracle::structures(n, &[2, 1])).collect();
        let got: Vec<Vec<Vec<bool>>> = g.objects().iter().map(|m| m.relations().to_vec()).collect();
        assert_eq!(got, expected);
        for (i, a) in g.objects().iter().enumerate() {
            for (j, b) in g.objects().iter().enumerate() {
                let n = a.sizes()[0];
                let want = if b.sizes()[0] == n {
                    oracle::isomorphisms(n, &[2, 1], a.relations(), b.relations())
                } else {
                    Vec::new()
                };
                let have: Vec<Vec<usize>> = g.hom(i, j).iter().map(|f| f.maps()[0].clone()).collect();
                assert_eq!(have, want, "{i} -> {j}");
            }
        }
        let classes = g.iso_classes().len();
        assert_eq!(classes, oracle::class_count(1, &[2, 1]) + oracle::class_count(2, &[2, 1]));

        let r = theory("theory R sort S pred R : S S");
        let g = groupoid(&r, SizeBounds::exactly(3).unwrap(), &lim()).unwrap();
        assert_eq!(g.len(), 512);
        assert_eq!(g.iso_classes().len(), oracle::class_count(3, &[2]));
    }
}
