//! Homomorphisms of finite Boolean algebras and their duals.

use std::collections::BTreeSet;

use super::{stone_space, Element, FiniteBooleanAlgebra, StoneSpace};
use crate::error::{Error, Result};
use crate::limits::{pow_sat, Limits};

/// A Boolean homomorphism, determined by the images of the source atoms.
/// The images are pairwise disjoint and cover the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanHom {
    source: FiniteBooleanAlgebra,
    target: FiniteBooleanAlgebra,
    atom_images: Vec<Element>,
}

impl BooleanHom {
    pub fn from_atom_images(
        source: &FiniteBooleanAlgebra,
        target: &FiniteBooleanAlgebra,
        atom_images: Vec<Element>,
    ) -> Result<Self> {
        if atom_images.len() != source.atom_count()
            || !atom_images.iter().all(|e| target.contains(e))
        {
            return Err(Error::NotAHomomorphism(
                "one image per source atom is required".into(),
            ));
        }
        let mut covered = target.zero();
        for img in &atom_images {
            if !covered.is_disjoint(img) {
                return Err(Error::NotAHomomorphism(
                    "images of distinct atoms must be disjoint".into(),
                ));
            }
            covered = covered.join(img);
        }
        if !covered.is_one() {
            return Err(Error::NotAHomomorphism("1 is not preserved".into()));
        }
        Ok(BooleanHom {
            source: source.clone(),
            target: target.clone(),
            atom_images,
        })
    }

    /// Validates an explicit map, indexed by source element in canonical
    /// order, against every law on every pair of elements.
    pub fn from_table(
        source: &FiniteBooleanAlgebra,
        target: &FiniteBooleanAlgebra,
        table: &[Element],
        limits: &Limits,
    ) -> Result<Self> {
        let elems = source.elements(limits)?;
        limits.check("homomorphism check", (elems.len() as u128).pow(2))?;
        if table.len() != elems.len() || !table.iter().all(|e| target.contains(e)) {
            return Err(Error::NotAHomomorphism("table is not total".into()));
        }
        let at = |e: &Element| &table[e.index().unwrap() as usize];
        let name = |e: &Element| source.element_name(e);
        if !at(&source.zero()).is_zero() || !at(&source.one()).is_one() {
            return Err(Error::NotAHomomorphism("0 and 1 are not preserved".into()));
        }
        for a in &elems {
            if *at(&a.complement()) != at(a).complement() {
                return Err(Error::NotAHomomorphism(format!(
                    "complement of {} not preserved",
                    name(a)
                )));
            }
            for b in &elems {
                if *at(&a.meet(b)) != at(a).meet(at(b)) || *at(&a.join(b)) != at(a).join(at(b)) {
                    return Err(Error::NotAHomomorphism(format!(
                        "meet or join of {} and {} not preserved",
                        name(a),
                        name(b)
                    )));
                }
            }
        }
        let atom_images = source.atoms().iter().map(|a| at(a).clone()).collect();
        Self::from_atom_images(source, target, atom_images)
    }

    pub fn from_fn(
        source: &FiniteBooleanAlgebra,
        target: &FiniteBooleanAlgebra,
        f: impl Fn(&Element) -> Element,
        limits: &Limits,
    ) -> Result<Self> {
        let table: Vec<Element> = source.elements(limits)?.iter().map(f).collect();
        Self::from_table(source, target, &table, limits)
    }

    pub fn identity(algebra: &FiniteBooleanAlgebra) -> Self {
        BooleanHom {
            source: algebra.clone(),
            target: algebra.clone(),
            atom_images: algebra.atoms(),
        }
    }

    pub fn source(&self) -> &FiniteBooleanAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteBooleanAlgebra {
        &self.target
    }

    pub fn atom_images(&self) -> &[Element] {
        &self.atom_images
    }

    pub fn apply(&self, b: &Element) -> Element {
        b.atoms()
            .fold(self.target.zero(), |acc, i| acc.join(&self.atom_images[i]))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &BooleanHom) -> Result<BooleanHom> {
        if self.target != next.source {
            return Err(Error::SignatureMismatch(
                "homomorphisms are not composable".into(),
            ));
        }
        Ok(BooleanHom {
            source: self.source.clone(),
            target: next.target.clone(),
            atom_images: self.atom_images.iter().map(|e| next.apply(e)).collect(),
        })
    }

    pub fn table(&self, limits: &Limits) -> Result<Vec<(Element, Element)>> {
        Ok(self
            .source
            .elements(limits)?
            .into_iter()
            .map(|b| {
                let img = self.apply(&b);
                (b, img)
            })
            .collect())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.atom_count() == self.target.atom_count()
            && self.atom_images.iter().all(|e| e.count() == 1)
    }

    /// All homomorphisms `source → target`. Each is determined by sending
    /// every target atom to the source atom whose image contains it.
    /// Ordered by that assignment, first target atom most significant.
    pub fn all(
        source: &FiniteBooleanAlgebra,
        target: &FiniteBooleanAlgebra,
        limits: &Limits,
    ) -> Result<Vec<BooleanHom>> {
        let (k, l) = (source.atom_count(), target.atom_count());
        limits.check("Boolean homomorphisms", pow_sat(k, l))?;
        if k == 0 {
            return Ok(if l == 0 {
                vec![Self::identity(target)]
            } else {
                Vec::new()
            });
        }
        let mut out = Vec::new();
        let mut choice = vec![0usize; l];
        loop {
            let mut images = vec![target.zero(); k];
            for (c, &a) in choice.iter().enumerate() {
                images[a] = images[a].join(&target.atom(c));
            }
            out.push(BooleanHom {
                source: source.clone(),
                target: target.clone(),
                atom_images: images,
            });
            let Some(pos) = (0..l).rev().find(|&i| choice[i] + 1 < k) else {
                break;
            };
            choice[pos] += 1;
            choice[pos + 1..].iter_mut().for_each(|c| *c = 0);
        }
        Ok(out)
    }
}

/// A map of finite Stone spaces, given as point images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoneMap {
    source: StoneSpace,
    target: StoneSpace,
    images: Vec<usize>,
}

impl StoneMap {
    pub fn identity(space: &StoneSpace) -> Self {
        StoneMap {
            source: space.clone(),
            target: space.clone(),
            images: (0..space.point_count()).collect(),
        }
    }

    pub fn source(&self) -> &StoneSpace {
        &self.source
    }

    pub fn target(&self) -> &StoneSpace {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &StoneMap) -> Result<StoneMap> {
        if self.target != next.source {
            return Err(Error::SignatureMismatch("maps are not composable".into()));
        }
        Ok(StoneMap {
            source: self.source.clone(),
            target: next.target.clone(),
            images: self.images.iter().map(|&p| next.images[p]).collect(),
        })
    }

    /// Preimage of a subset of target points.
    pub fn preimage(&self, open: &Element) -> Element {
        Element::from_atoms(
            self.source.point_count(),
            (0..self.images.len()).filter(|&p| open.contains(self.images[p])),
        )
    }

    /// Preimages of basic opens are open. In a finite space every subset is
    /// open, so this checks that each preimage is the basic open the dual
    /// predicts.
    pub fn check_continuity(&self, hom: &BooleanHom, limits: &Limits) -> Result<()> {
        for b in hom.source().elements(limits)? {
            let pre = self.preimage(&self.target.basic_open(&b));
            if pre != self.source.basic_open(&hom.apply(&b)) {
                return Err(Error::InvariantViolation(format!(
                    "preimage of D({}) is not D(h(b))",
                    hom.source().element_name(&b)
                )));
            }
        }
        Ok(())
    }
}

/// `Stone(h) : Stone(C) → Stone(B)`, `V ↦ h⁻¹(V)`, for `h : B → C`.
///
/// Each preimage is checked to be an ultrafilter of `B` and the result is
/// checked to be continuous.
pub fn dual_hom(hom: &BooleanHom, limits: &Limits) -> Result<StoneMap> {
    let source = stone_space(hom.target())?;
    let target = stone_space(hom.source())?;
    let mut images = Vec::with_capacity(source.point_count());
    for v in source.points() {
        let owners: Vec<usize> = (0..hom.source().atom_count())
            .filter(|&a| v.contains(&hom.atom_images()[a]))
            .collect();
        let [a] = owners[..] else {
            return Err(Error::InvariantViolation(
                "preimage of an ultrafilter is not an ultrafilter".into(),
            ));
        };
        let pre: BTreeSet<Element> = hom
            .source()
            .elements(limits)?
            .into_iter()
            .filter(|b| v.contains(&hom.apply(b)))
            .collect();
        if !super::is_ultrafilter(hom.source(), &pre, limits)? || !pre.contains(&hom.source().atom(a)) {
            return Err(Error::InvariantViolation(
                "preimage of an ultrafilter is not an ultrafilter".into(),
            ));
        }
        images.push(a);
    }
    let map = StoneMap {
        source,
        target,
        images,
    };
    map.check_continuity(hom, limits)?;
    Ok(map)
}
