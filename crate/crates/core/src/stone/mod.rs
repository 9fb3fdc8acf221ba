//! Finite Boolean algebras and their Stone spaces.
//!
//! Every finite Boolean algebra is the powerset of its atoms, so an algebra
//! is stored as an ordered list of atom labels and an element as the bitset
//! of atoms below it. Algebras given by operation tables are validated and
//! normalized into this form by [`BooleanTables::normalize`].
//!
//! Elements are enumerated in *canonical order*: element `i` is the set of
//! atoms whose bit is set in `i`.

mod export;
mod hom;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::limits::{pow_sat, Limits};

pub use export::validate_stone_json;
pub use hom::{dual_hom, BooleanHom, StoneMap};

/// An element of a finite Boolean algebra: the set of atoms below it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element(FixedBitSet);

impl Element {
    pub fn zero(width: usize) -> Element {
        Element(FixedBitSet::with_capacity(width))
    }

    pub fn one(width: usize) -> Element {
        let mut bits = FixedBitSet::with_capacity(width);
        bits.insert_range(..);
        Element(bits)
    }

    pub fn atom(width: usize, i: usize) -> Element {
        Element::from_atoms(width, [i])
    }

    pub fn from_atoms(width: usize, atoms: impl IntoIterator<Item = usize>) -> Element {
        let mut bits = FixedBitSet::with_capacity(width);
        for a in atoms {
            bits.insert(a);
        }
        Element(bits)
    }

    /// Element with canonical index `index`; bits beyond `width` are ignored.
    pub fn from_index(width: usize, index: u64) -> Element {
        Element::from_atoms(width, (0..width.min(64)).filter(|i| index >> i & 1 == 1))
    }

    /// Canonical index, if the algebra has at most 64 atoms.
    pub fn index(&self) -> Option<u64> {
        if self.width() > 64 {
            return None;
        }
        Some(self.0.ones().fold(0u64, |acc, i| acc | 1 << i))
    }

    /// Number of atoms of the ambient algebra.
    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.0.contains(atom)
    }

    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn count(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_full()
    }

    pub fn meet(&self, other: &Element) -> Element {
        let mut bits = self.0.clone();
        bits.intersect_with(&other.0);
        Element(bits)
    }

    pub fn join(&self, other: &Element) -> Element {
        let mut bits = self.0.clone();
        bits.union_with(&other.0);
        Element(bits)
    }

    pub fn complement(&self) -> Element {
        let mut bits = self.0.clone();
        bits.toggle_range(..);
        Element(bits)
    }

    pub fn le(&self, other: &Element) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Element) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl Ord for Element {
    /// Canonical order: by width, then by canonical index.
    fn cmp(&self, other: &Self) -> Ordering {
        self.width().cmp(&other.width()).then_with(|| {
            let (a, b) = (self.0.as_slice(), other.0.as_slice());
            a.iter().rev().cmp(b.iter().rev())
        })
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.atoms()).finish()
    }
}

/// Largest atom count for which the carrier may be listed element by element.
pub const MAX_ENUMERABLE_ATOMS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBooleanAlgebra {
    atom_labels: Vec<String>,
}

impl FiniteBooleanAlgebra {
    pub fn with_atoms(atom_labels: Vec<String>) -> Self {
        FiniteBooleanAlgebra { atom_labels }
    }

    /// Powerset of `{a0, .., a(k-1)}`.
    pub fn powerset(atoms: usize) -> Self {
        Self::with_atoms((0..atoms).map(|i| format!("a{i}")).collect())
    }

    /// The two-element algebra.
    pub fn two() -> Self {
        Self::powerset(1)
    }

    pub fn atom_count(&self) -> usize {
        self.atom_labels.len()
    }

    pub fn atom_labels(&self) -> &[String] {
        &self.atom_labels
    }

    /// One element, where 0 = 1.
    pub fn is_degenerate(&self) -> bool {
        self.atom_labels.is_empty()
    }

    pub fn element_count(&self) -> BigUint {
        BigUint::from(1u8) << self.atom_count()
    }

    /// Element count if it fits, used for bounds.
    pub fn element_count_sat(&self) -> u128 {
        pow_sat(2, self.atom_count())
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.atom_count())
    }

    pub fn one(&self) -> Element {
        Element::one(self.atom_count())
    }

    pub fn atom(&self, i: usize) -> Element {
        Element::atom(self.atom_count(), i)
    }

    pub fn atoms(&self) -> Vec<Element> {
        (0..self.atom_count()).map(|i| self.atom(i)).collect()
    }

    pub fn element(&self, index: u64) -> Element {
        Element::from_index(self.atom_count(), index)
    }

    pub fn contains(&self, b: &Element) -> bool {
        b.width() == self.atom_count()
    }

    pub fn meet(&self, a: &Element, b: &Element) -> Element {
        a.meet(b)
    }

    pub fn join(&self, a: &Element, b: &Element) -> Element {
        a.join(b)
    }

    pub fn complement(&self, a: &Element) -> Element {
        a.complement()
    }

    pub fn le(&self, a: &Element, b: &Element) -> bool {
        a.le(b)
    }

    /// Indices of the atoms below `b`.
    pub fn atoms_below(&self, b: &Element) -> Vec<usize> {
        b.atoms().collect()
    }

    pub fn is_atom(&self, b: &Element) -> bool {
        b.count() == 1
    }

    /// All elements in canonical order.
    pub fn elements(&self, limits: &Limits) -> Result<Vec<Element>> {
        self.check_enumerable(limits)?;
        Ok((0..1u64 << self.atom_count())
            .map(|i| self.element(i))
            .collect())
    }

    pub(crate) fn check_enumerable(&self, limits: &Limits) -> Result<()> {
        if self.atom_count() > MAX_ENUMERABLE_ATOMS {
            return Err(Error::bound(
                "listing Boolean algebra elements",
                self.element_count(),
                1 << MAX_ENUMERABLE_ATOMS,
            ));
        }
        limits.check("listing Boolean algebra elements", self.element_count_sat())
    }

    /// Name of an element as the set of atom labels below it.
    pub fn element_name(&self, b: &Element) -> String {
        let labels: Vec<&str> = b.atoms().map(|i| self.atom_labels[i].as_str()).collect();
        format!("{{{}}}", labels.join(","))
    }
}

/// A Boolean algebra on the carrier `0..n` given by total operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanTables {
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub complement: Vec<usize>,
    pub zero: usize,
    pub one: usize,
}

impl BooleanTables {
    /// Tables of `algebra` over its elements in canonical order.
    pub fn of(algebra: &FiniteBooleanAlgebra, limits: &Limits) -> Result<Self> {
        let elems = algebra.elements(limits)?;
        let idx = |e: &Element| e.index().expect("enumerable algebras are narrow") as usize;
        let table = |op: fn(&Element, &Element) -> Element| {
            elems
                .iter()
                .map(|a| elems.iter().map(|b| idx(&op(a, b))).collect())
                .collect()
        };
        Ok(BooleanTables {
            meet: table(Element::meet),
            join: table(Element::join),
            complement: elems.iter().map(|a| idx(&a.complement())).collect(),
            zero: idx(&algebra.zero()),
            one: idx(&algebra.one()),
        })
    }

    pub fn size(&self) -> usize {
        self.complement.len()
    }

    /// Exhaustively checks the Boolean algebra laws on every element triple.
    pub fn check_laws(&self) -> Result<()> {
        let n = self.size();
        let well_formed = self.meet.len() == n
            && self.join.len() == n
            && self.meet.iter().chain(&self.join).all(|row| row.len() == n)
            && self
                .meet
                .iter()
                .chain(&self.join)
                .flatten()
                .chain(&self.complement)
                .chain([&self.zero, &self.one])
                .all(|&v| v < n);
        if n == 0 || !well_formed {
            return Err(Error::InvalidStructure(
                "operation tables are not total on the carrier".into(),
            ));
        }
        let (m, j, c) = (&self.meet, &self.join, &self.complement);
        let fail = |law: &str, els: &[usize]| {
            Err(Error::InvalidStructure(format!("{law} fails at {els:?}")))
        };
        for a in 0..n {
            if m[a][self.one] != a || j[a][self.zero] != a {
                return fail("identity", &[a]);
            }
            if m[a][c[a]] != self.zero || j[a][c[a]] != self.one {
                return fail("complement", &[a]);
            }
            for b in 0..n {
                if m[a][b] != m[b][a] || j[a][b] != j[b][a] {
                    return fail("commutativity", &[a, b]);
                }
                if m[a][j[a][b]] != a || j[a][m[a][b]] != a {
                    return fail("absorption", &[a, b]);
                }
                for x in 0..n {
                    if m[m[a][b]][x] != m[a][m[b][x]] || j[j[a][b]][x] != j[a][j[b][x]] {
                        return fail("associativity", &[a, b, x]);
                    }
                    if m[a][j[b][x]] != j[m[a][b]][m[a][x]] || j[a][m[b][x]] != m[j[a][b]][j[a][x]] {
                        return fail("distributivity", &[a, b, x]);
                    }
                }
            }
        }
        Ok(())
    }

    /// Validates the tables and rewrites each carrier element as the set of
    /// atoms below it. Atoms keep carrier order and are labelled `e<index>`.
    pub fn normalize(&self) -> Result<(FiniteBooleanAlgebra, Vec<Element>)> {
        self.check_laws()?;
        let n = self.size();
        let le = |a: usize, b: usize| self.meet[a][b] == a;
        let atoms: Vec<usize> = (0..n)
            .filter(|&a| a != self.zero && (0..n).all(|b| b == self.zero || b == a || !le(b, a)))
            .collect();
        let algebra =
            FiniteBooleanAlgebra::with_atoms(atoms.iter().map(|a| format!("e{a}")).collect());
        let images: Vec<Element> = (0..n)
            .map(|x| {
                Element::from_atoms(
                    atoms.len(),
                    atoms.iter().enumerate().filter(|&(_, &a)| le(a, x)).map(|(i, _)| i),
                )
            })
            .collect();
        for (x, img) in images.iter().enumerate() {
            let rebuilt = img
                .atoms()
                .fold(self.zero, |acc, i| self.join[acc][atoms[i]]);
            if rebuilt != x {
                return Err(Error::InvalidStructure(format!(
                    "element {x} is not the join of the atoms below it"
                )));
            }
        }
        let distinct: BTreeSet<&Element> = images.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidStructure(
                "carrier is not the powerset of its atoms".into(),
            ));
        }
        Ok((algebra, images))
    }
}

/// A subset of a finite Boolean algebra satisfying the filter conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filter {
    members: BTreeSet<Element>,
}

impl Filter {
    pub fn new(algebra: &FiniteBooleanAlgebra, members: BTreeSet<Element>) -> Result<Filter> {
        if !is_filter(algebra, &members) {
            return Err(Error::InvalidStructure("subset is not a filter".into()));
        }
        Ok(Filter { members })
    }

    pub fn members(&self) -> &BTreeSet<Element> {
        &self.members
    }

    pub fn contains(&self, b: &Element) -> bool {
        self.members.contains(b)
    }
}

/// `1 ∈ S`, `0 ∉ S`, `S` upward closed and closed under meets.
pub fn is_filter(algebra: &FiniteBooleanAlgebra, subset: &BTreeSet<Element>) -> bool {
    if algebra.is_degenerate() || !subset.iter().all(|b| algebra.contains(b)) {
        return false;
    }
    if !subset.contains(&algebra.one()) || subset.contains(&algebra.zero()) {
        return false;
    }
    for a in subset {
        // every c ≥ a: a joined with any subset of the atoms outside a
        let free: Vec<usize> = a.complement().atoms().collect();
        if free.len() >= 64 || (1u128 << free.len()) > subset.len() as u128 {
            return false;
        }
        for mask in 0..1u64 << free.len() {
            let up = a.join(&Element::from_atoms(
                a.width(),
                free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x),
            ));
            if !subset.contains(&up) {
                return false;
            }
        }
    }
    subset
        .iter()
        .all(|a| subset.iter().all(|b| subset.contains(&a.meet(b))))
}

/// A filter containing exactly one of `b`, `¬b` for every element `b`.
pub fn is_ultrafilter(
    algebra: &FiniteBooleanAlgebra,
    subset: &BTreeSet<Element>,
    limits: &Limits,
) -> Result<bool> {
    if !is_filter(algebra, subset) {
        return Ok(false);
    }
    Ok(algebra
        .elements(limits)?
        .iter()
        .all(|b| subset.contains(b) != subset.contains(&b.complement())))
}

/// The principal filter above an atom. In a finite algebra every
/// ultrafilter has this form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ultrafilter {
    atom: usize,
}

impl Ultrafilter {
    pub fn principal(algebra: &FiniteBooleanAlgebra, atom: usize) -> Result<Ultrafilter> {
        if atom >= algebra.atom_count() {
            return Err(Error::InvalidStructure(format!("no atom {atom}")));
        }
        Ok(Ultrafilter { atom })
    }

    /// Index of the generating atom.
    pub fn atom(&self) -> usize {
        self.atom
    }

    pub fn contains(&self, b: &Element) -> bool {
        b.contains(self.atom)
    }

    pub fn to_filter(&self, algebra: &FiniteBooleanAlgebra, limits: &Limits) -> Result<Filter> {
        let members = algebra
            .elements(limits)?
            .into_iter()
            .filter(|b| self.contains(b))
            .collect();
        Ok(Filter { members })
    }
}

/// All ultrafilters, in atom order.
pub fn ultrafilters(algebra: &FiniteBooleanAlgebra) -> Result<Vec<Ultrafilter>> {
    if algebra.is_degenerate() {
        return Err(Error::DegenerateAlgebra);
    }
    (0..algebra.atom_count())
        .map(|a| Ultrafilter::principal(algebra, a))
        .collect()
}

/// A homomorphism `B → 2`, stored as the ultrafilter `p⁻¹(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoValuedHom {
    kernel: Ultrafilter,
}

impl TwoValuedHom {
    /// `p_U(b) = [b ∈ U]`.
    pub fn from_ultrafilter(u: Ultrafilter) -> Self {
        TwoValuedHom { kernel: u }
    }

    /// Validates an explicit map on all elements (canonical order).
    pub fn from_table(algebra: &FiniteBooleanAlgebra, table: &[bool]) -> Result<Self> {
        let elems = algebra.elements(&Limits::default())?;
        if table.len() != elems.len() {
            return Err(Error::NotAHomomorphism("table is not total".into()));
        }
        let at = |e: &Element| table[e.index().unwrap() as usize];
        if at(&algebra.zero()) || !at(&algebra.one()) {
            return Err(Error::NotAHomomorphism("0 and 1 are not preserved".into()));
        }
        for a in &elems {
            if at(&a.complement()) == at(a) {
                return Err(Error::NotAHomomorphism(format!(
                    "complement of {} not preserved",
                    algebra.element_name(a)
                )));
            }
            for b in &elems {
                if at(&a.meet(b)) != (at(a) && at(b)) || at(&a.join(b)) != (at(a) || at(b)) {
                    return Err(Error::NotAHomomorphism(format!(
                        "meet or join of {} and {} not preserved",
                        algebra.element_name(a),
                        algebra.element_name(b)
                    )));
                }
            }
        }
        let atom = (0..algebra.atom_count())
            .find(|&i| at(&algebra.atom(i)))
            .ok_or_else(|| Error::NotAHomomorphism("no atom maps to 1".into()))?;
        Ok(TwoValuedHom {
            kernel: Ultrafilter::principal(algebra, atom)?,
        })
    }

    pub fn apply(&self, b: &Element) -> bool {
        self.kernel.contains(b)
    }

    /// `p⁻¹(1)`.
    pub fn preimage_of_one(&self) -> Ultrafilter {
        self.kernel
    }

    pub fn table(&self, algebra: &FiniteBooleanAlgebra, limits: &Limits) -> Result<Vec<bool>> {
        Ok(algebra
            .elements(limits)?
            .iter()
            .map(|b| self.apply(b))
            .collect())
    }
}

/// All homomorphisms into `2`, in the order of their ultrafilters.
pub fn hom_to_2(algebra: &FiniteBooleanAlgebra) -> Result<Vec<TwoValuedHom>> {
    Ok(ultrafilters(algebra)?
        .into_iter()
        .map(TwoValuedHom::from_ultrafilter)
        .collect())
}

/// Ultrafilter points with the basis `D(b) = {U : b ∈ U}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoneSpace {
    algebra: FiniteBooleanAlgebra,
    points: Vec<Ultrafilter>,
}

pub fn stone_space(algebra: &FiniteBooleanAlgebra) -> Result<StoneSpace> {
    Ok(StoneSpace {
        points: ultrafilters(algebra)?,
        algebra: algebra.clone(),
    })
}

impl StoneSpace {
    pub fn algebra(&self) -> &FiniteBooleanAlgebra {
        &self.algebra
    }

    pub fn points(&self) -> &[Ultrafilter] {
        &self.points
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn point_name(&self, i: usize) -> &str {
        &self.algebra.atom_labels()[self.points[i].atom()]
    }

    pub fn point_names(&self) -> Vec<String> {
        (0..self.point_count())
            .map(|i| self.point_name(i).to_string())
            .collect()
    }

    /// `D(b)` as a subset of the points, i.e. an element of the clopen algebra.
    pub fn basic_open(&self, b: &Element) -> Element {
        Element::from_atoms(
            self.point_count(),
            self.points
                .iter()
                .enumerate()
                .filter(|(_, u)| u.contains(b))
                .map(|(i, _)| i),
        )
    }

    /// `(b, D(b))` for every element, in canonical order.
    pub fn basis(&self, limits: &Limits) -> Result<Vec<(Element, Element)>> {
        Ok(self
            .algebra
            .elements(limits)?
            .into_iter()
            .map(|b| {
                let d = self.basic_open(&b);
                (b, d)
            })
            .collect())
    }

    /// Checks `U ∈ D(b) ⇔ b ∈ U`, `D(0) = ∅`, `D(1) = all` and that `D`
    /// preserves meets, joins and complements, over every element pair.
    pub fn check_invariants(&self, limits: &Limits) -> Result<()> {
        let basis = self.basis(limits)?;
        limits.check("basis pair check", (basis.len() as u128).pow(2))?;
        let fail = |m: String| Err(Error::InvariantViolation(m));
        if !self.basic_open(&self.algebra.zero()).is_zero() {
            return fail("D(0) is not empty".into());
        }
        if !self.basic_open(&self.algebra.one()).is_one() {
            return fail("D(1) is not the whole space".into());
        }
        for (b, db) in &basis {
            for (i, u) in self.points.iter().enumerate() {
                if db.contains(i) != u.contains(b) {
                    return fail(format!("membership of point {i} in D(b)"));
                }
            }
            if self.basic_open(&b.complement()) != db.complement() {
                return fail(format!("D(¬b) for b = {}", self.algebra.element_name(b)));
            }
            for (c, dc) in &basis {
                if self.basic_open(&b.meet(c)) != db.meet(dc)
                    || self.basic_open(&b.join(c)) != db.join(dc)
                {
                    return fail(format!(
                        "D does not preserve meet/join at {}, {}",
                        self.algebra.element_name(b),
                        self.algebra.element_name(c)
                    ));
                }
            }
        }
        Ok(())
    }

    /// Every subset of a finite Stone space is clopen.
    pub fn clopen_algebra(&self) -> FiniteBooleanAlgebra {
        FiniteBooleanAlgebra::with_atoms(self.point_names())
    }
}

/// `b ↦ D(b)` onto the clopen algebra, verified exhaustively to be a
/// Boolean isomorphism. The returned homomorphism is the witness.
pub fn stone_roundtrip(algebra: &FiniteBooleanAlgebra, limits: &Limits) -> Result<BooleanHom> {
    let space = stone_space(algebra)?;
    let clopens = space.clopen_algebra();
    let iso = BooleanHom::from_fn(algebra, &clopens, |b| space.basic_open(b), limits)
        .map_err(|e| Error::InvariantViolation(format!("b ↦ D(b) is not a homomorphism: {e}")))?;
    let table = iso.table(limits)?;
    let images: BTreeSet<&Element> = table.iter().map(|(_, d)| d).collect();
    if images.len() != table.len() || clopens.element_count() != algebra.element_count() {
        return Err(Error::InvariantViolation(
            "b ↦ D(b) is not a bijection onto the clopens".into(),
        ));
    }
    Ok(iso)
}

/// The propositional theory `T_B`: one proposition `c<i>` per element (by
/// canonical index) with axioms forcing every model to be a homomorphism
/// `B → 2`.
pub fn theory_of_algebra(
    algebra: &FiniteBooleanAlgebra,
    limits: &Limits,
) -> Result<crate::syntax::Theory> {
    use crate::syntax::{Axiom, Formula, Signature, Theory};

    let count = algebra.element_count_sat();
    if count > limits.max_propositions as u128 {
        return Err(Error::bound(
            "propositions for the theory of an algebra",
            count,
            limits.max_propositions as u64,
        ));
    }
    let elems = algebra.elements(limits)?;
    let name = |e: &Element| format!("c{}", e.index().unwrap());
    let c = |e: &Element| Formula::prop(name(e));
    let mut sig = Signature::new();
    for e in &elems {
        sig.add_proposition(&name(e))?;
    }
    let (zero, one) = (algebra.zero(), algebra.one());
    let mut axioms = vec![
        Axiom::formula(Formula::not(c(&zero))),
        Axiom::formula(c(&one)),
    ];
    if zero != one {
        let proper: Vec<&Element> = elems.iter().filter(|e| **e != zero && **e != one).collect();
        for &b in &proper {
            let nb = b.complement();
            axioms.push(Axiom::formula(Formula::implies(c(&nb), Formula::not(c(b)))));
            axioms.push(Axiom::formula(Formula::implies(Formula::not(c(b)), c(&nb))));
        }
        for (i, &b) in proper.iter().enumerate() {
            for &d in &proper[i + 1..] {
                let (m, j) = (b.meet(d), b.join(d));
                axioms.push(Axiom::formula(Formula::implies(
                    Formula::and(c(b), c(d)),
                    c(&m),
                )));
                axioms.push(Axiom::formula(Formula::implies(
                    c(&m),
                    Formula::and(c(b), c(d)),
                )));
                axioms.push(Axiom::formula(Formula::implies(
                    Formula::or(c(b), c(d)),
                    c(&j),
                )));
                axioms.push(Axiom::formula(Formula::implies(
                    c(&j),
                    Formula::or(c(b), c(d)),
                )));
            }
        }
    }
    Theory::new(format!("T_B{}", elems.len()), sig, axioms)
}

/// `b ↦ [c_b]` from `B` into the Lindenbaum-Tarski algebra of `T_B`,
/// verified to be an isomorphism.
pub fn recover_from_theory(
    algebra: &FiniteBooleanAlgebra,
    limits: &Limits,
) -> Result<(crate::propositional::LtAlgebra, BooleanHom)> {
    use crate::syntax::Formula;

    let theory = theory_of_algebra(algebra, limits)?;
    let lt = crate::propositional::lindenbaum_tarski(&theory, limits)?;
    let hom = BooleanHom::from_fn(
        algebra,
        lt.algebra(),
        |b| {
            lt.class_of(&Formula::prop(format!("c{}", b.index().unwrap())))
                .expect("proposition declared in T_B")
        },
        limits,
    )?;
    if !hom.is_isomorphism() {
        return Err(Error::InvariantViolation(
            "B and the algebra of T_B are not isomorphic".into(),
        ));
    }
    Ok((lt, hom))
}
