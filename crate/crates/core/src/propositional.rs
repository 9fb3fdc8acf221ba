//! Truth-table semantics and Lindenbaum-Tarski algebras.
//!
//! Assignments are indexed so that the first declared proposition is the
//! most significant bit; canonical order is numeric order of that index.
//! An LT class `[φ]` is the set of models of the theory satisfying `φ`,
//! which by completeness identifies provably equivalent formulas.

use std::collections::BTreeMap;
use std::fmt::{self, Write};
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::Ratio;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::stone::{Element, FiniteBooleanAlgebra};
use crate::syntax::{Formula, Fragment, Theory};

/// A total map from the theory's propositions to truth values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthAssignment {
    names: Arc<[String]>,
    index: u64,
}

impl TruthAssignment {
    /// Builds an assignment whose domain must be exactly `theory`'s propositions.
    pub fn new(theory: &Theory, values: &BTreeMap<String, bool>) -> Result<Self> {
        let names: Arc<[String]> = theory.signature().propositions().into();
        if values.len() != names.len() {
            return Err(Error::InvalidStructure(
                "assignment domain differs from the propositions".into(),
            ));
        }
        let mut index = 0u64;
        for (i, n) in names.iter().enumerate() {
            let Some(&v) = values.get(n) else {
                return Err(Error::UnknownSymbol(n.clone()));
            };
            if v {
                index |= 1 << (names.len() - 1 - i);
            }
        }
        Ok(TruthAssignment { names, index })
    }

    fn from_index(names: Arc<[String]>, index: u64) -> Self {
        TruthAssignment { names, index }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Position in canonical order among all assignments.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn value(&self, i: usize) -> bool {
        self.index >> (self.names.len() - 1 - i) & 1 == 1
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.names.iter().position(|n| n == name).map(|i| self.value(i))
    }

    /// Values as a bit string in proposition order, e.g. `01`.
    pub fn bits(&self) -> String {
        (0..self.names.len())
            .map(|i| if self.value(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for TruthAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries((0..self.names.len()).map(|i| (&self.names[i], self.value(i))))
            .finish()
    }
}

/// A formula with propositions resolved to bit positions.
#[derive(Debug, Clone)]
enum Compiled {
    Const(bool),
    Atom(u32),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
    Implies(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn new(phi: &Formula, names: &[String]) -> Result<Compiled> {
        let n = names.len();
        let two = |a: &Formula, b: &Formula| -> Result<(Box<Compiled>, Box<Compiled>)> {
            Ok((Box::new(Self::new(a, names)?), Box::new(Self::new(b, names)?)))
        };
        Ok(match phi {
            Formula::True => Compiled::Const(true),
            Formula::False => Compiled::Const(false),
            Formula::Prop(p) => {
                let i = names
                    .iter()
                    .position(|q| q == p)
                    .ok_or_else(|| Error::UnknownSymbol(p.clone()))?;
                Compiled::Atom((n - 1 - i) as u32)
            }
            Formula::Not(a) => Compiled::Not(Box::new(Self::new(a, names)?)),
            Formula::And(a, b) => {
                let (a, b) = two(a, b)?;
                Compiled::And(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = two(a, b)?;
                Compiled::Or(a, b)
            }
            Formula::Implies(a, b) => {
                let (a, b) = two(a, b)?;
                Compiled::Implies(a, b)
            }
            _ => {
                return Err(Error::FragmentViolation(format!(
                    "`{phi}` is not a propositional formula"
                )))
            }
        })
    }

    fn eval(&self, index: u64) -> bool {
        match self {
            Compiled::Const(b) => *b,
            Compiled::Atom(shift) => index >> shift & 1 == 1,
            Compiled::Not(a) => !a.eval(index),
            Compiled::And(a, b) => a.eval(index) && b.eval(index),
            Compiled::Or(a, b) => a.eval(index) || b.eval(index),
            Compiled::Implies(a, b) => !a.eval(index) || b.eval(index),
        }
    }
}

pub fn eval(formula: &Formula, assignment: &TruthAssignment) -> Result<bool> {
    Ok(Compiled::new(formula, &assignment.names)?.eval(assignment.index))
}

/// The satisfying assignments of a propositional theory, in canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct PropModelSet {
    names: Arc<[String]>,
    models: Vec<u64>,
}

fn check_propositional(theory: &Theory, limits: &Limits) -> Result<()> {
    if theory.fragment() != Fragment::Propositional {
        return Err(Error::FragmentViolation(format!(
            "theory `{}` is {}, not PROPOSITIONAL",
            theory.name(),
            theory.fragment()
        )));
    }
    let n = theory.signature().propositions().len();
    if n > limits.max_propositions || n > 63 {
        return Err(Error::bound(
            "propositions for truth-table enumeration",
            n,
            limits.max_propositions as u64,
        ));
    }
    Ok(())
}

pub fn models_of(theory: &Theory, limits: &Limits) -> Result<PropModelSet> {
    check_propositional(theory, limits)?;
    let names: Arc<[String]> = theory.signature().propositions().into();
    let axioms: Vec<Compiled> = theory
        .axioms()
        .iter()
        .map(|ax| {
            let (premise, conclusion) = ax.as_sequent();
            Compiled::new(
                &Formula::implies(premise.clone(), conclusion.clone()),
                &names,
            )
        })
        .collect::<Result<_>>()?;
    let models = (0..1u64 << names.len())
        .into_par_iter()
        .filter(|&i| axioms.iter().all(|a| a.eval(i)))
        .collect();
    Ok(PropModelSet { names, models })
}

impl PropModelSet {
    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, i: usize) -> TruthAssignment {
        TruthAssignment::from_index(self.names.clone(), self.models[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = TruthAssignment> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    /// The models satisfying `formula`, as a bitset over model positions.
    pub fn satisfying(&self, formula: &Formula) -> Result<Element> {
        let c = Compiled::new(formula, &self.names)?;
        Ok(Element::from_atoms(
            self.len(),
            (0..self.len()).filter(|&i| c.eval(self.models[i])),
        ))
    }
}

impl fmt::Debug for PropModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter().map(|a| a.bits())).finish()
    }
}

pub fn entails(theory: &Theory, formula: &Formula, limits: &Limits) -> Result<bool> {
    Ok(models_of(theory, limits)?.satisfying(formula)?.is_one())
}

/// The Lindenbaum-Tarski algebra: all subsets of the model set, with the
/// class of each proposition recorded as a generator.
#[derive(Debug, Clone)]
pub struct LtAlgebra {
    models: PropModelSet,
    algebra: FiniteBooleanAlgebra,
    generators: Vec<(String, Element)>,
}

pub fn lindenbaum_tarski(theory: &Theory, limits: &Limits) -> Result<LtAlgebra> {
    let models = models_of(theory, limits)?;
    let algebra =
        FiniteBooleanAlgebra::with_atoms(models.iter().map(|m| format!("m{}", m.bits())).collect());
    let generators = models
        .names
        .iter()
        .map(|p| Ok((p.clone(), models.satisfying(&Formula::prop(p.clone()))?)))
        .collect::<Result<_>>()?;
    Ok(LtAlgebra {
        models,
        algebra,
        generators,
    })
}

impl LtAlgebra {
    pub fn models(&self) -> &PropModelSet {
        &self.models
    }

    pub fn algebra(&self) -> &FiniteBooleanAlgebra {
        &self.algebra
    }

    /// `(proposition, [p])` in declaration order.
    pub fn generators(&self) -> &[(String, Element)] {
        &self.generators
    }

    pub fn element_count(&self) -> BigUint {
        self.algebra.element_count()
    }

    pub fn class_of(&self, formula: &Formula) -> Result<Element> {
        self.models.satisfying(formula)
    }

    /// `[φ] ≤ [ψ]`.
    pub fn le(&self, phi: &Formula, psi: &Formula) -> Result<bool> {
        Ok(self.class_of(phi)?.le(&self.class_of(psi)?))
    }
}

impl LtAlgebra {
    /// `{"propositions", "models": [bits], "atoms", "elements",
    /// "generators": {p: [model positions]}}`. The element count is a
    /// decimal string since it is `2^atoms`.
    pub fn to_json(&self) -> Value {
        let mut generators = Map::new();
        for (p, e) in &self.generators {
            generators.insert(p.clone(), Value::from(e.atoms().collect::<Vec<_>>()));
        }
        json!({
            "propositions": self.models.names(),
            "models": self.models.iter().map(|m| m.bits()).collect::<Vec<_>>(),
            "atoms": self.algebra.atom_count(),
            "elements": self.element_count().to_string(),
            "generators": generators,
        })
    }

    /// Hasse diagram: one node per element, one edge per cover `b < b ∪ {a}`.
    pub fn to_dot(&self, limits: &Limits) -> Result<String> {
        let elements = self.algebra.elements(limits)?;
        let k = self.algebra.atom_count();
        limits.check("Hasse diagram edges", (elements.len() as u128) * k as u128)?;
        let mut out = String::from("digraph LT {\n  rankdir=BT;\n");
        for (i, b) in elements.iter().enumerate() {
            writeln!(out, "  e{i} [label=\"{}\"];", self.algebra.element_name(b)).unwrap();
        }
        for (i, b) in elements.iter().enumerate() {
            for a in (0..k).filter(|&a| !b.contains(a)) {
                let up = b.index().expect("enumerable") | 1u64 << a;
                writeln!(out, "  e{i} -> e{up};").unwrap();
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// Checks an LT export against `theory`: the listed assignments are exactly
/// its models in order, the counts agree and each generator is the set of
/// models where its proposition holds.
pub fn validate_lt_json(theory: &Theory, value: &Value, limits: &Limits) -> Result<()> {
    let bad = |what: &str| Err(Error::InvalidStructure(format!("json: {what}")));
    let models = models_of(theory, limits)?;
    let listed: Option<Vec<&str>> = value
        .get("models")
        .and_then(Value::as_array)
        .and_then(|a| a.iter().map(Value::as_str).collect());
    let Some(listed) = listed else {
        return bad("missing models");
    };
    let expected: Vec<String> = models.iter().map(|m| m.bits()).collect();
    if listed != expected.iter().map(String::as_str).collect::<Vec<_>>() {
        return bad("models are not the theory's models in canonical order");
    }
    if value.get("atoms").and_then(Value::as_u64) != Some(models.len() as u64) {
        return bad("atom count differs from the model count");
    }
    let count = BigUint::from(2u8).pow(models.len() as u32).to_string();
    if value.get("elements").and_then(Value::as_str) != Some(count.as_str()) {
        return bad("element count is not 2^atoms");
    }
    let Some(gens) = value.get("generators").and_then(Value::as_object) else {
        return bad("missing generators");
    };
    if gens.len() != models.names().len() {
        return bad("one generator per proposition expected");
    }
    for (i, p) in models.names().iter().enumerate() {
        let want: Vec<u64> = (0..models.len())
            .filter(|&m| models.get(m).value(i))
            .map(|m| m as u64)
            .collect();
        let got: Option<Vec<u64>> = gens
            .get(p)
            .and_then(Value::as_array)
            .and_then(|a| a.iter().map(Value::as_u64).collect());
        if got.as_ref() != Some(&want) {
            return bad(&format!("generator `{p}` differs"));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Tautology,
    Contradiction,
    Contingent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Tautology => "TAUTOLOGY",
            Verdict::Contradiction => "CONTRADICTION",
            Verdict::Contingent => "CONTINGENT",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    /// Satisfying models over all models; `1` when there are no models.
    pub ratio: Ratio<u64>,
}

/// Over an inconsistent theory every formula is entailed, so every formula
/// is reported as a tautology with ratio 1.
pub fn classify(theory: &Theory, formula: &Formula, limits: &Limits) -> Result<Classification> {
    let models = models_of(theory, limits)?;
    let sat = models.satisfying(formula)?;
    let (k, n) = (sat.count() as u64, models.len() as u64);
    let verdict = if k == n {
        Verdict::Tautology
    } else if k == 0 {
        Verdict::Contradiction
    } else {
        Verdict::Contingent
    };
    let ratio = if n == 0 { Ratio::from_integer(1) } else { Ratio::new(k, n) };
    Ok(Classification { verdict, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_theory, Axiom, Signature};
    use catlogic_oracle::propositional as oracle;
    use proptest::prelude::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn p(n: &str) -> Formula {
        Formula::prop(n)
    }

    fn theory(props: &[&str], axioms: Vec<Formula>) -> Theory {
        let mut sig = Signature::new();
        for q in props {
            sig.add_proposition(q).unwrap();
        }
        Theory::new("T", sig, axioms.into_iter().map(Axiom::formula).collect()).unwrap()
    }

    #[test]
    fn lt_exports() {
        let t = theory(&["p", "q"], vec![Formula::implies(p("p"), p("q"))]);
        let lt = lindenbaum_tarski(&t, &lim()).unwrap();
        let v: Value = serde_json::from_str(&lt.to_json().to_string()).unwrap();
        assert_eq!(v["models"], json!(["00", "01", "11"]));
        assert_eq!(v["generators"]["q"], json!([1, 2]));
        validate_lt_json(&t, &v, &lim()).unwrap();
        let mut broken = v.clone();
        broken["generators"]["p"] = json!([1]);
        assert!(validate_lt_json(&t, &broken, &lim()).is_err());
        let dot = lt.to_dot(&lim()).unwrap();
        assert_eq!(dot.matches("label").count(), 8);
        // each of the 8 elements has one cover per missing atom
        assert_eq!(dot.matches("->").count(), 12);
    }

    #[test]
    fn eval_examples() {
        let t = theory(&["p", "q"], vec![]);
        let a = |pv, qv| {
            TruthAssignment::new(&t, &[("p".to_string(), pv), ("q".to_string(), qv)].into()).unwrap()
        };
        assert!(!eval(&Formula::and(p("p"), Formula::not(p("p"))), &a(true, false)).unwrap());
        assert!(eval(&Formula::implies(p("p"), p("q")), &a(true, true)).unwrap());
        assert!(!eval(&Formula::or(p("p"), p("q")), &a(false, false)).unwrap());
        assert_eq!(a(false, true).bits(), "01");
        assert_eq!(a(true, false).get("p"), Some(true));
    }

    #[test]
    fn partial_assignment_rejected() {
        let t = theory(&["p", "q"], vec![]);
        assert!(TruthAssignment::new(&t, &[("p".to_string(), true)].into()).is_err());
    }

    #[test]
    fn models_examples() {
        let t = theory(&["p", "q"], vec![Formula::implies(p("p"), p("q"))]);
        let m = models_of(&t, &lim()).unwrap();
        assert_eq!(m.iter().map(|a| a.bits()).collect::<Vec<_>>(), ["00", "01", "11"]);
        let c = theory(&["p"], vec![Formula::and(p("p"), Formula::not(p("p")))]);
        assert!(models_of(&c, &lim()).unwrap().is_empty());
        assert_eq!(models_of(&theory(&["p", "q", "r"], vec![]), &lim()).unwrap().len(), 8);
    }

    #[test]
    fn entails_examples() {
        let t = theory(&["p", "q"], vec![Formula::implies(p("p"), p("q")), p("p")]);
        assert!(entails(&t, &p("q"), &lim()).unwrap());
        let free = theory(&["p"], vec![]);
        assert!(entails(&free, &Formula::or(p("p"), Formula::not(p("p"))), &lim()).unwrap());
        assert!(!entails(&free, &p("p"), &lim()).unwrap());
    }

    #[test]
    fn lt_examples() {
        let free = lindenbaum_tarski(&theory(&["p", "q"], vec![]), &lim()).unwrap();
        assert_eq!(free.element_count(), BigUint::from(16u8));
        assert_eq!(free.algebra().atom_count(), 4);
        let imp = lindenbaum_tarski(&theory(&["p", "q"], vec![Formula::implies(p("p"), p("q"))]), &lim()).unwrap();
        assert_eq!(imp.element_count(), BigUint::from(8u8));
        assert_eq!(imp.algebra().atom_count(), 3);
        let bad = lindenbaum_tarski(&theory(&["p"], vec![Formula::False]), &lim()).unwrap();
        assert_eq!(bad.element_count(), BigUint::from(1u8));
        assert!(bad.algebra().is_degenerate());
    }

    #[test]
    fn lt_sizes_match_assignment_subsets() {
        for n in 1..=3usize {
            let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let lt = lindenbaum_tarski(&theory(&refs, vec![]), &lim()).unwrap();
            assert_eq!(lt.element_count(), BigUint::from(oracle::free_lt_size(n)));
        }
    }

    #[test]
    fn classify_examples() {
        let free = theory(&["p", "q"], vec![]);
        let taut = classify(&free, &Formula::or(p("p"), Formula::not(p("p"))), &lim()).unwrap();
        assert_eq!((taut.verdict, taut.ratio), (Verdict::Tautology, Ratio::from_integer(1)));
        let con = classify(&free, &Formula::and(p("p"), Formula::not(p("p"))), &lim()).unwrap();
        assert_eq!((con.verdict, con.ratio), (Verdict::Contradiction, Ratio::from_integer(0)));
        let cont = classify(&free, &p("p"), &lim()).unwrap();
        assert_eq!((cont.verdict, cont.ratio), (Verdict::Contingent, Ratio::new(1, 2)));
    }

    #[test]
    fn non_propositional_rejected() {
        let t = parse_theory("theory G sort S op m : S S -> S axiom m(x, y) = m(y, x)").unwrap();
        assert!(matches!(models_of(&t, &lim()), Err(Error::FragmentViolation(_))));
        let free = theory(&["p"], vec![]);
        assert!(matches!(entails(&free, &p("r"), &lim()), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn proposition_bound() {
        let names: Vec<String> = (0..21).map(|i| format!("p{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let t = theory(&refs, vec![]);
        assert!(matches!(models_of(&t, &lim()), Err(Error::BoundExceeded { .. })));
    }

    const NAMES: [&str; 3] = ["p", "q", "r"];

    fn arb_formula(props: usize) -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::True),
            Just(Formula::False),
            (0..props).prop_map(|i| p(NAMES[i])),
        ];
        leaf.prop_recursive(4, 32, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
            ]
        })
    }

    fn arb_case() -> impl Strategy<Value = (Theory, Formula, Formula)> {
        (1usize..=3).prop_flat_map(|n| {
            (
                prop::collection::vec(arb_formula(n), 0..3),
                arb_formula(n),
                arb_formula(n),
            )
                .prop_map(move |(axioms, a, b)| (theory(&NAMES[..n], axioms), a, b))
        })
    }

    fn oracle_entails(t: &Theory, phi: &Formula) -> bool {
        let n = t.signature().propositions().len();
        let axioms: Vec<Formula> = t.axioms().iter().map(|a| a.as_sequent().1.clone()).collect();
        oracle::entails(n, |i, v| brute_eval(&axioms[i], v), axioms.len(), |v| brute_eval(phi, v))
    }

    fn brute_eval(phi: &Formula, v: &[bool]) -> bool {
        match phi {
            Formula::True => true,
            Formula::False => false,
            Formula::Prop(q) => v[NAMES.iter().position(|n| n == q).unwrap()],
            Formula::Not(a) => !brute_eval(a, v),
            Formula::And(a, b) => brute_eval(a, v) && brute_eval(b, v),
            Formula::Or(a, b) => brute_eval(a, v) || brute_eval(b, v),
            Formula::Implies(a, b) => !brute_eval(a, v) || brute_eval(b, v),
            _ => unreachable!(),
        }
    }

    proptest! {
        #[test]
        fn entailment_matches_truth_tables((t, phi, _) in arb_case()) {
            let lt = lindenbaum_tarski(&t, &lim()).unwrap();
            let e = entails(&t, &phi, &lim()).unwrap();
            prop_assert_eq!(e, lt.class_of(&phi).unwrap().is_one());
            prop_assert_eq!(e, oracle_entails(&t, &phi));
        }

        #[test]
        fn lt_order_is_entailment((t, phi, psi) in arb_case()) {
            let lt = lindenbaum_tarski(&t, &lim()).unwrap();
            prop_assert_eq!(
                lt.le(&phi, &psi).unwrap(),
                entails(&t, &Formula::implies(phi.clone(), psi.clone()), &lim()).unwrap()
            );
        }

        #[test]
        fn lt_respects_connectives((t, phi, psi) in arb_case()) {
            let lt = lindenbaum_tarski(&t, &lim()).unwrap();
            let (a, b) = (lt.class_of(&phi).unwrap(), lt.class_of(&psi).unwrap());
            prop_assert_eq!(lt.class_of(&Formula::and(phi.clone(), psi.clone())).unwrap(), a.meet(&b));
            prop_assert_eq!(lt.class_of(&Formula::or(phi.clone(), psi.clone())).unwrap(), a.join(&b));
            prop_assert_eq!(lt.class_of(&Formula::not(phi.clone())).unwrap(), a.complement());
        }

        #[test]
        fn tautology_iff_negation_contradiction((t, phi, _) in arb_case()) {
            prop_assume!(!models_of(&t, &lim()).unwrap().is_empty());
            let c = classify(&t, &phi, &lim()).unwrap();
            let d = classify(&t, &Formula::not(phi.clone()), &lim()).unwrap();
            prop_assert_eq!(c.verdict == Verdict::Tautology, d.verdict == Verdict::Contradiction);
        }
    }
}
