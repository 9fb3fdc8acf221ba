//! The ten acceptance criteria, one line each. Runs without the libtest
//! harness so the report is always printed; exits non-zero if any fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use catlogic::coherent::{
    basic_open, groupoid, satisfies_fo, sentences, separating_sentence, SentenceBounds, SizeBounds,
};
use catlogic::equational::{
    enumerate_models, enumerate_up_to_iso, homomorphisms, naturality_check, AlgebraicTheory, Backend,
    SynCategory, SynOptions,
};
use catlogic::propositional::lindenbaum_tarski;
use catlogic::stone::{hom_to_2, stone_roundtrip, stone_space, ultrafilters, FiniteBooleanAlgebra, TwoValuedHom};
use catlogic::syntax::{parse_theory, Formula, Theory};
use catlogic::Limits;
use catlogic_oracle as oracle;

const GROUP: &str = "theory Group sort G op e : -> G op inv : G -> G op m : G G -> G
    axiom m(e, x) = x axiom m(inv(x), x) = e axiom m(m(x, y), z) = m(x, m(y, z))";
const INVOLUTION: &str = "theory Involution sort S op f : S -> S axiom f(f(x)) = x";

/// Twenty consistent propositional theories over at most three letters.
const PROPOSITIONAL: [&str; 20] = [
    "theory T1 prop p",
    "theory T2 prop p axiom p",
    "theory T3 prop p axiom ~p",
    "theory T4 prop p q",
    "theory T5 prop p q axiom p -> q",
    "theory T6 prop p q axiom p & q",
    "theory T7 prop p q axiom p | q",
    "theory T8 prop p q axiom ~(p & q)",
    "theory T9 prop p q axiom (p -> q) & (q -> p)",
    "theory T10 prop p q axiom p axiom p -> q",
    "theory T11 prop p q r",
    "theory T12 prop p q r axiom p -> q axiom q -> r",
    "theory T13 prop p q r axiom p | q | r",
    "theory T14 prop p q r axiom ~(p & q) axiom ~(q & r) axiom ~(p & r)",
    "theory T15 prop p q r axiom p & q -> r",
    "theory T16 prop p q r axiom (p -> q) | r",
    "theory T17 prop p q r axiom p | q axiom ~p | r",
    "theory T18 prop p q r axiom p axiom q axiom r",
    "theory T19 prop p q r axiom (p -> q) & (q -> p) axiom ~r | p",
    "theory T20 prop p q r axiom ~(p & q & r) axiom p | q",
];

fn lim() -> Limits {
    Limits::default()
}

fn theory(text: &str) -> Theory {
    parse_theory(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn algebras() -> Vec<FiniteBooleanAlgebra> {
    let mut out: Vec<FiniteBooleanAlgebra> = (1..=4).map(FiniteBooleanAlgebra::powerset).collect();
    for text in PROPOSITIONAL {
        out.push(lindenbaum_tarski(&theory(text), &lim()).unwrap().algebra().clone());
    }
    out
}

fn stone_roundtrips() {
    for alg in algebras() {
        let iso = stone_roundtrip(&alg, &lim()).unwrap();
        assert!(iso.is_isomorphism());
        let space = stone_space(&alg).unwrap();
        space.check_invariants(&lim()).unwrap();
        for (b, d) in iso.table(&lim()).unwrap() {
            assert_eq!(d, space.basic_open(&b));
        }
    }
}

fn ultrafilter_counts() {
    for alg in algebras() {
        let k = alg.atom_count();
        assert_eq!(ultrafilters(&alg).unwrap().len(), k);
        assert_eq!(hom_to_2(&alg).unwrap().len(), k);
        if k <= 4 {
            assert_eq!(oracle::boolean::homs_to_two(k).len(), k);
            // every value table on the elements, kept if it is a homomorphism
            let n = 1usize << k;
            let found = (0..1u32 << n)
                .filter(|t| {
                    let table: Vec<bool> = (0..n).map(|i| t >> i & 1 == 1).collect();
                    TwoValuedHom::from_table(&alg, &table).is_ok()
                })
                .count();
            assert_eq!(found, k);
        }
        if k <= 3 {
            assert_eq!(oracle::boolean::ultrafilters(k).len(), k);
        }
    }
}

fn lt_sizes() {
    for (n, text) in [(1, "theory F prop p"), (2, "theory F prop p q"), (3, "theory F prop p q r")] {
        let lt = lindenbaum_tarski(&theory(text), &lim()).unwrap();
        let expected = oracle::propositional::free_lt_size(n);
        assert_eq!(expected, [4, 16, 256][n - 1]);
        assert_eq!(lt.element_count(), expected.into());
    }
}

fn tables(models: &[catlogic::equational::FiniteAlgebra]) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<_> = models.iter().map(|m| m.tables().to_vec()).collect();
    out.sort();
    out
}

fn model_counts() {
    let sg = AlgebraicTheory::new(theory(
        "theory Sg sort S op m : S S -> S axiom m(m(x, y), z) = m(x, m(y, z))",
    ))
    .unwrap();
    let semigroups = enumerate_models(&sg, 2, &lim()).unwrap();
    assert_eq!(semigroups.len(), 8);
    assert_eq!(tables(&semigroups), oracle::equational::semigroups(2));

    let g = AlgebraicTheory::new(theory(GROUP)).unwrap();
    for (n, classes) in [(1, 1), (2, 1), (3, 1), (4, 2)] {
        let labeled = enumerate_models(&g, n, &lim()).unwrap();
        let brute = if n == 4 {
            oracle::equational::groups_of_order_four()
        } else {
            oracle::equational::groups_unpruned(n)
        };
        assert_eq!(tables(&labeled), brute, "order {n}");
        assert_eq!(enumerate_up_to_iso(&g, n, &lim()).unwrap().len(), classes);
        assert_eq!(oracle::equational::count_iso_classes(n, &[0, 1, 2], &brute), classes);
    }
}

fn naturality() {
    let mut compared = 0;
    for (text, backend) in [
        (GROUP, Backend::ModelEval),
        (INVOLUTION, Backend::Rewrite),
        (INVOLUTION, Backend::ModelEval),
    ] {
        let t = AlgebraicTheory::new(theory(text)).unwrap();
        let syn = SynCategory::new(&t, SynOptions::new(backend, 2, 2), &lim()).unwrap();
        let models: Vec<_> = (1..=3).flat_map(|n| enumerate_models(&t, n, &lim()).unwrap()).collect();
        for a in &models {
            for b in &models {
                let homs: BTreeSet<Vec<usize>> = homomorphisms(a, b, &lim())
                    .unwrap()
                    .iter()
                    .map(|h| h.map().to_vec())
                    .collect();
                let mut natural = BTreeSet::new();
                let total = b.size().pow(a.size() as u32);
                for code in 0..total {
                    let map: Vec<usize> = (0..a.size()).map(|i| code / b.size().pow(i as u32) % b.size()).collect();
                    if naturality_check(a, b, &map, &syn, &lim()).unwrap() {
                        natural.insert(map);
                    }
                }
                assert_eq!(natural, homs, "{} {backend}", t.name());
                compared += total;
            }
        }
    }
    // every map between the 6 groups, then twice between the 7 involutions,
    // on up to three points
    assert_eq!(compared, 380 + 2 * 607);
}

fn syn_laws() {
    let t = AlgebraicTheory::new(theory(INVOLUTION)).unwrap();
    let s = SynCategory::new(&t, SynOptions::new(Backend::Rewrite, 3, 2), &lim()).unwrap();
    assert_eq!(s.hom(1, 1).unwrap().len(), 2);
    assert_eq!(oracle::equational::involution_word_classes(3, 3), 2);
    let homs: Vec<Vec<Vec<_>>> = (0..=2)
        .map(|a| (0..=2).map(|b| s.hom(a, b).unwrap()).collect())
        .collect();
    for a in 0..=2 {
        for b in 0..=2 {
            for f in &homs[a][b] {
                assert_eq!(&s.compose(&s.identity(b).unwrap(), f).unwrap(), f);
                assert_eq!(&s.compose(f, &s.identity(a).unwrap()).unwrap(), f);
                for c in 0..=2 {
                    for g in &homs[b][c] {
                        let gf = s.compose(g, f).unwrap();
                        for d in 0..=2 {
                            for h in &homs[c][d] {
                                let left = s.compose(&s.compose(h, g).unwrap(), f).unwrap();
                                assert_eq!(left, s.compose(h, &gf).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
}

const PURE: &str = "theory Eq sort S";
const UNARY: &str = "theory P sort S pred P : S";

fn groupoid_structure() {
    let g = groupoid(&theory(PURE), SizeBounds::up_to(3), &lim()).unwrap();
    assert_eq!(g.len(), 3);
    assert_eq!(g.automorphism_counts(), vec![1, 2, 6]);
    g.verify_laws().unwrap();
    let corpus = sentences(g.theory().signature(), SentenceBounds::depth(2), &lim()).unwrap();
    for ((i, j), isos) in g.hom_sets() {
        assert!(!isos.is_empty());
        for phi in &corpus {
            assert_eq!(
                satisfies_fo(&g.objects()[i], phi, &lim()).unwrap(),
                satisfies_fo(&g.objects()[j], phi, &lim()).unwrap()
            );
        }
    }
}

fn basis_laws() {
    for (text, max) in [(PURE, 3), (UNARY, 2)] {
        let g = groupoid(&theory(text), SizeBounds::up_to(max), &lim()).unwrap();
        let corpus = sentences(g.theory().signature(), SentenceBounds::depth(2), &lim()).unwrap();
        let open = |phi: &Formula| -> BTreeSet<usize> {
            basic_open(&g, phi, &lim()).unwrap().members.into_iter().collect()
        };
        assert_eq!(open(&Formula::True), (0..g.len()).collect());
        assert!(open(&Formula::False).is_empty());
        let opens: Vec<BTreeSet<usize>> = corpus.iter().map(&open).collect();
        for (a, va) in corpus.iter().zip(&opens) {
            for (b, vb) in corpus.iter().zip(&opens) {
                let meet = open(&Formula::and(a.clone(), b.clone()));
                let join = open(&Formula::or(a.clone(), b.clone()));
                assert_eq!(meet, va & vb);
                assert_eq!(join, va | vb);
            }
        }
    }
}

fn separation() {
    for text in [
        PURE,
        UNARY,
        "theory Two sort A B",
        "theory TwoP sort A B pred P : A",
    ] {
        let t = theory(text);
        let g = groupoid(&t, SizeBounds::up_to(3), &lim()).unwrap();
        let small: Vec<usize> = (0..g.len()).filter(|&i| g.objects()[i].total_size() <= 3).collect();
        for (x, &i) in small.iter().enumerate() {
            for &j in &small[x + 1..] {
                if !g.hom(i, j).is_empty() {
                    continue;
                }
                let (m, n) = (&g.objects()[i], &g.objects()[j]);
                let phi = separating_sentence(m, n, SentenceBounds::depth(3), &lim())
                    .unwrap()
                    .unwrap_or_else(|| panic!("{}: objects {i} and {j} not separated", t.name()));
                assert!(phi.quantifier_depth() <= 3);
                assert_ne!(satisfies_fo(m, &phi, &lim()).unwrap(), satisfies_fo(n, &phi, &lim()).unwrap());
            }
        }
    }
}

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../theories");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "thy"))
        .collect();
    files.sort();
    assert!(files.len() >= 10);
    files
}

fn determinism() {
    let run = |workers: &str, args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_catlogic"))
            .args(["--workers", workers])
            .args(args)
            .output()
            .unwrap();
        (out.status.code(), out.stdout)
    };
    for file in corpus() {
        let f = file.to_str().unwrap();
        for args in [
            vec!["groupoid", f, "--max", "3"],
            vec!["--format", "json", "groupoid", f, "--max", "3"],
            vec!["models", f, "--size", "2"],
            vec!["models", f, "--size", "3", "--upto-iso"],
            vec!["--format", "json", "models", f, "--size", "3", "--upto-iso"],
        ] {
            let base = run("1", &args);
            for w in ["2", "8"] {
                assert_eq!(run(w, &args), base, "{args:?} with {w} workers");
            }
        }
    }
}

fn main() {
    let criteria: [(&str, fn(), u64); 10] = [
        ("1 Stone round-trip", stone_roundtrips, 10),
        ("2 ultrafilter counts", ultrafilter_counts, 10),
        ("3 LT sizes", lt_sizes, 1),
        ("4 equational model counts", model_counts, 60),
        ("5 functor/naturality correspondence", naturality, 60),
        ("6 Syn category laws", syn_laws, 10),
        ("7 groupoid structure", groupoid_structure, 10),
        ("8 logical basis laws", basis_laws, 10),
        ("9 separation", separation, 30),
        ("10 determinism", determinism, 600),
    ];
    let mut failed = 0;
    for (name, check, seconds) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check));
        let took = start.elapsed();
        let verdict = match outcome {
            Ok(()) if took <= Duration::from_secs(seconds) => "PASS".to_string(),
            Ok(()) => format!("FAIL (over the {seconds} s limit)"),
            Err(_) => "FAIL".to_string(),
        };
        if verdict != "PASS" {
            failed += 1;
        }
        println!("criterion {name}: {verdict} in {:.2} s", took.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} of 10 acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
