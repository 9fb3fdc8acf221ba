//! Truth tables over `n` propositions, assignments as `Vec<bool>`.

fn assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1u64 << n).map(move |i| (0..n).map(|j| i >> (n - 1 - j) & 1 == 1).collect())
}

/// Whether every assignment satisfying all axioms satisfies `phi`.
pub fn entails(
    n: usize,
    axiom: impl Fn(usize, &[bool]) -> bool,
    axiom_count: usize,
    phi: impl Fn(&[bool]) -> bool,
) -> bool {
    assignments(n).all(|v| !(0..axiom_count).all(|i| axiom(i, &v)) || phi(&v))
}

/// Number of formulas over `n` propositions up to truth-table equivalence:
/// close the projections and constants under ∧, ∨, ¬ and count.
pub fn free_lt_size(n: usize) -> u64 {
    let rows: Vec<Vec<bool>> = assignments(n).collect();
    let table = |f: &dyn Fn(&[bool]) -> bool| -> Vec<bool> { rows.iter().map(|v| f(v)).collect() };
    let mut seen: std::collections::BTreeSet<Vec<bool>> = std::collections::BTreeSet::new();
    seen.insert(table(&|_| true));
    seen.insert(table(&|_| false));
    for j in 0..n {
        seen.insert(table(&|v| v[j]));
    }
    loop {
        let current: Vec<Vec<bool>> = seen.iter().cloned().collect();
        let before = seen.len();
        for a in &current {
            seen.insert(a.iter().map(|x| !x).collect());
            for b in &current {
                seen.insert(a.iter().zip(b).map(|(x, y)| *x && *y).collect());
                seen.insert(a.iter().zip(b).map(|(x, y)| *x || *y).collect());
            }
        }
        if seen.len() == before {
            return seen.len() as u64;
        }
    }
}
