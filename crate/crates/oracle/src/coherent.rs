//! One-sorted relational structures on `0..n`. A relation of arity `k` is
//! a list of `n^k` truth values, first argument most significant.

use crate::equational::permutations;

fn tuple(mut index: usize, n: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    out
}

fn index(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

/// Every structure with relations of the given arities, in lexicographic
/// order with `false < true`.
pub fn structures(n: usize, arities: &[usize]) -> Vec<Vec<Vec<bool>>> {
    let lens: Vec<usize> = arities.iter().map(|&k| n.pow(k as u32)).collect();
    let total: usize = lens.iter().sum();
    let mut out = Vec::new();
    for bits in 0..1u64 << total {
        let mut flat = (0..total).map(|i| bits >> (total - 1 - i) & 1 == 1);
        out.push(lens.iter().map(|&l| flat.by_ref().take(l).collect()).collect());
    }
    out
}

/// Permutations `s` of `0..n` with `a_r(t) = b_r(s(t))` for every relation
/// and tuple.
pub fn isomorphisms(n: usize, arities: &[usize], a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<usize>> {
    permutations(n)
        .into_iter()
        .filter(|s| {
            arities.iter().enumerate().all(|(r, &k)| {
                (0..n.pow(k as u32)).all(|i| {
                    let t = tuple(i, n, k);
                    let img: Vec<usize> = t.iter().map(|&x| s[x]).collect();
                    a[r][i] == b[r][index(&img, n)]
                })
            })
        })
        .collect()
}

/// Number of isomorphism classes among all structures of size `n`.
pub fn class_count(n: usize, arities: &[usize]) -> usize {
    let all = structures(n, arities);
    let mut reps: Vec<&Vec<Vec<bool>>> = Vec::new();
    for m in &all {
        if !reps.iter().any(|r| !isomorphisms(n, arities, r, m).is_empty()) {
            reps.push(m);
        }
    }
    reps.len()
}
