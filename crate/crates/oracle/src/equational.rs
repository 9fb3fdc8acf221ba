//! Operation tables on `0..n`, indexed in mixed radix with the first
//! argument most significant.

/// Every family of tables for operations of the given arities, in
/// lexicographic order of the concatenated tables, that passes `check`.
pub fn all_tables(
    n: usize,
    arities: &[usize],
    check: impl Fn(&[Vec<usize>]) -> bool,
) -> Vec<Vec<Vec<usize>>> {
    let lens: Vec<usize> = arities.iter().map(|&k| n.pow(k as u32)).collect();
    let total: usize = lens.iter().sum();
    let mut flat = vec![0usize; total];
    let mut out = Vec::new();
    if n == 0 && lens.iter().any(|&l| l > 0) {
        return out;
    }
    loop {
        let mut tables = Vec::new();
        let mut at = 0;
        for &l in &lens {
            tables.push(flat[at..at + l].to_vec());
            at += l;
        }
        if check(&tables) {
            out.push(tables);
        }
        let mut i = total;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            flat[i] += 1;
            if flat[i] < n {
                break;
            }
            flat[i] = 0;
        }
    }
}

fn associative(n: usize, m: &[usize]) -> bool {
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| m[m[x * n + y] * n + z] == m[x * n + m[y * n + z]]))
    })
}

/// Tables of `m` satisfying associativity.
pub fn semigroups(n: usize) -> Vec<Vec<Vec<usize>>> {
    all_tables(n, &[2], |t| associative(n, &t[0]))
}

/// Groups as `(e, inv, m)` with associativity, `m(e, x) = x` and
/// `m(inv(x), x) = e`, by checking every one of the `n^(1 + n + n²)`
/// table families.
pub fn groups_unpruned(n: usize) -> Vec<Vec<Vec<usize>>> {
    all_tables(n, &[0, 1, 2], |t| {
        let (e, inv, m) = (t[0][0], &t[1], &t[2]);
        associative(n, m) && (0..n).all(|x| m[e * n + x] == x && m[inv[x] * n + x] == e)
    })
}

/// Groups of order 4 in the same presentation.
///
/// The full family space has `4^21` members, so the scan is factored: every
/// one of the `4^16` tables of `m` is tested for a left identity row, then
/// for left inverses and associativity; only then are all `4` choices of `e`
/// and all `4^4` tables of `inv` checked against the axioms.
pub fn groups_of_order_four() -> Vec<Vec<Vec<usize>>> {
    const ID_ROW: u32 = 0b11_10_01_00;
    const SPREAD: u32 = ID_ROW * 0x0101_0101;
    let cell = |c: u32, a: u32, b: u32| (c >> (2 * (4 * a + b)) & 3) as usize;
    let mut out = Vec::new();
    let mut c: u32 = 0;
    loop {
        let v = c ^ SPREAD;
        if v.wrapping_sub(0x0101_0101) & !v & 0x8080_8080 != 0 {
            let m: Vec<usize> = (0..16).map(|i| cell(c, i / 4, i % 4)).collect();
            for e in 0..4usize {
                let inverses = (0..4).all(|x| (0..4).any(|y| m[y * 4 + x] == e));
                if (c >> (8 * e) & 0xff) == ID_ROW && inverses && associative(4, &m) {
                    for code in 0..256usize {
                        let inv: Vec<usize> = (0..4).map(|x| code >> (2 * (3 - x)) & 3).collect();
                        if (0..4).all(|x| m[e * 4 + x] == x && m[inv[x] * 4 + x] == e) {
                            out.push(vec![vec![e], inv, m.clone()]);
                        }
                    }
                }
            }
        }
        if c == u32::MAX {
            break;
        }
        c += 1;
    }
    out.sort();
    out
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Number of isomorphism classes among labeled models, by testing every
/// pair against every bijection of the carrier.
pub fn count_iso_classes(n: usize, arities: &[usize], models: &[Vec<Vec<usize>>]) -> usize {
    let perms = permutations(n);
    let iso = |a: &Vec<Vec<usize>>, b: &Vec<Vec<usize>>| {
        perms.iter().any(|s| is_hom_tables(n, n, a, b, arities, s))
    };
    let mut reps: Vec<&Vec<Vec<usize>>> = Vec::new();
    for m in models {
        if !reps.iter().any(|r| iso(r, m)) {
            reps.push(m);
        }
    }
    reps.len()
}

fn is_hom_tables(
    m: usize,
    n: usize,
    a: &[Vec<usize>],
    b: &[Vec<usize>],
    arities: &[usize],
    h: &[usize],
) -> bool {
    arities.iter().enumerate().all(|(op, &k)| {
        (0..m.pow(k as u32)).all(|idx| {
            let mut rest = idx;
            let mut args = vec![0; k];
            for slot in args.iter_mut().rev() {
                *slot = rest % m;
                rest /= m;
            }
            let image = args.iter().fold(0, |acc, &x| acc * n + h[x]);
            h[a[op][idx]] == b[op][image]
        })
    })
}

/// Every map `0..m → 0..n` commuting with all operations, lexicographic.
pub fn homomorphisms(
    m: usize,
    n: usize,
    a: &[Vec<usize>],
    b: &[Vec<usize>],
    arities: &[usize],
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for code in 0..n.pow(m as u32) {
        let mut rest = code;
        let mut h = vec![0; m];
        for slot in h.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        if is_hom_tables(m, n, a, b, arities, &h) {
            out.push(h);
        }
    }
    out
}

/// Classes of the words `f^k(x)`, `k ≤ depth`, in the theory `f(f(x)) = x`,
/// decided by evaluating every word in every involution on `0..size`.
pub fn involution_word_classes(depth: usize, size: usize) -> usize {
    let involutions = all_tables(size, &[1], |t| (0..size).all(|x| t[0][t[0][x]] == x));
    let profile = |k: usize| -> Vec<usize> {
        involutions
            .iter()
            .flat_map(|t| (0..size).map(move |x| (0..k).fold(x, |y, _| t[0][y])))
            .collect()
    };
    let mut seen: Vec<Vec<usize>> = (0..=depth).map(profile).collect();
    seen.sort();
    seen.dedup();
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(semigroups(2).len(), 8);
        assert_eq!(groups_unpruned(1).len(), 1);
        assert_eq!(groups_unpruned(2).len(), 2);
        assert_eq!(groups_unpruned(3).len(), 3);
        assert_eq!(count_iso_classes(3, &[0, 1, 2], &groups_unpruned(3)), 1);
        assert_eq!(count_iso_classes(2, &[2], &semigroups(2)), 5);
        assert_eq!(involution_word_classes(3, 2), 2);
        assert_eq!(permutations(3).len(), 6);
    }
}
