//! The powerset algebra on `k` atoms, elements as masks `0..2^k`.

fn ops(k: usize) -> (u64, u64) {
    let n = 1u64 << k;
    (n, n - 1)
}

/// Every subset `S` (bit `e` set iff element `e ∈ S`) satisfying the
/// filter definition, ascending.
pub fn filters(k: usize) -> Vec<u64> {
    let (n, full) = ops(k);
    assert!(n <= 8, "subset scan is only run for small algebras");
    let mut out = Vec::new();
    for s in 0..1u64 << n {
        let has = |e: u64| s >> e & 1 == 1;
        let mut ok = has(full) && !has(0);
        for a in 0..n {
            for b in 0..n {
                if has(a) && has(b) && !has(a & b) {
                    ok = false;
                }
                if has(a) && a & b == a && !has(b) {
                    ok = false;
                }
            }
        }
        if ok {
            out.push(s);
        }
    }
    out
}

/// Filters not strictly contained in another filter, ascending.
pub fn ultrafilters(k: usize) -> Vec<u64> {
    let all = filters(k);
    all.iter()
        .copied()
        .filter(|&f| !all.iter().any(|&g| g != f && g & f == f))
        .collect()
}

/// Every map from elements to `{0, 1}` preserving 0, 1, meet, join and
/// complement, as value tables indexed by element.
pub fn homs_to_two(k: usize) -> Vec<Vec<bool>> {
    let (n, full) = ops(k);
    assert!(n <= 16);
    let mut out = Vec::new();
    for m in 0..1u64 << n {
        let f = |e: u64| m >> e & 1 == 1;
        let mut ok = !f(0) && f(full);
        for a in 0..n {
            ok &= f(a ^ full) == !f(a);
            for b in 0..n {
                ok &= f(a & b) == (f(a) && f(b)) && f(a | b) == (f(a) || f(b));
            }
        }
        if ok {
            out.push((0..n).map(f).collect());
        }
    }
    out
}

/// Every Boolean homomorphism `P(k) → P(l)` as an image table indexed by
/// element. Images are assigned element by element and each law is
/// checked as soon as all elements it mentions have images.
pub fn homomorphisms(k: usize, l: usize) -> Vec<Vec<u64>> {
    let (n, full) = ops(k);
    let (m, full_m) = ops(l);
    let mut out = Vec::new();
    let mut f = vec![0u64; n as usize];
    fn consistent(f: &[u64], e: u64, full: u64, full_m: u64) -> bool {
        let g = |x: u64| f[x as usize];
        if e == 0 && g(0) != 0 || e == full && g(full) != full_m {
            return false;
        }
        for a in 0..=e {
            if a ^ full <= e && g(a ^ full) != g(a) ^ full_m {
                return false;
            }
            for b in 0..=e {
                if a & b <= e && g(a & b) != g(a) & g(b) {
                    return false;
                }
                if a | b <= e && g(a | b) != g(a) | g(b) {
                    return false;
                }
            }
        }
        true
    }
    fn go(e: u64, n: u64, m: u64, full: u64, full_m: u64, f: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if e == n {
            out.push(f.clone());
            return;
        }
        for v in 0..m {
            f[e as usize] = v;
            if consistent(&f[..], e, full, full_m) {
                go(e + 1, n, m, full, full_m, f, out);
            }
        }
    }
    go(0, n, m, full, full_m, &mut f, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(ultrafilters(1).len(), 1);
        assert_eq!(ultrafilters(2).len(), 2);
        assert_eq!(ultrafilters(3).len(), 3);
        assert_eq!(homs_to_two(4).len(), 4);
        // homomorphisms P(k) → P(l) correspond to maps l → k
        assert_eq!(homomorphisms(2, 3).len(), 8);
        assert_eq!(homomorphisms(3, 2).len(), 9);
    }
}
