//! Index-set combinatorics shared by multivectors and differential forms.
//!
//! Basis elements of exterior powers are strictly increasing index sets;
//! every function here keeps sets sorted and tracks the sign of the
//! permutation that sorts a concatenation.

/// All strictly increasing `k`-subsets of `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Binomial coefficient as a usize; sizes here stay tiny.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Merges two strictly increasing sets, returning the sorted union and
/// the sign of the interleaving permutation, or `None` when the sets
/// intersect (the wedge vanishes).
pub fn merge_sign(a: &[usize], b: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1i32;
    let mut i = 0;
    let mut j = 0;
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining entries of a
            if (a.len() - i) % 2 == 1 {
                sign = -sign;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((sign, out))
}

/// Inserts one index into a strictly increasing set; `None` if present.
pub fn insert_sign(set: &[usize], idx: usize) -> Option<(i32, Vec<usize>)> {
    merge_sign(&[idx], set)
}

/// Removes the entry at `pos`, returning `(-1)^pos` and the smaller set.
pub fn remove_at(set: &[usize], pos: usize) -> (i32, Vec<usize>) {
    let sign = if pos % 2 == 0 { 1 } else { -1 };
    let mut out = set.to_vec();
    out.remove(pos);
    (sign, out)
}
