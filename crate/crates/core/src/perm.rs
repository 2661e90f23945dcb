//! Permutations of `{0, …, n−1}` stored as image vectors.

use alloc::vec::Vec;

use crate::partition::{factorial, partitions_of, Partition};

/// `perm[i]` is the image of `i`.
pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// All permutations of `n` points in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur = identity(n);
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// `+1` for even permutations, `−1` for odd ones.
pub fn sign(p: &[usize]) -> i64 {
    let odd = cycle_lengths(p).iter().filter(|&&l| l % 2 == 0).count() % 2;
    if odd == 1 {
        -1
    } else {
        1
    }
}

/// Cycle lengths in nonincreasing order, fixed points included.
pub fn cycle_lengths(p: &[usize]) -> Vec<usize> {
    let mut seen = alloc::vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = alloc::vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub fn transposition(n: usize, a: usize, b: usize) -> Perm {
    let mut p = identity(n);
    p.swap(a, b);
    p
}

/// `i ↦ i + 1 mod n`.
pub fn long_cycle(n: usize) -> Perm {
    (0..n).map(|i| (i + 1) % n).collect()
}

/// A permutation whose cycles have the given lengths, on consecutive points.
pub fn with_cycle_type(lengths: &[usize]) -> Perm {
    let n = lengths.iter().sum();
    let mut p = identity(n);
    let mut start = 0;
    for &l in lengths {
        for k in 0..l {
            p[start + k] = start + (k + 1) % l;
        }
        start += l;
    }
    p
}

/// Size of the conjugacy class with the given cycle type: `n! / Π k^{m_k} m_k!`.
pub fn class_size(cycle_type: &Partition) -> u128 {
    let n = cycle_type.n();
    let mut den: u128 = 1;
    let parts = cycle_type.parts();
    let mut i = 0;
    while i < parts.len() {
        let k = parts[i];
        let m = parts[i..].iter().take_while(|&&x| x == k).count();
        den *= (k as u128).pow(m as u32) * factorial(m);
        i += m;
    }
    factorial(n) / den
}

/// One representative per conjugacy class, with its class size.
pub fn class_representatives(n: usize) -> Vec<(Partition, Perm, u128)> {
    partitions_of(n)
        .into_iter()
        .map(|ct| {
            let rep = with_cycle_type(ct.parts());
            let size = class_size(&ct);
            (ct, rep, size)
        })
        .collect()
}

/// Lifts a permutation of `n` points to the diagonal action on `blocks · n` variables.
pub fn diagonal(p: &[usize], blocks: usize) -> Perm {
    let n = p.len();
    (0..blocks * n).map(|v| (v / n) * n + p[v % n]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_signs() {
        let ps = all_perms(4);
        assert_eq!(ps.len(), 24);
        assert_eq!(ps.iter().filter(|p| sign(p) == 1).count(), 12);
        assert_eq!(sign(&transposition(3, 0, 2)), -1);
        assert_eq!(sign(&long_cycle(3)), 1);
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=7 {
            let total: u128 = class_representatives(n).iter().map(|c| c.2).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn diagonal_lift() {
        assert_eq!(diagonal(&[1, 0], 2), alloc::vec![1, 0, 3, 2]);
        let p = long_cycle(3);
        assert_eq!(compose(&p, &inverse(&p)), identity(3));
    }
}
