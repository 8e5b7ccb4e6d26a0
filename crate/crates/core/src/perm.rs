//! Permutations in 0-based one-line notation: `p[i]` is the image of `i`.
//! Composition follows function composition, `(p * q)(i) = p(q(i))`.

use crate::partitions::Partition;

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// `p ∘ q`.
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// The transposition of `a` and `b` in `S_n`.
pub fn transposition(n: usize, a: usize, b: usize) -> Perm {
    let mut p = identity(n);
    p.swap(a, b);
    p
}

/// A reduced word `w` with `p = s_{w[0]} ∘ s_{w[1]} ∘ … ∘ s_{w[k-1]}`, where
/// `s_i` swaps `i` and `i + 1`.
pub fn reduced_word(p: &[usize]) -> Vec<usize> {
    let mut q = p.to_vec();
    let mut word = Vec::new();
    // Right-multiplying by s_i swaps adjacent entries; bubble sort to identity.
    while let Some(i) = (0..q.len().saturating_sub(1)).find(|&i| q[i] > q[i + 1]) {
        q.swap(i, i + 1);
        word.push(i);
    }
    word.reverse();
    word
}

/// Cycle type as a partition.
pub fn cycle_type(p: &[usize]) -> Partition {
    let mut seen = vec![false; p.len()];
    let mut lengths = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(lengths).expect("cycle lengths form a partition")
}

/// Sign of a permutation.
pub fn sign(p: &[usize]) -> i64 {
    let ct = cycle_type(p);
    if (p.len() - ct.len()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Class representative of cycle type `mu`: cycles in decreasing length,
/// each filled with consecutive integers.
pub fn class_representative(mu: &Partition) -> Perm {
    let n = mu.size();
    let mut p = identity(n);
    let mut start = 0;
    for &len in mu.parts() {
        for k in 0..len {
            p[start + k] = start + (k + 1) % len;
        }
        start += len;
    }
    p
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p = identity(n);
    loop {
        out.push(p.clone());
        // Next lexicographic permutation.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word_product(n: usize, word: &[usize]) -> Perm {
        word.iter()
            .fold(identity(n), |acc, &i| compose(&acc, &transposition(n, i, i + 1)))
    }

    #[test]
    fn reduced_words_reconstruct() {
        for p in all_perms(5) {
            let w = reduced_word(&p);
            assert_eq!(word_product(5, &w), p);
            let inversions = (0..5)
                .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            assert_eq!(w.len(), inversions);
        }
    }

    #[test]
    fn class_representatives_have_their_type() {
        for n in 0..=7 {
            for mu in crate::partitions::partitions_of(n) {
                assert_eq!(cycle_type(&class_representative(&mu)), mu);
            }
        }
        assert_eq!(all_perms(4).len(), 24);
        assert_eq!(all_perms(0).len(), 1);
    }

    #[test]
    fn compose_and_inverse() {
        for p in all_perms(4) {
            assert_eq!(compose(&p, &inverse(&p)), identity(4));
            assert_eq!(sign(&p) * sign(&inverse(&p)), 1);
        }
    }
}
