//! Injection sets, bead arrangements with columns of one or two beads, their
//! signed quotient, the group actions on them and the structure maps between
//! them.
//!
//! Labels and column positions are 0-based. A bead arrangement on `N` labels
//! with `n` columns has exactly `N - n` doubled columns, so the set is empty
//! unless `n ≤ N ≤ 2n`.

use std::collections::HashMap;
use std::fmt;

use crate::exactlinalg::{rank, rat, RationalMatrix, SparseVec};
use crate::perm::{all_perms, Perm};

/// An injective map `{0..a} → {0..b}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Injection {
    pub source_size: usize,
    pub target_size: usize,
    pub values: Vec<usize>,
}

impl Injection {
    /// Precomposition with `pi⁻¹` on the source, the left action of `S_a`.
    pub fn act_source(&self, pi: &[usize]) -> Injection {
        let mut values = vec![0; self.source_size];
        for (i, &v) in self.values.iter().enumerate() {
            values[pi[i]] = v;
        }
        Injection { values, ..self.clone() }
    }

    /// Postcomposition with `sigma` on the target.
    pub fn act_target(&self, sigma: &[usize]) -> Injection {
        Injection {
            values: self.values.iter().map(|&v| sigma[v]).collect(),
            ..self.clone()
        }
    }
}

/// All injections `a → b` in lexicographic order.
pub fn enumerate_injections(a: usize, b: usize) -> Vec<Injection> {
    fn rec(a: usize, b: usize, acc: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Injection>) {
        if acc.len() == a {
            out.push(Injection {
                source_size: a,
                target_size: b,
                values: acc.clone(),
            });
            return;
        }
        for v in 0..b {
            if !used[v] {
                used[v] = true;
                acc.push(v);
                rec(a, b, acc, used, out);
                acc.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    if a <= b {
        rec(a, b, &mut Vec::new(), &mut vec![false; b], &mut out);
    }
    out
}

fn injection_index(list: &[Injection]) -> HashMap<&Injection, usize> {
    list.iter().enumerate().map(|(k, f)| (f, k)).collect()
}

/// The transposed structure map `k hom(a, b) → k hom(a + 1, b)` along the
/// inclusion of `a` as the first `a` points: `[f]` goes to the sum of its
/// extensions by a value for the new point.
pub fn transpose_structure_map(a: usize, b: usize) -> RationalMatrix {
    let source = enumerate_injections(a, b);
    let target = enumerate_injections(a + 1, b);
    let index = injection_index(&target);
    let columns = source
        .iter()
        .map(|f| {
            SparseVec::from_pairs((0..b).filter(|t| !f.values.contains(t)).map(|t| {
                let mut values = f.values.clone();
                values.push(t);
                let g = Injection {
                    source_size: a + 1,
                    target_size: b,
                    values,
                };
                (index[&g], rat(1))
            }))
        })
        .collect();
    RationalMatrix::from_columns(target.len(), columns)
}

/// One column of an arrangement: a bottom bead and an optional top bead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Column {
    pub bottom: usize,
    pub top: Option<usize>,
}

/// A bead arrangement: `columns[c]` lists the beads in column `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BeadArrangement {
    pub columns: Vec<Column>,
}

impl BeadArrangement {
    pub fn label_count(&self) -> usize {
        self.columns.iter().map(|c| 1 + c.top.is_some() as usize).sum()
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    /// Positions of the doubled columns.
    pub fn pattern(&self) -> Vec<usize> {
        (0..self.columns.len()).filter(|&c| self.columns[c].top.is_some()).collect()
    }

    /// Labels read column by column, bottom before top.
    pub fn reading(&self) -> Perm {
        self.columns
            .iter()
            .flat_map(|c| std::iter::once(c.bottom).chain(c.top))
            .collect()
    }

    /// The standard arrangement with doubled columns at `pattern`, labelled
    /// consecutively in reading order.
    pub fn standard(n: usize, pattern: &[usize]) -> BeadArrangement {
        let mut next = 0;
        let columns = (0..n)
            .map(|c| {
                let bottom = next;
                next += 1;
                let top = pattern.contains(&c).then(|| {
                    next += 1;
                    next - 1
                });
                Column { bottom, top }
            })
            .collect();
        BeadArrangement { columns }
    }

    /// Relabels every bead `l` as `g[l]`.
    pub fn relabel(&self, g: &[usize]) -> BeadArrangement {
        BeadArrangement {
            columns: self
                .columns
                .iter()
                .map(|c| Column {
                    bottom: g[c.bottom],
                    top: c.top.map(|t| g[t]),
                })
                .collect(),
        }
    }

    /// Moves column `c` to position `sigma[c]`.
    pub fn permute_columns(&self, sigma: &[usize]) -> BeadArrangement {
        let mut columns = self.columns.clone();
        for (c, col) in self.columns.iter().enumerate() {
            columns[sigma[c]] = *col;
        }
        BeadArrangement { columns }
    }

    /// Smaller label at the bottom of every doubled column, with the sign
    /// `(-1)^{number of columns flipped}`.
    pub fn canonical(&self) -> (BeadArrangement, i64) {
        let mut sign = 1;
        let columns = self
            .columns
            .iter()
            .map(|c| match c.top {
                Some(t) if t < c.bottom => {
                    sign = -sign;
                    Column {
                        bottom: t,
                        top: Some(c.bottom),
                    }
                }
                _ => *c,
            })
            .collect();
        (BeadArrangement { columns }, sign)
    }
}

impl fmt::Display for BeadArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .columns
            .iter()
            .map(|c| match c.top {
                Some(t) => format!("{}/{}", c.bottom + 1, t + 1),
                None => format!("{}", c.bottom + 1),
            })
            .collect();
        write!(f, "[{}]", cols.join(" "))
    }
}

/// Subsets of `0..n` of size `k` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..n {
            if n - i < k - acc.len() {
                break;
            }
            acc.push(i);
            rec(i + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Doubled-column patterns of `Beads(N, n)`, in lexicographic order.
pub fn bead_patterns(big_n: usize, n: usize) -> Vec<Vec<usize>> {
    if big_n < n || big_n > 2 * n {
        return Vec::new();
    }
    subsets(n, big_n - n)
}

/// All bead arrangements on `N` labels with `n` columns, ordered by pattern
/// and then by the reading permutation in lexicographic order.
pub fn enumerate_beads(big_n: usize, n: usize) -> Vec<BeadArrangement> {
    let patterns = bead_patterns(big_n, n);
    if patterns.is_empty() {
        return Vec::new();
    }
    let perms = all_perms(big_n);
    patterns
        .iter()
        .flat_map(|d| {
            let x = BeadArrangement::standard(n, d);
            perms.iter().map(move |g| x.relabel(g))
        })
        .collect()
}

/// `C(n, N - n) · N!`, the size of `Beads(N, n)`.
pub fn bead_count(big_n: usize, n: usize) -> u128 {
    let patterns = bead_patterns(big_n, n).len() as u128;
    patterns * (1..=big_n as u128).product::<u128>()
}

fn bead_index(list: &[BeadArrangement]) -> HashMap<&BeadArrangement, usize> {
    list.iter().enumerate().map(|(k, b)| (b, k)).collect()
}

/// Order-preserving bijection from `0..len` onto `0..len + removed.len()`
/// minus `removed`.
fn skipping(len: usize, removed: &[usize]) -> Vec<usize> {
    (0..len + removed.len()).filter(|l| !removed.contains(l)).collect()
}

/// The structure map `k Beads(N - 1, n) → k Beads(N, n)` adding the bead
/// `new_label`: source arrangements use the labels other than `new_label`
/// (relabelled in order), and `[φ]` goes to the sum over singleton columns of
/// `φ` with `new_label` placed on top of that column.
pub fn beads_fi_map(big_n: usize, n: usize, new_label: usize) -> RationalMatrix {
    assert!(new_label < big_n);
    let source = enumerate_beads(big_n - 1, n);
    let target = enumerate_beads(big_n, n);
    let index = bead_index(&target);
    let relabel = skipping(big_n - 1, &[new_label]);
    let columns = source
        .iter()
        .map(|phi| {
            let base = phi.relabel(&relabel);
            SparseVec::from_pairs((0..n).filter(|&c| base.columns[c].top.is_none()).map(|c| {
                let mut psi = base.clone();
                psi.columns[c].top = Some(new_label);
                (index[&psi], rat(1))
            }))
        })
        .collect();
    RationalMatrix::from_columns(target.len(), columns)
}

/// The map `k Beads(N - 2, n - 1) → k Beads(N, n)` inserting a new doubled
/// column at position `removed_column` carrying the labels `removed_pair` in
/// both orders.
pub fn iota_plus_tau(big_n: usize, n: usize, removed_pair: (usize, usize), removed_column: usize) -> RationalMatrix {
    let (p, q) = removed_pair;
    assert!(p != q && p < big_n && q < big_n && removed_column < n);
    let source = enumerate_beads(big_n - 2, n - 1);
    let target = enumerate_beads(big_n, n);
    let index = bead_index(&target);
    let mut removed = [p, q];
    removed.sort();
    let relabel = skipping(big_n - 2, &removed);
    let columns = source
        .iter()
        .map(|phi| {
            let base = phi.relabel(&relabel);
            let with = |bottom, top| {
                let mut columns = base.columns.clone();
                columns.insert(removed_column, Column { bottom, top: Some(top) });
                index[&BeadArrangement { columns }]
            };
            SparseVec::from_pairs([(with(p, q), rat(1)), (with(q, p), rat(1))])
        })
        .collect();
    RationalMatrix::from_columns(target.len(), columns)
}

/// Generator matrices of the `S_N` (relabelling) and `S_n` (column) actions on
/// `k Beads(N, n)` in the order of [`enumerate_beads`].
pub fn bead_actions(big_n: usize, n: usize) -> (Vec<RationalMatrix>, Vec<RationalMatrix>) {
    let list = enumerate_beads(big_n, n);
    let index = bead_index(&list);
    let perm_matrix = |f: &dyn Fn(&BeadArrangement) -> BeadArrangement| {
        RationalMatrix::from_columns(
            list.len(),
            list.iter().map(|b| SparseVec::unit(index[&f(b)])).collect(),
        )
    };
    let left = (0..big_n.saturating_sub(1))
        .map(|i| perm_matrix(&|b| b.relabel(&crate::perm::transposition(big_n, i, i + 1))))
        .collect();
    let right = (0..n.saturating_sub(1))
        .map(|i| perm_matrix(&|b| b.permute_columns(&crate::perm::transposition(n, i, i + 1))))
        .collect();
    (left, right)
}

/// The signed quotient `k Beads / (φ + τφ)`, `τ` flipping a doubled column.
#[derive(Debug, Clone)]
pub struct SignedBeads {
    pub big_n: usize,
    pub n: usize,
    /// Canonical representatives, in the order of [`enumerate_beads`].
    pub basis: Vec<BeadArrangement>,
    /// Projection `k Beads → Beads^±`, `[φ] ↦ sign(φ) [canonical(φ)]`.
    pub project: RationalMatrix,
    /// Generators of the relabelling action, as signed permutation matrices.
    pub left: Vec<RationalMatrix>,
    /// Generators of the column action, as signed permutation matrices.
    pub right: Vec<RationalMatrix>,
}

/// `C(n, N - n) · N! / 2^{N - n}`, the dimension of the signed quotient.
pub fn signed_dimension(big_n: usize, n: usize) -> u128 {
    if big_n < n || big_n > 2 * n {
        return 0;
    }
    bead_count(big_n, n) >> (big_n - n)
}

pub fn antisymmetrize(big_n: usize, n: usize) -> SignedBeads {
    let all = enumerate_beads(big_n, n);
    let basis: Vec<BeadArrangement> = all.iter().filter(|b| b.canonical().1 == 1 && b.canonical().0 == **b).cloned().collect();
    let index = bead_index(&basis);
    let signed_unit = |b: &BeadArrangement| {
        let (c, s) = b.canonical();
        SparseVec::from_pairs([(index[&c], rat(s))])
    };
    let project = RationalMatrix::from_columns(basis.len(), all.iter().map(signed_unit).collect());
    let act = |f: &dyn Fn(&BeadArrangement) -> BeadArrangement| {
        RationalMatrix::from_columns(basis.len(), basis.iter().map(|b| signed_unit(&f(b))).collect())
    };
    let left = (0..big_n.saturating_sub(1))
        .map(|i| act(&|b| b.relabel(&crate::perm::transposition(big_n, i, i + 1))))
        .collect();
    let right = (0..n.saturating_sub(1))
        .map(|i| act(&|b| b.permute_columns(&crate::perm::transposition(n, i, i + 1))))
        .collect();
    SignedBeads {
        big_n,
        n,
        basis,
        project,
        left,
        right,
    }
}

/// Dimension of `k Beads(N, n)` modulo the flip relations, computed as the
/// number of arrangements minus the rank of the relation matrix. The
/// relations only mix arrangements related by column flips, so the rank is
/// accumulated one flip orbit at a time.
pub fn signed_dimension_by_relations(big_n: usize, n: usize) -> u128 {
    let patterns = bead_patterns(big_n, n);
    if patterns.is_empty() {
        return 0;
    }
    let k = big_n - n;
    let mut total: u128 = 0;
    let mut seen = std::collections::HashSet::new();
    for pattern in &patterns {
        let x = BeadArrangement::standard(n, pattern);
        for g in all_perms(big_n) {
            let phi = x.relabel(&g);
            if !seen.insert(phi.canonical().0) {
                continue;
            }
            // The orbit of φ under the 2^k flips and its relation matrix.
            let orbit: Vec<BeadArrangement> = (0..1usize << k)
                .map(|mask| {
                    let mut psi = phi.clone();
                    for (bit, &c) in pattern.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            let col = psi.columns[c];
                            psi.columns[c] = Column {
                                bottom: col.top.unwrap(),
                                top: Some(col.bottom),
                            };
                        }
                    }
                    psi
                })
                .collect();
            let local: HashMap<&BeadArrangement, usize> = orbit.iter().enumerate().map(|(i, b)| (b, i)).collect();
            let relations: Vec<SparseVec> = orbit
                .iter()
                .enumerate()
                .flat_map(|(i, psi)| {
                    let local = &local;
                    pattern.iter().map(move |&c| {
                        let mut flipped = psi.clone();
                        let col = flipped.columns[c];
                        flipped.columns[c] = Column {
                            bottom: col.top.unwrap(),
                            top: Some(col.bottom),
                        };
                        SparseVec::from_pairs([(i, rat(1))]).add(&SparseVec::unit(local[&flipped]))
                    })
                })
                .collect();
            let r = rank(&RationalMatrix::from_columns(orbit.len(), relations));
            total += (orbit.len() - r) as u128;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{decompose, BiClassFunction, Decomposition};
    use crate::exactlinalg::Rational;
    use crate::partitions::Partition;
    use crate::perm::{class_representative, compose, identity, inverse};

    #[test]
    fn injection_counts() {
        assert_eq!(enumerate_injections(2, 3).len(), 6);
        assert_eq!(enumerate_injections(0, 3).len(), 1);
        assert!(enumerate_injections(3, 2).is_empty());
        for a in 0..=4 {
            for b in a..=5 {
                let list = enumerate_injections(a, b);
                let falling: usize = (b - a + 1..=b).product();
                assert_eq!(list.len(), falling);
                let mut sorted = list.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted, list);
            }
        }
    }

    #[test]
    fn transpose_maps() {
        let m = transpose_structure_map(0, 2);
        assert_eq!(m.column(0), &SparseVec::from_pairs([(0, rat(1)), (1, rat(1))]));
        let m = transpose_structure_map(1, 2);
        for c in 0..2 {
            assert_eq!(m.column(c).nnz(), 1);
        }
        // Two steps equal the sum over all two-point extensions.
        let two = transpose_structure_map(1, 3).mul(&transpose_structure_map(0, 3));
        assert!(two.column(0).iter().all(|(_, v)| *v == rat(1)));
        assert_eq!(two.column(0).nnz(), 6);
    }

    #[test]
    fn bead_counts_and_emptiness() {
        assert!(enumerate_beads(3, 1).is_empty());
        assert!(enumerate_beads(2, 3).is_empty());
        assert_eq!(enumerate_beads(0, 0).len(), 1);
        for big_n in 0..=6 {
            for n in 0..=big_n {
                let list = enumerate_beads(big_n, n);
                assert_eq!(list.len() as u128, bead_count(big_n, n));
                let mut sorted = list.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), list.len());
                for b in &list {
                    let mut labels = b.reading();
                    labels.sort();
                    assert_eq!(labels, identity(big_n));
                    assert_eq!(b.pattern().len(), big_n - n);
                }
            }
        }
        assert_eq!(bead_count(8, 5), 403200);
    }

    #[test]
    fn fi_map_examples() {
        let m = beads_fi_map(2, 1, 1);
        let target = enumerate_beads(2, 1);
        let img = m.column(0);
        assert_eq!(img.nnz(), 1);
        assert_eq!(
            target[img.leading().unwrap()],
            BeadArrangement {
                columns: vec![Column { bottom: 0, top: Some(1) }]
            }
        );
        // Sources without singleton columns map to zero.
        let m = beads_fi_map(5, 2, 4);
        let source = enumerate_beads(4, 2);
        for (k, phi) in source.iter().enumerate() {
            assert_eq!(m.column(k).is_zero(), phi.pattern().len() == 2);
        }
    }

    #[test]
    fn fi_map_equivariance() {
        // Relabelling by g fixing the new label commutes with the map.
        let (big_n, n, new) = (4, 3, 3);
        let m = beads_fi_map(big_n, n, new);
        let (src_left, src_right) = bead_actions(big_n - 1, n);
        let (tgt_left, tgt_right) = bead_actions(big_n, n);
        for i in 0..big_n - 2 {
            assert_eq!(m.mul(&src_left[i]), tgt_left[i].mul(&m));
        }
        for i in 0..n - 1 {
            assert_eq!(m.mul(&src_right[i]), tgt_right[i].mul(&m));
        }
        // Changing the new label conjugates the map by a relabelling.
        let source = enumerate_beads(big_n - 1, n);
        let target = enumerate_beads(big_n, n);
        let index = bead_index(&target);
        for new in 0..big_n {
            let m2 = beads_fi_map(big_n, n, new);
            let g: Perm = {
                // g sends (labels skipping 3, then 3) to (labels skipping new, then new).
                let from = skipping(big_n - 1, &[3]);
                let to = skipping(big_n - 1, &[new]);
                let mut g = vec![0; big_n];
                for (a, b) in from.iter().zip(&to) {
                    g[*a] = *b;
                }
                g[3] = new;
                g
            };
            for k in 0..source.len() {
                let moved = m.column(k).reindex(|t| index[&target[t].relabel(&g)]);
                assert_eq!(&moved, m2.column(k));
            }
        }
    }

    #[test]
    fn iota_plus_tau_examples() {
        let m = iota_plus_tau(2, 1, (0, 1), 0);
        assert_eq!(m.column(0).nnz(), 2);
        // Independent of the order of the two new labels.
        for p in 0..4 {
            for q in 0..4 {
                if p == q {
                    continue;
                }
                for c in 0..2 {
                    assert_eq!(iota_plus_tau(4, 2, (p, q), c), iota_plus_tau(4, 2, (q, p), c));
                }
            }
        }
        // Killed by the signed projection.
        for (big_n, n) in [(2, 1), (4, 2), (5, 3), (4, 3)] {
            let s = antisymmetrize(big_n, n);
            for c in 0..n {
                assert!(s.project.mul(&iota_plus_tau(big_n, n, (0, big_n - 1), c)).is_zero());
            }
        }
    }

    #[test]
    fn signed_quotient() {
        for big_n in 0..=6 {
            for n in 0..=big_n {
                let s = antisymmetrize(big_n, n);
                assert_eq!(s.basis.len() as u128, signed_dimension(big_n, n));
                assert_eq!(signed_dimension_by_relations(big_n, n), signed_dimension(big_n, n));
                // The projection intertwines both actions.
                let (left, right) = bead_actions(big_n, n);
                for (a, b) in s.left.iter().zip(&left) {
                    assert_eq!(a.mul(&s.project), s.project.mul(b));
                }
                for (a, b) in s.right.iter().zip(&right) {
                    assert_eq!(a.mul(&s.project), s.project.mul(b));
                }
            }
        }
        assert_eq!(signed_dimension(8, 5), 50400);
        let s = antisymmetrize(4, 4);
        assert_eq!(s.basis.len(), 24);
        // Beads^±(2, 1) is the sign representation of S_2.
        let s = antisymmetrize(2, 1);
        assert_eq!(s.basis.len(), 1);
        assert_eq!(s.left[0].get(0, 0), rat(-1));
    }

    /// Permutation character of `k Beads(N, n)` against the character of
    /// `k S_N ⊗_{S_{N-n}} k hom(N - n, n)`, where `S_n` acts diagonally through
    /// the right action on `S_N`, computed by counting fixed points.
    #[test]
    fn beads_as_induced_injections() {
        for big_n in 1..=6usize {
            for n in big_n.div_ceil(2)..=big_n {
                let list = enumerate_beads(big_n, n);
                let k = big_n - n;
                let injections = enumerate_injections(k, n);
                let perms = all_perms(big_n);
                let direct = BiClassFunction::from_fn(big_n, n, |mu, nu| {
                    let g = class_representative(mu);
                    let s = class_representative(nu);
                    rat(list.iter().filter(|b| b.relabel(&g).permute_columns(&s) == **b).count() as i64)
                });
                let induced = BiClassFunction::from_fn(big_n, n, |mu, nu| {
                    let g = class_representative(mu);
                    let s = class_representative(nu);
                    let mut count = 0i64;
                    for x in &perms {
                        let h = compose(&inverse(x), &compose(&g, x));
                        // x⁻¹ g x must lie in S_k × S_n with second component s.
                        if (0..n).any(|i| h[k + i] != k + s[i]) {
                            continue;
                        }
                        let hk: Vec<usize> = h[..k].to_vec();
                        count += injections
                            .iter()
                            .filter(|f| f.act_source(&hk).act_target(&s) == **f)
                            .count() as i64;
                    }
                    let denom: i64 = (1..=k as i64).product();
                    Rational::new(count.into(), denom.into())
                });
                assert_eq!(direct, induced, "({big_n}, {n})");
            }
        }
    }

    #[test]
    fn signed_character_small() {
        let s = antisymmetrize(2, 1);
        let chi = crate::characters::ClassFunction::from_fn(2, |mu| {
            if *mu == Partition::row(2) {
                s.left[0].trace()
            } else {
                rat(s.basis.len() as i64)
            }
        });
        assert_eq!(decompose(&chi).unwrap(), Decomposition::single(Partition::column(2)));
    }
}
