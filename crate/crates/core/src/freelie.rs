//! Multilinear free Lie algebra machinery and an independent oracle for
//! `H_0(Lie(V); M^{⊗n})` with `M` the free Lie algebra or its quotient by
//! brackets of length at least three.
//!
//! Lie polynomials are handled through their associative expansions. The
//! Lyndon basis gives normal forms for brackets. The homology engine uses the
//! left-normed comb basis `[b, c_2, …, c_d]` (`b` the least letter of the
//! block): the coordinates of a multilinear Lie polynomial in this basis are
//! the coefficients of the associative words that start with `b`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::characters::{character_table, decompose, BiDecomposition, ClassFunction, Decomposition};
use crate::exactlinalg::{rat, Rational, RationalMatrix, SparseVec, SubspaceBasis};
use crate::homology::H0Problem;
use crate::irreps::seminormal;
use crate::partitions::{partitions_of, Partition};
use crate::perm::{all_perms, class_representative, inverse, transposition, Perm};

/// Default caps on `N` for the untruncated and truncated oracles.
pub const DEFAULT_MAX_N_FREE: usize = 6;
pub const DEFAULT_MAX_N_TRUNCATED: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeLieError {
    #[error("size cap exceeded: N = {0} > {1}")]
    CapExceeded(usize, usize),
}

pub type Word = Vec<usize>;

/// A noncommutative polynomial in distinct letters.
pub type AssocPoly = BTreeMap<Word, Rational>;

fn add_term(p: &mut AssocPoly, w: Word, c: &Rational) {
    let e = p.entry(w).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        let key: Vec<(Word, Rational)> = p.iter().filter(|(_, v)| v.is_zero()).map(|(k, v)| (k.clone(), v.clone())).collect();
        for (k, _) in key {
            p.remove(&k);
        }
    }
}

/// `xy - yx` on associative polynomials.
pub fn commutator(x: &AssocPoly, y: &AssocPoly) -> AssocPoly {
    let mut out = AssocPoly::new();
    for (u, a) in x {
        for (v, b) in y {
            let c = a * b;
            let uv: Word = u.iter().chain(v).copied().collect();
            let vu: Word = v.iter().chain(u).copied().collect();
            add_term(&mut out, uv, &c);
            add_term(&mut out, vu, &-c);
        }
    }
    out
}

fn letter(a: usize) -> AssocPoly {
    AssocPoly::from([(vec![a], rat(1))])
}

/// Associative expansion of the left-normed bracket `[[s_0, s_1], …, s_k]`.
pub fn comb_expansion(seq: &[usize]) -> AssocPoly {
    let mut acc = letter(seq[0]);
    for &a in &seq[1..] {
        acc = commutator(&acc, &letter(a));
    }
    acc
}

/// Coordinates in the comb basis of a multilinear Lie polynomial, keyed by the
/// comb sequences (words starting with the least letter).
pub fn comb_coordinates(p: &AssocPoly) -> BTreeMap<Word, Rational> {
    p.iter()
        .filter(|(w, _)| w.first() == w.iter().min())
        .map(|(w, c)| (w.clone(), c.clone()))
        .collect()
}

/// Comb sequences on a set of letters: orderings starting with the least one.
pub fn comb_basis(letters: &[usize]) -> Vec<Word> {
    let mut sorted = letters.to_vec();
    sorted.sort();
    if sorted.is_empty() {
        return Vec::new();
    }
    let rest = &sorted[1..];
    all_perms(rest.len())
        .into_iter()
        .map(|p| std::iter::once(sorted[0]).chain(p.iter().map(|&i| rest[i])).collect())
        .collect()
}

/// A bracketing tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bracket {
    Letter(usize),
    Pair(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn expand(&self) -> AssocPoly {
        match self {
            Bracket::Letter(a) => letter(*a),
            Bracket::Pair(x, y) => commutator(&x.expand(), &y.expand()),
        }
    }
}

impl std::fmt::Display for Bracket {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bracket::Letter(a) => write!(f, "{}", a + 1),
            Bracket::Pair(x, y) => write!(f, "[{x},{y}]"),
        }
    }
}

/// A Lyndon word with its standard bracketing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LyndonBasisElement {
    pub word: Word,
    pub bracketing: Bracket,
}

/// Strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Standard bracketing: `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_bracketing(w: &[usize]) -> Bracket {
    if w.len() == 1 {
        return Bracket::Letter(w[0]);
    }
    let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("a single letter is Lyndon");
    Bracket::Pair(Box::new(standard_bracketing(&w[..split])), Box::new(standard_bracketing(&w[split..])))
}

/// Lyndon basis of the multilinear free Lie component on distinct `letters`.
pub fn lyndon_basis(letters: &[usize]) -> Vec<LyndonBasisElement> {
    let mut sorted = letters.to_vec();
    sorted.sort();
    all_perms(sorted.len())
        .into_iter()
        .map(|p| p.iter().map(|&i| sorted[i]).collect::<Word>())
        .filter(|w| is_lyndon(w))
        .map(|word| LyndonBasisElement {
            bracketing: standard_bracketing(&word),
            word,
        })
        .collect()
}

/// A Lie element in Lyndon coordinates, keyed by Lyndon words.
pub type LieElement = BTreeMap<Word, Rational>;

/// Associative expansion of a Lie element given in Lyndon coordinates.
pub fn lyndon_expand(x: &LieElement) -> AssocPoly {
    let mut out = AssocPoly::new();
    for (w, c) in x {
        for (u, d) in standard_bracketing(w).expand() {
            add_term(&mut out, u, &(c * &d));
        }
    }
    out
}

/// Lyndon coordinates of a Lie polynomial: the expansion of a standard
/// bracketing is its word plus lexicographically larger words, so the least
/// remaining word is always Lyndon and can be eliminated.
pub fn lyndon_coordinates(p: &AssocPoly) -> LieElement {
    let mut rest = p.clone();
    let mut out = LieElement::new();
    while let Some((w, c)) = rest.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
        assert!(is_lyndon(&w), "not a Lie polynomial");
        for (u, d) in standard_bracketing(&w).expand() {
            add_term(&mut rest, u, &-(&c * &d));
        }
        out.insert(w, c);
    }
    out
}

/// The bracket of two Lie elements in Lyndon coordinates.
pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    lyndon_coordinates(&commutator(&lyndon_expand(x), &lyndon_expand(y)))
}

/// A tensor of comb basis elements whose letter sets partition `0..N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorBasisElement {
    pub blocks: Vec<Word>,
}

impl TensorBasisElement {
    pub fn reading(&self) -> Perm {
        self.blocks.iter().flatten().copied().collect()
    }
}

/// Compositions of `total` into `parts` positive parts, each at most `cap`.
pub fn compositions(total: usize, parts: usize, cap: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, cap: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(acc.clone());
            }
            return;
        }
        for first in 1..=cap.min(total) {
            acc.push(first);
            rec(total - first, parts - 1, cap, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, cap, &mut Vec::new(), &mut out);
    out
}

fn block_cap(truncated: bool, big_n: usize) -> usize {
    if truncated {
        2
    } else {
        big_n.max(1)
    }
}

/// The `rho`-slice of the multilinear `H_0(Lie(V); M^{⊗n})`, `M` the free Lie
/// algebra (`truncated = false`) or its length-at-most-two quotient.
///
/// For a fixed composition `d` of `N`, sequences of block orderings are in
/// bijection with `S_N` through their reading, so the space `C_d` they span
/// has `(S^rho ⊗ C_d)_{S_N} = S^rho`, the reading `h` contributing
/// `rho(h⁻¹)`. The tensor power is the quotient of `C_d` by the comb
/// relations, which express a comb not starting with its least letter in the
/// comb basis; the homology further divides by the images of
/// `x_N ⊗ t ↦ Σ_i t_1 ⊗ … ⊗ [x_N, t_i] ⊗ …` with `[x_N, c] = -[c, x_N]`.
pub fn h0_multilinear_slice(rho: &Partition, n: usize, truncated: bool) -> Decomposition {
    let big_n = rho.size();
    let cap = block_cap(truncated, big_n);
    let comps = compositions(big_n, n, cap);
    if comps.is_empty() {
        return Decomposition::zero(n);
    }
    let rep = seminormal(rho);
    let d = rep.dim;
    let index: HashMap<&Vec<usize>, usize> = comps.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let dim = comps.len() * d;
    let mut cache: HashMap<Perm, RationalMatrix> = HashMap::new();
    let mut rho_inv = |h: &Perm| -> RationalMatrix {
        let hi = inverse(h);
        cache.entry(hi.clone()).or_insert_with(|| rep.matrix_of(&hi)).clone()
    };
    let mut relations = SubspaceBasis::new(dim);
    let add_relation = |relations: &mut SubspaceBasis, terms: &[(usize, Rational, RationalMatrix)]| {
        for j in 0..d {
            let mut v = SparseVec::new();
            for (block, c, m) in terms {
                v.axpy(c, &m.column(j).reindex(|r| block * d + r));
            }
            relations.insert(&v);
        }
    };
    // Comb relations inside each composition, at the standard letter blocks.
    for (k, comp) in comps.iter().enumerate() {
        let mut starts = vec![0];
        for &c in comp {
            starts.push(starts.last().unwrap() + c);
        }
        for (i, &size) in comp.iter().enumerate() {
            if size < 2 {
                continue;
            }
            let letters: Vec<usize> = (starts[i]..starts[i + 1]).collect();
            // Other blocks are held at their standard ordering: the comb
            // relations of block i generate the rest under the symmetric group.
            for p in all_perms(size) {
                if p[0] == 0 {
                    continue;
                }
                let w: Word = p.iter().map(|&x| letters[x]).collect();
                let reading_with = |block_word: &[usize]| -> Perm {
                    (0..starts[i])
                        .chain(block_word.iter().copied())
                        .chain(starts[i + 1]..big_n)
                        .collect()
                };
                let mut terms = vec![(k, rat(1), rho_inv(&reading_with(&w)))];
                for (u, c) in comb_coordinates(&comb_expansion(&w)) {
                    terms.push((k, -c, rho_inv(&reading_with(&u))));
                }
                add_relation(&mut relations, &terms);
            }
        }
    }
    // Images of the action of the last letter on tensors over the others.
    if big_n >= 1 {
        for small in compositions(big_n - 1, n, cap) {
            let mut starts = vec![0];
            for &c in &small {
                starts.push(starts.last().unwrap() + c);
            }
            // Source comb tensors: every block ordering starting with its least
            // letter; the symmetric group on the other letters is not free on
            // this set, so all of them are needed.
            let block_bases: Vec<Vec<Word>> = (0..n)
                .map(|i| comb_basis(&(starts[i]..starts[i + 1]).collect::<Vec<_>>()))
                .collect();
            for choice in product(&block_bases.iter().map(|b| b.len()).collect::<Vec<_>>()) {
                let blocks: Vec<Word> = choice.iter().enumerate().map(|(i, &c)| block_bases[i][c].clone()).collect();
                let mut terms = Vec::new();
                for i in 0..n {
                    if small[i] + 1 > cap {
                        continue;
                    }
                    let mut comp = small.clone();
                    comp[i] += 1;
                    let mut ext = blocks.clone();
                    ext[i].push(big_n - 1);
                    let reading: Perm = ext.iter().flatten().copied().collect();
                    terms.push((index[&comp], rat(-1), rho_inv(&reading)));
                }
                if !terms.is_empty() {
                    add_relation(&mut relations, &terms);
                }
            }
        }
    }
    let table = character_table(n);
    let values: Vec<Rational> = table
        .partitions
        .iter()
        .map(|mu| {
            let sigma = class_representative(mu);
            relations.quotient_trace_with(|c| {
                let (k, j) = (c / d, c % d);
                let comp = &comps[k];
                let mut starts = vec![0];
                for &x in comp {
                    starts.push(starts.last().unwrap() + x);
                }
                // Factor i moves to position sigma(i).
                let sinv = inverse(&sigma);
                let new_comp: Vec<usize> = (0..n).map(|p| comp[sinv[p]]).collect();
                let reading: Perm = (0..n).flat_map(|p| starts[sinv[p]]..starts[sinv[p] + 1]).collect();
                let m = rep.apply_perm(&inverse(&reading), &SparseVec::unit(j));
                m.reindex(|r| index[&new_comp] * d + r)
            })
        })
        .collect();
    let chi = ClassFunction::from_fn(n, |mu| values[table.index_of(mu)].clone());
    decompose(&chi).expect("quotient character is a character")
}

/// Cartesian product of index ranges `0..sizes[i]`.
fn product(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..s).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

/// Full `S_N × S_n` table of the multilinear homology.
pub fn h0_multilinear(big_n: usize, n: usize, truncated: bool) -> Result<BiDecomposition, FreeLieError> {
    let cap = if truncated { DEFAULT_MAX_N_TRUNCATED } else { DEFAULT_MAX_N_FREE };
    h0_multilinear_capped(big_n, n, truncated, cap)
}

pub fn h0_multilinear_capped(big_n: usize, n: usize, truncated: bool, max_n: usize) -> Result<BiDecomposition, FreeLieError> {
    if big_n > max_n {
        return Err(FreeLieError::CapExceeded(big_n, max_n));
    }
    let slices: Vec<(Partition, Decomposition)> = partitions_of(big_n)
        .into_par_iter()
        .map(|rho| {
            let d = h0_multilinear_slice(&rho, n, truncated);
            (rho, d)
        })
        .collect();
    let mut out = BiDecomposition::zero(big_n, n);
    for (rho, d) in &slices {
        out.insert_slice(rho, d);
    }
    Ok(out)
}

/// Free against truncated multiplicity spaces for one `rho`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationComparison {
    pub rho: Partition,
    pub n: usize,
    pub free: Decomposition,
    pub truncated: Decomposition,
    pub equal: bool,
}

impl TruncationComparison {
    /// Number of irreducible constituents on the free side.
    pub fn free_mult(&self) -> u64 {
        self.free.multiplicities.values().sum()
    }

    pub fn truncated_mult(&self) -> u64 {
        self.truncated.multiplicities.values().sum()
    }
}

pub fn truncation_comparison(rho: &Partition, n: usize) -> Result<TruncationComparison, FreeLieError> {
    if rho.size() > DEFAULT_MAX_N_FREE {
        return Err(FreeLieError::CapExceeded(rho.size(), DEFAULT_MAX_N_FREE));
    }
    let free = h0_multilinear_slice(rho, n, false);
    let truncated = h0_multilinear_slice(rho, n, true);
    Ok(TruncationComparison {
        rho: rho.clone(),
        n,
        equal: free == truncated,
        free,
        truncated,
    })
}

/// The multilinear tensor power on the explicit comb-tensor basis, with all
/// structure maps, as a cross-check of the sliced engine at small `N`.
pub fn explicit_problem(big_n: usize, n: usize, truncated: bool) -> H0Problem {
    let cap = block_cap(truncated, big_n);
    let basis = tensor_basis(big_n, n, cap);
    let index: HashMap<&TensorBasisElement, usize> = basis.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let dim = basis.len();
    let left = (0..big_n.saturating_sub(1))
        .map(|i| {
            let g = transposition(big_n, i, i + 1);
            RationalMatrix::from_columns(dim, basis.iter().map(|t| relabel_tensor(t, &g, &index)).collect())
        })
        .collect();
    let right = (0..n.saturating_sub(1))
        .map(|i| {
            RationalMatrix::from_columns(
                dim,
                basis
                    .iter()
                    .map(|t| {
                        let mut blocks = t.blocks.clone();
                        blocks.swap(i, i + 1);
                        SparseVec::unit(index[&TensorBasisElement { blocks }])
                    })
                    .collect(),
            )
        })
        .collect();
    let incoming = if big_n == 0 {
        Vec::new()
    } else {
        let source = tensor_basis(big_n - 1, n, cap);
        (0..big_n)
            .map(|new| {
                let relabel: Vec<usize> = (0..big_n).filter(|&l| l != new).collect();
                let columns = source
                    .iter()
                    .map(|t| {
                        let mut out = SparseVec::new();
                        for i in 0..n {
                            if t.blocks[i].len() + 1 > cap {
                                continue;
                            }
                            let mut blocks: Vec<Word> =
                                t.blocks.iter().map(|b| b.iter().map(|&a| relabel[a]).collect()).collect();
                            let mut seq = blocks[i].clone();
                            seq.push(new);
                            let coords = comb_coordinates(&comb_expansion(&seq));
                            for (u, c) in coords {
                                blocks[i] = u;
                                out.axpy(&-c, &SparseVec::unit(index[&TensorBasisElement { blocks: blocks.clone() }]));
                            }
                        }
                        out
                    })
                    .collect();
                RationalMatrix::from_columns(dim, columns)
            })
            .collect()
    };
    H0Problem {
        big_n,
        n,
        dim,
        left,
        right,
        incoming,
    }
}

/// All tensors of comb basis elements on `0..N` with `n` blocks of size at
/// most `cap`.
pub fn tensor_basis(big_n: usize, n: usize, cap: usize) -> Vec<TensorBasisElement> {
    let mut out = Vec::new();
    for comp in compositions(big_n, n, cap) {
        // Assign letters to blocks: all ordered set partitions with these sizes.
        fn assign(
            comp: &[usize],
            remaining: Vec<usize>,
            acc: &mut Vec<Vec<usize>>,
            out: &mut Vec<Vec<Vec<usize>>>,
        ) {
            if acc.len() == comp.len() {
                out.push(acc.clone());
                return;
            }
            let size = comp[acc.len()];
            for chosen in crate::beads::subsets(remaining.len(), size) {
                let block: Vec<usize> = chosen.iter().map(|&i| remaining[i]).collect();
                let rest: Vec<usize> = remaining.iter().copied().filter(|x| !block.contains(x)).collect();
                acc.push(block);
                assign(comp, rest, acc, out);
                acc.pop();
            }
        }
        let mut partitions = Vec::new();
        assign(&comp, (0..big_n).collect(), &mut Vec::new(), &mut partitions);
        for blocks in partitions {
            let bases: Vec<Vec<Word>> = blocks.iter().map(|b| comb_basis(b)).collect();
            for choice in product(&bases.iter().map(|b| b.len()).collect::<Vec<_>>()) {
                out.push(TensorBasisElement {
                    blocks: choice.iter().enumerate().map(|(i, &c)| bases[i][c].clone()).collect(),
                });
            }
        }
    }
    out
}

/// Relabels a comb tensor by `g` and rewrites it in the comb basis.
fn relabel_tensor(t: &TensorBasisElement, g: &[usize], index: &HashMap<&TensorBasisElement, usize>) -> SparseVec {
    let mut terms: Vec<(Vec<Word>, Rational)> = vec![(Vec::new(), Rational::one())];
    for b in &t.blocks {
        let seq: Word = b.iter().map(|&a| g[a]).collect();
        let coords = comb_coordinates(&comb_expansion(&seq));
        terms = terms
            .into_iter()
            .flat_map(|(prefix, c)| {
                coords.iter().map(move |(u, d)| {
                    let mut p = prefix.clone();
                    p.push(u.clone());
                    (p, &c * d)
                })
            })
            .collect();
    }
    SparseVec::from_pairs(terms.into_iter().map(|(blocks, c)| (index[&TensorBasisElement { blocks }], c)))
}
