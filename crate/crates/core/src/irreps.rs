//! Explicit matrix models: Young's seminormal form, skew modules, the
//! canonical skew surjections, fixed points of an auxiliary involution, and
//! induction from `S_{n-1}` to `S_n` at the matrix level.
//!
//! Conventions: `S_a × S_{n-a} ⊂ S_n` puts `S_a` on the first `a` letters, and
//! `S_{n-1} ⊂ S_n` is the stabilizer of the last letter.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::characters::ClassFunction;
use crate::exactlinalg::{kernel, rat, Rational, RationalMatrix, SparseVec, SubspaceBasis};
use crate::partitions::{contains, partitions_of, Partition};
use crate::perm::{class_representative, reduced_word, transposition, Perm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IrrepError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("auxiliary involution does not commute with generator s_{0}")]
    NotCommuting(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// Images of the adjacent transpositions `s_1, …, s_{n-1}` on a finite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    pub degree: usize,
    pub dim: usize,
    pub generators: Vec<RationalMatrix>,
    pub basis_labels: Vec<String>,
}

impl MatrixRep {
    pub fn new(degree: usize, dim: usize, generators: Vec<RationalMatrix>, basis_labels: Vec<String>) -> Self {
        assert_eq!(generators.len(), degree.saturating_sub(1));
        assert!(generators.iter().all(|g| g.rows == dim && g.cols == dim));
        MatrixRep {
            degree,
            dim,
            generators,
            basis_labels,
        }
    }

    /// The one-dimensional trivial or sign module.
    pub fn one_dimensional(degree: usize, sign: bool) -> Self {
        let v = if sign { rat(-1) } else { rat(1) };
        let g = RationalMatrix::identity(1).scale(&v);
        MatrixRep::new(degree, 1, vec![g; degree.saturating_sub(1)], vec!["1".into()])
    }

    /// The zero module.
    pub fn zero(degree: usize) -> Self {
        MatrixRep::new(degree, 0, vec![RationalMatrix::zero(0, 0); degree.saturating_sub(1)], vec![])
    }

    /// Applies the group element `p` to `v` through a reduced word.
    pub fn apply_perm(&self, p: &[usize], v: &SparseVec) -> SparseVec {
        assert_eq!(p.len(), self.degree);
        let word = reduced_word(p);
        let mut out = v.clone();
        for &i in word.iter().rev() {
            out = self.generators[i].mul_vec(&out);
        }
        out
    }

    /// Matrix of the group element `p`.
    pub fn matrix_of(&self, p: &[usize]) -> RationalMatrix {
        let word = reduced_word(p);
        let mut m = RationalMatrix::identity(self.dim);
        for &i in &word {
            m = m.mul(&self.generators[i]);
        }
        m
    }

    /// Checks involutivity, braid and commutation relations exactly.
    pub fn check_relations(&self) -> bool {
        let id = RationalMatrix::identity(self.dim);
        let g = &self.generators;
        for i in 0..g.len() {
            if g[i].mul(&g[i]) != id {
                return false;
            }
            if i + 1 < g.len() && g[i].mul(&g[i + 1]).mul(&g[i]) != g[i + 1].mul(&g[i]).mul(&g[i + 1]) {
                return false;
            }
            for j in i + 2..g.len() {
                if g[i].mul(&g[j]) != g[j].mul(&g[i]) {
                    return false;
                }
            }
        }
        true
    }

    /// Character, evaluated on the standard class representatives.
    pub fn character(&self) -> ClassFunction {
        ClassFunction::from_fn(self.degree, |mu| self.matrix_of(&class_representative(mu)).trace())
    }

    /// Restriction to the symmetric group on the consecutive letters
    /// `start, …, start + len - 1` (0-based), relabelled from zero.
    pub fn restrict_range(&self, start: usize, len: usize) -> MatrixRep {
        assert!(start + len <= self.degree);
        let gens = (start..start + len.saturating_sub(1))
            .map(|i| self.generators[i].clone())
            .collect();
        MatrixRep::new(len, self.dim, gens, self.basis_labels.clone())
    }

    /// Restriction to `S_k` on the first `k` letters.
    pub fn restrict_first(&self, k: usize) -> MatrixRep {
        self.restrict_range(0, k)
    }

    /// Diagonal tensor product; basis `(i, j)` has index `i * other.dim + j`.
    pub fn tensor(&self, other: &MatrixRep) -> MatrixRep {
        assert_eq!(self.degree, other.degree);
        let gens = self
            .generators
            .iter()
            .zip(&other.generators)
            .map(|(a, b)| a.kron(b))
            .collect();
        let labels = self
            .basis_labels
            .iter()
            .flat_map(|a| other.basis_labels.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        MatrixRep::new(self.degree, self.dim * other.dim, gens, labels)
    }

    /// Direct sum of modules of the same degree.
    pub fn direct_sum(parts: &[MatrixRep], degree: usize) -> MatrixRep {
        let dim = parts.iter().map(|p| p.dim).sum();
        let gens = (0..degree.saturating_sub(1))
            .map(|i| RationalMatrix::direct_sum(&parts.iter().map(|p| p.generators[i].clone()).collect::<Vec<_>>()))
            .collect();
        let labels = parts.iter().flat_map(|p| p.basis_labels.iter().cloned()).collect();
        MatrixRep::new(degree, dim, gens, labels)
    }
}

/// A linear map intertwining two representations of the same degree.
#[derive(Clone, Debug)]
pub struct EquivariantMap {
    pub source: MatrixRep,
    pub target: MatrixRep,
    pub matrix: RationalMatrix,
}

impl EquivariantMap {
    /// True iff `matrix · source(s_i) = target(s_i) · matrix` for every `i`.
    pub fn is_equivariant(&self) -> bool {
        self.source.degree == self.target.degree
            && self
                .source
                .generators
                .iter()
                .zip(&self.target.generators)
                .all(|(s, t)| self.matrix.mul(s) == t.mul(&self.matrix))
    }

    /// Scales the map so that its first nonzero entry in row-major order is 1.
    pub fn normalized(mut self) -> Self {
        let entries = self.matrix.transpose().entries();
        // Entries of the transpose keyed (col, row); re-key to row-major order.
        let first = entries
            .iter()
            .map(|(&(c, r), v)| ((r, c), v.clone()))
            .min_by_key(|(k, _)| *k);
        if let Some((_, v)) = first {
            self.matrix = self.matrix.scale(&(Rational::one() / v));
        }
        self
    }
}

/// A standard (possibly skew) tableau of shape `outer/inner`, filled with
/// `inner.size() + 1, …, outer.size()`. `positions[k]` is the box holding the
/// entry `inner.size() + 1 + k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    pub positions: Vec<(usize, usize)>,
}

impl Tableau {
    pub fn label(&self, offset: usize) -> String {
        self.positions
            .iter()
            .enumerate()
            .map(|(k, (r, c))| format!("{}@{r}{c}", offset + k + 1))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Standard fillings of the skew shape `outer/inner`, in last-letter order:
/// sorted by the row of the largest entry, then the next largest, and so on.
pub fn skew_tableaux(outer: &Partition, inner: &Partition) -> Vec<Tableau> {
    if !contains(inner, outer) {
        return Vec::new();
    }
    fn rec(shape: &Partition, inner: &Partition, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Tableau>) {
        if shape == inner {
            let mut positions = acc.clone();
            positions.reverse();
            out.push(Tableau { positions });
            return;
        }
        for r in shape.removable_rows() {
            let smaller = shape.remove_box(r).unwrap();
            if !contains(inner, &smaller) {
                continue;
            }
            acc.push((r, smaller.part(r)));
            rec(&smaller, inner, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(outer, inner, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| {
        let ka: Vec<usize> = a.positions.iter().rev().map(|p| p.0).collect();
        let kb: Vec<usize> = b.positions.iter().rev().map(|p| p.0).collect();
        ka.cmp(&kb)
    });
    out
}

pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    skew_tableaux(shape, &Partition::empty())
}

fn content(p: (usize, usize)) -> i64 {
    p.1 as i64 - p.0 as i64
}

/// The seminormal action of `s_i` (swapping local entries `i`, `i + 1`) on
/// the basis vector of `t`: returns the diagonal coefficient and, if the swap
/// is standard, the swapped tableau with its coefficient.
fn seminormal_step(t: &Tableau, i: usize) -> (Rational, Option<(Tableau, Rational)>) {
    let (p, q) = (t.positions[i], t.positions[i + 1]);
    if p.0 == q.0 {
        return (rat(1), None);
    }
    if p.1 == q.1 {
        return (rat(-1), None);
    }
    let r = content(q) - content(p);
    let inv = Rational::new(1.into(), r.into());
    let mut swapped = t.clone();
    swapped.positions.swap(i, i + 1);
    let off = if q.0 > p.0 { rat(1) } else { rat(1) - &inv * &inv };
    (inv, Some((swapped, off)))
}

/// Builds the generator matrices for a list of tableaux of one skew shape.
fn seminormal_generators(tableaux: &[Tableau], degree: usize) -> Vec<RationalMatrix> {
    let index: HashMap<&Tableau, usize> = tableaux.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let dim = tableaux.len();
    (0..degree.saturating_sub(1))
        .map(|i| {
            let columns = tableaux
                .iter()
                .enumerate()
                .map(|(k, t)| {
                    let (diag, off) = seminormal_step(t, i);
                    let mut pairs = vec![(k, diag)];
                    if let Some((s, c)) = off {
                        pairs.push((index[&s], c));
                    }
                    SparseVec::from_pairs(pairs)
                })
                .collect();
            RationalMatrix::from_columns(dim, columns)
        })
        .collect()
}

/// Young's seminormal model of `S^lambda` together with its tableau basis and
/// the diagonal weights of an invariant symmetric form.
#[derive(Debug)]
pub struct SeminormalModel {
    pub shape: Partition,
    pub tableaux: Vec<Tableau>,
    pub index: HashMap<Tableau, usize>,
    pub rep: MatrixRep,
    pub weights: Vec<Rational>,
}

fn seminormal_cache() -> &'static RwLock<HashMap<Partition, Arc<SeminormalModel>>> {
    static CACHE: OnceLock<RwLock<HashMap<Partition, Arc<SeminormalModel>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The cached seminormal model of `S^lambda`.
pub fn seminormal_model(lambda: &Partition) -> Arc<SeminormalModel> {
    if let Some(m) = seminormal_cache().read().unwrap().get(lambda) {
        return m.clone();
    }
    let built = Arc::new(build_seminormal(lambda));
    seminormal_cache()
        .write()
        .unwrap()
        .entry(lambda.clone())
        .or_insert(built)
        .clone()
}

fn build_seminormal(lambda: &Partition) -> SeminormalModel {
    let n = lambda.size();
    let tableaux = standard_tableaux(lambda);
    let index: HashMap<Tableau, usize> = tableaux.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
    let generators = seminormal_generators(&tableaux, n);
    let labels = tableaux.iter().map(|t| t.label(0)).collect();
    let rep = MatrixRep::new(n, tableaux.len(), generators, labels);
    let weights = invariant_weights(&tableaux, &index);
    SeminormalModel {
        shape: lambda.clone(),
        tableaux,
        index,
        rep,
        weights,
    }
}

/// Diagonal weights `w_T` making the seminormal generators self-adjoint:
/// whenever `s_i` links `T` and `T'`, `w_{T'} / w_T` is the ratio of the
/// coefficient of `T` in `s_i T'` to that of `T'` in `s_i T`.
fn invariant_weights(tableaux: &[Tableau], index: &HashMap<Tableau, usize>) -> Vec<Rational> {
    let dim = tableaux.len();
    let mut weights: Vec<Option<Rational>> = vec![None; dim];
    if dim == 0 {
        return Vec::new();
    }
    weights[0] = Some(rat(1));
    let mut queue = std::collections::VecDeque::from([0usize]);
    let len = tableaux[0].positions.len();
    while let Some(k) = queue.pop_front() {
        let t = &tableaux[k];
        for i in 0..len.saturating_sub(1) {
            if let (_, Some((s, y))) = seminormal_step(t, i) {
                let j = index[&s];
                if weights[j].is_none() {
                    let (_, back) = seminormal_step(&s, i);
                    let x = back.unwrap().1;
                    weights[j] = Some(weights[k].clone().unwrap() * x / y);
                    queue.push_back(j);
                }
            }
        }
    }
    weights.into_iter().map(|w| w.expect("tableau graph is connected")).collect()
}

/// Young's seminormal form of `S^lambda` over the rationals.
pub fn seminormal(lambda: &Partition) -> MatrixRep {
    seminormal_model(lambda).rep.clone()
}

/// A model of the skew module `S^{lambda/alpha} = S^lambda ⊗_{S_a} S^alpha`
/// with `S_a` on the first `a` letters and `S_{n-a}` acting on the remaining
/// letters.
///
/// The basis vector of a skew tableau `Q` is the `S_a`-invariant
/// `c_Q = Σ_P w^alpha_P^{-1} e_{P ∪ Q} ⊗ e_P` of `S^lambda ⊗ S^alpha`, the sum
/// running over standard tableaux `P` of shape `alpha`; the invariants are
/// isomorphic to the coinvariants, and `S_{n-a}` acts on `c_Q` by the
/// seminormal rule read off the contents of `Q` inside `lambda`.
#[derive(Debug, Clone)]
pub struct SkewModel {
    pub outer: Partition,
    pub inner: Partition,
    pub tableaux: Vec<Tableau>,
    pub index: HashMap<Tableau, usize>,
    pub rep: MatrixRep,
}

pub fn skew_model(lambda: &Partition, alpha: &Partition) -> SkewModel {
    let n = lambda.size();
    let a = alpha.size();
    let degree = n.saturating_sub(a);
    let tableaux = skew_tableaux(lambda, alpha);
    let index = tableaux.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
    let generators = seminormal_generators(&tableaux, degree);
    let labels = tableaux.iter().map(|t| t.label(a)).collect();
    let rep = MatrixRep::new(degree, tableaux.len(), generators, labels);
    SkewModel {
        outer: lambda.clone(),
        inner: alpha.clone(),
        tableaux,
        index,
        rep,
    }
}

/// `S^{lambda/alpha}` as an `S_{n-a}`-module; zero unless `alpha ⪯ lambda`.
pub fn skew_module(lambda: &Partition, alpha: &Partition) -> MatrixRep {
    skew_model(lambda, alpha).rep
}

/// Joins a tableau of the inner shape with a skew tableau of the outer shape.
fn join(p: &Tableau, q: &Tableau) -> Tableau {
    Tableau {
        positions: p.positions.iter().chain(&q.positions).copied().collect(),
    }
}

/// The Pieri inclusion `S^beta → S^alpha↓_{S_{a-1}}` for `beta ⪯ alpha` with
/// one box difference: `e_P ↦ e_{P ∪ {a at alpha/beta}}`.
pub fn pieri_inclusion(beta: &Partition, alpha: &Partition) -> Result<EquivariantMap, IrrepError> {
    if beta.size() + 1 != alpha.size() || !contains(beta, alpha) {
        return Err(IrrepError::Precondition(format!("{beta} is not {alpha} minus a box")));
    }
    let src = seminormal_model(beta);
    let tgt = seminormal_model(alpha);
    let cell = (0..alpha.len())
        .find(|&r| alpha.part(r) != beta.part(r))
        .map(|r| (r, beta.part(r)))
        .unwrap();
    let columns = src
        .tableaux
        .iter()
        .map(|p| {
            let mut t = p.clone();
            t.positions.push(cell);
            SparseVec::unit(tgt.index[&t])
        })
        .collect();
    Ok(EquivariantMap {
        source: src.rep.clone(),
        target: tgt.rep.restrict_first(beta.size()),
        matrix: RationalMatrix::from_columns(tgt.rep.dim, columns),
    })
}

/// The canonical surjection `S^{lambda/beta}↓ → S^{lambda/alpha}` of
/// `S_{n-a}`-modules induced by the Pieri inclusion `S^beta ⊂ S^alpha↓`.
///
/// On invariant vectors it is the orthogonal projection onto
/// `S_a`-invariants (for the invariant form with weights `w`) of
/// `(1 ⊗ ι) c_R`. That projection sends `c_R` to zero unless the entry `a` of
/// `R` sits in the box `alpha/beta`, and otherwise to `κ_R c_Q` with
/// `Q = R \ {a}` and
/// `κ_R = Σ_{P'} w^lambda_{P'∪R} / w^beta_{P'} ÷ Σ_P w^lambda_{P∪Q} / w^alpha_P`.
/// The result is normalized so its first nonzero entry is 1.
pub fn skew_surjection(
    lambda: &Partition,
    beta: &Partition,
    alpha: &Partition,
) -> Result<EquivariantMap, IrrepError> {
    if alpha.size() == 0 || beta.size() + 1 != alpha.size() || !contains(beta, alpha) || !contains(alpha, lambda) {
        return Err(IrrepError::Precondition(format!(
            "need {beta} ⪯ {alpha} ⪯ {lambda} with one box between the first two"
        )));
    }
    let source = skew_model(lambda, beta);
    let target = skew_model(lambda, alpha);
    let big = seminormal_model(lambda);
    let wb = seminormal_model(beta);
    let wa = seminormal_model(alpha);
    let cell = (0..alpha.len())
        .find(|&r| alpha.part(r) != beta.part(r))
        .map(|r| (r, beta.part(r)))
        .unwrap();
    let norm_sq = |q: &Tableau| -> Rational {
        wa.tableaux
            .iter()
            .zip(&wa.weights)
            .map(|(p, w)| &big.weights[big.index[&join(p, q)]] / w)
            .fold(Rational::zero(), |acc, x| acc + x)
    };
    let columns = source
        .tableaux
        .iter()
        .map(|r| {
            if r.positions[0] != cell {
                return SparseVec::new();
            }
            let q = Tableau {
                positions: r.positions[1..].to_vec(),
            };
            let overlap = wb
                .tableaux
                .iter()
                .zip(&wb.weights)
                .map(|(p, w)| &big.weights[big.index[&join(p, r)]] / w)
                .fold(Rational::zero(), |acc, x| acc + x);
            SparseVec::from_pairs([(target.index[&q], overlap / norm_sq(&q))])
        })
        .collect();
    let map = EquivariantMap {
        source: source.rep.restrict_range(1, source.rep.degree - 1),
        target: target.rep.clone(),
        matrix: RationalMatrix::from_columns(target.rep.dim, columns),
    };
    Ok(map.normalized())
}

/// The fixed subspace of an involution commuting with a representation.
#[derive(Debug, Clone)]
pub struct Invariants {
    pub rep: MatrixRep,
    /// Columns are the basis of the fixed subspace in ambient coordinates.
    pub inclusion: RationalMatrix,
}

/// Fixed points of `swap` (an involution commuting with `rep`) with the
/// induced action.
pub fn s2_invariants(rep: &MatrixRep, swap: &RationalMatrix) -> Result<Invariants, IrrepError> {
    if swap.rows != rep.dim || swap.cols != rep.dim {
        return Err(IrrepError::DegreeMismatch(swap.rows, rep.dim));
    }
    for (i, g) in rep.generators.iter().enumerate() {
        if g.mul(swap) != swap.mul(g) {
            return Err(IrrepError::NotCommuting(i + 1));
        }
    }
    let fixed = kernel(&swap.sub(&RationalMatrix::identity(rep.dim)));
    let basis = SubspaceBasis::spanned_by(rep.dim, &fixed);
    let inclusion = RationalMatrix::from_columns(rep.dim, basis.vectors().to_vec());
    let generators = rep
        .generators
        .iter()
        .map(|g| {
            let cols = basis
                .vectors()
                .iter()
                .map(|v| SparseVec::from_dense(&basis.coordinates(&g.mul_vec(v))))
                .collect();
            RationalMatrix::from_columns(basis.dim(), cols)
        })
        .collect();
    let labels = (0..basis.dim()).map(|k| format!("inv{k}")).collect();
    Ok(Invariants {
        rep: MatrixRep::new(rep.degree, basis.dim(), generators, labels),
        inclusion,
    })
}

/// Coset representative `(j, n-1)` of `S_n / S_{n-1}` (0-based letters).
fn coset_rep(n: usize, j: usize) -> Perm {
    transposition(n, j, n - 1)
}

/// Induction from `S_{n-1}` (first `n-1` letters) to `S_n` on the basis
/// `g_j ⊗ x`, `g_j = (j, n)`, with index `j * dim + x`.
pub fn induce_matrix(rep: &MatrixRep) -> MatrixRep {
    let n = rep.degree + 1;
    let d = rep.dim;
    let generators = (0..n - 1)
        .map(|i| {
            let s = transposition(n, i, i + 1);
            let mut columns = vec![SparseVec::new(); n * d];
            for j in 0..n {
                let g = coset_rep(n, j);
                let sg = crate::perm::compose(&s, &g);
                let k = sg[n - 1];
                let h = crate::perm::compose(&coset_rep(n, k), &sg);
                debug_assert_eq!(h[n - 1], n - 1);
                let hm = rep.matrix_of(&h[..n - 1]);
                for x in 0..d {
                    columns[j * d + x] = hm.column(x).reindex(|y| k * d + y);
                }
            }
            RationalMatrix::from_columns(n * d, columns)
        })
        .collect();
    let labels = (0..n)
        .flat_map(|j| rep.basis_labels.iter().map(move |l| format!("g{j}·{l}")))
        .collect();
    MatrixRep::new(n, n * d, generators, labels)
}

/// The adjoint `Ind f: Ind(source) → target` of an `S_{n-1}`-map
/// `f: source → target↓`, given by `g_j ⊗ x ↦ g_j · f(x)`.
pub fn induce_map(f: &EquivariantMap, target: &MatrixRep) -> Result<EquivariantMap, IrrepError> {
    let n = target.degree;
    if f.source.degree + 1 != n {
        return Err(IrrepError::DegreeMismatch(f.source.degree + 1, n));
    }
    let d = f.source.dim;
    let mut columns = Vec::with_capacity(n * d);
    for j in 0..n {
        let gm = target.matrix_of(&coset_rep(n, j));
        for x in 0..d {
            columns.push(gm.mul_vec(f.matrix.column(x)));
        }
    }
    Ok(EquivariantMap {
        source: induce_matrix(&f.source),
        target: target.clone(),
        matrix: RationalMatrix::from_columns(target.dim, columns),
    })
}

/// Tensor product of equivariant maps between diagonal tensor products.
pub fn tensor_maps(f: &EquivariantMap, g: &EquivariantMap) -> EquivariantMap {
    EquivariantMap {
        source: f.source.tensor(&g.source),
        target: f.target.tensor(&g.target),
        matrix: f.matrix.kron(&g.matrix),
    }
}

/// All partitions of `n` with their seminormal models, as a convenience for
/// sweeping tests and suites.
pub fn all_seminormal(n: usize) -> Vec<(Partition, Arc<SeminormalModel>)> {
    partitions_of(n).into_iter().map(|l| (l.clone(), seminormal_model(&l))).collect()
}
