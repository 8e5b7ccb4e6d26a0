//! Brute-force degree-zero homology: the quotient of a module's value at a set
//! by the images of the values at all one-point-smaller subsets.
//!
//! Three models are covered: injections with the transposed structure,
//! bead arrangements, and signed bead arrangements. The main engines work one
//! `S_N`-isotypical slice at a time. For a free `S_N`-set `X` with orbit
//! representatives `x_o`, the multiplicity space `(S^rho ⊗ k X)_{S_N}` is
//! `⊕_o S^rho`, with `v ⊗ g·x_o` identified with `rho(g⁻¹) v ⊗ x_o`; every
//! relation and every `S_n`-action is rewritten this way before elimination.
//! A second engine works on the full permutation module and slices it with
//! central projectors; it is only used as a cross-check at small sizes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::beads::{antisymmetrize, bead_actions, bead_patterns, beads_fi_map, enumerate_injections, subsets, BeadArrangement};
use crate::characters::{
    character_table, decompose, irreducible_character, BiClassFunction, BiDecomposition, CharacterError, ClassFunction,
    Decomposition,
};
use crate::exactlinalg::{rat, Rational, RationalMatrix, SparseVec, SubspaceBasis};
use crate::irreps::{seminormal, MatrixRep};
use crate::partitions::{irrep_dimension, partitions_of, Partition};
use crate::perm::{all_perms, class_representative, inverse, transposition, Perm};

/// Largest `N` accepted by [`decompose_h0`] unless a larger cap is passed.
pub const DEFAULT_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("size cap exceeded: N = {0} > {1}")]
    CapExceeded(usize, usize),
    #[error("relations are not invariant under the group actions")]
    NotEquivariant,
    #[error("partition {0} is not a partition of {1}")]
    WrongSize(Partition, usize),
    #[error(transparent)]
    Character(#[from] CharacterError),
}

/// Which module the homology is taken of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    /// Injections `a → b` with the transposed structure; `N = a`, `n = b`.
    Injections,
    /// Bead arrangements on `N` labels in `n` columns.
    Beads,
    /// The signed quotient of bead arrangements.
    BeadsSigned,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Injections => "injections",
            Model::Beads => "beads",
            Model::BeadsSigned => "beads_signed",
        })
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "injections" => Ok(Model::Injections),
            "beads" => Ok(Model::Beads),
            "beads_signed" => Ok(Model::BeadsSigned),
            other => Err(format!("unknown model {other}")),
        }
    }
}

/// Character of `S_n` on `ambient / relations`, where `act(sigma, c)` is the
/// image of the unit vector `c` under `sigma`.
fn quotient_character(
    n: usize,
    relations: &SubspaceBasis,
    act: impl Fn(&Perm, usize) -> SparseVec + Sync,
) -> ClassFunction {
    let classes = character_table(n).partitions.clone();
    let values: Vec<Rational> = classes
        .iter()
        .map(|mu| {
            let sigma = class_representative(mu);
            relations.quotient_trace_with(|c| act(&sigma, c))
        })
        .collect();
    let table = character_table(n);
    ClassFunction::from_fn(n, |mu| values[table.index_of(mu)].clone())
}

/// Matrices `rho(h)` for group elements, memoized per slice.
struct RepCache<'a> {
    rep: &'a MatrixRep,
    cache: HashMap<Perm, RationalMatrix>,
}

impl<'a> RepCache<'a> {
    fn new(rep: &'a MatrixRep) -> Self {
        RepCache {
            rep,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, h: &[usize]) -> &RationalMatrix {
        if !self.cache.contains_key(h) {
            let m = self.rep.matrix_of(h);
            self.cache.insert(h.to_vec(), m);
        }
        &self.cache[h]
    }
}

/// Places `v` in block `block` of a direct sum of copies of a `d`-dimensional
/// space.
fn in_block(v: &SparseVec, block: usize, d: usize) -> SparseVec {
    v.reindex(|j| block * d + j)
}

/// The `nu`-slice of the transposed injection module at `(a, b)`: the
/// multiplicity space of `S^nu` as an `S_b`-module.
pub fn injection_slice(nu: &Partition, b: usize) -> Decomposition {
    let a = nu.size();
    if a > b {
        return Decomposition::zero(b);
    }
    let rep = seminormal(nu);
    let d = rep.dim;
    let sets = subsets(b, a);
    let index: HashMap<&Vec<usize>, usize> = sets.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let dim = sets.len() * d;
    let mut cache = RepCache::new(&rep);
    // Position of each value of `f` inside its sorted image.
    let reading = |values: &[usize]| -> (Vec<usize>, Perm) {
        let mut image = values.to_vec();
        image.sort();
        let pi = values.iter().map(|v| image.binary_search(v).unwrap()).collect();
        (image, pi)
    };
    let mut relations = SubspaceBasis::new(dim);
    if a >= 1 {
        for small in subsets(b, a - 1) {
            let terms: Vec<(usize, Perm)> = (0..b)
                .filter(|t| !small.contains(t))
                .map(|t| {
                    let mut values = small.clone();
                    values.push(t);
                    let (image, pi) = reading(&values);
                    (index[&image], pi)
                })
                .collect();
            for j in 0..d {
                let mut v = SparseVec::new();
                for (block, pi) in &terms {
                    v.axpy(&rat(1), &in_block(cache.get(pi).column(j), *block, d));
                }
                relations.insert(&v);
            }
        }
    }
    let act = |sigma: &Perm, c: usize| {
        let (block, j) = (c / d, c % d);
        let values: Vec<usize> = sets[block].iter().map(|&v| sigma[v]).collect();
        let (image, pi) = reading(&values);
        in_block(&rep.apply_perm(&pi, &SparseVec::unit(j)), index[&image], d)
    };
    let chi = quotient_character(b, &relations, act);
    decompose(&chi).expect("quotient character is a character")
}

/// The `rho`-slice of (signed) bead arrangements on `N = |rho|` labels in `n`
/// columns.
pub fn beads_slice(rho: &Partition, n: usize, signed: bool) -> Decomposition {
    let big_n = rho.size();
    let patterns = bead_patterns(big_n, n);
    if patterns.is_empty() {
        return Decomposition::zero(n);
    }
    let rep = seminormal(rho);
    let d = rep.dim;
    let index: HashMap<&Vec<usize>, usize> = patterns.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let dim = patterns.len() * d;
    let mut cache = RepCache::new(&rep);
    let mut relations = SubspaceBasis::new(dim);
    if signed {
        for (block, pattern) in patterns.iter().enumerate() {
            let x = BeadArrangement::standard(n, pattern);
            for &c in pattern {
                let s = transposition(big_n, x.columns[c].bottom, x.columns[c].top.unwrap());
                let flip = cache.get(&s).clone();
                for j in 0..d {
                    let v = SparseVec::unit(j).add(flip.column(j));
                    relations.insert(&in_block(&v, block, d));
                }
            }
        }
    }
    // Images of arrangements on the first N - 1 labels, adding the last label
    // on top of each singleton column.
    let smaller = if big_n == 0 { Vec::new() } else { bead_patterns(big_n - 1, n) };
    for small in smaller {
        let x = BeadArrangement::standard(n, &small);
        let terms: Vec<(usize, Perm)> = (0..n)
            .filter(|c| !small.contains(c))
            .map(|c| {
                let mut phi = x.clone();
                phi.columns[c].top = Some(big_n - 1);
                (index[&phi.pattern()], inverse(&phi.reading()))
            })
            .collect();
        for j in 0..d {
            let mut v = SparseVec::new();
            for (block, h_inv) in &terms {
                v.axpy(&rat(1), &in_block(cache.get(h_inv).column(j), *block, d));
            }
            relations.insert(&v);
        }
    }
    let standards: Vec<BeadArrangement> = patterns.iter().map(|p| BeadArrangement::standard(n, p)).collect();
    let act = |sigma: &Perm, c: usize| {
        let (block, j) = (c / d, c % d);
        let psi = standards[block].permute_columns(sigma);
        let h_inv = inverse(&psi.reading());
        in_block(&rep.apply_perm(&h_inv, &SparseVec::unit(j)), index[&psi.pattern()], d)
    };
    let chi = quotient_character(n, &relations, act);
    decompose(&chi).expect("quotient character is a character")
}

/// One isotypical slice of the homology: `rho ⊢ N` for the bead models and
/// `rho ⊢ a` for the injection model (with `n = b`).
pub fn h0_slice(rho: &Partition, n: usize, model: Model) -> Decomposition {
    match model {
        Model::Injections => injection_slice(rho, n),
        Model::Beads => beads_slice(rho, n, false),
        Model::BeadsSigned => beads_slice(rho, n, true),
    }
}

/// The full `S_N × S_n` decomposition, assembled from the isotypical slices.
pub fn decompose_h0(big_n: usize, n: usize, model: Model) -> Result<BiDecomposition, HomologyError> {
    decompose_h0_capped(big_n, n, model, DEFAULT_MAX_N)
}

pub fn decompose_h0_capped(big_n: usize, n: usize, model: Model, max_n: usize) -> Result<BiDecomposition, HomologyError> {
    if big_n > max_n {
        return Err(HomologyError::CapExceeded(big_n, max_n));
    }
    let slices: Vec<(Partition, Decomposition)> = partitions_of(big_n)
        .into_par_iter()
        .map(|rho| {
            let d = h0_slice(&rho, n, model);
            (rho, d)
        })
        .collect();
    let mut out = BiDecomposition::zero(big_n, n);
    for (rho, d) in &slices {
        out.insert_slice(rho, d);
    }
    Ok(out)
}

/// A homology problem on an explicit permutation-type module: generators of
/// the `S_N` and `S_n` actions on the ambient space, and the structure maps
/// from all one-point-smaller subsets.
#[derive(Clone, Debug)]
pub struct H0Problem {
    pub big_n: usize,
    pub n: usize,
    pub dim: usize,
    pub left: Vec<RationalMatrix>,
    pub right: Vec<RationalMatrix>,
    pub incoming: Vec<RationalMatrix>,
}

/// Quotient dimension and its character on pairs of conjugacy classes.
#[derive(Clone, Debug)]
pub struct H0Result {
    pub dim: usize,
    pub table: BiClassFunction,
}

impl H0Result {
    pub fn decompose(&self) -> Result<BiDecomposition, HomologyError> {
        Ok(self.table.decompose()?)
    }
}

fn word_matrix(gens: &[RationalMatrix], dim: usize, p: &[usize]) -> RationalMatrix {
    crate::perm::reduced_word(p)
        .iter()
        .fold(RationalMatrix::identity(dim), |acc, &i| acc.mul(&gens[i]))
}

impl H0Problem {
    fn left_matrix(&self, g: &[usize]) -> RationalMatrix {
        word_matrix(&self.left, self.dim, g)
    }

    fn right_matrix(&self, s: &[usize]) -> RationalMatrix {
        word_matrix(&self.right, self.dim, s)
    }

    /// The span of all incoming images.
    pub fn relations(&self) -> SubspaceBasis {
        SubspaceBasis::spanned_by(self.dim, self.incoming.iter().flat_map(|m| m.columns()))
    }
}

/// Cokernel of all incoming maps together, with its character.
pub fn h0_cokernel(p: &H0Problem) -> Result<H0Result, HomologyError> {
    let relations = p.relations();
    for g in p.left.iter().chain(&p.right) {
        if relations.vectors().iter().any(|v| !relations.contains(&g.mul_vec(v))) {
            return Err(HomologyError::NotEquivariant);
        }
    }
    let table = BiClassFunction::from_fn(p.big_n, p.n, |mu, nu| {
        let m = p.right_matrix(&class_representative(nu)).mul(&p.left_matrix(&class_representative(mu)));
        relations.quotient_trace_with(|c| m.column(c).clone())
    });
    Ok(H0Result {
        dim: p.dim - relations.dim(),
        table,
    })
}

/// The injection model at `(a, b)` on the full ambient `k hom(a, b)`.
pub fn injection_problem(a: usize, b: usize) -> H0Problem {
    let target = enumerate_injections(a, b);
    let index: HashMap<_, usize> = target.iter().enumerate().map(|(k, f)| (f.clone(), k)).collect();
    let dim = target.len();
    let perm_matrix = |f: &dyn Fn(&crate::beads::Injection) -> crate::beads::Injection| {
        RationalMatrix::from_columns(dim, target.iter().map(|x| SparseVec::unit(index[&f(x)])).collect())
    };
    let left = (0..a.saturating_sub(1))
        .map(|i| perm_matrix(&|f| f.act_source(&transposition(a, i, i + 1))))
        .collect();
    let right = (0..b.saturating_sub(1))
        .map(|i| perm_matrix(&|f| f.act_target(&transposition(b, i, i + 1))))
        .collect();
    // For each point u of the source, sum over extensions of maps defined on
    // the other points.
    let incoming = if a == 0 {
        Vec::new()
    } else {
        let source = enumerate_injections(a - 1, b);
        (0..a)
            .map(|u| {
                let columns = source
                    .iter()
                    .map(|f| {
                        SparseVec::from_pairs((0..b).filter(|t| !f.values.contains(t)).map(|t| {
                            let mut values = f.values.clone();
                            values.insert(u, t);
                            let g = crate::beads::Injection {
                                source_size: a,
                                target_size: b,
                                values,
                            };
                            (index[&g], rat(1))
                        }))
                    })
                    .collect();
                RationalMatrix::from_columns(dim, columns)
            })
            .collect()
    };
    H0Problem {
        big_n: a,
        n: b,
        dim,
        left,
        right,
        incoming,
    }
}

/// The (signed) bead model at `(N, n)` on the full ambient.
pub fn beads_problem(big_n: usize, n: usize, signed: bool) -> H0Problem {
    let incoming_unsigned: Vec<RationalMatrix> = if big_n == 0 {
        Vec::new()
    } else {
        (0..big_n).map(|l| beads_fi_map(big_n, n, l)).collect()
    };
    if signed {
        let s = antisymmetrize(big_n, n);
        H0Problem {
            big_n,
            n,
            dim: s.basis.len(),
            incoming: incoming_unsigned.iter().map(|m| s.project.mul(m)).collect(),
            left: s.left,
            right: s.right,
        }
    } else {
        let (left, right) = bead_actions(big_n, n);
        H0Problem {
            big_n,
            n,
            dim: crate::beads::bead_count(big_n, n) as usize,
            left,
            right,
            incoming: incoming_unsigned,
        }
    }
}

/// The image of the central projector of `rho` on the ambient and on the
/// relations of a problem.
#[derive(Clone, Debug)]
pub struct IsotypicalSlice {
    pub rho: Partition,
    pub projector: RationalMatrix,
    pub ambient: SubspaceBasis,
    pub relations: SubspaceBasis,
}

impl IsotypicalSlice {
    /// Dimension of the slice of the quotient.
    pub fn quotient_dim(&self) -> usize {
        self.ambient.dim() - self.relations.dim()
    }

    /// `S_N × S_n` character of the slice of the quotient.
    pub fn character(&self, p: &H0Problem) -> Result<BiClassFunction, HomologyError> {
        let mut err = None;
        let table = BiClassFunction::from_fn(p.big_n, p.n, |mu, nu| {
            let m = p.right_matrix(&class_representative(nu)).mul(&p.left_matrix(&class_representative(mu)));
            match (self.ambient.restricted_trace(&m), self.relations.restricted_trace(&m)) {
                (Ok(x), Ok(y)) => x - y,
                _ => {
                    err = Some(HomologyError::NotEquivariant);
                    Rational::zero()
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(table),
        }
    }
}

/// Applies `p_rho = (dim rho / N!) Σ_g chi^rho(g) g` to a problem.
pub fn isotypical_slice(p: &H0Problem, rho: &Partition) -> Result<IsotypicalSlice, HomologyError> {
    if rho.size() != p.big_n {
        return Err(HomologyError::WrongSize(rho.clone(), p.big_n));
    }
    let chi = irreducible_character(rho);
    let mut projector = RationalMatrix::zero(p.dim, p.dim);
    let perms = all_perms(p.big_n);
    for g in &perms {
        let c = chi.get(&crate::perm::cycle_type(g));
        if !c.is_zero() {
            projector = projector.add(&p.left_matrix(g).scale(c));
        }
    }
    let scale = Rational::new(
        (irrep_dimension(rho) as i64).into(),
        (perms.len() as i64).into(),
    );
    projector = projector.scale(&scale);
    let ambient = SubspaceBasis::spanned_by(p.dim, projector.columns());
    let images: Vec<SparseVec> = p
        .incoming
        .iter()
        .flat_map(|m| projector.mul(m).columns().to_vec())
        .collect();
    let relations = SubspaceBasis::spanned_by(p.dim, &images);
    Ok(IsotypicalSlice {
        rho: rho.clone(),
        projector,
        ambient,
        relations,
    })
}

/// Full decomposition through central projectors on the explicit ambient
/// module; exponential in `N` and meant for cross-checks only.
pub fn decompose_h0_by_projectors(big_n: usize, n: usize, model: Model) -> Result<BiDecomposition, HomologyError> {
    let p = match model {
        Model::Injections => injection_problem(big_n, n),
        Model::Beads => beads_problem(big_n, n, false),
        Model::BeadsSigned => beads_problem(big_n, n, true),
    };
    let mut out = BiDecomposition::zero(big_n, n);
    for rho in partitions_of(big_n) {
        let slice = isotypical_slice(&p, &rho)?;
        let d = slice.character(&p)?.decompose()?;
        for ((r, l), m) in &d.multiplicities {
            if *r != rho {
                return Err(HomologyError::NotEquivariant);
            }
            out.insert(r.clone(), l.clone(), *m);
        }
    }
    Ok(out)
}
