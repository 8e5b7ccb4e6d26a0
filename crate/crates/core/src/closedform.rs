//! Closed-form decompositions and the constructive isotypical map.
//!
//! [`general_isotypical`] builds, for one `rho ⊢ N`, the explicit map
//! `⊕_{λ'} ((S^{rho/λ̂'})^{S_2} ⊗ S^{λ'})↑ → ⊕_λ S^{rho/λ̂} ⊗ S^λ` out of skew
//! surjections and Pieri inclusions, and reads the `S_n`-decomposition of its
//! cokernel off the characters. The remaining functions evaluate the
//! piecewise formulas directly.

use std::fmt;

use thiserror::Error;

use crate::characters::{
    character_table, decompose, kronecker, skew_decomposition, BiDecomposition, ClassFunction, Decomposition,
};
use crate::exactlinalg::{rat, Rational, RationalMatrix, SparseVec, SubspaceBasis};
use crate::irreps::{
    induce_map, pieri_inclusion, s2_invariants, seminormal, skew_module, skew_surjection, EquivariantMap, IrrepError,
    MatrixRep,
};
use crate::partitions::{contains, partitions_of, Partition};
use crate::perm::{class_representative, transposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Irrep(#[from] IrrepError),
}

/// How an isotypical decomposition was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Cokernel of the explicitly constructed map.
    ConstructiveMap,
    /// The piecewise formula for the sign isotypical component.
    ColumnFormula,
    /// The piecewise formula for the `(2, 1^{N-2})` isotypical component.
    HookFormula,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ConstructiveMap => "constructive map",
            Provenance::ColumnFormula => "column formula",
            Provenance::HookFormula => "hook formula",
        })
    }
}

/// The `S_n`-module structure of one `rho`-isotypical multiplicity space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicalReport {
    pub big_n: usize,
    pub n: usize,
    pub rho: Partition,
    pub decomposition: Decomposition,
    pub provenance: Provenance,
}

/// Builds the partition `(head…, 1^ones)`, or `None` when the sequence is not
/// a partition (negative exponent, increasing entries or nonpositive head);
/// such terms contribute zero.
fn head_and_ones(head: &[i64], ones: i64) -> Option<Partition> {
    if ones < 0 || head.iter().any(|&h| h < 1) || head.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    let mut parts: Vec<usize> = head.iter().map(|&h| h as usize).collect();
    parts.extend(std::iter::repeat_n(1, ones as usize));
    Partition::new(parts).ok()
}

/// Decomposition of the degree-zero homology of transposed injections at
/// `(a, b)`: `⊕_{λ ⊢ b, λ_1 = b - a} S^{λ̂} ⊠ S^λ`. Empty when `a > b`; for
/// `a = b ≥ 1` the index set is empty as well, since `λ_1 = 0` forces `b = 0`.
pub fn injection_homology_formula(a: usize, b: usize) -> BiDecomposition {
    let mut out = BiDecomposition::zero(a, b);
    if a > b {
        return out;
    }
    for lambda in partitions_of(b) {
        if lambda.first() == b - a {
            out.insert(lambda.hat(), lambda, 1);
        }
    }
    out
}

/// Decomposition of the full permutation module `k hom(a, b)`:
/// `⊕ S^ν ⊠ S^λ` over `λ ⊢ b`, `ν ⊢ a` with `λ̂ ⪯ ν ⪯ λ`.
pub fn injection_module_formula(a: usize, b: usize) -> BiDecomposition {
    let mut out = BiDecomposition::zero(a, b);
    if a > b {
        return out;
    }
    for lambda in partitions_of(b) {
        let hat = lambda.hat();
        for nu in partitions_of(a) {
            if contains(&hat, &nu) && contains(&nu, &lambda) {
                out.insert(nu, lambda.clone(), 1);
            }
        }
    }
    out
}

/// Partitions `λ ⊢ n` with `λ_1 = 2n - N` and `λ̂ ⪯ rho`.
fn codomain_indices(rho: &Partition, n: usize) -> Vec<Partition> {
    let big_n = rho.size() as i64;
    let first = 2 * n as i64 - big_n;
    partitions_of(n)
        .into_iter()
        .filter(|l| l.first() as i64 == first && contains(&l.hat(), rho))
        .collect()
}

/// Decomposition of the degree-zero homology of bead arrangements:
/// `⊕_rho S^rho ⊠ ⊕_{λ ⊢ n, λ_1 = 2n - N, λ̂ ⪯ rho} S^{rho/λ̂} ⊗ S^λ`.
pub fn bead_homology_formula(big_n: usize, n: usize) -> BiDecomposition {
    let mut out = BiDecomposition::zero(big_n, n);
    for rho in partitions_of(big_n) {
        out.insert_slice(&rho, &beads_slice_formula(&rho, n));
    }
    out
}

/// The `rho`-slice of [`bead_homology_formula`].
pub fn beads_slice_formula(rho: &Partition, n: usize) -> Decomposition {
    let mut total = Decomposition::zero(n);
    for lambda in codomain_indices(rho, n) {
        let skew = skew_decomposition(rho, &lambda.hat());
        for (gamma, mult) in &skew.multiplicities {
            let k = kronecker(gamma, &lambda).expect("same degree");
            for (x, c) in &k.multiplicities {
                total.insert(x.clone(), mult * c);
            }
        }
    }
    total
}

/// One block of the constructive map.
#[derive(Clone, Debug)]
pub struct Block {
    pub index: Partition,
    pub rep: MatrixRep,
    pub offset: usize,
}

/// The constructed map for one isotypical component, with its blocks.
#[derive(Clone, Debug)]
pub struct IsotypicalMap {
    pub rho: Partition,
    pub n: usize,
    /// Domain blocks, indexed by `λ' ⊢ n - 1`.
    pub domain: Vec<Block>,
    /// Codomain blocks, indexed by `λ ⊢ n`.
    pub codomain: Vec<Block>,
    pub domain_rep: MatrixRep,
    pub codomain_rep: MatrixRep,
    pub matrix: RationalMatrix,
}

impl IsotypicalMap {
    /// The block of the matrix from domain block `i` to codomain block `j`.
    pub fn component(&self, i: usize, j: usize) -> RationalMatrix {
        let (d, c) = (&self.domain[i], &self.codomain[j]);
        let columns = (d.offset..d.offset + d.rep.dim)
            .map(|col| {
                SparseVec::from_pairs(
                    self.matrix
                        .column(col)
                        .iter()
                        .filter(|(r, _)| *r >= c.offset && *r < c.offset + c.rep.dim)
                        .map(|(r, v)| (r - c.offset, v.clone())),
                )
            })
            .collect();
        RationalMatrix::from_columns(c.rep.dim, columns)
    }

    /// `S_n`-decomposition of the cokernel.
    pub fn cokernel_decomposition(&self) -> Decomposition {
        cokernel_decomposition(&self.codomain_rep, &self.matrix)
    }
}

/// Decomposition of `target / image(matrix)` for an equivariant `matrix`.
pub fn cokernel_decomposition(target: &MatrixRep, matrix: &RationalMatrix) -> Decomposition {
    let n = target.degree;
    let image = SubspaceBasis::spanned_by(target.dim, matrix.columns());
    let table = character_table(n);
    let values: Vec<Rational> = table
        .partitions
        .iter()
        .map(|mu| {
            let g = target.matrix_of(&class_representative(mu));
            image.quotient_trace_with(|c| g.column(c).clone())
        })
        .collect();
    let chi = ClassFunction::from_fn(n, |mu| values[table.index_of(mu)].clone());
    decompose(&chi).expect("quotient character is a character")
}

/// The `S_{n-1}`-module `(S^{rho/α})^{S_2}`, with `S_{n+1}` acting on the
/// skew module, `S_2` the transposition of its first and last letters and
/// `S_{n-1}` on the letters in between; returned with the inclusion into
/// `S^{rho/α}`.
pub fn s2_fixed_skew(rho: &Partition, alpha: &Partition) -> Result<(MatrixRep, RationalMatrix), ClosedFormError> {
    let skew = skew_module(rho, alpha);
    let deg = skew.degree;
    if deg < 2 {
        return Err(ClosedFormError::Precondition(format!(
            "{rho}/{alpha} has degree {deg} < 2"
        )));
    }
    let swap = skew.matrix_of(&transposition(deg, 0, deg - 1));
    let inv = s2_invariants(&skew.restrict_range(1, deg - 2), &swap)?;
    Ok((inv.rep, inv.inclusion))
}

/// The component `((S^{rho/λ̂'})^{S_2} ⊗ S^{λ'})↑ → S^{rho/λ̂} ⊗ S^λ` for
/// `λ' ⪯ λ` (one box, not in the first row): the induced adjoint of the
/// tensor product of the restricted skew surjection with the Pieri
/// inclusion.
pub fn component_map(
    rho: &Partition,
    lambda_prime: &Partition,
    lambda: &Partition,
) -> Result<EquivariantMap, ClosedFormError> {
    let n = lambda.size();
    if lambda_prime.size() + 1 != n || !contains(lambda_prime, lambda) || lambda_prime.first() != lambda.first() {
        return Err(ClosedFormError::Precondition(format!(
            "{lambda_prime} ⪯ {lambda} must add one box below the first row"
        )));
    }
    let (inv_rep, inclusion) = s2_fixed_skew(rho, &lambda_prime.hat())?;
    let surj = skew_surjection(rho, &lambda_prime.hat(), &lambda.hat())?;
    let pieri = pieri_inclusion(lambda_prime, lambda)?;
    let left = surj.matrix.mul(&inclusion);
    let target = skew_module(rho, &lambda.hat()).tensor(&seminormal(lambda));
    let f = EquivariantMap {
        source: inv_rep.tensor(&pieri.source),
        target: target.restrict_first(n - 1),
        matrix: left.kron(&pieri.matrix),
    };
    Ok(induce_map(&f, &target)?)
}

/// Builds the full constructive map for the `rho`-isotypical component.
pub fn isotypical_map(rho: &Partition, n: usize) -> Result<IsotypicalMap, ClosedFormError> {
    isotypical_map_scaled(rho, n, |_, _| rat(1))
}

/// As [`isotypical_map`], with component `(λ', λ)` multiplied by
/// `scale(λ', λ)`.
pub fn isotypical_map_scaled(
    rho: &Partition,
    n: usize,
    mut scale: impl FnMut(&Partition, &Partition) -> Rational,
) -> Result<IsotypicalMap, ClosedFormError> {
    let mut codomain = Vec::new();
    let mut offset = 0;
    for lambda in codomain_indices(rho, n) {
        let rep = skew_module(rho, &lambda.hat()).tensor(&seminormal(&lambda));
        let dim = rep.dim;
        codomain.push(Block {
            index: lambda,
            rep,
            offset,
        });
        offset += dim;
    }
    let codomain_dim = offset;
    let mut domain = Vec::new();
    let mut columns: Vec<SparseVec> = Vec::new();
    if n >= 1 {
        let big_n = rho.size() as i64;
        let first = 2 * n as i64 - big_n;
        for lp in partitions_of(n - 1) {
            if lp.first() as i64 != first || !contains(&lp.hat(), rho) {
                continue;
            }
            let (inv_rep, _) = s2_fixed_skew(rho, &lp.hat())?;
            let induced = crate::irreps::induce_matrix(&inv_rep.tensor(&seminormal(&lp)));
            let dim = induced.dim;
            let mut block_cols = vec![SparseVec::new(); dim];
            for block in &codomain {
                let lambda = &block.index;
                if !contains(&lp, lambda) || lp.first() != lambda.first() || inv_rep.dim == 0 {
                    continue;
                }
                let comp = component_map(rho, &lp, lambda)?;
                let c = scale(&lp, lambda);
                for (k, col) in comp.matrix.columns().iter().enumerate() {
                    block_cols[k].axpy(&c, &col.reindex(|r| r + block.offset));
                }
            }
            columns.extend(block_cols);
            domain.push(Block {
                index: lp,
                rep: induced,
                offset: columns.len() - dim,
            });
        }
    }
    let codomain_rep = MatrixRep::direct_sum(&codomain.iter().map(|b| b.rep.clone()).collect::<Vec<_>>(), n);
    let domain_rep = MatrixRep::direct_sum(&domain.iter().map(|b| b.rep.clone()).collect::<Vec<_>>(), n);
    Ok(IsotypicalMap {
        rho: rho.clone(),
        n,
        domain,
        codomain,
        domain_rep,
        codomain_rep,
        matrix: RationalMatrix::from_columns(codomain_dim, columns),
    })
}

/// The `rho`-isotypical component of the degree-zero homology of signed bead
/// arrangements, as the cokernel of the constructed map.
pub fn general_isotypical(rho: &Partition, n: usize) -> Result<IsotypicalReport, ClosedFormError> {
    let map = isotypical_map(rho, n)?;
    Ok(IsotypicalReport {
        big_n: rho.size(),
        n,
        rho: rho.clone(),
        decomposition: map.cokernel_decomposition(),
        provenance: Provenance::ConstructiveMap,
    })
}

/// The sign-isotypical component: `S^{(m+1, 1^{N-2m-1})}` for `m = N - n`
/// with `0 ≤ m` and `2m < N`, zero otherwise.
pub fn column_isotypical(big_n: usize, n: usize) -> Result<IsotypicalReport, ClosedFormError> {
    if big_n == 0 {
        return Err(ClosedFormError::Precondition("N must be positive".into()));
    }
    let (nn, m) = (big_n as i64, big_n as i64 - n as i64);
    let mut d = Decomposition::zero(n);
    if m >= 0 && 2 * m < nn {
        if let Some(l) = head_and_ones(&[m + 1], nn - 2 * m - 1) {
            d.insert(l, 1);
        }
    }
    Ok(IsotypicalReport {
        big_n,
        n,
        rho: Partition::column(big_n),
        decomposition: d,
        provenance: Provenance::ColumnFormula,
    })
}

/// The `(2, 1^{N-2})`-isotypical component, `N > 2`, by its piecewise
/// formula; terms indexed by non-partitions are dropped.
pub fn hook_isotypical(big_n: usize, n: usize) -> Result<IsotypicalReport, ClosedFormError> {
    if big_n < 3 {
        return Err(ClosedFormError::Precondition("N must be at least 3".into()));
    }
    let (nn, m) = (big_n as i64, big_n as i64 - n as i64);
    let terms: Vec<Option<Partition>> = if m == 0 {
        vec![head_and_ones(&[2], nn - 2)]
    } else if m == 1 && big_n == 3 {
        vec![]
    } else if m == 1 {
        vec![
            head_and_ones(&[2], nn - 3),
            head_and_ones(&[3], nn - 4),
            head_and_ones(&[2, 2], nn - 5),
        ]
    } else if m > 1 && nn - 2 * m >= 2 {
        vec![
            head_and_ones(&[m + 1], nn - 2 * m - 1),
            head_and_ones(&[m + 2], nn - 2 * m - 2),
            head_and_ones(&[m, 2], nn - 2 * m - 2),
            head_and_ones(&[m + 1, 2], nn - 2 * m - 3),
        ]
    } else {
        vec![]
    };
    let mut d = Decomposition::zero(n);
    for l in terms.into_iter().flatten() {
        d.insert(l, 1);
    }
    Ok(IsotypicalReport {
        big_n,
        n,
        rho: Partition::hook(2, big_n - 2).expect("N > 2"),
        decomposition: d,
        provenance: Provenance::HookFormula,
    })
}

/// Which one-dimensional input is fed to the antisymmetrized induction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InductionInput {
    /// The constant functor: trivial on both factors.
    Trivial,
    /// Sign on both factors.
    Sign,
}

fn check_st(s: usize, t: usize) -> Result<(), ClosedFormError> {
    if s * t == 0 {
        return Err(ClosedFormError::Precondition("need s·t > 0".into()));
    }
    Ok(())
}

/// `⊕_λ S^λ ⊠ S^λ`, optionally twisting the first factor by the sign.
fn regular_bimodule(s: usize, twist: bool) -> BiDecomposition {
    let mut out = BiDecomposition::zero(s, s);
    for l in partitions_of(s) {
        let left = if twist { l.transpose() } else { l.clone() };
        out.insert(left, l, 1);
    }
    out
}

/// Closed form for the constant input: the regular bimodule for `s = t`,
/// `sgn_s ⊠ sgn_t` for `s = t + 1`, zero otherwise.
pub fn constant_input_values(s: usize, t: usize) -> Result<BiDecomposition, ClosedFormError> {
    check_st(s, t)?;
    Ok(if s == t {
        regular_bimodule(s, false)
    } else if s == t + 1 {
        let mut out = BiDecomposition::zero(s, t);
        out.insert(Partition::column(s), Partition::column(t), 1);
        out
    } else {
        BiDecomposition::zero(s, t)
    })
}

/// Closed form for the sign input: zero for `s < t`, the sign-twisted
/// regular bimodule for `s = t`, `sgn_s ⊠ triv_t` for `s > t`.
pub fn sign_input_values(s: usize, t: usize) -> Result<BiDecomposition, ClosedFormError> {
    check_st(s, t)?;
    Ok(if s < t {
        BiDecomposition::zero(s, t)
    } else if s == t {
        regular_bimodule(s, true)
    } else {
        let mut out = BiDecomposition::zero(s, t);
        out.insert(Partition::column(s), Partition::row(t), 1);
        out
    })
}

/// The `rho`-slice of the antisymmetrized induction of a one-dimensional
/// input at `(s, t) = (m + n, n)`, computed from the presentation
/// `(S^rho ⊗ M)_{S_m}` modulo the `S_n`-span of `(1 + rho(τ)) u ⊗ ω(x)`,
/// where `M = χ ⊠ χ` on `S_m × S_n`, the structure map `ω` is the identity
/// of the same input at `(m - 1, n - 1)`, and `τ` swaps the last letter of
/// `S_m` with the last letter overall.
pub fn induction_slice(rho: &Partition, t: usize, input: InductionInput) -> Decomposition {
    let s = rho.size();
    if t > s {
        return Decomposition::zero(t);
    }
    let m = s - t;
    let rep = seminormal(rho);
    let d = rep.dim;
    let chi = |sign: i64| match input {
        InductionInput::Trivial => rat(1),
        InductionInput::Sign => rat(sign),
    };
    let mut relations = SubspaceBasis::new(d);
    // Coinvariants of S_m twisted by the input character.
    for i in 0..m.saturating_sub(1) {
        let g = &rep.generators[i];
        for j in 0..d {
            let v = g.column(j).sub(&SparseVec::unit(j).scale(&chi(-1)));
            relations.insert(&v);
        }
    }
    // Images from one smaller pair of sets, translated by coset
    // representatives of S_n / S_{n-1}.
    if m >= 1 {
        let tau = rep.matrix_of(&transposition(s, m - 1, s - 1));
        let fixed = RationalMatrix::identity(d).add(&tau);
        for j in m..s {
            let g = rep.matrix_of(&transposition(s, j, s - 1));
            let moved = g.mul(&fixed);
            for col in moved.columns() {
                relations.insert(col);
            }
        }
    }
    let table = character_table(t);
    let values: Vec<Rational> = table
        .partitions
        .iter()
        .map(|mu| {
            let sigma = class_representative(mu);
            let mut full: Vec<usize> = (0..s).collect();
            for (i, &x) in sigma.iter().enumerate() {
                full[m + i] = m + x;
            }
            let g = rep.matrix_of(&full);
            let sign = crate::perm::sign(&sigma);
            relations.quotient_trace_with(|c| g.column(c).clone()) * chi(sign)
        })
        .collect();
    let chi_q = ClassFunction::from_fn(t, |mu| values[table.index_of(mu)].clone());
    decompose(&chi_q).expect("quotient character is a character")
}

/// All slices of [`induction_slice`] assembled into an `S_s × S_t` decomposition.
pub fn induction_values(s: usize, t: usize, input: InductionInput) -> BiDecomposition {
    let mut out = BiDecomposition::zero(s, t);
    for rho in partitions_of(s) {
        out.insert_slice(&rho, &induction_slice(&rho, t, input));
    }
    out
}

/// Identification of the skew module `S^{rho/mu}` for `rho = (2, 1^{N-2})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkewIdentification {
    /// `sgn_n`.
    Sign(usize),
    /// `sgn_{n-1}` induced up to `S_n`.
    InducedSign(usize),
    /// The one-dimensional module of `S_0`.
    TrivialZero,
    /// `mu` empty: the module `S^{(2, 1^{N-2})}` itself.
    Whole(usize),
    Zero,
}

impl SkewIdentification {
    pub fn decomposition(&self) -> Decomposition {
        match self {
            SkewIdentification::Sign(n) => Decomposition::single(Partition::column(*n)),
            SkewIdentification::InducedSign(n) => {
                let mut d = Decomposition::single(Partition::column(*n));
                if *n >= 2 {
                    d.insert(Partition::hook(2, n - 2).expect("n >= 2"), 1);
                }
                d
            }
            SkewIdentification::TrivialZero => Decomposition::single(Partition::empty()),
            SkewIdentification::Whole(n) => Decomposition::single(Partition::hook(2, n - 2).expect("n > 2")),
            SkewIdentification::Zero => Decomposition::zero(0),
        }
    }
}

/// Identifies `S^{(2,1^{N-2})/mu}` for `N > 2`. For nonempty `mu ⪯ rho`
/// with `|mu| < N` this is `sgn_n` or `sgn_{n-1}↑`; the empty partition is
/// listed separately because the skew module is then `S^rho` itself.
pub fn identify_hook_skew(big_n: usize, mu: &Partition) -> Result<SkewIdentification, ClosedFormError> {
    if big_n <= 2 {
        return Err(ClosedFormError::Precondition("N must exceed 2".into()));
    }
    let m = mu.size();
    let rho = Partition::hook(2, big_n - 2).expect("N > 2");
    if m > big_n || !contains(mu, &rho) {
        return Ok(SkewIdentification::Zero);
    }
    if m == big_n {
        return Ok(SkewIdentification::TrivialZero);
    }
    if m == 0 {
        return Ok(SkewIdentification::Whole(big_n));
    }
    let n = big_n - m;
    Ok(if *mu == Partition::column(m) {
        SkewIdentification::InducedSign(n)
    } else {
        SkewIdentification::Sign(n)
    })
}
