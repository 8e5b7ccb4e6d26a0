//! Character theory of symmetric groups: character tables by the
//! Murnaghan–Nakayama rule, inner products and decompositions, and the
//! derived coefficients (Littlewood–Richardson, Kronecker, skew characters,
//! Young-subgroup induction and restriction).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlinalg::Rational;
use crate::partitions::{partitions_of, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a character: multiplicity of {lambda} is {value}")]
    NotACharacter { lambda: Partition, value: String },
}

/// Character table of `S_n`, indexed by `partitions_of(n)` for both irreducibles
/// and cycle types.
#[derive(Debug)]
pub struct CharTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// Centralizer orders `z_mu`.
    pub centralizer: Vec<BigInt>,
    /// `values[l][c]` is `chi^{partitions[l]}` on class `partitions[c]`.
    pub values: Vec<Vec<i64>>,
}

impl CharTable {
    pub fn index_of(&self, p: &Partition) -> usize {
        self.index[p]
    }

    /// `chi^lambda(mu)`.
    pub fn value(&self, lambda: &Partition, mu: &Partition) -> i64 {
        self.values[self.index_of(lambda)][self.index_of(mu)]
    }

    pub fn class_count(&self) -> usize {
        self.partitions.len()
    }
}

fn table_cache() -> &'static RwLock<HashMap<usize, Arc<CharTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<CharTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The cached character table of `S_n`. Population is idempotent: concurrent
/// builders compute identical tables and the first insert wins.
pub fn character_table(n: usize) -> Arc<CharTable> {
    if let Some(t) = table_cache().read().unwrap().get(&n) {
        return t.clone();
    }
    let built = Arc::new(build_table(n));
    let mut w = table_cache().write().unwrap();
    w.entry(n).or_insert(built).clone()
}

/// Centralizer order `z_mu = prod_i i^{m_i} m_i!`.
pub fn centralizer_order(mu: &Partition) -> BigInt {
    let mut z = BigInt::one();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in mu.parts() {
        *counts.entry(p).or_default() += 1;
    }
    for (part, mult) in counts {
        for k in 1..=mult {
            z *= BigInt::from(part) * BigInt::from(k);
        }
    }
    z
}

fn build_table(n: usize) -> CharTable {
    let partitions = partitions_of(n);
    let index = partitions
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let centralizer = partitions.iter().map(centralizer_order).collect();
    let mut memo = HashMap::new();
    let values = partitions
        .iter()
        .map(|lambda| {
            let beta = beta_set(lambda);
            partitions
                .iter()
                .map(|mu| murnaghan_nakayama(&beta, mu.parts(), &mut memo))
                .collect()
        })
        .collect();
    CharTable {
        n,
        partitions,
        index,
        centralizer,
        values,
    }
}

/// First-column hook lengths (beta numbers) `lambda_i + (l - 1 - i)`.
fn beta_set(lambda: &Partition) -> Vec<usize> {
    let l = lambda.len();
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (l - 1 - i))
        .collect()
}

/// Murnaghan–Nakayama on the abacus: removing a rim hook of length `k` moves a
/// bead from `b` to `b - k`; the sign counts beads jumped over.
fn murnaghan_nakayama(
    beta: &[usize],
    mu: &[usize],
    memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>,
) -> i64 {
    let Some((&k, rest)) = mu.split_first() else {
        return 1;
    };
    let key = (beta.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.to_vec();
        next[idx] = target;
        next.sort_unstable_by(|a, c| c.cmp(a));
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * murnaghan_nakayama(&next, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// A rational class function on `S_n`, stored in `partitions_of(n)` order.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub n: usize,
    values: Vec<Rational>,
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = character_table(self.n);
        let mut m = f.debug_map();
        for (p, v) in t.partitions.iter().zip(&self.values) {
            m.entry(p, &v.to_string());
        }
        m.finish()
    }
}

impl ClassFunction {
    pub fn zero(n: usize) -> Self {
        let len = character_table(n).class_count();
        ClassFunction {
            n,
            values: vec![Rational::zero(); len],
        }
    }

    /// Builds a class function by evaluating `f` on each cycle type.
    pub fn from_fn(n: usize, f: impl FnMut(&Partition) -> Rational) -> Self {
        let t = character_table(n);
        ClassFunction {
            n,
            values: t.partitions.iter().map(f).collect(),
        }
    }

    pub fn get(&self, mu: &Partition) -> &Rational {
        &self.values[character_table(self.n).index_of(mu)]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Value at the identity, i.e. the dimension for a character.
    pub fn degree(&self) -> Rational {
        self.values.last().cloned().unwrap_or_else(Rational::one)
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction, CharacterError> {
        check_degree(self.n, other.n)?;
        Ok(ClassFunction {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction, CharacterError> {
        check_degree(self.n, other.n)?;
        Ok(ClassFunction {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    /// Pointwise product (character of the diagonal tensor product).
    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction, CharacterError> {
        check_degree(self.n, other.n)?;
        Ok(ClassFunction {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> ClassFunction {
        ClassFunction {
            n: self.n,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }
}

fn check_degree(a: usize, b: usize) -> Result<(), CharacterError> {
    if a == b {
        Ok(())
    } else {
        Err(CharacterError::DegreeMismatch(a, b))
    }
}

/// `chi^lambda` as a class function.
pub fn irreducible_character(lambda: &Partition) -> ClassFunction {
    let n = lambda.size();
    let t = character_table(n);
    let row = &t.values[t.index_of(lambda)];
    ClassFunction {
        n,
        values: row.iter().map(|&v| Rational::from_integer(v.into())).collect(),
    }
}

/// `<f, g> = sum_mu f(mu) g(mu) / z_mu` (characters here are real).
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Rational, CharacterError> {
    check_degree(f.n, g.n)?;
    let t = character_table(f.n);
    Ok(f.values
        .iter()
        .zip(&g.values)
        .zip(&t.centralizer)
        .map(|((a, b), z)| a * b / Rational::from_integer(z.clone()))
        .fold(Rational::zero(), |acc, x| acc + x))
}

/// Multiplicities of the irreducibles in `f`; fails unless all are
/// nonnegative integers.
pub fn decompose(f: &ClassFunction) -> Result<Decomposition, CharacterError> {
    let t = character_table(f.n);
    let mut multiplicities = BTreeMap::new();
    for (li, lambda) in t.partitions.iter().enumerate() {
        let mut acc = Rational::zero();
        for (ci, v) in f.values.iter().enumerate() {
            if !v.is_zero() {
                acc += v * Rational::from_integer(t.values[li][ci].into())
                    / Rational::from_integer(t.centralizer[ci].clone());
            }
        }
        if !acc.is_integer() || acc.is_negative() {
            return Err(CharacterError::NotACharacter {
                lambda: lambda.clone(),
                value: acc.to_string(),
            });
        }
        if !acc.is_zero() {
            multiplicities.insert(lambda.clone(), acc.to_integer().to_u64().unwrap());
        }
    }
    Ok(Decomposition {
        n: f.n,
        multiplicities,
    })
}

/// A multiset of irreducibles of `S_n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Decomposition {
    pub n: usize,
    pub multiplicities: BTreeMap<Partition, u64>,
}

impl Decomposition {
    pub fn zero(n: usize) -> Self {
        Decomposition {
            n,
            multiplicities: BTreeMap::new(),
        }
    }

    pub fn single(lambda: Partition) -> Self {
        let mut d = Self::zero(lambda.size());
        d.insert(lambda, 1);
        d
    }

    /// Builds from `(partition, multiplicity)` pairs; zero entries are skipped.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Partition, u64)>) -> Self {
        let mut d = Self::zero(n);
        for (p, m) in pairs {
            d.insert(p, m);
        }
        d
    }

    pub fn insert(&mut self, lambda: Partition, mult: u64) {
        assert_eq!(lambda.size(), self.n, "partition {lambda} not of {}", self.n);
        if mult > 0 {
            *self.multiplicities.entry(lambda).or_default() += mult;
        }
    }

    pub fn get(&self, lambda: &Partition) -> u64 {
        self.multiplicities.get(lambda).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.multiplicities.is_empty()
    }

    pub fn add(&self, other: &Decomposition) -> Decomposition {
        assert_eq!(self.n, other.n);
        let mut d = self.clone();
        for (p, &m) in &other.multiplicities {
            d.insert(p.clone(), m);
        }
        d
    }

    /// `self - other`, or `None` if some multiplicity would go negative.
    pub fn checked_sub(&self, other: &Decomposition) -> Option<Decomposition> {
        assert_eq!(self.n, other.n);
        let mut d = self.clone();
        for (p, &m) in &other.multiplicities {
            let cur = d.get(p);
            if cur < m {
                return None;
            }
            if cur == m {
                d.multiplicities.remove(p);
            } else {
                d.multiplicities.insert(p.clone(), cur - m);
            }
        }
        Some(d)
    }

    pub fn character(&self) -> ClassFunction {
        self.multiplicities
            .iter()
            .fold(ClassFunction::zero(self.n), |acc, (p, &m)| {
                acc.add(&irreducible_character(p).scale(&Rational::from_integer(m.into())))
                    .unwrap()
            })
    }

    pub fn dimension(&self) -> u64 {
        self.multiplicities
            .iter()
            .map(|(p, &m)| m * crate::partitions::irrep_dimension(p))
            .sum()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicities.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, m)) in self.multiplicities.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *m == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{m}{p}")?;
            }
        }
        Ok(())
    }
}

/// A multiset of irreducibles `S^rho ⊠ S^lambda` of `S_N × S_n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BiDecomposition {
    pub big_n: usize,
    pub n: usize,
    pub multiplicities: BTreeMap<(Partition, Partition), u64>,
}

impl BiDecomposition {
    pub fn zero(big_n: usize, n: usize) -> Self {
        BiDecomposition {
            big_n,
            n,
            multiplicities: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, rho: Partition, lambda: Partition, mult: u64) {
        assert_eq!(rho.size(), self.big_n, "left key {rho} not of {}", self.big_n);
        assert_eq!(lambda.size(), self.n, "right key {lambda} not of {}", self.n);
        if mult > 0 {
            *self.multiplicities.entry((rho, lambda)).or_default() += mult;
        }
    }

    pub fn get(&self, rho: &Partition, lambda: &Partition) -> u64 {
        self.multiplicities
            .get(&(rho.clone(), lambda.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// Adds `S^rho ⊠ d` for every entry of `d`.
    pub fn insert_slice(&mut self, rho: &Partition, d: &Decomposition) {
        for (lambda, &m) in &d.multiplicities {
            self.insert(rho.clone(), lambda.clone(), m);
        }
    }

    /// The `S_n`-decomposition of the multiplicity space of `S^rho`.
    pub fn slice(&self, rho: &Partition) -> Decomposition {
        let mut d = Decomposition::zero(self.n);
        for ((r, l), &m) in &self.multiplicities {
            if r == rho {
                d.insert(l.clone(), m);
            }
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.multiplicities.is_empty()
    }

    pub fn dimension(&self) -> u64 {
        use crate::partitions::irrep_dimension;
        self.multiplicities
            .iter()
            .map(|((r, l), &m)| m * irrep_dimension(r) * irrep_dimension(l))
            .sum()
    }
}

impl fmt::Display for BiDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicities.is_empty() {
            return f.write_str("0");
        }
        for (i, ((r, l), m)) in self.multiplicities.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *m != 1 {
                write!(f, "{m}")?;
            }
            write!(f, "{r}⊠{l}")?;
        }
        Ok(())
    }
}

/// A class function on the Young subgroup `S_a × S_b`, indexed by pairs of
/// cycle types.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiClassFunction {
    pub a: usize,
    pub b: usize,
    /// `values[i][j]` on `(partitions_of(a)[i], partitions_of(b)[j])`.
    pub values: Vec<Vec<Rational>>,
}

impl BiClassFunction {
    pub fn from_fn(a: usize, b: usize, mut f: impl FnMut(&Partition, &Partition) -> Rational) -> Self {
        let ta = character_table(a);
        let tb = character_table(b);
        let values = ta
            .partitions
            .iter()
            .map(|p| tb.partitions.iter().map(|q| f(p, q)).collect())
            .collect();
        BiClassFunction { a, b, values }
    }

    /// External tensor product `f ⊠ g`.
    pub fn outer(f: &ClassFunction, g: &ClassFunction) -> Self {
        BiClassFunction {
            a: f.n,
            b: g.n,
            values: f
                .values
                .iter()
                .map(|x| g.values.iter().map(|y| x * y).collect())
                .collect(),
        }
    }

    /// Restricts to a class function on the second factor after pairing the
    /// first factor with `chi` (the multiplicity space of `chi`).
    pub fn pair_left(&self, chi: &ClassFunction) -> ClassFunction {
        let ta = character_table(self.a);
        let values = (0..character_table(self.b).class_count())
            .map(|j| {
                self.values
                    .iter()
                    .zip(chi.values())
                    .zip(&ta.centralizer)
                    .map(|((row, c), z)| &row[j] * c / Rational::from_integer(z.clone()))
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect();
        ClassFunction { n: self.b, values }
    }

    pub fn decompose(&self) -> Result<BiDecomposition, CharacterError> {
        let ta = character_table(self.a);
        let mut out = BiDecomposition::zero(self.a, self.b);
        for rho in &ta.partitions {
            let slice = self.pair_left(&irreducible_character(rho));
            let d = decompose(&slice)?;
            out.insert_slice(rho, &d);
        }
        Ok(out)
    }
}

/// Enumerates the ways of splitting the parts of `mu` into a sub-multiset of
/// total `a` and its complement.
fn splits(mu: &Partition, a: usize) -> Vec<(Partition, Partition)> {
    let mut distinct: Vec<(usize, usize)> = Vec::new();
    for &p in mu.parts() {
        match distinct.last_mut() {
            Some((q, m)) if *q == p => *m += 1,
            _ => distinct.push((p, 1)),
        }
    }
    let mut out = Vec::new();
    fn rec(
        i: usize,
        distinct: &[(usize, usize)],
        remaining: usize,
        left: &mut Vec<usize>,
        right: &mut Vec<usize>,
        out: &mut Vec<(Partition, Partition)>,
    ) {
        if i == distinct.len() {
            if remaining == 0 {
                out.push((
                    Partition::new(left.clone()).unwrap(),
                    Partition::new(right.clone()).unwrap(),
                ));
            }
            return;
        }
        let (p, m) = distinct[i];
        for take in 0..=m {
            if take * p > remaining {
                break;
            }
            let (l0, r0) = (left.len(), right.len());
            left.extend(std::iter::repeat_n(p, take));
            right.extend(std::iter::repeat_n(p, m - take));
            rec(i + 1, distinct, remaining - take * p, left, right, out);
            left.truncate(l0);
            right.truncate(r0);
        }
    }
    rec(0, &distinct, a, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// Restriction from `S_{a+b}` to the Young subgroup `S_a × S_b`.
pub fn restrict_young(f: &ClassFunction, a: usize) -> BiClassFunction {
    assert!(a <= f.n);
    let b = f.n - a;
    BiClassFunction::from_fn(a, b, |p, q| {
        let mut parts: Vec<usize> = p.parts().iter().chain(q.parts()).copied().collect();
        parts.sort_unstable_by(|x, y| y.cmp(x));
        f.get(&Partition::new(parts).unwrap()).clone()
    })
}

/// Induction from `S_a × S_b` to `S_{a+b}`:
/// `Ind g (mu) = z_mu * sum_{(s,t) splitting mu} g(s,t) / (z_s z_t)`.
pub fn induce_young(g: &BiClassFunction) -> ClassFunction {
    let n = g.a + g.b;
    let ta = character_table(g.a);
    let tb = character_table(g.b);
    ClassFunction::from_fn(n, |mu| {
        let mut acc = Rational::zero();
        for (s, t) in splits(mu, g.a) {
            let (i, j) = (ta.index_of(&s), tb.index_of(&t));
            if g.values[i][j].is_zero() {
                continue;
            }
            acc += &g.values[i][j]
                / Rational::from_integer(&ta.centralizer[i] * &tb.centralizer[j]);
        }
        acc * Rational::from_integer(centralizer_order(mu))
    })
}

/// Restriction to `S_k` on the first `k` letters.
pub fn restrict(f: &ClassFunction, k: usize) -> ClassFunction {
    let rest = restrict_young(f, k);
    let id_col = character_table(f.n - k).index_of(&Partition::column(f.n - k));
    ClassFunction {
        n: k,
        values: rest.values.iter().map(|row| row[id_col].clone()).collect(),
    }
}

/// Induction from `S_k` to `S_n`, computed as induction from `S_k × S_{n-k}`
/// of `f` times the regular character of the complement.
pub fn induce(f: &ClassFunction, n: usize) -> ClassFunction {
    assert!(f.n <= n);
    let regular = ClassFunction::from_fn(n - f.n, |mu| {
        if mu.parts().iter().all(|&p| p == 1) {
            Rational::from_integer(factorial(n - f.n))
        } else {
            Rational::zero()
        }
    });
    induce_young(&BiClassFunction::outer(f, &regular))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// The Littlewood–Richardson coefficient `c^lambda_{alpha beta}`, read off
/// from the induced character of `S^alpha ⊠ S^beta`.
pub fn littlewood_richardson(lambda: &Partition, alpha: &Partition, beta: &Partition) -> u64 {
    if alpha.size() + beta.size() != lambda.size()
        || !crate::partitions::contains(alpha, lambda)
        || !crate::partitions::contains(beta, lambda)
    {
        return 0;
    }
    let ind = induce_young(&BiClassFunction::outer(
        &irreducible_character(alpha),
        &irreducible_character(beta),
    ));
    decompose(&ind).expect("induced character").get(lambda)
}

/// Character of the skew representation `S^{lambda/alpha}` of `S_{n-a}`.
pub fn skew_character(lambda: &Partition, alpha: &Partition) -> ClassFunction {
    let a = alpha.size();
    let n = lambda.size();
    if a > n || !crate::partitions::contains(alpha, lambda) {
        return ClassFunction::zero(n.saturating_sub(a));
    }
    restrict_young(&irreducible_character(lambda), a).pair_left(&irreducible_character(alpha))
}

/// `S^{lambda/alpha} ≅ ⊕_beta (S^beta)^{c^lambda_{alpha beta}}`.
pub fn skew_decomposition(lambda: &Partition, alpha: &Partition) -> Decomposition {
    if alpha.size() > lambda.size() {
        return Decomposition::zero(0);
    }
    decompose(&skew_character(lambda, alpha)).expect("skew character")
}

/// The diagonal tensor product `S^nu ⊗ S^lambda`.
pub fn kronecker(nu: &Partition, lambda: &Partition) -> Result<Decomposition, CharacterError> {
    check_degree(nu.size(), lambda.size())?;
    decompose(&irreducible_character(nu).mul(&irreducible_character(lambda))?)
}

/// Decomposition of `kS_{m+n} ⊗_{S_m} (S^mu ⊠ S^nu)` as an
/// `S_{m+n} × S_n`-module: the `rho`-slice is `S^{rho/mu} ⊗ S^nu`.
pub fn induced_bimodule_decomposition(mu: &Partition, nu: &Partition) -> BiDecomposition {
    let (m, n) = (mu.size(), nu.size());
    let mut out = BiDecomposition::zero(m + n, n);
    let chi_nu = irreducible_character(nu);
    for rho in partitions_of(m + n) {
        let skew = skew_character(&rho, mu);
        let d = decompose(&skew.mul(&chi_nu).unwrap()).expect("tensor character");
        out.insert_slice(&rho, &d);
    }
    out
}
