//! Root-system combinatorics for finite products of simple types A–G:
//! Cartan data, positive roots, the invariant form, and the Weyl group.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * The stored Cartan matrix is `c[i][j] = ⟨α_j, α_i^∨⟩ = 2(α_i,α_j)/(α_i,α_i)`,
//!   so fundamental-weight coordinates are obtained from simple-root
//!   coordinates by `f = C·s`.
//! * The invariant form is the W-invariant symmetric form scaled, per simple
//!   factor, so that long roots have squared length 2 ("long-root-2").
//! * Positive roots are ordered by height, then lexicographically on
//!   simple-root coordinates; all derived output inherits this order.

use std::collections::HashSet;
use std::fmt;

use num::{One, Signed, Zero};

use crate::{fmt_int_slice, fmt_rat_slice, linalg, rat, rat_int};
use crate::{Error, Nat, Rational, Result};

/// Simple-factor family letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }

    /// Admissible ranks: A n≥1, B n≥2, C n≥2, D n≥4, E 6–8, F 4, G 2.
    pub fn admits(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

/// One admissible simple factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleFactor {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A nonempty product of admissible simple factors, e.g. `A2xA1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanType {
    factors: Vec<SimpleFactor>,
}

impl CartanType {
    pub fn new(factors: impl IntoIterator<Item = (char, usize)>) -> Result<Self> {
        let mut out = Vec::new();
        for (letter, rank) in factors {
            let family = Family::from_letter(letter)
                .ok_or(Error::InadmissibleFactor { family: letter, rank })?;
            if !family.admits(rank) {
                return Err(Error::InadmissibleFactor {
                    family: family.letter(),
                    rank,
                });
            }
            out.push(SimpleFactor { family, rank });
        }
        if out.is_empty() {
            return Err(Error::InadmissibleFactor {
                family: '-',
                rank: 0,
            });
        }
        Ok(CartanType { factors: out })
    }

    /// Parse `"A2"`, `"A1xA1"`, `"B2xG2"`, …
    pub fn parse(text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in text.split('x') {
            let part = part.trim();
            let mut chars = part.chars();
            let letter = chars.next().ok_or(Error::InadmissibleFactor {
                family: '-',
                rank: 0,
            })?;
            let rank: usize = chars.as_str().parse().map_err(|_| Error::InadmissibleFactor {
                family: letter,
                rank: 0,
            })?;
            factors.push((letter, rank));
        }
        CartanType::new(factors)
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Coordinate system a [`Weight`] is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Coefficients over the simple roots α_i.
    SimpleRoot,
    /// Pairings with the simple coroots, ⟨μ, α_i^∨⟩.
    FundamentalWeight,
}

/// An exact weight: rational coordinates in a tagged basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    basis: Basis,
    coords: Vec<Rational>,
}

impl Weight {
    pub fn new(coords: Vec<Rational>, basis: Basis) -> Self {
        Weight { basis, coords }
    }

    pub fn from_ints(coords: &[i64], basis: Basis) -> Self {
        Weight {
            basis,
            coords: coords.iter().map(|&c| rat_int(c)).collect(),
        }
    }

    pub fn zero(rank: usize, basis: Basis) -> Self {
        Weight {
            basis,
            coords: vec![Rational::zero(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// True iff every coordinate is an integer (meaningful in the
    /// fundamental-weight basis: membership in the weight lattice).
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", fmt_rat_slice(&self.coords))
    }
}

/// A positive root, cached in both coordinate systems (both integral).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    sr: Vec<i64>,
    fund: Vec<i64>,
}

impl Root {
    pub fn sr_coords(&self) -> &[i64] {
        &self.sr
    }

    pub fn fund_coords(&self) -> &[i64] {
        &self.fund
    }

    /// Sum of simple-root coordinates.
    pub fn height(&self) -> i64 {
        self.sr.iter().sum()
    }

    pub fn weight(&self, basis: Basis) -> Weight {
        match basis {
            Basis::SimpleRoot => Weight::from_ints(&self.sr, basis),
            Basis::FundamentalWeight => Weight::from_ints(&self.fund, basis),
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", fmt_int_slice(&self.sr))
    }
}

/// An element of the Weyl group: a word in simple reflections together
/// with its exact integer matrix action on fundamental-weight coordinates.
///
/// `det(matrix) = (−1)^(word length)` holds for every word, reduced or not,
/// since det is multiplicative and each generator has det −1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: Vec<Vec<i64>>,
}

fn identity_matrix(rank: usize) -> Vec<Vec<i64>> {
    (0..rank)
        .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            word: Vec::new(),
            matrix: identity_matrix(rank),
        }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn det(&self) -> i64 {
        if self.word.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Action on fundamental-weight coordinates.
    pub fn apply_fund(&self, f: &[Rational]) -> Vec<Rational> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(f)
                    .map(|(&m, x)| x * rat_int(m))
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    /// Action on a weight, returned in the weight's own basis.
    pub fn apply(&self, w: &Weight, rs: &RootSystem) -> Result<Weight> {
        let f = rs.to_basis(w, Basis::FundamentalWeight)?;
        let moved = Weight::new(self.apply_fund(f.coords()), Basis::FundamentalWeight);
        rs.to_basis(&moved, w.basis())
    }

    /// `self ∘ s_i` (reflect first, then apply self).
    pub(crate) fn append_right(&self, rs: &RootSystem, i: usize) -> WeylElement {
        let mut word = self.word.clone();
        word.push(i);
        WeylElement {
            word,
            matrix: matmul(&self.matrix, &rs.simple_reflection_matrix(i)),
        }
    }

    /// `s_i ∘ self` (apply self first, then reflect).
    pub(crate) fn prepend_left(&self, rs: &RootSystem, i: usize) -> WeylElement {
        let mut word = vec![i];
        word.extend_from_slice(&self.word);
        WeylElement {
            word,
            matrix: matmul(&rs.simple_reflection_matrix(i), &self.matrix),
        }
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let mut inv = WeylElement::identity(self.matrix.len());
        for &i in self.word.iter().rev() {
            inv = inv.append_right(rs, i);
        }
        inv
    }

    /// Action on simple-coroot coordinates, i.e. on torsion parameters x:
    /// the contragredient action, so that ⟨w·μ, w·x⟩ = ⟨μ, x⟩ exactly.
    pub fn apply_coroot(&self, x: &[Rational], rs: &RootSystem) -> Vec<Rational> {
        // Pairing is f(μ)·x, so x transforms by the inverse transpose.
        let inv = self.inverse(rs);
        let n = x.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| &x[k] * rat_int(inv.matrix[k][i]))
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect()
    }
}

/// An exact root system for a (possibly reducible) Cartan type.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Rational>>,
    symmetrizer: Vec<u64>,
    /// d_i = (α_i, α_i)/2 in the long-root-2 normalization.
    half_norms: Vec<Rational>,
    positive: Vec<Root>,
    positive_set: HashSet<Vec<i64>>,
    factor_of: Vec<usize>,
}

/// Cartan block for one simple factor, in the row-coroot convention
/// `c[i][j] = 2(α_i,α_j)/(α_i,α_i)`.
fn cartan_block(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut c = identity_matrix(n);
    for row in c.iter_mut() {
        for x in row.iter_mut() {
            *x *= 2;
        }
    }
    let mut chain = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match family {
        Family::A => {
            for i in 0..n.saturating_sub(1) {
                chain(i, i + 1);
            }
        }
        Family::B => {
            // Last simple root short: its row carries the −2.
            for i in 0..n - 1 {
                chain(i, i + 1);
            }
            c[n - 1][n - 2] = -2;
        }
        Family::C => {
            // Last simple root long: the −2 sits in the row next to it.
            for i in 0..n - 1 {
                chain(i, i + 1);
            }
            c[n - 2][n - 1] = -2;
        }
        Family::D => {
            for i in 0..n - 2 {
                chain(i, i + 1);
            }
            chain(n - 3, n - 1);
        }
        Family::E => {
            // Bourbaki numbering: chain 1-3-4-5-…, node 2 hangs off node 4.
            chain(0, 2);
            chain(2, 3);
            chain(1, 3);
            for i in 3..n - 1 {
                chain(i, i + 1);
            }
        }
        Family::F => {
            chain(0, 1);
            chain(2, 3);
            c[1][2] = -1;
            c[2][1] = -2;
        }
        Family::G => {
            // First simple root short.
            c[0][1] = -3;
            c[1][0] = -1;
        }
    }
    c
}

/// Squared lengths (α_i, α_i) in the long-root-2 normalization.
fn norms_block(family: Family, n: usize) -> Vec<Rational> {
    let long = rat_int(2);
    let short = rat_int(1);
    match family {
        Family::A | Family::D | Family::E => vec![long; n],
        Family::B => {
            let mut v = vec![long; n - 1];
            v.push(short);
            v
        }
        Family::C => {
            let mut v = vec![short; n - 1];
            v.push(long);
            v
        }
        Family::F => vec![long.clone(), long, short.clone(), short],
        Family::G => vec![rat(2, 3), long],
    }
}

/// Minimal positive integer symmetrizer: D_i c_ij = D_j c_ji.
fn symmetrizer_block(family: Family, n: usize) -> Vec<u64> {
    match family {
        Family::A | Family::D | Family::E => vec![1; n],
        Family::B => {
            let mut v = vec![2; n - 1];
            v.push(1);
            v
        }
        Family::C => {
            let mut v = vec![1; n - 1];
            v.push(2);
            v
        }
        Family::F => vec![2, 2, 1, 1],
        Family::G => vec![1, 3],
    }
}

fn factor_weyl_order(family: Family, n: usize) -> Nat {
    let factorial = |k: usize| (1..=k as u64).map(Nat::from).product::<Nat>();
    match family {
        Family::A => factorial(n + 1),
        Family::B | Family::C => Nat::from(2u64).pow(n as u32) * factorial(n),
        Family::D => Nat::from(2u64).pow(n as u32 - 1) * factorial(n),
        Family::E => Nat::from(match n {
            6 => 51_840u64,
            7 => 2_903_040,
            8 => 696_729_600,
            _ => unreachable!("inadmissible E rank"),
        }),
        Family::F => Nat::from(1_152u64),
        Family::G => Nat::from(12u64),
    }
}

/// Build the root system of a Cartan type: block Cartan data, then positive
/// roots by chain closure from the simple roots, ordered by height then
/// lexicographically.
pub fn build_root_system(ty: &CartanType) -> RootSystem {
    let rank = ty.rank();
    let mut cartan = identity_matrix(rank);
    for row in cartan.iter_mut() {
        for x in row.iter_mut() {
            *x *= 2;
        }
    }
    let mut half_norms = Vec::with_capacity(rank);
    let mut symmetrizer = Vec::with_capacity(rank);
    let mut factor_of = Vec::with_capacity(rank);
    let mut offset = 0usize;
    for (fi, factor) in ty.factors().iter().enumerate() {
        let n = factor.rank;
        let block = cartan_block(factor.family, n);
        for i in 0..n {
            for j in 0..n {
                cartan[offset + i][offset + j] = block[i][j];
            }
        }
        for norm in norms_block(factor.family, n) {
            half_norms.push(norm / rat_int(2));
        }
        symmetrizer.extend(symmetrizer_block(factor.family, n));
        factor_of.extend(std::iter::repeat(fi).take(n));
        offset += n;
    }

    let cartan_rat: Vec<Vec<Rational>> = cartan
        .iter()
        .map(|row| row.iter().map(|&x| rat_int(x)).collect())
        .collect();
    let cartan_inv = linalg::invert(&cartan_rat).expect("Cartan matrices are invertible");

    // Chain closure: for β ∈ Φ⁺ and simple α_i, β + α_i ∈ Φ iff the root
    // string allows one more step up: q = p − ⟨β, α_i^∨⟩ > 0, where p is the
    // number of steps down inside the set built so far.
    let mut set: HashSet<Vec<i64>> = HashSet::new();
    let mut level: Vec<Vec<i64>> = Vec::new();
    for i in 0..rank {
        let mut e = vec![0i64; rank];
        e[i] = 1;
        set.insert(e.clone());
        level.push(e);
    }
    while !level.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &level {
            for i in 0..rank {
                let pairing: i64 = (0..rank).map(|j| cartan[i][j] * beta[j]).sum();
                let mut p = 0i64;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if down[i] < 0 || !set.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if set.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        level = next;
    }

    let mut sr_list: Vec<Vec<i64>> = set.iter().cloned().collect();
    sr_list.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    let positive: Vec<Root> = sr_list
        .into_iter()
        .map(|sr| {
            let fund: Vec<i64> = (0..rank)
                .map(|i| (0..rank).map(|j| cartan[i][j] * sr[j]).sum())
                .collect();
            Root { sr, fund }
        })
        .collect();

    RootSystem {
        cartan_type: ty.clone(),
        rank,
        cartan,
        cartan_inv,
        symmetrizer,
        half_norms,
        positive,
        positive_set: set,
        factor_of,
    }
}

impl RootSystem {
    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[u64] {
        &self.symmetrizer
    }

    /// (α_i, α_i)/2 for each simple root.
    pub fn half_norms(&self) -> &[Rational] {
        &self.half_norms
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut sr = vec![0i64; self.rank];
        sr[i] = 1;
        let fund = (0..self.rank).map(|k| self.cartan[k][i]).collect();
        Root { sr, fund }
    }

    /// Factor index of simple root i.
    pub fn factor_of(&self, i: usize) -> usize {
        self.factor_of[i]
    }

    pub fn positive_root_by_sr(&self, sr: &[i64]) -> Option<&Root> {
        self.positive.iter().find(|r| r.sr == sr)
    }

    /// Membership of an integer vector in Φ = Φ⁺ ∪ −Φ⁺.
    pub fn is_root_sr(&self, v: &[i64]) -> bool {
        if self.positive_set.contains(v) {
            return true;
        }
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.positive_set.contains(&neg)
    }

    pub fn sr_to_fund(&self, s: &[Rational]) -> Vec<Rational> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| &s[j] * rat_int(self.cartan[i][j]))
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    pub fn fund_to_sr(&self, f: &[Rational]) -> Vec<Rational> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| &f[j] * &self.cartan_inv[i][j])
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    /// Convert a weight between bases (identity if already there).
    pub fn to_basis(&self, w: &Weight, basis: Basis) -> Result<Weight> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: w.rank(),
            });
        }
        let coords = match (w.basis(), basis) {
            (a, b) if a == b => w.coords().to_vec(),
            (Basis::SimpleRoot, Basis::FundamentalWeight) => self.sr_to_fund(w.coords()),
            (Basis::FundamentalWeight, Basis::SimpleRoot) => self.fund_to_sr(w.coords()),
            _ => unreachable!(),
        };
        Ok(Weight::new(coords, basis))
    }

    /// (a, b) in the long-root-2 normalization, exact.
    pub fn inner_product(&self, a: &Weight, b: &Weight) -> Result<Rational> {
        let s = self.to_basis(a, Basis::SimpleRoot)?;
        let f = self.to_basis(b, Basis::FundamentalWeight)?;
        // (μ, ν) = Σ_i s_i(μ) · d_i · f_i(ν) with d_i = (α_i,α_i)/2.
        Ok((0..self.rank)
            .map(|i| &s.coords()[i] * &self.half_norms[i] * &f.coords()[i])
            .fold(Rational::zero(), |acc, t| acc + t))
    }

    /// (root, μ) for a root in integer simple-root coordinates and μ in
    /// fundamental-weight coordinates — the hot path of the character engine.
    pub(crate) fn form_sr_fund(&self, sr: &[i64], fund: &[Rational]) -> Rational {
        (0..self.rank)
            .map(|i| rat_int(sr[i]) * &self.half_norms[i] * &fund[i])
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// (a, b) with both arguments in fundamental-weight coordinates.
    pub(crate) fn form_fund_fund(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let s = self.fund_to_sr(a);
        (0..self.rank)
            .map(|i| &s[i] * &self.half_norms[i] * &b[i])
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// (α, α) for a root.
    pub fn root_norm2(&self, root: &Root) -> Rational {
        let fund: Vec<Rational> = root.fund.iter().map(|&x| rat_int(x)).collect();
        self.form_sr_fund(&root.sr, &fund)
    }

    /// ⟨w, α^∨⟩ = 2(w,α)/(α,α), exact.
    pub fn coroot_pairing(&self, w: &Weight, root: &Root) -> Result<Rational> {
        let f = self.to_basis(w, Basis::FundamentalWeight)?;
        let num = self.form_sr_fund(&root.sr, f.coords());
        Ok(num * rat_int(2) / self.root_norm2(root))
    }

    /// Half-sum of the positive roots: (1,…,1) in fundamental coordinates.
    pub fn rho(&self) -> Weight {
        Weight::new(vec![Rational::one(); self.rank], Basis::FundamentalWeight)
    }

    /// Reflection in (the hyperplane orthogonal to) a root of the system.
    /// The result is returned in the basis of the input weight.
    pub fn reflect(&self, w: &Weight, root: &Weight) -> Result<Weight> {
        let root_sr = self.to_basis(root, Basis::SimpleRoot)?;
        let as_ints: Option<Vec<i64>> = root_sr
            .coords()
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().try_into().ok()
                } else {
                    None
                }
            })
            .collect();
        let sr = as_ints.ok_or_else(|| Error::NotARoot(fmt_rat_slice(root_sr.coords())))?;
        if !self.is_root_sr(&sr) {
            return Err(Error::NotARoot(fmt_int_slice(&sr)));
        }
        let pos: Vec<i64> = if self.positive_set.contains(&sr) {
            sr
        } else {
            sr.iter().map(|x| -x).collect()
        };
        let r = self
            .positive_root_by_sr(&pos)
            .expect("membership already checked")
            .clone();
        let f = self.to_basis(w, Basis::FundamentalWeight)?;
        let pairing = self.coroot_pairing(w, &r)?;
        let moved: Vec<Rational> = (0..self.rank)
            .map(|i| &f.coords()[i] - &pairing * rat_int(r.fund[i]))
            .collect();
        self.to_basis(&Weight::new(moved, Basis::FundamentalWeight), w.basis())
    }

    /// True iff (w, α) ≠ 0 for every positive root α.
    pub fn is_regular(&self, w: &Weight) -> Result<bool> {
        let f = self.to_basis(w, Basis::FundamentalWeight)?;
        Ok(self
            .positive
            .iter()
            .all(|r| !self.form_sr_fund(&r.sr, f.coords()).is_zero()))
    }

    /// Exact Weyl group order via the product of per-factor orders.
    pub fn weyl_order(&self) -> Nat {
        self.cartan_type
            .factors()
            .iter()
            .map(|f| factor_weyl_order(f.family, f.rank))
            .product()
    }

    pub(crate) fn simple_reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        // On fundamental coordinates: f_k ↦ f_k − f_i · c[k][i].
        let mut m = identity_matrix(self.rank);
        for k in 0..self.rank {
            m[k][i] -= self.cartan[k][i];
        }
        m
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        WeylElement {
            word: vec![i],
            matrix: self.simple_reflection_matrix(i),
        }
    }

    /// Complete duplicate-free enumeration of the Weyl group by breadth-first
    /// closure over the simple reflections. Words are geodesic; order of the
    /// returned list is the deterministic discovery order.
    ///
    /// Errors with the exact order when it exceeds `cap`, so callers can fall
    /// back to order-only mode.
    pub fn weyl_group(&self, cap: u64) -> Result<Vec<WeylElement>> {
        let order = self.weyl_order();
        if order > Nat::from(cap) {
            return Err(Error::WeylCapExceeded { order, cap });
        }
        let mut out = vec![WeylElement::identity(self.rank)];
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        seen.insert(out[0].matrix.concat());
        let mut frontier = 0usize;
        while frontier < out.len() {
            let current = out[frontier].clone();
            frontier += 1;
            for i in 0..self.rank {
                let next = current.append_right(self, i);
                if seen.insert(next.matrix.concat()) {
                    out.push(next);
                }
            }
        }
        Ok(out)
    }

    /// The dominant W-conjugate of a weight, the element carrying the input
    /// onto it, and that element's determinant.
    ///
    /// The result weight is in fundamental-weight coordinates. For regular
    /// input the element is unique; for singular input the first ascent is
    /// taken at each step, which makes the result deterministic.
    pub fn dominant_conjugate(&self, w: &Weight) -> Result<(Weight, WeylElement, i64)> {
        let mut f = self.to_basis(w, Basis::FundamentalWeight)?.coords().to_vec();
        let mut elem = WeylElement::identity(self.rank);
        loop {
            let Some(i) = f.iter().position(|c| c.is_negative()) else {
                break;
            };
            // s_i: f_k ↦ f_k − f_i c[k][i].
            let fi = f[i].clone();
            for k in 0..self.rank {
                let delta = &fi * rat_int(self.cartan[k][i]);
                f[k] -= delta;
            }
            elem = elem.prepend_left(self, i);
        }
        let det = elem.det();
        Ok((Weight::new(f, Basis::FundamentalWeight), elem, det))
    }
}
