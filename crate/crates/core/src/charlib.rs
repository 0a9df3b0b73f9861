//! Formal characters with exact integer multiplicities, and the engine that
//! produces them: highest-weight character generation (Freudenthal's
//! recursion) over the full system or any closed subsystem, tensor products,
//! exterior powers, evaluation at torsion elements, and branching to the
//! compact subsystem of a symmetric pair.
//!
//! All weights are stored in ambient fundamental-weight coordinates.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::{One, Signed, ToPrimitive, Zero};

use crate::cyclo::Cyclotomic;
use crate::rootdata::{Basis, RootSystem, Weight};
use crate::subsystem::Subsystem;
use crate::sympair::{SymmetricPair, TorsionElement};
use crate::{fmt_rat_slice, rat_int, Error, Int, Rational, Result};

/// A finitely supported virtual character: weight ↦ signed multiplicity.
///
/// The zero multiplicity is never stored, so equality of maps is equality
/// of characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalCharacter {
    rank: usize,
    weights: HashMap<Vec<Rational>, Int>,
}

impl FormalCharacter {
    pub fn zero(rank: usize) -> FormalCharacter {
        FormalCharacter {
            rank,
            weights: HashMap::new(),
        }
    }

    /// The character of the trivial one-dimensional module.
    pub fn trivial(rank: usize) -> FormalCharacter {
        FormalCharacter::single(rank, vec![Rational::zero(); rank], Int::one())
    }

    /// A single weight with the given multiplicity.
    pub fn single(rank: usize, fund_coords: Vec<Rational>, mult: Int) -> FormalCharacter {
        assert_eq!(fund_coords.len(), rank, "weight length must match rank");
        let mut weights = HashMap::new();
        if !mult.is_zero() {
            weights.insert(fund_coords, mult);
        }
        FormalCharacter { rank, weights }
    }

    pub fn from_entries(
        rank: usize,
        entries: impl IntoIterator<Item = (Vec<Rational>, Int)>,
    ) -> FormalCharacter {
        let mut c = FormalCharacter::zero(rank);
        for (w, m) in entries {
            c.bump(w, m);
        }
        c
    }

    fn bump(&mut self, w: Vec<Rational>, delta: Int) {
        assert_eq!(w.len(), self.rank, "weight length must match rank");
        if delta.is_zero() {
            return;
        }
        match self.weights.entry(w) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += delta;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(delta);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.weights.len()
    }

    /// Signed multiplicity of a weight (zero when absent).
    pub fn multiplicity(&self, fund_coords: &[Rational]) -> Int {
        self.weights.get(fund_coords).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<Rational>, &Int)> {
        self.weights.iter()
    }

    /// Entries in ascending lexicographic weight order — the stable order
    /// used by every renderer.
    pub fn sorted_entries(&self) -> Vec<(Vec<Rational>, Int)> {
        let mut out: Vec<(Vec<Rational>, Int)> = self
            .weights
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Σ multiplicities — the virtual dimension.
    pub fn total_mass(&self) -> Int {
        self.weights.values().fold(Int::zero(), |acc, m| acc + m)
    }

    fn check_rank(&self, other: &FormalCharacter) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        self.add_scaled(other, &Int::one())
    }

    pub fn sub(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        self.add_scaled(other, &-Int::one())
    }

    /// self + c·other.
    pub fn add_scaled(&self, other: &FormalCharacter, c: &Int) -> Result<FormalCharacter> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, m) in &other.weights {
            out.bump(w.clone(), m * c);
        }
        Ok(out)
    }

    /// Support convolution: ch(V ⊗ W) = ch V · ch W.
    pub fn tensor(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        self.check_rank(other)?;
        let mut out = FormalCharacter::zero(self.rank);
        for (a, ma) in &self.weights {
            for (b, mb) in &other.weights {
                let sum: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.bump(sum, ma * mb);
            }
        }
        Ok(out)
    }

    /// Character of the dual module: weights negated.
    pub fn contragredient(&self) -> FormalCharacter {
        let mut out = FormalCharacter::zero(self.rank);
        for (w, m) in &self.weights {
            out.bump(w.iter().map(|x| -x).collect(), m.clone());
        }
        out
    }

    /// Adams operation ψ^k: every weight scaled by k, multiplicities kept.
    pub fn adams(&self, k: u64) -> FormalCharacter {
        let kq = rat_int(k as i64);
        let mut out = FormalCharacter::zero(self.rank);
        for (w, m) in &self.weights {
            out.bump(w.iter().map(|x| x * &kq).collect(), m.clone());
        }
        out
    }

    /// Exterior power ∧^q, via the Newton identity
    /// q·∧^q = Σ_{k=1}^{q} (−1)^{k+1} ψ^k · ∧^{q−k}.
    pub fn exterior_power(&self, q: usize) -> Result<FormalCharacter> {
        let mass = self.total_mass();
        if mass.is_negative() || Int::from(q as u64) > mass {
            return Err(Error::ExteriorDegree {
                degree: q,
                mass: mass.to_usize().unwrap_or(0),
            });
        }
        let mut ext = vec![FormalCharacter::trivial(self.rank)];
        for m in 1..=q {
            let mut acc = FormalCharacter::zero(self.rank);
            for k in 1..=m {
                let term = self.adams(k as u64).tensor(&ext[m - k])?;
                let sign = if k % 2 == 1 { Int::one() } else { -Int::one() };
                acc = acc.add_scaled(&term, &sign)?;
            }
            // Divide by m — exact for any character.
            let divisor = Int::from(m as u64);
            let mut step = FormalCharacter::zero(self.rank);
            for (w, v) in &acc.weights {
                let (quot, rem) = num::Integer::div_rem(v, &divisor);
                assert!(rem.is_zero(), "Newton identity division must be exact");
                step.bump(w.clone(), quot);
            }
            ext.push(step);
        }
        Ok(ext.pop().expect("at least the trivial power"))
    }

    /// Trace of the character at a torsion element: each weight μ
    /// contributes mult(μ)·e^{2πi ⟨μ,x⟩}.
    pub fn evaluate_at_torsion(&self, t: &TorsionElement) -> Result<Cyclotomic> {
        if t.rank() != self.rank {
            return Err(Error::TorsionRankMismatch {
                expected: self.rank,
                found: t.rank(),
            });
        }
        let mut acc = Cyclotomic::zero();
        for (w, m) in self.sorted_entries() {
            let pairing = t.pairing(&w);
            let frac = &pairing - pairing.floor();
            let n = frac
                .denom()
                .to_u64()
                .expect("torsion pairing denominator fits u64");
            let k = frac.numer().to_i64().expect("reduced numerator fits i64");
            let term = Cyclotomic::root_of_unity(k, n).scale(&Rational::from_integer(m));
            acc = &acc + &term;
        }
        Ok(acc.with_minimal_conductor())
    }

    /// First support weight (in stable order) moved off-support or onto a
    /// different multiplicity by one of the given fundamental-coordinate
    /// matrices; `None` when the character is invariant under all of them.
    pub(crate) fn invariance_violation(&self, matrices: &[Vec<Vec<i64>>]) -> Option<Vec<Rational>> {
        for (w, m) in self.sorted_entries() {
            for mat in matrices {
                let image: Vec<Rational> = (0..self.rank)
                    .map(|k| {
                        (0..self.rank)
                            .map(|j| rat_int(mat[k][j]) * &w[j])
                            .fold(Rational::zero(), |acc, t| acc + t)
                    })
                    .collect();
                if self.multiplicity(&image) != m {
                    return Some(w);
                }
            }
        }
        None
    }
}

impl std::fmt::Display for FormalCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, m)) in self.sorted_entries().iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "e({})", fmt_rat_slice(w))?;
            } else {
                write!(f, "{}*e({})", m, fmt_rat_slice(w))?;
            }
        }
        Ok(())
    }
}

type EngineKey = (String, Vec<Vec<i64>>, Vec<Rational>);
type EngineTable = HashMap<EngineKey, Arc<Vec<(Vec<Rational>, Int)>>>;

static ENGINE_MEMO: OnceLock<Mutex<EngineTable>> = OnceLock::new();

/// Weight multiset of the irreducible highest-weight module for a closed
/// subsystem: weight generation by root strings, multiplicities by
/// Freudenthal's recursion. λ must be dominant and integral for the
/// subsystem's base.
pub(crate) fn subsystem_character(
    rs: &RootSystem,
    sub: &Subsystem,
    lambda_fund: &[Rational],
) -> Result<FormalCharacter> {
    for beta in sub.simples() {
        let p = sub.coroot_pairing(rs, beta, lambda_fund);
        if !p.is_integer() {
            return Err(Error::NotIntegral(fmt_rat_slice(lambda_fund)));
        }
        if p.is_negative() {
            return Err(Error::NotDominant(fmt_rat_slice(lambda_fund)));
        }
    }

    let key: EngineKey = (
        rs.cartan_type().to_string(),
        sub.roots().iter().map(|r| r.sr_coords().to_vec()).collect(),
        lambda_fund.to_vec(),
    );
    let memo = ENGINE_MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = memo.lock().unwrap().get(&key) {
        return Ok(FormalCharacter::from_entries(
            rs.rank(),
            hit.iter().cloned(),
        ));
    }

    // Weight set, level by level; level = number of base roots subtracted,
    // well-defined since the base is linearly independent.
    let simple_funds: Vec<Vec<Rational>> = sub
        .simples()
        .iter()
        .map(|b| b.fund_coords().iter().map(|&x| rat_int(x)).collect())
        .collect();
    let mut known: std::collections::HashSet<Vec<Rational>> = std::collections::HashSet::new();
    known.insert(lambda_fund.to_vec());
    let mut levels: Vec<Vec<Vec<Rational>>> = vec![vec![lambda_fund.to_vec()]];
    loop {
        let mut next: Vec<Vec<Rational>> = Vec::new();
        for mu in &levels[levels.len() - 1] {
            for (i, beta) in sub.simples().iter().enumerate() {
                let m = sub.coroot_pairing(rs, beta, mu);
                assert!(m.is_integer(), "weights of an integral module stay integral");
                let m = m.numer().to_i64().expect("string length fits i64");
                // Upward extent within the already-built set.
                let mut p: i64 = 0;
                let mut up = mu.clone();
                loop {
                    for (c, s) in up.iter_mut().zip(&simple_funds[i]) {
                        *c += s;
                    }
                    if known.contains(&up) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p + m >= 1 {
                    let down: Vec<Rational> =
                        mu.iter().zip(&simple_funds[i]).map(|(c, s)| c - s).collect();
                    if known.insert(down.clone()) {
                        next.push(down);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        assert!(
            known.len() <= 2_000_000,
            "weight system exceeded the safety cap"
        );
        levels.push(next);
    }

    // Freudenthal: ((λ+ρ,λ+ρ) − (μ+ρ,μ+ρ))·m_μ =
    //   2 Σ_{α∈sub⁺} Σ_{k≥1} m_{μ+kα} (μ+kα, α), levels top-down.
    let rho_s = sub.rho_fund();
    let add_rho = |mu: &[Rational]| -> Vec<Rational> {
        mu.iter().zip(rho_s).map(|(a, b)| a + b).collect()
    };
    let top = add_rho(lambda_fund);
    let c0 = rs.form_fund_fund(&top, &top);
    let mut mult: HashMap<Vec<Rational>, Int> = HashMap::new();
    mult.insert(lambda_fund.to_vec(), Int::one());
    for level in levels.iter().skip(1) {
        for mu in level {
            let shifted = add_rho(mu);
            let denom = &c0 - rs.form_fund_fund(&shifted, &shifted);
            assert!(denom.is_positive(), "Freudenthal denominator is positive");
            let mut rhs = Rational::zero();
            for alpha in sub.roots() {
                let alpha_fund: Vec<Rational> =
                    alpha.fund_coords().iter().map(|&x| rat_int(x)).collect();
                let mut nu = mu.clone();
                loop {
                    for (c, s) in nu.iter_mut().zip(&alpha_fund) {
                        *c += s;
                    }
                    match mult.get(&nu) {
                        Some(m) => {
                            rhs += Rational::from_integer(m.clone())
                                * rs.form_sr_fund(alpha.sr_coords(), &nu);
                        }
                        None => break,
                    }
                }
            }
            let value = rhs * rat_int(2) / denom;
            assert!(
                value.is_integer() && value.is_positive(),
                "Freudenthal multiplicity is a positive integer"
            );
            mult.insert(mu.clone(), value.to_integer());
        }
    }

    let mut stored: Vec<(Vec<Rational>, Int)> =
        mult.into_iter().collect();
    stored.sort_by(|a, b| a.0.cmp(&b.0));
    let arc = Arc::new(stored);
    memo.lock().unwrap().insert(key, arc.clone());
    Ok(FormalCharacter::from_entries(rs.rank(), arc.iter().cloned()))
}

/// Character of the irreducible module with dominant integral highest
/// weight λ.
pub fn irreducible_character(lambda: &Weight, rs: &RootSystem) -> Result<FormalCharacter> {
    let f = rs.to_basis(lambda, Basis::FundamentalWeight)?;
    subsystem_character(rs, &Subsystem::full(rs), f.coords())
}

/// Character of the irreducible module of the compact subsystem with
/// highest weight λ (K-dominant, integral for compact coroots).
pub fn k_irreducible_character(lambda: &Weight, pair: &SymmetricPair) -> Result<FormalCharacter> {
    let rs = pair.root_system();
    let f = rs.to_basis(lambda, Basis::FundamentalWeight)?;
    subsystem_character(rs, pair.compact_subsystem(), f.coords())
}

/// dim V(λ) = Π_{α>0}(λ+ρ, α) / Π_{α>0}(ρ, α), exact.
pub fn weyl_dimension(lambda: &Weight, rs: &RootSystem) -> Result<Int> {
    let f = rs.to_basis(lambda, Basis::FundamentalWeight)?;
    if f.coords().iter().any(|c| c.is_negative()) {
        return Err(Error::NotDominant(fmt_rat_slice(f.coords())));
    }
    if !f.is_integral() {
        return Err(Error::NotIntegral(fmt_rat_slice(f.coords())));
    }
    let shifted: Vec<Rational> = f.coords().iter().map(|c| c + Rational::one()).collect();
    let value = weyl_dimension_shifted(
        &Weight::new(shifted, Basis::FundamentalWeight),
        rs,
    )?;
    assert!(value.is_integer(), "Weyl dimension is an integer");
    Ok(value.to_integer())
}

/// Π_{α>0}(λ, α) / Π_{α>0}(ρ, α) for a parameter λ that is already
/// ρ-shifted; rational coordinates are allowed and no dominance is imposed,
/// so the result can be any rational (zero iff λ is singular).
pub fn weyl_dimension_shifted(lambda: &Weight, rs: &RootSystem) -> Result<Rational> {
    let f = rs.to_basis(lambda, Basis::FundamentalWeight)?;
    let mut num = Rational::one();
    let mut den = Rational::one();
    let rho = vec![Rational::one(); rs.rank()];
    for alpha in rs.positive_roots() {
        num *= rs.form_sr_fund(alpha.sr_coords(), f.coords());
        den *= rs.form_sr_fund(alpha.sr_coords(), &rho);
    }
    Ok(num / den)
}

/// A virtual decomposition into irreducible characters of the compact
/// subsystem: K-dominant highest weights with signed multiplicities, in
/// extraction order (strictly descending (⟨·,ρ_c⟩, lex) key).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualKDecomposition {
    entries: Vec<(Weight, Int)>,
}

impl VirtualKDecomposition {
    pub fn entries(&self) -> &[(Weight, Int)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Signed multiplicity of the K-type with the given highest weight.
    pub fn multiplicity_of(&self, fund_coords: &[Rational]) -> Int {
        self.entries
            .iter()
            .find(|(w, _)| w.coords() == fund_coords)
            .map(|(_, m)| m.clone())
            .unwrap_or_default()
    }

    /// Signed multiplicity of the trivial K-type.
    pub fn trivial_multiplicity(&self) -> Int {
        self.entries
            .iter()
            .find(|(w, _)| w.coords().iter().all(|c| c.is_zero()))
            .map(|(_, m)| m.clone())
            .unwrap_or_default()
    }

    /// Σ n_i · ch(K-type λ_i) — must reproduce the branched character.
    pub fn re_expand(&self, pair: &SymmetricPair) -> Result<FormalCharacter> {
        let mut acc = FormalCharacter::zero(pair.root_system().rank());
        for (w, n) in &self.entries {
            let ch = k_irreducible_character(w, pair)?;
            acc = acc.add_scaled(&ch, n)?;
        }
        Ok(acc)
    }
}

/// Decompose a W(K)-invariant virtual character into irreducible characters
/// of the compact subsystem by iterated extraction of the maximal support
/// weight. The maximum is taken for the total order (⟨μ,ρ_c⟩, lex), which
/// refines dominance order for the compact positive system, so each
/// extracted weight is a highest weight of the remainder.
pub fn branch_to_compact(
    c: &FormalCharacter,
    pair: &SymmetricPair,
) -> Result<VirtualKDecomposition> {
    let rs = pair.root_system();
    let sub = pair.compact_subsystem();
    if c.rank() != rs.rank() {
        return Err(Error::RankMismatch {
            expected: rs.rank(),
            found: c.rank(),
        });
    }
    if let Some(w) = c.invariance_violation(sub.simple_reflection_matrices()) {
        return Err(Error::NotWkInvariant(fmt_rat_slice(&w)));
    }
    let mut rest = c.clone();
    let mut entries: Vec<(Weight, Int)> = Vec::new();
    while !rest.is_zero() {
        let top = rest
            .entries()
            .map(|(w, _)| w)
            .max_by_key(|w| (rs.form_fund_fund(w, sub.rho_fund()), (*w).clone()))
            .expect("nonempty support")
            .clone();
        if !sub.is_dominant(rs, &top) {
            return Err(Error::NotKDominant(fmt_rat_slice(&top)));
        }
        let n = rest.multiplicity(&top);
        let ch = subsystem_character(rs, sub, &top)?;
        rest = rest.add_scaled(&ch, &-&n)?;
        entries.push((Weight::new(top, Basis::FundamentalWeight), n));
    }
    Ok(VirtualKDecomposition { entries })
}

/// Signed multiplicity of the trivial K-type in a W(K)-invariant virtual
/// character.
pub fn trivial_multiplicity(c: &FormalCharacter, pair: &SymmetricPair) -> Result<Int> {
    Ok(branch_to_compact(c, pair)?.trivial_multiplicity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_system, CartanType};
    use proptest::prelude::*;

    fn rs(name: &str) -> RootSystem {
        build_root_system(&CartanType::parse(name).unwrap())
    }

    fn w(coords: &[i64]) -> Weight {
        Weight::from_ints(coords, Basis::FundamentalWeight)
    }

    fn wvec(coords: &[i64]) -> Vec<Rational> {
        coords.iter().map(|&c| rat_int(c)).collect()
    }

    #[test]
    fn a1_string_of_weights() {
        let a1 = rs("A1");
        for m in 0..6i64 {
            let ch = irreducible_character(&w(&[m]), &a1).unwrap();
            assert_eq!(ch.support_size(), m as usize + 1);
            assert_eq!(ch.total_mass(), Int::from(m + 1));
            for k in 0..=m {
                assert_eq!(ch.multiplicity(&wvec(&[m - 2 * k])), Int::one());
            }
        }
    }

    #[test]
    fn a2_adjoint_character() {
        let a2 = rs("A2");
        let ch = irreducible_character(&w(&[1, 1]), &a2).unwrap();
        assert_eq!(ch.total_mass(), Int::from(8));
        assert_eq!(ch.support_size(), 7);
        assert_eq!(ch.multiplicity(&wvec(&[0, 0])), Int::from(2));
        // The six roots all appear once.
        for r in a2.positive_roots() {
            let f: Vec<Rational> = r.fund_coords().iter().map(|&x| rat_int(x)).collect();
            let neg: Vec<Rational> = f.iter().map(|x| -x).collect();
            assert_eq!(ch.multiplicity(&f), Int::one());
            assert_eq!(ch.multiplicity(&neg), Int::one());
        }
    }

    #[test]
    fn dimension_formula_values() {
        let cases = [
            ("A2", vec![1, 0], 3),
            ("A2", vec![1, 1], 8),
            ("A2", vec![2, 2], 27),
            ("B2", vec![1, 0], 5),
            ("B2", vec![0, 1], 4),
            ("B2", vec![1, 1], 16),
            ("G2", vec![1, 0], 7),
            ("G2", vec![0, 1], 14),
            ("A1xA1", vec![2, 3], 12),
            ("F4", vec![0, 0, 0, 1], 26),
        ];
        for (name, coords, dim) in cases {
            let sys = rs(name);
            assert_eq!(
                weyl_dimension(&w(&coords), &sys).unwrap(),
                Int::from(dim),
                "{name} {coords:?}"
            );
        }
    }

    #[test]
    fn dimension_matches_character_mass() {
        for (name, coords) in [
            ("A2", vec![2, 1]),
            ("B2", vec![1, 2]),
            ("G2", vec![1, 1]),
            ("A1xB2", vec![1, 0, 1]),
        ] {
            let sys = rs(name);
            let ch = irreducible_character(&w(&coords), &sys).unwrap();
            assert_eq!(
                ch.total_mass(),
                weyl_dimension(&w(&coords), &sys).unwrap(),
                "{name} {coords:?}"
            );
        }
    }

    #[test]
    fn rejects_bad_highest_weights() {
        let a2 = rs("A2");
        let e = irreducible_character(&w(&[-1, 0]), &a2).unwrap_err();
        assert_eq!(e.code(), "E_NOT_DOMINANT");
        let half = Weight::new(
            vec![crate::rat(1, 2), Rational::zero()],
            Basis::FundamentalWeight,
        );
        let e = irreducible_character(&half, &a2).unwrap_err();
        assert_eq!(e.code(), "E_NOT_INTEGRAL");
        let e = weyl_dimension(&w(&[0, -2]), &a2).unwrap_err();
        assert_eq!(e.code(), "E_NOT_DOMINANT");
    }

    #[test]
    fn shifted_dimension_at_rho_is_one() {
        for name in ["A2", "B2", "G2"] {
            let sys = rs(name);
            assert_eq!(
                weyl_dimension_shifted(&sys.rho(), &sys).unwrap(),
                Rational::one(),
                "{name}"
            );
        }
        // Singular parameter → 0.
        let a2 = rs("A2");
        assert_eq!(
            weyl_dimension_shifted(&w(&[0, 5]), &a2).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn clebsch_gordan_a1() {
        let a1 = rs("A1");
        let c1 = irreducible_character(&w(&[1]), &a1).unwrap();
        let c2 = irreducible_character(&w(&[2]), &a1).unwrap();
        let product = c1.tensor(&c1).unwrap();
        let expected = c2.add(&FormalCharacter::trivial(1)).unwrap();
        assert_eq!(product, expected);
        // (m) ⊗ (n) has mass (m+1)(n+1).
        let big = c2.tensor(&irreducible_character(&w(&[3]), &a1).unwrap()).unwrap();
        assert_eq!(big.total_mass(), Int::from(12));
    }

    #[test]
    fn exterior_powers_of_the_standard_representation() {
        let a2 = rs("A2");
        let std3 = irreducible_character(&w(&[1, 0]), &a2).unwrap();
        // ∧² of the 3-dimensional module is its dual; ∧³ is trivial.
        assert_eq!(
            std3.exterior_power(2).unwrap(),
            irreducible_character(&w(&[0, 1]), &a2).unwrap()
        );
        assert_eq!(std3.exterior_power(3).unwrap(), FormalCharacter::trivial(2));
        assert_eq!(std3.exterior_power(0).unwrap(), FormalCharacter::trivial(2));
        let e = std3.exterior_power(4).unwrap_err();
        assert_eq!(e.code(), "E_EXT_DEGREE");
    }

    #[test]
    fn exterior_power_matches_subset_expansion() {
        // For a multiplicity-free character, ∧^q is the q-th elementary
        // symmetric polynomial in the support weights.
        let b2 = rs("B2");
        let spinor = irreducible_character(&w(&[0, 1]), &b2).unwrap();
        let support: Vec<Vec<Rational>> =
            spinor.sorted_entries().into_iter().map(|(w, _)| w).collect();
        for q in 0..=support.len() {
            let mut expected = FormalCharacter::zero(2);
            let mut stack = vec![(0usize, vec![Rational::zero(); 2], 0usize)];
            while let Some((from, acc, chosen)) = stack.pop() {
                if chosen == q {
                    expected = expected
                        .add(&FormalCharacter::single(2, acc, Int::one()))
                        .unwrap();
                    continue;
                }
                for i in from..support.len() {
                    let next: Vec<Rational> =
                        acc.iter().zip(&support[i]).map(|(a, b)| a + b).collect();
                    stack.push((i + 1, next, chosen + 1));
                }
            }
            assert_eq!(spinor.exterior_power(q).unwrap(), expected, "q = {q}");
        }
    }

    #[test]
    fn contragredient_flips_weights() {
        let a2 = rs("A2");
        let std3 = irreducible_character(&w(&[1, 0]), &a2).unwrap();
        assert_eq!(
            std3.contragredient(),
            irreducible_character(&w(&[0, 1]), &a2).unwrap()
        );
        // Self-dual module.
        let adj = irreducible_character(&w(&[1, 1]), &a2).unwrap();
        assert_eq!(adj.contragredient(), adj);
    }

    #[test]
    fn torsion_evaluation_of_a1_characters() {
        let a1 = rs("A1");
        let ch = irreducible_character(&w(&[1]), &a1).unwrap();
        // x = 1/3: trace = ζ3 + ζ3² = −1.
        let t = TorsionElement::new(vec![crate::rat(1, 3)]);
        let v = ch.evaluate_at_torsion(&t).unwrap();
        assert_eq!(v.as_rational(), Some(rat_int(-1)));
        // Identity element: trace = dimension.
        let t0 = TorsionElement::new(vec![Rational::zero()]);
        let big = irreducible_character(&w(&[4]), &a1).unwrap();
        assert_eq!(
            big.evaluate_at_torsion(&t0).unwrap().as_rational(),
            Some(rat_int(5))
        );
        // Rank check.
        let e = ch
            .evaluate_at_torsion(&TorsionElement::new(vec![
                Rational::zero(),
                Rational::zero(),
            ]))
            .unwrap_err();
        assert_eq!(e.code(), "E_TORSION_RANK");
    }

    #[test]
    fn torsion_evaluation_respects_weyl_symmetry() {
        // Characters are W-invariant, so the trace at x and at w·x agree.
        let b2 = rs("B2");
        let ch = irreducible_character(&w(&[1, 1]), &b2).unwrap();
        let x = TorsionElement::new(vec![crate::rat(1, 5), crate::rat(2, 5)]);
        let base = ch.evaluate_at_torsion(&x).unwrap();
        for el in b2.weyl_group(100).unwrap() {
            let moved = TorsionElement::new(el.apply_coroot(x.coords(), &b2));
            assert_eq!(ch.evaluate_at_torsion(&moved).unwrap(), base);
        }
    }

    #[test]
    fn branching_the_su21_adjoint() {
        let pair = crate::presets::preset_pair("su21").unwrap();
        let rs = pair.root_system();
        let adj = irreducible_character(&w(&[1, 1]), rs).unwrap();
        let dec = branch_to_compact(&adj, &pair).unwrap();
        // k ⊕ p⁺ ⊕ p⁻ = (su(2) adjoint ⊕ center) ⊕ 2-dim ⊕ 2-dim.
        assert_eq!(dec.len(), 4);
        let mut dims: Vec<Int> = dec
            .entries()
            .iter()
            .map(|(hw, n)| {
                assert_eq!(*n, Int::one());
                let d = pair
                    .compact_subsystem()
                    .weyl_dimension(rs, hw.coords());
                assert!(d.is_integer());
                d.to_integer()
            })
            .collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2, 2, 3].into_iter().map(Int::from).collect::<Vec<_>>());
        // Round trip.
        assert_eq!(dec.re_expand(&pair).unwrap(), adj);
    }

    #[test]
    fn branching_round_trips_on_so41() {
        let pair = crate::presets::preset_pair("so41").unwrap();
        let rs = pair.root_system();
        for coords in [[1, 0], [0, 1], [1, 1]] {
            let ch = irreducible_character(&w(&coords), rs).unwrap();
            let dec = branch_to_compact(&ch, &pair).unwrap();
            assert_eq!(dec.re_expand(&pair).unwrap(), ch, "{coords:?}");
            // Total ambient dimension is preserved.
            let total: Rational = dec
                .entries()
                .iter()
                .map(|(hw, n)| {
                    pair.compact_subsystem().weyl_dimension(rs, hw.coords())
                        * Rational::from_integer(n.clone())
                })
                .fold(Rational::zero(), |a, b| a + b);
            assert_eq!(
                total,
                Rational::from_integer(ch.total_mass()),
                "{coords:?}"
            );
        }
    }

    #[test]
    fn branching_on_a_torus_lists_single_weights() {
        // K of su11 is a torus: every weight is its own K-type.
        let pair = crate::presets::preset_pair("su11").unwrap();
        let ch = irreducible_character(&w(&[3]), pair.root_system()).unwrap();
        let dec = branch_to_compact(&ch, &pair).unwrap();
        assert_eq!(dec.len(), 4);
        assert!(dec.entries().iter().all(|(_, n)| n.is_one()));
        assert_eq!(dec.re_expand(&pair).unwrap(), ch);
    }

    #[test]
    fn branching_rejects_asymmetric_characters() {
        let pair = crate::presets::preset_pair("su21").unwrap();
        let lone = FormalCharacter::single(2, wvec(&[1, 0]), Int::one());
        let e = branch_to_compact(&lone, &pair).unwrap_err();
        assert_eq!(e.code(), "E_NOT_WK_INVARIANT");
    }

    #[test]
    fn trivial_multiplicity_counts_invariants() {
        // V ⊗ V* contains the invariants once for an irreducible V —
        // restricted to K that becomes dim-many... the ambient-invariant
        // count appears through the full pair with Φ_c = Φ⁺ of A1: not a
        // preset, so check on su21 with an explicit known branching:
        // adjoint ⊗ adjoint of su(2,1) contains the trivial K-type with
        // multiplicity = number of K-invariants = 4 (one per K-type of the
        // self-dual adjoint... computed via the decomposition itself).
        let pair = crate::presets::preset_pair("su21").unwrap();
        let rs = pair.root_system();
        let adj = irreducible_character(&w(&[1, 1]), rs).unwrap();
        let square = adj.tensor(&adj).unwrap();
        let m = trivial_multiplicity(&square, &pair).unwrap();
        // Independent count: Σ over K-types of the adjoint of (dim of the
        // K-type)… no — the trivial K-type multiplicity in V⊗V* equals the
        // number of K-types of V counted with multiplicity squared summed?
        // Use the direct definition instead: branch V⊗V and read the zero
        // entry of the decomposition.
        let dec = branch_to_compact(&square, &pair).unwrap();
        assert_eq!(m, dec.trivial_multiplicity());
        // For the self-dual adjoint, K-invariants of V⊗V = Σ_i n_i² over
        // the K-decomposition of V (Schur). Here all n_i = 1 over 4 types.
        assert_eq!(m, Int::from(4));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn freudenthal_mass_matches_dimension(a in 0i64..4, b in 0i64..4) {
            let b2 = rs("B2");
            let lam = w(&[a, b]);
            let ch = irreducible_character(&lam, &b2).unwrap();
            prop_assert_eq!(ch.total_mass(), weyl_dimension(&lam, &b2).unwrap());
        }

        #[test]
        fn characters_are_weyl_invariant(a in 0i64..3, b in 0i64..3) {
            let g2 = rs("G2");
            let ch = irreducible_character(&w(&[a, b]), &g2).unwrap();
            let mats: Vec<Vec<Vec<i64>>> = (0..2)
                .map(|i| g2.simple_reflection(i).matrix().to_vec())
                .collect();
            prop_assert!(ch.invariance_violation(&mats).is_none());
        }

        #[test]
        fn tensor_mass_is_multiplicative(a in 0i64..3, b in 0i64..3, c in 0i64..3, d in 0i64..3) {
            let a2 = rs("A2");
            let x = irreducible_character(&w(&[a, b]), &a2).unwrap();
            let y = irreducible_character(&w(&[c, d]), &a2).unwrap();
            let t = x.tensor(&y).unwrap();
            prop_assert_eq!(t.total_mass(), x.total_mass() * y.total_mass());
        }
    }
}
