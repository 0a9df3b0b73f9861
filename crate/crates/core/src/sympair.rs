//! Equal-rank symmetric pairs: a root system together with a Z₂-grading of
//! its roots into compact and noncompact parts, plus the torsion elements
//! of the shared maximal torus that elliptic terms are evaluated at.

use std::collections::{BTreeSet, HashMap};

use num::{Integer, One, ToPrimitive, Zero};

use crate::charlib::FormalCharacter;
use crate::rootdata::{Basis, Root, RootSystem, Weight};
use crate::subsystem::Subsystem;
use crate::{fmt_int_slice, rat_int, Error, Int, Nat, Rational, Result};

/// A root system with a validated compact/noncompact grading.
///
/// Compact roots are grade 0, noncompact roots grade 1; the grading is
/// closed: whenever α, β and α+β are all roots, grade(α+β) = grade(α) XOR
/// grade(β).
#[derive(Debug, Clone)]
pub struct SymmetricPair {
    rs: RootSystem,
    compact: Subsystem,
    noncompact: Vec<Root>,
    rho_c_fund: Vec<Rational>,
    rho_n_fund: Vec<Rational>,
}

/// Check the Z₂-grading and assemble the pair.
///
/// `compact_sr` lists the positive compact roots in simple-root
/// coordinates; every other positive root is noncompact.
pub fn validate_pair(rs: RootSystem, compact_sr: &[Vec<i64>]) -> Result<SymmetricPair> {
    let compact_set: BTreeSet<Vec<i64>> = compact_sr.iter().cloned().collect();
    for sr in &compact_set {
        if rs.positive_root_by_sr(sr).is_none() {
            return Err(Error::CompactNotPositive(fmt_int_slice(sr)));
        }
    }

    // Grade over both signs; grade(−α) = grade(α).
    let mut grade: HashMap<Vec<i64>, bool> = HashMap::new();
    let mut signed_roots: Vec<Vec<i64>> = Vec::new();
    for r in rs.positive_roots() {
        let noncompact = !compact_set.contains(r.sr_coords());
        grade.insert(r.sr_coords().to_vec(), noncompact);
        grade.insert(r.sr_coords().iter().map(|x| -x).collect(), noncompact);
        signed_roots.push(r.sr_coords().to_vec());
        signed_roots.push(r.sr_coords().iter().map(|x| -x).collect());
    }
    signed_roots.sort();
    let name = |g: bool| if g { "noncompact" } else { "compact" };
    for a in &signed_roots {
        for b in &signed_roots {
            let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if let Some(&gsum) = grade.get(&sum) {
                let (ga, gb) = (grade[a], grade[b]);
                if (ga ^ gb) != gsum {
                    return Err(Error::GradingViolation {
                        a: fmt_int_slice(a),
                        ga: name(ga),
                        b: fmt_int_slice(b),
                        gb: name(gb),
                        sum: fmt_int_slice(&sum),
                        gsum: name(gsum),
                    });
                }
            }
        }
    }

    Ok(assemble(rs, compact_set))
}

/// Assemble without the grading check — for negative-control tests that
/// need a deliberately broken pair. Consistency checks downstream are the
/// ones expected to notice; computations that rely on closedness of the
/// compact part may reject or panic.
pub fn assemble_unchecked(rs: RootSystem, compact_sr: &[Vec<i64>]) -> SymmetricPair {
    assemble(rs, compact_sr.iter().cloned().collect())
}

fn assemble(rs: RootSystem, compact_set: BTreeSet<Vec<i64>>) -> SymmetricPair {
    let compact_roots: Vec<Root> = rs
        .positive_roots()
        .iter()
        .filter(|r| compact_set.contains(r.sr_coords()))
        .cloned()
        .collect();
    let noncompact: Vec<Root> = rs
        .positive_roots()
        .iter()
        .filter(|r| !compact_set.contains(r.sr_coords()))
        .cloned()
        .collect();
    let compact = Subsystem::new(&rs, compact_roots);
    let rho_c_fund = compact.rho_fund().to_vec();
    let rho_n_fund: Vec<Rational> = (0..rs.rank())
        .map(|i| Rational::one() - &rho_c_fund[i])
        .collect();
    SymmetricPair {
        rs,
        compact,
        noncompact,
        rho_c_fund,
        rho_n_fund,
    }
}

impl SymmetricPair {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// The compact part Φ_c⁺ as a closed subsystem.
    pub fn compact_subsystem(&self) -> &Subsystem {
        &self.compact
    }

    pub fn compact_positive(&self) -> &[Root] {
        self.compact.roots()
    }

    pub fn noncompact_positive(&self) -> &[Root] {
        &self.noncompact
    }

    pub fn rho(&self) -> Weight {
        self.rs.rho()
    }

    /// Half-sum of the positive compact roots.
    pub fn rho_c(&self) -> Weight {
        Weight::new(self.rho_c_fund.clone(), Basis::FundamentalWeight)
    }

    /// Half-sum of the positive noncompact roots: ρ − ρ_c.
    pub fn rho_n(&self) -> Weight {
        Weight::new(self.rho_n_fund.clone(), Basis::FundamentalWeight)
    }

    /// Real dimension of the dual symmetric space: 2·|Φ_n⁺|.
    pub fn dim_x(&self) -> usize {
        2 * self.noncompact.len()
    }

    /// (−1)^{dim X / 2} = (−1)^{|Φ_n⁺|}.
    pub fn ep_sign(&self) -> i64 {
        if self.noncompact.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// |W(Φ)| — ambient Weyl group order, the diagnostic companion of
    /// [`SymmetricPair::chi_dual`].
    pub fn weyl_order_ambient(&self) -> Nat {
        self.rs.weyl_order()
    }

    /// Euler characteristic of the compact dual: |W(Φ)| / |W(Φ_c)|.
    pub fn chi_dual(&self) -> Nat {
        let ambient = self.rs.weyl_order();
        let sub = self.compact.weyl_order(&self.rs);
        let (q, r) = ambient.div_rem(&sub);
        assert!(r.is_zero(), "compact Weyl order divides ambient order");
        q
    }

    /// Characters of the even/odd half-spin modules: (∧^{even} p₋,
    /// ∧^{odd} p₋) for p₋ = Σ_{α ∈ Φ_n⁺} e^{−α}.
    pub fn spin_characters(&self) -> (FormalCharacter, FormalCharacter) {
        let rank = self.rs.rank();
        let p_minus = FormalCharacter::from_entries(
            rank,
            self.noncompact.iter().map(|r| {
                let coords: Vec<Rational> =
                    r.fund_coords().iter().map(|&x| rat_int(-x)).collect();
                (coords, Int::one())
            }),
        );
        let mut even = FormalCharacter::zero(rank);
        let mut odd = FormalCharacter::zero(rank);
        for q in 0..=self.noncompact.len() {
            let piece = p_minus
                .exterior_power(q)
                .expect("degree within the mass of p₋");
            let target = if q % 2 == 0 { &mut even } else { &mut odd };
            *target = target.add(&piece).expect("ranks agree");
        }
        (even, odd)
    }

    /// ch S⁺ − ch S⁻, the virtual character of the spin difference.
    pub fn euler_virtual_character(&self) -> FormalCharacter {
        let (even, odd) = self.spin_characters();
        even.sub(&odd).expect("ranks agree")
    }

    fn check_torsion_rank(&self, t: &TorsionElement) -> Result<()> {
        if t.rank() != self.rs.rank() {
            return Err(Error::TorsionRankMismatch {
                expected: self.rs.rank(),
                found: t.rank(),
            });
        }
        Ok(())
    }

    /// True iff no root pairs integrally with x — equivalently, the
    /// centralizer of the element is the torus itself.
    pub fn is_regular_element(&self, t: &TorsionElement) -> Result<bool> {
        self.check_torsion_rank(t)?;
        Ok(self.first_integral_root(t).is_none())
    }

    /// First positive root with ⟨α, x⟩ ∈ ℤ, in (height, lex) order.
    pub(crate) fn first_integral_root(&self, t: &TorsionElement) -> Option<&Root> {
        self.rs
            .positive_roots()
            .iter()
            .find(|r| t.root_pairing(r).is_integer())
    }

    /// Positive noncompact roots with ⟨α, x⟩ ∈ ℤ (their negatives pair
    /// integrally too; only one representative per ± pair is listed).
    pub fn fixed_noncompact_roots(&self, t: &TorsionElement) -> Result<Vec<Root>> {
        self.check_torsion_rank(t)?;
        Ok(self
            .noncompact
            .iter()
            .filter(|r| t.root_pairing(r).is_integer())
            .cloned()
            .collect())
    }

    /// First ambient fundamental weight that is dominant and integral for
    /// the compact subsystem — the default nontrivial test module.
    pub fn first_fundamental_k_weight(&self) -> Option<Weight> {
        let rank = self.rs.rank();
        (0..rank)
            .map(|i| {
                let mut coords = vec![Rational::zero(); rank];
                coords[i] = Rational::one();
                coords
            })
            .find(|coords| {
                self.compact.is_dominant(&self.rs, coords)
                    && self.compact.is_integral(&self.rs, coords)
            })
            .map(|coords| Weight::new(coords, Basis::FundamentalWeight))
    }
}

/// A torsion element of the maximal torus, written in simple-coroot
/// coordinates and reduced mod 1: x_i ∈ [0, 1). Its order is the least n
/// with n·x integral — the least common denominator of the coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorsionElement {
    x: Vec<Rational>,
}

impl TorsionElement {
    /// Reduce each coordinate mod 1.
    pub fn new(coords: Vec<Rational>) -> TorsionElement {
        let x = coords.into_iter().map(|c| &c - c.floor()).collect();
        TorsionElement { x }
    }

    pub fn identity(rank: usize) -> TorsionElement {
        TorsionElement {
            x: vec![Rational::zero(); rank],
        }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.x
    }

    pub fn rank(&self) -> usize {
        self.x.len()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().all(|c| c.is_zero())
    }

    /// Least n ≥ 1 with n·x ≡ 0.
    pub fn order(&self) -> u64 {
        self.x
            .iter()
            .map(|c| c.denom().to_u64().expect("torsion denominator fits u64"))
            .fold(1u64, |acc, d| acc.lcm(&d))
    }

    /// ⟨μ, x⟩ for μ in fundamental-weight coordinates.
    pub fn pairing(&self, fund_coords: &[Rational]) -> Rational {
        assert_eq!(fund_coords.len(), self.x.len(), "rank mismatch");
        fund_coords
            .iter()
            .zip(&self.x)
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// ⟨α, x⟩ for a root.
    pub fn root_pairing(&self, root: &Root) -> Rational {
        let fund: Vec<Rational> = root.fund_coords().iter().map(|&c| rat_int(c)).collect();
        self.pairing(&fund)
    }

    /// Image under an integer matrix acting on simple-coroot coordinates,
    /// reduced mod 1.
    pub fn transformed(&self, matrix: &[Vec<i64>]) -> TorsionElement {
        let rank = self.x.len();
        assert_eq!(matrix.len(), rank, "matrix size must match rank");
        TorsionElement::new(
            (0..rank)
                .map(|i| {
                    (0..rank)
                        .map(|j| rat_int(matrix[i][j]) * &self.x[j])
                        .fold(Rational::zero(), |acc, t| acc + t)
                })
                .collect(),
        )
    }
}

impl std::fmt::Display for TorsionElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", crate::fmt_rat_slice(&self.x))
    }
}

/// Every torsion element of order ≤ `max_order`, deduplicated and sorted
/// by (order, coordinates) — a deterministic sweep for the identity
/// batteries.
pub fn torsion_elements(rank: usize, max_order: u64) -> Vec<TorsionElement> {
    let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for n in 1..=max_order.max(1) {
        let mut counters = vec![0u64; rank];
        loop {
            seen.insert(
                counters
                    .iter()
                    .map(|&a| crate::rat(a as i64, n as i64))
                    .collect(),
            );
            // Odometer step over {0,…,n−1}^rank.
            let mut idx = 0;
            loop {
                if idx == rank {
                    break;
                }
                counters[idx] += 1;
                if counters[idx] < n {
                    break;
                }
                counters[idx] = 0;
                idx += 1;
            }
            if idx == rank {
                break;
            }
        }
    }
    let mut out: Vec<TorsionElement> = seen
        .into_iter()
        .map(|x| TorsionElement { x })
        .collect();
    out.sort_by_key(|t| (t.order(), t.coords().to_vec()));
    out
}
