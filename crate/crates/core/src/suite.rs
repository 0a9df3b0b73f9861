//! Self-checking identity battery for a configured pair: spin product
//! identity, the character vanishing law (hypothesis included), orbital
//! consistency, and conjugation invariance. Failures are report content,
//! never errors — the battery must also hold up on deliberately broken
//! pairs.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::charlib::FormalCharacter;
use crate::diracindex::TauSpec;
use crate::orbital::{euler_character_vanishing, orbital_consistency, orbital_f_sigma,
    orbital_g_tau};
use crate::rootdata::{Basis, Weight};
use crate::sympair::{torsion_elements, SymmetricPair};
use crate::{fmt_int_slice, Int, Rational};

/// One identity battery: what was tested, over how many cases, and the
/// first counterexample when it failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteEntry {
    pub name: &'static str,
    pub passed: bool,
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl SuiteEntry {
    fn pass(name: &'static str, checked: u64) -> SuiteEntry {
        SuiteEntry {
            name,
            passed: true,
            checked,
            counterexample: None,
        }
    }

    fn fail(name: &'static str, checked: u64, witness: String) -> SuiteEntry {
        SuiteEntry {
            name,
            passed: false,
            checked,
            counterexample: Some(witness),
        }
    }
}

/// Battery results in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// Run every battery over all torsion elements of order ≤ `max_order`.
pub fn identity_suite(pair: &SymmetricPair, max_order: u64) -> SuiteReport {
    SuiteReport {
        entries: vec![
            spin_product_battery(pair),
            vanishing_law_battery(pair, max_order),
            orbital_consistency_battery(pair, max_order),
            conjugation_invariance_battery(pair, max_order),
        ],
    }
}

/// ch S⁺ − ch S⁻ = Π_{α ∈ Φ_n⁺} (1 − e^{−α}), expanded formally.
fn spin_product_battery(pair: &SymmetricPair) -> SuiteEntry {
    const NAME: &str = "spin-product-identity";
    let rank = pair.root_system().rank();
    let mut product = FormalCharacter::trivial(rank);
    for root in pair.noncompact_positive() {
        let neg: Vec<Rational> = root
            .fund_coords()
            .iter()
            .map(|&c| crate::rat_int(-c))
            .collect();
        let factor = FormalCharacter::from_entries(
            rank,
            [
                (vec![Rational::zero(); rank], Int::one()),
                (neg, -Int::one()),
            ],
        );
        product = match product.tensor(&factor) {
            Ok(p) => p,
            Err(e) => return SuiteEntry::fail(NAME, 0, e.to_string()),
        };
    }
    let diff = match pair.euler_virtual_character().sub(&product) {
        Ok(d) => d,
        Err(e) => return SuiteEntry::fail(NAME, 0, e.to_string()),
    };
    if diff.is_zero() {
        SuiteEntry::pass(NAME, 1)
    } else {
        let (w, _) = diff.sorted_entries().remove(0);
        SuiteEntry::fail(
            NAME,
            1,
            format!("spin difference deviates at weight ({})", crate::fmt_rat_slice(&w)),
        )
    }
}

/// The vanishing law with its hypothesis: at each torsion element the
/// claimed compact/noncompact grading must be additive on the element's
/// integral roots (the structure the law rests on), and then the spin
/// difference vanishes at t iff t fixes a noncompact root.
fn vanishing_law_battery(pair: &SymmetricPair, max_order: u64) -> SuiteEntry {
    const NAME: &str = "euler-vanishing-law";
    let rs = pair.root_system();
    let rank = rs.rank();
    let mut grading: BTreeMap<Vec<i64>, u8> = BTreeMap::new();
    for r in pair.compact_subsystem().roots() {
        grading.insert(r.sr_coords().to_vec(), 0);
    }
    for r in pair.noncompact_positive() {
        grading.insert(r.sr_coords().to_vec(), 1);
    }
    let grading_of = |v: &[i64]| -> u8 {
        let neg: Vec<i64> = v.iter().map(|&c| -c).collect();
        *grading
            .get(v)
            .or_else(|| grading.get(&neg))
            .expect("every root has a grading")
    };
    let mut checked = 0;
    for t in torsion_elements(rank, max_order) {
        checked += 1;
        // Signed integral roots of t, with their claimed parity.
        let fixed: Vec<(Vec<i64>, u8)> = rs
            .positive_roots()
            .iter()
            .filter(|r| t.root_pairing(r).is_integer())
            .flat_map(|r| {
                let v = r.sr_coords().to_vec();
                let neg: Vec<i64> = v.iter().map(|&c| -c).collect();
                let g = grading_of(&v);
                [(v, g), (neg, g)]
            })
            .collect();
        for (a, ga) in &fixed {
            for (b, gb) in &fixed {
                let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if rs.is_root_sr(&sum) && grading_of(&sum) != ga ^ gb {
                    return SuiteEntry::fail(
                        NAME,
                        checked,
                        format!(
                            "t = {t}: grading is not additive on ({}) + ({})",
                            fmt_int_slice(a),
                            fmt_int_slice(b)
                        ),
                    );
                }
            }
        }
        let vanishes = match euler_character_vanishing(&t, pair) {
            Ok(v) => v,
            Err(e) => return SuiteEntry::fail(NAME, checked, e.to_string()),
        };
        let has_fixed = match pair.fixed_noncompact_roots(&t) {
            Ok(f) => !f.is_empty(),
            Err(e) => return SuiteEntry::fail(NAME, checked, e.to_string()),
        };
        if vanishes != has_fixed {
            return SuiteEntry::fail(
                NAME,
                checked,
                format!("t = {t}: vanishing {vanishes}, fixed noncompact root {has_fixed}"),
            );
        }
    }
    SuiteEntry::pass(NAME, checked)
}

/// Both orbital routes agree at every regular element, for the trivial
/// module and (when the claimed compact base is a genuine simple system)
/// the first fundamental one.
fn orbital_consistency_battery(pair: &SymmetricPair, max_order: u64) -> SuiteEntry {
    const NAME: &str = "orbital-consistency";
    let rs = pair.root_system();
    let mut taus = vec![TauSpec::trivial(pair)];
    if pair.compact_subsystem().base_is_valid(rs) {
        if let Some(f) = TauSpec::first_fundamental(pair) {
            taus.push(f);
        }
    }
    let mut checked = 0;
    for t in torsion_elements(rs.rank(), max_order) {
        match pair.is_regular_element(&t) {
            Ok(true) => {}
            Ok(false) => continue,
            Err(e) => return SuiteEntry::fail(NAME, checked, e.to_string()),
        }
        for tau in &taus {
            checked += 1;
            match orbital_consistency(&t, tau, pair) {
                Ok(true) => {}
                Ok(false) => {
                    return SuiteEntry::fail(
                        NAME,
                        checked,
                        format!("t = {t}, τ = {}: routes disagree", tau.label()),
                    )
                }
                Err(e) => return SuiteEntry::fail(NAME, checked, e.to_string()),
            }
        }
    }
    SuiteEntry::pass(NAME, checked)
}

/// Orbital data is constant along compact Weyl orbits of the element:
/// the Euler-route value and the vanishing flag for the whole group, the
/// Dirac-route value for the subgroup preserving Φ_n⁺ (the polarization
/// is pinned to a chamber, so only its stabilizer can fix the value).
fn conjugation_invariance_battery(pair: &SymmetricPair, max_order: u64) -> SuiteEntry {
    const NAME: &str = "conjugation-invariance";
    let rs = pair.root_system();
    let rank = rs.rank();
    let actions = match pair
        .compact_subsystem()
        .enumerate_weyl_actions(rs, 1_000_000)
    {
        Ok(a) => a,
        Err(e) => return SuiteEntry::fail(NAME, 0, e.to_string()),
    };
    let preserving: Vec<bool> = actions
        .iter()
        .map(|(m, _)| preserves_noncompact_positives(pair, m))
        .collect();
    let sigma = {
        let mut coords = vec![Rational::zero(); rank];
        coords[0] = Rational::one();
        Weight::new(coords, Basis::FundamentalWeight)
    };
    let trivial = TauSpec::trivial(pair);
    let one = Rational::one();
    let mut checked = 0;
    for t in torsion_elements(rank, max_order) {
        let base_sigma = match orbital_f_sigma(&t, &sigma, pair, &one, 1) {
            Ok(r) => r.value,
            Err(e) => return SuiteEntry::fail(NAME, checked, e.to_string()),
        };
        let base_vanish = match euler_character_vanishing(&t, pair) {
            Ok(v) => v,
            Err(e) => return SuiteEntry::fail(NAME, checked, e.to_string()),
        };
        let regular = matches!(pair.is_regular_element(&t), Ok(true));
        let base_gtau = if regular {
            match orbital_g_tau(&t, &trivial, pair) {
                Ok(r) => Some(r.value),
                Err(e) => return SuiteEntry::fail(NAME, checked, e.to_string()),
            }
        } else {
            None
        };
        for ((_, n), keeps_polarization) in actions.iter().zip(&preserving) {
            checked += 1;
            let moved = t.transformed(n);
            match orbital_f_sigma(&moved, &sigma, pair, &one, 1) {
                Ok(r) if r.value == base_sigma => {}
                Ok(_) => {
                    return SuiteEntry::fail(
                        NAME,
                        checked,
                        format!("t = {t}: Euler-route value moved along the orbit"),
                    )
                }
                Err(e) => return SuiteEntry::fail(NAME, checked, e.to_string()),
            }
            match euler_character_vanishing(&moved, pair) {
                Ok(v) if v == base_vanish => {}
                Ok(_) => {
                    return SuiteEntry::fail(
                        NAME,
                        checked,
                        format!("t = {t}: vanishing flag moved along the orbit"),
                    )
                }
                Err(e) => return SuiteEntry::fail(NAME, checked, e.to_string()),
            }
            if let (Some(base), true) = (&base_gtau, *keeps_polarization) {
                match orbital_g_tau(&moved, &trivial, pair) {
                    Ok(r) if &r.value == base => {}
                    Ok(_) => {
                        return SuiteEntry::fail(
                            NAME,
                            checked,
                            format!("t = {t}: Dirac-route value moved along the orbit"),
                        )
                    }
                    Err(e) => return SuiteEntry::fail(NAME, checked, e.to_string()),
                }
            }
        }
    }
    SuiteEntry::pass(NAME, checked)
}

fn preserves_noncompact_positives(pair: &SymmetricPair, m: &[Vec<i64>]) -> bool {
    let positives: std::collections::BTreeSet<Vec<i64>> = pair
        .noncompact_positive()
        .iter()
        .map(|r| r.fund_coords().to_vec())
        .collect();
    pair.noncompact_positive().iter().all(|r| {
        let image: Vec<i64> = (0..m.len())
            .map(|i| (0..m.len()).map(|j| m[i][j] * r.fund_coords()[j]).sum())
            .collect();
        positives.contains(&image)
    })
}
