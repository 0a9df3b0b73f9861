//! Elliptic orbital integrals at torsion elements of the torus: exact
//! cyclotomic closed forms for the Dirac-route and Euler-route test
//! functions, plus the vanishing criterion for the spin difference.

use num::{One, Signed, Zero};

use crate::charlib::irreducible_character;
use crate::cyclo::Cyclotomic;
use crate::diracindex::TauSpec;
use crate::rootdata::{Basis, Weight};
use crate::subsystem::Subsystem;
use crate::sympair::{SymmetricPair, TorsionElement};
use crate::{fmt_rat_slice, Error, Rational, Result};

/// Normalization constants entering singular orbital values: the
/// centralizer volume constant and the index of its identity component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitalConstants {
    pub c_g: Rational,
    pub component_index: u64,
}

/// One orbital evaluation: exact value, regularity of the element, and the
/// constants that actually entered (None when the value is closed-form
/// independent of any normalization choice).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitalResult {
    pub value: Cyclotomic,
    pub regular: bool,
    pub constants_used: Option<OrbitalConstants>,
}

/// Π_{α ∈ Φ_n⁺} (1 − ζ^{−⟨α,x⟩}), the determinant of 1 − t^{-1} on p₊.
fn spinor_denominator(t: &TorsionElement, pair: &SymmetricPair) -> Cyclotomic {
    use num::ToPrimitive;
    let mut acc = Cyclotomic::one();
    for root in pair.noncompact_positive() {
        let p = -t.root_pairing(root);
        let n = p.denom().to_u64().expect("pairing denominator fits u64");
        let k = p.numer().to_i64().expect("pairing numerator fits i64");
        let factor = Cyclotomic::one() - Cyclotomic::root_of_unity(k, n);
        acc = acc * factor;
    }
    acc.with_minimal_conductor()
}

fn require_regular(t: &TorsionElement, pair: &SymmetricPair) -> Result<()> {
    if !pair.is_regular_element(t)? {
        let root = pair
            .first_integral_root(t)
            .expect("non-regular element has an integral root")
            .clone();
        return Err(Error::NotRegular {
            order: t.order(),
            root: root.to_string(),
        });
    }
    Ok(())
}

/// Orbital integral of the index test function attached to τ, at a regular
/// torsion element: tr τ(t) / det(1 − t^{-1} | p₊). Regular elements only;
/// the centralizer-torus data (order, first integral root) rides on the
/// error otherwise.
pub fn orbital_g_tau(
    t: &TorsionElement,
    tau: &TauSpec,
    pair: &SymmetricPair,
) -> Result<OrbitalResult> {
    require_regular(t, pair)?;
    let numerator = tau.character(pair)?.evaluate_at_torsion(t)?;
    let denominator = spinor_denominator(t, pair);
    let value = (numerator * denominator.inverse()?).with_minimal_conductor();
    Ok(OrbitalResult {
        value,
        regular: true,
        constants_used: None,
    })
}

/// Orbital integral of the Euler test function attached to an ambient
/// module σ, at any torsion element: tr σ(t) · |W(Φ_t)| · Π_{α∈Φ_t⁺}(ρ_t,α)
/// divided by c_g · [component index], where Φ_t is the subsystem of roots
/// pairing integrally with t. At regular t this collapses to tr σ(t) and
/// no constant enters.
pub fn orbital_f_sigma(
    t: &TorsionElement,
    sigma: &Weight,
    pair: &SymmetricPair,
    c_g: &Rational,
    component_index: u64,
) -> Result<OrbitalResult> {
    let rs = pair.root_system();
    if c_g.is_zero() || component_index == 0 {
        return Err(Error::CycloDivisionByZero { conductor: 1 });
    }
    let sf = rs.to_basis(sigma, Basis::FundamentalWeight)?;
    if sf.coords().iter().any(|c| c.is_negative()) {
        return Err(Error::NotDominant(fmt_rat_slice(sf.coords())));
    }
    if !sf.is_integral() {
        return Err(Error::NotIntegral(fmt_rat_slice(sf.coords())));
    }
    let trace = irreducible_character(&sf, rs)?.evaluate_at_torsion(t)?;
    let fixed: Vec<_> = rs
        .positive_roots()
        .iter()
        .filter(|r| t.root_pairing(r).is_integer())
        .cloned()
        .collect();
    let centralizer = Subsystem::new(rs, fixed);
    let regular = centralizer.is_empty();
    let order = centralizer.weyl_order(rs);
    let rho_t = centralizer.rho_fund();
    let mut scalar = Rational::from_integer(crate::Int::from(order));
    for root in centralizer.roots() {
        let fund: Vec<Rational> = root
            .fund_coords()
            .iter()
            .map(|&c| crate::rat_int(c))
            .collect();
        scalar *= rs.form_fund_fund(rho_t, &fund);
    }
    scalar /= c_g * crate::rat_int(component_index as i64);
    let value = trace.scale(&scalar).with_minimal_conductor();
    let constants_used = if regular && c_g.is_one() && component_index == 1 {
        None
    } else {
        Some(OrbitalConstants {
            c_g: c_g.clone(),
            component_index,
        })
    };
    Ok(OrbitalResult {
        value,
        regular,
        constants_used,
    })
}

/// The two orbital routes agree at a regular element: evaluating
/// τ ⊗ (S⁺ − S⁻) and dividing by the spinor denominator reproduces tr τ(t).
/// Branch-free, so it runs on every equal-rank pair.
pub fn orbital_consistency(
    t: &TorsionElement,
    tau: &TauSpec,
    pair: &SymmetricPair,
) -> Result<bool> {
    require_regular(t, pair)?;
    let ch_tau = tau.character(pair)?;
    let euler_route = ch_tau
        .tensor(&pair.euler_virtual_character())?
        .evaluate_at_torsion(t)?;
    let euler_route =
        (euler_route * spinor_denominator(t, pair).inverse()?).with_minimal_conductor();
    let dirac_route = ch_tau.evaluate_at_torsion(t)?.with_minimal_conductor();
    Ok(euler_route == dirac_route)
}

/// Whether the spin-difference character vanishes at t. Equivalent to the
/// existence of a noncompact root pairing integrally with t.
pub fn euler_character_vanishing(t: &TorsionElement, pair: &SymmetricPair) -> Result<bool> {
    Ok(pair
        .euler_virtual_character()
        .evaluate_at_torsion(t)?
        .is_zero())
}
