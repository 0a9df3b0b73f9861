//! Index theory for the homogeneous Dirac and Euler operators of an
//! equal-rank pair: infinitesimal characters, the von Neumann G-index,
//! Casimir/Parthasarathy eigenvalues, spectral Euler numbers, and the
//! assembled arithmetic index.

use num::{One, Signed, Zero};

use crate::charlib::{
    irreducible_character, trivial_multiplicity, weyl_dimension, weyl_dimension_shifted,
    FormalCharacter,
};
use crate::rootdata::{Basis, RootSystem, Weight};
use crate::sympair::SymmetricPair;
use crate::{fmt_rat_slice, rat_int, Error, Int, Nat, Rational, Result};

/// An irreducible module of the compact subgroup, given by its highest
/// weight: dominant for Φ_c⁺ and integral on compact coroots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauSpec {
    label: String,
    weight: Weight,
}

impl TauSpec {
    pub fn new(
        label: impl Into<String>,
        weight: &Weight,
        pair: &SymmetricPair,
    ) -> Result<TauSpec> {
        let rs = pair.root_system();
        let f = rs.to_basis(weight, Basis::FundamentalWeight)?;
        let sub = pair.compact_subsystem();
        if !sub.is_dominant(rs, f.coords()) {
            return Err(Error::NotKDominant(fmt_rat_slice(f.coords())));
        }
        if !sub.is_integral(rs, f.coords()) {
            return Err(Error::NotIntegral(fmt_rat_slice(f.coords())));
        }
        Ok(TauSpec {
            label: label.into(),
            weight: f,
        })
    }

    /// The trivial module.
    pub fn trivial(pair: &SymmetricPair) -> TauSpec {
        let rank = pair.root_system().rank();
        TauSpec {
            label: "trivial".to_string(),
            weight: Weight::zero(rank, Basis::FundamentalWeight),
        }
    }

    /// The first ambient fundamental weight that is admissible for the
    /// compact subsystem, when one exists.
    pub fn first_fundamental(pair: &SymmetricPair) -> Option<TauSpec> {
        pair.first_fundamental_k_weight().map(|w| TauSpec {
            label: "fundamental".to_string(),
            weight: w,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Highest weight Λ_τ, fundamental coordinates.
    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    /// ch τ as a character of the compact subsystem.
    pub fn character(&self, pair: &SymmetricPair) -> Result<FormalCharacter> {
        crate::charlib::k_irreducible_character(&self.weight, pair)
    }
}

/// The G-index report for one K-type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexReport {
    /// Infinitesimal character λ = Λ_τ + ρ_c.
    pub lambda: Weight,
    /// Whether λ is regular; both indices vanish when it is not.
    pub regular: bool,
    /// The dominant Weyl conjugate wλ.
    pub dominant: Weight,
    /// det(w) for the conjugating element.
    pub sign: i64,
    /// dim W_λ for the module with highest weight wλ − ρ (0 when singular).
    pub dim_w: Int,
    /// Euler characteristic of the compact dual.
    pub chi: Nat,
    /// dim W_λ / χ(X^d), or 0 when singular.
    pub unsigned: Rational,
    /// det(w) · unsigned.
    pub signed: Rational,
}

/// λ = Λ_τ + ρ_c, the Harish-Chandra parameter of the K-type.
pub fn infinitesimal_character(tau: &TauSpec, pair: &SymmetricPair) -> Weight {
    let coords: Vec<Rational> = tau
        .weight()
        .coords()
        .iter()
        .zip(pair.rho_c().coords())
        .map(|(a, b)| a + b)
        .collect();
    Weight::new(coords, Basis::FundamentalWeight)
}

/// The G-index of the twisted Dirac operator: 0 for singular λ; otherwise
/// dim W_{wλ−ρ} / χ(X^d) with chamber sign det(w). The module W must be
/// genuine — wλ integral — or the computation is refused.
pub fn g_index(tau: &TauSpec, pair: &SymmetricPair) -> Result<IndexReport> {
    let rs = pair.root_system();
    let lambda = infinitesimal_character(tau, pair);
    let chi = pair.chi_dual();
    let (dominant, _, sign) = rs.dominant_conjugate(&lambda)?;
    if !rs.is_regular(&lambda)? {
        return Ok(IndexReport {
            lambda,
            regular: false,
            dominant,
            sign,
            dim_w: Int::zero(),
            chi,
            unsigned: Rational::zero(),
            signed: Rational::zero(),
        });
    }
    if !dominant.is_integral() {
        return Err(Error::NoGenuineModule(fmt_rat_slice(dominant.coords())));
    }
    let mu: Vec<Rational> = dominant
        .coords()
        .iter()
        .map(|c| c - Rational::one())
        .collect();
    let dim_w = weyl_dimension(&Weight::new(mu, Basis::FundamentalWeight), rs)?;
    let unsigned =
        Rational::from_integer(dim_w.clone()) / Rational::from_integer(Int::from(chi.clone()));
    let signed = &unsigned * rat_int(sign);
    Ok(IndexReport {
        lambda,
        regular: true,
        dominant,
        sign,
        dim_w,
        chi,
        unsigned,
        signed,
    })
}

/// Signed index of a bare (possibly non-genuine) ρ-shifted parameter:
/// 0 when singular, else det(w)·Π(wλ,α)/Π(ρ,α)/χ(X^d). This is the term
/// the Euler-operator decomposition sums over; unlike [`g_index`] it does
/// not require wλ to be integral.
fn signed_parameter_index(lambda_fund: &[Rational], pair: &SymmetricPair) -> Result<Rational> {
    let rs = pair.root_system();
    let lambda = Weight::new(lambda_fund.to_vec(), Basis::FundamentalWeight);
    if !rs.is_regular(&lambda)? {
        return Ok(Rational::zero());
    }
    let (dominant, _, sign) = rs.dominant_conjugate(&lambda)?;
    let dim = weyl_dimension_shifted(&dominant, rs)?;
    let chi = Rational::from_integer(Int::from(pair.chi_dual()));
    Ok(dim * rat_int(sign) / chi)
}

/// Casimir eigenvalue on the module with dominant integral highest weight:
/// (λ, λ + 2ρ).
pub fn casimir_eigenvalue(lambda_hw: &Weight, rs: &RootSystem) -> Result<Rational> {
    let f = rs.to_basis(lambda_hw, Basis::FundamentalWeight)?;
    if f.coords().iter().any(|c| c.is_negative()) {
        return Err(Error::NotDominant(fmt_rat_slice(f.coords())));
    }
    if !f.is_integral() {
        return Err(Error::NotIntegral(fmt_rat_slice(f.coords())));
    }
    let shifted: Vec<Rational> = f
        .coords()
        .iter()
        .map(|c| c + rat_int(2))
        .collect();
    Ok(rs.form_fund_fund(f.coords(), &shifted))
}

/// Parthasarathy's square: −(π, π+2ρ) + (Λ_τ, Λ_τ+2ρ_c) + (ρ_c,ρ_c) − (ρ,ρ).
pub fn dirac_square_eigenvalue(
    pi_param: &Weight,
    tau: &TauSpec,
    pair: &SymmetricPair,
) -> Result<Rational> {
    let rs = pair.root_system();
    let pi_casimir = casimir_eigenvalue(pi_param, rs)?;
    let lam = tau.weight().coords();
    let rho_c = pair.rho_c();
    let shifted: Vec<Rational> = lam
        .iter()
        .zip(rho_c.coords())
        .map(|(a, b)| a + b + b)
        .collect();
    let tau_casimir = rs.form_fund_fund(lam, &shifted);
    let rho_c_sq = rs.form_fund_fund(rho_c.coords(), rho_c.coords());
    let rho = rs.rho();
    let rho_sq = rs.form_fund_fund(rho.coords(), rho.coords());
    Ok(-pi_casimir + tau_casimir + rho_c_sq - rho_sq)
}

/// ch p for p = p₊ ⊕ p₋: weight multiset Φ_n ∪ (−Φ_n).
fn tangent_character(pair: &SymmetricPair) -> FormalCharacter {
    let rank = pair.root_system().rank();
    FormalCharacter::from_entries(
        rank,
        pair.noncompact_positive().iter().flat_map(|r| {
            let plus: Vec<Rational> = r.fund_coords().iter().map(|&c| rat_int(c)).collect();
            let minus: Vec<Rational> = r.fund_coords().iter().map(|&c| rat_int(-c)).collect();
            [(plus, Int::one()), (minus, Int::one())]
        }),
    )
}

/// Σ_q (−1)^q · (multiplicity of the trivial K-type in V_π ⊗ ∧^q p ⊗ V_τ̌).
pub fn euler_number_spectral(
    pi_param: &Weight,
    tau: &TauSpec,
    pair: &SymmetricPair,
) -> Result<Int> {
    let rs = pair.root_system();
    let ch_pi = irreducible_character(pi_param, rs)?;
    let ch_tau_dual = tau.character(pair)?.contragredient();
    let ch_p = tangent_character(pair);
    let mut acc = Int::zero();
    for q in 0..=pair.dim_x() {
        let wedge = ch_p.exterior_power(q)?;
        let big = ch_pi.tensor(&wedge)?.tensor(&ch_tau_dual)?;
        let m = trivial_multiplicity(&big, pair)?;
        acc += if q % 2 == 0 { m } else { -m };
    }
    Ok(acc)
}

/// Index of the Euler operator twisted by τ: decompose
/// τ ⊗ (S⁺ − S⁻) into K-types and sum their signed parameter indices.
pub fn euler_index(tau: &TauSpec, pair: &SymmetricPair) -> Result<Rational> {
    let ch = tau.character(pair)?;
    let evc = pair.euler_virtual_character();
    let dec = crate::charlib::branch_to_compact(&ch.tensor(&evc)?, pair)?;
    let rho_c = pair.rho_c();
    let mut acc = Rational::zero();
    for (hw, n) in dec.entries() {
        let lambda: Vec<Rational> = hw
            .coords()
            .iter()
            .zip(rho_c.coords())
            .map(|(a, b)| a + b)
            .collect();
        acc += Rational::from_integer(n.clone()) * signed_parameter_index(&lambda, pair)?;
    }
    Ok(acc)
}

/// Which homogeneous operator an assembled index refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Dirac,
    Euler,
}

/// The assembled index on the quotient: (signed G-index) · χ(X_Γ) + R.
/// χ(X_Γ) and the error term R are caller-supplied data.
pub fn arithmetic_index(
    kind: OperatorKind,
    tau: &TauSpec,
    pair: &SymmetricPair,
    chi_gamma: &Int,
    error_term: &Rational,
) -> Result<Rational> {
    let main = match kind {
        OperatorKind::Dirac => g_index(tau, pair)?.signed,
        OperatorKind::Euler => euler_index(tau, pair)?,
    };
    Ok(main * Rational::from_integer(chi_gamma.clone()) + error_term)
}
