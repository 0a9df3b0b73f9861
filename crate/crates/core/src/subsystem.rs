//! Closed subsystems of an ambient root system, carrying their induced
//! positive part: the compact part Φ_c of a symmetric pair, the fixed-root
//! system Φ_g of a torsion element, or the full system itself.
//!
//! The positive part is Φ_sub ∩ Φ⁺ for the ambient positivity; its
//! indecomposable members (not a sum of two members) form the base of the
//! subsystem. All coordinates stay ambient: weights in fundamental-weight
//! coordinates, roots in both systems.

use std::collections::{BTreeSet, HashSet};

use num::{Signed, Zero};

use crate::rootdata::{Root, RootSystem};
use crate::{rat_int, Error, Nat, Rational, Result};

/// A closed subsystem, viewed through its positive part.
///
/// Construction does not verify closedness (α, β ∈ sub and α+β ∈ Φ imply
/// α+β ∈ sub); callers pass root sets that are closed by construction.
/// Non-closed inputs are tolerated structurally — downstream consistency
/// checks are the ones that notice.
#[derive(Debug, Clone)]
pub struct Subsystem {
    roots: Vec<Root>,
    simples: Vec<Root>,
    rho_fund: Vec<Rational>,
    simple_reflections: Vec<Vec<Vec<i64>>>,
}

/// Integer matrix of the reflection s_β on fundamental-weight coordinates.
pub(crate) fn reflection_matrix_fund(rs: &RootSystem, root: &Root) -> Vec<Vec<i64>> {
    let rank = rs.rank();
    let norm = rs.root_norm2(root);
    // ⟨μ, β^∨⟩ = Σ_j cv_j · f_j(μ); the cv_j are integers because β^∨ lies
    // in the coroot lattice.
    let cv: Vec<i64> = (0..rank)
        .map(|j| {
            let v = rat_int(2 * root.sr_coords()[j]) * &rs.half_norms()[j] / &norm;
            assert!(v.is_integer(), "coroot coefficient must be integral");
            i64::try_from(v.to_integer()).expect("coroot coefficient fits i64")
        })
        .collect();
    (0..rank)
        .map(|k| {
            (0..rank)
                .map(|j| i64::from(k == j) - cv[j] * root.fund_coords()[k])
                .collect()
        })
        .collect()
}

impl Subsystem {
    /// Subsystem with the given positive part (ambient positive roots).
    pub fn new(rs: &RootSystem, roots: Vec<Root>) -> Subsystem {
        let dedup: BTreeSet<Vec<i64>> = roots.iter().map(|r| r.sr_coords().to_vec()).collect();
        let mut roots: Vec<Root> = dedup
            .iter()
            .map(|sr| {
                rs.positive_root_by_sr(sr)
                    .expect("subsystem roots must be ambient positive roots")
                    .clone()
            })
            .collect();
        roots.sort_by_key(|r| (r.height(), r.sr_coords().to_vec()));

        // Base = members that are not a sum of two members.
        let set: HashSet<&[i64]> = roots.iter().map(|r| r.sr_coords()).collect();
        let simples: Vec<Root> = roots
            .iter()
            .filter(|r| {
                !roots.iter().any(|a| {
                    let rest: Vec<i64> = r
                        .sr_coords()
                        .iter()
                        .zip(a.sr_coords())
                        .map(|(x, y)| x - y)
                        .collect();
                    a.sr_coords() != r.sr_coords() && set.contains(rest.as_slice())
                })
            })
            .cloned()
            .collect();

        let mut rho_fund = vec![Rational::zero(); rs.rank()];
        for r in &roots {
            for (i, &c) in r.fund_coords().iter().enumerate() {
                rho_fund[i] += rat_int(c);
            }
        }
        for c in rho_fund.iter_mut() {
            *c /= rat_int(2);
        }

        let simple_reflections = simples
            .iter()
            .map(|b| reflection_matrix_fund(rs, b))
            .collect();

        Subsystem {
            roots,
            simples,
            rho_fund,
            simple_reflections,
        }
    }

    /// The full ambient system as a subsystem of itself.
    pub fn full(rs: &RootSystem) -> Subsystem {
        Subsystem::new(rs, rs.positive_roots().to_vec())
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn simples(&self) -> &[Root] {
        &self.simples
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Rank of the subsystem (size of its base).
    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    /// Half-sum of the positive part, ambient fundamental coordinates.
    pub fn rho_fund(&self) -> &[Rational] {
        &self.rho_fund
    }

    pub(crate) fn simple_reflection_matrices(&self) -> &[Vec<Vec<i64>>] {
        &self.simple_reflections
    }

    /// ⟨μ, β^∨⟩ for a root β of the subsystem, μ in fundamental coordinates.
    pub fn coroot_pairing(&self, rs: &RootSystem, root: &Root, mu_fund: &[Rational]) -> Rational {
        rs.form_sr_fund(root.sr_coords(), mu_fund) * rat_int(2) / rs.root_norm2(root)
    }

    /// All pairings with the base nonnegative.
    pub fn is_dominant(&self, rs: &RootSystem, mu_fund: &[Rational]) -> bool {
        self.simples
            .iter()
            .all(|b| !rs.form_sr_fund(b.sr_coords(), mu_fund).is_negative())
    }

    /// All pairings with the base coroots integral.
    pub fn is_integral(&self, rs: &RootSystem, mu_fund: &[Rational]) -> bool {
        self.simples
            .iter()
            .all(|b| self.coroot_pairing(rs, b, mu_fund).is_integer())
    }

    /// Π_{α∈sub⁺}(λ+ρ_sub, α) / Π_{α∈sub⁺}(ρ_sub, α).
    pub fn weyl_dimension(&self, rs: &RootSystem, lambda_fund: &[Rational]) -> Rational {
        let shifted: Vec<Rational> = lambda_fund
            .iter()
            .zip(&self.rho_fund)
            .map(|(a, b)| a + b)
            .collect();
        self.weyl_dimension_shifted(rs, &shifted)
    }

    /// Π_{α∈sub⁺}(λ, α) / Π_{α∈sub⁺}(ρ_sub, α) — for parameters that are
    /// already ρ-shifted.
    pub fn weyl_dimension_shifted(&self, rs: &RootSystem, lambda_fund: &[Rational]) -> Rational {
        let mut num = Rational::from_integer(1.into());
        let mut den = Rational::from_integer(1.into());
        for alpha in &self.roots {
            num *= rs.form_sr_fund(alpha.sr_coords(), lambda_fund);
            den *= rs.form_sr_fund(alpha.sr_coords(), &self.rho_fund);
        }
        num / den
    }

    /// Cartan matrix of the base, c[i][j] = ⟨β_j, β_i^∨⟩.
    pub fn cartan_matrix(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        self.simples
            .iter()
            .map(|bi| {
                self.simples
                    .iter()
                    .map(|bj| {
                        let fund: Vec<Rational> =
                            bj.fund_coords().iter().map(|&x| rat_int(x)).collect();
                        let v = self.coroot_pairing(rs, bi, &fund);
                        assert!(v.is_integer(), "Cartan pairing of roots is integral");
                        i64::try_from(v.to_integer()).expect("small Cartan entry")
                    })
                    .collect()
            })
            .collect()
    }

    /// Exact order of the subsystem's Weyl group, by classifying the Dynkin
    /// diagram of the base — no enumeration, so it works at any size.
    pub fn weyl_order(&self, rs: &RootSystem) -> Nat {
        diagram_weyl_order(&self.cartan_matrix(rs))
    }

    /// Whether the base pairs like a genuine simple system (all
    /// off-diagonal Cartan entries ≤ 0). False signals a set of roots that
    /// is not closed, for which the character machinery is undefined.
    pub(crate) fn base_is_valid(&self, rs: &RootSystem) -> bool {
        let c = self.cartan_matrix(rs);
        (0..c.len()).all(|i| (0..c.len()).all(|j| i == j || c[i][j] <= 0))
    }

    /// Enumerate the subsystem Weyl group; for each element return its
    /// action on simple-coroot coordinates (torsion parameters x), as an
    /// integer matrix N with x ↦ N·x.
    pub fn enumerate_weyl_coroot_actions(
        &self,
        rs: &RootSystem,
        cap: u64,
    ) -> Result<Vec<Vec<Vec<i64>>>> {
        Ok(self
            .enumerate_weyl_actions(rs, cap)?
            .into_iter()
            .map(|(_, n)| n)
            .collect())
    }

    /// Enumerate the subsystem Weyl group as (fundamental-coordinate action
    /// M, coroot-coordinate action N = M^{−T}) pairs.
    pub(crate) fn enumerate_weyl_actions(
        &self,
        rs: &RootSystem,
        cap: u64,
    ) -> Result<Vec<(Vec<Vec<i64>>, Vec<Vec<i64>>)>> {
        let order = self.weyl_order(rs);
        if order > Nat::from(cap) {
            return Err(Error::WeylCapExceeded { order, cap });
        }
        let rank = rs.rank();
        let id: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        // Track (fund action M, coroot action N = M^{-T}); generators are
        // involutions, so their coroot action is the plain transpose.
        let gens: Vec<(Vec<Vec<i64>>, Vec<Vec<i64>>)> = self
            .simple_reflections
            .iter()
            .map(|g| (g.clone(), transpose(g)))
            .collect();
        let mut out = vec![(id.clone(), id)];
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        seen.insert(out[0].0.concat());
        let mut frontier = 0usize;
        while frontier < out.len() {
            let (m, n) = out[frontier].clone();
            frontier += 1;
            for (gm, gn) in &gens {
                let next_m = int_matmul(&m, gm);
                if seen.insert(next_m.concat()) {
                    out.push((next_m, int_matmul(&n, gn)));
                }
            }
        }
        Ok(out)
    }
}

fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

fn int_matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Weyl group order of a finite-type Cartan matrix, by identifying each
/// connected component of its Dynkin diagram.
fn diagram_weyl_order(cartan: &[Vec<i64>]) -> Nat {
    let n = cartan.len();
    let factorial = |k: usize| (1..=k as u64).map(Nat::from).product::<Nat>();
    let mut seen = vec![false; n];
    let mut order = Nat::from(1u64);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // Collect the component.
        let mut comp = vec![start];
        seen[start] = true;
        let mut idx = 0;
        while idx < comp.len() {
            let u = comp[idx];
            idx += 1;
            for v in 0..n {
                if !seen[v] && cartan[u][v] != 0 {
                    seen[v] = true;
                    comp.push(v);
                }
            }
        }
        let r = comp.len();
        let bond = |a: usize, b: usize| cartan[comp[a]][comp[b]] * cartan[comp[b]][comp[a]];
        let degree = |a: usize| (0..r).filter(|&b| b != a && bond(a, b) != 0).count();
        let mut max_bond = 0;
        let mut double_edge = None;
        for a in 0..r {
            for b in a + 1..r {
                let m = bond(a, b);
                max_bond = max_bond.max(m);
                if m == 2 {
                    double_edge = Some((a, b));
                }
            }
        }
        let comp_order: Nat = if r == 1 {
            Nat::from(2u64)
        } else if max_bond == 3 {
            assert_eq!(r, 2, "triple bond only occurs in G2");
            Nat::from(12u64)
        } else if max_bond == 2 {
            let (a, b) = double_edge.expect("double edge present");
            if r == 2 || degree(a) == 1 || degree(b) == 1 {
                // B_r / C_r: same Weyl group order either way.
                Nat::from(2u64).pow(r as u32) * factorial(r)
            } else {
                assert_eq!(r, 4, "internal double edge only occurs in F4");
                Nat::from(1_152u64)
            }
        } else {
            let trivalent: Vec<usize> = (0..r).filter(|&a| degree(a) == 3).collect();
            match trivalent.as_slice() {
                [] => factorial(r + 1), // A_r chain
                [t] => {
                    let mut branches: Vec<usize> = (0..r)
                        .filter(|&u| u != *t && bond(*t, u) != 0)
                        .map(|first| {
                            // Walk away from the trivalent node.
                            let mut len = 1;
                            let mut prev = *t;
                            let mut cur = first;
                            loop {
                                let next = (0..r)
                                    .find(|&v| v != prev && v != cur && bond(cur, v) != 0);
                                match next {
                                    Some(v) => {
                                        prev = cur;
                                        cur = v;
                                        len += 1;
                                    }
                                    None => break,
                                }
                            }
                            len
                        })
                        .collect();
                    branches.sort_unstable();
                    match branches.as_slice() {
                        [1, 1, _] => Nat::from(2u64).pow(r as u32 - 1) * factorial(r),
                        [1, 2, 2] => Nat::from(51_840u64),
                        [1, 2, 3] => Nat::from(2_903_040u64),
                        [1, 2, 4] => Nat::from(696_729_600u64),
                        other => panic!("not a finite-type diagram: branches {other:?}"),
                    }
                }
                _ => panic!("not a finite-type diagram: multiple branch nodes"),
            }
        };
        order *= comp_order;
    }
    order
}
