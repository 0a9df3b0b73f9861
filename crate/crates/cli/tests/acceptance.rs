//! Acceptance gate: one test per shipped guarantee, each printed as its own
//! pass/fail line. Everything is exact; the only tolerances are wall-clock
//! budgets on the enumerative criteria.

use std::process::Command;
use std::time::{Duration, Instant};

use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gindex_core::charlib::{irreducible_character, weyl_dimension, FormalCharacter};
use gindex_core::cyclo::Cyclotomic;
use gindex_core::diracindex::{arithmetic_index, euler_index, g_index, OperatorKind, TauSpec};
use gindex_core::orbital::orbital_consistency;
use gindex_core::presets::preset_pair;
use gindex_core::rootdata::{build_root_system, Basis, CartanType, RootSystem, Weight};
use gindex_core::sympair::{torsion_elements, SymmetricPair};
use gindex_core::{Int, Nat, Rational};

const PRESETS: [&str; 4] = ["su11", "hilbert2", "su21", "so41"];

fn pair(name: &str) -> SymmetricPair {
    preset_pair(name).expect("preset exists")
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(Int::from(p), Int::from(q))
}

fn rsys(ty: &str) -> RootSystem {
    build_root_system(&CartanType::parse(ty).expect("valid type"))
}

/// Dominant integral fundamental-coordinate vectors with coordinate sum ≤ cap.
fn dominant_weights(rank: usize, cap: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    loop {
        if cur.iter().sum::<i64>() <= cap {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == rank {
                return out;
            }
            cur[i] += 1;
            if cur[i] <= cap {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn criterion_01_weyl_group_orders() {
    let clock = Instant::now();
    let named = [("A2", 6u64), ("B2", 8), ("G2", 12), ("A3", 24), ("F4", 1152)];
    for (ty, want) in named {
        let rs = rsys(ty);
        let enumerated = rs.weyl_group(2_000_000).expect("under cap").len() as u64;
        assert_eq!(enumerated, want, "{ty} enumeration");
        assert_eq!(rs.weyl_order(), Nat::from(want), "{ty} formula");
    }
    assert_eq!(rsys("E8").weyl_order(), Nat::from(696_729_600u64));
    for family in ['A', 'B', 'C', 'D', 'E', 'F', 'G'] {
        for rank in 1..=4usize {
            let Ok(ty) = CartanType::new([(family, rank)]) else {
                continue;
            };
            let rs = build_root_system(&ty);
            let enumerated = rs.weyl_group(2_000_000).expect("rank ≤ 4 fits").len();
            assert_eq!(
                Nat::from(enumerated as u64),
                rs.weyl_order(),
                "{ty} enumeration vs formula"
            );
        }
    }
    assert!(clock.elapsed() < Duration::from_secs(10), "criterion 1 budget");
}

/// Σ_w det(w) e^{w·shift} for a fundamental-coordinate shift.
fn alternating_sum(rs: &RootSystem, shift: &[Rational]) -> FormalCharacter {
    let group = rs.weyl_group(2_000_000).expect("under cap");
    FormalCharacter::from_entries(
        rs.rank(),
        group
            .iter()
            .map(|w| (w.apply_fund(shift), Int::from(w.det()))),
    )
}

#[test]
fn criterion_02_character_engine() {
    let clock = Instant::now();
    for ty in ["A1", "A2", "B2", "G2"] {
        let rs = rsys(ty);
        let rho: Vec<Rational> = vec![Rational::one(); rs.rank()];
        let weyl_denominator = alternating_sum(&rs, &rho);
        for coords in dominant_weights(rs.rank(), 3) {
            let lambda = Weight::from_ints(&coords, Basis::FundamentalWeight);
            let ch = irreducible_character(&lambda, &rs).expect("dominant integral");
            let dim = weyl_dimension(&lambda, &rs).expect("dominant integral");
            assert_eq!(ch.total_mass(), dim, "{ty} {coords:?}: mass vs dimension");

            let shifted: Vec<Rational> = coords
                .iter()
                .map(|&c| Rational::from_integer(Int::from(c + 1)))
                .collect();
            let numerator = alternating_sum(&rs, &shifted);
            let product = ch.tensor(&weyl_denominator).expect("ranks agree");
            assert!(
                numerator.sub(&product).expect("ranks agree").is_zero(),
                "{ty} {coords:?}: alternating-sum identity"
            );
        }
    }
    assert!(clock.elapsed() < Duration::from_secs(30), "criterion 2 budget");
}

#[test]
fn criterion_03_spin_product_identity() {
    for name in PRESETS {
        let p = pair(name);
        let rank = p.root_system().rank();
        let mut product = FormalCharacter::trivial(rank);
        for root in p.noncompact_positive() {
            let minus: Vec<Rational> = root
                .fund_coords()
                .iter()
                .map(|&c| Rational::from_integer(Int::from(-c)))
                .collect();
            let factor = FormalCharacter::from_entries(
                rank,
                [
                    (vec![Rational::zero(); rank], Int::one()),
                    (minus, -Int::one()),
                ],
            );
            product = product.tensor(&factor).expect("ranks agree");
        }
        let difference = p.euler_virtual_character();
        assert!(
            difference.sub(&product).expect("ranks agree").is_zero(),
            "{name}: ch S⁺ − ch S⁻ equals the noncompact product"
        );
    }
}

#[test]
fn criterion_04_vanishing_law() {
    let clock = Instant::now();
    for name in PRESETS {
        let p = pair(name);
        let evc = p.euler_virtual_character();
        for t in torsion_elements(p.root_system().rank(), 12) {
            let value = evc.evaluate_at_torsion(&t).expect("rank matches");
            let fixed = p.fixed_noncompact_roots(&t).expect("rank matches");
            assert_eq!(
                value.is_zero(),
                !fixed.is_empty(),
                "{name} at {t}: value zero iff a noncompact root pairs integrally"
            );
        }
    }
    assert!(clock.elapsed() < Duration::from_secs(30), "criterion 4 budget");
}

#[test]
fn criterion_05_orbital_consistency() {
    for name in PRESETS {
        let p = pair(name);
        let mut taus = vec![TauSpec::trivial(&p)];
        taus.extend(TauSpec::first_fundamental(&p));
        for t in torsion_elements(p.root_system().rank(), 12) {
            if !p.is_regular_element(&t).expect("rank matches") {
                continue;
            }
            for tau in &taus {
                assert!(
                    orbital_consistency(&t, tau, &p).expect("regular element"),
                    "{name} at {t} with {}: orbital trace identity",
                    tau.label()
                );
            }
        }
    }
}

#[test]
fn criterion_06_index_laws() {
    for name in PRESETS {
        let p = pair(name);
        let rank = p.root_system().rank();
        let chi = Rational::from_integer(Int::from(
            num::BigInt::from(p.chi_dual()),
        ));
        let mut regular_seen = 0u32;
        let mut singular_seen = 0u32;
        let mut grid = Vec::new();
        for i in 0..42i64 {
            if rank == 1 {
                grid.push(vec![rat(i, 2)]);
            } else {
                for j in 0..22i64 {
                    grid.push(vec![rat(i, 2), rat(j, 2)]);
                }
            }
        }
        for coords in grid {
            if regular_seen >= 20 && singular_seen > 0 {
                break;
            }
            let weight = Weight::new(coords, Basis::FundamentalWeight);
            let Ok(tau) = TauSpec::new("sample", &weight, &p) else {
                continue;
            };
            let Ok(report) = g_index(&tau, &p) else {
                continue;
            };
            if report.regular {
                if regular_seen >= 20 {
                    continue;
                }
                regular_seen += 1;
                let dim = Rational::from_integer(report.dim_w.clone());
                assert_eq!(
                    report.unsigned.clone() * chi.clone(),
                    dim,
                    "{name}: unsigned index × χ(X^d) recovers dim W_λ"
                );
                assert_eq!(
                    report.signed,
                    report.unsigned.clone() * rat(report.sign, 1),
                    "{name}: signed index carries det(w)"
                );
                assert!(report.unsigned.is_positive(), "{name}: regular index nonzero");
            } else {
                singular_seen += 1;
                assert!(report.unsigned.is_zero(), "{name}: singular unsigned index");
                assert!(report.signed.is_zero(), "{name}: singular signed index");
                assert!(report.dim_w.is_zero(), "{name}: singular dimension");
            }
        }
        assert_eq!(regular_seen, 20, "{name}: twenty regular samples");
        assert!(singular_seen > 0, "{name}: a singular sample");
    }
}

#[test]
fn criterion_07_euler_normalization() {
    for name in ["su11", "hilbert2", "su21"] {
        let p = pair(name);
        let value = euler_index(&TauSpec::trivial(&p), &p).expect("trivial twist");
        assert!(value.is_one(), "{name}: Euler index of the trivial twist");
    }
    let h2 = pair("hilbert2");
    let line = pair("su11");
    for a in 0..3i64 {
        for b in 0..3i64 {
            let joint = TauSpec::new(
                "product",
                &Weight::from_ints(&[a, b], Basis::FundamentalWeight),
                &h2,
            )
            .expect("valid weight");
            let left = TauSpec::new(
                "left",
                &Weight::from_ints(&[a], Basis::FundamentalWeight),
                &line,
            )
            .expect("valid weight");
            let right = TauSpec::new(
                "right",
                &Weight::from_ints(&[b], Basis::FundamentalWeight),
                &line,
            )
            .expect("valid weight");
            assert_eq!(
                euler_index(&joint, &h2).expect("product pair"),
                euler_index(&left, &line).expect("factor")
                    * euler_index(&right, &line).expect("factor"),
                "hilbert2 index at ({a},{b}) is the product of its factors"
            );
        }
    }
}

#[test]
fn criterion_08_arithmetic_assembly() {
    for name in ["su11", "hilbert2", "su21"] {
        let p = pair(name);
        let tau = TauSpec::trivial(&p);
        for c in [-2i64, -1, 0, 5] {
            let value = arithmetic_index(
                OperatorKind::Euler,
                &tau,
                &p,
                &Int::from(c),
                &Rational::zero(),
            )
            .expect("assembles");
            assert_eq!(value, rat(c, 1), "{name}: index on the quotient is χ(X_Γ)");
        }
    }
}

fn random_cyclotomic(rng: &mut ChaCha8Rng, n: u64) -> Cyclotomic {
    let mut x = Cyclotomic::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let term = Cyclotomic::root_of_unity(rng.gen_range(0..n as i64), n)
            .scale(&rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
        x = x + term;
    }
    x
}

#[test]
fn criterion_09_cyclotomic_laws() {
    let clock = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0509_1960);
    for case in 0..1000u32 {
        let n = rng.gen_range(1..=60u64);
        let x = random_cyclotomic(&mut rng, n);
        let y = random_cyclotomic(&mut rng, n);
        let z = random_cyclotomic(&mut rng, n);

        let assoc_add = (x.clone() + y.clone()) + z.clone() - (x.clone() + (y.clone() + z.clone()));
        assert!(assoc_add.is_zero(), "case {case}: additive associativity");
        let comm_add = x.clone() + y.clone() - (y.clone() + x.clone());
        assert!(comm_add.is_zero(), "case {case}: additive commutativity");
        let assoc_mul = (x.clone() * y.clone()) * z.clone() - x.clone() * (y.clone() * z.clone());
        assert!(assoc_mul.is_zero(), "case {case}: multiplicative associativity");
        let comm_mul = x.clone() * y.clone() - y.clone() * x.clone();
        assert!(comm_mul.is_zero(), "case {case}: multiplicative commutativity");
        let distrib =
            x.clone() * (y.clone() + z.clone()) - (x.clone() * y.clone() + x.clone() * z.clone());
        assert!(distrib.is_zero(), "case {case}: distributivity");

        if !x.is_zero() {
            let unit = x.clone() * x.inverse().expect("nonzero inverts");
            assert!(unit.is_one(), "case {case}: x · x⁻¹ = 1");
        }

        // Galois stability: every automorphism respects + and ×, the identity
        // automorphism is the identity, and the full trace lands in Q.
        let id = x.galois(1).expect("1 is coprime");
        assert!((id - x.clone()).is_zero(), "case {case}: σ₁ = id");
        let coprime: Vec<u64> = (1..=n).filter(|&k| num::integer::gcd(k, n) == 1).collect();
        let k = coprime[rng.gen_range(0..coprime.len())];
        let sx = x.galois(k).expect("k is coprime");
        let sy = y.galois(k).expect("same conductor");
        let sum_image = (x.clone() + y.clone()).galois(k).expect("same conductor");
        assert!(
            (sum_image - (sx.clone() + sy.clone())).is_zero(),
            "case {case}: σ_{k} is additive"
        );
        let prod_image = (x.clone() * y.clone()).galois(k).expect("same conductor");
        assert!(
            (prod_image - sx * sy).is_zero(),
            "case {case}: σ_{k} is multiplicative"
        );
        let trace = (1..=n)
            .filter_map(|k| x.galois(k))
            .fold(Cyclotomic::zero(), |acc, s| acc + s);
        assert_eq!(
            trace.with_minimal_conductor().conductor(),
            1,
            "case {case}: the trace is rational"
        );
    }
    assert!(clock.elapsed() < Duration::from_secs(10), "criterion 9 budget");
}

fn run_cli(args: &[&str]) -> (String, bool) {
    let out = Command::new(env!("CARGO_BIN_EXE_gindex"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8 output"),
        out.status.success(),
    )
}

#[test]
fn criterion_10_determinism_and_round_trips() {
    let dir = tempfile::tempdir().expect("tempdir");
    let conf = dir.path().join("job.conf");
    std::fs::write(
        &conf,
        "[pair]\npreset = \"su21\"\n\n[tau]\nweight = [1, 0]\n\n[element]\nx = [\"1/3\", \"1/5\"]\n",
    )
    .expect("config written");
    let conf = conf.to_str().expect("utf-8 path");

    // Byte-identical reruns across commands and formats.
    for command in ["rootsys-info", "char-branch", "index-euler", "orbital-eval"] {
        for format in ["records", "table"] {
            let args = ["--config", conf, "--command", command, "--format", format];
            let (first, ok1) = run_cli(&args);
            let (second, ok2) = run_cli(&args);
            assert!(ok1 && ok2, "{command}/{format} succeeds");
            assert_eq!(first, second, "{command}/{format} rerun is byte-identical");
            assert!(!first.is_empty(), "{command}/{format} produced output");
        }
    }

    // Weyl cache: cold run writes, warm run loads, output identical; a
    // tampered cache file is rejected, proving the warm path reads it.
    let cache = dir.path().join("cache");
    let cache_str = cache.to_str().expect("utf-8 path");
    let args = [
        "--config",
        conf,
        "--command",
        "weyl-order",
        "--format",
        "records",
        "--cache-dir",
        cache_str,
    ];
    let (cold, ok_cold) = run_cli(&args);
    assert!(ok_cold, "cold cache run succeeds");
    let cache_file = cache.join("weyl-A2.json");
    assert!(cache_file.exists(), "cold run populated the cache");
    let (warm, ok_warm) = run_cli(&args);
    assert!(ok_warm, "warm cache run succeeds");
    assert_eq!(cold, warm, "cache hit does not change the output");
    let body = std::fs::read_to_string(&cache_file).expect("cache readable");
    let mut file: serde_json::Value = serde_json::from_str(&body).expect("cache is JSON");
    file["matrices"][0][0][0] = serde_json::Value::from(9);
    std::fs::write(&cache_file, file.to_string()).expect("cache tampered");
    let (tampered, ok_tampered) = run_cli(&args);
    assert!(!ok_tampered, "tampered cache fails the run");
    assert!(
        tampered.contains("E_CACHE_CORRUPT"),
        "tampered cache is reported with its stable code"
    );

    // Config → pair → config: the canonical re-render is a fixpoint.
    let (records, ok) = run_cli(&[
        "--config",
        conf,
        "--command",
        "pair-validate",
        "--format",
        "records",
    ]);
    assert!(ok, "pair-validate succeeds");
    let record: serde_json::Value =
        serde_json::from_str(records.lines().next().expect("one record")).expect("valid JSON");
    let rendered = record["rerender"].as_str().expect("rerender is text");
    let conf2 = dir.path().join("rerendered.conf");
    std::fs::write(&conf2, rendered).expect("rendered config written");
    let (records2, ok2) = run_cli(&[
        "--config",
        conf2.to_str().expect("utf-8 path"),
        "--command",
        "pair-validate",
        "--format",
        "records",
    ]);
    assert!(ok2, "re-rendered config validates");
    let record2: serde_json::Value =
        serde_json::from_str(records2.lines().next().expect("one record")).expect("valid JSON");
    assert_eq!(
        record2["rerender"].as_str().expect("rerender is text"),
        rendered,
        "re-rendering the rendered config is stable"
    );
}
