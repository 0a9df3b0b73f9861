//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! An element is stored as a rational coefficient vector over the power
//! basis ζ_n⁰ … ζ_n^{φ(n)−1}, reduced modulo the n-th cyclotomic polynomial
//! Φ_n. The reduction makes the representation canonical at a fixed
//! conductor; equality across conductors goes through the lcm embedding.
//! Conductors grow by lcm at each binary operation and are never shrunk
//! automatically — [`Cyclotomic::with_minimal_conductor`] is the explicit
//! normalization pass.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::{integer, One, Signed, ToPrimitive, Zero};

use crate::{rat_int, Error, Int, Rational, Result};

/// Exact element of Q(ζ_n).
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<Rational>,
}

pub fn euler_phi(mut n: u64) -> usize {
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            phi *= p - 1;
            while n % p == 0 {
                n /= p;
                phi *= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi as usize
}

/// Φ_n as little-endian integer coefficients, memoized process-wide.
/// Computed as (x^n − 1) / Π_{d|n, d<n} Φ_d — every division is by a monic
/// divisor, hence exact.
fn cyclotomic_polynomial(n: u64) -> Arc<Vec<Int>> {
    static POLYS: OnceLock<Mutex<HashMap<u64, Arc<Vec<Int>>>>> = OnceLock::new();
    let table = POLYS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = table.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n − 1.
    let mut num = vec![Int::from(0); n as usize + 1];
    num[0] = Int::from(-1);
    num[n as usize] = Int::from(1);
    for d in 1..n {
        if n % d == 0 {
            num = int_poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    let arc = Arc::new(num);
    table
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| arc.clone())
        .clone()
}

/// Exact division of integer polynomials by a monic divisor.
fn int_poly_div_exact(a: &[Int], b: &[Int]) -> Vec<Int> {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one(), "divisor must be monic");
    let mut rem: Vec<Int> = a.to_vec();
    let da = rem.len() - 1;
    let mut quot = vec![Int::from(0); da - db + 1];
    for i in (db..=da).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - db] = c.clone();
        for j in 0..=db {
            let t = &b[j] * &c;
            rem[i - db + j] -= t;
        }
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()), "division not exact");
    quot
}

/// Remainder of a rational polynomial modulo Φ_n; result has length φ(n).
fn reduce_mod_cyclotomic(mut poly: Vec<Rational>, n: u64) -> Vec<Rational> {
    let modulus = cyclotomic_polynomial(n);
    let deg = modulus.len() - 1;
    for i in (deg..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut poly[i]);
        for j in 0..deg {
            let t = &c * Rational::from_integer(modulus[j].clone());
            poly[i - deg + j] -= t;
        }
    }
    poly.truncate(deg);
    poly.resize(deg, Rational::zero());
    poly
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![Rational::one()],
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// e^{2πik/n} as an element of Q(ζ_n). `k` may be any integer; it is
    /// reduced mod n.
    pub fn root_of_unity(k: i64, n: u64) -> Self {
        assert!(n > 0, "conductor must be positive");
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rational::zero(); n as usize];
        poly[e] = Rational::one();
        Cyclotomic {
            conductor: n,
            coeffs: reduce_mod_cyclotomic(poly, n),
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Coefficients over the power basis ζ⁰ … ζ^{φ(n)−1}.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The value as a rational, if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        let min = self.with_minimal_conductor();
        if min.conductor == 1 {
            Some(min.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Rewrite in Q(ζ_m) for a multiple m of the conductor.
    pub fn embed(&self, m: u64) -> Result<Cyclotomic> {
        if m == 0 || m % self.conductor != 0 {
            return Err(Error::BadConductor(m));
        }
        if m == self.conductor {
            return Ok(self.clone());
        }
        let scale = (m / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * scale] = c.clone();
        }
        Ok(Cyclotomic {
            conductor: m,
            coeffs: reduce_mod_cyclotomic(poly, m),
        })
    }

    /// The same value at the smallest conductor dividing the current one.
    ///
    /// Finds the least divisor m of n such that the value lies in Q(ζ_m),
    /// by solving exactly for coordinates over the embedded power basis.
    pub fn with_minimal_conductor(&self) -> Cyclotomic {
        let n = self.conductor;
        let mut divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        divisors.sort_unstable();
        for m in divisors {
            if m == n {
                break;
            }
            let phi_m = euler_phi(m);
            // Columns: each basis power of Q(ζ_m) embedded into Q(ζ_n).
            let phi_n = self.coeffs.len();
            let mut cols = Vec::with_capacity(phi_m);
            for t in 0..phi_m {
                let basis = Cyclotomic {
                    conductor: m,
                    coeffs: {
                        let mut v = vec![Rational::zero(); phi_m];
                        v[t] = Rational::one();
                        v
                    },
                };
                cols.push(basis.embed(n).expect("m divides n").coeffs);
            }
            let matrix: Vec<Vec<Rational>> = (0..phi_n)
                .map(|row| (0..phi_m).map(|col| cols[col][row].clone()).collect())
                .collect();
            if let Some(solution) = crate::linalg::solve(&matrix, &self.coeffs) {
                return Cyclotomic {
                    conductor: m,
                    coeffs: solution,
                };
            }
        }
        self.clone()
    }

    /// Multiplicative inverse. Multiplication by x is an invertible linear
    /// map on the power basis (Φ_n is irreducible), so x·y = 1 is an exact
    /// square linear system in the coefficients of y. The system is cleared
    /// to integers and solved fraction-free.
    pub fn inverse(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::CycloDivisionByZero {
                conductor: self.conductor,
            });
        }
        let phi = self.coeffs.len();
        let denom = self
            .coeffs
            .iter()
            .fold(Int::one(), |acc, c| integer::lcm(acc, c.denom().clone()));
        // Column 0: the integer coefficients of denom·x.
        let mut col: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        let modulus = cyclotomic_polynomial(self.conductor);
        let mut rows = vec![vec![Int::from(0); phi]; phi];
        for j in 0..phi {
            if j > 0 {
                // Multiply by ζ: shift once, fold ζ^φ = −Σ_t Φ_t ζ^t back in.
                col.rotate_right(1);
                let c = std::mem::replace(&mut col[0], Int::from(0));
                if !c.is_zero() {
                    for (t, slot) in col.iter_mut().enumerate() {
                        *slot -= &c * &modulus[t];
                    }
                }
            }
            for i in 0..phi {
                rows[i][j] = col[i].clone();
            }
        }
        let mut rhs = vec![Int::from(0); phi];
        rhs[0] = denom;
        let coeffs = crate::linalg::solve_int(&rows, &rhs)
            .expect("multiplication by a nonzero element is invertible");
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs,
        })
    }

    /// ζ_n ↦ ζ_n^k for gcd(k, n) = 1; `None` otherwise.
    pub fn galois(&self, k: u64) -> Option<Cyclotomic> {
        if integer::gcd(k, self.conductor) != 1 {
            return None;
        }
        let n = self.conductor;
        let mut poly = vec![Rational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            let e = (j as u64 * k % n) as usize;
            poly[e] += c;
        }
        Some(Cyclotomic {
            conductor: n,
            coeffs: reduce_mod_cyclotomic(poly, n),
        })
    }

    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// (re, im) floating approximation; exactness lives elsewhere — this is
    /// only for human-facing display.
    pub fn to_complex_approx(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let x = c.to_f64().expect("rational fits in f64");
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / n;
            re += x * theta.cos();
            im += x * theta.sin();
        }
        (re, im)
    }

    fn unified(&self, other: &Cyclotomic) -> (u64, Vec<Rational>, Vec<Rational>) {
        let m = integer::lcm(self.conductor, other.conductor);
        let a = self.embed(m).expect("lcm is a multiple");
        let b = other.embed(m).expect("lcm is a multiple");
        (m, a.coeffs, b.coeffs)
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    out
}

impl PartialEq for Cyclotomic {
    /// Mathematical equality: compare at the common (lcm) conductor.
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.unified(other);
        a == b
    }
}

impl Eq for Cyclotomic {}

impl std::ops::Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (m, a, b) = self.unified(rhs);
        Cyclotomic {
            conductor: m,
            coeffs: a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        }
    }
}

impl std::ops::Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (m, a, b) = self.unified(rhs);
        Cyclotomic {
            conductor: m,
            coeffs: a.iter().zip(&b).map(|(x, y)| x - y).collect(),
        }
    }
}

impl std::ops::Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (m, a, b) = self.unified(rhs);
        Cyclotomic {
            conductor: m,
            coeffs: reduce_mod_cyclotomic(poly_mul(&a, &b), m),
        }
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl std::ops::Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl std::ops::Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl std::ops::Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (j, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => format!("z{}", self.conductor),
                (1, false) => format!("{}*z{}", mag, self.conductor),
                (_, true) => format!("z{}^{}", self.conductor, j),
                (_, false) => format!("{}*z{}^{}", mag, self.conductor, j),
            };
            terms.push((c.is_negative(), body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (neg, body)) in terms.iter().enumerate() {
            if i == 0 {
                if *neg {
                    out.push('-');
                }
            } else {
                out.push_str(if *neg { " - " } else { " + " });
            }
            out.push_str(body);
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use proptest::prelude::*;

    fn zeta(k: i64, n: u64) -> Cyclotomic {
        Cyclotomic::root_of_unity(k, n)
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |n: u64| -> Vec<i64> {
            cyclotomic_polynomial(n)
                .iter()
                .map(|c| c.to_i64().unwrap())
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        for n in 1..=60 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n), "{n}");
        }
    }

    #[test]
    fn roots_of_unity() {
        assert!(zeta(0, 7).is_one());
        assert_eq!(&zeta(1, 4) * &zeta(1, 4), Cyclotomic::from_int(-1));
        let mut power = Cyclotomic::one();
        for _ in 0..12 {
            power = &power * &zeta(1, 12);
        }
        assert!(power.is_one());
        // Negative exponents reduce mod n.
        assert_eq!(zeta(-1, 5), zeta(4, 5));
    }

    #[test]
    fn vanishing_sums_of_prime_roots() {
        for p in [3u64, 5, 7] {
            let mut sum = Cyclotomic::zero();
            for k in 0..p as i64 {
                sum = &sum + &zeta(k, p);
            }
            assert!(sum.is_zero(), "p = {p}");
        }
    }

    #[test]
    fn product_of_conjugates() {
        let a = &Cyclotomic::one() - &zeta(1, 3);
        let b = &Cyclotomic::one() - &zeta(2, 3);
        assert_eq!(&a * &b, Cyclotomic::from_int(3));
    }

    #[test]
    fn mixed_conductors() {
        assert_eq!(&zeta(1, 2) * &zeta(1, 3), zeta(5, 6));
        let sum = &zeta(1, 4) + &zeta(1, 6);
        assert_eq!(sum.conductor(), 12);
    }

    #[test]
    fn inverses() {
        assert!(Cyclotomic::one().inverse().unwrap().is_one());
        assert_eq!(
            Cyclotomic::from_int(-1).inverse().unwrap(),
            Cyclotomic::from_int(-1)
        );
        let x = &Cyclotomic::one() - &zeta(1, 4);
        let expected = (&Cyclotomic::one() + &zeta(1, 4)).scale(&rat(1, 2));
        assert_eq!(x.inverse().unwrap(), expected);
        assert_eq!(
            Cyclotomic::zero().inverse().unwrap_err().code(),
            "E_DIV_ZERO"
        );
    }

    #[test]
    fn embedding_round_trip() {
        let x = &zeta(1, 6) + &Cyclotomic::from_rational(rat(3, 2));
        let up = x.embed(24).unwrap();
        assert_eq!(up.conductor(), 24);
        assert_eq!(up, x);
        let back = up.with_minimal_conductor();
        assert_eq!(back.conductor(), 3, "ζ6 = −ζ3² lives in Q(ζ3)");
        assert_eq!(back, x);
        assert_eq!(x.embed(7).unwrap_err().code(), "E_CONDUCTOR");
    }

    #[test]
    fn minimal_conductor_finds_rationals() {
        let three = &(&Cyclotomic::one() - &zeta(1, 3)) * &(&Cyclotomic::one() - &zeta(2, 3));
        assert_eq!(three.as_rational(), Some(rat_int(3)));
        assert_eq!(zeta(2, 4).as_rational(), Some(rat_int(-1)));
        assert_eq!(zeta(1, 3).as_rational(), None);
    }

    #[test]
    fn complex_approximation() {
        let (re, im) = zeta(1, 4).to_complex_approx();
        assert!(re.abs() < 1e-12);
        assert!((im - 1.0).abs() < 1e-12);
        let (re, im) = zeta(1, 3).to_complex_approx();
        assert!((re + 0.5).abs() < 1e-12);
        assert!((im - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(Cyclotomic::zero().to_string(), "0");
        assert_eq!(Cyclotomic::from_int(-1).to_string(), "-1");
        let x = &Cyclotomic::one() - &zeta(1, 3);
        assert_eq!(x.to_string(), "1 - z3");
    }

    fn arb_cyclotomic() -> impl Strategy<Value = Cyclotomic> {
        let conductor = prop_oneof![Just(1u64), Just(2), Just(3), Just(4), Just(6), Just(12)];
        conductor.prop_flat_map(|n| {
            let phi = euler_phi(n);
            let coeff = (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rat(p, q));
            proptest::collection::vec(coeff, phi).prop_map(move |coeffs| Cyclotomic {
                conductor: n,
                coeffs,
            })
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_cyclotomic(), b in arb_cyclotomic(), c in arb_cyclotomic()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }

        #[test]
        fn galois_maps_are_automorphisms(a in arb_cyclotomic(), b in arb_cyclotomic(), k in 1u64..=12) {
            let (m, _, _) = a.unified(&b);
            if integer::gcd(k, m) == 1 {
                let a = a.embed(m).unwrap();
                let b = b.embed(m).unwrap();
                let fa = a.galois(k).unwrap();
                let fb = b.galois(k).unwrap();
                prop_assert_eq!((&a + &b).galois(k).unwrap(), &fa + &fb);
                prop_assert_eq!((&a * &b).galois(k).unwrap(), &fa * &fb);
            }
        }

        #[test]
        fn conductor_round_trip(a in arb_cyclotomic()) {
            let up = a.embed(a.conductor() * 4).unwrap();
            prop_assert_eq!(&up, &a);
            let min = up.with_minimal_conductor();
            prop_assert_eq!(&min, &a);
            prop_assert_eq!(a.conductor() % min.conductor(), 0);
        }
    }
}
