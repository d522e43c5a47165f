//! Number-theoretic helpers: short linear forms, orders of `GL_n(Z/s)`, and
//! prime searches in arithmetic progressions.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_prime::nt_funcs::{factorize128, is_prime64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Prime factors of `n` counted with multiplicity.
pub fn omega_u128(n: u128) -> u32 {
    assert!(n >= 1, "omega is defined for positive integers");
    factorize128(n).values().map(|&e| e as u32).sum()
}

/// Primitive `r = (a, b)` of least Euclidean norm with `a·c₁ + b·c₂ ≡ 0 (mod p)`.
///
/// The solutions form a lattice of determinant `p`; a Gauss-reduced basis
/// gives a shortest vector, of squared norm at most `2p/√3`. Ties are broken
/// by choosing the lexicographically largest sign-normalized vector.
pub fn kernel_hom(p: u64, c: (i64, i64)) -> Result<(i64, i64)> {
    if p < 2 || !is_prime64(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let p = p as i64;
    let (c1, c2) = (c.0.rem_euclid(p), c.1.rem_euclid(p));
    if c1 == 0 && c2 == 0 {
        return Err(Error::Precondition("C must be cyclic of order p".into()));
    }
    let (mut u, mut v) = if c1 != 0 {
        let inv = mod_inverse(c1, p).expect("p prime");
        ((p, 0), ((-c2 * inv).rem_euclid(p), 1))
    } else {
        ((1, 0), (0, p))
    };
    let norm = |x: (i64, i64)| x.0 * x.0 + x.1 * x.1;
    let dot = |x: (i64, i64), y: (i64, i64)| x.0 * y.0 + x.1 * y.1;
    loop {
        if norm(u) > norm(v) {
            std::mem::swap(&mut u, &mut v);
        }
        let m = (dot(u, v) as f64 / norm(u) as f64).round() as i64;
        if m == 0 {
            break;
        }
        v = (v.0 - m * u.0, v.1 - m * u.1);
        if norm(v) >= norm(u) {
            break;
        }
    }
    let best = norm(u);
    let normalize = |x: (i64, i64)| if x.0 < 0 || (x.0 == 0 && x.1 < 0) { (-x.0, -x.1) } else { x };
    let mut candidates: Vec<(i64, i64)> = [(1, 0), (0, 1), (1, 1), (1, -1)]
        .iter()
        .map(|&(a, b)| (a * u.0 + b * v.0, a * u.1 + b * v.1))
        .filter(|&x| norm(x) == best)
        .map(normalize)
        .collect();
    candidates.sort();
    Ok(*candidates.last().expect("u is among the candidates"))
}

pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = a.extended_gcd(&m);
    (e.gcd == 1 || e.gcd == -1).then(|| (e.x * e.gcd).rem_euclid(m))
}

/// `O_n(x) = Π_{j<n} (xⁿ − x^j)`.
pub fn o_poly(n: u32, x: &BigInt) -> BigInt {
    let xn = x.pow(n);
    (0..n).fold(BigInt::one(), |acc, j| acc * (&xn - x.pow(j)))
}

/// `|GL_n(Z/s)|` for squarefree `s`, as the product of `O_n(p)` over `p | s`.
pub fn gl_order(n: u32, s: u64) -> Result<BigUint> {
    if s == 0 {
        return Err(Error::Precondition("s must be positive".into()));
    }
    let factors = num_prime::nt_funcs::factorize64(s);
    if factors.values().any(|&e| e > 1) {
        return Err(Error::Precondition(format!("{s} is not squarefree")));
    }
    let order = factors.keys().fold(BigInt::one(), |acc, &p| acc * o_poly(n, &BigInt::from(p)));
    Ok(order.to_biguint().expect("positive"))
}

/// An integer polynomial evaluated at primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Poly {
    /// `Σ c_i X^i`.
    Coefficients(Vec<i64>),
    /// `O_n(X)`.
    On(u32),
}

impl Poly {
    pub fn eval(&self, x: u64) -> BigInt {
        let x = BigInt::from(x);
        match self {
            Poly::Coefficients(c) => c.iter().rev().fold(BigInt::zero(), |acc, &a| acc * &x + a),
            Poly::On(n) => o_poly(*n, &x),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeSearch {
    pub primes: Vec<u64>,
    /// Set when the search limit was reached before `count` primes were found.
    pub limit_reached: bool,
    pub limit: u64,
}

/// The first `count` primes `p ≡ ρ (mod μ)` below `limit` with
/// `Ω(|f(p)|) ≤ k`; zeros of `f` are skipped.
pub fn prime_search(f: &Poly, rho: i64, mu: u64, k: u32, count: usize, limit: u64) -> Result<PrimeSearch> {
    if mu == 0 {
        return Err(Error::Precondition("μ must be positive".into()));
    }
    let m = mu as i64;
    let rho = rho.rem_euclid(m);
    if rho.gcd(&m) != 1 && m != 1 {
        return Err(Error::Precondition(format!("gcd({rho}, {mu}) ≠ 1")));
    }
    let mut primes = Vec::new();
    let mut p = rho as u64;
    while primes.len() < count && p <= limit {
        if p >= 2 && is_prime64(p) {
            let v = f.eval(p);
            if !v.is_zero() {
                let v = v.magnitude().to_u128().ok_or(Error::Overflow("polynomial value"))?;
                if omega_u128(v) <= k {
                    primes.push(p);
                }
            }
        }
        p += mu;
    }
    Ok(PrimeSearch { limit_reached: primes.len() < count, primes, limit })
}

/// Least odd prime at least `threshold`, then the next ones.
fn odd_primes_from(threshold: &BigRational, count: usize) -> Result<Vec<u64>> {
    let start = threshold.ceil().to_integer().to_u64().ok_or(Error::Overflow("prime threshold"))?.max(3);
    let mut out = Vec::with_capacity(count);
    let mut p = start;
    while out.len() < count {
        if p % 2 == 1 && is_prime64(p) {
            out.push(p);
        }
        p = p.checked_add(1).ok_or(Error::Overflow("prime search"))?;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdPrimes {
    /// `8(C₁ + C₂)² / ε²`, as `p/q`.
    pub threshold: String,
    pub primes: Vec<u64>,
}

/// Three pairwise distinct odd primes at least `8(C₁ + C₂)²/ε²`.
pub fn threshold_primes(c1: &BigRational, c2: &BigRational, eps: &BigRational) -> Result<ThresholdPrimes> {
    if *eps <= BigRational::zero() {
        return Err(Error::Precondition("ε must be positive".into()));
    }
    let sum = c1 + c2;
    let t = BigRational::from_integer(8.into()) * &sum * &sum / (eps * eps);
    Ok(ThresholdPrimes { threshold: t.to_string(), primes: odd_primes_from(&t, 3)? })
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruencePrimes {
    /// `φ(|F|)`.
    pub r: u64,
    pub modulus: u64,
    pub primes: Vec<u64>,
}

pub fn totient(n: u64) -> u64 {
    num_prime::nt_funcs::factorize64(n).iter().fold(n, |acc, (&p, _)| acc / p * (p - 1))
}

/// `r = φ(|F|)` and the first `count` primes `p ≡ −1 (mod 4l)`.
pub fn congruence_primes(f_order: u64, l: u64, count: usize, limit: u64) -> Result<CongruencePrimes> {
    if f_order == 0 || l == 0 {
        return Err(Error::Precondition("|F| and l must be positive".into()));
    }
    let modulus = 4 * l;
    let found = prime_search(&Poly::Coefficients(vec![0, 1]), -1, modulus, 1, count, limit)?;
    if found.limit_reached {
        return Err(Error::Precondition(format!("fewer than {count} primes below {limit}")));
    }
    Ok(CongruencePrimes { r: totient(f_order), modulus, primes: found.primes })
}
