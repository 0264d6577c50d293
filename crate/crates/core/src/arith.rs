//! Integer and rational helpers shared by every other module.
//!
//! Everything here is a pure function on value types. Factorization is plain
//! trial division over a 2·3·5 wheel, which is plenty for the inputs this crate
//! deals with (well below 10⁷).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `"num/den"`, with the denominator omitted when it is 1.
pub fn rational_to_string(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(
            s.parse()
                .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?,
        ),
    };
    Ok(parsed)
}

/// Serde adapter storing a [`Rational`] as its `"num/den"` string.
pub mod rational_str {
    use super::{parse_rational, rational_to_string, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // ratio of huge integers: fall back on scaled logarithms
        let n = q.numer();
        let d = q.denom();
        let sign = if n.is_negative() { -1.0 } else { 1.0 };
        let (nb, db) = (n.bits() as i64, d.bits() as i64);
        let shift = (nb.max(db) - 60).max(0) as usize;
        let ns = (n.abs() >> shift).to_f64().unwrap_or(0.0);
        let ds = (d >> shift).to_f64().unwrap_or(1.0);
        sign * ns / ds
    })
}

const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut p = 7u64;
    let mut i = 0;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += WHEEL[i];
        i = (i + 1) % WHEEL.len();
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn moebius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All positive divisors of `n`, sorted.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// σ_k(n) = Σ_{d | n} d^k.
pub fn sigma(k: u32, n: u64) -> BigInt {
    divisors(n)
        .into_iter()
        .map(|d| BigInt::from(d).pow(k))
        .sum()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    a.gcd(&b).gcd(&c)
}

pub fn is_fundamental_discriminant(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    let sqfree = |m: i64| m != 0 && is_squarefree(m.unsigned_abs());
    if n.rem_euclid(4) == 1 {
        return sqfree(n);
    }
    if n % 4 == 0 {
        let m = n / 4;
        let r = m.rem_euclid(4);
        return (r == 2 || r == 3) && sqfree(m);
    }
    false
}

/// Residues `0 ≤ μ ≤ 2p − 1` with `μ² ≡ −m (mod 4p)`.
///
/// Intended for odd primes `p`; `p = 1` is accepted and gives the residues
/// `μ ∈ {0, 1}` with `μ² ≡ −m (mod 4)`.
pub fn sqrt_classes(m: u64, p: u64) -> Vec<u64> {
    let modulus = 4 * p;
    let target = (modulus - m % modulus) % modulus;
    (0..2 * p)
        .filter(|&mu| (mu * mu) % modulus == target)
        .collect()
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi_symbol(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "jacobi_symbol needs odd n");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Quadratic residue symbol (c/d) for odd d with the sign extension used for
/// the theta multiplier: for d < 0 the symbol is (c/|d|), negated when c < 0.
pub fn kronecker_extended(c: i64, d: i64) -> Result<i32> {
    if d % 2 == 0 {
        return Err(Error::invalid(format!(
            "kronecker_extended needs odd d, got {d}"
        )));
    }
    let base = jacobi_symbol(c, d.unsigned_abs());
    Ok(if d < 0 && c < 0 { -base } else { base })
}

/// ε_d: 1 for d ≡ 1 (mod 4), i for d ≡ 3 (mod 4).
pub fn eps(d: i64) -> Result<Complex64> {
    match d.rem_euclid(4) {
        1 => Ok(Complex64::new(1.0, 0.0)),
        3 => Ok(Complex64::new(0.0, 1.0)),
        _ => Err(Error::invalid(format!("eps needs odd d, got {d}"))),
    }
}

/// Extended gcd: returns (g, x, y) with a·x + b·y = g ≥ 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    (r0 as i64, s0 as i64, t0 as i64)
}

pub fn is_zero(q: &Rational) -> bool {
    q.is_zero()
}

pub fn one() -> Rational {
    Rational::one()
}
