//! Level-one building blocks (Eisenstein series, η, Δ) and the theta series,
//! plus floating-point evaluation of truncated q-expansions.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::arith::{rat, sigma, to_f64, Rational};
use crate::error::{Error, Result};
use crate::qseries::QSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Integral(i64),
    /// Weight `kappa + 1/2`.
    HalfIntegral(i64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalForm {
    pub weight: Weight,
    pub level: u64,
    pub series: QSeries,
}

/// Bernoulli numbers B₀..=B_n from Σ_{j≤m} C(m+1, j) B_j = 0.
pub fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let mut binom = BigInt::one(); // C(m+1, 0)
        let mut s = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += Rational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        // binom is now C(m+1, m)
        b.push(-s / Rational::from_integer(binom));
    }
    b
}

/// Normalized Eisenstein series `E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) qⁿ`, known
/// below `q^prec`.
pub fn eisenstein(k: i64, prec: i64) -> Result<ClassicalForm> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::invalid(format!(
            "Eisenstein series needs even weight >= 4, got {k}"
        )));
    }
    if prec < 1 {
        return Err(Error::invalid("precision must be positive"));
    }
    let bk = bernoulli(k as usize).pop().expect("nonempty");
    let factor = -rat(2 * k) / bk;
    let terms = std::iter::once((0, Rational::one())).chain((1..prec).map(|n| {
        let s = Rational::from_integer(sigma((k - 1) as u32, n as u64));
        (n, &factor * s)
    }));
    Ok(ClassicalForm {
        weight: Weight::Integral(k),
        level: 1,
        series: QSeries::from_terms(1, prec, terms),
    })
}

/// Π_{n≥1}(1 − qⁿ) via the pentagonal number theorem.
pub fn euler_product(prec: i64) -> QSeries {
    let mut terms = Vec::new();
    let mut k: i64 = 0;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let e1 = k * (3 * k - 1) / 2;
        let e2 = k * (3 * k + 1) / 2;
        if e1 >= prec && e2 >= prec {
            break;
        }
        terms.push((e1, rat(sign)));
        if k != 0 {
            terms.push((e2, rat(sign)));
        }
        k += 1;
    }
    QSeries::from_terms(1, prec, terms)
}

/// η = q^(1/24) Π(1 − qⁿ), stored at denominator 24 and known below `q^prec`.
pub fn eta(prec: i64) -> ClassicalForm {
    let series = euler_product(prec).rescale(24).shift(1).truncate(24 * prec);
    ClassicalForm {
        weight: Weight::HalfIntegral(0),
        level: 1,
        series,
    }
}

/// Δ = η²⁴ = q Π(1 − qⁿ)²⁴ with integer coefficients, known below `q^prec`.
pub fn delta(prec: i64) -> ClassicalForm {
    let series = euler_product(prec.max(1)).pow(24).shift(1).truncate(prec);
    ClassicalForm {
        weight: Weight::Integral(12),
        level: 1,
        series,
    }
}

/// θ = Σ_{n∈ℤ} q^(n²), known below `q^prec`.
pub fn theta(prec: i64) -> ClassicalForm {
    let mut terms = Vec::new();
    let mut n: i64 = 0;
    while n * n < prec {
        terms.push((n * n, rat(if n == 0 { 1 } else { 2 })));
        n += 1;
    }
    ClassicalForm {
        weight: Weight::HalfIntegral(0),
        level: 4,
        series: QSeries::from_terms(1, prec, terms),
    }
}

/// Coefficient growth model `|a(n)| ≤ constant · n^exponent` used to bound
/// the tail of a truncated expansion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthBound {
    pub constant: f64,
    pub exponent: f64,
}

impl GrowthBound {
    pub fn constant(c: f64) -> Self {
        GrowthBound {
            constant: c,
            exponent: 0.0,
        }
    }

    /// Smallest constant for a given exponent that covers every stored
    /// coefficient, padded by a factor of two.
    pub fn fit<'a, I>(terms: I, exponent: f64) -> Self
    where
        I: IntoIterator<Item = (f64, &'a Rational)>,
    {
        let c = terms
            .into_iter()
            .filter(|(n, _)| *n >= 1.0)
            .map(|(n, a)| to_f64(a).abs() / n.powf(exponent))
            .fold(0.0, f64::max);
        GrowthBound {
            constant: 2.0 * c.max(1.0),
            exponent,
        }
    }

    /// Bound on Σ_{n ≥ start} |a(n)| rⁿ, stepping `1/denom` at a time.
    pub fn tail(&self, r: f64, start: f64, denom: i64) -> f64 {
        let start = start.max(1.0);
        let rho = r * ((start + 1.0) / start).powf(self.exponent);
        if rho >= 1.0 {
            return f64::INFINITY;
        }
        denom as f64 * self.constant * start.powf(self.exponent) * r.powf(start) / (1.0 - rho)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub tail: f64,
}

/// e(x) = exp(2πi x).
pub fn e(x: Complex64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI) * x).exp()
}

/// Evaluates Σ a(n) e(nz) over the known terms of `series` together with a
/// tail estimate from `bound`.
pub fn evaluate(series: &QSeries, z: Complex64, bound: GrowthBound) -> Result<Evaluation> {
    if z.im <= 0.0 {
        return Err(Error::invalid(
            "evaluation point must lie in the upper half-plane",
        ));
    }
    let d = series.denom() as f64;
    let value = series
        .terms()
        .map(|(ex, c)| e(z * (ex as f64 / d)) * to_f64(c))
        .sum();
    let r = (-2.0 * PI * z.im).exp();
    let tail = bound.tail(r, series.prec() as f64 / d, series.denom());
    Ok(Evaluation { value, tail })
}

/// As [`evaluate`], but fails with "insufficient precision" when the tail
/// estimate exceeds `tol`.
pub fn evaluate_within(
    series: &QSeries,
    z: Complex64,
    bound: GrowthBound,
    tol: f64,
) -> Result<Evaluation> {
    let ev = evaluate(series, z, bound)?;
    if !(ev.tail <= tol) {
        return Err(Error::InsufficientPrecision { tail: ev.tail, tol });
    }
    Ok(ev)
}

impl ClassicalForm {
    pub fn coeff(&self, n: i64) -> Result<Rational> {
        self.series.coeff_q(n)
    }

    pub fn evaluate(&self, z: Complex64, bound: GrowthBound) -> Result<Evaluation> {
        evaluate(&self.series, z, bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{divisors, rat_frac};

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(6);
        assert_eq!(b[1], rat_frac(-1, 2));
        assert_eq!(b[2], rat_frac(1, 6));
        assert_eq!(b[3], rat(0));
        assert_eq!(b[4], rat_frac(-1, 30));
        assert_eq!(b[6], rat_frac(1, 42));
    }

    #[test]
    fn eisenstein_coefficients() {
        let e4 = eisenstein(4, 10).unwrap();
        // −2·4/B₄ = 240
        assert_eq!(-rat(8) / rat_frac(-1, 30), rat(240));
        assert_eq!(e4.coeff(1).unwrap(), rat(240));
        assert_eq!(e4.coeff(2).unwrap(), rat(240 * 9));
        let e6 = eisenstein(6, 10).unwrap();
        assert_eq!(e6.coeff(0).unwrap(), rat(1));
        assert_eq!(e6.coeff(1).unwrap(), rat(-504));
        assert!(eisenstein(5, 10).is_err());
        assert!(eisenstein(2, 10).is_err());
    }

    #[test]
    fn delta_coefficients() {
        let d = delta(10);
        assert_eq!(d.coeff(0).unwrap(), rat(0));
        assert_eq!(d.coeff(1).unwrap(), rat(1));
        assert_eq!(d.coeff(2).unwrap(), rat(-24));
        assert_eq!(d.coeff(3).unwrap(), rat(252));
        assert!(d.coeff(10).is_err());
    }

    #[test]
    fn delta_from_eisenstein() {
        let prec = 50;
        let e4 = eisenstein(4, prec).unwrap().series;
        let e6 = eisenstein(6, prec).unwrap().series;
        let rhs = e4.pow(3).sub(&e6.pow(2)).scale(&rat_frac(1, 1728));
        assert_eq!(delta(prec).series, rhs);
    }

    #[test]
    fn eta_shape() {
        let h = eta(5);
        assert_eq!(h.series.denom(), 24);
        assert_eq!(h.series.coeff(1).unwrap(), rat(1));
        assert_eq!(h.series.coeff(25).unwrap(), rat(-1));
        // η²⁴ = Δ
        let d = h.series.pow(24).integralize().unwrap();
        assert_eq!(d.truncate(5), delta(5).series);
    }

    #[test]
    fn theta_coefficients() {
        let t = theta(30);
        assert_eq!(t.coeff(0).unwrap(), rat(1));
        assert_eq!(t.coeff(4).unwrap(), rat(2));
        assert_eq!(t.coeff(3).unwrap(), rat(0));
    }

    #[test]
    fn theta_fourth_power_is_r4() {
        let t4 = theta(51).series.pow(4);
        for n in 1..=50u64 {
            let r4: u64 = 8 * divisors(n).into_iter().filter(|d| d % 4 != 0).sum::<u64>();
            assert_eq!(t4.coeff_q(n as i64).unwrap(), rat(r4 as i64), "n = {n}");
        }
    }

    #[test]
    fn theta_at_i() {
        let z = Complex64::new(0.0, 1.0);
        let ev = theta(50).evaluate(z, GrowthBound::constant(2.0)).unwrap();
        let direct: f64 = (-7i32..=7)
            .map(|n| (-2.0 * PI * f64::from(n * n)).exp())
            .sum();
        assert!((ev.value.re - direct).abs() < 1e-15);
        assert!(ev.value.im.abs() < 1e-15);
    }

    #[test]
    fn constant_series_evaluates_to_one() {
        let one = QSeries::one(1, 10);
        let ev = evaluate(&one, Complex64::new(0.3, 0.7), GrowthBound::constant(1.0)).unwrap();
        assert!((ev.value - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn delta_self_consistency() {
        let z = Complex64::new(0.0, 1.0);
        let b = GrowthBound {
            constant: 2.0,
            exponent: 6.5,
        };
        let a = delta(60).evaluate(z, b).unwrap();
        let c = delta(80).evaluate(z, b).unwrap();
        assert!((a.value - c.value).norm() < 1e-20);
    }

    #[test]
    fn insufficient_precision_reported() {
        let z = Complex64::new(0.0, 0.01);
        let err = evaluate_within(&theta(10).series, z, GrowthBound::constant(2.0), 1e-10);
        assert!(matches!(err, Err(Error::InsufficientPrecision { .. })));
    }
}
