//! Half-integral weight forms: coefficient containers, the plus-space support
//! test, the theta multiplier, numerical modularity checks and the map that
//! extracts a half-integral weight form from a Siegel form.
//!
//! Weights are stored as `kappa`, meaning weight `kappa + 1/2`. The form
//! extracted from a Siegel form of even weight `k` has `kappa = k − 1`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{eps, is_prime, kronecker_extended, rat, sqrt_classes, to_f64, Rational};
use crate::bqf::{Bqf, Mat2};
use crate::classical::{evaluate, Evaluation, GrowthBound};
use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::siegel::SiegelForm;

#[derive(Clone, Debug, PartialEq)]
pub struct HalfIntegralForm {
    kappa: i64,
    level: u64,
    prec: u64,
    /// Nonzero coefficients, `1 ≤ n < prec`.
    coeffs: BTreeMap<u64, Rational>,
}

impl HalfIntegralForm {
    pub fn new<I>(kappa: i64, level: u64, prec: u64, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Rational)>,
    {
        if level == 0 || level % 4 != 0 {
            return Err(Error::invalid(format!(
                "level must be a multiple of 4, got {level}"
            )));
        }
        let mut coeffs = BTreeMap::new();
        for (n, c) in entries {
            if n == 0 || n >= prec {
                return Err(Error::invalid(format!(
                    "coefficient index {n} outside 1..{prec}"
                )));
            }
            if !c.is_zero() {
                coeffs.insert(n, c);
            }
        }
        Ok(HalfIntegralForm {
            kappa,
            level,
            prec,
            coeffs,
        })
    }

    pub fn zero(kappa: i64, level: u64, prec: u64) -> Result<Self> {
        Self::new(kappa, level, prec, std::iter::empty())
    }

    pub fn kappa(&self) -> i64 {
        self.kappa
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Coefficients are known for `n < prec`.
    pub fn prec(&self) -> u64 {
        self.prec
    }

    pub fn coeff(&self, n: u64) -> Result<Rational> {
        if n >= self.prec {
            return Err(Error::precision(
                format!("a({n})"),
                format!("n < {}", self.prec),
            ));
        }
        Ok(self.coeffs.get(&n).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, &Rational)> + '_ {
        self.coeffs.iter().map(|(&n, c)| (n, c))
    }

    /// ã(f, n) = a(f, n)·n^(1/4 − κ/2).
    pub fn normalized_coeff(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::invalid("normalized coefficients start at n = 1"));
        }
        let a = self.coeff(n)?;
        if a.is_zero() {
            return Ok(0.0);
        }
        Ok(to_f64(&a) * (n as f64).powf(0.25 - self.kappa as f64 / 2.0))
    }

    /// True iff a(n) = 0 whenever n ≡ 2 or n ≡ (−1)^(κ+1) (mod 4).
    pub fn plus_space_support_ok(&self) -> bool {
        let forbidden = if self.kappa % 2 == 0 { 3 } else { 1 };
        self.coeffs
            .keys()
            .all(|&n| n % 4 != 2 && n % 4 != forbidden)
    }

    pub fn to_qseries(&self) -> QSeries {
        QSeries::from_terms(
            1,
            self.prec as i64,
            self.coeffs.iter().map(|(&n, c)| (n as i64, c.clone())),
        )
    }

    /// Growth bound `|a(n)| ≤ C n^(κ/2 + 1/2)` with `C` fitted to the table.
    pub fn growth_bound(&self) -> GrowthBound {
        GrowthBound::fit(
            self.coeffs.iter().map(|(&n, c)| (n as f64, c)),
            self.kappa as f64 / 2.0 + 0.5,
        )
    }

    pub fn evaluate(&self, z: Complex64, bound: GrowthBound) -> Result<Evaluation> {
        evaluate(&self.to_qseries(), z, bound)
    }
}

pub fn in_gamma0(m: &Mat2, level: u64) -> bool {
    m.det() == 1 && m.c.rem_euclid(level as i64) == 0
}

/// j(A, z) = ε_d⁻¹ (c/d) (cz + d)^(1/2) for A = [a, b; c, d] ∈ Γ₀(4), principal
/// branch of the square root.
pub fn theta_multiplier(m: &Mat2, z: Complex64) -> Result<Complex64> {
    if !in_gamma0(m, 4) {
        return Err(Error::invalid(format!("matrix {m:?} is not in Γ₀(4)")));
    }
    if z.im <= 0.0 {
        return Err(Error::invalid("point must lie in the upper half-plane"));
    }
    let sym = f64::from(kronecker_extended(m.c, m.d)?);
    let root = (z * m.c as f64 + m.d as f64).sqrt();
    Ok(eps(m.d)?.inv() * sym * root)
}

pub fn mobius_action(m: &Mat2, z: Complex64) -> Complex64 {
    (z * m.a as f64 + m.b as f64) / (z * m.c as f64 + m.d as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModularityReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub relative_error: f64,
    /// Tail contribution relative to the compared values.
    pub relative_tail: f64,
    pub pass: bool,
}

/// Compares f(Az) with j(A, z)^(2κ+1) f(z), using the fitted growth bound of
/// `f` for the truncation tails.
pub fn modularity_check(
    f: &HalfIntegralForm,
    m: &Mat2,
    z: Complex64,
    tol: f64,
) -> Result<ModularityReport> {
    modularity_check_with(f, m, z, tol, f.growth_bound())
}

pub fn modularity_check_with(
    f: &HalfIntegralForm,
    m: &Mat2,
    z: Complex64,
    tol: f64,
    bound: GrowthBound,
) -> Result<ModularityReport> {
    if !in_gamma0(m, f.level()) {
        return Err(Error::invalid(format!(
            "matrix {m:?} is not in Γ₀({})",
            f.level()
        )));
    }
    let series = f.to_qseries();
    let at_z = evaluate(&series, z, bound)?;
    let at_az = evaluate(&series, mobius_action(m, z), bound)?;
    let factor = theta_multiplier(m, z)?.powi((2 * f.kappa() + 1) as i32);
    let lhs = at_az.value;
    let rhs = factor * at_z.value;
    let scale = lhs.norm().max(rhs.norm());
    let tail = at_az.tail + factor.norm() * at_z.tail;
    let (relative_error, relative_tail) = if scale == 0.0 {
        (0.0, if tail == 0.0 { 0.0 } else { f64::INFINITY })
    } else {
        ((lhs - rhs).norm() / scale, tail / scale)
    };
    if relative_tail > tol {
        return Err(Error::InsufficientPrecision {
            tail: relative_tail,
            tol,
        });
    }
    Ok(ModularityReport {
        lhs,
        rhs,
        relative_error,
        relative_tail,
        pass: relative_error < tol,
    })
}

/// The coefficient c(m) = Σ_{0 ≤ μ < 2p, μ² ≡ −m (4p)} a(F, ((m + μ²)/4p, μ, p)).
pub fn extracted_coefficient(f: &SiegelForm, p: u64, m: u64) -> Result<Rational> {
    let mut s = Rational::zero();
    for mu in sqrt_classes(m, p) {
        let n = (m + mu * mu) / (4 * p);
        let t = Bqf::new(n as i64, mu as i64, p as i64);
        s += f.coefficient(&t)?;
    }
    Ok(s)
}

/// h(τ) = Σ_{1 ≤ m < prec} c(m) e(mτ), weight k − 1/2 on Γ₀(4p·N).
///
/// `p` must be an odd prime not dividing the level of `f`. `p = 1` is
/// accepted as the degenerate case, where the result coincides with the
/// Eichler–Zagier image of the Jacobi form underlying a Maass lift.
pub fn extract_half_integral(f: &SiegelForm, p: u64, prec: u64) -> Result<HalfIntegralForm> {
    if f.weight() % 2 != 0 {
        return Err(Error::invalid("extraction is only defined for even weight"));
    }
    if p != 1 && (p % 2 == 0 || !is_prime(p)) {
        return Err(Error::invalid(format!("p must be an odd prime, got {p}")));
    }
    if p != 1 && f.level() % p == 0 {
        return Err(Error::invalid(format!(
            "p = {p} divides the level {}",
            f.level()
        )));
    }
    if prec as i64 > f.prec_disc() {
        return Err(Error::precision(
            format!("m < {prec}"),
            format!("|disc| < {}", f.prec_disc()),
        ));
    }
    let coeffs: Vec<(u64, Rational)> = (1..prec)
        .into_par_iter()
        .map(|m| extracted_coefficient(f, p, m).map(|c| (m, c)))
        .collect::<Result<_>>()?;
    HalfIntegralForm::new(f.weight() - 1, 4 * p * f.level(), prec, coeffs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoublingCheck {
    pub d0: u64,
    pub extracted: Rational,
    pub coefficient: Rational,
}

impl DoublingCheck {
    pub fn holds(&self) -> bool {
        self.extracted == rat(2) * &self.coefficient
    }
}

/// For T = (a₀, b₀, p) with p an odd prime, compares c_h(d₀) with 2·a(F, T)
/// where h is the extraction at p and d₀ = 4a₀p − b₀².
///
/// When p | b₀ the two square roots of −d₀ mod 4p coincide and the identity
/// degenerates to c_h(d₀) = a(F, T); such T are rejected.
pub fn doubling_identity_check(f: &SiegelForm, t: &Bqf) -> Result<DoublingCheck> {
    let p = t.c;
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::invalid(format!(
            "lower-right entry {p} is not an odd prime"
        )));
    }
    if !t.is_positive_definite() {
        return Err(Error::NotPositiveDefinite(t.a, t.b, t.c));
    }
    if t.b % p == 0 {
        return Err(Error::invalid(format!(
            "p = {p} divides b₀ = {}; the two root classes coincide",
            t.b
        )));
    }
    let d0 = (-t.disc()) as u64;
    Ok(DoublingCheck {
        d0,
        extracted: extracted_coefficient(f, p as u64, d0)?,
        coefficient: f.coefficient(t)?,
    })
}
