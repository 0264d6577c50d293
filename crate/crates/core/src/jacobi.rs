//! Index-1 Jacobi forms stored as tables `D ↦ c(D)`, `D = 4n − r²`.
//!
//! The two weak generators come out of theta quotients computed in
//! `u = q^(1/8)` and `w = ζ^(1/2)`:
//!
//! * φ₋₂,₁ = θ₁(τ,z)² / η(τ)⁶
//! * φ₀,₁ = 4 Σ_{i=2,3,4} θᵢ(τ,z)² / θᵢ(τ,0)²
//!
//! Both are collapsed onto `D` only after every `(n, r)` cell has been checked
//! against the index-1 rule that `c(n, r)` depends on `4n − r²` alone. The cusp
//! forms of weight 10 and 12 are Δ times these.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{rat, Rational};
use crate::classical::{delta, eta};
use crate::error::{Error, Result};
use crate::halfint::HalfIntegralForm;
use crate::qseries::{QSeries, TwoVarSeries};

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiCoeffs {
    weight: i64,
    prec_d: i64,
    cusp: bool,
    /// Nonzero coefficients only.
    table: BTreeMap<i64, Rational>,
}

pub const INDEX: i64 = 1;

impl JacobiCoeffs {
    /// Builds a table from `(D, c(D))` pairs. Zero values are dropped; entries
    /// at `D ≥ prec_d` are rejected.
    pub fn from_entries<I>(weight: i64, prec_d: i64, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut table = BTreeMap::new();
        for (d, c) in entries {
            if d >= prec_d {
                return Err(Error::invalid(format!(
                    "entry D = {d} beyond prec_D = {prec_d}"
                )));
            }
            if c.is_zero() {
                continue;
            }
            if d < -1 || d.rem_euclid(4) == 1 || d.rem_euclid(4) == 2 {
                return Err(Error::invalid(format!(
                    "index-1 Jacobi coefficient at impossible D = {d}"
                )));
            }
            table.insert(d, c);
        }
        let cusp = table.keys().all(|&d| d > 0);
        Ok(JacobiCoeffs {
            weight,
            prec_d,
            cusp,
            table,
        })
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn index(&self) -> i64 {
        INDEX
    }

    /// Table is valid for `D < prec_d`.
    pub fn prec_d(&self) -> i64 {
        self.prec_d
    }

    pub fn is_cusp(&self) -> bool {
        self.cusp
    }

    pub fn c(&self, d: i64) -> Result<Rational> {
        if d >= self.prec_d {
            return Err(Error::precision(
                format!("D = {d}"),
                format!("D < {}", self.prec_d),
            ));
        }
        Ok(self.table.get(&d).cloned().unwrap_or_else(Rational::zero))
    }

    /// Coefficient of `qⁿζʳ`.
    pub fn c_nr(&self, n: i64, r: i64) -> Result<Rational> {
        self.c(4 * n - r * r)
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.table.iter().map(|(&d, c)| (d, c))
    }

    /// Multiplies by a one-variable form `f(τ) = Σ a(j) qʲ` (integral powers).
    ///
    /// In `(n, r)` space this is `c'(n, r) = Σ_j a(j) c(n − j, r)`; since
    /// `4(n − j) − r² = D − 4j` the product stays a function of `D`.
    pub fn mul_q_series(&self, f: &QSeries, weight_shift: i64) -> Result<Self> {
        let f = f.integralize()?;
        // D ≥ −1 on the source, so j ≤ (D + 1)/4 is all we need
        let need = (self.prec_d + 1).div_euclid(4) + 1;
        let prec_d = if f.prec() >= need {
            self.prec_d
        } else {
            // largest D whose sum only touches known a(j)
            4 * f.prec() - 1
        };
        let mut out = BTreeMap::new();
        for d in -1..prec_d {
            if d.rem_euclid(4) == 1 || d.rem_euclid(4) == 2 {
                continue;
            }
            let mut s = Rational::zero();
            for (j, a) in f.terms() {
                let src = d - 4 * j;
                if src < -1 {
                    break;
                }
                if let Some(c) = self.table.get(&src) {
                    s += a * c;
                }
            }
            if !s.is_zero() {
                out.insert(d, s);
            }
        }
        Self::from_entries(self.weight + weight_shift, prec_d, out)
    }

    /// Eichler–Zagier image `h(τ) = Σ_{D ≥ 1} c(D) q^D`, weight `k − 1/2` on
    /// Γ₀(4).
    pub fn ez_to_half(&self) -> Result<HalfIntegralForm> {
        if !self.cusp {
            return Err(Error::invalid("Eichler-Zagier map needs a cusp form"));
        }
        HalfIntegralForm::new(
            self.weight - 1,
            4,
            self.prec_d as u64,
            self.table
                .iter()
                .filter(|(&d, _)| d >= 1)
                .map(|(&d, c)| (d as u64, c.clone())),
        )
    }

    /// Rebuilds the `(n, r)` cells with `n < rows` as a two-variable series.
    pub fn to_two_var(&self, rows: i64) -> Result<TwoVarSeries> {
        let mut terms = Vec::new();
        for n in 0..rows {
            let r_max = isqrt(4 * n + 1);
            for r in -r_max..=r_max {
                let c = self.c_nr(n, r)?;
                if !c.is_zero() {
                    terms.push((n, 2 * r, c));
                }
            }
        }
        Ok(TwoVarSeries::from_terms(1, rows, terms))
    }
}

fn isqrt(n: i64) -> i64 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Number of integral `q` rows needed to see every `D < prec_d` at `r ∈ {0, 1}`.
fn rows_for(prec_d: i64) -> i64 {
    (prec_d - 1).div_euclid(4) + i64::from((prec_d - 1).rem_euclid(4) != 0) + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ThetaKind {
    One,
    Two,
    Three,
    Four,
}

/// θᵢ(τ, z) in `u = q^(1/8)`, `w = ζ^(1/2)`, known below `u^prec_u`.
fn theta_two_var(kind: ThetaKind, prec_u: i64) -> TwoVarSeries {
    let mut terms = Vec::new();
    let half_integral = matches!(kind, ThetaKind::One | ThetaKind::Two);
    let signed = matches!(kind, ThetaKind::One | ThetaKind::Four);
    let mut n: i64 = 0;
    loop {
        let mut any = false;
        for m in [n, -n - 1] {
            // n and −n−1 for n ≥ 0 run through ℤ once: 0, −1, 1, −2, …
            let (u_exp, w_exp) = if half_integral {
                let t = 2 * m + 1;
                (t * t, t)
            } else {
                (4 * m * m, 2 * m)
            };
            if u_exp < prec_u {
                any = true;
                let sign = if signed && m.rem_euclid(2) == 1 {
                    -1
                } else {
                    1
                };
                terms.push((u_exp, w_exp, rat(sign)));
            }
        }
        if !any {
            break;
        }
        n += 1;
    }
    TwoVarSeries::from_terms(8, prec_u, terms)
}

/// θᵢ(τ, 0) as a one-variable series in `u`.
fn theta_null(kind: ThetaKind, prec_u: i64) -> QSeries {
    let t = theta_two_var(kind, prec_u);
    let mut terms = Vec::new();
    for e in 0..prec_u {
        if let Ok(Some(row)) = t.row(e) {
            let s: Rational = row.values().cloned().sum();
            terms.push((e, s));
        }
    }
    QSeries::from_terms(8, prec_u, terms)
}

/// Collapses a theta quotient to a `D`-table, checking that every cell with
/// `D < prec_d` agrees with the reference cell at `r ∈ {0, 1}`.
fn collapse(series: &TwoVarSeries, weight: i64, prec_d: i64) -> Result<JacobiCoeffs> {
    let cells = series.integral_cells()?;
    let rows = series.integral_prec().min(rows_for(prec_d));
    if rows < rows_for(prec_d) {
        return Err(Error::precision(
            format!("{} q-rows", rows_for(prec_d)),
            format!("{rows} q-rows"),
        ));
    }
    let get = |n: i64, r: i64| cells.get(&(n, r)).cloned().unwrap_or_else(Rational::zero);

    let mut reference: BTreeMap<i64, (i64, i64, Rational)> = BTreeMap::new();
    for d in -1..prec_d {
        if d.rem_euclid(4) == 1 || d.rem_euclid(4) == 2 {
            continue;
        }
        let r = d.rem_euclid(2);
        let n = (d + r * r) / 4;
        reference.insert(d, (n, r, get(n, r)));
    }

    for n in 0..rows {
        let r_max = isqrt(4 * n + 1);
        for r in -r_max..=r_max {
            let d = 4 * n - r * r;
            if d >= prec_d {
                continue;
            }
            let (n0, r0, expected) = &reference[&d];
            if get(n, r) != *expected {
                return Err(Error::DDependenceViolated {
                    d,
                    n1: *n0,
                    r1: *r0,
                    n2: n,
                    r2: r,
                });
            }
        }
    }
    // below D = −1 everything must vanish
    if let Some((&(n, r), _)) = cells
        .iter()
        .find(|(&(n, r), c)| n < rows && 4 * n - r * r < -1 && !c.is_zero())
    {
        return Err(Error::DDependenceViolated {
            d: 4 * n - r * r,
            n1: n,
            r1: r,
            n2: n,
            r2: r,
        });
    }

    JacobiCoeffs::from_entries(
        weight,
        prec_d,
        reference.into_iter().map(|(d, (_, _, c))| (d, c)),
    )
}

/// θ₁(τ,z)² / η⁶ as a two-variable series covering `rows` integral q-rows.
pub fn phi_m2_series(rows: i64) -> Result<TwoVarSeries> {
    let prec_u = 8 * (rows + 1);
    let t1 = theta_two_var(ThetaKind::One, prec_u);
    let eta6 = eta(rows + 2).series.pow(6);
    Ok(t1.mul(&t1).mul_q(&eta6.inverse()?))
}

/// 4 Σ θᵢ(τ,z)²/θᵢ(τ,0)² over i = 2, 3, 4.
pub fn phi_0_series(rows: i64) -> Result<TwoVarSeries> {
    let prec_u = 8 * (rows + 1);
    let mut acc: Option<TwoVarSeries> = None;
    for kind in [ThetaKind::Two, ThetaKind::Three, ThetaKind::Four] {
        let t = theta_two_var(kind, prec_u);
        let null = theta_null(kind, prec_u);
        let term = t.mul(&t).mul_q(&null.pow(2).inverse()?);
        acc = Some(match acc {
            Some(a) => a.add(&term),
            None => term,
        });
    }
    Ok(acc.expect("three terms").scale(&rat(4)))
}

/// The weak Jacobi forms `(φ₀,₁, φ₋₂,₁)`, valid for `D < prec_d`.
pub fn weak_generators(prec_d: i64) -> Result<(JacobiCoeffs, JacobiCoeffs)> {
    if prec_d < 4 {
        return Err(Error::invalid(format!(
            "prec_D must be at least 4, got {prec_d}"
        )));
    }
    let rows = rows_for(prec_d);
    let phi0 = collapse(&phi_0_series(rows)?, 0, prec_d)?;
    let phim2 = collapse(&phi_m2_series(rows)?, -2, prec_d)?;
    Ok((phi0, phim2))
}

/// φ₁₀,₁ = Δ·φ₋₂,₁ or φ₁₂,₁ = Δ·φ₀,₁, normalized with c(3) = 1.
pub fn jacobi_cusp(k: i64, prec_d: i64) -> Result<JacobiCoeffs> {
    if k != 10 && k != 12 {
        return Err(Error::invalid(format!(
            "Jacobi cusp forms available for k = 10, 12; got {k}"
        )));
    }
    let (phi0, phim2) = weak_generators(prec_d.max(4))?;
    let weak = if k == 10 { phim2 } else { phi0 };
    let d = delta(rows_for(prec_d.max(4)) + 1).series;
    let mut cusp = weak.mul_q_series(&d, 12)?;
    if cusp.prec_d > prec_d {
        cusp.prec_d = prec_d;
        cusp.table.retain(|&d, _| d < prec_d);
    }
    Ok(cusp)
}
