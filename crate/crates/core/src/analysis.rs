//! Non-vanishing scans, Bessel periods over class groups, the squarefree
//! sieve rearrangement and coefficient growth reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use num_integer::Integer;

use crate::arith::{is_squarefree, moebius, rational_str, to_f64, Rational};
use crate::bqf::{reduced_forms, Bqf, ClassCharacter, ClassGroup};
use crate::error::{Error, Result};
use crate::halfint::HalfIntegralForm;
use crate::siegel::SiegelForm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Form(Bqf),
    Index(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    pub d: u64,
    pub witness: Witness,
    #[serde(with = "rational_str")]
    pub value: Rational,
}

/// Squarefree `d < X` carrying a nonzero coefficient, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    #[serde(rename = "X")]
    pub x: u64,
    pub hits: Vec<Hit>,
}

impl ScanReport {
    pub fn ds(&self) -> Vec<u64> {
        self.hits.iter().map(|h| h.d).collect()
    }

    pub fn witnesses(&self) -> BTreeMap<u64, (&Witness, &Rational)> {
        self.hits
            .iter()
            .map(|h| (h.d, (&h.witness, &h.value)))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,witness,value\n");
        for h in &self.hits {
            let w = match &h.witness {
                Witness::Form(f) => format!("\"[{},{},{}]\"", f.a, f.b, f.c),
                Witness::Index(n) => n.to_string(),
            };
            let _ = writeln!(
                out,
                "{},{},{}",
                h.d,
                w,
                crate::arith::rational_to_string(&h.value)
            );
        }
        out
    }
}

pub fn scan_half(f: &HalfIntegralForm, x: u64) -> Result<ScanReport> {
    if x > f.prec() {
        return Err(Error::precision(
            format!("X = {x}"),
            format!("X ≤ {}", f.prec()),
        ));
    }
    let mut hits = Vec::new();
    for (n, c) in f.entries() {
        if n >= x {
            break;
        }
        if is_squarefree(n) {
            hits.push(Hit {
                d: n,
                witness: Witness::Index(n),
                value: c.clone(),
            });
        }
    }
    Ok(ScanReport { x, hits })
}

fn scan_discs<F>(
    f: &SiegelForm,
    x: u64,
    admissible: F,
    fundamental_only: bool,
) -> Result<ScanReport>
where
    F: Fn(u64) -> bool + Sync,
{
    if x as i64 > f.prec_disc() {
        return Err(Error::precision(
            format!("X = {x}"),
            format!("X ≤ {}", f.prec_disc()),
        ));
    }
    let hits: Vec<Option<Hit>> = (1..x)
        .into_par_iter()
        .filter(|&d| d % 4 == 0 || d % 4 == 3)
        .filter(|&d| admissible(d))
        .map(|d| -> Result<Option<Hit>> {
            for form in reduced_forms(d as i64)? {
                if fundamental_only && !form.is_fundamental() || !form.is_primitive() {
                    continue;
                }
                let v = f.coefficient(&form)?;
                if !v.is_zero() {
                    return Ok(Some(Hit {
                        d,
                        witness: Witness::Form(form),
                        value: v,
                    }));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    Ok(ScanReport {
        x,
        hits: hits.into_iter().flatten().collect(),
    })
}

/// Squarefree `d < X` (necessarily `d ≡ 3 mod 4`) for which some reduced form
/// of discriminant −d has a nonzero coefficient.
pub fn scan_fundamental(f: &SiegelForm, x: u64) -> Result<ScanReport> {
    scan_discs(f, x, is_squarefree, true)
}

/// Every discriminant −d with `d < X`, witnessed by a primitive reduced form.
/// Hits here need not be squarefree.
pub fn scan_primitive(f: &SiegelForm, x: u64) -> Result<ScanReport> {
    scan_discs(f, x, |_| true, false)
}

/// R(F, K, Λ) = Σ_c a(F, c) Λ⁻¹(c).
///
/// Coefficients are summed exactly per value of Λ before the roots of unity
/// enter, and the bucket at Λ = 1 is subtracted from every bucket (the roots
/// in the image of a nontrivial Λ sum to zero). Class-constant coefficients
/// therefore give exactly 0 against nontrivial Λ, and the trivial character
/// gives the exact rational sum.
pub fn bessel_period(
    f: &SiegelForm,
    group: &ClassGroup,
    chi: &ClassCharacter,
) -> Result<Complex64> {
    let l = group.exponent();
    let mut buckets: BTreeMap<u64, Rational> = BTreeMap::new();
    for i in 0..group.class_number() {
        let a = f.coefficient_by_class(group, i)?;
        *buckets
            .entry(group.char_phase(chi, i))
            .or_insert_with(Rational::zero) += a;
    }
    let base = buckets.get(&0).cloned().unwrap_or_else(Rational::zero);
    if buckets.len() == 1 && buckets.contains_key(&0) {
        return Ok(Complex64::new(to_f64(&base), 0.0));
    }
    let mut s = Complex64::zero();
    for (k, v) in &buckets {
        let root = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * (*k as f64) / l as f64);
        s += to_f64(&(v - &base)) * root;
    }
    Ok(s)
}

/// Largest deviation of Σ_Λ R(F, K, Λ)Λ(c) from h·a(F, c) over all classes c.
pub fn fourier_inversion_check(f: &SiegelForm, group: &ClassGroup) -> Result<f64> {
    let chars = group.characters();
    let periods: Vec<Complex64> = chars
        .iter()
        .map(|chi| bessel_period(f, group, chi))
        .collect::<Result<_>>()?;
    let h = group.class_number() as f64;
    let mut worst: f64 = 0.0;
    for i in 0..group.class_number() {
        let a = to_f64(&f.coefficient_by_class(group, i)?);
        let s: Complex64 = chars
            .iter()
            .zip(&periods)
            .map(|(chi, r)| r * group.char_eval(chi, i))
            .sum();
        worst = worst.max((s - h * a).norm());
    }
    Ok(worst)
}

/// Max |a(F, c)| over the classes, the scale for the inversion tolerance.
pub fn inversion_scale(f: &SiegelForm, group: &ClassGroup) -> Result<f64> {
    let mut m: f64 = 0.0;
    for i in 0..group.class_number() {
        m = m.max(to_f64(&f.coefficient_by_class(group, i)?).abs());
    }
    Ok(1.0 + m)
}

fn sieve_pre(f: &HalfIntegralForm, m: u64, cutoff: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::invalid("M must be positive"));
    }
    if cutoff >= f.prec() {
        return Err(Error::precision(
            format!("cutoff {cutoff}"),
            format!("cutoff < {}", f.prec()),
        ));
    }
    Ok(())
}

fn weight_term(f: &HalfIntegralForm, n: u64, x: f64) -> Result<f64> {
    let a = f.normalized_coeff(n)?;
    Ok(a * a * (-(n as f64) / x).exp())
}

/// S(M, X; f) = Σ_{d ≤ D_max squarefree, (d, M) = 1} |ã(f, d)|² e^(−d/X).
pub fn sieve_sum_direct(f: &HalfIntegralForm, m: u64, x: f64, cutoff: u64) -> Result<f64> {
    sieve_pre(f, m, cutoff)?;
    let mut s = 0.0;
    for d in 1..=cutoff {
        if d.gcd(&m) == 1 && is_squarefree(d) {
            s += weight_term(f, d, x)?;
        }
    }
    Ok(s)
}

/// Σ_{r squarefree, (r, M) = 1} μ(r) Σ_{(n, M) = 1, nr² ≤ D_max} |ã(f, nr²)|² e^(−nr²/X).
pub fn sieve_sum_rearranged(f: &HalfIntegralForm, m: u64, x: f64, cutoff: u64) -> Result<f64> {
    sieve_pre(f, m, cutoff)?;
    let mut s = 0.0;
    let mut r = 1u64;
    while r * r <= cutoff {
        let mu = moebius(r);
        if mu != 0 && r.gcd(&m) == 1 {
            let mut inner = 0.0;
            for n in 1..=cutoff / (r * r) {
                if n.gcd(&m) == 1 {
                    inner += weight_term(f, n * r * r, x)?;
                }
            }
            s += f64::from(mu) * inner;
        }
        r += 1;
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub d: u64,
    pub normalized_sq: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub delta: f64,
    pub max_ratio: f64,
    pub argmax: Option<u64>,
    pub table: Vec<GrowthRow>,
}

/// |ã(f, d)|² / d^(1 − δ) over squarefree d < X. Informational only.
pub fn growth_report(f: &HalfIntegralForm, x: u64, delta: f64) -> Result<GrowthReport> {
    if x > f.prec() {
        return Err(Error::precision(
            format!("X = {x}"),
            format!("X ≤ {}", f.prec()),
        ));
    }
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::invalid(format!(
            "delta must lie in [0, 1), got {delta}"
        )));
    }
    let mut table = Vec::new();
    let (mut max_ratio, mut argmax) = (0.0, None);
    for (d, _) in f.entries() {
        if d >= x {
            break;
        }
        if !is_squarefree(d) {
            continue;
        }
        let a = f.normalized_coeff(d)?;
        let sq = a * a;
        let ratio = sq / (d as f64).powf(1.0 - delta);
        if ratio > max_ratio {
            max_ratio = ratio;
            argmax = Some(d);
        }
        table.push(GrowthRow {
            d,
            normalized_sq: sq,
            ratio,
        });
    }
    Ok(GrowthReport {
        delta,
        max_ratio,
        argmax,
        table,
    })
}
