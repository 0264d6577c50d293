//! Built-in verification suites run by `siegelfc check`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{
    fourier_inversion_check, inversion_scale, sieve_sum_direct, sieve_sum_rearranged,
};
use crate::arith::{is_fundamental_discriminant, Rational};
use crate::bqf::{find_prime_represented, Bqf, ClassGroup, Mat2};
use crate::classical::{evaluate, theta, GrowthBound};
use crate::error::Result;
use crate::halfint::{
    doubling_identity_check, extract_half_integral, mobius_action, theta_multiplier,
    HalfIntegralForm,
};
use crate::jacobi::{jacobi_cusp, JacobiCoeffs};
use crate::siegel::SiegelForm;

pub const SUITES: [&str; 5] = ["theta", "ez", "inversion", "sieve", "doubling"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub tolerance: f64,
}

/// φ₁₀,₁ and φ₁₂,₁ with their Maass lifts, all to the same precision.
pub struct Corpus {
    pub prec: i64,
    pub phi10: JacobiCoeffs,
    pub phi12: JacobiCoeffs,
    pub f10: SiegelForm,
    pub f12: SiegelForm,
}

impl Corpus {
    pub fn new(prec: i64) -> Result<Self> {
        let phi10 = jacobi_cusp(10, prec)?;
        let phi12 = jacobi_cusp(12, prec)?;
        let f10 = SiegelForm::maass_lift(&phi10, prec)?;
        let f12 = SiegelForm::maass_lift(&phi12, prec)?;
        Ok(Corpus {
            prec,
            phi10,
            phi12,
            f10,
            f12,
        })
    }

    fn pairs(&self) -> [(&'static str, &JacobiCoeffs, &SiegelForm); 2] {
        [
            ("F10", &self.phi10, &self.f10),
            ("F12", &self.phi12, &self.f12),
        ]
    }
}

pub fn theta_matrices() -> [Mat2; 10] {
    [
        Mat2::new(1, 0, 4, 1),
        Mat2::new(1, 1, 4, 5),
        Mat2::new(3, 1, 8, 3),
        Mat2::new(3, 2, 4, 3),
        Mat2::new(5, 2, 12, 5),
        Mat2::new(7, 3, 16, 7),
        Mat2::new(9, 2, 4, 1),
        Mat2::new(1, 0, -4, 1),
        Mat2::new(-1, 0, 4, -1),
        Mat2::new(5, -1, 16, -3),
    ]
}

pub fn theta_points() -> [Complex64; 3] {
    [
        Complex64::new(0.0, 0.5),
        Complex64::new(0.2, 1.0 / 3.0),
        Complex64::new(0.0, 2.0),
    ]
}

/// θ(Az) against j(A, z)θ(z) for every test matrix and point.
pub fn theta_suite() -> Result<Vec<CheckResult>> {
    let tol = 1e-8;
    let th = theta(200_000).series;
    let bound = GrowthBound::constant(2.0);
    let mut out = Vec::new();
    for m in theta_matrices() {
        for z in theta_points() {
            let lhs = evaluate(&th, mobius_action(&m, z), bound)?;
            let rhs = theta_multiplier(&m, z)? * evaluate(&th, z, bound)?.value;
            let err = (lhs.value - rhs).norm() / rhs.norm();
            out.push(CheckResult {
                suite: "theta",
                name: format!("[{},{};{},{}] at {z}", m.a, m.b, m.c, m.d),
                pass: err < tol && lhs.tail < tol,
                measured: err,
                tolerance: tol,
            });
        }
    }
    Ok(out)
}

/// Extraction at p = 1 against the Eichler–Zagier image, coefficient by coefficient.
pub fn ez_suite(corpus: &Corpus) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (name, phi, f) in corpus.pairs() {
        let h = extract_half_integral(f, 1, corpus.prec as u64)?;
        let ez = phi.ez_to_half()?;
        let mismatches = (1..corpus.prec as u64)
            .filter(|&m| h.coeff(m).ok() != ez.coeff(m).ok())
            .count();
        out.push(CheckResult {
            suite: "ez",
            name: format!("{name}: extract(p = 1) = ez, m < {}", corpus.prec),
            pass: mismatches == 0 && h.kappa() == ez.kappa(),
            measured: mismatches as f64,
            tolerance: 0.0,
        });
    }
    Ok(out)
}

/// Fourier inversion defect on every fundamental discriminant −d, d ≤ `max_d`.
pub fn inversion_suite(corpus: &Corpus, max_d: i64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (name, _, f) in corpus.pairs() {
        let mut worst: f64 = 0.0;
        for d in 3..=max_d.min(corpus.prec - 1) {
            if !is_fundamental_discriminant(-d) {
                continue;
            }
            let g = ClassGroup::new(d)?;
            worst = worst.max(fourier_inversion_check(f, &g)? / inversion_scale(f, &g)?);
        }
        out.push(CheckResult {
            suite: "inversion",
            name: format!("{name}: fundamental d ≤ {max_d}"),
            pass: worst < 1e-9,
            measured: worst,
            tolerance: 1e-9,
        });
    }
    Ok(out)
}

/// A seeded random table of small rationals, about 60% of indices nonzero.
pub fn random_half_table(seed: u64, prec: u64) -> Result<HalfIntegralForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kappa = rng.gen_range(1..12);
    let mut entries = Vec::new();
    for n in 1..prec {
        if rng.gen_bool(0.6) {
            let num: i64 = rng.gen_range(-1000..1000);
            let den: i64 = rng.gen_range(1..30);
            entries.push((n, Rational::new(num.into(), den.into())));
        }
    }
    HalfIntegralForm::new(kappa, 4, prec, entries)
}

/// Direct against rearranged sieve sums over the (M, X) grid {1, 2, 6} × {10, 50}.
pub fn sieve_suite(corpus: &Corpus) -> Result<Vec<CheckResult>> {
    let tol = 1e-10;
    let mut forms = vec![
        ("ez(phi10)".to_string(), corpus.phi10.ez_to_half()?),
        ("ez(phi12)".to_string(), corpus.phi12.ez_to_half()?),
        (
            "extract(F10, 3)".to_string(),
            extract_half_integral(&corpus.f10, 3, corpus.prec as u64)?,
        ),
    ];
    for seed in 0..10 {
        forms.push((format!("random #{seed}"), random_half_table(seed, 400)?));
    }
    let mut out = Vec::new();
    for (name, f) in &forms {
        let cutoff = f.prec() - 1;
        let mut worst: f64 = 0.0;
        for m in [1u64, 2, 6] {
            for x in [10.0, 50.0] {
                let a = sieve_sum_direct(f, m, x, cutoff)?;
                let b = sieve_sum_rearranged(f, m, x, cutoff)?;
                let rel = if a == 0.0 && b == 0.0 {
                    0.0
                } else {
                    (a - b).abs() / a.abs().max(b.abs())
                };
                worst = worst.max(rel);
            }
        }
        out.push(CheckResult {
            suite: "sieve",
            name: format!("{name}, D_max = {cutoff}"),
            pass: worst < tol,
            measured: worst,
            tolerance: tol,
        });
    }
    Ok(out)
}

/// Forms moved by [`find_prime_represented`] to `(a₀, b₀, p)` for the doubling suite.
pub const DOUBLING_SEEDS: [Bqf; 5] = [
    Bqf { a: 1, b: 1, c: 2 },
    Bqf { a: 1, b: 0, c: 1 },
    Bqf { a: 2, b: 1, c: 2 },
    Bqf { a: 2, b: 1, c: 3 },
    Bqf { a: 1, b: 1, c: 5 },
];

/// `(1, 1, 3)` followed by the moved seeds; `avoid = d` keeps `p ∤ b₀`.
pub fn doubling_targets() -> Result<Vec<Bqf>> {
    let mut out = vec![Bqf::new(1, 1, 3)];
    for f in DOUBLING_SEEDS {
        let rep = find_prime_represented(&f, -f.disc(), 50)?;
        out.push(rep.transformed);
    }
    Ok(out)
}

pub fn doubling_suite(corpus: &Corpus) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let targets = doubling_targets()?;
    for (name, _, f) in corpus.pairs() {
        for t in &targets {
            let c = doubling_identity_check(f, t)?;
            out.push(CheckResult {
                suite: "doubling",
                name: format!("{name}: T = {t}, d0 = {}", c.d0),
                pass: c.holds(),
                measured: if c.holds() { 0.0 } else { 1.0 },
                tolerance: 0.0,
            });
        }
    }
    Ok(out)
}

/// Runs the named suite, or every suite for `"all"`.
pub fn run_suite(name: &str, prec: i64) -> Result<Vec<CheckResult>> {
    let wanted: Vec<&str> = if name == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&name) {
        vec![name]
    } else {
        return Err(crate::Error::invalid(format!("unknown suite {name:?}")));
    };
    let needs_corpus = wanted.iter().any(|&s| s != "theta");
    let corpus = if needs_corpus {
        Some(Corpus::new(prec)?)
    } else {
        None
    };
    let mut out = Vec::new();
    for s in wanted {
        let c = corpus.as_ref();
        out.extend(match s {
            "theta" => theta_suite()?,
            "ez" => ez_suite(c.unwrap())?,
            "inversion" => inversion_suite(c.unwrap(), 100)?,
            "sieve" => sieve_suite(c.unwrap())?,
            _ => doubling_suite(c.unwrap())?,
        });
    }
    Ok(out)
}
