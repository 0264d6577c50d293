//! Degree-2 Siegel cusp forms as coefficient providers `T ↦ a(F, T)`.
//!
//! Coefficients are keyed by the reduced form of `T`: a(F, AᵀTA) = a(F, T) for
//! all A ∈ SL₂(ℤ), so reduction is the canonical key. Values are computed
//! lazily and memoized behind a read-write lock.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{divisors, Rational};
use crate::bqf::{reduced_forms, Bqf, ClassGroup};
use crate::error::{Error, Result};
use crate::jacobi::JacobiCoeffs;

pub type CoefficientFn = dyn Fn(&Bqf) -> Result<Rational> + Send + Sync;

#[derive(Clone)]
pub enum Provider {
    /// Maass lift of an index-1 Jacobi cusp form.
    MaassLift(JacobiCoeffs),
    /// Explicit values on reduced forms; missing keys are zero.
    Table(HashMap<Bqf, Rational>),
    /// Arbitrary function of the reduced form.
    Custom(Arc<CoefficientFn>),
}

impl fmt::Debug for Provider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provider::MaassLift(phi) => write!(f, "MaassLift(weight {})", phi.weight()),
            Provider::Table(t) => write!(f, "Table({} entries)", t.len()),
            Provider::Custom(_) => write!(f, "Custom"),
        }
    }
}

#[derive(Debug)]
pub struct SiegelForm {
    weight: i64,
    level: u64,
    prec_disc: i64,
    provider: Provider,
    cache: RwLock<HashMap<Bqf, Rational>>,
}

impl Clone for SiegelForm {
    fn clone(&self) -> Self {
        SiegelForm {
            weight: self.weight,
            level: self.level,
            prec_disc: self.prec_disc,
            provider: self.provider.clone(),
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl SiegelForm {
    pub fn new(weight: i64, level: u64, prec_disc: i64, provider: Provider) -> Result<Self> {
        if weight % 2 != 0 {
            return Err(Error::invalid(format!(
                "Siegel weight must be even, got {weight}"
            )));
        }
        if level == 0 {
            return Err(Error::invalid("level must be positive"));
        }
        Ok(SiegelForm {
            weight,
            level,
            prec_disc,
            provider,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Maass lift: a(F, (a,b,c)) = Σ_{d | gcd(a,b,c)} d^(k−1) c_φ((4ac − b²)/d²).
    pub fn maass_lift(phi: &JacobiCoeffs, prec_disc: i64) -> Result<Self> {
        if !phi.is_cusp() {
            return Err(Error::invalid("Maass lift needs a Jacobi cusp form"));
        }
        if prec_disc > phi.prec_d() {
            return Err(Error::precision(
                format!("|disc| < {prec_disc}"),
                format!("Jacobi table valid for D < {}", phi.prec_d()),
            ));
        }
        Self::new(phi.weight(), 1, prec_disc, Provider::MaassLift(phi.clone()))
    }

    /// Form given by explicit reduced-form values.
    pub fn from_table<I>(weight: i64, level: u64, prec_disc: i64, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Bqf, Rational)>,
    {
        let mut table = HashMap::new();
        for (f, v) in entries {
            if !f.is_positive_definite() {
                return Err(Error::NotPositiveDefinite(f.a, f.b, f.c));
            }
            if !f.is_reduced() {
                return Err(Error::invalid(format!("table key {f} is not reduced")));
            }
            if -f.disc() >= prec_disc {
                return Err(Error::invalid(format!(
                    "table key {f} beyond prec_disc {prec_disc}"
                )));
            }
            if !v.is_zero() {
                table.insert(f, v);
            }
        }
        Self::new(weight, level, prec_disc, Provider::Table(table))
    }

    pub fn zero(weight: i64, level: u64, prec_disc: i64) -> Result<Self> {
        Self::new(weight, level, prec_disc, Provider::Table(HashMap::new()))
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Coefficients are available for `|disc T| < prec_disc`.
    pub fn prec_disc(&self) -> i64 {
        self.prec_disc
    }

    pub fn provider(&self) -> &Provider {
        &self.provider
    }

    pub fn coefficient(&self, t: &Bqf) -> Result<Rational> {
        if !t.is_positive_definite() {
            return Err(Error::NotPositiveDefinite(t.a, t.b, t.c));
        }
        let d = -t.disc();
        if d >= self.prec_disc {
            return Err(Error::precision(
                format!("|disc| = {d}"),
                format!("|disc| < {}", self.prec_disc),
            ));
        }
        let key = t.reduced()?;
        if let Some(v) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute(&key)?;
        self.cache
            .write()
            .expect("cache lock")
            .insert(key, v.clone());
        Ok(v)
    }

    fn compute(&self, key: &Bqf) -> Result<Rational> {
        match &self.provider {
            Provider::MaassLift(phi) => {
                let g = key.content() as u64;
                let d = -key.disc();
                let mut s = Rational::zero();
                for t in divisors(g) {
                    let t2 = (t * t) as i64;
                    let c = phi.c(d / t2)?;
                    if !c.is_zero() {
                        let w = BigInt::from(t).pow((self.weight - 1) as u32);
                        s += Rational::from_integer(w) * c;
                    }
                }
                Ok(s)
            }
            Provider::Table(t) => Ok(t.get(key).cloned().unwrap_or_else(Rational::zero)),
            Provider::Custom(f) => f(key),
        }
    }

    /// a(F, c) for the class with index `i` in `group`.
    pub fn coefficient_by_class(&self, group: &ClassGroup, i: usize) -> Result<Rational> {
        let f = group
            .reduced()
            .get(i)
            .ok_or_else(|| Error::invalid(format!("class index {i} out of range")))?;
        self.coefficient(f)
    }

    /// All nonzero coefficients on reduced forms with `|disc| < prec_disc`,
    /// ordered by `|disc|` and then by the order of [`reduced_forms`].
    pub fn entries(&self) -> Result<Vec<(Bqf, Rational)>> {
        let mut out = Vec::new();
        for d in 3..self.prec_disc {
            if d % 4 == 1 || d % 4 == 2 {
                continue;
            }
            for f in reduced_forms(d)? {
                let v = self.coefficient(&f)?;
                if !v.is_zero() {
                    out.push((f, v));
                }
            }
        }
        Ok(out)
    }
}
