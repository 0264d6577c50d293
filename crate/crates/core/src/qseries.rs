//! Truncated q-series with exact rational coefficients.
//!
//! A [`QSeries`] lives in powers of `q^(1/denom)`. Exponents are stored as
//! integers `e` meaning `q^(e/denom)`, and `prec` (in the same units) marks the
//! first exponent whose coefficient is unknown. Every operation propagates the
//! guaranteed-valid prefix; asking for a coefficient at or beyond it is an
//! error rather than a silent zero.
//!
//! [`TwoVarSeries`] is the same thing with Laurent polynomials in
//! `w = ζ^(1/2)` as coefficients. It only exists to build theta quotients.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct QSeries {
    denom: i64,
    coeffs: BTreeMap<i64, Rational>,
    prec: i64,
}

impl QSeries {
    /// The zero series known up to (not including) exponent `prec`.
    pub fn zero(denom: i64, prec: i64) -> Self {
        assert!(denom > 0, "denominator must be positive");
        QSeries {
            denom,
            coeffs: BTreeMap::new(),
            prec,
        }
    }

    pub fn one(denom: i64, prec: i64) -> Self {
        Self::monomial(denom, 0, Rational::one(), prec)
    }

    pub fn monomial(denom: i64, exponent: i64, c: Rational, prec: i64) -> Self {
        let mut s = Self::zero(denom, prec);
        s.set(exponent, c);
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs; entries at or
    /// beyond `prec` are dropped and repeated exponents are summed.
    pub fn from_terms<I>(denom: i64, prec: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut s = Self::zero(denom, prec);
        for (e, c) in terms {
            if e < prec {
                let slot = s.coeffs.entry(e).or_insert_with(Rational::zero);
                *slot += c;
            }
        }
        s.coeffs.retain(|_, c| !c.is_zero());
        s
    }

    fn set(&mut self, e: i64, c: Rational) {
        if e >= self.prec || c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// First unknown exponent, in units of `q^(1/denom)`.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Precision as a power of `q`.
    pub fn prec_q(&self) -> Rational {
        Rational::new(self.prec.into(), self.denom.into())
    }

    pub fn coeff(&self, e: i64) -> Result<Rational> {
        if e >= self.prec {
            return Err(Error::precision(
                format!("q^({e}/{})", self.denom),
                format!("q^({}/{})", self.prec, self.denom),
            ));
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero))
    }

    /// Coefficient of `q^n` for integral `n`.
    pub fn coeff_q(&self, n: i64) -> Result<Rational> {
        self.coeff(n * self.denom)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest exponent with a nonzero coefficient, or `prec` for zero.
    pub fn valuation(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.prec)
    }

    /// Re-expresses the series in powers of `q^(1/new_denom)`.
    pub fn rescale(&self, new_denom: i64) -> Self {
        assert!(
            new_denom % self.denom == 0,
            "cannot rescale denominator {} to {new_denom}",
            self.denom
        );
        let f = new_denom / self.denom;
        QSeries {
            denom: new_denom,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e * f, c.clone()))
                .collect(),
            prec: self.prec * f,
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let l = self.denom.lcm(&other.denom);
        (self.rescale(l), other.rescale(l))
    }

    pub fn truncate(&self, prec: i64) -> Self {
        let prec = prec.min(self.prec);
        QSeries {
            denom: self.denom,
            coeffs: self
                .coeffs
                .range(..prec)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
            prec,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let prec = a.prec.min(b.prec);
        QSeries::from_terms(a.denom, prec, a.coeffs.into_iter().chain(b.coeffs))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.denom, self.prec);
        }
        QSeries {
            denom: self.denom,
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
            prec: self.prec,
        }
    }

    /// Multiplies by `q^(shift/denom)`.
    pub fn shift(&self, shift: i64) -> Self {
        QSeries {
            denom: self.denom,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e + shift, c.clone()))
                .collect(),
            prec: self.prec + shift,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let (va, vb) = (a.valuation(), b.valuation());
        let prec = (a.prec + vb).min(b.prec + va);
        if a.is_zero() || b.is_zero() {
            return Self::zero(a.denom, prec);
        }
        let base = va + vb;
        let mut acc: Vec<Rational> = vec![Rational::zero(); (prec - base).max(0) as usize];
        for (&ea, ca) in &a.coeffs {
            if ea + vb >= prec {
                break;
            }
            for (&eb, cb) in &b.coeffs {
                let e = ea + eb;
                if e >= prec {
                    break;
                }
                acc[(e - base) as usize] += ca * cb;
            }
        }
        QSeries::from_terms(
            a.denom,
            prec,
            acc.into_iter()
                .enumerate()
                .map(|(i, c)| (base + i as i64, c)),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return Self::one(self.denom, self.prec - self.valuation());
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = Some(match result {
                    Some(r) => r.mul(&base),
                    None => base.clone(),
                });
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result.expect("n > 0")
    }

    /// Multiplicative inverse. Fails with "non-unit divisor" unless the series
    /// has a nonzero leading coefficient below its precision.
    pub fn inverse(&self) -> Result<Self> {
        let v = self.valuation();
        if self.is_zero() {
            return Err(Error::NonUnitDivisor);
        }
        let lead = self.coeffs[&v].clone();
        let lead_inv = lead.recip();
        // relative precision of the unit part
        let rel = self.prec - v;
        let unit: Vec<(i64, Rational)> = self
            .coeffs
            .iter()
            .skip(1)
            .map(|(&e, c)| (e - v, c * &lead_inv))
            .collect();
        let mut inv: Vec<Rational> = vec![Rational::zero(); rel as usize];
        inv[0] = Rational::one();
        for i in 1..rel as usize {
            let mut s = Rational::zero();
            for (j, c) in &unit {
                let j = *j as usize;
                if j > i {
                    break;
                }
                if !inv[i - j].is_zero() {
                    s += c * &inv[i - j];
                }
            }
            inv[i] = -s;
        }
        Ok(QSeries::from_terms(
            self.denom,
            rel - v,
            inv.into_iter()
                .enumerate()
                .map(|(i, c)| (i as i64 - v, c * &lead_inv)),
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Re-keys the series to integral powers of `q`.
    pub fn integralize(&self) -> Result<Self> {
        let d = self.denom;
        if let Some((&e, _)) = self.coeffs.iter().find(|(&e, _)| e.rem_euclid(d) != 0) {
            return Err(Error::FractionalResidue {
                exponent: e,
                denom: d,
            });
        }
        Ok(QSeries {
            denom: 1,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e / d, c.clone()))
                .collect(),
            prec: self.prec.div_euclid(d) + i64::from(self.prec.rem_euclid(d) != 0),
        })
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = |e: i64| {
            if self.denom == 1 {
                format!("q^{e}")
            } else {
                format!("q^({e}/{})", self.denom)
            }
        };
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{}", q(e))?;
        }
        if !self.coeffs.is_empty() {
            write!(f, " + ")?;
        }
        write!(f, "O({})", q(self.prec))
    }
}

/// Laurent polynomial in `w = ζ^(1/2)`.
pub type WPoly = BTreeMap<i64, Rational>;

/// Truncated series in `q^(1/denom)` whose coefficients are Laurent
/// polynomials in `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoVarSeries {
    denom: i64,
    rows: BTreeMap<i64, WPoly>,
    prec: i64,
}

impl TwoVarSeries {
    pub fn zero(denom: i64, prec: i64) -> Self {
        assert!(denom > 0);
        TwoVarSeries {
            denom,
            rows: BTreeMap::new(),
            prec,
        }
    }

    /// Builds from `(q exponent, w exponent, coefficient)` triples.
    pub fn from_terms<I>(denom: i64, prec: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64, Rational)>,
    {
        let mut s = Self::zero(denom, prec);
        for (e, w, c) in terms {
            s.accumulate(e, w, c);
        }
        s.prune();
        s
    }

    fn accumulate(&mut self, e: i64, w: i64, c: Rational) {
        if e < self.prec && !c.is_zero() {
            *self
                .rows
                .entry(e)
                .or_default()
                .entry(w)
                .or_insert_with(Rational::zero) += c;
        }
    }

    fn prune(&mut self) {
        for row in self.rows.values_mut() {
            row.retain(|_, c| !c.is_zero());
        }
        self.rows.retain(|_, row| !row.is_empty());
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn row(&self, e: i64) -> Result<Option<&WPoly>> {
        if e >= self.prec {
            return Err(Error::precision(
                format!("q^({e}/{})", self.denom),
                format!("q^({}/{})", self.prec, self.denom),
            ));
        }
        Ok(self.rows.get(&e))
    }

    pub fn valuation(&self) -> i64 {
        self.rows.keys().next().copied().unwrap_or(self.prec)
    }

    pub fn rescale(&self, new_denom: i64) -> Self {
        assert!(new_denom % self.denom == 0);
        let f = new_denom / self.denom;
        TwoVarSeries {
            denom: new_denom,
            rows: self.rows.iter().map(|(e, r)| (e * f, r.clone())).collect(),
            prec: self.prec * f,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let l = self.denom.lcm(&other.denom);
        let (a, b) = (self.rescale(l), other.rescale(l));
        let prec = a.prec.min(b.prec);
        let terms = a
            .rows
            .into_iter()
            .chain(b.rows)
            .flat_map(|(e, row)| row.into_iter().map(move |(w, c)| (e, w, c)));
        Self::from_terms(l, prec, terms)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let terms = self
            .rows
            .iter()
            .flat_map(|(&e, row)| row.iter().map(move |(&w, v)| (e, w, v * c)));
        Self::from_terms(self.denom, self.prec, terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = self.denom.lcm(&other.denom);
        let (a, b) = (self.rescale(l), other.rescale(l));
        let (va, vb) = (a.valuation(), b.valuation());
        let prec = (a.prec + vb).min(b.prec + va);
        let mut out = Self::zero(l, prec);
        for (&ea, ra) in &a.rows {
            for (&eb, rb) in &b.rows {
                if ea + eb >= prec {
                    break;
                }
                for (&wa, ca) in ra {
                    for (&wb, cb) in rb {
                        out.accumulate(ea + eb, wa + wb, ca * cb);
                    }
                }
            }
        }
        out.prune();
        out
    }

    /// Product with a one-variable series.
    pub fn mul_q(&self, s: &QSeries) -> Self {
        let l = self.denom.lcm(&s.denom());
        let a = self.rescale(l);
        let b = s.rescale(l);
        let (va, vb) = (a.valuation(), b.valuation());
        let prec = (a.prec + vb).min(b.prec() + va);
        let mut out = Self::zero(l, prec);
        for (&ea, ra) in &a.rows {
            for (eb, cb) in b.terms() {
                if ea + eb >= prec {
                    break;
                }
                for (&w, ca) in ra {
                    out.accumulate(ea + eb, w, ca * cb);
                }
            }
        }
        out.prune();
        out
    }

    /// Collapses to integral cells `(n, r, c)` meaning `c·qⁿζʳ`; fails with
    /// "fractional residue" if any nonzero term has a fractional power of `q`
    /// or of `ζ`.
    pub fn integral_cells(&self) -> Result<BTreeMap<(i64, i64), Rational>> {
        let d = self.denom;
        let mut out = BTreeMap::new();
        for (&e, row) in &self.rows {
            if e.rem_euclid(d) != 0 {
                return Err(Error::FractionalResidue {
                    exponent: e,
                    denom: d,
                });
            }
            for (&w, c) in row {
                if w.rem_euclid(2) != 0 {
                    return Err(Error::FractionalResidue {
                        exponent: w,
                        denom: 2,
                    });
                }
                out.insert((e / d, w / 2), c.clone());
            }
        }
        Ok(out)
    }

    /// Number of integral `q` rows that are fully known.
    pub fn integral_prec(&self) -> i64 {
        self.prec.div_euclid(self.denom) + i64::from(self.prec.rem_euclid(self.denom) != 0)
    }
}
