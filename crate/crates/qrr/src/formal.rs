//! Truncated Laurent series in one auxiliary formal variable with [`QSeries`]
//! coefficients.
//!
//! This layer hosts the constant-term operator and the q-derivative. A series
//! carries a window [lo, hi] of variable exponents and a `complete` guarantee:
//! when set, every omitted variable-exponent's coefficient has q-order greater
//! than the trusted order, so the stored window represents the intended
//! infinite object modulo q^{M+1} across ALL variable exponents.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::qseries::{Mismatch, Monomial, QSeries};

/// Hard cap on window width for variable exponents.
pub const MAX_WINDOW: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    var: char,
    denom: u32,
    order: i64,
    complete: bool,
    coeffs: BTreeMap<i64, QSeries>,
}

/// First differing coefficient between two formal series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FsMismatch {
    pub var: char,
    pub var_power: i64,
    pub inner: Mismatch,
}

impl fmt::Display for FsMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}: {}", self.var, self.var_power, self.inner)
    }
}

impl FormalSeries {
    pub fn zero(var: char, denom: u32, order: i64) -> Self {
        FormalSeries {
            var,
            denom,
            order: order.max(0),
            complete: true,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(var: char, denom: u32, order: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(0, QSeries::one(denom, order.max(0)));
        FormalSeries {
            var,
            denom,
            order: order.max(0),
            complete: true,
            coeffs,
        }
    }

    /// A single term s * var^k.
    pub fn term(var: char, k: i64, s: QSeries) -> Result<Self> {
        FormalSeries::from_coeffs(var, s.denom(), s.order(), [(k, s)], true)
    }

    /// Assemble from (variable exponent, coefficient) pairs. Every stored
    /// coefficient must be trusted at least to `order`; coefficients that
    /// vanish modulo q^{order+1} are dropped.
    pub fn from_coeffs(
        var: char,
        denom: u32,
        order: i64,
        coeffs: impl IntoIterator<Item = (i64, QSeries)>,
        complete: bool,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, s) in coeffs {
            let s = s.rescale_denom(denom)?;
            if s.order() < order {
                return Err(Error::BeyondTruncation {
                    requested: order,
                    order: s.order(),
                });
            }
            let s = s.truncated(order);
            if !s.is_zero() && map.insert(k, s).is_some() {
                return Err(Error::EngineInconsistency(format!(
                    "duplicate window exponent {k}"
                )));
            }
        }
        if map.len() > MAX_WINDOW {
            return Err(Error::WindowOverflow(map.len()));
        }
        Ok(FormalSeries {
            var,
            denom,
            order: order.max(0),
            complete,
            coeffs: map,
        })
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn complete(&self) -> bool {
        self.complete
    }

    /// Window bounds (lo, hi), or None for the zero series.
    pub fn window(&self) -> Option<(i64, i64)> {
        let lo = self.coeffs.keys().next()?;
        let hi = self.coeffs.keys().next_back()?;
        Some((*lo, *hi))
    }

    pub fn window_iter(&self) -> impl Iterator<Item = (i64, &QSeries)> + '_ {
        self.coeffs.iter().map(|(&k, s)| (k, s))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_var(&self, other: &FormalSeries) -> Result<()> {
        if self.var != other.var {
            return Err(Error::VariableMismatch(self.var, other.var));
        }
        if self.denom != other.denom {
            return Err(Error::DenomOverflow(self.denom.max(other.denom) as i128));
        }
        Ok(())
    }

    /// Most negative q-order among stored coefficients, capped at 0.
    fn laurent_depth(&self) -> i64 {
        self.coeffs
            .values()
            .filter_map(|s| s.min_exponent())
            .min()
            .unwrap_or(0)
            .min(0)
    }

    /// Cauchy product in the variable. The window is the sumset trimmed of
    /// coefficients that vanish modulo q^{M+1}; the result is complete iff
    /// both inputs are. Laurent-in-q content tightens the trusted order.
    pub fn mul(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.check_var(other)?;
        let order = (self.order + other.laurent_depth()).min(other.order + self.laurent_depth());
        if order < 0 {
            return Err(Error::OrderExhausted(order));
        }
        if let (Some((alo, ahi)), Some((blo, bhi))) = (self.window(), other.window()) {
            let width = (ahi - alo + bhi - blo + 1) as usize;
            if width > MAX_WINDOW {
                return Err(Error::WindowOverflow(width));
            }
        }
        let mut out: BTreeMap<i64, QSeries> = BTreeMap::new();
        for (&ka, ca) in &self.coeffs {
            // Skip factor coefficients that cannot contribute below the cutoff.
            let ca_min = ca.min_exponent().unwrap_or(i64::MAX);
            for (&kb, cb) in &other.coeffs {
                let cb_min = cb.min_exponent().unwrap_or(i64::MAX);
                if ca_min.saturating_add(cb_min) > order {
                    continue;
                }
                let p = ca.mul(cb)?.truncated(order);
                if p.is_zero() {
                    continue;
                }
                let k = ka + kb;
                let entry = match out.remove(&k) {
                    Some(acc) => acc.add(&p)?,
                    None => p,
                };
                out.insert(k, entry);
            }
        }
        out.retain(|_, s| !s.is_zero());
        Ok(FormalSeries {
            var: self.var,
            denom: self.denom,
            order,
            complete: self.complete && other.complete,
            coeffs: out,
        })
    }

    pub fn add(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        let mut out = self.coeffs.clone();
        for (&k, s) in &other.coeffs {
            let entry = match out.remove(&k) {
                Some(acc) => acc.add(s)?,
                None => s.clone(),
            };
            out.insert(k, entry);
        }
        let mut trimmed = BTreeMap::new();
        for (k, s) in out {
            let s = s.truncated(order);
            if !s.is_zero() {
                trimmed.insert(k, s);
            }
        }
        Ok(FormalSeries {
            var: self.var,
            denom: self.denom,
            order,
            complete: self.complete && other.complete,
            coeffs: trimmed,
        })
    }

    pub fn sub(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.add(&other.negated())
    }

    pub fn negated(&self) -> FormalSeries {
        FormalSeries {
            var: self.var,
            denom: self.denom,
            order: self.order,
            complete: self.complete,
            coeffs: self.coeffs.iter().map(|(&k, s)| (k, s.negated())).collect(),
        }
    }

    /// Multiply every coefficient by a fixed q-series scalar.
    pub fn scale_coeffs(&self, scalar: &QSeries) -> Result<FormalSeries> {
        let order = (self.order + scalar.min_exponent().unwrap_or(0).min(0))
            .min(scalar.order() + self.laurent_depth());
        if order < 0 {
            return Err(Error::OrderExhausted(order));
        }
        let mut out = BTreeMap::new();
        for (&k, s) in &self.coeffs {
            let p = s.mul(scalar)?.truncated(order);
            if !p.is_zero() {
                out.insert(k, p);
            }
        }
        Ok(FormalSeries {
            var: self.var,
            denom: self.denom,
            order,
            complete: self.complete,
            coeffs: out,
        })
    }

    /// Coefficientwise exact division by an integer.
    pub fn div_exact_int(&self, k: impl Into<BigInt>) -> Result<FormalSeries> {
        let k = k.into();
        let mut out = BTreeMap::new();
        for (&p, s) in &self.coeffs {
            out.insert(p, s.div_exact_int(k.clone())?);
        }
        Ok(FormalSeries {
            var: self.var,
            denom: self.denom,
            order: self.order,
            complete: self.complete,
            coeffs: out,
        })
    }

    /// Coefficient of var^k. For a complete series an absent exponent is the
    /// zero series trusted to the full order; an incomplete series queried
    /// outside its window is an error.
    pub fn coeff_var(&self, k: i64) -> Result<QSeries> {
        if let Some(s) = self.coeffs.get(&k) {
            return Ok(s.clone());
        }
        if self.complete {
            Ok(QSeries::zero(self.denom, self.order))
        } else {
            Err(Error::BeyondGuarantee {
                var: self.var,
                power: k,
            })
        }
    }

    /// The constant term: coefficient of var^0 of a complete series.
    pub fn constant_term(&self) -> Result<QSeries> {
        if !self.complete {
            return Err(Error::BeyondGuarantee {
                var: self.var,
                power: 0,
            });
        }
        self.coeff_var(0)
    }

    /// Substitute var -> m * var with m = (+-1) q^e: the var^k coefficient is
    /// multiplied by m.coeff^k q^{k e}.
    ///
    /// For e >= 0 and a window inside [0, inf) every coefficient's q-order
    /// only increases and the order is preserved. Negative window exponents
    /// lose |k| e of trusted order; the result order is tightened by the
    /// deepest stored k. That bound extends to omitted exponents whenever the
    /// generator's omitted-coefficient q-order grows with slope >= e beyond
    /// the window edge, which holds for the theta and Euler generators used
    /// here (quadratic growth).
    pub fn shift_var(&self, m: &Monomial) -> Result<FormalSeries> {
        let m = m.rescaled(self.denom)?;
        if !m.is_unit_coeff() {
            return Err(Error::UnsupportedComposition(format!(
                "variable shift by non-unit coefficient {}",
                m.coeff()
            )));
        }
        let e = m.exponent();
        let penalty = self
            .coeffs
            .keys()
            .map(|&k| (-(k * e)).max(0))
            .max()
            .unwrap_or(0);
        let order = self.order - penalty;
        if order < 0 {
            return Err(Error::OrderExhausted(order));
        }
        let mut out = BTreeMap::new();
        for (&k, s) in &self.coeffs {
            let factor = m.pow(k)?;
            let shifted = s
                .clone()
                .into_laurent()
                .mul_monomial(&factor)?
                .truncated(order);
            if !shifted.is_zero() {
                out.insert(k, shifted);
            }
        }
        Ok(FormalSeries {
            var: self.var,
            denom: self.denom,
            order,
            complete: self.complete,
            coeffs: out,
        })
    }

    /// Substitute var -> x var^N for a series supported on [0, inf):
    /// the var^k coefficient moves to var^{Nk} scaled by x^k.
    pub fn compose_power(&self, x: &Monomial, n: u32) -> Result<FormalSeries> {
        if n == 0 {
            return Err(Error::UnsupportedComposition("zero power".into()));
        }
        if let Some((lo, _)) = self.window() {
            if lo < 0 {
                return Err(Error::UnsupportedComposition(
                    "negative input exponents".into(),
                ));
            }
        }
        let x = x.rescaled(self.denom)?;
        if x.exponent() < 0 {
            return Err(Error::UnsupportedComposition(
                "composition scale with negative q-order".into(),
            ));
        }
        let mut out = BTreeMap::new();
        for (&k, s) in &self.coeffs {
            let scaled = s.mul_monomial(&x.pow(k)?)?.truncated(self.order);
            if !scaled.is_zero() {
                out.insert(k * n as i64, scaled);
            }
        }
        Ok(FormalSeries {
            var: self.var,
            denom: self.denom,
            order: self.order,
            complete: self.complete,
            coeffs: out,
        })
    }

    /// Rogers' q-derivative: x^k c_k -> x^{k-1} c_k (1 - q^k), implemented by
    /// the exponent-shift formula rather than the defining quotient.
    pub fn q_derivative(&self) -> Result<FormalSeries> {
        if let Some((lo, _)) = self.window() {
            if lo < 0 {
                return Err(Error::UnsupportedComposition(
                    "q-derivative of a series with negative exponents".into(),
                ));
            }
        }
        let d = self.denom as i64;
        let mut out = BTreeMap::new();
        for (&k, s) in &self.coeffs {
            if k == 0 {
                continue; // (1 - q^0) = 0
            }
            let q_k = Monomial::new(1, k * d, self.denom)?;
            let dropped = s.sub(&s.mul_monomial(&q_k)?.truncated(s.order()))?;
            if !dropped.is_zero() {
                out.insert(k - 1, dropped.truncated(self.order));
            }
        }
        let mut trimmed = BTreeMap::new();
        for (k, s) in out {
            if !s.is_zero() {
                trimmed.insert(k, s);
            }
        }
        Ok(FormalSeries {
            var: self.var,
            denom: self.denom,
            order: self.order,
            complete: self.complete,
            coeffs: trimmed,
        })
    }

    /// Apply Rogers' operator e_q(y d_x) = sum_k y^k d_x^k / (q;q)_k.
    /// The input window is finite, so d_x^{hi+1} annihilates the series and
    /// the sum is finite.
    pub fn apply_eq_operator(&self, y: &Monomial) -> Result<FormalSeries> {
        let y = y.rescaled(self.denom)?;
        if y.exponent() < 0 {
            return Err(Error::OrderExhausted(y.exponent()));
        }
        let d = self.denom as i64;
        let mut acc = self.clone();
        let mut derivative = self.clone();
        // running scalar y^k / (q;q)_k
        let mut scalar = QSeries::one(self.denom, self.order);
        let mut k: i64 = 0;
        while !derivative.is_zero() {
            derivative = derivative.q_derivative()?;
            if derivative.is_zero() {
                break;
            }
            k += 1;
            scalar = scalar.mul_monomial(&y)?.truncated(self.order);
            scalar = scalar.div_one_minus(1, k * d)?;
            if scalar.is_zero() {
                break; // y^k already beyond the trusted order
            }
            acc = acc.add(&derivative.scale_coeffs(&scalar)?)?;
        }
        Ok(acc)
    }

    /// Evaluate a series with exact polynomial support at a monomial.
    ///
    /// Treats the stored window as the exact support, so this is only valid
    /// for series known to be polynomials in the variable (e.g. operator
    /// images of monomials). The evaluation point needs q-order >= 0.
    pub fn eval_polynomial(&self, m: &Monomial) -> Result<QSeries> {
        let m = m.rescaled(self.denom)?;
        if m.exponent() < 0 {
            return Err(Error::UnsupportedComposition(
                "polynomial evaluation below q-order 0".into(),
            ));
        }
        if let Some((lo, _)) = self.window() {
            if lo < 0 {
                return Err(Error::UnsupportedComposition(
                    "polynomial evaluation with negative exponents".into(),
                ));
            }
        }
        let mut acc = QSeries::zero(self.denom, self.order);
        for (&k, s) in &self.coeffs {
            acc = acc.add(&s.mul_monomial(&m.pow(k)?)?.truncated(self.order))?;
        }
        Ok(acc)
    }

    /// Compare coefficientwise over the union of windows through
    /// `order_units`. Incomplete series must agree on their windows exactly.
    pub fn equal_to_order(
        &self,
        other: &FormalSeries,
        order_units: i64,
    ) -> Result<Option<FsMismatch>> {
        self.check_var(other)?;
        if order_units > self.order || order_units > other.order {
            return Err(Error::BeyondTruncation {
                requested: order_units,
                order: self.order.min(other.order),
            });
        }
        let mut keys: Vec<i64> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .collect();
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            let a = match self.coeffs.get(&k) {
                Some(s) => s.clone(),
                None if self.complete => QSeries::zero(self.denom, order_units),
                None => {
                    return Err(Error::BeyondGuarantee {
                        var: self.var,
                        power: k,
                    })
                }
            };
            let b = match other.coeffs.get(&k) {
                Some(s) => s.clone(),
                None if other.complete => QSeries::zero(other.denom, order_units),
                None => {
                    return Err(Error::BeyondGuarantee {
                        var: other.var,
                        power: k,
                    })
                }
            };
            if let Some(inner) = a.equal_to_order(&b, order_units)? {
                return Ok(Some(FsMismatch {
                    var: self.var,
                    var_power: k,
                    inner,
                }));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, s) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({s})*{}^{k}", self.var)?;
        }
        Ok(())
    }
}
