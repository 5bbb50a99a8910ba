//! Exact arithmetic for truncated formal series in q.
//!
//! Exponents are integers counting 1/D units for a per-series denominator D,
//! so q^{1/4} at D = 4 is the exponent 1. Coefficients are arbitrary-precision
//! integers. Every series carries a trusted order M: the series is known to
//! agree with the exact object for all exponents <= M, and no operation
//! reports a coefficient beyond the tightest trusted order of its result.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest exponent denominator accepted when mixing series.
pub const MAX_DENOM: u32 = 240;

/// A signed monomial c * q^(e/D), the only allowed instantiation for the
/// free parameters t, x, y and z-evaluation points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    coeff: BigInt,
    exponent: i64,
    denom: u32,
}

impl Monomial {
    pub fn new(coeff: impl Into<BigInt>, exponent_units: i64, denom: u32) -> Result<Self> {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return Err(Error::NonInvertible(coeff));
        }
        if denom == 0 || denom > MAX_DENOM {
            return Err(Error::DenomOverflow(denom as i128));
        }
        Ok(Monomial {
            coeff,
            exponent: exponent_units,
            denom,
        })
    }

    /// The constant 1.
    pub fn one(denom: u32) -> Self {
        Monomial::new(1, 0, denom).expect("unit monomial")
    }

    /// c * q^0.
    pub fn constant(c: impl Into<BigInt>, denom: u32) -> Result<Self> {
        Monomial::new(c, 0, denom)
    }

    /// q^(num/den), e.g. `q_pow(1, 2, 4)` is q^{1/2} at D = 4.
    pub fn q_pow(num: i64, den: i64, denom: u32) -> Result<Self> {
        let units = num
            .checked_mul(denom as i64)
            .filter(|u| u % den == 0)
            .map(|u| u / den)
            .ok_or(Error::ExponentNotRepresentable { num, den, denom })?;
        Monomial::new(1, units, denom)
    }

    /// q itself.
    pub fn q(denom: u32) -> Self {
        Monomial::new(1, denom as i64, denom).expect("q monomial")
    }

    pub fn coeff(&self) -> &BigInt {
        &self.coeff
    }

    /// Exponent in 1/D units; also the q-order of the monomial.
    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.exponent == 0
    }

    pub fn negated(&self) -> Self {
        Monomial {
            coeff: -&self.coeff,
            exponent: self.exponent,
            denom: self.denom,
        }
    }

    pub fn times(&self, other: &Monomial) -> Result<Monomial> {
        let (a, b) = align_denoms(self, other)?;
        Monomial::new(&a.coeff * &b.coeff, a.exponent + b.exponent, a.denom)
    }

    /// Integer power. Negative powers need a unit coefficient.
    pub fn pow(&self, k: i64) -> Result<Monomial> {
        if k >= 0 {
            Ok(Monomial {
                coeff: self.coeff.pow(k as u32),
                exponent: self.exponent * k,
                denom: self.denom,
            })
        } else {
            if !self.is_unit_coeff() {
                return Err(Error::NonInvertible(self.coeff.clone()));
            }
            Ok(Monomial {
                coeff: self.coeff.pow((-k) as u32),
                exponent: self.exponent * k,
                denom: self.denom,
            })
        }
    }

    /// Principal square root, defined only for coefficient +1 and an exponent
    /// that stays representable at the working denominator.
    pub fn try_sqrt(&self) -> Option<Monomial> {
        if !self.coeff.is_one() || self.exponent % 2 != 0 {
            return None;
        }
        Some(Monomial {
            coeff: BigInt::one(),
            exponent: self.exponent / 2,
            denom: self.denom,
        })
    }

    pub fn rescaled(&self, denom: u32) -> Result<Monomial> {
        if !denom.is_multiple_of(self.denom) {
            return Err(Error::ExponentNotRepresentable {
                num: self.exponent,
                den: self.denom as i64,
                denom,
            });
        }
        let factor = (denom / self.denom) as i64;
        Monomial::new(self.coeff.clone(), self.exponent * factor, denom)
    }

    /// Has the coefficient +1 or -1.
    pub fn is_unit_coeff(&self) -> bool {
        self.coeff.is_one() || (-&self.coeff).is_one()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            return write!(f, "{}", self.coeff);
        }
        let power = format_power(self.exponent, self.denom);
        if self.coeff.is_one() {
            write!(f, "{power}")
        } else if (-&self.coeff).is_one() {
            write!(f, "-{power}")
        } else {
            write!(f, "{}*{power}", self.coeff)
        }
    }
}

/// Render an exponent in 1/D units as a reduced fraction of whole q-powers.
pub fn format_exponent(units: i64, denom: u32) -> String {
    let d = denom as i64;
    let g = units.gcd(&d);
    let (n, m) = (units / g, d / g);
    if m == 1 {
        format!("{n}")
    } else {
        format!("{n}/{m}")
    }
}

/// Render q^(units/denom), reducing and parenthesizing only fractions.
pub fn format_power(units: i64, denom: u32) -> String {
    if units == denom as i64 {
        return "q".to_string();
    }
    let e = format_exponent(units, denom);
    if e.contains('/') {
        format!("q^({e})")
    } else {
        format!("q^{e}")
    }
}

fn align_denoms(a: &Monomial, b: &Monomial) -> Result<(Monomial, Monomial)> {
    if a.denom == b.denom {
        return Ok((a.clone(), b.clone()));
    }
    let l = (a.denom as i128).lcm(&(b.denom as i128));
    if l > MAX_DENOM as i128 {
        return Err(Error::DenomOverflow(l));
    }
    Ok((a.rescaled(l as u32)?, b.rescaled(l as u32)?))
}

/// Outcome of comparing two series coefficientwise up to an order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: i64,
    pub denom: u32,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} vs {}",
            format_power(self.exponent, self.denom),
            self.lhs,
            self.rhs
        )
    }
}

/// A truncated formal series in q with exact integer coefficients.
///
/// Immutable after construction; all operations are pure functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    denom: u32,
    order: i64,
    allows_negative: bool,
    coeffs: BTreeMap<i64, BigInt>,
}

impl QSeries {
    pub fn zero(denom: u32, order: i64) -> Self {
        QSeries {
            denom,
            order: order.max(0),
            allows_negative: false,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(denom: u32, order: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(0, BigInt::one());
        QSeries {
            denom,
            order: order.max(0),
            allows_negative: false,
            coeffs,
        }
    }

    pub fn from_monomial(m: &Monomial, order: i64) -> Result<Self> {
        QSeries::from_terms(
            m.denom,
            order,
            [(m.exponent, m.coeff.clone())],
            m.exponent < 0,
        )
    }

    /// Build from (exponent, coefficient) pairs. Zero coefficients are
    /// dropped, exponents above `order` are truncated away, and a negative
    /// exponent is rejected unless declared via `allows_negative`.
    pub fn from_terms(
        denom: u32,
        order: i64,
        terms: impl IntoIterator<Item = (i64, BigInt)>,
        allows_negative: bool,
    ) -> Result<Self> {
        if denom == 0 || denom > MAX_DENOM {
            return Err(Error::DenomOverflow(denom as i128));
        }
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() || e > order {
                continue;
            }
            if e < 0 && !allows_negative {
                return Err(Error::UndeclaredNegativeExponent(e));
            }
            let entry = coeffs.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&e);
            }
        }
        Ok(QSeries {
            denom,
            order,
            allows_negative,
            coeffs,
        })
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    /// Trusted order in 1/D units.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn allows_negative(&self) -> bool {
        self.allows_negative
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest stored exponent (the q-order of the truncated value).
    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient at an exponent in 1/D units. Asking beyond the trusted
    /// order is an error, never a silent zero.
    pub fn coeff(&self, exponent_units: i64) -> Result<BigInt> {
        if exponent_units > self.order {
            return Err(Error::BeyondTruncation {
                requested: exponent_units,
                order: self.order,
            });
        }
        Ok(self
            .coeffs
            .get(&exponent_units)
            .cloned()
            .unwrap_or_else(BigInt::zero))
    }

    /// Coefficient of the integer power q^n.
    pub fn coeff_q(&self, n: i64) -> Result<BigInt> {
        self.coeff(n * self.denom as i64)
    }

    /// Re-express at a denominator that is a multiple of the current one.
    pub fn rescale_denom(&self, denom: u32) -> Result<QSeries> {
        if denom == self.denom {
            return Ok(self.clone());
        }
        if !denom.is_multiple_of(self.denom) || denom > MAX_DENOM {
            return Err(Error::DenomOverflow(denom as i128));
        }
        let f = (denom / self.denom) as i64;
        Ok(QSeries {
            denom,
            order: self.order * f,
            allows_negative: self.allows_negative,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e * f, c.clone()))
                .collect(),
        })
    }

    /// Lower the trusted order, discarding higher terms.
    pub fn truncated(&self, order: i64) -> QSeries {
        if order >= self.order {
            return self.clone();
        }
        QSeries {
            denom: self.denom,
            order,
            allows_negative: self.allows_negative,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&e, _)| e <= order)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// Mark the series as a declared Laurent-in-q intermediate.
    pub fn into_laurent(mut self) -> QSeries {
        self.allows_negative = true;
        self
    }

    /// Drop the Laurent declaration when no negative exponents remain.
    pub fn demote_laurent(mut self) -> QSeries {
        if self.allows_negative && self.min_exponent().is_none_or(|m| m >= 0) {
            self.allows_negative = false;
        }
        self
    }

    fn aligned(&self, other: &QSeries) -> Result<(QSeries, QSeries)> {
        if self.denom == other.denom {
            Ok((self.clone(), other.clone()))
        } else {
            let l = (self.denom as i128).lcm(&(other.denom as i128));
            if l > MAX_DENOM as i128 {
                return Err(Error::DenomOverflow(l));
            }
            Ok((
                self.rescale_denom(l as u32)?,
                other.rescale_denom(l as u32)?,
            ))
        }
    }

    /// Coefficientwise sum, trusted to the smaller order.
    pub fn add(&self, other: &QSeries) -> Result<QSeries> {
        let (a, mut b) = self.aligned(other)?;
        let order = a.order.min(b.order);
        let mut coeffs = a.coeffs;
        coeffs.retain(|&e, _| e <= order);
        b.coeffs.retain(|&e, _| e <= order);
        for (e, c) in b.coeffs {
            let entry = coeffs.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&e);
            }
        }
        Ok(QSeries {
            denom: a.denom,
            order,
            allows_negative: a.allows_negative || b.allows_negative,
            coeffs,
        })
    }

    pub fn sub(&self, other: &QSeries) -> Result<QSeries> {
        self.add(&other.negated())
    }

    /// Coefficientwise negation (not the q -> -q twist; see [`QSeries::negate_q`]).
    pub fn negated(&self) -> QSeries {
        QSeries {
            denom: self.denom,
            order: self.order,
            allows_negative: self.allows_negative,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    /// Cauchy product, trusted to the smaller order. For inputs with
    /// Laurent content the order is tightened by the most negative exponent
    /// of the other factor so the claim stays sound.
    pub fn mul(&self, other: &QSeries) -> Result<QSeries> {
        let (a, b) = self.aligned(other)?;
        let neg_a = a.min_exponent().unwrap_or(0).min(0);
        let neg_b = b.min_exponent().unwrap_or(0).min(0);
        let order = (a.order + neg_b).min(b.order + neg_a);
        if order < 0 {
            return Err(Error::OrderExhausted(order));
        }
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        let b_min = b.min_exponent().unwrap_or(0);
        for (ea, ca) in a.coeffs.iter() {
            if ea + b_min > order {
                break;
            }
            for (eb, cb) in b.coeffs.iter() {
                let e = ea + eb;
                if e > order {
                    break;
                }
                let entry = coeffs.entry(e).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(QSeries {
            denom: a.denom,
            order,
            allows_negative: a.allows_negative || b.allows_negative,
            coeffs,
        })
    }

    /// Multiply by a monomial; the trusted window shifts with the content.
    pub fn mul_monomial(&self, m: &Monomial) -> Result<QSeries> {
        let m = m.rescaled(self.denom)?;
        let order = self.order + m.exponent;
        if order < 0 {
            return Err(Error::OrderExhausted(order));
        }
        let mut coeffs = BTreeMap::new();
        for (&e, c) in &self.coeffs {
            let e = e + m.exponent;
            if e < 0 && !self.allows_negative {
                return Err(Error::UndeclaredNegativeExponent(e));
            }
            if e <= order {
                coeffs.insert(e, c * &m.coeff);
            }
        }
        Ok(QSeries {
            denom: self.denom,
            order,
            allows_negative: self.allows_negative,
            coeffs,
        })
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> QSeries {
        let k = k.into();
        if k.is_zero() {
            return QSeries::zero(self.denom, self.order);
        }
        QSeries {
            denom: self.denom,
            order: self.order,
            allows_negative: self.allows_negative,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * &k)).collect(),
        }
    }

    /// Coefficientwise exact integer quotient. An inexact division is a
    /// correctness tripwire, reported as an error.
    pub fn div_exact_int(&self, k: impl Into<BigInt>) -> Result<QSeries> {
        let k = k.into();
        if k.is_zero() {
            return Err(Error::NonInvertible(k));
        }
        let mut coeffs = BTreeMap::new();
        for (&e, c) in &self.coeffs {
            let (q, r) = c.div_rem(&k);
            if !r.is_zero() {
                return Err(Error::InexactDivision {
                    exponent: e,
                    coeff: c.clone(),
                    divisor: k.clone(),
                });
            }
            coeffs.insert(e, q);
        }
        Ok(QSeries {
            denom: self.denom,
            order: self.order,
            allows_negative: self.allows_negative,
            coeffs,
        })
    }

    /// Multiplicative inverse up to the trusted order. Requires constant
    /// term +1 or -1, which keeps all coefficients integral.
    pub fn invert(&self) -> Result<QSeries> {
        if let Some(min) = self.min_exponent() {
            if min < 0 {
                return Err(Error::UndeclaredNegativeExponent(min));
            }
        }
        let c0 = self.coeffs.get(&0).cloned().unwrap_or_else(BigInt::zero);
        if !c0.is_one() && !(-&c0).is_one() {
            return Err(Error::NonInvertible(c0));
        }
        let order = self.order;
        let n = order as usize;
        // dense workspace: inv[e] for 0 <= e <= order
        let mut inv = vec![BigInt::zero(); n + 1];
        inv[0] = c0.clone();
        let tail: Vec<(i64, &BigInt)> = self
            .coeffs
            .iter()
            .filter(|(&e, _)| e >= 1)
            .map(|(&e, c)| (e, c))
            .collect();
        for e in 1..=n {
            let mut acc = BigInt::zero();
            for &(k, c) in &tail {
                let k = k as usize;
                if k > e {
                    break;
                }
                if !inv[e - k].is_zero() {
                    acc += c * &inv[e - k];
                }
            }
            if !acc.is_zero() {
                // c0 is +-1 so -acc/c0 = -acc*c0
                inv[e] = -(acc * &c0);
            }
        }
        Ok(QSeries {
            denom: self.denom,
            order,
            allows_negative: false,
            coeffs: inv
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e as i64, c))
                .collect(),
        })
    }

    /// Exact division by (1 - c*q^e) with c = +-1, via running sums along
    /// each residue chain of exponents mod e.
    pub fn div_one_minus(&self, c: i8, e_units: i64) -> Result<QSeries> {
        if e_units <= 0 {
            return Err(Error::DivergentProduct(e_units));
        }
        debug_assert!(c == 1 || c == -1);
        let order = self.order;
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        let mut starts: BTreeMap<i64, i64> = BTreeMap::new();
        for &e in self.coeffs.keys() {
            let r = e.rem_euclid(e_units);
            starts
                .entry(r)
                .and_modify(|s| *s = (*s).min(e))
                .or_insert(e);
        }
        for &start in starts.values() {
            let mut acc = BigInt::zero();
            let mut x = start;
            while x <= order {
                if c == -1 {
                    acc = -acc;
                }
                if let Some(v) = self.coeffs.get(&x) {
                    acc += v;
                }
                if !acc.is_zero() {
                    coeffs.insert(x, acc.clone());
                }
                x += e_units;
            }
        }
        Ok(QSeries {
            denom: self.denom,
            order,
            allows_negative: self.allows_negative,
            coeffs,
        })
    }

    /// Substitute q -> q^(num/den): multiply every exponent by num/den.
    /// The trusted order becomes floor(order * num / den).
    pub fn scale_exponents(&self, num: i64, den: i64) -> Result<QSeries> {
        if num < 1 || den < 1 {
            return Err(Error::ExponentNotRepresentable {
                num,
                den,
                denom: self.denom,
            });
        }
        let mut coeffs = BTreeMap::new();
        for (&e, c) in &self.coeffs {
            let scaled = e.checked_mul(num).ok_or(Error::ExponentNotRepresentable {
                num,
                den,
                denom: self.denom,
            })?;
            if scaled % den != 0 {
                return Err(Error::ExponentNotRepresentable {
                    num,
                    den,
                    denom: self.denom,
                });
            }
            coeffs.insert(scaled / den, c.clone());
        }
        Ok(QSeries {
            denom: self.denom,
            order: (self.order * num).div_euclid(den),
            allows_negative: self.allows_negative,
            coeffs,
        })
    }

    /// Substitute q -> -q: flip the sign of odd integer powers.
    pub fn negate_q(&self) -> Result<QSeries> {
        let d = self.denom as i64;
        let mut coeffs = BTreeMap::new();
        for (&e, c) in &self.coeffs {
            if e % d != 0 {
                return Err(Error::FractionalExponent(e));
            }
            let n = e / d;
            coeffs.insert(e, if n.rem_euclid(2) == 0 { c.clone() } else { -c });
        }
        Ok(QSeries {
            denom: self.denom,
            order: self.order,
            allows_negative: self.allows_negative,
            coeffs,
        })
    }

    /// Split into (even, odd) integer-power parts by exponent parity.
    /// No division by 2 involved.
    pub fn even_odd_split(&self) -> Result<(QSeries, QSeries)> {
        let d = self.denom as i64;
        let mut even = BTreeMap::new();
        let mut odd = BTreeMap::new();
        for (&e, c) in &self.coeffs {
            if e % d != 0 {
                return Err(Error::FractionalExponent(e));
            }
            if (e / d).rem_euclid(2) == 0 {
                even.insert(e, c.clone());
            } else {
                odd.insert(e, c.clone());
            }
        }
        let make = |coeffs| QSeries {
            denom: self.denom,
            order: self.order,
            allows_negative: self.allows_negative,
            coeffs,
        };
        Ok((make(even), make(odd)))
    }

    /// Compare coefficientwise through `order_units`. Returns the smallest
    /// differing exponent with both values, or None when equal.
    pub fn equal_to_order(&self, other: &QSeries, order_units: i64) -> Result<Option<Mismatch>> {
        let (a, b) = self.aligned(other)?;
        if order_units > a.order || order_units > b.order {
            return Err(Error::BeyondTruncation {
                requested: order_units,
                order: a.order.min(b.order),
            });
        }
        let mut exps: Vec<i64> = a
            .coeffs
            .keys()
            .chain(b.coeffs.keys())
            .copied()
            .filter(|&e| e <= order_units)
            .collect();
        exps.sort_unstable();
        exps.dedup();
        for e in exps {
            let ca = a.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero);
            let cb = b.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero);
            if ca != cb {
                return Ok(Some(Mismatch {
                    exponent: e,
                    denom: a.denom,
                    lhs: ca,
                    rhs: cb,
                }));
            }
        }
        Ok(None)
    }

    /// Integer-power coefficient table [c_0, ..., c_n].
    pub fn coeff_table(&self, upto_q: i64) -> Result<Vec<BigInt>> {
        (0..=upto_q).map(|n| self.coeff_q(n)).collect()
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 + O({})", format_power(self.order + 1, self.denom));
        }
        let mut first = true;
        for (&e, c) in &self.coeffs {
            let mag = c.magnitude();
            let sign = c.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", format_power(e, self.denom))?;
            } else {
                write!(f, "{mag}*{}", format_power(e, self.denom))?;
            }
        }
        write!(f, " + O({})", format_power(self.order + 1, self.denom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: u32 = 4;
    const M: i64 = 240; // q-order 60

    fn q_poly(pairs: &[(i64, i64)], order_q: i64) -> QSeries {
        QSeries::from_terms(
            D,
            order_q * D as i64,
            pairs.iter().map(|&(n, c)| (n * D as i64, BigInt::from(c))),
            false,
        )
        .unwrap()
    }

    #[test]
    fn add_cancels_constants() {
        let a = q_poly(&[(0, 1), (1, 1)], 10);
        let b = q_poly(&[(0, -1), (2, 1)], 10);
        let s = a.add(&b).unwrap();
        assert_eq!(s, q_poly(&[(1, 1), (2, 1)], 10));
    }

    #[test]
    fn add_zero_is_identity_with_min_order() {
        let s = q_poly(&[(0, 1), (3, 5)], 10);
        let z = QSeries::zero(D, 7 * D as i64);
        let out = s.add(&z).unwrap();
        assert_eq!(out.order(), 7 * D as i64);
        assert_eq!(out.coeff_q(3).unwrap(), BigInt::from(5));
    }

    #[test]
    fn mul_inverse_pair_mod_q4() {
        let a = q_poly(&[(0, 1), (1, -1)], 3);
        let b = q_poly(&[(0, 1), (1, 1), (2, 1), (3, 1)], 3);
        let p = a.mul(&b).unwrap();
        assert_eq!(p, q_poly(&[(0, 1)], 3));
    }

    #[test]
    fn mul_qq3_hand_expansion() {
        // (1-q)(1-q^2)(1-q^3) = 1 - q - q^2 + q^4 + q^5 - q^6
        let f = |n: i64| q_poly(&[(0, 1), (n, -1)], 10);
        let p = f(1).mul(&f(2)).unwrap().mul(&f(3)).unwrap();
        assert_eq!(
            p,
            q_poly(&[(0, 1), (1, -1), (2, -1), (4, 1), (5, 1), (6, -1)], 10)
        );
    }

    #[test]
    fn monomial_quarter_powers_multiply() {
        let m = Monomial::q_pow(1, 4, D).unwrap();
        let p = m.times(&m).unwrap();
        assert_eq!(p, Monomial::q_pow(1, 2, D).unwrap());
    }

    #[test]
    fn invert_geometric() {
        let s = q_poly(&[(0, 1), (1, -1)], 3);
        let inv = s.invert().unwrap();
        assert_eq!(inv, q_poly(&[(0, 1), (1, 1), (2, 1), (3, 1)], 3));
        assert!(QSeries::one(D, M).invert().unwrap().eq(&QSeries::one(D, M)));
    }

    #[test]
    fn invert_qq2_counts_parts_le_2() {
        // 1/((1-q)(1-q^2)) = partitions into parts <= 2: 1,1,2,2,3
        let s = q_poly(&[(0, 1), (1, -1), (2, -1), (3, 1)], 4);
        let inv = s.invert().unwrap();
        assert_eq!(
            inv.coeff_table(4).unwrap(),
            [1, 1, 2, 2, 3].map(BigInt::from)
        );
    }

    #[test]
    fn invert_rejects_non_unit() {
        let s = q_poly(&[(0, 2)], 4);
        assert!(matches!(s.invert(), Err(Error::NonInvertible(_))));
        let s = q_poly(&[(1, 1)], 4);
        assert!(matches!(s.invert(), Err(Error::NonInvertible(_))));
    }

    #[test]
    fn scale_identity_and_halving() {
        let s = q_poly(&[(0, 1), (2, 3)], 10);
        assert_eq!(s.scale_exponents(1, 1).unwrap(), s);
        // 1 + q^{1/2} scaled by 2 -> 1 + q
        let h =
            QSeries::from_terms(D, 40, [(0, BigInt::one()), (2, BigInt::one())], false).unwrap();
        let doubled = h.scale_exponents(2, 1).unwrap();
        assert_eq!(doubled.coeff(4).unwrap(), BigInt::one());
        assert_eq!(doubled.order(), 80);
    }

    #[test]
    fn scale_round_trip() {
        let s = q_poly(&[(0, 1), (1, -2), (5, 7)], 12);
        let back = s
            .scale_exponents(3, 1)
            .unwrap()
            .scale_exponents(1, 3)
            .unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn negate_q_alternates_and_is_involution() {
        let s = q_poly(&[(0, 1), (1, 1), (2, 1)], 6);
        let n = s.negate_q().unwrap();
        assert_eq!(n, q_poly(&[(0, 1), (1, -1), (2, 1)], 6));
        assert_eq!(n.negate_q().unwrap(), s);
    }

    #[test]
    fn negate_q_rejects_fractional() {
        let s = QSeries::from_terms(D, 40, [(2, BigInt::one())], false).unwrap();
        assert!(matches!(s.negate_q(), Err(Error::FractionalExponent(2))));
    }

    #[test]
    fn even_odd_split_parity_filter() {
        let s = q_poly(&[(0, 1), (1, 1), (2, 1), (3, 1)], 6);
        let (e, o) = s.even_odd_split().unwrap();
        assert_eq!(e, q_poly(&[(0, 1), (2, 1)], 6));
        assert_eq!(o, q_poly(&[(1, 1), (3, 1)], 6));
        let (e2, o2) = e.even_odd_split().unwrap();
        assert_eq!(e2, e);
        assert!(o2.is_zero());
    }

    #[test]
    fn div_exact_and_tripwire() {
        let s = q_poly(&[(0, 2), (1, 2)], 5);
        assert_eq!(s.div_exact_int(2).unwrap(), q_poly(&[(0, 1), (1, 1)], 5));
        assert!(QSeries::zero(D, 10).div_exact_int(5).unwrap().is_zero());
        let bad = q_poly(&[(0, 3)], 5);
        assert!(matches!(
            bad.div_exact_int(2),
            Err(Error::InexactDivision { .. })
        ));
    }

    #[test]
    fn coeff_beyond_truncation_is_an_error() {
        let s = q_poly(&[(0, 1), (1, 1)], 3);
        assert_eq!(s.coeff_q(1).unwrap(), BigInt::one());
        assert_eq!(s.coeff_q(2).unwrap(), BigInt::zero());
        assert!(matches!(s.coeff_q(4), Err(Error::BeyondTruncation { .. })));
    }

    #[test]
    fn equal_to_order_reports_first_mismatch() {
        let a = q_poly(&[(0, 1), (1, 1), (2, 1)], 8);
        let b = q_poly(&[(0, 1), (2, 2)], 8);
        let m = a.equal_to_order(&b, 8 * D as i64).unwrap().unwrap();
        assert_eq!(m.exponent, D as i64);
        assert_eq!(m.lhs, BigInt::one());
        assert_eq!(m.rhs, BigInt::zero());
        assert!(a.equal_to_order(&a, 8 * D as i64).unwrap().is_none());
        assert!(matches!(
            a.equal_to_order(&b, 9 * D as i64),
            Err(Error::BeyondTruncation { .. })
        ));
    }

    #[test]
    fn negative_exponents_must_be_declared() {
        assert!(QSeries::from_terms(D, 20, [(-4, BigInt::one())], false).is_err());
        let s = QSeries::from_terms(D, 20, [(-4, BigInt::one())], true).unwrap();
        assert_eq!(s.min_exponent(), Some(-4));
    }

    #[test]
    fn laurent_shift_down_then_up() {
        let s = q_poly(&[(1, 1), (2, 1)], 10);
        let m_down = Monomial::new(1, -(D as i64), D).unwrap();
        let shifted = s.clone().into_laurent().mul_monomial(&m_down).unwrap();
        assert_eq!(shifted.coeff_q(0).unwrap(), BigInt::one());
        assert_eq!(shifted.order(), 9 * D as i64);
        let back = shifted.mul_monomial(&Monomial::q(D)).unwrap();
        assert_eq!(back.coeff_q(1).unwrap(), BigInt::one());
    }

    #[test]
    fn div_one_minus_matches_invert() {
        let s = q_poly(&[(0, 1), (3, 5), (7, -2)], 30);
        let direct = s.div_one_minus(1, 2 * D as i64).unwrap();
        let via_invert = s
            .mul(&q_poly(&[(0, 1), (2, -1)], 30).invert().unwrap())
            .unwrap();
        assert!(direct
            .equal_to_order(&via_invert, 30 * D as i64)
            .unwrap()
            .is_none());
        let alt = s.div_one_minus(-1, D as i64).unwrap();
        let via_invert2 = s
            .mul(&q_poly(&[(0, 1), (1, 1)], 30).invert().unwrap())
            .unwrap();
        assert!(alt
            .equal_to_order(&via_invert2, 30 * D as i64)
            .unwrap()
            .is_none());
    }

    #[test]
    fn mixed_denominators_rescale() {
        let a = QSeries::one(2, 20);
        let b = QSeries::one(4, 40);
        let s = a.add(&b).unwrap();
        assert_eq!(s.denom(), 4);
        assert_eq!(s.coeff(0).unwrap(), BigInt::from(2));
    }
}
