//! Builders for the named series (R, G, H, A, B, F and the product sides)
//! plus the constant-term representations with their two independent
//! computation routes.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

use crate::qseries::{Monomial, QSeries};
use crate::special::{euler_eq_fs, euler_inv_fs, poch_inf, poch_multi_inf, theta_laurent};

/// The named series of the identity catalogue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesName {
    /// R(t;q) = sum_k q^{k^2} t^k / (q;q)_k
    R,
    /// G = R(1;q)
    G,
    /// H = R(q;q)
    H,
    /// A = sum_k q^{k^2} / (q^4;q^4)_k
    A,
    /// B = sum_k q^{k(k+2)} / (q^4;q^4)_k
    B,
    /// F = (q^8;q^8)_inf / (q^2;q^2)_inf
    F,
    /// Product side 1/(q,q^4;q^5)_inf
    TildeG,
    /// Product side 1/(q^2,q^3;q^5)_inf
    TildeH,
}

impl SeriesName {
    pub fn parse(name: &str) -> Result<SeriesName> {
        match name.to_ascii_lowercase().as_str() {
            "g" => Ok(SeriesName::G),
            "h" => Ok(SeriesName::H),
            "a" => Ok(SeriesName::A),
            "b" => Ok(SeriesName::B),
            "f" => Ok(SeriesName::F),
            "tilde-g" | "tildeg" | "gprod" => Ok(SeriesName::TildeG),
            "tilde-h" | "tildeh" | "hprod" => Ok(SeriesName::TildeH),
            other => Err(Error::UnknownSeries(other.to_string())),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SeriesName::R => "R",
            SeriesName::G => "G",
            SeriesName::H => "H",
            SeriesName::A => "A",
            SeriesName::B => "B",
            SeriesName::F => "F",
            SeriesName::TildeG => "tilde-G",
            SeriesName::TildeH => "tilde-H",
        }
    }
}

/// A named series together with an optional argument substitution
/// q -> +-q^(num/den), e.g. G(-q^4) or H(q^16).
#[derive(Clone, Debug)]
pub struct SeriesBuilder {
    pub name: SeriesName,
    /// Parameter t for R; ignored elsewhere.
    pub t: Option<Monomial>,
    /// Substitute q -> -q before scaling.
    pub negate_arg: bool,
    pub scale_num: i64,
    pub scale_den: i64,
}

impl SeriesBuilder {
    pub fn named(name: SeriesName) -> Self {
        SeriesBuilder {
            name,
            t: None,
            negate_arg: false,
            scale_num: 1,
            scale_den: 1,
        }
    }

    pub fn r(t: Monomial) -> Self {
        SeriesBuilder {
            name: SeriesName::R,
            t: Some(t),
            negate_arg: false,
            scale_num: 1,
            scale_den: 1,
        }
    }

    /// Substitute q -> -q (applied before any exponent scaling).
    pub fn negated(mut self) -> Self {
        self.negate_arg = !self.negate_arg;
        self
    }

    /// Substitute q -> q^(num/den).
    pub fn scaled(mut self, num: i64, den: i64) -> Self {
        self.scale_num = num;
        self.scale_den = den;
        self
    }

    /// Build the series, trusted at least through `order` units.
    pub fn build(&self, order: i64, denom: u32) -> Result<QSeries> {
        let inner_order = if self.scale_num == self.scale_den {
            order
        } else {
            // enough pre-substitution order that the scaled series covers `order`
            (order * self.scale_den + self.scale_num - 1).div_euclid(self.scale_num)
        };
        let base = match self.name {
            SeriesName::R => {
                let t = self
                    .t
                    .clone()
                    .ok_or_else(|| Error::UnknownSeries("R needs a parameter t".into()))?;
                r_series(&t, inner_order, denom)?
            }
            SeriesName::G => r_series(&Monomial::one(denom), inner_order, denom)?,
            SeriesName::H => r_series(&Monomial::q(denom), inner_order, denom)?,
            SeriesName::A => a_series(inner_order, denom)?,
            SeriesName::B => b_series(inner_order, denom)?,
            SeriesName::F => f_series(inner_order, denom)?,
            SeriesName::TildeG => tilde_g_series(inner_order, denom)?,
            SeriesName::TildeH => tilde_h_series(inner_order, denom)?,
        };
        let base = if self.negate_arg {
            base.negate_q()?
        } else {
            base
        };
        if self.scale_num == self.scale_den {
            Ok(base)
        } else {
            base.scale_exponents(self.scale_num, self.scale_den)
        }
    }
}

/// Sum of `term(k)` for k = 0, 1, ... where the leading exponent of term(k)
/// follows an eventually-increasing quadratic. Terms are generated until the
/// first one that truncates to zero past `vertex`, which certifies that all
/// later terms lie beyond the trusted order.
pub(crate) fn sum_terms(
    denom: u32,
    order: i64,
    vertex: i64,
    mut term: impl FnMut(i64) -> Result<QSeries>,
) -> Result<QSeries> {
    let mut acc = QSeries::zero(denom, order);
    let mut k = 0i64;
    loop {
        let t = term(k)?;
        let empty = t.is_zero();
        if !empty {
            acc = acc.add(&t)?;
        }
        if empty && k >= vertex {
            return Ok(acc);
        }
        k += 1;
        if k > 1_000_000 {
            return Err(Error::EngineInconsistency(
                "series summation did not terminate".into(),
            ));
        }
    }
}

/// R(t;q) = sum_k q^{k^2} t^k / (q;q)_k by direct summation with the
/// incremental term ratio t q^{2k-1} / (1 - q^k).
///
/// Any integer-unit ord(t) is accepted, including negative orders such as
/// t = 1/q; the leading exponent k^2 + k ord(t) still grows without bound.
pub fn r_series(t: &Monomial, order: i64, denom: u32) -> Result<QSeries> {
    let t = t.rescaled(denom)?;
    let d = denom as i64;
    let te = t.exponent();
    // leading exponents d k^2 + k te increase for k past the vertex;
    // the slack covers the deepest cumulative downshift for negative te
    let vertex = ((-te).max(0) / (2 * d)) + 1;
    let work = order + te.abs() + te * te / (4 * d) + 1;
    let mut term = QSeries::one(denom, work).into_laurent();
    let sum = sum_terms(denom, order, vertex, |k| {
        if k == 0 {
            return Ok(term.clone().truncated(order));
        }
        let ratio = t.times(&Monomial::new(1, d * (2 * k - 1), denom)?)?;
        term = term.mul_monomial(&ratio)?.truncated(work);
        term = term.div_one_minus(1, d * k)?;
        Ok(term.clone().truncated(order))
    })?;
    Ok(sum.demote_laurent())
}

fn quadratic_sum_base4(order: i64, denom: u32, step_start: i64) -> Result<QSeries> {
    // shared shape of A (ratio q^{2k-1}) and B (ratio q^{2k+1}) over (q^4;q^4)_k
    let d = denom as i64;
    let mut term = QSeries::one(denom, order);
    sum_terms(denom, order, 1, move |k| {
        if k == 0 {
            return Ok(term.clone());
        }
        term = term.mul_monomial(&Monomial::new(1, d * (2 * k + step_start), denom)?)?;
        term = term.truncated(order);
        term = term.div_one_minus(1, 4 * d * k)?;
        Ok(term.clone())
    })
}

/// A(q) = sum_k q^{k^2} / (q^4;q^4)_k.
pub fn a_series(order: i64, denom: u32) -> Result<QSeries> {
    quadratic_sum_base4(order, denom, -1)
}

/// B(q) = sum_k q^{k(k+2)} / (q^4;q^4)_k.
pub fn b_series(order: i64, denom: u32) -> Result<QSeries> {
    quadratic_sum_base4(order, denom, 1)
}

/// F(q) = (q^8;q^8)_inf / (q^2;q^2)_inf.
pub fn f_series(order: i64, denom: u32) -> Result<QSeries> {
    let d = denom as i64;
    let num = poch_inf(&Monomial::new(1, 8 * d, denom)?, 8 * d, order)?;
    let den = poch_inf(&Monomial::new(1, 2 * d, denom)?, 2 * d, order)?;
    num.mul(&den.invert()?)
}

/// tilde-G = 1/(q, q^4; q^5)_inf.
pub fn tilde_g_series(order: i64, denom: u32) -> Result<QSeries> {
    let d = denom as i64;
    poch_multi_inf(
        &[Monomial::q(denom), Monomial::new(1, 4 * d, denom)?],
        5 * d,
        order,
    )?
    .invert()
}

/// tilde-H = 1/(q^2, q^3; q^5)_inf.
pub fn tilde_h_series(order: i64, denom: u32) -> Result<QSeries> {
    let d = denom as i64;
    poch_multi_inf(
        &[
            Monomial::new(1, 2 * d, denom)?,
            Monomial::new(1, 3 * d, denom)?,
        ],
        5 * d,
        order,
    )?
    .invert()
}

/// Which constant-term representation of R(t;q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtKind {
    /// CT theta(1/z; q^2) / (-qtz; q)_inf
    N1,
    /// CT theta(1/z; q^{1/2}) / (q^{1/2} t z^2; q)_inf
    N2,
}

/// Evaluate a constant-term representation by BOTH routes -- the closed-form
/// coefficient sum and the generic Laurent product followed by CT -- and
/// return the common value. A disagreement is an engine bug, never a
/// property of the inputs.
pub fn ct_representation(kind: CtKind, t: &Monomial, order: i64, denom: u32) -> Result<QSeries> {
    let d = denom as i64;
    let t = t.rescaled(denom)?;
    let (theta_base, x, zpow): (i64, Monomial, u32) = match kind {
        CtKind::N1 => (2 * d, Monomial::new(-1, d, denom)?.times(&t)?, 1),
        CtKind::N2 => {
            let half = Monomial::q_pow(1, 2, denom)?;
            (d / 2, half.times(&t)?, 2)
        }
    };
    if theta_base < 1 || x.exponent() < 1 {
        return Err(Error::InadmissibleInstantiation(format!(
            "constant-term representation needs ord({x}) >= 1 unit"
        )));
    }

    // Route 1: CT theta(1/z;Q) f(x z^N) = sum_k (-1)^{Nk} Q^{Nk(Nk-1)/2} x^k / (q;q)_k
    let n = zpow as i64;
    let xe = x.exponent();
    let mut unit = QSeries::one(denom, order);
    let mut k_state = 0i64;
    let direct = sum_terms(denom, order, 1, |k| {
        while k_state < k {
            k_state += 1;
            unit = unit.div_one_minus(1, d * k_state)?;
        }
        let lead = theta_base * (n * k) * (n * k - 1) / 2 + k * xe;
        let sign = if (n * k).rem_euclid(2) == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let mono = Monomial::new(sign * x.coeff().pow(k as u32), lead, denom)?;
        Ok(unit.mul_monomial(&mono)?.truncated(order))
    })?;

    // Route 2: build the Laurent factors and extract the constant term.
    let theta = theta_laurent(true, theta_base, 'z', denom, order)?;
    let euler = euler_inv_fs(&x, 'z', zpow, d, order)?;
    let generic = theta.mul(&euler)?.constant_term()?;

    if direct.equal_to_order(&generic, order)?.is_some() {
        return Err(Error::EngineInconsistency(format!(
            "constant-term routes disagree for {kind:?} at t = {t}"
        )));
    }
    Ok(direct)
}

/// The companion representation R(t;q) = CT theta(1/z;q) (qtz;q)_inf,
/// again computed by both routes with an internal consistency check.
pub fn rct_representation(t: &Monomial, order: i64, denom: u32) -> Result<QSeries> {
    let d = denom as i64;
    let t = t.rescaled(denom)?;
    let x = Monomial::new(-1, d, denom)?.times(&t)?; // (qtz;q)_inf = (-x z;q)_inf
    if x.exponent() < 0 {
        return Err(Error::InadmissibleInstantiation(
            "companion representation needs ord(qt) >= 0".into(),
        ));
    }
    let xe = x.exponent();

    // Route 1: sum_k (-1)^k q^{k(k-1)/2} * q^{k(k-1)/2} x^k / (q;q)_k
    let mut unit = QSeries::one(denom, order);
    let mut k_state = 0i64;
    let direct = sum_terms(denom, order, 1, |k| {
        while k_state < k {
            k_state += 1;
            unit = unit.div_one_minus(1, d * k_state)?;
        }
        let lead = d * k * (k - 1) + k * xe;
        let sign = if k.rem_euclid(2) == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let mono = Monomial::new(sign * x.coeff().pow(k as u32), lead, denom)?;
        Ok(unit.mul_monomial(&mono)?.truncated(order))
    })?;

    let theta = theta_laurent(true, d, 'z', denom, order)?;
    let eq = euler_eq_fs(&x, 'z', d, order)?;
    let generic = theta.mul(&eq)?.constant_term()?;

    if direct.equal_to_order(&generic, order)?.is_some() {
        return Err(Error::EngineInconsistency(format!(
            "companion constant-term routes disagree at t = {t}"
        )));
    }
    Ok(direct)
}
