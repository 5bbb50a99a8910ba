//! The identity catalogue: every displayed identity bound to executable
//! left- and right-hand-side constructions, plus the verifier that compares
//! both sides coefficientwise at a configured truncation order.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;

use crate::builders::{
    ct_representation, r_series, rct_representation, sum_terms, CtKind, SeriesBuilder, SeriesName,
};
use crate::error::{Error, Result};
use crate::formal::FormalSeries;
use crate::qseries::{Monomial, QSeries};
use crate::special::{
    euler_eq_fs, euler_inv_fs, hk_family, poch_fin, poch_inf, poch_multi_inf, q_exponential,
    theta_at_monomial, theta_fs, theta_laurent, theta_sum_at_monomial, QExpKind,
};

/// A concrete assignment of monomials to the free parameters of an identity,
/// with an optional integer index for per-term checks.
#[derive(Clone, Debug, Default)]
pub struct Instantiation {
    label: String,
    params: BTreeMap<&'static str, Monomial>,
    pub index: Option<i64>,
}

impl Instantiation {
    pub fn empty() -> Self {
        Instantiation {
            label: "-".to_string(),
            params: BTreeMap::new(),
            index: None,
        }
    }

    pub fn with(mut self, name: &'static str, value: Monomial) -> Self {
        if self.label == "-" || self.label.is_empty() {
            self.label = format!("{name}={value}");
        } else {
            self.label = format!("{}, {name}={value}", self.label);
        }
        self.params.insert(name, value);
        self
    }

    pub fn with_index(mut self, tag: &str, index: i64) -> Self {
        if self.label == "-" || self.label.is_empty() {
            self.label = format!("{tag}={index}");
        } else {
            self.label = format!("{}, {tag}={index}", self.label);
        }
        self.index = Some(index);
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn param(&self, name: &str) -> Result<&Monomial> {
        self.params
            .get(name)
            .ok_or_else(|| Error::EngineInconsistency(format!("missing parameter {name}")))
    }

    fn index(&self) -> Result<i64> {
        self.index
            .ok_or_else(|| Error::EngineInconsistency("missing index".into()))
    }
}

/// Both sides of an identity, evaluated and ready to compare.
pub enum CheckOutcome {
    Series(QSeries, QSeries),
    Formal(FormalSeries, FormalSeries),
}

type CheckFn = Box<dyn Fn(&Instantiation, i64, u32) -> Result<CheckOutcome> + Send + Sync>;

/// A registry entry binding an identity to its executable construction.
pub struct IdentitySpec {
    pub id: &'static str,
    /// Human-readable statement of what is being verified, with classical
    /// attributions where they exist.
    pub anchor: &'static str,
    pub instantiations: Vec<Instantiation>,
    pub required_denom: u32,
    pub default_order_q: i64,
    check: CheckFn,
}

impl IdentitySpec {
    pub fn evaluate(
        &self,
        inst: &Instantiation,
        order_units: i64,
        denom: u32,
    ) -> Result<CheckOutcome> {
        (self.check)(inst, order_units, denom)
    }
}

impl fmt::Debug for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentitySpec")
            .field("id", &self.id)
            .field("anchor", &self.anchor)
            .field("instantiations", &self.instantiations.len())
            .finish()
    }
}

/// First differing coefficient, in exact arbitrary-precision form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MismatchInfo {
    /// Power of the auxiliary variable, for formal-series identities.
    pub var_power: Option<i64>,
    pub exponent_units: i64,
    pub denom: u32,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl fmt::Display for MismatchInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.var_power {
            write!(f, "z^{p} * ")?;
        }
        write!(
            f,
            "{}: {} vs {}",
            crate::qseries::format_power(self.exponent_units, self.denom),
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped(_) => "skipped",
        }
    }
}

/// Structured result of verifying one (identity, instantiation) pair.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: String,
    pub instantiation: String,
    /// Order actually compared, in whole powers of q.
    pub order_q: i64,
    pub status: Status,
    pub first_mismatch: Option<MismatchInfo>,
    pub millis: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<20} {:<34} order {:<4} {:>7}ms  {}",
            self.id,
            self.instantiation,
            self.order_q,
            self.millis,
            match &self.status {
                Status::Pass => "pass".to_string(),
                Status::Fail => format!(
                    "FAIL at {}",
                    self.first_mismatch
                        .as_ref()
                        .map(|m| m.to_string())
                        .unwrap_or_default()
                ),
                Status::Skipped(reason) => format!("skipped ({reason})"),
            }
        )
    }
}

/// Verify one registry entry at the given q-order. Inadmissible
/// instantiations produce skipped reports; engine errors propagate.
pub fn verify(spec: &IdentitySpec, order_q: i64, denom: u32) -> Result<Vec<VerificationReport>> {
    let denom = lcm_denom(denom, spec.required_denom)?;
    let m = order_q * denom as i64;
    let mut out = Vec::with_capacity(spec.instantiations.len());
    for inst in &spec.instantiations {
        let start = Instant::now();
        let outcome = spec.evaluate(inst, m, denom);
        let report = match outcome {
            Err(Error::InadmissibleInstantiation(reason)) => VerificationReport {
                id: spec.id.to_string(),
                instantiation: inst.label().to_string(),
                order_q,
                status: Status::Skipped(reason),
                first_mismatch: None,
                millis: start.elapsed().as_millis(),
            },
            Err(e) => return Err(e),
            Ok(outcome) => {
                let (cmp_units, mismatch) = compare(outcome, m)?;
                VerificationReport {
                    id: spec.id.to_string(),
                    instantiation: inst.label().to_string(),
                    order_q: cmp_units.div_euclid(denom as i64),
                    status: if mismatch.is_none() {
                        Status::Pass
                    } else {
                        Status::Fail
                    },
                    first_mismatch: mismatch,
                    millis: start.elapsed().as_millis(),
                }
            }
        };
        out.push(report);
    }
    Ok(out)
}

fn compare(outcome: CheckOutcome, m: i64) -> Result<(i64, Option<MismatchInfo>)> {
    match outcome {
        CheckOutcome::Series(lhs, rhs) => {
            let cmp = m.min(lhs.order()).min(rhs.order());
            let mismatch = lhs.equal_to_order(&rhs, cmp)?.map(|mm| MismatchInfo {
                var_power: None,
                exponent_units: mm.exponent,
                denom: mm.denom,
                lhs: mm.lhs,
                rhs: mm.rhs,
            });
            Ok((cmp, mismatch))
        }
        CheckOutcome::Formal(lhs, rhs) => {
            let cmp = m.min(lhs.order()).min(rhs.order());
            let mismatch = lhs.equal_to_order(&rhs, cmp)?.map(|mm| MismatchInfo {
                var_power: Some(mm.var_power),
                exponent_units: mm.inner.exponent,
                denom: mm.inner.denom,
                lhs: mm.inner.lhs,
                rhs: mm.inner.rhs,
            });
            Ok((cmp, mismatch))
        }
    }
}

fn lcm_denom(a: u32, b: u32) -> Result<u32> {
    let l = num_integer::lcm(a as i128, b as i128);
    if l > crate::qseries::MAX_DENOM as i128 {
        return Err(Error::DenomOverflow(l));
    }
    Ok(l as u32)
}

/// Verify a set of entries (all when `ids` is None), in registry order.
pub fn verify_selection(
    ids: Option<&[String]>,
    order_q: i64,
    denom: u32,
) -> Result<Vec<VerificationReport>> {
    let all = registry();
    let selected: Vec<&IdentitySpec> = match ids {
        None => all.iter().collect(),
        Some(list) => {
            let mut picked = Vec::new();
            for id in list {
                let found = all
                    .iter()
                    .find(|s| s.id.eq_ignore_ascii_case(id))
                    .ok_or_else(|| Error::UnknownIdentity(id.clone()))?;
                picked.push(found);
            }
            picked
        }
    };
    let mut out = Vec::new();
    for spec in selected {
        out.extend(verify(spec, order_q, denom)?);
    }
    Ok(out)
}

pub fn lookup(id: &str) -> Option<IdentitySpec> {
    registry()
        .into_iter()
        .find(|s| s.id.eq_ignore_ascii_case(id))
}

// ---------------------------------------------------------------------------
// catalogue construction helpers
// ---------------------------------------------------------------------------

fn q_int(n: i64, d: u32) -> Monomial {
    Monomial::new(1, n * d as i64, d).expect("integer q power")
}

fn neg_q_int(n: i64, d: u32) -> Monomial {
    Monomial::new(-1, n * d as i64, d).expect("integer q power")
}

fn mono_one(d: u32) -> Monomial {
    Monomial::one(d)
}

fn entry(
    id: &'static str,
    anchor: &'static str,
    instantiations: Vec<Instantiation>,
    check: CheckFn,
) -> IdentitySpec {
    IdentitySpec {
        id,
        anchor,
        instantiations,
        required_denom: 4,
        default_order_q: 100,
        check,
    }
}

fn t_insts(exponents: &[i64]) -> Vec<Instantiation> {
    exponents
        .iter()
        .map(|&s| Instantiation::empty().with("t", q_int(s, 4)))
        .collect()
}

fn build(name: SeriesName, m: i64, d: u32) -> Result<QSeries> {
    SeriesBuilder::named(name).build(m, d)
}

/// sum_{k>=0} numerator(k) / prod (pochhammer factors), with the numerator a
/// single monomial whose exponent is an eventually-increasing quadratic.
fn poch_quotient_sum(
    d: u32,
    m: i64,
    vertex: i64,
    numerator: impl Fn(i64, u32) -> Result<Monomial>,
    denominators: impl Fn(i64, u32, i64) -> Result<QSeries>,
) -> Result<QSeries> {
    sum_terms(d, m, vertex, |k| {
        let num = numerator(k, d)?;
        if num.exponent() > m {
            return Ok(QSeries::zero(d, m));
        }
        let den = denominators(k, d, m)?;
        Ok(den.invert()?.mul_monomial(&num)?.truncated(m))
    })
}

// ---------------------------------------------------------------------------
// check implementations, grouped as in the catalogue
// ---------------------------------------------------------------------------

fn check_rr_main(product_of: SeriesName, sum_of: SeriesName) -> CheckFn {
    Box::new(move |_inst, m, d| {
        Ok(CheckOutcome::Series(
            build(sum_of, m, d)?,
            build(product_of, m, d)?,
        ))
    })
}

/// The four dissections:
///   1: X(q) + X(-q) = 2 F(q) G*(q^16)
///   2: X(q) - X(-q) = 2 q F(q) H*(-q^4)      (X = G)
///   3: X(q) + X(-q) = 2 F(q) G*(-q^4)        (X = H)
///   4: X(q) - X(-q) = 2 q^3 F(q) H*(q^16)    (X = H)
fn check_dissection(which: u8, product_side: bool) -> CheckFn {
    Box::new(move |_inst, m, d| {
        let (g, h) = if product_side {
            (SeriesName::TildeG, SeriesName::TildeH)
        } else {
            (SeriesName::G, SeriesName::H)
        };
        let x = match which {
            1 | 2 => build(g, m, d)?,
            _ => build(h, m, d)?,
        };
        let x_neg = x.negate_q()?;
        let lhs = match which {
            1 | 3 => x.add(&x_neg)?,
            _ => x.sub(&x_neg)?,
        };
        let f = build(SeriesName::F, m, d)?;
        let inner = match which {
            1 => SeriesBuilder::named(g).scaled(16, 1).build(m, d)?,
            2 => SeriesBuilder::named(h).negated().scaled(4, 1).build(m, d)?,
            3 => SeriesBuilder::named(g).negated().scaled(4, 1).build(m, d)?,
            _ => SeriesBuilder::named(h).scaled(16, 1).build(m, d)?,
        };
        let shift = match which {
            1 | 3 => 0,
            2 => 1,
            _ => 3,
        };
        let rhs = f
            .mul(&inner)?
            .mul_int(2)
            .mul_monomial(&q_int(shift, d))?
            .truncated(m);
        Ok(CheckOutcome::Series(lhs, rhs))
    })
}

/// X(q) = F(q) (G*(q^16) + q H*(-q^4))  /  H-version with (-q^4, q^16).
fn check_abf(second: bool) -> CheckFn {
    Box::new(move |_inst, m, d| {
        let lhs = build(if second { SeriesName::H } else { SeriesName::G }, m, d)?;
        let f = build(SeriesName::F, m, d)?;
        let (a, b, shift) = if second {
            (
                SeriesBuilder::named(SeriesName::G).negated().scaled(4, 1),
                SeriesBuilder::named(SeriesName::H).scaled(16, 1),
                3,
            )
        } else {
            (
                SeriesBuilder::named(SeriesName::G).scaled(16, 1),
                SeriesBuilder::named(SeriesName::H).negated().scaled(4, 1),
                1,
            )
        };
        let sum = a
            .build(m, d)?
            .add(&b.build(m, d)?.mul_monomial(&q_int(shift, d))?.truncated(m))?;
        Ok(CheckOutcome::Series(lhs, f.mul(&sum)?))
    })
}

fn check_euler_inv() -> CheckFn {
    Box::new(|inst, m, d| {
        let z = inst.param("z")?.rescaled(d)?;
        if z.exponent() < 1 {
            return Err(Error::InadmissibleInstantiation(
                "Euler expansion needs ord(z) >= 1".into(),
            ));
        }
        let lhs = poch_inf(&z, d as i64, m)?.invert()?;
        let du = d as i64;
        let mut unit = QSeries::one(d, m);
        let mut kk = 0i64;
        let rhs = sum_terms(d, m, 1, |k| {
            while kk < k {
                kk += 1;
                unit = unit.div_one_minus(1, du * kk)?;
            }
            Ok(unit.mul_monomial(&z.pow(k)?)?.truncated(m))
        })?;
        Ok(CheckOutcome::Series(lhs, rhs))
    })
}

fn check_euler_eq() -> CheckFn {
    Box::new(|inst, m, d| {
        let z = inst.param("z")?.rescaled(d)?;
        if z.exponent() < 0 {
            return Err(Error::InadmissibleInstantiation(
                "companion expansion needs ord(z) >= 0".into(),
            ));
        }
        let lhs = poch_inf(&z.negated(), d as i64, m)?;
        let du = d as i64;
        let mut unit = QSeries::one(d, m);
        let mut kk = 0i64;
        let rhs = sum_terms(d, m, 1, |k| {
            while kk < k {
                kk += 1;
                unit = unit.div_one_minus(1, du * kk)?;
            }
            let lead = Monomial::new(1, du * k * (k - 1) / 2, d)?;
            Ok(unit.mul_monomial(&z.pow(k)?.times(&lead)?)?.truncated(m))
        })?;
        Ok(CheckOutcome::Series(lhs, rhs))
    })
}

fn check_jacobi_tp() -> CheckFn {
    Box::new(|inst, m, d| {
        let z = inst.param("z")?.rescaled(d)?;
        let base = inst.param("base")?.rescaled(d)?;
        let product = theta_at_monomial(&z, base.exponent(), m)?;
        let sum = theta_sum_at_monomial(&z, base.exponent(), m)?;
        Ok(CheckOutcome::Series(product, sum))
    })
}

/// theta(1/z;q)/(tz;q)_inf = (t;q)_inf sum_k (-1)^k q^{k(k-1)/2} / ((t;q)_k z^k)
/// as a formal Laurent identity in z, for t a positive integer power of q.
fn check_rps() -> CheckFn {
    Box::new(|inst, m, d| {
        let t = inst.param("t")?.rescaled(d)?;
        let du = d as i64;
        if !t.coeff().is_one() || t.exponent() < du || t.exponent() % du != 0 {
            return Err(Error::InadmissibleInstantiation(
                "bilateral expansion instantiated at t = q^s, s >= 1".into(),
            ));
        }
        let s = t.exponent() / du;
        let lhs = theta_laurent(true, du, 'z', d, m)?.mul(&euler_inv_fs(&t, 'z', 1, du, m)?)?;

        let t_inf = poch_inf(&t, du, m)?;
        let base = Monomial::q(d);
        let mut coeffs: Vec<(i64, QSeries)> = Vec::new();
        // k >= 0 terms carry z^{-k}
        let mut k = 0i64;
        while du * k * (k - 1) / 2 <= m {
            let lead = Monomial::new(
                if k.rem_euclid(2) == 0 { 1 } else { -1 },
                du * k * (k - 1) / 2,
                d,
            )?;
            let c = t_inf
                .mul(&poch_fin(&t, &base, k as u32, m)?.invert()?)?
                .mul_monomial(&lead)?
                .truncated(m);
            if !c.is_zero() {
                coeffs.push((-k, c));
            }
            k += 1;
        }
        // k < 0 terms: z^j coefficient (t;q)_inf (-1)^j q^{j(j+1)/2} (t q^{-j};q)_j,
        // which vanishes for j >= s by the (1 - q^0) factor.
        for j in 1..s {
            let arg = t.times(&Monomial::new(1, -j * du, d)?)?;
            let lead = Monomial::new(
                if j.rem_euclid(2) == 0 { 1 } else { -1 },
                du * j * (j + 1) / 2,
                d,
            )?;
            let c = t_inf
                .mul(&poch_fin(&arg, &base, j as u32, m)?)?
                .mul_monomial(&lead)?
                .truncated(m)
                .demote_laurent();
            if !c.is_zero() {
                coeffs.push((j, c));
            }
        }
        let rhs = FormalSeries::from_coeffs('z', d, m, coeffs, true)?;
        Ok(CheckOutcome::Formal(lhs, rhs))
    })
}

fn check_ctrep(kind: CtKind) -> CheckFn {
    Box::new(move |inst, m, d| {
        let t = inst.param("t")?;
        let lhs = r_series(t, m, d)?;
        let rhs = ct_representation(kind, t, m, d)?;
        Ok(CheckOutcome::Series(lhs, rhs))
    })
}

/// The three quadratic transformations of R(t;q).
fn check_rtf(which: u8) -> CheckFn {
    Box::new(move |inst, m, d| {
        let t = inst.param("t")?.rescaled(d)?;
        let du = d as i64;
        let te = t.exponent();
        let lhs = r_series(&t, m, d)?;
        let rhs = match which {
            1 => {
                // (-qt;q^2)_inf sum q^{k(k+1)} t^k / ((q^2, -qt; q^2)_k)
                let a = Monomial::new(-1, du, d)?.times(&t)?;
                let pref = poch_inf(&a, 2 * du, m)?;
                let base2 = Monomial::new(1, 2 * du, d)?;
                let sum = poch_quotient_sum(
                    d,
                    m,
                    1,
                    |k, dd| Monomial::new(t.coeff().pow(k as u32), du * k * (k + 1) + k * te, dd),
                    |k, dd, mm| {
                        let p1 = poch_fin(&Monomial::new(1, 2 * du, dd)?, &base2, k as u32, mm)?;
                        let p2 = poch_fin(&a, &base2, k as u32, mm)?;
                        p1.mul(&p2)
                    },
                )?;
                pref.mul(&sum)?
            }
            2 => {
                // (-q^2 t;q^2)_inf sum q^{k^2} t^k / ((q^2, -q^2 t; q^2)_k)
                let a = Monomial::new(-1, 2 * du, d)?.times(&t)?;
                let pref = poch_inf(&a, 2 * du, m)?;
                let base2 = Monomial::new(1, 2 * du, d)?;
                let sum = poch_quotient_sum(
                    d,
                    m,
                    1,
                    |k, dd| Monomial::new(t.coeff().pow(k as u32), du * k * k + k * te, dd),
                    |k, dd, mm| {
                        let p1 = poch_fin(&Monomial::new(1, 2 * du, dd)?, &base2, k as u32, mm)?;
                        let p2 = poch_fin(&a, &base2, k as u32, mm)?;
                        p1.mul(&p2)
                    },
                )?;
                pref.mul(&sum)?
            }
            _ => {
                // (q^{1/4} t^{1/2}; q^{1/2})_inf
                //   * sum q^{k^2/4} t^{k/2} / ((q^{1/2}, q^{1/4} t^{1/2}; q^{1/2})_k)
                let sqrt_t = t.try_sqrt().ok_or_else(|| {
                    Error::InadmissibleInstantiation(format!(
                        "t^(1/2) undefined for t = {t} at denominator {d}"
                    ))
                })?;
                if d % 4 != 0 {
                    return Err(Error::InadmissibleInstantiation(
                        "q^(1/4) needs a denominator divisible by 4".into(),
                    ));
                }
                let quarter = du / 4;
                let half = du / 2;
                let a = Monomial::new(1, quarter, d)?.times(&sqrt_t)?;
                let pref = poch_inf(&a, half, m)?;
                let base_h = Monomial::new(1, half, d)?;
                let ste = sqrt_t.exponent();
                let sum = poch_quotient_sum(
                    d,
                    m,
                    1,
                    |k, dd| Monomial::new(1, quarter * k * k + k * ste, dd),
                    |k, dd, mm| {
                        let p1 = poch_fin(&Monomial::new(1, half, dd)?, &base_h, k as u32, mm)?;
                        let p2 = poch_fin(&a, &base_h, k as u32, mm)?;
                        p1.mul(&p2)
                    },
                )?;
                pref.mul(&sum)?
            }
        };
        Ok(CheckOutcome::Series(lhs, rhs.truncated(m)))
    })
}

/// (-q;-q)_n truncated: the base alternates sign.
fn poch_neg_base(n: u32, m: i64, d: u32) -> Result<QSeries> {
    let arg = Monomial::new(-1, d as i64, d)?;
    let base = Monomial::new(-1, d as i64, d)?;
    poch_fin(&arg, &base, n, m)
}

/// The six specializations of the quadratic transformations at t = 1, q
/// (Slater 99, 20, 98, 16, 94, 96).
fn check_rm20(which: u8) -> CheckFn {
    Box::new(move |_inst, m, d| {
        let du = d as i64;
        let lhs = build(
            if which <= 3 {
                SeriesName::G
            } else {
                SeriesName::H
            },
            m,
            d,
        )?;
        let rhs = match which {
            1 | 5 => {
                // (-q;q^2)_inf sum q^{k(k+1)} / (-q;-q)_{2k (+1)}
                let pref = poch_inf(&Monomial::new(-1, du, d)?, 2 * du, m)?;
                let extra = if which == 1 { 0 } else { 1 };
                let sum = poch_quotient_sum(
                    d,
                    m,
                    1,
                    |k, dd| Monomial::new(1, du * k * (k + 1), dd),
                    |k, _dd, mm| poch_neg_base(2 * k as u32 + extra, mm, d),
                )?;
                pref.mul(&sum)?
            }
            2 | 4 => {
                // (-q^2;q^2)_inf A  /  (-q^2;q^2)_inf B
                let pref = poch_inf(&Monomial::new(-1, 2 * du, d)?, 2 * du, m)?;
                let series = build(
                    if which == 2 {
                        SeriesName::A
                    } else {
                        SeriesName::B
                    },
                    m,
                    d,
                )?;
                pref.mul(&series)?
            }
            _ => {
                // (q^{1/4};q^{1/2})_inf sum q^{k^2/4 | k(k+2)/4} / (q^{1/4};q^{1/4})_{2k (+1)}
                if d % 4 != 0 {
                    return Err(Error::InadmissibleInstantiation(
                        "q^(1/4) needs a denominator divisible by 4".into(),
                    ));
                }
                let quarter = du / 4;
                let pref = poch_inf(&Monomial::new(1, quarter, d)?, 2 * quarter, m)?;
                let base_q = Monomial::new(1, quarter, d)?;
                let (extra, shift) = if which == 3 { (0, 0) } else { (1, 2) };
                let sum = poch_quotient_sum(
                    d,
                    m,
                    1,
                    |k, dd| Monomial::new(1, quarter * (k * k + shift * k), dd),
                    |k, _dd, mm| poch_fin(&base_q, &base_q, 2 * k as u32 + extra, mm),
                )?;
                pref.mul(&sum)?
            }
        };
        Ok(CheckOutcome::Series(lhs, rhs.truncated(m)))
    })
}

/// The six dissection components through the auxiliary series A and B.
fn check_ghij(which: u8) -> CheckFn {
    Box::new(move |_inst, m, d| {
        let du = d as i64;
        let a = build(SeriesName::A, m, d)?;
        let b = build(SeriesName::B, m, d)?;
        let q4q8 = poch_inf(&Monomial::new(1, 4 * du, d)?, 8 * du, m)?;
        let mq2 = poch_inf(&Monomial::new(-1, 2 * du, d)?, 2 * du, m)?;
        let (lhs, rhs) = match which {
            1 => (
                SeriesBuilder::named(SeriesName::G)
                    .negated()
                    .scaled(4, 1)
                    .build(m, d)?,
                q4q8.mul(&b.add(&b.negate_q()?)?.div_exact_int(2)?)?,
            ),
            2 => (build(SeriesName::G, m, d)?, mq2.mul(&a)?),
            3 => (
                SeriesBuilder::named(SeriesName::G)
                    .scaled(16, 1)
                    .build(m, d)?,
                q4q8.mul(&a.add(&a.negate_q()?)?.div_exact_int(2)?)?,
            ),
            4 => (build(SeriesName::H, m, d)?, mq2.mul(&b)?),
            5 => (
                SeriesBuilder::named(SeriesName::H)
                    .negated()
                    .scaled(4, 1)
                    .build(m, d)?,
                q4q8.mul(&a.sub(&a.negate_q()?)?.div_exact_int(2)?)?
                    .into_laurent()
                    .mul_monomial(&Monomial::new(1, -du, d)?)?
                    .demote_laurent(),
            ),
            _ => (
                SeriesBuilder::named(SeriesName::H)
                    .scaled(16, 1)
                    .build(m, d)?,
                q4q8.mul(&b.sub(&b.negate_q()?)?.div_exact_int(2)?)?
                    .into_laurent()
                    .mul_monomial(&Monomial::new(1, -3 * du, d)?)?
                    .demote_laurent(),
            ),
        };
        Ok(CheckOutcome::Series(lhs, rhs))
    })
}

/// Even/odd dissection of the theta function, as formal identities in z.
fn check_theta_split(which: u8) -> CheckFn {
    Box::new(move |_inst, m, d| {
        let du = d as i64;
        let theta_z = theta_laurent(false, du, 'z', d, m)?;
        let theta_neg_z = theta_fs(&Monomial::new(-1, 0, d)?, 'z', 1, du, m)?;
        let even_rhs = theta_fs(&Monomial::new(-1, du, d)?, 'z', 2, 4 * du, m)?;
        let odd_theta = theta_fs(&Monomial::new(-1, 3 * du, d)?, 'z', 2, 4 * du, m)?;
        let z = FormalSeries::term('z', 1, QSeries::one(d, m))?;
        match which {
            1 => {
                let lhs = theta_z.add(&theta_neg_z)?.div_exact_int(2)?;
                Ok(CheckOutcome::Formal(lhs, even_rhs))
            }
            2 => {
                let lhs = theta_z.sub(&theta_neg_z)?.div_exact_int(2)?;
                let rhs = z.mul(&odd_theta)?.negated();
                Ok(CheckOutcome::Formal(lhs, rhs))
            }
            _ => {
                let rhs = even_rhs.sub(&z.mul(&odd_theta)?)?;
                Ok(CheckOutcome::Formal(theta_z, rhs))
            }
        }
    })
}

/// Product sides rewritten through a classical theta function.
fn check_tilde_theta(second: bool) -> CheckFn {
    Box::new(move |_inst, m, d| {
        let du = d as i64;
        let lhs = build(
            if second {
                SeriesName::TildeH
            } else {
                SeriesName::TildeG
            },
            m,
            d,
        )?;
        let (p1, p2, th_arg) = if second { (4, 16, 3) } else { (8, 12, 1) };
        let pr = poch_multi_inf(&[q_int(p1, d), q_int(p2, d)], 20 * du, m)?;
        let th = theta_at_monomial(&neg_q_int(th_arg, d), 10 * du, m)?;
        let den = poch_inf(&q_int(2, d), 2 * du, m)?.invert()?;
        let rhs = pr.mul(&th)?.mul(&den)?;
        Ok(CheckOutcome::Series(lhs, rhs))
    })
}

/// (tilde-G(q) + tilde-G(-q))/2 = (q^8;q^8)_inf/(q^2;q^2)_inf tilde-G(q^16).
fn check_tilde_g_even() -> CheckFn {
    Box::new(|_inst, m, d| {
        let tg = build(SeriesName::TildeG, m, d)?;
        let lhs = tg.add(&tg.negate_q()?)?.div_exact_int(2)?;
        let f = build(SeriesName::F, m, d)?;
        let tg16 = SeriesBuilder::named(SeriesName::TildeG)
            .scaled(16, 1)
            .build(m, d)?;
        Ok(CheckOutcome::Series(lhs, f.mul(&tg16)?))
    })
}

fn check_rct() -> CheckFn {
    Box::new(|inst, m, d| {
        let t = inst.param("t")?;
        Ok(CheckOutcome::Series(
            r_series(t, m, d)?,
            rct_representation(t, m, d)?,
        ))
    })
}

/// The three companion transformations of R(t;q).
fn check_rx(which: u8) -> CheckFn {
    Box::new(move |inst, m, d| {
        let t = inst.param("t")?.rescaled(d)?;
        let du = d as i64;
        let te = t.exponent();
        let lhs = r_series(&t, m, d)?;
        if d % 4 != 0 && which >= 2 {
            return Err(Error::InadmissibleInstantiation(
                "q^(1/4) exponents need a denominator divisible by 4".into(),
            ));
        }
        let quarter = du / 4;
        let half = du / 2;
        let base_q = Monomial::q(d);
        let rhs = match which {
            1 => {
                // (-qt;q)_inf sum (-1)^k q^{3k^2} t^{2k} / ((q^2;q^2)_k (-qt;q)_{2k})
                let a = Monomial::new(-1, du, d)?.times(&t)?;
                let pref = poch_inf(&a, du, m)?;
                let base2 = Monomial::new(1, 2 * du, d)?;
                let sum = poch_quotient_sum(
                    d,
                    m,
                    1,
                    |k, dd| {
                        Monomial::new(
                            if k % 2 == 0 { 1 } else { -1 } * t.coeff().pow(2 * k as u32),
                            3 * du * k * k + 2 * k * te,
                            dd,
                        )
                    },
                    |k, dd, mm| {
                        let p1 = poch_fin(&Monomial::new(1, 2 * du, dd)?, &base2, k as u32, mm)?;
                        let p2 = poch_fin(&a, &base_q, 2 * k as u32, mm)?;
                        p1.mul(&p2)
                    },
                )?;
                pref.mul(&sum)?
            }
            which_bc => {
                // (q^{1/2 or 3/2} t;q)_inf sum q^{k(3k-+1)/4} t^k
                //   / ((q^{1/2};q^{1/2})_k (q^{1/2 or 3/2} t;q)_k)
                let (pref_exp, sign) = if which_bc == 2 {
                    (half, -1)
                } else {
                    (3 * half, 1)
                };
                let a = Monomial::new(1, pref_exp, d)?.times(&t)?;
                let pref = poch_inf(&a, du, m)?;
                let base_h = Monomial::new(1, half, d)?;
                let sum = poch_quotient_sum(
                    d,
                    m,
                    1,
                    |k, dd| {
                        Monomial::new(
                            t.coeff().pow(k as u32),
                            quarter * k * (3 * k + sign) + k * te,
                            dd,
                        )
                    },
                    |k, dd, mm| {
                        let p1 = poch_fin(&Monomial::new(1, half, dd)?, &base_h, k as u32, mm)?;
                        let p2 = poch_fin(&a, &base_q, k as u32, mm)?;
                        p1.mul(&p2)
                    },
                )?;
                pref.mul(&sum)?
            }
        };
        Ok(CheckOutcome::Series(lhs, rhs.truncated(m)))
    })
}

/// The six fixed specializations of the companion transformations
/// (Slater 19, 46, 62, 97, 44 and the contiguous partner of 44).
fn check_ra(which: u8) -> CheckFn {
    Box::new(move |_inst, m, d| {
        let du = d as i64;
        if d % 4 != 0 {
            return Err(Error::InadmissibleInstantiation(
                "q^(1/4) exponents need a denominator divisible by 4".into(),
            ));
        }
        let quarter = du / 4;
        let half = du / 2;
        let lhs = build(
            if which <= 3 {
                SeriesName::G
            } else {
                SeriesName::H
            },
            m,
            d,
        )?;
        let base_q = Monomial::q(d);
        let base_h = Monomial::new(1, half, d)?;
        let base4 = Monomial::new(1, 4 * du, d)?;
        let m_q = Monomial::new(-1, du, d)?;
        let base2 = Monomial::new(1, 2 * du, d)?;
        let h_q = Monomial::new(1, half, d)?;
        let rhs = match which {
            1 | 4 => {
                // (-q;q)_inf sum (-1)^k q^{3k^2 | k(3k+2)} / ((q^4;q^4)_k (-q;q^2)_{k (+1)})
                let pref = poch_inf(&m_q, du, m)?;
                let extra = if which == 1 { 0 } else { 1 };
                let sum = poch_quotient_sum(
                    d,
                    m,
                    1,
                    |k, dd| {
                        let e = if which == 1 {
                            3 * du * k * k
                        } else {
                            du * k * (3 * k + 2)
                        };
                        Monomial::new(if k % 2 == 0 { 1 } else { -1 }, e, dd)
                    },
                    |k, _dd, mm| {
                        let p1 = poch_fin(&base4, &base4, k as u32, mm)?;
                        let p2 = poch_fin(&m_q, &base2, k as u32 + extra, mm)?;
                        p1.mul(&p2)
                    },
                )?;
                pref.mul(&sum)?
            }
            _ => {
                // (q^{1/2};q)_inf sum q^{e(k)/4} / ((q^{1/2};q^{1/2})_k (q^{1/2};q)_{k+j})
                let pref = poch_inf(&h_q, du, m)?;
                let (coefs, j): ((i64, i64), u32) = match which {
                    2 => ((3, -1), 0), // k(3k-1)/4
                    3 => ((3, 1), 1),  // k(3k+1)/4
                    5 => ((3, 3), 1),  // 3k(k+1)/4
                    _ => ((3, 5), 2),  // k(3k+5)/4
                };
                let sum = poch_quotient_sum(
                    d,
                    m,
                    1,
                    |k, dd| Monomial::new(1, quarter * k * (coefs.0 * k + coefs.1), dd),
                    |k, _dd, mm| {
                        let p1 = poch_fin(&base_h, &base_h, k as u32, mm)?;
                        let p2 = poch_fin(&h_q, &base_q, k as u32 + j, mm)?;
                        p1.mul(&p2)
                    },
                )?;
                pref.mul(&sum)?
            }
        };
        Ok(CheckOutcome::Series(lhs, rhs.truncated(m)))
    })
}

/// H(q) = (-q;q)_inf sum (-1)^k q^{k(3k-2)} / ((q^4;q^4)_k (-q;q^2)_k)
/// (Slater 15/95).
fn check_rh() -> CheckFn {
    Box::new(|_inst, m, d| {
        let du = d as i64;
        let lhs = build(SeriesName::H, m, d)?;
        let m_q = Monomial::new(-1, du, d)?;
        let base4 = Monomial::new(1, 4 * du, d)?;
        let base2 = Monomial::new(1, 2 * du, d)?;
        let pref = poch_inf(&m_q, du, m)?;
        let sum = poch_quotient_sum(
            d,
            m,
            1,
            |k, dd| Monomial::new(if k % 2 == 0 { 1 } else { -1 }, du * k * (3 * k - 2), dd),
            |k, _dd, mm| {
                let p1 = poch_fin(&base4, &base4, k as u32, mm)?;
                let p2 = poch_fin(&m_q, &base2, k as u32, mm)?;
                p1.mul(&p2)
            },
        )?;
        Ok(CheckOutcome::Series(lhs, pref.mul(&sum)?.truncated(m)))
    })
}

/// The constant-term chain deriving the Slater 15/95 identity:
///   CT (1+z)(z;q)_inf theta(1/z;q) = R(1/q;q) - R(1;q) = sum_k q^{k^2+k}/(q;q)_k,
/// verified as three pairwise equalities so a failure localizes.
fn check_rh_chain() -> CheckFn {
    Box::new(|inst, m, d| {
        let du = d as i64;
        let ct = || -> Result<QSeries> {
            let one_plus_z = FormalSeries::one('z', d, m).add(&FormalSeries::term(
                'z',
                1,
                QSeries::one(d, m),
            )?)?;
            let z_poch = euler_eq_fs(&Monomial::new(-1, 0, d)?, 'z', du, m)?; // (z;q)_inf
            let theta = theta_laurent(true, du, 'z', d, m)?;
            one_plus_z.mul(&z_poch)?.mul(&theta)?.constant_term()
        };
        let r_diff = || -> Result<QSeries> {
            let r_inv = r_series(&Monomial::new(1, -du, d)?, m, d)?;
            let r_one = r_series(&mono_one(d), m, d)?;
            r_inv.sub(&r_one)
        };
        let shifted_sum = || build(SeriesName::H, m, d);
        let (lhs, rhs) = match inst.index()? {
            0 => (ct()?, r_diff()?),
            1 => (r_diff()?, shifted_sum()?),
            _ => (ct()?, shifted_sum()?),
        };
        Ok(CheckOutcome::Series(lhs, rhs))
    })
}

/// z theta(1/z;q) = -theta(q/z;q).
fn check_quasiperiodicity() -> CheckFn {
    Box::new(|_inst, m, d| {
        let du = d as i64;
        let z = FormalSeries::term('z', 1, QSeries::one(d, m))?;
        let lhs = z.mul(&theta_laurent(true, du, 'z', d, m)?)?;
        let rhs = theta_fs(&Monomial::q(d), 'z', -1, du, m)?.negated();
        Ok(CheckOutcome::Formal(lhs, rhs))
    })
}

/// e_q(y d_x) e_q(tx) = e_q(tx) e_q(ty), as formal series in x.
fn check_dxe() -> CheckFn {
    Box::new(|inst, m, d| {
        let t = inst.param("t")?.rescaled(d)?;
        let y = inst.param("y")?.rescaled(d)?;
        if t.exponent() < 1 || y.exponent() < 1 {
            return Err(Error::InadmissibleInstantiation(
                "operator identity needs ord(t), ord(y) >= 1".into(),
            ));
        }
        let e_tx = euler_inv_fs(&t, 'x', 1, d as i64, m)?;
        let lhs = e_tx.apply_eq_operator(&y)?;
        let e_ty = q_exponential(QExpKind::SmallE, &t.times(&y)?, m)?;
        let rhs = e_tx.scale_coeffs(&e_ty)?;
        Ok(CheckOutcome::Formal(lhs, rhs))
    })
}

/// e_q(y d_x) [x^k/(q;q)_k] evaluated at a monomial x equals H_k(x, y).
fn check_dxh() -> CheckFn {
    Box::new(|inst, m, d| {
        let x = inst.param("x")?.rescaled(d)?;
        let y = inst.param("y")?.rescaled(d)?;
        let k = inst.index()?;
        let du = d as i64;
        let mut unit = QSeries::one(d, m);
        for j in 1..=k {
            unit = unit.div_one_minus(1, du * j)?;
        }
        let input = FormalSeries::term('x', k, unit)?;
        let image = input.apply_eq_operator(&y)?;
        let lhs = image.eval_polynomial(&x)?;
        let rhs = hk_family(&x, &y, k as u32, m)?.pop().expect("k-th member");
        Ok(CheckOutcome::Series(lhs, rhs))
    })
}

/// sum_k q^{k(k+1)/2} H_k(x,y) = (-qx;q)_inf sum_k q^{k(k+1)/2} y^k/((-qx,q;q)_k),
/// including the x <-> y symmetry of the right-hand side.
fn check_rhi() -> CheckFn {
    Box::new(|inst, m, d| {
        let x = inst.param("x")?.rescaled(d)?;
        let y = inst.param("y")?.rescaled(d)?;
        let du = d as i64;
        let rhs_of = |x: &Monomial, y: &Monomial| -> Result<QSeries> {
            let a = Monomial::new(-1, du, d)?.times(x)?;
            let pref = poch_inf(&a, du, m)?;
            let base_q = Monomial::q(d);
            let ye = y.exponent();
            let sum = poch_quotient_sum(
                d,
                m,
                1,
                |k, dd| Monomial::new(y.coeff().pow(k as u32), du * k * (k + 1) / 2 + k * ye, dd),
                |k, _dd, mm| {
                    let p1 = poch_fin(&a, &base_q, k as u32, mm)?;
                    let p2 = poch_fin(&base_q, &base_q, k as u32, mm)?;
                    p1.mul(&p2)
                },
            )?;
            pref.mul(&sum)
        };
        match inst.index()? {
            // identity: sum of H_k against the hypergeometric side
            0 => {
                let mut k_max = 0i64;
                while du * (k_max + 1) * (k_max + 2) / 2
                    + (k_max + 1) * x.exponent().min(y.exponent())
                    <= m
                {
                    k_max += 1;
                }
                let hks = hk_family(&x, &y, k_max as u32, m)?;
                let mut lhs = QSeries::zero(d, m);
                for (k, hk) in hks.iter().enumerate() {
                    let lead = Monomial::new(1, du * (k as i64) * (k as i64 + 1) / 2, d)?;
                    lhs = lhs.add(&hk.mul_monomial(&lead)?.truncated(m))?;
                }
                Ok(CheckOutcome::Series(lhs, rhs_of(&x, &y)?.truncated(m)))
            }
            // symmetry of the right-hand side under x <-> y
            _ => Ok(CheckOutcome::Series(
                rhs_of(&x, &y)?.truncated(m),
                rhs_of(&y, &x)?.truncated(m),
            )),
        }
    })
}

/// H_k(x, x q^{1/2}) = x^k / (q^{1/2};q^{1/2})_k.
fn check_hk_sqrt() -> CheckFn {
    Box::new(|inst, m, d| {
        let x = inst.param("x")?.rescaled(d)?;
        let k = inst.index()?;
        if d % 2 != 0 {
            return Err(Error::InadmissibleInstantiation(
                "q^(1/2) needs an even denominator".into(),
            ));
        }
        let half = d as i64 / 2;
        let y = x.times(&Monomial::new(1, half, d)?)?;
        let lhs = hk_family(&x, &y, k as u32, m)?.pop().expect("k-th member");
        let base_h = Monomial::new(1, half, d)?;
        let rhs = poch_fin(&base_h, &base_h, k as u32, m)?
            .invert()?
            .mul_monomial(&x.pow(k)?)?
            .truncated(m);
        Ok(CheckOutcome::Series(lhs, rhs))
    })
}

/// H_{2k}(x,-x) = x^{2k}/(q^2;q^2)_k and H_{2k+1}(x,-x) = 0.
fn check_hk_neg() -> CheckFn {
    Box::new(|inst, m, d| {
        let x = inst.param("x")?.rescaled(d)?;
        let idx = inst.index()?;
        let du = d as i64;
        let lhs = hk_family(&x, &x.negated(), idx as u32, m)?
            .pop()
            .expect("idx-th member");
        let rhs = if idx % 2 == 0 {
            let k = idx / 2;
            let base2 = Monomial::new(1, 2 * du, d)?;
            poch_fin(&base2, &base2, k as u32, m)?
                .invert()?
                .mul_monomial(&x.pow(idx)?)?
                .truncated(m)
        } else {
            QSeries::zero(d, m)
        };
        Ok(CheckOutcome::Series(lhs, rhs))
    })
}

/// The three specializations recovering the quadratic transformations from
/// the operator identity.
fn check_qt(which: u8) -> CheckFn {
    Box::new(move |inst, m, d| {
        let x = inst.param("x")?.rescaled(d)?;
        let du = d as i64;
        let xe = x.exponent();
        let base2 = Monomial::new(1, 2 * du, d)?;
        let base_q = Monomial::q(d);
        match which {
            1 | 2 => {
                // sum q^{k(k+1)} x^k/(q;q)_k =
                //  1: (-q^2 x;q^2)_inf sum q^{k(k+2)} x^k / ((-q^2x, q^2;q^2)_k)
                //  2: (-q^3 x;q^2)_inf sum q^{k(k+1)} x^k / ((-q^3x, q^2;q^2)_k)
                let mut unit = QSeries::one(d, m);
                let mut kk = 0i64;
                let lhs = sum_terms(d, m, 1, |k| {
                    while kk < k {
                        kk += 1;
                        unit = unit.div_one_minus(1, du * kk)?;
                    }
                    let lead =
                        Monomial::new(x.coeff().pow(k as u32), du * k * (k + 1) + k * xe, d)?;
                    Ok(unit.mul_monomial(&lead)?.truncated(m))
                })?;
                let shift = if which == 1 { 2 } else { 3 };
                let a = Monomial::new(-1, shift * du, d)?.times(&x)?;
                let pref = poch_inf(&a, 2 * du, m)?;
                let quad = if which == 1 { 2 } else { 1 };
                let sum = poch_quotient_sum(
                    d,
                    m,
                    1,
                    |k, dd| {
                        Monomial::new(x.coeff().pow(k as u32), du * k * (k + quad) + k * xe, dd)
                    },
                    |k, _dd, mm| {
                        let p1 = poch_fin(&a, &base2, k as u32, mm)?;
                        let p2 = poch_fin(&base2, &base2, k as u32, mm)?;
                        p1.mul(&p2)
                    },
                )?;
                Ok(CheckOutcome::Series(lhs, pref.mul(&sum)?.truncated(m)))
            }
            _ => {
                // sum q^{k(2k+1)} x^{2k}/(q^2;q^2)_k =
                //   (-qx;q)_inf sum (-1)^k q^{k(k+1)/2} x^k / ((-qx, q;q)_k)
                let mut unit = QSeries::one(d, m);
                let mut kk = 0i64;
                let lhs = sum_terms(d, m, 1, |k| {
                    while kk < k {
                        kk += 1;
                        unit = unit.div_one_minus(1, 2 * du * kk)?;
                    }
                    let lead = Monomial::new(
                        x.coeff().pow(2 * k as u32),
                        du * k * (2 * k + 1) + 2 * k * xe,
                        d,
                    )?;
                    Ok(unit.mul_monomial(&lead)?.truncated(m))
                })?;
                let a = Monomial::new(-1, du, d)?.times(&x)?;
                let pref = poch_inf(&a, du, m)?;
                let sum = poch_quotient_sum(
                    d,
                    m,
                    1,
                    |k, dd| {
                        Monomial::new(
                            if k % 2 == 0 { 1 } else { -1 } * x.coeff().pow(k as u32),
                            du * k * (k + 1) / 2 + k * xe,
                            dd,
                        )
                    },
                    |k, _dd, mm| {
                        let p1 = poch_fin(&a, &base_q, k as u32, mm)?;
                        let p2 = poch_fin(&base_q, &base_q, k as u32, mm)?;
                        p1.mul(&p2)
                    },
                )?;
                Ok(CheckOutcome::Series(lhs, pref.mul(&sum)?.truncated(m)))
            }
        }
    })
}

/// The contiguity split used to pass between the two half-base
/// transformations, checked term by term:
///   (q^{3/2}t;q)_inf t^k/(q^{3/2}t;q)_k
///     = (q^{1/2}t;q)_inf [ t^k/(q^{1/2}t;q)_k + q^{k+1/2} t^{k+1}/(q^{1/2}t;q)_{k+1} ].
fn check_contiguity() -> CheckFn {
    Box::new(|inst, m, d| {
        let t = inst.param("t")?.rescaled(d)?;
        let k = inst.index()?;
        if d % 2 != 0 {
            return Err(Error::InadmissibleInstantiation(
                "q^(1/2) needs an even denominator".into(),
            ));
        }
        let du = d as i64;
        let half = du / 2;
        let base_q = Monomial::q(d);
        let a32 = Monomial::new(1, 3 * half, d)?.times(&t)?;
        let a12 = Monomial::new(1, half, d)?.times(&t)?;
        let lhs = poch_inf(&a32, du, m)?
            .mul(&poch_fin(&a32, &base_q, k as u32, m)?.invert()?)?
            .mul_monomial(&t.pow(k)?)?
            .truncated(m);
        let r1 = poch_fin(&a12, &base_q, k as u32, m)?
            .invert()?
            .mul_monomial(&t.pow(k)?)?
            .truncated(m);
        let r2 = poch_fin(&a12, &base_q, k as u32 + 1, m)?
            .invert()?
            .mul_monomial(&t.pow(k + 1)?.times(&Monomial::new(1, du * k + half, d)?)?)?
            .truncated(m);
        let rhs = poch_inf(&a12, du, m)?.mul(&r1.add(&r2)?)?.truncated(m);
        Ok(CheckOutcome::Series(lhs, rhs))
    })
}

// ---------------------------------------------------------------------------
// the catalogue
// ---------------------------------------------------------------------------

/// The fixed identity catalogue, in verification order.
pub fn registry() -> Vec<IdentitySpec> {
    let d = 4u32;
    let none = vec![Instantiation::empty()];
    let mut specs: Vec<IdentitySpec> = Vec::new();

    specs.push(entry(
        "RR_MAIN_G",
        "first Rogers-Ramanujan identity: sum over q^{k^2}/(q;q)_k vs 1/(q,q^4;q^5)_inf",
        none.clone(),
        check_rr_main(SeriesName::TildeG, SeriesName::G),
    ));
    specs.push(entry(
        "RR_MAIN_H",
        "second Rogers-Ramanujan identity: sum over q^{k(k+1)}/(q;q)_k vs 1/(q^2,q^3;q^5)_inf",
        none.clone(),
        check_rr_main(SeriesName::TildeH, SeriesName::H),
    ));
    for which in 1..=4u8 {
        let (anchor_sum, anchor_prod): (&'static str, &'static str) = match which {
            1 => (
                "dissection G(q)+G(-q) = 2F(q)G(q^16), sum sides (Rogers 1894)",
                "dissection G(q)+G(-q) = 2F(q)G(q^16), product sides",
            ),
            2 => (
                "dissection G(q)-G(-q) = 2qF(q)H(-q^4), sum sides (Rogers 1894)",
                "dissection G(q)-G(-q) = 2qF(q)H(-q^4), product sides",
            ),
            3 => (
                "dissection H(q)+H(-q) = 2F(q)G(-q^4), sum sides (Rogers 1894)",
                "dissection H(q)+H(-q) = 2F(q)G(-q^4), product sides",
            ),
            _ => (
                "dissection H(q)-H(-q) = 2q^3F(q)H(q^16), sum sides (Rogers 1894)",
                "dissection H(q)-H(-q) = 2q^3F(q)H(q^16), product sides",
            ),
        };
        let id_sum: &'static str = match which {
            1 => "GHR_1_SUM",
            2 => "GHR_2_SUM",
            3 => "GHR_3_SUM",
            _ => "GHR_4_SUM",
        };
        let id_prod: &'static str = match which {
            1 => "GHR_1_PROD",
            2 => "GHR_2_PROD",
            3 => "GHR_3_PROD",
            _ => "GHR_4_PROD",
        };
        specs.push(entry(
            id_sum,
            anchor_sum,
            none.clone(),
            check_dissection(which, false),
        ));
        specs.push(entry(
            id_prod,
            anchor_prod,
            none.clone(),
            check_dissection(which, true),
        ));
    }
    specs.push(entry(
        "ABF_1",
        "recursive form G(q) = F(q)(G(q^16) + q H(-q^4))",
        none.clone(),
        check_abf(false),
    ));
    specs.push(entry(
        "ABF_2",
        "recursive form H(q) = F(q)(G(-q^4) + q^3 H(q^16))",
        none.clone(),
        check_abf(true),
    ));

    specs.push(entry(
        "EULER_INV",
        "Euler's expansion 1/(z;q)_inf = sum z^k/(q;q)_k",
        vec![
            Instantiation::empty().with("z", q_int(1, d)),
            Instantiation::empty().with("z", q_int(2, d)),
            Instantiation::empty().with("z", neg_q_int(1, d)),
        ],
        check_euler_inv(),
    ));
    specs.push(entry(
        "EULER_EQ",
        "companion expansion (-z;q)_inf = sum q^{k(k-1)/2} z^k/(q;q)_k",
        vec![
            Instantiation::empty().with("z", q_int(1, d)),
            Instantiation::empty().with("z", mono_one(d)),
            Instantiation::empty().with("z", neg_q_int(1, d)),
        ],
        check_euler_eq(),
    ));
    specs.push(entry(
        "JACOBI_TP",
        "Jacobi triple product: bilateral theta sum vs (q,z,q/z;q)_inf",
        vec![
            Instantiation::empty()
                .with("z", q_int(1, d))
                .with("base", q_int(3, d)),
            Instantiation::empty()
                .with("z", q_int(2, d))
                .with("base", q_int(3, d)),
            Instantiation::empty()
                .with("z", neg_q_int(1, d))
                .with("base", q_int(3, d)),
            Instantiation::empty()
                .with("z", q_int(1, d))
                .with("base", q_int(5, d)),
            Instantiation::empty()
                .with("z", neg_q_int(2, d))
                .with("base", q_int(5, d)),
            Instantiation::empty()
                .with("z", Monomial::new(-1, 0, d).expect("unit"))
                .with("base", q_int(1, d)),
        ],
        check_jacobi_tp(),
    ));
    specs.push(entry(
        "RPS",
        "bilateral expansion of theta(1/z;q)/(tz;q)_inf with (t;q)_k denominators",
        t_insts(&[1, 2]),
        check_rps(),
    ));
    specs.push(entry(
        "CTREP_N1",
        "constant-term representation R(t;q) = CT theta(1/z;q^2)/(-qtz;q)_inf",
        vec![
            Instantiation::empty().with("t", mono_one(d)),
            Instantiation::empty().with("t", q_int(1, d)),
        ],
        check_ctrep(CtKind::N1),
    ));
    specs.push(entry(
        "CTREP_N2",
        "constant-term representation R(t;q) = CT theta(1/z;q^(1/2))/(q^(1/2)tz^2;q)_inf",
        vec![
            Instantiation::empty().with("t", mono_one(d)),
            Instantiation::empty().with("t", q_int(1, d)),
        ],
        check_ctrep(CtKind::N2),
    ));

    let t_123 = vec![
        Instantiation::empty().with("t", mono_one(d)),
        Instantiation::empty().with("t", q_int(1, d)),
        Instantiation::empty().with("t", q_int(2, d)),
    ];
    specs.push(entry(
        "RTF_A",
        "quadratic transformation of R(t;q) with (-qt;q^2) denominators (Rogers 1894)",
        t_123.clone(),
        check_rtf(1),
    ));
    specs.push(entry(
        "RTF_B",
        "quadratic transformation of R(t;q) with (-q^2 t;q^2) denominators (Rogers 1894, Watson)",
        t_123.clone(),
        check_rtf(2),
    ));
    specs.push(entry(
        "RTF_C",
        "quadratic transformation of R(t;q) in base q^(1/2) (Rogers 1894, Watson)",
        t_123.clone(),
        check_rtf(3),
    ));

    for which in 1..=6u8 {
        let (id, anchor): (&'static str, &'static str) = match which {
            1 => ("RM20_1", "G(q) via (-q;-q)_{2k} denominators (Slater 99)"),
            2 => ("RM20_2", "G(q) = (-q^2;q^2)_inf A(q) (Slater 20)"),
            3 => ("RM20_3", "G(q) in base q^(1/4) (Slater 98)"),
            4 => ("RM20_4", "H(q) = (-q^2;q^2)_inf B(q) (Slater 16)"),
            5 => ("RM20_5", "H(q) via (-q;-q)_{2k+1} denominators (Slater 94)"),
            _ => ("RM20_6", "H(q) in base q^(1/4) (Slater 96)"),
        };
        specs.push(entry(id, anchor, none.clone(), check_rm20(which)));
    }

    for which in 1..=6u8 {
        let (id, anchor): (&'static str, &'static str) = match which {
            1 => ("GHIJ_1", "G(-q^4) = (q^4;q^8)_inf (B(q)+B(-q))/2"),
            2 => ("GHIJ_2", "G(q) = (-q^2;q^2)_inf A(q)"),
            3 => ("GHIJ_3", "G(q^16) = (q^4;q^8)_inf (A(q)+A(-q))/2"),
            4 => ("GHIJ_4", "H(q) = (-q^2;q^2)_inf B(q)"),
            5 => ("GHIJ_5", "H(-q^4) = (q^4;q^8)_inf (A(q)-A(-q))/2q"),
            _ => ("GHIJ_6", "H(q^16) = (q^4;q^8)_inf (B(q)-B(-q))/2q^3"),
        };
        specs.push(entry(id, anchor, none.clone(), check_ghij(which)));
    }

    specs.push(entry(
        "THETA_SPLIT_EVEN",
        "even part: (theta(z;q)+theta(-z;q))/2 = theta(-qz^2;q^4)",
        none.clone(),
        check_theta_split(1),
    ));
    specs.push(entry(
        "THETA_SPLIT_ODD",
        "odd part: (theta(z;q)-theta(-z;q))/2 = -z theta(-q^3z^2;q^4)",
        none.clone(),
        check_theta_split(2),
    ));
    specs.push(entry(
        "THETA_SPLIT_COMBINED",
        "theta(z;q) = theta(-qz^2;q^4) - z theta(-q^3z^2;q^4)",
        none.clone(),
        check_theta_split(3),
    ));
    specs.push(entry(
        "TILDE_G_THETA",
        "1/(q,q^4;q^5)_inf = (q^8,q^12;q^20)_inf theta(-q;q^10)/(q^2;q^2)_inf",
        none.clone(),
        check_tilde_theta(false),
    ));
    specs.push(entry(
        "TILDE_H_THETA",
        "1/(q^2,q^3;q^5)_inf = (q^4,q^16;q^20)_inf theta(-q^3;q^10)/(q^2;q^2)_inf",
        none.clone(),
        check_tilde_theta(true),
    ));
    specs.push(entry(
        "TILDE_G_EVEN",
        "even part of the first product side reduces to (q^8;q^8)_inf/(q^2;q^2)_inf times itself at q^16",
        none.clone(),
        check_tilde_g_even(),
    ));

    specs.push(entry(
        "RCT",
        "companion constant-term representation R(t;q) = CT theta(1/z;q)(qtz;q)_inf",
        vec![
            Instantiation::empty().with("t", mono_one(d)),
            Instantiation::empty().with("t", q_int(1, d)),
        ],
        check_rct(),
    ));
    let t_01 = vec![
        Instantiation::empty().with("t", mono_one(d)),
        Instantiation::empty().with("t", q_int(1, d)),
    ];
    specs.push(entry(
        "RX_A",
        "companion transformation with (q^2;q^2)_k (-qt;q)_{2k} denominators",
        t_01.clone(),
        check_rx(1),
    ));
    specs.push(entry(
        "RX_B",
        "companion transformation in base q^(1/2), lower contiguity member",
        t_01.clone(),
        check_rx(2),
    ));
    specs.push(entry(
        "RX_C",
        "companion transformation in base q^(1/2), upper contiguity member",
        t_01.clone(),
        check_rx(3),
    ));

    for which in 1..=6u8 {
        let (id, anchor): (&'static str, &'static str) = match which {
            1 => (
                "RAA",
                "G(q) with alternating q^{3k^2} numerators (Slater 19)",
            ),
            2 => (
                "RAB",
                "G(q) in base q^(1/2), exponents k(3k-1)/4 (Slater 46)",
            ),
            3 => (
                "RAC",
                "G(q) in base q^(1/2), exponents k(3k+1)/4 (Slater 62)",
            ),
            4 => (
                "RAD",
                "H(q) with alternating q^{k(3k+2)} numerators (Slater 97, Ramanujan)",
            ),
            5 => (
                "RAE",
                "H(q) in base q^(1/2), exponents 3k(k+1)/4 (Slater 44)",
            ),
            _ => (
                "RAF",
                "H(q) in base q^(1/2), exponents k(3k+5)/4 (contiguous to Slater 44)",
            ),
        };
        specs.push(entry(id, anchor, none.clone(), check_ra(which)));
    }
    specs.push(entry(
        "RH",
        "H(q) with alternating q^{k(3k-2)} numerators (Slater 15/95)",
        none.clone(),
        check_rh(),
    ));
    specs.push(entry(
        "RH_CT_CHAIN",
        "constant-term chain: CT (1+z)(z;q)_inf theta(1/z;q) = R(1/q;q)-R(1;q) = sum q^{k^2+k}/(q;q)_k",
        vec![
            Instantiation::empty().with_index("step", 0),
            Instantiation::empty().with_index("step", 1),
            Instantiation::empty().with_index("step", 2),
        ],
        check_rh_chain(),
    ));
    specs.push(entry(
        "QUASIPERIODICITY",
        "z theta(1/z;q) = -theta(q/z;q)",
        none.clone(),
        check_quasiperiodicity(),
    ));

    specs.push(entry(
        "DXE",
        "operator identity e_q(y d_x) e_q(tx) = e_q(tx) e_q(ty)",
        vec![
            Instantiation::empty()
                .with("t", q_int(1, d))
                .with("y", q_int(1, d)),
            Instantiation::empty()
                .with("t", q_int(1, d))
                .with("y", q_int(2, d)),
        ],
        check_dxe(),
    ));
    let mut dxh_insts = Vec::new();
    for (x, y) in [(1i64, 1i64), (1, 2)] {
        for k in 0..=6i64 {
            dxh_insts.push(
                Instantiation::empty()
                    .with("x", q_int(x, d))
                    .with("y", q_int(y, d))
                    .with_index("k", k),
            );
        }
    }
    specs.push(entry(
        "DXH",
        "operator route e_q(y d_x) x^k/(q;q)_k vs generating-function route for H_k",
        dxh_insts,
        check_dxh(),
    ));
    specs.push(entry(
        "RHI",
        "sum q^{k(k+1)/2} H_k(x,y) = (-qx;q)_inf sum q^{k(k+1)/2} y^k/((-qx,q;q)_k) (Rogers 1894)",
        vec![
            Instantiation::empty()
                .with("x", q_int(1, d))
                .with("y", q_int(1, d))
                .with_index("sym", 0),
            Instantiation::empty()
                .with("x", q_int(1, d))
                .with("y", q_int(2, d))
                .with_index("sym", 0),
            Instantiation::empty()
                .with("x", q_int(2, d))
                .with("y", q_int(1, d))
                .with_index("sym", 0),
            Instantiation::empty()
                .with("x", q_int(1, d))
                .with("y", q_int(2, d))
                .with_index("sym", 1),
        ],
        check_rhi(),
    ));
    let mut sqrt_insts = Vec::new();
    for k in 0..=6i64 {
        sqrt_insts.push(
            Instantiation::empty()
                .with("x", q_int(1, d))
                .with_index("k", k),
        );
    }
    specs.push(entry(
        "HK_SQRT",
        "H_k(x, x q^(1/2)) = x^k/(q^(1/2);q^(1/2))_k",
        sqrt_insts,
        check_hk_sqrt(),
    ));
    let mut neg_insts = Vec::new();
    for xe in [0i64, 1] {
        for idx in 0..=11i64 {
            neg_insts.push(
                Instantiation::empty()
                    .with("x", q_int(xe, d))
                    .with_index("k", idx),
            );
        }
    }
    specs.push(entry(
        "HK_NEG",
        "H_{2k}(x,-x) = x^{2k}/(q^2;q^2)_k and H_{2k+1}(x,-x) = 0",
        neg_insts,
        check_hk_neg(),
    ));

    let x_01 = vec![
        Instantiation::empty().with("x", mono_one(d)),
        Instantiation::empty().with("x", q_int(1, d)),
    ];
    specs.push(entry(
        "QT_A",
        "specialized operator identity with q^{k(k+2)} inner exponents",
        x_01.clone(),
        check_qt(1),
    ));
    specs.push(entry(
        "QT_B",
        "specialized operator identity with q^{k(k+1)} inner exponents",
        x_01.clone(),
        check_qt(2),
    ));
    specs.push(entry(
        "QT_C",
        "specialized operator identity from the H_k(x,-x) evaluation",
        x_01.clone(),
        check_qt(3),
    ));

    let mut contig_insts = Vec::new();
    for te in [0i64, 1] {
        for k in 0..=8i64 {
            contig_insts.push(
                Instantiation::empty()
                    .with("t", q_int(te, d))
                    .with_index("k", k),
            );
        }
    }
    specs.push(entry(
        "CONTIG_RC",
        "contiguity split relating the two base-q^(1/2) companion transformations",
        contig_insts,
        check_contiguity(),
    ));

    specs
}

/// A deliberately broken entry for harness self-tests: the product side of
/// the first Rogers-Ramanujan identity with one extra coefficient at q^7.
pub fn corrupted_fixture() -> IdentitySpec {
    IdentitySpec {
        id: "CORRUPTED_FIXTURE",
        anchor: "negative control: first Rogers-Ramanujan identity with a perturbed product side",
        instantiations: vec![Instantiation::empty()],
        required_denom: 4,
        default_order_q: 100,
        check: Box::new(|_inst, m, d| {
            let lhs = build(SeriesName::G, m, d)?;
            let bad = QSeries::from_monomial(&q_int(7, d), m)?;
            let rhs = build(SeriesName::TildeG, m, d)?.add(&bad)?;
            Ok(CheckOutcome::Series(lhs, rhs))
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_large_enough_and_anchored() {
        let specs = registry();
        assert!(specs.len() >= 45, "only {} entries", specs.len());
        for spec in &specs {
            assert!(!spec.anchor.is_empty(), "{} lacks an anchor", spec.id);
            assert!(
                !spec.instantiations.is_empty(),
                "{} has no instantiations",
                spec.id
            );
        }
        // ids are unique
        let mut ids: Vec<&str> = specs.iter().map(|s| s.id).collect();
        ids.sort_unstable();
        let before = ids.len();
        ids.dedup();
        assert_eq!(before, ids.len());
    }

    #[test]
    fn rh_has_single_parameterless_instantiation() {
        let spec = lookup("RH").unwrap();
        assert_eq!(spec.instantiations.len(), 1);
        assert_eq!(spec.instantiations[0].label(), "-");
    }

    #[test]
    fn corrupted_fixture_fails_with_mismatch() {
        let spec = corrupted_fixture();
        let reports = verify(&spec, 20, 4).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].status, Status::Fail);
        let mm = reports[0].first_mismatch.as_ref().unwrap();
        assert_eq!(mm.exponent_units, 7 * 4);
    }

    #[test]
    fn verify_selection_rejects_unknown_ids() {
        let err = verify_selection(Some(&["NOPE".to_string()]), 10, 4).unwrap_err();
        assert!(matches!(err, Error::UnknownIdentity(_)));
    }

    #[test]
    fn spot_check_a_few_entries_at_low_order() {
        for id in ["RR_MAIN_G", "GHR_2_SUM", "RM20_1", "RH", "QUASIPERIODICITY"] {
            let spec = lookup(id).unwrap();
            let reports = verify(&spec, 25, 4).unwrap();
            for r in reports {
                assert!(r.passed(), "{id}: {r}");
            }
        }
    }
}
