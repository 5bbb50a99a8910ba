//! Constructors for the named objects: q-Pochhammer symbols, theta functions
//! in product and Jacobi-sum form, Euler expansions, q-exponentials, and the
//! H_k coefficient family.
//!
//! Every Laurent-window generator here certifies its window: the q-order of
//! the omitted var^k coefficients grows without bound (quadratically for
//! theta and the E-type Euler expansion, linearly with slope ord(arg) for the
//! inverted Euler expansion), which is what makes constant-term computations
//! finite.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::formal::FormalSeries;
use crate::qseries::{Monomial, QSeries};

/// Length of a q-Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLength {
    Finite(u32),
    Infinite,
}

/// (arg; base)_length with a monomial argument and base +-q^b, b >= 1 unit.
#[derive(Clone, Debug)]
pub struct PochhammerSpec {
    pub arg: Monomial,
    pub base: Monomial,
    pub length: PochLength,
}

impl PochhammerSpec {
    pub fn new(arg: Monomial, base: Monomial, length: PochLength) -> Result<Self> {
        if !base.is_unit_coeff() || base.exponent() < 1 {
            return Err(Error::UnsupportedComposition(format!(
                "pochhammer base must be +-q^b with b >= 1 unit, got {base}"
            )));
        }
        if matches!(length, PochLength::Infinite) && !base.coeff().is_one() {
            return Err(Error::UnsupportedComposition(
                "infinite product requires base coefficient +1".into(),
            ));
        }
        Ok(PochhammerSpec { arg, base, length })
    }
}

/// Exact truncated q-Pochhammer product.
///
/// Infinite products need ord(arg) >= 0 so the factors tend to 1; unit
/// constant term (for inversion downstream) additionally needs ord > 0 and
/// is checked at inversion, not here.
pub fn poch(spec: &PochhammerSpec, order: i64) -> Result<QSeries> {
    let denom = spec.base.denom().max(spec.arg.denom());
    let arg = spec.arg.rescaled(denom)?;
    let base = spec.base.rescaled(denom)?;
    let (ae, be) = (arg.exponent(), base.exponent());
    match spec.length {
        PochLength::Infinite => {
            if ae < 0 {
                return Err(Error::DivergentProduct(ae));
            }
            let mut out = QSeries::one(denom, order);
            let mut j = 0i64;
            while ae + j * be <= order {
                let fe = ae + j * be;
                let fc = arg.coeff() * base.coeff().pow(j as u32);
                if fe == 0 && fc.is_one() {
                    return Ok(QSeries::zero(denom, order));
                }
                let factor =
                    QSeries::from_terms(denom, order, [(0, BigInt::one()), (fe, -fc)], false)?;
                out = out.mul(&factor)?;
                j += 1;
            }
            Ok(out)
        }
        PochLength::Finite(k) => {
            // Factors may dip to negative exponents for Laurent arguments;
            // run at enough extra order to keep the target order trusted.
            let mut depth = 0i64;
            for j in 0..k as i64 {
                depth += (-(ae + j * be)).max(0);
            }
            let work = order + depth;
            let mut out = QSeries::one(denom, work);
            for j in 0..k as i64 {
                let fe = ae + j * be;
                let fc = arg.coeff() * base.coeff().pow(j as u32);
                if fe == 0 && fc.is_one() {
                    return Ok(QSeries::zero(denom, order));
                }
                let factor =
                    QSeries::from_terms(denom, work, [(0, BigInt::one()), (fe, -fc)], fe < 0)?;
                out = out.mul(&factor)?;
            }
            Ok(out.truncated(order))
        }
    }
}

/// (arg; q^b)_infinity with a plain positive base.
pub fn poch_inf(arg: &Monomial, base_units: i64, order: i64) -> Result<QSeries> {
    let base = Monomial::new(1, base_units, arg.denom())?;
    poch(
        &PochhammerSpec::new(arg.clone(), base, PochLength::Infinite)?,
        order,
    )
}

/// (arg; base)_k for a monomial base with coefficient +-1.
pub fn poch_fin(arg: &Monomial, base: &Monomial, k: u32, order: i64) -> Result<QSeries> {
    poch(
        &PochhammerSpec::new(arg.clone(), base.clone(), PochLength::Finite(k))?,
        order,
    )
}

/// (a_1, ..., a_m; q^b)_infinity.
pub fn poch_multi_inf(args: &[Monomial], base_units: i64, order: i64) -> Result<QSeries> {
    let mut out = QSeries::one(args[0].denom(), order);
    for a in args {
        out = out.mul(&poch_inf(a, base_units, order)?)?;
    }
    Ok(out)
}

/// theta(z; q^b) = (q^b, z, q^b/z; q^b)_infinity, evaluated as a product.
///
/// Arguments with ord(z) outside [0, b] are first reduced with the
/// quasi-periodicity theta(q^b z) = -z^{-1} theta(z) (coefficient +-1 only),
/// which can introduce a Laurent prefactor. Arguments z = q^{mb} yield the
/// exact zero series.
pub fn theta_at_monomial(z: &Monomial, base_units: i64, order: i64) -> Result<QSeries> {
    if base_units < 1 {
        return Err(Error::UnsupportedComposition(
            "theta base must have positive q-order".into(),
        ));
    }
    if !z.is_unit_coeff() {
        return Err(Error::NormalizationRequired(format!(
            "theta argument coefficient must be +-1, got {}",
            z.coeff()
        )));
    }
    let denom = z.denom();
    let e = z.exponent();
    let b = base_units;
    if e.rem_euclid(b) == 0 && z.coeff().is_one() {
        return Ok(QSeries::zero(denom, order));
    }
    let m = e.div_euclid(b);
    if m == 0 {
        return theta_triple_product(z, b, order);
    }
    // theta(q^{mb} w) = (-1)^m q^{-b m(m-1)/2} w^{-m} theta(w)
    let w = Monomial::new(z.coeff().clone(), e - m * b, denom)?;
    let shift = -b * m * (m - 1) / 2 - m * w.exponent();
    let sign = if m.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    // w has coefficient +-1; w^{-m} contributes coeff^m since (+-1)^{-1} = +-1
    let sign = sign * z.coeff().pow(m.unsigned_abs() as u32);
    let inner = theta_triple_product(&w, b, order + (-shift).max(0))?;
    let prefactor = Monomial::new(sign, shift, denom)?;
    Ok(inner
        .into_laurent()
        .mul_monomial(&prefactor)?
        .truncated(order.max(0)))
}

fn theta_triple_product(z: &Monomial, b: i64, order: i64) -> Result<QSeries> {
    let denom = z.denom();
    let e = z.exponent();
    debug_assert!((0..=b).contains(&e));
    let qb = Monomial::new(1, b, denom)?;
    let z_inv_q = Monomial::new(z.coeff().clone(), b - e, denom)?; // q^b/z for coeff +-1
    let p1 = poch_inf(&qb, b, order)?;
    let p2 = poch_inf(z, b, order)?;
    let p3 = poch_inf(&z_inv_q, b, order)?;
    p1.mul(&p2)?.mul(&p3)
}

/// theta(z; q^b) evaluated through the bilateral Jacobi sum
/// sum_k (-1)^k q^{b k(k-1)/2} z^k. Independent route from the product form.
pub fn theta_sum_at_monomial(z: &Monomial, base_units: i64, order: i64) -> Result<QSeries> {
    if !z.is_unit_coeff() {
        return Err(Error::NormalizationRequired(
            "theta sum evaluation needs coefficient +-1".into(),
        ));
    }
    let denom = z.denom();
    let b = base_units;
    let e = z.exponent();
    let mut terms: Vec<(i64, BigInt)> = Vec::new();
    let mut push_side = |dir: i64| {
        let mut k = if dir > 0 { 0 } else { -1 };
        loop {
            let expo = b * k * (k - 1) / 2 + k * e;
            let quad = b * k * (k - 1) / 2;
            if quad > order + (k * e).abs() {
                break;
            }
            if (0..=order).contains(&expo) {
                let sign = if k.rem_euclid(2) == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                terms.push((expo, sign * z.coeff().pow(k.unsigned_abs() as u32)));
            }
            k += dir;
        }
    };
    push_side(1);
    push_side(-1);
    QSeries::from_terms(denom, order, terms, false)
}

/// The Jacobi sum as a formal Laurent series:
/// sum_l (-1)^l q^{b l(l-1)/2} arg^l var^{power*l}, with arg = +-q^e.
///
/// Each window coefficient is a single monomial; the omitted coefficients
/// have q-order beyond the trusted order by the quadratic growth of the
/// exponent, so the result is complete.
pub fn theta_fs(
    arg: &Monomial,
    var: char,
    power: i64,
    base_units: i64,
    order: i64,
) -> Result<FormalSeries> {
    if power == 0 {
        return Err(Error::UnsupportedComposition("zero variable power".into()));
    }
    if !arg.is_unit_coeff() {
        return Err(Error::NormalizationRequired(
            "theta series argument coefficient must be +-1".into(),
        ));
    }
    let denom = arg.denom();
    let b = base_units;
    let e = arg.exponent();
    let mut coeffs: Vec<(i64, QSeries)> = Vec::new();
    let push_side = |dir: i64, coeffs: &mut Vec<(i64, QSeries)>| -> Result<()> {
        let mut l = if dir > 0 { 0 } else { -1 };
        loop {
            let expo = b * l * (l - 1) / 2 + l * e;
            let quad = b * l * (l - 1) / 2;
            if quad > order + (l * e).abs() {
                break;
            }
            if (0..=order).contains(&expo) {
                let sign = if l.rem_euclid(2) == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                let c = sign * arg.coeff().pow(l.unsigned_abs() as u32);
                coeffs.push((
                    power * l,
                    QSeries::from_terms(denom, order, [(expo, c)], false)?,
                ));
            }
            l += dir;
        }
        Ok(())
    };
    push_side(1, &mut coeffs)?;
    push_side(-1, &mut coeffs)?;
    FormalSeries::from_coeffs(var, denom, order, coeffs, true)
}

/// theta(z; q^b) or theta(1/z; q^b) as a formal Laurent series in z.
pub fn theta_laurent(
    invert_var: bool,
    base_units: i64,
    var: char,
    denom: u32,
    order: i64,
) -> Result<FormalSeries> {
    theta_fs(
        &Monomial::one(denom),
        var,
        if invert_var { -1 } else { 1 },
        base_units,
        order,
    )
}

/// 1/(a var^N; q^b)_infinity = sum_k a^k var^{Nk} / (q^b;q^b)_k.
/// Needs ord(a) >= 1 unit; the window is {k : k ord(a) <= order}.
pub fn euler_inv_fs(
    a: &Monomial,
    var: char,
    var_power: u32,
    base_units: i64,
    order: i64,
) -> Result<FormalSeries> {
    if a.exponent() < 1 {
        return Err(Error::DivergentProduct(a.exponent()));
    }
    let denom = a.denom();
    let mut coeffs = Vec::new();
    let mut c = QSeries::one(denom, order);
    let mut k = 0i64;
    while k * a.exponent() <= order {
        coeffs.push((
            var_power as i64 * k,
            c.mul_monomial(&a.pow(k)?)?.truncated(order),
        ));
        k += 1;
        c = c.div_one_minus(1, k * base_units)?;
    }
    FormalSeries::from_coeffs(var, denom, order, coeffs, true)
}

/// (-a var; q^b)_infinity = sum_k q^{b k(k-1)/2} a^k var^k / (q^b;q^b)_k.
/// The quadratic exponent keeps the window finite even at ord(a) = 0.
pub fn euler_eq_fs(a: &Monomial, var: char, base_units: i64, order: i64) -> Result<FormalSeries> {
    if a.exponent() < 0 {
        return Err(Error::DivergentProduct(a.exponent()));
    }
    let denom = a.denom();
    let b = base_units;
    let mut coeffs = Vec::new();
    let mut c = QSeries::one(denom, order);
    let mut k = 0i64;
    while b * k * (k - 1) / 2 + k * a.exponent() <= order {
        let lead = b * k * (k - 1) / 2;
        let scale = a.pow(k)?.times(&Monomial::new(1, lead, denom)?)?;
        coeffs.push((k, c.mul_monomial(&scale)?.truncated(order)));
        k += 1;
        c = c.div_one_minus(1, k * b)?;
    }
    FormalSeries::from_coeffs(var, denom, order, coeffs, true)
}

/// The first `max_degree + 1` terms of sum_k a^k var^k/(q;q)_k, exact through
/// var^max_degree but not complete (ord(a) = 0 is allowed here).
pub fn euler_inv_truncated(
    a: &Monomial,
    var: char,
    max_degree: u32,
    order: i64,
) -> Result<FormalSeries> {
    if a.exponent() < 0 {
        return Err(Error::DivergentProduct(a.exponent()));
    }
    let denom = a.denom();
    let d = denom as i64;
    let mut coeffs = Vec::new();
    let mut c = QSeries::one(denom, order);
    for k in 0..=max_degree as i64 {
        if k > 0 {
            c = c.div_one_minus(1, k * d)?;
        }
        coeffs.push((k, c.mul_monomial(&a.pow(k)?)?.truncated(order)));
    }
    FormalSeries::from_coeffs(var, denom, order, coeffs, false)
}

/// Which q-exponential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QExpKind {
    /// e_q(t) = 1/(t;q)_infinity; needs ord(t) >= 1.
    SmallE,
    /// E_q(t) = (-t;q)_infinity.
    BigE,
}

pub fn q_exponential(kind: QExpKind, t: &Monomial, order: i64) -> Result<QSeries> {
    let d = t.denom() as i64;
    match kind {
        QExpKind::SmallE => {
            if t.exponent() < 1 {
                return Err(Error::DivergentProduct(t.exponent()));
            }
            poch_inf(t, d, order)?.invert()
        }
        QExpKind::BigE => poch_inf(&t.negated(), d, order),
    }
}

/// H_0 .. H_{k_max} from the generating function
/// 1/(tx, ty; q)_infinity = sum_k H_k(x, y) t^k,
/// expanded as a product of two Euler series in the outer variable t.
pub fn hk_family(x: &Monomial, y: &Monomial, k_max: u32, order: i64) -> Result<Vec<QSeries>> {
    if x.exponent() < 0 || y.exponent() < 0 {
        return Err(Error::OrderExhausted(x.exponent().min(y.exponent())));
    }
    let fx = euler_inv_truncated(x, 't', k_max, order)?;
    let fy = euler_inv_truncated(y, 't', k_max, order)?;
    let prod = fx.mul(&fy)?;
    let mut out = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max as i64 {
        out.push(match prod.window_iter().find(|(j, _)| *j == k) {
            Some((_, s)) => s.clone(),
            None => QSeries::zero(x.denom(), prod.order()),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    const D: u32 = 4;
    const DU: i64 = 4;
    const M: i64 = 200;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn poch_qq3_hand_expansion() {
        let s = poch_fin(&Monomial::q(D), &Monomial::q(D), 3, M).unwrap();
        let expect: Vec<(i64, i64)> = vec![(0, 1), (1, -1), (2, -1), (4, 1), (5, 1), (6, -1)];
        for (n, c) in expect {
            assert_eq!(s.coeff_q(n).unwrap(), bi(c));
        }
    }

    #[test]
    fn poch_empty_product_is_one() {
        let s = poch_fin(&Monomial::q(D), &Monomial::q(D), 0, M).unwrap();
        assert_eq!(s, QSeries::one(D, M));
    }

    #[test]
    fn poch_inf_pentagonal_start() {
        let s = poch_inf(&Monomial::q(D), DU, 5 * DU).unwrap();
        assert_eq!(
            s.coeff_table(5).unwrap(),
            [1, -1, -1, 0, 0, 1].map(BigInt::from)
        );
    }

    #[test]
    fn poch_inf_divergent_for_negative_order_argument() {
        let arg = Monomial::new(1, -DU, D).unwrap();
        assert!(matches!(
            poch_inf(&arg, DU, M),
            Err(Error::DivergentProduct(_))
        ));
    }

    #[test]
    fn poch_recurrence_step() {
        // (a;q)_{k+1} = (a;q)_k (1 - a q^k) for a handful of k
        let a = Monomial::new(-1, 3, D).unwrap();
        let base = Monomial::q(D);
        for k in [0u32, 1, 2, 5, 11, 20] {
            let lhs = poch_fin(&a, &base, k + 1, M).unwrap();
            let factor = QSeries::from_terms(
                D,
                M,
                [
                    (0, BigInt::one()),
                    (a.exponent() + k as i64 * DU, -a.coeff().clone()),
                ],
                false,
            )
            .unwrap();
            let rhs = poch_fin(&a, &base, k, M).unwrap().mul(&factor).unwrap();
            assert_eq!(lhs.equal_to_order(&rhs, M).unwrap(), None, "k = {k}");
        }
    }

    #[test]
    fn poch_with_laurent_argument() {
        // (q^-2;q)_2 = (1 - q^-2)(1 - q^-1), an exact Laurent polynomial
        let arg = Monomial::new(1, -2 * DU, D).unwrap();
        let s = poch_fin(&arg, &Monomial::q(D), 2, M).unwrap();
        assert_eq!(s.coeff(0).unwrap(), bi(1));
        assert_eq!(s.coeff(-DU).unwrap(), bi(-1));
        assert_eq!(s.coeff(-2 * DU).unwrap(), bi(-1));
        assert_eq!(s.coeff(-3 * DU).unwrap(), bi(1));
        // a (1 - q^0) factor collapses the product
        let s = poch_fin(&arg, &Monomial::q(D), 3, M).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn theta_at_one_vanishes() {
        let z = Monomial::one(D);
        assert!(theta_at_monomial(&z, DU, M).unwrap().is_zero());
        let z = Monomial::new(1, 3 * DU, D).unwrap();
        assert!(theta_at_monomial(&z, DU, M).unwrap().is_zero());
    }

    #[test]
    fn theta_q_base_q3_is_euler_product() {
        // theta(q;q^3) = (q^3,q,q^2;q^3)_inf = (q;q)_inf
        let th = theta_at_monomial(&Monomial::q(D), 3 * DU, M).unwrap();
        let euler = poch_inf(&Monomial::q(D), DU, M).unwrap();
        assert_eq!(th.equal_to_order(&euler, M).unwrap(), None);
    }

    #[test]
    fn theta_neg_q_base_q10_low_terms() {
        let z = Monomial::new(-1, DU, D).unwrap();
        let th = theta_at_monomial(&z, 10 * DU, M).unwrap();
        assert_eq!(th.coeff_q(0).unwrap(), bi(1));
        assert_eq!(th.coeff_q(1).unwrap(), bi(1));
    }

    #[test]
    fn theta_sum_matches_product_at_monomials() {
        let cases: Vec<(Monomial, i64)> = vec![
            (Monomial::q(D), 3 * DU),
            (Monomial::new(1, 2 * DU, D).unwrap(), 3 * DU),
            (Monomial::new(-1, DU, D).unwrap(), 3 * DU),
            (Monomial::q(D), 5 * DU),
            (Monomial::new(-1, 2 * DU, D).unwrap(), 5 * DU),
            (Monomial::new(-1, 0, D).unwrap(), DU),
        ];
        for (z, b) in cases {
            let p = theta_at_monomial(&z, b, M).unwrap();
            let s = theta_sum_at_monomial(&z, b, M).unwrap();
            assert_eq!(p.equal_to_order(&s, M).unwrap(), None, "z={z} b={b}");
        }
    }

    #[test]
    fn theta_quasi_periodic_normalization() {
        // theta(q^4 z; q^3) with z = -q^2: reduce and compare against the sum
        let z = Monomial::new(-1, 6 * DU, D).unwrap();
        let th = theta_at_monomial(&z, 3 * DU, M).unwrap();
        // direct bilateral sum at the same argument, allowing negative exponents
        let b = 3 * DU;
        let mut terms: Vec<(i64, BigInt)> = Vec::new();
        for k in -60i64..60 {
            let e = b * k * (k - 1) / 2 + k * 6 * DU;
            if e <= th.order() {
                let sign = if k.rem_euclid(2) == 0 { bi(1) } else { bi(-1) };
                terms.push((e, sign * bi(-1).pow(k.unsigned_abs() as u32)));
            }
        }
        let direct = QSeries::from_terms(D, th.order(), terms, true).unwrap();
        assert_eq!(th.equal_to_order(&direct, th.order()).unwrap(), None);
    }

    #[test]
    fn theta_laurent_named_coefficients() {
        let th = theta_laurent(false, DU, 'z', D, M).unwrap();
        assert_eq!(th.coeff_var(0).unwrap().coeff_q(0).unwrap(), bi(1));
        assert_eq!(th.coeff_var(1).unwrap().coeff_q(0).unwrap(), bi(-1));
        let thi = theta_laurent(true, DU, 'z', D, M).unwrap();
        assert_eq!(thi.coeff_var(-1).unwrap().coeff_q(0).unwrap(), bi(-1));
        assert_eq!(thi.coeff_var(0).unwrap().term_count(), 1);
    }

    #[test]
    fn euler_inv_window_coefficients() {
        let s = euler_inv_fs(&Monomial::q(D), 'z', 1, DU, M).unwrap();
        // z^0 -> 1, z^1 -> q/(1-q)
        assert_eq!(s.coeff_var(0).unwrap().coeff_q(0).unwrap(), bi(1));
        let z1 = s.coeff_var(1).unwrap();
        assert_eq!(z1.coeff_q(1).unwrap(), bi(1));
        assert_eq!(z1.coeff_q(2).unwrap(), bi(1));
        assert_eq!(z1.coeff_q(0).unwrap(), bi(0));
    }

    #[test]
    fn euler_inv_telescopes_against_product() {
        // (az;q)_inf * 1/(az;q)_inf = 1 with (az;q)_inf = (-(-a)z;q)_inf
        let a = Monomial::q(D);
        let inv = euler_inv_fs(&a, 'z', 1, DU, M).unwrap();
        let prod = euler_eq_fs(&a.negated(), 'z', DU, M).unwrap();
        let res = prod.mul(&inv).unwrap();
        let one = FormalSeries::one('z', D, M);
        assert_eq!(res.equal_to_order(&one, M).unwrap(), None);
    }

    #[test]
    fn euler_eq_z2_coefficient() {
        // (-z;q)_inf: z^2 coefficient is q/(q;q)_2 = q + q^2 + 2q^3 + ...
        let s = euler_eq_fs(&Monomial::one(D), 'z', DU, M).unwrap();
        let z2 = s.coeff_var(2).unwrap();
        assert_eq!(z2.coeff_q(1).unwrap(), bi(1));
        assert_eq!(z2.coeff_q(2).unwrap(), bi(1));
        assert_eq!(z2.coeff_q(3).unwrap(), bi(2));
        assert_eq!(s.coeff_var(0).unwrap().coeff_q(0).unwrap(), bi(1));
    }

    #[test]
    fn q_exponential_values() {
        // e_q(q) counts partitions
        let e = q_exponential(QExpKind::SmallE, &Monomial::q(D), 3 * DU).unwrap();
        assert_eq!(e.coeff_table(3).unwrap(), [1, 1, 2, 3].map(BigInt::from));
        // e_q(q) * (q;q)_inf = 1
        let e = q_exponential(QExpKind::SmallE, &Monomial::q(D), M).unwrap();
        let p = poch_inf(&Monomial::q(D), DU, M).unwrap();
        assert_eq!(
            e.mul(&p)
                .unwrap()
                .equal_to_order(&QSeries::one(D, M), M)
                .unwrap(),
            None
        );
        // E_q of a monomial beyond the order is 1
        let far = Monomial::new(1, M + 1, D).unwrap();
        let big = q_exponential(QExpKind::BigE, &far, M).unwrap();
        assert_eq!(big, QSeries::one(D, M));
        assert!(q_exponential(QExpKind::SmallE, &Monomial::one(D), M).is_err());
    }

    #[test]
    fn hk_family_first_values() {
        let x = Monomial::q(D);
        let y = Monomial::new(1, 2 * DU, D).unwrap();
        let hk = hk_family(&x, &y, 3, M).unwrap();
        assert_eq!(hk[0], QSeries::one(D, M));
        // H_1(x,y) = (x+y)/(1-q)
        let expect = QSeries::from_terms(D, M, [(DU, bi(1)), (2 * DU, bi(1))], false)
            .unwrap()
            .div_one_minus(1, DU)
            .unwrap();
        assert_eq!(hk[1].equal_to_order(&expect, M).unwrap(), None);
    }

    #[test]
    fn hk_odd_vanishes_at_neg_pair() {
        let x = Monomial::q(D);
        let hk = hk_family(&x, &x.negated(), 7, M).unwrap();
        assert!(hk[3].is_zero());
        assert!(hk[5].is_zero());
        assert!(hk[7].is_zero());
    }
}
