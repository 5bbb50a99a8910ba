//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test -p qrr --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::time::Instant;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qrr::builders::{ct_representation, r_series, CtKind, SeriesBuilder, SeriesName};
use qrr::formal::FormalSeries;
use qrr::partitions::{count_dp, count_enumerate, PartitionClass, DEFAULT_ENUM_LIMIT};
use qrr::qseries::{Monomial, QSeries};
use qrr::recursion::{recursion_tables, recursion_tables_perturbed};
use qrr::registry::{corrupted_fixture, registry, verify, Status};
use qrr::special::{
    euler_inv_fs, hk_family, poch_fin, q_exponential, theta_at_monomial, theta_laurent,
    theta_sum_at_monomial, QExpKind,
};

const D: u32 = 4;
const DU: i64 = 4;

fn report(criterion: &str, ok: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} -- {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion}: {detail}");
}

#[test]
fn criterion_1_full_registry_at_order_100() {
    let start = Instant::now();
    let mut total = 0usize;
    let mut failed = Vec::new();
    let mut skipped = 0usize;
    for spec in registry() {
        let reports = verify(&spec, 100, D).expect("no engine errors, including exact division");
        for r in reports {
            total += 1;
            match r.status {
                Status::Pass => {}
                Status::Fail => failed.push(format!("{r}")),
                Status::Skipped(_) => skipped += 1,
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let entries = registry().len();
    report(
        "1 (full registry, q-order 100)",
        entries >= 45 && failed.is_empty() && skipped == 0 && secs < 120.0,
        &format!(
            "{entries} entries, {total} verifications, {} failures, {skipped} skips, {secs:.1}s",
            failed.len()
        ),
    );
    for f in failed {
        eprintln!("  {f}");
    }
}

#[test]
fn criterion_2_headline_theorem_to_500() {
    let start = Instant::now();
    let n = 500i64;
    let m = n * DU;
    let g = SeriesBuilder::named(SeriesName::G).build(m, D).unwrap();
    let tg = SeriesBuilder::named(SeriesName::TildeG)
        .build(m, D)
        .unwrap();
    let h = SeriesBuilder::named(SeriesName::H).build(m, D).unwrap();
    let th = SeriesBuilder::named(SeriesName::TildeH)
        .build(m, D)
        .unwrap();
    let g_ok = g.equal_to_order(&tg, m).unwrap().is_none();
    let h_ok = h.equal_to_order(&th, m).unwrap().is_none();
    let secs = start.elapsed().as_secs_f64();
    report(
        "2 (G, H sum vs product through n = 500)",
        g_ok && h_ok && secs < 60.0,
        &format!("G {g_ok}, H {h_ok}, {secs:.1}s"),
    );
}

#[test]
fn criterion_3_triple_route_coefficients() {
    let n = 200usize;
    let tables = recursion_tables(n, D).unwrap();
    let m = n as i64 * DU;
    let g_sum = SeriesBuilder::named(SeriesName::G).build(m, D).unwrap();
    let g_prod = SeriesBuilder::named(SeriesName::TildeG)
        .build(m, D)
        .unwrap();
    let h_sum = SeriesBuilder::named(SeriesName::H).build(m, D).unwrap();
    let h_prod = SeriesBuilder::named(SeriesName::TildeH)
        .build(m, D)
        .unwrap();
    let mut ok = true;
    for i in 0..=n {
        let qi = i as i64;
        ok &= tables.g[i] == g_sum.coeff_q(qi).unwrap();
        ok &= tables.g[i] == g_prod.coeff_q(qi).unwrap();
        ok &= tables.h[i] == h_sum.coeff_q(qi).unwrap();
        ok &= tables.h[i] == h_prod.coeff_q(qi).unwrap();
    }
    // partition-enumeration oracles through 40
    let mut oracle_ok = true;
    for i in 0..=40u32 {
        let g_count = count_enumerate(PartitionClass::Mod5Pm1, i, DEFAULT_ENUM_LIMIT).unwrap();
        let h_count = count_enumerate(PartitionClass::Mod5Pm2, i, DEFAULT_ENUM_LIMIT).unwrap();
        let f_count = count_enumerate(PartitionClass::NotDiv4, i, DEFAULT_ENUM_LIMIT).unwrap();
        oracle_ok &= tables.g[i as usize] == BigInt::from(g_count);
        oracle_ok &= tables.h[i as usize] == BigInt::from(h_count);
        oracle_ok &= tables.f[i as usize] == BigInt::from(f_count);
    }
    let spots = tables.g[4] == BigInt::from(2)
        && tables.g[6] == BigInt::from(3)
        && tables.h[6] == BigInt::from(2)
        && tables.f[5] == BigInt::from(6)
        && tables.h[1] == BigInt::from(0);
    report(
        "3 (recursion vs sum vs product, n <= 200; oracles n <= 40)",
        ok && oracle_ok && spots,
        &format!("routes {ok}, oracles {oracle_ok}, spot values {spots}"),
    );
}

#[test]
fn criterion_4_oracle_independence() {
    let mut ok = true;
    for class in PartitionClass::ALL {
        let dp = count_dp(class, 40);
        for i in 0..=40u32 {
            let e = count_enumerate(class, i, DEFAULT_ENUM_LIMIT).unwrap();
            ok &= dp[i as usize] == BigInt::from(e);
        }
    }
    report(
        "4 (count_dp = count_enumerate on all classes, n <= 40)",
        ok,
        "five classes, exact equality",
    );
}

#[test]
fn criterion_5_cross_route_constant_terms() {
    let m = 100 * DU;
    let mut ok = true;
    let mut detail = String::new();
    for t in [Monomial::one(D), Monomial::q(D)] {
        for kind in [CtKind::N1, CtKind::N2] {
            // ct_representation errors out if its two internal routes disagree
            let ct = ct_representation(kind, &t, m, D).unwrap();
            let direct = r_series(&t, m, D).unwrap();
            let agree = direct.equal_to_order(&ct, m).unwrap().is_none();
            ok &= agree;
            detail.push_str(&format!("{kind:?}@t={t}:{agree} "));
        }
    }
    report("5 (constant-term routes agree, q-order 100)", ok, &detail);
}

#[test]
fn criterion_6_operator_calculus() {
    let m = 40 * DU;
    // operator identity at two instantiations, through x-degree 12
    let mut dxe_ok = true;
    for (te, ye) in [(DU, DU), (DU, 2 * DU)] {
        let t = Monomial::new(1, te, D).unwrap();
        let y = Monomial::new(1, ye, D).unwrap();
        let e_tx = euler_inv_fs(&t, 'x', 1, DU, m).unwrap();
        let lhs = e_tx.apply_eq_operator(&y).unwrap();
        let e_ty = q_exponential(QExpKind::SmallE, &t.times(&y).unwrap(), m).unwrap();
        let rhs = e_tx.scale_coeffs(&e_ty).unwrap();
        let (_, hi) = lhs.window().unwrap();
        dxe_ok &= hi >= 12;
        for k in 0..=12 {
            let a = lhs.coeff_var(k).unwrap();
            let b = rhs.coeff_var(k).unwrap();
            dxe_ok &= a.equal_to_order(&b, m).unwrap().is_none();
        }
    }
    // H_k: operator route vs generating-function route, k <= 6
    let mut dxh_ok = true;
    let x = Monomial::q(D);
    let y = Monomial::new(1, 2 * DU, D).unwrap();
    let hks = hk_family(&x, &y, 6, m).unwrap();
    for k in 0..=6i64 {
        let mut unit = QSeries::one(D, m);
        for j in 1..=k {
            unit = unit.div_one_minus(1, DU * j).unwrap();
        }
        let image = FormalSeries::term('x', k, unit)
            .unwrap()
            .apply_eq_operator(&y)
            .unwrap();
        let lhs = image.eval_polynomial(&x).unwrap();
        dxh_ok &= lhs.equal_to_order(&hks[k as usize], m).unwrap().is_none();
    }
    // H_{2k+1}(x, -x) = 0 for k <= 5
    let mut neg_ok = true;
    for xe in [0, DU] {
        let x = Monomial::new(1, xe, D).unwrap();
        let hks = hk_family(&x, &x.negated(), 11, m).unwrap();
        for k in 0..=5usize {
            neg_ok &= hks[2 * k + 1].is_zero();
        }
    }
    report(
        "6 (operator calculus: identity, H_k routes, odd vanishing)",
        dxe_ok && dxh_ok && neg_ok,
        &format!("identity {dxe_ok}, H_k routes {dxh_ok}, odd vanishing {neg_ok}"),
    );
}

#[test]
fn criterion_7_property_suites() {
    // ring axioms, >= 200 randomized cases at a fixed seed
    let m = 25 * DU;
    let mut rng = StdRng::seed_from_u64(0xacce_97ed);
    let random_series = |rng: &mut StdRng| {
        let terms: Vec<(i64, BigInt)> = (0..rng.gen_range(0..12))
            .map(|_| (rng.gen_range(0..=m), BigInt::from(rng.gen_range(-9i64..=9))))
            .collect();
        QSeries::from_terms(D, m, terms, false).unwrap()
    };
    let mut ring_ok = true;
    for _ in 0..200 {
        let a = random_series(&mut rng);
        let b = random_series(&mut rng);
        let c = random_series(&mut rng);
        ring_ok &= a.mul(&b).unwrap() == b.mul(&a).unwrap();
        ring_ok &= a.add(&b).unwrap() == b.add(&a).unwrap();
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        ring_ok &= left.equal_to_order(&right, m).unwrap().is_none();
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        ring_ok &= left.equal_to_order(&right, m).unwrap().is_none();
    }

    // Jacobi triple product at >= 5 monomials, q-order 100
    let big = 100 * DU;
    let jtp_cases: Vec<(Monomial, i64)> = vec![
        (Monomial::q(D), 3 * DU),
        (Monomial::new(1, 2 * DU, D).unwrap(), 3 * DU),
        (Monomial::new(-1, DU, D).unwrap(), 3 * DU),
        (Monomial::q(D), 5 * DU),
        (Monomial::new(-1, 2 * DU, D).unwrap(), 5 * DU),
        (Monomial::new(-1, 0, D).unwrap(), DU),
    ];
    let mut jtp_ok = true;
    for (z, b) in &jtp_cases {
        let p = theta_at_monomial(z, *b, big).unwrap();
        let s = theta_sum_at_monomial(z, *b, big).unwrap();
        jtp_ok &= p.equal_to_order(&s, big).unwrap().is_none();
    }

    // quasi-periodicity and constant-term shift invariance at q-order 100
    let z = FormalSeries::term('z', 1, QSeries::one(D, big)).unwrap();
    let lhs = z
        .mul(&theta_laurent(true, DU, 'z', D, big).unwrap())
        .unwrap();
    let rhs = qrr::special::theta_fs(&Monomial::q(D), 'z', -1, DU, big)
        .unwrap()
        .negated();
    let quasi_ok = lhs.equal_to_order(&rhs, big).unwrap().is_none();

    let s = theta_laurent(true, 2 * DU, 'z', D, big)
        .unwrap()
        .mul(&euler_inv_fs(&Monomial::q(D), 'z', 1, DU, big).unwrap())
        .unwrap();
    let shifted = s.shift_var(&Monomial::q(D)).unwrap();
    let a = s.constant_term().unwrap();
    let b = shifted.constant_term().unwrap();
    let ct_ok = a
        .equal_to_order(&b, a.order().min(b.order()))
        .unwrap()
        .is_none();

    report(
        "7 (property suites)",
        ring_ok && jtp_ok && quasi_ok && ct_ok,
        &format!(
            "ring axioms(200 cases) {ring_ok}, triple product({} monomials) {jtp_ok}, quasi-periodicity {quasi_ok}, CT invariance {ct_ok}",
            jtp_cases.len()
        ),
    );
}

#[test]
fn criterion_8_negative_controls() {
    // corrupted fixture must fail with a populated first mismatch
    let fixture = corrupted_fixture();
    let reports = verify(&fixture, 30, D).unwrap();
    let fixture_ok = reports.len() == 1
        && matches!(reports[0].status, Status::Fail)
        && reports[0]
            .first_mismatch
            .as_ref()
            .is_some_and(|mm| mm.exponent_units == 7 * DU);

    // perturbing g_1 must break agreement with the product side by n <= 50
    let perturbed = recursion_tables_perturbed(50, D, 1).unwrap();
    let m = 50 * DU;
    let g_prod = SeriesBuilder::named(SeriesName::TildeG)
        .build(m, D)
        .unwrap();
    let h_prod = SeriesBuilder::named(SeriesName::TildeH)
        .build(m, D)
        .unwrap();
    let mut first_divergence = None;
    for n in 0..=50usize {
        let qn = n as i64;
        if perturbed.g[n] != g_prod.coeff_q(qn).unwrap()
            || perturbed.h[n] != h_prod.coeff_q(qn).unwrap()
        {
            first_divergence = Some(n);
            break;
        }
    }
    // and the divergence must propagate past the seed itself
    let clean = recursion_tables(50, D).unwrap();
    let propagates = (2..=50).any(|n| perturbed.g[n] != clean.g[n] || perturbed.h[n] != clean.h[n]);

    report(
        "8 (negative controls)",
        fixture_ok && first_divergence.is_some() && propagates,
        &format!(
            "fixture fails with mismatch: {fixture_ok}, perturbed recursion diverges at n = {first_divergence:?}, propagates: {propagates}"
        ),
    );
}

#[test]
fn poch_recurrence_random_lengths() {
    // (a;q)_{k+1} = (a;q)_k (1 - a q^k) at random k <= 20
    let m = 60 * DU;
    let mut rng = StdRng::seed_from_u64(0xacce_0002);
    let base = Monomial::q(D);
    for _ in 0..12 {
        let k: u32 = rng.gen_range(0..=20);
        let a = Monomial::new(
            if rng.gen_bool(0.5) { 1 } else { -1 },
            rng.gen_range(0..=8),
            D,
        )
        .unwrap();
        let lhs = poch_fin(&a, &base, k + 1, m).unwrap();
        let factor = QSeries::from_terms(
            D,
            m,
            [
                (0, BigInt::from(1)),
                (a.exponent() + k as i64 * DU, -a.coeff().clone()),
            ],
            false,
        )
        .unwrap();
        let rhs = poch_fin(&a, &base, k, m).unwrap().mul(&factor).unwrap();
        assert_eq!(
            lhs.equal_to_order(&rhs, m).unwrap(),
            None,
            "k = {k}, a = {a}"
        );
    }
}
