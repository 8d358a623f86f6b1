//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use chern_core::cobord::{cp, fgl_inverse, CobordClass, GradedClass};
use chern_core::geommodel::{chern_submanifold, pontryagin_submanifold, Bundle, ProjProduct};
use chern_core::pseries::{ahat_series, euler_series, signature_series, tanh_over_x, todd_series, TruncSeries};
use chern_core::ring::q;
use chern_core::symfunc::{cauchy_check, BigradedElement, Partition};
use chern_core::theorems::{
    bv_congruence, chi_y_normal, cor_as, cor_as_value, euler_even, line_factor, models_up_to, test_bundles,
    thm3, thm3_lhs, thm4_1, thm4_1_lhs, thm4_2, thm5_1, VerificationReport,
};
use chern_core::{QPoly, Ring, Q};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok_report(r: chern_core::Result<VerificationReport>) -> Result<VerificationReport, String> {
    let r = r.map_err(|e| e.to_string())?;
    ensure(r.equal, || format!("not equal: {r}"))?;
    Ok(r)
}

fn hy(parts: &[u32]) -> BigradedElement {
    BigradedElement::hy(Partition::new(parts.iter().copied()))
}

fn hz(parts: &[u32]) -> BigradedElement {
    BigradedElement::hz(Partition::new(parts.iter().copied()))
}

fn model(dims: &[usize]) -> ProjProduct {
    ProjProduct::new(dims.to_vec())
}

fn inv(s: TruncSeries<Q>) -> TruncSeries<Q> {
    s.inverse().expect("constant term is 1")
}

fn cauchy() -> Outcome {
    for n in 0..=6 {
        ensure(cauchy_check(n), || format!("forms disagree in degree {n}"))?;
    }
    Ok("product, exponential and sum forms agree through degree 6".into())
}

fn master_relation() -> Outcome {
    let expected = hy(&[1]).scale(&q(-2)) + hz(&[1]).scale(&q(-2));
    ensure(thm3_lhs(&cp(1)) == expected, || "CP(1) closed form".into())?;
    let r = thm3(&model(&[1]));
    ensure(r.rhs.as_bigraded() == Some(expected), || format!("CP(1) rhs: {}", r.rhs))?;
    let models = models_up_to(4);
    for m in &models {
        ok_report(Ok(thm3(m)))?;
    }
    Ok(format!("{} models up to dimension 4; CP(1) gives -2*h[1](y) - 2*h[1](z)", models.len()))
}

fn chi_y_relation() -> Outcome {
    let one_plus_y = QPoly::from_ints(&[1, 1]);
    for n in 1..=4 {
        let r = ok_report(Ok(thm4_1(&model(&[n]))))?;
        ensure(r.rhs.as_poly() == Some(one_plus_y.pow(n)), || format!("CP({n}) rhs {}", r.rhs))?;
    }
    let y = QPoly::var();
    let cp2 = model(&[2]);
    let s = chi_y_normal(2);
    let chi = |k: usize| {
        chern_submanifold(&cp2, &Partition::column(k), &Bundle::tangent())
            .unwrap()
            .genus(&s)
    };
    let parts = [chi(0), chi(1), chi(2)];
    ensure(parts[0] == QPoly::from_ints(&[1, -1, 1]), || "chi_y(CP(2))".into())?;
    ensure(parts[1] == QPoly::from_ints(&[3, -3]), || "chi_y([c_1])".into())?;
    ensure(parts[2] == QPoly::from_ints(&[3]), || "chi_y([c_2])".into())?;
    let sum = parts[0].clone() + y.clone() * parts[1].clone() + y.pow(2) * parts[2].clone();
    ensure(sum == one_plus_y.pow(2), || "CP(2) breakdown".into())?;
    let at = |k: usize, v: i64| parts[k].eval(&q(v));
    let euler = [at(0, -1), -at(1, -1), at(2, -1)];
    ensure(euler == [q(3), q(-6), q(3)], || format!("y=-1 terms {euler:?}"))?;
    ensure(thm4_1_lhs(&cp2).eval(&q(-1)).is_zero(), || "y=-1 lhs".into())?;
    let sig = [at(0, 1), at(1, 1), at(2, 1)];
    ensure(sig == [q(1), q(0), q(3)], || format!("y=1 terms {sig:?}"))?;
    ensure(thm4_1_lhs(&cp2).eval(&q(1)) == q(4), || "y=1 lhs".into())?;
    Ok("(1+y)^n for CP(n), n<=4; CP(2): 3-6+3=0 and 1+0+3=4".into())
}

fn signature_relation() -> Outcome {
    let cp2 = ok_report(thm4_2(&model(&[2])))?;
    ensure(cp2.lhs.as_scalar() == Some(q(-2)), || format!("CP(2) lhs {}", cp2.lhs))?;
    let p1 = pontryagin_submanifold(&model(&[2]), 1).genus(&tanh_over_x(2));
    ensure(p1 == q(3), || format!("sigma([P_1]) = {p1}"))?;
    let quad = ok_report(thm4_2(&model(&[1, 1])))?;
    ensure(quad.lhs.as_scalar() == Some(q(0)), || "CP(1)*CP(1)".into())?;
    let eight = ok_report(thm4_2(&model(&[2, 2])))?;
    Ok(format!("CP(2): -2 = -2; CP(1)*CP(1): 0 = 0; CP(2)*CP(2): {} = {}", eight.lhs, eight.rhs))
}

fn bv() -> Outcome {
    let models: Vec<_> = models_up_to(4).into_iter().filter(|m| m.dim() == 2 || m.dim() == 4).collect();
    for m in &models {
        ok_report(bv_congruence(m))?;
    }
    Ok(format!("{} products of real dimension 4 and 8", models.len()))
}

fn todd_transformation() -> Outcome {
    let r = ok_report(thm5_1(&model(&[1]), &Bundle::line([1])))?;
    let expected = hz(&[1]) - hy(&[1]).scale(&q(2));
    ensure(r.lhs.as_bigraded() == Some(expected), || format!("CP(1), O(1): {}", r.lhs))?;
    ok_report(thm5_1(&model(&[2]), &Bundle::line([1]).sum(Bundle::line([1]))))?;
    ok_report(thm5_1(&model(&[1, 1]), &Bundle::line([1, 0])))?;
    Ok("(CP(1), O(1)) = h[1](z) - 2*h[1](y); (CP(2), O(1)+O(1)); (CP(1)*CP(1), O(1,0))".into())
}

fn integrality() -> Outcome {
    let v = cor_as_value(&model(&[1]), &Bundle::zero()).map_err(|e| e.to_string())?;
    ensure(v == BigradedElement::one() - hy(&[1]).scale(&q(2)), || format!("CP(1), 0: {v}"))?;
    let mut count = 0;
    for m in models_up_to(3) {
        for b in test_bundles(&m, true) {
            ok_report(cor_as(&m, &b))?;
            count += 1;
        }
    }
    Ok(format!("{count} (M, eta) pairs integral; CP(1) with zero bundle gives 1 - 2*h[1](y)"))
}

fn euler_parity() -> Outcome {
    let mut count = 0;
    for m in models_up_to(4) {
        let Some(factor) = line_factor(&m) else { continue };
        let r = ok_report(euler_even(&m, factor))?;
        let coeff = r.lhs.as_scalar().ok_or("scalar")?;
        let chi = m.euler_char();
        let half = chi.clone() / q(2);
        ensure(coeff == half || coeff == -half, || format!("{m}: |{coeff}| != chi/2"))?;
        ensure(chi.to_integer() % 2 == 0.into(), || format!("{m}: odd chi"))?;
        count += 1;
    }
    let quad = euler_even(&model(&[1, 1]), 0).map_err(|e| e.to_string())?;
    Ok(format!(
        "{count} models; coefficient is (-1)^(n-1) chi/2, CP(1)*CP(1) gives {} with chi = 4",
        quad.lhs
    ))
}

fn oracle() -> Outcome {
    for m in models_up_to(4).into_iter().filter(|m| m.dim() > 0) {
        let top = chern_submanifold(&m, &Partition::column(m.dim()), &Bundle::tangent()).map_err(|e| e.to_string())?;
        let points = top.component(0).normal(&Partition::empty());
        ensure(top.top_dim() == 0 && points == m.euler_char(), || format!("{m}: {points} points"))?;
        let normal = m.normal_numbers();
        ensure(normal.tangent_numbers() == m.tangent_numbers(), || format!("{m}: routes differ"))?;
        ensure(
            CobordClass::from_tangent(m.dim(), m.tangent_numbers()) == normal,
            || format!("{m}: antipode round trip"),
        )?;
    }
    let iota = fgl_inverse(5);
    let twice = iota.compose(&iota).map_err(|e| e.to_string())?;
    ensure(twice == TruncSeries::<GradedClass>::variable(5), || "iota(iota(u)) != u".into())?;
    Ok("Euler class counts chi, tangent/normal routes agree, iota(iota(u)) = u to order 5".into())
}

fn genus_table() -> Outcome {
    for n in 1..=4 {
        let t = cp(n).genus(&inv(todd_series(n)));
        ensure(t == q(1), || format!("T(CP({n})) = {t}"))?;
        let e = cp(n).genus(&inv(euler_series(n)));
        ensure(e == q(n as i64 + 1), || format!("chi(CP({n})) = {e}"))?;
    }
    let sigma = cp(2).genus(&inv(signature_series(2)));
    ensure(sigma == q(1), || format!("sigma(CP(2)) = {sigma}"))?;
    let chi_y = cp(2).genus(&chi_y_normal(2));
    ensure(chi_y == QPoly::from_ints(&[1, -1, 1]), || format!("chi_y(CP(2)) = {chi_y}"))?;
    let ahat = cp(2).genus(&inv(ahat_series(2)));
    ensure(ahat == Q::new((-1).into(), 8.into()), || format!("Ahat(CP(2)) = {ahat}"))?;
    Ok("T(CP(n)) = 1, sigma(CP(2)) = 1, chi_y(CP(2)) = 1 - y + y^2, chi(CP(n)) = n+1, Ahat(CP(2)) = -1/8".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Cauchy identity", cauchy),
        ("master relation", master_relation),
        ("tangent chi_y relation", chi_y_relation),
        ("signature relation", signature_relation),
        ("signature congruence", bv),
        ("Todd class of the transformation", todd_transformation),
        ("integrality", integrality),
        ("even Euler characteristic", euler_parity),
        ("oracle self-consistency", oracle),
        ("genus table", genus_table),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({ms} ms): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({ms} ms): {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
