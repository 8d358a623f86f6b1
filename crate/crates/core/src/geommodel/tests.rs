use super::*;
use crate::cobord::cp;
use crate::pseries::tanh_over_x;
use crate::ring::q;

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.iter().copied())
}

/// All products of projective spaces with total dimension `1..=max`,
/// factor dimensions weakly decreasing.
fn models(max: usize) -> Vec<ProjProduct> {
    partitions_up_to(max)
        .into_iter()
        .filter(|l| !l.is_empty())
        .map(|l| ProjProduct::new(l.parts().iter().map(|&d| d as usize).collect::<Vec<_>>()))
        .collect()
}

use crate::symfunc::partitions_up_to;

#[test]
fn pairing() {
    let cp2 = ProjProduct::new([2]);
    let x: CohoPoly<Q> = cp2.generator(0);
    assert_eq!(cp2.pair(&(x.clone() * x.clone()).scale(&q(3))), q(3));
    assert_eq!(cp2.pair(&x), q(0));
    let cp11 = ProjProduct::new([1, 1]);
    let x1: CohoPoly<Q> = cp11.generator(0);
    let x2: CohoPoly<Q> = cp11.generator(1);
    assert_eq!(cp11.pair(&(x1.clone() * x2)), q(1));
    assert!((x1.clone() * x1).is_zero());
}

#[test]
fn cp2_numbers() {
    let cp2 = ProjProduct::new([2]);
    let t = cp2.tangent_numbers();
    assert_eq!(t[&p(&[2])], q(3));
    assert_eq!(t[&p(&[1, 1])], q(3));
    let nu = cp2.normal_numbers();
    assert_eq!(nu.normal(&p(&[2])), q(-3));
    assert_eq!(nu.normal(&p(&[1, 1])), q(6));
    let cp11 = ProjProduct::new([1, 1]).normal_numbers();
    assert_eq!(cp11.normal(&p(&[1, 1])), q(4));
}

#[test]
fn euler_characteristics() {
    assert_eq!(ProjProduct::new([2]).euler_char(), q(3));
    assert_eq!(ProjProduct::new([1, 1]).euler_char(), q(4));
    assert_eq!(ProjProduct::point().euler_char(), q(1));
    for m in models(4) {
        let expected: usize = m.dims().iter().map(|n| n + 1).product();
        assert_eq!(m.euler_char(), q(expected as i64), "{m}");
    }
}

#[test]
fn routes_agree_and_match_cobord() {
    for m in models(4) {
        let normal = m.normal_numbers();
        assert_eq!(normal.tangent_numbers(), m.tangent_numbers(), "{m}");
        assert_eq!(normal, cp_product(m.dims().iter().copied()), "{m}");
    }
    let c12 = ProjProduct::new([1, 2]).normal_numbers();
    assert_eq!(c12, cp(1).product(&cp(2)));
}

#[test]
fn cobordism_chern_polys() {
    let cp2 = ProjProduct::new([2]);
    let u: CohoPoly<GradedClass> = cp2.generator(0);
    let m1 = SymFn::basis_element(Basis::M, p(&[1]));
    let tau = cobordism_chern_poly(&cp2, &Bundle::tangent(), &m1).unwrap();
    assert_eq!(tau, u.scale(&q(3)));
    let nu = cobordism_chern_poly(&cp2, &Bundle::normal(), &m1).unwrap();
    assert_eq!(nu, u.scale(&q(-3)));
}

#[test]
fn conjugate_tangent_chern_classes() {
    // (1+u)^3 (1+ι(u))^3 with ι(u) = -u - [CP1] u^2 mod u^3:
    // c_1 = -3 [CP1] u^2, c_2 = 3u^2 + 3ι^2 + 9uι = -3u^2.
    let cp2 = ProjProduct::new([2]);
    let u: CohoPoly<GradedClass> = cp2.generator(0);
    let u2 = u.clone() * u;
    let bundle = Bundle::tangent().sum(Bundle::tangent().conj());
    let e1 = SymFn::basis_element(Basis::E, p(&[1]));
    let e2 = SymFn::basis_element(Basis::E, p(&[2]));
    let c1 = cobordism_chern_poly(&cp2, &bundle, &e1).unwrap();
    assert_eq!(c1, u2.times(&GradedClass::from(cp(1))).scale(&q(-3)));
    let c2 = cobordism_chern_poly(&cp2, &bundle, &e2).unwrap();
    assert_eq!(c2, u2.scale(&q(-3)));
}

#[test]
fn duals() {
    let cp2 = ProjProduct::new([2]);
    let u: CohoPoly<GradedClass> = cp2.generator(0);
    let u2 = u.clone() * u.clone();
    assert_eq!(dual_class(&cp2, &u2.scale(&q(3))), GradedClass::from(CobordClass::point()).scale(&q(3)));
    assert_eq!(dual_class(&cp2, &u.scale(&q(3))), GradedClass::from(cp(1)).scale(&q(3)));
    assert!((u2 * u).is_zero());
}

#[test]
fn chern_submanifold_examples() {
    let cp2 = ProjProduct::new([2]);
    let got = chern_submanifold(&cp2, &p(&[1]), &Bundle::tangent()).unwrap();
    assert_eq!(got, GradedClass::from(cp(1)).scale(&q(3)));
    assert_eq!(got.to_string(), "3*CP(1)");
    let top = chern_submanifold(&cp2, &p(&[1, 1]), &Bundle::tangent()).unwrap();
    assert_eq!(top, GradedClass::from(CobordClass::point()).scale(&q(3)));
    let cp1 = ProjProduct::new([1]);
    let nu = chern_submanifold(&cp1, &p(&[1]), &Bundle::normal()).unwrap();
    assert_eq!(nu, GradedClass::from(CobordClass::point()).scale(&q(-2)));
}

#[test]
fn empty_partition_gives_the_model() {
    for m in models(3) {
        for b in [Bundle::tangent(), Bundle::normal(), Bundle::zero()] {
            let got = chern_submanifold(&m, &Partition::empty(), &b).unwrap();
            assert_eq!(got, model_class(&m), "{m} {b}");
        }
    }
}

#[test]
fn euler_class_dual_counts_points() {
    for m in models(4) {
        let n = m.dim();
        let top = chern_submanifold(&m, &Partition::column(n), &Bundle::tangent()).unwrap();
        assert_eq!(top.top_dim(), 0, "{m}");
        assert_eq!(top.component(0).normal(&Partition::empty()), m.euler_char(), "{m}");
    }
}

#[test]
fn tangent_chern_submanifolds_of_cp_n() {
    for n in 1..=4usize {
        let m = ProjProduct::new([n]);
        for k in 0..=n {
            let got = chern_submanifold(&m, &Partition::column(k), &Bundle::tangent()).unwrap();
            let expected = GradedClass::from(cp(n - k)).scale(&crate::ring::binomial(n + 1, k));
            assert_eq!(got, expected, "CP^{n}, c_{k}");
        }
    }
}

#[test]
fn pontryagin_submanifolds() {
    let cp2 = ProjProduct::new([2]);
    let p1 = pontryagin_submanifold(&cp2, 1);
    assert_eq!(p1, GradedClass::from(CobordClass::point()).scale(&q(3)));
    assert_eq!(p1.genus(&tanh_over_x(4)), q(3));
    let cp11 = ProjProduct::new([1, 1]);
    assert_eq!(pontryagin_submanifold(&cp11, 1).genus(&tanh_over_x(4)), q(0));
}

#[test]
fn dual_class_is_linear() {
    let m = ProjProduct::new([2, 1]);
    let u1: CohoPoly<GradedClass> = m.generator(0);
    let u2: CohoPoly<GradedClass> = m.generator(1);
    let a = GradedClass::from(cp(1));
    let b = GradedClass::from(cp(2)).scale(&q(-2));
    let p1 = u1.clone() * u2.clone();
    let p2 = u1.clone() * u1;
    let combined = p1.times(&a) + p2.times(&b);
    let expected = a * dual_class(&m, &p1) + b * dual_class(&m, &p2);
    assert_eq!(dual_class(&m, &combined), expected);
}

#[test]
fn representability() {
    let m = ProjProduct::new([1, 1]);
    assert!(Bundle::line([1, 0]).is_cobordism_representable(&m));
    assert!(Bundle::line([0, -1]).is_cobordism_representable(&m));
    assert!(!Bundle::line([1, 1]).is_cobordism_representable(&m));
    assert!(!Bundle::line([2, 0]).is_cobordism_representable(&m));
    let f = SymFn::basis_element(Basis::M, p(&[1]));
    assert!(matches!(cobordism_chern_poly(&m, &Bundle::line([2, 0]), &f), Err(Error::NotRepresentable { .. })));
    assert!(matches!(cobordism_chern_poly(&m, &Bundle::line([1]), &f), Err(Error::FactorMismatch { .. })));
}
