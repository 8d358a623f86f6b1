use super::*;
use crate::cobord::{cp, GradedClass};
use crate::ring::qf;

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.iter().copied())
}

fn hy(parts: &[u32]) -> BigradedElement {
    BigradedElement::hy(p(parts))
}

fn hz(parts: &[u32]) -> BigradedElement {
    BigradedElement::hz(p(parts))
}

fn cp_n(dims: &[usize]) -> ProjProduct {
    ProjProduct::new(dims.to_vec())
}

#[test]
fn thm3_cp1_closed_form() {
    let expected = hy(&[1]).scale(&q(-2)) + hz(&[1]).scale(&q(-2));
    assert_eq!(thm3_lhs(&cp(1)), expected);
    assert_eq!(thm3_rhs(&cp_n(&[1])), expected);
}

#[test]
fn thm3_point() {
    assert_eq!(thm3_lhs(&CobordClass::point()), BigradedElement::one());
    assert_eq!(thm3_rhs(&ProjProduct::point()), BigradedElement::one());
}

#[test]
fn thm3_holds_and_is_homogeneous() {
    for m in models_up_to(3) {
        let r = thm3(&m);
        assert!(r.equal, "{r}");
        let lhs = r.lhs.as_bigraded().unwrap();
        assert!(lhs.is_homogeneous_of(m.dim()), "{m}");
    }
}

#[test]
fn thm3_rhs_depends_only_on_numbers() {
    // Replacing each dual by the class with the same numbers, rebuilt from
    // its tangent numbers, leaves the right side unchanged.
    let m = cp_n(&[2, 1]);
    let n = m.dim();
    let rebuilt = partitions_up_to(n).into_iter().fold(BigradedElement::zero(), |acc, lam| {
        let class = if lam.is_empty() {
            model_class(&m)
        } else {
            chern_submanifold(&m, &lam, &Bundle::normal()).unwrap()
        };
        let again = class.components().values().fold(GradedClass::zero(), |g, c| {
            g + GradedClass::from(CobordClass::from_tangent(c.dim(), c.tangent_numbers()))
        });
        acc + BigradedElement::hz(lam) * BigradedElement::from_y(&again.s_star_y())
    });
    assert_eq!(rebuilt, thm3_rhs(&m));
}

#[test]
fn thm4_1_examples() {
    let y = QPoly::var();
    let one_plus_y = QPoly::from_ints(&[1, 1]);
    assert_eq!(thm4_1_rhs(&cp_n(&[1])), one_plus_y);
    let cp2 = cp_n(&[2]);
    let by_hand = QPoly::from_ints(&[1, -1, 1])
        + y.clone() * QPoly::from_ints(&[1, -1]).scale(&q(3))
        + y.pow(2).scale(&q(3));
    assert_eq!(by_hand, one_plus_y.pow(2));
    assert_eq!(thm4_1_rhs(&cp2), by_hand);
    for n in 1..=4 {
        let r = thm4_1(&cp_n(&[n]));
        assert!(r.equal, "{r}");
        assert_eq!(r.rhs.as_poly().unwrap(), one_plus_y.pow(n));
    }
}

#[test]
fn thm4_1_specializations_on_cp2() {
    let cp2 = cp_n(&[2]);
    let s = chi_y_normal(2);
    let chi = |k: usize, y: i64| {
        chern_submanifold(&cp2, &Partition::column(k), &Bundle::tangent())
            .unwrap()
            .genus(&s)
            .eval(&q(y))
    };
    // y = -1: Euler characteristics 3 - 6 + 3
    assert_eq!([chi(0, -1), -chi(1, -1), chi(2, -1)], [q(3), q(-6), q(3)]);
    // y = 1: signatures 1 + 0 + 3 = 4 = 2^2 T
    assert_eq!([chi(0, 1), chi(1, 1), chi(2, 1)], [q(1), q(0), q(3)]);
    assert_eq!(thm4_1_lhs(&cp2).eval(&q(1)), q(4));
    assert_eq!(thm4_1_lhs(&cp2).eval(&q(-1)), q(0));
}

#[test]
fn thm4_2_examples() {
    assert_eq!(thm4_2_lhs(&cp_n(&[2])).unwrap(), q(-2));
    assert_eq!(thm4_2_rhs(&cp_n(&[2])).unwrap(), q(-2));
    assert_eq!(cp(2).genus(&crate::pseries::ahat_series(2).inverse().unwrap()) * q(16), q(-2));
    let r = thm4_2(&cp_n(&[1, 1])).unwrap();
    assert!(r.equal);
    assert_eq!(r.lhs.as_scalar().unwrap(), q(0));
    assert_eq!(thm4_2(&ProjProduct::point()).unwrap().lhs.as_scalar().unwrap(), q(1));
    assert!(matches!(thm4_2(&cp_n(&[1])), Err(Error::WrongDimension { dim: 2 })));
}

#[test]
fn thm4_2_dimension_eight() {
    for dims in [vec![4], vec![2, 2], vec![3, 1], vec![2, 1, 1], vec![1, 1, 1, 1]] {
        let r = thm4_2(&cp_n(&dims)).unwrap();
        assert!(r.equal, "{r}");
    }
}

#[test]
fn bv_examples() {
    assert_eq!(alpha(1), 1);
    assert_eq!(alpha(3), 2);
    let r = bv_congruence(&cp_n(&[2])).unwrap();
    assert!(r.equal);
    assert!(bv_congruence(&cp_n(&[1, 1])).unwrap().equal);
    assert!(bv_congruence(&cp_n(&[2, 2])).unwrap().equal);
}

#[test]
fn thm5_1_examples() {
    let cp1 = cp_n(&[1]);
    let expected = hz(&[1]) - hy(&[1]).scale(&q(2));
    assert_eq!(thm5_1_lhs(&cp1, &Bundle::line([1])).unwrap(), expected);
    assert_eq!(thm5_1_rhs(&cp1, &Bundle::line([1])).unwrap(), expected);
    let zero = thm5_1(&cp1, &Bundle::zero()).unwrap();
    assert!(zero.equal);
    assert_eq!(zero.lhs.as_bigraded().unwrap(), hy(&[1]).scale(&q(-2)));
    let two = Bundle::line([1]).sum(Bundle::line([1]));
    assert!(thm5_1(&cp_n(&[2]), &two).unwrap().equal);
    assert!(thm5_1(&cp_n(&[1, 1]), &Bundle::line([1, 0])).unwrap().equal);
}

#[test]
fn thm5_1_with_normal_bundle_is_thm3() {
    for m in models_up_to(3) {
        assert_eq!(thm5_1_lhs(&m, &Bundle::normal()).unwrap(), thm3_lhs(&m.normal_numbers()), "{m}");
    }
}

#[test]
fn thm5_1_rejects_unrepresentable() {
    let err = thm5_1(&cp_n(&[1]), &Bundle::line([2])).unwrap_err();
    assert!(matches!(err, Error::NotRepresentable { .. }));
}

#[test]
fn cor_as_examples() {
    let v = cor_as_value(&cp_n(&[1]), &Bundle::zero()).unwrap();
    assert_eq!(v, BigradedElement::one() - hy(&[1]).scale(&q(2)));
    assert_eq!(cor_as_value(&ProjProduct::point(), &Bundle::zero()).unwrap(), BigradedElement::one());
    assert!(cor_as(&cp_n(&[2]), &Bundle::line([1])).unwrap().equal);
    // a line with c_1 = 2x is fine at the cohomology level
    assert!(cor_as(&cp_n(&[1]), &Bundle::line([2])).unwrap().equal);
}

#[test]
fn cor_as_tb_coefficient() {
    let tb = tb_series(1);
    assert_eq!(tb.coeff(1), hy(&[1]) - BigradedElement::from_rational(qf(1, 2)));
}

#[test]
fn euler_even_examples() {
    let r = euler_even(&cp_n(&[1]), 0).unwrap();
    assert!(r.equal);
    assert_eq!(r.lhs.as_scalar().unwrap(), q(1));
    let r = euler_even(&cp_n(&[1, 1]), 0).unwrap();
    assert!(r.equal);
    assert_eq!(r.lhs.as_scalar().unwrap(), q(-2));
    let r = euler_even(&cp_n(&[1, 1, 1]), 0).unwrap();
    assert_eq!(r.lhs.as_scalar().unwrap(), q(4));
    assert!(matches!(euler_even(&cp_n(&[2]), 0), Err(Error::NoLineFactor { factor: 0 })));
}

#[test]
fn euler_even_any_line_factor() {
    let m = cp_n(&[2, 1]);
    assert!(euler_even(&m, 1).unwrap().equal);
    assert!(euler_even(&m, 0).is_err());
}

#[test]
fn specialize_gives_chi_y_instance() {
    let y = QPoly::var();
    let rel = thm3_lhs(&cp(1));
    let got = specialize_relation(&rel, &chi_y_normal(1), &[-y]).unwrap();
    assert_eq!(got, thm4_1_lhs(&cp_n(&[1])));
}

#[test]
fn specialize_gives_signature_instance() {
    let rel = thm3_rhs(&cp_n(&[2]));
    let got = specialize_relation(&rel, &tanh_over_x(2), &[q(1), q(-1)]).unwrap();
    assert_eq!(got, q(-2));
}

#[test]
fn specialize_identity_and_order() {
    let rel = hy(&[2]) + hz(&[1]);
    let err = specialize_relation(&rel, &tanh_over_x(1), &[q(1)]).unwrap_err();
    assert_eq!(err, Error::OrderTooSmall { have: 1, need: 2 });
    assert_eq!(specialize_relation(&BigradedElement::one(), &tanh_over_x(0), &[] as &[Q]).unwrap(), q(1));
}

#[test]
fn report_json_round_trip() {
    for r in [thm3(&cp_n(&[2])), thm4_1(&cp_n(&[2])), thm4_2(&cp_n(&[2])).unwrap()] {
        let text = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
    let r = thm3(&cp_n(&[1]));
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["relation"], "thm3");
    assert_eq!(v["lhs"]["value"][0]["y_partition"], serde_json::json!([]));
}

#[test]
fn relation_ids_parse() {
    for r in Relation::ALL {
        assert_eq!(r.id().parse::<Relation>().unwrap(), r);
    }
    assert!("thm9".parse::<Relation>().is_err());
}

#[test]
fn matrix_order_is_deterministic() {
    let cases = test_matrix(2);
    let a: Vec<_> = run_matrix(&cases).into_iter().map(|r| r.unwrap()).collect();
    assert!(a.iter().all(|r| r.equal), "{:?}", a.iter().find(|r| !r.equal));
    for (c, r) in cases.iter().zip(&a) {
        assert_eq!(c.relation, r.relation);
        assert_eq!(c.model.to_string(), r.manifold);
    }
}
