use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use qcalg_core::coalg::Coalgebra;
use qcalg_core::comod::{hom_image_sum, radical_image_check, Comodule, Side};
use qcalg_core::exactlin::{Field, Matrix, SparseVec, Subspace};
use qcalg_core::quiverlab::{builtin, compile, parse_spec, Truncation};

fn truncation(text: &str, n: usize) -> Truncation {
    compile(&parse_spec(text, &BTreeMap::new()).unwrap(), Some(n), None).unwrap()
}

fn instances() -> impl Strategy<Value = (&'static str, usize)> {
    (prop_oneof![Just(builtin::EX1), Just(builtin::EX2)], 1usize..=3)
}

fn sides() -> impl Strategy<Value = Side> {
    prop_oneof![Just(Side::Left), Just(Side::Right)]
}

fn vector(field: Field, coeffs: &[i64], dim: usize) -> SparseVec {
    SparseVec::from_pairs(coeffs.iter().take(dim).enumerate().map(|(i, &c)| (i, field.from_i64(c))))
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![2 => Just(0i64), 3 => -3i64..=3], 60)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn action_respects_convolution((text, n) in instances(), side in sides(), f in coeffs(), g in coeffs()) {
        let t = truncation(text, n);
        let c = &t.coalgebra;
        let dual = c.dual_algebra().unwrap();
        let (f, g) = (vector(c.field(), &f, c.dim()), vector(c.field(), &g, c.dim()));
        let m = Comodule::regular(c.clone(), side);
        let composed = m.dual_action(&f).unwrap().compose(&m.dual_action(&g).unwrap());
        let product = match side {
            Side::Right => dual.multiply(&f, &g),
            Side::Left => dual.multiply(&g, &f),
        };
        prop_assert_eq!(m.dual_action(&product).unwrap(), composed);
    }

    #[test]
    fn multiplicity_is_additive((text, n) in instances(), side in sides(), pick in 0usize..4, other in 0usize..4) {
        let t = truncation(text, n);
        let catalogue = |k: usize| -> Comodule {
            let c = Comodule::regular(t.coalgebra.clone(), side);
            match k {
                0 => c,
                1 => Comodule::simple(t.coalgebra.clone(), side, "a").unwrap(),
                2 => c.quotient(&t.span_of([0])).unwrap(),
                _ => c.subcomodule(&t.length_span(1).intersect(&c.socle().unwrap().sum(&t.vertex_span()).unwrap()).unwrap()).unwrap(),
            }
        };
        let (m, k) = (catalogue(pick), catalogue(other));
        let sum = m.direct_sum(&k).unwrap();
        prop_assert!(sum.check().passed());
        for g in t.coalgebra.grouplikes() {
            let s = t.coalgebra.label(g);
            prop_assert_eq!(sum.multiplicity(s).unwrap(), m.multiplicity(s).unwrap() + k.multiplicity(s).unwrap());
        }
        let table = sum.multiplicity_table().unwrap();
        prop_assert_eq!(table.weighted_total(), sum.socle().unwrap().dim());
    }

    #[test]
    fn radical_image_equals_socle_complement(
        (text, n) in instances(),
        side in sides(),
        seeds in prop::collection::vec(coeffs(), 1..=2),
    ) {
        let t = truncation(text, n);
        let c2 = Comodule::regular(t.coalgebra.clone(), side).power(2).unwrap();
        let field = t.coalgebra.field();
        let vs: Vec<SparseVec> = seeds.iter().map(|s| vector(field, s, c2.dim())).collect();
        let x = c2.generated_subcomodule(&vs);
        prop_assume!(x.dim() <= 30);
        let m = c2.subcomodule(&x).unwrap();
        prop_assert!(m.check().passed());
        let embedding = Matrix::from_columns(field, c2.dim(), x.basis());
        let check = radical_image_check(&m, &embedding).unwrap();
        prop_assert!(check.holds());
        prop_assert_eq!(m.socle_from_simples().unwrap(), m.socle().unwrap());
    }
}

fn quotient_image(x: &Subspace, w: &Subspace) -> Subspace {
    let dim = x.ambient_dim() - x.dim();
    Subspace::span(x.field(), dim, w.basis().iter().map(|v| x.quotient_coordinates(v)))
}

#[test]
fn wedge_quotient_matches_hom_images() {
    for text in [builtin::EX1, builtin::EX2] {
        for n in 1..=4 {
            let t = truncation(text, n);
            let c = &t.coalgebra;
            for v in &t.quiver.vertices {
                let x = t.span_of([t.vertex_position(&v.label).unwrap()]);
                for g in c.grouplikes() {
                    let s_label = c.label(g);
                    for side in [Side::Right, Side::Left] {
                        let reg = Comodule::regular(c.clone(), side);
                        let simple = Comodule::simple(c.clone(), side, s_label).unwrap();
                        let w = simple.coefficient_coalgebra();
                        let wedge = match side {
                            Side::Right => c.wedge(&x, &w).unwrap(),
                            Side::Left => c.wedge(&w, &x).unwrap(),
                        };
                        let images = hom_image_sum(&simple, &reg.quotient(&x).unwrap()).unwrap();
                        assert_eq!(quotient_image(&x, &wedge), images, "{side} X={} S={s_label} N={n}", v.label);
                    }
                }
            }
        }
    }
}

#[test]
fn loewy_series_of_c_matches_coradical_filtration() {
    for text in [builtin::EX1, builtin::EX2, builtin::UNBOUNDED_PAIR] {
        for n in 1..=4 {
            let t = truncation(text, n);
            let chain = t.coalgebra.coradical_filtration().unwrap();
            for side in [Side::Right, Side::Left] {
                let loewy = Comodule::regular(t.coalgebra.clone(), side).loewy_series().unwrap();
                assert_eq!(loewy.terms, chain.terms);
                assert!(loewy.is_ascending());
            }
        }
    }
}

#[test]
fn quotient_of_ex2_by_a() {
    let t = truncation(builtin::EX2, 3);
    let c = Comodule::regular(t.coalgebra.clone(), Side::Right);
    let q = c.quotient(&t.span_of_labels(&["a"]).unwrap()).unwrap();
    assert!(q.check().passed());
    assert_eq!(q.multiplicity("b3").unwrap(), 4);
    let weight_b3 = hom_image_sum(&Comodule::simple(t.coalgebra.clone(), Side::Right, "b3").unwrap(), &q).unwrap();
    let labels: Vec<String> = weight_b3.basis().iter().map(|v| q.format_vector(v)).collect();
    assert_eq!(labels, ["b3", "x3_1", "x3_2", "x3_3"]);
}

#[test]
fn zero_comodule_has_no_multiplicity() {
    let t = truncation(builtin::EX1, 1);
    let c = Comodule::regular(t.coalgebra.clone(), Side::Right);
    let zero = c.quotient(&Subspace::full(Field::Rational, t.dim())).unwrap();
    assert_eq!(zero.dim(), 0);
    for g in ["a", "b1"] {
        assert_eq!(zero.multiplicity(g).unwrap(), 0);
    }
}

#[test]
fn hom_from_vertex_into_c_mod_c1() {
    for n in 1..=5 {
        let t = truncation(builtin::EX1, n);
        for side in [Side::Right, Side::Left] {
            let c = Comodule::regular(t.coalgebra.clone(), side);
            let q = c.quotient(&t.length_span(1)).unwrap();
            let s = Comodule::simple(t.coalgebra.clone(), side, "a").unwrap();
            assert_eq!(qcalg_core::comod::hom_space(&s, &q).unwrap().dim(), n);
        }
    }
}

#[test]
fn simple_comodules_have_trivial_endomorphisms() {
    let c: Arc<Coalgebra> = truncation(builtin::EX2, 2).coalgebra;
    for side in [Side::Right, Side::Left] {
        let a = Comodule::simple(c.clone(), side, "a").unwrap();
        let b = Comodule::simple(c.clone(), side, "b1").unwrap();
        assert_eq!(qcalg_core::comod::hom_space(&a, &a).unwrap().dim(), 1);
        assert_eq!(qcalg_core::comod::hom_space(&a, &b).unwrap().dim(), 0);
        assert!(radical_image_check(&a, &Matrix::from_columns(Field::Rational, c.dim(), &[SparseVec::unit(Field::Rational, 0)])).unwrap().via_action.is_zero());
    }
}
