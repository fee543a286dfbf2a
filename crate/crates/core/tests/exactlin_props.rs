use proptest::prelude::*;
use qcalg_core::exactlin::{preimage, rref_dense, rref_sparse, Field, Matrix, SparseVec, Subspace};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(7))]
}

/// Small integer vectors; mostly zero so that non-generic subspaces show up.
fn vectors(n: usize, count: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(
        prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], n),
        0..=count,
    )
}

fn to_subspace(field: Field, n: usize, rows: &[Vec<i64>]) -> Subspace {
    Subspace::span(
        field,
        n,
        rows.iter()
            .map(|r| SparseVec::from_dense(&r.iter().map(|&v| field.from_i64(v)).collect::<Vec<_>>())),
    )
}

fn pair() -> impl Strategy<Value = (Field, usize, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (field_strategy(), 1usize..=12).prop_flat_map(|(f, n)| (Just(f), Just(n), vectors(n, n), vectors(n, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn modular_dimension_identity((field, n, a, b) in pair()) {
        let a = to_subspace(field, n, &a);
        let b = to_subspace(field, n, &b);
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
        prop_assert!(sum.contains(&a).unwrap() && sum.contains(&b).unwrap());
        prop_assert!(a.contains(&meet).unwrap() && b.contains(&meet).unwrap());
        // independent route: a ∩ b = (a⊥ + b⊥)⊥
        prop_assert_eq!(&meet, &a.perp().sum(&b.perp()).unwrap().perp());
    }

    #[test]
    fn perp_is_an_inclusion_reversing_involution((field, n, a, b) in pair()) {
        let a = to_subspace(field, n, &a);
        let b = to_subspace(field, n, &b);
        prop_assert_eq!(a.perp().dim(), n - a.dim());
        prop_assert_eq!(&a.perp().perp(), &a);
        prop_assert_eq!(a.contains(&b).unwrap(), b.perp().contains(&a.perp()).unwrap());
        for f in a.perp().basis() {
            for v in a.basis() {
                prop_assert!(f.dot(v).is_none_or(|s| s.is_zero()));
            }
        }
    }

    #[test]
    fn canonical_form_is_unique((field, n, a, _b) in pair()) {
        // Re-spanning a shuffled, rescaled generating set gives the same value.
        let s = to_subspace(field, n, &a);
        let two = field.from_i64(2);
        let shuffled: Vec<SparseVec> = s.basis().iter().rev().enumerate()
            .map(|(k, v)| if k % 2 == 0 { v.scale(&two) } else { v.add(&s.basis()[0]) })
            .collect();
        let respanned = Subspace::span(field, n, shuffled);
        prop_assert_eq!(respanned, s);
    }

    #[test]
    fn dense_and_sparse_elimination_agree((field, n, a, _b) in pair()) {
        let rows: Vec<SparseVec> = a.iter()
            .map(|r| SparseVec::from_dense(&r.iter().map(|&v| field.from_i64(v)).collect::<Vec<_>>()))
            .collect();
        prop_assert_eq!(rref_dense(field, n, rows.clone()), rref_sparse(field, rows));
    }

    #[test]
    fn preimage_contains_kernel_and_maps_into_target((field, n, a, b) in pair()) {
        // f: K^n -> K^n with rows from `a` (padded), target from `b`.
        let mut rows: Vec<SparseVec> = a.iter()
            .map(|r| SparseVec::from_dense(&r.iter().map(|&v| field.from_i64(v)).collect::<Vec<_>>()))
            .collect();
        rows.resize(n, SparseVec::new());
        let f = Matrix::from_rows(field, n, rows);
        let w = to_subspace(field, n, &b);
        let pre = preimage(&f, &w).unwrap();
        let ker = preimage(&f, &Subspace::zero(field, n)).unwrap();
        prop_assert!(pre.contains(&ker).unwrap());
        for v in pre.basis() {
            prop_assert!(w.contains_vector(&f.apply(v)));
        }
        // dim preimage = dim ker + dim (w ∩ image f)
        let image = Subspace::full(field, n).image(&f).unwrap();
        prop_assert_eq!(pre.dim(), ker.dim() + image.intersect(&w).unwrap().dim());
    }
}
