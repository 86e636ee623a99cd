mod common;

use common::*;
use proptest::prelude::*;
use trackline_core::lattice::coefficients;
use trackline_core::pattern::{components, realize};
use trackline_core::*;

#[test]
fn rank_matches_rational_elimination() {
    let mut corpus: Vec<Presentation> = vec![parse_presentation(HIGMAN).unwrap(), parse_presentation(TREFOIL).unwrap()];
    corpus.extend(random_presentations(11, 40));
    for p in &corpus {
        let s = setup(p);
        let oracle = s.sys.width - rational_rank(&s.sys.matrix);
        assert_eq!(s.basis.rank(), oracle, "{}", p.to_text());
        for v in &s.basis.vectors {
            assert!(s.sys.is_solution(v));
            assert!(v.iter().all(|&x| x >= 0), "non-negative basis");
        }
    }
}

#[test]
fn fixture_sizes() {
    let h = setup_text(HIGMAN);
    assert_eq!((h.c.edge_count, h.c.triangles.len(), h.sys.rows()), (12, 12, 24));
    assert_eq!(h.basis.rank(), 12);
    assert_eq!(h.basis.vectors[0], vec![1; 36]);
    let t = setup_text(TREFOIL);
    assert_eq!((t.c.edge_count, t.c.triangles.len(), t.sys.rows()), (4, 3, 5));
    assert_eq!(t.basis.rank(), 4);
    assert!(lattice_member(&t.basis, &T1).unwrap());
    assert!(lattice_member(&t.basis, &RED).unwrap());
}

#[test]
fn basis_is_saturated() {
    // a solution that is half an integer combination is still a member
    let t = setup_text(TREFOIL);
    for v in &t.basis.vectors {
        let doubled: Vec<i64> = v.iter().map(|x| 2 * x).collect();
        let k = coefficients(&t.basis, &doubled).unwrap().unwrap();
        assert!(k.iter().all(|x| x % 2 == num_bigint::BigInt::from(0)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn combinations_are_solutions_and_members(seed in 0u64..10_000, coeffs in prop::collection::vec(-3i64..=3, 12)) {
        let p = random_presentations(seed, 1).pop().unwrap();
        let s = setup(&p);
        prop_assume!(s.basis.rank() > 0);
        let k = &coeffs[..s.basis.rank().min(coeffs.len())];
        let v = s.basis.combine(k);
        prop_assert!(s.sys.is_solution(&v));
        prop_assert!(lattice_member(&s.basis, &v).unwrap());
        let back = coefficients(&s.basis, &v).unwrap().unwrap();
        let expect: Vec<num_bigint::BigInt> =
            (0..s.basis.rank()).map(|i| num_bigint::BigInt::from(k.get(i).copied().unwrap_or(0))).collect();
        prop_assert_eq!(back, expect);
    }

    #[test]
    fn patterns_obey_degree_additivity_and_euler(seed in 0u64..10_000, coeffs in prop::collection::vec(0i64..=2, 12)) {
        let p = random_presentations(seed, 1).pop().unwrap();
        let s = setup(&p);
        prop_assume!(s.basis.rank() > 0);
        let v = s.basis.combine(&coeffs[..s.basis.rank().min(coeffs.len())]);
        let pat = realize(&v, &s.c).unwrap();
        let mut degree = vec![0usize; pat.point_count()];
        for a in &pat.arcs {
            degree[pat.global(a.a)] += 1;
            degree[pat.global(a.b)] += 1;
        }
        for (g, d) in degree.iter().enumerate() {
            prop_assert_eq!(*d, occurrence_count(&s.c, pat.point(g).edge));
        }
        let corners: i64 = v.iter().sum();
        prop_assert_eq!(pat.euler(), pat.point_count() as i64 - corners);
        let mut sum = vec![0i64; v.len()];
        for t in components(&pat, &s.c) {
            for (x, y) in sum.iter_mut().zip(t.vector()) {
                *x += y;
            }
        }
        prop_assert_eq!(sum, v);
    }
}
