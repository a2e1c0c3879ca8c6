use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use symtrop::acceptance::{l_fixture, vandermonde_fixture};
use symtrop::exactnum::{int, Rational};
use symtrop::partitions::*;
use symtrop::polyhedra::*;
use symtrop::tropical::*;

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(256)
}

fn iv(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn ones(n: usize) -> Vec<Rational> {
    vec![int(1); n]
}

fn rat_vec(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

#[test]
fn two_variable_case() {
    let c = trop_vandermonde(2).unwrap();
    assert_eq!(c.facets(), &[iv(&[2, -1])]);
    assert!(trop_vandermonde(1).is_err());
}

#[test]
fn vandermonde_matches_fixture_and_generators() {
    for d in 3..=5 {
        let c = trop_vandermonde(d).unwrap();
        let got: BTreeSet<IntVec> = c.facets().iter().cloned().collect();
        let want: BTreeSet<IntVec> = vandermonde_fixture(d).into_iter().collect();
        assert_eq!(got, want, "d={d}");
    }
    for d in 2..=7 {
        let (rays, lin) = trop_vandermonde_generators(d);
        let v = Cone::from_v_int(d, &rays, &[lin]).unwrap();
        assert!(cone_equal(&v, &trop_vandermonde(d).unwrap()), "d={d}");
    }
    let (rays, lin) = trop_vandermonde_generators(4);
    assert_eq!(lin, iv(&[1, 2, 3, 4]));
    assert!(rays.contains(&iv(&[1, 0, 0, 0])) && rays.contains(&iv(&[2, 1, 0, 0])) && rays.contains(&iv(&[1, 1, 1, 1])));
}

#[test]
fn max_closed_cones_converge_immediately() {
    for d in 3..=4 {
        let bp = trop_bp_dual(d).unwrap();
        let h = double_hull(&bp).unwrap();
        assert_eq!(h.iterations, 1);
        assert!(cone_equal(&h.cone, &bp));
    }
    for d in 2..=5 {
        let h = double_hull(&vandermonde_seed(d)).unwrap();
        assert!(h.iterations <= 3, "d={d}: {}", h.iterations);
        assert!(cone_equal(&h.cone, &trop_vandermonde(d).unwrap()), "d={d}");
    }
}

#[test]
fn double_hull_needs_positive_lineality() {
    assert!(double_hull(&Cone::orthant(3)).is_err());
    assert!(max_closure(&Cone::full(2), &[int(1), int(-1)]).is_err());
    assert!(max_closure(&Cone::full(2), &[int(1)]).is_err());
}

#[test]
fn bp_dual_facet_structure_and_soundness() {
    for d in 3..=5 {
        let c = trop_bp_dual(d).unwrap();
        let coords = even_coords(d);
        assert_eq!(c.lineality_space().len(), 1);
        assert!(c.lineality_space()[0].iter().all(|x| x.abs() == BigInt::from(1)));
        for f in c.facets() {
            let neg: Vec<usize> = (0..f.len()).filter(|&i| f[i].is_negative()).collect();
            assert_eq!(neg.len(), 1, "{}", facet_string(f, &coords));
            let s: BigInt = f.iter().sum();
            assert!(s.is_zero());
            // Σ y_{λ^i} ≥ k y_μ must come from a binomial inequality
            let k = (-&f[neg[0]]).to_string().parse::<usize>().unwrap();
            let mut lambdas = Vec::new();
            for (i, c) in f.iter().enumerate() {
                if c.is_positive() {
                    for _ in 0..c.to_string().parse::<usize>().unwrap() {
                        lambdas.push(coords[i].clone());
                    }
                }
            }
            assert!(superdominates(&fuse(&lambdas), &fuse_power(&coords[neg[0]], k)).unwrap());
        }
    }
}

#[test]
fn bp_dual_small_cases_match_fixtures() {
    for (d, i) in [(3, 2), (4, 3)] {
        let coords = even_coords(d);
        let want: BTreeSet<IntVec> = l_fixture(i).iter().map(|s| parse_inequality(s, &coords).unwrap()).collect();
        assert_eq!(facet_set(&trop_bp_dual(d).unwrap()), want, "d={d}");
    }
}

#[test]
fn hierarchy_is_nested_and_contains_bp_dual() {
    for d in 3..=5 {
        let bp = trop_bp_dual(d).unwrap();
        let mut prev: Option<Cone> = None;
        for k in 1..=3 {
            let t = t_k_cone(d, k).unwrap();
            assert!(bp.is_subset_of(&t), "d={d} k={k}");
            if let Some(p) = &prev {
                assert!(t.is_subset_of(p), "d={d} k={k}");
            }
            prev = Some(t);
        }
    }
    assert!(t_k_cone(1, 1).is_err());
    assert!(t_k_cone(3, 0).is_err());
}

#[test]
fn stabilization_indices() {
    let taus: Vec<Option<usize>> = (3..=5).map(|d| stabilization_tau(d, 4).unwrap().tau).collect();
    assert_eq!(taus, vec![Some(2), Some(2), Some(3)]);
    let t = stabilization_tau(5, 2).unwrap();
    assert_eq!(t.tau, None);
    assert!(!t.certified);
    assert!(stabilization_tau(6, 2).is_err());
}

#[test]
fn inequality_strings_round_trip() {
    let coords = even_coords(3);
    let n = parse_inequality("y[2^3] + y[6] >= 2*y[4,2]", &coords).unwrap();
    assert_eq!(facet_string(&n, &coords), "y[2,2,2] + y[6] >= 2*y[4,2]");
    assert_eq!(parse_inequality(&facet_string(&n, &coords), &coords).unwrap(), n);
    assert!(parse_inequality("y[5,1] >= y[6]", &coords).is_err());
}

#[test]
fn trop_map_rows_are_multiplicities() {
    let t = TropMap::new(3);
    assert_eq!(t.rows, vec![vec![3, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]);
    assert_eq!(t.even_labels(), even_coords(3));
    assert_eq!(t.apply(&iv(&[1, 2, 3])), iv(&[3, 3, 3]));
}

fn ray_strategy(dim: usize) -> impl Strategy<Value = Vec<IntVec>> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, dim).prop_map(|v| iv(&v)), 1..=4)
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn max_closure_is_closed_under_max(
        rays in ray_strategy(3),
        coeffs in proptest::collection::vec((0i64..=3, 0i64..=3), 4),
    ) {
        let m = Cone::from_v_int(3, &rays, &[iv(&[1, 1, 1])]).unwrap();
        let c = max_closure(&m, &ones(3)).unwrap();
        prop_assert!(m.is_subset_of(&c));
        // a ⊕ b stays inside for points of M
        let point = |w: &dyn Fn(usize) -> i64| -> Vec<Rational> {
            let mut x = vec![Rational::zero(); 3];
            for (i, r) in rays.iter().enumerate() {
                for j in 0..3 {
                    x[j] += Rational::from_integer(&r[j] * BigInt::from(w(i)));
                }
            }
            x
        };
        let a = point(&|i| coeffs[i % 4].0);
        let b = point(&|i| coeffs[i % 4].1);
        prop_assert!(c.contains_point(&trop_add(&a, &b)));
        prop_assert!(c.contains_point(&trop_scale(&int(-7), &a)));
        for r in c.extreme_rays() {
            for s in c.extreme_rays() {
                prop_assert!(c.contains_point(&trop_add(&rat_vec(r), &rat_vec(s))));
            }
        }
        prop_assert!(cone_equal(&max_closure(&c, &ones(3)).unwrap(), &c));
    }
}
