use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use symtrop::polyhedra::*;
use symtrop::tropical::trop_vandermonde;

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(256)
}

fn iv(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn rows(dim: usize) -> impl Strategy<Value = Vec<IntVec>> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, dim).prop_map(|v| iv(&v)), 1..=6)
}

fn cone_pair() -> impl Strategy<Value = (Cone, Cone)> {
    (3usize..=4).prop_flat_map(|d| (rows(d), rows(d)).prop_map(move |(a, b)| {
        (Cone::from_h_int(d, &a, &[]).unwrap(), Cone::from_v_int(d, &b, &[]).unwrap())
    }))
}

// Every facet is tight on enough generators to cut out a hyperplane of the cone.
fn facets_are_minimal(c: &Cone) -> bool {
    let cone_dim = c.dim() - c.equations().len();
    c.facets().iter().all(|a| {
        let mut tight: Vec<IntVec> = c.extreme_rays().iter().filter(|r| dot(a, r) == BigInt::from(0)).cloned().collect();
        tight.extend(c.lineality_space().iter().cloned());
        rank(c.dim(), &tight) == cone_dim - 1
    })
}

#[test]
fn small_example_with_lineality() {
    let c = Cone::from_h_int(3, &[iv(&[1, -2, 1]), iv(&[0, 3, -2])], &[]).unwrap();
    assert_eq!(c.lineality_space().len(), 1);
    let l = &c.lineality_space()[0];
    assert!(l == &iv(&[1, 2, 3]) || l == &iv(&[-1, -2, -3]));
    let want = Cone::from_v_int(3, &[iv(&[1, 0, 0]), iv(&[1, 1, 1])], &[iv(&[1, 2, 3])]).unwrap();
    assert!(cone_equal(&c, &want));
    assert_eq!(c.extreme_rays().len(), 2);
    assert!(facets_are_minimal(&c));
}

#[test]
fn orthant_is_self_dual() {
    for d in 1..=5 {
        let o = Cone::orthant(d);
        assert!(cone_equal(&o.dual(), &o));
        assert_eq!(o.extreme_rays().len(), d);
    }
}

#[test]
fn full_space_and_point() {
    let f = Cone::full(3);
    assert_eq!(f.lineality_space().len(), 3);
    assert!(f.facets().is_empty());
    let z = f.dual();
    assert_eq!(z.equations().len(), 3);
}

#[test]
fn redundant_rows_are_dropped() {
    let c = Cone::from_h_int(2, &[iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1]), iv(&[2, 0])], &[]).unwrap();
    assert_eq!(c.facets().len(), 2);
}

#[test]
fn dimension_mismatch_is_an_error() {
    assert!(Cone::from_h_int(3, &[iv(&[1, 0])], &[]).is_err());
    assert!(intersect(&Cone::orthant(2), &Cone::orthant(3)).is_err());
}

#[test]
fn vandermonde_normals_have_full_rank() {
    for d in 3..=5 {
        let c = trop_vandermonde(d).unwrap();
        assert_eq!(rank(c.dim(), c.facets()), c.dim() - 1, "d={d}");
        assert_eq!(c.lineality_space().len(), 1);
    }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn h_times_v_nonnegative((a, b) in cone_pair()) {
        for c in [&a, &b] {
            for f in c.facets() {
                for r in c.extreme_rays() {
                    prop_assert!(!dot(f, r).is_negative());
                }
                for l in c.lineality_space() {
                    prop_assert_eq!(dot(f, l), BigInt::from(0));
                }
            }
            for e in c.equations() {
                for r in c.extreme_rays() {
                    prop_assert_eq!(dot(e, r), BigInt::from(0));
                }
            }
            prop_assert!(facets_are_minimal(c));
        }
    }

    #[test]
    fn membership_matches_defining_rows(
        a in rows(3),
        x in proptest::collection::vec(-4i64..=4, 3),
    ) {
        let c = Cone::from_h_int(3, &a, &[]).unwrap();
        let x = iv(&x);
        let direct = a.iter().all(|r| !dot(r, &x).is_negative());
        prop_assert_eq!(c.contains_int(&x), direct);
    }

    #[test]
    fn double_dual_and_round_trip((a, b) in cone_pair()) {
        prop_assert!(cone_equal(&a.dual().dual(), &a));
        prop_assert!(cone_equal(&dd_convert(&b, Direction::VtoH), &b));
        prop_assert!(cone_equal(&dd_convert(&b, Direction::HtoV), &b));
        let rebuilt = Cone::from_v_int(a.dim(), a.extreme_rays(), a.lineality_space()).unwrap();
        prop_assert_eq!(&rebuilt, &a);
    }

    #[test]
    fn sum_and_intersection_duality((a, b) in cone_pair()) {
        let s = minkowski_sum(&a, &b).unwrap();
        let i = intersect(&a.dual(), &b.dual()).unwrap();
        prop_assert!(cone_equal(&s.dual(), &i));
        let i2 = intersect(&a, &b).unwrap();
        let s2 = minkowski_sum(&a.dual(), &b.dual()).unwrap();
        prop_assert!(cone_equal(&i2.dual(), &s2));
        prop_assert!(i2.is_subset_of(&a) && i2.is_subset_of(&b));
        prop_assert!(a.is_subset_of(&s) && b.is_subset_of(&s));
    }
}
