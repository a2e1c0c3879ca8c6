use std::collections::BTreeSet;

use num_traits::Zero;
use symtrop::acceptance::{l_fixture, pencil_fixture};
use symtrop::exactnum::{int, Rational};
use symtrop::partitions::*;
use symtrop::polyhedra::*;
use symtrop::symfunc::*;
use symtrop::symreduce::*;
use symtrop::tropical::*;

fn p(s: &str) -> Partition {
    Partition::parse(s).unwrap()
}

fn pf(s: &str) -> SymFn {
    SymFn::p(&p(s))
}

fn falling(n: usize, l: usize) -> Rational {
    (0..l).fold(int(1), |a, i| a * int((n - i) as i64))
}

fn padded_sum(a: &[u32], b: &[u32]) -> Vec<u32> {
    (0..a.len().max(b.len())).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect()
}

#[test]
fn quartic_pencil_blocks() {
    let s4 = build_pencil(&PencilKind::S4).unwrap();
    assert_eq!(s4.group, Group::S);
    let m: Vec<Vec<Vec<SymFn>>> = s4.blocks.iter().map(|b| b.entries.clone()).collect();
    assert_eq!(
        m,
        vec![
            vec![vec![pf("1^4"), pf("2,1^2")], vec![pf("2,1^2"), pf("2^2")]],
            vec![vec![pf("2,1^2"), pf("3,1")], vec![pf("3,1"), pf("4")]],
            vec![vec![pf("2^2").sub(&pf("4"))]],
        ]
    );
}

#[test]
fn even_quartic_pencil_is_three_scalars() {
    let b4 = build_pencil(&PencilKind::B(4)).unwrap();
    let m: Vec<Vec<Vec<SymFn>>> = b4.blocks.iter().map(|b| b.entries.clone()).collect();
    assert_eq!(m, vec![vec![vec![pf("2^2")]], vec![vec![pf("4")]], vec![vec![pf("2^2").sub(&pf("4"))]]]);
}

#[test]
fn pencils_match_reference_blocks() {
    for two_d in [6, 8, 10] {
        let pencil = build_pencil(&PencilKind::B(two_d)).unwrap();
        let got: Vec<Vec<Vec<SymFn>>> = pencil.blocks.iter().map(|b| b.entries.clone()).collect();
        assert_eq!(got, pencil_fixture(two_d), "B{two_d}");
    }
    let sizes: Vec<usize> = build_pencil(&PencilKind::B(10)).unwrap().blocks.iter().map(|b| b.size()).collect();
    assert_eq!(sizes, vec![4, 3, 4, 1, 1, 1]);
}

#[test]
fn unsupported_pencils_are_rejected() {
    assert!(build_pencil(&PencilKind::B(12)).is_err());
    assert!(PencilKind::parse("Q4").is_err());
    assert_eq!(PencilKind::parse("b(10)").unwrap(), PencilKind::B(10));
}

#[test]
fn blocks_are_symmetric_and_homogeneous() {
    for kind in [PencilKind::S4, PencilKind::B(4), PencilKind::B(6), PencilKind::B(8), PencilKind::B(10)] {
        let pencil = build_pencil(&kind).unwrap();
        let deg = pencil.coords[0].size();
        for b in &pencil.blocks {
            for i in 0..b.size() {
                for j in 0..b.size() {
                    assert_eq!(b.entries[i][j], b.entries[j][i], "{kind}");
                    assert!(b.entries[i][j].coeffs().keys().all(|l| l.size() == deg));
                    assert!(b.entries[i][j].coeffs().keys().all(|l| pencil.coords.contains(l)));
                }
            }
        }
    }
}

// Limit entries against exact finite symmetrization: for α+α' with support
// size ℓ the finite average times n!/(n−ℓ)! equals the limit entry
// restricted to n variables.
#[test]
fn limit_entries_match_finite_symmetrization() {
    for (group, d, ns) in [(Group::S, 2, vec![4, 5, 6]), (Group::B, 3, vec![6, 8, 10]), (Group::B, 4, vec![8, 10])] {
        for tv in term_vectors(group, d) {
            for t1 in &tv.terms {
                for t2 in &tv.terms {
                    let limit = limit_gram_entry_in(group, t1, t2).unwrap();
                    let alpha = padded_sum(&t1.alpha, &t2.alpha);
                    let l = alpha.iter().filter(|&&a| a > 0).count();
                    let lambda = fuse(&[t1.lambda.clone(), t2.lambda.clone()]);
                    for &n in &ns {
                        let fin = finite_symmetrize(&MonomialTerm::new(alpha.clone(), lambda.clone()), n, group).unwrap();
                        assert_eq!(fin.scale(&falling(n, l)), NVarSym::from_symfn(&limit, n), "{t1:?} {t2:?} n={n}");
                    }
                }
            }
        }
    }
}

#[test]
fn mismatched_supports_give_zero() {
    let a = MonomialTerm::new(vec![2], p("2"));
    let b = MonomialTerm::new(vec![2, 2], Partition::empty());
    assert!(limit_gram_entry(&a, &b).unwrap().is_zero());
    let c = MonomialTerm::new(vec![1], p("3"));
    assert!(limit_gram_entry_in(Group::B, &a, &c).unwrap().is_zero());
    assert!(limit_gram_entry(&a, &MonomialTerm::new(vec![2], p("1"))).is_err());
}

#[test]
fn congruences_are_invertible() {
    for a in [congruence_b8(), congruence_b10()] {
        let n = a.len();
        let rows: Vec<IntVec> = a.iter().map(|r| rat_to_primitive(r)).collect();
        assert_eq!(rank(n, &rows), n);
        assert!(rows.iter().all(|r| r.iter().any(|x| !x.is_zero())));
    }
}

#[test]
fn tropicalized_pencils_give_the_reference_cones() {
    for (i, two_d) in [(1, 4u32), (2, 6), (3, 8), (4, 10)] {
        let pencil = build_pencil(&PencilKind::B(two_d)).unwrap();
        let c = trop_of_sos(&pencil).unwrap();
        let want: BTreeSet<IntVec> = l_fixture(i).iter().map(|s| parse_inequality(s, &pencil.coords).unwrap()).collect();
        assert_eq!(facet_set(&c), want, "B{two_d}");
    }
}

#[test]
fn tropicalized_pencils_sit_in_the_hierarchy() {
    for d in 3..=5usize {
        let pencil = build_pencil(&PencilKind::B(2 * d as u32)).unwrap();
        let sos = trop_of_sos(&pencil).unwrap();
        let t1 = t_k_cone(d, 1).unwrap();
        let t2 = t_k_cone(d, 2).unwrap();
        assert!(sos.is_subset_of(&t1), "d={d}");
        assert!(t2.is_subset_of(&sos), "d={d}");
        assert!(cone_equal(&sos, &t2), "d={d}");
    }
}

#[test]
fn superdominance_maximum() {
    assert_eq!(superdominance_max(&[p("4,2"), p("2^3"), p("6")]), Some(p("2^3")));
    assert_eq!(superdominance_max(&[p("3^4,1"), p("7,2^3")]), None);
}
