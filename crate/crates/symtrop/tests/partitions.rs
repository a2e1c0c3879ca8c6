use std::cmp::Ordering;
use std::collections::BTreeSet;

use proptest::prelude::*;
use symtrop::acceptance::lambda8_fixture;
use symtrop::partitions::*;

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(256)
}

fn p(s: &str) -> Partition {
    Partition::parse(s).unwrap()
}

// Independent oracle: sort ascending, compare prefix sums up to the shorter length.
fn sd_oracle(l: &[u32], m: &[u32]) -> bool {
    let mut a = l.to_vec();
    let mut b = m.to_vec();
    a.sort();
    b.sort();
    let (mut sa, mut sb) = (0, 0);
    for (x, y) in a.iter().zip(&b) {
        sa += x;
        sb += y;
        if sa > sb {
            return false;
        }
    }
    true
}

// Partition numbers by the usual "parts at most k" recursion.
fn partition_number(n: usize) -> usize {
    let mut t = vec![0usize; n + 1];
    t[0] = 1;
    for k in 1..=n {
        for s in k..=n {
            t[s] += t[s - k];
        }
    }
    t[n]
}

fn brute_covers(ps: &[Partition]) -> BTreeSet<(Partition, Partition)> {
    let strict = |a: &Partition, b: &Partition| a != b && sd_oracle(a.parts(), b.parts());
    let mut out = BTreeSet::new();
    for a in ps {
        for b in ps {
            if strict(a, b) && !ps.iter().any(|c| strict(a, c) && strict(c, b)) {
                out.insert((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn same_size() -> impl Strategy<Value = (Partition, Partition, Partition)> {
    (1u32..=10).prop_flat_map(|d| {
        let n = partition_count(d);
        (Just(d), 0..n, 0..n, 0..n)
    })
    .prop_map(|(d, i, j, k)| {
        let ps = enum_partitions(d);
        (ps[i].clone(), ps[j].clone(), ps[k].clone())
    })
}

fn any_partition(max_part: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(1..=max_part, 1..=max_len).prop_map(|v| Partition::new(v).unwrap())
}

#[test]
fn enumeration_in_revlex() {
    let got: Vec<String> = enum_partitions(4).iter().map(|x| x.to_string()).collect();
    assert_eq!(got, ["(1^4)", "(2,1^2)", "(3,1)", "(2^2)", "(4)"]);
    assert_eq!(enum_partitions(0), vec![Partition::empty()]);
    let even: Vec<Partition> = enum_even_partitions(8);
    assert_eq!(even, vec![p("2^4"), p("4,2^2"), p("6,2"), p("4^2"), p("8")]);
    for n in 0..=14u32 {
        assert_eq!(enum_partitions(n).len(), partition_number(n as usize));
        assert_eq!(partition_count(n), partition_number(n as usize));
    }
}

#[test]
fn superdominance_examples() {
    assert!(superdominates(&p("1^5"), &p("2,1^3")).unwrap());
    assert!(!superdominates(&p("3^4,1"), &p("7,2^3")).unwrap());
    assert!(!superdominates(&p("7,2^3"), &p("3^4,1")).unwrap());
    assert!(superdominates(&p("2,2,2"), &p("4,2")).unwrap());
    assert!(superdominates(&p("6,2"), &p("4^2")).unwrap());
    assert!(!superdominates(&p("4^2"), &p("6,2")).unwrap());
    assert!(superdominates(&p("4,2"), &p("4,1")).is_err());
}

#[test]
fn dominance_and_revlex_examples() {
    assert!(dominates(&p("3,1"), &p("2,2")).unwrap());
    assert_eq!(revlex_cmp(&p("1^4"), &p("2,1^2")), Ordering::Greater);
    assert_eq!(revlex_cmp(&p("4"), &p("2^2")), Ordering::Less);
}

#[test]
fn fusion_and_star_examples() {
    assert_eq!(fuse(&[p("2^2,1"), p("3,2,1")]), p("3,2^3,1^2"));
    assert_eq!(star(&p("3^2")).unwrap(), p("6"));
    assert_eq!(star(&p("4,3,1")).unwrap(), p("7,1"));
    assert_eq!(fuse(&[p("5,1")]), p("5,1"));
    assert!(star(&p("5")).is_err());
    assert_eq!(fuse_power(&p("2,1"), 3), p("2^3,1^3"));
}

#[test]
fn cover_examples() {
    assert!(covers(&p("3,3"), &p("6")).unwrap());
    assert!(covers(&p("2^3,1^2"), &p("4,2,1^2")).unwrap());
    assert!(!covers(&p("3,1"), &p("3,1")).unwrap());
}

#[test]
fn parse_syntax_and_errors() {
    assert_eq!(p("4,2^2"), Partition::of(&[4, 2, 2]));
    assert_eq!(p("(4,2,2)"), Partition::of(&[4, 2, 2]));
    let e = Partition::parse("4,x").unwrap_err().to_string();
    assert!(e.contains("x"), "{e}");
    assert!(Partition::parse("4,0").is_err());
}

#[test]
fn covers_agree_with_brute_force() {
    for d in 1..=9 {
        let ps = enum_partitions(d);
        let want = brute_covers(&ps);
        let got: BTreeSet<_> = hasse(d).edge_partitions().into_iter().collect();
        assert_eq!(got, want, "d = {d}");
    }
}

#[test]
fn lambda5_chain_and_lambda6_incomparable() {
    let h = hasse(5);
    assert!(h.is_chain());
    assert_eq!(h.nodes.len(), 7);
    assert!(!hasse(6).is_chain());
    let (a, b) = incomparable_pair(6).unwrap();
    assert!(!sd_oracle(a.parts(), b.parts()) && !sd_oracle(b.parts(), a.parts()));
}

#[test]
fn lambda8_matches_fixture_and_brute_force() {
    let (nodes, edges) = lambda8_fixture();
    let want: BTreeSet<_> = edges.iter().map(|(a, b)| (nodes[a].clone(), nodes[b].clone())).collect();
    assert_eq!(want.len(), 25);
    assert_eq!(brute_covers(&enum_partitions(8)), want);
    let h = hasse(8);
    assert_eq!(h.nodes.len(), 22);
    assert!(h.to_dot().contains("digraph"));
}

#[test]
fn star_facts_exhaustive() {
    for d in 2..=10 {
        for l in enum_partitions(d) {
            if l.len() < 2 {
                continue;
            }
            let s = star(&l).unwrap();
            assert!(superdominates(&l, &s).unwrap() && !superdominates(&s, &l).unwrap());
            assert_eq!(covers(&l, &s).unwrap(), l.parts()[0] - l.parts()[1] <= 1, "{l}");
        }
    }
}

#[test]
fn strict_implies_length_and_revlex() {
    for d in 1..=10 {
        let ps = enum_partitions(d);
        for a in &ps {
            for b in &ps {
                if a != b && superdominates(a, b).unwrap() {
                    assert!(a.len() >= b.len());
                    assert_eq!(revlex_cmp(a, b), Ordering::Greater);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn matches_oracle((a, b, _c) in same_size()) {
        prop_assert_eq!(superdominates(&a, &b).unwrap(), sd_oracle(a.parts(), b.parts()));
    }

    #[test]
    fn partial_order_axioms((a, b, c) in same_size()) {
        let sd = |x: &Partition, y: &Partition| superdominates(x, y).unwrap();
        prop_assert!(sd(&a, &a));
        if sd(&a, &b) && sd(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if sd(&a, &b) && sd(&b, &c) {
            prop_assert!(sd(&a, &c));
        }
    }

    #[test]
    fn equal_length_dominance_is_superdominance((a, b, _c) in same_size()) {
        if a.len() == b.len() {
            prop_assert_eq!(dominates(&a, &b).unwrap(), superdominates(&a, &b).unwrap());
        }
    }

    #[test]
    fn fusion_monotone(pairs in proptest::collection::vec((1u32..=4).prop_flat_map(|d| {
        let n = partition_count(d);
        (Just(d), 0..n, 0..n)
    }), 1..=3)) {
        let mut ls = Vec::new();
        let mut ms = Vec::new();
        for (d, i, j) in pairs {
            let ps = enum_partitions(d);
            let (a, b) = (ps[i].clone(), ps[j].clone());
            if superdominates(&a, &b).unwrap() { ls.push(a); ms.push(b); } else { ls.push(b); ms.push(a); }
        }
        prop_assume!(ls.iter().zip(&ms).all(|(a, b)| superdominates(a, b).unwrap()));
        prop_assert!(superdominates(&fuse(&ls), &fuse(&ms)).unwrap());
    }

    #[test]
    fn cancellation((a, b, _c) in same_size(), nu in any_partition(5, 4)) {
        let lhs = superdominates(&fuse2(&a, &nu), &fuse2(&b, &nu)).unwrap();
        prop_assert_eq!(lhs, superdominates(&a, &b).unwrap());
    }

    #[test]
    fn display_parse_round_trip(a in any_partition(9, 8)) {
        prop_assert_eq!(Partition::parse(&a.to_string()).unwrap(), a.clone());
        prop_assert_eq!(Partition::parse(&a.to_list_string()).unwrap(), a);
    }
}
