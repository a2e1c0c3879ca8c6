use std::collections::BTreeMap;

use num_traits::{One, Zero};
use proptest::prelude::*;
use symtrop::exactnum::{int, rat, Rational};
use symtrop::partitions::*;
use symtrop::symfunc::*;

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(256)
}

fn p(s: &str) -> Partition {
    Partition::parse(s).unwrap()
}

fn fact(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |a, k| a * int(k as i64))
}

fn pow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |a, _| a * x)
}

fn mult_fact(l: &Partition) -> Rational {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &k in l.parts() {
        *counts.entry(k).or_insert(0) += 1;
    }
    counts.values().fold(Rational::one(), |a, &c| a * fact(c))
}

// All set partitions of 0..n, each block a list of indices.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for sp in set_partitions(n - 1) {
        for i in 0..sp.len() {
            let mut s = sp.clone();
            s[i].push(n - 1);
            out.push(s);
        }
        let mut s = sp.clone();
        s.push(vec![n - 1]);
        out.push(s);
    }
    out
}

// m_λ through the Möbius function of the set-partition lattice.
fn m_to_p_oracle(l: &Partition) -> SymFn {
    let parts = l.parts();
    let mut f = SymFn::zero(l.size());
    for sp in set_partitions(parts.len()) {
        let mut c = Rational::one();
        let mut nu = Vec::new();
        for b in &sp {
            let k = b.len();
            c *= fact(k - 1) * int(if k % 2 == 1 { 1 } else { -1 });
            nu.push(b.iter().map(|&i| parts[i]).sum::<u32>());
        }
        f = f.add(&SymFn::term(&Partition::new(nu).unwrap(), c));
    }
    f.scale(&(Rational::one() / mult_fact(l)))
}

// Σ over injective index maps, divided by the multiplicity factorials.
fn m_brute(l: &Partition, x: &[Rational]) -> Rational {
    fn go(parts: &[u32], x: &[Rational], used: &mut Vec<bool>) -> Rational {
        let Some((&k, rest)) = parts.split_first() else { return Rational::one() };
        let mut s = Rational::zero();
        for i in 0..x.len() {
            if !used[i] {
                used[i] = true;
                s += pow(&x[i], k) * go(rest, x, used);
                used[i] = false;
            }
        }
        s
    }
    go(l.parts(), x, &mut vec![false; x.len()]) / mult_fact(l)
}

fn e_brute(k: usize, x: &[Rational]) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    m_brute(&Partition::new(vec![1; k]).unwrap(), x)
}

fn nvar_eval(f: &NVarSym, x: &[Rational]) -> Rational {
    f.coeffs.iter().fold(Rational::zero(), |a, (b, c)| a + c * m_brute(b, x))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for q in permutations(n - 1) {
        for pos in 0..=q.len() {
            let mut r = q.clone();
            r.insert(pos, n - 1);
            out.push(r);
        }
    }
    out
}

fn term_value(t: &MonomialTerm, x: &[Rational]) -> Rational {
    let mono = t.alpha.iter().enumerate().fold(Rational::one(), |a, (i, &e)| a * pow(&x[i], e));
    let ps = power_sums(x, t.lambda.size().max(1));
    mono * eval_powersum_product(&t.lambda, &ps)
}

// Average of the term over S_n (or B_n) acting on x, by brute force.
fn reynolds_brute(t: &MonomialTerm, x: &[Rational], group: Group) -> Rational {
    let n = x.len();
    let signs: Vec<Vec<i64>> = match group {
        Group::S => vec![vec![1; n]],
        Group::B => (0..1u32 << n).map(|m| (0..n).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect()).collect(),
    };
    let perms = permutations(n);
    let mut s = Rational::zero();
    for perm in &perms {
        for sg in &signs {
            let y: Vec<Rational> = (0..n).map(|i| &x[perm[i]] * int(sg[i])).collect();
            s += term_value(t, &y);
        }
    }
    s / int((perms.len() * signs.len()) as i64)
}

fn small_point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-5i64..=5, 1i64..=3).prop_map(|(a, b)| rat(a, b)), n)
}

fn partition_of_size(max: u32) -> impl Strategy<Value = Partition> {
    (1..=max).prop_flat_map(|d| (0..partition_count(d)).prop_map(move |i| enum_partitions(d)[i].clone()))
}

fn sym_fn(max: u32) -> impl Strategy<Value = SymFn> {
    (1..=max).prop_flat_map(|d| {
        proptest::collection::vec((0..partition_count(d), -6i64..=6), 1..4).prop_map(move |ts| {
            let ps = enum_partitions(d);
            SymFn::from_terms(d, ts.into_iter().map(|(i, c)| (ps[i].clone(), int(c)))).unwrap()
        })
    })
}

#[test]
fn monomial_transition_matches_set_partition_formula() {
    for d in 1..=8 {
        for l in enum_partitions(d) {
            assert_eq!(monomial_to_powersum(&l), m_to_p_oracle(&l), "{l}");
        }
    }
}

#[test]
fn transitions_round_trip() {
    for d in 1..=7 {
        for l in enum_partitions(d) {
            let f = SymFn::p(&l);
            assert_eq!(monomials_to_powersum(d, &powersum_to_monomial(&f)), f);
        }
    }
}

#[test]
fn small_transition_examples() {
    // m_{1,1} = (p_1² − p_2)/2
    let want = SymFn::term(&p("1,1"), rat(1, 2)).sub(&SymFn::term(&p("2"), rat(1, 2)));
    assert_eq!(monomial_to_powersum(&p("1,1")), want);
    // p_{1,1} = m_2 + 2 m_{1,1}
    let m = powersum_in_monomials(&p("1,1"));
    assert_eq!(m[&p("2")], int(1));
    assert_eq!(m[&p("1,1")], int(2));
}

#[test]
fn newton_identities_against_brute_force() {
    let x = vec![rat(1, 2), int(-2), int(3), rat(5, 3), int(1)];
    let es = newton_e_from_p(4).unwrap();
    let at = FiniteEval::new(x.clone()).unwrap();
    let ev: Vec<Rational> = (1..=4).map(|k| e_brute(k, &x)).collect();
    for k in 1..=4 {
        assert_eq!(evaluate(&es[k - 1], &at), ev[k - 1], "e_{k}");
    }
    let ps = newton_p_from_e(4).unwrap();
    let pv = power_sums(&x, 4);
    for k in 1..=4 {
        // read keys as products of e values
        assert_eq!(eval_powersum_product_over(&ps[k - 1], &ev), pv[k - 1], "p_{k}");
    }
    assert!(newton_e_from_p(5).is_err());
}

fn eval_powersum_product_over(f: &SymFn, vals: &[Rational]) -> Rational {
    f.coeffs().iter().fold(Rational::zero(), |a, (l, c)| a + c * eval_powersum_product(l, vals))
}

#[test]
fn symmetrization_prefactor_matches_direct_average() {
    for n in 1..=5usize {
        for d in 1..=5 {
            for g in enum_partitions(d) {
                if g.len() > n {
                    continue;
                }
                let t = MonomialTerm::new(g.parts().to_vec(), Partition::empty());
                let s = finite_symmetrize(&t, n, Group::S).unwrap();
                let mut want = BTreeMap::new();
                want.insert(g.clone(), symmetrization_prefactor(&g, n));
                assert_eq!(s.coeffs, want, "{g} n={n}");
            }
        }
    }
}

#[test]
fn odd_exponents_vanish_under_b() {
    let t = MonomialTerm::new(vec![3, 1], p("2"));
    assert!(finite_symmetrize(&t, 4, Group::B).unwrap().coeffs.is_empty());
    let t = MonomialTerm::new(vec![1], p("1"));
    let s = finite_symmetrize(&t, 3, Group::B).unwrap();
    assert_eq!(s.coeffs.len(), 1);
    assert!(s.coeffs.contains_key(&p("2")));
}

#[test]
fn finite_symmetrize_rejects_bad_support() {
    let t = MonomialTerm::new(vec![1, 1, 1], p("2"));
    assert!(finite_symmetrize(&t, 2, Group::S).is_err());
    assert!(finite_symmetrize(&t, 0, Group::S).is_err());
}

#[test]
fn n_times_symmetrized_square_tends_to_power_sum() {
    // n·sym(x1² p1²) = p_{2,1,1} exactly, for every n.
    for n in 2..=6 {
        let s = finite_symmetrize(&MonomialTerm::new(vec![2], p("1,1")), n, Group::S).unwrap();
        let want = NVarSym::from_symfn(&SymFn::p(&p("2,1,1")), n);
        assert_eq!(s.scale(&int(n as i64)), want, "n={n}");
    }
}

#[test]
fn binomial_witnesses_cover_every_failure() {
    let mut failures = 0;
    for d in 1..=8 {
        let ps = enum_partitions(d);
        for a in &ps {
            for b in &ps {
                let holds = binomial_inequality_holds(a, b).unwrap();
                let w = find_binomial_violation(a, b, 12);
                if holds {
                    assert!(w.is_none(), "{a} {b}");
                } else {
                    failures += 1;
                    let x = w.unwrap_or_else(|| panic!("no witness for {a} vs {b}"));
                    let pv = power_sums(&x, d);
                    assert!(eval_powersum_product(a, &pv) < eval_powersum_product(b, &pv));
                }
            }
        }
    }
    let pairs: usize = (1..=8).map(|d| partition_count(d).pow(2)).sum();
    let holding: usize = (1..=8)
        .map(|d| {
            let ps = enum_partitions(d);
            ps.iter().flat_map(|a| ps.iter().map(move |b| (a, b))).filter(|(a, b)| superdominates(a, b).unwrap()).count()
        })
        .sum();
    assert_eq!(failures, pairs - holding);
}

#[test]
fn pairing_checks_dimension() {
    let f = SymFn::p(&p("2,1")).add(&SymFn::term(&p("3"), int(2)));
    let coords = enum_partitions(3);
    let point = vec![int(1), int(10), int(100)];
    assert_eq!(f.pair(&coords, &point).unwrap(), int(210));
    assert!(f.pair(&coords, &point[..2]).is_err());
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn monomial_evaluation_matches_brute_force(l in partition_of_size(6), x in small_point(4)) {
        let at = FiniteEval::new(x.clone()).unwrap();
        prop_assert_eq!(evaluate(&monomial_to_powersum(&l), &at), m_brute(&l, &x));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(f in sym_fn(4), g in sym_fn(4), x in small_point(3)) {
        let at = FiniteEval::new(x).unwrap();
        prop_assert_eq!(evaluate(&f.mul(&g), &at), evaluate(&f, &at) * evaluate(&g, &at));
        if f.degree() == g.degree() {
            prop_assert_eq!(evaluate(&f.add(&g), &at), evaluate(&f, &at) + evaluate(&g, &at));
        }
    }

    #[test]
    fn product_is_fusion(a in partition_of_size(5), b in partition_of_size(5)) {
        prop_assert_eq!(SymFn::p(&a).mul(&SymFn::p(&b)), SymFn::p(&fuse2(&a, &b)));
    }

    #[test]
    fn finite_symmetrize_matches_reynolds_average(
        alpha in proptest::collection::vec(0u32..=3, 0..=2),
        l in partition_of_size(3),
        x in small_point(3),
        b in any::<bool>(),
    ) {
        let group = if b { Group::B } else { Group::S };
        let t = MonomialTerm::new(alpha, l);
        let s = finite_symmetrize(&t, 3, group).unwrap();
        prop_assert_eq!(nvar_eval(&s, &x), reynolds_brute(&t, &x, group));
    }

    #[test]
    fn restriction_agrees_with_evaluation(f in sym_fn(5), x in small_point(3)) {
        let at = FiniteEval::new(x.clone()).unwrap();
        prop_assert_eq!(nvar_eval(&NVarSym::from_symfn(&f, 3), &x), evaluate(&f, &at));
    }
}
