//! The acceptance criteria, shared by `symtrop verify-all` and the
//! `acceptance` test target.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certify::{random_nonnegative_point, verify_decic, verify_quartic};
use crate::exactnum::{binomial, int, rat, Rational};
use crate::partitions::{
    covers, enum_even_partitions, enum_partitions, fuse, fuse2, hasse, incomparable_pair, star, superdominates, Partition,
};
use crate::polyhedra::{cone_equal, dot, dual, intersect, minkowski_sum, primitive, Cone, IntVec};
use crate::symfunc::{
    eval_powersum_product, evaluate, finite_symmetrize, find_binomial_violation, monomial_to_powersum, power_sums,
    powersum_to_monomial, symmetrization_prefactor, FiniteEval, Group, MonomialTerm, NVarSym, SymFn,
};
use crate::symreduce::{build_pencil, trop_of_sos, PencilKind};
use crate::tropical::{
    double_hull, max_closure, parse_inequality, t_k_cone, trop_add, trop_bp_dual, trop_vandermonde,
    trop_vandermonde_generators, vandermonde_seed,
};

/// Randomized cases per property suite in criterion 10.
pub const SUITE_CASES: usize = 256;
const SEED: u64 = 0x7e5f_2d0a;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CriterionResult {
    fn new(id: u32, name: &'static str) -> Self {
        CriterionResult { id, name, passed: true, details: Vec::new() }
    }

    /// Records a sub-check; any failing one fails the criterion.
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.details.push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
        self.passed &= ok;
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(format!("     {}", what.into()));
    }

    pub fn line(&self) -> String {
        format!("criterion {:>2} {}: {}", self.id, if self.passed { "PASS" } else { "FAIL" }, self.name)
    }
}

fn p(parts: &[u32]) -> Partition {
    Partition::of(parts)
}

fn facet_set_of(c: &Cone) -> BTreeSet<IntVec> {
    c.facets().iter().map(|f| c.normalize_facet(f)).collect()
}

fn fixture_set(c: &Cone, rows: &[IntVec]) -> BTreeSet<IntVec> {
    rows.iter().map(|r| c.normalize_facet(&primitive(r))).collect()
}

fn parse_all(ineqs: &[&str], labels: &[Partition]) -> Vec<IntVec> {
    ineqs.iter().map(|s| parse_inequality(s, labels).expect("fixture parses")).collect()
}

fn ints(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Λ₈ poset fixture: 22 nodes, 25 cover relations (upper, lower).
pub fn lambda8_fixture() -> (BTreeMap<char, Partition>, Vec<(char, char)>) {
    let nodes: BTreeMap<char, Partition> = [
        ('a', "1^8"),
        ('b', "2,1^6"),
        ('c', "3,1^5"),
        ('d', "2^2,1^4"),
        ('e', "4,1^4"),
        ('f', "3,2,1^3"),
        ('g', "2^3,1^2"),
        ('h', "5,1^3"),
        ('i', "4,2,1^2"),
        ('j', "3^2,1^2"),
        ('k', "3,2^2,1"),
        ('u', "2^4"),
        ('l', "6,1^2"),
        ('m', "5,2,1"),
        ('n', "4,3,1"),
        ('o', "4,2^2"),
        ('v', "3^2,2"),
        ('p', "7,1"),
        ('q', "6,2"),
        ('r', "5,3"),
        ('s', "4^2"),
        ('t', "8"),
    ]
    .iter()
    .map(|&(c, s)| (c, Partition::parse(s).expect("fixture partition")))
    .collect();
    let edges = "ab bc cd de ef fg fh hi gi ij jk ku uo ov vq jl lm mn no km np pq qr rs st"
        .split_whitespace()
        .map(|e| {
            let mut it = e.chars();
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    (nodes, edges)
}

pub fn l_fixture(i: usize) -> &'static [&'static str] {
    match i {
        1 => &["y[2^2] >= y[4]"],
        2 => &["y[2^3] + y[6] >= 2*y[4,2]", "y[4,2] >= y[6]"],
        3 => &[
            "y[2^4] + y[4^2] >= 2*y[4,2^2]",
            "y[4,2^2] + y[8] >= 2*y[6,2]",
            "y[6,2] >= y[4^2]",
            "y[4^2] >= y[8]",
        ],
        4 => &[
            "y[6,2^2] >= y[4^2,2]",
            "y[8,2] >= y[6,4]",
            "y[6,4] >= y[10]",
            "y[6,2^2] + y[10] >= 2*y[8,2]",
            "y[4^2,2] + y[10] >= 2*y[6,4]",
            "y[4^2,2] >= y[8,2]",
            "y[4,2^3] + y[6,4] >= 2*y[4^2,2]",
            "y[4,2^3] + y[8,2] >= 2*y[6,2^2]",
            "y[2^5] + y[4^2,2] >= 2*y[4,2^3]",
        ],
        _ => &[],
    }
}

pub const EXTRA_DECIC_FACET: &str = "y[2^5] + y[6,4] + y[8,2] >= 3*y[6,2^2]";

/// Facet normals of trop(N_d), d = 3, 4, 5, in the y_1..y_d coordinates.
pub fn vandermonde_fixture(d: usize) -> Vec<IntVec> {
    let rows: &[&[i64]] = match d {
        3 => &[&[1, -2, 1], &[0, 3, -2]],
        4 => &[&[1, -2, 1, 0], &[0, 1, -2, 1], &[0, 0, 4, -3]],
        5 => &[&[1, -2, 1, 0, 0], &[0, 1, -2, 1, 0], &[0, 0, 1, -2, 1], &[0, 0, 0, 5, -4]],
        _ => &[],
    };
    rows.iter().map(|r| ints(r)).collect()
}

/// One linear form Σ c_i 𝔭_{coord_i} / den.
fn lin(coords: &[Partition], c: &[i64], den: i64) -> SymFn {
    let degree = coords[0].size();
    SymFn::from_terms(degree, coords.iter().zip(c).map(|(l, &x)| (l.clone(), rat(x, den)))).expect("homogeneous")
}

type Fixture = Vec<Vec<Vec<SymFn>>>;

/// Reference pencil blocks in the power-sum basis (after congruences),
/// in the coordinates enumerated largest-first.
pub fn pencil_fixture(two_d: u32) -> Fixture {
    let coords = enum_even_partitions(two_d);
    let l = |c: &[i64]| lin(&coords, c, 1);
    let lq = |c: &[i64], den: i64| lin(&coords, c, den);
    let z = || SymFn::zero(two_d);
    match two_d {
        6 => {
            // a = (2³), b = (4,2), c = (6)
            vec![
                vec![vec![l(&[1, 0, 0]), l(&[0, 1, 0])], vec![l(&[0, 1, 0]), l(&[0, 0, 1])]],
                vec![vec![l(&[0, 1, -1])]],
                vec![vec![l(&[1, -3, 2])]],
            ]
        }
        8 => {
            // a = (2⁴), b = (4,2²), c = (6,2), d = (4²), e = (8)
            vec![
                vec![vec![l(&[1, 0, 0, 0, 0]), l(&[0, 1, 0, 0, 0])], vec![l(&[0, 1, 0, 0, 0]), l(&[0, 0, 0, 1, 0])]],
                vec![vec![l(&[0, 1, 0, 0, 0]), l(&[0, 0, 1, 0, 0])], vec![l(&[0, 0, 1, 0, 0]), l(&[0, 0, 0, 0, 1])]],
                vec![
                    vec![l(&[1, -1, 0, 0, 0]), l(&[0, 1, -1, 0, 0]), z()],
                    vec![l(&[0, 1, -1, 0, 0]), lq(&[0, 0, 1, 1, -2], 2), z()],
                    vec![z(), z(), l(&[0, 0, 2, -2, 0])],
                ],
                vec![vec![l(&[0, 0, 0, 1, -1])]],
                vec![vec![l(&[0, 1, -2, -1, 2])]],
                vec![vec![l(&[1, -6, 8, 3, -6])]],
            ]
        }
        10 => {
            // a = (2⁵), b = (4,2³), c = (6,2²), d = (4²,2), e = (8,2), f = (6,4), g = (10)
            let [a, b, c, d, e, f, g] = std::array::from_fn(|i| {
                let mut v = [0i64; 7];
                v[i] = 1;
                l(&v)
            });
            let s = |x: &SymFn, y: &SymFn| x.sub(y);
            vec![
                vec![
                    vec![a.clone(), b.clone(), b.clone(), c.clone()],
                    vec![b.clone(), c.clone(), d.clone(), e.clone()],
                    vec![b.clone(), d.clone(), d.clone(), f.clone()],
                    vec![c.clone(), e.clone(), f.clone(), g.clone()],
                ],
                vec![
                    vec![s(&b, &c), s(&c, &e), s(&d, &e)],
                    vec![s(&c, &e), s(&e, &g), s(&f, &g)],
                    vec![s(&d, &e), s(&f, &g), s(&f, &g)],
                ],
                vec![
                    vec![l(&[1, -3, 2, 0, 0, 0, 0]), l(&[0, 1, -2, -1, 2, 0, 0]), z(), z()],
                    vec![l(&[0, 1, -2, -1, 2, 0, 0]), lq(&[0, 0, 1, 2, -4, -5, 6], 3), z(), z()],
                    vec![z(), z(), lq(&[0, 0, 3, -3, -3, 3, 0], 2), z()],
                    vec![z(), z(), z(), l(&[0, 0, 2, -2, -2, 2, 0])],
                ],
                vec![vec![l(&[0, 0, 0, 1, -1, -2, 2])]],
                vec![vec![l(&[0, 1, -3, -3, 6, 5, -6])]],
                vec![vec![l(&[1, -10, 20, 15, -30, -20, 24])]],
            ]
        }
        _ => Vec::new(),
    }
}

/// γ₅ separating T₁₀^(2) from T₁₀^(3).
pub fn gamma5() -> Vec<Rational> {
    [0, -3, -5, -6, -7, -9, -9].iter().map(|&x| int(x)).collect()
}

pub fn criterion_1() -> CriterionResult {
    let mut r = CriterionResult::new(1, "order structure of partitions under superdominance");
    let h5 = hasse(5);
    let chain: Vec<Partition> = ["1^5", "2,1^3", "3,1^2", "2^2,1", "4,1", "3,2", "5"]
        .iter()
        .map(|s| Partition::parse(s).unwrap())
        .collect();
    let chain_ok = h5.is_chain()
        && h5.nodes.len() == 7
        && chain.windows(2).all(|w| h5.edge_partitions().contains(&(w[0].clone(), w[1].clone())));
    r.check(chain_ok, "Λ5 is the 7-chain (1^5) > (2,1^3) > (3,1^2) > (2^2,1) > (4,1) > (3,2) > (5)");
    match incomparable_pair(6) {
        Some((a, b)) => r.check(true, format!("Λ6 has the incomparable pair {a}, {b}")),
        None => r.check(false, "Λ6 has an incomparable pair"),
    }
    let h8 = hasse(8);
    let (nodes, edges) = lambda8_fixture();
    let want: BTreeSet<(Partition, Partition)> = edges.iter().map(|(a, b)| (nodes[a].clone(), nodes[b].clone())).collect();
    let got: BTreeSet<(Partition, Partition)> = h8.edge_partitions().into_iter().collect();
    r.check(h8.nodes.len() == 22, format!("Λ8 has {} nodes", h8.nodes.len()));
    r.check(got == want, format!("Λ8 cover edges: {} computed, {} in the fixture, equal = {}", got.len(), want.len(), got == want));
    for e in want.symmetric_difference(&got) {
        r.note(format!("edge mismatch {} -> {}", e.0, e.1));
    }
    r
}

fn all_pairs(max_d: u32) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        let ps = enum_partitions(d);
        for a in &ps {
            for b in &ps {
                if a != b {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
    }
    out
}

pub fn criterion_2() -> CriterionResult {
    let mut r = CriterionResult::new(2, "power-sum inequalities follow superdominance (|λ| <= 8)");
    let pairs = all_pairs(8);
    let (comparable, other): (Vec<_>, Vec<_>) =
        pairs.into_iter().partition(|(a, b)| superdominates(a, b).expect("same size"));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let mut violations = 0usize;
    for _ in 0..500 {
        let x = random_nonnegative_point(&mut rng, 6);
        let ps = power_sums(&x, 8);
        for (a, b) in &comparable {
            if eval_powersum_product(a, &ps) < eval_powersum_product(b, &ps) {
                violations += 1;
            }
        }
    }
    r.check(
        violations == 0,
        format!("sound: {} comparable pairs x 500 random points, {violations} violations", comparable.len()),
    );
    let mut missing = Vec::new();
    for (a, b) in &other {
        let found = find_binomial_violation(a, b, 12).filter(|x| {
            let ps = power_sums(x, 8);
            eval_powersum_product(a, &ps) < eval_powersum_product(b, &ps)
        });
        if found.is_none() {
            missing.push(format!("{a} vs {b}"));
        }
    }
    r.check(
        missing.is_empty(),
        format!("complete: witness found for {}/{} non-superdominating pairs", other.len() - missing.len(), other.len()),
    );
    for m in missing.iter().take(10) {
        r.note(format!("no witness for {m}"));
    }
    r
}

pub fn criterion_3() -> CriterionResult {
    let mut r = CriterionResult::new(3, "tropicalized Vandermonde cell trop(N_d), d = 3, 4, 5");
    for d in 3..=5usize {
        let c = trop_vandermonde(d).expect("d >= 2");
        let want = fixture_set(&c, &vandermonde_fixture(d));
        r.check(facet_set_of(&c) == want, format!("d={d}: facets equal the reference list ({} inequalities)", want.len()));
        let h_only = Cone::from_h_int(d, &vandermonde_fixture(d), &[]).expect("dims");
        let (rays, lin) = trop_vandermonde_generators(d);
        let lin_ok = h_only.lineality_space().len() == 1 && primitive(&h_only.lineality_space()[0]) == primitive(&lin)
            || h_only.lineality_space().len() == 1
                && primitive(&h_only.lineality_space()[0]) == primitive(&lin.iter().map(|x| -x).collect::<Vec<_>>());
        r.check(lin_ok, format!("d={d}: H->V lineality is span (1,...,{d})"));
        let from_gens = Cone::from_v_int(d, &rays, std::slice::from_ref(&lin)).expect("dims");
        r.check(
            h_only.extreme_rays().len() == d - 1 && cone_equal(&from_gens, &h_only),
            format!("d={d}: H->V yields {} rays, cone equal to the reference generators", h_only.extreme_rays().len()),
        );
        match double_hull(&vandermonde_seed(d)) {
            Ok(dh) => r.check(
                cone_equal(&dh.cone, &c) && facet_set_of(&dh.cone) == want,
                format!("d={d}: double_hull(cone{{1, a, -a}}) equals trop(N_d) after {} rounds", dh.iterations),
            ),
            Err(e) => r.check(false, format!("d={d}: double_hull failed: {e}")),
        }
    }
    r
}

pub fn criterion_4() -> CriterionResult {
    let mut r = CriterionResult::new(4, "trop of the B(2d) sums-of-squares duals equals L1..L4");
    for (i, two_d) in [(1usize, 4u32), (2, 6), (3, 8), (4, 10)] {
        let labels = enum_even_partitions(two_d);
        let res = build_pencil(&PencilKind::B(two_d)).and_then(|p| trop_of_sos(&p));
        match res {
            Ok(c) => {
                let want = fixture_set(&c, &parse_all(l_fixture(i), &labels));
                let got = facet_set_of(&c);
                r.check(got == want, format!("B({two_d}): {} facets, L{i} has {}, equal = {}", got.len(), want.len(), got == want));
            }
            Err(e) => r.check(false, format!("B({two_d}): {e}")),
        }
    }
    r
}

pub fn criterion_5() -> CriterionResult {
    let mut r = CriterionResult::new(5, "trop of the B(2d) nonnegative duals");
    for (i, d) in [(2usize, 3usize), (3, 4)] {
        let labels = enum_even_partitions(2 * d as u32);
        let c = trop_bp_dual(d).expect("d <= 5");
        let l = Cone::from_h_int(labels.len(), &parse_all(l_fixture(i), &labels), &[]).expect("dims");
        r.check(cone_equal(&c, &l), format!("trop_bp_dual({d}) equals the L{i} cone"));
    }
    let labels = enum_even_partitions(10);
    let c = trop_bp_dual(5).expect("d <= 5");
    let l4 = parse_all(l_fixture(4), &labels);
    let extra = parse_inequality(EXTRA_DECIC_FACET, &labels).expect("fixture parses");
    let mut rows = l4.clone();
    rows.push(extra.clone());
    let want_cone = Cone::from_h_int(labels.len(), &rows, &[]).expect("dims");
    r.check(cone_equal(&c, &want_cone), "trop_bp_dual(5) equals the L4 cone cut by the extra facet");
    let got = facet_set_of(&c);
    let l4_set = fixture_set(&c, &l4);
    let extra_n = c.normalize_facet(&extra);
    let beyond: Vec<&IntVec> = got.difference(&l4_set).collect();
    r.check(
        beyond.len() == 1 && beyond[0] == &extra_n && l4_set.is_subset(&got),
        format!("exactly one facet beyond L4 ({} found): {EXTRA_DECIC_FACET}", beyond.len()),
    );
    r
}

pub fn criterion_6() -> CriterionResult {
    let mut r = CriterionResult::new(6, "the T^(k) hierarchy");
    let labels6 = enum_even_partitions(6);
    let t61 = t_k_cone(3, 1).expect("t_k");
    let chain = parse_all(&["y[2^3] >= y[4,2]", "y[4,2] >= y[6]"], &labels6);
    r.check(facet_set_of(&t61) == fixture_set(&t61, &chain), "T6^(1) is the chain y[2^3] >= y[4,2] >= y[6]");
    let t62 = t_k_cone(3, 2).expect("t_k");
    r.check(facet_set_of(&t62) == fixture_set(&t62, &parse_all(l_fixture(2), &labels6)), "T6^(2) has facets L2");
    let t102 = t_k_cone(5, 2).expect("t_k");
    let t103 = t_k_cone(5, 3).expect("t_k");
    let g = gamma5();
    r.check(
        t102.contains_point(&g) && !t103.contains_point(&g),
        "gamma5 = (0,-3,-5,-6,-7,-9,-9) lies in T10^(2) but not in T10^(3)",
    );
    r.check(t103.is_subset_of(&t102) && !cone_equal(&t102, &t103), "T10^(3) is strictly inside T10^(2)");
    let mut nested = true;
    let mut bp_inside = true;
    for d in 2..=5usize {
        let bp = trop_bp_dual(d).expect("d <= 5");
        let cones: Vec<Cone> = (1..=5).map(|k| t_k_cone(d, k).expect("t_k")).collect();
        for k in 0..4 {
            if !cones[k + 1].is_subset_of(&cones[k]) {
                nested = false;
                r.note(format!("T^({}) not inside T^({}) for d={d}", k + 2, k + 1));
            }
        }
        for (k, c) in cones.iter().enumerate() {
            if !bp.is_subset_of(c) {
                bp_inside = false;
                r.note(format!("trop_bp_dual({d}) not inside T^({})", k + 1));
            }
        }
    }
    r.check(nested, "T^(k) contains T^(k+1) for d <= 5, k <= 4");
    r.check(bp_inside, "trop_bp_dual(d) lies in every T^(k), d <= 5, k <= 5");
    r
}

fn symmetrize_scaled(alpha: &[u32], lambda: &[u32], n: usize, rescale: i64) -> NVarSym {
    let t = MonomialTerm::new(alpha.to_vec(), Partition::of(lambda));
    let mut scale = Rational::one();
    for _ in 0..rescale {
        scale *= int(n as i64);
    }
    finite_symmetrize(&t, n, Group::B).expect("n large enough").scale(&scale)
}

pub fn criterion_7() -> CriterionResult {
    let mut r = CriterionResult::new(7, "pencil blocks match the reference fixtures");
    for two_d in [6u32, 8, 10] {
        match build_pencil(&PencilKind::B(two_d)) {
            Ok(pencil) => {
                let want = pencil_fixture(two_d);
                let got: Fixture = pencil.blocks.iter().map(|b| b.entries.clone()).collect();
                let sizes: Vec<usize> = got.iter().map(|b| b.len()).collect();
                r.check(got == want, format!("B({two_d}): {} blocks of sizes {sizes:?} equal entry-for-entry", got.len()));
            }
            Err(e) => r.check(false, format!("B({two_d}): {e}")),
        }
    }
    for n in [6usize, 8, 10] {
        let ni = int(n as i64);
        // row v1 = n^{1/2}(x1 p2, x1^3)
        let v1 = [
            (vec![2], vec![2, 2], p(&[2, 2, 2])),
            (vec![4], vec![2], p(&[4, 2])),
            (vec![6], vec![], p(&[6])),
        ];
        let v1_ok = v1.iter().all(|(a, l, want)| symmetrize_scaled(a, l, n, 1) == NVarSym::from_symfn(&SymFn::p(want), n));
        // v2 = n x1 x2^2 and v3 = n^{3/2} x1 x2 x3
        let c2 = &ni * &ni / Rational::from_integer(BigInt::from(2) * binomial(n as u64, 2));
        let c3 = &ni * &ni * &ni / Rational::from_integer(binomial(n as u64, 3));
        let s2 = symmetrize_scaled(&[2, 4], &[], n, 2);
        let s3 = symmetrize_scaled(&[2, 2, 2], &[], n, 3);
        let v2_ok = s2.coeffs.len() == 1 && s2.coeffs.get(&p(&[4, 2])) == Some(&c2);
        let v3_ok = s3.coeffs.len() == 1 && s3.coeffs.get(&p(&[2, 2, 2])) == Some(&c3);
        let formula_ok = symmetrization_prefactor(&p(&[4, 2]), n) * &ni * &ni == c2
            && symmetrization_prefactor(&p(&[2, 2, 2]), n) * &ni * &ni * &ni == c3;
        r.check(
            v1_ok && v2_ok && v3_ok && formula_ok,
            format!("n={n}: finite symmetrization gives the v1 row exactly, n^2/(2C(n,2)) = {} and n^3/C(n,3) = {}", c2, c3),
        );
    }
    r
}

pub fn criterion_8() -> CriterionResult {
    let mut r = CriterionResult::new(8, "decic certificate");
    let rep = verify_decic();
    let w = &rep.witness;
    r.check(w["pairing"] == "-49/3", format!("<a, c> = {}", w["pairing"]));
    let blocks = w["blocks_psd"].as_array().cloned().unwrap_or_default();
    r.check(
        blocks.len() == 6 && blocks.iter().all(|b| b["psd"] == true),
        format!("{} B(10) blocks, all PSD at a", blocks.len()),
    );
    let nviol = w["violations"].as_array().map_or(usize::MAX, |v| v.len());
    r.check(nviol == 0 && w["samples"] == 1000, format!("{} random samples, {nviol} negative values", w["samples"]));
    r.check(w["chain_failures"] == 0, "AM-GM and Lyapunov steps hold at every sample");
    r.check(rep.passed(), "overall report passes");
    r
}

pub fn criterion_9() -> CriterionResult {
    let mut r = CriterionResult::new(9, "quartic certificate");
    let rep = verify_quartic();
    let w = &rep.witness;
    r.check(w["g_1(9/10)"] == "-3/200", format!("g_1(9/10) = {}", w["g_1(9/10)"]));
    r.check(
        w["reduction_quartic_sqrt2_nonnegative"] == true && w["reduction_quartic_rational_nonnegative"] == true,
        "both reduction quartics are globally nonnegative",
    );
    r.check(w["sqrt3_identity"] == true && w["sqrt3_zeros"] == true, "sqrt(3) boundary identity and zeros");
    r.check(w["grid_violation"].is_null(), format!("grid check over {} points", w["grid_points"]));
    r.check(rep.passed(), "overall report passes");
    r
}

fn random_partition(rng: &mut impl Rng, cache: &mut BTreeMap<u32, Vec<Partition>>, d: u32) -> Partition {
    let ps = cache.entry(d).or_insert_with(|| enum_partitions(d));
    ps[rng.random_range(0..ps.len())].clone()
}

/// Order axioms, fusion monotonicity, cancellation and covering facts.
pub fn partitions_suite(cases: usize, seed: u64) -> Vec<(String, usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cache = BTreeMap::new();
    let mut out = Vec::new();

    let mut fails = 0;
    for _ in 0..cases {
        let d = rng.random_range(1..=10);
        let a = random_partition(&mut rng, &mut cache, d);
        let b = random_partition(&mut rng, &mut cache, d);
        let c = random_partition(&mut rng, &mut cache, d);
        let sd = |x: &Partition, y: &Partition| superdominates(x, y).unwrap();
        let refl = sd(&a, &a);
        let anti = !(sd(&a, &b) && sd(&b, &a)) || a == b;
        let trans = !(sd(&a, &b) && sd(&b, &c)) || sd(&a, &c);
        if !(refl && anti && trans) {
            fails += 1;
        }
    }
    out.push(("superdominance is a partial order".to_string(), cases, fails));

    let mut fails = 0;
    let mut done = 0;
    while done < cases {
        let k = rng.random_range(1..=3);
        let mut ls = Vec::new();
        let mut ms = Vec::new();
        for _ in 0..k {
            let d = rng.random_range(1..=8 / k as u32);
            let a = random_partition(&mut rng, &mut cache, d);
            let b = random_partition(&mut rng, &mut cache, d);
            let (hi, lo) = if superdominates(&a, &b).unwrap() { (a, b) } else { (b, a) };
            ls.push(hi);
            ms.push(lo);
        }
        if ls.iter().zip(&ms).all(|(a, b)| superdominates(a, b).unwrap()) {
            done += 1;
            if !superdominates(&fuse(&ls), &fuse(&ms)).unwrap() {
                fails += 1;
            }
        }
    }
    out.push(("fusion is monotone".to_string(), cases, fails));

    let mut fails = 0;
    for _ in 0..cases {
        let d = rng.random_range(1..=8);
        let e = rng.random_range(1..=6);
        let a = random_partition(&mut rng, &mut cache, d);
        let b = random_partition(&mut rng, &mut cache, d);
        let c = random_partition(&mut rng, &mut cache, e);
        if superdominates(&fuse2(&a, &c), &fuse2(&b, &c)).unwrap() != superdominates(&a, &b).unwrap() {
            fails += 1;
        }
    }
    out.push(("cancellation of a common factor".to_string(), cases, fails));

    let mut fails = 0;
    let mut done = 0;
    while done < cases {
        let d = rng.random_range(2..=10);
        let a = random_partition(&mut rng, &mut cache, d);
        if a.len() < 2 {
            continue;
        }
        done += 1;
        let s = star(&a).unwrap();
        let strictly = superdominates(&a, &s).unwrap() && !superdominates(&s, &a).unwrap();
        let cover_rule = covers(&a, &s).unwrap() == (a.parts()[0] - a.parts()[1] <= 1);
        if !(strictly && cover_rule) {
            fails += 1;
        }
    }
    out.push(("λ strictly above λ*, covering iff λ1 - λ2 <= 1".to_string(), cases, fails));
    out
}

fn random_symfn(rng: &mut impl Rng, cache: &mut BTreeMap<u32, Vec<Partition>>, degree: u32) -> SymFn {
    let mut f = SymFn::zero(degree);
    for _ in 0..rng.random_range(1..=3) {
        let l = random_partition(rng, cache, degree);
        f = f.add(&SymFn::term(&l, rat(rng.random_range(-5..=5), rng.random_range(1..=4))));
    }
    f
}

/// Basis round trips, evaluation as a ring map, finite symmetrization.
pub fn symfunc_suite(cases: usize, seed: u64) -> Vec<(String, usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cache = BTreeMap::new();
    let mut out = Vec::new();

    let mut fails = 0;
    for _ in 0..cases {
        let d = rng.random_range(1..=8);
        let l = random_partition(&mut rng, &mut cache, d);
        let back = powersum_to_monomial(&monomial_to_powersum(&l));
        let mut want = BTreeMap::new();
        want.insert(l.clone(), Rational::one());
        if back != want {
            fails += 1;
        }
    }
    out.push(("monomial -> power sum -> monomial is the identity".to_string(), cases, fails));

    let mut fails = 0;
    for _ in 0..cases {
        let (df, dg) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let f = random_symfn(&mut rng, &mut cache, df);
        let g = random_symfn(&mut rng, &mut cache, dg);
        let x = FiniteEval::new(random_nonnegative_point(&mut rng, 5)).unwrap();
        if evaluate(&f.mul(&g), &x) != evaluate(&f, &x) * evaluate(&g, &x)
            || evaluate(&f.add(&f), &x) != evaluate(&f, &x) * int(2)
        {
            fails += 1;
        }
    }
    out.push(("evaluation is a ring homomorphism".to_string(), cases, fails));

    let mut fails = 0;
    for _ in 0..cases {
        let d = rng.random_range(1..=6);
        let gamma = random_partition(&mut rng, &mut cache, d);
        let n = rng.random_range(gamma.len()..=gamma.len() + 3);
        let t = MonomialTerm::new(gamma.parts().to_vec(), Partition::empty());
        let s = finite_symmetrize(&t, n, Group::S).unwrap();
        let want = symmetrization_prefactor(&gamma, n);
        if s.coeffs.len() != 1 || s.coeffs.get(&gamma) != Some(&want) {
            fails += 1;
        }
    }
    out.push(("finite symmetrization matches the closed-form prefactor".to_string(), cases, fails));
    out
}

fn random_int_vec(rng: &mut impl Rng, dim: usize) -> IntVec {
    (0..dim).map(|_| BigInt::from(rng.random_range(-3..=3))).collect()
}

fn random_cone(rng: &mut impl Rng, dim: usize) -> Cone {
    let nrays = rng.random_range(1..=dim + 2);
    let rays: Vec<IntVec> = (0..nrays).map(|_| random_int_vec(rng, dim)).collect();
    let lin: Vec<IntVec> = if rng.random_bool(0.2) { vec![random_int_vec(rng, dim)] } else { Vec::new() };
    Cone::from_v_int(dim, &rays, &lin).expect("dims")
}

/// Double description cross-checks and duality identities.
pub fn polyhedra_suite(cases: usize, seed: u64) -> Vec<(String, usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut fails = 0;
    for _ in 0..cases {
        let dim = rng.random_range(2..=5);
        let c = random_cone(&mut rng, dim);
        let hv = c.facets().iter().all(|f| {
            c.extreme_rays().iter().all(|r| !dot(f, r).is_negative())
                && c.lineality_space().iter().all(|l| dot(f, l).is_zero())
        }) && c.equations().iter().all(|e| {
            c.extreme_rays().iter().all(|r| dot(e, r).is_zero()) && c.lineality_space().iter().all(|l| dot(e, l).is_zero())
        });
        let rebuilt = Cone::from_h_int(dim, c.facets(), c.equations()).expect("dims");
        if !hv || !cone_equal(&rebuilt, &c) || !cone_equal(&dual(&dual(&c)), &c) {
            fails += 1;
        }
    }
    out.push(("H.V >= 0, H/V round trip and double dual".to_string(), cases, fails));

    let mut fails = 0;
    for _ in 0..cases {
        let dim = rng.random_range(2..=4);
        let a = random_cone(&mut rng, dim);
        let b = random_cone(&mut rng, dim);
        let sum = minkowski_sum(&a, &b).unwrap();
        let meet = intersect(&a, &b).unwrap();
        let ok = cone_equal(&dual(&sum), &intersect(&dual(&a), &dual(&b)).unwrap())
            && cone_equal(&dual(&meet), &minkowski_sum(&dual(&a), &dual(&b)).unwrap());
        if !ok {
            fails += 1;
        }
    }
    out.push(("(A+B)* = A* ∩ B* and (A∩B)* = A* + B*".to_string(), cases, fails));

    let mut fails = 0;
    for _ in 0..cases {
        let dim = rng.random_range(2..=4);
        let c = random_cone(&mut rng, dim);
        let facets = c.facets();
        for i in 0..facets.len() {
            let rest: Vec<IntVec> = facets.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, f)| f.clone()).collect();
            let smaller = Cone::from_h_int(dim, &rest, c.equations()).unwrap();
            if cone_equal(&smaller, &c) {
                fails += 1;
                break;
            }
        }
    }
    out.push(("every facet is irredundant".to_string(), cases, fails));
    out
}

fn random_member(rng: &mut impl Rng, c: &Cone) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); c.dim()];
    for r in c.extreme_rays() {
        let w = rat(rng.random_range(0..=6), rng.random_range(1..=3));
        for (xi, ri) in x.iter_mut().zip(r) {
            *xi += &w * Rational::from_integer(ri.clone());
        }
    }
    for l in c.lineality_space() {
        let w = rat(rng.random_range(-6..=6), rng.random_range(1..=3));
        for (xi, li) in x.iter_mut().zip(l) {
            *xi += &w * Rational::from_integer(li.clone());
        }
    }
    x
}

/// Max-closure is closed under ⊕ and contains its input; facts about the
/// nonnegative-dual tropicalizations.
pub fn tropical_suite(cases: usize, seed: u64) -> Vec<(String, usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut fails = 0;
    for _ in 0..cases {
        let dim = rng.random_range(2..=4);
        let nrays = rng.random_range(1..=3);
        let rays: Vec<IntVec> = (0..nrays).map(|_| random_int_vec(&mut rng, dim)).collect();
        let ones: IntVec = vec![BigInt::from(1); dim];
        let m = Cone::from_v_int(dim, &rays, &[ones]).unwrap();
        let v = vec![Rational::one(); dim];
        let c = max_closure(&m, &v).unwrap();
        let a = random_member(&mut rng, &c);
        let b = random_member(&mut rng, &c);
        if !m.is_subset_of(&c) || !c.contains_point(&trop_add(&a, &b)) {
            fails += 1;
        }
    }
    out.push(("max-closure contains M and is closed under max".to_string(), cases, fails));

    let mut fails = 0;
    let bps: Vec<Cone> = (2..=5).map(|d| trop_bp_dual(d).unwrap()).collect();
    for _ in 0..cases {
        let c = &bps[rng.random_range(0..bps.len())];
        let a = random_member(&mut rng, c);
        let b = random_member(&mut rng, c);
        let shift = rat(rng.random_range(-9..=9), 2);
        let shifted: Vec<Rational> = a.iter().map(|x| x + &shift).collect();
        if !c.contains_point(&trop_add(&a, &b)) || !c.contains_point(&shifted) {
            fails += 1;
        }
    }
    out.push(("trop_bp_dual is closed under max and shifts by 1".to_string(), cases, fails));

    let mut fails = 0;
    for bp in &bps {
        for f in bp.facets() {
            let neg = f.iter().filter(|x| x.is_negative()).count();
            let sum: BigInt = f.iter().sum();
            if neg != 1 || !sum.is_zero() {
                fails += 1;
            }
        }
    }
    let nfacets: usize = bps.iter().map(|b| b.facets().len()).sum();
    out.push(("trop_bp_dual facets: one negative entry, zero sum".to_string(), nfacets, fails));
    out
}

pub fn criterion_10() -> CriterionResult {
    let mut r = CriterionResult::new(10, "randomized property suites");
    let suites = [
        ("partitions", partitions_suite(SUITE_CASES, SEED ^ 10)),
        ("symfunc", symfunc_suite(SUITE_CASES, SEED ^ 11)),
        ("polyhedra", polyhedra_suite(SUITE_CASES, SEED ^ 12)),
        ("tropical", tropical_suite(SUITE_CASES, SEED ^ 13)),
    ];
    for (module, checks) in suites {
        for (name, n, fails) in checks {
            r.check(fails == 0, format!("{module}: {name} ({n} cases, {fails} failures)"));
        }
    }
    r
}

pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ]
}
