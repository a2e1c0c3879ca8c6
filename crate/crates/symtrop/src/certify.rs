//! Exact PSD decisions, dual-cone membership and the explicit quartic and
//! decic certificates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactnum::{
    fmt_rat, globally_nonnegative, int, rat, sign_a_plus_b_sqrt, value_to_rat, QSqrt2, QSqrt3, Rational, UniPoly,
};
use crate::partitions::Partition;
use crate::symfunc::{evaluate, power_sums, eval_powersum_product, FiniteEval, SymFn};
use crate::symreduce::{build_pencil, GramPencil, PencilKind, SymMatrix};

/// Exactly symmetric n×n rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSymMatrix {
    n: usize,
    entries: Vec<Vec<Rational>>,
}

impl RationalSymMatrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidArgument(format!("matrix is not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(RationalSymMatrix { n, entries })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    /// Parses [["1","2/3"],["2/3",4]].
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be a JSON array of rows".into()))?;
        let mut entries = Vec::new();
        for r in rows {
            let r = r.as_array().ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))?;
            entries.push(r.iter().map(value_to_rat).collect::<Result<Vec<_>>>()?);
        }
        Self::new(entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = self.entries.iter().map(|r| r.iter().map(fmt_rat).collect()).collect();
        json!(rows)
    }
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Coefficients e_0..e_n of det(tI + M) = Σ e_k t^{n−k}, via
/// Faddeev–LeVerrier on det(tI − M).
pub fn shifted_char_poly(m: &RationalSymMatrix) -> Vec<Rational> {
    let n = m.n;
    let mut c = vec![Rational::one()];
    let mut mk = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = M·M_{k−1} + c_{k−1} I ; c_k = −tr(M·M_k)/k
        let mut next = mat_mul(&m.entries, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[k - 1];
        }
        let prod = mat_mul(&m.entries, &next);
        let tr: Rational = (0..n).map(|i| prod[i][i].clone()).sum();
        c.push(-tr / int(k as i64));
        mk = next;
    }
    c.iter().enumerate().map(|(k, x)| if k % 2 == 1 { -x.clone() } else { x.clone() }).collect()
}

/// PSD iff every coefficient of det(tI + M) is nonnegative.
pub fn is_psd(m: &RationalSymMatrix) -> bool {
    shifted_char_poly(m).iter().all(|e| !e.is_negative())
}

/// Pairs every entry of a SymFn matrix with the dual point.
pub fn evaluate_block(block: &SymMatrix, coords: &[Partition], point: &[Rational]) -> Result<RationalSymMatrix> {
    let entries = block
        .iter()
        .map(|row| row.iter().map(|f| f.pair(coords, point)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    RationalSymMatrix::new(entries)
}

/// PSD status of each pencil block at the point.
pub fn dual_membership_blocks(point: &[Rational], pencil: &GramPencil) -> Result<Vec<bool>> {
    if point.len() != pencil.coords.len() {
        return Err(Error::DimensionMismatch { expected: pencil.coords.len(), got: point.len() });
    }
    pencil
        .blocks
        .iter()
        .map(|b| evaluate_block(&b.entries, &pencil.coords, point).map(|m| is_psd(&m)))
        .collect()
}

pub fn dual_membership(point: &[Rational], pencil: &GramPencil) -> Result<bool> {
    Ok(dual_membership_blocks(point, pencil)?.into_iter().all(|b| b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check_name: String,
    pub status: Status,
    pub witness: serde_json::Value,
}

impl Report {
    pub fn new(name: &str, ok: bool, witness: serde_json::Value) -> Self {
        Report { check_name: name.to_string(), status: Status::from_bool(ok), witness }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn summary(&self) -> String {
        format!("{}: {}", self.check_name, if self.passed() { "pass" } else { "FAIL" })
    }
}

/// Dual point a used for the decic.
pub fn decic_dual_point() -> Vec<Rational> {
    [450228, 75326, 24986, 12656, 8325, 4159, 2803].iter().map(|&x| int(x)).collect()
}

/// Coefficients (1/18, 0, −3, 0, 3, 6, 0) of the decic in the revlex
/// power-sum coordinates of degree 10.
pub fn decic_coefficients() -> Vec<Rational> {
    vec![rat(1, 18), int(0), int(-3), int(0), int(3), int(6), int(0)]
}

pub fn decic() -> SymFn {
    SymFn::from_terms(
        10,
        [
            (Partition::of(&[2, 2, 2, 2, 2]), rat(1, 18)),
            (Partition::of(&[8, 2]), int(3)),
            (Partition::of(&[6, 4]), int(6)),
            (Partition::of(&[6, 2, 2]), int(-3)),
        ],
    )
    .expect("degree 10 terms")
}

/// Random nonnegative rational point with 1 ≤ n ≤ max_n.
pub fn random_nonnegative_point(rng: &mut impl Rng, max_n: usize) -> Vec<Rational> {
    let n = rng.random_range(1..=max_n);
    (0..n)
        .map(|_| {
            if rng.random_bool(0.1) {
                Rational::zero()
            } else {
                rat(rng.random_range(0..=40), rng.random_range(1..=12))
            }
        })
        .collect()
}

/// Inequality chain at x: with X = p_(2^5), Y = p_(6,4), Z = p_(8,2),
/// W = p_(6,2^2) and weights (1/18, 6, 3), returns the slacks of
/// ((X/18 + 6Y + 3Z)/3)³ ≥ XYZ and XYZ ≥ W³.
pub fn decic_chain_slacks(x: &[Rational]) -> (Rational, Rational) {
    let ps = power_sums(x, 10);
    let xx = eval_powersum_product(&Partition::of(&[2, 2, 2, 2, 2]), &ps);
    let yy = eval_powersum_product(&Partition::of(&[6, 4]), &ps);
    let zz = eval_powersum_product(&Partition::of(&[8, 2]), &ps);
    let ww = eval_powersum_product(&Partition::of(&[6, 2, 2]), &ps);
    let mean = (&xx * rat(1, 18) + &yy * int(6) + &zz * int(3)) / int(3);
    let prod = &xx * &yy * &zz;
    let amgm = &mean * &mean * &mean - &prod;
    let lyap = prod - &ww * &ww * &ww;
    (amgm, lyap)
}

pub fn verify_decic() -> Report {
    verify_decic_with(1000, 6, 0x5eed_dec1c)
}

pub fn verify_decic_with(samples: usize, max_n: usize, seed: u64) -> Report {
    let a = decic_dual_point();
    let c = decic_coefficients();
    let pairing: Rational = a.iter().zip(&c).map(|(x, y)| x * y).sum();
    let pairing_ok = pairing == rat(-49, 3);

    let pencil = build_pencil(&PencilKind::B(10));
    let (blocks, member) = match &pencil {
        Ok(p) => match dual_membership_blocks(&a, p) {
            Ok(v) => (v.clone(), v.iter().all(|&b| b)),
            Err(_) => (Vec::new(), false),
        },
        Err(_) => (Vec::new(), false),
    };
    let block_labels: Vec<String> = pencil.as_ref().map(|p| p.blocks.iter().map(|b| b.label.clone()).collect()).unwrap_or_default();

    let f = decic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut chain_failures = 0usize;
    let mut min_value: Option<Rational> = None;
    for _ in 0..samples {
        let x = random_nonnegative_point(&mut rng, max_n);
        let v = evaluate(&f, &FiniteEval::new(x.clone()).expect("n >= 1"));
        if v.is_negative() {
            violations.push(x.iter().map(fmt_rat).collect::<Vec<_>>());
        }
        let (s1, s2) = decic_chain_slacks(&x);
        if s1.is_negative() || s2.is_negative() {
            chain_failures += 1;
        }
        if min_value.as_ref().is_none_or(|m| &v < m) {
            min_value = Some(v);
        }
    }
    let (_, ones_slack) = decic_chain_slacks(&vec![int(1); 5]);
    let ok = pairing_ok && member && violations.is_empty() && chain_failures == 0 && ones_slack.is_zero();
    Report::new(
        "decic",
        ok,
        json!({
            "pairing": fmt_rat(&pairing),
            "pairing_expected": "-49/3",
            "dual_point": a.iter().map(fmt_rat).collect::<Vec<_>>(),
            "blocks_psd": block_labels.iter().zip(&blocks).map(|(l, b)| json!({"block": l, "psd": b})).collect::<Vec<_>>(),
            "samples": samples,
            "violations": violations,
            "chain_failures": chain_failures,
            "lyapunov_slack_at_ones": fmt_rat(&ones_slack),
            "min_sample_value": min_value.map(|m| fmt_rat(&m)),
        }),
    )
}

/// g_x(u) = 4u² − (139/20)xu + 4x⁴ − 5x² + 4.
pub fn quartic_g(x: &Rational, u: &Rational) -> Rational {
    int(4) * u * u - rat(139, 20) * x * u + int(4) * x * x * x * x - int(5) * x * x + int(4)
}

/// 64x⁴ − 80x² − (278√2/5)x + 96 over Q(√2).
pub fn reduction_quartic_sqrt2() -> UniPoly<QSqrt2> {
    UniPoly::new(vec![
        QSqrt2::from_ints(96, 0),
        QSqrt2::new(Rational::zero(), rat(-278, 5)),
        QSqrt2::from_ints(-80, 0),
        QSqrt2::from_ints(0, 0),
        QSqrt2::from_ints(64, 0),
    ])
}

/// 64x⁴ − 80x² − (556/5)x + 128 over ℚ.
pub fn reduction_quartic_rational() -> UniPoly<Rational> {
    UniPoly::new(vec![int(128), rat(-556, 5), int(-80), int(0), int(64)])
}

/// Sign of g_x(n^{−1/2}) = (4/n + 4x⁴ − 5x² + 4) − (139/20)(x/n)·√n.
pub fn quartic_sign_at(x: &Rational, n: u64) -> i32 {
    let nn = Rational::from_integer(BigInt::from(n));
    let a = int(4) / &nn + int(4) * x * x * x * x - int(5) * x * x + int(4);
    let b = -rat(139, 20) * x / &nn;
    sign_a_plus_b_sqrt(&a, &b, &BigInt::from(n))
}

/// Grid x ∈ [−3, 3] with step 1/20, n = 1..=50; returns (checked, first
/// violation).
pub fn quartic_grid_check() -> (usize, Option<(Rational, u64)>) {
    let mut checked = 0;
    for i in -60..=60 {
        let x = rat(i, 20);
        for n in 1..=50u64 {
            checked += 1;
            if quartic_sign_at(&x, n) < 0 {
                return (checked, Some((x, n)));
            }
        }
    }
    (checked, None)
}

type BiPoly = BTreeMap<(u32, u32), QSqrt3>;

fn bi_add(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.entry(*k).or_insert_with(QSqrt3::zero);
        *e = e.clone() + v.clone();
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn bi_mul(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let mut out = BiPoly::new();
    for ((i, j), v) in a {
        for ((k, l), w) in b {
            let e = out.entry((i + k, j + l)).or_insert_with(QSqrt3::zero);
            *e = e.clone() + v.clone() * w.clone();
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn bi_term(c: QSqrt3, x: u32, u: u32) -> BiPoly {
    let mut m = BiPoly::new();
    if !c.is_zero() {
        m.insert((x, u), c);
    }
    m
}

fn bi_eval(p: &BiPoly, x: &QSqrt3, u: &QSqrt3) -> QSqrt3 {
    let mut acc = QSqrt3::zero();
    for ((i, j), c) in p {
        let mut t = c.clone();
        for _ in 0..*i {
            t = t * x.clone();
        }
        for _ in 0..*j {
            t = t * u.clone();
        }
        acc = acc + t;
    }
    acc
}

/// Checks 4u² − 4√3xu + 4x⁴ − 5x² + 4 = (2u − √3x)² + 4(x² − 1)² and that
/// it vanishes at (±1, ±√3/2).
pub fn sqrt3_boundary_identity() -> (bool, bool) {
    let r3 = QSqrt3::root();
    let q = |a: i64| QSqrt3::from_ints(a, 0);
    let lhs = [
        bi_term(q(4), 0, 2),
        bi_term(-(q(4) * r3.clone()), 1, 1),
        bi_term(q(4), 4, 0),
        bi_term(q(-5), 2, 0),
        bi_term(q(4), 0, 0),
    ]
    .iter()
    .fold(BiPoly::new(), |acc, t| bi_add(&acc, t));
    let lin = bi_add(&bi_term(q(2), 0, 1), &bi_term(-r3.clone(), 1, 0));
    let quad = bi_add(&bi_term(q(1), 2, 0), &bi_term(q(-1), 0, 0));
    let rhs = bi_add(&bi_mul(&lin, &lin), &bi_mul(&bi_term(q(4), 0, 0), &bi_mul(&quad, &quad)));
    let identity = lhs == rhs;
    let half_r3 = QSqrt3::new(Rational::zero(), rat(1, 2));
    let zeros = bi_eval(&lhs, &q(1), &half_r3).is_zero() && bi_eval(&lhs, &q(-1), &(-half_r3)).is_zero();
    (identity, zeros)
}

pub fn verify_quartic() -> Report {
    let g = quartic_g(&int(1), &rat(9, 10));
    let witness_ok = g == rat(-3, 200);
    let nn2 = globally_nonnegative(&reduction_quartic_sqrt2());
    let nnq = globally_nonnegative(&reduction_quartic_rational());
    let (identity, zeros) = sqrt3_boundary_identity();
    let (checked, violation) = quartic_grid_check();
    let ok = witness_ok && nn2 && nnq && identity && zeros && violation.is_none();
    Report::new(
        "quartic",
        ok,
        json!({
            "g_1(9/10)": fmt_rat(&g),
            "reduction_quartic_sqrt2_nonnegative": nn2,
            "reduction_quartic_rational_nonnegative": nnq,
            "sqrt3_identity": identity,
            "sqrt3_zeros": zeros,
            "grid_points": checked,
            "grid_violation": violation.map(|(x, n)| json!({"x": fmt_rat(&x), "n": n})),
        }),
    )
}

/// (1, t², st², t⁴, s²t²).
pub fn sos4_ray(t: &Rational, s: &Rational) -> Vec<Rational> {
    let t2 = t * t;
    vec![Rational::one(), t2.clone(), s * &t2, &t2 * &t2, s * s * &t2]
}

/// Default (t, s) samples: t ∈ {0, 1/2, 1, 2, 3}, s on a grid of [−t, t].
pub fn default_sos4_samples() -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for t in [rat(0, 1), rat(1, 2), rat(1, 1), rat(2, 1), rat(3, 1)] {
        for k in -4..=4 {
            out.push((t.clone(), &t * rat(k, 4)));
        }
    }
    out
}

pub fn verify_sos4_extreme_rays(samples: &[(Rational, Rational)]) -> Result<Report> {
    for (t, s) in samples {
        if t.is_negative() || s.abs() > *t {
            return Err(Error::Precondition(format!("sample (t, s) = ({t}, {s}) needs t >= 0 and |s| <= t")));
        }
    }
    let pencil = build_pencil(&PencilKind::S4)?;
    let mut failures = Vec::new();
    for (t, s) in samples {
        let pt = sos4_ray(t, s);
        if !dual_membership(&pt, &pencil)? {
            failures.push(json!({"t": fmt_rat(t), "s": fmt_rat(s)}));
        }
    }
    let isolated: Vec<Vec<Rational>> = vec![
        [0, 0, 0, 1, 0].iter().map(|&x| int(x)).collect(),
        [0, 0, 0, 1, 1].iter().map(|&x| int(x)).collect(),
    ];
    let mut isolated_ok = Vec::new();
    for p in &isolated {
        isolated_ok.push(dual_membership(p, &pencil)?);
    }
    let ok = failures.is_empty() && isolated_ok.iter().all(|&b| b);
    Ok(Report::new(
        "sos4-rays",
        ok,
        json!({
            "samples": samples.len(),
            "failures": failures,
            "isolated_rays_psd": isolated_ok,
        }),
    ))
}
