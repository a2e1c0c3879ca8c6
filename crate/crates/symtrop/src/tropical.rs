//! Tropical convexity on rational cones: max-closure, tropical conical
//! hulls, the tropicalized Vandermonde cell and the T^(k) hierarchy.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::partitions::{enum_even_partitions, enum_partitions, fuse, fuse_power, superdominates_unchecked, Partition};
use crate::polyhedra::{cone_equal, intersect_all, minkowski_sum, primitive, Cone, IntVec};

fn unit(dim: usize, i: usize, value: i64) -> IntVec {
    (0..dim).map(|j| BigInt::from(if i == j { value } else { 0 })).collect()
}

/// 𝒬_i = {x : x_i ≤ 0, x_j ≥ 0 for j ≠ i}.
pub fn orthant_q(dim: usize, i: usize) -> Cone {
    let rays: Vec<IntVec> = (0..dim).map(|j| unit(dim, j, if j == i { -1 } else { 1 })).collect();
    Cone::from_v_int(dim, &rays, &[]).expect("dimensions agree")
}

/// Coordinatewise maximum a ⊕ b.
pub fn trop_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x.max(y).clone()).collect()
}

/// λ ⊙ a: add the constant λ to every coordinate.
pub fn trop_scale(l: &Rational, a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| x + l).collect()
}

fn in_lineality(m: &Cone, v: &[Rational]) -> bool {
    let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
    m.contains_point(v) && m.contains_point(&neg)
}

/// ∩_i (M + 𝒬_i), the max-closure of a cone with a strictly positive
/// lineality vector v.
pub fn max_closure(m: &Cone, v: &[Rational]) -> Result<Cone> {
    if v.len() != m.dim() {
        return Err(Error::DimensionMismatch { expected: m.dim(), got: v.len() });
    }
    if !v.iter().all(|x| x.is_positive()) {
        return Err(Error::Precondition("max_closure needs a strictly positive vector".into()));
    }
    if !in_lineality(m, v) {
        return Err(Error::Precondition("vector is not in the lineality space".into()));
    }
    let parts: Result<Vec<Cone>> = (0..m.dim()).map(|i| minkowski_sum(m, &orthant_q(m.dim(), i))).collect();
    intersect_all(&parts?)
}

/// tcone(M) = ∩_j (M + ℝ·1 + 𝒬_j).
pub fn tcone(m: &Cone) -> Result<Cone> {
    let dim = m.dim();
    let ones: IntVec = vec![BigInt::from(1); dim];
    let mut lin = m.lineality_space().to_vec();
    lin.push(ones);
    let shifted = Cone::from_v_int(dim, m.extreme_rays(), &lin)?;
    let v: Vec<Rational> = vec![Rational::from_integer(BigInt::from(1)); dim];
    max_closure(&shifted, &v)
}

#[derive(Clone, Debug)]
pub struct DoubleHull {
    pub cone: Cone,
    /// Number of max-closure rounds, including the one confirming the
    /// fixpoint.
    pub iterations: usize,
}

fn positive_lineality_vector(s: &Cone) -> Option<Vec<Rational>> {
    let lin = s.lineality_space();
    let mut cands: Vec<IntVec> = Vec::new();
    for l in lin {
        cands.push(l.clone());
        cands.push(l.iter().map(|x| -x).collect());
    }
    if !lin.is_empty() {
        let sum: IntVec = (0..s.dim()).map(|j| lin.iter().map(|l| l[j].clone()).sum()).collect();
        cands.push(sum.iter().map(|x| -x).collect());
        cands.push(sum);
    }
    cands
        .into_iter()
        .find(|c| c.iter().all(|x| x.is_positive()))
        .map(|c| c.into_iter().map(Rational::from_integer).collect())
}

/// Smallest closed, convex, max-closed cone containing s: alternate the
/// conic hull (a no-op on cones) with max-closure until nothing changes.
pub fn double_hull(s: &Cone) -> Result<DoubleHull> {
    let v = positive_lineality_vector(s)
        .ok_or_else(|| Error::Precondition("no strictly positive vector found in the lineality space".into()))?;
    let mut cur = s.clone();
    let mut iterations = 0;
    loop {
        let next = max_closure(&cur, &v)?;
        iterations += 1;
        if cone_equal(&next, &cur) {
            return Ok(DoubleHull { cone: next, iterations });
        }
        cur = next;
    }
}

/// trop(N_d) from its facets y_k + y_{k+2} ≥ 2y_{k+1} (k ≤ d−2) and
/// d·y_{d−1} ≥ (d−1)·y_d.
pub fn trop_vandermonde(d: usize) -> Result<Cone> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("trop(N_d) needs d >= 2, got {d}")));
    }
    Cone::from_h_int(d, &trop_vandermonde_rows(d), &[])
}

pub fn trop_vandermonde_rows(d: usize) -> Vec<IntVec> {
    let mut rows = Vec::new();
    for k in 0..d.saturating_sub(2) {
        let mut r = vec![BigInt::zero(); d];
        r[k] = BigInt::from(1);
        r[k + 1] = BigInt::from(-2);
        r[k + 2] = BigInt::from(1);
        rows.push(r);
    }
    let mut r = vec![BigInt::zero(); d];
    r[d - 2] = BigInt::from(d as i64);
    r[d - 1] = BigInt::from(-(d as i64 - 1));
    rows.push(r);
    rows
}

/// Generators of trop(N_d): lineality (1,…,d); rays (1,0,…,0),
/// (2,1,0,…), …, (d−2,…,1,0,0) and (1,…,1).
pub fn trop_vandermonde_generators(d: usize) -> (Vec<IntVec>, IntVec) {
    let mut rays = Vec::new();
    for top in 1..=d.saturating_sub(2) {
        let r: IntVec = (0..d).map(|i| BigInt::from((top as i64 - i as i64).max(0))).collect();
        rays.push(r);
    }
    rays.push(vec![BigInt::from(1); d]);
    let lin: IntVec = (1..=d as i64).map(BigInt::from).collect();
    (rays, lin)
}

/// The cone generated by 1, α and −α with α = (1,…,d).
pub fn vandermonde_seed(d: usize) -> Cone {
    let alpha: IntVec = (1..=d as i64).map(BigInt::from).collect();
    Cone::from_v_int(d, &[vec![BigInt::from(1); d]], &[alpha]).expect("dimensions agree")
}

/// Tropicalized monomial map ν̃_d: ℝ^d → ℝ^{π(d)}, one row per λ ⊢ d
/// (revlex), row λ = (λ(1), …, λ(d)).
#[derive(Clone, Debug, Serialize)]
pub struct TropMap {
    pub d: usize,
    pub labels: Vec<Partition>,
    pub rows: Vec<Vec<u32>>,
}

impl TropMap {
    pub fn new(d: usize) -> Self {
        let labels = enum_partitions(d as u32);
        let rows = labels.iter().map(|l| l.mult_vector(d)).collect();
        TropMap { d, labels, rows }
    }

    /// Target coordinates as even partitions of 2d.
    pub fn even_labels(&self) -> Vec<Partition> {
        self.labels.iter().map(Partition::doubled).collect()
    }

    pub fn apply(&self, y: &[BigInt]) -> IntVec {
        self.rows
            .iter()
            .map(|r| r.iter().zip(y).map(|(&a, b)| BigInt::from(a) * b).sum())
            .collect()
    }

    pub fn image(&self, c: &Cone) -> Result<Cone> {
        if c.dim() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: c.dim() });
        }
        let rays: Vec<IntVec> = c.extreme_rays().iter().map(|r| self.apply(r)).collect();
        let lin: Vec<IntVec> = c.lineality_space().iter().map(|l| self.apply(l)).collect();
        Cone::from_v_int(self.labels.len(), &rays, &lin)
    }
}

/// Coordinates of ℝ^{π(d)} as even partitions of 2d in revlex order.
pub fn even_coords(d: usize) -> Vec<Partition> {
    enum_even_partitions(2 * d as u32)
}

/// tcone(ν̃_d(trop(N_d))).
pub fn trop_bp_dual(d: usize) -> Result<Cone> {
    let n = trop_vandermonde(d)?;
    tcone(&TropMap::new(d).image(&n)?)
}

/// Half-space normals y_{λ¹}+…+y_{λᵏ} − k·y_μ over all multisets of k
/// even partitions of 2d whose fusion superdominates μ^∘k; deduplicated by
/// primitive normal.
pub fn t_k_rows(d: usize, k: usize) -> Vec<IntVec> {
    let coords = even_coords(d);
    let n = coords.len();
    let powers: Vec<Partition> = coords.iter().map(|m| fuse_power(m, k)).collect();
    let mut rows: BTreeSet<IntVec> = BTreeSet::new();
    let mut idx = vec![0usize; k];
    loop {
        let chosen: Vec<Partition> = idx.iter().map(|&i| coords[i].clone()).collect();
        let f = fuse(&chosen);
        for (j, pw) in powers.iter().enumerate() {
            if superdominates_unchecked(&f, pw) {
                let mut row = vec![BigInt::zero(); n];
                for &i in &idx {
                    row[i] += 1;
                }
                row[j] -= BigInt::from(k as i64);
                if row.iter().any(|x| !x.is_zero()) {
                    rows.insert(primitive(&row));
                }
            }
        }
        // next non-decreasing index tuple
        let mut p = k;
        loop {
            if p == 0 {
                return rows.into_iter().collect();
            }
            p -= 1;
            if idx[p] + 1 < n {
                idx[p] += 1;
                for q in p + 1..k {
                    idx[q] = idx[p];
                }
                break;
            }
        }
    }
}

pub fn t_k_cone(d: usize, k: usize) -> Result<Cone> {
    if d < 2 || k < 1 {
        return Err(Error::InvalidArgument(format!("T^(k)_2d needs d >= 2 and k >= 1, got d={d}, k={k}")));
    }
    Cone::from_h_int(even_coords(d).len(), &t_k_rows(d, k), &[])
}

#[derive(Clone, Debug, Serialize)]
pub struct Tau {
    pub d: usize,
    pub k_max: usize,
    /// Smallest k ≤ k_max with T^(k) = trop(BP*_2d), if any.
    pub tau: Option<usize>,
    pub certified: bool,
    /// (k, T^(k) equals trop(BP*)) for each k tried.
    pub trace: Vec<(usize, bool)>,
}

/// Stabilization index, decided by equality with trop_bp_dual(d).
pub fn stabilization_tau(d: usize, k_max: usize) -> Result<Tau> {
    if !(2..=5).contains(&d) {
        return Err(Error::Unsupported(format!("stabilization is computed for 2 <= d <= 5, got {d}")));
    }
    let bp = trop_bp_dual(d)?;
    let mut trace = Vec::new();
    for k in 1..=k_max {
        let t = t_k_cone(d, k)?;
        let eq = cone_equal(&t, &bp);
        trace.push((k, eq));
        if eq {
            return Ok(Tau { d, k_max, tau: Some(k), certified: true, trace });
        }
    }
    Ok(Tau { d, k_max, tau: None, certified: false, trace })
}

/// "y[2,2,2] + y[6] >= 2*y[4,2]" for a normal with one negative entry;
/// general normals put all negative terms on the right.
pub fn facet_string(normal: &[BigInt], labels: &[Partition]) -> String {
    let side = |positive: bool| -> String {
        let terms: Vec<String> = normal
            .iter()
            .zip(labels)
            .filter(|(c, _)| if positive { c.is_positive() } else { c.is_negative() })
            .map(|(c, l)| {
                let a = c.abs();
                let y = format!("y[{}]", l.to_list_string());
                if a == BigInt::from(1) {
                    y
                } else {
                    format!("{a}*{y}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    };
    format!("{} >= {}", side(true), side(false))
}

/// Builds an integer normal Σ lhs − Σ rhs from (coefficient, partition)
/// terms over the given labels.
pub fn normal_from_terms(labels: &[Partition], lhs: &[(i64, Partition)], rhs: &[(i64, Partition)]) -> IntVec {
    let mut row = vec![BigInt::zero(); labels.len()];
    for (c, l) in lhs {
        let i = labels.iter().position(|x| x == l).expect("label present");
        row[i] += BigInt::from(*c);
    }
    for (c, l) in rhs {
        let i = labels.iter().position(|x| x == l).expect("label present");
        row[i] -= BigInt::from(*c);
    }
    primitive(&row)
}

/// Inverse of [`facet_string`]: "y[2^3] + y[6] >= 2*y[4,2]" to a primitive
/// normal over `labels`.
pub fn parse_inequality(s: &str, labels: &[Partition]) -> Result<IntVec> {
    let (lhs, rhs) = s
        .split_once(">=")
        .ok_or_else(|| Error::Parse(format!("inequality {s:?} has no '>='")))?;
    let mut row = vec![BigInt::zero(); labels.len()];
    for (side, sign) in [(lhs, 1i64), (rhs, -1i64)] {
        for term in side.split('+') {
            let term = term.trim();
            let (coef, var) = match term.split_once('*') {
                Some((c, v)) => (
                    c.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?,
                    v.trim(),
                ),
                None => (1, term),
            };
            let inner = var
                .strip_prefix("y[")
                .and_then(|v| v.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad variable {var:?}")))?;
            let p = Partition::parse(inner)?;
            let idx = labels
                .iter()
                .position(|l| *l == p)
                .ok_or_else(|| Error::Parse(format!("{p} is not a coordinate")))?;
            row[idx] += BigInt::from(sign * coef);
        }
    }
    Ok(primitive(&row))
}

/// Facet normals as a set, for literal comparisons.
pub fn facet_set(c: &Cone) -> BTreeSet<IntVec> {
    c.facets().iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vandermonde_three() {
        let c = trop_vandermonde(3).unwrap();
        assert_eq!(c.facets().len(), 2);
        assert_eq!(c.lineality_space().len(), 1);
        assert_eq!(c.extreme_rays().len(), 2);
    }

    #[test]
    fn t1_six_is_chain() {
        let c = t_k_cone(3, 1).unwrap();
        let labels = even_coords(3);
        let mut got: Vec<String> = c.facets().iter().map(|f| facet_string(f, &labels)).collect();
        got.sort();
        assert_eq!(got, ["y[2,2,2] >= y[4,2]", "y[4,2] >= y[6]"]);
    }
}
