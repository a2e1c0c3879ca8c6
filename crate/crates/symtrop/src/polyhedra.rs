//! Rational polyhedral cones with both representations, converted by the
//! double description method in exact integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{denominators_lcm, fmt_rat, Rational};

pub type IntVec = Vec<BigInt>;

/// Cone {x : A x ≥ 0, E x = 0} = cone(rays) + span(lineality).
///
/// Both representations are always present and canonical: facet normals
/// and rays are primitive integer vectors, reduced modulo the equation and
/// lineality spaces respectively, and sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    inequalities: Vec<IntVec>,
    equations: Vec<IntVec>,
    rays: Vec<IntVec>,
    lineality: Vec<IntVec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    HtoV,
    VtoH,
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_rat(a: &[BigInt], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| Rational::from_integer(x.clone()) * y).sum()
}

/// Divides out the gcd of the entries (zero stays zero).
pub fn primitive(v: &[BigInt]) -> IntVec {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction.
pub fn rat_to_primitive(v: &[Rational]) -> IntVec {
    let l = denominators_lcm(v.iter());
    let ints: IntVec = v.iter().map(|r| (r * Rational::from_integer(l.clone())).to_integer()).collect();
    primitive(&ints)
}

pub fn int_to_rat(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}

fn bitset_and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bitset_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn set_bit(a: &mut [u64], i: usize) {
    a[i / 64] |= 1 << (i % 64);
}

struct Generators {
    rays: Vec<IntVec>,
    lineality: Vec<IntVec>,
}

/// Double description: generators of {x : ineq·x ≥ 0, eq·x = 0}.
/// Rows are deduplicated and processed equations first, then inequalities
/// in lexicographic order; adjacency uses the combinatorial test.
fn double_description(dim: usize, ineq: &[IntVec], eq: &[IntVec]) -> Generators {
    let mut eqs: Vec<IntVec> = eq.iter().map(|r| primitive(r)).filter(|r| !is_zero_vec(r)).collect();
    eqs.sort();
    eqs.dedup();
    let mut ins: Vec<IntVec> = ineq.iter().map(|r| primitive(r)).filter(|r| !is_zero_vec(r)).collect();
    ins.sort();
    ins.dedup();
    let rows: Vec<(IntVec, bool)> = eqs.into_iter().map(|r| (r, true)).chain(ins.into_iter().map(|r| (r, false))).collect();
    let words = rows.len().div_ceil(64).max(1);

    let mut lin: Vec<IntVec> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut rays: Vec<(IntVec, Vec<u64>)> = Vec::new();

    for (r, (a, is_eq)) in rows.iter().enumerate() {
        if let Some(pos) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lin.remove(pos);
            let mut s = dot(a, &l0);
            if s.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                s = -s;
            }
            for l in lin.iter_mut() {
                let t = dot(a, l);
                if !t.is_zero() {
                    let v: IntVec = l.iter().zip(&l0).map(|(x, y)| &s * x - &t * y).collect();
                    *l = primitive(&v);
                }
            }
            for (ray, z) in rays.iter_mut() {
                let t = dot(a, ray);
                if !t.is_zero() {
                    let v: IntVec = ray.iter().zip(&l0).map(|(x, y)| &s * x - &t * y).collect();
                    *ray = primitive(&v);
                }
                set_bit(z, r);
            }
            if !is_eq {
                let mut z = vec![0u64; words];
                for prev in 0..r {
                    set_bit(&mut z, prev);
                }
                rays.push((primitive(&l0), z));
            }
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|(ray, _)| dot(a, ray)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<(IntVec, Vec<u64>)> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = bitset_and(&rays[p].1, &rays[n].1);
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, (_, z))| k != p && k != n && bitset_subset(&common, z));
                if blocked {
                    continue;
                }
                let vp = &vals[p];
                let vn = -&vals[n];
                let v: IntVec = rays[n].0.iter().zip(&rays[p].0).map(|(x, y)| vp * x + &vn * y).collect();
                let mut z = common;
                set_bit(&mut z, r);
                next.push((primitive(&v), z));
            }
        }
        let mut kept: Vec<(IntVec, Vec<u64>)> = Vec::new();
        for (i, (ray, z)) in rays.into_iter().enumerate() {
            if vals[i].is_zero() {
                let mut z = z;
                set_bit(&mut z, r);
                kept.push((ray, z));
            } else if vals[i].is_positive() && !is_eq {
                kept.push((ray, z));
            }
        }
        kept.extend(next);
        rays = kept;
    }

    Generators { rays: rays.into_iter().map(|(v, _)| v).collect(), lineality: lin }
}

/// Reduced row echelon basis of span(vs) as primitive integer rows, plus
/// the pivot columns.
fn rref_basis(dim: usize, vs: &[IntVec]) -> (Vec<IntVec>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = vs.iter().map(|v| int_to_rat(v)).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..dim {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Rational::one() / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let src = m[row].clone();
                for (x, y) in m[i].iter_mut().zip(src.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    (m.iter().map(|r| rat_to_primitive(r)).collect(), pivots)
}

/// Zeroes the pivot coordinates of v using the echelon basis.
fn reduce_modulo(v: &[BigInt], basis: &[IntVec], pivots: &[usize]) -> IntVec {
    let mut out = v.to_vec();
    for (b, &c) in basis.iter().zip(pivots) {
        if out[c].is_zero() {
            continue;
        }
        let f = out[c].clone();
        let g = b[c].clone();
        out = out.iter().zip(b).map(|(x, y)| x * &g - &f * y).collect();
        if g.is_negative() {
            out = out.iter().map(|x| -x).collect();
        }
    }
    primitive(&out)
}

fn canonical_pair(dim: usize, gens: &[IntVec], space: &[IntVec]) -> (Vec<IntVec>, Vec<IntVec>) {
    let (basis, pivots) = rref_basis(dim, space);
    let mut g: Vec<IntVec> = gens
        .iter()
        .map(|v| reduce_modulo(v, &basis, &pivots))
        .filter(|v| !is_zero_vec(v))
        .collect();
    g.sort();
    g.dedup();
    (g, basis)
}

impl Cone {
    fn build(dim: usize, ineq: Vec<IntVec>, eq: Vec<IntVec>, rays: Vec<IntVec>, lin: Vec<IntVec>) -> Self {
        let (inequalities, equations) = canonical_pair(dim, &ineq, &eq);
        let (rays, lineality) = canonical_pair(dim, &rays, &lin);
        Cone { dim, inequalities, equations, rays, lineality }
    }

    fn check_rows(dim: usize, rows: &[IntVec]) -> Result<()> {
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: r.len() });
            }
        }
        Ok(())
    }

    /// {x : ineq·x ≥ 0, eq·x = 0} from integer rows.
    pub fn from_h_int(dim: usize, ineq: &[IntVec], eq: &[IntVec]) -> Result<Self> {
        Self::check_rows(dim, ineq)?;
        Self::check_rows(dim, eq)?;
        let v = double_description(dim, ineq, eq);
        let h = double_description(dim, &v.rays, &v.lineality);
        Ok(Self::build(dim, h.rays, h.lineality, v.rays, v.lineality))
    }

    /// cone(rays) + span(lineality) from integer generators.
    pub fn from_v_int(dim: usize, rays: &[IntVec], lineality: &[IntVec]) -> Result<Self> {
        Self::check_rows(dim, rays)?;
        Self::check_rows(dim, lineality)?;
        let h = double_description(dim, rays, lineality);
        let v = double_description(dim, &h.rays, &h.lineality);
        Ok(Self::build(dim, h.rays, h.lineality, v.rays, v.lineality))
    }

    pub fn from_h(dim: usize, ineq: &[Vec<Rational>], eq: &[Vec<Rational>]) -> Result<Self> {
        let a: Vec<IntVec> = ineq.iter().map(|r| rat_to_primitive(r)).collect();
        let e: Vec<IntVec> = eq.iter().map(|r| rat_to_primitive(r)).collect();
        Self::from_h_int(dim, &a, &e)
    }

    pub fn from_v(dim: usize, rays: &[Vec<Rational>], lineality: &[Vec<Rational>]) -> Result<Self> {
        let r: Vec<IntVec> = rays.iter().map(|v| rat_to_primitive(v)).collect();
        let l: Vec<IntVec> = lineality.iter().map(|v| rat_to_primitive(v)).collect();
        Self::from_v_int(dim, &r, &l)
    }

    /// The whole space ℝ^dim.
    pub fn full(dim: usize) -> Self {
        Self::from_h_int(dim, &[], &[]).expect("no rows")
    }

    /// The nonnegative orthant.
    pub fn orthant(dim: usize) -> Self {
        let rows: Vec<IntVec> = (0..dim)
            .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i32)).collect())
            .collect();
        Self::from_h_int(dim, &rows, &[]).expect("square rows")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Irredundant facet normals a with a·x ≥ 0.
    pub fn facets(&self) -> &[IntVec] {
        &self.inequalities
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    pub fn extreme_rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality_space(&self) -> &[IntVec] {
        &self.lineality
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.inequalities.iter().all(|a| !dot_rat(a, x).is_negative())
            && self.equations.iter().all(|e| dot_rat(e, x).is_zero())
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        x.len() == self.dim
            && self.inequalities.iter().all(|a| !dot(a, x).is_negative())
            && self.equations.iter().all(|e| dot(e, x).is_zero())
    }

    /// Every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Cone) -> bool {
        if self.dim != other.dim {
            return false;
        }
        self.rays.iter().all(|r| other.contains_int(r))
            && self.lineality.iter().all(|l| {
                let m: IntVec = l.iter().map(|x| -x).collect();
                other.contains_int(l) && other.contains_int(&m)
            })
    }

    pub fn dual(&self) -> Cone {
        Cone {
            dim: self.dim,
            inequalities: self.rays.clone(),
            equations: self.lineality.clone(),
            rays: self.inequalities.clone(),
            lineality: self.equations.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let conv = |rows: &[IntVec]| -> serde_json::Value {
            rows.iter()
                .map(|r| r.iter().map(|x| fmt_rat(&Rational::from_integer(x.clone()))).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .into()
        };
        serde_json::json!({
            "dim": self.dim,
            "inequalities": conv(&self.inequalities),
            "equations": conv(&self.equations),
            "rays": conv(&self.rays),
            "lineality": conv(&self.lineality),
        })
    }

    /// Reduces a vector modulo the lineality space, as stored rays are.
    pub fn normalize_ray(&self, v: &[BigInt]) -> IntVec {
        let (basis, pivots) = rref_basis(self.dim, &self.lineality);
        reduce_modulo(v, &basis, &pivots)
    }

    /// Reduces a normal modulo the equation space, as stored facets are.
    pub fn normalize_facet(&self, v: &[BigInt]) -> IntVec {
        let (basis, pivots) = rref_basis(self.dim, &self.equations);
        reduce_modulo(v, &basis, &pivots)
    }
}

/// Recomputes the requested side from the other one.
pub fn dd_convert(c: &Cone, direction: Direction) -> Cone {
    match direction {
        Direction::HtoV => Cone::from_h_int(c.dim, &c.inequalities, &c.equations),
        Direction::VtoH => Cone::from_v_int(c.dim, &c.rays, &c.lineality),
    }
    .expect("dimensions already checked")
}

fn check_dims(a: &Cone, b: &Cone) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, got: b.dim });
    }
    Ok(())
}

pub fn dual(c: &Cone) -> Cone {
    c.dual()
}

pub fn intersect(a: &Cone, b: &Cone) -> Result<Cone> {
    check_dims(a, b)?;
    let ineq: Vec<IntVec> = a.inequalities.iter().chain(&b.inequalities).cloned().collect();
    let eq: Vec<IntVec> = a.equations.iter().chain(&b.equations).cloned().collect();
    Cone::from_h_int(a.dim, &ineq, &eq)
}

pub fn intersect_all(cones: &[Cone]) -> Result<Cone> {
    let first = cones.first().ok_or_else(|| Error::InvalidArgument("empty intersection".into()))?;
    let mut ineq = Vec::new();
    let mut eq = Vec::new();
    for c in cones {
        check_dims(first, c)?;
        ineq.extend(c.inequalities.iter().cloned());
        eq.extend(c.equations.iter().cloned());
    }
    Cone::from_h_int(first.dim, &ineq, &eq)
}

pub fn minkowski_sum(a: &Cone, b: &Cone) -> Result<Cone> {
    check_dims(a, b)?;
    let rays: Vec<IntVec> = a.rays.iter().chain(&b.rays).cloned().collect();
    let lin: Vec<IntVec> = a.lineality.iter().chain(&b.lineality).cloned().collect();
    Cone::from_v_int(a.dim, &rays, &lin)
}

pub fn contains_point(c: &Cone, x: &[Rational]) -> bool {
    c.contains_point(x)
}

/// Equality by mutual containment of generators.
pub fn cone_equal(a: &Cone, b: &Cone) -> bool {
    a.is_subset_of(b) && b.is_subset_of(a)
}

/// Rank of a list of integer vectors.
pub fn rank(dim: usize, vs: &[IntVec]) -> usize {
    rref_basis(dim, vs).0.len()
}
