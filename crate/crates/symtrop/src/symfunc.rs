//! Symmetric functions in the power-sum basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{factorial, fmt_rat, int, Rational};
use crate::partitions::{fuse2, revlex_cmp, superdominates, Partition};

/// Homogeneous symmetric function Σ c_λ 𝔭_λ with |λ| = degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymFn {
    degree: u32,
    coeffs: BTreeMap<Partition, Rational>,
}

impl SymFn {
    pub fn zero(degree: u32) -> Self {
        SymFn { degree, coeffs: BTreeMap::new() }
    }

    /// The basis element 𝔭_λ.
    pub fn p(l: &Partition) -> Self {
        Self::term(l, Rational::one())
    }

    pub fn term(l: &Partition, c: Rational) -> Self {
        let mut f = Self::zero(l.size());
        if !c.is_zero() {
            f.coeffs.insert(l.clone(), c);
        }
        f
    }

    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Partition, Rational)>) -> Result<Self> {
        let mut f = Self::zero(degree);
        for (l, c) in terms {
            if l.size() != degree {
                return Err(Error::InvalidArgument(format!("term {l} has size {} in a degree {degree} function", l.size())));
            }
            f.add_term(l, c);
        }
        Ok(f)
    }

    fn add_term(&mut self, l: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(l.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&l);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, l: &Partition) -> Rational {
        self.coeffs.get(l).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Rational> {
        &self.coeffs
    }

    /// Terms sorted largest-first in revlex.
    pub fn terms_revlex(&self) -> Vec<(Partition, Rational)> {
        let mut v: Vec<_> = self.coeffs.iter().map(|(k, c)| (k.clone(), c.clone())).collect();
        v.sort_by(|a, b| revlex_cmp(&b.0, &a.0));
        v
    }

    pub fn support(&self) -> Vec<Partition> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn positive_support(&self) -> Vec<Partition> {
        self.coeffs.iter().filter(|(_, c)| c.is_positive()).map(|(k, _)| k.clone()).collect()
    }

    pub fn negative_support(&self) -> Vec<Partition> {
        self.coeffs.iter().filter(|(_, c)| c.is_negative()).map(|(k, _)| k.clone()).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        if self.is_zero() {
            out.degree = o.degree;
        }
        for (k, c) in &o.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        SymFn {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Product; on basis elements 𝔭_λ·𝔭_μ = 𝔭_{λμ}.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.degree + o.degree);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &o.coeffs {
                out.add_term(fuse2(a, b), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::p(&Partition::empty());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Dual pairing Σ c_λ y_λ with a point whose coordinates are labelled
    /// by `coords`.
    pub fn pair(&self, coords: &[Partition], point: &[Rational]) -> Result<Rational> {
        if coords.len() != point.len() {
            return Err(Error::DimensionMismatch { expected: coords.len(), got: point.len() });
        }
        let mut acc = Rational::zero();
        for (l, c) in &self.coeffs {
            let idx = coords
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::InvalidArgument(format!("no coordinate labelled {l}")))?;
            acc += c * &point[idx];
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms_revlex()
            .into_iter()
            .map(|(l, c)| serde_json::json!({"partition": l, "coeff": fmt_rat(&c)}))
            .collect();
        serde_json::json!({"degree": self.degree, "terms": terms})
    }
}

impl Serialize for SymFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for SymFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms_revlex();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "p{l}")?;
        }
        Ok(())
    }
}

fn mult_factorial(l: &Partition) -> BigInt {
    l.multiplicities().fold(BigInt::one(), |acc, m| acc * factorial(m))
}

/// Calls `f` with the block sums of every set partition of `parts`.
fn for_each_merge(parts: &[u32], f: &mut impl FnMut(&[u32])) {
    fn rec(parts: &[u32], i: usize, blocks: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if i == parts.len() {
            f(blocks);
            return;
        }
        for b in 0..blocks.len() {
            blocks[b] += parts[i];
            rec(parts, i + 1, blocks, f);
            blocks[b] -= parts[i];
        }
        blocks.push(parts[i]);
        rec(parts, i + 1, blocks, f);
        blocks.pop();
    }
    rec(parts, 0, &mut Vec::new(), f);
}

/// Expansion p_λ = Σ_ν c_ν m_ν. Each set partition of the parts of λ
/// contributes ∏ ν(k)! to the merged partition ν of block sums.
pub fn powersum_in_monomials(l: &Partition) -> BTreeMap<Partition, Rational> {
    let mut counts: HashMap<Vec<u32>, BigInt> = HashMap::new();
    for_each_merge(l.parts(), &mut |blocks| {
        let mut v = blocks.to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        *counts.entry(v).or_insert_with(BigInt::zero) += 1;
    });
    counts
        .into_iter()
        .map(|(v, c)| {
            let nu = Partition::new(v).expect("positive block sums");
            let w = mult_factorial(&nu) * c;
            (nu, Rational::from_integer(w))
        })
        .collect()
}

/// Memoized triangular inversion of the p → m transition.
#[derive(Default)]
pub struct Transition {
    p_in_m: HashMap<Partition, BTreeMap<Partition, Rational>>,
    m_in_p: HashMap<Partition, SymFn>,
}

impl Transition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn powersum_in_monomials(&mut self, l: &Partition) -> BTreeMap<Partition, Rational> {
        if let Some(v) = self.p_in_m.get(l) {
            return v.clone();
        }
        let v = powersum_in_monomials(l);
        self.p_in_m.insert(l.clone(), v.clone());
        v
    }

    /// 𝔪_λ in power sums: m_λ = (p_λ − Σ_{ν coarser} c_ν m_ν) / c_λ.
    pub fn monomial_to_powersum(&mut self, l: &Partition) -> SymFn {
        if let Some(f) = self.m_in_p.get(l) {
            return f.clone();
        }
        let expansion = self.powersum_in_monomials(l);
        let mut acc = SymFn::p(l);
        let mut lead = Rational::one();
        for (nu, c) in &expansion {
            if nu == l {
                lead = c.clone();
            } else {
                let m_nu = self.monomial_to_powersum(nu);
                acc = acc.sub(&m_nu.scale(c));
            }
        }
        let out = acc.scale(&(Rational::one() / lead));
        self.m_in_p.insert(l.clone(), out.clone());
        out
    }
}

pub fn monomial_to_powersum(l: &Partition) -> SymFn {
    Transition::new().monomial_to_powersum(l)
}

/// Coefficients of f in the monomial basis.
pub fn powersum_to_monomial(f: &SymFn) -> BTreeMap<Partition, Rational> {
    let mut out: BTreeMap<Partition, Rational> = BTreeMap::new();
    for (l, c) in f.coeffs() {
        for (nu, e) in powersum_in_monomials(l) {
            *out.entry(nu).or_insert_with(Rational::zero) += c * e;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Converts a combination Σ c_λ m_λ back to power sums.
pub fn monomials_to_powersum(degree: u32, m: &BTreeMap<Partition, Rational>) -> SymFn {
    let mut t = Transition::new();
    let mut out = SymFn::zero(degree);
    for (l, c) in m {
        out = out.add(&t.monomial_to_powersum(l).scale(c));
    }
    out
}

/// p_k in terms of elementary symmetric functions, k = 1..d. The returned
/// SymFn values are read in the e-basis: the key λ stands for e_λ.
pub fn newton_p_from_e(d: u32) -> Result<Vec<SymFn>> {
    if !(1..=4).contains(&d) {
        return Err(Error::Unsupported(format!("Newton identities are provided for 1 <= d <= 4, got {d}")));
    }
    let e = |k: u32| SymFn::p(&Partition::of(&[k]));
    let mut ps: Vec<SymFn> = Vec::new();
    for k in 1..=d {
        // p_k = Σ_{i<k} (−1)^{i−1} e_i p_{k−i} + (−1)^{k−1} k e_k
        let mut acc = e(k).scale(&int(if k % 2 == 1 { k as i64 } else { -(k as i64) }));
        for i in 1..k {
            let sign = if i % 2 == 1 { int(1) } else { int(-1) };
            acc = acc.add(&e(i).mul(&ps[(k - i - 1) as usize]).scale(&sign));
        }
        ps.push(acc);
    }
    Ok(ps)
}

/// e_k in the power-sum basis, k = 1..d.
pub fn newton_e_from_p(d: u32) -> Result<Vec<SymFn>> {
    if !(1..=4).contains(&d) {
        return Err(Error::Unsupported(format!("Newton identities are provided for 1 <= d <= 4, got {d}")));
    }
    let p = |k: u32| SymFn::p(&Partition::of(&[k]));
    let mut es: Vec<SymFn> = vec![SymFn::p(&Partition::empty())];
    for k in 1..=d {
        // k e_k = Σ_{i=1..k} (−1)^{i−1} e_{k−i} p_i
        let mut acc = SymFn::zero(k);
        for i in 1..=k {
            let sign = if i % 2 == 1 { int(1) } else { int(-1) };
            acc = acc.add(&es[(k - i) as usize].mul(&p(i)).scale(&sign));
        }
        es.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(k))));
    }
    es.remove(0);
    Ok(es)
}

/// A point of ℝⁿ.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteEval {
    n: usize,
    point: Vec<Rational>,
}

impl FiniteEval {
    pub fn new(point: Vec<Rational>) -> Result<Self> {
        if point.is_empty() {
            return Err(Error::InvalidArgument("evaluation point needs n >= 1".into()));
        }
        Ok(FiniteEval { n: point.len(), point })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn point(&self) -> &[Rational] {
        &self.point
    }
}

/// (p_1(x), …, p_kmax(x)).
pub fn power_sums(x: &[Rational], kmax: u32) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); kmax as usize];
    for xi in x {
        let mut pw = Rational::one();
        for o in out.iter_mut() {
            pw *= xi;
            *o += &pw;
        }
    }
    out
}

pub fn eval_powersum_product(l: &Partition, ps: &[Rational]) -> Rational {
    l.parts().iter().fold(Rational::one(), |acc, &k| acc * &ps[k as usize - 1])
}

pub fn evaluate(f: &SymFn, at: &FiniteEval) -> Rational {
    let ps = power_sums(&at.point, f.degree().max(1));
    f.coeffs().iter().fold(Rational::zero(), |acc, (l, c)| acc + c * eval_powersum_product(l, &ps))
}

/// p_λ ≥ p_μ on the nonnegative orthant for every n, decided by
/// superdominance.
pub fn binomial_inequality_holds(l: &Partition, m: &Partition) -> Result<bool> {
    superdominates(l, m)
}

/// Search grid for violations: t values below and above 1.
pub fn witness_grid() -> Vec<Rational> {
    let mut v: Vec<Rational> = [(0, 1), (1, 10), (1, 4), (1, 2), (3, 4), (3, 2), (2, 1), (3, 1), (5, 1), (10, 1), (100, 1)]
        .iter()
        .map(|&(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
        .collect();
    v.sort();
    v
}

/// Looks for x ≥ 0 with p_λ(x) < p_μ(x) among points (t,1,…,1) and
/// (t,t,1,…,1) with n ≤ `max_n`, t from [`witness_grid`].
pub fn find_binomial_violation(l: &Partition, m: &Partition, max_n: usize) -> Option<Vec<Rational>> {
    let grid = witness_grid();
    let kmax = l.size().max(m.size()).max(1);
    for n in 1..=max_n {
        for lead in 1..=2usize.min(n) {
            for t in &grid {
                // p_k = lead·t^k + (n − lead)
                let rest = int((n - lead) as i64);
                let mut ps = Vec::with_capacity(kmax as usize);
                let mut pw = Rational::one();
                for _ in 0..kmax {
                    pw *= t;
                    ps.push(&pw * int(lead as i64) + &rest);
                }
                if eval_powersum_product(l, &ps) < eval_powersum_product(m, &ps) {
                    let mut x = vec![t.clone(); lead];
                    x.extend(std::iter::repeat_n(Rational::one(), n - lead));
                    return Some(x);
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Group {
    /// Symmetric group S_n.
    S,
    /// Hyperoctahedral group B_n of signed permutations.
    B,
}

/// x^α · p_λ with α supported on the first coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonomialTerm {
    pub alpha: Vec<u32>,
    pub lambda: Partition,
}

impl MonomialTerm {
    pub fn new(alpha: Vec<u32>, lambda: Partition) -> Self {
        MonomialTerm { alpha, lambda }
    }

    pub fn degree(&self) -> u32 {
        self.alpha.iter().sum::<u32>() + self.lambda.size()
    }

    pub fn support_size(&self) -> usize {
        self.alpha.iter().filter(|&&a| a > 0).count()
    }
}

/// A symmetric polynomial in n variables in the monomial basis m_β,
/// ℓ(β) ≤ n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NVarSym {
    pub n: usize,
    pub coeffs: BTreeMap<Partition, Rational>,
}

impl NVarSym {
    /// Restriction of a symmetric function to n variables.
    pub fn from_symfn(f: &SymFn, n: usize) -> Self {
        let mut coeffs = powersum_to_monomial(f);
        coeffs.retain(|b, _| b.len() <= n);
        NVarSym { n, coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut coeffs: BTreeMap<Partition, Rational> = self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        coeffs.retain(|_, v| !v.is_zero());
        NVarSym { n: self.n, coeffs }
    }
}

fn orbit_size(exps: &[u32]) -> BigInt {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &e in exps {
        *counts.entry(e).or_insert(0) += 1;
    }
    let denom = counts.values().fold(BigInt::one(), |acc, &c| acc * factorial(c));
    factorial(exps.len() as u32) / denom
}

/// Reynolds average of x^α p_λ over S_n or B_n, computed monomial by
/// monomial: x^β averages to m_β / |orbit(β)|, and under B_n to zero when
/// β has an odd entry.
pub fn finite_symmetrize(term: &MonomialTerm, n: usize, group: Group) -> Result<NVarSym> {
    if n == 0 {
        return Err(Error::InvalidArgument("need n >= 1".into()));
    }
    let last = term.alpha.iter().rposition(|&a| a > 0).map_or(0, |i| i + 1);
    if last > n {
        return Err(Error::InvalidArgument(format!("support of alpha exceeds n = {n}")));
    }
    let parts = term.lambda.parts().to_vec();
    let mut base = vec![0u32; n];
    base[..last].copy_from_slice(&term.alpha[..last]);
    let mut acc: BTreeMap<Partition, Rational> = BTreeMap::new();
    let mut idx = vec![0usize; parts.len()];
    loop {
        let mut e = base.clone();
        for (k, &i) in idx.iter().enumerate() {
            e[i] += parts[k];
        }
        let killed = group == Group::B && e.iter().any(|x| x % 2 == 1);
        if !killed {
            let w = Rational::new(BigInt::one(), orbit_size(&e));
            let beta = Partition::new(e.into_iter().filter(|&x| x > 0).collect()).expect("positive");
            *acc.entry(beta).or_insert_with(Rational::zero) += w;
        }
        // next index tuple in [n]^ℓ
        let mut k = 0;
        loop {
            if k == idx.len() {
                acc.retain(|_, v| !v.is_zero());
                return Ok(NVarSym { n, coeffs: acc });
            }
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Closed-form prefactor of sym(x^γ) = c(n)·m_γ: ∏β_i!·(n−ℓ)!/n!.
pub fn symmetrization_prefactor(gamma: &Partition, n: usize) -> Rational {
    let l = gamma.len();
    if l > n {
        return Rational::zero();
    }
    Rational::new(mult_factorial(gamma) * factorial((n - l) as u32), factorial(n as u32))
}
