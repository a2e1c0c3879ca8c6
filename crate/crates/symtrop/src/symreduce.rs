//! Gram pencils from partial symmetry reduction, congruence transforms and
//! the linearized tropicalization of their spectrahedral duals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{factorial, fmt_rat, rat, Rational};
use crate::partitions::{enum_even_partitions, enum_partitions, fuse, revlex_cmp, superdominates_unchecked, Partition};
use crate::polyhedra::{primitive, Cone, IntVec};
use crate::symfunc::{monomial_to_powersum, Group, MonomialTerm, SymFn};

/// One entry x^α p_λ of a term vector.
pub type Term = MonomialTerm;

/// Terms sharing support {1..odd+even}, with α odd on the first `odd`
/// coordinates and even on the rest. The row is scaled by n^{ℓ(α)/2}.
#[derive(Clone, Debug, Serialize)]
pub struct TermVector {
    pub odd: usize,
    pub even: usize,
    pub terms: Vec<Term>,
}

impl TermVector {
    pub fn support(&self) -> usize {
        self.odd + self.even
    }

    pub fn label(&self, group: Group) -> String {
        match group {
            Group::B => format!("v({},{})", self.odd, self.even),
            Group::S => format!("v{}", self.support()),
        }
    }
}

fn padded_sum(a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect()
}

fn support_of(a: &[u32]) -> Vec<usize> {
    a.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i).collect()
}

fn nonzero_partition(v: &[u32]) -> Partition {
    Partition::new(v.iter().copied().filter(|&x| x > 0).collect()).expect("positive entries")
}

/// lim sym(n^{(ℓ(α)+ℓ(α'))/2} x^{α+α'} p_λ p_λ') for the given group: zero
/// unless the supports agree (and, for B_n, α+α' is even); otherwise
/// ∏ mult_k(γ)! · 𝔪_γ · 𝔭_{λλ'} with γ the partition of α+α'.
pub fn limit_gram_entry_in(group: Group, t1: &Term, t2: &Term) -> Result<SymFn> {
    if t1.degree() != t2.degree() {
        return Err(Error::InvalidArgument(format!(
            "terms of degree {} and {} do not pair",
            t1.degree(),
            t2.degree()
        )));
    }
    let degree = 2 * t1.degree();
    if support_of(&t1.alpha) != support_of(&t2.alpha) {
        return Ok(SymFn::zero(degree));
    }
    let sum = padded_sum(&t1.alpha, &t2.alpha);
    if group == Group::B && sum.iter().any(|x| x % 2 == 1) {
        return Ok(SymFn::zero(degree));
    }
    let gamma = nonzero_partition(&sum);
    let c = gamma.multiplicities().fold(BigInt::from(1), |acc, m| acc * factorial(m));
    let m = monomial_to_powersum(&gamma).scale(&Rational::from_integer(c));
    Ok(m.mul(&SymFn::p(&fuse(&[t1.lambda.clone(), t2.lambda.clone()]))))
}

/// Limit Gram entry for the hyperoctahedral group.
pub fn limit_gram_entry(t1: &Term, t2: &Term) -> Result<SymFn> {
    limit_gram_entry_in(Group::B, t1, t2)
}

fn alphas(odd: usize, even: usize, max_total: u32) -> Vec<Vec<u32>> {
    fn rec(pos: usize, odd: usize, len: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == len {
            out.push(cur.clone());
            return;
        }
        let start = if pos < odd { 1 } else { 2 };
        let mut a = start;
        while a <= left {
            cur.push(a);
            rec(pos + 1, odd, len, left - a, cur, out);
            cur.pop();
            a += 2;
        }
    }
    let mut out = Vec::new();
    rec(0, odd, odd + even, max_total, &mut Vec::new(), &mut out);
    out
}

/// Diagonal partition of a term: α+α together with λλ.
fn diagonal_partition(t: &Term) -> Partition {
    let doubled: Vec<u32> = t.alpha.iter().map(|a| 2 * a).collect();
    fuse(&[nonzero_partition(&doubled), t.lambda.clone(), t.lambda.clone()])
}

fn order_terms(terms: &mut [Term]) {
    terms.sort_by(|a, b| match revlex_cmp(&diagonal_partition(b), &diagonal_partition(a)) {
        Ordering::Equal => b.alpha.cmp(&a.alpha),
        o => o,
    });
}

/// All term vectors of degree d. For B_n each block has a parity pattern
/// (odd, even); for S_n blocks are indexed by support size alone. Blocks
/// are ordered by support size, then by the number of odd coordinates
/// (descending); terms by the revlex order of their diagonal partition.
pub fn term_vectors(group: Group, d: u32) -> Vec<TermVector> {
    let mut out = Vec::new();
    for s in 0..=d as usize {
        let patterns: Vec<(usize, usize)> = match group {
            Group::B => (0..=s).rev().map(|i| (i, s - i)).filter(|&(i, _)| (i as u32) % 2 == d % 2).collect(),
            Group::S => vec![(s, 0)],
        };
        for (odd, even) in patterns {
            let cand = match group {
                Group::B => alphas(odd, even, d),
                Group::S => alphas_any(s, d),
            };
            let mut terms = Vec::new();
            for a in cand {
                let rest = d - a.iter().sum::<u32>();
                let lambdas = match group {
                    Group::B => enum_even_partitions(rest),
                    Group::S => enum_partitions(rest),
                };
                for l in lambdas {
                    terms.push(Term::new(a.clone(), l));
                }
            }
            if terms.is_empty() {
                continue;
            }
            order_terms(&mut terms);
            out.push(TermVector { odd, even, terms });
        }
    }
    out
}

fn alphas_any(len: usize, max_total: u32) -> Vec<Vec<u32>> {
    fn rec(pos: usize, len: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == len {
            out.push(cur.clone());
            return;
        }
        for a in 1..=left {
            cur.push(a);
            rec(pos + 1, len, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, max_total, &mut Vec::new(), &mut out);
    out
}

pub type SymMatrix = Vec<Vec<SymFn>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PencilKind {
    /// Even symmetric forms of degree 2d, 2d ∈ {4, 6, 8, 10}.
    B(u32),
    /// Symmetric quartics.
    S4,
}

impl PencilKind {
    /// "B10", "b(10)", "S4".
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !"() ".contains(*c)).collect::<String>().to_uppercase();
        if t == "S4" {
            return Ok(PencilKind::S4);
        }
        if let Some(n) = t.strip_prefix('B') {
            if let Ok(v) = n.parse::<u32>() {
                return Ok(PencilKind::B(v));
            }
        }
        Err(Error::Parse(format!("unknown pencil kind {s:?} (expected B4, B6, B8, B10 or S4)")))
    }
}

impl fmt::Display for PencilKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PencilKind::B(n) => write!(f, "B({n})"),
            PencilKind::S4 => write!(f, "S(4)"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PencilBlock {
    pub label: String,
    pub terms: Vec<Term>,
    /// Congruence matrix A applied as A·M·Aᵀ, if any.
    #[serde(skip)]
    pub congruence: Option<Vec<Vec<Rational>>>,
    pub entries: SymMatrix,
}

impl PencilBlock {
    pub fn size(&self) -> usize {
        self.entries.len()
    }
}

#[derive(Clone, Debug)]
pub struct GramPencil {
    pub kind: PencilKind,
    pub group: Group,
    /// Dual coordinates, largest first in revlex.
    pub coords: Vec<Partition>,
    pub blocks: Vec<PencilBlock>,
}

/// Congruence for the (2,0) block of B(8).
pub fn congruence_b8() -> Vec<Vec<Rational>> {
    vec![
        vec![rat(1, 1), rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(1, 2), rat(1, 2)],
        vec![rat(0, 1), rat(1, 1), rat(-1, 1)],
    ]
}

/// Congruence for the (3,0) block of B(10).
pub fn congruence_b10() -> Vec<Vec<Rational>> {
    vec![
        vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(1, 3), rat(1, 3), rat(1, 3)],
        vec![rat(0, 1), rat(-1, 1), rat(1, 2), rat(1, 2)],
        vec![rat(0, 1), rat(0, 1), rat(-1, 1), rat(1, 1)],
    ]
}

/// A·M·Aᵀ.
pub fn apply_congruence(block: &SymMatrix, a: &[Vec<Rational>]) -> Result<SymMatrix> {
    let m = block.len();
    for row in block {
        if row.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: row.len() });
        }
    }
    for row in a {
        if row.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: row.len() });
        }
    }
    let degree = block.first().and_then(|r| r.first()).map_or(0, |f| f.degree());
    let r = a.len();
    let mut out = vec![vec![SymFn::zero(degree); r]; r];
    for i in 0..r {
        for j in 0..r {
            let mut acc = SymFn::zero(degree);
            for k in 0..m {
                if a[i][k].is_zero() {
                    continue;
                }
                for l in 0..m {
                    if a[j][l].is_zero() {
                        continue;
                    }
                    acc = acc.add(&block[k][l].scale(&(&a[i][k] * &a[j][l])));
                }
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

pub fn build_pencil(kind: &PencilKind) -> Result<GramPencil> {
    let (group, d) = match kind {
        PencilKind::B(n) if [4, 6, 8, 10].contains(n) => (Group::B, n / 2),
        PencilKind::S4 => (Group::S, 2),
        other => return Err(Error::Unsupported(format!("pencil {other} (supported: B4, B6, B8, B10, S4)"))),
    };
    let coords = match group {
        Group::B => enum_even_partitions(2 * d),
        Group::S => enum_partitions(2 * d),
    };
    let mut blocks = Vec::new();
    for tv in term_vectors(group, d) {
        let k = tv.terms.len();
        let mut entries = vec![vec![SymFn::zero(2 * d); k]; k];
        for i in 0..k {
            for j in 0..k {
                entries[i][j] = limit_gram_entry_in(group, &tv.terms[i], &tv.terms[j])?;
            }
        }
        let congruence = match (kind, tv.odd, tv.even) {
            (PencilKind::B(8), 2, 0) => Some(congruence_b8()),
            (PencilKind::B(10), 3, 0) => Some(congruence_b10()),
            _ => None,
        };
        if let Some(a) = &congruence {
            entries = apply_congruence(&entries, a)?;
        }
        blocks.push(PencilBlock { label: tv.label(group), terms: tv.terms, congruence, entries });
    }
    Ok(GramPencil { kind: kind.clone(), group, coords, blocks })
}

/// The element of `set` superdominating all others, if there is one.
pub fn superdominance_max(set: &[Partition]) -> Option<Partition> {
    set.iter().find(|c| set.iter().all(|o| superdominates_unchecked(c, o))).cloned()
}

fn index_of(coords: &[Partition], p: &Partition) -> Result<usize> {
    coords
        .iter()
        .position(|c| c == p)
        .ok_or_else(|| Error::Precondition(format!("{p} is not a coordinate of the pencil")))
}

fn unique_max(set: &[Partition], what: &str) -> Result<Partition> {
    superdominance_max(set).ok_or_else(|| {
        let names: Vec<String> = set.iter().map(|p| p.to_string()).collect();
        Error::Precondition(format!("{what} has no superdominance maximum among {{{}}}", names.join(", ")))
    })
}

/// Linearized rows of the tropicalization: for a diagonal entry,
/// y_{max ℓ⁺} ≥ y_{max ℓ⁻}; for a nonzero off-diagonal entry (i,j),
/// y_{max ℓ⁺_ii} + y_{max ℓ⁺_jj} ≥ 2·y_{max ℓ_ij}. Maxima are taken in the
/// superdominance order and must be unique.
pub fn trop_of_sos_rows(p: &GramPencil) -> Result<Vec<IntVec>> {
    let n = p.coords.len();
    let mut rows = Vec::new();
    for block in &p.blocks {
        let k = block.size();
        let mut diag_max: Vec<Option<Partition>> = Vec::with_capacity(k);
        for i in 0..k {
            let f = &block.entries[i][i];
            if f.is_zero() {
                diag_max.push(None);
                continue;
            }
            let pos = f.positive_support();
            if pos.is_empty() {
                return Err(Error::Precondition(format!("diagonal entry {f} of {} has no positive term", block.label)));
            }
            let top = unique_max(&pos, "positive support")?;
            let neg = f.negative_support();
            if !neg.is_empty() {
                let low = unique_max(&neg, "negative support")?;
                let mut row = vec![BigInt::zero(); n];
                row[index_of(&p.coords, &top)?] += 1;
                row[index_of(&p.coords, &low)?] -= 1;
                rows.push(row);
            }
            diag_max.push(Some(top));
        }
        for i in 0..k {
            for j in i + 1..k {
                let f = &block.entries[i][j];
                if f.is_zero() {
                    continue;
                }
                let (Some(a), Some(b)) = (&diag_max[i], &diag_max[j]) else {
                    return Err(Error::Precondition(format!(
                        "off-diagonal entry ({i},{j}) of {} is nonzero next to a zero diagonal",
                        block.label
                    )));
                };
                let m = unique_max(&f.support(), "off-diagonal support")?;
                let mut row = vec![BigInt::zero(); n];
                row[index_of(&p.coords, a)?] += 1;
                row[index_of(&p.coords, b)?] += 1;
                row[index_of(&p.coords, &m)?] -= 2;
                rows.push(row);
            }
        }
    }
    let mut rows: Vec<IntVec> = rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).map(|r| primitive(&r)).collect();
    rows.sort();
    rows.dedup();
    Ok(rows)
}

pub fn trop_of_sos(p: &GramPencil) -> Result<Cone> {
    Cone::from_h_int(p.coords.len(), &trop_of_sos_rows(p)?, &[])
}

impl GramPencil {
    pub fn to_json(&self) -> serde_json::Value {
        let blocks: Vec<serde_json::Value> = self
            .blocks
            .iter()
            .map(|b| {
                let m: Vec<Vec<serde_json::Value>> =
                    b.entries.iter().map(|r| r.iter().map(SymFn::to_json).collect()).collect();
                let mut v = serde_json::json!({"label": b.label, "matrix": m});
                if let Some(a) = &b.congruence {
                    let a: Vec<Vec<String>> = a.iter().map(|r| r.iter().map(fmt_rat).collect()).collect();
                    v["congruence"] = serde_json::json!(a);
                }
                v
            })
            .collect();
        serde_json::json!({
            "kind": self.kind.to_string(),
            "coordinates": self.coords,
            "blocks": blocks,
        })
    }

    /// Human-readable block listing.
    pub fn pretty(&self) -> String {
        let mut s = format!("{} pencil, coordinates:", self.kind);
        for c in &self.coords {
            s.push_str(&format!(" {c}"));
        }
        s.push('\n');
        for b in &self.blocks {
            let terms: Vec<String> = b.terms.iter().map(term_string).collect();
            s.push_str(&format!("\n{} = ({})", b.label, terms.join(", ")));
            if b.congruence.is_some() {
                s.push_str("  [after A M A^T]");
            }
            s.push('\n');
            for row in &b.entries {
                let cells: Vec<String> = row.iter().map(|f| f.to_string()).collect();
                s.push_str(&format!("  [ {} ]\n", cells.join(" | ")));
            }
        }
        s
    }
}

pub fn term_string(t: &Term) -> String {
    let mut s = String::new();
    for (i, &a) in t.alpha.iter().enumerate() {
        if a == 0 {
            continue;
        }
        if a == 1 {
            s.push_str(&format!("X{}", i + 1));
        } else {
            s.push_str(&format!("X{}^{}", i + 1, a));
        }
    }
    if !t.lambda.is_empty() {
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(&format!("p{}", t.lambda));
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}
