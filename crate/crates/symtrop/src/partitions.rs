//! Integer partitions with the reverse lexicographic, dominance and
//! superdominance orders, fusion, the star operation and Hasse diagrams.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts. The multiplicity vector is
/// kept alongside (`mults[k-1]` = number of parts equal to k).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
    mults: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self::from_sorted(parts))
    }

    fn from_sorted(parts: Vec<u32>) -> Self {
        let max = parts.first().copied().unwrap_or(0) as usize;
        let mut mults = vec![0u32; max];
        for &p in &parts {
            mults[p as usize - 1] += 1;
        }
        Partition { parts, mults }
    }

    /// Shorthand for literals in code and tests; panics on a zero part.
    pub fn of(parts: &[u32]) -> Self {
        Self::new(parts.to_vec()).expect("positive parts")
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new(), mults: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// λ(k), the number of parts equal to k.
    pub fn multiplicity(&self, k: u32) -> u32 {
        if k == 0 {
            return 0;
        }
        self.mults.get(k as usize - 1).copied().unwrap_or(0)
    }

    /// (λ(1), …, λ(d)).
    pub fn mult_vector(&self, d: usize) -> Vec<u32> {
        (1..=d as u32).map(|k| self.multiplicity(k)).collect()
    }

    /// Nonzero multiplicities, used for the ∏ λ(k)! factors.
    pub fn multiplicities(&self) -> impl Iterator<Item = u32> + '_ {
        self.mults.iter().copied().filter(|&m| m > 0)
    }

    /// Parts in increasing order λ_(1) ≤ λ_(2) ≤ …
    pub fn increasing(&self) -> Vec<u32> {
        self.parts.iter().rev().copied().collect()
    }

    pub fn is_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    pub fn doubled(&self) -> Self {
        Self::from_sorted(self.parts.iter().map(|p| 2 * p).collect())
    }

    pub fn halved(&self) -> Result<Self> {
        if !self.is_even() {
            return Err(Error::InvalidArgument(format!("{self} has an odd part")));
        }
        Ok(Self::from_sorted(self.parts.iter().map(|p| p / 2).collect()))
    }

    /// Comma list such as "4,2,2".
    pub fn to_list_string(&self) -> String {
        self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Parses "4,2,2", "4,2^2", "(4,2^2)", "[4,2,2]"; "" or "0" give ∅.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']).trim();
        if t.is_empty() || t == "0" || t == "∅" {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        for tok in t.split(',') {
            let tok = tok.trim();
            let bad = || Error::Parse(format!("bad partition token {tok:?} in {s:?}"));
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim().parse::<u32>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let b: u32 = base.parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat_n(b, exp as usize));
        }
        Self::new(parts)
    }
}

impl fmt::Display for Partition {
    /// Exponent notation, e.g. (4,2^2); ∅ for the empty partition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let mut items = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == p {
                j += 1;
            }
            if j - i == 1 {
                items.push(p.to_string());
            } else {
                items.push(format!("{p}^{}", j - i));
            }
            i = j;
        }
        write!(f, "({})", items.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

fn check_sizes(l: &Partition, m: &Partition) -> Result<()> {
    if l.size() != m.size() {
        return Err(Error::SizeMismatch {
            left: l.to_string(),
            left_size: l.size(),
            right: m.to_string(),
            right_size: m.size(),
        });
    }
    Ok(())
}

/// Ordering::Greater iff λ >_revlex μ: at the first index where the
/// increasing part lists differ, the partition with the smaller part wins.
pub fn revlex_cmp(l: &Partition, m: &Partition) -> Ordering {
    let a = l.increasing();
    let b = m.increasing();
    for (x, y) in a.iter().zip(b.iter()) {
        if x != y {
            return y.cmp(x);
        }
    }
    a.len().cmp(&b.len())
}

/// Sorts largest-first in revlex.
pub fn sort_revlex(v: &mut [Partition]) {
    v.sort_by(|a, b| revlex_cmp(b, a));
}

fn partitions_rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition::from_sorted(cur.clone()));
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        partitions_rec(rest - p, p, cur, out);
        cur.pop();
    }
}

/// All partitions of d, largest first in revlex.
pub fn enum_partitions(d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    partitions_rec(d, d, &mut Vec::new(), &mut out);
    sort_revlex(&mut out);
    out
}

/// Partitions of n with only even parts, largest first in revlex.
pub fn enum_even_partitions(n: u32) -> Vec<Partition> {
    if n % 2 == 1 {
        return Vec::new();
    }
    enum_partitions(n / 2).iter().map(Partition::doubled).collect()
}

/// Number of partitions of d.
pub fn partition_count(d: u32) -> usize {
    let d = d as usize;
    let mut p = vec![0usize; d + 1];
    p[0] = 1;
    for k in 1..=d {
        for n in k..=d {
            p[n] += p[n - k];
        }
    }
    p[d]
}

/// Prefix sums of the j smallest parts, j = 1..ℓ.
pub fn increasing_prefix_sums(l: &Partition) -> Vec<u32> {
    l.increasing()
        .iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// λ ⪰ μ: for every j ≤ min(ℓ(λ), ℓ(μ)) the j smallest parts of λ sum to
/// at most the j smallest parts of μ.
pub fn superdominates(l: &Partition, m: &Partition) -> Result<bool> {
    check_sizes(l, m)?;
    Ok(superdominates_unchecked(l, m))
}

pub(crate) fn superdominates_unchecked(l: &Partition, m: &Partition) -> bool {
    let a = l.increasing();
    let b = m.increasing();
    let (mut sa, mut sb) = (0u32, 0u32);
    for (x, y) in a.iter().zip(b.iter()) {
        sa += x;
        sb += y;
        if sa > sb {
            return false;
        }
    }
    true
}

/// Per-j trace (j, Σλ_(i), Σμ_(i)) of the superdominance test.
pub fn superdominance_trace(l: &Partition, m: &Partition) -> Vec<(usize, u32, u32)> {
    let a = increasing_prefix_sums(l);
    let b = increasing_prefix_sums(m);
    a.iter().zip(b.iter()).enumerate().map(|(j, (x, y))| (j + 1, *x, *y)).collect()
}

/// λ ⊵ μ: prefix sums of the decreasing parts of λ dominate those of μ.
pub fn dominates(l: &Partition, m: &Partition) -> Result<bool> {
    check_sizes(l, m)?;
    let n = l.len().max(m.len());
    let (mut sa, mut sb) = (0u32, 0u32);
    for i in 0..n {
        sa += l.parts.get(i).copied().unwrap_or(0);
        sb += m.parts.get(i).copied().unwrap_or(0);
        if sa < sb {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Multiset union of the parts.
pub fn fuse(ls: &[Partition]) -> Partition {
    let mut parts: Vec<u32> = ls.iter().flat_map(|l| l.parts.iter().copied()).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::from_sorted(parts)
}

pub fn fuse2(l: &Partition, m: &Partition) -> Partition {
    fuse(&[l.clone(), m.clone()])
}

/// μ^∘k, the fusion of k copies of μ.
pub fn fuse_power(m: &Partition, k: usize) -> Partition {
    fuse(&vec![m.clone(); k])
}

/// λ*: the two largest parts merged into one.
pub fn star(l: &Partition) -> Result<Partition> {
    if l.len() < 2 {
        return Err(Error::InvalidArgument(format!("star needs at least two parts, got {l}")));
    }
    let mut parts = vec![l.parts[0] + l.parts[1]];
    parts.extend_from_slice(&l.parts[2..]);
    Ok(Partition::from_sorted(parts))
}

/// Cover relation of the superdominance order: either same length and a
/// dominance cover (one unit moved from part i to part j > i, with j = i+1
/// or λ_i = λ_j + 2), or λ₁ − λ₂ ≤ 1 and μ = λ*.
pub fn covers(l: &Partition, m: &Partition) -> Result<bool> {
    check_sizes(l, m)?;
    if l == m {
        return Ok(false);
    }
    if l.len() == m.len() {
        let diffs: Vec<(usize, i64)> = l
            .parts
            .iter()
            .zip(m.parts.iter())
            .enumerate()
            .map(|(k, (&a, &b))| (k, a as i64 - b as i64))
            .filter(|(_, d)| *d != 0)
            .collect();
        if diffs.len() != 2 {
            return Ok(false);
        }
        let ((i, di), (j, dj)) = (diffs[0], diffs[1]);
        if di != 1 || dj != -1 {
            return Ok(false);
        }
        return Ok(j == i + 1 || l.parts[i] == l.parts[j] + 2);
    }
    if l.len() == m.len() + 1 && l.parts[0] - l.parts[1] <= 1 {
        return Ok(star(l)? == *m);
    }
    Ok(false)
}

#[derive(Clone, Debug, Serialize)]
pub struct Hasse {
    pub nodes: Vec<Partition>,
    /// (upper, lower) index pairs into `nodes`.
    pub edges: Vec<(usize, usize)>,
}

impl Hasse {
    pub fn edge_partitions(&self) -> Vec<(Partition, Partition)> {
        self.edges.iter().map(|&(a, b)| (self.nodes[a].clone(), self.nodes[b].clone())).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph superdominance {\n  rankdir=TB;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{n}\"];\n"));
        }
        for &(a, b) in &self.edges {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }

    /// True when the cover graph is a single chain through all nodes.
    pub fn is_chain(&self) -> bool {
        let n = self.nodes.len();
        if n <= 1 {
            return true;
        }
        if self.edges.len() != n - 1 {
            return false;
        }
        let mut out = vec![0; n];
        let mut inn = vec![0; n];
        for &(a, b) in &self.edges {
            out[a] += 1;
            inn[b] += 1;
        }
        out.iter().all(|&c| c <= 1) && inn.iter().all(|&c| c <= 1)
    }
}

pub fn hasse(d: u32) -> Hasse {
    let nodes = enum_partitions(d);
    let mut edges = Vec::new();
    for (i, a) in nodes.iter().enumerate() {
        for (j, b) in nodes.iter().enumerate() {
            if covers(a, b).unwrap_or(false) {
                edges.push((i, j));
            }
        }
    }
    Hasse { nodes, edges }
}

/// Some pair of Λ_d incomparable under superdominance, if any.
pub fn incomparable_pair(d: u32) -> Option<(Partition, Partition)> {
    let ps = enum_partitions(d);
    for (i, a) in ps.iter().enumerate() {
        for b in &ps[i + 1..] {
            if !superdominates_unchecked(a, b) && !superdominates_unchecked(b, a) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}
