//! Irreducible crystallographic root systems.
//!
//! Roots are integer coefficient vectors over the simple roots. The positive
//! system is generated by closing the simple roots under the simple
//! reflections, read off the Cartan matrix, and keeping vectors in the
//! nonnegative orthant.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arrangement::Sign;
use crate::error::{Error, Result};
use crate::ideals::Ideal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemType {
    family: Family,
    rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidRank { family: family.letter(), rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every valid type of rank at most `max_rank`.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<Self> {
        let families = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];
        let mut out = Vec::new();
        for family in families {
            for rank in 1..=max_rank {
                if let Ok(t) = Self::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Cartan matrix `a[i][j] = <α_i^∨, α_j>` in Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C | Family::F => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::G => link(0, 1),
        }
        match self.family {
            // α_ℓ short
            Family::B => a[n - 1][n - 2] = -2,
            // α_ℓ long
            Family::C => a[n - 2][n - 1] = -2,
            // α_1, α_2 long; α_3, α_4 short
            Family::F => a[2][1] = -2,
            // α_1 short, α_2 long
            Family::G => a[0][1] = -3,
            _ => {}
        }
        a
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        Self::new(family, rank)
    }
}

impl Serialize for RootSystemType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootSystemType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A root written in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    coeffs: Vec<i64>,
}

impl Root {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_simple(&self) -> bool {
        self.height() == 1
    }
}

impl fmt::Display for Root {
    /// `a1+a2`, `3a1+2a2`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "a{}", i + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl FromStr for Root {
    type Err = Error;

    /// Parses the `Display` syntax; the rank is inferred from the largest
    /// index, so callers usually go through [`RootSystem::parse_root`].
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownRoot(s.to_string());
        let mut terms = Vec::new();
        for term in s.trim().split('+') {
            let term = term.trim();
            let pos = term.find(['a', 'α']).ok_or_else(bad)?;
            let coeff = if pos == 0 { 1 } else { term[..pos].parse::<i64>().map_err(|_| bad())? };
            let idx_str = term[pos..].trim_start_matches(['a', 'α']);
            let idx: usize = idx_str.parse().map_err(|_| bad())?;
            if idx == 0 || coeff <= 0 {
                return Err(bad());
            }
            terms.push((idx - 1, coeff));
        }
        let rank = terms.iter().map(|t| t.0 + 1).max().ok_or_else(bad)?;
        let mut coeffs = vec![0; rank];
        for (i, c) in terms {
            coeffs[i] += c;
        }
        Ok(Root { coeffs })
    }
}

/// Sorted multiset of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<u64>", into = "Vec<u64>")]
pub struct ExponentMultiset {
    parts: Vec<u64>,
}

impl From<Vec<u64>> for ExponentMultiset {
    fn from(parts: Vec<u64>) -> Self {
        Self::new(parts)
    }
}

impl From<ExponentMultiset> for Vec<u64> {
    fn from(e: ExponentMultiset) -> Self {
        e.parts
    }
}

impl ExponentMultiset {
    pub fn new(mut parts: Vec<u64>) -> Self {
        parts.sort_unstable();
        Self { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> Option<u64> {
        self.parts.last().copied()
    }
}

impl fmt::Display for ExponentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Conjugate partition of the level sizes of `values`, padded with zeros to
/// exactly `d` parts.
///
/// With `f_i` the multiplicity of `i` in `values`, the result is
/// `(0)^{d-f_1} (1)^{f_1-f_2} ... (m)^{f_m}`. The level sizes must satisfy
/// `d >= f_1 >= f_2 >= ...`; violations are reported, never repaired.
pub fn dual_partition(values: &[u64], d: usize) -> Result<ExponentMultiset> {
    if values.contains(&0) {
        return Err(Error::DualPartition("values must be positive".into()));
    }
    let max = values.iter().copied().max().unwrap_or(0) as usize;
    let mut f = vec![0usize; max + 2];
    for &v in values {
        f[v as usize] += 1;
    }
    if f.get(1).copied().unwrap_or(0) > d {
        return Err(Error::DualPartition(format!("f_1 = {} exceeds d = {d}", f[1])));
    }
    for i in 2..=max {
        if f[i] > f[i - 1] {
            return Err(Error::DualPartition(format!(
                "level sizes increase: f_{} = {} < f_{i} = {}",
                i - 1,
                f[i - 1],
                f[i]
            )));
        }
    }
    let mut parts = Vec::with_capacity(d);
    let f1 = if max >= 1 { f[1] } else { 0 };
    parts.extend(std::iter::repeat_n(0u64, d - f1));
    for i in 1..=max {
        parts.extend(std::iter::repeat_n(i as u64, f[i] - f[i + 1]));
    }
    Ok(ExponentMultiset::new(parts))
}

/// Extended height of the coned root `α - jz`.
pub fn ext_height(height: i64, j: i64, coxeter: u64) -> u64 {
    let h = coxeter as i64;
    let v = if j > 0 { -height + j * h + 1 } else { height - j * h };
    debug_assert!(v >= 1, "extended height of a positive root is positive");
    v as u64
}

/// Extended height of the coning vector `z`.
pub const EXT_HEIGHT_Z: u64 = 1;

#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: RootSystemType,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    highest_root: usize,
    coxeter_number: u64,
    height_counts: Vec<usize>,
}

impl RootSystem {
    pub fn build(ty: RootSystemType) -> Self {
        let n = ty.rank();
        let cartan = ty.cartan_matrix();
        let mut seen: BTreeSet<Vec<i64>> = (0..n).map(|i| Root::simple(n, i).coeffs).collect();
        let mut frontier: Vec<Vec<i64>> = seen.iter().cloned().collect();
        while let Some(v) = frontier.pop() {
            for (i, row) in cartan.iter().enumerate() {
                let pairing: i64 = row.iter().zip(&v).map(|(a, c)| a * c).sum();
                if pairing == 0 {
                    continue;
                }
                let mut w = v.clone();
                w[i] -= pairing;
                if w.iter().all(|&c| c >= 0) && seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        let mut positive_roots: Vec<Root> = seen.into_iter().map(Root::new).collect();
        // height, then lexicographically descending so that α_1 leads.
        positive_roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coeffs.cmp(&a.coeffs)));
        let index = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coeffs.clone(), i))
            .collect();
        let highest_root = positive_roots.len() - 1;
        let coxeter_number = positive_roots[highest_root].height() as u64 + 1;
        debug_assert_eq!(2 * positive_roots.len(), n * coxeter_number as usize);
        let mut height_counts = vec![0usize; coxeter_number as usize];
        for r in &positive_roots {
            height_counts[r.height() as usize - 1] += 1;
        }
        Self { ty, cartan, positive_roots, index, highest_root, coxeter_number, height_counts }
    }

    pub fn from_type_str(s: &str) -> Result<Self> {
        Ok(Self::build(s.parse()?))
    }

    pub fn ty(&self) -> RootSystemType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.positive_roots[i]
    }

    pub fn index_of(&self, root: &Root) -> Option<usize> {
        self.index.get(root.coeffs()).copied()
    }

    /// Parses `a1+a2`-style notation and looks the root up in `Φ+`.
    pub fn parse_root(&self, s: &str) -> Result<usize> {
        let mut root: Root = s.parse()?;
        if root.coeffs.len() > self.rank() {
            return Err(Error::UnknownRoot(s.to_string()));
        }
        root.coeffs.resize(self.rank(), 0);
        self.index_of(&root).ok_or_else(|| Error::UnknownRoot(s.to_string()))
    }

    /// Indices of the simple roots; they are the first `ℓ` in canonical order.
    pub fn simple_indices(&self) -> std::ops::Range<usize> {
        0..self.rank()
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive_roots[self.highest_root]
    }

    pub fn coxeter_number(&self) -> u64 {
        self.coxeter_number
    }

    /// `g_i = |Ht^{-1}(i)|` for `i = 1..=h`, stored at index `i - 1`.
    pub fn height_counts(&self) -> &[usize] {
        &self.height_counts
    }

    pub fn heights(&self) -> Vec<u64> {
        self.positive_roots.iter().map(|r| r.height() as u64).collect()
    }

    pub fn weyl_exponents(&self) -> ExponentMultiset {
        dual_partition(&self.heights(), self.rank()).expect("height profile of Φ+ is a partition profile")
    }

    pub fn ext_height(&self, root: &Root, j: i64) -> u64 {
        ext_height(root.height(), j, self.coxeter_number)
    }

    /// Extended heights of the defining vectors of `Shi^k_{±I}` together with `z`.
    pub fn shi_ext_heights(&self, k: u64, ideal: &Ideal, sign: Sign) -> Vec<u64> {
        let k = k as i64;
        let mut out = vec![EXT_HEIGHT_Z];
        for (i, root) in self.positive_roots.iter().enumerate() {
            for j in (1 - k)..=k {
                if sign == Sign::Minus && j == k && ideal.contains(i) {
                    continue;
                }
                out.push(self.ext_height(root, j));
            }
            if sign == Sign::Plus && ideal.contains(i) {
                out.push(self.ext_height(root, -k));
            }
        }
        out
    }

    /// Predicted exponents of `Shi^k_{±I}`: the dual partition of the
    /// extended heights, with `ℓ + 1` parts.
    pub fn shi_exponents_dp(&self, k: u64, ideal: &Ideal, sign: Sign) -> Result<ExponentMultiset> {
        if k == 0 {
            return Err(Error::NonPositiveK(0));
        }
        dual_partition(&self.shi_ext_heights(k, ideal, sign), self.rank() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_type_str(s).unwrap()
    }

    fn sorted_heights(r: &RootSystem) -> Vec<u64> {
        let mut h = r.heights();
        h.sort();
        h
    }

    #[test]
    fn a2_roots() {
        let a2 = rs("A2");
        let coeffs: Vec<_> = a2.positive_roots().iter().map(|r| r.coeffs().to_vec()).collect();
        assert_eq!(coeffs, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn rank2_height_multisets() {
        assert_eq!(sorted_heights(&rs("B2")), vec![1, 1, 2, 3]);
        assert_eq!(sorted_heights(&rs("G2")), vec![1, 1, 2, 3, 4, 5]);
        assert_eq!(rs("G2").highest_root().coeffs(), &[3, 2]);
        assert_eq!(rs("B2").highest_root().coeffs(), &[1, 2]);
        assert_eq!(rs("C2").highest_root().coeffs(), &[2, 1]);
    }

    #[test]
    fn coxeter_numbers() {
        assert_eq!(rs("A2").coxeter_number(), 3);
        assert_eq!(rs("G2").coxeter_number(), 6);
        assert_eq!(rs("B3").coxeter_number(), 6);
    }

    #[test]
    fn positive_root_counts_match_table() {
        let table = [
            ("A1", 1, 2),
            ("A4", 10, 5),
            ("B4", 16, 8),
            ("C4", 16, 8),
            ("D4", 12, 6),
            ("D5", 20, 8),
            ("E6", 36, 12),
            ("E7", 63, 18),
            ("E8", 120, 30),
            ("F4", 24, 12),
            ("G2", 6, 6),
        ];
        for (name, np, h) in table {
            let r = rs(name);
            assert_eq!(r.num_positive(), np, "{name}");
            assert_eq!(r.coxeter_number(), h, "{name}");
        }
    }

    #[test]
    fn highest_roots_bourbaki() {
        assert_eq!(rs("B3").highest_root().coeffs(), &[1, 2, 2]);
        assert_eq!(rs("C3").highest_root().coeffs(), &[2, 2, 1]);
        assert_eq!(rs("F4").highest_root().coeffs(), &[2, 3, 4, 2]);
        assert_eq!(rs("E8").highest_root().coeffs(), &[2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn invalid_types() {
        assert!("Z9".parse::<RootSystemType>().is_err());
        assert!("B1".parse::<RootSystemType>().is_err());
        assert!("G3".parse::<RootSystemType>().is_err());
        assert!("E5".parse::<RootSystemType>().is_err());
        assert!("D3".parse::<RootSystemType>().is_ok());
    }

    #[test]
    fn dual_partition_examples() {
        assert_eq!(dual_partition(&[1, 1, 2], 2).unwrap().parts(), &[1, 2]);
        assert_eq!(dual_partition(&[], 2).unwrap().parts(), &[0, 0]);
        assert_eq!(dual_partition(&[1, 1, 2, 3, 4, 5], 2).unwrap().parts(), &[1, 5]);
    }

    #[test]
    fn dual_partition_rejects_bad_profiles() {
        assert!(dual_partition(&[1, 1, 1], 2).is_err());
        assert!(dual_partition(&[1, 2, 2], 3).is_err());
        assert!(dual_partition(&[2], 3).is_err());
        assert!(dual_partition(&[0], 3).is_err());
    }

    #[test]
    fn weyl_exponent_examples() {
        assert_eq!(rs("A3").weyl_exponents().parts(), &[1, 2, 3]);
        assert_eq!(rs("B3").weyl_exponents().parts(), &[1, 3, 5]);
        assert_eq!(rs("G2").weyl_exponents().parts(), &[1, 5]);
        assert_eq!(rs("E6").weyl_exponents().parts(), &[1, 4, 5, 7, 8, 11]);
    }

    #[test]
    fn ext_height_branches() {
        let g2 = rs("G2");
        let theta = g2.highest_root().clone();
        assert_eq!(g2.ext_height(&theta, 0), 5);
        assert_eq!(g2.ext_height(&theta, 1), 2);
        let a1 = g2.root(0).clone();
        for k in 1..4 {
            assert_eq!(g2.ext_height(&a1, -k), 1 + k as u64 * 6);
        }
    }

    #[test]
    fn shi_exponent_examples() {
        let a2 = rs("A2");
        let empty = Ideal::empty(3);
        let full = Ideal::full(3);
        assert_eq!(a2.shi_exponents_dp(1, &empty, Sign::Plus).unwrap().parts(), &[1, 3, 3]);
        assert_eq!(a2.shi_exponents_dp(1, &full, Sign::Plus).unwrap().parts(), &[1, 4, 5]);
        assert_eq!(a2.shi_exponents_dp(1, &full, Sign::Minus).unwrap().parts(), &[1, 1, 2]);
        assert!(a2.shi_exponents_dp(0, &full, Sign::Minus).is_err());
    }

    #[test]
    fn root_notation_round_trips() {
        let g2 = rs("G2");
        for (i, r) in g2.positive_roots().iter().enumerate() {
            assert_eq!(g2.parse_root(&r.to_string()).unwrap(), i);
        }
        assert_eq!(g2.parse_root("3a1+2a2").unwrap(), 5);
        assert!(g2.parse_root("a3").is_err());
        assert!(g2.parse_root("2a1").is_err());
    }
}
