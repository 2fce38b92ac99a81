//! The root poset: ideals, ideal exponents, linear extensions and the
//! rank-2 localizations used to restrict ideals to subsystems.

use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rootsys::{dual_partition, ExponentMultiset, Root, RootSystem};

/// Default cap on the rank for exhaustive ideal enumeration.
pub const DEFAULT_MAX_ENUMERATION_RANK: usize = 4;

/// A downward-closed set of positive roots, indexed by canonical root order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    members: FixedBitSet,
}

impl Ideal {
    pub fn empty(num_positive: usize) -> Self {
        Self { members: FixedBitSet::with_capacity(num_positive) }
    }

    pub fn full(num_positive: usize) -> Self {
        let mut members = FixedBitSet::with_capacity(num_positive);
        members.insert_range(..);
        Self { members }
    }

    /// Checks downward closure against `rs`.
    pub fn new(rs: &RootSystem, members: FixedBitSet) -> Result<Self> {
        if members.len() != rs.num_positive() {
            return Err(Error::Dimension { expected: rs.num_positive(), got: members.len() });
        }
        if !is_ideal(rs, &members) {
            return Err(Error::Precondition("subset is not downward closed".into()));
        }
        Ok(Self { members })
    }

    pub fn from_indices(rs: &RootSystem, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members = FixedBitSet::with_capacity(rs.num_positive());
        for i in indices {
            if i >= rs.num_positive() {
                return Err(Error::Dimension { expected: rs.num_positive(), got: i + 1 });
            }
            members.insert(i);
        }
        Self::new(rs, members)
    }

    /// The prefix of length `len` of a linear extension.
    pub fn prefix(ext: &LinearExtension, len: usize) -> Self {
        let mut members = FixedBitSet::with_capacity(ext.order.len());
        members.extend(ext.order[..len].iter().copied());
        Self { members }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(i)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }
}

/// `β ≤ α` in the dominance order: `α - β` has nonnegative coefficients.
pub fn dominance_leq(beta: &Root, alpha: &Root) -> bool {
    alpha.coeffs().iter().zip(beta.coeffs()).all(|(a, b)| a >= b)
}

pub fn is_ideal(rs: &RootSystem, set: &FixedBitSet) -> bool {
    let roots = rs.positive_roots();
    set.ones().all(|a| {
        (0..roots.len()).all(|b| set.contains(b) || !dominance_leq(&roots[b], &roots[a]))
    })
}

/// For each root, the set of roots strictly below it.
fn strict_down_sets(rs: &RootSystem) -> Vec<FixedBitSet> {
    let roots = rs.positive_roots();
    roots
        .iter()
        .enumerate()
        .map(|(a, ra)| {
            let mut below = FixedBitSet::with_capacity(roots.len());
            for (b, rb) in roots.iter().enumerate() {
                if a != b && dominance_leq(rb, ra) {
                    below.insert(b);
                }
            }
            below
        })
        .collect()
}

pub fn enumerate_ideals(rs: &RootSystem) -> Result<Vec<Ideal>> {
    enumerate_ideals_bounded(rs, DEFAULT_MAX_ENUMERATION_RANK)
}

/// All ideals, found by breadth-first growth one admissible root at a time.
///
/// Output order: by size, then by the bit pattern read in canonical root
/// order (roots earlier in the order count as more significant).
pub fn enumerate_ideals_bounded(rs: &RootSystem, max_rank: usize) -> Result<Vec<Ideal>> {
    if rs.rank() > max_rank {
        return Err(Error::RankBound { rank: rs.rank(), bound: max_rank });
    }
    let n = rs.num_positive();
    let below = strict_down_sets(rs);
    let start = FixedBitSet::with_capacity(n);
    let mut seen: HashSet<FixedBitSet> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(current) = queue.pop_front() {
        for a in 0..n {
            if current.contains(a) || !below[a].is_subset(&current) {
                continue;
            }
            let mut next = current.clone();
            next.insert(a);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut ideals: Vec<FixedBitSet> = seen.into_iter().collect();
    ideals.sort_by_cached_key(|s| {
        let bits: Vec<bool> = (0..n).map(|i| !s.contains(i)).collect();
        (s.count_ones(..), bits)
    });
    Ok(ideals.into_iter().map(|members| Ideal { members }).collect())
}

/// `∏ (e_i + h + 1) / (e_i + 1)` over the Weyl exponents.
pub fn weyl_catalan(rs: &RootSystem) -> u128 {
    let h = rs.coxeter_number() as u128;
    let (num, den) = rs
        .weyl_exponents()
        .parts()
        .iter()
        .fold((1u128, 1u128), |(n, d), &e| (n * (e as u128 + h + 1), d * (e as u128 + 1)));
    num / den
}

/// `p_i = |{β ∈ I : Ht(β) = i}|` for `i = 1..=max height`.
pub fn height_profile(rs: &RootSystem, ideal: &Ideal) -> Vec<usize> {
    let mut p = vec![0usize; rs.coxeter_number() as usize];
    for i in ideal.iter() {
        p[rs.root(i).height() as usize - 1] += 1;
    }
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// Exponents `(m_1(I), ..., m_ℓ(I))`: dual partition of the heights of `I`.
pub fn ideal_exponents(rs: &RootSystem, ideal: &Ideal) -> Result<ExponentMultiset> {
    let heights: Vec<u64> = ideal.iter().map(|i| rs.root(i).height() as u64).collect();
    dual_partition(&heights, rs.rank())
}

/// A total order on `Φ+` whose every prefix is an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearExtension {
    order: Vec<usize>,
}

impl LinearExtension {
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// The canonical (height, then lexicographic) order. Heights strictly grow
/// along covering relations, so every prefix is downward closed.
pub fn linear_extension(rs: &RootSystem) -> LinearExtension {
    LinearExtension { order: (0..rs.num_positive()).collect() }
}

/// Every rank-2 localization `Ψ+ = Φ+ ∩ Y^⊥`, `Y ∈ L_2(A(Φ+))`: the positive
/// roots lying in the span of two independent positive roots.
pub fn rank2_localizations(rs: &RootSystem) -> Vec<FixedBitSet> {
    let roots = rs.positive_roots();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in 0..roots.len() {
        for b in a + 1..roots.len() {
            let span = [roots[a].coeffs().to_vec(), roots[b].coeffs().to_vec()];
            let mut set = FixedBitSet::with_capacity(roots.len());
            for (c, r) in roots.iter().enumerate() {
                let stacked = [span[0].clone(), span[1].clone(), r.coeffs().to_vec()];
                if linalg::rank_i64(&stacked) == 2 {
                    set.insert(c);
                }
            }
            if seen.insert(set.clone()) {
                out.push(set);
            }
        }
    }
    out
}

fn is_rank2_localization(rs: &RootSystem, psi: &FixedBitSet) -> bool {
    let rows: Vec<Vec<i64>> = psi.ones().map(|i| rs.root(i).coeffs().to_vec()).collect();
    if linalg::rank_i64(&rows) != 2 {
        return false;
    }
    (0..rs.num_positive()).all(|c| {
        let mut stacked = rows.clone();
        stacked.push(rs.root(c).coeffs().to_vec());
        psi.contains(c) == (linalg::rank_i64(&stacked) == 2)
    })
}

/// `J = I ∩ Ψ+` for a rank-2 localization `Ψ+`.
pub fn localize_ideal(rs: &RootSystem, ideal: &Ideal, psi: &FixedBitSet) -> Result<FixedBitSet> {
    if psi.len() != rs.num_positive() || !is_rank2_localization(rs, psi) {
        return Err(Error::NotRank2Localization);
    }
    let mut j = ideal.members().clone();
    j.intersect_with(psi);
    Ok(j)
}

/// Coordinates `(x, y)` with `v = x a + y b`, if they exist and are integral.
fn coords_in_pair(a: &[i64], b: &[i64], v: &[i64]) -> Option<(i64, i64)> {
    let n = a.len();
    for i in 0..n {
        for k in i + 1..n {
            let det = a[i] * b[k] - a[k] * b[i];
            if det == 0 {
                continue;
            }
            let xn = v[i] * b[k] - v[k] * b[i];
            let yn = a[i] * v[k] - a[k] * v[i];
            if xn % det != 0 || yn % det != 0 {
                return None;
            }
            let (x, y) = (xn / det, yn / det);
            let ok = (0..n).all(|t| x * a[t] + y * b[t] == v[t]);
            return ok.then_some((x, y));
        }
    }
    None
}

/// The simple system `{γ_1, γ_2}` of a rank-2 positive subsystem `Ψ+`: the
/// unique pair expressing every root of `Ψ+` with nonnegative integers.
pub fn subsystem_simple_roots(rs: &RootSystem, psi: &FixedBitSet) -> Option<(usize, usize)> {
    let members: Vec<usize> = psi.ones().collect();
    for (x, &a) in members.iter().enumerate() {
        for &b in &members[x + 1..] {
            let (ra, rb) = (rs.root(a).coeffs(), rs.root(b).coeffs());
            let spans = members.iter().all(|&c| {
                coords_in_pair(ra, rb, rs.root(c).coeffs()).is_some_and(|(p, q)| p >= 0 && q >= 0)
            });
            if spans {
                return Some((a, b));
            }
        }
    }
    None
}

/// Downward closure of `j` inside the poset of the subsystem `Ψ+`.
pub fn is_ideal_in_subsystem(rs: &RootSystem, psi: &FixedBitSet, j: &FixedBitSet) -> bool {
    let Some((g1, g2)) = subsystem_simple_roots(rs, psi) else {
        return false;
    };
    let (r1, r2) = (rs.root(g1).coeffs(), rs.root(g2).coeffs());
    let coords = |i: usize| coords_in_pair(r1, r2, rs.root(i).coeffs()).expect("root of Ψ+");
    j.ones().all(|alpha| {
        let (a1, a2) = coords(alpha);
        psi.ones().all(|beta| {
            let (b1, b2) = coords(beta);
            j.contains(beta) || !(a1 >= b1 && a2 >= b2)
        })
    })
}
