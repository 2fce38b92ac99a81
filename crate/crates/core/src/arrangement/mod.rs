//! Central arrangements of integer covectors.
//!
//! A hyperplane `{α - jz = 0}` in the coned space with basis `(α_1, ..., α_ℓ, z)`
//! is stored as the covector `(c_1, ..., c_ℓ, -j)` of `α - jz`. Only the
//! linear matroid of the covectors matters for the intersection lattice, so
//! no inner product is ever needed.

pub mod lattice;

use std::fmt;

use fixedbitset::FixedBitSet;
use indexmap::{IndexMap, IndexSet};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{linear_extension, LinearExtension};
use crate::linalg;
use crate::rootsys::{dual_partition, ExponentMultiset, Root, RootSystem, EXT_HEIGHT_Z};

use self::lattice::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A nonzero, primitive, sign-normalized integer linear form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Covector(Vec<i64>);

impl Covector {
    pub fn new(mut entries: Vec<i64>) -> Result<Self> {
        if entries.iter().all(|&x| x == 0) {
            return Err(Error::ZeroCovector);
        }
        if linalg::normalize_primitive(&mut entries).is_none() {
            return Err(Error::Precondition("covector entry out of range".into()));
        }
        Ok(Self(entries))
    }

    /// `α - jz` in `ℓ + 1` coordinates.
    pub fn affine_root(root: &Root, j: i64) -> Self {
        let mut entries = root.coeffs().to_vec();
        entries.push(-j);
        Self::new(entries).expect("roots are nonzero")
    }

    /// `z = 0` in `ℓ + 1` coordinates.
    pub fn coning(rank: usize) -> Self {
        let mut entries = vec![0; rank + 1];
        entries[rank] = 1;
        Self(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn max_abs_entry(&self) -> u64 {
        self.0.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A finite central arrangement, deduplicated, in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    ambient_dim: usize,
    hyperplanes: IndexSet<Covector>,
}

impl Arrangement {
    pub fn empty(ambient_dim: usize) -> Self {
        Self { ambient_dim, hyperplanes: IndexSet::new() }
    }

    pub fn from_covectors(ambient_dim: usize, covectors: impl IntoIterator<Item = Covector>) -> Result<Self> {
        let mut a = Self::empty(ambient_dim);
        for c in covectors {
            a.insert(c)?;
        }
        Ok(a)
    }

    pub fn from_rows(ambient_dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_covectors(ambient_dim, rows.iter().map(|r| Covector::new(r.clone())).collect::<Result<Vec<_>>>()?)
    }

    /// Returns whether the hyperplane was new.
    pub fn insert(&mut self, c: Covector) -> Result<bool> {
        if c.dim() != self.ambient_dim {
            return Err(Error::Dimension { expected: self.ambient_dim, got: c.dim() });
        }
        Ok(self.hyperplanes.insert(c))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn contains(&self, c: &Covector) -> bool {
        self.hyperplanes.contains(c)
    }

    pub fn index_of(&self, c: &Covector) -> Option<usize> {
        self.hyperplanes.get_index_of(c)
    }

    pub fn hyperplane(&self, i: usize) -> &Covector {
        &self.hyperplanes[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Covector> {
        self.hyperplanes.iter()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.hyperplanes.iter().map(|c| c.0.clone()).collect()
    }

    pub fn max_abs_entry(&self) -> u64 {
        self.hyperplanes.iter().map(Covector::max_abs_entry).max().unwrap_or(0)
    }

    /// Rank of the arrangement (codimension of the center).
    pub fn rank(&self) -> usize {
        linalg::rank_i64(&self.rows())
    }

    /// `A ∖ {H}`.
    pub fn deletion(&self, c: &Covector) -> Self {
        let mut hyperplanes = self.hyperplanes.clone();
        hyperplanes.shift_remove(c);
        Self { ambient_dim: self.ambient_dim, hyperplanes }
    }

    /// Sorted covector list; independent of insertion order.
    pub fn canonical_rows(&self) -> Vec<Vec<i64>> {
        let mut rows = self.rows();
        rows.sort();
        rows
    }
}

fn check_k(k: u64) -> Result<i64> {
    if k == 0 {
        return Err(Error::NonPositiveK(0));
    }
    Ok(k as i64)
}

fn check_subset(rs: &RootSystem, sigma: &FixedBitSet) -> Result<()> {
    if sigma.len() != rs.num_positive() {
        return Err(Error::Dimension { expected: rs.num_positive(), got: sigma.len() });
    }
    Ok(())
}

/// `Shi^k_{+Σ}`: `H_z`, `H_α^j` for `-k < j <= k`, and `H_α^{-k}` for `α ∈ Σ`.
pub fn shi_plus(rs: &RootSystem, k: u64, sigma: &FixedBitSet) -> Result<Arrangement> {
    let k = check_k(k)?;
    check_subset(rs, sigma)?;
    let mut a = Arrangement::empty(rs.rank() + 1);
    a.insert(Covector::coning(rs.rank()))?;
    for (i, root) in rs.positive_roots().iter().enumerate() {
        for j in (1 - k)..=k {
            a.insert(Covector::affine_root(root, j))?;
        }
        if sigma.contains(i) {
            a.insert(Covector::affine_root(root, -k))?;
        }
    }
    Ok(a)
}

/// `Shi^k_{-Σ}`: the `Shi^k` cone without `H_α^k` for `α ∈ Σ`.
pub fn shi_minus(rs: &RootSystem, k: u64, sigma: &FixedBitSet) -> Result<Arrangement> {
    let k = check_k(k)?;
    check_subset(rs, sigma)?;
    let mut a = Arrangement::empty(rs.rank() + 1);
    a.insert(Covector::coning(rs.rank()))?;
    for (i, root) in rs.positive_roots().iter().enumerate() {
        for j in (1 - k)..=k {
            if j == k && sigma.contains(i) {
                continue;
            }
            a.insert(Covector::affine_root(root, j))?;
        }
    }
    Ok(a)
}

pub fn shi(rs: &RootSystem, k: u64, sigma: &FixedBitSet, sign: Sign) -> Result<Arrangement> {
    match sign {
        Sign::Plus => shi_plus(rs, k, sigma),
        Sign::Minus => shi_minus(rs, k, sigma),
    }
}

/// `A(Σ) = {H_α : α ∈ Σ}` in `ℓ` coordinates.
pub fn root_arrangement(rs: &RootSystem, sigma: &FixedBitSet) -> Arrangement {
    let mut a = Arrangement::empty(rs.rank());
    for i in sigma.ones() {
        let c = Covector::new(rs.root(i).coeffs().to_vec()).expect("roots are nonzero");
        a.insert(c).expect("dimension matches");
    }
    a
}

/// `K_p` of the saturated filtration: `(root index, j)` with `H = H_α^j`.
///
/// With `p = 2nq + r`, `1 <= r <= 2n`: `K_p = H_r^{-q}` for `r <= n` and
/// `H_{2n+1-r}^{q+1}` otherwise, indices taken along `ext`.
pub fn filtration_hyperplane(ext: &LinearExtension, p: usize) -> (usize, i64) {
    assert!(p >= 1, "filtration indices start at 1");
    let n = ext.len();
    let q = (p - 1) / (2 * n);
    let r = p - 2 * n * q;
    if r <= n {
        (ext.order()[r - 1], -(q as i64))
    } else {
        (ext.order()[2 * n - r], q as i64 + 1)
    }
}

/// `A_i = {H_z, K_1, ..., K_{i-1}}` along the canonical linear extension.
pub fn filtration_step(rs: &RootSystem, i: usize) -> Arrangement {
    assert!(i >= 1, "filtration steps start at 1");
    let ext = linear_extension(rs);
    let mut a = Arrangement::empty(rs.rank() + 1);
    a.insert(Covector::coning(rs.rank())).expect("dimension matches");
    for p in 1..i {
        let (root, j) = filtration_hyperplane(&ext, p);
        a.insert(Covector::affine_root(rs.root(root), j)).expect("dimension matches");
    }
    a
}

/// Extended heights of `{z} ∪ {α - jz : H_α^j ∈ A_i}`.
pub fn filtration_ext_heights(rs: &RootSystem, i: usize) -> Vec<u64> {
    let ext = linear_extension(rs);
    let mut out = vec![EXT_HEIGHT_Z];
    for p in 1..i {
        let (root, j) = filtration_hyperplane(&ext, p);
        out.push(rs.ext_height(rs.root(root), j));
    }
    out
}

/// Dual-partition exponents predicted for `A_i`.
pub fn filtration_exponents(rs: &RootSystem, i: usize) -> Result<ExponentMultiset> {
    dual_partition(&filtration_ext_heights(rs, i), rs.rank() + 1)
}

/// Integer basis of the hyperplane `ker h`: with `p` the first nonzero
/// index, the vectors `h_p e_j - h_j e_p` for `j != p`, made primitive.
pub fn kernel_basis(h: &Covector) -> Vec<Vec<i64>> {
    let e = h.entries();
    let n = e.len();
    let p = linalg::pivot_of(e);
    (0..n)
        .filter(|&j| j != p)
        .map(|j| {
            let mut v = vec![0i64; n];
            v[j] = e[p];
            v[p] = -e[j];
            linalg::normalize_primitive(&mut v).expect("entries are small");
            v
        })
        .collect()
}

/// The trace of `k` on `ker h0`, in the coordinates of [`kernel_basis`].
fn trace_on(k: &Covector, basis: &[Vec<i64>]) -> Option<Covector> {
    let entries: Vec<i64> = basis
        .iter()
        .map(|b| b.iter().zip(k.entries()).map(|(x, y)| x * y).sum())
        .collect();
    Covector::new(entries).ok()
}

fn check_h0(a: &Arrangement, h0: &Covector) -> Result<()> {
    if h0.dim() != a.ambient_dim() {
        return Err(Error::Dimension { expected: a.ambient_dim(), got: h0.dim() });
    }
    if a.ambient_dim() < 2 {
        return Err(Error::Precondition("restriction needs ambient dimension at least 2".into()));
    }
    Ok(())
}

/// `A ∩ H0 = {K ∩ H0 : K ∈ A, K != H0}` as an arrangement in `H0`.
///
/// `H0` need not belong to `A`.
pub fn restriction(a: &Arrangement, h0: &Covector) -> Result<Arrangement> {
    check_h0(a, h0)?;
    let basis = kernel_basis(h0);
    let mut out = Arrangement::empty(a.ambient_dim() - 1);
    for k in a.iter().filter(|k| *k != h0) {
        let t = trace_on(k, &basis).expect("distinct normalized hyperplanes have nonzero trace");
        out.insert(t)?;
    }
    Ok(out)
}

pub fn intersection_count(a: &Arrangement, h0: &Covector) -> Result<usize> {
    Ok(restriction(a, h0)?.len())
}

/// Ziegler restriction `(A^{H0}, m0)`; `m0` is aligned with the hyperplanes of
/// the returned arrangement.
pub fn ziegler_multiplicity(a: &Arrangement, h0: &Covector) -> Result<(Arrangement, Vec<u64>)> {
    check_h0(a, h0)?;
    if !a.contains(h0) {
        return Err(Error::NotInArrangement);
    }
    let basis = kernel_basis(h0);
    let mut counts: IndexMap<Covector, u64> = IndexMap::new();
    for k in a.iter().filter(|k| *k != h0) {
        let t = trace_on(k, &basis).expect("distinct normalized hyperplanes have nonzero trace");
        *counts.entry(t).or_insert(0) += 1;
    }
    let restricted = Arrangement::from_covectors(a.ambient_dim() - 1, counts.keys().cloned())?;
    Ok((restricted, counts.into_values().collect()))
}

/// `A_X = {H ∈ A : X ⊆ H}` for a flat `X` of `A`.
pub fn localization(a: &Arrangement, x: &Subspace) -> Result<Arrangement> {
    if x.ambient_dim() != a.ambient_dim() {
        return Err(Error::Dimension { expected: a.ambient_dim(), got: x.ambient_dim() });
    }
    let members: Vec<Covector> = a.iter().filter(|h| x.is_contained_in(h)).cloned().collect();
    let span = Subspace::from_covectors(a.ambient_dim(), members.iter());
    if &span != x {
        return Err(Error::NotAFlat);
    }
    Arrangement::from_covectors(a.ambient_dim(), members)
}
