//! Canonical subspaces and the intersection lattice.
//!
//! A flat `X` is stored through its annihilator: the row space of the
//! covectors vanishing on `X`, in canonical integer echelon form. Equal
//! subspaces therefore have equal representations.

use std::collections::HashMap;
use std::ops::Range;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Arrangement, Covector};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{self, canonical_rref, in_row_space};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Rows {
    Small(Vec<Vec<i64>>),
    Big(Vec<Vec<BigInt>>),
}

/// A linear subspace of the ambient space, in canonical form.
///
/// `Rows::Small` is used exactly when every canonical entry fits in `i64`,
/// which keeps the representation unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Rows,
}

impl Subspace {
    pub fn whole(ambient_dim: usize) -> Self {
        Self { ambient_dim, rows: Rows::Small(Vec::new()) }
    }

    /// The common zero set of `covectors`.
    pub fn from_covectors<'a>(ambient_dim: usize, covectors: impl IntoIterator<Item = &'a Covector>) -> Self {
        let rows: Vec<Vec<i64>> = covectors.into_iter().map(|c| c.entries().to_vec()).collect();
        Self::from_small_rows(ambient_dim, rows)
    }

    fn from_small_rows(ambient_dim: usize, rows: Vec<Vec<i64>>) -> Self {
        match canonical_rref(&rows) {
            Some(r) => Self { ambient_dim, rows: Rows::Small(r) },
            None => Self::from_big_rows(ambient_dim, linalg::to_big(&rows)),
        }
    }

    fn from_big_rows(ambient_dim: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let r = canonical_rref(&rows).expect("bigint arithmetic is infallible");
        let rows = match linalg::try_to_small(&r) {
            Some(small) => Rows::Small(small),
            None => Rows::Big(r),
        };
        Self { ambient_dim, rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn codim(&self) -> usize {
        match &self.rows {
            Rows::Small(r) => r.len(),
            Rows::Big(r) => r.len(),
        }
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.codim()
    }

    /// Canonical annihilator rows.
    pub fn annihilator(&self) -> Vec<Vec<BigInt>> {
        match &self.rows {
            Rows::Small(r) => linalg::to_big(r),
            Rows::Big(r) => r.clone(),
        }
    }

    /// Whether this subspace lies inside the hyperplane `ker h`.
    pub fn is_contained_in(&self, h: &Covector) -> bool {
        match &self.rows {
            Rows::Small(r) => in_row_space(r, h.entries()).unwrap_or_else(|| {
                let big: Vec<BigInt> = h.entries().iter().map(|&x| BigInt::from(x)).collect();
                in_row_space(&linalg::to_big(r), &big).expect("bigint arithmetic is infallible")
            }),
            Rows::Big(r) => {
                let big: Vec<BigInt> = h.entries().iter().map(|&x| BigInt::from(x)).collect();
                in_row_space(r, &big).expect("bigint arithmetic is infallible")
            }
        }
    }

    /// `self ∩ ker h`.
    pub fn meet(&self, h: &Covector) -> Self {
        match &self.rows {
            Rows::Small(r) => {
                let mut rows = r.clone();
                rows.push(h.entries().to_vec());
                Self::from_small_rows(self.ambient_dim, rows)
            }
            Rows::Big(r) => {
                let mut rows = r.clone();
                rows.push(h.entries().iter().map(|&x| BigInt::from(x)).collect());
                Self::from_big_rows(self.ambient_dim, rows)
            }
        }
    }
}

/// Size guards for lattice construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeBounds {
    pub max_hyperplanes: usize,
    pub max_ambient_dim: usize,
    pub max_flats: usize,
}

impl Default for LatticeBounds {
    fn default() -> Self {
        Self { max_hyperplanes: 256, max_ambient_dim: 5, max_flats: 4_000_000 }
    }
}

impl LatticeBounds {
    pub fn check(&self, a: &Arrangement) -> Result<()> {
        if a.len() > self.max_hyperplanes {
            return Err(Error::LatticeBound(format!(
                "{} hyperplanes exceed the bound {}",
                a.len(),
                self.max_hyperplanes
            )));
        }
        if a.ambient_dim() > self.max_ambient_dim {
            return Err(Error::LatticeBound(format!(
                "ambient dimension {} exceeds the bound {}",
                a.ambient_dim(),
                self.max_ambient_dim
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Flat {
    pub subspace: Subspace,
    /// Hyperplanes of the arrangement containing this flat.
    pub hyperplanes: FixedBitSet,
    pub mobius: BigInt,
    /// Flats one codimension lower that contain this one.
    pub lower_covers: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    ambient_dim: usize,
    num_hyperplanes: usize,
    flats: Vec<Flat>,
    levels: Vec<Range<usize>>,
    index: HashMap<Subspace, usize>,
}

impl IntersectionLattice {
    pub fn build(a: &Arrangement) -> Result<Self> {
        Self::build_with(a, &LatticeBounds::default(), Execution::Sequential)
    }

    /// Level-by-level construction: each flat of codimension `c` is met with
    /// every hyperplane not containing it. Hyperplanes already containing a
    /// cover found from the same flat are skipped, so every generated pair is
    /// a cover relation. Ids are assigned in first-discovery order, which is
    /// independent of the execution mode.
    pub fn build_with(a: &Arrangement, bounds: &LatticeBounds, exec: Execution) -> Result<Self> {
        bounds.check(a)?;
        let n = a.ambient_dim();
        let m = a.len();
        let hyperplanes: Vec<&Covector> = a.iter().collect();
        let root = Flat {
            subspace: Subspace::whole(n),
            hyperplanes: FixedBitSet::with_capacity(m),
            mobius: BigInt::one(),
            lower_covers: Vec::new(),
        };
        let mut index = HashMap::from([(root.subspace.clone(), 0)]);
        let mut flats = vec![root];
        let mut levels = vec![0..1];
        loop {
            let current = levels.last().expect("level 0 exists").clone();
            let discovered: Vec<Vec<(Subspace, FixedBitSet)>> = exec.map_range(current.clone(), |x| {
                let flat = &flats[x];
                let mut covered = flat.hyperplanes.clone();
                let mut out = Vec::new();
                for h in 0..m {
                    if covered.contains(h) {
                        continue;
                    }
                    let y = flat.subspace.meet(hyperplanes[h]);
                    let mut members = flat.hyperplanes.clone();
                    members.insert(h);
                    for t in 0..m {
                        if !members.contains(t) && y.is_contained_in(hyperplanes[t]) {
                            members.insert(t);
                        }
                    }
                    covered.union_with(&members);
                    out.push((y, members));
                }
                out
            });
            let start = flats.len();
            for (x, covers) in current.zip(discovered) {
                for (y, members) in covers {
                    let id = match index.get(&y) {
                        Some(&id) => id,
                        None => {
                            let id = flats.len();
                            index.insert(y.clone(), id);
                            flats.push(Flat {
                                subspace: y,
                                hyperplanes: members,
                                mobius: BigInt::zero(),
                                lower_covers: Vec::new(),
                            });
                            id
                        }
                    };
                    flats[id].lower_covers.push(x);
                }
            }
            if flats.len() > bounds.max_flats {
                return Err(Error::LatticeBound(format!("more than {} flats", bounds.max_flats)));
            }
            if flats.len() == start {
                break;
            }
            levels.push(start..flats.len());
        }
        let mut lattice = Self { ambient_dim: n, num_hyperplanes: m, flats, levels, index };
        lattice.compute_mobius(exec);
        Ok(lattice)
    }

    /// `μ(X) = -Σ μ(Y)` over flats `Y ⊋ X`, gathered by walking lower covers.
    fn compute_mobius(&mut self, exec: Execution) {
        let total = self.flats.len();
        for level in self.levels.clone().into_iter().skip(1) {
            let flats = &self.flats;
            let values: Vec<BigInt> = exec.map_range(level.clone(), |x| {
                let mut seen = FixedBitSet::with_capacity(total);
                let mut stack = flats[x].lower_covers.clone();
                let mut sum = BigInt::zero();
                while let Some(y) = stack.pop() {
                    if seen.put(y) {
                        continue;
                    }
                    sum += &flats[y].mobius;
                    stack.extend(flats[y].lower_covers.iter().copied().filter(|&w| !seen.contains(w)));
                }
                -sum
            });
            for (x, mu) in level.zip(values) {
                self.flats[x].mobius = mu;
            }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.num_hyperplanes
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// Rank of the arrangement: the top codimension.
    pub fn rank(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, codim: usize) -> &[Flat] {
        self.levels.get(codim).map_or(&[], |r| &self.flats[r.clone()])
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|r| r.len()).collect()
    }

    pub fn find(&self, x: &Subspace) -> Option<&Flat> {
        self.index.get(x).map(|&i| &self.flats[i])
    }

    /// `Σ_{X ∈ L_c} μ(X)` for each codimension `c`.
    pub fn mobius_sums(&self) -> Vec<BigInt> {
        self.levels
            .iter()
            .map(|r| self.flats[r.clone()].iter().map(|f| &f.mobius).sum())
            .collect()
    }
}
