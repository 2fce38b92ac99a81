//! Exact characteristic polynomials.
//!
//! [`charpoly_mobius`] is authoritative. [`charpoly_whitney`] (signed subset
//! sum) and [`charpoly_finite_field`] (complement point counts over prime
//! fields) are independent cross-checks.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::lattice::{IntersectionLattice, LatticeBounds};
use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg;
use crate::rootsys::ExponentMultiset;

/// Dense polynomial in `t`; `coeffs[i]` is the coefficient of `t^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharPoly {
    #[serde(with = "decimal_strings")]
    coeffs: Vec<BigInt>,
}

mod decimal_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| c.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

impl CharPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `∏ (t - e)` over the multiset.
    pub fn from_roots(roots: &ExponentMultiset) -> Self {
        let mut p = Self::from_i64(&[1]);
        for &e in roots.parts() {
            p = p.mul_linear(&BigInt::from(e));
        }
        p
    }

    /// `t^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// `self * (t - r)`.
    fn mul_linear(&self, r: &BigInt) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * r;
        }
        Self::from_coeffs(out)
    }

    /// Synthetic division by `(t - r)`: quotient and remainder.
    pub fn div_linear(&self, r: &BigInt) -> (Self, BigInt) {
        let n = self.degree();
        if n == 0 {
            return (Self::from_i64(&[0]), self.coeffs[0].clone());
        }
        let mut q = vec![BigInt::zero(); n];
        let mut carry = BigInt::zero();
        for i in (0..=n).rev() {
            let v = &self.coeffs[i] + &carry * r;
            if i == 0 {
                return (Self::from_coeffs(q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Self, i: usize| p.coeffs.get(i).cloned().unwrap_or_default();
        Self::from_coeffs((0..n).map(|i| get(self, i) - get(other, i)).collect())
    }

    /// Coefficients as decimal strings, constant term first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(first && i == 0) {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// `χ(A, t) = Σ_X μ(X) t^{dim X}` over the intersection lattice.
pub fn charpoly_mobius(a: &Arrangement) -> Result<CharPoly> {
    charpoly_mobius_with(a, &LatticeBounds::default(), Execution::Sequential)
}

pub fn charpoly_mobius_with(a: &Arrangement, bounds: &LatticeBounds, exec: Execution) -> Result<CharPoly> {
    let lattice = IntersectionLattice::build_with(a, bounds, exec)?;
    Ok(charpoly_from_lattice(&lattice))
}

pub fn charpoly_from_lattice(lattice: &IntersectionLattice) -> CharPoly {
    charpoly_from_mobius_sums(lattice.ambient_dim(), &lattice.mobius_sums())
}

/// Assembles `χ` from the per-codimension Möbius sums.
pub fn charpoly_from_mobius_sums(ambient_dim: usize, sums: &[BigInt]) -> CharPoly {
    let mut coeffs = vec![BigInt::zero(); ambient_dim + 1];
    for (codim, s) in sums.iter().enumerate() {
        coeffs[ambient_dim - codim] += s;
    }
    CharPoly::from_coeffs(coeffs)
}

/// Largest arrangement accepted by [`charpoly_whitney`].
pub const WHITNEY_MAX_HYPERPLANES: usize = 22;

/// `χ(A, t) = Σ_{B ⊆ A} (-1)^{|B|} t^{n - rank B}`.
pub fn charpoly_whitney(a: &Arrangement) -> Result<CharPoly> {
    if a.len() > WHITNEY_MAX_HYPERPLANES {
        return Err(Error::SizeBound(format!(
            "{} hyperplanes exceed the subset-sum bound {WHITNEY_MAX_HYPERPLANES}",
            a.len()
        )));
    }
    let rows = a.rows();
    let n = a.ambient_dim();
    let counts = whitney_counts::<i64>(&rows, n)
        .unwrap_or_else(|| whitney_counts::<BigInt>(&linalg::to_big(&rows), n).expect("bigint arithmetic is infallible"));
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (r, (even, odd)) in counts.iter().enumerate() {
        coeffs[n - r] += BigInt::from(*even) - BigInt::from(*odd);
    }
    Ok(CharPoly::from_coeffs(coeffs))
}

/// Depth-first include/exclude over the hyperplanes, carrying an echelon
/// basis of the chosen covectors. Returns `(even, odd)` subset counts per rank.
fn whitney_counts<T: linalg::ExactInt>(rows: &[Vec<T>], n: usize) -> Option<Vec<(u64, u64)>> {
    fn reduce<T: linalg::ExactInt>(basis: &[Vec<T>], v: &[T]) -> Option<Option<Vec<T>>> {
        let mut w = v.to_vec();
        for b in basis {
            let p = linalg::pivot_of(b);
            if w[p].is_zero() {
                continue;
            }
            let (bp, wp) = (b[p].clone(), w[p].clone());
            for (x, y) in w.iter_mut().zip(b) {
                *x = x.checked_mul(&bp)?.checked_sub(&wp.checked_mul(y)?)?;
            }
            linalg::normalize_primitive(&mut w)?;
        }
        Some(if w.iter().all(linalg::ExactInt::is_zero) { None } else { Some(w) })
    }

    fn walk<T: linalg::ExactInt>(
        rows: &[Vec<T>],
        i: usize,
        basis: &mut Vec<Vec<T>>,
        size: usize,
        counts: &mut [(u64, u64)],
    ) -> Option<()> {
        if i == rows.len() {
            let slot = &mut counts[basis.len()];
            if size.is_multiple_of(2) {
                slot.0 += 1;
            } else {
                slot.1 += 1;
            }
            return Some(());
        }
        walk(rows, i + 1, basis, size, counts)?;
        match reduce(basis, &rows[i])? {
            Some(w) => {
                basis.push(w);
                walk(rows, i + 1, basis, size + 1, counts)?;
                basis.pop();
            }
            None => walk(rows, i + 1, basis, size + 1, counts)?,
        }
        Some(())
    }

    let mut counts = vec![(0u64, 0u64); n + 1];
    walk(rows, 0, &mut Vec::new(), 0, &mut counts)?;
    Some(counts)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The `count` smallest primes strictly greater than `above`.
pub fn primes_above(above: u64, count: usize) -> Vec<u64> {
    (above + 1..).filter(|&p| is_prime(p)).take(count).collect()
}

/// Number of points of `F_q^n` lying on no hyperplane of `A`.
///
/// Points are grouped by their first nonzero coordinate, normalized to 1, so
/// each projective point is visited once and scaled by `q - 1`. The origin
/// counts only for the empty arrangement.
pub fn count_complement(a: &Arrangement, q: u64, exec: Execution) -> u64 {
    let n = a.ambient_dim();
    let m = a.len();
    let rows: Vec<Vec<u64>> = a
        .iter()
        .map(|c| c.entries().iter().map(|&x| x.rem_euclid(q as i64) as u64).collect())
        .collect();
    let origin = u64::from(m == 0);
    if n == 0 {
        return origin;
    }
    // Work items: (lead index, value of the first free coordinate when present).
    let mut items = Vec::new();
    for lead in 0..n {
        if lead + 1 < n {
            items.extend((0..q).map(|v| (lead, Some(v))));
        } else {
            items.push((lead, None));
        }
    }
    let per_item = exec.map(&items, |&(lead, first)| {
        let mut partial: Vec<u64> = rows.iter().map(|r| r[lead]).collect();
        let mut start = lead + 1;
        if let Some(v) = first {
            for (p, r) in partial.iter_mut().zip(&rows) {
                *p = (*p + v * r[start]) % q;
            }
            start += 1;
        }
        count_free(&rows, &partial, start, n, q)
    });
    let projective: u64 = per_item.iter().sum();
    projective * (q - 1) + origin
}

/// Points with coordinates `start..n` free, given partial dot products.
fn count_free(rows: &[Vec<u64>], partial: &[u64], start: usize, n: usize, q: u64) -> u64 {
    if start == n {
        return u64::from(partial.iter().all(|&d| d != 0));
    }
    let mut total = 0;
    let mut next = partial.to_vec();
    for v in 0..q {
        for ((x, p), r) in next.iter_mut().zip(partial).zip(rows) {
            *x = (p + v * r[start]) % q;
        }
        total += count_free(rows, &next, start + 1, n, q);
    }
    total
}

/// Smallest admissible prime bound: primes must exceed every entry and `n + 1`.
pub fn minimal_prime_bound(a: &Arrangement) -> u64 {
    a.max_abs_entry().max(a.ambient_dim() as u64 + 1)
}

/// Interpolates `χ` from complement counts at the given primes.
///
/// The first `n + 1` primes determine the interpolant; it must be monic of
/// degree `n` with integer coefficients, and every further prime must agree
/// with it. Anything else is reported as bad reduction.
pub fn charpoly_finite_field(a: &Arrangement, primes: &[u64], exec: Execution) -> Result<CharPoly> {
    let n = a.ambient_dim();
    let bound = minimal_prime_bound(a);
    if primes.len() < n + 1 {
        return Err(Error::InvalidPrimes(format!("need at least {} primes, got {}", n + 1, primes.len())));
    }
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p) || p <= bound) {
        return Err(Error::InvalidPrimes(format!("{p} is not a prime above {bound}")));
    }
    let points: Vec<(BigInt, BigInt)> = primes
        .iter()
        .map(|&q| (BigInt::from(q), BigInt::from(count_complement(a, q, exec))))
        .collect();
    let (fit, extra) = points.split_at(n + 1);
    let coeffs = interpolate(fit);
    let mut ints = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        if !c.is_integer() {
            return Err(Error::BadReduction(format!("non-integral coefficient {c}")));
        }
        ints.push(c.to_integer());
    }
    let p = CharPoly::from_coeffs(ints);
    if p.degree() != n || !p.is_monic() {
        return Err(Error::BadReduction(format!("interpolant {p} is not monic of degree {n}")));
    }
    for (x, y) in extra {
        if &p.eval(x) != y {
            return Err(Error::BadReduction(format!("count at q = {x} disagrees with {p}")));
        }
    }
    Ok(p)
}

/// Runs [`charpoly_finite_field`] on `n + 2` consecutive admissible primes,
/// moving to larger primes after each bad-reduction flag.
pub fn charpoly_finite_field_auto(a: &Arrangement, exec: Execution) -> Result<CharPoly> {
    let n = a.ambient_dim();
    let mut above = minimal_prime_bound(a);
    let mut last = None;
    for _ in 0..8 {
        let primes = primes_above(above, n + 2);
        match charpoly_finite_field(a, &primes, exec) {
            Ok(p) => return Ok(p),
            Err(e @ Error::BadReduction(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
        above = *primes.last().expect("nonempty");
    }
    Err(last.expect("at least one attempt"))
}

/// Newton interpolation over the rationals; returns ascending coefficients.
fn interpolate(points: &[(BigInt, BigInt)]) -> Vec<BigRational> {
    let k = points.len();
    let xs: Vec<BigRational> = points.iter().map(|(x, _)| BigRational::from_integer(x.clone())).collect();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| BigRational::from_integer(y.clone())).collect();
    for level in 1..k {
        for i in (level..k).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton form.
    let mut coeffs = vec![BigRational::zero(); k];
    for i in (0..k).rev() {
        // coeffs <- coeffs * (t - x_i) + dd[i]
        let mut next = vec![BigRational::zero(); k];
        for j in 0..k {
            if coeffs[j].is_zero() {
                continue;
            }
            if j + 1 < k {
                next[j + 1] += &coeffs[j];
            }
            next[j] -= &coeffs[j] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

/// `χ_0 = χ / (t - 1)`.
pub fn chi0(p: &CharPoly) -> Result<CharPoly> {
    let (q, r) = p.div_linear(&BigInt::one());
    if !r.is_zero() {
        return Err(Error::NotDivisible);
    }
    Ok(q)
}

pub fn chi0_at_zero(a: &Arrangement) -> Result<BigInt> {
    Ok(chi0(&charpoly_mobius(a)?)?.coeffs()[0].clone())
}

/// A polynomial that does not split into `∏ (t - e)` with `e ∈ Z_{>=0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorFailure {
    /// Nonnegative integer roots extracted before getting stuck.
    pub roots: Vec<u64>,
    /// The remaining factor with no nonnegative integer root.
    pub residual: CharPoly,
}

/// Extracts nonnegative integer roots by synthetic division.
///
/// If `p` splits as `∏ (t - e_i)` with `e_i >= 0`, the roots sum to
/// `-coeff[n-1]`, so only candidates up to that bound are tried.
pub fn try_factor_exponents(p: &CharPoly) -> std::result::Result<ExponentMultiset, FactorFailure> {
    let mut current = p.clone();
    let mut roots = Vec::new();
    let fail = |roots: Vec<u64>, residual| Err(FactorFailure { roots, residual });
    if !p.is_monic() {
        return fail(roots, current);
    }
    while current.degree() > 0 {
        let n = current.degree();
        let bound = -current.coeffs()[n - 1].clone();
        let Some(bound) = bound.to_u64() else {
            return fail(roots, current);
        };
        let mut found = None;
        for r in 0..=bound {
            let (q, rem) = current.div_linear(&BigInt::from(r));
            if rem.is_zero() {
                found = Some((r, q));
                break;
            }
        }
        match found {
            Some((r, q)) => {
                roots.push(r);
                current = q;
            }
            None => return fail(roots, current),
        }
    }
    Ok(ExponentMultiset::new(roots))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeraoVerdict {
    pub pass: bool,
    pub computed: CharPoly,
    pub predicted: ExponentMultiset,
    pub predicted_poly: CharPoly,
}

/// Compares `χ(A, t)` with `∏ (t - e_i)` over the predicted exponents.
pub fn terao_check(a: &Arrangement, predicted: &ExponentMultiset) -> Result<TeraoVerdict> {
    terao_check_against(charpoly_mobius(a)?, a.ambient_dim(), predicted)
}

pub fn terao_check_against(computed: CharPoly, ambient_dim: usize, predicted: &ExponentMultiset) -> Result<TeraoVerdict> {
    if predicted.len() != ambient_dim {
        return Err(Error::Precondition(format!(
            "predicted multiset has {} parts, ambient dimension is {ambient_dim}",
            predicted.len()
        )));
    }
    let predicted_poly = CharPoly::from_roots(predicted);
    Ok(TeraoVerdict { pass: computed == predicted_poly, computed, predicted: predicted.clone(), predicted_poly })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{shi_minus, shi_plus};
    use crate::ideals::Ideal;
    use crate::rootsys::RootSystem;
    use fixedbitset::FixedBitSet;

    fn ex(v: &[u64]) -> ExponentMultiset {
        ExponentMultiset::new(v.to_vec())
    }

    fn a2() -> RootSystem {
        RootSystem::from_type_str("A2").unwrap()
    }

    fn boolean3() -> Arrangement {
        Arrangement::from_rows(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap()
    }

    fn subset(rs: &RootSystem, roots: &[&str]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(rs.num_positive());
        for r in roots {
            s.insert(rs.parse_root(r).unwrap());
        }
        s
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(charpoly_mobius(&boolean3()).unwrap(), CharPoly::from_roots(&ex(&[1, 1, 1])));
        let shi1 = shi_plus(&a2(), 1, &subset(&a2(), &[])).unwrap();
        assert_eq!(charpoly_mobius(&shi1).unwrap(), CharPoly::from_roots(&ex(&[1, 3, 3])));
        let cat = shi_plus(&a2(), 1, Ideal::full(3).members()).unwrap();
        assert_eq!(charpoly_mobius(&cat).unwrap(), CharPoly::from_roots(&ex(&[1, 4, 5])));
    }

    #[test]
    fn whitney_examples() {
        let line = Arrangement::from_rows(2, &[vec![1, 0]]).unwrap();
        assert_eq!(charpoly_whitney(&line).unwrap(), CharPoly::from_i64(&[0, -1, 1]));
        let weyl = shi_minus(&a2(), 1, Ideal::full(3).members()).unwrap();
        assert_eq!(charpoly_whitney(&weyl).unwrap(), CharPoly::from_roots(&ex(&[1, 1, 2])));
        let b2 = RootSystem::from_type_str("B2").unwrap();
        let shi_b2 = shi_plus(&b2, 1, &FixedBitSet::with_capacity(4)).unwrap();
        assert_eq!(charpoly_whitney(&shi_b2).unwrap(), CharPoly::from_roots(&ex(&[1, 4, 4])));
        let big = shi_plus(&b2, 3, &FixedBitSet::with_capacity(4)).unwrap();
        assert!(matches!(charpoly_whitney(&big), Err(Error::SizeBound(_))));
    }

    /// Direct enumeration of all of `F_q^n`.
    fn brute_count(a: &Arrangement, q: u64) -> u64 {
        let n = a.ambient_dim() as u32;
        (0..q.pow(n))
            .filter(|&idx| {
                let pt: Vec<i64> = (0..n).map(|i| (idx / q.pow(i) % q) as i64).collect();
                a.iter().all(|c| c.entries().iter().zip(&pt).map(|(x, y)| x * y).sum::<i64>().rem_euclid(q as i64) != 0)
            })
            .count() as u64
    }

    #[test]
    fn point_count_examples() {
        assert_eq!(count_complement(&Arrangement::empty(2), 5, Execution::Sequential), 25);
        let shi1 = shi_plus(&a2(), 1, &subset(&a2(), &[])).unwrap();
        assert_eq!(brute_count(&shi1, 7), 96);
        assert_eq!(count_complement(&shi1, 7, Execution::Sequential), 96);
        assert_eq!(count_complement(&shi1, 7, Execution::Parallel), 96);
        assert_eq!(count_complement(&boolean3(), 5, Execution::Sequential), 64);
        let cat = shi_plus(&a2(), 2, Ideal::full(3).members()).unwrap();
        for q in [11, 13] {
            assert_eq!(count_complement(&cat, q, Execution::Sequential), brute_count(&cat, q));
        }
    }

    #[test]
    fn finite_field_examples() {
        let empty = Arrangement::empty(2);
        assert_eq!(charpoly_finite_field_auto(&empty, Execution::Sequential).unwrap(), CharPoly::monomial(2));
        let shi1 = shi_plus(&a2(), 1, &subset(&a2(), &[])).unwrap();
        assert_eq!(
            charpoly_finite_field_auto(&shi1, Execution::Parallel).unwrap(),
            charpoly_mobius(&shi1).unwrap()
        );
        assert!(matches!(
            charpoly_finite_field(&shi1, &[5, 7], Execution::Sequential),
            Err(Error::InvalidPrimes(_))
        ));
        assert!(matches!(
            charpoly_finite_field(&shi1, &[5, 7, 9, 11], Execution::Sequential),
            Err(Error::InvalidPrimes(_))
        ));
    }

    #[test]
    fn bad_reduction_is_flagged() {
        // det((1,2),(1,-5)) = -7: the first two planes coincide modulo 7.
        let c = Arrangement::from_rows(3, &[vec![1, 2, 0], vec![1, -5, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        let res = charpoly_finite_field(&c, &[7, 11, 13, 17, 19], Execution::Sequential);
        assert!(matches!(res, Err(Error::BadReduction(_))), "{res:?}");
        let good = charpoly_finite_field(&c, &[11, 13, 17, 19, 23], Execution::Sequential).unwrap();
        assert_eq!(good, charpoly_mobius(&c).unwrap());
        assert_eq!(charpoly_finite_field_auto(&c, Execution::Sequential).unwrap(), good);
    }

    #[test]
    fn chi0_examples() {
        let rs = a2();
        let shi1 = shi_plus(&rs, 1, &subset(&rs, &[])).unwrap();
        assert_eq!(chi0(&charpoly_mobius(&shi1).unwrap()).unwrap(), CharPoly::from_roots(&ex(&[3, 3])));
        assert_eq!(chi0_at_zero(&shi1).unwrap(), BigInt::from(9));
        let s = shi_plus(&rs, 1, &subset(&rs, &["a1+a2"])).unwrap();
        assert_eq!(chi0_at_zero(&s).unwrap(), BigInt::from(13));
        let s = shi_plus(&rs, 1, &subset(&rs, &["a1"])).unwrap();
        assert_eq!(chi0_at_zero(&s).unwrap(), BigInt::from(12));
        assert_eq!(chi0(&CharPoly::from_i64(&[1, 0, 1])), Err(Error::NotDivisible));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(try_factor_exponents(&CharPoly::from_roots(&ex(&[1, 3, 3]))).unwrap(), ex(&[1, 3, 3]));
        let f = try_factor_exponents(&CharPoly::from_i64(&[1, 0, 1])).unwrap_err();
        assert_eq!(f.residual, CharPoly::from_i64(&[1, 0, 1]));
        assert_eq!(try_factor_exponents(&CharPoly::from_i64(&[-20, 29, -10, 1])).unwrap(), ex(&[1, 4, 5]));
        assert_eq!(try_factor_exponents(&CharPoly::monomial(3)).unwrap(), ex(&[0, 0, 0]));
        // negative root
        assert!(try_factor_exponents(&CharPoly::from_i64(&[1, 1])).is_err());
    }

    #[test]
    fn terao_examples() {
        let rs = a2();
        let shi1 = shi_plus(&rs, 1, &subset(&rs, &[])).unwrap();
        assert!(terao_check(&shi1, &ex(&[1, 3, 3])).unwrap().pass);
        let cat = shi_plus(&rs, 1, Ideal::full(3).members()).unwrap();
        assert!(terao_check(&cat, &ex(&[1, 4, 5])).unwrap().pass);
        assert!(!terao_check(&cat, &ex(&[1, 3, 3])).unwrap().pass);
        assert!(terao_check(&cat, &ex(&[1, 3])).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(CharPoly::from_roots(&ex(&[1, 3, 3])).to_string(), "t^3 - 7t^2 + 15t - 9");
        assert_eq!(CharPoly::from_i64(&[0]).to_string(), "0");
        assert_eq!(CharPoly::monomial(2).to_string(), "t^2");
    }
}
