//! Rank-2 multiarrangements and the rank-3 freeness criterion.
//!
//! For lines `H = ker(a x + b y)` with multiplicities `m(H)`, a derivation
//! `θ = P ∂_x + Q ∂_y` of degree `d` lies in `D(A, m)` when
//! `a P + b Q` is divisible by `(a x + b y)^{m(H)}`. In coordinates
//! `x = a s - b t`, `y = b s + a t` the form `a x + b y` becomes a multiple of
//! `s`, and the condition says the coefficients of `s^0 .. s^{m(H)-1}`
//! vanish. This is a linear system on the `2(d + 1)` coefficients of `P, Q`.
//!
//! Every rank-2 multiarrangement is free with `d_1 + d_2 = |m|` (Ziegler), so
//! the smallest degree with a nonzero solution determines both exponents.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arrangement::{ziegler_multiplicity, Arrangement, Covector, Sign};
use crate::charpoly::chi0_at_zero;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rootsys::ExponentMultiset;

/// A homogeneous derivation `P ∂_x + Q ∂_y` of degree `d`; `p[i]` and `q[i]`
/// are the coefficients of `x^i y^{d-i}`. Integer entries stand for a
/// rational derivation up to scaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation2D {
    pub p: Vec<BigInt>,
    pub q: Vec<BigInt>,
}

impl Derivation2D {
    pub fn degree(&self) -> usize {
        self.p.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.p.iter().chain(&self.q).all(Zero::is_zero)
    }

    /// `θ(a x + b y)` as a binary form of degree `d`.
    pub fn apply(&self, a: i64, b: i64) -> Vec<BigInt> {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        self.p.iter().zip(&self.q).map(|(p, q)| &a * p + &b * q).collect()
    }

    /// Checks every divisibility condition by dividing the binary form
    /// `θ(α_H)` by `α_H` repeatedly.
    pub fn satisfies(&self, a: &Arrangement, m: &[u64]) -> bool {
        a.iter().zip(m).all(|(h, &mult)| {
            let (x, y) = (h.entries()[0], h.entries()[1]);
            let mut form: Vec<BigRational> = self.apply(x, y).into_iter().map(BigRational::from_integer).collect();
            for _ in 0..mult {
                if form.iter().all(Zero::is_zero) {
                    return true;
                }
                match divide_binary_form(&form, x, y) {
                    Some(quotient) => form = quotient,
                    None => return false,
                }
            }
            true
        })
    }
}

/// Exact division of `Σ f_i x^i y^{g-i}` by `a x + b y`, if it divides.
fn divide_binary_form(f: &[BigRational], a: i64, b: i64) -> Option<Vec<BigRational>> {
    let g = f.len() - 1;
    if g == 0 {
        return f[0].is_zero().then(Vec::new);
    }
    let (a, b) = (BigRational::from_integer(a.into()), BigRational::from_integer(b.into()));
    // f_i = a q_{i-1} + b q_i, with q of degree g - 1.
    let mut q = vec![BigRational::zero(); g];
    if !b.is_zero() {
        q[0] = &f[0] / &b;
        for i in 1..g {
            q[i] = (&f[i] - &a * &q[i - 1]) / &b;
        }
        (f[g] == &a * &q[g - 1]).then_some(q)
    } else {
        for i in 1..=g {
            q[i - 1] = &f[i] / &a;
        }
        f[0].is_zero().then_some(q)
    }
}

fn check_rank2(a: &Arrangement, m: &[u64]) -> Result<()> {
    if a.ambient_dim() != 2 {
        return Err(Error::Dimension { expected: 2, got: a.ambient_dim() });
    }
    if m.len() != a.len() {
        return Err(Error::Dimension { expected: a.len(), got: m.len() });
    }
    if a.is_empty() {
        return Err(Error::Precondition("multiarrangement needs at least one line".into()));
    }
    Ok(())
}

/// Coefficient of `s^e t^{d-e}` in `x^i y^{d-i}` under the rotation.
fn rotated_monomial(a: i64, b: i64, d: usize) -> Vec<Vec<BigInt>> {
    // x = a s - b t, y = b s + a t.
    let pow_expand = |u: i64, v: i64, n: usize| -> Vec<BigInt> {
        // (u s + v t)^n by powers of s.
        (0..=n)
            .map(|e| binomial(BigInt::from(n), BigInt::from(e)) * BigInt::from(u).pow(e as u32) * BigInt::from(v).pow((n - e) as u32))
            .collect()
    };
    (0..=d)
        .map(|i| {
            let xs = pow_expand(a, -b, i);
            let ys = pow_expand(b, a, d - i);
            let mut out = vec![BigInt::zero(); d + 1];
            for (e1, c1) in xs.iter().enumerate() {
                for (e2, c2) in ys.iter().enumerate() {
                    out[e1 + e2] += c1 * c2;
                }
            }
            out
        })
        .collect()
}

fn constraint_matrix(a: &Arrangement, m: &[u64], d: usize) -> Vec<Vec<BigInt>> {
    let mut rows = Vec::new();
    for (h, &mult) in a.iter().zip(m) {
        let (x, y) = (h.entries()[0], h.entries()[1]);
        let mono = rotated_monomial(x, y, d);
        for e in 0..(mult as usize).min(d + 1) {
            let mut row = vec![BigInt::zero(); 2 * (d + 1)];
            for i in 0..=d {
                row[i] = BigInt::from(x) * &mono[i][e];
                row[d + 1 + i] = BigInt::from(y) * &mono[i][e];
            }
            rows.push(row);
        }
    }
    rows
}

/// Dimension of the degree-`d` part of `D(A, m)`.
pub fn derivation_space_dim(a: &Arrangement, m: &[u64], d: usize) -> Result<usize> {
    check_rank2(a, m)?;
    let rows = constraint_matrix(a, m, d);
    let r = linalg::rank(&rows).expect("bigint arithmetic is infallible");
    Ok(2 * (d + 1) - r)
}

/// A nonzero derivation of minimal degree in `D(A, m)`.
pub fn minimal_derivation(a: &Arrangement, m: &[u64]) -> Result<Derivation2D> {
    check_rank2(a, m)?;
    let total: u64 = m.iter().sum();
    for d in 0..=total as usize {
        let rows = constraint_matrix(a, m, d);
        let ns = linalg::null_space(&rows, 2 * (d + 1)).expect("bigint arithmetic is infallible");
        if let Some(v) = ns.into_iter().next() {
            let (p, q) = v.split_at(d + 1);
            return Ok(Derivation2D { p: p.to_vec(), q: q.to_vec() });
        }
    }
    unreachable!("the Euler-type derivation Q(A,m)-multiples exist by degree |m|")
}

/// Exponents `(d_1, d_2)`, `d_1 <= d_2`, of a rank-2 multiarrangement.
pub fn exp_rank2_multi(a: &Arrangement, m: &[u64]) -> Result<(u64, u64)> {
    let d1 = minimal_derivation(a, m)?.degree() as u64;
    let total: u64 = m.iter().sum();
    Ok((d1, total - d1))
}

/// `(kh ± m_1, ..., kh ± m_ℓ)`.
pub fn shift_predict(base: &ExponentMultiset, k: u64, h: u64, sign: Sign) -> Result<ExponentMultiset> {
    let kh = k * h;
    let parts = base
        .parts()
        .iter()
        .map(|&e| match sign {
            Sign::Plus => Ok(kh + e),
            Sign::Minus => kh
                .checked_sub(e)
                .ok_or_else(|| Error::Precondition(format!("exponent {e} exceeds kh = {kh}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExponentMultiset::new(parts))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YoshinagaVerdict {
    pub free: bool,
    pub d1: u64,
    pub d2: u64,
    #[serde(with = "bigint_string")]
    pub chi0_at_zero: BigInt,
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl YoshinagaVerdict {
    /// `(1, d_1, d_2)` when free.
    pub fn exponents(&self) -> Option<ExponentMultiset> {
        self.free.then(|| ExponentMultiset::new(vec![1, self.d1, self.d2]))
    }

    pub fn product(&self) -> BigInt {
        BigInt::from(self.d1) * BigInt::from(self.d2)
    }
}

/// A central arrangement in 3-space is free with exponents `(1, d_1, d_2)`
/// iff `χ_0(A, 0) = d_1 d_2`, where `(d_1, d_2)` are the exponents of its
/// Ziegler restriction onto `H0`.
pub fn yoshinaga_check(a: &Arrangement, h0: &Covector) -> Result<YoshinagaVerdict> {
    if a.ambient_dim() != 3 {
        return Err(Error::Dimension { expected: 3, got: a.ambient_dim() });
    }
    let (restricted, m0) = ziegler_multiplicity(a, h0)?;
    let (d1, d2) = exp_rank2_multi(&restricted, &m0)?;
    let chi0 = chi0_at_zero(a)?;
    let free = chi0 == BigInt::from(d1) * BigInt::from(d2);
    Ok(YoshinagaVerdict { free, d1, d2, chi0_at_zero: chi0 })
}
