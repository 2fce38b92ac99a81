//! Case construction and the per-case check matrix.

use std::time::Instant;

use fixedbitset::FixedBitSet;

use idealshi::arrangement::{filtration_exponents, filtration_hyperplane, filtration_step, root_arrangement, shi};
use idealshi::cache::LatticeCache;
use idealshi::charpoly::{
    charpoly_finite_field_auto, charpoly_mobius_with, charpoly_whitney, try_factor_exponents, WHITNEY_MAX_HYPERPLANES,
};
use idealshi::ideals::{enumerate_ideals, is_ideal, linear_extension};
use idealshi::multiarr::{exp_rank2_multi, shift_predict, yoshinaga_check};
use idealshi::{
    Arrangement, CharPoly, Covector, Execution, ExponentMultiset, Ideal, LatticeBounds, Result, RootSystem, Sign,
};

use crate::report::{Check, Record, SubsetDesc, SubsetKind, VerificationCase, Verdict};

/// Shared settings for one invocation.
#[derive(Clone, Debug)]
pub struct Context {
    pub cache: Option<LatticeCache>,
    pub bounds: LatticeBounds,
    pub max_hyperplanes: usize,
    pub timings: bool,
}

impl Context {
    pub fn charpoly(&self, a: &Arrangement) -> Result<CharPoly> {
        match &self.cache {
            Some(c) => c.charpoly(a, &self.bounds, Execution::Sequential),
            None => charpoly_mobius_with(a, &self.bounds, Execution::Sequential),
        }
    }

    /// Reason to skip, if `a` is beyond the configured bounds.
    fn guard(&self, rs: &RootSystem, k: u64, a: &Arrangement) -> Option<String> {
        let rank = rs.rank();
        if rank >= 5 {
            return Some(format!("rank {rank} is beyond the supported campaign range"));
        }
        if rank == 4 && k > 1 {
            return Some(format!("rank 4 runs only for k = 1 (got k = {k})"));
        }
        if a.len() > self.max_hyperplanes {
            return Some(format!("{} hyperplanes exceed --max-hyperplanes {}", a.len(), self.max_hyperplanes));
        }
        self.bounds.check(a).err().map(|e| e.to_string())
    }
}

/// A resolved `Σ` with its descriptor.
#[derive(Clone, Debug)]
pub struct Subset {
    pub members: FixedBitSet,
    pub desc: SubsetDesc,
}

impl Subset {
    fn new(rs: &RootSystem, members: FixedBitSet, ideal_index: Option<usize>) -> Self {
        let roots = members.ones().map(|i| rs.root(i).to_string()).collect();
        let desc = SubsetDesc {
            kind: if ideal_index.is_some() { SubsetKind::Ideal } else { SubsetKind::Roots },
            ideal_index,
            roots,
            is_ideal: is_ideal(rs, &members),
        };
        Subset { members, desc }
    }

    pub fn ideal(&self, rs: &RootSystem) -> Option<Ideal> {
        self.desc.is_ideal.then(|| Ideal::new(rs, self.members.clone()).expect("checked ideal"))
    }
}

/// `"a1+a2,a1"`; `"none"` or an empty string is `∅`.
pub fn parse_subset(rs: &RootSystem, s: &str) -> Result<Subset> {
    let mut members = FixedBitSet::with_capacity(rs.num_positive());
    let s = s.trim();
    if !(s.is_empty() || s.eq_ignore_ascii_case("none")) {
        for part in s.split(',') {
            members.insert(rs.parse_root(part.trim())?);
        }
    }
    Ok(Subset::new(rs, members, None))
}

pub fn all_ideals(rs: &RootSystem) -> Result<Vec<Subset>> {
    Ok(enumerate_ideals(rs)?
        .into_iter()
        .enumerate()
        .map(|(i, ideal)| Subset::new(rs, ideal.members().clone(), Some(i)))
        .collect())
}

pub fn ideal_by_index(rs: &RootSystem, index: usize) -> Result<Subset> {
    let ideals = enumerate_ideals(rs)?;
    let count = ideals.len();
    let ideal = ideals
        .into_iter()
        .nth(index)
        .ok_or_else(|| idealshi::Error::Precondition(format!("ideal index {index} out of range (0..{count})")))?;
    Ok(Subset::new(rs, ideal.members().clone(), Some(index)))
}

fn check(name: &str, verdict: Verdict, detail: impl Into<String>) -> Check {
    Check { name: name.into(), verdict, detail: detail.into() }
}

fn pass_or_fail(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn multiplicity(rs: &RootSystem, lines: &Arrangement, sigma: &FixedBitSet) -> Vec<u64> {
    let mut m = vec![0; lines.len()];
    for i in sigma.ones() {
        let c = Covector::new(rs.root(i).coeffs().to_vec()).expect("roots are nonzero");
        m[lines.index_of(&c).expect("root line")] = 1;
    }
    m
}

struct Outcome {
    predicted: Option<ExponentMultiset>,
    chi: Option<CharPoly>,
    checks: Vec<Check>,
    verdict: Verdict,
    detail: String,
}

fn skipped(reason: String) -> Outcome {
    Outcome { predicted: None, chi: None, checks: Vec::new(), verdict: Verdict::Skipped, detail: reason }
}

/// Runs the check matrix on `Shi^k_{±Σ}`.
pub fn verify_case(ctx: &Context, rs: &RootSystem, k: u64, subset: &Subset, sign: Sign) -> Result<Record> {
    let start = Instant::now();
    let a = shi(rs, k, &subset.members, sign)?;
    let outcome = match ctx.guard(rs, k, &a) {
        Some(reason) => skipped(reason),
        None => match subset.ideal(rs) {
            Some(ideal) => verify_ideal(ctx, rs, k, &ideal, sign, &a)?,
            None if a.ambient_dim() == 3 => verify_rank2_subset(ctx, rs, k, subset, sign, &a)?,
            None => verify_subset_by_chi(ctx, rs, k, subset, sign, &a)?,
        },
    };
    let case = VerificationCase {
        ty: rs.ty().to_string(),
        k: Some(k),
        sign: Some(sign.to_string()),
        subset: Some(subset.desc.clone()),
        step: None,
        added: None,
    };
    Ok(finish(ctx, case, &a, outcome, start))
}

fn finish(ctx: &Context, case: VerificationCase, a: &Arrangement, o: Outcome, start: Instant) -> Record {
    Record {
        case,
        hyperplanes: a.len(),
        ambient_dim: a.ambient_dim(),
        predicted_exponents: o.predicted,
        chi: o.chi.as_ref().map(CharPoly::coeff_strings),
        chi_display: o.chi.as_ref().map(ToString::to_string),
        verdict: o.verdict,
        checks: o.checks,
        detail: o.detail,
        elapsed_ms: ctx.timings.then(|| start.elapsed().as_secs_f64() * 1e3),
    }
}

fn verify_ideal(ctx: &Context, rs: &RootSystem, k: u64, ideal: &Ideal, sign: Sign, a: &Arrangement) -> Result<Outcome> {
    let predicted = rs.shi_exponents_dp(k, ideal, sign)?;
    let chi = ctx.charpoly(a)?;
    let terao_ok = chi == CharPoly::from_roots(&predicted);
    let mut checks = vec![check(
        "terao",
        pass_or_fail(terao_ok),
        if terao_ok { "χ = ∏(t - e_i)".to_string() } else { format!("χ does not match {predicted}") },
    )];
    if a.ambient_dim() == 3 {
        let y = yoshinaga_check(a, &Covector::coning(rs.rank()))?;
        let ok = y.exponents().as_ref() == Some(&predicted);
        checks.push(check(
            "yoshinaga",
            pass_or_fail(ok),
            format!("χ0(0) = {}, d1·d2 = {}·{} = {}", y.chi0_at_zero, y.d1, y.d2, y.product()),
        ));
    }
    let verdict = pass_or_fail(checks.iter().all(|c| c.verdict == Verdict::Pass));
    let mut detail = checks.iter().map(|c| format!("{}: {}", c.name, c.detail)).collect::<Vec<_>>().join("; ");
    if a.ambient_dim() > 3 && verdict == Verdict::Pass {
        detail.push_str(" (consistent with freeness; not a certificate in this dimension)");
    }
    Ok(Outcome { predicted: Some(predicted), chi: Some(chi), checks, verdict, detail })
}

/// Rank-2 root system, arbitrary `Σ`: freeness is decided exactly, and is
/// expected iff `Σ` is empty or contains a simple root.
fn verify_rank2_subset(
    ctx: &Context,
    rs: &RootSystem,
    k: u64,
    subset: &Subset,
    sign: Sign,
    a: &Arrangement,
) -> Result<Outcome> {
    let sigma = &subset.members;
    let mut all = FixedBitSet::with_capacity(rs.num_positive());
    all.insert_range(..);
    let lines = root_arrangement(rs, &all);
    let (m1, m2) = exp_rank2_multi(&lines, &multiplicity(rs, &lines, sigma))?;
    let h = rs.coxeter_number();
    let mut predicted = shift_predict(&ExponentMultiset::new(vec![m1, m2]), k, h, sign)?.parts().to_vec();
    predicted.push(1);
    let predicted = ExponentMultiset::new(predicted);
    let expect_free = sigma.is_clear() || rs.simple_indices().any(|i| sigma.contains(i));
    let chi = ctx.charpoly(a)?;
    let y = yoshinaga_check(a, &Covector::coning(rs.rank()))?;
    let witness = format!("χ0(0) = {}, d1·d2 = {}·{} = {}", y.chi0_at_zero, y.d1, y.d2, y.product());
    let (verdict, detail) = match (y.free, expect_free) {
        (true, true) => {
            let ok = y.exponents().as_ref() == Some(&predicted) && chi == CharPoly::from_roots(&predicted);
            let detail = if ok { format!("free; {witness}") } else { format!("free with unexpected exponents; {witness}") };
            (pass_or_fail(ok), detail)
        }
        (false, false) => (Verdict::NotFreeConfirmed, format!("not free: {witness}")),
        (true, false) => (Verdict::Fail, format!("free although Σ avoids the simple roots; {witness}")),
        (false, true) => (Verdict::Fail, format!("not free although Σ meets the simple roots; {witness}")),
    };
    let checks = vec![check("yoshinaga", verdict, detail.clone())];
    Ok(Outcome { predicted: Some(predicted), chi: Some(chi), checks, verdict, detail })
}

/// Rank ≥ 3, `Σ` not an ideal: only the characteristic polynomial is
/// available, which can refute freeness but not certify it.
fn verify_subset_by_chi(
    ctx: &Context,
    rs: &RootSystem,
    k: u64,
    subset: &Subset,
    sign: Sign,
    a: &Arrangement,
) -> Result<Outcome> {
    let chi = ctx.charpoly(a)?;
    let base = ctx.charpoly(&root_arrangement(rs, &subset.members))?;
    let predicted = try_factor_exponents(&base).ok().and_then(|m| {
        let mut parts = shift_predict(&m, k, rs.coxeter_number(), sign).ok()?.parts().to_vec();
        parts.push(1);
        Some(ExponentMultiset::new(parts))
    });
    let (verdict, detail) = match try_factor_exponents(&chi) {
        Err(_) => (Verdict::NotFreeConfirmed, "χ has no factorization into (t - e_i) with e_i ≥ 0".to_string()),
        Ok(found) if Some(&found) == predicted.as_ref() => {
            (Verdict::Pass, format!("χ splits as {found}, matching the shifted exponents of A(Σ); freeness not certified"))
        }
        Ok(found) => (Verdict::Skipped, format!("χ splits as {found}; freeness not decidable from χ")),
    };
    let checks = vec![check("chi-factorization", verdict, detail.clone())];
    Ok(Outcome { predicted, chi: Some(chi), checks, verdict, detail })
}

/// Steps `1..=steps` of the saturated filtration.
pub fn filtration_records(ctx: &Context, rs: &RootSystem, steps: usize) -> Result<Vec<Record>> {
    let ext = linear_extension(rs);
    let mut out = Vec::with_capacity(steps);
    let mut prev: Option<Arrangement> = None;
    for i in 1..=steps {
        let start = Instant::now();
        let a = filtration_step(rs, i);
        let added = if i == 1 {
            "H_z".to_string()
        } else {
            let (root, j) = filtration_hyperplane(&ext, i - 1);
            format!("H[{}; {j}]", rs.root(root))
        };
        let case = VerificationCase {
            ty: rs.ty().to_string(),
            k: None,
            sign: None,
            subset: None,
            step: Some(i),
            added: Some(added),
        };
        let outcome = if let Some(reason) = ctx.guard(rs, 1, &a) {
            skipped(reason)
        } else {
            let predicted = filtration_exponents(rs, i)?;
            let chi = ctx.charpoly(&a)?;
            let nested = a.len() == i && prev.as_ref().is_none_or(|p| p.iter().all(|h| a.contains(h)));
            let terao = chi == CharPoly::from_roots(&predicted);
            let checks = vec![
                check("saturation", pass_or_fail(nested), format!("|A_{i}| = {}", a.len())),
                check("terao", pass_or_fail(terao), if terao { "χ = ∏(t - e_i)" } else { "χ mismatch" }),
            ];
            let verdict = pass_or_fail(nested && terao);
            let detail = checks.iter().map(|c| format!("{}: {}", c.name, c.detail)).collect::<Vec<_>>().join("; ");
            Outcome { predicted: Some(predicted), chi: Some(chi), checks, verdict, detail }
        };
        out.push(finish(ctx, case, &a, outcome, start));
        prev = Some(a);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Mobius,
    Whitney,
    FiniteField,
    All,
}

/// `χ(Shi^k_{±Σ})` by the requested method(s); `PASS` means the methods
/// agree.
pub fn charpoly_case(ctx: &Context, rs: &RootSystem, k: u64, subset: &Subset, sign: Sign, method: Method) -> Result<Record> {
    let start = Instant::now();
    let a = shi(rs, k, &subset.members, sign)?;
    let case = VerificationCase {
        ty: rs.ty().to_string(),
        k: Some(k),
        sign: Some(sign.to_string()),
        subset: Some(subset.desc.clone()),
        step: None,
        added: None,
    };
    let outcome = if let Some(reason) = ctx.guard(rs, k, &a) {
        skipped(reason)
    } else {
        let mut results: Vec<(&str, CharPoly)> = Vec::new();
        if matches!(method, Method::Mobius | Method::All) {
            results.push(("mobius", ctx.charpoly(&a)?));
        }
        if matches!(method, Method::Whitney) || (method == Method::All && a.len() <= WHITNEY_MAX_HYPERPLANES) {
            results.push(("whitney", charpoly_whitney(&a)?));
        }
        if matches!(method, Method::FiniteField | Method::All) {
            results.push(("finite-field", charpoly_finite_field_auto(&a, Execution::Sequential)?));
        }
        let chi = results[0].1.clone();
        let checks: Vec<Check> = results
            .iter()
            .map(|(name, p)| check(name, pass_or_fail(*p == chi), p.to_string()))
            .collect();
        let verdict = pass_or_fail(checks.iter().all(|c| c.verdict == Verdict::Pass));
        let predicted = match subset.ideal(rs) {
            Some(ideal) => Some(rs.shi_exponents_dp(k, &ideal, sign)?),
            None => None,
        };
        let detail = match try_factor_exponents(&chi) {
            Ok(e) => format!("χ splits with roots {e}"),
            Err(f) => format!("χ does not split; residual {}", f.residual),
        };
        Outcome { predicted, chi: Some(chi), checks, verdict, detail }
    };
    Ok(finish(ctx, case, &a, outcome, start))
}
