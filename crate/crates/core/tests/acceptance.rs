//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use idealshi::arrangement::{
    filtration_exponents, filtration_step, intersection_count, restriction, root_arrangement, shi, shi_minus, shi_plus,
    ziegler_multiplicity,
};
use idealshi::charpoly::{
    charpoly_finite_field_auto, charpoly_mobius, charpoly_mobius_with, charpoly_whitney, terao_check, terao_check_against,
    WHITNEY_MAX_HYPERPLANES,
};
use idealshi::ideals::{enumerate_ideals, ideal_exponents};
use idealshi::multiarr::{exp_rank2_multi, yoshinaga_check};
use idealshi::{
    Arrangement, CharPoly, Covector, Execution, ExponentMultiset, LatticeBounds, RootSystem, RootSystemType, Sign,
};

type Outcome = Result<String, String>;

fn rs(name: &str) -> RootSystem {
    RootSystem::from_type_str(name).unwrap()
}

fn ex(v: &[u64]) -> ExponentMultiset {
    ExponentMultiset::new(v.to_vec())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Height of a root as its coefficient sum.
fn coeff_height(rs: &RootSystem, i: usize) -> u64 {
    rs.root(i).coeffs().iter().sum::<i64>() as u64
}

/// Conjugate of the multiplicity sequence `c_i = |{v : v = i}|`, padded with
/// zeros to `d` parts.
fn conjugate_partition(values: &[u64], d: usize) -> Vec<u64> {
    let top = values.iter().copied().max().unwrap_or(0);
    let counts: Vec<usize> = (1..=top).map(|i| values.iter().filter(|&&v| v == i).count()).collect();
    let mut parts: Vec<u64> = (1..=d).map(|j| counts.iter().filter(|&&c| c >= j).count() as u64).collect();
    parts.sort_unstable();
    parts
}

fn all_subsets(n: usize) -> impl Iterator<Item = FixedBitSet> {
    (0u64..1 << n).map(move |mask| {
        let mut s = FixedBitSet::with_capacity(n);
        for i in 0..n {
            if mask >> i & 1 == 1 {
                s.insert(i);
            }
        }
        s
    })
}

fn full_set(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

fn mobius_par(a: &Arrangement) -> CharPoly {
    charpoly_mobius_with(a, &LatticeBounds::default(), Execution::Parallel).unwrap()
}

fn criterion_1() -> Outcome {
    let table: [(&str, &[u64]); 7] = [
        ("A2", &[1, 2]),
        ("B2", &[1, 3]),
        ("G2", &[1, 5]),
        ("A3", &[1, 2, 3]),
        ("B3", &[1, 3, 5]),
        ("B4", &[1, 3, 5, 7]),
        ("F4", &[1, 5, 7, 11]),
    ];
    for (name, expected) in table {
        let r = rs(name);
        let got = r.weyl_exponents();
        let heights: Vec<u64> = (0..r.num_positive()).map(|i| coeff_height(&r, i)).collect();
        let oracle = conjugate_partition(&heights, r.rank());
        ensure(got.parts() == expected, || format!("{name}: weyl_exponents {got}, expected {expected:?}"))?;
        ensure(oracle == expected, || format!("{name}: conjugate partition {oracle:?}"))?;
        ensure(got.largest() == Some(r.coxeter_number() - 1), || format!("{name}: largest part is not h-1"))?;
        ensure(got.sum() == r.num_positive() as u64, || format!("{name}: part sum is not |Φ+|"))?;
    }
    Ok("7 systems".into())
}

const CAMPAIGN: [&str; 5] = ["A2", "B2", "G2", "A3", "B3"];

fn criterion_2() -> Outcome {
    let mut n = 0;
    for name in CAMPAIGN {
        let r = rs(name);
        for k in 1..=2u64 {
            let a = shi_plus(&r, k, &FixedBitSet::with_capacity(r.num_positive())).unwrap();
            let kh = k * r.coxeter_number();
            let mut roots = vec![1];
            roots.extend(std::iter::repeat_n(kh, r.rank()));
            let expected = CharPoly::from_roots(&ex(&roots));
            let got = mobius_par(&a);
            ensure(got == expected, || format!("{name} k={k}: χ = {got}, expected {expected}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} identities"))
}

fn criterion_3() -> Outcome {
    let mut cases = Vec::new();
    let mut ideal_total = 0;
    for name in CAMPAIGN {
        let r = rs(name);
        let ideals = enumerate_ideals(&r).unwrap();
        ideal_total += ideals.len();
        for k in 1..=2u64 {
            for ideal in &ideals {
                for sign in [Sign::Plus, Sign::Minus] {
                    cases.push((name, k, ideal.clone(), sign));
                }
            }
        }
    }
    ensure(ideal_total == 53, || format!("{ideal_total} ideals, expected 53"))?;
    let results = Execution::Parallel.map(&cases, |(name, k, ideal, sign)| {
        let r = rs(name);
        let a = shi(&r, *k, ideal.members(), *sign).unwrap();
        let predicted = r.shi_exponents_dp(*k, ideal, *sign).unwrap();
        let ext: Vec<u64> = r.shi_ext_heights(*k, ideal, *sign);
        let oracle = conjugate_partition(&ext, r.rank() + 1);
        let verdict = terao_check_against(charpoly_mobius(&a).unwrap(), a.ambient_dim(), &predicted).unwrap();
        (verdict.pass && predicted.parts() == oracle, format!("{name} k={k} {sign} I={:?}: {}", ideal.iter().collect::<Vec<_>>(), verdict.computed))
    });
    let failures: Vec<&String> = results.iter().filter(|(ok, _)| !ok).map(|(_, m)| m).collect();
    ensure(failures.is_empty(), || format!("{} failures, first: {}", failures.len(), failures[0]))?;
    Ok(format!("{} identities", results.len()))
}

fn multiplicity_for(r: &RootSystem, lines: &Arrangement, sigma: &FixedBitSet, base: u64, sign: Sign) -> Vec<u64> {
    let mut m = vec![base; lines.len()];
    for i in 0..r.num_positive() {
        let c = Covector::new(r.root(i).coeffs().to_vec()).unwrap();
        let idx = lines.index_of(&c).expect("root line present");
        if sigma.contains(i) {
            m[idx] = match sign {
                Sign::Plus => base + 1,
                Sign::Minus => base - 1,
            };
        }
    }
    m
}

fn criterion_4() -> Outcome {
    let mut checks = 0;
    let mut free_count = 0;
    for name in ["A2", "B2", "G2"] {
        let r = rs(name);
        let n = r.num_positive();
        let hz = Covector::coning(r.rank());
        let lines = root_arrangement(&r, &full_set(n));
        let h = r.coxeter_number();
        for sigma in all_subsets(n) {
            let touches_simple = r.simple_indices().any(|i| sigma.contains(i));
            let expect_free = sigma.is_clear() || touches_simple;
            let m = multiplicity_for(&r, &lines, &sigma, 0, Sign::Plus);
            let (m1, m2) = exp_rank2_multi(&lines, &m).unwrap();
            for k in 1..=2u64 {
                let plus = yoshinaga_check(&shi_plus(&r, k, &sigma).unwrap(), &hz).unwrap();
                let minus = yoshinaga_check(&shi_minus(&r, k, &sigma).unwrap(), &hz).unwrap();
                let label = || format!("{name} k={k} Σ={:?}", sigma.ones().collect::<Vec<_>>());
                ensure(plus.free == expect_free && minus.free == expect_free, || {
                    format!("{}: free(+)={} free(-)={} expected {expect_free}", label(), plus.free, minus.free)
                })?;
                if expect_free {
                    let kh = k * h;
                    ensure(plus.exponents() == Some(ex(&[1, kh + m1, kh + m2])), || format!("{}: + exponents", label()))?;
                    ensure(minus.exponents() == Some(ex(&[1, kh - m1, kh - m2])), || format!("{}: - exponents", label()))?;
                    for (v, a) in [(&plus, shi_plus(&r, k, &sigma).unwrap()), (&minus, shi_minus(&r, k, &sigma).unwrap())] {
                        let chi = charpoly_mobius(&a).unwrap();
                        ensure(chi == CharPoly::from_roots(&v.exponents().unwrap()), || format!("{}: χ does not split", label()))?;
                    }
                    free_count += 1;
                }
                checks += 1;
            }
        }
    }
    let r = rs("A2");
    let mut sigma = FixedBitSet::with_capacity(3);
    sigma.insert(r.parse_root("a1+a2").unwrap());
    let w = yoshinaga_check(&shi_plus(&r, 1, &sigma).unwrap(), &Covector::coning(2)).unwrap();
    ensure(!w.free && w.chi0_at_zero == BigInt::from(13) && w.product() == BigInt::from(12), || {
        format!("A2 witness: χ0(0)={} d1d2={}", w.chi0_at_zero, w.product())
    })?;
    Ok(format!("{checks} (Φ,k,Σ) cases, {free_count} free, witness 13 vs 12"))
}

fn criterion_5() -> Outcome {
    let mut n = 0;
    for ty in RootSystemType::all_up_to_rank(3) {
        let r = RootSystem::build(ty);
        for ideal in enumerate_ideals(&r).unwrap() {
            let a = root_arrangement(&r, ideal.members());
            let exps = ideal_exponents(&r, &ideal).unwrap();
            let heights: Vec<u64> = ideal.iter().map(|i| coeff_height(&r, i)).collect();
            ensure(exps.parts() == conjugate_partition(&heights, r.rank()), || format!("{ty}: ideal exponents {exps}"))?;
            let v = terao_check(&a, &exps).unwrap();
            ensure(v.pass, || format!("{ty} I={:?}: χ = {}, predicted {exps}", ideal.iter().collect::<Vec<_>>(), v.computed))?;
            n += 1;
        }
    }
    Ok(format!("{n} ideals"))
}

fn cross(u: &[i64], v: &[i64]) -> [i64; 3] {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

/// `|A ∩ H0|` in 3-space: each `K ∩ H0` is the line spanned by `K × H0`.
fn brute_count(a: &Arrangement, h0: &Covector) -> usize {
    let mut lines: Vec<[i64; 3]> = Vec::new();
    for k in a.iter().filter(|k| *k != h0) {
        let mut d = cross(k.entries(), h0.entries());
        let g = d.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
        assert!(g != 0, "parallel hyperplanes");
        d.iter_mut().for_each(|x| *x /= g);
        if d.iter().find(|&&x| x != 0).copied().unwrap_or(0) < 0 {
            d.iter_mut().for_each(|x| *x = -*x);
        }
        if !lines.contains(&d) {
            lines.push(d);
        }
    }
    lines.len()
}

fn criterion_6() -> Outcome {
    let mut n = 0;
    for name in ["A2", "B2", "G2"] {
        let r = rs(name);
        let np = r.num_positive();
        let h = r.coxeter_number();
        for sigma in all_subsets(np) {
            let sigma_simple = r.simple_indices().any(|i| sigma.contains(i));
            for k in 1..=3u64 {
                let plus = shi_plus(&r, k, &sigma).unwrap();
                let minus = shi_minus(&r, k, &sigma).unwrap();
                for alpha in (0..np).filter(|&i| !sigma.contains(i)) {
                    let special = r.root(alpha).is_simple() && !sigma_simple;
                    let kh = (k * h) as usize;
                    let h_minus = Covector::affine_root(r.root(alpha), -(k as i64));
                    let h_plus = Covector::affine_root(r.root(alpha), k as i64);
                    let want1 = if special { kh + 1 } else { kh + 2 };
                    let want2 = if special { kh + 1 } else { kh };
                    let got1 = intersection_count(&plus, &h_minus).unwrap();
                    let got2 = intersection_count(&minus, &h_plus).unwrap();
                    let label = || format!("{name} k={k} Σ={:?} α={}", sigma.ones().collect::<Vec<_>>(), r.root(alpha));
                    ensure(got1 == want1 && brute_count(&plus, &h_minus) == want1, || format!("{}: part (1) {got1} vs {want1}", label()))?;
                    ensure(got2 == want2 && brute_count(&minus, &h_plus) == want2, || format!("{}: part (2) {got2} vs {want2}", label()))?;
                    n += 2;
                }
            }
        }
    }
    Ok(format!("{n} counts"))
}

fn criterion_7() -> Outcome {
    let mut n = 0;
    for name in ["A2", "B2"] {
        let r = rs(name);
        let mut prev: Option<Arrangement> = None;
        for i in 1..=40 {
            let a = filtration_step(&r, i);
            ensure(a.len() == i, || format!("{name} step {i}: |A_i| = {}", a.len()))?;
            if let Some(p) = &prev {
                ensure(p.iter().all(|h| a.contains(h)), || format!("{name} step {i}: not nested"))?;
            }
            let predicted = filtration_exponents(&r, i).unwrap();
            let v = terao_check_against(mobius_par(&a), a.ambient_dim(), &predicted).unwrap();
            ensure(v.pass, || format!("{name} step {i}: χ = {}, predicted {predicted}", v.computed))?;
            prev = Some(a);
            n += 1;
        }
    }
    Ok(format!("{n} steps"))
}

fn criterion_8() -> Outcome {
    let mut n = 0;
    for ty in RootSystemType::all_up_to_rank(4) {
        let r = RootSystem::build(ty);
        let l = r.rank();
        let h = r.coxeter_number();
        let mut g = vec![0usize; h as usize + 2];
        for i in 0..r.num_positive() {
            g[coeff_height(&r, i) as usize] += 1;
        }
        ensure(g[1] == l && g[h as usize] == 0, || format!("{ty}: g_1 = {}, g_h = {}", g[1], g[h as usize]))?;
        for i in 1..=h as usize {
            ensure(g[i] + g[h as usize - i + 1] == l, || format!("{ty}: g_{i} + g_(h-i+1) != ℓ"))?;
        }
        for k in 1..=3u64 {
            let kh = k * h;
            for idx in 0..r.num_positive() {
                let root = r.root(idx);
                for j in (1 - k as i64)..=(k as i64) {
                    let e = r.ext_height(root, j);
                    ensure((1..=kh).contains(&e), || format!("{ty} k={k}: ext height of {root} at j={j} is {e}"))?;
                    ensure(j <= 0 || e > 1, || format!("{ty} k={k}: ext height of {root} at j={j} is 1"))?;
                }
                let e = r.ext_height(root, -(k as i64));
                ensure((kh + 1..=(k + 1) * h - 1).contains(&e), || format!("{ty} k={k}: ext height of {root} at j=-k is {e}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} (Φ,k,α) range checks"))
}

fn oracle_corpus() -> Vec<(String, Arrangement)> {
    let mut corpus = Vec::new();
    for (name, ks) in [("A2", 1..=2u64), ("B2", 1..=2), ("G2", 1..=2), ("A3", 1..=1), ("B3", 1..=1), ("C3", 1..=1)] {
        let r = rs(name);
        let ideals = enumerate_ideals(&r).unwrap();
        for k in ks {
            for ideal in &ideals {
                for sign in [Sign::Plus, Sign::Minus] {
                    let label = format!("Shi^{k}_{sign}I({name}, {:?})", ideal.iter().collect::<Vec<_>>());
                    corpus.push((label, shi(&r, k, ideal.members(), sign).unwrap()));
                }
            }
        }
    }
    for name in ["A2", "B2", "G2", "A3", "B3", "C3", "A4", "B4", "C4", "D4"] {
        let r = rs(name);
        corpus.push((format!("A({name})"), root_arrangement(&r, &full_set(r.num_positive()))));
    }
    for name in ["A2", "B2"] {
        let r = rs(name);
        for i in 1..=20 {
            corpus.push((format!("filtration {name} step {i}"), filtration_step(&r, i)));
        }
    }
    corpus
}

fn criterion_9() -> Outcome {
    let corpus = oracle_corpus();
    let results = Execution::Parallel.map(&corpus, |(label, a)| -> Result<bool, String> {
        let mobius = charpoly_mobius(a).map_err(|e| format!("{label}: {e}"))?;
        let ff = charpoly_finite_field_auto(a, Execution::Sequential).map_err(|e| format!("{label}: {e}"))?;
        ensure(ff == mobius, || format!("{label}: finite field {ff} vs Möbius {mobius}"))?;
        if a.len() <= WHITNEY_MAX_HYPERPLANES {
            let w = charpoly_whitney(a).map_err(|e| format!("{label}: {e}"))?;
            ensure(w == mobius, || format!("{label}: Whitney {w} vs Möbius {mobius}"))?;
            return Ok(true);
        }
        Ok(false)
    });
    let mut whitney = 0;
    for r in results {
        whitney += usize::from(r?);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut samples = Vec::new();
    while samples.len() < 100 {
        let (label, a) = corpus.choose(&mut rng).unwrap();
        if a.len() < 2 {
            continue;
        }
        let h = a.hyperplane(rng.gen_range(0..a.len())).clone();
        samples.push((label.clone(), a.clone(), h));
    }
    let dr = Execution::Parallel.map(&samples, |(label, a, h)| -> Result<(), String> {
        let whole = charpoly_mobius(a).unwrap();
        let del = charpoly_mobius(&a.deletion(h)).unwrap();
        let res = charpoly_mobius(&restriction(a, h).unwrap()).unwrap();
        // χ(A) = χ(A') - χ(A''), with χ(A'') one degree lower.
        ensure(whole == del.sub(&res), || format!("{label} minus {h:?}: {whole} != {del} - ({res})"))
    });
    for r in dr {
        r?;
    }
    Ok(format!("{} arrangements ({whitney} also by subset sum), 100 deletion-restriction samples", corpus.len()))
}

fn criterion_10() -> Outcome {
    let grid: [(&str, u64); 6] = [("A2", 3), ("B2", 3), ("G2", 3), ("A3", 2), ("B3", 2), ("C3", 2)];
    let mut n = 0;
    for (name, kmax) in grid {
        let r = rs(name);
        let np = r.num_positive();
        let hz = Covector::coning(r.rank());
        let lines = root_arrangement(&r, &full_set(np));
        for sigma in all_subsets(np) {
            for k in 1..=kmax {
                for sign in [Sign::Plus, Sign::Minus] {
                    let a = shi(&r, k, &sigma, sign).unwrap();
                    let (restricted, m0) = ziegler_multiplicity(&a, &hz).unwrap();
                    let want = multiplicity_for(&r, &lines, &sigma, 2 * k, sign);
                    ensure(restricted.len() == lines.len(), || format!("{name}: {} restricted lines", restricted.len()))?;
                    for (c, m) in restricted.iter().zip(&m0) {
                        let idx = lines.index_of(c).ok_or_else(|| format!("{name}: stray line {c:?}"))?;
                        ensure(*m == want[idx], || {
                            format!("{name} k={k} {sign} Σ={:?}: multiplicity {m} on {c:?}, want {}", sigma.ones().collect::<Vec<_>>(), want[idx])
                        })?;
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} restrictions"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("dual-partition Weyl exponents", criterion_1),
        ("Shi exponents", criterion_2),
        ("ideal-Shi exponent campaign", criterion_3),
        ("rank-2 freeness classification", criterion_4),
        ("ideal subarrangement exponents", criterion_5),
        ("restriction counts", criterion_6),
        ("saturated filtration", criterion_7),
        ("extended-height ranges and height symmetry", criterion_8),
        ("oracle agreement and deletion-restriction", criterion_9),
        ("Ziegler multiplicities", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
