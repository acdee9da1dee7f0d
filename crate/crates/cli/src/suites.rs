//! Verification suites.  Checks run in parallel; the report lists them in
//! declaration order.

use mac_core::affine::character::{affine_character, affine_weyl_invariant, freudenthal};
use mac_core::affine::extract::{
    commutator, default_samples, depth_zero_matches_finite, extract_affine_operator, holdout_residual,
    leading_terms_ok, Source,
};
use mac_core::affine::kernel::{affine_phi, finite_slice};
use mac_core::chars::WeightChar;
use mac_core::eigen::{check_polynomial_match, support_height};
use mac_core::macdonald::{apply_macdonald_symmetric, phi_kernel};
use mac_core::symfun::{dominant_below, monomial_symmetric};
use mac_core::uq::{verify_central_trace, verify_trace_identity};
use mac_exact::{LaurentPoly, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub const DEFAULT_SEED: u64 = 20261014;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

type Job = Box<dyn Fn() -> CheckResult + Send + Sync>;

fn ok(name: &str, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        pass: true,
        detail: detail.into(),
        witness: None,
    }
}

fn fail(name: &str, detail: impl Into<String>, witness: Option<Value>) -> CheckResult {
    CheckResult {
        name: name.into(),
        pass: false,
        detail: detail.into(),
        witness,
    }
}

fn run(suite: &str, jobs: Vec<Job>) -> SuiteReport {
    let checks: Vec<CheckResult> = jobs.par_iter().map(|f| f()).collect();
    SuiteReport {
        suite: suite.into(),
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}

/// A combination of one to three `m_μ`, `Σ|μ_i| ≤ 4`, integer coefficients.
pub fn random_symmetric(n: usize, rng: &mut ChaCha8Rng) -> LaurentPoly {
    let mut pool: Vec<Vec<i64>> = Vec::new();
    for d in 0i64..=4 {
        for last in [0i64, -1] {
            let mut top = vec![0i64; n];
            top[0] = d;
            top[n - 1] += last;
            if top.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            for mu in dominant_below(&top).unwrap_or_default() {
                if mu.iter().map(|x| x.abs()).sum::<i64>() <= 4 && !pool.contains(&mu) {
                    pool.push(mu);
                }
            }
        }
    }
    let mut f = LaurentPoly::zero(n);
    for _ in 0..rng.gen_range(1..=3) {
        let mu = &pool[rng.gen_range(0..pool.len())];
        let c = match rng.gen_range(-5i64..=5) {
            0 => 1,
            c => c,
        };
        f = f.add(&monomial_symmetric(mu).scale(&Scalar::from_i64(c)));
    }
    f
}

pub fn commute(n_max: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jobs: Vec<Job> = Vec::new();
    for n in 2..=n_max {
        for k in 0..5 {
            let f = random_symmetric(n, &mut rng);
            for r in 1..n {
                for s in (r + 1)..n {
                    let name = format!("[M^{r}, M^{s}] f_{k}, n = {n}");
                    let f = f.clone();
                    jobs.push(Box::new(move || {
                        let go = || -> Result<bool, String> {
                            let a = apply_macdonald_symmetric(n, s, &f).map_err(|e| e.to_string())?;
                            let rs = apply_macdonald_symmetric(n, r, &a).map_err(|e| e.to_string())?;
                            let b = apply_macdonald_symmetric(n, r, &f).map_err(|e| e.to_string())?;
                            let sr = apply_macdonald_symmetric(n, s, &b).map_err(|e| e.to_string())?;
                            Ok(rs == sr)
                        };
                        match go() {
                            Ok(true) => ok(&name, "0"),
                            Ok(false) => fail(&name, "nonzero", Some(json!({ "f": f }))),
                            Err(e) => fail(&name, e, None),
                        }
                    }));
                }
            }
            if n == 2 {
                // Only M^1 exists; check it preserves symmetry instead.
                let name = format!("M^1 f_{k} symmetric, n = 2");
                jobs.push(Box::new(move || match apply_macdonald_symmetric(2, 1, &f) {
                    Ok(_) => ok(&name, "symmetric"),
                    Err(e) => fail(&name, e.to_string(), Some(json!({ "f": f }))),
                }));
            }
        }
    }
    run("commute", jobs)
}

fn lambda_range() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for a in 0..=4i64 {
        for b in 0..=a {
            if a + b <= 4 {
                out.push(vec![a, b]);
            }
        }
    }
    for l in [[1, 0, 0], [1, 1, 0], [2, 0, 0], [2, 1, 0]] {
        out.push(l.to_vec());
    }
    out
}

pub fn polynomials() -> SuiteReport {
    let jobs: Vec<Job> = lambda_range()
        .into_iter()
        .map(|l| {
            let name = format!("ψ at θ_λ equals P_λ, λ = {l:?}");
            let job: Job = Box::new(move || {
                let r = support_height(&l).and_then(|h| check_polynomial_match(&l, h));
                match r {
                    Ok(rep) if rep.ok => ok(&name, format!("height {}", rep.height)),
                    Ok(rep) => fail(&name, "coefficients differ", Some(json!({ "beta": rep.mismatches }))),
                    Err(e) => fail(&name, e.to_string(), None),
                }
            });
            job
        })
        .collect();
    run("polynomials", jobs)
}

pub fn central_trace(d: usize) -> SuiteReport {
    let mut jobs: Vec<Job> = Vec::new();
    let name = format!("Ψ = φψ to depth {d}, symbolic σ");
    jobs.push(Box::new(move || {
        let th = WeightChar::symbolic_sl(2).unwrap();
        match verify_trace_identity(&th, d) {
            Ok(r) if r.status => ok(&name, "exact"),
            Ok(r) => fail(&name, "differs", Some(json!({ "beta": r.witness }))),
            Err(e) => fail(&name, e.to_string(), None),
        }
    }));
    let name2 = format!("Tr(Φ C₁ X) = M̃¹ Tr(Φ X) to depth {d}, symbolic σ");
    jobs.push(Box::new(move || {
        let th = WeightChar::symbolic_sl(2).unwrap();
        match verify_central_trace(&th, d) {
            Ok(r) if r.status => ok(&name2, "exact"),
            Ok(r) => fail(&name2, "differs", Some(json!({ "beta": r.witness }))),
            Err(e) => fail(&name2, e.to_string(), None),
        }
    }));
    run("central-trace", jobs)
}

pub fn affine(depth: u32, height: u32) -> SuiteReport {
    let mut jobs: Vec<Job> = Vec::new();
    for (n, d) in [(2usize, 4u32), (3, 2)] {
        for r in 0..2 {
            let name = format!("Weyl–Kac = Freudenthal, n = {n}, r = {r}, depth {d}");
            jobs.push(Box::new(move || {
                let go = || -> mac_core::Result<(bool, bool, String)> {
                    let ch = affine_character(n, r, d)?;
                    let f = freudenthal(n, r, d, ch.height)?;
                    let inv = affine_weyl_invariant(&ch)?;
                    Ok((ch.mults == f, inv, format!("L = {}, h = {}", ch.weyl_len, ch.height)))
                };
                match go() {
                    Ok((true, true, s)) => ok(&name, s),
                    Ok((a, b, s)) => fail(&name, format!("{s}; agree {a}, Ŵ-invariant {b}"), None),
                    Err(e) => fail(&name, e.to_string(), None),
                }
            }));
        }
    }
    let name = "affine φ restricts to φ, heights ≤ 4".to_string();
    jobs.push(Box::new(move || {
        for n in 2..=3usize {
            for m in [1, n as u32 - 1] {
                if finite_slice(&affine_phi(n, 2, 4, m)) != phi_kernel(n, 4) {
                    return fail(&name, "differs", Some(json!({ "n": n, "imag_mult": m })));
                }
            }
        }
        ok(&name, "n = 2, 3")
    }));
    let name = format!("extraction, depth {depth}, height {height}");
    jobs.push(Box::new(move || match extraction(depth, height) {
        Ok(Ok(s)) => ok(&name, s),
        Ok(Err((s, w))) => fail(&name, s, w),
        Err(e) => fail(&name, e.to_string(), None),
    }));
    run("affine", jobs)
}

type Outcome = Result<String, (String, Option<Value>)>;

fn extraction(depth: u32, height: u32) -> mac_core::Result<Outcome> {
    let mut ops = Vec::new();
    for r in 0..2 {
        let (zs, hold) = default_samples(r, depth)?;
        let ex = extract_affine_operator(r, &zs, depth, height, Source::Trace)?;
        if !leading_terms_ok(&ex.operator, r, Source::Trace)? {
            return Ok(Err((format!("r = {r}: leading coefficients"), None)));
        }
        if let Some(w) = holdout_residual(&ex.operator, r, &hold, Source::Trace)? {
            return Ok(Err((format!("r = {r}: holdout residual"), Some(json!(w)))));
        }
        ops.push(ex.operator);
    }
    if !depth_zero_matches_finite(&ops[1])? {
        return Ok(Err(("depth-0 slice differs from the finite operator".into(), None)));
    }
    if !commutator(&ops[0], &ops[1])?.is_zero() {
        return Ok(Err(("commutator nonzero".into(), None)));
    }
    Ok(Ok("holdout residual 0, commutator 0, imaginary multiplicity 1".into()))
}
