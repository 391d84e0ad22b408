//! Seeded verification suites behind the CLI `verify` subcommand.
//!
//! Five suites probe distinct layers of the library end to end:
//!
//! * `functional-eq` — reflection-formula residuals across the strip, the
//!   symmetry-point identity, the no-real-zero sign sweep, and the sieved
//!   norm-ratio findings;
//! * `chi` — agreement of the two centered-coefficient routes, the
//!   large-order decay bound, and the sign pattern;
//! * `melzak` — transform exactness on random polynomials, the two factorial
//!   identities, and the positive-coefficient decomposition;
//! * `interlace` — critical-line root completeness on random inputs, tangent
//!   zeros, the weighted product correlation, shift parity, the strict
//!   interlacing claim (which fails honestly at every tested order), and the
//!   cap-extraction findings;
//! * `reconstruct` — agreement of the two truncation forms and the
//!   deviation trend against the series reference.
//!
//! Every check records the measured value and the threshold it was judged
//! against. Checks flagged `finding` are reported context — values the
//! construction observes without asserting — and never fail a suite, so a
//! suite's pass/fail status always reflects assertable mathematics only.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::ops::CompleteRound;
use rug::{Float, Integer};

use crate::chi::{chi_direct, chi_exact};
use crate::complex::Complex;
use crate::error::Error;
use crate::euler::{norm_ratio15, norm_ratio15_rhs, PrimeList};
use crate::functional::{functional_eq_residual, kappa_prefactor};
use crate::interlace::{interlace_report, lambda_omega, omega_caps, reconstruct_eta_sym};
use crate::melzak::{
    epsilon_coeffs, gamma_half_ratio, identity62, identity64, melzak_transform, Polynomial,
};
use crate::precision::PrecisionContext;
use crate::refs::{eta_ref, zeta_ref};
use crate::shifts::d_shifts;
use crate::symfact::{combined_roots, sym_roots, tan_zeros49, SymmetrizedFactorial};
use crate::Result;

/// Names accepted by [`run_suite`], in canonical order (`all` runs the
/// other five in this order).
pub const SUITE_NAMES: &[&str] = &[
    "functional-eq",
    "chi",
    "melzak",
    "interlace",
    "reconstruct",
    "all",
];

/// One verification check: a measured value judged against a threshold,
/// or — when `finding` is set — an observation reported without judgment.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    /// Suite the check belongs to (stable identifier).
    pub suite: String,
    /// Stable check name.
    pub name: String,
    /// Reported-only observation: never fails the suite.
    pub finding: bool,
    /// Whether the check passed (always `true` for findings).
    pub passed: bool,
    /// The measured quantity (meaning documented per check in `detail`).
    pub measured: f64,
    /// Threshold the measurement was judged against (`NaN` for findings).
    pub threshold: f64,
    /// Human-readable explanation with the concrete numbers.
    pub detail: String,
}

/// Outcome of one suite run: the checks in execution order plus the
/// precision and seed that make the run reproducible.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    /// The requested suite name (possibly `all`).
    pub suite: String,
    /// Target precision the run used.
    pub bits: u32,
    /// Seed for the randomized instance draws.
    pub seed: u64,
    /// All checks, in execution order.
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    /// Whether every assertable (non-finding) check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.finding || c.passed)
    }

    /// The assertable checks that failed.
    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.checks
            .iter()
            .filter(|c| !c.finding && !c.passed)
            .collect()
    }
}

fn check(
    suite: &str,
    name: &str,
    passed: bool,
    measured: f64,
    threshold: f64,
    detail: String,
) -> CheckOutcome {
    CheckOutcome {
        suite: suite.to_string(),
        name: name.to_string(),
        finding: false,
        passed,
        measured,
        threshold,
        detail,
    }
}

fn finding(suite: &str, name: &str, measured: f64, detail: String) -> CheckOutcome {
    CheckOutcome {
        suite: suite.to_string(),
        name: name.to_string(),
        finding: true,
        passed: true,
        measured,
        threshold: f64::NAN,
        detail,
    }
}

/// Runs one named suite (or `all`) at the context's precision with the
/// given seed; identical inputs produce identical reports.
pub fn run_suite(suite: &str, ctx: &PrecisionContext, seed: u64) -> Result<SuiteReport> {
    let checks = match suite {
        "functional-eq" => functional_eq_suite(ctx, seed)?,
        "chi" => chi_suite(ctx, seed)?,
        "melzak" => melzak_suite(ctx, seed)?,
        "interlace" => interlace_suite(ctx, seed)?,
        "reconstruct" => reconstruct_suite(ctx, seed)?,
        "all" => {
            let mut all = functional_eq_suite(ctx, seed)?;
            all.extend(chi_suite(ctx, seed)?);
            all.extend(melzak_suite(ctx, seed)?);
            all.extend(interlace_suite(ctx, seed)?);
            all.extend(reconstruct_suite(ctx, seed)?);
            all
        }
        other => {
            return Err(Error::InvalidParam(format!(
                "unknown suite '{other}'; expected one of functional-eq, chi, \
                 melzak, interlace, reconstruct, all"
            )))
        }
    };
    Ok(SuiteReport {
        suite: suite.to_string(),
        bits: ctx.bits(),
        seed,
        checks,
    })
}

fn functional_eq_suite(ctx: &PrecisionContext, seed: u64) -> Result<Vec<CheckOutcome>> {
    const SUITE: &str = "functional-eq";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfe01);
    let p = ctx.working_bits();
    let mut checks = Vec::new();

    // Reflection-formula residual at 20 seeded strip points.
    let mut max_resid = 0.0f64;
    let mut worst = String::new();
    for _ in 0..20 {
        let sigma = rng.gen_range(0.05..0.95);
        let t = rng.gen_range(-30.0..30.0);
        let s = Complex::from_f64(p, sigma, t);
        let r = functional_eq_residual(&s, ctx)?.to_f64();
        if r > max_resid {
            max_resid = r;
            worst = format!("{sigma:.3}{t:+.3}i");
        }
    }
    checks.push(check(
        SUITE,
        "strip-residual",
        max_resid < 1e-12,
        max_resid,
        1e-12,
        format!(
            "max reflection-formula residual over 20 seeded strip points is \
             {max_resid:.3e} (worst at s = {worst})"
        ),
    ));

    // At the symmetry point the prefactor identity collapses to
    // kappa(1/2) zeta(1/2) = 2 eta(1/2).
    let half = Complex::from_f64(p, 0.5, 0.0);
    let kappa = kappa_prefactor(&half, ctx)?;
    let zeta_half = zeta_ref(&half, ctx)?.value;
    let eta_half = eta_ref(&half, ctx)?.value;
    let lhs = &kappa.to_prec(p) * &zeta_half.to_prec(p);
    let rhs = &eta_half.to_prec(p) + &eta_half.to_prec(p);
    let gap = lhs.dist(&rhs).to_f64();
    checks.push(check(
        SUITE,
        "symmetry-point",
        gap < 1e-12,
        gap,
        1e-12,
        format!(
            "|kappa(1/2) zeta(1/2) - 2 eta(1/2)| = {gap:.3e} \
             (both sides about {:.6})",
            rhs.re.to_f64()
        ),
    ));

    // No sign change of zeta on the real axis (0, 30] away from the pole:
    // negative below s = 1, positive above, with margin above sqrt(eps).
    let mut sign_ok = true;
    let mut min_margin = f64::INFINITY;
    let mut bad_at = String::new();
    for _ in 0..1000 {
        let mut x: f64 = rng.gen_range(0.001..30.0);
        if (x - 1.0).abs() < 0.01 {
            x += 0.02;
        }
        let s = Complex::from_f64(p, x, 0.0);
        let z = zeta_ref(&s, ctx)?.value.re.to_f64();
        if (z < 0.0) != (x < 1.0) {
            sign_ok = false;
            bad_at = format!("s = {x:.6}");
        }
        min_margin = min_margin.min(z.abs());
    }
    let margin_floor = 2.0f64.powi(-((ctx.bits() as i32 - 1) / 2));
    checks.push(check(
        SUITE,
        "real-axis-sign",
        sign_ok && min_margin > margin_floor,
        min_margin,
        margin_floor,
        if sign_ok {
            format!(
                "zeta stays negative on (0,1) and positive on (1,30] over \
                 1000 seeded samples; smallest magnitude {min_margin:.3e}"
            )
        } else {
            format!("unexpected zeta sign at {bad_at}")
        },
    ));

    // Sieved norm-ratio diagnostic: reported, never asserted.
    let primes = PrimeList::first(200)?;
    let on_line = norm_ratio15(&Complex::from_f64(p, 0.5, 0.0), 1, 1000, &primes, ctx)?.to_f64();
    checks.push(finding(
        SUITE,
        "norm-ratio-line",
        on_line,
        format!(
            "sieved norm ratio at s = 1/2 (k = 1, n = 1000) is {on_line:.8} \
             — the line forces 1 in the limit"
        ),
    ));
    let s_off = Complex::from_f64(p, 0.3, 1.0);
    let off_line = norm_ratio15(&s_off, 1, 1000, &primes, ctx)?.to_f64();
    let envelope = norm_ratio15_rhs(&s_off, 1000, ctx)?.to_f64();
    checks.push(finding(
        SUITE,
        "norm-ratio-off-line",
        off_line,
        format!(
            "sieved norm ratio at s = 0.3+1i is {off_line:.8} against the \
             comparison envelope {envelope:.8}"
        ),
    ));
    Ok(checks)
}

fn chi_suite(ctx: &PrecisionContext, _seed: u64) -> Result<Vec<CheckOutcome>> {
    const SUITE: &str = "chi";
    let mut checks = Vec::new();

    // The truncated direct sum and the exact finite-difference route must
    // agree within the direct route's own quoted tail bound.
    let mut worst_ratio = 0.0f64;
    let mut worst_n = 0usize;
    for n in [5usize, 9, 17, 25] {
        let direct = chi_direct(n, ctx)?;
        let exact = chi_exact(n, ctx)?;
        let gap = (&direct.value - &exact.value).complete(64).abs().to_f64();
        let ratio = gap / direct.tail_bound.to_f64();
        if ratio > worst_ratio {
            worst_ratio = ratio;
            worst_n = n;
        }
    }
    checks.push(check(
        SUITE,
        "route-agreement",
        worst_ratio <= 1.0,
        worst_ratio,
        1.0,
        format!(
            "direct-sum vs exact centered-coefficient gap stays inside the \
             quoted tail bound for n in {{5, 9, 17, 25}}; worst fraction \
             {worst_ratio:.3e} of the bound at n = {worst_n}"
        ),
    ));

    // Large-order decay: the direct sum at n = 10^4 is far below 1e-2.
    let big = chi_direct(10_000, ctx)?;
    let mag = big.value.clone().abs().to_f64();
    checks.push(check(
        SUITE,
        "decay-at-ten-thousand",
        mag < 1e-2,
        mag,
        1e-2,
        format!(
            "|chi(10^4)| = {mag:.3e} by direct summation ({} terms), sign {}",
            big.j_cutoff,
            if big.value.is_sign_negative() { "-" } else { "+" }
        ),
    ));

    // Sign pattern of the exact values: reported, with the flip count.
    let mut pattern = String::new();
    let mut flips = 0usize;
    let mut prev_neg = None;
    for n in 2..=33 {
        let v = chi_exact(n, ctx)?.value;
        let neg = v.is_sign_negative();
        pattern.push(if neg { '-' } else { '+' });
        if let Some(pn) = prev_neg {
            if pn != neg {
                flips += 1;
            }
        }
        prev_neg = Some(neg);
    }
    checks.push(finding(
        SUITE,
        "sign-pattern",
        flips as f64,
        format!("signs of chi(2..33): {pattern} ({flips} flips)"),
    ));
    Ok(checks)
}

fn melzak_suite(ctx: &PrecisionContext, seed: u64) -> Result<Vec<CheckOutcome>> {
    const SUITE: &str = "melzak";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3e1a);
    let p = ctx.working_bits();
    let mut checks = Vec::new();

    // Transform exactness: 100 random polynomials of degree <= 16,
    // recovered at a random shifted point.
    let mut tol = Float::with_val(64, 1u32);
    tol >>= ctx.bits() - 6;
    let mut worst = 0.0f64;
    let mut worst_deg = 0usize;
    for _ in 0..100 {
        let deg = rng.gen_range(0..=16usize);
        let coeffs: Vec<Complex> = (0..=deg)
            .map(|_| Complex::from_f64(p, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let f = Polynomial::new(coeffs);
        let m = f.degree();
        let x = Complex::from_f64(p, rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let y = loop {
            let cand = Complex::from_f64(
                p,
                rng.gen_range(-2.0..(m as f64 + 2.0)),
                rng.gen_range(-2.0..2.0),
            );
            let near_node = (0..=m).any(|t| {
                cand.dist(&Complex::from_f64(p, t as f64, 0.0)).to_f64() < 0.05
            });
            if !near_node {
                break cand;
            }
        };
        let got = melzak_transform(&f, &x, &y, ctx)?;
        let want = f.eval_at(&(&x - &y), p);
        let scale = f
            .coeffs()
            .iter()
            .map(|cf| cf.abs().to_f64())
            .fold(1.0f64, f64::max)
            * (1.0 + want.abs().to_f64());
        let ratio = got.dist(&want).to_f64() / (tol.to_f64() * scale);
        if ratio > worst {
            worst = ratio;
            worst_deg = m;
        }
    }
    checks.push(check(
        SUITE,
        "transform-exact",
        worst <= 1.0,
        worst,
        1.0,
        format!(
            "100 random polynomial recoveries stay inside the 2^(6-bits) \
             scaled tolerance; worst fraction {worst:.3e} at degree {worst_deg}"
        ),
    ));

    // Central-binomial identity on random orders and offsets.
    let rel_tol = 2.0f64.powi(8 - ctx.bits() as i32);
    let mut worst = 0.0f64;
    for _ in 0..12 {
        let m = rng.gen_range(1..=12usize);
        let y = Complex::from_f64(
            p,
            rng.gen_range(-1.0..(m as f64 + 1.0)),
            rng.gen_range(0.3..1.5),
        );
        let (l, r) = identity62(m, &y, ctx)?;
        let rel = l.dist(&r).to_f64() / r.abs().to_f64().max(f64::MIN_POSITIVE);
        worst = worst.max(rel / rel_tol);
    }
    checks.push(check(
        SUITE,
        "identity62",
        worst <= 1.0,
        worst,
        1.0,
        format!(
            "central-binomial identity relative residual stays below \
             2^(8-bits) on 12 random draws (worst fraction {worst:.3e})"
        ),
    ));

    // Two-parameter factorial identity on random non-integer parameters.
    let mut worst = 0.0f64;
    for _ in 0..12 {
        let m = rng.gen_range(1..=12usize);
        let beta = Complex::from_f64(
            p,
            rng.gen_range(0.1..0.9),
            rng.gen_range(0.1..0.6),
        );
        let gamma_shift = Complex::from_f64(p, rng.gen_range(0.5..2.5), 0.0);
        let s = Complex::from_f64(p, rng.gen_range(-1.0..2.0), rng.gen_range(0.5..2.0));
        let (l, r) = identity64(m, &beta, &gamma_shift, &s, ctx)?;
        let rel = l.dist(&r).to_f64() / r.abs().to_f64().max(f64::MIN_POSITIVE);
        worst = worst.max(rel / rel_tol);
    }
    checks.push(check(
        SUITE,
        "identity64",
        worst <= 1.0,
        worst,
        1.0,
        format!(
            "two-parameter factorial identity relative residual stays below \
             2^(8-bits) on 12 random draws (worst fraction {worst:.3e})"
        ),
    ));

    // The positive-coefficient decomposition: positivity for every even
    // order through 64, and the coefficient-sum identity at three orders.
    let mut nonpositive = 0usize;
    for m in (2..=64usize).step_by(2) {
        let eps = epsilon_coeffs(m, ctx)?;
        nonpositive += eps
            .eps_k
            .iter()
            .filter(|e| e.is_sign_negative() || e.is_zero())
            .count();
    }
    checks.push(check(
        SUITE,
        "epsilon-positive",
        nonpositive == 0,
        nonpositive as f64,
        0.0,
        "every weight in the positive decomposition is strictly positive \
         for even orders 2..=64"
            .to_string(),
    ));

    let mut worst = 0.0f64;
    let mut eight_eps = Float::with_val(64, 8u32);
    eight_eps *= ctx.eps();
    for m in [2usize, 8, 20] {
        let eps = epsilon_coeffs(m, ctx)?;
        let mut total = Float::with_val(p, 0);
        for e in &eps.eps_k {
            total += e;
        }
        let chi_v = crate::chi::chi(m + 1, ctx)?.value;
        let mut target = Float::with_val(p, &chi_v);
        target /= Float::with_val(p, Integer::from(Integer::factorial(m as u32 + 1)));
        target += Float::with_val(p, gamma_half_ratio(m / 2).square().recip());
        let gap = (total - target).abs().to_f64();
        worst = worst.max(gap / eight_eps.to_f64());
    }
    checks.push(check(
        SUITE,
        "epsilon-sum",
        worst <= 1.0,
        worst,
        1.0,
        format!(
            "decomposition coefficient sums match the centered-coefficient \
             target within 8 eps at m in {{2, 8, 20}} (worst fraction \
             {worst:.3e})"
        ),
    ));
    Ok(checks)
}

fn interlace_suite(ctx: &PrecisionContext, seed: u64) -> Result<Vec<CheckOutcome>> {
    const SUITE: &str = "interlace";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51f2);
    let mut checks = Vec::new();

    // Random symmetrized products keep complete root sets on the line:
    // the phase construction is exhaustive, so count and residual together
    // certify there is nothing off the line.
    let p = ctx.working_bits() + 64;
    let shift = ctx.bits() - 16;
    let mut worst = 0.0f64;
    let mut count_ok = true;
    for _ in 0..200 {
        let n = rng.gen_range(2..=12usize);
        let sign: f64 = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let mut nodes: Vec<f64> = (0..n)
            .map(|_| 0.5 + sign * rng.gen_range(0.01..5.0))
            .collect();
        if n >= 3 && rng.gen_bool(0.3) {
            nodes[1] = nodes[0];
        }
        if rng.gen_bool(0.3) {
            nodes[n - 1] = 0.5 + sign * 1e-3;
        }
        let sf = SymmetrizedFactorial::from_f64(96, &nodes)?;
        let roots = sym_roots(&sf, ctx)?;
        if roots.len() != n / 2 {
            count_ok = false;
            continue;
        }
        // Mirror negative-offset nodes in extended precision.
        let checked: Vec<Float> = nodes
            .iter()
            .map(|&a| {
                let af = Float::with_val(p, a);
                if sign < 0.0 {
                    let mut node = Float::with_val(p, 1);
                    node -= &af;
                    node
                } else {
                    af
                }
            })
            .collect();
        for v in &roots.values {
            let (resid, scale) = line_pair_residual(&checked, v, p);
            let mut tol = scale;
            tol >>= shift;
            let ratio = resid.to_f64() / tol.to_f64().max(f64::MIN_POSITIVE);
            worst = worst.max(ratio);
        }
    }
    checks.push(check(
        SUITE,
        "line-roots",
        count_ok && worst <= 1.0,
        worst,
        1.0,
        format!(
            "200 random symmetrized products: root counts complete and \
             on-line residuals inside the 2^(16-bits) scaled tolerance \
             (worst fraction {worst:.3e}){}",
            if count_ok { "" } else { "; A ROOT COUNT CAME UP SHORT" }
        ),
    ));

    // Tangent zeros: the closed-form factorization kills its polynomial.
    let mut worst = 0.0f64;
    for n in [2usize, 5, 9] {
        let zeros = tan_zeros49(n, ctx)?;
        for z in &zeros.values {
            let s = Complex::new(Float::with_val(p, 0.5f32), Float::with_val(p, z));
            let one_minus = &Complex::one(p) - &s;
            let mut lhs = Complex::one(p);
            let mut rhs = Complex::one(p);
            for _ in 0..n {
                lhs = &lhs * &one_minus;
                rhs = &rhs * &s;
            }
            let resid = (&lhs + &rhs).abs();
            let scale = lhs.abs() + rhs.abs();
            let mut tol = scale;
            tol >>= shift;
            let ratio = resid.to_f64() / tol.to_f64().max(f64::MIN_POSITIVE);
            worst = worst.max(ratio);
        }
    }
    checks.push(check(
        SUITE,
        "tangent-zeros",
        worst <= 1.0,
        worst,
        1.0,
        format!(
            "closed-form tangent zeros annihilate (1-s)^n + s^n for n in \
             {{2, 5, 9}} within the scaled tolerance (worst fraction \
             {worst:.3e})"
        ),
    ));

    // Weighted product correlation: prod T^2 equals the coefficient-weighted
    // mean of the deleted-node products.
    let mut worst = 0.0f64;
    for m in [4usize, 6, 8] {
        let nodes: Vec<Float> = (0..=m)
            .map(|j| Float::with_val(p, (j + 2) as u64))
            .collect();
        let coeffs: Vec<Float> = (0..=m)
            .map(|_| Float::with_val(p, rng.gen_range(0.1..3.0)))
            .collect();
        let big = combined_roots(&coeffs, &nodes, ctx)?;
        let mut lhs = Float::with_val(p, 1);
        for t in &big.values {
            lhs *= t.clone().square();
        }
        let mut num = Float::with_val(p, 0);
        let mut den = Float::with_val(p, 0);
        for k in 0..=m {
            let reduced: Vec<f64> = nodes
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, a)| a.to_f64())
                .collect();
            let sf = SymmetrizedFactorial::from_f64(96, &reduced)?;
            let taus = sym_roots(&sf, ctx)?;
            let mut prod = coeffs[k].clone();
            for t in &taus.values {
                prod *= t.clone().square();
            }
            num += prod;
            den += &coeffs[k];
        }
        let rhs = num / den;
        let rel = ((lhs.clone() - &rhs) / &lhs).abs().to_f64();
        worst = worst.max(rel);
    }
    checks.push(check(
        SUITE,
        "product-correlation",
        worst < 1e-12,
        worst,
        1e-12,
        format!(
            "squared-root products match their weighted means for orders \
             4/6/8 (worst relative gap {worst:.3e})"
        ),
    ));

    // Shift parity through order 64.
    let mut violations = 0usize;
    let mut flagged = String::new();
    for m in (4..=64usize).step_by(2) {
        let sh = d_shifts(m, ctx)?;
        if !sh.parity_violations.is_empty() {
            violations += sh.parity_violations.len();
            flagged.push_str(&format!(" m={m}:{:?}", sh.parity_violations));
        }
    }
    checks.push(check(
        SUITE,
        "shift-parity",
        violations == 0,
        violations as f64,
        0.0,
        if violations == 0 {
            "node-shift parity (above 1/2 exactly at even indices) holds for \
             every even order 4..=64"
                .to_string()
        } else {
            format!("parity violations at{flagged}")
        },
    ));

    // Strict interlacing of the squared half-grid and shifted-grid roots.
    // This is the paper-claimed property the measurements refute: adjacent
    // same-family pairs appear at every tested order.
    let mut all_strict = true;
    let mut details = Vec::new();
    let mut min_gap_overall = f64::INFINITY;
    for m in [8usize, 16, 32, 64] {
        let sh = d_shifts(m, ctx)?;
        let (l, w) = lambda_omega(m, &sh, ctx)?;
        let rep = interlace_report(&l, &w);
        all_strict &= rep.strict;
        min_gap_overall = min_gap_overall.min(rep.min_gap.to_f64());
        details.push(format!(
            "m={m}: {} (min gap {:.3e})",
            if rep.strict { "strict" } else { &rep.pattern },
            rep.min_gap.to_f64()
        ));
    }
    checks.push(check(
        SUITE,
        "strict-interlace",
        all_strict,
        min_gap_overall,
        0.0,
        format!(
            "strict alternation of squared root families at orders \
             8/16/32/64 — {}",
            details.join("; ")
        ),
    ));

    // Cap-extraction findings: reported, never asserted.
    for m in [8usize, 16, 24] {
        let rep = omega_caps(m, ctx)?;
        let first = rep
            .caps
            .values
            .first()
            .map(|v| v.to_f64())
            .unwrap_or(f64::NAN);
        checks.push(finding(
            SUITE,
            &format!("caps-m{m}"),
            first,
            format!(
                "order {m}: {} of {} caps real ({} off-axis), first cap \
                 {first:.6}, at most -1/4: {}, chain with squared half-grid \
                 roots: {}, centered coefficient sign {}",
                rep.caps.len(),
                m / 2,
                rep.missing,
                rep.first_cap_at_most_minus_quarter,
                rep.chain_with_lambda,
                if rep.chi_negative { "-" } else { "+" }
            ),
        ));
    }
    Ok(checks)
}

fn reconstruct_suite(ctx: &PrecisionContext, seed: u64) -> Result<Vec<CheckOutcome>> {
    const SUITE: &str = "reconstruct";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7ec0);
    let p = ctx.working_bits();
    let mut checks = Vec::new();

    // The two truncation forms factor one polynomial: their gap is pure
    // arithmetic noise, far below the target resolution.
    let s = Complex::from_f64(p, rng.gen_range(0.1..0.9), rng.gen_range(-5.0..5.0));
    let r = reconstruct_eta_sym(&s, 8, ctx)?;
    let mut tol = Float::with_val(64, &r.scale);
    tol >>= ctx.bits() - 16;
    let ratio = r.forms_gap.to_f64() / tol.to_f64().max(f64::MIN_POSITIVE);
    checks.push(check(
        SUITE,
        "forms-gap",
        ratio <= 1.0,
        ratio,
        1.0,
        format!(
            "difference-of-products and single-product forms agree within \
             the 2^(16-bits) scaled tolerance at a seeded strip point \
             (fraction {ratio:.3e}; {} caps carried by the residual factor)",
            r.caps_missing
        ),
    ));

    // Deviation from the series reference shrinks monotonically in the
    // truncation order.
    let s = Complex::from_f64(p, 0.3, 3.0);
    let mut devs = Vec::new();
    for m in [8usize, 16, 24] {
        devs.push(reconstruct_eta_sym(&s, m, ctx)?.deviation.to_f64());
    }
    let monotone = devs[0] > devs[1] && devs[1] > devs[2];
    checks.push(check(
        SUITE,
        "monotone-deviation",
        monotone,
        devs[2],
        devs[1],
        format!(
            "series-reference deviation at s = 0.3+3i falls {:.4e} -> \
             {:.4e} -> {:.4e} over orders 8/16/24",
            devs[0], devs[1], devs[2]
        ),
    ));

    // On the symmetry axis the reconstruction is real and lands on
    // 2 eta(1/2) up to the order-8 truncation defect.
    let half = Complex::from_f64(p, 0.5, 0.0);
    let r = reconstruct_eta_sym(&half, 8, ctx)?;
    let imag = r.difference_form.im.clone().abs().to_f64();
    let dev = r.deviation.to_f64();
    checks.push(check(
        SUITE,
        "symmetry-value",
        imag < 1e-40 && dev < 1e-2,
        dev,
        1e-2,
        format!(
            "value at s = 1/2 is real ({:.10}, imaginary part {imag:.1e}) \
             and sits {dev:.3e} from 2 eta(1/2)",
            r.difference_form.re.to_f64()
        ),
    ));
    Ok(checks)
}

/// `|prod (a_j - 1 + s) + prod (a_j - s)|` and its scale at `s = 1/2 + ix`.
fn line_pair_residual(nodes: &[Float], x: &Float, p: u32) -> (Float, Float) {
    let s = Complex::new(Float::with_val(p, 0.5f32), Float::with_val(p, x));
    let mut plus = Complex::one(p);
    let mut minus = Complex::one(p);
    for a in nodes {
        let am1 = (a - &Float::with_val(p, 1u32)).complete(p);
        plus = &plus * &(&Complex::from_real(am1) + &s);
        minus = &minus * &(&Complex::from_real(a.clone()) - &s);
    }
    let resid = (&plus + &minus).abs();
    let scale = plus.abs().max(&minus.abs());
    (resid, scale)
}
