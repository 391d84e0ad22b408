//! Fast-convergence zeta schemes built from periodic coefficients on the odd
//! integers, and the exact linear combination of several of them.
//!
//! For odd `K = 2k-1`, weighting odd `q` by `1` (when `K` does not divide
//! `q`) and `1-K` (when it does) gives a series summing to
//! `(1 - K^(1-s)) (1 - 2^(-s)) zeta(s)`. Each run of `K` consecutive odd
//! numbers carries zero total coefficient mass, so truncating at whole groups
//! converges much faster than the plain alternating sum. The residual-order
//! expansion of that truncation has computable coefficients `B_K(n)`
//! ([`rhs31`] evaluates it), and choosing weights across several `K` so the
//! low-order `B_K(n)` contributions cancel exactly ([`kill_weights`]) speeds
//! the combination up further ([`combined_scheme37`]).

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::complex::{int_pow_neg_s, real_pow_complex, Complex};
use crate::error::Error;
use crate::eval::EvalResult;
use crate::precision::PrecisionContext;
use crate::refs::zeta_ref;
use crate::Result;

/// Coefficient of the odd entry `q` in the `K`-periodic series.
fn periodic_coeff(q: u64, big_k: u64) -> i64 {
    if q % big_k == 0 {
        1 - big_k as i64
    } else {
        1
    }
}

/// Partial sum of the `K`-periodic series over the first `entries` odd
/// integers, also returning the sum at `entries/2` (for drift estimates).
fn periodic_partial(
    s: &Complex,
    big_k: u64,
    entries: usize,
    p: u32,
) -> (Complex, Complex) {
    let mut acc = Complex::zero(p);
    let mut half = Complex::zero(p);
    for i in 0..entries {
        let q = 2 * i as u64 + 1;
        let c = periodic_coeff(q, big_k);
        let mut t = int_pow_neg_s(q, s);
        if c != 1 {
            t = t.scale(&Float::with_val(p, c));
        }
        acc = &acc + &t;
        if i + 1 == entries / 2 {
            half = acc.clone();
        }
    }
    (acc, half)
}

/// Validates the strip side and returns the working-precision argument.
fn require_right_half(s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if s.re.to_f64() <= 0.0 {
        return Err(Error::DomainError(format!(
            "periodic-coefficient schemes require Re(s) > 0, got {}",
            s.re.to_f64()
        )));
    }
    Ok(s.to_prec(ctx.working_bits()))
}

/// Zeta via the single-`K` periodic series, truncated at `n_groups` complete
/// zero-mass groups (each spanning the `K = 2k-1` odd numbers in
/// `(2K(i-1), 2Ki)`):
///
/// `zeta(s) ~ S_partial / [(1 - K^(1-s)) (1 - 2^(-s))]`.
///
/// Requires `k >= 2` and `Re(s) > 0`; raises [`Error::ConditioningError`]
/// when either prefactor falls below `sqrt(eps)` (the prefactors vanish on
/// whole lines of spurious zeros). `terms_used` counts groups.
/// `err_estimate = 2 |V_N - V_(N/2)| + 4 eps |value|` over group counts.
pub fn fast_scheme31(
    s: &Complex,
    k: usize,
    n_groups: usize,
    ctx: &PrecisionContext,
) -> Result<EvalResult> {
    if k < 2 {
        return Err(Error::InvalidParam(format!(
            "periodic scheme needs k >= 2 (K = 2k-1 >= 3), got {k}"
        )));
    }
    if n_groups == 0 {
        return Err(Error::InvalidParam("need at least one group".into()));
    }
    let sp = require_right_half(s, ctx)?;
    let p = ctx.working_bits();
    let big_k = 2 * k as u64 - 1;

    let one = Complex::one(p);
    let a = &one - &real_pow_complex(&Float::with_val(p, big_k), &(&one - &sp));
    let b = &one - &int_pow_neg_s(2, &sp);
    let guard = ctx.eps().sqrt();
    if a.abs() < guard || b.abs() < guard {
        return Err(Error::ConditioningError(format!(
            "prefactor (1 - {big_k}^(1-s))(1 - 2^(-s)) is within sqrt(eps) of zero \
             (|1-K^(1-s)| = {:e}, |1-2^(-s)| = {:e})",
            a.abs().to_f64(),
            b.abs().to_f64()
        )));
    }
    let denom = &a * &b;

    let entries = big_k as usize * n_groups;
    let half_entries = big_k as usize * (n_groups / 2).max(1);
    let (acc, _) = periodic_partial(&sp, big_k, entries, p);
    let value = (&acc / &denom).to_prec(ctx.bits());
    let (acc_half, _) = if half_entries == entries {
        (acc.clone(), Complex::zero(p))
    } else {
        periodic_partial(&sp, big_k, half_entries, p)
    };
    let v_half = &acc_half / &denom;

    let mut err = Float::with_val(64, value.dist(&v_half)) * 2u32;
    err += Float::with_val(64, value.abs() * ctx.eps()) * 4u32;
    Ok(EvalResult::new(value, n_groups, err, "fast31"))
}

/// `B_K(n) = 1 - [sum_{j=1}^{K} (2j-1)^n] / K^(n+1)` as an exact rational —
/// the n-th residual-order coefficient of the `K`-periodic truncation.
pub fn residual_coeff(big_k: u64, n: u32) -> Rational {
    let mut power_sum = Integer::new();
    for j in 1..=big_k {
        power_sum += Integer::from(2 * j - 1).pow(n);
    }
    let denom = Integer::from(big_k).pow(n + 1);
    Rational::from(1u32) - Rational::from((power_sum, denom))
}

/// The closed-form side of the residual-order identity:
/// `(1 - K^(s-1)) (2^s - 1) zeta(s)` with `K = 2k-1`.
pub fn lhs31(s: &Complex, k: usize, ctx: &PrecisionContext) -> Result<Complex> {
    if k < 2 {
        return Err(Error::InvalidParam(format!(
            "periodic scheme needs k >= 2, got {k}"
        )));
    }
    let p = ctx.working_bits();
    let sp = s.to_prec(p);
    let one = Complex::one(p);
    let big_k = Float::with_val(p, 2 * k as u64 - 1);
    let zeta = zeta_ref(s, ctx)?.value.to_prec(p);
    let ka = &one - &real_pow_complex(&big_k, &(&sp - &one));
    let tb = &real_pow_complex(&Float::with_val(p, 2u32), &sp) - &one;
    Ok((&(&ka * &tb) * &zeta).to_prec(ctx.bits()))
}

/// The series side of the residual-order identity:
/// `sum_{n=2}^{n_max} B_K(n) Gamma(n+s) / (2^n n! Gamma(s)) zeta(n+s)`,
/// with the Gamma ratio built incrementally as `prod_{j=0}^{n-1} (s+j)` —
/// no large factorials ever materialize.
///
/// Converges like `(2K-1)/(2K) < 1` per order: genuinely slow. Truncation at
/// `n_max = 80` leaves ~1e-4-scale residue at `s = 2, k = 2`; a few hundred
/// orders are needed for tight agreement with [`lhs31`].
pub fn rhs31(s: &Complex, k: usize, n_max: usize, ctx: &PrecisionContext) -> Result<Complex> {
    if k < 2 {
        return Err(Error::InvalidParam(format!(
            "periodic scheme needs k >= 2, got {k}"
        )));
    }
    if n_max < 2 {
        return Err(Error::InvalidParam(format!(
            "residual series starts at order 2, got n_max = {n_max}"
        )));
    }
    let sp = require_right_half(s, ctx)?;
    let p = ctx.working_bits();
    let big_k = 2 * k as u64 - 1;

    // ratio_n = Gamma(n+s) / (2^n n! Gamma(s)); ratio_2 = s(s+1)/8,
    // ratio_n = ratio_{n-1} (s+n-1)/(2n).
    let mut ratio = {
        let s1 = &sp + &Complex::one(p);
        (&sp * &s1).unscale(&Float::with_val(p, 8u32))
    };
    let mut acc = Complex::zero(p);
    for n in 2..=n_max {
        if n > 2 {
            let step = &sp + &Complex::from_real(Float::with_val(p, (n - 1) as u64));
            ratio = (&ratio * &step).unscale(&Float::with_val(p, 2 * n as u64));
        }
        let b = residual_coeff(big_k, n as u32);
        let shifted = &sp + &Complex::from_real(Float::with_val(p, n as u64));
        let z = zeta_ref(&shifted, ctx)?.value.to_prec(p);
        let term = (&ratio * &z).scale(&Float::with_val(p, &b));
        acc = &acc + &term;
    }
    Ok(acc.to_prec(ctx.bits()))
}

/// Exact weights `w` (normalized `w[0] = 1`) with
/// `sum_i w[i] B_(2 k_set[i] - 1)(n) = 0` for every `n = 2 .. n_kill - 1`.
///
/// Solved over the rationals by Gaussian elimination; the system must have a
/// one-dimensional null space with a nonzero leading coordinate, otherwise
/// [`Error::SingularSystemError`] explains what failed.
pub fn kill_weights(k_set: &[usize], n_kill: usize) -> Result<Vec<Rational>> {
    if k_set.len() < 2 {
        return Err(Error::InvalidParam(format!(
            "combining needs at least two series, got {}",
            k_set.len()
        )));
    }
    if k_set.iter().any(|&k| k < 2) {
        return Err(Error::InvalidParam(
            "every combined series needs k >= 2".into(),
        ));
    }
    for w in k_set.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidParam(
                "k_set must be strictly increasing".into(),
            ));
        }
    }
    if n_kill < 3 {
        return Err(Error::InvalidParam(format!(
            "need at least one kill row (n_kill >= 3), got {n_kill}"
        )));
    }
    let cols = k_set.len();
    let rows = n_kill - 2;
    let mut m: Vec<Vec<Rational>> = (2..n_kill)
        .map(|n| {
            k_set
                .iter()
                .map(|&k| residual_coeff(2 * k as u64 - 1, n as u32))
                .collect()
        })
        .collect();

    // Exact row echelon with column pivoting order preserved.
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c].clone();
                for c2 in 0..cols {
                    let sub = Rational::from(&f * &m[r][c2]);
                    m[i][c2] -= sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let rank = pivot_cols.len();
    if rank != cols - 1 {
        return Err(Error::SingularSystemError(format!(
            "kill system over {} series with rows n = 2..{} has rank {rank}; \
             a unique combination needs rank {}",
            cols,
            n_kill - 1,
            cols - 1
        )));
    }
    let free_col = (0..cols).find(|c| !pivot_cols.contains(c)).unwrap();
    let mut w = vec![Rational::new(); cols];
    w[free_col] = Rational::from(1u32);
    for (i, &pc) in pivot_cols.iter().enumerate() {
        w[pc] = -Rational::from(&m[i][free_col]);
    }
    if w[0] == 0 {
        return Err(Error::SingularSystemError(
            "kill solution has zero weight on the first series; cannot normalize".into(),
        ));
    }
    let lead = w[0].clone();
    for x in w.iter_mut() {
        *x /= &lead;
    }
    debug_assert!((2..n_kill).all(|n| {
        let mut acc = Rational::new();
        for (i, &k) in k_set.iter().enumerate() {
            acc += Rational::from(&w[i] * &residual_coeff(2 * k as u64 - 1, n as u32));
        }
        acc == 0
    }));
    Ok(w)
}

/// Zeta via the killed combination of periodic series:
///
/// `zeta(s) ~ [sum_i w_i (2 K_i)^s / K_i * S_i] / [sum_i w_i (K_i^(s-1) - 1)(2^s - 1)]`
///
/// where `S_i` truncates the `K_i`-periodic series at `terms_per_series[i]`
/// individual odd entries and `w` comes from [`kill_weights`]. `terms_used`
/// totals the entries across the series.
/// `err_estimate = 2 |V - V_half| + 4 eps |value|` with every series cut to
/// half its entries.
pub fn combined_scheme37(
    s: &Complex,
    k_set: &[usize],
    n_kill: usize,
    terms_per_series: &[usize],
    ctx: &PrecisionContext,
) -> Result<EvalResult> {
    if terms_per_series.len() != k_set.len() {
        return Err(Error::InvalidParam(format!(
            "terms_per_series has {} entries for {} series",
            terms_per_series.len(),
            k_set.len()
        )));
    }
    if terms_per_series.iter().any(|&t| t == 0) {
        return Err(Error::InvalidParam(
            "every combined series needs at least one entry".into(),
        ));
    }
    let sp = require_right_half(s, ctx)?;
    let weights = kill_weights(k_set, n_kill)?;
    let p = ctx.working_bits();
    let one = Complex::one(p);
    let two_pow_s_minus_1 = &real_pow_complex(&Float::with_val(p, 2u32), &sp) - &one;

    let mut numer = Complex::zero(p);
    let mut numer_half = Complex::zero(p);
    let mut denom = Complex::zero(p);
    for ((&k, &t_count), w) in k_set.iter().zip(terms_per_series).zip(&weights) {
        let big_k = 2 * k as u64 - 1;
        let wf = Float::with_val(p, w);
        // (2K)^s / K
        let front = real_pow_complex(&Float::with_val(p, 2 * big_k), &sp)
            .unscale(&Float::with_val(p, big_k));
        let (acc, acc_half) = periodic_partial(&sp, big_k, t_count, p);
        numer = &numer + &(&front * &acc).scale(&wf);
        numer_half = &numer_half + &(&front * &acc_half).scale(&wf);
        // (K^{s-1} - 1)(2^s - 1)
        let ks1 =
            &real_pow_complex(&Float::with_val(p, big_k), &(&sp - &one)) - &one;
        denom = &denom + &(&ks1 * &two_pow_s_minus_1).scale(&wf);
    }
    if denom.abs() < ctx.eps().sqrt() {
        return Err(Error::ConditioningError(format!(
            "combined prefactor |sum w (K^(s-1)-1)(2^s-1)| = {:e} is below sqrt(eps)",
            denom.abs().to_f64()
        )));
    }
    let value = (&numer / &denom).to_prec(ctx.bits());
    let v_half = &numer_half / &denom;
    let mut err = Float::with_val(64, value.dist(&v_half)) * 2u32;
    err += Float::with_val(64, value.abs() * ctx.eps()) * 4u32;
    let total: usize = terms_per_series.iter().sum();
    Ok(EvalResult::new(value, total, err, "combined37"))
}
