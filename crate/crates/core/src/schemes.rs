//! Series schemes for eta and zeta built on falling-factorial interpolation
//! at integer nodes, plus the plain alternating Dirichlet sum as a baseline.
//!
//! Shared structure: the interpolation coefficient
//! `K_n(s) = prod_{j=2}^{n} (j - s) / n!` (so `K_1 = 1`) multiplies either
//! `chi(n)` (eta flavor) or `psi(n)` (zeta flavor, next to the explicit pole
//! term). Truncations of the same series can be reorganized: the double-sum
//! form expands `chi` back into finite differences of integer eta values, and
//! the fixed-order transform form evaluates the degree-`m` interpolant
//! directly from its nodes. Those reorganizations are *identities* on their
//! shared terms — tested as such — but their numerical behavior differs
//! drastically, which is the point of having them side by side.

use rug::ops::CompleteRound;
use rug::{Float, Integer};

use crate::chi::{chi_from_table, exact_route_bits, ChiTable, PsiTable};
use crate::complex::{int_pow_neg_s, Complex};
use crate::error::Error;
use crate::eval::EvalResult;
use crate::precision::PrecisionContext;
use crate::refs::{conversion_denominator, EtaInts};
use crate::Result;

/// Largest interpolation order accepted by the fixed-order schemes.
pub const MAX_ORDER: usize = 1024;

/// Plain alternating Dirichlet partial sum as a zeta approximant:
/// `zeta ~ [sum_{n=1}^{N} (-1)^(n+1) n^(-s)] / (1 - 2^(1-s))`.
///
/// `err_estimate = max(2 |V_N - V_(N/2)|, |t_(N+1)| (2 + |s|)) / |1 - 2^(1-s)|
/// + 4 eps |value|`, where `t` is the raw series term. The first piece tracks
/// the observed drift between successive dyadic truncations; the second is the
/// alternating-series bound inflated to survive the conditionally convergent
/// regime `0 < Re(s) <= 1`.
pub fn dirichlet_partial(s: &Complex, n_terms: usize, ctx: &PrecisionContext) -> Result<EvalResult> {
    if n_terms == 0 {
        return Err(Error::InvalidParam(
            "dirichlet partial sum needs at least one term".into(),
        ));
    }
    if s.re.to_f64() <= 0.0 {
        return Err(Error::DomainError(format!(
            "alternating Dirichlet sum requires Re(s) > 0, got {}",
            s.re.to_f64()
        )));
    }
    let den = conversion_denominator(s, ctx)?;
    let p = ctx.working_bits();
    let sp = s.to_prec(p);
    let mut acc = Complex::zero(p);
    let mut half_acc = Complex::zero(p);
    for n in 1..=n_terms {
        let mut t = int_pow_neg_s(n as u64, &sp);
        if n % 2 == 0 {
            t = -t;
        }
        acc = &acc + &t;
        if n == n_terms / 2 {
            half_acc = acc.clone();
        }
    }
    let value = (&acc / &den).to_prec(ctx.bits());

    let den_abs = Float::with_val(64, den.abs());
    let drift = if n_terms >= 2 {
        Float::with_val(64, (&acc - &half_acc).abs()) * 2u32
    } else {
        Float::with_val(64, 0)
    };
    let next = int_pow_neg_s(n_terms as u64 + 1, &sp).abs();
    let next_bound = Float::with_val(64, next) * (Float::with_val(64, sp.abs()) + 2u32);
    let mut err = if drift > next_bound { drift } else { next_bound };
    err /= den_abs;
    err += Float::with_val(64, value.abs() * ctx.eps()) * 4u32;
    Ok(EvalResult::new(value, n_terms, err, "dirichlet"))
}

/// The interpolation coefficient ratio: advances `K_(n-1) -> K_n` via
/// `K_n = K_(n-1) (n - s) / n`.
fn advance_coeff(k: &Complex, n: usize, s: &Complex) -> Complex {
    let p = k.prec();
    let node = Complex::new(
        Float::with_val(p, n as u64) - Float::with_val(p, &s.re),
        -Float::with_val(p, &s.im),
    );
    (k * &node).unscale(&Float::with_val(p, n as u64))
}

/// Eta via the chi-coefficient interpolation series:
/// `eta(s) = 1 + sum_{n>=1} K_n(s) chi(n)`, truncated after `n_max` terms.
///
/// Requires `Re(s) > 0` and a chi table covering `n_max`.
/// `err_estimate = B N^(-sigma) / sigma + 4 eps |value|` with
/// `B = max_n |K_n chi(n)| n^(1+sigma)` over the included terms — the
/// envelope constant of the observed `O(n^-(1+sigma))` term decay, pushed
/// through the integral tail bound. The series genuinely converges at this
/// polynomial rate, so truncation error dominates everything else.
pub fn eta_binomial16(
    s: &Complex,
    n_max: usize,
    table: &ChiTable,
    ctx: &PrecisionContext,
) -> Result<EvalResult> {
    let sigma = s.re.to_f64();
    if sigma <= 0.0 {
        return Err(Error::DomainError(format!(
            "chi-coefficient series requires Re(s) > 0, got {sigma}"
        )));
    }
    if n_max == 0 || n_max > table.n_max() {
        return Err(Error::InvalidParam(format!(
            "term count {n_max} outside the chi table's range 1..={}",
            table.n_max()
        )));
    }
    let p = ctx.working_bits();
    let sp = s.to_prec(p);
    let mut acc = Complex::one(p);
    let mut k_n = Complex::one(p);
    let mut b_env = 0.0f64;
    for n in 1..=n_max {
        if n > 1 {
            k_n = advance_coeff(&k_n, n, &sp);
        }
        let term = k_n.scale(table.chi(n));
        let mag = term.abs().to_f64();
        let env = mag * (n as f64).powf(1.0 + sigma);
        if env > b_env {
            b_env = env;
        }
        acc = &acc + &term;
    }
    let value = acc.to_prec(ctx.bits());
    let mut err = Float::with_val(64, b_env);
    err *= Float::with_val(64, (n_max as f64).powf(-sigma) / sigma);
    err += Float::with_val(64, value.abs() * ctx.eps()) * 4u32;
    Ok(EvalResult::new(value, n_max, err, "binomial16"))
}

/// Zeta via the psi-coefficient interpolation series:
/// `zeta(s) = 1/(s-1) + 1 + sum_{n>=1} K_n(s) psi(n)`.
///
/// `psi(n)` decays super-polynomially (with slow sign oscillation), so this
/// converges fast despite its sibling's polynomial rate.
/// `err_estimate = 400 max(|t_n|, last 10 terms) + 4 eps |value|`: the window
/// maximum rides the decaying oscillation envelope and the factor covers the
/// measured tail-to-last-term ratio with an order of magnitude to spare.
pub fn zeta_binomial16_2(
    s: &Complex,
    n_max: usize,
    table: &PsiTable,
    ctx: &PrecisionContext,
) -> Result<EvalResult> {
    if n_max == 0 || n_max > table.n_max() {
        return Err(Error::InvalidParam(format!(
            "term count {n_max} outside the psi table's range 1..={}",
            table.n_max()
        )));
    }
    let p = ctx.working_bits();
    let sp = s.to_prec(p);
    let one = Complex::one(p);
    let dist = (&sp - &one).abs();
    if dist <= ctx.eps() {
        return Err(Error::PoleError("zeta has its pole at s = 1".into()));
    }
    let pole = &one / &(&sp - &one);
    let mut acc = &pole + &one;
    let mut k_n = Complex::one(p);
    let mut window: Vec<f64> = Vec::with_capacity(10);
    for n in 1..=n_max {
        if n > 1 {
            k_n = advance_coeff(&k_n, n, &sp);
        }
        let term = k_n.scale(table.psi(n));
        if window.len() == 10 {
            window.remove(0);
        }
        window.push(term.abs().to_f64());
        acc = &acc + &term;
    }
    let value = acc.to_prec(ctx.bits());
    let worst = window.iter().cloned().fold(0.0f64, f64::max);
    let mut err = Float::with_val(64, worst) * 400u32;
    err += Float::with_val(64, value.abs() * ctx.eps()) * 4u32;
    Ok(EvalResult::new(value, n_max, err, "zeta16_2"))
}

/// Eta via the explicit double sum: term `n` is
/// `[prod_{j=2}^{n} (j - s)] sum_{k=0}^{n-1} (-1)^k eta(k+2) / (k! (n-1-k)!)`.
///
/// Term-by-term this *equals* the chi-coefficient series (the inner sum is the
/// finite-difference expansion of `chi(n)/n` times the factorial normalizer),
/// but here the cancellation happens inside each term at full magnitude:
/// intermediates reach about `2^n` times the term value. The evaluation runs
/// at `bits + n_max + 32` internally and demands `bits >= 2 n_max` up front
/// ([`Error::PrecisionError`]) — the point where the requested target
/// precision could no longer absorb the loss.
///
/// Returns the result together with the largest intermediate magnitude met,
/// so callers can see the cancellation cliff directly.
pub fn eta_double28(
    s: &Complex,
    n_max: usize,
    ctx: &PrecisionContext,
) -> Result<(EvalResult, Float)> {
    let sigma = s.re.to_f64();
    if sigma <= 0.0 {
        return Err(Error::DomainError(format!(
            "double-sum eta series requires Re(s) > 0, got {sigma}"
        )));
    }
    if n_max == 0 || n_max > MAX_ORDER {
        return Err(Error::InvalidParam(format!(
            "depth must be in 1..={MAX_ORDER}, got {n_max}"
        )));
    }
    if ctx.bits() < 2 * n_max as u32 {
        return Err(Error::PrecisionError(format!(
            "double-sum form at depth {n_max} needs at least {} target bits \
             (cancellation consumes ~1 bit per unit depth), context has {}",
            2 * n_max,
            ctx.bits()
        )));
    }
    let p2 = ctx.working_bits() + n_max as u32 + 32;
    let eta = EtaInts::build(n_max + 1, p2)?;
    let etas: Vec<Float> = (0..n_max).map(|k| eta.eta(k + 2)).collect();

    let sp = s.to_prec(p2);
    let mut acc = Complex::zero(p2);
    let mut max_inter = Float::with_val(64, 0);
    // prod = prod_{j=2}^{n} (j - s), advanced per n; fact = (n-1)!.
    let mut prod = Complex::one(p2);
    let mut fact = Integer::from(1);
    let mut b_env = 0.0f64;
    for n in 1..=n_max {
        if n > 1 {
            let node = Complex::new(
                Float::with_val(p2, n as u64) - Float::with_val(p2, &sp.re),
                -Float::with_val(p2, &sp.im),
            );
            prod = &prod * &node;
            fact *= (n - 1) as u64;
        }
        // inner = sum_k (-1)^k C(n-1,k) eta(k+2) / (n-1)!
        let mut inner = Float::new(p2);
        let mut binom = Integer::from(1);
        let mut row_max = Float::with_val(64, 0);
        for (k, ev) in etas.iter().enumerate().take(n) {
            let t = (ev * &binom).complete(p2);
            let t_mag = Float::with_val(64, t.clone().abs());
            if t_mag > row_max {
                row_max = t_mag;
            }
            if k % 2 == 0 {
                inner += t;
            } else {
                inner -= t;
            }
            binom *= (n - 1 - k) as u64;
            binom /= (k + 1) as u64;
        }
        let fact_f = Float::with_val(p2, &fact);
        let term = prod.scale(&inner).unscale(&fact_f);
        // Largest intermediate: the row maximum scaled like the term is.
        let scale64 = Float::with_val(64, prod.abs()) / Float::with_val(64, &fact_f);
        let inter = row_max * scale64;
        if inter > max_inter {
            max_inter = inter;
        }
        let mag = term.abs().to_f64();
        let env = mag * (n as f64).powf(1.0 + sigma);
        if env.is_finite() && env > b_env {
            b_env = env;
        }
        acc = &acc + &term;
    }
    let value = acc.to_prec(ctx.bits());
    let mut err = Float::with_val(64, b_env);
    err *= Float::with_val(64, (n_max as f64).powf(-sigma) / sigma);
    err += Float::with_val(64, value.abs() * ctx.eps()) * 4u32;
    Ok((EvalResult::new(value, n_max, err, "double28"), max_inter))
}

/// Eta as the value at `s` of the degree-`m` interpolating polynomial through
/// the integer nodes `{2, ..., m+2}`:
/// `eta(s) ~ sum_{k=0}^{m} (-1)^k eta(k+2) / (k! (m-k)!) prod_{j != k} (j+2-s)`.
///
/// The node products come from prefix/suffix arrays (no divisions), so `s`
/// may coincide with a node — the interpolant then reproduces the node value
/// exactly. Internally elevated by `m + 32` bits against the binomial-scale
/// cancellation.
///
/// `err_estimate = 10 sum_{n=m+1}^{m+3} |K_n(s) chi(n)| + 4 eps |value|`: the
/// truncation error of the equivalent coefficient series, measured from the
/// three leading dropped terms. The factor calibrates against the worst
/// observed actual-to-window ratio (6.1, when the window lands in a dip of
/// chi's sign oscillation) with margin.
pub fn eta_melzak29(s: &Complex, m: usize, ctx: &PrecisionContext) -> Result<EvalResult> {
    if m == 0 || m > MAX_ORDER {
        return Err(Error::InvalidParam(format!(
            "interpolation order must be in 1..={MAX_ORDER}, got {m}"
        )));
    }
    // One shared integer-eta table serves both the interpolant (which needs
    // the order's worth of guard bits against binomial-scale cancellation)
    // and the truncation rule's chi evaluations (which need the finite
    // differences at n = m+3 to come out with real relative accuracy).
    let p2 = (ctx.working_bits() + m as u32 + 32).max(exact_route_bits(ctx, m + 3));
    let eta = EtaInts::build(m + 5, p2)?;
    let sp = s.to_prec(p2);

    let value_raw = interpolant_at_nodes(&sp, m, &eta, p2);
    let value = value_raw.to_prec(ctx.bits());

    let mut err = melzak_tail_estimate(&sp, m, &eta, p2);
    err += Float::with_val(64, value.abs() * ctx.eps()) * 4u32;
    Ok(EvalResult::new(value, m + 1, err, "melzak29"))
}

/// Truncation rule for order-`m` interpolation over nodes `{2..m+2}`: ten
/// times the next three coefficient-series terms `|K_n chi(n)|`. The factor
/// covers the worst window-in-a-dip ratio observed across the strip with
/// margin. `eta` must reach argument `m+5`.
pub(crate) fn melzak_tail_estimate(sp: &Complex, m: usize, eta: &EtaInts, p2: u32) -> Float {
    let mut err = Float::with_val(64, 0);
    let mut k_n = Complex::one(p2);
    for n in 2..=m + 3 {
        k_n = advance_coeff(&k_n, n, &sp);
        if n >= m + 1 {
            let chi_n = chi_from_table(n, eta, p2);
            let t = Float::with_val(64, k_n.abs()) * Float::with_val(64, chi_n.abs());
            err += t;
        }
    }
    err * 10u32
}

/// For each `k = 0..=m`, the product over the other nodes:
/// `prod_{j != k, 0 <= j <= m} (j+2-s)`, built from prefix/suffix running
/// products so no division by a possibly-vanishing node factor occurs.
pub(crate) fn lagrange_numerators(sp: &Complex, m: usize, p2: u32) -> Vec<Complex> {
    // prefix[i] = prod_{j<i} (j+2-s); suffix[i] = prod_{j>=i} (j+2-s).
    let mut prefix = Vec::with_capacity(m + 2);
    prefix.push(Complex::one(p2));
    for j in 0..=m {
        let node = node_minus_s(j + 2, sp, p2);
        let last = prefix.last().unwrap();
        prefix.push(last * &node);
    }
    let mut suffix = vec![Complex::one(p2); m + 2];
    for j in (0..=m).rev() {
        let node = node_minus_s(j + 2, sp, p2);
        suffix[j] = &suffix[j + 1] * &node;
    }
    (0..=m).map(|k| &prefix[k] * &suffix[k + 1]).collect()
}

/// Shared interpolant evaluation over nodes `{2..m+2}` with weights
/// `(-1)^k eta(k+2)/(k!(m-k)!)`.
fn interpolant_at_nodes(sp: &Complex, m: usize, eta: &EtaInts, p2: u32) -> Complex {
    let numerators = lagrange_numerators(sp, m, p2);
    let mut acc = Complex::zero(p2);
    let mut fact_k = Integer::from(1);
    let mut fact_mk = Integer::from(1); // (m-k)! running value, start m!
    for i in 2..=m {
        fact_mk *= i as u64;
    }
    for k in 0..=m {
        if k > 0 {
            fact_k *= k as u64;
            fact_mk /= (m - k + 1) as u64;
        }
        let weight_den = Float::with_val(p2, Integer::from(&fact_k * &fact_mk));
        let mut w = eta.eta(k + 2);
        w /= &weight_den;
        if k % 2 == 1 {
            w = -w;
        }
        acc = &acc + &numerators[k].scale(&w);
    }
    acc
}

fn node_minus_s(node: usize, sp: &Complex, p: u32) -> Complex {
    Complex::new(
        Float::with_val(p, node as u64) - Float::with_val(p, &sp.re),
        -Float::with_val(p, &sp.im),
    )
}

/// Stretched/shifted variant of the fixed-order interpolant: with
/// `u = s / (2 L)` and nodes `{J+1, ..., J+m+1}` in `u`-space,
/// `eta(s) ~ sum_k (-1)^k eta(2L (k+J+1)) / (k! (m-k)!) prod_{j != k} (J+1+j-u)`.
///
/// `stretch >= 1` spaces the sampled integer eta arguments `2L` apart;
/// `shift >= 0` moves the window right. `err_estimate =
/// 2 |V_m - V_(m-2)| + 4 eps |value|` (difference of consecutive even orders)
/// — this family has no cheap closed-form tail, so the rule is purely
/// observational.
pub fn eta_generalized30(
    s: &Complex,
    m: usize,
    shift: u32,
    stretch: u32,
    ctx: &PrecisionContext,
) -> Result<EvalResult> {
    if m < 3 || m > MAX_ORDER {
        return Err(Error::InvalidParam(format!(
            "stretched interpolant needs order in 3..={MAX_ORDER}, got {m}"
        )));
    }
    if stretch == 0 {
        return Err(Error::InvalidParam(
            "stretch factor L must be >= 1 (L doubles the eta sampling spacing)".into(),
        ));
    }
    let p2 = ctx.working_bits() + m as u32 + 32;
    let max_arg = 2 * stretch as usize * (m + shift as usize + 1);
    let eta = EtaInts::build(max_arg, p2)?;
    let sp = s.to_prec(p2);
    let value_m = stretched_interpolant(&sp, m, shift, stretch, &eta, p2);
    let value_m2 = stretched_interpolant(&sp, m - 2, shift, stretch, &eta, p2);

    let value = value_m.to_prec(ctx.bits());
    let mut err = Float::with_val(64, (&value_m - &value_m2).abs()) * 2u32;
    err += Float::with_val(64, value.abs() * ctx.eps()) * 4u32;
    Ok(EvalResult::new(value, m + 1, err, "generalized30"))
}

fn stretched_interpolant(
    sp: &Complex,
    m: usize,
    shift: u32,
    stretch: u32,
    eta: &EtaInts,
    p2: u32,
) -> Complex {
    let two_l = Float::with_val(p2, 2 * stretch);
    let u = sp.unscale(&two_l);
    let base = shift as usize + 1;

    let mut prefix = Vec::with_capacity(m + 2);
    prefix.push(Complex::one(p2));
    for j in 0..=m {
        let node = node_minus_s(base + j, &u, p2);
        let last = prefix.last().unwrap();
        prefix.push(last * &node);
    }
    let mut suffix = vec![Complex::one(p2); m + 2];
    for j in (0..=m).rev() {
        let node = node_minus_s(base + j, &u, p2);
        suffix[j] = &suffix[j + 1] * &node;
    }

    let mut acc = Complex::zero(p2);
    let mut fact_k = Integer::from(1);
    let mut fact_mk = Integer::from(1);
    for i in 2..=m {
        fact_mk *= i as u64;
    }
    for k in 0..=m {
        if k > 0 {
            fact_k *= k as u64;
            fact_mk /= (m - k + 1) as u64;
        }
        let weight_den = Float::with_val(p2, Integer::from(&fact_k * &fact_mk));
        let arg = 2 * stretch as usize * (k + base);
        let mut w = eta.eta(arg);
        w /= &weight_den;
        if k % 2 == 1 {
            w = -w;
        }
        let others = &prefix[k] * &suffix[k + 1];
        acc = &acc + &others.scale(&w);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refs::{eta_ref, zeta_ref};

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    fn c(bits: u32, re: f64, im: f64) -> Complex {
        Complex::from_f64(bits, re, im)
    }

    #[test]
    fn dirichlet_single_term_is_pure_conversion_factor() {
        let ctx = ctx(128);
        let r = dirichlet_partial(&c(128, 2.0, 0.0), 1, &ctx).unwrap();
        // 1 / (1 - 2^-1) = 2 exactly.
        assert!((r.value.re.to_f64() - 2.0).abs() < 1e-30);
        assert_eq!(r.terms_used, 1);
    }

    #[test]
    fn dirichlet_converges_where_absolutely_convergent() {
        let ctx = ctx(128);
        let s = c(128, 3.0, 0.0);
        let r = dirichlet_partial(&s, 2000, &ctx).unwrap();
        let want = zeta_ref(&s, &ctx).unwrap().value;
        let d = r.value.dist(&want).to_f64();
        assert!(d < 1e-9, "dirichlet(3) off by {d:e}");
        assert!(
            r.err_estimate.to_f64() >= d,
            "error estimate {:e} below actual error {d:e}",
            r.err_estimate.to_f64()
        );
    }

    #[test]
    fn binomial16_truncation_shrinks_with_depth() {
        let ctx = ctx(128);
        let table = ChiTable::build(200, &ctx).unwrap();
        let s = c(128, 0.5, 0.0);
        let want = eta_ref(&s, &ctx).unwrap().value;
        let r50 = eta_binomial16(&s, 50, &table, &ctx).unwrap();
        let r200 = eta_binomial16(&s, 200, &table, &ctx).unwrap();
        let d50 = r50.value.dist(&want).to_f64();
        let d200 = r200.value.dist(&want).to_f64();
        // chi's stretched-exponential decay makes deep truncations sharp:
        // 50 terms land near 1e-7, 200 terms near 1e-15.
        assert!(d50 < 1e-5 && d50 > 1e-10, "depth 50 error {d50:e}");
        assert!(d200 < 1e-12, "depth 200 error {d200:e}");
        assert!(r50.err_estimate.to_f64() >= d50);
        assert!(r200.err_estimate.to_f64() >= d200);
    }

    #[test]
    fn binomial16_exact_at_node_two() {
        // s = 2 is an interpolation node: the series telescopes to eta(2)
        // after the first term, with every chi contribution beyond n = 1
        // multiplied by a vanishing coefficient... in fact K_n(2) = 0 for
        // n >= 2, so truncation at any depth is exact.
        let ctx = ctx(192);
        let table = ChiTable::build(8, &ctx).unwrap();
        let s = c(192, 2.0, 0.0);
        let r = eta_binomial16(&s, 8, &table, &ctx).unwrap();
        let want = eta_ref(&s, &ctx).unwrap().value;
        assert!(r.value.dist(&want).to_f64() < 1e-50);
    }

    #[test]
    fn zeta16_2_converges_fast() {
        let ctx = ctx(128);
        let table = PsiTable::build(400, &ctx).unwrap();
        let s = c(128, 0.5, 0.0);
        let r = zeta_binomial16_2(&s, 400, &table, &ctx).unwrap();
        let want = zeta_ref(&s, &ctx).unwrap().value;
        let d = r.value.dist(&want).to_f64();
        assert!(d < 1e-28, "psi series down to {d:e} at depth 400");
        assert!(r.err_estimate.to_f64() >= d);
    }

    #[test]
    fn zeta16_2_pole_guard() {
        let ctx = ctx(128);
        let table = PsiTable::build(4, &ctx).unwrap();
        assert!(matches!(
            zeta_binomial16_2(&c(128, 1.0, 0.0), 4, &table, &ctx),
            Err(Error::PoleError(_))
        ));
    }

    #[test]
    fn double28_matches_coefficient_series_termwise_behavior() {
        // Same truncation as binomial16 at the same depth -> same value (the
        // two forms are algebraically identical term by term).
        let ctx = ctx(192);
        let table = ChiTable::build(40, &ctx).unwrap();
        let s = c(192, 0.7, 1.3);
        let a = eta_binomial16(&s, 40, &table, &ctx).unwrap();
        let (b, max_inter) = eta_double28(&s, 40, &ctx).unwrap();
        let d = a.value.dist(&b.value).to_f64();
        assert!(d < 1e-40, "forms differ by {d:e}");
        // Intermediates dwarf the terms: at depth 40 the row peaks above 2^30.
        assert!(max_inter.to_f64() > 1e9);
    }

    #[test]
    fn double28_hits_ln_two_at_one() {
        let ctx = ctx(256);
        let s = c(256, 1.0, 0.0);
        let (r, _) = eta_double28(&s, 100, &ctx).unwrap();
        let want = Float::with_val(288, 2u32).ln();
        let d = (Float::with_val(288, &r.value.re) - want)
            .abs()
            .to_f64()
            .max(r.value.im.to_f64().abs());
        assert!(d < 1e-10, "eta(1) = ln 2 missed by {d:e}");
        assert!(r.err_estimate.to_f64() >= d);
    }

    #[test]
    fn double28_requires_twice_depth_in_bits() {
        let ctx = ctx(64);
        assert!(matches!(
            eta_double28(&c(64, 0.5, 0.0), 60, &ctx),
            Err(Error::PrecisionError(_))
        ));
        assert!(eta_double28(&c(64, 0.5, 0.0), 30, &ctx).is_ok());
    }

    #[test]
    fn melzak29_is_exact_at_nodes_and_converges_in_order() {
        let ctx = ctx(192);
        // At a node argument the interpolant reproduces the node value.
        let s_node = c(192, 4.0, 0.0);
        let r = eta_melzak29(&s_node, 12, &ctx).unwrap();
        let want = eta_ref(&s_node, &ctx).unwrap().value;
        assert!(r.value.dist(&want).to_f64() < 1e-50);

        // Off the nodes the error shrinks with order.
        let s = c(192, 0.5, 0.0);
        let want = eta_ref(&s, &ctx).unwrap().value;
        let e16 = eta_melzak29(&s, 16, &ctx).unwrap().value.dist(&want).to_f64();
        let e48 = eta_melzak29(&s, 48, &ctx).unwrap().value.dist(&want).to_f64();
        assert!(e48 < e16 * 1e-2, "order 16 -> {e16:e}, order 48 -> {e48:e}");
    }

    #[test]
    fn melzak29_identity_with_binomial16_truncation() {
        // The order-m interpolant equals the (m+1)-term coefficient series
        // exactly (Newton-form rewrite on the same nodes).
        let ctx = ctx(192);
        let table = ChiTable::build(25, &ctx).unwrap();
        let s = c(192, 0.3, 2.0);
        let m = 24usize;
        let a = eta_melzak29(&s, m, &ctx).unwrap();
        let b = eta_binomial16(&s, m + 1, &table, &ctx).unwrap();
        let d = a.value.dist(&b.value).to_f64();
        assert!(d < 1e-48, "interpolant vs series truncation differ by {d:e}");
    }

    #[test]
    fn melzak29_err_estimate_covers_truth() {
        let ctx = ctx(256);
        for (re, im, m) in [(0.5, 0.0, 32usize), (0.8, -3.0, 24), (0.2, 2.0, 40)] {
            let s = c(256, re, im);
            let r = eta_melzak29(&s, m, &ctx).unwrap();
            let want = eta_ref(&s, &ctx).unwrap().value;
            let d = r.value.dist(&want).to_f64();
            assert!(
                r.err_estimate.to_f64() >= d,
                "err rule {:e} below actual {d:e} at ({re},{im}), m={m}",
                r.err_estimate.to_f64()
            );
        }
    }

    #[test]
    fn generalized30_baseline_truncation_is_pinned() {
        // Even with shift 0 and stretch 1 this samples eta at the *even*
        // integers 2, 4, ..., 2(m+1) — twice the plain scheme's node spacing
        // — and converges markedly slower at equal order. The measured
        // truncation error at order 48 on the critical line is pinned here.
        let ctx = ctx(192);
        let s = c(192, 0.5, 0.0);
        let r = eta_generalized30(&s, 48, 0, 1, &ctx).unwrap();
        let want = eta_ref(&s, &ctx).unwrap().value;
        let d = r.value.dist(&want).to_f64();
        assert!(
            d > 1.5e-5 && d < 2.1e-5,
            "order-48 even-node truncation moved to {d:e} (expected ~1.77e-5)"
        );
        assert!(r.err_estimate.to_f64() >= d);
    }

    #[test]
    fn generalized30_node_reproduction_under_stretch() {
        // With stretch L, the sampled arguments are s = 2L(k+J+1); the
        // interpolant must reproduce eta there exactly.
        let ctx = ctx(192);
        let s = c(192, 12.0, 0.0); // = 2*2*(0+2+1) for L=2, J=2, k=0
        let r = eta_generalized30(&s, 8, 2, 2, &ctx).unwrap();
        let want = eta_ref(&s, &ctx).unwrap().value;
        assert!(r.value.dist(&want).to_f64() < 1e-50);
    }

    #[test]
    fn generalized30_rejects_bad_parameters() {
        let ctx = ctx(128);
        assert!(eta_generalized30(&c(128, 0.5, 0.0), 2, 0, 1, &ctx).is_err());
        assert!(eta_generalized30(&c(128, 0.5, 0.0), 8, 0, 0, &ctx).is_err());
    }
}
