//! Independent quadrature oracle for eta/zeta via the integral
//! `integral_0^inf x^(s-1) / (e^x + 1) dx = gamma(s) eta(s)`.
//!
//! The integral is split at `c = max(1, |Im s|)` and each piece is handled by
//! a double-exponential transformation: tanh-sinh on `(0, c)` (absorbing the
//! `x^(s-1)` endpoint singularity for small `Re s`) and exp-sinh on the tail.
//! Steps are halved adaptively, reusing all previously evaluated nodes, until
//! two consecutive refinements agree to working precision or the shared node
//! budget of `2^18` evaluations is exhausted ([`Error::QuadratureError`]).
//!
//! This path shares no series machinery with [`crate::refs`], so agreement
//! between the two is a genuine cross-check of both.

use rug::Float;

use crate::complex::{pi, real_pow_complex, Complex};
use crate::error::Error;
use crate::eval::EvalResult;
use crate::gamma::gamma;
use crate::precision::PrecisionContext;
use crate::refs::conversion_denominator;
use crate::Result;

/// Total integrand-evaluation budget per oracle call.
const NODE_BUDGET: usize = 1 << 18;

/// Maximum refinement depth of the step-halving loop.
const MAX_LEVEL: u32 = 14;

struct Budget {
    used: usize,
}

impl Budget {
    fn take(&mut self, n: usize) -> Result<()> {
        self.used += n;
        if self.used > NODE_BUDGET {
            Err(Error::QuadratureError(format!(
                "double-exponential refinement exhausted the {NODE_BUDGET}-node budget \
                 before reaching working precision"
            )))
        } else {
            Ok(())
        }
    }
}

/// One abscissa of a double-exponential rule: the mapped point and the
/// transformation weight (derivative of the map).
trait DeMap {
    fn node(&self, u: &Float) -> (Float, Float);
}

/// `x = c/2 (1 + tanh((pi/2) sinh u))` mapping `R -> (0, c)`.
struct TanhSinh {
    c: Float,
    half_pi: Float,
}

impl DeMap for TanhSinh {
    fn node(&self, u: &Float) -> (Float, Float) {
        let p = u.prec();
        let (sinh_u, cosh_u) = u.clone().sinh_cosh(Float::new(p));
        let w_arg = Float::with_val(p, &self.half_pi * &sinh_u);
        // 1 + tanh(w) rounds to 0 or 2 for large |w|, losing the node
        // entirely; c/2 (1 + tanh w) = c / (1 + e^(-2w)) keeps full relative
        // precision at both endpoints.
        let e_m2w = Float::with_val(p, &w_arg * &Float::with_val(p, -2))
            .exp();
        let x = Float::with_val(p, &self.c) / Float::with_val(p, 1u32 + &e_m2w);
        // dx/du = c/2 * (pi/2) cosh u * sech^2(w), with sech via exponentials.
        let e_w = Float::with_val(p, w_arg.exp_ref());
        let sech = Float::with_val(p, 2u32)
            / (Float::with_val(p, 1u32) / &e_w + &e_w);
        let half_c = Float::with_val(p, &self.c) / 2u32;
        let w = half_c * &self.half_pi * cosh_u * sech.clone() * sech;
        (x, w)
    }
}

/// `y = exp((pi/2) sinh u)` mapping `R -> (0, inf)`; the integrand is
/// evaluated at `c + y`.
struct ExpSinh {
    c: Float,
    half_pi: Float,
}

impl DeMap for ExpSinh {
    fn node(&self, u: &Float) -> (Float, Float) {
        let p = u.prec();
        let (sinh_u, cosh_u) = u.clone().sinh_cosh(Float::new(p));
        let y = Float::with_val(p, &self.half_pi * &sinh_u).exp();
        let x = Float::with_val(p, &self.c + &y);
        // dy/du = (pi/2) cosh u * y
        let w = Float::with_val(p, &self.half_pi * &cosh_u) * &y;
        (x, w)
    }
}

/// Integrand `x^(s-1) / (e^x + 1)`, with an explicit cutoff once the
/// exponential damping alone puts the term far below working precision
/// (avoids Inf/Inf artifacts deep in the tail).
fn integrand(x: &Float, s_minus_1: &Complex, cutoff: f64) -> Complex {
    let p = x.prec();
    if x.to_f64() > cutoff {
        return Complex::zero(p);
    }
    let num = real_pow_complex(x, s_minus_1);
    let den = Float::with_val(p, x.exp_ref()) + 1u32;
    num.unscale(&den)
}

/// Trapezoid sum over one DE map with step halving; returns the integral and
/// the last refinement difference (error proxy).
fn de_piece(
    map: &dyn DeMap,
    s_minus_1: &Complex,
    u_max: f64,
    p: u32,
    cutoff: f64,
    budget: &mut Budget,
) -> Result<(Complex, Float)> {
    let tol = {
        let mut t = Float::with_val(p, 1u32);
        t >>= p - 12;
        t
    };
    let mut h = Float::with_val(p, 0.5f64);
    let n0 = (u_max / 0.5).ceil() as i64;
    budget.take((2 * n0 + 1) as usize)?;

    let eval_at = |i: i64, step: &Float, budget_x: &mut Budget| -> Result<Complex> {
        let _ = budget_x;
        let u = Float::with_val(p, i) * step;
        let (x, w) = map.node(&u);
        Ok(integrand(&x, s_minus_1, cutoff).scale(&w))
    };

    // Level 0: nodes at every multiple of h in [-u_max, u_max].
    let mut sum = Complex::zero(p);
    for i in -n0..=n0 {
        sum = &sum + &eval_at(i, &h, budget)?;
    }
    let mut value = sum.scale(&h);
    let mut last_diff = Float::with_val(64, 1);

    for _level in 1..=MAX_LEVEL {
        let h_new = Float::with_val(p, &h) / 2u32;
        let n_new = {
            let full = Float::with_val(64, u_max) / Float::with_val(64, &h_new);
            full.to_f64().ceil() as i64
        };
        // New nodes: odd multiples of h_new.
        let odd_count = n_new - n_new / 2;
        budget.take((2 * odd_count) as usize)?;
        let mut new_sum = Complex::zero(p);
        let mut i = 1i64;
        while i <= n_new {
            new_sum = &new_sum + &eval_at(i, &h_new, budget)?;
            new_sum = &new_sum + &eval_at(-i, &h_new, budget)?;
            i += 2;
        }
        let refined = &value.scale(&Float::with_val(p, 0.5f64)) + &new_sum.scale(&h_new);
        let diff = refined.dist(&value);
        let scale = refined.abs() + 1u32;
        let converged = diff < Float::with_val(p, &tol * &scale);
        last_diff = Float::with_val(64, &diff);
        value = refined;
        h = h_new;
        if converged {
            return Ok((value, last_diff));
        }
    }
    Err(Error::QuadratureError(format!(
        "double-exponential refinement did not converge within {MAX_LEVEL} levels \
         (last refinement difference {:e})",
        last_diff.to_f64()
    )))
}

/// `eta(s)` by adaptive double-exponential quadrature, for `Re(s) > 0`.
///
/// `terms_used` is the number of integrand evaluations; `err_estimate` is the
/// last refinement difference of the two pieces plus the gamma division's
/// rounding, all divided by `|gamma(s)|`.
pub fn eta_quad_oracle(s: &Complex, ctx: &PrecisionContext) -> Result<EvalResult> {
    if !s.is_finite() {
        return Err(Error::DomainError("eta of a non-finite argument".into()));
    }
    if s.re <= 0u32 {
        return Err(Error::DomainError(format!(
            "the factorial-weighted integral representation requires Re(s) > 0, got {}",
            s.re.to_f64()
        )));
    }
    let p = ctx.working_bits();
    let sp = s.to_prec(p);
    let s_minus_1 = &sp - &Complex::one(p);
    let half_pi = pi(p) / 2u32;
    let t_abs = s.im.to_f64().abs();
    let c = Float::with_val(p, t_abs.max(1.0));
    // Integrand magnitude is below 2^-(p+64) once x exceeds this.
    let cutoff = (p as f64 + 64.0) * std::f64::consts::LN_2 + 200.0;
    // Map weights decay like exp(-(pi/2) e^u); near x = 0 the x^(sigma-1)
    // singularity slows that to exp(-sigma (pi/2) e^u), so the finite piece
    // needs a window widened by ln(1/sigma).
    let target = (p as f64 + 16.0) * std::f64::consts::LN_2 / half_pi.to_f64();
    let sigma_eff = s.re.to_f64().min(1.0);
    let u_max_finite = (target / sigma_eff).ln().max(1.0) + 0.5;
    let u_max_tail = target.ln().max(1.0) + 0.5;

    let mut budget = Budget { used: 0 };
    let finite = TanhSinh {
        c: c.clone(),
        half_pi: half_pi.clone(),
    };
    let (i1, d1) = de_piece(&finite, &s_minus_1, u_max_finite, p, cutoff, &mut budget)?;
    let tail = ExpSinh {
        c: c.clone(),
        half_pi,
    };
    let (i2, d2) = de_piece(&tail, &s_minus_1, u_max_tail, p, cutoff, &mut budget)?;

    let integral = &i1 + &i2;
    let g = gamma(&sp.to_prec(ctx.bits()), ctx)?;
    let g_elev = g.to_prec(p);
    let value = (&integral / &g_elev).to_prec(ctx.bits());

    let g_abs = Float::with_val(64, g.abs());
    let mut err = (d1 + d2) / &g_abs;
    err += Float::with_val(64, value.abs() * ctx.eps()) * 4u32;
    Ok(EvalResult::new(value, budget.used, err, "eta_quad"))
}

/// `zeta(s)` from the quadrature oracle, with the usual conversion guards.
pub fn zeta_quad_oracle(s: &Complex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let den = conversion_denominator(s, ctx)?;
    let eta = eta_quad_oracle(s, ctx)?;
    let value = (&eta.value / &den).to_prec(ctx.bits());
    let den_abs = Float::with_val(64, den.abs());
    let mut err = Float::with_val(64, &eta.err_estimate / &den_abs);
    err += Float::with_val(64, value.abs() * ctx.eps()) * 4u32;
    Ok(EvalResult::new(value, eta.terms_used, err, "zeta_quad"))
}
