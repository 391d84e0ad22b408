//! Functional-equation residual and the symmetric-combination prefactor.
//!
//! The reflection formula `zeta(1-s) = 2^(1-s) pi^(-s) cos(pi s / 2) gamma(s)
//! zeta(s)` links values across the critical line; [`functional_eq_residual`]
//! measures how far the two independently computed sides are apart, which is
//! an end-to-end check of the series evaluator, the gamma implementation, and
//! the conversion factors at once.
//!
//! [`kappa_prefactor`] packages the combination `kappa(s)` with
//! `eta(s) + eta(1-s) = kappa(s) zeta(s)`: the symmetrized eta sum that the
//! root-reconstruction machinery targets is proportional to `zeta` through
//! this explicit factor.

use rug::Float;

use crate::complex::{pi, real_pow_complex, two_pow, Complex};
use crate::error::Error;
use crate::precision::PrecisionContext;
use crate::refs::zeta_ref;
use crate::Result;

/// `chi_fe(s) = 2^(1-s) pi^(-s) cos(pi s / 2) gamma(s)`, the reflection factor.
fn reflection_factor(s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let p = ctx.working_bits();
    let sp = s.to_prec(p);
    let one = Complex::one(p);
    let two_part = two_pow(&(&one - &sp));
    let pi_p = pi(p);
    let pi_part = real_pow_complex(&pi_p, &(-&sp));
    let half_pi = pi_p / 2u32;
    let cos_part = sp.scale(&half_pi).cos();
    let gamma_part = crate::gamma::gamma(s, &ctx.elevated(16))?.to_prec(p);
    Ok(&(&(&two_part * &pi_part) * &cos_part) * &gamma_part)
}

/// Absolute residual `|zeta(1-s) - 2^(1-s) pi^(-s) cos(pi s/2) gamma(s) zeta(s)|`
/// with both zeta values taken from the series reference evaluator.
///
/// Requires `0 < Re(s) < 1` so that both `s` and `1 - s` are inside the
/// evaluator's half-plane; fails with [`Error::DomainError`] otherwise.
pub fn functional_eq_residual(s: &Complex, ctx: &PrecisionContext) -> Result<Float> {
    let sigma = s.re.to_f64();
    if !(0.0..=1.0).contains(&sigma) || sigma == 0.0 || sigma == 1.0 {
        return Err(Error::DomainError(format!(
            "functional-equation residual needs 0 < Re(s) < 1 so both sides are \
             series-evaluable; got Re(s) = {sigma}"
        )));
    }
    let p = ctx.working_bits();
    let sp = s.to_prec(p);
    let one_minus_s = &Complex::one(p) - &sp;
    let lhs = zeta_ref(&one_minus_s.to_prec(ctx.bits()), ctx)?.value;
    let rhs_zeta = zeta_ref(s, ctx)?.value;
    let factor = reflection_factor(s, ctx)?;
    let rhs = &factor * &rhs_zeta.to_prec(p);
    Ok(Float::with_val(ctx.bits(), (&lhs.to_prec(p) - &rhs).abs()))
}

/// `kappa(s) = (2^(1-s) - 2) pi^(-s) cos(pi s/2) gamma(s) + (1 - 2^(1-s))`,
/// the factor with `eta(s) + eta(1-s) = kappa(s) zeta(s)`.
pub fn kappa_prefactor(s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let p = ctx.working_bits();
    let sp = s.to_prec(p);
    let one = Complex::one(p);
    let two = &one + &one;
    let two_pow_1ms = two_pow(&(&one - &sp));
    let pi_p = pi(p);
    let pi_part = real_pow_complex(&pi_p, &(-&sp));
    let half_pi = pi_p / 2u32;
    let cos_part = sp.scale(&half_pi).cos();
    let gamma_part = crate::gamma::gamma(s, &ctx.elevated(16))?.to_prec(p);
    let left = &(&(&(&two_pow_1ms - &two) * &pi_part) * &cos_part) * &gamma_part;
    let right = &one - &two_pow_1ms;
    Ok((&left + &right).to_prec(ctx.bits()))
}

/// Symmetrized eta sum `eta(s) + eta(1-s)` via the reference evaluator,
/// usable on the open strip `0 < Re(s) < 1`.
pub fn eta_sym_ref(s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let sigma = s.re.to_f64();
    if !(0.0 < sigma && sigma < 1.0) {
        return Err(Error::DomainError(format!(
            "eta(s) + eta(1-s) by direct series needs 0 < Re(s) < 1, got {sigma}"
        )));
    }
    let p = ctx.working_bits();
    let sp = s.to_prec(p);
    let one_minus_s = (&Complex::one(p) - &sp).to_prec(ctx.bits());
    let a = crate::refs::eta_ref(s, ctx)?.value;
    let b = crate::refs::eta_ref(&one_minus_s, ctx)?.value;
    Ok((&a.to_prec(p) + &b.to_prec(p)).to_prec(ctx.bits()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    #[test]
    fn residual_vanishes_on_the_strip() {
        let ctx = ctx(192);
        for (re, im) in [(0.5, 0.0), (0.3, 1.0), (0.7, -2.5), (0.5, 14.0)] {
            let s = Complex::from_f64(192, re, im);
            let r = functional_eq_residual(&s, &ctx).unwrap();
            assert!(
                r.to_f64() < 1e-45,
                "residual at {re}+{im}i is {:e}",
                r.to_f64()
            );
        }
    }

    #[test]
    fn residual_rejects_outside_strip() {
        let ctx = ctx(128);
        for re in [-0.2, 0.0, 1.0, 1.5] {
            assert!(matches!(
                functional_eq_residual(&Complex::from_f64(128, re, 1.0), &ctx),
                Err(Error::DomainError(_))
            ));
        }
    }

    #[test]
    fn kappa_times_zeta_equals_symmetrized_eta() {
        let ctx = ctx(192);
        for (re, im) in [(0.5, 0.0), (0.25, 0.8), (0.6, -1.7)] {
            let s = Complex::from_f64(192, re, im);
            let kappa = kappa_prefactor(&s, &ctx).unwrap();
            let z = zeta_ref(&s, &ctx).unwrap().value;
            let lhs = &kappa * &z;
            let rhs = eta_sym_ref(&s, &ctx).unwrap();
            let d = lhs.dist(&rhs);
            assert!(
                d.to_f64() < 1e-48,
                "kappa identity off by {:e} at {re}+{im}i",
                d.to_f64()
            );
        }
    }

    #[test]
    fn kappa_at_half_doubles_eta() {
        // At s = 1/2 the symmetrized sum is 2 eta(1/2), so kappa(1/2) zeta(1/2)
        // must equal exactly that.
        let ctx = ctx(192);
        let s = Complex::from_f64(192, 0.5, 0.0);
        let kappa = kappa_prefactor(&s, &ctx).unwrap();
        let z = zeta_ref(&s, &ctx).unwrap().value;
        let lhs = &kappa * &z;
        let eta_half = crate::refs::eta_ref(&s, &ctx).unwrap().value;
        let two = Float::with_val(192, 2);
        let rhs = eta_half.scale(&two);
        assert!(lhs.dist(&rhs).to_f64() < 1e-50);
    }
}
