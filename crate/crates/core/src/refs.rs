//! Reference evaluators for the Dirichlet eta and Riemann zeta functions.
//!
//! Both are built on binomial-weighted acceleration of alternating series
//! (Chebyshev-polynomial weights), which turns the conditionally convergent
//! eta series into one gaining about 1.31 correct digits per term everywhere
//! in the right half-plane. The scalar form [`eta_ref`] handles arbitrary
//! complex arguments with `Re(s) > 0`; [`EtaInts`] batches the same weights
//! across every integer argument up to a bound, storing `eta(m) - 1` so that
//! the tiny fractional parts keep full *relative* precision (the downstream
//! finite-difference transforms multiply them by huge binomials, and only the
//! relative form keeps the cancellation analysis honest).

use rug::ops::{CompleteRound, Pow};
use rug::{Float, Integer, Rational};

use crate::complex::{int_pow_neg_s, pi, two_pow, Complex};
use crate::error::Error;
use crate::eval::EvalResult;
use crate::precision::PrecisionContext;
use crate::Result;

/// Number of acceleration terms needed for `digits10` decimal digits with an
/// imaginary offset `|t|`: each term contributes `log10(3 + sqrt 8) ~ 1/1.31`
/// digits, and the growth factor `e^{pi |t| / 2}` costs `0.683 |t|` digits.
fn accel_terms(working_bits: u32, im_abs: f64) -> usize {
    let digits = working_bits as f64 * std::f64::consts::LOG10_2;
    (1.31 * (digits + 0.683 * im_abs + 10.0)).ceil() as usize
}

/// Truncation-error bound of the accelerated series: `(3 + sqrt 8)^{-n}`
/// times a growth penalty in the argument.
fn accel_err_bound(n: usize, s: &Complex) -> Float {
    let p = 64;
    let q = Float::with_val(p, 8u32).sqrt() + 3u32;
    let mut bound = -Float::with_val(p, n as u32) * q.ln();
    // penalty e^{pi |t| / 2} (1 + |t|) (1 + 1/sigma)
    let t = Float::with_val(p, &s.im).abs();
    bound += Float::with_val(p, pi(p) * &t) / 2u32;
    bound = bound.exp();
    bound *= Float::with_val(p, &t + 1u32);
    let sigma = Float::with_val(p, &s.re);
    bound *= Float::with_val(p, 1u32 + Float::with_val(p, 1u32) / sigma);
    bound
}

/// Accelerated evaluation of `eta(s)` for `Re(s) > 0`.
///
/// `terms_used` is the acceleration order `n`; `err_estimate` is
/// `max((3+sqrt 8)^{-n} e^{pi |t|/2} (1+|t|) (1+1/sigma), 4 eps |value|)`.
pub fn eta_ref(s: &Complex, ctx: &PrecisionContext) -> Result<EvalResult> {
    if !s.is_finite() {
        return Err(Error::DomainError("eta of a non-finite argument".into()));
    }
    if s.re <= 0u32 {
        return Err(Error::DomainError(format!(
            "accelerated eta series requires Re(s) > 0, got Re(s) = {}",
            s.re.to_f64()
        )));
    }
    let p = ctx.working_bits();
    let n = accel_terms(p, s.im.to_f64().abs());
    let sp = s.to_prec(p);

    // d = ((3+sqrt 8)^n + (3+sqrt 8)^{-n}) / 2
    let mut d = Float::with_val(p, 8u32).sqrt() + 3u32;
    d = d.pow(n as u32);
    d = (Float::with_val(p, 1u32) / &d + &d) / 2u32;

    let mut b = Float::with_val(p, -1);
    let mut c = (-&d).complete(p);
    let mut acc = Complex::zero(p);
    for k in 0..n {
        c = (&b - &c).complete(p);
        let a_k = int_pow_neg_s(k as u64 + 1, &sp);
        acc = &acc + &a_k.scale(&c);
        let num = Float::with_val(p, (k + n) as u64) * Float::with_val(p, k as i64 - n as i64);
        let den = (Float::with_val(p, k as u64) + 0.5f64) * Float::with_val(p, k as u64 + 1);
        b = b * num / den;
    }
    let value = acc.unscale(&d).to_prec(ctx.bits());

    let mut err = accel_err_bound(n, s);
    let round_err = Float::with_val(64, value.abs() * ctx.eps()) * 4u32;
    if round_err > err {
        err = round_err;
    }
    Ok(EvalResult::new(value, n, err, "eta_ref"))
}

/// `zeta(s) = eta(s) / (1 - 2^{1-s})` for `Re(s) > 0`, `s != 1`.
///
/// Fails with [`Error::PoleError`] at `s = 1` and with
/// [`Error::ConditioningError`] when `1 - 2^{1-s}` is smaller than
/// `sqrt(eps)` (the spurious zeros of the conversion factor at
/// `s = 1 + 2 pi i k / ln 2`).
pub fn zeta_ref(s: &Complex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let den = conversion_denominator(s, ctx)?;
    let eta = eta_ref(s, ctx)?;
    let value = (&eta.value / &den).to_prec(ctx.bits());
    let den_abs = Float::with_val(64, den.abs());
    let mut err = Float::with_val(64, &eta.err_estimate / &den_abs);
    err += Float::with_val(64, value.abs() * ctx.eps()) * 4u32;
    Ok(EvalResult::new(value, eta.terms_used, err, "zeta_ref"))
}

/// The eta-to-zeta conversion denominator `1 - 2^{1-s}`, with pole and
/// conditioning guards shared by every scheme that divides by it.
pub fn conversion_denominator(s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let p = ctx.working_bits();
    let one = Complex::one(p);
    let sp = s.to_prec(p);
    let dist_one = (&sp - &one).abs();
    if dist_one <= ctx.eps() {
        return Err(Error::PoleError(
            "zeta has its pole at s = 1 (eta(1) = ln 2 cancels against the conversion factor)"
                .into(),
        ));
    }
    let expo = &one - &sp;
    let den = &one - &two_pow(&expo);
    let half_eps = ctx.eps().sqrt();
    if den.abs() < half_eps {
        return Err(Error::ConditioningError(format!(
            "conversion factor 1 - 2^(1-s) = {:e} is below sqrt(eps); \
             s is too close to the line of spurious zeros s = 1 + 2 pi i k / ln 2",
            den.abs().to_f64()
        )));
    }
    Ok(den)
}

/// Shared-weight table of `eta(m) - 1` for integer arguments `m = 2..=max_arg`.
///
/// The binomial acceleration weights are computed once as exact rationals and
/// applied to the shifted series `eta(m) - 1 = -sum_{k>=0} (-1)^k (k+2)^{-m}`,
/// so each stored value has full relative precision at `bits` even though
/// `eta(m) - 1 ~ -2^{-m}` is tiny. Small arguments go through the accelerated
/// weights (the raw series crawls there); once `m` is large enough that the
/// raw terms decay by a factor `((k+2)/(k+3))^m` fast on their own, the plain
/// alternating sum is cheaper than one weight pass and is used instead. Reads
/// are cheap and the table is immutable after build.
#[derive(Debug)]
pub struct EtaInts {
    bits: u32,
    /// `em1[i]` holds `eta(i + 2) - 1`.
    em1: Vec<Float>,
}

impl EtaInts {
    /// Builds the table for arguments `2..=max_arg` at `bits` of precision.
    pub fn build(max_arg: usize, bits: u32) -> Result<Self> {
        if max_arg < 2 {
            return Err(Error::InvalidParam(format!(
                "integer eta table needs max_arg >= 2, got {max_arg}"
            )));
        }
        let p = bits + 16;
        let n = accel_terms(p, 0.0);

        // Crossover: the plain alternating sum for argument m needs about
        // 2^(p/m + 1) terms (truncation relative to the leading 2^{-m});
        // prefer it once that beats the n-weight accelerated pass.
        let crossover = (f64::from(p) / (0.2 * f64::from(p)).log2()).ceil() as usize;
        let m_switch = crossover.max(32).min(max_arg);

        // Exact Chebyshev partial sums d_k via the term recurrence
        // T_0 = 1, T_i = T_{i-1} * 4 (n+i-1)(n-i+1) / ((2i-1)(2i)).
        let mut t = Rational::from(1);
        let mut d_partial: Vec<Rational> = Vec::with_capacity(n + 1);
        let mut dsum = Rational::from(1);
        d_partial.push(dsum.clone());
        for i in 1..=n {
            let num = Rational::from(4u32)
                * Rational::from((n + i - 1) as u64)
                * Rational::from((n - i + 1) as u64);
            let den = Rational::from((2 * i - 1) as u64) * Rational::from((2 * i) as u64);
            t *= num / den;
            dsum += &t;
            d_partial.push(dsum.clone());
        }
        let d_n = d_partial[n].clone();
        let d_float = Float::with_val(p, &d_n);

        // w_k = (-1)^k (d_n - d_k) as working-precision floats.
        let weights: Vec<Float> = (0..n)
            .map(|k| {
                let w = Rational::from(&d_n - &d_partial[k]);
                let mut wf = Float::with_val(p, &w);
                if k % 2 == 1 {
                    wf = -wf;
                }
                wf
            })
            .collect();

        // acc[m-2] accumulates sum_k w_k (k+2)^{-m}; eta(m)-1 = -acc/d.
        // Only arguments up to m_switch take this route.
        let mut acc: Vec<Float> = (0..=m_switch - 2).map(|_| Float::new(p)).collect();
        for (k, w) in weights.iter().enumerate() {
            let base = Float::with_val(p, (k + 2) as u64);
            let mut q = Float::with_val(p, 1u32) / Float::with_val(p, &base * &base);
            for slot in acc.iter_mut() {
                *slot += Float::with_val(p, w * &q);
                q /= &base;
            }
        }
        let mut em1: Vec<Float> = acc
            .into_iter()
            .map(|a| -Float::with_val(bits, a / &d_float))
            .collect();
        for m in m_switch + 1..=max_arg {
            em1.push(Float::with_val(bits, Self::plain_shifted_eta(m, p)));
        }
        Ok(Self { bits, em1 })
    }

    /// `eta(m) - 1` by the raw alternating sum, for `m` large enough that
    /// the terms decay geometrically on their own.
    fn plain_shifted_eta(m: usize, p: u32) -> Float {
        let mut acc = Float::new(p);
        let mut cutoff = Float::with_val(p, 1u32);
        cutoff >>= m as u32 + p + 10; // first term 2^{-m}, relative floor 2^{-p-10}
        for k in 0usize.. {
            let denom = Integer::from(k + 2).pow(m as u32);
            let t = Float::with_val(p, denom).recip();
            let done = t < cutoff;
            if k % 2 == 0 {
                acc -= &t;
            } else {
                acc += &t;
            }
            if done {
                break;
            }
        }
        acc
    }

    /// Largest integer argument covered.
    pub fn max_arg(&self) -> usize {
        self.em1.len() + 1
    }

    /// Precision of the stored values.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// `eta(m) - 1`, full relative precision. Panics if `m` is out of range
    /// (table sizing is the caller's structural responsibility).
    pub fn eta_minus_1(&self, m: usize) -> &Float {
        assert!(
            (2..=self.max_arg()).contains(&m),
            "eta table built to {} but asked for {m}",
            self.max_arg()
        );
        &self.em1[m - 2]
    }

    /// `eta(m)`.
    pub fn eta(&self, m: usize) -> Float {
        (self.eta_minus_1(m) + 1u32).complete(self.bits)
    }

    /// `zeta(m) - 1 = (eta(m) - 1 + 2^{1-m}) / (1 - 2^{1-m})`, which loses
    /// only a couple of bits to cancellation.
    pub fn zeta_minus_1(&self, m: usize) -> Float {
        let p = self.bits;
        let mut pow = Float::with_val(p, 1u32);
        pow >>= (m - 1) as u32; // 2^{1-m}, exact
        let num = (self.eta_minus_1(m) + &pow).complete(p);
        let den = (1u32 - &pow).complete(p);
        num / den
    }

    /// `zeta(m)`.
    pub fn zeta(&self, m: usize) -> Float {
        self.zeta_minus_1(m) + 1u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    #[test]
    fn eta_at_one_is_ln_two() {
        let ctx = ctx(256);
        let s = Complex::from_f64(256, 1.0, 0.0);
        let r = eta_ref(&s, &ctx).unwrap();
        let want = Float::with_val(300, rug::float::Constant::Log2);
        let d = (r.value.re.clone() - &want).abs();
        assert!(d.to_f64() < 1e-74, "|eta(1) - ln 2| = {:e}", d.to_f64());
        assert!(r.value.im.to_f64().abs() < 1e-74);
        assert!(r.err_estimate.to_f64() > 0.0);
    }

    #[test]
    fn eta_at_two_is_pi_sq_over_twelve() {
        let ctx = ctx(256);
        let s = Complex::from_f64(256, 2.0, 0.0);
        let r = eta_ref(&s, &ctx).unwrap();
        let want = pi(300).square() / 12u32;
        let d = (r.value.re.clone() - &want).abs();
        assert!(d.to_f64() < 1e-74);
    }

    #[test]
    fn zeta_at_half_matches_reference_digits() {
        let ctx = ctx(256);
        let s = Complex::from_f64(256, 0.5, 0.0);
        let r = zeta_ref(&s, &ctx).unwrap();
        let want = Float::parse("-1.4603545088095868128894991525152980124672293310125814905428")
            .unwrap()
            .complete(300);
        let d = (r.value.re.clone() - &want).abs();
        assert!(d.to_f64() < 1e-55, "zeta(1/2) off by {:e}", d.to_f64());
    }

    #[test]
    fn zeta_at_two_is_pi_sq_over_six() {
        let ctx = ctx(192);
        let s = Complex::from_f64(192, 2.0, 0.0);
        let r = zeta_ref(&s, &ctx).unwrap();
        let want = pi(200).square() / 6u32;
        let d = (r.value.re.clone() - &want).abs();
        assert!(d.to_f64() < 1e-55);
    }

    #[test]
    fn eta_rejects_left_half_plane() {
        let ctx = ctx(128);
        assert!(matches!(
            eta_ref(&Complex::from_f64(128, -0.5, 3.0), &ctx),
            Err(Error::DomainError(_))
        ));
        assert!(matches!(
            eta_ref(&Complex::from_f64(128, 0.0, 3.0), &ctx),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn zeta_pole_and_spurious_zero_guards() {
        let ctx = ctx(128);
        assert!(matches!(
            zeta_ref(&Complex::from_f64(128, 1.0, 0.0), &ctx),
            Err(Error::PoleError(_))
        ));
        // First spurious zero of 1 - 2^{1-s}: s = 1 + 2 pi i / ln 2, built at
        // full precision so the conversion factor really is tiny.
        let t = pi(128) * 2u32 / Float::with_val(128, rug::float::Constant::Log2);
        let s_spur = Complex::new(Float::with_val(128, 1), t);
        assert!(matches!(
            zeta_ref(&s_spur, &ctx),
            Err(Error::ConditioningError(_))
        ));
        // Far from both: fine.
        assert!(zeta_ref(&Complex::from_f64(128, 1.0, 4.0), &ctx).is_ok());
    }

    #[test]
    fn complex_point_satisfies_eta_zeta_relation() {
        let ctx = ctx(192);
        let s = Complex::from_f64(192, 0.2, 2.0);
        let eta = eta_ref(&s, &ctx).unwrap();
        let zeta = zeta_ref(&s, &ctx).unwrap();
        let den = conversion_denominator(&s, &ctx).unwrap();
        let back = &zeta.value * &den;
        assert!(back.dist(&eta.value).to_f64() < 1e-50);
    }

    #[test]
    fn integer_table_matches_scalar_eta() {
        let ctx = ctx(256);
        let table = EtaInts::build(12, 320).unwrap();
        for m in 2..=12usize {
            let s = Complex::from_f64(256, m as f64, 0.0);
            let scalar = eta_ref(&s, &ctx).unwrap();
            let d = (table.eta(m) - &scalar.value.re).abs();
            assert!(d.to_f64() < 1e-74, "eta({m}) mismatch {:e}", d.to_f64());
        }
    }

    #[test]
    fn integer_table_relative_precision_survives_large_m() {
        // eta(400) - 1 ~ -2^-400; the stored value must carry ~bits of
        // relative precision, far beyond what subtracting from eta(400)
        // at 320 bits could give.
        let table = EtaInts::build(400, 320).unwrap();
        let e = table.eta_minus_1(400);
        // Leading behavior: -(2^-400)(1 - (2/3)^400 + ...) so the exponent
        // must be exactly -400 + 1 bits-ish.
        assert!(e.is_sign_negative());
        let mag = e.clone().abs();
        let lg = mag.ln() / Float::with_val(64, rug::float::Constant::Log2);
        let l = lg.to_f64();
        assert!(l < -399.9 && l > -400.1, "log2|eta(400)-1| = {l}");
    }

    #[test]
    fn integer_table_routes_agree_across_crossover() {
        // At 256 bits the build switches from accelerated weights to the
        // plain alternating sum near m = 48; at 2000 bits everything up to
        // m = 80 stays on the accelerated route. The two builds must agree
        // to the smaller precision on both sides of the first build's switch.
        let lo = EtaInts::build(80, 256).unwrap();
        let hi = EtaInts::build(80, 2000).unwrap();
        for m in 40..=60usize {
            let a = lo.eta_minus_1(m);
            let b = hi.eta_minus_1(m);
            let d = (a - b).complete(2000).abs();
            let rel = d / b.clone().abs();
            assert!(
                rel.to_f64() < 1e-74,
                "relative route mismatch {:e} at m = {m}",
                rel.to_f64()
            );
        }
    }

    #[test]
    fn integer_table_zeta_values() {
        let table = EtaInts::build(6, 256).unwrap();
        let want = pi(300).square() / 6u32;
        let d = (table.zeta(2) - &want).abs();
        assert!(d.to_f64() < 1e-70);
        // zeta(4) = pi^4 / 90
        let want4 = pi(300).pow(4u32) / 90u32;
        let d4 = (table.zeta(4) - &want4).abs();
        assert!(d4.to_f64() < 1e-70);
    }
}
