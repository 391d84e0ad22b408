//! Generalized Euler products over a prime sieve.
//!
//! Sieving the alternating series by successive primes leaves a sum over the
//! integers coprime to every prime used, with an integral correction for the
//! truncated window; dividing by `prod (1 - p_j^{-s})` turns that into a zeta
//! estimate valid (slowly) even inside the critical strip. A companion
//! norm-ratio diagnostic compares the sieved sum at `s` against the one at
//! `1 - s` — it is reported, never asserted, as its behavior off the critical
//! line is exactly what is under investigation.

use rug::{Float, Rational};

use crate::complex::{int_pow_neg_s, Complex};
use crate::error::Error;
use crate::eval::EvalResult;
use crate::precision::PrecisionContext;
use crate::Result;

/// Ascending list of the first primes, gap-free by construction.
#[derive(Debug, Clone)]
pub struct PrimeList {
    primes: Vec<u64>,
}

impl PrimeList {
    /// The first `count` primes via a plain Eratosthenes sieve.
    pub fn first(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidParam("prime list needs count >= 1".into()));
        }
        if count > 100_000 {
            return Err(Error::InvalidParam(format!(
                "prime list capped at 100000 entries, got {count}"
            )));
        }
        // Upper bound on p_count: count (ln count + ln ln count) for count >= 6.
        let bound = if count < 6 {
            14usize
        } else {
            let c = count as f64;
            (c * (c.ln() + c.ln().ln())).ceil() as usize + 2
        };
        let mut is_comp = vec![false; bound + 1];
        let mut primes = Vec::with_capacity(count);
        for q in 2..=bound {
            if !is_comp[q] {
                primes.push(q as u64);
                if primes.len() == count {
                    break;
                }
                let mut r = q * q;
                while r <= bound {
                    is_comp[r] = true;
                    r += q;
                }
            }
        }
        debug_assert_eq!(primes.len(), count);
        Ok(Self { primes })
    }

    /// Number of primes held.
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    /// True when empty (never, for a successfully built list).
    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// The `j`-th prime, 1-indexed: `nth(1) = 2`.
    pub fn nth(&self, j: usize) -> u64 {
        assert!(
            (1..=self.len()).contains(&j),
            "prime list holds {} entries but asked for #{j}",
            self.len()
        );
        self.primes[j - 1]
    }

    /// All primes as a slice.
    pub fn as_slice(&self) -> &[u64] {
        &self.primes
    }
}

/// Shared preamble: validates `(s, k, n)` against the sieve window and
/// returns the working-precision `s`.
fn check_args(
    s: &Complex,
    k: usize,
    n: usize,
    primes: &PrimeList,
    ctx: &PrecisionContext,
) -> Result<Complex> {
    if k == 0 {
        return Err(Error::InvalidParam("sieve depth k must be >= 1".into()));
    }
    if primes.len() < k {
        return Err(Error::InvalidParam(format!(
            "sieve depth {k} exceeds the supplied prime list ({} entries)",
            primes.len()
        )));
    }
    let p_k = primes.nth(k) as usize;
    if n <= p_k {
        return Err(Error::DomainError(format!(
            "window parameter n = {n} must exceed p_{k} = {p_k}"
        )));
    }
    Ok(s.to_prec(ctx.working_bits()))
}

/// Iterates the sieve survivors: odd `q` in `[3, 2n-1]` with no prime factor
/// among `3, 5, ..., p_k`, calling `f(q)` for each.
fn for_survivors(n: usize, k: usize, primes: &PrimeList, mut f: impl FnMut(u64)) {
    let small: Vec<u64> = primes.as_slice()[1..k].to_vec();
    let top = 2 * n as u64 - 1;
    let mut q = 3u64;
    while q <= top {
        if !small.iter().any(|p| q % p == 0) {
            f(q);
        }
        q += 2;
    }
}

/// Zeta estimate from the `k`-prime sieved window of half-width `n`:
///
/// `[1 + sum_(surviving q <= 2n-1) q^(-s)
///    - (2n-1)^(1-s)/(1-s) * prod_(j<=k) (1 - 1/p_j)] / prod_(j<=k) (1 - p_j^(-s))`.
///
/// The subtracted term is the integral estimate of the surviving tail mass;
/// the final division restores the full product structure. Requires
/// `Re(s) > 0`, `s != 1`, and `n > p_k` ([`Error::DomainError`] otherwise);
/// an exponentially small denominator product raises
/// [`Error::ConditioningError`].
pub fn euler_product_generalized(
    s: &Complex,
    k: usize,
    n: usize,
    primes: &PrimeList,
    ctx: &PrecisionContext,
) -> Result<Complex> {
    if s.re.to_f64() <= 0.0 {
        return Err(Error::DomainError(format!(
            "sieved product requires Re(s) > 0, got {}",
            s.re.to_f64()
        )));
    }
    let sp = check_args(s, k, n, primes, ctx)?;
    let p = ctx.working_bits();
    let one = Complex::one(p);
    let s_minus_1 = &sp - &one;
    if s_minus_1.abs() <= ctx.eps() {
        return Err(Error::PoleError(
            "the sieved product's window correction divides by 1 - s".into(),
        ));
    }

    // Denominator prod (1 - p_j^{-s}) with a conditioning guard.
    let mut denom = Complex::one(p);
    for j in 1..=k {
        let f = &one - &int_pow_neg_s(primes.nth(j), &sp);
        denom = &denom * &f;
    }
    if denom.abs() < ctx.eps().sqrt() {
        return Err(Error::ConditioningError(format!(
            "sieve prefactor product |prod(1 - p^-s)| = {:e} is below sqrt(eps)",
            denom.abs().to_f64()
        )));
    }

    // Surviving-term sum.
    let mut acc = Complex::one(p);
    for_survivors(n, k, primes, |q| {
        acc = &acc + &int_pow_neg_s(q, &sp);
    });

    // Window correction: (2n-1)^{1-s}/(1-s) * prod (1 - 1/p_j), the exact
    // integral of the survivor density against x^{-s}.
    let mut density = Rational::from(1u32);
    for j in 1..=k {
        let pj = primes.nth(j);
        density *= Rational::from((pj - 1, pj));
    }
    let top = Float::with_val(p, 2 * n as u64 - 1);
    // Subtracting T = (2n-1)^{1-s} density / (1-s) is adding T' = ... / (s-1).
    let correction = crate::complex::real_pow_complex(&top, &(&one - &sp))
        .scale(&Float::with_val(p, &density))
        / &s_minus_1;
    let numer = &acc + &correction;
    Ok((&numer / &denom).to_prec(ctx.bits()))
}

/// [`euler_product_generalized`] wrapped with series metadata for the CLI:
/// `terms_used` counts the surviving summands (including the leading 1) and
/// `err_estimate = 2 |V_n - V_(n/2)| + 4 eps |value|` tracks the drift
/// between dyadic window sizes.
pub fn euler_product_eval(
    s: &Complex,
    k: usize,
    n: usize,
    primes: &PrimeList,
    ctx: &PrecisionContext,
) -> Result<EvalResult> {
    let value = euler_product_generalized(s, k, n, primes, ctx)?;
    let mut terms = 1usize;
    for_survivors(n, k, primes, |_| terms += 1);
    let half_n = (n / 2).max(primes.nth(k) as usize + 1);
    let half = euler_product_generalized(s, k, half_n, primes, ctx)?;
    let mut err = Float::with_val(64, value.dist(&half)) * 2u32;
    err += Float::with_val(64, value.abs() * ctx.eps()) * 4u32;
    Ok(EvalResult::new(value, terms, err, "euler_product"))
}

/// Norm-ratio diagnostic over the sieved set `Q = {1} ∪ {survivors}`:
/// `|sum_(q in Q) q^(-s)| / |sum_(q in Q) q^(s-1)|`.
///
/// Defined on `0 < Re(s) <= 1/2` ([`Error::DomainError`] outside). Purely
/// reported — the interesting comparison is against
/// [`norm_ratio15_rhs`], and neither side is asserted to converge.
pub fn norm_ratio15(
    s: &Complex,
    k: usize,
    n: usize,
    primes: &PrimeList,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let sigma = s.re.to_f64();
    if sigma <= 0.0 || sigma > 0.5 {
        return Err(Error::DomainError(format!(
            "norm ratio is defined on 0 < Re(s) <= 1/2, got {sigma}"
        )));
    }
    let sp = check_args(s, k, n, primes, ctx)?;
    let p = ctx.working_bits();
    let one = Complex::one(p);
    let s_refl = &sp - &one; // exponent s - 1 = -(1 - s)
    let mut num = Complex::one(p);
    let mut den = Complex::one(p);
    for_survivors(n, k, primes, |q| {
        num = &num + &int_pow_neg_s(q, &sp);
        // q^{s-1} = q^{-(1-s)}
        let qf = Float::with_val(p, q);
        den = &den + &crate::complex::real_pow_complex(&qf, &s_refl);
    });
    let ratio = num.abs() / den.abs();
    Ok(Float::with_val(ctx.bits(), ratio))
}

/// The comparison side of the norm-ratio diagnostic:
/// `(2n-1)^(1-2 Re(s)) |s| / |1-s|`.
pub fn norm_ratio15_rhs(s: &Complex, n: usize, ctx: &PrecisionContext) -> Result<Float> {
    let sigma = s.re.to_f64();
    if sigma <= 0.0 || sigma > 0.5 {
        return Err(Error::DomainError(format!(
            "norm ratio is defined on 0 < Re(s) <= 1/2, got {sigma}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParam("window parameter n must be >= 1".into()));
    }
    let p = ctx.working_bits();
    let sp = s.to_prec(p);
    let one = Complex::one(p);
    let diff = &one - &sp;
    if diff.abs() <= ctx.eps() {
        return Err(Error::PoleError("the comparison divides by |1 - s|".into()));
    }
    let top = Float::with_val(p, 2 * n as u64 - 1);
    let expo = Float::with_val(p, 1u32) - Float::with_val(p, &sp.re) * 2u32;
    let power = (top.ln() * expo).exp();
    let out = power * sp.abs() / diff.abs();
    Ok(Float::with_val(ctx.bits(), out))
}
