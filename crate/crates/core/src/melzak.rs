//! The finite binomial-weighted transform that recovers `f(x-y)` from the
//! samples `f(x), f(x-1), ..., f(x-m)` of a degree-`m` polynomial, the
//! residual diagnostic that probes whether an entire function behaves like a
//! pseudo-finite-degree polynomial under it, and the factorial identities it
//! yields when fed the central-binomial ratio — ending in the all-positive
//! coefficient decomposition of the alternating zeta series and the
//! evaluation scheme built from it ([`eta_via66`]).

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::chi::finite_difference_bits;
use crate::complex::Complex;
use crate::error::Error;
use crate::eval::EvalResult;
use crate::gamma::gamma;
use crate::precision::PrecisionContext;
use crate::refs::EtaInts;
use crate::schemes::{lagrange_numerators, melzak_tail_estimate, MAX_ORDER};
use crate::Result;

/// Dense polynomial with complex coefficients in ascending order.
///
/// The coefficient list is trimmed so the leading coefficient is nonzero;
/// the zero polynomial keeps a single zero coefficient and reports degree 0.
#[derive(Debug, Clone)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros.
    pub fn new(mut coeffs: Vec<Complex>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map(Complex::is_zero) == Some(true) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex::zero(64));
        }
        Self { coeffs }
    }

    /// Convenience constructor from real `f64` coefficients at `prec` bits.
    pub fn from_f64(prec: u32, coeffs: &[f64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Complex::from_f64(prec, c, 0.0))
                .collect(),
        )
    }

    /// Degree after trimming (0 for constants and the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Ascending coefficient slice.
    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Horner evaluation carried out at `p` bits.
    pub fn eval_at(&self, z: &Complex, p: u32) -> Complex {
        let zp = z.to_prec(p);
        let mut acc = Complex::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &zp) + &c.to_prec(p);
        }
        acc
    }
}

/// Returns the node in `{0..m}` that `y` collides with, if any.
fn colliding_node(y: &Complex, m: usize, eps: &Float) -> Option<usize> {
    let p = y.prec();
    (0..=m).find(|&t| {
        let node = Complex::from_real(Float::with_val(p, t as u64));
        y.dist(&node) <= *eps
    })
}

/// `y * C(m-y, m)` — the transform's front factor — as
/// `y * prod_{j=1}^{m} (j-y) / m!`, exact in structure (no gamma).
fn front_factor(y: &Complex, m: usize, p: u32) -> Complex {
    let mut acc = y.to_prec(p);
    let mut m_fact = Integer::from(1);
    for j in 1..=m {
        let node = &Complex::from_real(Float::with_val(p, j as u64)) - &y.to_prec(p);
        acc = &acc * &node;
        m_fact *= j as u64;
    }
    acc.unscale(&Float::with_val(p, m_fact))
}

/// Recovers `f(x-y)` from equally spaced samples via
///
/// `y C(m-y, m) sum_{k=0}^{m} (-1)^k C(m,k) f(x-k) / (y-k)`
///
/// with `m` the truncation order — exact whenever `deg f <= m`. The
/// alternating binomial sum is evaluated with `m + 64` extra bits against
/// its `2^m`-scale cancellation.
pub fn melzak_transform_with_order(
    f: &Polynomial,
    m: usize,
    x: &Complex,
    y: &Complex,
    ctx: &PrecisionContext,
) -> Result<Complex> {
    if let Some(t) = colliding_node(y, m, &ctx.eps()) {
        return Err(Error::ForbiddenNodeError(format!(
            "transform offset y = {} + {}i collides with node {t}",
            y.re.to_f64(),
            y.im.to_f64()
        )));
    }
    let p = ctx.working_bits() + m as u32 + 64;
    let xp = x.to_prec(p);
    let yp = y.to_prec(p);

    let mut acc = Complex::zero(p);
    let mut binom = Integer::from(1);
    for k in 0..=m {
        if k > 0 {
            binom *= (m - k + 1) as u64;
            binom /= k as u64;
        }
        let sample_point = &xp - &Complex::from_real(Float::with_val(p, k as u64));
        let fx = f.eval_at(&sample_point, p);
        let den = &yp - &Complex::from_real(Float::with_val(p, k as u64));
        let mut t = (&fx / &den).scale(&Float::with_val(p, &binom));
        if k % 2 == 1 {
            t = t.scale(&Float::with_val(p, -1));
        }
        acc = &acc + &t;
    }
    let value = &front_factor(&yp, m, p) * &acc;
    Ok(value.to_prec(ctx.bits()))
}

/// [`melzak_transform_with_order`] at the polynomial's own degree, where the
/// recovery is exact.
pub fn melzak_transform(
    f: &Polynomial,
    x: &Complex,
    y: &Complex,
    ctx: &PrecisionContext,
) -> Result<Complex> {
    melzak_transform_with_order(f, f.degree(), x, y, ctx)
}

/// How far `f` is from pseudo-finite-degree behavior at order `m`:
///
/// `| y C(m-y,m) sum_k (-1)^k C(m,k) [f(-k) - f_m(-k)] / (y-k) |`
///
/// where `f` is given by its Taylor coefficients at 0 and `f_m` truncates at
/// degree `m`. Tends to 0 in `m` exactly for admissible functions
/// (exponential decay on the sampled ray); stays put or grows for
/// non-admissible ones like cosine.
///
/// The supplied coefficient list must make the series tail at `x = -m`
/// negligible at target precision, otherwise [`Error::ConvergenceError`] is
/// raised; a list no longer than `m+1` coefficients means `f = f_m` and the
/// residual is exactly zero.
pub fn admissibility_residual(
    taylor_coeffs: &[Float],
    y: &Complex,
    m: usize,
    ctx: &PrecisionContext,
) -> Result<Float> {
    if m == 0 {
        return Err(Error::InvalidParam(
            "admissibility order must be at least 1".into(),
        ));
    }
    if let Some(t) = colliding_node(y, m, &ctx.eps()) {
        return Err(Error::ForbiddenNodeError(format!(
            "offset y collides with node {t}"
        )));
    }
    let n_coeffs = taylor_coeffs.len();
    if n_coeffs <= m + 1 {
        return Ok(Float::new(ctx.bits()));
    }
    let p = ctx.working_bits() + m as u32 + 64;

    // The tail evaluation is only trustworthy when the last supplied term is
    // negligible at the largest node.
    let mf = Float::with_val(p, m as u64);
    let mut scale = Float::with_val(p, 1u32);
    let mut node_pow = Float::with_val(p, 1u32);
    let mut last = Float::new(p);
    let window_start = n_coeffs.saturating_sub(4).max(m + 1);
    for (j, c) in taylor_coeffs.iter().enumerate() {
        let t = Float::with_val(p, c).abs() * &node_pow;
        scale += &t;
        // A single trailing zero coefficient (every second entry of an even
        // or odd function) must not defeat the tail check, so the last few
        // terms all count.
        if j >= window_start && t > last {
            last = t;
        }
        node_pow *= &mf;
    }
    let mut budget = Float::with_val(p, 1u32);
    budget >>= ctx.bits() + 16;
    budget *= &scale;
    if last > budget {
        return Err(Error::ConvergenceError(format!(
            "series tail is not negligible at x = -{m}: last supplied term \
             contributes {:e} against a budget of {:e}; supply more \
             coefficients or the function does not converge there",
            last.to_f64(),
            budget.to_f64()
        )));
    }

    let yp = y.to_prec(p);
    let mut acc = Complex::zero(p);
    let mut binom = Integer::from(1);
    for k in 0..=m {
        if k > 0 {
            binom *= (m - k + 1) as u64;
            binom /= k as u64;
        }
        if k == 0 {
            continue; // tail vanishes at x = 0
        }
        // tail_k = sum_{j>m} c_j (-k)^j by Horner from the top.
        let xk = Float::with_val(p, -(k as i64));
        let mut tail = Float::new(p);
        for c in taylor_coeffs[m + 1..].iter().rev() {
            tail *= &xk;
            tail += c;
        }
        tail *= xk.pow((m + 1) as u32);
        tail *= Float::with_val(p, &binom);
        if k % 2 == 1 {
            tail = -tail;
        }
        let den = &yp - &Complex::from_real(Float::with_val(p, k as u64));
        acc = &acc + &den.recip().scale(&tail);
    }
    let residual = (&front_factor(&yp, m, p) * &acc).abs();
    Ok(Float::with_val(ctx.bits(), residual))
}

/// Both sides of the central-binomial transform identity, for `m >= 1` and
/// `y` off the nodes:
///
/// LHS: `y C(m-y,m) sum_k C(2k,k) C(2m-2k,m-k) / (y-k)`,
/// RHS: `(2^(2m) / m!) prod_{j=0}^{m-1} (j + 1/2 - y)`.
///
/// Both sides are returned so callers can report the residual.
pub fn identity62(m: usize, y: &Complex, ctx: &PrecisionContext) -> Result<(Complex, Complex)> {
    if m == 0 {
        return Err(Error::InvalidParam("identity needs m >= 1".into()));
    }
    if let Some(t) = colliding_node(y, m, &ctx.eps()) {
        return Err(Error::ForbiddenNodeError(format!(
            "y collides with node {t}"
        )));
    }
    let p = ctx.working_bits() + 2 * m as u32 + 64;
    let yp = y.to_prec(p);

    let mut acc = Complex::zero(p);
    for k in 0..=m {
        let w = Integer::from(Integer::binomial_u(2 * k as u32, k as u32))
            * Integer::from(Integer::binomial_u(
                2 * (m - k) as u32,
                (m - k) as u32,
            ));
        let den = &yp - &Complex::from_real(Float::with_val(p, k as u64));
        acc = &acc + &den.recip().scale(&Float::with_val(p, w));
    }
    let lhs = &front_factor(&yp, m, p) * &acc;

    let mut rhs = Complex::one(p);
    let mut m_fact = Integer::from(1);
    for j in 0..m {
        let mut node_re = Float::with_val(p, (2 * j + 1) as u64);
        node_re >>= 1;
        let node = &Complex::from_real(node_re) - &yp;
        rhs = &rhs * &node;
        m_fact *= (j + 1) as u64;
    }
    let mut pow2 = Float::with_val(p, 1u32);
    pow2 <<= 2 * m as u32;
    rhs = rhs.scale(&pow2).unscale(&Float::with_val(p, m_fact));
    Ok((lhs.to_prec(ctx.bits()), rhs.to_prec(ctx.bits())))
}

/// Product over all nodes except index `k`, for arbitrary complex nodes.
fn products_skipping_one(nodes: &[Complex], p: u32) -> Vec<Complex> {
    let n = nodes.len();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(Complex::one(p));
    for v in nodes {
        let last = prefix.last().unwrap();
        prefix.push(last * v);
    }
    let mut suffix = vec![Complex::one(p); n + 1];
    for i in (0..n).rev() {
        suffix[i] = &suffix[i + 1] * &nodes[i];
    }
    (0..n).map(|k| &prefix[k] * &suffix[k + 1]).collect()
}

/// Both sides of the two-parameter factorial identity, for non-integer
/// `beta` and `y = s - gamma` off the nodes `{0..m}`:
///
/// LHS: `pi/sin(pi beta) prod_{j=0}^{m-1} (j + gamma + 1 - beta - s)`,
/// RHS: `sum_k Gamma(m-k-beta+1) Gamma(k+beta) / (k!(m-k)!) prod_{j != k} (j + gamma - s)`.
///
/// The half-integer `beta = 1/2`, `gamma = 2` case degenerates to the
/// central-binomial identity scaled by `Gamma((m+1)/2)^2 / pi`.
pub fn identity64(
    m: usize,
    beta: &Complex,
    gamma_shift: &Complex,
    s: &Complex,
    ctx: &PrecisionContext,
) -> Result<(Complex, Complex)> {
    if m == 0 {
        return Err(Error::InvalidParam("identity needs m >= 1".into()));
    }
    let eps = ctx.eps();
    let beta_rounded = Float::with_val(beta.re.prec(), &beta.re).round();
    if beta.im.clone().abs() <= eps
        && (Float::with_val(beta.re.prec(), &beta.re) - &beta_rounded).abs() <= eps
    {
        return Err(Error::IntegerBetaError(format!(
            "beta = {} is an integer; sin(pi beta) vanishes",
            beta.re.to_f64()
        )));
    }
    let y = s - gamma_shift;
    if let Some(t) = colliding_node(&y, m, &eps) {
        return Err(Error::ForbiddenNodeError(format!(
            "s - gamma collides with node {t}"
        )));
    }
    let ectx = ctx.elevated(m as u32 + 64);
    let p = ectx.working_bits();
    let sp = s.to_prec(p);
    let bp = beta.to_prec(p);
    let gp = gamma_shift.to_prec(p);

    let pi = crate::complex::pi(p);
    let pib = bp.scale(&pi);
    let mut lhs = &Complex::from_real(pi.clone()) / &pib.sin();
    for j in 0..m {
        let node = &(&Complex::from_real(Float::with_val(p, (j + 1) as u64)) + &gp)
            - &(&bp + &sp);
        lhs = &lhs * &node;
    }

    let nodes: Vec<Complex> = (0..=m)
        .map(|j| &(&Complex::from_real(Float::with_val(p, j as u64)) + &gp) - &sp)
        .collect();
    let others = products_skipping_one(&nodes, p);
    let mut rhs = Complex::zero(p);
    let mut fact_k = Integer::from(1);
    let mut fact_mk = Integer::from(1);
    for i in 2..=m {
        fact_mk *= i as u64;
    }
    for (k, other) in others.iter().enumerate() {
        if k > 0 {
            fact_k *= k as u64;
            fact_mk /= (m - k + 1) as u64;
        }
        let g1_arg = &Complex::from_real(Float::with_val(p, (m - k) as u64 + 1)) - &bp;
        let g2_arg = &Complex::from_real(Float::with_val(p, k as u64)) + &bp;
        let g1 = gamma(&g1_arg, &ectx)?.to_prec(p);
        let g2 = gamma(&g2_arg, &ectx)?.to_prec(p);
        let coeff = (&g1 * &g2).unscale(&Float::with_val(p, Integer::from(&fact_k * &fact_mk)));
        rhs = &rhs + &(&coeff * other);
    }
    Ok((lhs.to_prec(ctx.bits()), rhs.to_prec(ctx.bits())))
}

/// `Gamma(k + 1/2) / sqrt(pi)` as an exact rational: `(2k)! / (4^k k!)`.
pub fn gamma_half_ratio(k: usize) -> Rational {
    let numer = Integer::from(Integer::factorial(2 * k as u32));
    let denom = Integer::from(Integer::factorial(k as u32)) << (2 * k as u32);
    Rational::from((numer, denom))
}

/// The exact positivity weight
/// `(k-1/2)!(m-k-1/2)! / ((m-1)/2)!^2` for even `m` — always `>= 1`, which
/// is what keeps every combined series coefficient positive.
pub fn positivity_weight(m: usize, k: usize) -> Rational {
    debug_assert!(m % 2 == 0 && k <= m);
    let num = gamma_half_ratio(k) * gamma_half_ratio(m - k);
    let den = gamma_half_ratio(m / 2).square();
    num / den
}

/// The all-positive coefficients of the node-interpolation form of the
/// alternating zeta series at even order `m`.
#[derive(Debug, Clone)]
pub struct EpsilonVector {
    /// The (even) interpolation order.
    pub m: usize,
    /// `eps_k = [(-1)^k eta(k+2) + weight_k] / (k!(m-k)!)` for `k = 0..=m`,
    /// each strictly positive.
    pub eps_k: Vec<Float>,
}

/// Computes the [`EpsilonVector`] at even `m >= 2`. Positivity holds
/// unconditionally (the rational weight is at least 1 while `|eta| < 1`),
/// and is asserted.
pub fn epsilon_coeffs(m: usize, ctx: &PrecisionContext) -> Result<EpsilonVector> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::InvalidParam(format!(
            "coefficient order must be even and at least 2, got {m}"
        )));
    }
    let p = ctx.working_bits();
    let eta = EtaInts::build(m + 2, p)?;
    let mut eps_k = Vec::with_capacity(m + 1);
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
        let mut num = Float::with_val(p, positivity_weight(m, k));
        if k % 2 == 0 {
            num += eta.eta(k + 2);
        } else {
            num -= eta.eta(k + 2);
        }
        num /= Float::with_val(p, Integer::from(&fact_k * &fact_mk));
        assert!(num > 0, "positive-coefficient invariant broken at k = {k}");
        eps_k.push(Float::with_val(ctx.bits(), num));
    }
    Ok(EpsilonVector { m, eps_k })
}

/// Alternating zeta through the all-positive decomposition at even order
/// `m`:
///
/// `eta(s) ~ sum_k eps_k prod_{j != k} (j+2-s)  -  (1/w^2) prod_{j=0}^{m-1} (j+5/2-s)`
///
/// with `w = (2 m/2 choose m/2)-style` half-integer ratio making
/// `1/w^2 = pi / ((m-1)/2)!^2`. Algebraically identical to the order-`m`
/// node interpolation, so it shares that scheme's truncation rule; the
/// subtracted product grows like `2^m`, which the internal elevation
/// absorbs.
pub fn eta_via66(s: &Complex, m: usize, ctx: &PrecisionContext) -> Result<EvalResult> {
    if m < 2 || m % 2 != 0 || m > MAX_ORDER {
        return Err(Error::InvalidParam(format!(
            "order must be even, at least 2, and at most {MAX_ORDER}, got {m}"
        )));
    }
    let p2 = (ctx.working_bits() + m as u32 + 32).max(finite_difference_bits(ctx, m + 3));
    let eta = EtaInts::build(m + 5, p2)?;
    let sp = s.to_prec(p2);

    let numerators = lagrange_numerators(&sp, m, p2);
    let mut acc = Complex::zero(p2);
    let mut fact_k = Integer::from(1);
    let mut fact_mk = Integer::from(1);
    for i in 2..=m {
        fact_mk *= i as u64;
    }
    for (k, other) in numerators.iter().enumerate() {
        if k > 0 {
            fact_k *= k as u64;
            fact_mk /= (m - k + 1) as u64;
        }
        let mut w = Float::with_val(p2, positivity_weight(m, k));
        if k % 2 == 0 {
            w += eta.eta(k + 2);
        } else {
            w -= eta.eta(k + 2);
        }
        w /= Float::with_val(p2, Integer::from(&fact_k * &fact_mk));
        acc = &acc + &other.scale(&w);
    }

    let mut hsum = Complex::one(p2);
    for j in 0..m {
        let mut node_re = Float::with_val(p2, (2 * j + 5) as u64);
        node_re >>= 1;
        let node = &Complex::from_real(node_re) - &sp;
        hsum = &hsum * &node;
    }
    let inv_w2 = Float::with_val(p2, gamma_half_ratio(m / 2).square().recip());
    let value = (&acc - &hsum.scale(&inv_w2)).to_prec(ctx.bits());

    let mut err = melzak_tail_estimate(&sp, m, &eta, p2);
    err += Float::with_val(64, value.abs() * ctx.eps()) * 4u32;
    Ok(EvalResult::new(value, m + 1, err, "via66"))
}
