//! Critical-line root solving for symmetrized factorial polynomials.
//!
//! A symmetrized factorial is the sum `prod_j (a_j - 1 + s) + prod_j (a_j - s)`
//! built over real nodes `a_j`. When the nonzero offsets `a_j - 1/2` all share
//! one sign, every root of the sum lies on the line `Re(s) = 1/2`, and the
//! positive imaginary parts solve the monotone equation
//!
//! `sum_j arctan(x / (a_j - 1/2)) = (2k+1) pi/2`.
//!
//! This module solves that equation directly — the arctan sum is strictly
//! increasing and perfectly conditioned, whereas the expanded polynomial
//! coefficients overflow and cancel catastrophically beyond a few dozen nodes.
//! On top of the scalar solver sit the named root families: the per-order
//! tables `nu_table`, the closed-form tangent family `tan_zeros49`, roots of
//! positive linear combinations (`combined_roots`), and the even/odd split
//! `theta_phi_roots` whose weights come from alternating zeta values.

use std::collections::BTreeMap;

use rug::float::Constant;
use rug::ops::CompleteRound;
use rug::{Float, Integer};

use crate::complex::Complex;
use crate::error::Error;
use crate::precision::PrecisionContext;
use crate::refs::EtaInts;
use crate::Result;

/// Named families of critical-line roots produced by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootFamily {
    /// Roots of the per-order symmetrized factorials with nodes `{2..n}`.
    Nu,
    /// Roots of a generic symmetrized factorial.
    Tau,
    /// Roots of a positive linear combination of symmetrized factorials.
    BigT,
    /// Roots of the even-index combination of the interpolation series.
    Theta,
    /// Roots of the odd-index combination of the interpolation series.
    Phi,
    /// Roots of the half-integer-node product pair (nodes `j + 5/2`).
    Lambda,
    /// Roots of the shifted-node product pair (nodes `j + 2 + d_j`).
    Omega,
    /// Real quadratic-factor constants of the final single-product form.
    CapOmega,
    /// Closed-form tangent zeros of `(1-s)^n + s^n`.
    Tan49,
}

impl RootFamily {
    /// Stable lowercase identifier (used by the CLI and reports).
    pub fn as_str(&self) -> &'static str {
        match self {
            RootFamily::Nu => "nu",
            RootFamily::Tau => "tau",
            RootFamily::BigT => "T",
            RootFamily::Theta => "theta",
            RootFamily::Phi => "phi",
            RootFamily::Lambda => "lambda",
            RootFamily::Omega => "omega",
            RootFamily::CapOmega => "Omega",
            RootFamily::Tan49 => "tan49",
        }
    }

    /// One-character code used in interlacing pattern strings.
    pub fn code(&self) -> char {
        match self {
            RootFamily::Nu => 'n',
            RootFamily::Tau => 't',
            RootFamily::BigT => 'T',
            RootFamily::Theta => 'h',
            RootFamily::Phi => 'p',
            RootFamily::Lambda => 'l',
            RootFamily::Omega => 'w',
            RootFamily::CapOmega => 'O',
            RootFamily::Tan49 => 'z',
        }
    }
}

/// An ascending list of real root data for one family.
///
/// For every family except [`RootFamily::CapOmega`] the entries are the
/// positive imaginary parts `x` of conjugate root pairs `1/2 ± ix`; the
/// `CapOmega` family stores real quadratic-factor constants instead, of which
/// at most the first may be negative.
#[derive(Debug, Clone)]
pub struct RootList {
    /// Which family these roots belong to.
    pub family: RootFamily,
    /// Strictly ascending values.
    pub values: Vec<Float>,
    /// The order parameter the family was computed at.
    pub m: usize,
}

impl RootList {
    /// Builds a list, asserting the ascending-order invariant.
    pub fn new(family: RootFamily, values: Vec<Float>, m: usize) -> Self {
        debug_assert!(
            values.windows(2).all(|w| w[0] < w[1]),
            "root values must be strictly ascending"
        );
        Self { family, values, m }
    }

    /// Number of roots held.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True when no roots are held.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A product pair `prod_j (a_j - 1 + s) + prod_j (a_j - s)` described by its
/// real nodes.
#[derive(Debug, Clone)]
pub struct SymmetrizedFactorial {
    nodes: Vec<Float>,
}

impl SymmetrizedFactorial {
    /// Validates the node hypothesis: at least two nodes, all finite, not all
    /// equal to `1/2`, and every nonzero offset `a_j - 1/2` of one sign.
    pub fn new(nodes: Vec<Float>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidParam(format!(
                "need at least 2 nodes, got {}",
                nodes.len()
            )));
        }
        if nodes.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidParam("nodes must be finite".into()));
        }
        let mut pos = false;
        let mut neg = false;
        for a in &nodes {
            let p = a.prec().max(64);
            let off = (a - &Float::with_val(p, 0.5f32)).complete(p);
            if off > 0 {
                pos = true;
            } else if off < 0 {
                neg = true;
            }
        }
        if pos && neg {
            return Err(Error::HypothesisError(
                "node offsets from 1/2 must share one sign".into(),
            ));
        }
        if !pos && !neg {
            return Err(Error::HypothesisError(
                "all nodes equal 1/2; the product pair vanishes identically on the line".into(),
            ));
        }
        Ok(Self { nodes })
    }

    /// Convenience constructor from `f64` nodes at the given precision.
    pub fn from_f64(prec: u32, nodes: &[f64]) -> Result<Self> {
        Self::new(nodes.iter().map(|&a| Float::with_val(prec, a)).collect())
    }

    /// The nodes, as given.
    pub fn nodes(&self) -> &[Float] {
        &self.nodes
    }

    /// Offsets `|a_j - 1/2|` at precision `p`, mirrored so any negative-offset
    /// input maps to its reflection (which has the same imaginary parts).
    /// Zero offsets are kept as exact zeros.
    fn mirrored_offsets(&self, p: u32) -> Vec<Float> {
        self.nodes
            .iter()
            .map(|a| {
                let mut off = Float::with_val(p, a);
                off -= Float::with_val(p, 0.5f32);
                off.abs()
            })
            .collect()
    }
}

/// Raises the target precision for high-order family computations: orders
/// `m >= 32` are computed with at least `2m + 128` bits so that the late
/// brackets, which shrink like spacing between large roots, stay resolvable.
pub(crate) fn family_context(ctx: &PrecisionContext, m: usize) -> PrecisionContext {
    let needed = 2 * m as u32 + 128;
    if m >= 32 && ctx.bits() < needed {
        ctx.elevated(needed - ctx.bits())
    } else {
        ctx.clone()
    }
}

/// The monotone phase `sum_j arctan(x / c_j)` over positive offsets.
fn arctan_sum(x: &Float, offsets: &[Float], p: u32) -> Float {
    let mut acc = Float::with_val(p, 0);
    for c in offsets {
        acc += (x / c).complete(p).atan();
    }
    acc
}

/// Derivative of the phase: `sum_j c_j / (c_j^2 + x^2)`.
fn arctan_sum_deriv(x: &Float, offsets: &[Float], p: u32) -> Float {
    let mut acc = Float::with_val(p, 0);
    let x2 = x.clone().square();
    for c in offsets {
        let den = c.clone().square() + &x2;
        acc += (c / &den).complete(p);
    }
    acc
}

/// Solves `sum_j arctan(x / c_j) = target` for one strictly positive target
/// below the supremum, by safeguarded Newton iteration inside a doubling
/// bracket. `lo_hint` must satisfy `phase(lo_hint) < target`.
fn solve_phase_level(
    offsets: &[Float],
    target: &Float,
    lo_hint: &Float,
    p: u32,
) -> Result<Float> {
    let mut lo = lo_hint.clone();
    let mut hi = if lo.is_zero() {
        Float::with_val(p, 1)
    } else {
        Float::with_val(p, &lo * &Float::with_val(p, 2))
    };
    let mut guard = 0usize;
    while arctan_sum(&hi, offsets, p) <= *target {
        hi *= 2u32;
        guard += 1;
        if guard > 4096 {
            return Err(Error::BracketError(
                "phase level not bracketed; target at or above the supremum".into(),
            ));
        }
    }

    // A few bisection steps localize the root, then Newton converges
    // quadratically (the phase is concave and increasing for x > 0).
    let mut x = Float::with_val(p, (&lo + &hi).complete(p) >> 1u32);
    for _ in 0..24 {
        let f = arctan_sum(&x, offsets, p) - target;
        if f < 0 {
            lo.clone_from(&x);
        } else {
            hi.clone_from(&x);
        }
        x = Float::with_val(p, (&lo + &hi).complete(p) >> 1u32);
    }
    let tol_shift = p.saturating_sub(8);
    for _ in 0..200 {
        let f = arctan_sum(&x, offsets, p) - target;
        if f < 0 {
            lo.clone_from(&x);
        } else {
            hi.clone_from(&x);
        }
        let d = arctan_sum_deriv(&x, offsets, p);
        let step = f / d;
        // Convergence test before moving: once the Newton step is below the
        // relative floor, x is already converged and must not be replaced by
        // a (coarser) bisection midpoint.
        let mut scale = x.clone().abs();
        scale >>= tol_shift;
        if step.clone().abs() <= scale {
            break;
        }
        let cand = (&x - &step).complete(p);
        x = if cand > lo && cand < hi {
            cand
        } else {
            Float::with_val(p, (&lo + &hi).complete(p) >> 1u32)
        };
    }
    Ok(x)
}

/// Shared driver: positive roots of a mirrored offset list, one per phase
/// level `(2k+1) pi/2` (with exact-zero offsets contributing a constant
/// `pi/2` each, which shifts the attainable levels and drops the origin
/// root).
pub(crate) fn roots_from_offsets(offsets: &[Float], bits: u32, p: u32) -> Result<Vec<Float>> {
    let n = offsets.len();
    let positive: Vec<Float> = offsets.iter().filter(|c| !c.is_zero()).cloned().collect();
    let n_zero = n - positive.len();
    let pi = Float::with_val(p, Constant::Pi);
    let mut roots: Vec<Float> = Vec::new();
    let mut lo_hint = Float::with_val(p, 0);
    for level in (1..n).step_by(2) {
        if level <= n_zero {
            continue;
        }
        let mut target = pi.clone();
        target *= (level - n_zero) as u32;
        target >>= 1;
        let x = solve_phase_level(&positive, &target, &lo_hint, p)?;
        // Defensive residual check: the phase must sit on its level to
        // within the precision the solver can deliver; relative to the
        // product scale this bounds |F(1/2 + ix)| by 2^(16-bits) * scale.
        let mut miss = arctan_sum(&x, &positive, p) - &target;
        miss.abs_mut();
        let mut tol = Float::with_val(p, 1);
        tol >>= bits.saturating_sub(15);
        if miss > tol {
            return Err(Error::BracketError(format!(
                "phase residual {:e} above tolerance at level {level}",
                miss.to_f64()
            )));
        }
        lo_hint.clone_from(&x);
        roots.push(x);
    }
    Ok(roots)
}

/// Positive imaginary parts of the roots of a symmetrized factorial, all of
/// which lie on `Re(s) = 1/2` under the node hypothesis. Inputs whose
/// offsets are all negative are mirrored first (same imaginary parts), and
/// any exact `a_j = 1/2` nodes only contribute root multiplicity at the
/// excluded origin.
pub fn sym_roots(sf: &SymmetrizedFactorial, ctx: &PrecisionContext) -> Result<RootList> {
    let fam_ctx = family_context(ctx, sf.nodes.len());
    let p = fam_ctx.working_bits();
    let offsets = sf.mirrored_offsets(p);
    let roots = roots_from_offsets(&offsets, fam_ctx.bits(), p)?;
    let values = roots
        .into_iter()
        .map(|x| Float::with_val(fam_ctx.bits(), x))
        .collect();
    Ok(RootList::new(RootFamily::Tau, values, sf.nodes.len()))
}

/// Root tables for the integer-node symmetrized factorials indexed by the
/// series order `n`: entry `n` holds the roots over nodes `{2, 3, .., n}`
/// (that is, `prod_{j=0}^{n-2} (j+2-s) + prod_{j=0}^{n-2} (j+1+s)`), of which
/// there are `floor((n-1)/2)`.
pub fn nu_table(n_max: usize, ctx: &PrecisionContext) -> Result<BTreeMap<usize, RootList>> {
    if n_max < 3 {
        return Err(Error::InvalidParam(format!(
            "table needs n_max >= 3, got {n_max}"
        )));
    }
    let mut out = BTreeMap::new();
    for n in 3..=n_max {
        let nodes: Vec<Float> = (0..=n - 2)
            .map(|j| Float::with_val(32, (j + 2) as u64))
            .collect();
        let sf = SymmetrizedFactorial::new(nodes)?;
        let mut list = sym_roots(&sf, ctx)?;
        list.family = RootFamily::Nu;
        list.m = n;
        out.insert(n, list);
    }
    Ok(out)
}

/// Closed-form critical-line zeros of `(1-s)^n + s^n`: the values
/// `tan((2k-1) pi / (2n)) / 2` for `k = 1..floor(n/2)`, ascending.
pub fn tan_zeros49(n: usize, ctx: &PrecisionContext) -> Result<RootList> {
    if n < 2 {
        return Err(Error::InvalidParam(format!("need n >= 2, got {n}")));
    }
    let p = ctx.working_bits();
    let pi = Float::with_val(p, Constant::Pi);
    let mut values = Vec::with_capacity(n / 2);
    for k in 1..=n / 2 {
        let mut angle = pi.clone();
        angle *= (2 * k - 1) as u32;
        angle /= 2 * n as u32;
        let mut v = angle.tan().abs();
        v >>= 1;
        values.push(Float::with_val(ctx.bits(), v));
    }
    Ok(RootList::new(RootFamily::Tan49, values, n))
}

/// Real value of `sum_k c_k [prod_{j!=k}(a_j-1+s) + prod_{j!=k}(a_j-s)]` at
/// `s = 1/2 + ix`, given positive offsets `c_off_j = a_j - 1/2`. By conjugate
/// symmetry this equals `2 sum_k c_k Re prod_{j!=k} (c_off_j + ix)`.
fn combined_on_line(x: &Float, coeffs: &[Float], offsets: &[Float], p: u32) -> Float {
    let n = offsets.len();
    let factors: Vec<Complex> = offsets
        .iter()
        .map(|c| Complex::new(Float::with_val(p, c), Float::with_val(p, x)))
        .collect();
    let mut prefix = vec![Complex::one(p); n + 1];
    for k in 0..n {
        prefix[k + 1] = &prefix[k] * &factors[k];
    }
    let mut suffix = vec![Complex::one(p); n + 1];
    for k in (0..n).rev() {
        suffix[k] = &factors[k] * &suffix[k + 1];
    }
    let mut acc = Float::with_val(p, 0);
    for k in 0..n {
        if coeffs[k].is_zero() {
            continue;
        }
        let others = &prefix[k] * &suffix[k + 1];
        acc += (&others.re * &coeffs[k]).complete(p);
    }
    acc << 1u32
}

/// Roots of a fixed-sign linear combination of node-deleted symmetrized
/// factorials, `sum_k c_k [prod_{j!=k}(a_j-1+s) + prod_{j!=k}(a_j-s)]`, all
/// of which lie on `Re(s) = 1/2`. Found by scanning the real-valued
/// restriction to the line for sign changes and bisecting each bracket; the
/// scan grid is refined adaptively until the full root count appears.
pub fn combined_roots(
    coeffs: &[Float],
    nodes: &[Float],
    ctx: &PrecisionContext,
) -> Result<RootList> {
    if coeffs.len() != nodes.len() {
        return Err(Error::InvalidParam(format!(
            "coefficient count {} must match node count {}",
            coeffs.len(),
            nodes.len()
        )));
    }
    if nodes.len() < 3 {
        return Err(Error::InvalidParam(format!(
            "need at least 3 nodes, got {}",
            nodes.len()
        )));
    }
    let mut pos = false;
    let mut neg = false;
    for c in coeffs {
        if !c.is_finite() {
            return Err(Error::InvalidParam("coefficients must be finite".into()));
        }
        if c.is_sign_positive() && !c.is_zero() {
            pos = true;
        } else if !c.is_zero() {
            neg = true;
        }
    }
    if pos && neg {
        return Err(Error::HypothesisError(
            "combination coefficients must share one sign".into(),
        ));
    }
    if !pos && !neg {
        return Err(Error::HypothesisError(
            "all combination coefficients are zero".into(),
        ));
    }

    let sf = SymmetrizedFactorial::new(nodes.to_vec())?;
    let m = nodes.len() - 1;
    let fam_ctx = family_context(ctx, m);
    let p = fam_ctx.working_bits();
    let offsets = sf.mirrored_offsets(p);
    // A negated coefficient vector has the same roots; mirrored node inputs
    // keep their imaginary parts. Work with |c| throughout.
    let coeffs: Vec<Float> = coeffs
        .iter()
        .map(|c| Float::with_val(p, c).abs())
        .collect();

    // The degree of the combination drops by one when m is odd (the leading
    // terms of the two products cancel), so the positive-root count is
    // floor(m/2) either way.
    let expected = m / 2;
    if expected == 0 {
        return Ok(RootList::new(RootFamily::BigT, Vec::new(), m));
    }

    // Every root is below the largest root of any single surviving term,
    // which the phase equation bounds by c_max * cot(pi / (2n)).
    let mut bound = Float::with_val(p, 0);
    for c in &offsets {
        if *c > bound {
            bound = c.clone();
        }
    }
    bound *= 2 * nodes.len() as u32;

    let g = |x: &Float| combined_on_line(x, &coeffs, &offsets, p);
    let mut n_pts = (8 * expected).max(64);
    for _round in 0..12 {
        let mut brackets: Vec<(Float, Float)> = Vec::with_capacity(expected);
        let mut x_prev = Float::with_val(p, 0);
        let mut g_prev = g(&x_prev);
        for i in 1..=n_pts {
            let mut x = bound.clone();
            x *= i as u32;
            x /= n_pts as u32;
            let gx = g(&x);
            if (g_prev.is_sign_positive() && gx.is_sign_negative())
                || (g_prev.is_sign_negative() && gx.is_sign_positive())
            {
                brackets.push((x_prev.clone(), x.clone()));
            }
            x_prev = x;
            g_prev = gx;
        }
        if brackets.len() > expected {
            return Err(Error::RootCountError(format!(
                "found {} sign changes where at most {expected} roots exist",
                brackets.len()
            )));
        }
        if brackets.len() == expected {
            let iters = (fam_ctx.bits() + 32) as usize;
            let mut values = Vec::with_capacity(expected);
            for (mut lo, mut hi) in brackets {
                let neg_left = g(&lo).is_sign_negative();
                for _ in 0..iters {
                    let mid = Float::with_val(p, (&lo + &hi).complete(p) >> 1u32);
                    if g(&mid).is_sign_negative() == neg_left {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let root = Float::with_val(fam_ctx.bits(), (&lo + &hi).complete(p) >> 1u32);
                values.push(root);
            }
            return Ok(RootList::new(RootFamily::BigT, values, m));
        }
        n_pts *= 2;
    }
    Err(Error::RootCountError(format!(
        "sign scan found fewer than {expected} roots after refinement"
    )))
}

/// Roots of the even-index and odd-index halves of the order-`m` node
/// interpolation of the alternating zeta series, as a `(theta, phi)` pair.
/// The even half combines node-deleted products over `{2..m+2}` with weights
/// `eta(2t+2) / ((2t)! (m-2t)!)`, the odd half with
/// `eta(2t+3) / ((2t+1)! (m-2t-1)!)`; each contributes `m/2` root pairs.
pub fn theta_phi_roots(m: usize, ctx: &PrecisionContext) -> Result<(RootList, RootList)> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::InvalidParam(format!(
            "order must be even and at least 4, got {m}"
        )));
    }
    let fam_ctx = family_context(ctx, m);
    let p = fam_ctx.working_bits();
    let eta = EtaInts::build(m + 2, p)?;
    let nodes: Vec<Float> = (0..=m)
        .map(|j| Float::with_val(32, (j + 2) as u64))
        .collect();

    let mut fact_k = Integer::from(1);
    let mut fact_mk = Integer::from(1);
    for i in 2..=m {
        fact_mk *= i as u64;
    }
    let mut even = Vec::with_capacity(m + 1);
    let mut odd = Vec::with_capacity(m + 1);
    for k in 0..=m {
        if k > 0 {
            fact_k *= k as u64;
            fact_mk /= (m - k + 1) as u64;
        }
        let mut w = eta.eta(k + 2);
        w /= Float::with_val(p, Integer::from(&fact_k * &fact_mk));
        if k % 2 == 0 {
            even.push(w);
            odd.push(Float::with_val(p, 0));
        } else {
            even.push(Float::with_val(p, 0));
            odd.push(w);
        }
    }

    let mut theta = combined_roots(&even, &nodes, &fam_ctx)?;
    theta.family = RootFamily::Theta;
    theta.m = m;
    let mut phi = combined_roots(&odd, &nodes, &fam_ctx)?;
    phi.family = RootFamily::Phi;
    phi.m = m;
    Ok((theta, phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::eta_sym_ref;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    /// |prod (a_j - 1 + s) + prod (a_j - s)| at s = 1/2 + ix, and the product
    /// scale; an on-line root makes the first tiny relative to the second.
    fn pair_residual(nodes: &[Float], x: &Float, p: u32) -> (Float, Float) {
        let s = Complex::new(Float::with_val(p, 0.5f32), Float::with_val(p, x));
        let mut left = Complex::one(p);
        let mut right = Complex::one(p);
        let mut scale = Float::with_val(p, 1);
        for a in nodes {
            let af = Float::with_val(p, a);
            let lf = &Complex::from_real(Float::with_val(p, &af - &Float::with_val(p, 1))) + &s;
            let rf = &Complex::from_real(af) - &s;
            scale *= rf.abs();
            left = &left * &lf;
            right = &right * &rf;
        }
        ((&left + &right).abs(), scale)
    }

    #[test]
    fn small_tables_match_closed_forms() {
        let ctx = ctx(256);
        let table = nu_table(5, &ctx).unwrap();

        let p = 256;
        let want3 = Float::with_val(p, 15).sqrt() / 2u32;
        let got3 = &table[&3];
        assert_eq!(got3.len(), 1);
        assert!((got3.values[0].clone() - &want3).abs() < 1e-12);

        let want4 = Float::with_val(p, 7).sqrt() / 2u32;
        let got4 = &table[&4];
        assert_eq!(got4.len(), 1);
        assert!((got4.values[0].clone() - &want4).abs() < 1e-12);

        // Nodes {2,3,4,5}: the quartic's two root pairs in closed form,
        // sqrt(103 -+ 8 sqrt(151)) / 2.
        let got5 = &table[&5];
        assert_eq!(got5.len(), 2);
        let disc = Float::with_val(p, 151).sqrt() * 8u32;
        let lo = ((disc.clone() * -1i32) + 103u32).sqrt() / 2u32;
        let hi = (disc + 103u32).sqrt() / 2u32;
        assert!((got5.values[0].clone() - &lo).abs() < 1e-12);
        assert!((got5.values[1].clone() - &hi).abs() < 1e-12);
        assert!(format!("{:.16}", got5.values[0].to_f64()).starts_with("1.083322918206286"));
        assert!(format!("{:.16}", got5.values[1].to_f64()).starts_with("7.094111040496125"));
    }

    #[test]
    fn table_counts_and_residuals_hold_through_order_nine() {
        let ctx = ctx(256);
        let table = nu_table(9, &ctx).unwrap();
        let p = 320;
        for (n, list) in &table {
            assert_eq!(list.len(), (n - 1) / 2, "count at n = {n}");
            assert_eq!(list.family.as_str(), "nu");
            let nodes: Vec<Float> = (0..=n - 2)
                .map(|j| Float::with_val(p, (j + 2) as u64))
                .collect();
            for v in &list.values {
                assert!(*v > 0);
                let (resid, scale) = pair_residual(&nodes, v, p);
                let mut tol = scale;
                tol >>= 240;
                assert!(resid < tol, "off-line residual at n = {n}");
            }
            for w in list.values.windows(2) {
                assert!(w[0] < w[1]);
            }
        }
    }

    #[test]
    fn tangent_zeros_match_closed_form_and_kill_their_polynomial() {
        let ctx = ctx(256);
        let two = tan_zeros49(2, &ctx).unwrap();
        assert_eq!(two.len(), 1);
        assert!((two.values[0].clone() - 0.5f32).abs() < 1e-70);

        let four = tan_zeros49(4, &ctx).unwrap();
        assert_eq!(four.len(), 2);
        let p = 256;
        let pi = Float::with_val(p, Constant::Pi);
        let w0 = (pi.clone() / 8u32).tan() / 2u32;
        let w1 = (pi * 3u32 / 8u32).tan() / 2u32;
        assert!((four.values[0].clone() - &w0).abs() < 1e-70);
        assert!((four.values[1].clone() - &w1).abs() < 1e-70);

        // Direct check: (1-s)^n + s^n vanishes at s = 1/2 + i v.
        for n in [2usize, 4, 5, 9] {
            let list = tan_zeros49(n, &ctx).unwrap();
            assert_eq!(list.len(), n / 2);
            for v in &list.values {
                let s = Complex::new(Float::with_val(p, 0.5f32), Float::with_val(p, v));
                let one_minus = &Complex::one(p) - &s;
                let en = Complex::from_real(Float::with_val(p, n as u64));
                let total = &one_minus.pow(&en) + &s.pow(&en);
                assert!(
                    total.abs().to_f64() < 1e-20,
                    "polynomial residual at n = {n}"
                );
            }
            for w in list.values.windows(2) {
                assert!(w[0] < w[1]);
            }
        }
        assert!(matches!(
            tan_zeros49(1, &ctx),
            Err(Error::InvalidParam(_))
        ));
    }

    #[test]
    fn random_product_pairs_keep_roots_on_the_line() {
        let ctx = ctx(128);
        let mut rng = ChaCha8Rng::seed_from_u64(0x51f2);
        let p = 192;
        for iter in 0..200 {
            let n = rng.gen_range(2..=12);
            let sign: f64 = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let mut nodes: Vec<f64> = (0..n)
                .map(|_| 0.5 + sign * rng.gen_range(0.01..5.0))
                .collect();
            if n >= 3 && rng.gen_bool(0.3) {
                nodes[1] = nodes[0]; // repeated node
            }
            if rng.gen_bool(0.3) {
                nodes[n - 1] = 0.5 + sign * 1e-3; // nearly centered node
            }
            let sf = SymmetrizedFactorial::from_f64(96, &nodes).unwrap();
            let roots = sym_roots(&sf, &ctx).unwrap();
            assert_eq!(roots.len(), n / 2, "count at iteration {iter}");

            // Mirror negative-offset inputs: their roots are those of the
            // reflected nodes, so the residual is checked on the mirror.
            // The reflection is done in extended precision — in f64 it
            // would perturb sub-1/2 nodes by an ulp and drown the check.
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
                assert!(*v > 0, "imaginary part must be positive");
                let (resid, scale) = pair_residual(&checked, v, p);
                let mut tol = scale;
                tol >>= 112;
                assert!(resid < tol, "residual at iteration {iter}");
            }
            for w in roots.values.windows(2) {
                assert!(w[0] < w[1]);
            }
        }
    }

    #[test]
    fn hypothesis_violations_are_rejected() {
        assert!(matches!(
            SymmetrizedFactorial::from_f64(64, &[0.2, 0.9]),
            Err(Error::HypothesisError(_))
        ));
        assert!(matches!(
            SymmetrizedFactorial::from_f64(64, &[0.5, 0.5, 0.5]),
            Err(Error::HypothesisError(_))
        ));
        assert!(matches!(
            SymmetrizedFactorial::from_f64(64, &[2.0]),
            Err(Error::InvalidParam(_))
        ));
    }

    #[test]
    fn centered_nodes_shed_origin_multiplicity() {
        let ctx = ctx(192);
        // {1/2, 2, 3}: the only line roots sit at the (excluded) origin.
        let sf = SymmetrizedFactorial::from_f64(96, &[0.5, 2.0, 3.0]).unwrap();
        assert!(sym_roots(&sf, &ctx).unwrap().is_empty());

        // {1/2, 2, 3, 4}: one genuine pair survives.
        let sf = SymmetrizedFactorial::from_f64(96, &[0.5, 2.0, 3.0, 4.0]).unwrap();
        let roots = sym_roots(&sf, &ctx).unwrap();
        assert_eq!(roots.len(), 1);
        let p = 256;
        let nodes: Vec<Float> = [0.5, 2.0, 3.0, 4.0]
            .iter()
            .map(|&a| Float::with_val(p, a))
            .collect();
        let (resid, scale) = pair_residual(&nodes, &roots.values[0], p);
        let mut tol = scale;
        tol >>= 176;
        assert!(resid < tol);

        // {1/2, 1/2, 2, 3}: two centered nodes, still one surviving pair.
        let sf = SymmetrizedFactorial::from_f64(96, &[0.5, 0.5, 2.0, 3.0]).unwrap();
        let roots = sym_roots(&sf, &ctx).unwrap();
        assert_eq!(roots.len(), 1);
    }

    #[test]
    fn anti_symmetrized_difference_vanishes_at_the_center() {
        // The difference of the two products has s = 1/2 as a root for any
        // nodes: both products reduce to prod (a_j - 1/2) there.
        let p = 256;
        let mut rng = ChaCha8Rng::seed_from_u64(0x77a1);
        for _ in 0..20 {
            let n = rng.gen_range(2..=8);
            let half = Complex::new(Float::with_val(p, 0.5f32), Float::with_val(p, 0));
            let mut left = Complex::one(p);
            let mut right = Complex::one(p);
            for _ in 0..n {
                let a = Float::with_val(p, rng.gen_range(0.6..6.0));
                let lf = &Complex::from_real((&a - &Float::with_val(p, 1)).complete(p)) + &half;
                let rf = &Complex::from_real(a) - &half;
                left = &left * &lf;
                right = &right * &rf;
            }
            assert!((&left - &right).abs().is_zero());
        }
    }

    #[test]
    fn single_term_combination_reduces_to_deleted_nodes() {
        let ctx = ctx(256);
        let p = 288;
        let nodes: Vec<Float> = (2..=6).map(|a| Float::with_val(p, a as u64)).collect();
        let mut coeffs = vec![Float::with_val(p, 0); 5];
        coeffs[2] = Float::with_val(p, 1);
        let combined = combined_roots(&coeffs, &nodes, &ctx).unwrap();

        let deleted = SymmetrizedFactorial::from_f64(96, &[2.0, 3.0, 5.0, 6.0]).unwrap();
        let direct = sym_roots(&deleted, &ctx).unwrap();
        assert_eq!(combined.len(), direct.len());
        for (a, b) in combined.values.iter().zip(&direct.values) {
            assert!((a.clone() - b).abs().to_f64() < 1e-70);
        }
    }

    #[test]
    fn squared_root_products_satisfy_the_weighted_mean_identity() {
        // prod T_j^2 equals the c-weighted mean of prod tau_{k,j}^2: both
        // sides are the constant coefficient of the same monic-normalized
        // polynomial restricted to the line.
        let ctx = ctx(256);
        let p = 288;
        let m = 6;
        let mut rng = ChaCha8Rng::seed_from_u64(0xe960);
        let nodes: Vec<Float> = (0..=m).map(|j| Float::with_val(p, (j + 2) as u64)).collect();
        let coeffs: Vec<Float> = (0..=m)
            .map(|_| Float::with_val(p, rng.gen_range(0.1..3.0)))
            .collect();
        let big = combined_roots(&coeffs, &nodes, &ctx).unwrap();
        assert_eq!(big.len(), m / 2);
        let mut lhs = Float::with_val(p, 1);
        for t in &big.values {
            lhs *= t.clone().square();
        }

        let mut num = Float::with_val(p, 0);
        let mut den = Float::with_val(p, 0);
        for k in 0..=m {
            let mut reduced: Vec<f64> = Vec::new();
            for (j, a) in nodes.iter().enumerate() {
                if j != k {
                    reduced.push(a.to_f64());
                }
            }
            let sf = SymmetrizedFactorial::from_f64(96, &reduced).unwrap();
            let taus = sym_roots(&sf, &ctx).unwrap();
            assert_eq!(taus.len(), m / 2);
            let mut prod = coeffs[k].clone();
            for t in &taus.values {
                prod *= t.clone().square();
            }
            num += prod;
            den += &coeffs[k];
        }
        let rhs = num / den;
        let rel = ((lhs.clone() - &rhs) / &lhs).abs();
        assert!(rel.to_f64() < 1e-12, "relative gap {:e}", rel.to_f64());
    }

    #[test]
    fn random_combinations_stay_complete_and_reject_mixed_signs() {
        let ctx = ctx(128);
        let mut rng = ChaCha8Rng::seed_from_u64(0xc0b1);
        for iter in 0..50 {
            let m = 2 * rng.gen_range(1..=5);
            let mut nodes: Vec<f64> = Vec::with_capacity(m + 1);
            let mut base = 0.5;
            for _ in 0..=m {
                base += rng.gen_range(0.05..1.5);
                nodes.push(base);
            }
            let p = 192;
            let nf: Vec<Float> = nodes.iter().map(|&a| Float::with_val(p, a)).collect();
            let cf: Vec<Float> = (0..=m)
                .map(|_| Float::with_val(p, rng.gen_range(0.05..2.0)))
                .collect();
            let roots = combined_roots(&cf, &nf, &ctx).unwrap();
            assert_eq!(roots.len(), m / 2, "count at iteration {iter}");
            for w in roots.values.windows(2) {
                assert!(w[0] < w[1]);
            }
        }

        let p = 64;
        let nodes: Vec<Float> = (2..=4).map(|a| Float::with_val(p, a as u64)).collect();
        let mixed = vec![
            Float::with_val(p, 1),
            Float::with_val(p, -1),
            Float::with_val(p, 1),
        ];
        assert!(matches!(
            combined_roots(&mixed, &nodes, &ctx),
            Err(Error::HypothesisError(_))
        ));
        let zeros = vec![Float::with_val(p, 0); 3];
        assert!(matches!(
            combined_roots(&zeros, &nodes, &ctx),
            Err(Error::HypothesisError(_))
        ));
    }

    #[test]
    fn even_odd_split_counts_and_reconstruction_error_band() {
        let ctx = ctx(256);
        let m = 8;
        let (theta, phi) = theta_phi_roots(m, &ctx).unwrap();
        assert_eq!(theta.len(), m / 2);
        assert_eq!(phi.len(), m / 2);
        assert_eq!(theta.family.as_str(), "theta");
        assert_eq!(phi.family.as_str(), "phi");

        // Rebuild the split form 2*(sum even w) prod (y + theta^2)
        //                       - 2*(sum odd w) prod (y + phi^2)
        // at s = 0.4 + 1i and compare with the reference for
        // eta(s) + eta(1-s); the order-8 truncation error is a few 1e-3.
        let p = 320;
        let eta = EtaInts::build(m + 2, p).unwrap();
        let mut even_sum = Float::with_val(p, 0);
        let mut odd_sum = Float::with_val(p, 0);
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
            let mut w = eta.eta(k + 2);
            w /= Float::with_val(p, Integer::from(&fact_k * &fact_mk));
            if k % 2 == 0 {
                even_sum += w;
            } else {
                odd_sum += w;
            }
        }
        let s = Complex::from_f64(p, 0.4, 1.0);
        let half = Complex::from_real(Float::with_val(p, 0.5f32));
        let centered = &s - &half;
        let y = &centered * &centered;
        let mut even_prod = Complex::one(p);
        for t in &theta.values {
            let t2 = Complex::from_real(Float::with_val(p, t.clone().square()));
            even_prod = &even_prod * &(&y + &t2);
        }
        let mut odd_prod = Complex::one(p);
        for t in &phi.values {
            let t2 = Complex::from_real(Float::with_val(p, t.clone().square()));
            odd_prod = &odd_prod * &(&y + &t2);
        }
        let recon = &even_prod.scale(&(even_sum << 1u32)) - &odd_prod.scale(&(odd_sum << 1u32));
        let want = eta_sym_ref(&s, &ctx).unwrap();
        let gap = recon.dist(&want).to_f64();
        assert!(gap > 1e-3 && gap < 1e-2, "order-8 gap {gap:e}");
    }

    #[test]
    fn high_order_families_elevate_precision() {
        let ctx = ctx(64);
        let nodes: Vec<f64> = (0..34).map(|j| (j + 2) as f64).collect();
        let sf = SymmetrizedFactorial::from_f64(96, &nodes).unwrap();
        let roots = sym_roots(&sf, &ctx).unwrap();
        assert_eq!(roots.len(), 17);
        assert!(roots.values[0].prec() >= 2 * 34 + 128);
    }
}
