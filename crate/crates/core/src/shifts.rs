//! Node shifts of the all-positive interpolation form.
//!
//! At even order `m` the weighted sum `f_d(s) = sum_k eps_k prod_{j!=k}
//! (j+2-s)` over nodes `{2..m+2}` has exactly one real root between each
//! pair of consecutive nodes, because the positive weights make the sum
//! alternate sign at the nodes. Writing those roots as `j + 2 + d_j` defines
//! the shift vector `d`, each entry in `(0, 1)`. Comparing the shifted roots
//! against the fixed half-integer grid `{j + 5/2}` gives the expected parity
//! pattern `0 < d_odd < 1/2 < d_even < 1`; this module computes the shifts
//! and reports any parity violations as findings instead of failing.

use rug::ops::CompleteRound;
use rug::Float;

use crate::error::Error;
use crate::melzak::epsilon_coeffs;
use crate::precision::PrecisionContext;
use crate::symfact::family_context;
use crate::Result;

/// The shifts `d_0..d_{m-1}` placing the roots of the positive-weight
/// interpolation sum at `j + 2 + d_j`.
#[derive(Debug, Clone)]
pub struct ShiftVector {
    /// The (even) interpolation order.
    pub m: usize,
    /// Shifts in node order, each in `(0, 1)`.
    pub d: Vec<Float>,
    /// Indices whose shift breaks the half-grid parity pattern
    /// `d_even > 1/2 > d_odd` — expected empty, reported rather than
    /// asserted.
    pub parity_violations: Vec<usize>,
}

impl ShiftVector {
    /// True when every shift obeys the half-grid parity pattern.
    pub fn parity_holds(&self) -> bool {
        self.parity_violations.is_empty()
    }
}

/// `sum_k eps_k prod_{j!=k} (j+2-s)` for real `s`, via prefix/suffix
/// products over the nodes.
fn weighted_sum_at(s: &Float, eps: &[Float], p: u32) -> Float {
    let n = eps.len();
    let factors: Vec<Float> = (0..n)
        .map(|j| {
            let mut f = Float::with_val(p, (j + 2) as u64);
            f -= s;
            f
        })
        .collect();
    let mut prefix = vec![Float::with_val(p, 1); n + 1];
    for k in 0..n {
        prefix[k + 1] = (&prefix[k] * &factors[k]).complete(p);
    }
    let mut suffix = vec![Float::with_val(p, 1); n + 1];
    for k in (0..n).rev() {
        suffix[k] = (&factors[k] * &suffix[k + 1]).complete(p);
    }
    let mut acc = Float::with_val(p, 0);
    for k in 0..n {
        let others = (&prefix[k] * &suffix[k + 1]).complete(p);
        acc += others * &eps[k];
    }
    acc
}

/// Extracts the `m` node shifts at even order `m >= 4` by bisecting the
/// positive-weight interpolation sum on each inter-node interval. The sum's
/// sign at node `k+2` is the sign of `eps_k prod_{j!=k}(j-k)`, which
/// alternates with `k`, so every interval brackets exactly one of the `m`
/// simple roots; a missing sign change can only mean the working precision
/// was exhausted and is reported as a root-count failure.
pub fn d_shifts(m: usize, ctx: &PrecisionContext) -> Result<ShiftVector> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::InvalidParam(format!(
            "shift order must be even and at least 4, got {m}"
        )));
    }
    let fam_ctx = family_context(ctx, m);
    // The weighted sum mixes terms of size ~2^m relative to its roots'
    // scale, so the shift solve runs with m + 64 extra bits.
    let ectx = fam_ctx.elevated(m as u32 + 64);
    let p = ectx.working_bits();
    let eps = epsilon_coeffs(m, &ectx)?.eps_k;

    let mut d = Vec::with_capacity(m);
    let mut parity_violations = Vec::new();
    let half = {
        let mut h = Float::with_val(p, 1);
        h >>= 1u32;
        h
    };
    let iters = (fam_ctx.bits() + 32) as usize;
    for k in 0..m {
        let mut lo = Float::with_val(p, (k + 2) as u64);
        let mut hi = Float::with_val(p, (k + 3) as u64);
        let g_lo = weighted_sum_at(&lo, &eps, p);
        let g_hi = weighted_sum_at(&hi, &eps, p);
        if g_lo.is_zero()
            || g_hi.is_zero()
            || g_lo.is_sign_negative() == g_hi.is_sign_negative()
        {
            return Err(Error::RootCountError(format!(
                "no sign change across ({}, {}); working precision exhausted",
                k + 2,
                k + 3
            )));
        }
        let neg_left = g_lo.is_sign_negative();
        for _ in 0..iters {
            let mid = Float::with_val(p, (&lo + &hi).complete(p) >> 1u32);
            if weighted_sum_at(&mid, &eps, p).is_sign_negative() == neg_left {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut root = Float::with_val(p, (&lo + &hi).complete(p) >> 1u32);
        root -= Float::with_val(p, (k + 2) as u64);
        debug_assert!(root > 0 && root < 1, "shift escaped its interval");
        let above_half = root > half;
        if above_half != (k % 2 == 0) {
            parity_violations.push(k);
        }
        d.push(Float::with_val(fam_ctx.bits(), root));
    }
    Ok(ShiftVector {
        m,
        d,
        parity_violations,
    })
}
