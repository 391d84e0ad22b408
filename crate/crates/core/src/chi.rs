//! The coefficient sequences chi(n) and psi(n) driving the interpolation
//! series for eta and zeta.
//!
//! `chi(n)` is defined by the alternating tail sum
//! `chi(n) = sum_{j>=2} (-1)^(j+1) (n/j^2) (1 - 1/j)^(n-1)`,
//! and `psi(n)` is its zeta-flavored sibling appearing alongside the pole
//! term. Both also satisfy exact finite-difference identities against integer
//! eta/zeta values:
//!
//! * `chi(n) = n sum_{k=0}^{n-1} (-1)^k C(n-1,k) (eta(k+2) - 1)`
//! * `psi(n) = -1 + n sum_{k=0}^{n-1} (-1)^k C(n-1,k) (zeta(k+2) - 1)`
//!
//! The finite-difference route is *exact* but cancels catastrophically — the
//! intermediate terms peak around `2^(0.585 n)` times the result — so it runs
//! at an elevated internal precision and is used for all cached table values.
//! The direct `j`-sum route converges too slowly to resolve the true
//! (sub-exponentially small) values for `n` beyond a few dozen: truncating at
//! `J` proportional to `n` leaves a floor of order `n / (2 J^2)`. It is kept
//! as the defining form, reported with an honest pairing-bound
//! [`ChiValue::tail_bound`] and a [`ChiValue::resolved`] flag, and used for
//! arguments too large for the exact route.

use rug::ops::CompleteRound;
use rug::{Float, Integer};

use crate::error::Error;
use crate::precision::PrecisionContext;
use crate::refs::EtaInts;
use crate::Result;

/// Largest `n` the exact finite-difference route accepts (the elevated
/// precision grows linearly with `n`).
pub const CHI_EXACT_MAX: usize = 2048;

/// A chi (or psi) evaluation with its truncation metadata.
///
/// `j_cutoff` and `tail_bound` always describe the canonical direct sum
/// truncated at `J = max(64, 20 n)`: `tail_bound` is the alternating-pairing
/// bound `|f(J+1)|/2 + n/(J+1)^3`, which rigorously bounds the distance
/// between the truncated sum and the true limit. When the value itself comes
/// from the exact route, it is accurate to working precision and trivially
/// within `tail_bound` of the truncated sum.
#[derive(Debug, Clone)]
pub struct ChiValue {
    /// Best available value of chi(n).
    pub value: Float,
    /// Pairing bound on the canonical truncated direct sum's distance to the
    /// true limit.
    pub tail_bound: Float,
    /// The canonical direct-sum cutoff `J = max(64, 20 n)`.
    pub j_cutoff: usize,
    /// True when `value` resolves the true limit beyond doubt:
    /// `tail_bound < |value| / 2`. The direct route at large `n` reports
    /// `false` — its truncation floor swamps the true value.
    pub exact_route: bool,
}

impl ChiValue {
    /// Whether sign and magnitude of `value` are trustworthy.
    pub fn resolved(&self) -> bool {
        if self.exact_route {
            return true;
        }
        let half = Float::with_val(64, &self.value).abs() / 2u32;
        self.tail_bound.clone() < half
    }
}

/// Canonical direct-sum cutoff.
fn canonical_cutoff(n: usize) -> usize {
    (20 * n).max(64)
}

/// Elevated precision for the exact finite-difference route at depth `n`.
pub(crate) fn exact_route_bits(ctx: &PrecisionContext, n: usize) -> u32 {
    ctx.working_bits() + (0.585 * n as f64).ceil() as u32 + 64
}

/// Precision an integer-eta table must carry so that the depth-`n` finite
/// difference (the exact chi route) still resolves its value: the binomial
/// row against `eta(k+2)-1 ~ 2^{-k}` peaks near `2^{0.585 n}` relative to
/// the result.
pub fn finite_difference_bits(ctx: &PrecisionContext, n: usize) -> u32 {
    exact_route_bits(ctx, n)
}

/// chi(n) from a caller-supplied integer-eta table (built to at least
/// `n + 1` at [`finite_difference_bits`]-level precision). This is the way
/// to sweep chi over many large `n` without rebuilding the table per call.
pub fn chi_with_eta_table(n: usize, eta: &EtaInts) -> Result<Float> {
    if n == 0 {
        return Err(Error::InvalidParam("chi(n) needs n >= 1".into()));
    }
    if eta.max_arg() < n + 1 {
        return Err(Error::InvalidParam(format!(
            "chi({n}) needs eta arguments up to {} but the table stops at {}",
            n + 1,
            eta.max_arg()
        )));
    }
    Ok(chi_from_table(n, eta, eta.bits()))
}

/// `f(j) = (-1)^(j+1) (n/j^2) (1 - 1/j)^(n-1)` — one direct-sum term.
fn direct_term(n: usize, j: usize, p: u32) -> Float {
    let jf = Float::with_val(p, j as u64);
    let mut mag = Float::with_val(p, n as u64) / Float::with_val(p, &jf * &jf);
    if n > 1 {
        let ratio = -Float::with_val(p, 1u32) / &jf;
        let ln_base = ratio.ln_1p();
        mag *= (ln_base * Float::with_val(p, (n - 1) as u64)).exp();
    }
    // sign (-1)^(j+1): negative at even j (the j = 2 term is -n/4 ...).
    if j % 2 == 0 {
        -mag
    } else {
        mag
    }
}

/// Pairing bound for the canonical truncation: `|f(J+1)|/2 + n/(J+1)^3`.
fn pairing_bound(n: usize, j_cut: usize, p: u32) -> Float {
    let f_next = direct_term(n, j_cut + 1, p).abs() / 2u32;
    let jp1 = Float::with_val(p, (j_cut + 1) as u64);
    let cubic = Float::with_val(p, n as u64) / (jp1.clone() * &jp1 * &jp1);
    f_next + cubic
}

/// Direct-summation evaluation of chi(n) at the canonical cutoff, with a
/// midpoint correction (`+ f(J+1)/2`) that centers the truncation inside the
/// pairing bound.
pub fn chi_direct(n: usize, ctx: &PrecisionContext) -> Result<ChiValue> {
    if n == 0 {
        return Err(Error::InvalidParam("chi(n) needs n >= 1".into()));
    }
    let p = ctx.working_bits();
    let j_cut = canonical_cutoff(n);
    let mut acc = Float::new(p);
    for j in 2..=j_cut {
        acc += direct_term(n, j, p);
    }
    acc += direct_term(n, j_cut + 1, p) / 2u32;
    let tail = pairing_bound(n, j_cut, 64);
    Ok(ChiValue {
        value: Float::with_val(ctx.bits(), acc),
        tail_bound: tail,
        j_cutoff: j_cut,
        exact_route: false,
    })
}

/// Exact finite-difference evaluation of chi(n) (`n <= CHI_EXACT_MAX`),
/// accurate to the context's full precision.
pub fn chi_exact(n: usize, ctx: &PrecisionContext) -> Result<ChiValue> {
    if n == 0 {
        return Err(Error::InvalidParam("chi(n) needs n >= 1".into()));
    }
    if n > CHI_EXACT_MAX {
        return Err(Error::PrecisionError(format!(
            "exact chi route supports n <= {CHI_EXACT_MAX}, got {n} \
             (elevated precision grows linearly with n)"
        )));
    }
    let p = exact_route_bits(ctx, n);
    let table = EtaInts::build(n + 1, p)?;
    let value = chi_from_table(n, &table, p);
    let j_cut = canonical_cutoff(n);
    Ok(ChiValue {
        value: Float::with_val(ctx.bits(), value),
        tail_bound: pairing_bound(n, j_cut, 64),
        j_cutoff: j_cut,
        exact_route: true,
    })
}

/// chi(n) by the best route for the size of `n`.
pub fn chi(n: usize, ctx: &PrecisionContext) -> Result<ChiValue> {
    if n <= CHI_EXACT_MAX {
        chi_exact(n, ctx)
    } else {
        chi_direct(n, ctx)
    }
}

pub(crate) fn chi_from_table(n: usize, eta: &EtaInts, p: u32) -> Float {
    // n * sum_k (-1)^k C(n-1,k) (eta(k+2) - 1), binomial row built on the fly.
    let mut acc = Float::new(p);
    let mut binom = Integer::from(1);
    for k in 0..n {
        let term = (eta.eta_minus_1(k + 2) * &binom).complete(p);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        // C(n-1, k+1) = C(n-1, k) * (n-1-k) / (k+1)
        binom *= (n - 1 - k) as u64;
        binom /= (k + 1) as u64;
    }
    acc * Float::with_val(p, n as u64)
}

fn psi_from_table(n: usize, zm1: &[Float], p: u32) -> Float {
    let mut acc = Float::new(p);
    let mut binom = Integer::from(1);
    for k in 0..n {
        let term = (&zm1[k] * &binom).complete(p);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        binom *= (n - 1 - k) as u64;
        binom /= (k + 1) as u64;
    }
    acc * Float::with_val(p, n as u64) - 1u32
}

/// Build-once table of chi(1..=n_max) via the exact route, shared by the
/// interpolation schemes.
#[derive(Debug)]
pub struct ChiTable {
    bits: u32,
    values: Vec<Float>,
}

impl ChiTable {
    /// Builds chi(1..=n_max) at the context's precision.
    pub fn build(n_max: usize, ctx: &PrecisionContext) -> Result<Self> {
        if n_max == 0 || n_max > CHI_EXACT_MAX {
            return Err(Error::InvalidParam(format!(
                "chi table size must be in 1..={CHI_EXACT_MAX}, got {n_max}"
            )));
        }
        let p = exact_route_bits(ctx, n_max);
        let eta = EtaInts::build(n_max + 1, p)?;
        let values = (1..=n_max)
            .map(|n| Float::with_val(ctx.bits(), chi_from_table(n, &eta, p)))
            .collect();
        Ok(Self {
            bits: ctx.bits(),
            values,
        })
    }

    /// Largest argument covered.
    pub fn n_max(&self) -> usize {
        self.values.len()
    }

    /// Precision of stored values.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// chi(n) for `1 <= n <= n_max` (panics out of range — sizing the table
    /// is the caller's structural decision).
    pub fn chi(&self, n: usize) -> &Float {
        assert!(
            (1..=self.n_max()).contains(&n),
            "chi table built to {} but asked for {n}",
            self.n_max()
        );
        &self.values[n - 1]
    }

    /// The canonical cutoff associated with entry `n`.
    pub fn j_cutoff(&self, n: usize) -> usize {
        assert!((1..=self.n_max()).contains(&n));
        canonical_cutoff(n)
    }

    /// Pairing bound of the canonical truncated direct sum for entry `n`.
    pub fn tail_bound(&self, n: usize) -> Float {
        assert!((1..=self.n_max()).contains(&n));
        pairing_bound(n, canonical_cutoff(n), 64)
    }

    /// Smallest constant `C` with `|chi(n)| <= C / n` over the whole table —
    /// the fitted envelope of the `O(1/n)` decay bound.
    pub fn fitted_envelope_constant(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, v) in self.values.iter().enumerate() {
            let c = v.to_f64().abs() * (i + 1) as f64;
            if c > best {
                best = c;
            }
        }
        best
    }
}

/// Build-once table of psi(1..=n_max) via the exact route.
#[derive(Debug)]
pub struct PsiTable {
    bits: u32,
    values: Vec<Float>,
}

impl PsiTable {
    /// Builds psi(1..=n_max) at the context's precision.
    pub fn build(n_max: usize, ctx: &PrecisionContext) -> Result<Self> {
        if n_max == 0 || n_max > CHI_EXACT_MAX {
            return Err(Error::InvalidParam(format!(
                "psi table size must be in 1..={CHI_EXACT_MAX}, got {n_max}"
            )));
        }
        let p = exact_route_bits(ctx, n_max);
        let eta = EtaInts::build(n_max + 1, p)?;
        let zm1: Vec<Float> = (0..n_max).map(|k| eta.zeta_minus_1(k + 2)).collect();
        let values = (1..=n_max)
            .map(|n| Float::with_val(ctx.bits(), psi_from_table(n, &zm1, p)))
            .collect();
        Ok(Self {
            bits: ctx.bits(),
            values,
        })
    }

    /// Largest argument covered.
    pub fn n_max(&self) -> usize {
        self.values.len()
    }

    /// Precision of stored values.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// psi(n) for `1 <= n <= n_max`.
    pub fn psi(&self, n: usize) -> &Float {
        assert!(
            (1..=self.n_max()).contains(&n),
            "psi table built to {} but asked for {n}",
            self.n_max()
        );
        &self.values[n - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    #[test]
    fn chi_one_is_eta_two_minus_one() {
        let ctx = ctx(192);
        let v = chi_exact(1, &ctx).unwrap();
        // eta(2) - 1 = pi^2/12 - 1
        let want = crate::complex::pi(256).square() / 12u32 - 1u32;
        let d = (v.value.clone() - &want).abs();
        assert!(d.to_f64() < 1e-55);
        assert!(v.value.is_sign_negative());
        assert!(v.exact_route && v.resolved());
    }

    #[test]
    fn direct_and_exact_routes_agree_within_pairing_bound() {
        let ctx = ctx(128);
        for n in [1usize, 2, 5, 9, 23] {
            let a = chi_exact(n, &ctx).unwrap();
            let b = chi_direct(n, &ctx).unwrap();
            let diff = (a.value.clone() - &b.value).abs();
            assert!(
                diff <= b.tail_bound,
                "chi({n}): routes differ by {:e}, bound {:e}",
                diff.to_f64(),
                b.tail_bound.to_f64()
            );
        }
    }

    #[test]
    fn frozen_sign_pattern_and_magnitudes() {
        // The sign of chi flips on a slowly growing period; these values pin
        // the exact route against independently computed references.
        let ctx = ctx(192);
        let table = ChiTable::build(100, &ctx).unwrap();
        let chi9 = table.chi(9).to_f64();
        assert!(
            (chi9 - 0.004224146796).abs() < 1e-9,
            "chi(9) = {chi9}, expected 0.004224146796"
        );
        assert!(table.chi(17).to_f64() < 0.0);
        let chi17 = table.chi(17).to_f64();
        assert!((chi17 + 2.00792e-4).abs() < 1e-8);
        assert!(table.chi(33).to_f64() > 0.0);
        let chi100 = table.chi(100).to_f64();
        assert!(
            (chi100 + 8.1789e-11).abs() < 1e-14,
            "chi(100) = {chi100:e}"
        );
    }

    #[test]
    fn table_matches_single_evaluations() {
        let ctx = ctx(128);
        let table = ChiTable::build(20, &ctx).unwrap();
        for n in [1usize, 7, 20] {
            let single = chi_exact(n, &ctx).unwrap();
            let d = (table.chi(n).clone() - &single.value).abs();
            assert!(d.to_f64() < 1e-35, "chi({n}) table/single differ");
        }
    }

    #[test]
    fn direct_route_at_large_n_reports_unresolved() {
        // By n = 60 the true chi is ~1e-7 smaller than the truncation floor;
        // the direct route must say so rather than pretend.
        let ctx = ctx(128);
        let v = chi_direct(60, &ctx).unwrap();
        assert!(!v.resolved());
        assert_eq!(v.j_cutoff, 1200);
        assert!(v.tail_bound.to_f64() > 0.0);
    }

    #[test]
    fn envelope_constant_is_attained_early_and_small() {
        let ctx = ctx(128);
        let table = ChiTable::build(64, &ctx).unwrap();
        let c = table.fitted_envelope_constant();
        // |chi(1)| ~ 0.1775 dominates: C ~ 0.1775, certainly below 1.
        assert!(c > 0.17 && c < 1.0, "envelope constant {c}");
    }

    #[test]
    fn psi_one_is_zeta_two_minus_two() {
        let ctx = ctx(192);
        let t = PsiTable::build(4, &ctx).unwrap();
        let want = crate::complex::pi(256).square() / 6u32 - 2u32;
        let d = (t.psi(1).clone() - &want).abs();
        assert!(d.to_f64() < 1e-55);
    }

    #[test]
    fn psi_decays_superpolynomially_with_oscillation() {
        let ctx = ctx(128);
        let t = PsiTable::build(200, &ctx).unwrap();
        let p200 = t.psi(200).to_f64();
        assert!(
            (p200 + 3.43e-21).abs() < 2e-23,
            "psi(200) = {p200:e}, expected about -3.43e-21"
        );
        // Magnitude at 100 is astronomically larger than at 200 — far beyond
        // any polynomial decay rate.
        let p100 = t.psi(100).to_f64().abs();
        assert!(p100 / p200.abs() > 1e5);
    }

    #[test]
    fn rejects_zero_and_oversized() {
        let ctx = ctx(128);
        assert!(chi(0, &ctx).is_err());
        assert!(ChiTable::build(0, &ctx).is_err());
        assert!(ChiTable::build(CHI_EXACT_MAX + 1, &ctx).is_err());
        assert!(matches!(
            chi_exact(CHI_EXACT_MAX + 1, &ctx),
            Err(Error::PrecisionError(_))
        ));
    }
}
