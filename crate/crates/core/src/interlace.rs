//! Interlacing analysis and reconstruction of `eta(s) + eta(1-s)`.
//!
//! The centered expansion of `eta(s) + eta(1-s)` truncates, at even order
//! `m`, to a difference of two symmetrized factorial products: one over the
//! half-integer grid `{j + 5/2}` and one over the shifted grid
//! `{j + 2 + d_j}` from [`crate::shifts::d_shifts`]. Both factor over
//! critical-line roots — `lambda_j` and `omega_j` — computed here from their
//! monotone phase equations. In the variable `y = (s - 1/2)^2` the truncation
//! becomes a polynomial `A prod (y + omega^2) - B prod (y + lambda^2)` whose
//! real roots `-Omega_j` — extracted by `omega_caps` over the sign-scanned
//! `{-lambda^2, -omega^2}` grid — turn the whole truncation into the single
//! product `2 chi(m+1)/(m+1)! prod (y + Omega_j)`. `reconstruct_eta_sym`
//! evaluates both forms and their deviation from the series reference.
//!
//! How the root families sit relative to one another is reported, never
//! assumed: `interlace_report` builds the alternation pattern of two
//! families' squared values, and `omega_caps` records the observed sign
//! facts about `Omega_1` as findings.

use rug::ops::CompleteRound;
use rug::{Float, Integer};

use crate::chi::chi;
use crate::complex::Complex;
use crate::error::Error;
use crate::functional::eta_sym_ref;
use crate::melzak::gamma_half_ratio;
use crate::precision::PrecisionContext;
use crate::shifts::{d_shifts, ShiftVector};
use crate::symfact::{family_context, roots_from_offsets, RootFamily, RootList};
use crate::Result;

/// How two root families' squared values interleave.
#[derive(Debug, Clone)]
pub struct InterlaceReport {
    /// Family of the `left` list (its code letter appears in `pattern`).
    pub left_family: RootFamily,
    /// Family of the `right` list.
    pub right_family: RootFamily,
    /// Family code letters of the merged ascending squared values.
    pub pattern: String,
    /// True when the pattern alternates strictly with positive gaps.
    pub strict: bool,
    /// Smallest gap between consecutive merged squared values.
    pub min_gap: Float,
}

/// Merges two families by squared value and reports their alternation
/// pattern. `strict` requires perfect alternation and strictly positive
/// gaps throughout.
pub fn interlace_report(left: &RootList, right: &RootList) -> InterlaceReport {
    let p = left
        .values
        .iter()
        .chain(right.values.iter())
        .map(Float::prec)
        .max()
        .unwrap_or(64);
    let mut merged: Vec<(Float, char)> = Vec::with_capacity(left.len() + right.len());
    for v in &left.values {
        merged.push((Float::with_val(p, v.clone().square()), left.family.code()));
    }
    for v in &right.values {
        merged.push((Float::with_val(p, v.clone().square()), right.family.code()));
    }
    merged.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite root values"));

    let mut pattern = String::with_capacity(merged.len());
    let mut strict = true;
    let mut min_gap = Float::with_val(p, rug::float::Special::Infinity);
    for (i, (v, code)) in merged.iter().enumerate() {
        pattern.push(*code);
        if i > 0 {
            let gap = (v - &merged[i - 1].0).complete(p);
            if merged[i - 1].1 == *code {
                strict = false;
            }
            if gap < min_gap {
                min_gap = gap;
            }
        }
    }
    if !(min_gap > 0) {
        strict = false;
    }
    InterlaceReport {
        left_family: left.family,
        right_family: right.family,
        pattern,
        strict,
        min_gap,
    }
}

/// Critical-line roots of the two order-`m` truncation products: `lambda_j`
/// for the half-integer grid (phase offsets `j + 2`) and `omega_j` for the
/// shifted grid (phase offsets `j + 3/2 + d_j`), `m/2` of each.
pub fn lambda_omega(
    m: usize,
    shifts: &ShiftVector,
    ctx: &PrecisionContext,
) -> Result<(RootList, RootList)> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::InvalidParam(format!(
            "order must be even and at least 4, got {m}"
        )));
    }
    if shifts.m != m || shifts.d.len() != m {
        return Err(Error::InvalidParam(format!(
            "shift vector of order {} does not match requested order {m}",
            shifts.m
        )));
    }
    let fam_ctx = family_context(ctx, m);
    let p = fam_ctx.working_bits();

    let half_offsets: Vec<Float> = (0..m)
        .map(|j| Float::with_val(p, (j + 2) as u64))
        .collect();
    let lambdas = roots_from_offsets(&half_offsets, fam_ctx.bits(), p)?;

    let shifted_offsets: Vec<Float> = (0..m)
        .map(|j| {
            let mut c = Float::with_val(p, (2 * j + 3) as u64);
            c >>= 1u32;
            c += Float::with_val(p, &shifts.d[j]);
            c
        })
        .collect();
    let omegas = roots_from_offsets(&shifted_offsets, fam_ctx.bits(), p)?;

    let to_list = |roots: Vec<Float>, family: RootFamily| {
        RootList::new(
            family,
            roots
                .into_iter()
                .map(|x| Float::with_val(fam_ctx.bits(), x))
                .collect(),
            m,
        )
    };
    Ok((
        to_list(lambdas, RootFamily::Lambda),
        to_list(omegas, RootFamily::Omega),
    ))
}

/// Everything `omega_caps` observed while extracting the single-product
/// constants: the ingredient families, the caps themselves, and the sign
/// findings the construction only reports, never assumes.
#[derive(Debug, Clone)]
pub struct OmegaReport {
    /// The (even) truncation order.
    pub m: usize,
    /// Node shifts feeding the shifted product.
    pub shifts: ShiftVector,
    /// Half-integer-grid roots `lambda_j`.
    pub lambdas: RootList,
    /// Shifted-grid roots `omega_j`.
    pub omegas: RootList,
    /// The real constants among `Omega_1..Omega_{m/2}`, ascending. A
    /// shortfall against `m/2` (always an even count) records conjugate
    /// pairs sitting off the real axis — see `complete` and `missing`.
    pub caps: RootList,
    /// Whether every cap was found on the real axis.
    pub complete: bool,
    /// How many caps are off the real axis (conjugate pairs, so even).
    pub missing: usize,
    /// `chi(m+1)`, the centered coefficient scaling the single product,
    /// carried at the extraction's working precision.
    pub chi_value: Float,
    /// Whether `chi(m+1) < 0` (the sign selects the interlacing
    /// orientation; it alternates slowly with m).
    pub chi_negative: bool,
    /// Whether `Omega_1 < 0`.
    pub first_cap_negative: bool,
    /// Whether `Omega_1 <= -1/4` (the limit-claim bound) — reported only.
    pub first_cap_at_most_minus_quarter: bool,
    /// Whether the chain `Omega_1 < lambda_1^2 < Omega_2 < ... <
    /// lambda_{m/2}^2` held for this m.
    pub chain_with_lambda: bool,
}

/// Coefficient pair of the y-space polynomial
/// `A prod (y + omega^2) - B prod (y + lambda^2)`:
/// `A = 2 chi(m+1)/(m+1)! + 2 pi/((m-1)/2)!^2` and `B` the pi term alone.
fn y_poly_coeffs(m: usize, chi_value: &Float, p: u32) -> (Float, Float) {
    let b = Float::with_val(p, gamma_half_ratio(m / 2).square().recip()) << 1u32;
    let mut a = Float::with_val(p, chi_value) << 1u32;
    a /= Float::with_val(p, Integer::from(Integer::factorial(m as u32 + 1)));
    a += &b;
    (a, b)
}

/// Elementary symmetric sums `e_0..e_n` of the inputs.
fn elem_sym(vals: &[Float], p: u32) -> Vec<Float> {
    let mut e = vec![Float::with_val(p, 0); vals.len() + 1];
    e[0] = Float::with_val(p, 1);
    for v in vals {
        for k in (1..e.len()).rev() {
            let add = (&e[k - 1] * v).complete(p);
            e[k] += add;
        }
    }
    e
}

/// `A prod (y + omega^2) - B prod (y + lambda^2)` for real `y`.
fn y_poly_at(
    y: &Float,
    a: &Float,
    b: &Float,
    omega2: &[Float],
    lambda2: &[Float],
    p: u32,
) -> Float {
    let mut pa = a.clone();
    for w2 in omega2 {
        pa *= (y + w2).complete(p);
    }
    let mut pb = b.clone();
    for l2 in lambda2 {
        pb *= (y + l2).complete(p);
    }
    pa - pb
}

/// Extracts the real roots `-Omega_j` of the y-space difference polynomial
/// at even `m >= 8`, bracketing by sign scan over the merged
/// `{-lambda^2, -omega^2}` grid (subdivided, since adjacent roots may share
/// a cell) plus expanding exterior sweeps reaching `max(10^4, 4x)` the grid
/// extent on either side (real roots sit outside the grid once m grows).
/// The realness of every cap is an observation here, not an assumption: an
/// even shortfall is reported in the result as conjugate pairs off the real
/// axis, while an odd shortfall — impossible for a real polynomial unless
/// the scan lost a crossing — raises `ComplexRootFinding`.
pub fn omega_caps(m: usize, ctx: &PrecisionContext) -> Result<OmegaReport> {
    if m < 8 || m % 2 != 0 {
        return Err(Error::InvalidParam(format!(
            "cap extraction needs even m >= 8, got {m}"
        )));
    }
    let fam_ctx = family_context(ctx, m);
    let shifts = d_shifts(m, &fam_ctx)?;
    let (lambdas, omegas) = lambda_omega(m, &shifts, &fam_ctx)?;

    // The two products cancel down to the tiny centered coefficient near
    // the leading order, so evaluation runs well above target precision.
    let p = fam_ctx.working_bits() + 2 * m as u32 + 64;
    let chi_value = chi(m + 1, &fam_ctx.elevated(2 * m as u32 + 64))?.value;
    let (a, b) = y_poly_coeffs(m, &chi_value, p);

    let omega2: Vec<Float> = omegas
        .values
        .iter()
        .map(|v| Float::with_val(p, v.clone().square()))
        .collect();
    let lambda2: Vec<Float> = lambdas
        .values
        .iter()
        .map(|v| Float::with_val(p, v.clone().square()))
        .collect();

    // Ascending grid of sign-probe anchors: every -lambda^2 and -omega^2.
    let mut grid: Vec<Float> = omega2
        .iter()
        .chain(lambda2.iter())
        .map(|v| -v.clone())
        .collect();
    grid.sort_by(|x, y| x.partial_cmp(y).expect("finite grid"));

    let eval = |y: &Float| y_poly_at(y, &a, &b, &omega2, &lambda2, p);
    // Exterior roots drift past the grid as m grows, so the sweep range is
    // relative to the grid extent with an absolute floor.
    let mut cap = Float::with_val(p, grid.first().expect("nonempty grid").clone().abs());
    cap <<= 2u32;
    cap = cap.max(&Float::with_val(p, 10_000u32));
    let mut probes: Vec<Float> = Vec::new();
    // Exterior sweep below the grid, walking out to the cap.
    {
        let lowest = grid.first().expect("nonempty grid");
        let mut step = (lowest.clone().abs() + Float::with_val(p, 1)) / 1024u32;
        let mut y = lowest.clone();
        while y > -cap.clone() {
            y = (&y - &step).complete(p);
            probes.push(y.clone());
            step <<= 1u32;
        }
        probes.reverse();
    }
    // Interior subdivision: 16 probes per grid cell catch root pairs that
    // share a cell.
    for w in grid.windows(2) {
        probes.push(w[0].clone());
        let width = (&w[1] - &w[0]).complete(p);
        for t in 1..16u32 {
            let mut y = width.clone();
            y *= t;
            y /= 16u32;
            y += &w[0];
            probes.push(y);
        }
    }
    probes.push(grid.last().expect("nonempty grid").clone());
    // Exterior sweep above the grid.
    {
        let highest = grid.last().expect("nonempty grid");
        let mut step = (highest.clone().abs() + Float::with_val(p, 1)) / 1024u32;
        let mut y = highest.clone();
        while y < cap {
            y = (&y + &step).complete(p);
            probes.push(y.clone());
            step <<= 1u32;
        }
    }

    let expected = m / 2;
    let mut roots: Vec<Float> = Vec::new();
    let mut prev: Option<(Float, Float)> = None;
    let iters = (fam_ctx.bits() + 32) as usize;
    for y in probes {
        let v = eval(&y);
        if v.is_zero() {
            roots.push(y.clone());
            prev = None;
            continue;
        }
        if let Some((py, pv)) = &prev {
            if pv.is_sign_negative() != v.is_sign_negative() {
                let mut lo = py.clone();
                let mut hi = y.clone();
                let neg_left = pv.is_sign_negative();
                for _ in 0..iters {
                    let mid = Float::with_val(p, (&lo + &hi).complete(p) >> 1u32);
                    let mv = eval(&mid);
                    if mv.is_zero() || mv.is_sign_negative() == neg_left {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                roots.push(Float::with_val(p, (&lo + &hi).complete(p) >> 1u32));
            }
        }
        prev = Some((y, v));
    }
    if roots.len() > expected || (expected - roots.len()) % 2 != 0 {
        return Err(Error::ComplexRootFinding(format!(
            "found {} real caps of {expected} at order {m}; a real \
             polynomial loses real roots in conjugate pairs, so the scan \
             lost a crossing",
            roots.len()
        )));
    }
    let missing = expected - roots.len();

    // y-roots ascending produce caps Omega = -y in ascending index order
    // after reversal: the largest y-root is the exterior candidate Omega_1.
    let caps_vals: Vec<Float> = roots
        .iter()
        .rev()
        .map(|y| Float::with_val(fam_ctx.bits(), -y.clone()))
        .collect();
    let caps = RootList::new(RootFamily::CapOmega, caps_vals, m);

    let mut quarter = Float::with_val(32, 1);
    quarter >>= 2u32;
    let (first_neg, first_quarter) = match caps.values.first() {
        Some(first) => (first.is_sign_negative(), *first <= -quarter),
        None => (false, false),
    };
    let mut chain = missing == 0;
    for (j, cap_v) in caps.values.iter().enumerate() {
        let l2 = Float::with_val(p, lambdas.values[j].clone().square());
        if !(cap_v < &l2) {
            chain = false;
        }
        if j > 0 {
            let prev_l2 = Float::with_val(p, lambdas.values[j - 1].clone().square());
            if !(cap_v > &prev_l2) {
                chain = false;
            }
        }
    }
    Ok(OmegaReport {
        m,
        shifts,
        lambdas,
        omegas,
        caps,
        complete: missing == 0,
        missing,
        chi_negative: chi_value.is_sign_negative(),
        first_cap_negative: first_neg,
        first_cap_at_most_minus_quarter: first_quarter,
        chain_with_lambda: chain,
        chi_value,
    })
}

/// Both order-`m` truncation forms of `eta(s) + eta(1-s)` and how far they
/// sit from the series reference.
#[derive(Debug, Clone)]
pub struct SymReconstruction {
    /// The difference-of-products form over the half-integer and shifted
    /// grids.
    pub difference_form: Complex,
    /// The single-product form `2 chi(m+1)/(m+1)! prod (y + Omega_j)`,
    /// rebuilt from the extracted caps. Any conjugate pair off the real
    /// axis contributes through its irreducible quadratic factor, recovered
    /// by dividing the real caps out of the expanded coefficients.
    pub product_form: Complex,
    /// Distance between the two forms (they are factorizations of the same
    /// polynomial, so this is pure root-extraction noise).
    pub forms_gap: Float,
    /// Largest intermediate product magnitude — the natural scale for
    /// judging `forms_gap`.
    pub scale: Float,
    /// Independently computed `eta(s) + eta(1-s)`.
    pub reference: Complex,
    /// Distance from `difference_form` to the reference (the genuine
    /// order-`m` truncation error).
    pub deviation: Float,
    /// How many caps sat off the real axis (folded into the residual
    /// factor of `product_form`).
    pub caps_missing: usize,
}

/// Evaluates the order-`m` truncation of `eta(s) + eta(1-s)` inside the
/// strip `0 < Re(s) < 1`, in both its factored forms.
pub fn reconstruct_eta_sym(
    s: &Complex,
    m: usize,
    ctx: &PrecisionContext,
) -> Result<SymReconstruction> {
    if !s.is_finite() || !(s.re > 0) || !(s.re < 1) {
        return Err(Error::DomainError(
            "reconstruction is defined inside the strip 0 < Re(s) < 1".into(),
        ));
    }
    if m < 8 || m % 2 != 0 {
        return Err(Error::InvalidParam(format!(
            "reconstruction needs even m >= 8, got {m}"
        )));
    }
    let fam_ctx = family_context(ctx, m);
    // Rebuilding coefficients from the squared roots cancels heavily near
    // the leading order, so extract the ingredient families well above the
    // target precision.
    let cap_ctx = fam_ctx.elevated(2 * m as u32 + 128);
    let report = omega_caps(m, &cap_ctx)?;
    let p = fam_ctx.working_bits() + m as u32 + 64;
    let sp = s.to_prec(p);

    // Difference form: the two grid products cancel down to order one, so
    // track the largest intermediate magnitude as the conditioning scale.
    let mut half_minus = Complex::one(p); // prod (j + 5/2 - s)
    let mut half_plus = Complex::one(p); // prod (j + 3/2 + s)
    let mut shift_minus = Complex::one(p); // prod (j + 2 + d_j - s)
    let mut shift_plus = Complex::one(p); // prod (j + 1 + d_j + s)
    for j in 0..m {
        let mut h = Float::with_val(p, (2 * j + 5) as u64);
        h >>= 1u32;
        half_minus = &half_minus * &(&Complex::from_real(h.clone()) - &sp);
        h -= 1u32;
        half_plus = &half_plus * &(&Complex::from_real(h) + &sp);

        let mut n = Float::with_val(p, (j + 2) as u64);
        n += &report.shifts.d[j];
        shift_minus = &shift_minus * &(&Complex::from_real(n.clone()) - &sp);
        n -= 1u32;
        shift_plus = &shift_plus * &(&Complex::from_real(n) + &sp);
    }
    let inv_w2 = Float::with_val(p, gamma_half_ratio(m / 2).square().recip());
    let mut chi_over = Float::with_val(p, &report.chi_value);
    chi_over /= Float::with_val(p, Integer::from(Integer::factorial(m as u32 + 1)));

    let half_sum = &half_minus + &half_plus;
    let shift_sum = &shift_minus + &shift_plus;
    let mut scale = half_sum.abs().max(&shift_sum.abs());
    scale *= inv_w2.clone().max(&chi_over.clone().abs());
    let coeff = (&chi_over + &inv_w2).complete(p);
    let difference = (&shift_sum.scale(&coeff) - &half_sum.scale(&inv_w2)).to_prec(fam_ctx.bits());

    // Single-product form in y = (s - 1/2)^2: expand the polynomial's
    // ascending coefficients from the squared root grids, divide the real
    // caps out, and keep the residual factor (degree = report.missing) for
    // any conjugate pair off the real axis. The leading coefficient is
    // formed directly as 2 chi/(m+1)! rather than by subtracting the two
    // near-equal product constants.
    let n = m / 2;
    let pc = cap_ctx.working_bits() + 2 * m as u32 + 128;
    let omega2: Vec<Float> = report
        .omegas
        .values
        .iter()
        .map(|v| Float::with_val(pc, v.clone().square()))
        .collect();
    let lambda2: Vec<Float> = report
        .lambdas
        .values
        .iter()
        .map(|v| Float::with_val(pc, v.clone().square()))
        .collect();
    let ew = elem_sym(&omega2, pc);
    let el = elem_sym(&lambda2, pc);
    let (_, b_big) = y_poly_coeffs(m, &report.chi_value, pc);
    let mut lead = Float::with_val(pc, &report.chi_value) << 1u32;
    lead /= Float::with_val(pc, Integer::from(Integer::factorial(m as u32 + 1)));
    let mut desc: Vec<Float> = Vec::with_capacity(n + 1);
    for k in (0..=n).rev() {
        let diff = (&ew[n - k] - &el[n - k]).complete(pc);
        let mut c = (&b_big * &diff).complete(pc);
        c += (&lead * &ew[n - k]).complete(pc);
        desc.push(c);
    }
    for cap_v in &report.caps.values {
        let r0 = -Float::with_val(pc, cap_v);
        let mut q: Vec<Float> = Vec::with_capacity(desc.len() - 1);
        let mut acc = Float::with_val(pc, 0);
        for d in &desc[..desc.len() - 1] {
            acc *= &r0;
            acc += d;
            q.push(acc.clone());
        }
        desc = q;
    }
    let s_pc = s.to_prec(pc);
    let mut centered = s_pc.clone();
    centered.re -= Float::with_val(pc, 0.5f32);
    let y = &centered * &centered;
    let mut prod = Complex::one(pc);
    for cap_v in &report.caps.values {
        prod = &prod * &(&y + &Complex::from_real(Float::with_val(pc, cap_v)));
    }
    let mut resid = Complex::zero(pc);
    for d in &desc {
        resid = &(&resid * &y) + &Complex::from_real(d.clone());
    }
    let product = (&prod * &resid).to_prec(fam_ctx.bits());

    let reference = eta_sym_ref(&sp.to_prec(fam_ctx.working_bits()), &fam_ctx)?;
    let forms_gap = difference.dist(&product);
    let deviation = difference.dist(&reference);
    Ok(SymReconstruction {
        difference_form: difference,
        product_form: product,
        forms_gap,
        scale: Float::with_val(fam_ctx.bits(), scale),
        reference,
        deviation,
        caps_missing: report.missing,
    })
}
