//! Common result type returned by every series scheme.

use rug::Float;

use crate::complex::Complex;

/// Outcome of evaluating one scheme at one point.
///
/// `err_estimate` is a *rigorous-flavored* upper bound produced by the rule
/// documented on each scheme (typically a truncation-tail bound plus a
/// rounding term); it is strictly positive whenever the series was truncated.
#[derive(Debug, Clone)]
pub struct EvalResult {
    /// The computed value, rounded to the context's target precision.
    pub value: Complex,
    /// How many terms the scheme consumed. The unit is scheme-specific and
    /// documented on each scheme (plain terms, expansion order, residue
    /// groups, ...).
    pub terms_used: usize,
    /// Upper bound on the absolute error of `value` versus the exact limit,
    /// by the scheme's documented rule.
    pub err_estimate: Float,
    /// Stable identifier of the scheme that produced this result; matches the
    /// CLI scheme token.
    pub scheme_id: &'static str,
}

impl EvalResult {
    /// Builds a result, taking the pieces by value.
    pub fn new(
        value: Complex,
        terms_used: usize,
        err_estimate: Float,
        scheme_id: &'static str,
    ) -> Self {
        Self {
            value,
            terms_used,
            err_estimate,
            scheme_id,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carries_fields_through() {
        let r = EvalResult::new(
            Complex::from_f64(64, 1.5, -0.5),
            42,
            Float::with_val(64, 1e-30),
            "dirichlet",
        );
        assert_eq!(r.terms_used, 42);
        assert_eq!(r.scheme_id, "dirichlet");
        assert!(r.err_estimate.to_f64() > 0.0);
    }
}
