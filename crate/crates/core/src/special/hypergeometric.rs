use super::NumericsError;

/// Relative cutoff for the non-terminating power series.
pub const SERIES_TOL: f64 = 1e-15;
/// Hard cap on the number of series terms.
pub const SERIES_MAX_TERMS: usize = 1_000_000;

/// Parameters within this distance of a nonpositive integer are treated as
/// that integer.
const INTEGER_SNAP: f64 = 1e-9;

fn nonpositive_integer(p: f64) -> Option<u64> {
    let r = p.round();
    if r <= 0.0 && (p - r).abs() <= INTEGER_SNAP {
        Some((-r) as u64)
    } else {
        None
    }
}

fn snap(p: f64) -> f64 {
    match nonpositive_integer(p) {
        Some(k) => -(k as f64),
        None => p,
    }
}

/// Number of the highest surviving term when `a` or `b` is a nonpositive integer.
fn termination_order(a: f64, b: f64) -> Option<u64> {
    match (nonpositive_integer(a), nonpositive_integer(b)) {
        (Some(ka), Some(kb)) => Some(ka.min(kb)),
        (Some(k), None) | (None, Some(k)) => Some(k),
        (None, None) => None,
    }
}

/// The individual terms of a terminating ₂F₁, or `None` if the series does not
/// terminate.
///
/// Terms are formed by the ratio recurrence
/// t_{j+1} = t_j (a+j)(b+j) x / ((c+j)(j+1)) with explicit products, so a
/// negative non-integer `c` is fine as long as no `c+j` vanishes before the
/// last term.
pub fn terminating_terms(a: f64, b: f64, c: f64, x: f64) -> Result<Option<Vec<f64>>, NumericsError> {
    let Some(k) = termination_order(a, b) else {
        return Ok(None);
    };
    let (a, b) = (snap(a), snap(b));
    let mut terms = Vec::with_capacity(k as usize + 1);
    let mut t = 1.0;
    terms.push(t);
    for j in 0..k {
        let jf = j as f64;
        let denom = c + jf;
        if denom.abs() <= INTEGER_SNAP {
            return Err(NumericsError::PoleAtC { c });
        }
        t *= (a + jf) * (b + jf) * x / (denom * (jf + 1.0));
        terms.push(t);
    }
    Ok(Some(terms))
}

/// Gauss hypergeometric function ₂F₁(a, b; c; x) for real arguments.
///
/// Terminating series (a or b a nonpositive integer) are summed exactly for
/// any real `x`; otherwise the power series is summed for |x| < 1 until
/// |term| < [`SERIES_TOL`]·|sum|.
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64, NumericsError> {
    hyp2f1_with_tol(a, b, c, x, SERIES_TOL)
}

/// [`hyp2f1`] with an explicit relative cutoff for the non-terminating series.
pub fn hyp2f1_with_tol(a: f64, b: f64, c: f64, x: f64, tol: f64) -> Result<f64, NumericsError> {
    if let Some(terms) = terminating_terms(a, b, c, x)? {
        return Ok(terms.iter().sum());
    }
    if nonpositive_integer(c).is_some() {
        return Err(NumericsError::PoleAtC { c });
    }
    if !(x.abs() < 1.0) {
        return Err(NumericsError::NonConvergent { x });
    }
    let mut sum = 1.0;
    let mut t = 1.0;
    for j in 0..SERIES_MAX_TERMS {
        let jf = j as f64;
        t *= (a + jf) * (b + jf) * x / ((c + jf) * (jf + 1.0));
        sum += t;
        if t.abs() < tol * sum.abs() {
            return Ok(sum);
        }
    }
    Err(NumericsError::NonConvergent { x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::pochhammer;
    use proptest::prelude::*;

    #[test]
    fn zero_parameter_truncates() {
        assert_eq!(hyp2f1(0.0, 7.3, 2.1, 0.9).unwrap(), 1.0);
        // also for |x| > 1, since the series is finite
        assert_eq!(hyp2f1(0.0, 7.3, 2.1, 5.0).unwrap(), 1.0);
    }

    #[test]
    fn two_term_expansion() {
        for &(c, x) in &[(2.5, 0.3), (-0.5, 4.0), (7.0, -12.0)] {
            let v = hyp2f1(-1.0, -1.0, c, x).unwrap();
            assert!((v - (1.0 + x / c)).abs() < 1e-15 * (1.0 + x / c).abs().max(1.0));
        }
    }

    #[test]
    fn snapped_integer_parameters() {
        let v = hyp2f1(-2.0 + 1e-12, 3.0, 4.0, 0.5).unwrap();
        let exact = 1.0 - 2.0 * 3.0 / 4.0 * 0.5 + (2.0 * 3.0 * 4.0) / (4.0 * 5.0 * 2.0) * 0.25;
        assert!((v - exact).abs() < 1e-14);
    }

    #[test]
    fn geometric_series() {
        // ₂F₁(1, b; b; x) = 1/(1−x)
        let v = hyp2f1(1.0, 2.5, 2.5, 0.7).unwrap();
        assert!((v - 1.0 / 0.3).abs() < 1e-13);
    }

    #[test]
    fn log_series() {
        // x ₂F₁(1,1;2;x) = −ln(1−x)
        let x = 0.6;
        let v = x * hyp2f1(1.0, 1.0, 2.0, x).unwrap();
        assert!((v + (1.0f64 - x).ln()).abs() < 1e-14);
    }

    #[test]
    fn errors() {
        assert!(matches!(hyp2f1(0.5, 0.5, 1.0, 1.0), Err(NumericsError::NonConvergent { .. })));
        assert!(matches!(hyp2f1(0.5, 0.5, 1.0, -1.5), Err(NumericsError::NonConvergent { .. })));
        assert!(matches!(hyp2f1(0.5, 0.5, -2.0, 0.1), Err(NumericsError::PoleAtC { .. })));
        // terminating at order 3 but c = −1 vanishes at j = 1
        assert!(matches!(hyp2f1(-3.0, 1.0, -1.0, 0.1), Err(NumericsError::PoleAtC { .. })));
        // terminates at order 2 before c = −3 is reached
        assert!(hyp2f1(-2.0, 1.0, -3.0, 0.1).is_ok());
    }

    #[test]
    fn chu_vandermonde() {
        // ₂F₁(−k, b; c; 1) = (c−b)_k / (c)_k
        for k in 0..8u32 {
            let (b, c) = (1.7, 4.2);
            let v = hyp2f1(-(k as f64), b, c, 1.0).unwrap();
            let exact = pochhammer(c - b, k) / pochhammer(c, k);
            assert!((v - exact).abs() < 1e-13 * exact.abs().max(1.0), "k={k}");
        }
    }

    proptest! {
        #[test]
        fn reverse_summation_is_stable(k in 0u32..12, b in -3.0f64..6.0, c in 0.5f64..9.0, x in -4.0f64..4.0) {
            let terms = terminating_terms(-(k as f64), b, c, x).unwrap().unwrap();
            let forward: f64 = terms.iter().sum();
            let backward: f64 = terms.iter().rev().sum();
            let mag: f64 = terms.iter().map(|t| t.abs()).sum();
            // relative to the term magnitudes, since the sum itself may cancel
            prop_assert!((forward - backward).abs() <= 1e-13 * mag.max(f64::MIN_POSITIVE));
        }
    }
}
