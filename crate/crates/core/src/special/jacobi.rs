/// Jacobi polynomial P_n^{(α,β)}(x) by the three-term recurrence in n.
///
/// Requires α, β > −1. This is the standard normalization with
/// P_n^{(α,β)}(1) = (α+1)_n / n!.
pub fn jacobi_p(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    jacobi_with_derivative(n, alpha, beta, x).0
}

/// (P_n, P_{n−1}) at `x`; P_{−1} is reported as 0.
pub(crate) fn jacobi_pair(n: u32, alpha: f64, beta: f64, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let ab = alpha + beta;
    let mut p_prev = 1.0;
    let mut p = (alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let a1 = 2.0 * kf * (kf + ab) * (s - 2.0);
        let a2 = (s - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (s - 2.0) * (s - 1.0) * s;
        let a4 = 2.0 * (kf + alpha - 1.0) * (kf + beta - 1.0) * s;
        let next = ((a2 + a3 * x) * p - a4 * p_prev) / a1;
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

/// P_n and its derivative, the latter from
/// (2n+α+β)(1−x²) P_n' = n[(α−β) − (2n+α+β)x] P_n + 2(n+α)(n+β) P_{n−1}.
/// Valid for |x| < 1.
pub(crate) fn jacobi_with_derivative(n: u32, alpha: f64, beta: f64, x: f64) -> (f64, f64) {
    let (p, p_prev) = jacobi_pair(n, alpha, beta, x);
    if n == 0 {
        return (p, 0.0);
    }
    let nf = n as f64;
    let s = 2.0 * nf + alpha + beta;
    let dp = (nf * ((alpha - beta) - s * x) * p + 2.0 * (nf + alpha) * (nf + beta) * p_prev)
        / (s * (1.0 - x * x));
    (p, dp)
}
