//! Quadrature rules used by the gap integrals and hull averages.
//!
//! Gap integrals all go through the substitution E = tau + (gamma/2) s with
//! the Chebyshev weight 1/sqrt(1-s^2); the s-moments of that weight
//! (pi, 0, pi/2, 0) are what the action and midpoint asymptotics rely on.

/// Gauss-Legendre nodes/weights on [-1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P'_n(x).
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            pp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Integrate f over [a, b] with an n-point Gauss-Legendre rule.
pub fn integrate_gl<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let (xs, ws) = gauss_legendre(n);
    let c = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut s = 0.0;
    for (x, w) in xs.iter().zip(&ws) {
        s += w * f(mid + c * x);
    }
    c * s
}

/// Gauss-Chebyshev (first kind): integral of g(s)/sqrt(1-s^2) over [-1, 1].
pub fn integrate_chebyshev<F: Fn(f64) -> f64>(g: &F, n: usize) -> f64 {
    let w = std::f64::consts::PI / n as f64;
    let mut s = 0.0;
    for k in 0..n {
        let theta = (2.0 * k as f64 + 1.0) * std::f64::consts::PI / (2.0 * n as f64);
        s += g(theta.cos());
    }
    w * s
}

/// Double the order until two successive evaluations agree to `tol`
/// (absolute, relative to max(1, |I|)); returns the finer value.
pub fn converged<F: Fn(usize) -> f64>(eval: F, n0: usize, tol: f64, max_doublings: usize) -> f64 {
    let mut n = n0;
    let mut prev = eval(n);
    for _ in 0..max_doublings {
        n *= 2;
        let cur = eval(n);
        if (cur - prev).abs() <= tol * prev.abs().max(1.0) {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// Mean of a smooth T-periodic function by the n-point trapezoid rule
/// (spectrally accurate for periodic integrands).
pub fn periodic_mean<F: Fn(f64) -> f64>(f: &F, period: f64, n: usize) -> f64 {
    let mut s = 0.0;
    for k in 0..n {
        s += f(period * k as f64 / n as f64);
    }
    s / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn gl_exact_for_polynomials() {
        // 5-point rule integrates degree <= 9 exactly.
        let f = |x: f64| x.powi(8) - 2.0 * x.powi(3) + 1.0;
        let exact = 2.0 / 9.0 + 2.0;
        assert_abs_diff_eq!(integrate_gl(&f, -1.0, 1.0, 5), exact, epsilon = 1e-14);
    }

    #[test]
    fn chebyshev_moments() {
        // Moments of 1/sqrt(1-s^2): pi, 0, pi/2, 0.
        assert_abs_diff_eq!(integrate_chebyshev(&|_s| 1.0, 16), PI, epsilon = 1e-13);
        assert_abs_diff_eq!(integrate_chebyshev(&|s: f64| s, 16), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(integrate_chebyshev(&|s: f64| s * s, 16), PI / 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(integrate_chebyshev(&|s: f64| s * s * s, 16), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn periodic_trapezoid_is_spectral() {
        let f = |x: f64| (2.0 * PI * x).cos().exp();
        // I_0(1) is the exact mean of e^{cos}.
        let bessel_i0_1 = 1.266_065_877_752_008_3;
        assert_abs_diff_eq!(periodic_mean(&f, 1.0, 32), bessel_i0_1, epsilon = 1e-13);
    }

    #[test]
    fn elementary_cos_bound_of_gap_kernel() {
        // integral over [0, pi] of |cos t - a| stays within [2, pi] for |a| < 1.
        for &a in &[0.0, 0.5, 0.99] {
            let split = (a as f64).acos();
            let f = |t: f64| (t.cos() - a).abs();
            let v = integrate_gl(&f, 0.0, split, 64) + integrate_gl(&f, split, PI, 64);
            assert!((2.0..=PI + 1e-12).contains(&v), "a = {a}: {v}");
        }
    }
}
