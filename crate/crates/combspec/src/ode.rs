//! Adaptive Runge-Kutta integration (Dormand-Prince 5(4), FSAL).
//!
//! One generic driver serves both the complex 2x2 fundamental systems of the
//! Floquet engine and the real angle vectors of the Dubrovin flow. The
//! embedded pair gives a 4th-order error estimate; steps are controlled by a
//! standard PI-free accept/reject loop with the usual safety clamps.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Minimal vector-space interface needed by the stepper.
pub trait OdeState: Clone {
    fn scaled_add(&mut self, a: f64, other: &Self);
    fn scale(&mut self, a: f64);
    fn norm_inf(&self) -> f64;
    /// max_i |e_i| / (atol + rtol * max(|y_i|, |y_new_i|))
    fn error_ratio(e: &Self, y: &Self, y_new: &Self, atol: f64, rtol: f64) -> f64;
}

impl OdeState for Vec<f64> {
    fn scaled_add(&mut self, a: f64, other: &Self) {
        for (s, o) in self.iter_mut().zip(other) {
            *s += a * o;
        }
    }
    fn scale(&mut self, a: f64) {
        for s in self.iter_mut() {
            *s *= a;
        }
    }
    fn norm_inf(&self) -> f64 {
        self.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
    fn error_ratio(e: &Self, y: &Self, y_new: &Self, atol: f64, rtol: f64) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..e.len() {
            let sc = atol + rtol * y[i].abs().max(y_new[i].abs());
            r = r.max(e[i].abs() / sc);
        }
        r
    }
}

/// Column-major 2x2 complex matrix state for fundamental systems.
#[derive(Clone, Copy, Debug)]
pub struct CMat2(pub [Complex64; 4]);

impl OdeState for CMat2 {
    fn scaled_add(&mut self, a: f64, other: &Self) {
        for i in 0..4 {
            self.0[i] += a * other.0[i];
        }
    }
    fn scale(&mut self, a: f64) {
        for i in 0..4 {
            self.0[i] *= a;
        }
    }
    fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.norm()))
    }
    fn error_ratio(e: &Self, y: &Self, y_new: &Self, atol: f64, rtol: f64) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..4 {
            let sc = atol + rtol * y.0[i].norm().max(y_new.0[i].norm());
            r = r.max(e.0[i].norm() / sc);
        }
        r
    }
}

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// 5th-order minus embedded 4th-order weights (error coefficients).
const E1: f64 = B1 - 5179.0 / 57600.0;
const E3: f64 = B3 - 7571.0 / 16695.0;
const E4: f64 = B4 - 393.0 / 640.0;
const E5: f64 = B5 + 92097.0 / 339200.0;
const E6: f64 = B6 - 187.0 / 2100.0;
const E7: f64 = -1.0 / 40.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

#[derive(Clone, Copy, Debug)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// When the state norm exceeds this, divide it out and accumulate the
    /// logarithm. Keeps exponentially growing fundamental systems in range.
    pub rescale_threshold: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-12,
            atol: 1e-14,
            max_steps: 4_000_000,
            rescale_threshold: 1e120,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OdeOutput<S> {
    pub y: S,
    /// Accumulated log of the factor divided out of the state.
    pub log_scale: f64,
    pub steps: usize,
}

/// Integrate y' = f(x, y) from `x0` to `x1` (either direction).
pub fn integrate_adaptive<S, F>(f: F, x0: f64, x1: f64, y0: S, opts: &OdeOptions) -> Result<OdeOutput<S>>
where
    S: OdeState,
    F: Fn(f64, &S) -> S,
{
    let span = x1 - x0;
    if span == 0.0 {
        return Ok(OdeOutput { y: y0, log_scale: 0.0, steps: 0 });
    }
    let dir = span.signum();
    let mut x = x0;
    let mut y = y0;
    let mut log_scale = 0.0;
    let mut k1 = f(x, &y);
    // Initial step: conservative fraction of the span, refined by the error
    // controller within a few steps.
    let mut h = dir * (span.abs() / 100.0).min(0.1);
    let mut steps = 0usize;
    let mut rejected_in_a_row = 0usize;

    while (x1 - x) * dir > 0.0 {
        if steps >= opts.max_steps {
            return Err(Error::Integration {
                x,
                z_abs: y.norm_inf(),
                reason: format!("exceeded {} steps", opts.max_steps),
            });
        }
        if (x + h - x1) * dir > 0.0 {
            h = x1 - x;
        }
        if h.abs() < 1e-14 * x.abs().max(1.0) {
            return Err(Error::Integration {
                x,
                z_abs: y.norm_inf(),
                reason: "step size underflow".into(),
            });
        }

        let mut y2 = y.clone();
        y2.scaled_add(h * A21, &k1);
        let k2 = f(x + C2 * h, &y2);

        let mut y3 = y.clone();
        y3.scaled_add(h * A31, &k1);
        y3.scaled_add(h * A32, &k2);
        let k3 = f(x + C3 * h, &y3);

        let mut y4 = y.clone();
        y4.scaled_add(h * A41, &k1);
        y4.scaled_add(h * A42, &k2);
        y4.scaled_add(h * A43, &k3);
        let k4 = f(x + C4 * h, &y4);

        let mut y5 = y.clone();
        y5.scaled_add(h * A51, &k1);
        y5.scaled_add(h * A52, &k2);
        y5.scaled_add(h * A53, &k3);
        y5.scaled_add(h * A54, &k4);
        let k5 = f(x + C5 * h, &y5);

        let mut y6 = y.clone();
        y6.scaled_add(h * A61, &k1);
        y6.scaled_add(h * A62, &k2);
        y6.scaled_add(h * A63, &k3);
        y6.scaled_add(h * A64, &k4);
        y6.scaled_add(h * A65, &k5);
        let k6 = f(x + h, &y6);

        let mut y_new = y.clone();
        y_new.scaled_add(h * B1, &k1);
        y_new.scaled_add(h * B3, &k3);
        y_new.scaled_add(h * B4, &k4);
        y_new.scaled_add(h * B5, &k5);
        y_new.scaled_add(h * B6, &k6);
        let k7 = f(x + h, &y_new);

        let mut err = k1.clone();
        err.scale(h * E1);
        err.scaled_add(h * E3, &k3);
        err.scaled_add(h * E4, &k4);
        err.scaled_add(h * E5, &k5);
        err.scaled_add(h * E6, &k6);
        err.scaled_add(h * E7, &k7);

        let ratio = S::error_ratio(&err, &y, &y_new, opts.atol, opts.rtol);
        steps += 1;

        if ratio <= 1.0 {
            x += h;
            y = y_new;
            k1 = k7; // FSAL
            rejected_in_a_row = 0;
            let n = y.norm_inf();
            if n > opts.rescale_threshold {
                y.scale(1.0 / n);
                k1.scale(1.0 / n);
                log_scale += n.ln();
            }
            let grow = if ratio > 0.0 { 0.9 * ratio.powf(-0.2) } else { 5.0 };
            h *= grow.clamp(0.2, 5.0);
        } else {
            rejected_in_a_row += 1;
            if rejected_in_a_row > 60 {
                return Err(Error::Integration {
                    x,
                    z_abs: y.norm_inf(),
                    reason: "error control cannot make progress".into(),
                });
            }
            h *= (0.9 * ratio.powf(-0.2)).clamp(0.1, 0.9);
        }
    }

    Ok(OdeOutput { y, log_scale, steps })
}

/// Fixed-grid integration with the 5th-order DP weights (no controller).
///
/// The step pattern depends only on `n_steps`, so the output is a smooth
/// function of any parameter inside `f`; this is what makes complex-step
/// differentiation through the integrator legitimate.
pub fn integrate_fixed<S, F>(f: F, x0: f64, x1: f64, y0: S, n_steps: usize) -> S
where
    S: OdeState,
    F: Fn(f64, &S) -> S,
{
    let h = (x1 - x0) / n_steps as f64;
    let mut y = y0;
    for i in 0..n_steps {
        let x = x0 + i as f64 * h;
        let k1 = f(x, &y);
        let mut y2 = y.clone();
        y2.scaled_add(h * A21, &k1);
        let k2 = f(x + C2 * h, &y2);
        let mut y3 = y.clone();
        y3.scaled_add(h * A31, &k1);
        y3.scaled_add(h * A32, &k2);
        let k3 = f(x + C3 * h, &y3);
        let mut y4 = y.clone();
        y4.scaled_add(h * A41, &k1);
        y4.scaled_add(h * A42, &k2);
        y4.scaled_add(h * A43, &k3);
        let k4 = f(x + C4 * h, &y4);
        let mut y5 = y.clone();
        y5.scaled_add(h * A51, &k1);
        y5.scaled_add(h * A52, &k2);
        y5.scaled_add(h * A53, &k3);
        y5.scaled_add(h * A54, &k4);
        let k5 = f(x + C5 * h, &y5);
        let mut y6 = y.clone();
        y6.scaled_add(h * A61, &k1);
        y6.scaled_add(h * A62, &k2);
        y6.scaled_add(h * A63, &k3);
        y6.scaled_add(h * A64, &k4);
        y6.scaled_add(h * A65, &k5);
        let k6 = f(x + h, &y6);
        let mut y_new = y.clone();
        y_new.scaled_add(h * B1, &k1);
        y_new.scaled_add(h * B3, &k3);
        y_new.scaled_add(h * B4, &k4);
        y_new.scaled_add(h * B5, &k5);
        y_new.scaled_add(h * B6, &k6);
        y = y_new;
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exponential_decay() {
        let out = integrate_adaptive(
            |_x, y: &Vec<f64>| vec![-y[0]],
            0.0,
            3.0,
            vec![1.0],
            &OdeOptions::default(),
        )
        .unwrap();
        assert_abs_diff_eq!(out.y[0], (-3.0f64).exp(), epsilon = 1e-11);
    }

    #[test]
    fn harmonic_oscillator_high_accuracy() {
        // y'' = -100 y over 10 units: 100 radians of phase.
        let f = |_x: f64, y: &Vec<f64>| vec![y[1], -100.0 * y[0]];
        let out = integrate_adaptive(f, 0.0, 10.0, vec![1.0, 0.0], &OdeOptions::default()).unwrap();
        assert_abs_diff_eq!(out.y[0], (100.0f64).cos(), epsilon = 1e-9);
        assert_abs_diff_eq!(out.y[1], -10.0 * (100.0f64).sin(), epsilon = 1e-8);
    }

    #[test]
    fn fixed_grid_matches_adaptive() {
        let f = |x: f64, y: &Vec<f64>| vec![y[0] * x.cos()];
        let a = integrate_adaptive(f, 0.0, 2.0, vec![1.0], &OdeOptions::default()).unwrap();
        let b = integrate_fixed(f, 0.0, 2.0, vec![1.0], 400);
        assert_abs_diff_eq!(a.y[0], b[0], epsilon = 1e-10);
        assert_abs_diff_eq!(a.y[0], (2.0f64).sin().exp(), epsilon = 1e-10);
    }

    #[test]
    fn rescaling_tracks_growth() {
        // y' = 50 y over [0, 12]: e^600 overflows f64 without rescaling.
        let f = |_x: f64, y: &Vec<f64>| vec![50.0 * y[0]];
        let out = integrate_adaptive(f, 0.0, 12.0, vec![1.0], &OdeOptions::default()).unwrap();
        let log_y = out.y[0].ln() + out.log_scale;
        assert_abs_diff_eq!(log_y, 600.0, epsilon = 1e-6 * 600.0);
    }

    #[test]
    fn backward_integration() {
        let f = |_x: f64, y: &Vec<f64>| vec![-y[0]];
        let out = integrate_adaptive(f, 3.0, 0.0, vec![(-3.0f64).exp()], &OdeOptions::default()).unwrap();
        assert_abs_diff_eq!(out.y[0], 1.0, epsilon = 1e-10);
    }
}
