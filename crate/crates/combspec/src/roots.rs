//! Bracketed root finding and 1-d extremum search.

use crate::error::{Error, Result};

/// Brent's method on a bracketing interval [a, b] with f(a) f(b) <= 0.
pub fn brent<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    xtol: f64,
    what: &str,
) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::Bracket {
            what: what.into(),
            detail: format!("no sign change on [{a}, {b}]: f = {fa:.3e}, {fb:.3e}"),
        });
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.abs() > fc.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic interpolation / secant
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * q0 * (q0 - r) - (b - a) * (r - 1.0));
                q = (q0 - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1 * xm.signum() };
        fb = f(b);
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    Err(Error::Bracket {
        what: what.into(),
        detail: "brent failed to converge in 200 iterations".into(),
    })
}

/// Expand [a, b] geometrically until f changes sign, stepping toward `dir`.
pub fn expand_until_sign_change<F: FnMut(f64) -> f64>(
    mut f: F,
    start: f64,
    mut step: f64,
    max_expand: usize,
    what: &str,
) -> Result<(f64, f64)> {
    let f0 = f(start);
    let mut x_prev = start;
    let mut f_prev = f0;
    for _ in 0..max_expand {
        let x = x_prev + step;
        let fx = f(x);
        if f_prev * fx <= 0.0 {
            return Ok((x_prev.min(x), x_prev.max(x)));
        }
        x_prev = x;
        f_prev = fx;
        step *= 1.6;
    }
    Err(Error::Bracket {
        what: what.into(),
        detail: format!("no sign change within {max_expand} expansions from {start}"),
    })
}

/// Golden-section maximization of f on [a, b]; returns (x_max, f_max).
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, xtol: f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    const INVPHI2: f64 = 1.0 - INVPHI;
    let (mut a, mut b) = (a, b);
    let mut h = b - a;
    let mut c = a + INVPHI2 * h;
    let mut d = a + INVPHI * h;
    let mut fc = f(c);
    let mut fd = f(d);
    while h.abs() > xtol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            h = b - a;
            c = a + INVPHI2 * h;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            h = b - a;
            d = a + INVPHI * h;
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn brent_finds_cos_root() {
        let r = brent(|x: f64| x.cos(), 1.0, 2.0, 1e-14, "cos").unwrap();
        assert_abs_diff_eq!(r, std::f64::consts::FRAC_PI_2, epsilon = 1e-12);
    }

    #[test]
    fn brent_rejects_bad_bracket() {
        assert!(brent(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12, "none").is_err());
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, fx) = golden_max(|x: f64| 3.0 - (x - 0.7) * (x - 0.7), -2.0, 2.0, 1e-10);
        assert_abs_diff_eq!(x, 0.7, epsilon = 1e-7);
        assert_abs_diff_eq!(fx, 3.0, epsilon = 1e-12);
    }
}
