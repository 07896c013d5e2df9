//! Numeric Fourier and Mellin transforms for Schwartz-class even functions,
//! plus sampled-grid backends with cubic interpolation.
//!
//! Conventions: f̂(ξ) = ∫ f(x) e^{-2πixξ} dx and M f(s) = ∫₀^∞ f(x) x^{s-1} dx.

use super::quadrature::{integrate_panels, oscillatory_breaks, Envelope};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Uniformly sampled even function on [0, x_max] with a decay envelope that
/// dominates |f| past the grid. Evaluation is 4-point cubic interpolation;
/// beyond the grid the value is 0 and the envelope bounds the neglect.
#[derive(Debug, Clone)]
pub struct TransformGrid {
    dx: f64,
    values: Vec<f64>,
    pub envelope: Envelope,
}

impl TransformGrid {
    /// Sample `f` on 0, dx, 2dx, … until `n` nodes are stored.
    pub fn build(f: impl Fn(f64) -> f64 + Sync, dx: f64, n: usize, envelope: Envelope) -> Self {
        let values = crate::par::map_fn(n, |i| f(i as f64 * dx));
        TransformGrid { dx, values, envelope }
    }

    pub fn from_values(dx: f64, values: Vec<f64>, envelope: Envelope) -> Self {
        TransformGrid { dx, values, envelope }
    }

    pub fn x_max(&self) -> f64 {
        (self.values.len().saturating_sub(1)) as f64 * self.dx
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Cubic-interpolated evaluation of the even extension.
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.abs();
        let n = self.values.len();
        let t = x / self.dx;
        let i = t.floor() as usize;
        if i + 1 >= n {
            return 0.0;
        }
        // 4-point stencil centred on [i, i+1]; even reflection at the left end.
        let u = t - i as f64;
        let ym = if i == 0 { self.values[1] } else { self.values[i - 1] };
        let y0 = self.values[i];
        let y1 = self.values[i + 1];
        let y2 = if i + 2 < n { self.values[i + 2] } else { 0.0 };
        // Cubic through the four points (Lagrange form on -1,0,1,2).
        let a = -ym / 6.0 + y0 / 2.0 - y1 / 2.0 + y2 / 6.0;
        let b = ym / 2.0 - y0 + y1 / 2.0;
        let c = -ym / 3.0 - y0 / 2.0 + y1 - y2 / 6.0;
        ((a * u + b) * u + c) * u + y0
    }

    /// Check that the envelope dominates |f| on the sampled outer half.
    pub fn envelope_dominates(&self) -> bool {
        let n = self.values.len();
        (n / 2..n).all(|i| self.values[i].abs() <= self.envelope.value(i as f64 * self.dx) * (1.0 + 1e-9) + 1e-300)
    }
}

/// Complex samples along a vertical line s = re + iv, v ≥ 0, uniform in v.
/// Values at v < 0 come from the Schwarz reflection conj(f(v̄)), valid for
/// transforms of real functions.
#[derive(Debug, Clone)]
pub struct ComplexLineGrid {
    pub re: f64,
    dv: f64,
    values: Vec<Complex64>,
}

impl ComplexLineGrid {
    pub fn build(re: f64, dv: f64, n: usize, f: impl Fn(f64) -> Complex64 + Sync) -> Self {
        let values = crate::par::map_fn(n, |i| f(i as f64 * dv));
        ComplexLineGrid { re, dv, values }
    }

    pub fn build_from_values(re: f64, dv: f64, values: Vec<Complex64>) -> Self {
        ComplexLineGrid { re, dv, values }
    }

    pub fn v_max(&self) -> f64 {
        (self.values.len().saturating_sub(1)) as f64 * self.dv
    }

    pub fn eval(&self, v: f64) -> Complex64 {
        let vv = v.abs();
        let n = self.values.len();
        let t = vv / self.dv;
        let i = t.floor() as usize;
        if i + 1 >= n {
            return Complex64::new(0.0, 0.0);
        }
        let u = t - i as f64;
        let ym = if i == 0 { self.values[1].conj() } else { self.values[i - 1] };
        let y0 = self.values[i];
        let y1 = self.values[i + 1];
        let y2 = if i + 2 < n { self.values[i + 2] } else { Complex64::new(0.0, 0.0) };
        let a = (-ym + 3.0 * y0 - 3.0 * y1 + y2).scale_c(1.0 / 6.0);
        let b = (ym - 2.0 * y0 + y1).scale_c(0.5);
        let c = (-2.0 * ym - 3.0 * y0 + 6.0 * y1 - y2).scale_c(1.0 / 6.0);
        let val = ((a * u + b) * u + c) * u + y0;
        if v < 0.0 {
            val.conj()
        } else {
            val
        }
    }
}

trait ScaleC {
    fn scale_c(self, c: f64) -> Self;
}
impl ScaleC for Complex64 {
    fn scale_c(self, c: f64) -> Self {
        self * c
    }
}

/// Fourier transform f̂(ξ) of an even, absolutely integrable f, as
/// 2∫₀^∞ f(x) cos(2πξx) dx with panels at half-periods. Returns the value
/// and an error bound (quadrature + envelope tail).
pub fn fourier_at(
    f: &(impl Fn(f64) -> f64 + ?Sized),
    envelope: Envelope,
    xi: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let x_max = envelope.cutoff(tol * 1e-3).max(1.0);
    let tail = envelope.tail(x_max) * 2.0;
    let omega = 2.0 * std::f64::consts::PI * xi.abs();
    let breaks = oscillatory_breaks(0.0, x_max, omega, 20_000);
    let g = |x: f64| 2.0 * f(x) * (omega * x).cos();
    let r = integrate_panels(&g, &breaks, tol * 0.5);
    let err = r.error + tail;
    if err > tol * 40.0 {
        return Err(Error::Accuracy {
            op: "fourier_at",
            requested: tol,
            achieved: err,
        });
    }
    Ok((r.value, err))
}

/// Mellin transform ∫₀^∞ f(x) x^{s-1} dx by the substitution x = e^u.
///
/// `sup_near_zero` bounds |f| on (0, 1]; `envelope` bounds |f| at infinity.
/// The strip of absolute convergence must contain Re s, which for a bounded
/// f with the given envelope means Re s > 0.
pub fn mellin_at(
    f: &(impl Fn(f64) -> f64 + ?Sized),
    sup_near_zero: f64,
    envelope: Envelope,
    s: Complex64,
    tol: f64,
) -> Result<(Complex64, f64)> {
    if s.re <= 0.0 {
        return Err(Error::domain(
            "mellin_at",
            format!("Re s = {} outside the convergence strip", s.re),
        ));
    }
    // Lower cutoff: |∫_{-∞}^{u0} f(e^u) e^{su} du| ≤ sup·e^{σ u0}/σ.
    let sigma = s.re;
    let u0 = ((tol * 1e-3 * sigma / sup_near_zero.max(1e-300)).ln() / sigma).min(-1.0);
    let tail0 = sup_near_zero * (sigma * u0).exp() / sigma;
    // Upper cutoff from the envelope: |f(x)x^{s-1}| ≤ env(x)·x^{σ-1}.
    let mut x1 = envelope.cutoff(tol * 1e-3).max(2.0);
    while envelope.value(x1) * x1.powf(sigma - 1.0) * x1 > tol * 1e-2 {
        x1 *= 1.3;
        if x1 > 1e12 {
            break;
        }
    }
    let u1 = x1.ln();
    let tail1 = envelope.value(x1) * x1.powf(sigma) / 1.0; // one-slab bound past x1
    let g = |u: f64| Complex64::from_polar((s.re * u).exp() * f(u.exp()), s.im * u);
    let breaks = oscillatory_breaks(u0, u1, s.im.abs(), 20_000);
    let r = integrate_panels(&g, &breaks, tol * 0.5);
    let err = r.error + tail0 + tail1;
    if err > tol * 40.0 {
        return Err(Error::Accuracy {
            op: "mellin_at",
            requested: tol,
            achieved: err,
        });
    }
    Ok((r.value, err))
}

/// Analytic continuation of the Mellin transform into -q < Re s < 0 for an f
/// with f(x) = f0 + O(x^q) near 0:
///
///   M f(s) = ∫₀^1 (f - f0) x^{s-1} dx + f0/s + ∫₁^∞ f x^{s-1} dx.
///
/// The caller supplies `f_minus_f0` directly (e.g. via `expm1`): forming the
/// difference here would lose ~1e-16 absolutely, which x^{s-1} amplifies
/// without bound as x → 0. Agrees with `mellin_at` on 0 < Re s.
pub fn mellin_continued_at(
    f_minus_f0: &(impl Fn(f64) -> f64 + ?Sized),
    f0: f64,
    vanish_order: f64,
    envelope: Envelope,
    s: Complex64,
    tol: f64,
) -> Result<(Complex64, f64)> {
    if s.re <= -vanish_order || s.norm() < 1e-14 {
        return Err(Error::domain(
            "mellin_continued_at",
            "Re s must exceed the vanishing order, s ≠ 0",
        ));
    }
    let sigma = s.re;
    // ∫₀^1 (f - f0) x^{s-1} dx in log coordinates; integrand decays like
    // e^{(q+σ)u} as u → -∞.
    let rate = vanish_order + sigma;
    let u0 = (((tol * 1e-3) * rate).ln() / rate).min(-1.0);
    let tail0 = (rate * u0).exp() / rate;
    let g0 = |u: f64| {
        let x = u.exp();
        Complex64::from_polar(f_minus_f0(x) * (sigma * u).exp(), s.im * u)
    };
    let breaks0 = oscillatory_breaks(u0, 0.0, s.im.abs(), 10_000);
    let r0 = integrate_panels(&g0, &breaks0, tol * 0.25);

    let mut x1 = envelope.cutoff(tol * 1e-3).max(2.0);
    while envelope.value(x1) * x1.powf(sigma) > tol * 1e-2 {
        x1 *= 1.3;
        if x1 > 1e12 {
            break;
        }
    }
    let u1 = x1.ln();
    let g1 = |u: f64| {
        let x = u.exp();
        Complex64::from_polar((f_minus_f0(x) + f0) * (sigma * u).exp(), s.im * u)
    };
    let breaks1 = oscillatory_breaks(0.0, u1, s.im.abs(), 10_000);
    let r1 = integrate_panels(&g1, &breaks1, tol * 0.25);
    let tail1 = envelope.value(x1) * x1.powf(sigma);

    let value = r0.value + r1.value + f0 / s;
    let err = r0.error + r1.error + tail0 + tail1;
    if err > tol * 40.0 {
        return Err(Error::Accuracy {
            op: "mellin_continued_at",
            requested: tol,
            achieved: err,
        });
    }
    Ok((value, err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn gaussian_env() -> Envelope {
        Envelope::ExpPoly {
            c: 1.0,
            a: std::f64::consts::PI,
            p: 2.0,
        }
    }

    #[test]
    fn fourier_gaussian_self_dual() {
        let w = |x: f64| (-std::f64::consts::PI * x * x).exp();
        let (v0, e0) = fourier_at(&w, gaussian_env(), 0.0, 1e-11).unwrap();
        assert_abs_diff_eq!(v0, 1.0, epsilon = 1e-10);
        assert!(e0 < 1e-9);
        let (v1, _) = fourier_at(&w, gaussian_env(), 1.0, 1e-11).unwrap();
        assert_abs_diff_eq!(v1, (-std::f64::consts::PI).exp(), epsilon = 1e-10);
        let (v2, _) = fourier_at(&w, gaussian_env(), 2.5, 1e-11).unwrap();
        assert_abs_diff_eq!(v2, (-std::f64::consts::PI * 6.25).exp(), epsilon = 1e-10);
    }

    #[test]
    fn fourier_applied_twice_is_identity_for_gaussian() {
        let w = |x: f64| (-std::f64::consts::PI * x * x).exp();
        // Sample the transform on a grid, then transform back pointwise.
        let grid = TransformGrid::build(
            |xi| fourier_at(&w, gaussian_env(), xi, 1e-11).unwrap().0,
            0.004,
            2001,
            gaussian_env(),
        );
        for x in [0.0, 0.5, 1.0, 2.0, 3.0] {
            let (back, _) =
                fourier_at(&|t: f64| grid.eval(t), gaussian_env(), x, 1e-9).unwrap();
            assert!((back - w(x)).abs() < 1e-8, "x = {x}");
        }
    }

    #[test]
    fn mellin_gaussian_and_exponential() {
        let w = |x: f64| (-std::f64::consts::PI * x * x).exp();
        // M w(1) = ŵ(0)/2 = 1/2.
        let (v, _) = mellin_at(&w, 1.0, gaussian_env(), Complex64::new(1.0, 0.0), 1e-11).unwrap();
        assert_abs_diff_eq!(v.re, 0.5, epsilon = 1e-10);
        // M w(2) = 1/(2π).
        let (v, _) = mellin_at(&w, 1.0, gaussian_env(), Complex64::new(2.0, 0.0), 1e-11).unwrap();
        assert_abs_diff_eq!(v.re, 0.5 / std::f64::consts::PI, epsilon = 1e-10);
        // f = e^{-x}: M f(3) = Γ(3) = 2.
        let e = |x: f64| (-x).exp();
        let env = Envelope::ExpPoly { c: 1.0, a: 1.0, p: 1.0 };
        let (v, _) = mellin_at(&e, 1.0, env, Complex64::new(3.0, 0.0), 1e-11).unwrap();
        assert_abs_diff_eq!(v.re, 2.0, epsilon = 1e-9);
        // Outside the strip.
        assert!(mellin_at(&e, 1.0, env, Complex64::new(-0.5, 0.0), 1e-10).is_err());
    }

    #[test]
    fn mellin_continued_matches_gamma() {
        // For f = e^{-x}: M f(s) = Γ(s), continued to -1 < Re s < 0.
        let em1 = |x: f64| (-x).exp_m1();
        let env = Envelope::ExpPoly { c: 1.0, a: 1.0, p: 1.0 };
        let s = Complex64::new(-0.5, 0.0);
        let (v, _) = mellin_continued_at(&em1, 1.0, 1.0, env, s, 1e-10).unwrap();
        // Γ(-1/2) = -2√π
        assert_abs_diff_eq!(v.re, -2.0 * std::f64::consts::PI.sqrt(), epsilon = 1e-8);
        // And it agrees with the plain transform inside the strip.
        let s = Complex64::new(0.7, 0.4);
        let (a, _) = mellin_continued_at(&em1, 1.0, 1.0, env, s, 1e-10).unwrap();
        let e = |x: f64| (-x).exp();
        let (b, _) = mellin_at(&e, 1.0, env, s, 1e-10).unwrap();
        assert!((a - b).norm() < 1e-8);
    }

    #[test]
    fn grid_interpolation_accuracy() {
        let g = TransformGrid::build(|x| (x * 1.7).cos(), 0.01, 1001, Envelope::Power { c: 1.0, k: 2.0 });
        for x in [0.003, 0.5004, 3.14159, 9.2] {
            // 4-point cubic: |err| ≤ h⁴ max|f⁗| · max|u(u²-1)(u-2)|/4! ≈ 2e-9 here.
            assert!((g.eval(x) - (x * 1.7).cos()).abs() < 4e-9, "x = {x}");
        }
        // Even extension.
        assert_eq!(g.eval(-2.0), g.eval(2.0));
    }

    #[test]
    fn line_grid_reflection() {
        let lg = ComplexLineGrid::build(1.5, 0.05, 200, |v| {
            Complex64::new((v * 0.3).cos(), (v * 0.7).sin())
        });
        let a = lg.eval(1.234);
        let b = lg.eval(-1.234);
        assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-12);
        assert_abs_diff_eq!(a.im, -b.im, epsilon = 1e-12);
        assert!((a.re - (1.234f64 * 0.3).cos()).abs() < 1e-6);
    }
}
