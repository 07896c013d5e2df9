//! Weight and test function families with their transform algebra.
//!
//! The weight w is the family-averaging window; the shipped family is the
//! self-dual gaussian w(x) = e^{-πx²}, for which ŵ, Mw and the derived
//! kernels g(y) = ŵ(4πe y²), ĝ and Mg all have closed or grid-backed forms.
//!
//! Test functions φ come in two families:
//! - `fejer`: φ̂(u) = max(0, 1-|u|/σ), φ(x) = (sin πσx / πx)²/σ. Closed-form
//!   entire extension, but only C⁰ at the kinks and O(x⁻²) decay.
//! - `bump2`: φ̂ = c·(β∗β) with β the classic C^∞ bump on (-σ/2, σ/2), so
//!   φ = c·β̂(x)² ≥ 0 decays superpolynomially. Numeric, grid-backed.
//!
//! Neither family serves both the contour checks (which want an entire φ)
//! and the zero sums (which want fast decay); that is why both ship.

use crate::error::{Error, Result};
use crate::special::filon::filon_uniform;
use crate::special::gamma::ln_gamma;
use crate::special::quadrature::{integrate, Envelope};
use crate::special::transform::{mellin_at, ComplexLineGrid, TransformGrid};
use crate::EULER_GAMMA;
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::{E, PI};
use std::sync::{Arc, Mutex, OnceLock};

// ---------------------------------------------------------------------------
// Weight function
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Gaussian,
}

/// The averaging weight w with its Fourier transform ŵ, Mellin transform Mw
/// and the derived kernels g, ĝ of the J(X) machinery.
#[derive(Debug, Clone)]
pub struct WeightFunction {
    kind: WeightKind,
}

/// 4πe, the argument scaling of g(y) = ŵ(4πe y²).
pub const FOUR_PI_E: f64 = 4.0 * PI * E;

fn pa2() -> f64 {
    PI * FOUR_PI_E * FOUR_PI_E
}

impl WeightFunction {
    pub fn gaussian() -> Self {
        WeightFunction {
            kind: WeightKind::Gaussian,
        }
    }

    /// Parse a CLI weight spec, currently only `gaussian`.
    pub fn make(spec: &str) -> Result<Self> {
        match spec.trim() {
            "gaussian" => Ok(Self::gaussian()),
            other => Err(Error::config(format!("unknown weight kind `{other}`"))),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            WeightKind::Gaussian => "gaussian",
        }
    }

    pub fn w(&self, x: f64) -> f64 {
        (-PI * x * x).exp()
    }

    pub fn w_hat(&self, xi: f64) -> f64 {
        (-PI * xi * xi).exp()
    }

    pub fn w_hat0(&self) -> f64 {
        1.0
    }

    pub fn w_envelope(&self) -> Envelope {
        Envelope::ExpPoly { c: 1.0, a: PI, p: 2.0 }
    }

    /// Mw(s) = ½ π^{-s/2} Γ(s/2).
    pub fn mellin_w(&self, s: Complex64) -> Result<Complex64> {
        Ok(0.5 * (ln_gamma(s / 2.0)? - s / 2.0 * PI.ln()).exp())
    }

    /// Mw′(1)/Mw(1) = ½(ψ(1/2) - log π) = -(γ + log 4π)/2, which also equals
    /// (2/ŵ(0)) ∫₀^∞ w(x) log x dx.
    pub fn mellin_w_logderiv_at_1(&self) -> f64 {
        -(EULER_GAMMA + (4.0 * PI).ln()) / 2.0
    }

    /// g(y) = ŵ(4πe y²) = exp(-π(4πe)² y⁴).
    pub fn g(&self, y: f64) -> f64 {
        (-pa2() * y.powi(4)).exp()
    }

    pub fn g_envelope(&self) -> Envelope {
        Envelope::ExpPoly { c: 1.0, a: pa2(), p: 4.0 }
    }

    /// Mg(s) = ¼ Γ(s/4) (π(4πe)²)^{-s/4}, the closed Mellin transform of the
    /// quartic-exponential g; meromorphic in s, poles at s = 0, -4, -8, …
    pub fn mellin_g(&self, s: Complex64) -> Result<Complex64> {
        Ok(0.25 * (ln_gamma(s / 4.0)? - s / 4.0 * pa2().ln()).exp())
    }

    /// Grid-backed ĝ (built once per process).
    pub fn g_hat(&self, x: f64) -> f64 {
        gaussian_ghat().eval(x)
    }

    pub fn g_hat_grid(&self) -> &'static TransformGrid {
        gaussian_ghat()
    }

    /// Numeric Mellin transform of the grid-backed ĝ; independent of the
    /// closed-form Mg route, which is what the Plancherel check exercises.
    pub fn mellin_g_hat_numeric(&self, s: Complex64, tol: f64) -> Result<(Complex64, f64)> {
        let grid = gaussian_ghat();
        let sup = grid.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        mellin_at(&|x: f64| grid.eval(x), sup, grid.envelope, s, tol)
    }

    /// Mĝ(3/2 + iv) from the cached vertical-line grid (Schwarz-reflected
    /// for v < 0).
    pub fn mellin_g_hat_line32(&self, v: f64) -> Complex64 {
        gaussian_mghat_line32().eval(v)
    }

    pub fn mellin_g_hat_line32_vmax(&self) -> f64 {
        gaussian_mghat_line32().v_max()
    }
}

fn gaussian_ghat() -> &'static TransformGrid {
    static GRID: OnceLock<TransformGrid> = OnceLock::new();
    GRID.get_or_init(build_gaussian_ghat)
}

fn build_gaussian_ghat() -> TransformGrid {
    let a2 = pa2();
    let g = move |y: f64| (-a2 * y.powi(4)).exp();
    let env = Envelope::ExpPoly { c: 1.0, a: a2, p: 4.0 };
    let dx = 0.01;
    let mut values: Vec<f64> = Vec::new();
    let mut consecutive_small = 0usize;
    let mut base = 0usize;
    while consecutive_small < 30 && base < 20_000 {
        let chunk = crate::par::map_fn(512, |i| {
            let xi = (base + i) as f64 * dx;
            crate::special::transform::fourier_at(&g, env, xi, 1e-12)
                .map(|(v, _)| v)
                .unwrap_or(0.0)
        });
        for v in chunk {
            if v.abs() < 2.5e-17 {
                consecutive_small += 1;
            } else {
                consecutive_small = 0;
            }
            values.push(v);
        }
        base += 512;
    }
    // Trim the all-small tail, keep a small pad.
    while values.len() > 64 && values[values.len() - 16..].iter().all(|v| v.abs() < 2.5e-17) {
        values.truncate(values.len() - 8);
    }
    let envelope = fit_exp_poly_envelope(&values, dx, 4.0 / 3.0);
    TransformGrid::from_values(dx, values, envelope)
}

/// Fit a conservative c·e^{-a x^p} envelope to sampled decaying data.
fn fit_exp_poly_envelope(values: &[f64], dx: f64, p: f64) -> Envelope {
    let n = values.len();
    let window_max = |centre: usize| -> f64 {
        let lo = centre.saturating_sub(n / 20);
        let hi = (centre + n / 20).min(n);
        values[lo..hi].iter().fold(0.0f64, |m, v| m.max(v.abs()))
    };
    let i1 = n / 2;
    let i2 = 9 * n / 10;
    let v1 = window_max(i1).max(1e-300);
    let v2 = window_max(i2).max(1e-300);
    let x1 = (i1 as f64 * dx).powf(p);
    let x2 = (i2 as f64 * dx).powf(p);
    let a = ((v1 / v2).ln() / (x2 - x1)).max(1e-6);
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let c = (v1 * (a * x1).exp() * 20.0).max(peak * 2.0);
    Envelope::ExpPoly { c, a, p }
}

fn gaussian_mghat_line32() -> &'static ComplexLineGrid {
    static GRID: OnceLock<ComplexLineGrid> = OnceLock::new();
    GRID.get_or_init(|| {
        let ghat = gaussian_ghat();
        // Sample h(u) = ĝ(e^u) e^{1.5u}; Mĝ(3/2+iv) = ∫ h(u) e^{ivu} du.
        let u_lo = -26.0;
        let u_hi = ghat.x_max().ln();
        let du = 0.001;
        let mut m = ((u_hi - u_lo) / du).ceil() as usize + 1;
        if m % 2 == 0 {
            m += 1;
        }
        let samples: Vec<f64> = crate::par::map_fn(m, |j| {
            let u = u_lo + j as f64 * du;
            ghat.eval(u.exp()) * (1.5 * u).exp()
        });
        // Extend in v until the transform is negligible.
        let dv = 0.01;
        let mut values: Vec<Complex64> = Vec::new();
        let mut consecutive_small = 0usize;
        let mut base = 0usize;
        while consecutive_small < 50 && base < 40_000 {
            let chunk = crate::par::map_fn(1024, |i| {
                let v = (base + i) as f64 * dv;
                filon_uniform(&samples, u_lo, du, Complex64::new(v, 0.0))
            });
            for z in chunk {
                if z.norm() < 1e-15 {
                    consecutive_small += 1;
                } else {
                    consecutive_small = 0;
                }
                values.push(z);
            }
            base += 1024;
        }
        ComplexLineGrid::build_from_values(1.5, dv, values)
    })
}

// ---------------------------------------------------------------------------
// Test function
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestKind {
    Fejer,
    Bump2,
}

/// An even test function φ with compactly supported φ̂ of support radius σ.
#[derive(Debug, Clone)]
pub struct TestFunction {
    kind: TestKind,
    sigma: f64,
    bump: Option<Arc<BumpData>>,
}

/// Half-width of the strip on which the entire extension is evaluated.
pub const PHI_STRIP_HALF_WIDTH: f64 = 5.0;

impl TestFunction {
    pub fn fejer(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::config(format!("sigma must be positive, got {sigma}")));
        }
        Ok(TestFunction {
            kind: TestKind::Fejer,
            sigma,
            bump: None,
        })
    }

    pub fn bump2(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::config(format!("sigma must be positive, got {sigma}")));
        }
        Ok(TestFunction {
            kind: TestKind::Bump2,
            sigma,
            bump: Some(bump_data(sigma)),
        })
    }

    /// Parse a CLI spec `kind:sigma`, e.g. `fejer:1.5` or `bump2:0.8`.
    pub fn make(spec: &str) -> Result<Self> {
        let (kind, sig) = spec
            .split_once(':')
            .ok_or_else(|| Error::config(format!("test function spec `{spec}` is not kind:sigma")))?;
        let sigma: f64 = sig
            .parse()
            .map_err(|_| Error::config(format!("bad sigma in `{spec}`")))?;
        match kind {
            "fejer" => Self::fejer(sigma),
            "bump2" => Self::bump2(sigma),
            other => Err(Error::config(format!("unknown test function kind `{other}`"))),
        }
    }

    pub fn kind(&self) -> TestKind {
        self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            TestKind::Fejer => "fejer",
            TestKind::Bump2 => "bump2",
        }
    }

    pub fn spec_string(&self) -> String {
        format!("{}:{}", self.kind_name(), self.sigma)
    }

    /// Support radius σ = sup(supp φ̂).
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Whether the entire extension is a cheap closed form (Fejér only).
    pub fn has_closed_entire_extension(&self) -> bool {
        self.kind == TestKind::Fejer
    }

    pub fn phi(&self, x: f64) -> f64 {
        match self.kind {
            TestKind::Fejer => {
                let t = PI * self.sigma * x;
                self.sigma * sinc(t) * sinc(t)
            }
            TestKind::Bump2 => {
                let b = self.bump.as_ref().unwrap();
                let bh = b.beta_hat.eval(x);
                b.c * bh * bh
            }
        }
    }

    pub fn phi_hat(&self, u: f64) -> f64 {
        let u = u.abs();
        if u >= self.sigma {
            return 0.0;
        }
        match self.kind {
            TestKind::Fejer => 1.0 - u / self.sigma,
            TestKind::Bump2 => {
                let b = self.bump.as_ref().unwrap();
                b.c * b.beta_conv.eval(u)
            }
        }
    }

    pub fn phi0(&self) -> f64 {
        self.phi(0.0)
    }

    pub fn phi_hat0(&self) -> f64 {
        self.phi_hat(0.0)
    }

    /// The entire extension φ(z) = ∫ φ̂(u) e^{2πiuz} du inside the strip
    /// |Im z| ≤ 5: closed form for Fejér, quadrature for bump2.
    pub fn phi_complex(&self, z: Complex64) -> Result<Complex64> {
        if z.im.abs() > PHI_STRIP_HALF_WIDTH {
            return Err(Error::domain(
                "phi_complex",
                format!("|Im z| = {} exceeds the strip half-width", z.im.abs()),
            ));
        }
        match self.kind {
            TestKind::Fejer => {
                let t = PI * self.sigma * z;
                let s = sinc_c(t);
                Ok(self.sigma * s * s)
            }
            TestKind::Bump2 => {
                let b = self.bump.as_ref().unwrap();
                // 2∫₀^σ φ̂(u) cos(2πuz) du, panels at real-frequency half-periods.
                let omega = 2.0 * PI * z;
                let breaks = crate::special::quadrature::oscillatory_breaks(
                    0.0,
                    self.sigma,
                    2.0 * PI * z.re.abs(),
                    4000,
                );
                let c = b.c;
                let conv = &b.beta_conv;
                let f = |u: f64| 2.0 * c * conv.eval(u) * (omega * u).cos();
                let r = crate::special::quadrature::integrate_panels(&f, &breaks, 1e-11);
                Ok(r.value)
            }
        }
    }

    /// ∫₁^∞ φ̂(u) du (zero when σ ≤ 1).
    pub fn int_phi_hat_above_1(&self) -> f64 {
        if self.sigma <= 1.0 {
            return 0.0;
        }
        match self.kind {
            TestKind::Fejer => {
                let s = self.sigma;
                (s - 1.0) * (s - 1.0) / (2.0 * s)
            }
            TestKind::Bump2 => {
                let r = integrate(&|u: f64| self.phi_hat(u), 1.0, self.sigma, 1e-12);
                r.value
            }
        }
    }

    /// ∫_{-1}^{1} φ̂(u) du.
    pub fn int_phi_hat_sym_1(&self) -> f64 {
        match self.kind {
            TestKind::Fejer => {
                let s = self.sigma;
                if s <= 1.0 {
                    s
                } else {
                    2.0 - 1.0 / s
                }
            }
            TestKind::Bump2 => {
                let hi = self.sigma.min(1.0);
                2.0 * integrate(&|u: f64| self.phi_hat(u), 0.0, hi, 1e-12).value
            }
        }
    }

    /// ∫_ℝ φ̂ = φ(0), computed from the hat side.
    pub fn int_phi_hat_full(&self) -> f64 {
        match self.kind {
            TestKind::Fejer => self.sigma,
            TestKind::Bump2 => 2.0 * integrate(&|u: f64| self.phi_hat(u), 0.0, self.sigma, 1e-12).value,
        }
    }

    /// Envelope dominating |φ| on the real line.
    pub fn phi_envelope(&self) -> Envelope {
        match self.kind {
            TestKind::Fejer => Envelope::Power {
                c: 1.0 / (PI * PI * self.sigma),
                k: 2.0,
            },
            TestKind::Bump2 => self.bump.as_ref().unwrap().phi_envelope,
        }
    }
}

fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        1.0 - t * t / 6.0 + t * t * t * t / 120.0
    } else {
        t.sin() / t
    }
}

fn sinc_c(t: Complex64) -> Complex64 {
    if t.norm() < 1e-4 {
        1.0 - t * t / 6.0 + t * t * t * t / 120.0
    } else {
        t.sin() / t
    }
}

// ---------------------------------------------------------------------------
// bump2 construction, cached per σ
// ---------------------------------------------------------------------------

#[derive(Debug)]
struct BumpData {
    /// Normalization making φ̂(0) = 1.
    c: f64,
    /// (β∗β)(u) on [0, σ].
    beta_conv: TransformGrid,
    /// β̂(x) on [0, x_max].
    beta_hat: TransformGrid,
    phi_envelope: Envelope,
}

fn bump_data(sigma: f64) -> Arc<BumpData> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<BumpData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let map = cache.lock().unwrap();
        if let Some(b) = map.get(&sigma.to_bits()) {
            return Arc::clone(b);
        }
    }
    let built = Arc::new(build_bump_data(sigma));
    cache.lock().unwrap().insert(sigma.to_bits(), Arc::clone(&built));
    built
}

/// β(u) = exp(-1/(1-(2u/σ)²)) on |u| < σ/2.
fn beta_bump(u: f64, sigma: f64) -> f64 {
    let t = 2.0 * u / sigma;
    let d = 1.0 - t * t;
    if d <= 1e-12 {
        0.0
    } else {
        (-1.0 / d).exp()
    }
}

fn build_bump_data(sigma: f64) -> BumpData {
    // (β∗β)(u) = ∫ β(v)β(u-v) dv over the overlap [u-σ/2, σ/2].
    let n_conv = 4001usize;
    let du_conv = sigma / (n_conv - 1) as f64;
    let conv_vals = crate::par::map_fn(n_conv, |i| {
        let u = i as f64 * du_conv;
        let lo = u - sigma / 2.0;
        let hi = sigma / 2.0;
        if lo >= hi {
            return 0.0;
        }
        integrate(&|v: f64| beta_bump(v, sigma) * beta_bump(u - v, sigma), lo, hi, 1e-14).value
    });
    let c = 1.0 / conv_vals[0];
    let beta_conv = TransformGrid::from_values(
        du_conv,
        conv_vals,
        Envelope::Power { c: 1e-300, k: 2.0 },
    );

    // β̂ via Filon over uniformly sampled β on [0, σ/2].
    let m = 3201usize;
    let du = (sigma / 2.0) / (m - 1) as f64;
    let beta_samples: Vec<f64> = (0..m).map(|j| beta_bump(j as f64 * du, sigma)).collect();
    let beta_hat_at = move |x: f64| {
        2.0 * filon_uniform(&beta_samples, 0.0, du, Complex64::new(2.0 * PI * x, 0.0)).re
    };
    let dx = 0.008 / sigma.max(0.5);
    let mut values: Vec<f64> = Vec::new();
    let mut consecutive_small = 0usize;
    let mut base = 0usize;
    // φ = c β̂² drops below 1e-16 φ(0) once |β̂| ≲ 1e-9, with margin.
    let cutoff = 3e-10 / c.sqrt();
    while consecutive_small < 60 && base < 120_000 {
        let chunk = crate::par::map_fn(2048, |i| beta_hat_at((base + i) as f64 * dx));
        for v in chunk {
            if v.abs() < cutoff {
                consecutive_small += 1;
            } else {
                consecutive_small = 0;
            }
            values.push(v);
        }
        base += 2048;
    }
    let beta_env = fit_exp_poly_envelope(&values, dx, 0.5);
    let (bc, ba) = match beta_env {
        Envelope::ExpPoly { c, a, .. } => (c, a),
        _ => unreachable!(),
    };
    // |φ| = c|β̂|² ≤ c·(bc e^{-ba√x})².
    let phi_envelope = Envelope::ExpPoly {
        c: c * bc * bc,
        a: 2.0 * ba,
        p: 0.5,
    };
    let beta_hat = TransformGrid::from_values(dx, values, beta_env);
    BumpData {
        c,
        beta_conv,
        beta_hat,
        phi_envelope,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gaussian_weight_basics() {
        let w = WeightFunction::gaussian();
        assert_eq!(w.w_hat0(), 1.0);
        assert_abs_diff_eq!(w.w(0.5), (-PI * 0.25).exp(), epsilon = 1e-15);
        // Mw(1) = ŵ(0)/2.
        let m1 = w.mellin_w(Complex64::new(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(m1.re, 0.5, epsilon = 1e-13);
        // Mw(2) = 1/(2π).
        let m2 = w.mellin_w(Complex64::new(2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(m2.re, 0.5 / PI, epsilon = 1e-13);
    }

    #[test]
    fn gaussian_log_moment_three_ways() {
        let w = WeightFunction::gaussian();
        let closed = w.mellin_w_logderiv_at_1();
        assert_abs_diff_eq!(closed, -1.554_119_955_935_411_7, epsilon = 1e-12);
        // Numeric Mellin differentiation.
        let h = 1e-6;
        let mp = w.mellin_w(Complex64::new(1.0 + h, 0.0)).unwrap().re;
        let mm = w.mellin_w(Complex64::new(1.0 - h, 0.0)).unwrap().re;
        let m0 = w.mellin_w(Complex64::new(1.0, 0.0)).unwrap().re;
        assert_abs_diff_eq!((mp - mm) / (2.0 * h) / m0, closed, epsilon = 1e-7);
        // Quadrature of (2/ŵ(0)) ∫ w log x.
        let q = integrate(&|x: f64| w.w(x) * x.ln(), 1e-12, 8.0, 1e-12).value;
        assert_abs_diff_eq!(2.0 * q, closed, epsilon = 1e-9);
    }

    #[test]
    fn ghat_grid_and_mellin_g() {
        let w = WeightFunction::gaussian();
        // ĝ(0) = 2 Mg(1) = 2·¼Γ(1/4)(πa²)^{-1/4}.
        let mg1 = w.mellin_g(Complex64::new(1.0, 0.0)).unwrap().re;
        assert_abs_diff_eq!(w.g_hat(0.0), 2.0 * mg1, epsilon = 1e-9);
        // ∫ℝ ĝ = g(0) = 1 — check via Mĝ(1) numerically.
        let (mghat1, _) = w
            .mellin_g_hat_numeric(Complex64::new(1.0, 0.0), 1e-9)
            .unwrap();
        assert_abs_diff_eq!(mghat1.re, 0.5, epsilon = 1e-7);
        // Envelope dominates the sampled tail.
        assert!(w.g_hat_grid().envelope_dominates());
    }

    #[test]
    fn mellin_ghat_line_matches_pointwise() {
        let w = WeightFunction::gaussian();
        for v in [0.0, 0.37, 2.0, 7.3] {
            let line = w.mellin_g_hat_line32(v);
            let (direct, _) = w
                .mellin_g_hat_numeric(Complex64::new(1.5, v), 1e-10)
                .unwrap();
            assert!(
                (line - direct).norm() < 1e-7,
                "v = {v}: line {line}, direct {direct}"
            );
        }
    }

    #[test]
    fn fejer_basics() {
        let phi = TestFunction::fejer(1.5).unwrap();
        assert_abs_diff_eq!(phi.phi0(), 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(phi.phi_hat(0.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(phi.int_phi_hat_above_1(), 1.0 / 12.0, epsilon = 1e-15);
        assert_abs_diff_eq!(phi.int_phi_hat_sym_1(), 2.0 - 2.0 / 3.0, epsilon = 1e-15);
        // Support endpoints.
        assert_eq!(phi.phi_hat(1.5 * (1.0 + 1e-6)), 0.0);
        assert!(phi.phi_hat(1.5 * (1.0 - 1e-3)) > 0.0);
    }

    #[test]
    fn fejer_entire_extension() {
        let phi = TestFunction::fejer(1.0).unwrap();
        // φ(i) = (sinh π / π)².
        let v = phi.phi_complex(Complex64::new(0.0, 1.0)).unwrap();
        let expect = (PI.sinh() / PI).powi(2);
        assert_abs_diff_eq!(v.re, expect, epsilon = 1e-10);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-12);
        // Agreement with the real evaluator.
        for x in [0.0, 0.3, 2.7] {
            let z = phi.phi_complex(Complex64::new(x, 0.0)).unwrap();
            assert!((z.re - phi.phi(x)).abs() < 1e-12);
        }
        // Conjugate symmetry at a few points.
        for z in [Complex64::new(0.4, 0.8), Complex64::new(-1.2, 2.0)] {
            let a = phi.phi_complex(z).unwrap();
            let b = phi.phi_complex(z.conj()).unwrap();
            assert!((a.conj() - b).norm() < 1e-12);
        }
        // Strip guard.
        assert!(phi.phi_complex(Complex64::new(0.0, 6.0)).is_err());
    }

    #[test]
    fn bump2_construction_invariants() {
        let phi = TestFunction::bump2(0.8).unwrap();
        assert_abs_diff_eq!(phi.phi_hat(0.0), 1.0, epsilon = 1e-12);
        // ∫φ̂ = φ(0).
        assert!(
            (phi.int_phi_hat_full() - phi.phi0()).abs() < 1e-8,
            "∫φ̂ = {}, φ(0) = {}",
            phi.int_phi_hat_full(),
            phi.phi0()
        );
        // Nonnegativity on a grid.
        for i in 0..400 {
            let x = i as f64 * 0.25;
            assert!(phi.phi(x) >= -1e-15, "x = {x}");
        }
        // Support: exact zero just outside, positive not too far inside.
        assert_eq!(phi.phi_hat(0.8 * (1.0 + 1e-6)), 0.0);
        assert!(phi.phi_hat(0.8 * 0.95) > 0.0);
        // Superpolynomial decay proxy.
        let mut worst = 0.0f64;
        for i in 0..1000 {
            let x = 0.1 * i as f64;
            worst = worst.max(phi.phi(x).abs() * (1.0 + x * x).powi(5));
        }
        assert!(worst.is_finite() && worst < 1e7, "decay proxy {worst}");
        // and the far end has genuinely superpolynomial falloff
        assert!(phi.phi(95.0).abs() < 1e-12);
        // Envelope really dominates.
        for i in 0..500 {
            let x = 0.2 * i as f64;
            assert!(phi.phi(x).abs() <= phi.phi_envelope().value(x) + 1e-300);
        }
    }

    #[test]
    fn bump2_phi_complex_consistent_on_reals() {
        let phi = TestFunction::bump2(0.8).unwrap();
        for x in [0.0, 0.7, 3.0] {
            let z = phi.phi_complex(Complex64::new(x, 0.0)).unwrap();
            assert!(
                (z.re - phi.phi(x)).abs() < 1e-8,
                "x = {x}: {} vs {}",
                z.re,
                phi.phi(x)
            );
            assert!(z.im.abs() < 1e-10);
        }
    }

    #[test]
    fn fourier_inversion_scaled() {
        // (1/2π)∫ φ(tL/2π) dt = φ̂(0)/L for L ∈ {10, 20}.
        for l in [10.0, 20.0] {
            for phi in [TestFunction::fejer(1.2).unwrap(), TestFunction::bump2(0.8).unwrap()] {
                let env = phi.phi_envelope();
                let u_max = match phi.kind() {
                    TestKind::Fejer => 2.0e7,
                    TestKind::Bump2 => env.cutoff(1e-13).max(10.0),
                };
                // Integrate in u = tL/2π: (1/L)∫ φ(u) du.
                let r = integrate(&|u: f64| phi.phi(u), 0.0, u_max.min(400.0), 1e-10);
                let mut total = 2.0 * r.value / l;
                if phi.kind() == TestKind::Fejer {
                    // 1/x² tail beyond the numeric range: ∫ φ ≈ mean value.
                    let tail = integrate(&|v: f64| phi.phi(1.0 / v) / (v * v), 1.0 / u_max, 1.0 / 400.0, 1e-10);
                    total += 2.0 * tail.value / l;
                }
                let expect = phi.phi_hat0() / l;
                assert!(
                    (total - expect).abs() < 2e-7,
                    "{} L={l}: {} vs {}",
                    phi.kind_name(),
                    total,
                    expect
                );
            }
        }
    }
}
