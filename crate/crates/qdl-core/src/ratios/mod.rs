//! The ratios-conjecture side: the arithmetic factor A(α,γ) and its diagonal
//! α-derivative, the functional-equation factor X_d(s), the conjectured
//! average of L′/L over the family, weighted family averages over d, and the
//! prediction integral for the 1-level density.

mod predict;

pub use predict::{predict_density, predict_density_detour, predict_density_opts, PredictOptions};

use crate::arith;
use crate::error::{Error, Result};
use crate::special::gamma::{digamma, gamma_ratio};
use crate::special::zeta::{prime_zeta, prime_zeta_deriv, zeta, zeta_logderiv};
use crate::testfn::WeightFunction;
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

/// Margin below which evaluation refuses to approach the |Re| = 1/4 boundary
/// of absolute convergence.
const QUARTER_MARGIN: f64 = 1e-3;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// ---------------------------------------------------------------------------
// Shift pair and family parameters
// ---------------------------------------------------------------------------

/// A pair of ratios-conjecture shifts (α, γ).
#[derive(Debug, Clone, Copy)]
pub struct ShiftPair {
    pub alpha: Complex64,
    /// Named to avoid collision with Euler's constant.
    pub gamma_shift: Complex64,
}

impl ShiftPair {
    pub fn new(alpha: Complex64, gamma_shift: Complex64) -> Result<Self> {
        if alpha.re.abs() >= 0.25 || gamma_shift.re >= 0.25 {
            return Err(Error::domain(
                "ShiftPair",
                format!("need |Re α| < 1/4 and Re γ < 1/4, got α = {alpha}, γ = {gamma_shift}"),
            ));
        }
        Ok(ShiftPair { alpha, gamma_shift })
    }

    /// Diagonal value r when α = γ.
    pub fn diagonal(&self) -> Option<Complex64> {
        if (self.alpha - self.gamma_shift).norm() < 1e-14 {
            Some(self.alpha)
        } else {
            None
        }
    }
}

/// Scale parameters of one family run.
#[derive(Debug, Clone, Copy)]
pub struct FamilyParams {
    /// Family scale X.
    pub x: f64,
    /// L = log(X/2πe).
    pub l: f64,
    /// Enumeration bound: |d| beyond which w(d/X) < 1e-16.
    pub d_cutoff: u64,
    /// Contour abscissa with 1/log X < c′ < 1/4, when that window is
    /// nonempty (X > e⁴); contour ops require it.
    pub c_prime: Option<f64>,
}

impl FamilyParams {
    pub fn new(x: f64, w: &WeightFunction) -> Result<Self> {
        let l = (x / (2.0 * PI * std::f64::consts::E)).ln();
        if !(l > 0.0) {
            return Err(Error::domain(
                "FamilyParams",
                format!("X = {x} gives L = log(X/2πe) ≤ 0"),
            ));
        }
        let d_cutoff = (x * w.w_envelope().cutoff(1e-16)).ceil() as u64;
        let ln_x = x.ln();
        let c_prime = if ln_x > 4.2 {
            Some((1.2 / ln_x).max(0.1).min(0.24))
        } else {
            None
        };
        Ok(FamilyParams { x, l, d_cutoff, c_prime })
    }

    pub fn with_c_prime(mut self, c_prime: f64) -> Result<Self> {
        if !(c_prime > 1.0 / self.x.ln() && c_prime < 0.25) {
            return Err(Error::domain(
                "FamilyParams",
                format!("c′ = {c_prime} outside (1/log X, 1/4)"),
            ));
        }
        self.c_prime = Some(c_prime);
        Ok(self)
    }

    pub fn require_c_prime(&self) -> Result<f64> {
        self.c_prime.ok_or_else(|| {
            Error::domain("FamilyParams", "no admissible contour abscissa (X too small)")
        })
    }
}

// ---------------------------------------------------------------------------
// Prime table
// ---------------------------------------------------------------------------

/// Primes up to the Euler-product truncation with cached logarithms.
#[derive(Debug)]
pub struct PrimeTable {
    /// All primes ≤ bound, as f64.
    pub p: Vec<f64>,
    /// ln p, aligned with `p`.
    pub ln_p: Vec<f64>,
    pub bound: f64,
}

impl PrimeTable {
    pub fn build(bound: u64) -> Result<Self> {
        let primes = arith::primes_upto(bound)?;
        let p: Vec<f64> = primes.iter().map(|&q| q as f64).collect();
        let ln_p: Vec<f64> = p.iter().map(|&q| q.ln()).collect();
        Ok(PrimeTable { p, ln_p, bound: bound as f64 })
    }
}

/// Default Euler-product truncation P = 10⁶; tails are completed by
/// prime-zeta corrections with the remainder bounded analytically.
pub fn default_primes() -> &'static PrimeTable {
    static TABLE: OnceLock<PrimeTable> = OnceLock::new();
    TABLE.get_or_init(|| PrimeTable::build(1_000_000).expect("default prime table"))
}

/// Σ_{p>P} p^{-s} over the primes missing from the table.
///
/// `partial` must be Σ_{p≤P} p^{-s} for the same s.
fn prime_tail(s: Complex64, partial: Complex64) -> Result<Complex64> {
    Ok(prime_zeta(s)? - partial)
}

/// Σ_{p>P} p^{-s} bounded in absolute value, for real exponent ≥ the real
/// part of every neglected term.
fn prime_tail_real_bound(sigma: f64, primes: &PrimeTable) -> f64 {
    // Chebyshev-style: Σ_{p>P} p^{-σ} ≤ (1 + ε) P^{1-σ} σ/((σ-1) ln P).
    let p = primes.bound;
    1.05 * p.powf(1.0 - sigma) * sigma / ((sigma - 1.0) * p.ln())
}

// ---------------------------------------------------------------------------
// A(α, γ) and its diagonal derivative
// ---------------------------------------------------------------------------

fn check_a_domain(alpha: Complex64, gamma_shift: Complex64) -> Result<()> {
    if alpha.re <= -0.25 + QUARTER_MARGIN || gamma_shift.re <= -0.25 + QUARTER_MARGIN {
        return Err(Error::domain(
            "A",
            format!("Re shifts must exceed -1/4 + {QUARTER_MARGIN}: α = {alpha}, γ = {gamma_shift}"),
        ));
    }
    Ok(())
}

/// The arithmetic factor A(α,γ): 2-adic prefactor times the Euler product
/// over odd p of
///
///   (1 - p^{-1-α-γ})^{-1} (1 - 1/((p+1)p^{1+2α}) - 1/((p+1)p^{α+γ}))
///     = 1 + (p^{-1-α-γ} - p^{-1-2α}) / ((p+1)(1 - p^{-1-α-γ})),
///
/// truncated at the table bound with two orders of prime-zeta tail
/// completion. Returns (value, remaining tail bound). The rewritten local
/// factor makes A(r,r) = 1 exact at every truncation.
pub fn a_ratio_bounded(
    alpha: Complex64,
    gamma_shift: Complex64,
    primes: &PrimeTable,
    complete_complex_tails: bool,
) -> Result<(Complex64, f64)> {
    check_a_domain(alpha, gamma_shift)?;
    let two = 2.0f64;
    let e_ag = -(1.0 + alpha + gamma_shift); // exponent of u
    let e_2a = -(1.0 + 2.0 * alpha); // exponent of v
    // 2-adic prefactor (2^{1+α+γ} - 2^{γ-α})/(2^{1+α+γ} - 1).
    let p2 = ((1.0 + alpha + gamma_shift) * two.ln()).exp();
    let q2 = ((gamma_shift - alpha) * two.ln()).exp();
    let prefactor = (p2 - q2) / (p2 - 1.0);

    let n = primes.p.len();
    let chunk = 4096;
    let n_chunks = n.div_ceil(chunk);
    // Per-chunk: partial product and the six partial sums feeding the tails.
    #[derive(Clone, Copy)]
    struct Partial {
        prod: Complex64,
        s: [Complex64; 6],
    }
    let parts: Vec<Partial> = crate::par::map_fn(n_chunks, |ci| {
        let lo = ci * chunk;
        let hi = ((ci + 1) * chunk).min(n);
        let mut prod = c64(1.0, 0.0);
        let mut s = [c64(0.0, 0.0); 6];
        for i in lo..hi {
            let p = primes.p[i];
            if p < 2.5 {
                continue; // odd primes only
            }
            let lp = primes.ln_p[i];
            let u = (e_ag * lp).exp();
            let v = (e_2a * lp).exp();
            let invp = 1.0 / p;
            prod *= 1.0 + (u - v) / ((p + 1.0) * (1.0 - u));
            // Partial sums matching the tail exponents below.
            s[0] += u * invp; // p^{-2-α-γ}
            s[1] += v * invp; // p^{-2-2α}
            s[2] += u * u * invp; // p^{-3-2α-2γ}
            s[3] += u * v * invp; // p^{-3-3α-γ}
            s[4] += u * invp * invp; // p^{-3-α-γ}
            s[5] += v * invp * invp; // p^{-3-2α}
        }
        Partial { prod, s }
    });
    let mut product = c64(1.0, 0.0);
    for part in &parts {
        product *= part.prod;
    }
    let sum_at = |k: usize| {
        let vals: Vec<Complex64> = parts.iter().map(|q| q.s[k]).collect();
        crate::par::tree_sum_c(&vals)
    };

    // log-tail = Σ_{p>P} [ (u-v)p^{-1} + (u-v)(u p^{-1} - p^{-2}) + O(p^{-4-·}) ].
    let mut log_tail = c64(0.0, 0.0);
    let mut bound = 0.0;
    let exps = [
        (2.0 + alpha + gamma_shift, sum_at(0), 1.0),
        (2.0 + 2.0 * alpha, sum_at(1), -1.0),
        (3.0 + 2.0 * (alpha + gamma_shift), sum_at(2), 1.0),
        (3.0 + 3.0 * alpha + gamma_shift, sum_at(3), -1.0),
        (3.0 + alpha + gamma_shift, sum_at(4), -1.0),
        (3.0 + 2.0 * alpha, sum_at(5), 1.0),
    ];
    for (s, partial, sign) in exps {
        if s.im.abs() < 1e-14 || complete_complex_tails {
            log_tail += sign * prime_tail(s, partial)?;
        } else {
            // Oscillating tail skipped; bound it by the real-exponent tail.
            bound += prime_tail_real_bound(s.re, primes);
        }
    }
    // Neglected third order: |u-v|(|u|²+|u|/p+1/p²)/p-type terms plus w²/2.
    let rho = (alpha + gamma_shift).re.min(2.0 * alpha.re);
    bound += 30.0 * prime_tail_real_bound(4.0 + 2.0 * rho.min(0.0), primes);
    Ok((prefactor * product * log_tail.exp(), bound))
}

/// A(α,γ); errors if the tail bound cannot reach 1e-9.
pub fn a_ratio(alpha: Complex64, gamma_shift: Complex64, primes: &PrimeTable) -> Result<Complex64> {
    let (value, bound) = a_ratio_bounded(alpha, gamma_shift, primes, true)?;
    if bound > 1e-9 {
        return Err(Error::Accuracy {
            op: "a_ratio",
            requested: 1e-9,
            achieved: bound,
        });
    }
    Ok(value)
}

/// A_α(r,r) = 2log2/(3(2^{1+2r}-1)) + Σ_p log p/((p+1)(p^{1+2r}-1)),
/// the diagonal α-derivative of A. Same truncation scheme as `a_ratio`.
pub fn a_alpha_diag_bounded(
    r: Complex64,
    primes: &PrimeTable,
    complete_complex_tails: bool,
) -> Result<(Complex64, f64)> {
    check_a_domain(r, r)?;
    let two_r = 2.0 * r;
    let p2 = ((1.0 + two_r) * 2.0f64.ln()).exp();
    let head = 2.0 * 2.0f64.ln() / (3.0 * (p2 - 1.0));

    let n = primes.p.len();
    let chunk = 4096;
    let n_chunks = n.div_ceil(chunk);
    #[derive(Clone, Copy)]
    struct Partial {
        sum: Complex64,
        s: [Complex64; 3],
    }
    let e = -(1.0 + two_r);
    let parts: Vec<Partial> = crate::par::map_fn(n_chunks, |ci| {
        let lo = ci * chunk;
        let hi = ((ci + 1) * chunk).min(n);
        let mut sum = c64(0.0, 0.0);
        let mut s = [c64(0.0, 0.0); 3];
        for i in lo..hi {
            let p = primes.p[i];
            let lp = primes.ln_p[i];
            let t = (e * lp).exp(); // p^{-1-2r}
            sum += lp / ((p + 1.0) * (1.0 / t - 1.0));
            let invp = 1.0 / p;
            s[0] += lp * t * invp; // log p · p^{-2-2r}
            s[1] += lp * t * invp * invp; // log p · p^{-3-2r}
            s[2] += lp * t * t * invp; // log p · p^{-3-4r}
        }
        Partial { sum, s }
    });
    let sums: Vec<Complex64> = parts.iter().map(|q| q.sum).collect();
    let mut value = head + crate::par::tree_sum_c(&sums);
    let sum_at = |k: usize| {
        let vals: Vec<Complex64> = parts.iter().map(|q| q.s[k]).collect();
        crate::par::tree_sum_c(&vals)
    };

    // log p/((p+1)(p^{1+2r}-1)) = log p·p^{-2-2r}(1 - p^{-1} + p^{-1-2r} + O(p^{-2})).
    let mut bound = 0.0;
    let log_tails = [
        (2.0 + two_r, sum_at(0), 1.0),
        (3.0 + two_r, sum_at(1), -1.0),
        (3.0 + 2.0 * two_r, sum_at(2), 1.0),
    ];
    for (s, partial, sign) in log_tails {
        if s.im.abs() < 1e-14 || complete_complex_tails {
            // Σ_{p>P} log p · p^{-s} = -P′(s) - partial.
            value += sign * (-prime_zeta_deriv(s)? - partial);
        } else {
            bound += prime_logsum_tail_real_bound(s.re, primes);
        }
    }
    bound += 20.0 * prime_logsum_tail_real_bound(4.0 + 2.0 * two_r.re.min(0.0), primes);
    Ok((value, bound))
}

pub(crate) fn prime_logsum_tail_real_bound(sigma: f64, primes: &PrimeTable) -> f64 {
    // Σ_{p>P} log p · p^{-σ} ≤ 1.05 σ P^{1-σ}/(σ-1).
    let p = primes.bound;
    1.05 * sigma * p.powf(1.0 - sigma) / (sigma - 1.0)
}

/// A_α(r,r) with the full tail completion.
pub fn a_alpha_diag(r: Complex64, primes: &PrimeTable) -> Result<Complex64> {
    let (value, bound) = a_alpha_diag_bounded(r, primes, true)?;
    if bound > 1e-9 {
        return Err(Error::Accuracy {
            op: "a_alpha_diag",
            requested: 1e-9,
            achieved: bound,
        });
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// X_d(s)
// ---------------------------------------------------------------------------

/// X_d(s) = Γ((1+𝔞-s)/2)/Γ((𝔞+s)/2) · (π/(8|d|))^{s-1/2}.
pub fn x_d(parity: u8, abs_d: u64, s: Complex64) -> Complex64 {
    let a = f64::from(parity);
    let num = (1.0 + a - s) / 2.0;
    let den = (a + s) / 2.0;
    let ratio = gamma_ratio(num, den);
    let base = PI / (8.0 * abs_d as f64);
    ratio * ((s - 0.5) * base.ln()).exp()
}

/// X_d(s) for a labelled character.
pub fn x_d_char(chi: &arith::QuadraticCharacter, s: Complex64) -> Complex64 {
    x_d(chi.parity(), chi.d().unsigned_abs(), s)
}

/// The parity-averaged Γ-ratio ½[Γ(¼-s/2)/Γ(¼+s/2) + Γ(¾-s/2)/Γ(¾+s/2)]
/// entering ⟨X_d(1/2+s)⟩ (the signs of d average exactly to half weight on
/// each parity).
pub fn gamma_ratio_pair(s: Complex64) -> Complex64 {
    let r14 = gamma_ratio(0.25 - s / 2.0, 0.25 + s / 2.0);
    let r34 = gamma_ratio(0.75 - s / 2.0, 0.75 + s / 2.0);
    0.5 * (r14 + r34)
}

// ---------------------------------------------------------------------------
// Family table: the sieved d-enumeration with weights
// ---------------------------------------------------------------------------

/// The enumerated family: odd squarefree magnitudes |d| ≤ d_cutoff with
/// weights w(|d|/X). Signs are exact mirror images (w even), so averages
/// store magnitudes once and double the weight mass.
#[derive(Debug)]
pub struct FamilyTable {
    pub params: FamilyParams,
    magnitudes: Vec<u64>,
    ln_d: Vec<f64>,
    weight: Vec<f64>,
    /// W*(X) = Σ*_{d odd} w(d/X), both signs.
    w_star: f64,
    avg_ln_d: f64,
    power_cache: Mutex<HashMap<u64, Complex64>>,
}

impl FamilyTable {
    pub fn build(params: FamilyParams, w: &WeightFunction) -> Result<Self> {
        let magnitudes = arith::squarefree_odd_magnitudes(params.d_cutoff)?;
        let x = params.x;
        let weight: Vec<f64> = crate::par::map_fn(magnitudes.len(), |i| {
            w.w(magnitudes[i] as f64 / x)
        });
        let ln_d: Vec<f64> = crate::par::map_fn(magnitudes.len(), |i| (magnitudes[i] as f64).ln());
        let half_mass = crate::par::tree_sum(&weight);
        let w_star = 2.0 * half_mass;
        let weighted_ln: Vec<f64> = weight.iter().zip(&ln_d).map(|(w, l)| w * l).collect();
        let avg_ln_d = 2.0 * crate::par::tree_sum(&weighted_ln) / w_star;
        Ok(FamilyTable {
            params,
            magnitudes,
            ln_d,
            weight,
            w_star,
            avg_ln_d,
            power_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn len(&self) -> usize {
        self.magnitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.magnitudes.is_empty()
    }

    pub fn magnitudes(&self) -> &[u64] {
        &self.magnitudes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weight
    }

    /// W*(X), both signs of d.
    pub fn w_star(&self) -> f64 {
        self.w_star
    }

    /// ⟨log|d|⟩ under the family weight.
    pub fn avg_ln_d(&self) -> f64 {
        self.avg_ln_d
    }

    /// ⟨log(8|d|/π)⟩.
    pub fn avg_log_conductor_over_pi(&self) -> f64 {
        (8.0 / PI).ln() + self.avg_ln_d
    }

    /// ⟨|d|^{-r}⟩ by exact enumeration (deterministic chunked tree sum).
    pub fn avg_power(&self, r: Complex64) -> Complex64 {
        let n = self.magnitudes.len();
        let sum = crate::par::sum_fn_c(n, 4096, |i| {
            self.weight[i] * (-r * self.ln_d[i]).exp()
        });
        2.0 * sum / self.w_star
    }

    /// ⟨|d|^{-it}⟩ for real t, cached by the bit pattern of |t|; negative t
    /// comes from the reflection V(-t) = conj V(t).
    pub fn avg_power_imag_cached(&self, t: f64) -> Complex64 {
        let key = t.abs().to_bits();
        if let Some(v) = self.power_cache.lock().unwrap().get(&key) {
            return if t < 0.0 { v.conj() } else { *v };
        }
        let v = self.avg_power(c64(0.0, t.abs()));
        self.power_cache.lock().unwrap().insert(key, v);
        if t < 0.0 {
            v.conj()
        } else {
            v
        }
    }

    /// ⟨w(d/X) f(d)⟩ for a signed function of the label (exact enumeration
    /// over both signs).
    pub fn avg_signed<F>(&self, f: F) -> f64
    where
        F: Fn(i64) -> f64 + Sync + Send,
    {
        let n = self.magnitudes.len();
        let sum = crate::par::sum_fn(n, 1024, |i| {
            let d = self.magnitudes[i] as i64;
            self.weight[i] * (f(d) + f(-d))
        });
        sum / self.w_star
    }
}

// ---------------------------------------------------------------------------
// Conjectural averages
// ---------------------------------------------------------------------------

/// Right-hand side of the ratios conjecture for the weighted family:
///
///   ζ(1+2α)/ζ(1+α+γ) A(α,γ)
///     + ⟨w·X_d(1/2+α)⟩ ζ(1-2α)/ζ(1-α+γ) A(-α,γ).
pub fn ratios_rhs(shifts: ShiftPair, table: &FamilyTable) -> Result<Complex64> {
    let alpha = shifts.alpha;
    let gamma_shift = shifts.gamma_shift;
    if gamma_shift.re < 0.5 / table.params.x.ln() {
        return Err(Error::domain(
            "ratios_rhs",
            format!("Re γ = {} below ~1/log X", gamma_shift.re),
        ));
    }
    if (alpha + gamma_shift).norm() < 1e-12 {
        // ζ(1+α+γ) pole: the conjecture degenerates.
        return Err(Error::Pole {
            op: "ratios_rhs",
            location: "α + γ = 0".into(),
            residue: 1.0,
            constant: crate::EULER_GAMMA,
        });
    }
    let primes = default_primes();
    let diag = shifts.diagonal().is_some();
    let first = if diag {
        // ζ(1+2α)/ζ(1+α+γ) = 1 exactly on the diagonal.
        a_ratio(alpha, gamma_shift, primes)?
    } else {
        zeta(1.0 + 2.0 * alpha)? / zeta(1.0 + alpha + gamma_shift)?
            * a_ratio(alpha, gamma_shift, primes)?
    };
    // Dual term: the ζ(1-α+γ) in the denominator kills it on the diagonal.
    let dual = if diag {
        c64(0.0, 0.0)
    } else {
        let avg_xd = ((alpha) * (PI / 8.0).ln()).exp()
            * gamma_ratio_pair(alpha)
            * table.avg_power(alpha);
        avg_xd * zeta(1.0 - 2.0 * alpha)? / zeta(1.0 - alpha + gamma_shift)?
            * a_ratio(-alpha, gamma_shift, primes)?
    };
    Ok(first + dual)
}

/// Conjectural family average of L′/L(1/2+r):
///
///   ζ′/ζ(1+2r) + A_α(r,r) - ⟨w·X_d(1/2+r)⟩ ζ(1-2r) A(-r,r).
pub fn logderiv_avg(r: Complex64, table: &FamilyTable) -> Result<Complex64> {
    let ln_x = table.params.x.ln();
    if !(r.re >= 0.5 / ln_x && r.re < 0.25) {
        return Err(Error::domain(
            "logderiv_avg",
            format!("Re r = {} outside [~1/log X, 1/4)", r.re),
        ));
    }
    let primes = default_primes();
    let avg_xd =
        (r * (PI / 8.0).ln()).exp() * gamma_ratio_pair(r) * table.avg_power(r);
    Ok(zeta_logderiv(1.0 + 2.0 * r)? + a_alpha_diag(r, primes)?
        - avg_xd * zeta(1.0 - 2.0 * r)? * a_ratio(-r, r, primes)?)
}

/// How to compute the family power average.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AverageMethod {
    /// Exact enumeration over the sieved family.
    Exact,
    /// The Mellin main term (2/ŵ(0)) X^{-r} M w(1-r).
    Mellin,
}

/// ⟨|d|^{-r}⟩ for 0 ≤ Re r ≤ 1/2, exactly or by the Mellin main term.
pub fn family_average_power(
    r: Complex64,
    w: &WeightFunction,
    table: &FamilyTable,
    method: AverageMethod,
) -> Result<Complex64> {
    if !(0.0..=0.5).contains(&r.re) {
        return Err(Error::domain(
            "family_average_power",
            format!("Re r = {} outside [0, 1/2]", r.re),
        ));
    }
    match method {
        AverageMethod::Exact => Ok(table.avg_power(r)),
        AverageMethod::Mellin => {
            let x_pow = (-r * table.params.x.ln()).exp();
            Ok(2.0 / w.w_hat0() * x_pow * w.mellin_w(1.0 - r)?)
        }
    }
}

/// Ψ(s) = ¼ Σ_{b∈{1/4,3/4}} [ψ(b - s/2) + ψ(b + s/2)]: the parity-averaged
/// digamma block of the prediction integrand (valid at complex s).
pub fn digamma_pair_avg(s: Complex64) -> Result<Complex64> {
    let mut acc = c64(0.0, 0.0);
    for b in [0.25, 0.75] {
        acc += digamma(b - s / 2.0)? + digamma(b + s / 2.0)?;
    }
    Ok(acc / 4.0)
}
