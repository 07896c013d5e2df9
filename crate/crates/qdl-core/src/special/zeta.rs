//! Riemann zeta, its logarithmic derivative and the prime zeta function.
//!
//! ζ and ζ′ are computed together by Euler–Maclaurin with at least 30 initial
//! terms and 10 Bernoulli corrections; the truncation point grows linearly
//! with |Im s| so the series stays accurate up to |Im s| ~ 10⁶.

use crate::error::{Error, Result};
use crate::EULER_GAMMA;
use num_complex::Complex64;

/// B_{2k}/(2k)! for k = 1..=10.
const B2K_FACT: [f64; 10] = [
    8.333_333_333_333_333e-2,
    -1.388_888_888_888_889e-3,
    3.306_878_306_878_307e-5,
    -8.267_195_767_195_767e-7,
    2.087_675_698_786_81e-8,
    -5.284_190_138_687_493e-10,
    1.338_253_653_068_468e-11,
    -3.389_680_296_322_583e-13,
    8.586_062_056_277_845e-15,
    -2.174_868_698_558_062e-16,
];

fn check_off_pole(s: Complex64, op: &'static str) -> Result<()> {
    if (s - 1.0).norm() < 1e-12 {
        return Err(Error::Pole {
            op,
            location: "s = 1".into(),
            residue: 1.0,
            constant: EULER_GAMMA,
        });
    }
    Ok(())
}

/// ζ(s) and ζ′(s) in one Euler–Maclaurin pass.
pub fn zeta_and_deriv(s: Complex64) -> Result<(Complex64, Complex64)> {
    check_off_pole(s, "zeta")?;
    // The Bernoulli tail decays like (|Im s|/2πN)^{2K}; with K = 10 taking
    // N ≈ 0.7·|Im s| keeps the remainder near 1e-14 at any height.
    let n = (32.0 + 0.7 * s.im.abs() + 4.0 * (-s.re).max(0.0)).ceil() as usize;
    let nf = n as f64;
    let ln_n = nf.ln();

    let mut z = Complex64::new(0.0, 0.0);
    let mut dz = Complex64::new(0.0, 0.0);
    for k in 1..n {
        let kf = k as f64;
        let t = (-s * kf.ln()).exp();
        z += t;
        dz -= kf.ln() * t;
    }
    let n_pow = (-s * ln_n).exp(); // N^{-s}

    // N^{1-s}/(s-1) and its s-derivative.
    let sm1 = s - 1.0;
    let t1 = nf * n_pow / sm1;
    z += t1;
    dz += -ln_n * t1 - nf * n_pow / (sm1 * sm1);

    z += 0.5 * n_pow;
    dz -= 0.5 * ln_n * n_pow;

    // Bernoulli corrections: c_k(s) N^{-s-2k+1} with c_k = B_{2k}/(2k)! (s)_{2k-1}.
    let mut poch = s; // (s)_{2k-1} built incrementally
    let mut dpoch_over_poch = Complex64::new(0.0, 0.0); // Σ 1/(s+j)
    let mut j = 0.0_f64;
    let mut n_shift = n_pow * nf; // N^{-s+1}, becomes N^{-s-2k+1} in the loop
    for c in B2K_FACT {
        // advance Pochhammer to length 2k-1: multiply by (s+j) for the new factors
        if j == 0.0 {
            dpoch_over_poch = 1.0 / s;
            j = 1.0;
        } else {
            poch *= (s + j) * (s + j + 1.0);
            dpoch_over_poch += 1.0 / (s + j) + 1.0 / (s + j + 1.0);
            j += 2.0;
        }
        n_shift /= nf * nf; // N^{-s-2k+1}
        let term = c * poch * n_shift;
        z += term;
        dz += term * (dpoch_over_poch - ln_n);
    }
    Ok((z, dz))
}

/// ζ(s); pole at s = 1 carries Laurent data (residue 1, constant γ).
pub fn zeta(s: Complex64) -> Result<Complex64> {
    Ok(zeta_and_deriv(s)?.0)
}

/// ζ′(s)/ζ(s).
pub fn zeta_logderiv(s: Complex64) -> Result<Complex64> {
    let (z, dz) = zeta_and_deriv(s)?;
    if z.norm() < 1e-280 {
        return Err(Error::domain("zeta_logderiv", format!("ζ({s}) vanishes")));
    }
    Ok(dz / z)
}

/// Prime zeta P(s) = Σ_p p^{-s} for Re s > 1, via P(s) = Σ_k μ(k)/k log ζ(ks).
pub fn prime_zeta(s: Complex64) -> Result<Complex64> {
    if s.re <= 1.0 {
        return Err(Error::domain("prime_zeta", "needs Re s > 1"));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..=64u32 {
        let mu = crate::arith::mobius(k as u64).expect("k ≥ 1");
        if mu == 0 {
            continue;
        }
        let ks = s * k as f64;
        let term = zeta(ks)?.ln() * (mu as f64 / k as f64);
        acc += term;
        if ks.re > 64.0 {
            break;
        }
    }
    Ok(acc)
}

/// P′(s) = Σ_k μ(k) (ζ′/ζ)(ks); note d/ds log ζ(ks) = k (ζ′/ζ)(ks) cancels 1/k.
pub fn prime_zeta_deriv(s: Complex64) -> Result<Complex64> {
    if s.re <= 1.0 {
        return Err(Error::domain("prime_zeta_deriv", "needs Re s > 1"));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..=64u32 {
        let mu = crate::arith::mobius(k as u64).expect("k ≥ 1");
        if mu == 0 {
            continue;
        }
        let ks = s * k as f64;
        acc += zeta_logderiv(ks)? * mu as f64;
        if ks.re > 64.0 {
            break;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zeta_classical_values() {
        let pi = std::f64::consts::PI;
        assert_abs_diff_eq!(zeta(c(2.0, 0.0)).unwrap().re, pi * pi / 6.0, epsilon = 1e-13);
        assert_abs_diff_eq!(zeta(c(0.0, 0.0)).unwrap().re, -0.5, epsilon = 1e-13);
        assert_abs_diff_eq!(zeta(c(-1.0, 0.0)).unwrap().re, -1.0 / 12.0, epsilon = 1e-13);
        assert_abs_diff_eq!(
            zeta(c(4.0, 0.0)).unwrap().re,
            pi.powi(4) / 90.0,
            epsilon = 1e-13
        );
        // ζ(-1/2) reference value.
        assert_abs_diff_eq!(
            zeta(c(-0.5, 0.0)).unwrap().re,
            -0.207_886_224_977_354_57,
            epsilon = 1e-12
        );
        assert!(zeta(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn zeta_against_direct_summation_with_tail() {
        // Independent oracle at s = 2: Σ_{n≤N} n⁻² + 1/N (integral tail),
        // bracketed between the two integral bounds.
        let direct: f64 = (1..=100_000u64).map(|n| 1.0 / (n * n) as f64).sum();
        let z = zeta(c(2.0, 0.0)).unwrap().re;
        assert!(z > direct + 1.0 / 100_001.0 && z < direct + 1.0 / 100_000.0);
    }

    #[test]
    fn zeta_high_imaginary_stays_bounded() {
        // |ζ(1.25 + it)| is finite and modest for large t; smoke check the
        // linear-in-t truncation.
        for t in [100.0, 5_000.0, 200_000.0] {
            let z = zeta(c(1.25, t)).unwrap();
            assert!(z.norm() > 0.05 && z.norm() < 10.0, "t = {t}: {z}");
        }
    }

    #[test]
    fn zeta_functional_equation() {
        // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s) at a few complex s.
        use crate::special::gamma::ln_gamma;
        for s in [c(0.3, 0.4), c(-0.7, 1.3), c(0.5, 2.0)] {
            let lhs = zeta(s).unwrap();
            let pi = std::f64::consts::PI;
            let rhs = (s * std::f64::consts::LN_2).exp()
                * ((s - 1.0) * pi.ln()).exp()
                * (pi * s / 2.0).sin()
                * ln_gamma(1.0 - s).unwrap().exp()
                * zeta(1.0 - s).unwrap();
            assert!((lhs - rhs).norm() < 1e-11, "s = {s}");
        }
    }

    #[test]
    fn zeta_logderiv_at_two() {
        // Oracle: -Σ log n · n⁻² / ζ(2) by direct summation with integral
        // tail bound [log N/N, (log N + 1)/N].
        let n_max = 200_000u64;
        let mut num = 0.0;
        for n in (2..=n_max).rev() {
            num -= (n as f64).ln() / (n * n) as f64;
        }
        let zl = zeta_logderiv(c(2.0, 0.0)).unwrap().re;
        let z2 = zeta(c(2.0, 0.0)).unwrap().re;
        let tail_hi = ((n_max as f64).ln() + 1.0) / n_max as f64;
        assert!((zl - num / z2).abs() < tail_hi / z2 + 1e-12);
        // And the standard reference value.
        assert_abs_diff_eq!(zl, -0.569_960_993_094_532_8, epsilon = 1e-11);
    }

    #[test]
    fn prime_zeta_matches_direct_sum() {
        let primes = crate::arith::primes_upto(2_000_000).unwrap();
        for s in [c(2.0, 0.0), c(1.5, 0.7), c(3.0, -1.0)] {
            let direct: Complex64 = primes
                .iter()
                .map(|&p| (-s * (p as f64).ln()).exp())
                .sum();
            let pz = prime_zeta(s).unwrap();
            // Tail of the direct sum is ≲ Σ_{p>2e6} p^{-Re s}.
            let tail = 2e6_f64.powf(1.0 - s.re) / ((s.re - 1.0) * 14.0);
            assert!(
                (pz - direct).norm() < tail * 1.5 + 1e-12,
                "s = {s}: gap {}",
                (pz - direct).norm()
            );
        }
    }

    #[test]
    fn prime_zeta_deriv_finite_difference() {
        let s = c(1.8, 0.3);
        let h = 1e-6;
        let fd = (prime_zeta(s + h).unwrap() - prime_zeta(s - h).unwrap()) / (2.0 * h);
        assert!((fd - prime_zeta_deriv(s).unwrap()).norm() < 1e-7);
    }
}
