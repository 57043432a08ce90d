//! Log-gamma and signed gamma for real arguments.
//!
//! Lanczos approximation (g = 607/128, 15 terms) on `x >= 0.5`, reflection
//! below that.

use std::f64::consts::PI;

use crate::error::{domain, Result};

const LANCZOS_G: f64 = 607.0 / 128.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_2,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// `sin(pi * x)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

fn ln_gamma_lanczos(x: f64) -> f64 {
    // Gamma(x) = Gamma(y + 1) with y = x - 1
    let y = x - 1.0;
    let mut sum = LANCZOS_COEF[0];
    for (k, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (y + k as f64);
    }
    let t = y + LANCZOS_G + 0.5;
    HALF_LN_2PI + (y + 0.5) * t.ln() - t + sum.ln()
}

/// Natural log of `|Gamma(x)|` together with the sign of `Gamma(x)`.
///
/// Fails at the poles `x = 0, -1, -2, ...`.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(domain(format!("ln_gamma of non-finite {x}")));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(domain(format!("gamma pole at {x}")));
    }
    if x >= 0.5 {
        return Ok((ln_gamma_lanczos(x), 1.0));
    }
    // Gamma(x) Gamma(1 - x) = pi / sin(pi x)
    let s = sin_pi(x);
    let lg = PI.ln() - s.abs().ln() - ln_gamma_lanczos(1.0 - x);
    Ok((lg, s.signum()))
}

/// `ln Gamma(a)` for `a > 0`.
pub fn ln_gamma(a: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(format!("ln_gamma requires a > 0, got {a}")));
    }
    ln_gamma_signed(a).map(|(v, _)| v)
}

/// `Gamma(x)` for any non-pole real `x`; overflows to infinity past ~171.6.
pub fn gamma(x: f64) -> Result<f64> {
    let (lg, sign) = ln_gamma_signed(x)?;
    Ok(sign * lg.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values computed with mpmath at 40 digits.
    #[allow(clippy::excessive_precision)]
    const LN_GAMMA_TABLE: [(f64, f64); 8] = [
        (1e-3, 6.907_178_885_383_854),
        (0.25, 1.288_022_524_698_077_5),
        (0.5, 0.572_364_942_924_700_1),
        (1.5, -0.120_782_237_635_245_22),
        (3.7, 1.428_072_326_665_388_1),
        (10.0, 12.801_827_480_081_469),
        (57.3, 173.563_868_279_691_42),
        (170.0, 701.437_263_808_737_1),
    ];

    #[test]
    fn trivial_values() {
        assert!(ln_gamma(1.0).unwrap().abs() < 1e-15);
        assert!(ln_gamma(2.0).unwrap().abs() < 1e-15);
        assert!((ln_gamma(0.5).unwrap() - 0.572_364_942_9).abs() < 1e-10);
        // 9! = 362880
        assert!((ln_gamma(10.0).unwrap() - 362_880f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn matches_reference_table() {
        for (x, want) in LN_GAMMA_TABLE {
            let got = ln_gamma(x).unwrap();
            let err = (got - want).abs() / want.abs().max(1.0);
            assert!(err <= 1e-13, "x={x}: got {got}, want {want}, err {err:e}");
        }
    }

    #[test]
    fn factorials_are_exact_enough() {
        let mut fact = 1.0f64;
        for n in 1..=25 {
            let got = gamma(n as f64).unwrap();
            assert!((got - fact).abs() / fact < 2e-14, "n={n}");
            fact *= n as f64;
        }
    }

    #[test]
    fn reflection_gives_signed_values() {
        // Gamma(-0.5) = -2 sqrt(pi), Gamma(-1.5) = 4 sqrt(pi) / 3
        let sp = PI.sqrt();
        assert!((gamma(-0.5).unwrap() + 2.0 * sp).abs() < 1e-14);
        assert!((gamma(-1.5).unwrap() - 4.0 * sp / 3.0).abs() < 1e-14);
        let (_, s) = ln_gamma_signed(-2.5).unwrap();
        assert_eq!(s, -1.0);
    }

    #[test]
    fn rejects_poles_and_non_positive() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.5).is_err());
        assert!(ln_gamma_signed(-3.0).is_err());
        assert!(gamma(0.0).is_err());
    }
}
