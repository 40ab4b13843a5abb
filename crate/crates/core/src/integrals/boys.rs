use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Above this argument F_0 is ½√(π/x) to double precision (erfc(√x) < 1e-16)
/// and upward recursion is stable.
const ASYMPTOTIC_CUTOFF: f64 = 36.0;

/// Boys function F_m(x) = ∫₀¹ t^{2m} exp(-x t²) dt.
pub fn boys_function(m: u32, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "x",
            x,
            "Boys argument must be finite and ≥ 0",
        ));
    }
    let mut out = vec![0.0; m as usize + 1];
    boys_array(x, &mut out);
    Ok(out[m as usize])
}

/// Fills `out[k] = F_k(x)` for k = 0..out.len(). `x` must be ≥ 0.
pub(crate) fn boys_array(x: f64, out: &mut [f64]) {
    let m_max = out.len() - 1;
    if x >= ASYMPTOTIC_CUTOFF {
        let ex = (-x).exp();
        out[0] = 0.5 * (PI / x).sqrt();
        for m in 0..m_max {
            out[m + 1] = ((2 * m + 1) as f64 * out[m] - ex) / (2.0 * x);
        }
        return;
    }

    // F_m(x) = e^{-x} Σ_k (2x)^k / ((2m+1)(2m+3)...(2m+2k+1)); every term is
    // positive, so the sum is accurate to rounding.
    let ex = (-x).exp();
    let mut term = 1.0 / (2 * m_max + 1) as f64;
    let mut sum = term;
    let mut k = 1;
    loop {
        term *= 2.0 * x / (2 * m_max + 2 * k + 1) as f64;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
        k += 1;
    }
    out[m_max] = ex * sum;
    for m in (0..m_max).rev() {
        out[m] = (2.0 * x * out[m + 1] + ex) / (2 * m + 1) as f64;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composite Gauss-Legendre (16 points per panel, 2^k panels) on the
    /// defining integral, refined until two levels agree.
    fn boys_quadrature(m: u32, x: f64) -> f64 {
        const NODES: [f64; 8] = [
            0.0950125098376374,
            0.2816035507792589,
            0.4580167776572274,
            0.6178762444026438,
            0.7554044083550030,
            0.8656312023878318,
            0.9445750230732326,
            0.9894009349916499,
        ];
        const WEIGHTS: [f64; 8] = [
            0.1894506104550685,
            0.1826034150449236,
            0.1691565193950025,
            0.1495959888165767,
            0.1246289712555339,
            0.0951585116824928,
            0.0622535239386479,
            0.0271524594117541,
        ];
        let f = |t: f64| t.powi(2 * m as i32) * (-x * t * t).exp();
        let integrate = |panels: usize| {
            let h = 1.0 / panels as f64;
            let mut s = 0.0;
            for p in 0..panels {
                let mid = (p as f64 + 0.5) * h;
                for (xi, wi) in NODES.iter().zip(WEIGHTS) {
                    s += wi * (f(mid + 0.5 * h * xi) + f(mid - 0.5 * h * xi));
                }
            }
            s * 0.5 * h
        };
        let mut prev = integrate(1);
        let mut panels = 2;
        loop {
            let cur = integrate(panels);
            if (cur - prev).abs() < 1e-15 || panels > 4096 {
                return cur;
            }
            prev = cur;
            panels *= 2;
        }
    }

    #[test]
    fn closed_forms_at_zero() {
        assert_eq!(boys_function(0, 0.0).unwrap(), 1.0);
        assert!((boys_function(2, 0.0).unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn f0_at_one() {
        // ½√π erf(1), evaluated by quadrature: 0.746824132812427...
        let q = boys_quadrature(0, 1.0);
        assert!((q - 0.746_824_132_812_427).abs() < 1e-14);
        assert!((boys_function(0, 1.0).unwrap() - q).abs() < 1e-13);
    }

    #[test]
    fn matches_quadrature_over_range() {
        for m in 0..=6 {
            for &x in &[
                1e-12, 1e-6, 0.01, 0.3, 1.0, 2.5, 7.0, 15.0, 30.0, 35.9, 36.1, 50.0, 120.0,
            ] {
                let got = boys_function(m, x).unwrap();
                let want = boys_quadrature(m, x);
                assert!((got - want).abs() < 1e-12, "m={m} x={x}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn rejects_negative_argument() {
        assert!(matches!(boys_function(0, -1.0), Err(Error::Domain { .. })));
        assert!(boys_function(0, f64::NAN).is_err());
    }
}
