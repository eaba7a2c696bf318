//! Durand–Kerner iteration for the (simple) roots of a complex polynomial.

use num_complex::Complex64;

use super::poly::horner;

const MAX_ITER: usize = 1000;

pub(crate) fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let Some(deg) = coeffs.len().checked_sub(1) else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if deg == 1 {
        return vec![-monic[0]];
    }
    // Cauchy bound on the root moduli fixes the scale of the starting circle.
    let bound = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * bound.min(2.0)).collect();

    for _ in 0..MAX_ITER {
        let mut delta: f64 = 0.0;
        for i in 0..deg {
            let zi = roots[i];
            let mut den = Complex64::new(1.0, 0.0);
            for (j, zj) in roots.iter().enumerate() {
                if j != i {
                    den *= zi - zj;
                }
            }
            let step = horner(&monic, zi) / den;
            roots[i] = zi - step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    // Newton polish on the original coefficients.
    let deriv: Vec<Complex64> = monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let d = horner(&deriv, *r);
            if d.norm() > 0.0 {
                *r -= horner(&monic, *r) / d;
            }
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_roots_of_unity() {
        let c = |re: f64| Complex64::new(re, 0.0);
        let roots = polynomial_roots(&[c(-1.0), c(0.0), c(0.0), c(1.0)]);
        assert_eq!(roots.len(), 3);
        for r in roots {
            assert!((r.powu(3) - c(1.0)).norm() < 1e-13);
        }
    }
}
