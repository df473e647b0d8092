//! Shooting solver for the radial Dirichlet problem on a geodesic cap.
//!
//! Mode `m` eigenfunctions are `T_m(λ, t) v_m(θ)` where `v_m ∈ ℋⁿ_m` and
//!
//! ```text
//! T'' + (n-1) cot(t) T' + (λ - β_m / sin²t) T = 0,    β_m = m (m + n - 2).
//! ```
//!
//! The equation is singular at `t = 0`; the regular branch behaves like
//! `t^m (1 + c t²)`. We start from that series at `t = ε`, integrate with a
//! Dormand-Prince 5(4) pair up to `t = γ`, and count the interior zeros of
//! `T` on the way. By Sturm oscillation the zero count equals the number of
//! mode-`m` eigenvalues below `λ`, which makes bracketing self-checking.

use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::Tolerances;

/// Radial equation of mode `m` on `B(γ) ⊂ Sⁿ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialProblem {
    pub n: u32,
    pub m: u32,
    pub gamma: f64,
}

impl RadialProblem {
    pub fn new(n: u32, m: u32, gamma: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        if !(gamma > 0.0 && gamma < PI) {
            return Err(Error::RadiusOutOfRange(gamma));
        }
        Ok(Self { n, m, gamma })
    }

    /// `β_m = m (m + n - 2)`, the spherical-harmonic eigenvalue on `S^{n-1}`.
    pub fn beta(&self) -> f64 {
        let (n, m) = (self.n as f64, self.m as f64);
        m * (m + n - 2.0)
    }

    /// Coefficient `c` of the regular series `t^m (1 + c t² + ...)`.
    pub fn series_coefficient(&self, lambda: f64) -> f64 {
        let (n, m) = (self.n as f64, self.m as f64);
        ((m * (n - 1.0) + self.beta()) / 3.0 - lambda) / (2.0 * (2.0 * m + n))
    }

    fn rhs(&self, lambda: f64, t: f64, y: [f64; 2]) -> [f64; 2] {
        let (s, c) = t.sin_cos();
        let n1 = self.n as f64 - 1.0;
        [
            y[1],
            -n1 * (c / s) * y[1] - (lambda - self.beta() / (s * s)) * y[0],
        ]
    }
}

/// Outcome of one shot at a fixed `λ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Shot {
    /// `T(γ) / |(T(γ), T'(γ))|`; its sign is the sign of `T_m(λ, γ)`.
    pub value: f64,
    /// Sign changes of `T` on `(0, γ)`.
    pub zeros: u32,
}

const MAX_STEPS: usize = 2_000_000;

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// fifth-order weights minus fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates the regular solution from the series start to `γ`.
pub fn radial_shoot(prob: &RadialProblem, lambda: f64, tol: &Tolerances) -> Result<Shot> {
    let eps = tol.series_start.min(prob.gamma * 1e-3);
    let m = prob.m as f64;
    let c = prob.series_coefficient(lambda);
    // t^m (1 + c t²) divided by ε^m
    let mut y = [1.0 + c * eps * eps, m / eps + c * (m + 2.0) * eps];
    let mut t = eps;
    let mut h = 0.05 * eps;
    let mut zeros = 0u32;
    let mut k = [[0.0f64; 2]; 7];
    k[0] = prob.rhs(lambda, t, y);
    let mut steps = 0usize;
    while t < prob.gamma {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::StepUnderflow {
                mode: prob.m,
                lambda,
                t,
            });
        }
        let last = t + h >= prob.gamma;
        if last {
            h = prob.gamma - t;
        }
        // the seventh stage is evaluated at the fifth-order solution (FSAL)
        let mut y_new = y;
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                ys[0] += h * A[s][j] * kj[0];
                ys[1] += h * A[s][j] * kj[1];
            }
            k[s] = prob.rhs(lambda, t + C[s] * h, ys);
            y_new = ys;
        }
        if !(y_new[0].is_finite() && y_new[1].is_finite()) {
            return Err(Error::NonFinite {
                mode: prob.m,
                lambda,
                t,
            });
        }
        let mut norm = 0.0f64;
        for i in 0..2 {
            let err: f64 = (0..7).map(|s| h * E[s] * k[s][i]).sum();
            let scale = tol.ode_abs + tol.ode_rel * y[i].abs().max(y_new[i].abs());
            norm = norm.max((err / scale).abs());
        }
        if norm <= 1.0 {
            if y_new[0] != 0.0 && y[0] != 0.0 && (y_new[0] > 0.0) != (y[0] > 0.0) {
                zeros += 1;
            }
            t = if last { prob.gamma } else { t + h };
            y = y_new;
            k[0] = k[6];
            let big = y[0].abs().max(y[1].abs());
            if big > tol.renormalize_above {
                y = [y[0] / big, y[1] / big];
                k[0] = [k[0][0] / big, k[0][1] / big];
            }
        }
        let factor = if norm == 0.0 {
            5.0
        } else {
            (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        if t < prob.gamma && h < 1e-15 * t {
            return Err(Error::StepUnderflow {
                mode: prob.m,
                lambda,
                t,
            });
        }
    }
    let r = y[0].hypot(y[1]);
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::NonFinite {
            mode: prob.m,
            lambda,
            t,
        });
    }
    Ok(Shot {
        value: y[0] / r,
        zeros,
    })
}

fn scan_grid(lambda_max: f64, tol: &Tolerances) -> Vec<f64> {
    let mut grid = vec![tol.scan_start];
    let mut l = tol.scan_start;
    while l < lambda_max {
        l = (l + (l * tol.scan_step_fraction).min(tol.scan_step_max)).min(lambda_max);
        grid.push(l);
    }
    grid
}

fn bisect(
    prob: &RadialProblem,
    mut lo: f64,
    mut hi: f64,
    lo_positive: bool,
    tol: &Tolerances,
) -> Result<f64> {
    while hi - lo > tol.bisect_rel * hi {
        let mid = 0.5 * (lo + hi);
        let v = radial_shoot(prob, mid, tol)?.value;
        if v == 0.0 {
            return Ok(mid);
        }
        if (v > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Upper end of the `λ` scan; roots up to this value count as `≤ λ_max`.
pub(crate) fn scan_limit(lambda_max: f64, tol: &Tolerances) -> f64 {
    lambda_max * (1.0 + tol.cluster_rel)
}

/// Number of mode-`m` eigenvalues below `λ`.
pub fn count_below(prob: &RadialProblem, lambda: f64, tol: &Tolerances) -> Result<u32> {
    Ok(radial_shoot(prob, lambda, tol)?.zeros)
}

/// Zeros of `λ ↦ T_m(λ, γ)` in `(0, λ_max]`, increasing.
pub fn mode_eigenvalues(
    prob: &RadialProblem,
    lambda_max: f64,
    tol: &Tolerances,
) -> Result<Vec<f64>> {
    if lambda_max.is_nan() || lambda_max <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "lambda_max must be positive, got {lambda_max}"
        )));
    }
    let limit = scan_limit(lambda_max, tol);
    if count_below(prob, limit, tol)? == 0 {
        return Ok(Vec::new());
    }
    let grid = scan_grid(limit, tol);
    let mut prev = radial_shoot(prob, grid[0], tol)?;
    if prev.zeros != 0 {
        return Err(Error::UnresolvedBracket {
            mode: prob.m,
            lo: 0.0,
            hi: grid[0],
            roots: prev.zeros,
        });
    }
    let mut roots = Vec::new();
    for w in grid.windows(2) {
        let shot = radial_shoot(prob, w[1], tol)?;
        let found = shot.zeros.checked_sub(prev.zeros).ok_or_else(|| {
            Error::Internal(format!(
                "zero count decreased from {} to {} between lambda {} and {}",
                prev.zeros, shot.zeros, w[0], w[1]
            ))
        })?;
        match found {
            0 => {}
            1 => {
                if (shot.value > 0.0) == (prev.value > 0.0) {
                    return Err(Error::Internal(format!(
                        "zero count rose in ({}, {}] without a sign change at gamma",
                        w[0], w[1]
                    )));
                }
                roots.push(bisect(prob, w[0], w[1], prev.value > 0.0, tol)?);
            }
            _ => {
                return Err(Error::UnresolvedBracket {
                    mode: prob.m,
                    lo: w[0],
                    hi: w[1],
                    roots: found,
                })
            }
        }
        prev = shot;
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn beta_and_series() {
        let p = RadialProblem::new(2, 0, 1.0).unwrap();
        assert_eq!(p.beta(), 0.0);
        // J0(√λ t) ≈ 1 - λ t²/4
        assert!((p.series_coefficient(3.0) + 0.75).abs() < 1e-15);
        let q = RadialProblem::new(4, 3, 1.0).unwrap();
        assert_eq!(q.beta(), 15.0);
        assert!(RadialProblem::new(2, 0, PI).is_err());
        assert!(RadialProblem::new(2, 0, 0.0).is_err());
    }

    #[test]
    fn hemisphere_first_radial_eigenvalue() {
        let p = RadialProblem::new(2, 0, FRAC_PI_2).unwrap();
        let at = radial_shoot(&p, 2.0, &tol()).unwrap();
        assert!(at.value.abs() < 1e-6, "{at:?}");
        let below = radial_shoot(&p, 1.0, &tol()).unwrap();
        assert!(below.value > 0.0);
        assert_eq!(below.zeros, 0);
    }

    #[test]
    fn hemisphere_mode_one_in_three_dimensions() {
        let p = RadialProblem::new(3, 1, FRAC_PI_2).unwrap();
        assert!(radial_shoot(&p, 8.0, &tol()).unwrap().value.abs() < 1e-6);
    }

    #[test]
    fn mode_roots_on_hemisphere() {
        let p0 = RadialProblem::new(2, 0, FRAC_PI_2).unwrap();
        let r0 = mode_eigenvalues(&p0, 35.0, &tol()).unwrap();
        let want = [2.0, 12.0, 30.0];
        assert_eq!(r0.len(), 3);
        for (r, w) in r0.iter().zip(want) {
            assert!((r - w).abs() / w < 1e-7, "{r} vs {w}");
        }
        let p1 = RadialProblem::new(2, 1, FRAC_PI_2).unwrap();
        let r1 = mode_eigenvalues(&p1, 25.0, &tol()).unwrap();
        assert_eq!(r1.len(), 2);
        assert!((r1[0] - 6.0).abs() < 1e-6 && (r1[1] - 20.0).abs() < 1e-5);
    }

    #[test]
    fn eigenvalue_at_lambda_max_is_included() {
        let p0 = RadialProblem::new(2, 0, FRAC_PI_2).unwrap();
        let r = mode_eigenvalues(&p0, 12.0, &tol()).unwrap();
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn smaller_cap_raises_first_eigenvalue() {
        let p = RadialProblem::new(2, 0, PI / 4.0).unwrap();
        let r = mode_eigenvalues(&p, 12.0, &tol()).unwrap();
        assert!(r[0] > 2.0);
    }

    #[test]
    fn coarse_grid_is_reported() {
        let coarse = Tolerances {
            scan_step_max: 40.0,
            scan_step_fraction: 10.0,
            ..Tolerances::default()
        };
        let p = RadialProblem::new(2, 0, FRAC_PI_2).unwrap();
        let err = mode_eigenvalues(&p, 35.0, &coarse).unwrap_err();
        assert!(matches!(err, Error::UnresolvedBracket { .. }), "{err}");
    }

    #[test]
    fn high_mode_does_not_overflow() {
        let p = RadialProblem::new(3, 80, 2.0).unwrap();
        let shot = radial_shoot(&p, 10.0, &tol()).unwrap();
        assert!(shot.value.is_finite());
        assert_eq!(shot.zeros, 0);
    }
}
