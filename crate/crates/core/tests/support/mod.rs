//! Finite-volume oracle for the radial Dirichlet problem
//! `-(w T')' + β sin^{n-3} T = λ w T` on `(0, γ)`, `w = sin^{n-1} t`,
//! `T(γ) = 0`. Cell-centred grid; the flux through `t = 0` vanishes because
//! `w(0) = 0`. Eigenvalues of the symmetric tridiagonal pencil are located
//! with Sturm counts and bisection, then Richardson-extrapolated.

#![allow(dead_code, clippy::needless_range_loop)]

pub struct Pencil {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl Pencil {
    pub fn new(n: u32, m: u32, gamma: f64, cells: usize) -> Self {
        let h = gamma / cells as f64;
        let k = n as f64 - 1.0;
        let beta = (m * (m + n - 2)) as f64;
        let w = |t: f64| t.sin().powf(k);
        let centre = |i: usize| (i as f64 + 0.5) * h;
        let face = |i: usize| w(i as f64 * h);
        let mass: Vec<f64> = (0..cells).map(|i| w(centre(i)) * h).collect();
        let mut diag = Vec::with_capacity(cells);
        for i in 0..cells {
            let t = centre(i);
            let right = if i + 1 == cells {
                2.0 * face(cells) / h
            } else {
                face(i + 1) / h
            };
            let a = face(i) / h + right + beta * t.sin().powf(k - 2.0) * h;
            diag.push(a / mass[i]);
        }
        let off = (0..cells - 1)
            .map(|i| -face(i + 1) / h / (mass[i] * mass[i + 1]).sqrt())
            .collect();
        Self { diag, off }
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0f64;
        for i in 0..self.diag.len() {
            let coupling = if i == 0 {
                0.0
            } else {
                self.off[i - 1] * self.off[i - 1] / d
            };
            d = self.diag[i] - x - coupling;
            if d == 0.0 {
                d = -1e-300;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `j`-th eigenvalue (0-based) by bisection on `[0, hi]`.
    pub fn eigenvalue(&self, j: usize, hi: f64) -> f64 {
        let (mut lo, mut hi) = (0.0, hi);
        while hi - lo > 1e-13 * hi {
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Mode-`m` eigenvalues up to `lambda_max`, extrapolated from two grids.
pub fn fd_mode_eigenvalues(n: u32, m: u32, gamma: f64, lambda_max: f64, cells: usize) -> Vec<f64> {
    let coarse = Pencil::new(n, m, gamma, cells);
    let fine = Pencil::new(n, m, gamma, 2 * cells);
    let hi = 4.0 * lambda_max + 100.0;
    let mut out = Vec::new();
    for j in 0.. {
        let a = coarse.eigenvalue(j, hi);
        let b = fine.eigenvalue(j, hi);
        let v = (4.0 * b - a) / 3.0;
        if v > lambda_max * 1.05 {
            break;
        }
        out.push(v);
    }
    out
}
