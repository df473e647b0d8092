//! Dirichlet spectrum of `-Δ_{Sⁿ}` on geodesic balls `B(γ)`.
//!
//! The spectrum is the union over modes `m >= 0` of the sets `A^γ_m` of
//! positive `λ` with `T_m(λ, γ) = 0`; an eigenvalue shared by the modes
//! `Γ^γ(λ) = {m_1 < ... < m_q}` has eigenspace `ℋⁿ_{m_1} ⊕ ... ⊕ ℋⁿ_{m_q}`.
//! On the hemisphere everything is exact: `λ_m = m (n + m - 1)` with the
//! modes `m-1, m-3, ...` down to `0` or `1`.

pub mod cache;
pub mod radial;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::repr::{binomial, so2_decompose, SO2Rep};
use crate::system::{Gamma, Sign};

pub use radial::{mode_eigenvalues, radial_shoot, RadialProblem, Shot};

/// Numerical knobs of the shooting path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Start point `ε` of the series solution.
    pub series_start: f64,
    pub ode_abs: f64,
    pub ode_rel: f64,
    /// Rescale `(T, T')` once its max-norm exceeds this.
    pub renormalize_above: f64,
    pub scan_start: f64,
    pub scan_step_max: f64,
    pub scan_step_fraction: f64,
    pub bisect_rel: f64,
    /// Relative width under which roots of different modes are one eigenvalue.
    pub cluster_rel: f64,
    /// Relative gap under which two clusters are considered ambiguous.
    pub ambiguity_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            series_start: 1e-6,
            ode_abs: 1e-10,
            ode_rel: 1e-10,
            renormalize_above: 1e8,
            scan_start: 1e-3,
            scan_step_max: 1.0,
            scan_step_fraction: 0.125,
            bisect_rel: 1e-9,
            cluster_rel: 1e-6,
            ambiguity_rel: 1e-5,
        }
    }
}

impl Tolerances {
    /// Stable string identifying the tolerance set, used for cache keys.
    pub fn signature(&self) -> String {
        format!(
            "eps={:e};abs={:e};rel={:e};renorm={:e};scan={:e},{:e},{:e};bisect={:e};cluster={:e};gap={:e}",
            self.series_start,
            self.ode_abs,
            self.ode_rel,
            self.renormalize_above,
            self.scan_start,
            self.scan_step_max,
            self.scan_step_fraction,
            self.bisect_rel,
            self.cluster_rel,
            self.ambiguity_rel
        )
    }
}

/// An eigenvalue, exact on the hemisphere path.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Lambda {
    Exact(u64),
    Approx(f64),
}

impl Lambda {
    pub fn value(self) -> f64 {
        match self {
            Lambda::Exact(v) => v as f64,
            Lambda::Approx(v) => v,
        }
    }

    pub fn signed(self, sign: Sign) -> SignedLambda {
        let s = match sign {
            Sign::Positive => 1,
            Sign::Negative => -1,
        };
        match self {
            Lambda::Exact(v) => SignedLambda::Exact(s * v as i64),
            Lambda::Approx(v) => SignedLambda::Approx(s as f64 * v),
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Exact(v) => f.pad(&v.to_string()),
            Lambda::Approx(v) => f.pad(&format!("{v:.9}")),
        }
    }
}

/// `±λ`, integer when exact.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SignedLambda {
    Exact(i64),
    Approx(f64),
}

impl fmt::Display for SignedLambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignedLambda::Exact(v) => f.pad(&v.to_string()),
            SignedLambda::Approx(v) => f.pad(&format!("{v:.9}")),
        }
    }
}

/// One eigenvalue of `(-Δ_{Sⁿ}, B(γ))` with its eigenspace bookkeeping.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueRecord {
    pub lambda: Lambda,
    /// Modes `m` with `λ ∈ A^γ_m`, increasing.
    pub gamma_set: Vec<u32>,
    /// `SO(2)` content of the eigenspace.
    pub eigenspace: SO2Rep,
    /// Multiplicity, `dim` of the eigenspace.
    pub mu: u64,
    /// Running sum of `mu` up to and including this record.
    pub nu: u64,
}

impl EigenvalueRecord {
    /// `SO(n)`-fixed subspace is non-zero iff mode 0 contributes.
    pub fn has_fixed_vectors(&self) -> bool {
        self.gamma_set.first() == Some(&0)
    }

    /// `SO(n)` acts non-trivially on the eigenspace.
    pub fn is_nontrivial(&self) -> bool {
        self.gamma_set.iter().any(|&m| m > 0)
    }

    /// Largest mode in `Γ`, which is the top `SO(2)` weight of the eigenspace.
    pub fn top_mode(&self) -> u32 {
        *self.gamma_set.last().expect("gamma set is nonempty")
    }
}

/// An assembled spectrum up to some bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub n: u32,
    pub gamma: Gamma,
    pub records: Vec<EigenvalueRecord>,
}

impl Spectrum {
    pub fn is_hemisphere(&self) -> bool {
        self.gamma.is_hemisphere()
    }

    /// 1-based lookup.
    pub fn record(&self, index: usize) -> Result<&EigenvalueRecord> {
        if index == 0 || index > self.records.len() {
            return Err(Error::IndexOutOfRange {
                m0: index,
                len: self.records.len(),
            });
        }
        Ok(&self.records[index - 1])
    }

    /// Records whose eigenvalue is shared by several modes away from the
    /// hemisphere; these coincidences are data, not assumptions.
    pub fn coincidences(&self) -> Vec<usize> {
        if self.is_hemisphere() {
            return Vec::new();
        }
        self.records
            .iter()
            .enumerate()
            .filter(|(_, r)| r.gamma_set.len() > 1)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

fn eigenspace_of(n: u32, modes: &[u32]) -> Result<SO2Rep> {
    modes.iter().try_fold(SO2Rep::zero(), |acc, &m| {
        Ok(acc.oplus(&so2_decompose(n, m)?))
    })
}

/// Exact hemisphere records `m = 1..=m_max`.
pub fn hemisphere_spectrum(n: u32, m_max: u32) -> Result<Vec<EigenvalueRecord>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if m_max < 1 {
        return Err(Error::InvalidArgument("m_max must be at least 1".into()));
    }
    let mut nu = 0u64;
    let mut out = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let lambda = m as u64 * (n + m - 1) as u64;
        let modes: Vec<u32> = ((m + 1) % 2..m).step_by(2).collect();
        let eigenspace = eigenspace_of(n, &modes)?;
        let mu = eigenspace.dim();
        let expected = binomial((n + m - 2) as u64, (n - 1) as u64)?;
        if mu != expected {
            return Err(Error::Internal(format!(
                "hemisphere multiplicity of lambda_{m} is {mu}, expected {expected}"
            )));
        }
        nu += mu;
        out.push(EigenvalueRecord {
            lambda: Lambda::Exact(lambda),
            gamma_set: modes,
            eigenspace,
            mu,
            nu,
        });
    }
    Ok(out)
}

/// Number of hemisphere eigenvalues `m (n + m - 1) <= λ_max`.
fn hemisphere_count(n: u32, lambda_max: f64) -> u32 {
    let mut m = 0u32;
    while ((m + 1) as f64) * ((n + m) as f64) <= lambda_max {
        m += 1;
    }
    m
}

/// Roots of every mode up to `λ_max`, mode by mode.
fn scan_modes(
    n: u32,
    gamma: f64,
    lambda_max: f64,
    m_scan_max: Option<u32>,
    tol: &Tolerances,
) -> Result<Vec<Vec<f64>>> {
    let solve = |m: u32| -> Result<Vec<f64>> {
        mode_eigenvalues(&RadialProblem::new(n, m, gamma)?, lambda_max, tol)
    };
    let per_mode = match m_scan_max {
        Some(max) => {
            let modes: Vec<Vec<f64>> = (0..=max)
                .into_par_iter()
                .map(solve)
                .collect::<Result<_>>()?;
            let next = RadialProblem::new(n, max + 1, gamma)?;
            let beyond = mode_eigenvalues(&next, lambda_max, tol)?;
            if let Some(&lambda) = beyond.first() {
                return Err(Error::InsufficientModeScan {
                    m_scan_max: max,
                    mode: max + 1,
                    lambda,
                });
            }
            modes
        }
        None => {
            const BATCH: u32 = 4;
            let mut modes = Vec::new();
            let mut start = 0u32;
            'outer: loop {
                let batch: Vec<Vec<f64>> = (start..start + BATCH)
                    .into_par_iter()
                    .map(solve)
                    .collect::<Result<_>>()?;
                for roots in batch {
                    if roots.is_empty() {
                        break 'outer;
                    }
                    modes.push(roots);
                }
                start += BATCH;
            }
            modes
        }
    };
    for (m, w) in per_mode.windows(2).enumerate() {
        if let (Some(a), Some(b)) = (w[0].first(), w[1].first()) {
            if b <= a {
                return Err(Error::Internal(format!(
                    "first root of mode {} ({b}) does not exceed that of mode {m} ({a})",
                    m + 1
                )));
            }
        }
    }
    Ok(per_mode)
}

/// Groups numerically coincident roots of different modes into records.
fn cluster(n: u32, per_mode: &[Vec<f64>], tol: &Tolerances) -> Result<Vec<EigenvalueRecord>> {
    let mut roots: Vec<(f64, u32)> = per_mode
        .iter()
        .enumerate()
        .flat_map(|(m, rs)| rs.iter().map(move |&l| (l, m as u32)))
        .collect();
    roots.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut clusters: Vec<Vec<(f64, u32)>> = Vec::new();
    for (l, m) in roots {
        match clusters.last_mut() {
            Some(c) if (l - c[0].0) <= tol.cluster_rel * l => c.push((l, m)),
            _ => clusters.push(vec![(l, m)]),
        }
    }
    for w in clusters.windows(2) {
        let a = w[0].last().unwrap().0;
        let b = w[1][0].0;
        if b - a < tol.ambiguity_rel * b {
            return Err(Error::ClusterAmbiguity { a, b });
        }
    }

    let mut nu = 0;
    clusters
        .into_iter()
        .map(|c| {
            let mut modes: Vec<u32> = c.iter().map(|&(_, m)| m).collect();
            modes.sort_unstable();
            if modes.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Internal(format!(
                    "two roots of one mode merged near {}",
                    c[0].0
                )));
            }
            let lambda = c.iter().map(|&(l, _)| l).sum::<f64>() / c.len() as f64;
            let eigenspace = eigenspace_of(n, &modes)?;
            let mu = eigenspace.dim();
            nu += mu;
            Ok(EigenvalueRecord {
                lambda: Lambda::Approx(lambda),
                gamma_set: modes,
                eigenspace,
                mu,
                nu,
            })
        })
        .collect()
}

/// Numerical assembly of all eigenvalues `<= λ_max` on `B(γ)`, regardless of
/// whether `γ` happens to be `π/2`.
pub fn assemble_numeric(
    n: u32,
    gamma: f64,
    lambda_max: f64,
    m_scan_max: Option<u32>,
    tol: &Tolerances,
) -> Result<Spectrum> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let gamma = Gamma::Radians(gamma).validate()?;
    if lambda_max.is_nan() || lambda_max <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "lambda_max must be positive, got {lambda_max}"
        )));
    }
    let per_mode = scan_modes(n, gamma.radians(), lambda_max, m_scan_max, tol)?;
    Ok(Spectrum {
        n,
        gamma,
        records: cluster(n, &per_mode, tol)?,
    })
}

/// All eigenvalues `<= λ_max`; exact on the hemisphere, shooting otherwise.
pub fn assemble_spectrum(
    n: u32,
    gamma: Gamma,
    lambda_max: f64,
    m_scan_max: Option<u32>,
    tol: &Tolerances,
) -> Result<Spectrum> {
    match gamma {
        Gamma::Hemisphere => {
            if n < 2 {
                return Err(Error::DimensionTooSmall(n));
            }
            let count = hemisphere_count(n, lambda_max);
            let records = if count == 0 {
                Vec::new()
            } else {
                hemisphere_spectrum(n, count)?
            };
            Ok(Spectrum { n, gamma, records })
        }
        Gamma::Radians(g) => assemble_numeric(n, g, lambda_max, m_scan_max, tol),
    }
}

/// Runs the shooting path at `γ = π/2` and compares it with the exact records:
/// same count, relative agreement `tol.cluster_rel`, identical `Γ`-sets and
/// multiplicities.
pub fn cross_check_hemisphere(n: u32, lambda_max: f64, tol: &Tolerances) -> Result<Spectrum> {
    let exact = assemble_spectrum(n, Gamma::Hemisphere, lambda_max, None, tol)?;
    let numeric = assemble_numeric(n, std::f64::consts::FRAC_PI_2, lambda_max, None, tol)?;
    if exact.records.len() != numeric.records.len() {
        return Err(Error::HemisphereMismatch(format!(
            "{} exact records but {} numerical ones",
            exact.records.len(),
            numeric.records.len()
        )));
    }
    for (i, (e, a)) in exact.records.iter().zip(&numeric.records).enumerate() {
        let (ev, av) = (e.lambda.value(), a.lambda.value());
        if (ev - av).abs() > tol.cluster_rel * ev {
            return Err(Error::HemisphereMismatch(format!(
                "lambda_{}: exact {ev}, numerical {av}",
                i + 1
            )));
        }
        if e.gamma_set != a.gamma_set || e.mu != a.mu || e.nu != a.nu {
            return Err(Error::HemisphereMismatch(format!(
                "lambda_{}: modes {:?} vs {:?}",
                i + 1,
                e.gamma_set,
                a.gamma_set
            )));
        }
    }
    Ok(numeric)
}

/// Element `±λ_k` of the signed candidate set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignedEigenvalue {
    pub sign: Sign,
    /// 1-based position in the spectrum.
    pub index: usize,
    pub lambda: Lambda,
}

impl SignedEigenvalue {
    pub fn signed_value(&self) -> SignedLambda {
        self.lambda.signed(self.sign)
    }
}

impl fmt::Display for SignedEigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}lambda_{}", self.sign, self.index)
    }
}

/// The parameters where `∇²Φ(0, λ)` degenerates, within the spectrum range:
/// `σ` if only `p₋ > 0`, `-σ` if only `p₊ > 0`, both otherwise. Ordered by
/// signed value.
pub fn signed_candidate_set(
    records: &[EigenvalueRecord],
    p_minus: u32,
    p_plus: u32,
) -> Result<Vec<SignedEigenvalue>> {
    if p_minus == 0 && p_plus == 0 {
        return Err(Error::Signature("p_minus + p_plus must be positive".into()));
    }
    let mut out = Vec::new();
    if p_plus > 0 {
        out.extend(
            records
                .iter()
                .enumerate()
                .rev()
                .map(|(i, r)| SignedEigenvalue {
                    sign: Sign::Negative,
                    index: i + 1,
                    lambda: r.lambda,
                }),
        );
    }
    if p_minus > 0 {
        out.extend(records.iter().enumerate().map(|(i, r)| SignedEigenvalue {
            sign: Sign::Positive,
            index: i + 1,
            lambda: r.lambda,
        }));
    }
    Ok(out)
}
