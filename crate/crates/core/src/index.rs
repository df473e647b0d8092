//! `SO(2)`-bifurcation indices at `±λ_{m₀}`.
//!
//! With `V⁻` the sum of eigenspaces below `λ_{m₀}`, `V⁰` the eigenspace of
//! `λ_{m₀}`, `D⁻ = deg(-Id, B(V⁻))` and `D⁰ = deg(-Id, B(V⁰))`:
//!
//! ```text
//! BIF(+λ_{m₀}) = (D⁻)^{p₋}  * ((D⁰)^{p₋} - 𝕀)
//! BIF(-λ_{m₀}) = (D⁻)^{-p₊} * ((D⁰)^{p₊} - 𝕀)
//! ```
//!
//! `D⁻` always has constant term `±1`, so the negative power is an honest
//! inverse in the ring. The product route is authoritative; the coordinate
//! closed form is an independent cross-check valid whenever the top weight of
//! `V⁰` exceeds every non-zero weight of `V⁻` (always true on the hemisphere).

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::degree::deg_neg_id;
use crate::error::{Error, Result};
use crate::euler::{ConeClass, EulerElement};
use crate::repr::SO2Rep;
use crate::spectrum::Spectrum;
use crate::system::Sign;

/// Which index to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexRequest {
    /// 1-based position of `λ_{m₀}` in the spectrum.
    pub m0: usize,
    pub sign: Sign,
    pub p_minus: u32,
    pub p_plus: u32,
}

impl IndexRequest {
    pub fn new(m0: usize, sign: Sign, p_minus: u32, p_plus: u32) -> Self {
        Self {
            m0,
            sign,
            p_minus,
            p_plus,
        }
    }

    /// The exponent `p₋` (positive side) or `p₊` (negative side), required non-zero.
    pub fn exponent(&self) -> Result<u32> {
        match (self.sign, self.p_minus, self.p_plus) {
            (Sign::Positive, 0, _) => Err(Error::Signature(
                "index at +lambda needs p_minus > 0".into(),
            )),
            (Sign::Negative, _, 0) => {
                Err(Error::Signature("index at -lambda needs p_plus > 0".into()))
            }
            (Sign::Positive, p, _) => Ok(p),
            (Sign::Negative, _, p) => Ok(p),
        }
    }
}

/// `(V⁻, V⁰)` for the `m0`-th record.
pub fn splitting(spectrum: &Spectrum, m0: usize) -> Result<(SO2Rep, SO2Rep)> {
    let v0 = spectrum.record(m0)?.eigenspace.clone();
    let below = spectrum.records[..m0 - 1]
        .iter()
        .fold(SO2Rep::zero(), |acc, r| acc.oplus(&r.eigenspace));
    Ok((below, v0))
}

/// The index through the ring product formula.
pub fn index_product(spectrum: &Spectrum, req: &IndexRequest) -> Result<EulerElement> {
    let p = req.exponent()? as u64;
    let (v_minus, v_zero) = splitting(spectrum, req.m0)?;
    let d_minus = deg_neg_id(&v_minus);
    let d_zero = deg_neg_id(&v_zero);
    let jump = &d_zero.pow(p) - &EulerElement::unit();
    let prefactor = match req.sign {
        Sign::Positive => d_minus.pow(p),
        Sign::Negative => {
            let inv = d_minus.inverse().ok_or_else(|| {
                Error::Internal(format!("deg(-Id, V-) = {d_minus} is not invertible"))
            })?;
            if inv.mul(&d_minus) != EulerElement::unit() {
                return Err(Error::Internal("inverse of deg(-Id, V-) failed".into()));
            }
            inv.pow(p)
        }
    };
    Ok(prefactor.mul(&jump))
}

fn parity_sign(e: u64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Coordinates of the index fixed by the closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    /// `(-1)^{ν_{m₀} p} - (-1)^{ν_{m₀-1} p}`.
    pub coord0: BigInt,
    /// `(w, (-1)^{1 + ν_{m₀} p} p)` at the top weight `w >= 1` of `V⁰`.
    pub top: Option<(u64, BigInt)>,
    /// Every coordinate at or beyond this index vanishes.
    pub zero_from: u64,
}

impl ClosedForm {
    /// Compares the fixed coordinates and the zero tail; coordinates strictly
    /// between 0 and the top weight are not constrained.
    pub fn agrees_with(&self, index: &EulerElement) -> bool {
        if index.coeff(0) != self.coord0 {
            return false;
        }
        if let Some((w, v)) = &self.top {
            if index.coeff(*w) != *v {
                return false;
            }
        }
        index.top_index().is_none_or(|t| t < self.zero_from)
    }

    /// The closed-form coordinates as an element (other coordinates zero).
    pub fn to_element(&self) -> EulerElement {
        let mut pairs = vec![(0u64, self.coord0.clone())];
        if let Some((w, v)) = &self.top {
            pairs.push((*w, v.clone()));
        }
        EulerElement::from_pairs(pairs)
    }
}

/// The coordinate closed form. Refuses when some non-zero weight of `V⁻`
/// reaches the top weight of `V⁰`, where the shortcut is not derived.
pub fn index_closed_form(spectrum: &Spectrum, req: &IndexRequest) -> Result<ClosedForm> {
    let p = req.exponent()? as u64;
    let record = spectrum.record(req.m0)?;
    let (v_minus, _) = splitting(spectrum, req.m0)?;
    let top = record.top_mode() as u64;
    let clash = v_minus
        .iter()
        .map(|(w, _)| w)
        .filter(|&w| w > 0 && w >= top)
        .max();
    if let Some(w) = clash {
        return Err(Error::ClosedFormNotApplicable(format!(
            "V- carries weight {w}, not below the top weight {top} of V0"
        )));
    }
    let nu = record.nu;
    let nu_prev = nu - record.mu;
    let coord0 = BigInt::from(parity_sign(nu * p) - parity_sign(nu_prev * p));
    let top_coord = (top >= 1).then(|| (top, BigInt::from(-parity_sign(nu * p) * p as i64)));
    Ok(ClosedForm {
        coord0,
        top: top_coord,
        zero_from: top + 1,
    })
}

/// Outcome of comparing the two routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// Which cone statements apply and whether the computed index obeys them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeReport {
    pub exponent: u32,
    pub dim_v0: u64,
    pub dim_v_minus: u64,
    /// Exponent even: index in `U₋`.
    pub even_exponent: bool,
    /// `dim V⁰` and `p · dim V⁻` even: index in `U₋`.
    pub even_dims: bool,
    /// `dim V⁰` even, `p · dim V⁻` odd: index in `U₊`.
    pub even_v0_odd_prefactor: bool,
    pub implied: Option<ConeClass>,
    pub actual: ConeClass,
    pub consistent: bool,
}

pub fn cone_predicates(spectrum: &Spectrum, req: &IndexRequest) -> Result<ConeReport> {
    let p = req.exponent()?;
    let (v_minus, v_zero) = splitting(spectrum, req.m0)?;
    let (dim_v0, dim_vm) = (v_zero.dim(), v_minus.dim());
    let even_exponent = p % 2 == 0;
    let prefactor_even = (p as u64 * dim_vm) % 2 == 0;
    let even_dims = dim_v0 % 2 == 0 && prefactor_even;
    let even_v0_odd_prefactor = dim_v0 % 2 == 0 && !prefactor_even;
    let implied = if even_exponent || even_dims {
        Some(ConeClass::MinusCone)
    } else if even_v0_odd_prefactor {
        Some(ConeClass::PlusCone)
    } else {
        None
    };
    let actual = index_product(spectrum, req)?.classify();
    let consistent = match implied {
        Some(ConeClass::MinusCone) => actual.in_minus_cone(),
        Some(ConeClass::PlusCone) => actual.in_plus_cone(),
        _ => true,
    };
    Ok(ConeReport {
        exponent: p,
        dim_v0,
        dim_v_minus: dim_vm,
        even_exponent,
        even_dims,
        even_v0_odd_prefactor,
        implied,
        actual,
        consistent,
    })
}

/// Machine-readable index computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub request: IndexRequest,
    pub index: EulerElement,
    pub cone: ConeReport,
    pub closed_form_check: CheckStatus,
}

/// Product index, cone report and closed-form comparison. A cone statement
/// contradicted by the computed index is reported as an internal error.
pub fn index_report(spectrum: &Spectrum, req: &IndexRequest) -> Result<IndexReport> {
    let index = index_product(spectrum, req)?;
    let cone = cone_predicates(spectrum, req)?;
    if !cone.consistent {
        return Err(Error::Internal(format!(
            "index {index} is {} but the parity data imply {:?}",
            cone.actual, cone.implied
        )));
    }
    let closed_form_check = match index_closed_form(spectrum, req) {
        Ok(cf) if cf.agrees_with(&index) => CheckStatus::Pass,
        Ok(_) => CheckStatus::Fail,
        Err(Error::ClosedFormNotApplicable(_)) => CheckStatus::Skipped,
        Err(e) => return Err(e),
    };
    if closed_form_check == CheckStatus::Fail && spectrum.is_hemisphere() {
        return Err(Error::Internal(format!(
            "closed form disagrees with the product index {index} on the hemisphere"
        )));
    }
    Ok(IndexReport {
        request: *req,
        index,
        cone,
        closed_form_check,
    })
}
