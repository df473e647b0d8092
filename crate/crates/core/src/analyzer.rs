//! Checks around the symmetric Rabinowitz alternative.
//!
//! A bounded continuum from `±λ_{m₀}` must come back to the trivial line at a
//! finite set `S` of signed eigenvalues with `Σ_{S} BIF = Θ`. The certificates
//! below show that no such `S` exists (unboundedness), list what a bounded
//! continuum would need (necessary conditions), or detect symmetry breaking.
//!
//! The workhorse is a top-coordinate argument. Group the non-`Θ` indices by
//! their top non-zero coordinate `T`; if no non-empty sub-collection of a group
//! sums to zero at `T`, then every sum containing a non-`Θ` index has a
//! non-zero coordinate at the largest `T` present, hence is not `Θ`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::EulerElement;
use crate::index::{index_product, IndexRequest};
use crate::spectrum::{
    hemisphere_spectrum, signed_candidate_set, SignedEigenvalue, SignedLambda, Spectrum, Tolerances,
};
use crate::system::{Sign, SystemConfig};

/// Default number of subsets enumerated before relying on the structural argument alone.
pub const DEFAULT_SUBSET_BUDGET: u64 = 1 << 20;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Unbounded,
    NecessaryConditions,
    SymmetryBreaking,
    AlternativeSum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Proved,
    Refuted,
    HypothesisNotMet,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Proved => 0,
            Verdict::Refuted => 1,
            Verdict::HypothesisNotMet => 2,
            Verdict::Inconclusive => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Subject {
    Eigenvalue(SignedEigenvalue),
    Candidates(Vec<SignedEigenvalue>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub eigenvalue: SignedEigenvalue,
    pub lambda_signed: SignedLambda,
    pub index: EulerElement,
}

impl Evidence {
    fn new(eigenvalue: SignedEigenvalue, index: EulerElement) -> Self {
        Self {
            lambda_signed: eigenvalue.signed_value(),
            eigenvalue,
            index,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionStatus {
    Satisfied,
    Violated,
    /// Not decidable from the spectrum; must hold for a bounded continuum.
    Required,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub statement: String,
    pub status: ConditionStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    ConditionsEmitted,
    BoundednessImpossible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnboundedDetails {
    pub m0: usize,
    pub sign: Sign,
    pub scan_bound: u32,
    pub subset_budget: u64,
    pub hypothesis_met: bool,
    pub notes: Vec<String>,
    /// `2^{N-1}` for `N` candidates in range; `None` past 63 bits.
    pub subsets_with_subject: Option<u64>,
    pub exhaustive: bool,
    pub structural: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecessaryDetails {
    pub m0: usize,
    pub sign: Sign,
    pub hypothesis_met: bool,
    pub notes: Vec<String>,
    pub conditions: Vec<Condition>,
    pub conclusion: Option<Conclusion>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryDetails {
    pub m0: usize,
    pub gamma_set: Vec<u32>,
    /// On the hemisphere: whether `m₀` is even.
    pub even_m0: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Details {
    AlternativeSum { is_theta: bool },
    Unbounded(UnboundedDetails),
    NecessaryConditions(NecessaryDetails),
    SymmetryBreaking(SymmetryDetails),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub config: SystemConfig,
    pub subject: Subject,
    pub evidence: Vec<Evidence>,
    /// Sum of the evidence indices.
    pub sum: EulerElement,
    pub verdict: Verdict,
    pub tool_version: String,
    pub tolerances: Tolerances,
    pub details: Details,
}

impl Certificate {
    fn assemble(
        kind: CertificateKind,
        config: SystemConfig,
        subject: Subject,
        evidence: Vec<Evidence>,
        verdict: Verdict,
        tolerances: &Tolerances,
        details: Details,
    ) -> Self {
        let sum = EulerElement::sum(evidence.iter().map(|e| &e.index));
        Self {
            kind,
            config,
            subject,
            evidence,
            sum,
            verdict,
            tool_version: TOOL_VERSION.to_string(),
            tolerances: tolerances.clone(),
            details,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Re-derives the verdict from the embedded evidence alone.
    pub fn verify(&self) -> Result<()> {
        let sum = EulerElement::sum(self.evidence.iter().map(|e| &e.index));
        if sum != self.sum {
            return Err(Error::Internal(format!(
                "certificate sum {} differs from the evidence sum {sum}",
                self.sum
            )));
        }
        let expected = match &self.details {
            Details::AlternativeSum { is_theta } => {
                if *is_theta != sum.is_theta() {
                    return Err(Error::Internal(
                        "is_theta flag does not match the sum".into(),
                    ));
                }
                alternative_verdict(&sum)
            }
            Details::Unbounded(d) => self.reverify_unbounded(d)?,
            Details::NecessaryConditions(d) => {
                let (met, _) = necessary_hypothesis(&self.config, d.m0, d.sign)?;
                if met {
                    Verdict::Proved
                } else {
                    Verdict::HypothesisNotMet
                }
            }
            Details::SymmetryBreaking(d) => symmetry_verdict(&d.gamma_set),
        };
        if expected != self.verdict {
            return Err(Error::Internal(format!(
                "certificate claims {:?} but its evidence gives {expected:?}",
                self.verdict
            )));
        }
        Ok(())
    }

    fn reverify_unbounded(&self, d: &UnboundedDetails) -> Result<Verdict> {
        if !d.hypothesis_met {
            return Ok(Verdict::HypothesisNotMet);
        }
        let Subject::Eigenvalue(subject) = &self.subject else {
            return Err(Error::Internal(
                "unbounded certificate without a single subject".into(),
            ));
        };
        let pos = self
            .evidence
            .iter()
            .position(|e| e.eigenvalue == *subject)
            .ok_or_else(|| Error::Internal("subject missing from the evidence".into()))?;
        let indices: Vec<EulerElement> = self.evidence.iter().map(|e| e.index.clone()).collect();
        if indices[pos].is_theta() {
            return Ok(Verdict::Refuted);
        }
        if structural_closure(&indices).decided {
            return Ok(Verdict::Proved);
        }
        if d.exhaustive {
            let tally = enumerate_subsets(&indices, Some(pos))
                .ok_or_else(|| Error::Internal("evidence too large to enumerate".into()))?;
            return Ok(if tally.theta_subsets == 0 {
                Verdict::Proved
            } else {
                Verdict::Refuted
            });
        }
        Ok(Verdict::Inconclusive)
    }

    /// Recomputes every evidence index from the spectrum and compares.
    pub fn verify_against(&self, spectrum: &Spectrum) -> Result<()> {
        self.verify()?;
        for e in &self.evidence {
            let req = IndexRequest::new(
                e.eigenvalue.index,
                e.eigenvalue.sign,
                self.config.p_minus,
                self.config.p_plus,
            );
            let index = index_product(spectrum, &req)?;
            if index != e.index {
                return Err(Error::Internal(format!(
                    "evidence index for {} is {} but recomputes to {index}",
                    e.eigenvalue, e.index
                )));
            }
        }
        Ok(())
    }
}

fn check_spectrum(config: &SystemConfig, spectrum: &Spectrum) -> Result<()> {
    if config.n != spectrum.n || config.gamma != spectrum.gamma {
        return Err(Error::InvalidArgument(format!(
            "spectrum is for n = {}, gamma = {} but the system has n = {}, gamma = {}",
            spectrum.n, spectrum.gamma, config.n, config.gamma
        )));
    }
    Ok(())
}

fn index_of(
    config: &SystemConfig,
    spectrum: &Spectrum,
    c: &SignedEigenvalue,
) -> Result<EulerElement> {
    index_product(
        spectrum,
        &IndexRequest::new(c.index, c.sign, config.p_minus, config.p_plus),
    )
}

/// Looks up `(sign, position)` pairs in the signed candidate set.
pub fn resolve_candidates(
    wanted: &[(Sign, usize)],
    config: &SystemConfig,
    spectrum: &Spectrum,
) -> Result<Vec<SignedEigenvalue>> {
    let set = signed_candidate_set(&spectrum.records, config.p_minus, config.p_plus)?;
    let mut seen = HashSet::new();
    wanted
        .iter()
        .map(|&(sign, index)| {
            if !seen.insert((sign, index)) {
                return Err(Error::InvalidArgument(format!(
                    "candidate {}lambda_{index} listed twice",
                    sign.symbol()
                )));
            }
            set.iter()
                .find(|c| c.sign == sign && c.index == index)
                .copied()
                .ok_or_else(|| Error::NotACandidate(format!("{}lambda_{index}", sign.symbol())))
        })
        .collect()
}

/// Parses `+1,-2,3` into `(sign, position)` pairs; a bare number is positive.
pub fn parse_candidates(text: &str) -> Result<Vec<(Sign, usize)>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (sign, digits) = match t.as_bytes()[0] {
                b'+' => (Sign::Positive, &t[1..]),
                b'-' => (Sign::Negative, &t[1..]),
                _ => (Sign::Positive, t),
            };
            let index: usize = digits
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad candidate {t:?}")))?;
            Ok((sign, index))
        })
        .collect()
}

/// `Σ BIF` over the candidates, and whether it is `Θ`.
pub fn alternative_sum(
    candidates: &[SignedEigenvalue],
    config: &SystemConfig,
    spectrum: &Spectrum,
) -> Result<(EulerElement, bool)> {
    check_spectrum(config, spectrum)?;
    let set = signed_candidate_set(&spectrum.records, config.p_minus, config.p_plus)?;
    let mut sum = EulerElement::theta();
    for c in candidates {
        if !set.contains(c) {
            return Err(Error::NotACandidate(c.to_string()));
        }
        sum += &index_of(config, spectrum, c)?;
    }
    let is_theta = sum.is_theta();
    Ok((sum, is_theta))
}

fn alternative_verdict(sum: &EulerElement) -> Verdict {
    if sum.is_theta() {
        Verdict::Inconclusive
    } else {
        Verdict::Proved
    }
}

/// Certificate that the candidates cannot be the return set of one bounded
/// continuum (`proved`), or that the sum vanishes (`inconclusive`).
pub fn alternative_certificate(
    candidates: &[SignedEigenvalue],
    config: &SystemConfig,
    spectrum: &Spectrum,
    tol: &Tolerances,
) -> Result<Certificate> {
    let (sum, is_theta) = alternative_sum(candidates, config, spectrum)?;
    let evidence = candidates
        .iter()
        .map(|c| Ok(Evidence::new(*c, index_of(config, spectrum, c)?)))
        .collect::<Result<Vec<_>>>()?;
    let cert = Certificate::assemble(
        CertificateKind::AlternativeSum,
        *config,
        Subject::Candidates(candidates.to_vec()),
        evidence,
        alternative_verdict(&sum),
        tol,
        Details::AlternativeSum { is_theta },
    );
    debug_assert_eq!(cert.sum, sum);
    Ok(cert)
}

/// Non-`Θ` indices sharing one top coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopGroup {
    pub top: u64,
    pub values: Vec<BigInt>,
    /// No non-empty sub-collection of `values` sums to zero.
    pub zero_sum_free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralClosure {
    pub groups: Vec<TopGroup>,
    /// Every subset containing a non-`Θ` index has a non-`Θ` sum.
    pub decided: bool,
}

const SUBSET_SUM_STATES: usize = 1 << 16;

fn zero_sum_free(values: &[BigInt]) -> bool {
    if values.iter().all(|v| v.is_positive()) || values.iter().all(|v| v.is_negative()) {
        return true;
    }
    let mut reach: HashSet<BigInt> = HashSet::new();
    for v in values {
        let mut next: Vec<BigInt> = reach.iter().map(|s| s + v).collect();
        next.push(v.clone());
        if next.iter().any(Zero::is_zero) {
            return false;
        }
        reach.extend(next);
        if reach.len() > SUBSET_SUM_STATES {
            // too many partial sums to decide; treat as open
            return false;
        }
    }
    true
}

pub fn structural_closure(items: &[EulerElement]) -> StructuralClosure {
    let mut by_top: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for e in items {
        if let Some(t) = e.top_index() {
            by_top.entry(t).or_default().push(e.coeff(t));
        }
    }
    let groups: Vec<TopGroup> = by_top
        .into_iter()
        .map(|(top, values)| TopGroup {
            zero_sum_free: zero_sum_free(&values),
            top,
            values,
        })
        .collect();
    let decided = groups.iter().all(|g| g.zero_sum_free);
    StructuralClosure { groups, decided }
}

/// Per-subset outcome of the top-coordinate argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prediction {
    Theta,
    NonTheta,
    Undecided,
}

pub fn predict_subset<'a, I: IntoIterator<Item = &'a EulerElement>>(items: I) -> Prediction {
    let mut best: Option<(u64, BigInt)> = None;
    for e in items {
        let Some(t) = e.top_index() else { continue };
        match &mut best {
            Some((bt, s)) if *bt == t => *s += e.coeff(t),
            Some((bt, _)) if *bt > t => {}
            _ => best = Some((t, e.coeff(t))),
        }
    }
    match best {
        None => Prediction::Theta,
        Some((_, s)) if s.is_zero() => Prediction::Undecided,
        Some(_) => Prediction::NonTheta,
    }
}

/// Outcome of brute-force subset summation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub subsets: u64,
    pub theta_subsets: u64,
    /// Smallest bit mask (bit `j` = item `j`) of a subset summing to `Θ`.
    pub first_theta: Option<u64>,
    /// Subsets on which the top-coordinate argument reached a verdict.
    pub structural_decided: u64,
    /// Decided subsets where the argument and the sum disagree.
    pub disagreements: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            subsets: self.subsets + o.subsets,
            theta_subsets: self.theta_subsets + o.theta_subsets,
            first_theta: match (self.first_theta, o.first_theta) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
            structural_decided: self.structural_decided + o.structural_decided,
            disagreements: self.disagreements + o.disagreements,
        }
    }
}

struct Walker<'a> {
    coords: &'a [Vec<i128>],
    tops: &'a [Option<usize>],
    sum: Vec<i128>,
    count_at_top: Vec<u32>,
    sum_at_top: Vec<i128>,
    mask: u64,
    tally: Tally,
}

impl<'a> Walker<'a> {
    fn new(coords: &'a [Vec<i128>], tops: &'a [Option<usize>], width: usize) -> Self {
        Self {
            coords,
            tops,
            sum: vec![0; width],
            count_at_top: vec![0; width],
            sum_at_top: vec![0; width],
            mask: 0,
            tally: Tally::default(),
        }
    }

    fn toggle(&mut self, j: usize) {
        let adding = self.mask & (1 << j) == 0;
        self.mask ^= 1 << j;
        let s = if adding { 1 } else { -1 };
        for (acc, c) in self.sum.iter_mut().zip(&self.coords[j]) {
            *acc += s * c;
        }
        if let Some(t) = self.tops[j] {
            if adding {
                self.count_at_top[t] += 1;
            } else {
                self.count_at_top[t] -= 1;
            }
            self.sum_at_top[t] += s * self.coords[j][t];
        }
    }

    fn visit(&mut self) {
        if self.mask == 0 {
            return;
        }
        let theta = self.sum.iter().all(|&c| c == 0);
        let prediction = match self.count_at_top.iter().rposition(|&c| c > 0) {
            None => Prediction::Theta,
            Some(t) if self.sum_at_top[t] == 0 => Prediction::Undecided,
            Some(_) => Prediction::NonTheta,
        };
        let t = &mut self.tally;
        t.subsets += 1;
        if theta {
            t.theta_subsets += 1;
            t.first_theta = Some(t.first_theta.map_or(self.mask, |m| m.min(self.mask)));
        }
        match prediction {
            Prediction::Undecided => {}
            p => {
                t.structural_decided += 1;
                if (p == Prediction::Theta) != theta {
                    t.disagreements += 1;
                }
            }
        }
    }
}

const PREFIX_BITS: usize = 6;

/// Sums every non-empty subset (or every subset containing `fixed`) in Gray
/// code order, comparing each against [`predict_subset`]. Returns `None` when
/// there are more than 62 items or a coefficient exceeds `i128`.
pub fn enumerate_subsets(items: &[EulerElement], fixed: Option<usize>) -> Option<Tally> {
    if items.len() > 62 {
        return None;
    }
    let width = items
        .iter()
        .filter_map(EulerElement::top_index)
        .max()
        .map_or(1, |t| t as usize + 1);
    let coords = items
        .iter()
        .map(|e| {
            let mut v = vec![0i128; width];
            for (i, c) in e.iter() {
                v[i as usize] = i128::try_from(c).ok()?;
            }
            Some(v)
        })
        .collect::<Option<Vec<_>>>()?;
    let tops: Vec<Option<usize>> = items
        .iter()
        .map(|e| e.top_index().map(|t| t as usize))
        .collect();
    let free: Vec<usize> = (0..items.len()).filter(|&j| Some(j) != fixed).collect();
    let pb = free.len().min(PREFIX_BITS);
    let (low, prefix) = free.split_at(free.len() - pb);
    let tally = (0u64..1 << pb)
        .into_par_iter()
        .map(|pm| {
            let mut w = Walker::new(&coords, &tops, width);
            if let Some(f) = fixed {
                w.toggle(f);
            }
            for (b, &j) in prefix.iter().enumerate() {
                if pm >> b & 1 == 1 {
                    w.toggle(j);
                }
            }
            w.visit();
            for i in 1u64..1 << low.len() {
                w.toggle(low[i.trailing_zeros() as usize]);
                w.visit();
            }
            w.tally
        })
        .reduce(Tally::default, Tally::merge);
    Some(tally)
}

/// Hypothesis of the alternative at `±λ_{m₀}`: the eigenspace is a non-trivial
/// `SO(n)`-representation (some mode `m > 0` in `Γ`), or `p · dim` is odd.
fn alternative_hypothesis(spectrum: &Spectrum, m0: usize, p: u32) -> Result<(bool, String)> {
    let r = spectrum.record(m0)?;
    if r.is_nontrivial() {
        return Ok((
            true,
            format!("eigenspace carries modes {:?}, non-trivial", r.gamma_set),
        ));
    }
    let odd = (p as u64 * r.mu) % 2 == 1;
    Ok((
        odd,
        format!(
            "eigenspace is SO(n)-trivial, p * dim = {} * {} is {}",
            p,
            r.mu,
            if odd { "odd" } else { "even" }
        ),
    ))
}

/// Proves `C(±λ_{m₀})` unbounded on the hemisphere by showing that no subset
/// of the signed candidates up to `λ_M` containing `±λ_{m₀}` has index sum `Θ`.
pub fn certify_unbounded(
    config: &SystemConfig,
    m0: usize,
    sign: Sign,
    scan_bound: u32,
    subset_budget: u64,
) -> Result<Certificate> {
    let p = config.require_side(sign)?;
    if (m0 as u64) > scan_bound as u64 || m0 == 0 {
        return Err(Error::InvalidArgument(format!(
            "scan bound {scan_bound} does not contain m0 = {m0}"
        )));
    }
    let tol = Tolerances::default();
    let mut details = UnboundedDetails {
        m0,
        sign,
        scan_bound,
        subset_budget,
        hypothesis_met: false,
        notes: Vec::new(),
        subsets_with_subject: None,
        exhaustive: false,
        structural: false,
    };
    let not_met =
        |details: UnboundedDetails, subject: SignedEigenvalue, evidence: Vec<Evidence>| {
            Certificate::assemble(
                CertificateKind::Unbounded,
                *config,
                Subject::Eigenvalue(subject),
                evidence,
                Verdict::HypothesisNotMet,
                &tol,
                Details::Unbounded(details),
            )
        };
    if !config.gamma.is_hemisphere() {
        return Err(Error::InvalidArgument(
            "unboundedness is only certified on the hemisphere".into(),
        ));
    }
    let spectrum = Spectrum {
        n: config.n,
        gamma: config.gamma,
        records: hemisphere_spectrum(config.n, scan_bound)?,
    };
    let candidates = signed_candidate_set(&spectrum.records, config.p_minus, config.p_plus)?;
    let pos = candidates
        .iter()
        .position(|c| c.sign == sign && c.index == m0)
        .ok_or_else(|| Error::Internal("subject missing from candidate set".into()))?;
    let subject = candidates[pos];

    let (nontrivial, why) = alternative_hypothesis(&spectrum, m0, p)?;
    details.notes.push(why);
    if m0 == 1 && p % 2 == 0 {
        details.notes.push(format!(
            "the first eigenvalue needs an odd count on its side, got {p}"
        ));
    }
    if !nontrivial || (m0 == 1 && p % 2 == 0) {
        let index = index_of(config, &spectrum, &subject)?;
        return Ok(not_met(
            details,
            subject,
            vec![Evidence::new(subject, index)],
        ));
    }
    details.hypothesis_met = true;

    let evidence = candidates
        .iter()
        .map(|c| Ok(Evidence::new(*c, index_of(config, &spectrum, c)?)))
        .collect::<Result<Vec<_>>>()?;
    let indices: Vec<EulerElement> = evidence.iter().map(|e| e.index.clone()).collect();
    if indices[pos].is_theta() {
        return Err(Error::Refutation(format!(
            "index at {subject} is Theta although the hypothesis holds"
        )));
    }
    let closure = structural_closure(&indices);
    details.structural = closure.decided;
    let count = u32::try_from(candidates.len() - 1)
        .ok()
        .and_then(|k| 1u64.checked_shl(k).filter(|_| k < 64));
    details.subsets_with_subject = count;
    let mut verdict = if closure.decided {
        Verdict::Proved
    } else {
        Verdict::Inconclusive
    };
    if count.is_some_and(|c| c <= subset_budget) {
        let tally = enumerate_subsets(&indices, Some(pos))
            .ok_or_else(|| Error::Internal("subset enumeration not representable".into()))?;
        details.exhaustive = true;
        if tally.disagreements > 0 {
            return Err(Error::Internal(format!(
                "top-coordinate argument disagrees with subset sums on {} subsets",
                tally.disagreements
            )));
        }
        if let Some(mask) = tally.first_theta {
            let members: Vec<String> = (0..candidates.len())
                .filter(|j| mask >> j & 1 == 1)
                .map(|j| format!("{} -> {}", candidates[j], indices[j]))
                .collect();
            return Err(Error::Refutation(members.join("; ")));
        }
        verdict = Verdict::Proved;
    }
    let cert = Certificate::assemble(
        CertificateKind::Unbounded,
        *config,
        Subject::Eigenvalue(subject),
        evidence,
        verdict,
        &tol,
        Details::Unbounded(details),
    );
    cert.verify()?;
    Ok(cert)
}

fn necessary_hypothesis(
    config: &SystemConfig,
    m0: usize,
    sign: Sign,
) -> Result<(bool, Vec<String>)> {
    let p = config.require_side(sign)?;
    let mut notes = Vec::new();
    if m0 < 2 {
        notes.push("the first eigenvalue is excluded".into());
    }
    if p % 2 == 1 {
        notes.push(format!("the count on the {sign} side is {p}, not even"));
    }
    Ok((notes.is_empty(), notes))
}

/// What a bounded `C(±λ_{m₀})` would have to satisfy when the count on its
/// own side is even.
pub fn bounded_necessary(
    config: &SystemConfig,
    spectrum: &Spectrum,
    m0: usize,
    sign: Sign,
    tol: &Tolerances,
) -> Result<Certificate> {
    check_spectrum(config, spectrum)?;
    let set = signed_candidate_set(&spectrum.records, config.p_minus, config.p_plus)?;
    let subject =
        *set.iter()
            .find(|c| c.sign == sign && c.index == m0)
            .ok_or(Error::IndexOutOfRange {
                m0,
                len: spectrum.records.len(),
            })?;
    let index = index_of(config, spectrum, &subject)?;
    let (met, notes) = necessary_hypothesis(config, m0, sign)?;
    let mut details = NecessaryDetails {
        m0,
        sign,
        hypothesis_met: met,
        notes,
        conditions: Vec::new(),
        conclusion: None,
    };
    let verdict = if met {
        let opp = sign.opposite();
        let q = config.count_for(opp);
        let name = match opp {
            Sign::Positive => "p_minus",
            Sign::Negative => "p_plus",
        };
        let odd = q % 2 == 1;
        details.conditions.push(Condition {
            statement: format!("{name} = {q} is odd"),
            status: if odd {
                ConditionStatus::Satisfied
            } else {
                ConditionStatus::Violated
            },
        });
        details.conditions.push(Condition {
            statement: format!(
                "C({}lambda_{m0}) meets {{0}} x {}sigma",
                sign.symbol(),
                opp.symbol()
            ),
            status: ConditionStatus::Required,
        });
        details.conclusion = Some(if odd {
            Conclusion::ConditionsEmitted
        } else {
            Conclusion::BoundednessImpossible
        });
        Verdict::Proved
    } else {
        Verdict::HypothesisNotMet
    };
    let cert = Certificate::assemble(
        CertificateKind::NecessaryConditions,
        *config,
        Subject::Eigenvalue(subject),
        vec![Evidence::new(subject, index)],
        verdict,
        tol,
        Details::NecessaryConditions(details),
    );
    if met && !cert.sum.classify().in_minus_cone() {
        return Err(Error::Internal(format!(
            "index {} with an even count is not in the minus cone",
            cert.sum
        )));
    }
    Ok(cert)
}

fn symmetry_verdict(gamma_set: &[u32]) -> Verdict {
    if gamma_set.contains(&0) {
        Verdict::Inconclusive
    } else {
        Verdict::Proved
    }
}

/// Symmetry breaking at `±λ_{m₀}` is proved when the eigenspace has no
/// `SO(n)`-fixed vectors, i.e. mode 0 does not contribute.
pub fn symmetry_breaking(
    config: &SystemConfig,
    spectrum: &Spectrum,
    m0: usize,
    sign: Sign,
    tol: &Tolerances,
) -> Result<Certificate> {
    check_spectrum(config, spectrum)?;
    config.require_side(sign)?;
    let record = spectrum.record(m0)?;
    let verdict = symmetry_verdict(&record.gamma_set);
    let even_m0 = spectrum.is_hemisphere().then_some(m0 % 2 == 0);
    if let Some(even) = even_m0 {
        if even != (verdict == Verdict::Proved) {
            return Err(Error::Internal(format!(
                "hemisphere record {m0} with modes {:?} breaks the parity rule",
                record.gamma_set
            )));
        }
    }
    let subject = SignedEigenvalue {
        sign,
        index: m0,
        lambda: record.lambda,
    };
    let index = index_of(config, spectrum, &subject)?;
    Ok(Certificate::assemble(
        CertificateKind::SymmetryBreaking,
        *config,
        Subject::Eigenvalue(subject),
        vec![Evidence::new(subject, index)],
        verdict,
        tol,
        Details::SymmetryBreaking(SymmetryDetails {
            m0,
            gamma_set: record.gamma_set.clone(),
            even_m0,
        }),
    ))
}
