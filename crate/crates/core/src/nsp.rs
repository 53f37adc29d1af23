//! Nullspace-property certification, the absolute-value bridge from
//! nullspace vectors to pseudo-codewords, and the recovery-guarantee bounds.

use rayon::prelude::*;
use serde::Serialize;

use crate::cone::{cone_contains, Membership};
use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{solve_lp, LinearProgram, LpSolution, Relation};
use crate::matrices::{subsets_of_size, BinaryMatrix, RealVector, SupportSet};
use crate::pseudoweight::{min_pseudoweight, MinPseudoWeight, PseudoWeightKind};
use crate::rational::Rational;

/// Largest number of sign-pattern programs [`check_nsp_k`] will solve.
pub const NSP_LP_GUARD: usize = 1 << 17;

/// Worst case of `‖ν_S‖₁ / ‖ν_S̄‖₁` over the nonzero nullspace vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NspRatio {
    /// The nullspace is `{0}`.
    TrivialNullspace,
    /// Some nonzero nullspace vector vanishes off `S`.
    Infinite { nu: RealVector },
    /// The maximum ratio and a nullspace vector attaining it.
    Finite { ratio: Rational, nu: RealVector },
}

/// For each sign pattern `σ` on `S` (first sign fixed, by `ν → −ν` symmetry)
/// solves `max Σ_{i∈S} σ_i ν_i` over `ν = B·z` with `‖ν_S̄‖₁ ≤ 1`, where `B` is
/// a nullspace basis. The largest optimum is the worst ratio. The programs
/// are bounded because a nullspace vector vanishing off `S` is excluded first.
pub fn nsp_ratio(h: &BinaryMatrix, s: &SupportSet) -> Result<NspRatio> {
    let n = h.cols();
    if s.universe() != n {
        return Err(Error::LengthMismatch { expected: n, found: s.universe() });
    }
    let basis = h.real_nullspace_basis();
    if basis.is_empty() {
        return Ok(NspRatio::TrivialNullspace);
    }
    let inner = linalg::nullspace(h.rational_columns(s.indices()), s.len());
    if let Some(u) = inner.first() {
        let mut nu = RealVector::zeros(n);
        for (i, v) in s.iter().zip(u) {
            nu.0[i] = v.clone();
        }
        return Ok(NspRatio::Infinite { nu });
    }
    if s.is_empty() {
        return Ok(NspRatio::Finite { ratio: Rational::default(), nu: basis[0].clone() });
    }

    let d = basis.len();
    let outside = s.complement();
    let k = s.len();
    let patterns: Vec<u64> = (0..1u64 << (k - 1)).collect();
    let results: Vec<Result<(Rational, RealVector)>> = patterns
        .par_iter()
        .map(|&mask| {
            let sign = |pos: usize| if pos > 0 && mask >> (pos - 1) & 1 == 1 { -1 } else { 1 };
            // Variables: z (free, d of them), then t (one per coordinate off S).
            let nv = d + outside.len();
            let mut obj = vec![Rational::default(); nv];
            for (pos, i) in s.iter().enumerate() {
                for (c, b) in obj.iter_mut().zip(&basis) {
                    if !b[i].is_zero() {
                        *c -= Rational::from_integer(sign(pos)) * &b[i];
                    }
                }
            }
            let mut p = LinearProgram::minimize(obj);
            for j in 0..d {
                p.set_free(j);
            }
            for (t, i) in outside.iter().enumerate() {
                let row: Vec<Rational> = basis.iter().map(|b| b[i].clone()).collect();
                for sgn in [1i64, -1] {
                    let mut coeffs: Vec<Rational> = row.iter().map(|v| v * Rational::from_integer(sgn)).collect();
                    coeffs.resize(nv, Rational::default());
                    coeffs[d + t] = Rational::from_integer(-1);
                    p.add_constraint(coeffs, Relation::Le, Rational::default());
                }
            }
            let mut mass = vec![Rational::default(); nv];
            for m in mass.iter_mut().skip(d) {
                *m = Rational::from_integer(1);
            }
            p.add_constraint(mass, Relation::Le, Rational::from_integer(1));
            match solve_lp(&p)? {
                LpSolution::Optimal { point, objective, .. } => {
                    let nu: RealVector =
                        (0..n).map(|i| basis.iter().zip(&point).map(|(b, z)| &b[i] * z).sum()).collect();
                    Ok((-objective, nu))
                }
                other => Err(Error::Soundness(format!("sign-pattern program ended {:?}", other.status()))),
            }
        })
        .collect();
    let mut best: Option<(Rational, RealVector)> = None;
    for r in results {
        let (value, nu) = r?;
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, nu));
        }
    }
    let (ratio, nu) = best.expect("at least one sign pattern");
    Ok(NspRatio::Finite { ratio, nu })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
}

/// A nullspace vector violating `C·‖ν_S‖₁ ≤ ‖ν_S̄‖₁` (or its strict form).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NspCertificate {
    pub nu: RealVector,
    pub support: SupportSet,
    /// `C·‖ν_S‖₁`
    pub lhs: Rational,
    /// `‖ν_S̄‖₁`
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NspReport {
    pub verdict: Verdict,
    pub c: Rational,
    pub strict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<NspCertificate>,
}

impl NspReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

fn violates(lhs: &Rational, rhs: &Rational, strict: bool) -> bool {
    if strict {
        lhs >= rhs
    } else {
        lhs > rhs
    }
}

fn certify(h: &BinaryMatrix, s: &SupportSet, c: &Rational, strict: bool, nu: RealVector) -> Result<NspReport> {
    let lhs = c * &nu.l1_on(s);
    let rhs = nu.l1_on(&s.complement());
    if nu.is_zero() || !h.syndrome_real(&nu)?.is_zero() || !violates(&lhs, &rhs, strict) {
        return Err(Error::Soundness(format!("certificate {nu} does not violate the nullspace property")));
    }
    Ok(NspReport {
        verdict: Verdict::Fails,
        c: c.clone(),
        strict,
        certificate: Some(NspCertificate { nu, support: s.clone(), lhs, rhs }),
    })
}

/// Decides whether `C·‖ν_S‖₁ ≤ ‖ν_S̄‖₁` (or `<` when `strict`) holds for every
/// nonzero `ν` in the real nullspace of `H`.
pub fn check_nsp_support(h: &BinaryMatrix, s: &SupportSet, c: &Rational, strict: bool) -> Result<NspReport> {
    if c.is_negative() {
        return Err(Error::InvalidArgument("the constant C must be nonnegative".into()));
    }
    let holds = NspReport { verdict: Verdict::Holds, c: c.clone(), strict, certificate: None };
    match nsp_ratio(h, s)? {
        NspRatio::TrivialNullspace => Ok(holds),
        NspRatio::Infinite { nu } => {
            if strict || c.is_positive() {
                certify(h, s, c, strict, nu)
            } else {
                Ok(holds)
            }
        }
        NspRatio::Finite { ratio, nu } => {
            // Scaled so that ‖ν_S̄‖₁ = 1, the left side is C·ratio.
            if violates(&(c * &ratio), &Rational::from_integer(1), strict) {
                certify(h, s, c, strict, nu)
            } else {
                Ok(holds)
            }
        }
    }
}

/// Decides the property for every support of size at most `k`.
///
/// Only supports of size exactly `k` are checked: removing an index from `S`
/// moves its mass from the left side to the right side, so a violation on a
/// smaller support persists on any superset of size `k`.
pub fn check_nsp_k(h: &BinaryMatrix, k: usize, c: &Rational, strict: bool) -> Result<NspReport> {
    let n = h.cols();
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds the block length {n}")));
    }
    let programs = binomial(n, k).saturating_mul(1usize << k.saturating_sub(1));
    if programs > NSP_LP_GUARD {
        return Err(Error::GuardExceeded { what: "sign-pattern program count", value: programs, limit: NSP_LP_GUARD });
    }
    for support in subsets_of_size(n, k) {
        let s = SupportSet::new(n, support)?;
        let report = check_nsp_support(h, &s, c, strict)?;
        if !report.holds() {
            return Ok(report);
        }
    }
    Ok(NspReport { verdict: Verdict::Holds, c: c.clone(), strict, certificate: None })
}

/// The worst ratio over all supports of size `k`, or `None` when some support
/// admits a nullspace vector vanishing off it. `NSP≤(k, C)` holds exactly
/// when `C·ratio ≤ 1`.
pub fn nsp_max_ratio(h: &BinaryMatrix, k: usize) -> Result<Option<Rational>> {
    let n = h.cols();
    let mut worst = Rational::default();
    for support in subsets_of_size(n, k) {
        match nsp_ratio(h, &SupportSet::new(n, support)?)? {
            NspRatio::TrivialNullspace => return Ok(Some(Rational::default())),
            NspRatio::Infinite { .. } => return Ok(None),
            NspRatio::Finite { ratio, .. } => worst = worst.max(ratio),
        }
    }
    Ok(Some(worst))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `|ν|` for a nullspace vector together with its verified cone membership.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    pub omega: RealVector,
    pub membership: Membership,
    pub support_preserved: bool,
}

impl BridgeReport {
    pub fn is_sound(&self) -> bool {
        self.membership.is_member() && self.support_preserved
    }
}

pub fn bridge_map(h: &BinaryMatrix, nu: &RealVector) -> Result<BridgeReport> {
    let s = h.syndrome_real(nu)?;
    if let Some(row) = s.iter().position(|v| !v.is_zero()) {
        return Err(Error::NotInNullspace { row, value: s[row].clone() });
    }
    let omega = nu.abs();
    let membership = cone_contains(h, &omega)?;
    let support_preserved = omega.support() == nu.support();
    Ok(BridgeReport { omega, membership, support_preserved })
}

/// Both sides of "minimum BSC pseudo-weight above `2k` implies `NSP<(k, 1)`".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationReport {
    pub k: usize,
    /// `None` when the cone is trivial (minimum taken as +∞).
    pub min_bsc: Option<Rational>,
    pub premise: bool,
    pub conclusion: bool,
    pub satisfied: bool,
}

pub fn bsc_pw_implies_nsp(h: &BinaryMatrix, k: usize) -> Result<ImplicationReport> {
    let min_bsc = match min_pseudoweight(h, PseudoWeightKind::Bsc)? {
        MinPseudoWeight::ConeTrivial => None,
        MinPseudoWeight::Value { value, .. } => Some(value),
    };
    let premise = min_bsc.as_ref().is_none_or(|w| *w > Rational::from(2 * k));
    let conclusion = check_nsp_k(h, k, &Rational::from_integer(1), true)?.holds();
    let satisfied = !premise || conclusion;
    if !satisfied {
        return Err(Error::Soundness(format!("minimum BSC pseudo-weight exceeds 2k = {} but NSP fails", 2 * k)));
    }
    Ok(ImplicationReport { k, min_bsc, premise, conclusion, satisfied })
}

/// `‖ω_S‖₁ < ‖ω_S̄‖₁`.
pub fn balancedness_check(omega: &RealVector, s: &SupportSet) -> Result<bool> {
    if let Some(index) = omega.first_negative() {
        return Err(Error::NegativeEntry { index });
    }
    if s.universe() != omega.len() {
        return Err(Error::LengthMismatch { expected: omega.len(), found: s.universe() });
    }
    Ok(omega.l1_on(s) < omega.l1_on(&s.complement()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormPair {
    /// `‖e − ê‖₁` against `‖e_S̄‖₁`
    L1L1,
    /// `‖e − ê‖₂` against `‖e_S̄‖₁`
    L2L1,
    /// `‖e − ê‖∞` against `‖e_S̄‖₁`
    LinfL1,
}

/// A valid upper bound on the recovery error of the ℓ1 decoder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GuaranteeBound {
    pub pair: NormPair,
    /// `C` for ℓ1/ℓ1, `C′` otherwise.
    pub constant: Rational,
    pub k: usize,
    /// The factor multiplying `‖e_S̄‖₁`.
    pub factor: Rational,
    pub value: Rational,
    /// False when square roots were replaced by an outward enclosure.
    pub exact: bool,
}

impl GuaranteeBound {
    /// Whether `‖e − ê‖` in this bound's norm is at most the bound.
    pub fn admits(&self, e: &RealVector, estimate: &RealVector) -> bool {
        let d = e.sub(estimate);
        match self.pair {
            NormPair::L1L1 => d.l1() <= self.value,
            NormPair::L2L1 => d.l2_squared() <= self.value.square(),
            NormPair::LinfL1 => d.linf() <= self.value,
        }
    }
}

/// `2·(C+1)/(C−1)·‖e_S̄‖₁`, valid under `NSP≤(|S|, C)` with `C > 1`.
pub fn l1l1_bound(c: &Rational, e: &RealVector, s: &SupportSet) -> Result<GuaranteeBound> {
    let one = Rational::from_integer(1);
    if *c <= one {
        return Err(Error::Hypothesis(format!("C = {c} must exceed 1")));
    }
    let factor = Rational::from_integer(2) * (c + &one) / (c - &one);
    let value = &factor * &e.l1_on(&s.complement());
    Ok(GuaranteeBound { pair: NormPair::L1L1, constant: c.clone(), k: s.len(), factor, value, exact: true })
}

fn check_size(k: usize, s: &SupportSet) -> Result<()> {
    if k == 0 || s.len() != k {
        return Err(Error::Hypothesis(format!("need |S| = k ≥ 1, got |S| = {} and k = {k}", s.len())));
    }
    Ok(())
}

/// `C″/√k·‖e_S̄‖₁` with `C″ = 1/(√(C′/4k) − 1)`, which simplifies to
/// `2/(√C′ − 2√k)·‖e_S̄‖₁`. Irrational roots are enclosed outward so the
/// returned value never understates the bound.
pub fn l2l1_bound(c_prime: &Rational, k: usize, e: &RealVector, s: &SupportSet) -> Result<GuaranteeBound> {
    check_size(k, s)?;
    let kq = Rational::from(k);
    if *c_prime <= Rational::from_integer(4) * &kq {
        return Err(Error::Hypothesis(format!("C′ = {c_prime} must exceed 4k = {}", 4 * k)));
    }
    let two = Rational::from_integer(2);
    let mut bits = 32;
    let (factor, exact) = loop {
        let (c_lo, c_hi) = c_prime.sqrt_enclosure(bits);
        let (k_lo, k_hi) = kq.sqrt_enclosure(bits);
        let denominator = c_lo.clone() - &two * &k_hi;
        if denominator.is_positive() {
            break (&two / &denominator, c_lo == c_hi && k_lo == k_hi);
        }
        bits *= 2;
    };
    let value = &factor * &e.l1_on(&s.complement());
    Ok(GuaranteeBound { pair: NormPair::L2L1, constant: c_prime.clone(), k, factor, value, exact })
}

/// `C″/k·‖e_S̄‖₁` with `C″ = 1/(C′/2k − 1)`, i.e. `2/(C′ − 2k)·‖e_S̄‖₁`.
pub fn linfl1_bound(c_prime: &Rational, k: usize, e: &RealVector, s: &SupportSet) -> Result<GuaranteeBound> {
    check_size(k, s)?;
    let two_k = Rational::from(2 * k);
    if *c_prime <= two_k {
        return Err(Error::Hypothesis(format!("C′ = {c_prime} must exceed 2k = {}", 2 * k)));
    }
    let factor = Rational::from_integer(2) / (c_prime - &two_k);
    let value = &factor * &e.l1_on(&s.complement());
    Ok(GuaranteeBound { pair: NormPair::LinfL1, constant: c_prime.clone(), k, factor, value, exact: true })
}
