//! Randomized experiments checking the decoding theorems trial by trial.
//!
//! Every trial takes its own seed, derived from a base seed and the trial
//! index with [`mix_seed`], so any single row can be re-run in isolation and
//! results do not depend on how trials are scheduled. Sweeps run in
//! parallel and return rows in trial order.

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channels::{llr, mix_seed, transmit, unit_bsc_llr, ChannelSpec, Received};
use crate::decoders::{bec_peel, cc_lpd, cc_mld, cs_backsub, cs_lpd, cs_opt, DecodeResult, DecodeStatus, Peel};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrices::{subsets_of_size, BinaryMatrix, BitVector, RealVector, SupportSet};
use crate::nsp::{bridge_map, check_nsp_k, l1l1_bound, l2l1_bound, linfl1_bound, nsp_max_ratio, NormPair};
use crate::pseudoweight::{min_maxfrac_weight_lp, min_pseudoweight, PseudoWeightKind};
use crate::rational::Rational;

pub fn trial_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Runs `f(i, mix_seed(seed, i))` for `i < trials` in parallel, in order.
pub fn run_trials<T, F>(trials: usize, seed: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, u64) -> Result<T> + Sync,
{
    (0..trials).into_par_iter().map(|i| f(i, mix_seed(seed, i as u64))).collect()
}

/// A nonzero rational `±a/b` with `1 ≤ a ≤ max_num` and `1 ≤ b ≤ max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    let a = rng.random_range(1..=max_num);
    let b = rng.random_range(1..=max_den);
    let v = Rational::new(a, b);
    if rng.random_bool(0.5) {
        -v
    } else {
        v
    }
}

/// An `m × n` matrix with independent entries equal to 1 with probability `density`.
pub fn random_matrix<R: Rng>(rng: &mut R, m: usize, n: usize, density: f64) -> BinaryMatrix {
    let rows: Vec<Vec<u8>> = (0..m).map(|_| (0..n).map(|_| u8::from(rng.random_bool(density))).collect()).collect();
    BinaryMatrix::from_rows(&rows).expect("rectangular")
}

/// A uniformly random subset of `{0, …, n−1}` of size `k`.
pub fn random_support<R: Rng>(rng: &mut R, n: usize, k: usize) -> SupportSet {
    SupportSet::new(n, index::sample(rng, n, k).into_vec()).expect("indices in range")
}

/// A vector with random nonzero rational entries exactly on `support`.
pub fn random_signal<R: Rng>(rng: &mut R, support: &SupportSet) -> RealVector {
    let mut e = RealVector::zeros(support.universe());
    for i in support.iter() {
        e.0[i] = random_rational(rng, 20, 6);
    }
    e
}

/// A uniformly random codeword, as a GF(2) combination of a nullspace basis.
pub fn random_codeword<R: Rng>(rng: &mut R, h: &BinaryMatrix) -> BitVector {
    let n = h.cols();
    let mut x = vec![0u8; n];
    for b in linalg::gf2_nullspace(&h.dense_rows(), n) {
        if rng.random_bool(0.5) {
            for (xi, bi) in x.iter_mut().zip(&b) {
                *xi ^= bi;
            }
        }
    }
    BitVector(x)
}

/// LLRs `+1` off `flips` and `−1` on it: the all-zero codeword sent over a
/// BSC that flipped exactly the positions in `flips`.
pub fn flip_llr(flips: &SupportSet) -> RealVector {
    let mut bits = BitVector::zeros(flips.universe());
    for i in flips.iter() {
        bits.0[i] = 1;
    }
    unit_bsc_llr(&bits)
}

fn decodes_to_zero(r: &DecodeResult) -> bool {
    r.is_success() && r.estimate.as_ref().is_some_and(RealVector::is_zero)
}

fn recovers(r: &DecodeResult, e: &RealVector) -> bool {
    r.is_success() && r.estimate.as_ref() == Some(e)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BridgeRow {
    #[serde(rename = "matrix_index")]
    pub matrix: usize,
    pub trial: usize,
    pub seed: u64,
    pub m: usize,
    pub n: usize,
    pub support_size: usize,
    pub member: bool,
    pub support_preserved: bool,
}

impl BridgeRow {
    pub fn violated(&self) -> bool {
        !(self.member && self.support_preserved)
    }
}

/// A random nonzero rational combination of the real nullspace basis.
pub fn random_nullspace_vector<R: Rng>(rng: &mut R, basis: &[RealVector]) -> Option<RealVector> {
    let n = basis.first()?.len();
    loop {
        let mut nu = RealVector::zeros(n);
        for b in basis {
            if rng.random_bool(0.8) {
                nu = nu.add(&b.scale(&random_rational(rng, 12, 7)));
            }
        }
        if !nu.is_zero() {
            return Some(nu);
        }
    }
}

/// Maps a random nullspace vector of `h` through `|·|` and checks cone
/// membership and support preservation. `None` if the nullspace is trivial.
pub fn bridge_trial(
    h: &BinaryMatrix,
    basis: &[RealVector],
    matrix: usize,
    trial: usize,
    seed: u64,
) -> Result<Option<BridgeRow>> {
    let mut rng = trial_rng(seed);
    let Some(nu) = random_nullspace_vector(&mut rng, basis) else { return Ok(None) };
    let report = bridge_map(h, &nu)?;
    Ok(Some(BridgeRow {
        matrix,
        trial,
        seed,
        m: h.rows(),
        n: h.cols(),
        support_size: nu.l0(),
        member: report.membership.is_member(),
        support_preserved: report.support_preserved,
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceRow {
    pub support: Vec<usize>,
    pub pattern: usize,
    pub seed: u64,
    pub lpd: DecodeStatus,
    pub opt: DecodeStatus,
    /// Both decoders tie; excluded from the comparison.
    pub excluded: bool,
    pub agree: bool,
    pub recovered: bool,
}

/// Compares the ℓ1 decoder with the sparsest-solution decoder on a random
/// signal supported exactly on `support`.
pub fn equivalence_trial(
    h: &BinaryMatrix,
    k_max: usize,
    support: &SupportSet,
    pattern: usize,
    seed: u64,
) -> Result<EquivalenceRow> {
    let mut rng = trial_rng(seed);
    let e = random_signal(&mut rng, support);
    let s = h.syndrome_real(&e)?;
    let lpd = cs_lpd(h, &s)?;
    let opt = cs_opt(h, &s, k_max)?;
    let excluded = lpd.status == DecodeStatus::Tie && opt.status == DecodeStatus::Tie;
    let agree = excluded || (lpd.status == opt.status && lpd.estimate == opt.estimate);
    Ok(EquivalenceRow {
        support: support.indices().to_vec(),
        pattern,
        seed,
        lpd: lpd.status,
        opt: opt.status,
        excluded,
        agree,
        recovered: recovers(&lpd, &e),
    })
}

/// Every support of size `1..=k` times `patterns` random magnitude patterns.
pub fn equivalence_sweep(h: &BinaryMatrix, k: usize, patterns: usize, seed: u64) -> Result<Vec<EquivalenceRow>> {
    let n = h.cols();
    let cases: Vec<(SupportSet, usize)> = (1..=k)
        .flat_map(|size| subsets_of_size(n, size))
        .flat_map(|s| {
            let s = SupportSet::new(n, s).expect("indices in range");
            (0..patterns).map(move |p| (s.clone(), p))
        })
        .collect();
    run_trials(cases.len(), seed, |i, trial_seed| equivalence_trial(h, k, &cases[i].0, cases[i].1, trial_seed))
}

/// Whether CC-LPD decodes the all-zero codeword under flips at `flips`.
pub fn cc_corrects(h: &BinaryMatrix, flips: &SupportSet) -> Result<bool> {
    Ok(decodes_to_zero(&cc_lpd(h, &flip_llr(flips))?))
}

/// All flip sets under which CC-LPD returns the all-zero codeword, up to
/// `max_size` flips.
///
/// The family is closed under taking subsets: success means `⟨λ, ω⟩ > 0`
/// for every nonzero ω in the fundamental cone, and removing a flip only
/// raises λ. So sets of size `t + 1` are tested only when all their
/// `t`-subsets succeed.
pub fn correctable_flip_sets(h: &BinaryMatrix, max_size: usize) -> Result<Vec<SupportSet>> {
    let n = h.cols();
    let empty = SupportSet::empty(n);
    if !cc_corrects(h, &empty)? {
        return Ok(Vec::new());
    }
    let mut all = vec![empty];
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_size.min(n) {
        let known: HashSet<&Vec<usize>> = level.iter().collect();
        let candidates: Vec<Vec<usize>> = level
            .iter()
            .flat_map(|s| {
                let start = s.last().map_or(0, |&l| l + 1);
                (start..n).map(move |i| {
                    let mut t = s.clone();
                    t.push(i);
                    t
                })
            })
            .filter(|t| {
                (0..t.len()).all(|drop| {
                    let sub: Vec<usize> = t.iter().enumerate().filter(|&(j, _)| j != drop).map(|(_, &v)| v).collect();
                    known.contains(&sub)
                })
            })
            .collect();
        let verdicts: Vec<bool> =
            candidates.par_iter().map(|t| cc_corrects(h, &SupportSet::new(n, t.clone())?)).collect::<Result<_>>()?;
        let next: Vec<Vec<usize>> =
            candidates.into_iter().zip(verdicts).filter(|(_, ok)| *ok).map(|(t, _)| t).collect();
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().map(|t| SupportSet::new(n, t.clone()).expect("indices in range")));
        level = next;
    }
    Ok(all)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TranslateRow {
    pub flips: Vec<usize>,
    pub seed: u64,
    pub cc_corrects: bool,
    pub signals: usize,
    pub recovered: usize,
}

impl TranslateRow {
    /// CC-LPD corrected the flips but some signal on the same support was missed.
    pub fn violated(&self) -> bool {
        self.cc_corrects && self.recovered < self.signals
    }
}

/// Decodes flips at `flips` with CC-LPD and, when that succeeds, recovers
/// `signals` random real signals supported on `flips` with CS-LPD.
pub fn translate_trial(h: &BinaryMatrix, flips: &SupportSet, signals: usize, seed: u64) -> Result<TranslateRow> {
    let corrects = cc_corrects(h, flips)?;
    let mut rng = trial_rng(seed);
    let mut recovered = 0;
    if corrects {
        for _ in 0..signals {
            let e = random_signal(&mut rng, flips);
            if recovers(&cs_lpd(h, &h.syndrome_real(&e)?)?, &e) {
                recovered += 1;
            }
        }
    }
    Ok(TranslateRow {
        flips: flips.indices().to_vec(),
        seed,
        cc_corrects: corrects,
        signals: if corrects { signals } else { 0 },
        recovered,
    })
}

/// The premise constant certified for a guarantee theorem, or `None` when
/// the matrix does not satisfy the hypothesis for this `k`.
///
/// ℓ1/ℓ1 uses the largest `C` with `NSP≤(k, C)`; ℓ2/ℓ1 and ℓ∞/ℓ1 use the
/// minimum AWGNC pseudo-weight and the minimum max-fractional weight.
pub fn certified_constant(h: &BinaryMatrix, pair: NormPair, k: usize) -> Result<Option<Rational>> {
    let kq = Rational::from(k);
    Ok(match pair {
        NormPair::L1L1 => match nsp_max_ratio(h, k)? {
            Some(r) if r.is_positive() => {
                let c = r.recip();
                let report = check_nsp_k(h, k, &c, false)?;
                if !report.holds() {
                    return Err(Error::Soundness(format!("NSP≤({k}, {c}) fails at its own maximum ratio")));
                }
                (c > Rational::from_integer(1)).then_some(c)
            }
            _ => None,
        },
        NormPair::L2L1 => min_pseudoweight(h, PseudoWeightKind::Awgnc)?
            .value()
            .filter(|w| **w > Rational::from_integer(4) * &kq)
            .cloned(),
        NormPair::LinfL1 => {
            min_maxfrac_weight_lp(h)?.value().filter(|w| **w > Rational::from_integer(2) * &kq).cloned()
        }
    })
}

/// Whether `constant` satisfies the guarantee hypothesis given the certified value.
pub fn premise_admits(pair: NormPair, k: usize, constant: &Rational, certified: &Rational) -> bool {
    let kq = Rational::from(k);
    let floor = match pair {
        NormPair::L1L1 => Rational::from_integer(1),
        NormPair::L2L1 => Rational::from_integer(4) * &kq,
        NormPair::LinfL1 => Rational::from_integer(2) * &kq,
    };
    *constant > floor && constant <= certified
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GuaranteeRow {
    pub trial: usize,
    pub seed: u64,
    pub pair: NormPair,
    pub k: usize,
    pub constant: Rational,
    pub tail: Rational,
    pub bound: Rational,
    pub bound_approx: f64,
    pub error_approx: f64,
    pub tie: bool,
    pub violated: bool,
}

/// A signal with `k` large entries and small noise elsewhere.
pub fn approximately_sparse<R: Rng>(rng: &mut R, n: usize, k: usize) -> RealVector {
    let head = random_support(rng, n, k);
    (0..n)
        .map(|i| {
            if head.contains(i) {
                let v = Rational::new(rng.random_range(20..=80), rng.random_range(1..=4));
                if rng.random_bool(0.5) {
                    -v
                } else {
                    v
                }
            } else if rng.random_bool(0.5) {
                Rational::default()
            } else {
                random_rational(rng, 3, 12)
            }
        })
        .collect()
}

fn error_norm(pair: NormPair, d: &RealVector) -> f64 {
    match pair {
        NormPair::L1L1 => d.l1().to_f64(),
        NormPair::L2L1 => d.l2_squared().to_f64().sqrt(),
        NormPair::LinfL1 => d.linf().to_f64(),
    }
}

/// One recovery with the bound of `pair` at `constant`, with `S` the
/// top-`k` support of the signal. Every optimum of a tie is checked.
pub fn guarantee_trial(
    h: &BinaryMatrix,
    pair: NormPair,
    k: usize,
    constant: &Rational,
    trial: usize,
    seed: u64,
) -> Result<GuaranteeRow> {
    let mut rng = trial_rng(seed);
    let e = approximately_sparse(&mut rng, h.cols(), k);
    let s = e.top_k_support(k);
    let bound = match pair {
        NormPair::L1L1 => l1l1_bound(constant, &e, &s)?,
        NormPair::L2L1 => l2l1_bound(constant, k, &e, &s)?,
        NormPair::LinfL1 => linfl1_bound(constant, k, &e, &s)?,
    };
    let r = cs_lpd(h, &h.syndrome_real(&e)?)?;
    let estimates: Vec<&RealVector> = r.estimate.iter().chain(r.witness.iter()).collect();
    if estimates.is_empty() {
        return Err(Error::Soundness("the ℓ1 decoder found no solution of a consistent system".into()));
    }
    let violated = estimates.iter().any(|x| !bound.admits(&e, x));
    let error_approx = estimates.iter().map(|x| error_norm(pair, &e.sub(x))).fold(0.0, f64::max);
    Ok(GuaranteeRow {
        trial,
        seed,
        pair,
        k,
        constant: constant.clone(),
        tail: e.l1_on(&s.complement()),
        bound_approx: bound.value.to_f64(),
        bound: bound.value,
        error_approx,
        tie: r.status == DecodeStatus::Tie,
        violated,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeelRow {
    pub trial: usize,
    pub seed: u64,
    pub m: usize,
    pub n: usize,
    pub support: Vec<usize>,
    pub bec_resolved: bool,
    pub cs_resolved: bool,
    pub bec_residual: Vec<usize>,
    pub cs_residual: Vec<usize>,
    /// Resolved values equal the transmitted codeword and the signal.
    pub values_correct: bool,
}

impl PeelRow {
    pub fn agree(&self) -> bool {
        self.bec_resolved == self.cs_resolved && self.bec_residual == self.cs_residual
    }
}

/// Erases `support` from a random codeword and peels it; recovers a random
/// signal on the same support by back-substitution.
pub fn peel_trial(h: &BinaryMatrix, support: &SupportSet, trial: usize, seed: u64) -> Result<PeelRow> {
    let mut rng = trial_rng(seed);
    let x = random_codeword(&mut rng, h);
    let observed: Vec<Option<u8>> = (0..h.cols()).map(|i| (!support.contains(i)).then_some(x[i])).collect();
    let e = random_signal(&mut rng, support);
    let bec = bec_peel(h, &observed)?;
    let cs = cs_backsub(h, &h.syndrome_real(&e)?, support)?;
    let residual = |r: Option<&SupportSet>| r.map(|s| s.indices().to_vec()).unwrap_or_default();
    let values_correct = match (&bec, &cs) {
        (Peel::Resolved { value: a }, Peel::Resolved { value: b }) => *a == x && *b == e,
        _ => true,
    };
    Ok(PeelRow {
        trial,
        seed,
        m: h.rows(),
        n: h.cols(),
        support: support.indices().to_vec(),
        bec_resolved: bec.residual().is_none(),
        cs_resolved: cs.residual().is_none(),
        bec_residual: residual(bec.residual()),
        cs_residual: residual(cs.residual()),
        values_correct,
    })
}

/// A random matrix with `m ≤ 20`, `n ≤ 30` and density in `[0.2, 0.5]`,
/// plus a random support, for the peeling comparison.
pub fn random_peel_instance<R: Rng>(rng: &mut R) -> (BinaryMatrix, SupportSet) {
    let n = rng.random_range(4..=30);
    let m = rng.random_range(2..=20.min(n));
    let density = rng.random_range(0.2..=0.5);
    let h = random_matrix(rng, m, n, density);
    let size = rng.random_range(1..=m.min(n));
    let s = random_support(rng, n, size);
    (h, s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichRow {
    pub trial: usize,
    pub seed: u64,
    pub channel: String,
    pub errors: usize,
    pub lpd: DecodeStatus,
    pub lpd_objective: Rational,
    pub mld_objective: Rational,
    pub violated: bool,
}

/// Sends a random codeword over `ch` and compares the LP and ML objectives.
/// BSC LLRs are scaled to `±1`.
pub fn sandwich_trial(h: &BinaryMatrix, ch: &ChannelSpec, trial: usize, seed: u64) -> Result<SandwichRow> {
    let mut rng = trial_rng(seed);
    let x = random_codeword(&mut rng, h);
    let out = transmit(&x, ch, mix_seed(seed, u64::MAX))?;
    let lambda = match (&out.received, ch) {
        (Received::Bits(y), ChannelSpec::Bsc { .. }) => unit_bsc_llr(y),
        _ => llr(&out, ch)?,
    };
    let lpd = cc_lpd(h, &lambda)?;
    let mld = cc_mld(h, &lambda)?;
    let (lo, hi) = (lpd.objective.clone().expect("optimal"), mld.objective.clone().expect("optimal"));
    let violated = lo > hi || (lpd.is_success() && lo != hi);
    Ok(SandwichRow {
        trial,
        seed,
        channel: ch.to_string(),
        errors: out.errors.len(),
        lpd: lpd.status,
        lpd_objective: lo,
        mld_objective: hi,
        violated,
    })
}
