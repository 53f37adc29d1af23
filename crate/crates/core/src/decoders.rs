//! Sparse-recovery and channel decoders: the two LP decoders, their
//! brute-force oracles, and the back-substitution decoders for erasures and
//! known supports.

use serde::Serialize;

use crate::cone::polytope_inequalities;
use crate::error::{Error, Result};
use crate::linalg::{self, Solve};
use crate::lp::{solve_lp_unique, LinearProgram, LpSolution, Relation, Uniqueness};
use crate::matrices::{subsets_of_size, BinaryMatrix, BitVector, RealVector, SupportSet};
use crate::rational::Rational;

/// Log-likelihood ratios `λ_i = log(P(y_i|0)/P(y_i|1))`, always finite.
pub type LlrVector = RealVector;

/// Largest block length accepted by [`cs_opt`].
pub const CS_OPT_MAX_N: usize = 20;
/// Largest sparsity searched by [`cs_opt`].
pub const CS_OPT_MAX_K: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodeStatus {
    /// The optimum is unique (and integral, for channel decoding).
    Success,
    /// The unique LP optimum has a coordinate strictly between 0 and 1.
    Fractional,
    /// At least two distinct optimal points exist.
    Tie,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    pub estimate: Option<RealVector>,
    pub objective: Option<Rational>,
    /// A second optimum, present exactly when the status is `Tie`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<RealVector>,
}

impl DecodeResult {
    pub fn is_success(&self) -> bool {
        self.status == DecodeStatus::Success
    }

    fn infeasible() -> Self {
        DecodeResult { status: DecodeStatus::Infeasible, estimate: None, objective: None, witness: None }
    }

    /// The estimate as a bit vector when it is 0/1-valued.
    pub fn estimate_bits(&self) -> Option<BitVector> {
        let e = self.estimate.as_ref()?;
        e.iter()
            .map(|v| {
                if v.is_zero() {
                    Some(0)
                } else if v.is_one() {
                    Some(1)
                } else {
                    None
                }
            })
            .collect::<Option<Vec<u8>>>()
            .map(BitVector)
    }
}

/// `min ‖e‖₁` subject to `H·e = s`, with `e = u − v` and `u, v ≥ 0`.
///
/// At an optimum `u_i·v_i = 0`, so distinct optimal `(u, v)` give distinct
/// `e` and the solver's exact uniqueness check decides ties for `e`.
pub fn cs_lpd(h: &BinaryMatrix, s: &RealVector) -> Result<DecodeResult> {
    let (m, n) = (h.rows(), h.cols());
    if s.len() != m {
        return Err(Error::LengthMismatch { expected: m, found: s.len() });
    }
    let mut p = LinearProgram::minimize(vec![Rational::from_integer(1); 2 * n]);
    for (j, support) in h.row_supports().iter().enumerate() {
        let mut terms = Vec::with_capacity(2 * support.len());
        for &i in support {
            terms.push((i, Rational::from_integer(1)));
            terms.push((n + i, Rational::from_integer(-1)));
        }
        p.add_sparse(&terms, Relation::Eq, s[j].clone());
    }
    let fold = |x: &[Rational]| -> RealVector { (0..n).map(|i| &x[i] - &x[n + i]).collect() };
    Ok(match solve_lp_unique(&p)? {
        LpSolution::Infeasible { .. } => DecodeResult::infeasible(),
        LpSolution::Unbounded { .. } => unreachable!("the ℓ1 objective is bounded below"),
        LpSolution::Optimal { point, objective, uniqueness } => {
            let estimate = fold(&point);
            match uniqueness {
                Uniqueness::Alternative(w) => DecodeResult {
                    status: DecodeStatus::Tie,
                    estimate: Some(estimate),
                    objective: Some(objective),
                    witness: Some(fold(&w)),
                },
                _ => DecodeResult {
                    status: DecodeStatus::Success,
                    estimate: Some(estimate),
                    objective: Some(objective),
                    witness: None,
                },
            }
        }
    })
}

/// Sparsest solution of `H·e = s` by enumerating supports of size
/// `0, 1, …, k_max`. The objective is the sparsity.
///
/// At the minimal sparsity every consistent support has a unique solution
/// with full support, otherwise a sparser solution would exist. The estimate
/// comes from the lexicographically smallest consistent support; a second
/// distinct solution makes the result a tie.
pub fn cs_opt(h: &BinaryMatrix, s: &RealVector, k_max: usize) -> Result<DecodeResult> {
    let (m, n) = (h.rows(), h.cols());
    if s.len() != m {
        return Err(Error::LengthMismatch { expected: m, found: s.len() });
    }
    if n > CS_OPT_MAX_N {
        return Err(Error::GuardExceeded { what: "block length", value: n, limit: CS_OPT_MAX_N });
    }
    if k_max > CS_OPT_MAX_K {
        return Err(Error::GuardExceeded { what: "sparsity", value: k_max, limit: CS_OPT_MAX_K });
    }
    if s.is_zero() {
        return Ok(DecodeResult {
            status: DecodeStatus::Success,
            estimate: Some(RealVector::zeros(n)),
            objective: Some(Rational::default()),
            witness: None,
        });
    }
    for k in 1..=k_max.min(n) {
        let mut found: Option<RealVector> = None;
        for support in subsets_of_size(n, k) {
            let cols = h.rational_columns(&support);
            let lift = |x: &[Rational]| {
                let mut e = RealVector::zeros(n);
                for (&i, v) in support.iter().zip(x) {
                    e.0[i] = v.clone();
                }
                e
            };
            let (solution, alternative) = match linalg::solve(&cols, s, k) {
                Solve::Inconsistent => continue,
                Solve::Unique(x) => (lift(&x), None),
                Solve::Many(x, _) => {
                    let null = linalg::nullspace(cols.clone(), k);
                    let shifted: Vec<Rational> = x.iter().zip(&null[0]).map(|(a, b)| a + b).collect();
                    (lift(&x), Some(lift(&shifted)))
                }
            };
            let objective = Some(Rational::from(k));
            match (&found, alternative) {
                (None, Some(w)) => {
                    return Ok(DecodeResult {
                        status: DecodeStatus::Tie,
                        estimate: Some(solution),
                        objective,
                        witness: Some(w),
                    })
                }
                (None, None) => found = Some(solution),
                (Some(first), _) if *first != solution => {
                    return Ok(DecodeResult {
                        status: DecodeStatus::Tie,
                        estimate: Some(first.clone()),
                        objective,
                        witness: Some(solution),
                    })
                }
                (Some(_), _) => {}
            }
        }
        if let Some(e) = found {
            return Ok(DecodeResult {
                status: DecodeStatus::Success,
                estimate: Some(e),
                objective: Some(Rational::from(k)),
                witness: None,
            });
        }
    }
    Err(Error::NoSolutionWithinK { k_max })
}

/// `min ⟨λ, x⟩` over the fundamental polytope.
pub fn cc_lpd(h: &BinaryMatrix, llr: &LlrVector) -> Result<DecodeResult> {
    let n = h.cols();
    h.check_len(llr.len())?;
    let polytope = polytope_inequalities(h)?;
    let mut p = LinearProgram::minimize(llr.0.clone());
    for j in 0..n {
        p.set_bounds(j, Some(Rational::default()), Some(Rational::from_integer(1)));
    }
    for c in polytope.check_constraints() {
        p.add_constraint(c.coeffs, c.relation, c.rhs);
    }
    Ok(match solve_lp_unique(&p)? {
        LpSolution::Optimal { point, objective, uniqueness } => {
            let estimate = RealVector(point);
            let (status, witness) = match uniqueness {
                Uniqueness::Alternative(w) => (DecodeStatus::Tie, Some(RealVector(w))),
                _ if !estimate.is_integral() => (DecodeStatus::Fractional, None),
                _ => (DecodeStatus::Success, None),
            };
            DecodeResult { status, estimate: Some(estimate), objective: Some(objective), witness }
        }
        LpSolution::Infeasible { .. } | LpSolution::Unbounded { .. } => {
            return Err(Error::Soundness("the fundamental polytope contains 0 and is bounded".into()))
        }
    })
}

/// `min ⟨λ, x⟩` over all codewords by enumeration.
pub fn cc_mld(h: &BinaryMatrix, llr: &LlrVector) -> Result<DecodeResult> {
    h.check_len(llr.len())?;
    let mut best: Option<(Rational, BitVector)> = None;
    let mut witness: Option<BitVector> = None;
    for c in h.enumerate_codewords()? {
        let cost: Rational = c.iter().zip(llr.iter()).filter(|(b, _)| **b == 1).map(|(_, l)| l).sum();
        match &best {
            Some((b, _)) if cost > *b => {}
            Some((b, _)) if cost == *b => {
                witness.get_or_insert(c);
            }
            _ => {
                best = Some((cost, c));
                witness = None;
            }
        }
    }
    let (objective, x) = best.expect("the zero word is always a codeword");
    Ok(DecodeResult {
        status: if witness.is_some() { DecodeStatus::Tie } else { DecodeStatus::Success },
        estimate: Some(RealVector::from(&x)),
        objective: Some(objective),
        witness: witness.map(|w| RealVector::from(&w)),
    })
}

/// Result of a back-substitution decoder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Peel<T> {
    Resolved {
        value: T,
    },
    /// No check has exactly one unresolved position; `residual` is the
    /// stopping set that remains.
    Stuck {
        residual: SupportSet,
    },
}

impl<T> Peel<T> {
    pub fn residual(&self) -> Option<&SupportSet> {
        match self {
            Peel::Resolved { .. } => None,
            Peel::Stuck { residual } => Some(residual),
        }
    }
}

/// Shared schedule: repeatedly resolve the lowest-index check with exactly
/// one unresolved position. `resolve(row, coord)` fixes `coord` from `row`;
/// `verify(row)` checks a fully resolved row. Leaves the stopping set marked
/// in `unknown`.
fn back_substitute(
    h: &BinaryMatrix,
    unknown: &mut [bool],
    mut resolve: impl FnMut(usize, usize),
    mut verify: impl FnMut(usize) -> bool,
) -> Result<()> {
    let mut open: Vec<usize> = h.row_supports().iter().map(|s| s.iter().filter(|&&i| unknown[i]).count()).collect();
    let mut checked = vec![false; h.rows()];
    loop {
        for row in 0..h.rows() {
            if open[row] == 0 && !checked[row] {
                if !verify(row) {
                    return Err(Error::Inconsistent { row });
                }
                checked[row] = true;
            }
        }
        let Some(row) = (0..h.rows()).find(|&r| open[r] == 1) else {
            return Ok(());
        };
        let coord = *h.row_support(row).iter().find(|&&i| unknown[i]).expect("one open position");
        resolve(row, coord);
        unknown[coord] = false;
        for &r in h.col_support(coord) {
            open[r] -= 1;
        }
    }
}

/// Peeling decoder for the erasure channel; `None` marks an erasure.
pub fn bec_peel(h: &BinaryMatrix, observed: &[Option<u8>]) -> Result<Peel<BitVector>> {
    let n = h.cols();
    h.check_len(observed.len())?;
    // The known part must extend to some codeword.
    let erased: Vec<usize> = (0..n).filter(|&i| observed[i].is_none()).collect();
    let rows: Vec<Vec<u8>> = (0..h.rows()).map(|j| erased.iter().map(|&i| h.get(j, i)).collect()).collect();
    let rhs: Vec<u8> =
        h.row_supports().iter().map(|s| s.iter().filter_map(|&i| observed[i]).fold(0, |a, b| a ^ b)).collect();
    if !linalg::gf2_consistent(&rows, &rhs, erased.len()) {
        return Err(Error::InconsistentObservation);
    }

    let mut unknown: Vec<bool> = observed.iter().map(Option::is_none).collect();
    let mut word: Vec<u8> = observed.iter().map(|b| b.unwrap_or(0)).collect();
    let parity = |word: &[u8], row: usize| h.row_support(row).iter().fold(0u8, |a, &i| a ^ word[i]);
    {
        let word = std::cell::RefCell::new(&mut word);
        back_substitute(
            h,
            &mut unknown,
            |row, coord| {
                let mut w = word.borrow_mut();
                w[coord] = 0;
                let p = parity(&w, row);
                w[coord] = p;
            },
            |row| parity(&word.borrow(), row) == 0,
        )?;
    }
    let residual: Vec<usize> = (0..n).filter(|&i| unknown[i]).collect();
    Ok(if residual.is_empty() {
        Peel::Resolved { value: BitVector(word) }
    } else {
        Peel::Stuck { residual: SupportSet::new(n, residual)? }
    })
}

/// Recovers the values of `e` on a known `support` from `s = H·e`, treating
/// coordinates outside the support as zero, with the same schedule as
/// [`bec_peel`].
pub fn cs_backsub(h: &BinaryMatrix, s: &RealVector, support: &SupportSet) -> Result<Peel<RealVector>> {
    let n = h.cols();
    if s.len() != h.rows() {
        return Err(Error::LengthMismatch { expected: h.rows(), found: s.len() });
    }
    if support.universe() != n {
        return Err(Error::LengthMismatch { expected: n, found: support.universe() });
    }
    let mut unknown = support.mask();
    let e = std::cell::RefCell::new(RealVector::zeros(n));
    let row_sum = |e: &RealVector, row: usize| -> Rational { h.row_support(row).iter().map(|&i| &e[i]).sum() };
    back_substitute(
        h,
        &mut unknown,
        |row, coord| {
            let mut e = e.borrow_mut();
            let rest = row_sum(&e, row) - &e[coord];
            e.0[coord] = &s[row] - &rest;
        },
        |row| row_sum(&e.borrow(), row) == s[row],
    )?;
    let residual: Vec<usize> = (0..n).filter(|&i| unknown[i]).collect();
    Ok(if residual.is_empty() {
        Peel::Resolved { value: e.into_inner() }
    } else {
        Peel::Stuck { residual: SupportSet::new(n, residual)? }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use proptest::prelude::*;

    fn v(x: &[i64]) -> RealVector {
        RealVector::from_ints(x)
    }

    fn h3() -> BinaryMatrix {
        BinaryMatrix::parse_dense("1 1 1").unwrap()
    }

    fn hrep() -> BinaryMatrix {
        BinaryMatrix::parse_dense("1 1 0\n0 1 1").unwrap()
    }

    fn hamming() -> BinaryMatrix {
        BinaryMatrix::parse_dense("1 0 1 0 1 0 1\n0 1 1 0 0 1 1\n0 0 0 1 1 1 1").unwrap()
    }

    #[test]
    fn cs_lpd_examples() {
        let r = cs_lpd(&hrep(), &v(&[1, 1])).unwrap();
        assert_eq!(r.status, DecodeStatus::Success);
        assert_eq!(r.estimate, Some(v(&[0, 1, 0])));
        assert_eq!(r.objective, Some(qi(1)));

        let r = cs_lpd(&h3(), &v(&[0])).unwrap();
        assert_eq!(r.estimate, Some(v(&[0, 0, 0])));
        assert_eq!(r.objective, Some(qi(0)));

        let r = cs_lpd(&h3(), &v(&[1])).unwrap();
        assert_eq!(r.status, DecodeStatus::Tie);
        assert_eq!(r.objective, Some(qi(1)));
        let w = r.witness.unwrap();
        assert_ne!(Some(&w), r.estimate.as_ref());
        assert_eq!(w.l1(), qi(1));
        assert_eq!(h3().syndrome_real(&w).unwrap(), v(&[1]));

        let r = cs_lpd(&BinaryMatrix::parse_dense("1 1\n1 1").unwrap(), &v(&[1, 2])).unwrap();
        assert_eq!(r.status, DecodeStatus::Infeasible);
        assert!(cs_lpd(&h3(), &v(&[1, 1])).is_err());
    }

    #[test]
    fn cs_opt_examples() {
        let r = cs_opt(&hrep(), &v(&[1, 1]), 2).unwrap();
        assert_eq!(r.status, DecodeStatus::Success);
        assert_eq!(r.estimate, Some(v(&[0, 1, 0])));
        assert_eq!(r.objective, Some(qi(1)));

        let r = cs_opt(&hamming(), &v(&[0, 0, 0]), 1).unwrap();
        assert_eq!(r.estimate, Some(RealVector::zeros(7)));
        assert_eq!(r.objective, Some(qi(0)));

        let r = cs_opt(&h3(), &v(&[1]), 1).unwrap();
        assert_eq!(r.status, DecodeStatus::Tie);
        assert_eq!(r.estimate, Some(v(&[1, 0, 0])));
        assert_eq!(r.witness, Some(v(&[0, 1, 0])));

        assert_eq!(cs_opt(&hrep(), &v(&[1, 3]), 1), Err(Error::NoSolutionWithinK { k_max: 1 }));
        let wide = BinaryMatrix::from_rows(&[vec![1u8; 21]]).unwrap();
        assert!(matches!(cs_opt(&wide, &v(&[1]), 1), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn cc_lpd_examples() {
        let r = cc_lpd(&hrep(), &v(&[1, 1, -1])).unwrap();
        assert_eq!(r.status, DecodeStatus::Success);
        assert_eq!(r.estimate, Some(v(&[0, 0, 0])));
        assert_eq!(r.objective, Some(qi(0)));

        let r = cc_lpd(&hrep(), &v(&[-1, -1, -1])).unwrap();
        assert_eq!(r.status, DecodeStatus::Success);
        assert_eq!(r.estimate_bits(), Some(BitVector(vec![1, 1, 1])));

        let r = cc_lpd(&hamming(), &v(&[1, 2, 1, 3, 1, 1, 2])).unwrap();
        assert_eq!(r.estimate, Some(RealVector::zeros(7)));
        assert_eq!(r.status, DecodeStatus::Success);

        let r = cc_lpd(&hrep(), &v(&[1, -1, 0])).unwrap();
        assert_eq!(r.status, DecodeStatus::Tie);
    }

    #[test]
    fn cc_lpd_reports_fractional_vertices() {
        let h = BinaryMatrix::parse_dense("0 1 1 0 1 1\n0 1 1 1 0 1\n1 1 1 0 0 0\n1 0 0 0 1 0").unwrap();
        let llr = v(&[2, -3, -1, 0, -1, -3]);
        let lp = cc_lpd(&h, &llr).unwrap();
        assert_eq!(lp.status, DecodeStatus::Fractional);
        let half = q(1, 2);
        assert_eq!(lp.estimate, Some(RealVector(vec![half.clone(), qi(1), half.clone(), half.clone(), half, qi(1)])));
        assert_eq!(lp.objective, Some(qi(-6)));
        let ml = cc_mld(&h, &llr).unwrap();
        assert!(lp.objective.unwrap() < ml.objective.unwrap());
    }

    #[test]
    fn cc_mld_examples() {
        let r = cc_mld(&hrep(), &v(&[1, 1, -1])).unwrap();
        assert_eq!(r.estimate, Some(v(&[0, 0, 0])));
        let r = cc_mld(&hrep(), &v(&[-1, -1, 1])).unwrap();
        assert_eq!(r.estimate, Some(v(&[1, 1, 1])));
        assert_eq!(r.objective, Some(qi(-1)));
        let r = cc_mld(&hamming(), &RealVector::zeros(7)).unwrap();
        assert_eq!(r.status, DecodeStatus::Tie);
        assert!(r.witness.is_some());
    }

    #[test]
    fn decode_result_json() {
        let r = cs_lpd(&h3(), &v(&[1])).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["status"], "tie");
        assert_eq!(j["objective"], "1");
        assert_eq!(j["estimate"].as_array().unwrap().len(), 3);
        assert!(j.get("witness").is_some());
        let r = cs_lpd(&hrep(), &v(&[1, 1])).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["status"], "success");
        assert!(j.get("witness").is_none());
    }

    #[test]
    fn peeling_examples() {
        let h = hrep();
        assert_eq!(
            bec_peel(&h, &[Some(0), None, Some(0)]).unwrap(),
            Peel::Resolved { value: BitVector(vec![0, 0, 0]) }
        );
        assert_eq!(
            bec_peel(&h, &[Some(1), None, Some(1)]).unwrap(),
            Peel::Resolved { value: BitVector(vec![1, 1, 1]) }
        );
        assert_eq!(bec_peel(&h, &[None, None, None]).unwrap(), Peel::Stuck { residual: SupportSet::full(3) });
        assert_eq!(bec_peel(&h, &[Some(1), None, Some(0)]), Err(Error::InconsistentObservation));
        assert_eq!(bec_peel(&h, &[Some(1), Some(0), Some(0)]), Err(Error::InconsistentObservation));
    }

    #[test]
    fn backsub_examples() {
        let h = hrep();
        let s2 = SupportSet::new(3, vec![1]).unwrap();
        assert_eq!(cs_backsub(&h, &v(&[5, 5]), &s2).unwrap(), Peel::Resolved { value: v(&[0, 5, 0]) });
        assert_eq!(
            cs_backsub(&h, &v(&[0, 0]), &SupportSet::full(3)).unwrap(),
            Peel::Stuck { residual: SupportSet::full(3) }
        );
        assert_eq!(
            cs_backsub(&hamming(), &v(&[0, 0, 0]), &SupportSet::empty(7)).unwrap(),
            Peel::Resolved { value: RealVector::zeros(7) }
        );
        assert_eq!(cs_backsub(&h, &v(&[5, 4]), &s2), Err(Error::Inconsistent { row: 1 }));
        let r = cs_backsub(&h, &RealVector(vec![q(1, 2), q(3, 2)]), &SupportSet::new(3, vec![0, 2]).unwrap()).unwrap();
        assert_eq!(r, Peel::Resolved { value: RealVector(vec![q(1, 2), qi(0), q(3, 2)]) });
    }

    fn small_matrix() -> impl Strategy<Value = BinaryMatrix> {
        (1usize..5, 2usize..8).prop_flat_map(|(m, n)| {
            proptest::collection::vec(proptest::collection::vec(0u8..2, n), m)
                .prop_map(|rows| BinaryMatrix::from_rows(&rows).unwrap())
        })
    }

    proptest! {
        #[test]
        fn cs_lpd_is_consistent(h in small_matrix(), e in proptest::collection::vec(-3i64..4, 8)) {
            let e = v(&e[..h.cols()]);
            let s = h.syndrome_real(&e).unwrap();
            let r = cs_lpd(&h, &s).unwrap();
            let est = r.estimate.clone().unwrap();
            prop_assert_eq!(h.syndrome_real(&est).unwrap(), s.clone());
            prop_assert!(est.l1() <= e.l1());
            prop_assert_eq!(r.objective.unwrap(), est.l1());
            if let Some(w) = r.witness {
                prop_assert_eq!(h.syndrome_real(&w).unwrap(), s);
                prop_assert_eq!(w.l1(), est.l1());
            }
        }

        #[test]
        fn relaxation_sandwich(h in small_matrix(), llr in proptest::collection::vec(-4i64..5, 8)) {
            let llr = v(&llr[..h.cols()]);
            let lp = cc_lpd(&h, &llr).unwrap();
            let ml = cc_mld(&h, &llr).unwrap();
            let (a, b) = (lp.objective.clone().unwrap(), ml.objective.clone().unwrap());
            prop_assert!(a <= b);
            if lp.is_success() {
                prop_assert_eq!(&a, &b);
                let bits = lp.estimate_bits().unwrap();
                prop_assert!(h.is_codeword(&bits).unwrap());
            }
            let poly = polytope_inequalities(&h).unwrap();
            prop_assert!(poly.contains(lp.estimate.as_ref().unwrap()).unwrap());
            // Positive scaling changes no decision.
            let scaled = cc_lpd(&h, &llr.scale(&qi(3))).unwrap();
            prop_assert_eq!(scaled.status, lp.status);
            prop_assert_eq!(scaled.estimate, lp.estimate);
        }

        #[test]
        fn peeling_agrees_with_backsub(h in small_matrix(), mask in proptest::collection::vec(proptest::bool::ANY, 8), vals in proptest::collection::vec(1i64..5, 8)) {
            let n = h.cols();
            let support = SupportSet::new(n, (0..n).filter(|&i| mask[i]).collect()).unwrap();
            let observed: Vec<Option<u8>> = (0..n).map(|i| if mask[i] { None } else { Some(0) }).collect();
            let e: RealVector = (0..n).map(|i| if mask[i] { qi(vals[i]) } else { qi(0) }).collect();
            let s = h.syndrome_real(&e).unwrap();
            let a = bec_peel(&h, &observed).unwrap();
            let b = cs_backsub(&h, &s, &support).unwrap();
            prop_assert_eq!(a.residual(), b.residual());
            if let Peel::Resolved { value } = b {
                prop_assert_eq!(value, e);
            }
            if let Peel::Resolved { value } = a {
                prop_assert_eq!(value, BitVector::zeros(n));
            }
        }
    }
}
