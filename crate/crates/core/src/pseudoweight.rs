//! Pseudo-weights of cone vectors, extreme rays of the fundamental cone, and
//! minimum pseudo-weights of a parity-check matrix.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::cone::{cone_inequalities, ConeFacet};
use crate::error::{Error, Result};
use crate::lp::{solve_lp, LinearProgram, LpSolution};
use crate::matrices::{BinaryMatrix, RealVector};
use crate::rational::Rational;

/// Largest block length accepted by [`enumerate_extreme_rays`].
pub const RAY_GUARD: usize = 12;

fn check_nonnegative(omega: &RealVector) -> Result<()> {
    match omega.first_negative() {
        Some(index) => Err(Error::NegativeEntry { index }),
        None => Ok(()),
    }
}

/// `‖ω‖₁² / ‖ω‖₂²`.
pub fn awgnc_pw(omega: &RealVector) -> Result<Rational> {
    check_nonnegative(omega)?;
    if omega.is_zero() {
        return Ok(Rational::default());
    }
    Ok(omega.l1().square() / omega.l2_squared())
}

fn sorted_desc(omega: &RealVector) -> Vec<Rational> {
    let mut w = omega.0.clone();
    w.sort_by(|a, b| b.cmp(a));
    w
}

/// `2e` where `F(e) = ‖ω‖₁/2` and `F` integrates the sorted-descending
/// entries as a step function.
pub fn bsc_pw(omega: &RealVector) -> Result<Rational> {
    check_nonnegative(omega)?;
    if omega.is_zero() {
        return Ok(Rational::default());
    }
    let half = omega.l1() / Rational::from_integer(2);
    let mut cum = Rational::default();
    for (i, w) in sorted_desc(omega).iter().enumerate() {
        let next = &cum + w;
        if next >= half {
            let e = Rational::from(i) + (&half - &cum) / w;
            return Ok(e * Rational::from_integer(2));
        }
        cum = next;
    }
    unreachable!("half the mass is reached before the end")
}

/// With `e` the smallest prefix length whose mass is at least the rest:
/// `2e` on equality, `2e − 1` otherwise.
pub fn bsc_prime_pw(omega: &RealVector) -> Result<usize> {
    check_nonnegative(omega)?;
    let total = omega.l1();
    let mut prefix = Rational::default();
    let w = sorted_desc(omega);
    for e in 0..=w.len() {
        if e > 0 {
            prefix += &w[e - 1];
        }
        let suffix = &total - &prefix;
        if prefix == suffix {
            return Ok(2 * e);
        }
        if prefix > suffix {
            return Ok(2 * e - 1);
        }
    }
    unreachable!("the full prefix dominates the empty suffix")
}

/// `|supp(ω)|`.
pub fn bec_pw(omega: &RealVector) -> Result<usize> {
    check_nonnegative(omega)?;
    Ok(omega.l0())
}

/// `‖ω‖₁ / ‖ω‖∞`.
pub fn maxfrac_weight(omega: &RealVector) -> Result<Rational> {
    check_nonnegative(omega)?;
    if omega.is_zero() {
        return Ok(Rational::default());
    }
    Ok(omega.l1() / omega.linf())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PseudoWeightKind {
    Awgnc,
    Bsc,
    BscPrime,
    Bec,
    MaxFrac,
}

impl PseudoWeightKind {
    pub const ALL: [PseudoWeightKind; 5] = [
        PseudoWeightKind::Awgnc,
        PseudoWeightKind::Bsc,
        PseudoWeightKind::BscPrime,
        PseudoWeightKind::Bec,
        PseudoWeightKind::MaxFrac,
    ];

    pub fn evaluate(self, omega: &RealVector) -> Result<Rational> {
        match self {
            PseudoWeightKind::Awgnc => awgnc_pw(omega),
            PseudoWeightKind::Bsc => bsc_pw(omega),
            PseudoWeightKind::BscPrime => bsc_prime_pw(omega).map(Rational::from),
            PseudoWeightKind::Bec => bec_pw(omega).map(Rational::from),
            PseudoWeightKind::MaxFrac => maxfrac_weight(omega),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PseudoWeightKind::Awgnc => "awgnc",
            PseudoWeightKind::Bsc => "bsc",
            PseudoWeightKind::BscPrime => "bsc_prime",
            PseudoWeightKind::Bec => "bec",
            PseudoWeightKind::MaxFrac => "maxfrac",
        }
    }
}

impl fmt::Display for PseudoWeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PseudoWeightKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "awgnc" => Ok(PseudoWeightKind::Awgnc),
            "bsc" => Ok(PseudoWeightKind::Bsc),
            "bsc_prime" | "bscprime" | "bsc'" => Ok(PseudoWeightKind::BscPrime),
            "bec" => Ok(PseudoWeightKind::Bec),
            "maxfrac" | "max_frac" => Ok(PseudoWeightKind::MaxFrac),
            _ => Err(Error::InvalidArgument(format!("unknown pseudo-weight kind `{s}`"))),
        }
    }
}

/// All five weights of one vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoWeightReport {
    pub awgnc: Rational,
    pub bsc: Rational,
    pub bsc_prime: usize,
    pub bec: usize,
    pub maxfrac: Rational,
}

impl PseudoWeightReport {
    pub fn of(omega: &RealVector) -> Result<Self> {
        Ok(PseudoWeightReport {
            awgnc: awgnc_pw(omega)?,
            bsc: bsc_pw(omega)?,
            bsc_prime: bsc_prime_pw(omega)?,
            bec: bec_pw(omega)?,
            maxfrac: maxfrac_weight(omega)?,
        })
    }
}

impl Serialize for PseudoWeightReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(8))?;
        map.serialize_entry("awgnc", &self.awgnc)?;
        map.serialize_entry("awgnc_approx", &self.awgnc.to_f64())?;
        map.serialize_entry("bsc", &self.bsc)?;
        map.serialize_entry("bsc_approx", &self.bsc.to_f64())?;
        map.serialize_entry("bsc_prime", &self.bsc_prime)?;
        map.serialize_entry("bec", &self.bec)?;
        map.serialize_entry("maxfrac", &self.maxfrac)?;
        map.serialize_entry("maxfrac_approx", &self.maxfrac.to_f64())?;
        map.end()
    }
}

/// An edge of the fundamental cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremeRay {
    /// Scaled so that its first nonzero entry is 1.
    pub generator: RealVector,
    /// Indices into the facet list of [`cone_inequalities`] that are tight.
    pub tight: Vec<usize>,
}

fn normalize(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !lead.is_one() {
            let inv = lead.recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
        }
    }
}

#[derive(Clone)]
struct DdRay {
    v: Vec<Rational>,
    zeros: Vec<u64>,
}

fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// All extreme rays of K(H) by the double description method.
///
/// Starts from the rays of the nonnegative orthant and intersects with one
/// check inequality at a time. Two rays on opposite sides of the new
/// hyperplane are combined only when they are adjacent, which is decided
/// combinatorially: no third ray is tight on every inequality tight at both.
pub fn enumerate_extreme_rays(h: &BinaryMatrix) -> Result<Vec<ExtremeRay>> {
    let n = h.cols();
    if n > RAY_GUARD {
        return Err(Error::GuardExceeded { what: "block length", value: n, limit: RAY_GUARD });
    }
    let system = cone_inequalities(h);
    let facets = &system.facets;
    let words = facets.len().div_ceil(64);

    let mut rays: Vec<DdRay> = (0..n)
        .map(|i| {
            let mut v = vec![Rational::default(); n];
            v[i] = Rational::from_integer(1);
            let mut zeros = vec![0u64; words];
            for j in (0..n).filter(|&j| j != i) {
                set_bit(&mut zeros, j);
            }
            DdRay { v, zeros }
        })
        .collect();

    for (k, facet) in facets.iter().enumerate().skip(n) {
        let slacks: Vec<Rational> = rays.iter().map(|r| facet.slack(h, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| slacks[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| slacks[i].is_negative()).collect();
        let mut next: Vec<DdRay> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !slacks[i].is_negative() {
                let mut r = r.clone();
                if slacks[i].is_zero() {
                    set_bit(&mut r.zeros, k);
                }
                next.push(r);
            }
        }
        for &p in &pos {
            for &q in &neg {
                let common: Vec<u64> = rays[p].zeros.iter().zip(&rays[q].zeros).map(|(a, b)| a & b).collect();
                // A two-dimensional face needs at least n − 2 tight inequalities.
                if common.iter().map(|w| w.count_ones() as usize).sum::<usize>() + 2 < n {
                    continue;
                }
                let adjacent =
                    !rays.iter().enumerate().any(|(r, ray)| r != p && r != q && is_subset(&common, &ray.zeros));
                if !adjacent {
                    continue;
                }
                // slack(p)·q − slack(q)·p is tight on facet k.
                let (sp, sq) = (&slacks[p], &slacks[q]);
                let mut v: Vec<Rational> = rays[p].v.iter().zip(&rays[q].v).map(|(a, b)| sp * b - sq * a).collect();
                normalize(&mut v);
                let mut zeros = common;
                set_bit(&mut zeros, k);
                next.push(DdRay { v, zeros });
            }
        }
        rays = next;
    }

    let mut out: Vec<ExtremeRay> = rays
        .into_iter()
        .map(|r| {
            let mut v = r.v;
            normalize(&mut v);
            let tight = (0..facets.len()).filter(|&i| facets[i].slack(h, &v).is_zero()).collect();
            ExtremeRay { generator: RealVector(v), tight }
        })
        .collect();
    out.sort_by(|a, b| b.generator.0.cmp(&a.generator.0));
    out.dedup_by(|a, b| a.generator == b.generator);
    Ok(out)
}

/// A minimum pseudo-weight, or the report that K(H) = {0}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinPseudoWeight {
    ConeTrivial,
    Value { value: Rational, witness: RealVector },
}

impl MinPseudoWeight {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            MinPseudoWeight::ConeTrivial => None,
            MinPseudoWeight::Value { value, .. } => Some(value),
        }
    }
}

impl Serialize for MinPseudoWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MinPseudoWeight::ConeTrivial => {
                let mut map = s.serialize_map(Some(1))?;
                map.serialize_entry("status", "cone trivial")?;
                map.end()
            }
            MinPseudoWeight::Value { value, witness } => {
                let mut map = s.serialize_map(Some(4))?;
                map.serialize_entry("status", "ok")?;
                map.serialize_entry("value", value)?;
                map.serialize_entry("value_approx", &value.to_f64())?;
                map.serialize_entry("witness", witness)?;
                map.end()
            }
        }
    }
}

/// Minimum of a pseudo-weight over K(H) ∖ {0}.
///
/// Every functional here is invariant under positive scaling, so the minimum
/// over the cone equals the minimum over a bounded slice, and it is attained
/// at a vertex of that slice, i.e. on an extreme ray.
pub fn min_pseudoweight(h: &BinaryMatrix, kind: PseudoWeightKind) -> Result<MinPseudoWeight> {
    let rays = enumerate_extreme_rays(h)?;
    min_over_rays(&rays, kind)
}

/// Minimum of a pseudo-weight over precomputed rays.
pub fn min_over_rays(rays: &[ExtremeRay], kind: PseudoWeightKind) -> Result<MinPseudoWeight> {
    let mut best = MinPseudoWeight::ConeTrivial;
    for r in rays {
        let value = kind.evaluate(&r.generator)?;
        if best.value().is_none_or(|b| value < *b) {
            best = MinPseudoWeight::Value { value, witness: r.generator.clone() };
        }
    }
    Ok(best)
}

/// Minimum max-fractional weight by one LP per coordinate:
/// `min Σ ω` over `ω ∈ K(H)`, `ω_i = 1`, `ω ≤ 1`.
pub fn min_maxfrac_weight_lp(h: &BinaryMatrix) -> Result<MinPseudoWeight> {
    let n = h.cols();
    let checks: Vec<_> = cone_inequalities(h)
        .facets
        .into_iter()
        .filter(|f| matches!(f, ConeFacet::Check { .. }))
        .map(|f| f.constraint(h))
        .collect();
    let results: Vec<Result<Option<(Rational, RealVector)>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut p = LinearProgram::minimize(vec![Rational::from_integer(1); n]);
            for j in 0..n {
                let lo = if j == i { Rational::from_integer(1) } else { Rational::default() };
                p.set_bounds(j, Some(lo), Some(Rational::from_integer(1)));
            }
            for c in &checks {
                p.add_constraint(c.coeffs.clone(), c.relation, c.rhs.clone());
            }
            Ok(match solve_lp(&p)? {
                LpSolution::Optimal { point, objective, .. } => Some((objective, RealVector(point))),
                LpSolution::Infeasible { .. } => None,
                LpSolution::Unbounded { .. } => {
                    return Err(Error::Soundness("bounded max-fractional program reported unbounded".into()))
                }
            })
        })
        .collect();
    let mut best = MinPseudoWeight::ConeTrivial;
    for r in results {
        if let Some((value, witness)) = r? {
            if best.value().is_none_or(|b| value < *b) {
                best = MinPseudoWeight::Value { value, witness };
            }
        }
    }
    Ok(best)
}
