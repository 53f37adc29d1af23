//! The fundamental cone K(H) and fundamental polytope P(H) as explicit
//! inequality systems.

use std::fmt::Write as _;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{Constraint, Relation};
use crate::matrices::{BinaryMatrix, BitVector, RealVector};
use crate::rational::Rational;

/// Largest row weight accepted by [`polytope_inequalities`].
pub const POLYTOPE_ROW_GUARD: usize = 16;

/// One inequality of K(H).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConeFacet {
    /// `ω_coord ≥ 0`
    NonNegative { coord: usize },
    /// `ω_coord ≤ Σ_{i ∈ I_row ∖ coord} ω_i`
    Check { row: usize, coord: usize },
}

impl ConeFacet {
    /// Slack of the inequality at `omega`; negative means violated.
    pub fn slack(&self, h: &BinaryMatrix, omega: &[Rational]) -> Rational {
        match *self {
            ConeFacet::NonNegative { coord } => omega[coord].clone(),
            ConeFacet::Check { row, coord } => {
                let others: Rational = h.row_support(row).iter().filter(|&&i| i != coord).map(|&i| &omega[i]).sum();
                others - &omega[coord]
            }
        }
    }

    fn slack_f64(&self, h: &BinaryMatrix, omega: &[f64]) -> f64 {
        match *self {
            ConeFacet::NonNegative { coord } => omega[coord],
            ConeFacet::Check { row, coord } => {
                let others: f64 = h.row_support(row).iter().filter(|&&i| i != coord).map(|&i| omega[i]).sum();
                others - omega[coord]
            }
        }
    }

    /// The inequality in the form `a·ω ≥ 0`.
    pub fn constraint(&self, h: &BinaryMatrix) -> Constraint {
        let mut coeffs = vec![Rational::default(); h.cols()];
        match *self {
            ConeFacet::NonNegative { coord } => coeffs[coord] = Rational::from_integer(1),
            ConeFacet::Check { row, coord } => {
                for &i in h.row_support(row) {
                    coeffs[i] = Rational::from_integer(if i == coord { -1 } else { 1 });
                }
            }
        }
        Constraint { coeffs, relation: Relation::Ge, rhs: Rational::default() }
    }
}

#[derive(Debug, Clone)]
pub struct FundamentalConeSystem<'a> {
    pub matrix: &'a BinaryMatrix,
    pub facets: Vec<ConeFacet>,
}

impl FundamentalConeSystem<'_> {
    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn constraints(&self) -> Vec<Constraint> {
        self.facets.iter().map(|f| f.constraint(self.matrix)).collect()
    }

    pub fn to_text(&self) -> String {
        write_polyhedron(self.matrix.cols(), &self.constraints())
    }
}

/// Nonnegativity for every coordinate, then one check inequality per
/// `(row, coordinate in the row)` pair in row order.
pub fn cone_inequalities(h: &BinaryMatrix) -> FundamentalConeSystem<'_> {
    let mut facets: Vec<ConeFacet> = (0..h.cols()).map(|coord| ConeFacet::NonNegative { coord }).collect();
    for (row, support) in h.row_supports().iter().enumerate() {
        facets.extend(support.iter().map(|&coord| ConeFacet::Check { row, coord }));
    }
    FundamentalConeSystem { matrix: h, facets }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Membership {
    Member,
    NonMember { violated: ConeFacet },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

/// Exact membership in K(H), reporting the first violated inequality.
pub fn cone_contains(h: &BinaryMatrix, omega: &RealVector) -> Result<Membership> {
    h.check_len(omega.len())?;
    for f in cone_inequalities(h).facets {
        if f.slack(h, omega).is_negative() {
            return Ok(Membership::NonMember { violated: f });
        }
    }
    Ok(Membership::Member)
}

/// Membership up to an absolute tolerance, for float vectors from simulations.
/// Never use this to certify anything.
pub fn cone_contains_approx(h: &BinaryMatrix, omega: &[f64], tol: f64) -> Result<bool> {
    h.check_len(omega.len())?;
    Ok(cone_inequalities(h).facets.iter().all(|f| f.slack_f64(h, omega) >= -tol))
}

/// One inequality of P(H).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolytopeFacet {
    /// `x_coord ≥ 0`
    Lower { coord: usize },
    /// `x_coord ≤ 1`
    Upper { coord: usize },
    /// `Σ_{i∈V} x_i − Σ_{i∈I_row∖V} x_i ≤ |V| − 1` for odd `|V|`.
    OddSubset { row: usize, subset: Vec<usize> },
}

impl PolytopeFacet {
    pub fn constraint(&self, h: &BinaryMatrix) -> Constraint {
        let n = h.cols();
        let mut coeffs = vec![Rational::default(); n];
        match self {
            PolytopeFacet::Lower { coord } => {
                coeffs[*coord] = Rational::from_integer(1);
                Constraint { coeffs, relation: Relation::Ge, rhs: Rational::default() }
            }
            PolytopeFacet::Upper { coord } => {
                coeffs[*coord] = Rational::from_integer(1);
                Constraint { coeffs, relation: Relation::Le, rhs: Rational::from_integer(1) }
            }
            PolytopeFacet::OddSubset { row, subset } => {
                for &i in h.row_support(*row) {
                    coeffs[i] = Rational::from_integer(-1);
                }
                for &i in subset {
                    coeffs[i] = Rational::from_integer(1);
                }
                Constraint { coeffs, relation: Relation::Le, rhs: Rational::from(subset.len() - 1) }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct FundamentalPolytopeSystem<'a> {
    pub matrix: &'a BinaryMatrix,
    pub facets: Vec<PolytopeFacet>,
}

impl FundamentalPolytopeSystem<'_> {
    pub fn constraints(&self) -> Vec<Constraint> {
        self.facets.iter().map(|f| f.constraint(self.matrix)).collect()
    }

    /// Only the odd-subset rows; the box is left to variable bounds.
    pub fn check_constraints(&self) -> Vec<Constraint> {
        self.facets
            .iter()
            .filter(|f| matches!(f, PolytopeFacet::OddSubset { .. }))
            .map(|f| f.constraint(self.matrix))
            .collect()
    }

    pub fn contains(&self, x: &RealVector) -> Result<bool> {
        self.matrix.check_len(x.len())?;
        Ok(self.constraints().iter().all(|c| c.holds_at(x)))
    }

    pub fn to_text(&self) -> String {
        write_polyhedron(self.matrix.cols(), &self.constraints())
    }
}

/// The box plus every odd-subset inequality of every row.
pub fn polytope_inequalities(h: &BinaryMatrix) -> Result<FundamentalPolytopeSystem<'_>> {
    let w = h.max_row_weight();
    if w > POLYTOPE_ROW_GUARD {
        return Err(Error::GuardExceeded { what: "row weight", value: w, limit: POLYTOPE_ROW_GUARD });
    }
    let n = h.cols();
    let mut facets: Vec<PolytopeFacet> = (0..n).map(|coord| PolytopeFacet::Lower { coord }).collect();
    facets.extend((0..n).map(|coord| PolytopeFacet::Upper { coord }));
    for (row, support) in h.row_supports().iter().enumerate() {
        for mask in 0u32..(1 << support.len()) {
            if mask.count_ones() % 2 == 1 {
                let subset = support.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect();
                facets.push(PolytopeFacet::OddSubset { row, subset });
            }
        }
    }
    Ok(FundamentalPolytopeSystem { matrix: h, facets })
}

/// `ω ∈ K(H)`, `ω` integral, and `ω mod 2` a codeword.
pub fn is_unscaled_pseudocodeword(h: &BinaryMatrix, omega: &RealVector) -> Result<bool> {
    if !cone_contains(h, omega)?.is_member() || !omega.is_integral() {
        return Ok(false);
    }
    let parity = BitVector(omega.iter().map(|v| u8::from(v.numer().is_odd())).collect());
    h.is_codeword(&parity)
}

/// Plain-text polyhedron: a header `n rows`, then one inequality per line as
/// the coefficients, the relation (`<=`, `>=` or `=`) and the right-hand side.
pub fn write_polyhedron(n: usize, constraints: &[Constraint]) -> String {
    let mut out = format!("{n} {}\n", constraints.len());
    for c in constraints {
        for a in &c.coeffs {
            write!(out, "{a} ").unwrap();
        }
        let rel = match c.relation {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        };
        writeln!(out, "{rel} {}", c.rhs).unwrap();
    }
    out
}

/// Parses the output of [`write_polyhedron`].
pub fn parse_polyhedron(text: &str) -> Result<(usize, Vec<Constraint>)> {
    let err = |line: usize, message: &str| Error::Parse { line, message: message.to_string() };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| err(1, "bad header"))?;
    let [n, count] = nums[..] else { return Err(err(1, "header must be `n rows`")) };
    let mut out = Vec::with_capacity(count);
    for (idx, line) in lines {
        let ln = idx + 1;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != n + 2 {
            return Err(err(ln, "wrong number of fields"));
        }
        let parse = |t: &str| t.parse::<Rational>().map_err(|e| err(ln, &e.0));
        let coeffs = toks[..n].iter().map(|t| parse(t)).collect::<Result<Vec<_>>>()?;
        let relation = match toks[n] {
            "<=" => Relation::Le,
            ">=" => Relation::Ge,
            "=" => Relation::Eq,
            _ => return Err(err(ln, "unknown relation")),
        };
        out.push(Constraint { coeffs, relation, rhs: parse(toks[n + 1])? });
    }
    if out.len() != count {
        return Err(err(1, "row count does not match header"));
    }
    Ok((n, out))
}
