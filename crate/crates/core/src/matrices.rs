//! Zero-one matrices that act both as real measurement matrices and as GF(2)
//! parity-check matrices, plus the vector types shared by every module.
//!
//! Only entries in {0, 1} are supported: the nullspace-to-cone map that ties
//! the two decoding problems together needs zero-one matrices, so general real
//! measurement matrices are out of scope.

use std::fmt;
use std::ops::{Deref, Index};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::Rational;

/// Default limit on `n − rank` for codeword enumeration (2^24 codewords).
pub const CODEWORD_GUARD: usize = 24;

/// An m×n matrix with entries in {0, 1}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
    row_supports: Vec<Vec<usize>>,
    col_supports: Vec<Vec<usize>>,
}

impl BinaryMatrix {
    /// Builds a matrix from dense rows; every row must have the same length and
    /// every entry must be 0 or 1.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidArgument("matrix has no rows".into()));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::InvalidArgument("matrix has no columns".into()));
        }
        let mut entries = Vec::with_capacity(m * n);
        for (j, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse {
                    line: j + 1,
                    message: format!("row has {} entries, expected {n}", row.len()),
                });
            }
            if let Some(&v) = row.iter().find(|&&v| v > 1) {
                return Err(Error::Parse { line: j + 1, message: format!("entry {v} is not 0 or 1") });
            }
            entries.extend_from_slice(row);
        }
        Ok(Self::from_entries(m, n, entries))
    }

    /// Builds an m×n matrix from the column indices of each row.
    pub fn from_row_supports(m: usize, n: usize, supports: &[Vec<usize>]) -> Result<Self> {
        if m == 0 || n == 0 || supports.len() != m {
            return Err(Error::InvalidArgument(format!(
                "need {m} row supports for an {m}x{n} matrix, got {}",
                supports.len()
            )));
        }
        let mut entries = vec![0u8; m * n];
        for (j, s) in supports.iter().enumerate() {
            for &i in s {
                if i >= n {
                    return Err(Error::InvalidArgument(format!("column index {i} out of range in row {j}")));
                }
                entries[j * n + i] = 1;
            }
        }
        Ok(Self::from_entries(m, n, entries))
    }

    fn from_entries(m: usize, n: usize, entries: Vec<u8>) -> Self {
        let row_supports: Vec<Vec<usize>> =
            (0..m).map(|j| (0..n).filter(|&i| entries[j * n + i] == 1).collect()).collect();
        let col_supports: Vec<Vec<usize>> =
            (0..n).map(|i| (0..m).filter(|&j| entries[j * n + i] == 1).collect()).collect();
        BinaryMatrix { rows: m, cols: n, entries, row_supports, col_supports }
    }

    pub fn identity(n: usize) -> Self {
        let supports: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        Self::from_row_supports(n, n, &supports).expect("identity is well formed")
    }

    /// Number of checks (measurements), `m`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Block length (signal length), `n`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// `I_j`: the columns with a one in row `j`.
    pub fn row_support(&self, row: usize) -> &[usize] {
        &self.row_supports[row]
    }

    /// `J_i`: the rows with a one in column `i`.
    pub fn col_support(&self, col: usize) -> &[usize] {
        &self.col_supports[col]
    }

    pub fn row_supports(&self) -> &[Vec<usize>] {
        &self.row_supports
    }

    pub fn col_supports(&self) -> &[Vec<usize>] {
        &self.col_supports
    }

    pub fn max_row_weight(&self) -> usize {
        self.row_supports.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn dense_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|j| self.row(j).to_vec()).collect()
    }

    fn rational_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|j| self.row(j).iter().map(|&v| Rational::from_integer(v as i64)).collect()).collect()
    }

    /// Columns `cols` of the matrix as rational rows (used for restricted solves).
    pub fn rational_columns(&self, cols: &[usize]) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|j| cols.iter().map(|&i| Rational::from_integer(self.get(j, i) as i64)).collect()).collect()
    }

    /// Rank over GF(2).
    pub fn gf2_rank(&self) -> usize {
        let mut rows = self.dense_rows();
        linalg::gf2_eliminate(&mut rows, self.cols).len()
    }

    /// Rank over the reals.
    pub fn real_rank(&self) -> usize {
        linalg::rank(self.rational_rows(), self.cols)
    }

    /// Exact basis of the real nullspace in reduced-echelon parametric form.
    /// Any valid basis spans the same space; compare spans, not vectors.
    pub fn real_nullspace_basis(&self) -> Vec<RealVector> {
        linalg::nullspace(self.rational_rows(), self.cols).into_iter().map(RealVector).collect()
    }

    /// All codewords `x` with `H·x = 0` over GF(2), in Gray-code order starting
    /// from the zero word.
    pub fn enumerate_codewords(&self) -> Result<Vec<BitVector>> {
        self.enumerate_codewords_with_guard(CODEWORD_GUARD)
    }

    pub fn enumerate_codewords_with_guard(&self, guard: usize) -> Result<Vec<BitVector>> {
        let basis = linalg::gf2_nullspace(&self.dense_rows(), self.cols);
        let dim = basis.len();
        if dim > guard {
            return Err(Error::GuardExceeded { what: "code dimension", value: dim, limit: guard });
        }
        let mut word = vec![0u8; self.cols];
        let mut out = Vec::with_capacity(1 << dim);
        out.push(BitVector(word.clone()));
        for step in 1u64..(1u64 << dim) {
            let flip = step.trailing_zeros() as usize;
            for (w, b) in word.iter_mut().zip(&basis[flip]) {
                *w ^= b;
            }
            out.push(BitVector(word.clone()));
        }
        Ok(out)
    }

    /// `H·y` over the rationals.
    pub fn syndrome_real(&self, y: &RealVector) -> Result<RealVector> {
        self.check_len(y.len())?;
        Ok(RealVector(self.row_supports.iter().map(|s| s.iter().map(|&i| &y[i]).sum()).collect()))
    }

    /// `H·y` over GF(2).
    pub fn syndrome_gf2(&self, y: &BitVector) -> Result<BitVector> {
        self.check_len(y.len())?;
        Ok(BitVector(self.row_supports.iter().map(|s| s.iter().fold(0u8, |acc, &i| acc ^ y[i])).collect()))
    }

    pub fn is_codeword(&self, x: &BitVector) -> Result<bool> {
        Ok(self.syndrome_gf2(x)?.weight() == 0)
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, found: len });
        }
        Ok(())
    }

    /// Parses whitespace-separated rows of 0/1 tokens. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn parse_dense(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<u8>> = Vec::new();
        let mut width = None;
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| match t {
                    "0" => Ok(0u8),
                    "1" => Ok(1u8),
                    other => Err(Error::Parse { line: ln + 1, message: format!("token `{other}` is not 0 or 1") }),
                })
                .collect::<Result<Vec<u8>>>()?;
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(Error::Parse {
                        line: ln + 1,
                        message: format!("ragged row: {} entries, expected {w}", row.len()),
                    })
                }
                _ => {}
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse { line: 0, message: "no rows".into() });
        }
        Self::from_rows(&rows)
    }

    pub fn to_dense(&self) -> String {
        let mut s = String::new();
        for j in 0..self.rows {
            let row: Vec<&str> = self.row(j).iter().map(|&v| if v == 1 { "1" } else { "0" }).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the ALIST format: `n m`, max column/row degrees, column degrees,
    /// row degrees, then 1-based adjacency lists per column and per row. Zero
    /// padding on adjacency lines is accepted and ignored.
    pub fn parse_alist(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let mut next = |what: &str| -> Result<(usize, Vec<usize>)> {
            let (ln, l) = lines.next().ok_or_else(|| Error::Parse { line: 0, message: format!("missing {what}") })?;
            let nums = l
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse { line: ln, message: format!("bad integer `{t}` in {what}") })
                })
                .collect::<Result<Vec<usize>>>()?;
            Ok((ln, nums))
        };
        let expect_len = |ln: usize, v: &[usize], len: usize, what: &str| -> Result<()> {
            if v.len() != len {
                return Err(Error::Parse {
                    line: ln,
                    message: format!("{what}: expected {len} values, found {}", v.len()),
                });
            }
            Ok(())
        };

        let (ln, header) = next("header")?;
        expect_len(ln, &header, 2, "header")?;
        let (n, m) = (header[0], header[1]);
        if n == 0 || m == 0 {
            return Err(Error::Parse { line: ln, message: "empty dimensions".into() });
        }
        let (ln, maxes) = next("maximum degrees")?;
        expect_len(ln, &maxes, 2, "maximum degrees")?;
        let (ln, col_deg) = next("column degrees")?;
        expect_len(ln, &col_deg, n, "column degrees")?;
        if let Some(&d) = col_deg.iter().find(|&&d| d > maxes[0]) {
            return Err(Error::Parse { line: ln, message: format!("column degree {d} above declared maximum") });
        }
        let (ln, row_deg) = next("row degrees")?;
        expect_len(ln, &row_deg, m, "row degrees")?;
        if let Some(&d) = row_deg.iter().find(|&&d| d > maxes[1]) {
            return Err(Error::Parse { line: ln, message: format!("row degree {d} above declared maximum") });
        }

        let mut col_lists = Vec::with_capacity(n);
        for (i, &deg) in col_deg.iter().enumerate() {
            let (ln, list) = next("column adjacency")?;
            let list = adjacency(ln, &list, deg, m, "column", i)?;
            col_lists.push((ln, list));
        }
        let mut row_lists = Vec::with_capacity(m);
        for (j, &deg) in row_deg.iter().enumerate() {
            let (ln, list) = next("row adjacency")?;
            let list = adjacency(ln, &list, deg, n, "row", j)?;
            row_lists.push(list);
        }
        let h = Self::from_row_supports(m, n, &row_lists)?;
        for (i, (ln, list)) in col_lists.iter().enumerate() {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if sorted != h.col_support(i) {
                return Err(Error::Parse {
                    line: *ln,
                    message: format!("column {} adjacency disagrees with the row lists", i + 1),
                });
            }
        }
        Ok(h)
    }

    pub fn to_alist(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        let max_col = self.col_supports.iter().map(Vec::len).max().unwrap_or(0);
        let max_row = self.max_row_weight();
        let padded = |s: &[usize], width: usize| {
            let mut v: Vec<usize> = s.iter().map(|&x| x + 1).collect();
            v.resize(width, 0);
            join(&v)
        };
        let mut out = format!("{} {}\n{} {}\n", self.cols, self.rows, max_col, max_row);
        out.push_str(&join(&self.col_supports.iter().map(Vec::len).collect::<Vec<_>>()));
        out.push('\n');
        out.push_str(&join(&self.row_supports.iter().map(Vec::len).collect::<Vec<_>>()));
        out.push('\n');
        for s in &self.col_supports {
            out.push_str(&padded(s, max_col));
            out.push('\n');
        }
        for s in &self.row_supports {
            out.push_str(&padded(s, max_row));
            out.push('\n');
        }
        out
    }
}

fn adjacency(ln: usize, list: &[usize], deg: usize, bound: usize, kind: &str, idx: usize) -> Result<Vec<usize>> {
    let nonzero: Vec<usize> = list.iter().copied().filter(|&v| v != 0).collect();
    if nonzero.len() != deg {
        return Err(Error::Parse {
            line: ln,
            message: format!("{kind} {} declares degree {deg} but lists {} entries", idx + 1, nonzero.len()),
        });
    }
    let mut seen = std::collections::BTreeSet::new();
    nonzero
        .into_iter()
        .map(|v| {
            if v > bound {
                Err(Error::Parse {
                    line: ln,
                    message: format!("index {v} out of range 1..={bound} in {kind} {}", idx + 1),
                })
            } else if !seen.insert(v) {
                Err(Error::Parse { line: ln, message: format!("duplicate index {v} in {kind} {}", idx + 1) })
            } else {
                Ok(v - 1)
            }
        })
        .collect()
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix {}x{} [", self.rows, self.cols)?;
        for j in 0..self.rows {
            if j > 0 {
                write!(f, "; ")?;
            }
            for &v in self.row(j) {
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}

/// A vector of exact rationals: signals, estimates, nullspace vectors and
/// pseudo-codewords.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RealVector(pub Vec<Rational>);

impl RealVector {
    pub fn zeros(n: usize) -> Self {
        RealVector(vec![Rational::default(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RealVector(v.iter().map(|&x| Rational::from_integer(x)).collect())
    }

    pub fn support(&self) -> SupportSet {
        SupportSet {
            n: self.len(),
            indices: self.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, _)| i).collect(),
        }
    }

    pub fn l0(&self) -> usize {
        self.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn l1(&self) -> Rational {
        self.iter().map(Rational::abs).sum()
    }

    pub fn l2_squared(&self) -> Rational {
        self.iter().map(Rational::square).sum()
    }

    pub fn linf(&self) -> Rational {
        self.iter().map(Rational::abs).max().unwrap_or_default()
    }

    /// `‖a_S‖₁`.
    pub fn l1_on(&self, s: &SupportSet) -> Rational {
        s.iter().map(|i| self[i].abs()).sum()
    }

    /// `|a|`, entrywise.
    pub fn abs(&self) -> Self {
        RealVector(self.iter().map(Rational::abs).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.iter().all(Rational::is_zero)
    }

    /// Index of the first negative entry, if any.
    pub fn first_negative(&self) -> Option<usize> {
        self.iter().position(Rational::is_negative)
    }

    pub fn dot(&self, other: &RealVector) -> Rational {
        self.iter().zip(other.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, a: &Rational) -> Self {
        RealVector(self.iter().map(|v| v * a).collect())
    }

    pub fn add(&self, other: &RealVector) -> Self {
        RealVector(self.iter().zip(other.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RealVector) -> Self {
        RealVector(self.iter().zip(other.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.iter().all(Rational::is_integer)
    }

    /// Entries rounded to floats, for reporting.
    pub fn to_f64(&self) -> Vec<f64> {
        self.iter().map(Rational::to_f64).collect()
    }

    /// The set of the `k` largest-magnitude coordinates (ties to the lower index).
    pub fn top_k_support(&self, k: usize) -> SupportSet {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self[b].abs().cmp(&self[a].abs()).then(a.cmp(&b)));
        idx.truncate(k.min(self.len()));
        SupportSet::new(self.len(), idx).expect("indices in range")
    }
}

impl Deref for RealVector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl FromIterator<Rational> for RealVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        RealVector(iter.into_iter().collect())
    }
}

impl From<&BitVector> for RealVector {
    fn from(b: &BitVector) -> Self {
        RealVector(b.iter().map(|&v| Rational::from_integer(v as i64)).collect())
    }
}

impl fmt::Display for RealVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A vector over GF(2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BitVector(pub Vec<u8>);

impl BitVector {
    pub fn zeros(n: usize) -> Self {
        BitVector(vec![0; n])
    }

    pub fn from_support(n: usize, s: &SupportSet) -> Self {
        let mut v = vec![0; n];
        for i in s.iter() {
            v[i] = 1;
        }
        BitVector(v)
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.iter().filter(|&&b| b == 1).count()
    }

    pub fn support(&self) -> SupportSet {
        SupportSet {
            n: self.len(),
            indices: self.iter().enumerate().filter(|(_, &b)| b == 1).map(|(i, _)| i).collect(),
        }
    }
}

impl Deref for BitVector {
    type Target = [u8];
    fn deref(&self) -> &[u8] {
        &self.0
    }
}

/// A sorted set of coordinate indices inside `{0, …, n−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SupportSet {
    n: usize,
    indices: Vec<usize>,
}

impl SupportSet {
    pub fn new(n: usize, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidArgument(format!("index {bad} outside 0..{n}")));
        }
        Ok(SupportSet { n, indices })
    }

    pub fn empty(n: usize) -> Self {
        SupportSet { n, indices: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        SupportSet { n, indices: (0..n).collect() }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// `S̄ = {0, …, n−1} ∖ S`.
    pub fn complement(&self) -> Self {
        SupportSet { n: self.n, indices: (0..self.n).filter(|&i| !self.contains(i)).collect() }
    }

    /// Indicator mask of length `n`.
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.n];
        for &i in &self.indices {
            m[i] = true;
        }
        m
    }
}

impl Index<usize> for SupportSet {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.indices[i]
    }
}

/// All size-`k` subsets of `{0, …, n−1}` in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let next = {
            let mut c = out.clone();
            let mut i = k;
            loop {
                if i == 0 {
                    break None;
                }
                i -= 1;
                if c[i] < n - k + i {
                    c[i] += 1;
                    for t in i + 1..k {
                        c[t] = c[t - 1] + 1;
                    }
                    break Some(c);
                }
            }
        };
        current = next;
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    const HAMMING: &str = "1 0 1 0 1 0 1\n0 1 1 0 0 1 1\n0 0 0 1 1 1 1\n";

    fn hrep() -> BinaryMatrix {
        BinaryMatrix::parse_dense("1 1 0\n0 1 1").unwrap()
    }

    fn h3() -> BinaryMatrix {
        BinaryMatrix::parse_dense("1 1 1").unwrap()
    }

    #[test]
    fn dense_parsing() {
        let h = h3();
        assert_eq!((h.rows(), h.cols()), (1, 3));
        assert_eq!(hrep().row_support(1), &[1, 2]);
        assert_eq!(hrep().col_support(1), &[0, 1]);
        let err = BinaryMatrix::parse_dense("1 2 0").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = BinaryMatrix::parse_dense("1 1\n1").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn alist_identity_and_hamming() {
        let id = "3 3\n1 1\n1 1 1\n1 1 1\n1\n2\n3\n1\n2\n3\n";
        assert_eq!(BinaryMatrix::parse_alist(id).unwrap(), BinaryMatrix::identity(3));

        // Hand-written from the standard Hamming(7,4) H (columns are 1..7 in binary).
        let ham = "7 3\n3 4\n1 1 2 1 2 2 3\n4 4 4\n\
                   1 0 0\n2 0 0\n1 2 0\n3 0 0\n1 3 0\n2 3 0\n1 2 3\n\
                   1 3 5 7\n2 3 6 7\n4 5 6 7\n";
        let h = BinaryMatrix::parse_alist(ham).unwrap();
        assert_eq!(h, BinaryMatrix::parse_dense(HAMMING).unwrap());
        let weights: Vec<usize> = h.row_supports().iter().map(Vec::len).collect();
        assert_eq!(weights, vec![4, 4, 4]);
        assert_eq!(h.to_alist(), ham);
    }

    #[test]
    fn alist_errors_carry_line_numbers() {
        let bad_degree = "3 3\n1 2\n1 1 1\n2 1 1\n1\n2\n3\n1 2 3\n2\n3\n";
        match BinaryMatrix::parse_alist(bad_degree).unwrap_err() {
            Error::Parse { line, message } => {
                assert_eq!(line, 8);
                assert!(message.contains("declares degree 2"), "{message}");
            }
            e => panic!("{e}"),
        }
        let out_of_range = "3 3\n1 1\n1 1 1\n1 1 1\n1\n2\n4\n1\n2\n3\n";
        assert!(matches!(BinaryMatrix::parse_alist(out_of_range), Err(Error::Parse { line: 7, .. })));
        assert!(matches!(BinaryMatrix::parse_alist("3\n"), Err(Error::Parse { line: 1, .. })));
        let mismatch = "3 3\n1 1\n1 1 1\n1 1 1\n1\n2\n3\n2\n1\n3\n";
        assert!(matches!(BinaryMatrix::parse_alist(mismatch), Err(Error::Parse { .. })));
    }

    #[test]
    fn gf2_ranks() {
        assert_eq!(BinaryMatrix::identity(3).gf2_rank(), 3);
        assert_eq!(h3().gf2_rank(), 1);
        assert_eq!(BinaryMatrix::parse_dense(HAMMING).unwrap().gf2_rank(), 3);
    }

    #[test]
    fn nullspace_bases() {
        let b = h3().real_nullspace_basis();
        assert_eq!(b.len(), 2);
        for v in &b {
            assert!(h3().syndrome_real(v).unwrap().is_zero());
        }
        assert_eq!(hrep().real_nullspace_basis(), vec![RealVector::from_ints(&[1, -1, 1])]);
        assert!(BinaryMatrix::identity(3).real_nullspace_basis().is_empty());
    }

    #[test]
    fn codewords() {
        let cw = hrep().enumerate_codewords().unwrap();
        let mut sorted: Vec<_> = cw.iter().map(|c| c.0.clone()).collect();
        sorted.sort();
        assert_eq!(sorted, vec![vec![0, 0, 0], vec![1, 1, 1]]);
        assert_eq!(BinaryMatrix::identity(3).enumerate_codewords().unwrap(), vec![BitVector::zeros(3)]);
        let ham = BinaryMatrix::parse_dense(HAMMING).unwrap().enumerate_codewords().unwrap();
        assert_eq!(ham.len(), 16);
        assert_eq!(ham.iter().map(BitVector::weight).filter(|&w| w > 0).min(), Some(3));
        let err = BinaryMatrix::parse_dense("1 1 1 1").unwrap().enumerate_codewords_with_guard(2);
        assert!(matches!(err, Err(Error::GuardExceeded { value: 3, limit: 2, .. })));
    }

    #[test]
    fn syndromes() {
        assert_eq!(h3().syndrome_real(&RealVector::from_ints(&[1, 2, 3])).unwrap(), RealVector::from_ints(&[6]));
        assert_eq!(hrep().syndrome_real(&RealVector::from_ints(&[0, 0, 1])).unwrap(), RealVector::from_ints(&[0, 1]));
        assert!(hrep().syndrome_real(&RealVector::zeros(3)).unwrap().is_zero());
        assert_eq!(hrep().syndrome_gf2(&BitVector(vec![0, 1, 0])).unwrap(), BitVector(vec![1, 1]));
        assert_eq!(hrep().syndrome_gf2(&BitVector(vec![1, 1, 1])).unwrap(), BitVector(vec![0, 0]));
        assert_eq!(h3().syndrome_gf2(&BitVector(vec![1, 1, 0])).unwrap(), BitVector(vec![0]));
        assert!(matches!(
            h3().syndrome_real(&RealVector::zeros(2)),
            Err(Error::LengthMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn vector_norms() {
        let a = RealVector::from_ints(&[2, -1, 0, 3]);
        assert_eq!(a.l0(), 3);
        assert_eq!(a.l1(), qi(6));
        assert_eq!(a.l2_squared(), qi(14));
        assert_eq!(a.linf(), qi(3));
        assert_eq!(a.support().indices(), &[0, 1, 3]);
        assert_eq!(a.top_k_support(2).indices(), &[0, 3]);
        let s = SupportSet::new(4, vec![3, 0]).unwrap();
        assert_eq!(s.complement().indices(), &[1, 2]);
        assert_eq!(a.l1_on(&s), qi(5));
    }

    #[test]
    fn subsets_enumerate_lexicographically() {
        let all: Vec<_> = subsets_of_size(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(subsets_of_size(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(subsets_of_size(2, 3).count(), 0);
    }
}
