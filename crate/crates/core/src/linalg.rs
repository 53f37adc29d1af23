//! Dense exact linear algebra over the rationals and over GF(2).

use crate::rational::Rational;

/// Reduced row-echelon form of `rows` (each of length `cols`).
///
/// Returns the nonzero reduced rows and their pivot columns. Pivots are chosen
/// left to right, lowest row first, so the result is deterministic.
pub fn rref(mut rows: Vec<Vec<Rational>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for v in rows[r].iter_mut().skip(c) {
                *v *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Rational>>, cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Basis of `{x : A·x = 0}` in parametric form: one vector per free column,
/// with that column set to 1 and the other free columns set to 0.
pub fn nullspace(rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::default(); cols];
            v[f] = Rational::from_integer(1);
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// Outcome of solving `A·x = b` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solve {
    Inconsistent,
    Unique(Vec<Rational>),
    /// Consistent with a solution space of the given dimension; one particular
    /// solution (free variables at zero) is returned.
    Many(Vec<Rational>, usize),
}

pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational], cols: usize) -> Solve {
    let augmented: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let (reduced, pivots) = rref(augmented, cols + 1);
    if pivots.last() == Some(&cols) {
        return Solve::Inconsistent;
    }
    let mut x = vec![Rational::default(); cols];
    for (row, &p) in reduced.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    if pivots.len() == cols {
        Solve::Unique(x)
    } else {
        Solve::Many(x, cols - pivots.len())
    }
}

/// Row-reduces GF(2) rows in place, dropping zero rows, and returns the pivot columns.
pub fn gf2_eliminate(rows: &mut Vec<Vec<u8>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] == 1) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] == 1 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v ^= pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of the GF(2) nullspace, parametric in the free columns.
pub fn gf2_nullspace(rows: &[Vec<u8>], cols: usize) -> Vec<Vec<u8>> {
    let mut reduced = rows.to_vec();
    let pivots = gf2_eliminate(&mut reduced, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0u8; cols];
            v[f] = 1;
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = row[f];
            }
            v
        })
        .collect()
}

/// Whether `A·x = b` has a solution over GF(2).
pub fn gf2_consistent(rows: &[Vec<u8>], rhs: &[u8], cols: usize) -> bool {
    let mut augmented: Vec<Vec<u8>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut v = r.clone();
            v.push(b);
            v
        })
        .collect();
    let pivots = gf2_eliminate(&mut augmented, cols + 1);
    pivots.last() != Some(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| qi(v)).collect()).collect()
    }

    #[test]
    fn nullspace_of_repetition_checks() {
        let ns = nullspace(m(&[&[1, 1, 0], &[0, 1, 1]]), 3);
        assert_eq!(ns, m(&[&[1, -1, 1]]));
    }

    #[test]
    fn solve_classifies() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&a, &[qi(1), qi(2)], 2), Solve::Inconsistent);
        assert!(matches!(solve(&a, &[qi(1), qi(1)], 2), Solve::Many(_, 1)));
        let b = m(&[&[1, 0], &[1, 1]]);
        assert_eq!(solve(&b, &[qi(2), qi(5)], 2), Solve::Unique(vec![qi(2), qi(3)]));
    }

    #[test]
    fn gf2_rank_differs_from_real_rank() {
        // Rows of the complete-graph K3 incidence matrix: rank 3 over R, 2 over GF(2).
        let rows = vec![vec![1u8, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        let mut g = rows.clone();
        assert_eq!(gf2_eliminate(&mut g, 3).len(), 2);
        let real: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| qi(v as i64)).collect()).collect();
        assert_eq!(rank(real, 3), 3);
        assert!(gf2_consistent(&rows, &[1, 1, 0], 3));
        assert!(!gf2_consistent(&rows, &[1, 1, 1], 3));
    }
}
