//! Fixed test matrices shared by the experiments, the CLI and the tests.

use crate::matrices::BinaryMatrix;

/// A named matrix of the corpus.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub matrix: BinaryMatrix,
}

const HREP: &str = include_str!("../data/hrep.txt");
const H3: &str = include_str!("../data/h3.txt");
const HAMMING74: &str = include_str!("../data/hamming74.txt");
const SPARSE10: &str = include_str!("../data/sparse10.txt");
const SPARSE12: &str = include_str!("../data/sparse12.txt");
const ARRAY_LDPC20: &str = include_str!("../data/array_ldpc20.alist");

fn dense(text: &str) -> BinaryMatrix {
    BinaryMatrix::parse_dense(text).expect("corpus matrix parses")
}

/// `[[1,1,0],[0,1,1]]`: the length-3 repetition code.
pub fn hrep() -> BinaryMatrix {
    dense(HREP)
}

/// The single parity check `[1 1 1]`.
pub fn h3() -> BinaryMatrix {
    dense(H3)
}

/// The 3×3 identity, whose fundamental cone is `{0}`.
pub fn i3() -> BinaryMatrix {
    BinaryMatrix::identity(3)
}

/// Parity-check matrix of the Hamming(7,4) code.
pub fn hamming74() -> BinaryMatrix {
    dense(HAMMING74)
}

/// Sparse 8×10 matrix with minimum AWGNC pseudo-weight above 4.
pub fn sparse10() -> BinaryMatrix {
    dense(SPARSE10)
}

/// Sparse 10×12 matrix with minimum AWGNC pseudo-weight above 4.
pub fn sparse12() -> BinaryMatrix {
    dense(SPARSE12)
}

/// The (3,4)-regular array LDPC matrix with `p = 5`: block `(j, l)` is the
/// cyclic shift `P^{jl}`. Length 20, 15 checks, girth 6.
pub fn array_ldpc20() -> BinaryMatrix {
    BinaryMatrix::parse_alist(ARRAY_LDPC20).expect("corpus matrix parses")
}

/// Repetition code of length `n` with the path checks `x_i + x_{i+1}`.
pub fn path_code(n: usize) -> BinaryMatrix {
    let supports: Vec<Vec<usize>> = (0..n.saturating_sub(1)).map(|i| vec![i, i + 1]).collect();
    BinaryMatrix::from_row_supports(supports.len(), n, &supports).expect("valid supports")
}

/// Every corpus matrix, smallest first.
pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry { name: "h3", matrix: h3() },
        CorpusEntry { name: "hrep", matrix: hrep() },
        CorpusEntry { name: "i3", matrix: i3() },
        CorpusEntry { name: "path6", matrix: path_code(6) },
        CorpusEntry { name: "hamming74", matrix: hamming74() },
        CorpusEntry { name: "path9", matrix: path_code(9) },
        CorpusEntry { name: "sparse10", matrix: sparse10() },
        CorpusEntry { name: "sparse12", matrix: sparse12() },
        CorpusEntry { name: "array_ldpc20", matrix: array_ldpc20() },
    ]
}

pub fn by_name(name: &str) -> Option<BinaryMatrix> {
    corpus().into_iter().find(|e| e.name == name).map(|e| e.matrix)
}

/// Length of the shortest cycle in the Tanner graph, or `None` if acyclic.
pub fn girth(h: &BinaryMatrix) -> Option<usize> {
    // Breadth-first search from every variable node; nodes 0..n are
    // variables and n..n+m checks.
    let (m, n) = (h.rows(), h.cols());
    let neighbours = |v: usize| -> Vec<usize> {
        if v < n {
            h.col_support(v).iter().map(|&j| n + j).collect()
        } else {
            h.row_support(v - n).to_vec()
        }
    };
    let mut best: Option<usize> = None;
    for root in 0..n + m {
        let mut dist = vec![usize::MAX; n + m];
        let mut parent = vec![usize::MAX; n + m];
        dist[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in neighbours(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let shapes: Vec<(&str, usize, usize)> =
            corpus().iter().map(|e| (e.name, e.matrix.rows(), e.matrix.cols())).collect();
        assert_eq!(
            shapes,
            vec![
                ("h3", 1, 3),
                ("hrep", 2, 3),
                ("i3", 3, 3),
                ("path6", 5, 6),
                ("hamming74", 3, 7),
                ("path9", 8, 9),
                ("sparse10", 8, 10),
                ("sparse12", 10, 12),
                ("array_ldpc20", 15, 20),
            ]
        );
        assert!(by_name("hamming74").is_some());
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn array_ldpc_matches_construction() {
        let p = 5;
        let h = array_ldpc20();
        for j in 0..3 {
            for r in 0..p {
                let expected: Vec<usize> = (0..4).map(|l| l * p + (r + j * l) % p).collect();
                assert_eq!(h.row_support(j * p + r), expected.as_slice());
            }
        }
        assert!(h.col_supports().iter().all(|c| c.len() == 3));
        assert!(h.row_supports().iter().all(|r| r.len() == 4));
    }

    #[test]
    fn girths() {
        assert_eq!(girth(&array_ldpc20()), Some(6));
        assert_eq!(girth(&hamming74()), Some(4));
        assert_eq!(girth(&path_code(5)), None);
        assert_eq!(girth(&BinaryMatrix::parse_dense("1 1\n1 1").unwrap()), Some(4));
    }
}
