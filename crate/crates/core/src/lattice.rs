//! Integer linear systems `A c = v` solved by column-style Hermite reduction.
//!
//! Used to decide whether a target exponent vector lies in the lattice
//! spanned by a candidate set's exponent vectors, and to produce one integer
//! solution plus a kernel basis for parity adjustments.

/// A particular integer solution together with a basis of the integer kernel.
#[derive(Debug, Clone)]
pub struct LatticeSolution {
    pub particular: Vec<i64>,
    pub kernel: Vec<Vec<i64>>,
}

/// Solves `A c = v` over the integers, where `columns[j]` is the j-th column
/// of `A`. Returns `None` when no integer solution exists.
///
/// Arithmetic runs in i128; desk-scale exponent matrices stay far from
/// overflow.
pub fn solve(columns: &[Vec<i64>], target: &[i64]) -> Option<LatticeSolution> {
    let n = columns.len();
    let m = target.len();
    debug_assert!(columns.iter().all(|c| c.len() == m));

    if n == 0 {
        return if target.iter().all(|&x| x == 0) {
            Some(LatticeSolution { particular: Vec::new(), kernel: Vec::new() })
        } else {
            None
        };
    }

    // h: working copy of A (column major), u: unimodular transform with A·u = h.
    let mut h: Vec<Vec<i128>> =
        columns.iter().map(|c| c.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1 } else { 0 }).collect())
        .collect();

    let mut pivot_cols: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut next_col = 0usize;
    for row in 0..m {
        loop {
            // Smallest nonzero entry in this row among unpivoted columns.
            let mut best: Option<usize> = None;
            for j in next_col..n {
                if h[j][row] != 0 && best.map_or(true, |b| h[j][row].abs() < h[b][row].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            h.swap(next_col, b);
            u.swap(next_col, b);
            let mut reduced_all = true;
            for j in next_col + 1..n {
                if h[j][row] != 0 {
                    let q = h[j][row].div_euclid(h[next_col][row]);
                    for r in 0..m {
                        h[j][r] -= q * h[next_col][r];
                    }
                    for r in 0..n {
                        u[j][r] -= q * u[next_col][r];
                    }
                    if h[j][row] != 0 {
                        reduced_all = false;
                    }
                }
            }
            if reduced_all {
                pivot_cols.push((row, next_col));
                next_col += 1;
                break;
            }
        }
        if next_col == n {
            break;
        }
    }
    // Account for rows after the columns ran out.
    let rank = next_col;

    // Forward-substitute y with H y = v over the pivot structure.
    let mut residual: Vec<i128> = target.iter().map(|&x| x as i128).collect();
    let mut y = vec![0i128; n];
    for &(row, col) in &pivot_cols {
        let p = h[col][row];
        if residual[row] % p != 0 {
            return None;
        }
        let q = residual[row] / p;
        y[col] = q;
        for r in 0..m {
            residual[r] -= q * h[col][r];
        }
    }
    if residual.iter().any(|&x| x != 0) {
        return None;
    }

    let particular: Vec<i64> = (0..n)
        .map(|i| {
            let s: i128 = (0..n).map(|j| u[j][i] * y[j]).sum();
            i64::try_from(s).expect("lattice solution overflow")
        })
        .collect();
    let kernel: Vec<Vec<i64>> = (rank..n)
        .map(|j| {
            u[j].iter()
                .map(|&x| i64::try_from(x).expect("lattice kernel overflow"))
                .collect()
        })
        .collect();

    Some(LatticeSolution { particular, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn apply(columns: &[Vec<i64>], c: &[i64]) -> Vec<i64> {
        let m = columns.first().map_or(0, |col| col.len());
        let mut out = vec![0i64; m];
        for (col, &coef) in columns.iter().zip(c) {
            for (o, &x) in out.iter_mut().zip(col) {
                *o += coef * x;
            }
        }
        out
    }

    #[test]
    fn solves_simple_system() {
        // columns (1,1), (0,2); target (2, 4) => c = (2, 1).
        let cols = vec![vec![1, 1], vec![0, 2]];
        let sol = solve(&cols, &[2, 4]).unwrap();
        assert_eq!(apply(&cols, &sol.particular), vec![2, 4]);
    }

    #[test]
    fn detects_unsolvable_parity() {
        // 2c = 1 has no integer solution.
        let cols = vec![vec![2]];
        assert!(solve(&cols, &[1]).is_none());
        assert!(solve(&cols, &[4]).is_some());
    }

    #[test]
    fn detects_missing_direction() {
        let cols = vec![vec![1, 0]];
        assert!(solve(&cols, &[0, 1]).is_none());
    }

    #[test]
    fn kernel_spans_dependent_columns() {
        let cols = vec![vec![1, 0], vec![2, 0], vec![0, 1]];
        let sol = solve(&cols, &[3, 1]).unwrap();
        assert_eq!(apply(&cols, &sol.particular), vec![3, 1]);
        assert_eq!(sol.kernel.len(), 1);
        for k in &sol.kernel {
            assert_eq!(apply(&cols, k), vec![0, 0]);
            assert!(k.iter().any(|&x| x != 0));
        }
    }

    #[test]
    fn empty_columns() {
        assert!(solve(&[], &[0, 0]).is_some());
        assert!(solve(&[], &[1]).is_none());
    }

    proptest! {
        #[test]
        fn reconstructs_random_combinations(
            cols in proptest::collection::vec(
                proptest::collection::vec(-4i64..=4, 3),
                1..6
            ),
            coefs in proptest::collection::vec(-5i64..=5, 6)
        ) {
            let target = apply(&cols, &coefs[..cols.len()]);
            let sol = solve(&cols, &target).expect("constructed target must be solvable");
            prop_assert_eq!(apply(&cols, &sol.particular), target);
            for k in &sol.kernel {
                prop_assert_eq!(apply(&cols, k), vec![0, 0, 0]);
            }
        }
    }
}
