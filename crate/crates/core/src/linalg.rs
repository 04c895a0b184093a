//! Small dense linear algebra over `f64`, sized for Coxeter ranks up to a few
//! dozen. Matrices are row-major `Vec<Vec<f64>>`.

/// Pivot tolerance for rank and null-space computations.
pub const PIVOT_TOL: f64 = 1e-8;

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<f64>], tol: f64) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let (best, val) =
            (r..rows).map(|i| (i, m[i][col].abs())).fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= tol {
            continue;
        }
        m.swap(r, best);
        let p = m[r][col];
        for v in m[r].iter_mut() {
            *v /= p;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r {
                let f = row[col];
                if f != 0.0 {
                    for (x, p) in row.iter_mut().zip(&pivot) {
                        *x -= f * p;
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Rank of the matrix whose rows are `rows`.
pub fn rank(rows: &[Vec<f64>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, PIVOT_TOL).len()
}

/// Basis of the null space `{v : m v = 0}` of a square or rectangular matrix.
pub fn null_space(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut r = m.to_vec();
    let pivots = rref(&mut r, PIVOT_TOL);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0.0; cols];
            v[f] = 1.0;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f];
            }
            v
        })
        .collect()
}

/// Square matrix product `a * b`.
pub fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0.0; m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x != 0.0 {
                for j in 0..m {
                    out[i][j] += x * b[l][j];
                }
            }
        }
    }
    out
}

/// Cholesky test for positive definiteness of a symmetric matrix.
pub fn is_positive_definite(a: &[Vec<f64>]) -> bool {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = a[i][i] - s;
                if d <= 1e-9 {
                    return false;
                }
                l[i][j] = d.sqrt();
            } else {
                l[i][j] = (a[i][j] - s) / l[j][j];
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_null_space() {
        let m = vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0], vec![0.0, 1.0, 1.0]];
        assert_eq!(rank(&m), 2);
        let ns = null_space(&m);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot: f64 = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.abs() < 1e-12);
        }
    }

    #[test]
    fn positive_definite() {
        assert!(is_positive_definite(&[vec![1.0, -0.5], vec![-0.5, 1.0]]));
        assert!(!is_positive_definite(&[vec![1.0, -1.0], vec![-1.0, 1.0]]));
    }
}
