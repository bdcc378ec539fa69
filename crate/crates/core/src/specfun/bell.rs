//! Incomplete (second-kind) Bell polynomials B_{n,k}.

use crate::error::{Error, Result};
use crate::mp::Scalar;

/// Pascal triangle C(m, j) for 0 ≤ j ≤ m ≤ `n`.
pub fn binomial_table(n: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut row = vec![1i64; m + 1];
        for j in 1..m {
            row[j] = rows[m - 1][j - 1] + rows[m - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// All B_{m,k}(x_1, …) for 0 ≤ k ≤ m ≤ n, where n = `x.len()`.
///
/// Row `m` of the result holds B_{m,0} … B_{m,m}, built with
/// B_{m,k} = Σ_{i=1}^{m−k+1} C(m−1, i−1) x_i B_{m−i,k−1}.
///
/// # Panics
///
/// Panics if `x` is empty; there is no value to take the scalar type from.
pub fn bell_triangle<T: Scalar>(x: &[T]) -> Vec<Vec<T>> {
    let n = x.len();
    let zero = x[0].zero_like();
    let binom = binomial_table(n.max(1));
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(n + 1);
    rows.push(vec![x[0].one_like()]);
    for m in 1..=n {
        let mut row = vec![zero.clone(); m + 1];
        for k in 1..=m {
            let mut acc = zero.clone();
            for i in 1..=(m - k + 1) {
                let lower = &rows[m - i][k - 1];
                let weight = x[0].int_like(binom[m - 1][i - 1]);
                acc = acc + weight * x[i - 1].clone() * lower.clone();
            }
            row[k] = acc;
        }
        rows.push(row);
    }
    rows
}

/// B_{n,k}(x_1, …, x_{n−k+1}).
pub fn bell_incomplete<T: Scalar>(n: usize, k: usize, x: &[T]) -> Result<T> {
    if k > n {
        return Err(Error::Domain(format!("Bell polynomial needs k ≤ n, got n = {n}, k = {k}")));
    }
    let expected = n - k + 1;
    if x.len() != expected {
        return Err(Error::ArgumentLength { expected, got: x.len() });
    }
    if n == 0 {
        return Ok(x[0].one_like());
    }
    if k == 0 {
        return Ok(x[0].zero_like());
    }
    // Arguments beyond x_{n−k+1} never reach B_{n,k}; pad to length n.
    let mut padded = x.to_vec();
    padded.resize(n, x[0].zero_like());
    let rows = bell_triangle(&padded);
    Ok(rows[n][k].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(bell_incomplete(0, 0, &[7.0]).unwrap(), 1.0);
        assert_eq!(bell_incomplete(3, 0, &[2.0, 3.0, 5.0, 7.0]).unwrap(), 0.0);
        assert_eq!(bell_incomplete(1, 1, &[2.5]).unwrap(), 2.5);
        assert_eq!(bell_incomplete(2, 1, &[2.0, 3.0]).unwrap(), 3.0);
        assert_eq!(bell_incomplete(3, 2, &[2.0, 3.0]).unwrap(), 18.0);
        // B_{n,n}(x) = x^n, B_{n,1}(x) = x_n
        assert_eq!(bell_incomplete(4, 4, &[3.0]).unwrap(), 81.0);
        assert_eq!(bell_incomplete(4, 1, &[1.0, 2.0, 3.0, 4.0]).unwrap(), 4.0);
    }

    #[test]
    fn unit_seeds_give_stirling_numbers() {
        let rows = bell_triangle(&[1.0; 6]);
        assert_eq!(rows[5], vec![0.0, 1.0, 15.0, 25.0, 10.0, 1.0]);
        assert_eq!(rows[6], vec![0.0, 1.0, 31.0, 90.0, 65.0, 15.0, 1.0]);
    }

    #[test]
    fn argument_length_is_checked() {
        assert_eq!(
            bell_incomplete(3, 2, &[1.0]),
            Err(Error::ArgumentLength { expected: 2, got: 1 })
        );
        assert!(matches!(bell_incomplete(2, 3, &[1.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn binomials() {
        let t = binomial_table(10);
        assert_eq!(t[10][5], 252);
        assert_eq!(t[7][0], 1);
        assert_eq!(t[7][7], 1);
    }
}
