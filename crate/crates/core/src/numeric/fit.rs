//! Linear least squares and Richardson extrapolation.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Least-squares fit of `y ≈ Σ c_j · rows[i][j]`.
///
/// Columns are rescaled to unit norm before the SVD so that badly
/// scaled bases (powers of a small variable) stay well conditioned.
pub fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Result<Vec<f64>> {
    let m = rows.len();
    if m == 0 || m != y.len() {
        return Err(Error::arg("least squares needs matching non-empty data"));
    }
    let n = rows[0].len();
    if m < n {
        return Err(Error::arg("least squares is underdetermined"));
    }
    let mut a = DMatrix::from_fn(m, n, |i, j| rows[i][j]);
    let mut scale = vec![1.0; n];
    for (j, s) in scale.iter_mut().enumerate() {
        let norm = a.column(j).norm();
        if norm > 0.0 {
            *s = norm;
            a.column_mut(j).scale_mut(1.0 / norm);
        }
    }
    let b = DVector::from_column_slice(y);
    let svd = a.svd(true, true);
    let sol = svd
        .solve(&b, 1e-14)
        .map_err(|e| Error::arg(format!("least squares failed: {e}")))?;
    Ok(sol.iter().zip(&scale).map(|(c, s)| c / s).collect())
}

/// Ordinary straight-line fit, returning `(intercept, slope)`.
pub fn line_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    let rows: Vec<Vec<f64>> = x.iter().map(|&x| vec![1.0, x]).collect();
    let c = least_squares(&rows, y)?;
    Ok((c[0], c[1]))
}

/// Richardson table for samples `values[k] = F(h / ratio^k)` with an error
/// expansion in powers `h^{orders[0]}, h^{orders[1]}, ...`.
/// Returns the most extrapolated value and the change at the last level.
pub fn richardson(values: &[f64], ratio: f64, orders: &[f64]) -> (f64, f64) {
    let mut row = values.to_vec();
    let mut change = f64::INFINITY;
    for &p in orders {
        if row.len() < 2 {
            break;
        }
        let f = ratio.powf(p);
        let next: Vec<f64> = row.windows(2).map(|w| (f * w[1] - w[0]) / (f - 1.0)).collect();
        change = (next[next.len() - 1] - row[row.len() - 1]).abs();
        row = next;
    }
    (row[row.len() - 1], change)
}
