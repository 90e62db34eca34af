//! Dense least squares by Householder QR, column by column.
//!
//! Columns are processed in their given order. A column whose remaining
//! norm after applying the accepted reflectors is at most
//! `RANK_TOL · ‖column‖` lies (numerically) in the span of the columns
//! before it and is dropped; later columns never displace earlier ones.

use nalgebra::DMatrix;

pub const RANK_TOL: f64 = 1e-10;

pub struct Factorization {
    rows: usize,
    /// Householder vectors, each acting on rows `k..rows` for the k-th kept column.
    reflectors: Vec<Vec<f64>>,
    /// Kept columns after reflection; entry `k` holds the first `k + 1` rows of R's column.
    r_cols: Vec<Vec<f64>>,
    pub kept: Vec<usize>,
    pub dropped: Vec<usize>,
}

impl Factorization {
    /// `columns[j]` is the j-th column; all must have the same length.
    pub fn new(columns: &[Vec<f64>]) -> Self {
        let rows = columns.first().map_or(0, Vec::len);
        let mut f = Factorization {
            rows,
            reflectors: Vec::new(),
            r_cols: Vec::new(),
            kept: Vec::new(),
            dropped: Vec::new(),
        };
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            f.push_column(j, col);
        }
        f
    }

    fn push_column(&mut self, index: usize, col: &[f64]) {
        let k = self.reflectors.len();
        let original = norm(col);
        if k >= self.rows || original == 0.0 || !original.is_finite() {
            self.dropped.push(index);
            return;
        }
        let mut c = col.to_vec();
        self.apply_qt(&mut c);
        let tail = norm(&c[k..]);
        if tail <= RANK_TOL * original {
            self.dropped.push(index);
            return;
        }
        // v = x + sign(x0)‖x‖e1 on rows k.., normalised
        let alpha = if c[k] >= 0.0 { -tail } else { tail };
        let mut v = c[k..].to_vec();
        v[0] -= alpha;
        let vn = norm(&v);
        v.iter_mut().for_each(|e| *e /= vn);
        let mut r = c[..k].to_vec();
        r.push(alpha);
        self.reflectors.push(v);
        self.r_cols.push(r);
        self.kept.push(index);
    }

    /// Applies `Qᵀ` (all accepted reflectors in order) in place.
    pub fn apply_qt(&self, x: &mut [f64]) {
        for (k, v) in self.reflectors.iter().enumerate() {
            let seg = &mut x[k..];
            let d: f64 = v.iter().zip(seg.iter()).map(|(a, b)| a * b).sum();
            seg.iter_mut().zip(v).for_each(|(s, vi)| *s -= 2.0 * d * vi);
        }
    }

    pub fn rank(&self) -> usize {
        self.kept.len()
    }

    /// Least-squares coefficients for the kept columns, in `kept` order.
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let mut b = rhs.to_vec();
        self.apply_qt(&mut b);
        let n = self.rank();
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let s = (i + 1..n).fold(b[i], |s, j| s - self.r_cols[j][i] * x[j]);
            x[i] = s / self.r_cols[i][i];
        }
        x
    }

    /// Upper-triangular factor of the kept columns.
    pub fn r_matrix(&self) -> DMatrix<f64> {
        let n = self.rank();
        DMatrix::from_fn(n, n, |i, j| if i <= j { self.r_cols[j][i] } else { 0.0 })
    }

    /// 2-norm condition number of the kept columns, `σ_max / σ_min` of R.
    pub fn condition(&self) -> f64 {
        if self.rank() == 0 {
            return f64::INFINITY;
        }
        let sv = self.r_matrix().singular_values();
        let max = sv.max();
        let min = sv.min();
        if min == 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }
}

fn norm(x: &[f64]) -> f64 {
    // scaled to avoid overflow on large monomial values
    let m = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if m == 0.0 || !m.is_finite() {
        return m;
    }
    m * x.iter().map(|v| (v / m) * (v / m)).sum::<f64>().sqrt()
}
