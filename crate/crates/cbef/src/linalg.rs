//! Fixed-dimension linear algebra shared by every module.
//!
//! The state is always 6-dimensional (position stacked over velocity) and
//! an agent's observation matrix has one row per neighbor, so the only
//! shapes that exist are `[f64; 3]`, `[f64; 6]`, 6×6, and R×6. Products
//! accumulate strictly left to right so results are identical across runs.

/// 3-vector (positions, velocities, accelerations).
pub type Vec3 = [f64; 3];
/// Stacked state vector `(p_x, p_y, p_z, v_x, v_y, v_z)`.
pub type Vec6 = [f64; 6];

/// Row-major 6×6 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat6(pub [[f64; 6]; 6]);

impl Mat6 {
    pub fn zeros() -> Self {
        Mat6([[0.0; 6]; 6])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..6 {
            m.0[i][i] = 1.0;
        }
        m
    }

    /// Textbook row-dot-column product, terms summed left to right.
    pub fn matvec(&self, x: &Vec6) -> Vec6 {
        let mut out = [0.0; 6];
        for (r, row) in self.0.iter().enumerate() {
            let mut acc = 0.0;
            for c in 0..6 {
                acc += row[c] * x[c];
            }
            out[r] = acc;
        }
        out
    }
}

/// Matrix with a runtime row count and exactly six columns (an agent's
/// observation matrix has one row per neighbor).
#[derive(Debug, Clone, PartialEq)]
pub struct MatRx6 {
    rows: Vec<Vec6>,
}

impl MatRx6 {
    pub fn from_rows(rows: Vec<Vec6>) -> Self {
        MatRx6 { rows }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec6] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &Vec6 {
        &self.rows[r]
    }

    /// `M · x`, one output entry per row.
    pub fn matvec(&self, x: &Vec6) -> Vec<f64> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = 0.0;
                for c in 0..6 {
                    acc += row[c] * x[c];
                }
                acc
            })
            .collect()
    }

    /// `Mᵀ · r` without materializing the transpose; rows are folded in
    /// order so the summation order is fixed.
    pub fn transpose_apply(&self, r: &[f64]) -> Vec6 {
        assert_eq!(
            r.len(),
            self.rows.len(),
            "dimension mismatch: {} coefficients for {} rows",
            r.len(),
            self.rows.len()
        );
        let mut out = [0.0; 6];
        for (coef, row) in r.iter().zip(&self.rows) {
            for c in 0..6 {
                out[c] += coef * row[c];
            }
        }
        out
    }
}

/// Euclidean norm, scaled by the largest component so huge entries do not
/// overflow when squared.
pub fn norm2(x: &[f64]) -> f64 {
    let max = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if max == 0.0 {
        return 0.0;
    }
    if max.is_infinite() {
        return f64::INFINITY;
    }
    let mut sum = 0.0;
    for v in x {
        let s = v / max;
        sum += s * s;
    }
    max * sum.sqrt()
}
