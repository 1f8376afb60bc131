//! Target motion model: constant velocity over each sampling interval,
//! with white acceleration noise entering through the input matrix.
//!
//! The transition matrix is identity plus a `delta` block coupling
//! position to velocity; the input matrix integrates an acceleration over
//! one interval (`delta^2/2` into position, `delta` into velocity). Both
//! are materialized as dense arrays: at 6×6 the explicit form doubles as
//! documentation.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::linalg::{Mat6, Vec3, Vec6};

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("sampling time must be positive, got {0}")]
    NonPositiveDelta(f64),
    #[error("noise standard deviation must be nonnegative, got {0}")]
    NegativeSigma(f64),
}

/// Position and velocity of the target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetState {
    pub position: Vec3,
    pub velocity: Vec3,
}

impl TargetState {
    pub fn new(position: Vec3, velocity: Vec3) -> Self {
        TargetState { position, velocity }
    }

    /// Stacked layout `(p_x, p_y, p_z, v_x, v_y, v_z)`; every vector
    /// exchanged between modules uses exactly this component order.
    pub fn to_vector(&self) -> Vec6 {
        [
            self.position[0],
            self.position[1],
            self.position[2],
            self.velocity[0],
            self.velocity[1],
            self.velocity[2],
        ]
    }

    pub fn from_vector(x: &Vec6) -> Self {
        TargetState {
            position: [x[0], x[1], x[2]],
            velocity: [x[3], x[4], x[5]],
        }
    }
}

/// Discrete-time constant-velocity model for one sampling time.
#[derive(Debug, Clone, PartialEq)]
pub struct NcvModel {
    delta: f64,
    transition: Mat6,
    input: [[f64; 3]; 6],
}

/// Builds the transition and input matrices for sampling time `delta`.
pub fn build_ncv(delta: f64) -> Result<NcvModel, DynamicsError> {
    if !(delta > 0.0) {
        return Err(DynamicsError::NonPositiveDelta(delta));
    }
    let mut transition = Mat6::identity();
    transition.0[0][3] = delta;
    transition.0[1][4] = delta;
    transition.0[2][5] = delta;

    let half_sq = 0.5 * delta * delta;
    let mut input = [[0.0; 3]; 6];
    input[0][0] = half_sq;
    input[1][1] = half_sq;
    input[2][2] = half_sq;
    input[3][0] = delta;
    input[4][1] = delta;
    input[5][2] = delta;

    Ok(NcvModel {
        delta,
        transition,
        input,
    })
}

impl NcvModel {
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// The 6×6 transition matrix.
    pub fn transition(&self) -> &Mat6 {
        &self.transition
    }

    /// The 6×3 input matrix mapping an acceleration into the state.
    pub fn input(&self) -> &[[f64; 3]; 6] {
        &self.input
    }

    /// One step of `x(k+1) = A x(k) + B w(k)`.
    pub fn propagate(&self, state: &TargetState, accel: &Vec3) -> TargetState {
        let x = state.to_vector();
        let mut next = self.transition.matvec(&x);
        for r in 0..6 {
            for c in 0..3 {
                next[r] += self.input[r][c] * accel[c];
            }
        }
        TargetState::from_vector(&next)
    }
}

/// Isotropic zero-mean Gaussian acceleration noise.
#[derive(Debug, Clone, Copy)]
pub struct ProcessNoise {
    sigma_w: f64,
}

impl ProcessNoise {
    pub fn new(sigma_w: f64) -> Result<Self, DynamicsError> {
        if !(sigma_w >= 0.0) {
            return Err(DynamicsError::NegativeSigma(sigma_w));
        }
        Ok(ProcessNoise { sigma_w })
    }

    pub fn sigma_w(&self) -> f64 {
        self.sigma_w
    }

    /// Three independent draws from `Normal(0, sigma_w^2)`; the caller owns
    /// the generator.
    pub fn sample(&self, rng: &mut impl Rng) -> Vec3 {
        let normal = Normal::new(0.0, self.sigma_w).expect("sigma validated nonnegative");
        [normal.sample(rng), normal.sample(rng), normal.sample(rng)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    /// Oracle: dense A and B written straight from the block formulas and
    /// multiplied with local loops, independent of `Mat6::matvec`.
    fn propagate_oracle(delta: f64, x: &Vec6, w: &Vec3) -> Vec6 {
        let mut a = [[0.0; 6]; 6];
        for i in 0..6 {
            a[i][i] = 1.0;
        }
        a[0][3] = delta;
        a[1][4] = delta;
        a[2][5] = delta;
        let mut b = [[0.0; 3]; 6];
        for axis in 0..3 {
            b[axis][axis] = delta * delta / 2.0;
            b[axis + 3][axis] = delta;
        }
        let mut out = [0.0; 6];
        for r in 0..6 {
            for c in 0..6 {
                out[r] += a[r][c] * x[c];
            }
            for c in 0..3 {
                out[r] += b[r][c] * w[c];
            }
        }
        out
    }

    #[test]
    fn matrices_for_unit_delta() {
        let m = build_ncv(1.0).unwrap();
        assert_eq!(m.transition().0[0][3], 1.0);
        assert_eq!(m.input()[0][0], 0.5);
        assert_eq!(m.input()[3][0], 1.0);
    }

    #[test]
    fn matrices_for_half_delta() {
        let m = build_ncv(0.5).unwrap();
        assert_eq!(m.transition().0[2][5], 0.5);
        assert_eq!(m.input()[1][1], 0.125);
        assert_eq!(m.input()[5][2], 0.5);
    }

    #[test]
    fn rejects_nonpositive_delta() {
        assert!(build_ncv(0.0).is_err());
        assert!(build_ncv(-0.1).is_err());
        assert!(build_ncv(f64::NAN).is_err());
    }

    #[test]
    fn vanishing_delta_limit() {
        // delta = 0 itself is rejected; the formulas degenerate to an
        // identity transition and a zero input matrix in the limit.
        let m = build_ncv(1e-300).unwrap();
        let identity = Mat6::identity();
        for r in 0..6 {
            for c in 0..6 {
                assert!((m.transition().0[r][c] - identity.0[r][c]).abs() <= 1e-300);
            }
            for c in 0..3 {
                assert!(m.input()[r][c].abs() <= 1e-300);
            }
        }
    }

    #[test]
    fn pure_constant_velocity_step() {
        let m = build_ncv(0.5).unwrap();
        let next = m.propagate(&TargetState::new([0.0; 3], [1.0, 0.0, 0.0]), &[0.0; 3]);
        assert_eq!(next.position, [0.5, 0.0, 0.0]);
        assert_eq!(next.velocity, [1.0, 0.0, 0.0]);
    }

    #[test]
    fn acceleration_enters_through_input_matrix() {
        let m = build_ncv(1.0).unwrap();
        let next = m.propagate(&TargetState::new([0.0; 3], [0.0; 3]), &[1.0, 0.0, 0.0]);
        assert_eq!(next.position, [0.5, 0.0, 0.0]);
        assert_eq!(next.velocity, [1.0, 0.0, 0.0]);
    }

    #[test]
    fn propagate_matches_independent_oracle() {
        let m = build_ncv(0.2).unwrap();
        let x = [1.0, 2.0, 3.0, 0.1, 0.2, 0.3];
        let w = [0.01, 0.02, 0.03];
        let got = m.propagate(&TargetState::from_vector(&x), &w).to_vector();
        let expected = propagate_oracle(0.2, &x, &w);
        for c in 0..6 {
            assert!((got[c] - expected[c]).abs() < 1e-15, "component {c}");
        }
        // Frozen from the oracle.
        assert!((got[0] - 1.0202).abs() < 1e-12);
        assert!((got[3] - 0.102).abs() < 1e-12);
    }

    #[test]
    fn propagate_is_linear() {
        let m = build_ncv(0.3).unwrap();
        let mut rng = rng::substream(4, 0);
        for _ in 0..50 {
            let mut x1 = [0.0; 6];
            let mut x2 = [0.0; 6];
            let mut w1 = [0.0; 3];
            let mut w2 = [0.0; 3];
            for v in x1.iter_mut().chain(&mut x2) {
                *v = rng.gen_range(-10.0..10.0);
            }
            for v in w1.iter_mut().chain(&mut w2) {
                *v = rng.gen_range(-10.0..10.0);
            }
            let sum_x: Vec6 = std::array::from_fn(|c| x1[c] + x2[c]);
            let sum_w: Vec3 = std::array::from_fn(|c| w1[c] + w2[c]);
            let combined = m
                .propagate(&TargetState::from_vector(&sum_x), &sum_w)
                .to_vector();
            let a = m.propagate(&TargetState::from_vector(&x1), &w1).to_vector();
            let b = m.propagate(&TargetState::from_vector(&x2), &w2).to_vector();
            for c in 0..6 {
                assert!((combined[c] - (a[c] + b[c])).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn velocity_unchanged_without_noise() {
        let m = build_ncv(0.7).unwrap();
        let mut state = TargetState::new([1.0, -2.0, 0.5], [0.3, 0.1, -0.9]);
        let v0 = state.velocity;
        for _ in 0..100 {
            state = m.propagate(&state, &[0.0; 3]);
        }
        assert_eq!(state.velocity, v0);
    }

    #[test]
    fn noise_free_closed_form_over_many_steps() {
        // Default sampling time, target crossing ~50 length units.
        assert_closed_form(0.1, [1.0, -2.0, 3.0], [0.05, -0.03, 0.02]);
        // Dyadic sampling time: every partial sum is exact in binary.
        assert_closed_form(0.125, [1.0, -2.0, 3.0], [1.0, -0.5, 0.25]);
    }

    fn assert_closed_form(delta: f64, p0: Vec3, v0: Vec3) {
        let m = build_ncv(delta).unwrap();
        let mut state = TargetState::new(p0, v0);
        for k in 1..=10_000usize {
            state = m.propagate(&state, &[0.0; 3]);
            for axis in 0..3 {
                let expect = p0[axis] + k as f64 * delta * v0[axis];
                assert!(
                    (state.position[axis] - expect).abs() < 1e-10,
                    "delta={delta} k={k} axis={axis}"
                );
            }
        }
    }

    #[test]
    fn transition_semigroup() {
        // A(d1) * A(d2) == A(d1 + d2), multiplied with a local helper.
        let d1 = 0.37;
        let d2 = 1.21;
        let a1 = build_ncv(d1).unwrap().transition().0;
        let a2 = build_ncv(d2).unwrap().transition().0;
        let sum = build_ncv(d1 + d2).unwrap().transition().0;
        for r in 0..6 {
            for c in 0..6 {
                let mut acc = 0.0;
                for k in 0..6 {
                    acc += a1[r][k] * a2[k][c];
                }
                assert!((acc - sum[r][c]).abs() < 1e-12, "({r},{c})");
            }
        }
    }

    #[test]
    fn zero_sigma_yields_zero_noise() {
        let noise = ProcessNoise::new(0.0).unwrap();
        let mut rng = rng::substream(1, rng::TRUTH_STREAM);
        for _ in 0..10 {
            assert_eq!(noise.sample(&mut rng), [0.0; 3]);
        }
    }

    #[test]
    fn seeded_noise_fixture() {
        // Pinned from the first run of the seeded substream.
        let noise = ProcessNoise::new(1.0).unwrap();
        let mut rng = rng::substream(42, rng::TRUTH_STREAM);
        let draw = noise.sample(&mut rng);
        let expected = [0.03945938190187611, -1.627294560073843, -0.23948327631209562];
        for axis in 0..3 {
            assert!((draw[axis] - expected[axis]).abs() < 1e-15);
        }
    }

    #[test]
    fn sample_std_matches_sigma() {
        let noise = ProcessNoise::new(2.0).unwrap();
        let mut rng = rng::substream(7, rng::TRUTH_STREAM);
        let n = 100_000;
        let mut sums = [0.0f64; 3];
        let mut sq_sums = [0.0f64; 3];
        for _ in 0..n {
            let w = noise.sample(&mut rng);
            for axis in 0..3 {
                sums[axis] += w[axis];
                sq_sums[axis] += w[axis] * w[axis];
            }
        }
        for axis in 0..3 {
            let mean = sums[axis] / n as f64;
            let var = sq_sums[axis] / n as f64 - mean * mean;
            let std = var.sqrt();
            assert!((1.97..=2.03).contains(&std), "axis {axis}: std {std}");
        }
    }

    #[test]
    fn rejects_negative_sigma() {
        assert!(ProcessNoise::new(-1.0).is_err());
        assert!(ProcessNoise::new(f64::NAN).is_err());
    }
}
