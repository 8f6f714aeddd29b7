//! Haar-distributed random matrices from the three classical compact groups,
//! and Monte Carlo averages of exponential trace statistics over them.
//!
//! Sampling is QR of a Ginibre matrix via modified Gram–Schmidt with one
//! re-orthogonalization pass. Because Gram–Schmidt produces the unique R
//! factor with positive diagonal, no phase correction is needed: the Q
//! factor is exactly Haar distributed. Quaternionic matrices are handled in
//! (a, b) complex-pair form, q = a + b·j, and embedded as 2n×2n complex
//! matrices [[A, B], [−conj(B), conj(A)]], which lands in both U(2n) and the
//! complex symplectic group (SᵀJS = J for J = [[0, I], [−I, 0]]).

use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::montecarlo::{run_chunked, McEstimate, RngSeed};

type C64 = Complex<f64>;

/// Classical compact group family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// U(n), complex unitary.
    Unitary,
    /// O(n), real orthogonal.
    Orthogonal,
    /// Sp(n), quaternionic unitary, returned as its 2n×2n complex embedding.
    Symplectic,
}

/// Quaternion q = a + b·j stored as two complex numbers, with j·z = conj(z)·j
/// and j² = −1.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Quat {
    a: C64,
    b: C64,
}

/// Scalar types that support the Gram–Schmidt loop.
trait MgsScalar: Copy {
    fn gaussian(rng: &mut impl Rng) -> Self;
    fn zero() -> Self;
    fn conj(self) -> Self;
    fn mul(self, rhs: Self) -> Self;
    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn scale(self, factor: f64) -> Self;
    fn norm_sqr(self) -> f64;
}

impl MgsScalar for f64 {
    fn gaussian(rng: &mut impl Rng) -> Self {
        rng.sample(StandardNormal)
    }
    fn zero() -> Self {
        0.0
    }
    fn conj(self) -> Self {
        self
    }
    fn mul(self, rhs: Self) -> Self {
        self * rhs
    }
    fn add(self, rhs: Self) -> Self {
        self + rhs
    }
    fn sub(self, rhs: Self) -> Self {
        self - rhs
    }
    fn scale(self, factor: f64) -> Self {
        self * factor
    }
    fn norm_sqr(self) -> f64 {
        self * self
    }
}

impl MgsScalar for C64 {
    fn gaussian(rng: &mut impl Rng) -> Self {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    }
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn conj(self) -> Self {
        Complex::conj(&self)
    }
    fn mul(self, rhs: Self) -> Self {
        self * rhs
    }
    fn add(self, rhs: Self) -> Self {
        self + rhs
    }
    fn sub(self, rhs: Self) -> Self {
        self - rhs
    }
    fn scale(self, factor: f64) -> Self {
        self * factor
    }
    fn norm_sqr(self) -> f64 {
        Complex::norm_sqr(&self)
    }
}

impl MgsScalar for Quat {
    fn gaussian(rng: &mut impl Rng) -> Self {
        Quat {
            a: C64::gaussian(rng),
            b: C64::gaussian(rng),
        }
    }
    fn zero() -> Self {
        Quat {
            a: C64::zero(),
            b: C64::zero(),
        }
    }
    fn conj(self) -> Self {
        // (a + b j)* = conj(a) − b j.
        Quat {
            a: Complex::conj(&self.a),
            b: -self.b,
        }
    }
    fn mul(self, rhs: Self) -> Self {
        // (a1 + b1 j)(a2 + b2 j) = (a1 a2 − b1 conj(b2)) + (a1 b2 + b1 conj(a2)) j.
        Quat {
            a: self.a * rhs.a - self.b * Complex::conj(&rhs.b),
            b: self.a * rhs.b + self.b * Complex::conj(&rhs.a),
        }
    }
    fn add(self, rhs: Self) -> Self {
        Quat {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
    fn sub(self, rhs: Self) -> Self {
        Quat {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
    fn scale(self, factor: f64) -> Self {
        Quat {
            a: self.a * factor,
            b: self.b * factor,
        }
    }
    fn norm_sqr(self) -> f64 {
        Complex::norm_sqr(&self.a) + Complex::norm_sqr(&self.b)
    }
}

/// Columns of the Q factor of a Ginibre matrix, via modified Gram–Schmidt
/// with one re-orthogonalization pass. The inner product is conjugate-linear
/// in the first slot and the projection coefficient multiplies on the right,
/// so the code is simultaneously correct over R, C, and H.
fn mgs_haar<T: MgsScalar>(n: usize, rng: &mut impl Rng) -> Vec<Vec<T>> {
    let mut cols: Vec<Vec<T>> = (0..n)
        .map(|_| (0..n).map(|_| T::gaussian(rng)).collect())
        .collect();
    for k in 0..n {
        let (done, rest) = cols.split_at_mut(k);
        let v = &mut rest[0];
        for _pass in 0..2 {
            for q in done.iter() {
                let mut coeff = T::zero();
                for i in 0..n {
                    coeff = coeff.add(q[i].conj().mul(v[i]));
                }
                for i in 0..n {
                    v[i] = v[i].sub(q[i].mul(coeff));
                }
            }
        }
        let inv_norm = 1.0 / v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for entry in v.iter_mut() {
            *entry = entry.scale(inv_norm);
        }
    }
    cols
}

/// One Haar-distributed matrix. Unitary and orthogonal samples are n×n
/// (orthogonal entries have zero imaginary part); symplectic samples are the
/// 2n×2n complex embedding.
pub fn haar_sample(group: GroupKind, n: usize, rng: &mut impl Rng) -> DMatrix<C64> {
    assert!(n >= 1, "group dimension must be positive");
    match group {
        GroupKind::Unitary => {
            let cols = mgs_haar::<C64>(n, rng);
            DMatrix::from_fn(n, n, |i, j| cols[j][i])
        }
        GroupKind::Orthogonal => {
            let cols = mgs_haar::<f64>(n, rng);
            DMatrix::from_fn(n, n, |i, j| C64::new(cols[j][i], 0.0))
        }
        GroupKind::Symplectic => {
            let cols = mgs_haar::<Quat>(n, rng);
            DMatrix::from_fn(2 * n, 2 * n, |i, j| match (i >= n, j >= n) {
                (false, false) => cols[j][i].a,
                (false, true) => cols[j - n][i].b,
                (true, false) => -Complex::conj(&cols[j][i - n].b),
                (true, true) => Complex::conj(&cols[j - n][i - n].a),
            })
        }
    }
}

/// The trace statistic whose exponential is averaged: Tr U + Tr conj(U) for
/// U(n), Tr O for O(n), and the trace of the 2n×2n embedding for Sp(n).
fn trace_statistic(group: GroupKind, n: usize, rng: &mut impl Rng) -> f64 {
    match group {
        GroupKind::Unitary => {
            let cols = mgs_haar::<C64>(n, rng);
            2.0 * (0..n).map(|k| cols[k][k].re).sum::<f64>()
        }
        GroupKind::Orthogonal => {
            let cols = mgs_haar::<f64>(n, rng);
            (0..n).map(|k| cols[k][k]).sum()
        }
        GroupKind::Symplectic => {
            let cols = mgs_haar::<Quat>(n, rng);
            2.0 * (0..n).map(|k| cols[k][k].a.re).sum::<f64>()
        }
    }
}

/// Monte Carlo estimate of E[exp(√t · trace statistic)] over the Haar
/// measure, the group-integral side of the hypergeometric identities.
///
/// Requires 0 ≤ t ≤ 4: beyond that the exponential weight is so heavy-tailed
/// that a sample mean stops being a trustworthy estimator.
pub fn group_average(
    group: GroupKind,
    n: usize,
    t: f64,
    trials: u64,
    seed: RngSeed,
) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::domain("group dimension must be positive"));
    }
    if !(0.0..=4.0).contains(&t) {
        return Err(Error::domain("t must lie in [0, 4]"));
    }
    if trials == 0 {
        return Err(Error::domain("need at least one trial"));
    }
    let sqrt_t = t.sqrt();
    Ok(run_chunked(seed, trials, move |rng| {
        (sqrt_t * trace_statistic(group, n, rng)).exp()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeom::hyp0f1_equal;
    use crate::partitions::Alpha;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unitary_residual(m: &DMatrix<C64>) -> f64 {
        let n = m.nrows();
        (m.adjoint() * m - DMatrix::<C64>::identity(n, n)).norm()
    }

    #[test]
    fn unitary_samples_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let u = haar_sample(GroupKind::Unitary, 5, &mut rng);
            assert!(unitary_residual(&u) < 1e-12);
        }
    }

    #[test]
    fn orthogonal_samples_are_real_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let o = haar_sample(GroupKind::Orthogonal, 5, &mut rng);
            assert!(o.iter().all(|z| z.im == 0.0));
            assert!(unitary_residual(&o) < 1e-12);
        }
    }

    #[test]
    fn symplectic_samples_preserve_the_symplectic_form() {
        let n = 3;
        let j = DMatrix::<C64>::from_fn(2 * n, 2 * n, |r, c| {
            if r + n == c {
                C64::new(1.0, 0.0)
            } else if c + n == r {
                C64::new(-1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let s = haar_sample(GroupKind::Symplectic, n, &mut rng);
            assert!(unitary_residual(&s) < 1e-12);
            let residual = (s.transpose() * &j * &s - &j).norm();
            assert!(residual < 1e-10, "S^T J S - J = {residual}");
        }
    }

    #[test]
    fn orthogonal_entries_have_mean_zero() {
        // Entries of a Haar orthogonal matrix are symmetric about zero.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let trials = 20_000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..trials {
            let x = haar_sample(GroupKind::Orthogonal, 3, &mut rng)[(0, 0)].re;
            sum += x;
            sumsq += x * x;
        }
        let mean = sum / trials as f64;
        let se = ((sumsq / trials as f64 - mean * mean) / trials as f64).sqrt();
        assert!(mean.abs() < 4.0 * se, "mean {mean} vs se {se}");
    }

    #[test]
    fn t_zero_average_is_exactly_one() {
        for group in [
            GroupKind::Unitary,
            GroupKind::Orthogonal,
            GroupKind::Symplectic,
        ] {
            let est = group_average(group, 2, 0.0, 1_000, RngSeed::new(5)).unwrap();
            assert_eq!(est.mean, 1.0);
            assert_eq!(est.std_error, 0.0);
        }
    }

    #[test]
    fn domain_guards() {
        let seed = RngSeed::new(6);
        assert!(group_average(GroupKind::Unitary, 0, 1.0, 10, seed).is_err());
        assert!(group_average(GroupKind::Unitary, 2, -0.5, 10, seed).is_err());
        assert!(group_average(GroupKind::Unitary, 2, 4.5, 10, seed).is_err());
        assert!(group_average(GroupKind::Unitary, 2, 1.0, 0, seed).is_err());
    }

    #[test]
    fn u1_average_is_modified_bessel() {
        // A Haar U(1) sample is a uniform phase, so the average is
        // (1/2π)∫ e^{2√t cos θ} dθ = I₀(2√t); at t = 1, I₀(2) =
        // 2.2795853023360673.
        let est = group_average(GroupKind::Unitary, 1, 1.0, 400_000, RngSeed::new(7)).unwrap();
        let reference = 2.2795853023360673;
        assert!(
            est.sigmas_from(reference) < 4.5,
            "mean {} vs {reference} ({} sigma)",
            est.mean,
            est.sigmas_from(reference)
        );
    }

    #[test]
    fn unitary_average_matches_hypergeometric() {
        let t = 0.5;
        let reference = hyp0f1_equal(Alpha::new(1.0).unwrap(), 2.0, 2, t, 1e-12)
            .unwrap()
            .value;
        let est = group_average(GroupKind::Unitary, 2, t, 300_000, RngSeed::new(8)).unwrap();
        assert!(
            est.sigmas_from(reference) < 4.5,
            "mean {} vs {reference} ({} sigma)",
            est.mean,
            est.sigmas_from(reference)
        );
    }

    #[test]
    fn symplectic_average_matches_hypergeometric() {
        let t = 0.5;
        let reference = hyp0f1_equal(Alpha::new(0.5).unwrap(), 4.0, 2, t, 1e-12)
            .unwrap()
            .value;
        let est = group_average(GroupKind::Symplectic, 2, t, 300_000, RngSeed::new(9)).unwrap();
        assert!(
            est.sigmas_from(reference) < 4.5,
            "mean {} vs {reference} ({} sigma)",
            est.mean,
            est.sigmas_from(reference)
        );
    }

    #[test]
    fn orthogonal_average_matches_hypergeometric() {
        let t = 0.5;
        let reference = hyp0f1_equal(Alpha::new(2.0).unwrap(), 2.0, 4, t / 4.0, 1e-12)
            .unwrap()
            .value;
        let est = group_average(GroupKind::Orthogonal, 4, t, 300_000, RngSeed::new(10)).unwrap();
        assert!(
            est.sigmas_from(reference) < 4.5,
            "mean {} vs {reference} ({} sigma)",
            est.mean,
            est.sigmas_from(reference)
        );
    }
}
