//! Poissonized longest-chain statistics for planar point processes.
//!
//! A chain in a point set is a sequence of points increasing in both
//! coordinates; [`longest_chain`] reduces it to a one-dimensional LIS after
//! sorting. [`poissonized_lis_cdf`] estimates Pr(longest chain ≤ l) when the
//! points form a Poisson process on one of three regions of the unit square:
//! the full square, or the triangles below the anti-diagonal or the main
//! diagonal, each completed to a symmetric configuration by reflection.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::montecarlo::{run_chunked, McEstimate, RngSeed};

/// A finite point configuration in the closed unit square.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<(f64, f64)>,
}

impl PointSet {
    /// Validates that every coordinate lies in [0, 1].
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        for &(x, y) in &points {
            if !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y) {
                return Err(Error::domain("point coordinates must lie in [0, 1]"));
            }
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }
}

/// Length of the longest chain (strictly increasing in both coordinates).
pub fn longest_chain(set: &PointSet) -> usize {
    longest_chain_raw(set.points.clone())
}

fn longest_chain_raw(mut points: Vec<(f64, f64)>) -> usize {
    // Sort by x ascending with ties broken by y descending, so that points
    // sharing an x coordinate can never sit in one chain; a strict LIS on
    // the y values then counts exactly the chains.
    points.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .expect("coordinates are finite")
            .then(b.1.partial_cmp(&a.1).expect("coordinates are finite"))
    });
    let ys: Vec<f64> = points.into_iter().map(|(_, y)| y).collect();
    super::lis(&ys)
}

/// Region and symmetry class of the Poissonized point process.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// N ~ Poisson(t) points uniform in the unit square.
    Square,
    /// M ~ Poisson(t/2) points uniform in {x + y < 1}, plus their mirror
    /// images under (x, y) ↦ (1−y, 1−x).
    AntiDiagonal,
    /// M ~ Poisson(t/2) points uniform in {y < x}, plus their mirror images
    /// under (x, y) ↦ (y, x).
    Diagonal,
}

/// Monte Carlo estimate of Pr(longest chain ≤ l) at Poisson intensity
/// parameter t for the given shape.
pub fn poissonized_lis_cdf(
    shape: Shape,
    t: f64,
    l: usize,
    trials: u64,
    seed: RngSeed,
) -> Result<McEstimate> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain("intensity t must be positive and finite"));
    }
    if l == 0 {
        return Err(Error::domain("chain-length threshold l must be >= 1"));
    }
    if trials == 0 {
        return Err(Error::domain("need at least one trial"));
    }
    let rate = match shape {
        Shape::Square => t,
        Shape::AntiDiagonal | Shape::Diagonal => t / 2.0,
    };
    let poisson = Poisson::new(rate).map_err(|_| Error::domain("invalid Poisson rate"))?;
    Ok(run_chunked(seed, trials, move |rng| {
        let n = poisson.sample(rng) as usize;
        let points = sample_shape(shape, n, rng);
        if longest_chain_raw(points) <= l {
            1.0
        } else {
            0.0
        }
    }))
}

fn sample_shape(shape: Shape, n: usize, rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
    match shape {
        Shape::Square => (0..n)
            .map(|_| (rng.gen::<f64>(), rng.gen::<f64>()))
            .collect(),
        Shape::AntiDiagonal => {
            let mut points = Vec::with_capacity(2 * n);
            for _ in 0..n {
                let (mut u, mut v) = (rng.gen::<f64>(), rng.gen::<f64>());
                if u + v > 1.0 {
                    // Fold the upper triangle back below the anti-diagonal.
                    u = 1.0 - u;
                    v = 1.0 - v;
                }
                points.push((u, v));
                points.push((1.0 - v, 1.0 - u));
            }
            points
        }
        Shape::Diagonal => {
            let mut points = Vec::with_capacity(2 * n);
            for _ in 0..n {
                let (u, v) = (rng.gen::<f64>(), rng.gen::<f64>());
                let (x, y) = (u.max(v), u.min(v));
                points.push((x, y));
                points.push((y, x));
            }
            points
        }
    }
}
