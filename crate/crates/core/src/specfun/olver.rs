//! Uniform large-order asymptotics of Bessel J: the leading Olver term
//! J_nu(nu z) ~ nu^(-1/3) (4 zeta / (1 - z^2))^(1/4) Ai(nu^(2/3) zeta),
//! where zeta(z) solves
//!     (2/3) zeta^(3/2)    = log((1 + sqrt(1-z^2))/z) - sqrt(1-z^2),  z <= 1,
//!     (2/3) (-zeta)^(3/2) = sqrt(z^2-1) - arccos(1/z),               z >= 1.
//!
//! No root finding is needed: with x = 1 - z^2 both defining relations
//! collapse to the single series zeta = 2^(-2/3) x h(x)^(2/3) with
//! h(x) = sum_k 3 x^k / (2k + 3), which converges for |x| < 1 and is used
//! for |x| <= 0.9; outside that window the explicit formulas are already
//! cancellation-free. The amplitude simplifies to 2^(1/3) h(x)^(1/6), so
//! nothing degenerates at the turning point z = 1.

use super::airy::airy_ai_with;
use super::SpecFunConfig;
use crate::error::{Error, Result};

const CBRT_2: f64 = 1.2599210498948731648; // 2^(1/3)
const SERIES_WINDOW: f64 = 0.9;

/// h(x) = sum 3 x^k / (2k + 3); h(0) = 1, positive on (-1, 1).
fn h_series(x: f64) -> f64 {
    let mut pow = 1.0;
    let mut sum = 0.0;
    for k in 0..500u32 {
        let term = 3.0 * pow / (2.0 * k as f64 + 3.0);
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        pow *= x;
    }
    sum
}

fn zeta_from_x(x: f64, z: f64) -> f64 {
    if x.abs() <= SERIES_WINDOW {
        let h = h_series(x);
        x * (0.5 * h).powf(2.0 / 3.0)
    } else if z < 1.0 {
        let u = x.sqrt();
        let xi = ((1.0 + u) / z).ln() - u;
        (1.5 * xi).powf(2.0 / 3.0)
    } else {
        let v = (-x).sqrt();
        let xi = v - (1.0 / z).acos();
        -(1.5 * xi).powf(2.0 / 3.0)
    }
}

/// The Olver transition variable zeta(z) for z > 0.
pub fn olver_zeta(z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::domain("olver_zeta needs z > 0"));
    }
    Ok(zeta_from_x((1.0 - z) * (1.0 + z), z))
}

/// Leading-order uniform approximation of J_order at the argument
/// `order - w (order/2)^(1/3)`, i.e. distance w into the turning-point
/// region in soft-edge units.
///
/// Requires order >= 1 and an argument >= 0.
pub fn bessel_j_uniform_with(cfg: &SpecFunConfig, order: u32, w: f64) -> Result<f64> {
    if order == 0 {
        return Err(Error::domain("bessel_j_uniform needs order >= 1"));
    }
    let nu = order as f64;
    let delta = w / (CBRT_2 * nu.powf(2.0 / 3.0));
    if delta > 1.0 {
        return Err(Error::domain(
            "bessel_j_uniform argument would be negative",
        ));
    }
    // x = 1 - z^2 computed from delta directly so z near 1 loses nothing.
    let z = 1.0 - delta;
    let x = delta * (2.0 - delta);
    let (zeta, amplitude) = if x.abs() <= SERIES_WINDOW {
        let h = h_series(x);
        (x * (0.5 * h).powf(2.0 / 3.0), CBRT_2 * h.powf(1.0 / 6.0))
    } else {
        let zeta = zeta_from_x(x, z);
        (zeta, (4.0 * zeta / x).powf(0.25))
    };
    Ok(nu.powf(-1.0 / 3.0) * amplitude * airy_ai_with(cfg, nu.powf(2.0 / 3.0) * zeta))
}
