//! The Airy function Ai, its derivative, and its tail integral.
//!
//! For |x| below the configurable cutoff (default 9) Ai and Ai' come from
//! the Maclaurin pair Ai(x) = Ai(0) f(x) + Ai'(0) g(x), summed in
//! double-double arithmetic. Plain f64 would be unusable well before the
//! cutoff: at x = 9 the series terms peak near 7e7 while Ai(9) is 1e-9, so
//! ~17 digits cancel and only the dd accumulation keeps absolute error near
//! 1e-24. Beyond the cutoff the Poincare asymptotic expansions take over;
//! at |x| = 9 their optimally truncated error is ~2e-16 relative, so the
//! two branches overlap with plenty of margin.

use super::dd::Dd;
use super::SpecFunConfig;
use crate::quad::panel_integrate;

// Ai(0) = 3^(-2/3)/Gamma(2/3) and Ai'(0) = -3^(-1/3)/Gamma(1/3) as
// double-double constants.
const AI_ZERO: Dd = Dd {
    hi: 0.3550280538878172,
    lo: 2.05233632436212e-17,
};
const AI_PRIME_ZERO: Dd = Dd {
    hi: -0.2588194037928068,
    lo: 2.522243111610832e-17,
};

const SQRT_PI: f64 = 1.7724538509055160273;
const FRAC_PI_4: f64 = std::f64::consts::FRAC_PI_4;

/// Ai(x).
pub fn airy_ai_with(cfg: &SpecFunConfig, x: f64) -> f64 {
    airy_ai_pair_with(cfg, x).0
}

/// Ai'(x).
pub fn airy_ai_deriv_with(cfg: &SpecFunConfig, x: f64) -> f64 {
    airy_ai_pair_with(cfg, x).1
}

/// (Ai(x), Ai'(x)); kernels need both at every node.
pub(crate) fn airy_ai_pair_with(cfg: &SpecFunConfig, x: f64) -> (f64, f64) {
    if x.abs() <= cfg.series_cutoff {
        series_pair(x)
    } else if x > 0.0 {
        asymptotic_positive(x)
    } else {
        asymptotic_negative(x)
    }
}

/// Maclaurin solutions of y'' = xy: f (f(0)=1, f'(0)=0) and g (g(0)=0,
/// g'(0)=1), plus their derivatives, all in dd.
fn series_pair(x: f64) -> (f64, f64) {
    let x_dd = Dd::from_f64(x);
    let cube = x_dd.mul(x_dd).mul(x_dd);
    let mut tf = Dd::ONE;
    let mut tg = x_dd;
    let mut tgp = Dd::ONE;
    // f' starts one term in: d/dx (x^3/6) = x^2/2.
    let mut tfp = x_dd.mul(x_dd).mul_f64(0.5);
    let mut f = tf;
    let mut g = tg;
    let mut gp = tgp;
    let mut fp = tfp;
    for k in 0..200u32 {
        let kf = k as f64;
        tf = tf.mul(cube).div_f64((3.0 * kf + 2.0) * (3.0 * kf + 3.0));
        tg = tg.mul(cube).div_f64((3.0 * kf + 3.0) * (3.0 * kf + 4.0));
        tgp = tgp.mul(cube).div_f64((3.0 * kf + 1.0) * (3.0 * kf + 3.0));
        tfp = tfp
            .mul(cube)
            .div_f64((3.0 * kf + 3.0) * (3.0 * kf + 5.0));
        f = f.add(tf);
        g = g.add(tg);
        gp = gp.add(tgp);
        fp = fp.add(tfp);
        let biggest_term = tf.hi.abs().max(tg.hi.abs()).max(tgp.hi.abs()).max(tfp.hi.abs());
        let scale = f.hi.abs().max(g.hi.abs()).max(1.0);
        if biggest_term <= scale * 1e-35 {
            break;
        }
    }
    let ai = AI_ZERO.mul(f).add(AI_PRIME_ZERO.mul(g)).to_f64();
    let aip = AI_ZERO.mul(fp).add(AI_PRIME_ZERO.mul(gp)).to_f64();
    (ai, aip)
}

/// Next coefficient of the Poincare expansion: u_0 = 1 and
/// u_{k+1}/u_k = (3k + 1/2)(3k + 3/2)(3k + 5/2) / (54 (k+1)(k + 1/2)).
fn u_next(k: u32, u: f64) -> f64 {
    let kf = k as f64;
    u * (3.0 * kf + 0.5) * (3.0 * kf + 1.5) * (3.0 * kf + 2.5)
        / (54.0 * (kf + 1.0) * (kf + 0.5))
}

/// v_k = u_k (6k + 1)/(1 - 6k).
fn v_of_u(k: u32, u: f64) -> f64 {
    if k == 0 {
        1.0
    } else {
        u * (6.0 * k as f64 + 1.0) / (1.0 - 6.0 * k as f64)
    }
}

fn asymptotic_positive(x: f64) -> (f64, f64) {
    let xi = 2.0 / 3.0 * x.powf(1.5);
    let mut u = 1.0; // u_k
    let mut pow = 1.0; // xi^-k
    let mut sum_u = 1.0;
    let mut sum_v = 1.0;
    let mut prev = f64::INFINITY;
    for k in 0..60u32 {
        u = u_next(k, u);
        pow /= xi;
        let term = u * pow;
        // Divergent tail: stop at the smallest term.
        if term.abs() >= prev {
            break;
        }
        prev = term.abs();
        let sign = if (k + 1) % 2 == 1 { -1.0 } else { 1.0 };
        sum_u += sign * term;
        sum_v += sign * v_of_u(k + 1, u) * pow;
        if term.abs() < 1e-18 {
            break;
        }
    }
    let pref = (-xi).exp() / (2.0 * SQRT_PI * x.powf(0.25));
    (pref * sum_u, -pref * x.sqrt() * sum_v)
}

fn asymptotic_negative(x: f64) -> (f64, f64) {
    let z = -x;
    let xi = 2.0 / 3.0 * z.powf(1.5);
    let c = (xi - FRAC_PI_4).cos();
    let s = (xi - FRAC_PI_4).sin();
    // Partial sums over even/odd k of (-1)^floor(k/2) u_k / xi^k (and v).
    let mut u = 1.0;
    let mut pow = 1.0;
    let mut sum_ue = 1.0;
    let mut sum_uo = 0.0;
    let mut sum_ve = 1.0;
    let mut sum_vo = 0.0;
    let mut prev = f64::INFINITY;
    for k in 1..60u32 {
        u = u_next(k - 1, u);
        pow /= xi;
        let term = u * pow;
        if term.abs() >= prev {
            break;
        }
        prev = term.abs();
        let v_term = v_of_u(k, u) * pow;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            sum_ue += sign * term;
            sum_ve += sign * v_term;
        } else {
            sum_uo += sign * term;
            sum_vo += sign * v_term;
        }
        if term.abs() < 1e-18 {
            break;
        }
    }
    let quarter = z.powf(0.25);
    let ai = (c * sum_ue + s * sum_uo) / (SQRT_PI * quarter);
    let aip = quarter / SQRT_PI * (s * sum_ve - c * sum_vo);
    (ai, aip)
}

/// Integral of Ai from y to +infinity.
///
/// For y >= 0 this integrates Ai over [y, max(tail_cut, y + 8)] with
/// Gauss-Legendre panels and drops the remainder (below 1e-20 at the
/// default cutoff); for y < 0 it adds the exact value 1/3 of the integral
/// over [0, inf) to a panel integral over [y, 0].
pub fn airy_tail_with(cfg: &SpecFunConfig, y: f64) -> f64 {
    if y >= 0.0 {
        let hi = cfg.tail_cut.max(y + 8.0);
        panel_integrate(y, hi, 2.0, 24, |t| airy_ai_with(cfg, t))
    } else {
        1.0 / 3.0 + panel_integrate(y, 0.0, 2.0, 24, |t| airy_ai_with(cfg, t))
    }
}
