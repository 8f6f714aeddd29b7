//! Minimal double-double arithmetic (~31 significant digits) for series
//! summation where plain f64 loses digits to cancellation: the Airy and
//! Bessel Maclaurin series at moderate arguments alternate with terms many
//! orders of magnitude larger than the sum.

/// An unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Requires |a| >= |b| or a == 0.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd::new(-self.hi, -self.lo)
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd::new(hi, lo)
    }

    #[inline]
    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd::new(hi, lo)
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd::new(hi, lo)
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let r = self.sub(Dd::new(p, e));
        let q2 = (r.hi + r.lo) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd::new(hi, lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn addition_keeps_the_low_word() {
        let a = Dd::from_f64(1.0);
        let eps = Dd::from_f64(1e-25);
        let sum = a.add(eps).sub(a);
        assert_eq!(sum.to_f64(), 1e-25);
    }

    #[test]
    fn multiplication_recovers_exact_products() {
        // (1 + 2^-30)^2 = 1 + 2^-29 + 2^-60; f64 drops the last term.
        let x = Dd::from_f64(1.0 + 2f64.powi(-30));
        let sq = x.mul(x);
        let expect_lo = 2f64.powi(-60);
        assert_eq!(sq.hi, 1.0 + 2f64.powi(-29));
        assert_eq!(sq.lo, expect_lo);
    }

    #[test]
    fn division_by_integers_round_trips() {
        let x = Dd::from_f64(1.0).div_f64(3.0);
        let back = x.mul_f64(3.0);
        assert!((back.to_f64() - 1.0).abs() < 1e-31);
        assert!(x.lo != 0.0, "low word should carry the remainder of 1/3");
    }

    #[test]
    fn alternating_series_beats_f64() {
        // exp(-20) by brute Maclaurin: hopeless in f64, fine in dd.
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for k in 1..200 {
            term = term.mul_f64(-20.0).div_f64(k as f64);
            sum = sum.add(term);
        }
        let want = (-20.0f64).exp();
        assert!((sum.to_f64() - want).abs() < 1e-17);
    }
}
