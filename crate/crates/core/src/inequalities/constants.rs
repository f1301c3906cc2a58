//! Sharp constants as pure functions of `p` (and geometry).

use std::f64::consts::PI;

/// Constant in the analytic convex-curve inequality.
pub const GABRIEL: f64 = 2.0;
/// Constant for analytic functions on circles.
pub const FRAZER: f64 = 1.0;
/// Constant in the sum inequality for `(|h| + |g|)^p`.
pub const LEMMA_SUM: f64 = 2.0;
/// Constant in the radial-maximum inequality.
pub const MAXIMAL: f64 = 1.0;

/// `sec^p(π/2p)`, computed through the half-angle form `(2/(1 + cos(π/p)))^{p/2}`.
///
/// The half-angle form makes `sec²(π/4) = 2` exact, which the direct
/// `cos(π/4)^{-2}` misses by one ulp.
pub fn sec_pow(p: f64) -> f64 {
    (2.0 / (1.0 + (PI / p).cos())).powf(0.5 * p)
}

/// `sec(πp/2)`.
pub fn sec_half_pi(p: f64) -> f64 {
    1.0 / (0.5 * PI * p).cos()
}

/// `(1/2)·sec^p(π/2p)`, harmonic Riesz–Fejér constant.
pub fn riesz_fejer(p: f64) -> f64 {
    0.5 * sec_pow(p)
}

/// `4` for `p ≥ 2`, otherwise `2·sec^p(π/2p)`.
pub fn main(p: f64) -> f64 {
    if p >= 2.0 {
        4.0
    } else {
        2.0 * sec_pow(p)
    }
}

/// `A(p) = 2(2π)^{1−p}[1 + sec(πp/2)]` for `0 < p < 1`.
pub fn small_p(p: f64) -> f64 {
    2.0 * (2.0 * PI).powf(1.0 - p) * (1.0 + sec_half_pi(p))
}

/// `1` for `p ≥ 2`, else `1 + r` with `r` the distance of the circle's center from 0.
pub fn circle(p: f64, r: f64) -> f64 {
    if p >= 2.0 {
        1.0
    } else {
        1.0 + r
    }
}

/// `(1 − |cos(π/p)|)^{−p/2}`.
pub fn kalaj(p: f64) -> f64 {
    (1.0 - (PI / p).cos().abs()).powf(-0.5 * p)
}

/// `(2π)^{1−p}·sec(πp/2)` for `0 < p < 1`.
pub fn kolmogorov(p: f64) -> f64 {
    (2.0 * PI).powf(1.0 - p) * sec_half_pi(p)
}

/// `(2π)^{1−p}`, the Jensen companion bound.
pub fn jensen(p: f64) -> f64 {
    (2.0 * PI).powf(1.0 - p)
}

/// `2π/(sin(θ/2) + cos(θ/2))`.
pub fn hilbert(theta: f64) -> f64 {
    2.0 * PI / ((0.5 * theta).sin() + (0.5 * theta).cos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn main_is_continuous_at_two() {
        assert_eq!(2.0 * sec_pow(2.0), 4.0);
        assert_eq!(main(2.0), 4.0);
        assert_eq!(riesz_fejer(2.0), 1.0);
        assert!((main(2.0f64.next_down()) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn examples() {
        // 2 sec^{1.5}(π/3) = 2^{2.5}
        assert!((main(1.5) - 2f64.powf(2.5)).abs() < 1e-12);
        let direct = 1.0 / (PI / 3.0).cos();
        assert!((sec_pow(1.5) - direct.powf(1.5)).abs() < 1e-12);
        assert!((small_p(0.5) - 2.0 * (2.0 * PI).sqrt() * (1.0 + 2f64.sqrt())).abs() < 1e-12);
        assert_eq!(circle(1.5, 0.4), 1.4);
        assert_eq!(circle(2.0, 0.4), 1.0);
        assert!((kalaj(2.0) - 1.0).abs() < 1e-15);
        assert!((hilbert(0.0) - 2.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn blowup_toward_one() {
        // A(p) dips to a minimum near p = 0.67 before blowing up
        assert!(small_p(0.6) < small_p(0.5));
        let mut prev = 0.0;
        for j in 0..50 {
            let p = 0.7 + 0.3 * j as f64 / 50.0;
            assert!(small_p(p) > prev);
            prev = small_p(p);
        }
        assert!(small_p(1.0 - 1e-6) > 1e6);
        let mut prev = f64::INFINITY;
        for j in 1..50 {
            let p = 1.0 + 0.5 * j as f64 / 50.0;
            assert!(riesz_fejer(p) < prev);
            prev = riesz_fejer(p);
        }
        assert!(riesz_fejer(1.0 + 1e-6) > 1e5);
    }

    proptest! {
        #[test]
        fn kalaj_chain_identity(p in 1.0001f64..1.9999) {
            let lhs = 2f64.powf(0.5 * p + 1.0) * kalaj(p);
            let rhs = 2.0 * sec_pow(p);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }
    }
}
