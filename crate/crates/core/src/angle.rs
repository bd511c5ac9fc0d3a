//! Small angle helpers shared by the geometry modules.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Slack used when a real-valued quantity is compared against an integer
/// grid (cell edges, floor of closed forms). Angles here are O(10) radians
/// at most, so 1e-9 is far above rounding noise and far below any cell.
pub const SNAP_EPS: f64 = 1e-9;

#[inline]
pub fn deg(rad: f64) -> f64 {
    rad.to_degrees()
}

#[inline]
pub fn rad(deg: f64) -> f64 {
    deg.to_radians()
}

/// Wraps into `[0, 2π)`.
#[inline]
pub fn wrap_two_pi(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Wraps into `[-π, π)`.
#[inline]
pub fn wrap_pi(a: f64) -> f64 {
    wrap_two_pi(a + PI) - PI
}

/// `floor(x)` that treats values within [`SNAP_EPS`] below an integer as
/// that integer.
#[inline]
pub fn floor_snapped(x: f64) -> i64 {
    (x + SNAP_EPS).floor() as i64
}

/// Largest |latitude| reached by a circular orbit of inclination `incl`
/// while its argument of latitude sweeps `[start, start + width]`.
pub fn max_abs_latitude_over_arc(start: f64, width: f64, incl: f64) -> f64 {
    let s = incl.sin().abs();
    let lat = |u: f64| (s * u.sin()).clamp(-1.0, 1.0).asin().abs();
    // first extremum of sin(u) at or after `start`
    let k = ((start - FRAC_PI_2) / PI).ceil();
    let extremum = FRAC_PI_2 + k * PI;
    if extremum <= start + width + SNAP_EPS {
        s.clamp(-1.0, 1.0).asin()
    } else {
        lat(start).max(lat(start + width))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn wraps() {
        assert_abs_diff_eq!(wrap_pi(PI), -PI);
        assert_abs_diff_eq!(wrap_pi(-PI), -PI);
        assert_abs_diff_eq!(wrap_two_pi(-0.5), TAU - 0.5);
        assert_eq!(wrap_two_pi(-1e-300), 0.0);
    }

    #[test]
    fn snapped_floor_absorbs_rounding() {
        assert_eq!(floor_snapped(13.999_999_999_999_9), 14);
        assert_eq!(floor_snapped(13.99), 13);
        assert_eq!(floor_snapped(-0.5), -1);
    }

    #[test]
    fn arc_latitude() {
        let i = FRAC_PI_2;
        assert_abs_diff_eq!(
            max_abs_latitude_over_arc(rad(60.0), rad(10.0), i),
            rad(70.0),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            max_abs_latitude_over_arc(rad(86.0), rad(10.0), i),
            FRAC_PI_2,
            epsilon = 1e-12
        );
        // descending side folds back
        assert_abs_diff_eq!(
            max_abs_latitude_over_arc(rad(110.0), rad(10.0), i),
            rad(70.0),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            max_abs_latitude_over_arc(rad(240.0), rad(10.0), i),
            rad(70.0),
            epsilon = 1e-12
        );
    }
}
