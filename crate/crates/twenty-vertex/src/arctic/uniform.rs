use num_dual::{first_derivative, Dual64, DualNum};

/// Degree-10 polynomial carrying the uniform NE branch, in the shifted coordinates
/// `x = X + 3/2`, `y = Y − 1/2`.
pub fn uniform_curve_poly<D: DualNum<Primitive = f64> + Copy>(x: D, y: D) -> D {
    let s3 = 3f64.sqrt();
    let r = x * x + y * y;
    let r2 = r * r;
    let xy = x * y;
    let p2 = |k: i32| 2f64.powi(k);
    let p3 = |k: i32| 3f64.powi(k);
    let p5 = |k: i32| 5f64.powi(k);
    r2 * r2 * r * (p2(6) * p3(11))
        - r2 * r2 * (p2(4) * p3(9) * 67.0)
        - r2 * (r * (13.0 * 83.0) + xy * (p2(6) * p5(3) * s3)) * (p2(2) * p3(6))
        - r2 * (p3(2) * 17.0 * 9323.0)
        - xy * xy * (p2(10) * p3(2) * p5(5))
        - xy * r * (p2(6) * p3(4) * p5(2) * 11.0 * s3)
        - r * (p2(10) * 3.0 * 41.0)
        - xy * (p2(7) * 3.0 * 23.0 * 241.0 * s3)
        - D::from(p2(10) * 169.0)
}

/// Polynomial value over gradient norm at `(X, Y)`, a first-order distance to the curve.
pub fn uniform_curve_residual(big_x: f64, big_y: f64) -> f64 {
    let (x, y) = (big_x + 1.5, big_y - 0.5);
    let (v, gx) = first_derivative(|t: Dual64| uniform_curve_poly(t, Dual64::from(y)), x);
    let (_, gy) = first_derivative(|t: Dual64| uniform_curve_poly(Dual64::from(x), t), y);
    v / gx.hypot(gy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_is_large_away_from_the_curve() {
        assert!(uniform_curve_residual(-1.0, 1.0).abs() > 1e-3);
    }
}
