//! Bessel functions of integer order, generalized Laguerre polynomials, and
//! Gauss-Legendre quadrature nodes.

use std::f64::consts::PI;

/// Bessel function of the first kind, integer order `n >= 0`.
///
/// Small arguments use the ascending power series; larger arguments use the
/// trapezoidal rule on the integral representation
/// `J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt`, which converges
/// geometrically for entire periodic integrands.
pub fn bessel_j(n: u32, x: f64) -> f64 {
    debug_assert!(x >= 0.0, "kernel arguments are radii, non-negative");
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x <= 15.0 {
        bessel_series(n, x)
    } else {
        bessel_integral(n, x)
    }
}

fn bessel_series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    // leading term (x/2)^n / n!
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / k as f64;
    }
    let mut sum = term;
    let z = half * half;
    for k in 1..200 {
        let kf = k as f64;
        term *= -z / (kf * (kf + n as f64));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-30) {
            break;
        }
    }
    sum
}

fn bessel_integral(n: u32, x: f64) -> f64 {
    // M large enough that the trapezoidal error (~(x/2)^M / M!) is below 1e-15.
    let m = (((1.4 * x) as usize) + 40).next_multiple_of(32);
    let h = PI / m as f64;
    // endpoints: t = 0 gives cos(0) = 1; t = pi gives cos(n pi) = (-1)^n
    let mut sum = 0.5 * (1.0 + if n % 2 == 0 { 1.0 } else { -1.0 } * (x * 0.0_f64.sin()).cos());
    for j in 1..m {
        let t = j as f64 * h;
        sum += (n as f64 * t - x * t.sin()).cos();
    }
    sum * h / PI
}

/// Generalized Laguerre polynomial `L_p^alpha(x)` by the standard three-term
/// recurrence.
pub fn laguerre(p: u32, alpha: f64, x: f64) -> f64 {
    if p == 0 {
        return 1.0;
    }
    let mut lm1 = 1.0;
    let mut l = 1.0 + alpha - x;
    for k in 1..p {
        let kf = k as f64;
        let next = ((2.0 * kf + alpha + 1.0 - x) * l - (kf + alpha) * lm1) / (kf + 1.0);
        lm1 = l;
        l = next;
    }
    l
}

/// `sqrt(p! / (p+m)!)` for the Laguerre-Gauss normalization, computed as a
/// running product to stay in range.
pub fn lg_norm_ratio(p: u32, m: u32) -> f64 {
    let mut r = 1.0;
    for k in 1..=m {
        r /= (p + k) as f64;
    }
    r.sqrt()
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// Legendre recurrence with Chebyshev-type starting guesses.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // initial guess for the i-th root (descending in x)
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and its derivative
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            pp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}
