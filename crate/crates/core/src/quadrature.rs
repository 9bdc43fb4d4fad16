//! One-dimensional quadrature rules used by the real-model checks.
//!
//! Every numerical integral in the crate is computed by at least two of the
//! rules here so the results can be cross-checked against each other.

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Fixed-order Gauss–Legendre on [a, b].
pub fn gauss_fixed<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule.0
        .iter()
        .zip(&rule.1)
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Adaptive Gauss–Legendre: bisects until a 10-point and a 20-point rule
/// agree to `tol` on every panel.
pub fn adaptive_gauss<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let coarse = gauss_legendre(10);
    let fine = gauss_legendre(20);
    adaptive_gauss_rec(f, a, b, tol, &coarse, &fine, 0)
}

fn adaptive_gauss_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    coarse: &(Vec<f64>, Vec<f64>),
    fine: &(Vec<f64>, Vec<f64>),
    depth: usize,
) -> f64 {
    let c = gauss_fixed(f, a, b, coarse);
    let g = gauss_fixed(f, a, b, fine);
    if (c - g).abs() <= tol || depth >= 40 {
        return g;
    }
    let m = 0.5 * (a + b);
    adaptive_gauss_rec(f, a, m, 0.5 * tol, coarse, fine, depth + 1)
        + adaptive_gauss_rec(f, m, b, 0.5 * tol, coarse, fine, depth + 1)
}

/// Tanh–sinh (double exponential) rule on [a, b]; tolerates integrable
/// endpoint singularities. The integrand is never evaluated at the endpoints.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let half = 0.5 * (b - a);
    let eval = |t: f64| -> f64 {
        let u = 0.5 * PI * t.sinh();
        let x = u.tanh();
        let w = 0.5 * PI * t.cosh() / (u.cosh() * u.cosh());
        // distance from the nearer endpoint, computed without cancellation
        let d = 1.0 / (u.abs().exp() * u.cosh());
        if d * half.abs() < f64::MIN_POSITIVE || w == 0.0 {
            return 0.0;
        }
        let xv = if x > 0.0 { b - half * d } else { a + half * d };
        w * f(xv)
    };
    let mut h = 1.0;
    let tmax = 6.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= tmax {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut estimate = sum * h * half;
    for _ in 0..12 {
        h *= 0.5;
        let mut add = 0.0;
        let mut k = 1;
        while (k as f64) * h <= tmax {
            let t = k as f64 * h;
            add += eval(t) + eval(-t);
            k += 2;
        }
        sum += add;
        let next = sum * h * half;
        if (next - estimate).abs() <= tol * next.abs().max(1.0) * 1e-2 {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// Exp–sinh rule for a half-line [a, ∞): substitutes x = a + exp(π/2·sinh t).
pub fn exp_sinh<F: Fn(f64) -> f64>(f: &F, a: f64, tol: f64) -> f64 {
    let eval = |t: f64| -> f64 {
        let e = (0.5 * PI * t.sinh()).exp();
        let x = a + e;
        if !x.is_finite() || e == 0.0 {
            return 0.0;
        }
        let w = 0.5 * PI * t.cosh() * e;
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            w * v
        }
    };
    let (lo, hi) = (-6.0, 6.0);
    let mut h = 0.5;
    let mut n = ((hi - lo) / h) as usize;
    let mut sum: f64 = (0..=n).map(|k| eval(lo + k as f64 * h)).sum();
    let mut estimate = sum * h;
    for _ in 0..12 {
        h *= 0.5;
        n *= 2;
        let add: f64 = (0..n / 2).map(|k| eval(lo + (2 * k + 1) as f64 * h)).sum();
        sum += add;
        let next = sum * h;
        if (next - estimate).abs() <= tol * next.abs().max(1.0) * 1e-2 {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// Trapezoid rule in the logarithmic variable a = e^x for ∫_0^∞ g(a) da/a.
/// Spectrally accurate when g decays exponentially at both ends of the x-line.
pub fn log_trapezoid<F: Fn(f64) -> f64>(g: &F, x_lo: f64, x_hi: f64, h: f64) -> f64 {
    let n = ((x_hi - x_lo) / h).ceil() as usize;
    (0..=n).map(|k| g((x_lo + k as f64 * h).exp())).sum::<f64>() * h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let rule = gauss_legendre(10);
        let v = gauss_fixed(&|x: f64| x.powi(18), -1.0, 1.0, &rule);
        assert!((v - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn tanh_sinh_handles_log_endpoint() {
        // ∫_0^1 ln x dx = -1
        let v = tanh_sinh(&|x: f64| x.ln(), 0.0, 1.0, 1e-12);
        assert!((v + 1.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn exp_sinh_gaussian() {
        let v = exp_sinh(&|x: f64| (-x * x).exp(), 0.0, 1e-12);
        assert!((v - PI.sqrt() / 2.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn adaptive_matches_closed_form() {
        let v = adaptive_gauss(&|x: f64| 1.0 / x, 1.0, 10.0, 1e-13);
        assert!((v - 10f64.ln()).abs() < 1e-12);
    }
}
