//! Gauss–Legendre rules.

/// Nodes and weights of the `order`-point Gauss–Legendre rule on `[a, b]`.
pub fn gauss_legendre(order: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    assert!(order >= 1, "quadrature order must be positive");
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut rule = vec![(0.0, 0.0); order];
    let m = order.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess for the i-th largest root.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(order, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(order, z);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule[i] = (mid - half * z, half * w);
        rule[order - 1 - i] = (mid + half * z, half * w);
    }
    rule
}

/// `P_n(z)` and `P_n'(z)` by the three-term recurrence.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Composite rule: `order` points on each piece between consecutive cuts.
pub fn composite(order: usize, cuts: &[f64]) -> Vec<(f64, f64)> {
    cuts.windows(2)
        .flat_map(|w| gauss_legendre(order, w[0], w[1]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_length() {
        for order in [1, 2, 5, 16, 32] {
            let total: f64 = gauss_legendre(order, 0.0, 1.0).iter().map(|w| w.1).sum();
            assert!((total - 1.0).abs() < 1e-14, "order {order}: {total}");
        }
    }

    #[test]
    fn exact_for_degree_2n_minus_1() {
        for order in [2, 4, 8] {
            let deg = 2 * order - 1;
            let q: f64 = gauss_legendre(order, 0.0, 1.0)
                .iter()
                .map(|&(x, w)| w * x.powi(deg as i32))
                .sum();
            assert!((q - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn known_two_point_rule() {
        let rule = gauss_legendre(2, -1.0, 1.0);
        let r = 1.0 / 3f64.sqrt();
        assert!((rule[0].0 + r).abs() < 1e-15 && (rule[1].0 - r).abs() < 1e-15);
        assert!((rule[0].1 - 1.0).abs() < 1e-15);
    }
}
