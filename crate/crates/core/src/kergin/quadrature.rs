//! Grundmann–Möller rules on the `n`-simplex, normalized to unit volume.

use twofloat::TwoFloat;

/// Nodes (barycentric, `n + 1` entries) and weights of the rule of index
/// `s`, exact for polynomials of degree `2s + 1`. Weights sum to one.
pub fn grundmann_moller(n: usize, s: usize) -> Vec<(Vec<f64>, f64)> {
    let d = 2 * s + 1;
    let n_fact: f64 = (1..=n).map(|k| k as f64).product();
    let mut rule = Vec::new();
    for i in 0..=s {
        let denom = (d + n - 2 * i) as f64;
        let fact_i: f64 = (1..=i).map(|k| k as f64).product();
        let fact_rest: f64 = (1..=(d + n - i)).map(|k| k as f64).product();
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let weight =
            sign * 0.25f64.powi(s as i32) * denom.powi(d as i32) / (fact_i * fact_rest) * n_fact;
        for beta in compositions(s - i, n + 1) {
            let node = beta.iter().map(|&b| (2 * b + 1) as f64 / denom).collect();
            rule.push((node, weight));
        }
    }
    rule
}

/// The same rule with nodes and weights in double-double precision.
pub(crate) fn grundmann_moller_dd(n: usize, s: usize) -> Vec<(Vec<TwoFloat>, TwoFloat)> {
    let d = 2 * s + 1;
    let mut rule = Vec::new();
    for i in 0..=s {
        let denom = (d + n - 2 * i) as f64;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        // divisions by f64 only: TwoFloat / TwoFloat drops the low word
        let mut weight = TwoFloat::from(sign * 0.25f64.powi(s as i32));
        for _ in 0..d {
            weight *= denom;
        }
        for k in 1..=n {
            weight *= k as f64;
        }
        for k in (1..=i).chain(1..=(d + n - i)) {
            weight /= k as f64;
        }
        for beta in compositions(s - i, n + 1) {
            let node = beta
                .iter()
                .map(|&b| TwoFloat::from((2 * b + 1) as f64) / denom)
                .collect();
            rule.push((node, weight));
        }
    }
    rule
}

/// All ways to write `total` as an ordered sum of `parts` non-negative integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
