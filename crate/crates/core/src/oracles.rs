//! Reference computations that share no code path with the library
//! routines they check: classical confluent divided differences, Taylor
//! truncation by binomial expansion, and Gauss–Legendre quadrature on the
//! simplex in collapsed coordinates. Used by the test suites and the
//! `selftest` command.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::polycalc::{MultiIndex, MultivariatePolynomial};

/// Hermite interpolant in one variable from confluent divided differences.
///
/// `nodes` lists distinct points with multiplicities; `derivative(x, n)`
/// returns `f^{(n)}(x)`. Returns monomial coefficients `c_0, …, c_{d-1}`.
pub fn hermite_divided_differences(
    nodes: &[(f64, u32)],
    derivative: impl Fn(f64, u32) -> f64,
) -> Vec<f64> {
    hermite_divided_differences_exact(nodes, |x, n| exact(derivative(x, n)))
}

fn exact(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite value")
}

/// [`hermite_divided_differences`] with exact derivative data.
pub fn hermite_divided_differences_exact(
    nodes: &[(f64, u32)],
    derivative: impl Fn(f64, u32) -> BigRational,
) -> Vec<f64> {
    let z: Vec<f64> = nodes
        .iter()
        .flat_map(|&(x, k)| std::iter::repeat_n(x, k as usize))
        .collect();
    let zq: Vec<BigRational> = z.iter().map(|&x| exact(x)).collect();
    let n = z.len();
    // table[i][j] = f[z_i, …, z_{i+j}], in exact arithmetic on the sampled data
    let mut table = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        table[i][0] = derivative(z[i], 0);
    }
    for j in 1..n {
        for i in 0..(n - j) {
            table[i][j] = if z[i + j] == z[i] {
                let fact = (1..=j as u64).fold(BigInt::one(), |acc, q| acc * q);
                derivative(z[i], j as u32) / BigRational::from_integer(fact)
            } else {
                (&table[i + 1][j - 1] - &table[i][j - 1]) / (&zq[i + j] - &zq[i])
            };
        }
    }
    // Newton form Σ_k f[z_0..z_k] ∏_{l<k} (x - z_l), expanded.
    let mut coeffs = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()];
    for k in 0..n {
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += &table[0][k] * b;
        }
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= &zq[k] * b;
        }
        basis = next;
    }
    coeffs
        .iter()
        .map(|c| c.to_f64().expect("finite coefficient"))
        .collect()
}

/// `p^{(n)}(x)` of a one-variable polynomial, exactly.
pub fn exact_derivative(p: &MultivariatePolynomial, x: f64, n: u32) -> BigRational {
    let x = exact(x);
    let mut total = BigRational::zero();
    for (beta, c) in p.terms() {
        let b = beta.get(0);
        if b < n {
            continue;
        }
        let falling = (b - n + 1..=b).fold(BigInt::one(), |acc, q| acc * q);
        total += exact(c)
            * BigRational::from_integer(falling)
            * num_traits::pow(x.clone(), (b - n) as usize);
    }
    total
}

/// Taylor polynomial of order `k - 1` of `f` at `y`, expanded into
/// monomials by the binomial theorem.
pub fn taylor_truncation(f: &MultivariatePolynomial, y: &[f64], k: u32) -> MultivariatePolynomial {
    let m = f.dim();
    let mut out = MultivariatePolynomial::zero(m);
    for alpha in crate::polycalc::multi_index::below_degree(m, k) {
        let c = f.derivative(&alpha).eval(y).expect("dimension checked") / alpha.factorial();
        if c == 0.0 {
            continue;
        }
        // (x - y)^α = ∏_j Σ_{b ≤ α_j} binom(α_j, b) x_j^b (-y_j)^{α_j - b}
        let mut term = MultivariatePolynomial::constant(m, c);
        for j in 0..m {
            let a = alpha.get(j);
            let mut factor = MultivariatePolynomial::zero(m);
            for b in 0..=a {
                let binom = (0..b).fold(1.0, |acc, i| acc * f64::from(a - i) / f64::from(i + 1));
                let mut e = vec![0; m];
                e[j] = b;
                factor.add_term(MultiIndex::new(e), binom * (-y[j]).powi((a - b) as i32));
            }
            term = &term * &factor;
        }
        out = &out + &term;
    }
    out
}

/// Gauss–Legendre nodes and weights on `[0, 1]` by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            dp = n as f64 * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((0.5 * (1.0 - x), 0.5 * w));
    }
    out
}

/// Normalized (`volume = 1`) integral of `g` over `{t ≥ 0, Σ t ≤ 1} ⊂ ℝ^r`
/// using a tensor Gauss–Legendre rule in collapsed coordinates
/// `t_1 = u_1, t_2 = (1 - u_1) u_2, …`.
pub fn simplex_quadrature(r: usize, points_per_axis: usize, g: impl Fn(&[f64]) -> f64) -> f64 {
    if r == 0 {
        return g(&[]);
    }
    let rule = gauss_legendre(points_per_axis);
    let mut idx = vec![0usize; r];
    let mut total = 0.0;
    let mut t = vec![0.0; r];
    loop {
        let mut weight = 1.0;
        let mut remaining = 1.0;
        for d in 0..r {
            let (u, w) = rule[idx[d]];
            t[d] = remaining * u;
            weight *= w * remaining;
            remaining *= 1.0 - u;
        }
        total += weight * g(&t);
        let mut d = 0;
        loop {
            idx[d] += 1;
            if idx[d] < points_per_axis {
                break;
            }
            idx[d] = 0;
            d += 1;
            if d == r {
                let r_fact: f64 = (1..=r).map(|k| k as f64).product();
                return total * r_fact;
            }
        }
    }
}

/// Adaptive Simpson integration on `[a, b]`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_recovers_cubic() {
        // f = x³ - 2x with data f(0), f'(0), f(1), f'(1)
        let f = |x: f64, n: u32| match n {
            0 => x * x * x - 2.0 * x,
            1 => 3.0 * x * x - 2.0,
            2 => 6.0 * x,
            3 => 6.0,
            _ => 0.0,
        };
        let c = hermite_divided_differences(&[(0.0, 2), (1.0, 2)], f);
        let expected = [0.0, -2.0, 0.0, 1.0];
        for (a, b) in c.iter().zip(expected) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn quadrature_oracles_agree_on_moments() {
        assert!((simplex_quadrature(2, 6, |t| t[0] * t[1]) - 1.0 / 12.0).abs() < 1e-14);
        assert!((adaptive_simpson(&|x| x, 0.0, 1.0, 1e-13) - 0.5).abs() < 1e-13);
    }
}
