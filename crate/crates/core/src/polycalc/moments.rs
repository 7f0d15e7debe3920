use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Normalized integral of `t_1^{a_1} ⋯ t_r^{a_r}` over the standard
/// `r`-simplex `{t ≥ 0, Σ t ≤ 1}` with total volume one:
/// `r! ∏ a_i! / (r + Σ a_i)!`, evaluated exactly and rounded once.
pub fn simplex_moment(a: &[u32]) -> f64 {
    moment(a.len() as u32, a)
}

/// Same normalized integral written in all `r + 1` barycentric coordinates
/// `λ_0, …, λ_r` (so `a.len() == r + 1`). The Dirichlet formula is
/// unchanged: `r! ∏_{i=0}^{r} a_i! / (r + Σ a_i)!`.
pub fn barycentric_moment(a: &[u32]) -> f64 {
    assert!(
        !a.is_empty(),
        "barycentric exponent needs at least one entry"
    );
    moment(a.len() as u32 - 1, a)
}

fn moment(r: u32, a: &[u32]) -> f64 {
    let total: u32 = a.iter().sum();
    let num = a.iter().fold(factorial(r), |acc, &ai| acc * factorial(ai));
    let den = factorial(r + total);
    BigRational::new(num, den)
        .to_f64()
        .expect("ratio of factorials is a finite positive number")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert_eq!(simplex_moment(&[0]), 1.0);
        assert_eq!(simplex_moment(&[1]), 0.5);
        assert_eq!(simplex_moment(&[1, 1]), 1.0 / 12.0);
        assert_eq!(simplex_moment(&[]), 1.0);
        assert_eq!(barycentric_moment(&[3]), 1.0);
        // ∫_0^1 (1-t) t dt normalized = 1/6
        assert_eq!(barycentric_moment(&[1, 1]), 1.0 / 6.0);
    }
}
