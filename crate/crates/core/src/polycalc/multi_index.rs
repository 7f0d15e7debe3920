use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector of a monomial `x^α`.
///
/// Ordered graded-lexicographically: total degree first, then the entries
/// compared left to right with larger exponents first, so that in two
/// variables the order reads `1, x, y, x², xy, y², …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// The unit exponent `e_j`.
    pub fn unit(dim: usize, j: usize) -> Self {
        let mut e = vec![0; dim];
        e[j] = 1;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` if every entry stays non-negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// `α! = ∏ α_j!`
    pub fn factorial(&self) -> f64 {
        self.0
            .iter()
            .map(|&a| (1..=a).map(f64::from).product::<f64>())
            .product()
    }

    /// Multinomial coefficient `|α|! / α!`.
    pub fn multinomial(&self) -> f64 {
        let n: f64 = (1..=self.degree()).map(f64::from).product();
        n / self.factorial()
    }

    /// `x^α` at a point.
    pub fn eval_monomial(&self, x: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(x)
            .map(|(&a, &xi)| xi.powi(a as i32))
            .product()
    }

    /// Position among the multi-indices of the same degree, in graded-lex order.
    pub fn rank_in_degree(&self) -> usize {
        let m = self.dim();
        let mut remaining = self.degree();
        let mut rank = 0usize;
        for (j, &a) in self.0.iter().enumerate() {
            if j + 1 == m {
                break;
            }
            // indices with a larger entry in slot j come first
            for larger in (a + 1)..=remaining {
                rank += count_of_degree(m - j - 1, remaining - larger);
            }
            remaining -= a;
        }
        rank
    }

    /// Position in the full graded-lex enumeration of all multi-indices.
    pub fn rank(&self) -> usize {
        count_below_degree(self.dim(), self.degree()) + self.rank_in_degree()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of multi-indices in `m` variables of degree exactly `n`.
pub fn count_of_degree(m: usize, n: u32) -> usize {
    if m == 0 {
        return usize::from(n == 0);
    }
    binomial(n as usize + m - 1, m - 1)
}

/// Number of multi-indices in `m` variables of degree `< n`; this is the
/// dimension of the `(n-1)`-jet space, `binom(m + n - 1, m)`.
pub fn count_below_degree(m: usize, n: u32) -> usize {
    if n == 0 {
        return 0;
    }
    binomial(n as usize - 1 + m, m)
}

/// All multi-indices of degree exactly `n`, in graded-lex order.
pub fn of_degree(m: usize, n: u32) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(count_of_degree(m, n));
    let mut buf = vec![0u32; m];
    fill_of_degree(&mut buf, 0, n, &mut out);
    out
}

fn fill_of_degree(buf: &mut Vec<u32>, slot: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    let m = buf.len();
    if m == 0 {
        if remaining == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    if slot + 1 == m {
        buf[slot] = remaining;
        out.push(MultiIndex(buf.clone()));
        return;
    }
    for a in (0..=remaining).rev() {
        buf[slot] = a;
        fill_of_degree(buf, slot + 1, remaining - a, out);
    }
    buf[slot] = 0;
}

/// All multi-indices of degree `< n`, in graded-lex order.
pub fn below_degree(m: usize, n: u32) -> Vec<MultiIndex> {
    (0..n).flat_map(|k| of_degree(m, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_sorted_and_ranked() {
        for m in 1..=3 {
            let all = below_degree(m, 5);
            assert_eq!(all.len(), count_below_degree(m, 5));
            for (i, a) in all.iter().enumerate() {
                assert_eq!(a.rank(), i, "{a}");
            }
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn two_variable_order() {
        let names: Vec<_> = below_degree(2, 3).iter().map(|a| a.to_string()).collect();
        assert_eq!(
            names,
            ["(0,0)", "(1,0)", "(0,1)", "(2,0)", "(1,1)", "(0,2)"]
        );
    }

    #[test]
    fn jet_dimension() {
        assert_eq!(count_below_degree(2, 3), 6);
        assert_eq!(count_below_degree(3, 2), 4);
        assert_eq!(count_below_degree(1, 4), 4);
        assert_eq!(multi(&[2, 1]).multinomial(), 3.0);
    }

    fn multi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }
}
