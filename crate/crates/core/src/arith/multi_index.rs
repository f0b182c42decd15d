use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// A tuple of nonnegative exponents, one per coordinate of the ambient `C^N`.
///
/// Ordered graded-lexicographically: total degree first, then componentwise.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(components: Vec<u32>) -> Self {
        MultiIndex(components)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// The unit index `e_j` (zero based).
    pub fn unit(dim: usize, j: usize) -> Self {
        let mut v = vec![0; dim];
        v[j] = 1;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, `None` if any component would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(MultiIndex)
    }

    /// Componentwise `self - other` as signed integers.
    pub fn signed_diff(&self, other: &MultiIndex) -> Vec<i64> {
        self.0.iter().zip(&other.0).map(|(a, b)| *a as i64 - *b as i64).collect()
    }

    /// Shift by a signed vector; `None` when a component would be negative.
    pub fn shifted(&self, delta: &[i64]) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(delta)
            .map(|(a, d)| {
                let v = *a as i64 + d;
                (v >= 0).then_some(v as u32)
            })
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn meet(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn inc(&self, j: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[j] += 1;
        MultiIndex(v)
    }

    pub fn dec(&self, j: usize) -> Option<MultiIndex> {
        if self.0[j] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[j] -= 1;
        Some(MultiIndex(v))
    }

    /// `alpha! = alpha_1! ... alpha_N!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&c| factorial(c)).product()
    }

    /// All indices of dimension `dim` and total degree exactly `deg`, in order.
    pub fn of_degree(dim: usize, deg: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; dim];
        fill(dim, 0, deg, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All indices of dimension `dim` with total degree at most `max_deg`.
    pub fn up_to_degree(dim: usize, max_deg: u32) -> Vec<MultiIndex> {
        (0..=max_deg).flat_map(|d| Self::of_degree(dim, d)).collect()
    }

    /// All `mu` with `mu <= self` componentwise.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::with_capacity(self.dim())];
        for &c in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=c).map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        let mut res: Vec<MultiIndex> = out.into_iter().map(MultiIndex).collect();
        res.sort();
        res
    }
}

fn fill(dim: usize, pos: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if dim == 0 {
        if remaining == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    if pos == dim - 1 {
        cur[pos] = remaining;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for v in 0..=remaining {
        cur[pos] = v;
        fill(dim, pos + 1, remaining - v, cur, out);
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl<const K: usize> From<[u32; K]> for MultiIndex {
    fn from(v: [u32; K]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl std::str::FromStr for MultiIndex {
    type Err = Error;

    /// Accepts `(1,0,2)` or `1,0,2`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = match (t.strip_prefix('('), t.ends_with(')')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => t,
            _ => return Err(Error::Parse(format!("unbalanced parentheses in multi-index `{s}`"))),
        };
        if inner.trim().is_empty() {
            return Err(Error::Parse(format!("empty multi-index `{s}`")));
        }
        inner
            .split(',')
            .map(|p| {
                p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad multi-index component `{p}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `|k|! / (k_1! ... k_N!)`
pub fn multinomial(k: &MultiIndex) -> BigInt {
    factorial(k.degree()) / k.factorial()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(&[0, 0].into()), BigInt::from(1));
        assert_eq!(multinomial(&[1, 1].into()), BigInt::from(2));
        assert_eq!(multinomial(&[2, 1].into()), BigInt::from(3));
    }

    #[test]
    fn enumeration_counts() {
        // C(d + N - 1, N - 1) indices of degree d
        assert_eq!(MultiIndex::of_degree(3, 4).len(), 15);
        assert_eq!(MultiIndex::up_to_degree(2, 6).len(), 28);
        assert_eq!(MultiIndex::of_degree(1, 0), vec![MultiIndex::zero(1)]);
        let idx = MultiIndex::up_to_degree(2, 3);
        assert!(idx.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn sub_indices_cover_box() {
        let a: MultiIndex = [2, 1].into();
        let subs = a.sub_indices();
        assert_eq!(subs.len(), 6);
        assert!(subs.iter().all(|m| m.le(&a)));
    }

    #[test]
    fn parse_roundtrip() {
        let m: MultiIndex = "(1, 0,3)".parse().unwrap();
        assert_eq!(m, [1, 0, 3].into());
        assert_eq!(m.to_string(), "(1,0,3)");
        assert!("(1,x)".parse::<MultiIndex>().is_err());
        for bad in ["(", "()", "(1,2", "1)", ""] {
            assert!(bad.parse::<MultiIndex>().is_err(), "{bad}");
        }
        assert_eq!("2,1".parse::<MultiIndex>().unwrap(), [2, 1].into());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }
}
