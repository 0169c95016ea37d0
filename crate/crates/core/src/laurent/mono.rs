//! Laurent monomials and their multiplication-compatible order.

use std::cmp::Ordering;

/// A Laurent monomial `t^(t2/2) · Π x_i^(xs[i-1]) · Π y_j^(ys[j-1])`.
///
/// Trailing zero exponents are trimmed so the representation is canonical
/// independently of the ambient variable count.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono {
    pub(crate) t2: i64,
    pub(crate) xs: Vec<i64>,
    pub(crate) ys: Vec<i64>,
}

fn trim(v: &mut Vec<i64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl Mono {
    pub fn one() -> Self {
        Mono::default()
    }

    /// `t^k`.
    pub fn t_pow(k: i64) -> Self {
        Mono { t2: 2 * k, ..Default::default() }
    }

    /// `t^(k/2)`; the doubled exponent is taken verbatim.
    pub fn t_half_pow(k: i64) -> Self {
        Mono { t2: k, ..Default::default() }
    }

    /// `x_i^e` (1-indexed).
    pub fn x_pow(i: usize, e: i64) -> Self {
        assert!(i >= 1, "variables are 1-indexed");
        let mut xs = vec![0; i];
        xs[i - 1] = e;
        let mut m = Mono { t2: 0, xs, ys: Vec::new() };
        trim(&mut m.xs);
        m
    }

    /// `y_j^e` (1-indexed).
    pub fn y_pow(j: usize, e: i64) -> Self {
        assert!(j >= 1, "variables are 1-indexed");
        let mut ys = vec![0; j];
        ys[j - 1] = e;
        let mut m = Mono { t2: 0, xs: Vec::new(), ys };
        trim(&mut m.ys);
        m
    }

    pub fn x(i: usize) -> Self {
        Mono::x_pow(i, 1)
    }

    pub fn y(j: usize) -> Self {
        Mono::y_pow(j, 1)
    }

    /// `Π x_i^(mu[i-1])` for a weight vector `μ`.
    pub fn x_weight(mu: &[i64]) -> Self {
        let mut m = Mono { t2: 0, xs: mu.to_vec(), ys: Vec::new() };
        trim(&mut m.xs);
        m
    }

    /// `Π y_j^(mu[j-1])` for a weight vector `μ`.
    pub fn y_weight(mu: &[i64]) -> Self {
        let mut m = Mono { t2: 0, xs: Vec::new(), ys: mu.to_vec() };
        trim(&mut m.ys);
        m
    }

    pub fn is_one(&self) -> bool {
        self.t2 == 0 && self.xs.is_empty() && self.ys.is_empty()
    }

    pub fn t2(&self) -> i64 {
        self.t2
    }

    pub fn x_exp(&self, i: usize) -> i64 {
        self.xs.get(i - 1).copied().unwrap_or(0)
    }

    pub fn y_exp(&self, j: usize) -> i64 {
        self.ys.get(j - 1).copied().unwrap_or(0)
    }

    /// Largest x-index with a nonzero exponent.
    pub fn x_arity(&self) -> usize {
        self.xs.len()
    }

    /// Largest y-index with a nonzero exponent.
    pub fn y_arity(&self) -> usize {
        self.ys.len()
    }

    pub fn x_exps(&self) -> &[i64] {
        &self.xs
    }

    pub fn y_exps(&self) -> &[i64] {
        &self.ys
    }

    /// Sum of all x-exponents (sign parity drives `x -> -x`).
    pub fn x_total_degree(&self) -> i64 {
        self.xs.iter().sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = Mono {
            t2: self.t2 + other.t2,
            xs: add_padded(&self.xs, &other.xs),
            ys: add_padded(&self.ys, &other.ys),
        };
        trim(&mut m.xs);
        trim(&mut m.ys);
        m
    }

    pub fn inv(&self) -> Mono {
        Mono {
            t2: -self.t2,
            xs: self.xs.iter().map(|e| -e).collect(),
            ys: self.ys.iter().map(|e| -e).collect(),
        }
    }

    /// `self / other` in the Laurent sense (always defined).
    pub fn div(&self, other: &Mono) -> Mono {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: u32) -> Mono {
        self.powi(k as i64)
    }

    /// Integer power, negative exponents included (monomials are units).
    pub fn powi(&self, k: i64) -> Mono {
        let mut m = Mono {
            t2: self.t2 * k,
            xs: self.xs.iter().map(|e| e * k).collect(),
            ys: self.ys.iter().map(|e| e * k).collect(),
        };
        trim(&mut m.xs);
        trim(&mut m.ys);
        m
    }

    /// Whether every exponent (including the doubled t-exponent) is `⩾ 0`.
    pub fn all_nonneg(&self) -> bool {
        self.t2 >= 0 && self.xs.iter().all(|&e| e >= 0) && self.ys.iter().all(|&e| e >= 0)
    }

    /// Componentwise minimum of exponents, used to shift polynomials into
    /// nonnegative-exponent range before long division.
    pub(crate) fn component_min(&self, other: &Mono) -> Mono {
        let mut m = Mono {
            t2: self.t2.min(other.t2),
            xs: min_padded(&self.xs, &other.xs),
            ys: min_padded(&self.ys, &other.ys),
        };
        trim(&mut m.xs);
        trim(&mut m.ys);
        m
    }
}

fn add_padded(a: &[i64], b: &[i64]) -> Vec<i64> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|k| a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0))
        .collect()
}

fn min_padded(a: &[i64], b: &[i64]) -> Vec<i64> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|k| a.get(k).copied().unwrap_or(0).min(b.get(k).copied().unwrap_or(0)))
        .collect()
}

fn lex_padded(a: &[i64], b: &[i64]) -> Ordering {
    let len = a.len().max(b.len());
    for k in 0..len {
        let av = a.get(k).copied().unwrap_or(0);
        let bv = b.get(k).copied().unwrap_or(0);
        match av.cmp(&bv) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}

impl Ord for Mono {
    /// Lexicographic on zero-padded x-exponents, then y-exponents, then the
    /// t-exponent. Padding matters: comparing the raw `Vec`s by derived order
    /// would rank `x1` below `x1*x2^-1`, which breaks compatibility with
    /// multiplication and hence long division.
    fn cmp(&self, other: &Self) -> Ordering {
        lex_padded(&self.xs, &other.xs)
            .then_with(|| lex_padded(&self.ys, &other.ys))
            .then_with(|| self.t2.cmp(&other.t2))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
