//! Symmetric-group and type-A root-system utilities.
//!
//! Permutations are stored in one-line notation, 1-indexed: `w.apply(i) = images[i-1]`.
//! Composition is function composition, `(u * v)(i) = u(v(i))`, so `s1 * s2` means
//! "apply `s2` first". Roots are `e_i - e_j`; the positive ones have `i < j`, and the
//! monomial `y^α` for `α = e_i - e_j` is `y_i / y_j`.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeylError {
    #[error("images {0:?} are not a bijection of 1..={1}")]
    NotABijection(Vec<usize>, usize),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("generator index {0} out of range for rank {1}")]
    BadGenerator(usize, usize),
    #[error("parts {0:?} are not a weakly decreasing list of positive integers")]
    BadPartition(Vec<usize>),
    #[error("cannot parse permutation from {0:?}")]
    ParsePermutation(String),
    #[error("cannot parse partition from {0:?}")]
    ParsePartition(String),
}

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, WeylError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(WeylError::NotABijection(images.clone(), n));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// The simple transposition `s_i` swapping `i` and `i+1`, as an element of `S_n`.
    pub fn simple(n: usize, i: usize) -> Result<Self, WeylError> {
        if i == 0 || i >= n {
            return Err(WeylError::BadGenerator(i, n));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Ok(Permutation { images })
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, WeylError> {
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(WeylError::BadGenerator(a.min(b), n));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    /// The longest element `w0`, with `w0(i) = n + 1 - i`.
    pub fn longest(n: usize) -> Self {
        Permutation { images: (1..=n).rev().collect() }
    }

    /// Product of the listed simple reflections, left to right:
    /// `from_word(n, [1, 2]) = s1 * s2`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self, WeylError> {
        let mut w = Permutation::identity(n);
        for &i in word {
            w = (w * Permutation::simple(n, i)?).clone();
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (pos, &v) in self.images.iter().enumerate() {
            images[v - 1] = pos + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Inversion count `|{(i, j) : i < j, w(i) > w(j)}|`.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut len = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    len += 1;
                }
            }
        }
        len
    }

    /// Right multiplication by `s_i`: swaps the images at positions `i`, `i+1`.
    pub fn right_s(&self, i: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// Left multiplication by `s_i`: swaps the values `i`, `i+1`.
    pub fn left_s(&self, i: usize) -> Permutation {
        let images = self
            .images
            .iter()
            .map(|&v| {
                if v == i {
                    i + 1
                } else if v == i + 1 {
                    i
                } else {
                    v
                }
            })
            .collect();
        Permutation { images }
    }

    /// `ℓ(w s_i) < ℓ(w)`, i.e. `w(i) > w(i+1)`.
    pub fn is_right_descent(&self, i: usize) -> bool {
        self.images[i - 1] > self.images[i]
    }

    /// `ℓ(s_i w) < ℓ(w)`, i.e. `i+1` appears before `i` in one-line notation.
    pub fn is_left_descent(&self, i: usize) -> bool {
        self.inverse().is_right_descent(i)
    }

    /// The lexicographically least reduced word for `w`, as `w = s_{i1} s_{i2} ...`.
    ///
    /// Deterministic so operator-word tests are reproducible; no result may depend
    /// on this particular choice (braid invariance is tested separately).
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        'outer: while !w.is_identity() {
            for i in 1..w.n() {
                if w.is_left_descent(i) {
                    word.push(i);
                    w = w.left_s(i);
                    continue 'outer;
                }
            }
            unreachable!("non-identity permutation has a left descent");
        }
        word
    }

    /// All `n!` permutations, in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(n)];
        let mut current = (1..=n).collect::<Vec<_>>();
        while next_lex(&mut current) {
            out.push(Permutation { images: current.clone() });
        }
        out
    }
}

fn next_lex(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;
    /// Function composition: `(u * v)(i) = u(v(i))`.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.n(), rhs.n(), "rank mismatch in composition");
        Permutation {
            images: (1..=self.n()).map(|i| self.apply(rhs.apply(i))).collect(),
        }
    }
}

impl std::ops::Mul for Permutation {
    type Output = Permutation;
    fn mul(self, rhs: Permutation) -> Permutation {
        &self * &rhs
    }
}

impl fmt::Display for Permutation {
    /// Digit string like `1423` for `n <= 9`, comma list otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &v in &self.images {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let strs: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", strs.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = WeylError;
    fn from_str(s: &str) -> Result<Self, WeylError> {
        let images: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| WeylError::ParsePermutation(s.to_string()))?
        } else {
            s.trim()
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| WeylError::ParsePermutation(s.to_string()))?
        };
        Permutation::from_images(images)
    }
}

/// Which Bruhat order to use: the standard one, or the `p`-twisted order
/// in which `u ⩽_p v` iff `p⁻¹u ⩽ p⁻¹v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruhatOrder {
    Standard,
    TwistedBy(Permutation),
}

/// Truth of `u ⩽ v` in the chosen Bruhat order.
///
/// The standard order is decided by the dominance criterion:
/// `u ⩽ v` iff for all `i, j`, `|{k ⩽ i : u(k) ⩾ j}| ⩽ |{k ⩽ i : v(k) ⩾ j}|`.
pub fn bruhat_leq(u: &Permutation, v: &Permutation, order: &BruhatOrder) -> Result<bool, WeylError> {
    if u.n() != v.n() {
        return Err(WeylError::RankMismatch(u.n(), v.n()));
    }
    match order {
        BruhatOrder::Standard => Ok(bruhat_leq_std(u, v)),
        BruhatOrder::TwistedBy(p) => {
            if p.n() != u.n() {
                return Err(WeylError::RankMismatch(p.n(), u.n()));
            }
            let pinv = p.inverse();
            Ok(bruhat_leq_std(&(&pinv * u), &(&pinv * v)))
        }
    }
}

fn bruhat_leq_std(u: &Permutation, v: &Permutation) -> bool {
    let n = u.n();
    for i in 1..=n {
        for j in 1..=n {
            let cu = (1..=i).filter(|&k| u.apply(k) >= j).count();
            let cv = (1..=i).filter(|&k| v.apply(k) >= j).count();
            if cu > cv {
                return false;
            }
        }
    }
    true
}

/// A type-A root `±(e_i - e_j)` with `i < j`; positive means `e_i - e_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub i: usize,
    pub j: usize,
    pub positive: bool,
}

impl Root {
    pub fn positive(i: usize, j: usize) -> Root {
        assert!(i < j, "positive root needs i < j");
        Root { i, j, positive: true }
    }

    /// The root as an ordered pair `(a, b)` meaning `e_a - e_b`.
    pub fn as_pair(&self) -> (usize, usize) {
        if self.positive {
            (self.i, self.j)
        } else {
            (self.j, self.i)
        }
    }

    /// `w(e_a - e_b) = e_{w(a)} - e_{w(b)}`, renormalized to `i < j` plus sign.
    pub fn act(&self, w: &Permutation) -> Root {
        let (a, b) = self.as_pair();
        let (wa, wb) = (w.apply(a), w.apply(b));
        if wa < wb {
            Root { i: wa, j: wb, positive: true }
        } else {
            Root { i: wb, j: wa, positive: false }
        }
    }

    /// The reflection `r_α`, the transposition of `i` and `j`.
    pub fn reflection(&self, n: usize) -> Permutation {
        Permutation::transposition(n, self.i, self.j).expect("root indices in range")
    }
}

/// All positive roots `e_i - e_j`, `i < j`, of `S_n`.
pub fn positive_roots(n: usize) -> Vec<Root> {
    let mut roots = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..n {
        for j in i + 1..=n {
            roots.push(Root::positive(i, j));
        }
    }
    roots
}

/// The root sets of a pair `(u, v)`:
/// `S(u,v) = {α > 0 : u ⩽ v·r_α < v}`, the inversions `{α > 0 : v(α) < 0}`,
/// and the coinversions `{α > 0 : v(α) > 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSets {
    pub s_uv: Vec<Root>,
    pub inversions_v: Vec<Root>,
    pub coinversions_v: Vec<Root>,
}

pub fn root_sets(u: &Permutation, v: &Permutation) -> Result<RootSets, WeylError> {
    if u.n() != v.n() {
        return Err(WeylError::RankMismatch(u.n(), v.n()));
    }
    let n = v.n();
    let mut s_uv = Vec::new();
    let mut inversions_v = Vec::new();
    let mut coinversions_v = Vec::new();
    for alpha in positive_roots(n) {
        let vr = v * &alpha.reflection(n);
        if vr.length() < v.length() && bruhat_leq_std(u, &vr) {
            s_uv.push(alpha);
        }
        if alpha.act(v).positive {
            coinversions_v.push(alpha);
        } else {
            inversions_v.push(alpha);
        }
    }
    Ok(RootSets { s_uv, inversions_v, coinversions_v })
}

/// An integer partition `λ1 ⩾ ... ⩾ λn ⩾ 1` decorating an `n`-row grid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, WeylError> {
        if parts.is_empty()
            || parts.windows(2).any(|w| w[0] < w[1])
            || *parts.last().unwrap() == 0
        {
            return Err(WeylError::BadPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// The staircase `(n, n-1, ..., 1)`: the square model's boundary shape.
    pub fn staircase(n: usize) -> Self {
        Partition { parts: (1..=n).rev().collect() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn first(&self) -> usize {
        self.parts[0]
    }

    /// Whether all parts are distinct.
    pub fn is_strict(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl FromStr for Partition {
    type Err = WeylError;
    fn from_str(s: &str) -> Result<Self, WeylError> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| WeylError::ParsePartition(s.to_string()))?;
        Partition::new(parts)
    }
}

/// The Weyl vector `ρ = (n-1, n-2, ..., 0)` used for `x^ρ` conjugations.
pub fn rho(n: usize) -> Vec<i64> {
    (0..n).rev().map(|k| k as i64).collect()
}

/// The weight `w·μ` with `(w·μ)_i = μ_{w⁻¹(i)}`.
pub fn act_on_weight(w: &Permutation, mu: &[i64]) -> Vec<i64> {
    let winv = w.inverse();
    (1..=mu.len()).map(|i| mu[winv.apply(i) - 1]).collect()
}

/// The longest element of the coset `σ·Stab(w0·λ)`.
///
/// `Stab(w0·λ)` is the Young subgroup fixing the weakly increasing vector
/// `(λn, ..., λ1)`; within each block of equal parts, the longest coset element
/// carries σ's images in decreasing order.
pub fn max_coset_rep(sigma: &Permutation, lambda: &Partition) -> Result<Permutation, WeylError> {
    let n = sigma.n();
    if lambda.n() != n {
        return Err(WeylError::RankMismatch(lambda.n(), n));
    }
    // w0·λ read off positions 1..n is (λ_n, ..., λ_1).
    let rev: Vec<usize> = lambda.parts().iter().rev().copied().collect();
    let mut images = sigma.images().to_vec();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && rev[end] == rev[start] {
            end += 1;
        }
        images[start..end].sort_unstable_by(|a, b| b.cmp(a));
        start = end;
    }
    Permutation::from_images(images)
}

/// Whether `σ` is the longest element of its own `Stab(w0·λ)` coset.
pub fn is_max_coset_rep(sigma: &Permutation, lambda: &Partition) -> Result<bool, WeylError> {
    Ok(&max_coset_rep(sigma, lambda)? == sigma)
}
