//! Fractions whose denominators are products of binomials `(1 - m)`.
//!
//! This shape covers every denominator the engine meets: divided-difference
//! operators divide by `1 - x_i/x_{i+1}`, R-polynomial recursions by
//! `1 - y^β` for positive roots `β`, and rational vertex weights by
//! `1 - t·y_j/x_i`. Keeping the denominator as a factored multiset makes
//! common denominators, cancellation, and pole checks exact and cheap.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::{LaurentError, LaurentPoly, Mono};
use crate::weyl::Permutation;

/// `num / Π (1 - m)^mult`, canonicalized so every `m > 1` in the monomial
/// order (flipping `1 - m = (-m)(1 - 1/m)` as needed).
#[derive(Clone, PartialEq, Eq)]
pub struct BinomialFraction {
    num: LaurentPoly,
    den: BTreeMap<Mono, u32>,
}

impl BinomialFraction {
    pub fn from_poly(num: LaurentPoly) -> Self {
        BinomialFraction { num, den: BTreeMap::new() }
    }

    pub fn zero() -> Self {
        BinomialFraction::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        BinomialFraction::from_poly(LaurentPoly::one())
    }

    /// Build `num / Π (1 - m)^k`. Fails if any `m = 1`.
    pub fn new(
        num: LaurentPoly,
        den: impl IntoIterator<Item = (Mono, u32)>,
    ) -> Result<Self, LaurentError> {
        let mut out = BinomialFraction::from_poly(num);
        for (m, k) in den {
            out.divide_by_binomial(&m, k)?;
        }
        Ok(out)
    }

    /// Multiply by `1 / (1 - m)^k`, canonicalizing the factor's orientation.
    pub fn divide_by_binomial(&mut self, m: &Mono, k: u32) -> Result<(), LaurentError> {
        if k == 0 {
            return Ok(());
        }
        if m.is_one() {
            return Err(LaurentError::ZeroDenominator);
        }
        let mut m = m.clone();
        if m < Mono::one() {
            // 1 - m = (-m)(1 - 1/m): move the unit into the numerator.
            let unit = LaurentPoly::term(m.inv().pow(k), if k % 2 == 1 { -1 } else { 1 });
            self.num = &self.num * &unit;
            m = m.inv();
        }
        *self.den.entry(m).or_insert(0) += k;
        Ok(())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den_factors(&self) -> impl Iterator<Item = (&Mono, u32)> {
        self.den.iter().map(|(m, &k)| (m, k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The denominator expanded to a polynomial.
    pub fn den_poly(&self) -> LaurentPoly {
        let mut d = LaurentPoly::one();
        for (m, &k) in &self.den {
            d = &d * &LaurentPoly::one_minus(m).pow(k);
        }
        d
    }

    /// Exact value equality via cross-multiplication.
    pub fn value_eq(&self, other: &BinomialFraction) -> bool {
        &self.num * &other.den_poly() == &other.num * &self.den_poly()
    }

    pub fn add(&self, other: &BinomialFraction) -> BinomialFraction {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &BinomialFraction) -> BinomialFraction {
        self.combine(other, true)
    }

    fn combine(&self, other: &BinomialFraction, subtract: bool) -> BinomialFraction {
        // Common denominator: per-factor maximum multiplicity.
        let mut den = self.den.clone();
        for (m, &k) in &other.den {
            let e = den.entry(m.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        let lift = |f: &BinomialFraction| -> LaurentPoly {
            let mut n = f.num.clone();
            for (m, &k) in &den {
                let have = f.den.get(m).copied().unwrap_or(0);
                if k > have {
                    n = &n * &LaurentPoly::one_minus(m).pow(k - have);
                }
            }
            n
        };
        let a = lift(self);
        let b = lift(other);
        let num = if subtract { &a - &b } else { &a + &b };
        let mut out = BinomialFraction { num, den };
        out.prune_zero_and_reduce_lightly();
        out
    }

    pub fn neg(&self) -> BinomialFraction {
        BinomialFraction { num: self.num.neg_ref(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &BinomialFraction) -> BinomialFraction {
        let mut den = self.den.clone();
        for (m, &k) in &other.den {
            *den.entry(m.clone()).or_insert(0) += k;
        }
        let mut out = BinomialFraction { num: &self.num * &other.num, den };
        out.prune_zero_and_reduce_lightly();
        out
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> BinomialFraction {
        BinomialFraction { num: &self.num * p, den: self.den.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> BinomialFraction {
        BinomialFraction { num: self.num.scale(c), den: self.den.clone() }
    }

    fn prune_zero_and_reduce_lightly(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
        }
    }

    /// Cancel denominator factors that divide the numerator exactly.
    pub fn reduce(&self) -> BinomialFraction {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        loop {
            let mut progress = false;
            let factors: Vec<Mono> = den.keys().cloned().collect();
            for m in factors {
                let b = LaurentPoly::one_minus(&m);
                while den.get(&m).copied().unwrap_or(0) > 0 {
                    match num.exact_div(&b) {
                        Ok(q) => {
                            num = q;
                            let k = den.get_mut(&m).unwrap();
                            *k -= 1;
                            if *k == 0 {
                                den.remove(&m);
                            }
                            progress = true;
                        }
                        Err(_) => break,
                    }
                }
            }
            if !progress {
                break;
            }
        }
        let mut out = BinomialFraction { num, den };
        out.prune_zero_and_reduce_lightly();
        out
    }

    /// Reduce and require an empty denominator.
    pub fn to_poly(&self) -> Result<LaurentPoly, LaurentError> {
        let r = self.reduce();
        if r.den.is_empty() {
            Ok(r.num)
        } else {
            Err(LaurentError::NonPolynomial)
        }
    }

    /// Restriction `x_i -> y_{u(i)}` applied to numerator and denominator,
    /// failing if a denominator factor collapses to `1 - 1`.
    pub fn restrict(&self, u: &Permutation) -> Result<BinomialFraction, LaurentError> {
        let num = self.num.restrict(u);
        let mut out = BinomialFraction::from_poly(num);
        for (m, &k) in &self.den {
            let restricted = only_mono(&LaurentPoly::monomial(m.clone()).restrict(u));
            if restricted.is_one() {
                return Err(LaurentError::Pole(format!(
                    "denominator factor vanishes under restriction at {u}"
                )));
            }
            out.divide_by_binomial(&restricted, k)?;
        }
        Ok(out)
    }

    /// Apply the left action `w·` on the x-alphabet to both parts.
    pub fn act_x(&self, w: &Permutation) -> BinomialFraction {
        let num = self.num.act_x(w);
        let mut out = BinomialFraction::from_poly(num);
        for (m, &k) in &self.den {
            let moved = only_mono(&LaurentPoly::monomial(m.clone()).act_x(w));
            out.divide_by_binomial(&moved, k).expect("action preserves m != 1");
        }
        out
    }

    /// Apply the left action `w·` on the y-alphabet to both parts.
    pub fn act_y(&self, w: &Permutation) -> BinomialFraction {
        let num = self.num.act_y(w);
        let mut out = BinomialFraction::from_poly(num);
        for (m, &k) in &self.den {
            let moved = only_mono(&LaurentPoly::monomial(m.clone()).act_y(w));
            out.divide_by_binomial(&moved, k).expect("action preserves m != 1");
        }
        out
    }

    /// Set `t = 0` in numerator and denominator factors.
    pub fn set_t_zero(&self) -> Result<BinomialFraction, LaurentError> {
        let num = self.num.set_t_zero()?;
        let mut out = BinomialFraction::from_poly(num);
        for (m, &k) in &self.den {
            if m.t2() > 0 {
                // (1 - m) -> 1: factor disappears.
                continue;
            }
            if m.t2() < 0 {
                return Err(LaurentError::Pole("negative power of t at t = 0".into()));
            }
            out.divide_by_binomial(m, k)?;
        }
        Ok(out)
    }

    pub fn to_text_with(&self, t_name: &str) -> String {
        if self.den.is_empty() {
            return self.num.to_text_with(t_name);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(m, &k)| {
                let base = format!("(1 - {})", LaurentPoly::monomial(m.clone()).to_text_with(t_name));
                if k == 1 {
                    base
                } else {
                    format!("{base}^{k}")
                }
            })
            .collect();
        format!("({}) / ({})", self.num.to_text_with(t_name), den.join(" * "))
    }

    pub fn to_text(&self) -> String {
        self.to_text_with("t")
    }
}

/// Extract the unique monomial of a single-term polynomial with coefficient 1.
fn only_mono(p: &LaurentPoly) -> Mono {
    let mut it = p.terms();
    let (m, c) = it.next().expect("nonzero");
    assert!(it.next().is_none() && c == &BigInt::from(1), "not a plain monomial");
    m.clone()
}

impl fmt::Display for BinomialFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for BinomialFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinomialFraction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;

    fn pp(s: &str) -> LaurentPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn canonicalizes_reversed_factors() {
        // 1/(1 - y2/y1) = (-y1/y2)/(1 - y1/y2).
        let a = BinomialFraction::new(
            LaurentPoly::one(),
            [(Mono::y(2).mul(&Mono::y_pow(1, -1)), 1)],
        )
        .unwrap();
        let b = BinomialFraction::new(
            pp("-y1*y2^-1"),
            [(Mono::y(1).mul(&Mono::y_pow(2, -1)), 1)],
        )
        .unwrap();
        assert_eq!(a, b);
        assert!(a.value_eq(&b));
    }

    #[test]
    fn arithmetic_matches_rational_identities() {
        let m = Mono::y(1).mul(&Mono::y_pow(2, -1));
        // 1/(1-m) - m/(1-m) = 1.
        let one_over = BinomialFraction::new(LaurentPoly::one(), [(m.clone(), 1)]).unwrap();
        let m_over = BinomialFraction::new(LaurentPoly::monomial(m.clone()), [(m.clone(), 1)]).unwrap();
        let diff = one_over.sub(&m_over);
        assert_eq!(diff.reduce(), BinomialFraction::one());
        // (1/(1-m)) * (1-m) = 1.
        let back = one_over.mul_poly(&LaurentPoly::one_minus(&m));
        assert_eq!(back.to_poly().unwrap(), LaurentPoly::one());
    }

    #[test]
    fn add_uses_max_multiplicity_not_sum() {
        let m = Mono::y(1).mul(&Mono::y_pow(2, -1));
        let f = BinomialFraction::new(LaurentPoly::one(), [(m.clone(), 1)]).unwrap();
        let s = f.add(&f);
        assert_eq!(s.den_factors().map(|(_, k)| k).sum::<u32>(), 1);
        assert_eq!(s.num(), &LaurentPoly::constant(2));
    }

    #[test]
    fn reduce_cancels_all_the_way() {
        let m = Mono::x(1).mul(&Mono::x_pow(2, -1));
        // (1-m)^2 / (1-m) reduces to 1-m.
        let f = BinomialFraction::new(LaurentPoly::one_minus(&m).pow(2), [(m.clone(), 1)]).unwrap();
        let r = f.reduce();
        assert_eq!(r.num(), &LaurentPoly::one_minus(&m));
        assert_eq!(r.den_factors().count(), 0);
        assert!(BinomialFraction::new(pp("1 + x1"), [(m, 1)])
            .unwrap()
            .to_poly()
            .is_err());
    }

    #[test]
    fn restriction_detects_poles() {
        let m = Mono::x(1).mul(&Mono::y_pow(1, -1));
        let f = BinomialFraction::new(LaurentPoly::one(), [(m, 1)]).unwrap();
        let id2: Permutation = "12".parse().unwrap();
        assert!(f.restrict(&id2).is_err());
        let sw: Permutation = "21".parse().unwrap();
        let g = f.restrict(&sw).unwrap();
        assert!(g.value_eq(
            &BinomialFraction::new(LaurentPoly::one(), [(Mono::y(2).mul(&Mono::y_pow(1, -1)), 1)])
                .unwrap()
        ));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            BinomialFraction::new(LaurentPoly::one(), [(Mono::one(), 1)]),
            Err(LaurentError::ZeroDenominator)
        );
    }

    #[test]
    fn display_shape() {
        let m = Mono::y(1).mul(&Mono::y_pow(2, -1));
        let f = BinomialFraction::new(pp("1 - t"), [(m, 1)]).unwrap();
        assert_eq!(f.to_text(), "(1 - t) / ((1 - y1*y2^-1))");
        assert_eq!(BinomialFraction::one().to_text(), "1");
    }
}
