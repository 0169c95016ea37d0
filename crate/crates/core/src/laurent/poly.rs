//! Laurent polynomials over the integers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{LaurentError, Mono};
use crate::weyl::Permutation;

/// An exact Laurent polynomial: a finite `Mono -> BigInt` map with no zero
/// coefficients stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Mono, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentPoly::term(Mono::one(), c)
    }

    pub fn term(m: Mono, c: impl Into<BigInt>) -> Self {
        let mut p = LaurentPoly::zero();
        p.insert_add(m, c.into());
        p
    }

    pub fn monomial(m: Mono) -> Self {
        LaurentPoly::term(m, 1)
    }

    /// The variable `x_i`.
    pub fn x(i: usize) -> Self {
        LaurentPoly::monomial(Mono::x(i))
    }

    /// The variable `y_j`.
    pub fn y(j: usize) -> Self {
        LaurentPoly::monomial(Mono::y(j))
    }

    /// The parameter `t`.
    pub fn t() -> Self {
        LaurentPoly::monomial(Mono::t_pow(1))
    }

    /// `1 - m`, the ubiquitous binomial.
    pub fn one_minus(m: &Mono) -> Self {
        let mut p = LaurentPoly::one();
        p.insert_add(m.clone(), BigInt::from(-1));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The constant term.
    pub fn constant_coeff(&self) -> BigInt {
        self.coeff(&Mono::one())
    }

    pub(crate) fn insert_add(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Rebuild with every term transformed; sums collide-and-merge.
    fn map_terms(&self, mut f: impl FnMut(&Mono, &BigInt) -> (Mono, BigInt)) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let (m2, c2) = f(m, c);
            out.insert_add(m2, c2);
        }
        out
    }

    pub fn neg_ref(&self) -> LaurentPoly {
        self.map_terms(|m, c| (m.clone(), -c))
    }

    pub fn mul_mono(&self, m: &Mono) -> LaurentPoly {
        self.map_terms(|m0, c| (m0.mul(m), c.clone()))
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        self.map_terms(|m, c0| (m.clone(), c0 * c))
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Largest x-index appearing in any term.
    pub fn x_arity(&self) -> usize {
        self.terms.keys().map(|m| m.x_arity()).max().unwrap_or(0)
    }

    /// Largest y-index appearing in any term.
    pub fn y_arity(&self) -> usize {
        self.terms.keys().map(|m| m.y_arity()).max().unwrap_or(0)
    }

    /// Exact division in the Laurent ring over the integers.
    ///
    /// Both operands are shifted by their componentwise minimum exponents into
    /// nonnegative range, where the term order is a well-order and standard
    /// long division terminates; the quotient is then shifted back. Any
    /// non-divisible leading term certifies that no exact quotient exists.
    pub fn exact_div(&self, d: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        if d.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let shift_p = self.min_exponents();
        let shift_d = d.min_exponents();
        let p1 = self.mul_mono(&shift_p.inv());
        let d1 = d.mul_mono(&shift_d.inv());
        let (dm, dc) = d1
            .terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("nonzero divisor");
        let mut rem = p1;
        let mut quot = LaurentPoly::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem
                .terms
                .iter()
                .next_back()
                .map(|(m, c)| (m.clone(), c.clone()))
                .unwrap();
            let qm = rm.div(&dm);
            if !qm.all_nonneg() {
                return Err(LaurentError::NotDivisible);
            }
            let qc = &rc / &dc;
            if &qc * &dc != rc {
                return Err(LaurentError::NotDivisible);
            }
            let step = LaurentPoly::term(qm, qc);
            rem = &rem - &(&step * &d1);
            quot = &quot + &step;
        }
        Ok(quot.mul_mono(&shift_p.div(&shift_d)))
    }

    fn min_exponents(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = it.next().expect("nonzero polynomial").clone();
        it.fold(first, |acc, m| acc.component_min(m))
    }

    // ----- substitutions -----

    /// Restriction `x_i -> y_{u(i)}`.
    pub fn restrict(&self, u: &Permutation) -> LaurentPoly {
        self.map_terms(|m, c| {
            let mut ys = m.y_exps().to_vec();
            for (idx, &e) in m.x_exps().iter().enumerate() {
                if e != 0 {
                    let target = u.apply(idx + 1);
                    if ys.len() < target {
                        ys.resize(target, 0);
                    }
                    ys[target - 1] += e;
                }
            }
            (
                Mono::y_weight(&ys).mul(&Mono::t_half_pow(m.t2())),
                c.clone(),
            )
        })
    }

    /// The left action `w·f`, substituting `x_i -> x_{w(i)}` so that
    /// `u·(v·f) = (uv)·f` and `(w·f)` restricted at `u` equals `f` restricted
    /// at `uw`.
    pub fn act_x(&self, w: &Permutation) -> LaurentPoly {
        self.map_terms(|m, c| {
            let mut xs = vec![0; m.x_arity().max(w.n())];
            for (idx, &e) in m.x_exps().iter().enumerate() {
                if e != 0 {
                    xs[w.apply(idx + 1) - 1] += e;
                }
            }
            (
                Mono::x_weight(&xs)
                    .mul(&Mono::y_weight(m.y_exps()))
                    .mul(&Mono::t_half_pow(m.t2())),
                c.clone(),
            )
        })
    }

    /// The same action on the y-alphabet, `y_j -> y_{w(j)}`.
    pub fn act_y(&self, w: &Permutation) -> LaurentPoly {
        self.map_terms(|m, c| {
            let mut ys = vec![0; m.y_arity().max(w.n())];
            for (idx, &e) in m.y_exps().iter().enumerate() {
                if e != 0 {
                    ys[w.apply(idx + 1) - 1] += e;
                }
            }
            (
                Mono::y_weight(&ys)
                    .mul(&Mono::x_weight(m.x_exps()))
                    .mul(&Mono::t_half_pow(m.t2())),
                c.clone(),
            )
        })
    }

    /// Substitute each `x_i` by the monomial `ms[i-1]` (t and y untouched
    /// except through the substituted monomials). Slots beyond `ms.len()`
    /// must not occur in `self`.
    pub fn subst_x(&self, ms: &[Mono]) -> LaurentPoly {
        self.map_terms(|m, c| {
            let mut out = Mono::y_weight(m.y_exps()).mul(&Mono::t_half_pow(m.t2()));
            for (i, &e) in m.x_exps().iter().enumerate() {
                if e != 0 {
                    out = out.mul(&ms[i].powi(e));
                }
            }
            (out, c.clone())
        })
    }

    /// `x -> -x` on the whole alphabet: each term picks up the parity of its
    /// total x-degree.
    pub fn negate_x(&self) -> LaurentPoly {
        self.map_terms(|m, c| {
            let sign = if m.x_total_degree().rem_euclid(2) == 0 {
                c.clone()
            } else {
                -c
            };
            (m.clone(), sign)
        })
    }

    /// `x_i -> 1/x_i` and `y_j -> 1/y_j` simultaneously (t untouched).
    pub fn invert_xy(&self) -> LaurentPoly {
        self.map_terms(|m, c| {
            (
                Mono::x_weight(&m.x_exps().iter().map(|e| -e).collect::<Vec<_>>())
                    .mul(&Mono::y_weight(
                        &m.y_exps().iter().map(|e| -e).collect::<Vec<_>>(),
                    ))
                    .mul(&Mono::t_half_pow(m.t2())),
                c.clone(),
            )
        })
    }

    /// `t -> 1/t` (doubled exponent negated).
    pub fn invert_t(&self) -> LaurentPoly {
        self.map_terms(|m, c| {
            (
                Mono::x_weight(m.x_exps())
                    .mul(&Mono::y_weight(m.y_exps()))
                    .mul(&Mono::t_half_pow(-m.t2())),
                c.clone(),
            )
        })
    }

    /// Set `t = 0`: positive powers vanish; a negative power is a pole.
    pub fn set_t_zero(&self) -> Result<LaurentPoly, LaurentError> {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            if m.t2() < 0 {
                return Err(LaurentError::Pole("negative power of t at t = 0".into()));
            }
            if m.t2() == 0 {
                out.insert_add(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Set `t = 1`.
    pub fn set_t_one(&self) -> LaurentPoly {
        self.map_terms(|m, c| {
            (
                Mono::x_weight(m.x_exps()).mul(&Mono::y_weight(m.y_exps())),
                c.clone(),
            )
        })
    }

    /// Set every `y_j = 0`: terms with positive y-exponents vanish; any
    /// negative y-exponent is a pole.
    pub fn set_y_zero(&self) -> Result<LaurentPoly, LaurentError> {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            if m.y_exps().iter().any(|&e| e < 0) {
                return Err(LaurentError::Pole("negative power of y at y = 0".into()));
            }
            if m.y_exps().iter().all(|&e| e == 0) {
                out.insert_add(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    // ----- display / serialization -----

    /// Plain-text form with terms in ascending monomial order, e.g.
    /// `1 - x1*y1^-1`. `t_name` renames the deformation parameter for systems
    /// whose natural letter is `q`.
    pub fn to_text_with(&self, t_name: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono_txt = mono_text(m, t_name);
            if mono_txt.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&mono_txt);
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.to_text_with("t")
    }

    /// LaTeX form, e.g. `1 - x_1 y_1^{-1}`.
    pub fn to_latex_with(&self, t_name: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono_txt = mono_latex(m, t_name);
            if mono_txt.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push(' ');
                }
                out.push_str(&mono_txt);
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.to_latex_with("t")
    }

    /// JSON value with exponent vectors padded to `n` x's and `cols` y's.
    /// The t-exponent is reported doubled, flagged by `exp_denominator`.
    pub fn to_json(&self, n: usize, cols: usize) -> serde_json::Value {
        let n = n.max(self.x_arity());
        let cols = cols.max(self.y_arity());
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut xs = m.x_exps().to_vec();
                xs.resize(n, 0);
                let mut ys = m.y_exps().to_vec();
                ys.resize(cols, 0);
                serde_json::json!({
                    "coef": c.to_string(),
                    "t": m.t2(),
                    "x": xs,
                    "y": ys,
                })
            })
            .collect();
        serde_json::json!({
            "n": n,
            "N": cols,
            "exp_denominator": {"t": 2},
            "terms": terms,
        })
    }
}

fn exp_text(e: i64) -> String {
    if e == 1 {
        String::new()
    } else {
        format!("^{e}")
    }
}

fn mono_text(m: &Mono, t_name: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    match m.t2() {
        0 => {}
        2 => parts.push(t_name.to_string()),
        e if e % 2 == 0 => parts.push(format!("{t_name}^{}", e / 2)),
        e => parts.push(format!("{t_name}^({e}/2)")),
    }
    for (idx, &e) in m.x_exps().iter().enumerate() {
        if e != 0 {
            parts.push(format!("x{}{}", idx + 1, exp_text(e)));
        }
    }
    for (idx, &e) in m.y_exps().iter().enumerate() {
        if e != 0 {
            parts.push(format!("y{}{}", idx + 1, exp_text(e)));
        }
    }
    parts.join("*")
}

fn latex_exp(e: i64) -> String {
    if e == 1 {
        String::new()
    } else {
        format!("^{{{e}}}")
    }
}

fn mono_latex(m: &Mono, t_name: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    match m.t2() {
        0 => {}
        2 => parts.push(t_name.to_string()),
        e if e % 2 == 0 => parts.push(format!("{t_name}^{{{}}}", e / 2)),
        e => parts.push(format!("{t_name}^{{{e}/2}}")),
    }
    for (idx, &e) in m.x_exps().iter().enumerate() {
        if e != 0 {
            parts.push(format!("x_{}{}", idx + 1, latex_exp(e)));
        }
    }
    for (idx, &e) in m.y_exps().iter().enumerate() {
        if e != 0 {
            parts.push(format!("y_{}{}", idx + 1, latex_exp(e)));
        }
    }
    parts.join(" ")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.insert_add(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;
    use proptest::prelude::*;

    fn pp(s: &str) -> LaurentPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        let p = pp("1 - x1*y1^-1");
        let q = pp("1 + x1*y1^-1");
        assert_eq!(&p * &q, pp("1 - x1^2*y1^-2"));
        assert_eq!(&p + &q, pp("2"));
        assert_eq!(&p - &p, LaurentPoly::zero());
    }

    #[test]
    fn display_matches_expected_forms() {
        assert_eq!(pp("1 - x1*y1^-1").to_text(), "1 - x1*y1^-1");
        assert_eq!(LaurentPoly::zero().to_text(), "0");
        assert_eq!(pp("-1 + t*x2*y1^-1").to_text(), "-1 + t*x2*y1^-1");
        assert_eq!(
            LaurentPoly::term(Mono::t_half_pow(1), 3).to_text(),
            "3*t^(1/2)"
        );
        assert_eq!(
            LaurentPoly::term(Mono::t_half_pow(-1), 1).to_text_with("q"),
            "q^(-1/2)"
        );
        assert_eq!(pp("t^2*x1 - 2*t").to_text(), "-2*t + t^2*x1");
        assert_eq!(pp("x1 + t").to_latex(), "t + x_1");
        assert_eq!(pp("1 - x1*y1^-1").to_latex(), "1 - x_1 y_1^{-1}");
    }

    #[test]
    fn exact_div_parsed_examples() {
        // (1 - x1^2/y1^2) / (1 - x1/y1) = 1 + x1/y1.
        let p = pp("1 - x1^2*y1^-2");
        let d = pp("1 - x1*y1^-1");
        assert_eq!(p.exact_div(&d).unwrap(), pp("1 + x1*y1^-1"));
        // The quotient may be a Laurent monomial times a polynomial.
        let p2 = pp("y1 + y1^2");
        let d2 = pp("x1 + x1*y1");
        assert_eq!(p2.exact_div(&d2).unwrap(), pp("x1^-1*y1"));
        // Non-divisible pairs are detected.
        assert_eq!(
            pp("1 + x1").exact_div(&pp("1 - x1")),
            Err(LaurentError::NotDivisible)
        );
        assert_eq!(
            pp("2*x1").exact_div(&pp("3")),
            Err(LaurentError::NotDivisible)
        );
        assert_eq!(
            pp("x1").exact_div(&LaurentPoly::zero()),
            Err(LaurentError::DivisionByZero)
        );
    }

    #[test]
    fn restriction_substitutes_x_for_y() {
        // (1 - x1/y2) at u = 21 sends x1 -> y2: result 0... rather 1 - y2/y2 = 0.
        let p = pp("1 - x1*y2^-1");
        let u: Permutation = "21".parse().unwrap();
        assert_eq!(p.restrict(&u), LaurentPoly::zero());
        let v: Permutation = "12".parse().unwrap();
        assert_eq!(p.restrict(&v), pp("1 - y1*y2^-1"));
    }

    #[test]
    fn act_x_is_a_left_action() {
        let f = pp("x1^2*y1 + t*x2 - x3^-1");
        let u: Permutation = "231".parse().unwrap();
        let v: Permutation = "312".parse().unwrap();
        assert_eq!(f.act_x(&v).act_x(&u), f.act_x(&(&u * &v)));
        let s1: Permutation = "213".parse().unwrap();
        assert_eq!(pp("x1").act_x(&s1), pp("x2"));
    }

    #[test]
    fn specializations() {
        let f = pp("1 + t*x1 + t^2*y1");
        assert_eq!(f.set_t_zero().unwrap(), pp("1"));
        assert_eq!(f.set_t_one(), pp("1 + x1 + y1"));
        assert_eq!(f.set_y_zero().unwrap(), pp("1 + t*x1"));
        assert!(pp("t^-1").set_t_zero().is_err());
        assert!(pp("y1^-1").set_y_zero().is_err());
        assert_eq!(pp("x1 - x2^2").negate_x(), pp("-x1 - x2^2"));
        assert_eq!(pp("x1*y1^-1 + t").invert_xy(), pp("x1^-1*y1 + t"));
        assert_eq!(pp("t + x1").invert_t(), pp("t^-1 + x1"));
    }

    #[test]
    fn json_shape() {
        let f = pp("1 - x1*y1^-1");
        let v = f.to_json(2, 2);
        assert_eq!(v["n"], 2);
        assert_eq!(v["N"], 2);
        assert_eq!(v["exp_denominator"]["t"], 2);
        assert_eq!(v["terms"][0]["coef"], "1");
        assert_eq!(v["terms"][1]["coef"], "-1");
        assert_eq!(v["terms"][1]["x"][0], 1);
        assert_eq!(v["terms"][1]["y"][0], -1);
    }

    // ----- property tests -----

    fn arb_mono() -> impl Strategy<Value = Mono> {
        (
            -2i64..=2,
            proptest::collection::vec(-2i64..=2, 0..=2),
            proptest::collection::vec(-2i64..=2, 0..=2),
        )
            .prop_map(|(t2, xs, ys)| {
                Mono::t_half_pow(t2)
                    .mul(&Mono::x_weight(&xs))
                    .mul(&Mono::y_weight(&ys))
            })
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((arb_mono(), -5i64..=5), 0..=4).prop_map(|ts| {
            let mut p = LaurentPoly::zero();
            for (m, c) in ts {
                p.insert_add(m, BigInt::from(c));
            }
            p
        })
    }

    fn arb_perm3() -> impl Strategy<Value = Permutation> {
        (0usize..6).prop_map(|k| Permutation::all(3)[k].clone())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn exact_div_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
        }

        #[test]
        fn action_restriction_compatibility(f in arb_poly(), u in arb_perm3(), w in arb_perm3()) {
            // (w·f)|_u = f|_{uw}
            prop_assert_eq!(f.act_x(&w).restrict(&u), f.restrict(&(&u * &w)));
        }

        #[test]
        fn involutions(f in arb_poly()) {
            prop_assert_eq!(f.negate_x().negate_x(), f.clone());
            prop_assert_eq!(f.invert_xy().invert_xy(), f.clone());
            prop_assert_eq!(f.invert_t().invert_t(), f.clone());
        }

        #[test]
        fn text_round_trips(f in arb_poly()) {
            prop_assert_eq!(parse_poly(&f.to_text()).unwrap(), f);
        }
    }
}
