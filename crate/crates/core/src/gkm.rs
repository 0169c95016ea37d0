//! GKM tuples: functions from S_n to Laurent polynomials in (t, y),
//! the combinatorial model for torus-equivariant classes on the flag
//! variety. A tuple is in the model ring when every difference along a
//! reflection is divisible by the matching root binomial; restriction of a
//! two-variable polynomial always lands there, and the Hecke-type operator
//! [`d_op`] preserves the ring entry by entry.

use crate::laurent::{LaurentPoly, Mono};
use crate::weyl::{positive_roots, Permutation, WeylError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GkmError {
    #[error("entry at {w} minus its {divisor}-neighbor is not divisible")]
    ExactDivisionFailed { w: String, divisor: String },
    #[error("generator index {0} must satisfy 1 ≤ i < {1}")]
    BadGenerator(usize, usize),
    #[error("tuple rank {0} does not match {1}")]
    RankMismatch(usize, usize),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// A total assignment of a Laurent polynomial in (t, y) to every element
/// of S_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkmTuple {
    n: usize,
    entries: BTreeMap<Permutation, LaurentPoly>,
}

impl GkmTuple {
    /// Build a tuple by evaluating `f` on every element of S_n.
    pub fn from_fn(n: usize, mut f: impl FnMut(&Permutation) -> LaurentPoly) -> Self {
        let entries = Permutation::all(n)
            .into_iter()
            .map(|w| {
                let v = f(&w);
                (w, v)
            })
            .collect();
        GkmTuple { n, entries }
    }

    pub fn constant(n: usize, p: LaurentPoly) -> Self {
        GkmTuple::from_fn(n, |_| p.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, w: &Permutation) -> &LaurentPoly {
        self.entries.get(w).expect("tuple is total on S_n")
    }

    pub fn set(&mut self, w: &Permutation, p: LaurentPoly) {
        assert_eq!(w.n(), self.n, "rank mismatch");
        self.entries.insert(w.clone(), p);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &LaurentPoly)> {
        self.entries.iter()
    }

    /// Entrywise product.
    pub fn mul(&self, other: &GkmTuple) -> GkmTuple {
        assert_eq!(self.n, other.n, "rank mismatch");
        GkmTuple::from_fn(self.n, |w| self.at(w) * other.at(w))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|p| p.is_zero())
    }

    /// JSON object mapping the one-line permutation string to polynomial
    /// text.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|(w, p)| (w.to_string(), serde_json::Value::String(p.to_text())))
            .collect();
        serde_json::Value::Object(map)
    }
}

/// Restrict a polynomial in (x, y, t) at every Weyl group element:
/// the entry at u is f with x_i ↦ y_{u(i)}. The x-arity of `f` must be at
/// most `n`. The image always satisfies the divisibility condition.
pub fn restrict_all(f: &LaurentPoly, n: usize) -> GkmTuple {
    GkmTuple::from_fn(n, |w| f.restrict(w))
}

/// The membership test: for every w and every positive root α = e_i − e_j,
/// the difference of entries at w and r_α·w is divisible by 1 − y_i/y_j.
pub fn is_gkm(t: &GkmTuple) -> bool {
    let roots = positive_roots(t.n());
    for (w, fw) in t.iter() {
        for root in &roots {
            let rw = &root.reflection(t.n()) * w;
            let diff = fw - t.at(&rw);
            let divisor = LaurentPoly::one_minus(
                &Mono::y_pow(root.i, 1).mul(&Mono::y_pow(root.j, -1)),
            );
            if diff.exact_div(&divisor).is_err() {
                return false;
            }
        }
    }
    true
}

/// The Hecke-type operator on tuples (with q = t):
/// (D_i f)_w = (q−1)/(1−y^{w(α_i)})·f_w + (y^{w(α_i)}−q)/(1−y^{w(α_i)})·f_{w s_i},
/// computed in the integral form
/// (q−1)·(f_w − f_{w s_i})/(1−y^{w(α_i)}) − f_{w s_i},
/// whose division is exact precisely when the tuple is in the model ring.
pub fn d_op(i: usize, t: &GkmTuple) -> Result<GkmTuple, GkmError> {
    let n = t.n();
    if i == 0 || i + 1 > n {
        return Err(GkmError::BadGenerator(i, n));
    }
    let si = Permutation::simple(n, i)?;
    let q_minus_1 = &LaurentPoly::t() - &LaurentPoly::one();
    let mut out = BTreeMap::new();
    for (w, fw) in t.iter() {
        let wsi = w * &si;
        let fwsi = t.at(&wsi);
        // w(α_i) = e_{w(i)} − e_{w(i+1)}
        let divisor = LaurentPoly::one_minus(
            &Mono::y_pow(w.apply(i), 1).mul(&Mono::y_pow(w.apply(i + 1), -1)),
        );
        let quot = (fw - fwsi).exact_div(&divisor).map_err(|_| {
            GkmError::ExactDivisionFailed {
                w: w.to_string(),
                divisor: divisor.to_text(),
            }
        })?;
        out.insert(w.clone(), &(&q_minus_1 * &quot) - fwsi);
    }
    Ok(GkmTuple { n, entries: out })
}
