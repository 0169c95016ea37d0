//! Polynomial families living over the staircase model: motivic Chern
//! classes and their duals, K-theoretic stable envelopes for every chamber,
//! deformed R-polynomials with denominator certificates and their
//! Kazhdan–Lusztig limit, double Grothendieck polynomials with pipe dreams,
//! factorial Schur polynomials, and the Whittaker-weight family on general
//! column shapes.
//!
//! Everything here is assembled from the lattice partition functions and the
//! divided-difference operators; each family also satisfies an independent
//! characterization (a restriction recursion, a dual partition-function
//! formula, or a combinatorial expansion), and the tests hold the two routes
//! against each other.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::demazure::{self, DemazureError, OperatorKind};
use crate::gkm::{self, GkmError, GkmTuple};
use crate::lattice::{self, LatticeError, LatticeState};
use crate::laurent::{BinomialFraction, LaurentError, LaurentPoly, Mono};
use crate::weights::{classify, CaseData, WeightSystem, WeightsError};
use crate::weyl::{
    self, bruhat_leq, positive_roots, BruhatOrder, Partition, Permutation, Root, WeylError,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClassesError {
    #[error("bad input shape: {0}")]
    Shape(String),
    #[error("denominator certificate failed at ({u}, {v}): residual denominator {residual}")]
    CertificateFailed {
        u: Permutation,
        v: Permutation,
        residual: String,
    },
    #[error("the R-polynomial limit at ({u}, {v}) does not converge to a polynomial in q")]
    LimitDiverged { u: Permutation, v: Permutation },
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Demazure(#[from] DemazureError),
    #[error(transparent)]
    Gkm(#[from] GkmError),
    #[error(transparent)]
    Weights(#[from] WeightsError),
}

// ---------------------------------------------------------------------------
// shared seeds and the normalizing unit r
// ---------------------------------------------------------------------------

/// `Π_{i<j} (1 − x_i/y_j)`: the class supported at the point cell.
pub fn point_cell_seed(n: usize) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for i in 1..=n {
        for j in i + 1..=n {
            p = &p * &LaurentPoly::one_minus(&Mono::x_pow(i, 1).mul(&Mono::y_pow(j, -1)));
        }
    }
    p
}

/// `Π_{i+j≤n} (1 − x_i/y_j)`: the class of the big opposite cell.
pub fn opposite_cell_seed(n: usize) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for i in 1..n {
        for j in 1..=n - i {
            p = &p * &LaurentPoly::one_minus(&Mono::x_pow(i, 1).mul(&Mono::y_pow(j, -1)));
        }
    }
    p
}

/// The unit `r(x; y) = (−1)^(ℓ(w₀)) x^ρ y^(−ρ)` with `ρ = (n−1, …, 1, 0)`.
///
/// It converts between the two alphabet orders:
/// `r(x; y) · Π_{i+j≤n}(1 − y_j/x_i) = Π_{i+j≤n}(1 − x_i/y_j)`, and the same
/// with both sides inverted. Permuted-alphabet variants are obtained with
/// [`LaurentPoly::act_x`] and [`LaurentPoly::act_y`].
pub fn r_factor(n: usize) -> LaurentPoly {
    let rho = weyl::rho(n);
    let neg: Vec<i64> = rho.iter().map(|k| -k).collect();
    let sign = if (n * (n - 1) / 2) % 2 == 1 { -1 } else { 1 };
    LaurentPoly::term(Mono::x_weight(&rho).mul(&Mono::y_weight(&neg)), sign)
}

/// `r(x_v; x) = (−1)^(ℓ(w₀)) x^(vρ − ρ)`: the all-`x` specialization of the
/// unit with its first alphabet permuted by `v`.
fn r_factor_xx(v: &Permutation) -> LaurentPoly {
    let n = v.n();
    let rho = weyl::rho(n);
    let moved = weyl::act_on_weight(v, &rho);
    let diff: Vec<i64> = moved.iter().zip(&rho).map(|(a, b)| a - b).collect();
    let sign = if (n * (n - 1) / 2) % 2 == 1 { -1 } else { 1 };
    LaurentPoly::term(Mono::x_weight(&diff), sign)
}

/// `y^α` for a root `α = e_a − e_b`.
fn y_root(alpha: &Root) -> Mono {
    let (a, b) = alpha.as_pair();
    Mono::y_pow(a, 1).mul(&Mono::y_pow(b, -1))
}

/// Walk letters that descend from `a · (word prefix)` at `a` down to `a`'s
/// coset partner: for `c = a⁻¹ b` with `ℓ(b) = ℓ(a) + ℓ(c)`, applying the
/// returned letters in order steps `b → … → a`, each step a right descent.
fn descent_letters(a: &Permutation, b: &Permutation) -> Vec<usize> {
    let mut word = (&a.inverse() * b).reduced_word();
    word.reverse();
    word
}

// ---------------------------------------------------------------------------
// motivic Chern classes
// ---------------------------------------------------------------------------

/// Which of the four motivic Chern families to build: classes of Schubert
/// cells (`X`), of opposite cells (`Y`), and their duals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McKind {
    X,
    Y,
    XDual,
    YDual,
}

impl McKind {
    pub const ALL: [McKind; 4] = [McKind::X, McKind::Y, McKind::XDual, McKind::YDual];

    fn operator(self) -> OperatorKind {
        match self {
            McKind::X | McKind::Y => OperatorKind::TMc,
            McKind::XDual | McKind::YDual => OperatorKind::TMcDual,
        }
    }

    /// Opposite-cell families are seeded at `w₀` and built downward.
    fn is_opposite(self) -> bool {
        matches!(self, McKind::Y | McKind::YDual)
    }

    pub fn is_dual(self) -> bool {
        matches!(self, McKind::XDual | McKind::YDual)
    }
}

impl fmt::Display for McKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            McKind::X => "X",
            McKind::Y => "Y",
            McKind::XDual => "Xdual",
            McKind::YDual => "Ydual",
        };
        write!(f, "{s}")
    }
}

impl FromStr for McKind {
    type Err = ClassesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(McKind::X),
            "y" => Ok(McKind::Y),
            "xdual" | "x_dual" | "x-dual" => Ok(McKind::XDual),
            "ydual" | "y_dual" | "y-dual" => Ok(McKind::YDual),
            other => Err(ClassesError::Shape(format!(
                "unknown class kind {other:?} (expected X, Y, Xdual, or Ydual)"
            ))),
        }
    }
}

/// The lifted (dual) motivic Chern class of the cell indexed by `w`.
///
/// `X`-kinds start from the point-cell product and climb `w` one ascent at a
/// time; `Y`-kinds start from the big-cell product at `w₀` and walk down.
/// Either Hecke-type operator satisfies a quadratic relation, so the result
/// is independent of the reduced word chosen.
pub fn mc(kind: McKind, w: &Permutation) -> Result<LaurentPoly, ClassesError> {
    let n = w.n();
    let op = kind.operator();
    if kind.is_opposite() {
        let w0 = Permutation::longest(n);
        let mut f = opposite_cell_seed(n);
        for i in descent_letters(w, &w0) {
            f = demazure::apply(&op, i, &f)?;
        }
        Ok(f)
    } else {
        let mut f = point_cell_seed(n);
        for &i in &w.reduced_word() {
            f = demazure::apply(&op, i, &f)?;
        }
        Ok(f)
    }
}

// ---------------------------------------------------------------------------
// stable envelopes
// ---------------------------------------------------------------------------

/// A Weyl chamber for the stable envelope. `Minus` is the chamber of the
/// identity, `Plus` the chamber of the longest element, and `Perm(u)`
/// interpolates between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabChamber {
    Minus,
    Plus,
    Perm(Permutation),
}

impl StabChamber {
    /// The permutation indexing this chamber at rank `n`.
    pub fn rep(&self, n: usize) -> Permutation {
        match self {
            StabChamber::Minus => Permutation::identity(n),
            StabChamber::Plus => Permutation::longest(n),
            StabChamber::Perm(u) => u.clone(),
        }
    }
}

impl fmt::Display for StabChamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabChamber::Minus => write!(f, "minus"),
            StabChamber::Plus => write!(f, "plus"),
            StabChamber::Perm(u) => write!(f, "perm:{u}"),
        }
    }
}

impl FromStr for StabChamber {
    type Err = ClassesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "minus" | "-" => Ok(StabChamber::Minus),
            "plus" | "+" => Ok(StabChamber::Plus),
            other => {
                let digits = other.strip_prefix("perm:").unwrap_or(other);
                let images: Option<Vec<usize>> = digits
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize))
                    .collect();
                let images = images.ok_or_else(|| {
                    ClassesError::Shape(format!(
                        "unknown chamber {s:?} (expected minus, plus, or perm:<digits>)"
                    ))
                })?;
                Ok(StabChamber::Perm(Permutation::from_images(images)?))
            }
        }
    }
}

/// The stable envelope of `w` in the given chamber, via the closed
/// partition-function formula: for chamber `u`,
///
/// `stab_u(w) = (−1)^(ℓ(uw₀)) q^(ℓ(w₀)−ℓ(w)/2) r(x_{(uw₀)⁻¹}; y_u)
///  Z^□_{u,w}(x⁻¹; (y_u)⁻¹)`,
///
/// with `q = t⁻¹`. The `minus` and `plus` chambers recover the two
/// seed-and-recursion families (see [`stab_via_operators`]).
pub fn stab(chamber: &StabChamber, w: &Permutation) -> Result<LaurentPoly, ClassesError> {
    let n = w.n();
    let u = chamber.rep(n);
    if u.n() != n {
        return Err(ClassesError::Shape(format!(
            "chamber rank {} does not match w rank {n}",
            u.n()
        )));
    }
    let w0 = Permutation::longest(n);
    let uw0 = &u * &w0;
    let z = lattice::z_square(&u, w)?.invert_xy().act_y(&u);
    let r = r_factor(n).act_x(&uw0.inverse()).act_y(&u);
    // q^(ℓ(w₀) − ℓ(w)/2) at q = t⁻¹ is t^((ℓ(w) − 2ℓ(w₀))/2)
    let q_pow = Mono::t_half_pow(w.length() as i64 - 2 * w0.length() as i64);
    let mut out = (&z * &r).mul_mono(&q_pow);
    if uw0.length() % 2 == 1 {
        out = out.neg_ref();
    }
    Ok(out)
}

/// The same stable envelope computed from the chamber seed
///
/// `stab_u(uw₀) = (−1)^(ℓ(u)) q^(ℓ(uw₀)/2) r(x_{(uw₀)⁻¹}; x)
///  Π_{i+j≤n} (1 − x_i/y_{u(j)})`
///
/// by walking `uw₀ → w` with the chamber's twisted recursion operator
/// (its descent steps apply the operator, ascent steps its inverse).
pub fn stab_via_operators(
    chamber: &StabChamber,
    w: &Permutation,
) -> Result<LaurentPoly, ClassesError> {
    let n = w.n();
    let u = chamber.rep(n);
    if u.n() != n {
        return Err(ClassesError::Shape(format!(
            "chamber rank {} does not match w rank {n}",
            u.n()
        )));
    }
    let w0 = Permutation::longest(n);
    let uw0 = &u * &w0;
    let mut seed = opposite_cell_seed(n).act_y(&u);
    seed = &seed * &r_factor_xx(&uw0.inverse());
    seed = seed.mul_mono(&Mono::t_half_pow(-(uw0.length() as i64)));
    if u.length() % 2 == 1 {
        seed = seed.neg_ref();
    }
    let walk = demazure::walk_between(&uw0, w);
    Ok(demazure::apply_walk(
        &OperatorKind::MU(u),
        &walk,
        &seed,
    )?)
}

// ---------------------------------------------------------------------------
// fixed-point weights φ and the Θ tuples
// ---------------------------------------------------------------------------

/// The fixed-point weight
/// `φ_w = Π_{α>0, w⁻¹α>0} (q·y^(−α) − 1) · Π_{α>0, w⁻¹α<0} (1 − y^(−α))`
/// with `q = t`.
pub fn phi_weight(w: &Permutation) -> LaurentPoly {
    let n = w.n();
    let winv = w.inverse();
    let mut p = LaurentPoly::one();
    for alpha in positive_roots(n) {
        let y_neg = y_root(&alpha).inv();
        if alpha.act(&winv).positive {
            let f = &LaurentPoly::term(Mono::t_pow(1).mul(&y_neg), 1) - &LaurentPoly::one();
            p = &p * &f;
        } else {
            p = &p * &LaurentPoly::one_minus(&y_neg);
        }
    }
    p
}

/// The tuple `Θ_u` (restriction functions in `y` indexed by S_n) together
/// with all fixed-point weights `φ_w`.
#[derive(Debug, Clone)]
pub struct ThetaPhi {
    pub theta: GkmTuple,
    pub phi: BTreeMap<Permutation, LaurentPoly>,
}

/// Build `Θ_u` by seeding the tuple `δ_{w₀} · φ_{w₀}` at the longest element
/// and walking down to `u` with the restriction-level Hecke operator, one
/// right descent at a time. The entries satisfy
/// `[Θ_u]_v = φ_v · r_{u⁻¹, v⁻¹}` and reproduce staircase restrictions.
pub fn theta_phi(u: &Permutation) -> Result<ThetaPhi, ClassesError> {
    let n = u.n();
    let w0 = Permutation::longest(n);
    let phi: BTreeMap<Permutation, LaurentPoly> = Permutation::all(n)
        .into_iter()
        .map(|w| {
            let p = phi_weight(&w);
            (w, p)
        })
        .collect();
    let seed_value = phi[&w0].clone();
    let mut theta = GkmTuple::from_fn(n, |w| {
        if *w == w0 {
            seed_value.clone()
        } else {
            LaurentPoly::zero()
        }
    });
    for i in descent_letters(u, &w0) {
        theta = gkm::d_op(i, &theta)?;
    }
    Ok(ThetaPhi { theta, phi })
}

// ---------------------------------------------------------------------------
// deformed R-polynomials
// ---------------------------------------------------------------------------

/// A deformed R-polynomial `r_{u,v}`: a rational function of `q = t` and `y`
/// whose denominator is a product of root binomials `1 − y^β`.
#[derive(Debug, Clone)]
pub struct RPolynomial {
    pub u: Permutation,
    pub v: Permutation,
    pub value: BinomialFraction,
}

/// Compute `r_{u,v}` by the left-descent recursion: `r_{v,v} = 1`,
/// `r_{u,v} = 0` unless `u ≤ v`, and for a simple `s` with `sv < v` and
/// `β = −v⁻¹(α_s) > 0`:
///
/// * `r_{u,v} = (1−q)/(1−y^β) · r_{u,sv} + r_{su,sv}` when `su < u`,
/// * `r_{u,v} = (1−q)y^β/(1−y^β) · r_{u,sv} + q · r_{su,sv}` when `su > u`.
pub fn r_poly(u: &Permutation, v: &Permutation) -> Result<RPolynomial, ClassesError> {
    if u.n() != v.n() {
        return Err(ClassesError::Shape(format!(
            "rank mismatch: u has rank {}, v has rank {}",
            u.n(),
            v.n()
        )));
    }
    let mut memo = BTreeMap::new();
    let value = r_poly_rec(u, v, &mut memo)?;
    Ok(RPolynomial {
        u: u.clone(),
        v: v.clone(),
        value,
    })
}

fn r_poly_rec(
    u: &Permutation,
    v: &Permutation,
    memo: &mut BTreeMap<(Permutation, Permutation), BinomialFraction>,
) -> Result<BinomialFraction, ClassesError> {
    if let Some(f) = memo.get(&(u.clone(), v.clone())) {
        return Ok(f.clone());
    }
    let out = if !bruhat_leq(u, v, &BruhatOrder::Standard)? {
        BinomialFraction::zero()
    } else if u == v {
        BinomialFraction::one()
    } else {
        let n = v.n();
        let i = (1..n)
            .find(|&i| v.is_left_descent(i))
            .expect("v above u in Bruhat order has a left descent");
        let sv = v.left_s(i);
        let su = u.left_s(i);
        let alpha = Root::positive(i, i + 1).act(&v.inverse());
        debug_assert!(!alpha.positive);
        let y_beta = y_root(&alpha).inv();
        let one_minus_q = &LaurentPoly::one() - &LaurentPoly::term(Mono::t_pow(1), 1);
        let r_usv = r_poly_rec(u, &sv, memo)?;
        let r_susv = r_poly_rec(&su, &sv, memo)?;
        let val = if su.length() < u.length() {
            let mut a = r_usv.mul_poly(&one_minus_q);
            a.divide_by_binomial(&y_beta, 1)?;
            a.add(&r_susv)
        } else {
            let mut a = r_usv.mul_poly(&(&one_minus_q * &LaurentPoly::term(y_beta.clone(), 1)));
            a.divide_by_binomial(&y_beta, 1)?;
            a.add(&r_susv.mul_poly(&LaurentPoly::term(Mono::t_pow(1), 1)))
        };
        val.reduce()
    };
    memo.insert((u.clone(), v.clone()), out.clone());
    Ok(out)
}

/// Multiply `r_{u,v}` by `Π_{β ∈ S(u,v)} (1 − y^β)`, where `S(u,v)` is the
/// set of positive roots `β` with `u ≤ v·r_β < v`, and return the product,
/// which is guaranteed to be a Laurent polynomial. A failure to clear the
/// denominator is reported as [`ClassesError::CertificateFailed`].
pub fn denominator_certificate(
    u: &Permutation,
    v: &Permutation,
) -> Result<LaurentPoly, ClassesError> {
    let r = r_poly(u, v)?;
    let mut f = r.value;
    for beta in weyl::root_sets(u, v)?.s_uv {
        f = f.mul_poly(&LaurentPoly::one_minus(&y_root(&beta)));
    }
    let f = f.reduce();
    f.to_poly().map_err(|_| ClassesError::CertificateFailed {
        u: u.clone(),
        v: v.clone(),
        residual: f.den_poly().to_text(),
    })
}

/// The classical Kazhdan–Lusztig R-polynomial `R_{u,v}(q)` as the limit of
/// `r_{u,v}` when every `y^β`, `β > 0`, grows without bound.
///
/// Realizing the limit along `y_j = z^(n−j)`, `z → ∞`, the numerator and
/// denominator are replaced by their top-graded parts; the denominator's is
/// a single monomial, and the quotient must be free of `y`.
pub fn kl_r_limit(u: &Permutation, v: &Permutation) -> Result<LaurentPoly, ClassesError> {
    let rp = r_poly(u, v)?;
    if rp.value.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let n = v.n();
    let num_top = top_y_component(rp.value.num(), n);
    let den_top = top_y_component(&rp.value.den_poly(), n);
    let diverged = || ClassesError::LimitDiverged {
        u: u.clone(),
        v: v.clone(),
    };
    let mut terms = den_top.terms();
    let (m, c) = terms.next().ok_or_else(diverged)?;
    if terms.next().is_some() {
        return Err(diverged());
    }
    let mut res = num_top.mul_mono(&m.inv());
    if *c != 1.into() {
        if *c == (-1).into() {
            res = res.neg_ref();
        } else {
            return Err(diverged());
        }
    }
    if res.terms().any(|(m, _)| m.y_arity() > 0) {
        return Err(diverged());
    }
    Ok(res)
}

/// The terms of `p` of maximal total grade under `deg y_j = n − j` (so that
/// every positive root monomial `y^β` has strictly positive grade).
fn top_y_component(p: &LaurentPoly, n: usize) -> LaurentPoly {
    let grade = |m: &Mono| -> i64 {
        m.y_exps()
            .iter()
            .enumerate()
            .map(|(idx, e)| e * (n as i64 - 1 - idx as i64))
            .sum()
    };
    let top = p.terms().map(|(m, _)| grade(m)).max().unwrap_or(0);
    let mut out = LaurentPoly::zero();
    for (m, c) in p.terms() {
        if grade(m) == top {
            out = &out + &LaurentPoly::term(m.clone(), c.clone());
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Grothendieck polynomials and pipe dreams
// ---------------------------------------------------------------------------

/// The double Grothendieck polynomial of `w`, built from the top seed
/// `Π_{i+j≤n} (1 − x_i/y_j)` at `w₀` by isobaric divided differences along
/// any reduced word for `w⁻¹w₀`.
pub fn grothendieck(w: &Permutation) -> Result<LaurentPoly, ClassesError> {
    let n = w.n();
    let w0 = Permutation::longest(n);
    let mut f = opposite_cell_seed(n);
    for i in descent_letters(w, &w0) {
        f = demazure::apply(&OperatorKind::Isobaric, i, &f)?;
    }
    Ok(f)
}

/// One admissible state surviving the crystalline (`t = 0`) specialization,
/// read as a pipe dream.
#[derive(Debug, Clone)]
pub struct PipeDream {
    pub state: LatticeState,
    /// Boxes where one strand passes straight over another (row, column).
    pub crosses: Vec<(usize, usize)>,
    /// Boxes where two strands meet without crossing.
    pub bumps: Vec<(usize, usize)>,
    /// The multiplicity weight: `1 − x_i/y_j` per cross, `x_i/y_j` per bump
    /// whose pair crosses again weakly north-west of it.
    pub weight: LaurentPoly,
}

/// All pipe dreams of `w` on a strict column shape, with their weight sum
/// and the exit permutation of the extended strand family.
#[derive(Debug, Clone)]
pub struct PipeDreams {
    pub lambda: Partition,
    pub dreams: Vec<PipeDream>,
    /// Sum of the multiplicity weights over all dreams.
    pub weight_sum: LaurentPoly,
    /// Where each strand entered: strand exiting row `k` entered column
    /// `λ_{n+1−w(k)}`; unused columns exit in increasing order below the
    /// grid. An element of S_{λ₁}.
    pub exit_permutation: Permutation,
    /// `(−1)^(#bumps)`, identical for every dream of the family.
    pub sign: i64,
}

/// Enumerate the pipe dreams of `w` on the shape `λ` (the staircase when
/// `shape` is `None`). States are the admissible lattice states with nonzero
/// crystalline weight; the per-state multiplicity weight recovers that
/// lattice weight up to the global sign, and the weight sum is the double
/// Grothendieck polynomial of the exit permutation up to the same sign.
pub fn pipe_dreams(
    w: &Permutation,
    shape: Option<&Partition>,
) -> Result<PipeDreams, ClassesError> {
    let n = w.n();
    let staircase;
    let lam = match shape {
        Some(l) => l,
        None => {
            staircase = Partition::staircase(n);
            &staircase
        }
    };
    if lam.n() != n {
        return Err(ClassesError::Shape(format!(
            "shape has {} parts but w has rank {n}",
            lam.n()
        )));
    }
    if !lam.is_strict() {
        return Err(ClassesError::Shape(
            "pipe dreams need distinct column entries".into(),
        ));
    }
    let cols = lam.first();
    let e = Permutation::identity(n);
    let b = lattice::boundary(&e, w, lam, cols)?;

    let mut images = vec![0usize; cols];
    for k in 1..=n {
        images[k - 1] = lam.parts()[n - w.apply(k)];
    }
    let nonparts: Vec<usize> = (1..=cols).filter(|c| !lam.parts().contains(c)).collect();
    for (idx, c) in nonparts.into_iter().enumerate() {
        images[n + idx] = c;
    }
    let exit_permutation = Permutation::from_images(images)?;

    let mut dreams = Vec::new();
    let mut weight_sum = LaurentPoly::zero();
    let mut sign = 1i64;
    for state in lattice::enumerate_states(&b) {
        // survival filter: the K-theoretic weight specialized at t = 0 (the
        // single-label crystalline table is only defined on the survivors)
        let crystal = state
            .weight_product(WeightSystem::KTheoretic)?
            .set_t_zero()?;
        if crystal.is_zero() {
            continue;
        }
        let mut boxes = Vec::new();
        for i in 1..=n {
            for j in 1..=cols {
                let cfg = state.config_at(i, j);
                let case = classify(&cfg).expect("admissible state vertex");
                boxes.push((i, j, case));
            }
        }
        // where each unordered pair of strands crosses
        let mut pair_crosses: BTreeMap<(u8, u8), Vec<(usize, usize)>> = BTreeMap::new();
        let mut crosses = Vec::new();
        for (i, j, case) in &boxes {
            if let CaseData::Case2 { c, sigma } = case {
                crosses.push((*i, *j));
                for other in sigma.iter() {
                    if other != *c {
                        let key = (other.min(*c), other.max(*c));
                        pair_crosses.entry(key).or_default().push((*i, *j));
                    }
                }
            }
        }
        let mut bumps = Vec::new();
        let mut weight = LaurentPoly::one();
        for (i, j, case) in &boxes {
            match case {
                CaseData::Case2 { .. } => {
                    weight = &weight
                        * &LaurentPoly::one_minus(&Mono::x_pow(*i, 1).mul(&Mono::y_pow(*j, -1)));
                }
                CaseData::Case5 { c, d, .. } | CaseData::Case6 { c, d, .. } => {
                    bumps.push((*i, *j));
                    let key = (*c.min(d), *c.max(d));
                    let crossed_upstream = pair_crosses
                        .get(&key)
                        .map(|v| v.iter().any(|&(ci, cj)| ci <= *i && cj >= *j))
                        .unwrap_or(false);
                    if crossed_upstream {
                        weight = weight.mul_mono(&Mono::x_pow(*i, 1).mul(&Mono::y_pow(*j, -1)));
                    }
                }
                _ => {}
            }
        }
        if dreams.is_empty() {
            sign = if bumps.len() % 2 == 1 { -1 } else { 1 };
        }
        weight_sum = &weight_sum + &weight;
        dreams.push(PipeDream {
            state,
            crosses,
            bumps,
            weight,
        });
    }
    Ok(PipeDreams {
        lambda: lam.clone(),
        dreams,
        weight_sum,
        exit_permutation,
        sign,
    })
}

// ---------------------------------------------------------------------------
// factorial Schur polynomials and the Whittaker-weight family
// ---------------------------------------------------------------------------

/// The factorial Schur polynomial `s_λ(x | y)` in `n` variables, in the
/// shifted-by-`+y` convention matched by the Whittaker-weight refinement:
/// `det( Π_{k=1}^{λ_j + n − j} (x_i + y_k) ) / Π_{i<j} (x_i − x_j)`.
/// `lambda` is a weakly decreasing list of at most `n` parts; missing parts
/// are zero, and the empty list gives `1`.
pub fn factorial_schur(lambda: &[usize], n: usize) -> Result<LaurentPoly, ClassesError> {
    if n == 0 || lambda.len() > n || lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(ClassesError::Shape(format!(
            "need a weakly decreasing shape with at most {n} parts"
        )));
    }
    let part = |j: usize| lambda.get(j - 1).copied().unwrap_or(0);
    let entry = |i: usize, j: usize| -> LaurentPoly {
        let mut p = LaurentPoly::one();
        for k in 1..=part(j) + n - j {
            let f = &LaurentPoly::term(Mono::x_pow(i, 1), 1) + &LaurentPoly::term(Mono::y_pow(k, 1), 1);
            p = &p * &f;
        }
        p
    };
    let mut det = LaurentPoly::zero();
    for p in Permutation::all(n) {
        let mut prod = LaurentPoly::one();
        for i in 1..=n {
            prod = &prod * &entry(i, p.apply(i));
        }
        if p.length() % 2 == 1 {
            prod = prod.neg_ref();
        }
        det = &det + &prod;
    }
    let mut vandermonde = LaurentPoly::one();
    for i in 1..=n {
        for j in i + 1..=n {
            let f = &LaurentPoly::term(Mono::x_pow(i, 1), 1) - &LaurentPoly::term(Mono::x_pow(j, 1), 1);
            vandermonde = &vandermonde * &f;
        }
    }
    Ok(det.exact_div(&vandermonde)?)
}

/// The Whittaker-weight partition function `Ω^λ_{σ,w}` on the column shape
/// `λ`, a polynomial in `x`, `y`, and `t`.
pub fn iwahori_omega(
    sigma: &Permutation,
    w: &Permutation,
    lambda: &Partition,
) -> Result<LaurentPoly, ClassesError> {
    Ok(lattice::z_polynomial(
        sigma,
        w,
        lambda,
        lambda.first(),
        WeightSystem::Whittaker,
    )?)
}

/// Both sides of the refinement identity
/// `Σ_{w} Ω^{λ+δ}_{σ,w} = Π_{i<j} (x_i − t·x_j) · s_λ(x | y)`,
/// where `δ = (n, …, 2, 1)` and the sum runs over all of S_n.
pub fn refinement_sides(
    sigma: &Permutation,
    lambda: &[usize],
) -> Result<(LaurentPoly, LaurentPoly), ClassesError> {
    let n = sigma.n();
    if lambda.len() > n || lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(ClassesError::Shape(format!(
            "need a weakly decreasing shape with at most {n} parts"
        )));
    }
    let shifted: Vec<usize> = (1..=n)
        .map(|i| lambda.get(i - 1).copied().unwrap_or(0) + (n + 1 - i))
        .collect();
    let shape = Partition::new(shifted)?;
    let mut sum = LaurentPoly::zero();
    for w in Permutation::all(n) {
        sum = &sum + &iwahori_omega(sigma, &w, &shape)?;
    }
    let mut rhs = factorial_schur(lambda, n)?;
    for i in 1..=n {
        for j in i + 1..=n {
            let f = &LaurentPoly::term(Mono::x_pow(i, 1), 1)
                - &LaurentPoly::term(Mono::t_pow(1).mul(&Mono::x_pow(j, 1)), 1);
            rhs = &rhs * &f;
        }
    }
    Ok((sum, rhs))
}
