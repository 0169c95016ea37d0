//! The operator algebra on Laurent polynomials: exchange operators τ and τ̄
//! with their inverses, Weyl-vector conjugates 𝔗, Hecke operators T and T^∨
//! for characteristic-class recursions, envelope operators M^± and M^u,
//! classical and isobaric divided differences, signed operator walks, and
//! the double Whittaker polynomial family those walks generate.
//!
//! Every operator acts on the `x`-variables only; `y` and `t` are inert
//! scalars. Writing x^α for x_i/x_{i+1} and s_i for the swap x_i ↔ x_{i+1},
//! each operator has the shape f ↦ (a·f + b·(s_i f)) / d with a, b, d
//! Laurent polynomials in x^α and t. The numerator always vanishes on the
//! reflection hyperplane x_i = x_{i+1}, so the division is exact and the
//! operators map polynomials to polynomials; a division failure signals a
//! convention bug, never bad input.

use crate::laurent::{LaurentPoly, Mono};
use crate::weyl::{rho, Partition, Permutation, WeylError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DemazureError {
    #[error("operator {op} produced a non-polynomial result on {input}")]
    ExactDivisionFailed { op: String, input: String },
    #[error("generator index {0} must satisfy 1 ≤ i < {1}")]
    BadGenerator(usize, usize),
    #[error("operator {0} has no inverse")]
    NotInvertible(&'static str),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// The operators provided by [`apply`]. Each is determined by its displayed
/// formula; conjugated variants are expanded algebraically (the Weyl-vector
/// conjugation x^{±ρ} · op · x^{∓ρ} only shifts the coefficient of s_i f by
/// x^{∓α_i}, so no ambient rank is needed except for [`OperatorKind::MU`],
/// which carries its permutation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorKind {
    /// τ_i f = [(t−1)f + (x^α−t)·s_i f] / (1−x^α).
    Tau,
    /// τ_i⁻¹ f = [(t−1)x^α f + (x^α−t)·s_i f] / (t(1−x^α)).
    TauInv,
    /// τ̄_i f = [(t−1)f + (x^{−α}−t)·s_i f] / (1−x^{−α}); equals θτ_iθ for
    /// θ: x ↦ x⁻¹, y ↦ y⁻¹.
    TauBar,
    /// τ̄_i⁻¹ f = [(t−1)x^{−α} f + (x^{−α}−t)·s_i f] / (t(1−x^{−α})).
    TauBarInv,
    /// 𝔗_i f = [(1−t)f − (1−t·x^{−α})·s_i f] / (x^α−1) = x^{−ρ}τ_i x^ρ.
    FrakT,
    /// 𝔗_i⁻¹ = x^{−ρ}τ_i⁻¹x^ρ.
    FrakTInv,
    /// T_i f = [(t−1)f + (1−t·x^α)·s_i f] / (1−x^{−α}); drives the motivic
    /// Chern class recursion.
    TMc,
    /// T_i^∨ f = [(1−t⁻¹)f + (t⁻¹x^α−1)·s_i f] / (x^α−1) = −t⁻¹·τ_i.
    TMcDual,
    /// M_i⁺ f = [(q^{1/2}−q^{−1/2})f + (q^{−1/2}x^{2α}−q^{1/2}x^α)·s_i f] /
    /// (1−x^α), with q = t⁻¹ throughout.
    MPlus,
    /// M_i⁻ f = [(q^{1/2}−q^{−1/2})x^α f + (q^{−1/2}−q^{1/2}x^{−α})·s_i f] /
    /// (1−x^α), with q = t⁻¹.
    MMinus,
    /// M_i^u = q^{1/2}·x^{−μ} τ̄_i x^{μ} where μ = w₀u⁻¹w₀·ρ and q = t⁻¹.
    /// Specializes to M⁻ at u = e and to (M⁺)⁻¹ at u = w₀.
    MU(Permutation),
    /// ∂_i f = (f − s_i f) / (x_i − x_{i+1}).
    Partial,
    /// ∂̄_i f = (x_{i+1}f − x_i·s_i f) / (x_{i+1} − x_i); the isobaric
    /// divided difference, equal to −τ_i at t = 0.
    Isobaric,
}

impl std::fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OperatorKind::Tau => write!(f, "tau"),
            OperatorKind::TauInv => write!(f, "tau_inv"),
            OperatorKind::TauBar => write!(f, "tau_bar"),
            OperatorKind::TauBarInv => write!(f, "tau_bar_inv"),
            OperatorKind::FrakT => write!(f, "frakT"),
            OperatorKind::FrakTInv => write!(f, "frakT_inv"),
            OperatorKind::TMc => write!(f, "T_mc"),
            OperatorKind::TMcDual => write!(f, "T_mc_dual"),
            OperatorKind::MPlus => write!(f, "M_plus"),
            OperatorKind::MMinus => write!(f, "M_minus"),
            OperatorKind::MU(u) => write!(f, "M_u({u})"),
            OperatorKind::Partial => write!(f, "partial"),
            OperatorKind::Isobaric => write!(f, "isobaric"),
        }
    }
}

/// Swap the exponents of x_i and x_{i+1} in every term (the reflection s_i
/// acting on the x-variables only, independent of any ambient rank).
fn swap_xi(f: &LaurentPoly, i: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (m, c) in f.terms() {
        let mut xs = m.x_exps().to_vec();
        if xs.len() < i + 1 {
            xs.resize(i + 1, 0);
        }
        xs.swap(i - 1, i);
        let swapped = Mono::x_weight(&xs)
            .mul(&Mono::y_weight(m.y_exps()))
            .mul(&Mono::t_half_pow(m.t2()));
        out = &out + &LaurentPoly::term(swapped, c.clone());
    }
    out
}

/// x^{α_i} = x_i / x_{i+1}.
fn alpha_mono(i: usize) -> Mono {
    Mono::x_pow(i, 1).mul(&Mono::x_pow(i + 1, -1))
}

fn tp(k: i64) -> LaurentPoly {
    LaurentPoly::monomial(Mono::t_pow(k))
}

fn thp(k: i64) -> LaurentPoly {
    LaurentPoly::monomial(Mono::t_half_pow(k))
}

fn mp(m: Mono) -> LaurentPoly {
    LaurentPoly::monomial(m)
}

/// Assemble (a·f + b·s_i f) / d, then multiply by the unit monomial.
fn step(
    op: &OperatorKind,
    i: usize,
    f: &LaurentPoly,
    a: &LaurentPoly,
    b: &LaurentPoly,
    d: &LaurentPoly,
    unit: &Mono,
) -> Result<LaurentPoly, DemazureError> {
    let num = &(a * f) + &(b * &swap_xi(f, i));
    match num.exact_div(d) {
        Ok(q) => Ok(q.mul_mono(unit)),
        Err(_) => Err(DemazureError::ExactDivisionFailed {
            op: format!("{op}[{i}]"),
            input: f.to_text(),
        }),
    }
}

/// The coefficient triple (a, b, d) and unit prefactor for one application
/// of `kind` at generator `i`, so that kind_i f = unit·(a·f + b·s_i f)/d.
fn coefficients(
    kind: &OperatorKind,
    i: usize,
) -> Result<(LaurentPoly, LaurentPoly, LaurentPoly, Mono), DemazureError> {
    if i == 0 {
        return Err(DemazureError::BadGenerator(i, 2));
    }
    let one = LaurentPoly::one();
    let xa = alpha_mono(i);
    let xia = xa.inv();
    let t_minus_1 = &tp(1) - &one;
    Ok(match kind {
        OperatorKind::Tau => (
            t_minus_1,
            &mp(xa.clone()) - &tp(1),
            LaurentPoly::one_minus(&xa),
            Mono::one(),
        ),
        OperatorKind::TauInv => (
            t_minus_1.mul_mono(&xa),
            &mp(xa.clone()) - &tp(1),
            LaurentPoly::one_minus(&xa),
            Mono::t_pow(-1),
        ),
        OperatorKind::TauBar => (
            t_minus_1,
            &mp(xia.clone()) - &tp(1),
            LaurentPoly::one_minus(&xia),
            Mono::one(),
        ),
        OperatorKind::TauBarInv => (
            t_minus_1.mul_mono(&xia),
            &mp(xia.clone()) - &tp(1),
            LaurentPoly::one_minus(&xia),
            Mono::t_pow(-1),
        ),
        OperatorKind::FrakT => (
            &one - &tp(1),
            &mp(Mono::t_pow(1).mul(&xia)) - &one,
            &mp(xa.clone()) - &one,
            Mono::one(),
        ),
        OperatorKind::FrakTInv => (
            t_minus_1.mul_mono(&xa),
            &one - &mp(Mono::t_pow(1).mul(&xia)),
            LaurentPoly::one_minus(&xa),
            Mono::t_pow(-1),
        ),
        OperatorKind::TMc => (
            t_minus_1,
            &one - &mp(Mono::t_pow(1).mul(&xa)),
            LaurentPoly::one_minus(&xia),
            Mono::one(),
        ),
        OperatorKind::TMcDual => (
            &one - &tp(-1),
            &mp(Mono::t_pow(-1).mul(&xa)) - &one,
            &mp(xa.clone()) - &one,
            Mono::one(),
        ),
        OperatorKind::MPlus => (
            &thp(-1) - &thp(1),
            &mp(Mono::t_half_pow(1).mul(&xa.pow(2))) - &mp(Mono::t_half_pow(-1).mul(&xa)),
            LaurentPoly::one_minus(&xa),
            Mono::one(),
        ),
        OperatorKind::MMinus => (
            (&thp(-1) - &thp(1)).mul_mono(&xa),
            &thp(1) - &mp(Mono::t_half_pow(-1).mul(&xia)),
            LaurentPoly::one_minus(&xa),
            Mono::one(),
        ),
        OperatorKind::MU(u) => {
            let k = mu_pairing(u, i)?;
            (
                t_minus_1,
                (&mp(xia.clone()) - &tp(1)).mul_mono(&xa.powi(k)),
                LaurentPoly::one_minus(&xia),
                Mono::t_half_pow(-1),
            )
        }
        OperatorKind::Partial => (
            one,
            LaurentPoly::constant(-1),
            &mp(Mono::x_pow(i, 1)) - &mp(Mono::x_pow(i + 1, 1)),
            Mono::one(),
        ),
        OperatorKind::Isobaric => (
            mp(Mono::x_pow(i + 1, 1)),
            -&LaurentPoly::monomial(Mono::x_pow(i, 1)),
            &mp(Mono::x_pow(i + 1, 1)) - &mp(Mono::x_pow(i, 1)),
            Mono::one(),
        ),
    })
}

/// ⟨μ, α_i^∨⟩ for μ = w₀u⁻¹w₀·ρ: conjugating τ̄_i by x^μ multiplies the
/// coefficient of s_i f by x^{kα_i} with k = z(i) − z(i+1), z = w₀uw₀.
fn mu_pairing(u: &Permutation, i: usize) -> Result<i64, DemazureError> {
    let n = u.n();
    if i + 1 > n {
        return Err(DemazureError::BadGenerator(i, n));
    }
    let w0 = Permutation::longest(n);
    let z = &(&w0 * u) * &w0;
    Ok(z.apply(i) as i64 - z.apply(i + 1) as i64)
}

/// Apply one operator at generator `i`. The result is always a polynomial;
/// [`DemazureError::ExactDivisionFailed`] indicates an internal convention
/// bug, never a property of valid input.
pub fn apply(kind: &OperatorKind, i: usize, f: &LaurentPoly) -> Result<LaurentPoly, DemazureError> {
    let (a, b, d, unit) = coefficients(kind, i)?;
    step(kind, i, f, &a, &b, &d, &unit)
}

/// Apply the inverse of one operator at generator `i`. The divided
/// differences kill constants, so `Partial` and `Isobaric` are rejected.
pub fn apply_inverse(
    kind: &OperatorKind,
    i: usize,
    f: &LaurentPoly,
) -> Result<LaurentPoly, DemazureError> {
    if i == 0 {
        return Err(DemazureError::BadGenerator(i, 2));
    }
    let one = LaurentPoly::one();
    let xa = alpha_mono(i);
    let xia = xa.inv();
    let t_minus_1 = &tp(1) - &one;
    match kind {
        OperatorKind::Tau => apply(&OperatorKind::TauInv, i, f),
        OperatorKind::TauInv => apply(&OperatorKind::Tau, i, f),
        OperatorKind::TauBar => apply(&OperatorKind::TauBarInv, i, f),
        OperatorKind::TauBarInv => apply(&OperatorKind::TauBar, i, f),
        OperatorKind::FrakT => apply(&OperatorKind::FrakTInv, i, f),
        OperatorKind::FrakTInv => apply(&OperatorKind::FrakT, i, f),
        // Hecke quadratic T² = (t−1)T + t gives T⁻¹ = t⁻¹·T − (1 − t⁻¹).
        OperatorKind::TMc => {
            let g = apply(&OperatorKind::TMc, i, f)?;
            Ok(&g.mul_mono(&Mono::t_pow(-1)) - &(f * &(&one - &tp(-1))))
        }
        // (T^∨)² = (t⁻¹−1)T^∨ + t⁻¹ gives (T^∨)⁻¹ = t·T^∨ + (t−1).
        OperatorKind::TMcDual => {
            let g = apply(&OperatorKind::TMcDual, i, f)?;
            Ok(&g.mul_mono(&Mono::t_pow(1)) + &(f * &t_minus_1))
        }
        // (M⁺)⁻¹ = q^{1/2}·x^ρ τ̄ x^{−ρ}: the s_i-coefficient of τ̄ gains x^α.
        OperatorKind::MPlus => {
            let b = (&mp(xia.clone()) - &tp(1)).mul_mono(&xa);
            let d = LaurentPoly::one_minus(&xia);
            step(kind, i, f, &t_minus_1, &b, &d, &Mono::t_half_pow(-1))
        }
        // (M⁻)⁻¹ = q^{−1/2}·x^{−ρ} τ̄⁻¹ x^ρ.
        OperatorKind::MMinus => {
            let a = t_minus_1.mul_mono(&xia);
            let b = (&mp(xia.clone()) - &tp(1)).mul_mono(&xia);
            let d = LaurentPoly::one_minus(&xia);
            step(kind, i, f, &a, &b, &d, &Mono::t_half_pow(-1))
        }
        // (M^u)⁻¹ = q^{−1/2}·x^{−μ} τ̄⁻¹ x^{μ}.
        OperatorKind::MU(u) => {
            let k = mu_pairing(u, i)?;
            let a = t_minus_1.mul_mono(&xia);
            let b = (&mp(xia.clone()) - &tp(1)).mul_mono(&xa.powi(k));
            let d = LaurentPoly::one_minus(&xia);
            step(kind, i, f, &a, &b, &d, &Mono::t_half_pow(-1))
        }
        OperatorKind::Partial => Err(DemazureError::NotInvertible("partial")),
        OperatorKind::Isobaric => Err(DemazureError::NotInvertible("isobaric")),
    }
}

/// A signed operator walk: each step is (generator index, exponent ±1),
/// applied first step first. Exponent +1 applies the operator, −1 its
/// inverse. When a walk tracks a Weyl-group path, descents carry +1 and
/// ascents carry −1 — the orientation pinned by the grid recursion, where
/// moving to a shorter element applies the operator itself.
pub type Walk = Vec<(usize, i8)>;

/// The canonical walk from `a` down to the identity (descents, exponent +1)
/// and back up to `b` (ascents, exponent −1), using deterministic reduced
/// words. Every step changes the tracked length by exactly one.
pub fn walk_between(a: &Permutation, b: &Permutation) -> Walk {
    let mut steps: Walk = a.inverse().reduced_word().iter().map(|&i| (i, 1)).collect();
    steps.extend(b.reduced_word().iter().map(|&i| (i, -1)));
    steps
}

/// Apply a [`Walk`] of one operator kind, first step first.
pub fn apply_walk(
    kind: &OperatorKind,
    walk: &Walk,
    f: &LaurentPoly,
) -> Result<LaurentPoly, DemazureError> {
    let mut g = f.clone();
    for &(i, e) in walk {
        g = if e >= 0 {
            apply(kind, i, &g)?
        } else {
            apply_inverse(kind, i, &g)?
        };
    }
    Ok(g)
}

/// The seed of the double Whittaker recursion at the pair (v, vw₀):
/// t^{ℓ(v)} · ∏_i ∏_{j<λ_i} (1 − x_i/y_j).
pub fn whittaker_seed(lambda: &Partition, v: &Permutation) -> LaurentPoly {
    let mut p = LaurentPoly::monomial(Mono::t_pow(v.length() as i64));
    for (idx, &part) in lambda.parts().iter().enumerate() {
        let i = idx + 1;
        for j in 1..part {
            p = &p * &LaurentPoly::one_minus(&Mono::x_pow(i, 1).mul(&Mono::y_pow(j, -1)));
        }
    }
    p
}

/// The double Whittaker polynomial φ^λ_{v,w}: the τ-walk from vw₀ to w
/// applied to [`whittaker_seed`]. Well-defined independently of the walk by
/// the braid and quadratic relations for τ.
pub fn double_whittaker(
    lambda: &Partition,
    v: &Permutation,
    w: &Permutation,
) -> Result<LaurentPoly, DemazureError> {
    if v.n() != w.n() {
        return Err(DemazureError::RankMismatch(v.n(), w.n()));
    }
    let vw0 = v * &Permutation::longest(v.n());
    apply_walk(
        &OperatorKind::Tau,
        &walk_between(&vw0, w),
        &whittaker_seed(lambda, v),
    )
}

/// One verified operator identity in a [`RelationsReport`].
#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub passed: bool,
    /// Text of the first monomial violating the identity, if any.
    pub witness: Option<String>,
}

/// Outcome of [`relations_report`]: each named identity checked on a
/// spanning set of Laurent monomials.
#[derive(Debug, Clone, Serialize)]
pub struct RelationsReport {
    pub rank: usize,
    pub monomials_checked: usize,
    pub checks: Vec<RelationCheck>,
}

impl RelationsReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Monomial test set: all x-exponent vectors in {−1,0,1,2}^n, each also
/// paired with a y₁-factor to confirm the y-variables stay inert.
fn spanning_monomials(n: usize) -> Vec<LaurentPoly> {
    let mut out = Vec::new();
    let mut exps = vec![-1i64; n];
    loop {
        let m = Mono::x_weight(&exps);
        out.push(LaurentPoly::monomial(m.clone()));
        out.push(LaurentPoly::monomial(m.mul(&Mono::y_pow(1, 1))));
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            exps[k] += 1;
            if exps[k] <= 2 {
                break;
            }
            exps[k] = -1;
            k += 1;
        }
    }
}

/// Check the operator identities that tie the kinds together, on the
/// spanning monomial set for rank `n`:
/// braid relations for τ, 𝔗, ∂̄; the quadratic (τ+1)(τ−t) = 0; τ∘τ⁻¹ = id;
/// the conjugations τ = x^ρ 𝔗 x^{−ρ}, M⁻ = q^{1/2}x^{−ρ}τ̄x^ρ and
/// M⁺ = q^{−1/2}x^ρτ̄⁻¹x^{−ρ} at q = t⁻¹; T^∨ = −t⁻¹τ; τ̄ = θτθ;
/// τ|_{t=0} = −∂̄; M^u at u ∈ {e, w₀} against M⁻ and (M⁺)⁻¹; ∂² = 0 and
/// idempotency of ∂̄.
pub fn relations_report(n: usize) -> Result<RelationsReport, DemazureError> {
    if n < 2 {
        return Err(DemazureError::RankMismatch(n, 2));
    }
    let monos = spanning_monomials(n);
    let rho_mono = Mono::x_weight(&rho(n));
    let e = Permutation::identity(n);
    let w0 = Permutation::longest(n);
    let mut checks: Vec<RelationCheck> = Vec::new();

    let mut run = |name: &str,
                   f: &mut dyn FnMut(usize, &LaurentPoly) -> Result<bool, DemazureError>,
                   indices: &[usize]|
     -> Result<(), DemazureError> {
        let mut witness = None;
        for &i in indices {
            for m in &monos {
                if !f(i, m)? {
                    witness = Some(format!("i={i}, f={}", m.to_text()));
                    break;
                }
            }
            if witness.is_some() {
                break;
            }
        }
        checks.push(RelationCheck {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        });
        Ok(())
    };

    let singles: Vec<usize> = (1..n).collect();
    let braids: Vec<usize> = (1..n.saturating_sub(1)).collect();

    for kind in [OperatorKind::Tau, OperatorKind::FrakT, OperatorKind::Isobaric] {
        let name = format!("braid_{kind}");
        run(
            &name,
            &mut |i, m| {
                let lhs = apply(&kind, i, &apply(&kind, i + 1, &apply(&kind, i, m)?)?)?;
                let rhs = apply(&kind, i + 1, &apply(&kind, i, &apply(&kind, i + 1, m)?)?)?;
                Ok(lhs == rhs)
            },
            &braids,
        )?;
    }

    run(
        "quadratic_tau",
        &mut |i, m| {
            let tf = apply(&OperatorKind::Tau, i, m)?;
            let ttf = apply(&OperatorKind::Tau, i, &tf)?;
            let rhs = &(&tf * &(&tp(1) - &LaurentPoly::one())) + &m.mul_mono(&Mono::t_pow(1));
            Ok(ttf == rhs)
        },
        &singles,
    )?;

    run(
        "tau_inverse_round_trip",
        &mut |i, m| {
            let a = apply(&OperatorKind::TauInv, i, &apply(&OperatorKind::Tau, i, m)?)?;
            let b = apply(&OperatorKind::Tau, i, &apply(&OperatorKind::TauInv, i, m)?)?;
            Ok(a == *m && b == *m)
        },
        &singles,
    )?;

    run(
        "tau_conjugate_of_frakT",
        &mut |i, m| {
            let conj = apply(&OperatorKind::FrakT, i, &m.mul_mono(&rho_mono.inv()))?
                .mul_mono(&rho_mono);
            Ok(conj == apply(&OperatorKind::Tau, i, m)?)
        },
        &singles,
    )?;

    run(
        "T_dual_is_minus_tinv_tau",
        &mut |i, m| {
            let lhs = apply(&OperatorKind::TMcDual, i, m)?;
            let rhs = -&apply(&OperatorKind::Tau, i, m)?.mul_mono(&Mono::t_pow(-1));
            Ok(lhs == rhs)
        },
        &singles,
    )?;

    run(
        "M_minus_conjugate_of_tau_bar",
        &mut |i, m| {
            let conj = apply(&OperatorKind::TauBar, i, &m.mul_mono(&rho_mono))?
                .mul_mono(&rho_mono.inv())
                .mul_mono(&Mono::t_half_pow(-1));
            Ok(conj == apply(&OperatorKind::MMinus, i, m)?)
        },
        &singles,
    )?;

    run(
        "M_plus_conjugate_of_tau_bar_inv",
        &mut |i, m| {
            let conj = apply(&OperatorKind::TauBarInv, i, &m.mul_mono(&rho_mono.inv()))?
                .mul_mono(&rho_mono)
                .mul_mono(&Mono::t_half_pow(1));
            Ok(conj == apply(&OperatorKind::MPlus, i, m)?)
        },
        &singles,
    )?;

    run(
        "tau_bar_is_theta_tau_theta",
        &mut |i, m| {
            let lhs = apply(&OperatorKind::Tau, i, &m.invert_xy())?.invert_xy();
            Ok(lhs == apply(&OperatorKind::TauBar, i, m)?)
        },
        &singles,
    )?;

    run(
        "tau_at_t_zero_is_minus_isobaric",
        &mut |i, m| {
            let lhs = apply(&OperatorKind::Tau, i, m)?
                .set_t_zero()
                .map_err(|_| DemazureError::ExactDivisionFailed {
                    op: "tau|_{t=0}".into(),
                    input: m.to_text(),
                })?;
            Ok(lhs == -&apply(&OperatorKind::Isobaric, i, m)?)
        },
        &singles,
    )?;

    run(
        "M_u_at_identity_is_M_minus",
        &mut |i, m| {
            let lhs = apply(&OperatorKind::MU(e.clone()), i, m)?;
            Ok(lhs == apply(&OperatorKind::MMinus, i, m)?)
        },
        &singles,
    )?;

    run(
        "M_u_at_longest_inverts_M_plus",
        &mut |i, m| {
            let lhs = apply(&OperatorKind::MU(w0.clone()), i, &apply(&OperatorKind::MPlus, i, m)?)?;
            Ok(lhs == *m)
        },
        &singles,
    )?;

    run(
        "partial_squares_to_zero",
        &mut |i, m| {
            let d = apply(&OperatorKind::Partial, i, m)?;
            Ok(apply(&OperatorKind::Partial, i, &d)?.is_zero())
        },
        &singles,
    )?;

    run(
        "isobaric_idempotent",
        &mut |i, m| {
            let d = apply(&OperatorKind::Isobaric, i, m)?;
            Ok(apply(&OperatorKind::Isobaric, i, &d)? == d)
        },
        &singles,
    )?;

    Ok(RelationsReport {
        rank: n,
        monomials_checked: monos.len(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::z_polynomial;
    use crate::laurent::parse_poly;
    use crate::weights::WeightSystem;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    fn pp(s: &str) -> LaurentPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn tau_oracles() {
        assert_eq!(
            apply(&OperatorKind::Tau, 1, &pp("x1")).unwrap(),
            pp("-t*x2")
        );
        assert_eq!(
            apply(&OperatorKind::Tau, 1, &LaurentPoly::one()).unwrap(),
            pp("-1")
        );
        assert_eq!(
            apply(&OperatorKind::Isobaric, 1, &pp("1 - x1*y1^-1")).unwrap(),
            LaurentPoly::one()
        );
    }

    #[test]
    fn y_variables_are_inert() {
        // s_i and the divisions act on x only: a pure y-polynomial is a
        // scalar, so τ sends it to −1 times itself, ∂ kills it.
        let f = pp("y1^2 - 3*y2");
        assert_eq!(apply(&OperatorKind::Tau, 1, &f).unwrap(), -&f);
        assert!(apply(&OperatorKind::Partial, 1, &f).unwrap().is_zero());
    }

    #[test]
    fn all_relations_hold_rank_three() {
        let report = relations_report(3).unwrap();
        for c in &report.checks {
            assert!(c.passed, "{} failed: {:?}", c.name, c.witness);
        }
        assert!(report.monomials_checked > 100);
    }

    #[test]
    fn inverses_round_trip_for_every_kind() {
        let f = pp("x1^2*x2 - t*x3 + x2*y1");
        for kind in [
            OperatorKind::Tau,
            OperatorKind::TauInv,
            OperatorKind::TauBar,
            OperatorKind::TauBarInv,
            OperatorKind::FrakT,
            OperatorKind::FrakTInv,
            OperatorKind::TMc,
            OperatorKind::TMcDual,
            OperatorKind::MPlus,
            OperatorKind::MMinus,
            OperatorKind::MU(perm(&[2, 3, 1])),
        ] {
            for i in 1..=2usize {
                let fwd = apply(&kind, i, &f).unwrap();
                let back = apply_inverse(&kind, i, &fwd).unwrap();
                assert_eq!(back, f, "kind={kind} i={i}");
            }
        }
        assert!(matches!(
            apply_inverse(&OperatorKind::Partial, 1, &f),
            Err(DemazureError::NotInvertible(_))
        ));
    }

    #[test]
    fn double_whittaker_small_oracles() {
        let e = Permutation::identity(2);
        let s = perm(&[2, 1]);
        let lam = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(double_whittaker(&lam, &e, &s).unwrap(), pp("1 - x1*y1^-1"));
        assert_eq!(
            double_whittaker(&lam, &e, &e).unwrap(),
            pp("(t-1) - t*(1 - x2*y1^-1)")
        );
        // the seed at v = s carries t^{ℓ(v)}
        assert_eq!(whittaker_seed(&lam, &s), pp("t*(1 - x1*y1^-1)"));
    }

    #[test]
    fn double_whittaker_matches_grid_sums() {
        // λ = (2,1), n = 2: all four (v, w) pairs against enumeration
        let lam = Partition::new(vec![2, 1]).unwrap();
        for v in Permutation::all(2) {
            for w in Permutation::all(2) {
                let phi = double_whittaker(&lam, &v, &w).unwrap();
                let z = z_polynomial(&v, &w, &lam, 2, WeightSystem::KTheoretic).unwrap();
                assert_eq!(phi, z, "v={v} w={w}");
            }
        }
        // a strict shape at n = 3, spot-checked off the staircase
        let lam = Partition::new(vec![4, 2, 1]).unwrap();
        for w in [perm(&[1, 2, 3]), perm(&[2, 3, 1]), perm(&[3, 2, 1])] {
            for v in [perm(&[1, 2, 3]), perm(&[3, 1, 2])] {
                let phi = double_whittaker(&lam, &v, &w).unwrap();
                let z = z_polynomial(&v, &w, &lam, 4, WeightSystem::KTheoretic).unwrap();
                assert_eq!(phi, z, "v={v} w={w}");
            }
        }
    }

    #[test]
    fn walks_are_path_independent() {
        // two different reduced routes from w₀ to s₁ in S₃
        let seed = whittaker_seed(&Partition::staircase(3), &Permutation::identity(3));
        let direct: Walk = vec![(1, 1), (2, 1)];
        let detour: Walk = vec![(2, 1), (1, 1), (2, 1), (1, -1)];
        let a = apply_walk(&OperatorKind::Tau, &direct, &seed).unwrap();
        let b = apply_walk(&OperatorKind::Tau, &detour, &seed).unwrap();
        assert_eq!(a, b);
        // inverse pair collapses to the identity walk
        let f = pp("x1*x2 - t*x3");
        let idw: Walk = vec![(1, 1), (1, -1)];
        assert_eq!(apply_walk(&OperatorKind::Tau, &idw, &f).unwrap(), f);
    }

    #[test]
    fn walk_between_lengths() {
        let v = perm(&[3, 1, 2]);
        let w = perm(&[2, 1, 3]);
        let walk = walk_between(&v, &w);
        assert_eq!(walk.len(), v.length() + w.length());
        assert!(walk[..v.length()].iter().all(|&(_, e)| e == 1));
        assert!(walk[v.length()..].iter().all(|&(_, e)| e == -1));
    }

    // ----- property tests -----

    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        let mono = (
            -2i64..=2,
            proptest::collection::vec(-2i64..=2, 0..=3),
            proptest::collection::vec(-2i64..=2, 0..=2),
        )
            .prop_map(|(t2, xs, ys)| {
                Mono::t_half_pow(t2)
                    .mul(&Mono::x_weight(&xs))
                    .mul(&Mono::y_weight(&ys))
            });
        proptest::collection::vec((mono, -5i64..=5), 0..=4).prop_map(|ts| {
            let mut p = LaurentPoly::zero();
            for (m, c) in ts {
                p.insert_add(m, BigInt::from(c));
            }
            p
        })
    }

    fn arb_kind() -> impl Strategy<Value = OperatorKind> {
        (0usize..13, 0usize..6).prop_map(|(k, p)| match k {
            0 => OperatorKind::Tau,
            1 => OperatorKind::TauInv,
            2 => OperatorKind::TauBar,
            3 => OperatorKind::TauBarInv,
            4 => OperatorKind::FrakT,
            5 => OperatorKind::FrakTInv,
            6 => OperatorKind::TMc,
            7 => OperatorKind::TMcDual,
            8 => OperatorKind::MPlus,
            9 => OperatorKind::MMinus,
            10 => OperatorKind::MU(Permutation::all(3)[p].clone()),
            11 => OperatorKind::Partial,
            _ => OperatorKind::Isobaric,
        })
    }

    proptest! {
        #[test]
        fn operators_preserve_polynomiality(f in arb_poly(), kind in arb_kind(), i in 1usize..=2) {
            // exact division never fails on polynomial input
            let g = apply(&kind, i, &f).unwrap();
            // and every operator is additive
            let h = apply(&kind, i, &(&f + &f)).unwrap();
            prop_assert_eq!(h, &g + &g);
        }

        #[test]
        fn inverse_round_trip_random(f in arb_poly(), i in 1usize..=2) {
            for kind in [OperatorKind::Tau, OperatorKind::TMc, OperatorKind::MPlus] {
                let g = apply(&kind, i, &f).unwrap();
                prop_assert_eq!(apply_inverse(&kind, i, &g).unwrap(), f.clone());
            }
        }
    }

    #[test]
    fn bad_indices_are_rejected() {
        assert!(matches!(
            apply(&OperatorKind::Tau, 0, &LaurentPoly::one()),
            Err(DemazureError::BadGenerator(0, _))
        ));
        assert!(matches!(
            apply(&OperatorKind::MU(perm(&[2, 1])), 2, &LaurentPoly::one()),
            Err(DemazureError::BadGenerator(2, 2))
        ));
    }
}
