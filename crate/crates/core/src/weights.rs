//! Boltzmann weights for the colored fermionic vertex models.
//!
//! A vertex is read as `(left, top, right, bottom)`. Horizontal edges carry
//! at most one color, vertical edges carry a *set* of colors (no color may
//! appear twice on an edge). Paths enter a vertex from the left or top and
//! leave to the right or bottom, so `left ∪ top = right ∪ bottom` as
//! multisets; every admissible configuration falls into one of six cases:
//!
//! | case | left | top | right | bottom    | shape                          |
//! |------|------|-----|-------|-----------|--------------------------------|
//! | 1    | ⊕    | Σ   | ⊕     | Σ         | vertical pass-through          |
//! | 2    | c    | Σ   | c     | Σ         | horizontal pass-through        |
//! | 3    | ⊕    | Σ   | c     | Σ ∖ {c}   | c turns down→right             |
//! | 4    | c    | Σ   | ⊕     | Σ ∪ {c}   | c turns right→down             |
//! | 5    | c    | Σ   | d     | Σ+c−d     | c<d swap, smaller enters left  |
//! | 6    | d    | Σ   | c     | Σ+d−c     | c<d swap, larger enters left   |
//!
//! Six weight systems share this case analysis. The K-theoretic table is the
//! reference point; the Whittaker table differs from it by `x ↦ −x` and a
//! factor of `y` on left-colored vertices, and the dual table by inverting
//! `x, y` and a monomial correction. The pipe-dream table is the `t = 0`
//! shadow on single-color edges, the colorblind table forgets colors
//! entirely, and the KZJ table is a different (rational-weight) model kept
//! for cross-checks; each is written out independently below so the stated
//! transformations are testable rather than tautological.

use crate::laurent::{BinomialFraction, LaurentPoly, Mono};
use std::fmt;
use thiserror::Error;

/// Color: 1-based, totally ordered, `1..=r`.
pub type Color = u8;

/// Horizontal edge label: one color or uncolored `⊕`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabelH {
    Empty,
    Color(Color),
}

impl EdgeLabelH {
    pub fn is_colored(&self) -> bool {
        matches!(self, EdgeLabelH::Color(_))
    }
}

/// Vertical edge label: a set of colors (bitmask, bit `c-1` ⇔ color `c`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EdgeLabelV(pub u32);

impl EdgeLabelV {
    pub fn empty() -> Self {
        EdgeLabelV(0)
    }

    pub fn singleton(c: Color) -> Self {
        EdgeLabelV(1 << (c - 1))
    }

    pub fn from_colors(cs: &[Color]) -> Self {
        let mut m = 0u32;
        for &c in cs {
            m |= 1 << (c - 1);
        }
        EdgeLabelV(m)
    }

    pub fn contains(&self, c: Color) -> bool {
        self.0 & (1 << (c - 1)) != 0
    }

    pub fn insert(&self, c: Color) -> Self {
        EdgeLabelV(self.0 | (1 << (c - 1)))
    }

    pub fn remove(&self, c: Color) -> Self {
        EdgeLabelV(self.0 & !(1 << (c - 1)))
    }

    pub fn len(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Colors in the set, ascending.
    pub fn iter(&self) -> impl Iterator<Item = Color> + '_ {
        (1..=32u8).filter(|&c| c <= 32 && self.contains(c))
    }

    /// `|Σ ∩ (c, r]|`: members strictly greater than `c`.
    pub fn count_gt(&self, c: Color) -> u32 {
        (self.0 >> c).count_ones()
    }

    /// `|Σ ∩ [1, c)|`: members strictly less than `c`.
    pub fn count_lt(&self, c: Color) -> u32 {
        (self.0 & ((1 << (c - 1)) - 1)).count_ones()
    }

    /// `|Σ ∩ (c, d)|` for `c < d`: members strictly between.
    pub fn count_between(&self, c: Color, d: Color) -> u32 {
        ((self.0 >> c) & ((1 << (d - 1 - c)) - 1)).count_ones()
    }

    /// All subsets of `{1..r}`.
    pub fn all(r: u8) -> impl Iterator<Item = EdgeLabelV> {
        (0u32..(1 << r)).map(EdgeLabelV)
    }
}

/// A four-edge local configuration, read `(left, top, right, bottom)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexConfig {
    pub left: EdgeLabelH,
    pub top: EdgeLabelV,
    pub right: EdgeLabelH,
    pub bottom: EdgeLabelV,
}

impl VertexConfig {
    pub fn new(left: EdgeLabelH, top: EdgeLabelV, right: EdgeLabelH, bottom: EdgeLabelV) -> Self {
        VertexConfig {
            left,
            top,
            right,
            bottom,
        }
    }

    /// Render as `l:T:r:B`, e.g. `2:{1}:1:{2}`; `+` is the uncolored label.
    pub fn render(&self) -> String {
        fn h(e: EdgeLabelH) -> String {
            match e {
                EdgeLabelH::Empty => "+".into(),
                EdgeLabelH::Color(c) => c.to_string(),
            }
        }
        fn v(s: EdgeLabelV) -> String {
            let inner: Vec<String> = s.iter().map(|c| c.to_string()).collect();
            format!("{{{}}}", inner.join(","))
        }
        format!(
            "{}:{}:{}:{}",
            h(self.left),
            v(self.top),
            h(self.right),
            v(self.bottom)
        )
    }

    /// Parse the `l:T:r:B` syntax produced by [`render`](Self::render).
    pub fn parse(s: &str) -> Result<Self, WeightsError> {
        let bad = || WeightsError::ConfigSyntax(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(bad());
        }
        let h = |p: &str| -> Result<EdgeLabelH, WeightsError> {
            if p == "+" {
                Ok(EdgeLabelH::Empty)
            } else {
                let c: u8 = p.parse().map_err(|_| bad())?;
                if c == 0 || c > 32 {
                    return Err(bad());
                }
                Ok(EdgeLabelH::Color(c))
            }
        };
        let v = |p: &str| -> Result<EdgeLabelV, WeightsError> {
            let inner = p
                .strip_prefix('{')
                .and_then(|q| q.strip_suffix('}'))
                .ok_or_else(bad)?;
            let mut set = EdgeLabelV::empty();
            for tok in inner.split(',').filter(|tok| !tok.is_empty()) {
                let c: u8 = tok.trim().parse().map_err(|_| bad())?;
                if c == 0 || c > 32 || set.contains(c) {
                    return Err(bad());
                }
                set = set.insert(c);
            }
            Ok(set)
        };
        Ok(VertexConfig {
            left: h(parts[0])?,
            top: v(parts[1])?,
            right: h(parts[2])?,
            bottom: v(parts[3])?,
        })
    }

    /// All configurations (admissible or not have to be filtered by
    /// `classify`) over colors `{1..r}`.
    pub fn all(r: u8) -> impl Iterator<Item = VertexConfig> {
        let hs: Vec<EdgeLabelH> = std::iter::once(EdgeLabelH::Empty)
            .chain((1..=r).map(EdgeLabelH::Color))
            .collect();
        let vs: Vec<EdgeLabelV> = EdgeLabelV::all(r).collect();
        let mut out = Vec::new();
        for &l in &hs {
            for &t in &vs {
                for &rr in &hs {
                    for &b in &vs {
                        out.push(VertexConfig::new(l, t, rr, b));
                    }
                }
            }
        }
        out.into_iter()
    }

    /// All admissible configurations over colors `{1..r}`.
    pub fn all_admissible(r: u8) -> impl Iterator<Item = (VertexConfig, CaseData)> {
        VertexConfig::all(r).filter_map(|cfg| classify(&cfg).map(|case| (cfg, case)))
    }
}

impl fmt::Display for VertexConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The classified case of an admissible configuration. `sigma` is always
/// the *top* label; in cases 5 and 6, `c < d` with `c` entering on the left
/// in case 5 and `d` entering on the left in case 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseData {
    Case1 { sigma: EdgeLabelV },
    Case2 { c: Color, sigma: EdgeLabelV },
    Case3 { c: Color, sigma: EdgeLabelV },
    Case4 { c: Color, sigma: EdgeLabelV },
    Case5 { c: Color, d: Color, sigma: EdgeLabelV },
    Case6 { c: Color, d: Color, sigma: EdgeLabelV },
}

impl CaseData {
    pub fn case_number(&self) -> u8 {
        match self {
            CaseData::Case1 { .. } => 1,
            CaseData::Case2 { .. } => 2,
            CaseData::Case3 { .. } => 3,
            CaseData::Case4 { .. } => 4,
            CaseData::Case5 { .. } => 5,
            CaseData::Case6 { .. } => 6,
        }
    }
}

/// Classify a configuration into one of the six cases, or `None` when color
/// conservation fails (colors may not appear from or vanish into nothing).
pub fn classify(cfg: &VertexConfig) -> Option<CaseData> {
    let (t, b) = (cfg.top, cfg.bottom);
    match (cfg.left, cfg.right) {
        (EdgeLabelH::Empty, EdgeLabelH::Empty) => (b == t).then_some(CaseData::Case1 { sigma: t }),
        (EdgeLabelH::Color(c), EdgeLabelH::Color(e)) if c == e => {
            (b == t).then_some(CaseData::Case2 { c, sigma: t })
        }
        (EdgeLabelH::Empty, EdgeLabelH::Color(c)) => {
            (t.contains(c) && b == t.remove(c)).then_some(CaseData::Case3 { c, sigma: t })
        }
        (EdgeLabelH::Color(c), EdgeLabelH::Empty) => {
            (!t.contains(c) && b == t.insert(c)).then_some(CaseData::Case4 { c, sigma: t })
        }
        (EdgeLabelH::Color(cl), EdgeLabelH::Color(cr)) => {
            if !t.contains(cr) || t.contains(cl) || b != t.remove(cr).insert(cl) {
                return None;
            }
            if cl < cr {
                Some(CaseData::Case5 {
                    c: cl,
                    d: cr,
                    sigma: t,
                })
            } else {
                Some(CaseData::Case6 {
                    c: cr,
                    d: cl,
                    sigma: t,
                })
            }
        }
    }
}

/// One of the six weight tables. Formulas never depend on the ambient color
/// count: only on which members of Σ lie above/below/between the horizontal
/// colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSystem {
    /// Iwahori-Whittaker weights.
    Whittaker,
    /// K-theoretic ("modified") weights; the reference table.
    KTheoretic,
    /// Dual weights, used for the companion partition function Z̃.
    DualKTheoretic,
    /// Single-color t=0 weights whose states are reduced pipe dreams.
    PipeDream,
    /// Color-forgetting path weights.
    Colorblind,
    /// The rational-weight model of Knutson-Zinn-Justin (use
    /// [`kzj_weight`]; weights here are fractions, not Laurent polynomials).
    Kzj,
}

impl WeightSystem {
    pub fn all() -> [WeightSystem; 6] {
        [
            WeightSystem::Whittaker,
            WeightSystem::KTheoretic,
            WeightSystem::DualKTheoretic,
            WeightSystem::PipeDream,
            WeightSystem::Colorblind,
            WeightSystem::Kzj,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            WeightSystem::Whittaker => "whittaker",
            WeightSystem::KTheoretic => "ktheoretic",
            WeightSystem::DualKTheoretic => "dual",
            WeightSystem::PipeDream => "pipedream",
            WeightSystem::Colorblind => "colorblind",
            WeightSystem::Kzj => "kzj",
        }
    }

    pub fn parse(s: &str) -> Option<WeightSystem> {
        WeightSystem::all().into_iter().find(|w| w.name() == s)
    }
}

#[derive(Debug, Error)]
pub enum WeightsError {
    #[error("inadmissible configuration {0}")]
    Inadmissible(String),
    #[error("configuration {0} is not single-labelled (required by {1})")]
    NotSingleLabelled(String, &'static str),
    #[error("KZJ weights are fractions; use kzj_weight")]
    FractionValued,
    #[error("bad configuration syntax {0:?} (expected l:T:r:B, e.g. 2:{{1}}:1:{{2}})")]
    ConfigSyntax(String),
}

fn sign_pow(k: u32) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(−t)^k` as a polynomial.
fn neg_t_pow(k: u32) -> LaurentPoly {
    LaurentPoly::term(Mono::t_pow(k as i64), sign_pow(k))
}

/// `t^k` as a polynomial.
fn t_pow(k: u32) -> LaurentPoly {
    LaurentPoly::term(Mono::t_pow(k as i64), 1)
}

/// The weight of an admissible configuration at row variable `x_i`, column
/// variable `y_j`. Errors on inadmissible input, on the fraction-valued KZJ
/// system, and on multi-color edges for the single-label systems. PipeDream
/// weights may be zero (configurations killed at `t = 0`).
pub fn weight(
    sys: WeightSystem,
    cfg: &VertexConfig,
    i: usize,
    j: usize,
) -> Result<LaurentPoly, WeightsError> {
    let case = classify(cfg).ok_or_else(|| WeightsError::Inadmissible(cfg.render()))?;
    let xy = Mono::x_pow(i, 1).mul(&Mono::y_pow(j, -1));
    match sys {
        WeightSystem::KTheoretic => Ok(ktheoretic(&case, &xy)),
        WeightSystem::Whittaker => Ok(whittaker(&case, i, j)),
        WeightSystem::DualKTheoretic => Ok(dual(&case, i, j)),
        WeightSystem::PipeDream => {
            if cfg.top.len() > 1 || cfg.bottom.len() > 1 {
                return Err(WeightsError::NotSingleLabelled(cfg.render(), "pipedream"));
            }
            Ok(pipedream(&case, &xy))
        }
        WeightSystem::Colorblind => {
            if cfg.top.len() > 1 || cfg.bottom.len() > 1 {
                return Err(WeightsError::NotSingleLabelled(cfg.render(), "colorblind"));
            }
            Ok(colorblind(&case, i, j))
        }
        WeightSystem::Kzj => Err(WeightsError::FractionValued),
    }
}

/// K-theoretic table.
fn ktheoretic(case: &CaseData, xy: &Mono) -> LaurentPoly {
    let xy_poly = LaurentPoly::monomial(xy.clone());
    match *case {
        // (−t)^{|Σ|}
        CaseData::Case1 { sigma } => neg_t_pow(sigma.len()),
        // t^{|Σ∩(c,r]|} (t^{[c∈Σ]} − x/y)
        CaseData::Case2 { c, sigma } => {
            let ind = if sigma.contains(c) { 1 } else { 0 };
            &t_pow(sigma.count_gt(c)) * &(&t_pow(ind) - &xy_poly)
        }
        // (−t)^{|Σ∩[1,c)|} t^{|Σ∩(c,r]|}
        CaseData::Case3 { c, sigma } => {
            &neg_t_pow(sigma.count_lt(c)) * &t_pow(sigma.count_gt(c))
        }
        // (t−1) · x/y · (−t)^{|Σ∩(c,r]|}
        CaseData::Case4 { c, sigma } => {
            let t_minus_1 = &LaurentPoly::t() - &LaurentPoly::one();
            &(&t_minus_1 * &xy_poly) * &neg_t_pow(sigma.count_gt(c))
        }
        // (t−1) · x/y · (−t)^{|Σ∩(c,d)|} t^{|Σ∩(d,r]|}
        CaseData::Case5 { c, d, sigma } => {
            let t_minus_1 = &LaurentPoly::t() - &LaurentPoly::one();
            &(&(&t_minus_1 * &xy_poly) * &neg_t_pow(sigma.count_between(c, d)))
                * &t_pow(sigma.count_gt(d))
        }
        // (t−1) · (−1)^{|Σ∩(c,d)|} t^{|Σ∩(d,r]|}
        CaseData::Case6 { c, d, sigma } => {
            let t_minus_1 = &LaurentPoly::t() - &LaurentPoly::one();
            let s = sign_pow(sigma.count_between(c, d));
            &t_minus_1.scale(&s.into()) * &t_pow(sigma.count_gt(d))
        }
    }
}

/// Whittaker table, written out per case (the relation to the K-theoretic
/// table — `x ↦ −x`, times `y` on left-colored vertices — is a test, not
/// the definition used here).
fn whittaker(case: &CaseData, i: usize, j: usize) -> LaurentPoly {
    let x = LaurentPoly::x(i);
    let y = LaurentPoly::y(j);
    match *case {
        // (−t)^{|Σ|}
        CaseData::Case1 { sigma } => neg_t_pow(sigma.len()),
        // t^{|Σ∩(c,r]|} (t^{[c∈Σ]} y + x)
        CaseData::Case2 { c, sigma } => {
            let ind = if sigma.contains(c) { 1 } else { 0 };
            &t_pow(sigma.count_gt(c)) * &(&(&t_pow(ind) * &y) + &x)
        }
        // (−t)^{|Σ∩[1,c)|} t^{|Σ∩(c,r]|}
        CaseData::Case3 { c, sigma } => {
            &neg_t_pow(sigma.count_lt(c)) * &t_pow(sigma.count_gt(c))
        }
        // (1−t) · x · (−t)^{|Σ∩(c,r]|}
        CaseData::Case4 { c, sigma } => {
            let one_minus_t = &LaurentPoly::one() - &LaurentPoly::t();
            &(&one_minus_t * &x) * &neg_t_pow(sigma.count_gt(c))
        }
        // (1−t) · x · (−t)^{|Σ∩(c,d)|} t^{|Σ∩(d,r]|}
        CaseData::Case5 { c, d, sigma } => {
            let one_minus_t = &LaurentPoly::one() - &LaurentPoly::t();
            &(&(&one_minus_t * &x) * &neg_t_pow(sigma.count_between(c, d)))
                * &t_pow(sigma.count_gt(d))
        }
        // (t−1) · y · (−1)^{|Σ∩(c,d)|} t^{|Σ∩(d,r]|}
        CaseData::Case6 { c, d, sigma } => {
            let t_minus_1 = &LaurentPoly::t() - &LaurentPoly::one();
            let s = sign_pow(sigma.count_between(c, d));
            &(&t_minus_1 * &y).scale(&s.into()) * &t_pow(sigma.count_gt(d))
        }
    }
}

/// Dual table, written out per case; equals the K-theoretic table at
/// `(x⁻¹, y⁻¹)` times `x^{#bottom} y^{−#left}` (a test below).
fn dual(case: &CaseData, i: usize, j: usize) -> LaurentPoly {
    let xp = |e: i64| LaurentPoly::monomial(Mono::x_pow(i, e));
    let yinv = LaurentPoly::monomial(Mono::y_pow(j, -1));
    match *case {
        // (−t x)^{|Σ|}
        CaseData::Case1 { sigma } => &neg_t_pow(sigma.len()) * &xp(sigma.len() as i64),
        // t^{|Σ∩(c,r]|} x^{|Σ|} (−x⁻¹ + t^{[c∈Σ]} y⁻¹)
        CaseData::Case2 { c, sigma } => {
            let ind = if sigma.contains(c) { 1 } else { 0 };
            let paren = &(&t_pow(ind) * &yinv) - &xp(-1);
            &(&t_pow(sigma.count_gt(c)) * &xp(sigma.len() as i64)) * &paren
        }
        // (−t)^{|Σ∩[1,c)|} t^{|Σ∩(c,r]|} x^{|Σ|−1}
        CaseData::Case3 { c, sigma } => {
            &(&neg_t_pow(sigma.count_lt(c)) * &t_pow(sigma.count_gt(c)))
                * &xp(sigma.len() as i64 - 1)
        }
        // (t−1) x⁻¹ (−t)^{|Σ∩(c,r]|} x^{|Σ|+1}
        CaseData::Case4 { c, sigma } => {
            let t_minus_1 = &LaurentPoly::t() - &LaurentPoly::one();
            &(&t_minus_1 * &neg_t_pow(sigma.count_gt(c))) * &xp(sigma.len() as i64)
        }
        // (t−1) x⁻¹ (−t)^{|Σ∩(c,d)|} t^{|Σ∩(d,r]|} x^{|Σ|}
        CaseData::Case5 { c, d, sigma } => {
            let t_minus_1 = &LaurentPoly::t() - &LaurentPoly::one();
            &(&(&t_minus_1 * &neg_t_pow(sigma.count_between(c, d)))
                * &t_pow(sigma.count_gt(d)))
                * &xp(sigma.len() as i64 - 1)
        }
        // (t−1) y⁻¹ (−1)^{|Σ∩(c,d)|} t^{|Σ∩(d,r]|} x^{|Σ|}
        CaseData::Case6 { c, d, sigma } => {
            let t_minus_1 = &LaurentPoly::t() - &LaurentPoly::one();
            let s = sign_pow(sigma.count_between(c, d));
            &(&(&t_minus_1 * &yinv).scale(&s.into()) * &t_pow(sigma.count_gt(d)))
                * &xp(sigma.len() as i64)
        }
    }
}

/// Pipe-dream table (single-color edges; zero where `t = 0` kills the
/// configuration). `δ_{c<d}` counts an empty top label as smaller than any
/// color.
fn pipedream(case: &CaseData, xy: &Mono) -> LaurentPoly {
    let xy_poly = LaurentPoly::monomial(xy.clone());
    match *case {
        CaseData::Case1 { sigma } => {
            if sigma.is_empty() {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            }
        }
        CaseData::Case2 { c: d, sigma } => {
            // horizontal color d crossing vertical content sigma (∅ or {c}).
            match sigma.iter().next() {
                None => &LaurentPoly::one() - &xy_poly,
                Some(c) if c < d => &LaurentPoly::one() - &xy_poly,
                Some(c) if c == d => -&xy_poly,
                Some(_) => LaurentPoly::zero(),
            }
        }
        CaseData::Case3 { .. } => LaurentPoly::one(),
        CaseData::Case4 { .. } => -&xy_poly,
        CaseData::Case5 { .. } => -&xy_poly,
        CaseData::Case6 { .. } => LaurentPoly::constant(-1),
    }
}

/// Colorblind table: paths with colors forgotten, so only the case shape
/// matters. Only admissible for one color (`r = 1`).
fn colorblind(case: &CaseData, i: usize, j: usize) -> LaurentPoly {
    let x = LaurentPoly::x(i);
    let y = LaurentPoly::y(j);
    let t = LaurentPoly::t();
    match *case {
        CaseData::Case1 { sigma } => {
            if sigma.is_empty() {
                LaurentPoly::one()
            } else {
                -&t
            }
        }
        CaseData::Case2 { sigma, .. } => {
            if sigma.is_empty() {
                &x + &y
            } else {
                &x + &(&t * &y)
            }
        }
        CaseData::Case3 { .. } => LaurentPoly::one(),
        CaseData::Case4 { .. } => &x * &(&LaurentPoly::one() - &t),
        // one path in, one out on each axis cannot swap distinct colors
        // when there is a single color; cases 5/6 are unreachable at r = 1.
        CaseData::Case5 { .. } | CaseData::Case6 { .. } => unreachable!("colorblind has one color"),
    }
}

/// Where the uncolored label `+` sits in the KZJ color order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KzjPlusOrder {
    /// `+` below every color.
    Smallest,
    /// `+` above every color.
    Largest,
}

/// KZJ single-label weight at `(x_i, y_j)`. The parameter `q` is carried as
/// `t^{1/2}`, so the comparison convention `t = q²` holds identically.
/// Returns zero for label patterns outside the table. Requires single
/// labels on all four edges.
pub fn kzj_weight(
    cfg: &VertexConfig,
    plus: KzjPlusOrder,
    i: usize,
    j: usize,
) -> Result<BinomialFraction, WeightsError> {
    if cfg.top.len() > 1 || cfg.bottom.len() > 1 {
        return Err(WeightsError::NotSingleLabelled(cfg.render(), "kzj"));
    }
    // Compare labels in the chosen order; None is the `+` label.
    let key = |e: Option<Color>| -> i32 {
        match (e, plus) {
            (None, KzjPlusOrder::Smallest) => 0,
            (None, KzjPlusOrder::Largest) => i32::MAX,
            (Some(c), _) => c as i32,
        }
    };
    let l = match cfg.left {
        EdgeLabelH::Empty => None,
        EdgeLabelH::Color(c) => Some(c),
    };
    let r = match cfg.right {
        EdgeLabelH::Empty => None,
        EdgeLabelH::Color(c) => Some(c),
    };
    let t = cfg.top.iter().next();
    let b = cfg.bottom.iter().next();

    let q = LaurentPoly::term(Mono::t_half_pow(1), 1);
    let q2 = LaurentPoly::t();
    let yx = LaurentPoly::monomial(Mono::y_pow(j, 1).mul(&Mono::x_pow(i, -1)));
    // all rational entries share the denominator 1 − q² y/x
    let den = Mono::t_pow(1).mul(&Mono::y_pow(j, 1)).mul(&Mono::x_pow(i, -1));
    let fraction = |num: LaurentPoly| {
        let mut f = BinomialFraction::from_poly(num);
        f.divide_by_binomial(&den, 1)
            .expect("1 - q^2 y/x is a valid binomial");
        f
    };

    if l == t && r == b && l == r {
        // (a,a,a,a)
        return Ok(BinomialFraction::one());
    }
    if l != t && l == r && t == b {
        // pass-through of two distinct labels: q(1 − y/x)/(1 − q² y/x)
        return Ok(fraction(&q * &(&LaurentPoly::one() - &yx)));
    }
    if l != t && r == t && b == l {
        // swap
        return Ok(if key(l) > key(t) {
            // (d,c,c,d), c<d: (1 − q²)/(1 − q² y/x)
            fraction(&LaurentPoly::one() - &q2)
        } else {
            // (c,d,d,c), c<d: (1 − q²)(y/x)/(1 − q² y/x)
            fraction(&(&LaurentPoly::one() - &q2) * &yx)
        });
    }
    Ok(BinomialFraction::zero())
}

/// One transformation identity relating two weight tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformRelation {
    /// Whittaker(cfg) = KTheoretic(cfg)|_{x↦−x} · y^{[left colored]}.
    WhitVsKTheory,
    /// Dual(cfg) = KTheoretic(cfg)|_{x↦x⁻¹,y↦y⁻¹} · x^{#bottom} y^{−#left}.
    DualVsKTheory,
    /// PipeDream(cfg) = KTheoretic(cfg)|_{t=0} on single-color configs.
    PipedreamVsKTheoryT0,
    /// Colorblind weight = Σ over colored resolutions of the Whittaker
    /// weight, for any fixed admissible inputs.
    PropertyA,
    /// For adjacent `c<d` in Σ, the two Case-3 weights sum to zero.
    PropertyB,
}

impl TransformRelation {
    pub fn name(&self) -> &'static str {
        match self {
            TransformRelation::WhitVsKTheory => "whit_vs_ktheory",
            TransformRelation::DualVsKTheory => "dual_vs_ktheory",
            TransformRelation::PipedreamVsKTheoryT0 => "pipedream_vs_ktheory_t0",
            TransformRelation::PropertyA => "property_A",
            TransformRelation::PropertyB => "property_B",
        }
    }

    pub fn all() -> [TransformRelation; 5] {
        [
            TransformRelation::WhitVsKTheory,
            TransformRelation::DualVsKTheory,
            TransformRelation::PipedreamVsKTheoryT0,
            TransformRelation::PropertyA,
            TransformRelation::PropertyB,
        ]
    }

    pub fn parse(s: &str) -> Option<TransformRelation> {
        TransformRelation::all().into_iter().find(|r| r.name() == s)
    }
}

/// Verify a transformation identity for every admissible configuration over
/// colors `{1..r}`. Returns the number of configurations checked, or the
/// first counterexample rendered as a string.
pub fn transform_check(relation: TransformRelation, r: u8) -> Result<usize, String> {
    let (i, j) = (1, 1);
    let mut checked = 0usize;
    match relation {
        TransformRelation::WhitVsKTheory => {
            for (cfg, _) in VertexConfig::all_admissible(r) {
                let kt = weight(WeightSystem::KTheoretic, &cfg, i, j).unwrap();
                let wh = weight(WeightSystem::Whittaker, &cfg, i, j).unwrap();
                let mut expect = kt.negate_x();
                if cfg.left.is_colored() {
                    expect = expect.mul_mono(&Mono::y_pow(j, 1));
                }
                if wh != expect {
                    return Err(format!("whit_vs_ktheory fails at {}", cfg.render()));
                }
                checked += 1;
            }
        }
        TransformRelation::DualVsKTheory => {
            for (cfg, _) in VertexConfig::all_admissible(r) {
                let kt = weight(WeightSystem::KTheoretic, &cfg, i, j).unwrap();
                let du = weight(WeightSystem::DualKTheoretic, &cfg, i, j).unwrap();
                let corr = Mono::x_pow(i, cfg.bottom.len() as i64)
                    .mul(&Mono::y_pow(j, -(cfg.left.is_colored() as i64)));
                let expect = kt.invert_xy().mul_mono(&corr);
                if du != expect {
                    return Err(format!("dual_vs_ktheory fails at {}", cfg.render()));
                }
                checked += 1;
            }
        }
        TransformRelation::PipedreamVsKTheoryT0 => {
            for (cfg, _) in VertexConfig::all_admissible(r) {
                if cfg.top.len() > 1 || cfg.bottom.len() > 1 {
                    continue;
                }
                let kt = weight(WeightSystem::KTheoretic, &cfg, i, j).unwrap();
                let pd = weight(WeightSystem::PipeDream, &cfg, i, j).unwrap();
                let expect = kt
                    .set_t_zero()
                    .map_err(|e| format!("t=0 specialization failed: {e}"))?;
                if pd != expect {
                    return Err(format!("pipedream_vs_ktheory_t0 fails at {}", cfg.render()));
                }
                checked += 1;
            }
        }
        TransformRelation::PropertyA => {
            // For each colorblind row and each colored refinement of its
            // inputs, the sum over colored outputs with the row's output
            // multiplicities matches the colorblind weight.
            for (cb_cfg, _) in VertexConfig::all_admissible(1) {
                let cb = weight(WeightSystem::Colorblind, &cb_cfg, i, j).unwrap();
                let lefts: Vec<EdgeLabelH> = if cb_cfg.left.is_colored() {
                    (1..=r).map(EdgeLabelH::Color).collect()
                } else {
                    vec![EdgeLabelH::Empty]
                };
                let tops: Vec<EdgeLabelV> = EdgeLabelV::all(r)
                    .filter(|s| s.len() == cb_cfg.top.len())
                    .collect();
                for &a in &lefts {
                    for &b in &tops {
                        let mut sum = LaurentPoly::zero();
                        for cc in std::iter::once(EdgeLabelH::Empty)
                            .chain((1..=r).map(EdgeLabelH::Color))
                        {
                            if cc.is_colored() != cb_cfg.right.is_colored() {
                                continue;
                            }
                            for dd in EdgeLabelV::all(r) {
                                if dd.len() != cb_cfg.bottom.len() {
                                    continue;
                                }
                                let cand = VertexConfig::new(a, b, cc, dd);
                                if classify(&cand).is_some() {
                                    sum = &sum
                                        + &weight(WeightSystem::Whittaker, &cand, i, j).unwrap();
                                }
                            }
                        }
                        if sum != cb {
                            return Err(format!(
                                "property_A fails at colorblind {} refined by left={:?} top={}",
                                cb_cfg.render(),
                                a,
                                EdgeLabelV::render_set(b),
                            ));
                        }
                        checked += 1;
                    }
                }
            }
        }
        TransformRelation::PropertyB => {
            for sigma in EdgeLabelV::all(r) {
                let members: Vec<Color> = sigma.iter().collect();
                for pair in members.windows(2) {
                    let (c, d) = (pair[0], pair[1]);
                    let w_c = weight(
                        WeightSystem::KTheoretic,
                        &VertexConfig::new(
                            EdgeLabelH::Empty,
                            sigma,
                            EdgeLabelH::Color(c),
                            sigma.remove(c),
                        ),
                        i,
                        j,
                    )
                    .unwrap();
                    let w_d = weight(
                        WeightSystem::KTheoretic,
                        &VertexConfig::new(
                            EdgeLabelH::Empty,
                            sigma,
                            EdgeLabelH::Color(d),
                            sigma.remove(d),
                        ),
                        i,
                        j,
                    )
                    .unwrap();
                    if !(&w_c + &w_d).is_zero() {
                        return Err(format!(
                            "property_B fails at Σ={} pair ({c},{d})",
                            EdgeLabelV::render_set(sigma)
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

impl EdgeLabelV {
    fn render_set(s: EdgeLabelV) -> String {
        let inner: Vec<String> = s.iter().map(|c| c.to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

/// Dump a weight table as JSON for audit.
pub fn weight_table_json(sys: WeightSystem, r: u8) -> serde_json::Value {
    let mut rows = Vec::new();
    for (cfg, case) in VertexConfig::all_admissible(r) {
        let entry = match sys {
            WeightSystem::Kzj => {
                if cfg.top.len() > 1 || cfg.bottom.len() > 1 {
                    continue;
                }
                kzj_weight(&cfg, KzjPlusOrder::Smallest, 1, 1)
                    .map(|f| f.to_text())
                    .unwrap_or_else(|e| e.to_string())
            }
            _ => match weight(sys, &cfg, 1, 1) {
                Ok(p) => p.to_text(),
                Err(_) => continue,
            },
        };
        rows.push(serde_json::json!({
            "config": cfg.render(),
            "case": case.case_number(),
            "weight": entry,
        }));
    }
    serde_json::json!({ "system": sys.name(), "colors": r, "entries": rows })
}
