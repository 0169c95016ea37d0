//! Yang–Baxter verification and R-matrix solving.
//!
//! The crossing of two horizontal strands with row parameters x_i and x_j
//! is an R-vertex: four horizontal-type edges (two in on the left, two out
//! on the right), weights in (x_i, x_j, t). Attached to a single column,
//! the crossing can sit on either side of the column's two T-vertices; the
//! Yang–Baxter equation says the two partition functions agree for every
//! choice of the six boundary labels. [`ybe_check`] verifies this
//! exhaustively; [`solve_r`] treats the R-weights as unknowns and solves
//! the resulting linear system over Laurent polynomials, blockwise by
//! color content, with fraction-free (Bareiss) elimination.
//!
//! Boundary naming, with a, b, d, e horizontal labels and c, f color sets:
//!
//! ```text
//!       c                         c
//!   a ─╲ ╱─┬─ d                a ─┬─╲ ╱─ d
//!       ╳  │k          =          │k ╳
//!   b ─╱ ╲─┴─ e                b ─┴─╱ ╲─ e
//!       f                         f
//! ```
//!
//! On the left side the strands cross first, so the strand entering at `b`
//! (parameter x_j) passes the column on top; on the right side each strand
//! meets the column before crossing. Inputs are a, b, c; outputs d, e, f.

use crate::laurent::{LaurentPoly, Mono};
use crate::weights::{weight, EdgeLabelH, EdgeLabelV, VertexConfig, WeightSystem, WeightsError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum YbeError {
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("under-determined: {0}")]
    UnderDetermined(String),
    #[error(transparent)]
    Weights(#[from] WeightsError),
}

/// R-vertex key: (in_top, in_bottom, out_top, out_bottom).
pub type RKey = (EdgeLabelH, EdgeLabelH, EdgeLabelH, EdgeLabelH);

/// Boltzmann weights of the crossing vertex. Entries live in
/// (x_i, x_j, t) = (x1, x2, t); absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMatrix {
    pub colors: u8,
    entries: BTreeMap<RKey, LaurentPoly>,
}

impl RMatrix {
    pub fn new(colors: u8) -> Self {
        RMatrix {
            colors,
            entries: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, key: RKey, w: LaurentPoly) {
        if w.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, w);
        }
    }

    pub fn entry(&self, key: &RKey) -> LaurentPoly {
        self.entries.get(key).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&RKey, &LaurentPoly)> {
        self.entries.iter()
    }

    /// Every entry's inputs and outputs agree as multisets of labels.
    pub fn is_color_conserving(&self) -> bool {
        self.entries.keys().all(|&(a, b, d, e)| {
            let mut ins = [a, b];
            let mut outs = [d, e];
            ins.sort();
            outs.sort();
            ins == outs
        })
    }

    /// Every monomial of every entry has total x-degree one.
    pub fn is_degree_one_homogeneous(&self) -> bool {
        self.entries
            .values()
            .all(|p| p.terms().all(|(m, _)| m.x_exps().iter().sum::<i64>() == 1))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(&(a, b, d, e), w)| {
                serde_json::json!({
                    "in_top": fmt_h(a),
                    "in_bottom": fmt_h(b),
                    "out_top": fmt_h(d),
                    "out_bottom": fmt_h(e),
                    "weight": w.to_text(),
                })
            })
            .collect();
        serde_json::json!({ "colors": self.colors, "entries": rows })
    }
}

fn fmt_h(l: EdgeLabelH) -> String {
    match l {
        EdgeLabelH::Empty => "+".to_string(),
        EdgeLabelH::Color(c) => c.to_string(),
    }
}

fn fmt_v(v: EdgeLabelV) -> String {
    let cs: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", cs.join(","))
}

/// One side's boundary data rendered for counterexample reports.
fn fmt_boundary(a: EdgeLabelH, b: EdgeLabelH, c: EdgeLabelV, d: EdgeLabelH, e: EdgeLabelH, f: EdgeLabelV) -> String {
    format!(
        "a={} b={} c={} d={} e={} f={}",
        fmt_h(a),
        fmt_h(b),
        fmt_v(c),
        fmt_h(d),
        fmt_h(e),
        fmt_v(f)
    )
}

/// T-vertex weights for one strand, keyed by (left, top, right); the bottom
/// label of an admissible configuration is determined, so each key holds at
/// most one (bottom, weight) pair.
type TTable = BTreeMap<(EdgeLabelH, EdgeLabelV, EdgeLabelH), (EdgeLabelV, LaurentPoly)>;

fn t_table(sys: WeightSystem, r: u8, row: usize) -> Result<TTable, WeightsError> {
    let mut out = TTable::new();
    for (cfg, _) in VertexConfig::all_admissible(r) {
        let w = weight(sys, &cfg, row, 1)?;
        if !w.is_zero() {
            out.insert((cfg.left, cfg.top, cfg.right), (cfg.bottom, w));
        }
    }
    Ok(out)
}

fn horizontal_labels(r: u8) -> Vec<EdgeLabelH> {
    std::iter::once(EdgeLabelH::Empty)
        .chain((1..=r).map(EdgeLabelH::Color))
        .collect()
}

/// Partition function of the left configuration (crossing first):
/// Σ_{g,h,k} R[(a,b)→(g,h)] · T_{x_j}(g,c,d,k) · T_{x_i}(h,k,e,f).
fn lhs_value(
    r_in: &BTreeMap<(EdgeLabelH, EdgeLabelH), Vec<(EdgeLabelH, EdgeLabelH, LaurentPoly)>>,
    tj: &TTable,
    ti: &TTable,
    a: EdgeLabelH,
    b: EdgeLabelH,
    c: EdgeLabelV,
    d: EdgeLabelH,
    e: EdgeLabelH,
    f: EdgeLabelV,
) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    if let Some(outs) = r_in.get(&(a, b)) {
        for (g, h, rw) in outs {
            if let Some((k, w_top)) = tj.get(&(*g, c, d)) {
                if let Some((bot, w_bot)) = ti.get(&(*h, *k, e)) {
                    if *bot == f {
                        acc = &acc + &(&(rw * w_top) * w_bot);
                    }
                }
            }
        }
    }
    acc
}

/// Partition function of the right configuration (column first):
/// Σ_{g,h,k} T_{x_i}(a,c,g,k) · T_{x_j}(b,k,h,f) · R[(g,h)→(d,e)].
fn rhs_value(
    r_out: &BTreeMap<(EdgeLabelH, EdgeLabelH), Vec<(EdgeLabelH, EdgeLabelH, LaurentPoly)>>,
    ti: &TTable,
    tj: &TTable,
    labels: &[EdgeLabelH],
    a: EdgeLabelH,
    b: EdgeLabelH,
    c: EdgeLabelV,
    d: EdgeLabelH,
    e: EdgeLabelH,
    f: EdgeLabelV,
) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    let Some(ins) = r_out.get(&(d, e)) else {
        return acc;
    };
    for &g in labels {
        if let Some((k, w_top)) = ti.get(&(a, c, g)) {
            for (gg, h, rw) in ins {
                if *gg != g {
                    continue;
                }
                if let Some((bot, w_bot)) = tj.get(&(b, *k, *h)) {
                    if *bot == f {
                        acc = &acc + &(&(w_top * w_bot) * rw);
                    }
                }
            }
        }
    }
    acc
}

fn index_by_input(
    rm: &RMatrix,
) -> BTreeMap<(EdgeLabelH, EdgeLabelH), Vec<(EdgeLabelH, EdgeLabelH, LaurentPoly)>> {
    let mut out = BTreeMap::new();
    for (&(a, b, d, e), w) in rm.entries() {
        out.entry((a, b))
            .or_insert_with(Vec::new)
            .push((d, e, w.clone()));
    }
    out
}

fn index_by_output(
    rm: &RMatrix,
) -> BTreeMap<(EdgeLabelH, EdgeLabelH), Vec<(EdgeLabelH, EdgeLabelH, LaurentPoly)>> {
    let mut out = BTreeMap::new();
    for (&(a, b, d, e), w) in rm.entries() {
        out.entry((d, e))
            .or_insert_with(Vec::new)
            .push((a, b, w.clone()));
    }
    out
}

/// Outcome of an exhaustive Yang–Baxter check.
#[derive(Debug, Clone)]
pub struct YbeReport {
    pub boundaries_checked: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl YbeReport {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

/// Check the Yang–Baxter equation for weight system `sys` and crossing
/// weights `rm`, over **every** boundary: a, b, d, e range over {⊕, 1..r}
/// and c, f over all color subsets.
pub fn ybe_check(sys: WeightSystem, rm: &RMatrix, r: u8) -> Result<YbeReport, YbeError> {
    let ti = t_table(sys, r, 1)?;
    let tj = t_table(sys, r, 2)?;
    let r_in = index_by_input(rm);
    let r_out = index_by_output(rm);
    let labels = horizontal_labels(r);
    let vsets: Vec<EdgeLabelV> = EdgeLabelV::all(r).collect();
    let mut checked = 0usize;
    let mut failures = 0usize;
    let mut first = None;
    for &a in &labels {
        for &b in &labels {
            for &c in &vsets {
                for &d in &labels {
                    for &e in &labels {
                        for &f in &vsets {
                            checked += 1;
                            let lhs = lhs_value(&r_in, &tj, &ti, a, b, c, d, e, f);
                            let rhs = rhs_value(&r_out, &ti, &tj, &labels, a, b, c, d, e, f);
                            if lhs != rhs {
                                failures += 1;
                                if first.is_none() {
                                    first = Some(format!(
                                        "{}: left={} right={}",
                                        fmt_boundary(a, b, c, d, e, f),
                                        lhs.to_text(),
                                        rhs.to_text()
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(YbeReport {
        boundaries_checked: checked,
        failures,
        first_counterexample: first,
    })
}

/// Both sides of the Yang–Baxter equation for one boundary, exposed for the
/// color-reduction ratio tests.
pub fn ybe_sides(
    sys: WeightSystem,
    rm: &RMatrix,
    r: u8,
    a: EdgeLabelH,
    b: EdgeLabelH,
    c: EdgeLabelV,
    d: EdgeLabelH,
    e: EdgeLabelH,
    f: EdgeLabelV,
) -> Result<(LaurentPoly, LaurentPoly), YbeError> {
    let ti = t_table(sys, r, 1)?;
    let tj = t_table(sys, r, 2)?;
    let r_in = index_by_input(rm);
    let r_out = index_by_output(rm);
    let labels = horizontal_labels(r);
    Ok((
        lhs_value(&r_in, &tj, &ti, a, b, c, d, e, f),
        rhs_value(&r_out, &ti, &tj, &labels, a, b, c, d, e, f),
    ))
}

// ----- linear solving -----

/// Fraction-free Gaussian elimination on the augmented system A·x = rhs.
/// Expects a unique solution with Laurent-polynomial entries; reports
/// rank deficiency as UnderDetermined and inconsistency or non-polynomial
/// solutions as NoSolution.
fn solve_linear(
    mut rows: Vec<(Vec<LaurentPoly>, LaurentPoly)>,
    what: &str,
) -> Result<Vec<LaurentPoly>, YbeError> {
    let cols = rows.first().map(|(c, _)| c.len()).unwrap_or(0);
    rows.retain(|(c, r)| c.iter().any(|p| !p.is_zero()) || !r.is_zero());
    let mut prev = LaurentPoly::one();
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..cols {
        let pr = pivots.len();
        let Some(found) = (pr..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else {
            return Err(YbeError::UnderDetermined(format!(
                "{what}: unknown {col} is not pinned by any equation"
            )));
        };
        rows.swap(pr, found);
        let (head, tail) = rows.split_at_mut(pr + 1);
        let piv_row = &head[pr];
        let piv = piv_row.0[col].clone();
        for row in tail.iter_mut() {
            let factor = row.0[col].clone();
            for j in 0..cols {
                let num = &(&piv * &row.0[j]) - &(&factor * &piv_row.0[j]);
                row.0[j] = num
                    .exact_div(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            let num = &(&piv * &row.1) - &(&factor * &piv_row.1);
            row.1 = num
                .exact_div(&prev)
                .expect("fraction-free elimination divides exactly");
        }
        prev = piv;
        pivots.push(col);
    }
    for (c, r) in rows.iter().skip(pivots.len()) {
        if c.iter().all(|p| p.is_zero()) && !r.is_zero() {
            return Err(YbeError::NoSolution(format!(
                "{what}: inconsistent equation 0 = {}",
                r.to_text()
            )));
        }
    }
    // Back-substitution; every value must divide out exactly.
    let mut xs = vec![LaurentPoly::zero(); cols];
    for (pr, &col) in pivots.iter().enumerate().rev() {
        let mut rhs = rows[pr].1.clone();
        for j in col + 1..cols {
            rhs = &rhs - &(&rows[pr].0[j] * &xs[j]);
        }
        xs[col] = rhs.exact_div(&rows[pr].0[col]).map_err(|_| {
            YbeError::NoSolution(format!(
                "{what}: solution component {col} is not a Laurent polynomial"
            ))
        })?;
    }
    Ok(xs)
}

/// Unknowns are color-conserving crossing entries; they split into blocks
/// by the input label pair, and each Yang–Baxter boundary equation couples
/// at most two blocks (inputs on one side, outputs on the other).
fn block_of(a: EdgeLabelH, b: EdgeLabelH) -> (EdgeLabelH, EdgeLabelH) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn unknowns_for_block(pair: (EdgeLabelH, EdgeLabelH)) -> Vec<RKey> {
    let (p, q) = pair;
    if p == q {
        vec![(p, p, p, p)]
    } else {
        vec![(p, q, p, q), (p, q, q, p), (q, p, p, q), (q, p, q, p)]
    }
}

/// Solve for the crossing weights that make `sys` satisfy the Yang–Baxter
/// equation, over colors {1..r}, r ≤ 3. The support is the color-conserving
/// one (a colored path through the crossing keeps its color); the scale is
/// pinned by setting the all-uncolored entry to x_i − t·x_j, after which
/// the solution is unique. [`ybe_check`] re-verifies the result from
/// scratch, so any convention error here would be caught there.
pub fn solve_r(sys: WeightSystem, r: u8) -> Result<RMatrix, YbeError> {
    if r == 0 || r > 3 {
        return Err(YbeError::NoSolution(format!(
            "solver supports 1 ≤ colors ≤ 3, got {r}"
        )));
    }
    let ti = t_table(sys, r, 1)?;
    let tj = t_table(sys, r, 2)?;
    let labels = horizontal_labels(r);
    let vsets: Vec<EdgeLabelV> = EdgeLabelV::all(r).collect();

    // Assemble every nontrivial boundary equation LHS − RHS = 0 as a linear
    // form over the unknown entries. Global color conservation determines f
    // from the rest of the boundary, so only consistent tuples are scanned.
    type Form = BTreeMap<RKey, LaurentPoly>;
    let mut equations: Vec<Form> = Vec::new();
    let count = |l: EdgeLabelH, g: u8| -> i32 { (l == EdgeLabelH::Color(g)) as i32 };
    for &a in &labels {
        for &b in &labels {
            for &c in &vsets {
                for &d in &labels {
                    'oute: for &e in &labels {
                        let mut f = EdgeLabelV::empty();
                        for g in 1..=r {
                            let need = count(a, g) + count(b, g) + c.contains(g) as i32
                                - count(d, g)
                                - count(e, g);
                            match need {
                                0 => {}
                                1 => f = f.insert(g),
                                _ => continue 'oute,
                            }
                        }
                        let mut form = Form::new();
                        let mut outs = vec![(a, b)];
                        if a != b {
                            outs.push((b, a));
                        }
                        for (g, h) in outs {
                            if let Some((k, w_top)) = tj.get(&(g, c, d)) {
                                if let Some((bot, w_bot)) = ti.get(&(h, *k, e)) {
                                    if *bot == f {
                                        let coeff = w_top * w_bot;
                                        let slot =
                                            form.entry((a, b, g, h)).or_insert_with(LaurentPoly::zero);
                                        *slot = &*slot + &coeff;
                                    }
                                }
                            }
                        }
                        let mut ins = vec![(d, e)];
                        if d != e {
                            ins.push((e, d));
                        }
                        for (g, h) in ins {
                            if let Some((k, w_top)) = ti.get(&(a, c, g)) {
                                if let Some((bot, w_bot)) = tj.get(&(b, *k, h)) {
                                    if *bot == f {
                                        let coeff = w_top * w_bot;
                                        let slot =
                                            form.entry((g, h, d, e)).or_insert_with(LaurentPoly::zero);
                                        *slot = &*slot - &coeff;
                                    }
                                }
                            }
                        }
                        form.retain(|_, v| !v.is_zero());
                        if !form.is_empty() {
                            equations.push(form);
                        }
                    }
                }
            }
        }
    }

    // Pin the scale, then solve block by block in increasing color content;
    // equations usable for a block touch only that block and solved ones.
    let mut solved: BTreeMap<RKey, LaurentPoly> = BTreeMap::new();
    let pin = &LaurentPoly::monomial(Mono::x_pow(1, 1))
        - &LaurentPoly::monomial(Mono::t_pow(1).mul(&Mono::x_pow(2, 1)));
    solved.insert(
        (
            EdgeLabelH::Empty,
            EdgeLabelH::Empty,
            EdgeLabelH::Empty,
            EdgeLabelH::Empty,
        ),
        pin,
    );
    let mut blocks: Vec<(EdgeLabelH, EdgeLabelH)> = Vec::new();
    for (i, &p) in labels.iter().enumerate() {
        for &q in &labels[i..] {
            if !(p == EdgeLabelH::Empty && q == EdgeLabelH::Empty) {
                blocks.push((p, q));
            }
        }
    }
    blocks.sort();
    let mut solved_blocks: Vec<(EdgeLabelH, EdgeLabelH)> =
        vec![(EdgeLabelH::Empty, EdgeLabelH::Empty)];
    for blk in blocks {
        let unknowns = unknowns_for_block(blk);
        let mut rows: Vec<(Vec<LaurentPoly>, LaurentPoly)> = Vec::new();
        for form in &equations {
            let mut ok = true;
            let mut touches = false;
            for key in form.keys() {
                let kb_in = block_of(key.0, key.1);
                if kb_in == blk {
                    touches = true;
                } else if !solved_blocks.contains(&kb_in) {
                    ok = false;
                    break;
                }
            }
            if !ok || !touches {
                continue;
            }
            let mut coeffs = vec![LaurentPoly::zero(); unknowns.len()];
            let mut rhs = LaurentPoly::zero();
            for (key, c) in form {
                if let Some(pos) = unknowns.iter().position(|u| u == key) {
                    coeffs[pos] = &coeffs[pos] + c;
                } else {
                    rhs = &rhs - &(c * &solved[key]);
                }
            }
            rows.push((coeffs, rhs));
        }
        let what = format!("block ({}, {})", fmt_h(blk.0), fmt_h(blk.1));
        let values = solve_linear(rows, &what)?;
        for (key, v) in unknowns.into_iter().zip(values) {
            solved.insert(key, v);
        }
        solved_blocks.push(blk);
    }

    let mut rm = RMatrix::new(r);
    for (key, v) in solved {
        rm.set(key, v);
    }
    Ok(rm)
}

/// Extend a solved crossing to more colors using its order pattern: the
/// entry for a label pair depends only on whether the labels are equal,
/// uncolored, or in increasing/decreasing order. Verified on the base
/// matrix before use; the result is for [`ybe_check`] at ranks the solver
/// does not reach.
pub fn extrapolate(base: &RMatrix, r: u8) -> Result<RMatrix, YbeError> {
    if base.colors < 2 {
        return Err(YbeError::UnderDetermined(
            "need at least two colors to read off the order pattern".into(),
        ));
    }
    // representative lookup: map each key to its pattern class
    let class = |a: EdgeLabelH, b: EdgeLabelH| -> (u8, u8) {
        // encode each label relative to the pair: 0 = ⊕, 1 = smaller color,
        // 2 = larger color, 3 = repeated color
        match (a, b) {
            (EdgeLabelH::Empty, EdgeLabelH::Empty) => (0, 0),
            (EdgeLabelH::Empty, EdgeLabelH::Color(_)) => (0, 1),
            (EdgeLabelH::Color(_), EdgeLabelH::Empty) => (1, 0),
            (EdgeLabelH::Color(x), EdgeLabelH::Color(y)) => {
                if x == y {
                    (3, 3)
                } else if x < y {
                    (1, 2)
                } else {
                    (2, 1)
                }
            }
        }
    };
    let classify_key = |k: &RKey| -> ((u8, u8), (u8, u8)) { (class(k.0, k.1), class(k.2, k.3)) };
    let mut by_class: BTreeMap<((u8, u8), (u8, u8)), LaurentPoly> = BTreeMap::new();
    for (k, w) in base.entries() {
        let c = classify_key(k);
        if let Some(prev) = by_class.get(&c) {
            if prev != w {
                return Err(YbeError::NoSolution(format!(
                    "entries within pattern class {c:?} disagree"
                )));
            }
        } else {
            by_class.insert(c, w.clone());
        }
    }
    let labels = horizontal_labels(r);
    let mut out = RMatrix::new(r);
    for &a in &labels {
        for &b in &labels {
            for (d, e) in [(a, b), (b, a)] {
                let key = (a, b, d, e);
                if let Some(w) = by_class.get(&classify_key(&key)) {
                    out.set(key, w.clone());
                }
            }
        }
    }
    Ok(out)
}
