//! Square lattice grids: boundary data, admissible-state enumeration, and
//! partition functions.
//!
//! The grid has `n` rows (top to bottom, row variable `x_i`) and `cols`
//! columns numbered `1..=cols` from **right to left** (column variable
//! `y_j`). Horizontal edges carry one color or `⊕`; vertical edges carry a
//! set of colors. Paths enter on the top boundary, travel down and to the
//! right, and exit on the right boundary; the left and bottom boundaries are
//! uncolored.

use crate::laurent::{BinomialFraction, LaurentError, LaurentPoly, Mono};
use crate::weights::{
    kzj_weight, weight, EdgeLabelH, EdgeLabelV, KzjPlusOrder, VertexConfig, WeightSystem,
    WeightsError,
};
use crate::weyl::{Partition, Permutation, WeylError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("bad boundary shape: {0}")]
    Shape(String),
    #[error("fraction-valued weights; use kzj_partition_function")]
    FractionValued,
    #[error("malformed state text: {0}")]
    StateSyntax(String),
    #[error(transparent)]
    Weights(#[from] WeightsError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// Edge decorations on the boundary of an `n × cols` grid: a color set atop
/// each column and one horizontal label on the right end of each row. The
/// left and bottom boundaries are always uncolored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryData {
    n: usize,
    cols: usize,
    top: Vec<EdgeLabelV>,
    right: Vec<EdgeLabelH>,
}

impl BoundaryData {
    pub fn new(
        n: usize,
        cols: usize,
        top: Vec<EdgeLabelV>,
        right: Vec<EdgeLabelH>,
    ) -> Result<Self, LatticeError> {
        if n == 0 || cols == 0 {
            return Err(LatticeError::Shape("grid must be nonempty".into()));
        }
        if top.len() != cols || right.len() != n {
            return Err(LatticeError::Shape(format!(
                "expected {} top sets and {} right labels, got {} and {}",
                cols,
                n,
                top.len(),
                right.len()
            )));
        }
        Ok(BoundaryData { n, cols, top, right })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Color set on the top edge of column `j` (columns count from the right).
    pub fn top(&self, j: usize) -> EdgeLabelV {
        self.top[j - 1]
    }

    /// Label on the right edge of row `i` (rows count from the top).
    pub fn right(&self, i: usize) -> EdgeLabelH {
        self.right[i - 1]
    }
}

/// The boundary `B(σ, w, λ)` on an `n × cols` grid: the top edge of column
/// `λ_i` carries color `σ(n+1−i)` (repeated parts stack their colors into
/// one set), and the right edge of row `i` carries color `w(i)`.
pub fn boundary(
    sigma: &Permutation,
    w: &Permutation,
    lambda: &Partition,
    cols: usize,
) -> Result<BoundaryData, LatticeError> {
    let n = sigma.n();
    if w.n() != n || lambda.n() != n {
        return Err(LatticeError::Shape(format!(
            "rank mismatch: σ has rank {}, w rank {}, λ has {} parts",
            n,
            w.n(),
            lambda.n()
        )));
    }
    if lambda.first() > cols {
        return Err(LatticeError::Shape(format!(
            "largest part {} exceeds {} columns",
            lambda.first(),
            cols
        )));
    }
    if n > u8::MAX as usize {
        return Err(LatticeError::Shape(format!("rank {n} too large")));
    }
    let mut top = vec![EdgeLabelV::empty(); cols];
    for (i, &part) in lambda.parts().iter().enumerate() {
        let color = sigma.apply(n - i) as u8;
        top[part - 1] = top[part - 1].insert(color);
    }
    let right = (1..=n).map(|i| EdgeLabelH::Color(w.apply(i) as u8)).collect();
    BoundaryData::new(n, cols, top, right)
}

/// Boundary for the staircase shape `(n, n−1, …, 1)` on an `n × n` grid.
pub fn square_boundary(sigma: &Permutation, w: &Permutation) -> Result<BoundaryData, LatticeError> {
    let n = sigma.n();
    boundary(sigma, w, &Partition::staircase(n), n)
}

/// Boundary for the one-color model: one path atop each column `λ_i`
/// (`λ` strict), every row exiting with the single color `1`.
pub fn colorblind_boundary(lambda: &Partition, cols: usize) -> Result<BoundaryData, LatticeError> {
    if !lambda.is_strict() {
        return Err(LatticeError::Shape(
            "one-color boundaries need strictly decreasing parts".into(),
        ));
    }
    let n = lambda.n();
    if lambda.first() > cols {
        return Err(LatticeError::Shape(format!(
            "largest part {} exceeds {} columns",
            lambda.first(),
            cols
        )));
    }
    let mut top = vec![EdgeLabelV::empty(); cols];
    for &part in lambda.parts() {
        top[part - 1] = EdgeLabelV::singleton(1);
    }
    let right = vec![EdgeLabelH::Color(1); n];
    BoundaryData::new(n, cols, top, right)
}

/// One admissible state: every edge label of the grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeState {
    n: usize,
    cols: usize,
    /// `h[i-1][j]` is the horizontal edge to the left of vertex `(i, j)`,
    /// for `j ∈ 0..=cols`; `j = cols` is the left boundary, `j = 0` the
    /// right boundary.
    h: Vec<Vec<EdgeLabelH>>,
    /// `v[i-1][j-1]` is the vertical edge above vertex `(i, j)`, for
    /// `i ∈ 1..=n+1`; `i = 1` is the top boundary, `i = n+1` the bottom.
    v: Vec<Vec<EdgeLabelV>>,
}

impl LatticeState {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn h_edge(&self, i: usize, j: usize) -> EdgeLabelH {
        self.h[i - 1][j]
    }

    pub fn v_edge(&self, i: usize, j: usize) -> EdgeLabelV {
        self.v[i - 1][j - 1]
    }

    /// The four edge labels around vertex `(i, j)`, read (left, top, right,
    /// bottom).
    pub fn config_at(&self, i: usize, j: usize) -> VertexConfig {
        VertexConfig::new(
            self.h[i - 1][j],
            self.v[i - 1][j - 1],
            self.h[i - 1][j - 1],
            self.v[i][j - 1],
        )
    }

    /// Number of colored horizontal edges crossing into column `j` from the
    /// left. Equals the number of paths that entered strictly left of
    /// column `j`.
    pub fn colored_entering(&self, j: usize) -> usize {
        (1..=self.n)
            .filter(|&i| self.h[i - 1][j].is_colored())
            .count()
    }

    /// Product of the vertex weights of this state.
    pub fn weight_product(&self, sys: WeightSystem) -> Result<LaurentPoly, WeightsError> {
        let mut p = LaurentPoly::one();
        for i in 1..=self.n {
            for j in 1..=self.cols {
                p = &p * &weight(sys, &self.config_at(i, j), i, j)?;
            }
        }
        Ok(p)
    }

    /// Weight product with every factor specialized at `x_i ↦ y_{u(i)}`
    /// before multiplying.
    pub fn weight_product_restricted(
        &self,
        sys: WeightSystem,
        u: &Permutation,
    ) -> Result<LaurentPoly, WeightsError> {
        let mut p = LaurentPoly::one();
        for i in 1..=self.n {
            for j in 1..=self.cols {
                p = &p * &weight(sys, &self.config_at(i, j), i, j)?.restrict(u);
            }
        }
        Ok(p)
    }

    /// Product of the single-label rational weights of this state.
    pub fn kzj_weight_product(
        &self,
        plus: KzjPlusOrder,
    ) -> Result<BinomialFraction, WeightsError> {
        let mut p = BinomialFraction::one();
        for i in 1..=self.n {
            for j in 1..=self.cols {
                p = p.mul(&kzj_weight(&self.config_at(i, j), plus, i, j)?);
            }
        }
        Ok(p)
    }

    /// Per-vertex weights, row by row, keyed by `(i, j)`.
    pub fn vertex_weights(
        &self,
        sys: WeightSystem,
    ) -> Result<Vec<((usize, usize), LaurentPoly)>, WeightsError> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in (1..=self.cols).rev() {
                out.push(((i, j), weight(sys, &self.config_at(i, j), i, j)?));
            }
        }
        Ok(out)
    }

    /// ASCII rendering: a header line, then alternating vertical-label and
    /// row lines. Vertices print as `o`, uncolored horizontal edges as `.`,
    /// colored ones as the color number; vertical labels print as `{...}`.
    /// Lossless: `parse` inverts it.
    pub fn render(&self) -> String {
        let width = 2 * self.cols + 1;
        let mut grid: Vec<Vec<String>> = Vec::new();
        for i in 0..=self.n {
            // vertical labels sit over the odd text columns
            let mut line = vec![String::new(); width];
            for k in 0..self.cols {
                line[2 * k + 1] = render_vset(self.v[i][self.cols - 1 - k]);
            }
            grid.push(line);
            if i < self.n {
                let mut line = vec![String::new(); width];
                for k in 0..=self.cols {
                    line[2 * k] = render_hlabel(self.h[i][self.cols - k]);
                }
                for k in 0..self.cols {
                    line[2 * k + 1] = "o".to_string();
                }
                grid.push(line);
            }
        }
        let mut col_width = vec![0usize; width];
        for line in &grid {
            for (k, tok) in line.iter().enumerate() {
                col_width[k] = col_width[k].max(tok.len());
            }
        }
        let mut out = format!("lattice n={} cols={}\n", self.n, self.cols);
        for line in &grid {
            let row = line
                .iter()
                .enumerate()
                .map(|(k, tok)| format!("{:>w$}", tok, w = col_width[k]))
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(row.trim_end());
            out.push('\n');
        }
        out
    }

    /// Parse the output of [`LatticeState::render`].
    pub fn parse(text: &str) -> Result<LatticeState, LatticeError> {
        let bad = |msg: &str| LatticeError::StateSyntax(msg.to_string());
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("empty input"))?;
        let mut n = None;
        let mut cols = None;
        for tok in header.split_whitespace() {
            if let Some(v) = tok.strip_prefix("n=") {
                n = v.parse::<usize>().ok();
            } else if let Some(v) = tok.strip_prefix("cols=") {
                cols = v.parse::<usize>().ok();
            }
        }
        let (n, cols) = match (n, cols) {
            (Some(n), Some(c)) if n > 0 && c > 0 => (n, c),
            _ => return Err(bad("header must read `lattice n=<n> cols=<cols>`")),
        };
        let mut h = vec![vec![EdgeLabelH::Empty; cols + 1]; n];
        let mut v = vec![vec![EdgeLabelV::empty(); cols]; n + 1];
        for i in 0..=n {
            let line = lines.next().ok_or_else(|| bad("missing vertical line"))?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != cols {
                return Err(bad(&format!(
                    "vertical line needs {} labels, got {}",
                    cols,
                    toks.len()
                )));
            }
            for (k, tok) in toks.iter().enumerate() {
                v[i][cols - 1 - k] = parse_vset(tok).ok_or_else(|| bad("bad color set"))?;
            }
            if i < n {
                let line = lines.next().ok_or_else(|| bad("missing row line"))?;
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 2 * cols + 1 {
                    return Err(bad(&format!(
                        "row line needs {} tokens, got {}",
                        2 * cols + 1,
                        toks.len()
                    )));
                }
                for (m, tok) in toks.iter().enumerate() {
                    if m % 2 == 1 {
                        if *tok != "o" {
                            return Err(bad("expected vertex marker `o`"));
                        }
                    } else {
                        h[i][cols - m / 2] =
                            parse_hlabel(tok).ok_or_else(|| bad("bad horizontal label"))?;
                    }
                }
            }
        }
        if lines.next().is_some() {
            return Err(bad("trailing content"));
        }
        Ok(LatticeState { n, cols, h, v })
    }

    /// The boundary this state decorates.
    pub fn boundary(&self) -> BoundaryData {
        BoundaryData {
            n: self.n,
            cols: self.cols,
            top: (1..=self.cols).map(|j| self.v[0][j - 1]).collect(),
            right: (1..=self.n).map(|i| self.h[i - 1][0]).collect(),
        }
    }
}

fn render_vset(set: EdgeLabelV) -> String {
    let inner = set.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
    format!("{{{inner}}}")
}

fn parse_vset(tok: &str) -> Option<EdgeLabelV> {
    let inner = tok.strip_prefix('{')?.strip_suffix('}')?;
    let mut set = EdgeLabelV::empty();
    if inner.is_empty() {
        return Some(set);
    }
    for part in inner.split(',') {
        let c: u8 = part.parse().ok()?;
        if c == 0 || set.contains(c) {
            return None;
        }
        set = set.insert(c);
    }
    Some(set)
}

fn render_hlabel(label: EdgeLabelH) -> String {
    match label {
        EdgeLabelH::Empty => ".".to_string(),
        EdgeLabelH::Color(c) => c.to_string(),
    }
}

fn parse_hlabel(tok: &str) -> Option<EdgeLabelH> {
    if tok == "." {
        return Some(EdgeLabelH::Empty);
    }
    let c: u8 = tok.parse().ok()?;
    if c == 0 {
        None
    } else {
        Some(EdgeLabelH::Color(c))
    }
}

/// Output options at one vertex with the given left and top labels, in a
/// fixed order: pass straight through first, then right turns by ascending
/// color.
fn vertex_options(left: EdgeLabelH, top: EdgeLabelV) -> Vec<(EdgeLabelH, EdgeLabelV)> {
    let mut opts = Vec::new();
    match left {
        EdgeLabelH::Empty => {
            opts.push((EdgeLabelH::Empty, top));
            for c in top.iter() {
                opts.push((EdgeLabelH::Color(c), top.remove(c)));
            }
        }
        EdgeLabelH::Color(c) => {
            opts.push((EdgeLabelH::Color(c), top));
            if !top.contains(c) {
                opts.push((EdgeLabelH::Empty, top.insert(c)));
                for d in top.iter() {
                    opts.push((EdgeLabelH::Color(d), top.remove(d).insert(c)));
                }
            }
        }
    }
    opts
}

/// Output options in the single-label model: equal labels pass through;
/// distinct labels either pass through or swap.
fn kzj_options(left: EdgeLabelH, top: EdgeLabelV) -> Vec<(EdgeLabelH, EdgeLabelV)> {
    let top_label = top.iter().next();
    let left_label = match left {
        EdgeLabelH::Empty => None,
        EdgeLabelH::Color(c) => Some(c),
    };
    if left_label == top_label {
        return vec![(left, top)];
    }
    let swapped_h = match top_label {
        None => EdgeLabelH::Empty,
        Some(c) => EdgeLabelH::Color(c),
    };
    let swapped_v = match left_label {
        None => EdgeLabelV::empty(),
        Some(c) => EdgeLabelV::singleton(c),
    };
    vec![(left, top), (swapped_h, swapped_v)]
}

struct Enumerator<'a> {
    b: &'a BoundaryData,
    /// `exit_row[c]`: the row whose right edge carries color `c`, if any.
    exit_row: Vec<Option<usize>>,
    kzj: bool,
    h: Vec<Vec<EdgeLabelH>>,
    v: Vec<Vec<EdgeLabelV>>,
    out: Vec<LatticeState>,
}

impl Enumerator<'_> {
    fn new(b: &BoundaryData, kzj: bool) -> Enumerator<'_> {
        let mut exit_row = vec![None; b.n + 1];
        for i in 1..=b.n {
            if let EdgeLabelH::Color(c) = b.right[i - 1] {
                if (c as usize) < exit_row.len() {
                    exit_row[c as usize] = Some(i);
                }
            }
        }
        let mut v = vec![vec![EdgeLabelV::empty(); b.cols]; b.n + 1];
        v[0].copy_from_slice(&b.top);
        Enumerator {
            b,
            exit_row,
            kzj,
            h: vec![vec![EdgeLabelH::Empty; b.cols + 1]; b.n],
            v,
            out: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<LatticeState> {
        // reject boundaries whose colors cannot reach the grid at all
        for j in 1..=self.b.cols {
            for c in self.b.top[j - 1].iter() {
                if (c as usize) >= self.exit_row.len() {
                    return Vec::new();
                }
            }
        }
        let start = self.b.top[self.b.cols - 1];
        self.descend(self.b.cols, 1, start);
        self.out
    }

    /// Columns are processed left to right (`j = cols` down to `1`), each
    /// column top to bottom; `vset` is the vertical label entering vertex
    /// `(i, j)`.
    fn descend(&mut self, j: usize, i: usize, vset: EdgeLabelV) {
        if i > self.b.n {
            if !vset.is_empty() {
                return;
            }
            if j == 1 {
                self.out.push(LatticeState {
                    n: self.b.n,
                    cols: self.b.cols,
                    h: self.h.clone(),
                    v: self.v.clone(),
                });
            } else {
                let next_top = self.b.top[j - 2];
                self.descend(j - 1, 1, next_top);
            }
            return;
        }
        let left = self.h[i - 1][j];
        let opts = if self.kzj {
            kzj_options(left, vset)
        } else {
            vertex_options(left, vset)
        };
        for (right, bottom) in opts {
            if !self.feasible(i, j, right, bottom) {
                continue;
            }
            self.h[i - 1][j - 1] = right;
            self.v[i][j - 1] = bottom;
            self.descend(j, i + 1, bottom);
        }
    }

    fn feasible(&self, i: usize, j: usize, right: EdgeLabelH, bottom: EdgeLabelV) -> bool {
        // a color moving right in row i can only exit at a row ≥ i; at the
        // last column the right edge is the boundary itself
        if j == 1 {
            if right != self.b.right[i - 1] {
                return false;
            }
        } else if let EdgeLabelH::Color(c) = right {
            match self.exit_row[c as usize] {
                Some(e) if e >= i => {}
                _ => return false,
            }
        }
        // colors still in the column must all turn right strictly below row
        // i before the (uncolored) bottom boundary
        if bottom.len() as usize > self.b.n - i {
            return false;
        }
        for d in bottom.iter() {
            match self.exit_row[d as usize] {
                Some(e) if e > i => {}
                _ => return false,
            }
        }
        true
    }
}

/// All admissible states for the boundary, in a deterministic order.
pub fn enumerate_states(b: &BoundaryData) -> Vec<LatticeState> {
    Enumerator::new(b, false).run()
}

/// All admissible states under the single-label vertex rules.
pub fn enumerate_states_kzj(b: &BoundaryData) -> Vec<LatticeState> {
    Enumerator::new(b, true).run()
}

/// A boundary together with the weight system used to score its states.
#[derive(Debug, Clone)]
pub struct ModelSpec {
    pub boundary: BoundaryData,
    pub system: WeightSystem,
}

/// Sum of weight products over all admissible states.
pub fn partition_function(spec: &ModelSpec) -> Result<LaurentPoly, LatticeError> {
    if spec.system == WeightSystem::Kzj {
        return Err(LatticeError::FractionValued);
    }
    let mut z = LaurentPoly::zero();
    for s in enumerate_states(&spec.boundary) {
        z = &z + &s.weight_product(spec.system)?;
    }
    Ok(z)
}

/// Partition function with every vertex weight specialized at
/// `x_i ↦ y_{u(i)}` before any product is taken. Equal to restricting the
/// partition function itself.
pub fn restriction(spec: &ModelSpec, u: &Permutation) -> Result<LaurentPoly, LatticeError> {
    if spec.system == WeightSystem::Kzj {
        return Err(LatticeError::FractionValued);
    }
    let mut z = LaurentPoly::zero();
    for s in enumerate_states(&spec.boundary) {
        z = &z + &s.weight_product_restricted(spec.system, u)?;
    }
    Ok(z)
}

/// Partition function of the single-label rational model.
pub fn kzj_partition_function(
    b: &BoundaryData,
    plus: KzjPlusOrder,
) -> Result<BinomialFraction, LatticeError> {
    let mut z = BinomialFraction::zero();
    for s in enumerate_states_kzj(b) {
        z = z.add(&s.kzj_weight_product(plus)?);
    }
    Ok(z)
}

/// Restriction `x_i ↦ y_{u(i)}` of the single-label partition function,
/// specialized vertex by vertex.
pub fn kzj_restriction(
    b: &BoundaryData,
    plus: KzjPlusOrder,
    u: &Permutation,
) -> Result<BinomialFraction, LatticeError> {
    let mut z = BinomialFraction::zero();
    for s in enumerate_states_kzj(b) {
        let mut p = BinomialFraction::one();
        for i in 1..=s.n() {
            for j in 1..=s.cols() {
                p = p.mul(&kzj_weight(&s.config_at(i, j), plus, i, j)?.restrict(u)?);
            }
        }
        z = z.add(&p);
    }
    Ok(z)
}

/// Closed product form attached to the longest element in the single-label
/// model, normalized so that the descent walk of [`kzj_descent_value`]
/// reproduces the published restriction values:
///
///   (1 − q)ⁿ · ∏_{i+j≤n} (1 − y_j/x_i) / ∏_{i+j≤n+1} (1 − q²y_j/x_i).
///
/// The grid sum [`kzj_partition_function`] over `B(1, w₀, □)` equals
/// `q^{ℓ(w₀)}(1 + q)ⁿ` times this product (see tests); the walk definition
/// and the grid definition are tied together only through that constant.
pub fn kzj_seed(n: usize) -> BinomialFraction {
    let q = LaurentPoly::monomial(Mono::t_half_pow(1));
    let mut num = (&LaurentPoly::one() - &q).pow(n as u32);
    for i in 1..=n {
        for j in 1..n.saturating_sub(i - 1) {
            num = &num * &LaurentPoly::one_minus(&Mono::y_pow(j, 1).mul(&Mono::x_pow(i, -1)));
        }
    }
    let mut z = BinomialFraction::from_poly(num);
    for i in 1..=n {
        for j in 1..=(n + 1 - i) {
            let m = Mono::t_pow(1).mul(&Mono::y_pow(j, 1)).mul(&Mono::x_pow(i, -1));
            z.divide_by_binomial(&m, 1).expect("q²y/x is a nontrivial binomial");
        }
    }
    z
}

/// One step of the exchange recursion for the single-label model
/// (`q² = t`, acting on the `x` variables):
///
///   τ_i f = (1 − q²)x^{α_i}/(1 − q²x^{α_i}) · f
///         + q(1 − x^{α_i})/(1 − q²x^{α_i}) · (s_i f).
pub fn kzj_tau(i: usize, n: usize, f: &BinomialFraction) -> BinomialFraction {
    let xa = Mono::x_pow(i, 1).mul(&Mono::x_pow(i + 1, -1));
    let m = Mono::t_pow(1).mul(&xa);
    let c1 = &LaurentPoly::monomial(xa.clone()) - &LaurentPoly::monomial(m.clone());
    let q = LaurentPoly::monomial(Mono::t_half_pow(1));
    let c2 = &q - &(&q * &LaurentPoly::monomial(xa));
    let si = Permutation::simple(n, i).expect("simple reflection index in range");
    let mut lhs = f.mul_poly(&c1);
    lhs.divide_by_binomial(&m, 1).expect("q²x^α is a nontrivial binomial");
    let mut rhs = f.act_x(&si).mul_poly(&c2);
    rhs.divide_by_binomial(&m, 1).expect("q²x^α is a nontrivial binomial");
    lhs.add(&rhs)
}

/// Single-label value at `w` obtained by walking the exchange recursion down
/// from the longest element: one [`kzj_tau`] step per letter of a reduced
/// word of `w₀w`, starting from [`kzj_seed`]. Each step lowers the length by
/// one, so every step is a descent step of the recursion.
pub fn kzj_descent_value(w: &Permutation) -> BinomialFraction {
    let n = w.n();
    let word = (&Permutation::longest(n) * w).reduced_word();
    let mut z = kzj_seed(n);
    for &i in &word {
        z = kzj_tau(i, n, &z);
    }
    z
}

/// `Z^λ_{σ,w}` for a polynomial weight system on `cols` columns.
pub fn z_polynomial(
    sigma: &Permutation,
    w: &Permutation,
    lambda: &Partition,
    cols: usize,
    system: WeightSystem,
) -> Result<LaurentPoly, LatticeError> {
    let spec = ModelSpec {
        boundary: boundary(sigma, w, lambda, cols)?,
        system,
    };
    partition_function(&spec)
}

/// `Z^□_{σ,w}`: the staircase-shape partition function on an `n × n` grid.
pub fn z_square(sigma: &Permutation, w: &Permutation) -> Result<LaurentPoly, LatticeError> {
    z_polynomial(
        sigma,
        w,
        &Partition::staircase(sigma.n()),
        sigma.n(),
        WeightSystem::KTheoretic,
    )
}

/// Specialization outcome at one global probe point `x_1 = y_a`,
/// `x_2 = t^{-1} y_a`.
#[derive(Debug, Clone)]
pub struct GlobalProbe {
    pub a: usize,
    /// Each state's weight product under the specialization.
    pub state_values: Vec<LaurentPoly>,
    pub sum_is_zero: bool,
    pub surviving_states: usize,
}

/// Vanishing report for the two-row boundary `B(e, e, (λ₁, λ₂))`.
#[derive(Debug, Clone)]
pub struct VanishingReport {
    pub lambda: (usize, usize),
    pub state_count: usize,
    /// For each `(i, k)` with `k < λ₂`: does every single state vanish at
    /// `x_i = y_k`?
    pub local: Vec<((usize, usize), bool)>,
    /// One probe per `a` with `λ₂ ≤ a < λ₁`.
    pub global: Vec<GlobalProbe>,
    /// `(a, identity sums to zero)` for the alternating series certifying
    /// each global probe.
    pub telescoping: Vec<(usize, bool)>,
}

impl VanishingReport {
    pub fn all_pass(&self) -> bool {
        self.local.iter().all(|&(_, ok)| ok)
            && self.global.iter().all(|g| g.sum_is_zero)
            && self.telescoping.iter().all(|&(_, ok)| ok)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lambda": [self.lambda.0, self.lambda.1],
            "state_count": self.state_count,
            "local": self.local.iter().map(|((i, k), ok)| {
                serde_json::json!({"x": i, "y": k, "all_states_vanish": ok})
            }).collect::<Vec<_>>(),
            "global": self.global.iter().map(|g| {
                serde_json::json!({
                    "a": g.a,
                    "sum_is_zero": g.sum_is_zero,
                    "surviving_states": g.surviving_states,
                })
            }).collect::<Vec<_>>(),
            "telescoping": self.telescoping.iter().map(|(a, ok)| {
                serde_json::json!({"a": a, "is_zero": ok})
            }).collect::<Vec<_>>(),
        })
    }
}

/// The alternating series that certifies the global probe at `x_1 = y_a`,
/// `x_2 = t^{-1} y_a`; identically zero for every `1 ≤ a < λ₁`.
pub fn telescoping_series(a: usize, lambda1: usize) -> LaurentPoly {
    let shifted = |k: usize, tinv: bool| -> LaurentPoly {
        // 1 − t^{-1} y_a / y_k  or  1 − y_a / y_k
        let mut m = Mono::y_pow(a, 1).mul(&Mono::y_pow(k, -1));
        if tinv {
            m = m.mul(&Mono::t_pow(-1));
        }
        LaurentPoly::one_minus(&m)
    };
    let mut total = LaurentPoly::one();
    for k in 1..lambda1 {
        total = &total * &shifted(k, true);
    }
    total = total.scale(&(-1).into()) * LaurentPoly::t();
    for m in a..lambda1 {
        let mut term = LaurentPoly::t() - LaurentPoly::one();
        term = term.mul_mono(&Mono::y_pow(a, 1).mul(&Mono::y_pow(m, -1)));
        for k in 1..m {
            term = &term * &shifted(k, true);
        }
        for k in (m + 1)..lambda1 {
            term = &term * &shifted(k, false);
        }
        total = &total + &term;
    }
    total
}

/// Probe the vanishing behavior of `Z^{(λ₁,λ₂)}_{e,e}`: local vanishing at
/// `x_i = y_k` for `k < λ₂`, global (but not local) vanishing at
/// `x_1 = y_a`, `x_2 = t^{-1} y_a` for `λ₂ ≤ a < λ₁`, and the telescoping
/// certificate for each global point.
pub fn vanishing_probe(lambda1: usize, lambda2: usize) -> Result<VanishingReport, LatticeError> {
    if lambda1 < lambda2 || lambda2 == 0 {
        return Err(LatticeError::Shape(
            "need λ₁ ≥ λ₂ ≥ 1 for the two-row probe".into(),
        ));
    }
    let e = Permutation::identity(2);
    let lambda = Partition::new(vec![lambda1, lambda2])?;
    let b = boundary(&e, &e, &lambda, lambda1)?;
    let states = enumerate_states(&b);
    let weights: Vec<LaurentPoly> = states
        .iter()
        .map(|s| s.weight_product(WeightSystem::KTheoretic))
        .collect::<Result<_, _>>()?;

    let mut local = Vec::new();
    for i in 1..=2usize {
        for k in 1..lambda2 {
            let subst: Vec<Mono> = (1..=2)
                .map(|ii| if ii == i { Mono::y(k) } else { Mono::x(ii) })
                .collect();
            let ok = weights.iter().all(|w| w.subst_x(&subst).is_zero());
            local.push(((i, k), ok));
        }
    }

    let mut global = Vec::new();
    let mut telescoping = Vec::new();
    for a in lambda2..lambda1 {
        let subst = [Mono::y(a), Mono::t_pow(-1).mul(&Mono::y(a))];
        let state_values: Vec<LaurentPoly> =
            weights.iter().map(|w| w.subst_x(&subst)).collect();
        let mut sum = LaurentPoly::zero();
        for v in &state_values {
            sum = &sum + v;
        }
        global.push(GlobalProbe {
            a,
            sum_is_zero: sum.is_zero(),
            surviving_states: state_values.iter().filter(|v| !v.is_zero()).count(),
            state_values,
        });
        telescoping.push((a, telescoping_series(a, lambda1).is_zero()));
    }

    Ok(VanishingReport {
        lambda: (lambda1, lambda2),
        state_count: states.len(),
        local,
        global,
        telescoping,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;
    use crate::weights::KzjPlusOrder;
    use crate::weyl::{is_max_coset_rep, max_coset_rep};

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    fn pp(s: &str) -> LaurentPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn boundary_examples() {
        let e = Permutation::identity(2);
        let s = perm(&[2, 1]);
        let b = boundary(&e, &s, &Partition::new(vec![2, 1]).unwrap(), 2).unwrap();
        assert_eq!(b.top(2), EdgeLabelV::singleton(2));
        assert_eq!(b.top(1), EdgeLabelV::singleton(1));
        assert_eq!(b.right(1), EdgeLabelH::Color(2));
        assert_eq!(b.right(2), EdgeLabelH::Color(1));

        // repeated parts stack their colors into one set
        let b = boundary(&s, &e, &Partition::new(vec![2, 2]).unwrap(), 2).unwrap();
        assert_eq!(b.top(2), EdgeLabelV::from_colors(&[1, 2]));
        assert_eq!(b.top(1), EdgeLabelV::empty());

        assert!(boundary(&e, &s, &Partition::new(vec![3, 1]).unwrap(), 2).is_err());
        assert!(boundary(&e, &Permutation::identity(3), &Partition::new(vec![2, 1]).unwrap(), 2)
            .is_err());
    }

    #[test]
    fn two_column_partition_functions() {
        let e = Permutation::identity(2);
        let s = perm(&[2, 1]);
        let lambda = Partition::new(vec![2, 1]).unwrap();

        let b_es = boundary(&e, &s, &lambda, 2).unwrap();
        let states = enumerate_states(&b_es);
        assert_eq!(states.len(), 1);
        let table = states[0].vertex_weights(WeightSystem::KTheoretic).unwrap();
        let expect = [
            ((1, 2), LaurentPoly::one()),
            ((1, 1), pp("1 - x1*y1^-1")),
            ((2, 2), LaurentPoly::one()),
            ((2, 1), LaurentPoly::one()),
        ];
        for ((pos, got), (epos, want)) in table.iter().zip(expect.iter()) {
            assert_eq!(pos, epos);
            assert_eq!(got, want, "vertex {:?}", pos);
        }
        let z_es = z_polynomial(&e, &s, &lambda, 2, WeightSystem::KTheoretic).unwrap();
        assert_eq!(z_es, pp("1 - x1*y1^-1"));

        let b_ee = boundary(&e, &e, &lambda, 2).unwrap();
        let states = enumerate_states(&b_ee);
        assert_eq!(states.len(), 2);
        let mut values: Vec<LaurentPoly> = states
            .iter()
            .map(|s| s.weight_product(WeightSystem::KTheoretic).unwrap())
            .collect();
        values.sort_by_key(|p| p.to_text());
        let mut want = vec![pp("t - 1"), pp("-t*(1 - x2*y1^-1)")];
        want.sort_by_key(|p| p.to_text());
        assert_eq!(values, want);
        let z_ee = z_polynomial(&e, &e, &lambda, 2, WeightSystem::KTheoretic).unwrap();
        assert_eq!(z_ee, pp("(t-1) - t*(1 - x2*y1^-1)"));
    }

    #[test]
    fn monostatic_two_row_values() {
        let e = Permutation::identity(2);
        let s = perm(&[2, 1]);
        let z = z_polynomial(
            &e,
            &s,
            &Partition::new(vec![3, 1]).unwrap(),
            3,
            WeightSystem::KTheoretic,
        )
        .unwrap();
        assert_eq!(z, pp("(1 - x1*y1^-1)*(1 - x1*y2^-1)"));

        // one state for any two-row shape; the value factors row by row,
        // with an extra −t when both paths share the leading column
        for (l1, l2) in [(4usize, 2usize), (3, 3), (5, 1)] {
            let lambda = Partition::new(vec![l1, l2]).unwrap();
            let b = boundary(&e, &s, &lambda, l1).unwrap();
            assert_eq!(enumerate_states(&b).len(), 1);
            let mut want = if l1 == l2 { pp("-t") } else { LaurentPoly::one() };
            for k in 1..l1 {
                want = &want * &pp(&format!("1 - x1*y{k}^-1"));
            }
            for k in 1..l2 {
                want = &want * &pp(&format!("1 - x2*y{k}^-1"));
            }
            let z = z_polynomial(&e, &s, &lambda, l1, WeightSystem::KTheoretic).unwrap();
            assert_eq!(z, want, "λ=({l1},{l2})");
        }
    }

    #[test]
    fn frozen_base_case_small() {
        // σ maximal in its coset: a single state with a fully factored value
        for (n, parts) in [(2usize, vec![3usize, 1]), (3, vec![2, 2, 1]), (3, vec![3, 1, 1])] {
            let lambda = Partition::new(parts).unwrap();
            let w0 = Permutation::longest(n);
            for sigma in Permutation::all(n) {
                if !is_max_coset_rep(&sigma, &lambda).unwrap() {
                    continue;
                }
                assert_eq!(max_coset_rep(&sigma, &lambda).unwrap(), sigma);
                let w = &sigma * &w0;
                let b = boundary(&sigma, &w, &lambda, lambda.first()).unwrap();
                assert_eq!(enumerate_states(&b).len(), 1, "σ={sigma} λ={:?}", lambda.parts());
                let z = z_polynomial(&sigma, &w, &lambda, lambda.first(), WeightSystem::KTheoretic)
                    .unwrap();
                let mut want = LaurentPoly::term(
                    Mono::t_pow(sigma.length() as i64),
                    1,
                );
                for (idx, &part) in lambda.parts().iter().enumerate() {
                    for j in 1..part {
                        want = &want * &pp(&format!("1 - x{}*y{}^-1", idx + 1, j));
                    }
                }
                assert_eq!(z, want, "σ={sigma} λ={:?}", lambda.parts());
            }
        }
    }

    #[test]
    fn two_row_state_counts() {
        let e = Permutation::identity(2);
        for (l1, l2) in [(2usize, 1usize), (4, 2), (5, 5), (6, 1)] {
            let lambda = Partition::new(vec![l1, l2]).unwrap();
            let b = boundary(&e, &e, &lambda, l1).unwrap();
            assert_eq!(enumerate_states(&b).len(), l1 - l2 + 1);
        }
    }

    #[test]
    fn colored_entering_counts_match_shape() {
        for (sigma, w, parts, cols) in [
            (perm(&[1, 2, 3, 4]), perm(&[1, 4, 2, 3]), vec![4usize, 3, 2, 1], 4usize),
            (perm(&[1, 2, 3]), perm(&[3, 1, 2]), vec![3, 2, 1], 3),
            (perm(&[2, 1]), perm(&[1, 2]), vec![4, 2], 4),
        ] {
            let lambda = Partition::new(parts.clone()).unwrap();
            let b = boundary(&sigma, &w, &lambda, cols).unwrap();
            let states = enumerate_states(&b);
            assert!(!states.is_empty());
            for s in &states {
                for j in 1..=cols {
                    let want = parts.iter().filter(|&&p| p > j).count();
                    assert_eq!(s.colored_entering(j), want);
                }
                assert_eq!(s.boundary(), b);
            }
        }
    }

    #[test]
    fn restriction_pre_equals_post() {
        let sigma = Permutation::identity(3);
        for w in Permutation::all(3) {
            let spec = ModelSpec {
                boundary: square_boundary(&sigma, &w).unwrap(),
                system: WeightSystem::KTheoretic,
            };
            let z = partition_function(&spec).unwrap();
            for u in [perm(&[2, 3, 1]), perm(&[3, 2, 1])] {
                assert_eq!(restriction(&spec, &u).unwrap(), z.restrict(&u));
            }
        }
    }

    #[test]
    fn render_roundtrip() {
        let e = Permutation::identity(2);
        let b = boundary(&e, &e, &Partition::new(vec![3, 1]).unwrap(), 3).unwrap();
        for s in enumerate_states(&b) {
            let text = s.render();
            assert_eq!(LatticeState::parse(&text).unwrap(), s);
        }
        // single-label states round-trip through the same format
        let w = perm(&[2, 1, 3]);
        let b = square_boundary(&Permutation::identity(3), &w).unwrap();
        let states = enumerate_states_kzj(&b);
        assert!(!states.is_empty());
        for s in &states {
            assert_eq!(LatticeState::parse(&s.render()).unwrap(), *s);
        }
        assert!(LatticeState::parse("lattice n=1").is_err());
    }

    #[test]
    fn vanishing_report_small_shapes() {
        for (l1, l2) in [(3usize, 1usize), (3, 2), (4, 2)] {
            let report = vanishing_probe(l1, l2).unwrap();
            assert_eq!(report.state_count, l1 - l2 + 1);
            assert!(report.all_pass(), "λ=({l1},{l2})");
            for g in &report.global {
                // survivors: the states whose lower path enters row 2 at
                // column a or beyond
                assert_eq!(g.surviving_states, l1 - g.a + 1, "a={}", g.a);
                assert!(g.surviving_states > 0);
            }
        }
        assert!(vanishing_probe(1, 2).is_err());
    }

    #[test]
    fn one_color_model_sums_over_exit_colorings() {
        // the one-color partition function equals the sum of the colored
        // ones over all right boundaries, for either top coloring
        let lambda = Partition::new(vec![2, 1]).unwrap();
        let zcb = partition_function(&ModelSpec {
            boundary: colorblind_boundary(&lambda, 2).unwrap(),
            system: WeightSystem::Colorblind,
        })
        .unwrap();
        for sigma in Permutation::all(2) {
            let mut sum = LaurentPoly::zero();
            for w in Permutation::all(2) {
                sum = &sum + &z_polynomial(&sigma, &w, &lambda, 2, WeightSystem::Whittaker).unwrap();
            }
            assert_eq!(sum, zcb, "σ={sigma}");
        }

        let lambda = Partition::staircase(3);
        let zcb = partition_function(&ModelSpec {
            boundary: colorblind_boundary(&lambda, 3).unwrap(),
            system: WeightSystem::Colorblind,
        })
        .unwrap();
        let sigma = Permutation::identity(3);
        let mut sum = LaurentPoly::zero();
        for w in Permutation::all(3) {
            sum = &sum + &z_polynomial(&sigma, &w, &lambda, 3, WeightSystem::Whittaker).unwrap();
        }
        assert_eq!(sum, zcb);
    }

    #[test]
    fn single_label_restriction_example() {
        // n = 3, w = s₁, restricted at v = 312 (so x₁ ↦ y₃, x₂ ↦ y₁, x₃ ↦ y₂)
        let one = Permutation::identity(3);
        let w = perm(&[2, 1, 3]);
        let v = perm(&[3, 1, 2]);
        let b = square_boundary(&one, &w).unwrap();

        // the colored staircase value restricts to (1−q²)(1−y₃/y₁)(1−q²y₂/y₁)
        let zsq = z_square(&one, &w).unwrap();
        assert_eq!(
            zsq.restrict(&v),
            pp("(1-t)*(1-y3*y1^-1)*(1-t*y2*y1^-1)")
        );

        // the single-label value transported down from the longest element by
        // the exchange recursion restricts to the published fraction (compare
        // by cross-multiplication: the denominator has non-binomial factors)
        let q = "t^(1/2)";
        let num = pp(&format!(
            "{q}*({q}-1)*(1-y3*y2^-1)*(1-y1*y3^-1)*(1-y1*y2^-1)^2"
        ));
        let den = pp(&format!(
            "({q}+1)^2*(1-t*y1*y2^-1)^2*(1-t*y3*y2^-1)*(1-t*y2*y3^-1)*(1-t*y1*y3^-1)"
        ));
        let zr = kzj_descent_value(&w).restrict(&v).unwrap().reduce();
        assert_eq!(zr.num() * &den, &num * &zr.den_poly());

        // no grid sum can equal that fraction: the restriction of any one
        // state's weight product has each binomial (1 − q²y_j/y_k) at most
        // once, while the published value carries (1 − q²y₁/y₂) squared
        for plus in [KzjPlusOrder::Smallest, KzjPlusOrder::Largest] {
            let zl = kzj_restriction(&b, plus, &v).unwrap().reduce();
            assert!(zl.den_factors().all(|(_, k)| k == 1));
            assert_ne!(zl.num() * &den, &num * &zl.den_poly(), "plus={plus:?}");
        }

        // the two restrictions agree up to the published normalization factor
        let f_num = pp(&format!(
            "({q}+1)^3*y3*(1-t*y3*y2^-1)*(1-t*y2*y3^-1)*(1-t*y2*y1^-1)*(1-t*y1*y3^-1)*(1-t*y1*y2^-1)^2"
        ));
        let f_den = pp(&format!("{q}*y1*(1-y1*y2^-1)^2*(1-y3*y2^-1)"));
        // Z^□|_v · f_den · den(Z^rat|_v) = f_num · num(Z^rat|_v)
        let lhs = &(&zsq.restrict(&v) * &f_den) * &zr.den_poly();
        let rhs = &f_num * &zr.num();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn single_label_grid_ties_to_seed_at_longest() {
        // The grid sum at w = w₀ equals q^{ℓ(w₀)}(1 + q)ⁿ · kzj_seed(n) with
        // `+` sorted above every color; sorting `+` below breaks the tie.
        // This pins both the table reading and the walk normalization.
        for n in [2usize, 3] {
            let e = Permutation::identity(n);
            let w0 = Permutation::longest(n);
            let b = square_boundary(&e, &w0).unwrap();
            let mult = &LaurentPoly::monomial(Mono::t_half_pow(w0.length() as i64))
                * &(&LaurentPoly::one() + &LaurentPoly::monomial(Mono::t_half_pow(1))).pow(n as u32);
            let want = kzj_seed(n).mul_poly(&mult);
            let z = kzj_partition_function(&b, KzjPlusOrder::Largest).unwrap();
            assert!(z.value_eq(&want), "n={n}");
            let z_small = kzj_partition_function(&b, KzjPlusOrder::Smallest).unwrap();
            assert!(!z_small.value_eq(&want), "n={n}");
        }

        // the seed is also where the descent walk starts
        assert!(kzj_descent_value(&Permutation::longest(3)).value_eq(&kzj_seed(3)));
    }

    #[test]
    fn single_label_double_function_example() {
        // the unrestricted colored staircase value for w = s₁ at n = 3
        let one = Permutation::identity(3);
        let w = perm(&[2, 1, 3]);
        let z = z_square(&one, &w).unwrap();
        let want = pp(concat!(
            "(1 - x1*y1^-1)*(",
            "t^2*x2*x3*y1^-1*y2^-1 + t^2*x3^2*y1^-1*y2^-1 - t^2*x3*y2^-1",
            " - t*x2*x3*y1^-1*y2^-1 - t*x3*y1^-1 + 1)"
        ));
        assert_eq!(z, want);
    }

    #[test]
    fn telescoping_series_is_zero() {
        for lambda1 in 2..=6usize {
            for a in 1..lambda1 {
                assert!(telescoping_series(a, lambda1).is_zero(), "a={a} λ₁={lambda1}");
            }
        }
    }

    #[test]
    fn kzj_partition_function_is_fraction() {
        let e = Permutation::identity(2);
        let s = perm(&[2, 1]);
        let spec = ModelSpec {
            boundary: square_boundary(&e, &s).unwrap(),
            system: WeightSystem::Kzj,
        };
        assert!(matches!(
            partition_function(&spec),
            Err(LatticeError::FractionValued)
        ));
        let z = kzj_partition_function(&spec.boundary, KzjPlusOrder::Largest).unwrap();
        assert!(!z.is_zero());
    }
}
