//! Indicator embedding of ℤ_q words and the three LP relaxations used for
//! decoding: the local-codeword polytope Q, the composition-based polytope U,
//! and the cascaded polytope S obtained from the degree-reduced code.
//!
//! Builders emit a solver-agnostic [`LinearProgram`]; every variable is named
//! through the [`VariableRegistry`] so that solutions can be read back
//! structurally and programs can be dumped in LP interchange format.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::channel::LlrVector;
use crate::ring::{mod_add, mod_mul, mod_neg, CodeError, CodeSpec};

/// Replacement magnitude for infinite LLR entries in the objective.
pub const DEFAULT_INF_CLAMP: f64 = 1e9;

#[derive(Debug, Error, PartialEq)]
pub enum PolytopeError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("indicator block {0} is not zero/one-hot: {1}")]
    BadIndicator(usize, String),
    #[error("word is not in the local code of check {0}")]
    NotLocalCodeword(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

// ---------------------------------------------------------------------------
// Indicator map
// ---------------------------------------------------------------------------

/// Image of a word under the indicator embedding: `q - 1` entries per symbol,
/// one-hot for nonzero symbols and an all-zero block for the symbol 0.
#[derive(Clone, Debug, PartialEq)]
pub struct IndicatorVector {
    q: u32,
    n: usize,
    values: Vec<f64>,
}

impl IndicatorVector {
    pub fn from_values(q: u32, n: usize, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), n * (q as usize - 1));
        IndicatorVector { q, n, values }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, alpha: u32) -> f64 {
        debug_assert!(alpha >= 1 && alpha < self.q);
        self.values[i * (self.q as usize - 1) + alpha as usize - 1]
    }
}

/// The embedding `xi` applied blockwise to a word.
pub fn xi(c: &[u32], q: u32) -> IndicatorVector {
    let block = q as usize - 1;
    let mut values = vec![0.0; c.len() * block];
    for (i, &v) in c.iter().enumerate() {
        assert!(v < q, "symbol {} outside Z_{}", v, q);
        if v != 0 {
            values[i * block + v as usize - 1] = 1.0;
        }
    }
    IndicatorVector { q, n: c.len(), values }
}

/// Inverse of `xi`. Each block must be within `tol` of an all-zero or one-hot
/// pattern; an all-zero block decodes to the symbol 0.
pub fn xi_inv(f: &IndicatorVector, tol: f64) -> Result<Vec<u32>, PolytopeError> {
    let block = f.q as usize - 1;
    let mut out = Vec::with_capacity(f.n);
    for (i, chunk) in f.values.chunks(block).enumerate() {
        let mut hot: Option<u32> = None;
        for (a, &v) in chunk.iter().enumerate() {
            if (v - 1.0).abs() <= tol {
                if hot.is_some() {
                    return Err(PolytopeError::BadIndicator(i, "multiple entries near 1".into()));
                }
                hot = Some(a as u32 + 1);
            } else if v.abs() > tol {
                return Err(PolytopeError::BadIndicator(i, format!("fractional entry {}", v)));
            }
        }
        out.push(hot.unwrap_or(0));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Variable registry and linear program
// ---------------------------------------------------------------------------

/// Structured variable names; the registry maps them to column indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarName {
    /// Indicator of coded symbol `i` taking the value `alpha`.
    F { i: usize, alpha: u32 },
    /// Weight of local codeword `word` at check `j` (polytope Q).
    W { j: usize, word: Vec<u32> },
    /// Weight of composition `comp` at check `j` (polytope U).
    Sigma { j: usize, comp: Vec<u32> },
    /// Portion of `f_i^(beta)` assigned to composition `comp` at check `j`.
    ZU { j: usize, i: usize, comp: Vec<u32>, beta: u32 },
    /// Indicator of auxiliary symbol `l` of check `j` taking value `alpha`.
    ChiF { j: usize, l: usize, alpha: u32 },
    /// Weight of local word `word` of cascade sub-check `(j, l)` (polytope S).
    WS { j: usize, l: usize, word: Vec<u32> },
}

fn join_digits(word: &[u32]) -> String {
    word.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("_")
}

impl fmt::Display for VarName {
    // 1-based indices at the file-format boundary
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarName::F { i, alpha } => write!(f, "f_{}_{}", i + 1, alpha),
            VarName::W { j, word } => write!(f, "w_{}_{}", j + 1, join_digits(word)),
            VarName::Sigma { j, comp } => write!(f, "sig_{}_{}", j + 1, join_digits(comp)),
            VarName::ZU { j, i, comp, beta } => {
                write!(f, "zu_{}_{}_{}_b{}", j + 1, i + 1, join_digits(comp), beta)
            }
            VarName::ChiF { j, l, alpha } => write!(f, "chi_{}_{}_{}", j + 1, l + 1, alpha),
            VarName::WS { j, l, word } => {
                write!(f, "ws_{}_{}_{}", j + 1, l + 1, join_digits(word))
            }
        }
    }
}

/// Total, injective map between structured names and column indices.
#[derive(Clone, Debug, Default)]
pub struct VariableRegistry {
    names: Vec<VarName>,
    index: HashMap<VarName, usize>,
}

impl VariableRegistry {
    pub fn new() -> Self {
        VariableRegistry::default()
    }

    pub fn add(&mut self, name: VarName) -> usize {
        let idx = self.names.len();
        let prev = self.index.insert(name.clone(), idx);
        assert!(prev.is_none(), "duplicate variable name {}", name);
        self.names.push(name);
        idx
    }

    pub fn index_of(&self, name: &VarName) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, col: usize) -> &VarName {
        &self.names[col]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[VarName] {
        &self.names
    }

    /// Column indices of the indicator block for symbols `0..n`, in
    /// `(i, alpha)` order.
    pub fn f_block(&self, q: u32, n: usize) -> Vec<usize> {
        let mut cols = Vec::with_capacity(n * (q as usize - 1));
        for i in 0..n {
            for alpha in 1..q {
                cols.push(
                    self.index_of(&VarName::F { i, alpha })
                        .unwrap_or_else(|| panic!("missing f variable ({}, {})", i, alpha)),
                );
            }
        }
        cols
    }
}

/// Sparse constraint system `min c x` s.t. `A_eq x = b_eq`, `A_ub x <= b_ub`,
/// `x >= 0`, with named columns.
///
/// Indicator variables carry no explicit box rows; their 0/1 bounds are
/// implied by the check constraints and audited after solving.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    registry: VariableRegistry,
    objective: Vec<f64>,
    eq_rows: Vec<Vec<(usize, f64)>>,
    eq_rhs: Vec<f64>,
    ub_rows: Vec<Vec<(usize, f64)>>,
    ub_rhs: Vec<f64>,
    basis_hint: Vec<Option<usize>>,
}

impl LinearProgram {
    pub fn new(registry: VariableRegistry) -> Self {
        let n = registry.len();
        LinearProgram { registry, objective: vec![0.0; n], ..Default::default() }
    }

    pub fn registry(&self) -> &VariableRegistry {
        &self.registry
    }

    pub fn num_vars(&self) -> usize {
        self.registry.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn set_objective(&mut self, objective: Vec<f64>) {
        assert_eq!(objective.len(), self.num_vars());
        self.objective = objective;
    }

    pub fn add_eq(&mut self, row: Vec<(usize, f64)>, rhs: f64) {
        self.eq_rows.push(row);
        self.eq_rhs.push(rhs);
        self.basis_hint.push(None);
    }

    pub fn add_eq_hinted(&mut self, row: Vec<(usize, f64)>, rhs: f64, hint: usize) {
        self.eq_rows.push(row);
        self.eq_rhs.push(rhs);
        self.basis_hint.push(Some(hint));
    }

    pub fn add_ub(&mut self, row: Vec<(usize, f64)>, rhs: f64) {
        self.ub_rows.push(row);
        self.ub_rhs.push(rhs);
    }

    pub fn eq_rows(&self) -> &[Vec<(usize, f64)>] {
        &self.eq_rows
    }

    pub fn eq_rhs(&self) -> &[f64] {
        &self.eq_rhs
    }

    pub fn ub_rows(&self) -> &[Vec<(usize, f64)>] {
        &self.ub_rows
    }

    pub fn ub_rhs(&self) -> &[f64] {
        &self.ub_rhs
    }

    pub fn basis_hint(&self) -> &[Option<usize>] {
        &self.basis_hint
    }

    /// Residual check of every constraint at `x`; returns the worst violation.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for (row, rhs) in self.eq_rows.iter().zip(&self.eq_rhs) {
            let v: f64 = row.iter().map(|&(c, a)| a * x[c]).sum();
            worst = worst.max((v - rhs).abs());
        }
        for (row, rhs) in self.ub_rows.iter().zip(&self.ub_rhs) {
            let v: f64 = row.iter().map(|&(c, a)| a * x[c]).sum();
            worst = worst.max((v - rhs).max(0.0));
        }
        for &v in x {
            worst = worst.max((-v).max(0.0));
        }
        worst
    }

    /// Serializes the program in CPLEX LP interchange format with variables
    /// named per the registry.
    pub fn to_lp_format(&self) -> String {
        let mut out = String::from("Minimize\n obj:");
        let mut first = true;
        for (c, &v) in self.objective.iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            push_term(&mut out, v, &self.registry.names[c].to_string(), first);
            first = false;
        }
        if first {
            out.push_str(" 0 ");
            out.push_str(&self.registry.names[0].to_string());
        }
        out.push_str("\nSubject To\n");
        for (r, (row, rhs)) in self.eq_rows.iter().zip(&self.eq_rhs).enumerate() {
            out.push_str(&format!(" eq{}:", r));
            for (t, &(c, v)) in row.iter().enumerate() {
                push_term(&mut out, v, &self.registry.names[c].to_string(), t == 0);
            }
            out.push_str(&format!(" = {}\n", rhs));
        }
        for (r, (row, rhs)) in self.ub_rows.iter().zip(&self.ub_rhs).enumerate() {
            out.push_str(&format!(" ub{}:", r));
            for (t, &(c, v)) in row.iter().enumerate() {
                push_term(&mut out, v, &self.registry.names[c].to_string(), t == 0);
            }
            out.push_str(&format!(" <= {}\n", rhs));
        }
        out.push_str("End\n");
        out
    }
}

fn push_term(out: &mut String, v: f64, name: &str, first: bool) {
    if first {
        if v < 0.0 {
            out.push_str(&format!(" -{} {}", fmt_coeff(-v), name));
        } else {
            out.push_str(&format!(" {} {}", fmt_coeff(v), name));
        }
    } else if v < 0.0 {
        out.push_str(&format!(" - {} {}", fmt_coeff(-v), name));
    } else {
        out.push_str(&format!(" + {} {}", fmt_coeff(v), name));
    }
}

fn fmt_coeff(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{:.17e}", v)
    }
}

// ---------------------------------------------------------------------------
// Polytope Q
// ---------------------------------------------------------------------------

/// The standard relaxation: per-check local-codeword weights `w_{j,b}` with
/// normalization and marginalization equalities tying them to `f`.
pub fn build_q(code: &CodeSpec, cap: u128) -> Result<LinearProgram, PolytopeError> {
    let f_namer = |i: usize, alpha: u32| VarName::F { i, alpha };
    let w_namer = |j: usize, word: &[u32]| VarName::W { j, word: word.to_vec() };
    build_q_with_names(code, cap, &f_namer, &w_namer)
}

fn build_q_with_names(
    code: &CodeSpec,
    cap: u128,
    f_namer: &dyn Fn(usize, u32) -> VarName,
    w_namer: &dyn Fn(usize, &[u32]) -> VarName,
) -> Result<LinearProgram, PolytopeError> {
    let q = code.q();
    let n = code.n();
    let mut reg = VariableRegistry::new();
    for i in 0..n {
        for alpha in 1..q {
            reg.add(f_namer(i, alpha));
        }
    }
    let mut codebooks = Vec::with_capacity(code.m());
    let mut w_cols: Vec<Vec<usize>> = Vec::with_capacity(code.m());
    for j in 0..code.m() {
        let cb = code.local_codebook(j, cap)?;
        let cols = cb.words().iter().map(|b| reg.add(w_namer(j, b))).collect();
        codebooks.push(cb);
        w_cols.push(cols);
    }

    let mut lp = LinearProgram::new(reg);
    // indicator variables were registered first, in (i, alpha) order
    let f_col = |i: usize, alpha: u32| i * (q as usize - 1) + alpha as usize - 1;
    let mut f_hinted = vec![false; n * (q as usize - 1)];
    for j in 0..code.m() {
        let cb = &codebooks[j];
        let cols = &w_cols[j];
        // normalization; the all-zero word (first in the codebook) seeds the basis
        let row: Vec<(usize, f64)> = cols.iter().map(|&c| (c, 1.0)).collect();
        lp.add_eq_hinted(row, 1.0, cols[0]);
        // marginalization per support position and nonzero symbol
        for (pos, &i) in cb.support().iter().enumerate() {
            for alpha in 1..q {
                let fc = f_col(i, alpha);
                let mut row = vec![(fc, 1.0)];
                for (widx, b) in cb.words().iter().enumerate() {
                    if b[pos] == alpha {
                        row.push((cols[widx], -1.0));
                    }
                }
                let slot = i * (q as usize - 1) + alpha as usize - 1;
                if f_hinted[slot] {
                    lp.add_eq(row, 0.0);
                } else {
                    f_hinted[slot] = true;
                    lp.add_eq_hinted(row, 0.0, fc);
                }
            }
        }
    }
    // symbols outside every check still need their block-sum bound
    for i in 0..n {
        if (0..q - 1).all(|a| !f_hinted[i * (q as usize - 1) + a as usize]) {
            let row: Vec<(usize, f64)> = (1..q).map(|alpha| (f_col(i, alpha), 1.0)).collect();
            lp.add_ub(row, 1.0);
        }
    }
    Ok(lp)
}

// ---------------------------------------------------------------------------
// Polytope U
// ---------------------------------------------------------------------------

/// Image characterization of the per-check composition map: all `k` with
/// `sum_alpha alpha . k_alpha = 0` in the ring and `sum_alpha k_alpha <= d_j`.
pub fn enumerate_t_j(code: &CodeSpec, j: usize) -> Vec<Vec<u32>> {
    let q = code.q();
    let d = code.degree(j) as u32;
    let mut out = Vec::new();
    let mut k = vec![0u32; q as usize - 1];
    loop {
        let total: u32 = k.iter().sum();
        if total <= d {
            let ring_sum: u64 = k
                .iter()
                .enumerate()
                .map(|(a, &ka)| u64::from(mod_mul((a as u32 + 1) % q, ka % q, q)))
                .sum();
            if ring_sum % u64::from(q) == 0 {
                out.push(k.clone());
            }
        }
        // odometer over [0, d]^{q-1}
        let mut pos = k.len();
        loop {
            if pos == 0 {
                out.sort();
                return out;
            }
            pos -= 1;
            k[pos] += 1;
            if k[pos] <= d {
                break;
            }
            k[pos] = 0;
        }
    }
}

/// Composition of a local codeword: how many support positions contribute
/// each nonzero value `b_i * H_{j,i}` to the check.
pub fn kappa_j(code: &CodeSpec, j: usize, b: &[u32]) -> Result<Vec<u32>, PolytopeError> {
    let q = code.q();
    let support = code.support(j);
    if b.len() != support.len() {
        return Err(PolytopeError::Dimension(format!(
            "local word length {} does not match degree {}",
            b.len(),
            support.len()
        )));
    }
    let mut k = vec![0u32; q as usize - 1];
    let mut ring_sum = 0u64;
    for (pos, &i) in support.iter().enumerate() {
        let prod = mod_mul(b[pos] % q, code.row(j)[i], q);
        ring_sum += u64::from(prod);
        if prod != 0 {
            k[prod as usize - 1] += 1;
        }
    }
    if ring_sum % u64::from(q) != 0 {
        return Err(PolytopeError::NotLocalCodeword(j));
    }
    Ok(k)
}

/// The composition polytope: variables `sigma_{j,k}` and `z^{(beta)}_{i,j,k}`
/// replace explicit local-codeword weights.
pub fn build_u(code: &CodeSpec) -> Result<LinearProgram, PolytopeError> {
    let q = code.q();
    let n = code.n();
    let mut reg = VariableRegistry::new();
    for i in 0..n {
        for alpha in 1..q {
            reg.add(VarName::F { i, alpha });
        }
    }
    let mut tj_all = Vec::with_capacity(code.m());
    for j in 0..code.m() {
        let tj = enumerate_t_j(code, j);
        for k in &tj {
            reg.add(VarName::Sigma { j, comp: k.clone() });
        }
        for k in &tj {
            for &i in code.support(j) {
                for beta in 1..q {
                    reg.add(VarName::ZU { j, i, comp: k.clone(), beta });
                }
            }
        }
        tj_all.push(tj);
    }

    let index_snapshot: HashMap<VarName, usize> =
        reg.names().iter().enumerate().map(|(c, name)| (name.clone(), c)).collect();
    let mut lp = LinearProgram::new(reg);
    let idx = |name: &VarName| {
        *index_snapshot.get(name).unwrap_or_else(|| panic!("unregistered variable {}", name))
    };
    let mut f_hinted = vec![false; n * (q as usize - 1)];
    let mut used_cols: std::collections::HashSet<usize> = std::collections::HashSet::new();
    for j in 0..code.m() {
        let tj = &tj_all[j];
        // sum_k sigma = 1; the zero composition (first in sorted order) seeds the basis
        debug_assert!(tj[0].iter().all(|&v| v == 0));
        let sigma_cols: Vec<usize> = tj
            .iter()
            .map(|k| idx(&VarName::Sigma { j, comp: k.clone() }))
            .collect();
        let row: Vec<(usize, f64)> = sigma_cols.iter().map(|&c| (c, 1.0)).collect();
        used_cols.insert(sigma_cols[0]);
        lp.add_eq_hinted(row, 1.0, sigma_cols[0]);

        // f marginalization over compositions
        for &i in code.support(j) {
            for alpha in 1..q {
                let fc = idx(&VarName::F { i, alpha });
                let mut row = vec![(fc, 1.0)];
                for k in tj {
                    row.push((idx(&VarName::ZU { j, i, comp: k.clone(), beta: alpha }), -1.0));
                }
                let slot = i * (q as usize - 1) + alpha as usize - 1;
                if !f_hinted[slot] {
                    f_hinted[slot] = true;
                    used_cols.insert(fc);
                    lp.add_eq_hinted(row, 0.0, fc);
                } else {
                    lp.add_eq(row, 0.0);
                }
            }
        }

        // per-composition contribution counts
        for (kidx, k) in tj.iter().enumerate() {
            for alpha in 1..q {
                let mut row = Vec::new();
                for &i in code.support(j) {
                    let h = code.row(j)[i];
                    for beta in 1..q {
                        if mod_mul(beta, h, q) == alpha {
                            row.push((
                                idx(&VarName::ZU { j, i, comp: k.clone(), beta }),
                                1.0,
                            ));
                        }
                    }
                }
                row.push((sigma_cols[kidx], -f64::from(k[alpha as usize - 1])));
                lp.add_eq(row, 0.0);
            }
        }

        // per-position caps over the whole block. For a unit coefficient this
        // is exactly the sum over nonzero products; a zero-divisor coefficient
        // would leave its zero-product values uncapped, and bounding them too
        // keeps the projection onto f inside the codeword polytope.
        for (kidx, k) in tj.iter().enumerate() {
            for &i in code.support(j) {
                let mut row: Vec<(usize, f64)> = (1..q)
                    .map(|beta| (idx(&VarName::ZU { j, i, comp: k.clone(), beta }), 1.0))
                    .collect();
                row.push((sigma_cols[kidx], -1.0));
                lp.add_ub(row, 0.0);
            }
        }
    }
    for i in 0..n {
        if (0..q - 1).all(|a| !f_hinted[i * (q as usize - 1) + a as usize]) {
            let row: Vec<(usize, f64)> =
                (1..q).map(|alpha| (idx(&VarName::F { i, alpha }), 1.0)).collect();
            lp.add_ub(row, 1.0);
        }
    }
    Ok(lp)
}

// ---------------------------------------------------------------------------
// Cascade transform and polytope S
// ---------------------------------------------------------------------------

/// The degree-reduced code: each check of degree >= 4 becomes a chain of
/// degree-3 checks threaded through auxiliary symbols.
#[derive(Clone, Debug)]
pub struct CascadeSpec {
    base_n: usize,
    base_m: usize,
    code: CodeSpec,
    /// Per original check, the columns of its auxiliary symbols in the
    /// transformed code (empty for pass-through checks).
    chi_cols: Vec<Vec<usize>>,
    /// Per transformed row, the originating `(j, l)` pair.
    row_origin: Vec<(usize, usize)>,
}

impl CascadeSpec {
    pub fn code(&self) -> &CodeSpec {
        &self.code
    }

    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn base_m(&self) -> usize {
        self.base_m
    }

    pub fn chi_cols(&self, j: usize) -> &[usize] {
        &self.chi_cols[j]
    }

    pub fn row_origin(&self) -> &[(usize, usize)] {
        &self.row_origin
    }

    pub fn is_pass_through(&self, j: usize) -> bool {
        self.chi_cols[j].is_empty()
    }
}

/// Builds the cascaded code: checks of degree <= 3 pass through unchanged,
/// larger checks are split into `d_j - 2` checks of degree <= 3 using
/// `d_j - 3` auxiliary symbols each.
pub fn build_cascade(code: &CodeSpec) -> CascadeSpec {
    let q = code.q();
    let n = code.n();
    let mut total_chi = 0usize;
    let mut chi_cols: Vec<Vec<usize>> = Vec::with_capacity(code.m());
    for j in 0..code.m() {
        let d = code.degree(j);
        let extra = d.saturating_sub(3);
        let cols: Vec<usize> = (0..extra).map(|l| n + total_chi + l).collect();
        total_chi += extra;
        chi_cols.push(cols);
    }
    let n_f = n + total_chi;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut row_origin = Vec::new();
    let neg_one = i64::from(q) - 1;
    for j in 0..code.m() {
        let support = code.support(j);
        let d = support.len();
        if d <= 3 {
            let mut row = vec![0i64; n_f];
            for &i in support {
                row[i] = i64::from(code.row(j)[i]);
            }
            rows.push(row);
            row_origin.push((j, 0));
            continue;
        }
        let chi = &chi_cols[j];
        // first: H i1 + H i2 + chi_1 = 0
        let mut row = vec![0i64; n_f];
        row[support[0]] = i64::from(code.row(j)[support[0]]);
        row[support[1]] = i64::from(code.row(j)[support[1]]);
        row[chi[0]] = 1;
        rows.push(row);
        row_origin.push((j, 0));
        // middle: -chi_l + H i_{l+2} + chi_{l+1} = 0
        for l in 0..d.saturating_sub(4) {
            let mut row = vec![0i64; n_f];
            row[chi[l]] = neg_one;
            row[support[l + 2]] = i64::from(code.row(j)[support[l + 2]]);
            row[chi[l + 1]] = 1;
            rows.push(row);
            row_origin.push((j, l + 1));
        }
        // last: -chi_{d-3} + H i_{d-1} + H i_d = 0
        let mut row = vec![0i64; n_f];
        row[chi[d - 4]] = neg_one;
        row[support[d - 2]] = i64::from(code.row(j)[support[d - 2]]);
        row[support[d - 1]] = i64::from(code.row(j)[support[d - 1]]);
        rows.push(row);
        row_origin.push((j, d - 3));
    }
    let f_code = CodeSpec::new(q, rows).expect("cascade rows are nonzero");
    CascadeSpec { base_n: n, base_m: code.m(), code: f_code, chi_cols, row_origin }
}

/// The unique auxiliary completion of a local codeword `b` of check `j`
/// (indexed by the support of `j`); empty when the check passes through.
pub fn chi_completion(code: &CodeSpec, j: usize, b: &[u32]) -> Result<Vec<u32>, PolytopeError> {
    let q = code.q();
    let support = code.support(j);
    if b.len() != support.len() {
        return Err(PolytopeError::Dimension(format!(
            "local word length {} does not match degree {}",
            b.len(),
            support.len()
        )));
    }
    let d = support.len();
    if d <= 3 {
        return Ok(Vec::new());
    }
    let prod = |pos: usize| mod_mul(b[pos] % q, code.row(j)[support[pos]], q);
    let mut chis = Vec::with_capacity(d - 3);
    let first = mod_neg(mod_add(prod(0), prod(1), q), q);
    chis.push(first);
    for l in 1..d - 3 {
        let prev = chis[l - 1];
        chis.push(mod_add(prev, mod_neg(prod(l + 1), q), q));
    }
    Ok(chis)
}

/// The cascaded relaxation: polytope Q applied to the degree-reduced code,
/// with auxiliary-symbol indicators held at zero cost.
pub fn build_s(code: &CodeSpec, cap: u128) -> Result<LinearProgram, PolytopeError> {
    let cascade = build_cascade(code);
    build_s_from_cascade(&cascade, cap)
}

pub fn build_s_from_cascade(
    cascade: &CascadeSpec,
    cap: u128,
) -> Result<LinearProgram, PolytopeError> {
    let n = cascade.base_n;
    // reverse map: cascade column -> (j, l) of its auxiliary symbol
    let mut chi_of_col: HashMap<usize, (usize, usize)> = HashMap::new();
    for (j, cols) in cascade.chi_cols.iter().enumerate() {
        for (l, &c) in cols.iter().enumerate() {
            chi_of_col.insert(c, (j, l));
        }
    }
    let row_origin = cascade.row_origin.clone();
    let f_namer = move |i: usize, alpha: u32| {
        if i < n {
            VarName::F { i, alpha }
        } else {
            let (j, l) = chi_of_col[&i];
            VarName::ChiF { j, l, alpha }
        }
    };
    let w_namer = move |row: usize, word: &[u32]| {
        let (j, l) = row_origin[row];
        VarName::WS { j, l, word: word.to_vec() }
    };
    build_q_with_names(cascade.code(), cap, &f_namer, &w_namer)
}

// ---------------------------------------------------------------------------
// Objective and integral witnesses
// ---------------------------------------------------------------------------

/// Places the LLR costs on the indicator variables of the original symbols;
/// every auxiliary variable gets zero cost. Infinite entries are clamped to
/// `+-clamp`; the returned flag reports whether clamping occurred.
pub fn objective_from_llr(
    llr: &LlrVector,
    registry: &VariableRegistry,
    clamp: f64,
) -> (Vec<f64>, bool) {
    let mut obj = vec![0.0; registry.len()];
    let mut clamped = false;
    for (col, name) in registry.names().iter().enumerate() {
        if let VarName::F { i, alpha } = *name {
            let mut v = llr.get(i, alpha);
            if v.is_infinite() {
                clamped = true;
                v = v.signum() * clamp;
            }
            obj[col] = v;
        }
    }
    (obj, clamped)
}

/// The integral point of a decoding polytope corresponding to a codeword:
/// indicators from `xi(c)`, unit weight on the transmitted local codeword of
/// every check (and on its composition / auxiliary completion).
pub fn integral_point(
    code: &CodeSpec,
    lp: &LinearProgram,
    c: &[u32],
) -> Result<Vec<f64>, PolytopeError> {
    if c.len() != code.n() {
        return Err(PolytopeError::Dimension(format!(
            "codeword length {} does not match n = {}",
            c.len(),
            code.n()
        )));
    }
    let mut chi_cache: HashMap<usize, Vec<u32>> = HashMap::new();
    let mut casc_cache: Option<CascadeSpec> = None;
    let mut x = vec![0.0; lp.num_vars()];
    for (col, name) in lp.registry().names().iter().enumerate() {
        let v = match name {
            VarName::F { i, alpha } => f64::from(c[*i] == *alpha),
            VarName::W { j, word } => {
                let proj: Vec<u32> = code.support(*j).iter().map(|&i| c[i]).collect();
                f64::from(&proj == word)
            }
            VarName::Sigma { j, comp } => {
                let proj: Vec<u32> = code.support(*j).iter().map(|&i| c[i]).collect();
                let k = kappa_j(code, *j, &proj)?;
                f64::from(&k == comp)
            }
            VarName::ZU { j, i, comp, beta } => {
                let proj: Vec<u32> = code.support(*j).iter().map(|&i| c[i]).collect();
                let k = kappa_j(code, *j, &proj)?;
                f64::from(&k == comp && c[*i] == *beta && *beta != 0)
            }
            VarName::ChiF { j, l, alpha } => {
                let chi = chi_cache.entry(*j).or_insert_with(|| {
                    let proj: Vec<u32> = code.support(*j).iter().map(|&i| c[i]).collect();
                    chi_completion(code, *j, &proj).expect("projection is a local codeword")
                });
                f64::from(chi[*l] == *alpha)
            }
            VarName::WS { j, l, word } => {
                let cascade =
                    casc_cache.get_or_insert_with(|| build_cascade(code));
                let proj: Vec<u32> = code.support(*j).iter().map(|&i| c[i]).collect();
                let chi = chi_completion(code, *j, &proj)?;
                // extended word (c | chi) projected onto the sub-check support
                let row = cascade
                    .row_origin
                    .iter()
                    .position(|&(jj, ll)| jj == *j && ll == *l)
                    .expect("sub-check exists");
                let sup = cascade.code().support(row);
                let ext: Vec<u32> = sup
                    .iter()
                    .map(|&col| {
                        if col < code.n() {
                            c[col]
                        } else {
                            let pos = cascade.chi_cols[*j]
                                .iter()
                                .position(|&cc| cc == col)
                                .expect("chi column of this check");
                            chi[pos]
                        }
                    })
                    .collect();
                f64::from(&ext == word)
            }
        };
        x[col] = v;
    }
    Ok(x)
}

/// Post-solve audit of the implied box bounds on a relaxation point.
pub fn audit_bounds(lp: &LinearProgram, x: &[f64], _q: u32, tol: f64) -> bool {
    let mut block_sums: HashMap<(u8, usize, usize), f64> = HashMap::new();
    for (col, name) in lp.registry().names().iter().enumerate() {
        let v = x[col];
        if v < -tol || v > 1.0 + tol {
            return false;
        }
        match name {
            VarName::F { i, .. } => *block_sums.entry((0, *i, 0)).or_insert(0.0) += v,
            VarName::ChiF { j, l, .. } => *block_sums.entry((1, *j, *l)).or_insert(0.0) += v,
            _ => {}
        }
    }
    block_sums.values().all(|&s| s <= 1.0 + tol)
}
