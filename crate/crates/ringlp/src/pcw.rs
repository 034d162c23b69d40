//! LP pseudocodewords, graph covers of the Tanner graph, and the counting
//! constructions that translate between the two representations while
//! preserving the pseudocodeword matrix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channel::LlrVector;
use crate::polytope::{LinearProgram, VarName};
use crate::ring::{CodeError, CodeSpec};
use crate::solver::ExactSolution;

#[derive(Debug, Error)]
pub enum PcwError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("invalid pseudocodeword: {0}")]
    Invalid(String),
    #[error("rational reconstruction failed for value {0}")]
    Reconstruction(f64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

// ---------------------------------------------------------------------------
// LP pseudocodewords
// ---------------------------------------------------------------------------

/// Integer pair `(h, z)` at level `M`: per-check word counts `z_{j,b}`
/// summing to `M`, with `h` their shared marginals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpPseudocodeword {
    q: u32,
    n: usize,
    h: Vec<u64>,
    z: Vec<BTreeMap<Vec<u32>, u64>>,
    m_level: u64,
}

impl LpPseudocodeword {
    pub fn new(
        q: u32,
        n: usize,
        h: Vec<u64>,
        z: Vec<BTreeMap<Vec<u32>, u64>>,
        m_level: u64,
    ) -> Self {
        assert_eq!(h.len(), n * (q as usize - 1));
        let z = z
            .into_iter()
            .map(|zj| zj.into_iter().filter(|&(_, c)| c > 0).collect())
            .collect();
        LpPseudocodeword { q, n, h, z, m_level }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m_level(&self) -> u64 {
        self.m_level
    }

    pub fn h(&self) -> &[u64] {
        &self.h
    }

    pub fn h_at(&self, i: usize, alpha: u32) -> u64 {
        debug_assert!(alpha >= 1 && alpha < self.q);
        self.h[i * (self.q as usize - 1) + alpha as usize - 1]
    }

    /// `h_i^(0) = M - sum_alpha h_i^(alpha)`; saturates at zero if invalid.
    pub fn h_zero(&self, i: usize) -> u64 {
        let s: u64 = (1..self.q).map(|a| self.h_at(i, a)).sum();
        self.m_level.saturating_sub(s)
    }

    pub fn z(&self) -> &[BTreeMap<Vec<u32>, u64>] {
        &self.z
    }

    /// The all-codeword lift: `h = M xi(c)` with unit local words scaled by M.
    pub fn codeword_lift(code: &CodeSpec, c: &[u32], m_level: u64) -> Self {
        let q = code.q();
        let mut h = vec![0u64; c.len() * (q as usize - 1)];
        for (i, &v) in c.iter().enumerate() {
            if v != 0 {
                h[i * (q as usize - 1) + v as usize - 1] = m_level;
            }
        }
        let z = (0..code.m())
            .map(|j| {
                let b: Vec<u32> = code.support(j).iter().map(|&i| c[i]).collect();
                let mut map = BTreeMap::new();
                if m_level > 0 {
                    map.insert(b, m_level);
                }
                map
            })
            .collect();
        LpPseudocodeword { q, n: c.len(), h, z, m_level }
    }

    pub fn matrix(&self) -> PcwMatrix {
        let rows = (0..self.n)
            .map(|i| {
                let mut row = Vec::with_capacity(self.q as usize);
                row.push(self.h_zero(i));
                for alpha in 1..self.q {
                    row.push(self.h_at(i, alpha));
                }
                row
            })
            .collect();
        PcwMatrix { n: self.n, q: self.q, m_level: self.m_level, rows }
    }
}

/// The `n x q` count matrix; rows of the normalized form are probability
/// distributions over ℤ_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcwMatrix {
    n: usize,
    q: u32,
    m_level: u64,
    rows: Vec<Vec<u64>>,
}

impl PcwMatrix {
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn m_level(&self) -> u64 {
        self.m_level
    }

    pub fn normalized(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&c| c as f64 / self.m_level as f64).collect())
            .collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct Validation {
    pub valid: bool,
    pub violations: Vec<String>,
}

/// Checks the two defining equality families plus the derived bounds.
pub fn validate_lp_pcw(code: &CodeSpec, pcw: &LpPseudocodeword) -> Validation {
    let mut violations = Vec::new();
    if pcw.q != code.q() || pcw.n != code.n() || pcw.z.len() != code.m() {
        violations.push("shape mismatch with code".to_string());
        return Validation { valid: false, violations };
    }
    let m_level = pcw.m_level;
    for (j, zj) in pcw.z.iter().enumerate() {
        let d = code.degree(j);
        let mut total = 0u64;
        for (b, &count) in zj {
            if b.len() != d || !code.check_satisfied(&expand(code, j, b), j) {
                violations.push(format!("z[{}] key {:?} is not a local codeword", j, b));
            }
            if count > m_level {
                violations.push(format!("z[{}][{:?}] = {} exceeds M = {}", j, b, count, m_level));
            }
            total += count;
        }
        if total != m_level {
            violations.push(format!("sum of z[{}] = {} differs from M = {}", j, total, m_level));
        }
        for (pos, &i) in code.support(j).iter().enumerate() {
            for alpha in 1..code.q() {
                let marg: u64 =
                    zj.iter().filter(|(b, _)| b[pos] == alpha).map(|(_, &c)| c).sum();
                if marg != pcw.h_at(i, alpha) {
                    violations.push(format!(
                        "marginal mismatch at (j={}, i={}, alpha={}): z gives {}, h gives {}",
                        j,
                        i,
                        alpha,
                        marg,
                        pcw.h_at(i, alpha)
                    ));
                }
            }
        }
    }
    for i in 0..pcw.n {
        let s: u64 = (1..pcw.q).map(|a| pcw.h_at(i, a)).sum();
        if s > m_level {
            violations.push(format!("block sum at symbol {} exceeds M", i));
        }
    }
    Validation { valid: violations.is_empty(), violations }
}

fn expand(code: &CodeSpec, j: usize, b: &[u32]) -> Vec<u32> {
    let mut c = vec![0u32; code.n()];
    for (pos, &i) in code.support(j).iter().enumerate() {
        c[i] = b[pos];
    }
    c
}

/// Cost of a pseudocodeword under a cost vector: the inner product over the
/// nonzero-symbol entries of `h`.
pub fn pcw_cost(llr: &LlrVector, pcw: &LpPseudocodeword) -> f64 {
    let mut cost = 0.0;
    for i in 0..pcw.n {
        for alpha in 1..pcw.q {
            let hv = pcw.h_at(i, alpha);
            if hv > 0 {
                cost += llr.get(i, alpha) * hv as f64;
            }
        }
    }
    cost
}

// ---------------------------------------------------------------------------
// Extraction from relaxation optima
// ---------------------------------------------------------------------------

/// Scales an exact-rational point of polytope Q by the lowest common
/// denominator of its entries.
pub fn from_exact_solution(
    code: &CodeSpec,
    lp: &LinearProgram,
    exact: &ExactSolution,
) -> Result<LpPseudocodeword, PcwError> {
    let ratios: Vec<(usize, BigRational)> =
        exact.x.iter().cloned().enumerate().collect();
    from_rational_point(code, lp, &ratios)
}

/// Reconstructs rationals (denominator at most `max_den`) from a float point
/// of polytope Q and scales by their lowest common denominator.
pub fn from_float_solution(
    code: &CodeSpec,
    lp: &LinearProgram,
    x: &[f64],
    max_den: u64,
) -> Result<LpPseudocodeword, PcwError> {
    let mut ratios = Vec::with_capacity(x.len());
    for (col, &v) in x.iter().enumerate() {
        let (p, den) = reconstruct_rational(v, max_den).ok_or(PcwError::Reconstruction(v))?;
        ratios.push((
            col,
            BigRational::new(BigInt::from(p), BigInt::from(den)),
        ));
    }
    from_rational_point(code, lp, &ratios)
}

fn from_rational_point(
    code: &CodeSpec,
    lp: &LinearProgram,
    x: &[(usize, BigRational)],
) -> Result<LpPseudocodeword, PcwError> {
    let q = code.q();
    let n = code.n();
    let mut lcd = BigInt::from(1);
    for (col, v) in x {
        if v.is_negative() {
            return Err(PcwError::Invalid(format!(
                "negative coordinate {} at column {}",
                v, col
            )));
        }
        match lp.registry().name(*col) {
            VarName::F { .. } | VarName::W { .. } => {
                lcd = lcd.lcm(v.denom());
            }
            _ => {}
        }
    }
    let m_level = lcd
        .to_u64()
        .ok_or_else(|| PcwError::Invalid(format!("common denominator {} too large", lcd)))?;
    let scale = BigRational::from_integer(lcd);
    let mut h = vec![0u64; n * (q as usize - 1)];
    let mut z: Vec<BTreeMap<Vec<u32>, u64>> = vec![BTreeMap::new(); code.m()];
    for (col, v) in x {
        if v.is_zero() {
            continue;
        }
        let scaled = v * &scale;
        if !scaled.is_integer() {
            return Err(PcwError::Invalid("scaling did not clear denominators".into()));
        }
        let count = scaled
            .to_integer()
            .to_u64()
            .ok_or_else(|| PcwError::Invalid("scaled coordinate exceeds u64".into()))?;
        match lp.registry().name(*col) {
            VarName::F { i, alpha } => h[i * (q as usize - 1) + *alpha as usize - 1] = count,
            VarName::W { j, word } => {
                z[*j].insert(word.clone(), count);
            }
            _ => {}
        }
    }
    let pcw = LpPseudocodeword::new(q, n, h, z, m_level);
    let check = validate_lp_pcw(code, &pcw);
    if !check.valid {
        return Err(PcwError::Invalid(check.violations.join("; ")));
    }
    Ok(pcw)
}

/// Best rational approximation with bounded denominator, by continued
/// fractions; `None` when no denominator up to the bound comes within 1e-7.
fn reconstruct_rational(x: f64, max_den: u64) -> Option<(i64, u64)> {
    if !x.is_finite() {
        return None;
    }
    let neg = x < 0.0;
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e18 {
            break;
        }
        let ai = a as i128;
        let (p2, q2) = (ai * p1 + p0, ai * q1 + q0);
        if q2 as u128 > u128::from(max_den) {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a;
        if frac < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    let approx = p1 as f64 / q1 as f64;
    if (approx - x.abs()).abs() > 1e-7 {
        return None;
    }
    let p = if neg { -(p1 as i64) } else { p1 as i64 };
    Some((p, q1 as u64))
}

// ---------------------------------------------------------------------------
// Graph covers
// ---------------------------------------------------------------------------

/// A degree-M cover of the Tanner graph, stored as one permutation per edge:
/// variable copy `l` of `u_i` attaches to check copy `perm[l]` of `v_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCover {
    m_level: usize,
    perms: BTreeMap<(usize, usize), Vec<usize>>,
}

impl GraphCover {
    pub fn identity(code: &CodeSpec, m_level: usize) -> Self {
        let mut perms = BTreeMap::new();
        for j in 0..code.m() {
            for &i in code.support(j) {
                perms.insert((j, i), (0..m_level).collect());
            }
        }
        GraphCover { m_level, perms }
    }

    pub fn from_perms(m_level: usize, perms: BTreeMap<(usize, usize), Vec<usize>>) -> Self {
        for perm in perms.values() {
            assert_eq!(perm.len(), m_level);
            let mut seen = vec![false; m_level];
            for &t in perm {
                assert!(t < m_level && !seen[t], "not a permutation");
                seen[t] = true;
            }
        }
        GraphCover { m_level, perms }
    }

    pub fn degree(&self) -> usize {
        self.m_level
    }

    pub fn perms(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.perms
    }

    fn inverse_perm(&self, j: usize, i: usize) -> Vec<usize> {
        let perm = &self.perms[&(j, i)];
        let mut inv = vec![0usize; self.m_level];
        for (l, &t) in perm.iter().enumerate() {
            inv[t] = l;
        }
        inv
    }

    /// Parity-check matrix of the cover code: `M` copies of every symbol and
    /// check, wired per the edge permutations.
    pub fn cover_code(&self, code: &CodeSpec) -> CodeSpec {
        let m_lvl = self.m_level;
        let mut rows = vec![vec![0i64; code.n() * m_lvl]; code.m() * m_lvl];
        for j in 0..code.m() {
            for &i in code.support(j) {
                let perm = &self.perms[&(j, i)];
                for (l, &t) in perm.iter().enumerate() {
                    rows[j * m_lvl + t][i * m_lvl + l] = i64::from(code.row(j)[i]);
                }
            }
        }
        CodeSpec::new(code.q(), rows).expect("cover rows inherit nonzero entries")
    }
}

/// Uniformly random permutations on every Tanner edge.
pub fn random_cover<R: Rng + ?Sized>(code: &CodeSpec, m_level: usize, rng: &mut R) -> GraphCover {
    let mut perms = BTreeMap::new();
    for j in 0..code.m() {
        for &i in code.support(j) {
            let mut perm: Vec<usize> = (0..m_level).collect();
            // Fisher-Yates
            for l in (1..m_level).rev() {
                let t = rng.random_range(0..=l);
                perm.swap(l, t);
            }
            perms.insert((j, i), perm);
        }
    }
    GraphCover { m_level, perms }
}

/// A ℤ_q labelling of the variable copies of a cover with every check copy
/// satisfied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCoverPcw {
    cover: GraphCover,
    /// `labels[i][l]` is the label of copy `l` of symbol `i`.
    labels: Vec<Vec<u32>>,
}

impl GraphCoverPcw {
    pub fn new(cover: GraphCover, labels: Vec<Vec<u32>>) -> Self {
        GraphCoverPcw { cover, labels }
    }

    pub fn cover(&self) -> &GraphCover {
        &self.cover
    }

    pub fn labels(&self) -> &[Vec<u32>] {
        &self.labels
    }

    pub fn validate(&self, code: &CodeSpec) -> Validation {
        let mut violations = Vec::new();
        let m_lvl = self.cover.m_level;
        if self.labels.len() != code.n() || self.labels.iter().any(|l| l.len() != m_lvl) {
            violations.push("label shape mismatch".into());
            return Validation { valid: false, violations };
        }
        let q = u64::from(code.q());
        for j in 0..code.m() {
            let invs: Vec<(usize, Vec<usize>)> = code
                .support(j)
                .iter()
                .map(|&i| (i, self.cover.inverse_perm(j, i)))
                .collect();
            for t in 0..m_lvl {
                let mut acc = 0u64;
                for (i, inv) in &invs {
                    let label = self.labels[*i][inv[t]];
                    acc += u64::from(label) * u64::from(code.row(j)[*i]);
                }
                if acc % q != 0 {
                    violations.push(format!("check copy ({}, {}) unsatisfied", j, t));
                }
            }
        }
        Validation { valid: violations.is_empty(), violations }
    }

    pub fn matrix(&self, q: u32) -> PcwMatrix {
        let m_lvl = self.cover.m_level;
        let rows = self
            .labels
            .iter()
            .map(|li| {
                let mut row = vec![0u64; q as usize];
                for &v in li {
                    row[v as usize] += 1;
                }
                row
            })
            .collect();
        PcwMatrix { n: self.labels.len(), q, m_level: m_lvl as u64, rows }
    }
}

/// Builds a cover pseudocodeword from an LP pseudocodeword: label `h_i^(a)`
/// variable copies with `a` (ascending by value), `z_{j,b}` check copies with
/// `b` (codewords in lexicographic order), and match compatible copies
/// first-free in ascending copy order.
pub fn lp_to_cover(code: &CodeSpec, pcw: &LpPseudocodeword) -> Result<GraphCoverPcw, PcwError> {
    let check = validate_lp_pcw(code, pcw);
    if !check.valid {
        return Err(PcwError::Invalid(check.violations.join("; ")));
    }
    let q = code.q();
    let m_lvl = pcw.m_level as usize;
    // variable-copy labels, ascending symbol value
    let mut labels: Vec<Vec<u32>> = Vec::with_capacity(code.n());
    for i in 0..code.n() {
        let mut li = Vec::with_capacity(m_lvl);
        for _ in 0..pcw.h_zero(i) {
            li.push(0);
        }
        for alpha in 1..q {
            for _ in 0..pcw.h_at(i, alpha) {
                li.push(alpha);
            }
        }
        debug_assert_eq!(li.len(), m_lvl);
        labels.push(li);
    }
    // check-copy labels, lexicographic word order
    let mut check_labels: Vec<Vec<&Vec<u32>>> = Vec::with_capacity(code.m());
    for zj in pcw.z.iter() {
        let mut cl = Vec::with_capacity(m_lvl);
        for (b, &count) in zj {
            for _ in 0..count {
                cl.push(b);
            }
        }
        check_labels.push(cl);
    }
    // first-free matching of compatible copies per edge
    let mut perms = BTreeMap::new();
    for j in 0..code.m() {
        for (pos, &i) in code.support(j).iter().enumerate() {
            let mut next: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
            for (t, b) in check_labels[j].iter().enumerate() {
                next.entry(b[pos]).or_default().push(t);
            }
            let mut cursors: BTreeMap<u32, usize> = BTreeMap::new();
            let mut perm = vec![usize::MAX; m_lvl];
            for (l, &alpha) in labels[i].iter().enumerate() {
                let pool = next.get(&alpha).ok_or_else(|| {
                    PcwError::Invalid(format!(
                        "no check copy of ({}, value {}) available at symbol {}",
                        j, alpha, i
                    ))
                })?;
                let cur = cursors.entry(alpha).or_insert(0);
                perm[l] = pool[*cur];
                *cur += 1;
            }
            perms.insert((j, i), perm);
        }
    }
    let cover = GraphCover::from_perms(m_lvl, perms);
    let gc = GraphCoverPcw { cover, labels };
    debug_assert!(gc.validate(code).valid);
    Ok(gc)
}

/// Reads an LP pseudocodeword off a cover labelling by counting labelled
/// variable copies and induced check-copy words.
pub fn cover_to_lp(code: &CodeSpec, gc: &GraphCoverPcw) -> Result<LpPseudocodeword, PcwError> {
    let check = gc.validate(code);
    if !check.valid {
        return Err(PcwError::Invalid(check.violations.join("; ")));
    }
    let q = code.q();
    let m_lvl = gc.cover.m_level;
    let mut h = vec![0u64; code.n() * (q as usize - 1)];
    for (i, li) in gc.labels.iter().enumerate() {
        for &v in li {
            if v != 0 {
                h[i * (q as usize - 1) + v as usize - 1] += 1;
            }
        }
    }
    let mut z: Vec<BTreeMap<Vec<u32>, u64>> = vec![BTreeMap::new(); code.m()];
    for j in 0..code.m() {
        let invs: Vec<(usize, Vec<usize>)> = code
            .support(j)
            .iter()
            .map(|&i| (i, gc.cover.inverse_perm(j, i)))
            .collect();
        for t in 0..m_lvl {
            let b: Vec<u32> = invs.iter().map(|(i, inv)| gc.labels[*i][inv[t]]).collect();
            *z[j].entry(b).or_insert(0) += 1;
        }
    }
    let pcw = LpPseudocodeword::new(q, code.n(), h, z, m_lvl as u64);
    let check = validate_lp_pcw(code, &pcw);
    if !check.valid {
        return Err(PcwError::Invalid(check.violations.join("; ")));
    }
    Ok(pcw)
}

/// All satisfying labellings of a cover, by exhaustive search over
/// `q^(M n)` label vectors.
pub fn enumerate_cover_pcws(
    code: &CodeSpec,
    cover: &GraphCover,
    cap: u128,
) -> Result<Vec<GraphCoverPcw>, PcwError> {
    let q = code.q();
    let m_lvl = cover.m_level;
    let slots = code.n() * m_lvl;
    let total = u128::from(q).pow(slots as u32);
    if total > cap {
        return Err(PcwError::Code(CodeError::EnumerationCap(total, cap)));
    }
    let cover_code = cover.cover_code(code);
    let mut out = Vec::new();
    let mut flat = vec![0u32; slots];
    loop {
        if cover_code.is_codeword(&flat) {
            let labels: Vec<Vec<u32>> =
                flat.chunks(m_lvl).map(|c| c.to_vec()).collect();
            out.push(GraphCoverPcw { cover: cover.clone(), labels });
        }
        let mut pos = slots;
        let done = loop {
            if pos == 0 {
                break true;
            }
            pos -= 1;
            flat[pos] += 1;
            if flat[pos] < q {
                break false;
            }
            flat[pos] = 0;
        };
        if done {
            return Ok(out);
        }
    }
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

/// JSON form of an LP pseudocodeword; check indices are 1-based on disk.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PcwFile {
    #[serde(rename = "M")]
    pub m: u64,
    pub h: Vec<u64>,
    pub z: Vec<PcwZEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PcwZEntry {
    pub j: usize,
    pub b: Vec<u32>,
    pub count: u64,
}

pub fn pcw_to_file(pcw: &LpPseudocodeword) -> PcwFile {
    let mut z = Vec::new();
    for (j, zj) in pcw.z.iter().enumerate() {
        for (b, &count) in zj {
            z.push(PcwZEntry { j: j + 1, b: b.clone(), count });
        }
    }
    PcwFile { m: pcw.m_level, h: pcw.h.clone(), z }
}

pub fn pcw_from_file(code: &CodeSpec, file: &PcwFile) -> Result<LpPseudocodeword, PcwError> {
    let q = code.q();
    if file.h.len() != code.n() * (q as usize - 1) {
        return Err(PcwError::Dimension(format!(
            "h has {} entries, expected {}",
            file.h.len(),
            code.n() * (q as usize - 1)
        )));
    }
    let mut z: Vec<BTreeMap<Vec<u32>, u64>> = vec![BTreeMap::new(); code.m()];
    for e in &file.z {
        if e.j == 0 || e.j > code.m() {
            return Err(PcwError::Dimension(format!("check index {} out of range", e.j)));
        }
        *z[e.j - 1].entry(e.b.clone()).or_insert(0) += e.count;
    }
    let pcw = LpPseudocodeword::new(q, code.n(), file.h.clone(), z, file.m);
    let check = validate_lp_pcw(code, &pcw);
    if !check.valid {
        return Err(PcwError::Invalid(check.violations.join("; ")));
    }
    Ok(pcw)
}

/// JSON form of a cover pseudocodeword; indices 1-based on disk.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverFile {
    #[serde(rename = "M")]
    pub m: usize,
    pub labels: Vec<Vec<u32>>,
    pub perms: Vec<CoverEdge>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverEdge {
    pub j: usize,
    pub i: usize,
    pub perm: Vec<usize>,
}

pub fn cover_to_file(gc: &GraphCoverPcw) -> CoverFile {
    let perms = gc
        .cover
        .perms
        .iter()
        .map(|(&(j, i), perm)| CoverEdge {
            j: j + 1,
            i: i + 1,
            perm: perm.iter().map(|&t| t + 1).collect(),
        })
        .collect();
    CoverFile { m: gc.cover.m_level, labels: gc.labels.clone(), perms }
}

pub fn cover_from_file(code: &CodeSpec, file: &CoverFile) -> Result<GraphCoverPcw, PcwError> {
    let mut perms = BTreeMap::new();
    for e in &file.perms {
        if e.j == 0 || e.j > code.m() || e.i == 0 || e.i > code.n() {
            return Err(PcwError::Dimension(format!("edge ({}, {}) out of range", e.j, e.i)));
        }
        let perm: Vec<usize> = e
            .perm
            .iter()
            .map(|&t| {
                if t == 0 || t > file.m {
                    Err(PcwError::Dimension(format!("copy index {} out of range", t)))
                } else {
                    Ok(t - 1)
                }
            })
            .collect::<Result<_, _>>()?;
        perms.insert((e.j - 1, e.i - 1), perm);
    }
    // every Tanner edge must be present
    for j in 0..code.m() {
        for &i in code.support(j) {
            if !perms.contains_key(&(j, i)) {
                return Err(PcwError::Dimension(format!("missing edge ({}, {})", j + 1, i + 1)));
            }
        }
    }
    let cover = GraphCover::from_perms(file.m, perms);
    let gc = GraphCoverPcw { cover, labels: file.labels.clone() };
    let check = gc.validate(code);
    if !check.valid {
        return Err(PcwError::Invalid(check.violations.join("; ")));
    }
    Ok(gc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{build_q, objective_from_llr};
    use crate::ring::DEFAULT_LOCAL_ENUM_CAP;
    use crate::solver::{solve, SolverConfig};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn example_code() -> CodeSpec {
        CodeSpec::new(3, vec![vec![1, 2, 2, 1], vec![2, 0, 1, 2]]).unwrap()
    }

    /// The worked M = 4 pseudocodeword of the example code.
    fn example_pcw(code: &CodeSpec) -> LpPseudocodeword {
        let h = vec![2, 2, 2, 2, 2, 0, 2, 0]; // (h^1, h^2) per symbol
        let mut z1 = BTreeMap::new();
        z1.insert(vec![2, 1, 1, 0], 2);
        z1.insert(vec![1, 2, 0, 1], 2);
        let mut z2 = BTreeMap::new();
        z2.insert(vec![2, 0, 1], 2);
        z2.insert(vec![1, 1, 0], 2);
        LpPseudocodeword::new(code.q(), code.n(), h, vec![z1, z2], 4)
    }

    #[test]
    fn example_pcw_validates_with_expected_matrix() {
        let code = example_code();
        let pcw = example_pcw(&code);
        let v = validate_lp_pcw(&code, &pcw);
        assert!(v.valid, "{:?}", v.violations);
        let expected = vec![
            vec![0, 2, 2],
            vec![0, 2, 2],
            vec![2, 2, 0],
            vec![2, 2, 0],
        ];
        assert_eq!(pcw.matrix().rows(), expected.as_slice());
        let norm = pcw.matrix().normalized();
        assert_eq!(norm[0], vec![0.0, 0.5, 0.5]);
        assert_eq!(norm[2], vec![0.5, 0.5, 0.0]);
        for row in &norm {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_pcw_is_valid() {
        let code = example_code();
        let pcw = LpPseudocodeword::new(3, 4, vec![0; 8], vec![BTreeMap::new(); 2], 0);
        assert!(validate_lp_pcw(&code, &pcw).valid);
    }

    #[test]
    fn decremented_count_reports_marginal_violation() {
        let code = example_code();
        let mut pcw = example_pcw(&code);
        let key = vec![2u32, 0, 1];
        *pcw.z[1].get_mut(&key).unwrap() -= 1;
        let v = validate_lp_pcw(&code, &pcw);
        assert!(!v.valid);
        assert!(v.violations.iter().any(|s| s.contains("marginal mismatch")));
        assert!(v.violations.iter().any(|s| s.contains("sum of z[1]")));
    }

    #[test]
    fn extraction_from_integral_and_half_points() {
        let code = example_code();
        let lp = build_q(&code, DEFAULT_LOCAL_ENUM_CAP).unwrap();
        // integral codeword point: M = 1
        let c = vec![1, 0, 2, 1];
        let x = crate::polytope::integral_point(&code, &lp, &c).unwrap();
        let pcw = from_float_solution(&code, &lp, &x, 1_000_000).unwrap();
        assert_eq!(pcw.m_level(), 1);
        assert_eq!(pcw.h_at(0, 1), 1);
        assert_eq!(pcw.h_at(2, 2), 1);

        // the normalized example point (entries in {0, 1/2}) lifts at M = 2
        // to the same matrix as the worked M = 4 pseudocodeword
        let worked = example_pcw(&code);
        let mut x = vec![0.0; lp.num_vars()];
        for (col, name) in lp.registry().names().iter().enumerate() {
            match name {
                VarName::F { i, alpha } => {
                    x[col] = worked.h_at(*i, *alpha) as f64 / 4.0;
                }
                VarName::W { j, word } => {
                    x[col] = worked.z()[*j].get(word).copied().unwrap_or(0) as f64 / 4.0;
                }
                _ => {}
            }
        }
        let lifted = from_float_solution(&code, &lp, &x, 1_000_000).unwrap();
        assert_eq!(lifted.m_level(), 2);
        assert_eq!(lifted.matrix().normalized(), worked.matrix().normalized());
        assert!(validate_lp_pcw(&code, &lifted).valid);
    }

    #[test]
    fn rational_reconstruction_bounds() {
        assert_eq!(reconstruct_rational(0.5, 10), Some((1, 2)));
        assert_eq!(reconstruct_rational(1.0 / 3.0, 100), Some((1, 3)));
        assert_eq!(reconstruct_rational(0.0, 10), Some((0, 1)));
        // an irrational-looking float fails under a small denominator bound
        assert_eq!(reconstruct_rational(0.7071067811865476, 100), None);
    }

    #[test]
    fn lift_matches_worked_cover() {
        let code = example_code();
        let pcw = example_pcw(&code);
        let gc = lp_to_cover(&code, &pcw).unwrap();
        assert!(gc.validate(&code).valid);
        assert_eq!(gc.cover().degree(), 4);
        // deterministic fill reproduces the worked labelling
        assert_eq!(
            gc.labels(),
            &[
                vec![1, 1, 2, 2],
                vec![1, 1, 2, 2],
                vec![0, 0, 1, 1],
                vec![0, 0, 1, 1]
            ]
        );
        assert_eq!(gc.matrix(3), pcw.matrix());
        // and maps back to the identical (h, z, M)
        let back = cover_to_lp(&code, &gc).unwrap();
        assert_eq!(back, pcw);
    }

    #[test]
    fn codeword_lift_is_the_base_graph() {
        let code = example_code();
        let c = vec![1, 0, 2, 1];
        let pcw = LpPseudocodeword::codeword_lift(&code, &c, 1);
        assert!(validate_lp_pcw(&code, &pcw).valid);
        let gc = lp_to_cover(&code, &pcw).unwrap();
        assert_eq!(gc.cover().degree(), 1);
        for (i, li) in gc.labels().iter().enumerate() {
            assert_eq!(li, &vec![c[i]]);
        }
        // any level: h = M xi(c)
        let pcw3 = LpPseudocodeword::codeword_lift(&code, &c, 3);
        assert!(validate_lp_pcw(&code, &pcw3).valid);
        assert_eq!(pcw3.h_at(0, 1), 3);
        let gc3 = lp_to_cover(&code, &pcw3).unwrap();
        assert_eq!(cover_to_lp(&code, &gc3).unwrap(), pcw3);
    }

    #[test]
    fn identity_two_cover_enumerates_codeword_pairs() {
        let code = example_code();
        let cover = GraphCover::identity(&code, 2);
        let pcws = enumerate_cover_pcws(&code, &cover, 1 << 24).unwrap();
        // two disjoint copies of the base graph: pairs of codewords
        assert_eq!(pcws.len(), 81);
        let (words, _) = code.enumerate_codewords(1 << 20).unwrap();
        for gc in &pcws {
            let first: Vec<u32> = gc.labels().iter().map(|l| l[0]).collect();
            let second: Vec<u32> = gc.labels().iter().map(|l| l[1]).collect();
            assert!(words.contains(&first) && words.contains(&second));
            // vector m agrees with the counting construction
            let back = cover_to_lp(&code, gc).unwrap();
            assert_eq!(back.matrix(), gc.matrix(3));
        }
    }

    #[test]
    fn one_cover_pcws_are_exactly_codewords() {
        let code = example_code();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let cover = random_cover(&code, 1, &mut rng);
        let pcws = enumerate_cover_pcws(&code, &cover, 1 << 20).unwrap();
        let (words, _) = code.enumerate_codewords(1 << 20).unwrap();
        let labelled: Vec<Vec<u32>> =
            pcws.iter().map(|gc| gc.labels().iter().map(|l| l[0]).collect()).collect();
        assert_eq!(labelled, words);
    }

    #[test]
    fn random_three_cover_pcws_validate_and_roundtrip() {
        let code = example_code();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let cover = random_cover(&code, 3, &mut rng);
        let pcws = enumerate_cover_pcws(&code, &cover, 1 << 26).unwrap();
        assert!(!pcws.is_empty());
        for gc in pcws.iter().take(50) {
            let pcw = cover_to_lp(&code, gc).unwrap();
            assert!(validate_lp_pcw(&code, &pcw).valid);
            assert_eq!(pcw.matrix(), gc.matrix(3));
            // matrix is preserved through the reverse construction
            let gc2 = lp_to_cover(&code, &pcw).unwrap();
            assert_eq!(gc2.matrix(3), pcw.matrix());
            assert_eq!(cover_to_lp(&code, &gc2).unwrap(), pcw);
        }
    }

    #[test]
    fn cost_of_lifted_codewords_scales_linearly() {
        let code = example_code();
        let llr = LlrVector::from_values(3, 4, vec![0.4, -1.2, 2.0, 0.7, -0.3, 0.1, 0.9, -0.5]);
        let zero = LpPseudocodeword::new(3, 4, vec![0; 8], vec![BTreeMap::new(); 2], 0);
        assert_eq!(pcw_cost(&llr, &zero), 0.0);
        let c = vec![1, 0, 2, 1];
        for m in [1u64, 4] {
            let pcw = LpPseudocodeword::codeword_lift(&code, &c, m);
            let cost = pcw_cost(&llr, &pcw);
            assert!((cost - m as f64 * llr.codeword_cost(&c)).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_extraction_from_solver_output() {
        let code = example_code();
        let lp = build_q(&code, DEFAULT_LOCAL_ENUM_CAP).unwrap();
        // adversarial cost with a fractional optimum
        let llr = LlrVector::from_values(3, 4, vec![-1.0, -1.0, -1.0, -1.0, 1.9, 5.0, 1.9, 5.0]);
        let mut lp = lp;
        let (obj, _) = objective_from_llr(&llr, lp.registry(), 1e9);
        lp.set_objective(obj);
        let sol = solve(&lp, &SolverConfig::exact());
        let exact = sol.exact.as_ref().unwrap();
        let pcw = from_exact_solution(&code, &lp, exact).unwrap();
        assert!(pcw.m_level() >= 2);
        assert!(pcw_cost(&llr, &pcw) <= 1e-12);
        assert!(validate_lp_pcw(&code, &pcw).valid);
    }

    #[test]
    fn json_roundtrip() {
        let code = example_code();
        let pcw = example_pcw(&code);
        let file = pcw_to_file(&pcw);
        let text = serde_json::to_string(&file).unwrap();
        let parsed: PcwFile = serde_json::from_str(&text).unwrap();
        let back = pcw_from_file(&code, &parsed).unwrap();
        assert_eq!(back, pcw);

        let gc = lp_to_cover(&code, &pcw).unwrap();
        let cf = cover_to_file(&gc);
        let text = serde_json::to_string(&cf).unwrap();
        let parsed: CoverFile = serde_json::from_str(&text).unwrap();
        let back = cover_from_file(&code, &parsed).unwrap();
        assert_eq!(back, gc);
    }
}
