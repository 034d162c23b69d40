//! Arithmetic over the ring of integers modulo `q`, parity-check codes and
//! their Tanner-graph structure, plus exhaustive codeword enumeration for
//! small block lengths.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on `q^d` for enumerating a single check's local codebook.
pub const DEFAULT_LOCAL_ENUM_CAP: u128 = 1_000_000;
/// Default cap on `q^n` for enumerating a full code.
pub const DEFAULT_GLOBAL_ENUM_CAP: u128 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u32),
    #[error("parity-check matrix must be rectangular and non-empty")]
    BadShape,
    #[error("parity-check row {0} is all zero")]
    ZeroRow(usize),
    #[error("enumeration of {0} words exceeds cap {1}")]
    EnumerationCap(u128, u128),
    #[error("circulant offset {0} out of range for block length {1}")]
    BadOffset(usize, usize),
    #[error("duplicate circulant offset {0}")]
    DuplicateOffset(usize),
    #[error("word length {0} does not match expected length {1}")]
    LengthMismatch(usize, usize),
    #[error("bad code file: {0}")]
    BadFile(String),
}

/// An element of ℤ_q, stored reduced.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct RingValue {
    value: u32,
    modulus: u32,
}

impl RingValue {
    pub fn new(value: i64, modulus: u32) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        let m = i64::from(modulus);
        let v = value.rem_euclid(m) as u32;
        RingValue { value: v, modulus }
    }

    pub fn zero(modulus: u32) -> Self {
        RingValue::new(0, modulus)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// True when the element has a multiplicative inverse in ℤ_q.
    pub fn is_unit(self) -> bool {
        gcd(self.value, self.modulus) == 1
    }

    /// `k`-fold repeated addition of `self` (ring multiple of a natural number).
    pub fn times(self, k: u64) -> Self {
        let v = (u64::from(self.value) * (k % u64::from(self.modulus))) % u64::from(self.modulus);
        RingValue { value: v as u32, modulus: self.modulus }
    }
}

impl fmt::Debug for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn check_same_modulus(a: RingValue, b: RingValue) {
    assert_eq!(a.modulus, b.modulus, "mixed moduli {} and {}", a.modulus, b.modulus);
}

impl Add for RingValue {
    type Output = RingValue;
    fn add(self, rhs: RingValue) -> RingValue {
        check_same_modulus(self, rhs);
        RingValue { value: (self.value + rhs.value) % self.modulus, modulus: self.modulus }
    }
}

impl Sub for RingValue {
    type Output = RingValue;
    fn sub(self, rhs: RingValue) -> RingValue {
        check_same_modulus(self, rhs);
        RingValue {
            value: (self.value + self.modulus - rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Mul for RingValue {
    type Output = RingValue;
    fn mul(self, rhs: RingValue) -> RingValue {
        check_same_modulus(self, rhs);
        let v = (u64::from(self.value) * u64::from(rhs.value)) % u64::from(self.modulus);
        RingValue { value: v as u32, modulus: self.modulus }
    }
}

impl Neg for RingValue {
    type Output = RingValue;
    fn neg(self) -> RingValue {
        RingValue { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn mod_add(a: u32, b: u32, q: u32) -> u32 {
    (a + b) % q
}

pub(crate) fn mod_neg(a: u32, q: u32) -> u32 {
    (q - a % q) % q
}

pub(crate) fn mod_mul(a: u32, b: u32, q: u32) -> u32 {
    ((u64::from(a) * u64::from(b)) % u64::from(q)) as u32
}

/// A linear code over ℤ_q given by a fixed parity-check matrix.
///
/// Row supports and degrees are precomputed; all entries are stored reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    q: u32,
    n: usize,
    m: usize,
    rows: Vec<Vec<u32>>,
    supports: Vec<Vec<usize>>,
}

impl CodeSpec {
    /// Builds a code from raw matrix entries, reducing them mod `q`.
    pub fn new(q: u32, entries: Vec<Vec<i64>>) -> Result<CodeSpec, CodeError> {
        if q < 2 {
            return Err(CodeError::BadModulus(q));
        }
        if entries.is_empty() || entries[0].is_empty() {
            return Err(CodeError::BadShape);
        }
        let n = entries[0].len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(CodeError::BadShape);
        }
        let m = entries.len();
        let rows: Vec<Vec<u32>> = entries
            .iter()
            .map(|r| r.iter().map(|&e| e.rem_euclid(i64::from(q)) as u32).collect())
            .collect();
        let mut supports = Vec::with_capacity(m);
        for (j, row) in rows.iter().enumerate() {
            let support: Vec<usize> =
                row.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i).collect();
            if support.is_empty() {
                return Err(CodeError::ZeroRow(j));
            }
            supports.push(support);
        }
        Ok(CodeSpec { q, n, m, rows, supports })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn row(&self, j: usize) -> &[u32] {
        &self.rows[j]
    }

    /// Support `I_j` of row `j`, in ascending column order.
    pub fn support(&self, j: usize) -> &[usize] {
        &self.supports[j]
    }

    pub fn degree(&self, j: usize) -> usize {
        self.supports[j].len()
    }

    pub fn max_degree(&self) -> usize {
        self.supports.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn coeff(&self, j: usize, i: usize) -> RingValue {
        RingValue::new(i64::from(self.rows[j][i]), self.q)
    }

    /// Column degree of symbol `i` (number of checks it participates in).
    pub fn symbol_degree(&self, i: usize) -> usize {
        self.supports.iter().filter(|s| s.binary_search(&i).is_ok()).count()
    }

    /// Design rate `(n - m) / n`; equals `log_q|C| / n` when the checks are
    /// independent (verified by enumeration on every small code we construct).
    pub fn design_rate(&self) -> f64 {
        (self.n as f64 - self.m as f64) / self.n as f64
    }

    /// Whether check `j` is satisfied by the word `c`.
    pub fn check_satisfied(&self, c: &[u32], j: usize) -> bool {
        assert!(j < self.m, "check index {} out of range (m = {})", j, self.m);
        assert_eq!(c.len(), self.n, "word length {} does not match n = {}", c.len(), self.n);
        let mut acc = 0u64;
        for &i in &self.supports[j] {
            acc += u64::from(mod_mul(c[i] % self.q, self.rows[j][i], self.q));
        }
        acc % u64::from(self.q) == 0
    }

    pub fn is_codeword(&self, c: &[u32]) -> bool {
        (0..self.m).all(|j| self.check_satisfied(c, j))
    }

    /// Exhaustively enumerates the single parity-check code of row `j`.
    pub fn local_codebook(&self, j: usize, cap: u128) -> Result<LocalCodebook, CodeError> {
        assert!(j < self.m, "check index {} out of range (m = {})", j, self.m);
        let d = self.degree(j);
        let total = (u128::from(self.q)).pow(d as u32);
        if total > cap {
            return Err(CodeError::EnumerationCap(total, cap));
        }
        let coeffs: Vec<u32> = self.supports[j].iter().map(|&i| self.rows[j][i]).collect();
        let mut words = Vec::new();
        let mut b = vec![0u32; d];
        loop {
            let sum: u64 = b.iter().zip(&coeffs).map(|(&bi, &h)| u64::from(mod_mul(bi, h, self.q))).sum();
            if sum % u64::from(self.q) == 0 {
                words.push(b.clone());
            }
            if !next_word(&mut b, self.q) {
                break;
            }
        }
        Ok(LocalCodebook { j, support: self.supports[j].clone(), words })
    }

    /// Enumerates all codewords (lexicographic order) together with the
    /// weight enumerator.
    pub fn enumerate_codewords(&self, cap: u128) -> Result<(Vec<Vec<u32>>, WeightEnumerator), CodeError> {
        let total = (u128::from(self.q)).pow(self.n as u32);
        if total > cap {
            return Err(CodeError::EnumerationCap(total, cap));
        }
        let mut words = Vec::new();
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        let mut c = vec![0u32; self.n];
        loop {
            if self.is_codeword(&c) {
                let w = c.iter().filter(|&&v| v != 0).count();
                *counts.entry(w).or_insert(0) += 1;
                words.push(c.clone());
            }
            if !next_word(&mut c, self.q) {
                break;
            }
        }
        Ok((words, WeightEnumerator { counts }))
    }
}

/// Bipartite graph of a parity-check matrix: one vertex per symbol and per
/// check, one labelled edge per nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    n: usize,
    m: usize,
    edges: Vec<(usize, usize, u32)>,
    var_adj: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn num_variables(&self) -> usize {
        self.n
    }

    pub fn num_checks(&self) -> usize {
        self.m
    }

    /// Edges `(i, j, label)` with `label = H[j][i]`, ordered by check then
    /// column.
    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }

    /// Checks adjacent to variable vertex `i`.
    pub fn variable_neighbors(&self, i: usize) -> &[usize] {
        &self.var_adj[i]
    }
}

impl CodeSpec {
    pub fn tanner_graph(&self) -> TannerGraph {
        let mut edges = Vec::new();
        let mut var_adj = vec![Vec::new(); self.n];
        for j in 0..self.m {
            for &i in &self.supports[j] {
                edges.push((i, j, self.rows[j][i]));
                var_adj[i].push(j);
            }
        }
        TannerGraph { n: self.n, m: self.m, edges, var_adj }
    }
}

/// Advances `w` to the next word of ℤ_q^len in lexicographic order
/// (leftmost symbol most significant). Returns false after the last word.
fn next_word(w: &mut [u32], q: u32) -> bool {
    for v in w.iter_mut().rev() {
        *v += 1;
        if *v < q {
            return true;
        }
        *v = 0;
    }
    false
}

/// The single parity-check code `C_j` of one matrix row, listed exhaustively.
///
/// Words are indexed by the row support and sorted lexicographically; the
/// all-zero word is always first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCodebook {
    j: usize,
    support: Vec<usize>,
    words: Vec<Vec<u32>>,
}

impl LocalCodebook {
    pub fn check_index(&self) -> usize {
        self.j
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn words(&self) -> &[Vec<u32>] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, b: &[u32]) -> Option<usize> {
        self.words.binary_search_by(|w| w.as_slice().cmp(b)).ok()
    }

    pub fn contains(&self, b: &[u32]) -> bool {
        self.position(b).is_some()
    }
}

/// Weight enumerator `W(x)`: count of codewords per Hamming weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    counts: BTreeMap<usize, u64>,
}

impl WeightEnumerator {
    pub fn from_counts(counts: BTreeMap<usize, u64>) -> Self {
        WeightEnumerator { counts }
    }

    pub fn coefficient(&self, weight: usize) -> u64 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Smallest nonzero weight with a positive count.
    pub fn minimum_distance(&self) -> Option<usize> {
        self.counts.iter().find(|(&w, &c)| w > 0 && c > 0).map(|(&w, _)| w)
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&w, &c) in &self.counts {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match w {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}x", c)?,
                _ => write!(f, "{}x^{}", c, w)?,
            }
        }
        Ok(())
    }
}

/// Right-circulant parity-check matrix: `H[j][i] = v` when
/// `(i - j) mod n` is a listed offset with value `v`.
pub fn circulant_code(q: u32, n: usize, m: usize, offsets: &[(usize, u32)]) -> Result<CodeSpec, CodeError> {
    if q < 2 {
        return Err(CodeError::BadModulus(q));
    }
    let mut seen = std::collections::BTreeSet::new();
    for &(off, _) in offsets {
        if off >= n {
            return Err(CodeError::BadOffset(off, n));
        }
        if !seen.insert(off) {
            return Err(CodeError::DuplicateOffset(off));
        }
    }
    let mut entries = vec![vec![0i64; n]; m];
    for (j, row) in entries.iter_mut().enumerate() {
        for &(off, v) in offsets {
            row[(j + off) % n] = i64::from(v % q);
        }
    }
    CodeSpec::new(q, entries)
}

/// The `[11,6]` ternary Golay code, built cyclically from the generator
/// polynomial `2 + x^2 + 2x^3 + x^4 + x^5` over ℤ_3. Parity-check rows are
/// the shifts of the reversed check polynomial `(x^11 - 1) / g(x)`.
pub fn ternary_golay() -> CodeSpec {
    let q = 3u32;
    let n = 11usize;
    let g = vec![2u32, 0, 1, 2, 1, 1];
    // x^11 - 1 over Z_3
    let mut xn1 = vec![0u32; n + 1];
    xn1[0] = q - 1;
    xn1[n] = 1;
    let h = poly_div_exact(&xn1, &g, q).expect("generator must divide x^n - 1");
    let k = h.len() - 1; // = 6
    let hrev: Vec<u32> = h.iter().rev().copied().collect();
    let m = n - k; // = 5
    let mut entries = vec![vec![0i64; n]; m];
    for (j, row) in entries.iter_mut().enumerate() {
        for (t, &c) in hrev.iter().enumerate() {
            row[j + t] = i64::from(c);
        }
    }
    CodeSpec::new(q, entries).expect("golay construction is valid")
}

/// Exact polynomial division over ℤ_q (ascending coefficients); `None` when
/// the remainder is nonzero or the divisor's leading coefficient is not a unit.
pub(crate) fn poly_div_exact(dividend: &[u32], divisor: &[u32], q: u32) -> Option<Vec<u32>> {
    let dd = dividend.len() - 1;
    let dv = divisor.len() - 1;
    if dd < dv {
        return None;
    }
    let lead = divisor[dv];
    let lead_inv = mod_inverse(lead, q)?;
    let mut rem: Vec<u32> = dividend.to_vec();
    let mut quot = vec![0u32; dd - dv + 1];
    for t in (0..=dd - dv).rev() {
        let c = mod_mul(rem[t + dv], lead_inv, q);
        quot[t] = c;
        for s in 0..=dv {
            let sub = mod_mul(c, divisor[s], q);
            rem[t + s] = mod_add(rem[t + s], mod_neg(sub, q), q);
        }
    }
    if rem.iter().any(|&r| r != 0) {
        return None;
    }
    Some(quot)
}

fn mod_inverse(a: u32, q: u32) -> Option<u32> {
    (1..q).find(|&x| mod_mul(a, x, q) == 1)
}

pub(crate) fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Basis of the nullspace of H over ℤ_q (prime `q` only): a generating set
/// for the code, used to sample uniform random codewords of large codes.
pub fn codeword_basis(code: &CodeSpec) -> Option<Vec<Vec<u32>>> {
    let q = code.q();
    if !is_prime(q) {
        return None;
    }
    let n = code.n();
    let m = code.m();
    let mut a: Vec<Vec<u32>> = (0..m).map(|j| code.row(j).to_vec()).collect();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0usize;
    for col in 0..n {
        let Some(pr) = (row..m).find(|&r| a[r][col] != 0) else { continue };
        a.swap(row, pr);
        let inv = mod_inverse(a[row][col], q).expect("prime modulus");
        for v in a[row].iter_mut() {
            *v = mod_mul(*v, inv, q);
        }
        for r in 0..m {
            if r != row && a[r][col] != 0 {
                let factor = a[r][col];
                for c in 0..n {
                    let sub = mod_mul(factor, a[row][c], q);
                    a[r][c] = mod_add(a[r][c], mod_neg(sub, q), q);
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == m {
            break;
        }
    }
    let pivot_cols: std::collections::BTreeSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u32; n];
        v[free] = 1;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = mod_neg(a[r][free], q);
        }
        basis.push(v);
    }
    Some(basis)
}

/// On-disk form of a code: either explicit rows or a right-circulant
/// shorthand mapping offsets to values.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeFile {
    pub q: u32,
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circulant: Option<BTreeMap<String, u32>>,
}

pub fn code_from_file(file: &CodeFile) -> Result<CodeSpec, CodeError> {
    let code = match (&file.rows, &file.circulant) {
        (Some(rows), None) => {
            if rows.len() != file.m || rows.iter().any(|r| r.len() != file.n) {
                return Err(CodeError::BadFile(format!(
                    "rows are {}x{}, header says {}x{}",
                    rows.len(),
                    rows.first().map_or(0, |r| r.len()),
                    file.m,
                    file.n
                )));
            }
            CodeSpec::new(file.q, rows.clone())?
        }
        (None, Some(map)) => {
            let mut offsets = Vec::with_capacity(map.len());
            for (key, &v) in map {
                let off: usize = key
                    .parse()
                    .map_err(|_| CodeError::BadFile(format!("offset key '{}' is not an integer", key)))?;
                offsets.push((off, v));
            }
            circulant_code(file.q, file.n, file.m, &offsets)?
        }
        _ => {
            return Err(CodeError::BadFile(
                "exactly one of 'rows' or 'circulant' must be present".into(),
            ))
        }
    };
    Ok(code)
}

/// Canonical (explicit-rows) file form of a code.
pub fn code_to_file(code: &CodeSpec) -> CodeFile {
    CodeFile {
        q: code.q(),
        n: code.n(),
        m: code.m(),
        rows: Some(
            (0..code.m())
                .map(|j| code.row(j).iter().map(|&v| i64::from(v)).collect())
                .collect(),
        ),
        circulant: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_code() -> CodeSpec {
        CodeSpec::new(3, vec![vec![1, 2, 2, 1], vec![2, 0, 1, 2]]).unwrap()
    }

    #[test]
    fn ring_axioms_cyclic_group() {
        for q in [2u32, 3, 4, 5] {
            for k in 0..q {
                for l in 0..q {
                    let a = RingValue::new(i64::from(k), q);
                    let b = RingValue::new(i64::from(l), q);
                    // a_k + a_l = a_{(k+l) mod q}
                    assert_eq!((a + b).value(), (k + l) % q);
                    assert_eq!((a + (-a)).value(), 0);
                    assert_eq!((a * b).value(), k * l % q);
                }
            }
        }
        assert!(RingValue::new(2, 4).is_unit() == false);
        assert!(RingValue::new(3, 4).is_unit());
        assert_eq!(RingValue::new(-1, 3).value(), 2);
    }

    #[test]
    fn build_code_supports_and_degrees() {
        let code = example_code();
        assert_eq!(code.support(0), &[0, 1, 2, 3]);
        assert_eq!(code.support(1), &[0, 2, 3]);
        assert_eq!(code.degree(0), 4);
        assert_eq!(code.degree(1), 3);
        assert_eq!(code.max_degree(), 4);
    }

    #[test]
    fn build_code_rejects_bad_input() {
        assert_eq!(CodeSpec::new(1, vec![vec![1]]).unwrap_err(), CodeError::BadModulus(1));
        assert_eq!(CodeSpec::new(3, vec![vec![1, 2], vec![1]]).unwrap_err(), CodeError::BadShape);
        assert_eq!(
            CodeSpec::new(3, vec![vec![1, 2], vec![0, 0]]).unwrap_err(),
            CodeError::ZeroRow(1)
        );
        assert_eq!(CodeSpec::new(3, vec![]).unwrap_err(), CodeError::BadShape);
    }

    #[test]
    fn build_code_smallest_and_zero_divisor() {
        let rep = CodeSpec::new(2, vec![vec![1, 1]]).unwrap();
        assert_eq!(rep.support(0), &[0, 1]);
        // 2 is a zero divisor in Z_4 but the check is still valid
        let zd = CodeSpec::new(4, vec![vec![2, 2]]).unwrap();
        assert_eq!(zd.degree(0), 2);
        // without a unit coefficient the local code is larger than q^{d-1}
        let cb = zd.local_codebook(0, DEFAULT_LOCAL_ENUM_CAP).unwrap();
        assert_eq!(cb.len(), 8);
    }

    #[test]
    fn check_satisfied_examples() {
        let code = example_code();
        assert!(code.check_satisfied(&[1, 0, 2, 1], 0));
        assert!(code.check_satisfied(&[1, 0, 2, 1], 1));
        assert!(code.check_satisfied(&[0, 0, 0, 0], 0));
        assert!(!code.check_satisfied(&[1, 0, 0, 0], 0));
    }

    #[test]
    #[should_panic(expected = "check index")]
    fn check_satisfied_index_out_of_range() {
        example_code().check_satisfied(&[0, 0, 0, 0], 2);
    }

    #[test]
    fn local_codebooks_of_example_code() {
        let code = example_code();
        let c1 = code.local_codebook(0, DEFAULT_LOCAL_ENUM_CAP).unwrap();
        assert_eq!(c1.len(), 27); // 3^{4-1}
        let c2 = code.local_codebook(1, DEFAULT_LOCAL_ENUM_CAP).unwrap();
        assert_eq!(c2.len(), 9);
        for b in [[0u32, 0, 0], [2, 0, 1], [1, 1, 0]] {
            assert!(c2.contains(&b));
        }
        // all-zero word first, linear closure
        assert_eq!(c2.words()[0], vec![0, 0, 0]);
        for a in c2.words() {
            for b in c2.words() {
                let sum: Vec<u32> = a.iter().zip(b).map(|(&x, &y)| (x + y) % 3).collect();
                assert!(c2.contains(&sum));
            }
        }
    }

    #[test]
    fn local_codebook_degree_one_unit() {
        let code = CodeSpec::new(3, vec![vec![2, 0]]).unwrap();
        let cb = code.local_codebook(0, DEFAULT_LOCAL_ENUM_CAP).unwrap();
        assert_eq!(cb.words(), &[vec![0]]);
    }

    #[test]
    fn local_codebook_cap_is_enforced() {
        let code = example_code();
        assert!(matches!(code.local_codebook(0, 80), Err(CodeError::EnumerationCap(81, 80))));
    }

    #[test]
    fn enumerate_codewords_example_code() {
        let code = example_code();
        let (words, wenum) = code.enumerate_codewords(DEFAULT_GLOBAL_ENUM_CAP).unwrap();
        assert_eq!(words.len(), 9);
        assert_eq!(wenum.total(), 9);
        assert_eq!(wenum.coefficient(0), 1);
        // closed under addition and scalar multiplication, all checks satisfied
        for a in &words {
            for b in &words {
                let sum: Vec<u32> = a.iter().zip(b).map(|(&x, &y)| (x + y) % 3).collect();
                assert!(words.contains(&sum));
            }
            for s in 0..3u32 {
                let sc: Vec<u32> = a.iter().map(|&x| x * s % 3).collect();
                assert!(words.contains(&sc));
            }
            assert!(code.is_codeword(a));
        }
    }

    #[test]
    fn identity_check_matrix_only_zero_codeword() {
        let code = CodeSpec::new(3, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let (words, _) = code.enumerate_codewords(DEFAULT_GLOBAL_ENUM_CAP).unwrap();
        assert_eq!(words, vec![vec![0, 0]]);
    }

    /// |C| * |column span of H| = q^n, with the span counted by brute-force
    /// closure. Cross-checks enumeration against an independent counting route.
    #[test]
    fn codeword_count_matches_span_count() {
        let cases = vec![
            example_code(),
            CodeSpec::new(4, vec![vec![2, 2, 1], vec![0, 1, 3]]).unwrap(),
            CodeSpec::new(2, vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap(),
        ];
        for code in cases {
            let (words, _) = code.enumerate_codewords(DEFAULT_GLOBAL_ENUM_CAP).unwrap();
            let mut span: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
            span.insert(vec![0; code.m()]);
            loop {
                let mut grew = false;
                let snapshot: Vec<Vec<u32>> = span.iter().cloned().collect();
                for v in &snapshot {
                    for i in 0..code.n() {
                        let col: Vec<u32> = (0..code.m()).map(|j| code.row(j)[i]).collect();
                        let sum: Vec<u32> =
                            v.iter().zip(&col).map(|(&a, &b)| (a + b) % code.q()).collect();
                        grew |= span.insert(sum);
                    }
                }
                if !grew {
                    break;
                }
            }
            let qn = (code.q() as u128).pow(code.n() as u32);
            assert_eq!(words.len() as u128 * span.len() as u128, qn);
        }
    }

    #[test]
    fn tanner_graph_mirrors_the_matrix() {
        let code = example_code();
        let g = code.tanner_graph();
        assert_eq!(g.num_variables(), 4);
        assert_eq!(g.num_checks(), 2);
        // edge set bijective with the nonzero entries, labels included
        let mut nonzeros: Vec<(usize, usize, u32)> = Vec::new();
        for j in 0..code.m() {
            for &i in code.support(j) {
                nonzeros.push((i, j, code.row(j)[i]));
            }
        }
        assert_eq!(g.edges(), nonzeros.as_slice());
        // neighborhood of check j is exactly its support
        for j in 0..code.m() {
            let nbrs: Vec<usize> =
                g.edges().iter().filter(|&&(_, ej, _)| ej == j).map(|&(i, _, _)| i).collect();
            assert_eq!(nbrs, code.support(j));
        }
        assert_eq!(g.variable_neighbors(1), &[0]);
        assert_eq!(g.variable_neighbors(2), &[0, 1]);
        assert_eq!(code.symbol_degree(2), 2);
    }

    #[test]
    fn circulant_matches_direct_construction() {
        let code = circulant_code(3, 4, 1, &[(0, 1)]).unwrap();
        assert_eq!(code.row(0), &[1, 0, 0, 0]);
        let err = circulant_code(3, 4, 1, &[(4, 1)]).unwrap_err();
        assert_eq!(err, CodeError::BadOffset(4, 4));
        let err = circulant_code(3, 4, 1, &[(0, 1), (0, 2)]).unwrap_err();
        assert_eq!(err, CodeError::DuplicateOffset(0));
    }

    #[test]
    fn circulant_ldpc_presets_shape() {
        let c1 = circulant_code(3, 150, 60, &[(0, 1), (51, 1), (80, 1), (8, 2), (30, 2), (90, 2)]).unwrap();
        assert_eq!((c1.q(), c1.n(), c1.m()), (3, 150, 60));
        assert_eq!(c1.degree(0), 6);
        assert_eq!(c1.row(0)[51], 1);
        assert_eq!(c1.row(0)[30], 2);
        assert_eq!(c1.row(5)[5], 1);
        assert_eq!(c1.row(5)[(5 + 90) % 150], 2);

        let c2 = circulant_code(4, 80, 32, &[(0, 1), (41, 1), (48, 1), (8, 3), (25, 3)]).unwrap();
        assert_eq!((c2.q(), c2.n(), c2.m()), (4, 80, 32));
        assert_eq!(c2.degree(0), 5);
        assert_eq!(c2.row(3)[(3 + 25) % 80], 3);
    }

    #[test]
    fn golay_weight_enumerator_and_size() {
        let golay = ternary_golay();
        assert_eq!((golay.q(), golay.n(), golay.m()), (3, 11, 5));
        let (words, wenum) = golay.enumerate_codewords(DEFAULT_GLOBAL_ENUM_CAP).unwrap();
        assert_eq!(words.len(), 729);
        let expected: Vec<(usize, u64)> =
            vec![(0, 1), (5, 132), (6, 132), (8, 330), (9, 110), (11, 24)];
        assert_eq!(
            wenum.counts().iter().map(|(&w, &c)| (w, c)).collect::<Vec<_>>(),
            expected
        );
        assert_eq!(wenum.minimum_distance(), Some(5));
        assert!((golay.design_rate() - 6.0 / 11.0).abs() < 1e-15);
    }

    #[test]
    fn codeword_basis_spans_code() {
        let code = example_code();
        let basis = codeword_basis(&code).unwrap();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(code.is_codeword(v));
        }
        // all 9 combinations reproduce the enumerated code
        let (words, _) = code.enumerate_codewords(DEFAULT_GLOBAL_ENUM_CAP).unwrap();
        let mut generated = std::collections::BTreeSet::new();
        for a in 0..3u32 {
            for b in 0..3u32 {
                let w: Vec<u32> = (0..code.n())
                    .map(|i| (a * basis[0][i] + b * basis[1][i]) % 3)
                    .collect();
                generated.insert(w);
            }
        }
        assert_eq!(generated.len(), 9);
        for w in &words {
            assert!(generated.contains(w));
        }
        // non-prime modulus unsupported
        assert!(codeword_basis(&CodeSpec::new(4, vec![vec![1, 1]]).unwrap()).is_none());
    }
}
