//! The end-to-end LP decoder: build a relaxation, minimize the LLR cost over
//! it, and classify the result. A brute-force maximum-likelihood oracle backs
//! the certificate checks on small codes.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::channel::LlrVector;
use crate::polytope::{
    self, audit_bounds, build_q, build_s, build_u, objective_from_llr, IndicatorVector,
    LinearProgram, PolytopeError,
};
use crate::ring::{CodeError, CodeSpec, DEFAULT_LOCAL_ENUM_CAP};
use crate::solver::{self, Solution, SolverConfig, Status};

#[derive(Debug, Error)]
pub enum DecodeError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("solver returned {0:?} on a decoding program (zero codeword is always feasible)")]
    Solver(Status),
    #[error("integral relaxation point failed codeword verification")]
    IntegralNotCodeword,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolytopeKind {
    Q,
    U,
    S,
}

impl fmt::Display for PolytopeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeKind::Q => write!(f, "Q"),
            PolytopeKind::U => write!(f, "U"),
            PolytopeKind::S => write!(f, "S"),
        }
    }
}

impl FromStr for PolytopeKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "Q" | "q" => Ok(PolytopeKind::Q),
            "U" | "u" => Ok(PolytopeKind::U),
            "S" | "s" => Ok(PolytopeKind::S),
            other => Err(format!("unknown polytope kind '{other}' (expected Q, U or S)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecodeConfig {
    pub solver: SolverConfig,
    pub local_enum_cap: u128,
    pub inf_clamp: f64,
}

impl Default for DecodeConfig {
    fn default() -> Self {
        DecodeConfig {
            solver: SolverConfig::default(),
            local_enum_cap: DEFAULT_LOCAL_ENUM_CAP,
            inf_clamp: polytope::DEFAULT_INF_CLAMP,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum OutcomeKind {
    Codeword(Vec<u32>),
    /// Fractional optimum: the indicator block of the original symbols.
    Failure { f: Vec<f64> },
}

#[derive(Clone, Debug)]
pub struct DecodeOutcome {
    pub kind: OutcomeKind,
    pub objective: f64,
    pub polytope: PolytopeKind,
    pub iterations: usize,
    pub clamped: bool,
}

impl DecodeOutcome {
    pub fn codeword(&self) -> Option<&[u32]> {
        match &self.kind {
            OutcomeKind::Codeword(c) => Some(c),
            OutcomeKind::Failure { .. } => None,
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self.kind, OutcomeKind::Failure { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    CorrectDecoding,
    IncorrectDecoding,
    DecodingFailure,
}

impl Classification {
    pub fn is_codeword_error(self) -> bool {
        self != Classification::CorrectDecoding
    }
}

/// A relaxation built once and re-solved for many cost vectors.
#[derive(Clone)]
pub struct PreparedDecoder {
    code: CodeSpec,
    kind: PolytopeKind,
    config: DecodeConfig,
    lp: LinearProgram,
    f_cols: Vec<usize>,
}

impl PreparedDecoder {
    pub fn new(
        code: &CodeSpec,
        kind: PolytopeKind,
        config: DecodeConfig,
    ) -> Result<Self, DecodeError> {
        let lp = match kind {
            PolytopeKind::Q => build_q(code, config.local_enum_cap)?,
            PolytopeKind::U => build_u(code)?,
            PolytopeKind::S => build_s(code, config.local_enum_cap)?,
        };
        let f_cols = lp.registry().f_block(code.q(), code.n());
        Ok(PreparedDecoder { code: code.clone(), kind, config, lp, f_cols })
    }

    pub fn lp(&self) -> &LinearProgram {
        &self.lp
    }

    pub fn code(&self) -> &CodeSpec {
        &self.code
    }

    pub fn decode(&mut self, llr: &LlrVector) -> Result<DecodeOutcome, DecodeError> {
        self.decode_with_solution(llr).map(|(outcome, _)| outcome)
    }

    /// Decodes and also returns the raw solver output (used for
    /// pseudocodeword extraction from exact-arithmetic runs).
    pub fn decode_with_solution(
        &mut self,
        llr: &LlrVector,
    ) -> Result<(DecodeOutcome, Solution), DecodeError> {
        if llr.n() != self.code.n() || llr.q() != self.code.q() {
            return Err(DecodeError::Dimension(format!(
                "llr is ({}, q={}), code is ({}, q={})",
                llr.n(),
                llr.q(),
                self.code.n(),
                self.code.q()
            )));
        }
        let (objective, clamped) = objective_from_llr(llr, self.lp.registry(), self.config.inf_clamp);
        self.lp.set_objective(objective);
        let solution = solver::solve(&self.lp, &self.config.solver);
        if solution.status != Status::Optimal {
            return Err(DecodeError::Solver(solution.status));
        }
        debug_assert!(audit_bounds(&self.lp, &solution.x, self.code.q(), 1e-6));
        let f: Vec<f64> = self.f_cols.iter().map(|&c| solution.x[c]).collect();
        let kind = if solver::is_integral(&f, self.code.q(), self.config.solver.int_tol) {
            let ind = IndicatorVector::from_values(self.code.q(), self.code.n(), rounded(&f));
            let c = polytope::xi_inv(&ind, self.config.solver.int_tol)
                .map_err(|_| DecodeError::IntegralNotCodeword)?;
            if !self.code.is_codeword(&c) {
                return Err(DecodeError::IntegralNotCodeword);
            }
            OutcomeKind::Codeword(c)
        } else {
            OutcomeKind::Failure { f }
        };
        let outcome = DecodeOutcome {
            kind,
            objective: solution.objective,
            polytope: self.kind,
            iterations: solution.iterations,
            clamped,
        };
        Ok((outcome, solution))
    }
}

fn rounded(f: &[f64]) -> Vec<f64> {
    f.iter().map(|&v| if v > 0.5 { 1.0 } else { 0.0 }).collect()
}

/// One-shot decode: builds the chosen relaxation and minimizes the LLR cost.
pub fn decode(
    code: &CodeSpec,
    llr: &LlrVector,
    kind: PolytopeKind,
    config: &DecodeConfig,
) -> Result<DecodeOutcome, DecodeError> {
    PreparedDecoder::new(code, kind, config.clone())?.decode(llr)
}

/// Brute-force maximum-likelihood decoding by exhaustive codeword search;
/// ties break toward the lexicographically smallest codeword.
pub fn ml_oracle(code: &CodeSpec, llr: &LlrVector, cap: u128) -> Result<Vec<u32>, DecodeError> {
    if llr.n() != code.n() {
        return Err(DecodeError::Dimension("llr length mismatch".into()));
    }
    let (words, _) = code.enumerate_codewords(cap)?;
    let mut best: Option<(f64, Vec<u32>)> = None;
    for c in words {
        let cost = llr.codeword_cost(&c);
        if best.as_ref().map_or(true, |(b, _)| cost < *b) {
            best = Some((cost, c));
        }
    }
    Ok(best.expect("zero codeword always exists").1)
}

/// Compares a decoding outcome against the transmitted word. A failure
/// always counts as a codeword error.
pub fn classify(outcome: &DecodeOutcome, transmitted: &[u32]) -> Classification {
    match &outcome.kind {
        OutcomeKind::Failure { .. } => Classification::DecodingFailure,
        OutcomeKind::Codeword(c) if c == transmitted => Classification::CorrectDecoding,
        OutcomeKind::Codeword(_) => Classification::IncorrectDecoding,
    }
}
