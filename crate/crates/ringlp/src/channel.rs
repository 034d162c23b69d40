//! Modulation, noisy transmission, log-likelihood-ratio computation and the
//! channel symmetry machinery (the maps `tau_beta`).

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::mod_neg;

#[derive(Debug, Error, PartialEq)]
pub enum ChannelError {
    #[error("symbol {0} outside alphabet of size {1}")]
    BadSymbol(u32, u32),
    #[error("received word has wrong shape: {0}")]
    BadReceived(String),
    #[error("invalid channel parameter: {0}")]
    BadParameter(String),
}

/// One channel output observation.
#[derive(Clone, Debug, PartialEq)]
pub enum ReceivedSymbol {
    /// Output of a discrete channel, identified with ℤ_q.
    Index(u32),
    /// Point in ℝ^l (PSK uses l = 2, orthogonal modulation l = q).
    Point(Vec<f64>),
}

impl ReceivedSymbol {
    fn point(&self) -> Result<&[f64], ChannelError> {
        match self {
            ReceivedSymbol::Point(p) => Ok(p),
            ReceivedSymbol::Index(_) => {
                Err(ChannelError::BadReceived("expected a real-valued output".into()))
            }
        }
    }
}

/// Memoryless modulator/channel combination.
///
/// `sigma2` is the Gaussian noise variance per real dimension.
#[derive(Clone, Debug, PartialEq)]
pub enum ChannelModel {
    QSymmetric { q: u32, p: f64 },
    PskAwgn { q: u32, sigma2: f64 },
    OrthogonalAwgn { q: u32, sigma2: f64 },
    /// Arbitrary discrete channel with the same output alphabet and shift
    /// maps as the q-ary symmetric channel; used for symmetry experiments.
    Discrete { q: u32, transition: Vec<Vec<f64>> },
}

/// Noise variance per real dimension for a unit-energy constellation at a
/// given `E_s/N_0` per information symbol and code rate.
pub fn esn0_db_to_sigma2(esn0_db: f64, rate: f64) -> f64 {
    let gamma_s = 10f64.powf(esn0_db / 10.0);
    1.0 / (2.0 * rate * gamma_s)
}

impl ChannelModel {
    pub fn psk_awgn(q: u32, esn0_db: f64, rate: f64) -> Self {
        ChannelModel::PskAwgn { q, sigma2: esn0_db_to_sigma2(esn0_db, rate) }
    }

    pub fn orthogonal_awgn(q: u32, esn0_db: f64, rate: f64) -> Self {
        ChannelModel::OrthogonalAwgn { q, sigma2: esn0_db_to_sigma2(esn0_db, rate) }
    }

    pub fn q_symmetric(q: u32, p: f64) -> Result<Self, ChannelError> {
        let limit = (f64::from(q) - 1.0) / f64::from(q);
        if !(0.0..=1.0).contains(&p) || p > limit + 1e-12 {
            return Err(ChannelError::BadParameter(format!(
                "qsc flip probability {} outside [0, {}]",
                p, limit
            )));
        }
        Ok(ChannelModel::QSymmetric { q, p })
    }

    pub fn q(&self) -> u32 {
        match *self {
            ChannelModel::QSymmetric { q, .. }
            | ChannelModel::PskAwgn { q, .. }
            | ChannelModel::OrthogonalAwgn { q, .. }
            | ChannelModel::Discrete { q, .. } => q,
        }
    }

    fn modulate_symbol(&self, v: u32) -> ReceivedSymbol {
        let q = self.q();
        assert!(v < q, "symbol {} outside Z_{}", v, q);
        match *self {
            ChannelModel::QSymmetric { .. } | ChannelModel::Discrete { .. } => {
                ReceivedSymbol::Index(v)
            }
            ChannelModel::PskAwgn { .. } => {
                let theta = 2.0 * std::f64::consts::PI * f64::from(v) / f64::from(q);
                ReceivedSymbol::Point(vec![theta.cos(), theta.sin()])
            }
            ChannelModel::OrthogonalAwgn { .. } => {
                let mut e = vec![0.0; q as usize];
                e[v as usize] = 1.0;
                ReceivedSymbol::Point(e)
            }
        }
    }

    /// Maps a word to its noiseless channel inputs.
    pub fn modulate(&self, c: &[u32]) -> Vec<ReceivedSymbol> {
        c.iter().map(|&v| self.modulate_symbol(v)).collect()
    }

    /// Transmits `c` through the noisy channel.
    pub fn transmit<R: Rng + ?Sized>(&self, c: &[u32], rng: &mut R) -> Vec<ReceivedSymbol> {
        let q = self.q();
        c.iter()
            .map(|&v| match *self {
                ChannelModel::QSymmetric { p, .. } => {
                    if rng.random::<f64>() < p {
                        // uniform over the other q-1 symbols
                        let shift = rng.random_range(1..q);
                        ReceivedSymbol::Index((v + shift) % q)
                    } else {
                        ReceivedSymbol::Index(v)
                    }
                }
                ChannelModel::Discrete { ref transition, .. } => {
                    let row = &transition[v as usize];
                    let u = rng.random::<f64>();
                    let mut acc = 0.0;
                    let mut out = q - 1;
                    for (t, &pr) in row.iter().enumerate() {
                        acc += pr;
                        if u < acc {
                            out = t as u32;
                            break;
                        }
                    }
                    ReceivedSymbol::Index(out)
                }
                ChannelModel::PskAwgn { sigma2, .. } | ChannelModel::OrthogonalAwgn { sigma2, .. } => {
                    let sd = sigma2.sqrt();
                    match self.modulate_symbol(v) {
                        ReceivedSymbol::Point(p) => ReceivedSymbol::Point(
                            p.into_iter()
                                .map(|x| x + sd * rng.sample::<f64, _>(StandardNormal))
                                .collect(),
                        ),
                        ReceivedSymbol::Index(_) => unreachable!(),
                    }
                }
            })
            .collect()
    }

    /// Log channel output density (or log probability) of `y` given input
    /// symbol `given`, up to the Gaussian normalization constant shared by
    /// all inputs.
    pub fn log_density(&self, y: &ReceivedSymbol, given: u32) -> Result<f64, ChannelError> {
        let q = self.q();
        if given >= q {
            return Err(ChannelError::BadSymbol(given, q));
        }
        match *self {
            ChannelModel::QSymmetric { p, .. } => {
                let ReceivedSymbol::Index(t) = *y else {
                    return Err(ChannelError::BadReceived("expected a discrete output".into()));
                };
                let pr = if t == given { 1.0 - p } else { p / (f64::from(q) - 1.0) };
                Ok(pr.ln())
            }
            ChannelModel::Discrete { ref transition, .. } => {
                let ReceivedSymbol::Index(t) = *y else {
                    return Err(ChannelError::BadReceived("expected a discrete output".into()));
                };
                Ok(transition[given as usize][t as usize].ln())
            }
            ChannelModel::PskAwgn { sigma2, .. } | ChannelModel::OrthogonalAwgn { sigma2, .. } => {
                let p = y.point()?;
                let s = match self.modulate_symbol(given) {
                    ReceivedSymbol::Point(s) => s,
                    ReceivedSymbol::Index(_) => unreachable!(),
                };
                if p.len() != s.len() {
                    return Err(ChannelError::BadReceived(format!(
                        "output dimension {} does not match constellation dimension {}",
                        p.len(),
                        s.len()
                    )));
                }
                let d2: f64 = p.iter().zip(&s).map(|(a, b)| (a - b) * (a - b)).sum();
                Ok(-d2 / (2.0 * sigma2))
            }
        }
    }

    fn llr_symbol(&self, y: &ReceivedSymbol) -> Result<Vec<f64>, ChannelError> {
        let q = self.q();
        let base = self.log_density(y, 0)?;
        (1..q).map(|alpha| Ok(base - self.log_density(y, alpha)?)).collect()
    }

    /// Per-symbol log-likelihood ratios `log(p(y|0) / p(y|alpha))`.
    pub fn llr(&self, y: &[ReceivedSymbol]) -> Result<LlrVector, ChannelError> {
        let q = self.q();
        let mut values = Vec::with_capacity(y.len() * (q as usize - 1));
        for sym in y {
            values.extend(self.llr_symbol(sym)?);
        }
        Ok(LlrVector { q, n: y.len(), values })
    }

    /// The symmetry bijection `tau_beta` on channel outputs.
    pub fn tau(&self, beta: u32, y: &ReceivedSymbol) -> Result<ReceivedSymbol, ChannelError> {
        let q = self.q();
        if beta >= q {
            return Err(ChannelError::BadSymbol(beta, q));
        }
        match *self {
            ChannelModel::QSymmetric { .. } | ChannelModel::Discrete { .. } => {
                let ReceivedSymbol::Index(t) = *y else {
                    return Err(ChannelError::BadReceived("expected a discrete output".into()));
                };
                // s_t -> s_l with a_l = a_t - beta
                Ok(ReceivedSymbol::Index((t + q - beta) % q))
            }
            ChannelModel::PskAwgn { .. } => {
                let p = y.point()?;
                if p.len() != 2 {
                    return Err(ChannelError::BadReceived("psk output must be 2-dimensional".into()));
                }
                let theta = -2.0 * std::f64::consts::PI * f64::from(beta) / f64::from(q);
                let (c, s) = (theta.cos(), theta.sin());
                Ok(ReceivedSymbol::Point(vec![p[0] * c - p[1] * s, p[0] * s + p[1] * c]))
            }
            ChannelModel::OrthogonalAwgn { .. } => {
                let p = y.point()?;
                if p.len() != q as usize {
                    return Err(ChannelError::BadReceived("orthogonal output must be q-dimensional".into()));
                }
                // z^(l) = y^(k) where a_k = a_l + beta
                let z: Vec<f64> = (0..q).map(|l| p[((l + beta) % q) as usize]).collect();
                Ok(ReceivedSymbol::Point(z))
            }
        }
    }

    /// Checks `p(y|alpha) = p(tau_beta(y)|alpha-beta)` over all `(alpha, beta)`
    /// pairs, exhaustively on discrete outputs and on sampled outputs for the
    /// continuous channels (where the isometry of `tau_beta` is also audited).
    /// Densities are compared through log-density differences.
    pub fn verify_symmetry<R: Rng + ?Sized>(
        &self,
        samples: usize,
        tol: f64,
        rng: &mut R,
    ) -> SymmetryReport {
        let q = self.q();
        let mut max_violation: f64 = 0.0;
        let outputs: Vec<ReceivedSymbol> = match *self {
            ChannelModel::QSymmetric { .. } | ChannelModel::Discrete { .. } => {
                (0..q).map(ReceivedSymbol::Index).collect()
            }
            ChannelModel::PskAwgn { .. } | ChannelModel::OrthogonalAwgn { .. } => (0..samples)
                .map(|_| {
                    let input = rng.random_range(0..q);
                    self.transmit(&[input], rng).pop().unwrap()
                })
                .collect(),
        };
        for y in &outputs {
            for alpha in 0..q {
                for beta in 0..q {
                    let lhs = self.log_density(y, alpha).unwrap();
                    let ty = self.tau(beta, y).unwrap();
                    let rhs = self.log_density(&ty, (alpha + q - beta) % q).unwrap();
                    // compare densities; on the log scale only when both are finite
                    let viol = if lhs.is_finite() && rhs.is_finite() {
                        (lhs - rhs).abs().min((lhs.exp() - rhs.exp()).abs())
                    } else if lhs == rhs {
                        0.0
                    } else {
                        (lhs.exp() - rhs.exp()).abs()
                    };
                    max_violation = max_violation.max(viol);
                }
            }
        }
        if matches!(self, ChannelModel::PskAwgn { .. } | ChannelModel::OrthogonalAwgn { .. }) {
            for pair in outputs.chunks(2) {
                if pair.len() < 2 {
                    break;
                }
                let (y, z) = (&pair[0], &pair[1]);
                let d = euclid(y.point().unwrap(), z.point().unwrap());
                for beta in 0..q {
                    let ty = self.tau(beta, y).unwrap();
                    let tz = self.tau(beta, z).unwrap();
                    let dt = euclid(ty.point().unwrap(), tz.point().unwrap());
                    max_violation = max_violation.max((d - dt).abs());
                }
            }
        }
        SymmetryReport { holds: max_violation <= tol, max_violation }
    }
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetryReport {
    pub holds: bool,
    pub max_violation: f64,
}

/// The decoding cost vector: `q - 1` entries per coded symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct LlrVector {
    q: u32,
    n: usize,
    values: Vec<f64>,
}

impl LlrVector {
    pub fn from_values(q: u32, n: usize, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), n * (q as usize - 1));
        LlrVector { q, n, values }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `lambda_i^(alpha)` for `alpha` in `1..q`.
    pub fn get(&self, i: usize, alpha: u32) -> f64 {
        debug_assert!(alpha >= 1 && alpha < self.q);
        self.values[i * (self.q as usize - 1) + (alpha as usize - 1)]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Cost of a codeword: the sum of its nonzero-symbol entries.
    pub fn codeword_cost(&self, c: &[u32]) -> f64 {
        assert_eq!(c.len(), self.n);
        c.iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| self.get(i, v))
            .sum()
    }
}

/// Transition matrix of the q-ary symmetric channel; handy for building
/// perturbed (asymmetric) variants.
pub fn qsc_transition_matrix(q: u32, p: f64) -> Vec<Vec<f64>> {
    let off = p / (f64::from(q) - 1.0);
    (0..q)
        .map(|k| (0..q).map(|t| if t == k { 1.0 - p } else { off }).collect())
        .collect()
}

#[allow(unused)]
pub(crate) fn mod_sub(a: u32, b: u32, q: u32) -> u32 {
    (a + mod_neg(b, q)) % q
}

/// On-disk channel description. `esn0_db` applies to the AWGN variants and
/// is converted with the code rate at the point of use; `rate` may pin the
/// conversion explicitly (contexts without a code default to rate 1).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChannelConfig {
    #[serde(rename = "type")]
    pub kind: String,
    pub q: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub esn0_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
}

impl ChannelConfig {
    pub fn resolve(&self, default_rate: f64) -> Result<ChannelModel, ChannelError> {
        let rate = self.rate.unwrap_or(default_rate);
        match self.kind.as_str() {
            "psk-awgn" => {
                let esn0 = self.esn0_db.ok_or_else(|| {
                    ChannelError::BadParameter("psk-awgn needs esn0_db".into())
                })?;
                Ok(ChannelModel::psk_awgn(self.q, esn0, rate))
            }
            "orthogonal-awgn" => {
                let esn0 = self.esn0_db.ok_or_else(|| {
                    ChannelError::BadParameter("orthogonal-awgn needs esn0_db".into())
                })?;
                Ok(ChannelModel::orthogonal_awgn(self.q, esn0, rate))
            }
            "qsc" => {
                let p = self
                    .p
                    .ok_or_else(|| ChannelError::BadParameter("qsc needs p".into()))?;
                ChannelModel::q_symmetric(self.q, p)
            }
            other => Err(ChannelError::BadParameter(format!("unknown channel type '{other}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn modulate_psk_and_orthogonal() {
        let psk3 = ChannelModel::PskAwgn { q: 3, sigma2: 0.5 };
        let y = psk3.modulate(&[0]);
        assert_eq!(y, vec![ReceivedSymbol::Point(vec![1.0, 0.0])]);

        let psk4 = ChannelModel::PskAwgn { q: 4, sigma2: 0.5 };
        match &psk4.modulate(&[1])[0] {
            ReceivedSymbol::Point(p) => {
                assert!((p[0] - 0.0).abs() < 1e-15 && (p[1] - 1.0).abs() < 1e-15);
            }
            _ => panic!(),
        }

        let orth = ChannelModel::OrthogonalAwgn { q: 3, sigma2: 0.5 };
        assert_eq!(orth.modulate(&[2]), vec![ReceivedSymbol::Point(vec![0.0, 0.0, 1.0])]);
    }

    #[test]
    fn transmit_noiseless_limits() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let psk = ChannelModel::PskAwgn { q: 3, sigma2: 1e-30 };
        let c = vec![0, 1, 2];
        let y = psk.transmit(&c, &mut rng);
        let clean = psk.modulate(&c);
        for (a, b) in y.iter().zip(&clean) {
            let (ReceivedSymbol::Point(a), ReceivedSymbol::Point(b)) = (a, b) else { panic!() };
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).abs() < 1e-9);
            }
        }
        let qsc = ChannelModel::q_symmetric(3, 0.0).unwrap();
        assert_eq!(qsc.transmit(&c, &mut rng), qsc.modulate(&c));
    }

    #[test]
    fn qsc_empirical_flip_rate() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let qsc = ChannelModel::q_symmetric(3, 0.3).unwrap();
        let n = 100_000usize;
        let c = vec![1u32; n];
        let y = qsc.transmit(&c, &mut rng);
        let flips = y
            .iter()
            .filter(|s| !matches!(s, ReceivedSymbol::Index(1)))
            .count();
        let rate = flips as f64 / n as f64;
        let sigma = (0.3f64 * 0.7 / n as f64).sqrt();
        assert!((rate - 0.3).abs() < 3.0 * sigma, "flip rate {} too far from 0.3", rate);
    }

    #[test]
    fn llr_values_match_direct_formulas() {
        // 3-PSK, y = M(0), sigma2 = 0.5: both LLRs equal 3.0
        let psk = ChannelModel::PskAwgn { q: 3, sigma2: 0.5 };
        let y = psk.modulate(&[0]);
        let llr = psk.llr(&y).unwrap();
        assert!((llr.get(0, 1) - 3.0).abs() < 1e-12);
        assert!((llr.get(0, 2) - 3.0).abs() < 1e-12);

        // QSC: log(0.7 * 2 / 0.3)
        let qsc = ChannelModel::q_symmetric(3, 0.3).unwrap();
        let llr = qsc.llr(&[ReceivedSymbol::Index(0)]).unwrap();
        let expect = (0.7f64 * 2.0 / 0.3).ln();
        assert!((llr.get(0, 1) - expect).abs() < 1e-12);
        assert!((llr.get(0, 2) - expect).abs() < 1e-12);
        assert!((expect - 1.5404).abs() < 1e-4);

        // equidistant output has zero LLR
        let psk4 = ChannelModel::PskAwgn { q: 4, sigma2: 0.3 };
        let mid = ReceivedSymbol::Point(vec![0.5, 0.5]);
        let llr = psk4.llr(&[mid]).unwrap();
        assert!(llr.get(0, 1).abs() < 1e-12);

        // p = 0 gives infinite entries
        let hard = ChannelModel::q_symmetric(3, 0.0).unwrap();
        let llr = hard.llr(&[ReceivedSymbol::Index(0)]).unwrap();
        assert!(llr.get(0, 1).is_infinite() && llr.get(0, 1) > 0.0);
    }

    #[test]
    fn tau_examples_and_group_laws() {
        let psk = ChannelModel::PskAwgn { q: 3, sigma2: 0.5 };
        let m1 = &psk.modulate(&[1])[0];
        let t = psk.tau(1, m1).unwrap();
        let ReceivedSymbol::Point(p) = &t else { panic!() };
        assert!((p[0] - 1.0).abs() < 1e-12 && p[1].abs() < 1e-12);

        let qsc = ChannelModel::q_symmetric(3, 0.2).unwrap();
        assert_eq!(qsc.tau(2, &ReceivedSymbol::Index(0)).unwrap(), ReceivedSymbol::Index(1));

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for ch in [
            ChannelModel::PskAwgn { q: 4, sigma2: 0.7 },
            ChannelModel::OrthogonalAwgn { q: 3, sigma2: 0.4 },
            ChannelModel::q_symmetric(5, 0.25).unwrap(),
        ] {
            let q = ch.q();
            let y = ch.transmit(&[rng.random_range(0..q)], &mut rng).pop().unwrap();
            for beta in 0..q {
                // identity at beta = 0
                if beta == 0 {
                    assert_close(&ch.tau(0, &y).unwrap(), &y);
                }
                // bijectivity: tau_{-beta} inverts tau_beta
                let round = ch.tau((q - beta) % q, &ch.tau(beta, &y).unwrap()).unwrap();
                assert_close(&round, &y);
                for alpha in 0..q {
                    // composition law
                    let lhs = ch.tau((alpha + beta) % q, &y).unwrap();
                    let rhs = ch.tau(alpha, &ch.tau(beta, &y).unwrap()).unwrap();
                    assert_close(&lhs, &rhs);
                }
            }
        }
    }

    fn assert_close(a: &ReceivedSymbol, b: &ReceivedSymbol) {
        match (a, b) {
            (ReceivedSymbol::Index(x), ReceivedSymbol::Index(y)) => assert_eq!(x, y),
            (ReceivedSymbol::Point(x), ReceivedSymbol::Point(y)) => {
                for (u, v) in x.iter().zip(y) {
                    assert!((u - v).abs() < 1e-12);
                }
            }
            _ => panic!("mismatched output kinds"),
        }
    }

    #[test]
    fn symmetry_reports() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let qsc = ChannelModel::q_symmetric(3, 0.2).unwrap();
        let rep = qsc.verify_symmetry(0, 1e-12, &mut rng);
        assert!(rep.holds);
        assert_eq!(rep.max_violation, 0.0);

        let psk = ChannelModel::PskAwgn { q: 3, sigma2: 0.5 };
        let rep = psk.verify_symmetry(10_000, 1e-12, &mut rng);
        assert!(rep.holds, "psk violation {}", rep.max_violation);

        let orth = ChannelModel::OrthogonalAwgn { q: 4, sigma2: 0.8 };
        let rep = orth.verify_symmetry(5_000, 1e-12, &mut rng);
        assert!(rep.holds, "orthogonal violation {}", rep.max_violation);

        // one transition entry perturbed by 0.05 breaks the condition
        let mut t = qsc_transition_matrix(3, 0.2);
        t[1][2] += 0.05;
        t[1][1] -= 0.05;
        let bad = ChannelModel::Discrete { q: 3, transition: t };
        let rep = bad.verify_symmetry(0, 1e-9, &mut rng);
        assert!(!rep.holds);
        assert!(rep.max_violation >= 0.05 - 1e-12);
    }

    /// LLRs transform under tau according to the three-case identity used in
    /// the codeword-independence argument.
    #[test]
    fn llr_respects_symmetry_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let ch = ChannelModel::PskAwgn { q: 4, sigma2: 0.6 };
        let q = ch.q();
        for _ in 0..200 {
            let input = rng.random_range(0..q);
            let y = ch.transmit(&[input], &mut rng);
            let lam = ch.llr(&y).unwrap();
            for beta in 0..q {
                let ty = vec![ch.tau(beta, &y[0]).unwrap()];
                let lam_t = ch.llr(&ty).unwrap();
                for alpha in 1..q {
                    let lhs = lam.get(0, alpha);
                    let rhs = if beta == 0 {
                        lam_t.get(0, alpha)
                    } else if alpha == beta {
                        -lam_t.get(0, (q - alpha) % q)
                    } else {
                        let am_b = (alpha + q - beta) % q;
                        let neg_b = (q - beta) % q;
                        lam_t.get(0, am_b) - lam_t.get(0, neg_b)
                    };
                    assert!((lhs - rhs).abs() < 1e-9, "alpha={} beta={}", alpha, beta);
                }
            }
        }
    }

    #[test]
    fn snr_conversion() {
        // unit-energy PSK, rate R: sigma2 = 1 / (2 R gamma_s)
        let s2 = esn0_db_to_sigma2(0.0, 0.5);
        assert!((s2 - 1.0).abs() < 1e-15);
        let s2 = esn0_db_to_sigma2(10.0, 6.0 / 11.0);
        assert!((s2 - 1.0 / (2.0 * (6.0 / 11.0) * 10.0)).abs() < 1e-15);
    }
}
