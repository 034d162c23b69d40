//! Monte-Carlo word-error-rate experiments plus the analytic baselines:
//! exact hard-decision decoding of the perfect ternary code and the
//! soft-decision union bound from the weight enumerator.

use std::io::Write;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::channel::{ChannelError, ChannelModel};
use crate::decoder::{
    classify, Classification, DecodeConfig, DecodeError, OutcomeKind, PolytopeKind,
    PreparedDecoder,
};
use crate::ring::{codeword_basis, CodeSpec, WeightEnumerator};

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum CodewordPolicy {
    Zero,
    Fixed(Vec<u32>),
    RandomPerTrial,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SimChannel {
    PskAwgn,
    OrthogonalAwgn,
    QSymmetric { p: f64 },
}

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub polytope: PolytopeKind,
    pub esn0_grid_db: Vec<f64>,
    pub trials: u64,
    /// Stop a grid point early once this many codeword-error events have
    /// accumulated (scanning trials in order, so the stopping point does not
    /// depend on the worker count).
    pub target_errors: Option<u64>,
    pub seed: u64,
    pub policy: CodewordPolicy,
    /// Worker threads; 0 uses the default pool.
    pub jobs: usize,
    pub decode: DecodeConfig,
}

impl SimConfig {
    pub fn new(polytope: PolytopeKind, esn0_grid_db: Vec<f64>, trials: u64, seed: u64) -> Self {
        SimConfig {
            polytope,
            esn0_grid_db,
            trials,
            target_errors: None,
            seed,
            policy: CodewordPolicy::Zero,
            jobs: 0,
            decode: DecodeConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointResult {
    pub esn0_db: f64,
    pub trials: u64,
    pub correct: u64,
    pub incorrect: u64,
    pub failures: u64,
    pub symbol_errors: u64,
    pub block_length: usize,
}

impl PointResult {
    pub fn wer(&self) -> f64 {
        (self.incorrect + self.failures) as f64 / self.trials as f64
    }

    /// Failure trials count every symbol as wrong.
    pub fn ser(&self) -> f64 {
        self.symbol_errors as f64 / (self.trials as f64 * self.block_length as f64)
    }

    pub fn wer_stderr(&self) -> f64 {
        let p = self.wer();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimResult {
    pub points: Vec<PointResult>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent per-trial stream: a counter-style hash of (seed, point, trial).
fn trial_seed(seed: u64, point: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(point.wrapping_mul(0xa076_1d64_78bd_642f))) ^ trial)
}

enum Sampler {
    Zero(usize),
    Fixed(Vec<u32>),
    Basis { q: u32, n: usize, basis: Vec<Vec<u32>> },
}

impl Sampler {
    fn new(code: &CodeSpec, policy: &CodewordPolicy) -> Result<Sampler, SimError> {
        match policy {
            CodewordPolicy::Zero => Ok(Sampler::Zero(code.n())),
            CodewordPolicy::Fixed(c) => {
                if c.len() != code.n() || !code.is_codeword(c) {
                    return Err(SimError::Unsupported(
                        "fixed transmit word is not a codeword".into(),
                    ));
                }
                Ok(Sampler::Fixed(c.clone()))
            }
            CodewordPolicy::RandomPerTrial => {
                let basis = codeword_basis(code).ok_or_else(|| {
                    SimError::Unsupported(
                        "random codeword policy requires a prime modulus".into(),
                    )
                })?;
                Ok(Sampler::Basis { q: code.q(), n: code.n(), basis })
            }
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> Vec<u32> {
        use rand::Rng;
        match self {
            Sampler::Zero(n) => vec![0; *n],
            Sampler::Fixed(c) => c.clone(),
            Sampler::Basis { q, n, basis } => {
                let mut c = vec![0u32; *n];
                for g in basis {
                    let coeff = rng.random_range(0..*q);
                    if coeff != 0 {
                        for (ci, &gi) in c.iter_mut().zip(g) {
                            *ci = (*ci + coeff * gi) % q;
                        }
                    }
                }
                c
            }
        }
    }
}

/// Runs the Monte-Carlo experiment over the SNR grid. Identical
/// `(config, seed)` produce identical results regardless of the worker
/// count: every trial draws from its own counter-derived stream and the
/// reduction scans trials in index order.
pub fn run_mc(code: &CodeSpec, channel: SimChannel, config: &SimConfig) -> Result<SimResult, SimError> {
    let rate = code.design_rate();
    let sampler = Sampler::new(code, &config.policy)?;
    let run = || -> Result<SimResult, SimError> {
        let mut points = Vec::with_capacity(config.esn0_grid_db.len());
        for (pi, &esn0_db) in config.esn0_grid_db.iter().enumerate() {
            let model = match channel {
                SimChannel::PskAwgn => ChannelModel::psk_awgn(code.q(), esn0_db, rate),
                SimChannel::OrthogonalAwgn => {
                    ChannelModel::orthogonal_awgn(code.q(), esn0_db, rate)
                }
                SimChannel::QSymmetric { p } => ChannelModel::q_symmetric(code.q(), p)?,
            };
            let template = PreparedDecoder::new(code, config.polytope, config.decode.clone())?;
            let mut acc = PointResult {
                esn0_db,
                trials: 0,
                correct: 0,
                incorrect: 0,
                failures: 0,
                symbol_errors: 0,
                block_length: code.n(),
            };
            const CHUNK: u64 = 128;
            let mut start = 0u64;
            'point: while start < config.trials {
                let end = (start + CHUNK).min(config.trials);
                let results: Vec<Result<(Classification, u64), SimError>> = (start..end)
                    .into_par_iter()
                    .map_init(
                        || template.clone(),
                        |dec, t| run_trial(dec, &model, &sampler, config.seed, pi as u64, t),
                    )
                    .collect();
                for r in results {
                    let (class, serrs) = r?;
                    acc.trials += 1;
                    match class {
                        Classification::CorrectDecoding => acc.correct += 1,
                        Classification::IncorrectDecoding => acc.incorrect += 1,
                        Classification::DecodingFailure => acc.failures += 1,
                    }
                    acc.symbol_errors += serrs;
                    if let Some(target) = config.target_errors {
                        if acc.incorrect + acc.failures >= target {
                            break 'point;
                        }
                    }
                }
                start = end;
            }
            points.push(acc);
        }
        Ok(SimResult { points })
    };
    if config.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| SimError::Unsupported(format!("thread pool: {e}")))?;
        pool.install(run)
    } else {
        run()
    }
}

fn run_trial(
    dec: &mut PreparedDecoder,
    model: &ChannelModel,
    sampler: &Sampler,
    seed: u64,
    point: u64,
    trial: u64,
) -> Result<(Classification, u64), SimError> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, point, trial));
    let c = sampler.draw(&mut rng);
    let y = model.transmit(&c, &mut rng);
    let llr = model.llr(&y)?;
    let outcome = dec.decode(&llr)?;
    let class = classify(&outcome, &c);
    let serrs = match &outcome.kind {
        OutcomeKind::Codeword(out) => {
            out.iter().zip(&c).filter(|(a, b)| a != b).count() as u64
        }
        OutcomeKind::Failure { .. } => c.len() as u64,
    };
    Ok((class, serrs))
}

// ---------------------------------------------------------------------------
// Analytic curves
// ---------------------------------------------------------------------------

/// Density of the received phase for a unit-energy signal at angle zero in
/// complex Gaussian noise with per-dimension SNR `gamma = 1 / (2 sigma^2)`.
fn phase_density(theta: f64, gamma: f64) -> f64 {
    let c = theta.cos();
    let s = theta.sin();
    (-gamma).exp() / (2.0 * std::f64::consts::PI)
        + (gamma / std::f64::consts::PI).sqrt() * c * (-gamma * s * s).exp() * 0.5
            * libm::erfc(-gamma.sqrt() * c)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    simpson_step(f, a, b, fa, fm, fb, tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, tol / 2.0, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, tol / 2.0, depth - 1)
    }
}

/// Probability that a q-PSK symbol falls outside its decision wedge under
/// AWGN with SNR `gamma` per channel symbol, by adaptive integration of the
/// phase density to relative accuracy 1e-8.
pub fn psk_hard_error_prob(q: u32, gamma: f64) -> f64 {
    assert!(gamma > 0.0, "snr must be positive");
    let half_wedge = std::f64::consts::PI / f64::from(q);
    let f = |theta: f64| phase_density(theta, gamma);
    let correct = 2.0 * adaptive_simpson(&f, 0.0, half_wedge, 1e-12, 48);
    let err = 2.0 * adaptive_simpson(&f, half_wedge, std::f64::consts::PI, 1e-12, 48);
    // the two routes sum to one; return the better-conditioned branch
    if err < 0.5 {
        err
    } else {
        1.0 - correct
    }
}

fn binom_f64(n: u64, k: u64) -> f64 {
    let mut r = 1.0f64;
    for i in 0..k.min(n - k) {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

/// Exact hard-decision word error rate of the perfect [11, 6] ternary code
/// with 3-PSK signalling at `gamma_s` per information symbol: bounded-distance
/// decoding fails exactly above three symbol errors.
pub fn golay_hard_decision_wer(gamma_s: f64) -> f64 {
    let rate = 6.0 / 11.0;
    let p = psk_hard_error_prob(3, rate * gamma_s);
    (3..=11u64)
        .map(|l| binom_f64(11, l) * p.powi(l as i32) * (1.0 - p).powi((11 - l) as i32))
        .sum()
}

/// The same binomial tail at an explicit symbol error probability.
pub fn golay_hd_wer_at_p(p: f64) -> f64 {
    (3..=11u64)
        .map(|l| binom_f64(11, l) * p.powi(l as i32) * (1.0 - p).powi((11 - l) as i32))
        .sum()
}

/// Union bound on the soft-decision ML word error rate for ternary PSK:
/// half the sum of `erfc(sqrt(3/4 w R gamma_s))` over the nonzero-weight
/// codewords of the enumerator.
pub fn union_bound_wer(wenum: &WeightEnumerator, rate: f64, gamma_s: f64) -> f64 {
    0.5 * wenum
        .counts()
        .iter()
        .filter(|(&w, _)| w > 0)
        .map(|(&w, &count)| {
            count as f64 * libm::erfc((0.75 * w as f64 * rate * gamma_s).sqrt())
        })
        .sum::<f64>()
}

/// E_s/N_0 (dB) at which the exact hard-decision curve crosses `target_wer`,
/// by bisection.
pub fn golay_hd_crossing_db(target_wer: f64) -> f64 {
    let (mut lo, mut hi) = (-5.0f64, 25.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let wer = golay_hard_decision_wer(10f64.powf(mid / 10.0));
        if wer > target_wer {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

// ---------------------------------------------------------------------------
// Output files
// ---------------------------------------------------------------------------

fn fmt12(v: f64) -> String {
    format!("{:.11e}", v)
}

/// Writes the simulation result as a gnuplot-friendly CSV with a header and
/// 12 significant digits; identical results produce byte-identical files.
pub fn emit_csv<W: Write>(result: &SimResult, mut out: W) -> std::io::Result<()> {
    writeln!(out, "esn0_db,wer,ser,trials,wer_stderr")?;
    for p in &result.points {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt12(p.esn0_db),
            fmt12(p.wer()),
            fmt12(p.ser()),
            p.trials,
            fmt12(p.wer_stderr())
        )?;
    }
    Ok(())
}

pub fn emit_csv_path(result: &SimResult, path: &Path) -> std::io::Result<()> {
    emit_csv(result, std::fs::File::create(path)?)
}

/// Writes an analytic curve (name as column header) over an SNR grid.
pub fn emit_curve_csv<W: Write>(
    name: &str,
    points: &[(f64, f64)],
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "esn0_db,{}", name)?;
    for &(x, y) in points {
        writeln!(out, "{},{}", fmt12(x), fmt12(y))?;
    }
    Ok(())
}

/// A small gnuplot script plotting log-WER against E_s/N_0 from a CSV.
pub fn gnuplot_script(csv_path: &str, output_png: &str, title: &str) -> String {
    format!(
        "set datafile separator \",\"\n\
         set terminal pngcairo size 800,600\n\
         set output \"{output_png}\"\n\
         set logscale y\n\
         set xlabel \"E_s/N_0 per information symbol (dB)\"\n\
         set ylabel \"WER\"\n\
         set grid\n\
         set title \"{title}\"\n\
         plot \"{csv_path}\" using 1:2 skip 1 with linespoints title \"WER\", \
         \"{csv_path}\" using 1:3 skip 1 with linespoints title \"SER\"\n"
    )
}
