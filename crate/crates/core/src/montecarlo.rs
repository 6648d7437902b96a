//! Stochastic oracle for the measurement protocol: direct trajectory
//! simulation plus the empirical estimators the analytic layers are tested
//! against.
//!
//! Nothing here touches the transform machinery.  Trajectories are produced
//! by evolving the state vector between measurements and flipping a
//! Bernoulli coin against the Born probability at each epoch, so agreement
//! with the closed-form densities is a genuine cross-check rather than a
//! tautology.
//!
//! Reproducibility contract: an ensemble is a pure function of the seed and
//! the trajectory count.  Trajectory `i` draws from stream `i` of a
//! counter-based generator, workers process fixed chunks of the index
//! range, and partial results are merged in chunk order, so the output is
//! bit-identical for every worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::qcore::hamiltonian::TwoLevelHamiltonian;
use crate::qcore::scheme::DetectionScheme;
use crate::qcore::state::PureState;
use crate::qcore::waiting::WaitingTimeDistribution;
use crate::twolevel::{
    evolve, first_failure_probability, mean_detection_time_poisson, persistence_probability,
    ProtocolTransforms,
};

/// Default number of uniform histogram bins.
pub const DEFAULT_BINS: usize = 400;

/// Censored fraction above which an ensemble with a finite-mean waiting law
/// flags its time cutoff as too small.
pub const CENSOR_WARN_FRACTION: f64 = 1e-3;

/// Trajectories per work unit.  Fixed so that the chunk decomposition, and
/// with it the merge order of every statistic, does not depend on the
/// worker count.
const CHUNK: usize = 16_384;

/// Seed perturbation for the weighted survival estimator, so that it runs
/// on streams uncorrelated with the Bernoulli ensemble for the same seed.
const WEIGHT_SEED_MIX: u64 = 0x9e37_79b9_7f4a_7c15;

/// Everything needed to generate one ensemble of measured trajectories.
#[derive(Debug, Clone)]
pub struct TrajectoryConfig {
    hamiltonian: TwoLevelHamiltonian,
    scheme: DetectionScheme,
    wait: WaitingTimeDistribution,
    n_trajectories: usize,
    t_cutoff: f64,
    seed: u64,
    workers: usize,
    probe_times: Vec<f64>,
    bins: usize,
}

impl TrajectoryConfig {
    /// A single-worker configuration with the default cutoff (fifty
    /// analytic mean detection times when that mean is finite, otherwise
    /// ten thousand waiting-time scales) and the default histogram binning.
    pub fn new(
        hamiltonian: TwoLevelHamiltonian,
        scheme: DetectionScheme,
        wait: WaitingTimeDistribution,
        n_trajectories: usize,
        seed: u64,
    ) -> Result<Self> {
        if n_trajectories == 0 {
            return Err(Error::InvalidParameter(
                "ensemble needs at least one trajectory".into(),
            ));
        }
        let t_cutoff = default_cutoff(&hamiltonian, scheme, &wait);
        Ok(Self {
            hamiltonian,
            scheme,
            wait,
            n_trajectories,
            t_cutoff,
            seed,
            workers: 1,
            probe_times: Vec::new(),
            bins: DEFAULT_BINS,
        })
    }

    /// Replaces the censoring cutoff.
    pub fn with_cutoff(mut self, t_cutoff: f64) -> Result<Self> {
        if !(t_cutoff > 0.0) || !t_cutoff.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "cutoff must be positive and finite, got {t_cutoff}"
            )));
        }
        self.t_cutoff = t_cutoff;
        self.check_probes()?;
        Ok(self)
    }

    /// Sets the worker-thread count (the results do not depend on it).
    pub fn with_workers(mut self, workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::InvalidParameter(
                "worker count must be at least one".into(),
            ));
        }
        self.workers = workers;
        Ok(self)
    }

    /// Sets the number of uniform histogram bins on `[0, t_cutoff]`.
    pub fn with_bins(mut self, bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::InvalidParameter(
                "histogram needs at least one bin".into(),
            ));
        }
        self.bins = bins;
        Ok(self)
    }

    /// Requests measurement-count distributions at the given times.
    pub fn with_probe_times(mut self, probe_times: Vec<f64>) -> Result<Self> {
        self.probe_times = probe_times;
        self.check_probes()?;
        Ok(self)
    }

    fn check_probes(&self) -> Result<()> {
        for &t in &self.probe_times {
            if !t.is_finite() || t <= 0.0 || t > self.t_cutoff {
                return Err(Error::InvalidParameter(format!(
                    "probe time {t} must lie in (0, {}]",
                    self.t_cutoff
                )));
            }
        }
        Ok(())
    }

    pub fn hamiltonian(&self) -> &TwoLevelHamiltonian {
        &self.hamiltonian
    }

    pub fn scheme(&self) -> DetectionScheme {
        self.scheme
    }

    pub fn wait(&self) -> &WaitingTimeDistribution {
        &self.wait
    }

    pub fn n_trajectories(&self) -> usize {
        self.n_trajectories
    }

    pub fn t_cutoff(&self) -> f64 {
        self.t_cutoff
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn probe_times(&self) -> &[f64] {
        &self.probe_times
    }

    pub fn bins(&self) -> usize {
        self.bins
    }
}

/// Default censoring cutoff: fifty analytic mean detection times when the
/// mean is finite, otherwise ten thousand waiting-time scales.
pub fn default_cutoff(
    h: &TwoLevelHamiltonian,
    scheme: DetectionScheme,
    wait: &WaitingTimeDistribution,
) -> f64 {
    let analytic = match *wait {
        WaitingTimeDistribution::Exponential { rate } => {
            mean_detection_time_poisson(h, scheme, rate).ok()
        }
        _ => ProtocolTransforms::new(h, *wait)
            .ok()
            .and_then(|pt| pt.mean_detection_time(scheme).ok()),
    };
    match analytic {
        Some(mean) if mean.is_finite() && mean > 0.0 => 50.0 * mean,
        _ => 1e4 * waiting_scale(wait),
    }
}

fn waiting_scale(wait: &WaitingTimeDistribution) -> f64 {
    match *wait {
        WaitingTimeDistribution::Exponential { rate } => 1.0 / rate,
        WaitingTimeDistribution::Gamma { shape, scale } => shape * scale,
        WaitingTimeDistribution::Lomax { tau0, .. } => tau0,
    }
}

/// Everything recorded about a single simulated trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryOutcome {
    /// First detection time, or `None` when the trajectory was censored at
    /// the cutoff.
    pub detection_time: Option<f64>,
    /// Measurement attempts up to and including detection (for censored
    /// trajectories: attempts observed before the cutoff).
    pub attempts: u64,
    /// Number of measurement epochs at or before each requested probe time.
    /// Epoch counting continues past detection, so these describe the raw
    /// measurement process.
    pub probe_counts: Vec<u64>,
}

/// Simulates one trajectory: waits are drawn from the protocol, the state
/// is evolved between measurements, each measurement detects with the Born
/// probability, and a failed measurement collapses the state exactly onto
/// the undetected state of the scheme.
pub fn sample_trajectory(cfg: &TrajectoryConfig, rng: &mut impl Rng) -> TrajectoryOutcome {
    let detected = cfg.scheme.detected_state();
    let collapse = cfg.scheme.collapse_state();
    let max_probe = cfg.probe_times.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let mut probe_counts = vec![0u64; cfg.probe_times.len()];
    let mut state = PureState::basis_plus();
    let mut t = 0.0;
    let mut epochs = 0u64;
    let mut detection: Option<f64> = None;
    let mut attempts = 0u64;

    loop {
        // After detection only the probe counters can still change.
        let horizon = if detection.is_none() { cfg.t_cutoff } else { max_probe };
        if t > horizon {
            break;
        }
        let tau = cfg.wait.sample(rng);
        t += tau;
        if t > horizon {
            break;
        }
        epochs += 1;
        for (count, &probe) in probe_counts.iter_mut().zip(&cfg.probe_times) {
            if t <= probe {
                *count += 1;
            }
        }
        if detection.is_none() {
            let evolved =
                evolve(&cfg.hamiltonian, &state, tau).expect("sampled waiting times are finite");
            let p = evolved.overlap(&detected).clamp(0.0, 1.0);
            if rng.gen::<f64>() < p {
                detection = Some(t);
                attempts = epochs;
                if cfg.probe_times.is_empty() {
                    break;
                }
            } else {
                state = collapse;
            }
        }
    }
    if detection.is_none() {
        attempts = epochs;
    }
    TrajectoryOutcome {
        detection_time: detection,
        attempts,
        probe_counts,
    }
}

/// Raw per-chunk tallies, merged in chunk order after the parallel pass.
struct ChunkStats {
    times: Vec<f64>,
    censored: u64,
    attempts_sum: u64,
    probe: Vec<Vec<u64>>,
}

impl ChunkStats {
    fn new(n_probes: usize) -> Self {
        Self {
            times: Vec::new(),
            censored: 0,
            attempts_sum: 0,
            probe: vec![Vec::new(); n_probes],
        }
    }

    fn absorb(&mut self, outcome: TrajectoryOutcome) {
        match outcome.detection_time {
            Some(t) => {
                self.times.push(t);
                self.attempts_sum += outcome.attempts;
            }
            None => self.censored += 1,
        }
        for (hist, &n) in self.probe.iter_mut().zip(&outcome.probe_counts) {
            let n = n as usize;
            if hist.len() <= n {
                hist.resize(n + 1, 0);
            }
            hist[n] += 1;
        }
    }

    fn merge(&mut self, other: ChunkStats) {
        self.times.extend(other.times);
        self.censored += other.censored;
        self.attempts_sum += other.attempts_sum;
        for (hist, theirs) in self.probe.iter_mut().zip(other.probe) {
            if hist.len() < theirs.len() {
                hist.resize(theirs.len(), 0);
            }
            for (slot, v) in hist.iter_mut().zip(theirs) {
                *slot += v;
            }
        }
    }
}

/// Distribution of the number of measurements performed by a fixed probe
/// time, accumulated over all trajectories (detected or not).
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeHistogram {
    time: f64,
    counts: Vec<u64>,
    total: u64,
}

impl ProbeHistogram {
    pub fn time(&self) -> f64 {
        self.time
    }

    /// `counts()[n]` is the number of trajectories that saw exactly `n`
    /// measurements by the probe time.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Empirical probability of seeing exactly `n` measurements.
    pub fn fraction(&self, n: usize) -> f64 {
        let c = self.counts.get(n).copied().unwrap_or(0);
        c as f64 / self.total as f64
    }
}

/// Empirical first-detection statistics assembled from an ensemble.
#[derive(Debug, Clone)]
pub struct EmpiricalFirstDetection {
    times: Vec<f64>,
    censored: u64,
    n_total: u64,
    t_cutoff: f64,
    bin_counts: Vec<u64>,
    bin_width: f64,
    mean: f64,
    variance: f64,
    std_error: f64,
    mean_attempts: f64,
    probe_histograms: Vec<ProbeHistogram>,
    cutoff_warning: bool,
}

impl EmpiricalFirstDetection {
    fn from_parts(stats: ChunkStats, cfg: &TrajectoryConfig) -> Self {
        let n_total = cfg.n_trajectories as u64;
        let mut times = stats.times;
        times.sort_unstable_by(f64::total_cmp);
        let n_det = times.len();

        let (mean, variance, std_error) = if n_det == 0 {
            (f64::NAN, f64::NAN, f64::NAN)
        } else {
            let m = times.iter().sum::<f64>() / n_det as f64;
            if n_det < 2 {
                (m, f64::NAN, f64::NAN)
            } else {
                let ss: f64 = times.iter().map(|&t| (t - m) * (t - m)).sum();
                let var = ss / (n_det - 1) as f64;
                (m, var, (var / n_det as f64).sqrt())
            }
        };

        let bin_width = cfg.t_cutoff / cfg.bins as f64;
        let mut bin_counts = vec![0u64; cfg.bins];
        for &t in &times {
            let idx = ((t / bin_width) as usize).min(cfg.bins - 1);
            bin_counts[idx] += 1;
        }

        let probe_histograms = cfg
            .probe_times
            .iter()
            .zip(stats.probe)
            .map(|(&time, counts)| ProbeHistogram {
                time,
                counts,
                total: n_total,
            })
            .collect();

        let censored_fraction = stats.censored as f64 / n_total as f64;
        let cutoff_warning =
            cfg.wait.mean().is_some() && censored_fraction > CENSOR_WARN_FRACTION;

        Self {
            times,
            censored: stats.censored,
            n_total,
            t_cutoff: cfg.t_cutoff,
            bin_counts,
            bin_width,
            mean,
            variance,
            std_error,
            mean_attempts: stats.attempts_sum as f64 / n_det as f64,
            probe_histograms,
            cutoff_warning,
        }
    }

    /// Detection times of the uncensored trajectories, sorted ascending.
    pub fn detection_times(&self) -> &[f64] {
        &self.times
    }

    pub fn detected_count(&self) -> u64 {
        self.times.len() as u64
    }

    pub fn censored_count(&self) -> u64 {
        self.censored
    }

    pub fn total_trajectories(&self) -> u64 {
        self.n_total
    }

    pub fn censored_fraction(&self) -> f64 {
        self.censored as f64 / self.n_total as f64
    }

    pub fn t_cutoff(&self) -> f64 {
        self.t_cutoff
    }

    /// Sample mean of the uncensored detection times (`NaN` when nothing
    /// was detected).
    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance of the uncensored detection times.
    pub fn variance(&self) -> f64 {
        self.variance
    }

    /// Standard error of [`mean`](Self::mean).
    pub fn std_error(&self) -> f64 {
        self.std_error
    }

    /// Mean number of measurement attempts up to detection.
    pub fn mean_attempts(&self) -> f64 {
        self.mean_attempts
    }

    /// True when the censored fraction exceeds [`CENSOR_WARN_FRACTION`]
    /// even though the waiting law has a finite mean, i.e. the cutoff is
    /// probably truncating real statistics.
    pub fn cutoff_warning(&self) -> bool {
        self.cutoff_warning
    }

    /// Largest observed detection time.
    pub fn max_detection_time(&self) -> Option<f64> {
        self.times.last().copied()
    }

    /// Fraction of trajectories still undetected at `t`, with detection at
    /// exactly `t` counted as surviving and censored trajectories counted
    /// as surviving everywhere on `[0, t_cutoff]`.
    pub fn survival_estimate(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 1.0;
        }
        let below = self.times.partition_point(|&x| x < t);
        ((self.times.len() - below) as u64 + self.censored) as f64 / self.n_total as f64
    }

    /// Histogram counts over uniform bins on `[0, t_cutoff]`.  The counts
    /// plus the censored count add up to the ensemble size exactly.
    pub fn bin_counts(&self) -> &[u64] {
        &self.bin_counts
    }

    pub fn bin_width(&self) -> f64 {
        self.bin_width
    }

    pub fn bin_center(&self, index: usize) -> f64 {
        (index as f64 + 0.5) * self.bin_width
    }

    /// Histogram as a density estimate (count per unit time per
    /// trajectory), normalized against the full ensemble size so that the
    /// integral equals the detected fraction.
    pub fn densities(&self) -> Vec<f64> {
        let norm = self.n_total as f64 * self.bin_width;
        self.bin_counts.iter().map(|&c| c as f64 / norm).collect()
    }

    /// Measurement-count distributions at the configured probe times.
    pub fn probe_histograms(&self) -> &[ProbeHistogram] {
        &self.probe_histograms
    }

    /// Kolmogorov-Smirnov distance between the uncensored sample and an
    /// analytic CDF.  Censored trajectories are excluded, so this is only
    /// meaningful when the censored fraction is negligible.
    pub fn ks_statistic(&self, cdf: impl Fn(f64) -> f64) -> f64 {
        let n = self.times.len() as f64;
        let mut d = 0.0f64;
        for (i, &t) in self.times.iter().enumerate() {
            let f = cdf(t);
            d = d.max((f - i as f64 / n).abs());
            d = d.max(((i + 1) as f64 / n - f).abs());
        }
        d
    }
}

/// Runs the configured ensemble.  Deterministic for fixed seed and
/// trajectory count: the worker count only changes how the fixed chunks of
/// the index range are scheduled.
pub fn run_ensemble(cfg: &TrajectoryConfig) -> Result<EmpiricalFirstDetection> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;

    let n = cfg.n_trajectories;
    let n_chunks = n.div_ceil(CHUNK);
    let chunks: Vec<ChunkStats> = pool.install(|| {
        (0..n_chunks)
            .into_par_iter()
            .map(|chunk| {
                let lo = chunk * CHUNK;
                let hi = ((chunk + 1) * CHUNK).min(n);
                let mut acc = ChunkStats::new(cfg.probe_times.len());
                for i in lo..hi {
                    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                    rng.set_stream(i as u64);
                    acc.absorb(sample_trajectory(cfg, &mut rng));
                }
                acc
            })
            .collect()
    });

    let mut total = ChunkStats::new(cfg.probe_times.len());
    for chunk in chunks {
        total.merge(chunk);
    }
    Ok(EmpiricalFirstDetection::from_parts(total, cfg))
}

/// Survival probability at `t` estimated by weighting each sampled epoch
/// sequence with the exact per-measurement failure probabilities
/// (first-attempt factor times the persistence factor of every later
/// attempt).  Returns the estimate and its standard error.  Because every
/// weight lies in `[0, 1]` this estimator never has more variance than the
/// Bernoulli frequency estimate it is checked against.
pub fn weighted_survival_check(cfg: &TrajectoryConfig, t: f64) -> Result<(f64, f64)> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    if cfg.n_trajectories < 2 {
        return Err(Error::InvalidParameter(
            "weighted survival estimate needs at least two trajectories".into(),
        ));
    }
    let n = cfg.n_trajectories;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for i in 0..n {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ WEIGHT_SEED_MIX);
        rng.set_stream(i as u64);
        let mut cum = 0.0;
        let mut epoch = 0u64;
        let mut weight = 1.0;
        loop {
            let tau = cfg.wait.sample(&mut rng);
            cum += tau;
            if cum > t {
                break;
            }
            epoch += 1;
            let factor = if epoch == 1 {
                first_failure_probability(&cfg.hamiltonian, cfg.scheme, tau)
            } else {
                persistence_probability(&cfg.hamiltonian, cfg.scheme, tau)
            }
            .expect("sampled waiting times are non-negative");
            weight *= factor;
            if weight == 0.0 {
                // Every later factor multiplies zero; only the epoch clock
                // mattered and the weight can no longer change.
                break;
            }
        }
        sum += weight;
        sum_sq += weight * weight;
    }
    let mean = sum / n as f64;
    let var = ((sum_sq - n as f64 * mean * mean) / (n as f64 - 1.0)).max(0.0);
    Ok((mean, (var / n as f64).sqrt()))
}

/// Result of a free log-log regression against the histogram of the
/// largest detection times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailFit {
    /// Fitted exponent of the density, `pdf(t) ~ amplitude * t^slope`.
    pub slope: f64,
    /// `exp` of the fitted intercept, i.e. the density extrapolated to
    /// `t = 1`.  Sensitive to slope error over a distant window; prefer
    /// [`tail_amplitude`] when the exponent is known.
    pub amplitude: f64,
    /// Time window the regression actually used.
    pub window: (f64, f64),
    /// Number of log-bins that entered the fit.
    pub bins_used: usize,
}

/// Unweighted least-squares fit of `ln pdf` against `ln t` over
/// geometrically spaced bins covering `window`.  Bins with fewer than five
/// samples are dropped.
pub fn log_log_tail_fit(
    emp: &EmpiricalFirstDetection,
    window: (f64, f64),
    bins: usize,
) -> Result<TailFit> {
    let (lo, hi) = window;
    if !(lo > 0.0) || !(hi > lo) || !hi.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "tail window ({lo}, {hi}) must satisfy 0 < lo < hi < inf"
        )));
    }
    if bins < 4 {
        return Err(Error::InvalidParameter(
            "tail fit needs at least four log-bins".into(),
        ));
    }
    let times = emp.detection_times();
    let n_total = emp.total_trajectories() as f64;
    let ratio = (hi / lo).powf(1.0 / bins as f64);
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(bins);
    let mut used_lo = f64::INFINITY;
    let mut used_hi = f64::NEG_INFINITY;
    for b in 0..bins {
        let e0 = lo * ratio.powi(b as i32);
        let mut e1 = lo * ratio.powi(b as i32 + 1);
        if b + 1 == bins {
            // make the final edge inclusive of the window top
            e1 = hi * (1.0 + 1e-12);
        }
        let i0 = times.partition_point(|&x| x < e0);
        let i1 = times.partition_point(|&x| x < e1);
        let count = i1 - i0;
        if count < 5 {
            continue;
        }
        let density = count as f64 / (n_total * (e1 - e0));
        pts.push(((e0 * e1).sqrt().ln(), density.ln()));
        used_lo = used_lo.min(e0);
        used_hi = used_hi.max(e1);
    }
    if pts.len() < 3 {
        return Err(Error::InvalidParameter(
            "tail window holds too few samples for a regression".into(),
        ));
    }
    let m = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = m * sxx - sx * sx;
    let slope = (m * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / m;
    Ok(TailFit {
        slope,
        amplitude: intercept.exp(),
        window: (used_lo, used_hi),
        bins_used: pts.len(),
    })
}

/// Result of a shifted-Pareto tail fit, `pdf(t) ~ amplitude *
/// (t - shift)^slope` for `t` above the threshold.
#[derive(Debug, Clone, Copy)]
pub struct ShiftedParetoFit {
    /// Fitted asymptotic exponent of the density (negative).
    pub slope: f64,
    /// Fitted (or pinned) time shift.
    pub shift: f64,
    /// Number of detection times above the threshold.
    pub n_tail: usize,
}

/// Log-likelihood and closed-form exponent of a shifted Pareto density
/// `(alpha-1) (L-c)^(alpha-1) (x-c)^(-alpha)` on the exceedances.
fn shifted_pareto_profile(tail: &[f64], threshold: f64, c: f64) -> (f64, f64) {
    let n = tail.len() as f64;
    let log_l = (threshold - c).ln();
    let sum: f64 = tail.iter().map(|&x| (x - c).ln() - log_l).sum();
    let alpha = 1.0 + n / sum;
    let ll = n * (alpha - 1.0).ln() + n * (alpha - 1.0) * log_l
        - alpha * (sum + n * log_l);
    (ll, alpha)
}

/// Maximum-likelihood fit of a shifted Pareto density to the detection
/// times above `threshold`: `pdf(x) ~ (x - c)^(-alpha)` with both the
/// exponent and the shift free.
///
/// A heavy-tailed detection time lands in the far tail through one giant
/// wait plus an O(1) random overhead, so the tail density approaches its
/// power law like `A (t - c)^(-alpha)` with `c` of the order of the mean
/// overhead.  A fit that ignores the shift therefore reads systematically
/// steep at any depth where samples remain plentiful; profiling the shift
/// removes that leading bias while leaving the exponent free.  The shift
/// is profiled over a dense grid below the threshold and polished with a
/// parabolic refinement.
pub fn shifted_pareto_mle(
    emp: &EmpiricalFirstDetection,
    threshold: f64,
) -> Result<ShiftedParetoFit> {
    if !(threshold > 0.0) || !threshold.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "tail threshold must be positive and finite, got {threshold}"
        )));
    }
    let times = emp.detection_times();
    let tail = &times[times.partition_point(|&x| x < threshold)..];
    if tail.len() < 50 {
        return Err(Error::InvalidParameter(format!(
            "only {} samples above t = {threshold}: too few for a shifted tail fit",
            tail.len()
        )));
    }
    let c_min = -0.5 * threshold;
    let c_max = 0.9 * threshold;
    let steps = 256usize;
    let mut best = (f64::NEG_INFINITY, 0.0f64);
    for i in 0..=steps {
        let c = c_min + (c_max - c_min) * i as f64 / steps as f64;
        let (ll, _) = shifted_pareto_profile(tail, threshold, c);
        if ll > best.0 {
            best = (ll, c);
        }
    }
    let h = (c_max - c_min) / steps as f64;
    let lm = shifted_pareto_profile(tail, threshold, (best.1 - h).max(c_min)).0;
    let lp = shifted_pareto_profile(tail, threshold, (best.1 + h).min(c_max)).0;
    let denom = lm - 2.0 * best.0 + lp;
    let c_star = if denom < 0.0 {
        (best.1 + 0.5 * h * (lm - lp) / denom).clamp(c_min, c_max)
    } else {
        best.1
    };
    let (_, alpha) = shifted_pareto_profile(tail, threshold, c_star);
    Ok(ShiftedParetoFit {
        slope: -alpha,
        shift: c_star,
        n_tail: tail.len(),
    })
}

/// Hill-type exponent estimate on the exceedances above `threshold` with
/// the shift pinned externally (for example from [`shifted_pareto_mle`]
/// at a shallower threshold, where the shift is well identified).
pub fn pinned_shift_hill(
    emp: &EmpiricalFirstDetection,
    threshold: f64,
    shift: f64,
) -> Result<ShiftedParetoFit> {
    if !(threshold > 0.0) || !threshold.is_finite() || !(shift < threshold) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < threshold (got {threshold}) and shift {shift} < threshold"
        )));
    }
    let times = emp.detection_times();
    let tail = &times[times.partition_point(|&x| x < threshold)..];
    if tail.len() < 10 {
        return Err(Error::InvalidParameter(format!(
            "only {} samples above t = {threshold}: too few for a tail estimate",
            tail.len()
        )));
    }
    let (_, alpha) = shifted_pareto_profile(tail, threshold, shift);
    Ok(ShiftedParetoFit {
        slope: -alpha,
        shift,
        n_tail: tail.len(),
    })
}

/// [`tail_amplitude`] with a time shift: amplitude of `amp *
/// (t - shift)^exponent`, the observed mass in `window` divided by the
/// exact integral of the shifted power over it.  Asymptotically `amp`
/// is also the coefficient of `t^exponent`.
pub fn shifted_tail_amplitude(
    emp: &EmpiricalFirstDetection,
    exponent: f64,
    shift: f64,
    window: (f64, f64),
) -> Result<f64> {
    let (lo, hi) = window;
    if !(lo > shift) || !(hi > lo) || !hi.is_finite() || !exponent.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "shifted amplitude window ({lo}, {hi}) must sit above shift {shift}"
        )));
    }
    let times = emp.detection_times();
    let i0 = times.partition_point(|&x| x < lo);
    let i1 = times.partition_point(|&x| x <= hi);
    let count = i1 - i0;
    if count == 0 {
        return Err(Error::InvalidParameter(
            "shifted amplitude window holds no samples".into(),
        ));
    }
    let mass = count as f64 / emp.total_trajectories() as f64;
    let (a, b) = (lo - shift, hi - shift);
    let integral = if (exponent + 1.0).abs() < 1e-9 {
        (b / a).ln()
    } else {
        (b.powf(exponent + 1.0) - a.powf(exponent + 1.0)) / (exponent + 1.0)
    };
    Ok(mass / integral)
}

/// Amplitude of a power-law density `amp * t^exponent` with a *known*
/// exponent: the observed probability mass in `window` divided by the
/// exact integral of `t^exponent` over it.  A single pooled ratio stays
/// unbiased even when the deep tail is sparse, and it avoids the
/// slope-extrapolation noise that makes [`TailFit::amplitude`] fragile.
pub fn tail_amplitude(
    emp: &EmpiricalFirstDetection,
    exponent: f64,
    window: (f64, f64),
) -> Result<f64> {
    let (lo, hi) = window;
    if !(lo > 0.0) || !(hi > lo) || !hi.is_finite() || !exponent.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "tail amplitude window ({lo}, {hi}) or exponent {exponent} invalid"
        )));
    }
    let times = emp.detection_times();
    let i0 = times.partition_point(|&x| x < lo);
    let i1 = times.partition_point(|&x| x <= hi);
    let count = i1 - i0;
    if count == 0 {
        return Err(Error::InvalidParameter(
            "tail amplitude window holds no samples".into(),
        ));
    }
    let mass = count as f64 / emp.total_trajectories() as f64;
    let integral = if (exponent + 1.0).abs() < 1e-9 {
        (hi / lo).ln()
    } else {
        (hi.powf(exponent + 1.0) - lo.powf(exponent + 1.0)) / (exponent + 1.0)
    };
    Ok(mass / integral)
}

/// Pearson chi-square statistic with the conventional pooling of adjacent
/// cells until each expected count reaches five (a trailing remainder is
/// folded into the last cell).  Returns the statistic and the degrees of
/// freedom (pooled cells minus one).
pub fn chi_square_statistic(observed: &[u64], expected: &[f64]) -> Result<(f64, usize)> {
    if observed.len() != expected.len() || observed.is_empty() {
        return Err(Error::InvalidParameter(
            "chi-square needs matching, non-empty observed/expected slices".into(),
        ));
    }
    if expected.iter().any(|e| !e.is_finite() || *e < 0.0) {
        return Err(Error::InvalidParameter(
            "expected counts must be finite and non-negative".into(),
        ));
    }
    let mut pooled: Vec<(f64, f64)> = Vec::new();
    let mut acc_obs = 0.0;
    let mut acc_exp = 0.0;
    for (&o, &e) in observed.iter().zip(expected) {
        acc_obs += o as f64;
        acc_exp += e;
        if acc_exp >= 5.0 {
            pooled.push((acc_obs, acc_exp));
            acc_obs = 0.0;
            acc_exp = 0.0;
        }
    }
    if acc_exp > 0.0 || acc_obs > 0.0 {
        if let Some(last) = pooled.last_mut() {
            last.0 += acc_obs;
            last.1 += acc_exp;
        } else {
            pooled.push((acc_obs, acc_exp));
        }
    }
    if pooled.len() < 2 {
        return Err(Error::InvalidParameter(
            "chi-square needs at least two cells after pooling".into(),
        ));
    }
    let stat = pooled
        .iter()
        .map(|&(o, e)| (o - e) * (o - e) / e)
        .sum::<f64>();
    Ok((stat, pooled.len() - 1))
}

/// Upper quantile of the chi-square distribution, e.g. `confidence = 0.99`
/// for a 1% test.
pub fn chi_square_critical(dof: usize, confidence: f64) -> Result<f64> {
    if dof == 0 || !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "chi-square critical value needs dof >= 1 and confidence in (0,1), got {dof}, {confidence}"
        )));
    }
    let dist = ChiSquared::new(dof as f64)
        .map_err(|e| Error::InvalidParameter(format!("chi-square distribution: {e}")))?;
    Ok(dist.inverse_cdf(confidence))
}

/// Asymptotic 1% critical value of the Kolmogorov-Smirnov statistic.
pub fn ks_critical_1pct(n_samples: usize) -> f64 {
    1.62762 / (n_samples as f64).sqrt()
}
