//! Piecewise-constant signals, Gaussian blur, sampling grids, and exact
//! quantized sample sequences.
//!
//! All lengths are stored in units of the sampling interval T, which is
//! normalized to 1. Amplitudes and quantized samples are exact integer
//! multiples of 1/256; only the blurred (pre-quantization) values use
//! floating point.

use crate::error::{Error, Result};
use crate::phi::norm_cdf;
use crate::rat::{is_multiple_of_q256, q256, to_f64, Rat};
use num_traits::{One, Signed, Zero};

/// Default bound on |g_j|. Steps then stay within 512, the largest magnitude
/// covered by the snap-threshold table.
pub const DEFAULT_AMPLITUDE_BOUND: i64 = 256;

/// A spatially limited piecewise-constant signal with `m` support regions.
///
/// Region `j` (1-based) has amplitude `g_j` on `[D_{j-1}, D_j)`, with
/// `D_0 = 0`; the signal is zero outside `[0, D_m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseConstantSignal {
    amplitudes: Vec<Rat>,
    /// D_1..D_m in units of T; D_0 = 0 is implicit.
    discontinuities: Vec<f64>,
}

impl PiecewiseConstantSignal {
    pub fn new(amplitudes: Vec<Rat>, discontinuities: Vec<f64>) -> Result<Self> {
        Self::with_amplitude_bound(amplitudes, discontinuities, q256(256 * DEFAULT_AMPLITUDE_BOUND))
    }

    pub fn with_amplitude_bound(
        amplitudes: Vec<Rat>,
        discontinuities: Vec<f64>,
        bound: Rat,
    ) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidSignal("need at least one region".into()));
        }
        if amplitudes.len() != discontinuities.len() {
            return Err(Error::InvalidSignal(format!(
                "{} amplitudes but {} discontinuities",
                amplitudes.len(),
                discontinuities.len()
            )));
        }
        if amplitudes.first().unwrap().is_zero() || amplitudes.last().unwrap().is_zero() {
            return Err(Error::InvalidSignal("g_1 and g_m must be nonzero".into()));
        }
        for w in amplitudes.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidSignal("adjacent amplitudes must differ".into()));
            }
        }
        for &g in &amplitudes {
            if !is_multiple_of_q256(g) {
                return Err(Error::InvalidSignal(format!("{g} is not a multiple of 1/256")));
            }
            if g.abs() > bound {
                return Err(Error::InvalidSignal(format!("|{g}| exceeds bound {bound}")));
            }
        }
        let mut prev = 0.0;
        for &d in &discontinuities {
            if !d.is_finite() || d <= prev {
                return Err(Error::InvalidSignal(
                    "discontinuities must be finite and strictly increasing from D_0 = 0".into(),
                ));
            }
            prev = d;
        }
        Ok(Self { amplitudes, discontinuities })
    }

    /// Number of support regions.
    pub fn regions(&self) -> usize {
        self.amplitudes.len()
    }

    /// Amplitude `g_j` for `j` in `0..=m+1`; `g_0 = g_{m+1} = 0`.
    pub fn amplitude(&self, j: usize) -> Rat {
        if j == 0 || j > self.amplitudes.len() {
            Rat::zero()
        } else {
            self.amplitudes[j - 1]
        }
    }

    /// Discontinuity point `D_j` for `j` in `0..=m`; `D_0 = 0`.
    pub fn discontinuity(&self, j: usize) -> f64 {
        if j == 0 {
            0.0
        } else {
            self.discontinuities[j - 1]
        }
    }

    /// Step `g_{j+1} - g_j` across discontinuity `j`, for `j` in `0..=m`.
    pub fn step(&self, j: usize) -> Rat {
        self.amplitude(j + 1) - self.amplitude(j)
    }

    /// The step vector `(g_1 - g_0, ..., g_{m+1} - g_m)`; entries telescope
    /// to zero.
    pub fn difference_vector(&self) -> Vec<Rat> {
        (0..=self.regions()).map(|j| self.step(j)).collect()
    }

    /// End of the support, `D_m`.
    pub fn support_end(&self) -> f64 {
        *self.discontinuities.last().unwrap()
    }

    /// Minimum distance between consecutive discontinuity points, including
    /// `D_1 - D_0`.
    pub fn min_spacing(&self) -> f64 {
        let mut min = f64::INFINITY;
        let mut prev = 0.0;
        for &d in &self.discontinuities {
            min = min.min(d - prev);
            prev = d;
        }
        min
    }

    pub fn max_amplitude(&self) -> Rat {
        self.amplitudes.iter().map(|g| g.abs()).max().unwrap()
    }

    pub fn max_step(&self) -> Rat {
        (0..=self.regions()).map(|j| self.step(j).abs()).max().unwrap()
    }

    /// Evaluate the unblurred signal: `g_j` when `D_{j-1} <= t < D_j`, else 0.
    pub fn eval(&self, t: f64) -> Rat {
        if t < 0.0 {
            return Rat::zero();
        }
        for (k, &d) in self.discontinuities.iter().enumerate() {
            if t < d {
                return self.amplitudes[k];
            }
        }
        Rat::zero()
    }
}

/// A pure Gaussian blur or a finite mixture of Gaussians.
#[derive(Debug, Clone, PartialEq)]
pub struct BlurModel {
    components: Vec<BlurComponent>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlurComponent {
    /// Mixture weight; all weights are exact rationals summing to 1.
    pub weight: Rat,
    /// Gaussian width in units of T.
    pub sigma: f64,
}

impl BlurModel {
    pub fn new(components: Vec<BlurComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidBlur("mixture needs at least one component".into()));
        }
        let mut total = Rat::zero();
        for c in &components {
            if !c.weight.is_positive() {
                return Err(Error::InvalidBlur(format!("weight {} must be positive", c.weight)));
            }
            if !(c.sigma.is_finite() && c.sigma > 0.0) {
                return Err(Error::InvalidBlur(format!("sigma {} must be positive", c.sigma)));
            }
            total += c.weight;
        }
        if !total.is_one() {
            return Err(Error::InvalidBlur(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { components })
    }

    pub fn pure(sigma: f64) -> Result<Self> {
        Self::new(vec![BlurComponent { weight: Rat::one(), sigma }])
    }

    pub fn components(&self) -> &[BlurComponent] {
        &self.components
    }

    pub fn max_sigma(&self) -> f64 {
        self.components.iter().map(|c| c.sigma).fold(0.0, f64::max)
    }
}

/// Uniform sampling grid: `N` samples at `t_0 + iT` with T = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingGrid {
    pub t0: f64,
    pub n: usize,
}

impl SamplingGrid {
    pub fn new(t0: f64, n: usize) -> Self {
        Self { t0, n }
    }

    pub fn sample_time(&self, i: usize) -> f64 {
        self.t0 + i as f64
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.sample_time(i))
    }

    /// Check the grid against a signal: the first sample precedes the
    /// support, the last lies beyond it, no sample coincides exactly with a
    /// discontinuity point, and no two discontinuity points are an integer
    /// number of sampling intervals apart.
    pub fn validate(&self, signal: &PiecewiseConstantSignal) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 samples, got {}", self.n)));
        }
        if !(self.t0.is_finite() && self.t0 < 0.0) {
            return Err(Error::InvalidGrid(format!("t0 = {} must be negative", self.t0)));
        }
        let last = self.sample_time(self.n - 1);
        if last <= signal.support_end() {
            return Err(Error::InvalidGrid(format!(
                "last sample at {last} does not pass the support end {}",
                signal.support_end()
            )));
        }
        for j in 0..=signal.regions() {
            let d = signal.discontinuity(j);
            for t in self.times() {
                if t == d {
                    return Err(Error::InvalidGrid(format!(
                        "sample coincides exactly with discontinuity point D_{j} = {d}"
                    )));
                }
            }
        }
        for j in 0..=signal.regions() {
            for k in (j + 1)..=signal.regions() {
                let gap = signal.discontinuity(k) - signal.discontinuity(j);
                if gap == gap.round() {
                    return Err(Error::InvalidGrid(format!(
                        "D_{k} - D_{j} = {gap} is an integer multiple of T"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A length-N sequence of exact multiples of 1/256.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantizedSequence {
    values: Vec<Rat>,
}

impl QuantizedSequence {
    pub fn new(values: Vec<Rat>) -> Result<Self> {
        for v in &values {
            if !is_multiple_of_q256(*v) {
                return Err(Error::InvalidSequence(format!("{v} is not a multiple of 1/256")));
            }
        }
        Ok(Self { values })
    }

    pub fn from_numerators(nums: &[i64]) -> Self {
        Self { values: nums.iter().map(|&n| q256(n)).collect() }
    }

    /// Numerators at denominator 256.
    pub fn numerators(&self) -> Vec<i64> {
        self.values.iter().map(|v| v.numer() * (256 / v.denom())).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }
}

impl std::ops::Index<usize> for QuantizedSequence {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.values[i]
    }
}

/// Per-region sample counts `eta_0..eta_{m+1}` and their cumulative sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionCounts {
    eta: Vec<usize>,
    iota: Vec<usize>,
}

impl RegionCounts {
    /// `eta_j` for `j` in `0..=m+1`.
    pub fn eta(&self, j: usize) -> usize {
        self.eta[j]
    }

    pub fn etas(&self) -> &[usize] {
        &self.eta
    }

    /// `iota(j) = eta_0 + ... + eta_j` for `j` in `0..=m`: the index of the
    /// first sample at or after `D_j`.
    pub fn iota(&self, j: usize) -> usize {
        self.iota[j]
    }

    pub fn iotas(&self) -> &[usize] {
        &self.iota
    }
}

/// Blurred signal value at `t`, from the closed-form step sum
/// `sum_j (g_{j+1} - g_j) Phi((t - D_j)/sigma)`, mixture-weighted.
pub fn eval_blurred(signal: &PiecewiseConstantSignal, blur: &BlurModel, t: f64) -> f64 {
    eval_blurred_with_phi(signal, blur, t, norm_cdf)
}

/// Same as [`eval_blurred`] with a caller-supplied normal CDF. Used to probe
/// how CDF accuracy propagates into quantized samples.
pub fn eval_blurred_with_phi(
    signal: &PiecewiseConstantSignal,
    blur: &BlurModel,
    t: f64,
    phi: impl Fn(f64) -> f64,
) -> f64 {
    let mut acc = 0.0;
    for c in blur.components() {
        let w = to_f64(c.weight);
        let mut comp = 0.0;
        for j in 0..=signal.regions() {
            let step = signal.step(j);
            if step.is_zero() {
                continue;
            }
            comp += to_f64(step) * phi((t - signal.discontinuity(j)) / c.sigma);
        }
        acc += w * comp;
    }
    acc
}

/// Closest integer multiple of 1/256; exact halves round to even.
pub fn quantize(value: f64) -> Rat {
    debug_assert!(value.is_finite());
    q256((value * 256.0).round_ties_even() as i64)
}

/// Sample the blurred signal on the grid and quantize each value.
pub fn sample_sequence(
    signal: &PiecewiseConstantSignal,
    blur: &BlurModel,
    grid: &SamplingGrid,
) -> Result<QuantizedSequence> {
    sample_sequence_with_phi(signal, blur, grid, norm_cdf)
}

/// [`sample_sequence`] with a caller-supplied normal CDF (test hook).
pub fn sample_sequence_with_phi(
    signal: &PiecewiseConstantSignal,
    blur: &BlurModel,
    grid: &SamplingGrid,
    phi: impl Fn(f64) -> f64 + Copy,
) -> Result<QuantizedSequence> {
    grid.validate(signal)?;
    let values = grid
        .times()
        .map(|t| quantize(eval_blurred_with_phi(signal, blur, t, phi)))
        .collect();
    Ok(QuantizedSequence { values })
}

/// Count samples per region and form the cumulative sums.
pub fn region_counts(signal: &PiecewiseConstantSignal, grid: &SamplingGrid) -> Result<RegionCounts> {
    grid.validate(signal)?;
    let m = signal.regions();
    let mut eta = vec![0usize; m + 2];
    for t in grid.times() {
        let mut region = m + 1;
        if t < 0.0 {
            region = 0;
        } else {
            for j in 1..=m {
                if t < signal.discontinuity(j) {
                    region = j;
                    break;
                }
            }
        }
        eta[region] += 1;
    }
    let mut iota = Vec::with_capacity(m + 1);
    let mut acc = 0;
    for &e in eta.iter().take(m + 1) {
        acc += e;
        iota.push(acc);
    }
    Ok(RegionCounts { eta, iota })
}

#[cfg(test)]
pub(crate) fn example_signal() -> PiecewiseConstantSignal {
    PiecewiseConstantSignal::new(
        vec![q256(256), q256(-256), q256(256), q256(-256)],
        vec![2.44, 5.01, 7.42, 9.43],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    const GAMMA1: [i64; 13] = [0, 144, 256, 256, -256, -256, 16, 256, 256, -256, -256, 0, 0];
    const GAMMA2: [i64; 13] = [0, 256, 256, -205, -256, -256, 256, 256, -218, -256, -22, 0, 0];

    #[test]
    fn eval_reads_regions_and_support() {
        let s = example_signal();
        assert_eq!(s.eval(1.0), rat(1, 1));
        assert_eq!(s.eval(-0.5), Rat::zero());
        assert_eq!(s.eval(2.44), rat(-1, 1));
        assert_eq!(s.eval(9.43), Rat::zero());
    }

    #[test]
    fn construction_rejects_bad_signals() {
        assert!(PiecewiseConstantSignal::new(vec![Rat::zero()], vec![1.5]).is_err());
        assert!(PiecewiseConstantSignal::new(vec![q256(256), q256(256)], vec![1.5, 2.7]).is_err());
        assert!(PiecewiseConstantSignal::new(vec![rat(1, 3)], vec![1.5]).is_err());
        assert!(PiecewiseConstantSignal::new(vec![q256(256)], vec![-1.0]).is_err());
    }

    #[test]
    fn blurred_value_matches_closed_form() {
        let s = example_signal();
        let blur = BlurModel::pure(0.125).unwrap();
        // dominated by Phi(0.16); remaining terms are below 1e-80
        let v = eval_blurred(&s, &blur, 0.02);
        assert!((v - 0.5635594628914328).abs() < 1e-12, "got {v}");
        assert_eq!(quantize(v), q256(144));
        // -1 + 2 Phi(0.08)
        let v = eval_blurred(&s, &blur, 5.02);
        assert!((v - 0.0637627440279748).abs() < 1e-12, "got {v}");
        assert_eq!(quantize(v), q256(16));
        // huge sigma: every Phi tends to 0.5 and the steps telescope
        let v = eval_blurred(&s, &blur_with_sigma(1e9), 3.0);
        assert!(v.abs() < 1e-6);
    }

    fn blur_with_sigma(sigma: f64) -> BlurModel {
        BlurModel::pure(sigma).unwrap()
    }

    #[test]
    fn quantize_rounds_half_to_even() {
        assert_eq!(quantize(0.56356), q256(144));
        assert_eq!(quantize(0.0), Rat::zero());
        assert_eq!(quantize(3.0 / 512.0), q256(2));
        assert_eq!(quantize(1.0 / 512.0), Rat::zero());
        assert_eq!(quantize(-3.0 / 512.0), q256(-2));
    }

    #[test]
    fn sample_sequences_reproduce_both_offsets() {
        let s = example_signal();
        let blur = BlurModel::pure(0.125).unwrap();
        let g1 = sample_sequence(&s, &blur, &SamplingGrid::new(-0.98, 13)).unwrap();
        assert_eq!(g1.numerators(), GAMMA1);
        let g2 = sample_sequence(&s, &blur, &SamplingGrid::new(-0.4, 13)).unwrap();
        assert_eq!(g2.numerators(), GAMMA2);
    }

    #[test]
    fn difference_vector_telescopes() {
        let s = example_signal();
        assert_eq!(
            s.difference_vector(),
            vec![rat(1, 1), rat(-2, 1), rat(2, 1), rat(-2, 1), rat(1, 1)]
        );
        let single = PiecewiseConstantSignal::new(vec![q256(256)], vec![3.3]).unwrap();
        assert_eq!(single.difference_vector(), vec![rat(1, 1), rat(-1, 1)]);
        assert_eq!(s.difference_vector().into_iter().sum::<Rat>(), Rat::zero());
    }

    #[test]
    fn region_counts_match_geometry() {
        let s = example_signal();
        let c1 = region_counts(&s, &SamplingGrid::new(-0.98, 13)).unwrap();
        assert_eq!(c1.etas(), &[1, 3, 2, 3, 2, 2]);
        assert_eq!(c1.iotas(), &[1, 4, 6, 9, 11]);
        let c2 = region_counts(&s, &SamplingGrid::new(-0.4, 13)).unwrap();
        assert_eq!(c2.etas(), &[1, 2, 3, 2, 2, 3]);
        assert_eq!(c2.iotas(), &[1, 3, 6, 8, 10]);
        assert_eq!(c1.etas().iter().sum::<usize>(), 13);
    }

    #[test]
    fn grid_rejections() {
        let s = example_signal();
        // too short to cover the support
        assert!(SamplingGrid::new(-0.98, 5).validate(&s).is_err());
        // nonnegative offset
        assert!(SamplingGrid::new(0.25, 13).validate(&s).is_err());
        // sample exactly on a discontinuity point
        let s2 = PiecewiseConstantSignal::new(vec![q256(256)], vec![2.5]).unwrap();
        assert!(SamplingGrid::new(-0.5, 5).validate(&s2).is_err());
        // discontinuity spacing equal to a whole number of intervals
        let s3 =
            PiecewiseConstantSignal::new(vec![q256(256), q256(-256)], vec![2.3, 5.3]).unwrap();
        assert!(SamplingGrid::new(-0.45, 8).validate(&s3).is_err());
    }

    #[test]
    fn single_component_mixture_equals_pure() {
        let s = example_signal();
        let pure = BlurModel::pure(0.125).unwrap();
        let split = BlurModel::new(vec![
            BlurComponent { weight: rat(1, 2), sigma: 0.125 },
            BlurComponent { weight: rat(1, 2), sigma: 0.125 },
        ])
        .unwrap();
        for i in 0..40 {
            let t = -1.0 + 0.3 * i as f64;
            let a = eval_blurred(&s, &pure, t);
            let b = eval_blurred(&s, &split, t);
            assert!((a - b).abs() <= 1e-14);
        }
    }

    proptest! {
        #[test]
        fn quantize_is_idempotent(x in -600.0f64..600.0) {
            let q = quantize(x);
            prop_assert_eq!(quantize(crate::rat::to_f64(q)), q);
        }

        #[test]
        fn quantize_error_at_most_half_step(x in -600.0f64..600.0) {
            let q = quantize(x);
            prop_assert!((crate::rat::to_f64(q) - x).abs() <= 0.5 / 256.0 + 1e-12);
        }
    }
}
