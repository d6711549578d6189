//! Richardson/Neville extrapolation along a geometric parameter schedule.

use super::BigReal;
use crate::error::{Error, Result};
use rug::{Float, Integer, Rational};

/// Schedule and depth parameters for Richardson-style acceleration.
///
/// The engine assumes the sampled quantity admits an error expansion in
/// powers `parameter^(leading_power·k)`, `k = 1, 2, …`, along a schedule
/// where successive parameters shrink by the integer factor
/// `schedule_ratio`.
#[derive(Clone, Debug)]
pub struct ExtrapolationConfig {
    /// Number of elimination stages.
    pub depth: u32,
    /// Successive parameter ratio (≥ 2).
    pub schedule_ratio: u32,
    /// Exponent of the assumed leading error term (positive rational).
    pub leading_power: Rational,
    /// Number of samples drawn (≥ depth + 1).
    pub samples: u32,
}

impl ExtrapolationConfig {
    pub fn new(
        depth: u32,
        schedule_ratio: u32,
        leading_power: Rational,
        samples: u32,
    ) -> Result<Self> {
        let config = ExtrapolationConfig {
            depth,
            schedule_ratio,
            leading_power,
            samples,
        };
        config.validate()?;
        Ok(config)
    }

    /// Convenience constructor for integer leading powers.
    pub fn with_power(depth: u32, schedule_ratio: u32, power: u32, samples: u32) -> Result<Self> {
        Self::new(depth, schedule_ratio, Rational::from(power), samples)
    }

    pub fn validate(&self) -> Result<()> {
        if self.depth == 0 {
            return Err(Error::invalid("extrapolation depth must be positive"));
        }
        if self.schedule_ratio < 2 {
            return Err(Error::invalid(format!(
                "schedule_ratio must be at least 2, got {}",
                self.schedule_ratio
            )));
        }
        if self.leading_power <= 0u32 {
            return Err(Error::invalid("leading_power must be positive"));
        }
        if self.samples < self.depth + 1 {
            return Err(Error::invalid(format!(
                "need at least depth+1 = {} samples, got {}",
                self.depth + 1,
                self.samples
            )));
        }
        Ok(())
    }

    /// Copy with a different leading power.
    pub fn powered(&self, power: u32) -> Self {
        ExtrapolationConfig {
            leading_power: Rational::from(power),
            ..self.clone()
        }
    }
}

impl std::fmt::Display for ExtrapolationConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "depth={} ratio={} leading_power={} samples={}",
            self.depth, self.schedule_ratio, self.leading_power, self.samples
        )
    }
}

/// An extrapolated limit value with a heuristic error estimate.
///
/// `value` is the deepest tableau entry; `error_estimate` is the absolute
/// difference between the last two diagonal entries (plus any rigorous
/// floor the producing operation folds in, e.g. series tail bounds).
#[derive(Clone, Debug)]
pub struct ConstantEstimate {
    pub value: BigReal,
    pub error_estimate: BigReal,
    pub config: ExtrapolationConfig,
    pub label: String,
}

impl ConstantEstimate {
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Adds a rigorous floor (e.g. the largest sample tail bound) to the
    /// heuristic error estimate.
    pub(crate) fn raise_error_floor(mut self, floor: &BigReal) -> Self {
        self.error_estimate = &self.error_estimate + floor;
        self
    }
}

/// Richardson-extrapolates `samples` of `(parameter, value)` pairs.
///
/// Parameters must be positive, strictly monotone, and consistent with
/// `config.schedule_ratio`; either ordering is accepted. The tableau corner
/// built from the `depth+1` smallest parameters is returned as the value;
/// the error estimate is the last diagonal difference.
pub fn richardson_extrapolate(
    samples: &[(BigReal, BigReal)],
    config: &ExtrapolationConfig,
) -> Result<ConstantEstimate> {
    config.validate()?;
    let n = samples.len();
    if n < (config.depth + 1) as usize {
        return Err(Error::invalid(format!(
            "need at least depth+1 = {} samples, got {n}",
            config.depth + 1
        )));
    }

    // Normalize to parameters decreasing toward zero.
    let mut ordered: Vec<&(BigReal, BigReal)> = samples.iter().collect();
    if samples[0].0 < samples[n - 1].0 {
        ordered.reverse();
    }
    for pair in &ordered {
        if !pair.0.is_positive() || !pair.0.is_finite() {
            return Err(Error::invalid("extrapolation parameters must be positive"));
        }
    }
    let tol = BigReal::pow2(-30, 64)?;
    let ratio_real = BigReal::from_u64(config.schedule_ratio as u64, 64)?;
    for w in ordered.windows(2) {
        let (h0, h1) = (&w[0].0, &w[1].0);
        if h0 <= h1 {
            return Err(Error::invalid("extrapolation parameters must be strictly monotone"));
        }
        let drift = (&(h0 / h1) / &ratio_real - BigReal::from_u64(1, 64)?).abs();
        if drift > tol {
            return Err(Error::invalid(format!(
                "parameter schedule inconsistent with ratio {}",
                config.schedule_ratio
            )));
        }
    }

    let prec = ordered
        .iter()
        .map(|p| p.1.precision_bits())
        .max()
        .unwrap_or(super::MIN_PRECISION_BITS);

    let mut column: Vec<BigReal> = ordered.iter().map(|p| p.1.with_precision(prec)).collect::<Result<_>>()?;
    let mut previous_corner = column[n - 1].clone();

    for stage in 1..=config.depth {
        let factor = stage_factor(config, stage, prec);
        let one = BigReal::from_u64(1, prec)?;
        let denom = &factor - &one;
        for j in 0..(n - stage as usize) {
            column[j] = &(&(&factor * &column[j + 1]) - &column[j]) / &denom;
        }
        if stage == config.depth - 1 {
            previous_corner = column[n - stage as usize - 1].clone();
        }
    }
    // depth == 1: the previous diagonal entry is the last raw sample,
    // already captured before the loop.

    let value = column[n - 1 - config.depth as usize].clone();
    let error_estimate = (&value - &previous_corner).abs();
    Ok(ConstantEstimate {
        value,
        error_estimate,
        config: config.clone(),
        label: String::new(),
    })
}

/// `ratio^(leading_power·stage)`, exact when the product is an integer.
fn stage_factor(config: &ExtrapolationConfig, stage: u32, prec: u32) -> BigReal {
    let exponent = Rational::from(stage) * &config.leading_power;
    if exponent.is_integer() {
        let e = exponent.numer().to_u32().expect("stage exponent fits u32");
        let pow = Integer::from(config.schedule_ratio).pow(e);
        BigReal::from_float(Float::with_val(prec, pow))
    } else {
        let r = Float::with_val(prec, config.schedule_ratio);
        let e = Float::with_val(prec, &exponent);
        BigReal::from_float(Float::with_val(prec, r.pow(e)))
    }
}

/// Estimates the leading error power from successive sample differences:
/// the log-ratio of consecutive first differences along the schedule,
/// rounded to the nearest positive integer. Returns `None` when the
/// differences are degenerate (zero or non-finite).
pub fn estimate_leading_power(samples: &[(BigReal, BigReal)], schedule_ratio: u32) -> Option<u32> {
    if samples.len() < 3 {
        return None;
    }
    let n = samples.len();
    // Use the most asymptotic (smallest-parameter) triple.
    let (a, b, c) = (&samples[n - 3].1, &samples[n - 2].1, &samples[n - 1].1);
    let d1 = (b - a).abs();
    let d2 = (c - b).abs();
    if d1.is_zero() || d2.is_zero() {
        return None;
    }
    let ratio = (&d1 / &d2).to_f64();
    if !ratio.is_finite() || ratio <= 0.0 {
        return None;
    }
    let slope = ratio.ln() / (schedule_ratio as f64).ln();
    if !slope.is_finite() || slope < 0.5 {
        return None;
    }
    Some(slope.round().max(1.0) as u32)
}

use rug::ops::Pow;

#[cfg(test)]
mod tests {
    use super::*;

    fn config(depth: u32, power: u32, samples: u32) -> ExtrapolationConfig {
        ExtrapolationConfig::with_power(depth, 2, power, samples).unwrap()
    }

    #[test]
    fn reproduces_polynomials_exactly() {
        // f(h) = 1 + h sampled at h = 1, 1/2, 1/4.
        let prec = 128;
        let samples: Vec<(BigReal, BigReal)> = (0..3)
            .map(|j| {
                let h = BigReal::pow2(-j, prec).unwrap();
                let y = &BigReal::from_u64(1, prec).unwrap() + &h;
                (h, y)
            })
            .collect();
        let est = richardson_extrapolate(&samples, &config(2, 1, 3)).unwrap();
        let err = (&est.value - &BigReal::from_u64(1, prec).unwrap()).abs();
        assert!(err <= BigReal::pow2(-50, prec).unwrap(), "err = {err}");
        assert!(est.error_estimate <= BigReal::pow2(-50, prec).unwrap());
    }

    #[test]
    fn drives_log_expression_to_half() {
        // x(1 - x ln(1 + 1/x)) at x = 2^j, j = 4..12  →  1/2.
        let prec = 256;
        let one = BigReal::from_u64(1, prec).unwrap();
        let samples: Vec<(BigReal, BigReal)> = (4..=12)
            .map(|j| {
                let x = BigReal::pow2(j, prec).unwrap();
                let v = &x * &(&one - &(&x * &(&one / &x).ln_1p()));
                (BigReal::pow2(-j, prec).unwrap(), v)
            })
            .collect();
        let est = richardson_extrapolate(&samples, &config(6, 1, 9)).unwrap();
        let half = BigReal::parse("0.5", prec).unwrap();
        let err = (&est.value - &half).abs();
        assert!(err <= BigReal::parse("1e-10", prec).unwrap(), "err = {err}");
    }

    #[test]
    fn rejects_insufficient_samples() {
        let prec = 128;
        let samples = vec![(
            BigReal::from_u64(1, prec).unwrap(),
            BigReal::from_u64(1, prec).unwrap(),
        )];
        assert!(richardson_extrapolate(&samples, &config(1, 1, 2)).is_err());
    }

    #[test]
    fn rejects_non_monotone_parameters() {
        let prec = 128;
        let one = BigReal::from_u64(1, prec).unwrap();
        let samples = vec![
            (one.clone(), one.clone()),
            (one.clone(), one.clone()),
            (BigReal::parse("0.5", prec).unwrap(), one.clone()),
        ];
        assert!(richardson_extrapolate(&samples, &config(1, 1, 2)).is_err());
    }

    #[test]
    fn rejects_schedule_ratio_mismatch() {
        let prec = 128;
        let one = BigReal::from_u64(1, prec).unwrap();
        let samples = vec![
            (one.clone(), one.clone()),
            (BigReal::parse("0.3", prec).unwrap(), one.clone()),
            (BigReal::parse("0.09", prec).unwrap(), one.clone()),
        ];
        assert!(richardson_extrapolate(&samples, &config(1, 1, 2)).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(ExtrapolationConfig::with_power(0, 2, 1, 2).is_err());
        assert!(ExtrapolationConfig::with_power(1, 1, 1, 2).is_err());
        assert!(ExtrapolationConfig::with_power(2, 2, 1, 2).is_err());
        assert!(ExtrapolationConfig::with_power(2, 2, 1, 3).is_ok());
    }

    #[test]
    fn leading_power_estimation() {
        // y(h) = c + h^2 on h = 2^-j: slope should be 2.
        let prec = 128;
        let samples: Vec<(BigReal, BigReal)> = (0..6)
            .map(|j| {
                let h = BigReal::pow2(-j, prec).unwrap();
                let y = &BigReal::from_u64(3, prec).unwrap() + &(&h * &h);
                (h, y)
            })
            .collect();
        assert_eq!(estimate_leading_power(&samples, 2), Some(2));
    }
}
