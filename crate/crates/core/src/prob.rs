//! Probability bounds behind the graph rounding analysis.
//!
//! `P(x, t)` is the probability that exactly `t` of `m` independent events with
//! probabilities `x` occur. The rounding guarantee reduces to minimizing
//! `f(x) = sum_t a_t P(x, t)` over `x in [0, 2/3]^m` with `sum x <= 1`; for
//! sequences that are nonincreasing and convex the minimum sits at one entry
//! `2/3`, one entry `1/3`, and zeros elsewhere, giving `2/9 (a0 + a2) + 5/9 a1`.

use num::rational::Ratio;
use num::{BigInt, BigRational, One, Zero};

use crate::error::{EccError, Result};

const SEQUENCE_TOL: f64 = 1e-12;

/// Largest number of grid points [`grid_min_of_f`] will evaluate.
pub const MAX_GRID_POINTS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(EccError::InvalidParameter(format!(
                "probability {bad} outside [0, 1]"
            )));
        }
        Ok(ProbabilityVector(entries))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `(P(x, 0), ..., P(x, m))` by the subset-sum recurrence; all terms are
    /// nonnegative, so there is no cancellation.
    pub fn distribution(&self) -> Vec<f64> {
        let mut dist = vec![0.0; self.0.len() + 1];
        dist[0] = 1.0;
        for (i, &x) in self.0.iter().enumerate() {
            for t in (1..=i + 1).rev() {
                dist[t] = dist[t] * (1.0 - x) + dist[t - 1] * x;
            }
            dist[0] *= 1.0 - x;
        }
        dist
    }
}

/// `P(x, t)`; zero for `t < 0` and `t > m`.
pub fn exactly_t_probability(x: &ProbabilityVector, t: i64) -> f64 {
    if t < 0 || t as usize > x.len() {
        return 0.0;
    }
    x.distribution()[t as usize]
}

/// Probability that at most one event occurs; at least `2/e` whenever the
/// probabilities sum to at most 1.
pub fn at_most_one_probability(x: &ProbabilityVector) -> f64 {
    let dist = x.distribution();
    dist[0] + dist.get(1).copied().unwrap_or(0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence(Vec<f64>);

impl CoefficientSequence {
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.iter().any(|v| !v.is_finite()) {
            return Err(EccError::InvalidParameter(
                "coefficients must be finite".into(),
            ));
        }
        Ok(CoefficientSequence(a))
    }

    /// `a_t = 1 / (1 + g + t)` for `t = 0..=m`.
    pub fn harmonic(g: usize, m: usize) -> Self {
        CoefficientSequence((0..=m).map(|t| 1.0 / (1 + g + t) as f64).collect())
    }

    /// `a_t = 2/9 (1/(t+1) + 1/(t+3)) + 5/9 / (t+2)`, the sequence arising when
    /// a neighbor of the edge holds a strong color.
    pub fn composite(m: usize) -> Self {
        CoefficientSequence(
            (0..=m)
                .map(|t| {
                    let t = t as f64;
                    2.0 / 9.0 * (1.0 / (t + 1.0) + 1.0 / (t + 3.0)) + 5.0 / 9.0 / (t + 2.0)
                })
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `f(x) = sum_t a_t P(x, t)`.
pub fn weighted_series(x: &ProbabilityVector, a: &CoefficientSequence) -> Result<f64> {
    if a.len() != x.len() + 1 {
        return Err(EccError::InvalidParameter(format!(
            "expected {} coefficients for {} events, got {}",
            x.len() + 1,
            x.len(),
            a.len()
        )));
    }
    Ok(x.distribution().iter().zip(&a.0).map(|(p, a)| p * a).sum())
}

/// Whether `a` is nonincreasing and convex.
pub fn check_sequence_conditions(a: &CoefficientSequence) -> Result<bool> {
    let a = &a.0;
    if a.len() < 3 {
        return Err(EccError::InvalidParameter(format!(
            "need at least 3 coefficients, got {}",
            a.len()
        )));
    }
    let monotone = a.windows(2).all(|w| w[1] <= w[0] + SEQUENCE_TOL);
    let convex = a
        .windows(3)
        .all(|w| 2.0 * w[1] <= w[0] + w[2] + SEQUENCE_TOL);
    Ok(monotone && convex)
}

/// `2/9 (a0 + a2) + 5/9 a1`, the minimum of `f` over the lemma's domain.
pub fn lemma_bounding_min(a: &CoefficientSequence) -> Result<f64> {
    if !check_sequence_conditions(a)? {
        return Err(EccError::InvalidParameter(
            "sequence must be nonincreasing and convex".into(),
        ));
    }
    let a = &a.0;
    Ok(2.0 / 9.0 * (a[0] + a[2]) + 5.0 / 9.0 * a[1])
}

/// Exact counterpart of [`lemma_bounding_min`].
pub fn lemma_bounding_min_exact(a: &[BigRational]) -> Result<BigRational> {
    if a.len() < 3 {
        return Err(EccError::InvalidParameter(format!(
            "need at least 3 coefficients, got {}",
            a.len()
        )));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let monotone = a.windows(2).all(|w| w[1] <= w[0]);
    let convex = a.windows(3).all(|w| &two * &w[1] <= &w[0] + &w[2]);
    if !(monotone && convex) {
        return Err(EccError::InvalidParameter(
            "sequence must be nonincreasing and convex".into(),
        ));
    }
    let ninth = |n: i64| BigRational::new(BigInt::from(n), BigInt::from(9));
    Ok(ninth(2) * (&a[0] + &a[2]) + ninth(5) * &a[1])
}

fn unit_fraction(d: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(d))
}

/// Exact `a_t = 1 / (1 + g + t)`.
pub fn harmonic_sequence_exact(g: usize, m: usize) -> Vec<BigRational> {
    (0..=m).map(|t| unit_fraction(1 + g + t)).collect()
}

/// Exact composite sequence, see [`CoefficientSequence::composite`].
pub fn composite_sequence_exact(m: usize) -> Vec<BigRational> {
    let ninth = |n: i64| BigRational::new(BigInt::from(n), BigInt::from(9));
    (0..=m)
        .map(|t| {
            ninth(2) * (unit_fraction(t + 1) + unit_fraction(t + 3))
                + ninth(5) * unit_fraction(t + 2)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridMinimum {
    pub value: f64,
    pub argmin: Vec<Ratio<i64>>,
}

/// Exhaustive minimum of `f` over the multiples of `step` in
/// `{x in [0, 2/3]^m : sum x <= 1}`.
///
/// Domain membership is decided in integer units of `step`, so the boundary
/// points `2/3` and `1/3` are hit exactly. The first minimizer in
/// lexicographic order is returned.
pub fn grid_min_of_f(a: &CoefficientSequence, m: usize, step: Ratio<i64>) -> Result<GridMinimum> {
    if a.len() != m + 1 {
        return Err(EccError::InvalidParameter(format!(
            "expected {} coefficients, got {}",
            m + 1,
            a.len()
        )));
    }
    let third = Ratio::new(1, 3);
    if step <= Ratio::zero() || !(third / step).is_integer() {
        return Err(EccError::InvalidParameter(format!(
            "step {step} does not divide 1/3"
        )));
    }
    // x_i = j_i * step with j_i <= 2u and sum j <= 3u
    let u = (third / step).to_integer() as usize;
    let per_axis = 2 * u as u64 + 1;
    let points = (0..m).try_fold(1u64, |acc, _| acc.checked_mul(per_axis));
    if points.is_none_or(|p| p > MAX_GRID_POINTS) {
        return Err(EccError::TooLarge(format!(
            "{per_axis}^{m} grid points exceed the limit of {MAX_GRID_POINTS}"
        )));
    }

    let h = *step.numer() as f64 / *step.denom() as f64;
    let mut j = vec![0usize; m];
    let mut best: Option<(f64, Vec<usize>)> = None;
    loop {
        if j.iter().sum::<usize>() <= 3 * u {
            let x = ProbabilityVector(j.iter().map(|&ji| ji as f64 * h).collect());
            let value = weighted_series(&x, a)?;
            if best.as_ref().is_none_or(|(b, _)| value < *b) {
                best = Some((value, j.clone()));
            }
        }
        let mut i = m;
        loop {
            if i == 0 {
                let (value, j) = best.expect("the origin is in the domain");
                let argmin = j.iter().map(|&ji| step * ji as i64).collect();
                return Ok(GridMinimum { value, argmin });
            }
            i -= 1;
            if j[i] < 2 * u {
                j[i] += 1;
                break;
            }
            j[i] = 0;
        }
    }
}
