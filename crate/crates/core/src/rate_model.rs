//! Gaussian model of the highest decodable rate and the induced
//! reciprocal-Gaussian blocklength distribution.
//!
//! A decoder fed incremental redundancy first succeeds at some blocklength
//! `N_S`; the corresponding rate `R_S = k / N_S` is modeled as
//! `Normal(mu, sigma)`. Everything downstream (increment optimization, CRC
//! and two-phase analysis, the simulator) consumes this model through `q`,
//! `success_cdf` and `interval_success_probability`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math;

/// Upper tail of the standard normal distribution,
/// `Q(x) = P(Z > x) = 0.5 * erfc(x / sqrt(2))`.
pub fn q(x: f64) -> f64 {
    0.5 * math::erfc(x / std::f64::consts::SQRT_2)
}

/// Inverse of [`q`] on (0, 1).
pub fn q_inv(p: f64) -> f64 {
    -math::normal_quantile(p)
}

/// Gaussian parameters of the decodable-rate distribution for a `k`-bit
/// message.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RateModelRepr", into = "RateModelRepr")]
pub struct RateModel {
    mu: f64,
    sigma: f64,
    k: u32,
}

#[derive(Serialize, Deserialize)]
struct RateModelRepr {
    mu: f64,
    sigma: f64,
    k: u32,
}

impl TryFrom<RateModelRepr> for RateModel {
    type Error = Error;
    fn try_from(r: RateModelRepr) -> Result<Self> {
        RateModel::new(r.mu, r.sigma, r.k)
    }
}

impl From<RateModel> for RateModelRepr {
    fn from(m: RateModel) -> Self {
        RateModelRepr { mu: m.mu, sigma: m.sigma, k: m.k }
    }
}

impl RateModel {
    /// Builds a model, rejecting parameters with non-negligible mass at
    /// non-positive rates (`mu/sigma` must exceed 3).
    pub fn new(mu: f64, sigma: f64, k: u32) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidModel(format!("sigma must be positive, got {sigma}")));
        }
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::InvalidModel(format!("mu must be positive, got {mu}")));
        }
        if k == 0 {
            return Err(Error::InvalidModel("message size k must be at least 1".into()));
        }
        if mu / sigma <= 3.0 {
            return Err(Error::InvalidModel(format!(
                "mu/sigma = {:.3} too small; the Gaussian rate model needs mu/sigma > 3",
                mu / sigma
            )));
        }
        Ok(Self { mu, sigma, k })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn k_f64(&self) -> f64 {
        f64::from(self.k)
    }

    /// Probability that decoding succeeds by blocklength `n`,
    /// `Q((k/n - mu) / sigma)`.
    pub fn success_cdf(&self, n: f64) -> f64 {
        q((self.k_f64() / n - self.mu) / self.sigma)
    }

    /// Density of the blocklength of first successful decoding
    /// (the reciprocal-Gaussian induced by the Gaussian rate model).
    pub fn blocklength_density(&self, n: f64) -> Result<f64> {
        if !(n > 0.0) {
            return Err(Error::InvalidArgument(format!("blocklength must be positive, got {n}")));
        }
        let k = self.k_f64();
        let z = (k / n - self.mu) / self.sigma;
        Ok(k / (n * n * self.sigma) * math::phi(z))
    }

    /// Probability of first success occurring in `(n1, n2]`:
    /// `Q((k/n2 - mu)/sigma) - Q((k/n1 - mu)/sigma)`.
    pub fn interval_success_probability(&self, n1: f64, n2: f64) -> Result<f64> {
        if !(n1 > 0.0 && n2 > 0.0) {
            return Err(Error::InvalidArgument("blocklengths must be positive".into()));
        }
        if n1 > n2 {
            return Err(Error::InvalidArgument(format!(
                "interval bounds out of order: n1 = {n1} > n2 = {n2}"
            )));
        }
        Ok(self.success_cdf(n2) - self.success_cdf(n1))
    }

    /// Fits `(mu, sigma)` from empirical first-success blocklengths by probit
    /// regression on the empirical rate c.c.d.f.
    ///
    /// The c.c.d.f. of `R_S` evaluated at `k/n` equals the empirical
    /// `P(N_S <= n)`; values within `trim = (lo, hi)` are mapped through the
    /// inverse normal tail and a least-squares line in (rate, probit) space
    /// yields `sigma = 1/slope`, `mu = -intercept/slope`.
    pub fn fit(samples: &EmpiricalBlocklengths, trim: (f64, f64)) -> Result<Self> {
        let (lo, hi) = trim;
        if !(0.0 < lo && lo < hi && hi < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "trim bounds must satisfy 0 < lo < hi < 1, got ({lo}, {hi})"
            )));
        }
        if samples.samples().len() < 100 {
            return Err(Error::Fit(format!(
                "need at least 100 samples, got {}",
                samples.samples().len()
            )));
        }

        let mut sorted = samples.samples().to_vec();
        sorted.sort_unstable();
        let n_total = sorted.len() as f64;
        let k = f64::from(samples.k());

        // (rate, probit of P(N <= n)) per distinct blocklength
        let mut pts: Vec<(f64, f64)> = Vec::new();
        let mut i = 0;
        let mut below = 0usize;
        while i < sorted.len() {
            let v = sorted[i];
            let mut j = i;
            while j < sorted.len() && sorted[j] == v {
                j += 1;
            }
            below += j - i;
            let p = below as f64 / n_total;
            if p >= lo && p <= hi {
                pts.push((k / v as f64, q_inv(p)));
            }
            i = j;
        }

        if pts.len() < 10 {
            return Err(Error::Fit(format!(
                "only {} distinct quantile points survive trimming; need at least 10",
                pts.len()
            )));
        }

        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let var_x = sxx - sx * sx / n;
        if var_x <= 0.0 {
            return Err(Error::Fit("degenerate samples: no rate variation".into()));
        }
        let slope = (sxy - sx * sy / n) / var_x;
        let intercept = (sy - slope * sx) / n;
        if !(slope > 0.0) {
            return Err(Error::Fit(format!(
                "probit regression produced non-positive slope {slope}"
            )));
        }
        RateModel::new(-intercept / slope, 1.0 / slope, samples.k())
    }
}

/// Empirical first-success blocklengths for a `k`-bit message.
#[derive(Debug, Clone)]
pub struct EmpiricalBlocklengths {
    samples: Vec<u64>,
    k: u32,
}

impl EmpiricalBlocklengths {
    /// Every sample must be at least `k`: one channel use carries at most
    /// one bit, so the rate never exceeds 1.
    pub fn new(samples: Vec<u64>, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("message size k must be at least 1".into()));
        }
        if samples.is_empty() {
            return Err(Error::InvalidArgument("no samples".into()));
        }
        if let Some(&bad) = samples.iter().find(|&&s| s < u64::from(k)) {
            return Err(Error::InvalidArgument(format!(
                "sample {bad} is below the message size {k} (rate would exceed 1)"
            )));
        }
        Ok(Self { samples, k })
    }

    pub fn samples(&self) -> &[u64] {
        &self.samples
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}
