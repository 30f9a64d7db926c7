//! Seeded sampling of parameter points with pole avoidance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::models::{ModelId, RModel, POLE_MARGIN};
use crate::param::ParamPoint;
use crate::quantum::physical_p;
use crate::tensor::C64;

/// Generator identifier written into reports.
pub const GENERATOR: &str = "chacha8";

pub const MAX_RETRIES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplingConfig {
    /// `|p|` range of the off-circle branch.
    pub p_annulus: (f64, f64),
    /// `ħ` range of the physical branch `p = e^{iħ/12}`.
    pub hbar: (f64, f64),
    /// `|λ|`, `|μ|` range.
    pub spectral: (f64, f64),
    pub pole_margin: f64,
}

impl SamplingConfig {
    pub fn for_model(id: ModelId) -> Self {
        let p_annulus = match id {
            // cond(𝒟) grows to ~1e16 at |p| = 0.8; see the README
            ModelId::Gl44 => (0.95, 1.05),
            _ => (0.8, 1.25),
        };
        Self { p_annulus, hbar: (0.05, 0.6), spectral: (0.3, 3.0), pole_margin: POLE_MARGIN }
    }
}

/// Deterministic stream of sample points.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn annulus(&mut self, (lo, hi): (f64, f64)) -> C64 {
        let r = self.rng.random_range(lo..=hi);
        let t = self.rng.random_range(0.0..std::f64::consts::TAU);
        C64::from_polar(r, t)
    }

    /// Draws an admissible point; even indices use the annulus branch for `p`,
    /// odd indices the physical circle.
    pub fn point(&mut self, model: &dyn RModel, index: usize, cfg: &SamplingConfig) -> Result<ParamPoint> {
        for _ in 0..MAX_RETRIES {
            let p = if index.is_multiple_of(2) {
                self.annulus(cfg.p_annulus)
            } else {
                physical_p(self.rng.random_range(cfg.hbar.0..=cfg.hbar.1))
            };
            let pt = ParamPoint::new(p, self.annulus(cfg.spectral), self.annulus(cfg.spectral));
            if admissible(model, &pt, cfg.pole_margin) {
                return Ok(pt);
            }
        }
        Err(Error::SamplingExhausted(MAX_RETRIES))
    }

    pub fn points(&mut self, model: &dyn RModel, n: usize, cfg: &SamplingConfig) -> Result<Vec<ParamPoint>> {
        (0..n).map(|i| self.point(model, i, cfg)).collect()
    }
}

/// Spectral arguments at which the checks evaluate the families.
pub fn spectral_arguments(pt: &ParamPoint) -> [C64; 5] {
    let one = C64::new(1.0, 0.0);
    [pt.lambda, pt.mu, pt.ratio(), one / pt.lambda, one / pt.ratio()]
}

/// Pole margin holds at the sample and at the classical point; CSG rescaling stays off its branch cut.
pub fn admissible(model: &dyn RModel, pt: &ParamPoint, margin: f64) -> bool {
    let one = C64::new(1.0, 0.0);
    spectral_arguments(pt).iter().all(|&x| {
        model.pole_distance(pt.p, x) > margin
            && model.pole_distance(one, x) > margin
            && model.hatted(pt.p, x).is_none_or(|r| r.is_ok())
    })
}
