//! Seeded Monte Carlo experiments over random simplices and random frames.
//!
//! Sampled floats are embedded as exact dyadic rationals, so every verdict
//! downstream of the sampling is decided in exact arithmetic. Per-sample
//! seeding makes reports identical regardless of the worker count.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chirotope::{flag_of_coords, SimplexOrientation};
use crate::error::Error;
use crate::exact::{RVec, Rat};
use crate::framing::{Frame, FramedPolytope};
use crate::polytope::{make_family, FamilySpec, PointConfig};
use crate::strings::{self, OrientationData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    GaussianSimplex,
    RandomFrameSimplex,
    RandomFrameCube,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub dim_lo: usize,
    pub dim_hi: usize,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimReport {
    pub dim: usize,
    pub samples: usize,
    /// samples exhibiting a loop at level k, keyed by k
    pub loops_per_k: BTreeMap<i64, usize>,
    pub samples_with_loop: usize,
    /// exact fraction as "a/b"
    pub loop_fraction: String,
    /// degenerate draws that were re-sampled
    pub resamples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub spec: ExperimentSpec,
    pub per_dim: Vec<DimReport>,
}

/// splitmix64, used to derive independent per-sample seeds.
fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

fn sample_seed(seed: u64, dim: usize, index: usize, attempt: usize) -> u64 {
    mix(seed ^ mix(dim as u64) ^ mix((index as u64) << 1) ^ mix((attempt as u64) << 2))
}

/// Standard normal via Box-Muller on 53-bit floats, embedded exactly as a
/// dyadic rational.
fn gaussian_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen();
        let z = (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
        if let Some(r) = Rat::from_float(z) {
            return r;
        }
    }
}

fn gaussian_vector(rng: &mut ChaCha8Rng, d: usize) -> RVec {
    RVec::new((0..d).map(|_| gaussian_rat(rng)).collect())
}

/// Loop levels of one sampled instance, or `None` when the draw was
/// degenerate and must be re-sampled.
fn sample_loops(kind: ExperimentKind, dim: usize, seed: u64) -> Result<Option<Vec<i64>>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        ExperimentKind::GaussianSimplex => {
            let points: Vec<RVec> = (0..=dim).map(|_| gaussian_vector(&mut rng, dim)).collect();
            let flag = match flag_of_coords(&points, dim) {
                Ok(f) if f.is_uniform() => f,
                _ => return Ok(None), // degenerate: resample
            };
            let data = SimplexOrientation::new(flag)?;
            loops_of(&data)
        }
        ExperimentKind::RandomFrameSimplex => {
            let ambient = dim + 1;
            let frame = match random_frame(&mut rng, ambient) {
                Some(f) => f,
                None => return Ok(None),
            };
            // standard simplex conv(e_1..e_{d+1}) in frame coordinates
            let coords: Vec<RVec> = (0..ambient).map(|i| frame.coords(&RVec::unit(ambient, i))).collect();
            let flag = match flag_of_coords(&coords, dim) {
                Ok(f) if f.is_uniform() => f,
                _ => return Ok(None),
            };
            let data = SimplexOrientation::new(flag)?;
            loops_of(&data)
        }
        ExperimentKind::RandomFrameCube => {
            let frame = match random_frame(&mut rng, dim) {
                Some(f) => f,
                None => return Ok(None),
            };
            let cfg: PointConfig = make_family(&FamilySpec::Cube(dim))?;
            let fp = FramedPolytope::new(cfg, frame)?;
            if !fp.is_admissible().is_admissible() {
                return Ok(None);
            }
            loops_of(&fp)
        }
    }
}

fn random_frame(rng: &mut ChaCha8Rng, d: usize) -> Option<Frame> {
    let columns: Vec<RVec> = (0..d).map(|_| gaussian_vector(rng, d)).collect();
    // unnormalized Gram-Schmidt keeps the f-orientation of the orthonormal
    // frame while staying rational
    Frame::new(columns).ok().map(|f| f.orthogonalize())
}

fn loops_of<D: OrientationData>(data: &D) -> Result<Option<Vec<i64>>, Error> {
    let mut levels = Vec::new();
    let d = data.dim();
    for k in 0..=d - 2 {
        if strings::has_k_loop_in(data, k)? {
            levels.push(k);
        }
    }
    Ok(Some(levels))
}

/// Runs the experiment; parallel over samples, deterministic in the spec.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport, Error> {
    if spec.dim_hi > 12 {
        return Err(Error::Budget("experiment dimensions are capped at 12".into()));
    }
    if spec.samples > 10_000 {
        return Err(Error::Budget("experiments are capped at 10000 samples".into()));
    }
    if spec.dim_lo < 1 || spec.dim_lo > spec.dim_hi {
        return Err(Error::Parameter("empty dimension range".into()));
    }
    let mut per_dim = Vec::new();
    for dim in spec.dim_lo..=spec.dim_hi {
        let outcomes: Vec<Result<(Vec<i64>, usize), Error>> = (0..spec.samples)
            .into_par_iter()
            .map(|index| {
                let mut attempt = 0usize;
                loop {
                    let seed = sample_seed(spec.seed, dim, index, attempt);
                    match sample_loops(spec.kind, dim, seed)? {
                        Some(levels) => return Ok((levels, attempt)),
                        None => attempt += 1,
                    }
                    if attempt > 64 {
                        return Err(Error::Internal(
                            "too many degenerate draws; check the sampler".into(),
                        ));
                    }
                }
            })
            .collect();
        let mut loops_per_k: BTreeMap<i64, usize> = BTreeMap::new();
        let mut with_loop = 0usize;
        let mut resamples = 0usize;
        for outcome in outcomes {
            let (levels, attempts) = outcome?;
            resamples += attempts;
            if !levels.is_empty() {
                with_loop += 1;
            }
            for k in levels {
                *loops_per_k.entry(k).or_insert(0) += 1;
            }
        }
        per_dim.push(DimReport {
            dim,
            samples: spec.samples,
            loops_per_k,
            samples_with_loop: with_loop,
            loop_fraction: format!("{}/{}", with_loop, spec.samples),
            resamples,
        });
    }
    Ok(ExperimentReport { spec: spec.clone(), per_dim })
}

/// CSV rendering of a report: one line per dimension.
pub fn report_csv(report: &ExperimentReport) -> String {
    let mut out = String::from("dim,samples,samples_with_loop,loop_fraction,resamples\n");
    for d in &report.per_dim {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            d.dim, d.samples, d.samples_with_loop, d.loop_fraction, d.resamples
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_three_control_has_no_loops() {
        let spec = ExperimentSpec {
            kind: ExperimentKind::GaussianSimplex,
            dim_lo: 3,
            dim_hi: 3,
            samples: 40,
            seed: 7,
        };
        let report = run_experiment(&spec).unwrap();
        assert_eq!(report.per_dim[0].samples_with_loop, 0);
    }

    #[test]
    fn reports_are_deterministic() {
        let spec = ExperimentSpec {
            kind: ExperimentKind::GaussianSimplex,
            dim_lo: 4,
            dim_hi: 5,
            samples: 12,
            seed: 99,
        };
        let a = run_experiment(&spec).unwrap();
        let b = run_experiment(&spec).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn random_frame_cube_small() {
        let spec = ExperimentSpec {
            kind: ExperimentKind::RandomFrameCube,
            dim_lo: 3,
            dim_hi: 3,
            samples: 3,
            seed: 1,
        };
        let report = run_experiment(&spec).unwrap();
        assert_eq!(report.per_dim[0].samples_with_loop, 0);
    }

    #[test]
    fn random_frame_simplex_small() {
        let spec = ExperimentSpec {
            kind: ExperimentKind::RandomFrameSimplex,
            dim_lo: 3,
            dim_hi: 3,
            samples: 5,
            seed: 5,
        };
        let report = run_experiment(&spec).unwrap();
        assert_eq!(report.per_dim[0].samples_with_loop, 0);
    }
}
