//! Sampling directions and recording which ones expose more than one vertex.
//!
//! For a polytope `F` with vertex set `V`, a direction `c` exposes the face
//! `argmax_{x∈F} ⟨c, x⟩`. If that face holds two distinct vertices `u ≠ w`,
//! then `c ∈ N_F(u) ∩ N_F(w)`. The normal cones of distinct vertices are
//! full-dimensional with disjoint interiors, so `c` lies on the boundary of
//! `N_F(u)`. Conversely, if `c` exposes exactly one vertex `u`, the strict
//! inequalities `⟨c, u⟩ > ⟨c, w⟩` survive small perturbations of `c`, so `c` is
//! interior to `N_F(u)` and lies in no other point's normal cone. Hence
//! "multi-vertex face" is exactly "c ∈ ⋃ₓ rb N_F(x)", a null set of
//! directions.

use rayon::prelude::*;
use serde::Serialize;

use super::report::write_rows;
use super::rng::SplitMix64;
use super::{sample_vector, SamplerConfig};
use crate::error::{Error, Result};
use crate::exact::RatVector;
use crate::geometry::{exposed_face, VPolytope};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LarmanRecord {
    pub trial_index: u64,
    pub direction: RatVector,
    pub forced: bool,
    /// Indices into the stored vertex list.
    pub face: Vec<usize>,
    pub multi_vertex: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LarmanReport {
    pub seed: u64,
    pub trials: u64,
    pub singleton_faces: u64,
    pub multi_vertex_faces: u64,
    /// Sampled directions that exposed more than one vertex.
    pub multi_vertex_directions: Vec<RatVector>,
    pub records: Vec<LarmanRecord>,
    /// Caller-supplied directions, evaluated after the sampled trials and
    /// not counted in the tallies.
    pub forced: Vec<LarmanRecord>,
}

impl LarmanReport {
    pub fn to_csv(&self) -> String {
        write_rows(
            &["trial_index", "direction", "forced", "face_size", "face"],
            self.records.iter().chain(&self.forced).map(|r| {
                vec![
                    r.trial_index.to_string(),
                    r.direction.tokens(";"),
                    r.forced.to_string(),
                    r.face.len().to_string(),
                    r.face.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(";"),
                ]
            }),
        )
    }
}

fn record(f: &VPolytope, trial_index: u64, direction: RatVector, forced: bool) -> Result<LarmanRecord> {
    let face = exposed_face(f, &direction)?;
    let first = &f.vertices()[face[0]];
    let multi_vertex = face.iter().any(|&i| &f.vertices()[i] != first);
    Ok(LarmanRecord {
        trial_index,
        direction,
        forced,
        face,
        multi_vertex,
    })
}

/// Samples `trials` nonzero directions (a zero draw is redrawn from the same
/// stream) and tallies singleton versus multi-vertex exposed faces.
pub fn run_larman(f: &VPolytope, cfg: &SamplerConfig, trials: u64, forced: &[RatVector]) -> Result<LarmanReport> {
    cfg.validate()?;
    let first = &f.vertices()[0];
    if f.vertices().iter().all(|v| v == first) {
        return Err(Error::DegenerateInput("polytope needs at least two distinct vertices"));
    }
    let dim = f.dim();
    let records = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = SplitMix64::new(cfg.seed ^ t);
            let direction = loop {
                let c = sample_vector(&mut rng, cfg, dim);
                if !c.is_zero() {
                    break c;
                }
            };
            record(f, t, direction, false)
        })
        .collect::<Result<Vec<_>>>()?;
    let forced = forced
        .iter()
        .enumerate()
        .map(|(k, c)| {
            if c.is_zero() {
                return Err(Error::DegenerateInput("forced direction must be nonzero"));
            }
            record(f, trials + k as u64, c.clone(), true)
        })
        .collect::<Result<Vec<_>>>()?;
    let multi: Vec<RatVector> = records
        .iter()
        .filter(|r| r.multi_vertex)
        .map(|r| r.direction.clone())
        .collect();
    Ok(LarmanReport {
        seed: cfg.seed,
        trials,
        singleton_faces: trials - multi.len() as u64,
        multi_vertex_faces: multi.len() as u64,
        multi_vertex_directions: multi,
        records,
        forced,
    })
}
