//! Monte Carlo checks that minimizers of randomly perturbed polyhedral
//! functions are unique and nondegenerate, together with constructions that
//! land exactly on the degenerate (measure-zero) set.
//!
//! Trials are independent. Each trial draws its objective from its own
//! SplitMix64 stream seeded with `seed ^ trial_index`, so results do not
//! depend on scheduling and reports are merged by trial index.

mod adversarial;
mod larman;
mod report;
pub mod rng;

pub use adversarial::{construct_degenerate, construct_degenerate_bounded, AdversarialReport, AdversarialStatus, DegeneratePair};
pub use larman::{run_larman, LarmanRecord, LarmanReport};
pub use report::parse_trial_csv;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, rank_of, RatVector, Rational};
use crate::geometry::{positive_representation, GeneratedSet, RiStatus};
use crate::lp::{solve_lp, LinearProgram, LpOutcome};
use crate::subdiff::{certify, epigraph_lp, CertificationResult, PolyhedralFunction};

use rng::SplitMix64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Bit width of sampled numerators and denominators.
    pub bits: u32,
    /// Coordinates are drawn from `[-box_radius, box_radius]`.
    pub box_radius: Rational,
}

impl SamplerConfig {
    pub fn new(seed: u64) -> Self {
        SamplerConfig {
            seed,
            bits: 64,
            box_radius: int(1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bits < 8 {
            return Err(Error::Config(format!("bits must be at least 8, got {}", self.bits)));
        }
        if self.box_radius <= Rational::zero() {
            return Err(Error::Config(format!(
                "box radius must be positive, got {}",
                self.box_radius
            )));
        }
        Ok(())
    }
}

fn draw_bits(rng: &mut SplitMix64, bits: u32) -> BigUint {
    let words = bits.div_ceil(64);
    let mut acc = BigUint::zero();
    for _ in 0..words {
        acc = (acc << 64u32) | BigUint::from(rng.next_u64());
    }
    let excess = words * 64 - bits;
    acc >> excess
}

/// One coordinate: `radius · (±m) / d` with `d` a nonzero `bits`-bit integer
/// and `m = (bits-bit draw) mod (d + 1)`, sign from one extra draw.
fn sample_coordinate(rng: &mut SplitMix64, cfg: &SamplerConfig) -> Rational {
    let mut den = draw_bits(rng, cfg.bits);
    if den.is_zero() {
        den = BigUint::one();
    }
    let mag = draw_bits(rng, cfg.bits) % (&den + 1u32);
    let negative = rng.next_u64() & 1 == 1;
    let mut num = BigInt::from(mag);
    if negative {
        num = -num;
    }
    Rational::new(num, BigInt::from(den)) * &cfg.box_radius
}

pub(crate) fn sample_vector(rng: &mut SplitMix64, cfg: &SamplerConfig, dim: usize) -> RatVector {
    (0..dim).map(|_| sample_coordinate(rng, cfg)).collect()
}

/// The objective for `trial_index`; a pure function of the seed, the index
/// and the dimension.
pub fn sample_objective(cfg: &SamplerConfig, trial_index: u64, dim: usize) -> RatVector {
    let mut rng = SplitMix64::new(cfg.seed ^ trial_index);
    sample_vector(&mut rng, cfg, dim)
}

/// Whether the optimal face of `lp` at an optimal point with the given
/// active set is a single point.
///
/// The optimal face is a point iff its tangent cone
/// `{d : aᵢᵀd ≤ 0 (i active), ⟨w, d⟩ = 0}` is `{0}`, iff the polar cone
/// `cone{aᵢ : i active} + ℝw` is the whole space: the generators have full
/// rank and admit a strictly positive combination equal to zero.
pub fn optimal_face_is_point(lp: &LinearProgram, active_set: &[usize]) -> Result<bool> {
    let n = lp.constraints.dim();
    let mut gens: Vec<RatVector> = active_set
        .iter()
        .map(|&i| lp.constraints.a().row(i).primitive())
        .collect();
    let w = lp.objective.primitive();
    gens.push(w.neg());
    gens.push(w);
    if rank_of(&gens, n) < n {
        return Ok(false);
    }
    let cone = GeneratedSet::cone(gens, n)?;
    Ok(matches!(
        positive_representation(&cone, &RatVector::zeros(n))?,
        RiStatus::Interior { .. }
    ))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialOutcome {
    Nondegenerate,
    Degenerate,
    NonUnique,
    Unbounded,
}

impl TrialOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            TrialOutcome::Nondegenerate => "nondegenerate",
            TrialOutcome::Degenerate => "degenerate",
            TrialOutcome::NonUnique => "non_unique",
            TrialOutcome::Unbounded => "unbounded",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "nondegenerate" => TrialOutcome::Nondegenerate,
            "degenerate" => TrialOutcome::Degenerate,
            "non_unique" => TrialOutcome::NonUnique,
            "unbounded" => TrialOutcome::Unbounded,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub v: RatVector,
    pub outcome: TrialOutcome,
    pub minimizer: Option<RatVector>,
    #[serde(serialize_with = "report::optional_token")]
    pub min_witness_coeff: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    pub seed: u64,
    pub trials: u64,
    pub unique_nondegenerate: u64,
    pub degenerate: u64,
    pub non_unique: u64,
    pub unbounded: u64,
    pub records: Vec<TrialRecord>,
}

impl ExperimentReport {
    fn tally(seed: u64, records: Vec<TrialRecord>) -> Self {
        let count = |o: TrialOutcome| records.iter().filter(|r| r.outcome == o).count() as u64;
        ExperimentReport {
            seed,
            trials: records.len() as u64,
            unique_nondegenerate: count(TrialOutcome::Nondegenerate),
            degenerate: count(TrialOutcome::Degenerate),
            non_unique: count(TrialOutcome::NonUnique),
            unbounded: count(TrialOutcome::Unbounded),
            records,
        }
    }

    /// Records that break genericity: degenerate or non-unique minimizers.
    pub fn offending(&self) -> impl Iterator<Item = &TrialRecord> {
        self.records
            .iter()
            .filter(|r| matches!(r.outcome, TrialOutcome::Degenerate | TrialOutcome::NonUnique))
    }

    pub fn to_csv(&self) -> String {
        report::trials_to_csv(&self.records)
    }
}

/// Runs one trial with objective `v`.
pub fn classify_objective(f: &PolyhedralFunction, v: &RatVector, trial_index: u64) -> Result<TrialRecord> {
    let lp = epigraph_lp(f, v);
    let record = |outcome, minimizer, coeff| TrialRecord {
        trial_index,
        v: v.clone(),
        outcome,
        minimizer,
        min_witness_coeff: coeff,
    };
    let (z, active_set) = match solve_lp(&lp) {
        LpOutcome::Optimal { x, active_set, .. } => (x, active_set),
        LpOutcome::Unbounded { .. } => return Ok(record(TrialOutcome::Unbounded, None, None)),
        LpOutcome::Infeasible { .. } => return Err(Error::InfeasibleDomain),
    };
    let x: RatVector = z.iter().take(f.dim()).cloned().collect();
    if !optimal_face_is_point(&lp, &active_set)? {
        return Ok(record(TrialOutcome::NonUnique, Some(x), None));
    }
    Ok(match certify(f, v, &x)? {
        CertificationResult::Nondegenerate { witness, .. } => {
            let coeff = witness.min_coefficient().cloned();
            record(TrialOutcome::Nondegenerate, Some(x), coeff)
        }
        CertificationResult::DegenerateCritical => record(TrialOutcome::Degenerate, Some(x), None),
        CertificationResult::NotCritical => {
            return Err(Error::Internal(format!(
                "minimizer {x} of the perturbed function is not critical for v = {v}"
            )))
        }
    })
}

/// Samples `trials` objectives and tallies the minimizer of each perturbed
/// function as unique and nondegenerate, degenerate, non-unique or
/// unbounded. Trials run in parallel; the report does not depend on it.
pub fn run_genericity(f: &PolyhedralFunction, cfg: &SamplerConfig, trials: u64) -> Result<ExperimentReport> {
    cfg.validate()?;
    if !f.is_proper() {
        return Err(Error::InfeasibleDomain);
    }
    let records = (0..trials)
        .into_par_iter()
        .map(|t| classify_objective(f, &sample_objective(cfg, t, f.dim()), t))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport::tally(cfg.seed, records))
}

/// Sequential variant of [`run_genericity`], used to check that parallel
/// execution does not change reports.
pub fn run_genericity_sequential(f: &PolyhedralFunction, cfg: &SamplerConfig, trials: u64) -> Result<ExperimentReport> {
    cfg.validate()?;
    if !f.is_proper() {
        return Err(Error::InfeasibleDomain);
    }
    let records = (0..trials)
        .map(|t| classify_objective(f, &sample_objective(cfg, t, f.dim()), t))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport::tally(cfg.seed, records))
}
