//! Constraint system, robust feasibility, cost objectives, and the top-p
//! enumeration algorithm.
//!
//! Feasibility of a triple `(s, r, d)` combines integer bound constraints,
//! the analytic race constraints (failure, round thresholds, expected-rate
//! window, tail probabilities, disputes), and the pool-power bound
//! `l^c ≤ δ3·s^c` evaluated in exact integer arithmetic.
//!
//! Robust feasibility additionally requires the analytic core constraints to
//! hold when the reliable miner count degrades anywhere down to the
//! uncertainty radius `u_s` and the effective difficulty drifts down by up
//! to `u_d` bits, and the pool bound to hold at the reduced miner count
//! `s - u_s`. With `u_s = u_d = 0` it coincides with plain feasibility.

use crate::numerics::{NumericsError, PrecisionTier};
use crate::par;
use crate::powmodel::{
    self, dispute_prob_g, expected_rounds_g, prob_time_gt_g, prob_time_lt_g, ExactOps, FastOps,
    MiningDesign, PowModelError, RealOps,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OptimizerError {
    #[error("numerics: {0}")]
    Numerics(#[from] NumericsError),
    #[error("model: {0}")]
    Model(#[from] PowModelError),
    #[error("invalid scenario constants: {0}")]
    InvalidConstants(String),
}

/// Every constant of the experiment table: grid bounds, cost coefficients,
/// timing thresholds, probability tolerances, and robustness parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConstants {
    pub s_l: u32,
    pub s_u: u32,
    pub r_l: u32,
    pub r_u: u32,
    pub d_l: u32,
    pub d_u: u32,
    /// Variable cost per hash (currency).
    pub tvc: BigRational,
    /// Fixed cost per miner (currency).
    pub tfc: BigRational,
    /// Cost tolerance factor for reported tuples (≥ 1).
    pub alpha: BigRational,
    /// Seconds per hash attempt.
    pub t: BigRational,
    /// Upper mining-time threshold (seconds).
    pub th: BigRational,
    /// Lower mining-time threshold (seconds).
    pub th_prime: BigRational,
    /// Tolerance for `prob(PoWTime > th)`.
    pub delta: BigRational,
    /// Tolerance for `prob(PoWTime < th')`.
    pub delta1: BigRational,
    /// Tolerance for the dispute probability.
    pub delta2: BigRational,
    /// Tolerance for the pool-power bound.
    pub delta3: BigRational,
    /// Expected-mining-time window (seconds).
    pub tau_l: BigRational,
    pub tau_u: BigRational,
    /// Dispute window (seconds).
    pub mu: BigRational,
    /// Tolerance for the race failure probability.
    pub epsilon: BigRational,
    /// Number of tuples to report.
    pub report_count: usize,
    /// Uncertainty radius on the miner count.
    pub u_s: u32,
    /// Uncertainty radius on the difficulty.
    pub u_d: u32,
    /// Colluding pool size.
    pub l: u32,
    /// Consecutive races the pool must win.
    pub c: u32,
}

impl ScenarioConstants {
    pub fn validate(&self) -> Result<(), OptimizerError> {
        let err = |m: String| Err(OptimizerError::InvalidConstants(m));
        if !(0 < self.s_l && self.s_l <= self.s_u) {
            return err(format!("need 0 < s_l ≤ s_u, got {}..{}", self.s_l, self.s_u));
        }
        if !(0 < self.r_l && self.r_l <= self.r_u) {
            return err(format!("need 0 < r_l ≤ r_u, got {}..{}", self.r_l, self.r_u));
        }
        if !(0 < self.d_l && self.d_l <= self.d_u) {
            return err(format!("need 0 < d_l ≤ d_u, got {}..{}", self.d_l, self.d_u));
        }
        if self.d_u >= MiningDesign::HASH_OUTPUT_BITS {
            return err(format!("d_u must stay below the hash output bits, got {}", self.d_u));
        }
        let one = BigRational::from_integer(1.into());
        if self.alpha < one {
            return err(format!("alpha must be ≥ 1, got {}", self.alpha));
        }
        for (name, p) in [
            ("delta", &self.delta),
            ("delta1", &self.delta1),
            ("delta2", &self.delta2),
            ("delta3", &self.delta3),
            ("epsilon", &self.epsilon),
        ] {
            if p.is_negative() || *p > one {
                return err(format!("{name} must be a probability in [0,1], got {p}"));
            }
        }
        if self.tau_l > self.tau_u {
            return err(format!("need tau_l ≤ tau_u, got {} > {}", self.tau_l, self.tau_u));
        }
        if !self.t.is_positive() {
            return err(format!("T must be positive, got {}", self.t));
        }
        for (name, v) in [("TVC", &self.tvc), ("TFC", &self.tfc), ("th", &self.th), ("th_prime", &self.th_prime), ("tau_l", &self.tau_l)] {
            if v.is_negative() {
                return err(format!("{name} must be non-negative, got {v}"));
            }
        }
        if self.report_count == 0 {
            return err("report_count must be positive".into());
        }
        if self.l < 1 || self.c < 1 {
            return err(format!("need l ≥ 1 and c ≥ 1, got l={}, c={}", self.l, self.c));
        }
        Ok(())
    }
}

/// Identifiers of the individual constraints a verdict can list as violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConstraintId {
    /// `s_l ≤ s ≤ s_u`
    SBounds,
    /// `r_l ≤ r ≤ r_u`
    RBounds,
    /// `d_l ≤ d ≤ d_u`
    DBounds,
    /// `ε ≥ (1-2^-d)^{s(λ+1)}`
    FailureEpsilon,
    /// `⌈th/T - 1⌉ < λ`
    ThresholdRounds,
    /// `0 < ⌊th'/T - 1⌋`
    ThresholdPrimeRounds,
    /// `τ_l ≤ T·E^s(noR)`
    RateLower,
    /// `T·E^s(noR) ≤ τ_u`
    RateUpper,
    /// `δ1 ≥ prob(PoWTime < th')`
    TimeLtDelta1,
    /// `δ ≥ prob(PoWTime > th)`
    TimeGtDelta,
    /// `δ2 ≥ prob(disputes within μ)`
    DisputeDelta2,
    /// `⌊μ/T⌋ ≥ 0`
    MuNonNegative,
    /// `l < s`
    PoolSize,
    /// `l^c ≤ δ3·s^c`
    PoolPower,
}

/// Outcome of a feasibility check, listing every violated constraint.
#[derive(Debug, Clone)]
pub struct FeasibilityVerdict {
    pub feasible: bool,
    pub violated: Vec<ConstraintId>,
    pub tier: PrecisionTier,
}

/// A reported tuple: design variables with plain and worst-case cost.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateResult {
    pub s: u32,
    pub r: u32,
    pub d: u32,
    pub cost: f64,
    pub robust_cost: f64,
}

/// Full enumeration outcome; `dropped_by_exact` records tuples that the
/// Fast tier accepted but the Exact confirmation pass rejected.
#[derive(Debug, Clone)]
pub struct EnumerationOutcome {
    pub results: Vec<CandidateResult>,
    pub dropped_by_exact: Vec<(u32, u32, u32)>,
}

// ---------------------------------------------------------------------------
// Scenario-derived exact quantities shared by both tiers.
// ---------------------------------------------------------------------------

struct Prepared {
    /// `⌈th/T - 1⌉` (≥ 0 given th, T ≥ 0; clamped at 0).
    th_k: BigUint,
    th_k_plus1: BigUint,
    /// `⌊th'/T - 1⌋ > 0`?
    thp_applicable: bool,
    thp_k_plus1: BigUint,
    mu_nonneg: bool,
    /// `⌊μ/T⌋` (exact rational floor).
    m_mu: BigUint,
    /// `l^c · denom(δ3)` for the integer-safe pool bound.
    pool_lhs: BigUint,
    /// `numer(δ3)`; the bound is `pool_lhs ≤ pool_num · s^c`.
    pool_num: BigUint,
}

fn floor_big(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

fn ceil_big(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

impl Prepared {
    fn new(c: &ScenarioConstants) -> Self {
        let one = BigRational::from_integer(1.into());
        let th_k_int = ceil_big(&(&c.th / &c.t - &one));
        let th_k = th_k_int.max(BigInt::ZERO).to_biguint().unwrap();
        let thp_k_int = floor_big(&(&c.th_prime / &c.t - &one));
        let thp_applicable = thp_k_int.is_positive();
        let thp_k = thp_k_int.max(BigInt::ZERO).to_biguint().unwrap();
        let mu_nonneg = !c.mu.is_negative();
        let m_mu = if mu_nonneg {
            floor_big(&(&c.mu / &c.t)).to_biguint().unwrap()
        } else {
            BigUint::ZERO
        };
        let lc = BigUint::from(c.l).pow(c.c);
        let pool_den = c.delta3.denom().magnitude().clone();
        let pool_num = c.delta3.numer().magnitude().clone();
        Prepared {
            th_k_plus1: &th_k + 1u32,
            th_k,
            thp_applicable,
            thp_k_plus1: &thp_k + 1u32,
            mu_nonneg,
            m_mu,
            pool_lhs: lc * pool_den,
            pool_num,
        }
    }

    /// `l'^c ≤ δ3 · s^c` with pool size l' and miner count s, exactly.
    fn pool_ok_at(&self, c: &ScenarioConstants, s: u32) -> bool {
        let sc = BigUint::from(s).pow(c.c);
        self.pool_lhs <= &self.pool_num * &sc
    }
}

// Evaluate the analytic core constraints (everything except bounds and pool)
// at a triple, reporting violations. Requires 1 ≤ d within the numerics
// domain and s, r ≥ 1.
fn core_violations<O: RealOps>(
    o: &mut O,
    s: u32,
    r: u32,
    d: u32,
    c: &ScenarioConstants,
    p: &Prepared,
    mut violated: impl FnMut(ConstraintId),
) -> Result<(), OptimizerError> {
    let dg = MiningDesign::new(s, r, d)?;

    let fail = powmodel::failure_prob_g(o, &dg)?;
    let eps = o.from_ratio(&c.epsilon);
    if !o.le(&fail, &eps) {
        violated(ConstraintId::FailureEpsilon);
    }

    let th_ok = p.th_k < *dg.lambda();
    if !th_ok {
        violated(ConstraintId::ThresholdRounds);
        // prob(PoWTime > th) has no sound value here; folded as infeasible.
        violated(ConstraintId::TimeGtDelta);
    } else {
        let ptg = prob_time_gt_g(o, &dg, &p.th_k_plus1)?;
        let delta = o.from_ratio(&c.delta);
        if !o.le(&ptg, &delta) {
            violated(ConstraintId::TimeGtDelta);
        }
    }

    if !p.thp_applicable {
        violated(ConstraintId::ThresholdPrimeRounds);
        violated(ConstraintId::TimeLtDelta1);
    } else {
        let ptl = prob_time_lt_g(o, &dg, &p.thp_k_plus1)?;
        let delta1 = o.from_ratio(&c.delta1);
        if !o.le(&ptl, &delta1) {
            violated(ConstraintId::TimeLtDelta1);
        }
    }

    let e = expected_rounds_g(o, &dg)?;
    let t = o.from_ratio(&c.t);
    let te = o.mul(&t, &e);
    let tau_l = o.from_ratio(&c.tau_l);
    let tau_u = o.from_ratio(&c.tau_u);
    if !o.le(&tau_l, &te) {
        violated(ConstraintId::RateLower);
    }
    if !o.le(&te, &tau_u) {
        violated(ConstraintId::RateUpper);
    }

    if !p.mu_nonneg {
        violated(ConstraintId::MuNonNegative);
        violated(ConstraintId::DisputeDelta2);
    } else {
        let disp = dispute_prob_g(o, &dg, &p.m_mu)?;
        let delta2 = o.from_ratio(&c.delta2);
        if !o.le(&disp, &delta2) {
            violated(ConstraintId::DisputeDelta2);
        }
    }

    Ok(())
}

fn check_feasible_with<O: RealOps>(
    o: &mut O,
    s: i64,
    r: i64,
    d: i64,
    c: &ScenarioConstants,
    p: &Prepared,
    tier: PrecisionTier,
) -> Result<FeasibilityVerdict, OptimizerError> {
    let mut violated = Vec::new();
    if s < c.s_l as i64 || s > c.s_u as i64 {
        violated.push(ConstraintId::SBounds);
    }
    if r < c.r_l as i64 || r > c.r_u as i64 {
        violated.push(ConstraintId::RBounds);
    }
    if d < c.d_l as i64 || d > c.d_u as i64 {
        violated.push(ConstraintId::DBounds);
    }
    // The analytic constraints are only evaluable inside the bounds; a
    // bound-violating triple is already infeasible.
    if violated.is_empty() {
        let (s, r, d) = (s as u32, r as u32, d as u32);
        if c.l >= s {
            violated.push(ConstraintId::PoolSize);
        }
        if !p.pool_ok_at(c, s) {
            violated.push(ConstraintId::PoolPower);
        }
        core_violations(o, s, r, d, c, p, |id| violated.push(id))?;
    }
    violated.sort();
    violated.dedup();
    Ok(FeasibilityVerdict {
        feasible: violated.is_empty(),
        violated,
        tier,
    })
}

/// Evaluate every constraint at `(s, r, d)`; any integers are accepted.
pub fn check_feasible(
    s: i64,
    r: i64,
    d: i64,
    c: &ScenarioConstants,
    tier: PrecisionTier,
) -> Result<FeasibilityVerdict, OptimizerError> {
    c.validate()?;
    let p = Prepared::new(c);
    match tier.validate()? {
        PrecisionTier::Fast => check_feasible_with(&mut FastOps, s, r, d, c, &p, tier),
        PrecisionTier::Exact(digits) => {
            let mut o = ExactOps::new(digits)?;
            check_feasible_with(&mut o, s, r, d, c, &p, tier)
        }
    }
}

// Robustness part beyond the nominal check: degraded-difficulty bound,
// pool bound at the reduced miner count, and the analytic core over the
// perturbation box.
fn robust_extra_with<O: RealOps>(
    o: &mut O,
    s: u32,
    r: u32,
    d: u32,
    c: &ScenarioConstants,
    p: &Prepared,
) -> Result<bool, OptimizerError> {
    // Bound constraints stay literal on the perturbed difficulty.
    if (d as i64) - (c.u_d as i64) < c.d_l as i64 {
        return Ok(false);
    }
    let s_min = s as i64 - c.u_s as i64;
    if s_min < 1 {
        return Ok(false);
    }
    if !p.pool_ok_at(c, s_min as u32) {
        return Ok(false);
    }
    // With u_s = 0 the degraded miner count can only be s itself.
    let s_range: Vec<u32> = if c.u_s == 0 {
        vec![s]
    } else {
        (c.u_s..=s_min as u32).collect()
    };
    for sp in s_range {
        for dp in d - c.u_d..=d {
            let mut ok = true;
            core_violations(o, sp, r, dp, c, p, |_| ok = false)?;
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn robust_feasible_with<O: RealOps>(
    o: &mut O,
    s: i64,
    r: i64,
    d: i64,
    c: &ScenarioConstants,
    p: &Prepared,
    tier: PrecisionTier,
) -> Result<bool, OptimizerError> {
    let nominal = check_feasible_with(o, s, r, d, c, p, tier)?;
    if !nominal.feasible {
        return Ok(false);
    }
    robust_extra_with(o, s as u32, r as u32, d as u32, c, p)
}

/// Robust feasibility: the nominal check plus feasibility of every
/// perturbation within the `(u_s, u_d)` uncertainty box.
pub fn robust_feasible(
    s: i64,
    r: i64,
    d: i64,
    c: &ScenarioConstants,
    tier: PrecisionTier,
) -> Result<bool, OptimizerError> {
    c.validate()?;
    let p = Prepared::new(c);
    match tier.validate()? {
        PrecisionTier::Fast => robust_feasible_with(&mut FastOps, s, r, d, c, &p, tier),
        PrecisionTier::Exact(digits) => {
            let mut o = ExactOps::new(digits)?;
            robust_feasible_with(&mut o, s, r, d, c, &p, tier)
        }
    }
}

/// `Cost(s,r,d) = TVC·E^s(noR)·s + TFC·s`.
pub fn cost(s: u32, r: u32, d: u32, c: &ScenarioConstants) -> Result<f64, OptimizerError> {
    let dg = MiningDesign::new(s, r, d)?;
    let e = powmodel::expected_rounds(&dg)?;
    let tvc = c.tvc.to_f64().unwrap_or(f64::NAN);
    let tfc = c.tfc.to_f64().unwrap_or(f64::NAN);
    Ok(tvc * e * s as f64 + tfc * s as f64)
}

/// Worst-case cost over the uncertainty box
/// `s-u_s ≤ s' ≤ s`, `|d-d'| ≤ u_d` (degenerate difficulties clamped to the
/// evaluable range).
pub fn robust_cost(s: u32, r: u32, d: u32, c: &ScenarioConstants) -> Result<f64, OptimizerError> {
    let s_lo = (s as i64 - c.u_s as i64).max(1) as u32;
    let d_lo = (d as i64 - c.u_d as i64).max(1) as u32;
    let d_hi = (d + c.u_d).min(MiningDesign::HASH_OUTPUT_BITS - 6);
    let mut worst = f64::NEG_INFINITY;
    for sp in s_lo..=s {
        for dp in d_lo..=d_hi {
            worst = worst.max(cost(sp, r, dp, c)?);
        }
    }
    Ok(worst)
}

type PerD = BTreeMap<u32, (f64, u32, u32)>;

fn better(a: (f64, u32, u32), b: (f64, u32, u32)) -> (f64, u32, u32) {
    // Lexicographic dominance within equal d: lower cost, then lower r,
    // then lower s.
    let ord = a
        .0
        .total_cmp(&b.0)
        .then(a.1.cmp(&b.1))
        .then(a.2.cmp(&b.2));
    if ord.is_le() {
        a
    } else {
        b
    }
}

fn enumerate_with(
    c: &ScenarioConstants,
    exact_digits: u32,
    parallel: bool,
) -> Result<EnumerationOutcome, OptimizerError> {
    c.validate()?;
    let s_values: Vec<u32> = (c.s_l..=c.s_u).collect();
    let slice = |s: u32| -> Result<PerD, OptimizerError> {
        let p = Prepared::new(c);
        let mut o = FastOps;
        let mut best: PerD = BTreeMap::new();
        for r in c.r_l..=c.r_u {
            for d in c.d_l..=c.d_u {
                if robust_feasible_with(
                    &mut o,
                    s as i64,
                    r as i64,
                    d as i64,
                    c,
                    &p,
                    PrecisionTier::Fast,
                )? {
                    let cand = (cost(s, r, d, c)?, r, s);
                    best.entry(d)
                        .and_modify(|cur| *cur = better(*cur, cand))
                        .or_insert(cand);
                }
            }
        }
        Ok(best)
    };
    let slices = if parallel {
        par::map_collect(s_values, slice)
    } else {
        par::map_collect_seq(s_values, slice)
    };
    let mut best: PerD = BTreeMap::new();
    for sl in slices {
        for (d, cand) in sl? {
            best.entry(d)
                .and_modify(|cur| *cur = better(*cur, cand))
                .or_insert(cand);
        }
    }
    if best.is_empty() {
        return Ok(EnumerationOutcome {
            results: Vec::new(),
            dropped_by_exact: Vec::new(),
        });
    }
    let c_m = best
        .values()
        .map(|(cost, _, _)| *cost)
        .fold(f64::INFINITY, f64::min);
    let alpha = c.alpha.to_f64().unwrap_or(f64::NAN);
    let shortlist: Vec<(u32, u32, u32, f64)> = best
        .iter()
        .rev() // descending d
        .filter(|(_, (cost, _, _))| *cost <= alpha * c_m)
        .take(c.report_count)
        .map(|(d, (cost, r, s))| (*s, *r, *d, *cost))
        .collect();

    // Exact-tier confirmation of every shortlisted tuple.
    let p = Prepared::new(c);
    let mut exact = ExactOps::new(exact_digits)?;
    let mut results = Vec::new();
    let mut dropped = Vec::new();
    for (s, r, d, cost_v) in shortlist {
        let confirmed = robust_feasible_with(
            &mut exact,
            s as i64,
            r as i64,
            d as i64,
            c,
            &p,
            PrecisionTier::Exact(exact_digits),
        )?;
        if confirmed {
            results.push(CandidateResult {
                s,
                r,
                d,
                cost: cost_v,
                robust_cost: robust_cost(s, r, d, c)?,
            });
        } else {
            dropped.push((s, r, d));
        }
    }
    Ok(EnumerationOutcome {
        results,
        dropped_by_exact: dropped,
    })
}

/// Default Exact-tier digit budget for confirmations.
pub const DEFAULT_EXACT_DIGITS: u32 = 60;

/// The enumeration algorithm: Fast-tier feasibility and robustness over the
/// whole grid, dominance pruning within equal `d`, the `α·c_m` cost filter,
/// the first `report_count` tuples in descending `d`, and an Exact-tier
/// robust confirmation of each survivor.
pub fn enumerate_optimal(c: &ScenarioConstants) -> Result<Vec<CandidateResult>, OptimizerError> {
    Ok(enumerate_optimal_detailed(c, DEFAULT_EXACT_DIGITS)?.results)
}

/// [`enumerate_optimal`] with a configurable Exact-tier digit budget and
/// visibility of tuples dropped by the confirmation pass.
pub fn enumerate_optimal_detailed(
    c: &ScenarioConstants,
    exact_digits: u32,
) -> Result<EnumerationOutcome, OptimizerError> {
    enumerate_with(c, exact_digits, true)
}

/// Sequential reference implementation; always produces the same output as
/// the parallel version.
pub fn enumerate_optimal_seq(
    c: &ScenarioConstants,
    exact_digits: u32,
) -> Result<EnumerationOutcome, OptimizerError> {
    enumerate_with(c, exact_digits, false)
}

/// All `r ∈ [r_l, r_u]` for which `(s, r, d)` is robustly feasible in the
/// Exact tier. Reported as an explicit list: feasibility is not guaranteed
/// to be monotone in `r`.
pub fn feasible_r_range(
    s: u32,
    d: u32,
    c: &ScenarioConstants,
) -> Result<Vec<u32>, OptimizerError> {
    c.validate()?;
    let p = Prepared::new(c);
    let mut o = ExactOps::new(DEFAULT_EXACT_DIGITS)?;
    let mut out = Vec::new();
    for r in c.r_l..=c.r_u {
        if robust_feasible_with(
            &mut o,
            s as i64,
            r as i64,
            d as i64,
            c,
            &p,
            PrecisionTier::Exact(DEFAULT_EXACT_DIGITS),
        )? {
            out.push(r);
        }
    }
    Ok(out)
}

/// Table rendering of a cost: ceiling at the third decimal place, trailing
/// zeros trimmed. Stored values keep full precision.
pub fn format_cost(cost: f64) -> String {
    let scaled = cost * 1000.0;
    let nearest = scaled.round();
    // Forming cost·1000 can overshoot an exactly-representable table value
    // by an ulp; snap to the integer before applying the ceiling.
    let ceiled = if (scaled - nearest).abs() <= scaled.abs() * 1e-12 {
        nearest
    } else {
        scaled.ceil()
    };
    let mut text = format!("{:.3}", ceiled / 1000.0);
    while text.ends_with('0') {
        text.pop();
    }
    if text.ends_with('.') {
        text.pop();
    }
    text
}

/// Ready-made constant sets matching the benchmark configurations shipped
/// with the CLI.
pub mod presets {
    use super::ScenarioConstants;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    /// Exact rational `n / d`.
    pub fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Exact integer rational.
    pub fn qi(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    /// Exact `2^-k`.
    pub fn pow2_neg(k: u32) -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(2).pow(k))
    }

    /// The baseline benchmark constants with the Bitcoin-style rate bound
    /// (roughly 207.7 transactions per second).
    pub fn table_constants() -> ScenarioConstants {
        ScenarioConstants {
            s_l: 4,
            s_u: 80,
            r_l: 24,
            r_u: 64,
            d_l: 4,
            d_u: 64,
            tvc: q(2, 1_000_000_000_000),
            tfc: qi(3000),
            alpha: q(3, 2),
            t: q(2, 100_000_000_000),
            th: qi(300),
            th_prime: qi(300),
            delta: q(1, 1_000_000_000),
            delta1: qi(1),
            delta2: q(1, 1000),
            delta3: q(1, 1000),
            tau_l: qi(0),
            tau_u: q(1454, 7),
            mu: q(1, 10_000),
            epsilon: pow2_neg(64),
            report_count: 5,
            u_s: 5,
            u_d: 3,
            l: 4,
            c: 6,
        }
    }

    /// The strict-failure variant: `delta` tightened to `2^-64`.
    pub fn strict_failure_constants() -> ScenarioConstants {
        let mut c = table_constants();
        c.delta = pow2_neg(64);
        c
    }

    /// The strict-failure, strict-dispute variant: `delta = 2^-64` and
    /// `delta3 = 0.0001`.
    pub fn strict_dispute_constants() -> ScenarioConstants {
        let mut c = strict_failure_constants();
        c.delta3 = q(1, 10_000);
        c
    }
}
