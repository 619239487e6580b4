//! Closed-form probability model of a synchronized `s`-miner mining race
//! under the Random Oracle Model.
//!
//! Round indexing is 0-based: the event "`k` failed rounds then success"
//! has round index `k`, and the *number* of rounds used in expectations is
//! `k + 1`. All exponents such as `s·(λ+1)` are formed in exact integer
//! arithmetic before entering the numerics layer.

use crate::numerics::{
    self, one_minus_survival_pow_fast, survival_pow_fast, ExactCtx, NumericsError,
};
use astro_float::BigFloat;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PowModelError {
    #[error("numerics: {0}")]
    Numerics(#[from] NumericsError),
    #[error("invalid design: {0}")]
    InvalidDesign(String),
    #[error("round index {k} exceeds the nonce partition size λ = {lambda}")]
    RoundIndexOutOfRange { k: BigUint, lambda: BigUint },
    #[error("pool size l = {l} must be smaller than the miner count s = {s}")]
    PoolNotSmaller { l: u32, s: u32 },
}

/// Hash function characteristics: output bits `n`, input bits `p`, and the
/// seconds `T` one hash attempt takes.
#[derive(Debug, Clone, Copy)]
pub struct HashSpec {
    pub n: u32,
    pub p: u32,
    pub t: f64,
}

impl HashSpec {
    pub fn new(n: u32, p: u32, t: f64) -> Result<Self, PowModelError> {
        if n == 0 || p < n {
            return Err(PowModelError::InvalidDesign(format!(
                "hash spec requires p ≥ n > 0, got n={n}, p={p}"
            )));
        }
        if !(t > 0.0) {
            return Err(PowModelError::InvalidDesign(format!(
                "seconds per hash must be positive, got {t}"
            )));
        }
        Ok(Self { n, p, t })
    }

    /// Double SHA-256 on `p` input bits.
    pub fn double_sha256(p: u32, t: f64) -> Result<Self, PowModelError> {
        Self::new(256, p, t)
    }
}

/// `λ = ⌊2^r / s⌋`, exact.
pub fn lambda(r: u32, s: u32) -> BigUint {
    assert!(r >= 1 && s >= 1, "lambda requires r ≥ 1 and s ≥ 1");
    (BigUint::one() << r) / s
}

/// A candidate design `(s, r, d)` with its derived per-miner nonce-space
/// size `λ = ⌊2^r/s⌋`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiningDesign {
    s: u32,
    r: u32,
    d: u32,
    lambda: BigUint,
}

impl MiningDesign {
    /// Hash output bits; difficulty must stay strictly below this.
    pub const HASH_OUTPUT_BITS: u32 = 256;

    pub fn new(s: u32, r: u32, d: u32) -> Result<Self, PowModelError> {
        if s < 1 {
            return Err(PowModelError::InvalidDesign("s must be ≥ 1".into()));
        }
        if r < 1 {
            return Err(PowModelError::InvalidDesign("r must be ≥ 1".into()));
        }
        if d < 1 || d >= Self::HASH_OUTPUT_BITS {
            return Err(PowModelError::InvalidDesign(format!(
                "d must satisfy 0 < d < {}, got {d}",
                Self::HASH_OUTPUT_BITS
            )));
        }
        Ok(Self {
            s,
            r,
            d,
            lambda: lambda(r, s),
        })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn lambda(&self) -> &BigUint {
        &self.lambda
    }

    /// `s·(λ+1)`, the exponent of the race failure probability.
    pub fn failure_exponent(&self) -> BigUint {
        (&self.lambda + 1u32) * self.s
    }
}

// ---------------------------------------------------------------------------
// Generic evaluation kernel shared by the Fast and Exact tiers.
//
// The optimizer evaluates the same formulas in both tiers; implementing them
// once over this small operations trait keeps the two verdicts structurally
// identical.
// ---------------------------------------------------------------------------

pub(crate) trait RealOps {
    type V: Clone;

    fn survival(&mut self, d: u32, e: &BigUint) -> Result<Self::V, NumericsError>;
    fn one_minus_survival(&mut self, d: u32, e: &BigUint) -> Result<Self::V, NumericsError>;
    fn from_biguint(&mut self, x: &BigUint) -> Self::V;
    fn from_ratio(&mut self, q: &num_rational::BigRational) -> Self::V;
    fn one(&mut self) -> Self::V;
    fn sub(&mut self, a: &Self::V, b: &Self::V) -> Self::V;
    fn add(&mut self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&mut self, a: &Self::V, b: &Self::V) -> Self::V;
    fn div(&mut self, a: &Self::V, b: &Self::V) -> Self::V;
    /// `a ≤ b`
    fn le(&mut self, a: &Self::V, b: &Self::V) -> bool;
}

pub(crate) struct FastOps;

impl RealOps for FastOps {
    type V = f64;

    fn survival(&mut self, d: u32, e: &BigUint) -> Result<f64, NumericsError> {
        Ok(survival_pow_fast(d, e)?.value)
    }

    fn one_minus_survival(&mut self, d: u32, e: &BigUint) -> Result<f64, NumericsError> {
        one_minus_survival_pow_fast(d, e)
    }

    fn from_biguint(&mut self, x: &BigUint) -> f64 {
        x.to_f64().unwrap_or(f64::INFINITY)
    }

    fn from_ratio(&mut self, q: &num_rational::BigRational) -> f64 {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn one(&mut self) -> f64 {
        1.0
    }

    fn sub(&mut self, a: &f64, b: &f64) -> f64 {
        a - b
    }

    fn add(&mut self, a: &f64, b: &f64) -> f64 {
        a + b
    }

    fn mul(&mut self, a: &f64, b: &f64) -> f64 {
        a * b
    }

    fn div(&mut self, a: &f64, b: &f64) -> f64 {
        a / b
    }

    fn le(&mut self, a: &f64, b: &f64) -> bool {
        a <= b
    }
}

pub(crate) struct ExactOps {
    pub ctx: ExactCtx,
}

impl ExactOps {
    pub fn new(digits: u32) -> Result<Self, NumericsError> {
        Ok(Self {
            ctx: ExactCtx::new(digits)?,
        })
    }
}

impl RealOps for ExactOps {
    type V = BigFloat;

    fn survival(&mut self, d: u32, e: &BigUint) -> Result<BigFloat, NumericsError> {
        Ok(self.ctx.survival_pow(d, e)?.value)
    }

    fn one_minus_survival(&mut self, d: u32, e: &BigUint) -> Result<BigFloat, NumericsError> {
        self.ctx.one_minus_survival_pow(d, e)
    }

    fn from_biguint(&mut self, x: &BigUint) -> BigFloat {
        self.ctx.from_biguint(x)
    }

    fn from_ratio(&mut self, q: &num_rational::BigRational) -> BigFloat {
        let num_mag = q.numer().magnitude();
        let num = self.ctx.from_biguint(num_mag);
        let den = self.ctx.from_biguint(q.denom().magnitude());
        let v = self.ctx.div(&num, &den);
        if q.numer().sign() == num_bigint::Sign::Minus {
            let minus_one = BigFloat::from_i8(-1, 64);
            self.ctx.mul(&v, &minus_one)
        } else {
            v
        }
    }

    fn one(&mut self) -> BigFloat {
        self.ctx.one()
    }

    fn sub(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        self.ctx.sub(a, b)
    }

    fn add(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        self.ctx.add(a, b)
    }

    fn mul(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        self.ctx.mul(a, b)
    }

    fn div(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        self.ctx.div(a, b)
    }

    fn le(&mut self, a: &BigFloat, b: &BigFloat) -> bool {
        a <= b
    }
}

/// `prob^s(failure) = (1-2^-d)^{s(λ+1)}` in the given tier.
pub(crate) fn failure_prob_g<O: RealOps>(
    o: &mut O,
    dg: &MiningDesign,
) -> Result<O::V, NumericsError> {
    o.survival(dg.d, &dg.failure_exponent())
}

/// `E^s(noR) = (1 - y^{λ+1} - (λ+1)(1-y)·y^{λ+1}) / (1-y)` with
/// `y = (1-2^-d)^s`. Degrades gracefully to `1/(1-y)` when `y^{λ+1}`
/// underflows.
pub(crate) fn expected_rounds_g<O: RealOps>(
    o: &mut O,
    dg: &MiningDesign,
) -> Result<O::V, NumericsError> {
    let s_big = BigUint::from(dg.s);
    let y_tail = o.survival(dg.d, &dg.failure_exponent())?; // y^{λ+1}
    let one_minus_y = o.one_minus_survival(dg.d, &s_big)?;
    let lp1 = dg.lambda() + 1u32;
    let lp1_v = o.from_biguint(&lp1);
    let one = o.one();
    let t1 = o.sub(&one, &y_tail);
    let t2a = o.mul(&lp1_v, &one_minus_y);
    let t2 = o.mul(&t2a, &y_tail);
    let num = o.sub(&t1, &t2);
    Ok(o.div(&num, &one_minus_y))
}

/// `prob^s(PoWTime > th) = y^{k+1} - y^{λ+1}` where `k = ⌈th/T - 1⌉`.
/// Caller must have verified `k < λ`.
pub(crate) fn prob_time_gt_g<O: RealOps>(
    o: &mut O,
    dg: &MiningDesign,
    th_k_plus_1: &BigUint,
) -> Result<O::V, NumericsError> {
    let a = o.survival(dg.d, &(th_k_plus_1 * dg.s))?;
    let b = o.survival(dg.d, &dg.failure_exponent())?;
    Ok(o.sub(&a, &b))
}

/// `prob^s(PoWTime < th') = 1 - y^{k+1}` where `k = ⌊th'/T - 1⌋`.
/// Caller must have verified `k > 0`.
pub(crate) fn prob_time_lt_g<O: RealOps>(
    o: &mut O,
    dg: &MiningDesign,
    thp_k_plus_1: &BigUint,
) -> Result<O::V, NumericsError> {
    o.one_minus_survival(dg.d, &(thp_k_plus_1 * dg.s))
}

/// `prob^s(disputes within μ) = 1 + (s-1)·w^s - s·w^{s-1}` with
/// `w = (1-2^-d)^{⌊μ/T⌋+1}`.
pub(crate) fn dispute_prob_g<O: RealOps>(
    o: &mut O,
    dg: &MiningDesign,
    mu_over_t: &BigUint,
) -> Result<O::V, NumericsError> {
    if dg.s == 1 {
        let one = o.one();
        return Ok(o.sub(&one.clone(), &one));
    }
    let mp1 = mu_over_t + 1u32;
    let ws = o.survival(dg.d, &(&mp1 * dg.s))?; // w^s
    let ws1 = o.survival(dg.d, &(&mp1 * (dg.s - 1)))?; // w^{s-1}
    let s_minus_1 = o.from_biguint(&BigUint::from(dg.s - 1));
    let s_v = o.from_biguint(&BigUint::from(dg.s));
    let one = o.one();
    let t1 = o.mul(&s_minus_1, &ws);
    let t2 = o.mul(&s_v, &ws1);
    let a = o.add(&one, &t1);
    Ok(o.sub(&a, &t2))
}

// ---------------------------------------------------------------------------
// Public Fast-tier API.
// ---------------------------------------------------------------------------

/// Result of a probability whose defining formula carries an arithmetic
/// side-condition: when the side-condition fails the constraint is not
/// applicable (the optimizer folds this into infeasibility).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbResult {
    Value(f64),
    Inapplicable,
}

impl ProbResult {
    pub fn value(self) -> Option<f64> {
        match self {
            ProbResult::Value(v) => Some(v),
            ProbResult::Inapplicable => None,
        }
    }
}

/// Probability that the race is decided exactly in round `k` (0-based):
/// `(1-2^-d)^{ks}·[1-(1-2^-d)^s]`.
pub fn round_pmf(k: &BigUint, dg: &MiningDesign) -> Result<f64, PowModelError> {
    if k > dg.lambda() {
        return Err(PowModelError::RoundIndexOutOfRange {
            k: k.clone(),
            lambda: dg.lambda().clone(),
        });
    }
    let surv = survival_pow_fast(dg.d, &(k * dg.s))?.value;
    let hit = one_minus_survival_pow_fast(dg.d, &BigUint::from(dg.s))?;
    Ok(surv * hit)
}

/// `prob^s(failure) = (1-2^-d)^{s(λ+1)}`.
pub fn failure_prob(dg: &MiningDesign) -> Result<f64, PowModelError> {
    Ok(failure_prob_g(&mut FastOps, dg)?)
}

/// `E^s(noR)`, the expected number of rounds of a mining race.
pub fn expected_rounds(dg: &MiningDesign) -> Result<f64, PowModelError> {
    Ok(expected_rounds_g(&mut FastOps, dg)?)
}

/// `T · E^s(noR)`, the expected time to obtain proof of work.
pub fn expected_pow_time(dg: &MiningDesign, t: f64) -> Result<f64, PowModelError> {
    Ok(t * expected_rounds(dg)?)
}

/// `prob^s(PoWTime > th)`; inapplicable unless `⌈th/T - 1⌉ < λ`.
pub fn prob_time_gt(dg: &MiningDesign, t: f64, th: f64) -> Result<ProbResult, PowModelError> {
    let k = (th / t - 1.0).ceil().max(0.0);
    let k_big = BigUint::from(k as u64);
    if k_big >= *dg.lambda() {
        return Ok(ProbResult::Inapplicable);
    }
    let v = prob_time_gt_g(&mut FastOps, dg, &(k_big + 1u32))?;
    Ok(ProbResult::Value(v))
}

/// `prob^s(PoWTime < th')`; inapplicable unless `⌊th'/T - 1⌋ > 0`.
pub fn prob_time_lt(dg: &MiningDesign, t: f64, th_prime: f64) -> Result<ProbResult, PowModelError> {
    let k = (th_prime / t - 1.0).floor();
    if !(k > 0.0) {
        return Ok(ProbResult::Inapplicable);
    }
    let k_big = BigUint::from(k as u64);
    let v = prob_time_lt_g(&mut FastOps, dg, &(k_big + 1u32))?;
    Ok(ProbResult::Value(v))
}

/// `prob^s(disputes within μ)`.
///
/// The ratio `⌊μ/T⌋` is formed by double division, matching how the
/// validation database keys its entries.
pub fn dispute_prob(dg: &MiningDesign, t: f64, mu: f64) -> Result<f64, PowModelError> {
    let m = (mu / t).floor();
    assert!(m >= 0.0, "⌊μ/T⌋ must be non-negative");
    dispute_prob_floor(dg, m)
}

/// `prob^s(disputes within μ)` with the ratio `⌊μ/T⌋` already formed.
pub fn dispute_prob_floor(dg: &MiningDesign, mu_over_t: f64) -> Result<f64, PowModelError> {
    assert!(
        mu_over_t >= 0.0 && mu_over_t.fract() == 0.0,
        "⌊μ/T⌋ must be a non-negative integer value"
    );
    if dg.s == 1 {
        return Ok(0.0);
    }
    // The ratio can reach 5·10^11 and beyond; stay in the log domain rather
    // than converting to a big integer first.
    let b = numerics::ln_one_minus_pow2(dg.d)?;
    let s = dg.s as f64;
    let ws = ((mu_over_t + 1.0) * s * b).exp();
    let ws1 = ((mu_over_t + 1.0) * (s - 1.0) * b).exp();
    Ok(1.0 + (s - 1.0) * ws - s * ws1)
}

/// `(l/s)^c`, the probability that a pool of `l` of the `s` miners wins `c`
/// consecutive mining races.
pub fn pool_win_prob(l: u32, s: u32, c: u32) -> Result<f64, PowModelError> {
    if l >= s {
        return Err(PowModelError::PoolNotSmaller { l, s });
    }
    assert!(l >= 1 && c >= 1, "pool_win_prob requires l ≥ 1 and c ≥ 1");
    Ok((l as f64 / s as f64).powi(c as i32))
}

/// Fast-tier summary of the race distribution for one design.
#[derive(Debug, Clone)]
pub struct RaceDistribution {
    pub design: MiningDesign,
    /// `y = (1-2^-d)^s`, the per-round survival over all `s` miners.
    pub y: f64,
    pub failure_prob: f64,
    pub expected_rounds: f64,
}

impl RaceDistribution {
    pub fn new(design: MiningDesign) -> Result<Self, PowModelError> {
        let y = survival_pow_fast(design.d, &BigUint::from(design.s))?.value;
        let failure_prob = failure_prob(&design)?;
        let expected_rounds = expected_rounds(&design)?;
        Ok(Self {
            design,
            y,
            failure_prob,
            expected_rounds,
        })
    }
}
