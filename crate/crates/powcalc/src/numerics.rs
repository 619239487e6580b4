//! Stable, tiered-precision evaluation of survival powers `(1 - 2^-d)^E`.
//!
//! Exponents `E` routinely exceed 10^13 while the base can be `1 - 10^-19`;
//! naive double arithmetic either rounds the base to 1.0 or underflows in
//! ways that flip feasibility verdicts. Two independent evaluation tiers are
//! provided:
//!
//! * **Fast** — `f64` in the log domain, built on `ln_1p`/`exp_m1` so the
//!   base is never formed by subtraction;
//! * **Exact** — arbitrary-precision binary floats with a configurable
//!   decimal-digit budget (≥ 30), used to confirm Fast-tier verdicts.
//!
//! Underflow below a tier's representable range maps to an exact 0 carrying
//! a flag, so `ε ≥ value` style constraints still pass.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumericsError {
    #[error("difficulty must lie in 1..=64, got {0}")]
    DifficultyOutOfRange(i64),
    #[error("Exact tier requires at least 30 mantissa digits, got {0}")]
    TooFewDigits(u32),
}

/// Precision tier for probability evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrecisionTier {
    Fast,
    /// Arbitrary precision with the given decimal mantissa digit budget.
    Exact(u32),
}

impl PrecisionTier {
    pub fn validate(self) -> Result<Self, NumericsError> {
        match self {
            PrecisionTier::Exact(d) if d < 30 => Err(NumericsError::TooFewDigits(d)),
            t => Ok(t),
        }
    }
}

// Difficulty values the evaluation layer accepts. Precision guarantees are
// stated for d ≤ 64; the wider range keeps robust-cost boxes that poke past
// the optimizer's upper difficulty bound evaluable.
const MAX_DIFFICULTY: u32 = 250;

/// `ln(1 - 2^-d)` with relative error ≤ 1e-15 for `1 ≤ d ≤ 64` (accepted up
/// to 250 with the same computation).
pub fn ln_one_minus_pow2(d: u32) -> Result<f64, NumericsError> {
    if !(1..=MAX_DIFFICULTY).contains(&d) {
        return Err(NumericsError::DifficultyOutOfRange(d as i64));
    }
    Ok((-((2f64).powi(-(d as i32)))).ln_1p())
}

/// The survival base `1 - 2^-d` with its cached log-domain value.
#[derive(Debug, Clone, Copy)]
pub struct SurvivalBase {
    d: u32,
    ln_value: f64,
}

impl SurvivalBase {
    pub fn new(d: u32) -> Result<Self, NumericsError> {
        Ok(Self {
            d,
            ln_value: ln_one_minus_pow2(d)?,
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// `ln(1 - 2^-d)`; strictly negative.
    pub fn ln_value(&self) -> f64 {
        self.ln_value
    }
}

/// A probability value together with an underflow marker.
///
/// `underflowed == true` means the mathematically positive value fell below
/// the tier's representable range and was mapped to exact 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prob {
    pub value: f64,
    pub underflowed: bool,
}

impl Prob {
    fn exact(value: f64) -> Self {
        Prob {
            value,
            underflowed: false,
        }
    }

    const UNDERFLOW: Prob = Prob {
        value: 0.0,
        underflowed: true,
    };
}

// exp(x) underflows f64 (including denormals) below roughly -745.2.
const F64_EXP_UNDERFLOW: f64 = -745.0;

/// Fast-tier `(1 - 2^-d)^exponent`.
pub fn survival_pow_fast(d: u32, exponent: &BigUint) -> Result<Prob, NumericsError> {
    let b = ln_one_minus_pow2(d)?;
    if exponent.is_zero() {
        return Ok(Prob::exact(1.0));
    }
    let e = exponent.to_f64().unwrap_or(f64::INFINITY);
    let m = e * b;
    if m < F64_EXP_UNDERFLOW {
        Ok(Prob::UNDERFLOW)
    } else {
        Ok(Prob::exact(m.exp()))
    }
}

/// Fast-tier `1 - (1 - 2^-d)^exponent`, computed as `-expm1(E·ln(1-2^-d))`
/// so it stays accurate when the survival power is close to 1.
pub fn one_minus_survival_pow_fast(d: u32, exponent: &BigUint) -> Result<f64, NumericsError> {
    let b = ln_one_minus_pow2(d)?;
    if exponent.is_zero() {
        return Ok(0.0);
    }
    let e = exponent.to_f64().unwrap_or(f64::INFINITY);
    Ok(-(e * b).exp_m1())
}

/// Arbitrary-precision evaluation context for the Exact tier.
///
/// Holds the shared constants cache and the working precision derived from
/// the requested decimal digit budget. Not `Sync`; create one per thread.
pub struct ExactCtx {
    digits: u32,
    /// Working mantissa precision in bits (digit budget plus guard bits).
    prec: usize,
    cc: Consts,
    rm: RoundingMode,
}

/// An Exact-tier probability: full-precision value plus underflow marker.
pub struct ExactProb {
    pub value: BigFloat,
    pub underflowed: bool,
}

// Below exp(-2^30) the result's binary exponent would approach the format's
// exponent range; such values are far below any constraint threshold anyway.
const EXACT_EXP_UNDERFLOW: i64 = -(1 << 30);

impl ExactCtx {
    pub fn new(digits: u32) -> Result<Self, NumericsError> {
        if digits < 30 {
            return Err(NumericsError::TooFewDigits(digits));
        }
        let prec = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 96;
        Ok(Self {
            digits,
            prec,
            cc: Consts::new().expect("constants cache allocation"),
            rm: RoundingMode::ToEven,
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn one(&self) -> BigFloat {
        BigFloat::from_i8(1, self.prec)
    }

    /// `2^-d`, exactly.
    fn pow2_neg(&self, d: u32) -> BigFloat {
        let mut t = BigFloat::from_i8(1, self.prec);
        let e = t.exponent().expect("finite exponent");
        t.set_exponent(e - d as i32);
        t
    }

    /// `1 - 2^-d`, exactly representable at working precision for `d ≤ 64`.
    pub fn one_minus_pow2(&mut self, d: u32) -> BigFloat {
        self.one().sub(&self.pow2_neg(d), self.prec, self.rm)
    }

    pub fn ln_one_minus_pow2(&mut self, d: u32) -> BigFloat {
        let x = self.one_minus_pow2(d);
        x.ln(self.prec, self.rm, &mut self.cc)
    }

    pub fn from_biguint(&mut self, x: &BigUint) -> BigFloat {
        BigFloat::parse(
            &x.to_str_radix(10),
            Radix::Dec,
            self.prec,
            self.rm,
            &mut self.cc,
        )
    }

    pub fn from_f64(&mut self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.prec)
    }

    pub fn add(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, self.rm)
    }

    pub fn sub(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, self.rm)
    }

    pub fn mul(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, self.rm)
    }

    pub fn div(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, self.rm)
    }

    /// Exact-tier `(1 - 2^-d)^exponent`.
    pub fn survival_pow(&mut self, d: u32, exponent: &BigUint) -> Result<ExactProb, NumericsError> {
        if !(1..=MAX_DIFFICULTY).contains(&d) {
            return Err(NumericsError::DifficultyOutOfRange(d as i64));
        }
        if exponent.is_zero() {
            return Ok(ExactProb {
                value: self.one(),
                underflowed: false,
            });
        }
        let lnb = self.ln_one_minus_pow2(d);
        let e = self.from_biguint(exponent);
        let m = self.mul(&lnb, &e);
        let floor = BigFloat::from_i64(EXACT_EXP_UNDERFLOW, self.prec);
        if m < floor {
            return Ok(ExactProb {
                value: BigFloat::from_i8(0, self.prec),
                underflowed: true,
            });
        }
        Ok(ExactProb {
            value: m.exp(self.prec, self.rm, &mut self.cc),
            underflowed: false,
        })
    }

    /// Exact-tier `1 - (1 - 2^-d)^exponent`.
    ///
    /// The guard bits in the working precision absorb the cancellation when
    /// the survival power is close to 1.
    pub fn one_minus_survival_pow(
        &mut self,
        d: u32,
        exponent: &BigUint,
    ) -> Result<BigFloat, NumericsError> {
        let s = self.survival_pow(d, exponent)?;
        if s.underflowed {
            return Ok(self.one());
        }
        let one = self.one();
        Ok(self.sub(&one, &s.value))
    }

    /// Best-effort `f64` view of an exact value (0.0 when below f64 range).
    pub fn to_f64(&mut self, v: &BigFloat) -> f64 {
        bigfloat_to_f64(v)
    }
}

/// Convert a finite `BigFloat` to the nearest `f64` (0.0 on f64 underflow).
pub fn bigfloat_to_f64(v: &BigFloat) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    let Some(e) = v.exponent() else {
        return f64::NAN;
    };
    if e < -1060 {
        return 0.0;
    }
    if e > 1020 {
        return if v.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    // Scale the mantissa into f64 range, convert via the top mantissa words,
    // then undo the scaling with exact powers of two.
    let Some(m) = v.mantissa_digits() else {
        return f64::NAN;
    };
    let mut acc = 0.0f64;
    for (i, w) in m.iter().rev().enumerate().take(2) {
        acc += (*w as f64) * (2f64).powi(-(astro_float::WORD_BIT_SIZE as i32) * (i as i32 + 1));
    }
    if v.is_negative() {
        acc = -acc;
    }
    acc * (2f64).powi(e)
}

/// Tier cross-check: true iff Fast and Exact(60) agree to `rel_tol`, or both
/// underflow.
pub fn tiers_agree(d: u32, exponent: &BigUint, rel_tol: f64) -> Result<bool, NumericsError> {
    assert!(rel_tol > 0.0, "rel_tol must be positive");
    let fast = survival_pow_fast(d, exponent)?;
    let mut ctx = ExactCtx::new(60)?;
    let exact = ctx.survival_pow(d, exponent)?;
    if fast.underflowed && exact.underflowed {
        return Ok(true);
    }
    let xv = bigfloat_to_f64(&exact.value);
    if xv == 0.0 {
        return Ok(fast.value == 0.0);
    }
    Ok(((fast.value - xv) / xv).abs() <= rel_tol)
}

/// Tier-dispatching survival power; the Exact tier is reported through an
/// `f64` view (use [`ExactCtx`] directly when full precision is needed).
pub fn survival_pow(d: u32, exponent: &BigUint, tier: PrecisionTier) -> Result<Prob, NumericsError> {
    match tier.validate()? {
        PrecisionTier::Fast => survival_pow_fast(d, exponent),
        PrecisionTier::Exact(digits) => {
            let mut ctx = ExactCtx::new(digits)?;
            let p = ctx.survival_pow(d, exponent)?;
            Ok(Prob {
                value: bigfloat_to_f64(&p.value),
                underflowed: p.underflowed,
            })
        }
    }
}
